#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "efimovkit/profiles.hpp"

namespace efimovkit::cli {

// File missing, unreadable, or not in the curve format. Exit code 1.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ordered key=value pairs carried on the "# " header line.
using HeaderFields = std::vector<std::pair<std::string, std::string>>;

struct CurveFile {
    HeaderFields header;
    profiles::CrossSectionCurve curve;
};

// Curve format:
//   # key=value key=value ...
//   E,sigma
//   <E>,<sigma>
//   ...
// Numbers use the shortest round-trip decimal form. Keys and values contain
// no whitespace and keys contain no '='.
void write_curve_csv(std::ostream& out, const HeaderFields& header,
                     const profiles::CrossSectionCurve& curve);

// Accepts any number of '#' lines (fields merged in order), an optional
// "E,sigma" column line, then data rows. Blank lines are skipped.
// Throws IoError on malformed rows; curve invariants raise the usual
// GridError / DomainError.
CurveFile read_curve_csv(std::istream& in);
CurveFile read_curve_csv_file(const std::string& path);

}  // namespace efimovkit::cli
