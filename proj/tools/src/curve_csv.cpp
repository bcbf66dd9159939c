#include "efimovkit_cli/curve_csv.hpp"

#include <fstream>
#include <sstream>

#include "efimovkit_cli/format.hpp"

namespace efimovkit::cli {

namespace {

constexpr std::string_view kColumnLine = "E,sigma";

void parse_header_line(std::string_view line, HeaderFields& fields) {
    std::istringstream tokens{std::string(line)};
    std::string token;
    while (tokens >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0) {
            continue;
        }
        fields.emplace_back(token.substr(0, eq), token.substr(eq + 1));
    }
}

}  // namespace

void write_curve_csv(std::ostream& out, const HeaderFields& header,
                     const profiles::CrossSectionCurve& curve) {
    out << '#';
    for (const auto& [key, value] : header) {
        out << ' ' << key << '=' << value;
    }
    out << '\n' << kColumnLine << '\n';
    for (const auto& s : curve.samples()) {
        out << format_double(s.E) << ',' << format_double(s.sigma) << '\n';
    }
}

CurveFile read_curve_csv(std::istream& in) {
    CurveFile file;
    std::vector<profiles::Sample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (line.front() == '#') {
            parse_header_line(std::string_view(line).substr(1), file.header);
            continue;
        }
        if (samples.empty() && line == kColumnLine) continue;
        const auto comma = line.find(',');
        double E = 0.0;
        double sigma = 0.0;
        if (comma == std::string::npos ||
            !parse_double(std::string_view(line).substr(0, comma), E) ||
            !parse_double(std::string_view(line).substr(comma + 1), sigma)) {
            std::ostringstream msg;
            msg << "curve csv: malformed row at line " << line_no << ": '" << line << "'";
            throw IoError(msg.str());
        }
        samples.push_back({E, sigma});
    }
    if (in.bad()) {
        throw IoError("curve csv: read failure");
    }
    file.curve = profiles::CrossSectionCurve(std::move(samples));
    return file;
}

CurveFile read_curve_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open input file '" + path + "'");
    }
    return read_curve_csv(in);
}

}  // namespace efimovkit::cli
