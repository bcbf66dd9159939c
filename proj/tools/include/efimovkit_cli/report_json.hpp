#pragma once

#include <string>

#include <json.hpp>

#include "efimovkit/fitter.hpp"

namespace efimovkit::cli {

// Flat object: model, E_r, Gamma, q (fano only), sigma0, sse, iterations,
// converged.
nlohmann::ordered_json fit_report_to_json(const fit::FitReport& report);

// Reads a flat {E_r, Gamma, q?, sigma0} object as a guess for `model`.
// Throws DomainError for missing or non-numeric fields.
profiles::ProfileParameters guess_from_json(const nlohmann::json& j, fit::Model model);

}  // namespace efimovkit::cli
