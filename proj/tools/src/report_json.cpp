#include "efimovkit_cli/report_json.hpp"

#include "efimovkit/error.hpp"

namespace efimovkit::cli {

namespace {

double required_number(const nlohmann::json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number()) {
        throw DomainError(std::string("guess: missing numeric field '") + key + "'");
    }
    return it->get<double>();
}

}  // namespace

nlohmann::ordered_json fit_report_to_json(const fit::FitReport& report) {
    nlohmann::ordered_json j;
    j["model"] = std::string(fit::to_string(report.model));
    if (const auto* f = std::get_if<profiles::FanoParameters>(&report.params)) {
        j["E_r"] = f->E_r;
        j["Gamma"] = f->Gamma;
        j["q"] = f->q;
        j["sigma0"] = f->sigma0;
    } else {
        const auto& b = std::get<profiles::BreitWignerParameters>(report.params);
        j["E_r"] = b.E_r;
        j["Gamma"] = b.Gamma;
        j["sigma0"] = b.sigma0;
    }
    j["sse"] = report.sse;
    j["iterations"] = report.iterations;
    j["converged"] = report.converged;
    return j;
}

profiles::ProfileParameters guess_from_json(const nlohmann::json& j, fit::Model model) {
    if (!j.is_object()) {
        throw DomainError("guess: expected a JSON object");
    }
    const double E_r = required_number(j, "E_r");
    const double Gamma = required_number(j, "Gamma");
    const double sigma0 = required_number(j, "sigma0");
    if (model == fit::Model::fano) {
        profiles::FanoParameters p{E_r, Gamma, required_number(j, "q"), sigma0};
        profiles::validate(p);
        return p;
    }
    profiles::BreitWignerParameters p{E_r, Gamma, sigma0};
    profiles::validate(p);
    return p;
}

}  // namespace efimovkit::cli
