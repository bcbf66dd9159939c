#include "efimovkit_cli/app.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "efimovkit/dipole_ladder.hpp"
#include "efimovkit/efimov.hpp"
#include "efimovkit/error.hpp"
#include "efimovkit/fitter.hpp"
#include "efimovkit/profiles.hpp"
#include "efimovkit/twobody.hpp"
#include "efimovkit_cli/curve_csv.hpp"
#include "efimovkit_cli/format.hpp"
#include "efimovkit_cli/report_json.hpp"

namespace efimovkit::cli {

namespace {

using nlohmann::ordered_json;

enum class OutputFormat { csv, json };

struct CommonOptions {
    std::string format = "csv";
    std::string out_path;
    std::string unit_label;

    OutputFormat output_format() const {
        return format == "json" ? OutputFormat::json : OutputFormat::csv;
    }
};

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", common.out_path, "Write output here instead of stdout");
    cmd->add_option("--unit-label", common.unit_label,
                    "Unit annotation copied into output headers (never converted)");
}

void require(bool ok, const std::string& message) {
    if (!ok) throw DomainError(message);
}

void validate_unit_label(const std::string& label) {
    require(label.find_first_of(" \t\r\n=") == std::string::npos,
            "--unit-label must not contain whitespace or '='");
}

std::string fmt(double x) { return format_double(x); }

// Emits to the requested destination; file-open failures are I/O errors.
void emit(const CommonOptions& common, std::ostream& out, const std::string& text) {
    if (common.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(common.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open output file '" + common.out_path + "'");
    file << text;
    if (!file) throw IoError("write failed for '" + common.out_path + "'");
}

std::string header_line(const HeaderFields& fields) {
    std::string line = "#";
    for (const auto& [k, v] : fields) line += " " + k + "=" + v;
    return line + "\n";
}

void add_unit(HeaderFields& fields, const CommonOptions& common) {
    if (!common.unit_label.empty()) fields.emplace_back("unit", common.unit_label);
}

// ---------------------------------------------------------------- dipole-ladder

struct DipoleOptions {
    std::optional<double> alpha;
    std::optional<double> strength_a;
    long long n_max = 0;
};

std::string dipole_ladder_cmd(const DipoleOptions& o, const CommonOptions& common) {
    require(o.alpha.has_value() != o.strength_a.has_value(),
            "dipole-ladder: give exactly one of --alpha or --strength-a");
    require(o.n_max >= 0, "dipole-ladder: --n-max must be >= 0");
    const auto params = o.alpha ? dipole::DipoleParameters::from_alpha(*o.alpha)
                                : dipole::DipoleParameters::from_strength(*o.strength_a);
    const auto ladder = dipole::build_ladder(params.alpha(), static_cast<std::size_t>(o.n_max));

    std::ostringstream text;
    if (common.output_format() == OutputFormat::json) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < ladder.entries.size(); ++i) {
            const auto& e = ladder.entries[i];
            ordered_json row{{"n", e.n}, {"kappa_n", e.kappa}, {"epsilon_n", e.epsilon}};
            row["ratio_to_previous"] =
                i == 0 ? ordered_json(nullptr) : ordered_json(e.epsilon / ladder.entries[i - 1].epsilon);
            rows.push_back(row);
        }
        text << rows.dump() << '\n';
        return text.str();
    }
    HeaderFields fields{{"alpha", fmt(params.alpha())}, {"strength_a", fmt(params.strength_a())}};
    if (ladder.truncated_at) fields.emplace_back("truncated_at", std::to_string(*ladder.truncated_at));
    add_unit(fields, common);
    text << header_line(fields) << "n,kappa_n,epsilon_n,ratio_to_previous\n";
    for (std::size_t i = 0; i < ladder.entries.size(); ++i) {
        const auto& e = ladder.entries[i];
        text << e.n << ',' << fmt(e.kappa) << ',' << fmt(e.epsilon) << ',';
        if (i > 0) text << fmt(e.epsilon / ladder.entries[i - 1].epsilon);
        text << '\n';
    }
    return text.str();
}

// ------------------------------------------------------------ scattering-length

struct ScatteringOptions {
    std::optional<double> depth;
    double range = 0.0;
    double mass = 0.0;
    std::optional<double> tune_to;
    int branch = 0;
    double unitarity_tolerance = twobody::kDefaultUnitarityTolerance;
};

std::string scattering_length_cmd(const ScatteringOptions& o, const CommonOptions& common) {
    std::optional<twobody::SquareWell> well;
    if (o.tune_to) {
        // The template depth only has to be valid; tuning replaces it.
        const twobody::SquareWell templ(o.depth.value_or(1.0), o.range, o.mass);
        well = twobody::tune_to_scattering_length(templ, *o.tune_to, o.branch);
    } else {
        require(o.depth.has_value(), "scattering-length: --depth is required unless --tune-to is given");
        well.emplace(*o.depth, o.range, o.mass);
    }
    const auto result = twobody::scattering_length(*well, o.unitarity_tolerance);
    const auto energy = twobody::binding_energy(*well);

    std::ostringstream text;
    if (common.output_format() == OutputFormat::json) {
        ordered_json j;
        j["depth"] = well->depth();
        j["range"] = well->range();
        j["mass"] = well->reduced_mass();
        j["k0_range"] = well->phase();
        j["a"] = result.a ? ordered_json(*result.a) : ordered_json("unitary");
        j["bound_state_count"] = result.bound_state_count;
        j["binding_energy"] = energy ? ordered_json(*energy) : ordered_json(nullptr);
        if (!common.unit_label.empty()) j["unit"] = common.unit_label;
        text << j.dump() << '\n';
        return text.str();
    }
    text << "depth: " << fmt(well->depth()) << '\n'
         << "range: " << fmt(well->range()) << '\n'
         << "mass: " << fmt(well->reduced_mass()) << '\n'
         << "k0_range: " << fmt(well->phase()) << '\n'
         << "a: " << (result.a ? fmt(*result.a) : std::string("unitary")) << '\n'
         << "bound_state_count: " << result.bound_state_count << '\n'
         << "binding_energy: " << (energy ? fmt(*energy) : std::string("none")) << '\n';
    if (!common.unit_label.empty()) text << "unit: " << common.unit_label << '\n';
    return text.str();
}

// ----------------------------------------------------------------- efimov-count

struct CountOptions {
    std::optional<double> a;
    double r0 = 1.0;
    bool a_infinite = false;
};

efimov::StateCount resolve_count(const CountOptions& o, const char* cmd) {
    require(o.a.has_value() != o.a_infinite,
            std::string(cmd) + ": give exactly one of --a or --a-infinite");
    return efimov::count_states(o.a_infinite ? INFINITY : *o.a, o.r0);
}

std::string efimov_count_cmd(const CountOptions& o, const CommonOptions& common) {
    const auto count = resolve_count(o, "efimov-count");
    if (common.output_format() == OutputFormat::json) {
        ordered_json j;
        j["count"] = count.unbounded ? ordered_json("unbounded") : ordered_json(count.count);
        return j.dump() + "\n";
    }
    return (count.unbounded ? std::string("unbounded") : std::to_string(count.count)) + "\n";
}

// ---------------------------------------------------------------- efimov-ladder

struct EfimovLadderOptions {
    double alpha_eff = 0.0;
    double ground_energy = 0.0;
    std::optional<int> count;
    CountOptions window;
    std::optional<double> threshold;
};

std::string efimov_ladder_cmd(const EfimovLadderOptions& o, const CommonOptions& common) {
    const bool from_window = o.window.a.has_value() || o.window.a_infinite;
    require(o.count.has_value() != from_window,
            "efimov-ladder: give exactly one of --count or --a/--r0 (or --a-infinite)");
    int count = 0;
    if (o.count) {
        count = *o.count;
    } else {
        const auto predicted = resolve_count(o.window, "efimov-ladder");
        require(!predicted.unbounded,
                "efimov-ladder: unbounded state count cannot be listed; pass --count");
        require(predicted.count > 0, "efimov-ladder: no Efimov window (|a| too small compared to r0)");
        count = predicted.count;
    }
    const auto ladder = efimov::build_efimov_ladder(o.alpha_eff, o.ground_energy, count);
    // Without a threshold every state counts as bound (threshold -> 0-).
    std::vector<std::string> labels(ladder.entries.size(), "bound");
    if (o.threshold) {
        const auto part = efimov::classify_states_vs_threshold(ladder, *o.threshold);
        for (const auto& e : part.embedded) labels[e.n] = "embedded";
    }

    std::ostringstream text;
    if (common.output_format() == OutputFormat::json) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < ladder.entries.size(); ++i) {
            rows.push_back({{"n", ladder.entries[i].n},
                            {"energy", ladder.entries[i].energy},
                            {"classification", labels[i]}});
        }
        text << rows.dump() << '\n';
        return text.str();
    }
    HeaderFields fields{{"alpha_eff", fmt(ladder.alpha_eff)},
                        {"ground_energy", fmt(ladder.ground_energy)},
                        {"count", std::to_string(count)},
                        {"L", std::to_string(ladder.total_angular_momentum)}};
    if (o.threshold) fields.emplace_back("threshold", fmt(*o.threshold));
    if (ladder.truncated_at) fields.emplace_back("truncated_at", std::to_string(*ladder.truncated_at));
    add_unit(fields, common);
    text << header_line(fields) << "n,energy,classification\n";
    for (std::size_t i = 0; i < ladder.entries.size(); ++i) {
        text << ladder.entries[i].n << ',' << fmt(ladder.entries[i].energy) << ',' << labels[i] << '\n';
    }
    return text.str();
}

// ------------------------------------------------------------------ profile-gen

struct ProfileGenOptions {
    std::string model = "fano";
    double er = 0.0;
    double gamma = 1.0;
    std::optional<double> q;
    double sigma0 = 1.0;
    double emin = 0.0;
    double emax = 1.0;
    long long points = 200;
    double noise = 0.0;
    std::uint64_t seed = 0;
};

std::string profile_gen_cmd(const ProfileGenOptions& o, const CommonOptions& common) {
    require(o.points >= 0, "profile-gen: --points must be >= 0");
    const auto n = static_cast<std::size_t>(o.points);
    if (n < profiles::kMinimumCurveSamples) {
        throw GridError("profile-gen: grid too small (" + std::to_string(n) + " points, need at least " +
                        std::to_string(profiles::kMinimumCurveSamples) + ")");
    }
    profiles::ProfileParameters params;
    if (o.model == "fano") {
        require(o.q.has_value(), "profile-gen: --q is required for the fano model");
        params = profiles::FanoParameters{o.er, o.gamma, *o.q, o.sigma0};
    } else {
        require(!o.q.has_value(), "profile-gen: --q does not apply to the bw model");
        params = profiles::BreitWignerParameters{o.er, o.gamma, o.sigma0};
    }
    const auto grid = profiles::linear_grid(o.emin, o.emax, n);
    const auto curve = profiles::synthesize(params, grid, o.noise, o.seed);

    std::ostringstream text;
    if (common.output_format() == OutputFormat::json) {
        ordered_json rows = ordered_json::array();
        for (const auto& s : curve.samples()) rows.push_back({{"E", s.E}, {"sigma", s.sigma}});
        text << rows.dump() << '\n';
        return text.str();
    }
    HeaderFields fields{{"model", o.model}, {"E_r", fmt(o.er)}, {"Gamma", fmt(o.gamma)}};
    if (o.q) fields.emplace_back("q", fmt(*o.q));
    fields.insert(fields.end(), {{"sigma0", fmt(o.sigma0)},
                                 {"emin", fmt(o.emin)},
                                 {"emax", fmt(o.emax)},
                                 {"points", std::to_string(n)},
                                 {"noise", fmt(o.noise)},
                                 {"seed", std::to_string(o.seed)},
                                 {"clamped", std::to_string(curve.clamped_count())}});
    add_unit(fields, common);
    write_curve_csv(text, fields, curve);
    return text.str();
}

// ------------------------------------------------------------------ profile-fit

struct ProfileFitOptions {
    std::string in_path;
    std::string model = "fano";
    std::string guess_json;
};

std::optional<profiles::ProfileParameters> parse_guess(const std::string& text, fit::Model model) {
    if (text.empty()) return std::nullopt;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("--guess: invalid JSON: ") + e.what());
    }
    return guess_from_json(j, model);
}

std::string profile_fit_cmd(const ProfileFitOptions& o, std::ostream& err) {
    const auto file = read_curve_csv_file(o.in_path);
    file.curve.require_fit_size();
    auto run_one = [&](fit::Model model) {
        const auto report = fit::fit(file.curve, model, parse_guess(o.guess_json, model));
        if (report.lorentzian_limit) {
            err << "note: fano fit ended at the |q| cap (Lorentzian limit)\n";
        }
        if (!report.converged) {
            err << "warning: " << fit::to_string(model) << " fit did not converge in "
                << report.iterations << " iterations; reporting best so far\n";
        }
        return fit_report_to_json(report);
    };
    ordered_json j;
    if (o.model == "both") {
        j = ordered_json::array({run_one(fit::Model::fano), run_one(fit::Model::breit_wigner)});
    } else {
        j = run_one(o.model == "fano" ? fit::Model::fano : fit::Model::breit_wigner);
    }
    return j.dump() + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Efimov ladders, square-well scattering and Fano/Breit-Wigner line shapes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "efimovkit 0.1.0");

    std::function<std::string()> action;
    CommonOptions* active = nullptr;

    CommonOptions dipole_common;
    DipoleOptions dipole_opts;
    auto* dipole_cmd = app.add_subcommand("dipole-ladder", "Bound-state ladder of a supercritical dipole");
    auto* alpha_opt = dipole_cmd->add_option("--alpha", dipole_opts.alpha, "Index alpha > 0");
    dipole_cmd->add_option("--strength-a", dipole_opts.strength_a, "Dipole strength a > 1/4")
        ->excludes(alpha_opt);
    dipole_cmd->add_option("--n-max", dipole_opts.n_max, "Highest ladder index")->required();
    add_common(dipole_cmd, dipole_common);
    dipole_cmd->callback([&] {
        active = &dipole_common;
        action = [&] { return dipole_ladder_cmd(dipole_opts, dipole_common); };
    });

    CommonOptions scat_common;
    ScatteringOptions scat_opts;
    auto* scat_cmd = app.add_subcommand("scattering-length", "Square-well scattering length and binding");
    scat_cmd->add_option("--depth", scat_opts.depth, "Well depth V0 > 0");
    scat_cmd->add_option("--range", scat_opts.range, "Well range Rw > 0")->required();
    scat_cmd->add_option("--mass", scat_opts.mass, "Reduced mass mu > 0")->required();
    auto* tune_opt = scat_cmd->add_option("--tune-to", scat_opts.tune_to, "Target scattering length");
    scat_cmd->add_option("--branch", scat_opts.branch, "Branch m: search k0*Rw in (m pi, (m+1) pi]")
        ->needs(tune_opt)
        ->capture_default_str();
    scat_cmd->add_option("--unitarity-tol", scat_opts.unitarity_tolerance,
                         "Report 'unitary' when |cos(k0 Rw)| is below this")
        ->capture_default_str();
    add_common(scat_cmd, scat_common);
    scat_cmd->callback([&] {
        active = &scat_common;
        action = [&] { return scattering_length_cmd(scat_opts, scat_common); };
    });

    CommonOptions count_common;
    CountOptions count_opts;
    auto* count_cmd = app.add_subcommand("efimov-count", "Number of Efimov states for |a| and r0");
    auto* count_a = count_cmd->add_option("--a", count_opts.a, "Scattering length");
    count_cmd->add_option("--r0", count_opts.r0, "Interaction range r0 > 0")->capture_default_str();
    count_cmd->add_flag("--a-infinite", count_opts.a_infinite, "Unitary limit |a| -> infinity")
        ->excludes(count_a);
    add_common(count_cmd, count_common);
    count_cmd->callback([&] {
        active = &count_common;
        action = [&] { return efimov_count_cmd(count_opts, count_common); };
    });

    CommonOptions eladder_common;
    EfimovLadderOptions eladder_opts;
    auto* eladder_cmd = app.add_subcommand("efimov-ladder", "Geometric three-body ladder and threshold split");
    eladder_cmd->add_option("--alpha-eff", eladder_opts.alpha_eff,
                            "Strength index of the 1/R^2 channel (no default; caller's model input)")
        ->required();
    eladder_cmd->add_option("--ground-energy", eladder_opts.ground_energy, "Lowest state energy < 0")
        ->required();
    auto* el_count = eladder_cmd->add_option("--count", eladder_opts.count, "Number of states");
    auto* el_a = eladder_cmd->add_option("--a", eladder_opts.window.a, "Scattering length (count from window)")
        ->excludes(el_count);
    eladder_cmd->add_option("--r0", eladder_opts.window.r0, "Interaction range r0 > 0")->capture_default_str();
    eladder_cmd->add_flag("--a-infinite", eladder_opts.window.a_infinite, "Unitary limit")
        ->excludes(el_count)
        ->excludes(el_a);
    eladder_cmd->add_option("--threshold", eladder_opts.threshold, "Two-body threshold energy < 0");
    add_common(eladder_cmd, eladder_common);
    eladder_cmd->callback([&] {
        active = &eladder_common;
        action = [&] { return efimov_ladder_cmd(eladder_opts, eladder_common); };
    });

    CommonOptions gen_common;
    ProfileGenOptions gen_opts;
    auto* gen_cmd = app.add_subcommand("profile-gen", "Sample a Fano or Breit-Wigner curve to CSV");
    gen_cmd->add_option("--model", gen_opts.model)->check(CLI::IsMember({"fano", "bw"}))->capture_default_str();
    gen_cmd->add_option("--er", gen_opts.er, "Resonance position E_r")->required();
    gen_cmd->add_option("--gamma", gen_opts.gamma, "Width Gamma > 0")->required();
    gen_cmd->add_option("--q", gen_opts.q, "Fano profile index");
    gen_cmd->add_option("--sigma0", gen_opts.sigma0, "Cross-section scale > 0")->capture_default_str();
    gen_cmd->add_option("--emin", gen_opts.emin, "Grid start")->required();
    gen_cmd->add_option("--emax", gen_opts.emax, "Grid end")->required();
    gen_cmd->add_option("--points", gen_opts.points, "Grid points (>= 8)")->capture_default_str();
    gen_cmd->add_option("--noise", gen_opts.noise, "Relative Gaussian noise")->capture_default_str();
    gen_cmd->add_option("--seed", gen_opts.seed, "Noise seed")->capture_default_str();
    add_common(gen_cmd, gen_common);
    gen_cmd->callback([&] {
        active = &gen_common;
        action = [&] { return profile_gen_cmd(gen_opts, gen_common); };
    });

    CommonOptions fit_common;
    ProfileFitOptions fit_opts;
    auto* fit_cmd = app.add_subcommand("profile-fit", "Fit a CSV curve; prints FitReport JSON");
    fit_cmd->add_option("--in", fit_opts.in_path, "Curve CSV file")->required();
    fit_cmd->add_option("--model", fit_opts.model)
        ->check(CLI::IsMember({"fano", "bw", "both"}))
        ->capture_default_str();
    fit_cmd->add_option("--guess", fit_opts.guess_json, "Initial guess as a flat JSON object");
    fit_cmd->add_option("--out", fit_common.out_path, "Write output here instead of stdout");
    fit_cmd->callback([&] {
        active = &fit_common;
        action = [&] { return profile_fit_cmd(fit_opts, err); };
    });

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitDomain;
    }

    try {
        validate_unit_label(active->unit_label);
        emit(*active, out, action());
        return kExitSuccess;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const NonConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace efimovkit::cli
