// biphoton: runs the transverse-entanglement experiments described by a
// scenario file and writes CSV data plus a JSON run summary.

#include "biphoton/errors.hpp"
#include "biphoton/runners.hpp"
#include "biphoton/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace biphoton;

namespace {

constexpr int kExitConfiguration = 2;
constexpr int kExitNumerical = 3;

struct Options {
    std::string config;
    std::string out;
    std::string summary;
    int n_modes = 3;
    int n_thetas = 16;
    std::string thetas;
    double z_mm = std::nan("");
    std::string domain = "position";
};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json number_or_null(const std::optional<double>& v) { return v ? number_or_null(*v) : json(nullptr); }

std::ofstream open_output(const std::string& path) {
    const fs::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigurationError("cannot write " + path);
    return out;
}

std::string with_suffix(const std::string& csv, const std::string& suffix) {
    fs::path p(csv);
    const std::string stem = p.stem().string();
    return (p.parent_path() / (stem + suffix)).string();
}

class Run {
public:
    Run(std::string command, const Options& opt) : command_(std::move(command)), opt_(opt) {
        scenario_ = opt.config.empty() ? Scenario{} : load_scenario(opt.config);
        scenario_.validate();
        csv_path_ = !opt.out.empty() ? opt.out
                    : !scenario_.csv_path.empty() ? scenario_.csv_path
                                                  : command_ + ".csv";
        summary_path_ = !opt.summary.empty() ? opt.summary
                        : !scenario_.summary_path.empty() ? scenario_.summary_path
                                                          : with_suffix(csv_path_, ".summary.json");
        summary_["command"] = command_;
        summary_["scenario"] = to_json(scenario_);
        summary_["outputs"] = json::array({csv_path_});
        summary_["warnings"] = json::array();
    }

    const Scenario& scenario() const { return scenario_; }
    const std::string& csv_path() const { return csv_path_; }
    json& summary() { return summary_; }
    void warn(const std::string& message) {
        std::cerr << "warning: " << message << '\n';
        summary_["warnings"].push_back(message);
    }
    void add_output(const std::string& path) { summary_["outputs"].push_back(path); }

    double z() const {
        if (std::isnan(opt_.z_mm)) return scenario_.z_start;
        if (!std::isfinite(opt_.z_mm) || opt_.z_mm < 0.0)
            throw ConfigurationError("--z-mm must be finite and >= 0");
        return opt_.z_mm * 1e-3;
    }

    void write(const std::string& path, const std::string& text) {
        std::ofstream out = open_output(path);
        out << text;
    }

    void finish() {
        std::ofstream out = open_output(summary_path_);
        out << summary_.dump(2) << '\n';
    }

private:
    std::string command_;
    Options opt_;
    Scenario scenario_;
    std::string csv_path_;
    std::string summary_path_;
    json summary_;
};

std::vector<double> parse_thetas(const std::string& text) {
    std::vector<double> thetas;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "pi") {
            thetas.push_back(std::numbers::pi);
            continue;
        }
        try {
            std::size_t used = 0;
            thetas.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ConfigurationError("--thetas: cannot parse '" + item + "'");
        }
    }
    return thetas;
}

bool is_zero_pi(const std::vector<double>& t) {
    return t.size() == 2 && t[0] == 0.0 && std::abs(t[1] - std::numbers::pi) < 1e-12;
}

int fedorov_scan(const Options& opt) {
    Run run("fedorov-scan", opt);
    const auto rows = run_fedorov_scan(run.scenario());
    std::ostringstream csv;
    write_fedorov_csv(csv, rows);

    json jrows = json::array();
    int valid = 0;
    for (const auto& r : rows) {
        json j{{"z_m", r.z}};
        if (r.result) {
            ++valid;
            j["R"] = number_or_null(r.result->ratio);
            j["width_unconditional_m"] = r.result->width_unconditional;
            j["width_conditional_m"] = r.result->width_conditional;
        } else {
            j["R"] = nullptr;
            run.warn("z = " + format_number(r.z * 1e3) + " mm: " + r.error);
        }
        jrows.push_back(j);
    }
    run.summary()["rows"] = jrows;
    run.summary()["valid_rows"] = valid;
    run.write(run.csv_path(), csv.str());
    run.finish();
    return valid > 0 ? 0 : kExitNumerical;
}

int schmidt_scan(const Options& opt) {
    Run run("schmidt-scan", opt);
    const auto rows = run_schmidt_scan(run.scenario());
    std::ostringstream csv;
    write_schmidt_csv(csv, rows);

    json jrows = json::array();
    int valid = 0;
    for (const auto& r : rows) {
        if (r.k_svd && r.k_visibility) ++valid;
        for (const auto& e : r.errors) run.warn("z = " + format_number(r.z * 1e3) + " mm: " + e);
        jrows.push_back({{"z_m", r.z},
                         {"K_svd", number_or_null(r.k_svd)},
                         {"K_visibility", number_or_null(r.k_visibility)},
                         {"geometric_alpha", number_or_null(r.geometric_alpha)}});
    }
    run.summary()["rows"] = jrows;
    run.summary()["valid_rows"] = valid;
    run.write(run.csv_path(), csv.str());
    run.finish();
    return valid > 0 ? 0 : kExitNumerical;
}

int modes(const Options& opt) {
    Run run("modes", opt);
    const ModesResult result = run_modes(run.scenario(), opt.n_modes);
    for (const auto& w : result.warnings) run.warn(w);

    std::ostringstream csv, eig;
    write_modes_csv(csv, result);
    write_eigenvalues_csv(eig, result);
    const std::string eig_path = with_suffix(run.csv_path(), "_eigenvalues.csv");
    run.add_output(eig_path);
    run.summary()["n_modes_requested"] = result.requested;
    run.summary()["n_modes_written"] = result.modes.cols();
    run.summary()["rank"] = result.lambdas.size();
    run.summary()["K"] = schmidt_number(result.lambdas);
    run.summary()["lambda_sum"] = result.lambdas.sum();
    run.summary()["parity_weighted_sum"] = result.parity.weighted_sum(result.lambdas);
    run.write(run.csv_path(), csv.str());
    run.write(eig_path, eig.str());
    run.finish();
    return 0;
}

int phase_scan_cmd(const Options& opt, bool thetas_given, bool n_thetas_given) {
    std::vector<double> thetas;
    if (thetas_given) {
        thetas = parse_thetas(opt.thetas);
        if (n_thetas_given && opt.n_thetas != static_cast<int>(thetas.size()))
            throw ConfigurationError("--n-thetas disagrees with the length of --thetas");
        if (thetas.size() < 3 && !is_zero_pi(thetas))
            throw ConfigurationError("a phase scan needs >= 3 points unless the phases are exactly 0,pi");
    } else {
        thetas = scan_phases(opt.n_thetas);
    }

    Run run("phase-scan", opt);
    const PhaseScanResult result = run_phase_scan(run.scenario(), run.z(), thetas);
    std::ostringstream csv;
    write_phase_scan_csv(csv, result);
    run.summary()["z_m"] = result.z;
    run.summary()["visibility"] = result.scan.visibility;
    run.summary()["K"] = number_or_null(result.scan.k_estimate);
    run.summary()["saturated"] = result.scan.saturated;
    if (result.scan.saturated) run.warn("visibility below the numeric floor; K diverges");
    run.write(run.csv_path(), csv.str());
    run.finish();
    return 0;
}

int amplitude(const Options& opt) {
    Domain domain;
    if (opt.domain == "position")
        domain = Domain::Position;
    else if (opt.domain == "momentum")
        domain = Domain::Momentum;
    else
        throw ConfigurationError("--domain must be position or momentum");

    Run run("amplitude", opt);
    const AmplitudeDump dump = run_amplitude_dump(run.scenario(), run.z(), domain);
    std::ostringstream csv;
    write_amplitude_csv(csv, dump);
    run.summary()["z_m"] = dump.z;
    run.summary()["domain"] = to_string(domain);
    run.summary()["stride"] = dump.stride;
    run.summary()["correlation"] = number_or_null(dump.correlation);
    run.write(run.csv_path(), csv.str());
    run.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon transverse entanglement simulator"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "scenario JSON file (defaults when omitted)")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "CSV output path");
        sub->add_option("--summary", opt.summary, "JSON summary path");
    };

    auto* fed = app.add_subcommand("fedorov-scan", "Fedorov ratio over the detection sweep");
    common(fed);
    auto* sch = app.add_subcommand("schmidt-scan", "Schmidt number (SVD and interferometric) over the sweep");
    common(sch);
    auto* mod = app.add_subcommand("modes", "Schmidt modes and coefficients of the source");
    common(mod);
    mod->add_option("--n-modes", opt.n_modes, "number of modes to write")->check(CLI::PositiveNumber);
    auto* pha = app.add_subcommand("phase-scan", "interferometer phase scan at one plane");
    common(pha);
    auto* n_thetas = pha->add_option("--n-thetas", opt.n_thetas, "evenly spaced phases over [0, 2pi)");
    auto* thetas = pha->add_option("--thetas", opt.thetas, "explicit comma-separated phases in rad ('pi' allowed)");
    pha->add_option("--z-mm", opt.z_mm, "detection plane behind the lens (mm); default sweep start");
    auto* amp = app.add_subcommand("amplitude", "two-photon intensity map at one plane");
    common(amp);
    amp->add_option("--z-mm", opt.z_mm, "detection plane behind the lens (mm); default sweep start");
    amp->add_option("--domain", opt.domain, "position or momentum");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfiguration;
    }

    try {
        if (*fed) return fedorov_scan(opt);
        if (*sch) return schmidt_scan(opt);
        if (*mod) return modes(opt);
        if (*pha) return phase_scan_cmd(opt, thetas->count() > 0, n_thetas->count() > 0);
        if (*amp) return amplitude(opt);
    } catch (const SamplingError& e) {
        std::cerr << "sampling error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfiguration;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfiguration;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfiguration;
    }
    return kExitConfiguration;
}
