#include "biphoton/scenario.hpp"

#include "biphoton/errors.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <utility>

namespace biphoton {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<const char*, double>, 4> kLengthUnits{{
    {"_m", 1.0},
    {"_mm", 1e-3},
    {"_um", 1e-6},
    {"_nm", 1e-9},
}};

// Reads one section of the document, remembering which keys were consumed
// so that leftovers (typos, unknown settings) can be reported.
class Section {
public:
    Section(const json& doc, std::string name) : name_(std::move(name)) {
        if (doc.contains(name_)) {
            node_ = &doc.at(name_);
            if (!node_->is_object()) throw ConfigurationError("'" + name_ + "' must be an object");
        }
    }

    double length(const std::string& base, double fallback) {
        double value = fallback;
        int found = 0;
        for (const auto& [suffix, scale] : kLengthUnits) {
            const std::string key = base + suffix;
            if (const json* v = take(key)) {
                value = number(key, *v) * scale;
                ++found;
            }
        }
        if (found > 1)
            throw ConfigurationError("'" + name_ + "." + base + "' is given in more than one unit");
        return value;
    }

    double real(const std::string& key, double fallback) {
        const json* v = take(key);
        return v ? number(key, *v) : fallback;
    }

    int integer(const std::string& key, int fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_number_integer()) throw ConfigurationError("'" + name_ + "." + key + "' must be an integer");
        return v->get<int>();
    }

    std::string text(const std::string& key, const std::string& fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_string()) throw ConfigurationError("'" + name_ + "." + key + "' must be a string");
        return v->get<std::string>();
    }

    void finish() const {
        if (!node_) return;
        for (const auto& item : node_->items())
            if (!used_.count(item.key()))
                throw ConfigurationError("unknown key '" + name_ + "." + item.key() + "'");
    }

private:
    const json* take(const std::string& key) {
        if (!node_ || !node_->contains(key)) return nullptr;
        used_.insert(key);
        return &node_->at(key);
    }

    double number(const std::string& key, const json& v) const {
        if (!v.is_number()) throw ConfigurationError("'" + name_ + "." + key + "' must be a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigurationError("'" + name_ + "." + key + "' must be finite");
        return d;
    }

    std::string name_;
    const json* node_ = nullptr;
    std::set<std::string> used_;
};

}  // namespace

void Scenario::validate() const {
    spdc.validate();
    if (model == SourceModel::DoubleGaussian) double_gaussian.validate();
    if (grid_n < 16 || (grid_n & (grid_n - 1)) != 0)
        throw ConfigurationError("grid.n must be a power of two >= 16");
    if (!(momentum_halfwidth_factor > 0.0))
        throw ConfigurationError("grid.momentum_halfwidth_factor must be positive");
    if (lens_focal == 0.0 || !std::isfinite(lens_focal))
        throw ConfigurationError("optics.lens_focal must be finite and nonzero");
    if (!(lens_position >= 0.0)) throw ConfigurationError("optics.lens_position must be >= 0");
    if (!(slit_fedorov >= 0.0) || !(slit_schmidt >= 0.0))
        throw ConfigurationError("slit widths must be >= 0");
    if (steps < 1) throw ConfigurationError("sweep.steps must be >= 1");
    if (!(z_start >= 0.0)) throw ConfigurationError("sweep.z_start must be >= 0");
    if (!(z_stop >= z_start)) throw ConfigurationError("sweep.z_stop must be >= sweep.z_start");
}

std::vector<double> Scenario::planes() const {
    std::vector<double> z;
    if (steps == 1) return {z_start};
    for (int i = 0; i < steps; ++i)
        z.push_back(z_start + (z_stop - z_start) * static_cast<double>(i) / (steps - 1));
    return z;
}

double Scenario::image_plane() const {
    return lens_focal * lens_position / (lens_position - lens_focal);
}

Scenario scenario_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigurationError("scenario must be a JSON object");
    static const std::set<std::string> kSections{"model",  "spdc",      "double_gaussian", "grid",
                                                 "optics", "detection", "sweep",           "outputs"};
    for (const auto& item : doc.items())
        if (!kSections.count(item.key()))
            throw ConfigurationError("unknown section '" + item.key() + "'");

    Scenario s;
    if (doc.contains("model")) {
        const json& m = doc.at("model");
        if (m == "spdc")
            s.model = SourceModel::Spdc;
        else if (m == "double_gaussian")
            s.model = SourceModel::DoubleGaussian;
        else
            throw ConfigurationError("model must be \"spdc\" or \"double_gaussian\"");
    }

    Section spdc(doc, "spdc");
    s.spdc.lambda_pump = spdc.length("lambda_pump", s.spdc.lambda_pump);
    s.spdc.crystal_length = spdc.length("crystal_length", s.spdc.crystal_length);
    s.spdc.pump_waist = spdc.length("pump_waist", s.spdc.pump_waist);
    spdc.finish();

    Section dg(doc, "double_gaussian");
    s.double_gaussian.sigma_plus = dg.real("sigma_plus_rad_per_m", s.double_gaussian.sigma_plus);
    s.double_gaussian.sigma_minus = dg.real("sigma_minus_rad_per_m", s.double_gaussian.sigma_minus);
    dg.finish();

    Section grid(doc, "grid");
    s.grid_n = grid.integer("n", s.grid_n);
    s.momentum_halfwidth_factor = grid.real("momentum_halfwidth_factor", s.momentum_halfwidth_factor);
    grid.finish();

    Section optics(doc, "optics");
    s.lens_focal = optics.length("lens_focal", s.lens_focal);
    s.lens_position = optics.length("lens_position", s.lens_position);
    optics.finish();

    Section det(doc, "detection");
    s.slit_fedorov = det.length("slit_fedorov", s.slit_fedorov);
    s.slit_schmidt = det.length("slit_schmidt", s.slit_schmidt);
    const std::string window = det.text("schmidt_window", "full");
    if (window == "full")
        s.schmidt_window = SchmidtWindow::Full;
    else if (window == "slit")
        s.schmidt_window = SchmidtWindow::Slit;
    else
        throw ConfigurationError("detection.schmidt_window must be \"full\" or \"slit\"");
    det.finish();

    Section sweep(doc, "sweep");
    s.z_start = sweep.length("z_start", s.z_start);
    s.z_stop = sweep.length("z_stop", s.z_stop);
    s.steps = sweep.integer("steps", s.steps);
    sweep.finish();

    Section out(doc, "outputs");
    s.csv_path = out.text("csv_path", "");
    s.summary_path = out.text("summary_path", "");
    out.finish();

    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open scenario file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigurationError("scenario file '" + path + "' is not valid JSON: " + e.what());
    }
    return scenario_from_json(doc);
}

json to_json(const Scenario& s) {
    return json{
        {"model", s.model == SourceModel::Spdc ? "spdc" : "double_gaussian"},
        {"spdc",
         {{"lambda_pump_m", s.spdc.lambda_pump},
          {"crystal_length_m", s.spdc.crystal_length},
          {"pump_waist_m", s.spdc.pump_waist}}},
        {"double_gaussian",
         {{"sigma_plus_rad_per_m", s.double_gaussian.sigma_plus},
          {"sigma_minus_rad_per_m", s.double_gaussian.sigma_minus}}},
        {"grid", {{"n", s.grid_n}, {"momentum_halfwidth_factor", s.momentum_halfwidth_factor}}},
        {"optics", {{"lens_focal_m", s.lens_focal}, {"lens_position_m", s.lens_position}}},
        {"detection",
         {{"slit_fedorov_m", s.slit_fedorov},
          {"slit_schmidt_m", s.slit_schmidt},
          {"schmidt_window", s.schmidt_window == SchmidtWindow::Full ? "full" : "slit"}}},
        {"sweep", {{"z_start_m", s.z_start}, {"z_stop_m", s.z_stop}, {"steps", s.steps}}},
        {"outputs", {{"csv_path", s.csv_path}, {"summary_path", s.summary_path}}},
    };
}

TwoPhotonAmplitude build_source(const Scenario& s) {
    s.validate();
    if (s.model == SourceModel::Spdc)
        return build_spdc(s.spdc, default_momentum_axis(s.spdc, s.grid_n, s.momentum_halfwidth_factor));
    return build_double_gaussian(
        s.double_gaussian, default_momentum_axis(s.double_gaussian, s.grid_n, s.momentum_halfwidth_factor),
        s.photon_wavenumber());
}

ArmChain detection_chain(const Scenario& s, double z) {
    return ArmChain::both({FreeSpace{s.lens_position}, ThinLens{s.lens_focal}, FreeSpace{z}});
}

TwoPhotonAmplitude detection_state(const Scenario& s, const TwoPhotonAmplitude& source, double z) {
    return apply_chain(in_domain(source, Domain::Position), detection_chain(s, z));
}

}  // namespace biphoton
