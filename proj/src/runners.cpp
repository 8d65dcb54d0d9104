#include "biphoton/runners.hpp"

#include "biphoton/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

namespace biphoton {

int worker_count() {
    if (const char* env = std::getenv("BIPHOTON_WORKERS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n >= 1) return static_cast<int>(n);
        throw ConfigurationError("BIPHOTON_WORKERS must be a positive integer");
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(int count, int workers, const std::function<void(int)>& job) {
    if (workers <= 0) workers = worker_count();
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<FedorovRow> run_fedorov_scan(const Scenario& scenario, int workers) {
    const TwoPhotonAmplitude source = to_position(build_source(scenario));
    const std::vector<double> planes = scenario.planes();
    std::vector<FedorovRow> rows(planes.size());
    parallel_for(static_cast<int>(planes.size()), workers, [&](int i) {
        FedorovRow& row = rows[i];
        row.z = planes[i];
        const TwoPhotonAmplitude state = detection_state(scenario, source, row.z);
        try {
            row.result = fedorov_ratio(state, Arm::Signal, scenario.slit_fedorov);
        } catch (const MeasurementError& e) {
            row.error = e.what();
        }
    });
    return rows;
}

std::pair<Slit, Slit> schmidt_windows(const Scenario& scenario, const TwoPhotonAmplitude& state) {
    if (scenario.schmidt_window == SchmidtWindow::Full) return {Slit::whole(), Slit::whole()};
    auto centered_on_peak = [&](Arm arm) {
        const Distribution1D m = marginal(state, arm);
        Eigen::Index idx = 0;
        m.weights.maxCoeff(&idx);
        return Slit::window(m.axis.coordinate(static_cast<int>(idx)), scenario.slit_schmidt);
    };
    return {centered_on_peak(Arm::Signal), centered_on_peak(Arm::Idler)};
}

std::vector<SchmidtRow> run_schmidt_scan(const Scenario& scenario, int workers) {
    const TwoPhotonAmplitude source = to_position(build_source(scenario));
    const std::vector<double> planes = scenario.planes();
    std::vector<SchmidtRow> rows(planes.size());
    parallel_for(static_cast<int>(planes.size()), workers, [&](int i) {
        SchmidtRow& row = rows[i];
        row.z = planes[i];
        const TwoPhotonAmplitude state = detection_state(scenario, source, row.z);

        const Eigen::VectorXd lambdas = schmidt_coefficients(state);
        row.k_svd = schmidt_number(lambdas);
        try {
            row.geometric_alpha = fit_geometric(lambdas, 10).alpha;
        } catch (const Error& e) {
            row.errors.push_back(e.what());
        }

        // Two-point piezo measurement in the constructive output: theta = 0 and pi.
        const auto [slit_s, slit_i] = schmidt_windows(scenario, state);
        const double p_plus = conditional_rates(interfere(state, 0.0), slit_s, slit_i).p_plus;
        const double p_minus = conditional_rates(interfere(state, std::numbers::pi), slit_s, slit_i).p_plus;
        row.p_plus = p_plus;
        row.p_minus = p_minus;
        try {
            row.k_visibility = schmidt_from_rates(p_plus, p_minus);
        } catch (const Error& e) {
            row.errors.push_back(e.what());
        }
    });
    return rows;
}

ModesResult run_modes(const Scenario& scenario, int n_modes) {
    if (n_modes < 1) throw ConfigurationError("--n-modes must be >= 1");
    const TwoPhotonAmplitude source = to_position(build_source(scenario));
    const SchmidtDecomposition dec = decompose(source);

    ModesResult out;
    out.axis = dec.signal_axis;
    out.requested = n_modes;
    out.lambdas = dec.lambdas;
    out.parity = parity_classification(dec);
    const Eigen::Index kept = std::min<Eigen::Index>(n_modes, dec.rank());
    if (kept < n_modes)
        out.warnings.push_back("requested " + std::to_string(n_modes) + " modes but only " +
                               std::to_string(dec.rank()) + " exceed the truncation threshold");
    out.modes = dec.modes_signal.leftCols(kept);
    for (Eigen::Index n = 0; n < kept; ++n) {
        Eigen::Index idx = 0;
        out.modes.col(n).cwiseAbs().maxCoeff(&idx);
        const std::complex<double> ref = out.modes(idx, n);
        out.modes.col(n) *= std::abs(ref) / ref;
    }
    return out;
}

std::vector<double> scan_phases(int n_thetas) {
    if (n_thetas < 3)
        throw ConfigurationError("a phase scan needs >= 3 points to bracket the extrema "
                                 "(or exactly the phases {0, pi})");
    std::vector<double> thetas(n_thetas);
    for (int j = 0; j < n_thetas; ++j) thetas[j] = 2.0 * std::numbers::pi * j / n_thetas;
    return thetas;
}

PhaseScanResult run_phase_scan(const Scenario& scenario, double z, const std::vector<double>& thetas) {
    const TwoPhotonAmplitude source = to_position(build_source(scenario));
    const TwoPhotonAmplitude state = detection_state(scenario, source, z);
    const auto [slit_s, slit_i] = schmidt_windows(scenario, state);
    return PhaseScanResult{z, phase_scan(state, thetas, slit_s, slit_i, Port::Constructive)};
}

double intensity_correlation(const TwoPhotonAmplitude& tpa) {
    const Eigen::MatrixXd w = tpa.intensity() / tpa.intensity().sum();
    const Eigen::VectorXd xs = tpa.signal.coordinates().matrix();
    const Eigen::VectorXd xi = tpa.idler.coordinates().matrix();
    const Eigen::VectorXd ws = w.rowwise().sum();
    const Eigen::VectorXd wi = w.colwise().sum().transpose();
    const double ms = ws.dot(xs);
    const double mi = wi.dot(xi);
    const Eigen::VectorXd ds = xs.array() - ms;
    const Eigen::VectorXd di = xi.array() - mi;
    const double cov = ds.dot(w * di);
    const double vs = ws.dot(ds.cwiseAbs2());
    const double vi = wi.dot(di.cwiseAbs2());
    return cov / std::sqrt(vs * vi);
}

AmplitudeDump run_amplitude_dump(const Scenario& scenario, double z, Domain domain) {
    const TwoPhotonAmplitude source = to_position(build_source(scenario));
    const TwoPhotonAmplitude state = in_domain(detection_state(scenario, source, z), domain);

    AmplitudeDump dump;
    dump.z = z;
    dump.domain = domain;
    dump.correlation = intensity_correlation(state);
    const int n = state.signal.n;
    dump.stride = std::max(1, n / 256);
    const int m = (n + dump.stride - 1) / dump.stride;
    const Eigen::MatrixXd intensity = state.intensity();
    dump.signal_coordinates.resize(m);
    dump.idler_coordinates.resize(m);
    dump.intensity.resize(m, m);
    for (int a = 0; a < m; ++a) {
        dump.signal_coordinates(a) = state.signal.coordinate(a * dump.stride);
        dump.idler_coordinates(a) = state.idler.coordinate(a * dump.stride);
        for (int b = 0; b < m; ++b) dump.intensity(a, b) = intensity(a * dump.stride, b * dump.stride);
    }
    return dump;
}

std::string format_number(double value) {
    if (!std::isfinite(value)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string format_number(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string("null");
}

void write_fedorov_csv(std::ostream& out, const std::vector<FedorovRow>& rows) {
    out << "z_mm,width_unconditional_m,width_conditional_m,R\n";
    for (const FedorovRow& r : rows) {
        out << format_number(r.z * 1e3) << ',';
        if (r.result)
            out << format_number(r.result->width_unconditional) << ','
                << format_number(r.result->width_conditional) << ',' << format_number(r.result->ratio);
        else
            out << "null,null,null";
        out << '\n';
    }
}

void write_schmidt_csv(std::ostream& out, const std::vector<SchmidtRow>& rows) {
    out << "z_mm,K_svd,K_visibility,P_plus,P_minus,geometric_alpha\n";
    for (const SchmidtRow& r : rows)
        out << format_number(r.z * 1e3) << ',' << format_number(r.k_svd) << ','
            << format_number(r.k_visibility) << ',' << format_number(r.p_plus) << ','
            << format_number(r.p_minus) << ',' << format_number(r.geometric_alpha) << '\n';
}

void write_modes_csv(std::ostream& out, const ModesResult& result) {
    out << "x_m";
    for (Eigen::Index n = 0; n < result.modes.cols(); ++n)
        out << ",phi" << n << "_re_per_sqrt_m,phi" << n << "_im_per_sqrt_m";
    out << '\n';
    for (int j = 0; j < result.axis.n; ++j) {
        out << format_number(result.axis.coordinate(j));
        for (Eigen::Index n = 0; n < result.modes.cols(); ++n)
            out << ',' << format_number(result.modes(j, n).real()) << ','
                << format_number(result.modes(j, n).imag());
        out << '\n';
    }
}

void write_eigenvalues_csv(std::ostream& out, const ModesResult& result) {
    out << "n,lambda,parity,parity_score\n";
    for (Eigen::Index n = 0; n < result.lambdas.size(); ++n)
        out << n << ',' << format_number(result.lambdas(n)) << ',' << result.parity.parity[n] << ','
            << format_number(result.parity.score(n)) << '\n';
}

void write_phase_scan_csv(std::ostream& out, const PhaseScanResult& result) {
    out << "theta_rad,rate\n";
    for (std::size_t j = 0; j < result.scan.thetas.size(); ++j)
        out << format_number(result.scan.thetas[j]) << ',' << format_number(result.scan.rates[j]) << '\n';
}

void write_amplitude_csv(std::ostream& out, const AmplitudeDump& dump) {
    if (dump.domain == Domain::Position)
        out << "x_signal_m,x_idler_m,intensity_per_m2\n";
    else
        out << "p_signal_rad_per_m,p_idler_rad_per_m,intensity_m2\n";
    for (Eigen::Index a = 0; a < dump.intensity.rows(); ++a)
        for (Eigen::Index b = 0; b < dump.intensity.cols(); ++b)
            out << format_number(dump.signal_coordinates(a)) << ','
                << format_number(dump.idler_coordinates(b)) << ','
                << format_number(dump.intensity(a, b)) << '\n';
}

}  // namespace biphoton
