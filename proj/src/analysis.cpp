// analysis.cpp — deviation metrics, steady states and validity sweeps.

#include "tcg/analysis.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

#include "tcg/errors.hpp"
#include "tcg/solver.hpp"

namespace tcg {

std::string column_name(const ObservableSpec& spec) {
    switch (spec.part) {
        case ObservablePart::Real: return spec.name + "_re";
        case ObservablePart::Imag: return spec.name + "_im";
        case ObservablePart::Abs: return spec.name + "_abs";
    }
    return spec.name;
}

namespace {

double project(Complex v, ObservablePart part) {
    switch (part) {
        case ObservablePart::Real: return v.real();
        case ObservablePart::Imag: return v.imag();
        case ObservablePart::Abs: return std::abs(v);
    }
    return 0.0;
}

} // namespace

std::vector<double> observable_series(const Trajectory& traj, const ObservableSpec& spec) {
    if (traj.states.empty()) return {};
    const int dim = static_cast<int>(traj.states.front().rows());
    if (spec.i < 0 || spec.j < 0 || spec.i >= dim || spec.j >= dim) {
        throw std::invalid_argument("observable_series: level index out of range");
    }
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& rho : traj.states) {
        // Tr(|i><j| rho) = rho(j, i).
        out.push_back(project(rho(spec.j, spec.i), spec.part));
    }
    return out;
}

ComparisonReport compare(const Trajectory& a, const Trajectory& b,
                         const std::vector<ObservableSpec>& specs, double window_a,
                         double window_b) {
    if (a.grid.t0 != b.grid.t0 || a.grid.t1 != b.grid.t1 || a.grid.dt != b.grid.dt ||
        a.states.size() != b.states.size()) {
        throw std::invalid_argument("compare: trajectories must share one grid");
    }
    if (!(window_a < window_b)) throw std::invalid_argument("compare: empty window");
    const double eps = a.grid.dt * 1e-9;
    if (window_a < a.grid.t0 - eps || window_b > a.grid.t1 + eps) {
        throw std::invalid_argument("compare: window outside trajectory span");
    }

    ComparisonReport report;
    report.window_a = window_a;
    report.window_b = window_b;
    for (const auto& spec : specs) {
        const auto series_a = observable_series(a, spec);
        const auto series_b = observable_series(b, spec);
        DeviationStats stats;
        double sum_sq = 0.0;
        long count = 0;
        for (long k = 0; k < a.grid.size(); ++k) {
            const double t = a.grid.time(k);
            if (t < window_a - eps || t > window_b + eps) continue;
            const double dev = std::abs(series_a[static_cast<std::size_t>(k)] -
                                        series_b[static_cast<std::size_t>(k)]);
            stats.max_abs = std::max(stats.max_abs, dev);
            stats.final_dev = dev;
            sum_sq += dev * dev;
            ++count;
        }
        if (count > 0) stats.rms = std::sqrt(sum_sq / static_cast<double>(count));
        report.names.push_back(column_name(spec));
        report.stats.push_back(stats);
    }
    return report;
}

std::vector<double> steady_state_estimate(const Trajectory& traj,
                                          const std::vector<ObservableSpec>& specs,
                                          double tail_fraction) {
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0) {
        throw std::invalid_argument("steady_state_estimate: tail_fraction must be in (0, 1]");
    }
    const long total = static_cast<long>(traj.states.size());
    const long tail = std::max<long>(
        1, static_cast<long>(std::llround(tail_fraction * static_cast<double>(total))));
    std::vector<double> out;
    out.reserve(specs.size());
    for (const auto& spec : specs) {
        const auto series = observable_series(traj, spec);
        double sum = 0.0;
        for (long k = total - tail; k < total; ++k) sum += series[static_cast<std::size_t>(k)];
        out.push_back(sum / static_cast<double>(tail));
    }
    return out;
}

ComplexMatrix liouvillian_steady_state(const Generator& gen) {
    const Eigen::MatrixXcd superop = gen.static_superoperator();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(superop);
    Eigen::Index best = 0;
    double best_mag = std::numeric_limits<double>::max();
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const double mag = std::abs(solver.eigenvalues()(k));
        if (mag < best_mag) {
            best_mag = mag;
            best = k;
        }
    }
    const int dim = gen.dim();
    const ComplexVector v = solver.eigenvectors().col(best);
    ComplexMatrix rho = Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
    rho = hermitize(rho);
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-12) {
        throw std::runtime_error("liouvillian_steady_state: null vector is traceless");
    }
    return rho / tr;
}

namespace {

DrivenLevelSystem scale_model(const DrivenLevelSystem& base, double omega_ratio,
                              double gamma_ratio) {
    if (base.drives.empty()) throw ConfigError("validity_sweep: model has no drives");
    const Drive& ref = base.drives.front();
    const double omega_ref = std::abs(ref.rabi);
    const double delta_ref = std::abs(ref.detuning);
    if (omega_ref == 0.0 || delta_ref == 0.0) {
        throw ConfigError("validity_sweep: reference drive must have Omega, Delta != 0");
    }
    DrivenLevelSystem out = base;
    const double omega_factor = omega_ratio * delta_ref / omega_ref;
    for (auto& d : out.drives) d.rabi *= omega_factor;
    if (!base.decays.empty()) {
        const double gamma_ref = base.decays.front().rate;
        if (gamma_ref == 0.0) throw ConfigError("validity_sweep: reference decay rate is zero");
        const double gamma_factor = gamma_ratio * delta_ref / gamma_ref;
        for (auto& c : out.decays) c.rate *= gamma_factor;
    } else if (gamma_ratio != 0.0) {
        throw ConfigError("validity_sweep: gamma ratio requested but model has no decays");
    }
    return out;
}

SweepCell run_cell(const DrivenLevelSystem& base, double omega_ratio, double gamma_ratio,
                   const SweepOptions& options) {
    SweepCell cell;
    cell.omega_ratio = omega_ratio;
    cell.gamma_ratio = gamma_ratio;
    try {
        const DrivenLevelSystem sys = scale_model(base, omega_ratio, gamma_ratio);
        Generator exact = assemble_exact(sys);
        Generator tcg = assemble_tcg(sys, /*include_jump=*/false);
        if (!options.frame.empty()) {
            exact = apply_frame(exact, options.frame);
            tcg = apply_frame(tcg, options.frame);
        }
        const double tau = characteristic_tau(sys);
        const TimeGrid grid =
            TimeGrid::from_duration(0.0, options.tmax_over_tau * tau, default_dt(sys));

        std::vector<ComplexVector> states = options.initial_states;
        if (states.empty()) {
            ComplexVector ground = ComplexVector::Zero(sys.dim);
            ground(0) = 1.0;
            states.push_back(ground);
        }
        double pop_dev = 0.0;
        double coh_dev = 0.0;
        for (const auto& psi : states) {
            const DensityMatrix rho0 = DensityMatrix::from_ket(psi);
            const Trajectory tr_exact = propagate(exact, rho0, grid);
            const Trajectory tr_tcg = propagate(tcg, rho0, grid);
            for (long k = 0; k < grid.size(); ++k) {
                const auto& re = tr_exact.states[static_cast<std::size_t>(k)];
                const auto& rt = tr_tcg.states[static_cast<std::size_t>(k)];
                for (int i = 0; i < sys.dim; ++i) {
                    pop_dev = std::max(pop_dev, std::abs(re(i, i).real() - rt(i, i).real()));
                    for (int j = i + 1; j < sys.dim; ++j) {
                        coh_dev = std::max(coh_dev, std::abs(re(j, i) - rt(j, i)));
                    }
                }
            }
        }
        cell.max_pop_dev = pop_dev;
        cell.max_coh_dev = coh_dev;
    } catch (const std::exception& e) {
        cell.error = e.what();
        cell.max_pop_dev = std::numeric_limits<double>::quiet_NaN();
        cell.max_coh_dev = std::numeric_limits<double>::quiet_NaN();
    }
    return cell;
}

} // namespace

std::vector<SweepCell> validity_sweep(const DrivenLevelSystem& base,
                                      const std::vector<double>& omega_ratios,
                                      const std::vector<double>& gamma_ratios,
                                      const SweepOptions& options) {
    std::vector<std::pair<double, double>> cells;
    for (const double w : omega_ratios) {
        for (const double g : gamma_ratios) cells.emplace_back(w, g);
    }
    std::vector<SweepCell> results(cells.size());
    if (cells.empty()) return results;

    // Cells are independent; a small worker pool keeps aggregation order
    // deterministic by writing into preassigned slots.
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(cells.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= cells.size()) return;
                results[k] = run_cell(base, cells[k].first, cells[k].second, options);
            }
        });
    }
    for (auto& th : pool) th.join();
    return results;
}

} // namespace tcg
