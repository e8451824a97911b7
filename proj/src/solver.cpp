// solver.cpp — RK4 propagation.

#include "tcg/solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tcg/errors.hpp"
#include "tcg/tolerances.hpp"

namespace tcg {

TimeGrid TimeGrid::make(double t0, double t1, double dt) {
    if (!(t1 > t0)) throw std::invalid_argument("TimeGrid: t1 must exceed t0");
    if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be positive");
    const double span = t1 - t0;
    const double steps_real = span / dt;
    const long steps = static_cast<long>(std::llround(steps_real));
    if (steps < 1 ||
        std::abs(static_cast<double>(steps) * dt - span) > tol::grid_divisibility * span) {
        throw std::invalid_argument("TimeGrid: dt does not divide t1 - t0");
    }
    return TimeGrid{t0, t1, dt, steps};
}

TimeGrid TimeGrid::from_duration(double t0, double t1, double dt_hint) {
    if (!(t1 > t0)) throw std::invalid_argument("TimeGrid: t1 must exceed t0");
    if (!(dt_hint > 0.0)) throw std::invalid_argument("TimeGrid: dt must be positive");
    const double span = t1 - t0;
    const long steps = std::max<long>(1, static_cast<long>(std::ceil(span / dt_hint - 1e-12)));
    return TimeGrid{t0, t1, span / static_cast<double>(steps), steps};
}

ComplexMatrix rk4_step(const Generator& gen, const ComplexMatrix& rho, double t, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
    const ComplexMatrix k1 = gen.apply(rho, t);
    const ComplexMatrix k2 = gen.apply(rho + 0.5 * dt * k1, t + 0.5 * dt);
    const ComplexMatrix k3 = gen.apply(rho + 0.5 * dt * k2, t + 0.5 * dt);
    const ComplexMatrix k4 = gen.apply(rho + dt * k3, t + dt);
    ComplexMatrix out = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!out.allFinite()) {
        throw IntegrationBlowup("rk4_step produced non-finite entries", -1);
    }
    return out;
}

namespace {

StepDiagnostics diagnose(const ComplexMatrix& rho) {
    StepDiagnostics d;
    d.trace_defect = trace_defect(rho);
    d.hermiticity_defect = hermiticity_defect(rho);
    d.min_eigenvalue = min_eigenvalue(hermitize(rho));
    return d;
}

} // namespace

Trajectory propagate(const Generator& gen, const DensityMatrix& rho0, const TimeGrid& grid) {
    if (rho0.dim() != gen.dim()) {
        throw std::invalid_argument("propagate: state/generator dimension mismatch");
    }
    Trajectory traj;
    traj.grid = grid;
    traj.states.reserve(static_cast<std::size_t>(grid.size()));
    traj.diagnostics.reserve(static_cast<std::size_t>(grid.size()));

    ComplexMatrix rho = rho0.matrix();
    traj.states.push_back(rho);
    traj.diagnostics.push_back(diagnose(rho));

    long first_negative = -1;
    long negative_count = 0;
    double worst_eig = 0.0;
    for (long k = 0; k < grid.steps; ++k) {
        try {
            rho = rk4_step(gen, rho, grid.time(k), grid.dt);
        } catch (const IntegrationBlowup&) {
            throw IntegrationBlowup("integration blew up at step " + std::to_string(k) +
                                        " (t = " + std::to_string(grid.time(k)) + ")",
                                    k);
        }
        traj.states.push_back(rho);
        const StepDiagnostics d = diagnose(rho);
        traj.diagnostics.push_back(d);
        if (d.min_eigenvalue < tol::positivity_warn) {
            if (first_negative < 0) first_negative = k + 1;
            ++negative_count;
            worst_eig = std::min(worst_eig, d.min_eigenvalue);
        }
    }
    if (first_negative >= 0) {
        traj.warnings.push_back(
            "min eigenvalue dipped to " + std::to_string(worst_eig) + " (first at step " +
            std::to_string(first_negative) + ", " + std::to_string(negative_count) +
            " steps below threshold)");
    }
    return traj;
}

double default_dt(const DrivenLevelSystem& sys) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double dt = two_pi / (40.0 * sys.h0.cwiseAbs().maxCoeff() + tol::dt_guard);
    double max_detuning = 0.0;
    for (const auto& d : sys.drives) max_detuning = std::max(max_detuning, std::abs(d.detuning));
    if (max_detuning > 0.0) dt = std::min(dt, two_pi / (40.0 * max_detuning));
    double max_rate = 0.0;
    for (const auto& c : sys.decays) max_rate = std::max(max_rate, c.rate);
    if (max_rate > 0.0) dt = std::min(dt, 1.0 / (40.0 * max_rate));
    return dt;
}

} // namespace tcg
