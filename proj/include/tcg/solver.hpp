// solver.hpp — fixed-step RK4 propagation with per-step diagnostics.

#pragma once

#include <string>
#include <vector>

#include "tcg/generator.hpp"
#include "tcg/ops.hpp"

namespace tcg {

// Uniform grid t0, t0 + dt, ..., t1. dt must divide the span (see tol::).
struct TimeGrid {
    double t0 = 0.0;
    double t1 = 0.0;
    double dt = 0.0;
    long steps = 0;

    static TimeGrid make(double t0, double t1, double dt);

    // Rounds dt down as needed so that it divides the span exactly.
    static TimeGrid from_duration(double t0, double t1, double dt_hint);

    long size() const { return steps + 1; }
    double time(long k) const { return t0 + static_cast<double>(k) * dt; }
};

struct StepDiagnostics {
    double trace_defect = 0.0;
    double hermiticity_defect = 0.0;
    double min_eigenvalue = 0.0;
};

struct Trajectory {
    TimeGrid grid;
    std::vector<ComplexMatrix> states;        // one per grid point
    std::vector<StepDiagnostics> diagnostics; // one per grid point
    std::vector<std::string> warnings;
};

// One classical RK4 step on drho/dt = gen(t, rho). The returned state is the
// raw update; hermitization happens only inside diagnostics, never here.
// Throws IntegrationBlowup on NaN/Inf.
ComplexMatrix rk4_step(const Generator& gen, const ComplexMatrix& rho, double t, double dt);

// Propagates rho0 across the grid, recording diagnostics at every point and a
// warning record when the smallest eigenvalue dips below tol::positivity_warn
// (the coarse-grained generator need not be completely positive).
Trajectory propagate(const Generator& gen, const DensityMatrix& rho0, const TimeGrid& grid);

// Step-size rule: at least 40 steps per fastest oscillation or decay,
// dt = min(2 pi / (40 max|Delta|), 1 / (40 max gamma), 2 pi / (40 |h0|_max + eps)).
double default_dt(const DrivenLevelSystem& sys);

} // namespace tcg
