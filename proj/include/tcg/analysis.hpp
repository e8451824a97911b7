// analysis.hpp — observable extraction, exact-vs-coarse-grained deviation
// metrics, steady-state estimates and validity sweeps.

#pragma once

#include <string>
#include <vector>

#include "tcg/generator.hpp"
#include "tcg/model.hpp"
#include "tcg/solver.hpp"

namespace tcg {

enum class ObservablePart { Real, Imag, Abs };

// <sigma_ij> = Tr(|i><j| rho) projected onto the requested part.
struct ObservableSpec {
    std::string name;  // base name; CSV columns append _re/_im/_abs
    int i = 0;
    int j = 0;
    ObservablePart part = ObservablePart::Real;
};

std::string column_name(const ObservableSpec& spec);

std::vector<double> observable_series(const Trajectory& traj, const ObservableSpec& spec);

struct DeviationStats {
    double max_abs = 0.0;
    double rms = 0.0;
    double final_dev = 0.0;
};

struct ComparisonReport {
    std::vector<std::string> names;
    std::vector<DeviationStats> stats;  // parallel to names
    double window_a = 0.0;
    double window_b = 0.0;
    std::string metadata;
};

// Per-observable deviation metrics between two trajectories on identical
// grids, restricted to times in [window_a, window_b].
ComparisonReport compare(const Trajectory& a, const Trajectory& b,
                         const std::vector<ObservableSpec>& specs, double window_a,
                         double window_b);

// Mean of each observable over the final tail_fraction of the grid.
std::vector<double> steady_state_estimate(const Trajectory& traj,
                                          const std::vector<ObservableSpec>& specs,
                                          double tail_fraction);

// Steady state of a static generator from the null vector of its
// superoperator, hermitized and trace-normalized.
ComplexMatrix liouvillian_steady_state(const Generator& gen);

struct SweepCell {
    double omega_ratio = 0.0;
    double gamma_ratio = 0.0;
    double max_pop_dev = 0.0;
    double max_coh_dev = 0.0;
    std::string error;  // empty on success; devs are NaN otherwise
};

struct SweepOptions {
    std::vector<double> frame;          // empty = no rotation
    double tmax_over_tau = 10.0;
    std::vector<ComplexVector> initial_states;
};

// Rescales the base model so the reference (first) drive and decay hit each
// (omega_ratio, gamma_ratio) cell, then compares exact against tcg_simple
// populations/coherences over [0, tmax_over_tau * tau]. Cells run
// concurrently; per-cell failures are recorded, not propagated.
std::vector<SweepCell> validity_sweep(const DrivenLevelSystem& base,
                                      const std::vector<double>& omega_ratios,
                                      const std::vector<double>& gamma_ratios,
                                      const SweepOptions& options);

} // namespace tcg
