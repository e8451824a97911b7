// csv.hpp — deterministic CSV emission (%.12e floats, fixed column order).

#pragma once

#include <iosfwd>
#include <vector>

#include "tcg/analysis.hpp"
#include "tcg/solver.hpp"

namespace tcg {

// t,t_over_tau,<columns...>,trace_defect,herm_defect,min_eig
void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::vector<ObservableSpec>& specs, double tau);

// t,<col>_exact,<col>_tcg,<col>_absdiff per observable
void write_compare_csv(std::ostream& out, const Trajectory& exact, const Trajectory& tcg,
                       const std::vector<ObservableSpec>& specs);

// omega_ratio,gamma_ratio,max_pop_dev,max_coh_dev,error
void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);

} // namespace tcg
