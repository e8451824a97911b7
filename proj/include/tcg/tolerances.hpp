// tolerances.hpp — every numerical tolerance used by the library, in one place.

#pragma once

namespace tcg::tol {

// Admission checks on constructed density matrices and Hamiltonians.
inline constexpr double hermiticity = 1e-12;
inline constexpr double unit_trace = 1e-12;
inline constexpr double positivity = 1e-12;

// Inputs to a Hermitian eigensolve must be Hermitian to this level.
inline constexpr double min_eig_input = 1e-8;

// Relative residual allowed when fitting [K, X] = -c * factor * X, and the
// largest imaginary part tolerated in the fitted rate.
inline constexpr double proportionality = 1e-10;

// Trajectory diagnostics: eigenvalues below this trigger a warning record.
inline constexpr double positivity_warn = -1e-6;

// Frequencies with |nu| below this are treated as static. Keeps frame
// arithmetic like 1.1 - (1.2 - 0.1) from leaving 1-ulp residues behind.
inline constexpr double frequency_snap = 1e-12;

// A time grid's dt must divide its span to this relative accuracy.
inline constexpr double grid_divisibility = 1e-9;

// Guard added to the h0 norm in the default step-size rule.
inline constexpr double dt_guard = 1e-9;

} // namespace tcg::tol
