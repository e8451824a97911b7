// model.hpp — declarative driven, dissipative multilevel atom and the
// operators derived from it (Lindblads, decaying-frame constants, frames).

#pragma once

#include <string>
#include <vector>

#include "tcg/ops.hpp"

namespace tcg {

// One harmonic drive (Omega/2)|lower><upper| e^{i detuning t} + h.c.
// Angular-frequency units throughout. `lower` is the lower-manifold index by
// convention; drives entered upper-first are normalized by normalize_drive.
struct Drive {
    int lower = 0;
    int upper = 0;
    Complex rabi{};
    double detuning = 0.0;
};

// One decay channel sqrt(rate)|target><source|.
struct DecayChannel {
    int target = 0;
    int source = 0;
    double rate = 0.0;
};

enum class Manifold { Lower, Upper };

struct DrivenLevelSystem {
    int dim = 0;
    ComplexMatrix h0;                // time-independent part, Hermitian
    std::vector<Drive> drives;
    std::vector<DecayChannel> decays;
    std::vector<Manifold> manifold;  // reporting metadata, one tag per level
};

// One drive term in the decaying frame: h with complex frequency
// omega_tilde = delta + i kappa. Resonant terms (delta == 0) are excluded.
struct HarmonicTerm {
    ComplexMatrix h;
    double delta = 0.0;
    double kappa = 0.0;
    Complex omega_tilde{};
};

// Swaps index order, conjugates the Rabi frequency and negates the detuning
// when a drive was entered upper-first.
Drive normalize_drive(const Drive& d);

// Checks invariants (index ranges, Hermitian h0, nonnegative rates). Throws
// ConfigError with a description of the first problem found.
void validate_system(const DrivenLevelSystem& sys);

// One sqrt(rate)|target><source| per channel with rate > 0.
std::vector<ComplexMatrix> build_lindblads(const DrivenLevelSystem& sys);

// K = (1/2) sum_i L_i^+ L_i. Hermitian, positive semidefinite.
ComplexMatrix build_K(const std::vector<ComplexMatrix>& lindblads, int dim);

// Fits the real constant c in [K, X] = -c * factor * X. factor = 1/2 yields
// the Lindblad relaxation rate gamma_K, factor = 1 the drive rate kappa.
// Throws ProportionalityViolation when no such constant exists.
double extract_eigenrate(const ComplexMatrix& K, const ComplexMatrix& X, double factor);

// One HarmonicTerm per drive, kappa extracted from the decaying frame.
// Requires all drives detuned; fold resonant ones into h0 first.
std::vector<HarmonicTerm> build_harmonic_terms(const DrivenLevelSystem& sys);

// Moves every drive with detuning == 0 into h0 as (Omega/2)|i><j| + h.c.
DrivenLevelSystem fold_resonant_drives(const DrivenLevelSystem& sys);

// Diagonal rotating frame with one phase frequency per level:
// h0 gains diag(phases), each drive detuning shifts by -(phases[upper] -
// phases[lower]). Lindblad dyads are invariant up to a phase.
DrivenLevelSystem rotating_frame(const DrivenLevelSystem& sys,
                                 const std::vector<double>& phases);

// Characteristic slow timescale 4|omega_tilde|^2 / (delta |Omega|^2) of the
// reference (first) drive; 1.0 for drive-free systems.
double characteristic_tau(const DrivenLevelSystem& sys);

// Canonical text form of the model (also the config-file format) hashed with
// FNV-1a; used as generator metadata.
std::string model_hash(const DrivenLevelSystem& sys);

} // namespace tcg
