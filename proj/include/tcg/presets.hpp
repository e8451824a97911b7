// presets.hpp — built-in scenarios with bound parameters, frame, initial
// state, grid and observables.

#pragma once

#include <string>
#include <vector>

#include "tcg/analysis.hpp"
#include "tcg/model.hpp"

namespace tcg {

struct ScenarioPreset {
    std::string name;
    DrivenLevelSystem system;
    std::vector<double> frame;          // diagonal frame phases, one per level
    ComplexVector psi0;                 // normalized on use
    std::vector<ObservableSpec> observables;
    double tau = 1.0;                   // characteristic slow timescale
    double dt = 0.0;  // bound step: half the step-rule default, which holds the
                      // early-transient eigenvalue dip inside the 1e-9 budget
    double default_tmax_over_tau = 10.0;
};

// twolevel, raman3, fourlevel, fourlevel_excited.
const std::vector<std::string>& preset_names();
ScenarioPreset get_preset(const std::string& name);

// Default observable set for file-loaded models: every population, then the
// real and imaginary part of every upper-triangle coherence.
std::vector<ObservableSpec> default_observables(int dim);

} // namespace tcg
