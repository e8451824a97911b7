// presets.cpp — the driven-atom scenarios used throughout the test and
// acceptance suites: a detuned qubit, a three-level Raman system and a
// four-level double-lambda system (ground and excited initial states).

#include "tcg/presets.hpp"

#include "tcg/errors.hpp"
#include "tcg/solver.hpp"

namespace tcg {

namespace {

ScenarioPreset make_twolevel() {
    // Levels named 1 and 3 in reporting: a single far-detuned transition.
    ScenarioPreset p;
    p.name = "twolevel";
    p.system.dim = 2;
    p.system.h0 = ComplexMatrix::Zero(2, 2);
    p.system.manifold = {Manifold::Lower, Manifold::Upper};
    p.system.drives = {Drive{0, 1, Complex(0.1, 0.0), 1.0}};
    p.system.decays = {DecayChannel{0, 1, 0.1}};
    p.frame = {0.0, 1.0};  // renders the drive static
    p.psi0 = ComplexVector{{Complex(1.0, 0.0), Complex(1.0, 0.0)}};
    p.observables = {
        {"s11", 0, 0, ObservablePart::Real},
        {"s33", 1, 1, ObservablePart::Real},
        {"s13", 0, 1, ObservablePart::Real},
        {"s13", 0, 1, ObservablePart::Imag},
    };
    p.tau = characteristic_tau(p.system);
    p.dt = 0.5 * default_dt(p.system);
    return p;
}

ScenarioPreset make_raman3() {
    ScenarioPreset p;
    p.name = "raman3";
    p.system.dim = 3;
    p.system.h0 = ComplexMatrix::Zero(3, 3);
    p.system.manifold = {Manifold::Lower, Manifold::Lower, Manifold::Upper};
    p.system.drives = {Drive{0, 2, Complex(0.1, 0.0), 1.0},
                       Drive{1, 2, Complex(0.1, 0.0), 1.0}};
    p.system.decays = {DecayChannel{0, 2, 0.1}, DecayChannel{1, 2, 0.1}};
    p.frame = {0.0, 0.0, 1.0};
    p.psi0 = ComplexVector{{Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 0.0)}};
    p.observables = {
        {"s11", 0, 0, ObservablePart::Real},
        {"s22", 1, 1, ObservablePart::Real},
        {"s33", 2, 2, ObservablePart::Real},
        {"s12", 0, 1, ObservablePart::Real},
        {"s12", 0, 1, ObservablePart::Imag},
        {"s13", 0, 2, ObservablePart::Real},
        {"s13", 0, 2, ObservablePart::Imag},
    };
    p.tau = characteristic_tau(p.system);
    p.dt = 0.5 * default_dt(p.system);
    return p;
}

DrivenLevelSystem fourlevel_system() {
    DrivenLevelSystem sys;
    sys.dim = 4;
    sys.h0 = ComplexMatrix::Zero(4, 4);
    sys.manifold = {Manifold::Lower, Manifold::Lower, Manifold::Upper, Manifold::Upper};
    sys.drives = {Drive{0, 2, Complex(0.1, 0.0), 1.0},
                  Drive{1, 2, Complex(0.1, 0.0), 0.9},
                  Drive{0, 3, Complex(0.1, 0.0), 1.2},
                  Drive{1, 3, Complex(0.1, 0.0), 1.1}};
    sys.decays = {DecayChannel{0, 2, 0.1}, DecayChannel{1, 2, 0.1},
                  DecayChannel{0, 3, 0.1}, DecayChannel{1, 3, 0.1}};
    return sys;
}

std::vector<double> fourlevel_frame(const DrivenLevelSystem& sys) {
    // The unique diagonal frame (phase of level 1 fixed to zero) that makes
    // the 1-3, 2-3 and 1-4 drive terms static. With these detunings the
    // detuning loop closes, so the residual on the 2-4 drive is zero as well.
    const double d13 = sys.drives[0].detuning;
    const double d23 = sys.drives[1].detuning;
    const double d14 = sys.drives[2].detuning;
    return {0.0, d13 - d23, d13, d14};
}

std::vector<ObservableSpec> fourlevel_observables() {
    return {
        {"s11", 0, 0, ObservablePart::Real}, {"s22", 1, 1, ObservablePart::Real},
        {"s33", 2, 2, ObservablePart::Real}, {"s44", 3, 3, ObservablePart::Real},
        {"s12", 0, 1, ObservablePart::Real}, {"s12", 0, 1, ObservablePart::Imag},
        {"s34", 2, 3, ObservablePart::Real}, {"s34", 2, 3, ObservablePart::Imag},
    };
}

ScenarioPreset make_fourlevel() {
    ScenarioPreset p;
    p.name = "fourlevel";
    p.system = fourlevel_system();
    p.frame = fourlevel_frame(p.system);
    p.psi0 = ComplexVector{{Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 0.0),
                            Complex(0.0, 0.0)}};
    p.observables = fourlevel_observables();
    p.tau = characteristic_tau(p.system);
    p.dt = 0.5 * default_dt(p.system);
    return p;
}

ScenarioPreset make_fourlevel_excited() {
    ScenarioPreset p = make_fourlevel();
    p.name = "fourlevel_excited";
    p.psi0 = ComplexVector{{Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0),
                            Complex(1.0, 0.0)}};
    return p;
}

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"twolevel", "raman3", "fourlevel",
                                                   "fourlevel_excited"};
    return names;
}

ScenarioPreset get_preset(const std::string& name) {
    if (name == "twolevel") return make_twolevel();
    if (name == "raman3") return make_raman3();
    if (name == "fourlevel") return make_fourlevel();
    if (name == "fourlevel_excited") return make_fourlevel_excited();
    throw ConfigError("unknown preset '" + name + "'");
}

std::vector<ObservableSpec> default_observables(int dim) {
    std::vector<ObservableSpec> out;
    for (int i = 0; i < dim; ++i) {
        out.push_back({"s" + std::to_string(i + 1) + std::to_string(i + 1), i, i,
                       ObservablePart::Real});
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const std::string name = "s" + std::to_string(i + 1) + std::to_string(j + 1);
            out.push_back({name, i, j, ObservablePart::Real});
            out.push_back({name, i, j, ObservablePart::Imag});
        }
    }
    return out;
}

} // namespace tcg
