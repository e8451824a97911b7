// bindings.cpp — pybind11 surface over the core operations: model
// construction, generator assembly, propagation and analysis.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tcg/analysis.hpp"
#include "tcg/config_io.hpp"
#include "tcg/errors.hpp"
#include "tcg/generator.hpp"
#include "tcg/model.hpp"
#include "tcg/presets.hpp"
#include "tcg/runner.hpp"
#include "tcg/solver.hpp"

namespace py = pybind11;
using namespace tcg;

namespace {

Trajectory propagate_py(const Generator& gen, const ComplexMatrix& rho0, double t0, double t1,
                        double dt) {
    return propagate(gen, DensityMatrix(rho0), TimeGrid::from_duration(t0, t1, dt));
}

std::vector<double> trajectory_times(const Trajectory& traj) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(traj.grid.size()));
    for (long k = 0; k < traj.grid.size(); ++k) out.push_back(traj.grid.time(k));
    return out;
}

ObservablePart part_from_string(const std::string& part) {
    if (part == "real" || part == "re") return ObservablePart::Real;
    if (part == "imag" || part == "im") return ObservablePart::Imag;
    if (part == "abs") return ObservablePart::Abs;
    throw ConfigError("observable part must be real, imag or abs");
}

} // namespace

PYBIND11_MODULE(_tcgsim, m) {
    m.doc() = "Time-coarse-grained master equations for driven multilevel atoms";

    py::register_exception<ProportionalityViolation>(m, "ProportionalityViolation");
    py::register_exception<IntegrationBlowup>(m, "IntegrationBlowup");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::enum_<Manifold>(m, "Manifold")
        .value("LOWER", Manifold::Lower)
        .value("UPPER", Manifold::Upper);

    py::class_<Drive>(m, "Drive")
        .def(py::init([](int lower, int upper, Complex rabi, double detuning) {
                 return normalize_drive(Drive{lower, upper, rabi, detuning});
             }),
             py::arg("lower"), py::arg("upper"), py::arg("rabi"), py::arg("detuning"))
        .def_readonly("lower", &Drive::lower)
        .def_readonly("upper", &Drive::upper)
        .def_readonly("rabi", &Drive::rabi)
        .def_readonly("detuning", &Drive::detuning);

    py::class_<DecayChannel>(m, "DecayChannel")
        .def(py::init([](int target, int source, double rate) {
                 return DecayChannel{target, source, rate};
             }),
             py::arg("target"), py::arg("source"), py::arg("rate"))
        .def_readonly("target", &DecayChannel::target)
        .def_readonly("source", &DecayChannel::source)
        .def_readonly("rate", &DecayChannel::rate);

    py::class_<DrivenLevelSystem>(m, "DrivenLevelSystem")
        .def(py::init([](int dim, const ComplexMatrix& h0, std::vector<Drive> drives,
                         std::vector<DecayChannel> decays, std::vector<Manifold> manifold) {
                 DrivenLevelSystem sys{dim, h0, std::move(drives), std::move(decays),
                                       std::move(manifold)};
                 validate_system(sys);
                 return sys;
             }),
             py::arg("dim"), py::arg("h0"), py::arg("drives"), py::arg("decays"),
             py::arg("manifold"))
        .def_readonly("dim", &DrivenLevelSystem::dim)
        .def_readonly("h0", &DrivenLevelSystem::h0)
        .def_readonly("drives", &DrivenLevelSystem::drives)
        .def_readonly("decays", &DrivenLevelSystem::decays)
        .def_readonly("manifold", &DrivenLevelSystem::manifold);

    py::class_<HarmonicTerm>(m, "HarmonicTerm")
        .def_readonly("h", &HarmonicTerm::h)
        .def_readonly("delta", &HarmonicTerm::delta)
        .def_readonly("kappa", &HarmonicTerm::kappa)
        .def_readonly("omega_tilde", &HarmonicTerm::omega_tilde);

    py::class_<Generator>(m, "Generator")
        .def("apply", &Generator::apply, py::arg("rho"), py::arg("t") = 0.0)
        .def("describe", [](const Generator& g) { return describe(g); })
        .def_property_readonly("dim", &Generator::dim)
        .def_property_readonly("variant",
                               [](const Generator& g) { return variant_name(g.variant()); })
        .def_property_readonly("is_static", &Generator::is_static)
        .def_property_readonly("model_hash", &Generator::model_hash)
        .def_property_readonly("term_count",
                               [](const Generator& g) { return g.terms().size(); });

    py::class_<StepDiagnostics>(m, "StepDiagnostics")
        .def_readonly("trace_defect", &StepDiagnostics::trace_defect)
        .def_readonly("hermiticity_defect", &StepDiagnostics::hermiticity_defect)
        .def_readonly("min_eigenvalue", &StepDiagnostics::min_eigenvalue);

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("times", &trajectory_times)
        .def_property_readonly("states",
                               [](const Trajectory& t) { return t.states; })
        .def_property_readonly("diagnostics",
                               [](const Trajectory& t) { return t.diagnostics; })
        .def_property_readonly("warnings", [](const Trajectory& t) { return t.warnings; })
        .def("observable",
             [](const Trajectory& traj, int i, int j, const std::string& part) {
                 return observable_series(traj, {"", i, j, part_from_string(part)});
             },
             py::arg("i"), py::arg("j"), py::arg("part") = "real");

    py::class_<ScenarioPreset>(m, "ScenarioPreset")
        .def_readonly("name", &ScenarioPreset::name)
        .def_readonly("system", &ScenarioPreset::system)
        .def_readonly("frame", &ScenarioPreset::frame)
        .def_readonly("psi0", &ScenarioPreset::psi0)
        .def_readonly("tau", &ScenarioPreset::tau)
        .def_readonly("dt", &ScenarioPreset::dt);

    m.def("preset_names", [] { return preset_names(); });
    m.def("get_preset", &get_preset, py::arg("name"));
    m.def("load_config", [](const std::string& path) {
        const ModelConfig config = read_model_config_file(path);
        return py::make_tuple(config.system, config.frame);
    });
    m.def("write_config", &write_model_config, py::arg("system"), py::arg("frame"));

    m.def("build_lindblads", &build_lindblads);
    m.def("build_harmonic_terms", &build_harmonic_terms);
    m.def("fold_resonant_drives", &fold_resonant_drives);
    m.def("rotating_frame", &rotating_frame, py::arg("system"), py::arg("phases"));
    m.def("characteristic_tau", &characteristic_tau);
    m.def("default_dt", &default_dt);

    m.def("assemble_exact", &assemble_exact, py::arg("system"));
    m.def("assemble_tcg", &assemble_tcg, py::arg("system"), py::arg("include_jump") = true);
    m.def("apply_frame", &apply_frame, py::arg("generator"), py::arg("phases"));

    m.def("propagate", &propagate_py, py::arg("generator"), py::arg("rho0"),
          py::arg("t0"), py::arg("t1"), py::arg("dt"));

    m.def("validity_sweep",
          [](const DrivenLevelSystem& base, const std::vector<double>& omega_ratios,
             const std::vector<double>& gamma_ratios, const std::vector<double>& frame,
             double tmax_over_tau, const std::vector<ComplexVector>& initial_states) {
              SweepOptions options;
              options.frame = frame;
              options.tmax_over_tau = tmax_over_tau;
              options.initial_states = initial_states;
              const auto cells = validity_sweep(base, omega_ratios, gamma_ratios, options);
              py::list rows;
              for (const auto& cell : cells) {
                  py::dict row;
                  row["omega_ratio"] = cell.omega_ratio;
                  row["gamma_ratio"] = cell.gamma_ratio;
                  row["max_pop_dev"] = cell.max_pop_dev;
                  row["max_coh_dev"] = cell.max_coh_dev;
                  row["error"] = cell.error;
                  rows.append(row);
              }
              return rows;
          },
          py::arg("system"), py::arg("omega_ratios"), py::arg("gamma_ratios"),
          py::arg("frame") = std::vector<double>{}, py::arg("tmax_over_tau") = 10.0,
          py::arg("initial_states") = std::vector<ComplexVector>{});

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
