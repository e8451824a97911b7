"""Driven multilevel atoms: exact Lindblad vs time-coarse-grained dynamics.

The heavy lifting lives in the `_tcgsim` extension module; this package adds
a couple of conveniences on top.
"""

from ._tcgsim import (
    ConfigError,
    DecayChannel,
    Drive,
    DrivenLevelSystem,
    Generator,
    HarmonicTerm,
    IntegrationBlowup,
    Manifold,
    ProportionalityViolation,
    ScenarioPreset,
    StepDiagnostics,
    Trajectory,
    apply_frame,
    assemble_exact,
    assemble_tcg,
    build_harmonic_terms,
    build_lindblads,
    characteristic_tau,
    default_dt,
    fold_resonant_drives,
    get_preset,
    load_config,
    preset_names,
    propagate,
    rotating_frame,
    run_cli,
    validity_sweep,
    write_config,
)

__all__ = [
    "ConfigError",
    "DecayChannel",
    "Drive",
    "DrivenLevelSystem",
    "Generator",
    "HarmonicTerm",
    "IntegrationBlowup",
    "Manifold",
    "ProportionalityViolation",
    "ScenarioPreset",
    "StepDiagnostics",
    "Trajectory",
    "apply_frame",
    "assemble_exact",
    "assemble_tcg",
    "build_harmonic_terms",
    "build_lindblads",
    "characteristic_tau",
    "default_dt",
    "fold_resonant_drives",
    "get_preset",
    "load_config",
    "preset_names",
    "propagate",
    "rotating_frame",
    "run_cli",
    "run_preset",
    "validity_sweep",
    "write_config",
]


def run_preset(name, method="both", include_jump=True, tmax_over_tau=10.0, dt=None,
               psi0=None):
    """Propagate a built-in scenario and return its trajectories.

    Returns a dict with keys among {"exact", "tcg"} mapping to Trajectory
    objects, plus "tau" and "times".
    """
    import numpy as np

    preset = get_preset(name)
    system = fold_resonant_drives(preset.system)
    step = dt if dt is not None else preset.dt
    ket = np.asarray(preset.psi0 if psi0 is None else psi0, dtype=complex)
    ket = ket / np.linalg.norm(ket)
    rho0 = np.outer(ket, ket.conj())

    out = {"tau": preset.tau}
    horizon = tmax_over_tau * preset.tau
    if method in ("exact", "both"):
        gen = apply_frame(assemble_exact(system), preset.frame)
        out["exact"] = propagate(gen, rho0, 0.0, horizon, step)
    if method in ("tcg", "both"):
        gen = apply_frame(assemble_tcg(system, include_jump), preset.frame)
        out["tcg"] = propagate(gen, rho0, 0.0, horizon, step)
    first = out.get("exact") or out.get("tcg")
    out["times"] = first.times
    return out
