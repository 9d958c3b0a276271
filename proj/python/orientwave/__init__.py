"""Orientation waves in a director field with rotational inertia.

Thin python surface over the C++ core: dispersion algebra for the splay and
twist branches, the exact characteristic solution of the twist-wave
asymptotic system, Hunter-Saxton/Camassa-Holm structure checks, the 1-D
director-field solver, periodic mean-field runs, and the scenario runners.
"""

import json as _json

from ._core import (
    AngleFieldState,
    AnchorSide,
    CharSolution,
    ConstrainedSolveResult,
    CurveFn,
    ElasticConstants,
    Grid1D,
    MeanFieldOrbit,
    MKind,
    OneDSpeeds,
    OrientwaveError,
    PeriodConstants,
    Profile,
    SamplePoint,
    SolveStatus,
    TimeFunction,
    UVState,
    WaveFrame,
    build_char_solution,
    constant_time_fn,
    constrained_solve,
    curve,
    dispersion,
    genuine_nonlinearity_gamma,
    hamiltonian_H,
    lambda_coefficient,
    make_uv_state,
    meanfield_orbit,
    momentum_P,
    one_d_speeds,
    oned_energy,
    oned_step,
    period_constants,
    polarized_constants,
    riccati_sigma,
    riccati_time_fn,
    run_scenario_json,
    to_curve,
    twist_degeneracy_check,
    twist_ic,
    u_to_v,
    uveq_fd_step,
    v_to_u,
    zero_time_fn,
)

__all__ = [name for name in dir() if not name.startswith("_")]


def run_scenario(config):
    """Run a named scenario from a config dict and return the report dict."""
    if isinstance(config, dict):
        config = _json.dumps(config)
    return _json.loads(run_scenario_json(config))
