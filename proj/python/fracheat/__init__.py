"""Exact fat-Cantor thickness profiles and fractional-heat observability experiments.

The heavy lifting lives in the compiled extension; this package re-exports
its surface. Rational quantities cross the boundary as "p/q" strings so no
exactness is lost.
"""

from ._core import (  # noqa: F401
    GridSpec,
    IntervalUnion,
    NumericalError,
    SvcParams,
    ValidationError,
    band_project,
    calibrate_lr_constants,
    eval_g,
    evolve,
    fit_alpha_points,
    fit_spectral_growth,
    min_local_measure,
    observability_constant,
    predicted_cobs,
    restrict_mass,
    run_config,
    spectral_constant_d,
    spectral_sweep,
    svc_construct,
    svc_min_local_measure,
    thickness_profile,
    __version__,
)
