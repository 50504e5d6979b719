"""Exterior calculus, Hodge theory and electromagnetism on Carrollian R^x-bundles.

Thin re-export of the compiled core. Forms and scalars are expression strings
in the chart grammar (coordinates x1..xn with x/y/z aliases for n <= 3, fibre
coordinate t, coframe symbols dx1..dxn and th); bundles are opaque handles
created by flat_bundle, horizon_bundle or custom_bundle.
"""

from ._core import (
    Bundle,
    custom_bundle,
    d,
    delta,
    eval_scalar,
    extend_to_zero,
    flat_bundle,
    horizon_bundle,
    horizon_laplacian_table,
    horizon_scan,
    horizon_star_table,
    laplacian,
    lie_euler,
    maxwell_residual,
    partial_base,
    partial_fibre,
    plane_wave_residual,
    run_simulation,
    star,
    star_square_sign,
    verify,
    wedge,
    weight,
)

__all__ = [
    "Bundle",
    "custom_bundle",
    "d",
    "delta",
    "eval_scalar",
    "extend_to_zero",
    "flat_bundle",
    "horizon_bundle",
    "horizon_laplacian_table",
    "horizon_scan",
    "horizon_star_table",
    "laplacian",
    "lie_euler",
    "maxwell_residual",
    "partial_base",
    "partial_fibre",
    "plane_wave_residual",
    "run_simulation",
    "star",
    "star_square_sign",
    "verify",
    "wedge",
    "weight",
]
