"""Exact arithmetic in Lambda = Z_p[[X]]."""
from .iota import DEFAULT_IOTA_PRECISION, iota_apply, iota_normalize
from .padic import PadicInt
from .polynomial import DistinguishedPoly, cyclotomic_phi, format_poly, omega
from .series import LambdaSeries
from .weierstrass import (
    WeierstrassDivision,
    WeierstrassFactorization,
    weierstrass_divide,
    weierstrass_prepare,
)

__all__ = [
    "DEFAULT_IOTA_PRECISION",
    "DistinguishedPoly",
    "LambdaSeries",
    "PadicInt",
    "WeierstrassDivision",
    "WeierstrassFactorization",
    "cyclotomic_phi",
    "format_poly",
    "iota_apply",
    "iota_normalize",
    "omega",
    "weierstrass_divide",
    "weierstrass_prepare",
]
