"""Exact q-series: eta products, theta lattice sums and product identities."""

from .products import EtaQuotientSpec, eta_quotient, euler_series
from .report import VerificationReport
from .series import BiSeries, FactorList, LaurentPoly, UniSeries

__version__ = "0.1.0"

__all__ = [
    "BiSeries",
    "EtaQuotientSpec",
    "FactorList",
    "LaurentPoly",
    "UniSeries",
    "VerificationReport",
    "eta_quotient",
    "euler_series",
]
