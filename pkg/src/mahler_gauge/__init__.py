"""Certified Mahler measure, discriminant and energy inequalities, and number-field searches."""

from .config import Precision, default_precision
from .energy import PointConfiguration, check_thm_2_1, config_discriminant, config_measure, sharpness_family
from .errors import DomainError, HypothesisNotSatisfied, PrecisionError
from .interval import Interval
from .measure import (
    check_cor_1_5,
    check_l1,
    check_mahler_classical,
    check_thm_1_2,
    mahler_measure,
)
from .numfield import build_order, check_field_bounds, compute_M_OK, find_generators, find_generators_real_variant
from .polyexact import IntPolynomial, discriminant_exact, parse_poly, resultant
from .report import InequalityReport
from .roots import find_roots

__all__ = [
    "DomainError",
    "HypothesisNotSatisfied",
    "InequalityReport",
    "IntPolynomial",
    "Interval",
    "PointConfiguration",
    "Precision",
    "PrecisionError",
    "build_order",
    "check_cor_1_5",
    "check_field_bounds",
    "check_l1",
    "check_mahler_classical",
    "check_thm_1_2",
    "check_thm_2_1",
    "compute_M_OK",
    "config_discriminant",
    "config_measure",
    "default_precision",
    "discriminant_exact",
    "find_generators",
    "find_generators_real_variant",
    "find_roots",
    "mahler_measure",
    "parse_poly",
    "resultant",
    "sharpness_family",
]
