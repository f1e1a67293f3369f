"""Exact symbolic engine and verification suites for the quantum double-torus."""

from .algebras import (
    BasisWindow,
    Element,
    TensorElement,
    adtq,
    at2,
    at2q,
    auq2,
    az2,
    build_finite_quotient,
    elements_equal,
    enumerate_basis,
)
from .exprs import parse_element, parse_expression, print_expression
from .scalars import CyclotomicMode, QScalar, eval_scalar, reduce_cyclotomic, star_scalar
from .suites import SuiteParams, run_suite

__all__ = [
    "BasisWindow",
    "CyclotomicMode",
    "Element",
    "QScalar",
    "SuiteParams",
    "TensorElement",
    "adtq",
    "at2",
    "at2q",
    "auq2",
    "az2",
    "build_finite_quotient",
    "elements_equal",
    "enumerate_basis",
    "eval_scalar",
    "parse_element",
    "parse_expression",
    "print_expression",
    "reduce_cyclotomic",
    "run_suite",
    "star_scalar",
]
