"""Exact exponent spectra of a parametric family of generalized (n+1)-systems."""

from .exactnum import (DualRat, PoleError, Rat, RatMat, dual_eval, format_rat,
                       mat_det, mat_rank, parse_rat, rat_make)
from .nsystem import (GraphData, InvalidParams, NSystem, Params, SystemGeometry,
                      UnsupportedDimension, build_geometry, canonical_params,
                      check_axioms, eval_system, export_graph, validate_params)
from .exponents import (ExponentTuple, check_chains, closed_forms_paper, compare,
                        criterion_lhs, mnuv, sample_neighborhood, trajectory_exponents)
from .polyring import Poly, RatFunc, constant_term, poly_arith, specialize
from .cfrac import CFData, cf_identity_check, cf_inputs, convergents
from .certify import (independence_certificate, jacobian, specialization_rank_check,
                      uniform_block_certificate)

__all__ = [
    "DualRat", "PoleError", "Rat", "RatMat", "dual_eval", "format_rat", "mat_det",
    "mat_rank", "parse_rat", "rat_make", "GraphData", "InvalidParams", "NSystem", "Params",
    "SystemGeometry", "UnsupportedDimension", "build_geometry", "canonical_params",
    "check_axioms", "eval_system", "export_graph", "validate_params", "ExponentTuple",
    "check_chains", "closed_forms_paper", "compare", "criterion_lhs", "mnuv",
    "sample_neighborhood", "trajectory_exponents", "Poly", "RatFunc", "constant_term",
    "poly_arith", "specialize", "CFData", "cf_identity_check", "cf_inputs", "convergents",
    "independence_certificate", "jacobian", "specialization_rank_check",
    "uniform_block_certificate",
]

__version__ = "0.1.0"
