"""Star colorings of tensor products of paths and cycles."""
from .coloring import Coloring, VerificationReport, canonical_form, is_star_coloring, verify
from .constructions import (ProductSpec, chi_formula, chi_kmn, construct_cc, construct_cp,
                            construct_pp, parse_spec, product_upper_bound)
from .graph import Graph, build_family, cartesian_product, cycle, path, tensor_product
from .patterns import Pattern, builtin_bank, tile
from .solver import ChiResult, SolverBudget, chi_star, decide_k, enumerate_canonical

__version__ = "0.1.0"
