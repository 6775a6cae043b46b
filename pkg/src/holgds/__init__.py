"""Exact Holant / #GDS counting: transforms, gadgets, interpolation, classifiers."""
from .classify import Verdict, classify_a1b, classify_ternary, classify_uniform_gds
from .evaluate import brute_force, eliminate, evaluate, holant_pow
from .gadgets import (
    GdsGadget,
    builtin_chain,
    builtin_ladder,
    gadgeture,
    ladder_collapsed,
    ladder_gadgeture,
    transfer_matrix,
)
from .grids import GdsGrid, HolantGrid, Multigraph, load_instance, parse_instance, parse_source_graph
from .interpolate import CoefficientTable, MonomialBasis, galois_certificate_s5, recover, recover_product
from .reduction import build_skeleton, count_vertex_covers_brute, perfect_matching, run_reduction
from .signatures import Signature, apply_eq3_tensor, decompose_eq3_tensor, equality, symmetric
from .verify import verify

__version__ = "0.1.0"
