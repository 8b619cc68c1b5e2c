"""Exact rational cycles of generalized 3x+1 compositions."""

from .composition import AffineStep, Composition, parse_spec
from .cycles import CycleSolution, affine_fold_fixed_point, discriminant, solve_cycle, verify_closure
from .enumeration import CycleRecord, classify_rotations, enumerate_words, find_integer_cycles
from .exact import euler_totient, mod_inverse, rat_is_integer, rat_make
from .integrality import (
    DecompositionReport,
    Witness,
    canonical_witness,
    certify,
    decompose_m,
    is_witness,
    lemma1_transform,
    lemma2_shift,
    remark_edge,
    search_witnesses,
    theorem_combination,
)
from .padic import PAdicExpansion, PatternReport, expand, pattern_check, render_table

__version__ = "0.1.0"
