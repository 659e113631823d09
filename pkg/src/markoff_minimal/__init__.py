"""Minimal triples of a^2 + b^2 + c^2 = 3abc + m.

Enumerates, counts and cross-checks minimal solution triples, their
solution trees, and the matching fundamental solutions of x^2 - 3axy + y^2.
"""

from .counting import count_1bc, decompose_m1, enumerate_1bc, exists_1bc
from .enumeration import MinimalSet, count_summary, enumerate_minimal_bruteforce
from .errors import DomainError, InvariantViolation, TripleError
from .forms import (
    FormContext,
    FundamentalSolution,
    check_count_identity,
    enumerate_minimal_via_forms,
    fundamental_solutions,
    fundamental_to_triple,
    triple_to_fundamental,
    wn_count,
)
from .kernel import factorize, isqrt_floor, legendre5, qr_solvable_mod4N, two_square_reps
from .survey import SurveyRecord, emit, scan, special_unique_phi_nonzero, verify_prop_9m4
from .tree import children, expand, locate, roots
from .triples import (
    MTriple,
    descend,
    is_minimal,
    make_triple,
    ord_of,
    order_components,
    root_of,
    sign_transform,
    vieta,
)

__version__ = "0.1.0"
