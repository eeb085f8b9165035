"""Minimum-rank decision procedures.

The entry point min_rank runs a decision ladder on the orientation with
the fewer columns d: zero pattern; condensation collapse (mr <= 1); the
rank-2 certificate; the L-matrix test (mr = d); the 2-dimensional type
search (mr <= d-2); and the leftover rung mr = d-1. The ladder is exact
whenever it closes the gap, which is guaranteed for d <= 5; for d >= 6 a
bracket [3, d-2] remains, refined by the term rank and by randomized
low-rank factorization witnesses.
"""

import time
from dataclasses import dataclass
from random import Random
from typing import Any, Optional

from .errors import BudgetExceededError, InternalCheckError
from .rank2 import Rank2Type, _iter_raw_types, _raw_to_type, _walk_covectors, mr_le_2, realize_rank2
from .rational import RationalMatrix
from .signs import SignPattern, SignVector, condense_with_trace, max_rank_matching, set_perp, sign_of

__all__ = [
    "Certificate",
    "MinRankBracket",
    "is_L_matrix",
    "mr_le_n_minus_2",
    "mr_eq_n_minus_1",
    "min_rank",
    "random_upper_bound",
]


@dataclass(frozen=True)
class Certificate:
    """Tagged, independently re-verifiable evidence for a bracket bound."""

    kind: str
    payload: Any


@dataclass(frozen=True)
class MinRankBracket:
    lower: int
    upper: int
    exact: bool
    transposed: bool
    certificates: tuple[Certificate, ...]

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper:
            raise InternalCheckError("bad bracket bounds")
        if self.exact != (self.lower == self.upper):
            raise InternalCheckError("exactness flag disagrees with the bounds")

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError("bracket is not exact")
        return self.lower


def is_L_matrix(pattern: SignPattern) -> tuple[bool, Optional[SignVector]]:
    """Whether every real matrix with these signs has full column rank.

    Equivalent formulation used here: no nonzero sign vector is orthogonal
    to every row. The falsifying witness, when one exists, is the
    canonically least nonzero vector orthogonal to all rows.
    """
    perp = set_perp(pattern.row_vectors, n=pattern.cols)
    for v in perp:
        if not v.is_zero():
            return False, v
    return True, None


def _rows_packed(pattern: SignPattern) -> list[tuple[int, int]]:
    return [(r.pos, r.neg) for r in pattern.row_vectors]


def _type_admits(rows: list[tuple[int, int]], covectors: list[tuple[int, int]]) -> bool:
    for wp, wq in covectors:
        for sp, sq in rows:
            if bool((sp & wp) | (sq & wq)) != bool((sp & wq) | (sq & wp)):
                return False
    return True


def mr_le_n_minus_2(
    pattern: SignPattern, budget_ms: int | None = None
) -> Optional[Rank2Type]:
    """A 2-dimensional type whose sign set is orthogonal to every row, iff
    the minimum rank is at most cols-2.

    Every row being orthogonal to the whole sign set of the type's plane M
    puts the rows inside sign(M^perp), a subspace of dimension cols-2;
    completeness over all real 2-dimensional planes holds because every
    such sign set is some type's sign set. Returns None after exhausting
    the finite type space (a definitive negative).
    """
    n = pattern.cols
    rows = _rows_packed(pattern)
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
    counter = 0
    for zero_mask, class_masks, neg_mask in _iter_raw_types(n, min_classes=2):
        counter += 1
        if deadline is not None and counter % 1024 == 0 and time.monotonic() > deadline:
            raise BudgetExceededError("type search ran out of budget")
        if _type_admits(rows, _walk_covectors(class_masks, neg_mask)):
            return _raw_to_type(n, zero_mask, class_masks, neg_mask)
    return None


def mr_eq_n_minus_1(pattern: SignPattern, budget_ms: int | None = None) -> bool:
    """Both characterizing conditions for minimum rank cols-1: some nonzero
    sign vector is orthogonal to every row, and no 2-dimensional type
    absorbs the rows."""
    full_rank, _ = is_L_matrix(pattern)
    if full_rank:
        return False
    return mr_le_n_minus_2(pattern, budget_ms=budget_ms) is None


def random_upper_bound(
    pattern: SignPattern, r: int, seed: int = 0, iterations: int = 2000
) -> Optional[RationalMatrix]:
    """Search random integer factorizations U (m x r) times V (r x n) on the
    {-3..3} lattice for a matrix with the pattern's signs; any hit is an
    exact rank <= r witness."""
    if r < 1:
        raise ValueError("rank bound must be at least 1")
    rng = Random(seed)
    m, n = pattern.rows, pattern.cols
    for _ in range(iterations):
        u = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(m)]
        v = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)]
        product = [
            [sum(u[i][k] * v[k][j] for k in range(r)) for j in range(n)] for i in range(m)
        ]
        candidate = RationalMatrix(product, cols=n)
        if sign_of(candidate) == pattern:
            return candidate
    return None


def _bracket(lower, upper, transposed, certs) -> MinRankBracket:
    return MinRankBracket(lower, upper, lower == upper, transposed, tuple(certs))


def min_rank(
    pattern: SignPattern, budget_ms: int | None = None, seed: int = 0
) -> MinRankBracket:
    """Exact minimum rank when the decision ladder closes (always for
    min(m, n) <= 5 and whenever an early rung fires), else a bracket."""
    transposed = pattern.cols > pattern.rows
    working = pattern.transpose() if transposed else pattern
    d = working.cols

    if working.is_zero():
        return _bracket(0, 0, transposed, [Certificate("zero", None)])
    trace = condense_with_trace(working)
    if trace.pattern.rows <= 1:
        return _bracket(1, 1, transposed, [Certificate("condensation", trace)])

    try:
        cert2 = mr_le_2(working, budget_ms=budget_ms)
    except BudgetExceededError:
        cap, matching = max_rank_matching(working)
        return _bracket(2, min(d, cap), transposed, [Certificate("matching", matching)])
    if cert2 is not None:
        realization = realize_rank2(working, cert2)
        return _bracket(
            2, 2, transposed,
            [Certificate("rank2", cert2), Certificate("realization", realization)],
        )

    full_rank, null_vector = is_L_matrix(working)
    if full_rank:
        return _bracket(d, d, transposed, [Certificate("L-matrix", None)])
    certs = [Certificate("null-vector", null_vector)]
    if d <= 3:
        # d = 3 with mr not in {0, 1, 2} is an L-matrix; getting here means a bug
        raise InternalCheckError("ladder fell through on a small pattern")
    if d == 4:
        return _bracket(3, 3, transposed, certs)

    try:
        plane_type = mr_le_n_minus_2(working, budget_ms=budget_ms)
    except BudgetExceededError:
        cap, matching = max_rank_matching(working)
        certs.append(Certificate("matching", matching))
        return _bracket(3, min(d - 1, cap), transposed, certs)
    if plane_type is None:
        return _bracket(d - 1, d - 1, transposed, certs)
    certs.append(Certificate("rank2-type", plane_type))
    if d == 5:
        return _bracket(3, 3, transposed, certs)

    upper = d - 2
    cap, matching = max_rank_matching(working)
    if cap < upper:
        upper = cap
        certs.append(Certificate("matching", matching))
    for r in range(3, upper):
        witness = random_upper_bound(working, r, seed=seed)
        if witness is not None:
            upper = r
            certs.append(Certificate("realization", witness))
            break
    return _bracket(3, upper, transposed, certs)
