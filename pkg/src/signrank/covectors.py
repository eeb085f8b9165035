"""Sign vectors of rational subspaces.

For a subspace L given by a basis matrix B (columns spanning L), sign(L)
is enumerated exactly: candidate minimal-support vectors come from the
one-dimensional null spaces of (k-1)-row submatrices of B, and the full
set is their closure under sign-vector composition (u then v fills the
zeros of u with v). Every enumerated sign vector carries an exact integer
witness x with sign(Bx) equal to it; witnesses are built along the same
closure by combining integer vectors with exactly chosen step sizes, so
no feasibility solve is needed per vector.

Membership queries go the other way: member_witness reduces sign(Bx) = s
to an exact strict-feasibility system, independently of the enumeration.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from random import Random
from typing import Optional, Sequence

from .errors import DimensionError, InternalCheckError
from .rational import (
    RationalMatrix,
    RationalSubspace,
    _nullspace_columns,
    orth_complement,
    strict_feasibility,
)
from .signs import SignVector, SignVectorSet, set_perp

__all__ = [
    "SubspaceSignReport",
    "DualityCheck",
    "sign_vectors",
    "member_witness",
    "verify_duality",
    "same_sign_dim_check",
    "random_subspace",
]


@dataclass(frozen=True)
class SubspaceSignReport:
    """sign(L) together with one integer witness per sign vector.

    witnesses[s] is a coefficient vector x (in terms of the basis columns)
    with sign(basis . x) = s, scaled to primitive integers.
    """

    subspace: RationalSubspace
    signs: SignVectorSet
    witnesses: dict[SignVector, tuple[int, ...]]

    def __post_init__(self):
        if len(self.signs) % 2 != 1:
            raise InternalCheckError("sign set has even cardinality")
        if not self.signs.contains_zero():
            raise InternalCheckError("sign set misses the zero vector")
        if not self.signs.is_negation_closed():
            raise InternalCheckError("sign set is not closed under negation")
        if set(self.witnesses) != set(self.signs.vectors):
            raise InternalCheckError("witness map does not cover the sign set")

    def verify_witnesses(self) -> bool:
        """Recompute sign(B x) for every witness; exact, for tests."""
        basis = self.subspace.basis
        for sv, x in self.witnesses.items():
            image = basis.apply(x)
            if SignVector.from_signs((v > 0) - (v < 0) for v in image) != sv:
                return False
        return True


def _reduce_int_pair(coeff: list[int], image: list[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    g = 0
    for v in coeff:
        g = gcd(g, abs(v))
    for v in image:
        g = gcd(g, abs(v))
    if g > 1:
        coeff = [v // g for v in coeff]
        image = [v // g for v in image]
    return tuple(coeff), tuple(image)


def _integerize(coeff: Sequence[Fraction], image: Sequence[Fraction]):
    mult = 1
    for f in coeff:
        mult = mult * f.denominator // gcd(mult, f.denominator)
    for f in image:
        mult = mult * f.denominator // gcd(mult, f.denominator)
    return _reduce_int_pair([int(f * mult) for f in coeff], [int(f * mult) for f in image])


def _pack_signs(values: Sequence[int]) -> tuple[int, int]:
    pos = neg = 0
    for i, v in enumerate(values):
        if v > 0:
            pos |= 1 << i
        elif v < 0:
            neg |= 1 << i
    return pos, neg


def _cocircuit_candidates(basis: RationalMatrix) -> list[tuple[int, int, tuple, tuple]]:
    """Sign vectors of B z for z spanning null spaces of (k-1)-row submatrices.

    Covers every minimal-support nonzero sign vector of the column span;
    extra non-minimal hits are harmless for the closure.
    """
    n, k = basis.rows, basis.cols
    rows = basis.data
    found: dict[tuple[int, int], tuple[tuple, tuple]] = {}
    for subset in combinations(range(n), k - 1):
        sub = [rows[i] for i in subset]
        null_cols = _nullspace_columns(sub, k)
        if len(null_cols) != 1:
            continue  # dependent rows; the line is covered by a smaller independent subset
        z = null_cols[0]
        image = basis.apply(z)
        coeff, img = _integerize(z, image)
        key = _pack_signs(img)
        if key not in found:
            found[key] = (coeff, img)
            found[(key[1], key[0])] = (
                tuple(-v for v in coeff),
                tuple(-v for v in img),
            )
    return [(p, q, c, v) for (p, q), (c, v) in found.items()]


def _compose_witness(
    u_coeff: tuple, u_img: tuple, g_coeff: tuple, g_img: tuple
) -> tuple[tuple, tuple]:
    """Integer witness for the composition: u plus a small positive step of g.

    The step a/b is chosen so every nonzero coordinate of u keeps its sign
    while zeros of u take g's sign; the result is scaled back to integers.
    """
    step = None
    for ui, gi in zip(u_img, g_img):
        if ui and gi:
            bound = Fraction(abs(ui), 2 * abs(gi))
            if step is None or bound < step:
                step = bound
    if step is None:
        step = Fraction(1)
    a, b = step.numerator, step.denominator
    coeff = [b * u + a * g for u, g in zip(u_coeff, g_coeff)]
    image = [b * u + a * g for u, g in zip(u_img, g_img)]
    return _reduce_int_pair(coeff, image)


def sign_vectors(subspace: RationalSubspace) -> SubspaceSignReport:
    """The exact set {sign(v) : v in L}, each vector with an integer witness."""
    n = subspace.ambient_dim
    k = subspace.dim
    zero_key = (0, 0)
    zero_witness = (tuple(0 for _ in range(k)), tuple(0 for _ in range(n)))
    known: dict[tuple[int, int], tuple[tuple, tuple]] = {zero_key: zero_witness}
    if k > 0:
        generators = _cocircuit_candidates(subspace.basis)
        # deterministic order: canonical order of the packed sign vectors
        generators.sort(key=lambda g: SignVector(n, g[0], g[1]).sort_key())
        queue = deque()
        for p, q, coeff, img in generators:
            if (p, q) not in known:
                known[(p, q)] = (coeff, img)
                queue.append((p, q))
        gens = [(p, q, known[(p, q)]) for p, q, _, _ in generators]
        while queue:
            up, uq = queue.popleft()
            u_coeff, u_img = known[(up, uq)]
            usupp = up | uq
            for gp, gq, (g_coeff, g_img) in gens:
                wp = up | (gp & ~usupp)
                wq = uq | (gq & ~usupp)
                if (wp, wq) in known or (wp == up and wq == uq):
                    continue
                known[(wp, wq)] = _compose_witness(u_coeff, u_img, g_coeff, g_img)
                queue.append((wp, wq))

    witnesses = {}
    for (p, q), (coeff, img) in known.items():
        if _pack_signs(img) != (p, q):
            raise InternalCheckError("witness image does not match its sign vector")
        witnesses[SignVector(n, p, q)] = coeff
    return SubspaceSignReport(subspace, SignVectorSet(n, witnesses.keys()), witnesses)


def member_witness(
    subspace: RationalSubspace, s: SignVector
) -> Optional[tuple[Fraction, ...]]:
    """A rational x with sign(B x) = s, or None when s is not in sign(L)."""
    if s.n != subspace.ambient_dim:
        raise DimensionError(
            f"sign vector of length {s.n} against ambient dimension {subspace.ambient_dim}"
        )
    basis = subspace.basis
    equalities = []
    positives = []
    for i in range(subspace.ambient_dim):
        row = basis.row(i)
        sign = s[i]
        if sign == 0:
            equalities.append(row)
        elif sign > 0:
            positives.append(row)
        else:
            positives.append(tuple(-e for e in row))
    if subspace.dim == 0:
        return () if s.is_zero() else None
    x = strict_feasibility(equalities, positives)
    if x is None:
        return None
    image = basis.apply(x)
    if SignVector.from_signs((v > 0) - (v < 0) for v in image) != s:
        raise InternalCheckError("feasible point does not realize the requested signs")
    return x


@dataclass(frozen=True)
class DualityCheck:
    """Outcome of comparing sign(L^perp) with sign(L)^perp."""

    ok: bool
    complement_only: tuple[SignVector, ...]
    perp_only: tuple[SignVector, ...]

    def __bool__(self) -> bool:
        return self.ok


def verify_duality(subspace: RationalSubspace) -> DualityCheck:
    """Check sign(L^perp) = sign(L)^perp by computing both sides exactly.

    The identity always holds, so a failure points at the implementation;
    the discrepancy report says which side holds the extra vectors.
    """
    complement_signs = sign_vectors(orth_complement(subspace)).signs
    perp_signs = set_perp(sign_vectors(subspace).signs)
    return DualityCheck(
        ok=complement_signs == perp_signs,
        complement_only=complement_signs.difference(perp_signs),
        perp_only=perp_signs.difference(complement_signs),
    )


def same_sign_dim_check(first: RationalSubspace, second: RationalSubspace) -> bool:
    """Whether the two sign sets coincide; equal sign sets force equal dims."""
    if first.ambient_dim != second.ambient_dim:
        raise DimensionError("subspaces live in different ambient dimensions")
    equal = sign_vectors(first).signs == sign_vectors(second).signs
    if equal and first.dim != second.dim:
        raise InternalCheckError("equal sign sets with different dimensions")
    return equal


def random_subspace(n: int, k: int, rng: Random) -> RationalSubspace:
    """Seeded random k-dimensional rational subspace of Q^n.

    Basis entries are uniform over {-5..5}/{1,2,3}; rank-deficient draws
    are rejected, so the result always has dimension exactly k.
    """
    if not 0 <= k <= n:
        raise DimensionError(f"cannot take a {k}-dimensional subspace of Q^{n}")
    while True:
        cols = [
            [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(k)
        ]
        matrix = RationalMatrix.from_columns(cols, rows=n)
        try:
            return RationalSubspace(n, matrix)
        except DimensionError:
            continue
