"""Sign vectors, sign patterns, and the combinatorial calculus on them.

Signs are the ints -1, 0, +1. A SignVector stores two bit masks (positive
and negative support), which keeps orthogonality tests and the exponential
enumerations elsewhere in the package cheap. The canonical total order on
sign vectors is lexicographic under the entry encoding 0 -> 0, + -> 1,
- -> 2; `SignVector.sort_key` realizes it as a base-3 integer.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DimensionError, ParseError

PLUS = 1
ZERO = 0
MINUS = -1

_CHAR_FOR_SIGN = {1: "+", 0: "0", -1: "-"}
_SIGN_FOR_CHAR = {"+": 1, "0": 0, "-": -1}

__all__ = [
    "PLUS",
    "ZERO",
    "MINUS",
    "SignVector",
    "SignPattern",
    "SignVectorSet",
    "CondensationTrace",
    "sign_of",
    "sign_of_vector",
    "orthogonal",
    "set_perp",
    "all_sign_vectors",
    "condense",
    "condense_with_trace",
    "max_rank",
]


class SignVector:
    """An element of {+, 0, -}^n, stored as (positive, negative) bit masks."""

    __slots__ = ("n", "pos", "neg")

    def __init__(self, n: int, pos: int, neg: int):
        if pos & neg:
            raise ValueError("positive and negative supports overlap")
        if n < 0 or (pos | neg) >> n:
            raise ValueError("support mask out of range")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "pos", pos)
        object.__setattr__(self, "neg", neg)

    def __setattr__(self, name, value):
        raise AttributeError("SignVector is immutable")

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> "SignVector":
        pos = neg = 0
        n = 0
        for s in signs:
            if s > 0:
                pos |= 1 << n
            elif s < 0:
                neg |= 1 << n
            n += 1
        return cls(n, pos, neg)

    @classmethod
    def from_string(cls, text: str) -> "SignVector":
        try:
            return cls.from_signs(_SIGN_FOR_CHAR[ch] for ch in text)
        except KeyError as exc:
            raise ParseError(f"invalid sign character {exc.args[0]!r}") from None

    @classmethod
    def zero(cls, n: int) -> "SignVector":
        return cls(n, 0, 0)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        bit = 1 << i
        if self.pos & bit:
            return 1
        if self.neg & bit:
            return -1
        return 0

    def __iter__(self) -> Iterator[int]:
        return (self[i] for i in range(self.n))

    def signs(self) -> tuple[int, ...]:
        return tuple(self)

    def __neg__(self) -> "SignVector":
        return SignVector(self.n, self.neg, self.pos)

    def is_zero(self) -> bool:
        return not (self.pos | self.neg)

    def support_size(self) -> int:
        return (self.pos | self.neg).bit_count()

    def support(self) -> tuple[int, ...]:
        mask = self.pos | self.neg
        return tuple(i for i in range(self.n) if mask >> i & 1)

    def sort_key(self) -> int:
        key = 0
        pos, neg = self.pos, self.neg
        for i in range(self.n):
            key = 3 * key + (1 if pos >> i & 1 else 2 if neg >> i & 1 else 0)
        return key

    def orthogonal(self, other: "SignVector") -> bool:
        return orthogonal(self, other)

    def to_string(self) -> str:
        return "".join(_CHAR_FOR_SIGN[s] for s in self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignVector)
            and self.n == other.n
            and self.pos == other.pos
            and self.neg == other.neg
        )

    def __hash__(self) -> int:
        return hash((self.n, self.pos, self.neg))

    def __repr__(self) -> str:
        return f"SignVector({self.to_string()!r})"


def sign_of_vector(values: Sequence) -> SignVector:
    """Entrywise sign of a real (rational) vector."""
    return SignVector.from_signs((v > 0) - (v < 0) for v in values)


def sign_of(matrix) -> "SignPattern":
    """Entrywise sign pattern of a rational matrix."""
    return SignPattern.from_rows(
        [sign_of_vector(matrix.row(i)) for i in range(matrix.rows)], cols=matrix.cols
    )


def orthogonal(c: SignVector, x: SignVector) -> bool:
    """Sign orthogonality: disjoint supports, or an agreeing and an opposing
    nonzero coordinate both exist."""
    if c.n != x.n:
        raise DimensionError(f"sign vectors of lengths {c.n} and {x.n}")
    agree = (c.pos & x.pos) | (c.neg & x.neg)
    oppose = (c.pos & x.neg) | (c.neg & x.pos)
    return bool(agree) == bool(oppose)


class SignPattern:
    """An m x n grid over {+, 0, -}, stored as a tuple of row SignVectors."""

    __slots__ = ("rows", "cols", "row_vectors")

    def __init__(self, row_vectors: Sequence[SignVector], cols: int | None = None):
        rows = tuple(row_vectors)
        if rows:
            width = rows[0].n
            if any(r.n != width for r in rows):
                raise DimensionError("pattern rows have unequal lengths")
            if cols is not None and cols != width:
                raise DimensionError(f"declared {cols} columns, rows have {width}")
        else:
            width = cols or 0
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "row_vectors", rows)

    def __setattr__(self, name, value):
        raise AttributeError("SignPattern is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[SignVector], cols: int | None = None) -> "SignPattern":
        return cls(rows, cols=cols)

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> "SignPattern":
        return cls([SignVector.from_string(r) for r in rows])

    @classmethod
    def from_grid(cls, grid: Iterable[Iterable[int]]) -> "SignPattern":
        return cls([SignVector.from_signs(row) for row in grid])

    @classmethod
    def parse(cls, text: str) -> "SignPattern":
        """Parse the text format: one row per line, characters + - 0,
        optional whitespace between entries, # starts a comment."""
        rows = []
        width = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0]
            chars = []
            for colno, ch in enumerate(line, start=1):
                if ch.isspace():
                    continue
                if ch not in _SIGN_FOR_CHAR:
                    raise ParseError(f"invalid sign character {ch!r}", line=lineno, col=colno)
                chars.append(_SIGN_FOR_CHAR[ch])
            if not chars:
                continue
            if width is None:
                width = len(chars)
            elif len(chars) != width:
                raise ParseError(f"row has {len(chars)} entries, expected {width}", line=lineno)
            rows.append(SignVector.from_signs(chars))
        if not rows:
            raise ParseError("empty pattern")
        return cls(rows)

    def entry(self, i: int, j: int) -> int:
        return self.row_vectors[i][j]

    def row(self, i: int) -> SignVector:
        return self.row_vectors[i]

    def column(self, j: int) -> SignVector:
        bit = 1 << j
        pos = neg = 0
        for i, r in enumerate(self.row_vectors):
            if r.pos & bit:
                pos |= 1 << i
            elif r.neg & bit:
                neg |= 1 << i
        return SignVector(self.rows, pos, neg)

    def column_vectors(self) -> tuple[SignVector, ...]:
        return tuple(self.column(j) for j in range(self.cols))

    def transpose(self) -> "SignPattern":
        return SignPattern(self.column_vectors(), cols=self.rows)

    def grid(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r.signs() for r in self.row_vectors)

    def is_zero(self) -> bool:
        return all(r.is_zero() for r in self.row_vectors)

    def to_strings(self) -> list[str]:
        return [r.to_string() for r in self.row_vectors]

    def to_text(self) -> str:
        return "\n".join(self.to_strings()) + "\n"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignPattern)
            and self.cols == other.cols
            and self.row_vectors == other.row_vectors
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.row_vectors))

    def __repr__(self) -> str:
        return f"SignPattern({self.to_strings()!r})"


class SignVectorSet:
    """A deduplicated set of equal-length sign vectors in canonical order."""

    __slots__ = ("n", "vectors", "_lookup")

    def __init__(self, n: int, vectors: Iterable[SignVector] = ()):
        vecs = set(vectors)
        for v in vecs:
            if v.n != n:
                raise DimensionError(f"vector of length {v.n} in a length-{n} set")
        ordered = tuple(sorted(vecs, key=SignVector.sort_key))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "vectors", ordered)
        object.__setattr__(self, "_lookup", frozenset(vecs))

    def __setattr__(self, name, value):
        raise AttributeError("SignVectorSet is immutable")

    def __contains__(self, v: SignVector) -> bool:
        return v in self._lookup

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[SignVector]:
        return iter(self.vectors)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignVectorSet)
            and self.n == other.n
            and self._lookup == other._lookup
        )

    def __hash__(self) -> int:
        return hash((self.n, self._lookup))

    def to_strings(self) -> list[str]:
        return [v.to_string() for v in self.vectors]

    def is_negation_closed(self) -> bool:
        return all(-v in self._lookup for v in self.vectors)

    def contains_zero(self) -> bool:
        return SignVector.zero(self.n) in self._lookup

    def difference(self, other: "SignVectorSet") -> tuple[SignVector, ...]:
        return tuple(v for v in self.vectors if v not in other._lookup)

    def __repr__(self) -> str:
        return f"SignVectorSet(n={self.n}, size={len(self.vectors)})"


@lru_cache(maxsize=8)
def _all_mask_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """All (pos, neg) mask pairs of length n in canonical order."""
    pairs: list[tuple[int, int]] = [(0, 0)]
    for i in range(n):
        bit = 1 << i
        pairs = [
            (p | pb, q | qb) for (p, q) in pairs for (pb, qb) in ((0, 0), (bit, 0), (0, bit))
        ]
    return tuple(pairs)


def all_sign_vectors(n: int) -> Iterator[SignVector]:
    """All 3^n sign vectors of length n, in canonical order."""
    return (SignVector(n, p, q) for p, q in _all_mask_pairs(n))


def _dedup_mask_pairs(vectors: Iterable[SignVector]) -> list[tuple[int, int]]:
    """Nonzero members, one of each +/- pair, sorted by support size."""
    seen = set()
    for v in vectors:
        pn = (v.pos, v.neg)
        if v.is_zero() or pn in seen or (v.neg, v.pos) in seen:
            continue
        seen.add(pn)
    return sorted(seen, key=lambda pn: (pn[0] | pn[1]).bit_count())


def set_perp(vectors, n: int | None = None) -> SignVectorSet:
    """All sign vectors orthogonal to every member of the given set.

    Accepts a SignVectorSet (preferred) or any iterable of SignVector plus
    the ambient length n.
    """
    if isinstance(vectors, SignVectorSet):
        n = vectors.n
    elif n is None:
        vectors = list(vectors)
        if not vectors:
            raise DimensionError("ambient length needed for an empty vector collection")
        n = vectors[0].n
    xs = _dedup_mask_pairs(vectors)
    out = []
    for cp, cn in _all_mask_pairs(n):
        for xp, xn in xs:
            if bool((cp & xp) | (cn & xn)) != bool((cp & xn) | (cn & xp)):
                break
        else:
            out.append(SignVector(n, cp, cn))
    return SignVectorSet(n, out)


@dataclass(frozen=True)
class CondensationTrace:
    """Condensed pattern plus the line bookkeeping needed to undo it.

    row_map[i] is None when original row i was dropped as a zero row, else
    (condensed row index, sign) where sign is -1 when the row survives as
    the negation of its representative. col_map is the column analogue.
    """

    pattern: SignPattern
    row_map: tuple[Optional[tuple[int, int]], ...]
    col_map: tuple[Optional[tuple[int, int]], ...]


def _line_pass(grid: list[list[int]]) -> tuple[list[list[int]], list[Optional[tuple[int, int]]]]:
    """Drop zero rows and rows duplicating/negating an earlier kept row."""
    kept: list[list[int]] = []
    mapping: list[Optional[tuple[int, int]]] = []
    for row in grid:
        if not any(row):
            mapping.append(None)
            continue
        neg = [-e for e in row]
        for idx, existing in enumerate(kept):
            if existing == row:
                mapping.append((idx, 1))
                break
            if existing == neg:
                mapping.append((idx, -1))
                break
        else:
            mapping.append((len(kept), 1))
            kept.append(row)
    return kept, mapping


def _compose(outer: Sequence[Optional[tuple[int, int]]], inner: Optional[tuple[int, int]]):
    if inner is None:
        return None
    step = outer[inner[0]]
    if step is None:
        return None
    return (step[0], step[1] * inner[1])


def condense_with_trace(pattern: SignPattern) -> CondensationTrace:
    grid = [list(r.signs()) for r in pattern.row_vectors]
    row_map: list[Optional[tuple[int, int]]] = [(i, 1) for i in range(pattern.rows)]
    col_map: list[Optional[tuple[int, int]]] = [(j, 1) for j in range(pattern.cols)]
    while True:
        kept, mapping = _line_pass(grid)
        row_changed = len(kept) != len(grid)
        grid = kept
        row_map = [_compose(mapping, m) for m in row_map]
        if not grid:
            col_map = [None] * pattern.cols
            break

        cols = [list(col) for col in zip(*grid)]
        kept_cols, mapping = _line_pass(cols)
        col_changed = len(kept_cols) != len(cols)
        grid = [list(row) for row in zip(*kept_cols)]
        col_map = [_compose(mapping, m) for m in col_map]
        if not (row_changed or col_changed):
            break
    condensed = SignPattern.from_grid(grid) if grid else SignPattern([], cols=0)
    return CondensationTrace(condensed, tuple(row_map), tuple(col_map))


def condense(pattern: SignPattern) -> SignPattern:
    """Remove zero lines and duplicate/opposite lines, iterating row passes
    then column passes to a fixpoint; first occurrences are kept."""
    return condense_with_trace(pattern).pattern


def max_rank(pattern: SignPattern) -> int:
    """Term rank: maximum matching of rows to columns over nonzero entries."""
    size, _ = max_rank_matching(pattern)
    return size


def max_rank_matching(pattern: SignPattern) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Term rank along with one maximum matching as (row, col) pairs."""
    adjacency = [r.support() for r in pattern.row_vectors]
    match_of_col: list[int] = [-1] * pattern.cols

    def augment(r: int, seen: list[bool]) -> bool:
        for j in adjacency[r]:
            if not seen[j]:
                seen[j] = True
                if match_of_col[j] < 0 or augment(match_of_col[j], seen):
                    match_of_col[j] = r
                    return True
        return False

    size = 0
    for r in range(pattern.rows):
        if augment(r, [False] * pattern.cols):
            size += 1
    pairs = tuple(
        (match_of_col[j], j) for j in range(pattern.cols) if match_of_col[j] >= 0
    )
    return size, pairs
