"""Exact rational linear algebra on dense Fraction matrices.

Everything is immutable and pure: operations return new objects and never
round. Matrices are dense on purpose; dimensions in this package stay at
desk scale (well under ~20 in each direction).
"""

from fractions import Fraction
from itertools import chain
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DimensionError, ParseError, SingularBlockError

Rational = Fraction

__all__ = [
    "Rational",
    "RationalMatrix",
    "RationalSubspace",
    "parse_rational",
    "format_rational",
    "rref",
    "rank",
    "nullspace_basis",
    "orth_complement",
    "schur_complement",
    "strict_feasibility",
]


def parse_rational(token: str) -> Fraction:
    """Parse an optionally signed integer or `p/q` fraction; rejects q = 0."""
    text = token.strip()
    num, slash, den = text.partition("/")
    try:
        if slash:
            n, d = int(num), int(den)
            if d == 0:
                raise ParseError(f"zero denominator in {token!r}")
            return Fraction(n, d)
        return Fraction(int(num))
    except ValueError:
        raise ParseError(f"invalid rational literal {token!r}") from None


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class RationalMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        grid = tuple(tuple(Fraction(e) for e in row) for row in data)
        if grid:
            width = len(grid[0])
            if any(len(row) != width for row in grid):
                raise DimensionError("ragged rows in matrix literal")
            if cols is not None and cols != width:
                raise DimensionError(f"declared {cols} columns, rows have {width}")
        else:
            width = cols or 0
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "data", grid)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        zero = Fraction(0)
        return cls([[zero] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "RationalMatrix":
        cols = [tuple(Fraction(e) for e in c) for c in columns]
        if cols:
            height = len(cols[0])
            if any(len(c) != height for c in cols):
                raise DimensionError("ragged columns")
        else:
            height = rows or 0
        return cls([[c[i] for c in cols] for i in range(height)], cols=len(cols))

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self) -> Iterator[tuple]:
        return (self.column(j) for j in range(self.cols))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def mul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        tdata = other.data
        out = []
        for row in self.data:
            out.append(
                [
                    sum((row[k] * tdata[k][j] for k in range(self.cols)), Fraction(0))
                    for j in range(other.cols)
                ]
            )
        return RationalMatrix(out, cols=other.cols)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self.mul(other)

    def apply(self, vector: Sequence) -> tuple:
        """Matrix-vector product, returned as a tuple of Fractions."""
        if len(vector) != self.cols:
            raise DimensionError(f"vector of length {len(vector)} against {self.shape}")
        vec = [Fraction(e) for e in vector]
        return tuple(
            sum((row[k] * vec[k] for k in range(self.cols)), Fraction(0)) for row in self.data
        )

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(
            [[self.data[i][j] for j in col_indices] for i in row_indices],
            cols=len(col_indices),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.data for e in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.shape, self.data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(e) for e in row) for row in self.data)
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"

    @classmethod
    def parse(cls, text: str) -> "RationalMatrix":
        """Parse the row-per-line whitespace-separated text format."""
        rows = []
        width = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0]
            tokens = line.split()
            if not tokens:
                continue
            entries = []
            for colno, tok in enumerate(tokens, start=1):
                try:
                    entries.append(parse_rational(tok))
                except ParseError as exc:
                    raise ParseError(str(exc), line=lineno, col=colno) from None
            if width is None:
                width = len(entries)
            elif len(entries) != width:
                raise ParseError(
                    f"row has {len(entries)} entries, expected {width}", line=lineno
                )
            rows.append(entries)
        if not rows:
            raise ParseError("empty matrix")
        return cls(rows)

    def to_text(self) -> str:
        return "\n".join(" ".join(format_rational(e) for e in row) for row in self.data) + "\n"


def _rref_grid(grid: list[list[Fraction]]) -> tuple[int, ...]:
    """In-place reduced row echelon form; returns the pivot columns."""
    nrows = len(grid)
    ncols = len(grid[0]) if grid else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if grid[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        grid[r], grid[pivot_row] = grid[pivot_row], grid[r]
        pv = grid[r][c]
        if pv != 1:
            grid[r] = [e / pv for e in grid[r]]
        lead = grid[r]
        for i in range(nrows):
            f = grid[i][c]
            if i != r and f:
                grid[i] = [a - f * b for a, b in zip(grid[i], lead)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(pivots)


def rref(matrix: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Unique reduced row echelon form and its pivot columns."""
    grid = [list(row) for row in matrix.data]
    pivots = _rref_grid(grid)
    return RationalMatrix(grid, cols=matrix.cols), pivots


def rank(matrix: RationalMatrix) -> int:
    grid = [list(row) for row in matrix.data]
    return len(_rref_grid(grid))


def _nullspace_columns(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[tuple]:
    """Basis columns of {x : Rx = 0} for the given constraint rows."""
    grid = [list(r) for r in rows]
    pivots = _rref_grid(grid) if grid else ()
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -grid[r][f]
        basis.append(tuple(vec))
    return basis


class RationalSubspace:
    """A subspace of Q^n given by a full-column-rank rational basis matrix."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: RationalMatrix):
        if basis.rows != ambient_dim:
            raise DimensionError(f"basis has {basis.rows} rows, ambient dimension is {ambient_dim}")
        if rank(basis) != basis.cols:
            raise DimensionError("basis columns are linearly dependent")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("RationalSubspace is immutable")

    @classmethod
    def from_spanning(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "RationalSubspace":
        """Span of possibly dependent vectors, reduced to a basis."""
        rows = [tuple(Fraction(e) for e in v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionError("spanning vector length does not match ambient dimension")
        grid = [list(v) for v in rows]
        pivots = _rref_grid(grid) if grid else ()
        independent = [tuple(grid[i]) for i in range(len(pivots))]
        return cls(ambient_dim, RationalMatrix.from_columns(independent, rows=ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "RationalSubspace":
        return cls(ambient_dim, RationalMatrix.zeros(ambient_dim, 0))

    @classmethod
    def full(cls, ambient_dim: int) -> "RationalSubspace":
        return cls(ambient_dim, RationalMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def canonical_basis(self) -> RationalMatrix:
        """Reduced column echelon basis; equal subspaces give equal matrices."""
        reduced, _ = rref(self.basis.transpose())
        cols = [reduced.row(i) for i in range(self.dim)]
        return RationalMatrix.from_columns(cols, rows=self.ambient_dim)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalSubspace)
            and self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and self.canonical_basis() == other.canonical_basis()
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.canonical_basis()))

    def __repr__(self) -> str:
        return f"RationalSubspace(dim {self.dim} of Q^{self.ambient_dim})"


def nullspace_basis(matrix: RationalMatrix) -> RationalSubspace:
    """The solution space {x : Mx = 0} as a subspace of Q^cols."""
    cols = _nullspace_columns(matrix.data, matrix.cols)
    return RationalSubspace(matrix.cols, RationalMatrix.from_columns(cols, rows=matrix.cols))


def orth_complement(subspace: RationalSubspace) -> RationalSubspace:
    """Orthogonal complement, again with a rational basis."""
    return nullspace_basis(subspace.basis.transpose())


def schur_complement(matrix: RationalMatrix, block: int) -> RationalMatrix:
    """E - B D^{-1} C for the partition [[D, C], [B, E]] with D the leading block x block."""
    if block > min(matrix.rows, matrix.cols):
        raise DimensionError(f"leading block {block} exceeds matrix shape {matrix.shape}")
    n = block
    d_grid = [list(matrix.data[i][:n]) for i in range(n)]
    # invert D by eliminating against an identity payload
    aug = [d_grid[i] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivots = _rref_grid(aug)
    if len(pivots) != n or pivots != tuple(range(n)):
        raise SingularBlockError("leading block is singular")
    d_inv = [row[n:] for row in aug]
    c_block = [matrix.data[i][n:] for i in range(n)]
    b_block = [matrix.data[i][:n] for i in range(n, matrix.rows)]
    e_block = [matrix.data[i][n:] for i in range(n, matrix.rows)]
    p = matrix.rows - n
    q = matrix.cols - n
    # B D^{-1}
    bdi = [
        [sum((b_block[i][k] * d_inv[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(p)
    ]
    out = [
        [
            e_block[i][j]
            - sum((bdi[i][k] * c_block[k][j] for k in range(n)), Fraction(0))
            for j in range(q)
        ]
        for i in range(p)
    ]
    return RationalMatrix(out, cols=q)


def _normalize_row(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[tuple, Fraction]:
    """Scale an inequality a.y >= b by a positive rational to primitive integers."""
    denoms = [e.denominator for e in coeffs] + [rhs.denominator]
    mult = 1
    for d in denoms:
        mult = mult * d // gcd(mult, d)
    ints = [int(e * mult) for e in coeffs]
    r = rhs * mult
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    g = gcd(g, abs(r.numerator))
    if g > 1:
        ints = [v // g for v in ints]
        r = r / g
    return tuple(Fraction(v) for v in ints), r


def strict_feasibility(
    equalities: Sequence[Sequence], positives: Sequence[Sequence]
) -> Optional[tuple[Fraction, ...]]:
    """Exact homogeneous strict feasibility.

    Finds a rational x with a.x = 0 for every equality row and a.x >= 1 for
    every positive row, or returns None when no such x exists. ("> 0" and
    ">= 1" are interchangeable by homogeneous scaling.) Equalities are
    eliminated by substitution through their null space; the remaining
    inequality system is decided by Fourier-Motzkin elimination and a witness
    is rebuilt by back-substitution, picking the midpoint of each bounded
    interval.
    """
    eq = [tuple(Fraction(e) for e in row) for row in equalities]
    pos = [tuple(Fraction(e) for e in row) for row in positives]
    lengths = {len(r) for r in chain(eq, pos)}
    if len(lengths) > 1:
        raise DimensionError("constraint rows have unequal lengths")
    dim = lengths.pop() if lengths else 0
    if not pos:
        return tuple(Fraction(0) for _ in range(dim))

    null_cols = _nullspace_columns(eq, dim) if eq else [
        tuple(Fraction(int(i == j)) for i in range(dim)) for j in range(dim)
    ]
    free = len(null_cols)
    reduced = []
    one = Fraction(1)
    for row in pos:
        coeffs = tuple(
            sum((row[i] * col[i] for i in range(dim)), Fraction(0)) for col in null_cols
        )
        if not any(coeffs):
            return None  # the row is forced to 0 on the feasible set
        reduced.append(_normalize_row(coeffs, one))

    stages = [reduced]
    system = reduced
    for var in range(free):
        zero_rows: dict[tuple, Fraction] = {}
        lowers = []
        uppers = []
        for coeffs, rhs in system:
            c = coeffs[var]
            if c > 0:
                lowers.append((coeffs, rhs))
            elif c < 0:
                uppers.append((coeffs, rhs))
            else:
                key = coeffs
                if key not in zero_rows or rhs > zero_rows[key]:
                    zero_rows[key] = rhs
        merged: dict[tuple, Fraction] = dict(zero_rows)
        for lc, lr in lowers:
            for uc, ur in uppers:
                scale_l = -uc[var]
                scale_u = lc[var]
                coeffs = tuple(scale_l * a + scale_u * b for a, b in zip(lc, uc))
                rhs = scale_l * lr + scale_u * ur
                coeffs, rhs = _normalize_row(coeffs, rhs)
                if not any(coeffs):
                    if rhs > 0:
                        return None
                    continue
                if coeffs not in merged or rhs > merged[coeffs]:
                    merged[coeffs] = rhs
        system = [(c, r) for c, r in merged.items()]
        stages.append(system)

    for coeffs, rhs in stages[-1]:
        if rhs > 0:
            return None

    y = [Fraction(0)] * free
    for var in range(free - 1, -1, -1):
        lo = None
        hi = None
        for coeffs, rhs in stages[var]:
            c = coeffs[var]
            if c == 0:
                continue
            rest = sum(
                (coeffs[j] * y[j] for j in range(var + 1, free)), Fraction(0)
            )
            bound = (rhs - rest) / c
            if c > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None and hi is not None:
            y[var] = (lo + hi) / 2
        elif lo is not None:
            y[var] = lo + 1
        elif hi is not None:
            y[var] = hi - 1

    x = [Fraction(0)] * dim
    for j, col in enumerate(null_cols):
        if y[j]:
            for i in range(dim):
                x[i] += y[j] * col[i]
    return tuple(x)
