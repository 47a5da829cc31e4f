"""Exact integer linear algebra.

Everything here works over the integers with Python's arbitrary precision
``int``; no floating point is involved anywhere.  Matrices act on column
vectors, so "image" always means the span of the columns and "kernel" means
``{x : M x = 0}``.

>>> M = IntMatrix([[1, 1, 0, 0], [-1, 2, 0, 0], [0, 0, 1, 1], [0, 0, -1, 2]])
>>> smith_diagonal(M)
(1, 1, 3, 3)
>>> print(cokernel_invariants(M))
Z/3 ⊕ Z/3
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from numbers import Integral
from typing import Iterable, Optional, Sequence

from .errors import InputError, PreconditionError

Vector = tuple[int, ...]


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, Integral):
        raise InputError(f"matrix entries must be integers, got {x!r}")
    return int(x)


class IntMatrix:
    """Immutable integer matrix stored row-major.

    ``rows`` and ``cols`` may be zero; a ``0 x n`` matrix still remembers
    ``n``, which matters for kernels and products.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], rows: Optional[int] = None,
                 cols: Optional[int] = None):
        data = tuple(tuple(_as_int(x) for x in row) for row in entries)
        nrows = len(data) if rows is None else rows
        if cols is None:
            if not data:
                raise InputError("column count required for a matrix with no rows")
            cols = len(data[0])
        if len(data) != nrows or any(len(r) != cols for r in data):
            raise InputError(f"ragged or mis-sized entries for a {nrows}x{cols} matrix")
        object.__setattr__(self, "rows", nrows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls(out, rows, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        """Matrix whose columns are the given vectors (each of length ``rows``)."""
        for c in columns:
            if len(c) != rows:
                raise InputError(f"column {tuple(c)} does not have length {rows}")
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([self.column(j) for j in range(self.cols)], self.cols, self.rows)

    T = property(transpose)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def diagonal_entries(self) -> Vector:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    # -- arithmetic -------------------------------------------------------

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                         self.rows, self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                         self.rows, self.cols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __mul__(self, k: int) -> "IntMatrix":
        k = _as_int(k)
        return IntMatrix([[k * a for a in r] for r in self.entries], self.rows, self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = [other.column(j) for j in range(other.cols)]
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in other_cols] for r in self.entries],
                         self.rows, other.cols)

    def apply(self, v: Sequence[int]) -> Vector:
        """Return ``M v`` for a column vector ``v``."""
        if len(v) != self.cols:
            raise InputError(f"vector of length {len(v)} does not match {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def __pow__(self, k: int) -> "IntMatrix":
        if not self.is_square() or k < 0:
            raise InputError("only non-negative powers of square matrices are defined")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # -- dunder plumbing --------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        if self.rows == 0:
            return f"IntMatrix([], rows=0, cols={self.cols})"
        return f"IntMatrix({self.to_lists()!r})"


def block_diagonal(*blocks: IntMatrix) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0:c0 + b.cols] = b.entries[i]
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(out, rows, cols)


def hstack(*blocks: IntMatrix) -> IntMatrix:
    if not blocks:
        raise InputError("hstack needs at least one block")
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise InputError("hstack blocks must share a row count")
    return IntMatrix([sum((b.entries[i] for b in blocks), ()) for i in range(rows)],
                     rows, sum(b.cols for b in blocks))


def determinant(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not M.is_square():
        raise InputError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.to_lists()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(M: IntMatrix) -> bool:
    return M.is_square() and abs(determinant(M)) == 1


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _combine_rows(rows: list[list[int]], i: int, k: int, x: int, y: int, u: int, v: int) -> None:
    """Replace rows i, k by (x*row_i + y*row_k, u*row_i + v*row_k)."""
    ri, rk = rows[i], rows[k]
    rows[i] = [x * a + y * b for a, b in zip(ri, rk)]
    rows[k] = [u * a + v * b for a, b in zip(ri, rk)]


def hermite_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``.  ``H`` is in
    row echelon form, every pivot is positive and the entries above a pivot
    ``p`` lie in ``[0, p)``.  Zero rows are collected at the bottom.
    """
    m, n = M.shape
    H = M.to_lists()
    U = IntMatrix.identity(m).to_lists()
    r = 0
    for j in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][j]
            if b == 0:
                continue
            a = H[r][j]
            g, x, y = xgcd(a, b)
            coeffs = (x, y, -b // g, a // g)
            _combine_rows(H, r, i, *coeffs)
            _combine_rows(U, r, i, *coeffs)
        p = H[r][j]
        if p == 0:
            continue
        if p < 0:
            H[r] = [-t for t in H[r]]
            U[r] = [-t for t in U[r]]
            p = -p
        for i in range(r):
            q = H[i][j] // p
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return IntMatrix(H, m, n), IntMatrix(U, m, m)


def hnf_rank(H: IntMatrix) -> int:
    """Number of nonzero rows of a matrix already in Hermite normal form."""
    return sum(1 for r in H.entries if any(r))


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(D, U, V)`` with ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with non-negative
    entries ``d_1 | d_2 | ...``, zeros last.  At every step the pivot is the
    nonzero entry of smallest absolute value in the remaining block, taking
    the first one in row-major order on ties, so the output is reproducible.
    """
    m, n = M.shape
    A = M.to_lists()
    U = IntMatrix.identity(m).to_lists()
    V = IntMatrix.identity(n).to_lists()

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def smallest(cells):
        best = None
        for i, j in cells:
            v = A[i][j]
            if v and (best is None or abs(v) < abs(A[best[0]][best[1]])):
                best = (i, j)
        return best

    for t in range(min(m, n)):
        piv = smallest((i, j) for i in range(t, m) for j in range(t, n))
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            line = [(i, t) for i in range(t + 1, m)] + [(t, j) for j in range(t + 1, n)]
            rest = smallest(line)
            if rest is not None:
                # a remainder survived and is smaller than the pivot
                swap_rows(t, rest[0])
                swap_cols(t, rest[1])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return IntMatrix(A, m, n), IntMatrix(U, m, m), IntMatrix(V, n, n)


# solve() is called repeatedly with the same matrix; IntMatrix is immutable.
_cached_snf = lru_cache(maxsize=512)(smith_normal_form)


def smith_diagonal(M: IntMatrix) -> Vector:
    return smith_normal_form(M)[0].diagonal_entries()


# ---------------------------------------------------------------------------
# Abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroupInvariants:
    """A finitely generated abelian group ``Z^free_rank + Z/t_1 + ... + Z/t_k``
    with ``t_1 | t_2 | ... | t_k`` and every ``t_i >= 2``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free_rank < 0:
            raise InputError("free rank must be non-negative")
        if any(t < 2 for t in self.torsion):
            raise InputError(f"invariant factors must be >= 2, got {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise InputError(f"invariant factors {self.torsion} do not form a divisibility chain")

    @classmethod
    def from_diagonal(cls, diag: Iterable[int]) -> "AbelianGroupInvariants":
        """Group ``⊕ Z/d_i`` for arbitrary non-negative ``d_i`` (``0`` meaning ``Z``)."""
        diag = [abs(int(d)) for d in diag]
        free = sum(1 for d in diag if d == 0)
        finite = [d for d in diag if d > 1]
        snf = smith_diagonal(IntMatrix.diagonal(finite)) if finite else ()
        return cls(free, tuple(d for d in snf if d > 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        """Group order, or ``None`` for an infinite group."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    @property
    def exponent(self) -> Optional[int]:
        if self.free_rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def is_elementary(self, d: int) -> bool:
        """True for ``(Z/d)^k`` with ``k >= 0``."""
        return self.free_rank == 0 and all(t == d for t in self.torsion)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "AbelianGroupInvariants":
        try:
            return cls(int(data["free_rank"]), tuple(decode_int(x) for x in data["invariant_factors"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed group JSON: {exc}") from exc

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"


TRIVIAL_GROUP = AbelianGroupInvariants()


# ---------------------------------------------------------------------------
# Kernels, images, solving, quotients
# ---------------------------------------------------------------------------

def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of ``{x in Z^n : M x = 0}``.

    The basis comes from unimodular row operations, so it spans a direct
    summand of ``Z^n``; it is returned in Hermite normal form (as rows,
    transposed) to make it canonical.
    """
    n = M.cols
    H, U = hermite_normal_form(M.T)
    r = hnf_rank(H)
    if r == n:
        return IntMatrix.zeros(n, 0)
    K = IntMatrix([U.row(i) for i in range(r, n)], n - r, n)
    K, _ = hermite_normal_form(K)
    return K.T


def image_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of the column span of ``M`` (Hermite-reduced)."""
    H, _ = hermite_normal_form(M.T)
    r = hnf_rank(H)
    return IntMatrix(H.entries[:r], r, M.rows).T


def rank(M: IntMatrix) -> int:
    return hnf_rank(hermite_normal_form(M)[0])


def solve(M: IntMatrix, b: Sequence[int]) -> Optional[Vector]:
    """Some integer ``x`` with ``M x == b``, or ``None`` if none exists."""
    if len(b) != M.rows:
        raise InputError(f"right-hand side has length {len(b)}, expected {M.rows}")
    b = tuple(_as_int(t) for t in b)
    D, U, V = _cached_snf(M)
    c = U.apply(b)
    y = [0] * M.cols
    for i, ci in enumerate(c):
        d = D[i, i] if i < min(D.rows, D.cols) else 0
        if d == 0:
            if ci:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    x = V.apply(y)
    if M.apply(x) != b:  # pragma: no cover - guards the algebra above
        raise ArithmeticError("solve produced an invalid solution")
    return x


def cokernel_invariants(M: IntMatrix) -> AbelianGroupInvariants:
    """Invariants of ``Z^rows / column span(M)``."""
    diag = smith_diagonal(M)
    nonzero = [d for d in diag if d]
    return AbelianGroupInvariants(M.rows - len(nonzero), tuple(d for d in nonzero if d > 1))


def subquotient_invariants(A: IntMatrix, B: IntMatrix) -> AbelianGroupInvariants:
    """Invariants of ``span(A) / span(B)``.

    The columns of ``A`` must be linearly independent and every column of
    ``B`` must lie in their integer span.
    """
    if A.rows != B.rows:
        raise InputError(f"A has {A.rows} rows but B has {B.rows}")
    if rank(A) != A.cols:
        raise PreconditionError("columns of A are not linearly independent")
    coords = []
    for col in B.columns():
        x = solve(A, col)
        if x is None:
            raise PreconditionError(f"not a subgroup: {col} is outside span(A)")
        coords.append(x)
    return cokernel_invariants(IntMatrix.from_columns(coords, A.cols))


def in_span(M: IntMatrix, v: Sequence[int]) -> bool:
    return solve(M, v) is not None


def reduce_modulo(v: Sequence[int], basis_rows: IntMatrix) -> Vector:
    """Reduce ``v`` modulo the lattice spanned by the rows of a matrix in
    Hermite normal form: each pivot coordinate ends up in ``[0, pivot)``."""
    out = list(v)
    for row in basis_rows.entries:
        j = next((k for k, a in enumerate(row) if a), None)
        if j is None:
            continue
        q = out[j] // row[j]
        if q:
            out = [a - q * b for a, b in zip(out, row)]
    return tuple(out)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

_SAFE = 2 ** 53


def encode_int(x: int):
    """JSON-safe integer: a number below 2^53 in absolute value, else a string."""
    return x if abs(x) < _SAFE else str(x)


def decode_int(x) -> int:
    if isinstance(x, bool):
        raise InputError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            raise InputError(f"expected a decimal integer string, got {x!r}") from None
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise InputError(f"expected an integer, got {x!r}")


def encode_vector(v: Sequence[int]) -> list:
    return [encode_int(x) for x in v]


def decode_vector(data) -> Vector:
    if not isinstance(data, list):
        raise InputError(f"expected a list of integers, got {data!r}")
    return tuple(decode_int(x) for x in data)


def matrix_to_json(M: IntMatrix) -> dict:
    return {"rows": M.rows, "cols": M.cols,
            "entries": [encode_vector(r) for r in M.entries]}


def matrix_from_json(data) -> IntMatrix:
    """Accepts ``{"rows", "cols", "entries"}`` or a bare list of rows."""
    if isinstance(data, list):
        return IntMatrix([decode_vector(r) for r in data])
    if not isinstance(data, dict) or "entries" not in data:
        raise InputError("matrix JSON needs an 'entries' field")
    entries = data["entries"]
    if not isinstance(entries, list):
        raise InputError("'entries' must be a list of rows")
    rows = data.get("rows", len(entries))
    cols = data.get("cols")
    if cols is None and not entries:
        raise InputError("'cols' is required for a matrix with no rows")
    return IntMatrix([decode_vector(r) for r in entries], rows, cols)
