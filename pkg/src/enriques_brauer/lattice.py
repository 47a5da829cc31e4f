"""Integral lattices, their standard building blocks, and mod-2 reduction.

A :class:`Lattice` is a Gram matrix in a fixed basis.  Direct sums keep
track of where each summand lives through :attr:`Lattice.blocks`, which the
K3-type constructions rely on to locate the ``U`` and ``δ`` coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InputError, PreconditionError
from .exact_linalg import IntMatrix, block_diagonal, matrix_from_json, matrix_to_json

LatticeVector = tuple[int, ...]
Bits = tuple[int, ...]


@dataclass(frozen=True)
class Block:
    label: str
    start: int
    stop: int

    @property
    def indices(self) -> range:
        return range(self.start, self.stop)


@dataclass(frozen=True)
class Lattice:
    gram: IntMatrix
    label: Optional[str] = None
    blocks: tuple[Block, ...] = field(default=(), compare=False)

    def __post_init__(self):
        g = self.gram
        if not g.is_square():
            raise InputError(f"Gram matrix must be square, got shape {g.shape}")
        if g != g.T:
            raise InputError("Gram matrix is not symmetric")
        if not self.blocks:
            object.__setattr__(self, "blocks", (Block(self.label or "L", 0, g.rows),))

    @property
    def rank(self) -> int:
        return self.gram.rows

    @property
    def is_even(self) -> bool:
        return all(x % 2 == 0 for x in self.gram.diagonal_entries())

    def block(self, label: str) -> Block:
        """The unique summand with the given label."""
        found = [b for b in self.blocks if b.label == label]
        if len(found) != 1:
            raise KeyError(f"{len(found)} blocks labelled {label!r}")
        return found[0]

    def _check(self, v: Sequence[int]) -> None:
        if len(v) != self.rank:
            raise InputError(f"vector of length {len(v)} in a rank {self.rank} lattice")

    def bilinear(self, v: Sequence[int], w: Sequence[int]) -> int:
        self._check(v)
        self._check(w)
        return sum(a * b for a, b in zip(v, self.gram.apply(w)))

    def q(self, v: Sequence[int]) -> int:
        return self.bilinear(v, v)

    def to_json(self) -> dict:
        return {"label": self.label, "gram": matrix_to_json(self.gram)}

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        if "gram" not in data:
            raise InputError("lattice JSON needs a 'gram' field")
        return cls(matrix_from_json(data["gram"]), data.get("label"))


def hyperbolic_U() -> Lattice:
    return Lattice(IntMatrix([[0, 1], [1, 0]]), "U")


# Cartan matrix of E8, simple roots numbered along the long arm with the
# branch node (index 7) attached to node 4.
_E8_CARTAN = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, 0),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, -1),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, 0, 0, -1, 0, 0, 2),
)


def e8_minus() -> Lattice:
    """``E8(-1)``: the negated E8 Cartan matrix in the simple-root basis."""
    return Lattice(-IntMatrix(_E8_CARTAN), "E8(-1)")


def rank_one(k: int, label: Optional[str] = None) -> Lattice:
    return Lattice(IntMatrix([[k]]), label or f"<{k}>")


def direct_sum(*lattices: Lattice, label: Optional[str] = None) -> Lattice:
    blocks, start = [], 0
    for L in lattices:
        for b in L.blocks:
            blocks.append(Block(b.label, start + b.start, start + b.stop))
        start += L.rank
    gram = block_diagonal(*(L.gram for L in lattices)) if lattices else IntMatrix.zeros(0, 0)
    name = label or " ⊕ ".join(L.label or "?" for L in lattices)
    return Lattice(gram, name, tuple(blocks))


def relabel(L: Lattice, label: str) -> Lattice:
    """Same lattice viewed as a single summand called ``label``."""
    return Lattice(L.gram, label, (Block(label, 0, L.rank),))


def lattice_F() -> Lattice:
    """``F = E8(-1) ⊕ U``, rank 10."""
    return direct_sum(e8_minus(), hyperbolic_U(), label="F")


# ---------------------------------------------------------------------------
# F2 linear algebra on bit tuples
# ---------------------------------------------------------------------------

def f2_row_reduce(vectors: Sequence[Sequence[int]], dim: int) -> list[Bits]:
    """Reduced row echelon basis of the F2-span of ``vectors``."""
    rows = [[x & 1 for x in v] for v in vectors]
    basis: list[list[int]] = []
    pivots: list[int] = []
    for v in rows:
        for b, p in zip(basis, pivots):
            if v[p]:
                v = [x ^ y for x, y in zip(v, b)]
        p = next((j for j in range(dim) if v[j]), None)
        if p is None:
            continue
        for k, (b, q) in enumerate(zip(basis, pivots)):
            if b[p]:
                basis[k] = [x ^ y for x, y in zip(b, v)]
        basis.append(v)
        pivots.append(p)
    order = sorted(range(len(basis)), key=lambda k: pivots[k])
    return [tuple(basis[k]) for k in order]


def f2_in_span(v: Sequence[int], basis: Sequence[Bits]) -> bool:
    dim = len(v)
    return len(f2_row_reduce(list(basis) + [tuple(v)], dim)) == len(f2_row_reduce(basis, dim))


def f2_nullspace(matrix: Sequence[Sequence[int]], dim: int) -> list[Bits]:
    """Basis of ``{x in F2^dim : matrix x = 0}``."""
    red = f2_row_reduce(matrix, dim)
    pivots = [next(j for j in range(dim) if r[j]) for r in red]
    free = [j for j in range(dim) if j not in pivots]
    out = []
    for f in free:
        x = [0] * dim
        x[f] = 1
        for r, p in zip(red, pivots):
            x[p] = r[f]
        out.append(tuple(x))
    return out


# ---------------------------------------------------------------------------
# Mod-2 reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class F2QuadSpace:
    """``L / 2L`` with the quadratic refinement ``q̃ = q/2 mod 2``.

    Only the values of ``q̃`` on basis vectors and the bilinear form mod 2
    are stored; other values follow from the refinement law.
    """

    bilinear: tuple[Bits, ...]
    qtilde_basis: Bits

    @property
    def dim(self) -> int:
        return len(self.qtilde_basis)

    def _bits(self, v: Sequence[int]) -> Bits:
        if len(v) != self.dim:
            raise InputError(f"vector of length {len(v)} in an F2 space of dimension {self.dim}")
        return tuple(x & 1 for x in v)

    def b(self, v: Sequence[int], w: Sequence[int]) -> int:
        v, w = self._bits(v), self._bits(w)
        return sum(v[i] & self.bilinear[i][j] & w[j]
                   for i in range(self.dim) for j in range(self.dim)) & 1

    def qtilde(self, v: Sequence[int]) -> int:
        v = self._bits(v)
        support = [i for i, x in enumerate(v) if x]
        total = sum(self.qtilde_basis[i] for i in support)
        total += sum(self.bilinear[i][j] for a, i in enumerate(support) for j in support[a + 1:])
        return total & 1

    def radical(self) -> list[Bits]:
        """Basis of the radical of the bilinear form."""
        return f2_nullspace(self.bilinear, self.dim)

    def quadratic_kernel(self) -> list[Bits]:
        """All elements of the radical on which ``q̃`` vanishes."""
        rad = self.radical()
        out = []
        for mask in range(1 << len(rad)):
            v = [0] * self.dim
            for k, r in enumerate(rad):
                if mask >> k & 1:
                    v = [x ^ y for x, y in zip(v, r)]
            if self.qtilde(v) == 0:
                out.append(tuple(v))
        return sorted(out)


def mod2_reduce(L: Lattice) -> F2QuadSpace:
    if not L.is_even:
        raise PreconditionError("quadratic refinement undefined: lattice is not even")
    g = L.gram
    bil = tuple(tuple(g[i, j] & 1 for j in range(L.rank)) for i in range(L.rank))
    qb = tuple((g[i, i] // 2) & 1 for i in range(L.rank))
    return F2QuadSpace(bil, qb)


def qtilde(S: F2QuadSpace, v: Sequence[int]) -> int:
    return S.qtilde(v)
