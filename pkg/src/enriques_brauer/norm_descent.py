"""Norms of line-bundle classes and the descent test for Brauer–Severi varieties.

Everything is done on first Chern classes, i.e. on vectors of a
:class:`~enriques_brauer.cyclic_gmodule.CyclicGModule`.  For a class ``c``
the ``k``-th partial norm is ``c + σc + ... + σ^(k-1)c``.  A class with zero
full norm gives a rank ``d`` bundle whose projectivization descends; the
descended variety is a projectivized bundle exactly when ``c`` lies in
``(1 - σ) H^2``.

Note that ``Ker N`` on classes can be larger than the kernel of the
push-forward (for ``d = 2`` by index 2, the canonical class of the
quotient).  :func:`brauer_pullback_kernel` therefore returns the
cohomological subquotient ``Ker N ∩ NS / (1 - σ) NS``; the refined
``d = 2`` test lives in :mod:`enriques_brauer.mod2_criterion`.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .cyclic_gmodule import CyclicGModule, invariants_sublattice
from .errors import InputError, PreconditionError
from .exact_linalg import (
    AbelianGroupInvariants,
    IntMatrix,
    image_basis,
    kernel_basis,
    reduce_modulo,
    solve,
    subquotient_invariants,
    hermite_normal_form,
)
from .mod2_criterion import check_sigma_stable

Vector = tuple[int, ...]


def _vector(M: CyclicGModule, c: Sequence[int]) -> Vector:
    if len(c) != M.rank:
        raise InputError(f"class of length {len(c)} in a rank {M.rank} module")
    return tuple(int(x) for x in c)


def partial_norm(M: CyclicGModule, c: Sequence[int], k: int) -> Vector:
    c = _vector(M, c)
    if not 0 <= k <= M.order:
        raise InputError(f"partial norm index must be in [0, {M.order}], got {k}")
    total = [0] * M.rank
    term = c
    for _ in range(k):
        total = [a + b for a, b in zip(total, term)]
        term = M.action.apply(term)
    return tuple(total)


def norm_trivial(M: CyclicGModule, c: Sequence[int]) -> bool:
    return not any(partial_norm(M, c, M.order))


def _reversed_hnf(basis_cols: IntMatrix) -> IntMatrix:
    """Hermite basis (rows) of a column lattice, with coordinates read
    right to left, so the trailing coordinates are the ones reduced."""
    n = basis_cols.rows
    rev = IntMatrix([tuple(reversed(col)) for col in basis_cols.columns()], basis_cols.cols, n)
    H, _ = hermite_normal_form(rev)
    return H


def descent_trivial(M: CyclicGModule, c: Sequence[int]) -> Optional[Vector]:
    """A class ``m`` with ``(1 - σ) m == c``, or ``None`` when there is none.

    The witness is determined up to ``Ker(1 - σ)``; it is normalized by
    reducing modulo a Hermite basis of that kernel taken from the last
    coordinate backwards.
    """
    c = _vector(M, c)
    if not norm_trivial(M, c):
        raise PreconditionError("class not in norm kernel")
    m = solve(M.one_minus_sigma, c)
    if m is None:
        return None
    inv = invariants_sublattice(M)
    if inv.cols:
        H = _reversed_hnf(inv)
        m = tuple(reversed(reduce_modulo(tuple(reversed(m)), H)))
    if M.one_minus_sigma.apply(m) != c:  # pragma: no cover
        raise ArithmeticError("normalized witness does not verify")
    return m


def bundle_class(M: CyclicGModule, c: Sequence[int]) -> Vector:
    """First Chern class of ``N_0(c) ⊕ ... ⊕ N_{d-1}(c)``."""
    c = _vector(M, c)
    if not norm_trivial(M, c):
        raise PreconditionError("class not in norm kernel")
    total = [0] * M.rank
    for k in range(M.order):
        total = [a + b for a, b in zip(total, partial_norm(M, c, k))]
    return tuple(total)


def brauer_pullback_kernel(M: CyclicGModule, ns_generators: Sequence[Sequence[int]]) -> AbelianGroupInvariants:
    """``(Ker N ∩ NS) / (1 - σ) NS`` for the σ-stable span ``NS`` of the generators."""
    G = check_sigma_stable(M, ns_generators)
    if G.cols == 0:
        return AbelianGroupInvariants()
    B = image_basis(G)
    K = kernel_basis(M.norm @ B)
    if K.cols == 0:
        return AbelianGroupInvariants()
    return subquotient_invariants(B @ K, M.one_minus_sigma @ B)
