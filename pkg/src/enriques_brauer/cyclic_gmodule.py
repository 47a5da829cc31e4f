"""Lattices with an action of a finite cyclic group and their cohomology.

For ``G = <σ>`` of order ``d`` acting on a free module ``A`` with norm
``N = 1 + σ + ... + σ^(d-1)`` the cohomology in positive degree is 2-periodic:

* odd ``p``:  ``H^p(G, A) = Ker N / Im(1 - σ)``
* even ``p``: ``H^p(G, A) = Ker(1 - σ) / Im N``

Both are computed as subquotients of saturated sublattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm
from typing import Optional, Sequence

from .errors import InputError, PreconditionError
from .exact_linalg import (
    AbelianGroupInvariants,
    IntMatrix,
    block_diagonal,
    kernel_basis,
    matrix_from_json,
    matrix_to_json,
    subquotient_invariants,
)
from .lattice import Lattice


@dataclass(frozen=True, eq=False)
class CyclicGModule:
    """``Z^rank`` with the generator of a cyclic group of order ``order``
    acting through ``action`` (on column vectors).

    ``action^order`` must be the identity.  If a lattice is attached, the
    action must preserve its form.
    """

    action: IntMatrix
    order: int
    lattice: Optional[Lattice] = None
    label: Optional[str] = None

    def __post_init__(self):
        A = self.action
        if not A.is_square():
            raise InputError(f"action matrix must be square, got {A.shape}")
        if self.order < 1:
            raise InputError(f"group order must be >= 1, got {self.order}")
        if A ** self.order != IntMatrix.identity(A.rows):
            raise PreconditionError(f"action does not satisfy action^{self.order} = identity")
        if self.lattice is not None:
            g = self.lattice.gram
            if g.rows != A.rows:
                raise InputError("lattice rank does not match the action")
            if A.T @ g @ A != g:
                raise PreconditionError("action is not an isometry of the attached lattice")

    @property
    def rank(self) -> int:
        return self.action.rows

    @cached_property
    def exact_order(self) -> int:
        """Order of the action matrix itself (divides :attr:`order`)."""
        ident = IntMatrix.identity(self.rank)
        return next(k for k in range(1, self.order + 1)
                    if self.order % k == 0 and self.action ** k == ident)

    @property
    def is_faithful(self) -> bool:
        return self.exact_order == self.order

    @cached_property
    def one_minus_sigma(self) -> IntMatrix:
        return IntMatrix.identity(self.rank) - self.action

    @cached_property
    def norm(self) -> IntMatrix:
        return norm_endomorphism(self)

    def power(self, i: int) -> IntMatrix:
        return self.action ** (i % self.order)

    def to_json(self) -> dict:
        out = {"order": self.order, "action": matrix_to_json(self.action)}
        if self.lattice is not None:
            out["gram"] = matrix_to_json(self.lattice.gram)
        return out

    @classmethod
    def from_json(cls, data) -> "CyclicGModule":
        if not isinstance(data, dict) or "order" not in data or "action" not in data:
            raise InputError("module JSON needs 'order' and 'action'")
        order = data["order"]
        if isinstance(order, bool) or not isinstance(order, int):
            raise InputError(f"'order' must be an integer, got {order!r}")
        lattice = None
        if data.get("gram") is not None:
            lattice = Lattice(matrix_from_json(data["gram"]))
        return cls(matrix_from_json(data["action"]), order, lattice)


def trivial_module(rank: int, order: int) -> CyclicGModule:
    return CyclicGModule(IntMatrix.identity(rank), order, label=f"Z^{rank} (trivial)")


def module_direct_sum(*modules: CyclicGModule, order: Optional[int] = None,
                      lattice: Optional[Lattice] = None) -> CyclicGModule:
    """Block-diagonal sum; the group order defaults to the lcm of the summands'."""
    if order is None:
        order = lcm(*(M.order for M in modules))
    return CyclicGModule(block_diagonal(*(M.action for M in modules)), order, lattice)


def norm_endomorphism(M: CyclicGModule) -> IntMatrix:
    total = IntMatrix.zeros(M.rank, M.rank)
    power = IntMatrix.identity(M.rank)
    for _ in range(M.order):
        total = total + power
        power = M.action @ power
    return total


def invariants_sublattice(M: CyclicGModule) -> IntMatrix:
    """Saturated basis (as columns) of ``Ker(1 - σ)``."""
    return kernel_basis(M.one_minus_sigma)


def kernel_of_norm(M: CyclicGModule) -> IntMatrix:
    """Saturated basis (as columns) of ``Ker N``."""
    return kernel_basis(M.norm)


def cohomology(M: CyclicGModule, p: int) -> AbelianGroupInvariants:
    if p < 0:
        raise InputError(f"cohomological degree must be >= 0, got {p}")
    if p == 0:
        return AbelianGroupInvariants(invariants_sublattice(M).cols)
    if p % 2:
        return subquotient_invariants(kernel_of_norm(M), M.one_minus_sigma)
    return subquotient_invariants(invariants_sublattice(M), M.norm)


def conjugate(M: CyclicGModule, P: IntMatrix, P_inv: IntMatrix) -> CyclicGModule:
    """Same module written in the basis given by the columns of ``P``."""
    if P @ P_inv != IntMatrix.identity(M.rank):
        raise InputError("P_inv is not the inverse of P")
    lattice = None
    if M.lattice is not None:
        lattice = Lattice(P.T @ M.lattice.gram @ P)
    return CyclicGModule(P_inv @ M.action @ P, M.order, lattice, M.label)


def apply_power(M: CyclicGModule, i: int, v: Sequence[int]) -> tuple[int, ...]:
    return M.power(i).apply(v)
