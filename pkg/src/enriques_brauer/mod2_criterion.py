"""When does the Brauer class of ``E_n`` die on ``S^[n]``?

Everything lives on the K3^[n] lattice with its involution ``σ``
(see :mod:`enriques_brauer.constructions` for coordinates).  Two numerical
conditions on a class ``λ`` are implemented and shown equivalent by the
test-suite:

* anti-invariant with square ``2 mod 4``;
* in the kernel of ``1 + σ``, not a coboundary ``(1 - σ)μ``, and with
  ``U``-component in the push-forward kernel ``{0, ε}`` mod 2.

``vanishing_criterion`` decides whether a σ-stable Picard sublattice
contains a class of the first kind, by linear algebra over ``Z`` and ``F2``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

from .constructions import k3n_coordinates, k3n_module
from .cyclic_gmodule import CyclicGModule, invariants_sublattice
from .errors import InputError, PreconditionError
from .exact_linalg import IntMatrix, image_basis, kernel_basis, solve
from .lattice import Bits, f2_in_span, f2_nullspace, f2_row_reduce, mod2_reduce

EPSILON: Bits = (1, 1)  # e + f in U/2U


@lru_cache(maxsize=None)
def _module(n: int) -> CyclicGModule:
    return k3n_module(n)


@lru_cache(maxsize=None)
def _one_plus_sigma(n: int) -> IntMatrix:
    M = _module(n)
    return IntMatrix.identity(M.rank) + M.action


def epsilon() -> Bits:
    """The unique element of ``U/2U`` with ``q̃ = 1``."""
    return EPSILON


def u_part(n: int, lam: Sequence[int]) -> tuple[int, int]:
    r = k3n_coordinates(n)["U"]
    return tuple(lam[i] for i in r)


def u_part_mod2(n: int, lam: Sequence[int]) -> Bits:
    return tuple(x & 1 for x in u_part(n, lam))


def embed_u2(n: int, b: Sequence[int]) -> Bits:
    """Put a ``U/2U`` class into the full mod-2 space."""
    rank = _module(n).rank
    v = [0] * rank
    for i, x in zip(k3n_coordinates(n)["U"], b):
        v[i] = x & 1
    return tuple(v)


def _check_vector(n: int, lam: Sequence[int]) -> tuple[int, ...]:
    M = _module(n)
    if len(lam) != M.rank:
        raise InputError(f"vector of length {len(lam)} in the rank {M.rank} K3^[{n}] lattice")
    return tuple(int(x) for x in lam)


def invariant_mod2_subspace(n: int) -> list[Bits]:
    """Basis of the σ-fixed subspace of ``H^2(S^[n], Z/2)``."""
    M = _module(n)
    one_minus = M.one_minus_sigma
    return f2_nullspace([[x & 1 for x in row] for row in one_minus.entries], M.rank)


def image_pullback_mod2(n: int) -> list[Bits]:
    """Basis of the image of ``H^2(E_n, Z/2)`` in ``H^2(S^[n], Z/2)``.

    It is spanned by the reduction of the integral invariants (the diagonal
    ``Δ_F2`` and ``δ``) together with ``ε``.
    """
    M = _module(n)
    inv = invariants_sublattice(M)
    gens = [tuple(x & 1 for x in col) for col in inv.columns()]
    gens.append(embed_u2(n, EPSILON))
    return f2_row_reduce(gens, M.rank)


def in_image_pullback_mod2(n: int, v: Sequence[int]) -> bool:
    return f2_in_span(tuple(x & 1 for x in v), image_pullback_mod2(n))


def radical_mod2(n: int) -> list[Bits]:
    """Elements of the radical of ``H^2(S^[n], Z/2)`` on which ``q̃`` vanishes."""
    return mod2_reduce(_module(n).lattice).quadratic_kernel()


def in_kernel_pushforward_U2(b: Sequence[int]) -> bool:
    """Membership in ``{0, ε}``, the push-forward kernel restricted to ``U/2U``."""
    if len(b) != 2:
        raise InputError("a U/2U class has two coordinates")
    bits = tuple(x & 1 for x in b)
    return bits in ((0, 0), EPSILON)


def is_anti_invariant(n: int, lam: Sequence[int]) -> bool:
    lam = _check_vector(n, lam)
    return _module(n).action.apply(lam) == tuple(-x for x in lam)


def is_coboundary(n: int, lam: Sequence[int]) -> bool:
    """``λ ∈ (1 - σ) H^2``."""
    return solve(_module(n).one_minus_sigma, _check_vector(n, lam)) is not None


def condition_anti_qmod4(n: int, lam: Sequence[int]) -> bool:
    lam = _check_vector(n, lam)
    return is_anti_invariant(n, lam) and _module(n).lattice.q(lam) % 4 == 2


def condition_kernel_not_coboundary(n: int, lam: Sequence[int]) -> bool:
    lam = _check_vector(n, lam)
    if any(_one_plus_sigma(n).apply(lam)):
        return False
    if is_coboundary(n, lam):
        return False
    return in_kernel_pushforward_U2(u_part_mod2(n, lam))


def check_sigma_stable(M: CyclicGModule, generators: Sequence[Sequence[int]]) -> IntMatrix:
    """Matrix with the generators as columns, after checking σ-stability of their span."""
    gens = [tuple(int(x) for x in g) for g in generators]
    for g in gens:
        if len(g) != M.rank:
            raise InputError(f"generator of length {len(g)} in a rank {M.rank} lattice")
    G = IntMatrix.from_columns(gens, M.rank)
    if not gens:
        return G
    for g in gens:
        if solve(G, M.action.apply(g)) is None:
            raise PreconditionError(f"span is not σ-stable: σ{g} is not in the span")
    return G


def anti_invariant_part(M: CyclicGModule, span: IntMatrix) -> IntMatrix:
    """Basis (columns) of the anti-invariant vectors in the column span of ``span``."""
    if span.cols == 0:
        return span
    B = image_basis(span)
    plus = IntMatrix.identity(M.rank) + M.action
    K = kernel_basis(plus @ B)
    return B @ K


def vanishing_witness(n: int, picard_generators: Sequence[Sequence[int]]) -> Optional[tuple[int, ...]]:
    """An anti-invariant ``λ`` in the span with ``q(λ) ≡ 2 (mod 4)``, or ``None``."""
    M = _module(n)
    G = check_sigma_stable(M, picard_generators)
    anti = anti_invariant_part(M, G)
    if anti.cols == 0:
        return None
    cols = anti.columns()
    parts = [u_part_mod2(n, c) for c in cols]
    # solve sum_i c_i parts_i = ε over F2
    rows = [[p[k] for p in parts] + [EPSILON[k]] for k in range(2)]
    null = f2_nullspace(rows, len(parts) + 1)
    combo = next((v for v in null if v[-1]), None)
    if combo is None:
        return None
    lam = [0] * M.rank
    for c, col in zip(combo[:-1], cols):
        if c:
            lam = [a + b for a, b in zip(lam, col)]
    lam = tuple(lam)
    assert condition_anti_qmod4(n, lam)
    return lam


def vanishing_criterion(n: int, picard_generators: Sequence[Sequence[int]]) -> bool:
    """Whether the pulled-back Brauer class of ``E_n`` vanishes on ``S^[n]``,
    given generators of a σ-stable Picard lattice."""
    return vanishing_witness(n, picard_generators) is not None
