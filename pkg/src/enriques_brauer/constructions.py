"""Second cohomology lattices of the hyper-Kähler covers, with the deck action.

Basis conventions
-----------------
K3^[n]:  ``F ⊕ F ⊕ <-2(n-1)> ⊕ U`` with ``F = E8(-1) ⊕ U``.  Coordinates
0-9 and 10-19 are the two copies of ``F``, 20 is ``δ`` and 21-22 are ``U``
(``e``, ``f``).  For ``n = 1`` the ``δ`` summand is omitted, giving the K3
lattice of rank 22 with ``U`` at 20-21.

Abelian surface ``C x C'``: ``H^2(C)``, then the four tensors
``de1⊗de2, df1⊗de2, de1⊗df2, df1⊗df2``, then ``H^2(C')``.  The Kummer
module appends ``δ`` as coordinate 6.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclic_gmodule import CyclicGModule, module_direct_sum, trivial_module
from .errors import InputError
from .exact_linalg import IntMatrix, block_diagonal
from .lattice import Lattice, direct_sum, hyperbolic_U, lattice_F, rank_one, relabel

FAMILIES = ("En", "Kn", "Tn", "Rn")

# group order of each family
FAMILY_INDEX = {"En": 2, "Kn": 2, "Tn": 3, "Rn": 4}


@dataclass(frozen=True)
class FamilySpec:
    """One of the known Enriques families.

    ``param`` is ``n`` for ``En`` and ``Kn`` and ``m`` for ``Tn``
    (``n = 3m - 1``) and ``Rn`` (``n = 4m - 1``).
    """

    family: str
    param: int

    def __post_init__(self):
        fam = _normalize_family(self.family)
        object.__setattr__(self, "family", fam)
        p = self.param
        if isinstance(p, bool) or not isinstance(p, int):
            raise InputError(f"parameter must be an integer, got {p!r}")
        if fam == "En" and (p < 1 or p % 2 == 0):
            raise InputError(f"En requires odd n ≥ 1 (fixed point free requires n odd), got n = {p}")
        if fam == "Kn" and (p < 3 or p % 2 == 0):
            raise InputError(f"Kn requires odd n ≥ 3, got n = {p}")
        if fam in ("Tn", "Rn") and p < 1:
            raise InputError(f"{fam} requires m ≥ 1, got m = {p}")

    @property
    def index(self) -> int:
        return FAMILY_INDEX[self.family]

    @property
    def n(self) -> int:
        """Half the complex dimension of the cover."""
        if self.family == "Tn":
            return 3 * self.param - 1
        if self.family == "Rn":
            return 4 * self.param - 1
        return self.param

    @property
    def name(self) -> str:
        return f"{self.family[0]}_{self.n}"

    def to_json(self) -> dict:
        return {"family": self.family, "param": self.param}

    @classmethod
    def from_json(cls, data) -> "FamilySpec":
        try:
            return cls(data["family"], data["param"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed family JSON: {exc}") from exc


def _normalize_family(name: str) -> str:
    if not isinstance(name, str):
        raise InputError(f"family must be a string, got {name!r}")
    for fam in FAMILIES:
        if name.lower() == fam.lower():
            return fam
    raise InputError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


# ---------------------------------------------------------------------------
# K3 and K3^[n]
# ---------------------------------------------------------------------------

def _swap_negate(rank_f: int, middle: int, rank_u: int) -> IntMatrix:
    """(a, a', m, b) -> (a', a, m, -b) with the given block sizes."""
    n = 2 * rank_f + middle + rank_u
    rows = [[0] * n for _ in range(n)]
    for i in range(rank_f):
        rows[i][rank_f + i] = 1
        rows[rank_f + i][i] = 1
    for i in range(2 * rank_f, 2 * rank_f + middle):
        rows[i][i] = 1
    for i in range(2 * rank_f + middle, n):
        rows[i][i] = -1
    return IntMatrix(rows, n, n)


def k3n_lattice(n: int) -> Lattice:
    F = lattice_F()
    parts = [relabel(F, "F1"), relabel(F, "F2")]
    if n > 1:
        parts.append(rank_one(-2 * (n - 1), "delta"))
    parts.append(hyperbolic_U())
    return direct_sum(*parts, label=f"H2(K3^[{n}])" if n > 1 else "H2(K3)")


def k3n_module(n: int) -> CyclicGModule:
    """``H^2(S^[n], Z)`` with the involution induced by an Enriques involution."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    if n % 2 == 0:
        raise InputError(f"fixed point free requires n odd, got n = {n}")
    L = k3n_lattice(n)
    action = _swap_negate(10, 1 if n > 1 else 0, 2)
    return CyclicGModule(action, 2, L, label=L.label)


def k3_enriques_module() -> CyclicGModule:
    """``H^2(S, Z) = F ⊕ F ⊕ U`` with ``(α, α', β) -> (α', α, -β)``."""
    return k3n_module(1)


def k3n_coordinates(n: int) -> dict[str, range]:
    """Coordinate ranges of the summands F1, F2, delta (if present) and U."""
    if n > 1:
        return {"F1": range(0, 10), "F2": range(10, 20), "delta": range(20, 21), "U": range(21, 23)}
    return {"F1": range(0, 10), "F2": range(10, 20), "U": range(20, 22)}


def k3n_vector(n: int, a=None, a_prime=None, m: int = 0, b=None) -> tuple[int, ...]:
    """Assemble ``(a, a', m, b)`` into K3^[n] coordinates (missing parts are 0)."""
    a = tuple(a) if a is not None else (0,) * 10
    a_prime = tuple(a_prime) if a_prime is not None else (0,) * 10
    b = tuple(b) if b is not None else (0, 0)
    if len(a) != 10 or len(a_prime) != 10 or len(b) != 2:
        raise InputError("a, a' need 10 coordinates and b needs 2")
    if n == 1:
        if m:
            raise InputError("there is no δ coordinate for n = 1")
        return a + a_prime + b
    return a + a_prime + (m,) + b


# ---------------------------------------------------------------------------
# Abelian surfaces and generalized Kummer varieties
# ---------------------------------------------------------------------------

# action of the generator on the four tensor classes, per group order
_TENSOR_BLOCKS = {
    2: IntMatrix([[-1, 0], [0, -1]]),
    3: IntMatrix([[0, -1], [1, -1]]),
    4: IntMatrix([[0, -1], [1, 0]]),
}


def tensor_block(d: int) -> IntMatrix:
    """The 4x4 action on ``H^1(C) ⊗ H^1(C')``."""
    if d not in _TENSOR_BLOCKS:
        raise InputError(f"abelian surface actions exist for d in (2, 3, 4), got d = {d}")
    return block_diagonal(_TENSOR_BLOCKS[d], _TENSOR_BLOCKS[d])


def abelian_surface_module(d: int) -> CyclicGModule:
    one = IntMatrix.identity(1)
    action = block_diagonal(one, tensor_block(d), one)
    return CyclicGModule(action, d, label=f"H2(C x C'), d = {d}")


def kummer_module(n: int, d: int) -> CyclicGModule:
    """``H^2(Kum_n(A), Z) = H^2(A, Z) ⊕ Zδ``; the action fixes ``δ``.

    No form is attached: only the action enters the computations.
    """
    if d not in _TENSOR_BLOCKS:
        raise InputError(f"abelian surface actions exist for d in (2, 3, 4), got d = {d}")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    if (n + 1) % d:
        raise InputError(f"the group order {d} must divide n + 1 = {n + 1}")
    M = module_direct_sum(abelian_surface_module(d), trivial_module(1, d), order=d)
    return CyclicGModule(M.action, d, label=f"H2(Kum_{n}), d = {d}")


DELTA_KUMMER = 6


def family_module(spec: FamilySpec) -> CyclicGModule:
    if spec.family == "En":
        return k3n_module(spec.n)
    return kummer_module(spec.n, spec.index)
