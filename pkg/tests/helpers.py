"""Random generators and brute-force oracles shared by the test modules.

The oracles here deliberately avoid the library's Smith/Hermite code paths.
"""

import itertools
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from enriques_brauer.cyclic_gmodule import CyclicGModule
from enriques_brauer.exact_linalg import IntMatrix, block_diagonal


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return IntMatrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], rows, cols)


def random_unimodular(rng, n, steps=None, mult=2):
    """Return ``(P, P_inv)`` built from elementary operations."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [row[:] for row in P]
    for _ in range(steps if steps is not None else 2 * n):
        kind = rng.random()
        i, j = rng.randrange(n), rng.randrange(n)
        if kind < 0.15 and i != j:
            # swap columns i, j of P; swap rows i, j of Q
            for row in P:
                row[i], row[j] = row[j], row[i]
            Q[i], Q[j] = Q[j], Q[i]
        elif kind < 0.3:
            for row in P:
                row[i] = -row[i]
            Q[i] = [-x for x in Q[i]]
        elif i != j:
            c = rng.choice([k for k in range(-mult, mult + 1) if k])
            # P <- P (I + c e_ij): col_j += c col_i ; Q <- (I - c e_ij) Q: row_i -= c row_j
            for row in P:
                row[j] += c * row[i]
            Q[i] = [a - c * b for a, b in zip(Q[i], Q[j])]
    P, Q = IntMatrix(P, n, n), IntMatrix(Q, n, n)
    assert P @ Q == IntMatrix.identity(n)
    return P, Q


_PERM3 = IntMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
_PERM4 = IntMatrix([[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
_SWAP = IntMatrix([[0, 1], [1, 0]])

# (block, order of the block)
BLOCKS = [
    (IntMatrix([[1]]), 1),
    (IntMatrix([[-1]]), 2),
    (_SWAP, 2),
    (IntMatrix([[0, -1], [1, -1]]), 3),
    (_PERM3, 3),
    (IntMatrix([[0, -1], [1, 0]]), 4),
    (_PERM4, 4),
    (IntMatrix([[1, -1], [1, 0]]), 6),
]


def random_module(rng, max_rank=6, max_order=4, orders=None, conj_steps=None, mult=2):
    d = rng.choice(orders or list(range(1, max_order + 1)))
    allowed = [(b, o) for b, o in BLOCKS if d % o == 0]
    rank = rng.randint(1, max_rank)
    blocks = []
    size = 0
    while size < rank:
        fitting = [b for b, _ in allowed if size + b.rows <= rank]
        b = rng.choice(fitting)
        blocks.append(b)
        size += b.rows
    A = block_diagonal(*blocks)
    P, Q = random_unimodular(rng, A.rows, conj_steps, mult)
    return CyclicGModule(Q @ A @ P, d)


def sympy_rank(M):
    if M.rows == 0 or M.cols == 0:
        return 0
    return sympy.Matrix(M.to_lists()).rank()


def _domain_matrix(M):
    return DomainMatrix([[ZZ(x) for x in r] for r in M.entries], M.shape, ZZ)


def sympy_det(M):
    return int(_domain_matrix(M).det())


def sympy_invariant_factors(M):
    """Nonzero invariant factors from sympy's independent implementation."""
    if M.rows == 0 or M.cols == 0:
        return ()
    return tuple(abs(int(x)) for x in invariant_factors(_domain_matrix(M)) if x != 0)


def image_mod(M, d):
    """The set ``{M y mod d : y in [0, d)^cols}``."""
    out = set()
    for y in itertools.product(range(d), repeat=M.cols):
        out.add(tuple(x % d for x in M.apply(y)))
    return out


def brute_subquotient_order(K_map, I_map, d, box=None, max_box=40):
    """``|Ker K_map / Im I_map|`` for a quotient killed by ``d``.

    Uses ``|Ker / Im| = d^rank(Ker) / |Im mod d|``, valid because the kernel
    is saturated and ``d Ker`` lies inside the image.  The kernel is
    enumerated in a coordinate box, grown until its reduction mod ``d`` has
    the expected size ``d^rank``.
    """
    r = K_map.cols
    k = r - sympy_rank(K_map)
    box = box if box is not None else 2 * d
    while True:
        ker_mod = set()
        for x in itertools.product(range(-box, box + 1), repeat=r):
            if not any(K_map.apply(x)):
                ker_mod.add(tuple(t % d for t in x))
        if len(ker_mod) == d ** k:
            break
        assert box < max_box, "kernel not visible in the coordinate box"
        box *= 2
    im_mod = image_mod(I_map, d)
    assert im_mod <= ker_mod
    assert (d ** k) % len(im_mod) == 0
    return (d ** k) // len(im_mod)


def brute_cokernel_order(M):
    """``|Z^n / M Z^n|`` for square nonsingular ``M`` by counting mod ``|det|``."""
    D = abs(int(sympy.Matrix(M.to_lists()).det()))
    assert D != 0
    return D ** M.rows // len(image_mod(M, D))
