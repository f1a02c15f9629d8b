"""Irreducible characters by the Dixon-Schneider method.

Class matrices are reduced modulo a prime ``p = 1 (mod e)``, ``e`` the group
exponent; their common eigenvectors are the central characters mod ``p``.
Degrees come from the second orthogonality relation, and the values are
recovered as eigenvalue multiplicities by a discrete Fourier inversion over
the ``e``-th roots of unity in ``F_p``.
"""
from __future__ import annotations

import logging
import math
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from .classes import ClassData, conjugacy_classes
from .cyclo import CycloNum
from .fields import charpoly_mod, is_prime, nullspace_mod, primitive_root, rref_mod, roots_mod
from .perm import DEFAULT_CAP, PermGroup

log = logging.getLogger(__name__)

DEFAULT_CLASS_LIMIT = 80
PRIME_SEARCH_LIMIT = 10 ** 7


class CharacterTableError(RuntimeError):
    """The table could not be computed or failed an exact check."""


@dataclass
class DixonConfig:
    # which admissible prime is used when none is given: 0 is the least, 1 the next, ...
    prime_rank: int = 0


CONFIG = DixonConfig()


@contextmanager
def prime_rank(k: int):
    """Temporarily compute every table with the ``k``-th admissible prime."""
    old, CONFIG.prime_rank = CONFIG.prime_rank, k
    try:
        yield
    finally:
        CONFIG.prime_rank = old


def default_prime(order: int, exponent: int) -> int:
    p = dixon_prime(order, exponent)
    for _ in range(CONFIG.prime_rank):
        p = dixon_prime(order, exponent, after=p)
    return p


def class_matrix(G: PermGroup, i: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Structure constants: entry ``(j, k)`` counts ``(x, y)`` in ``C_i x C_j`` with ``xy = g_k``."""
    cd = conjugacy_classes(G, cap)
    enum = G.enumeration(cap)
    r = len(cd)
    members = np.flatnonzero(cd.class_of == i)
    inv_base = enum.elements[enum.inverse_index[members]][:, enum.base]
    reps = np.array([g.images for g in cd.reps], dtype=np.int64)
    # y = x^-1 g_k, evaluated on base points only
    ys = reps[:, inv_base]
    ycls = cd.class_of[enum.index_of_base_images(ys.reshape(-1, len(enum.base)))].reshape(r, -1)
    M = np.zeros((r, r), dtype=np.int64)
    for k in range(r):
        M[:, k] = np.bincount(ycls[k], minlength=r)
    return M


def dixon_prime(order: int, exponent: int, after: int = 0) -> int:
    """Least prime ``p = 1 (mod exponent)`` with ``p > 2 ceil(sqrt(order))`` and ``p > after``."""
    bound = max(_prime_floor(order), after)
    p = (bound // exponent) * exponent + 1
    while p < PRIME_SEARCH_LIMIT:
        if p > bound and is_prime(p):
            return p
        p += exponent
    raise CharacterTableError(f"no suitable prime below {PRIME_SEARCH_LIMIT}")


def _prime_floor(order: int) -> int:
    """``2 ceil(sqrt(order))``."""
    root = math.isqrt(order)
    if root * root < order:
        root += 1
    return 2 * root


def valid_dixon_prime(p: int, order: int, exponent: int) -> bool:
    return is_prime(p) and p % exponent == 1 % exponent and p > _prime_floor(order)


def _split_spaces(G: PermGroup, cd: ClassData, p: int, cap: int) -> list[np.ndarray]:
    r = len(cd)
    spaces = [np.eye(r, dtype=np.int64)]
    order = sorted(range(1, r), key=lambda i: (cd.sizes[i], i))
    for i in order:
        if all(len(V) == 1 for V in spaces):
            break
        T = class_matrix(G, i, cap).T % p
        refined = []
        for V in spaces:
            if len(V) == 1:
                refined.append(V)
                continue
            _, piv = rref_mod(V, p)
            A = (V @ T % p)[:, piv]
            eig = roots_mod(charpoly_mod(A, p), p)
            if len(eig) == 1:
                refined.append(V)
                continue
            pieces = []
            for lam in eig:
                shifted = (A - lam * np.eye(len(A), dtype=np.int64)) % p
                U = nullspace_mod(shifted.T, p)
                W, _ = rref_mod(U @ V % p, p)
                pieces.append(W)
            if sum(len(W) for W in pieces) != len(V):
                raise CharacterTableError("eigenspace decomposition is incomplete")
            refined.extend(pieces)
        spaces = refined
    if any(len(V) != 1 for V in spaces):
        raise CharacterTableError("class matrices did not split the class algebra")
    return [V[0] for V in spaces]


def dixon_schneider(G: PermGroup, prime: int | None = None, cap: int = DEFAULT_CAP,
                    class_limit: int = DEFAULT_CLASS_LIMIT):
    """Return ``(class data, exponent, prime, value rows)`` in the order found.

    Value rows are lists of :class:`CycloNum`, one per class.
    """
    cd = conjugacy_classes(G, cap)
    r = len(cd)
    if r > class_limit:
        raise CharacterTableError(f"{r} classes exceed the limit {class_limit}")
    order = G.order
    e = cd.exponent
    if prime is None:
        p = default_prime(order, e)
    else:
        if not valid_dixon_prime(prime, order, e):
            raise CharacterTableError(f"{prime} is not a valid prime for exponent {e}, order {order}")
        p = prime
    log.debug("Dixon-Schneider on order %d, %d classes, p = %d", order, r, p)

    vecs = _split_spaces(G, cd, p, cap)
    sizes = np.array(cd.sizes, dtype=np.int64)
    inv_sizes = np.array([pow(int(h), -1, p) for h in sizes], dtype=np.int64)
    inv_map = np.array(cd.inverse_map)
    bound = math.isqrt(order)

    z = pow(primitive_root(p), (p - 1) // e, p)
    values_mod = []
    degrees = []
    for v in vecs:
        if v[0] == 0:
            raise CharacterTableError("eigenvector vanishes at the identity class")
        w = v * pow(int(v[0]), -1, p) % p
        s = int(np.sum(w * w[inv_map] % p * inv_sizes % p) % p)
        if s == 0:
            raise CharacterTableError("degenerate central character")
        target = order % p * pow(s, -1, p) % p
        ds = [d for d in range(1, bound + 1) if d * d % p == target]
        if len(ds) != 1 or order % ds[0]:
            raise CharacterTableError("could not recover a character degree")
        d = ds[0]
        degrees.append(d)
        values_mod.append(w * d % p * inv_sizes % p)
    X = np.array(values_mod, dtype=np.int64)

    rows: list[list[CycloNum]] = [[None] * r for _ in range(len(vecs))]
    for j in range(r):
        n = cd.element_orders[j]
        wn = pow(z, e // n, p)
        # m_a = (1/n) sum_l chi(g^l) w^(-a l)
        powers = [cd.power(j, l) for l in range(n)]
        F = np.array([[pow(wn, (-a * l) % n, p) for a in range(n)] for l in range(n)], dtype=np.int64)
        ninv = pow(n, -1, p)
        mult = (X[:, powers] @ F) % p * ninv % p
        for c in range(len(vecs)):
            m = mult[c]
            if m.max() > degrees[c] or int(m.sum()) != degrees[c]:
                raise CharacterTableError("eigenvalue multiplicities out of range; lifting failed")
            rows[c][j] = CycloNum.from_exponent_counts(n, m.tolist())
    return cd, e, p, rows
