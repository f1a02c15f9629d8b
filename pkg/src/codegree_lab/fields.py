"""Small finite fields and linear algebra over prime fields."""
from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, f)`` with ``q = p^f``, or None."""
    if q < 2:
        return None
    ps = prime_factors(q)
    if len(ps) != 1:
        return None
    p, f = ps[0], 0
    while q > 1:
        q //= p
        f += 1
    return p, f


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def primitive_root(p: int) -> int:
    """Least generator of the multiplicative group mod a prime."""
    if p == 2:
        return 1
    fs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fs):
            return g
    raise ValueError(f"no primitive root mod {p}")


class GF:
    """The field of order ``q = p^f``.

    Elements are the integers ``0..q-1``: the base-``p`` digits of an integer are
    the coefficients of a polynomial in a root ``x`` of the least (in base-``p``
    order) primitive polynomial of degree ``f``.  Multiplication goes through
    exp/log tables.
    """

    def __init__(self, q: int):
        pf = prime_power(q)
        if pf is None:
            raise ValueError(f"{q} is not a prime power")
        if q > 2 ** 16:
            raise ValueError("field too large for table arithmetic")
        self.q = q
        self.p, self.f = pf
        self.modulus = self._find_primitive_poly()
        self._build_tables()

    def _poly_mulx(self, a: list[int], modulus: list[int]) -> list[int]:
        # a has length f; multiply by x modulo the monic modulus
        p, f = self.p, self.f
        top = a[-1]
        out = [0] + a[:-1]
        return [(c - top * modulus[k]) % p for k, c in enumerate(out)]

    def _is_primitive(self, modulus: list[int]) -> bool:
        p, f, q = self.p, self.f, self.q
        if f == 1:
            return primitive_root(p) == (-modulus[0]) % p
        cur = [1] + [0] * (f - 1)
        seen = 0
        for k in range(1, q):
            cur = self._poly_mulx(cur, modulus)
            if cur == [1] + [0] * (f - 1):
                seen = k
                break
        return seen == q - 1

    def _find_primitive_poly(self) -> list[int]:
        p, f = self.p, self.f
        if f == 1:
            return [(-primitive_root(p)) % p]
        for low in itertools.product(range(p), repeat=f):
            coeffs = list(reversed(low))  # constant term first
            if coeffs[0] == 0:
                continue
            if self._is_primitive(coeffs):
                return coeffs
        raise ValueError("no primitive polynomial found")

    def _build_tables(self) -> None:
        p, f, q = self.p, self.f, self.q
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        if f == 1:
            g = primitive_root(p)
            cur = 1
            for k in range(q - 1):
                exp[k] = cur
                log[cur] = k
                cur = cur * g % p
        else:
            cur = [1] + [0] * (f - 1)
            for k in range(q - 1):
                val = sum(c * p ** i for i, c in enumerate(cur))
                exp[k] = val
                log[val] = k
                cur = self._poly_mulx(cur, self.modulus)
        for k in range(q - 1, 2 * (q - 1)):
            exp[k] = exp[k - (q - 1)]
        self.exp = exp
        self.log = log
        # addition table through digit vectors
        digits = np.array([[(x // p ** i) % p for i in range(f)] for x in range(q)], dtype=np.int64)
        weights = p ** np.arange(f, dtype=np.int64)
        self._add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self._neg = ((-digits) % p) @ weights

    @property
    def primitive_element(self) -> int:
        return self.exp[1]

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return int(self._add[a, b])

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def sub(self, a: int, b: int) -> int:
        return int(self._add[a, self._neg[b]])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return n % self.p


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


# -- linear algebra mod p ----------------------------------------------------

def rref_mod(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if len(others):
            A[others] = (A[others] - A[others, c][:, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of ``{x : A x = 0}`` over F_p."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, piv = rref_mod(A, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, fcol in enumerate(free):
        basis[k, fcol] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-R[i, fcol]) % p
    return basis


def charpoly_mod(A: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial over F_p, constant term first (monic).

    Reduces to upper Hessenberg form by similarity transforms, then runs the
    standard determinant recurrence.
    """
    H = np.array(A, dtype=np.int64) % p
    n = H.shape[0]
    for m in range(1, n - 1):
        nz = np.flatnonzero(H[m:, m - 1])
        if len(nz) == 0:
            continue
        i = m + nz[0]
        if i != m:
            H[[i, m]] = H[[m, i]]
            H[:, [i, m]] = H[:, [m, i]]
        inv = pow(int(H[m, m - 1]), -1, p)
        for i in range(m + 1, n):
            u = int(H[i, m - 1]) * inv % p
            if u:
                H[i] = (H[i] - u * H[m]) % p
                H[:, m] = (H[:, m] + u * H[:, i]) % p
    # polys[k] = charpoly of leading k x k block
    polys = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        # (x - h_kk) * prev
        cur = [0] + prev
        hk = int(H[k - 1, k - 1])
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - hk * c) % p
        t = 1
        for i in range(1, k):
            t = t * int(H[k - i, k - i - 1]) % p
            coef = t * int(H[k - i - 1, k - 1]) % p
            if coef:
                for j, c in enumerate(polys[k - i - 1]):
                    cur[j] = (cur[j] - coef * c) % p
        polys.append(cur)
    return polys[n]


def roots_mod(poly: list[int], p: int) -> list[int]:
    """All roots in F_p by evaluation at every field element."""
    x = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return np.flatnonzero(acc == 0).tolist()
