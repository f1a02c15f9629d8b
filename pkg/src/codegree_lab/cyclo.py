"""Exact arithmetic in cyclotomic fields, and cyclotomic polynomials.

A :class:`CycloNum` of conductor ``n`` is stored in the power basis
``1, z, ..., z^(phi(n)-1)`` of ``Q(z)``, ``z = exp(2 pi i / n)``, as integer
numerators over one positive common denominator.  Every linear map the
arithmetic needs (reduction of ``z^m``, embedding into a larger conductor,
complex conjugation, Galois automorphisms) is a row lookup in the cached
reduction matrix of the target conductor.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

# numpy int64 paths are used only while every intermediate provably fits
_SAFE = 2 ** 62


class NotRational(ValueError):
    """The number has non-zero irrational coordinates."""


# -- cyclotomic polynomials --------------------------------------------------

def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (coefficients low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c, r = divmod(num[k + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return tuple(sorted(set(small + [n // d for d in small])))


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def eval_phi(n: int, q: int) -> int:
    """Exact value of the n-th cyclotomic polynomial at an integer."""
    return sum(c * q ** k for k, c in enumerate(cyclotomic_poly(n)))


# -- reduction tables --------------------------------------------------------

@lru_cache(maxsize=None)
def reduction_matrix(n: int) -> np.ndarray:
    """Row ``m`` holds the coordinates of ``z_n^m`` for ``0 <= m < n``."""
    phi = totient(n)
    poly = cyclotomic_poly(n)
    rows = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(n):
        rows.append(cur)
        # multiply by z and reduce with the monic relation
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * poly[k] for k, c in enumerate(cur)]
    big = max((abs(c) for r in rows for c in r), default=0)
    return np.array(rows, dtype=np.int64 if big < 2 ** 31 else object)


@lru_cache(maxsize=None)
def embedding_matrix(n: int, m: int) -> np.ndarray:
    """Coordinates in conductor ``m`` of the basis ``z_n^a`` (requires ``n | m``)."""
    if m % n:
        raise ValueError(f"{n} does not divide {m}")
    step = m // n
    return reduction_matrix(m)[[a * step for a in range(totient(n))]]


@lru_cache(maxsize=None)
def galois_matrix(n: int, k: int) -> np.ndarray:
    if math.gcd(k, n) != 1:
        raise ValueError(f"{k} is not coprime to {n}")
    return reduction_matrix(n)[[(a * k) % n for a in range(totient(n))]]


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> tuple[Fraction, ...]:
    """Normalized traces ``Tr(z_n^a) / phi(n)``, which do not depend on the conductor."""
    out = []
    for a in range(totient(n)):
        m = n // math.gcd(a, n)
        out.append(Fraction(mobius(m), totient(m)))
    return tuple(out)


def _as_array(values: Sequence[int]) -> np.ndarray:
    big = max((abs(v) for v in values), default=0)
    return np.array(values, dtype=np.int64 if big < 2 ** 31 else object)


def _lin(coords: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    if coords.dtype == object or matrix.dtype == object:
        return np.dot(coords.astype(object), matrix.astype(object))
    bound = int(np.abs(coords).max(initial=0)) * int(np.abs(matrix).max(initial=0)) * len(coords)
    if bound >= _SAFE:
        return np.dot(coords.astype(object), matrix.astype(object))
    return coords @ matrix


def reduce_exponents(n: int, coeffs: np.ndarray) -> np.ndarray:
    """Coordinates of ``sum coeffs[m] z_n^m``; exponents are taken mod ``n``."""
    coeffs = np.asarray(coeffs)
    if len(coeffs) > n:
        folded = np.zeros(n, dtype=coeffs.dtype)
        np.add.at(folded, np.arange(len(coeffs)) % n, coeffs)
        coeffs = folded
    return _lin(coeffs, reduction_matrix(n)[: len(coeffs)])


# -- the number type ---------------------------------------------------------

class CycloNum:
    __slots__ = ("conductor", "num", "den")

    def __init__(self, conductor: int, coeffs: Iterable, den: int = 1):
        coeffs = list(coeffs)
        if conductor < 1:
            raise ValueError("conductor must be positive")
        if len(coeffs) != totient(conductor):
            raise ValueError(f"expected {totient(conductor)} coordinates, got {len(coeffs)}")
        if any(isinstance(c, Fraction) for c in coeffs) or den != 1:
            fr = [Fraction(c) / den for c in coeffs]
            den = reduce(math.lcm, (f.denominator for f in fr), 1)
            coeffs = [int(f * den) for f in fr]
        else:
            coeffs = [int(c) for c in coeffs]
        self.conductor = conductor
        self.num = tuple(coeffs)
        self.den = den

    @classmethod
    def _make(cls, conductor: int, num, den: int = 1) -> "CycloNum":
        num = [int(c) for c in num]
        if den != 1:
            g = reduce(math.gcd, num, den)
            if g > 1:
                num = [c // g for c in num]
                den //= g
            if den < 0:
                num, den = [-c for c in num], -den
        obj = object.__new__(cls)
        obj.conductor = conductor
        obj.num = tuple(num)
        obj.den = den
        return obj

    # constructors
    @classmethod
    def from_int(cls, value: int, conductor: int = 1) -> "CycloNum":
        return cls.from_rational(Fraction(value), conductor)

    @classmethod
    def from_rational(cls, value, conductor: int = 1) -> "CycloNum":
        value = Fraction(value)
        num = [value.numerator] + [0] * (totient(conductor) - 1)
        return cls._make(conductor, num, value.denominator)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloNum":
        return cls._make(n, reduction_matrix(n)[k % n])

    @classmethod
    def from_exponent_counts(cls, n: int, counts: Sequence[int]) -> "CycloNum":
        """``sum counts[a] * z_n^a``, e.g. an eigenvalue multiplicity vector."""
        return cls._make(n, reduce_exponents(n, _as_array(counts)))

    # coercion
    def coerce(self, m: int) -> "CycloNum":
        if m == self.conductor:
            return self
        coords = _lin(_as_array(self.num), embedding_matrix(self.conductor, m))
        return CycloNum._make(m, coords, self.den)

    def _pair(self, other) -> tuple["CycloNum", "CycloNum"]:
        if not isinstance(other, CycloNum):
            other = CycloNum.from_rational(other)
        m = math.lcm(self.conductor, other.conductor)
        return self.coerce(m), other.coerce(m)

    # arithmetic
    def __add__(self, other) -> "CycloNum":
        a, b = self._pair(other)
        den = math.lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return CycloNum._make(a.conductor, [x * fa + y * fb for x, y in zip(a.num, b.num)], den)

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum._make(self.conductor, [-x for x in self.num], self.den)

    def __sub__(self, other) -> "CycloNum":
        return self + (-other if isinstance(other, CycloNum) else -Fraction(other))

    def __rsub__(self, other) -> "CycloNum":
        return (-self) + other

    def __mul__(self, other) -> "CycloNum":
        if not isinstance(other, CycloNum):
            other = Fraction(other)
            num = [x * other.numerator for x in self.num]
            return CycloNum._make(self.conductor, num, self.den * other.denominator)
        a, b = self._pair(other)
        n = a.conductor
        xa, xb = _as_array(a.num), _as_array(b.num)
        if xa.dtype == object or xb.dtype == object or \
                int(np.abs(xa).max()) * int(np.abs(xb).max()) * len(xa) >= _SAFE:
            xa, xb = xa.astype(object), xb.astype(object)
        prod = np.convolve(xa, xb)
        return CycloNum._make(n, reduce_exponents(n, prod), a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if not other.is_rational():
                return self * other.inverse()
            q = other.to_rational()
        else:
            q = Fraction(other)
        if q == 0:
            raise ZeroDivisionError("division by zero")
        return self * (1 / q)

    def __rtruediv__(self, other) -> "CycloNum":
        return CycloNum.from_rational(other, self.conductor) / self

    def inverse(self) -> "CycloNum":
        """Product of the other Galois conjugates over the (rational) norm."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        n = self.conductor
        others = CycloNum.from_int(1, n)
        for k in range(2, n):
            if math.gcd(k, n) == 1:
                others = others * self.galois(k)
        return others * (1 / (self * others).to_rational())

    def __pow__(self, k: int) -> "CycloNum":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = CycloNum.from_int(1, self.conductor)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "CycloNum":
        return self.galois(-1)

    def galois(self, k: int) -> "CycloNum":
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not coprime to conductor {n}")
        coords = _lin(_as_array(self.num), galois_matrix(n, k % n))
        return CycloNum._make(n, coords, self.den)

    # predicates and conversions
    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRational(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def to_rational_integer(self) -> int:
        q = self.to_rational()
        if q.denominator != 1:
            raise NotRational(f"{q} is not an integer")
        return q.numerator

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_algebraic_integer_coords(self) -> bool:
        return self.den == 1

    def normalized_trace(self) -> Fraction:
        w = _trace_weights(self.conductor)
        return sum((c * t for c, t in zip(self.num, w)), Fraction(0)) / self.den

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloNum):
            try:
                other = CycloNum.from_rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        if self.conductor == other.conductor:
            return self.num == other.num and self.den == other.den
        a, b = self._pair(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self) -> int:
        return hash(self.normalized_trace())

    def sort_key(self) -> tuple:
        """Total order on coordinates (within one conductor)."""
        return (self.conductor, self.num, self.den)

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(c * z ** k for k, c in enumerate(self.num)) / self.den

    def to_json(self) -> dict:
        return {"conductor": self.conductor,
                "coeffs": [str(Fraction(c, self.den)) for c in self.num]}

    @classmethod
    def from_json(cls, data: dict) -> "CycloNum":
        return cls(int(data["conductor"]), [Fraction(c) for c in data["coeffs"]])

    def __repr__(self) -> str:
        if self.is_rational():
            return str(self.to_rational())
        terms = []
        for k, c in enumerate(self.num):
            if c:
                coef = Fraction(c, self.den)
                terms.append(f"{coef}" if k == 0 else f"{coef}*z{self.conductor}^{k}")
        return " + ".join(terms)


def zeta(n: int, k: int = 1) -> CycloNum:
    return CycloNum.zeta(n, k)


def cyclo_sum(values: Iterable[CycloNum], conductor: int | None = None) -> CycloNum:
    """Sum with a single coercion per distinct conductor."""
    groups: dict[int, list[CycloNum]] = {}
    for v in values:
        groups.setdefault(v.conductor, []).append(v)
    if conductor is None:
        conductor = reduce(math.lcm, groups, 1)
    total = CycloNum.from_int(0, conductor)
    for n, vals in sorted(groups.items()):
        den = reduce(math.lcm, (v.den for v in vals), 1)
        acc = [0] * totient(n)
        for v in vals:
            f = den // v.den
            for k, c in enumerate(v.num):
                acc[k] += c * f
        total = total + CycloNum._make(n, acc, den)
    return total
