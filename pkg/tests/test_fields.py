import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from codegree_lab.fields import (charpoly_mod, field, is_prime, nullspace_mod, p_part,
                                 prime_power, primitive_root, roots_mod)


def test_primes_and_powers():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_power(27) == (3, 3) and prime_power(6) is None and prime_power(1) is None
    assert p_part(5616, 3) == 27
    for p in (3, 7, 11, 101):
        g = primitive_root(p)
        assert len({pow(g, k, p) for k in range(p - 1)}) == p - 1


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 25, 27])
def test_field_axioms(q):
    F = field(q)
    els = list(F.elements())
    for a, b, c in itertools.product(els[:6], repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    gen = F.primitive_element
    assert len({F.pow(gen, k) for k in range(q - 1)}) == q - 1
    p = prime_power(q)[0]
    assert all(F.frobenius(a) == F.pow(a, p) for a in els)


def _det_mod(M, p):
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total % p


@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(0, 12), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_against_determinant(rows):
    p = 13
    A = np.array(rows, dtype=np.int64)
    poly = charpoly_mod(A, p)
    n = len(rows)
    assert poly[-1] == 1 and len(poly) == n + 1
    for x in range(p):
        M = [[(x * (i == j) - rows[i][j]) % p for j in range(n)] for i in range(n)]
        assert sum(c * x ** k for k, c in enumerate(poly)) % p == _det_mod(M, p)


def test_roots_and_nullspace():
    p = 31
    assert roots_mod([6, -5 % p, 1], p) == [2, 3]
    A = np.array([[1, 2, 3], [2, 4, 6]], dtype=np.int64)
    N = nullspace_mod(A, p)
    assert N.shape[0] == 2
    assert not ((A @ N.T) % p).any()
