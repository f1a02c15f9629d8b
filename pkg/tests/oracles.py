"""Independent brute-force and hand-computed references for the tests."""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

SQRT5 = math.sqrt(5)
GOLD = (1 + SQRT5) / 2
GOLD_BAR = (1 - SQRT5) / 2


def compose(p: tuple, q: tuple) -> tuple:
    """Apply p first, then q."""
    return tuple(q[p[x]] for x in range(len(p)))


def inverse(p: tuple) -> tuple:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def closure(gens: list[tuple], degree: int) -> set[tuple]:
    ident = tuple(range(degree))
    seen, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def element_order(p: tuple) -> int:
    ident, x, k = tuple(range(len(p))), p, 1
    while x != ident:
        x, k = compose(x, p), k + 1
    return k


def classes(elements: set[tuple]) -> list[frozenset]:
    left, out = set(elements), []
    while left:
        x = next(iter(left))
        cls = frozenset(compose(compose(inverse(g), x), g) for g in elements)
        out.append(cls)
        left -= cls
    return out


def is_normal(sub: set[tuple], elements: set[tuple]) -> bool:
    return all(compose(compose(inverse(g), h), g) in sub for g in elements for h in sub)


def normal_subgroups(elements: set[tuple], degree: int) -> list[frozenset]:
    """Every normal subgroup is generated by the classes it contains."""
    cls = classes(elements)
    found = set()
    for mask in range(1 << len(cls)):
        gens = [x for i, c in enumerate(cls) if mask >> i & 1 for x in c]
        H = frozenset(closure(gens, degree))
        found.add(H)
    return sorted(found, key=len)


def commutator_subgroup(A: set[tuple], B: set[tuple], degree: int) -> set[tuple]:
    gens = {compose(compose(inverse(a), inverse(b)), compose(a, b)) for a in A for b in B}
    return closure(list(gens), degree)


def is_nilpotent(H: set[tuple], degree: int) -> bool:
    cur = set(H)
    while len(cur) > 1:
        nxt = commutator_subgroup(cur, H, degree)
        if nxt == cur:
            return False
        cur = nxt
    return True


def fitting_order(elements: set[tuple], degree: int) -> int:
    nil = [N for N in normal_subgroups(elements, degree) if is_nilpotent(N, degree)]
    return max(len(N) for N in nil)


# Hand tables.  Columns are keyed by (element order, class size); rows are lists of complex values.

SYM3 = {
    "columns": [(1, 1), (2, 3), (3, 2)],
    "rows": [[1, 1, 1], [1, -1, 1], [2, 0, -1]],
}

SYM4 = {
    "columns": [(1, 1), (2, 3), (2, 6), (3, 8), (4, 6)],
    "rows": [[1, 1, 1, 1, 1], [1, 1, -1, 1, -1], [2, 2, 0, -1, 0],
             [3, -1, 1, 0, -1], [3, -1, -1, 0, 1]],
}

ALT5 = {
    "columns": [(1, 1), (2, 15), (3, 20), (5, 12), (5, 12)],
    "rows": [[1, 1, 1, 1, 1], [3, -1, 0, GOLD, GOLD_BAR], [3, -1, 0, GOLD_BAR, GOLD],
             [4, 0, 1, -1, -1], [5, 1, -1, 0, 0]],
}


def codegree_multiset(table: dict) -> list[int]:
    order = sum(s for _, s in table["columns"])
    out = []
    for row in table["rows"]:
        ker = sum(s for (_, s), v in zip(table["columns"], row) if abs(v - row[0]) < 1e-9)
        out.append(Fraction(order, ker) / row[0])
    return sorted(int(c) for c in out)


def rows_match(computed: list[list[complex]], hand: list[list[float]], tol: float = 1e-9) -> bool:
    """Row-for-row equality up to reordering of rows."""
    remaining = [list(r) for r in hand]
    for row in computed:
        hit = next((k for k, h in enumerate(remaining)
                    if all(cmath.isclose(a, b, abs_tol=tol) for a, b in zip(row, h))), None)
        if hit is None:
            return False
        remaining.pop(hit)
    return not remaining
