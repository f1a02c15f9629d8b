"""Exact character tables and the character theory built on them."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .classes import ClassData, ClassFusion, conjugacy_classes, fuse
from .cyclo import CycloNum, cyclo_sum, embedding_matrix, galois_matrix, reduction_matrix, totient
from .dixon import DEFAULT_CLASS_LIMIT, CharacterTableError, default_prime, dixon_prime, dixon_schneider
from .perm import DEFAULT_CAP, PermGroup, Permutation
from .structure import stabilizer_of_action

FORMAT_VERSION = 1

ClassFunction = Sequence[CycloNum]


@dataclass
class CharacterTable:
    """Irreducible characters, one row per character and one column per class.

    Values in column ``j`` live in the cyclotomic field of conductor
    ``element_orders[j]``.  Rows are in canonical order: the principal
    character first, then by degree and value columns.
    """
    spec: str
    classes: ClassData
    irreducibles: list[list[CycloNum]]
    prime: int = field(default=0, compare=False)
    group: PermGroup | None = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> int:
        return self.classes.order

    @property
    def exponent(self) -> int:
        return self.classes.exponent

    @property
    def degrees(self) -> list[int]:
        return [row[0].to_rational_integer() for row in self.irreducibles]

    def __len__(self) -> int:
        return len(self.irreducibles)

    def row(self, i: int) -> list[CycloNum]:
        return self.irreducibles[i]

    def index_of_row(self, values: ClassFunction) -> int:
        for i, row in enumerate(self.irreducibles):
            if all(a == b for a, b in zip(row, values)):
                return i
        raise KeyError("class function is not an irreducible character")

    def check(self) -> None:
        check_table(self)

    def to_json(self) -> dict:
        cd = self.classes
        return {
            "format": FORMAT_VERSION,
            "spec": self.spec,
            "order": self.order,
            "exponent": self.exponent,
            "classes": [{"rep_cycles": str(r), "size": s, "element_order": o}
                        for r, s, o in zip(cd.reps, cd.sizes, cd.element_orders)],
            "power_maps": cd.power_maps,
            "inverse_map": cd.inverse_map,
            "irreducibles": [[v.to_json() for v in row] for row in self.irreducibles],
            "degrees": self.degrees,
            "codegrees": [rec.codegree for rec in codegrees(self)],
        }

    @classmethod
    def from_json(cls, data: dict, group: PermGroup | None = None) -> "CharacterTable":
        if data.get("format") != FORMAT_VERSION:
            raise ValueError(f"unsupported table format {data.get('format')!r}")
        classes = data["classes"]
        degree = group.degree if group is not None else _degree_from_cycles(classes)
        cd = ClassData(
            order=int(data["order"]),
            reps=[Permutation.parse(c["rep_cycles"], degree) for c in classes],
            sizes=[int(c["size"]) for c in classes],
            element_orders=[int(c["element_order"]) for c in classes],
            power_maps=[list(map(int, pm)) for pm in data["power_maps"]],
            inverse_map=[int(i) for i in data["inverse_map"]],
        )
        if group is not None:
            cached = conjugacy_classes(group)
            if cached.reps != cd.reps or cached.sizes != cd.sizes:
                raise ValueError("stored classes do not match the group")
            cd = cached
        rows = [[CycloNum.from_json(v) for v in row] for row in data["irreducibles"]]
        return cls(data["spec"], cd, rows, group=group)


def _degree_from_cycles(classes) -> int:
    top = 0
    for c in classes:
        for tok in c["rep_cycles"].replace("(", " ").replace(")", " ").split():
            top = max(top, int(tok) + 1)
    return max(top, 1)


# -- exact checks ---------------------------------------------------------------------

_SAFE = 2 ** 62


def _absmax(A: np.ndarray) -> int:
    return int(np.max(np.abs(A))) if A.size else 0


def _mm(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product over the last axis of ``A``; falls back to Python integers on overflow risk."""
    if A.dtype != object and B.dtype != object and _absmax(A) * _absmax(B) * max(B.shape[0], 1) < _SAFE:
        return np.tensordot(A, B, axes=1)
    return np.tensordot(A.astype(object), B.astype(object), axes=1)


def _outer(spec: str, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    count = A.shape[0] if spec.startswith("c") else 1
    if A.dtype != object and B.dtype != object and _absmax(A) * _absmax(B) * count < _SAFE:
        return np.einsum(spec, A, B)
    return np.einsum(spec, A.astype(object), B.astype(object))


def _fold(T: np.ndarray, n: int) -> np.ndarray:
    """Sum ``T[..., x, y]`` along ``x + y`` and reduce exponents modulo ``n``."""
    phi = T.shape[-1]
    acc = np.zeros(T.shape[:-2] + (n,), dtype=T.dtype)
    for x in range(phi):
        for y in range(phi):
            acc[..., (x + y) % n] += T[..., x, y]
    return _mm(acc, reduction_matrix(n))


def _column_block(T: CharacterTable, j: int, m: int, conj: bool = False) -> np.ndarray:
    """Coordinates of column ``j`` in conductor ``m``, shape ``(rows, phi(m))``."""
    n = T.classes.element_orders[j]
    V = np.array([list(T.irreducibles[i][j].num) for i in range(len(T))], dtype=object)
    if _absmax(V) < 2 ** 31:
        V = V.astype(np.int64)
    if conj:
        V = _mm(V, galois_matrix(n, n - 1 if n > 1 else 1))
    if m != n:
        V = _mm(V, embedding_matrix(n, m))
    return V


def check_table(T: CharacterTable) -> None:
    """Raise CharacterTableError unless every table invariant holds exactly."""
    cd = T.classes
    r = len(cd)
    G = cd.order
    if len(T) != r:
        raise CharacterTableError(f"{len(T)} characters for {r} classes")
    for i, row in enumerate(T.irreducibles):
        for j, v in enumerate(row):
            if v.conductor != cd.element_orders[j] or v.den != 1:
                raise CharacterTableError(f"value ({i}, {j}) is not an integer in its field")
    degs = T.degrees
    if sum(d * d for d in degs) != G:
        raise CharacterTableError("sum of squared degrees differs from the group order")
    if any(G % d for d in degs):
        raise CharacterTableError("a degree does not divide the group order")

    # first orthogonality, all pairs of rows at once
    e = cd.exponent
    total = np.zeros((r, r, totient(e)), dtype=object)
    for j in range(r):
        n = cd.element_orders[j]
        V = _column_block(T, j, n)
        W = _column_block(T, j, n, conj=True)
        prod = _fold(_outer("ix,jy->ijxy", V, W), n)
        total = total + _mm(prod, embedding_matrix(n, e)) * cd.sizes[j]
    want = np.zeros_like(total)
    want[:, :, 0] = np.eye(r, dtype=np.int64) * G
    if not np.array_equal(total, want):
        raise CharacterTableError("row orthogonality fails")

    # second orthogonality, all pairs of columns grouped by conductor
    by_n: dict[int, list[int]] = {}
    for j, n in enumerate(cd.element_orders):
        by_n.setdefault(n, []).append(j)
    for a, cols_a in by_n.items():
        for b, cols_b in by_n.items():
            m = math.lcm(a, b)
            A = np.stack([_column_block(T, j, m) for j in cols_a], axis=1)
            B = np.stack([_column_block(T, j, m, conj=True) for j in cols_b], axis=1)
            S = _fold(_outer("cix,cjy->ijxy", A, B), m)
            for x, i in enumerate(cols_a):
                for y, k in enumerate(cols_b):
                    want_val = cd.centralizer_order(i) if i == k else 0
                    if S[x, y, 0] != want_val or any(S[x, y, 1:]):
                        raise CharacterTableError(f"column orthogonality fails at ({i}, {k})")


# -- construction ---------------------------------------------------------------------

def _row_key(row: list[CycloNum]) -> tuple:
    principal = all(v == 1 for v in row)
    return (row[0].to_rational_integer(), 0 if principal else 1, tuple(v.sort_key() for v in row))


def character_table(G: PermGroup, prime: int | None = None, cap: int = DEFAULT_CAP,
                    class_limit: int = DEFAULT_CLASS_LIMIT, check: bool = True) -> CharacterTable:
    """Exact table of ``G``, cached on the group per prime."""
    memo = G.__dict__.setdefault("_tables", {})
    if prime is None:
        cd = conjugacy_classes(G, cap)
        prime = default_prime(G.order, cd.exponent)
    if prime in memo:
        return memo[prime]
    cd, _, p, rows = dixon_schneider(G, prime=prime, cap=cap, class_limit=class_limit)
    rows.sort(key=_row_key)
    T = CharacterTable(G.name or repr(G), cd, rows, prime=p, group=G)
    if check:
        check_table(T)
    memo[prime] = T
    return T


def alternative_prime(G: PermGroup, cap: int = DEFAULT_CAP) -> int:
    """The second smallest admissible Dixon prime for ``G``."""
    cd = conjugacy_classes(G, cap)
    first = dixon_prime(G.order, cd.exponent)
    return dixon_prime(G.order, cd.exponent, after=first)


# -- class functions ----------------------------------------------------------------------

def inner_product(T: CharacterTable, chi: ClassFunction, psi: ClassFunction,
                  strict: bool = True) -> Fraction | int:
    """``(1/|G|) sum_i |C_i| chi(g_i) psi(g_i^-1)``.

    With ``strict`` the result must be a non-negative integer (as for characters).
    """
    cd = T.classes
    terms = [chi[i] * psi[cd.inverse_map[i]] * cd.sizes[i] for i in range(len(cd))]
    total = cyclo_sum(terms)
    try:
        value = total.to_rational() / cd.order
    except ValueError:
        raise CharacterTableError("inner product is not rational") from None
    if strict:
        if value.denominator != 1 or value < 0:
            raise CharacterTableError(f"inner product {value} is not a non-negative integer")
        return int(value)
    return value


def regular_character(T: CharacterTable) -> list[CycloNum]:
    cd = T.classes
    return [CycloNum.from_int(cd.order if i == 0 else 0, cd.element_orders[i]) for i in range(len(cd))]


def permutation_character(G: PermGroup, cap: int = DEFAULT_CAP) -> list[CycloNum]:
    """Fixed-point counts of the natural action."""
    cd = conjugacy_classes(G, cap)
    return [CycloNum.from_int(sum(1 for x in range(G.degree) if r.images[x] == x), o)
            for r, o in zip(cd.reps, cd.element_orders)]


def restrict(chi: ClassFunction, fusion: ClassFusion) -> list[CycloNum]:
    return [chi[k] for k in fusion.mapping]


def induce(theta: ClassFunction, fusion: ClassFusion) -> list[CycloNum]:
    """``theta^G(g_k) = |C_G(g_k)| sum_{i -> k} theta(h_i) / |C_H(h_i)|``."""
    H, G = fusion.source, fusion.target
    out = []
    for k in range(len(G)):
        parts = [theta[i] / H.centralizer_order(i) for i, kk in enumerate(fusion.mapping) if kk == k]
        n = G.element_orders[k]
        value = cyclo_sum(parts, n) * G.centralizer_order(k) if parts else CycloNum.from_int(0, n)
        if value.den != 1:
            raise CharacterTableError("induced class function is not integral")
        out.append(value)
    return out


# -- codegrees ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CodegreeRecord:
    index: int
    degree: int
    kernel_classes: tuple[int, ...]
    kernel_order: int
    codegree: int


def kernel_classes(T: CharacterTable, i: int) -> tuple[int, ...]:
    row = T.irreducibles[i]
    d = row[0]
    return tuple(j for j, v in enumerate(row) if v == d)


def codegrees(T: CharacterTable) -> list[CodegreeRecord]:
    cd = T.classes
    out = []
    for i, row in enumerate(T.irreducibles):
        deg = row[0].to_rational_integer()
        ker = kernel_classes(T, i)
        korder = sum(cd.sizes[j] for j in ker)
        if cd.order % korder:
            raise CharacterTableError(f"kernel order {korder} does not divide {cd.order}")
        index = cd.order // korder
        if index % deg:
            raise CharacterTableError(f"degree {deg} does not divide the kernel index {index}")
        out.append(CodegreeRecord(i, deg, ker, korder, index // deg))
    return out


def kernel_subgroup(T: CharacterTable, i: int) -> PermGroup:
    """``ker chi_i`` as a subgroup, generated by its class representatives' conjugates."""
    from .structure import normal_closure
    G = T.group
    return normal_closure(G, [T.classes.reps[j] for j in kernel_classes(T, i)])


# -- automorphisms and Clifford theory ---------------------------------------------------

def _conjugation_fusion(T: CharacterTable, a: Permutation) -> list[int]:
    """``pi[j]`` is the class of ``a g_j a^-1``."""
    G = T.group
    if not all(G.contains(g.conj(a)) for g in G.generators):
        raise CharacterTableError("the element does not normalize the group")
    enum = G.enumeration()
    imgs = np.array([r.conj(~a).images for r in T.classes.reps])
    return [int(c) for c in T.classes.class_of[enum.index_of(imgs)]]


def aut_action(T: CharacterTable, a: Permutation) -> tuple[int, ...]:
    """Row permutation induced by conjugation with ``a``: ``chi^a(g) = chi(a g a^-1)``.

    Entry ``i`` is the index of ``chi_i^a``.
    """
    pi = _conjugation_fusion(T, a)
    perm = []
    for row in T.irreducibles:
        perm.append(T.index_of_row([row[pi[j]] for j in range(len(row))]))
    if sorted(perm) != list(range(len(T))):
        raise CharacterTableError("conjugation did not permute the irreducibles")
    return tuple(perm)


def inertia_group(G: PermGroup, TM: CharacterTable, lam: int) -> PermGroup:
    """Stabilizer in ``G`` of ``lam`` under conjugation (``TM`` is the table of a normal subgroup)."""
    action = {g: aut_action(TM, g) for g in G.generators}
    return stabilizer_of_action(G, action, lam)


@dataclass(frozen=True)
class ExtensionResult:
    exists: bool
    index: int | None
    candidates_scanned: int


def has_extension(I: PermGroup, TM: CharacterTable, lam: int, TI: CharacterTable | None = None,
                  cap: int = DEFAULT_CAP) -> ExtensionResult:
    """Search ``Irr(I)`` for a character restricting to ``lam`` on the normal subgroup of ``TM``."""
    M = TM.group
    if TI is None:
        TI = character_table(I, cap=cap)
    fusion = fuse(M, I, cap)
    target = TM.irreducibles[lam]
    d = target[0].to_rational_integer()
    scanned = 0
    for i, row in enumerate(TI.irreducibles):
        if row[0].to_rational_integer() != d:
            continue
        scanned += 1
        if all(a == b for a, b in zip(restrict(row, fusion), target)):
            return ExtensionResult(True, i, scanned)
    return ExtensionResult(False, None, scanned)


def product_character(T_factors: Sequence[CharacterTable], rows: Sequence[int],
                      TM: CharacterTable, factor_projections) -> list[CycloNum]:
    """Value row of an outer tensor product on the classes of ``TM``.

    ``factor_projections(g)`` splits an element of the product into factor elements.
    """
    values = []
    for j, rep in enumerate(TM.classes.reps):
        parts = factor_projections(rep)
        v = CycloNum.from_int(1)
        for Tf, r, x in zip(T_factors, rows, parts):
            cls = int(Tf.classes.class_of[Tf.group.enumeration().index(x)])
            v = v * Tf.irreducibles[r][cls]
        values.append(v.coerce(TM.classes.element_orders[j]))
    return values
