"""Constructors for the groups the checks run on.

Every group is named by a :class:`GroupSpec`; its canonical string is the DSL
form accepted by :func:`codegree_lab.dsl.parse_spec`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .fields import field as gf, prime_power
from .perm import PermGroup, Permutation

PROJECTIVE_CAP = 2 ** 16
INT_CTORS = ("Sym", "Alt", "Cyc", "Dih", "PSL2", "PGL2", "PGammaL2", "SL2", "PSL3")
GROUP_CTORS = ("DP", "Wr")


class SpecError(ValueError):
    """Inadmissible constructor or parameter."""


@dataclass(frozen=True)
class GroupSpec:
    ctor: str
    args: tuple = ()
    # Perm only: degree and generators as tuples of cycles
    perm_degree: int = 0
    perm_gens: tuple = ()

    def __str__(self) -> str:
        if self.ctor == "Perm":
            gens = ", ".join("".join("(" + " ".join(map(str, c)) + ")" for c in g) or "()"
                             for g in self.perm_gens)
            return f"Perm({self.perm_degree}; {gens})"
        return f"{self.ctor}({','.join(str(a) for a in self.args)})"


def _check_int(spec: GroupSpec, lo: int = 1) -> int:
    if len(spec.args) != 1 or not isinstance(spec.args[0], int):
        raise SpecError(f"{spec.ctor} takes one integer argument")
    n = spec.args[0]
    if n < lo:
        raise SpecError(f"{spec.ctor}({n}): parameter must be at least {lo}")
    return n


def _check_q(spec: GroupSpec) -> int:
    q = _check_int(spec, 2)
    if prime_power(q) is None:
        raise SpecError(f"{q} is not a prime power")
    if q > PROJECTIVE_CAP:
        raise SpecError(f"q = {q} is above the field-table limit {PROJECTIVE_CAP}")
    return q


def validate(spec: GroupSpec) -> None:
    """Raise SpecError if any parameter is out of range."""
    c = spec.ctor
    if c in ("Sym", "Alt", "Cyc"):
        _check_int(spec, 1)
    elif c == "Dih":
        _check_int(spec, 3)
    elif c in ("PSL2", "PGL2", "PGammaL2"):
        _check_q(spec)
    elif c == "SL2":
        q = _check_q(spec)
        if prime_power(q)[0] != 2:
            raise SpecError(f"SL2({q}): q must be a power of 2 (faithful on the projective line)")
    elif c == "PSL3":
        q = _check_q(spec)
        if q > 4:
            raise SpecError(f"PSL3({q}): only q <= 4 is within desk-scale caps")
    elif c in GROUP_CTORS:
        if len(spec.args) != 2 or not all(isinstance(a, GroupSpec) for a in spec.args):
            raise SpecError(f"{c} takes two group arguments")
        for a in spec.args:
            validate(a)
    elif c == "Perm":
        if spec.perm_degree < 1:
            raise SpecError("Perm degree must be positive")
        for g in spec.perm_gens:
            try:
                Permutation.from_cycles(spec.perm_degree, [list(cy) for cy in g])
            except ValueError as exc:
                raise SpecError(f"Perm generator: {exc}") from None
    else:
        raise SpecError(f"unknown constructor {c!r}")


# -- elementary families -----------------------------------------------------

def symmetric(n: int) -> PermGroup:
    if n < 3:
        gens = [Permutation.from_cycles(n, [[0, 1]])] if n == 2 else []
        return PermGroup(gens, degree=n)
    return PermGroup([Permutation.from_cycles(n, [[0, 1]]),
                      Permutation.from_cycles(n, [list(range(n))])], degree=n)


def alternating(n: int) -> PermGroup:
    gens = [Permutation.from_cycles(n, [[0, 1, i]]) for i in range(2, n)]
    return PermGroup(gens, degree=n)


def cyclic(n: int) -> PermGroup:
    gens = [Permutation.from_cycles(n, [list(range(n))])] if n > 1 else []
    return PermGroup(gens, degree=n)


def dihedral(n: int) -> PermGroup:
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(-i) % n for i in range(n)])
    return PermGroup([rot, ref], degree=n)


def direct_product(A: PermGroup, B: PermGroup) -> PermGroup:
    d = A.degree + B.degree
    gens = [Permutation(list(a.images) + [x + A.degree for x in range(B.degree)])
            for a in A.generators]
    gens += [Permutation(list(range(A.degree)) + [x + A.degree for x in b.images])
             for b in B.generators]
    return PermGroup(gens, degree=d)


def wreath_product(G: PermGroup, P: PermGroup) -> PermGroup:
    """``G wr P`` acting imprimitively on ``P.degree`` blocks of ``G.degree`` points."""
    d, n = G.degree, P.degree
    gens = []
    for block in range(n):
        for g in G.generators:
            imgs = list(range(n * d))
            for x in range(d):
                imgs[block * d + x] = block * d + g.images[x]
            gens.append(Permutation(imgs))
    for s in P.generators:
        gens.append(Permutation([s.images[i] * d + x for i in range(n) for x in range(d)]))
    return PermGroup(gens, degree=n * d)


# -- projective line -----------------------------------------------------------

class ProjectiveLine:
    """The ``q + 1`` points of PG(1, q): index ``x`` is ``(x : 1)``, index ``q`` is ``(1 : 0)``."""

    def __init__(self, q: int):
        self.F = gf(q)
        self.q = q

    def matrix_perm(self, a: int, b: int, c: int, d: int) -> Permutation:
        """Right action ``(x, y) -> (x, y) [[a, b], [c, d]]``."""
        F, q = self.F, self.q
        imgs = []
        for x in range(q):
            num = F.add(F.mul(x, a), c)
            den = F.add(F.mul(x, b), d)
            imgs.append(q if den == 0 else F.mul(num, F.inv(den)))
        imgs.append(q if b == 0 else F.mul(a, F.inv(b)))
        return Permutation(imgs)

    def frobenius(self) -> Permutation:
        return Permutation([self.F.frobenius(x) for x in range(self.q)] + [self.q])

    def sl2_generators(self) -> list[Permutation]:
        F = self.F
        w = F.primitive_element
        one, minus = 1, F.neg(1)
        gens = [self.matrix_perm(one, one, 0, one),
                self.matrix_perm(one, w, 0, one),
                self.matrix_perm(0, one, minus, 0)]
        if self.q > 3:
            gens.append(self.matrix_perm(w, 0, 0, F.inv(w)))
        return gens

    def diagonal(self) -> Permutation:
        """``diag(w, 1)``: generates PGL modulo PSL when q is odd."""
        return self.matrix_perm(self.F.primitive_element, 0, 0, 1)


def psl2(q: int) -> PermGroup:
    return PermGroup(ProjectiveLine(q).sl2_generators(), degree=q + 1)


def pgl2(q: int) -> PermGroup:
    L = ProjectiveLine(q)
    return PermGroup(L.sl2_generators() + [L.diagonal()], degree=q + 1)


def pgammal2(q: int) -> PermGroup:
    L = ProjectiveLine(q)
    return PermGroup(L.sl2_generators() + [L.diagonal(), L.frobenius()], degree=q + 1)


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // math.gcd(2, q - 1)


# -- projective plane ------------------------------------------------------------

class ProjectivePlane:
    """Points of PG(2, q) as normalized row vectors (first non-zero coordinate 1)."""

    def __init__(self, q: int):
        self.F = F = gf(q)
        self.q = q
        pts = []
        for v in ((1, a, b) for a in range(q) for b in range(q)):
            pts.append(v)
        pts += [(0, 1, b) for b in range(q)]
        pts.append((0, 0, 1))
        self.points = pts
        self.index = {v: i for i, v in enumerate(pts)}

    def normalize(self, v) -> tuple:
        F = self.F
        for c in v:
            if c:
                inv = F.inv(c)
                return tuple(F.mul(x, inv) for x in v)
        raise ValueError("zero vector")

    def apply(self, v, A) -> tuple:
        F = self.F
        return tuple(
            _fsum(F, (F.mul(v[i], A[i][j]) for i in range(3))) for j in range(3))

    def matrix_perm(self, A) -> Permutation:
        return Permutation([self.index[self.normalize(self.apply(v, A))] for v in self.points])

    def transvections(self) -> list:
        F = self.F
        mats = []
        ts = [F.pow(F.primitive_element, k) for k in range(F.f)] if F.q > 2 else [1]
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                for t in ts:
                    A = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
                    A[i][j] = t
                    mats.append(A)
        return mats

    def inverse_transpose(self, A):
        F = self.F
        # adjugate transpose over F; determinant 1 for transvections
        def m(r, c):
            rows = [x for x in range(3) if x != r]
            cols = [x for x in range(3) if x != c]
            a, b = A[rows[0]][cols[0]], A[rows[0]][cols[1]]
            cc, d = A[rows[1]][cols[0]], A[rows[1]][cols[1]]
            val = F.sub(F.mul(a, d), F.mul(b, cc))
            return val if (r + c) % 2 == 0 else F.neg(val)
        return [[m(r, c) for c in range(3)] for r in range(3)]


def _fsum(F, vals) -> int:
    acc = 0
    for v in vals:
        acc = F.add(acc, v)
    return acc


def psl3(q: int) -> PermGroup:
    P = ProjectivePlane(q)
    return PermGroup([P.matrix_perm(A) for A in P.transvections()], degree=len(P.points))


def psl3_with_graph_automorphism(q: int) -> tuple[PermGroup, PermGroup]:
    """PSL(3, q) and PSL(3, q) extended by the inverse-transpose automorphism.

    Both act on points and lines of PG(2, q) together; the polarity
    ``point v <-> line v-perp`` realizes the graph automorphism.
    """
    P = ProjectivePlane(q)
    n = len(P.points)
    gens = []
    for A in P.transvections():
        pt = P.matrix_perm(A).images
        ln = P.matrix_perm(P.inverse_transpose(A)).images
        gens.append(Permutation(list(pt) + [n + x for x in ln]))
    polarity = Permutation([n + i for i in range(n)] + list(range(n)))
    S = PermGroup(gens, degree=2 * n)
    A = PermGroup(gens + [polarity], degree=2 * n)
    return A, PermGroup(S.generators, degree=2 * n, parent=A)


# -- dispatch ------------------------------------------------------------------------

def build(spec: GroupSpec) -> PermGroup:
    validate(spec)
    return _build_cached(spec)


@lru_cache(maxsize=64)
def _build_cached(spec: GroupSpec) -> PermGroup:
    c = spec.ctor
    if c == "Perm":
        gens = [Permutation.from_cycles(spec.perm_degree, [list(cy) for cy in g])
                for g in spec.perm_gens]
        G = PermGroup(gens, degree=spec.perm_degree)
    elif c in GROUP_CTORS:
        A, B = (build(a) for a in spec.args)
        G = direct_product(A, B) if c == "DP" else wreath_product(A, B)
    else:
        n = spec.args[0]
        G = {"Sym": symmetric, "Alt": alternating, "Cyc": cyclic, "Dih": dihedral,
             "PSL2": psl2, "SL2": psl2, "PGL2": pgl2, "PGammaL2": pgammal2,
             "PSL3": psl3}[c](n)
    G.name = str(spec)
    return G


def expected_order(spec: GroupSpec) -> int:
    """Closed-form order of a spec (independent of the stabilizer chain)."""
    c = spec.ctor
    if c in GROUP_CTORS:
        a, b = (expected_order(x) for x in spec.args)
        if c == "DP":
            return a * b
        return a ** degree_of(spec.args[1]) * b
    if c == "Perm":
        raise SpecError("no closed form for explicit generators")
    n = spec.args[0]
    if c == "Sym":
        return math.factorial(n)
    if c == "Alt":
        return max(1, math.factorial(n) // 2)
    if c == "Cyc":
        return n
    if c == "Dih":
        return 2 * n
    if c in ("PSL2", "SL2"):
        return psl2_order(n)
    if c == "PGL2":
        return n * (n * n - 1)
    if c == "PGammaL2":
        return n * (n * n - 1) * prime_power(n)[1]
    if c == "PSL3":
        return n ** 3 * (n ** 2 - 1) * (n ** 3 - 1) // math.gcd(3, n - 1)
    raise SpecError(c)


def degree_of(spec: GroupSpec) -> int:
    c = spec.ctor
    if c == "Perm":
        return spec.perm_degree
    if c == "DP":
        return degree_of(spec.args[0]) + degree_of(spec.args[1])
    if c == "Wr":
        return degree_of(spec.args[0]) * degree_of(spec.args[1])
    n = spec.args[0]
    if c in ("Sym", "Alt", "Cyc", "Dih"):
        return n
    if c == "PSL3":
        return n * n + n + 1
    return n + 1


# -- overgroups realizing automorphisms ------------------------------------------------

@dataclass
class Overgroup:
    """An overgroup ``A`` of ``S`` on the same points, with named outer generators."""
    overgroup: PermGroup
    subgroup: PermGroup
    outer: dict = field(default_factory=dict)
    realizes_full_aut: bool = True
    note: str = ""


def projective_overgroup(q: int, kind: str = "PGammaL2") -> Overgroup:
    """PSL(2,q) inside PGL(2,q) or PGammaL(2,q), with the diagonal and field automorphisms."""
    L = ProjectiveLine(q)
    sl = L.sl2_generators()
    outer = {}
    if q % 2:
        outer["diagonal"] = L.diagonal()
    if prime_power(q)[1] > 1 and kind == "PGammaL2":
        outer["field"] = L.frobenius()
    A = PermGroup(sl + list(outer.values()), degree=q + 1, name=f"{kind}({q})")
    S = PermGroup(sl, degree=q + 1, parent=A, name=f"PSL2({q})")
    return Overgroup(A, S, outer)


def automorphism_overgroup(spec: GroupSpec) -> Overgroup | None:
    """An overgroup inducing all of Aut(S) on the simple group named by ``spec``.

    ``Alt(6)`` is realized as PSL(2,9) on 10 points so that PGammaL(2,9) can act.
    Returns None when no construction is available.
    """
    c, n = spec.ctor, (spec.args[0] if spec.args else None)
    if c == "Alt" and n is not None and n >= 5 and n != 6:
        S = alternating(n)
        A = symmetric(n)
        S = PermGroup(S.generators, degree=n, parent=A, name=str(spec))
        return Overgroup(A, S, {"transposition": Permutation.from_cycles(n, [[0, 1]])})
    if c == "Alt" and n == 6:
        og = projective_overgroup(9)
        og.note = "Alt(6) realized as PSL2(9)"
        return og
    if c in ("PSL2", "SL2"):
        return projective_overgroup(n)
    if c == "PSL3":
        A, S = psl3_with_graph_automorphism(n)
        P = ProjectivePlane(n)
        npts = len(P.points)
        outer = {"graph": Permutation([npts + i for i in range(npts)] + list(range(npts)))}
        full = prime_power(n)[1] == 1 and math.gcd(3, n - 1) == 1
        return Overgroup(A, S, outer, realizes_full_aut=full,
                         note="PSL3 on points and lines")
    return None


# -- the embedding into Aut(S_1) wr Sym(n) ----------------------------------------

@dataclass
class WreathEmbedding:
    """Data of ``g -> (g_1, ..., g_n) sigma_g`` for a monolithic group.

    ``sigma[k]`` and ``components[k]`` belong to ``group.generators[k]``;
    ``image`` is the faithful copy acting on ``n * |S_1|`` points ``(i, s)``.
    """
    group: PermGroup
    socle: PermGroup
    factors: list[PermGroup]
    transversal: list[Permutation]
    sigma: list[tuple[int, ...]]
    components: list[list[Permutation]]
    image: PermGroup

    @property
    def n(self) -> int:
        return len(self.factors)

    def factor_permutation(self, g: Permutation) -> tuple[int, ...]:
        return _factor_action(self.factors, g)

    def check(self) -> None:
        """Membership of every component in N_G(S_1), order of the image, sigma homomorphism."""
        S1 = self.factors[0]
        for comps in self.components:
            for gi in comps:
                if not self.group.contains(gi) or not _normalizes(gi, S1):
                    raise ValueError("component outside the normalizer of the first factor")
        if self.image.order != self.group.order:
            raise ValueError("image order differs; the embedding is not injective")
        gens = self.group.generators
        for a in gens:
            for b in gens:
                sa, sb = self.factor_permutation(a), self.factor_permutation(b)
                if self.factor_permutation(a * b) != tuple(sb[sa[i]] for i in range(self.n)):
                    raise ValueError("factor action is not a homomorphism")


def _normalizes(g: Permutation, H: PermGroup) -> bool:
    return all(H.contains(h.conj(g)) for h in H.generators)


def _factor_action(factors: list[PermGroup], g: Permutation) -> tuple[int, ...]:
    out = []
    for S in factors:
        img = [h.conj(g) for h in S.generators]
        hits = [j for j, T in enumerate(factors) if all(T.contains(x) for x in img)]
        if len(hits) != 1:
            raise ValueError("element does not permute the simple factors")
        out.append(hits[0])
    return tuple(out)


def wreath_embedding(G: PermGroup, M: PermGroup | None = None) -> WreathEmbedding:
    from .classes import _conjugation_index_map
    from .structure import is_simple, minimal_normal_subgroups
    if M is None:
        mins = minimal_normal_subgroups(G)
        if len(mins) != 1:
            raise ValueError(f"group has {len(mins)} minimal normal subgroups, expected one")
        M = mins[0]
    factors = [PermGroup(S.generators, degree=G.degree, parent=G)
               for S in minimal_normal_subgroups(M)]
    if any(S.is_abelian() for S in factors) or any(not is_simple(S) for S in factors):
        raise ValueError("minimal normal subgroup is not a product of non-abelian simple groups")
    if len({S.order for S in factors}) != 1 or math.prod(S.order for S in factors) != M.order:
        raise ValueError("factors are not isomorphic or do not fill the minimal normal subgroup")
    n = len(factors)
    sigma = [_factor_action(factors, g) for g in G.generators]
    transversal: list[Permutation | None] = [G.identity] + [None] * (n - 1)
    queue = [0]
    for i in queue:
        for g, s in zip(G.generators, sigma):
            j = s[i]
            if transversal[j] is None:
                transversal[j] = transversal[i] * g
                queue.append(j)
    if any(t is None for t in transversal):
        raise ValueError("the group does not permute the simple factors transitively")
    components = [[transversal[i] * g * ~transversal[s[i]] for i in range(n)]
                  for g, s in zip(G.generators, sigma)]

    S1 = factors[0]
    enum = S1.enumeration()
    size = len(enum)
    image_gens = []
    for s, comps in zip(sigma, components):
        images = [0] * (n * size)
        for i, gi in enumerate(comps):
            moved = _conjugation_index_map(enum, gi)
            for x in range(size):
                images[i * size + x] = s[i] * size + int(moved[x])
        image_gens.append(Permutation(images))
    image = PermGroup(image_gens, degree=n * size)
    emb = WreathEmbedding(G, M, factors, transversal, sigma, components, image)
    emb.check()
    return emb


def class_fusion(H: PermGroup, G: PermGroup):
    from .classes import fuse
    return fuse(H, G)
