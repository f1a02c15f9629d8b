"""Codegree divisibility checks on whole groups, simple groups and monolithic groups."""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .builders import Overgroup, automorphism_overgroup, build, projective_overgroup, wreath_embedding
from .chartab import (CharacterTable, aut_action, character_table, codegrees, has_extension,
                      inertia_group, restrict)
from .classes import conjugacy_classes, fuse
from .dixon import DEFAULT_CLASS_LIMIT, CharacterTableError
from .fields import prime_power
from .perm import DEFAULT_CAP, PermGroup, Permutation
from .structure import fitting_subgroup, is_simple, is_solvable, minimal_normal_subgroups, socle

log = logging.getLogger(__name__)


class HypothesisError(ValueError):
    """The group does not satisfy the hypotheses of the requested check."""


# -- the conjecture ------------------------------------------------------------------------

@dataclass
class QianReport:
    spec: str
    element_orders: list[int]
    witnesses: dict[int, tuple[int, int, int]]  # order -> (character, degree, codegree)
    failures: list[int]
    flags: list[str] = field(default_factory=list)
    table: CharacterTable | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = {
            "spec": self.spec,
            "verdict": "pass" if self.passed else "fail",
            "element_orders": self.element_orders,
            "witnesses": [{"order": o, "character": c, "degree": d, "codegree": cod}
                          for o, (c, d, cod) in sorted(self.witnesses.items())],
            "failures": self.failures,
            "flags": self.flags,
        }
        if not self.passed and self.table is not None:
            # a counterexample claim always ships the full table for audit
            out["table"] = self.table.to_json()
        return out


def qian_check(T: CharacterTable, flags: list[str] | None = None) -> QianReport:
    """For each element order ``d > 1``, the first character (by degree) with ``d | cod``."""
    recs = codegrees(T)
    orders = sorted(set(T.classes.element_orders))
    witnesses, failures = {}, []
    for d in orders:
        if d == 1:
            continue
        hit = next((r for r in recs if r.codegree % d == 0), None)
        if hit is None:
            failures.append(d)
        else:
            witnesses[d] = (hit.index, hit.degree, hit.codegree)
    return QianReport(T.spec, orders, witnesses, failures, list(flags or []), table=T)


# -- simple groups: pairs and single elements ------------------------------------------------

def _require_simple(S: PermGroup) -> None:
    if S.is_abelian() or not is_simple(S):
        raise HypothesisError(f"{S.name or S!r} is not a non-abelian simple group")


def is_psl2_odd_power_of_3(order: int) -> bool:
    """Whether a simple group of this order is PSL(2, 3^f) with f odd and at least 3.

    PSL(2, q) is determined by its order among simple groups once q > 9.
    """
    f, q = 3, 27
    while q * (q * q - 1) // 2 <= order:
        if q * (q * q - 1) // 2 == order:
            return True
        f += 2
        q *= 9
    return False


@dataclass
class InvarianceData:
    invariant: list[int]
    extendable: dict[int, int | None]  # character -> extending row of the overgroup, if checked
    level: str  # "extension" or "invariance"
    overgroup_order: int


def invariance_data(og: Overgroup, T: CharacterTable, cap: int = DEFAULT_CAP,
                    class_limit: int = DEFAULT_CLASS_LIMIT) -> InvarianceData:
    """Characters fixed by every outer generator; extendability checked when the overgroup table is affordable."""
    perms = [aut_action(T, a) for a in og.outer.values()]
    invariant = [i for i in range(len(T)) if all(p[i] == i for p in perms)]
    extendable: dict[int, int | None] = {}
    level = "invariance"
    A = og.overgroup
    try:
        TA = character_table(A, cap=cap, class_limit=class_limit)
    except (CharacterTableError, ValueError) as exc:
        log.info("overgroup table unavailable (%s); invariance only", exc)
    else:
        fusion = fuse(T.group, A, cap)
        for i in invariant:
            target = T.irreducibles[i]
            extendable[i] = next((k for k, row in enumerate(TA.irreducibles)
                                  if row[0] == target[0] and restrict(row, fusion) == target), None)
        level = "extension"
    return InvarianceData(invariant, extendable, level, A.order)


@dataclass
class LemmaPairResult:
    spec: str
    exponent: int
    pair: tuple[int, int] | None
    degrees: tuple[int, int] | None
    product: int | None
    verdict: bool
    aut_filter: bool
    candidates: list[int]
    level: str
    extension_pair: tuple[int, int] | None = None
    flags: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def _candidates(T: CharacterTable, og: Overgroup | None, cap: int) -> tuple[list[int], InvarianceData | None]:
    if og is None:
        return list(range(1, len(T))), None
    data = invariance_data(og, T, cap)
    return [i for i in data.invariant if i != 0], data


def _first_pair(T: CharacterTable, cands: list[int]) -> tuple[int, int, int] | None:
    degs, order, e = T.degrees, T.order, T.exponent
    for x, i in enumerate(cands):
        for j in cands[x + 1:]:
            prod = (order // degs[i]) * (order // degs[j])
            if prod % e == 0:
                return i, j, prod
    return None


def lemma_pair_check(S: PermGroup, og: Overgroup | None = None, cap: int = DEFAULT_CAP) -> LemmaPairResult:
    """First pair of distinct non-principal characters with ``exp(S) | (|S|/a(1))(|S|/b(1))``.

    With an overgroup only characters fixed by every outer generator qualify.
    When the overgroup table is affordable the pair search is repeated among
    characters that actually extend, and the report says which level held.
    """
    if og is not None:
        S = og.subgroup
    _require_simple(S)
    T = character_table(S, cap=cap)
    cands, data = _candidates(T, og, cap)
    found = _first_pair(T, cands)
    flags = []
    level = "none" if og is None else "invariance"
    ext_pair = None
    if data is not None and data.level == "extension":
        ext_cands = [i for i in cands if data.extendable.get(i) is not None]
        hit = _first_pair(T, ext_cands)
        ext_pair = hit[:2] if hit else None
        stuck = sorted({T.degrees[i] for i in cands if data.extendable.get(i) is None})
        if stuck:
            flags.append(f"invariant but not extendable to the overgroup: degrees {stuck}")
        if found and all(data.extendable.get(i) is not None for i in found[:2]):
            level = "extension"
        elif found and ext_pair is None:
            flags.append("no pair at the extension level")
    if found is None and is_psl2_odd_power_of_3(T.order):
        flags.append("genuine exception")
    name = S.name or T.spec
    if found is None:
        return LemmaPairResult(name, T.exponent, None, None, None, False, og is not None, cands,
                               level, ext_pair, flags)
    i, j, prod = found
    return LemmaPairResult(name, T.exponent, (i, j), (T.degrees[i], T.degrees[j]), prod, True,
                           og is not None, cands, level, ext_pair, flags)


@dataclass
class ElementWitness:
    class_index: int
    element_order: int
    character: int | None
    degree: int | None
    quotient: int | None
    level: str

    @property
    def found(self) -> bool:
        return self.character is not None


def per_element_check(S: PermGroup, class_index: int, og: Overgroup | None = None,
                      cap: int = DEFAULT_CAP) -> ElementWitness:
    """First non-principal character (by degree) with ``o(x) | |S|/a(1)``."""
    if og is not None:
        S = og.subgroup
    _require_simple(S)
    T = character_table(S, cap=cap)
    o = T.classes.element_orders[class_index]
    cands, data = _candidates(T, og, cap)
    for i in cands:
        d = T.degrees[i]
        if (T.order // d) % o == 0:
            level = "none"
            if data is not None:
                level = "extension" if data.extendable.get(i) is not None else "invariance"
            return ElementWitness(class_index, o, i, d, T.order // d, level)
    return ElementWitness(class_index, o, None, None, None, "none" if data is None else "invariance")


@dataclass
class ExceptionReport:
    q: int
    invariant_nonprincipal: list[int]
    invariant_degrees: list[int]
    steinberg_only: bool
    half_degree_rows: list[int]
    fixed_by_field: bool
    swapped_by_diagonal: bool
    steinberg_extends: bool | None

    @property
    def passed(self) -> bool:
        return self.steinberg_only and self.fixed_by_field and self.swapped_by_diagonal

    def to_json(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def exception_check(f: int = 3, cap: int = DEFAULT_CAP) -> ExceptionReport:
    """PSL(2, 3^f) inside PGammaL(2, 3^f): the invariant characters and the half-degree pair."""
    if f < 3 or f % 2 == 0:
        raise HypothesisError("f must be odd and at least 3")
    q = 3 ** f
    og = projective_overgroup(q)
    T = character_table(og.subgroup, cap=cap)
    data = invariance_data(og, T, cap)
    nonpr = [i for i in data.invariant if i != 0]
    degs = [T.degrees[i] for i in nonpr]
    half = [i for i, d in enumerate(T.degrees) if d == (q - 1) // 2]
    diag = aut_action(T, og.outer["diagonal"])
    field_perm = aut_action(T, og.outer["field"])
    fixed = all(field_perm[i] == i for i in half)
    swapped = len(half) == 2 and diag[half[0]] == half[1] and diag[half[1]] == half[0]
    st_ext = None
    if data.level == "extension" and len(nonpr) == 1:
        st_ext = data.extendable.get(nonpr[0]) is not None
    return ExceptionReport(q, nonpr, degs, degs == [q], half, fixed, swapped, st_ext)


# -- monolithic groups ------------------------------------------------------------------

@dataclass
class MonolithicScenario:
    spec: str
    element: str
    n: int
    orbit_length: int
    h: int
    r: int
    order_gr: int
    quantity: int
    character: int | None
    degree: int | None
    inertia_order: int | None
    extension: int | None
    exception_case: bool
    clauses: dict = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.character is not None and all(self.clauses.values())

    def to_json(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


class MonolithicContext:
    """Per-group data shared by the checks of all elements: ``M``, its table, inertia groups."""

    def __init__(self, G: PermGroup, cap: int = DEFAULT_CAP):
        mins = minimal_normal_subgroups(G, cap)
        if len(mins) != 1:
            raise HypothesisError(f"expected a unique minimal normal subgroup, found {len(mins)}")
        M = mins[0]
        if is_solvable(M):
            raise HypothesisError("the minimal normal subgroup is solvable")
        self.G = G
        self.cap = cap
        self.M = PermGroup(M.generators, degree=G.degree, parent=G, name="M")
        self.embedding = wreath_embedding(G, self.M)
        self.TM = character_table(self.M, cap=cap)
        S1 = self.embedding.factors[0]
        self.exception_case = is_psl2_odd_power_of_3(S1.order)
        self._inertia: dict[int, PermGroup] = {}
        self._extension: dict[int, int | None] = {}

    def inertia(self, lam: int) -> PermGroup:
        if lam not in self._inertia:
            self._inertia[lam] = inertia_group(self.G, self.TM, lam)
        return self._inertia[lam]

    def extension(self, lam: int) -> int | None:
        if lam not in self._extension:
            I = self.inertia(lam)
            self._extension[lam] = has_extension(I, self.TM, lam, cap=self.cap).index
        return self._extension[lam]

    def orbit_length(self, g: Permutation) -> int:
        """Length of the orbit of <g> through the first factor it moves, or 1."""
        sigma = self.embedding.factor_permutation(g)
        best = 1
        for start in range(len(sigma)):
            k, x = 1, sigma[start]
            while x != start:
                x, k = sigma[x], k + 1
            best = max(best, k)
        return best

    def quotient_order(self, g: Permutation) -> int:
        """Order of gM in G/M."""
        x = g
        r = 1
        while not self.M.contains(x):
            x = x * g
            r += 1
        return r


def _validate(ctx: MonolithicContext, g: Permutation, lam: int, h: int, r: int) -> dict:
    """Re-check the three clauses for ``lam`` from scratch."""
    TM, M = ctx.TM, ctx.M
    gh = g ** (2 ** h)
    # clause 1: g^(2^h) fixes lam, by its direct action on the table
    fixed = aut_action(TM, gh)[lam] == lam
    # clause 2: an extension to the inertia group restricts exactly to lam
    I = ctx.inertia(lam)
    ext = ctx.extension(lam)
    extends = False
    if ext is not None:
        TI = character_table(I, cap=ctx.cap)
        extends = restrict(TI.irreducibles[ext], fuse(M, I, ctx.cap)) == TM.irreducibles[lam]
    in_inertia = I.contains(gh)
    # clause 3: divisibility
    d = TM.degrees[lam]
    quantity = 2 ** h * (g ** r).order()
    divides = (M.order // d) % quantity == 0
    return {"nonprincipal": lam != 0, "power_in_inertia": fixed and in_inertia,
            "extends": extends, "divisible": divides}


def monolithic_witness_check(G: PermGroup, g: Permutation, ctx: MonolithicContext | None = None,
                             cap: int = DEFAULT_CAP, spec: str | None = None) -> MonolithicScenario:
    """Search Irr(M) by increasing degree for a character meeting every clause for ``g``.

    Outside the PSL(2, 3^f) case the strong form with ``h = 0`` is demanded;
    otherwise ``h`` is the orbit length of ``<g>`` on the simple factors.
    """
    if not G.contains(g):
        raise HypothesisError("element is not in the group")
    ctx = ctx or MonolithicContext(G, cap)
    TM = ctx.TM
    orbit = ctx.orbit_length(g)
    h = orbit if ctx.exception_case else 0
    r = ctx.quotient_order(g)
    o_gr = (g ** r).order()
    quantity = 2 ** h * o_gr
    gh = g ** (2 ** h)
    found = None
    for lam in range(1, len(TM)):
        d = TM.degrees[lam]
        if (ctx.M.order // d) % quantity:
            continue
        if aut_action(TM, gh)[lam] != lam:
            continue
        if ctx.extension(lam) is None:
            continue
        found = lam
        break
    flags = ["witness, not construction"]
    name = spec or G.name or repr(G)
    if found is None:
        flags.append("no witness found")
        return MonolithicScenario(name, str(g), ctx.embedding.n, orbit, h, r, o_gr, quantity,
                                  None, None, None, None, ctx.exception_case, {}, flags)
    clauses = _validate(ctx, g, found, h, r)
    if not all(clauses.values()):
        flags.append("re-validation failed")
    return MonolithicScenario(name, str(g), ctx.embedding.n, orbit, h, r, o_gr, quantity,
                              found, TM.degrees[found], ctx.inertia(found).order,
                              ctx.extension(found), ctx.exception_case, clauses, flags)


def validate_witness(G: PermGroup, g: Permutation, lam: int, h: int,
                     ctx: MonolithicContext | None = None) -> dict:
    """Clause check for a caller-chosen character ``lam`` of ``M`` and exponent ``h``."""
    ctx = ctx or MonolithicContext(G)
    return _validate(ctx, g, lam, h, ctx.quotient_order(g))


# -- trivial-Fitting harness -------------------------------------------------------------

def socle_type(G: PermGroup, cap: int = DEFAULT_CAP) -> str:
    if G.order == 1:
        return "trivial"
    mins = minimal_normal_subgroups(G, cap)
    kinds = {"abelian" if M.is_abelian() else "non-abelian" for M in mins}
    if kinds == {"abelian"}:
        return "solvable socle"
    if kinds == {"non-abelian"}:
        return "non-solvable socle"
    return "mixed socle"


@dataclass
class TheoremAReport:
    spec: str
    order: int
    fitting_order: int
    solvable: bool
    socle: str
    qian: QianReport

    @property
    def passed(self) -> bool:
        return self.qian.passed

    def to_json(self) -> dict:
        return {"spec": self.spec, "order": self.order, "fitting_order": self.fitting_order,
                "solvable": self.solvable, "socle": self.socle,
                "verdict": "pass" if self.passed else "fail", "qian": self.qian.to_json()}


def theorem_a_check(G: PermGroup, spec: str | None = None, cap: int = DEFAULT_CAP,
                    table: CharacterTable | None = None) -> TheoremAReport:
    spec = spec or G.name or repr(G)
    F = fitting_subgroup(G, cap) if G.order > 1 else G
    solvable = is_solvable(G)
    flags = []
    if F.order == 1:
        flags.append("Fitting trivial")
    else:
        flags.append("outside Theorem A hypothesis")
    if solvable:
        flags.append("solvable")
    T = table or character_table(G, cap=cap)
    rep = qian_check(T, flags)
    rep.spec = spec
    return TheoremAReport(spec, G.order, F.order, solvable, socle_type(G, cap), rep)


def _corpus_entry(args) -> dict:
    text, cap, cache_dir = args
    from .cache import TableCache, table_for_spec
    from .dsl import parse_spec
    spec = parse_spec(text)
    cache = TableCache(cache_dir) if cache_dir else None
    T = table_for_spec(spec, cache=cache, cap=cap)
    G = T.group if T.group is not None else build(spec)
    return theorem_a_check(G, str(spec), cap, table=T).to_json()


def read_corpus(path) -> list[str]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(line)
    return out


def corpus_run(specs: list[str], jobs: int = 1, cap: int = DEFAULT_CAP, cache_dir=None) -> dict:
    """Run the trivial-Fitting harness over a list of specs; results keep input order for any ``jobs``."""
    tasks = [(s, cap, str(cache_dir) if cache_dir else None) for s in specs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_corpus_entry, tasks))
    else:
        results = [_corpus_entry(t) for t in tasks]
    summary = {
        "groups": len(results),
        "passed": sum(r["verdict"] == "pass" for r in results),
        "fitting_trivial": sum(r["fitting_order"] == 1 for r in results),
        "solvable": sum(r["solvable"] for r in results),
    }
    summary["failed"] = summary["groups"] - summary["passed"]
    return {"summary": summary, "results": results}
