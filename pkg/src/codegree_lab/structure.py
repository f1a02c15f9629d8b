"""Normal structure: closures, commutators, nilpotency, Fitting subgroup, minimal normal subgroups."""
from __future__ import annotations

import numpy as np

from .classes import conjugacy_classes
from .perm import DEFAULT_CAP, PermGroup, Permutation


def _closure_key(G: PermGroup) -> dict:
    return G.__dict__.setdefault("_normal_closures", {})


def normal_closure(G: PermGroup, S) -> PermGroup:
    """Smallest normal subgroup of ``G`` containing the elements ``S``."""
    S = [s for s in S]
    for s in S:
        if not G.contains(s):
            raise ValueError(f"{s} is not an element of the group")
    key = tuple(sorted(s.images for s in S))
    memo = _closure_key(G)
    if key in memo:
        return memo[key]
    gens = [s for s in S if not s.is_identity()]
    H = PermGroup(gens, degree=G.degree)
    queue = list(H.generators)
    while queue:
        h = queue.pop()
        for g in G.generators:
            c = h.conj(g)
            if not H.contains(c):
                gens.append(c)
                H = PermGroup(gens, degree=G.degree)
                queue.append(c)
    H = PermGroup(H.generators, degree=G.degree, parent=G)
    memo[key] = H
    return H


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return ~a * ~b * a * b


def commutator_subgroup(A: PermGroup, B: PermGroup) -> PermGroup:
    """``[A, B]``, where ``A`` is normalized by ``B`` (as in every use here)."""
    comms = [commutator(a, b) for a in A.generators for b in B.generators]
    whole = PermGroup(A.generators + B.generators, degree=A.degree)
    return normal_closure(whole, comms)


def derived_subgroup(G: PermGroup) -> PermGroup:
    return commutator_subgroup(G, G)


def lower_central_series(H: PermGroup) -> list[PermGroup]:
    series = [H]
    while True:
        nxt = commutator_subgroup(series[-1], H)
        if nxt.order == series[-1].order:
            return series
        series.append(nxt)
        if nxt.order == 1:
            return series


def is_nilpotent(H: PermGroup) -> bool:
    return lower_central_series(H)[-1].order == 1


def is_solvable(H: PermGroup) -> bool:
    cur = H
    while cur.order > 1:
        nxt = derived_subgroup(cur)
        if nxt.order == cur.order:
            return False
        cur = nxt
    return True


def fitting_subgroup(G: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    """Generated by the class representatives whose normal closure is nilpotent."""
    cd = conjugacy_classes(G, cap)
    nil = [x for x in cd.reps[1:] if is_nilpotent(normal_closure(G, [x]))]
    return normal_closure(G, nil)


def minimal_normal_subgroups(G: PermGroup, cap: int = DEFAULT_CAP) -> list[PermGroup]:
    """Inclusion-minimal normal closures of prime-order class representatives."""
    from .fields import is_prime
    cd = conjugacy_classes(G, cap)
    cands = [normal_closure(G, [x]) for x, o in zip(cd.reps, cd.element_orders) if is_prime(o)]
    cands.sort(key=lambda N: N.order)
    out: list[PermGroup] = []
    for N in cands:
        if any(M.same_group(N) for M in out):
            continue
        if any(c.order < N.order and c.is_subgroup_of(N) for c in cands):
            continue
        out.append(N)
    return out


def socle(G: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    mins = minimal_normal_subgroups(G, cap)
    gens = [g for M in mins for g in M.generators]
    return PermGroup(gens, degree=G.degree, parent=G)


def is_simple(G: PermGroup, cap: int = DEFAULT_CAP) -> bool:
    if G.order == 1:
        return False
    cd = conjugacy_classes(G, cap)
    return all(normal_closure(G, [x]).order == G.order for x in cd.reps[1:])


def centralizer(G: PermGroup, elems) -> PermGroup:
    """Elements of ``G`` commuting with every element of ``elems`` (by enumeration)."""
    enum = G.enumeration()
    E = enum.elements
    mask = np.ones(len(E), dtype=bool)
    for h in elems:
        ha = np.array(h.images)
        mask &= np.all(ha[E] == E[:, ha], axis=1)
    gens: list[Permutation] = []
    H = PermGroup([], degree=G.degree)
    for idx in np.flatnonzero(mask):
        if H.order == int(mask.sum()):
            break
        p = enum.perm(int(idx))
        if not H.contains(p):
            gens.append(p)
            H = PermGroup(gens, degree=G.degree)
    return PermGroup(H.generators, degree=G.degree, parent=G)


def stabilizer_of_action(G: PermGroup, action: dict, point) -> PermGroup:
    """Stabilizer of ``point`` under an action given on generators.

    ``action[g]`` maps points to points for each generator ``g``; the stabilizer
    is generated by Schreier generators.
    """
    trans = {point: G.identity}
    queue = [point]
    for x in queue:
        for g in G.generators:
            y = action[g][x]
            if y not in trans:
                trans[y] = trans[x] * g
                queue.append(y)
    gens = []
    H = PermGroup([], degree=G.degree)
    target = G.order // len(trans)
    for x, u in trans.items():
        if H.order == target:
            break
        for g in G.generators:
            sg = u * g * ~trans[action[g][x]]
            if not sg.is_identity() and not H.contains(sg):
                gens.append(sg)
                H = PermGroup(gens, degree=G.degree)
    return PermGroup(H.generators, degree=G.degree, parent=G)
