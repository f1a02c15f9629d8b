"""Conjugacy classes by full enumeration of the group."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .perm import DEFAULT_CAP, Enumeration, PermGroup, Permutation


@dataclass
class ClassData:
    """Conjugacy classes in canonical order.

    ``power_maps[i][k]`` is the class of ``reps[i] ** k`` for ``0 <= k < element_orders[i]``;
    use :meth:`power` for arbitrary exponents.
    """
    order: int
    reps: list[Permutation]
    sizes: list[int]
    element_orders: list[int]
    power_maps: list[list[int]]
    inverse_map: list[int]
    # element index -> class index; only present when built from an enumeration
    class_of: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.element_orders, 1)

    def power(self, i: int, k: int) -> int:
        return self.power_maps[i][k % self.element_orders[i]]

    def centralizer_order(self, i: int) -> int:
        return self.order // self.sizes[i]

    def check(self) -> None:
        """Raise AssertionError when a class-equation invariant fails."""
        assert sum(self.sizes) == self.order
        assert all(self.order % s == 0 for s in self.sizes)
        assert self.sizes[0] == 1 and self.reps[0].is_identity()
        assert all(self.inverse_map[self.inverse_map[i]] == i for i in range(len(self)))
        e = self.exponent
        assert all(e % o == 0 for o in self.element_orders)


def conjugacy_classes(G: PermGroup, cap: int = DEFAULT_CAP) -> ClassData:
    cached = G.__dict__.get("_classes")
    if cached is not None:
        return cached
    enum = G.enumeration(cap)
    cd = _classes_from_enumeration(G, enum)
    G.__dict__["_classes"] = cd
    return cd


def _conjugation_index_map(enum: Enumeration, g: Permutation) -> np.ndarray:
    """Index of ``g^-1 x g`` for every element ``x``."""
    gi = np.array(g.images)
    ginv = np.array((~g).images)
    base_imgs = gi[enum.elements[:, ginv[enum.base]]]
    return enum.index_of_base_images(base_imgs)


def _classes_from_enumeration(G: PermGroup, enum: Enumeration) -> ClassData:
    n = len(enum)
    if G.generators:
        rows = np.concatenate([np.arange(n)] * len(G.generators))
        cols = np.concatenate([_conjugation_index_map(enum, g) for g in G.generators])
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        ncls, labels = connected_components(graph, directed=True, connection="weak")
    else:
        ncls, labels = 1, np.zeros(1, dtype=np.int64)

    # lexicographically least element of each class is its representative
    lex = np.lexsort(enum.elements.T[::-1])
    first = {}
    for idx in lex.tolist():
        lab = labels[idx]
        if lab not in first:
            first[lab] = idx
            if len(first) == ncls:
                break
    sizes = np.bincount(labels, minlength=ncls)
    info = []
    for lab in range(ncls):
        rep = enum.perm(first[lab])
        info.append((rep.order(), int(sizes[lab]), rep.images, lab, rep))
    info.sort(key=lambda t: (t[0] != 1, t[0], t[1], t[2]))
    relabel = np.empty(ncls, dtype=np.int64)
    for new, t in enumerate(info):
        relabel[t[3]] = new
    class_of = relabel[labels]

    reps = [t[4] for t in info]
    orders = [t[0] for t in info]
    power_maps = []
    for rep, o in zip(reps, orders):
        pw = [rep ** k for k in range(o)]
        idx = enum.index_of(np.array([p.images for p in pw]))
        power_maps.append([int(c) for c in class_of[idx]])
    inverse_map = [pm[-1] if o > 1 else 0 for pm, o in zip(power_maps, orders)]
    return ClassData(order=G.order, reps=reps, sizes=[t[1] for t in info],
                     element_orders=orders, power_maps=power_maps,
                     inverse_map=inverse_map, class_of=class_of)


def class_of_element(G: PermGroup, g: Permutation) -> int:
    cd = conjugacy_classes(G)
    return int(cd.class_of[G.enumeration().index(g)])


def class_members(G: PermGroup, i: int) -> np.ndarray:
    """Element indices of class ``i``."""
    cd = conjugacy_classes(G)
    return np.flatnonzero(cd.class_of == i)


@dataclass(frozen=True)
class ClassFusion:
    """``mapping[i]`` is the class of the ambient group containing class ``i`` of the source."""
    source: ClassData = field(repr=False, compare=False)
    target: ClassData = field(repr=False, compare=False)
    mapping: tuple[int, ...]

    def check(self) -> None:
        for i, k in enumerate(self.mapping):
            if self.source.element_orders[i] != self.target.element_orders[k]:
                raise ValueError(f"fusion of class {i} changes the element order")
            for a in range(self.source.element_orders[i]):
                if self.mapping[self.source.power(i, a)] != self.target.power(k, a):
                    raise ValueError(f"fusion of class {i} breaks the power maps")


def fuse(H: PermGroup, G: PermGroup, cap: int = DEFAULT_CAP) -> ClassFusion:
    """Fusion of the classes of ``H`` into those of ``G`` by membership lookup."""
    ch, cg = conjugacy_classes(H, cap), conjugacy_classes(G, cap)
    if not H.is_subgroup_of(G):
        raise ValueError("not a subgroup")
    idx = G.enumeration(cap).index_of(np.array([r.images for r in ch.reps]))
    fusion = ClassFusion(ch, cg, tuple(int(c) for c in cg.class_of[idx]))
    fusion.check()
    return fusion
