"""Permutations and permutation groups with a base and strong generating set.

Points are ``0 .. degree-1``.  Products act left to right: ``(p * q)(x) = q(p(x))``.
"""
from __future__ import annotations

import math
import re
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np


class CapExceeded(ValueError):
    """Raised when a computation would enumerate more elements than allowed."""


DEFAULT_CAP = 300_000


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(x) for x in images)
        if not images:
            raise ValueError("degree must be at least 1")
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection of 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < degree:
                    raise ValueError(f"point {x} outside 0..{degree - 1}")
                if x in seen:
                    raise ValueError(f"point {x} repeated in cycle notation")
                seen.add(x)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse cycle notation such as ``"(0 1 2)(3 4)"``; ``"()"`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)*", text):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            if len(pts) > 1:
                cycles.append(pts)
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other.images) != len(self.images):
            raise ValueError("degree mismatch")
        return Permutation._raw(tuple(map(other.images.__getitem__, self.images)))

    def __invert__(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._raw(tuple(inv))

    inverse = __invert__

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return (~self) ** (-k)
        result = Permutation._raw(tuple(range(len(self.images))))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def conj(self, g: "Permutation") -> "Permutation":
        """``g^-1 * self * g``."""
        return ~g * self * g

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def moved_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def __str__(self) -> str:
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"

    def __repr__(self) -> str:
        return f"Permutation({self})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    return p * q


def element_order(p: Permutation) -> int:
    return p.order()


class PermGroup:
    """A permutation group stored through a Schreier-Sims stabilizer chain.

    A group built as a subgroup of another keeps a reference in ``parent``;
    this is what the rest of the package calls a subgroup handle.
    """

    def __init__(self, gens: Sequence[Permutation], degree: int | None = None,
                 parent: "PermGroup | None" = None, name: str | None = None):
        gens = list(gens)
        if degree is None:
            if not gens:
                raise ValueError("empty generator list needs an explicit degree")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators have different degrees")
        if parent is not None:
            if parent.degree != degree:
                raise ValueError("subgroup degree differs from parent")
            for g in gens:
                if not parent.contains(g):
                    raise ValueError(f"generator {g} is not in the parent group")
        self.degree = degree
        self.parent = parent
        self.name = name
        self.generators = [g for g in dict.fromkeys(gens) if not g.is_identity()]
        self._schreier_sims()

    # -- stabilizer chain -------------------------------------------------
    def _schreier_sims(self) -> None:
        ident = Permutation.identity(self.degree)
        self._identity = ident
        base: list[int] = []
        strong: list[list[Permutation]] = []
        for g in self.generators:
            if all(g.images[b] == b for b in base):
                base.append(g.moved_points()[0])
        # strong[i]: strong generators fixing base[:i]
        strong = [[g for g in self.generators if all(g.images[b] == b for b in base[:i])]
                  for i in range(len(base))]
        trans = [self._orbit_transversal(base[i], strong[i]) for i in range(len(base))]

        i = len(base) - 1
        while i >= 0:
            restart = None
            for beta, u in list(trans[i].items()):
                for s in strong[i]:
                    img = s.images[beta]
                    sg = u * s * ~trans[i][img]
                    if sg.is_identity():
                        continue
                    h, j = self._sift(sg, base, trans, i + 1)
                    if j < len(base) or not h.is_identity():
                        if j == len(base):
                            base.append(h.moved_points()[0])
                            strong.append([])
                            trans.append({})
                        for level in range(i + 1, j + 1):
                            strong[level].append(h)
                            trans[level] = self._orbit_transversal(base[level], strong[level])
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart
        self.base = base
        self.strong = strong
        self.transversals = trans

    @staticmethod
    def _orbit_transversal(point: int, gens: list[Permutation]) -> dict[int, Permutation]:
        deg = gens[0].degree if gens else point + 1
        trans = {point: Permutation.identity(deg)}
        queue = [point]
        for x in queue:
            ux = trans[x]
            for s in gens:
                y = s.images[x]
                if y not in trans:
                    trans[y] = ux * s
                    queue.append(y)
        return trans

    @staticmethod
    def _sift(g: Permutation, base, trans, start: int = 0) -> tuple[Permutation, int]:
        for j in range(start, len(base)):
            beta = g.images[base[j]]
            u = trans[j].get(beta)
            if u is None:
                return g, j
            g = g * ~u
        return g, len(base)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        h, j = self._sift(g, self.base, self.transversals)
        return j == len(self.base) and h.is_identity()

    __contains__ = contains

    @cached_property
    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def __len__(self) -> int:
        return self.order

    @property
    def identity(self) -> Permutation:
        return self._identity

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def same_group(self, other: "PermGroup") -> bool:
        return self.order == other.order and self.is_subgroup_of(other)

    def is_normal_in(self, other: "PermGroup") -> bool:
        return all(self.contains(h.conj(g)) for h in self.generators for g in other.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for x in range(self.degree):
            if x in seen:
                continue
            orb = [x]
            seen.add(x)
            for y in orb:
                for g in self.generators:
                    z = g.images[y]
                    if z not in seen:
                        seen.add(z)
                        orb.append(z)
            out.append(sorted(orb))
        return out

    def subgroup(self, gens: Iterable[Permutation], name: str | None = None) -> "PermGroup":
        return PermGroup(list(gens), degree=self.degree, parent=self, name=name)

    @cached_property
    def exponent(self) -> int:
        from .classes import conjugacy_classes
        return reduce(math.lcm, conjugacy_classes(self).element_orders, 1)

    def enumeration(self, cap: int = DEFAULT_CAP) -> "Enumeration":
        enum = self.__dict__.get("_enumeration")
        if enum is None:
            if self.order > cap:
                raise CapExceeded(f"group of order {self.order} exceeds enumeration cap {cap}")
            enum = Enumeration(self)
            self.__dict__["_enumeration"] = enum
        return enum

    def elements(self, cap: int = DEFAULT_CAP) -> list[Permutation]:
        return [Permutation._raw(tuple(int(x) for x in row))
                for row in self.enumeration(cap).elements]

    def __repr__(self) -> str:
        label = self.name or f"<{len(self.generators)} generators>"
        return f"PermGroup({label}, degree={self.degree}, order={self.order})"


def build_group(gens: Sequence[Permutation], degree: int | None = None) -> PermGroup:
    if not gens and degree is None:
        raise ValueError("empty generator list")
    return PermGroup(gens, degree=degree)


class Enumeration:
    """All elements of a group as rows of an integer array, with fast index lookup.

    An element is determined by its images of the base points, so lookups hash
    only those columns.
    """

    def __init__(self, group: PermGroup):
        self.group = group
        d = group.degree
        dtype = np.int16 if d < 2 ** 15 else np.int32
        elems = np.arange(d, dtype=dtype)[None, :]
        for level in reversed(range(len(group.base))):
            us = np.array([u.images for _, u in sorted(group.transversals[level].items())],
                          dtype=dtype)
            # h then u, for h in the deeper stabilizer and u in this transversal
            elems = us[:, elems].reshape(-1, d)
        self.elements = np.ascontiguousarray(elems)
        self.base = np.array(group.base, dtype=np.intp)
        self._radix = d
        keys = self.keys_of_base_images(self.elements[:, self.base]) if len(self.base) else \
            np.zeros(1, dtype=np.int64)
        self._order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._order]

    def keys_of_base_images(self, images: np.ndarray) -> np.ndarray:
        images = np.asarray(images, dtype=np.int64)
        if len(self.base) == 0:
            return np.zeros(images.shape[0], dtype=np.int64)
        if self._radix ** len(self.base) >= 2 ** 62:
            # too many base points for a packed integer key
            return np.array([hash(tuple(r)) for r in images.tolist()], dtype=np.int64)
        weights = self._radix ** np.arange(len(self.base), dtype=np.int64)
        return images @ weights

    def index_of_base_images(self, images: np.ndarray) -> np.ndarray:
        keys = self.keys_of_base_images(images)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        found = self._sorted_keys[pos] == keys
        if not np.all(found):
            raise KeyError("element not in group")
        idx = self._order[pos]
        if self._radix ** len(self.base) >= 2 ** 62:
            # hashed keys can collide; confirm on the base images
            if not np.array_equal(self.elements[idx][:, self.base], np.asarray(images)):
                raise KeyError("hash collision in element lookup")
        return idx

    def index_of(self, perms: np.ndarray) -> np.ndarray:
        perms = np.atleast_2d(np.asarray(perms))
        return self.index_of_base_images(perms[:, self.base])

    def index(self, p: Permutation) -> int:
        return int(self.index_of(np.array([p.images]))[0])

    @cached_property
    def inverse_index(self) -> np.ndarray:
        n, d = self.elements.shape
        inv = np.empty_like(self.elements)
        rows = np.arange(n)[:, None]
        inv[rows, self.elements] = np.arange(d, dtype=self.elements.dtype)[None, :]
        return self.index_of(inv)

    def perm(self, index: int) -> Permutation:
        return Permutation._raw(tuple(int(x) for x in self.elements[index]))

    def __len__(self) -> int:
        return self.elements.shape[0]
