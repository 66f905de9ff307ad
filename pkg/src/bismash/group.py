"""Finite permutation groups stored as fully enumerated element sets."""
from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .perm import Permutation

__all__ = [
    "ResourceCapError",
    "PermGroup",
    "ConjClass",
    "close",
    "point_stabilizer",
    "conjugacy_classes",
    "group_fs_indicator",
    "default_cap",
    "round_integral",
]

DEFAULT_CAP = 10**6


class ResourceCapError(RuntimeError):
    """An enumeration would exceed the configured element cap."""


def default_cap() -> int:
    value = os.environ.get("BISMASH_CAP")
    return int(value) if value else DEFAULT_CAP


def mul(a: tuple, b: tuple) -> tuple:
    """Left-to-right product of raw 0-indexed image tuples."""
    return tuple(map(b.__getitem__, a))


def inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def round_integral(value, tol: float = 1e-6) -> int:
    """Round a value the theory forces to be an integer, or raise."""
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        if value.denominator != 1:
            raise ArithmeticError(f"expected an integer, got {value}")
        return int(value)
    z = complex(value)
    r = round(z.real)
    if abs(z.real - r) > tol or abs(z.imag) > tol:
        raise ArithmeticError(f"expected an integer, got {z}")
    return int(r)


class ConjClass:
    __slots__ = ("representative", "members", "size", "index")

    def __init__(self, representative: Permutation, members: frozenset, index: int):
        self.representative = representative
        self.members = members  # frozenset of raw tuples
        self.size = len(members)
        self.index = index

    def __contains__(self, p) -> bool:
        return (p.array if isinstance(p, Permutation) else p) in self.members

    def __repr__(self):
        return f"ConjClass({self.representative}, size={self.size})"


class PermGroup:
    """An enumerated permutation group on {1..n}.

    ``arrays`` holds the raw 0-indexed image tuples in sorted order, which is
    the deterministic element order used everywhere downstream.
    """

    def __init__(self, generators: Sequence[Permutation], n: int | None = None,
                 cap: int | None = None, _arrays: Iterable[tuple] | None = None):
        gens = list(generators)
        if n is None:
            if not gens:
                raise ValueError("degree required for a group with no generators")
            n = gens[0].n
        for g in gens:
            if g.n != n:
                raise ValueError(f"generator {g} has degree {g.n}, expected {n}")
        self.n = n
        self._generators = [g for g in gens if not g.is_identity()] if gens else None
        if _arrays is None:
            _arrays = _closure([g.array for g in gens], n, cap if cap is not None else default_cap())
        self.arrays: list[tuple] = sorted(_arrays)
        self.elementset = frozenset(self.arrays)
        self._elements = None
        self._classes = None
        self._class_of = None

    @classmethod
    def from_arrays(cls, arrays: Iterable[tuple], n: int,
                    generators: Sequence[Permutation] | None = None) -> "PermGroup":
        """Wrap an element set already known to be a group."""
        g = cls.__new__(cls)
        g.n = n
        g._generators = list(generators) if generators is not None else None
        g.arrays = sorted(arrays)
        g.elementset = frozenset(g.arrays)
        g._elements = None
        g._classes = None
        g._class_of = None
        return g

    # ---------------------------------------------------------------- access
    @property
    def order(self) -> int:
        return len(self.arrays)

    def __len__(self):
        return len(self.arrays)

    @property
    def elements(self) -> list[Permutation]:
        if self._elements is None:
            self._elements = [Permutation.from_array(a) for a in self.arrays]
        return self._elements

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p) -> bool:
        return (p.array if isinstance(p, Permutation) else p) in self.elementset

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.n)

    @property
    def generators(self) -> list[Permutation]:
        if self._generators is None:
            self._generators = _greedy_generators(self.arrays, self.n)
        return self._generators

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.n == other.n and self.elementset == other.elementset

    def __hash__(self):
        return hash((self.n, self.elementset))

    def __repr__(self):
        gens = ", ".join(map(str, self.generators)) or "()"
        return f"PermGroup(<{gens}>, order={self.order}, n={self.n})"

    # ------------------------------------------------------------- structure
    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.n == other.n and self.elementset <= other.elementset

    def is_abelian(self) -> bool:
        gens = [g.array for g in self.generators]
        return all(mul(a, b) == mul(b, a) for a in gens for b in gens)

    def exponent(self) -> int:
        return math.lcm(*(p.order() for p in self.elements))

    def moved_points(self) -> list[int]:
        pts = set()
        for g in self.generators:
            pts.update(i + 1 for i, j in enumerate(g.array) if i != j)
        return sorted(pts)

    def point_orbits(self) -> list[list[int]]:
        """Orbits of the group on {1..n}, each sorted, ordered by least point."""
        seen = set()
        out = []
        gens = [g.array for g in self.generators]
        for start in range(self.n):
            if start in seen:
                continue
            orb = {start}
            frontier = [start]
            while frontier:
                i = frontier.pop()
                for g in gens:
                    j = g[i]
                    if j not in orb:
                        orb.add(j)
                        frontier.append(j)
            seen |= orb
            out.append(sorted(i + 1 for i in orb))
        return out

    def subgroup(self, predicate: Callable[[tuple], bool]) -> "PermGroup":
        """Subgroup of elements satisfying ``predicate`` (caller guarantees closure)."""
        return PermGroup.from_arrays([a for a in self.arrays if predicate(a)], self.n)

    def conjugate(self, x: Permutation) -> "PermGroup":
        """The group x^-1 G x."""
        xa = x.array
        xi = inv(xa)
        arrays = [mul(mul(xi, a), xa) for a in self.arrays]
        gens = [g ^ x for g in self._generators] if self._generators is not None else None
        return PermGroup.from_arrays(arrays, self.n, gens)

    def point_stabilizer(self, points: Iterable[int]) -> "PermGroup":
        return point_stabilizer(self, points)

    def conjugacy_classes(self) -> list[ConjClass]:
        return conjugacy_classes(self)

    def class_index(self, p) -> int:
        """Index (into conjugacy_classes) of the class containing p."""
        if self._class_of is None:
            conjugacy_classes(self)
        return self._class_of[p.array if isinstance(p, Permutation) else p]


def _closure(gens: list[tuple], n: int, cap: int) -> set[tuple]:
    ident = tuple(range(n))
    gens = [g for g in set(gens) if g != ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = tuple(map(g.__getitem__, a))
                if b not in seen:
                    seen.add(b)
                    new.append(b)
        if len(seen) > cap:
            raise ResourceCapError(f"group order exceeds cap {cap}")
        frontier = new
    return seen


def _greedy_generators(arrays: list[tuple], n: int) -> list[Permutation]:
    """A small generating set: add elements that leave the current span."""
    span = {tuple(range(n))}
    gens: list[tuple] = []
    target = len(arrays)
    for a in reversed(arrays):  # larger image tuples tend to have larger order
        if len(span) == target:
            break
        if a in span:
            continue
        gens.append(a)
        span = _closure(gens, n, max(target, 1))
    return [Permutation.from_array(g) for g in gens]


def close(generators: Sequence[Permutation], n: int | None = None,
          cap: int | None = None) -> PermGroup:
    """Enumerate the group generated by ``generators`` by breadth-first closure."""
    return PermGroup(generators, n=n, cap=cap)


def point_stabilizer(G: PermGroup, points: Iterable[int]) -> PermGroup:
    """Subgroup of G fixing each listed (1-indexed) point."""
    pts = [p - 1 for p in points]
    for p in pts:
        if not 0 <= p < G.n:
            raise ValueError(f"point {p + 1} outside 1..{G.n}")
    if not pts:
        return G
    return G.subgroup(lambda a: all(a[p] == p for p in pts))


def conjugacy_classes(G: PermGroup) -> list[ConjClass]:
    """Classes ordered by (size, least member); representative is the least member."""
    if G._classes is not None:
        return G._classes
    pts = G.moved_points()
    if G.order > 2 and G.order == math.factorial(len(pts)):
        raw = _cycle_type_classes(G, [p - 1 for p in pts])
    else:
        raw = _orbit_classes(G)
    raw.sort(key=lambda t: (t[0], t[1]))
    classes = [ConjClass(Permutation.from_array(rep), members, i)
               for i, (_, rep, members) in enumerate(raw)]
    class_of = {}
    for c in classes:
        for m in c.members:
            class_of[m] = c.index
    G._classes = classes
    G._class_of = class_of
    return classes


def _cycle_type_classes(G: PermGroup, support: list[int]) -> list:
    # the full symmetric group on its support: classes are cycle types
    buckets: dict[tuple, list] = {}
    for a in G.arrays:
        seen = set()
        lengths = []
        for s in support:
            if s in seen:
                continue
            ln, j = 0, s
            while j not in seen:
                seen.add(j)
                j = a[j]
                ln += 1
            lengths.append(ln)
        buckets.setdefault(tuple(sorted(lengths)), []).append(a)
    return [(len(m), m[0], frozenset(m)) for m in buckets.values()]


def _orbit_classes(G: PermGroup) -> list:
    gens = [(g.array, inv(g.array)) for g in G.generators]
    seen: set[tuple] = set()
    raw = []
    for a in G.arrays:
        if a in seen:
            continue
        cls = {a}
        frontier = [a]
        while frontier:
            new = []
            for c in frontier:
                for g, gi in gens:
                    d = mul(mul(gi, c), g)
                    if d not in cls:
                        cls.add(d)
                        new.append(d)
            frontier = new
        seen |= cls
        raw.append((len(cls), a, frozenset(cls)))
    return raw


def group_fs_indicator(G: PermGroup, chi: Callable[[Permutation], object]) -> int:
    """(1/|G|) sum_g chi(g^2) for an irreducible character given as a callable."""
    total = 0
    counts: dict[tuple, int] = {}
    for a in G.arrays:
        sq = mul(a, a)
        counts[sq] = counts.get(sq, 0) + 1
    for sq, c in counts.items():
        total += c * chi(Permutation.from_array(sq))
    if isinstance(total, int):
        value = Fraction(total, G.order)
    else:
        value = total / G.order
    nu = round_integral(value)
    if nu not in (-1, 0, 1):
        raise ArithmeticError(f"indicator {nu} outside {{-1,0,1}}")
    return nu
