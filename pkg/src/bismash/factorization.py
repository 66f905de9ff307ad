"""Exact factorizations L = F G and the matched-pair actions they induce.

For g in G and f in F the product g f factors uniquely as f' g'; we write
g |> f = f' (an element of F) and g <| f = g' (an element of G).
"""
from __future__ import annotations

import math
from itertools import combinations

from .catalog import is_sharply_k_transitive
from .group import PermGroup, inv, mul
from .perm import Permutation

__all__ = [
    "NotExact",
    "ExactFactorization",
    "build",
    "decompose",
    "act_left",
    "act_right",
    "conjugate_factors",
    "product_table",
]


class NotExact(ValueError):
    """F and G do not form an exact factorization; ``witness`` explains why."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class _Decomposer:
    """Finds (f, g) with l = f g without enumerating L.

    A point set D that is a union of F-orbits is chosen, so l restricted to D
    equals (f restricted to D) followed by g.  For each distinct restriction of
    F to D the candidate g's are looked up by their images on D and tested by
    l g^-1 in F.  The work per element is |F|_D| * |G_(D)| membership tests;
    D minimizes that product.  When F fixes D pointwise and G acts regularly
    on the images of D this is a single lookup.
    """

    max_orbit_subsets = 10

    def __init__(self, F: PermGroup, G: PermGroup):
        self.F = F
        self.Fset = F.elementset
        n = F.n
        orbits = F.point_orbits()
        fixed = [o[0] - 1 for o in orbits if len(o) == 1]
        moving = [[p - 1 for p in o] for o in orbits if len(o) > 1]
        if len(moving) <= self.max_orbit_subsets:
            choices = [c for r in range(len(moving) + 1) for c in combinations(moving, r)]
        else:
            choices = [(), tuple(moving)]
        best = None
        for choice in choices:
            D = sorted(fixed + [p for o in choice for p in o])
            restr = {tuple(a[d] for d in D) for a in F.arrays} if choice else {tuple(D)}
            gd = sum(1 for g in G.arrays if all(g[d] == d for d in D))
            cost = len(restr) * gd
            if best is None or cost < best[0]:
                best = (cost, D, restr)
        self.cost, D, restr = best
        self.D = tuple(D)
        pos = {d: j for j, d in enumerate(D)}
        # for each restriction sigma: key[pos(sigma(d_j))] = l(d_j)
        self.sigma_positions = [tuple(pos[e] for e in s) for s in sorted(restr)]
        self.pointwise = len(restr) == 1
        buckets: dict[tuple, list] = {}
        for g in G.arrays:
            buckets.setdefault(tuple(g[d] for d in D), []).append((g, inv(g)))
        self.buckets = buckets
        self.n = n

    def __call__(self, l: tuple):
        D = self.D
        Fset = self.Fset
        if self.pointwise:
            for g, gi in self.buckets.get(tuple(l[d] for d in D), ()):
                f = tuple(map(gi.__getitem__, l))
                if f in Fset:
                    return f, g
            return None
        m = len(D)
        for positions in self.sigma_positions:
            key = [0] * m
            for j, p in enumerate(positions):
                key[p] = l[D[j]]
            for g, gi in self.buckets.get(tuple(key), ()):
                f = tuple(map(gi.__getitem__, l))
                if f in Fset:
                    return f, g
        return None


class ExactFactorization:
    """A verified exact factorization L = F G inside S_n.

    ``k``, ``Gamma`` and ``Delta`` are set when G is sharply k-transitive and
    F is the full symmetric group on Gamma = {1..n-k} (so F fixes Delta =
    {n-k+1..n} pointwise); otherwise they are None.
    """

    def __init__(self, F: PermGroup, G: PermGroup, name: str | None = None,
                 cache_size: int = 1 << 20):
        self.F = F
        self.G = G
        self.n = F.n
        self.name = name
        self._decomposer = _Decomposer(F, G)
        self._cache: dict[tuple, tuple] = {}
        self._cache_size = cache_size
        self.k = self.Gamma = self.Delta = None
        self.sharp_k = None
        self._verify()
        self._detect_shape()

    # ----------------------------------------------------------- verification
    def _verify(self):
        F, G, n = self.F, self.G, self.n
        if G.n != n:
            raise NotExact(f"degree mismatch: F on {n} points, G on {G.n}")
        small, big = (F, G) if F.order <= G.order else (G, F)
        for a in small.arrays:
            if a in big.elementset and any(i != j for i, j in enumerate(a)):
                raise NotExact(f"F and G intersect nontrivially in {Permutation.from_array(a)}",
                               Permutation.from_array(a))
        self.order = F.order * G.order
        if self.order == math.factorial(n):
            self.is_symmetric = True
            return
        self.is_symmetric = False
        if math.factorial(n) % self.order:
            raise NotExact(f"|F||G| = {self.order} does not divide {n}!")
        # F G is a group iff s f lies in F G for every generator s of G and f in F
        for s in G.generators:
            sa = s.array
            for f in F.arrays:
                if self._decomposer(mul(sa, f)) is None:
                    w = Permutation.from_array(mul(sa, f))
                    raise NotExact(f"F G is not closed: {s} * {Permutation.from_array(f)} = {w} "
                                   "has no factorization", w)

    def _detect_shape(self):
        n, G, F = self.n, self.G, self.F
        for k in range(1, n + 1):
            if G.order == math.perm(n, k):
                if is_sharply_k_transitive(G, k):
                    self.sharp_k = k
                break
        k = self.sharp_k
        if k is None or F.order != math.factorial(n - k):
            return
        if all(a[d] == d for a in F.arrays for d in range(n - k, n)):
            self.k = k
            self.Gamma = tuple(range(1, n - k + 1))
            self.Delta = tuple(range(n - k + 1, n + 1))

    @property
    def sharp_shape(self) -> bool:
        return self.k is not None

    @property
    def L_order(self) -> int:
        return self.order

    # ---------------------------------------------------------- decomposition
    def decompose_raw(self, l: tuple) -> tuple[tuple, tuple]:
        hit = self._cache.get(l)
        if hit is not None:
            return hit
        fg = self._decomposer(l)
        if fg is None:
            raise ValueError(f"{Permutation.from_array(l)} is not in F G")
        if len(self._cache) < self._cache_size:
            self._cache[l] = fg
        return fg

    def decompose(self, l: Permutation) -> tuple[Permutation, Permutation]:
        if l.n != self.n:
            raise ValueError(f"degree mismatch: {l.n} vs {self.n}")
        f, g = self.decompose_raw(l.array)
        return Permutation.from_array(f), Permutation.from_array(g)

    def actions_raw(self, g: tuple, f: tuple) -> tuple[tuple, tuple]:
        """(g |> f, g <| f) on raw tuples."""
        return self.decompose_raw(tuple(map(f.__getitem__, g)))

    def right_raw(self, g: tuple, f: tuple) -> tuple:
        """g <| f, computed without caching (hot loop for orbit sweeps)."""
        l = tuple(map(f.__getitem__, g))
        hit = self._cache.get(l)
        if hit is not None:
            return hit[1]
        return self._decomposer(l)[1]

    def left_raw(self, g: tuple, f: tuple) -> tuple:
        return self.actions_raw(g, f)[0]

    def act_right(self, g: Permutation, f: Permutation) -> Permutation:
        self._check(g, f)
        return Permutation.from_array(self.actions_raw(g.array, f.array)[1])

    def act_left(self, g: Permutation, f: Permutation) -> Permutation:
        self._check(g, f)
        return Permutation.from_array(self.actions_raw(g.array, f.array)[0])

    def _check(self, g: Permutation, f: Permutation):
        if g not in self.G:
            raise ValueError(f"{g} is not in G")
        if f not in self.F:
            raise ValueError(f"{f} is not in F")

    def __repr__(self):
        label = self.name or f"F(order {self.F.order}) G(order {self.G.order})"
        return f"ExactFactorization({label}, n={self.n})"


def build(F: PermGroup, G: PermGroup, name: str | None = None) -> ExactFactorization:
    """Verify that L = F G is exact and return the factorization object."""
    return ExactFactorization(F, G, name=name)


def decompose(fact: ExactFactorization, l: Permutation) -> tuple[Permutation, Permutation]:
    return fact.decompose(l)


def act_right(fact: ExactFactorization, g: Permutation, f: Permutation) -> Permutation:
    """g <| f."""
    return fact.act_right(g, f)


def act_left(fact: ExactFactorization, g: Permutation, f: Permutation) -> Permutation:
    """g |> f."""
    return fact.act_left(g, f)


def conjugate_factors(fact: ExactFactorization, x: Permutation,
                      y: Permutation) -> ExactFactorization:
    """The factorization F^y G^x (conjugation s^x = x^-1 s x), reverified."""
    return ExactFactorization(fact.F.conjugate(y), fact.G.conjugate(x),
                              name=(fact.name + " conjugated") if fact.name else None)


def product_table(F: PermGroup, G: PermGroup) -> dict[tuple, tuple[tuple, tuple]]:
    """Exhaustive map f g -> (f, g) over F x G; raises NotExact on a repeat."""
    table = {}
    for f in F.arrays:
        for g in G.arrays:
            l = tuple(map(g.__getitem__, f))
            if l in table:
                raise NotExact(f"{Permutation.from_array(l)} has two factorizations",
                               Permutation.from_array(l))
            table[l] = (f, g)
    return table
