"""F-orbits of G under the right action x <| a, and their member classification.

In the sharply k-transitive shape (F = S_Gamma fixing Delta pointwise) an
element g of G is identified with its tuple [alpha_1..alpha_k], alpha_i =
(n-k+i)^g.  The Gamma-indices I(g) are the positions i with alpha_i in
Gamma, the Delta-tuple D(g) lists the remaining alpha_j in order, and a
member is mixed when some i in I has n-k+i among the entries of D(g).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .factorization import ExactFactorization
from .group import PermGroup, _closure, inv, mul
from .perm import Permutation

__all__ = [
    "MemberClass",
    "OrbitRecord",
    "ShapeError",
    "gident_tuple",
    "all_orbits",
    "orbit_record",
    "orbit_of",
    "stabilizer_in_F",
    "classify",
    "family_census",
    "is_null_indicator_orbit",
    "restriction_permutation",
]


class ShapeError(ValueError):
    """The factorization is not of the sharply k-transitive shape."""


@dataclass(frozen=True)
class MemberClass:
    I: frozenset          # Gamma-indices, 1-based positions into the tuple
    D: tuple              # Delta-tuple, in position order
    alphas: tuple         # full identification tuple
    mixed: bool

    @property
    def DeltaSet(self) -> frozenset:
        return frozenset(self.D)

    @property
    def m(self) -> int:
        return len(self.I)


@dataclass
class OrbitRecord:
    index: int
    representative: Permutation
    members: list             # raw tuples, sorted
    stabilizer: PermGroup
    null_indicator: bool
    transversal: dict = field(repr=False)  # y -> u with x <| u = y
    member_class: Optional[MemberClass] = None

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, y) -> bool:
        return (y.array if isinstance(y, Permutation) else y) in self.transversal


def gident_tuple(fact: ExactFactorization, g) -> tuple[int, ...]:
    """[alpha_1..alpha_k] with alpha_i = (n-k+i)^g, 1-indexed points."""
    k = _require_shape(fact)
    a = g.array if isinstance(g, Permutation) else g
    n = fact.n
    return tuple(a[n - k + i] + 1 for i in range(k))


def _require_shape(fact: ExactFactorization) -> int:
    if not fact.sharp_shape:
        raise ShapeError("factorization is not S_Gamma times a sharply k-transitive group")
    return fact.k


def classify(fact: ExactFactorization, g) -> MemberClass:
    k = _require_shape(fact)
    n = fact.n
    alphas = gident_tuple(fact, g)
    gamma_max = n - k
    I = frozenset(i + 1 for i, al in enumerate(alphas) if al <= gamma_max)
    D = tuple(al for al in alphas if al > gamma_max)
    dset = set(D)
    mixed = any(n - k + i in dset for i in I)
    return MemberClass(I, D, alphas, mixed)


def restriction_permutation(fact: ExactFactorization, g) -> dict[int, int]:
    """g restricted to its Delta-set, as a map n-k+j -> alpha_j (unmixed members)."""
    mc = classify(fact, g)
    if mc.mixed:
        raise ValueError("restriction is only a permutation for unmixed members")
    k, n = fact.k, fact.n
    return {n - k + j: mc.alphas[j - 1] for j in range(1, k + 1) if j not in mc.I}


def _stabilizer(F: PermGroup, schreier, target: int) -> PermGroup:
    n = F.n
    ident = tuple(range(n))
    gens: list[tuple] = []
    span = {ident}
    for h in schreier:
        if len(span) >= target:
            break
        if h in span:
            continue
        gens.append(h)
        span = _closure(gens, n, target)
    return PermGroup.from_arrays(span, n, [Permutation.from_array(h) for h in gens])


def _explore(fact: ExactFactorization, x: tuple) -> tuple[dict, PermGroup]:
    """Transversal {y: u_y} with x <| u_y = y, and the stabilizer F_x."""
    F = fact.F
    gens = [s.array for s in F.generators]
    right = fact.right_raw
    trans = {x: tuple(range(fact.n))}
    frontier = [x]
    edges = []
    while frontier:
        new = []
        for y in frontier:
            uy = trans[y]
            for s in gens:
                z = right(y, s)
                us = mul(uy, s)
                if z not in trans:
                    trans[z] = us
                    new.append(z)
                else:
                    edges.append((us, z))
        frontier = new
    if F.order % len(trans):
        raise AssertionError("orbit size does not divide |F|")
    target = F.order // len(trans)
    schreier = (mul(us, inv(trans[z])) for us, z in edges)
    stab = F if target == F.order else _stabilizer(F, schreier, target)
    if stab.order != target:
        raise AssertionError("stabilizer order mismatch")
    return trans, stab


def orbit_record(fact: ExactFactorization, x: Permutation, index: int = -1) -> OrbitRecord:
    """A record for the orbit of x with x itself as the base point."""
    xa = x.array
    if xa not in fact.G.elementset:
        raise ValueError(f"{x} is not in G")
    trans, stab = _explore(fact, xa)
    rec = OrbitRecord(index, x, sorted(trans), stab,
                      null_indicator=inv(xa) not in trans, transversal=trans)
    if fact.sharp_shape:
        rec.member_class = classify(fact, xa)
    return rec


def all_orbits(fact: ExactFactorization) -> list[OrbitRecord]:
    """Partition of G into F-orbits; representatives are least in element order."""
    cached = getattr(fact, "_orbit_records", None)
    if cached is not None:
        return cached
    records = []
    owner: dict[tuple, int] = {}
    for x in fact.G.arrays:
        if x in owner:
            continue
        rec = orbit_record(fact, Permutation.from_array(x), len(records))
        for y in rec.transversal:
            owner[y] = rec.index
        records.append(rec)
    fact._orbit_records = records
    fact._orbit_owner = owner
    return records


def orbit_of(fact: ExactFactorization, x) -> OrbitRecord:
    records = all_orbits(fact)
    a = x.array if isinstance(x, Permutation) else x
    return records[fact._orbit_owner[a]]


def stabilizer_in_F(fact: ExactFactorization, x: Permutation) -> PermGroup:
    """{a in F : x <| a = x}, by direct scan of F."""
    xa = x.array
    right = fact.right_raw
    return fact.F.subgroup(lambda a: right(xa, a) == xa)


def is_null_indicator_orbit(fact: ExactFactorization, x) -> bool:
    """True iff x^-1 lies outside the F-orbit of x."""
    a = x.array if isinstance(x, Permutation) else x
    return inv(a) not in orbit_of(fact, a).transversal


def family_census(fact: ExactFactorization) -> dict[int, tuple[int, int]]:
    """m -> (number of members in the m-family, number of those that are null)."""
    k = _require_shape(fact)
    census = {m: [0, 0] for m in range(k + 1)}
    for rec in all_orbits(fact):
        c = census[rec.member_class.m]
        c[0] += 1
        c[1] += rec.null_indicator
    return {m: tuple(v) for m, v in census.items()}
