"""Constructors for the concrete permutation groups used by the engine.

Field elements are integers 0..q-1 whose base-p digits are coefficients in
the power basis of GF(p)[t]/(f).  Affine groups act on field labels e -> e+1;
projective groups act on the line with infinity -> 1 and e -> e+2.
"""
from __future__ import annotations

import math
import re
from itertools import permutations
from typing import Callable

from .group import PermGroup, close
from .perm import Permutation

__all__ = [
    "FiniteField",
    "cyclic_regular",
    "symmetric",
    "alternating",
    "symmetric_on",
    "alternating_on",
    "agl1",
    "asl1",
    "agammal1",
    "pgl2",
    "psl2",
    "pgammal2",
    "mathieu",
    "wtilde_s",
    "is_sharply_k_transitive",
    "is_sharply_k_transitive_bruteforce",
    "embed",
    "from_name",
    "CatalogError",
]


class CatalogError(ValueError):
    pass


# A fixed irreducible polynomial per (p, e), low-degree coefficient first.
IRREDUCIBLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
}


def prime_power(q: int) -> tuple[int, int]:
    """(p, e) with q = p^e, or raise."""
    if q < 2:
        raise CatalogError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            r = q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise CatalogError(f"{q} is not a prime power")
            return p, e
    raise AssertionError


class FiniteField:
    """GF(q) with exact addition and multiplication tables."""

    def __init__(self, q: int):
        p, e = prime_power(q)
        if q > 32:
            raise CatalogError(f"field size {q} above supported limit 32")
        self.q, self.p, self.e = q, p, e
        if e == 1:
            self.poly = (0, 1)
        else:
            if (p, e) not in IRREDUCIBLE:
                raise CatalogError(f"no polynomial stored for GF({p}^{e})")
            self.poly = IRREDUCIBLE[(p, e)]
        digits = [self._digits(x) for x in range(q)]
        self.add = [[self._number([(a + b) % p for a, b in zip(da, db)]) for db in digits]
                    for da in digits]
        self.mul = [[self._number(self._polymul(da, db)) for db in digits] for da in digits]
        self.neg = [self.add[x].index(0) for x in range(q)]
        self.inv = [None] + [self.mul[x].index(1) if 1 in self.mul[x] else None
                             for x in range(1, q)]
        if any(v is None for v in self.inv[1:]):
            raise CatalogError(f"stored polynomial for GF({q}) is reducible")
        self.primitive = self._find_primitive()
        self.frobenius = [self.power(x, p) for x in range(q)]

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(x % self.p)
            x //= self.p
        return out

    def _number(self, digits) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _polymul(self, a, b) -> list[int]:
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        f = self.poly
        lead_inv = pow(f[e], -1, p)
        for d in range(len(prod) - 1, e - 1, -1):
            c = prod[d] * lead_inv % p
            if c:
                for i in range(e + 1):
                    prod[d - e + i] = (prod[d - e + i] - c * f[i]) % p
        return prod[:e]

    def power(self, x: int, k: int) -> int:
        r = 1
        for _ in range(k):
            r = self.mul[r][x]
        return r

    def mult_order(self, x: int) -> int:
        k, r = 1, x
        while r != 1:
            r = self.mul[r][x]
            k += 1
        return k

    def _find_primitive(self) -> int:
        for x in range(1, self.q):
            if self.mult_order(x) == self.q - 1:
                return x
        raise CatalogError("multiplicative group is not cyclic")

    def __repr__(self):
        return f"FiniteField({self.q})"


def _perm_from_map(f: Callable[[int], int], n: int) -> Permutation:
    return Permutation([f(i) for i in range(1, n + 1)])


def cyclic_regular(n: int) -> PermGroup:
    """<(1,2,...,n)> acting regularly."""
    if n < 2:
        raise CatalogError("n must be at least 2")
    return close([Permutation.from_cycles([range(1, n + 1)], n)], n)


def symmetric_on(points, n: int) -> PermGroup:
    """Full symmetric group on ``points`` inside S_n."""
    pts = sorted(points)
    gens = []
    if len(pts) >= 2:
        gens.append(Permutation.from_cycles([pts[:2]], n))
    if len(pts) >= 3:
        gens.append(Permutation.from_cycles([pts], n))
    return close(gens, n)


def alternating_on(points, n: int) -> PermGroup:
    pts = sorted(points)
    gens = [Permutation.from_cycles([(pts[0], pts[1], c)], n) for c in pts[2:]]
    return close(gens, n)


def symmetric(n: int) -> PermGroup:
    return symmetric_on(range(1, n + 1), n)


def alternating(n: int) -> PermGroup:
    return alternating_on(range(1, n + 1), n)


def _affine_gens(K: FiniteField, frobenius: bool) -> list[Permutation]:
    q = K.q
    w = K.primitive
    gens = [_perm_from_map(lambda i: K.add[i - 1][1] + 1, q),
            _perm_from_map(lambda i: K.mul[i - 1][w] + 1, q)]
    if frobenius and K.e > 1:
        gens.append(_perm_from_map(lambda i: K.frobenius[i - 1] + 1, q))
    return gens


def agl1(q: int) -> PermGroup:
    """AGL(1,q): x -> gx + y, order q(q-1)."""
    return close(_affine_gens(FiniteField(q), False), q)


def asl1(q: int) -> PermGroup:
    """Even permutations in AGL(1,q)."""
    G = agl1(q)
    return G.subgroup(lambda a: Permutation.from_array(a).sign() == 1)


def agammal1(q: int) -> PermGroup:
    """AGammaL(1,q): x -> g x^sigma + y."""
    return close(_affine_gens(FiniteField(q), True), q)


def _projective(K: FiniteField, kind: str) -> list[Permutation]:
    q = K.q
    n = q + 1
    INF = None

    def label(x):
        return 1 if x is INF else x + 2

    def point(i):
        return INF if i == 1 else i - 2

    def mobius(f):
        return _perm_from_map(lambda i: label(f(point(i))), n)

    w = K.primitive
    one = 1
    translate = mobius(lambda x: INF if x is INF else K.add[x][one])
    mult = w if kind != "psl" else K.mul[w][w]
    scale = mobius(lambda x: INF if x is INF else K.mul[x][mult])
    if kind == "psl":
        minus_one = K.neg[1]
        invert = mobius(lambda x: 0 if x is INF else (INF if x == 0 else K.mul[minus_one][K.inv[x]]))
    else:
        invert = mobius(lambda x: 0 if x is INF else (INF if x == 0 else K.inv[x]))
    gens = [translate, scale, invert]
    if kind == "pgammal" and K.e > 1:
        gens.append(mobius(lambda x: INF if x is INF else K.frobenius[x]))
    return gens


def pgl2(q: int) -> PermGroup:
    """PGL(2,q) on the projective line, order (q+1)q(q-1)."""
    return close(_projective(FiniteField(q), "pgl"), q + 1)


def psl2(q: int) -> PermGroup:
    return close(_projective(FiniteField(q), "psl"), q + 1)


def pgammal2(q: int) -> PermGroup:
    return close(_projective(FiniteField(q), "pgammal"), q + 1)


_MATHIEU_GENS = {
    11: ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"],
    12: ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)",
         "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"],
}
_mathieu_cache: dict[int, PermGroup] = {}


def mathieu(which: int) -> PermGroup:
    """M11 (sharply 4-transitive on 11 points) or M12 (sharply 5-transitive on 12)."""
    if which not in _MATHIEU_GENS:
        raise CatalogError("only M11 and M12 are available")
    if which not in _mathieu_cache:
        G = close([Permutation.parse(s, which) for s in _MATHIEU_GENS[which]], which)
        k = which - 7
        if not is_sharply_k_transitive(G, k):
            raise CatalogError(f"built-in M{which} generators are not sharply {k}-transitive")
        _mathieu_cache[which] = G
    return _mathieu_cache[which]


def wtilde_s(n: int, k: int) -> PermGroup:
    """<(1,j)(n-1,n) : 2 <= j <= n-k>, a copy of S_{n-k} that also moves n-1, n."""
    if k < 2 or n - k < 3:
        raise CatalogError("need k >= 2 and n - k >= 3")
    gens = [Permutation.from_cycles([(1, j), (n - 1, n)], n) for j in range(2, n - k + 1)]
    return close(gens, n)


def is_sharply_k_transitive(G: PermGroup, k: int) -> bool:
    """|G| = n(n-1)...(n-k+1) and only the identity fixes k or more points."""
    n = G.n
    if not 0 <= k <= n:
        return False
    if G.order != math.perm(n, k):
        return False
    for a in G.arrays:
        fixed = sum(1 for i, j in enumerate(a) if i == j)
        if k <= fixed < n:
            return False
    return True


def is_sharply_k_transitive_bruteforce(G: PermGroup, k: int) -> bool:
    """Direct test: the action on duplicate-free k-tuples is regular."""
    n = G.n
    base = tuple(range(k))
    images = {}
    for a in G.arrays:
        t = tuple(a[i] for i in base)
        if t in images:
            return False
        images[t] = a
    return len(images) == sum(1 for _ in permutations(range(n), k))


def embed(G: PermGroup, n: int) -> PermGroup:
    """The same group acting on {1..n}, fixing the points beyond its degree."""
    if n == G.n:
        return G
    if n < G.n:
        raise CatalogError(f"cannot embed degree {G.n} into degree {n}")
    tail = tuple(range(G.n, n))
    gens = [Permutation.from_array(g.array + tail) for g in G.generators]
    return PermGroup.from_arrays([a + tail for a in G.arrays], n, gens)


_NAME_RE = re.compile(r"^(C|A|S)(\d+)$|^(AGL1|ASL1|AGammaL1|PGL2|PSL2|PGammaL2):(\d+)$"
                      r"|^(M11|M12)$|^WtS:(\d+):(\d+)$")


def from_name(name: str, n: int | None = None) -> PermGroup:
    """Build a catalog group from its CLI name, embedded in degree n if given."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise CatalogError(f"unknown catalog name {name!r}")
    if m.group(1):
        size = int(m.group(2))
        G = {"C": cyclic_regular, "A": alternating, "S": symmetric}[m.group(1)](size)
    elif m.group(3):
        ctor = {"AGL1": agl1, "ASL1": asl1, "AGammaL1": agammal1,
                "PGL2": pgl2, "PSL2": psl2, "PGammaL2": pgammal2}[m.group(3)]
        G = ctor(int(m.group(4)))
    elif m.group(5):
        G = mathieu(int(m.group(5)[1:]))
    else:
        G = wtilde_s(int(m.group(6)), int(m.group(7)))
    return embed(G, n) if n is not None else G
