"""Irreducible characters: Murnaghan-Nakayama for symmetric groups, Dixon's
modular method for everything else.

Character values are stored as Python complex numbers together with an exact
description (element order and eigenvalue multiplicities) from which they
were built.  Rows whose values are all rational integers are flagged so that
downstream sums can be done in exact rational arithmetic.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from sympy import GF, Poly, Symbol, isprime, sqrt_mod
from sympy.polys.matrices import DomainMatrix

from .group import PermGroup, ResourceCapError, conjugacy_classes, inv, mul, round_integral

__all__ = [
    "Partition",
    "partitions",
    "sym_character",
    "sym_dimension",
    "CharacterTable",
    "LiftError",
    "dixon_table",
    "symmetric_table",
    "character_table",
    "fs_indicator_row",
    "DIXON_CAP",
]

DIXON_CAP = 2 * 10**5
MAX_CLASSES = 60
TOL = 1e-8


class LiftError(ArithmeticError):
    """Modular character values could not be lifted to characteristic zero."""


# ------------------------------------------------------------------ partitions
class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts if p)
        if any(p < 0 for p in parts):
            raise ValueError("parts must be positive")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    def __repr__(self):
        return f"Partition({tuple(self)})"


def partitions(m: int, largest: int | None = None):
    """All partitions of m in reverse lexicographic order."""
    if largest is None:
        largest = m
    if m == 0:
        yield Partition()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            yield Partition((first,) + tuple(rest))


@lru_cache(maxsize=None)
def _mn(beta: tuple, mu: tuple) -> int:
    # beta: strictly increasing beta-set of the shape; mu: remaining cycle lengths
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    bset = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in bset:
            continue
        # leg length = number of beta-numbers strictly between c and b
        leg = sum(1 for e in beta if c < e < b)
        new = tuple(sorted((bset - {b}) | {c}))
        total += (-1) ** leg * _mn(new, rest)
    return total


def sym_character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """chi_lambda on the class of cycle type mu, by border-strip removal."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size:
        raise ValueError(f"|lambda| = {lam.size} differs from |mu| = {mu.size}")
    ell = len(lam)
    beta = tuple(sorted(lam[i] + (ell - 1 - i) for i in range(ell)))
    return _mn(beta, tuple(mu))


def sym_dimension(lam: Sequence[int]) -> int:
    """Hook-length formula."""
    lam = Partition(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(lam.size) // hooks


# ------------------------------------------------------------------- the table
class CharacterTable:
    """Irreducible characters of an enumerated permutation group.

    ``rows[i][c]`` is the value of the i-th character on class ``c`` (as in
    ``group.conjugacy_classes()``).
    """

    def __init__(self, group: PermGroup, rows, exact=None, labels=None):
        self.group = group
        self.classes = conjugacy_classes(group)
        order = sorted(range(len(rows)), key=lambda i: _row_key(rows[i]))
        self.rows = [list(rows[i]) for i in order]
        self.exact = [exact[i] for i in order] if exact is not None else None
        self.labels = [labels[i] for i in order] if labels is not None else None
        self.integral = [all(isinstance(v, int) for v in row) for row in self.rows]
        self.degrees = [round_integral(row[0]) for row in self.rows]
        self._check()

    @property
    def count(self) -> int:
        return len(self.rows)

    def _check(self):
        G = self.group
        sizes = [c.size for c in self.classes]
        if len(self.rows) != len(sizes):
            raise LiftError("number of characters differs from number of classes")
        if sum(d * d for d in self.degrees) != G.order:
            raise LiftError("squared degrees do not sum to the group order")
        inv_class = [G.class_index(inv(c.representative.array)) for c in self.classes]
        for i, ri in enumerate(self.rows):
            for j in range(i, len(self.rows)):
                rj = self.rows[j]
                s = sum(sz * ri[c] * rj[inv_class[c]] for c, sz in enumerate(sizes)) / G.order
                if abs(s - (i == j)) > TOL:
                    raise LiftError(f"rows {i} and {j} are not orthogonal ({s})")
        for a in range(len(sizes)):
            for b in range(a, len(sizes)):
                s = sum(row[a] * complex(row[b]).conjugate() for row in self.rows)
                expect = G.order / sizes[a] if a == b else 0
                if abs(s - expect) > TOL * max(1, G.order):
                    raise LiftError(f"columns {a} and {b} are not orthogonal")

    def value(self, row: int, g) -> complex | int:
        return self.rows[row][self.group.class_index(g)]

    def character(self, row: int):
        """The i-th character as a callable on group elements."""
        return lambda g: self.value(row, g)

    def degree(self, row: int) -> int:
        return self.degrees[row]

    def to_csv(self) -> str:
        head = ["character"] + [c.representative.cycle_str() for c in self.classes]
        lines = [",".join(f'"{h}"' if "," in h else h for h in head)]
        for i, row in enumerate(self.rows):
            lines.append(",".join([f"chi{i + 1}"] + [_fmt(v) for v in row]))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"CharacterTable(order={self.group.order}, degrees={self.degrees})"


def _fmt(v) -> str:
    if isinstance(v, int):
        return str(v)
    z = complex(v)
    if abs(z.imag) < 1e-12:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}i"


def _row_key(row):
    return (round(complex(row[0]).real),
            [(round(complex(v).real, 9), round(complex(v).imag, 9)) for v in row])


# --------------------------------------------------------- symmetric on support
def _symmetric_support(G: PermGroup) -> list[int] | None:
    pts = G.moved_points()
    if G.order in (1, 2) or G.order != math.factorial(len(pts)):
        return None
    return pts


def symmetric_table(G: PermGroup) -> CharacterTable:
    """Table of a group that is the full symmetric group on its moved points."""
    pts = _symmetric_support(G)
    if pts is None:
        raise ValueError("group is not a full symmetric group on its support")
    m = len(pts)
    idx = [p - 1 for p in pts]
    classes = conjugacy_classes(G)
    types = []
    for c in classes:
        a = c.representative.array
        seen = set()
        lengths = []
        for s in idx:
            if s in seen:
                continue
            ln, j = 0, s
            while j not in seen:
                seen.add(j)
                j = a[j]
                ln += 1
            lengths.append(ln)
        types.append(Partition(lengths))
    lams = list(partitions(m))
    rows = [[sym_character(lam, mu) for mu in types] for lam in lams]
    return CharacterTable(G, rows, labels=lams)


# -------------------------------------------------------------------- Dixon
def _choose_prime(exponent: int, order: int) -> int:
    # p = 1 mod exponent, and p > 2 * sqrt|G| * (max degree <= sqrt|G|) = 2|G|
    p = exponent * (2 * order // exponent + 1) + 1
    while not isprime(p):
        p += exponent
    return p


def _class_matrix(G: PermGroup, classes, j: int) -> list[list[int]]:
    """(M_j)[i][l] = #{x in C_j : x^-1 z_l in C_i}."""
    r = len(classes)
    class_of = G._class_of
    Cj = [inv(x) for x in classes[j].members]
    M = [[0] * r for _ in range(r)]
    for l, cl in enumerate(classes):
        z = cl.representative.array
        for xi in Cj:
            M[class_of[mul(xi, z)]][l] += 1
    return M


def _split(spaces, N: DomainMatrix, Fp):
    out = []
    x = Symbol("x")
    for S in spaces:
        if S.shape[0] == 1:
            out.append(S)
            continue
        _, pivots = S.rref()
        A = (S * N).extract(list(range(S.shape[0])), list(pivots))
        cp = Poly(A.charpoly(), x, domain=Fp)
        d = S.shape[0]
        for z in cp.ground_roots():
            B = A - DomainMatrix.eye(d, Fp) * Fp(int(z))
            coeffs = B.transpose().nullspace()
            sub = (coeffs * S).rref()[0]
            out.append(sub)
    return out


def dixon_table(G: PermGroup, cap: int | None = None) -> CharacterTable:
    """Character table by Dixon's method over GF(p), lifted through eigenvalue multiplicities."""
    cap = DIXON_CAP if cap is None else cap
    if G.order > cap:
        raise ResourceCapError(f"|G| = {G.order} exceeds the character-table cap {cap}")
    classes = conjugacy_classes(G)
    r = len(classes)
    if r > MAX_CLASSES:
        raise ResourceCapError(f"{r} classes exceed the limit {MAX_CLASSES}")
    if r == 1:
        return CharacterTable(G, [[1]], exact=[[(1, (1,))]])
    orders = [c.representative.order() for c in classes]
    e = math.lcm(*orders)
    p = _choose_prime(e, G.order)
    Fp = GF(p)
    sizes = [c.size for c in classes]

    spaces = [DomainMatrix.eye(r, Fp)]
    for j in range(1, r):
        if all(S.shape[0] == 1 for S in spaces):
            break
        M = _class_matrix(G, classes, j)
        # row eigenvectors of the transpose are the central-character vectors
        N = DomainMatrix([[Fp(M[l][i]) for l in range(r)] for i in range(r)], (r, r), Fp)
        spaces = _split(spaces, N, Fp)
    if len(spaces) != r or any(S.shape[0] != 1 for S in spaces):
        raise LiftError("class matrices did not split into one-dimensional eigenspaces")

    inv_class = [G.class_index(inv(c.representative.array)) for c in classes]
    power = [[G.class_index(_power(c.representative.array, t)) for t in range(orders[i])]
             for i, c in enumerate(classes)]
    zeta = _root_of_unity(e, p)
    rows, exact = [], []
    for S in spaces:
        w = [int(v) % p for v in S.to_list()[0]]
        w0inv = pow(w[0], -1, p)
        w = [v * w0inv % p for v in w]
        s = sum(w[i] * w[inv_class[i]] * pow(sizes[i], -1, p) for i in range(r)) % p
        d2 = G.order * pow(s, -1, p) % p
        d = _small_sqrt(d2, p, G.order)
        chi_p = [d * w[i] * pow(sizes[i], -1, p) % p for i in range(r)]
        row, ex = [], []
        for i in range(r):
            o = orders[i]
            zo = pow(zeta, e // o, p)
            oinv = pow(o, -1, p)
            mult = []
            for s_ in range(o):
                acc = sum(chi_p[power[i][t]] * pow(zo, (-s_ * t) % o, p) for t in range(o))
                mval = acc * oinv % p
                if mval > d:
                    raise LiftError(f"eigenvalue multiplicity {mval} exceeds degree {d}")
                mult.append(mval)
            if sum(mult) != d:
                raise LiftError("eigenvalue multiplicities do not add up to the degree")
            row.append(_cyclotomic_value(o, mult))
            ex.append((o, tuple(mult)))
        rows.append(row)
        exact.append(ex)
    return CharacterTable(G, rows, exact=exact)


def _power(a: tuple, t: int) -> tuple:
    out = tuple(range(len(a)))
    for _ in range(t):
        out = mul(out, a)
    return out


def _root_of_unity(e: int, p: int) -> int:
    """An element of exact multiplicative order e modulo p."""
    primes = [q for q in range(2, e + 1) if e % q == 0 and isprime(q)]
    for g in range(2, p):
        z = pow(g, (p - 1) // e, p)
        if all(pow(z, e // q, p) != 1 for q in primes):
            return z
    raise LiftError("no primitive root of unity found")


def _small_sqrt(d2: int, p: int, order: int) -> int:
    roots = sqrt_mod(d2, p, all_roots=True) or []
    good = [x for x in roots if 0 < x and x * x <= order]
    if len(good) != 1:
        raise LiftError("character degree could not be identified")
    return good[0]


def _cyclotomic_value(o: int, mult: Sequence[int]):
    """sum_s mult[s] * exp(2 pi i s / o); a Python int when the value is an integer."""
    z = sum(m * cmath.exp(2j * math.pi * s / o) for s, m in enumerate(mult) if m)
    r = round(z.real)
    if abs(z.imag) < 1e-9 and abs(z.real - r) < 1e-9:
        return int(r)
    return complex(z)


def character_table(G: PermGroup, cap: int | None = None) -> CharacterTable:
    """Murnaghan-Nakayama when G is symmetric on its support, Dixon otherwise."""
    if _symmetric_support(G) is not None:
        return symmetric_table(G)
    return dixon_table(G, cap)


def fs_indicator_row(G: PermGroup, table: CharacterTable, row: int) -> int:
    """(1/|G|) sum_g chi(g^2) for one row of the table."""
    counts = [0] * len(table.classes)
    for a in G.arrays:
        counts[G.class_index(mul(a, a))] += 1
    vals = table.rows[row]
    if table.integral[row]:
        value = Fraction(sum(c * v for c, v in zip(counts, vals)), G.order)
    else:
        value = sum(c * v for c, v in zip(counts, vals)) / G.order
    nu = round_integral(value)
    if nu not in (-1, 0, 1):
        raise ArithmeticError(f"indicator {nu} outside {{-1,0,1}}")
    return nu
