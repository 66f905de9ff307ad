"""Permutations of {1..n} with left-to-right composition.

Points are 1-indexed at every public boundary (cycle notation, ``images``,
``fixed_points``) and 0-indexed internally.  ``p * q`` means "apply p, then
q", so ``i^(pq) = (i^p)^q`` and ``(1,2)*(1,3) == (1,2,3)``.
"""
from __future__ import annotations

import math
import re
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "compose",
    "conjugate",
    "fixed_points",
    "involution_count",
    "fixed_point_profile",
    "involution_count_k2",
    "involution_count_k3",
]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")

# enumeration of S_n is refused above this degree
MAX_ENUMERATION_DEGREE = 9


class Permutation:
    """Immutable bijection of {1..n}.

    >>> Permutation.parse("(1,2)") * Permutation.parse("(1,3)")
    Permutation.parse('(1,2,3)', 3)
    """

    __slots__ = ("_a", "_hash")

    def __init__(self, images: Sequence[int]):
        # 1-indexed images: images[i-1] = i^p
        a = tuple(i - 1 for i in images)
        if sorted(a) != list(range(len(a))):
            raise ValueError(f"not a bijection of 1..{len(a)}: {list(images)}")
        self._a = a
        self._hash = hash(a)

    @classmethod
    def from_array(cls, array: Sequence[int]) -> "Permutation":
        """Wrap a 0-indexed image tuple without validation."""
        p = object.__new__(cls)
        p._a = tuple(array)
        p._hash = hash(p._a)
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls.from_array(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        a = list(range(n))
        seen = set()
        for cyc in cycles:
            for pt in cyc:
                if not 1 <= pt <= n:
                    raise ValueError(f"point {pt} outside 1..{n}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated in cycle notation")
                seen.add(pt)
            for i, pt in enumerate(cyc):
                a[pt - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls.from_array(a)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse GAP-style cycle notation such as ``"(1,2,3)(4,5)"`` or ``"()"``.

        Without ``n`` the degree is the largest point mentioned.
        """
        text = text.strip()
        if not text or text.replace(" ", "") != "".join(
            f"({m})" for m in _CYCLE_RE.findall(text.replace(" ", ""))
        ):
            raise ValueError(f"unparsable cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            body = body.strip()
            if body:
                cycles.append([int(tok) for tok in body.split(",")])
        largest = max((max(c) for c in cycles), default=0)
        if n is None:
            n = largest
        elif largest > n:
            raise ValueError(f"point {largest} outside 1..{n}")
        return cls.from_cycles(cycles, n)

    # ------------------------------------------------------------------ data
    @property
    def n(self) -> int:
        return len(self._a)

    @property
    def array(self) -> tuple[int, ...]:
        """0-indexed image tuple (internal form)."""
        return self._a

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self._a)

    def __call__(self, point: int) -> int:
        """Image of a 1-indexed point."""
        return self._a[point - 1] + 1

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._a == other._a

    def __lt__(self, other: "Permutation") -> bool:
        return self._a < other._a

    def __hash__(self):
        return self._hash

    # ------------------------------------------------------------ arithmetic
    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        inv = [0] * len(self._a)
        for i, j in enumerate(self._a):
            inv[j] = i
        return Permutation.from_array(inv)

    inverse = __invert__

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return (~self) ** (-k)
        result = Permutation.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __xor__(self, x: "Permutation") -> "Permutation":
        """``s ^ x`` is the conjugate ``x^-1 s x``."""
        return conjugate(self, x)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._a))

    def is_involution(self) -> bool:
        """True when the square is the identity (the identity counts)."""
        a = self._a
        return all(a[j] == i for i, j in enumerate(a))

    # ------------------------------------------------------------- structure
    def cycles(self, singletons: bool = False) -> list[tuple[int, ...]]:
        """Cycles as 1-indexed tuples, each starting at its smallest point."""
        a = self._a
        seen = [False] * len(a)
        out = []
        for start in range(len(a)):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = a[j]
            if len(cyc) > 1 or singletons:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Partition of n given by the cycle lengths, descending."""
        return tuple(sorted((len(c) for c in self.cycles(singletons=True)), reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(singletons=True))) if self.n else 1

    def sign(self) -> int:
        """+1 for even permutations, -1 for odd ones."""
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    parity = sign

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i + 1 for i, j in enumerate(self._a) if i == j)

    def restrict(self, points: Iterable[int]) -> dict[int, int]:
        return {pt: self(pt) for pt in points}

    # -------------------------------------------------------------- printing
    def cycle_str(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycs)

    __str__ = cycle_str

    def __repr__(self):
        return f"Permutation.parse({self.cycle_str()!r}, {self.n})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right product: the result sends i to (i^p)^q."""
    if p.n != q.n:
        raise ValueError(f"domain mismatch: degree {p.n} vs {q.n}")
    return Permutation.from_array(map(q._a.__getitem__, p._a))


def conjugate(s: Permutation, x: Permutation) -> Permutation:
    """``x^-1 * s * x``; maps each cycle (a,b,...) of s to (a^x,b^x,...)."""
    if s.n != x.n:
        raise ValueError(f"domain mismatch: degree {s.n} vs {x.n}")
    out = [0] * s.n
    xa = x._a
    for i, j in enumerate(s._a):
        out[xa[i]] = xa[j]
    return Permutation.from_array(out)


def fixed_points(p: Permutation) -> frozenset[int]:
    return p.fixed_points()


@lru_cache(maxsize=None)
def involution_count(n: int) -> int:
    """Number of sigma in S_n with sigma^2 = 1, via i_n = i_{n-1} + (n-1) i_{n-2}."""
    if n < 0:
        raise ValueError("n must be non-negative")
    prev, cur = 1, 1  # i_0, i_1
    if n == 0:
        return 1
    for m in range(2, n + 1):
        prev, cur = cur, cur + (m - 1) * prev
    return cur


def involution_count_k2(n: int) -> int:
    """i_n rewritten through i_{n-2}, i_{n-3}, i_{n-4} (needs n >= 4)."""
    i = involution_count
    return 2 * i(n - 2) + 2 * (n - 2) * i(n - 3) + (n - 2) * (n - 3) * i(n - 4)


def involution_count_k3(n: int) -> int:
    """i_n rewritten through i_{n-3} .. i_{n-6} (needs n >= 6)."""
    i = involution_count
    return (4 * i(n - 3) + 6 * (n - 3) * i(n - 4)
            + 3 * (n - 3) * (n - 4) * i(n - 5)
            + (n - 3) * (n - 4) * (n - 5) * i(n - 6))


def fixed_point_profile(n: int) -> dict[int, int]:
    """phi(m) = number of sigma in S_n with exactly m fixed points, by enumeration.

    Every m in 0..n is present as a key (possibly with value 0).
    """
    if n > MAX_ENUMERATION_DEGREE:
        raise MemoryError(f"refusing to enumerate S_{n} (limit S_{MAX_ENUMERATION_DEGREE})")
    phi = dict.fromkeys(range(n + 1), 0)
    for p in permutations(range(n)):
        phi[sum(1 for i, j in enumerate(p) if i == j)] += 1
    return phi
