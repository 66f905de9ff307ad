import random

from bismash.perm import Permutation


def exact_conjugators(fact, rng: random.Random, count: int):
    """(x, y) pairs for which F^y G^x is again an exact factorization of L.

    Three kinds: a common conjugator from S_n, F conjugated by an element
    of G, or G conjugated by an element of F.
    """
    n = fact.n
    out = []
    for i in range(count):
        e = Permutation.identity(n)
        kind = i % 3
        if kind == 0:
            pts = list(range(1, n + 1))
            rng.shuffle(pts)
            x = Permutation(pts)
            out.append((x, x))
        elif kind == 1:
            out.append((e, rng.choice(fact.G.elements)))
        else:
            out.append((rng.choice(fact.F.elements), e))
    return out
