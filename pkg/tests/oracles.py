"""Independent brute-force oracles used to freeze expected values.

Everything here recomputes invariants from first principles (explicit subset
enumeration, textbook recursions, hand convolution) without touching the
package's internal representations, so an agreement is evidence rather than
tautology.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def closure_of_facets(facets):
    """All subsets of the given facets, plus the empty set."""
    faces = {frozenset()}
    for f in facets:
        f = tuple(f)
        for k in range(1, len(f) + 1):
            faces.update(frozenset(c) for c in itertools.combinations(f, k))
    return faces


def f_counts(faces):
    """(f_{-1}, f_0, ..., f_{d-1}) by direct counting."""
    top = max(len(f) for f in faces)
    out = [0] * (top + 1)
    for f in faces:
        out[len(f)] += 1
    return tuple(out)


def euler_from_faces(faces):
    return sum((-1) ** (len(f) - 1) if len(f) else -1 for f in faces)


def h_closed_form(f, d):
    """h_k = sum_i (-1)^{k-i} C(d-i, k-i) f_{i-1}, the expanded transform."""
    def c(n, k):
        return math.comb(n, k) if 0 <= k <= n else 0

    return tuple(
        sum((-1) ** (k - i) * c(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def link_faces(faces, f):
    """lk F by literal definition: G disjoint from F with F ∪ G a face."""
    f = frozenset(f)
    return {g for g in faces if not (g & f) and (g | f) in faces}


def naive_mobius(elements, covers):
    """Textbook Möbius recursion over the transitive closure of a cover list.

    Returns (leq, mu) where mu is a dict over comparable pairs.
    """
    leq = {(a, a) for a in elements}
    leq |= set(covers)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(leq):
            for (c, d) in list(leq):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
    mu = {}

    def mu_of(s, t):
        if (s, t) in mu:
            return mu[(s, t)]
        if s == t:
            mu[(s, t)] = 1
        else:
            mu[(s, t)] = -sum(mu_of(s, u) for u in elements
                              if (s, u) in leq and (u, t) in leq and u != t)
        return mu[(s, t)]

    for (s, t) in leq:
        mu_of(s, t)
    return leq, mu


# --- hand-rolled polynomials over Fraction, lowest degree first ---------------

def p_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def p_add(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return p_trim(out)


def p_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        for j, e in enumerate(b):
            out[i + j] += c * e
    return p_trim(out)


def p_scale(a, c):
    return p_trim([x * Fraction(c) for x in a])


def p_xm1_pow(n):
    out = [Fraction(1)]
    for _ in range(n):
        out = p_mul(out, [Fraction(-1), Fraction(1)])
    return out


def naive_toric(elements, covers):
    """Toric h/g by the literal recursion over materialized lower intervals.

    Returns coefficient lists (lowest degree first) for hhat(P) and ghat(P).
    Quadratic and memo-free on purpose.
    """
    leq, _ = naive_mobius(elements, covers)
    order = []
    remaining = set(elements)
    while remaining:
        layer = sorted((a for a in remaining
                        if all(b == a or (b, a) not in leq for b in remaining)),
                       key=str)
        order.extend(layer)
        remaining -= set(layer)
    ranks = {a: 0 for a in elements}
    for a in order:
        below = [b for b in elements if (b, a) in leq and b != a]
        ranks[a] = 1 + max((ranks[b] for b in below), default=-1)

    ghat = {}
    hhat = {}

    def h_of(t):
        if t in hhat:
            return hhat[t]
        below = [u for u in elements if (u, t) in leq and u != t]
        if not below:
            hhat[t] = [Fraction(1)]
            ghat[t] = [Fraction(1)]
            return hhat[t]
        d_t = ranks[t] - 1
        acc = []
        for u in below:
            acc = p_add(acc, p_mul(g_of(u), p_xm1_pow(d_t - ranks[u])))
        hhat[t] = acc
        return acc

    def g_of(t):
        if t in ghat:
            return ghat[t]
        h = h_of(t)
        if t in ghat:  # the bottom element fills both tables at once
            return ghat[t]
        d_t = ranks[t] - 1
        m = d_t // 2
        shifted = p_add(h, p_scale(p_mul([Fraction(0), Fraction(1)], h), -1))
        ghat[t] = p_trim(shifted[: m + 1])
        return ghat[t]

    top = max(elements, key=lambda a: ranks[a])
    return p_trim(h_of(top)), p_trim(g_of(top))
