"""Graded posets with unique bottom and top.

Elements are interned to dense indices sorted by (rank, label); the order
relation is kept as per-element up/down bitmasks, so interval sweeps and the
memoized Möbius recursion stay cheap at desk scale. All reported values use
the original labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .complexes import SimplicialComplex, label_sort_key
from .errors import (
    CycleDetected,
    InternalError,
    NoUniqueBottom,
    NotAChain,
    NotComparable,
    NotGraded,
    NotSimplicial,
    NoUniqueTop,
    ParseError,
)
from .polynomial import binom, sign
from .reports import Row, VerificationReport


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class GradedPoset:
    """Finite graded poset with 0̂ and 1̂, built from its cover relation."""

    __slots__ = ("labels", "rank_of", "bottom_i", "top_i", "_index", "_up", "_down",
                 "_covers_up", "_covers_dn", "_mu", "_bad", "_toric")

    def __init__(self, labels, ranks, covers_up):
        # internal constructor; use build_poset() for validated construction
        self.labels = tuple(labels)
        self.rank_of = tuple(ranks)
        n = len(self.labels)
        self._index = {v: i for i, v in enumerate(self.labels)}
        self._covers_up = tuple(tuple(sorted(c)) for c in covers_up)
        dn = [[] for _ in range(n)]
        for i, ups in enumerate(self._covers_up):
            for j in ups:
                dn[j].append(i)
        self._covers_dn = tuple(tuple(sorted(c)) for c in dn)
        up = [0] * n
        for i in range(n - 1, -1, -1):
            m = 1 << i
            for j in self._covers_up[i]:
                m |= up[j]
            up[i] = m
        down = [0] * n
        for i in range(n):
            m = 1 << i
            for j in self._covers_dn[i]:
                m |= down[j]
            down[i] = m
        self._up = tuple(up)
        self._down = tuple(down)
        self.bottom_i = 0
        self.top_i = n - 1
        self._mu = {}
        self._bad = None
        self._toric = None

    # --- basic queries ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def rho(self) -> int:
        return self.rank_of[self.top_i]

    @property
    def bottom(self):
        return self.labels[self.bottom_i]

    @property
    def top(self):
        return self.labels[self.top_i]

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError as exc:
            raise NotComparable(f"unknown element {label!r}") from exc

    def rank(self, label) -> int:
        return self.rank_of[self.index(label)]

    def leq(self, a, b) -> bool:
        return bool(self._up[self.index(a)] & (1 << self.index(b)))

    def leq_i(self, i: int, j: int) -> bool:
        return bool(self._up[i] & (1 << j))

    def elements_of_rank(self, r: int) -> list:
        return [v for v, rv in zip(self.labels, self.rank_of) if rv == r]

    def covers(self) -> list[tuple]:
        out = []
        for i, ups in enumerate(self._covers_up):
            out.extend((self.labels[i], self.labels[j]) for j in ups)
        return out

    def __repr__(self) -> str:
        return f"GradedPoset(n={self.n}, rho={self.rho})"

    # --- Möbius function ------------------------------------------------------

    def mobius_i(self, s: int, t: int) -> int:
        """μ(s, t) by downward recursion over the interval, memoized per pair."""
        if not self.leq_i(s, t):
            raise NotComparable(f"{self.labels[s]!r} is not below {self.labels[t]!r}")
        mu = self._mu
        got = mu.get((s, t))
        if got is not None:
            return got
        interval = self._up[s] & self._down[t]
        # canonical index order is rank order, so dependencies come first
        for u in _bits(interval):
            if (s, u) not in mu:
                if u == s:
                    mu[(s, u)] = 1
                else:
                    mu[(s, u)] = -sum(mu[(s, w)]
                                      for w in _bits(self._up[s] & self._down[u] & ~(1 << u)))
        return mu[(s, t)]

    def mobius(self, s, t) -> int:
        return self.mobius_i(self.index(s), self.index(t))

    def mobius_to_top(self) -> list[int]:
        """μ(q, 1̂) for every q, via the dual recursion μ(q,1̂) = −Σ_{q<u≤1̂} μ(u,1̂)."""
        mu = self._mu
        top = self.top_i
        out = [0] * self.n
        for q in range(self.n - 1, -1, -1):
            if q == top:
                val = 1
            else:
                val = -sum(out[u] for u in _bits(self._up[q] & ~(1 << q)))
            out[q] = val
            mu.setdefault((q, top), val)
        return out

    def interval_i(self, s: int, t: int) -> "GradedPoset":
        """The closed interval [s, t] materialized as a poset of its own."""
        if not self.leq_i(s, t):
            raise NotComparable("not an interval")
        members = sorted(_bits(self._up[s] & self._down[t]))
        pos = {m: k for k, m in enumerate(members)}
        base = self.rank_of[s]
        return GradedPoset(
            [self.labels[m] for m in members],
            [self.rank_of[m] - base for m in members],
            [[pos[j] for j in self._covers_up[m] if j in pos] for m in members],
        )

    def interval(self, s, t) -> "GradedPoset":
        return self.interval_i(self.index(s), self.index(t))

    # --- interval errors ------------------------------------------------------

    def interval_error_i(self, s: int, t: int) -> int:
        return self.mobius_i(s, t) - sign(self.rank_of[t] - self.rank_of[s])

    def bad_intervals(self) -> list[tuple[int, int, int]]:
        """All (s, t, e) index pairs with e(s,t) = μ(s,t) − (−1)^{length} nonzero."""
        if self._bad is None:
            bad = []
            for s in range(self.n):
                for t in _bits(self._up[s]):
                    e = self.interval_error_i(s, t)
                    if e:
                        bad.append((s, t, e))
            self._bad = bad
        return self._bad


def build_poset(elements: Sequence, covers: Iterable[tuple]) -> GradedPoset:
    """Validate covers into a graded poset: unique 0̂/1̂, acyclic, rank-compatible."""
    elements = list(elements)
    if not elements:
        raise NoUniqueBottom("empty element list")
    if len(set(elements)) != len(elements):
        raise ParseError("duplicate element labels")
    idx = {v: i for i, v in enumerate(elements)}
    n = len(elements)
    ups = [set() for _ in range(n)]
    dns = [set() for _ in range(n)]
    for lo, hi in covers:
        if lo not in idx or hi not in idx:
            raise ParseError(f"cover ({lo!r}, {hi!r}) uses unknown elements")
        if lo == hi:
            raise CycleDetected(f"self-cover at {lo!r}")
        ups[idx[lo]].add(idx[hi])
        dns[idx[hi]].add(idx[lo])

    # Kahn topological order; leftovers mean a cycle
    indeg = [len(d) for d in dns]
    queue = [i for i in range(n) if indeg[i] == 0]
    topo = []
    while queue:
        i = queue.pop()
        topo.append(i)
        for j in ups[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    if len(topo) != n:
        raise CycleDetected("cover relation contains a cycle")

    minimal = [i for i in range(n) if not dns[i]]
    maximal = [i for i in range(n) if not ups[i]]
    if n > 1:
        if len(minimal) != 1:
            raise NoUniqueBottom(f"minimal elements: {[elements[i] for i in minimal]}")
        if len(maximal) != 1:
            raise NoUniqueTop(f"maximal elements: {[elements[i] for i in maximal]}")
    bottom = minimal[0]

    # gradedness: shortest and longest cover-path lengths from 0̂ agree per element
    short = [None] * n
    long_ = [None] * n
    short_par = [None] * n
    long_par = [None] * n
    short[bottom] = long_[bottom] = 0
    for i in topo:
        if short[i] is None:
            continue
        for j in ups[i]:
            if short[j] is None or short[i] + 1 < short[j]:
                short[j] = short[i] + 1
                short_par[j] = i
            if long_[j] is None or long_[i] + 1 > long_[j]:
                long_[j] = long_[i] + 1
                long_par[j] = i
    for i in range(n):
        if short[i] != long_[i]:
            def walk(parents, k):
                path = [k]
                while parents[path[-1]] is not None:
                    path.append(parents[path[-1]])
                return [elements[e] for e in reversed(path)]

            up_ext = []
            k = i
            while ups[k]:
                k = min(ups[k])
                up_ext.append(elements[k])
            c1 = walk(short_par, i) + up_ext
            c2 = walk(long_par, i) + up_ext
            raise NotGraded(
                f"maximal chains of lengths {len(c1) - 1} and {len(c2) - 1}",
                chains=(c1, c2),
            )
    ranks = short

    order = sorted(range(n), key=lambda i: (ranks[i], label_sort_key(elements[i])))
    pos = {old: new for new, old in enumerate(order)}
    return GradedPoset(
        [elements[i] for i in order],
        [ranks[i] for i in order],
        [sorted(pos[j] for j in ups[i]) for i in order],
    )


# --- spec-facing operations ---------------------------------------------------

@dataclass(frozen=True)
class IntervalError:
    s: object
    t: object
    e: int


@dataclass(frozen=True)
class PosetClassification:
    eulerian: bool
    semi_eulerian: bool
    lower_eulerian: bool
    simplicial: bool
    min_j_sing: int
    max_lower_simplicial_k: int


def mobius(P: GradedPoset, s, t) -> int:
    return P.mobius(s, t)


def interval_error(P: GradedPoset, s, t) -> int:
    """e([s,t]) = μ(s,t) − (−1)^{ρ(t)−ρ(s)}."""
    return P.interval_error_i(P.index(s), P.index(t))


def interval_errors(P: GradedPoset) -> list[IntervalError]:
    """Every non-Eulerian interval of P as labeled records, sorted by span."""
    return sorted(
        (IntervalError(P.labels[s], P.labels[t], e) for s, t, e in P.bad_intervals()),
        key=lambda ie: (P.rank(ie.t) - P.rank(ie.s), label_sort_key(ie.s),
                        label_sort_key(ie.t)),
    )


def _check_chain(P: GradedPoset, chain: Sequence) -> list[int]:
    ids = [P.index(c) for c in chain]
    if len(set(ids)) != len(ids):
        raise NotAChain("repeated elements")
    ids.sort(key=lambda i: P.rank_of[i])
    for a, b in zip(ids, ids[1:]):
        if not P.leq_i(a, b):
            raise NotAChain(f"{P.labels[a]!r} and {P.labels[b]!r} are incomparable")
    if P.bottom_i in ids or P.top_i in ids:
        raise NotAChain("chains must avoid 0̂ and 1̂")
    return ids


def chain_mobius_product(P: GradedPoset, chain: Sequence) -> int:
    """μ(0̂,t_1)·μ(t_1,t_2)···μ(t_k,1̂) along a chain in P∖{0̂,1̂}."""
    ids = _check_chain(P, chain)
    walk = [P.bottom_i] + ids + [P.top_i]
    prod = 1
    for a, b in zip(walk, walk[1:]):
        prod *= P.mobius_i(a, b)
    return prod


def chain_error(P: GradedPoset, chain: Sequence) -> int:
    """ε(C) = (−1)^{|C|} [μ(C) − (−1)^{d+1}] with d+1 = ρ(P)."""
    prod = chain_mobius_product(P, chain)
    return sign(len(tuple(chain))) * (prod - sign(P.rho))


def proper_part(P: GradedPoset) -> list[int]:
    return [i for i in range(P.n) if i not in (P.bottom_i, P.top_i)]


def iter_chains(P: GradedPoset, allowed_ranks=None, max_size=None):
    """All chains in P∖{0̂,1̂} (index tuples, increasing rank), incl. the empty chain."""
    if P.rho < 1:
        raise InternalError("proper part needs rho >= 1")
    members = [i for i in proper_part(P)
               if allowed_ranks is None or P.rank_of[i] in allowed_ranks]
    yield ()
    if max_size is not None and max_size < 1:
        return
    stack = [(i,) for i in reversed(members)]
    while stack:
        chain = stack.pop()
        yield chain
        if max_size is not None and len(chain) >= max_size:
            continue
        last = chain[-1]
        for j in members:
            if j > last and P.leq_i(last, j):
                stack.append(chain + (j,))


def order_complex(P: GradedPoset):
    """O(P): vertices P∖{0̂,1̂}, faces the chains, colored by rank (a balanced complex)."""
    from .balanced import BalancedComplex  # local import avoids a cycle

    if P.rho < 1:
        raise InternalError("order complex needs rho >= 1")
    faces = [frozenset(P.labels[i] for i in c) for c in iter_chains(P)]
    cx = SimplicialComplex(faces)
    kappa = {P.labels[i]: P.rank_of[i] for i in proper_part(P)}
    return BalancedComplex(cx, kappa)


# --- flag alpha/beta and the flag poset identity ---------------------------------

def _alpha_table(P: GradedPoset) -> dict[int, int]:
    """α(S) for every S ⊆ [d] as a bitmask table (bit r-1 = rank r present)."""
    d = P.rho - 1
    by_rank = [[] for _ in range(d + 2)]
    for i in proper_part(P):
        by_rank[P.rank_of[i]].append(i)
    table = {}
    for mask in range(1 << d):
        ranks = [r + 1 for r in _bits(mask)]
        dp = {P.bottom_i: 1}
        for r in ranks:
            nxt = {}
            for j in by_rank[r]:
                total = sum(v for i, v in dp.items() if P.leq_i(i, j))
                if total:
                    nxt[j] = total
            dp = nxt
        table[mask] = sum(v for i, v in dp.items() if P.leq_i(i, P.top_i))
    return table


def flag_alpha_beta(P: GradedPoset, S: Iterable[int]) -> tuple[int, int]:
    """(α_P(S), β_P(S)): maximal-chain count of the rank-selected subposet and
    its Möbius-inverted companion."""
    d = P.rho - 1
    S = frozenset(S)
    if not S <= set(range(1, d + 1)):
        raise NotComparable(f"S must be a subset of [{d}]")
    table = _alpha_table(P)
    mask = sum(1 << (r - 1) for r in S)
    alpha = table[mask]
    beta = 0
    sub = mask
    while True:
        beta += sign((mask ^ sub).bit_count()) * table[sub]
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return alpha, beta


def rank_selected_subposet(P: GradedPoset, S: Iterable[int]) -> GradedPoset:
    """P_S: elements with rank in S, always retaining 0̂ and 1̂."""
    d = P.rho - 1
    keep_ranks = set(S) | {0, d + 1}
    keep = [i for i in range(P.n) if P.rank_of[i] in keep_ranks]
    labels = [P.labels[i] for i in keep]
    covers = []
    kept_ranks = sorted({P.rank_of[i] for i in keep})
    succ = {r: kept_ranks[k + 1] for k, r in enumerate(kept_ranks[:-1])}
    for a in keep:
        nxt = succ.get(P.rank_of[a])
        if nxt is None:
            continue
        for b in keep:
            if P.rank_of[b] == nxt and P.leq_i(a, b):
                covers.append((P.labels[a], P.labels[b]))
    return build_poset(labels, covers)


def _chain_error_buckets(P: GradedPoset) -> dict[int, int]:
    """Σ ε(C) over chains, bucketed by the chain's rank set (as a bitmask)."""
    mu_top = P.mobius_to_top()
    buckets = {}
    sign_d = sign(P.rho)
    members = proper_part(P)

    def visit(last_i, prod, size, rmask):
        eps = sign(size) * (prod * mu_top[last_i] - sign_d)
        buckets[rmask] = buckets.get(rmask, 0) + eps
        for j in members:
            if j > last_i and P.leq_i(last_i, j):
                visit(j, prod * P.mobius_i(last_i, j), size + 1,
                      rmask | (1 << (P.rank_of[j] - 1)))

    buckets[0] = mu_top[P.bottom_i] - sign_d
    for i in members:
        visit(i, P.mobius_i(P.bottom_i, i), 1, 1 << (P.rank_of[i] - 1))
    return buckets


def verify_flag_poset(P: GradedPoset, name: str = "") -> VerificationReport:
    """β(S) − β(S^c) against (−1)^{d−|S|} Σ_{C ∈ 𝒞(P_S)} ε_P(C) for every S ⊆ [d]."""
    d = P.rho - 1
    table = _alpha_table(P)
    full = (1 << d) - 1

    def beta(mask):
        total, sub = 0, mask
        while True:
            total += sign((mask ^ sub).bit_count()) * table[sub]
            if sub == 0:
                break
            sub = (sub - 1) & mask
        return total

    buckets = _chain_error_buckets(P)
    rows = []
    for mask in range(1 << d):
        rhs_sum, sub = 0, mask
        while True:
            rhs_sum += buckets.get(sub, 0)
            if sub == 0:
                break
            sub = (sub - 1) & mask
        s_label = "{" + ",".join(str(r + 1) for r in _bits(mask)) + "}"
        rows.append(Row(
            index=f"S={s_label}",
            lhs=beta(mask) - beta(full ^ mask),
            rhs=sign(d - mask.bit_count()) * rhs_sum,
        ))
    return VerificationReport("flag-poset", {"object": name or repr(P), "d": d},
                              tuple(rows))


# --- classification ---------------------------------------------------------

def _is_boolean_interval(P: GradedPoset, s: int, t: int) -> bool:
    r = P.rank_of[t] - P.rank_of[s]
    members = list(_bits(P._up[s] & P._down[t]))
    if len(members) != 1 << r:
        return False
    atoms = [u for u in members if P.rank_of[u] == P.rank_of[s] + 1]
    if len(atoms) != r:
        return False
    abit = {a: 1 << k for k, a in enumerate(atoms)}
    aset = {}
    for u in members:
        m = 0
        for a in atoms:
            if P.leq_i(a, u):
                m |= abit[a]
        if m.bit_count() != P.rank_of[u] - P.rank_of[s]:
            return False
        aset[u] = m
    if len(set(aset.values())) != len(members):
        return False
    # cover digraph must match the hypercube's through the atom-set map
    for v in members:
        lower = [u for u in P._covers_dn[v] if u in aset]
        if v != s and len(lower) != aset[v].bit_count():
            return False
        for u in lower:
            if aset[u] & ~aset[v]:
                return False
    return True


def min_j_sing_flat(P: GradedPoset) -> int:
    """Remark-6.2 criterion: smallest j with every interval of length ≤ d−j Eulerian."""
    bad = P.bad_intervals()
    if not bad:
        return -1
    d = P.rho - 1
    shortest = min(P.rank_of[t] - P.rank_of[s] for s, t, _ in bad)
    return d - shortest + 1


def min_j_sing_recursive(P: GradedPoset) -> int:
    """Definition-6.1 recursion, memoized over intervals.

    min_j(I) is −1 for Eulerian I, 0 for semi-Eulerian I, and otherwise
    1 + max over proper subintervals (maximal ones suffice: min_j is monotone
    under inclusion).
    """
    bad = [(s, t) for s, t, _ in P.bad_intervals()]
    memo = {}

    def rec(s, t):
        key = (s, t)
        if key in memo:
            return memo[key]
        contained = [(a, b) for a, b in bad
                     if P.leq_i(s, a) and P.leq_i(b, t)]
        if not contained:
            memo[key] = -1
        elif contained == [(s, t)]:
            memo[key] = 0
        else:
            best = 0
            for u in P._covers_dn[t]:
                if P.leq_i(s, u):
                    best = max(best, rec(s, u))
            for u in P._covers_up[s]:
                if P.leq_i(u, t):
                    best = max(best, rec(u, t))
            memo[key] = 1 + best
        return memo[key]

    return rec(P.bottom_i, P.top_i)


def min_j_sing_order_complex(P: GradedPoset) -> int:
    """Prop-6.3 criterion: smallest j making O(P) a j-singular complex."""
    from .complexes import face_error_table

    bal = order_complex(P)
    errors = face_error_table(bal.complex)
    return max((len(f) - 1 for f, e in errors.items() if e != 0), default=-2) + 1


def classify_poset(P: GradedPoset, cross_check: bool = False) -> PosetClassification:
    """Eulerian/semi-Eulerian/lower-Eulerian/simplicial flags plus min_j_sing.

    min_j_sing uses the flat interval criterion; cross_check additionally runs
    the recursive definition and the order-complex criterion and insists all
    three agree.
    """
    bad = P.bad_intervals()
    minj = min_j_sing_flat(P)
    if cross_check:
        rec = min_j_sing_recursive(P)
        oc = min_j_sing_order_complex(P) if P.rho >= 1 else minj
        if not (minj == rec == oc):
            raise InternalError(
                f"j-Sing criteria disagree: flat={minj} recursive={rec} order-complex={oc}")
    boolean_ok = [True] * (P.rho + 1)
    for t in range(P.n):
        if t != P.top_i and not _is_boolean_interval(P, P.bottom_i, t):
            boolean_ok[P.rank_of[t]] = False
    if not _is_boolean_interval(P, P.bottom_i, P.top_i):
        boolean_ok[P.rho] = False
    max_k = 0
    while max_k < P.rho and all(boolean_ok[: max_k + 2]):
        max_k += 1
    return PosetClassification(
        eulerian=not bad,
        semi_eulerian=all((s, t) == (P.bottom_i, P.top_i) for s, t, _ in bad),
        lower_eulerian=all(t == P.top_i for _, t, _ in bad),
        simplicial=all(boolean_ok[: P.rho]),
        min_j_sing=minj,
        max_lower_simplicial_k=max_k,
    )


def dual(P: GradedPoset) -> GradedPoset:
    """Covers reversed, bottom/top swapped, rank(x) ↦ ρ(P) − rank(x)."""
    return build_poset(P.labels, [(P.labels[j], P.labels[i])
                                  for i, j in enumerate_covers(P)])


def enumerate_covers(P: GradedPoset):
    for i, ups in enumerate(P._covers_up):
        for j in ups:
            yield (i, j)


# --- simplicial posets -----------------------------------------------------

def simplicial_poset_f(P: GradedPoset) -> tuple[int, ...]:
    if not classify_poset(P).simplicial:
        raise NotSimplicial("some proper lower interval is not a Boolean lattice")
    d = P.rho - 1
    counts = [0] * (d + 1)
    for r in P.rank_of:
        if r <= d:
            counts[r] += 1
    return tuple(counts)


def simplicial_poset_h(P: GradedPoset):
    from .complexes import HVector
    f = simplicial_poset_f(P)
    d = P.rho - 1
    from .polynomial import ExactPolynomial
    poly = ExactPolynomial.zero()
    for i in range(d + 1):
        poly = poly + ExactPolynomial.x_minus_one_power(d - i).scale(f[i])
    coeffs = poly.int_coeffs()
    coeffs = coeffs + (0,) * (d + 1 - len(coeffs))
    return HVector(tuple(coeffs[d - i] for i in range(d + 1)))


def verify_simplicial_ds(P: GradedPoset, name: str = "") -> VerificationReport:
    """Cor-3.4 residuals: h_{d−j) − h_j against the upper-interval Möbius errors."""
    h = simplicial_poset_h(P).entries
    d = P.rho - 1
    mu_top = P.mobius_to_top()
    rows = []
    for j in range(d + 1):
        rhs = sign(j) * sum(
            binom(d - P.rank_of[t], j)
            * (mu_top[t] - sign(d - 1 - P.rank_of[t]))
            for t in range(P.n) if t != P.top_i
        )
        rows.append(Row(index=f"j={j}", lhs=h[d - j] - h[j], rhs=rhs))
    return VerificationReport("simplicial-ds",
                              {"object": name or repr(P), "d": d, "h": list(h)},
                              tuple(rows))


# --- poset JSON format -------------------------------------------------------

def parse_poset_json(text: str) -> GradedPoset:
    try:
        data = json.loads(text)
        elements = data["elements"]
        covers = [tuple(c) for c in data["covers"]]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"bad poset JSON: {exc}") from exc
    return build_poset(elements, covers)


def serialize_poset_json(P: GradedPoset) -> str:
    covers = sorted(((P.labels[i], P.labels[j]) for i, j in enumerate_covers(P)),
                    key=lambda c: (P.rank(c[0]), label_sort_key(c[0]), label_sort_key(c[1])))
    return json.dumps({"elements": list(P.labels), "covers": [list(c) for c in covers]},
                      indent=1)
