"""Balanced complexes: proper d-colorings, flag f/h-vectors, rank selection,
and the flag Dehn-Sommerville verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .complexes import (
    SimplicialComplex,
    face_error_table,
    label_sort_key,
    parse_facets,
    serialize_facets,
    _parse_label,
)
from .errors import ColorInS, NotBalanced, NotPure, ParseError
from .polynomial import binom, sign
from .reports import Row, VerificationReport


def _color_mask(colors: Iterable[int]) -> int:
    return sum(1 << (c - 1) for c in colors)


def _mask_label(mask: int) -> str:
    return "{" + ",".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1) + "}"


@dataclass(frozen=True)
class BalancedComplex:
    """A pure (d-1)-complex with a proper vertex coloring by [d].

    ``kappa`` maps every vertex to a color in 1..d; no face repeats a color.
    """

    complex: SimplicialComplex
    kappa: Mapping
    color_relabeling: Mapping | None = None

    def __post_init__(self):
        cx = self.complex
        if not cx.pure:
            raise NotPure("balanced complexes are pure by definition")
        d = cx.dim + 1
        missing = [v for v in cx.vertices if v not in self.kappa]
        if missing:
            raise NotBalanced(f"vertices without a color: {missing}")
        bad_range = [v for v in cx.vertices
                     if not isinstance(self.kappa[v], int) or not 1 <= self.kappa[v] <= d]
        if bad_range:
            raise NotBalanced(f"colors outside 1..{d} at {bad_range}")
        for f in cx.faces:
            if len(f) < 2:
                continue
            cols = [self.kappa[v] for v in f]
            if len(set(cols)) != len(cols):
                raise NotBalanced(f"face {set(f)} repeats a color", witness=f)

    @property
    def d(self) -> int:
        return self.complex.dim + 1

    def color_of_face(self, face: Iterable) -> int:
        return _color_mask(self.kappa[v] for v in face)


def validate_coloring(cx: SimplicialComplex, kappa: Mapping) -> BalancedComplex:
    """Canonicalize an arbitrary proper coloring to colors 1..d and validate it."""
    if not cx.pure:
        raise NotPure("balanced complexes are pure by definition")
    missing = [v for v in cx.vertices if v not in kappa]
    if missing:
        raise NotBalanced(f"vertices without a color: {missing}")
    palette = sorted({kappa[v] for v in cx.vertices}, key=label_sort_key)
    relabel = {c: i + 1 for i, c in enumerate(palette)}
    canonical = {v: relabel[kappa[v]] for v in cx.vertices}
    return BalancedComplex(cx, canonical, color_relabeling=relabel)


@dataclass(frozen=True)
class FlagVector:
    """Values indexed by color subsets of [d], stored by bitmask (colex order)."""

    d: int
    values: Mapping[int, int] = field(default_factory=dict)

    def __getitem__(self, colors) -> int:
        return self.values.get(_color_mask(colors), 0)

    def by_mask(self, mask: int) -> int:
        return self.values.get(mask, 0)

    def items(self):
        for mask in range(1 << self.d):
            yield mask, self.values.get(mask, 0)


def flag_f_vector(bal: BalancedComplex) -> FlagVector:
    """f_S = number of faces whose color set is exactly S."""
    counts: dict[int, int] = {}
    for f in bal.complex.faces:
        m = bal.color_of_face(f)
        counts[m] = counts.get(m, 0) + 1
    return FlagVector(bal.d, counts)


def flag_h_vector(bal: BalancedComplex) -> FlagVector:
    """h_T = Σ_{S ⊆ T} (−1)^{|T|−|S|} f_S (Möbius inversion of the flag f)."""
    f = flag_f_vector(bal)
    values = {}
    for t in range(1 << bal.d):
        total, sub = 0, t
        while True:
            total += sign((t ^ sub).bit_count()) * f.by_mask(sub)
            if sub == 0:
                break
            sub = (sub - 1) & t
        values[t] = total
    return FlagVector(bal.d, values)


def rank_selected(bal: BalancedComplex, S: Iterable[int]) -> SimplicialComplex:
    """Δ_S: the subcomplex of faces whose color set lies in S."""
    smask = _color_mask(S)
    return SimplicialComplex(f for f in bal.complex.faces
                             if bal.color_of_face(f) & ~smask == 0)


def verify_flag_ds(bal: BalancedComplex, name: str = "") -> VerificationReport:
    """h_S − h_{S^c} against (−1)^{d−|S|} Σ_{F ∈ Δ_S} ε_Δ(F) for every S.

    ε is always measured in the ambient complex Δ, never in Δ_S. The report
    also checks that summing the identity over |S| = i reproduces the pure
    Dehn-Sommerville equation at index i.
    """
    d = bal.d
    h = flag_h_vector(bal)
    errors = face_error_table(bal.complex)
    err_by_mask: dict[int, int] = {}
    for f, e in errors.items():
        m = bal.color_of_face(f)
        err_by_mask[m] = err_by_mask.get(m, 0) + e
    full = (1 << d) - 1
    rows = []
    for mask in range(1 << d):
        rhs_sum, sub = 0, mask
        while True:
            rhs_sum += err_by_mask.get(sub, 0)
            if sub == 0:
                break
            sub = (sub - 1) & mask
        rows.append(Row(
            index=f"S={_mask_label(mask)}",
            lhs=h.by_mask(mask) - h.by_mask(full ^ mask),
            rhs=sign(d - mask.bit_count()) * rhs_sum,
        ))
    # refinement: row sums over |S| = i must reproduce the pure identity at index i
    for i in range(d + 1):
        lhs = sum(h.by_mask(m) - h.by_mask(full ^ m)
                  for m in range(1 << d) if m.bit_count() == i)
        rhs = sign(i - 1) * sum(binom(d - len(f), i) * e for f, e in errors.items())
        rows.append(Row(index=f"refine |S|={i}", lhs=lhs, rhs=rhs))
    return VerificationReport("flag-ds", {"object": name or repr(bal.complex), "d": d},
                              tuple(rows))


def short_flag_sum(bal: BalancedComplex, S: Iterable[int], i: int) -> int:
    """Σ over vertices of color i of h_S(lk v); equals h_{S∪{i}} + h_S.

    The link of a vertex keeps the ambient coloring, so S may be any color
    subset not containing i.
    """
    S = frozenset(S)
    if i in S:
        raise ColorInS(f"color {i} lies in S")
    total = 0
    smask = _color_mask(S)
    for v in bal.complex.vertices:
        if bal.kappa[v] != i:
            continue
        counts: dict[int, int] = {}
        for h_face in bal.complex.faces:
            if v in h_face:
                m = bal.color_of_face(h_face - {v})
                counts[m] = counts.get(m, 0) + 1
        sub = smask
        while True:
            total += sign((smask ^ sub).bit_count()) * counts.get(sub, 0)
            if sub == 0:
                break
            sub = (sub - 1) & smask
    return total


# --- balanced text format ---------------------------------------------------

def parse_balanced(text: str) -> BalancedComplex:
    """Facet-list format preceded by a 'colors:' header mapping labels to colors."""
    kappa = None
    facet_lines = []
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("colors:"):
            if kappa is not None:
                raise ParseError("duplicate colors: header")
            kappa = {}
            for pair in stripped[len("colors:"):].split():
                if "=" not in pair:
                    raise ParseError(f"bad color assignment {pair!r}")
                label, color = pair.split("=", 1)
                kappa[_parse_label(label)] = int(color)
        else:
            facet_lines.append(stripped)
    if kappa is None:
        raise ParseError("missing colors: header")
    cx = parse_facets("\n".join(facet_lines))
    return validate_coloring(cx, kappa)


def serialize_balanced(bal: BalancedComplex) -> str:
    colors = " ".join(f"{v}={bal.kappa[v]}" for v in bal.complex.vertices)
    return f"colors: {colors}\n" + serialize_facets(bal.complex)
