"""Simplicial complexes and their exact invariants.

Faces are stored as frozensets of opaque vertex labels; internally every face
is interned to an integer bitmask so that the full error-function sweep over
all faces stays cheap. The empty face is always a member, so f_{-1} = 1.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyInput, FaceNotInComplex, InternalError, NotPure, ParseError
from .polynomial import ExactPolynomial, binom, sign
from .reports import Row, VerificationReport

Face = frozenset


def label_sort_key(v):
    """Total order over mixed int/str labels: ints first, then everything by string form."""
    if isinstance(v, int) and not isinstance(v, bool):
        return (0, v, "")
    return (1, 0, str(v))


def face_sort_key(face: Iterable) -> tuple:
    return (len(tuple(face)), tuple(sorted((label_sort_key(v) for v in face))))


class SimplicialComplex:
    """An inclusion-closed family of vertex subsets.

    Downward closure is checked on construction: removing any single vertex
    from a face must give a face. Instances are immutable and safe to share.
    """

    __slots__ = ("faces", "vertices", "dim", "pure", "_bit", "_masks", "_mask_set")

    def __init__(self, faces: Iterable[Iterable]):
        fam = frozenset(Face(f) for f in faces)
        if not fam:
            raise EmptyInput("a complex has at least the empty face")
        if Face() not in fam:
            raise InternalError("the empty face is missing")
        for f in fam:
            for v in f:
                if f - {v} not in fam:
                    raise InternalError(f"family not closed under inclusion at {set(f)}")
        object.__setattr__(self, "faces", fam)
        dim = max(len(f) for f in fam) - 1
        verts_set = {v for f in fam for v in f}
        # downward closure makes "no one-vertex extension" equivalent to maximality
        pure = all(
            len(f) == dim + 1
            for f in fam
            if not any(f | {v} in fam for v in verts_set - f)
        )
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "pure", pure)
        verts = sorted(verts_set, key=label_sort_key)
        object.__setattr__(self, "vertices", tuple(verts))
        bit = {v: 1 << i for i, v in enumerate(verts)}
        object.__setattr__(self, "_bit", bit)
        masks = sorted(sum(bit[v] for v in f) for f in fam)
        object.__setattr__(self, "_masks", tuple(masks))
        object.__setattr__(self, "_mask_set", frozenset(masks))

    def __setattr__(self, name, value):
        raise AttributeError("SimplicialComplex is immutable")

    def __contains__(self, face: Iterable) -> bool:
        return Face(face) in self.faces

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.faces == other.faces

    def __hash__(self) -> int:
        return hash(self.faces)

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, f={f_vector(self).entries})"

    def mask_of(self, face: Iterable) -> int:
        try:
            return sum(self._bit[v] for v in face)
        except KeyError as exc:
            raise FaceNotInComplex(f"unknown vertex in {set(face)}") from exc

    def face_of(self, mask: int) -> Face:
        return Face(v for v in self.vertices if self._bit[v] & mask)

    def facets(self) -> list[Face]:
        verts = set(self.vertices)
        return sorted(
            (f for f in self.faces if not any(f | {v} in self.faces for v in verts - f)),
            key=face_sort_key,
        )


@dataclass(frozen=True)
class FVector:
    """Face counts (f_{-1}, f_0, ..., f_{d-1}); f_{-1} = 1 for the empty face."""

    entries: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, i: int) -> int:
        # indexed by dimension, so f[-1] is the first entry
        return self.entries[i + 1]


@dataclass(frozen=True)
class HVector:
    """Entries (h_0, ..., h_d) from sum h_i x^{d-i} = sum f_{i-1} (x-1)^{d-i}."""

    entries: tuple[int, ...]
    impure: bool = False

    @property
    def d(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, i: int) -> int:
        return self.entries[i]


@dataclass(frozen=True)
class FaceError:
    face: Face
    epsilon: int


@dataclass(frozen=True)
class SingularityProfile:
    eulerian: bool
    semi_eulerian: bool
    min_singular_j: int
    error_set: tuple[FaceError, ...]


def build_complex(facets: Iterable[Iterable]) -> SimplicialComplex:
    """Downward closure of a facet list; duplicates and dominated facets absorbed."""
    facet_list = [Face(f) for f in facets]
    if not facet_list:
        raise EmptyInput("facet list is empty")
    faces = {Face()}
    for f in facet_list:
        for k in range(1, len(f) + 1):
            faces.update(Face(c) for c in itertools.combinations(f, k))
    return SimplicialComplex(faces)


def f_vector(cx: SimplicialComplex) -> FVector:
    counts = [0] * (cx.dim + 2)
    for f in cx.faces:
        counts[len(f)] += 1
    return FVector(tuple(counts))


def h_vector(cx: SimplicialComplex) -> HVector:
    """Expand sum f_{i-1} (x-1)^{d-i} exactly; impure input is allowed but flagged."""
    f = f_vector(cx).entries
    d = cx.dim + 1
    poly = ExactPolynomial.zero()
    for i in range(d + 1):
        poly = poly + ExactPolynomial.x_minus_one_power(d - i).scale(f[i])
    coeffs = poly.int_coeffs() + (0,) * (d + 1 - len(poly.int_coeffs()))
    return HVector(tuple(coeffs[d - i] for i in range(d + 1)), impure=not cx.pure)


def reduced_euler_characteristic(cx: SimplicialComplex) -> int:
    return sum(sign(len(f) - 1) for f in cx.faces)


def link(cx: SimplicialComplex, face: Iterable) -> SimplicialComplex:
    """lk F = {G : F ∪ G a face, F ∩ G = ∅}, i.e. {H \\ F : H a face containing F}."""
    f = Face(face)
    if f not in cx.faces:
        raise FaceNotInComplex(f"{set(f)} is not a face")
    return SimplicialComplex(h - f for h in cx.faces if f <= h)


def join_with_mapping(a: SimplicialComplex, b: SimplicialComplex):
    """Join after relabeling both sides; returns (complex, left map, right map)."""
    left = {v: f"a:{v}" for v in a.vertices}
    right = {v: f"b:{v}" for v in b.vertices}
    faces = {Face(left[v] for v in fa) | Face(right[v] for v in fb)
             for fa in a.faces for fb in b.faces}
    return SimplicialComplex(faces), left, right


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    return join_with_mapping(a, b)[0]


def face_error(cx: SimplicialComplex, face: Iterable) -> int:
    """ε(F) = χ̃(lk F) − (−1)^{d−1−|F|}, the deviation of the link from a sphere."""
    if not cx.pure:
        raise NotPure("face errors are defined for pure complexes")
    f = Face(face)
    d = cx.dim + 1
    return reduced_euler_characteristic(link(cx, f)) - sign(d - 1 - len(f))


_default_threads: int | None = None


def set_default_threads(n: int | None) -> None:
    """Worker cap for the face-error sweep; None, 0 and 1 mean sequential."""
    global _default_threads
    _default_threads = n if n and n > 1 else None


def link_euler_table(cx: SimplicialComplex, threads: int | None = None) -> dict[int, int]:
    """χ̃(lk F) for every face at once, keyed by face bitmask.

    Enumerates pairs (F, G) with F ∪ G a face and F ∩ G = ∅ through their
    union H, so the cost is sum over faces of 2^{|H|}.
    """
    if threads is None:
        threads = _default_threads

    def accumulate(masks):
        acc = dict.fromkeys(cx._masks, 0)
        for h in masks:
            sub = h
            while True:
                acc[sub] += 1 if ((h ^ sub).bit_count() & 1) else -1
                if sub == 0:
                    break
                sub = (sub - 1) & h
        return acc

    if threads and threads > 1:
        chunks = [cx._masks[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(accumulate, chunks))
        total = dict.fromkeys(cx._masks, 0)
        for part in partials:
            for m, v in part.items():
                total[m] += v
        return total
    return accumulate(cx._masks)


def face_error_table(cx: SimplicialComplex, threads: int | None = None) -> dict[Face, int]:
    """ε(F) for every face of a pure complex, via one sweep over all faces."""
    if not cx.pure:
        raise NotPure("face errors are defined for pure complexes")
    d = cx.dim + 1
    chi = link_euler_table(cx, threads=threads)
    return {cx.face_of(m): v - sign(d - 1 - m.bit_count()) for m, v in chi.items()}


def short_h_vector(cx: SimplicialComplex) -> tuple[int, ...]:
    """h*_i = sum over vertices of h_i(lk v), for i = 0..d-1."""
    if not cx.pure:
        raise NotPure("short h-numbers need a pure complex")
    d = cx.dim + 1
    if d < 1:
        raise EmptyInput("short h-vector needs d >= 1")
    out = [0] * d
    for v in cx.vertices:
        hv = h_vector(link(cx, [v])).entries
        for i in range(d):
            out[i] += hv[i] if i < len(hv) else 0
    return tuple(out)


def singularity_profile(cx: SimplicialComplex) -> SingularityProfile:
    errors = face_error_table(cx)
    bad = sorted(((f, e) for f, e in errors.items() if e != 0),
                 key=lambda fe: face_sort_key(fe[0]))
    min_j = max((len(f) - 1 for f, _ in bad), default=-2) + 1
    return SingularityProfile(
        eulerian=not bad,
        semi_eulerian=all(f == Face() for f, _ in bad),
        min_singular_j=min_j,
        error_set=tuple(FaceError(f, e) for f, e in bad),
    )


def verify_pure_ds(cx: SimplicialComplex, name: str = "") -> VerificationReport:
    """h_{d−j} − h_j against (−1)^j Σ_F C(d−|F|, j) ε(F), both sides exact.

    The left side comes from the f→h transform, the right from the link-error
    sweep; the two paths share no intermediate values.
    """
    if not cx.pure:
        raise NotPure("the identity assumes a pure complex")
    d = cx.dim + 1
    h = h_vector(cx).entries
    errors = face_error_table(cx)
    rows = []
    for j in range(d + 1):
        rhs = sign(j) * sum(binom(d - len(f), j) * e for f, e in errors.items())
        rows.append(Row(index=f"j={j}", lhs=h[d - j] - h[j], rhs=rhs))
    return VerificationReport(
        identity="ds",
        parameters={"object": name or repr(cx), "d": d, "h": list(h)},
        rows=tuple(rows),
    )


# --- facet-list text format -------------------------------------------------

def _parse_label(token: str):
    try:
        return int(token)
    except ValueError:
        return token


def parse_facets(text: str) -> SimplicialComplex:
    """One facet per line, whitespace-separated labels; '#' comments, blanks ignored."""
    facets = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        facets.append([_parse_label(tok) for tok in line.split()])
    if not facets:
        raise ParseError("no facets found")
    return build_complex(facets)


def serialize_facets(cx: SimplicialComplex) -> str:
    """Canonical form: facets sorted lexicographically by interned vertex index."""
    order = {v: i for i, v in enumerate(cx.vertices)}
    rows = sorted(tuple(sorted(f, key=order.__getitem__)) for f in cx.facets())
    lines = [" ".join(str(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"
