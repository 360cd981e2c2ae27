"""The built-in verification catalog behind `dehnsom verify all`.

Every entry re-derives its hypotheses (Eulerian, semi-Eulerian, 1-Sing, ...)
from the object itself; nothing is hard-coded beyond the generator spec.
"""

from __future__ import annotations

from typing import Callable, Iterator

from . import balanced as bl
from . import complexes as cx
from . import posets as ps
from . import toric as tc
from .generators import generate_from_string
from .reports import VerificationReport

COMPLEX_DS_SPECS = [
    "simplex_boundary(3)",
    "simplex_boundary(4)",
    "cross_polytope(3)",
    "cycle(5)",
    "torus_7",
    "rp2_6",
    "suspension(torus_7)",
    "cone(torus_7)",
    "circle_join(3,torus_7)",
    "circle_join(4,torus_7)",
    "circle_join(5,torus_7)",
    "circle_join(6,torus_7)",
    "suspension(suspension(torus_7))",
]

ORDER_COMPLEX_SPECS = [
    "boolean_lattice(2)",
    "boolean_lattice(3)",
    "boolean_lattice(4)",
    "face_poset(torus_7,true)",
    "face_poset(rp2_6,true)",
    "face_poset(cross_polytope(3),true)",
]

POSET_SPECS = [
    "boolean_lattice(2)",
    "boolean_lattice(3)",
    "boolean_lattice(4)",
    "chain(2)",
    "chain(3)",
    "chain(4)",
    "polygon_lattice(3)",
    "polygon_lattice(5)",
    "polygon_lattice(8)",
    "face_poset(simplex_boundary(3),true)",
    "face_poset(cross_polytope(3),true)",
    "face_poset(torus_7,true)",
    "face_poset(rp2_6,true)",
    "face_poset(suspension(torus_7),true)",
    "face_poset(suspension(suspension(torus_7)),true)",
]

DUALIZED_SPECS = [
    "face_poset(torus_7,true)",
    "face_poset(suspension(torus_7),true)",
    "boolean_lattice(4)",
    "polygon_lattice(5)",
]


def iter_suite() -> Iterator[tuple[str, Callable[[], VerificationReport]]]:
    """Yield (description, thunk) pairs; thunks build the object and verify it."""
    for spec in COMPLEX_DS_SPECS:
        yield f"ds {spec}", (lambda s=spec: cx.verify_pure_ds(generate_from_string(s), s))

    for spec in ORDER_COMPLEX_SPECS:
        yield (f"flag-ds O({spec})",
               lambda s=spec: bl.verify_flag_ds(ps.order_complex(generate_from_string(s)),
                                                f"O({s})"))
        yield (f"flag-poset {spec}",
               lambda s=spec: ps.verify_flag_poset(generate_from_string(s), s))

    for spec in POSET_SPECS:
        def reports_for(s=spec):
            P = generate_from_string(s)
            cls = ps.classify_poset(P)
            out = [tc.verify_generalized(P, s), tc.verify_euler_relation(P, name=s),
                   tc.dual_defect_report(P, s)]
            if cls.simplicial:
                out.append(ps.verify_simplicial_ds(P, s))
            if cls.eulerian:
                out.append(tc.verify_stanley(P, s))
            if cls.min_j_sing <= 0:
                out.append(tc.verify_swartz(P, s))
            if cls.min_j_sing <= 1:
                out.append(tc.verify_1sing(P, s))
            if P.rho - 1 > 2 * cls.min_j_sing:
                out.append(tc.verify_main(P, s))
            if cls.lower_eulerian:
                out.append(tc.verify_lower_eulerian(P, s))
            return out

        yield f"toric suite {spec}", reports_for

    for spec in DUALIZED_SPECS:
        def dual_reports(s=spec):
            P = ps.dual(generate_from_string(s))
            out = [tc.verify_generalized(P, f"dual({s})")]
            if P.rho - 1 > 2 * ps.classify_poset(P).min_j_sing:
                out.append(tc.verify_main(P, f"dual({s})"))
            return out

        yield f"toric suite dual({spec})", dual_reports


def run_suite() -> Iterator[VerificationReport]:
    for _, thunk in iter_suite():
        result = thunk()
        if isinstance(result, list):
            yield from result
        else:
            yield result
