from __future__ import annotations

import pytest

from dehnsom.generators import cross_polytope, face_poset, rp2_6, suspension, torus_7
from dehnsom.complexes import build_complex
from dehnsom.posets import build_poset


@pytest.fixture(scope="session")
def torus():
    return torus_7()


@pytest.fixture(scope="session")
def rp2():
    return rp2_6()


@pytest.fixture(scope="session")
def bowtie():
    return build_complex([(1, 2, 3), (1, 2, 4)])


@pytest.fixture(scope="session")
def susp_torus(torus):
    return suspension(torus)


@pytest.fixture(scope="session")
def torus_poset(torus):
    return face_poset(torus, True)


@pytest.fixture(scope="session")
def rp2_poset(rp2):
    return face_poset(rp2, True)


@pytest.fixture(scope="session")
def susp_poset(susp_torus):
    return face_poset(susp_torus, True)


@pytest.fixture(scope="session")
def susp2_poset(susp_torus):
    return face_poset(suspension(susp_torus), True)


@pytest.fixture(scope="session")
def doubled_edge():
    # two vertices joined by two parallel edges, plus a top: a simplicial
    # poset that is not a face lattice
    return build_poset(
        ["bot", "v1", "v2", "e1", "e2", "top"],
        [("bot", "v1"), ("bot", "v2"), ("v1", "e1"), ("v2", "e1"),
         ("v1", "e2"), ("v2", "e2"), ("e1", "top"), ("e2", "top")],
    )


def _strip_top(P):
    keep = [i for i in range(P.n) if i != P.top_i]
    labels = [P.labels[i] for i in keep]
    covers = [(P.labels[a], P.labels[b]) for a, ups in enumerate(P._covers_up)
              for b in ups if b != P.top_i]
    return labels, covers, [P.labels[i] for i in keep
                            if not any(b != P.top_i for b in P._covers_up[i])]


def poset_join_with_top(P, Q):
    """Face poset of the free join of two boundary complexes given as face
    posets with adjoined tops: pairs of proper elements, plus a new top."""
    la, ca, maxa = _strip_top(P)
    lb, cb, maxb = _strip_top(Q)
    elements = [(x, y) for x in la for y in lb]
    covers = []
    for (x, y) in elements:
        for (u, v) in ca:
            if u == x:
                covers.append(((x, y), (v, y)))
        for (u, v) in cb:
            if u == y:
                covers.append(((x, y), (x, v)))
    elements = [f"{x}*{y}" for (x, y) in elements] + ["TOP"]
    covers = [(f"{a}*{b}", f"{c}*{d}") for (a, b), (c, d) in covers]
    covers += [(f"{x}*{y}", "TOP") for x in maxa for y in maxb]
    return build_poset(elements, covers)


@pytest.fixture(scope="session")
def cube_torus_poset(torus_poset):
    """Free join of the cube boundary (square 2-cells) with the torus:
    rank 7, lower Eulerian, 3-Sing, with non-simplicial rank-3 lower intervals."""
    from dehnsom.posets import dual
    cube = dual(face_poset(cross_polytope(3), True))
    return poset_join_with_top(cube, torus_poset)


@pytest.fixture(scope="session")
def oct_torus_poset(torus):
    from dehnsom.complexes import join
    return face_poset(join(cross_polytope(3), torus), True)
