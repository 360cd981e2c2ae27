import itertools

import pytest

from dehnsom.balanced import (
    BalancedComplex,
    flag_f_vector,
    flag_h_vector,
    parse_balanced,
    rank_selected,
    serialize_balanced,
    short_flag_sum,
    validate_coloring,
    verify_flag_ds,
)
from dehnsom.complexes import (
    build_complex,
    f_vector,
    face_error_table,
    h_vector,
)
from dehnsom.errors import ColorInS, NotBalanced, NotPure
from dehnsom.generators import boolean_lattice, cross_polytope, cycle, face_poset
from dehnsom.polynomial import binom, sign
from dehnsom.posets import order_complex


@pytest.fixture(scope="module")
def c4():
    return validate_coloring(cycle(4), {0: 1, 1: 2, 2: 1, 3: 2})


@pytest.fixture(scope="module")
def hexagon():
    return order_complex(boolean_lattice(3))


@pytest.fixture(scope="module")
def sd_torus(torus_poset):
    return order_complex(torus_poset)


def test_validate_coloring_cases(c4):
    assert c4.d == 2
    with pytest.raises(NotBalanced) as exc:
        validate_coloring(build_complex([(1, 2, 3)]), {1: 1, 2: 1, 3: 2})
    assert exc.value.witness is not None
    with pytest.raises(NotPure):
        validate_coloring(build_complex([(1, 2, 3), (4, 5)]), {})


def test_order_complex_is_valid_balanced(torus_poset):
    oc = order_complex(torus_poset)
    assert isinstance(oc, BalancedComplex)
    BalancedComplex(oc.complex, oc.kappa)  # re-validation passes


def test_coloring_canonicalization():
    bal = validate_coloring(cycle(4), {0: "red", 1: "blue", 2: "red", 3: "blue"})
    assert sorted(set(bal.kappa.values())) == [1, 2]
    assert bal.color_relabeling == {"blue": 1, "red": 2}


def test_rank_selected(c4):
    assert rank_selected(c4, []).faces == {frozenset()}
    sel = rank_selected(c4, [1])
    assert f_vector(sel).entries == (1, 2)
    assert sel.vertices == (0, 2)
    assert rank_selected(c4, [1, 2]) == c4.complex


def test_rank_selected_matches_subposet():
    from dehnsom.posets import rank_selected_subposet
    p = face_poset(cross_polytope(2), True)
    oc = order_complex(p)
    for S in ([1], [2], [3], [1, 2], [2, 3], [1, 3]):
        sub = rank_selected_subposet(p, S)
        assert rank_selected(oc, S) == order_complex(sub).complex


def test_flag_f_h_examples(c4, hexagon):
    ff, fh = flag_f_vector(c4), flag_h_vector(c4)
    assert (ff[[1]], ff[[2]], ff[[1, 2]]) == (2, 2, 4)
    assert fh[[1, 2]] == 4 - 2 - 2 + 1 == 1
    assert fh[[1]] == fh[[2]] == 1 and fh[[]] == 1

    ff, fh = flag_f_vector(hexagon), flag_h_vector(hexagon)
    assert (ff[[1]], ff[[2]], ff[[1, 2]]) == (3, 3, 6)
    assert fh[[1, 2]] == 1


def test_flag_refines_ordinary(sd_torus):
    for bal in (sd_torus,):
        ff, fh = flag_f_vector(bal), flag_h_vector(bal)
        f = f_vector(bal.complex).entries
        h = h_vector(bal.complex).entries
        d = bal.d
        for i in range(d + 1):
            assert sum(v for m, v in ff.items() if m.bit_count() == i) == f[i]
            assert sum(v for m, v in fh.items() if m.bit_count() == i) == h[i]


def test_flag_mobius_inversion_round_trip(sd_torus, hexagon):
    for bal in (sd_torus, hexagon):
        ff, fh = flag_f_vector(bal), flag_h_vector(bal)
        for t, _ in ff.items():
            total, sub = 0, t
            while True:
                total += fh.by_mask(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & t
            assert total == ff.by_mask(t)


def test_verify_flag_ds_eulerian_symmetry(c4):
    rep = verify_flag_ds(c4, "4-cycle")
    assert rep.passed
    fh = flag_h_vector(c4)
    for mask in range(4):
        assert fh.by_mask(mask) == fh.by_mask(3 ^ mask)


def test_verify_flag_ds_empty_set_row(sd_torus):
    rep = verify_flag_ds(sd_torus)
    row = next(r for r in rep.rows if r.index == "S={}")
    d = sd_torus.d
    eps_empty = face_error_table(sd_torus.complex)[frozenset()]
    assert row.lhs == sign(d) * eps_empty == row.rhs


def test_verify_flag_ds_sd_torus_nonzero_rows(sd_torus):
    rep = verify_flag_ds(sd_torus, "sd(torus)")
    assert rep.passed
    assert any(r.rhs != 0 for r in rep.rows if r.index.startswith("S="))


def test_flag_ds_refinement_rows_match_pure_identity(sd_torus):
    errors = face_error_table(sd_torus.complex)
    d = sd_torus.d
    rep = verify_flag_ds(sd_torus)
    for i in range(d + 1):
        row = next(r for r in rep.rows if r.index == f"refine |S|={i}")
        expected = sign(i - 1) * sum(binom(d - len(f), i) * e for f, e in errors.items())
        assert row.lhs == expected and row.rhs == expected


def test_short_flag_sum_examples(c4, hexagon):
    assert short_flag_sum(c4, [], 1) == 2
    fh = flag_h_vector(c4)
    assert short_flag_sum(c4, [], 1) == fh[[1]] + fh[[]]

    fh6 = flag_h_vector(hexagon)
    assert short_flag_sum(hexagon, [1], 2) == fh6[[1, 2]] + fh6[[1]]

    with pytest.raises(ColorInS):
        short_flag_sum(c4, [1], 1)


@pytest.mark.parametrize("S,i", [
    (s, i) for i in (1, 2, 3) for s in
    [tuple(x) for r in range(3) for x in itertools.combinations((1, 2, 3), r)]
    if i not in s
])
def test_short_flag_identity_on_sd_torus(sd_torus, S, i):
    fh = flag_h_vector(sd_torus)
    assert short_flag_sum(sd_torus, S, i) == fh[set(S) | {i}] + fh[S]


def test_trivial_short_flag_unwinding(sd_torus):
    # S = empty: LHS counts the color-i vertices, so f_{i} = (f_i - 1) + 1
    ff = flag_f_vector(sd_torus)
    for i in (1, 2, 3):
        assert short_flag_sum(sd_torus, [], i) == ff[[i]]


def test_parse_serialize_balanced_round_trip(c4):
    text = serialize_balanced(c4)
    again = parse_balanced(text)
    assert again.complex == c4.complex
    assert again.kappa == c4.kappa
    assert serialize_balanced(again) == text


def test_parse_balanced_requires_header():
    from dehnsom.errors import ParseError
    with pytest.raises(ParseError):
        parse_balanced("1 2\n2 3\n")


def test_flag_ds_on_random_rank_selected_order_complexes():
    from dehnsom.generators import random_graded_poset
    from dehnsom.posets import order_complex, rank_selected_subposet
    for seed in range(6):
        p = random_graded_poset((2, 3, 2), 0.6, 90 + seed)
        for S in ([1, 2], [2, 3], [1, 3]):
            sub = rank_selected_subposet(p, S)
            if sub.rho < 1:
                continue
            bal = order_complex(sub)
            assert verify_flag_ds(bal).passed
