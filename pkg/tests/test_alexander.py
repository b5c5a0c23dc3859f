"""Relators, matrices, determinants, the invariant and its reports."""

import random

import pytest

from paritypoly import foxcalc as fx
from paritypoly.alexander import (
    AlexanderMatrix, assign_roles, build_full_matrix_M, build_matrix_A,
    check_even_skein, check_symmetries, crossing_bounds, crossing_relators,
    determinant, determinant_cofactor, gcd_of_minors, group_presentation,
    parity_alexander, poly_gcd, skein_matrices, switch_crossing,
)
from paritypoly.diagram import DiagramError, parse_diagram, random_code
from paritypoly.laurent import H, LaurentPoly, ONE, Q, S, T, ZERO

Q1 = LaurentPoly.var("q", -1)
S1 = LaurentPoly.var("s", -1)
T1 = LaurentPoly.var("t", -1)
H1 = LaurentPoly.var("h", -1)


def test_assign_roles_positive_pair():
    code = parse_diagram("O1+ U2+ U1+ O2+")
    roles = assign_roles(code)
    # crossing 1 is positive: x enters at its over pass (position 0)
    assert roles[1].x_in == 4 and roles[1].w_out == 1
    assert roles[1].y_in == 2 and roles[1].z_out == 3
    # crossing 2 is positive: over pass at position 3
    assert roles[2].x_in == 3 and roles[2].w_out == 4
    assert roles[2].y_in == 1 and roles[2].z_out == 2


def test_assign_roles_negative():
    code = parse_diagram("O1- U2- U1- O2-")
    roles = assign_roles(code)
    # negative: x enters at the under pass
    assert roles[1].x_in == 2 and roles[1].w_out == 3
    assert roles[1].y_in == 4 and roles[1].z_out == 1


def row_map(matrix, label):
    return matrix.rows[matrix.row_labels.index(label)]


def test_even_positive_row_templates():
    # crossing 2 of a b a c b c is even with four distinct role arcs:
    # x_in=1, w_out=2, y_in=4, z_out=5
    code = parse_diagram("O1+ O2+ U1+ O3+ U2+ U3+")
    A = build_matrix_A(code)
    z_row = row_map(A, (2, "z"))
    assert z_row == {1: 1 - S * T, 4: T, 5: LaurentPoly.const(-1)}
    w_row = row_map(A, (2, "w"))
    assert w_row == {1: S, 2: LaurentPoly.const(-1)}


def test_even_negative_row_templates():
    # negative: x enters at the under pass, so x_in=4, w_out=5, y_in=1, z_out=2
    code = parse_diagram("O1- O2- U1- O3- U2- U3-")
    A = build_matrix_A(code)
    z_row = row_map(A, (2, "z"))
    assert z_row == {1: S1, 2: LaurentPoly.const(-1)}
    w_row = row_map(A, (2, "w"))
    assert w_row == {4: T1, 1: ONE - S1 * T1, 5: LaurentPoly.const(-1)}


def test_odd_row_templates():
    code = parse_diagram("O1+ O2+ U1+ U2+")  # a b a b: both crossings odd
    A = build_matrix_A(code)
    z_row = row_map(A, (1, "z"))   # x_in=4 (over in), y_in=2, z=3, w=1
    assert z_row == {2: H1, 3: LaurentPoly.const(-1)}
    w_row = row_map(A, (1, "w"))
    assert w_row == {4: H, 1: LaurentPoly.const(-1)}


def test_virtual_row_templates():
    code = parse_diagram("V1x O2+ V1y U2+")
    A = build_matrix_A(code)
    z_row = row_map(A, (1, "z"))   # frame pass at position 0: x_in=4, w=1, y=2, z=3
    assert z_row == {2: Q1, 3: LaurentPoly.const(-1)}
    w_row = row_map(A, (1, "w"))
    assert w_row == {4: Q, 1: LaurentPoly.const(-1)}


def test_relator_count_and_arc_degree():
    rng = random.Random(50)
    for _ in range(10):
        code = random_code(rng, max_crossings=5)
        rels = crossing_relators(code)
        assert len(rels) == 2 * len(code.crossing_ids())
        for rel in rels:
            img = fx.abelianize_word(rel.word)
            ((exps, coeff),) = img.terms.items()
            assert exps[1] == 0 and coeff == 1  # arc-degree homogeneous


def test_full_matrix_commutator_rows():
    code = parse_diagram("O1+ U1+")
    M = build_full_matrix_M(code)
    assert M.size == (5, 5)
    assert row_map(M, ("comm", "[s,q]")) == {"s": 1 - Q, "q": S - 1}
    assert row_map(M, ("comm", "[s,h]")) == {"s": 1 - H, "h": S - 1}
    assert row_map(M, ("comm", "[h,q]")) == {"q": H - 1, "h": 1 - Q}


def test_commutator_block_determinant_zero():
    rows = [{"s": 1 - Q, "q": S - 1},
            {"s": 1 - H, "h": S - 1},
            {"q": H - 1, "h": 1 - Q}]
    block = AlexanderMatrix(rows, [("c", i) for i in range(3)], ["s", "q", "h"])
    assert determinant(block).is_zero()
    assert determinant_cofactor(block).is_zero()


def test_det_M_vanishes():
    rng = random.Random(51)
    for _ in range(12):
        code = random_code(rng, max_crossings=4)
        assert determinant(build_full_matrix_M(code)).is_zero()


def test_determinant_small():
    one_by_one = AlexanderMatrix([{0: 1 - S * T}], ["r"], [0])
    assert determinant(one_by_one) == 1 - S * T
    empty = AlexanderMatrix([], [], [])
    assert determinant(empty) == ONE
    with pytest.raises(ValueError):
        determinant(AlexanderMatrix([{0: S}], ["r"], [0, 1]))


def rand_laurent(rng):
    p = LaurentPoly.zero()
    for _ in range(rng.randint(0, 2)):
        p = p + LaurentPoly.term(rng.randint(-2, 2), rng.randint(-1, 1),
                                 rng.randint(-1, 1), rng.randint(-1, 1), rng.randint(-1, 1))
    return p


def test_determinant_matches_cofactor_oracle():
    rng = random.Random(52)
    for _ in range(25):
        n = rng.randint(1, 4)
        rows = [{j: rand_laurent(rng) for j in range(n)} for _ in range(n)]
        rows = [{j: v for j, v in r.items() if v} for r in rows]
        m = AlexanderMatrix(rows, list(range(n)), list(range(n)))
        assert determinant(m) == determinant_cofactor(m)


def test_unknot_invariant_is_one():
    res = parity_alexander(parse_diagram(""))
    assert res.canonical == ONE
    assert res.q_width == 0 and res.h_width == 0


def test_classical_kink_vanishes():
    for text in ("O1+ U1+", "U1+ O1+", "O1- U1-", "U1- O1-"):
        assert parity_alexander(parse_diagram(text)).canonical.is_zero()


def test_invariant_result_counts():
    code = parse_diagram("O1+ O2+ U1+ O3+ U2+ U3+")
    res = parity_alexander(code)
    assert (res.n_even, res.n_odd, res.n_virtual) == (1, 2, 0)
    assert res.widths == {"q": res.q_width, "h": res.h_width}


def test_crossing_bounds():
    assert crossing_bounds(1 - Q ** 2) == (1, 0)
    assert crossing_bounds(Q ** 2 + H ** 2 + S * T - S * T * H ** 2) == (1, 1)
    assert crossing_bounds(ZERO) == (None, None)
    assert crossing_bounds(ONE) == (0, 0)
    assert crossing_bounds(H ** 3 + Q) == (1, 2)


def test_bounds_never_exceed_diagram_counts():
    # one-sidedness: the widths bound twice the virtual/odd counts of every
    # diagram, in particular the diagram the invariant was computed from
    rng = random.Random(55)
    for _ in range(40):
        code = random_code(rng, max_crossings=6)
        res = parity_alexander(code)
        v_low, o_low = crossing_bounds(res.canonical)
        if v_low is not None:
            assert v_low <= res.n_virtual and o_low <= res.n_odd


def test_poly_gcd():
    assert poly_gcd(1 - Q ** 2, 1 - Q).equal_up_to_unit(1 - Q)
    a = (S - 1) * (S - 1) * (1 - Q)
    b = (S - 1) * (1 - Q) * (1 - Q)
    assert poly_gcd(a, b).equal_up_to_unit((S - 1) * (1 - Q))
    assert poly_gcd(1 - S, 1 - Q) == ONE
    assert poly_gcd(2 * Q, 4 * Q * Q).equal_up_to_unit(LaurentPoly.const(2))
    assert poly_gcd(ZERO, 1 - Q).equal_up_to_unit(1 - Q)
    assert poly_gcd(ZERO, ZERO) == ZERO


def test_gcd_of_minors_zero_matrix():
    m = AlexanderMatrix([{}, {}], ["a", "b"], [0, 1])
    assert gcd_of_minors(m, corank=1) == ZERO


def test_gcd_of_minors_rejects_large():
    rows = [{j: ONE for j in range(9)} for _ in range(9)]
    with pytest.raises(ValueError):
        gcd_of_minors(AlexanderMatrix(rows, list(range(9)), list(range(9))), 1)


def test_prop1_on_samples():
    for text in ("O1+ U1+", "V1x V1y", "O1+ U2+ U1+ O2+", "O1+ O2+ U1+ U2+",
                 "V1x O2- V1y U2-"):
        code = parse_diagram(text)
        det_a = determinant(build_matrix_A(code))
        g = gcd_of_minors(build_full_matrix_M(code), corank=1)
        assert g.equal_up_to_unit(det_a), text


def test_skein_matrices_templates():
    code = parse_diagram("O1+ O2+ U1+ O3+ U2+ U3+")
    plus, minus, smooth = skein_matrices(code, 2)
    # shared labeling at the even crossing: x=1, y=4, z=5, w=2
    assert row_map(plus, (2, "z")) == {1: 1 - S * T, 4: T, 5: LaurentPoly.const(-1)}
    assert row_map(plus, (2, "w")) == {1: S, 2: LaurentPoly.const(-1)}
    assert row_map(minus, (2, "z")) == {4: S1, 5: LaurentPoly.const(-1)}
    assert row_map(minus, (2, "w")) == {1: T1, 4: 1 - S1 * T1, 2: LaurentPoly.const(-1)}
    assert row_map(smooth, (2, "z")) == {1: ONE, 5: LaurentPoly.const(-1)}
    assert row_map(smooth, (2, "w")) == {4: ONE, 2: LaurentPoly.const(-1)}
    # all other rows byte-identical across the three matrices
    for lbl in plus.row_labels:
        if lbl[0] != 2:
            assert row_map(plus, lbl) == row_map(minus, lbl) == row_map(smooth, lbl)


def test_skein_rejects_bad_sites():
    code = parse_diagram("O1+ O2+ U1+ U2+")  # both odd
    with pytest.raises(DiagramError):
        skein_matrices(code, 1)
    with pytest.raises(DiagramError):
        skein_matrices(parse_diagram("V1x V1y"), 1)


def test_even_skein_kink():
    rep = check_even_skein(parse_diagram("O1+ U1+"), 1)
    assert rep.proof_form_holds
    st = S * T
    assert rep.d_plus - st * rep.d_minus == (1 - st) * rep.d_smooth


def test_even_skein_proof_form_on_random_codes():
    rng = random.Random(53)
    from paritypoly.diagram import parity, EVEN
    checked = nontrivial = 0
    while checked < 25 or nontrivial < 5:
        code = random_code(rng, max_crossings=5)
        par = parity(code)
        for cid in sorted(code.signs):
            if par[cid] != EVEN:
                continue
            rep = check_even_skein(code, cid)
            assert rep.proof_form_holds, (code.to_text(), cid)
            checked += 1
            if not rep.d_smooth.is_zero():
                nontrivial += 1


def test_skein_detects_wrong_role_convention():
    # plug the negative-template rows into the K+ slot and vice versa at a
    # site with a nonzero triple: neither candidate identity may survive
    from paritypoly.diagram import parity, EVEN
    rng = random.Random(1)
    site = None
    while site is None:
        code = random_code(rng, max_crossings=5)
        par = parity(code)
        for cid in sorted(code.signs):
            if par[cid] == EVEN:
                mats = skein_matrices(code, cid)
                if not determinant(mats[2]).is_zero():
                    site = mats
                    break
    plus, minus, smooth = site
    dp = determinant(minus)   # deliberately wrong way around
    dm = determinant(plus)
    dv = determinant(smooth)
    st = S * T
    assert dp - dm != (1 - st) * dv
    assert dp - st * dm != (1 - st) * dv


def test_switch_crossing_odd_keeps_relators():
    code = parse_diagram("O1+ O2+ U1+ U2+")
    switched = switch_crossing(code, 1)
    assert switched.signs[1] == -1
    assert crossing_relators(code) == crossing_relators(switched)
    assert parity_alexander(switched).canonical == parity_alexander(code).canonical


def test_switch_crossing_even_changes_rows():
    code = parse_diagram("O1+ O2+ U1+ O3+ U2+ U3+")
    switched = switch_crossing(code, 2)
    assert crossing_relators(code) != crossing_relators(switched)
    with pytest.raises(DiagramError):
        switch_crossing(parse_diagram("V1x V1y"), 1)


def test_check_symmetries_samples():
    for text in ("O1+ U2+ U1+ O2+", "O1+ O2+ U1+ U2+", "V1x O2- V1y U2-",
                 "O1+ V2x U1+ V2y"):
        rep = check_symmetries(parse_diagram(text))
        assert rep.all_hold(), (text, rep.outcomes)


def test_group_presentation():
    empty = group_presentation(parse_diagram(""))
    assert "generators: s q h" in empty
    assert empty.count("[") == 3
    kink = group_presentation(parse_diagram("O1+ U1+"))
    assert "generators: a1 a2 s q h" in kink
    assert kink.count("r[") == 2
    odd = group_presentation(parse_diagram("O1+ O2+ U1+ U2+"))
    assert "h" in odd.split("r[1.z]: ")[1].splitlines()[0]
    virt = group_presentation(parse_diagram("V1x V1y"))
    assert "q" in virt.split("r[1.z]: ")[1].splitlines()[0]
