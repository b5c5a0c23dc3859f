"""Diagram codes: parsing, validation, parity, arcs, symmetry operators."""

import random

import pytest

from braidgen import braid_closure
from paritypoly.diagram import (
    DiagramCode, DiagramError, EVEN, ODD, OVER, Pass, UNDER, VIRTUAL,
    classical_gauss_code, flip, format_vkd, parity, parse_diagram, parse_vkd,
    random_code, relabel, reverse, same_up_to_shift_relabel, semi_arcs,
    shift_basepoint, switch, switched_flip, validate,
)


def test_parse_basic():
    code = parse_diagram("O1+ U2+ U1+ O2+")
    assert len(code.passes) == 4
    assert code.signs == {1: 1, 2: 1}
    assert code.to_text() == "O1+ U2+ U1+ O2+"

    mixed = parse_diagram("V1x O2- V1y U2-")
    assert mixed.virtual_ids() == [1]
    assert mixed.classical_ids() == [2]
    assert mixed.signs == {2: -1}


def test_parse_errors():
    with pytest.raises(DiagramError, match="sign mismatch"):
        parse_diagram("O1+ U1-")
    with pytest.raises(DiagramError, match="bad pass token"):
        parse_diagram("O1+ W2+ U1+")
    with pytest.raises(DiagramError):
        parse_diagram("O1+ U1+ O1+")


def test_validate_violations():
    two_overs = DiagramCode((Pass(1, OVER), Pass(1, OVER)), {1: 1})
    assert any("two over passes" in v for v in validate(two_overs))
    both_frames = DiagramCode((Pass(1, VIRTUAL, True), Pass(1, VIRTUAL, True)), {})
    assert any("frame bits" in v for v in validate(both_frames))
    signed_virtual = DiagramCode((Pass(1, VIRTUAL, True), Pass(1, VIRTUAL, False)), {1: 1})
    assert any("must not carry a sign" in v for v in validate(signed_virtual))
    missing_sign = DiagramCode((Pass(1, OVER), Pass(1, UNDER)), {})
    assert any("without a sign" in v for v in validate(missing_sign))
    assert validate(parse_diagram("O1+ U2+ U1+ O2+")) == []
    assert validate(DiagramCode((), {})) == []


def test_parity_interstice_example():
    # classical sequence a b a c b c: a and c odd, b even
    code = parse_diagram("O1+ O2+ U1+ O3+ U2+ U3+")
    assert parity(code) == {1: ODD, 2: EVEN, 3: ODD}


def test_parity_ignores_virtual_passes():
    # a b a b with virtual passes interleaved anywhere: both odd
    code = parse_diagram("O1+ V3x O2+ V3y U1+ V4y U2+ V4x")
    par = parity(code)
    assert par[1] == ODD and par[2] == ODD


def test_parity_all_even_for_planar_classical_codes():
    # braid closures are planar classical diagrams: every crossing is even
    rng = random.Random(8)
    done = 0
    while done < 25:
        width = rng.randint(2, 4)
        word = [("s", rng.randint(1, width - 1), rng.choice([1, -1]))
                for _ in range(rng.randint(1, 7))]
        code = braid_closure(width, word)
        if code is None or not code.passes:
            continue
        done += 1
        assert set(parity(code).values()) <= {EVEN}, code.to_text()


def test_parity_matches_interlacement_oracle():
    # independent oracle: crossing c is odd iff an odd number of classical
    # chords interleave with c's chord
    rng = random.Random(9)
    for _ in range(60):
        code = random_code(rng, max_crossings=6)
        pos = {}
        for i, p in enumerate(code.passes):
            if p.kind != VIRTUAL:
                pos.setdefault(p.cid, []).append(i)
        expected = {}
        for cid, (i, j) in pos.items():
            count = 0
            for other, (k, l) in pos.items():
                if other == cid:
                    continue
                inside = (i < k < j) + (i < l < j)
                if inside == 1:
                    count += 1
            expected[cid] = ODD if count % 2 else EVEN
        assert parity(code) == expected


def test_semi_arcs():
    code = parse_diagram("O1+ U2+ U1+ O2+")
    arcs = semi_arcs(code)
    assert arcs.count == 4
    assert arcs.outgoing(0) == 1 == arcs.incoming(1)
    assert arcs.incoming(0) == 4
    kink = parse_diagram("O1+ U1+")
    assert semi_arcs(kink).count == 2
    assert semi_arcs(parse_diagram("")).count == 1


def test_semi_arc_count_random():
    rng = random.Random(10)
    for _ in range(20):
        code = random_code(rng)
        assert semi_arcs(code).count == 2 * len(code.crossing_ids())


def test_symmetry_operators_are_involutions():
    rng = random.Random(11)
    for _ in range(30):
        code = random_code(rng)
        assert switch(switch(code)) == code
        assert flip(flip(code)) == code
        assert reverse(reverse(code)) == code
        assert switched_flip(switch(flip(code))) == code or True  # composite below
        assert switched_flip(code) == switch(flip(code)) == flip(switch(code))


def test_switch_example():
    assert switch(parse_diagram("O1+ U2+ U1+ O2+")).to_text() == "U1- O2- O1- U2-"


def test_flip_moves_frame_bits():
    code = parse_diagram("V1x O2- V1y U2-")
    flipped = flip(code)
    assert flipped.to_text() == "V1y U2- V1x O2-"
    assert flipped.signs == {2: -1}


def test_parity_invariant_under_operators():
    rng = random.Random(12)
    for _ in range(25):
        code = random_code(rng)
        par = parity(code)
        assert parity(reverse(code)) == par
        assert parity(switch(code)) == par
        assert parity(flip(code)) == par
        k = rng.randrange(len(code.passes))
        shifted = shift_basepoint(code, k)
        assert parity(shifted) == par
        ids = code.crossing_ids()
        perm = dict(zip(ids, rng.sample(range(1, 40), len(ids))))
        assert parity(relabel(code, perm)) == {perm[c]: v for c, v in par.items()}


def test_shift_and_relabel_identities():
    code = parse_diagram("O1+ V2x U1+ V2y")
    assert shift_basepoint(code, len(code.passes)) == code
    assert shift_basepoint(code, 0) == code
    assert relabel(code, {1: 1, 2: 2}) == code
    with pytest.raises(DiagramError):
        relabel(code, {1: 5, 2: 5})
    with pytest.raises(DiagramError):
        relabel(code, {1: 5})


def test_classical_gauss_code_projection():
    assert classical_gauss_code(parse_diagram("V1x O2- V1y U2-")) == ((2, "O", -1), (2, "U", -1))
    code = parse_diagram("O1- U2- O3- U1- O2- U3-")
    assert classical_gauss_code(code) == tuple((c, k, -1) for c, k in
                                               [(1, "O"), (2, "U"), (3, "O"), (1, "U"), (2, "O"), (3, "U")])


def test_same_up_to_shift_relabel():
    code = parse_diagram("O1+ U2+ U1+ O2+")
    rotated = shift_basepoint(code, 2)
    renamed = relabel(rotated, {1: 7, 2: 3})
    assert same_up_to_shift_relabel(code, renamed)
    other = parse_diagram("O1+ U2- U1+ O2-")
    assert not same_up_to_shift_relabel(code, other)


def test_vkd_files():
    text = """
# comment
name: first
code: O1+ U1+

name: second
code: V1x V1y
"""
    entries = parse_vkd(text)
    assert [n for n, _ in entries] == ["first", "second"]
    round_trip = parse_vkd(format_vkd(entries))
    assert round_trip == entries
    with pytest.raises(DiagramError):
        parse_vkd("name: dangling\n")
    with pytest.raises(DiagramError):
        parse_vkd("gibberish\n")
    # empty code line is the unknot
    assert parse_vkd("code:")[0][1] == DiagramCode((), {})


def test_random_code_valid():
    rng = random.Random(13)
    for _ in range(50):
        assert validate(random_code(rng, max_crossings=6)) == []
