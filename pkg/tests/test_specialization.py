import json
from dataclasses import replace

import pytest

from newton_dm1.polygons import (
    Segment,
    bottom_polygon,
    c_value,
    enumerate_nps,
    is_saturated,
    minimal_word,
    parse_polygon,
    precedes,
    straight_line,
)
from newton_dm1.specialization import (
    CONSTRUCTIVE,
    SEARCH,
    CaseTag,
    Chain,
    PreconditionError,
    chain_for,
    chain_general,
    chain_saturated_two_segment,
    classify_case,
    is_mixed,
    minus_square_decompose,
    prop3_decompose,
    rho_segment,
    saturated_path,
    verify_chain,
)
from newton_dm1.words import cycle_words, leq_oracle, minus, simple_word

P = parse_polygon


# -- cases and rho -----------------------------------------------------------


@pytest.mark.parametrize(
    "xi,case",
    [
        ("(3,5)+(3,2)", CaseTag.I),
        ("(2,3)+(4,3)", CaseTag.IV),
        ("(0,1)+(1,0)", CaseTag.BASE_H2),
        ("(2,3)+(3,1)", CaseTag.II),
        ("(2,5)+(1,0)", CaseTag.III),
        ("(0,1)+(3,1)", CaseTag.V),
        ("(1,4)+(1,0)", CaseTag.VI),
    ],
)
def test_classify(xi, case):
    assert classify_case(P(xi)) is case


def test_classify_rejects_unmixed():
    for xi in ["(1,2)+(1,1)", "(3,1)+(1,0)", "(1,1)", "(2,3)+(1,1)"]:
        with pytest.raises(PreconditionError):
            classify_case(P(xi))


def test_rho_examples():
    assert rho_segment(P("(3,5)+(3,2)"), CaseTag.I) == Segment(2, 3)
    assert 2 * 5 - 3 * 3 == 1
    assert rho_segment(P("(2,3)+(4,3)"), CaseTag.IV) == Segment(1, 1)
    assert 1 * 4 - 1 * 3 == 1


def test_rho_satisfies_unit_condition():
    for h in range(3, 15):
        for d in range(h + 1):
            for xi in enumerate_nps(h, d):
                if not is_mixed(xi):
                    continue
                case = classify_case(xi)
                if case not in (CaseTag.I, CaseTag.II, CaseTag.III, CaseTag.IV):
                    continue
                (m1, n1), (m2, n2) = ((s.m, s.n) for s in xi.segments)
                rho = rho_segment(xi, case)
                a, b = rho.m, rho.n
                if case in (CaseTag.I, CaseTag.III):
                    assert a * n1 - b * m1 == 1 and 0 <= a <= m1 and 1 <= b <= n1
                elif case is CaseTag.IV:
                    assert b * m2 - a * n2 == 1 and 0 <= a <= m2 and 1 <= b <= n2
                else:
                    assert (a, b) == (1, 1)


def test_case_ii_family():
    for m1 in range(1, 7):
        for m2 in range(1, 14 - 2 * m1):
            xi = P(f"({m1},{m1 + 1})+({m2},1)")
            if not is_mixed(xi):
                continue
            dec = minus_square_decompose(xi)
            assert dec.case is CaseTag.II and dec.rho == Segment(1, 1)
            assert dec.xi_prime == P(f"({m2},1)") + (P(f"({m1 - 1},{m1})") if m1 > 1 else P("(0,1)"))


# -- decompositions --------------------------------------------------------------


def test_decompose_three_five_three_two():
    dec = minus_square_decompose(P("(3,5)+(3,2)"))
    assert dec.xi_prime == P("(1,2)+(3,2)")
    assert dec.rho == Segment(2, 3)
    assert dec.left_word == "11010100" and dec.rho_word == "11000"


def test_decompose_two_three_four_three():
    dec = minus_square_decompose(P("(2,3)+(4,3)"))
    assert dec.xi_prime == P("(2,3)+(3,2)")
    assert dec.rho == Segment(1, 1)
    assert dec.left_word == "1110100100" and dec.rho_word == "10"
    assert sorted(cycle_words(minus(minus("110111001000")))) == ["10", "1110100100"]


def test_terminal_decompositions():
    assert prop3_decompose(P("(0,1)+(1,0)")) == ([Segment(1, 1)], "10")
    for m2 in range(2, 13):
        segs, w = prop3_decompose(P(f"(0,1)+({m2},1)"))
        assert segs == [Segment(1, 1), Segment(m2 - 1, 1)]
        assert sorted(cycle_words(w)) == sorted(["10", simple_word(m2 - 1, 1)])
    for n1 in range(2, 13):
        segs, w = prop3_decompose(P(f"(1,{n1})+(1,0)"))
        assert segs == [Segment(1, n1 - 1), Segment(1, 1)]
        assert sorted(cycle_words(w)) == sorted(["10", simple_word(1, n1 - 1)])


def test_wrong_decomposition_routes():
    with pytest.raises(PreconditionError):
        minus_square_decompose(P("(0,1)+(3,1)"))
    with pytest.raises(PreconditionError):
        prop3_decompose(P("(3,5)+(3,2)"))


# -- constructive chains -------------------------------------------------------------


def test_chain_three_five_three_two():
    ch = chain_saturated_two_segment(P("(2,3)+4(1,1)"), P("(3,5)+(3,2)"))
    assert ch.method == CONSTRUCTIVE and ch.c == 5
    assert ch.words[-3:] == ["1111001000100", "1110101000100", "1110011000100"]
    assert ch.words[0] == minimal_word(P("(2,3)+4(1,1)"))
    assert verify_chain(ch)
    # every consecutive pair is independently ordered by the move-graph oracle
    for lo, hi in zip(ch.words, ch.words[1:]):
        assert lo != hi and leq_oracle(lo, hi)


def test_chain_base_case():
    ch = chain_saturated_two_segment(P("(1,1)"), P("(0,1)+(1,0)"))
    assert ch.words == ["10", "01"] and ch.c == 1
    assert verify_chain(ch)


def test_chain_mixed_small():
    zeta, xi = P("2(1,1)"), P("(1,2)+(1,0)")
    ch = chain_saturated_two_segment(zeta, xi)
    assert ch.method == CONSTRUCTIVE
    assert ch.c == c_value(zeta, xi) == 2
    assert verify_chain(ch)


def test_chain_preconditions():
    with pytest.raises(PreconditionError):
        chain_saturated_two_segment(P("(3,5)+(3,2)"), P("(2,3)+4(1,1)"))
    with pytest.raises(PreconditionError):
        chain_saturated_two_segment(P("2(1,1)"), P("2(0,1)+2(1,0)"))  # not two segments
    with pytest.raises(PreconditionError):
        chain_general(P("(0,1)+(1,0)"), P("(1,1)"))


def test_unmixed_two_segment_chains_use_search():
    for xi_s in ["(1,2)+(1,1)", "(2,1)+(1,0)", "(1,3)+(2,3)"]:
        xi = P(xi_s)
        for zeta in enumerate_nps(*xi.endpoint):
            if zeta != xi and precedes(zeta, xi) and is_saturated(zeta, xi):
                ch = chain_saturated_two_segment(zeta, xi)
                assert ch.method == SEARCH
                assert ch.c == c_value(zeta, xi)
                assert verify_chain(ch), verify_chain(ch).reason


# -- general chains ------------------------------------------------------------------


def test_chain_general_identity():
    xi = P("(2,3)+(1,0)")
    ch = chain_general(xi, xi)
    assert ch.c == 0 and ch.words == [minimal_word(xi)] and verify_chain(ch)


def test_chain_general_common_segment():
    ch = chain_general(P("(1,1)+(1,0)"), P("(0,1)+2(1,0)"))
    assert ch.words == ["101", "011"]
    assert ch.notes["two_segment_windows"] == 1
    assert verify_chain(ch)


@pytest.mark.parametrize("h", range(2, 8))
def test_chain_general_extremes(h):
    for d in range(1, h):
        top, bottom = straight_line(h, d), bottom_polygon(h, d)
        ch = chain_general(top, bottom)
        assert ch.c == c_value(top, bottom) == (h - d) * d
        assert ch.notes.get("whole_word_fallbacks", 0) == 0
        assert verify_chain(ch), verify_chain(ch).reason


def test_chain_general_all_pairs_small():
    for h in range(1, 7):
        for d in range(h + 1):
            ps = enumerate_nps(h, d)
            for zeta in ps:
                for xi in ps:
                    if precedes(zeta, xi):
                        ch = chain_general(zeta, xi)
                        assert verify_chain(ch), (zeta, xi, verify_chain(ch).reason)
                        if ch.method == CONSTRUCTIVE:
                            assert ch.c == c_value(zeta, xi)


def test_saturated_path_is_saturated():
    path = saturated_path(straight_line(7, 3), bottom_polygon(7, 3))
    for lo, hi in zip(path, path[1:]):
        assert precedes(lo, hi) and lo != hi and is_saturated(lo, hi)


# -- verification and serialization ------------------------------------------------------


@pytest.fixture
def example_chain():
    return chain_saturated_two_segment(P("(2,3)+4(1,1)"), P("(3,5)+(3,2)"))


def test_verify_rejects_flipped_bit(example_chain):
    words = list(example_chain.words)
    w = words[2]
    words[2] = w[:3] + ("1" if w[3] == "0" else "0") + w[4:]
    assert not verify_chain(replace(example_chain, words=words))


def test_verify_rejects_reordered_steps(example_chain):
    steps = list(example_chain.steps)
    steps[1], steps[2] = steps[2], steps[1]
    verdict = verify_chain(replace(example_chain, steps=steps))
    assert not verdict and verdict.reason


def test_verify_rejects_wrong_endpoint(example_chain):
    assert not verify_chain(replace(example_chain, xi=P("(3,5)+(2,3)")))


def test_verify_rejects_dropped_step(example_chain):
    bad = replace(example_chain, words=example_chain.words[:-1], steps=example_chain.steps[:-1])
    assert not verify_chain(bad)


def test_chain_json_round_trip(example_chain):
    text = example_chain.dumps()
    again = Chain.from_json(json.loads(text))
    assert again == example_chain
    assert again.dumps() == text
    assert verify_chain(again)


def test_chain_json_rejects_bad_c(example_chain):
    obj = example_chain.to_json()
    obj["c"] += 1
    with pytest.raises(ValueError):
        Chain.from_json(obj)


def test_dualized_chain_verifies(example_chain):
    assert verify_chain(example_chain.dualize())


def test_chain_for_dispatch():
    assert chain_for(P("(1,1)"), P("(0,1)+(1,0)")).words == ["10", "01"]
    ch = chain_for(straight_line(5, 2), bottom_polygon(5, 2))
    assert verify_chain(ch) and ch.c == 6
