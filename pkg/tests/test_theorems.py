import json
import math
import random

import pytest

from abelianlab import theorems as th
from abelianlab.catalog import get_word
from abelianlab.complexity import StatisticKind, series_table
from abelianlab.theorems import (ReflectionSpec, a_sequence, abelian_classes, conjecture_blocks,
                                 reflection_eval, reflection_table, solve_reflection,
                                 verify_A_relations, verify_pd_suite, verify_tm_suite)

A_START = [0, 1, 1, 2, 1, 2, 2, 2, 1, 2, 2, 3, 2, 3, 2, 2]


@pytest.fixture(scope="module")
def pd512():
    return th.pd_truth(513)


@pytest.fixture(scope="module")
def tm512():
    return th.tm_truth(513)


# reflection recurrence

def test_reflection_eval_examples():
    spec = ReflectionSpec(0, 1, (0,))
    assert [reflection_eval(spec, n) for n in range(16)] == A_START
    const = ReflectionSpec(0, 0, (7,))
    assert {reflection_eval(const, n) for n in range(300)} == {7}


def test_powers_of_two_offset_by_initial_value():
    rng = random.Random(3)
    for _ in range(20):
        spec = th.random_spec(rng, (0, 4))
        for l in range(spec.l0, 14):
            assert reflection_eval(spec, 1 << l) == spec.initials[0] + spec.c


def test_spec_validation():
    with pytest.raises(ValueError):
        ReflectionSpec(2, 1, (0, 1, 2))
    with pytest.raises(ValueError):
        ReflectionSpec(-1, 1, ())
    with pytest.raises(ValueError):
        reflection_eval(ReflectionSpec(0, 1, (0,)), -1)


def test_a_sequence():
    assert [a_sequence(n) for n in range(16)] == A_START
    assert a_sequence(1) == 1 and a_sequence(3) == 2
    assert all(a_sequence(2 * n) == a_sequence(n) for n in range(10 ** 4))
    assert th.a_table(5000) == [a_sequence(n) for n in range(5001)]


def test_a_relations():
    assert verify_A_relations(1 << 14).passed
    assert verify_A_relations(0).passed


def test_a_relations_perturbed():
    table = th.a_table(200)
    table[5] += 1
    rep = verify_A_relations(20, seq=table.__getitem__)
    assert not rep.passed
    assert rep.counterexamples[0]["inputs"] == {"relation": "8n+5", "n": 0}


def test_solver_example_level_two():
    rng = random.Random(11)
    for _ in range(10):
        s = list(rng.randint(-5, 5) for _ in range(4))
        c = rng.randint(-3, 3)
        spec = ReflectionSpec(2, c, s)
        for q in range(40):
            A = a_sequence
            assert solve_reflection(spec, 16 * q) == c * A(q) + s[0]
            for i in range(6, 11):
                assert solve_reflection(spec, 16 * q + i) == c * A(2 * q + 1) + s[abs(i - 8)]
            for i in range(1, 4):
                assert reflection_eval(spec, 16 * q + i) == c * A(4 * q + 1) - c + s[i]
            for i in range(13, 16):
                assert reflection_eval(spec, 16 * q + i) == c * A(4 * q + 3) - c + s[16 - i]
            assert reflection_eval(spec, 16 * q + 5) == reflection_eval(spec, 4 * q + 1) + c
            assert reflection_eval(spec, 16 * q + 11) == reflection_eval(spec, 4 * q + 3) + c


def test_solver_fuzz():
    rep = th.verify_reflection_solver(40, 1 << 10, seed=5)
    assert rep.passed and rep.checked == 40 * 1025


def test_solver_level_zero_and_large_n():
    spec = ReflectionSpec(0, 2, (1,))
    assert solve_reflection(spec, 12345) == reflection_eval(spec, 12345)
    spec = ReflectionSpec(3, -2, (0, 1, -1, 2, 3, 0, 4, -5))
    n = 10 ** 12 + 12345
    assert solve_reflection(spec, n) == reflection_eval(spec, n)


def test_telescoping_identity():
    rng = random.Random(17)
    for _ in range(30):
        spec = th.random_spec(rng, (0, 4))
        base = (spec.l0 + 1) // 2
        for l in range(max(base - 1, 0), 11):
            lhs = reflection_eval(spec, (4 ** (l + 1) - 1) // 3)
            rhs = (l - (spec.l0 - 1) // 2) * spec.c + reflection_eval(spec, (4 ** base - 1) // 3)
            assert lhs == rhs


def test_logarithmic_growth():
    rng = random.Random(23)
    for _ in range(3):
        spec = th.random_spec(rng, (1, 3))
        s = reflection_table(spec, 1 << 20)
        bound = max(abs(v) for v in spec.initials)
        # each doubling of n adds at most |c|
        for n in range(2, 1 << 20, 997):
            assert abs(s[n]) <= abs(spec.c) * math.log2(n) + bound + abs(spec.c)


def test_measured_series_follow_the_recurrence():
    K = StatisticKind
    x = series_table(get_word("pd2"), [K.ext_delta([0]), K.labelian(1)], 2048, method="profile")
    y = series_table(get_word("tm2"), [K.ext_delta([1, 2])], 2048, method="profile")
    cases = [(x[K.ext_delta([0])].values, 2, 2), (x[K.labelian(1)].values, 2, 3),
             (y[K.ext_delta([1, 2])].values, 1, 1)]
    for vals, l0, c in cases:
        spec = ReflectionSpec(l0, c, vals[:1 << l0])
        assert reflection_table(spec, 2048) == list(vals)


# period-doubling suite

def test_pd_suite_512(pd512):
    reps = verify_pd_suite(512, truth=pd512, classes=False)
    assert len(reps) == 8
    assert all(r.passed for r in reps), th.reports_text(reps)


def test_pd_suite_small():
    reps = verify_pd_suite(4)
    assert len(reps) == 8 and all(r.passed for r in reps)


def test_pd_boundary_note(pd512):
    rep = verify_pd_suite(512, truth=pd512, classes=False)[1]
    assert rep.notes and "7/7" in rep.notes[0]


@pytest.mark.parametrize("name,n", [("P1x", 100), ("D0", 64), ("m0", 37), ("P2p", 200), ("jm0", 50)])
def test_pd_suite_detects_perturbation(pd512, name, n):
    reps = verify_pd_suite(512, truth=pd512.perturbed(name, n), classes=False)
    assert not all(r.passed for r in reps)


def test_pd_formula_pieces():
    assert th.pd_abelian_formula(0, 0, 0) == 1
    assert th.pd_mod2_target(11) == 3 and th.pd_mod2_target(2) is None


# Thue-Morse suite

def test_tm_suite_512(tm512):
    reps = verify_tm_suite(512, truth=tm512, classes=False)
    assert len(reps) == 6
    assert all(r.passed for r in reps), th.reports_text(reps)


def test_tm_suite_small():
    reps = verify_tm_suite(4)
    assert len(reps) == 7 and all(r.passed for r in reps)


def test_tm_bridge_odd_slice(tm512):
    rep = th.verify_tm_bridge(tm512, 513, parity="odd")
    assert rep.passed and rep.checked == 256
    assert th.verify_tm_bridge(tm512, 513, parity="even").passed


@pytest.mark.parametrize("name,n", [("P1y", 100), ("D12", 65), ("m12", 22), ("P2t", 301), ("JM03", None)])
def test_tm_suite_detects_perturbation(tm512, name, n):
    if n is None:
        # JM_03 only enters the bridge for odd n with m_12 even
        n = next(k for k in range(1, 513, 2) if tm512["m12"][k] % 2 == 0)
    reps = verify_tm_suite(512, truth=tm512.perturbed(name, n), classes=False)
    assert not all(r.passed for r in reps)


def test_tm_case_splits_partition(tm512):
    for n in range(513):
        D, m = tm512["D12"][n], tm512["m12"][n]
        assert len(th.tm_abelian_cases(n, D, m)) == 1
    # the printed conditions of the reflection step are pairwise exclusive
    for l in range(2, 10):
        for r in range(0, (1 << (l - 1)) + 1):
            n = (1 << l) + r
            if n > 513:
                break
            D, m = tm512["D12"][n], tm512["m12"][n]
            conds = [r % 2 == 1,
                     r % 2 == 0 and D % 2 == 0 and m % 2 == 0,
                     r % 2 == 0 and D % 2 == 1 and m % 2 == (l + 1) % 2]
            assert sum(conds) <= 1


def test_closed_forms():
    assert [th.closed_form_a(l) for l in range(1, 6)] == [1, 3, 5, 11, 21]
    assert [th.closed_form_b(l) for l in range(1, 6)] == [2, 2, 6, 10, 22]


def test_index_table_consistency():
    rep = verify_tm_suite(16, classes=False)[2]
    assert rep.passed


def test_classes_of_length_one():
    cls = abelian_classes(get_word("tm2"), 1)
    assert sorted(c.parikh for c in cls) == [(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]
    by = {c.parikh: c for c in cls}
    # letter 3 is always followed by 2 and preceded by 1
    assert by[(0, 0, 0, 1)].after == {2} and by[(0, 0, 0, 1)].before == {1}
    rep = th._tm_g(th.tm_truth(3), 2)
    assert rep.passed


def test_classes_argument_check():
    with pytest.raises(ValueError):
        abelian_classes(get_word("tm2"), 0)


def test_cross_word_identity():
    assert th.verify_cross_word(256).passed


# reports

def test_report_serialization(pd512):
    rep = verify_pd_suite(512, truth=pd512.perturbed("P1x", 40), classes=False)[0]
    d = json.loads(rep.to_json())
    assert d["outcome"] == "fail" and d["counterexamples"][0]["inputs"] == {"n": 40}
    assert set(d) >= {"claim", "range", "outcome", "counterexamples"}
    assert rep.summary().startswith("FAIL pd.abelian_from_delta")
    assert th.reports_to_json([rep]).startswith("[")


# conjecture

def test_three_block_conjecture():
    rep = conjecture_blocks(get_word("pd"), 3, 2047, constants=(5, 7))
    assert rep.empirical and rep.passed
    assert "240125252401240124" in rep.notes[0]


def test_conjecture_infers_constants():
    rep = conjecture_blocks(get_word("pd"), 3, 1023)
    assert "+5 (r even), +7 (r odd)" in rep.description


def test_two_block_reduces_to_abelian_reflection():
    rep = conjecture_blocks(get_word("pd"), 2, 1024, min_exponent=2, constants=(3, 3))
    assert rep.passed


def test_conjecture_failure_is_reported_not_raised():
    rep = conjecture_blocks(get_word("pd"), 3, 600, constants=(5, 6))
    assert not rep.passed and rep.empirical
