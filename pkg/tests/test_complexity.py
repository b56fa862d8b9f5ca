import pytest

from abelianlab.catalog import WORD_IDS, get_word
from abelianlab.complexity import (ComplexitySeries, Extremal, StatisticKind, count_spectrum,
                                   extremal_counts, factor_complexity, jump_functions,
                                   l_abelian_complexity, profile_labelian, series, series_table)
from abelianlab.words import block_coding, literal

TM_TWO_ABELIAN = [1, 2, 4, 6, 8, 6, 8, 10, 8, 6, 8, 8, 10, 10, 10, 8, 8, 6, 8, 10, 10, 8, 10, 12, 12, 10, 12, 12]
K = StatisticKind


def test_factor_complexity_examples():
    assert factor_complexity(get_word("pd2"), 2) == 5
    assert factor_complexity(get_word("tm2"), 2) == 6
    for wid in WORD_IDS:
        assert factor_complexity(get_word(wid), 0) == 1


def test_two_abelian_thue_morse():
    assert [l_abelian_complexity(get_word("tm"), 2, n) for n in range(28)] == TM_TWO_ABELIAN


def test_abelian_complexity_pd2_at_two():
    assert l_abelian_complexity(get_word("pd2"), 1, 2) == 4


def test_three_block_word_abelian_values():
    z = get_word("pd3")
    assert [l_abelian_complexity(z, 1, n) for n in range(8)] == [1, 5, 5, 8, 6, 10, 9, 11]


def test_printed_value_at_six_exceeds_factor_count():
    # The printed list has 19 at n = 6, but there are only 12 factors of that length.
    z = get_word("pd3")
    assert factor_complexity(z, 6) == 12
    assert l_abelian_complexity(z, 1, 6) <= factor_complexity(z, 6) < 19


def test_short_lengths_count_distinct_factors():
    w = get_word("tm")
    for ell in (3, 4, 5):
        for n in range(ell - 1):
            assert l_abelian_complexity(w, ell, n) == factor_complexity(w, n)


def test_extremal_examples():
    x, y = get_word("pd2"), get_word("tm2")
    for l in range(1, 11):
        assert extremal_counts(x, [0], 1 << l).delta == 2
        assert extremal_counts(y, [1, 2], 1 << l).delta == 1
    assert extremal_counts(x, [0], 0) == Extremal(0, 0, 0)


def test_count_spectrum_is_an_interval():
    e = extremal_counts(get_word("tm2"), [1, 2], 37)
    assert count_spectrum(get_word("tm2"), [1, 2], 37) == tuple(range(e.min, e.max + 1))


def test_jump_examples():
    assert jump_functions(get_word("pd2"), [0], 2) == (1, 0)
    assert jump_functions(get_word("pd2"), [0], 0)[0] == 0
    y = get_word("tm2")
    e = [extremal_counts(y, [0, 3], n) for n in (4, 5, 6)]
    JM, jm = jump_functions(y, [0, 3], 5)
    assert (JM, jm) == (e[1].max - e[0].max, e[2].min - e[1].min)
    assert JM in (0, 1) and jm in (0, 1)


def test_series_examples():
    s = series(get_word("tm"), K.labelian(2), 27)
    assert list(s.values) == TM_TWO_ABELIAN
    assert series(get_word("tm"), K.labelian(2), 0).values == (1,)
    d = series(get_word("tm2"), K.ext_delta([1, 2]), 64)
    p = series(get_word("pd"), K.labelian(1), 64)
    assert [v + 1 for v in d.values] == list(p.values)


def test_series_table_agrees_with_single_calls():
    w = get_word("pd2")
    kinds = [K.ext_max([0]), K.ext_min([0]), K.ext_delta([0]), K.jump_max([0]), K.jump_min([0])]
    tab = series_table(w, kinds, 40, 3)
    for n in range(3, 41):
        e = extremal_counts(w, [0], n)
        JM, jm = jump_functions(w, [0], n)
        assert [tab[k][n] for k in kinds] == [e.max, e.min, e.delta, JM, jm]


@pytest.mark.parametrize("wid", WORD_IDS)
def test_profile_engine_matches_enumeration(wid):
    w = get_word(wid)
    n_hi = 200 if wid != "pd3" else 80
    letters = [(0,), (1, 2)] if w.alphabet.size > 2 else [(0,)]
    kinds = [K.labelian(1), K.labelian(2)] + [k(S) for S in letters
                                              for k in (K.ext_max, K.ext_min, K.jump_max, K.jump_min)]
    a = series_table(w, kinds, n_hi, method="enumerate")
    b = series_table(w, kinds, n_hi, method="profile")
    for kd in kinds:
        assert a[kd].values == b[kd].values, kd.label


def test_profile_short_lengths_for_higher_levels():
    w = get_word("pd")
    for n in range(6):
        assert profile_labelian(w, 4, n) == l_abelian_complexity(w, 4, n)


def test_profile_refuses_factor_complexity():
    with pytest.raises(ValueError):
        series(get_word("tm"), K.factor(), 5, method="profile")


def test_auto_method_falls_back_for_literals():
    w = literal((0, 1, 1, 0, 1, 0, 0, 1), 2)
    assert series(w, K.labelian(1), 3, method="auto").values == series(w, K.labelian(1), 3).values


def test_block_coded_word_profile():
    z = block_coding(get_word("tm", 600), 3)
    a = series(z, K.labelian(1), 60)
    b = series(z, K.labelian(1), 60, method="profile")
    assert a.values == b.values


def test_statistic_kind_validation():
    with pytest.raises(ValueError):
        K.labelian(0)
    with pytest.raises(ValueError):
        K("max", None, ())
    with pytest.raises(ValueError):
        K("median")
    assert K.ext_max([2, 1]).letters == (1, 2)
    assert K.from_dict(K.jump_min([0, 3]).to_dict()) == K.jump_min([0, 3])


def test_series_csv_json_round_trip():
    s = series(get_word("tm2"), K.ext_delta([1, 2]), 30, 5)
    assert ComplexitySeries.from_csv(s.to_csv(), s.word_id, s.kind) == s
    assert ComplexitySeries.from_json(s.to_json()) == s
    assert s.to_csv().splitlines()[0] == "n,value"


def test_range_errors():
    with pytest.raises(ValueError):
        series(get_word("tm"), K.labelian(1), 3, 5)
