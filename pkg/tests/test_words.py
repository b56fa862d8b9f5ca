import numpy as np
import pytest

from abelianlab.catalog import (PD_BLOCK2, PD2_SWAP, PERIOD_DOUBLING, THUE_MORSE, TM_BLOCK2,
                                TM_TO_PD, get_word)
from abelianlab.errors import AlphabetMismatch, NotProlongable, NotStabilized, TooShort
from abelianlab.words import (Alphabet, Morphism, apply_coding, block_coding, block_morphism,
                              coding, count_occurrences, enumerate_factors, format_word,
                              iterate_fixed_point, l_abelian_equivalent, l_abelian_key, literal,
                              morphic_factors, parikh, parse_word, reversal, stabilize)


def digits(s):
    return tuple(int(c) for c in s)


# fixed points

def test_thue_morse_prefix():
    w = iterate_fixed_point(THUE_MORSE, 0, 16)
    assert format_word(w.word[:16]) == "0110100110010110"


def test_period_doubling_prefix():
    w = iterate_fixed_point(PERIOD_DOUBLING, 0, 20)
    assert format_word(w.word[:20]) == "01000101010001000100"


def test_block_morphism_fixed_point_prefix():
    w = iterate_fixed_point(PD_BLOCK2, 1, 32)
    assert format_word(w.word[:32]) == "12001212120012001200121212001212"


def test_not_prolongable():
    with pytest.raises(NotProlongable):
        iterate_fixed_point(Morphism.parse("0/10"), 0, 8)
    with pytest.raises(NotProlongable):
        iterate_fixed_point(Morphism.parse("10/01"), 0, 8)


def test_prefix_is_stable_under_extension():
    short = iterate_fixed_point(THUE_MORSE, 0, 100).word
    long = iterate_fixed_point(THUE_MORSE, 0, 5000).word
    assert long[:len(short)] == short


def test_morphism_predicates():
    assert THUE_MORSE.is_uniform() and THUE_MORSE.uniform_length() == 2
    assert Morphism.parse("012/1").uniform_length() is None
    assert TM_TO_PD.is_coding() and not THUE_MORSE.is_coding()
    assert THUE_MORSE.power(3)((0,)) == digits("01101001")
    assert str(PD_BLOCK2) == "12/12/00"


def test_empty_image_rejected():
    with pytest.raises(ValueError):
        Morphism.from_images([(0, 1), ()])


# codings

def test_coding_maps_tm2_to_pd():
    y = get_word("tm2", 4096)
    p = get_word("pd", 4096)
    assert apply_coding(TM_TO_PD, y).word == p.word


def test_identity_coding():
    w = get_word("pd2", 100)
    assert apply_coding(coding([0, 1, 2]), w).word == w.word


def test_swap_coding():
    w = literal(digits("12001"), 3)
    assert apply_coding(PD2_SWAP, w).word == digits("21002")


def test_coding_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        apply_coding(coding([1, 0]), get_word("pd2", 10))


# block codings

def test_block_coding_literal_pairs():
    assert block_coding(digits("011010011"), 2) == digits("13212013")
    assert block_coding(digits("001101101"), 2) == digits("01321321")


def test_block_coding_of_tm():
    z = block_coding(get_word("tm", 64), 2)
    assert format_word(z.word[:24]) == "132120132012132120121320"
    assert z.alphabet.size == 4
    assert len(z) == 63


def test_block_coding_single_symbol():
    assert block_coding((1, 0, 1), 3, 2) == (5,)


def test_block_coding_too_short():
    with pytest.raises(TooShort):
        block_coding((1,), 2)
    with pytest.raises(TooShort):
        block_coding(literal((1,)), 2)


def test_block_codings_are_fixed_points():
    n = 1 << 16
    assert block_coding(get_word("pd", n + 1), 2).word[:n] == iterate_fixed_point(PD_BLOCK2, 1, n).word
    assert block_coding(get_word("tm", n + 1), 2).word[:n] == iterate_fixed_point(TM_BLOCK2, 1, n).word


def test_block_morphism_rebuilds_known_morphisms():
    m, seed = block_morphism(THUE_MORSE, 0, 2)
    assert seed == 1 and str(m) == "12/13/20/21"
    m, seed = block_morphism(PERIOD_DOUBLING, 0, 2)
    assert seed == 1 and m.images[:3] == PD_BLOCK2.images
    m, seed = block_morphism(PERIOD_DOUBLING, 0, 3)
    z = iterate_fixed_point(m, seed, 18)
    assert format_word(z.word[:18]) == "240125252401240124"


# Parikh vectors and occurrences

def test_parikh_examples():
    assert parikh((), 3).counts == (0, 0, 0)
    assert parikh((0, 0), 3).counts == (2, 0, 0)
    # 16 blocks of two letters: five 00 and eleven 12
    assert parikh(digits("12001212120012001200121212001212"), 3).counts == (10, 11, 11)
    assert parikh(digits("0112")).restricted([1, 2]) == 3


def test_count_occurrences():
    assert count_occurrences(digits("011010011"), digits("010")) == 1
    assert count_occurrences(digits("001101101"), digits("010")) == 0
    assert count_occurrences((0, 0, 0), (0, 0)) == 2
    assert count_occurrences((0,), (0, 0)) == 0


def test_l_abelian_equivalence_example():
    x, y = digits("011010011"), digits("001101101")
    assert l_abelian_equivalent(x, y, 2)
    assert not l_abelian_equivalent(x, y, 3)
    assert l_abelian_equivalent(x, x, 5)


def test_l_abelian_key_example():
    x, y = digits("011010011"), digits("001101101")
    assert l_abelian_key(x, 2, 2) == l_abelian_key(y, 2, 2)
    assert l_abelian_key(x, 3, 2) != l_abelian_key(y, 3, 2)
    assert l_abelian_key(digits("0110"), 1, 2) == ((), parikh(digits("0110"), 2))
    with pytest.raises(TooShort):
        l_abelian_key((0,), 3)


def test_reversal():
    assert reversal((0, 1, 2)) == (2, 1, 0)
    assert reversal(()) == ()


def test_parse_and_format():
    assert parse_word("0110") == (0, 1, 1, 0)
    assert parse_word("10,3,7") == (10, 3, 7)
    assert format_word((10, 3), 11) == "10,3"


def test_alphabet_checks():
    with pytest.raises(ValueError):
        Alphabet(0)
    with pytest.raises(AlphabetMismatch):
        literal((0, 3), 2)


# factors

def test_factor_examples():
    assert enumerate_factors(get_word("pd2"), 2).factors == tuple(map(digits, ["00", "01", "12", "20", "21"]))
    assert enumerate_factors(get_word("tm2"), 2).factors == tuple(map(digits, ["01", "12", "13", "20", "21", "32"]))
    fs = enumerate_factors(get_word("tm"), 1)
    assert fs.factors == ((0,), (1,)) and fs.stabilized


def test_empty_factor():
    fs = enumerate_factors(get_word("tm"), 0)
    assert fs.factors == ((),)


def test_literal_words_are_not_stabilized():
    fs = enumerate_factors(literal(digits("0110")), 2)
    assert not fs.stabilized
    assert fs.factors == (digits("01"), digits("10"), digits("11"))


def test_doubling_cap():
    with pytest.raises(NotStabilized):
        stabilize(get_word("tm"), 300, max_prefix=512)


def test_stabilized_prefix_matches_certified_factors():
    for wid, m, seed in (("tm", THUE_MORSE, 0), ("pd", PERIOD_DOUBLING, 0), ("pd2", PD_BLOCK2, 1),
                         ("tm2", TM_BLOCK2, 1)):
        w = get_word(wid)
        for n in list(range(0, 40)) + [64, 100, 255, 512]:
            assert set(enumerate_factors(w, n).factors) == set(morphic_factors(m, seed, n)), (wid, n)


def test_wordprefix_is_read_only():
    w = get_word("tm", 16)
    with pytest.raises(ValueError):
        w.letters[0] = 1
    assert isinstance(w.letters, np.ndarray)
