"""Named words and morphisms used throughout the package."""
from __future__ import annotations

from .words import Morphism, WordPrefix, apply_coding, block_coding, coding, iterate_fixed_point

THUE_MORSE = Morphism.parse("01/10")
PERIOD_DOUBLING = Morphism.parse("01/00")
# Fixed points of these two are the 2-block codings of the words above.
PD_BLOCK2 = Morphism.parse("12/12/00")
TM_BLOCK2 = Morphism.parse("12/13/20/21")

# Letter maps relating the words.  TM_TO_PD sends the 2-block coding of
# Thue-Morse onto the period-doubling word.
TM_TO_PD = coding([1, 0, 0, 1])
PD2_SWAP = coding([0, 2, 1])
TM2_SWAP = coding([0, 2, 1, 3])
TM2_SWAP_OUTER = coding([3, 1, 2, 0])

WORD_IDS = ("tm", "pd", "tm2", "pd2", "pd3")

_DESCRIPTIONS = {
    "tm": "Thue-Morse word, fixed point of 0->01, 1->10",
    "pd": "period-doubling word, fixed point of 0->01, 1->00",
    "tm2": "2-block coding of Thue-Morse, fixed point of 0->12, 1->13, 2->20, 3->21 from 1",
    "pd2": "2-block coding of period-doubling, fixed point of 0->12, 1->12, 2->00 from 1",
    "pd3": "3-block coding of period-doubling",
}


def describe(word_id: str) -> str:
    return _DESCRIPTIONS[word_id]


def get_word(word_id: str, length: int = 1024) -> WordPrefix:
    """Prefix of a catalog word; longer prefixes come from ``extended``."""
    if word_id == "tm":
        return iterate_fixed_point(THUE_MORSE, 0, length, "tm")
    if word_id == "pd":
        return iterate_fixed_point(PERIOD_DOUBLING, 0, length, "pd")
    if word_id == "tm2":
        return iterate_fixed_point(TM_BLOCK2, 1, length, "tm2")
    if word_id == "pd2":
        return iterate_fixed_point(PD_BLOCK2, 1, length, "pd2")
    if word_id == "pd3":
        return block_coding(get_word("pd", length + 2), 3).named("pd3")
    raise KeyError(f"unknown word id {word_id!r}; known: {', '.join(WORD_IDS)}")


def coded(word_id: str, c: Morphism, length: int = 1024, name: str | None = None) -> WordPrefix:
    return apply_coding(c, get_word(word_id, length), name)
