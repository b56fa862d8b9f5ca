"""Named integer sequences, resolved to lazily extended oracles.

Names are either fixed (``A``, ``a007302``, ``const1``) or built from a
statistic and a catalog word joined by dashes, with an optional modulus:

    p2-tm        2-abelian complexity of tm
    f-pd         factor complexity of pd
    delta0-pd2   max minus min count of letter 0 in pd2
    min12-tm2    min, likewise max, jmax, jmin
    m0-pd2-mod2  any of the above reduced mod 2 (m is short for min, M for max)
"""
from __future__ import annotations

import re

from .catalog import WORD_IDS, get_word
from .complexity import StatisticKind, series_table
from .kernel import SequenceOracle
from .theorems import a_sequence

FIXED = ("A", "a007302", "const1")
_STAT = re.compile(r"^(p(?P<lvl>\d+)|f|(?P<ext>delta|max|min|jmax|jmin|M|m|D)(?P<let>\d+))$")
_ALIASES = {"M": "max", "m": "min", "D": "delta"}


class _Grower:
    """Values of one statistic, recomputed in doubling chunks as larger n is asked for."""

    def __init__(self, word_id: str, kind: StatisticKind):
        self.word_id = word_id
        self.kind = kind
        self.values: list = []

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError("negative index")
        if n >= len(self.values):
            hi = max(n, 2 * len(self.values), 64)
            w = get_word(self.word_id)
            lo = len(self.values)
            self.values.extend(series_table(w, [self.kind], hi, lo, method="auto")[self.kind].values)
        return self.values[n]


def parse_kind(text: str) -> StatisticKind:
    m = _STAT.match(text)
    if not m:
        raise ValueError(f"unknown statistic {text!r}")
    if m.group("lvl"):
        return StatisticKind.labelian(int(m.group("lvl")))
    if text == "f":
        return StatisticKind.factor()
    name = _ALIASES.get(m.group("ext"), m.group("ext"))
    letters = [int(c) for c in m.group("let")]
    return StatisticKind(name, None, tuple(sorted(set(letters))))


def named_sequence(name: str) -> SequenceOracle:
    """Resolve a series name; raises ValueError for anything unrecognized."""
    if name in ("A", "a007302"):
        return SequenceOracle(a_sequence, name)
    if name == "const1":
        return SequenceOracle(lambda n: 1, name)
    parts = name.split("-")
    mod = None
    if len(parts) == 3 and parts[2].startswith("mod") and parts[2][3:].isdigit():
        mod = int(parts[2][3:])
        if mod < 2:
            raise ValueError("modulus must be at least 2")
        parts = parts[:2]
    if len(parts) != 2 or parts[1] not in WORD_IDS:
        raise ValueError(f"unknown series {name!r}")
    grow = _Grower(parts[1], parse_kind(parts[0]))
    if mod is None:
        return SequenceOracle(grow, name)
    return SequenceOracle(lambda n: grow(n) % mod, name)
