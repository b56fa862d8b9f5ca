"""Complexity statistics of words.

Two independent engines compute the same quantities:

* the enumeration engine slides a window over a stabilized prefix
  (see :func:`abelianlab.words.stabilize`) and reads counts from cumulative
  sums;
* the profile engine works only for (codings of) fixed points of uniform
  morphisms.  It tracks, for every length ``n``, the set of triples
  ``(first letter, last letter, Parikh vector)`` over all factors, which
  satisfies an exact recursion in ``n``.  It reaches ``n`` in the tens of
  thousands where enumeration would be slow.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .words import (
    Blocked,
    Coded,
    FixedPoint,
    Morphism,
    Stabilized,
    WordPrefix,
    _block_array,
    block_morphism,
    stabilize,
)

KINDS = ("factor", "labelian", "max", "min", "delta", "jmax", "jmin")


@dataclass(frozen=True)
class StatisticKind:
    name: str
    level: int | None = None
    letters: tuple | None = None

    def __post_init__(self):
        if self.name not in KINDS:
            raise ValueError(f"unknown statistic {self.name!r}")
        if self.name == "labelian" and (self.level is None or self.level < 1):
            raise ValueError("l-abelian complexity needs a level >= 1")
        if self.name in ("max", "min", "delta", "jmax", "jmin"):
            if not self.letters:
                raise ValueError("letter set must be nonempty")
            object.__setattr__(self, "letters", tuple(sorted(set(self.letters))))

    @classmethod
    def factor(cls):
        return cls("factor")

    @classmethod
    def labelian(cls, ell: int):
        return cls("labelian", level=ell)

    @classmethod
    def ext_max(cls, letters):
        return cls("max", letters=tuple(letters))

    @classmethod
    def ext_min(cls, letters):
        return cls("min", letters=tuple(letters))

    @classmethod
    def ext_delta(cls, letters):
        return cls("delta", letters=tuple(letters))

    @classmethod
    def jump_max(cls, letters):
        return cls("jmax", letters=tuple(letters))

    @classmethod
    def jump_min(cls, letters):
        return cls("jmin", letters=tuple(letters))

    @property
    def label(self) -> str:
        if self.name == "factor":
            return "P(inf)"
        if self.name == "labelian":
            return f"P({self.level})"
        sub = "".join(str(a) for a in self.letters) if all(a < 10 for a in self.letters) \
            else ",".join(str(a) for a in self.letters)
        return {"max": "M", "min": "m", "delta": "Delta", "jmax": "JM", "jmin": "jm"}[self.name] + "_" + sub

    def to_dict(self) -> dict:
        d = {"name": self.name}
        if self.level is not None:
            d["level"] = self.level
        if self.letters is not None:
            d["letters"] = list(self.letters)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "StatisticKind":
        letters = d.get("letters")
        return cls(d["name"], d.get("level"), tuple(letters) if letters is not None else None)


@dataclass(frozen=True)
class ComplexitySeries:
    word_id: str
    kind: StatisticKind
    n_lo: int
    n_hi: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.n_hi - self.n_lo + 1:
            raise ValueError("values do not cover the range")

    def __getitem__(self, n: int) -> int:
        if not self.n_lo <= n <= self.n_hi:
            raise IndexError(n)
        return self.values[n - self.n_lo]

    def items(self):
        return zip(range(self.n_lo, self.n_hi + 1), self.values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["n", "value"])
        wr.writerows(self.items())
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, word_id: str, kind: StatisticKind) -> "ComplexitySeries":
        rows = list(csv.reader(io.StringIO(text)))
        if rows and rows[0] == ["n", "value"]:
            rows = rows[1:]
        ns = [int(r[0]) for r in rows]
        vals = tuple(int(r[1]) for r in rows)
        if ns != list(range(ns[0], ns[0] + len(ns))):
            raise ValueError("CSV rows must cover a contiguous range of n")
        return cls(word_id, kind, ns[0], ns[-1], vals)

    def to_json(self) -> str:
        return json.dumps({"word": self.word_id, "kind": self.kind.to_dict(),
                           "range": [self.n_lo, self.n_hi], "values": list(self.values)})

    @classmethod
    def from_json(cls, text: str) -> "ComplexitySeries":
        d = json.loads(text)
        lo, hi = d["range"]
        return cls(d["word"], StatisticKind.from_dict(d["kind"]), lo, hi, tuple(d["values"]))


@dataclass(frozen=True)
class Extremal:
    min: int
    max: int
    delta: int


# -- enumeration engine ------------------------------------------------------------

class WindowScan:
    """All length-``n`` windows of a stabilized prefix."""

    def __init__(self, st: Stabilized):
        self.st = st
        self.n = st.n
        self.letters = st.prefix.letters
        self.r = st.prefix.alphabet.size
        self.count = st.starts if st.n > 0 else 0

    @property
    def distinct(self) -> int:
        return len(self.st.windows)

    def letter_sums(self, letters: Iterable[int]) -> np.ndarray:
        """Occurrences of the letter set in every window."""
        ind = np.isin(self.letters, list(letters)).astype(np.int64)
        c = np.concatenate(([0], np.cumsum(ind)))
        return c[self.n:self.n + self.count] - c[:self.count]

    def extremal(self, letters) -> Extremal:
        if self.n == 0:
            return Extremal(0, 0, 0)
        v = self.letter_sums(letters)
        lo, hi = int(v.min()), int(v.max())
        return Extremal(lo, hi, hi - lo)

    def spectrum(self, letters) -> tuple:
        if self.n == 0:
            return (0,)
        return tuple(int(a) for a in np.unique(self.letter_sums(letters)))

    def labelian(self, ell: int) -> int:
        n = self.n
        if n <= ell - 1:
            return self.distinct
        r = self.r
        blocks = _block_array(self.letters, ell, r)
        uniq, inv = np.unique(blocks, return_inverse=True)
        onehot = np.zeros((len(blocks) + 1, len(uniq)), dtype=np.int64)
        onehot[np.arange(1, len(blocks) + 1), inv] = 1
        cum = np.cumsum(onehot, axis=0)
        s = np.arange(self.count)
        counts = cum[s + n - ell + 1] - cum[s]
        keys = np.column_stack((blocks[s] // r, counts))
        return len(np.unique(keys, axis=0))


def scan(w: WordPrefix, n: int, initial_len: int | None = None,
         max_prefix: int | None = None) -> WindowScan:
    return WindowScan(stabilize(w, n, initial_len, max_prefix))


def factor_complexity(w: WordPrefix, n: int) -> int:
    return scan(w, n).distinct


def l_abelian_complexity(w: WordPrefix, ell: int, n: int) -> int:
    if ell < 1:
        raise ValueError("level must be positive")
    return scan(w, n).labelian(ell)


def extremal_counts(w: WordPrefix, letters, n: int) -> Extremal:
    """Minimum, maximum and spread of the letter-set count over length-n factors."""
    sc = scan(w, n)
    ext = sc.extremal(letters)
    # Windows of a prefix form a walk with unit steps, so the attained counts
    # fill the whole interval; keep the check explicit anyway.
    if len(sc.spectrum(letters)) != ext.delta + 1:
        raise AssertionError("letter counts do not fill [min, max]")
    return ext


def count_spectrum(w: WordPrefix, letters, n: int) -> tuple:
    """Sorted distinct values of the letter-set count over length-n factors."""
    return scan(w, n).spectrum(letters)


def jump_functions(w: WordPrefix, letters, n: int) -> tuple[int, int]:
    here = scan(w, n).extremal(letters)
    up = scan(w, n + 1).extremal(letters)
    jmax = 0 if n == 0 else here.max - scan(w, n - 1).extremal(letters).max
    return jmax, up.min - here.min


def _needed_lengths(kinds, n_lo, n_hi):
    lo, hi = n_lo, n_hi
    for kd in kinds:
        if kd.name == "jmax":
            lo = min(lo, max(n_lo - 1, 0))
        if kd.name == "jmin":
            hi = max(hi, n_hi + 1)
    return lo, hi


def series_table(w: WordPrefix, kinds: Sequence[StatisticKind], n_hi: int, n_lo: int = 0,
                 method: str = "enumerate") -> dict:
    """Several statistics over ``n_lo..n_hi`` sharing one scan per length.

    ``method`` is ``"enumerate"`` (windows over a stabilized prefix),
    ``"profile"`` (exact recursion, fixed points of uniform morphisms only) or
    ``"auto"`` (profile when available, otherwise enumerate).
    """
    if n_hi < n_lo or n_lo < 0:
        raise ValueError("empty or negative range")
    kinds = list(kinds)
    if method == "auto":
        usable = has_profile(w) and all(kd.name != "factor" for kd in kinds)
        method = "profile" if usable else "enumerate"
    lo, hi = _needed_lengths(kinds, n_lo, n_hi)
    sets = {kd.letters for kd in kinds if kd.letters is not None}
    base: dict = {}
    if method == "enumerate":
        for n in range(lo, hi + 1):
            sc = scan(w, n)
            row = {("ext", S): sc.extremal(S) for S in sets}
            for kd in kinds:
                if kd.name == "factor":
                    row["factor"] = sc.distinct
                elif kd.name == "labelian":
                    row[("lab", kd.level)] = sc.labelian(kd.level)
            base[n] = row
    elif method == "profile":
        for n in range(lo, hi + 1):
            row = {("ext", S): profile_extremal(w, S, n) for S in sets}
            for kd in kinds:
                if kd.name == "factor":
                    raise ValueError("factor complexity needs enumeration")
                if kd.name == "labelian":
                    row[("lab", kd.level)] = profile_labelian(w, kd.level, n)
            base[n] = row
    else:
        raise ValueError(f"unknown method {method!r}")

    label = w.label
    out = {}
    for kd in kinds:
        vals = [_pick(base, kd, n) for n in range(n_lo, n_hi + 1)]
        out[kd] = ComplexitySeries(label, kd, n_lo, n_hi, tuple(vals))
    return out


def _pick(base, kd: StatisticKind, n: int) -> int:
    if kd.name == "factor":
        return base[n]["factor"]
    if kd.name == "labelian":
        return base[n][("lab", kd.level)]
    e = base[n][("ext", kd.letters)]
    if kd.name == "max":
        return e.max
    if kd.name == "min":
        return e.min
    if kd.name == "delta":
        return e.delta
    if kd.name == "jmax":
        return 0 if n == 0 else e.max - base[n - 1][("ext", kd.letters)].max
    return base[n + 1][("ext", kd.letters)].min - e.min


def series(w: WordPrefix, kind: StatisticKind, n_hi: int, n_lo: int = 0,
           method: str = "enumerate") -> ComplexitySeries:
    return series_table(w, [kind], n_hi, n_lo, method)[kind]


# -- profile engine ----------------------------------------------------------------

class MorphicProfile:
    """Exact (first, last, Parikh) profiles of the factors of a coded fixed point.

    The word is ``coding(u)`` where ``u`` is the fixed point of the uniform
    morphism ``m`` from ``seed``; ``coding`` is a list of letter images (or
    None for the identity).
    """

    def __init__(self, m: Morphism, seed: int, coding: Sequence[int] | None = None,
                 size: int | None = None):
        k = m.uniform_length()
        if k is None or k < 2:
            raise ValueError("profiles need a uniform morphism of length >= 2")
        self.m = m
        self.k = k
        self.r = m.source.size
        self.coding = tuple(coding) if coding is not None else None
        self.size = size if size is not None else (max(self.coding) + 1 if self.coding else self.r)
        r = self.r
        self._img = m.images
        self._img_psi = [self._psi(img) for img in m.images]
        self._pre = {(a, o): self._psi(m.images[a][:o]) for a in range(r) for o in range(k + 1)}
        self._raw: dict[int, frozenset] = {}
        self._coded: dict[int, frozenset] = {}
        self._base(seed)

    def _psi(self, w) -> tuple:
        v = [0] * self.r
        for a in w:
            v[a] += 1
        return tuple(v)

    def _base(self, seed: int) -> None:
        from .words import two_letter_factors
        two = two_letter_factors(self.m, seed)
        self._raw[0] = frozenset()
        self._raw[1] = frozenset((f[0], f[0], self._psi(f[:1])) for f in two)
        self._raw[2] = frozenset((f[0], f[1], self._psi(f)) for f in two)

    def raw(self, n: int) -> frozenset:
        """Profile of the uncoded fixed point."""
        got = self._raw.get(n)
        if got is not None:
            return got
        # Fill iteratively from below so recursion depth stays small.
        need = []
        todo = [n]
        while todo:
            x = todo.pop()
            if x in self._raw or x in need:
                continue
            need.append(x)
            for o in range(self.k):
                mm = -(-(o + x) // self.k)
                if mm not in self._raw:
                    todo.append(mm)
        for x in sorted(need):
            self._raw[x] = self._step(x)
        return self._raw[n]

    def _step(self, n: int) -> frozenset:
        k, r = self.k, self.r
        img, ipsi, pre = self._img, self._img_psi, self._pre
        out = set()
        for o in range(k):
            mm = -(-(o + n) // k)
            e = o + n - (mm - 1) * k
            for f, l, v in self._raw[mm]:
                tot = [0] * r
                for a in range(r):
                    va = v[a]
                    if va:
                        ia = ipsi[a]
                        for b in range(r):
                            tot[b] += va * ia[b]
                pf, sl, pl = pre[(f, o)], ipsi[l], pre[(l, e)]
                out.add((img[f][o], img[l][e - 1],
                         tuple(tot[b] - pf[b] - sl[b] + pl[b] for b in range(r))))
        return frozenset(out)

    def profile(self, n: int) -> frozenset:
        """Set of (first letter, last letter, Parikh vector) over factors of length n."""
        if n < 0:
            raise ValueError("negative length")
        if self.coding is None:
            return self.raw(n)
        got = self._coded.get(n)
        if got is None:
            c, size = self.coding, self.size
            out = set()
            for f, l, v in self.raw(n):
                cv = [0] * size
                for a, x in enumerate(v):
                    if x:
                        cv[c[a]] += x
                out.add((c[f], c[l], tuple(cv)))
            got = self._coded[n] = frozenset(out)
        return got


def _reduce(prov):
    """(morphism, seed, coding list or None, alphabet size) for a regenerable word."""
    if isinstance(prov, FixedPoint):
        return prov.morphism, prov.seed, None, prov.size
    if isinstance(prov, Coded):
        m, seed, cmap, _ = _reduce(prov.source)
        img = [im[0] for im in prov.coding.images]
        base = cmap if cmap is not None else list(range(m.source.size))
        return m, seed, [img[a] for a in base], prov.size
    if isinstance(prov, Blocked):
        m, seed, cmap, src_size = _reduce(prov.source)
        ell = prov.ell
        mb, sb = block_morphism(m, seed, ell)
        if cmap is None:
            return mb, sb, None, prov.size
        r = m.source.size
        new = []
        for code in range(r ** ell):
            digits = []
            c = code
            for _ in range(ell):
                digits.append(c % r)
                c //= r
            val = 0
            for d in reversed(digits):
                val = val * src_size + cmap[d]
            new.append(val)
        return mb, sb, new, prov.size
    raise ValueError(f"no profile engine for {prov.describe()}")


@lru_cache(maxsize=32)
def _profile_for_prov(prov) -> MorphicProfile:
    m, seed, cmap, size = _reduce(prov)
    return MorphicProfile(m, seed, cmap, size)


def has_profile(w: WordPrefix) -> bool:
    try:
        _profile_for_prov(w.provenance)
    except ValueError:
        return False
    return True


def profile_for(w: WordPrefix) -> MorphicProfile:
    return _profile_for_prov(w.provenance)


def profile_extremal(w: WordPrefix, letters, n: int) -> Extremal:
    if n == 0:
        return Extremal(0, 0, 0)
    letters = tuple(letters)
    vals = {sum(v[a] for a in letters) for _, _, v in profile_for(w).profile(n)}
    lo, hi = min(vals), max(vals)
    return Extremal(lo, hi, hi - lo)


def profile_labelian(w: WordPrefix, ell: int, n: int) -> int:
    """ell-abelian complexity through the profile of the ell-block coding."""
    if n == 0:
        return 1
    if ell == 1:
        return len({v for _, _, v in profile_for(w).profile(n)})
    r = w.alphabet.size
    blocked = _profile_for_prov(Blocked(ell, w.provenance))
    if n >= ell:
        return len({(f // r, v) for f, _, v in blocked.profile(n - ell + 1)})
    # Short lengths: distinct factors are read off the block letters.
    return len({f // r ** (ell - n) for f, _, _ in blocked.profile(1)})


def clear_caches() -> None:
    _profile_for_prov.cache_clear()
