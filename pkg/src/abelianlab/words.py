"""Finite and infinite words over integer alphabets.

Letters are the integers ``0 .. r-1``.  A plain finite word is any sequence of
such integers; functions normalize it to a tuple.  Long prefixes of infinite
words live in :class:`WordPrefix`, which is backed by a read-only numpy array
and remembers how it was built so that it can regenerate longer prefixes.
"""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import AlphabetMismatch, NotProlongable, NotStabilized, TooShort

Word = tuple  # tuple[int, ...]

DEFAULT_MAX_PREFIX = 1 << 22


def max_prefix_cap() -> int:
    """Largest prefix the factor enumerator may build (env override)."""
    raw = os.environ.get("ABELIANLAB_MAX_PREFIX")
    return int(raw) if raw else DEFAULT_MAX_PREFIX


def as_word(w) -> Word:
    """Normalize a word given as str, sequence or WordPrefix to a tuple."""
    if isinstance(w, WordPrefix):
        return w.word
    if isinstance(w, str):
        return parse_word(w)
    if isinstance(w, np.ndarray):
        return tuple(int(a) for a in w.tolist())
    return tuple(int(a) for a in w)


def parse_word(text: str) -> Word:
    """Digit string ``"0110"`` or comma separated ``"10,3,7"``."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        return tuple(int(p) for p in text.split(","))
    if not text.isdigit():
        raise ValueError(f"not a word: {text!r}")
    return tuple(ord(c) - 48 for c in text)


def format_word(w, alphabet_size: int | None = None) -> str:
    w = as_word(w)
    r = alphabet_size if alphabet_size is not None else (max(w) + 1 if w else 1)
    if r <= 10:
        return "".join(chr(48 + a) for a in w)
    return ",".join(str(a) for a in w)


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("alphabet must be nonempty")

    def __contains__(self, a) -> bool:
        return 0 <= a < self.size

    def check(self, w: Iterable[int]) -> None:
        for a in w:
            if not 0 <= a < self.size:
                raise AlphabetMismatch(f"letter {a} outside alphabet of size {self.size}")


@dataclass(frozen=True)
class Morphism:
    """Morphism given by the images of the letters ``0 .. source.size-1``."""

    images: tuple
    source: Alphabet
    target: Alphabet

    def __post_init__(self):
        if len(self.images) != self.source.size:
            raise AlphabetMismatch("one image per source letter is required")
        for img in self.images:
            if len(img) == 0:
                raise ValueError("erasing morphisms are not supported")
            self.target.check(img)

    @classmethod
    def from_images(cls, images, target_size: int | None = None) -> "Morphism":
        """Build from a list (or letter-keyed dict) of images."""
        if isinstance(images, dict):
            images = [images[a] for a in range(len(images))]
        imgs = tuple(as_word(img) for img in images)
        if target_size is None:
            target_size = max(len(imgs), 1 + max(max(img) for img in imgs))
        return cls(imgs, Alphabet(len(imgs)), Alphabet(target_size))

    @classmethod
    def parse(cls, text: str, target_size: int | None = None) -> "Morphism":
        """Parse ``"01/10"``: images of 0, 1, ... separated by slashes."""
        return cls.from_images([parse_word(p) for p in text.split("/")], target_size)

    def __call__(self, w) -> Word:
        out: list[int] = []
        for a in as_word(w):
            out.extend(self.images[a])
        return tuple(out)

    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def is_prolongable(self, seed: int) -> bool:
        img = self.images[seed]
        return self.is_endomorphism() and len(img) >= 2 and img[0] == seed

    def uniform_length(self) -> int | None:
        lengths = {len(img) for img in self.images}
        return lengths.pop() if len(lengths) == 1 else None

    def is_uniform(self) -> bool:
        return self.uniform_length() is not None

    def is_coding(self) -> bool:
        return self.uniform_length() == 1

    def parikh_matrix(self) -> np.ndarray:
        """Column ``a`` holds the Parikh vector of the image of ``a``."""
        m = np.zeros((self.target.size, self.source.size), dtype=np.int64)
        for a, img in enumerate(self.images):
            for b in img:
                m[b, a] += 1
        return m

    def power(self, j: int) -> "Morphism":
        imgs = [(a,) for a in range(self.source.size)]
        for _ in range(j):
            imgs = [self(img) for img in imgs]
        return Morphism(tuple(imgs), self.source, self.target)

    def __str__(self):
        return "/".join(format_word(img, self.target.size) for img in self.images)


def coding(images: Sequence[int], target_size: int | None = None) -> Morphism:
    """Letter-to-letter morphism from a list of letter images."""
    return Morphism.from_images([(a,) for a in images], target_size)


# -- provenance ---------------------------------------------------------------

def _gather(table: list[np.ndarray], w: np.ndarray) -> np.ndarray:
    """Concatenate ``table[a]`` for every letter ``a`` of ``w`` (vectorized)."""
    lens = np.array([len(t) for t in table], dtype=np.int64)
    flat = np.concatenate(table)
    starts = np.concatenate(([0], np.cumsum(lens)[:-1]))
    wl = lens[w]
    out_starts = np.cumsum(wl) - wl
    idx = np.arange(int(wl.sum()), dtype=np.int64) - np.repeat(out_starts, wl) + np.repeat(starts[w], wl)
    return flat[idx]


@dataclass(frozen=True)
class Literal:
    """A finite word entered directly; cannot be extended."""

    letters: tuple
    size: int

    @property
    def max_length(self):
        return len(self.letters)

    def generate(self, length: int) -> np.ndarray:
        if length > len(self.letters):
            raise TooShort(f"literal word has only {len(self.letters)} letters")
        return np.array(self.letters[:length], dtype=np.int64)

    def describe(self) -> str:
        return "literal"


@dataclass(frozen=True)
class FixedPoint:
    morphism: Morphism
    seed: int

    max_length = None

    @property
    def size(self):
        return self.morphism.target.size

    def generate(self, length: int) -> np.ndarray:
        table = [np.array(img, dtype=np.int64) for img in self.morphism.images]
        w = np.array([self.seed], dtype=np.int64)
        while len(w) < length:
            w = _gather(table, w)
        return w[:length]

    def describe(self) -> str:
        return f"fixed point of {self.morphism} from {self.seed}"


@dataclass(frozen=True)
class Coded:
    coding: Morphism
    source: object

    @property
    def size(self):
        return self.coding.target.size

    @property
    def max_length(self):
        return self.source.max_length

    def generate(self, length: int) -> np.ndarray:
        table = np.array([img[0] for img in self.coding.images], dtype=np.int64)
        return table[self.source.generate(length)]

    def describe(self) -> str:
        return f"coding {self.coding} of ({self.source.describe()})"


@dataclass(frozen=True)
class Blocked:
    ell: int
    source: object

    @property
    def size(self):
        return self.source.size ** self.ell

    @property
    def max_length(self):
        m = self.source.max_length
        return None if m is None else max(m - self.ell + 1, 0)

    def generate(self, length: int) -> np.ndarray:
        base = self.source.generate(length + self.ell - 1)
        return _block_array(base, self.ell, self.source.size)

    def describe(self) -> str:
        return f"{self.ell}-block coding of ({self.source.describe()})"


def _block_array(w: np.ndarray, ell: int, r: int) -> np.ndarray:
    n = len(w) - ell + 1
    out = np.zeros(max(n, 0), dtype=np.int64)
    for i in range(ell):
        out = out * r + w[i:i + n]
    return out


@lru_cache(maxsize=64)
def _generate_cached(prov, length: int) -> np.ndarray:
    arr = prov.generate(length)
    arr.setflags(write=False)
    return arr


# -- prefixes -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WordPrefix:
    """Immutable prefix of a (possibly infinite) word."""

    alphabet: Alphabet
    letters: np.ndarray
    provenance: object
    name: str | None = field(default=None, compare=False)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return tuple(int(a) for a in self.letters[i].tolist())
        return int(self.letters[i])

    def __eq__(self, other):
        return (isinstance(other, WordPrefix) and self.alphabet == other.alphabet
                and np.array_equal(self.letters, other.letters))

    def __hash__(self):
        return hash((self.alphabet, len(self.letters), self.letters[:64].tobytes()))

    def __str__(self):
        return format_word(self.word, self.alphabet.size)

    def __repr__(self):
        head = format_word(self.letters[:40].tolist(), self.alphabet.size)
        return f"WordPrefix({self.label!r}, len={len(self)}, {head}...)"

    @property
    def word(self) -> Word:
        return tuple(int(a) for a in self.letters.tolist())

    @property
    def label(self) -> str:
        return self.name or self.provenance.describe()

    @property
    def is_finite(self) -> bool:
        return self.provenance.max_length is not None

    def extended(self, length: int) -> "WordPrefix":
        """Prefix of the same word of exactly ``length`` letters (or fewer for literals)."""
        if length <= len(self):
            return self if length == len(self) else self._with(self.letters[:length])
        cap = self.provenance.max_length
        if cap is not None:
            length = min(length, cap)
        return self._with(_generate_cached(self.provenance, length))

    def _with(self, letters):
        return WordPrefix(self.alphabet, letters, self.provenance, self.name)

    def named(self, name: str) -> "WordPrefix":
        return WordPrefix(self.alphabet, self.letters, self.provenance, name)


def literal(w, alphabet_size: int | None = None, name: str | None = None) -> WordPrefix:
    """Wrap a finite word as a (non-extendable) WordPrefix."""
    w = as_word(w)
    r = alphabet_size if alphabet_size is not None else (max(w) + 1 if w else 1)
    alpha = Alphabet(r)
    alpha.check(w)
    arr = np.array(w, dtype=np.int64)
    arr.setflags(write=False)
    return WordPrefix(alpha, arr, Literal(w, r), name)


def iterate_fixed_point(m: Morphism, seed: int, min_len: int, name: str | None = None) -> WordPrefix:
    """Prefix of length ``min_len`` of the fixed point of ``m`` starting with ``seed``."""
    if not m.is_endomorphism():
        raise AlphabetMismatch("fixed points need an endomorphism")
    if not m.is_prolongable(seed):
        raise NotProlongable(f"{m} is not prolongable on {seed}")
    prov = FixedPoint(m, seed)
    return WordPrefix(m.target, _generate_cached(prov, min_len), prov, name)


def apply_coding(c: Morphism, w: WordPrefix, name: str | None = None) -> WordPrefix:
    if not c.is_coding():
        raise ValueError("not a letter-to-letter map")
    if c.source.size < w.alphabet.size:
        raise AlphabetMismatch("coding does not cover the word's alphabet")
    prov = Coded(c, w.provenance)
    table = np.array([img[0] for img in c.images], dtype=np.int64)
    arr = table[w.letters]
    arr.setflags(write=False)
    return WordPrefix(c.target, arr, prov, name)


def block_coding(w, ell: int, alphabet_size: int | None = None):
    """Encode the length-``ell`` windows of ``w`` as base-``r`` integers.

    Letter ``j`` of the output is ``sum(w[j+i] * r**(ell-1-i))``.  For a
    WordPrefix the result is a WordPrefix over ``r**ell`` letters that can
    still be extended; for a plain word a tuple is returned.
    """
    if ell < 1:
        raise ValueError("block length must be positive")
    if isinstance(w, WordPrefix):
        if len(w) < ell:
            raise TooShort(f"need at least {ell} letters")
        r = w.alphabet.size
        arr = _block_array(w.letters, ell, r)
        arr.setflags(write=False)
        return WordPrefix(Alphabet(r ** ell), arr, Blocked(ell, w.provenance))
    w = as_word(w)
    if len(w) < ell:
        raise TooShort(f"need at least {ell} letters")
    r = alphabet_size if alphabet_size is not None else max(w) + 1
    return tuple(int(a) for a in _block_array(np.array(w, dtype=np.int64), ell, r).tolist())


def block_morphism(m: Morphism, seed: int, ell: int) -> tuple[Morphism, int]:
    """Morphism whose fixed point is the ``ell``-block coding of ``m``'s fixed point.

    A block ``a0..a(ell-1)`` is sent to the first ``|m(a0)|`` blocks of
    ``m(a0..a(ell-1))``.  Returns the morphism and its seed letter.
    """
    if not m.is_prolongable(seed):
        raise NotProlongable(f"{m} is not prolongable on {seed}")
    r = m.source.size
    images = []
    for code in range(r ** ell):
        digits = []
        c = code
        for _ in range(ell):
            digits.append(c % r)
            c //= r
        blk = m(digits[::-1])
        coded = block_coding(blk, ell, r)
        images.append(coded[:len(m.images[digits[-1]])])
    first = iterate_fixed_point(m, seed, ell).word
    new_seed = block_coding(first, ell, r)[0]
    return Morphism(tuple(images), Alphabet(r ** ell), Alphabet(r ** ell)), new_seed


# -- Parikh vectors and occurrences --------------------------------------------

@dataclass(frozen=True)
class ParikhVector:
    counts: tuple

    def __getitem__(self, a):
        return self.counts[a]

    def __len__(self):
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def restricted(self, letters: Iterable[int]) -> int:
        return sum(self.counts[a] for a in letters)


def parikh(w, alphabet_size: int | None = None) -> ParikhVector:
    if isinstance(w, WordPrefix):
        r = w.alphabet.size
        return ParikhVector(tuple(int(c) for c in np.bincount(w.letters, minlength=r)))
    w = as_word(w)
    r = alphabet_size if alphabet_size is not None else (max(w) + 1 if w else 0)
    counts = [0] * r
    for a in w:
        counts[a] += 1
    return ParikhVector(tuple(counts))


def count_occurrences(u, v) -> int:
    """Number of (possibly overlapping) occurrences of ``v`` in ``u``."""
    u, v = as_word(u), as_word(v)
    n = len(v)
    return sum(1 for i in range(len(u) - n + 1) if u[i:i + n] == v)


def reversal(w) -> Word:
    return as_word(w)[::-1]


def l_abelian_equivalent(x, y, ell: int) -> bool:
    """Compare occurrence counts of every word of length at most ``ell``."""
    x, y = as_word(x), as_word(y)
    if len(x) != len(y):
        return False
    for m in range(1, ell + 1):
        cx = Counter(x[i:i + m] for i in range(len(x) - m + 1))
        cy = Counter(y[i:i + m] for i in range(len(y) - m + 1))
        if cx != cy:
            return False
    return True


def l_abelian_key(x, ell: int, alphabet_size: int | None = None):
    """Canonical key: (prefix of length ell-1, Parikh vector of the ell-block coding).

    Two words of length at least ``ell - 1`` are ell-abelian equivalent iff their
    keys agree, provided both keys use the same ``alphabet_size``.
    """
    x = as_word(x)
    if len(x) < ell - 1:
        raise TooShort(f"key needs at least {ell - 1} letters")
    r = alphabet_size if alphabet_size is not None else (max(x) + 1 if x else 1)
    if len(x) == ell - 1:
        return x, ParikhVector((0,) * r ** ell)
    return x[:ell - 1], parikh(block_coding(x, ell, r), r ** ell)


# -- factors -----------------------------------------------------------------

@dataclass(frozen=True)
class FactorSet:
    length: int
    factors: tuple
    stabilized: bool
    prefix_length_used: int

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __contains__(self, w):
        return as_word(w) in set(self.factors)


def _itemsize(r: int) -> int:
    return 1 if r <= 256 else (2 if r <= 65536 else 8)


def _as_bytes(letters: np.ndarray, r: int) -> bytes:
    return letters.astype({1: np.uint8, 2: np.uint16, 8: np.int64}[_itemsize(r)]).tobytes()


@dataclass
class Stabilized:
    """Outcome of the doubling search: a prefix whose windows cover Fac_n."""

    prefix: WordPrefix
    n: int
    length: int           # windows start at 0 .. length - n
    stabilized: bool
    windows: set          # window contents as raw bytes

    @property
    def starts(self) -> int:
        return max(self.length - self.n + 1, 0)


def stabilize(w: WordPrefix, n: int, initial_len: int | None = None,
              max_prefix: int | None = None) -> Stabilized:
    """Grow a prefix by doubling until its length-``n`` windows stop changing.

    The window set of the prefix of length ``L`` must survive two successive
    doublings (``L``, ``2L`` and ``4L`` agree) before it is accepted.  Finite
    (literal) words are scanned completely and reported as not stabilized.
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    r = w.alphabet.size
    sz = _itemsize(r)
    if w.is_finite:
        full = w.extended(w.provenance.max_length)
        L = len(full)
        data = _as_bytes(full.letters, r)
        wins = {data[s * sz:(s + n) * sz] for s in range(L - n + 1)} if n <= L else set()
        return Stabilized(full, n, L, False, wins)
    if n == 0:
        return Stabilized(w, 0, 0, True, {b""})
    cap = max_prefix if max_prefix is not None else max_prefix_cap()
    L = initial_len if initial_len is not None else max(64, 4 * n)
    L = max(L, n)
    if 4 * L > cap:
        raise NotStabilized(n, cap)
    full = w.extended(4 * L)
    data = _as_bytes(full.letters, r)
    wins = {data[s * sz:(s + n) * sz] for s in range(L - n + 1)}
    chain_start, agreed = L, 0
    while True:
        before = len(wins)
        wins.update(data[s * sz:(s + n) * sz] for s in range(L - n + 1, 2 * L - n + 1))
        if len(wins) == before:
            agreed += 1
            if agreed == 2:
                return Stabilized(full.extended(chain_start), n, chain_start, True, wins)
        else:
            chain_start, agreed = 2 * L, 0
        L *= 2
        if 2 * L > cap:
            raise NotStabilized(n, cap)
        if len(full) < 2 * L:
            full = w.extended(2 * L)
            data = _as_bytes(full.letters, r)


def enumerate_factors(w: WordPrefix, n: int, initial_len: int | None = None,
                      max_prefix: int | None = None) -> FactorSet:
    """Sorted distinct factors of length ``n``."""
    st = stabilize(w, n, initial_len, max_prefix)
    dtype = {1: np.uint8, 2: np.uint16, 8: np.int64}[_itemsize(w.alphabet.size)]
    facs = sorted(tuple(int(a) for a in np.frombuffer(b, dtype=dtype)) for b in st.windows)
    return FactorSet(n, tuple(facs), st.stabilized, st.length)


# -- certified factor sets of uniform fixed points ----------------------------------

def two_letter_factors(m: Morphism, seed: int) -> frozenset:
    """Exact set of length-2 factors of a fixed point, by closure."""
    w = iterate_fixed_point(m, seed, 2).word
    todo = [w[:2]]
    seen = set(todo)
    while todo:
        img = m(todo.pop())
        for i in range(len(img) - 1):
            f = img[i:i + 2]
            if f not in seen:
                seen.add(f)
                todo.append(f)
    return frozenset(seen)


def morphic_factors(m: Morphism, seed: int, n: int) -> frozenset:
    """Exact factor set of length ``n`` of the fixed point of a uniform morphism.

    Every long factor sits inside the image of a shorter factor, which gives a
    recursion that never looks at a finite prefix.
    """
    k = m.uniform_length()
    if k is None or k < 2:
        raise ValueError("certified factors need a uniform morphism of length >= 2")
    return _morphic_factors(m, seed, n)


@lru_cache(maxsize=None)
def _morphic_factors(m: Morphism, seed: int, n: int) -> frozenset:
    if n == 0:
        return frozenset({()})
    two = two_letter_factors(m, seed)
    if n <= 2:
        return frozenset(f[:n] for f in two)
    k = m.uniform_length()
    out = set()
    for o in range(k):
        mm = -(-(o + n) // k)
        for v in _morphic_factors(m, seed, mm):
            out.add(m(v)[o:o + n])
    return frozenset(out)


def clear_caches() -> None:
    _generate_cached.cache_clear()
    _morphic_factors.cache_clear()
