"""k-kernels: guessing linear relations, linear representations, finite kernels.

Guessing never proves regularity.  A returned :class:`RelationSet` records the
horizon on which its relations were checked against the oracle, and nothing
beyond that horizon is claimed.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

from .errors import NotClosed, StateCapExceeded, VerificationFailed
from .linalg import IncrementalEchelon


@dataclass(frozen=True)
class SequenceOracle:
    evaluator: Callable[[int], int]
    label: str = "s"

    def __call__(self, n: int):
        return self.evaluator(n)

    def values(self, n_hi: int, n_lo: int = 0) -> list:
        return [self.evaluator(n) for n in range(n_lo, n_hi + 1)]


def memoized(s: SequenceOracle) -> SequenceOracle:
    cache: dict[int, int] = {}

    def ev(n):
        v = cache.get(n)
        if v is None:
            v = cache[n] = s.evaluator(n)
        return v
    return SequenceOracle(ev, s.label)


@dataclass(frozen=True, order=True)
class KernelLabel:
    """The slice ``n -> s(k**i * n + j)``."""

    i: int
    j: int

    def __post_init__(self):
        if self.i < 0 or self.j < 0:
            raise ValueError("kernel labels are nonnegative")

    def check(self, k: int) -> None:
        if self.j >= k ** self.i:
            raise ValueError(f"residue {self.j} out of range for k^{self.i}")

    def child(self, d: int, k: int) -> "KernelLabel":
        return KernelLabel(self.i + 1, self.j + d * k ** self.i)

    def index(self, n: int, k: int) -> int:
        return k ** self.i * n + self.j

    def __str__(self):
        return f"({self.i},{self.j})"


def kernel_slice(s: SequenceOracle, k: int, label: KernelLabel) -> SequenceOracle:
    label.check(k)
    step, off = k ** label.i, label.j
    ev = s.evaluator
    return SequenceOracle(lambda n: ev(step * n + off), f"{s.label}[{k}^{label.i}n+{label.j}]")


def shift(s: SequenceOracle, m: int = 1) -> SequenceOracle:
    ev = s.evaluator
    return SequenceOracle(lambda n: ev(n + m), f"{s.label}(n+{m})")


def _exact(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def combine(seqs: Sequence[SequenceOracle], coeffs: Sequence, predicates: Sequence | None = None,
            label: str = "combination") -> SequenceOracle:
    """Pointwise ``sum(coeff_i * f_i(n) * P_i(n))``; predicates default to 1."""
    if predicates is None:
        predicates = [None] * len(seqs)
    if not len(seqs) == len(coeffs) == len(predicates):
        raise ValueError("sequences, coefficients and predicates must align")
    coeffs = [Fraction(c) for c in coeffs]
    parts = list(zip(seqs, coeffs, predicates))

    def ev(n):
        tot = Fraction(0)
        for f, c, p in parts:
            if p is None or p(n):
                tot += c * f(n)
        return _exact(tot)
    return SequenceOracle(ev, label)


def _frac_pair(x: Fraction) -> list:
    return [x.numerator, x.denominator]


@dataclass(frozen=True)
class RelationSet:
    k: int
    basis: tuple
    relations: tuple          # relations[b][d]: coefficients of child (b, d) over the basis
    truncation: int
    verified_horizon: int
    initial_values: tuple     # basis slices evaluated at n = 0
    label: str = "s"

    @property
    def rank(self) -> int:
        return len(self.basis)

    def non_integer(self) -> list:
        """(basis index, digit) pairs whose coefficients are not all integers."""
        return [(b, d) for b, row in enumerate(self.relations) for d, coeffs in enumerate(row)
                if any(c.denominator != 1 for c in coeffs)]

    def integral_form(self, b: int, d: int) -> tuple[int, tuple]:
        """``(D, ints)`` with ``D * child = sum(ints[t] * basis[t])``, denominators cleared."""
        coeffs = self.relations[b][d]
        D = lcm(1, *(c.denominator for c in coeffs))
        return D, tuple(int(c * D) for c in coeffs)

    def describe(self) -> list[str]:
        lines = []
        for b, lab in enumerate(self.basis):
            for d in range(self.k):
                child = lab.child(d, self.k)
                D, ints = self.integral_form(b, d)
                terms = [f"{c:+d}*s[{self.basis[t]}]" for t, c in enumerate(ints) if c]
                lhs = f"{D}*s[{child}]" if D != 1 else f"s[{child}]"
                lines.append(f"{lhs} = {' '.join(terms) if terms else '0'}")
        return lines

    def to_dict(self) -> dict:
        return {
            "type": "RelationSet",
            "label": self.label,
            "k": self.k,
            "rank": self.rank,
            "basis": [[b.i, b.j] for b in self.basis],
            "relations": [[[_frac_pair(c) for c in coeffs] for coeffs in row] for row in self.relations],
            "truncation": self.truncation,
            "verified_horizon": self.verified_horizon,
            "initial_values": [_frac_pair(Fraction(v)) for v in self.initial_values],
            "non_integer": [list(p) for p in self.non_integer()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "RelationSet":
        d = json.loads(text)
        rel = tuple(tuple(tuple(Fraction(a, b) for a, b in coeffs) for coeffs in row)
                    for row in d["relations"])
        return cls(d["k"], tuple(KernelLabel(i, j) for i, j in d["basis"]), rel,
                   d["truncation"], d["verified_horizon"],
                   tuple(_exact(Fraction(a, b)) for a, b in d["initial_values"]), d.get("label", "s"))


def guess_relations(s: SequenceOracle, k: int = 2, T: int = 512, N: int = 1 << 14,
                    rank_cap: int = 64) -> RelationSet:
    """Find a basis of the span of the k-kernel from length-T truncations, then verify up to N.

    Labels are visited in (i, j) order; a label whose truncation is
    independent of the current basis joins it and queues its k children.
    """
    if k < 2 or T < 8 or N < k * T:
        raise ValueError("need k >= 2, T >= 8 and N >= k*T")
    cache: dict[int, int] = {}

    def f(n):
        v = cache.get(n)
        if v is None:
            v = cache[n] = s.evaluator(n)
        return v

    ech = IncrementalEchelon(T, rank_cap)
    basis: list[KernelLabel] = []
    found: dict[KernelLabel, list] = {}
    heap = [KernelLabel(0, 0)]
    seen = {KernelLabel(0, 0)}
    while heap:
        lab = heapq.heappop(heap)
        step, off = k ** lab.i, lab.j
        vec = [f(step * n + off) for n in range(T)]
        if any(isinstance(v, Fraction) for v in vec):
            den = lcm(*(Fraction(v).denominator for v in vec))
            vec = [int(Fraction(v) * den) for v in vec]
        try:
            coeffs = ech.add(vec)
        except OverflowError:
            raise NotClosed(rank_cap) from None
        if coeffs is not None:
            found[lab] = coeffs
            continue
        found[lab] = [Fraction(0)] * len(basis) + [Fraction(1)]
        basis.append(lab)
        for d in range(k):
            ch = lab.child(d, k)
            if ch not in seen:
                seen.add(ch)
                heapq.heappush(heap, ch)

    r = len(basis)
    relations = []
    for lab in basis:
        row = []
        for d in range(k):
            c = found[lab.child(d, k)]
            row.append(tuple(c) + (Fraction(0),) * (r - len(c)))
        relations.append(tuple(row))

    # Re-check every relation on the full horizon.  An empty basis claims s = 0.
    if not basis:
        for n in range(N + 1):
            if f(n) != 0:
                raise VerificationFailed(n, str(KernelLabel(0, 0)), 0, f(n))
    for b, lab in enumerate(basis):
        for d in range(k):
            ch = lab.child(d, k)
            coeffs = relations[b][d]
            terms = [(c, basis[t]) for t, c in enumerate(coeffs) if c]
            n = 0
            while ch.index(n, k) <= N:
                want = f(ch.index(n, k))
                got = sum((c * f(bl.index(n, k)) for c, bl in terms), Fraction(0))
                if got != want:
                    raise VerificationFailed(n, str(ch), want, _exact(got))
                n += 1
    init = tuple(f(lab.j) for lab in basis)
    return RelationSet(k, tuple(basis), tuple(relations), T, N, init, s.label)


@dataclass(frozen=True)
class LinearRepresentation:
    """``s(n) = row * M[d0] * M[d1] * ... * column`` with ``d0`` the least significant digit."""

    k: int
    row: tuple
    matrices: tuple
    column: tuple
    verified_horizon: int
    digit_order: str = "lsd-first"

    @property
    def dimension(self) -> int:
        return len(self.column)

    def to_dict(self) -> dict:
        return {
            "type": "LinearRepresentation",
            "k": self.k,
            "dimension": self.dimension,
            "digit_order": self.digit_order,
            "row": [_frac_pair(Fraction(x)) for x in self.row],
            "matrices": [[[_frac_pair(Fraction(x)) for x in r] for r in m] for m in self.matrices],
            "column": [_frac_pair(Fraction(x)) for x in self.column],
            "verified_horizon": self.verified_horizon,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "LinearRepresentation":
        d = json.loads(text)

        def fr(p):
            return Fraction(p[0], p[1])
        return cls(d["k"], tuple(fr(p) for p in d["row"]),
                   tuple(tuple(tuple(fr(p) for p in r) for r in m) for m in d["matrices"]),
                   tuple(fr(p) for p in d["column"]), d["verified_horizon"],
                   d.get("digit_order", "lsd-first"))


def to_linear_representation(rs: RelationSet) -> LinearRepresentation:
    r = rs.rank
    row = tuple(Fraction(int(t == 0)) for t in range(r))
    mats = tuple(tuple(tuple(rs.relations[b][d]) for b in range(r)) for d in range(rs.k))
    col = tuple(Fraction(v) for v in rs.initial_values)
    return LinearRepresentation(rs.k, row, mats, col, rs.verified_horizon)


def _int_matrix(m) -> tuple[list, int]:
    D = lcm(1, *(x.denominator for r in m for x in r))
    return [[int(x * D) for x in r] for r in m], D


def eval_linear_representation(rep: LinearRepresentation, n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = rep.dimension
    if d == 0:
        return Fraction(0)
    digits = []
    while n:
        n, q = divmod(n, rep.k)
        digits.append(q)
    mats = [_int_matrix(m) for m in rep.matrices]
    cden = lcm(1, *(Fraction(x).denominator for x in rep.column))
    v = [int(Fraction(x) * cden) for x in rep.column]
    den = cden
    # Multiply from the right: the most significant digit acts first on the column.
    for q in reversed(digits):
        M, D = mats[q]
        v = [sum(a * b for a, b in zip(r, v)) for r in M]
        den *= D
    num = sum(Fraction(x) * y for x, y in zip(rep.row, v))
    return Fraction(num) / den


@dataclass(frozen=True)
class AutomaticKernel:
    k: int
    states: tuple             # representative label of each state
    transitions: tuple        # transitions[q][d] -> state
    outputs: tuple            # value of state q's slice at n = 0
    truncation: int
    initial: int = 0

    @property
    def size(self) -> int:
        return len(self.states)

    def state_of(self, n: int, length: int | None = None) -> int:
        """State after reading the base-k digits of n, least significant first.

        ``length`` pads with leading zeros so that ``n`` is read as a residue
        modulo ``k**length``.
        """
        q = self.initial
        steps = 0
        while n or (length is not None and steps < length):
            if length is not None and steps >= length:
                break
            n, d = divmod(n, self.k)
            q = self.transitions[q][d]
            steps += 1
        return q

    def __call__(self, n: int):
        return self.outputs[self.state_of(n)]


def automatic_kernel(s: SequenceOracle, k: int = 2, T: int = 256, state_cap: int = 64,
                     horizon: int | None = None) -> AutomaticKernel:
    """Explore the k-kernel, merging slices whose length-T truncations coincide.

    With ``horizon`` set, every transition is re-checked on all indices up to
    the horizon (a guessed merge must keep holding there).
    """
    cache: dict[int, int] = {}

    def f(n):
        v = cache.get(n)
        if v is None:
            v = cache[n] = s.evaluator(n)
        return v

    def trunc(lab):
        step = k ** lab.i
        return tuple(f(step * n + lab.j) for n in range(T))

    root = KernelLabel(0, 0)
    index = {trunc(root): 0}
    states = [root]
    trans: list[list[int]] = []
    q = 0
    while q < len(states):
        lab = states[q]
        row = []
        for d in range(k):
            ch = lab.child(d, k)
            key = trunc(ch)
            t = index.get(key)
            if t is None:
                if len(states) >= state_cap:
                    raise StateCapExceeded(state_cap)
                t = index[key] = len(states)
                states.append(ch)
            row.append(t)
        trans.append(row)
        q += 1
    if horizon is not None:
        for q, lab in enumerate(states):
            for d in range(k):
                ch, rep = lab.child(d, k), states[trans[q][d]]
                n = 0
                while ch.index(n, k) <= horizon:
                    if f(ch.index(n, k)) != f(rep.index(n, k)):
                        raise VerificationFailed(n, str(ch), f(rep.index(n, k)), f(ch.index(n, k)))
                    n += 1
    outputs = tuple(f(lab.j) for lab in states)
    return AutomaticKernel(k, tuple(states), tuple(tuple(r) for r in trans), outputs, T)
