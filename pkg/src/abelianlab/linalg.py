"""Incremental exact rank test for integer vectors."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd


class IncrementalEchelon:
    """Fraction-free row echelon form that grows one vector at a time.

    Each stored row carries, after the data columns, the combination of the
    inserted vectors that produced it.  When a new vector reduces to zero,
    that trailing part gives its coefficients over the vectors inserted so
    far.  Rows are divided by their content after every step so entries stay
    small.
    """

    def __init__(self, width: int, cap: int = 64):
        self.width = width
        self.cap = cap
        self.rows: list[tuple[int, list[int]]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, vector) -> list[Fraction] | None:
        """Insert ``vector``; return its coefficients if it is dependent.

        On independence the vector joins the basis and None is returned.
        Raises OverflowError once the basis would exceed ``cap``.
        """
        if len(vector) != self.width:
            raise ValueError("vector has the wrong length")
        n = self.rank
        W = self.width
        aug = [int(x) for x in vector] + [0] * (n + 1)
        aug[W + n] = 1
        for piv, row in self.rows:
            a = aug[piv]
            if a:
                b = row[piv]
                row = row + [0] * (len(aug) - len(row))
                aug = [b * x - a * y for x, y in zip(aug, row)]
                g = reduce(gcd, aug)
                if g > 1:
                    aug = [x // g for x in aug]
        piv = next((i for i in range(W) if aug[i]), None)
        if piv is None:
            lead = aug[W + n]
            return [Fraction(-aug[W + i], lead) for i in range(n)]
        if n >= self.cap:
            raise OverflowError("rank cap exceeded")
        self.rows.append((piv, aug))
        return None
