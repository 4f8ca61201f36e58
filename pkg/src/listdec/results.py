"""Result containers shared by the decoders."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterator

from .errors import BudgetExceeded, LengthMismatch
from .field import FieldCtx, Poly


@dataclass
class AffineSolutionSet:
    """Affine coordinate space M x + z containing all candidate messages.

    Rows of M are indexed by message coefficient; dim is the number of free
    coordinates.  An inconsistent system yields the empty set (empty=True).
    """

    ctx: FieldCtx
    k: int
    dim: int
    M: list  # k rows, each a list of dim entries
    z: list  # k entries
    free_indices: list
    empty: bool = False
    notes: dict = dc_field(default_factory=dict)

    def point(self, x) -> Poly:
        """Message for one choice of free coordinates."""
        if self.empty:
            raise LengthMismatch("empty solution set has no points")
        if len(x) != self.dim:
            raise LengthMismatch(f"need {self.dim} free coordinates")
        ctx = self.ctx
        coeffs = []
        for r in range(self.k):
            acc = self.z[r]
            row = self.M[r]
            for c, xv in zip(row, x):
                if c and xv:
                    acc = ctx.add(acc, ctx.mul(c, xv))
            coeffs.append(acc)
        return Poly(ctx, coeffs)

    def size(self) -> int:
        return 0 if self.empty else self.ctx.q**self.dim

    def enumerate(self, budget: int | None = None) -> Iterator[Poly]:
        """All points, free coordinates in lexicographic order."""
        if self.empty:
            return
        if budget is not None and self.size() > budget:
            raise BudgetExceeded(
                f"solution set has {self.size()} points, budget {budget}"
            )
        for x in itertools.product(range(self.ctx.q), repeat=self.dim):
            yield self.point(x)

    @staticmethod
    def empty_set(ctx: FieldCtx, k: int, notes=None) -> "AffineSolutionSet":
        return AffineSolutionSet(
            ctx, k, 0, [[] for _ in range(k)], [0] * k, [], True, notes or {}
        )


@dataclass
class DecodeResult:
    """Decoded candidate list plus run diagnostics.

    candidates holds (message, column agreement) pairs sorted by coefficient
    vector; diagnostics is a flat dict of counters and derived parameters.
    """

    candidates: list
    diagnostics: dict

    @property
    def messages(self) -> list[Poly]:
        return [f for f, _ in self.candidates]

    def __contains__(self, f: Poly) -> bool:
        return any(g == f for g, _ in self.candidates)

    def __len__(self) -> int:
        return len(self.candidates)
