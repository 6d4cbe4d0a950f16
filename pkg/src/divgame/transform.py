"""Subset-lattice transforms: dividend extraction, reconstruction, support analysis."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .game_core import (
    ZERO,
    Coalition,
    DiversityGame,
    Game,
    describe_coalition,
    full_mask,
    restrict_to_diverse,
    singleton,
)


@dataclass(frozen=True, slots=True, repr=False)
class DividendTable:
    """Dense table of dividends: a game's coefficients on the unanimity basis."""

    names: tuple[str, ...]
    delta: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.delta) != 1 << len(self.names):
            raise ValueError(
                f"dividend table must have {1 << len(self.names)} entries, got {len(self.delta)}"
            )
        if self.delta[0] != 0:
            raise ValueError("the empty coalition cannot carry a dividend")

    @property
    def n(self) -> int:
        return len(self.names)

    def nonzero(self) -> dict[Coalition, Fraction]:
        return {S: d for S, d in enumerate(self.delta) if d != 0}

    def __repr__(self) -> str:
        body = "; ".join(
            f"{describe_coalition(S, self.names)}: {d}" for S, d in self.nonzero().items()
        )
        return f"DividendTable(players=[{', '.join(self.names)}], delta={{{body}}})"


def dividends(v: Game) -> DividendTable:
    """Dividend of every coalition, via the in-place subset transform, O(n * 2**n)."""
    n = v.n
    delta = list(v.worth)
    for b in range(n):
        bit = 1 << b
        for S in range(1 << n):
            if S & bit:
                delta[S] = delta[S] - delta[S ^ bit]
    return DividendTable(v.names, tuple(delta))


def synthesize(dt: DividendTable) -> Game:
    """Rebuild the game whose dividends are `dt`; exact inverse of `dividends`."""
    n = dt.n
    worth = list(dt.delta)
    for b in range(n):
        bit = 1 << b
        for S in range(1 << n):
            if S & bit:
                worth[S] = worth[S] + worth[S ^ bit]
    return Game(dt.names, tuple(worth))


@dataclass(frozen=True, slots=True)
class SupportInfo:
    """Where the diversity-restricted game lives on the subset lattice.

    support: coalitions with a nonzero restricted dividend, ascending by mask.
    universal: players common to every support coalition; the full player set
        when the support is empty (everyone is null then anyway).
    block_traces: per block, the distinct nonempty intersections of the block
        with support coalitions, ascending.
    block_universals: per block, its members common to every support coalition.
    """

    support: tuple[Coalition, ...]
    universal: Coalition
    block_traces: tuple[tuple[Coalition, ...], ...]
    block_universals: tuple[Coalition, ...]


def support(g: DiversityGame) -> SupportInfo:
    """Support data of the diversity-restricted game of `g`."""
    dt = dividends(restrict_to_diverse(g))
    n = g.n
    sup = tuple(S for S in range(1, 1 << n) if dt.delta[S] != 0)
    universal = full_mask(n)
    for S in sup:
        universal &= S
    traces = tuple(
        tuple(sorted({S & block for S in sup if S & block}))
        for block in g.structure.blocks
    )
    block_universals = tuple(block & universal for block in g.structure.blocks)
    return SupportInfo(sup, universal, traces, block_universals)


def swap_support_transform(g: DiversityGame, p: int, i: int, j: int) -> Game:
    """Reroute player `i`'s support role in block `p` through player `j`.

    Requires the restricted support to trace exactly two disjoint sets onto
    block `p` which together cover it, with `i` and `j` on opposite sides.
    Coalitions tracing `j`'s side are kept; the others are replayed with `j`
    in place of `i` and subtracted, so the difference from the restricted game
    is symmetric in `i` and `j`.
    """
    structure = g.structure
    if not 0 <= p < structure.m:
        raise ValueError(f"invalid block index {p}")
    block = structure.blocks[p]
    info = support(g)
    traces = info.block_traces[p]
    if len(traces) != 2:
        raise ValueError(
            f"block {p} shows {len(traces)} support trace(s); exactly 2 are required"
        )
    s1, s2 = traces
    if s1 & s2:
        raise ValueError("the two support traces overlap")
    if s1 | s2 != block:
        raise ValueError("the two support traces do not cover the block")
    bi, bj = singleton(i), singleton(j)
    if bi & s2 and bj & s1:
        s1, s2 = s2, s1
    if not (bi & s1 and bj & s2):
        raise ValueError("the two players must lie in opposite support traces")
    dt = dividends(restrict_to_diverse(g))
    acc = [ZERO] * (1 << g.n)
    for T in info.support:
        if T & block == s2:
            acc[T] += dt.delta[T]
        else:
            acc[(T ^ bi) | bj] -= dt.delta[T]
    return synthesize(DividendTable(g.names, tuple(acc)))
