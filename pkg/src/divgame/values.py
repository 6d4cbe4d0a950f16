"""Allocation rules: Shapley and Owen by dividend splitting, factorial
permutation oracles for cross-validation, the diversity-restricted Owen rule,
and simple division baselines used as rival rules in axiom falsification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .game_core import (
    ZERO,
    CoalitionStructure,
    DiversityGame,
    Game,
    full_mask,
    members,
    restrict_to_diverse,
)
from .transform import dividends

Allocation = tuple[Fraction, ...]

# Factorial enumeration beyond this is pointless; the split formulas scale further.
ORACLE_MAX_PLAYERS = 9


@dataclass(frozen=True)
class ValueFunctional:
    """A named allocation rule over diversity-constrained games."""

    name: str
    evaluator: Callable[[DiversityGame], Allocation]

    def __call__(self, g: DiversityGame) -> Allocation:
        return self.evaluator(g)


def shapley(v: Game) -> Allocation:
    """Dividend split: every coalition's dividend is shared equally by its members."""
    pay = [ZERO] * v.n
    dt = dividends(v)
    for T in range(1, 1 << v.n):
        d = dt.delta[T]
        if d == 0:
            continue
        share = d / T.bit_count()
        for b in members(T):
            pay[b] += share
    return tuple(pay)


def owen(v: Game, structure: CoalitionStructure) -> Allocation:
    """Two-level dividend split.

    Each dividend is shared equally across the blocks its coalition meets,
    then equally within each block's slice.  Empty blocks are never met and
    receive nothing.
    """
    if structure.n != v.n:
        raise ValueError("structure and game disagree on the player count")
    pay = [ZERO] * v.n
    dt = dividends(v)
    for T in range(1, 1 << v.n):
        d = dt.delta[T]
        if d == 0:
            continue
        slices = [block & T for block in structure.blocks if block & T]
        per_block = d / len(slices)
        for piece in slices:
            share = per_block / piece.bit_count()
            for b in members(piece):
                pay[b] += share
    return tuple(pay)


def diversity_owen(g: DiversityGame) -> Allocation:
    """Owen split of the diversity-restricted game."""
    return owen(restrict_to_diverse(g), g.structure)


def _fast_table(v: Game) -> tuple[Sequence, bool]:
    # Integer-valued tables run the permutation walks on plain ints, which is
    # considerably faster than Fraction arithmetic.
    if all(w.denominator == 1 for w in v.worth):
        return [w.numerator for w in v.worth], True
    return list(v.worth), False


def _walk_order(order, worth, totals) -> None:
    mask = 0
    prev = worth[0]
    for p in order:
        mask |= 1 << p
        cur = worth[mask]
        totals[p] += cur - prev
        prev = cur


def _average(totals, count: int, integral: bool) -> Allocation:
    if integral:
        return tuple(Fraction(t, count) for t in totals)
    return tuple(t / count for t in totals)


def shapley_permutation_oracle(v: Game) -> Allocation:
    """Average marginal contribution over every player order (n <= 9).

    Independent of the dividend-split path; used to cross-validate `shapley`.
    """
    n = v.n
    if n > ORACLE_MAX_PLAYERS:
        raise ValueError(f"permutation oracle is capped at {ORACLE_MAX_PLAYERS} players")
    worth, integral = _fast_table(v)
    totals = [0] * n if integral else [ZERO] * n
    count = 0
    for order in itertools.permutations(range(n)):
        _walk_order(order, worth, totals)
        count += 1
    return _average(totals, count, integral)


def owen_permutation_oracle(v: Game, structure: CoalitionStructure) -> Allocation:
    """Average marginal contribution over orders that keep blocks contiguous (n <= 9).

    Uniform over block orders crossed with within-block orders; independent of
    the dividend-split path and used to cross-validate `owen`.
    """
    if structure.n != v.n:
        raise ValueError("structure and game disagree on the player count")
    n = v.n
    if n > ORACLE_MAX_PLAYERS:
        raise ValueError(f"permutation oracle is capped at {ORACLE_MAX_PLAYERS} players")
    blocks = [block for block in structure.blocks if block]
    per_block = [list(itertools.permutations(members(block))) for block in blocks]
    worth, integral = _fast_table(v)
    totals = [0] * n if integral else [ZERO] * n
    count = 0
    for block_order in itertools.permutations(range(len(blocks))):
        for pick in itertools.product(*(per_block[k] for k in block_order)):
            order = [p for segment in pick for p in segment]
            _walk_order(order, worth, totals)
            count += 1
    return _average(totals, count, integral)


def equal_division(g: DiversityGame) -> Allocation:
    """The grand coalition's worth split equally over all players."""
    share = g.game.worth[full_mask(g.n)] / g.n
    return (share,) * g.n


def block_equal_division(g: DiversityGame) -> Allocation:
    """The grand coalition's worth split equally over blocks, then inside each block."""
    nonempty = [block for block in g.structure.blocks if block]
    per_block = g.game.worth[full_mask(g.n)] / len(nonempty)
    pay = [ZERO] * g.n
    for block in nonempty:
        share = per_block / block.bit_count()
        for b in members(block):
            pay[b] = share
    return tuple(pay)


def _owen_raw(g: DiversityGame) -> Allocation:
    return owen(g.game, g.structure)


def _shapley_raw(g: DiversityGame) -> Allocation:
    return shapley(g.game)


def _shapley_restricted(g: DiversityGame) -> Allocation:
    return shapley(restrict_to_diverse(g))


_RULES = {
    "dowen": ValueFunctional("dowen", diversity_owen),
    "owen_raw": ValueFunctional("owen_raw", _owen_raw),
    "shapley_raw": ValueFunctional("shapley_raw", _shapley_raw),
    "shapley_restricted": ValueFunctional("shapley_restricted", _shapley_restricted),
    "eqdiv": ValueFunctional("eqdiv", equal_division),
    "blockdiv": ValueFunctional("blockdiv", block_equal_division),
}

VALUE_NAMES = tuple(_RULES)


def value_by_name(name: str) -> ValueFunctional:
    try:
        return _RULES[name]
    except KeyError:
        raise ValueError(
            f"unknown value rule {name!r}; choose from {', '.join(_RULES)}"
        ) from None
