"""Seeded generators for random constrained games, plus built-in fixture games."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .game_core import (
    MAX_PLAYERS,
    ZERO,
    CoalitionStructure,
    DiversityGame,
    Game,
    add,
    are_symmetric,
    default_names,
    diverse_coalitions,
    is_diverse,
    make_diversity_game,
    members,
    scale,
    unanimity,
)
from .transform import DividendTable, synthesize


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for a seeded random game: shape, dividend density and magnitude.

    Dividends are drawn uniformly from {-value_range..-1, 1..value_range};
    small integers keep the synthesized rationals compact and never vanish.
    """

    n: int
    block_sizes: tuple[int, ...]
    quotas: tuple[int, ...]
    density: float = 0.4
    value_range: int = 5
    diverse_only: bool = False
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_PLAYERS:
            raise ValueError(f"player count must be in 1..{MAX_PLAYERS}, got {self.n}")
        if not self.block_sizes or any(s < 1 for s in self.block_sizes):
            raise ValueError("block sizes must be positive")
        if sum(self.block_sizes) != self.n:
            raise ValueError("block sizes must sum to the player count")
        if len(self.quotas) != len(self.block_sizes):
            raise ValueError("one quota per block required")
        if any(not 1 <= q <= s for q, s in zip(self.quotas, self.block_sizes)):
            raise ValueError("each quota must be in 1..block size")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must be in [0, 1]")
        if self.value_range < 1:
            raise ValueError("value range must be >= 1")

    def structure(self) -> CoalitionStructure:
        blocks = []
        start = 0
        for size in self.block_sizes:
            blocks.append(((1 << size) - 1) << start)
            start += size
        return CoalitionStructure(self.n, tuple(blocks))


def draw_nonzero(rng: random.Random, value_range: int) -> int:
    """Uniform over {-value_range..-1, 1..value_range}."""
    return rng.choice((-1, 1)) * rng.randint(1, value_range)


def _sample_dividend_game(
    names: Sequence[str],
    candidates: Iterable[int],
    density: float,
    value_range: int,
    rng: random.Random,
) -> Game:
    delta = [ZERO] * (1 << len(names))
    for S in candidates:
        if rng.random() < density:
            delta[S] = Fraction(draw_nonzero(rng, value_range))
    return synthesize(DividendTable(tuple(names), tuple(delta)))


def random_game(spec: GeneratorSpec) -> DiversityGame:
    """Deterministic in `spec.seed`: sample integer dividends on (optionally
    only diverse) coalitions and synthesize the worth table from them.

    With `diverse_only`, every nonzero worth sits on a superset of a diverse
    coalition, and diverse coalitions are closed under supersets, so the
    result is a diverse game.
    """
    rng = random.Random(spec.seed)
    structure = spec.structure()
    names = default_names(spec.n)
    if spec.diverse_only:
        candidates: Iterable[int] = diverse_coalitions(structure, spec.quotas)
    else:
        candidates = range(1, 1 << spec.n)
    game = _sample_dividend_game(names, candidates, spec.density, spec.value_range, rng)
    return DiversityGame(game, structure, spec.quotas)


def random_game_like(
    g: DiversityGame,
    rng: random.Random,
    density: float = 0.4,
    value_range: int = 5,
) -> Game:
    """A partner game over `g`'s players, sampled like `random_game`."""
    return _sample_dividend_game(g.names, range(1, 1 << g.n), density, value_range, rng)


def perturb_nondiverse(g: DiversityGame, seed: int = 0) -> Game:
    """A game equal to `g` on every diverse coalition and different somewhere else.

    When every nonempty coalition is diverse there is nothing to perturb and
    the worth table is returned unchanged.
    """
    rng = random.Random(seed)
    nondiverse = [
        S for S in range(1, 1 << g.n) if not is_diverse(S, g.structure, g.quotas)
    ]
    if not nondiverse:
        return g.game
    worth = list(g.game.worth)
    touched = False
    for S in nondiverse:
        if rng.random() < 0.5:
            worth[S] = worth[S] + draw_nonzero(rng, 5)
            touched = True
    if not touched:
        S = rng.choice(nondiverse)
        worth[S] = worth[S] + draw_nonzero(rng, 5)
    return Game(g.names, tuple(worth))


@dataclass(frozen=True)
class Counterexample1:
    """Two blocks of two; the base game pairs each member of the first block
    with a different member of the second.

    `w` gives both pairings the same coefficient, which still leaves the first
    block's members asymmetric.  `w_prime` routes both coefficients through a
    single second-block player, making the first block's members symmetric,
    but subtracting it from the base game does not shrink the support.
    """

    game: DiversityGame
    w: Game
    w_prime: Game


def fixture_counterexample1() -> Counterexample1:
    names = ("i", "j", "k", "l")
    mi, mj, mk, ml = 1, 2, 4, 8
    u_ik = unanimity(4, mi | mk, names)
    u_jl = unanimity(4, mj | ml, names)
    u_il = unanimity(4, mi | ml, names)
    base = add(u_ik, scale(2, u_jl))
    game = make_diversity_game(base, (mi | mj, mk | ml), (1, 1))
    w = add(u_ik, u_jl)
    w_prime = add(scale(2, u_jl), scale(2, u_il))
    return Counterexample1(game, w, w_prime)


@dataclass(frozen=True)
class Counterexample2:
    """One block of three plus a singleton block; a lone-player dividend and
    one straddling everyone else leave exactly one symmetric pair inside the
    big block."""

    game: DiversityGame

    def symmetric_pairs(self) -> dict[tuple[str, str], bool]:
        """Exact symmetry verdict for every same-block player pair."""
        g = self.game
        report = {}
        for block in g.structure.blocks:
            for a, b in itertools.combinations(members(block), 2):
                report[(g.names[a], g.names[b])] = are_symmetric(g.game, a, b)
        return report


def fixture_counterexample2() -> Counterexample2:
    names = ("i", "j", "k", "l")
    base = add(unanimity(4, 1, names), unanimity(4, 2 | 4 | 8, names))
    return Counterexample2(make_diversity_game(base, (1 | 2 | 4, 8), (1, 1)))


def fixture_veto_demo() -> DiversityGame:
    """Three players, blocks {p1,p2} and {p3}, quota one each; the game is the
    unanimity game on {p3} alone, so the quotas force a redistribution."""
    return make_diversity_game(unanimity(3, 4), (1 | 2, 4), (1, 1))


FIXTURE_NAMES = ("counterexample1", "counterexample2", "veto_demo")


def fixture_game(name: str) -> DiversityGame:
    if name == "counterexample1":
        return fixture_counterexample1().game
    if name == "counterexample2":
        return fixture_counterexample2().game
    if name == "veto_demo":
        return fixture_veto_demo()
    raise ValueError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
