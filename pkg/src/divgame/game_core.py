"""Core model for TU-games with coalition structures and per-block diversity quotas.

Players are indexed 0..n-1 in the order their names are given; a coalition is
an int bitmask over those indices.  All worths are exact rationals
(`fractions.Fraction`), so every comparison made downstream (axiom checks,
value equalities) is an exact equality, never a tolerance test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Coalition = int

# Dense 2**n tables everywhere: the hard cap keeps memory bounded, n <= 16 is
# the practical target.
MAX_PLAYERS = 24

ZERO = Fraction(0)

Rational = Fraction | int | str


def full_mask(n: int) -> Coalition:
    """Bitmask of the full player set."""
    return (1 << n) - 1


def singleton(i: int) -> Coalition:
    return 1 << i


def mask_of(indices: Iterable[int]) -> Coalition:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def members(mask: Coalition) -> Iterator[int]:
    """Yield the player indices in `mask`, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def describe_coalition(mask: Coalition, names: Sequence[str]) -> str:
    return ",".join(names[i] for i in members(mask)) if mask else "∅"


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"p{i + 1}" for i in range(n))


def _expand(mask: Coalition, kept: Sequence[int]) -> Coalition:
    """Map a mask over the reindexed players `kept` back to the original index space."""
    out = 0
    for new, old in enumerate(kept):
        if mask >> new & 1:
            out |= 1 << old
    return out


def _compress(mask: Coalition, kept: Sequence[int]) -> Coalition:
    """Map a mask in the original index space onto the reindexed players `kept`."""
    out = 0
    for new, old in enumerate(kept):
        if mask >> old & 1:
            out |= 1 << new
    return out


@dataclass(frozen=True, slots=True, repr=False)
class Game:
    """A TU-game: named players plus a dense table of coalition worths.

    `worth[S]` is the worth of the coalition with bitmask `S`; the empty
    coalition is always worth zero.
    """

    names: tuple[str, ...]
    worth: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        n = len(self.names)
        if not 1 <= n <= MAX_PLAYERS:
            raise ValueError(f"player count must be in 1..{MAX_PLAYERS}, got {n}")
        if any(not name for name in self.names):
            raise ValueError("player names must be nonempty")
        if len(set(self.names)) != n:
            raise ValueError("player names must be distinct")
        if len(self.worth) != 1 << n:
            raise ValueError(f"worth table must have {1 << n} entries, got {len(self.worth)}")
        if self.worth[0] != 0:
            raise ValueError("the empty coalition must be worth 0")

    @property
    def n(self) -> int:
        return len(self.names)

    def nonzero(self) -> dict[Coalition, Fraction]:
        return {S: w for S, w in enumerate(self.worth) if w != 0}

    def __repr__(self) -> str:
        body = "; ".join(
            f"{describe_coalition(S, self.names)}: {w}" for S, w in self.nonzero().items()
        )
        return f"Game(players=[{', '.join(self.names)}], worths={{{body}}})"


def make_game(names: Iterable[str], worths: Mapping[Coalition, Rational] | None = None) -> Game:
    """Build a game from a sparse coalition -> worth map; omitted coalitions are worth 0."""
    names = tuple(names)
    n = len(names)
    if not 1 <= n <= MAX_PLAYERS:
        raise ValueError(f"player count must be in 1..{MAX_PLAYERS}, got {n}")
    table = [ZERO] * (1 << n)
    for mask, value in (worths or {}).items():
        if not isinstance(mask, int) or not 0 <= mask < 1 << n:
            raise ValueError(f"coalition mask {mask!r} is not over {n} players")
        value = Fraction(value)
        if mask == 0 and value != 0:
            raise ValueError("the empty coalition must be worth 0")
        table[mask] = value
    return Game(names, tuple(table))


def zero_game(names: Iterable[str]) -> Game:
    names = tuple(names)
    return Game(names, (ZERO,) * (1 << len(names)))


def unanimity(n: int, base: Coalition, names: Sequence[str] | None = None) -> Game:
    """The game worth 1 exactly on supersets of `base`."""
    if base == 0:
        raise ValueError("unanimity base coalition must be nonempty")
    if not 0 < base < 1 << n:
        raise ValueError(f"coalition mask {base:#x} is not over {n} players")
    names = default_names(n) if names is None else tuple(names)
    one = Fraction(1)
    return Game(names, tuple(one if T & base == base else ZERO for T in range(1 << n)))


def add(v: Game, w: Game) -> Game:
    if v.n != w.n:
        raise ValueError("games have different player counts")
    return Game(v.names, tuple(a + b for a, b in zip(v.worth, w.worth)))


def sub(v: Game, w: Game) -> Game:
    if v.n != w.n:
        raise ValueError("games have different player counts")
    return Game(v.names, tuple(a - b for a, b in zip(v.worth, w.worth)))


def scale(c: Rational, v: Game) -> Game:
    c = Fraction(c)
    return Game(v.names, tuple(c * a for a in v.worth))


def subgame(v: Game, keep: Coalition) -> Game:
    """Restrict `v` to the players in `keep`, reindexed canonically (names kept)."""
    if keep == 0:
        raise ValueError("subgame needs a nonempty coalition")
    if not keep < 1 << v.n:
        raise ValueError(f"coalition mask {keep:#x} is not over {v.n} players")
    kept = list(members(keep))
    names = tuple(v.names[i] for i in kept)
    worth = tuple(v.worth[_expand(T, kept)] for T in range(1 << len(kept)))
    return Game(names, worth)


@dataclass(frozen=True, slots=True)
class CoalitionStructure:
    """An ordered partition of the player set into blocks (bitmasks).

    Blocks induced on a sub-player-set may be empty; such inert blocks carry
    no players, are never met by a coalition, and receive no payoff.
    """

    n: int
    blocks: tuple[Coalition, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("player count must be nonnegative")
        union = 0
        for k, block in enumerate(self.blocks):
            if not 0 <= block < 1 << self.n:
                raise ValueError(f"block {k} is not over {self.n} players")
            if block & union:
                raise ValueError(f"block {k} overlaps an earlier block")
            union |= block
        if union != full_mask(self.n):
            raise ValueError("blocks must cover every player")

    @property
    def m(self) -> int:
        return len(self.blocks)

    def block_of(self, i: int) -> int:
        for k, block in enumerate(self.blocks):
            if block >> i & 1:
                return k
        raise ValueError(f"no block contains player index {i}")

    def sizes(self) -> tuple[int, ...]:
        return tuple(block.bit_count() for block in self.blocks)


def induced_structure(structure: CoalitionStructure, keep: Coalition) -> CoalitionStructure:
    """Intersect every block with `keep` and reindex; emptied blocks stay as inert blocks."""
    kept = list(members(keep & full_mask(structure.n)))
    blocks = tuple(_compress(block & keep, kept) for block in structure.blocks)
    return CoalitionStructure(len(kept), blocks)


@dataclass(frozen=True, slots=True, repr=False)
class DiversityGame:
    """A game plus a coalition structure and per-block minimum quotas.

    Quotas are always >= 1.  Derived subgames keep the original quotas, so a
    quota may exceed its shrunken block; in that case no coalition is diverse.
    Fresh games should be built through `make_diversity_game`, which also
    requires every quota to fit inside its block.
    """

    game: Game
    structure: CoalitionStructure
    quotas: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.structure.n != self.game.n:
            raise ValueError("structure and game disagree on the player count")
        if len(self.quotas) != self.structure.m:
            raise ValueError("one quota per block required")
        if any(not isinstance(q, int) or q < 1 for q in self.quotas):
            raise ValueError("quotas must be integers >= 1")

    @property
    def n(self) -> int:
        return self.game.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.game.names

    def __repr__(self) -> str:
        blocks = " ".join(
            "{" + describe_coalition(b, self.names) + "}" for b in self.structure.blocks
        )
        return f"DiversityGame({self.game!r}, blocks={blocks}, quotas={self.quotas})"


def make_diversity_game(
    game: Game, blocks: Sequence[Coalition], quotas: Sequence[int]
) -> DiversityGame:
    """Validated constructor for fresh games: every quota must fit its block."""
    structure = CoalitionStructure(game.n, tuple(blocks))
    quotas = tuple(quotas)
    if len(quotas) != structure.m:
        raise ValueError("one quota per block required")
    for k, (block, q) in enumerate(zip(structure.blocks, quotas)):
        size = block.bit_count()
        if not isinstance(q, int) or not 1 <= q <= size:
            raise ValueError(f"quota for block {k} must be in 1..{size}, got {q!r}")
    return DiversityGame(game, structure, quotas)


def is_diverse(mask: Coalition, structure: CoalitionStructure, quotas: Sequence[int]) -> bool:
    """Does `mask` contain at least the quota from every block?"""
    return all((mask & block).bit_count() >= q for block, q in zip(structure.blocks, quotas))


def diverse_coalitions(structure: CoalitionStructure, quotas: Sequence[int]) -> list[Coalition]:
    """All diverse coalitions, ascending by mask."""
    return [S for S in range(1 << structure.n) if is_diverse(S, structure, quotas)]


def restrict_to_diverse(g: DiversityGame) -> Game:
    """Copy the worth of every diverse coalition, zero out all others."""
    worth = tuple(
        w if is_diverse(S, g.structure, g.quotas) else ZERO
        for S, w in enumerate(g.game.worth)
    )
    return Game(g.game.names, worth)


def is_diverse_game(g: DiversityGame) -> bool:
    """True when every coalition with a nonzero worth is diverse."""
    return all(
        w == 0 or is_diverse(S, g.structure, g.quotas)
        for S, w in enumerate(g.game.worth)
    )


def _check_player(v: Game, i: int) -> None:
    if not 0 <= i < v.n:
        raise ValueError(f"player index {i} out of range for {v.n} players")


def is_null(v: Game, i: int) -> bool:
    """True when adding player `i` never changes any coalition's worth."""
    _check_player(v, i)
    bit = 1 << i
    return all(v.worth[S | bit] == v.worth[S] for S in range(1 << v.n) if not S & bit)


def are_symmetric(v: Game, i: int, j: int) -> bool:
    """True when `i` and `j` contribute identically to every coalition avoiding both."""
    _check_player(v, i)
    _check_player(v, j)
    if i == j:
        raise ValueError("symmetry needs two distinct players")
    bi, bj = 1 << i, 1 << j
    pair = bi | bj
    return all(v.worth[S | bi] == v.worth[S | bj] for S in range(1 << v.n) if not S & pair)


def is_out(g: DiversityGame, i: int) -> bool:
    """True when `i`'s block strictly exceeds its quota, making `i` dispensable."""
    _check_player(g.game, i)
    k = g.structure.block_of(i)
    return g.structure.blocks[k].bit_count() - g.quotas[k] >= 1


def is_i_out_diverse(g: DiversityGame, i: int) -> bool:
    """Diverse game in which player `i` is dispensable for the quotas."""
    return is_diverse_game(g) and is_out(g, i)


def fresh_name(names: Sequence[str], base: str = "out") -> str:
    if base not in names:
        return base
    c = 2
    while f"{base}{c}" in names:
        c += 1
    return f"{base}{c}"


def add_outside_player(g: DiversityGame, k: int) -> DiversityGame:
    """Append a new player to block `k` who never affects any worth.

    The extended table satisfies worth'(S) = worth(S minus the new player), so
    the newcomer is null.  If `g` is diverse the extension stays diverse, and
    the enlarged block gains slack, so all of its members become dispensable.
    """
    if not 0 <= k < g.structure.m:
        raise ValueError(f"invalid block index {k}")
    n = g.n
    inner = full_mask(n)
    names = g.names + (fresh_name(g.names),)
    worth = tuple(g.game.worth[S & inner] for S in range(1 << (n + 1)))
    blocks = tuple(
        block | (1 << n) if idx == k else block
        for idx, block in enumerate(g.structure.blocks)
    )
    return DiversityGame(Game(names, worth), CoalitionStructure(n + 1, blocks), g.quotas)


def remove_player(g: DiversityGame, i: int) -> DiversityGame:
    """Drop player `i`: subgame, induced blocks, unchanged quotas."""
    if g.n < 2:
        raise ValueError("cannot remove the last player")
    _check_player(g.game, i)
    keep = full_mask(g.n) ^ (1 << i)
    return DiversityGame(
        subgame(g.game, keep),
        induced_structure(g.structure, keep),
        g.quotas,
    )
