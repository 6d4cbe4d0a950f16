"""Mechanical checkers for the allocation axioms, plus a seeded sweep engine.

Every `check_*` function evaluates one concrete instance and reports an exact
pass/fail verdict with instance accounting: instances whose preconditions do
not hold count as skipped, never as passes.  A failing report carries a
witness holding the full instance, so it can be replayed verbatim.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .game_core import (
    ZERO,
    CoalitionStructure,
    DiversityGame,
    Game,
    add,
    add_outside_player,
    are_symmetric,
    diverse_coalitions,
    full_mask,
    is_diverse_game,
    is_i_out_diverse,
    is_null,
    is_out,
    members,
    remove_player,
    restrict_to_diverse,
    singleton,
    zero_game,
)
from .genfix import (
    GeneratorSpec,
    draw_nonzero,
    perturb_nondiverse,
    random_game,
    random_game_like,
)
from .transform import DividendTable, synthesize
from .values import Allocation, ValueFunctional

AXIOM_IDS = ("E", "FwC", "FD", "INDC", "NPOPD", "ND", "ED", "IBCOPPD", "IBCOPPD-")

_ALIASES = {a.lower(): a for a in AXIOM_IDS}
_ALIASES["ibcoppd_minus"] = "IBCOPPD-"


def canonical_axiom(name: str) -> str:
    try:
        return _ALIASES[name.strip().lower()]
    except KeyError:
        raise ValueError(
            f"unknown axiom {name!r}; choose from {', '.join(AXIOM_IDS)}"
        ) from None


@dataclass(frozen=True, eq=False)
class AxiomInstance:
    """One concrete binding of an axiom: the checker's keyword arguments."""

    axiom: str
    inputs: Mapping[str, object]


@dataclass(frozen=True, eq=False)
class Witness:
    """A replayable failure: the instance plus both sides of the broken equation."""

    instance: AxiomInstance
    note: str
    lhs: object
    rhs: object

    @property
    def axiom(self) -> str:
        return self.instance.axiom


@dataclass
class CheckReport:
    axiom: str
    tried: int = 0
    applicable: int = 0
    passed: int = 0
    witness: Witness | None = None

    @property
    def failed(self) -> int:
        return self.applicable - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def conclusive(self) -> bool:
        return self.applicable > 0

    def absorb(self, other: CheckReport) -> None:
        if other.axiom != self.axiom:
            raise ValueError("cannot merge reports for different axioms")
        self.tried += other.tried
        self.applicable += other.applicable
        self.passed += other.passed
        if self.witness is None:
            self.witness = other.witness


def _verdict(
    rep: CheckReport, ok: bool, instance: AxiomInstance, note: str, lhs, rhs
) -> CheckReport:
    if ok:
        rep.passed += 1
    else:
        rep.witness = Witness(instance, note, lhs, rhs)
    return rep


def check_E(f: ValueFunctional, g: DiversityGame) -> CheckReport:
    """Payoffs must add up to the grand coalition's worth."""
    rep = CheckReport("E", tried=1, applicable=1)
    instance = AxiomInstance("E", {"g": g})
    total = sum(f(g), ZERO)
    target = g.game.worth[full_mask(g.n)]
    return _verdict(
        rep, total == target, instance,
        "sum of payoffs vs worth of the full player set", total, target,
    )


def check_FwC(
    f: ValueFunctional,
    v: Game,
    w: Game,
    structure: CoalitionStructure,
    quotas: tuple[int, ...],
    i: int,
    j: int,
) -> CheckReport:
    """Same-block players symmetric in `v` must gain equally when `v` is
    stacked on top of `w`.  Skipped unless the pair is same-block and symmetric."""
    rep = CheckReport("FwC", tried=1)
    if i == j or structure.block_of(i) != structure.block_of(j):
        return rep
    if not are_symmetric(v, i, j):
        return rep
    rep.applicable = 1
    instance = AxiomInstance(
        "FwC", {"v": v, "w": w, "structure": structure, "quotas": quotas, "i": i, "j": j}
    )
    combined = f(DiversityGame(add(v, w), structure, quotas))
    base = f(DiversityGame(w, structure, quotas))
    lhs = combined[i] - base[i]
    rhs = combined[j] - base[j]
    return _verdict(
        rep, lhs == rhs, instance,
        f"gain of {v.names[i]} vs gain of {v.names[j]} from adding v on top of w",
        lhs, rhs,
    )


def check_FD(
    f: ValueFunctional,
    v: Game,
    w: Game,
    structure: CoalitionStructure,
    quotas: tuple[int, ...],
    p: int,
    q: int,
) -> CheckReport:
    """Stacking `v` on `w` must change every block's payoff total by the same amount."""
    if not (0 <= p < structure.m and 0 <= q < structure.m):
        raise ValueError("invalid block index")
    rep = CheckReport("FD", tried=1)
    if p == q:
        return rep
    rep.applicable = 1
    instance = AxiomInstance(
        "FD", {"v": v, "w": w, "structure": structure, "quotas": quotas, "p": p, "q": q}
    )
    combined = f(DiversityGame(add(v, w), structure, quotas))
    base = f(DiversityGame(w, structure, quotas))

    def block_gain(k: int) -> Fraction:
        return sum((combined[b] - base[b] for b in members(structure.blocks[k])), ZERO)

    lhs, rhs = block_gain(p), block_gain(q)
    return _verdict(
        rep, lhs == rhs, instance,
        f"total gain of block {p} vs block {q} from adding v on top of w", lhs, rhs,
    )


def check_INDC(
    f: ValueFunctional,
    v: Game,
    w: Game,
    structure: CoalitionStructure,
    quotas: tuple[int, ...],
) -> CheckReport:
    """Games that agree on every diverse coalition must get identical payoffs.
    Skipped when the premise fails."""
    rep = CheckReport("INDC", tried=1)
    if any(v.worth[S] != w.worth[S] for S in diverse_coalitions(structure, quotas)):
        return rep
    rep.applicable = 1
    instance = AxiomInstance(
        "INDC", {"v": v, "w": w, "structure": structure, "quotas": quotas}
    )
    pv = f(DiversityGame(v, structure, quotas))
    pw = f(DiversityGame(w, structure, quotas))
    for idx, (a, b) in enumerate(zip(pv, pw)):
        if a != b:
            return _verdict(
                rep, False, instance,
                f"payoff of {v.names[idx]} under v vs under w", a, b,
            )
    rep.passed = 1
    return rep


def check_NPOPD(f: ValueFunctional, g: DiversityGame, i: int) -> CheckReport:
    """Removing a null player whose block has slack must not move anyone else's
    payoff.  Applicable only on diverse games with such a player."""
    rep = CheckReport("NPOPD", tried=1)
    if not (is_i_out_diverse(g, i) and is_null(g.game, i)):
        return rep
    rep.applicable = 1
    instance = AxiomInstance("NPOPD", {"g": g, "i": i})
    sub = remove_player(g, i)
    before = f(g)
    after = f(sub)
    for j in range(g.n):
        if j == i:
            continue
        jj = j - (j > i)
        if before[j] != after[jj]:
            return _verdict(
                rep, False, instance,
                f"payoff of {g.names[j]} before vs after removing {g.names[i]}",
                before[j], after[jj],
            )
    rep.passed = 1
    return rep


def check_ND(f: ValueFunctional, g: DiversityGame, i: int) -> CheckReport:
    """A null player in a diverse game gets exactly zero.  Skipped otherwise."""
    rep = CheckReport("ND", tried=1)
    if not (is_diverse_game(g) and is_null(g.game, i)):
        return rep
    rep.applicable = 1
    instance = AxiomInstance("ND", {"g": g, "i": i})
    pay = f(g)[i]
    return _verdict(
        rep, pay == 0, instance,
        f"payoff of the null player {g.names[i]} vs zero", pay, ZERO,
    )


def check_ED(f: ValueFunctional, g: DiversityGame) -> CheckReport:
    """Every block's payoff total must agree (vacuously true with one block)."""
    rep = CheckReport("ED", tried=1, applicable=1)
    instance = AxiomInstance("ED", {"g": g})
    pay = f(g)
    sums = [
        sum((pay[b] for b in members(block)), ZERO) for block in g.structure.blocks
    ]
    for k in range(1, len(sums)):
        if sums[k] != sums[0]:
            return _verdict(
                rep, False, instance, f"payoff total of block 0 vs block {k}",
                sums[0], sums[k],
            )
    rep.passed = 1
    return rep


def _balanced_loss_sides(
    f: ValueFunctional, g: DiversityGame, i: int, j: int
) -> tuple[Fraction, Fraction, DiversityGame, DiversityGame, int, int]:
    without_j = remove_player(g, j)
    without_i = remove_player(g, i)
    base = f(g)
    pay_without_j = f(without_j)
    pay_without_i = f(without_i)
    i_sub = i - (i > j)
    j_sub = j - (j > i)
    lhs = base[i] - pay_without_j[i_sub]
    rhs = base[j] - pay_without_i[j_sub]
    return lhs, rhs, without_j, without_i, i_sub, j_sub


def _balanced_applicable(g: DiversityGame, i: int, j: int) -> bool:
    return (
        i != j
        and g.structure.block_of(i) == g.structure.block_of(j)
        and is_out(g, i)
        and is_out(g, j)
        and is_diverse_game(g)
    )


def check_IBCOPPD(f: ValueFunctional, g: DiversityGame, i: int, j: int) -> CheckReport:
    """For two dispensable same-block players of a diverse game: each loses as
    much from the other's removal as vice versa, and a player who is null in
    the other's subgame gets zero there.  Skipped unless both are dispensable."""
    rep = CheckReport("IBCOPPD", tried=1)
    if not _balanced_applicable(g, i, j):
        return rep
    rep.applicable = 1
    instance = AxiomInstance("IBCOPPD", {"g": g, "i": i, "j": j})
    lhs, rhs, without_j, without_i, i_sub, j_sub = _balanced_loss_sides(f, g, i, j)
    if lhs != rhs:
        return _verdict(
            rep, False, instance,
            f"balanced loss of {g.names[i]} vs {g.names[j]}", lhs, rhs,
        )
    if is_null(without_j.game, i_sub):
        pay = f(without_j)[i_sub]
        if pay != 0:
            return _verdict(
                rep, False, instance,
                f"{g.names[i]} is null after removing {g.names[j]} yet gets paid",
                pay, ZERO,
            )
    if is_null(without_i.game, j_sub):
        pay = f(without_i)[j_sub]
        if pay != 0:
            return _verdict(
                rep, False, instance,
                f"{g.names[j]} is null after removing {g.names[i]} yet gets paid",
                pay, ZERO,
            )
    rep.passed = 1
    return rep


def check_IBCOPPD_minus(
    f: ValueFunctional, g: DiversityGame, i: int, j: int
) -> CheckReport:
    """Balanced-loss clause as in IBCOPPD when its preconditions hold, plus:
    the all-zero game pays everyone exactly zero (always applicable)."""
    rep = CheckReport("IBCOPPD-", tried=1, applicable=1)
    instance = AxiomInstance("IBCOPPD-", {"g": g, "i": i, "j": j})
    zero = DiversityGame(zero_game(g.names), g.structure, g.quotas)
    for idx, pay in enumerate(f(zero)):
        if pay != 0:
            return _verdict(
                rep, False, instance,
                f"payoff of {g.names[idx]} in the zero game vs zero", pay, ZERO,
            )
    if _balanced_applicable(g, i, j):
        lhs, rhs, *_ = _balanced_loss_sides(f, g, i, j)
        if lhs != rhs:
            return _verdict(
                rep, False, instance,
                f"balanced loss of {g.names[i]} vs {g.names[j]}", lhs, rhs,
            )
    rep.passed = 1
    return rep


_CHECKERS = {
    "E": check_E,
    "FwC": check_FwC,
    "FD": check_FD,
    "INDC": check_INDC,
    "NPOPD": check_NPOPD,
    "ND": check_ND,
    "ED": check_ED,
    "IBCOPPD": check_IBCOPPD,
    "IBCOPPD-": check_IBCOPPD_minus,
}


def run_instance(f: ValueFunctional, instance: AxiomInstance) -> CheckReport:
    checker = _CHECKERS[instance.axiom]
    return checker(f, **instance.inputs)


def replay(f: ValueFunctional, witness: Witness) -> CheckReport:
    """Re-run the exact instance a witness came from; a sound witness fails again."""
    return run_instance(f, witness.instance)


def _memoized(f: ValueFunctional) -> ValueFunctional:
    cache: dict[DiversityGame, Allocation] = {}

    def evaluate(g: DiversityGame) -> Allocation:
        pay = cache.get(g)
        if pay is None:
            pay = f.evaluator(g)
            cache[g] = pay
        return pay

    return ValueFunctional(f.name, evaluate)


def _same_block_pairs(structure: CoalitionStructure) -> list[tuple[int, int]]:
    pairs: list[tuple[int, int]] = []
    for block in structure.blocks:
        pairs.extend(itertools.combinations(members(block), 2))
    return pairs


def _symmetric_pair_game(
    g: DiversityGame, rng: random.Random, value_range: int
) -> tuple[Game, int, int] | None:
    """A game in which a freshly chosen same-block pair is symmetric by
    construction: every sampled dividend coalition contains both players or
    neither, so swapping them fixes the support pointwise."""
    eligible = [b for b in g.structure.blocks if b.bit_count() >= 2]
    if not eligible:
        return None
    block = rng.choice(eligible)
    i, j = sorted(rng.sample(list(members(block)), 2))
    pair = singleton(i) | singleton(j)
    delta = [ZERO] * (1 << g.n)
    for _ in range(rng.randint(1, 3)):
        T = rng.randrange(1, 1 << g.n)
        if T & pair:
            T |= pair
        delta[T] += Fraction(draw_nonzero(rng, value_range))
    return synthesize(DividendTable(g.names, tuple(delta))), i, j


def _trial_instances(
    g: DiversityGame,
    axiom_ids: Sequence[str],
    rng: random.Random,
    density: float,
    value_range: int,
) -> Iterator[AxiomInstance]:
    v, structure, quotas = g.game, g.structure, g.quotas
    # Shared artifacts are drawn unconditionally so the rng stream, and hence
    # every emitted instance, does not depend on which axioms were requested.
    partner = random_game_like(g, rng, density, value_range)
    indc_partner = perturb_nondiverse(g, seed=rng.getrandbits(48))
    sym = _symmetric_pair_game(g, rng, value_range)
    pairs = _same_block_pairs(structure)
    zero_pair = rng.choice(pairs) if pairs else None
    zero = zero_game(v.names)
    restricted = DiversityGame(restrict_to_diverse(g), structure, quotas)
    extensions = [add_outside_player(restricted, k) for k in range(structure.m)]

    def two_games(left: Game) -> dict[str, object]:
        return {"v": left, "w": partner, "structure": structure, "quotas": quotas}

    if "E" in axiom_ids:
        yield AxiomInstance("E", {"g": g})
    if "FwC" in axiom_ids:
        for i, j in pairs:
            yield AxiomInstance("FwC", two_games(v) | {"i": i, "j": j})
        if zero_pair is not None:
            yield AxiomInstance(
                "FwC", two_games(zero) | {"i": zero_pair[0], "j": zero_pair[1]}
            )
        if sym is not None:
            sym_game, i, j = sym
            yield AxiomInstance("FwC", two_games(sym_game) | {"i": i, "j": j})
    if "FD" in axiom_ids:
        for p, q in itertools.combinations(range(structure.m), 2):
            yield AxiomInstance("FD", two_games(v) | {"p": p, "q": q})
    if "INDC" in axiom_ids:
        yield AxiomInstance(
            "INDC",
            {"v": v, "w": indc_partner, "structure": structure, "quotas": quotas},
        )
    if "NPOPD" in axiom_ids:
        for ext in extensions:
            yield AxiomInstance("NPOPD", {"g": ext, "i": g.n})
        for i in range(g.n):
            yield AxiomInstance("NPOPD", {"g": restricted, "i": i})
    if "ND" in axiom_ids:
        for ext in extensions:
            yield AxiomInstance("ND", {"g": ext, "i": g.n})
        for i in range(g.n):
            yield AxiomInstance("ND", {"g": restricted, "i": i})
    if "ED" in axiom_ids:
        yield AxiomInstance("ED", {"g": g})
    if "IBCOPPD" in axiom_ids:
        for i, j in pairs:
            yield AxiomInstance("IBCOPPD", {"g": restricted, "i": i, "j": j})
    if "IBCOPPD-" in axiom_ids:
        if pairs:
            for i, j in pairs:
                yield AxiomInstance("IBCOPPD-", {"g": restricted, "i": i, "j": j})
        else:
            # No same-block pair exists; the zero-game clause still applies.
            yield AxiomInstance("IBCOPPD-", {"g": restricted, "i": 0, "j": 0})


def sweep(
    f: ValueFunctional,
    gen: GeneratorSpec | Iterable[GeneratorSpec],
    axioms: Iterable[str] | None = None,
    trials: int = 100,
    seed: int = 0,
    first_game: DiversityGame | None = None,
) -> list[CheckReport]:
    """Check the requested axioms over `trials` seeded random games.

    `gen` is a GeneratorSpec or a sequence of them, cycled across trials.
    With `first_game` given, trial 0 checks that game verbatim while partner
    games still come from the spec's density and value range.  Per-trial
    randomness derives deterministically from (seed, trial index), so equal
    inputs always produce identical reports.
    """
    specs = [gen] if isinstance(gen, GeneratorSpec) else list(gen)
    if not specs:
        raise ValueError("at least one generator spec is required")
    if axioms is None:
        ids = list(AXIOM_IDS)
    else:
        ids = list(dict.fromkeys(canonical_axiom(a) for a in axioms))
    reports = {a: CheckReport(a) for a in ids}
    runner = _memoized(f)
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        spec = specs[t % len(specs)]
        if t == 0 and first_game is not None:
            g = first_game
        else:
            g = random_game(replace(spec, seed=rng.getrandbits(48)))
        for instance in _trial_instances(g, ids, rng, spec.density, spec.value_range):
            reports[instance.axiom].absorb(run_instance(runner, instance))
    return [reports[a] for a in ids]
