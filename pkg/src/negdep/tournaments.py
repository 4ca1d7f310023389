"""Exact score-vector laws for two tournament formats.

* Constant-sum round robin: every pair (i, j) plays once; player i draws a
  score from the pair's law, player j receives the complement to the pair
  total; pairs are independent. The output is the joint law of the n total
  scores.

* Single-elimination knockout with 2**rounds players: each duel (i, j) is won
  by i with a fixed probability, independently of everything else; the score
  of a player is the number of rounds won. The first-round pairing is either
  a fixed bracket (slots 2k-1 and 2k meet, winners of adjacent slot pairs
  meet next) or re-randomized uniformly over perfect matchings each round.

Everything is enumerated exactly; zero-probability branches are dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .distributions import FiniteJointDistribution, Vector, _sorted_atoms
from .errors import SupportOutOfRange
from .rationals import as_rational, format_rational

ZERO = Fraction(0)
ONE = Fraction(1)


# -- round robin -----------------------------------------------------------

@dataclass(frozen=True)
class PairScoreLaw:
    """Law of the first player's score in one pairing; the pair sums to total."""

    total: Fraction
    law: tuple[tuple[Fraction, Fraction], ...]  # (score value, probability)

    def __post_init__(self):
        if self.total <= 0:
            raise SupportOutOfRange(f"pair total {self.total} must be positive")
        mass = ZERO
        for value, prob in self.law:
            if not (0 <= value <= self.total):
                raise SupportOutOfRange(
                    f"score {format_rational(value)} outside [0, {format_rational(self.total)}]"
                )
            if prob <= 0:
                raise SupportOutOfRange(f"probability {prob} must be positive")
            mass += prob
        if mass != 1:
            raise SupportOutOfRange(f"pair law mass is {format_rational(mass)}, not 1")
        if len({v for v, _ in self.law}) != len(self.law):
            raise SupportOutOfRange("duplicate score values in pair law")


def pair_score_law(total, entries) -> PairScoreLaw:
    return PairScoreLaw(
        as_rational(total),
        tuple(sorted((as_rational(v), as_rational(p)) for v, p in entries)),
    )


@dataclass(frozen=True)
class RoundRobinSpec:
    """n players; games[(i, j)] with i < j is the pair's score law."""

    n: int
    games: tuple[tuple[tuple[int, int], PairScoreLaw], ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("round robin needs at least two players")
        expected = {(i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)}
        got = {pair for pair, _ in self.games}
        if got != expected:
            raise ValueError(f"need exactly one law per pair; missing {sorted(expected - got)}, "
                             f"extra {sorted(got - expected)}")


def round_robin_spec(n: int, games: dict[tuple[int, int], PairScoreLaw]) -> RoundRobinSpec:
    return RoundRobinSpec(n, tuple(sorted(games.items())))


def round_robin_distribution(spec: RoundRobinSpec) -> FiniteJointDistribution:
    """Joint law of the total scores; every atom sums to the sum of pair totals."""
    pairs = [pair for pair, _ in spec.games]
    laws = [law for _, law in spec.games]
    merged: dict[Vector, Fraction] = {}
    for combo in itertools.product(*(law.law for law in laws)):
        scores = [ZERO] * spec.n
        prob = ONE
        for (i, j), law, (value, p) in zip(pairs, laws, combo):
            scores[i - 1] += value
            scores[j - 1] += law.total - value
            prob *= p
        key = tuple(scores)
        merged[key] = merged.get(key, ZERO) + prob
    return FiniteJointDistribution(spec.n, _sorted_atoms(merged))


# -- knockout ---------------------------------------------------------------

@dataclass(frozen=True)
class FixedDraw:
    """Players listed by leaf slot; slots 2k-1 and 2k meet in round one."""

    bracket: tuple[int, ...]


@dataclass(frozen=True)
class RandomDraw:
    """Survivors are re-paired by a uniform perfect matching every round."""


@dataclass(frozen=True)
class KnockoutSpec:
    rounds: int
    win_prob: tuple[tuple[Fraction, ...], ...]  # win_prob[i-1][j-1] = P(i beats j)
    draw: FixedDraw | RandomDraw

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError("need at least one round")
        n = self.n
        if len(self.win_prob) != n or any(len(row) != n for row in self.win_prob):
            raise ValueError(f"win-probability matrix must be {n}x{n}")
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                p = self.win_prob[i][j]
                if not (0 <= p <= 1):
                    raise ValueError(f"win probability {p} for ({i + 1},{j + 1}) outside [0,1]")
                if p + self.win_prob[j][i] != 1:
                    raise ValueError(
                        f"win probabilities for ({i + 1},{j + 1}) do not sum to 1")
        if isinstance(self.draw, FixedDraw) and sorted(self.draw.bracket) != list(range(1, n + 1)):
            raise ValueError(f"bracket {self.draw.bracket} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return 2 ** self.rounds

    def beats(self, i: int, j: int) -> Fraction:
        return self.win_prob[i - 1][j - 1]


def knockout_spec(rounds: int, win_prob: Sequence[Sequence], draw) -> KnockoutSpec:
    matrix = tuple(tuple(as_rational(p) for p in row) for row in win_prob)
    return KnockoutSpec(rounds, matrix, draw)


def equal_strength(rounds: int, draw) -> KnockoutSpec:
    """All duels are fair coins."""
    n = 2 ** rounds
    half = Fraction(1, 2)
    matrix = tuple(
        tuple(ZERO if i == j else half for j in range(n)) for i in range(n)
    )
    return KnockoutSpec(rounds, matrix, draw)


def knockout_fixed_draw(spec: KnockoutSpec) -> FiniteJointDistribution:
    """Exact law of rounds-won under the fixed bracket."""
    if not isinstance(spec.draw, FixedDraw):
        raise ValueError("spec does not carry a fixed draw")
    memo: dict[tuple[int, ...], dict] = {}

    def run(slots: tuple[int, ...]) -> dict:
        """Map (winner, per-player scores tuple) -> probability for a sub-bracket."""
        if slots in memo:
            return memo[slots]
        if len(slots) == 1:
            player = slots[0]
            out = {(player, ((player, 0),)): ONE}
        else:
            half = len(slots) // 2
            left = run(slots[:half])
            right = run(slots[half:])
            out: dict = {}
            for (wl, sl), pl in left.items():
                for (wr, sr), pr in right.items():
                    base = pl * pr
                    for winner, loser in ((wl, wr), (wr, wl)):
                        p = spec.beats(winner, loser)
                        if p == 0:
                            continue
                        scores = tuple(sorted(
                            (player, score + (1 if player == winner else 0))
                            for player, score in sl + sr
                        ))
                        key = (winner, scores)
                        out[key] = out.get(key, ZERO) + base * p
        memo[slots] = out
        return out

    merged: dict[Vector, Fraction] = {}
    for (_, scores), prob in run(spec.draw.bracket).items():
        vector = tuple(Fraction(score) for _, score in scores)  # sorted by player
        merged[vector] = merged.get(vector, ZERO) + prob
    return FiniteJointDistribution(spec.n, _sorted_atoms(merged))


def _perfect_matchings(players: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    """All ways to pair up an even-sized set; (m-1)!! of them, each once."""
    if not players:
        yield ()
        return
    first = players[0]
    for k in range(1, len(players)):
        rest = players[1:k] + players[k + 1:]
        for sub in _perfect_matchings(rest):
            yield ((first, players[k]),) + sub


def knockout_random_draw(spec: KnockoutSpec) -> FiniteJointDistribution:
    """Exact law of rounds-won when every round's pairing is uniformly random.

    After round k the survivors are exactly the players with k wins, so the
    score vector is a sufficient state and mixtures merge as we go.
    """
    if not isinstance(spec.draw, RandomDraw):
        raise ValueError("spec does not carry a random draw")
    n = spec.n
    state: dict[tuple[int, ...], Fraction] = {(0,) * n: ONE}
    for rnd in range(1, spec.rounds + 1):
        target = rnd - 1
        next_state: dict[tuple[int, ...], Fraction] = {}
        for scores, prob in sorted(state.items()):
            survivors = tuple(i for i in range(1, n + 1) if scores[i - 1] == target)
            matchings = list(_perfect_matchings(survivors))
            matching_prob = Fraction(1, len(matchings))
            for matching in matchings:
                base = prob * matching_prob
                # every way to pick one winner per match
                for winners in itertools.product(*(((a, b), (b, a)) for a, b in matching)):
                    p = base
                    for winner, loser in winners:
                        p *= spec.beats(winner, loser)
                        if p == 0:
                            break
                    if p == 0:
                        continue
                    new_scores = list(scores)
                    for winner, _ in winners:
                        new_scores[winner - 1] += 1
                    key = tuple(new_scores)
                    next_state[key] = next_state.get(key, ZERO) + p
        state = next_state
    merged = {tuple(Fraction(s) for s in scores): p for scores, p in state.items()}
    return FiniteJointDistribution(n, _sorted_atoms(merged))


def knockout_distribution(spec: KnockoutSpec) -> FiniteJointDistribution:
    if isinstance(spec.draw, FixedDraw):
        return knockout_fixed_draw(spec)
    return knockout_random_draw(spec)


# -- model-spec wire format --------------------------------------------------

def model_spec_to_json(spec) -> dict:
    if isinstance(spec, RoundRobinSpec):
        return {
            "model": "round_robin",
            "n": spec.n,
            "pairs": [
                {
                    "i": i,
                    "j": j,
                    "r": format_rational(law.total),
                    "law": [[format_rational(v), format_rational(p)] for v, p in law.law],
                }
                for (i, j), law in spec.games
            ],
        }
    if isinstance(spec, KnockoutSpec):
        draw = ({"kind": "fixed", "bracket": list(spec.draw.bracket)}
                if isinstance(spec.draw, FixedDraw) else {"kind": "random"})
        return {
            "model": "knockout",
            "ell": spec.rounds,
            "win_prob": [[format_rational(p) for p in row] for row in spec.win_prob],
            "draw": draw,
        }
    raise TypeError(f"not a model spec: {spec!r}")


def model_spec_from_json(obj: dict):
    if not isinstance(obj, dict) or "model" not in obj:
        raise ValueError("model spec JSON needs a 'model' field")
    model = obj["model"]
    if model == "round_robin":
        try:
            n = int(obj["n"])
            games = {}
            for entry in obj["pairs"]:
                pair = (int(entry["i"]), int(entry["j"]))
                games[pair] = pair_score_law(entry["r"], entry["law"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad round-robin spec: missing field {exc}") from exc
        return round_robin_spec(n, games)
    if model == "knockout":
        try:
            rounds = int(obj["ell"])
            matrix = obj["win_prob"]
            draw_obj = obj["draw"]
            kind = draw_obj["kind"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad knockout spec: missing field {exc}") from exc
        if kind == "fixed":
            draw = FixedDraw(tuple(int(s) for s in draw_obj["bracket"]))
        elif kind == "random":
            draw = RandomDraw()
        else:
            raise ValueError(f"unknown draw kind {kind!r}")
        return knockout_spec(rounds, matrix, draw)
    raise ValueError(f"unknown model {model!r}")
