"""Finite discrete joint distributions with exact rational probabilities.

The one distribution type every checker in this package consumes. Atoms are
kept in lexicographic order of their support vectors, which makes equality,
iteration and every downstream enumeration deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    DimMismatch,
    EmptyIndexSet,
    MassNotOne,
    NonpositiveProbability,
    UndefinedAtAtom,
    ZeroProbabilityEvent,
)
from .rationals import Extended, as_rational, format_rational

Vector = tuple[Fraction, ...]

ONE = Fraction(1)
ZERO = Fraction(0)

EQ = "eq"
LOWER = "lower"
UPPER = "upper"


def validate_index_set(indices: Iterable[int], dim: int) -> tuple[int, ...]:
    """Normalize to a strictly increasing tuple of 1-based coordinate indices."""
    idx = tuple(sorted(indices))
    if not idx:
        raise EmptyIndexSet("index set must be nonempty")
    if len(set(idx)) != len(idx):
        raise ValueError(f"duplicate indices in {idx}")
    if idx[0] < 1 or idx[-1] > dim:
        raise ValueError(f"indices {idx} out of range [1, {dim}]")
    return idx


@dataclass(frozen=True)
class ConditioningEvent:
    """An event of the form {X_J = x_J}, {X_J <= x_J} or {X_J > x_J}.

    ``strict`` carries one flag per index for the tail kinds (the default
    tail events are weak lower / strict upper; the opposite combinations
    are representable by flipping flags). Thresholds of tail events may be
    the -inf / +inf sentinels.
    """

    kind: str
    indices: tuple[int, ...]
    thresholds: tuple[Extended, ...]
    strict: tuple[bool, ...] = ()

    def __post_init__(self):
        if self.kind not in (EQ, LOWER, UPPER):
            raise ValueError(f"unknown event kind {self.kind!r}")
        if len(self.indices) != len(self.thresholds):
            raise ValueError("one threshold per index required")
        if self.kind == EQ:
            if self.strict:
                raise ValueError("equality events carry no strictness flags")
            if any(isinstance(t, float) for t in self.thresholds):
                raise ValueError("equality events need exact values, not sentinels")
        elif len(self.strict) != len(self.indices):
            raise ValueError("one strictness flag per index required")

    def matches(self, x: Vector) -> bool:
        if self.kind == EQ:
            return all(x[j - 1] == t for j, t in zip(self.indices, self.thresholds))
        if self.kind == LOWER:
            return all(
                (x[j - 1] < t) if s else (x[j - 1] <= t)
                for j, t, s in zip(self.indices, self.thresholds, self.strict)
            )
        return all(
            (x[j - 1] > t) if s else (x[j - 1] >= t)
            for j, t, s in zip(self.indices, self.thresholds, self.strict)
        )


def eq_event(indices: Iterable[int], values: Sequence) -> ConditioningEvent:
    idx = tuple(indices)
    return ConditioningEvent(EQ, idx, tuple(as_rational(v) for v in values))


def lower_event(indices: Iterable[int], thresholds: Sequence[Extended],
                strict: bool | Sequence[bool] = False) -> ConditioningEvent:
    """{X_J <= x_J} by default; per-coordinate strict flags give {X_j < x_j}."""
    idx = tuple(indices)
    flags = tuple(strict) if not isinstance(strict, bool) else (strict,) * len(idx)
    return ConditioningEvent(LOWER, idx, tuple(thresholds), flags)


def upper_event(indices: Iterable[int], thresholds: Sequence[Extended],
                strict: bool | Sequence[bool] = True) -> ConditioningEvent:
    """{X_J > x_J} by default; per-coordinate weak flags give {X_j >= x_j}."""
    idx = tuple(indices)
    flags = tuple(strict) if not isinstance(strict, bool) else (strict,) * len(idx)
    return ConditioningEvent(UPPER, idx, tuple(thresholds), flags)


@dataclass(frozen=True)
class FiniteJointDistribution:
    """A pmf over finitely many rational vectors, probabilities summing to 1.

    Construct through :func:`make_pmf` (or the other builders below), which
    canonicalize and validate; the raw constructor trusts its input.
    """

    dim: int
    atoms: tuple[tuple[Vector, Fraction], ...]

    # -- basic queries ---------------------------------------------------

    def support(self) -> tuple[Vector, ...]:
        return tuple(x for x, _ in self.atoms)

    def probability(self, x: Vector) -> Fraction:
        for v, p in self.atoms:
            if v == x:
                return p
        return ZERO

    def mass_of(self, event: ConditioningEvent) -> Fraction:
        return sum((p for x, p in self.atoms if event.matches(x)), ZERO)

    def as_dict(self) -> dict[Vector, Fraction]:
        return dict(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    # -- operations ------------------------------------------------------

    def marginal(self, indices: Iterable[int]) -> "FiniteJointDistribution":
        """Law of the projection onto the given coordinates."""
        idx = validate_index_set(indices, self.dim)
        cols = [j - 1 for j in idx]
        merged: dict[Vector, Fraction] = {}
        for x, p in self.atoms:
            key = tuple(x[c] for c in cols)
            merged[key] = merged.get(key, ZERO) + p
        return FiniteJointDistribution(len(cols), _sorted_atoms(merged))

    def condition(self, event: ConditioningEvent,
                  keep: Iterable[int] | None = None) -> "FiniteJointDistribution":
        """Exact law of the ``keep`` coordinates given the event.

        ``keep`` defaults to every coordinate outside the event; it must be
        disjoint from the event's indices. Raises ZeroProbabilityEvent when
        the event has no mass (callers enumerate and skip).
        """
        if keep is None:
            keep = [j for j in range(1, self.dim + 1) if j not in event.indices]
        idx = validate_index_set(keep, self.dim)
        if set(idx) & set(event.indices):
            raise ValueError(f"keep {idx} overlaps conditioning indices {event.indices}")
        cols = [j - 1 for j in idx]
        merged: dict[Vector, Fraction] = {}
        mass = ZERO
        for x, p in self.atoms:
            if event.matches(x):
                mass += p
                key = tuple(x[c] for c in cols)
                merged[key] = merged.get(key, ZERO) + p
        if mass == 0:
            raise ZeroProbabilityEvent(f"event {event} has probability 0")
        scaled = {x: p / mass for x, p in merged.items()}
        return FiniteJointDistribution(len(cols), _sorted_atoms(scaled))

    def expectation(self, f: Callable[[Vector], Fraction]) -> Fraction:
        """Exact sum of f(x) * p(x) over the support."""
        total = ZERO
        for x, p in self.atoms:
            try:
                value = f(x)
            except (KeyError, LookupError) as exc:
                raise UndefinedAtAtom(f"integrand undefined at {x}") from exc
            if isinstance(value, float):
                raise UndefinedAtAtom(f"integrand returned a float at {x}; exact values only")
            total += as_rational(value) * p
        return total

    def support_grid(self) -> tuple[tuple[Fraction, ...], ...]:
        """Per coordinate, the sorted distinct values appearing in any atom."""
        grids = [set() for _ in range(self.dim)]
        for x, _ in self.atoms:
            for g, v in zip(grids, x):
                g.add(v)
        return tuple(tuple(sorted(g)) for g in grids)

    def negate(self) -> "FiniteJointDistribution":
        """Law of -X (all coordinates negated)."""
        flipped = {tuple(-v for v in x): p for x, p in self.atoms}
        return FiniteJointDistribution(self.dim, _sorted_atoms(flipped))

    def permute_coordinates(self, perm: Sequence[int]) -> "FiniteJointDistribution":
        """Law of (X_{perm[0]}, ..., X_{perm[n-1]}), perm a 1-based permutation."""
        if sorted(perm) != list(range(1, self.dim + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{self.dim}")
        moved = {tuple(x[j - 1] for j in perm): p for x, p in self.atoms}
        return FiniteJointDistribution(self.dim, _sorted_atoms(moved))


def _sorted_atoms(mapping: dict[Vector, Fraction]) -> tuple[tuple[Vector, Fraction], ...]:
    return tuple(sorted(mapping.items()))


def make_pmf(dim: int, entries: Iterable[tuple[Sequence, object]]) -> FiniteJointDistribution:
    """Build a canonical pmf, merging duplicate support vectors.

    Raises DimMismatch / NonpositiveProbability / MassNotOne as appropriate.
    """
    if dim < 1:
        raise DimMismatch(f"dim must be >= 1, got {dim}")
    merged: dict[Vector, Fraction] = {}
    for vector, prob in entries:
        x = tuple(as_rational(v) for v in vector)
        if len(x) != dim:
            raise DimMismatch(f"support vector {x} has length {len(x)}, expected {dim}")
        p = as_rational(prob)
        if p <= 0:
            raise NonpositiveProbability(f"probability {p} at {x} is not > 0")
        merged[x] = merged.get(x, ZERO) + p
    if not merged:
        raise MassNotOne("no atoms given")
    total = sum(merged.values())
    if total != 1:
        raise MassNotOne(f"probabilities sum to {format_rational(total)}, not 1")
    return FiniteJointDistribution(dim, _sorted_atoms(merged))


def product(d1: FiniteJointDistribution,
            d2: FiniteJointDistribution) -> FiniteJointDistribution:
    """Independent concatenation; dim is the sum of the operand dims."""
    merged = {
        x1 + x2: p1 * p2
        for x1, p1 in d1.atoms
        for x2, p2 in d2.atoms
    }
    return FiniteJointDistribution(d1.dim + d2.dim, _sorted_atoms(merged))


def independent_copy(d: FiniteJointDistribution) -> FiniteJointDistribution:
    """Product of the univariate marginals of d (same margins, independent)."""
    out = d.marginal([1])
    for j in range(2, d.dim + 1):
        out = product(out, d.marginal([j]))
    return out


def permutation_distribution(values: Sequence) -> FiniteJointDistribution:
    """Uniform law over all arrangements of the given values.

    Equal values collapse: each distinct arrangement of a multiset carries
    probability (product of multiplicity factorials) / n!.
    """
    vals = tuple(as_rational(v) for v in values)
    if not vals:
        raise EmptyIndexSet("values must be nonempty")
    n = len(vals)
    counts: dict[Vector, int] = {}
    for arrangement in itertools.permutations(vals):
        counts[arrangement] = counts.get(arrangement, 0) + 1
    factor = Fraction(1, math.factorial(n))
    merged = {x: c * factor for x, c in counts.items()}
    return FiniteJointDistribution(n, _sorted_atoms(merged))


# -- wire format ----------------------------------------------------------
#
# {"dim": n, "atoms": [{"x": ["0", "1/2", ...], "p": "1/8"}, ...]}
# Rationals travel as "num/den" strings (bare integers allowed); floats are
# rejected. Writing emits atoms in lexicographic order.

def to_json_dict(d: FiniteJointDistribution) -> dict:
    return {
        "dim": d.dim,
        "atoms": [
            {"x": [format_rational(v) for v in x], "p": format_rational(p)}
            for x, p in d.atoms
        ],
    }


def from_json_dict(obj: dict) -> FiniteJointDistribution:
    try:
        dim = obj["dim"]
        raw_atoms = obj["atoms"]
    except (TypeError, KeyError) as exc:
        raise ValueError(f"distribution JSON needs 'dim' and 'atoms': missing {exc}") from exc
    if not isinstance(dim, int):
        raise ValueError(f"'dim' must be an integer, got {dim!r}")
    entries = []
    for k, atom in enumerate(raw_atoms):
        try:
            vector = [as_rational(v) for v in atom["x"]]
            prob = as_rational(atom["p"])
        except (TypeError, KeyError, ValueError) as exc:
            raise ValueError(f"bad atom #{k}: {exc}") from exc
        entries.append((vector, prob))
    return make_pmf(dim, entries)
