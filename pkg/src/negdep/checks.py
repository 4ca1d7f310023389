"""Deciders for negative-dependence properties of finite joint laws.

Every checker returns a Verdict whose FALSE outcome carries a witness that
can be re-evaluated from scratch (see :func:`verify_witness`); enumeration
and witness selection are deterministic, and the block-conditioning checkers
can fan their independent cells out over worker processes without changing
any output.

Properties:

* lower/upper orthant bounds (joint tail probabilities vs products);
* negative association (all increasing functions of two disjoint blocks are
  nonpositively correlated, reduced to pairs of upper sets);
* negative supermodular dependence (below the independent copy in the
  supermodular order);
* negative regression / left-tail / right-tail dependence (conditional laws
  stochastically decreasing in the conditioning point; equality, weak lower
  or strict upper conditioning events), plus their single-coordinate forms.

The regression-style checkers screen each conditioning pair on the maximal
observed block first: the stochastic order is closed under coordinate
projections, so the full-complement comparison decides the cell and the
per-subset scan runs only to locate a minimal witness.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .distributions import (
    EQ,
    LOWER,
    UPPER,
    ConditioningEvent,
    FiniteJointDistribution,
    Vector,
    eq_event,
    independent_copy,
    lower_event,
    permutation_distribution,
    upper_event,
)
from .errors import (
    Caps,
    EnumerationCapExceeded,
    GridTooLarge,
    ImplicationViolation,
    InternalConsistencyError,
    default_caps,
)
from .rationals import NEG_INF, POS_INF, Extended, as_rational
from .stochorder import StVerdict, UpperSetViolation, st_leq, st_leq_uppersets
from .supermodular import GridFunction, supermodular_leq, verify_supermodular_witness
from .uppersets import UpperSet, enumerate_upper_index_sets, from_members

ZERO = Fraction(0)
ONE = Fraction(1)

WEAK = "weak"
STRICT = "strict"

PROPERTY_NAMES = (
    "na", "nsmd", "nod", "nlod", "nuod",
    "nrd", "nltd", "nrtd", "nrd1", "nltd1", "nrtd1",
)


# -- verdicts and witnesses -------------------------------------------------

@dataclass(frozen=True)
class CheckStats:
    """What an enumeration actually examined before reaching its verdict."""

    cells: int = 0                # (I, J) or block-pair cells
    conditioning_pairs: int = 0   # conditioning-point pairs or grid corners
    st_checks: int = 0
    upper_sets: int = 0

    def plus(self, other: "CheckStats") -> "CheckStats":
        return CheckStats(
            self.cells + other.cells,
            self.conditioning_pairs + other.conditioning_pairs,
            self.st_checks + other.st_checks,
            self.upper_sets + other.upper_sets,
        )


@dataclass(frozen=True)
class Verdict:
    prop: str
    holds: bool
    witness: object | None
    stats: CheckStats
    definitive: bool = True  # False when a TRUE answer was size-restricted


@dataclass(frozen=True)
class OrthantWitness:
    side: str                       # "lower" | "upper"
    corner: tuple[Extended, ...]
    joint: Fraction
    product: Fraction


@dataclass(frozen=True)
class AssociationWitness:
    block1: tuple[int, ...]
    block2: tuple[int, ...]
    upper1: UpperSet
    upper2: UpperSet
    p_joint: Fraction
    p1: Fraction
    p2: Fraction


@dataclass(frozen=True)
class SupermodularWitness:
    function: GridFunction
    gap: Fraction
    left: Fraction    # E[psi] under the law itself
    right: Fraction   # E[psi] under its independent copy


@dataclass(frozen=True)
class RegressionWitness:
    kind: str                          # eq | lower | upper
    variant: str                       # weak | strict (tail kinds only)
    given: tuple[int, ...]             # conditioning block J
    observed: tuple[int, ...]          # violating block I
    point_low: tuple[Extended, ...]
    point_high: tuple[Extended, ...]
    violation: UpperSetViolation       # on the conditional laws of I
    mean_low: tuple[Fraction, ...]     # coordinatewise means of [X_I | low]
    mean_high: tuple[Fraction, ...]


@dataclass(frozen=True)
class MonotonicityWitness:
    theta_low: tuple
    theta_high: tuple
    violation: UpperSetViolation


@dataclass(frozen=True)
class ConjectureWitness:
    raised: tuple[int, ...]            # block conditioned from below (>=)
    lowered: tuple[int, ...]           # block conditioned from above (<=)
    pinned: tuple[int, ...]            # block conditioned by equality
    observed: tuple[int, ...]          # block whose law must decrease
    # each triple: thresholds for the raised block, the lowered block, and
    # the pinned block's exact point
    triple_low: tuple[tuple[Extended, ...], tuple[Extended, ...], Vector]
    triple_high: tuple[tuple[Extended, ...], tuple[Extended, ...], Vector]
    violation: UpperSetViolation


def _require_joint(d: FiniteJointDistribution) -> None:
    if d.dim < 2:
        raise ValueError("dependence checks need dimension >= 2")


def _subsets(indices: Sequence[int], max_size: int | None = None) -> list[tuple[int, ...]]:
    """Nonempty subsets ordered by (size, lex)."""
    cap = len(indices) if max_size is None else min(max_size, len(indices))
    out: list[tuple[int, ...]] = []
    for size in range(1, cap + 1):
        out.extend(itertools.combinations(indices, size))
    return out


# -- orthant dependence -------------------------------------------------------

def _axis_positions(d: FiniteJointDistribution):
    axes = d.support_grid()
    pos = [{v: k for k, v in enumerate(ax)} for ax in axes]
    return axes, pos


def _orthant_scan(d: FiniteJointDistribution, side: str) -> Verdict:
    """Compare the joint orthant mass with the product of marginal masses.

    Both sides are step functions jumping only at support values, so the
    per-axis corner grid is exhaustive; the upper side additionally needs a
    "no constraint" sentinel per axis (threshold below every support value).
    Cumulative sums keep the scan linear in the grid size.

    Lower side, axis positions k = 0..s-1: corner value axes[k], cell mass
    P(rank <= k). Upper side, positions k = 0..s: corner value -inf for
    k = 0 and axes[k-1] for k >= 1 (the event {X > axes[k-1]} holds iff
    rank >= k), cell mass P(rank >= k).
    """
    _require_joint(d)
    axes, pos = _axis_positions(d)
    n = d.dim
    upper = side == "upper"
    ext_sizes = [len(ax) + (1 if upper else 0) for ax in axes]

    strides = [0] * n
    acc = 1
    for a in range(n - 1, -1, -1):
        strides[a] = acc
        acc *= ext_sizes[a]
    cells = [ZERO] * acc
    for x, p in d.atoms:
        k = sum(pos[a][x[a]] * strides[a] for a in range(n))
        cells[k] += p

    if upper:
        # suffix sums: descending flat order updates base after base + step
        for a in range(n):
            step = strides[a]
            for base in range(acc - 1, -1, -1):
                if (base // step) % ext_sizes[a] + 1 < ext_sizes[a]:
                    cells[base] += cells[base + step]
    else:
        for a in range(n):
            step = strides[a]
            for base in range(acc):
                if (base // step) % ext_sizes[a] > 0:
                    cells[base] += cells[base - step]

    marg = []
    for a in range(n):
        m = d.marginal([a + 1]).as_dict()
        line = [m.get((v,), ZERO) for v in axes[a]]
        if upper:
            for k in range(len(line) - 2, -1, -1):
                line[k] += line[k + 1]
            line.append(ZERO)  # position s: threshold at the max, empty event
        else:
            for k in range(1, len(line)):
                line[k] += line[k - 1]
        marg.append(line)

    corners = 0
    witness = None

    def corner_label(position):
        if upper:
            return tuple(NEG_INF if k == 0 else axes[a][k - 1]
                         for a, k in enumerate(position))
        return tuple(axes[a][k] for a, k in enumerate(position))

    def scan(a, base, prod, position):
        nonlocal corners, witness
        if a == n:
            corners += 1
            joint = cells[base]
            if joint > prod:
                witness = OrthantWitness(side, corner_label(position), joint, prod)
            return
        for k in range(ext_sizes[a]):
            scan(a + 1, base + k * strides[a], prod * marg[a][k], position + [k])
            if witness is not None:
                return

    scan(0, 0, ONE, [])
    name = "nlod" if side == "lower" else "nuod"
    return Verdict(name, witness is None, witness,
                   CheckStats(conditioning_pairs=corners))


def check_nlod(d: FiniteJointDistribution) -> Verdict:
    """P(X <= x) <= prod P(X_i <= x_i) at every corner."""
    return _orthant_scan(d, "lower")


def check_nuod(d: FiniteJointDistribution) -> Verdict:
    """P(X > x) <= prod P(X_i > x_i) at every corner."""
    return _orthant_scan(d, "upper")


def check_nod(d: FiniteJointDistribution) -> Verdict:
    """Both orthant bounds."""
    lower = check_nlod(d)
    if not lower.holds:
        return replace(lower, prop="nod")
    upper = check_nuod(d)
    return Verdict("nod", upper.holds, upper.witness, lower.stats.plus(upper.stats))


# -- negative association ----------------------------------------------------

def _block_pairs(n: int, max_block: int | None) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    subsets = _subsets(range(1, n + 1), max_block)
    rank = {s: k for k, s in enumerate(subsets)}
    pairs = []
    for a1 in subsets:
        taken = set(a1)
        for a2 in subsets:
            if rank[a2] > rank[a1] and not taken & set(a2):
                pairs.append((a1, a2))
    return pairs


def _scan_association_cell(args) -> tuple[AssociationWitness | None, CheckStats]:
    d, a1, a2, caps = args
    cols1 = [j - 1 for j in a1]
    cols2 = [j - 1 for j in a2]
    joint: dict[tuple[Vector, Vector], Fraction] = {}
    for x, p in d.atoms:
        key = (tuple(x[c] for c in cols1), tuple(x[c] for c in cols2))
        joint[key] = joint.get(key, ZERO) + p
    support1 = sorted({a for a, _ in joint})
    support2 = sorted({b for _, b in joint})
    p1 = {a: ZERO for a in support1}
    p2 = {b: ZERO for b in support2}
    for (a, b), p in joint.items():
        p1[a] += p
        p2[b] += p

    upper2 = list(enumerate_upper_index_sets(support2, cap=caps.max_upper_sets))
    examined = 0
    stats_upper = len(upper2)
    for idx1 in enumerate_upper_index_sets(support1, cap=caps.max_upper_sets):
        stats_upper += 1
        in1 = [support1[i] for i in idx1]
        mass1 = sum((p1[a] for a in in1), ZERO)
        row = {b: ZERO for b in support2}
        for a in in1:
            for b in support2:
                q = joint.get((a, b))
                if q:
                    row[b] += q
        for idx2 in upper2:
            examined += 1
            mass12 = sum((row[support2[i]] for i in idx2), ZERO)
            mass2 = sum((p2[support2[i]] for i in idx2), ZERO)
            if mass12 > mass1 * mass2:
                witness = AssociationWitness(
                    a1, a2,
                    from_members([support1[i] for i in idx1]),
                    from_members([support2[i] for i in idx2]),
                    mass12, mass1, mass2,
                )
                return witness, CheckStats(
                    cells=1, conditioning_pairs=examined, upper_sets=stats_upper
                )
    return None, CheckStats(cells=1, conditioning_pairs=examined, upper_sets=stats_upper)


def check_na(d: FiniteJointDistribution, max_block: int | None = None,
             caps: Caps | None = None, jobs: int = 1) -> Verdict:
    """Negative association: for all disjoint blocks A1, A2 and upper sets
    U, V of their projected supports, P(both) <= P(U) P(V).

    Increasing functions on a finite support are nonnegative combinations of
    upper-set indicators plus constants, and constants drop out of the
    covariance, so this family of rectangle inequalities is exhaustive.
    """
    _require_joint(d)
    caps = caps or default_caps()
    pairs = _block_pairs(d.dim, max_block)
    cells = [(d, a1, a2, caps) for a1, a2 in pairs]
    witness, stats = _run_cells(_scan_association_cell, cells, jobs)
    restricted = max_block is not None and max_block < d.dim - 1
    return Verdict("na", witness is None, witness, stats,
                   definitive=witness is not None or not restricted)


# -- negative supermodular dependence -----------------------------------------

def check_nsmd(d: FiniteJointDistribution, caps: Caps | None = None) -> Verdict:
    """Below the independent copy in the supermodular order."""
    _require_joint(d)
    perp = independent_copy(d)
    verdict = supermodular_leq(d, perp, caps=caps)
    if verdict.holds:
        return Verdict("nsmd", True, None, CheckStats(conditioning_pairs=verdict.grid_points))
    values = verdict.witness.as_dict()
    witness = SupermodularWitness(
        function=verdict.witness,
        gap=verdict.gap,
        left=d.expectation(lambda v: values[v]),
        right=perp.expectation(lambda v: values[v]),
    )
    return Verdict("nsmd", False, witness,
                   CheckStats(conditioning_pairs=verdict.grid_points))


# -- regression-style dependence ----------------------------------------------

def _tail_event(kind: str, variant: str, indices, thresholds) -> ConditioningEvent:
    if kind == EQ:
        return eq_event(indices, thresholds)
    if kind == LOWER:
        return lower_event(indices, thresholds, strict=(variant == STRICT))
    return upper_event(indices, thresholds, strict=(variant == WEAK))


def _conditioning_labels(d: FiniteJointDistribution, J: tuple[int, ...],
                         kind: str) -> list[tuple[Extended, ...]]:
    """Candidate conditioning points for the block J, in lexicographic order.

    Equality events run over the support of the J-marginal. Tail events run
    over the per-coordinate support values with an unbounded sentinel (the
    events depend on a threshold only through its position relative to the
    support, so this grid is exhaustive); zero-probability labels are skipped
    by the caller.
    """
    if kind == EQ:
        return [x for x, _ in d.marginal(list(J)).atoms]
    axes = d.support_grid()
    grids = []
    for j in J:
        values = list(axes[j - 1])
        grids.append([NEG_INF] + values if kind == UPPER else values + [POS_INF])
    return list(itertools.product(*grids))


def _ext_leq(a: Sequence[Extended], b: Sequence[Extended]) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _CellContext:
    """Per-cell machinery: event masks, cached conditional laws, cached orders."""

    def __init__(self, d, J, kind, variant, caps, st_mode):
        self.d = d
        self.J = J
        self.kind = kind
        self.variant = variant
        self.caps = caps
        self.st_mode = st_mode
        self.i_max = tuple(j for j in range(1, d.dim + 1) if j not in J)
        self.cols = [j - 1 for j in self.i_max]
        self.law_cache: dict[int, FiniteJointDistribution] = {}
        self.proj_cache: dict[tuple[int, tuple[int, ...]], FiniteJointDistribution] = {}
        self.st_cache: dict[tuple[int, int], StVerdict] = {}
        self.st_checks = 0
        self.upper_sets = 0

    def mask_of(self, label) -> int:
        event = _tail_event(self.kind, self.variant, self.J, label)
        mask = 0
        for k, (x, _) in enumerate(self.d.atoms):
            if event.matches(x):
                mask |= 1 << k
        return mask

    def law(self, mask: int) -> FiniteJointDistribution:
        cached = self.law_cache.get(mask)
        if cached is not None:
            return cached
        merged: dict[Vector, Fraction] = {}
        total = ZERO
        m = mask
        atoms = self.d.atoms
        while m:
            low = m & -m
            k = low.bit_length() - 1
            m ^= low
            x, p = atoms[k]
            total += p
            key = tuple(x[c] for c in self.cols)
            merged[key] = merged.get(key, ZERO) + p
        law = FiniteJointDistribution(
            len(self.cols), tuple(sorted((x, p / total) for x, p in merged.items()))
        )
        self.law_cache[mask] = law
        return law

    def projected(self, mask: int, block: tuple[int, ...]) -> FiniteJointDistribution:
        if block == self.i_max:
            return self.law(mask)
        key = (mask, block)
        cached = self.proj_cache.get(key)
        if cached is None:
            positions = [self.i_max.index(j) + 1 for j in block]
            cached = self.law(mask).marginal(positions)
            self.proj_cache[key] = cached
        return cached

    def st_screen(self, mask_lo: int, mask_hi: int) -> StVerdict:
        """Does [X_Imax | high] <=st [X_Imax | low]?"""
        key = (mask_lo, mask_hi)
        cached = self.st_cache.get(key)
        if cached is None:
            cached = st_leq(self.law(mask_hi), self.law(mask_lo),
                            mode=self.st_mode, caps=self.caps)
            self.st_cache[key] = cached
            self.st_checks += 1
            self.upper_sets += cached.upper_sets_examined
        return cached


def _deterministic_upper_violation(ctx: _CellContext, law_hi, law_lo) -> UpperSetViolation:
    """First violating upper set in enumeration order, for the witness."""
    try:
        verdict = st_leq_uppersets(law_hi, law_lo, caps=ctx.caps)
        ctx.upper_sets += verdict.upper_sets_examined
        if not verdict.holds:
            return verdict.violation
    except EnumerationCapExceeded:
        pass
    verdict = st_leq(law_hi, law_lo, mode="fast")
    if verdict.holds:
        raise InternalConsistencyError("screen failed but no violation found")
    return verdict.violation


def _coordinate_means(law: FiniteJointDistribution) -> tuple[Fraction, ...]:
    means = [ZERO] * law.dim
    for x, p in law.atoms:
        for a, v in enumerate(x):
            means[a] += v * p
    return tuple(means)


def _scan_regression_cell(args) -> tuple[RegressionWitness | None, CheckStats]:
    d, J, kind, variant, caps, st_mode = args
    ctx = _CellContext(d, J, kind, variant, caps, st_mode)
    labels = _conditioning_labels(d, J, kind)
    masks = {}
    for label in labels:
        mask = ctx.mask_of(label)
        if mask:
            masks[label] = mask
    live = [lab for lab in labels if lab in masks]

    pairs_examined = 0
    for a_pos, low in enumerate(live):
        for high in live[a_pos + 1:]:
            if not _ext_leq(low, high):
                continue
            pairs_examined += 1
            mask_lo, mask_hi = masks[low], masks[high]
            if mask_lo == mask_hi:
                continue  # identical events, identical conditional laws
            screen = ctx.st_screen(mask_lo, mask_hi)
            if screen.holds:
                continue
            # violation somewhere; locate the minimal observed block
            for block in _subsets(ctx.i_max):
                law_hi = ctx.projected(mask_hi, block)
                law_lo = ctx.projected(mask_lo, block)
                sub = st_leq(law_hi, law_lo, mode=st_mode, caps=caps)
                ctx.st_checks += 1
                ctx.upper_sets += sub.upper_sets_examined
                if sub.holds:
                    continue
                violation = _deterministic_upper_violation(ctx, law_hi, law_lo)
                witness = RegressionWitness(
                    kind=kind, variant=variant, given=J, observed=block,
                    point_low=low, point_high=high, violation=violation,
                    mean_low=_coordinate_means(law_lo),
                    mean_high=_coordinate_means(law_hi),
                )
                stats = CheckStats(cells=1, conditioning_pairs=pairs_examined,
                                   st_checks=ctx.st_checks, upper_sets=ctx.upper_sets)
                return witness, stats
            raise InternalConsistencyError(
                "full-block comparison failed but every sub-block passed"
            )
    return None, CheckStats(cells=1, conditioning_pairs=pairs_examined,
                            st_checks=ctx.st_checks, upper_sets=ctx.upper_sets)


def _run_cells(scan: Callable, cells: list, jobs: int):
    """Run per-cell scans, sequentially or in a process pool.

    The winning witness is the first violating cell in order, and the stats
    are summed as if the scan had stopped right there, so worker count never
    changes the outcome.
    """
    if jobs <= 1 or len(cells) <= 1:
        total = CheckStats()
        for cell in cells:
            witness, stats = scan(cell)
            total = total.plus(stats)
            if witness is not None:
                return witness, total
        return None, total
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(scan, cells, chunksize=max(1, len(cells) // (4 * jobs))))
    total = CheckStats()
    for witness, stats in results:
        total = total.plus(stats)
        if witness is not None:
            return witness, total
    return None, total


def _check_regression_family(d, kind, prop, max_j, variant, caps, st_mode, jobs):
    _require_joint(d)
    if variant not in (WEAK, STRICT):
        raise ValueError(f"unknown variant {variant!r}")
    caps = caps or default_caps()
    limit = d.dim - 1 if max_j is None else min(max_j, d.dim - 1)
    blocks = _subsets(range(1, d.dim + 1), limit)
    cells = [(d, J, kind, variant, caps, st_mode) for J in blocks]
    witness, stats = _run_cells(_scan_regression_cell, cells, jobs)
    restricted = limit < d.dim - 1
    return Verdict(prop, witness is None, witness, stats,
                   definitive=witness is not None or not restricted)


def check_nrd(d: FiniteJointDistribution, max_j: int | None = None,
              caps: Caps | None = None, st_mode: str = "fast",
              jobs: int = 1) -> Verdict:
    """Conditional laws decrease stochastically in equality conditioning points."""
    return _check_regression_family(d, EQ, "nrd", max_j, WEAK, caps, st_mode, jobs)


def check_nltd(d: FiniteJointDistribution, max_j: int | None = None,
               variant: str = WEAK, caps: Caps | None = None,
               st_mode: str = "fast", jobs: int = 1) -> Verdict:
    """Same with lower-tail conditioning {X_J <= x_J} (strict variant: <)."""
    return _check_regression_family(d, LOWER, "nltd", max_j, variant, caps, st_mode, jobs)


def check_nrtd(d: FiniteJointDistribution, max_j: int | None = None,
               variant: str = WEAK, caps: Caps | None = None,
               st_mode: str = "fast", jobs: int = 1) -> Verdict:
    """Same with upper-tail conditioning {X_J > x_J} (strict variant: >=)."""
    return _check_regression_family(d, UPPER, "nrtd", max_j, variant, caps, st_mode, jobs)


def check_nrd1(d, caps=None, st_mode="fast", jobs=1) -> Verdict:
    v = check_nrd(d, max_j=1, caps=caps, st_mode=st_mode, jobs=jobs)
    return replace(v, prop="nrd1", definitive=True)


def check_nltd1(d, variant=WEAK, caps=None, st_mode="fast", jobs=1) -> Verdict:
    v = check_nltd(d, max_j=1, variant=variant, caps=caps, st_mode=st_mode, jobs=jobs)
    return replace(v, prop="nltd1", definitive=True)


def check_nrtd1(d, variant=WEAK, caps=None, st_mode="fast", jobs=1) -> Verdict:
    v = check_nrtd(d, max_j=1, variant=variant, caps=caps, st_mode=st_mode, jobs=jobs)
    return replace(v, prop="nrtd1", definitive=True)


# -- stochastic monotonicity of a parametrized family --------------------------

def check_stoch_increasing(family: Mapping[tuple, FiniteJointDistribution],
                           caps: Caps | None = None,
                           st_mode: str = "fast") -> Verdict:
    """Is theta <= theta' implies family[theta] <=st family[theta']?"""
    items = sorted(family.items())
    pairs = 0
    stats_st = 0
    for k, (theta, dist) in enumerate(items):
        for theta2, dist2 in items[k + 1:]:
            if not _ext_leq(theta, theta2):
                continue
            pairs += 1
            verdict = st_leq(dist, dist2, mode=st_mode, caps=caps)
            stats_st += 1
            if not verdict.holds:
                violation = verdict.violation
                if violation is None:
                    violation = st_leq_uppersets(dist, dist2, caps=caps).violation
                witness = MonotonicityWitness(theta, theta2, violation)
                return Verdict("stoch_increasing", False, witness,
                               CheckStats(conditioning_pairs=pairs, st_checks=stats_st))
    return Verdict("stoch_increasing", True, None,
                   CheckStats(conditioning_pairs=pairs, st_checks=stats_st))


# -- implication audit ---------------------------------------------------------

#: Implications safe to assert between definitive verdicts. The open
#: questions (full regression dependence implying the tail forms or
#: association) are deliberately absent.
SAFE_IMPLICATIONS: tuple[tuple[str, str], ...] = (
    ("na", "nsmd"), ("na", "nod"), ("nsmd", "nod"),
    ("nrd", "nrd1"), ("nrd1", "nltd1"), ("nrd1", "nrtd1"),
    ("nltd", "nltd1"), ("nltd1", "nlod"), ("nrtd", "nrtd1"), ("nrtd1", "nuod"),
    ("nltd", "nlod"), ("nrtd", "nuod"),
)


@dataclass(frozen=True)
class AuditReport:
    verdicts: dict
    skipped: dict            # property -> reason string
    implications_checked: int
    exploratory: tuple       # observed (holds, fails) pairs worth a closer look


def audit_implications(d: FiniteJointDistribution, max_j: int | None = None,
                       caps: Caps | None = None, st_mode: str = "fast",
                       jobs: int = 1, explore: bool = False) -> AuditReport:
    """Run every checker and assert the safe implications between them.

    A failed implication is a bug in this artifact, not a property of the
    input, and raises ImplicationViolation. Checkers that exceed their caps
    are recorded as skipped; TRUE verdicts weakened by a block-size cap are
    never used as antecedents.
    """
    caps = caps or default_caps()
    verdicts: dict[str, Verdict] = {}
    skipped: dict[str, str] = {}

    runners = {
        "nlod": lambda: check_nlod(d),
        "nuod": lambda: check_nuod(d),
        "nod": lambda: check_nod(d),
        "na": lambda: check_na(d, max_block=max_j, caps=caps, jobs=jobs),
        "nsmd": lambda: check_nsmd(d, caps=caps),
        "nrd": lambda: check_nrd(d, max_j=max_j, caps=caps, st_mode=st_mode, jobs=jobs),
        "nltd": lambda: check_nltd(d, max_j=max_j, caps=caps, st_mode=st_mode, jobs=jobs),
        "nrtd": lambda: check_nrtd(d, max_j=max_j, caps=caps, st_mode=st_mode, jobs=jobs),
        "nrd1": lambda: check_nrd1(d, caps=caps, st_mode=st_mode, jobs=jobs),
        "nltd1": lambda: check_nltd1(d, caps=caps, st_mode=st_mode, jobs=jobs),
        "nrtd1": lambda: check_nrtd1(d, caps=caps, st_mode=st_mode, jobs=jobs),
    }
    for name, run in runners.items():
        try:
            verdicts[name] = run()
        except (EnumerationCapExceeded, GridTooLarge) as exc:
            skipped[name] = f"{type(exc).__name__}: {exc}"

    checked = 0
    for antecedent, consequent in SAFE_IMPLICATIONS:
        va = verdicts.get(antecedent)
        vb = verdicts.get(consequent)
        if va is None or vb is None:
            continue
        if va.holds and va.definitive:
            checked += 1
            if not vb.holds:
                raise ImplicationViolation(
                    f"{antecedent} holds but {consequent} fails on the same law; "
                    f"witness: {vb.witness}"
                )

    exploratory = ()
    if explore:
        nrd = verdicts.get("nrd")
        notes = []
        if nrd is not None and nrd.holds and nrd.definitive:
            for name in ("nltd", "nrtd", "na"):
                v = verdicts.get(name)
                if v is not None and not v.holds:
                    notes.append(("nrd", name))
        exploratory = tuple(notes)
    return AuditReport(verdicts, skipped, checked, exploratory)


# -- mixed-conditioning monotonicity on permutation laws -----------------------

@dataclass(frozen=True)
class ConjectureReport:
    values: tuple[Fraction, ...]
    holds_on_instance: bool
    witness: ConjectureWitness | None
    stats: CheckStats


def _scan_conjecture_partition(args):
    d, raised, lowered, pinned, observed, caps, st_mode = args
    atoms = d.atoms
    axes = d.support_grid()

    # a label is (t_raised, t_lowered, t_pinned) with per-block tuples
    raised_grid = list(itertools.product(*(axes[j - 1] for j in raised)))
    lowered_grid = list(itertools.product(*(axes[j - 1] for j in lowered)))
    pinned_grid = ([x for x, _ in d.marginal(list(pinned)).atoms]
                   if pinned else [()])

    def mask_of(label) -> int:
        t_r, t_l, t_p = label
        mask = 0
        for k, (x, _) in enumerate(atoms):
            ok = all(x[j - 1] >= t for j, t in zip(raised, t_r))
            ok = ok and all(x[j - 1] <= t for j, t in zip(lowered, t_l))
            ok = ok and all(x[j - 1] == t for j, t in zip(pinned, t_p))
            if ok:
                mask |= 1 << k
        return mask

    labels = [
        (t_r, t_l, t_p)
        for t_r in raised_grid
        for t_l in lowered_grid
        for t_p in pinned_grid
    ]
    masks = {}
    for label in labels:
        m = mask_of(label)
        if m:
            masks[label] = m
    live = [lab for lab in labels if lab in masks]

    cols = [j - 1 for j in observed]

    def law(mask: int) -> FiniteJointDistribution:
        merged: dict[Vector, Fraction] = {}
        total = ZERO
        m = mask
        while m:
            low = m & -m
            k = low.bit_length() - 1
            m ^= low
            x, p = atoms[k]
            total += p
            key = tuple(x[c] for c in cols)
            merged[key] = merged.get(key, ZERO) + p
        return FiniteJointDistribution(
            len(cols), tuple(sorted((x, p / total) for x, p in merged.items()))
        )

    law_cache: dict[int, FiniteJointDistribution] = {}
    st_cache: dict[tuple[int, int], bool] = {}
    pairs = 0
    st_checks = 0
    for a_pos, low in enumerate(live):
        for high in live[a_pos + 1:]:
            flat_low = low[0] + low[1] + low[2]
            flat_high = high[0] + high[1] + high[2]
            if not _ext_leq(flat_low, flat_high):
                continue
            pairs += 1
            m_lo, m_hi = masks[low], masks[high]
            if m_lo == m_hi:
                continue
            key = (m_lo, m_hi)
            cached = st_cache.get(key)
            if cached is None:
                for m in (m_lo, m_hi):
                    if m not in law_cache:
                        law_cache[m] = law(m)
                verdict = st_leq(law_cache[m_hi], law_cache[m_lo],
                                 mode=st_mode, caps=caps)
                st_checks += 1
                cached = verdict.holds
                st_cache[key] = cached
            if cached:
                continue
            law_hi, law_lo = law_cache[m_hi], law_cache[m_lo]
            violation = st_leq_uppersets(law_hi, law_lo, caps=caps).violation
            witness = ConjectureWitness(
                raised=raised, lowered=lowered, pinned=pinned, observed=observed,
                triple_low=low, triple_high=high, violation=violation,
            )
            return witness, CheckStats(cells=1, conditioning_pairs=pairs,
                                       st_checks=st_checks)
    return None, CheckStats(cells=1, conditioning_pairs=pairs, st_checks=st_checks)


def check_conjecture(values: Sequence, max_n: int = 5,
                     caps: Caps | None = None, st_mode: str = "fast",
                     jobs: int = 1) -> ConjectureReport:
    """Exhaustive mixed-conditioning monotonicity check on one permutation law.

    Partitions the coordinates into a raised block (conditioned {X_I >= x}),
    a lowered block ({X_J <= x}), a pinned block ({X_K = x}) and a nonempty
    observed block, and tests that the observed conditional law decreases
    stochastically as the conditioning triple increases. Reports only on this
    instance; a found counterexample is re-verified from scratch first.
    """
    if len(values) > max_n:
        raise EnumerationCapExceeded(
            f"{len(values)} values exceed the guard of {max_n}"
        )
    if len(values) < 2:
        raise ValueError("need at least two values")
    caps = caps or default_caps()
    d = permutation_distribution(values)
    n = d.dim

    partitions = []
    for assignment in itertools.product(range(4), repeat=n):
        raised = tuple(k + 1 for k, a in enumerate(assignment) if a == 0)
        lowered = tuple(k + 1 for k, a in enumerate(assignment) if a == 1)
        pinned = tuple(k + 1 for k, a in enumerate(assignment) if a == 2)
        observed = tuple(k + 1 for k, a in enumerate(assignment) if a == 3)
        if not observed:
            continue
        if not (raised or lowered or pinned):
            continue  # nothing to vary
        partitions.append((d, raised, lowered, pinned, observed, caps, st_mode))

    witness, stats = _run_cells(_scan_conjecture_partition, partitions, jobs)
    if witness is not None:
        _reverify_conjecture_witness(d, witness)
    return ConjectureReport(tuple(as_rational(v) for v in values),
                            witness is None, witness, stats)


def _reverify_conjecture_witness(d: FiniteJointDistribution,
                                 w: ConjectureWitness) -> None:
    """Recompute the witness violation from scratch with first principles."""
    def conditional(triple):
        t_r, t_l, t_p = triple
        entries: dict[Vector, Fraction] = {}
        total = ZERO
        for x, p in d.atoms:
            if not all(x[j - 1] >= t for j, t in zip(w.raised, t_r)):
                continue
            if not all(x[j - 1] <= t for j, t in zip(w.lowered, t_l)):
                continue
            if not all(x[j - 1] == t for j, t in zip(w.pinned, t_p)):
                continue
            total += p
            key = tuple(x[j - 1] for j in w.observed)
            entries[key] = entries.get(key, ZERO) + p
        if total == 0:
            raise InternalConsistencyError("witness event has zero probability")
        return {x: p / total for x, p in entries.items()}

    law_lo = conditional(w.triple_low)
    law_hi = conditional(w.triple_high)
    u = w.violation.upper_set
    p_hi = sum((p for x, p in law_hi.items() if u.contains(x)), ZERO)
    p_lo = sum((p for x, p in law_lo.items() if u.contains(x)), ZERO)
    if not (p_hi == w.violation.p_left and p_lo == w.violation.p_right and p_hi > p_lo):
        raise InternalConsistencyError("conjecture witness failed re-verification")


# -- witness re-verification ----------------------------------------------------

def verify_witness(d: FiniteJointDistribution, verdict: Verdict) -> None:
    """Re-evaluate a FALSE verdict's witness from scratch; raise if it fails."""
    if verdict.holds:
        raise ValueError("nothing to verify on a TRUE verdict")
    w = verdict.witness
    if isinstance(w, OrthantWitness):
        n = d.dim
        if w.side == "lower":
            event = lower_event(range(1, n + 1), w.corner, strict=False)
            prod = ONE
            for j in range(1, n + 1):
                prod *= d.marginal([j]).mass_of(lower_event([1], [w.corner[j - 1]]))
        else:
            event = upper_event(range(1, n + 1), w.corner, strict=True)
            prod = ONE
            for j in range(1, n + 1):
                prod *= d.marginal([j]).mass_of(upper_event([1], [w.corner[j - 1]]))
        joint = d.mass_of(event)
        if not (joint == w.joint and prod == w.product and joint > prod):
            raise InternalConsistencyError("orthant witness failed re-verification")
        return
    if isinstance(w, AssociationWitness):
        cols1 = [j - 1 for j in w.block1]
        cols2 = [j - 1 for j in w.block2]
        joint = ZERO
        p1 = ZERO
        p2 = ZERO
        for x, p in d.atoms:
            in1 = w.upper1.contains(tuple(x[c] for c in cols1))
            in2 = w.upper2.contains(tuple(x[c] for c in cols2))
            if in1:
                p1 += p
            if in2:
                p2 += p
            if in1 and in2:
                joint += p
        if not (joint == w.p_joint and p1 == w.p1 and p2 == w.p2 and joint > p1 * p2):
            raise InternalConsistencyError("association witness failed re-verification")
        return
    if isinstance(w, SupermodularWitness):
        verify_supermodular_witness(w.function, d, independent_copy(d))
        values = w.function.as_dict()
        left = d.expectation(lambda v: values[v])
        right = independent_copy(d).expectation(lambda v: values[v])
        if not (left == w.left and right == w.right and left > right):
            raise InternalConsistencyError("supermodular witness failed re-verification")
        return
    if isinstance(w, RegressionWitness):
        ev_lo = _tail_event(w.kind, w.variant, w.given, w.point_low)
        ev_hi = _tail_event(w.kind, w.variant, w.given, w.point_high)
        law_lo = d.condition(ev_lo, keep=list(w.observed))
        law_hi = d.condition(ev_hi, keep=list(w.observed))
        u = w.violation.upper_set
        p_hi = sum((p for x, p in law_hi.atoms if u.contains(x)), ZERO)
        p_lo = sum((p for x, p in law_lo.atoms if u.contains(x)), ZERO)
        ok = (p_hi == w.violation.p_left and p_lo == w.violation.p_right
              and p_hi > p_lo
              and _coordinate_means(law_lo) == w.mean_low
              and _coordinate_means(law_hi) == w.mean_high)
        if not ok:
            raise InternalConsistencyError("regression witness failed re-verification")
        return
    raise TypeError(f"no re-verification for witness type {type(w).__name__}")
