"""Deciders for the usual stochastic order between finite joint laws.

Two independent algorithms answer "X <=st Y":

* upper-set sweep: P(X in U) <= P(Y in U) for every upper set U of the union
  support (may be exponential; capped);
* monotone coupling: feasibility of the transportation problem that routes
  the mass of X to the mass of Y along componentwise-increasing pairs,
  decided by exact max-flow (polynomial; the default).

Agreement of the two is a package invariant; ``mode="verify"`` checks it on
every call. Either failure mode yields an upper set U with P(X in U) >
P(Y in U), re-checkable by direct summation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .distributions import FiniteJointDistribution, Vector
from .errors import Caps, InternalConsistencyError, default_caps
from .maxflow import FlowNetwork, max_flow
from .uppersets import UpperSet, enumerate_upper_index_sets, from_members, upper_closure

_FIELD_BITS = 16
_FIELD_CAP = 1 << (_FIELD_BITS - 1)


def _pack_ranks(vectors: list[Vector], dim: int) -> tuple[list[int], int]:
    """Encode vectors as integers so componentwise <= is one int expression.

    Each coordinate is replaced by its rank in that axis's sorted value set,
    packed into 16-bit fields with a guard bit: x <= y componentwise iff
    ((packed_y | guards) - packed_x) keeps every guard bit set.
    """
    axes = [sorted({v[a] for v in vectors}) for a in range(dim)]
    if any(len(ax) >= _FIELD_CAP for ax in axes):
        raise ValueError("axis has too many distinct values to pack")
    rank = [{v: r for r, v in enumerate(ax)} for ax in axes]
    packed = [
        sum(rank[a][v[a]] << (_FIELD_BITS * a) for a in range(dim))
        for v in vectors
    ]
    guards = sum(_FIELD_CAP << (_FIELD_BITS * a) for a in range(dim))
    return packed, guards


@dataclass(frozen=True)
class Coupling:
    """Joint mass on pairs (x, y) with x <= y, certifying X <=st Y."""

    pairs: tuple[tuple[Vector, Vector, Fraction], ...]

    def validate(self, dX: FiniteJointDistribution, dY: FiniteJointDistribution) -> None:
        """Exact re-check of the marginal and support invariants."""
        rows: dict[Vector, Fraction] = {}
        cols: dict[Vector, Fraction] = {}
        for x, y, mass in self.pairs:
            if mass <= 0:
                raise InternalConsistencyError(f"coupling mass {mass} at {(x, y)}")
            if not all(a <= b for a, b in zip(x, y)):
                raise InternalConsistencyError(f"coupling pair {x} !<= {y}")
            rows[x] = rows.get(x, Fraction(0)) + mass
            cols[y] = cols.get(y, Fraction(0)) + mass
        if rows != dX.as_dict():
            raise InternalConsistencyError("coupling row sums differ from the left law")
        if cols != dY.as_dict():
            raise InternalConsistencyError("coupling column sums differ from the right law")


@dataclass(frozen=True)
class UpperSetViolation:
    """An upper set where the left law carries strictly more mass."""

    upper_set: UpperSet
    p_left: Fraction
    p_right: Fraction


@dataclass(frozen=True)
class StVerdict:
    holds: bool
    method: str
    coupling: Coupling | None = None
    violation: UpperSetViolation | None = None
    upper_sets_examined: int = 0


def _require_same_dim(dX, dY):
    if dX.dim != dY.dim:
        raise ValueError(f"dimension mismatch: {dX.dim} vs {dY.dim}")


def st_leq_uppersets(dX: FiniteJointDistribution, dY: FiniteJointDistribution,
                     caps: Caps | None = None) -> StVerdict:
    """Decide X <=st Y by sweeping every upper set of the union support."""
    _require_same_dim(dX, dY)
    caps = caps or default_caps()
    px = dX.as_dict()
    py = dY.as_dict()
    points = sorted(set(px) | set(py))
    zero = Fraction(0)
    examined = 0
    for idx in enumerate_upper_index_sets(points, cap=caps.max_upper_sets):
        examined += 1
        mass_x = sum((px.get(points[i], zero) for i in idx), zero)
        mass_y = sum((py.get(points[i], zero) for i in idx), zero)
        if mass_x > mass_y:
            members = tuple(points[i] for i in idx)
            return StVerdict(
                holds=False,
                method="uppersets",
                violation=UpperSetViolation(from_members(members), mass_x, mass_y),
                upper_sets_examined=examined,
            )
    return StVerdict(holds=True, method="uppersets", upper_sets_examined=examined)


def st_leq_coupling(dX: FiniteJointDistribution,
                    dY: FiniteJointDistribution) -> StVerdict:
    """Decide X <=st Y by exact transportation feasibility.

    TRUE comes with the coupling; FALSE converts the min cut into an upper
    set violation (the cut's deficient source set, upward closed).
    """
    _require_same_dim(dX, dY)
    xs = [x for x, _ in dX.atoms]
    ys = [y for y, _ in dY.atoms]
    packed, guards = _pack_ranks(xs + ys, dX.dim)
    px_packed = packed[: len(xs)]
    py_packed = packed[len(xs):]

    net = FlowNetwork("s", "t")
    for i, (x, p) in enumerate(dX.atoms):
        net.add_edge("s", ("x", i), p)
    for j, (y, q) in enumerate(dY.atoms):
        net.add_edge(("y", j), "t", q)
    for i, (x, p) in enumerate(dX.atoms):
        xi = px_packed[i]
        for j in range(len(ys)):
            if ((py_packed[j] | guards) - xi) & guards == guards:
                net.add_edge(("x", i), ("y", j), p)

    result = max_flow(net)
    if result.value == 1:
        pairs = []
        for (u, v), mass in result.flows.items():
            if isinstance(u, tuple) and u[0] == "x" and isinstance(v, tuple) and v[0] == "y":
                pairs.append((xs[u[1]], ys[v[1]], mass))
        coupling = Coupling(tuple(sorted(pairs)))
        coupling.validate(dX, dY)
        return StVerdict(holds=True, method="coupling", coupling=coupling)

    deficient = sorted(xs[i] for i in range(len(xs)) if ("x", i) in result.source_side)
    ambient = sorted(set(xs) | set(ys))
    upper = upper_closure(deficient, ambient)
    p_left = sum((dX.probability(v) for v in upper.points), Fraction(0))
    p_right = sum((dY.probability(v) for v in upper.points), Fraction(0))
    if p_left <= p_right:
        raise InternalConsistencyError("min cut did not produce a violating upper set")
    return StVerdict(
        holds=False,
        method="coupling",
        violation=UpperSetViolation(upper, p_left, p_right),
    )


def st_leq(dX: FiniteJointDistribution, dY: FiniteJointDistribution,
           mode: str = "fast", caps: Caps | None = None) -> StVerdict:
    """Decide X <=st Y.

    ``fast`` runs the coupling decider alone; ``verify`` additionally runs
    the upper-set sweep and treats any disagreement as an internal error.
    In verify mode a FALSE answer reports the sweep's witness (the first
    violating upper set in enumeration order).
    """
    if mode not in ("fast", "verify"):
        raise ValueError(f"unknown mode {mode!r}")
    by_flow = st_leq_coupling(dX, dY)
    if mode == "fast":
        return by_flow
    by_sets = st_leq_uppersets(dX, dY, caps=caps)
    if by_flow.holds != by_sets.holds:
        raise InternalConsistencyError(
            f"stochastic-order oracles disagree: coupling={by_flow.holds} "
            f"uppersets={by_sets.holds}"
        )
    return by_flow if by_flow.holds else by_sets
