"""Measurement-schedule construction and verification.

Two constructions are provided: a fixed table of nine bases that works for
any properly 4-colored topology, and a logarithmic-size construction for
complete graphs built from three-row column patterns.  ``verify_cover``
checks the defining property: for every edge, the schedule's restricted
axis pairs must include all nine elements of {X,Y,Z}^2.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .pauli import (
    SIGMA_0,
    SIGMA_1,
    SIGMA_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ColumnSubstring,
    PauliString,
    weight,
)
from .topology import Coloring, TopologyGraph, four_coloring, greedy_coloring, is_proper


class ScheduleError(ValueError):
    """Raised when a schedule cannot be built or parsed from the given input."""


# Nine measurement bases covering {X,Y,Z}^2 on every ordered pair of the four
# columns; vertex columns are assigned by color class.
TABLE9_ROWS = (
    "XXXX",
    "XYYY",
    "XZZZ",
    "YXZY",
    "YYXZ",
    "YZYX",
    "ZXYZ",
    "ZYZX",
    "ZZXY",
)

_PAIR_INDEX = {(a, b): 3 * i + j for i, a in enumerate("XYZ") for j, b in enumerate("XYZ")}
_ALL_PAIRS = tuple(a + b for a in "XYZ" for b in "XYZ")
_AXIS_CODE = {"X": 0, "Y": 1, "Z": 2}


@dataclass(frozen=True)
class MeasurementSchedule:
    """Ordered list of full-weight measurement bases of a common length.

    ``construction`` is a provenance label for reporting only; it does not
    participate in equality.
    """

    bases: tuple[PauliString, ...]
    construction: str = field(default="manual", compare=False)

    def __post_init__(self) -> None:
        if not self.bases:
            raise ScheduleError("schedule needs at least one basis")
        n = self.bases[0].n
        for b in self.bases:
            if b.n != n:
                raise ScheduleError("all bases must have the same length")
            if weight(b) != n:
                raise ScheduleError(f"basis {b} is not full-weight")

    @property
    def n(self) -> int:
        return self.bases[0].n

    def __len__(self) -> int:
        return len(self.bases)

    def axis_codes(self) -> np.ndarray:
        """(len, n) array of axis codes X=0, Y=1, Z=2, one row per basis."""
        return np.array(
            [[_AXIS_CODE[b.axis_at(v)] for v in range(self.n)] for b in self.bases],
            dtype=np.int8,
        )


@dataclass(frozen=True)
class CoverageReport:
    covered: bool
    per_edge_missing: dict[tuple[int, int], frozenset[str]]
    exact: bool


def verify_cover(g: TopologyGraph, s: MeasurementSchedule) -> CoverageReport:
    """Check per-edge coverage of the nine ordered axis pairs.

    ``covered`` means every pair appears at least once on every edge;
    ``exact`` means every pair appears exactly once on every edge.
    """
    if s.n != g.n:
        raise ScheduleError(f"schedule length {s.n} does not match vertex count {g.n}")
    codes = s.axis_codes()
    missing: dict[tuple[int, int], frozenset[str]] = {}
    exact = True
    for u, v in g.edge_list:
        counts = np.bincount(codes[:, u] * 3 + codes[:, v], minlength=9)
        if counts.min() == 0:
            gaps = frozenset(_ALL_PAIRS[i] for i in np.flatnonzero(counts == 0))
            missing[(u, v)] = gaps
        if not np.all(counts == 1):
            exact = False
    covered = not missing
    return CoverageReport(covered, missing, covered and exact)


def table9_schedule(g: TopologyGraph, c: Coloring) -> MeasurementSchedule:
    """Nine bases from the fixed 4-column table, one column per color class.

    Requires a proper coloring of ``g`` with at most 4 colors; every edge then
    sees the nine axis pairs exactly once.
    """
    if c.color_count > 4:
        raise ScheduleError(f"coloring uses {c.color_count} colors; at most 4 supported")
    if len(c.colors) != g.n:
        raise ScheduleError("coloring does not match vertex count")
    if not is_proper(g, c):
        raise ScheduleError("coloring is not proper for this graph")
    bases = tuple(
        PauliString.from_text("".join(row[c.color_of(v)] for v in range(g.n)))
        for row in TABLE9_ROWS
    )
    return MeasurementSchedule(bases, construction="table9")


def schedule_size_formula(n: int) -> int:
    """Basis count of the complete-graph construction: 3*(1 + 2*ceil(log2(n-2)))."""
    if n < 4:
        raise ScheduleError("formula applies to complete graphs with n >= 4")
    return 3 * (1 + 2 * math.ceil(math.log2(n - 2)))


def _kn_column_patterns(n: int) -> list[list[ColumnSubstring]]:
    """Per-block column-pattern layout for the complete-graph construction.

    Block 1: constant column cycling start, cyclic column everywhere else.
    Blocks 1+t (t=1..L) split columns 3..n by bit (L-t) of the 0-based column
    index into sigma_1/sigma_2 halves; blocks 1+L+t repeat with the roles
    swapped.  Any two distinct columns >= 3 differ at some bit, so some block
    pairs them as (sigma_1, sigma_2) and a later one as (sigma_2, sigma_1).
    """
    levels = math.ceil(math.log2(n - 2))
    blocks = 1 + 2 * levels
    cycle = (SIGMA_X, SIGMA_Y, SIGMA_Z)
    layout: list[list[ColumnSubstring]] = []
    for b in range(1, blocks + 1):
        cols = [cycle[(b - 1) % 3], SIGMA_0]
        for c in range(n - 2):
            if b == 1:
                pat = SIGMA_0
            else:
                t = b - 1 if b <= 1 + levels else b - 1 - levels
                bit = (c >> (levels - t)) & 1
                first, second = (SIGMA_1, SIGMA_2) if b <= 1 + levels else (SIGMA_2, SIGMA_1)
                pat = first if bit == 0 else second
            cols.append(pat)
        layout.append(cols)
    return layout


def kn_log_schedule(n: int) -> MeasurementSchedule:
    """Covering schedule for the complete graph K_n using the formula-size
    number of bases, assembled from three-row column patterns.

    Raises for n < 4; small complete graphs are 4-colorable, so
    :func:`table9_schedule` handles them with nine bases.
    """
    if n < 4:
        raise ScheduleError("construction needs n >= 4; use table9_schedule for smaller graphs")
    bases = []
    for cols in _kn_column_patterns(n):
        for r in range(3):
            bases.append(PauliString.from_text("".join(col.rows[r] for col in cols)))
    return MeasurementSchedule(tuple(bases), construction="knlog")


def lower_bound(g: TopologyGraph) -> int:
    """9 for any graph with an edge (each basis yields one of the nine required
    pairs per edge), 0 otherwise.  Not claimed tight beyond small cliques."""
    return 9 if g.edges else 0


def general_schedule(g: TopologyGraph) -> MeasurementSchedule:
    """Dispatch: table of nine when a proper 4-coloring is found, otherwise the
    complete-graph construction compressed onto color classes."""
    if not g.edges:
        raise ScheduleError("graph has no edges; nothing to cover")
    result = four_coloring(g)
    if result.within_four:
        return table9_schedule(g, result.coloring)
    coloring = result.coloring if is_proper(g, result.coloring) else greedy_coloring(g)
    if coloring.color_count <= 4:
        return table9_schedule(g, coloring)
    template = kn_log_schedule(max(coloring.color_count, 4))
    bases = tuple(
        PauliString.from_text("".join(tb.axis_at(coloring.color_of(v)) for v in range(g.n)))
        for tb in template.bases
    )
    return MeasurementSchedule(bases, construction="knlog-colored")


class _CoverState:
    """Mutable coverage bookkeeping for the local search: per-edge pair counts
    plus the total number of (edge, pair) slots still uncovered."""

    def __init__(self, g: TopologyGraph, rows: list[list[str]]):
        self.g = g
        self.rows = rows
        self.counts: dict[tuple[int, int], list[int]] = {e: [0] * 9 for e in g.edge_list}
        self.uncovered = 9 * len(self.counts)
        for idx in range(len(rows)):
            self._apply_row(idx, +1)

    def _bump(self, edge: tuple[int, int], pair: tuple[str, str], delta: int) -> None:
        c = self.counts[edge]
        i = _PAIR_INDEX[pair]
        if delta > 0 and c[i] == 0:
            self.uncovered -= 1
        c[i] += delta
        if delta < 0 and c[i] == 0:
            self.uncovered += 1

    def _apply_row(self, idx: int, delta: int) -> None:
        row = self.rows[idx]
        for u, v in self.counts:
            self._bump((u, v), (row[u], row[v]), delta)

    def mutate(self, idx: int, site: int, axis: str) -> int:
        """Set rows[idx][site] = axis; returns the change in uncovered count."""
        before = self.uncovered
        row = self.rows[idx]
        old = row[site]
        for u in self.g.neighbors(site):
            edge = (min(u, site), max(u, site))
            pair_old = (old, row[u]) if site < u else (row[u], old)
            pair_new = (axis, row[u]) if site < u else (row[u], axis)
            self._bump(edge, pair_old, -1)
            self._bump(edge, pair_new, +1)
        row[site] = axis
        return self.uncovered - before


def heuristic_minimize(
    g: TopologyGraph, seed: int = 0, iteration_budget: int = 20_000
) -> MeasurementSchedule:
    """Search for a covering schedule shorter than the constructed one.

    Hill-climbing on the uncovered-pair count: repeatedly drop one basis and
    repair by single-site mutations that never increase the uncovered count,
    with ties broken by the seeded RNG.  The result always passes
    :func:`verify_cover` and is never longer than the construction's output.
    """
    start = general_schedule(g)
    rng = random.Random(seed)
    best = [[b.axis_at(v) for v in range(g.n)] for b in start.bases]
    sites = [v for v in range(g.n) if g.degree(v) > 0]
    moves_left = iteration_budget
    floor = max(lower_bound(g), 1)

    improved = True
    while improved and moves_left > 0 and len(best) > floor:
        improved = False
        for ridx in rng.sample(range(len(best)), len(best)):
            trial = [row.copy() for i, row in enumerate(best) if i != ridx]
            state = _CoverState(g, trial)
            budget = min(2_000, moves_left)
            used = 0
            while state.uncovered > 0 and used < budget:
                used += 1
                i = rng.randrange(len(trial))
                v = rng.choice(sites)
                old_axis = trial[i][v]
                axis = rng.choice([a for a in "XYZ" if a != old_axis])
                if state.mutate(i, v, axis) > 0:
                    state.mutate(i, v, old_axis)
            moves_left -= used
            if state.uncovered == 0:
                best = trial
                improved = True
                break
            if moves_left <= 0:
                break

    bases = tuple(PauliString.from_text("".join(r)) for r in best)
    return MeasurementSchedule(bases, construction="search")


def schedule_to_text(s: MeasurementSchedule) -> str:
    return "\n".join(str(b) for b in s.bases) + "\n"


def parse_schedule_text(text: str) -> MeasurementSchedule:
    """Parse one full-weight basis per non-empty line; '#' starts a comment."""
    bases = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            p = PauliString.from_text(line)
        except ValueError as exc:
            raise ScheduleError(f"line {lineno}: {exc}") from None
        if weight(p) != p.n:
            raise ScheduleError(f"line {lineno}: basis {line!r} contains identity sites")
        bases.append(p)
    if not bases:
        raise ScheduleError("schedule file contains no bases")
    return MeasurementSchedule(tuple(bases), construction="file")


def schedule_to_json_dict(s: MeasurementSchedule, report: CoverageReport) -> dict:
    return {
        "n": s.n,
        "bases": [str(b) for b in s.bases],
        "construction": s.construction,
        "covered": report.covered,
        "exact": report.exact,
    }


def schedule_to_json(s: MeasurementSchedule, report: CoverageReport) -> str:
    return json.dumps(schedule_to_json_dict(s, report), indent=2, sort_keys=True) + "\n"
