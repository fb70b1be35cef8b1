"""Simulated cycle benchmarking against a ground-truth noise model.

For every basis in a schedule, each weight-1 and weight-2 observable that
matches the basis on its support decays as a * f^d with depth d.  Shot noise
is binomial; an infinite-shot switch returns the exact expectations so the
algebraic path can be tested separately from the statistics.  Fidelities are
recovered per observable by a weighted log-linear fit whose intercept absorbs
state-preparation/measurement amplitude, and model rates by non-negative
least squares on the log-fidelity system.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .nnls import nnls
from .pauli import PauliString, weight
from .scheduler import MeasurementSchedule, general_schedule
from .spl import (
    SplModel,
    SplTerm,
    fidelity_design_matrix,
    generate_two_local_terms,
    pauli_fidelity,
)
from .topology import TopologyGraph

# Estimates at or below this floor are dropped from log fits; taking logs of
# near-zero samples destabilizes the slope.
ESTIMATE_FLOOR = 1e-6


class CurveUnusableError(ValueError):
    """Raised when a decay curve has fewer than two usable points; the caller
    should increase shots or choose shallower depths."""


@dataclass(frozen=True)
class CbConfig:
    """Cycle-benchmarking run parameters.

    ``spam`` is the multiplicative amplitude applied to every observable's
    expectations; ``spam_overrides`` adjusts individual observables.  With
    ``infinite_shots`` the simulator returns exact expectations and draws no
    randomness.
    """

    depths: tuple[int, ...] = (2, 4, 16, 64)
    shots: int = 100_000
    spam: float = 1.0
    seed: int = 0
    infinite_shots: bool = False
    spam_overrides: Mapping[PauliString, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.depths) < 2 or len(set(self.depths)) != len(self.depths):
            raise ValueError("need at least 2 distinct depths")
        if list(self.depths) != sorted(self.depths) or self.depths[0] < 1:
            raise ValueError("depths must be ascending positive integers")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        for a in (self.spam, *self.spam_overrides.values()):
            if not 0 < a <= 1:
                raise ValueError(f"spam amplitude {a} outside (0, 1]")

    def spam_of(self, b: PauliString) -> float:
        return self.spam_overrides.get(b, self.spam)


@dataclass(frozen=True)
class DecayCurve:
    """Per-observable expectation-vs-depth samples; ``points`` holds
    (depth, estimate, shots) triples with strictly increasing depths."""

    observable: PauliString
    points: tuple[tuple[int, float, int], ...]

    def __post_init__(self) -> None:
        depths = [d for d, _, _ in self.points]
        if depths != sorted(set(depths)):
            raise ValueError("depths must be strictly increasing")
        if any(not -1.0 <= e <= 1.0 for _, e, _ in self.points):
            raise ValueError("estimates must lie in [-1, 1]")


@dataclass(frozen=True)
class FitResult:
    fidelity_estimates: dict[PauliString, float]
    lambda_hat: dict[PauliString, float]
    residual_norm: float
    matrix_rank: int


def measurable_paulis(basis: PauliString, g: TopologyGraph) -> list[PauliString]:
    """Observables estimable from measurements in ``basis``: each vertex's
    weight-1 Pauli along the basis axis and each edge's matching weight-2
    Pauli, in vertex-then-edge order."""
    if weight(basis) != basis.n:
        raise ValueError("measurement basis must be full-weight")
    if basis.n != g.n:
        raise ValueError(f"basis length {basis.n} does not match vertex count {g.n}")
    out = [PauliString.embed(g.n, {v: basis.axis_at(v)}) for v in range(g.n)]
    for u, v in g.edge_list:
        out.append(PauliString.embed(g.n, {u: basis.axis_at(u), v: basis.axis_at(v)}))
    return out


def simulate_cb(
    m: SplModel, s: MeasurementSchedule, g: TopologyGraph, cfg: CbConfig
) -> list[DecayCurve]:
    """One decay curve per distinct measurable observable.

    True expectation at depth d is spam * fidelity^d.  An observable that is
    measurable under k bases accumulates k * cfg.shots shots per depth.  Each
    curve draws from its own seed substream, so results do not depend on
    evaluation order.
    """
    if s.n != g.n or m.qubit_count != g.n:
        raise ValueError("schedule, model, and graph dimensions must agree")
    multiplicity: dict[PauliString, int] = {}
    for basis in s.bases:
        for b in measurable_paulis(basis, g):
            multiplicity[b] = multiplicity.get(b, 0) + 1

    curves = []
    for index, b in enumerate(generate_two_local_terms(g)):
        mult = multiplicity.get(b)
        if mult is None:
            continue
        f = pauli_fidelity(m, b)
        a = cfg.spam_of(b)
        shots = mult * cfg.shots
        points = []
        if cfg.infinite_shots:
            for d in cfg.depths:
                points.append((d, a * f**d, shots))
        else:
            rng = np.random.default_rng([cfg.seed, index])
            for d in cfg.depths:
                p = 0.5 * (1.0 + a * f**d)
                hits = int(rng.binomial(shots, p))
                points.append((d, 2.0 * hits / shots - 1.0, shots))
        curves.append(DecayCurve(b, tuple(points)))
    return curves


def fit_decay(curve: DecayCurve) -> float:
    """Fidelity estimate from a weighted log-linear fit of estimate vs depth.

    Weights are shots * estimate^2 (the delta-method variance of the log);
    points at or below the estimate floor are dropped.  The intercept absorbs
    any constant amplitude, so SPAM does not bias the slope.  The returned
    value is exp(slope) clipped into (0, 1].
    """
    usable = [(d, e, s) for d, e, s in curve.points if e > ESTIMATE_FLOOR]
    if len(usable) < 2:
        raise CurveUnusableError(
            f"curve for {curve.observable} has {len(usable)} usable point(s); need >= 2"
        )
    d = np.array([p[0] for p in usable], dtype=float)
    y = np.log([p[1] for p in usable])
    w = np.array([p[2] * p[1] ** 2 for p in usable], dtype=float)
    sw = np.sqrt(w)
    design = np.column_stack([np.ones_like(d), d])
    coef, *_ = np.linalg.lstsq(design * sw[:, None], y * sw, rcond=None)
    slope = coef[1]
    return min(math.exp(slope), 1.0)


def fit_lambda(
    f_hat: Mapping[PauliString, float], m_terms: Sequence[PauliString]
) -> FitResult:
    """Recover non-negative rates from estimated fidelities.

    Solves min_{lambda >= 0} ||M lambda + (1/2) log f||_2 where M is the
    anticommutation design matrix over the measured observables.  The
    numerical rank of M is reported so degenerate systems are visible rather
    than silent.
    """
    if not f_hat:
        raise ValueError("fidelity table is empty")
    if not m_terms:
        raise ValueError("term list is empty")
    for b, f in f_hat.items():
        if not 0 < f <= 1:
            raise ValueError(f"fidelity for {b} must lie in (0, 1], got {f}")
    measured = sorted(f_hat, key=str)
    n = measured[0].n
    model = SplModel(n, tuple(SplTerm(p, 0.0) for p in m_terms))
    mat = fidelity_design_matrix(model, measured)
    y = -0.5 * np.log([f_hat[b] for b in measured])
    lam, rnorm = nnls(mat, y)
    rank = int(np.linalg.matrix_rank(mat))
    return FitResult(
        fidelity_estimates=dict(f_hat),
        lambda_hat={p: float(v) for p, v in zip(m_terms, lam)},
        residual_norm=rnorm,
        matrix_rank=rank,
    )


def end_to_end_learn(g: TopologyGraph, truth: SplModel, cfg: CbConfig) -> FitResult:
    """Full learning loop: build a covering schedule, simulate cycle
    benchmarking, fit each decay curve, then recover rates by NNLS."""
    two_local = set(generate_two_local_terms(g))
    if not set(truth.term_paulis) <= two_local:
        raise ValueError("truth model contains terms outside the two-local set of the graph")
    schedule = general_schedule(g)
    curves = simulate_cb(truth, schedule, g, cfg)
    f_hat = {c.observable: fit_decay(c) for c in curves}
    return fit_lambda(f_hat, truth.term_paulis)


def curves_to_csv(curves: Sequence[DecayCurve]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["observable", "depth", "estimate", "shots"])
    for c in curves:
        for d, e, s in c.points:
            writer.writerow([str(c.observable), d, repr(e), s])
    return buf.getvalue()


def fit_result_to_json(result: FitResult, max_lambda_error: float | None = None) -> str:
    payload = {
        "lambda": {str(p): v for p, v in result.lambda_hat.items()},
        "residual": result.residual_norm,
        "rank": result.matrix_rank,
        "fidelities": {str(p): v for p, v in result.fidelity_estimates.items()},
        "max_lambda_error": max_lambda_error,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
