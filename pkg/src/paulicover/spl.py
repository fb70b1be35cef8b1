"""Sparse Pauli-Lindblad noise models.

A model is a set of local Pauli generators with non-negative rates.  The
channel is diagonal in the Pauli basis, so its action on a Pauli observable
is a scalar fidelity: the product of e^(-2*rate) over all generators that
anticommute with the observable.  A dense superoperator oracle (small qubit
counts only) provides an independent cross-check of that formula.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .pauli import PauliString, anticommutes, weight
from .topology import TopologyGraph

_DENSE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class SplTerm:
    """One model generator: a non-identity Pauli with a non-negative rate."""

    pauli: PauliString
    rate: float

    def __post_init__(self) -> None:
        if self.rate < 0:
            raise ValueError(f"rate must be non-negative, got {self.rate}")
        if weight(self.pauli) < 1:
            raise ValueError("model terms must be non-identity")


@dataclass(frozen=True)
class SplModel:
    """Noise model over ``qubit_count`` qubits with distinct generator Paulis."""

    qubit_count: int
    terms: tuple[SplTerm, ...]

    def __post_init__(self) -> None:
        seen: set[PauliString] = set()
        for t in self.terms:
            if t.pauli.n != self.qubit_count:
                raise ValueError(f"term {t.pauli} does not match qubit count {self.qubit_count}")
            if t.pauli in seen:
                raise ValueError(f"duplicate model term {t.pauli}")
            seen.add(t.pauli)

    @property
    def term_paulis(self) -> tuple[PauliString, ...]:
        return tuple(t.pauli for t in self.terms)


def w_of_lambda(lam: float) -> float:
    """Identity-branch probability of one generator: (1 + e^(-2*lam)) / 2."""
    if lam < 0:
        raise ValueError(f"rate must be non-negative, got {lam}")
    return 0.5 * (1.0 + math.exp(-2.0 * lam))


def pauli_fidelity(m: SplModel, b: PauliString) -> float:
    """Scalar by which the channel scales the Pauli observable ``b``.

    Each anticommuting generator contributes a factor 2*w - 1 = e^(-2*rate);
    commuting generators act trivially.
    """
    if b.n != m.qubit_count:
        raise ValueError(f"observable length {b.n} does not match model ({m.qubit_count})")
    total = sum(t.rate for t in m.terms if anticommutes(t.pauli, b))
    return math.exp(-2.0 * total)


def _dense_pauli(p: PauliString) -> np.ndarray:
    mat = np.array([[1.0 + 0j]])
    for i in range(p.n):
        mat = np.kron(mat, _DENSE[p.axis_at(i)])
    return mat


def dense_channel_oracle(m: SplModel, b: PauliString) -> float:
    """Fidelity of ``b`` computed by explicit matrix conjugation (test oracle).

    Applies each generator's channel factor w*rho + (1-w) P rho P^dagger to the
    dense matrix of ``b`` and reads off the scalar via the Hilbert-Schmidt
    inner product.  Limited to 4 qubits by design.
    """
    if b.n != m.qubit_count:
        raise ValueError(f"observable length {b.n} does not match model ({m.qubit_count})")
    if m.qubit_count > 4:
        raise ValueError("dense oracle is limited to 4 qubits")
    mat = _dense_pauli(b)
    for t in m.terms:
        w = w_of_lambda(t.rate)
        p = _dense_pauli(t.pauli)
        mat = w * mat + (1.0 - w) * (p @ mat @ p.conj().T)
    ref = _dense_pauli(b)
    dim = 2**b.n
    return float(np.real(np.trace(ref.conj().T @ mat)) / dim)


def generate_two_local_terms(g: TopologyGraph) -> list[PauliString]:
    """All weight-1 Paulis per vertex and weight-2 Paulis per edge, in canonical
    order: vertices ascending then edges lexicographic, axes X < Y < Z."""
    out: list[PauliString] = []
    for v in range(g.n):
        for a in "XYZ":
            out.append(PauliString.embed(g.n, {v: a}))
    for u, v in g.edge_list:
        for a in "XYZ":
            for b in "XYZ":
                out.append(PauliString.embed(g.n, {u: a, v: b}))
    return out


def sample_model(
    g: TopologyGraph, seed: int, rate_range: tuple[float, float] = (0.001, 0.01)
) -> SplModel:
    """Synthetic ground-truth model over the two-local terms of ``g`` with rates
    drawn uniformly from ``rate_range``; deterministic given ``seed``."""
    lo, hi = rate_range
    if lo < 0 or hi < lo:
        raise ValueError(f"invalid rate range ({lo}, {hi})")
    rng = np.random.default_rng(seed)
    paulis = generate_two_local_terms(g)
    rates = rng.uniform(lo, hi, size=len(paulis))
    terms = tuple(SplTerm(p, float(r)) for p, r in zip(paulis, rates))
    return SplModel(g.n, terms)


def fidelity_design_matrix(m: SplModel, measured: list[PauliString]) -> np.ndarray:
    """Binary matrix M with M[b, k] = 1 iff measured observable b anticommutes
    with model term k; log fidelities then satisfy log f = -2 M lambda."""
    for b in measured:
        if b.n != m.qubit_count:
            raise ValueError(f"observable length {b.n} does not match model ({m.qubit_count})")
    mat = np.zeros((len(measured), len(m.terms)), dtype=np.float64)
    for i, b in enumerate(measured):
        for k, t in enumerate(m.terms):
            if anticommutes(t.pauli, b):
                mat[i, k] = 1.0
    return mat


def model_to_json_dict(m: SplModel) -> dict:
    return {
        "n": m.qubit_count,
        "terms": [{"pauli": str(t.pauli), "lambda": t.rate} for t in m.terms],
    }


def model_to_json(m: SplModel) -> str:
    return json.dumps(model_to_json_dict(m), indent=2, sort_keys=True) + "\n"


def model_from_json(text: str) -> SplModel:
    """Parse the model JSON format, rejecting negative rates and duplicates."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid model JSON: {exc}") from None
    if not isinstance(data, dict) or "n" not in data or "terms" not in data:
        raise ValueError("model JSON must be an object with 'n' and 'terms'")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise ValueError("model JSON field 'n' must be a positive integer")
    terms = []
    for entry in data["terms"]:
        pauli = PauliString.from_text(entry["pauli"])
        rate = float(entry["lambda"])
        if rate < 0:
            raise ValueError(f"negative rate for term {entry['pauli']}")
        terms.append(SplTerm(pauli, rate))
    return SplModel(n, tuple(terms))
