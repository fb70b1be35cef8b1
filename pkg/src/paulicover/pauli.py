"""Pauli-string algebra: axes, weights, commutation parity, column patterns.

Strings are stored in a symplectic two-bits-per-site encoding so that
anticommutation reduces to a parity computation over integer bit masks.
Phases are ignored throughout; only the commute/anticommute parity matters
for fidelity calculations, since conjugation by a Pauli cancels them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

AXES = "IXYZ"

# Site encoding: I=(x=0,z=0), X=(1,0), Y=(1,1), Z=(0,1).
_AXIS_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_AXIS = {bits: axis for axis, bits in _AXIS_TO_BITS.items()}


@dataclass(frozen=True)
class PauliString:
    """Immutable Pauli string over {I, X, Y, Z} on ``n`` sites.

    ``x_mask`` / ``z_mask`` hold one bit per site (bit i = site i); the axis
    at site i is decoded from the bit pair.  Site 0 is the leftmost character
    of the text form.
    """

    n: int
    x_mask: int
    z_mask: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("Pauli string needs at least one site")
        full = (1 << self.n) - 1
        if not (0 <= self.x_mask <= full and 0 <= self.z_mask <= full):
            raise ValueError("bit mask out of range for declared length")

    @classmethod
    def from_text(cls, text: str) -> PauliString:
        """Parse an N-character string over {I,X,Y,Z}, case-insensitively."""
        text = text.strip().upper()
        if not text:
            raise ValueError("empty Pauli string")
        x = z = 0
        for i, ch in enumerate(text):
            if ch not in _AXIS_TO_BITS:
                raise ValueError(f"invalid Pauli character {ch!r} at position {i}")
            xb, zb = _AXIS_TO_BITS[ch]
            x |= xb << i
            z |= zb << i
        return cls(len(text), x, z)

    @classmethod
    def from_axes(cls, axes: Iterable[str]) -> PauliString:
        return cls.from_text("".join(axes))

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n, 0, 0)

    @classmethod
    def embed(cls, n: int, assignment: Mapping[int, str]) -> PauliString:
        """String that is identity except for the site -> axis ``assignment``."""
        x = z = 0
        for site, axis in assignment.items():
            if not 0 <= site < n:
                raise ValueError(f"site {site} out of range for {n} qubits")
            xb, zb = _AXIS_TO_BITS[axis.upper()]
            x |= xb << site
            z |= zb << site
        return cls(n, x, z)

    def axis_at(self, i: int) -> str:
        if not 0 <= i < self.n:
            raise ValueError(f"site index {i} out of range for {self.n} qubits")
        return _BITS_TO_AXIS[(self.x_mask >> i) & 1, (self.z_mask >> i) & 1]

    @property
    def support_mask(self) -> int:
        return self.x_mask | self.z_mask

    def __str__(self) -> str:
        return "".join(self.axis_at(i) for i in range(self.n))

    def __repr__(self) -> str:
        return f"PauliString({str(self)!r})"


def anticommutes(a: PauliString, b: PauliString) -> bool:
    """True iff the number of sites where both are non-identity and differ is odd.

    Computed as the symplectic parity popcount(a.x & b.z) + popcount(a.z & b.x).
    """
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")
    parity = (a.x_mask & b.z_mask).bit_count() + (a.z_mask & b.x_mask).bit_count()
    return parity % 2 == 1


def weight_pattern(p: PauliString) -> str:
    """N-bit string with '1' at every non-identity site ('0101' for IXIZ)."""
    mask = p.support_mask
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(p.n))


def weight(p: PauliString) -> int:
    """Number of non-identity sites."""
    return p.support_mask.bit_count()


def restrict(p: PauliString, positions: tuple[int, int]) -> tuple[str, str]:
    """The two axes of ``p`` at a pair of distinct sites, in the given order."""
    i, j = positions
    if i == j:
        raise ValueError("positions must be distinct")
    return p.axis_at(i), p.axis_at(j)


@dataclass(frozen=True)
class ColumnSubstring:
    """A vertical pattern of three non-identity axes, the unit the schedule
    constructions stack three rows at a time."""

    tag: str
    rows: tuple[str, str, str]

    def __post_init__(self) -> None:
        if len(self.rows) != 3 or any(r not in "XYZ" for r in self.rows):
            raise ValueError("column substring must hold exactly 3 non-identity axes")


# Constant columns repeat one axis; cyclic columns run through X, Y, Z in the
# three cyclic orders.  Together these six are the only building blocks the
# schedule constructions need.
SIGMA_X = ColumnSubstring("sigma_X", ("X", "X", "X"))
SIGMA_Y = ColumnSubstring("sigma_Y", ("Y", "Y", "Y"))
SIGMA_Z = ColumnSubstring("sigma_Z", ("Z", "Z", "Z"))
SIGMA_0 = ColumnSubstring("sigma_0", ("X", "Y", "Z"))
SIGMA_1 = ColumnSubstring("sigma_1", ("Y", "Z", "X"))
SIGMA_2 = ColumnSubstring("sigma_2", ("Z", "X", "Y"))

COLUMN_SUBSTRINGS = {
    s.tag: s for s in (SIGMA_X, SIGMA_Y, SIGMA_Z, SIGMA_0, SIGMA_1, SIGMA_2)
}


def elementwise_join(a: ColumnSubstring, b: ColumnSubstring) -> tuple[tuple[str, str], ...]:
    """Row-wise pairing of two column substrings: ((a0,b0), (a1,b1), (a2,b2))."""
    return tuple(zip(a.rows, b.rows))
