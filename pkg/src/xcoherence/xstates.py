"""Two-qubit X states: validation, spectra, square roots, marginals, the
named one-parameter families and a counter-based random sampler.

Basis order is ``|00>, |01>, |10>, |11>``, so the X pattern couples
``|00>`` with ``|11>`` (``r14``) and ``|01>`` with ``|10>`` (``r23``).
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .numerics import Herm2, sqrt_psd_2x2

SLACK = 1e-12


class XStateError(ValueError):
    pass


class TraceError(XStateError):
    def __init__(self, trace: float):
        super().__init__(f"diagonal sums to {trace!r}, off from 1 by {trace - 1:.3e}")
        self.trace = trace


class PositivityError(XStateError):
    def __init__(self, constraint: str, excess: float):
        super().__init__(f"positivity constraint {constraint} violated by {excess:.3e}")
        self.constraint = constraint
        self.excess = excess


@dataclass(frozen=True)
class XState:
    """Immutable, validated X-state density matrix.

    Construction raises :class:`TraceError` or :class:`PositivityError` when
    the parameters do not describe a physical state (within ``1e-12``).
    """

    r11: float
    r22: float
    r33: float
    r44: float
    r14: complex = 0j
    r23: complex = 0j

    def __post_init__(self):
        for name in ("r11", "r22", "r33", "r44"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for name in ("r14", "r23"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        values = (self.r11, self.r22, self.r33, self.r44, self.r14.real,
                  self.r14.imag, self.r23.real, self.r23.imag)
        if not all(math.isfinite(v) for v in values):
            raise XStateError("X-state parameters must be finite")
        for name, v in zip(("r11", "r22", "r33", "r44"), self.diagonal):
            if v < -SLACK:
                raise PositivityError(f"{name} >= 0", -v)
        trace = math.fsum(self.diagonal)
        if abs(trace - 1.0) > SLACK:
            raise TraceError(trace)
        excess = abs(self.r14) ** 2 - self.r11 * self.r44
        if excess > SLACK:
            raise PositivityError("r11*r44 >= |r14|^2", excess)
        excess = abs(self.r23) ** 2 - self.r22 * self.r33
        if excess > SLACK:
            raise PositivityError("r22*r33 >= |r23|^2", excess)

    @property
    def diagonal(self) -> tuple[float, float, float, float]:
        return (self.r11, self.r22, self.r33, self.r44)

    @property
    def outer_block(self) -> Herm2:
        """The ``{|00>, |11>}`` block."""
        return Herm2(self.r11, self.r44, self.r14)

    @property
    def inner_block(self) -> Herm2:
        """The ``{|01>, |10>}`` block."""
        return Herm2(self.r22, self.r33, self.r23)

    def to_matrix(self) -> np.ndarray:
        m = np.diag(np.array(self.diagonal, dtype=complex))
        m[0, 3], m[3, 0] = self.r14, self.r14.conjugate()
        m[1, 2], m[2, 1] = self.r23, self.r23.conjugate()
        return m


def make_xstate(r11, r22, r33, r44, r14=0j, r23=0j) -> XState:
    return XState(r11, r22, r33, r44, r14, r23)


def from_matrix(m) -> XState:
    """Read the X entries of a 4x4 matrix; other entries are ignored."""
    m = np.asarray(m)
    return XState(m[0, 0].real, m[1, 1].real, m[2, 2].real, m[3, 3].real, m[0, 3], m[1, 2])


def canonicalize(s: XState) -> XState:
    """Rotate both coherences to their (real, non-negative) moduli."""
    return XState(s.r11, s.r22, s.r33, s.r44, abs(s.r14), abs(s.r23))


def _block_eigenvalues(p: float, q: float, c: complex) -> tuple[float, float]:
    half = 0.5 * (p + q)
    r = 0.5 * math.sqrt((p - q) ** 2 + 4.0 * abs(c) ** 2)
    return half + r, half - r


def eigenvalues_closed_form(s: XState) -> list[float]:
    """Spectrum of the state, sorted descending.

    Each 2x2 block contributes ``(p + q)/2 +- sqrt((p - q)^2 + 4|c|^2)/2``
    with its own coherence ``c``.
    """
    vals = [*_block_eigenvalues(s.r11, s.r44, s.r14), *_block_eigenvalues(s.r22, s.r33, s.r23)]
    return sorted(vals, reverse=True)


def sqrt_xstate(s: XState) -> np.ndarray:
    """Principal square root as a 4x4 Hermitian array, computed blockwise."""
    outer = sqrt_psd_2x2(s.outer_block)
    inner = sqrt_psd_2x2(s.inner_block)
    out = np.zeros((4, 4), dtype=complex)
    out[0, 0], out[3, 3], out[0, 3] = outer.a, outer.d, outer.b
    out[3, 0] = outer.b.conjugate()
    out[1, 1], out[2, 2], out[1, 2] = inner.a, inner.d, inner.b
    out[2, 1] = inner.b.conjugate()
    return out


def reduced_state(s: XState, subsystem: str) -> tuple[float, float]:
    """Diagonal of the reduced state of qubit ``'A'`` or ``'B'``.

    The off-diagonal entries of both marginals vanish for every X state.
    """
    if subsystem == "A":
        return (s.r11 + s.r22, s.r33 + s.r44)
    if subsystem == "B":
        return (s.r11 + s.r33, s.r22 + s.r44)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def purity(diag2: tuple[float, float]) -> float:
    p, q = diag2
    return p * p + q * q


def mix(s1: XState, s2: XState, p: float) -> XState:
    """Convex combination ``p*s1 + (1 - p)*s2``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {p!r}")
    q = 1.0 - p
    return XState(
        p * s1.r11 + q * s2.r11,
        p * s1.r22 + q * s2.r22,
        p * s1.r33 + q * s2.r33,
        p * s1.r44 + q * s2.r44,
        p * s1.r14 + q * s2.r14,
        p * s1.r23 + q * s2.r23,
    )


def maximally_mixed() -> XState:
    return XState(0.25, 0.25, 0.25, 0.25)


class FamilyKind(enum.Enum):
    MNMS = "mnms"
    WERNER = "werner"
    MEMS = "mems"
    RHO_L = "rho_l"


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, "kind", FamilyKind(self.kind))
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon!r}")


def mems_g(epsilon: float) -> float:
    return epsilon / 2.0 if epsilon >= 2.0 / 3.0 else 1.0 / 3.0


def family(spec: FamilySpec) -> XState:
    e = spec.epsilon
    kind = spec.kind
    if kind is FamilyKind.MNMS:
        return XState(0.5, 0.0, 0.0, 0.5, e / 2.0)
    if kind is FamilyKind.WERNER:
        a, b = (1.0 + e) / 4.0, (1.0 - e) / 4.0
        return XState(a, b, b, a, e / 2.0)
    if kind is FamilyKind.MEMS:
        g = mems_g(e)
        return XState(g, 1.0 - 2.0 * g, 0.0, g, e / 2.0)
    if kind is FamilyKind.RHO_L:
        return XState(e / 2.0, 1.0 - e, 0.0, e / 2.0, e / 2.0)
    raise ValueError(f"unknown family {kind!r}")


def make_family(kind: FamilyKind | str, epsilon: float) -> XState:
    return family(FamilySpec(FamilyKind(kind), epsilon))


def sample_random(seed: int, index: int, phases: bool = False) -> XState:
    """Random X state, a pure function of ``(seed, index)``.

    The diagonal is uniform on the probability simplex (normalized unit
    exponentials).  Each coherence modulus is uniform between zero and its
    positivity bound ``sqrt(r11*r44)`` or ``sqrt(r22*r33)``.  With ``phases``
    the coherences get independent uniform phases.
    """
    rng = np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, index])
    e = rng.exponential(size=4)
    d = e / e.sum()
    u = rng.random(2)
    m14 = u[0] * math.sqrt(d[0] * d[3])
    m23 = u[1] * math.sqrt(d[1] * d[2])
    if phases:
        ph = rng.random(2) * 2.0 * math.pi
        return XState(*d, cmath.rect(m14, ph[0]), cmath.rect(m23, ph[1]))
    return XState(*d, m14, m23)
