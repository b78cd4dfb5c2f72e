"""Coherence and entanglement quantifiers for X states.

All coherence measures are taken in the computational basis.  Trace-distance
coherence and robustness of coherence coincide with the l1 norm on X states,
so :class:`MeasureSet` carries them as copies of ``c_l1``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from .numerics import BracketError, binary_entropy, bisect_monotone, shannon_entropy
from .xstates import XState, eigenvalues_closed_form, purity, reduced_state, sqrt_xstate


def c_rel(s: XState) -> float:
    """Relative entropy of coherence in bits."""
    return shannon_entropy(s.diagonal) - shannon_entropy(eigenvalues_closed_form(s))


def c_l1(s: XState) -> float:
    return 2.0 * (abs(s.r14) + abs(s.r23))


def c_skew(s: XState) -> float:
    """Skew-information coherence, ``sum_i rho_ii - ((sqrt rho)_ii)^2``.

    This equals ``-1/2 sum_i Tr [sqrt(rho), |i><i|]^2``; see
    :func:`k_coherence_summand` for the commutator form.
    """
    root_diag = sqrt_xstate(s).diagonal().real
    return math.fsum(p - r * r for p, r in zip(s.diagonal, root_diag))


def k_coherence_summand(s: XState, i: int) -> float:
    """``-1/2 Tr [sqrt(rho), |i><i|]^2`` by explicit 4x4 matrix algebra."""
    if i not in range(4):
        raise ValueError(f"basis index must be 0..3, got {i!r}")
    root = sqrt_xstate(s)
    proj = np.zeros((4, 4), dtype=complex)
    proj[i, i] = 1.0
    comm = root @ proj - proj @ root
    return float(-0.5 * np.trace(comm @ comm).real)


def concurrence(s: XState) -> float:
    return 2.0 * max(
        0.0,
        abs(s.r14) - math.sqrt(s.r22 * s.r33),
        abs(s.r23) - math.sqrt(s.r11 * s.r44),
    )


def d2_first_order(s: XState) -> float:
    """Mean squared first-order coherence of the two single-qubit marginals."""
    da = 2.0 * purity(reduced_state(s, "A")) - 1.0
    db = 2.0 * purity(reduced_state(s, "B")) - 1.0
    return 0.5 * (da + db)


def d2_max(s: XState, eigenvalues=None) -> float:
    """Hidden coherence ``(l1 - l4)^2 + (l2 - l3)^2`` over the descending
    spectrum.  ``eigenvalues`` overrides the closed-form spectrum."""
    lam = sorted(eigenvalues_closed_form(s) if eigenvalues is None else eigenvalues, reverse=True)
    return (lam[0] - lam[3]) ** 2 + (lam[1] - lam[2]) ** 2


class Abscissa(enum.Enum):
    C_REL = "c_rel"
    C_SKEW = "c_skew"


def mnms_c_rel_curve(epsilon: float) -> float:
    """Relative entropy of coherence along the MNMS family."""
    return 1.0 - binary_entropy((1.0 + epsilon) / 2.0)


def mnms_c_skew_curve(epsilon: float) -> float:
    """Skew coherence along the MNMS family, ``(1 - sqrt(1 - eps^2))/2``."""
    return 0.5 * (1.0 - math.sqrt(max(1.0 - epsilon * epsilon, 0.0)))


_CURVES = {
    Abscissa.C_REL: (mnms_c_rel_curve, 1.0),
    Abscissa.C_SKEW: (mnms_c_skew_curve, 0.5),
}


def mnms_ceiling_l1(c: float, measure_on_x_axis: Abscissa | str = Abscissa.C_REL) -> float:
    """Largest l1 coherence of an X state whose ``c_rel`` (or ``c_skew``) is ``c``.

    The ceiling is attained by the MNMS family; the MNMS curve is inverted
    by bisection and the matching ``epsilon`` (= its l1 coherence) returned.
    """
    curve, top = _CURVES[Abscissa(measure_on_x_axis)]
    if not -1e-12 <= c <= top + 1e-12:
        raise BracketError(f"{c!r} outside the MNMS range [0, {top}]")
    c = min(max(c, 0.0), top)
    return bisect_monotone(curve, c, 0.0, 1.0)


@dataclass(frozen=True)
class MeasureSet:
    c_rel: float
    c_l1: float
    c_skew: float
    c_tr: float
    c_rob: float
    concurrence: float
    d2: float
    d2max: float

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)


MEASURE_FIELDS = tuple(f.name for f in fields(MeasureSet))

MEASURE_FUNCTIONS = {
    "c_rel": c_rel,
    "c_l1": c_l1,
    "c_skew": c_skew,
    "c_tr": c_l1,
    "c_rob": c_l1,
    "concurrence": concurrence,
    "d2": d2_first_order,
    "d2max": d2_max,
}


def measure_all(s: XState) -> MeasureSet:
    l1 = c_l1(s)
    return MeasureSet(
        c_rel=c_rel(s),
        c_l1=l1,
        c_skew=c_skew(s),
        c_tr=l1,
        c_rob=l1,
        concurrence=concurrence(s),
        d2=d2_first_order(s),
        d2max=d2_max(s),
    )
