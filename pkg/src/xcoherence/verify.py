"""Checks of the ordering, boundary and inequality claims over an ensemble.

Every checker returns a :class:`ClaimResult`.  A margin is the signed slack
of the checked relation (positive means satisfied with room to spare); a
state violates a claim when its margin falls below ``-tolerance``, or for
strict claims when it is not positive.  Pointwise checkers read the stored
measure values of each record, so corrupted records are caught as such.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .ensemble import EnsembleRecord
from .measures import (
    Abscissa,
    c_l1,
    c_rel,
    c_skew,
    concurrence,
    d2_first_order,
    d2_max,
    k_coherence_summand,
    mnms_c_skew_curve,
    mnms_ceiling_l1,
)
from .numerics import BracketError, bisect_monotone, eig_hermitian_4x4
from .xstates import FamilyKind, XState, eigenvalues_closed_form, make_family, sqrt_xstate

RANA_TOL = 1e-10
CONCURRENCE_TOL = 1e-12
CEILING_TOL = 1e-9
FAMILY_TOL = 1e-10
CURVE_TOL = 1e-12
SPOT_TOL = 1e-12
EIG_TOL = 1e-10
SQRT_TOL = 1e-11
SKEW_TOL = 1e-11
CONVERGE_TOL = 1e-9
ORACLE_STATES = 1000
FAMILY_GRID = 101
CURVE_GRID = 201
# Two-decimal reference value of D^2_max for MEMS at zero concurrence
MEMS_D2MAX_ROUNDED = 0.1


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    description: str
    checked: int
    violations: int
    worst_margin: float
    tolerance: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        text = (f"{flag} {self.claim_id}: {self.description} "
                f"[checked={self.checked} violations={self.violations} "
                f"worst_margin={self.worst_margin:.3e} tol={self.tolerance:.0e}]")
        return text + (f" -- {self.note}" if self.note else "")


REPORT_COLUMNS = ("claim", "description", "checked", "violations", "worst_margin",
                  "tolerance", "passed", "note")


@dataclass
class VerificationReport:
    results: list[ClaimResult]
    observations: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, claim_id: str) -> ClaimResult:
        for r in self.results:
            if r.claim_id == claim_id:
                return r
        raise KeyError(claim_id)

    def failed(self) -> list[str]:
        return [r.claim_id for r in self.results if not r.passed]

    def lines(self) -> list[str]:
        out = [r.line() for r in self.results]
        out += [f"NOTE {k} = {v:g}" for k, v in self.observations.items()]
        return out

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(REPORT_COLUMNS)
            for r in self.results:
                w.writerow([r.claim_id, r.description, r.checked, r.violations,
                            format(r.worst_margin, ".17g"), format(r.tolerance, "g"),
                            int(r.passed), r.note])


def _tally(claim_id, description, margins, tolerance, strict=False, note="") -> ClaimResult:
    m = np.asarray(list(margins), dtype=float)
    if m.size == 0:
        return ClaimResult(claim_id, description, 0, 0, math.inf, tolerance, note)
    bad = ~(m > tolerance) if strict else ~(m >= -tolerance)
    return ClaimResult(claim_id, description, int(m.size), int(bad.sum()),
                       float(m.min()), tolerance, note)


def _grid(n: int, interior: bool = False) -> list[float]:
    pts = [k / (n - 1) for k in range(n)]
    return pts[1:-1] if interior else pts


def check_rana_conjecture(records: Sequence[EnsembleRecord]) -> ClaimResult:
    margins = [r.measures.c_l1 - r.measures.c_rel for r in records]
    return _tally("V1", "c_l1 >= c_rel (Rana conjecture)", margins, RANA_TOL)


def check_dimension_bound(records: Sequence[EnsembleRecord]) -> ClaimResult:
    margins = [r.measures.c_l1 - r.measures.c_rel / math.log2(4) for r in records]
    return _tally("V2", "c_l1 >= c_rel / log2(d), d = 4", margins, RANA_TOL)


def check_l1_dominates_concurrence(records: Sequence[EnsembleRecord]) -> ClaimResult:
    margins = [r.measures.c_l1 - r.measures.concurrence for r in records]
    return _tally("V3", "c_l1 >= concurrence", margins, CONCURRENCE_TOL)


def _ceiling_margin(c: float, l1: float, axis: Abscissa) -> float:
    try:
        return mnms_ceiling_l1(c, axis) - l1
    except BracketError:
        top = 1.0 if axis is Abscissa.C_REL else 0.5
        return -max(c - top, -c)


def check_mnms_ceiling(records: Sequence[EnsembleRecord]) -> ClaimResult:
    margins = [_ceiling_margin(r.measures.c_rel, r.measures.c_l1, Abscissa.C_REL)
               for r in records]
    return _tally("V4", "c_l1 <= MNMS ceiling at equal c_rel", margins, CEILING_TOL)


def check_rho_l_line(crel: Callable[[XState], float] = c_rel,
                     l1: Callable[[XState], float] = c_l1,
                     grid: int = FAMILY_GRID) -> ClaimResult:
    errors = []
    for e in _grid(grid):
        s = make_family(FamilyKind.RHO_L, e)
        errors.append(max(abs(l1(s) - e), abs(crel(s) - e)))
    return _tally("V5", "c_l1(rho_L(e)) = c_rel(rho_L(e)) = e",
                  [-x for x in errors], FAMILY_TOL)


def check_skew_band(records: Sequence[EnsembleRecord],
                    skew: Callable[[XState], float] = c_skew,
                    grid: int = CURVE_GRID) -> ClaimResult:
    """MNMS and rho_L bound the (c_skew, c_l1) scatter from above and below.

    The closed-form boundary curves are first compared with ``skew`` on both
    families; a curve that fails this comparison fails the claim outright.
    """
    curve_err = []
    for e in _grid(grid):
        curve_err.append(abs(skew(make_family(FamilyKind.MNMS, e)) - mnms_c_skew_curve(e)))
        curve_err.append(abs(skew(make_family(FamilyKind.RHO_L, e)) - e / 2.0))
    curve_bad = sum(1 for x in curve_err if x > CURVE_TOL)
    point_margins = []
    for r in records:
        m = r.measures
        lower = m.c_l1 - 2.0 * m.c_skew
        upper = _ceiling_margin(m.c_skew, m.c_l1, Abscissa.C_SKEW)
        point_margins.append(min(lower, upper))
    res = _tally("V6", "2*c_skew <= c_l1 <= MNMS ceiling at equal c_skew",
                 point_margins, CEILING_TOL,
                 note=f"boundary curves validated on {grid}-point grid, max error "
                      f"{max(curve_err):.1e}")
    if curve_bad:
        return ClaimResult(res.claim_id, res.description, res.checked + len(curve_err),
                           res.violations + curve_bad, min(res.worst_margin, -max(curve_err)),
                           res.tolerance, f"{curve_bad} boundary-curve grid points disagree")
    return res


def check_first_order_spots(d2: Callable[[XState], float] = d2_first_order,
                            d2max: Callable[[XState], float] = d2_max,
                            grid: int = FAMILY_GRID) -> ClaimResult:
    margins = []
    for e in _grid(grid):
        margins.append(-abs(d2(make_family(FamilyKind.MNMS, e))))
        margins.append(-abs(d2(make_family(FamilyKind.WERNER, e))))
    mnms0 = d2max(make_family(FamilyKind.MNMS, 0.0))
    # exact equality required for the MNMS value
    margins.append(0.0 if mnms0 == 0.5 else -math.inf)
    mems0 = d2max(make_family(FamilyKind.MEMS, 0.0))
    margins.append(-abs(mems0 - 1.0 / 9.0))
    return _tally("V7", "D^2 = 0 on MNMS/Werner; D^2_max: MNMS(0) = 1/2, MEMS(0) = 1/9",
                  margins, SPOT_TOL,
                  note=f"MEMS(0) D^2_max = {mems0:.12f} (reference value rounds to "
                       f"{MEMS_D2MAX_ROUNDED})")


def check_oracles(records: Sequence[EnsembleRecord], limit: int = ORACLE_STATES,
                  eig: Callable[[XState], Sequence[float]] = eigenvalues_closed_form,
                  root: Callable[[XState], np.ndarray] = sqrt_xstate,
                  skew: Callable[[XState], float] = c_skew) -> ClaimResult:
    """Closed forms against independent routes on the first ``limit`` states.

    A state violates the claim if any route disagrees beyond its own
    tolerance; the reported margin is the largest disagreement, negated.
    """
    worst = {"eig": 0.0, "sqrt": 0.0, "skew": 0.0}
    tol = {"eig": EIG_TOL, "sqrt": SQRT_TOL, "skew": SKEW_TOL}
    checked = violations = 0
    for r in records[:limit]:
        s = r.state
        rt = root(s)
        err = {
            "eig": float(np.max(np.abs(np.asarray(eig(s)) - eig_hermitian_4x4(s.to_matrix())))),
            "sqrt": float(np.max(np.abs(rt @ rt - s.to_matrix()))),
            "skew": abs(skew(s) - math.fsum(k_coherence_summand(s, i) for i in range(4))),
        }
        checked += 1
        violations += any(err[k] > tol[k] for k in err)
        for k in err:
            worst[k] = max(worst[k], err[k])
    note = ", ".join(f"max {k} error {worst[k]:.1e} (tol {tol[k]:.0e})" for k in worst)
    return ClaimResult("V8", "closed-form spectrum, block sqrt and skew reduction match oracles",
                       checked, violations, -max(worst.values()) if checked else math.inf,
                       SQRT_TOL, note)


def _matching_epsilon(kind: FamilyKind, target: float,
                      crel: Callable[[XState], float]) -> float:
    return bisect_monotone(lambda x: crel(make_family(kind, x)), target, 0.0, 1.0)


def _l1_gap(below: FamilyKind, above: FamilyKind, grid: int,
            crel: Callable[[XState], float], l1: Callable[[XState], float]):
    eps, margins = [], []
    for e in _grid(grid, interior=True):
        s = make_family(below, e)
        target = min(max(crel(s), 0.0), 1.0)
        e2 = _matching_epsilon(above, target, crel)
        eps.append(e)
        margins.append(l1(make_family(above, e2)) - l1(s))
    return eps, margins


def _failure_note(eps, margins, label: str) -> str:
    bad = [e for e, m in zip(eps, margins) if not m > 0]
    if not bad:
        return ""
    return f"{label} fails for {len(bad)} grid points, eps in [{min(bad):.2f}, {max(bad):.2f}]"


def check_werner_below_mnms(crel: Callable[[XState], float] = c_rel,
                            l1: Callable[[XState], float] = c_l1,
                            grid: int = FAMILY_GRID) -> ClaimResult:
    eps, margins = _l1_gap(FamilyKind.WERNER, FamilyKind.MNMS, grid, crel, l1)
    return _tally("V9", "c_l1(Werner) < c_l1(MNMS) at equal c_rel", margins, 0.0,
                  strict=True, note=_failure_note(eps, margins, "Werner < MNMS"))


def check_mems_lowest(crel: Callable[[XState], float] = c_rel,
                      l1: Callable[[XState], float] = c_l1,
                      grid: int = FAMILY_GRID) -> ClaimResult:
    eps, vs_werner = _l1_gap(FamilyKind.MEMS, FamilyKind.WERNER, grid, crel, l1)
    _, vs_mnms = _l1_gap(FamilyKind.MEMS, FamilyKind.MNMS, grid, crel, l1)
    notes = [n for n in (_failure_note(eps, vs_werner, "MEMS < Werner"),
                         _failure_note(eps, vs_mnms, "MEMS < MNMS")) if n]
    return _tally("V10", "c_l1(MEMS) < c_l1(Werner), c_l1(MNMS) at equal c_rel",
                  vs_werner + vs_mnms, 0.0, strict=True, note="; ".join(notes))


def check_hidden_coherence_order(d2max: Callable[[XState], float] = d2_max,
                                 conc: Callable[[XState], float] = concurrence,
                                 grid: int = FAMILY_GRID) -> ClaimResult:
    """MNMS and MEMS both have concurrence eps, so equal-concurrence pairs
    share the same grid point (checked, not assumed)."""
    margins = []
    for e in _grid(grid):
        a = make_family(FamilyKind.MNMS, e)
        b = make_family(FamilyKind.MEMS, e)
        if abs(conc(a) - conc(b)) > CONCURRENCE_TOL:
            margins.append(-abs(conc(a) - conc(b)) - 1.0)
            continue
        margins.append(d2max(a) - d2max(b))
    top = d2max(make_family(FamilyKind.MNMS, 1.0)) - d2max(make_family(FamilyKind.MEMS, 1.0))
    margins.append(-abs(top))
    return _tally("V11", "D^2_max(MNMS) >= D^2_max(MEMS) at equal concurrence, equal at 1",
                  margins, CONVERGE_TOL)


def hidden_below_first_order(records: Sequence[EnsembleRecord]) -> int:
    """Count of records with ``d2max < d2`` (reported, not asserted)."""
    return sum(1 for r in records if r.measures.d2max < r.measures.d2 - SPOT_TOL)


CLAIMS: dict[str, Callable[[Sequence[EnsembleRecord]], ClaimResult]] = {
    "V1": check_rana_conjecture,
    "V2": check_dimension_bound,
    "V3": check_l1_dominates_concurrence,
    "V4": check_mnms_ceiling,
    "V5": lambda records: check_rho_l_line(),
    "V6": check_skew_band,
    "V7": lambda records: check_first_order_spots(),
    "V8": check_oracles,
    "V9": lambda records: check_werner_below_mnms(),
    "V10": lambda records: check_mems_lowest(),
    "V11": lambda records: check_hidden_coherence_order(),
}


def verify(records: Sequence[EnsembleRecord], claims: Sequence[str] | None = None) -> VerificationReport:
    if not records:
        raise ValueError("cannot verify an empty record list")
    ids = list(CLAIMS) if claims is None else list(claims)
    unknown = [c for c in ids if c not in CLAIMS]
    if unknown:
        raise KeyError(f"unknown claim ids: {', '.join(unknown)}")
    results = [CLAIMS[c](records) for c in ids]
    obs = {"states": float(len(records)),
           "d2max_below_d2": float(hidden_below_first_order(records))}
    return VerificationReport(results, obs)
