"""Small numerical helpers: entropies, 2x2 PSD square roots, a Jacobi
eigensolver for 4x4 Hermitian matrices and a monotone bisection.

Nothing here knows about X states; the eigensolver in particular is kept
generic so it can serve as an independent check on closed-form spectra.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

PROB_SLACK = 1e-12
NORM_SLACK = 1e-9
PSD_SLACK = 1e-12


class DomainError(ValueError):
    """Input lies outside the domain of a numerical routine."""


class BracketError(ValueError):
    """Target value is not bracketed by the search interval."""


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, sweeps: int):
        super().__init__(f"{message} (after {sweeps} sweeps)")
        self.sweeps = sweeps


def shannon_entropy(p: Sequence[float]) -> float:
    """Shannon entropy in bits of a probability vector (or a spectrum).

    Entries in ``[-1e-12, 0)`` are treated as zero; ``0 log 0 = 0``.
    """
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1 or not np.all(np.isfinite(arr)):
        raise DomainError("probabilities must be a finite 1-d sequence")
    if np.any(arr < -PROB_SLACK):
        raise DomainError(f"negative probability {arr.min():.3e}")
    total = arr.sum()
    if abs(total - 1.0) > NORM_SLACK:
        raise DomainError(f"probabilities sum to {total!r}, not 1")
    nz = arr[arr > 0]
    return float(-(nz * np.log2(nz)).sum()) + 0.0


def binary_entropy(p: float) -> float:
    if not (-PROB_SLACK <= p <= 1 + PROB_SLACK):
        raise DomainError(f"binary entropy needs p in [0, 1], got {p!r}")
    p = min(max(p, 0.0), 1.0)
    h = 0.0
    for q in (p, 1.0 - p):
        if q > 0:
            h -= q * math.log2(q)
    return h


@dataclass(frozen=True)
class Herm2:
    """Hermitian 2x2 matrix ``[[a, b], [conj(b), d]]``."""

    a: float
    d: float
    b: complex = 0j

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def det(self) -> float:
        return self.a * self.d - abs(self.b) ** 2

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.b.conjugate(), self.d]], dtype=complex)

    def is_psd(self, slack: float = PSD_SLACK) -> bool:
        return self.a >= -slack and self.d >= -slack and self.det >= -slack


def sqrt_psd_2x2(m: Herm2) -> Herm2:
    """Principal square root of a PSD 2x2 Hermitian matrix.

    Uses ``S = (m + sqrt(det m) I) / sqrt(tr m + 2 sqrt(det m))``, which is
    exact for 2x2 matrices by Cayley-Hamilton.  A vanishing denominator means
    ``m`` is the zero matrix and the zero matrix is returned.
    """
    if not m.is_psd():
        raise DomainError(
            f"matrix not positive semidefinite: a={m.a!r}, d={m.d!r}, det={m.det!r}"
        )
    s = math.sqrt(max(m.det, 0.0))
    t2 = m.trace + 2.0 * s
    if t2 < 1e-15:
        return Herm2(0.0, 0.0, 0j)
    t = math.sqrt(t2)
    return Herm2((m.a + s) / t, (m.d + s) / t, complex(m.b) / t)


def as_herm4(m) -> np.ndarray:
    """Validate and return a 4x4 Hermitian matrix as a complex array."""
    arr = np.array(m, dtype=complex)
    if arr.shape != (4, 4):
        raise DomainError(f"expected a 4x4 matrix, got shape {arr.shape}")
    if not np.allclose(arr, arr.conj().T, rtol=0.0, atol=1e-14):
        raise DomainError("matrix is not Hermitian")
    arr = 0.5 * (arr + arr.conj().T)
    arr[np.diag_indices(4)] = arr.diagonal().real
    return arr


def _jacobi_symmetric(a: np.ndarray, max_sweeps: int = 50, tol: float = 1e-15):
    """Cyclic Jacobi diagonalization of a real symmetric matrix."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    offdiag = ~np.eye(n, dtype=bool)
    scale = max(np.abs(a).max(), 1e-300)
    for sweep in range(1, max_sweeps + 1):
        off = float(np.linalg.norm(a[offdiag]))
        if off <= tol * scale:
            return np.diag(a).copy(), v, sweep - 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    off = float(np.linalg.norm(a[offdiag]))
    if off <= 1e-12 * scale:
        return np.diag(a).copy(), v, max_sweeps
    raise ConvergenceError(f"Jacobi off-diagonal norm {off:.3e} did not vanish", max_sweeps)


def eigh_hermitian_4x4(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and unit eigenvectors (columns) of a 4x4
    Hermitian matrix.

    ``A + iB`` is embedded as the real symmetric ``[[A, -B], [B, A]]``, whose
    spectrum is that of ``A + iB`` with every value doubled.  An embedded
    eigenvector ``[x; y]`` gives the complex eigenvector ``x + iy``.
    """
    h = as_herm4(m)
    emb = np.block([[h.real, -h.imag], [h.imag, h.real]])
    w, v, _ = _jacobi_symmetric(emb)
    order = np.argsort(-w, kind="stable")[0::2]
    vals = w[order]
    vecs = v[:4, order] + 1j * v[4:, order]
    vecs /= np.linalg.norm(vecs, axis=0)
    return vals, vecs


def eig_hermitian_4x4(m) -> list[float]:
    return [float(x) for x in eigh_hermitian_4x4(m)[0]]


def bisect_monotone(
    f: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    xtol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Solve ``f(x) = target`` for nondecreasing ``f`` on ``[lo, hi]``.

    Iterates until the bracket is at most ``xtol`` wide; stopping on a small
    residual instead would lose accuracy where ``f`` is flat.
    """
    flo, fhi = f(lo), f(hi)
    if not (flo <= target <= fhi):
        raise BracketError(f"target {target!r} outside [f(lo), f(hi)] = [{flo!r}, {fhi!r}]")
    if flo == target:
        return lo
    if fhi == target:
        return hi
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == target:
            return mid
        if fm < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
