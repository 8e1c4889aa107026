"""Spectral radius enclosures, principal eigenvectors and second eigenvalues.

The principal eigenpair comes from power iteration on ``A + I`` started at
the all-ones vector. The shift keeps bipartite graphs from oscillating, and
the all-ones start has positive overlap with the Perron vector of any
connected graph, so the iteration always converges.

Every estimate is turned into an enclosure for the spectral radius: the
Rayleigh quotient ``q`` of a unit vector is a lower bound for the largest
eigenvalue of a symmetric matrix, and some eigenvalue lies within the residual
norm ``||Ax - qx||`` of ``q``. The enclosure is ``[q, q + residual]`` widened
outward by a floating-point rounding allowance; ``residual_norm`` reports the
full width, so ``lambda1_hi == lambda1_lo + residual_norm``.

The dense oracle is written independently of the iteration (Householder
tridiagonalisation followed by Sturm-sequence bisection) so that the two can
check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotConnected, RegularGraph, TooLarge
from .graph import Graph, degree_profile, is_connected
from .rng import SplitMix64

DEFAULT_TOL = 1e-11
ORACLE_MAX_N = 512
_EPS = float(np.finfo(np.float64).eps)
# repeated squaring of the dense iteration matrix is used up to this size
_SQUARING_MAX_N = 600


def default_max_iter(n: int) -> int:
    return 10 * n * math.ceil(math.log2(max(n, 1)) + 20)


def oracle_accuracy(max_degree: int) -> float:
    """Absolute accuracy promised for every eigenvalue from the dense oracle."""
    return 1e-10 * max(1, max_degree)


@dataclass(frozen=True, eq=False)
class SpectralEstimate:
    lambda1_lo: float
    lambda1_hi: float
    eigvec: np.ndarray
    residual_norm: float
    iterations: int

    @property
    def width(self) -> float:
        return self.lambda1_hi - self.lambda1_lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lambda1_lo + self.lambda1_hi)

    def __eq__(self, other):
        if not isinstance(other, SpectralEstimate):
            return NotImplemented
        return (
            self.lambda1_lo == other.lambda1_lo
            and self.lambda1_hi == other.lambda1_hi
            and self.residual_norm == other.residual_norm
            and self.iterations == other.iterations
            and np.array_equal(self.eigvec, other.eigvec)
        )


def _certify(g: Graph, x: np.ndarray, max_degree: int) -> tuple[float, float, float]:
    """Rayleigh quotient, residual norm and rounding allowance for the unit vector ``x``.

    The allowance covers the binary64 rounding in forming ``x.Ax`` and
    ``Ax - qx``; it is applied outward on both ends of the enclosure.
    """
    ax = g.csr @ x
    q = float(x @ ax)
    r = ax - q * x
    rounding = _EPS * (abs(q) + 1.0) * math.sqrt((max_degree + 2) * g.n) * float(np.abs(x).max())
    return q, float(np.linalg.norm(r)), rounding


def _estimate(g, x, max_degree, iterations):
    q, res, rounding = _certify(g, x, max_degree)
    lo = q - rounding
    width = res + 2.0 * rounding
    return SpectralEstimate(lo, lo + width, x, width, iterations)


def principal_pair(g: Graph, tol: float = DEFAULT_TOL, max_iter: int | None = None) -> SpectralEstimate:
    """Certified spectral radius and unit principal eigenvector of ``g``.

    Raises NotConnected for disconnected input and NoConvergence when the
    residual is still above ``tol`` after ``max_iter`` power steps. For small
    graphs the iterates ``(A + I)^k 1`` are produced by repeated squaring of
    the (nonnegative) iteration matrix; ``iterations`` reports ``k``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not is_connected(g):
        raise NotConnected("principal eigenvector requires a connected graph")
    n = g.n
    if max_iter is None:
        max_iter = default_max_iter(n)
    delta = degree_profile(g).max_degree
    if n == 1:
        return SpectralEstimate(0.0, 0.0, np.ones(1), 0.0, 0)
    if n <= _SQUARING_MAX_N:
        return _power_by_squaring(g, tol, max_iter, delta)
    return _power_plain(g, tol, max_iter, delta)


def _normalized(y: np.ndarray) -> np.ndarray:
    return y / np.linalg.norm(y)


def _power_by_squaring(g, tol, max_iter, delta):
    n = g.n
    m = g.to_dense()
    m[np.diag_indices(n)] += 1.0
    m /= delta + 1.0
    ones = np.ones(n)
    powers = [m]
    steps = 1
    res = math.inf
    while True:
        x = _normalized(powers[-1] @ ones)
        est = _estimate(g, x, delta, steps)
        res = est.residual_norm
        if res <= tol:
            return est
        if 2 * steps > max_iter:
            break
        p = powers[-1] @ powers[-1]
        p /= p.max()
        powers.append(p)
        steps *= 2
    # spend the rest of the budget with the smaller powers
    for i in range(len(powers) - 2, -1, -1):
        span = 1 << i
        if steps + span > max_iter:
            continue
        x = _normalized(powers[i] @ x)
        steps += span
        est = _estimate(g, x, delta, steps)
        res = est.residual_norm
        if res <= tol:
            return est
    raise NoConvergence(f"residual {res:.3e} > tol {tol:.1e} after {steps} iterations", steps, res)


def _power_plain(g, tol, max_iter, delta):
    a = g.csr
    x = np.full(g.n, 1.0 / math.sqrt(g.n))
    res = math.inf
    for it in range(1, max_iter + 1):
        x = _normalized(a @ x + x)
        if it % 16 == 0 or it == max_iter:
            est = _estimate(g, x, delta, it)
            res = est.residual_norm
            if res <= tol:
                return est
    raise NoConvergence(f"residual {res:.3e} > tol {tol:.1e} after {max_iter} iterations", max_iter, res)


# --- dense oracle ----------------------------------------------------------


def _tridiagonalize(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Householder reduction of a symmetric matrix; returns (diag, offdiag)."""
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1 :, k]
        tail = float(np.linalg.norm(x[1:]))
        if tail == 0.0:
            continue
        norm_x = math.hypot(float(x[0]), tail)
        alpha = -norm_x if x[0] >= 0 else norm_x
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        s = a[k + 1 :, k + 1 :]
        p = s @ v
        w = p - (v @ p) * v
        s -= 2.0 * (np.outer(v, w) + np.outer(w, v))
        a[k + 1, k] = a[k, k + 1] = alpha
        a[k + 2 :, k] = 0.0
        a[k, k + 2 :] = 0.0
    return np.diag(a).copy(), np.diag(a, -1).copy()


def _sturm_counts(d: np.ndarray, e2: np.ndarray, shifts: np.ndarray, pivmin: float) -> np.ndarray:
    """Number of eigenvalues strictly below each shift."""
    q = d[0] - shifts
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(np.int64)
    for i in range(1, len(d)):
        q = (d[i] - shifts) - e2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def tridiagonal_eigenvalues(d: np.ndarray, e: np.ndarray) -> np.ndarray:
    """All eigenvalues (ascending) of a symmetric tridiagonal matrix by bisection."""
    n = len(d)
    if n == 0:
        return np.empty(0)
    e_abs = np.abs(e)
    radius = np.zeros(n)
    radius[:-1] += e_abs
    radius[1:] += e_abs
    lo_all = float((d - radius).min())
    hi_all = float((d + radius).max())
    scale = max(abs(lo_all), abs(hi_all), 1.0)
    lo_all -= 2 * _EPS * scale
    hi_all += 2 * _EPS * scale
    e2 = e * e
    pivmin = _EPS * _EPS * max(1.0, float(e2.max()) if n > 1 else 1.0)
    index = np.arange(n)
    lo = np.full(n, lo_all)
    hi = np.full(n, hi_all)
    target = 2 * _EPS * scale
    while True:
        mid = 0.5 * (lo + hi)
        stuck = (mid <= lo) | (mid >= hi)
        if np.all((hi - lo <= target) | stuck):
            break
        below = _sturm_counts(d, e2, mid, pivmin)
        above_j = below > index
        hi = np.where(above_j, mid, hi)
        lo = np.where(above_j, lo, mid)
    return 0.5 * (lo + hi)


def dense_spectrum_oracle(g: Graph) -> np.ndarray:
    """All adjacency eigenvalues in descending order (n <= 512)."""
    if g.n > ORACLE_MAX_N:
        raise TooLarge(f"dense oracle limited to n <= {ORACLE_MAX_N}, got {g.n}")
    d, e = _tridiagonalize(g.to_dense())
    return tridiagonal_eigenvalues(d, e)[::-1].copy()


# --- second eigenvalue -----------------------------------------------------


@dataclass(frozen=True)
class Lambda2Estimate:
    lambda2: float
    method: str  # "dense" or "deflated-iteration"
    uncertainty: float


def lambda2(g: Graph, tol: float = 1e-9, max_iter: int | None = None) -> Lambda2Estimate:
    if not is_connected(g):
        raise NotConnected("lambda2 requires a connected graph")
    if g.n < 2:
        raise ValueError("lambda2 needs at least two vertices")
    delta = degree_profile(g).max_degree
    if g.n <= ORACLE_MAX_N:
        spec = dense_spectrum_oracle(g)
        return Lambda2Estimate(float(spec[1]), "dense", oracle_accuracy(delta))
    return _deflated_lambda2(g, tol, max_iter, delta)


def _deflated_lambda2(g, tol, max_iter, delta):
    top = principal_pair(g)
    v = top.eigvec
    if max_iter is None:
        max_iter = default_max_iter(g.n)
    rng = SplitMix64(0x5EED)
    x = np.array([rng.random() - 0.5 for _ in range(g.n)])
    x -= v * (v @ x)
    x = _normalized(x)
    a = g.csr
    res = math.inf
    for it in range(1, max_iter + 1):
        y = a @ x + delta * x
        y -= v * (v @ y)
        x = _normalized(y)
        if it % 16 == 0 or it == max_iter:
            ax = a @ x
            ax -= v * (v @ ax)
            mu = float(x @ ax)
            res = float(np.linalg.norm(ax - mu * x))
            if res <= tol:
                return Lambda2Estimate(mu, "deflated-iteration", res + top.width)
    raise NoConvergence(f"deflated iteration residual {res:.3e} > tol {tol:.1e}", max_iter, res)


# --- identities from the proof of the nD bound ------------------------------


@dataclass(frozen=True)
class GapIdentityCheck:
    lhs: float
    rhs_quadratic: float
    rhs_linear: float
    max_abs_error: float
    tolerance: float
    regular: bool

    @property
    def holds(self) -> bool:
        return self.max_abs_error <= self.tolerance


def gap_identity_check(g: Graph, est: SpectralEstimate) -> GapIdentityCheck:
    """Compare ``Delta - q`` with the two expressions it equals at an eigenvector.

    ``sum (Delta - d_i) x_i^2 + sum_{kl in E} (x_k - x_l)^2`` holds for any unit
    vector; ``sum (Delta - d_i) x_i / sum x_i`` holds at the eigenvector, so
    its deviation is governed by the residual. Regular graphs are accepted
    and flagged (both sides vanish).
    """
    prof = degree_profile(g)
    x = est.eigvec
    slack = prof.max_degree - np.asarray(prof.degrees, dtype=np.float64)
    lhs = prof.max_degree - est.lambda1_lo
    edges = np.array(list(g.edges()), dtype=np.int64).reshape(-1, 2)
    diffs = x[edges[:, 0]] - x[edges[:, 1]]
    rhs_q = float(slack @ (x * x) + diffs @ diffs)
    rhs_l = float((slack @ x) / x.sum())
    err = max(abs(rhs_q - lhs), abs(rhs_l - lhs))
    return GapIdentityCheck(lhs, rhs_q, rhs_l, err, 10.0 * est.residual_norm, prof.is_regular)


def max_entry_check(g: Graph, est: SpectralEstimate) -> bool:
    """True iff the largest principal-eigenvector entry exceeds ``1/sqrt(n)``."""
    if degree_profile(g).is_regular:
        raise RegularGraph("max-entry property needs an irregular graph")
    if not is_connected(g):
        raise NotConnected("max-entry property needs a connected graph")
    return float(est.eigvec.max()) > 1.0 / math.sqrt(g.n)
