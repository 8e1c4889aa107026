"""Closed-form spectral-gap bounds and the verifiers that check them.

Every inequality here is strict, so a check passes only when the certified
enclosure for the spectral radius lies strictly on the right side of the
bound. An enclosure that straddles a bound is refined (tolerance /100 down to
1e-13, then the dense oracle when n <= 512); if it still straddles, the
verdict is ``"inconclusive"``. ``"fail"`` is reserved for an enclosure that
lies entirely on the wrong side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import (
    DisconnectedAfterDeletion,
    EdgeExists,
    NoConvergence,
    NonPositiveBeta,
    NotConnected,
    NotIrregular,
    NotRegular,
    RegularGraph,
)
from .graph import Graph, add_edge, bfs_distances, degree_profile, delete_edge, distance_summary, is_connected
from .spectral import (
    DEFAULT_TOL,
    ORACLE_MAX_N,
    Lambda2Estimate,
    SpectralEstimate,
    dense_spectrum_oracle,
    lambda2,
    oracle_accuracy,
    principal_pair,
)

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
MIN_TOL = 1e-13
MAAS_TOL = 1e-13


# --- closed forms -----------------------------------------------------------


def bound_main(n: int, diameter: int) -> float:
    """``1/(nD)``."""
    return 1.0 / (n * diameter)


def bound_cgn(n: int, diameter: int, max_degree: int, m: int) -> float:
    """``1/(n(D + 1/(n*Delta - 2m)))``; raises NotIrregular when ``n*Delta == 2m``."""
    slack = n * max_degree - 2 * m
    if slack <= 0:
        raise NotIrregular("n*Delta - 2m must be at least 1")
    return 1.0 / (n * (diameter + 1.0 / slack))


def diameter_bound_dense(n: int, max_degree: int) -> float:
    """``3(n+2)/Delta``, an upper bound on the diameter after deleting an edge."""
    if max_degree < 1:
        raise ValueError("max_degree must be positive")
    return 3.0 * (n + 2) / max_degree


def nikiforov_lower_bound(n: int, m: int) -> float:
    """``2m/n + 2/(4m+1)``."""
    if m < 1:
        raise ValueError("m must be positive")
    return 2.0 * m / n + 2.0 / (4 * m + 1)


def nikiforov_hypothesis(g: Graph) -> bool:
    """At least two vertices of maximum degree and two of smaller degree."""
    prof = degree_profile(g)
    top = sum(1 for d in prof.degrees if d == prof.max_degree)
    return top >= 2 and g.n - top >= 2


def edge_addition_bounds(k: int, n: int, lambda2_value: float) -> tuple[float, float | None]:
    """Two-sided bound on the spectral-radius shift from adding one edge.

    The upper bound is ``None`` unless ``k - lambda2 > 1``.
    """
    if k < 1 or n <= k:
        raise ValueError("need k >= 1 and n > k")
    lower = 2.0 / n * (1.0 + 1.0 / (2 * (k + 1)))
    margin = k - lambda2_value
    upper = 2.0 / n * (1.0 + 1.0 / (margin - 1.0)) if margin > 1.0 else None
    return lower, upper


def constant_c(max_degree: int, n: int, diameter: int, lambda1_lo: float, lambda1_hi: float) -> tuple[float, float]:
    """Enclosure of ``(Delta - lambda1) * n * D``."""
    scale = n * diameter
    return (max_degree - lambda1_hi) * scale, (max_degree - lambda1_lo) * scale


# --- Maas's equation ---------------------------------------------------------


@dataclass(frozen=True)
class MaasSolution:
    beta: float
    delta: float
    bound: float
    bound_regular_form: float | None
    xi: float
    xj: float


def maas_lhs(delta: float, xi: float, xj: float) -> float:
    s = xi + xj
    return delta * (1 + delta) * (2 + delta) / (s * s + delta * (2 + delta + 2 * xi * xj))


def maas_solve_delta(beta: float, xi: float, xj: float, n: float | None = None) -> MaasSolution:
    """Positive root of Maas's equation by bisection, and the bound ``1 + delta - beta``.

    ``n`` (or ``xi == xj``, giving ``n = 1/xi^2``) enables the regular-case
    form ``2 beta / (delta n)``.
    """
    if not beta > 0:
        raise NonPositiveBeta(f"beta must be positive, got {beta}")
    lo, hi = 0.0, beta + (xi + xj) ** 2 * beta + 2.0
    while maas_lhs(hi, xi, xj) <= beta:
        hi *= 2.0
    while hi - lo > MAAS_TOL:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if maas_lhs(mid, xi, xj) < beta:
            lo = mid
        else:
            hi = mid
    delta = 0.5 * (lo + hi)
    if n is None and xi == xj and xi > 0:
        n = 1.0 / (xi * xj)
    regular_form = 2.0 * beta / (delta * n) if n is not None else None
    return MaasSolution(beta, delta, 1.0 + delta - beta, regular_form, xi, xj)


def maas_delta_regular(beta: float, n: float) -> float:
    """Closed-form root when both entries equal ``1/sqrt(n)``.

    The equation reduces to ``delta^2 + (1 - beta) delta - 2 beta / n = 0``.
    """
    if not beta > 0:
        raise NonPositiveBeta(f"beta must be positive, got {beta}")
    b = 1.0 - beta
    c = 2.0 * beta / n
    root = math.sqrt(b * b + 4.0 * c)
    if b <= 0:
        return (-b + root) / 2.0
    return 2.0 * c / (b + root)


# --- certification engine ------------------------------------------------------


def interval_verdict(lo: float, hi: float, lower: float | None = None, upper: float | None = None) -> str:
    """Verdict for ``lower < t < upper`` given ``t`` in ``[lo, hi]``."""
    if (lower is not None and hi <= lower) or (upper is not None and lo >= upper):
        return FAIL
    if (lower is None or lo > lower) and (upper is None or hi < upper):
        return PASS
    return INCONCLUSIVE


Check = Callable[[float, float], str]


@dataclass
class Certified:
    """Final λ₁ enclosure and the verdict of each named check against it."""

    lambda1_lo: float
    lambda1_hi: float
    verdicts: dict[str, str]
    estimate: SpectralEstimate | None
    used_oracle: bool = False


def _tolerances(tol: float) -> list[float]:
    out = [tol]
    while out[-1] > MIN_TOL:
        out.append(max(out[-1] / 100.0, MIN_TOL))
    return out


def certify(g: Graph, checks: dict[str, Check], tol: float = DEFAULT_TOL) -> Certified:
    """Decide every check on ``lambda1(g)``, refining the enclosure on straddles."""
    est = None
    verdicts: dict[str, str] = {}
    lo = hi = math.nan
    last_error = None
    for t in _tolerances(tol):
        try:
            est = principal_pair(g, t)
        except NoConvergence as exc:
            last_error = exc
            continue
        lo, hi = est.lambda1_lo, est.lambda1_hi
        verdicts = {name: chk(lo, hi) for name, chk in checks.items()}
        if INCONCLUSIVE not in verdicts.values():
            return Certified(lo, hi, verdicts, est)
    if est is None:
        raise last_error
    if g.n <= ORACLE_MAX_N:
        lam = float(dense_spectrum_oracle(g)[0])
        acc = oracle_accuracy(degree_profile(g).max_degree)
        olo, ohi = max(lo, lam - acc), min(hi, lam + acc)
        if olo <= ohi:
            for name, chk in checks.items():
                if verdicts[name] == INCONCLUSIVE:
                    verdicts[name] = chk(olo, ohi)
            return Certified(olo, ohi, verdicts, est, used_oracle=True)
    return Certified(lo, hi, verdicts, est)


def _gap_check(max_degree: int, lower: float | None = None, upper: float | None = None) -> Check:
    def check(lo, hi):
        return interval_verdict(max_degree - hi, max_degree - lo, lower, upper)

    return check


def _shift_check(base: float, lower: float | None = None, upper: float | None = None) -> Check:
    def check(lo, hi):
        return interval_verdict(lo - base, hi - base, lower, upper)

    return check


# --- reports ---------------------------------------------------------------------


@dataclass
class GapReport:
    n: int
    m: int
    max_degree: int
    diameter: int
    lambda1_lo: float
    lambda1_hi: float
    gap_lo: float
    gap_hi: float
    bound_main: float
    bound_cgn: float
    c_lo: float
    c_hi: float
    verdict: str
    verdict_cgn: str
    # populated by edge_deletion_report only
    upper_bound: float | None = None
    verdict_upper: str | None = None
    diameter_bound: float | None = None
    diameter_check: bool | None = None
    deleted_edge: tuple[int, int] | None = None
    # distance from the smallest eigenvector entry to the nearest entry >= 1/sqrt(n)
    large_entry_distance: int | None = None
    notes: list[str] = field(default_factory=list)


def large_entry_distance(g: Graph, eigvec) -> int:
    """Distance from the vertex with the smallest entry of ``eigvec`` to the
    nearest vertex whose entry is at least ``1/sqrt(n)``.

    Reported, not asserted: when this is below the diameter for every
    irregular graph, the ``1/(nD)`` bound follows directly.
    """
    dist = bfs_distances(g, int(eigvec.argmin()))
    threshold = 1.0 / math.sqrt(g.n)
    return min(d for d, x in zip(dist, eigvec) if x >= threshold)


def _require_connected_irregular(g: Graph):
    if not is_connected(g):
        raise NotConnected("theorem applies to connected graphs only")
    prof = degree_profile(g)
    if prof.is_regular:
        raise RegularGraph("theorem applies to irregular graphs only")
    return prof


def verify_main_theorem(g: Graph, tol: float = DEFAULT_TOL) -> GapReport:
    """Certify ``Delta - lambda1 > 1/(nD)`` (and the weaker CGN bound) for ``g``."""
    prof = _require_connected_irregular(g)
    diameter = distance_summary(g).diameter
    delta = prof.max_degree
    b_main = bound_main(g.n, diameter)
    b_cgn = bound_cgn(g.n, diameter, delta, g.m)
    cert = certify(g, {"main": _gap_check(delta, b_main), "cgn": _gap_check(delta, b_cgn)}, tol)
    c_lo, c_hi = constant_c(delta, g.n, diameter, cert.lambda1_lo, cert.lambda1_hi)
    notes = ["dense oracle used"] if cert.used_oracle else []
    return GapReport(
        g.n, g.m, delta, diameter, cert.lambda1_lo, cert.lambda1_hi,
        delta - cert.lambda1_hi, delta - cert.lambda1_lo, b_main, b_cgn, c_lo, c_hi,
        cert.verdicts["main"], cert.verdicts["cgn"],
        large_entry_distance=large_entry_distance(g, cert.estimate.eigvec), notes=notes,
    )


def edge_deletion_report(g: Graph, edge: tuple[int, int], tol: float = DEFAULT_TOL) -> GapReport:
    """Certify ``2/n > Delta - lambda1(G - e) > 1/(nD')`` for a regular ``G``."""
    prof = degree_profile(g)
    if not prof.is_regular:
        raise NotRegular("edge deletion corollary needs a regular graph")
    u, v = edge
    h = delete_edge(g, u, v)
    if not is_connected(h):
        raise DisconnectedAfterDeletion(f"deleting {{{u},{v}}} disconnects the graph")
    delta = prof.max_degree
    diameter = distance_summary(h).diameter
    b_main = bound_main(h.n, diameter)
    b_cgn = bound_cgn(h.n, diameter, delta, h.m)
    upper = 2.0 / h.n
    cert = certify(
        h,
        {
            "main": _gap_check(delta, b_main),
            "cgn": _gap_check(delta, b_cgn),
            "upper": _gap_check(delta, upper=upper),
        },
        tol,
    )
    c_lo, c_hi = constant_c(delta, h.n, diameter, cert.lambda1_lo, cert.lambda1_hi)
    d_bound = diameter_bound_dense(h.n, delta)
    verdict = PASS if cert.verdicts["main"] == PASS and cert.verdicts["upper"] == PASS else (
        FAIL if FAIL in (cert.verdicts["main"], cert.verdicts["upper"]) else INCONCLUSIVE
    )
    return GapReport(
        h.n, h.m, delta, diameter, cert.lambda1_lo, cert.lambda1_hi,
        delta - cert.lambda1_hi, delta - cert.lambda1_lo, b_main, b_cgn, c_lo, c_hi,
        verdict, cert.verdicts["cgn"],
        upper_bound=upper, verdict_upper=cert.verdicts["upper"],
        diameter_bound=d_bound, diameter_check=diameter < d_bound,
        deleted_edge=(min(u, v), max(u, v)),
        notes=["dense oracle used"] if cert.used_oracle else [],
    )


@dataclass
class EdgeAddReport:
    k: int
    n: int
    added_edge: tuple[int, int]
    lambda2: float
    lambda2_uncertainty: float
    lower: float
    upper: float | None
    observed_lo: float
    observed_hi: float
    verdict: str
    upper_applicable: bool
    maas: MaasSolution | None
    verdict_maas: str | None
    nikiforov_bound: float | None
    verdict_nikiforov: str | None
    notes: list[str] = field(default_factory=list)


def verify_edge_addition(
    h: Graph, edge: tuple[int, int], tol: float = DEFAULT_TOL, lambda2_estimate: Lambda2Estimate | None = None
) -> EdgeAddReport:
    """Certify the two-sided shift bound for ``H + e`` with ``H`` connected and ``k``-regular.

    When ``k - lambda2(H) <= 1`` (with ``lambda2`` taken at the top of its
    uncertainty) only the lower bound is checked and the upper bound is
    reported as inapplicable. Maas's bound ``1 + delta - beta`` and
    Nikiforov's lower bound (when its degree hypothesis holds for ``H + e``)
    are checked alongside. ``lambda2_estimate`` lets a caller reuse one
    second-eigenvalue computation across many added edges.
    """
    prof = degree_profile(h)
    if not prof.is_regular:
        raise NotRegular("edge addition theorem needs a regular graph")
    if not is_connected(h):
        raise NotConnected("edge addition theorem needs a connected graph")
    u, v = edge
    if u == v or h.has_edge(u, v):
        raise EdgeExists(f"{{{u},{v}}} is not a non-edge of H")
    k, n = prof.max_degree, h.n
    l2 = lambda2_estimate or lambda2(h, tol=max(tol, 1e-9))
    l2_hi = l2.lambda2 + l2.uncertainty
    lower, upper = edge_addition_bounds(k, n, l2_hi)
    notes = []
    if upper is None:
        notes.append("upper inapplicable: k - lambda2 <= 1")
    g = add_edge(h, u, v)
    checks: dict[str, Check] = {"theorem": _shift_check(k, lower, upper)}
    beta = k - l2_hi
    maas = None
    if beta > 0:
        x = 1.0 / math.sqrt(n)
        maas = maas_solve_delta(beta, x, x, n)
        checks["maas"] = _shift_check(k, upper=maas.bound)
    else:
        notes.append("maas inapplicable: lambda1 - lambda2 not positive")
    nik = None
    if nikiforov_hypothesis(g):
        nik = nikiforov_lower_bound(n, g.m)
        checks["nikiforov"] = _shift_check(0.0, lower=nik)
    else:
        notes.append("nikiforov skipped: degree hypothesis fails")
    cert = certify(g, checks, tol)
    if cert.used_oracle:
        notes.append("dense oracle used")
    return EdgeAddReport(
        k, n, (min(u, v), max(u, v)), l2.lambda2, l2.uncertainty, lower, upper,
        cert.lambda1_lo - k, cert.lambda1_hi - k, cert.verdicts["theorem"], upper is not None,
        maas, cert.verdicts.get("maas"), nik, cert.verdicts.get("nikiforov"), notes,
    )


def verify_nikiforov(g: Graph, tol: float = DEFAULT_TOL) -> str:
    """Check ``lambda1 > 2m/n + 2/(4m+1)``; returns ``"skipped"`` when the hypothesis fails."""
    if not nikiforov_hypothesis(g):
        return "skipped"
    if not is_connected(g):
        raise NotConnected("certified spectral radius needs a connected graph")
    bound = nikiforov_lower_bound(g.n, g.m)
    return certify(g, {"nik": _shift_check(0.0, lower=bound)}, tol).verdicts["nik"]
