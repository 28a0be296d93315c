"""End-to-end polytope decision with bounded work and exact certification.

The pipeline: classify the eigenvalue angles of the inverse map matrix; if
none is a rational multiple of pi the hull is not a polytope; otherwise the
denominators give a hard bound k on the number of hull-recursion steps that
can matter.  Equal consecutive vertex counts (stabilization) within the bound
signal a polytope, in which case each vertex address is resolved to an
eventually periodic pattern, evaluated exactly, and the resulting candidate
polytope is certified; strict count growth at every step up to the bound
yields the not-a-polytope verdict.

Certification proves conv(F) = P* from three checks: (a) every candidate
point equals the exact value of its address, hence lies in F; (b) the
candidates are exactly the vertices of their own hull P*; (c) every image
T(v + d_j) of a vertex stays inside P*, hence the attractor map sends P*
into itself and F is trapped inside P*.  Together: P* <= conv(F) <= P*.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Optional

from . import hull as hull_mod
from . import linalg, spectral
from ._version import __version__
from .errors import ExtractionFailure
from .ifs import (
    EpAddress,
    IfsModel,
    evaluate_ep_address,
    initial_ledger,
    tail_error_bound,
    _step,
)
from .linalg import RATIONAL

VERDICT_POLYTOPE = "POLYTOPE"
VERDICT_EMPTY_U = "NOT_POLYTOPE_EMPTY_U"
VERDICT_NO_STABILIZATION = "NOT_POLYTOPE_NO_STABILIZATION"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"

NOTE_VERTEX_SETS = "V_k is computed as the vertex set of conv(A_k)"
NOTE_DECISION_RULE = (
    "decision rule: #V_i == #V_{i+1} for some i <= k means polytope; "
    "#V_i != #V_{i+1} for every i <= k means not a polytope"
)
NOTE_FLOAT = "float mode: all comparisons are tolerance-based and the decision is uncertified"


@dataclass(frozen=True)
class CountRow:
    i: int
    count: int
    hausdorff_delta: float


@dataclass(frozen=True)
class Decision:
    verdict: str
    certified: bool = False
    stabilization_index: Optional[int] = None
    vertices: Optional[tuple] = None  # ((point, EpAddress), ...) in normalized coords
    reason: Optional[str] = None


@dataclass(frozen=True)
class CertCheck:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class CertResult:
    ok: bool
    certified: bool
    checks: tuple
    failure: Optional[str] = None


@dataclass(frozen=True)
class CrossCheckSection:
    status: str  # "agree" | "disagree" | "inapplicable" | "not_compared"
    result: Optional[spectral.NormalCriterionResult]


@dataclass(frozen=True)
class Report:
    eigenvalue_classes: tuple
    bound: Optional[spectral.StepBound]
    counts: tuple
    decision: Decision
    cross_check: Optional[CrossCheckSection]
    certification: Optional[CertResult]
    timing: float
    warnings: tuple
    version: str = __version__


def detect_stabilization(counts):
    """Smallest i (1-based) with counts[i-1] == counts[i], or None."""
    for i in range(1, len(counts)):
        if counts[i - 1] == counts[i]:
            return i
    return None


def extract_ep_addresses(ledger, min_reps: int = 3):
    """Resolve each length-N vertex address to prefix + primitive period.

    For each address the scan looks for the smallest prefix length m and then
    the smallest period p with m + min_reps*p <= N such that the address
    repeats with period p from position m on.  Minimizing the prefix first
    matters: a truncated periodic word usually ends in a short spurious run
    (for example a tail of equal digits) that a period-first scan would latch
    onto, producing an address that evaluates back to the truncation point
    instead of the limit vertex.  Any vertex without a pattern raises
    ExtractionFailure (the caller deepens the ledger and retries).
    """
    n = ledger.step
    out = []
    for point, address in ledger.entries:
        found = None
        for m in range(0, n - min_reps + 1):
            for p in range(1, (n - m) // min_reps + 1):
                if all(address[s] == address[s + p] for s in range(m, n - p)):
                    found = (m, p)
                    break
            if found:
                break
        if not found:
            raise ExtractionFailure(
                f"no period with at least {min_reps} repetitions in address of {point}"
            )
        m, p = found
        out.append(EpAddress(address[:m], address[m : m + p]))
    return out


def certify_polytope(model: IfsModel, candidates, *, eps: Optional[float] = None) -> CertResult:
    """Verify that the candidate (address, point) list is exactly conv(F).

    Checks (a) address evaluation, (b) extremality, (c) self-mapping; see the
    module docstring.  In rational mode all three are exact and certified=True
    on success; in float mode the checks run with the given tolerance and the
    result is reported as numerically consistent but never certified.
    """
    exact = model.mode == RATIONAL
    if eps is None:
        eps = model.geom_eps()
    checks = []
    failure = None

    points = []
    eval_ok = True
    for ep, point in candidates:
        value = evaluate_ep_address(model, ep)
        if exact:
            good = value == point
        else:
            good = linalg.norm2(linalg.vec_sub(value, point)) <= eps
        if not good:
            eval_ok = False
        points.append(point)
    checks.append(
        CertCheck(
            "address_evaluation",
            eval_ok,
            "every candidate point equals the exact value of its address",
        )
    )
    if not eval_ok:
        failure = "address_evaluation"

    poly = hull_mod.convex_hull(points, eps=model.geom_eps())
    if exact:
        extremal_ok = poly.vertex_set == frozenset(points) and len(set(points)) == len(points)
    else:
        extremal_ok = len(poly.vertex_set) == len(points)
    checks.append(
        CertCheck(
            "extremality",
            extremal_ok,
            "the candidates are exactly the vertices of their own hull",
        )
    )
    if failure is None and not extremal_ok:
        failure = "extremality"

    containment_ok = True
    first_violation = None
    for point in points:
        for j, digit in enumerate(model.digits, start=1):
            image = linalg.mat_vec(model.matrix, linalg.vec_add(point, digit))
            if not hull_mod.contains(poly, image, eps=eps):
                containment_ok = False
                if first_violation is None:
                    first_violation = (point, j)
    detail = "every image T(v + d_j) of a candidate vertex lies in the hull"
    if first_violation is not None:
        detail = f"image of vertex {first_violation[0]} under digit {first_violation[1]} escapes the hull"
    checks.append(CertCheck("self_mapping", containment_ok, detail))
    if failure is None and not containment_ok:
        failure = "self_mapping"

    ok = failure is None
    return CertResult(ok, ok and exact, tuple(checks), failure)


def inverse_eigenvalue_classes(model: IfsModel):
    eig_t = linalg.eigenvalues(model.matrix, eps_eig=model.tol.eps_eig)
    inverse_eigs = [1.0 / z for z in eig_t]
    distinct = spectral.distinct_eigenvalues(inverse_eigs)
    return [spectral.classify_angle(z, model.tol) for z in distinct]


def decide_polytope(model: IfsModel, bound_mode: str = "product"):
    """Run the bounded decision pipeline; returns (Decision, Report).

    The stabilization search performs at most k+1 hull steps.  On
    stabilization the ledger is deepened for address extraction; extraction
    or certification failures deepen further (doubling, three retries) before
    giving up with an inconclusive verdict.
    """
    start = time.perf_counter()
    warnings = list(model.warnings)
    warnings.append(NOTE_VERTEX_SETS)
    warnings.append(NOTE_DECISION_RULE)
    if model.mode != RATIONAL:
        warnings.append(NOTE_FLOAT)

    classes = tuple(inverse_eigenvalue_classes(model))
    bound = spectral.compute_step_bound(classes, bound_mode)

    if bound is None:
        warnings.append(
            "U is empty: no eigenvalue angle matches a rational multiple of pi "
            f"(denominators <= {model.tol.denom_max}, tolerance {model.tol.angle_tol:g}); "
            "an empty U is possible only if the ambient dimension is even"
        )
        decision = Decision(
            VERDICT_EMPTY_U,
            reason=f"no rational-angle eigenvalue up to denominator {model.tol.denom_max}",
        )
        report = Report(
            classes, None, (), decision, None, None, time.perf_counter() - start, tuple(warnings)
        )
        return decision, report

    k = bound.k
    counts = []
    ledger = initial_ledger(model)
    prev_poly = hull_mod.convex_hull(ledger.points, eps=model.geom_eps())
    stabilization = None
    for i in range(1, k + 2):
        ledger, poly = _step(model, ledger)
        counts.append(CountRow(i, ledger.count, hull_mod.hausdorff(prev_poly, poly)))
        prev_poly = poly
        if i >= 2 and counts[-2].count == counts[-1].count:
            stabilization = i - 1
            break

    if stabilization is None:
        decision = Decision(
            VERDICT_NO_STABILIZATION,
            reason=f"vertex counts grew strictly for every i <= {k}",
        )
        report = Report(
            classes,
            bound,
            tuple(counts),
            decision,
            None,
            None,
            time.perf_counter() - start,
            tuple(warnings),
        )
        return decision, report

    # stabilization found: extract addresses, evaluate exactly, certify
    depth = stabilization + max(2 * k, 8)
    cert = None
    decision = None
    last_error = "extraction never ran"
    for _attempt in range(4):
        while ledger.step < depth:
            ledger, _ = _step(model, ledger)
        try:
            addresses = extract_ep_addresses(ledger)
        except ExtractionFailure as exc:
            cert = None
            last_error = str(exc)
            depth *= 2
            continue
        candidates = [(ep, evaluate_ep_address(model, ep)) for ep in addresses]
        cert_eps = None
        if model.mode != RATIONAL:
            cert_eps = max(model.tol.eps_geom, tail_error_bound(model, ledger.step))
        cert = certify_polytope(model, candidates, eps=cert_eps)
        if cert.ok:
            decision = Decision(
                VERDICT_POLYTOPE,
                certified=cert.certified,
                stabilization_index=stabilization,
                vertices=tuple(sorted((point, ep) for ep, point in candidates)),
            )
            break
        last_error = f"certification failed on check {cert.failure!r}"
        depth *= 2

    if decision is None:
        decision = Decision(
            VERDICT_INCONCLUSIVE,
            stabilization_index=stabilization,
            reason=f"stabilization at i={stabilization} but {last_error} after retries",
        )

    report = Report(
        classes,
        bound,
        tuple(counts),
        decision,
        None,
        cert,
        time.perf_counter() - start,
        tuple(warnings),
    )
    return decision, report


def cross_check(model: IfsModel, decision: Decision, k_cap: int) -> CrossCheckSection:
    """Compare the decision against the digit-hull facet-normal criterion.

    A disagreement between the two criteria indicates a defect somewhere and
    is never resolved silently; the caller downgrades the decision.
    """
    if model.dim not in (2, 3):
        return CrossCheckSection("inapplicable", None)
    result = spectral.facet_normal_criterion(
        model.matrix, model.digits, k_cap, eps=model.geom_eps()
    )
    if result.verdict == "inapplicable":
        return CrossCheckSection("inapplicable", result)
    if decision.verdict == VERDICT_POLYTOPE:
        status = "agree" if result.verdict == "polytope" else "disagree"
    elif decision.verdict in (VERDICT_EMPTY_U, VERDICT_NO_STABILIZATION):
        status = "agree" if result.verdict == "not_polytope" else "disagree"
    else:
        status = "not_compared"
    return CrossCheckSection(status, result)


def analyze_model(model: IfsModel, bound_mode: str = "product"):
    """decide_polytope plus the independent cross-check, as one report."""
    decision, report = decide_polytope(model, bound_mode)
    k_cap = report.bound.k if report.bound is not None else 64
    section = cross_check(model, decision, k_cap)
    if section.status == "disagree":
        decision = Decision(
            VERDICT_INCONCLUSIVE,
            stabilization_index=decision.stabilization_index,
            reason=(
                f"criteria disagree: decision pipeline says {decision.verdict}, "
                f"facet-normal criterion says {section.result.verdict}"
            ),
        )
    report = replace(report, decision=decision, cross_check=section)
    return decision, report
