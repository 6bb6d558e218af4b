"""Assembly of the predicted constant, asymptotic fitting, serialization.

The prediction for N(B) is c * B * Q(log B) with Q monic of degree 5 and

    c = alpha * beta * omega_inf * G0,
    alpha = 1/(5! * 4*2*3*3*2*2) = 1/34560,    beta = 1,

where omega_inf is the archimedean volume and G0 the Euler product of
(1-1/p)^6 (1+6/p+1/p^2).  Q's lower-order coefficients are not known in
closed form and dominate every feasible B, so the degree-5 fit of N/B
against powers of log B is reported as a diagnostic: the ratio of its
leading coefficient to c is printed, not certified.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .archimedean import omega_infinity
from .counter import CountRecord
from .densities import euler_product_G0

ALPHA = Fraction(1, math.factorial(5) * 4 * 2 * 3 * 3 * 2 * 2)  # 1/34560
BETA = Fraction(1)


@dataclass(frozen=True)
class PeyreBreakdown:
    alpha: Fraction
    beta: Fraction
    omega_inf: float
    euler_G0: float
    tail_bound: float
    c_total: float


@dataclass(frozen=True)
class FitResult:
    a: tuple[float, float, float, float, float, float]  # a0..a5
    residual: float
    b_range: tuple[int, int]


def peyre_constant(
    prime_limit: int,
    tol: float,
    omega_value: float | None = None,
    g0_value: float | None = None,
) -> PeyreBreakdown:
    """alpha * beta * omega_inf * G0 with the stated tolerances.

    omega_value / g0_value short-circuit the quadrature and the Euler
    product (used for scaling tests); the tail bound is 0 when g0_value
    is supplied.
    """
    if prime_limit < 2:
        raise ValueError(f"prime_limit must be >= 2, got {prime_limit}")
    if g0_value is None:
        g0_value, tail = euler_product_G0(prime_limit)
    else:
        tail = 0.0
    if omega_value is None:
        omega_value = omega_infinity(tol).value
    c = float(ALPHA) * float(BETA) * omega_value * g0_value
    return PeyreBreakdown(
        alpha=ALPHA,
        beta=BETA,
        omega_inf=omega_value,
        euler_G0=g0_value,
        tail_bound=tail,
        c_total=c,
    )


def fit_polynomial(records: Sequence[CountRecord]) -> FitResult:
    """Least squares of N/B against powers 0..5 of log B (natural log).

    Requires >= 8 torsor records, strictly ascending in B and spanning at
    least three decades.  Deterministic: the design matrix and lstsq are
    fixed functions of the input.
    """
    if len(records) < 8:
        raise ValueError(f"need >= 8 records for a degree-5 fit, got {len(records)}")
    Bs = [r.B for r in records]
    if any(b >= c for b, c in zip(Bs, Bs[1:])):
        raise ValueError("records must be strictly ascending in B")
    if Bs[-1] < 1000 * Bs[0]:
        raise ValueError(f"records must span >= 3 decades of B, got [{Bs[0]}, {Bs[-1]}]")
    L = np.log(np.array(Bs, dtype=float))
    y = np.array([r.count for r in records], dtype=float) / np.array(Bs, dtype=float)
    design = np.vander(L, 6, increasing=True)
    coeffs, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    resid = float(np.linalg.norm(design @ coeffs - y))
    return FitResult(a=tuple(float(c) for c in coeffs), residual=resid, b_range=(Bs[0], Bs[-1]))


def _breakdown_dict(b: PeyreBreakdown) -> dict:
    return {
        "alpha": f"{b.alpha.numerator}/{b.alpha.denominator}",
        "beta": str(b.beta),
        "omega_inf": b.omega_inf,
        "euler_G0": b.euler_G0,
        "tail_bound": b.tail_bound,
        "c_total": b.c_total,
    }


def _fit_dict(fit: FitResult | None, breakdown: PeyreBreakdown | None) -> dict | None:
    if fit is None:
        return None
    ratio = None
    if breakdown is not None and breakdown.c_total:
        ratio = fit.a[5] / breakdown.c_total
    return {"a": list(fit.a), "residual": fit.residual, "ratio_a5_over_c": ratio}


def counts_csv_bytes(records: Sequence[CountRecord]) -> bytes:
    lines = ["B,count,method,elapsed_ms"]
    for r in records:
        lines.append(f"{r.B},{r.count},{r.method},{r.elapsed_ms!r}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def report_json_bytes(
    records: Sequence[CountRecord],
    breakdown: PeyreBreakdown | None,
    fit: FitResult | None,
) -> bytes:
    doc = {
        "counts": [
            {"B": r.B, "count": r.count, "method": r.method, "elapsed_ms": r.elapsed_ms}
            for r in records
        ],
        "peyre": _breakdown_dict(breakdown) if breakdown is not None else None,
        "fit": _fit_dict(fit, breakdown),
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def emit(
    records: Sequence[CountRecord],
    breakdown: PeyreBreakdown | None = None,
    fit: FitResult | None = None,
    counts_path: str | Path | None = None,
    report_path: str | Path | None = None,
) -> list[Path]:
    """Write the counts CSV and/or the JSON report.

    Output bytes are a pure function of the inputs (no timestamps), so
    reruns with identical inputs are byte-identical.
    """
    written = []
    if counts_path is not None:
        p = Path(counts_path)
        p.write_bytes(counts_csv_bytes(records))
        written.append(p)
    if report_path is not None:
        p = Path(report_path)
        p.write_bytes(report_json_bytes(records, breakdown, fit))
        written.append(p)
    return written


def read_counts_csv(path: str | Path) -> list[CountRecord]:
    """Parse a counts CSV back into records (inverse of emit)."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != "B,count,method,elapsed_ms":
        raise ValueError(f"{path}: not a counts CSV (bad header)")
    out = []
    for line in lines[1:]:
        b, count, method, elapsed = line.split(",")
        out.append(CountRecord(B=int(b), count=int(count), method=method, elapsed_ms=float(elapsed)))
    return out


def read_constant_json(path: str | Path) -> PeyreBreakdown:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    num, den = doc["alpha"].split("/")
    return PeyreBreakdown(
        alpha=Fraction(int(num), int(den)),
        beta=Fraction(doc["beta"]),
        omega_inf=doc["omega_inf"],
        euler_G0=doc["euler_G0"],
        tail_bound=doc["tail_bound"],
        c_total=doc["c_total"],
    )


def constant_json_bytes(breakdown: PeyreBreakdown) -> bytes:
    return (json.dumps(_breakdown_dict(breakdown), indent=2) + "\n").encode("utf-8")
