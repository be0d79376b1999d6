"""The full consistency suite behind ``schur-autocorr all``.

Every check is deterministic: Monte Carlo uses a fixed seed and shard plan.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .branching import SubgroupId, multiplicity, validate_tables
from .haarmc import MCConfig, exact_autocorrelation, mc_check
from .identities import IdentityId, IdentityTag, verify
from .partitions import BoxShape, enumerate_box
from .symfunc import dimension, dual_cauchy_check, schur_to_monomial, specialize_ones

__all__ = ["CheckResult", "run_all", "MC_X_VECTORS"]

# two fixed evaluation points per m, all with |x_i| <= 0.5
MC_X_VECTORS = {
    1: ((0.5,), (-0.35,)),
    2: ((0.3, 0.4), (0.5, -0.25)),
    3: ((0.2, 0.3, 0.1), (-0.4, 0.25, 0.5)),
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


def check_identities(max_m: int, threads: int) -> CheckResult:
    failures = []
    n = 0
    for tag in IdentityTag:
        for m in range(1, max_m + 1):
            rep = verify(IdentityId(tag, m), threads=threads)
            n += 1
            if not rep.equal or rep.ones_specialization != rep.rhs_ones_specialization:
                failures.append(f"{tag.name}@{m}")
    return CheckResult("identities", not failures, {"verified": n, "failures": failures})


def check_tables(max_a: int = 60) -> CheckResult:
    rep = validate_tables(max_a)
    return CheckResult("tables", rep.passed, rep.as_dict())


def check_dual_cauchy(max_mg: int = 4) -> CheckResult:
    bad = [
        (m, g)
        for m in range(1, max_mg + 1)
        for g in range(1, max_mg + 1)
        if not dual_cauchy_check(m, g)
    ]
    return CheckResult("dual_cauchy", not bad, {"max": max_mg, "failures": bad})


def check_odd_vanishing(max_size: int = 41) -> CheckResult:
    groups = (SubgroupId.H2, SubgroupId.H24_PRIME, SubgroupId.H24)
    bad = []
    n = 0
    for a in range(max_size + 1):
        for b in range(min(a, max_size - a) + 1):
            if (a + b) % 2 == 0:
                continue
            for h in groups:
                n += 1
                if multiplicity(h, (a, b)):
                    bad.append([h.name, a, b])
    return CheckResult("odd_degree_vanishing", not bad, {"checked": n, "failures": bad[:20]})


def check_dimensions(m: int = 8) -> CheckResult:
    bad = []
    n = 0
    for lam in enumerate_box(BoxShape(m, 3)):
        n += 1
        if specialize_ones(schur_to_monomial(lam, m)) != dimension(lam, m):
            bad.append(str(tuple(lam)))
    return CheckResult("dimensions", not bad, {"m": m, "checked": n, "failures": bad[:20]})


def check_monte_carlo(samples: int, seed: int, threads: int) -> CheckResult:
    reports = []
    for h in SubgroupId:
        for m, vectors in MC_X_VECTORS.items():
            for xs in vectors:
                reports.append(mc_check(h, MCConfig(samples, seed, xs), threads=threads))
    spot = exact_autocorrelation(SubgroupId.H2, [0.5])
    spot_ok = spot == (Fraction(5, 4), Fraction(0))
    failed = [r for r in reports if not r["pass"]]
    return CheckResult(
        "monte_carlo",
        not failed and spot_ok,
        {"runs": len(reports), "failures": failed, "exact_H2_half": str(spot[0])},
    )


def run_all(max_m: int = 8, samples: int = 10**6, seed: int = 42, threads: int = 1) -> list[CheckResult]:
    return [
        check_identities(max_m, threads),
        check_tables(60),
        check_dual_cauchy(min(4, max_m)),
        check_odd_vanishing(41),
        check_dimensions(min(8, max_m)),
        check_monte_carlo(samples, seed, threads),
    ]
