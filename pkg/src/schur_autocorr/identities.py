"""Product-form identities  prod_i f(x_i) = sum_lam c(lam') S_lam(x).

Each identity is data: a list of weighted factor polynomials for the left side
and a coefficient rule on ``lam'`` for the right side. Sign-flipped variants
are generated from their base by ``x -> zeta x``, which multiplies every Schur
coefficient by ``zeta^{|lam|}``.

Both sides are compared exactly in the monomial basis of the box ``(g^m)``.
"""
from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import branching
from .branching import OmegaKind
from .partitions import BoxShape, Partition, enumerate_box, format_partition, g3_decompose, transpose
from .symfunc import (
    Basis,
    FactorProfile,
    SymmetricFunction,
    dimension,
    kostka_table,
    monomial_count,
    product_lhs,
)

__all__ = [
    "IdentityTag",
    "IdentityId",
    "IdentityReport",
    "build_lhs",
    "build_rhs",
    "verify",
    "sign_flip",
    "ones_values",
    "default_threads",
    "MAX_DISCREPANCY_ROWS",
]

MAX_DISCREPANCY_ROWS = 20
THREADS_ENV = "SCHUR_AUTOCORR_THREADS"


class IdentityTag(enum.Enum):
    G1_PLUS = "G1_PLUS"
    G1_MINUS = "G1_MINUS"
    G2_PLUS = "G2_PLUS"
    G2_MINUS = "G2_MINUS"
    G2_EVEN = "G2_EVEN"
    G2_ODD = "G2_ODD"
    G2_SQUARE_PLUS = "G2_SQUARE_PLUS"
    G2_SQUARE_MINUS = "G2_SQUARE_MINUS"
    G3_C = "G3_C"
    G3_C_MINUS = "G3_C_MINUS"
    G3_D = "G3_D"
    G3_D_MINUS = "G3_D_MINUS"
    G3_F = "G3_F"
    G3_F_MINUS = "G3_F_MINUS"
    G3_G = "G3_G"
    G3_G_MINUS = "G3_G_MINUS"


@dataclass(frozen=True)
class IdentityId:
    tag: IdentityTag
    m: int

    def __post_init__(self):
        if isinstance(self.tag, str):
            object.__setattr__(self, "tag", IdentityTag[self.tag])
        if self.m < 1:
            raise ValueError("m must be >= 1")

    def as_dict(self) -> dict:
        return {"tag": self.tag.name, "m": self.m}


# ---------------------------------------------------------------- definitions

Rule = Callable[[tuple[int, ...]], int]  # padded lam' -> coefficient


def _p(*coeffs, weight=1) -> FactorProfile:
    return FactorProfile(tuple(Fraction(c) for c in coeffs), Fraction(weight))


HALF = Fraction(1, 2)
_ONE_PLUS_X = _p(1, 1)
_ONE_PLUS_X2 = _p(1, 0, 1)
_ONE_MINUS_X2 = _p(1, 0, -1)
_C = (1, 1, 1, 1)  # (1 + x)(1 + x^2)
_B = (1, 1, -1, -1)  # (1 + x)(1 - x^2)


def _g2_plus(lp):
    a, b = lp
    return 0 if (a - b) % 2 else (-1) ** ((a - b) // 2)


def _g2_even(lp):
    a, b = lp
    if (a - b) % 2:
        return 0
    j = (a - b) // 2
    return (-1) ** j if (b + j) % 2 == 0 else 0


def _g2_odd(lp):
    a, b = lp
    if (a - b) % 2:
        return 0
    j = (a - b) // 2
    return (-1) ** j if (b + j) % 2 == 1 else 0


def _g3_tau(lp):
    l1, l2, l3 = lp
    return branching.tau(l1 - l2, l2 - l3)


def _omega_rule(kind: OmegaKind) -> Rule:
    def rule(lp):
        d = g3_decompose(Partition(lp))
        return branching.omega(kind, d.epsilon, d.z, d.b_prime)

    return rule


@dataclass(frozen=True)
class _Definition:
    cols: int
    profiles: tuple[FactorProfile, ...]
    rule: Rule


_BASE: dict[IdentityTag, _Definition] = {
    IdentityTag.G1_PLUS: _Definition(1, (_ONE_PLUS_X,), lambda lp: 1),
    IdentityTag.G2_PLUS: _Definition(2, (_ONE_PLUS_X2,), _g2_plus),
    IdentityTag.G2_EVEN: _Definition(
        2, (_p(1, 0, 1, weight=HALF), _p(1, 0, -1, weight=HALF)), _g2_even
    ),
    IdentityTag.G2_ODD: _Definition(
        2, (_p(1, 0, 1, weight=HALF), _p(1, 0, -1, weight=-HALF)), _g2_odd
    ),
    IdentityTag.G2_SQUARE_PLUS: _Definition(2, (_p(1, 2, 1),), lambda lp: lp[0] - lp[1] + 1),
    IdentityTag.G3_C: _Definition(3, (_p(*_C),), _g3_tau),
    IdentityTag.G3_D: _Definition(
        3, (_p(*_C, weight=HALF), _p(*_B, weight=HALF)), _omega_rule(OmegaKind.OMEGA)
    ),
    IdentityTag.G3_F: _Definition(3, (_p(*_B),), _omega_rule(OmegaKind.OMEGA_TILDE)),
    IdentityTag.G3_G: _Definition(
        3, (_p(*_C, weight=HALF), _p(*_B, weight=-HALF)), _omega_rule(OmegaKind.OMEGA_HAT)
    ),
}

# flipped tag -> (base tag, zeta); zeta = 1j means x -> i x
_FLIPPED: dict[IdentityTag, tuple[IdentityTag, complex]] = {
    IdentityTag.G1_MINUS: (IdentityTag.G1_PLUS, -1),
    IdentityTag.G2_MINUS: (IdentityTag.G2_PLUS, 1j),
    IdentityTag.G2_SQUARE_MINUS: (IdentityTag.G2_SQUARE_PLUS, -1),
    IdentityTag.G3_C_MINUS: (IdentityTag.G3_C, -1),
    IdentityTag.G3_D_MINUS: (IdentityTag.G3_D, -1),
    IdentityTag.G3_F_MINUS: (IdentityTag.G3_F, -1),
    IdentityTag.G3_G_MINUS: (IdentityTag.G3_G, -1),
}
_PARTNER = {**{f: b for f, (b, _) in _FLIPPED.items()}, **{b: f for f, (b, _) in _FLIPPED.items()}}


def _zeta_power(zeta, n: int) -> int:
    """``zeta^n`` as an integer; fails if it is not real."""
    w = complex(zeta) ** n
    r = round(w.real)
    if abs(w.imag) > 1e-9:
        raise ValueError("non-real sign")
    return r


def _definition(tag: IdentityTag) -> _Definition:
    if tag in _BASE:
        return _BASE[tag]
    base_tag, zeta = _FLIPPED[tag]
    base = _BASE[base_tag]

    def rule(lp, _r=base.rule, _z=zeta):
        c = _r(lp)
        return c * _zeta_power(_z, sum(lp)) if c else 0

    return _Definition(base.cols, tuple(p.substitute(zeta) for p in base.profiles), rule)


_DEFS = {t: _definition(t) for t in IdentityTag}


def sign_flip(ident: IdentityId) -> IdentityId:
    """Partner identity under ``x -> zeta x``."""
    try:
        return IdentityId(_PARTNER[ident.tag], ident.m)
    except KeyError:
        raise ValueError(f"{ident.tag.name} has no sign-flip partner") from None


def flip_partner_defined(tag: IdentityTag) -> bool:
    return tag in _PARTNER


def factor_profiles(tag: IdentityTag) -> tuple[FactorProfile, ...]:
    return _DEFS[tag].profiles


def box_cols(tag: IdentityTag) -> int:
    return _DEFS[tag].cols


def rhs_coefficient(tag: IdentityTag, lam_prime) -> int:
    d = _DEFS[tag]
    return d.rule(tuple(Partition(lam_prime).padded(d.cols)))


# ---------------------------------------------------------------- both sides


def build_lhs(ident: IdentityId) -> SymmetricFunction:
    return product_lhs(_DEFS[ident.tag].profiles, ident.m)


def build_rhs(ident: IdentityId) -> SymmetricFunction:
    d = _DEFS[ident.tag]
    coeffs = {}
    for lam in enumerate_box(BoxShape(ident.m, d.cols)):
        c = d.rule(tuple(transpose(lam).padded(d.cols)))
        if c:
            coeffs[lam] = Fraction(c)
    return SymmetricFunction(Basis.SCHUR, ident.m, coeffs)


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be a positive integer, got {env!r}") from None
        if n < 1:
            raise ValueError(f"{THREADS_ENV} must be a positive integer, got {env!r}")
        return n
    return os.cpu_count() or 1


def _expand_chunk(items, table) -> dict[Partition, Fraction]:
    acc: dict[Partition, Fraction] = {}
    for lam, c in items:
        for mu, k in table[lam].items():
            acc[mu] = acc.get(mu, 0) + c * k
    return acc


def schur_sum_to_monomial(f: SymmetricFunction, threads: int = 1) -> SymmetricFunction:
    """Monomial expansion of a Schur-basis function with parts <= 3.

    Work is split into contiguous chunks; partial maps are merged in chunk
    order, and exact arithmetic makes the result independent of ``threads``.
    """
    table = kostka_table(f.num_vars)
    items = f.terms()
    threads = max(1, min(threads, len(items) or 1))
    if threads == 1:
        acc = _expand_chunk(items, table)
    else:
        size = -(-len(items) // threads)
        chunks = [items[i:i + size] for i in range(0, len(items), size)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda ch: _expand_chunk(ch, table), chunks))
        acc = {}
        for part in parts:
            for mu, v in part.items():
                acc[mu] = acc.get(mu, 0) + v
    return SymmetricFunction(Basis.MONOMIAL, f.num_vars, acc)


def ones_values(ident: IdentityId) -> tuple[Fraction, Fraction]:
    """Both sides at ``x = (1, ..., 1)``, without expanding either side.

    The left side is ``sum_w w f_w(1)^m``; the right side uses hook-content
    dimensions.
    """
    d = _DEFS[ident.tag]
    m = ident.m
    lhs = sum((p.weight * sum(p.per_degree) ** m for p in d.profiles), Fraction(0))
    rhs = Fraction(0)
    for lam in enumerate_box(BoxShape(m, d.cols)):
        c = d.rule(tuple(transpose(lam).padded(d.cols)))
        if c:
            rhs += c * dimension(lam, m)
    return lhs, rhs


# ---------------------------------------------------------------- reports


@dataclass
class IdentityReport:
    identity: IdentityId
    equal: bool
    schur_term_count: int
    negative_coeff_count: int
    lhs_monomial_count: int
    ones_specialization: Fraction
    elapsed_ms: float
    discrepancies: list[tuple[Partition, Fraction, Fraction]] = field(default_factory=list)
    discrepancy_total: int = 0
    rhs_ones_specialization: Fraction | None = None

    def as_dict(self) -> dict:
        return {
            "identity": self.identity.as_dict(),
            "equal": self.equal,
            "schur_term_count": self.schur_term_count,
            "negative_coeff_count": self.negative_coeff_count,
            "lhs_monomial_count": self.lhs_monomial_count,
            "ones_specialization": str(self.ones_specialization),
            "rhs_ones_specialization": (
                None if self.rhs_ones_specialization is None else str(self.rhs_ones_specialization)
            ),
            "elapsed_ms": round(self.elapsed_ms, 3),
            "discrepancies": [
                {"partition": format_partition(p), "lhs_coeff": str(lc), "rhs_coeff": str(rc)}
                for p, lc, rc in self.discrepancies
            ],
            "discrepancy_total": self.discrepancy_total,
        }

    def render_text(self) -> str:
        ident = self.identity
        lines = [
            f"identity            {ident.tag.name}  (m = {ident.m})",
            f"equal               {self.equal}",
            f"schur terms         {self.schur_term_count}",
            f"negative coeffs     {self.negative_coeff_count}",
            f"lhs monomial count  {self.lhs_monomial_count}",
            f"value at ones       {self.ones_specialization}",
            f"elapsed             {self.elapsed_ms:.1f} ms",
        ]
        if self.discrepancies:
            lines.append(f"discrepancies       {self.discrepancy_total}")
            lines.append(f"  {'partition':<20} {'lhs':>14} {'rhs':>14}")
            for p, lc, rc in self.discrepancies:
                lines.append(f"  {format_partition(p):<20} {str(lc):>14} {str(rc):>14}")
            rest = self.discrepancy_total - len(self.discrepancies)
            if rest > 0:
                lines.append(f"  ... {rest} more")
        return "\n".join(lines)


def verify(ident: IdentityId, threads: int | None = None) -> IdentityReport:
    """Expand both sides in the monomial basis and compare every coefficient."""
    if threads is None:
        threads = default_threads()
    t0 = time.perf_counter()
    lhs = build_lhs(ident)
    rhs = build_rhs(ident)
    rhs_mono = schur_sum_to_monomial(rhs, threads)

    keys = sorted(set(lhs.coeffs) | set(rhs_mono.coeffs), key=lambda p: (p.size, tuple(-x for x in p)))
    bad = []
    for mu in keys:
        lc, rc = lhs[mu], rhs_mono[mu]
        if lc != rc:
            bad.append((mu, lc, rc))

    lhs_ones, rhs_ones = ones_values(ident)
    elapsed = (time.perf_counter() - t0) * 1000
    return IdentityReport(
        identity=ident,
        equal=not bad,
        schur_term_count=len(rhs),
        negative_coeff_count=sum(1 for c in rhs.coeffs.values() if c < 0),
        lhs_monomial_count=monomial_count(lhs),
        ones_specialization=lhs_ones,
        elapsed_ms=elapsed,
        discrepancies=bad[:MAX_DISCREPANCY_ROWS],
        discrepancy_total=len(bad),
        rhs_ones_specialization=rhs_ones,
    )
