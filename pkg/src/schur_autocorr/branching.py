"""Trivial-representation multiplicities for the eight one-parameter subgroups.

``multiplicity(h, lam_prime)`` is the multiplicity of the trivial
representation of ``h`` inside the ``U(g)``-irreducible with highest weight
``lam_prime``. For ``g = 2`` the values are congruence deltas. For ``g = 3``
they are closed forms driven by small tables indexed by residues of
``(z, b')``; each table is checked against brute-force counting over the
interlacing set ``Phi(a, b, eps)`` when this module is imported.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

from .partitions import Partition, g3_decompose

__all__ = [
    "SubgroupId",
    "PhiDescriptor",
    "PhiFilter",
    "OmegaKind",
    "CongruenceTables",
    "TABLES",
    "phi_set",
    "phi_count",
    "phi_counts",
    "tau",
    "omega",
    "multiplicity",
    "oracle_multiplicity",
    "multiplicity_record",
    "validate_tables",
    "TableValidationReport",
    "ClosedFormError",
]


class ClosedFormError(ArithmeticError):
    """A closed form produced a non-integer; only a table typo can cause this."""


class SubgroupId(enum.Enum):
    U1_IN_U2 = "U1_IN_U2"
    H2 = "H2"
    H24_PRIME = "H24_PRIME"
    H24 = "H24"
    U1_IN_U3 = "U1_IN_U3"
    H3 = "H3"
    H34_PRIME = "H34_PRIME"
    H34 = "H34"

    @property
    def ambient_dim(self) -> int:
        return 2 if self in _G2 else 3

    @property
    def coset_labels(self) -> tuple[str, ...]:
        """Names of coset representatives; the first is always the identity."""
        return _COSETS[self]

    @classmethod
    def parse(cls, text: str) -> "SubgroupId":
        key = text.strip().upper().replace("'", "_PRIME").replace("-", "_")
        aliases = {"U1U2": "U1_IN_U2", "U1U3": "U1_IN_U3", "H24P": "H24_PRIME", "H34P": "H34_PRIME"}
        key = aliases.get(key, key)
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown group {text!r}; expected one of {[g.name for g in cls]}") from None


_G2 = frozenset({SubgroupId.U1_IN_U2, SubgroupId.H2, SubgroupId.H24_PRIME, SubgroupId.H24})
_COSETS = {
    SubgroupId.U1_IN_U2: ("I",),
    SubgroupId.H2: ("I", "J"),
    SubgroupId.H24_PRIME: ("I", "zeta"),
    SubgroupId.H24: ("I", "J", "zeta", "zetaJ"),
    SubgroupId.U1_IN_U3: ("I",),
    SubgroupId.H3: ("I", "J"),
    SubgroupId.H34_PRIME: ("I", "zeta"),
    SubgroupId.H34: ("I", "J", "zeta", "zetaJ"),
}


# ---------------------------------------------------------------- Phi oracles


@dataclass(frozen=True)
class PhiDescriptor:
    a: int
    b: int
    epsilon: int = 0

    def __post_init__(self):
        if self.epsilon not in (0, 1):
            raise ValueError(f"epsilon must be 0 or 1, got {self.epsilon}")
        if not (self.a >= self.b >= self.epsilon):
            raise ValueError(f"need a >= b >= epsilon, got {(self.a, self.b, self.epsilon)}")


class PhiFilter(enum.Enum):
    MOD2 = "MOD2"  # p = q mod 2
    MOD4 = "MOD4"  # p = q mod 4
    SUM4 = "SUM4"  # p + q = 0 mod 4
    BOTH44 = "BOTH44"  # p + q = 0 and p - q = 0 mod 4


def _pairs(d: PhiDescriptor) -> Iterator[tuple[int, int]]:
    for q in range(d.epsilon, d.b + 1):
        for p in range(d.b, d.a + 1):
            yield p, q


def phi_set(d: PhiDescriptor) -> list[tuple[int, int]]:
    """``{(p, q) : a >= p >= b >= q >= eps}``."""
    return list(_pairs(d))


def _keep(f: PhiFilter, p: int, q: int) -> bool:
    if f is PhiFilter.MOD2:
        return (p - q) % 2 == 0
    if f is PhiFilter.MOD4:
        return (p - q) % 4 == 0
    if f is PhiFilter.SUM4:
        return (p + q) % 4 == 0
    return (p + q) % 4 == 0 and (p - q) % 4 == 0


def phi_count(d: PhiDescriptor, f: PhiFilter) -> int:
    """Brute-force count of the filtered interlacing set. Never uses the tables."""
    return sum(1 for p, q in _pairs(d) if _keep(f, p, q))


def phi_counts(d: PhiDescriptor) -> dict[PhiFilter, int]:
    """All four filtered counts in one pass."""
    c2 = c4 = s4 = both = 0
    for p, q in _pairs(d):
        diff, tot = (p - q) % 4, (p + q) % 4
        c2 += diff % 2 == 0
        c4 += diff == 0
        if tot == 0:
            s4 += 1
            both += diff == 0
    return {PhiFilter.MOD2: c2, PhiFilter.MOD4: c4, PhiFilter.SUM4: s4, PhiFilter.BOTH44: both}


# ---------------------------------------------------------------- tables

Pair = tuple[int, int]


@dataclass(frozen=True)
class CongruenceTables:
    """Constant data. 4x4 tables are indexed ``[z % 4][b % 4]``, 2x2 ones ``[z % 2][b % 2]``.

    The epsilon-dependent tables are dicts ``{0: ..., 1: ...}``.
    """

    tau: tuple[tuple[int, ...], ...]
    kappa: dict[int, tuple[tuple[int, ...], ...]] = field(hash=False)
    eta: dict[int, tuple[tuple[Pair, ...], ...]] = field(hash=False)
    xi: dict[int, tuple[tuple[int, ...], ...]] = field(hash=False)
    alpha: dict[int, tuple[tuple[Pair, ...], ...]] = field(hash=False)
    beta: dict[int, tuple[tuple[int, ...], ...]] = field(hash=False)
    beta_tilde: dict[int, tuple[tuple[int, ...], ...]] = field(hash=False)
    beta_hat: dict[int, tuple[tuple[int, ...], ...]] = field(hash=False)

    def as_dict(self) -> dict:
        def rows(t):
            return [list(map(list, r)) if r and isinstance(r[0], tuple) else list(r) for r in t]

        out = {"tau": rows(self.tau)}
        for name in ("kappa", "eta", "xi", "alpha", "beta", "beta_tilde", "beta_hat"):
            out[name] = {str(e): rows(t) for e, t in getattr(self, name).items()}
        return out


TABLES = CongruenceTables(
    tau=((1, 1, 0, 0), (1, 0, -1, 0), (0, -1, -1, 0), (0, 0, 0, 0)),
    kappa={
        0: ((3, -2, 1, 0), (2, -4, 2, 0), (1, -2, 3, 0), (0, 0, 0, 0)),
        1: ((-1, 2, 1, 0), (-2, 4, -2, 0), (1, 2, -1, 0), (0, 0, 0, 0)),
    },
    eta={
        0: (((2, 2), (0, 1)), ((1, 2), (1, 1))),
        1: (((0, 0), (2, 1)), ((1, 0), (1, 1))),
    },
    xi={
        0: ((8, 0, 4, 0), (6, -3, 2, 1), (4, -4, 4, 0), (2, 1, 2, 1)),
        1: ((0, 6, 0, 2), (0, 5, -4, 1), (0, 2, -4, 2), (0, 1, 0, 1)),
    },
    alpha={
        0: (((1, 1), (-1, 0)), ((0, 1), (0, 0))),
        1: (((-1, -1), (1, 0)), ((0, -1), (0, 0))),
    },
    beta={
        0: ((4, 1, 2, -1), (3, 0, -1, 0), (2, -3, 0, -1), (1, 0, 1, 0)),
        1: ((0, 3, -2, 1), (1, 0, -3, 0), (-2, -1, -4, 1), (-1, 0, -1, 0)),
    },
    beta_tilde={
        0: ((2, -1), (1, 0)),
        1: ((-2, 1), (-1, 0)),
    },
    beta_hat={
        0: ((0, 3, -2, 1), (1, 0, -3, 0), (-2, -1, -4, 1), (-1, 0, -1, 0)),
        1: ((4, 1, 2, -1), (3, 0, -1, 0), (2, -3, 0, -1), (1, 0, 1, 0)),
    },
)


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise ClosedFormError(f"{what}: {num}/{den} is not an integer")
    return q


def _dot(v: Pair, b_prime: int, z: int) -> int:
    # (x, y) . (b', z) = x b' + y z
    return v[0] * b_prime + v[1] * z


def tau(z: int, b: int) -> int:
    if z < 0 or b < 0:
        raise ValueError("tau needs z, b >= 0")
    return TABLES.tau[z % 4][b % 4]


class OmegaKind(enum.Enum):
    OMEGA = "OMEGA"
    OMEGA_TILDE = "OMEGA_TILDE"
    OMEGA_HAT = "OMEGA_HAT"


def omega(kind: OmegaKind, epsilon: int, z: int, b_prime: int) -> int:
    if epsilon not in (0, 1):
        raise ValueError("epsilon must be 0 or 1")
    if z < 0 or b_prime < 0:
        raise ValueError("omega needs z, b' >= 0")
    d = _dot(TABLES.alpha[epsilon][z % 2][b_prime % 2], b_prime, z)
    if kind is OmegaKind.OMEGA:
        return _exact_div(d + TABLES.beta[epsilon][z % 4][b_prime % 4], 4, "omega")
    if kind is OmegaKind.OMEGA_TILDE:
        return _exact_div(d + TABLES.beta_tilde[epsilon][z % 2][b_prime % 2], 2, "omega_tilde")
    return _exact_div(-d + TABLES.beta_hat[epsilon][z % 4][b_prime % 4], 4, "omega_hat")


# ---------------------------------------------------------------- multiplicities


def _check_length(h: SubgroupId, lam_prime: Partition) -> None:
    g = h.ambient_dim
    if len(lam_prime) > g:
        raise ValueError(f"{h.name} needs at most {g} parts, got {tuple(lam_prime)}")


def _ceil_half(n: int) -> int:
    return -(-n // 2)


def multiplicity(h: SubgroupId, lam_prime) -> int:
    """Closed-form multiplicity of the trivial representation."""
    lp = Partition(lam_prime)
    _check_length(h, lp)
    if h.ambient_dim == 2:
        a, b = lp.padded(2)
        if h is SubgroupId.U1_IN_U2:
            return int((a - b) % 2 == 0)
        if h is SubgroupId.H2:
            return int((a - b) % 4 == 0)
        if h is SubgroupId.H24_PRIME:
            return int((a + b) % 4 == 0)
        return int((a + b) % 4 == 0 and (a - b) % 4 == 0)

    l1, l2, l3 = lp.padded(3)
    if h in (SubgroupId.U1_IN_U3, SubgroupId.H3):
        # shift by det^{l3} is invisible to U(1) and to J
        z, b = l1 - l2, l2 - l3
        base = _ceil_half((z + 1) * (b + 1))
        if h is SubgroupId.U1_IN_U3:
            return base
        return _exact_div(base + tau(z, b), 2, "H3")

    dec = g3_decompose(lp)
    z, bp, e = dec.z, dec.b_prime, dec.epsilon
    if h is SubgroupId.H34_PRIME:
        return _exact_div((z + 1) * (bp + 1) + TABLES.kappa[e][z % 4][bp % 4], 4, "H34_PRIME")
    eta = TABLES.eta[e][z % 2][bp % 2]
    return _exact_div(bp * z + _dot(eta, bp, z) + TABLES.xi[e][z % 4][bp % 4], 8, "H34")


def _oracle_descriptor(h: SubgroupId, lp: Partition) -> tuple[PhiDescriptor, PhiFilter]:
    l1, l2, l3 = lp.padded(3)
    if h is SubgroupId.U1_IN_U3:
        return PhiDescriptor(l1 - l3, l2 - l3, 0), PhiFilter.MOD2
    if h is SubgroupId.H3:
        return PhiDescriptor(l1 - l3, l2 - l3, 0), PhiFilter.MOD4
    dec = g3_decompose(lp)
    d = PhiDescriptor(l1 - 2 * dec.k, l2 - 2 * dec.k, dec.epsilon)
    return d, (PhiFilter.SUM4 if h is SubgroupId.H34_PRIME else PhiFilter.BOTH44)


def _sym_trace_constant_term(h: SubgroupId, a: int, b: int) -> int:
    """Average over cosets of the trivial-isotypic dimension, by weight vectors.

    ``V(a, b) = det^b (x) Sym^{a-b}``; weight vectors are ``y1^{n-k} y2^k``.
    A coset ``R U(1)`` with ``R`` diagonal keeps those weights and scales them by
    ``r1^{n-k} r2^k``, so only ``k = n / 2`` survives the ``t`` average. For the
    anti-diagonal coset the eigenvalues are ``(i, -i)`` independently of ``t``.
    """
    n = a - b
    re = im = 0  # Gaussian integer accumulator

    def add(power: int, count: int = 1):
        nonlocal re, im
        power %= 4
        if power == 0:
            re += count
        elif power == 1:
            im += count
        elif power == 2:
            re -= count
        else:
            im -= count

    for label in h.coset_labels:
        if label == "I":
            if n % 2 == 0:
                add(0)
        elif label == "zeta":
            # R = diag(i, i): det^b -> i^{2b}, weight -> i^{n}
            if n % 2 == 0:
                add(2 * b + n)
        elif label == "J":
            # eigenvalues (i, -i), det = 1
            for k in range(n + 1):
                add((n - k) + 3 * k)
        else:  # zetaJ: eigenvalues (1, -1), det = -1
            for k in range(n + 1):
                add(2 * b + 2 * k)
    if im != 0 or re % len(h.coset_labels):
        raise ClosedFormError(f"character average for {h.name} is not a non-negative integer")
    return re // len(h.coset_labels)


def oracle_multiplicity(h: SubgroupId, lam_prime) -> int:
    """Multiplicity recomputed by counting, without any table."""
    lp = Partition(lam_prime)
    _check_length(h, lp)
    if h.ambient_dim == 2:
        a, b = lp.padded(2)
        return _sym_trace_constant_term(h, a, b)
    d, f = _oracle_descriptor(h, lp)
    return phi_count(d, f)


def multiplicity_record(h: SubgroupId, lam_prime, with_oracle: bool = True) -> dict:
    """JSON-ready record used by the CLI."""
    lp = Partition(lam_prime)
    rec = {
        "group": h.name,
        "lambda_prime": list(lp.padded(h.ambient_dim)),
        "multiplicity": multiplicity(h, lp),
        "oracle_multiplicity": oracle_multiplicity(h, lp) if with_oracle else None,
        "decomposition": g3_decompose(lp).as_dict() if len(lp) <= 3 else None,
    }
    return rec


# ---------------------------------------------------------------- validation


@dataclass
class TableValidationReport:
    max_a: int
    triples_checked: int = 0
    checks: int = 0
    first_mismatch: dict | None = None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None

    def as_dict(self) -> dict:
        return {
            "max_a": self.max_a,
            "triples_checked": self.triples_checked,
            "checks": self.checks,
            "passed": self.passed,
            "first_mismatch": self.first_mismatch,
        }


def validate_tables(max_a: int, _min: int = 8) -> TableValidationReport:
    """Compare every closed form and recurrence with brute-force counts for ``a <= max_a``."""
    if max_a < _min:
        raise ValueError(f"max_a must be >= {_min}")
    rep = TableValidationReport(max_a)
    cache: dict[tuple[int, int, int], dict[PhiFilter, int]] = {}

    def counts(a, b, e):
        key = (a, b, e)
        c = cache.get(key)
        if c is None:
            c = cache[key] = phi_counts(PhiDescriptor(a, b, e))
        return c

    def check(name: str, got: int, want: int, a: int, b: int, e: int) -> bool:
        rep.checks += 1
        if got != want and rep.first_mismatch is None:
            rep.first_mismatch = {
                "check": name,
                "a": a,
                "b": b,
                "epsilon": e,
                "z": a - b,
                "b_prime": b - e,
                "closed_form": got,
                "oracle": want,
            }
        return got == want

    for e in (0, 1):
        for b in range(e, max_a + 1):
            for a in range(b, max_a + 1):
                rep.triples_checked += 1
                z, bp = a - b, b - e
                c = counts(a, b, e)
                ok = True
                try:
                    if e == 0:
                        base = _ceil_half((z + 1) * (b + 1))
                        ok &= check("U1_IN_U3", base, c[PhiFilter.MOD2], a, b, e)
                        ok &= check("H3/tau", _exact_div(base + tau(z, b), 2, "H3"), c[PhiFilter.MOD4], a, b, e)
                    s4 = _exact_div((z + 1) * (bp + 1) + TABLES.kappa[e][z % 4][bp % 4], 4, "kappa")
                    ok &= check("H34_PRIME/kappa", s4, c[PhiFilter.SUM4], a, b, e)
                    eta = TABLES.eta[e][z % 2][bp % 2]
                    both = _exact_div(bp * z + _dot(eta, bp, z) + TABLES.xi[e][z % 4][bp % 4], 8, "xi")
                    ok &= check("H34/eta,xi", both, c[PhiFilter.BOTH44], a, b, e)
                    om = 2 * c[PhiFilter.BOTH44] - c[PhiFilter.SUM4]
                    t = tau(z, bp)
                    ok &= check("omega/alpha,beta", omega(OmegaKind.OMEGA, e, z, bp), om, a, b, e)
                    ok &= check("omega_tilde", omega(OmegaKind.OMEGA_TILDE, e, z, bp), 2 * om - t, a, b, e)
                    ok &= check("omega_hat", omega(OmegaKind.OMEGA_HAT, e, z, bp), t - om, a, b, e)
                    # shifting (a, b) by 4 adds a fixed amount to both counts
                    c4 = counts(a + 4, b + 4, e)
                    ok &= check("recurrence SUM4", c4[PhiFilter.SUM4] - c[PhiFilter.SUM4], z + 1, a, b, e)
                    ok &= check(
                        "recurrence BOTH44",
                        2 * (c4[PhiFilter.BOTH44] - c[PhiFilter.BOTH44]),
                        z + eta[0],
                        a,
                        b,
                        e,
                    )
                except ClosedFormError as exc:
                    if rep.first_mismatch is None:
                        rep.first_mismatch = {"check": "integrality", "a": a, "b": b, "epsilon": e, "error": str(exc)}
                    ok = False
                if not ok:
                    return rep
    return rep


def _self_check() -> None:
    rep = validate_tables(20)
    if not rep.passed:
        raise RuntimeError(f"coefficient table self-check failed: {rep.first_mismatch}")


_self_check()
