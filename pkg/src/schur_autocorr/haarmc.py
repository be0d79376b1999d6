"""Haar averages of products of characteristic polynomials over the subgroups.

Every subgroup is a finite union of cosets ``R * T`` of the torus
``T = {diag(t, 1/t[, 1])}``. The average of ``prod_i det(I + x_i g)`` is the
mean over cosets of the torus average on each coset. Cosets whose
determinant does not depend on ``t`` are evaluated directly; the others are
sampled with a counter-based generator keyed by ``(seed, coset)``, so a draw
depends only on its index and not on how the work is sharded.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .branching import SubgroupId, multiplicity
from .identities import default_threads
from .partitions import BoxShape, enumerate_box, transpose
from .symfunc import Basis, SymmetricFunction, evaluate

__all__ = [
    "CosetStructure",
    "MCConfig",
    "MCResult",
    "coset_structure",
    "sample_element",
    "empirical_autocorrelation",
    "symbolic_autocorrelation",
    "exact_autocorrelation",
    "mc_check",
    "SHARD_SIZE",
]

SHARD_SIZE = 1 << 16  # must stay a multiple of 4 (Philox emits 4 words per counter step)
SYMBOLIC_MAX_VARS = 6

_I = 1j


def _rep_matrices(g: int) -> dict[str, np.ndarray]:
    if g == 2:
        J = np.array([[0, 1], [-1, 0]], dtype=complex)
        Z = np.diag([_I, _I])
    else:
        J = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 1]], dtype=complex)
        Z = np.diag([_I, _I, 1])
    return {"I": np.eye(g, dtype=complex), "J": J, "zeta": Z, "zetaJ": Z @ J}


@dataclass(frozen=True)
class CosetStructure:
    group: SubgroupId
    ambient_dim: int
    labels: tuple[str, ...]
    representatives: tuple[np.ndarray, ...] = field(compare=False)

    def is_constant(self, idx: int) -> bool:
        """Anti-diagonal cosets: ``det(I + x R diag(t, 1/t, .))`` is free of ``t``."""
        return "J" in self.labels[idx]

    def __len__(self) -> int:
        return len(self.labels)


def coset_structure(h: SubgroupId) -> CosetStructure:
    g = h.ambient_dim
    mats = _rep_matrices(g)
    labels = h.coset_labels
    return CosetStructure(h, g, labels, tuple(mats[l] for l in labels))


def _torus_element(theta: float, g: int) -> np.ndarray:
    t = complex(math.cos(theta), math.sin(theta))
    d = [t, t.conjugate()] + ([1.0] if g == 3 else [])
    return np.diag(np.array(d, dtype=complex))


def sample_element(
    c: CosetStructure,
    rng: np.random.Generator,
    coset: int | None = None,
    theta: float | None = None,
) -> np.ndarray:
    """Haar-random element: uniform coset, then uniform angle on the torus."""
    if coset is None:
        coset = int(rng.integers(len(c)))
    if theta is None:
        theta = float(rng.uniform(0.0, 2 * math.pi))
    return c.representatives[coset] @ _torus_element(theta, c.ambient_dim)


@dataclass(frozen=True)
class MCConfig:
    samples: int
    seed: int
    x_points: tuple[complex, ...]

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        xs = tuple(self.x_points)
        if not xs:
            raise ValueError("need at least one x point")
        if any(abs(complex(v)) > 1 for v in xs):
            raise ValueError("x points must satisfy |x| <= 1")
        object.__setattr__(self, "x_points", xs)


@dataclass
class MCResult:
    estimate: complex
    std_error: float  # modulus of the complex standard error
    std_error_re: float
    std_error_im: float
    per_coset: list[dict]


def _constant_value(rep: np.ndarray, x: Sequence[complex]) -> complex:
    g = rep.shape[0]
    val = 1 + 0j
    for xi in x:
        val *= complex(np.linalg.det(np.eye(g) + xi * rep))
    return val


def _shard(args) -> tuple[float, float, float, float]:
    rep, x, key, start, count, backend = args
    gen = np.random.Generator(np.random.Philox(key=key, counter=start // 4))
    theta = gen.random(count) * (2 * math.pi)
    return backend.det_product_sums(rep, x, theta)


def empirical_autocorrelation(
    c: CosetStructure,
    cfg: MCConfig,
    threads: int | None = None,
    backend=None,
) -> MCResult:
    """Stratified estimate of the Haar average.

    The sample budget is split evenly over the cosets that depend on ``t``;
    constant cosets contribute their exact value with zero variance.
    """
    threads = default_threads() if threads is None else max(1, threads)
    backend = backend or kernels
    x = np.asarray([complex(v) for v in cfg.x_points], dtype=complex)
    k = len(c)
    varying = [i for i in range(k) if not c.is_constant(i)]
    base, extra = divmod(cfg.samples, len(varying))

    jobs, owners = [], []
    plan: dict[int, int] = {}
    for rank, idx in enumerate(varying):
        n = base + (1 if rank < extra else 0)
        plan[idx] = n
        key = cfg.seed | (idx << 64)
        for start in range(0, n, SHARD_SIZE):
            jobs.append((c.representatives[idx], x, key, start, min(SHARD_SIZE, n - start), backend))
            owners.append(idx)

    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_shard, jobs))
    else:
        results = [_shard(j) for j in jobs]

    acc = {idx: [0.0, 0.0, 0.0, 0.0] for idx in varying}
    for idx, r in zip(owners, results):  # fixed order, so sums are reproducible
        a = acc[idx]
        for q in range(4):
            a[q] += r[q]

    total = 0j
    var_re = var_im = 0.0
    per = []
    for idx in range(k):
        label = c.labels[idx]
        if c.is_constant(idx):
            v = _constant_value(c.representatives[idx], x)
            total += v
            per.append({"coset": label, "samples": 0, "mean": [v.real, v.imag], "exact": True})
            continue
        n = plan[idx]
        if n == 0:
            raise ValueError("too few samples for the number of sampled cosets")
        sr, si, qr, qi = acc[idx]
        mr, mi = sr / n, si / n
        if n > 1:
            vr = max(qr - n * mr * mr, 0.0) / (n - 1)
            vi = max(qi - n * mi * mi, 0.0) / (n - 1)
        else:
            vr = vi = 0.0
        total += complex(mr, mi)
        var_re += vr / n
        var_im += vi / n
        per.append({"coset": label, "samples": n, "mean": [mr, mi], "exact": False})

    se_re = math.sqrt(var_re) / k
    se_im = math.sqrt(var_im) / k
    return MCResult(total / k, math.hypot(se_re, se_im), se_re, se_im, per)


def _degree_box(h: SubgroupId, m: int) -> SymmetricFunction:
    g = h.ambient_dim
    coeffs = {}
    for lam in enumerate_box(BoxShape(m, g)):
        c = multiplicity(h, transpose(lam))
        if c:
            coeffs[lam] = c
    return SymmetricFunction(Basis.SCHUR, m, coeffs)


def symbolic_autocorrelation(h: SubgroupId, x_points: Sequence) -> complex:
    """``sum_lam m_{lam'}(h) S_lam(x)`` evaluated numerically."""
    m = len(x_points)
    if not 1 <= m <= SYMBOLIC_MAX_VARS:
        raise ValueError(f"symbolic evaluation needs 1 <= m <= {SYMBOLIC_MAX_VARS}")
    f = _degree_box(h, m)
    xs = [complex(v) for v in x_points]
    if all(v.imag == 0 for v in xs):
        xs = [v.real for v in xs]
    return complex(evaluate(f, xs))


# ---------------------------------------------------------------- exact route

# Gaussian rationals as (re, im) pairs of Fractions
_G = tuple[Fraction, Fraction]
_G_ONE: _G = (Fraction(1), Fraction(0))


def _gmul(a: _G, b: _G) -> _G:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gadd(a: _G, b: _G) -> _G:
    return (a[0] + b[0], a[1] + b[1])


def _to_gauss(v) -> _G:
    if isinstance(v, complex):
        return (Fraction(v.real), Fraction(v.imag))
    if isinstance(v, tuple):
        return (Fraction(v[0]), Fraction(v[1]))
    return (Fraction(v), Fraction(0))


_ROOT = {"1": (Fraction(1), Fraction(0)), "i": (Fraction(0), Fraction(1)), "-i": (Fraction(0), Fraction(-1))}
# Exact data per coset: diagonal cosets list the diagonal of R; the others list
# the constant factor polynomial det(I + x R T) as coefficients in x.
_EXACT = {
    2: {
        "I": ("diag", ("1", "1")),
        "zeta": ("diag", ("i", "i")),
        "J": ("const", (1, 0, 1)),
        "zetaJ": ("const", (1, 0, -1)),
    },
    3: {
        "I": ("diag", ("1", "1", "1")),
        "zeta": ("diag", ("i", "i", "1")),
        "J": ("const", (1, 1, 1, 1)),
        "zetaJ": ("const", (1, 1, -1, -1)),
    },
}


def _laurent_mul(p: dict[int, _G], q: dict[int, _G]) -> dict[int, _G]:
    out: dict[int, _G] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            key = e1 + e2
            out[key] = _gadd(out.get(key, (Fraction(0), Fraction(0))), _gmul(c1, c2))
    return out


def exact_autocorrelation(h: SubgroupId, x_points: Sequence) -> tuple[Fraction, Fraction]:
    """Exact Haar average as a Gaussian rational ``(re, im)``.

    Torus cosets are integrated by taking the constant term in ``t``; float
    inputs are converted with ``Fraction`` and are therefore exact binary values.
    """
    g = h.ambient_dim
    xs = [_to_gauss(v) for v in x_points]
    total: _G = (Fraction(0), Fraction(0))
    for label in h.coset_labels:
        kind, data = _EXACT[g][label]
        if kind == "const":
            val = _G_ONE
            for x in xs:
                acc = (Fraction(0), Fraction(0))
                power = _G_ONE
                for c in data:
                    acc = _gadd(acc, _gmul((Fraction(c), Fraction(0)), power))
                    power = _gmul(power, x)
                val = _gmul(val, acc)
            total = _gadd(total, val)
            continue
        r = [_ROOT[s] for s in data]
        poly: dict[int, _G] = {0: _G_ONE}
        for x in xs:
            rx = [_gmul(ri, x) for ri in r]
            poly = _laurent_mul(poly, {0: _G_ONE, 1: rx[0]})
            poly = _laurent_mul(poly, {0: _G_ONE, -1: rx[1]})
            if g == 3:
                poly = _laurent_mul(poly, {0: _gadd(_G_ONE, rx[2])})
        total = _gadd(total, poly.get(0, (Fraction(0), Fraction(0))))
    n = len(h.coset_labels)
    return (total[0] / n, total[1] / n)


# ---------------------------------------------------------------- checks


def _json_x(v) -> object:
    v = complex(v)
    return v.real if v.imag == 0 else [v.real, v.imag]


def mc_check(h: SubgroupId, cfg: MCConfig, threads: int | None = None, backend=None) -> dict:
    """Compare the estimate with the symbolic value, real and imaginary parts separately."""
    res = empirical_autocorrelation(coset_structure(h), cfg, threads=threads, backend=backend)
    sym = symbolic_autocorrelation(h, cfg.x_points)
    tol_re = max(4 * res.std_error_re, 1e-2)
    tol_im = max(4 * res.std_error_im, 1e-2)
    ok = abs(res.estimate.real - sym.real) <= tol_re and abs(res.estimate.imag - sym.imag) <= tol_im
    return {
        "group": h.name,
        "m": len(cfg.x_points),
        "x": [_json_x(v) for v in cfg.x_points],
        "samples": cfg.samples,
        "seed": cfg.seed,
        "empirical": [res.estimate.real, res.estimate.imag],
        "symbolic": [sym.real, sym.imag],
        "std_error": res.std_error,
        "std_error_components": [res.std_error_re, res.std_error_im],
        "pass": bool(ok),
    }
