"""Exact symmetric functions in finitely many variables.

Functions are stored as sparse maps ``Partition -> Fraction`` in either the
monomial or the Schur basis. Conversion Schur -> monomial goes through Kostka
numbers, computed for shapes with at most three columns by a horizontal-strip
dynamic programme (see :mod:`schur_autocorr.kernels`).
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, prod
from typing import Iterable, Mapping, Sequence

from . import kernels
from .partitions import (
    BoxShape,
    Partition,
    enumerate_box,
    format_partition,
    parse_partition,
    transpose,
)

__all__ = [
    "Basis",
    "SymmetricFunction",
    "FactorProfile",
    "kostka",
    "kostka_row",
    "kostka_table",
    "schur_to_monomial",
    "to_monomial",
    "monomial_count",
    "specialize_ones",
    "dimension",
    "evaluate",
    "product_lhs",
    "pieri_multiply",
    "dual_cauchy_check",
]


class Basis(enum.Enum):
    MONOMIAL = "monomial"
    SCHUR = "schur"


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient {c!r} is not an exact rational")


@dataclass(frozen=True, eq=False)
class SymmetricFunction:
    """Sparse exact symmetric function in ``num_vars`` variables.

    Keys must have at most ``num_vars`` parts; zero coefficients are dropped.
    """

    basis: Basis
    num_vars: int
    coeffs: Mapping[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("num_vars must be >= 1")
        clean: dict[Partition, Fraction] = {}
        for lam, c in self.coeffs.items():
            lam = lam if type(lam) is Partition else Partition(lam)
            if len(lam) > self.num_vars:
                raise ValueError(f"{tuple(lam)} has more than {self.num_vars} parts")
            c = _as_fraction(c)
            if c:
                clean[lam] = clean.get(lam, Fraction(0)) + c
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v})

    @classmethod
    def one(cls, num_vars: int, basis: Basis = Basis.SCHUR) -> "SymmetricFunction":
        return cls(basis, num_vars, {Partition(): Fraction(1)})

    @classmethod
    def schur(cls, lam: Iterable[int], num_vars: int) -> "SymmetricFunction":
        return cls(Basis.SCHUR, num_vars, {Partition(lam): Fraction(1)})

    @classmethod
    def monomial(cls, lam: Iterable[int], num_vars: int) -> "SymmetricFunction":
        return cls(Basis.MONOMIAL, num_vars, {Partition(lam): Fraction(1)})

    def __eq__(self, other):
        if not isinstance(other, SymmetricFunction):
            return NotImplemented
        return (
            self.basis is other.basis
            and self.num_vars == other.num_vars
            and self.coeffs == other.coeffs
        )

    __hash__ = None  # type: ignore[assignment]

    def _check_compatible(self, other: "SymmetricFunction"):
        if self.basis is not other.basis or self.num_vars != other.num_vars:
            raise ValueError(
                f"incompatible operands: {self.basis.value}/{self.num_vars} vs "
                f"{other.basis.value}/{other.num_vars}"
            )

    def __add__(self, other: "SymmetricFunction") -> "SymmetricFunction":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return SymmetricFunction(self.basis, self.num_vars, out)

    def __neg__(self) -> "SymmetricFunction":
        return SymmetricFunction(self.basis, self.num_vars, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "SymmetricFunction") -> "SymmetricFunction":
        return self + (-other)

    def scale(self, c) -> "SymmetricFunction":
        c = _as_fraction(c)
        return SymmetricFunction(self.basis, self.num_vars, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, lam) -> Fraction:
        return self.coeffs.get(Partition(lam), Fraction(0))

    def terms(self) -> list[tuple[Partition, Fraction]]:
        """Terms sorted by size, then reverse-lex."""
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0].size, tuple(-p for p in kv[0])))

    def __repr__(self) -> str:
        sym = "S" if self.basis is Basis.SCHUR else "m"
        body = " + ".join(f"{c}*{sym}({format_partition(k)})" for k, c in self.terms()) or "0"
        return f"<{self.basis.value}[{self.num_vars}] {body}>"

    # serialization: integers as decimal strings so nothing is rounded
    def to_dict(self) -> dict:
        return {
            "basis": self.basis.value,
            "num_vars": self.num_vars,
            "terms": [
                {
                    "partition": format_partition(k),
                    "coeff_num": str(c.numerator),
                    "coeff_den": str(c.denominator),
                }
                for k, c in self.terms()
            ],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: Mapping) -> "SymmetricFunction":
        coeffs = {}
        for t in d["terms"]:
            lam = parse_partition(t["partition"])
            coeffs[lam] = coeffs.get(lam, 0) + Fraction(int(t["coeff_num"]), int(t["coeff_den"]))
        return cls(Basis(d["basis"]), int(d["num_vars"]), coeffs)

    @classmethod
    def from_json(cls, text: str) -> "SymmetricFunction":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------- Kostka numbers


def _horizontal_strip_removals(lam: tuple[int, ...], r: int):
    """Shapes ``kappa`` with ``lam / kappa`` a horizontal strip of ``r`` boxes."""
    n = len(lam)
    ranges = [range(lam[i + 1] if i + 1 < n else 0, lam[i] + 1) for i in range(n)]
    total = sum(lam)
    for kappa in product(*ranges):
        if total - sum(kappa) == r:
            yield Partition(kappa)


@lru_cache(maxsize=None)
def _kostka_generic(lam: Partition, content: tuple[int, ...]) -> int:
    if not content:
        return 1 if not lam else 0
    r = content[-1]
    rest = content[:-1]
    return sum(_kostka_generic(k, rest) for k in _horizontal_strip_removals(tuple(lam), r))


def kostka(lam: Iterable[int], mu: Iterable[int]) -> int:
    """Number of semistandard tableaux of shape ``lam`` and content ``mu``.

    ``mu`` may be any composition; the count does not depend on its order.
    Returns 0 when the sizes differ.
    """
    lam = Partition(lam)
    content = tuple(sorted((int(p) for p in mu if p), reverse=True))
    if sum(content) != lam.size:
        return 0
    if content and (lam.part(0) < content[0] or not lam.dominates(Partition(content))):
        return 0
    return _kostka_generic(lam, content)


def _content(node: tuple[int, int, int]) -> Partition:
    n3, n2, n1 = node
    return Partition._trusted((3,) * n3 + (2,) * n2 + (1,) * n1)


def _column_shape(lam: Partition) -> tuple[int, int, int]:
    return tuple(transpose(lam).padded(3))  # type: ignore[return-value]


@lru_cache(maxsize=32)
def kostka_table(m: int) -> dict[Partition, dict[Partition, int]]:
    """``K[lam][mu]`` for every ``lam, mu`` in the box ``(3^m)``. Nonzero entries only."""
    raw = kernels.kostka_strip_dp((m, m, m), m)
    table: dict[Partition, dict[Partition, int]] = {}
    shape_cache: dict[tuple[int, int, int], Partition] = {}
    for node, layer in raw.items():
        mu = _content(node)
        for cols, k in layer.items():
            lam = shape_cache.get(cols)
            if lam is None:
                lam = shape_cache[cols] = transpose(Partition(cols))
            table.setdefault(lam, {})[mu] = k
    return table


@lru_cache(maxsize=4096)
def kostka_row(lam: Partition, m: int) -> dict[Partition, int]:
    """``K[lam][mu]`` for all contents ``mu`` with at most ``m`` parts (``lam_1 <= 3``)."""
    lam = Partition(lam)
    if lam.part(0) > 3:
        raise ValueError(f"{tuple(lam)} has a part larger than 3")
    target = _column_shape(lam)
    raw = kernels.kostka_strip_dp(target, m)
    row = {}
    for node, layer in raw.items():
        k = layer.get(target)
        if k:
            row[_content(node)] = k
    return row


def schur_to_monomial(lam: Iterable[int], m: int) -> SymmetricFunction:
    lam = Partition(lam)
    if lam.part(0) > 3 or len(lam) > m:
        raise ValueError(f"{tuple(lam)} does not fit the box (3^{m})")
    return SymmetricFunction(Basis.MONOMIAL, m, dict(kostka_row(lam, m)))


def to_monomial(f: SymmetricFunction) -> SymmetricFunction:
    if f.basis is Basis.MONOMIAL:
        return f
    m = f.num_vars
    out: dict[Partition, Fraction] = {}
    for lam, c in f.coeffs.items():
        if lam.part(0) <= 3:
            row = kostka_row(lam, m)
        else:
            row = {
                mu: kostka(lam, mu)
                for mu in _partitions_of(lam.size, m, lam.part(0))
                if kostka(lam, mu)
            }
        for mu, k in row.items():
            out[mu] = out.get(mu, 0) + c * k
    return SymmetricFunction(Basis.MONOMIAL, m, out)


def _partitions_of(n: int, max_len: int, max_part: int):
    if n == 0:
        yield Partition()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_of(n - first, max_len - 1, first):
            yield Partition._trusted((first,) + tuple(rest))


# ---------------------------------------------------------------- specializations


def _orbit_size(mu: Partition, m: int) -> int:
    mult = mu.multiplicities()
    return factorial(m) // (factorial(m - len(mu)) * prod(factorial(v) for v in mult.values()))


def monomial_count(f: SymmetricFunction) -> int:
    """Number of distinct monomials ``x^alpha`` with nonzero coefficient."""
    if f.basis is not Basis.MONOMIAL:
        raise ValueError("monomial_count needs a monomial-basis function")
    return sum(_orbit_size(mu, f.num_vars) for mu in f.coeffs)


def specialize_ones(f: SymmetricFunction) -> Fraction:
    """Value at ``x = (1, ..., 1)``, computed through the monomial expansion."""
    g = to_monomial(f)
    total = sum((c * _orbit_size(mu, g.num_vars) for mu, c in g.coeffs.items()), Fraction(0))
    return total


def dimension(lam: Iterable[int], m: int) -> int:
    """Hook-content formula for ``S_lam(1^m)``."""
    lam = Partition(lam)
    if len(lam) > m:
        return 0
    lt = transpose(lam)
    num = den = 1
    for i, row in enumerate(lam):
        for j in range(row):
            num *= m + j - i
            den *= (row - j) + (lt[j] - i) - 1
    assert num % den == 0
    return num // den


def _monomial_value(mu: Partition, x: Sequence):
    """``m_mu(x)`` by a DP over variables; state = remaining part multiplicities."""
    m = len(x)
    if len(mu) > m:
        return 0
    mult = mu.multiplicities()
    parts = sorted(mult)
    start = tuple(mult[p] for p in parts)
    zeros = m - len(mu)
    one = x[0] ** 0 if m else 1
    layer = {(start, zeros): one}
    for xi in x:
        nxt: dict = {}
        for (rem, z), val in layer.items():
            if z:
                key = (rem, z - 1)
                nxt[key] = nxt.get(key, 0) + val
            for i, p in enumerate(parts):
                if rem[i]:
                    r2 = rem[:i] + (rem[i] - 1,) + rem[i + 1:]
                    key = (r2, z)
                    nxt[key] = nxt.get(key, 0) + val * xi**p
        layer = nxt
    return sum(layer.values())


def evaluate(f: SymmetricFunction, x: Sequence):
    """Numeric value at ``x``; exact when ``x`` holds ints or Fractions."""
    x = list(x)
    if len(x) != f.num_vars:
        raise ValueError(f"expected {f.num_vars} values, got {len(x)}")
    g = to_monomial(f)
    exact = all(isinstance(v, (int, Fraction)) for v in x)
    total = Fraction(0) if exact else 0.0
    for mu, c in g.coeffs.items():
        val = _monomial_value(mu, x)
        total += c * val if exact else float(c) * val
    return total


# ---------------------------------------------------------------- product-form LHS


@dataclass(frozen=True)
class FactorProfile:
    """One polynomial ``f(x) = c0 + c1 x + c2 x^2 + c3 x^3`` (``c0 = 1``) with a weight.

    Stands for ``weight * prod_i f(x_i)``.
    """

    per_degree: tuple[Fraction, ...]
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        coeffs = tuple(_as_fraction(c) for c in self.per_degree)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) > 4:
            raise ValueError("factor polynomials of degree > 3 are not supported")
        if not coeffs or coeffs[0] != 1:
            raise ValueError("factor polynomial must have constant term 1")
        object.__setattr__(self, "per_degree", coeffs)
        object.__setattr__(self, "weight", _as_fraction(self.weight))

    @property
    def degree(self) -> int:
        return len(self.per_degree) - 1

    def coeff(self, k: int) -> Fraction:
        return self.per_degree[k] if k < len(self.per_degree) else Fraction(0)

    def substitute(self, zeta) -> "FactorProfile":
        """Profile of ``f(zeta x)`` for a 4th root of unity ``zeta``."""
        out = []
        for k, c in enumerate(self.per_degree):
            w = complex(zeta) ** k
            if c and abs(w.imag) > 1e-12:
                raise ValueError(f"substitution x -> {zeta} x leaves the rationals")
            out.append(c * round(w.real))
        return FactorProfile(tuple(out), self.weight)


def product_lhs(profiles: Sequence[FactorProfile], m: int) -> SymmetricFunction:
    """``sum_w w * prod_i f_w(x_i)`` in the monomial basis.

    Each variable picks one power independently, so the coefficient of
    ``m_lam`` is the product of ``c_{lam_j}`` over the ``m`` padded parts.
    """
    deg = max((p.degree for p in profiles), default=0)
    if deg == 0:
        return SymmetricFunction(Basis.MONOMIAL, m, {Partition(): sum(p.weight for p in profiles)})
    out: dict[Partition, Fraction] = {}
    for lam in enumerate_box(BoxShape(m, deg)):
        c = Fraction(0)
        for p in profiles:
            term = p.weight
            for part in lam:
                term *= p.coeff(part)
                if not term:
                    break
            c += term
        if c:
            out[lam] = c
    return SymmetricFunction(Basis.MONOMIAL, m, out)


# ---------------------------------------------------------------- Pieri


def _vertical_strips(lam: Partition, m: int):
    """All ``mu`` with ``mu_i - lam_i in {0, 1}`` for ``i <= m`` and ``mu`` a partition."""
    base = lam.padded(m)

    def rec(i: int, prev: int, acc: list[int]):
        if i == m:
            yield Partition(acc)
            return
        for d in (0, 1):
            v = base[i] + d
            if v <= prev:
                acc.append(v)
                yield from rec(i + 1, v, acc)
                acc.pop()

    yield from rec(0, 10**9, [])


def pieri_multiply(f: SymmetricFunction, clip_cols: int | None = None) -> SymmetricFunction:
    """Multiply a Schur-basis function by ``prod_i (1 + x_i) = sum_l e_l``."""
    if f.basis is not Basis.SCHUR:
        raise ValueError("pieri_multiply needs a Schur-basis function")
    out: dict[Partition, Fraction] = {}
    for lam, c in f.coeffs.items():
        for mu in _vertical_strips(lam, f.num_vars):
            if clip_cols is not None and mu.part(0) > clip_cols:
                continue
            out[mu] = out.get(mu, 0) + c
    return SymmetricFunction(Basis.SCHUR, f.num_vars, out)


# ---------------------------------------------------------------- dual Cauchy


def _binary_matrix_count(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    """0/1 matrices with the given row and column sums."""

    @lru_cache(maxsize=None)
    def rec(i: int, remaining: tuple[int, ...]) -> int:
        if i == len(rows):
            return 1 if not any(remaining) else 0
        total = 0
        open_cols = [j for j, r in enumerate(remaining) if r]
        need = rows[i]
        if need > len(open_cols):
            return 0
        from itertools import combinations

        for chosen in combinations(open_cols, need):
            nxt = list(remaining)
            for j in chosen:
                nxt[j] -= 1
            total += rec(i + 1, tuple(nxt))
        return total

    return rec(0, tuple(cols))


def dual_cauchy_check(m: int, g: int) -> bool:
    """Check ``prod (1 + x_i t_j) = sum S_lam(x) S_lam'(t)`` and the ``1 - x_i t_j`` variant.

    Both sides are compared as coefficient maps over pairs (x-partition,
    t-partition) in the monomial basis. Limited to ``m, g <= 5``.
    """
    if not (1 <= m <= 5 and 1 <= g <= 5):
        raise ValueError("dual_cauchy_check is limited to 1 <= m, g <= 5")
    x_parts = list(_partitions_in_box(m, g))
    t_parts = list(_partitions_in_box(g, m))
    shapes = list(_partitions_in_box(m, g))
    for sign in (1, -1):
        lhs: dict[tuple[Partition, Partition], int] = {}
        for a in x_parts:
            for b in t_parts:
                if a.size != b.size:
                    continue
                n = _binary_matrix_count(a.padded(m), b.padded(g))
                if n:
                    lhs[(a, b)] = n * sign ** a.size
        rhs: dict[tuple[Partition, Partition], int] = {}
        for lam in shapes:
            lt = transpose(lam)
            s = sign ** lam.size
            for a in x_parts:
                ka = kostka(lam, a)
                if not ka:
                    continue
                for b in t_parts:
                    kb = kostka(lt, b)
                    if kb:
                        rhs[(a, b)] = rhs.get((a, b), 0) + s * ka * kb
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs:
            return False
    return True


def _partitions_in_box(rows: int, cols: int):
    for n in range(rows * cols + 1):
        yield from _partitions_of(n, rows, cols)

