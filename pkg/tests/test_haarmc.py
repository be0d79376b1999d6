import math
from fractions import Fraction

import numpy as np
import pytest

import oracles
from schur_autocorr import kernels
from schur_autocorr.branching import SubgroupId
from schur_autocorr.haarmc import (
    MCConfig,
    coset_structure,
    empirical_autocorrelation,
    exact_autocorrelation,
    mc_check,
    sample_element,
    symbolic_autocorrelation,
)

GROUPS = list(SubgroupId)


def _det(gamma, x):
    return complex(np.linalg.det(np.eye(gamma.shape[0]) + x * gamma))


def test_identity_coset_at_zero_angle():
    c = coset_structure(SubgroupId.H2)
    g = sample_element(c, np.random.default_rng(0), coset=0, theta=0.0)
    assert np.allclose(g, np.eye(2), atol=0)


@pytest.mark.parametrize("h", GROUPS)
def test_samples_are_unitary(h):
    c = coset_structure(h)
    rng = np.random.default_rng(1)
    for _ in range(200):
        g = sample_element(c, rng)
        assert np.abs(g.conj().T @ g - np.eye(c.ambient_dim)).max() < 1e-12


@pytest.mark.parametrize(
    "h, label, poly",
    [
        (SubgroupId.H2, "J", lambda x: 1 + x**2),
        (SubgroupId.H24, "zetaJ", lambda x: 1 - x**2),
        (SubgroupId.H3, "J", lambda x: (1 + x) * (1 + x**2)),
        (SubgroupId.H34, "J", lambda x: (1 + x) * (1 + x**2)),
        (SubgroupId.H34, "zetaJ", lambda x: (1 + x) * (1 - x**2)),
    ],
)
def test_constant_cosets(h, label, poly):
    c = coset_structure(h)
    idx = c.labels.index(label)
    assert c.is_constant(idx)
    rng = np.random.default_rng(2)
    for _ in range(100):
        g = sample_element(c, rng, coset=idx)
        for x in (0.3, -0.7, 0.25 + 0.5j):
            assert abs(_det(g, x) - poly(x)) < 1e-10


@pytest.mark.parametrize("h", GROUPS)
def test_zero_point_gives_exactly_one(h):
    res = empirical_autocorrelation(coset_structure(h), MCConfig(5000, 3, (0.0, 0.0)), threads=1)
    assert res.estimate == 1
    assert res.std_error == 0


def test_h2_half_exact_limit():
    assert exact_autocorrelation(SubgroupId.H2, [0.5]) == (Fraction(5, 4), Fraction(0))
    assert exact_autocorrelation(SubgroupId.H2, [Fraction(1, 2)]) == (Fraction(5, 4), Fraction(0))
    assert symbolic_autocorrelation(SubgroupId.H2, [0.5]) == pytest.approx(1.25)
    assert symbolic_autocorrelation(SubgroupId.U1_IN_U2, [0.5]) == pytest.approx(1.25)


@pytest.mark.parametrize("h", GROUPS)
def test_symbolic_at_origin(h):
    assert symbolic_autocorrelation(h, [0]) == 1


def test_h3_single_variable_coset_split():
    x = Fraction(1, 3)
    re, im = exact_autocorrelation(SubgroupId.H3, [x])
    u1, _ = exact_autocorrelation(SubgroupId.U1_IN_U3, [x])
    assert im == 0
    assert re == (u1 + (1 + x) * (1 + x**2)) / 2


@pytest.mark.parametrize("h", GROUPS)
@pytest.mark.parametrize("x", [(0.5,), (0.3, -0.4), (0.2, 0.3j, -0.1), (0.4, 0.1, 0.2, -0.3)])
def test_symbolic_equals_exact_and_quadrature(h, x):
    sym = symbolic_autocorrelation(h, x)
    re, im = exact_autocorrelation(h, x)
    assert sym == pytest.approx(complex(float(re), float(im)), abs=1e-12)
    assert sym == pytest.approx(oracles.autocorrelation_by_quadrature(h.name, x), abs=1e-10)


def test_symbolic_guard():
    with pytest.raises(ValueError):
        symbolic_autocorrelation(SubgroupId.H2, [0.1] * 7)


def test_reproducible_bit_for_bit():
    c = coset_structure(SubgroupId.H34)
    cfg = MCConfig(200_000, 12345, (0.2, -0.3, 0.4))
    a = empirical_autocorrelation(c, cfg, threads=1)
    b = empirical_autocorrelation(c, cfg, threads=1)
    assert a.estimate == b.estimate and a.std_error == b.std_error


def test_independent_of_thread_count():
    c = coset_structure(SubgroupId.H24)
    cfg = MCConfig(300_000, 7, (0.5, 0.25))
    a = empirical_autocorrelation(c, cfg, threads=1)
    b = empirical_autocorrelation(c, cfg, threads=5)
    assert a.estimate == b.estimate and a.std_error == b.std_error


def test_different_seeds_differ():
    c = coset_structure(SubgroupId.H2)
    a = empirical_autocorrelation(c, MCConfig(10_000, 1, (0.5,)), threads=1)
    b = empirical_autocorrelation(c, MCConfig(10_000, 2, (0.5,)), threads=1)
    assert a.estimate != b.estimate


def test_std_error_shrinks_like_root_n():
    c = coset_structure(SubgroupId.U1_IN_U3)
    x = (0.4, -0.3, 0.5)
    small = empirical_autocorrelation(c, MCConfig(10**5, 99, x), threads=2)
    big = empirical_autocorrelation(c, MCConfig(10**6, 99, x), threads=2)
    ratio = big.std_error / small.std_error
    assert abs(ratio - 1 / math.sqrt(10)) <= 0.3 / math.sqrt(10)


def test_stratification_budget():
    res = empirical_autocorrelation(coset_structure(SubgroupId.H34), MCConfig(1001, 0, (0.3,)), threads=1)
    sampled = [p for p in res.per_coset if not p["exact"]]
    assert [p["coset"] for p in sampled] == ["I", "zeta"]
    assert sum(p["samples"] for p in sampled) == 1001


@pytest.mark.parametrize(
    "h, x",
    [(SubgroupId.H2, (0.3, 0.4)), (SubgroupId.H34, (0.2, 0.3, 0.1)), (SubgroupId.H24_PRIME, (0.5j,))],
)
def test_mc_check_passes(h, x):
    rep = mc_check(h, MCConfig(200_000, 42, x), threads=2)
    assert rep["pass"], rep


def test_mc_check_degenerate():
    rep = mc_check(SubgroupId.H2, MCConfig(100, 1, (0.0, 0.0)))
    assert rep["pass"] and rep["std_error"] == 0


def test_mc_check_fails_against_wrong_group():
    # U(1) in U(2) and H24 differ at this point by far more than the noise
    cfg = MCConfig(200_000, 5, (0.5, 0.5))
    emp = empirical_autocorrelation(coset_structure(SubgroupId.U1_IN_U2), cfg, threads=2).estimate
    assert abs(emp - symbolic_autocorrelation(SubgroupId.H24, cfg.x_points)) > 0.05


def test_report_schema():
    rep = mc_check(SubgroupId.H3, MCConfig(1000, 9, (0.1, 0.2j)))
    assert set(rep) >= {"group", "m", "x", "samples", "seed", "empirical", "symbolic", "std_error", "pass"}
    assert rep["x"] == [0.1, [0.0, 0.2]]


@pytest.mark.parametrize(
    "kwargs",
    [dict(samples=0, seed=1, x_points=(0.1,)), dict(samples=1, seed=-1, x_points=(0.1,)), dict(samples=1, seed=1, x_points=(1.5,)), dict(samples=1, seed=1, x_points=())],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        MCConfig(**kwargs)


@pytest.mark.skipif(not kernels.compiled_available(), reason="compiled kernels not built")
def test_backends_agree_on_estimates():
    c = coset_structure(SubgroupId.H34_PRIME)
    cfg = MCConfig(50_000, 11, (0.3, -0.2, 0.45j))
    a = empirical_autocorrelation(c, cfg, threads=1, backend=kernels.backend_module("python"))
    b = empirical_autocorrelation(c, cfg, threads=1, backend=kernels.backend_module("cython"))
    assert a.estimate == pytest.approx(b.estimate, abs=1e-12)
    assert a.std_error == pytest.approx(b.std_error, rel=1e-9)
