import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from schur_autocorr import branching
from schur_autocorr.branching import (
    TABLES,
    ClosedFormError,
    OmegaKind,
    PhiDescriptor,
    PhiFilter,
    SubgroupId,
    multiplicity,
    multiplicity_record,
    omega,
    oracle_multiplicity,
    phi_count,
    phi_set,
    tau,
    validate_tables,
)

G2 = [h for h in SubgroupId if h.ambient_dim == 2]
G3 = [h for h in SubgroupId if h.ambient_dim == 3]


def _three(max_part):
    return st.lists(st.integers(0, max_part), min_size=3, max_size=3).map(lambda v: tuple(sorted(v, reverse=True)))


# ---------------------------------------------------------------- Phi sets


def test_phi_set_examples():
    assert set(phi_set(PhiDescriptor(3, 2, 0))) == {(3, 0), (2, 0), (3, 1), (2, 1), (3, 2), (2, 2)}
    assert set(phi_set(PhiDescriptor(3, 2, 1))) == {(3, 2), (2, 2), (3, 1), (2, 1)}
    assert phi_set(PhiDescriptor(0, 0, 0)) == [(0, 0)]


@given(st.integers(0, 40), st.integers(0, 40), st.integers(0, 1))
def test_phi_set_cardinality(a, b, e):
    a, b = max(a, b), min(a, b)
    if b < e:
        return
    d = PhiDescriptor(a, b, e)
    assert len(phi_set(d)) == (a - b + 1) * (b - e + 1)


@pytest.mark.parametrize("bad", [(1, 2, 0), (2, 0, 1), (3, 2, 2)])
def test_phi_descriptor_rejects(bad):
    with pytest.raises(ValueError):
        PhiDescriptor(*bad)


@pytest.mark.parametrize(
    "a, b, f, n",
    [
        (7, 2, PhiFilter.SUM4, 5),
        (7, 2, PhiFilter.BOTH44, 3),
        (11, 6, PhiFilter.SUM4, 11),
        (11, 6, PhiFilter.BOTH44, 6),
        (2, 0, PhiFilter.MOD2, 2),
        (2, 0, PhiFilter.MOD4, 1),
    ],
)
def test_phi_count_examples(a, b, f, n):
    assert phi_count(PhiDescriptor(a, b, 0), f) == n


def test_phi_count_worked_sets():
    d = PhiDescriptor(7, 2, 0)
    s24 = {pq for pq in phi_set(d) if sum(pq) % 4 == 0}
    assert s24 == {(4, 0), (3, 1), (7, 1), (6, 2), (2, 2)}
    s44 = {pq for pq in s24 if (pq[0] - pq[1]) % 4 == 0}
    assert s44 == {(4, 0), (6, 2), (2, 2)}


# ---------------------------------------------------------------- closed forms


def test_tau_examples():
    assert tau(1, 2) == -1
    assert tau(5, 6) == -1
    assert tau(0, 0) == 1
    assert all(tau(3, b) == 0 for b in range(12))
    assert {tau(z, b) for z in range(4) for b in range(4)} == {-1, 0, 1}


@pytest.mark.parametrize(
    "kind, e, z, bp, value",
    [
        (OmegaKind.OMEGA, 0, 2, 9, -3),
        (OmegaKind.OMEGA, 1, 1, 2, -1),
        (OmegaKind.OMEGA, 0, 0, 0, 1),
    ],
)
def test_omega_examples(kind, e, z, bp, value):
    assert omega(kind, e, z, bp) == value


def test_omega_one_one_two_by_brute_force():
    # lambda' = (4, 3, 1): Phi^(2,4) = {(3, 1)} and Phi^(4,4) is empty
    d = PhiDescriptor(4, 3, 1)
    assert [pq for pq in phi_set(d) if sum(pq) % 4 == 0] == [(3, 1)]
    assert phi_count(d, PhiFilter.BOTH44) == 0
    assert 2 * phi_count(d, PhiFilter.BOTH44) - phi_count(d, PhiFilter.SUM4) == -1


@pytest.mark.parametrize("e", [0, 1])
def test_omega_identity_on_base_partitions(e):
    for z in range(41):
        for bp in range(4):
            d = PhiDescriptor(z + bp + e, bp + e, e)
            want = 2 * phi_count(d, PhiFilter.BOTH44) - phi_count(d, PhiFilter.SUM4)
            assert omega(OmegaKind.OMEGA, e, z, bp) == want


@given(st.integers(0, 1), st.integers(0, 60), st.integers(0, 60))
def test_omega_variants_relations(e, z, bp):
    om = omega(OmegaKind.OMEGA, e, z, bp)
    assert omega(OmegaKind.OMEGA_TILDE, e, z, bp) == 2 * om - tau(z, bp)
    assert omega(OmegaKind.OMEGA_HAT, e, z, bp) == tau(z, bp) - om


@pytest.mark.parametrize(
    "h, lp, value",
    [
        (SubgroupId.H2, (4, 0), 1),
        (SubgroupId.H2, (2, 0), 0),
        (SubgroupId.H3, (2, 0, 0), 1),
        (SubgroupId.U1_IN_U2, (1, 1), 1),
        (SubgroupId.U1_IN_U3, (2, 0, 0), 2),
    ],
)
def test_multiplicity_examples(h, lp, value):
    assert multiplicity(h, lp) == value


def test_h34_example_partition():
    lp = (11, 9, 0)
    assert 2 * multiplicity(SubgroupId.H34, lp) - multiplicity(SubgroupId.H34_PRIME, lp) == -3


def test_multiplicity_length_checks():
    with pytest.raises(ValueError):
        multiplicity(SubgroupId.H2, (1, 1, 1))
    with pytest.raises(ValueError):
        multiplicity(SubgroupId.H3, (1, 1, 1, 1))


@pytest.mark.parametrize("h", G2)
def test_g2_against_quadrature(h):
    for a in range(9):
        for b in range(a + 1):
            assert multiplicity(h, (a, b)) == oracles.multiplicity_by_quadrature(h.name, (a, b)), (a, b)


@pytest.mark.parametrize("h", G3)
def test_g3_against_quadrature(h):
    for a in range(7):
        for b in range(a + 1):
            for c in range(b + 1):
                lp = (a, b, c)
                assert multiplicity(h, lp) == oracles.multiplicity_by_quadrature(h.name, lp), lp


@pytest.mark.parametrize("h", list(SubgroupId))
def test_closed_form_equals_oracle_mode(h):
    g = h.ambient_dim
    for a in range(25):
        for b in range(a + 1):
            if g == 2:
                assert multiplicity(h, (a, b)) == oracle_multiplicity(h, (a, b))
            else:
                for c in range(0, b + 1, 3):
                    assert multiplicity(h, (a, b, c)) == oracle_multiplicity(h, (a, b, c))


@given(_three(30), st.integers(0, 15))
def test_shift_invariance(lp, k):
    a, b, c = lp
    assert multiplicity(SubgroupId.H3, (a + k, b + k, c + k)) == multiplicity(SubgroupId.H3, lp)
    assert multiplicity(SubgroupId.U1_IN_U3, (a + k, b + k, c + k)) == multiplicity(SubgroupId.U1_IN_U3, lp)
    for h in (SubgroupId.H34, SubgroupId.H34_PRIME):
        if c >= 2:
            assert multiplicity(h, lp) == multiplicity(h, (a - 2, b - 2, c - 2))


@pytest.mark.parametrize("h", [SubgroupId.H2, SubgroupId.H24_PRIME, SubgroupId.H24])
def test_odd_degree_vanishes(h):
    for a in range(42):
        for b in range(a + 1):
            if (a + b) % 2:
                assert multiplicity(h, (a, b)) == 0


def test_multiplicity_record_shape():
    rec = multiplicity_record(SubgroupId.H34, (4, 3, 1))
    assert rec == {
        "group": "H34",
        "lambda_prime": [4, 3, 1],
        "multiplicity": rec["oracle_multiplicity"],
        "oracle_multiplicity": rec["multiplicity"],
        "decomposition": {"k": 0, "epsilon": 1, "z": 1, "b_prime": 2},
    }


@pytest.mark.parametrize("text", ["H2", "h34", "H34'", "H34_PRIME", "U1U3"])
def test_subgroup_parse(text):
    assert isinstance(SubgroupId.parse(text), SubgroupId)


def test_subgroup_parse_rejects():
    with pytest.raises(ValueError):
        SubgroupId.parse("H5")


def test_coset_labels_start_with_identity():
    for h in SubgroupId:
        assert h.coset_labels[0] == "I"
        assert len(h.coset_labels) in (1, 2, 4)


# ---------------------------------------------------------------- validation


def test_validate_tables_passes():
    rep = validate_tables(30)
    assert rep.passed, rep.first_mismatch
    assert rep.triples_checked == 31 * 32 // 2 + 30 * 31 // 2


def test_validate_tables_base_partition_example():
    # (z, b', eps) = (5, 2, 0): base partition (7, 2, 0)
    assert ((5 + 1) * (2 + 1) + TABLES.kappa[0][5 % 4][2]) // 4 == 5
    assert multiplicity(SubgroupId.H34_PRIME, (7, 2, 0)) == 5 == phi_count(PhiDescriptor(7, 2), PhiFilter.SUM4)


def test_validate_tables_guard():
    with pytest.raises(ValueError):
        validate_tables(7)


def _with_entry(table, e, i, j, value):
    rows = [list(r) for r in table[e]]
    rows[i][j] = value
    out = dict(table)
    out[e] = tuple(tuple(r) for r in rows)
    return out


@pytest.mark.parametrize(
    "name, e, i, j, delta",
    [("kappa", 0, 1, 2, 4), ("xi", 1, 2, 3, 8), ("beta", 0, 3, 0, 4), ("beta_hat", 1, 0, 1, 4)],
)
def test_validate_tables_catches_a_typo(monkeypatch, name, e, i, j, delta):
    bad = dataclasses.replace(TABLES, **{name: _with_entry(getattr(TABLES, name), e, i, j, getattr(TABLES, name)[e][i][j] + delta)})
    monkeypatch.setattr(branching, "TABLES", bad)
    rep = validate_tables(12)
    assert not rep.passed
    assert rep.first_mismatch["epsilon"] == e


def test_non_integral_closed_form_is_an_error(monkeypatch):
    bad = dataclasses.replace(TABLES, kappa=_with_entry(TABLES.kappa, 0, 0, 0, 2))
    monkeypatch.setattr(branching, "TABLES", bad)
    with pytest.raises(ClosedFormError):
        multiplicity(SubgroupId.H34_PRIME, (0, 0, 0))
    rep = validate_tables(8)
    assert rep.first_mismatch["check"] == "integrality"
