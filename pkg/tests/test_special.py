from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from flowpoly.errors import PoleError, UnsupportedKernelError
from flowpoly.special import (
    FamilySpec, MorrisParams, catalan, catalan_product, conjecture_report, cry_graph, dyn_volume_cry_d,
    family_graph, kpf_volume_cry_a, morris_closed, morris_ct, report_summary,
)


def test_family_sizes():
    assert len(family_graph(FamilySpec("A", 4)).edges) == 6
    assert len(family_graph(FamilySpec("D", 4)).edges) == 12
    assert len(family_graph(FamilySpec("C", 4)).edges) == 16
    b = family_graph(FamilySpec("B", 4))
    assert len(b.edges) == 16 and sum(e.half for e in b.edges) == 4
    with pytest.raises(ValueError):
        FamilySpec("E", 3)
    with pytest.raises(ValueError):
        FamilySpec("A", 1)


def test_family_indexing():
    assert cry_graph("A", 3).n_plus_1 == 4
    assert cry_graph("D", 3).n_plus_1 == 3


def test_catalan():
    assert [catalan(k) for k in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_cry_a_and_d_tables():
    assert [kpf_volume_cry_a(n) for n in range(3, 8)] == [1, 2, 10, 140, 5880]
    assert [dyn_volume_cry_d(n) for n in range(2, 8)] == [1, 2, 32, 5120, 9175040, 197300060160]
    for n in range(2, 8):
        assert dyn_volume_cry_d(n) == 2 ** ((n - 2) ** 2) * catalan_product(0, n - 2)


@pytest.mark.parametrize("m", range(1, 7))
def test_morris_catalan_special_value(m):
    assert morris_closed(MorrisParams(m, 1, 1, 1)) == catalan_product(1, m)


def test_morris_trivial():
    for a, b, c2 in [(0, 1, 1), (2, 3, 3), (1, 1, 2)]:
        assert morris_closed(MorrisParams(1, a, b, c2)) == comb(a + b - 1, a)


def test_morris_ct_examples():
    assert morris_ct(MorrisParams(2, 1, 1, 1)) == 2
    assert morris_ct(MorrisParams(2, 1, 2, 1, 1)) == 32
    assert morris_ct(MorrisParams(3, 1, 2, 1, 1)) == 5120


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(1, 4))
def test_morris_ct_single_variable(a, b):
    assert morris_ct(MorrisParams(1, a, b, 1)) == comb(a + b - 1, a)


@pytest.mark.parametrize("m", range(1, 5))
@pytest.mark.parametrize("a", range(3))
@pytest.mark.parametrize("b", [1, 2])
def test_morris_ct_matches_closed(m, a, b):
    p = MorrisParams(m, a, b, 1)
    assert morris_ct(p) == morris_closed(p)


@pytest.mark.parametrize("m", range(1, 4))
def test_morris_b_zero(m):
    # Gamma(b) sits in the denominator, so the closed form is undefined at
    # b = 0 while the constant term itself vanishes (every monomial of the
    # kernel has negative total degree).
    with pytest.raises(PoleError):
        morris_closed(MorrisParams(m, 2, 0, 1))
    assert morris_ct(MorrisParams(m, 2, 0, 1)) == 0
    assert morris_ct(MorrisParams(m, 0, 2, 1)) == catalan_product(1, m)


def test_morris_other_half_integers():
    assert morris_ct(MorrisParams(2, 1, 2, 3)) == morris_closed(MorrisParams(2, 1, 2, 3))
    assert morris_closed(MorrisParams(3, 2, 1, 2)) == morris_ct(MorrisParams(3, 2, 1, 2))


def test_morris_param_errors():
    with pytest.raises(UnsupportedKernelError):
        MorrisParams(2, 1, 1, Fraction(1, 2))
    with pytest.raises(UnsupportedKernelError):
        morris_closed(MorrisParams(2, 1, 2, 1, 1))
    with pytest.raises(ValueError):
        MorrisParams(0, 1, 1, 1)


def test_report_small():
    rows = conjecture_report(3)
    assert all(set(r) == {"family", "n", "quantity", "method", "value", "conjectured", "match"} for r in rows)
    assert [r["n"] for r in rows] == sorted(r["n"] for r in rows)
    by = {(r["family"], r["n"], r["quantity"]): r for r in rows}
    assert by[("D", 3, "volume")]["match"] is True
    assert by[("C", 3, "dimension")]["value"] == 6
    summary = report_summary(rows)
    assert summary["type_C_ratio_exponent"] in ("n-2", "n-1", "undetermined")
    assert set(summary["factor_2"]) == {"B", "C", "D"}


def test_report_is_deterministic(monkeypatch):
    monkeypatch.setenv("FLOWPOLY_THREADS", "1")
    assert conjecture_report(3) == conjecture_report(3)
