import pytest
from hypothesis import given

from biorder import freeword as fw
from biorder import magnus
from biorder.errors import IdentityInput, TruncationExceeded
from biorder.magnus import MAGNUS, MagnusOracle, expand
from biorder.verify import _coefficient  # independent per-monomial DP
from strategies import nontrivial, words


def test_expand_examples():
    assert str(expand("a", 2)) == "1 + A"
    assert dict(expand("A", 2).coeffs) == {"": 1, "A": -1, "AA": 1}
    s = expand("abAB", 2)
    assert {m: c for m, c in s.coeffs.items() if c} == {"": 1, "AB": 1, "BA": -1}


@pytest.mark.parametrize("w", ["a", "abAB", "Ba"])
def test_sign_examples_positive(w):
    assert magnus.sign(w) == 1


def test_compare_examples():
    assert magnus.compare("b", "a") == -1
    assert magnus.compare("a", "a") == 0
    assert magnus.compare("abAB", "") == 1


def test_arch_examples():
    assert magnus.arch_cmp("b", "a") == "<<"
    assert magnus.arch_cmp("a", "a") == "~"
    assert magnus.arch_cmp("abAB", "b") == "<<"


def test_arch_matches_power_definition():
    # |x|^n < |y| for every n <= 8 whenever x << y
    for x, y in [("b", "a"), ("abAB", "b"), ("abAB", "a")]:
        ax, ay = MAGNUS.abs(x), MAGNUS.abs(y)
        for n in range(1, 9):
            assert MAGNUS.compare(fw.power(ax, n), ay) == -1


def test_abs_examples():
    assert magnus.abs_word("A") == "a"
    assert magnus.abs_word("abAB") == "abAB"
    assert magnus.abs_word("") == ""


def test_identity_rejected():
    with pytest.raises(IdentityInput):
        magnus.sign("")
    with pytest.raises(IdentityInput):
        magnus.arch_cmp("", "a")


def test_truncation_exceeded():
    deep = "abAB"
    for g in ("a", "b", "a", "b"):
        deep = fw.multiply(fw.conjugate(deep, g), fw.invert(deep))
    with pytest.raises(TruncationExceeded):
        MagnusOracle(max_degree=2).sign(deep)


def test_class_census_degree3_first_at_length8():
    assert list(magnus.class_census(7)) == ["A", "B", "AB"]
    c8 = magnus.class_census(8)
    assert {"AAB", "ABB"} <= set(c8)
    assert len(c8["AAB"]) == len(c8["ABB"]) == 8


@given(nontrivial)
def test_leading_term_agrees_with_independent_dp(w):
    m, c = MAGNUS.lead(w)
    assert _coefficient(w, m) == c
    for d in range(1, len(m) + 1):
        for mono in magnus.monomials(d):
            if magnus.monomial_key(mono) < magnus.monomial_key(m):
                assert _coefficient(w, mono) == 0


@given(nontrivial)
def test_antisymmetry(w):
    assert magnus.sign(fw.invert(w)) == -magnus.sign(w)


@given(nontrivial, nontrivial)
def test_product_of_positives(u, v):
    u, v = MAGNUS.abs(u), MAGNUS.abs(v)
    p = fw.multiply(u, v)
    assert p and magnus.sign(p) == 1


@given(nontrivial, words)
def test_conjugation_invariance(w, g):
    assert magnus.sign(fw.conjugate(w, g)) == magnus.sign(w)


def test_axiom_suite_ball5():
    rep = magnus.axiom_suite(MAGNUS, L=5, Lc=3, samples=500, seed=1)
    assert rep["passed"], rep["examples"]
