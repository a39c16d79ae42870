from fractions import Fraction

import pytest

from kappa_lab import bounds as B
from kappa_lab.exceptions import UsageError
from kappa_lab.probabilities import GENERATING_FUNCTION, kappa_sym, q_split


def test_constants():
    assert B.c_split() == Fraction(16, 9)
    assert B.c_kappa() == 169 * kappa_sym(13)
    assert Fraction("5.48") < B.c_kappa() < Fraction("5.49")


@pytest.mark.parametrize("n, k", [(10, 6), (4, 2)])
def test_even_upper_cells(n, k):
    r = B.verify_prop_even_upper(n, k)
    assert r.holds and r.worst_margin > 0


def test_even_upper_small_counterexamples():
    # s_k(n)^2 ignores parity, so tiny n break the literal statement
    r = B.sweep_prop_even_upper(6)
    assert not r.holds
    assert {(c.n, c.k) for c in r.counterexamples} == {(2, 2), (3, 2), (5, 3)}
    c = next(c for c in r.counterexamples if (c.n, c.k) == (2, 2))
    assert c.lhs == 1 and c.rhs == Fraction(1, 4)


def test_even_upper_conditioned_sweep():
    r = B.sweep_prop_even_upper_conditioned(40)
    assert r.holds and r.worst_margin >= 0


@pytest.mark.parametrize("n, k", [(10, 6), (9, 5)])
def test_even_lower_cells(n, k):
    assert B.verify_prop_even_lower(n, k).holds


def test_even_lower_needs_long_cycles():
    with pytest.raises(UsageError):
        B.verify_prop_even_lower(10, 5)


def test_q_cells():
    assert B.verify_prop_q(12, 7, "lower").holds
    assert B.verify_prop_q(12, 3, "upper").holds
    with pytest.raises(UsageError):
        B.verify_prop_q(12, 3, "sideways")


def test_lower_sweep_to_thirty():
    r = B.sweep_prop_even_lower(30)
    assert r.holds
    assert r.range_checked == frozenset(B.lower_cells(30))


@pytest.mark.parametrize("direction", ["upper", "lower"])
def test_q_sweep_to_thirty(direction):
    assert B.sweep_prop_q(direction, 30).holds


def test_uniform_bounds_to_sixty():
    r = B.verify_uniform_bounds(60)
    assert r.holds
    # equality cases: n = 13 for kappa and n = 4 for Q
    assert r.worst_margin == 0


def test_q_bound_is_tight_at_four():
    assert 16 * q_split(4) == B.c_split()


def test_s15_monotone():
    r = B.verify_s15_monotone(100, GENERATING_FUNCTION)
    assert r.holds
    assert (14, 15) in r.range_checked and (100, 15) in r.range_checked


def test_printed_s15_value_differs():
    r = B.verify_s15_printed_value(GENERATING_FUNCTION)
    assert not r.holds
    (c,) = r.counterexamples
    assert c.lhs.numerator == c.rhs.numerator
    assert len(str(c.lhs.denominator)) == 39 and len(str(c.rhs.denominator)) == 38
    assert r.notes


def test_golden_constants():
    assert B.verify_golden_constants().holds


@pytest.mark.parametrize("n, k", [(300, 15), (31, 15), (5, 2), (400, 199)])
def test_tail_sum_cells(n, k):
    assert B.verify_tail_sum_bound(n, k).holds


def test_tail_sum_single_term():
    # l runs from ceil(n/2) to n-k-1, so (31, 15) is the empty range
    assert B.tail_sum(31, 15) == 0
    assert B.tail_sum(32, 15) == Fraction(1, 16**4)
    assert B.tail_sum(30, 14) == Fraction(1, 15**4)


def test_tail_sum_range():
    with pytest.raises(UsageError):
        B.verify_tail_sum_bound(30, 15)


def test_tail_sweep_to_120():
    r = B.sweep_tail_sum_bound(120)
    assert r.holds and r.worst_margin > 0


def test_induction_certificate():
    r = B.replay_induction_certificate(method=GENERATING_FUNCTION)
    assert r.holds, r.counterexamples
    assert B.CERT_TOTAL == Fraction("1.69713") < Fraction(16, 9)


def test_certificate_probe_must_exceed_300():
    with pytest.raises(UsageError):
        B.replay_induction_certificate(300)


def test_merge_is_commutative():
    a = B.BoundReport.from_checks("x", [B.Check(1, 0, Fraction(1), Fraction(2))])
    b = B.BoundReport.from_checks("x", [B.Check(2, 0, Fraction(3), Fraction(2))])
    ab, ba = a.merge(b), b.merge(a)
    assert ab == ba
    assert not ab.holds and ab.worst_margin == -1
    assert [(c.n, c.lhs, c.rhs) for c in ab.counterexamples] == [(2, 3, 2)]


def test_report_dict_uses_rational_strings():
    d = B.verify_golden_constants().to_dict()
    assert d["holds"] is True
    # the exact equalities have margin zero
    assert Fraction(d["worst_margin"]) == 0


def test_run_claim():
    r = B.run_claim("golden_constants")
    assert r.claim_id == "golden_constants" and r.holds
    with pytest.raises(UsageError):
        B.run_claim("made_up")
