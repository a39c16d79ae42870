"""Acceptance criteria, one test each.

Every test starts from empty caches and records its wall time. The terminal
summary prints one PASS/FAIL line per criterion with its sub-checks.
"""
from fractions import Fraction

from kappa_lab import bounds, limits
from kappa_lab import montecarlo as mc
from kappa_lab import probabilities as P
from kappa_lab.brute import brute_force_table

GF = P.GENERATING_FUNCTION
ENUM = P.ENUMERATION

# the rational as printed: numerator and a 38-digit denominator
S15_PRINTED = Fraction(
    158929798034197186400893117108816122671, 83317523526667097802976844202788608000
)
MC_SEED = 1


def test_criterion_1_golden_rationals(criterion):
    with criterion(1, "golden rationals", 5) as c:
        even = sum((P.q_split(m) for m in range(0, 16, 2)), Fraction(0))
        odd = sum((P.q_split(m) for m in range(1, 16, 2)), Fraction(0))
        c2 = 16 * P.q_split(4)
        s60 = 60 * P.s_below(15, 60, GF)
    c.check("even partial sum = 630468719/521756235", even == Fraction(630468719, 521756235))
    c.check("odd partial sum = 4429844723/3652293645", odd == Fraction(4429844723, 3652293645))
    c.check("C_2 = 16/9", c2 == Fraction(16, 9))
    c.check("60 s_15(60) numerator as printed", s60.numerator == S15_PRINTED.numerator)
    c.check("60 s_15(60) equals printed rational", s60 == S15_PRINTED)
    c.check("60 s_15(60) < 0.19076", s60 < Fraction("0.19076"))
    c.assert_all()


def test_criterion_2_s15_monotone(criterion):
    with criterion(2, "n s_15(n) nonincreasing on 14..60", 5) as c:
        report = bounds.verify_s15_monotone(60, GF)
    c.check(f"{len(report.range_checked)} exact comparisons, zero failures", report.holds)
    c.assert_all()


def test_criterion_3_uniform_bounds(criterion):
    with criterion(3, "uniform bounds to n = 300", 60) as c:
        ck = 169 * P.kappa_sym(13)
        reports = {
            q: bounds.verify_uniform_bounds(300, (q,), GF)
            for q in ("q_split", "kappa", "kappa_even", "kappa_odd")
        }
    c.check("C_kappa = 169 kappa(S_13)", bounds.c_kappa() == ck)
    c.check("n^2 Q(S_n) <= 16/9, 1 <= n <= 300", reports["q_split"].holds)
    c.check("n^2 kappa(S_n) <= C_kappa, 2 <= n <= 300", reports["kappa"].holds)
    c.check("n^2 kappa_E(S_n) <= 4 C_kappa, n <= 300", reports["kappa_even"].holds)
    c.check("n^2 kappa_O(S_n) <= 4 C_kappa, n <= 300", reports["kappa_odd"].holds)
    c.assert_all()


def test_criterion_4_induction_certificate(criterion):
    with criterion(4, "induction certificate replay", 5) as c:
        report = bounds.replay_induction_certificate(method=GF)
    failed = {x.label for x in report.counterexamples}
    for label in (
        "(60 s15(60))^2 <= 0.03639",
        "(300/285)^2 * odd sum <= 1.34393",
        "C_2 (2/15 + 4 log 20/300 + ...) <= 0.31681",
        "0.03639 + 1.34393 + 0.31681 = 1.69713",
        "1.69713 < C_2",
    ):
        c.check(label, label not in failed)
    c.check("probe checks at n = 301", report.holds)
    c.assert_all()


def test_criterion_5_identities(criterion):
    with criterion(5, "identity suite", 120) as c:
        sym_split = all(
            P.kappa_even(n) + P.kappa_odd(n) == 4 * P.kappa_sym(n) for n in range(2, 201)
        )
        alt = all(P.kappa_alt(n) == P.kappa_alt_direct(n) for n in range(2, 61))
        routes = all(
            P.compute(q, n, ENUM) == P.compute(q, n, GF)
            for q in ("kappa_sym", "kappa_even", "kappa_odd", "q_split", "kappa_alt")
            for n in range(0, 61)
        )
        below = all(
            P.s_below(k, n, ENUM) == P.s_below(k, n, GF)
            for n in range(0, 61)
            for k in range(1, n + 2)
        )
    c.check("kappa_E + kappa_O = 4 kappa, 2 <= n <= 200", sym_split)
    c.check("kappa(A_n) two ways agree, 2 <= n <= 60", alt)
    c.check("enumeration = generating function, 0 <= n <= 60", routes)
    c.check("s_k(n) enumeration = generating function, all k, n <= 60", below)
    c.assert_all()


def test_criterion_6_brute_force(criterion):
    with criterion(6, "exhaustive S_n / A_n oracle, n <= 7", 60) as c:
        mismatches = []
        for n in range(0, 8):
            brute = brute_force_table(n)
            for q in ("kappa_sym", "kappa_even", "kappa_odd", "q_split", "kappa_alt"):
                if P.compute(q, n) != brute[q].values[n]:
                    mismatches.append((q, n))
            for k in range(1, n + 2):
                if P.s_below(k, n) != brute[f"s_below({k})"].values[n]:
                    mismatches.append((f"s_below({k})", n))
    c.check("kappa(A_3) = 1/3", P.kappa_alt(3) == Fraction(1, 3) == brute_force_table(3)["kappa_alt"].values[3])
    c.check("kappa(A_4) = 7/24", P.kappa_alt(4) == Fraction(7, 24) == brute_force_table(4)["kappa_alt"].values[4])
    c.check(f"all quantities match, mismatches {mismatches}", not mismatches)
    c.assert_all()


def test_criterion_7_inequality_sweeps(criterion):
    with criterion(7, "inequality sweeps", 120) as c:
        upper = bounds.sweep_prop_even_upper(40)
        lower = bounds.sweep_prop_even_lower(60)
        q_upper = bounds.sweep_prop_q("upper", 60)
        q_lower = bounds.sweep_prop_q("lower", 60)
    bad = sorted({(x.n, x.k) for x in upper.counterexamples})
    c.check(f"kappa_E upper bound, 2 <= k <= n <= 40 (counterexamples at {bad})", upper.holds)
    c.check("kappa_E lower bound, n/2 < k <= n <= 60", lower.holds)
    c.check("Q upper bound, 2 <= k <= n <= 60", q_upper.holds)
    c.check("Q lower bound, n/2 < k <= n <= 60", q_lower.holds)
    c.assert_all()


def test_criterion_8_asymptotics(criterion):
    with criterion(8, "limit enclosures", 120) as c:
        consts = {D: limits.enclose_constants(D) for D in (75, 150, 300)}
        lims = {D: limits.alternating_limits(D) for D in (75, 150, 300)}
        cap = 4 * bounds.c_kappa() + 2 * bounds.c_split()
        values = {n: n * n * P.kappa_alt(n) for n in (100, 200, 300, 101, 201, 299)}
    for a, b in ((75, 150), (150, 300)):
        c.check(
            f"constants nested D={a} -> {b}",
            all(consts[a][k].contains(consts[b][k]) for k in consts[a]),
        )
        c.check(
            f"limit enclosures nested D={a} -> {b}",
            all(lims[a][p].contains(lims[b][p]) for p in ("even", "odd")),
        )
    for D in (75, 150, 300):
        c.check(
            f"limit widths <= (4 C_kappa + 32/9)/{D}",
            all(lims[D][p].width <= cap / D for p in ("even", "odd")),
        )
    for parity, ns in (("even", (100, 200, 300)), ("odd", (101, 201, 299))):
        enc = lims[300][parity]
        inside = all(values[n] in enc.widened(limits.finite_n_allowance(n)) for n in ns)
        c.check(f"{parity} n {ns}: n^2 kappa(A_n) within enclosure +/- delta(n)", inside)
        dist = [abs(values[n] - enc.mid) for n in ns]
        c.check(f"{parity} n: distance to midpoint decreases", dist[0] > dist[1] > dist[2])
    c.assert_all()


def test_criterion_9_monte_carlo(criterion):
    with criterion(9, "Monte Carlo agreement", 120) as c:
        runs = [
            ("kappa(S_13)", mc.estimate("kappa_sym", 13, 1_000_000, MC_SEED), P.kappa_sym(13)),
            ("kappa(A_10)", mc.estimate("kappa_alt", 10, 1_000_000, MC_SEED), P.kappa_alt(10)),
            ("Q(S_9)", mc.estimate("q_split", 9, 1_000_000, MC_SEED), P.q_split(9)),
            ("split half-rate n=9", mc.split_half_rate(9, 1_000_000, MC_SEED), Fraction(1, 2)),
        ]
    for name, est, exact in runs:
        z = (est.point - float(exact)) / est.std_error
        c.check(f"{name}: {est.point:.6f} vs {float(exact):.6f}, z = {z:+.2f}, |z| <= 4", est.within(exact))
    c.assert_all()
