"""Acceptance suite: one pass/fail line per criterion, all equalities exact.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
"""

import time
from fractions import Fraction

from mobex.catalog import enumerate_graphs, ribbon_classes
from mobex.clt import clt_limit, verify_clt
from mobex.dualchar import (charpoly_lhs, charpoly_rhs,
                            verify_polynomial_identity)
from mobex.npoly import NPoly
from mobex.oracle import MomentQuery, eigenvalue_moment, mc_estimate, oracle_compare
from mobex.penner import (I_series, J_series, K1_series, K2_series, K_series,
                          gse_penner_zseries, nonorientable_remainder,
                          real_moduli_euler, real_moduli_graph_sum)
from mobex.series import apply_duality, expand_logZ
from mobex.sprinkle import (calibrate_irreducibles, flower_graph,
                            mu_bruteforce, mu_closed_form)


def _report(number, label, started):
    print("PASS criterion %2d (%s) in %.1fs" % (number, label, time.time() - started))


def _all_profiles(e_max):
    def parts(n, mx):
        if n == 0:
            yield ()
            return
        for k in range(min(n, mx), 0, -1):
            for rest in parts(n - k, k):
                yield (k,) + rest
    for e in range(1, e_max + 1):
        yield from parts(2 * e, 2 * e)


def test_criterion_01_mu_invariant_suite():
    started = time.time()
    try:
        checked = 0
        for profile in _all_profiles(5):
            for entry in enumerate_graphs(list(profile)):
                for beta in (1, 2, 4):
                    assert (mu_bruteforce(entry.graph, beta)
                            == mu_closed_form(entry.topology, beta)), (profile, beta)
                checked += 1
        assert checked > 6000
        assert mu_bruteforce(flower_graph(twisted=True), 4) == 4
        assert calibrate_irreducibles(1) == (1, 1, 1, 1)
        assert calibrate_irreducibles(2) == (2, 4, 0, 0)
        assert calibrate_irreducibles(4) == (4, 4, -2, 4)
        assert time.time() - started < 120
    except AssertionError:
        print("FAIL criterion  1 (mu invariant suite)")
        raise
    _report(1, "mu invariant suite, %d classes with e <= 5" % checked, started)


def test_criterion_02_oracle_equivalence():
    started = time.time()
    try:
        for beta, degree in ((1, 8), (2, 8), (4, 6)):
            reports = oracle_compare(beta, "master", degree, [1, 2, 3])
            assert all(r.equal for r in reports)
        assert time.time() - started < 600
    except AssertionError:
        print("FAIL criterion  2 (oracle equivalence)")
        raise
    _report(2, "graph sum == eigenvalue oracle, N in {1,2,3}", started)


def test_criterion_03_gse_penner_order_z():
    started = time.time()
    try:
        zs = gse_penner_zseries(6)
        expected = NPoly({(1, 0): Fraction(-1, 12), (2, 0): Fraction(-1, 2),
                          (3, 0): Fraction(2, 3)})
        assert zs.coefficient(1) == expected
        assert zs.coefficient(1) == K_series(1, 2).coefficient(1)
    except AssertionError:
        print("FAIL criterion  3 (GSE Penner order-z coefficient)")
        raise
    _report(3, "GSE Penner z-coefficient -N/12 - N^2/2 + 2N^3/3", started)


def test_criterion_04_penner_closed_form_identities():
    started = time.time()
    try:
        assert K_series(10, 1) == K1_series(10)
        assert K_series(10, 2) == K2_series(10)
        assert J_series(10, 1) == K_series(10, 1)
        r = nonorientable_remainder(10)
        k2_rem = K2_series(10) - K1_series(10).scale_N(2).scale(Fraction(1, 2))
        j2 = J_series(10, 2).scale_z(2).scale_N(2)
        j2_rem = j2 - J_series(10, 1).scale_N(2).scale(Fraction(1, 2))
        assert k2_rem == r.scale(Fraction(-1, 2))
        assert j2_rem == r.scale(Fraction(1, 2))
    except AssertionError:
        print("FAIL criterion  4 (Penner closed-form identities)")
        raise
    _report(4, "K1/K2/J identities and remainder signs to z^10", started)


def test_criterion_05_extended_duality():
    started = time.time()
    try:
        for r in (1, 2, 3, 4):
            lhs = I_series(8, r)
            rhs = I_series(8, Fraction(1, r)).scale_N(-r)
            assert lhs == rhs, r
    except AssertionError:
        print("FAIL criterion  5 (extended Penner duality)")
        raise
    _report(5, "I(z,N,r) == I(z,-rN,1/r) to z^8, r in 1..4", started)


def test_criterion_06_real_moduli_euler():
    started = time.time()
    try:
        for q, n in ((0, 2), (0, 3), (1, 1)):
            assert real_moduli_graph_sum(q, n) == real_moduli_euler(q, n), (q, n)
    except AssertionError:
        print("FAIL criterion  6 (real moduli Euler characteristics)")
        raise
    _report(6, "graph sums match real-moduli closed form", started)


def test_criterion_07_main_duality():
    started = time.time()
    try:
        inv = expand_logZ("invariant", 8)
        dual = apply_duality(inv)
        assert dual == inv  # graph-by-graph, symbolically in alpha
        for alpha in (Fraction(1, 2), Fraction(1), Fraction(2)):
            assert dual.reduce_root(alpha) == inv.reduce_root(alpha), alpha
        reduced = inv.reduce_root(1)
        assert apply_duality(inv).reduce_root(1) == reduced  # GUE pointwise
    except AssertionError:
        print("FAIL criterion  7 (alpha duality of the invariant expansion)")
        raise
    _report(7, "duality fixes the invariant expansion to degree 8", started)


def test_criterion_08_charpoly_duality():
    started = time.time()
    try:
        assert charpoly_lhs("gue", 6) == charpoly_rhs("gue", 6)
        assert charpoly_lhs("goe", 6) == charpoly_rhs("gse", 6)
        for n_size, k in ((1, 1), (2, 1)):
            assert verify_polynomial_identity(n_size, k, "BHC").equal
            assert verify_polynomial_identity(n_size, k, "BHQ").equal
    except AssertionError:
        print("FAIL criterion  8 (characteristic polynomial duality)")
        raise
    _report(8, "lambda-series agree to degree 6; BHC/BHQ exact", started)


def test_criterion_09_moebius_ribbon_factor_two():
    started = time.time()
    try:
        for profile in _all_profiles(5):
            cat = enumerate_graphs(list(profile))
            lhs = sum(Fraction(2, e.aut_moebius) for e in cat
                      if e.aut_ribbon is not None)
            rhs = sum(Fraction(1, aut) for _, aut, _ in ribbon_classes(list(profile)))
            assert lhs == rhs, profile
    except AssertionError:
        print("FAIL criterion  9 (Moebius/ribbon factor two)")
        raise
    _report(9, "sum 2/|Aut| == sum 1/|Aut_R| per profile, e <= 5", started)


def test_criterion_10_clt():
    started = time.time()
    try:
        results = {}
        for alpha in (Fraction(1, 2), Fraction(1), Fraction(2)):
            report = verify_clt(alpha, 4, 6)
            assert report.equal
            results[alpha] = clt_limit(alpha, 4)
        base = results[Fraction(1)]
        for pair, value in base.quadratic_form:
            assert results[Fraction(1, 2)].coefficient(*pair) == value / 2
            assert results[Fraction(2)].coefficient(*pair) == value * 2
    except AssertionError:
        print("FAIL criterion 10 (central limit theorem)")
        raise
    _report(10, "CLT verified; ratios 1/2 : 1 : 2", started)


def test_criterion_11_monte_carlo_sanity():
    started = time.time()
    try:
        mean, err = mc_estimate(1, 2, (2,), 100000, 7)
        assert abs(mean - 6) < 3 * err
        mean, err = mc_estimate(2, 2, (2,), 100000, 7, scale=Fraction(1))
        assert abs(mean - 2) < 3 * err
        mean, err = mc_estimate(1, 2, (1,), 100000, 7)
        assert abs(mean) < 3 * err
    except AssertionError:
        print("FAIL criterion 11 (Monte Carlo sanity, non-gating)")
        raise
    _report(11, "MC within 3 sigma of exact oracle (non-gating)", started)
