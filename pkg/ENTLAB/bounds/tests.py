import itertools
import math

import numpy as np
from django.test import SimpleTestCase
from pydantic import ValidationError

from bounds.services.kernels import (
    chain_bound,
    compare_bounds,
    compare_chain,
    lemma1_chain,
    pair_bound_naive,
    pair_bound_new,
    pair_bound_prior,
    theorem_bound,
)
from bounds.services.ordering import (
    Direction,
    OrderingStatus,
    choose_split,
    ordering_certificate,
)
from bounds.services.params import NAIVE, BoundRegime, Coupling, PowerParam, PriorFamily
from measures.services.concurrence import concurrence_two_qubit
from measures.services.entropies import renyi_two_qubit, tsallis_two_qubit
from measures.services.params import ALPHA_MIN
from states.services.errors import DimensionError, DomainError, HypothesisError
from states.services.states import (
    acin_state,
    basis_state,
    example_params,
    ghz_state,
    iter_random_pure_states,
    reduced_pair,
    w_state,
)
from states.testing import check_unittest

# 예제 상태의 T_2 / E_2 / E_αmin 값 (A|BC, AB, AC)
T2 = (40 / 81, 30 / 81, 10 / 81)
E2 = (0.9822979964, 0.6674246623, 0.1901028786)
EW = (0.9926491187, 0.8347718939, 0.4146617766)


class PowerParamTests(SimpleTestCase):
    def test_derived(self):
        p = PowerParam(mu=2)
        self.assertEqual(p.h, 3)
        self.assertAlmostEqual(p.tight, 4 / 3)
        self.assertAlmostEqual(p.tail, 4 - 4 / 3 - 1)
        self.assertEqual(PowerParam.from_gamma(3).mu, 1.5)

    def test_validation(self):
        with self.assertRaises(ValidationError):
            PowerParam(mu=0.5)
        with self.assertRaises(ValidationError):
            PowerParam(mu=2, gamma=3)
        with self.assertRaises(DomainError):
            PowerParam(mu=2).power(Coupling.SQUARED)


class Lemma1Tests(SimpleTestCase):
    def test_endpoints(self):
        for mu in (1, 1.5, 2, 3.7):
            p = PowerParam(mu=mu)
            for v in lemma1_chain(1, p):
                self.assertAlmostEqual(v, 2 ** mu, places=12)
            self.assertEqual(lemma1_chain(0, p), (1, 1, 1, 1))

    def test_substitution(self):
        lhs, tight, loose, naive = lemma1_chain(0.5, PowerParam(mu=2))
        self.assertAlmostEqual(lhs, 2.25)
        self.assertAlmostEqual(tight, 2.0833333333333, places=12)
        self.assertAlmostEqual(loose, 2.0)
        self.assertAlmostEqual(naive, 1.75)

    def test_chain_dominance(self):
        # [0,1] × [1,5] 격자 2000 점
        def ok(point):
            lhs, tight, loose, naive = lemma1_chain(point[0], PowerParam(mu=point[1]))
            return min(lhs - tight, tight - loose, loose - naive) >= -1e-12

        grid = itertools.product(np.linspace(0, 1, 50), np.linspace(1, 5, 40))
        check_unittest(self, ok, grid)

    def test_domain(self):
        with self.assertRaises(DomainError):
            lemma1_chain(1.5, PowerParam(mu=2))


class PairBoundTests(SimpleTestCase):
    def test_single_party(self):
        p = PowerParam.from_gamma(3)
        self.assertAlmostEqual(pair_bound_new(0.7, 0, p, Coupling.LINEAR), 0.7 ** 1.5)
        self.assertAlmostEqual(pair_bound_new(0.7, 0, p, Coupling.SQUARED), 0.7 ** 3)
        for family in PriorFamily:
            pw = 3 if family is PriorFamily.REF12_SQUARED else 1.5
            self.assertAlmostEqual(pair_bound_prior(0.7, 0, p, family), 0.7 ** pw)

    def test_saturates_at_unit_exponent(self):
        self.assertAlmostEqual(pair_bound_new(T2[1], T2[2], PowerParam(mu=1)), T2[0], places=14)
        self.assertAlmostEqual(pair_bound_new(T2[1], T2[2], PowerParam(mu=1)), 0.49383, delta=1e-5)

    def test_squared_at_gamma_two(self):
        value = pair_bound_new(EW[1], EW[2], PowerParam.from_gamma(2), Coupling.SQUARED)
        self.assertAlmostEqual(value, EW[1] ** 2 + EW[2] ** 2, places=14)
        self.assertAlmostEqual(value, 0.8687885, places=6)

    def test_prior_values(self):
        p1 = PowerParam(mu=1)
        self.assertAlmostEqual(pair_bound_prior(0.6, 0.3, p1, PriorFamily.REF12_LINEAR),
                               pair_bound_new(0.6, 0.3, p1), places=14)
        self.assertAlmostEqual(pair_bound_prior(T2[1], T2[2], PowerParam(mu=2), PriorFamily.REF11),
                               0.2133821064, places=9)

    def test_ref11_equals_ref12_linear(self):
        for a, b, mu in [(0.9, 0.2, 1.3), (0.5, 0.5, 2), (0.4, 0.1, 3.5)]:
            p = PowerParam(mu=mu)
            self.assertAlmostEqual(pair_bound_prior(a, b, p, PriorFamily.REF11),
                                   pair_bound_prior(a, b, p, PriorFamily.REF12_LINEAR), places=13)

    def test_hypothesis(self):
        with self.assertRaises(HypothesisError):
            pair_bound_new(0.1, 0.2, PowerParam(mu=2))
        with self.assertRaises(HypothesisError):
            pair_bound_prior(0.1, 0.2, PowerParam(mu=2), PriorFamily.REF11)
        with self.assertRaises(DomainError):
            pair_bound_naive(0.1, -0.2, PowerParam(mu=2))

    def test_new_dominates_prior_dominates_naive(self):
        cases = [
            (Coupling.LINEAR, PriorFamily.REF11, False),
            (Coupling.LINEAR, PriorFamily.REF12_LINEAR, False),
            (Coupling.SQUARED, PriorFamily.REF12_SQUARED, True),
        ]
        xs = np.linspace(0, 1, 21)
        for coupling, family, by_gamma in cases:
            def ok(point):
                e1, e2, expo = point
                if e1 < e2:
                    return True
                p = PowerParam.from_gamma(2 * expo) if by_gamma else PowerParam(mu=expo)
                new = pair_bound_new(e1, e2, p, coupling)
                prior = pair_bound_prior(e1, e2, p, family)
                naive = pair_bound_naive(e1, e2, p, coupling)
                return new - prior >= -1e-12 and prior - naive >= -1e-12

            check_unittest(self, ok, itertools.product(xs, xs, np.linspace(1, 4, 13)))


class ChainBoundTests(SimpleTestCase):
    def test_three_party_collapse(self):
        for mu, coupling in [(1.7, Coupling.LINEAR), (2.5, Coupling.SQUARED)]:
            p = PowerParam.from_gamma(2 * mu)
            self.assertEqual(chain_bound([0.6, 0.25], 1, p, coupling), pair_bound_new(0.6, 0.25, p, coupling))
        # m = 0 은 두 번째 분기 (v2 가 앞)
        p = PowerParam(mu=2)
        self.assertEqual(chain_bound([0.25, 0.6], 0, p), pair_bound_new(0.6, 0.25, p))

    def test_four_party_descending(self):
        p = PowerParam(mu=2)
        a, b, c = 0.5, 0.3, 0.1
        expected = a ** 2 + p.h * pair_bound_new(b, c, p)
        self.assertAlmostEqual(chain_bound([a, b, c], 2, p), expected, places=14)
        self.assertAlmostEqual(theorem_bound(1, [a, b, c], p), expected, places=14)
        self.assertAlmostEqual(theorem_bound(3, [a, b, c], p), expected, places=14)

    def test_split_forms(self):
        p = PowerParam(mu=1.5)
        v = [0.2, 0.35, 0.5]
        # m = 1: v1^μ + h^1·Q(v3, v2)
        self.assertAlmostEqual(chain_bound(v, 1, p), v[0] ** 1.5 + p.h * pair_bound_new(v[2], v[1], p), places=14)
        # m = 0: h·v1^μ + Q(v3, v2)
        self.assertAlmostEqual(chain_bound(v, 0, p), p.h * v[0] ** 1.5 + pair_bound_new(v[2], v[1], p), places=14)
        self.assertEqual(theorem_bound(2, v, p, m=0), chain_bound(v, 0, p))
        q = PowerParam.from_gamma(3)
        self.assertEqual(theorem_bound(6, v, q, m=1), chain_bound(v, 1, q, Coupling.SQUARED))

    def test_prior_and_naive_tails(self):
        p = PowerParam(mu=2)
        v = [0.5, 0.3, 0.1]
        new = chain_bound(v, 2, p)
        prior = chain_bound(v, 2, p, family=PriorFamily.REF12_LINEAR)
        naive = chain_bound(v, 2, p, family=NAIVE)
        self.assertGreater(new, prior)
        self.assertGreater(prior, naive)
        self.assertAlmostEqual(naive, 0.5 ** 2 + 3 * (0.3 ** 2 + 3 * 0.1 ** 2), places=14)

    def test_zero_and_errors(self):
        p = PowerParam(mu=3)
        self.assertEqual(chain_bound([0, 0, 0], 2, p), 0)
        with self.assertRaises(DimensionError):
            chain_bound([0.5], 0, p)
        with self.assertRaises(DomainError):
            chain_bound([0.5, 0.2], 2, p)
        with self.assertRaises(DomainError):
            theorem_bound(2, [0.5, 0.2, 0.1], p)
        with self.assertRaises(DomainError):
            theorem_bound(7, [0.5, 0.2], p)


class CompareBoundsTests(SimpleTestCase):
    def test_unit_exponent_coincides(self):
        report = compare_bounds(T2[0], T2[1], T2[2], PowerParam(mu=1), BoundRegime.TSALLIS_Q2TO3)
        for m in report.margins:
            self.assertAlmostEqual(m, 0.0, places=12)
        self.assertAlmostEqual(report.new_bound, 0.49383, delta=1e-5)

    def test_eta_two_gap(self):
        report = compare_bounds(T2[0], T2[1], T2[2], PowerParam(mu=2), BoundRegime.TSALLIS_Q2TO3)
        # (μ²/(μ+1) - μ/2)·e2·(e1^(μ-1) - e2^(μ-1)), μ=2 이면 계수 1/3
        gap = (1 / 3) * T2[2] * (T2[1] - T2[2])
        self.assertAlmostEqual(report.margins[1], gap, places=14)
        self.assertAlmostEqual(report.margins[1], 0.0101610527, places=9)
        self.assertAlmostEqual(report.lhs, 0.2438652644, places=9)
        self.assertTrue(report.holds())

    def test_renyi_regimes(self):
        report = compare_bounds(E2[0], E2[1], E2[2], PowerParam(mu=1), BoundRegime.RENYI_GE2)
        self.assertAlmostEqual(report.new_bound, report.prior_bound, places=14)
        self.assertAlmostEqual(report.new_bound, 0.85752, delta=1e-5)
        self.assertGreater(report.lhs, report.new_bound)

        report = compare_bounds(E2[0], E2[1], E2[2], PowerParam(mu=2), BoundRegime.RENYI_GE2)
        self.assertAlmostEqual(report.margins[0], 0.2900493656, places=8)

        report = compare_bounds(EW[0], EW[1], EW[2], PowerParam.from_gamma(4), BoundRegime.RENYI_WINDOW)
        self.assertEqual(report.exponent, 4)
        self.assertAlmostEqual(report.new_bound, 0.6946244040, places=8)
        self.assertAlmostEqual(report.prior_bound, 0.6645398838, places=8)
        self.assertTrue(report.holds())

    def test_chain_report(self):
        p = PowerParam(mu=2)
        report = compare_chain(0.9, [0.5, 0.3, 0.1], 2, p, BoundRegime.RENYI_GE2)
        self.assertAlmostEqual(report.lhs, 0.81, places=14)
        self.assertAlmostEqual(report.new_bound, chain_bound([0.5, 0.3, 0.1], 2, p), places=14)
        self.assertAlmostEqual(report.naive_bound, 0.25 + 3 * (0.09 + 3 * 0.01), places=14)
        self.assertTrue(report.holds())
        self.assertEqual(set(report.point), {"v1", "v2", "v3"})


class OrderingTests(SimpleTestCase):
    def test_example_state(self):
        cert = ordering_certificate(acin_state(example_params()), 0, [1, 2])
        self.assertEqual(cert.statuses, (OrderingStatus.CERTIFIED,))
        self.assertAlmostEqual(cert.positions[0].pair, 2 * math.sqrt(15) / 9, places=10)
        self.assertAlmostEqual(cert.positions[0].upper, 2 * math.sqrt(5) / 9, places=10)
        reverse = ordering_certificate(acin_state(example_params()), 0, [2, 1])
        self.assertEqual(reverse.overall, OrderingStatus.VIOLATED)

    def test_w_state_equality(self):
        cert = ordering_certificate(w_state(3), 0, [1, 2])
        self.assertEqual(cert.overall, OrderingStatus.CERTIFIED)
        self.assertAlmostEqual(cert.positions[0].pair, 2 / 3, places=10)
        self.assertAlmostEqual(cert.positions[0].lower, 2 / 3, places=10)

    def test_three_qubits_never_undetermined(self):
        check_unittest(
            self,
            lambda s: ordering_certificate(s, 0, [1, 2]).overall is not OrderingStatus.UNDETERMINED,
            iter_random_pure_states(3, 200, seed=12),
        )

    def test_four_qubit_brackets(self):
        def ok(s):
            cert = ordering_certificate(s, 0, [1, 2, 3])
            first = cert.positions[0]
            return first.lower <= first.upper + 1e-10 and len(cert.positions) == 2

        check_unittest(self, ok, iter_random_pure_states(4, 50, seed=13))

    def test_choose_split(self):
        # 4큐비트 W: C(AB_i) = 1/2, C(A|B_2B_3) ≥ √(1/2) 이므로 m = 0
        self.assertEqual(choose_split(w_state(4), 0, [1, 2, 3]), ((1, 2, 3), 0, OrderingStatus.CERTIFIED))
        cert = ordering_certificate(w_state(4), 0, [1, 2, 3], [Direction.GE, Direction.GE])
        self.assertEqual(cert.statuses[0], OrderingStatus.VIOLATED)
        self.assertEqual(choose_split(acin_state(example_params()), 0, [1, 2]), ((1, 2), 1, OrderingStatus.CERTIFIED))
        self.assertEqual(choose_split(ghz_state(4), 0, [1, 2, 3])[2], OrderingStatus.CERTIFIED)

    def test_choose_split_searches_orders(self):
        def certifiable(s):
            for m in range(2, -1, -1):
                dirs = [Direction.GE] * m + [Direction.LE] * (2 - m)
                for order in itertools.permutations((1, 2, 3)):
                    if ordering_certificate(s, 0, order, dirs).overall is OrderingStatus.CERTIFIED:
                        return m
            return None

        certified = 0
        for s in iter_random_pure_states(4, 20, seed=5):
            order, m, status = choose_split(s, 0, [1, 2, 3])
            self.assertEqual(sorted(order), [1, 2, 3])
            self.assertEqual(m if status is OrderingStatus.CERTIFIED else None, certifiable(s))
            if status is OrderingStatus.CERTIFIED:
                certified += 1
                dirs = [Direction.GE] * m + [Direction.LE] * (2 - m)
                self.assertIs(ordering_certificate(s, 0, order, dirs).overall, OrderingStatus.CERTIFIED)
        self.assertGreaterEqual(certified, 10)

    def test_errors(self):
        with self.assertRaises(DimensionError):
            ordering_certificate(basis_state("00000"), 0, [1, 2, 3, 4])
        with self.assertRaises(DimensionError):
            ordering_certificate(w_state(3), 0, [1, 1])
        with self.assertRaises(DomainError):
            ordering_certificate(w_state(3), 0, [1, 2], ["ge", "le"])

    def test_concurrence_and_value_orderings_agree(self):
        # 2큐비트 marginal 에서는 g_q, f_α 단조성 때문에 두 순서가 같다
        def ok(s):
            c1 = concurrence_two_qubit(reduced_pair(s, 0, 1))
            c2 = concurrence_two_qubit(reduced_pair(s, 0, 2))
            if abs(c1 - c2) <= 1e-6:
                return True
            by_c = c1 > c2
            return all((f(reduced_pair(s, 0, 1), k) > f(reduced_pair(s, 0, 2), k)) == by_c
                       for f, k in [(tsallis_two_qubit, 2), (tsallis_two_qubit, 3),
                                    (renyi_two_qubit, 2), (renyi_two_qubit, ALPHA_MIN)])

        check_unittest(self, ok, iter_random_pure_states(3, 300, seed=14))
