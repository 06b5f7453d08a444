import math

import numpy as np
from django.test import SimpleTestCase
from pydantic import ValidationError

from measures.services.concurrence import concurrence_pure, concurrence_two_qubit, wootters_spectrum
from measures.services.entropies import (
    f_alpha,
    g_q,
    renyi_pure,
    renyi_two_qubit,
    tsallis_pure,
    tsallis_two_qubit,
)
from measures.services.params import ALPHA_MIN, RenyiParam, RenyiRegime, TsallisParam
from measures.services.roof import concurrence_roof_oracle, roof_search
from states.services.errors import DimensionError, DomainError, InvalidStateError
from states.services.states import (
    AcinParams,
    acin_state,
    basis_state,
    bell_state,
    density,
    example_params,
    iter_random_pure_states,
    mixture,
    random_density,
    reduced_pair,
)
from states.testing import check_unittest

# 예제 상태의 닫힌 식 값
C_A_BC = math.sqrt(80 / 81)
C_AB = 2 * math.sqrt(15) / 9
C_AC = 2 * math.sqrt(5) / 9


def _example():
    return acin_state(example_params())


class ConcurrencePureTests(SimpleTestCase):
    def test_values(self):
        self.assertAlmostEqual(concurrence_pure(basis_state("00"), {0}), 0.0, places=12)
        self.assertAlmostEqual(concurrence_pure(bell_state(), {0}), 1.0, places=12)
        self.assertAlmostEqual(concurrence_pure(_example(), {0}), C_A_BC, places=12)
        self.assertAlmostEqual(concurrence_pure(_example(), {0}), 0.993808, places=6)

    def test_range_on_qubit_cuts(self):
        check_unittest(
            self,
            lambda s: all(0 <= concurrence_pure(s, {k}) <= 1 + 1e-12 for k in range(3)),
            iter_random_pure_states(3, 200, seed=4),
        )

    def test_bad_bipartition(self):
        with self.assertRaises(DimensionError):
            concurrence_pure(bell_state(), set())
        with self.assertRaises(DimensionError):
            concurrence_pure(bell_state(), {0, 1})
        with self.assertRaises(DimensionError):
            concurrence_pure(bell_state(), {3})


class ConcurrenceTwoQubitTests(SimpleTestCase):
    def test_example_marginals(self):
        state = _example()
        self.assertAlmostEqual(concurrence_two_qubit(reduced_pair(state, 0, 1)), C_AB, places=10)
        self.assertAlmostEqual(concurrence_two_qubit(reduced_pair(state, 0, 2)), C_AC, places=10)

    def test_separable(self):
        self.assertEqual(concurrence_two_qubit(np.eye(4) / 4), 0.0)

    def test_bell_on_ac(self):
        h = 1 / math.sqrt(2)
        state = acin_state(AcinParams(lambdas=(h, 0, h, 0, 0)))
        self.assertAlmostEqual(concurrence_two_qubit(reduced_pair(state, 0, 2)), 1.0, places=10)

    def test_pure_inputs_match_pure_formula(self):
        check_unittest(
            self,
            lambda s: abs(concurrence_two_qubit(density(s)) - concurrence_pure(s, {0})) <= 1e-9,
            iter_random_pure_states(2, 1000, seed=21),
        )

    def test_spin_flip_spectrum(self):
        check_unittest(
            self,
            lambda s: abs(wootters_spectrum(density(s)).values[0] - concurrence_pure(s, {0}) ** 2) <= 1e-9,
            iter_random_pure_states(2, 1000, seed=22),
        )
        np.testing.assert_allclose(wootters_spectrum(density(bell_state())).values, [1, 0, 0, 0], atol=1e-12)

    def test_spin_flip_spectrum_matches_singular_values(self):
        def ok(seed):
            rho = random_density(2, 4, seed)
            e = np.clip(wootters_spectrum(rho).values, 0, None)
            s = np.sqrt(e)
            return abs(max(0, s[0] - s[1] - s[2] - s[3]) - concurrence_two_qubit(rho)) <= 1e-6

        check_unittest(self, ok, range(50))

    def test_invalid(self):
        with self.assertRaises(InvalidStateError):
            concurrence_two_qubit(np.eye(4) / 2)
        with self.assertRaises(DimensionError):
            concurrence_two_qubit(np.eye(2) / 2)


class AnalyticFunctionTests(SimpleTestCase):
    def test_g2_is_linear(self):
        xs = np.linspace(0, 1, 101)
        np.testing.assert_allclose(g_q(xs, 2), xs / 2, atol=1e-15)
        self.assertAlmostEqual(g_q(80 / 81, 2), 0.493827, places=6)

    def test_g_values(self):
        for q in (0.8, 2, 2.5, 3, 4):
            self.assertEqual(g_q(0, q), 0.0)
        self.assertAlmostEqual(g_q(1, 3), 0.375, places=14)
        self.assertIsInstance(g_q(0.3, 2), float)

    def test_f_values(self):
        self.assertAlmostEqual(f_alpha(C_A_BC, 2), 0.98230, delta=1e-5)
        self.assertAlmostEqual(f_alpha(math.sqrt(60 / 81), ALPHA_MIN), 0.83477, delta=1e-5)
        for a in (ALPHA_MIN, 1.5, 2, 3):
            self.assertAlmostEqual(f_alpha(0, a), 0.0, places=14)
        self.assertAlmostEqual(f_alpha(1, 2), 1.0, places=14)

    def test_domain(self):
        with self.assertRaises(DomainError):
            g_q(1.5, 2)
        with self.assertRaises(DomainError):
            g_q(-0.1, 2)
        with self.assertRaises(DomainError):
            g_q(0.5, 5)
        with self.assertRaises(DomainError):
            f_alpha(1.2, 2)
        with self.assertRaises(DomainError):
            f_alpha(0.5, 0.5)

    def test_monotone_and_convex(self):
        xs = np.arange(0, 1 + 1e-9, 1e-3)
        curves = [g_q(xs, q) for q in (2, 2.5, 3)] + [f_alpha(xs, a) for a in (ALPHA_MIN, 1.5, 2, 3)]
        for ys in curves:
            first = np.diff(ys)
            second = np.diff(ys, 2)
            self.assertGreaterEqual(first.min(), -1e-10)
            self.assertGreaterEqual(second.min(), -1e-8)


class EntanglementTests(SimpleTestCase):
    def test_tsallis_pure(self):
        self.assertAlmostEqual(tsallis_pure(basis_state("000"), {0}, 2), 0.0, places=12)
        self.assertAlmostEqual(tsallis_pure(_example(), {0}, 2), 0.49383, delta=1e-5)
        self.assertAlmostEqual(tsallis_pure(bell_state(), {0}, 2), 0.5, places=12)

    def test_tsallis_two_qubit(self):
        state = _example()
        self.assertAlmostEqual(tsallis_two_qubit(reduced_pair(state, 0, 1), 2), 0.37037, delta=1e-5)
        self.assertAlmostEqual(tsallis_two_qubit(reduced_pair(state, 0, 2), 2), 0.12346, delta=1e-5)
        self.assertEqual(tsallis_two_qubit(np.diag([0.5, 0.2, 0.2, 0.1]), 2), 0.0)

    def test_renyi(self):
        state = _example()
        self.assertAlmostEqual(renyi_pure(basis_state("000"), {0}, 2), 0.0, places=12)
        self.assertAlmostEqual(renyi_pure(state, {0}, 2), 0.98230, delta=1e-5)
        self.assertAlmostEqual(renyi_pure(state, {0}, ALPHA_MIN), 0.99265, delta=1e-5)
        self.assertAlmostEqual(renyi_two_qubit(reduced_pair(state, 0, 1), 2), 0.66742, delta=1e-5)
        self.assertAlmostEqual(renyi_two_qubit(reduced_pair(state, 0, 2), 2), 0.19010, delta=1e-5)
        self.assertAlmostEqual(renyi_two_qubit(reduced_pair(state, 0, 2), ALPHA_MIN), 0.41466, delta=1e-5)

    def test_spectral_matches_analytic(self):
        def ok(s):
            c = concurrence_pure(s, {0})
            return (abs(tsallis_pure(s, {0}, 2) - g_q(c * c, 2)) <= 1e-9
                    and abs(tsallis_pure(s, {0}, 2.7) - g_q(c * c, 2.7)) <= 1e-9
                    and abs(renyi_pure(s, {0}, 2) - f_alpha(c, 2)) <= 1e-9
                    and abs(renyi_pure(s, {0}, 1.5) - f_alpha(c, 1.5)) <= 1e-9)

        check_unittest(self, ok, iter_random_pure_states(3, 1000, seed=5))

    def test_ckw(self):
        def ok(s):
            lhs = concurrence_pure(s, {0}) ** 2
            rhs = concurrence_two_qubit(reduced_pair(s, 0, 1)) ** 2 + concurrence_two_qubit(reduced_pair(s, 0, 2)) ** 2
            return lhs - rhs >= -1e-9

        check_unittest(self, ok, iter_random_pure_states(3, 1000, seed=6))


class ParamTests(SimpleTestCase):
    def test_validation(self):
        with self.assertRaises(ValidationError):
            TsallisParam(q=1)
        with self.assertRaises(ValidationError):
            TsallisParam(q=-2)
        with self.assertRaises(ValidationError):
            RenyiParam(alpha=1)

    def test_gates(self):
        self.assertTrue(TsallisParam(q=4.3).analytic)
        self.assertFalse(TsallisParam(q=4.4).analytic)
        with self.assertRaises(DomainError):
            TsallisParam(q=3.5).require_superadditive()
        self.assertEqual(RenyiParam(alpha=2).regime, RenyiRegime.ALPHA_GE2)
        self.assertEqual(RenyiParam(alpha=ALPHA_MIN).regime, RenyiRegime.ALPHA_WINDOW)
        self.assertEqual(RenyiParam(alpha=1.99).regime, RenyiRegime.ALPHA_WINDOW)
        with self.assertRaises(DomainError):
            RenyiParam(alpha=0.5).regime


class RoofOracleTests(SimpleTestCase):
    def test_pure_input(self):
        for s in iter_random_pure_states(2, 5, seed=8):
            self.assertAlmostEqual(concurrence_roof_oracle(density(s), restarts=10, seed=1),
                                   concurrence_pure(s, {0}), delta=1e-6)

    def test_rank_two_mixtures(self):
        def ok(seed):
            rho = random_density(2, 2, seed)
            closed = concurrence_two_qubit(rho)
            search = roof_search(rho, restarts=30, seed=seed, refine=1)
            return (closed - 1e-6 <= search.value <= search.baseline + 1e-12
                    and abs(search.value - closed) <= 2e-3)

        check_unittest(self, ok, range(100))

    def test_werner_like_mixture(self):
        rho = mixture([0.5, 0.5], [density(bell_state()), np.eye(4) / 4])
        closed = concurrence_two_qubit(rho)
        self.assertAlmostEqual(closed, 0.25, places=12)
        self.assertAlmostEqual(concurrence_roof_oracle(rho, seed=3), closed, delta=2e-3)

    def test_history_monotone(self):
        search = roof_search(random_density(2, 3, seed=9), restarts=20, seed=2, refine=1)
        self.assertTrue(all(b <= a for a, b in zip(search.history, search.history[1:])))
        self.assertEqual(search.history[-1], search.value)
        self.assertLessEqual(search.value, search.baseline)
