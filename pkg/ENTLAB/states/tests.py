import math

import numpy as np
from django.test import SimpleTestCase
from pydantic import ValidationError

from states.services.errors import ConvergenceError, DimensionError, DomainError, InvalidStateError
from states.services.io import StateFile, dump_state, parse_state
from states.services.linalg import (
    general_eigenvalues,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    spectral_power,
    trace_power,
)
from states.services.states import (
    AcinParams,
    PureState,
    _complex_gaussian,
    acin_state,
    basis_state,
    bell_state,
    density,
    example_params,
    iter_random_pure_states,
    make_rng,
    random_density,
    random_pure_state,
    w_state,
)
from states.testing import check_unittest

SY = np.array([[0, -1j], [1j, 0]])


class KronTests(SimpleTestCase):
    def test_identity(self):
        np.testing.assert_allclose(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_basis_projectors(self):
        np.testing.assert_allclose(kron(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))

    def test_spin_flip_is_involution(self):
        yy = kron(SY, SY)
        m = random_density(2, 4, seed=3)
        np.testing.assert_allclose(yy @ (yy @ m @ yy) @ yy, m, atol=1e-14)


class PartialTraceTests(SimpleTestCase):
    def test_product_state(self):
        rho = density(basis_state("00"))
        np.testing.assert_allclose(partial_trace(rho, 2, {0}), np.diag([1, 0]))

    def test_bell_marginal_is_maximally_mixed(self):
        np.testing.assert_allclose(partial_trace(density(bell_state()), 2, {1}), np.eye(2) / 2, atol=1e-15)

    def test_kept_order_follows_qubit_order(self):
        # |0⟩⊗|1⟩⊗|0⟩ 에서 {2, 0} 을 남기면 |00⟩
        rho = partial_trace(density(basis_state("010")), 3, [2, 0])
        np.testing.assert_allclose(rho, np.diag([1, 0, 0, 0]))

    def test_trace_and_positivity_preserved(self):
        def ok(seed):
            rho = random_density(3, 1 + seed % 8, seed)
            for keep in ({0}, {1, 2}, {0, 2}):
                red = partial_trace(rho, 3, keep)
                if abs(np.trace(red) - 1) > 1e-12:
                    return False
                if np.linalg.eigvalsh(red).min() < -1e-12:
                    return False
            return True

        check_unittest(self, ok, range(50))

    def test_errors(self):
        with self.assertRaises(DimensionError):
            partial_trace(np.eye(4), 3, {0})
        with self.assertRaises(DimensionError):
            partial_trace(np.eye(4) / 4, 2, set())
        with self.assertRaises(DimensionError):
            partial_trace(np.eye(4) / 4, 2, {2})


class EigenTests(SimpleTestCase):
    def test_diagonal(self):
        np.testing.assert_allclose(list(hermitian_eigenvalues(np.diag([0.3, 0.7]))), [0.7, 0.3], atol=1e-15)
        np.testing.assert_allclose(hermitian_eigenvalues(np.eye(2) / 2).values, [0.5, 0.5])

    def test_example_marginal_closed_form(self):
        rho_a = partial_trace(density(acin_state(example_params())), 3, {0})
        spec = hermitian_eigenvalues(rho_a)
        root = math.sqrt(1 - 80 / 81)
        np.testing.assert_allclose(spec.values, [(1 + root) / 2, (1 - root) / 2], atol=1e-12)
        self.assertTrue(spec.is_density())

    def test_sum_equals_trace(self):
        def ok(seed):
            h = random_density(2, 3, seed) - 0.1 * np.eye(4)
            return abs(hermitian_eigenvalues(h).total - np.trace(h).real) <= 1e-10

        check_unittest(self, ok, range(30))

    def test_non_hermitian_rejected(self):
        with self.assertRaises(InvalidStateError):
            hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))

    def test_general_diagonal(self):
        np.testing.assert_allclose(general_eigenvalues(np.diag([0, 1, 4, 0])), [4, 1, 0, 0], atol=1e-14)

    def test_general_agrees_with_hermitian(self):
        def ok(seed):
            rho = random_density(2, 4, seed)
            gen = general_eigenvalues(rho)
            return np.max(np.abs(gen.imag)) <= 1e-9 and np.allclose(
                gen.real, hermitian_eigenvalues(rho).values, atol=1e-9
            )

        check_unittest(self, ok, range(30))

    def test_general_dimension_cap(self):
        with self.assertRaises(DimensionError):
            general_eigenvalues(np.eye(16))

    def test_convergence_error_carries_residuals(self):
        err = ConvergenceError("x", [1e-3, 2e-3])
        self.assertEqual(err.residuals, (1e-3, 2e-3))
        self.assertIsInstance(err, ValueError)


class TracePowerTests(SimpleTestCase):
    def test_values(self):
        self.assertAlmostEqual(trace_power(np.eye(2) / 2, 2), 0.5, places=14)
        proj = density(random_pure_state(2, seed=1))
        for q in (0.5, 0.8229, 2, 3.3):
            self.assertAlmostEqual(trace_power(proj, q), 1.0, places=10)

    def test_example_purity(self):
        rho_a = partial_trace(density(acin_state(example_params())), 3, {0})
        self.assertAlmostEqual(trace_power(rho_a, 2), 1 - 40 / 81, places=12)

    def test_invalid(self):
        with self.assertRaises(InvalidStateError):
            trace_power(np.diag([1.1, -0.1]), 2)
        with self.assertRaises(DomainError):
            trace_power(np.eye(2) / 2, 0)

    def test_spectral_power(self):
        rho = random_density(2, 2, seed=5)
        np.testing.assert_allclose(spectral_power(rho, 1), rho, atol=1e-12)
        half = spectral_power(rho, 0.5)
        np.testing.assert_allclose(half @ half, rho, atol=1e-12)


class StateTests(SimpleTestCase):
    def test_acin_product(self):
        state = acin_state(AcinParams(lambdas=(1, 0, 0, 0, 0)))
        np.testing.assert_allclose(state.amplitudes, basis_state("000").amplitudes)

    def test_acin_layout(self):
        s = 1 / math.sqrt(5)
        state = acin_state(AcinParams(lambdas=(s, s, s, s, s), phi=math.pi / 2))
        self.assertAlmostEqual(state.amplitudes[4], 1j * s)
        self.assertEqual(np.count_nonzero(np.abs(state.amplitudes) > 0), 5)
        for idx in (1, 2, 3):
            self.assertEqual(state.amplitudes[idx], 0)

    def test_acin_concurrence_identity(self):
        # λ1 = 0 이면 2(1 - tr ρ_A²) = 4λ0²(λ2²+λ3²+λ4²)
        def ok(seed):
            rng = np.random.default_rng(seed)
            lam = np.abs(rng.standard_normal(5))
            lam[1] = 0
            lam /= np.linalg.norm(lam)
            state = acin_state(AcinParams(lambdas=tuple(lam), phi=rng.uniform(0, math.pi)))
            rho_a = partial_trace(density(state), 3, {0})
            lhs = 2 * (1 - trace_power(rho_a, 2))
            rhs = 4 * lam[0] ** 2 * (lam[2] ** 2 + lam[3] ** 2 + lam[4] ** 2)
            return abs(lhs - rhs) <= 1e-12

        check_unittest(self, ok, range(40))

    def test_example_purity_gap(self):
        rho_a = partial_trace(density(acin_state(example_params())), 3, {0})
        self.assertAlmostEqual(2 * (1 - trace_power(rho_a, 2)), 80 / 81, places=12)

    def test_acin_bell_on_ac(self):
        h = 1 / math.sqrt(2)
        rho_ac = partial_trace(density(acin_state(AcinParams(lambdas=(h, 0, h, 0, 0)))), 3, {0, 2})
        np.testing.assert_allclose(rho_ac, density(bell_state()), atol=1e-15)

    def test_acin_params_validation(self):
        with self.assertRaises(ValidationError):
            AcinParams(lambdas=(1, 1, 0, 0, 0))
        with self.assertRaises(ValidationError):
            AcinParams(lambdas=(1, 0, 0, 0, 0), phi=4.0)
        with self.assertRaises(ValidationError):
            AcinParams(lambdas=(-1, 0, 0, 0, 0))
        p = AcinParams.model_validate_json('{"lambda": [0.6, 0, 0.8, 0, 0], "phi": 0.5}')
        self.assertEqual(p.lambdas[2], 0.8)

    def test_density(self):
        np.testing.assert_allclose(density(basis_state("0")), np.diag([1, 0]))
        np.testing.assert_allclose(density(bell_state()), np.array(
            [[0.5, 0, 0, 0.5], [0, 0, 0, 0], [0, 0, 0, 0], [0.5, 0, 0, 0.5]]), atol=1e-15)
        rho = density(acin_state(example_params()))
        np.testing.assert_allclose(rho @ rho, rho, atol=1e-10)
        self.assertAlmostEqual(trace_power(rho, 2), 1.0, places=10)

    def test_pure_state_validation(self):
        with self.assertRaises(InvalidStateError):
            PureState(1, [1, 1])
        with self.assertRaises(DimensionError):
            PureState(2, [1, 0])
        state = PureState.from_vector([1, 1j], normalize=True)
        self.assertEqual(state.n_qubits, 1)
        with self.assertRaises(ValueError):
            state.amplitudes[0] = 0

    def test_w_state_amplitudes(self):
        w = w_state(3)
        np.testing.assert_allclose(np.abs(w.amplitudes[[1, 2, 4]]), [1 / math.sqrt(3)] * 3)


class RandomStateTests(SimpleTestCase):
    def test_deterministic(self):
        a = random_pure_state(3, seed=42)
        b = random_pure_state(3, seed=42)
        np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
        self.assertFalse(np.array_equal(a.amplitudes, random_pure_state(3, seed=43).amplitudes))

    def test_box_muller_stream(self):
        # PCG64 균등 난수만으로 다시 만들 수 있어야 한다
        rng = make_rng(9)
        u1 = 1.0 - rng.random(4)
        u2 = rng.random(4)
        r = np.sqrt(-2.0 * np.log(u1))
        v = r * np.exp(2j * np.pi * u2)
        np.testing.assert_allclose(random_pure_state(2, seed=9).amplitudes, v / np.linalg.norm(v), atol=1e-14)

    def test_gaussian_moments(self):
        z = _complex_gaussian(make_rng(3), 50_000)
        for part in (z.real, z.imag):
            self.assertAlmostEqual(part.mean(), 0.0, delta=0.02)
            self.assertAlmostEqual(part.var(), 1.0, delta=0.03)
        self.assertAlmostEqual(np.mean(z.real * z.imag), 0.0, delta=0.02)

    def test_norms(self):
        check_unittest(
            self,
            lambda s: abs(np.linalg.norm(s.amplitudes) - 1) <= 1e-12,
            iter_random_pure_states(4, 200, seed=0),
        )

    def test_haar_purity_average(self):
        # 2큐비트 Haar 상태의 단일 큐비트 marginal 평균 순도 = (2+2)/(4+1)
        purities = [
            trace_power(partial_trace(density(s), 2, {0}), 2)
            for s in iter_random_pure_states(2, 10_000, seed=11)
        ]
        self.assertAlmostEqual(np.mean(purities) / 0.8, 1.0, delta=0.05)

    def test_qubit_range(self):
        with self.assertRaises(DimensionError):
            random_pure_state(5, seed=0)
        with self.assertRaises(DimensionError):
            random_density(2, 5, seed=0)


class StateFileTests(SimpleTestCase):
    def test_parse(self):
        state = parse_state('{"n_qubits": 1, "amplitudes": [[0.6, 0], [0, 0.8]]}')
        self.assertAlmostEqual(state.amplitudes[1], 0.8j)
        again = parse_state(dump_state(state))
        np.testing.assert_array_equal(again.amplitudes, state.amplitudes)

    def test_rejects(self):
        with self.assertRaises(InvalidStateError):
            parse_state({"n_qubits": 1, "amplitudes": [[1, 0], [1, 0]]})
        with self.assertRaises(ValidationError):
            parse_state('{"n_qubits": 2, "amplitudes": [[1, 0]]}')
        with self.assertRaises(ValidationError):
            parse_state("{not json")
        with self.assertRaises(ValidationError):
            StateFile(n_qubits=0, amplitudes=[])
