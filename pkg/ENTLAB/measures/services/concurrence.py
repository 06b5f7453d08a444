# measures/services/concurrence.py
"""
Concurrence

- 순수 상태: C = √(2(1 - tr ρ_A²)), 임의의 bipartition
- 2큐비트 혼합 상태: spin-flip 닫힌 식
  ρ = W W† 일 때 τ = Wᵀ(σy⊗σy)W 의 특이값 s_i 가 ρρ̃ 고유값의 제곱근과 같다.
  C = max(0, s1 - s2 - s3 - s4)
"""
import logging
import math
from typing import Iterable

import numpy as np
from scipy import linalg as sla

from states.services.errors import DimensionError, InvalidStateError
from states.services.linalg import Spectrum, as_matrix, general_eigenvalues, kron, partial_trace
from states.services.states import PureState, density

logger = logging.getLogger(__name__)

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
SIGMA_YY = kron(SIGMA_Y, SIGMA_Y).real
RANK_CUTOFF = 1e-13
TRACE_TOL = 1e-10
NEGATIVE_EIG_TOL = 1e-8


def bipartition(n_qubits: int, side_a: Iterable[int]) -> list[int]:
    side = sorted(set(int(i) for i in side_a))
    if not side or len(side) >= n_qubits:
        raise DimensionError(f"진부분집합이 아닙니다: {side} (n={n_qubits})")
    if side[0] < 0 or side[-1] >= n_qubits:
        raise DimensionError(f"큐비트 인덱스 범위 밖: {side} (n={n_qubits})")
    return side


def concurrence_pure(state: PureState, side_a: Iterable[int]) -> float:
    side = bipartition(state.n_qubits, side_a)
    rho_a = partial_trace(density(state), state.n_qubits, side)
    purity = float(np.vdot(rho_a, rho_a).real)
    return math.sqrt(max(0.0, 2.0 * (1.0 - purity)))


def two_qubit_factor(rho) -> np.ndarray:
    """
    4×4 밀도 행렬 검증 후 ρ = W W† 인 W (4 × rank) 반환.
    고유값 ≤ RANK_CUTOFF 인 방향은 버린다.
    """
    rho = as_matrix(rho, hermitian_tol=1e-10)
    if rho.shape != (4, 4):
        raise DimensionError(f"2큐비트 밀도 행렬이 아닙니다: shape={rho.shape}")
    w, v = sla.eigh((rho + rho.conj().T) / 2)
    if w.min() < -NEGATIVE_EIG_TOL:
        raise InvalidStateError(f"음의 고유값: {w.min():.3e}")
    if abs(w.sum() - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"trace ≠ 1: {w.sum():.12f}")
    keep = w > RANK_CUTOFF
    return v[:, keep] * np.sqrt(w[keep])


def spin_flip_matrix(rho) -> np.ndarray:
    """τ = Wᵀ(σy⊗σy)W (rank × rank 대칭 행렬)"""
    factor = two_qubit_factor(rho)
    return factor.T @ SIGMA_YY @ factor


def concurrence_two_qubit(rho) -> float:
    s = np.zeros(4)
    sv = np.linalg.svd(spin_flip_matrix(rho), compute_uv=False)
    s[: sv.size] = np.sort(sv)[::-1]
    return float(min(1.0, max(0.0, s[0] - s[1] - s[2] - s[3])))


def wootters_spectrum(rho) -> Spectrum:
    """ρρ̃ 의 고유값 (ρ̃ = (σy⊗σy) ρ* (σy⊗σy)), 실수부 내림차순"""
    rho = as_matrix(rho, hermitian_tol=1e-10)
    if rho.shape != (4, 4):
        raise DimensionError(f"2큐비트 밀도 행렬이 아닙니다: shape={rho.shape}")
    rho_tilde = SIGMA_YY @ rho.conj() @ SIGMA_YY
    eigs = general_eigenvalues(rho @ rho_tilde)
    imag = float(np.max(np.abs(eigs.imag)))
    if imag > 1e-10:
        logger.warning("ρρ̃ 고유값 허수부 %.3e", imag)
    return Spectrum(eigs.real)
