# states/services/linalg.py
"""
작은 dense 복소 행렬 연산 (최대 2^8 차원).

- 행렬은 2차원 numpy.complex128 배열 (as_matrix 로 검증)
- 큐비트 0 이 가장 왼쪽 텐서 인자 (|q0 q1 ... q_{n-1}⟩)
- 모든 함수는 입력을 변경하지 않는다
"""
import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy import linalg as sla

from .errors import ConvergenceError, DimensionError, DomainError, InvalidStateError

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-10
RESIDUAL_TOL = 1e-10
NEGATIVE_EIG_TOL = 1e-8
MAX_GENERAL_DIM = 8


@dataclass(frozen=True, eq=False)
class Spectrum:
    """내림차순 실수 고유값"""
    values: np.ndarray

    def __post_init__(self):
        vals = np.sort(np.asarray(self.values, dtype=float).reshape(-1))[::-1].copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values.tolist())

    @property
    def total(self) -> float:
        return float(self.values.sum())

    def is_density(self, tol: float = 1e-12) -> bool:
        return bool(self.values.min() >= -tol and abs(self.total - 1.0) <= 1e-10)


def as_matrix(m, hermitian_tol: float | None = None) -> np.ndarray:
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"2차원 행렬이 아닙니다: shape={arr.shape}")
    if hermitian_tol is not None:
        if arr.shape[0] != arr.shape[1]:
            raise DimensionError(f"정방 행렬이 아닙니다: shape={arr.shape}")
        dev = float(np.max(np.abs(arr - arr.conj().T)))
        if dev > hermitian_tol:
            raise InvalidStateError(f"에르미트가 아닙니다: max|M-M†|={dev:.3e}")
    return arr


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(rho, n_qubits: int, keep: Iterable[int]) -> np.ndarray:
    """
    keep 에 없는 큐비트를 trace out.
    남는 큐비트 순서는 원래 순서(오름차순) 유지.
    """
    rho = as_matrix(rho)
    dim = 2 ** n_qubits
    if n_qubits < 1 or rho.shape != (dim, dim):
        raise DimensionError(f"{n_qubits} 큐비트에 맞지 않는 shape: {rho.shape}")
    kept = sorted(set(int(k) for k in keep))
    if not kept:
        raise DimensionError("keep 이 비어 있습니다")
    if kept[0] < 0 or kept[-1] >= n_qubits:
        raise DimensionError(f"큐비트 인덱스 범위 밖: {kept} (n={n_qubits})")

    traced = [i for i in range(n_qubits) if i not in kept]
    tensor = rho.reshape((2,) * (2 * n_qubits))
    perm = kept + traced + [n_qubits + i for i in kept] + [n_qubits + i for i in traced]
    dk, dt = 2 ** len(kept), 2 ** len(traced)
    tensor = tensor.transpose(perm).reshape(dk, dt, dk, dt)
    return np.trace(tensor, axis1=1, axis2=3)


def hermitian_eigenvalues(h) -> Spectrum:
    h = as_matrix(h, hermitian_tol=HERMITIAN_TOL)
    h = (h + h.conj().T) / 2
    w, v = sla.eigh(h)
    residuals = np.linalg.norm(h @ v - v * w, axis=0)
    scale = max(1.0, float(np.linalg.norm(h, 2)))
    if residuals.size and residuals.max() > RESIDUAL_TOL * scale:
        raise ConvergenceError("eigh 잔차가 허용치를 넘었습니다", residuals)
    logger.debug("eigh dim=%d max_residual=%.2e", h.shape[0], residuals.max() if residuals.size else 0.0)
    return Spectrum(w)


def general_eigenvalues(m) -> np.ndarray:
    """
    비-에르미트 행렬의 전체 고유값 (Hessenberg 축약 → complex Schur).
    반환: 실수부 내림차순 complex 배열
    """
    m = as_matrix(m)
    dim = m.shape[0]
    if m.shape[1] != dim:
        raise DimensionError(f"정방 행렬이 아닙니다: shape={m.shape}")
    if dim > MAX_GENERAL_DIM:
        raise DimensionError(f"general_eigenvalues 는 {MAX_GENERAL_DIM} 차원까지: dim={dim}")

    try:
        hess = sla.hessenberg(m)
        t, _ = sla.schur(hess, output="complex")
    except (sla.LinAlgError, ValueError) as e:
        raise ConvergenceError(f"Schur 분해 실패: {e}") from e

    eigs = np.diag(t).copy()
    eye = np.eye(dim, dtype=np.complex128)
    residuals = np.array([np.linalg.svd(m - lam * eye, compute_uv=False)[-1] for lam in eigs])
    scale = max(1.0, float(np.linalg.norm(m, 2)))
    if residuals.max() > RESIDUAL_TOL * scale:
        raise ConvergenceError("고유값 잔차가 허용치를 넘었습니다", residuals)
    logger.debug("schur dim=%d max_residual=%.2e", dim, residuals.max())

    order = np.lexsort((-eigs.imag, -eigs.real))
    return eigs[order]


def spectral_power(rho, p: float) -> np.ndarray:
    """ρ^p = V diag(λ^p) V† (음의 roundoff 고유값은 0 으로)"""
    if p <= 0:
        raise DomainError(f"p 는 양수여야 합니다: {p}")
    rho = as_matrix(rho, hermitian_tol=HERMITIAN_TOL)
    w, v = sla.eigh((rho + rho.conj().T) / 2)
    if w.min() < -NEGATIVE_EIG_TOL:
        raise InvalidStateError(f"음의 고유값: {w.min():.3e}")
    w = np.clip(w, 0.0, None)
    return (v * w ** p) @ v.conj().T


def trace_power(rho, p: float) -> float:
    """tr ρ^p = Σ λ_i^p (λ_i 는 0 에서 clamp)"""
    if p <= 0:
        raise DomainError(f"p 는 양수여야 합니다: {p}")
    spec = hermitian_eigenvalues(rho)
    if spec.values[-1] < -NEGATIVE_EIG_TOL:
        raise InvalidStateError(f"음의 고유값: {spec.values[-1]:.3e}")
    vals = np.clip(spec.values, 0.0, None)
    return float(np.sum(vals[vals > 0] ** p))
