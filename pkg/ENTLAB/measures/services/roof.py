# measures/services/roof.py
"""
2큐비트 convex-roof concurrence 상한 탐색 (닫힌 식 검증용 oracle)

분해 {√p_j |φ_j⟩} 는 고유분해 ρ = Σ λ_i |e_i⟩⟨e_i| 를 K × r isometry U 로 섞어서 만든다.
    √p_j |φ_j⟩ = Σ_i U_ji √λ_i |e_i⟩
이때 p_j C(φ_j) = |(U τ Uᵀ)_jj| (τ = Wᵀ(σy⊗σy)W) 이므로
평균 concurrence = Σ_j |(U τ Uᵀ)_jj|.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla
from scipy.optimize import minimize
from scipy.stats import unitary_group

from states.services.states import make_rng

from .concurrence import spin_flip_matrix

logger = logging.getLogger(__name__)

MAX_DECOMPOSITION = 4
POLISH_STEPS = 300


@dataclass(frozen=True)
class RoofSearch:
    value: float
    baseline: float
    size: int
    history: tuple[float, ...]


def decomposition_average(tau: np.ndarray, mixing: np.ndarray) -> float:
    diag = np.einsum("ji,ik,jk->j", mixing, tau, mixing)
    return float(np.abs(diag).sum())


def _isometry(params: np.ndarray, k: int, r: int) -> np.ndarray:
    half = k * r
    x = (params[:half] + 1j * params[half:]).reshape(k, r)
    q, _ = np.linalg.qr(x)
    return q


def _refine(tau: np.ndarray, u0: np.ndarray, rng: np.random.Generator) -> tuple[float, np.ndarray]:
    k, r = u0.shape

    def objective(params):
        return decomposition_average(tau, _isometry(params, k, r))

    x0 = np.concatenate([u0.real.ravel(), u0.imag.ravel()])
    res = minimize(objective, x0, method="Powell", options={"xtol": 1e-9, "ftol": 1e-12, "maxfev": 400 * x0.size})
    u = _isometry(res.x, k, r)
    value = decomposition_average(tau, u)

    # 랜덤 방향 하강: exp(εA) U, A 는 반-에르미트
    step, fails = 0.05, 0
    for _ in range(POLISH_STEPS):
        g = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        cand = sla.expm(step * (g - g.conj().T) / 2) @ u
        v = decomposition_average(tau, cand)
        if v < value:
            u, value, fails = cand, v, 0
        else:
            fails += 1
            if fails >= 2 * k:
                step, fails = step / 2, 0
                if step < 1e-7:
                    break
    return value, u


def roof_search(rho, restarts: int = 200, seed: int = 0, refine: int = 2) -> RoofSearch:
    tau = spin_flip_matrix(rho)
    r = tau.shape[0]
    baseline = decomposition_average(tau, np.eye(r))
    best, best_size = baseline, r
    history = [best]

    if r == 1:
        # 모든 분해가 같은 값
        return RoofSearch(best, baseline, 1, tuple(history))

    rng = make_rng(seed)
    for k in range(r, MAX_DECOMPOSITION + 1):
        candidates = []
        for _ in range(restarts):
            u = unitary_group.rvs(k, random_state=rng)[:, :r]
            score = decomposition_average(tau, u)
            candidates.append((score, u))
            if score < best:
                best, best_size = score, k
            history.append(best)

        candidates.sort(key=lambda c: c[0])
        for _, u in candidates[:refine]:
            value, _ = _refine(tau, u, rng)
            if value < best:
                best, best_size = value, k
            history.append(best)
        logger.debug("roof K=%d best=%.10f", k, best)

    return RoofSearch(best, baseline, best_size, tuple(history))


def concurrence_roof_oracle(rho, restarts: int = 200, seed: int = 0) -> float:
    return roof_search(rho, restarts=restarts, seed=seed).value
