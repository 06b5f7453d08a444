# states/services/states.py
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import DimensionError, InvalidStateError
from .linalg import partial_trace

logger = logging.getLogger(__name__)

NORM_TOL = 1e-10
MAX_RANDOM_QUBITS = 4


@dataclass(frozen=True, eq=False)
class PureState:
    """정규화된 n 큐비트 상태벡터 (읽기 전용 복사본을 보관)"""
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if self.n_qubits < 1:
            raise DimensionError(f"n_qubits 는 1 이상: {self.n_qubits}")
        if amps.size != 2 ** self.n_qubits:
            raise DimensionError(f"진폭 개수 {amps.size} ≠ 2^{self.n_qubits}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"정규화되지 않은 상태: Σ|a|²={norm:.12f}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits

    @classmethod
    def from_vector(cls, vec, normalize: bool = False) -> "PureState":
        v = np.asarray(vec, dtype=np.complex128).reshape(-1)
        n = v.size.bit_length() - 1
        if v.size < 2 or 2 ** n != v.size:
            raise DimensionError(f"길이가 2의 거듭제곱이 아닙니다: {v.size}")
        if normalize:
            norm = np.linalg.norm(v)
            if norm == 0:
                raise InvalidStateError("영벡터는 정규화할 수 없습니다")
            v = v / norm
        return cls(n, v)


class AcinParams(BaseModel):
    """3큐비트 표준형 λ0..λ4, φ. JSON 에서는 "lambda" 키"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lambdas: tuple[float, float, float, float, float] = Field(alias="lambda")
    phi: float = Field(0.0, ge=0.0, le=math.pi)

    @field_validator("lambdas")
    @classmethod
    def _non_negative(cls, v):
        if any(x < 0 for x in v):
            raise ValueError(f"λ_i 는 0 이상이어야 합니다: {v}")
        return v

    @model_validator(mode="after")
    def _normalized(self):
        total = sum(x * x for x in self.lambdas)
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"Σλ_i² = {total:.12f} ≠ 1")
        return self


def example_params() -> AcinParams:
    """λ0=√5/3, λ2=√3/3, λ3=1/3, λ1=λ4=0, φ=0"""
    return AcinParams(lambdas=(math.sqrt(5) / 3, 0.0, math.sqrt(3) / 3, 1 / 3, 0.0), phi=0.0)


def acin_state(p: AcinParams) -> PureState:
    l0, l1, l2, l3, l4 = p.lambdas
    amps = np.zeros(8, dtype=np.complex128)
    amps[0] = l0                       # |000⟩
    amps[4] = l1 * np.exp(1j * p.phi)  # |100⟩
    amps[5] = l2                       # |101⟩
    amps[6] = l3                       # |110⟩
    amps[7] = l4                       # |111⟩
    return PureState(3, amps)


def density(state: PureState) -> np.ndarray:
    a = state.amplitudes
    return np.outer(a, a.conj())


def reduced_pair(state: PureState, a: int, b: int) -> np.ndarray:
    """순수 상태의 두 큐비트 marginal ρ_ab (작은 인덱스가 왼쪽)"""
    if a == b:
        raise DimensionError(f"서로 다른 큐비트여야 합니다: {a}, {b}")
    return partial_trace(density(state), state.n_qubits, {a, b})


def basis_state(bits: str) -> PureState:
    """'010' → |010⟩"""
    if not bits or set(bits) - {"0", "1"}:
        raise DimensionError(f"비트 문자열이 아닙니다: {bits!r}")
    amps = np.zeros(2 ** len(bits), dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return PureState(len(bits), amps)


def bell_state() -> PureState:
    return PureState.from_vector([1, 0, 0, 1], normalize=True)


def ghz_state(n: int) -> PureState:
    if n not in (3, 4):
        raise DimensionError(f"GHZ 는 3, 4 큐비트만: {n}")
    amps = np.zeros(2 ** n)
    amps[0] = amps[-1] = 1.0
    return PureState.from_vector(amps, normalize=True)


def w_state(n: int) -> PureState:
    if n not in (3, 4):
        raise DimensionError(f"W 는 3, 4 큐비트만: {n}")
    amps = np.zeros(2 ** n)
    for k in range(n):
        amps[1 << k] = 1.0
    return PureState.from_vector(amps, normalize=True)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Box–Muller: 균등 난수 한 쌍 (u1, u2) 가 복소 가우시안 하나 (실부 cos, 허부 sin)"""
    u1 = 1.0 - rng.random(shape)   # (0, 1]
    u2 = rng.random(shape)
    r = np.sqrt(-2.0 * np.log(u1))
    return r * np.cos(2 * np.pi * u2) + 1j * r * np.sin(2 * np.pi * u2)


def _check_qubits(n_qubits: int):
    if not 1 <= n_qubits <= MAX_RANDOM_QUBITS:
        raise DimensionError(f"1 ≤ n ≤ {MAX_RANDOM_QUBITS} 이어야 합니다: {n_qubits}")


def random_pure_state(n_qubits: int, seed: int) -> PureState:
    """Haar 분포 순수 상태 (독립 복소 가우시안 벡터를 정규화)"""
    _check_qubits(n_qubits)
    return next(iter_random_pure_states(n_qubits, 1, seed))


def iter_random_pure_states(n_qubits: int, count: int, seed: int) -> Iterator[PureState]:
    """같은 PCG64 스트림에서 count 개를 차례로 뽑는다"""
    _check_qubits(n_qubits)
    rng = make_rng(seed)
    dim = 2 ** n_qubits
    for _ in range(count):
        v = _complex_gaussian(rng, dim)
        yield PureState(n_qubits, v / np.linalg.norm(v))


def random_density(n_qubits: int, rank: int, seed: int) -> np.ndarray:
    """Ginibre 혼합 상태 G G† / tr, G 는 dim × rank"""
    _check_qubits(n_qubits)
    dim = 2 ** n_qubits
    if not 1 <= rank <= dim:
        raise DimensionError(f"rank 는 1..{dim}: {rank}")
    g = _complex_gaussian(make_rng(seed), (dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def mixture(weights: Iterable[float], rhos: Iterable[np.ndarray]) -> np.ndarray:
    """Σ p_i ρ_i (가중치 합이 1 이 아니면 InvalidStateError)"""
    weights = list(weights)
    rhos = [np.asarray(r, dtype=np.complex128) for r in rhos]
    if len(weights) != len(rhos) or not rhos:
        raise DimensionError("weights/rhos 길이가 맞지 않습니다")
    if min(weights) < 0 or abs(sum(weights) - 1.0) > NORM_TOL:
        raise InvalidStateError(f"확률 가중치가 아닙니다: {weights}")
    return sum(w * r for w, r in zip(weights, rhos))
