# bounds/services/ordering.py
"""
concurrence 순서 가정 확인 (pivot A, 나머지 순서 B_1..B_{N-1})

위치 i 마다 C(ρ_{AB_i}) 와 C(ρ_{A|B_{i+1}..B_{N-1}}) 를 비교한다.
  - 나머지가 큐비트 하나면 2큐비트 닫힌 식으로 정확히 비교
  - 아니면 구간 [√Σ_j C²(ρ_{AB_j}), 고유분해 평균 concurrence] 로 bracket
"""
import itertools
import logging
import math
from enum import Enum
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import linalg as sla

from measures.services.concurrence import concurrence_pure, concurrence_two_qubit
from states.services.errors import DimensionError, DomainError
from states.services.linalg import partial_trace
from states.services.states import PureState, density, reduced_pair

logger = logging.getLogger(__name__)

MAX_QUBITS = 4
TOL = 1e-10
RANK_CUTOFF = 1e-13


class OrderingStatus(str, Enum):
    CERTIFIED = "certified"
    VIOLATED = "violated"
    UNDETERMINED = "undetermined"


class Direction(str, Enum):
    GE = "ge"   # C(AB_i) ≥ C(A|rest)
    LE = "le"   # C(AB_i) ≤ C(A|rest)


SEVERITY = {OrderingStatus.CERTIFIED: 0, OrderingStatus.UNDETERMINED: 1, OrderingStatus.VIOLATED: 2}


class PositionCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    position: int
    direction: Direction
    pair: float
    lower: float
    upper: float
    status: OrderingStatus


class OrderingCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    pivot: int
    rest_order: tuple[int, ...]
    positions: tuple[PositionCheck, ...]

    @property
    def statuses(self) -> tuple[OrderingStatus, ...]:
        return tuple(p.status for p in self.positions)

    @property
    def overall(self) -> OrderingStatus:
        return worst(self.statuses)


def worst(statuses: Sequence[OrderingStatus]) -> OrderingStatus:
    if not statuses:
        return OrderingStatus.CERTIFIED
    return max(statuses, key=lambda s: SEVERITY[s])


def _validate(state: PureState, pivot: int, rest_order: Sequence[int]) -> list[int]:
    n = state.n_qubits
    if n > MAX_QUBITS:
        raise DimensionError(f"ordering 확인은 {MAX_QUBITS} 큐비트까지: n={n}")
    rest = [int(b) for b in rest_order]
    if n < 3 or sorted(rest + [pivot]) != list(range(n)):
        raise DimensionError(f"pivot={pivot}, rest={rest} 가 {n} 큐비트의 분할이 아닙니다")
    return rest


def _roof_upper(state: PureState, pivot: int, rest: Sequence[int]) -> float:
    """ρ_{A|rest} 의 고유분해 평균 concurrence (convex roof 의 상한)"""
    keep = sorted([pivot, *rest])
    rho = partial_trace(density(state), state.n_qubits, keep)
    side = keep.index(pivot)
    w, v = sla.eigh((rho + rho.conj().T) / 2)
    total = 0.0
    for lam, vec in zip(w, v.T):
        if lam <= RANK_CUTOFF:
            continue
        total += lam * concurrence_pure(PureState.from_vector(vec, normalize=True), {side})
    return total


def _classify(pair: float, lower: float, upper: float, direction: Direction) -> OrderingStatus:
    if direction is Direction.GE:
        if pair >= upper - TOL:
            return OrderingStatus.CERTIFIED
        if pair < lower - TOL:
            return OrderingStatus.VIOLATED
        return OrderingStatus.UNDETERMINED
    if pair <= lower + TOL:
        return OrderingStatus.CERTIFIED
    if pair > upper + TOL:
        return OrderingStatus.VIOLATED
    return OrderingStatus.UNDETERMINED


def ordering_certificate(
    state: PureState,
    pivot: int,
    rest_order: Sequence[int],
    directions: Sequence[Direction | str] | None = None,
) -> OrderingCertificate:
    """
    위치 i = 1..N-2 의 판정. directions 를 안 주면 전부 "ge" (내림차순 가정).
    """
    rest = _validate(state, pivot, rest_order)
    n_pos = len(rest) - 1
    dirs = [Direction(d) for d in directions] if directions is not None else [Direction.GE] * n_pos
    if len(dirs) != n_pos:
        raise DomainError(f"directions 길이 {len(dirs)} ≠ {n_pos}")

    pair_c = {b: concurrence_two_qubit(reduced_pair(state, pivot, b)) for b in rest}
    checks = []
    for i in range(n_pos):
        tail = rest[i + 1:]
        if len(tail) == 1:
            lower = upper = pair_c[tail[0]]
        else:
            lower = math.sqrt(sum(pair_c[b] ** 2 for b in tail))
            upper = _roof_upper(state, pivot, tail)
        status = _classify(pair_c[rest[i]], lower, upper, dirs[i])
        checks.append(PositionCheck(
            position=i + 1, direction=dirs[i], pair=pair_c[rest[i]], lower=lower, upper=upper, status=status,
        ))
    cert = OrderingCertificate(pivot=pivot, rest_order=tuple(rest), positions=tuple(checks))
    logger.debug("ordering pivot=%d rest=%s statuses=%s", pivot, rest, [s.value for s in cert.statuses])
    return cert


def choose_split(state: PureState, pivot: int, rest_order: Sequence[int]) -> tuple[tuple[int, ...], int, OrderingStatus]:
    """
    prefix 1..m 은 "ge", suffix m+1..N-2 는 "le" 로 인증되는 (순서, m) 중 m 이 가장 큰 것.
    같은 m 이면 주어진 순서를 먼저, 그 다음 나머지 순열을 사전식으로 본다.
    없으면 (주어진 순서, N-2, 내림차순 가정의 worst status).
    """
    rest = _validate(state, pivot, rest_order)
    n_pos = len(rest) - 1
    orders = [tuple(rest)] + [o for o in itertools.permutations(sorted(rest)) if o != tuple(rest)]
    for m in range(n_pos, -1, -1):
        dirs = [Direction.GE] * m + [Direction.LE] * (n_pos - m)
        for order in orders:
            if ordering_certificate(state, pivot, order, dirs).overall is OrderingStatus.CERTIFIED:
                return order, m, OrderingStatus.CERTIFIED
    return tuple(rest), n_pos, ordering_certificate(state, pivot, rest).overall


def pair_concurrences(state: PureState, pivot: int, rest_order: Sequence[int]) -> np.ndarray:
    rest = _validate(state, pivot, rest_order)
    return np.array([concurrence_two_qubit(reduced_pair(state, pivot, b)) for b in rest])
