# reports/services/evaluate.py
"""
사용자 상태 하나에 대한 monogamy 하한 평가

- LHS: pivot | 나머지 의 순수 상태 얽힘 (스펙트럼 계산)
- pair 값: 2큐비트 marginal 닫힌 식
- N=3 은 compare_bounds, N=4 는 choose_split 으로 (순서, m) 을 고른 뒤 compare_chain
"""
import logging

from bounds.services.kernels import compare_bounds, compare_chain
from bounds.services.ordering import choose_split, ordering_certificate, pair_concurrences
from bounds.services.params import BoundRegime, PowerParam
from measures.services.concurrence import concurrence_two_qubit
from measures.services.entropies import renyi_pure, renyi_two_qubit, tsallis_pure, tsallis_two_qubit
from measures.services.params import RenyiParam, RenyiRegime, TsallisParam
from measures.services.roof import concurrence_roof_oracle
from states.services.errors import DimensionError, DomainError
from states.services.states import PureState, reduced_pair

logger = logging.getLogger(__name__)

MEASURES = ("tsallis", "renyi")


def regime_for(measure: str, index: float) -> BoundRegime:
    if measure == "tsallis":
        TsallisParam(q=index).require_superadditive()
        return BoundRegime.TSALLIS_Q2TO3
    if measure == "renyi":
        if RenyiParam(alpha=index).regime is RenyiRegime.ALPHA_GE2:
            return BoundRegime.RENYI_GE2
        return BoundRegime.RENYI_WINDOW
    raise DomainError(f"measure 는 {MEASURES} 중 하나: {measure}")


def power_param(regime: BoundRegime, exponent: float) -> PowerParam:
    """RenyiWindow 에서 exponent 는 γ, 나머지는 μ (η)"""
    if regime is BoundRegime.RENYI_WINDOW:
        return PowerParam.from_gamma(exponent)
    return PowerParam(mu=exponent)


def measure_values(state: PureState, measure: str, index: float, pivot: int = 0) -> tuple[float, dict[int, float]]:
    """(E(pivot|나머지), {b: E(ρ_{pivot,b})})"""
    regime_for(measure, index)
    rest = [b for b in range(state.n_qubits) if b != pivot]
    if measure == "tsallis":
        lhs = tsallis_pure(state, {pivot}, index)
        pairs = {b: tsallis_two_qubit(reduced_pair(state, pivot, b), index) for b in rest}
    else:
        lhs = renyi_pure(state, {pivot}, index)
        pairs = {b: renyi_two_qubit(reduced_pair(state, pivot, b), index) for b in rest}
    return max(lhs, 0.0), pairs


def evaluate_state(
    state: PureState,
    measure: str,
    index: float,
    exponent: float,
    pivot: int = 0,
    oracle_restarts: int | None = None,
) -> dict:
    n = state.n_qubits
    if n not in (3, 4):
        raise DimensionError(f"evaluate 는 3–4 큐비트만: n={n}")
    if not 0 <= pivot < n:
        raise DimensionError(f"pivot={pivot} 가 0..{n - 1} 밖입니다")
    regime = regime_for(measure, index)
    p = power_param(regime, exponent)

    lhs, pairs = measure_values(state, measure, index, pivot)
    rest = [b for b in range(n) if b != pivot]
    conc = dict(zip(rest, pair_concurrences(state, pivot, rest)))
    # concurrence 내림차순, 동률이면 인덱스 순
    rest_order = sorted(rest, key=lambda b: (-conc[b], b))

    if n == 3:
        split = 1
        status = ordering_certificate(state, pivot, rest_order).overall
        e1, e2 = sorted(pairs.values(), reverse=True)
        report = compare_bounds(lhs, e1, e2, p, regime)
    else:
        order, split, status = choose_split(state, pivot, rest_order)
        rest_order = list(order)
        report = compare_chain(lhs, [pairs[b] for b in rest_order], split, p, regime)

    result = {
        "n_qubits": n,
        "pivot": pivot,
        "measure": measure,
        "index": index,
        "rest_order": rest_order,
        "split": split,
        "ordering": status.value,
        **report.model_dump(mode="json"),
    }
    if oracle_restarts:
        result["oracle"] = {
            str(b): {
                "closed_form": concurrence_two_qubit(reduced_pair(state, pivot, b)),
                "roof": concurrence_roof_oracle(reduced_pair(state, pivot, b), restarts=oracle_restarts),
            }
            for b in rest_order
        }
    logger.info("evaluate n=%d pivot=%d %s(%s) exponent=%s ordering=%s", n, pivot, measure, index, exponent, status.value)
    return result
