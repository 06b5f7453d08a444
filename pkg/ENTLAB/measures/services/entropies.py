# measures/services/entropies.py
"""
Tsallis-q / Rényi-α 얽힘

g_q(x)  = [1 - ((1+√(1-x))/2)^q - ((1-√(1-x))/2)^q] / (q-1),  x = C²
f_α(x)  = log2[((1-√(1-x²))/2)^α + ((1+√(1-x²))/2)^α] / (1-α),  x = C

스칼라를 넣으면 float, 배열을 넣으면 ndarray 를 돌려준다.
"""
import logging
import math
from typing import Iterable

import numpy as np

from states.services.errors import DomainError
from states.services.linalg import partial_trace, trace_power
from states.services.states import PureState, density

from .concurrence import bipartition, concurrence_two_qubit
from .params import RenyiParam, TsallisParam, as_renyi, as_tsallis

logger = logging.getLogger(__name__)

UNIT_SLACK = 1e-12


def _unit_interval(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -UNIT_SLACK) or np.any(arr > 1 + UNIT_SLACK) or np.any(np.isnan(arr)):
        raise DomainError(f"x 는 [0, 1] 안이어야 합니다: {x}")
    return np.clip(arr, 0.0, 1.0)


def _scalar_or_array(x, value):
    return float(value) if np.ndim(x) == 0 else value


def g_q(x, p: TsallisParam | float):
    p = as_tsallis(p).require_analytic()
    xs = _unit_interval(x)
    root = np.sqrt(np.maximum(0.0, 1.0 - xs))
    # 0^q = 0 (q > 0)
    value = (1.0 - ((1.0 + root) / 2) ** p.q - ((1.0 - root) / 2) ** p.q) / (p.q - 1.0)
    return _scalar_or_array(x, value)


def f_alpha(x, p: RenyiParam | float):
    p = as_renyi(p).require_analytic()
    xs = _unit_interval(x)
    root = np.sqrt(np.maximum(0.0, 1.0 - xs * xs))
    inner = ((1.0 - root) / 2) ** p.alpha + ((1.0 + root) / 2) ** p.alpha
    value = np.log2(inner) / (1.0 - p.alpha)
    return _scalar_or_array(x, value)


def _reduced(state: PureState, side_a: Iterable[int]) -> np.ndarray:
    side = bipartition(state.n_qubits, side_a)
    return partial_trace(density(state), state.n_qubits, side)


def tsallis_pure(state: PureState, side_a: Iterable[int], p: TsallisParam | float) -> float:
    p = as_tsallis(p)
    return (1.0 - trace_power(_reduced(state, side_a), p.q)) / (p.q - 1.0)


def tsallis_two_qubit(rho, p: TsallisParam | float) -> float:
    p = as_tsallis(p).require_analytic()
    c = concurrence_two_qubit(rho)
    return g_q(c * c, p)


def renyi_pure(state: PureState, side_a: Iterable[int], p: RenyiParam | float) -> float:
    p = as_renyi(p)
    return math.log2(trace_power(_reduced(state, side_a), p.alpha)) / (1.0 - p.alpha)


def renyi_two_qubit(rho, p: RenyiParam | float) -> float:
    p = as_renyi(p).require_analytic()
    return f_alpha(concurrence_two_qubit(rho), p)
