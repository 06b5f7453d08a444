# verify/services/families.py
"""
sweep 대상 부등식 family 와 한 점 margin (LHS - RHS)

grid family : Lemma1, GqSuper, FalphaAdd, FalphaSqAdd, Lemma2, Lemma5, Lemma6
state family: CKW, Remark1, Remark2, Remark3 (임의 3큐비트 순수 상태)
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Mapping

from bounds.services.kernels import lemma1_chain, pair_bound_new
from bounds.services.params import Coupling, PowerParam
from measures.services.concurrence import concurrence_pure, concurrence_two_qubit
from measures.services.entropies import f_alpha, g_q, renyi_pure, tsallis_pure
from measures.services.params import ALPHA_MIN, Q_SUPERADDITIVE, RenyiParam, RenyiRegime, TsallisParam
from states.services.errors import DomainError
from states.services.states import PureState, reduced_pair

logger = logging.getLogger(__name__)

UNIT_SLACK = 1e-12


class Family(str, Enum):
    LEMMA1 = "Lemma1"
    GQ_SUPER = "GqSuper"
    FALPHA_ADD = "FalphaAdd"
    FALPHA_SQ_ADD = "FalphaSqAdd"
    LEMMA2 = "Lemma2"
    LEMMA5 = "Lemma5"
    LEMMA6 = "Lemma6"
    CKW = "CKW"
    REMARK1 = "Remark1"
    REMARK2 = "Remark2"
    REMARK3 = "Remark3"

    @classmethod
    def parse(cls, name: "Family | str") -> "Family":
        if isinstance(name, cls):
            return name
        for f in cls:
            if f.value.lower() == str(name).lower():
                return f
        raise DomainError(f"알 수 없는 family: {name}")

    @property
    def state_level(self) -> bool:
        return self in STATE_FAMILIES


STATE_FAMILIES = frozenset({Family.CKW, Family.REMARK1, Family.REMARK2, Family.REMARK3})


@dataclass(frozen=True)
class Axis:
    """lo/hi 는 family 정의역, default_* 는 기본 grid. open_hi 면 hi 는 포함 안 함."""
    name: str
    lo: float
    hi: float
    default_min: float
    default_max: float
    default_steps: int
    open_hi: bool = False

    def contains(self, value: float) -> bool:
        if value < self.lo:
            return False
        return value < self.hi if self.open_hi else value <= self.hi


def _x(steps):
    return Axis("x", 0.0, 1.0, 0.0, 1.0, steps)


def _y(steps):
    return Axis("y", 0.0, 1.0, 0.0, 1.0, steps)


_Q = Axis("q", Q_SUPERADDITIVE[0], Q_SUPERADDITIVE[1], 2.0, 3.0, 11)
_ALPHA_GE2 = Axis("alpha", 2.0, math.inf, 2.0, 5.0, 7)
_ALPHA_WINDOW = Axis("alpha", ALPHA_MIN, 2.0, ALPHA_MIN, 1.99, 7, open_hi=True)
_MU = Axis("mu", 1.0, math.inf, 1.0, 4.0, 7)
_GAMMA = Axis("gamma", 2.0, math.inf, 2.0, 8.0, 7)


def _in_disk(p) -> bool:
    return p["x"] ** 2 + p["y"] ** 2 <= 1 + UNIT_SLACK


def _ordered_in_disk(p) -> bool:
    return p["x"] >= p["y"] and _in_disk(p)


def _everywhere(p) -> bool:
    return True


def _lemma1(p) -> float:
    lhs, tight, loose, naive = lemma1_chain(p["x"], PowerParam(mu=p["mu"]))
    return min(lhs - tight, tight - loose, loose - naive)


def _gq_super(p) -> float:
    x2, y2 = p["x"] ** 2, p["y"] ** 2
    return g_q(min(1.0, x2 + y2), p["q"]) - g_q(x2, p["q"]) - g_q(y2, p["q"])


def _hyp(x, y) -> float:
    return min(1.0, math.hypot(x, y))


def _falpha_add(p) -> float:
    a = p["alpha"]
    return f_alpha(_hyp(p["x"], p["y"]), a) - f_alpha(p["x"], a) - f_alpha(p["y"], a)


def _falpha_sq_add(p) -> float:
    a = p["alpha"]
    return f_alpha(_hyp(p["x"], p["y"]), a) ** 2 - f_alpha(p["x"], a) ** 2 - f_alpha(p["y"], a) ** 2


def _lemma2(p) -> float:
    q, mu = p["q"], p["mu"]
    x2, y2 = p["x"] ** 2, p["y"] ** 2
    lhs = g_q(min(1.0, x2 + y2), q) ** mu
    return lhs - pair_bound_new(g_q(x2, q), g_q(y2, q), PowerParam(mu=mu))


def _lemma5(p) -> float:
    a, mu = p["alpha"], p["mu"]
    lhs = f_alpha(_hyp(p["x"], p["y"]), a) ** mu
    return lhs - pair_bound_new(f_alpha(p["x"], a), f_alpha(p["y"], a), PowerParam(mu=mu))


def _lemma6(p) -> float:
    a, gamma = p["alpha"], p["gamma"]
    lhs = f_alpha(_hyp(p["x"], p["y"]), a) ** gamma
    rhs = pair_bound_new(f_alpha(p["x"], a), f_alpha(p["y"], a), PowerParam.from_gamma(gamma), Coupling.SQUARED)
    return lhs - rhs


@dataclass(frozen=True)
class GridFamily:
    axes: tuple[Axis, ...]
    margin: Callable[[Mapping[str, float]], float]
    domain: Callable[[Mapping[str, float]], bool] = _everywhere

    @property
    def axis_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.axes)


GRID_FAMILIES: dict[Family, GridFamily] = {
    Family.LEMMA1: GridFamily((_x(200), Axis("mu", 1.0, math.inf, 1.0, 4.0, 200)), _lemma1),
    Family.GQ_SUPER: GridFamily((_x(60), _y(60), _Q), _gq_super, _in_disk),
    Family.FALPHA_ADD: GridFamily((_x(60), _y(60), _ALPHA_GE2), _falpha_add, _in_disk),
    Family.FALPHA_SQ_ADD: GridFamily((_x(60), _y(60), _ALPHA_WINDOW), _falpha_sq_add, _in_disk),
    Family.LEMMA2: GridFamily((_x(30), _y(30), Axis("q", 2.0, 3.0, 2.0, 3.0, 5), _MU), _lemma2, _ordered_in_disk),
    Family.LEMMA5: GridFamily((_x(30), _y(30), _ALPHA_GE2, _MU), _lemma5, _ordered_in_disk),
    Family.LEMMA6: GridFamily((_x(30), _y(30), _ALPHA_WINDOW, _GAMMA), _lemma6, _ordered_in_disk),
}


def grid_family(family: Family | str) -> GridFamily:
    family = Family.parse(family)
    if family.state_level:
        raise DomainError(f"{family.value} 는 상태 단위 family 입니다")
    return GRID_FAMILIES[family]


def family_margin(family: Family | str, point: Mapping[str, float]) -> float:
    """grid family 의 한 점 margin. 정의역 밖이면 DomainError."""
    fam = grid_family(family)
    missing = set(fam.axis_names) - set(point)
    if missing:
        raise DomainError(f"{Family.parse(family).value} 에 필요한 축이 없습니다: {sorted(missing)}")
    for axis in fam.axes:
        if not axis.contains(point[axis.name]):
            raise DomainError(f"{axis.name}={point[axis.name]} 가 [{axis.lo}, {axis.hi}] 밖입니다")
    if not fam.domain(point):
        raise DomainError(f"{dict(point)} 가 정의역 밖입니다")
    return fam.margin(point)


def lemma2_margin_decomposed(x: float, y: float, q: float, mu: float) -> float:
    """
    Lemma2 margin 을 두 조각의 합으로 계산
      [g^μ(x²+y²) - (g(x²)+g(y²))^μ] + g^μ(x²)·[(1+t)^μ - Lemma1 tight],  t = g(y²)/g(x²)
    """
    p = PowerParam(mu=mu)
    a = g_q(x * x, q)
    b = g_q(y * y, q)
    whole = g_q(min(1.0, x * x + y * y), q)
    if a == 0:
        return whole ** mu - b ** mu
    lhs, tight, _, _ = lemma1_chain(min(1.0, b / a), p)
    return (whole ** mu - (a + b) ** mu) + a ** mu * (lhs - tight)


# 상태 단위 family 의 (index, exponent) 기본 조합
STATE_PARAMS: dict[Family, dict[str, tuple[float, ...]]] = {
    Family.CKW: {},
    Family.REMARK1: {"q": (2.0, 2.5, 3.0), "eta": (1.0, 1.5, 2.0, 3.0)},
    Family.REMARK2: {"alpha": (2.0, 3.0), "mu": (1.0, 1.5, 2.0, 3.0)},
    Family.REMARK3: {"alpha": (ALPHA_MIN, 1.5), "gamma": (2.0, 3.0, 4.0)},
}


def check_state_params(family: Family, index: float | None = None, exponent: float | None = None):
    if family is Family.CKW:
        return
    if index is None or exponent is None:
        raise DomainError(f"{family.value} 에는 index 와 exponent 가 필요합니다")
    if family is Family.REMARK1:
        TsallisParam(q=index).require_superadditive()
        PowerParam(mu=exponent)
    elif family is Family.REMARK2:
        if RenyiParam(alpha=index).regime is not RenyiRegime.ALPHA_GE2:
            raise DomainError(f"{family.value} 는 α ≥ 2: α={index}")
        PowerParam(mu=exponent)
    else:
        if RenyiParam(alpha=index).regime is not RenyiRegime.ALPHA_WINDOW:
            raise DomainError(f"{family.value} 는 (√7-1)/2 ≤ α < 2: α={index}")
        PowerParam.from_gamma(exponent)


@dataclass(frozen=True)
class StateValues:
    """3큐비트 상태에서 pivot 0 기준 concurrence 세 개"""
    state: PureState
    c_whole: float
    c_ab: float
    c_ac: float

    @classmethod
    def of(cls, state: PureState) -> "StateValues":
        if state.n_qubits != 3:
            raise DomainError(f"상태 단위 family 는 3큐비트만: n={state.n_qubits}")
        return cls(
            state=state,
            c_whole=concurrence_pure(state, {0}),
            c_ab=concurrence_two_qubit(reduced_pair(state, 0, 1)),
            c_ac=concurrence_two_qubit(reduced_pair(state, 0, 2)),
        )


def state_margin(family: Family | str, values: StateValues | PureState,
                 index: float | None = None, exponent: float | None = None) -> float:
    """
    CKW: C²(A|BC) - C²(AB) - C²(AC)
    Remark: LHS^pow - pair_bound_new(큰 값, 작은 값)
    """
    family = Family.parse(family)
    if not family.state_level:
        raise DomainError(f"{family.value} 는 grid family 입니다")
    if isinstance(values, PureState):
        values = StateValues.of(values)
    if family is Family.CKW:
        return values.c_whole ** 2 - values.c_ab ** 2 - values.c_ac ** 2

    if family is Family.REMARK1:
        lhs = tsallis_pure(values.state, {0}, index)
        pair = (g_q(values.c_ab ** 2, index), g_q(values.c_ac ** 2, index))
        p, coupling = PowerParam(mu=exponent), Coupling.LINEAR
    else:
        lhs = renyi_pure(values.state, {0}, index)
        pair = (f_alpha(values.c_ab, index), f_alpha(values.c_ac, index))
        if family is Family.REMARK2:
            p, coupling = PowerParam(mu=exponent), Coupling.LINEAR
        else:
            p, coupling = PowerParam.from_gamma(exponent), Coupling.SQUARED
    e1, e2 = max(pair), min(pair)
    return max(lhs, 0.0) ** p.power(coupling) - pair_bound_new(e1, e2, p, coupling)
