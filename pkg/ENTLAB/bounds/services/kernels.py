# bounds/services/kernels.py
"""
monogamy 하한 커널

c = μ²/(μ+1), d = 2^μ - c - 1, h = 2^μ - 1

pair (e1 ≥ e2):
  Linear   e1^μ + c·e1^(μ-1)·e2   + d·e2^μ
  Squared  e1^γ + c·e1^(γ-2)·e2²  + d·e2^γ
chain (값 v_1..v_{N-1}, split m):
  m = N-2  Σ_{i=1}^{N-3} h^(i-1) v_i^p + h^(N-3) Q(v_{N-2}, v_{N-1})
  그 외    Σ_{i=1}^{m} h^(i-1) v_i^p + h^(m+1) Σ_{j=m+1}^{N-3} v_j^p + h^m Q(v_{N-1}, v_{N-2})

커널은 순서를 바꾸지 않는다. 순서 가정 확인은 호출 측(ordering_certificate) 몫.
x^0 = 1 (x ≥ 0).
"""
import logging
from typing import Sequence

from states.services.errors import DimensionError, DomainError, HypothesisError

from .params import NAIVE, REGIME_TABLE, BoundRegime, BoundReport, Coupling, PowerParam, PriorFamily

logger = logging.getLogger(__name__)


def lemma1_chain(x: float, p: PowerParam) -> tuple[float, float, float, float]:
    """(1+x)^μ ≥ tight ≥ loose ≥ naive 의 네 값"""
    if not 0 <= x <= 1:
        raise DomainError(f"x 는 [0, 1] 안이어야 합니다: {x}")
    mu = p.mu
    xm = x ** mu
    lhs = (1 + x) ** mu
    tight = 1 + p.tight * x + p.tail * xm
    loose = 1 + mu / 2 * x + (2 ** mu - mu / 2 - 1) * xm
    naive = 1 + p.h * xm
    return lhs, tight, loose, naive


def _check_pair(e1: float, e2: float):
    if e1 < 0 or e2 < 0:
        raise DomainError(f"얽힘 값은 0 이상이어야 합니다: ({e1}, {e2})")
    if e1 < e2:
        raise HypothesisError(f"e1 ≥ e2 가정 위반: e1={e1}, e2={e2}")


def _pair_tail(a: float, b: float, p: PowerParam, coupling: Coupling) -> float:
    if Coupling(coupling) is Coupling.LINEAR:
        mu = p.mu
        return a ** mu + p.tight * a ** (mu - 1) * b + p.tail * b ** mu
    g = p.power(Coupling.SQUARED)
    return a ** g + p.tight * a ** (g - 2) * b * b + p.tail * b ** g


def _prior_tail(a: float, b: float, p: PowerParam, family: PriorFamily) -> float:
    family = PriorFamily(family)
    mu = p.mu
    if family is PriorFamily.REF11:
        return a ** mu + p.h * b ** mu + mu / 2 * b * (a ** (mu - 1) - b ** (mu - 1))
    if family is PriorFamily.REF12_LINEAR:
        return a ** mu + mu / 2 * a ** (mu - 1) * b + (2 ** mu - mu / 2 - 1) * b ** mu
    g = p.power(Coupling.SQUARED)
    return a ** g + g / 4 * a ** (g - 2) * b * b + (2 ** (g / 2) - g / 4 - 1) * b ** g


def _naive_tail(a: float, b: float, p: PowerParam, coupling: Coupling) -> float:
    pw = p.power(coupling)
    return a ** pw + p.h * b ** pw


def pair_bound_new(e1: float, e2: float, p: PowerParam, coupling: Coupling = Coupling.LINEAR) -> float:
    _check_pair(e1, e2)
    return _pair_tail(e1, e2, p, coupling)


def pair_bound_prior(e1: float, e2: float, p: PowerParam, family: PriorFamily) -> float:
    _check_pair(e1, e2)
    return _prior_tail(e1, e2, p, family)


def pair_bound_naive(e1: float, e2: float, p: PowerParam, coupling: Coupling = Coupling.LINEAR) -> float:
    _check_pair(e1, e2)
    return _naive_tail(e1, e2, p, coupling)


def chain_bound(
    values: Sequence[float],
    m: int,
    p: PowerParam,
    coupling: Coupling = Coupling.LINEAR,
    family: PriorFamily | str | None = None,
) -> float:
    """
    family=None 이면 새 하한, PriorFamily 면 같은 chain 에 prior pair 꼬리, "naive" 면 h-형 꼬리.
    """
    v = [float(x) for x in values]
    if len(v) < 2:
        raise DimensionError(f"값이 2개 이상 필요합니다: {len(v)}")
    if any(x < 0 for x in v):
        raise DomainError(f"얽힘 값은 0 이상이어야 합니다: {v}")
    n = len(v) + 1
    if not 0 <= m <= n - 2:
        raise DomainError(f"split m={m} 은 0..{n - 2} 이어야 합니다")

    if family is None:
        def tail(a, b):
            return _pair_tail(a, b, p, coupling)
    elif family == NAIVE:
        def tail(a, b):
            return _naive_tail(a, b, p, coupling)
    else:
        def tail(a, b):
            return _prior_tail(a, b, p, family)

    pw = p.power(coupling)
    h = p.h
    # v[i-1] = v_i
    if m == n - 2:
        total = 0.0
        for i in range(1, n - 2):
            total += h ** (i - 1) * v[i - 1] ** pw
        return total + h ** (n - 3) * tail(v[n - 3], v[n - 2])

    total = 0.0
    for i in range(1, m + 1):
        total += h ** (i - 1) * v[i - 1] ** pw
    middle = sum(v[j - 1] ** pw for j in range(m + 1, n - 2))
    return total + h ** (m + 1) * middle + h ** m * tail(v[n - 2], v[n - 3])


THEOREMS = {
    # theorem: (coupling, 순서가 전부 내림차순인가)
    1: (Coupling.LINEAR, True),
    2: (Coupling.LINEAR, False),
    3: (Coupling.LINEAR, True),
    4: (Coupling.LINEAR, False),
    5: (Coupling.SQUARED, True),
    6: (Coupling.SQUARED, False),
}


def theorem_bound(theorem: int, values: Sequence[float], p: PowerParam, m: int | None = None) -> float:
    """1,2: Tsallis / 3,4: Rényi α≥2 / 5,6: Rényi 창 구간(γ). 짝수 번호는 split m 필요."""
    if theorem not in THEOREMS:
        raise DomainError(f"theorem 은 1..6: {theorem}")
    coupling, descending = THEOREMS[theorem]
    if descending:
        return chain_bound(values, len(values) - 1, p, coupling)
    if m is None:
        raise DomainError(f"theorem {theorem} 에는 split m 이 필요합니다")
    return chain_bound(values, m, p, coupling)


def compare_bounds(lhs: float, e1: float, e2: float, p: PowerParam, regime: BoundRegime) -> BoundReport:
    """
    lhs 는 거듭제곱 전의 얽힘 값 E(A|rest). 보고서에는 lhs^power 가 들어간다.
    margins = (lhs - new, new - prior, prior - naive)
    """
    regime = BoundRegime(regime)
    coupling, family = REGIME_TABLE[regime]
    pw = p.power(coupling)
    if lhs < 0:
        raise DomainError(f"lhs 는 0 이상이어야 합니다: {lhs}")

    lhs_pow = lhs ** pw
    new = pair_bound_new(e1, e2, p, coupling)
    prior = pair_bound_prior(e1, e2, p, family)
    naive = pair_bound_naive(e1, e2, p, coupling)
    margins = (lhs_pow - new, new - prior, prior - naive)
    if min(margins) < 0:
        logger.warning("음의 margin regime=%s exponent=%s margins=%s", regime.value, pw, margins)
    return BoundReport(
        exponent=pw,
        lhs=lhs_pow,
        new_bound=new,
        prior_bound=prior,
        naive_bound=naive,
        margins=margins,
        regime=regime,
        point={"e1": e1, "e2": e2},
    )


def compare_chain(lhs: float, values: Sequence[float], m: int, p: PowerParam, regime: BoundRegime) -> BoundReport:
    """
    N > 3 용. values 는 이미 정한 순서 (v_1..v_{N-1}), m 은 split.
    new / prior / naive 모두 같은 chain 에 각자의 pair 꼬리를 붙인 값.
    """
    regime = BoundRegime(regime)
    coupling, family = REGIME_TABLE[regime]
    pw = p.power(coupling)
    if lhs < 0:
        raise DomainError(f"lhs 는 0 이상이어야 합니다: {lhs}")

    lhs_pow = lhs ** pw
    new = chain_bound(values, m, p, coupling)
    prior = chain_bound(values, m, p, coupling, family=family)
    naive = chain_bound(values, m, p, coupling, family=NAIVE)
    margins = (lhs_pow - new, new - prior, prior - naive)
    if min(margins) < 0:
        logger.warning("음의 margin regime=%s exponent=%s m=%d margins=%s", regime.value, pw, m, margins)
    return BoundReport(
        exponent=pw,
        lhs=lhs_pow,
        new_bound=new,
        prior_bound=prior,
        naive_bound=naive,
        margins=margins,
        regime=regime,
        point={f"v{i + 1}": float(v) for i, v in enumerate(values)},
    )
