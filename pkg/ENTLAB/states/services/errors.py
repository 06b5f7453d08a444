# states/services/errors.py
"""
공통 예외. 모든 앱이 여기서 import 한다.

ValueError 를 상속하므로 기존처럼 ValueError 로 잡아도 된다.
"""
from typing import Iterable


class EntlabError(ValueError):
    """계산 계층의 모든 오류의 루트"""


class DimensionError(EntlabError):
    """shape/크기 불일치, 빈 keep 집합, 잘못된 bipartition"""


class InvalidStateError(EntlabError):
    """정규화 안 된 벡터, 비-에르미트/음의 고유값을 가진 밀도 행렬"""


class DomainError(EntlabError):
    """스칼라 인자가 연산의 정의역 밖 (x ∉ [0,1], μ < 1, q/α 게이트 밖 ...)"""


class HypothesisError(DomainError):
    """bound 커널의 순서 가정 위반 (e1 < e2)"""


class ConvergenceError(EntlabError):
    """고유값 계산 실패. residuals 에 잔차를 담는다."""

    def __init__(self, message: str, residuals: Iterable[float] = ()):
        super().__init__(message)
        self.residuals = tuple(float(r) for r in residuals)
