# measures/services/params.py
import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator

from states.services.errors import DomainError

Q_WINDOW = ((5 - math.sqrt(13)) / 2, (5 + math.sqrt(13)) / 2)
Q_SUPERADDITIVE = (2.0, 3.0)
ALPHA_MIN = (math.sqrt(7) - 1) / 2


class RenyiRegime(str, Enum):
    ALPHA_GE2 = "AlphaGE2"
    ALPHA_WINDOW = "AlphaWindow"


class TsallisParam(BaseModel):
    model_config = ConfigDict(frozen=True)

    q: float = Field(gt=0)

    @field_validator("q")
    @classmethod
    def _not_one(cls, v):
        if v == 1:
            raise ValueError("q = 1 (von Neumann 극한)은 지원하지 않습니다")
        return v

    @property
    def analytic(self) -> bool:
        return Q_WINDOW[0] <= self.q <= Q_WINDOW[1]

    @property
    def superadditive(self) -> bool:
        return Q_SUPERADDITIVE[0] <= self.q <= Q_SUPERADDITIVE[1]

    def require_analytic(self) -> "TsallisParam":
        if not self.analytic:
            raise DomainError(f"q={self.q} 가 해석식 구간 [{Q_WINDOW[0]:.6f}, {Q_WINDOW[1]:.6f}] 밖입니다")
        return self

    def require_superadditive(self) -> "TsallisParam":
        if not self.superadditive:
            raise DomainError(f"q={self.q} 가 [2, 3] 밖입니다")
        return self


class RenyiParam(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(gt=0)

    @field_validator("alpha")
    @classmethod
    def _not_one(cls, v):
        if v == 1:
            raise ValueError("α = 1 (von Neumann 극한)은 지원하지 않습니다")
        return v

    @property
    def analytic(self) -> bool:
        return self.alpha >= ALPHA_MIN

    def require_analytic(self) -> "RenyiParam":
        if not self.analytic:
            raise DomainError(f"α={self.alpha} < (√7-1)/2 ≈ {ALPHA_MIN:.6f}")
        return self

    @property
    def regime(self) -> RenyiRegime:
        self.require_analytic()
        return RenyiRegime.ALPHA_GE2 if self.alpha >= 2 else RenyiRegime.ALPHA_WINDOW


def as_tsallis(p) -> TsallisParam:
    return p if isinstance(p, TsallisParam) else TsallisParam(q=p)


def as_renyi(p) -> RenyiParam:
    return p if isinstance(p, RenyiParam) else RenyiParam(alpha=p)
