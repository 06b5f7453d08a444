# bounds/services/params.py
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from states.services.errors import DomainError

NAIVE = "naive"


class Coupling(str, Enum):
    LINEAR = "Linear"
    SQUARED = "Squared"


class PriorFamily(str, Enum):
    REF11 = "Ref11"
    REF12_LINEAR = "Ref12Linear"
    REF12_SQUARED = "Ref12Squared"


class BoundRegime(str, Enum):
    TSALLIS_Q2TO3 = "TsallisQ2to3"
    RENYI_GE2 = "RenyiGE2"
    RENYI_WINDOW = "RenyiWindow"


# regime → (coupling, 비교 대상 prior)
REGIME_TABLE = {
    BoundRegime.TSALLIS_Q2TO3: (Coupling.LINEAR, PriorFamily.REF11),
    BoundRegime.RENYI_GE2: (Coupling.LINEAR, PriorFamily.REF12_LINEAR),
    BoundRegime.RENYI_WINDOW: (Coupling.SQUARED, PriorFamily.REF12_SQUARED),
}


class PowerParam(BaseModel):
    """
    mu ≥ 1 (Tsallis 쪽 η, Rényi 쪽 μ). gamma 는 α < 2 구간에서만 쓰며 항상 2·mu.
    """
    model_config = ConfigDict(frozen=True)

    mu: float = Field(ge=1)
    gamma: float | None = None

    @model_validator(mode="after")
    def _gamma_is_double_mu(self):
        if self.gamma is not None and self.gamma != 2 * self.mu:
            raise ValueError(f"gamma={self.gamma} ≠ 2·mu={2 * self.mu}")
        return self

    @classmethod
    def from_gamma(cls, gamma: float) -> "PowerParam":
        return cls(mu=gamma / 2, gamma=gamma)

    @property
    def h(self) -> float:
        return 2 ** self.mu - 1

    @property
    def tight(self) -> float:
        """μ²/(μ+1)"""
        return self.mu ** 2 / (self.mu + 1)

    @property
    def tail(self) -> float:
        """2^μ - μ²/(μ+1) - 1"""
        return 2 ** self.mu - self.tight - 1

    def power(self, coupling: Coupling) -> float:
        if Coupling(coupling) is Coupling.LINEAR:
            return self.mu
        if self.gamma is None:
            raise DomainError("Squared coupling 에는 gamma 가 필요합니다")
        return self.gamma


class BoundReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    exponent: float
    lhs: float
    new_bound: float
    prior_bound: float
    naive_bound: float
    margins: tuple[float, float, float]
    regime: BoundRegime | None = None
    point: dict[str, float] = Field(default_factory=dict)

    def holds(self, tolerance: float = 1e-12) -> bool:
        return min(self.margins) >= -tolerance
