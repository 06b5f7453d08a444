# states/services/io.py
"""
상태 JSON 입출력

상태:      {"n_qubits": 3, "amplitudes": [[re, im], ...]}
Acín 파라미터: {"lambda": [l0, l1, l2, l3, l4], "phi": 0.0}
"""
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import DimensionError
from .states import AcinParams, PureState


class StateFile(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_qubits: int = Field(ge=1, le=8)
    amplitudes: list[tuple[float, float]]

    @model_validator(mode="after")
    def _length(self):
        if len(self.amplitudes) != 2 ** self.n_qubits:
            raise ValueError(f"amplitudes 길이 {len(self.amplitudes)} ≠ 2^{self.n_qubits}")
        return self

    def to_state(self) -> PureState:
        return PureState(self.n_qubits, [complex(re, im) for re, im in self.amplitudes])

    @classmethod
    def from_state(cls, state: PureState) -> "StateFile":
        return cls(
            n_qubits=state.n_qubits,
            amplitudes=[(float(a.real), float(a.imag)) for a in state.amplitudes],
        )


def parse_state(payload) -> PureState:
    """str/bytes(JSON) 또는 dict → PureState"""
    if isinstance(payload, (str, bytes)):
        sf = StateFile.model_validate_json(payload)
    elif isinstance(payload, dict):
        sf = StateFile.model_validate(payload)
    else:
        raise DimensionError(f"지원하지 않는 상태 입력: {type(payload).__name__}")
    return sf.to_state()


def load_state(path) -> PureState:
    return parse_state(Path(path).read_text(encoding="utf-8"))


def dump_state(state: PureState) -> str:
    return StateFile.from_state(state).model_dump_json()


def load_acin_params(path) -> AcinParams:
    return AcinParams.model_validate_json(Path(path).read_text(encoding="utf-8"))
