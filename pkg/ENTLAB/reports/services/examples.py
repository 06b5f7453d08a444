# reports/services/examples.py
from dataclasses import dataclass

from states.services.states import acin_state, example_params

from .constants import EXAMPLES, LABELS, TOLERANCE
from .evaluate import measure_values


@dataclass(frozen=True)
class ExampleRow:
    label: str
    value: float
    expected: float

    @property
    def diff(self) -> float:
        return self.value - self.expected

    @property
    def ok(self) -> bool:
        return abs(self.diff) <= TOLERANCE


def run_example(which: int) -> list[ExampleRow]:
    if which not in EXAMPLES:
        raise KeyError(which)
    measure, index, expected = EXAMPLES[which]
    lhs, pairs = measure_values(acin_state(example_params()), measure, index, pivot=0)
    values = (lhs, pairs[1], pairs[2])
    return [ExampleRow(label, v, e) for label, v, e in zip(LABELS, values, expected)]
