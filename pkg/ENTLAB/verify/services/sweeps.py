# verify/services/sweeps.py
"""
grid / 무작위 표본 sweep 과 상태 단위 검사

- 점 순서는 축 순서대로의 사전식 grid, 그 다음 seed 고정 무작위 표본
- argmin 동률이면 사전식으로 가장 작은 점
- margin 은 부호 그대로 (LHS - RHS), 잘라내지 않는다
"""
import itertools
import logging
from typing import Any, Callable, Iterable, Mapping, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from states.services.errors import DomainError
from states.services.states import iter_random_pure_states, make_rng

from .families import (
    STATE_PARAMS,
    Axis,
    Family,
    StateValues,
    check_state_params,
    grid_family,
    state_margin,
)

logger = logging.getLogger(__name__)

GRID_TOLERANCE = 1e-12
STATE_TOLERANCE = 1e-9
REJECTION_LIMIT = 1000


class AxisSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    min: float
    max: float
    steps: int = Field(ge=2)

    @model_validator(mode="after")
    def _ordered(self):
        if self.min > self.max:
            raise ValueError(f"min={self.min} > max={self.max}")
        return self


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: Family
    axes: dict[str, AxisSpec] = Field(default_factory=dict)
    random_samples: int = Field(default=0, ge=0)
    seed: int = 0
    tolerance: float = Field(default=GRID_TOLERANCE, gt=0)

    @field_validator("family", mode="before")
    @classmethod
    def _family(cls, v):
        return Family.parse(v)


class SweepReport(BaseModel):
    """JSON: {"family", "points", "min_margin", "argmin", "violations"}"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    family: Family
    points_checked: int = Field(alias="points")
    min_margin: float
    argmin: tuple[float, ...]
    violations: list[tuple[tuple[float, ...], float]] = Field(default_factory=list)
    axes: tuple[str, ...] = Field(default=(), exclude=True)
    tolerance: float = Field(default=GRID_TOLERANCE, exclude=True)
    spec: dict[str, Any] = Field(default_factory=dict, exclude=True)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self, **kwargs) -> str:
        return self.model_dump_json(by_alias=True, **kwargs)


def resolve_axes(spec: SweepSpec) -> list[tuple[Axis, AxisSpec]]:
    """spec 에 없는 축은 기본값으로 채우고, family 정의역을 벗어나면 DomainError"""
    fam = grid_family(spec.family)
    unknown = set(spec.axes) - set(fam.axis_names)
    if unknown:
        raise DomainError(f"{spec.family.value} 에 없는 축: {sorted(unknown)}")
    resolved = []
    for axis in fam.axes:
        a = spec.axes.get(axis.name) or AxisSpec(min=axis.default_min, max=axis.default_max, steps=axis.default_steps)
        if not (axis.contains(a.min) and axis.contains(a.max)):
            hi = ")" if axis.open_hi else "]"
            raise DomainError(f"{axis.name} 범위 [{a.min}, {a.max}] 가 정의역 [{axis.lo}, {axis.hi}{hi} 밖입니다")
        resolved.append((axis, a))
    return resolved


class _Accumulator:
    def __init__(self, tolerance: float):
        self.tolerance = tolerance
        self.count = 0
        self.best: tuple[float, tuple[float, ...]] | None = None
        self.violations: list[tuple[tuple[float, ...], float]] = []
        self.near = 0

    def add(self, point: tuple[float, ...], margin: float):
        self.count += 1
        if self.best is None or (margin, point) < self.best:
            self.best = (margin, point)
        if margin < -self.tolerance:
            self.violations.append((point, margin))
        elif margin < 0:
            self.near += 1

    def report(self, family: Family, axes: Sequence[str], spec: Mapping[str, Any]) -> SweepReport:
        if self.best is None:
            raise DomainError(f"{family.value}: 정의역 안의 점이 하나도 없습니다")
        if self.near:
            logger.warning("%s: tolerance 안의 음수 margin %d 개", family.value, self.near)
        margin, point = self.best
        report = SweepReport(
            family=family,
            points=self.count,
            min_margin=margin,
            argmin=point,
            violations=self.violations,
            axes=tuple(axes),
            tolerance=self.tolerance,
            spec=dict(spec),
        )
        logger.info("%s: points=%d min_margin=%.3e argmin=%s violations=%d",
                    family.value, report.points_checked, margin, point, len(self.violations))
        return report


def _grid_points(axes: list[tuple[Axis, AxisSpec]]) -> Iterable[tuple[float, ...]]:
    grids = [np.unique(np.linspace(a.min, a.max, a.steps)) for _, a in axes]
    for point in itertools.product(*grids):
        yield tuple(float(v) for v in point)


def _random_points(axes, domain, samples: int, seed: int) -> Iterable[tuple[float, ...]]:
    """정의역 predicate 에 대한 rejection sampling"""
    if samples == 0:
        return
    rng = make_rng(seed)
    names = [axis.name for axis, _ in axes]
    accepted = 0
    for _ in range(samples * REJECTION_LIMIT):
        point = tuple(float(rng.uniform(a.min, a.max)) for _, a in axes)
        if domain(dict(zip(names, point))):
            accepted += 1
            yield point
            if accepted == samples:
                return
    logger.warning("rejection sampling 중단: %d / %d 개만 채택", accepted, samples)


def run_sweep(spec: SweepSpec) -> SweepReport:
    fam = grid_family(spec.family)
    axes = resolve_axes(spec)
    names = fam.axis_names
    acc = _Accumulator(spec.tolerance)
    points = itertools.chain(_grid_points(axes), _random_points(axes, fam.domain, spec.random_samples, spec.seed))
    for point in points:
        p = dict(zip(names, point))
        if not fam.domain(p):
            continue
        acc.add(point, fam.margin(p))
    return acc.report(spec.family, names, spec.model_dump(mode="json"))


def run_state_check(
    family: Family | str,
    n_states: int = 1000,
    seed: int = 0,
    params: Mapping[str, Sequence[float]] | None = None,
    tolerance: float = STATE_TOLERANCE,
    progress: Callable[[int], Any] | None = None,
) -> SweepReport:
    """
    seed 고정 3큐비트 순수 상태 n_states 개에 대해 (index, exponent) 조합마다 margin 계산.
    progress 를 주면 상태 하나마다 progress(1) 호출.
    """
    family = Family.parse(family)
    if not family.state_level:
        raise DomainError(f"{family.value} 는 grid family 입니다 (run_sweep 사용)")
    if n_states < 1:
        raise DomainError(f"n_states ≥ 1 이어야 합니다: {n_states}")
    if tolerance <= 0:
        raise DomainError(f"tolerance > 0 이어야 합니다: {tolerance}")

    grid = dict(STATE_PARAMS[family])
    if params:
        unknown = set(params) - set(grid)
        if unknown:
            raise DomainError(f"{family.value} 에 없는 파라미터: {sorted(unknown)}")
        grid.update({k: tuple(float(v) for v in vs) for k, vs in params.items()})
    combos = list(itertools.product(*grid.values()))
    for combo in combos:
        check_state_params(family, *combo)

    acc = _Accumulator(tolerance)
    for i, state in enumerate(iter_random_pure_states(3, n_states, seed)):
        values = StateValues.of(state)
        for combo in combos:
            acc.add((float(i), *combo), state_margin(family, values, *combo))
        if progress is not None:
            progress(1)

    spec = {"family": family.value, "n_states": n_states, "seed": seed,
            "params": {k: list(v) for k, v in grid.items()}, "tolerance": tolerance}
    return acc.report(family, ("state", *grid), spec)


def refine_near_equality(report: SweepReport, factor: int) -> SweepReport:
    """argmin 주변 ±한 칸을 factor 배 촘촘한 grid 로 다시 sweep"""
    if factor < 1:
        raise DomainError(f"factor ≥ 1 이어야 합니다: {factor}")
    if report.family.state_level:
        logger.info("%s: 상태 단위 보고서는 refine 대상이 아닙니다", report.family.value)
        return report
    spec = SweepSpec.model_validate(report.spec)
    refined = {}
    for (axis, a), center in zip(resolve_axes(spec), report.argmin):
        step = (a.max - a.min) / (a.steps - 1)
        if step == 0:
            refined[axis.name] = a
            continue
        lo = max(a.min, center - step)
        hi = min(a.max, center + step)
        steps = max(2, int(round((hi - lo) / step * factor)) + 1)
        refined[axis.name] = AxisSpec(min=lo, max=hi, steps=steps)
    return run_sweep(spec.model_copy(update={"axes": refined, "random_samples": 0}))
