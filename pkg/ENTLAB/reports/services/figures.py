# reports/services/figures.py
"""
그림 데이터 CSV: exponent,lhs,new_bound,prior_bound

예제 상태의 세 값은 한 번만 계산하고 지수 축만 바꿔 가며 compare_bounds.
"""
import csv
import logging
from pathlib import Path

from bounds.services.kernels import compare_bounds
from bounds.services.params import BoundRegime
from states.services.states import acin_state, example_params

from .constants import CSV_HEADER, FIGURE_STEP, FIGURES
from .evaluate import measure_values, power_param

logger = logging.getLogger(__name__)

DOMINANCE_TOL = 1e-12


def exponents(which: int) -> list[float]:
    _, _, _, start, end = FIGURES[which]
    count = int(round((end - start) / FIGURE_STEP)) + 1
    return [round(start + i * FIGURE_STEP, 2) for i in range(count)]


def figure_rows(which: int) -> list[tuple[float, float, float, float]]:
    measure, index, regime, _, _ = FIGURES[which]
    regime = BoundRegime(regime)
    lhs, pairs = measure_values(acin_state(example_params()), measure, index, pivot=0)
    e1, e2 = sorted(pairs.values(), reverse=True)
    rows = []
    for x in exponents(which):
        report = compare_bounds(lhs, e1, e2, power_param(regime, x), regime)
        rows.append((x, report.lhs, report.new_bound, report.prior_bound))
    return rows


def dominance_failures(rows) -> list[float]:
    """lhs ≥ new ≥ prior 가 깨지는 exponent 목록"""
    return [x for x, lhs, new, prior in rows
            if lhs - new < -DOMINANCE_TOL or new - prior < -DOMINANCE_TOL]


def write_figure_csv(which: int, path) -> list[tuple[float, float, float, float]]:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = figure_rows(which)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            x, *values = row
            writer.writerow([f"{x:.2f}", *(f"{v:.17g}" for v in values)])
    logger.info("figure %d → %s (%d rows)", which, path, len(rows))
    return rows
