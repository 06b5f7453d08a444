# verify/services/storage.py
import json
import logging

from verify.models import SweepRun

from .sweeps import SweepReport

logger = logging.getLogger(__name__)


def save_report(report: SweepReport) -> SweepRun:
    payload = json.loads(report.to_json())
    run = SweepRun.objects.create(
        family=report.family.value,
        spec=report.spec,
        points=report.points_checked,
        min_margin=report.min_margin,
        argmin=payload["argmin"],
        violations=payload["violations"],
        passed=report.passed,
    )
    logger.info("sweep 저장 id=%s family=%s passed=%s", run.pk, run.family, run.passed)
    return run
