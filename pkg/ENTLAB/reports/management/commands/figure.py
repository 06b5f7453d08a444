# reports/management/commands/figure.py
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from reports.services.constants import FIGURES
from reports.services.figures import dominance_failures, write_figure_csv

from ._errors import REGRESSION, USAGE, usage_errors


class Command(BaseCommand):
    help = "그림 1–3 데이터 CSV 생성 (exponent,lhs,new_bound,prior_bound)"

    def add_arguments(self, parser):
        parser.add_argument("which", type=int, nargs="?", choices=sorted(FIGURES))
        parser.add_argument("--out", help="CSV 경로 (--all 이면 디렉터리). 기본: ENTLAB_OUTPUT_DIR")
        parser.add_argument("--all", action="store_true", help="세 그림을 한 번에")

    def handle(self, *args, **opts):
        which = opts.get("which")
        out = opts.get("out")
        if opts["all"]:
            base = Path(out) if out else Path(settings.ENTLAB_OUTPUT_DIR)
            targets = [(n, base / f"figure{n}.csv") for n in sorted(FIGURES)]
        elif which is None:
            raise CommandError("which 또는 --all 중 하나가 필요합니다", returncode=USAGE)
        else:
            path = Path(out) if out else Path(settings.ENTLAB_OUTPUT_DIR) / f"figure{which}.csv"
            targets = [(which, path)]

        bad = []
        for n, path in targets:
            with usage_errors():
                rows = write_figure_csv(n, path)
            failures = dominance_failures(rows)
            if failures:
                bad.append(n)
                self.stderr.write(f"figure {n}: lhs ≥ new ≥ prior 위반 exponent={failures[:5]}")
            self.stdout.write(f"figure {n}: {len(rows)} rows → {path}")

        if bad:
            raise CommandError(f"대소 관계가 깨진 그림: {bad}", returncode=REGRESSION)
        self.stdout.write(self.style.SUCCESS("CSV 생성 완료"))
