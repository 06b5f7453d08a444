# reports/management/commands/example.py
from django.core.management.base import BaseCommand, CommandError

from reports.services.constants import EXAMPLES
from reports.services.examples import run_example

from ._errors import REGRESSION, usage_errors


class Command(BaseCommand):
    help = "예제 1–3 의 얽힘 값 재현 (기준값과 1e-5 이내인지 비교)"

    def add_arguments(self, parser):
        parser.add_argument("which", type=int, choices=sorted(EXAMPLES))

    def handle(self, *args, **opts):
        which = opts["which"]
        measure, index, _ = EXAMPLES[which]
        with usage_errors():
            rows = run_example(which)

        self.stdout.write(f"Example {which}: {measure} index={index:.5f}")
        self.stdout.write(f"{'':<6} {'value':>9} {'expected':>9} {'diff':>10}")
        for row in rows:
            mark = "" if row.ok else "  <-- FAIL"
            self.stdout.write(f"{row.label:<6} {row.value:>9.5f} {row.expected:>9.5f} {row.diff:>+10.1e}{mark}")

        failed = [r.label for r in rows if not r.ok]
        if failed:
            raise CommandError(f"기준값과 다릅니다: {', '.join(failed)}", returncode=REGRESSION)
        self.stdout.write(self.style.SUCCESS(f"Example {which} OK"))
