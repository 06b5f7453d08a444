# reports/management/commands/sweep.py
import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from tqdm import tqdm

from states.services.errors import DomainError
from verify.services.families import STATE_PARAMS, Family, grid_family
from verify.services.storage import save_report
from verify.services.sweeps import AxisSpec, SweepSpec, refine_near_equality, run_state_check, run_sweep

from ._errors import REGRESSION, usage_errors

AXES = ("x", "y", "q", "alpha", "mu", "gamma")


class Command(BaseCommand):
    help = "부등식 family sweep / 상태 단위 검사. 보고서는 JSON 으로 stdout"

    def add_arguments(self, parser):
        parser.add_argument("family", help="lemma1, gqsuper, falphaadd, falphasqadd, lemma2, lemma5, lemma6, ckw, remark1..3")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--tolerance", type=float)
        parser.add_argument("--samples", type=int, default=0, help="grid 외 무작위 표본 수")
        parser.add_argument("--states", type=int, help="상태 단위 검사 표본 수 (기본 ENTLAB_STATE_SAMPLES)")
        parser.add_argument("--index", type=float, nargs="+", help="상태 단위: q 또는 α 목록")
        parser.add_argument("--exponent", type=float, nargs="+", help="상태 단위: η / μ / γ 목록")
        parser.add_argument("--refine", type=int, help="argmin 주변을 factor 배 촘촘하게 다시 sweep")
        parser.add_argument("--save", action="store_true", help="결과를 SweepRun 으로 저장")
        parser.add_argument("--quiet", action="store_true", help="진행 표시 끄기")
        for axis in AXES:
            parser.add_argument(f"--{axis}-min", type=float)
            parser.add_argument(f"--{axis}-max", type=float)
            parser.add_argument(f"--{axis}-steps", type=int)

    def _axes(self, family, opts) -> dict[str, AxisSpec]:
        axes = {}
        for axis in grid_family(family).axes:
            given = {k: opts.get(f"{axis.name}_{k}") for k in ("min", "max", "steps")}
            if all(v is None for v in given.values()):
                continue
            axes[axis.name] = AxisSpec(
                min=axis.default_min if given["min"] is None else given["min"],
                max=axis.default_max if given["max"] is None else given["max"],
                steps=axis.default_steps if given["steps"] is None else given["steps"],
            )
        return axes

    def _state_check(self, family, opts):
        params = {}
        keys = list(STATE_PARAMS[family])
        for key, flag in zip(keys, ("index", "exponent")):
            if opts.get(flag) is not None:
                params[key] = opts[flag]
        n_states = settings.ENTLAB_STATE_SAMPLES if opts.get("states") is None else opts["states"]
        kwargs = {} if opts.get("tolerance") is None else {"tolerance": opts["tolerance"]}
        if n_states < 1:
            raise DomainError(f"--states 는 1 이상: {n_states}")
        quiet = opts["quiet"] or not sys.stderr.isatty()
        with tqdm(total=n_states, desc=family.value, disable=quiet, file=sys.stderr) as bar:
            return run_state_check(family, n_states=n_states, seed=opts["seed"], params=params,
                                   progress=bar.update, **kwargs)

    def handle(self, *args, **opts):
        with usage_errors():
            family = Family.parse(opts["family"])
            if family.state_level:
                report = self._state_check(family, opts)
            else:
                spec = SweepSpec(
                    family=family,
                    axes=self._axes(family, opts),
                    random_samples=opts["samples"],
                    seed=opts["seed"],
                    **({} if opts.get("tolerance") is None else {"tolerance": opts["tolerance"]}),
                )
                report = run_sweep(spec)
                if opts.get("refine") is not None:
                    report = refine_near_equality(report, opts["refine"])

        self.stdout.write(report.to_json())
        if opts["save"]:
            run = save_report(report)
            self.stderr.write(f"saved SweepRun id={run.pk}")

        if not report.passed:
            raise CommandError(
                f"{family.value}: 위반 {len(report.violations)} 건, min_margin={report.min_margin:.3e}",
                returncode=REGRESSION,
            )
        if not opts["quiet"]:
            self.stderr.write(self.style.SUCCESS(f"{family.value}: {report.points_checked} points, 위반 없음"))
