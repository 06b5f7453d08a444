# reports/management/commands/evaluate.py
import json

from django.conf import settings
from django.core.management.base import BaseCommand

from reports.services.evaluate import MEASURES, evaluate_state
from states.services.io import load_acin_params, load_state
from states.services.states import acin_state

from ._errors import usage_errors


class Command(BaseCommand):
    help = "상태 JSON 파일에 대해 새 하한 / 기존 하한 / naive 하한 비교"

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument("--state", help='{"n_qubits": 3, "amplitudes": [[re, im], ...]}')
        source.add_argument("--acin", help='{"lambda": [l0, l1, l2, l3, l4], "phi": 0.0}')
        parser.add_argument("--measure", required=True, choices=MEASURES)
        parser.add_argument("--index", type=float, required=True, help="q 또는 α")
        parser.add_argument("--exponent", type=float, required=True, help="η / μ, α < 2 인 Rényi 는 γ")
        parser.add_argument("--pivot", type=int, default=0)
        parser.add_argument("--oracle", action="store_true", help="marginal 마다 convex-roof 탐색값도 함께 출력")

    def handle(self, *args, **opts):
        with usage_errors():
            if opts["acin"]:
                state = acin_state(load_acin_params(opts["acin"]))
            else:
                state = load_state(opts["state"])
            result = evaluate_state(
                state,
                opts["measure"],
                opts["index"],
                opts["exponent"],
                pivot=opts["pivot"],
                oracle_restarts=settings.ENTLAB_ROOF_RESTARTS if opts["oracle"] else None,
            )
        self.stdout.write(json.dumps(result, ensure_ascii=False, indent=2))
