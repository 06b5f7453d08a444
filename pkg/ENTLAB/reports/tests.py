import csv
import json
import math
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings
from rest_framework.test import APIClient

from bounds.services.ordering import choose_split
from states.services.io import StateFile, dump_state
from states.services.states import acin_state, basis_state, example_params, iter_random_pure_states, w_state
from verify.models import SweepRun

from .services.constants import EXAMPLES
from .services.evaluate import evaluate_state
from .services.figures import exponents


def _read_csv(path):
    with open(path, encoding="utf-8", newline="") as f:
        return list(csv.reader(f))


class ExampleCommandTests(SimpleTestCase):
    def _run(self, which):
        out = StringIO()
        call_command("example", str(which), stdout=out)
        return out.getvalue()

    def test_examples_reproduce(self):
        expected = {
            1: ("0.49383", "0.37037", "0.12346"),
            2: ("0.98230", "0.66742", "0.19010"),
            3: ("0.99265", "0.83477", "0.41466"),
        }
        for which, values in expected.items():
            text = self._run(which)
            for v in values:
                self.assertIn(v, text)
            self.assertIn(f"Example {which} OK", text)
            self.assertNotIn("FAIL", text)

    def test_regression_mismatch(self):
        broken = {1: ("tsallis", 2.0, (0.5, 0.37037, 0.12346))}
        out = StringIO()
        with mock.patch.dict(EXAMPLES, broken):
            with self.assertRaises(CommandError) as ctx:
                call_command("example", "1", stdout=out)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn("FAIL", out.getvalue())

    def test_unknown_example(self):
        with self.assertRaises(CommandError):
            call_command("example", "4", stdout=StringIO())


class FigureCommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def _figure(self, which):
        path = self.dir / f"fig{which}.csv"
        call_command("figure", str(which), out=str(path), stdout=StringIO())
        rows = _read_csv(path)
        self.assertEqual(rows[0], ["exponent", "lhs", "new_bound", "prior_bound"])
        return path, [[float(v) for v in r] for r in rows[1:]]

    def test_axes(self):
        self.assertEqual(len(exponents(1)), 101)
        self.assertEqual(len(exponents(2)), 151)
        self.assertEqual(len(exponents(3)), 201)
        self.assertEqual(exponents(1)[50], 2.0)

    def test_figure1(self):
        path, rows = self._figure(1)
        self.assertEqual(len(rows), 101)
        self.assertTrue(path.read_text(encoding="utf-8").splitlines()[1].startswith("1.00,"))
        x, lhs, new, prior = rows[0]
        for v in (lhs, new, prior):
            self.assertAlmostEqual(v, 0.49383, delta=1e-5)
        self.assertAlmostEqual(lhs, new, delta=1e-9)
        self.assertAlmostEqual(new, prior, delta=1e-9)
        x, lhs, new, prior = rows[50]
        self.assertEqual(x, 2.0)
        self.assertAlmostEqual(new - prior, 0.0101610527, places=8)

    def test_figure2(self):
        _, rows = self._figure(2)
        x, lhs, new, prior = rows[0]
        self.assertAlmostEqual(lhs, 0.98230, delta=1e-5)
        self.assertAlmostEqual(new, 0.85752, delta=1e-5)
        self.assertAlmostEqual(prior, 0.85752, delta=1e-5)

    def test_figure3(self):
        _, rows = self._figure(3)
        self.assertEqual(len(rows), 201)
        x, lhs, new, prior = rows[0]
        self.assertEqual(x, 2.0)
        self.assertAlmostEqual(new, prior, places=12)
        self.assertAlmostEqual(new, 0.8687885, places=6)

    def test_dominance_and_strictness(self):
        for which, first in ((1, 1.0), (2, 1.0), (3, 2.0)):
            _, rows = self._figure(which)
            for x, lhs, new, prior in rows:
                self.assertGreaterEqual(lhs - new, -1e-12, (which, x))
                self.assertGreaterEqual(new - prior, -1e-12, (which, x))
                if x > first:
                    self.assertGreater(new, prior, (which, x))

    def test_deterministic_and_newlines(self):
        a, _ = self._figure(2)
        first = a.read_bytes()
        a2, _ = self._figure(2)
        self.assertEqual(first, a2.read_bytes())
        self.assertNotIn(b"\r", first)

    def test_all_uses_output_dir(self):
        with override_settings(ENTLAB_OUTPUT_DIR=self.dir / "out"):
            call_command("figure", all=True, stdout=StringIO())
        for n in (1, 2, 3):
            self.assertTrue((self.dir / "out" / f"figure{n}.csv").exists())

    def test_missing_target(self):
        with self.assertRaises(CommandError) as ctx:
            call_command("figure", stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)


class SweepCommandTests(TestCase):
    def _sweep(self, *args, **opts):
        out = StringIO()
        call_command("sweep", *args, stdout=out, stderr=StringIO(), quiet=True, **opts)
        return json.loads(out.getvalue())

    def test_lemma1(self):
        report = self._sweep("lemma1", x_steps=50, mu_steps=40)
        self.assertEqual(report["family"], "Lemma1")
        self.assertEqual(report["points"], 2000)
        self.assertGreaterEqual(report["min_margin"], -1e-12)
        self.assertEqual(report["violations"], [])

    def test_ckw(self):
        report = self._sweep("ckw", states=1000, seed=7)
        self.assertEqual(report["points"], 1000)
        self.assertGreaterEqual(report["min_margin"], -1e-9)

    def test_remark_overrides(self):
        report = self._sweep("remark2", states=20, index=[2.0], exponent=[2.0])
        self.assertEqual(report["points"], 20)

    def test_refine_and_save(self):
        self._sweep("lemma5", x_steps=11, y_steps=11, refine=2, save=True)
        self.assertEqual(SweepRun.objects.count(), 1)
        self.assertTrue(SweepRun.objects.get().passed)

    def test_zero_values_are_not_defaults(self):
        cases = [
            ("ckw", {"states": 0}),
            ("ckw", {"states": 2, "tolerance": 0.0}),
            ("lemma1", {"x_steps": 3, "mu_steps": 3, "tolerance": 0.0}),
            ("lemma5", {"x_steps": 3, "y_steps": 3, "refine": 0}),
        ]
        for family, opts in cases:
            with self.assertRaises(CommandError) as ctx:
                self._sweep(family, **opts)
            self.assertEqual(ctx.exception.returncode, 2, (family, opts))

    def test_usage_errors(self):
        for args, opts in [(("lemma1",), {"mu_min": 0.5}), (("nope",), {}), (("remark1",), {"index": [4.0], "states": 2})]:
            with self.assertRaises(CommandError) as ctx:
                self._sweep(*args, **opts)
            self.assertEqual(ctx.exception.returncode, 2, args)


class EvaluateCommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def _state_file(self, state, name="state.json"):
        path = self.dir / name
        path.write_text(dump_state(state), encoding="utf-8")
        return str(path)

    def _evaluate(self, state_path, measure, index, exponent, **opts):
        out = StringIO()
        call_command("evaluate", state=state_path, measure=measure, index=index, exponent=exponent,
                     stdout=out, **opts)
        return json.loads(out.getvalue())

    def test_example_state(self):
        path = self._state_file(acin_state(example_params()))
        result = self._evaluate(path, "tsallis", 2, 2)
        self.assertAlmostEqual(result["lhs"], 0.2438652644, places=9)
        self.assertAlmostEqual(result["lhs"], 0.49383 ** 2, delta=1e-5)
        self.assertTrue(all(m >= -1e-12 for m in result["margins"]))
        self.assertEqual(result["ordering"], "certified")
        self.assertEqual(result["regime"], "TsallisQ2to3")
        self.assertEqual(result["rest_order"], [1, 2])

    def test_acin_params_file(self):
        path = self.dir / "acin.json"
        path.write_text(example_params().model_dump_json(by_alias=True), encoding="utf-8")
        out = StringIO()
        call_command("evaluate", acin=str(path), measure="tsallis", index=2, exponent=2, stdout=out)
        result = json.loads(out.getvalue())
        self.assertAlmostEqual(result["lhs"], 0.2438652644, places=9)

    def test_window_regime_uses_gamma(self):
        path = self._state_file(acin_state(example_params()))
        result = self._evaluate(path, "renyi", (math.sqrt(7) - 1) / 2, 4)
        self.assertEqual(result["regime"], "RenyiWindow")
        self.assertEqual(result["exponent"], 4)
        self.assertAlmostEqual(result["new_bound"], 0.6946244040, places=7)

    def test_product_state(self):
        path = self._state_file(basis_state("000"))
        result = self._evaluate(path, "renyi", 2, 2)
        self.assertAlmostEqual(result["lhs"], 0.0, places=12)
        self.assertEqual(result["new_bound"], 0.0)
        for m in result["margins"]:
            self.assertAlmostEqual(m, 0.0, places=12)

    def test_four_qubit_w(self):
        path = self._state_file(w_state(4))
        result = self._evaluate(path, "tsallis", 2, 2)
        self.assertEqual(result["n_qubits"], 4)
        self.assertEqual(result["split"], 0)
        self.assertEqual(result["ordering"], "certified")
        self.assertAlmostEqual(result["lhs"], 0.140625, places=10)
        self.assertAlmostEqual(result["new_bound"], 0.109375, places=10)
        self.assertGreater(result["margins"][0], 0)

    def test_four_qubit_random_states_use_certified_order(self):
        certified = 0
        for s in iter_random_pure_states(4, 5, seed=5):
            result = evaluate_state(s, "tsallis", 2, 2)
            order, split, status = choose_split(s, 0, [1, 2, 3])
            self.assertEqual(result["rest_order"], list(order))
            self.assertEqual(result["split"], split)
            self.assertEqual(result["ordering"], status.value)
            if result["ordering"] == "certified":
                certified += 1
                self.assertGreaterEqual(result["margins"][0], -1e-9)
        self.assertGreaterEqual(certified, 3)

    @override_settings(ENTLAB_ROOF_RESTARTS=30)
    def test_oracle(self):
        path = self._state_file(acin_state(example_params()))
        result = self._evaluate(path, "tsallis", 2, 1, oracle=True)
        self.assertEqual(set(result["oracle"]), {"1", "2"})
        for item in result["oracle"].values():
            self.assertAlmostEqual(item["roof"], item["closed_form"], delta=2e-3)

    def test_errors(self):
        good = self._state_file(acin_state(example_params()))
        bad = self.dir / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        cases = [
            (good, "renyi", 0.5, 2),
            (good, "tsallis", 4.0, 2),
            (good, "tsallis", 2, 0.5),
            (str(bad), "tsallis", 2, 2),
            (str(self.dir / "missing.json"), "tsallis", 2, 2),
            (self._state_file(basis_state("00"), "two.json"), "tsallis", 2, 2),
        ]
        for path, measure, index, exponent in cases:
            with self.assertRaises(CommandError) as ctx:
                self._evaluate(path, measure, index, exponent)
            self.assertEqual(ctx.exception.returncode, 2, (path, measure, index, exponent))


class ReportsApiTests(TestCase):
    def setUp(self):
        self.client = APIClient()

    def test_example(self):
        res = self.client.get("/api/reports/examples/2/")
        self.assertEqual(res.status_code, 200)
        data = res.json()["data"]
        self.assertTrue(data["passed"])
        self.assertEqual([r["label"] for r in data["rows"]], ["A|BC", "AB", "AC"])
        self.assertAlmostEqual(data["rows"][0]["value"], 0.98230, delta=1e-5)

    def test_unknown_example(self):
        res = self.client.get("/api/reports/examples/9/")
        self.assertEqual(res.status_code, 404)
        self.assertFalse(res.json()["success"])

    def test_evaluate(self):
        body = {
            "state": StateFile.from_state(acin_state(example_params())).model_dump(),
            "measure": "tsallis",
            "index": 2,
            "exponent": 2,
        }
        res = self.client.post("/api/reports/evaluate/", body, format="json")
        self.assertEqual(res.status_code, 200)
        self.assertAlmostEqual(res.json()["data"]["lhs"], 0.2438652644, places=9)

    def test_evaluate_errors(self):
        state = StateFile.from_state(acin_state(example_params())).model_dump()
        res = self.client.post("/api/reports/evaluate/",
                               {"state": state, "measure": "renyi", "index": 0.5, "exponent": 2}, format="json")
        self.assertEqual(res.status_code, 400)
        res = self.client.post("/api/reports/evaluate/",
                               {"state": {"n_qubits": 3, "amplitudes": [[1, 0]] * 8}, "measure": "tsallis",
                                "index": 2, "exponent": 2}, format="json")
        self.assertEqual(res.status_code, 400)
        res = self.client.post("/api/reports/evaluate/", {"state": state}, format="json")
        self.assertEqual(res.status_code, 400)
        self.assertFalse(res.json()["success"])
