import itertools
import json
import math

import numpy as np
from django.test import SimpleTestCase, TestCase
from pydantic import ValidationError
from rest_framework.test import APIClient

from measures.services.params import ALPHA_MIN
from states.services.errors import DomainError
from states.services.states import acin_state, basis_state, example_params
from states.testing import check_unittest

from .models import SweepRun
from .services.families import Family, family_margin, lemma2_margin_decomposed, state_margin
from .services.storage import save_report
from .services.sweeps import (
    AxisSpec,
    SweepSpec,
    _Accumulator,
    refine_near_equality,
    run_state_check,
    run_sweep,
)


class FamilyMarginTests(SimpleTestCase):
    def test_lemma5_closed_form(self):
        h = 1 / math.sqrt(2)
        margin = family_margin("Lemma5", {"x": h, "y": h, "alpha": 2, "mu": 1})
        # f_2(1) - 2 f_2(1/√2) = 1 - 2(1 - log2 1.5)
        self.assertAlmostEqual(margin, 1 - 2 * (1 - math.log2(1.5)), places=12)
        self.assertAlmostEqual(margin, 0.169925, places=6)

    def test_equality_edges(self):
        self.assertAlmostEqual(family_margin("Lemma1", {"x": 0, "mu": 2.5}), 0.0, places=14)
        self.assertAlmostEqual(family_margin("Lemma1", {"x": 1, "mu": 2.5}), 0.0, places=12)
        for fam, extra in [("Lemma5", {"alpha": 3, "mu": 2}), ("Lemma6", {"alpha": 1.5, "gamma": 3}),
                           ("Lemma2", {"q": 2.5, "mu": 2})]:
            self.assertAlmostEqual(family_margin(fam, {"x": 0.6, "y": 0, **extra}), 0.0, places=12)

    def test_domain(self):
        with self.assertRaises(DomainError):
            family_margin("Lemma5", {"x": 0.2, "y": 0.5, "alpha": 2, "mu": 1})
        with self.assertRaises(DomainError):
            family_margin("Lemma5", {"x": 0.9, "y": 0.8, "alpha": 2, "mu": 1})
        with self.assertRaises(DomainError):
            family_margin("Lemma6", {"x": 0.5, "y": 0.1, "alpha": 2, "gamma": 2})
        with self.assertRaises(DomainError):
            family_margin("Lemma1", {"x": 0.5})
        with self.assertRaises(DomainError):
            family_margin("CKW", {})
        with self.assertRaises(DomainError):
            Family.parse("lemma9")

    def test_parse_is_case_insensitive(self):
        self.assertIs(Family.parse("lemma1"), Family.LEMMA1)
        self.assertIs(Family.parse("ckw"), Family.CKW)
        self.assertTrue(Family.REMARK3.state_level)
        self.assertFalse(Family.GQ_SUPER.state_level)

    def test_lemma2_decomposition_agrees(self):
        xs = np.linspace(0, 1, 15)

        def ok(point):
            x, y, q, mu = point
            if x < y or x * x + y * y > 1:
                return True
            direct = family_margin("Lemma2", {"x": x, "y": y, "q": q, "mu": mu})
            return abs(direct - lemma2_margin_decomposed(x, y, q, mu)) <= 1e-12

        check_unittest(self, ok, itertools.product(xs, xs, (2.0, 2.5, 3.0), (1.0, 2.0, 3.5)))


class SweepTests(SimpleTestCase):
    def test_lemma1_default_grid(self):
        report = run_sweep(SweepSpec(family="Lemma1"))
        self.assertEqual(report.points_checked, 200 * 200)
        self.assertGreaterEqual(report.min_margin, -1e-12)
        self.assertTrue(report.passed)
        x, mu = report.argmin
        # x ∈ {0, 1} 또는 μ = 1 에서 등호
        self.assertTrue(x in (0.0, 1.0) or mu == 1.0, report.argmin)

    def test_gq_linear_at_two(self):
        spec = SweepSpec(family="GqSuper", axes={"q": AxisSpec(min=2, max=2, steps=2)})
        report = run_sweep(spec)
        self.assertLessEqual(abs(report.min_margin), 1e-12)
        self.assertTrue(report.passed)

    def test_families_have_no_violations(self):
        small = {"x": AxisSpec(min=0, max=1, steps=21), "y": AxisSpec(min=0, max=1, steps=21)}
        specs = [
            SweepSpec(family="GqSuper", axes=small),
            SweepSpec(family="FalphaAdd", axes=small),
            SweepSpec(family="FalphaSqAdd", axes=small),
            SweepSpec(family="Lemma2", axes=small, random_samples=200, seed=3),
            SweepSpec(family="Lemma5", axes=small, random_samples=200, seed=4),
            SweepSpec(family="Lemma6", axes=small, random_samples=200, seed=5),
        ]
        for spec in specs:
            report = run_sweep(spec)
            self.assertTrue(report.passed, spec.family)
            self.assertGreaterEqual(report.min_margin, -1e-12, spec.family)

    def test_default_grids_have_no_violations(self):
        for family in Family:
            if family.state_level:
                continue
            report = run_sweep(SweepSpec(family=family))
            self.assertEqual(report.violations, [], family.value)
            self.assertGreaterEqual(report.min_margin, -1e-12, family.value)
            if family is Family.LEMMA1:
                self.assertEqual(report.points_checked, 200 * 200)

    def test_deterministic(self):
        spec = SweepSpec(family="Lemma5", axes={"x": AxisSpec(min=0, max=1, steps=11)}, random_samples=30, seed=9)
        self.assertEqual(run_sweep(spec).to_json(), run_sweep(spec).to_json())

    def test_rejection_sampling(self):
        base = SweepSpec(family="GqSuper", axes={"q": AxisSpec(min=2, max=3, steps=2)})
        sampled = base.model_copy(update={"random_samples": 50, "seed": 1})
        self.assertEqual(run_sweep(sampled).points_checked - run_sweep(base).points_checked, 50)

    def test_json_shape(self):
        report = run_sweep(SweepSpec(family="Lemma1", axes={"x": AxisSpec(min=0, max=1, steps=5),
                                                            "mu": AxisSpec(min=1, max=2, steps=3)}))
        payload = json.loads(report.to_json())
        self.assertEqual(set(payload), {"family", "points", "min_margin", "argmin", "violations"})
        self.assertEqual(payload["family"], "Lemma1")
        self.assertEqual(payload["points"], 15)
        self.assertEqual(len(payload["argmin"]), 2)

    def test_spec_errors(self):
        with self.assertRaises(DomainError):
            run_sweep(SweepSpec(family="Lemma1", axes={"mu": AxisSpec(min=0.5, max=4, steps=10)}))
        with self.assertRaises(DomainError):
            run_sweep(SweepSpec(family="Lemma1", axes={"q": AxisSpec(min=2, max=3, steps=10)}))
        with self.assertRaises(DomainError):
            run_sweep(SweepSpec(family="FalphaSqAdd", axes={"alpha": AxisSpec(min=1.5, max=2, steps=3)}))
        with self.assertRaises(DomainError):
            run_sweep(SweepSpec(family="CKW"))
        with self.assertRaises(ValidationError):
            AxisSpec(min=0, max=1, steps=1)
        with self.assertRaises(ValidationError):
            AxisSpec(min=1, max=0, steps=3)
        with self.assertRaises(ValidationError):
            SweepSpec(family="Lemma1", tolerance=0)

    def test_accumulator(self):
        acc = _Accumulator(1e-12)
        acc.add((0.0,), 0.5)
        acc.add((1.0,), -1e-13)
        acc.add((2.0,), -1e-3)
        acc.add((0.5,), -1e-3)
        with self.assertLogs("verify.services.sweeps", level="WARNING"):
            report = acc.report(Family.LEMMA1, ("x",), {})
        self.assertEqual(report.argmin, (0.5,))
        self.assertEqual(report.min_margin, -1e-3)
        self.assertEqual(len(report.violations), 2)
        self.assertFalse(report.passed)

    def test_refine(self):
        report = run_sweep(SweepSpec(family="Lemma1", axes={"x": AxisSpec(min=0, max=1, steps=41),
                                                            "mu": AxisSpec(min=1, max=4, steps=31)}))
        refined = refine_near_equality(report, 4)
        self.assertGreaterEqual(refined.min_margin, -1e-12)
        self.assertLessEqual(refined.min_margin, report.min_margin + 1e-12)
        self.assertTrue(refined.passed)
        with self.assertRaises(DomainError):
            refine_near_equality(report, 0)

    def test_refine_factor_one(self):
        spec = SweepSpec(family="Lemma5", axes={"x": AxisSpec(min=0, max=1, steps=11),
                                                "y": AxisSpec(min=0, max=1, steps=11)})
        report = run_sweep(spec)
        once = refine_near_equality(report, 1)
        self.assertTrue(once.passed)
        self.assertLessEqual(once.min_margin, report.min_margin + 1e-12)


class StateCheckTests(SimpleTestCase):
    def test_ckw(self):
        report = run_state_check("CKW", n_states=1000, seed=7)
        self.assertEqual(report.points_checked, 1000)
        self.assertGreaterEqual(report.min_margin, -1e-9)
        self.assertTrue(report.passed)

    def test_remarks(self):
        for family, combos in [("Remark1", 12), ("Remark2", 8), ("Remark3", 6)]:
            report = run_state_check(family, n_states=1000, seed=11)
            self.assertEqual(report.points_checked, 1000 * combos, family)
            self.assertTrue(report.passed, family)
            self.assertGreaterEqual(report.min_margin, -1e-9, family)

    def test_example_state_margins(self):
        state = acin_state(example_params())
        self.assertAlmostEqual(state_margin("Remark1", state, 2, 1), 0.0, delta=1e-9)
        self.assertAlmostEqual(state_margin("Remark2", state, 2, 2), 0.2900493656, delta=1e-8)
        self.assertAlmostEqual(state_margin("Remark3", state, ALPHA_MIN, 4), 0.9709190944 - 0.6946244040, delta=1e-8)
        self.assertAlmostEqual(state_margin("CKW", basis_state("000")), 0.0, places=12)

    def test_progress_and_params(self):
        ticks = []
        report = run_state_check("Remark2", n_states=5, seed=1, params={"mu": [2]}, progress=ticks.append)
        self.assertEqual(ticks, [1] * 5)
        self.assertEqual(report.points_checked, 10)
        self.assertEqual(report.axes, ("state", "alpha", "mu"))

    def test_errors(self):
        with self.assertRaises(DomainError):
            run_state_check("Remark1", n_states=3, params={"q": [4.0]})
        with self.assertRaises(DomainError):
            run_state_check("Remark2", n_states=3, params={"alpha": [1.5]})
        with self.assertRaises(DomainError):
            run_state_check("Remark3", n_states=3, params={"alpha": [2.0]})
        with self.assertRaises(ValidationError):
            run_state_check("Remark1", n_states=3, params={"eta": [0.5]})
        with self.assertRaises(DomainError):
            run_state_check("Remark1", n_states=3, params={"gamma": [2]})
        with self.assertRaises(DomainError):
            run_state_check("CKW", n_states=0)
        with self.assertRaises(DomainError):
            run_state_check("Lemma1", n_states=3)

    def test_state_report_is_not_refined(self):
        report = run_state_check("CKW", n_states=3, seed=2)
        self.assertIs(refine_near_equality(report, 3), report)


class SweepRunApiTests(TestCase):
    def setUp(self):
        self.client = APIClient()
        spec = SweepSpec(family="Lemma1", axes={"x": AxisSpec(min=0, max=1, steps=5),
                                                "mu": AxisSpec(min=1, max=2, steps=3)})
        self.run = save_report(run_sweep(spec))

    def test_saved_fields(self):
        self.assertEqual(SweepRun.objects.count(), 1)
        self.assertEqual(self.run.family, "Lemma1")
        self.assertEqual(self.run.points, 15)
        self.assertTrue(self.run.passed)
        self.assertEqual(self.run.spec["family"], "Lemma1")
        self.assertEqual(len(self.run.argmin), 2)

    def test_list(self):
        res = self.client.get("/api/verify/runs/")
        self.assertEqual(res.status_code, 200)
        body = res.json()
        self.assertTrue(body["success"])
        self.assertEqual(body["data"]["count"], 1)
        self.assertEqual(body["data"]["items"][0]["family"], "Lemma1")

    def test_filters(self):
        self.assertEqual(self.client.get("/api/verify/runs/?family=ckw").json()["data"]["count"], 0)
        self.assertEqual(self.client.get("/api/verify/runs/?family=lemma1&passed=true").json()["data"]["count"], 1)
        res = self.client.get("/api/verify/runs/?family=nope")
        self.assertEqual(res.status_code, 400)
        self.assertFalse(res.json()["success"])
