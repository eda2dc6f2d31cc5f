import random
from unittest import mock

from django.test import SimpleTestCase

from intersections import citations
from intersections.classifier import (
    ClassifierError,
    Rigidity,
    Status,
    case_row,
    classify,
    kreck_traving_applies,
    kreck_traving_primes,
    nu_p,
)
from intersections.invariants import Multidegree, SullivanData
from intersections.literal import parse_multidegree

EXAMPLE_A = "3^150,7^89,9^65,15,25^130"
EXAMPLE_B = "5^261,21^89,27^64"


def md(literal):
    return parse_multidegree(literal)


class ValuationTests(SimpleTestCase):

    def test_nu_p(self):
        self.assertEqual(nu_p(48, 2), 4)
        self.assertEqual(nu_p(48, 3), 1)
        self.assertEqual(nu_p(49, 2), 0)
        self.assertEqual(nu_p(1, 5), 0)

    def test_nu_p_rejects_bad_input(self):
        with self.assertRaises(ClassifierError):
            nu_p(10, 4)
        with self.assertRaises(ClassifierError):
            nu_p(0, 2)

    def test_kreck_traving_threshold_in_dimension_four(self):
        self.assertEqual(kreck_traving_primes(4), [(2, 6)])
        self.assertTrue(kreck_traving_applies(4, 64))
        self.assertTrue(kreck_traving_applies(4, 64 * 15))
        self.assertFalse(kreck_traving_applies(4, 32))
        self.assertFalse(kreck_traving_applies(4, 96))

    def test_kreck_traving_primes(self):
        self.assertEqual(kreck_traving_primes(5), [(2, 7), (3, 4)])
        self.assertEqual(kreck_traving_primes(6), [(2, 8), (3, 5)])
        with self.assertRaises(ClassifierError):
            kreck_traving_primes(2)


class CaseRowTests(SimpleTestCase):

    def test_spin_row(self):
        row = case_row(md("2"))
        self.assertEqual(row.rigidity, Rigidity.STRONGLY_THETA_FLEXIBLE)
        self.assertEqual(row.v2, 0)
        self.assertFalse(row.is_conjecture)
        self.assertEqual(row.treated_in, citations.THEOREM_1_7)

    def test_theta_rigid_rows(self):
        row = case_row(md("2,2"))
        self.assertEqual((row.v2, row.v4), (1, 0))
        self.assertEqual(row.rigidity, Rigidity.THETA_RIGID)
        self.assertEqual(row.treated_in, citations.REMARK_22)
        self.assertEqual(case_row(md("4,4")).treated_in, citations.THEOREM_1_9)

    def test_projective_space_is_conjectured_flexible(self):
        row = case_row(md("1"))
        self.assertEqual(row.rigidity, Rigidity.CONJECTURED_FLEXIBLE)
        self.assertTrue(row.is_conjecture)
        self.assertEqual(row.inertia, "0")
        self.assertEqual(row.p1_mod8, 3)
        self.assertEqual(row.sd_equal_rule, citations.THEOREM_1_12_B)
        self.assertTrue(any(citations.KASILINGAM in note for note in row.notes))

    def test_conjectured_rigid_row(self):
        row = case_row(md("2^4"))
        self.assertEqual((row.v2, row.v4), (1, 1))
        self.assertEqual(row.p1_mod8, 7)
        self.assertEqual(row.rigidity, Rigidity.CONJECTURED_RIGID)
        self.assertEqual(row.inertia, "Θ8")
        self.assertEqual(row.sd_equal_rule, citations.THEOREM_1_12_A)

    def test_conjecture_rows_have_p1_three_mod_four(self):
        rng = random.Random(3)
        for _ in range(150):
            degrees = tuple(rng.randint(1, 10) for _ in range(rng.randint(1, 7)))
            row = case_row(Multidegree(degrees))
            if row.is_conjecture:
                with self.subTest(degrees=degrees):
                    self.assertEqual(row.p1_mod8 % 4, 3)


class ClassifyTests(SimpleTestCase):

    def test_example_pair_is_diffeomorphic(self):
        verdict = classify(4, md(EXAMPLE_A), md(EXAMPLE_B))
        self.assertEqual(verdict.status, Status.DIFFEOMORPHIC)
        self.assertEqual(str(verdict), "Diffeomorphic (Theorem 1.2)")
        self.assertTrue(verdict.sd_equal)
        self.assertIsNotNone(verdict.case_row)

    def test_same_multidegree(self):
        verdict = classify(5, md("3,1,2"), md("2,3"))
        self.assertEqual(verdict.status, Status.DIFFEOMORPHIC)
        self.assertEqual(verdict.justification, citations.SAME_MULTIDEGREE)

    def test_different_data(self):
        verdict = classify(4, md("1"), md("2"))
        self.assertEqual(verdict.status, Status.NOT_DIFFEOMORPHIC)
        self.assertEqual(verdict.justification, citations.SC_CONVERSE)
        self.assertIn("grado total distinto (1 vs 2)", verdict.notes)

    def test_k3_surfaces_are_homeomorphic(self):
        family = ["4", "3,2", "2,2,2"]
        for i, a in enumerate(family):
            for b in family[i + 1:]:
                verdict = classify(2, md(a), md(b))
                with self.subTest(a=a, b=b):
                    self.assertEqual(verdict.status, Status.HOMEOMORPHIC_ONLY)
                    self.assertEqual(verdict.justification, citations.FREEDMAN)

    def test_surfaces_with_different_invariants(self):
        verdict = classify(2, md("1"), md("2"))
        self.assertEqual(verdict.status, Status.UNSUPPORTED)
        self.assertTrue(verdict.notes)

    def test_symmetry(self):
        rng = random.Random(9)
        for _ in range(40):
            a = Multidegree(tuple(rng.randint(1, 6) for _ in range(rng.randint(1, 4))))
            b = Multidegree(tuple(rng.randint(1, 6) for _ in range(rng.randint(1, 4))))
            n = rng.randint(2, 6)
            with self.subTest(a=a, b=b, n=n):
                self.assertEqual(classify(n, a, b), classify(n, b, a))

    def test_rejects_low_dimension(self):
        with self.assertRaises(ClassifierError):
            classify(1, md("2"), md("3"))

    def equal_data(self, n, d):
        return SullivanData(n=n, total_degree=d, pontryagin=tuple(range(1, n // 2 + 1)), euler=10)

    def test_threefolds(self):
        with mock.patch('intersections.classifier.sullivan_data', return_value=self.equal_data(3, 8)):
            verdict = classify(3, md("8"), md("4,2"))
        self.assertEqual(verdict.status, Status.DIFFEOMORPHIC)
        self.assertEqual(verdict.justification, citations.WALL_JUPP)

    def test_fang_wang_range(self):
        with mock.patch('intersections.classifier.sullivan_data', return_value=self.equal_data(6, 8)):
            verdict = classify(6, md("8"), md("4,2"))
        self.assertEqual(str(verdict), "HomeomorphicOnly (Fang–Wang)")

    def test_kreck_traving_range(self):
        d = 2 ** 7 * 3 ** 4
        with mock.patch('intersections.classifier.sullivan_data', return_value=self.equal_data(5, d)):
            verdict = classify(5, md("128,81"), md("64,162"))
        self.assertEqual(verdict.status, Status.DIFFEOMORPHIC)
        self.assertEqual(verdict.justification, citations.KRECK_TRAVING)

    def test_high_dimension_is_conjectural(self):
        with mock.patch('intersections.classifier.sullivan_data', return_value=self.equal_data(8, 8)):
            verdict = classify(8, md("8"), md("4,2"))
        self.assertEqual(verdict.status, Status.SD_EQUAL_CONJECTURAL)
        self.assertEqual(verdict.justification, citations.SD_EQUAL)
