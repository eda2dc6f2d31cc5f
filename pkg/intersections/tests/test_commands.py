import json
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from intersections.invariants import sullivan_data
from intersections.literal import parse_multidegree
from intersections.records import sullivan_data_from_record

EXAMPLE_A = "3^150,7^89,9^65,15,25^130"
EXAMPLE_B = "5^261,21^89,27^64"


class CommandTestMixin:

    def run_command(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return out.getvalue()

    def run_json(self, *args):
        record = json.loads(self.run_command(*args))
        self.assertEqual(record['schema'], 1)
        return record

    def assertExitCode(self, code, *args):
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command(*args, stdout=out)
        self.assertEqual(ctx.exception.returncode, code)
        return out.getvalue()


class SdCommandTests(CommandTestMixin, SimpleTestCase):

    def test_projective_space(self):
        record = self.run_json('sd', '4', '1')
        self.assertEqual(record['command'], 'sd')
        self.assertEqual(record['sullivan'], {'n': 4, 'd': '1', 'pontryagin': ['-5', '10'], 'euler': '5'})
        self.assertEqual((record['wu']['v2'], record['wu']['v4']), (1, 1))
        self.assertEqual(record['case_row']['rigidity'], {'value': 'ConjecturedFlexible', 'conjecture': True})

    def test_spin_quadric(self):
        record = self.run_json('sd', '4', '2')
        self.assertEqual(record['wu']['v2'], 0)
        self.assertTrue(record['wu']['spin'])

    def test_example_pair_records_agree(self):
        a = self.run_json('sd', '4', EXAMPLE_A)
        b = self.run_json('sd', '4', EXAMPLE_B)
        self.assertEqual(a['sullivan'], b['sullivan'])
        self.assertEqual(a['wu'], b['wu'])
        self.assertTrue(all(isinstance(p, str) for p in a['sullivan']['pontryagin']))

    def test_record_round_trip(self):
        record = self.run_json('sd', '6', '3^4,2')
        expected = sullivan_data(6, parse_multidegree('3^4,2'))
        self.assertEqual(sullivan_data_from_record(record['sullivan']), expected)
        self.assertNotIn('wu', record)

    def test_classical_signs(self):
        record = self.run_json('sd', '4', '1', '--classical-signs')
        self.assertEqual(record['sullivan']['pontryagin_classical'], ['5', '10'])

    def test_output_is_byte_stable(self):
        self.assertEqual(self.run_command('sd', '4', EXAMPLE_A), self.run_command('sd', '4', EXAMPLE_A))

    def test_table_format(self):
        output = self.run_command('sd', '4', '1', '--format', 'table')
        self.assertIn('sullivan.euler', output)
        self.assertIn('schema', output)

    def test_parse_error(self):
        self.assertExitCode(1, 'sd', '4', '3,,2')
        self.assertExitCode(1, 'sd', '0', '3')
        self.assertExitCode(1, 'sd', '4', '9' * 5000)

    def test_usage_error(self):
        self.assertExitCode(1, 'sd', '4')
        self.assertExitCode(1, 'sd', 'cuatro', '3')
        self.assertExitCode(1, 'sd', '4', '3', '--format', 'xml')


class ClassifyCommandTests(CommandTestMixin, SimpleTestCase):

    def test_example_pair(self):
        record = self.run_json('classify', '4', EXAMPLE_A, EXAMPLE_B)
        self.assertEqual(record['verdict']['verdict'], 'Diffeomorphic (Theorem 1.2)')
        self.assertTrue(record['verdict']['sd_equal'])
        self.assertIn('case_row', record['verdict'])

    def test_different_data(self):
        record = self.run_json('classify', '4', '1', '2')
        self.assertEqual(record['verdict']['status'], 'NotDiffeomorphic')
        self.assertFalse(record['verdict']['conjecture'])

    def test_emitted_data_reproduces_verdict(self):
        record = self.run_json('classify', '4', EXAMPLE_A, EXAMPLE_B)
        a = sullivan_data_from_record(record['a']['sullivan'])
        b = sullivan_data_from_record(record['b']['sullivan'])
        self.assertEqual(a == b, record['verdict']['sd_equal'])

    def test_k3_pair(self):
        record = self.run_json('classify', '2', '4', '2^3')
        self.assertEqual(record['verdict']['status'], 'HomeomorphicOnly')

    def test_low_dimension(self):
        self.assertExitCode(1, 'classify', '1', '2', '3')


class RigidityCommandTests(CommandTestMixin, SimpleTestCase):

    def test_rows(self):
        expected = {
            '2,2': ('ThetaRigid', False),
            '2': ('StronglyThetaFlexible', False),
            '1': ('ConjecturedFlexible', True),
        }
        for literal, (rigidity, conjecture) in expected.items():
            record = self.run_json('rigidity', literal)
            with self.subTest(literal=literal):
                self.assertEqual(record['case_row']['rigidity']['value'], rigidity)
                self.assertEqual(record['case_row']['rigidity']['conjecture'], conjecture)
                self.assertEqual(record['case_row']['inertia']['conjecture'], conjecture)


class SearchCommandTests(CommandTestMixin, SimpleTestCase):

    def test_total_degree_listing(self):
        record = self.run_json('search', '4', '--total-degree', '8', '--max-k', '3', '--list')
        self.assertEqual(record['multidegrees'], ['8', '4,2', '2^3'])
        self.assertTrue(record['complete'])
        self.assertIn('disclaimer', record)

    def test_small_box(self):
        record = self.run_json('search', '4', '--max-degree', '6', '--max-k', '3')
        self.assertEqual(record['stats']['enumerated'], 56)
        self.assertEqual(record['search']['max_degree'], 6)
        self.assertNotIn('shard_count', record['search'])

    def test_byte_identical_across_shards(self):
        outputs = {
            self.run_command('search', '3', '--max-degree', '4', '--max-k', '2', '--shards', shards)
            for shards in ('1', '2', '8')
        }
        self.assertEqual(len(outputs), 1)

    def test_guard_limit(self):
        output = self.assertExitCode(2, 'search', '4', '--max-degree', '6', '--max-k', '3', '--limit', '5')
        record = json.loads(output)
        self.assertFalse(record['complete'])
        self.assertEqual(record['stats']['limit'], 5)

    def test_invalid_box(self):
        self.assertExitCode(1, 'search', '2', '--max-degree', '4')
        self.assertExitCode(1, 'search', '4')


class LedgerCommandTests(CommandTestMixin, SimpleTestCase):

    def test_verify(self):
        record = self.run_json('ledger', 'verify')
        self.assertEqual(record['final_group'], 'ℤ/4')
        self.assertTrue(record['passed'])
        self.assertEqual(len(record['steps']), 6)
        self.assertTrue(all(step['status'] == 'pass' for step in record['steps']))

    def test_counterfactual(self):
        record = self.run_json('ledger', 'verify', '--counterfactual', 'split-bracket')
        self.assertEqual(record['final_group'], 'ℤ/2⊕ℤ/2')
        self.assertEqual(record['counterfactual'], 'split-bracket')

    def test_corrupt_ledger(self):
        handle, path = tempfile.mkstemp(suffix='.json')
        with os.fdopen(handle, 'w') as fh:
            fh.write('{roto')
        self.addCleanup(os.remove, path)
        output = self.assertExitCode(2, 'ledger', 'verify', '--ledger', path)
        record = json.loads(output)
        self.assertFalse(record['passed'])
        self.assertEqual(record['steps'][0]['status'], 'fail')

    def test_unknown_action(self):
        self.assertExitCode(1, 'ledger', 'replay')
