import importlib
import json
import os
from io import StringIO
from unittest import mock

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from jsonschema import validate

import gvmsite.settings
from gvm.exceptions import InputError
from gvm.services.emitters import SCHEMAS, json_schema


class CommandTestCase(SimpleTestCase):
    """Runs management commands in-process and captures their output."""

    def run_command(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return out.getvalue()

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as context:
            self.run_command(*args)
        self.assertEqual(context.exception.returncode, code)
        return context.exception


class RootSystemCommandTests(CommandTestCase):

    def test_json_summary(self):
        payload = json.loads(self.run_command('rootsys', '--type', 'E6', '--format', 'json'))
        self.assertEqual(payload['rank'], 6)
        self.assertEqual(payload['positive_roots'], 36)
        self.assertEqual(payload['weyl_order'], 51840)

    def test_bad_label_is_an_input_error(self):
        self.assertExitCode(2, 'rootsys', '--type', 'X9')


class WeightCommandTests(CommandTestCase):

    def test_dimension(self):
        payload = json.loads(self.run_command('weights', '--type', 'F4', '--pi', 'fund:0,0,0,1',
                                              '--format', 'json'))
        self.assertEqual(payload['dim'], 26)

    def test_poset_as_dot(self):
        output = self.run_command('weights', '--type', 'G2', '--poset', '--format', 'dot')
        self.assertTrue(output.startswith('digraph weights'))

    def test_non_dominant_weight_is_a_precondition_error(self):
        self.assertExitCode(3, 'weights', '--type', 'G2', '--pi', 'fund:1,-1')


class MinPolyCommandTests(CommandTestCase):

    def test_g2_degree(self):
        payload = json.loads(self.run_command('minpoly', '--type', 'G2', '--theta', '1', '--format', 'json'))
        self.assertEqual(payload['degree'], 3)
        self.assertEqual(payload['variables'], [2])
        self.assertEqual(len(payload['factors']), 3)

    def test_full_theta_is_a_precondition_error(self):
        self.assertExitCode(3, 'minpoly', '--type', 'G2', '--theta', '1,2')

    def test_missing_theta_is_an_input_error(self):
        self.assertExitCode(2, 'minpoly', '--type', 'G2')

    def test_modes_are_exclusive(self):
        self.assertExitCode(2, 'minpoly', '--type', 'G2', '--theta', '1', '--lambda', '1', '--classical')

    def test_closed_form_mode(self):
        output = self.run_command('minpoly', '--type', 'A3', '--theta', '2', '--kind', 'minuscule')
        self.assertIn('x', output)

    def test_latex_output(self):
        output = self.run_command('minpoly', '--type', 'G2', '--theta', '1', '--format', 'latex')
        self.assertIn(r'\lambda', output)


class CharPolyCommandTests(CommandTestCase):

    def test_rho_check(self):
        payload = json.loads(self.run_command('charpoly', '--type', 'G2', '--check-rho', '--format', 'json'))
        self.assertEqual(payload['degree'], 7)

    def test_generation(self):
        payload = json.loads(self.run_command('charpoly', '--type', 'G2', '--generation', '--format', 'json'))
        self.assertTrue(payload['independent'])


class CertifyCommandTests(CommandTestCase):

    def test_gl_certificate(self):
        output = self.run_command('certify', '--type', 'gl4', '--blocks', '2,4', '--lambda', '0,0')
        self.assertIn('certified', output)
        self.assertNotIn('not_certified', output)

    def test_gl_certificate_as_json(self):
        payload = json.loads(self.run_command('certify', '--type', 'gl4', '--blocks', '2,4',
                                              '--lambda', '0,0', '--format', 'json'))
        self.assertEqual(payload['verdict'], 'certified')
        self.assertEqual(payload['theta'], [1, 3])

    def test_linkage_rule(self):
        payload = json.loads(self.run_command('certify', '--type', 'gl3', '--blocks', '1,3', '--lambda', '1,0',
                                              '--rule', 'linkage', '--format', 'json'))
        self.assertTrue(payload['holds'])

    def test_linkage_rule_needs_gl(self):
        self.assertExitCode(2, 'certify', '--type', 'B3', '--blocks', '1,3', '--lambda', '0,0',
                            '--rule', 'linkage')

    def test_recursion_rule(self):
        payload = json.loads(self.run_command('certify', '--rule', 'recursion', '--k', '3', '--ell', '2',
                                              '--format', 'json'))
        self.assertTrue(payload['exact'])

    def test_recursion_rule_needs_indices(self):
        self.assertExitCode(2, 'certify', '--rule', 'recursion', '--k', '3')

    def test_missing_lambda(self):
        self.assertExitCode(2, 'certify', '--type', 'gl4', '--blocks', '2,4')


class OrbitCommandTests(CommandTestCase):

    def test_g2_orbit(self):
        payload = json.loads(self.run_command('orbit', '--type', 'G2', '--theta', '1', '--format', 'json'))
        self.assertEqual(len(payload['points']), 6)

    def test_limit_flag_bounds_the_enumeration(self):
        self.assertExitCode(3, 'orbit', '--type', 'G2', '--theta', '1', '--limit', '5')

    def test_environment_does_not_move_the_limit(self):
        with mock.patch.dict(os.environ, {'GVM_WEYL_ENUMERATION_LIMIT': '1'}):
            module = importlib.reload(gvmsite.settings)
        self.assertEqual(module.GVM_WEYL_ENUMERATION_LIMIT, 100000)
        importlib.reload(gvmsite.settings)
        payload = json.loads(self.run_command('orbit', '--type', 'G2', '--theta', '1', '--format', 'json'))
        self.assertEqual(len(payload['points']), 6)


class TablesCommandTests(CommandTestCase):

    def test_g2_tables(self):
        output = self.run_command('tables', '--family', 'G2', '--workers', '1')
        self.assertIn('all tables match', output)

    def test_family_or_all(self):
        self.assertExitCode(2, 'tables')


class JsonSchemaTests(CommandTestCase):
    """Every shipped schema accepts what the matching command prints."""

    def assertMatchesSchema(self, name, *args):
        payload = json.loads(self.run_command(*args, '--format', 'json'))
        validate(instance=payload, schema=json_schema(name))
        for key in json_schema(name)['required']:
            self.assertIn(key, payload)
        return payload

    def test_factored_poly(self):
        payload = self.assertMatchesSchema('factored_poly', 'minpoly', '--type', 'G2', '--theta', '1')
        self.assertEqual(sum(factor['mult'] for factor in payload['factors']), 3)

    def test_weight_system(self):
        payload = self.assertMatchesSchema('weight_system', 'weights', '--type', 'G2', '--pi', 'fund:1,0')
        self.assertEqual(payload['dim'], 7)

    def test_branching(self):
        payload = self.assertMatchesSchema('branching', 'branch', '--type', 'B3', '--theta', '1,2')
        self.assertEqual(payload['theta'], [1, 2])

    def test_gap_certificate(self):
        payload = self.assertMatchesSchema('gap_certificate', 'certify', '--type', 'gl4', '--blocks', '2,4',
                                           '--lambda', '0,0')
        self.assertEqual(payload['verdict'], 'certified')

    def test_every_schema_is_shipped(self):
        self.assertEqual(sorted(SCHEMAS), sorted(p.stem for p in settings.GVM_SCHEMAS_DIR.glob('*.json')))

    def test_unknown_schema(self):
        with self.assertRaises(InputError):
            json_schema('orbit')
