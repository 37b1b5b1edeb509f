"""Tests for app.py"""

import argparse
import contextlib
import io
import logging
import os
import sys
import textwrap
import unittest

from vectpol import app
from vectpol.test_data import hooks


def munge_expected(old_s: str) -> str:
    """Modify a multiple line string in a standard way.

    * Run through textwrap.dedent()
    * Strip leading newline
    """
    return textwrap.dedent(old_s).lstrip()


class DocstringTest(unittest.TestCase):

    def test_summary_only(self):
        """Bracket two fields."""

        doc = app.Docstring(self.test_summary_only, 80)

        self.assertEqual('Bracket two fields.', doc.summary)
        self.assertEqual('Bracket two fields.', doc.description)

    def test_no_docstring(self):
        doc = app.Docstring(self.test_no_docstring, 80)

        self.assertEqual('', doc.summary)
        self.assertEqual('', doc.description)

    def test_docstring(self):
        """Decide whether a subalgebra is maximal.

        Reports the conditions of the maximality criterion and, when one
        fails, a witness.

        Witnesses are truncated.
        """

    def test_reflow(self):
        doc = app.Docstring(self.test_docstring, 40)

        expected = munge_expected(
            """
            Decide whether a subalgebra is maximal.

            Reports the conditions of the maximality
            criterion and, when one fails, a
            witness.

            Witnesses are truncated.
            """
        ).rstrip('\n')
        self.assertEqual(
            'Decide whether a subalgebra is maximal.', doc.summary
        )
        self.assertEqual(expected, doc.description)

    def test_missing_blank_line_after_summary(self):
        """Split a field.
        Into homogeneous parts.
        """

        doc = app.Docstring(self.test_missing_blank_line_after_summary, 80)

        self.assertEqual('Split a field.', doc.summary)
        self.assertEqual(
            'Split a field.\n\nInto homogeneous parts.', doc.description
        )

    def test_extra_blank_lines(self):
        """Close under bracket.



        Stops at the caps.


        """

        doc = app.Docstring(self.test_extra_blank_lines, 80)

        self.assertEqual(
            'Close under bracket.\n\nStops at the caps.', doc.description
        )


class BaseApp(unittest.TestCase):
    """Handle cases common to mucking around with a singleton."""

    def setUp(self):
        self.maxDiff = None  # pylint: disable=invalid-name

        os.environ['COLUMNS'] = '61'
        os.environ['ROWS'] = '24'

        root_logger = logging.getLogger()
        orig_handlers = root_logger.handlers.copy()
        orig_level = root_logger.level

        def restore_logger():
            for hdlr in root_logger.handlers:
                if hdlr not in orig_handlers:
                    hdlr.close()
            root_logger.handlers = orig_handlers
            root_logger.level = orig_level

        self.addCleanup(restore_logger)

        self.mee = self.id().split('.')[-1]
        orig_sys_argv0 = sys.argv[0]

        def restore_sys_argv0():
            sys.argv[0] = orig_sys_argv0

        self.addCleanup(restore_sys_argv0)
        sys.argv[0] = self.mee

        self.stdout = io.StringIO()
        self.stderr = io.StringIO()

    def run_app(self, my_app: app.ArgparseApp, argv: list[str]) -> int:
        with contextlib.redirect_stdout(
                self.stdout), contextlib.redirect_stderr(self.stderr):
            return my_app.run(argv)


class PropertiesTest(BaseApp):

    def setUp(self):
        super().setUp()
        self.my_app = app.ArgparseApp()

    def test_appname(self):
        self.assertEqual('test_appname', self.my_app.appname)

    def test_prog(self):
        self.assertEqual('vectpol', app.ArgparseApp(prog='vectpol').appname)

    def test_subparser(self):
        self.assertIsInstance(self.my_app.subparser, app.SubParser)
        self.assertIs(self.my_app.subparser, self.my_app.subparser)

    def test_width(self):
        self.assertEqual(61, self.my_app.width)

    def test_dirs(self):
        self.assertEqual(
            app.platformdirs.user_log_dir('test_dirs'),
            self.my_app.dirs.user_log_dir
        )

    def test_description_from_module(self):
        my_app = app.ArgparseApp(use_docstring_for_description=hooks)

        self.assertEqual(
            'A module with every ArgparseApp hook, for app_test.py.',
            my_app.parser.description
        )

    def test_log_mgr(self):
        app.ArgparseApp(use_log_mgr=True)

        self.assertTrue(app.log_mgr.active_handler())


class SharedParserTest(BaseApp):

    def setUp(self):
        super().setUp()
        self.my_app = app.ArgparseApp()

    def test_new(self):
        self.assertIsInstance(
            self.my_app.new_shared_parser('space'), argparse.ArgumentParser
        )
        self.assertIsNone(self.my_app.new_shared_parser('space'))

    def test_safe_new(self):
        self.my_app.safe_new_shared_parser('space')

        with self.assertRaises(app.ExistingParser):
            self.my_app.safe_new_shared_parser('space')

    def test_get(self):
        parser = self.my_app.safe_new_shared_parser('caps')

        self.assertIs(parser, self.my_app.get_shared_parser('caps'))
        self.assertIsNone(self.my_app.get_shared_parser('witness'))
        with self.assertRaises(app.MissingParser):
            self.my_app.safe_get_shared_parser('witness')


class RunTest(BaseApp):

    def setUp(self):
        super().setUp()
        self.my_app = app.ArgparseApp(handled_errors=(hooks.Error,))
        modules = (hooks,)
        self.my_app.register_global_flags(modules)
        self.my_app.register_shared_flags(modules)
        self.my_app.register_commands(modules)

    def test_no_command(self):
        retcode = self.run_app(self.my_app, [])

        expected = munge_expected(
            """
            usage: test_no_command [-h] [--exact] <command> ...

            Global flags:
              -h, --help
              --exact     Never round.

            Commands:
              For more details: test_no_command <command> --help

              <command>   <command description>
                count     Dimension of Vect_p.
                refuse    Always fails with a handled error.
                tools     Wrapper for other commands.
            """
        )
        self.assertEqual(expected, self.stdout.getvalue())
        self.assertEqual('', self.stderr.getvalue())
        self.assertEqual(os.EX_USAGE, retcode)

    def test_command(self):
        retcode = self.run_app(self.my_app, ['count', '1'])

        self.assertEqual(0, retcode)
        self.assertEqual('inexact 6\n', self.stdout.getvalue())

    def test_global_and_shared_flags(self):
        retcode = self.run_app(
            self.my_app, ['--exact', 'count', '-n', '3', '0']
        )

        self.assertEqual(0, retcode)
        self.assertEqual('exact 9\n', self.stdout.getvalue())

    def test_command_help(self):
        with self.assertRaises(SystemExit):
            self.run_app(self.my_app, ['count', '-h'])

        self.assertIn('Counts the monomial fields', self.stdout.getvalue())

    def test_handled_error(self):
        retcode = self.run_app(self.my_app, ['refuse'])

        self.assertEqual(app.constants.EXIT_ERROR, retcode)
        self.assertEqual('', self.stdout.getvalue())
        self.assertEqual(
            'test_handled_error: Error: refused with n=None\n',
            self.stderr.getvalue()
        )

    def test_unhandled_error(self):
        with self.assertRaises(KeyError):
            self.run_app(self.my_app, ['tools', 'crash'])

    def test_usage_only(self):
        retcode = self.run_app(self.my_app, ['tools'])

        self.assertEqual(os.EX_USAGE, retcode)
        self.assertIn('crash', self.stdout.getvalue())

    def test_fallback(self):

        def fallback(args):
            print('fallback saw', args.note)
            return 42

        self.my_app.parser.set_defaults(func=fallback)

        self.assertEqual(42, self.run_app(self.my_app, []))
        self.assertEqual('fallback saw inexact\n', self.stdout.getvalue())

    def test_failing_hook(self):

        def refuse_exact(args):
            if args.exact:
                raise hooks.Error('no exact today')

        self.my_app.register_after_parse_hook(refuse_exact)

        retcode = self.run_app(self.my_app, ['--exact', 'count', '1'])

        self.assertEqual(app.constants.EXIT_ERROR, retcode)
        self.assertEqual('', self.stdout.getvalue())
        self.assertIn('no exact today', self.stderr.getvalue())


if __name__ == '__main__':
    unittest.main()
