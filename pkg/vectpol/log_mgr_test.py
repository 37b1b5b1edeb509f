"""Tests for log_mgr.py"""

import contextlib
import io
import logging
import os
import pathlib
import sys
import tempfile
import unittest

from vectpol import app
from vectpol import log_mgr


def setUpModule():
    """Set up a new temp directory due to lots of log files."""
    orig_dir = tempfile.tempdir

    def restore_tempdir():
        tempfile.tempdir = orig_dir

    unittest.addModuleCleanup(restore_tempdir)

    tempfile.tempdir = tempfile.mkdtemp()


class BaseLogging(unittest.TestCase):
    """Handle cases common to mucking around with the root logger."""

    def setUp(self):
        self.mee = self.id().split('.')[-1]
        os.environ['COLUMNS'] = '60'

        logger = logging.getLogger()
        orig_handlers = logger.handlers.copy()
        orig_level = logger.level

        def restore_logger():
            for hdlr in logger.handlers:
                if hdlr not in orig_handlers:
                    hdlr.close()
            logger.handlers = orig_handlers
            logger.level = orig_level

        self.addCleanup(restore_logger)

        orig_sys_argv0 = sys.argv[0]

        def restore_sys_argv0():
            sys.argv[0] = orig_sys_argv0

        self.addCleanup(restore_sys_argv0)
        sys.argv[0] = self.mee


class LogHandlerTest(BaseLogging):

    def test_names(self):
        handler = log_mgr.LogHandler(self.mee, 'some/dir')

        self.assertEqual(f'{self.mee}.log', handler.short_filename)
        # app.log.host.user.date-time.pid
        self.assertRegex(
            handler.long_filename,
            fr'^{self.mee}\.log\..+\..+\.\d{{8}}-\d{{6}}\.\d+$'
        )
        self.assertEqual(
            pathlib.Path('some/dir', handler.short_filename).absolute(),
            handler.symlink_path
        )
        self.assertEqual(
            str(pathlib.Path('some/dir', handler.long_filename).absolute()),
            handler.baseFilename
        )

    def test_move_before_open(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            handler = log_mgr.LogHandler(self.mee, 'never/created')
            handler.output_dir = tmpdir

            handler.emit(logging.makeLogRecord({'msg': 'closure done'}))
            handler.close()

            written = pathlib.Path(tmpdir, handler.long_filename)
            self.assertIn('closure done', written.read_text())
            self.assertTrue(handler.symlink_path.is_symlink())
            self.assertFalse(pathlib.Path('never/created').exists())

    def test_nested_directory(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            handler = log_mgr.LogHandler(self.mee, f'{tmpdir}/a/b')

            handler.emit(logging.makeLogRecord({'msg': 'hello'}))
            handler.close()

            self.assertTrue(pathlib.Path(handler.baseFilename).exists())


class ActivateTest(BaseLogging):

    def test_activate(self):
        handler = log_mgr.activate(self.mee, tempfile.gettempdir())

        self.assertEqual([handler], logging.getLogger().handlers)
        self.assertIs(handler, log_mgr.active_handler())

    def test_not_active(self):
        logging.getLogger().handlers = []

        with self.assertRaises(log_mgr.NotActive):
            log_mgr.active_handler()


class FlagsTest(BaseLogging):

    def setUp(self):
        super().setUp()
        self.my_app = app.ArgparseApp(use_log_mgr=True)

    def test_level_names(self):
        self.assertEqual(
            ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'),
            log_mgr.level_names()
        )

    def test_log_level(self):
        self.my_app.parser.parse_args(['-L', 'DEBUG'])

        self.assertEqual(logging.DEBUG, logging.getLogger().level)

    def test_bad_log_level(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                self.my_app.parser.parse_args(['--log-level', 'CHATTY'])

    def test_log_dir(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            args = self.my_app.parser.parse_args(['--log-dir', tmpdir])

            self.assertEqual(tmpdir, log_mgr.active_handler().output_dir)
        self.assertEqual({}, vars(args))

    def test_help(self):
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            with self.assertRaises(SystemExit):
                self.my_app.parser.parse_args(['-h'])

        self.assertIn('--log-level', stdout.getvalue())
        self.assertIn('--log-dir', stdout.getvalue())


if __name__ == '__main__':
    unittest.main()
