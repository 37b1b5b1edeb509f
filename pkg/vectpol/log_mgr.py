"""Logging defaults for the vectpol command line.

Every run writes its own log file; nothing is logged to the terminal.
Turn the file on early with:
  log_mgr.activate(appname, log_directory)

ArgparseApp(use_log_mgr=True) does that and registers the -L/--log-level and
--log-dir global flags from vectpol_global_flags().
"""
from __future__ import annotations

import argparse
import datetime
import logging
import pathlib
import platform
import typing

import psutil

if typing.TYPE_CHECKING:  # pragma: no cover
    from vectpol import app

LOG_FORMAT = (
    '%(levelname).1s%(asctime)s: %(filename)s:%(lineno)d'
    '(%(funcName)s)] %(message)s'
)


class Error(Exception):
    """Base module exception."""


class NotActive(Error):
    """No LogHandler is installed on the root logger."""


def log_filenames(progname: str) -> tuple[str, str]:
    """The symlink name and the per run file name.

    progname.log -> progname.log.$HOST.$USER.$DATETIME.$PID
    """
    process = psutil.Process()
    now = datetime.datetime.now().strftime('%Y%m%d-%H%M%S')
    short = f'{progname}.log'
    long = (
        f'{short}.{platform.node()}.{process.username()}.{now}'
        f'.{process.pid}'
    )
    return short, long


class LogHandler(logging.FileHandler):
    """A file handler that opens its file on the first record.

    Until then the output directory may change, which is what --log-dir
    does.  On opening, a best effort symlink with the short name is pointed
    at the new file.
    """

    def __init__(self, progname: str, output_dir: str):
        self.short_filename, self.long_filename = log_filenames(progname)
        self.output_dir = output_dir
        super().__init__(self.baseFilename, delay=True)

    @property
    def output_dir(self) -> str:
        """Where log files are written."""
        return self._output_dir

    @output_dir.setter
    def output_dir(self, value: str):
        self._output_dir = value
        directory = pathlib.Path(value).absolute()
        self.symlink_path = directory / self.short_filename
        self.baseFilename = str(directory / self.long_filename)

    def _open(self):
        path = pathlib.Path(self.baseFilename)
        path.parent.mkdir(parents=True, exist_ok=True)
        handle = super()._open()
        try:
            self.symlink_path.unlink(missing_ok=True)
            self.symlink_path.symlink_to(path)
        except OSError:
            pass
        return handle


def active_handler() -> LogHandler:
    """The LogHandler installed by activate().

    Raises:
      NotActive: activate() was not called.
    """
    for handler in logging.getLogger().handlers:
        if isinstance(handler, LogHandler):
            return handler
    raise NotActive('log_mgr.activate() was not called')


class LogLevel(argparse.Action):
    """Set the root log level while flags are parsed."""

    def __init__(self, *args, **kwargs):
        if 'help' in kwargs:
            current = logging.getLevelName(logging.getLogger().level)
            kwargs['help'] += f' (Default: {current})'
        super().__init__(*args, **kwargs)

    def __call__(  # type: ignore[override]
            self,
            parser: argparse.ArgumentParser,
            namespace: argparse.Namespace,
            values: str,
            option_string: str | None = None):
        logging.getLogger().setLevel(values)


class LogDir(argparse.Action):
    """Move the active LogHandler's output directory during parsing."""

    def __init__(self, *args, **kwargs):
        if 'help' in kwargs:
            kwargs['help'] += f' (Default: {active_handler().output_dir})'
        super().__init__(*args, **kwargs)

    def __call__(  # type: ignore[override]
            self,
            parser: argparse.ArgumentParser,
            namespace: argparse.Namespace,
            values: str,
            option_string: str | None = None):
        active_handler().output_dir = values


def level_names() -> tuple[str, ...]:
    """Level names from least to most severe, without NOTSET."""
    mapping = logging.getLevelNamesMapping()
    return tuple(
        name for name, level in sorted(mapping.items(), key=lambda x: x[1])
        if level and name not in ('WARN', 'FATAL')
    )


def vectpol_global_flags(vectpol_app: app.ArgparseApp):
    """Register global flags."""
    vectpol_app.global_flags.add_argument(
        '-L',
        '--log-level',
        action=LogLevel,
        help='Minimal log level',
        default=argparse.SUPPRESS,
        choices=level_names()
    )
    vectpol_app.global_flags.add_argument(
        '--log-dir',
        action=LogDir,
        help='Logging directory',
        default=argparse.SUPPRESS
    )


def activate(appname: str, output_dir: str) -> LogHandler:
    """Send all logging of this process to a fresh LogHandler.

    Args:
      appname: Prefix of the log file names.
      output_dir: Where the file goes unless --log-dir moves it.

    Returns:
      The installed handler.
    """
    handler = LogHandler(appname, output_dir)
    logging.basicConfig(format=LOG_FORMAT, handlers=[handler], force=True)
    return handler
