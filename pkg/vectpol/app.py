"""The argparse application the vectpol commands are built on.

Modules take part in the command line through optional hooks, each called
with the ArgparseApp instance:

  vectpol_global_flags(app)   flags accepted before any command
  vectpol_shared_flags(app)   parsers that commands reuse as parents
  vectpol_commands(app)       the commands themselves

A main() then looks like:

  def main():
      vectpol_app = app.ArgparseApp(use_log_mgr=True)
      vectpol_app.register_global_flags(modules)
      vectpol_app.register_shared_flags(modules)
      vectpol_app.register_commands(modules)
      sys.exit(vectpol_app.run())
"""

import argparse
import functools
import inspect
import logging
import os
import resource
import shutil
import sys
import textwrap
import types
import typing

import humanize
import platformdirs

from vectpol import constants
from vectpol import log_mgr


class Error(Exception):
    """Base module exception."""


class ExistingParser(Error):
    """A shared parser name is taken."""


class MissingParser(Error):
    """No shared parser has that name."""


class _ArgparseKwargs(typing.TypedDict, total=False):
    """The ArgumentParser() keywords callers may pass through."""
    prog: str
    usage: str | None
    epilog: str | None
    formatter_class: 'argparse._FormatterClass'
    add_help: bool
    allow_abbrev: bool
    description: str | None


class Docstring:
    """A docstring reflowed to a width.

    The summary is the first paragraph; the description is every paragraph,
    separated by blank lines.
    """

    def __init__(self, obj: typing.Any, width: int):
        """Reflow the docstring of obj.

        Args:
          obj: A module, function or anything else inspect.getdoc() reads.
          width: Column limit of the reflowed text.
        """
        paragraphs = list()
        current: list[str] = list()
        lines = (inspect.getdoc(obj) or '').split('\n')
        if lines[0].strip():
            # The summary line stands alone even without a blank after it.
            paragraphs.append(lines.pop(0).strip())
        for line in lines + ['']:
            stripped = line.strip()
            if stripped:
                current.append(stripped)
            elif current:
                paragraphs.append(' '.join(current))
                current.clear()
        filled = [textwrap.fill(para, width=width) for para in paragraphs]
        self.summary = filled[0] if filled else ''
        self.description = '\n\n'.join(filled)


CommandFunc: typing.TypeAlias = typing.Callable[[argparse.Namespace], int]
NamespaceHook: typing.TypeAlias = typing.Callable[[argparse.Namespace], None]
SubParser: typing.TypeAlias = argparse._SubParsersAction  # pylint: disable=protected-access


def _print_usage(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> int:
    """Stands in for the func of usage only commands."""
    del args
    parser.print_help()
    return os.EX_USAGE


class ArgparseApp:
    """An argparse application assembled from module hooks.

    The namespace returned by parse_args() is expected to carry "func", a
    CommandFunc.  register_command() arranges that; a program without
    commands may set it through parser.set_defaults().

    Exceptions listed in handled_errors are reported by run() as a single
    line on standard error and exit code constants.EXIT_ERROR.  Anything
    else propagates with its traceback.
    """

    GLOBAL_FLAGS = 'Global flags'

    def __init__(
        self,
        use_log_mgr: bool = False,
        use_docstring_for_description: typing.Any | None = None,
        handled_errors: tuple[type[Exception], ...] = (),
        **kwargs: typing.Unpack[_ArgparseKwargs]
    ):
        """Create the top level parser.

        Args:
          use_log_mgr: Install the log_mgr handler and its global flags.
          use_docstring_for_description: Whose docstring becomes the
            --help description, usually the module holding main().
          handled_errors: Exceptions that run() turns into a diagnostic.
          kwargs: More ArgumentParser() keywords, prog being the usual one.
        """
        settings: _ArgparseKwargs = {
            'formatter_class': argparse.RawDescriptionHelpFormatter,
            'add_help': False,
        }
        if use_docstring_for_description:
            doc = Docstring(use_docstring_for_description, self.width)
            settings['description'] = doc.description
        settings.update(typing.cast(_ArgparseKwargs, kwargs))

        self._parser = argparse.ArgumentParser(**settings)
        self._global_flags = self._parser.add_argument_group(
            self.GLOBAL_FLAGS
        )
        self._global_flags.add_argument('-h', '--help', action='help')
        self._shared_parsers: dict[str, argparse.ArgumentParser] = dict()
        self._after_parse_hooks: list[NamespaceHook] = list()
        self._handled_errors = handled_errors

        if use_log_mgr:
            log_mgr.activate(self.appname, self.dirs.user_log_dir)
            self.register_global_flags([log_mgr])

    @property
    def appname(self) -> str:
        """The prog of the top level parser."""
        return self._parser.prog

    @property
    def parser(self) -> argparse.ArgumentParser:
        """The top level parser."""
        return self._parser

    @functools.cached_property
    def subparser(self) -> SubParser:
        """Where top level commands are attached, created on first use."""
        return self.new_subparser(self._parser)

    @property
    def global_flags(self) -> argparse._ArgumentGroup:
        """Argument group that vectpol_global_flags hooks add to."""
        return self._global_flags

    @functools.cached_property
    def width(self) -> int:
        """Terminal columns, for reflowing help text."""
        return shutil.get_terminal_size().columns

    @functools.cached_property
    def dirs(self) -> platformdirs.api.PlatformDirsABC:
        """Per user directories named after appname."""
        return platformdirs.PlatformDirs(appname=self.appname)

    def new_subparser(self, parser: argparse.ArgumentParser) -> SubParser:
        """Give parser commands of its own, as in `catalog list`."""
        return parser.add_subparsers(
            title='Commands',
            dest='name',
            metavar='<command>',
            help='<command description>',
            description='For more details: %(prog)s <command> --help'
        )

    def new_shared_parser(self, name: str) -> argparse.ArgumentParser | None:
        """Create a parent parser under name.

        Args:
          name: How commands will ask for it.

        Returns:
          The new parser, or None when the name is already in use.
        """
        if name in self._shared_parsers:
            return None
        self._shared_parsers[name] = argparse.ArgumentParser(add_help=False)
        return self._shared_parsers[name]

    def safe_new_shared_parser(self, name: str) -> argparse.ArgumentParser:
        """new_shared_parser() for names that must be fresh.

        Raises:
          ExistingParser: Another hook already created name.
        """
        parser = self.new_shared_parser(name)
        if parser is None:
            raise ExistingParser(name)
        return parser

    def get_shared_parser(self, name: str) -> argparse.ArgumentParser | None:
        """The parent parser registered as name, if any."""
        return self._shared_parsers.get(name)

    def safe_get_shared_parser(self, name: str) -> argparse.ArgumentParser:
        """get_shared_parser() for names that must exist.

        Raises:
          MissingParser: Nothing was registered as name.
        """
        try:
            return self._shared_parsers[name]
        except KeyError:
            raise MissingParser(name) from None

    def register_after_parse_hook(self, func: NamespaceHook) -> None:
        """Run func on the parsed namespace before the command.

        Hooks run in registration order.  They suit validation spanning
        several flags and turning raw flag values into richer objects, like a
        SpaceDescriptor from --space and --mode.  A hook may raise one of the
        handled errors.
        """
        self._after_parse_hooks.append(func)

    def register_command(
        self,
        func: CommandFunc,
        name: str | None = None,
        usage_only: bool = False,
        subparser: SubParser | None = None,
        **kwargs
    ) -> argparse.ArgumentParser:
        """Add func as a command.

        The name defaults to the function name with underscores turned into
        minus signs, and the help text comes from its docstring.

        Args:
          func: What run() calls with the namespace.
          name: Command name, when the function name does not fit.
          usage_only: Print the command's help instead of calling func;
            for commands that only group sub-commands.
          subparser: Attach here instead of the top level.
          kwargs: More add_parser() keywords, parents being the usual one.

        Returns:
          The command's parser, for add_argument().
        """
        doc = Docstring(func, self.width)
        settings = {
            'formatter_class': argparse.RawDescriptionHelpFormatter,
            'help': doc.summary,
            'description': doc.description,
        }
        settings.update(kwargs)

        target = self.subparser if subparser is None else subparser
        parser = target.add_parser(
            name or func.__name__.replace('_', '-'), **settings
        )
        if usage_only:
            parser.set_defaults(
                func=functools.partial(_print_usage, parser=parser)
            )
        else:
            parser.set_defaults(func=func)
        return parser

    def _call_hooks(
        self, hook_name: str, modules: typing.Iterable[types.ModuleType]
    ):
        for module in modules:
            hook = getattr(module, hook_name, None)
            if hook is not None:
                hook(self)

    def register_global_flags(
        self, modules: typing.Iterable[types.ModuleType]
    ):
        """Call vectpol_global_flags(self) on each module that has it."""
        self._call_hooks('vectpol_global_flags', modules)

    def register_shared_flags(
        self, modules: typing.Iterable[types.ModuleType]
    ):
        """Call vectpol_shared_flags(self) on each module that has it.

        Run before register_commands(), so the parents exist.
        """
        self._call_hooks('vectpol_shared_flags', modules)

    def register_commands(self, modules: typing.Iterable[types.ModuleType]):
        """Call vectpol_commands(self) on each module that has it."""
        self._call_hooks('vectpol_commands', modules)

    def run(self, argv: list[str] | None = None) -> int:
        """Parse argv, run the hooks, then the selected command.

        Returns:
          The command's exit code; os.EX_USAGE when no command was given;
          constants.EXIT_ERROR for a handled error.
        """
        args = self._parser.parse_args(argv)
        try:
            for hook in self._after_parse_hooks:
                hook(args)
            func = getattr(args, 'func', None)
            if func is None:
                self._parser.print_help()
                return os.EX_USAGE
            logging.debug('Running %s: %s', args.func, args)
            ret = func(args)
        except self._handled_errors as err:
            logging.debug('%s failed', self.appname, exc_info=True)
            message = f'{self.appname}: {type(err).__name__}: {err}'
            print(message, file=sys.stderr)
            ret = constants.EXIT_ERROR

        peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logging.debug('Peak RSS: %s', humanize.naturalsize(peak))
        logging.debug('Exit code %d', ret or 0)
        return ret
