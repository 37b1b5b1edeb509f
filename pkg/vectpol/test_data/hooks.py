"""A module with every ArgparseApp hook, for app_test.py."""

from __future__ import annotations

import typing

from vectpol import polyfield

if typing.TYPE_CHECKING:  # pragma: no cover
    import argparse

    from vectpol import app


class Error(Exception):
    """Base module exception."""


def vectpol_global_flags(an_app: app.ArgparseApp):
    """Register global flags for the application."""
    an_app.global_flags.add_argument(
        '--exact', action='store_true', help='Never round.'
    )
    an_app.register_after_parse_hook(note_exact)


def vectpol_shared_flags(an_app: app.ArgparseApp):
    """Register shared flags."""
    parser = an_app.safe_new_shared_parser('dimension')
    parser.add_argument('-n', type=int, default=2, help='Dimension of E.')


def vectpol_commands(an_app: app.ArgparseApp):
    """Register all module commands."""
    dimension = an_app.safe_get_shared_parser('dimension')
    parser = an_app.register_command(count, parents=[dimension])
    parser.add_argument('degree', type=int)

    an_app.register_command(refuse)

    subparser = an_app.new_subparser(
        an_app.register_command(tools_, name='tools', usage_only=True)
    )
    an_app.register_command(crash, subparser=subparser)


def note_exact(args: argparse.Namespace) -> None:
    """Record what --exact asked for."""
    args.note = 'exact' if args.exact else 'inexact'


def count(args: argparse.Namespace) -> int:
    """Dimension of Vect_p.

    Counts the monomial fields x^alpha d_k with |alpha| = p + 1.
    """
    print(args.note, polyfield.graded_dimension(args.n, args.degree))
    return 0


def refuse(args: argparse.Namespace) -> int:
    """Always fails with a handled error."""
    raise Error(f'refused with n={getattr(args, "n", None)}')


def tools_(args: argparse.Namespace) -> int:  # pragma: no cover
    """Wrapper for other commands."""
    raise Error('Should never be called.')


def crash(args: argparse.Namespace) -> int:
    """Fails with an error nobody handles."""
    del args
    raise KeyError('crash')
