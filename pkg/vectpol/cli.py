"""Exact analysis of Lie algebras of polynomial vector fields.

Fields are written like "2*x1^2*x2*d1 - 1/3*d2" and live on K^n, chosen with
--space n=N and --mode rational|gaussian.  Wherever a subalgebra is expected,
give either a catalog key, such as catalog:projective:2, or a basis file with
one field per line.

Exit codes: 0 on success (for check: maximal), 2 on bad input, 3 when check
finds the subalgebra not maximal, 4 when it is not graded or undecided.
"""

from __future__ import annotations

import argparse
import importlib.metadata
import json
import sys
import typing

from vectpol import app
from vectpol import catalog
from vectpol import constants
from vectpol import exact
from vectpol import fieldtext
from vectpol import maximality
from vectpol import polyfield
from vectpol import repanalysis
from vectpol import subalgebra
from vectpol import symtensor

APPNAME = 'vectpol'


class Error(Exception):
    """Base module exception."""


class MissingSpace(Error):
    """A field was given without --space."""


class BadInput(Error):
    """Command line input that no module can make sense of."""


HANDLED_ERRORS = (
    Error,
    app.Error,
    catalog.Error,
    exact.Error,
    fieldtext.Error,
    maximality.Error,
    polyfield.Error,
    repanalysis.Error,
    subalgebra.Error,
    symtensor.Error,
    OSError,
)

EXIT_CODES = {
    maximality.Verdict.MAXIMAL: constants.EXIT_MAXIMAL,
    maximality.Verdict.NOT_MAXIMAL: constants.EXIT_NOT_MAXIMAL,
    maximality.Verdict.NOT_GRADED: constants.EXIT_UNDECIDED,
    maximality.Verdict.UNDECIDED: constants.EXIT_UNDECIDED,
}


def version() -> str:
    """Installed version, or a placeholder when running from a checkout."""
    try:
        return importlib.metadata.version(APPNAME)
    except importlib.metadata.PackageNotFoundError:
        return '0+unknown'


def space_flag(text: str) -> int:
    """Argparse type for --space: "n=2" or just "2"."""
    value = text.removeprefix('n=')
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f'expected n=<int>, not {text!r}'
        ) from None
    if n < 1:
        raise argparse.ArgumentTypeError(f'n must be positive, not {n}')
    return n


def _build_space(args: argparse.Namespace) -> None:
    """After parse hook: turn --space, --mode and the caps into args.space."""
    degree_cap = getattr(args, 'degree_cap', constants.DEFAULT_MAX_DEGREE)
    dim_cap = getattr(args, 'dim_cap', constants.DEFAULT_MAX_DIM)
    if degree_cap < 1 or dim_cap < 1:
        raise BadInput('--max-degree and --max-dim must be positive')
    args.caps = subalgebra.Caps(max_dim=dim_cap, max_degree=degree_cap)
    n = getattr(args, 'space_n', None)
    args.space = None
    if n is not None:
        args.space = polyfield.SpaceDescriptor(
            n, getattr(args, 'mode', 'rational'), degree_cap
        )


def _space(
    args: argparse.Namespace, n: int | None = None
) -> polyfield.SpaceDescriptor:
    """The space from the flags, else K^n for a known n."""
    if args.space is not None:
        return args.space
    if n is None:
        raise MissingSpace('fields need --space n=<int>')
    return polyfield.SpaceDescriptor(n, args.mode, args.caps.max_degree)


def load_input(
    args: argparse.Namespace
) -> subalgebra.Subalgebra | subalgebra.GradedSpan:
    """A catalog algebra or the subalgebra spanned by a basis file.

    Raises:
      subalgebra.NotClosed: The basis file does not span a subalgebra.
    """
    source: str = args.input
    if source.startswith(constants.CATALOG_PREFIX):
        key = catalog.CatalogKey.parse(source)
        return catalog.build(key, _space(args, key.n))
    space = _space(args)
    with open(source, encoding='utf-8') as stream:
        fields = fieldtext.parse_lines(stream, space)
    if not fields:
        raise BadInput(f'no fields in {source}')
    return subalgebra.Subalgebra(space, fields)


def load_subalgebra(args: argparse.Namespace) -> subalgebra.Subalgebra:
    """load_input(), refusing truncated families."""
    result = load_input(args)
    if isinstance(result, subalgebra.GradedSpan):
        raise BadInput(
            f'{args.input} is infinite dimensional; only its truncation'
            f' below degree {result.truncation + 1} exists here'
        )
    return result


def _read_fields(
    texts: typing.Iterable[str], path: str | None,
    space: polyfield.SpaceDescriptor
) -> list[polyfield.PolyVectorField]:
    fields = [fieldtext.parse_field(text, space) for text in texts]
    if path:
        with open(path, encoding='utf-8') as stream:
            fields.extend(fieldtext.parse_lines(stream, space))
    return fields


def _emit_json(data: typing.Any, path: str | None) -> None:
    """Canonical JSON to a file, or to stdout for None or "-"."""
    text = json.dumps(data, indent=2, sort_keys=True) + '\n'
    if path and path != '-':
        with open(path, 'w', encoding='utf-8') as stream:
            stream.write(text)
    else:
        sys.stdout.write(text)


def _formatted(
    fields: typing.Iterable[polyfield.PolyVectorField]
) -> list[str]:
    return [fieldtext.format_field(x) for x in fields]


def _subspace_json(subspace: exact.Subspace | None) -> list[list[str]] | None:
    if subspace is None:
        return None
    return [[exact.format_scalar(value) for value in row]
            for row in subspace.basis]


def _condition_text(value: maximality.Condition) -> str:
    if value is None:
        return 'undecided'
    if isinstance(value, bool):
        return str(value).lower()
    return value


def check_report(report: maximality.MaximalityReport,
                 source: str) -> dict[str, typing.Any]:
    """The JSON form of a MaximalityReport."""
    algebra = report.algebra
    data: dict[str, typing.Any] = {
        'tool': {
            'name': APPNAME,
            'version': version()
        },
        'space': algebra.space.describe(),
        'input': {
            'source': source,
            'dimension': algebra.dim,
            'basis': _formatted(algebra.basis),
        },
        'conditions': report.conditions(),
        'verdict': report.verdict.value,
    }
    if report.witness is not None:
        witness = report.witness
        data['witness'] = {
            'kind': witness.kind.value,
            'truncation_degree': witness.truncation_degree,
            'dimension': witness.dim,
            'graded_dimensions': {
                str(degree): dim
                for degree, dim in witness.span.graded_dims().items()
            },
            'exempt_brackets': witness.exempt_brackets,
            'basis': _formatted(witness.span.fields()),
        }
    if report.certificate is not None:
        data['certificate'] = report.certificate
    return data


def rep_report(report: repanalysis.RepReport) -> dict[str, typing.Any]:
    """The JSON form of a RepReport."""
    irreducibility = report.irreducibility
    structure = report.complex_structure
    return {
        'lower_basis': _formatted(report.lower_basis),
        'linear_basis': _formatted(report.linear_basis),
        'matrices': [m.to_strings() for m in report.matrices],
        'commutant': [m.to_strings() for m in report.commutant],
        'irreducibility': {
            'kind': irreducibility.kind.value,
            'robust': irreducibility.robust,
            'witness': _subspace_json(irreducibility.witness),
            'certificate': irreducibility.certificate,
        },
        'complex_structure': {
            'kind': structure.kind.value,
            'certain': structure.certain,
            'matrix': (
                structure.matrix.to_strings()
                if structure.matrix is not None else None
            ),
            'polynomial': (
                str(structure.polynomial)
                if structure.polynomial is not None else None
            ),
        },
    }


def tensor_json(t: symtensor.SymTensor) -> dict[str, typing.Any]:
    """T_p(E) element as JSON, with 1-based directions."""
    return {
        'space': t.space.describe(),
        'degree': t.degree,
        'coefficients': [
            {
                'inputs': list(alpha),
                'direction': direction + 1,
                'value': exact.format_scalar(value),
            } for (alpha, direction), value in t.items()
        ],
    }


def tensor_from_json(
    data: typing.Mapping[str, typing.Any], mode: str
) -> symtensor.SymTensor:
    """Inverse of tensor_json().

    Raises:
      BadInput: Missing or malformed keys.
    """
    try:
        space = polyfield.SpaceDescriptor(
            int(data['space']['n']), data['space'].get('mode', mode)
        )
        coeffs = {
            (tuple(entry['inputs']), int(entry['direction']) - 1):
            fieldtext.parse_scalar(str(entry['value']), space)
            for entry in data['coefficients']
        }
        return symtensor.SymTensor(space, int(data['degree']), coeffs)
    except (KeyError, TypeError, ValueError) as err:
        raise BadInput(f'malformed tensor JSON: {err!r}') from None


def bracket(args: argparse.Namespace) -> int:
    """Print the Lie bracket [X, Y] of two fields."""
    space = _space(args)
    x = fieldtext.parse_field(args.x, space)
    y = fieldtext.parse_field(args.y, space)
    print(fieldtext.format_field(polyfield.bracket(x, y)))
    return 0


def grade(args: argparse.Namespace) -> int:
    """Split a field into its homogeneous components.

    Degree p holds the terms with coefficients of degree p + 1.
    """
    x = fieldtext.parse_field(args.field, _space(args))
    parts = polyfield.graded_components(x)
    body = ', '.join(
        f'{degree}: {fieldtext.format_field(part)}'
        for degree, part in sorted(parts.items())
    )
    print(f'{{{body}}}')
    return 0


def close(args: argparse.Namespace) -> int:
    """Print a basis of the subalgebra generated by some fields.

    The closure stops with an error when it passes --max-dim or
    --max-degree, the usual sign of an infinite dimensional result.
    """
    space = _space(args)
    fields = _read_fields(args.fields, args.file, space)
    result = subalgebra.close_under_bracket(fields, args.caps, space)
    print(f'dimension {result.dim}')
    grading = subalgebra.is_graded(result)
    if grading.graded:
        print(f'graded {result.graded_dims()}')
    for text in _formatted(result.basis):
        print(text)
    return 0


def normalizer(args: argparse.Namespace) -> int:
    """Print the normalizer tower of a space F of constant fields.

    Degree i of the tower holds the X in Vect_i with ad(F)^(i+1) X in F.
    """
    space = _space(args)
    vectors = list()
    for text in args.subspace:
        x = fieldtext.parse_field(text, space)
        if x.degrees() - {-1}:
            raise BadInput(f'{text!r} is not a constant field')
        vectors.append(polyfield.graded_vector(x, -1))
    f_space = exact.Subspace(space.n, vectors, space.domain)
    tower = subalgebra.normalizer_tower(space, f_space, args.tower_degree)
    print(f'dims {[part.dim for part in tower]}')
    for degree, part in enumerate(tower, start=-1):
        fields = (
            polyfield.from_graded_vector(space, degree, row)
            for row in part.basis
        )
        print(f'n_{degree}: {", ".join(_formatted(fields))}')
    return 0


def check(args: argparse.Namespace) -> int:
    """Decide whether a subalgebra is maximal.

    Reports the four conditions of the maximality criterion and, when one
    fails, a verified witness subalgebra strictly between the input and
    all polynomial fields, truncated at --witness-degree.
    """
    algebra = load_subalgebra(args)
    report = maximality.check_maximal(algebra, args.witness_degree)
    data = check_report(report, args.input)
    if args.json:
        _emit_json(data, args.json)
    else:
        print(f'verdict: {report.verdict.value}')
        for name, value in report.conditions().items():
            print(f'  {name}: {_condition_text(value)}')
        if report.witness is not None:
            witness = report.witness
            print(
                f'witness: {witness.kind.value}, truncation degree'
                f' {witness.truncation_degree}, dimension {witness.dim}'
            )
        if report.certificate is not None:
            print(f'certificate: {report.certificate}')
    return EXIT_CODES[report.verdict]


def analyze_rep(args: argparse.Namespace) -> int:
    """Print, as JSON, how L_0 acts on L_-1.

    Includes the action matrices, the commutant, the irreducibility verdict
    and the complex structure search.
    """
    report = repanalysis.analyze(load_subalgebra(args))
    _emit_json(rep_report(report), args.json)
    return 0


def convert(args: argparse.Namespace) -> int:
    """Convert a homogeneous field to its symmetric tensor, or back.

    With --to tensor, TEXT is a field; with --to field, TEXT is the JSON
    written by --to tensor.
    """
    if args.to == 'tensor':
        x = fieldtext.parse_field(args.text, _space(args))
        _emit_json(tensor_json(symtensor.from_field(x)), None)
    else:
        try:
            data = json.loads(args.text)
        except json.JSONDecodeError as err:
            raise BadInput(f'not JSON: {err}') from None
        t = tensor_from_json(data, args.mode)
        print(fieldtext.format_field(symtensor.to_field(t)))
    return 0


def catalog_(args: argparse.Namespace) -> int:  # pragma: no cover
    """Named families of subalgebras."""
    raise Error('Should never be called.')


def list_(args: argparse.Namespace) -> int:
    """List the catalog families and their key formats."""
    del args
    presets = catalog.presets()
    width = max(len(preset.key) for preset in presets)
    for preset in presets:
        print(f'{preset.key:<{width}}  {preset.description}')
    return 0


def vectpol_shared_flags(vectpol_app: app.ArgparseApp) -> None:
    """Register shared flags."""
    space_parser = vectpol_app.safe_new_shared_parser('space')
    space_parser.add_argument(
        '--space',
        dest='space_n',
        type=space_flag,
        metavar='n=N',
        help='Work on K^N; catalog keys supply N themselves'
    )
    space_parser.add_argument(
        '--mode',
        choices=constants.SCALAR_MODES,
        default='rational',
        help='Scalars: Q or Q(i) (Default: %(default)s)'
    )

    caps_parser = vectpol_app.safe_new_shared_parser('caps')
    caps_parser.add_argument(
        '--max-degree',
        dest='degree_cap',
        type=int,
        default=constants.DEFAULT_MAX_DEGREE,
        help='Largest field degree allowed (Default: %(default)s)'
    )
    caps_parser.add_argument(
        '--max-dim',
        dest='dim_cap',
        type=int,
        default=constants.DEFAULT_MAX_DIM,
        help='Largest closure dimension allowed (Default: %(default)s)'
    )

    json_parser = vectpol_app.safe_new_shared_parser('json')
    json_parser.add_argument(
        '--json',
        metavar='PATH',
        help='Write the JSON report to PATH; "-" is standard output'
    )

    vectpol_app.register_after_parse_hook(_build_space)


def vectpol_commands(vectpol_app: app.ArgparseApp) -> None:
    """Register commands."""
    space_parser = vectpol_app.safe_get_shared_parser('space')
    caps_parser = vectpol_app.safe_get_shared_parser('caps')
    json_parser = vectpol_app.safe_get_shared_parser('json')

    parser = vectpol_app.register_command(bracket, parents=[space_parser])
    parser.add_argument('x', help='First field')
    parser.add_argument('y', help='Second field')

    parser = vectpol_app.register_command(grade, parents=[space_parser])
    parser.add_argument('field', help='Any field')

    parser = vectpol_app.register_command(
        close, parents=[space_parser, caps_parser]
    )
    parser.add_argument('fields', nargs='*', help='Generators')
    parser.add_argument('--file', help='More generators, one per line')

    parser = vectpol_app.register_command(normalizer, parents=[space_parser])
    parser.add_argument(
        '--subspace',
        action='append',
        required=True,
        metavar='FIELD',
        help='A constant field spanning F; repeat for more'
    )
    parser.add_argument(
        '--max-degree',
        dest='tower_degree',
        type=int,
        default=1,
        help='Highest tower degree (Default: %(default)s)'
    )

    parser = vectpol_app.register_command(
        check, parents=[space_parser, caps_parser, json_parser]
    )
    parser.add_argument('input', help='Catalog key or basis file')
    parser.add_argument(
        '--witness-degree',
        type=int,
        default=constants.DEFAULT_WITNESS_DEGREE,
        help='Truncation degree of witnesses (Default: %(default)s)'
    )

    parser = vectpol_app.register_command(
        analyze_rep, parents=[space_parser, caps_parser, json_parser]
    )
    parser.add_argument('input', help='Catalog key or basis file')

    parser = vectpol_app.register_command(convert, parents=[space_parser])
    parser.add_argument('text', help='A field, or tensor JSON')
    parser.add_argument(
        '--to',
        choices=('tensor', 'field'),
        default='tensor',
        help='Direction of the conversion (Default: %(default)s)'
    )

    catalog_parser = vectpol_app.register_command(
        catalog_, name='catalog', usage_only=True
    )
    subparser = vectpol_app.new_subparser(catalog_parser)
    vectpol_app.register_command(list_, name='list', subparser=subparser)


def main() -> None:
    """The vectpol console script."""
    vectpol_app = app.ArgparseApp(
        use_log_mgr=True,
        use_docstring_for_description=sys.modules[__name__],
        handled_errors=HANDLED_ERRORS,
        prog=APPNAME,
    )
    modules = (sys.modules[__name__],)
    vectpol_app.register_global_flags(modules)
    vectpol_app.register_shared_flags(modules)
    vectpol_app.register_commands(modules)
    sys.exit(vectpol_app.run())


if __name__ == '__main__':
    main()
