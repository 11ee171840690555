"""Command-line interface.

Exit codes: 0 success, 2 usage or parse error, 3 unphysical matrix,
4 matrix outside the Dicke X form, 5 unphysical field.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import dicke, witness
from .dicke import BasisKind
from .errors import NotPhysical, NotXForm, UnphysicalField
from .fields import FieldKind, FieldParams, steady_state
from .matrixio import MatrixFileError, read_density_matrix, write_density_matrix
from .sweep import SweepConfig, render_csv, render_json, run_sweep, write_atomically

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_PHYSICAL = 3
EXIT_NOT_XFORM = 4
EXIT_UNPHYSICAL_FIELD = 5

FIELD_CHOICES = [k.value for k in FieldKind]


class UsageError(Exception):
    pass


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def cmd_analyze(args) -> int:
    m, file_basis = read_density_matrix(args.input)
    flag_basis = BasisKind(args.basis) if args.basis else None
    if file_basis and flag_basis and file_basis is not flag_basis:
        raise UsageError(f"--basis {flag_basis.value} contradicts file basis {file_basis.value}")
    basis = file_basis or flag_basis or BasisKind.PRODUCT
    p = dicke.from_density_matrix(m, basis)
    _emit({"basis": basis.value, **witness.witness_report(p).to_dict()})
    return EXIT_OK


def _field_from_args(args) -> FieldParams:
    kind = FieldKind(args.field)
    if kind is not FieldKind.CUSTOM and args.m_abs is not None:
        raise UsageError(f"--m-abs only applies to --field custom (the {kind.value} field fixes |M|)")
    if kind is FieldKind.THERMAL and args.m_arg:
        raise UsageError("--m-arg has no meaning for a thermal field")
    return FieldParams.of_kind(kind, args.n, args.m_abs, args.m_arg)


def cmd_steady_state(args) -> int:
    f = _field_from_args(args)
    p = steady_state(f)
    if args.export_matrix:
        write_density_matrix(args.export_matrix, dicke.to_density_matrix(p), BasisKind.PRODUCT)
    doc = {
        "field": {
            "kind": f.kind.value,
            "n_bar": f.n_bar,
            "m_corr": {"re": f.m_corr.real, "im": f.m_corr.imag},
        },
        **witness.witness_report(p).to_dict(),
    }
    _emit(doc)
    return EXIT_OK


def cmd_sweep(args) -> int:
    kind = FieldKind(args.field)
    if kind is not FieldKind.CUSTOM and args.m_abs is not None:
        raise UsageError("--m-abs only applies to --field custom")
    try:
        config = SweepConfig(
            kind=kind,
            n_min=args.n_min,
            n_max=args.n_max,
            steps=args.steps,
            scale=args.scale,
            output_path=args.output,
            format=args.format,
            m_abs=args.m_abs,
            m_arg=args.m_arg,
        )
    except ValueError as exc:
        raise UsageError(f"invalid sweep configuration: {exc}") from None
    rows = run_sweep(config)
    text = render_csv(rows) if config.format == "csv" else render_json(rows, config)
    write_atomically(config.output_path, text)
    print(f"wrote {len(rows)} rows to {config.output_path}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twoatom",
        description="Entanglement and spin squeezing of two Dicke atoms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyse a density matrix stored as JSON")
    p.add_argument("--input", required=True, help="density-matrix JSON file")
    p.add_argument("--basis", choices=[b.value for b in BasisKind], default=None,
                   help="basis of the matrix if the file does not declare one (default: product)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("steady-state", help="report on the steady state for one field")
    p.add_argument("--field", choices=FIELD_CHOICES, required=True)
    p.add_argument("--n", type=float, required=True, help="mean photon number N")
    p.add_argument("--m-abs", type=float, default=None, help="|M| for a custom field")
    p.add_argument("--m-arg", type=float, default=0.0, help="phase of M in radians")
    p.add_argument("--export-matrix", default=None, metavar="PATH",
                   help="also write the product-basis density matrix as JSON")
    p.set_defaults(func=cmd_steady_state)

    p = sub.add_parser("sweep", help="tabulate steady states over a range of N")
    p.add_argument("--field", choices=FIELD_CHOICES, required=True)
    p.add_argument("--n-min", type=float, required=True)
    p.add_argument("--n-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--scale", choices=["linear", "log"], default="linear")
    p.add_argument("--output", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--m-abs", type=float, default=None, help="|M| for a custom field")
    p.add_argument("--m-arg", type=float, default=0.0, help="phase of M in radians")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on bad usage
    try:
        return args.func(args)
    except (UsageError, MatrixFileError) as exc:
        return _fail(EXIT_USAGE, str(exc))
    except NotXForm as exc:
        return _fail(EXIT_NOT_XFORM, f"not a Dicke X state: {exc}")
    except NotPhysical as exc:
        return _fail(EXIT_NOT_PHYSICAL, f"not a physical density matrix: {exc}")
    except UnphysicalField as exc:
        return _fail(EXIT_UNPHYSICAL_FIELD, f"unphysical field: {exc}")
    except OSError as exc:
        return _fail(EXIT_USAGE, f"cannot write output: {exc}")


if __name__ == "__main__":
    sys.exit(main())
