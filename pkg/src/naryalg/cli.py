"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when at least one
identity fails, 2 on usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import catalog, fileformat, group_algebra, identities, maurer_cartan, structure
from .errors import NaryError
from .fileformat import format_coefficient
from .product import NAryProduct

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
SEED_ENV = "NARYALG_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt_vec(v: Sequence[Fraction]) -> str:
    return "(" + ",".join(format_coefficient(Fraction(a)) for a in v) + ")"


def _fmt_tuple(t: Sequence[int]) -> str:
    return "(" + ",".join(map(str, t)) + ")"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def render(report: list[tuple[str, str]], fmt: str) -> str:
    sep = " = " if fmt == "flat" else ": "
    return "".join(f"{k}{sep}{v}\n" for k, v in report)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _parse_sigma(text: str | None):
    if text is None:
        return None
    try:
        return group_algebra.Permutation(tuple(int(x) for x in text.split(",")))
    except ValueError as exc:
        raise UsageError(f"bad --sigma {text!r}: {exc}") from None


def _load(path: str) -> NAryProduct:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return fileformat.parse(text)


def _result_lines(name: str, result, prefix: str = "") -> list[tuple[str, str]]:
    out = [(f"{prefix}identity", name)]
    if result.ok:
        out.append((f"{prefix}result", "pass (vacuous)" if result.vacuous else "pass"))
        return out
    out.append((f"{prefix}result", "witness"))
    out.append((f"{prefix}tuple", _fmt_tuple(result.basis_tuple)))
    if result.slot is not None:
        out.append((f"{prefix}q", str(result.slot)))
    if result.sigma is not None:
        out.append((f"{prefix}sigma", _fmt_tuple(result.sigma)))
    out.append((f"{prefix}defect", _fmt_vec(result.defect)))
    return out


def cmd_check(args) -> tuple[list, int]:
    prod = _load(args.file)
    sigma = _parse_sigma(args.sigma)
    names = args.identity
    for name in names:
        if name not in identities.IDENTITIES:
            raise UsageError(f"unknown identity {name!r}; choose from {', '.join(identities.IDENTITIES)}")
        if name.startswith("sigma-") and sigma is None:
            raise UsageError(f"--identity {name} needs --sigma")
    report: list[tuple[str, str]] = []
    code = EXIT_OK
    for name in names:
        result = identities.run_check(prod, name, sigma)
        report.extend(_result_lines(name, result, f"{name}." if len(names) > 1 else ""))
        if not result.ok:
            code = EXIT_FAIL
    return report, code


def analyze(prod: NAryProduct, seed: int = 0) -> list[tuple[str, str]]:
    """Structural report for a skew product, in a fixed field order."""
    if not prod.is_skew:
        raise UsageError("analyze needs a skew product")
    derived = structure.derived_series(prod)
    lower = structure.lower_central_series(prod)
    nilpotent = lower.vanishing_index is not None
    solvable = derived.vanishing_index is not None
    report = [
        ("arity", str(prod.arity)),
        ("dim", str(prod.dim)),
        ("derived_series", _fmt_tuple(derived.dims)),
        ("lower_central_series", _fmt_tuple(lower.dims)),
        ("nilpotent", _yes(nilpotent)),
        ("solvable", _yes(solvable)),
        ("kasymov_adjoints_nilpotent", _yes(structure.check_kasymov(prod))),
        ("dim_generators", str(structure.generators_quotient_dim(prod))),
    ]
    if nilpotent:
        seq, certified = structure.characteristic_sequence(prod, seed=seed)
        report.append(("characteristic_sequence", str(seq)))
        report.append(("characteristic_sequence_certified", _yes(certified)))
        report.append(("filiform", _yes(certified and seq == structure.filiform_cap(prod))))
    else:
        report.append(("characteristic_sequence", "n/a"))
        report.append(("characteristic_sequence_certified", "n/a"))
        report.append(("filiform", "no"))
    report.append(("dim_derivations", str(structure.derivation_dim(prod))))
    report.append(("nonsingular_derivation", _yes(structure.has_nonsingular_derivation(prod, seed=seed))))
    report.append(("rank_relative_to_file_basis", str(structure.diagonal_derivation_weights(prod).solution_dim)))
    return report


def cmd_analyze(args) -> tuple[list, int]:
    return analyze(_load(args.file), _seed(args)), EXIT_OK


def cmd_catalog(args) -> tuple[str, int]:
    params = {
        "arity": args.arity,
        "dim": args.dim,
        "kind": args.kind,
        "a": args.a,
        "b": args.b,
        "vars": args.vars,
        "r": args.r,
        "rows": args.rows,
        "cols": args.cols,
        "d": args.d,
    }
    return fileformat.serialize(catalog.build(args.name, **params)), EXIT_OK


def cmd_mc(args) -> tuple[list, int]:
    prod = _load(args.file)
    result = maurer_cartan.maurer_cartan_check(prod, args.sign_rule)
    report = [("sign_rule", args.sign_rule)]
    if result.ok:
        report.append(("result", "pass (vacuous)" if result.vacuous else "pass"))
        return report, EXIT_OK
    report += [
        ("result", "defect"),
        ("index", str(result.index)),
        ("tuple", _fmt_tuple(result.basis_tuple)),
        ("defect", " ".join(f"{format_coefficient(c)}*{_fmt_tuple(k)}" for k, c in result.defect.terms.items())),
    ]
    return report, EXIT_FAIL


def cmd_groupalg(args) -> tuple[list, int]:
    report = []
    if args.colored is None and args.n is None:
        raise UsageError("groupalg needs --n and/or --colored")
    if args.n is not None:
        if not 2 <= args.n <= 4:
            raise UsageError("--n must be 2, 3 or 4")
        report.append(("n", str(args.n)))
        report.append(("alpha", format_coefficient(group_algebra.verify_wv_identity(args.n))))
    if args.colored is not None:
        try:
            a, b, c = (Fraction(x) for x in args.colored.split(","))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--colored needs three rationals, got {args.colored!r}") from None
        report.append(("colored", ",".join(format_coefficient(x) for x in (a, b, c))))
        report.append(("colored_scalar", format_coefficient(group_algebra.colored_reduction(a, b, c))))
    return report, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("human", "flat"), default="human")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default ${SEED_ENV} or 0)")

    parser = _Parser(prog="naryalg", description="Exact workbench for n-ary algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="check identities on an algebra file")
    p.add_argument("file", help="algebra file, or - for stdin")
    p.add_argument("--identity", action="append", required=True, help="repeatable; one of " + ", ".join(identities.IDENTITIES))
    p.add_argument("--sigma", help="permutation as images, e.g. 3,2,1")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", parents=[common], help="structural invariants of a skew algebra")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("catalog", parents=[common], help="print a catalog algebra as a file")
    p.add_argument("name", help="one of " + ", ".join(sorted(catalog.CATALOG)))
    for flag in ("arity", "dim", "vars", "r", "rows", "cols", "d"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--kind")
    p.add_argument("--a")
    p.add_argument("--b")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("mc", parents=[common], help="Maurer-Cartan check d(d w_l) = 0")
    p.add_argument("file")
    p.add_argument("--sign-rule", choices=maurer_cartan.SIGN_RULES, default="graded")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("groupalg", parents=[common], help="group-algebra identities")
    p.add_argument("--n", type=int, help="arity for w o v = alpha(n) w")
    p.add_argument("--colored", help="alpha,beta,gamma for the colored reduction")
    p.set_defaults(func=cmd_groupalg)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out, code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NaryError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(out if isinstance(out, str) else render(out, args.format))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
