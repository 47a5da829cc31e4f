"""Command line front end.

Exit codes: 0 on success, 2 for malformed input, 3 when the input is well
formed but violates a precondition (e.g. a non σ-stable Picard lattice).
Results go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .brauer import brauer_group, format_result, report_json, report_markdown
from .constructions import FamilySpec, k3n_module
from .cyclic_gmodule import CyclicGModule, cohomology
from .errors import InputError, PreconditionError
from .exact_linalg import (
    decode_vector,
    encode_vector,
    matrix_from_json,
    matrix_to_json,
    smith_normal_form,
)
from .mod2_criterion import vanishing_witness
from .norm_descent import descent_trivial

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION = 0, 2, 3


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _parse_json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON argument {text!r} ({exc})") from exc


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def cmd_br(args) -> int:
    result = brauer_group(FamilySpec(args.family, args.param))
    if args.json:
        _emit(result.to_json())
    else:
        print(format_result(result))
    return EXIT_OK


def cmd_cohomology(args) -> int:
    module = CyclicGModule.from_json(_load_json(args.module))
    group = cohomology(module, args.degree)
    if args.json:
        _emit({"degree": args.degree, "order": module.order, "group": group.to_json()})
    else:
        print(f"H^{args.degree}(Z/{module.order}, M) = {group}")
    return EXIT_OK


def cmd_snf(args) -> int:
    M = matrix_from_json(_load_json(args.matrix))
    D, U, V = smith_normal_form(M)
    diag = D.diagonal_entries()
    if args.json:
        _emit({"diagonal": encode_vector(diag), "D": matrix_to_json(D),
               "U": matrix_to_json(U), "V": matrix_to_json(V)})
    else:
        print("diagonal: [" + ", ".join(str(d) for d in diag) + "]")
    return EXIT_OK


def cmd_criterion(args) -> int:
    data = _load_json(args.picard)
    n = args.n
    if isinstance(data, dict):
        if n is None:
            n = data.get("n")
        data = data.get("picard")
    if n is None:
        raise InputError("n must be given with --n or in the input file")
    if isinstance(n, bool) or not isinstance(n, int):
        raise InputError(f"n must be an integer, got {n!r}")
    if not isinstance(data, list):
        raise InputError("picard must be a list of vectors")
    gens = [decode_vector(v) for v in data]
    k3n_module(n)  # validates n
    witness = vanishing_witness(n, gens)
    if args.json:
        _emit({"vanishes": witness is not None,
               "witness": encode_vector(witness) if witness is not None else None})
    else:
        print(f"vanishes: {'yes' if witness is not None else 'no'}")
        if witness is not None:
            print(f"witness: {list(witness)}")
    return EXIT_OK


def cmd_descent(args) -> int:
    data = _load_json(args.module)
    if isinstance(data, dict) and "module" in data:
        module_data, cls = data["module"], data.get("class")
    else:
        module_data, cls = data, None
    if args.cls is not None:
        cls = _parse_json_arg(args.cls)
    if cls is None:
        raise InputError("no class given (use --class or a 'class' field)")
    module = CyclicGModule.from_json(module_data)
    c = decode_vector(cls)
    witness = descent_trivial(module, c)
    if args.json:
        _emit({"norm_trivial": True, "descent_trivial": witness is not None,
               "witness": encode_vector(witness) if witness is not None else None})
    else:
        print("norm trivial: yes")
        if witness is None:
            print("descent trivial: no (non-trivial Brauer–Severi variety)")
        else:
            print(f"descent trivial: yes, witness {list(witness)}")
    return EXIT_OK


def cmd_report(args) -> int:
    sys.stdout.write(report_json() if args.format == "json" else report_markdown())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enriques-brauer",
        description="Brauer groups of Enriques manifolds and related lattice computations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("br", help="Brauer group of a family")
    p.add_argument("--family", required=True, help="En, Kn, Tn or Rn (case-insensitive)")
    p.add_argument("--param", required=True, type=int, help="n for En/Kn, m for Tn/Rn")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_br)

    p = sub.add_parser("cohomology", help="H^p of a cyclic module given as JSON")
    p.add_argument("module", help="module JSON file ('-' for stdin)")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("snf", help="Smith normal form of a matrix given as JSON")
    p.add_argument("matrix", help="matrix JSON file ('-' for stdin)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("criterion", help="vanishing of the pulled-back Brauer class of E_n")
    p.add_argument("picard", help="JSON list of Picard generators, or {\"n\", \"picard\"}")
    p.add_argument("--n", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("descent", help="descent test for a class in the norm kernel")
    p.add_argument("module", help="module JSON file, or {\"module\", \"class\"}")
    p.add_argument("--class", dest="cls", help="class as a JSON list (overrides the file)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_descent)

    p = sub.add_parser("report", help="reproduce the Brauer group table")
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
