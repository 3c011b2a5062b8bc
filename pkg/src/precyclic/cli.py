"""``precyclic`` command line.

Exit status: 0 when every requested check passes, 1 on a mathematical
failure (including refusing to compute on a module that fails ``verify``),
2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from .complexes import IncompleteData, homology
from .core import (
    PrecyclicModule,
    QuasiIsoInversionFailure,
    connes_homology,
    cyclic_homology,
    sbi_sequence,
    underlying_complex,
    verify_identities,
)
from .generators import DEFAULT_SIZE_GUARD, EXAMPLES, SizeGuardExceeded
from .linalg import AbelianGroupStructure, IntegerMatrix
from .modfile import ModuleFileError, emit_module, load_module, save_module
from .simplex import SimplexKind, verify_simplex_identities

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def bundled_module_names() -> list[str]:
    data = resources.files("precyclic") / "data"
    return sorted(p.name for p in data.iterdir() if p.name.endswith(".module"))


def resolve_module(path: str, size_guard: int) -> PrecyclicModule:
    """Load ``path``; a bare bundled name such as ``point.module`` also works."""
    p = Path(path)
    if not p.exists() and p.name == path and path in bundled_module_names():
        with resources.as_file(resources.files("precyclic") / "data" / path) as f:
            M = load_module(f)
    else:
        M = load_module(p)
    for n, r in enumerate(M.ranks):
        if r > size_guard:
            raise InputError(f"rank {r} in degree {n} exceeds the size guard {size_guard}")
    return M


def _group_json(G: AbelianGroupStructure) -> dict:
    return {"group": str(G), "free_rank": G.free_rank, "torsion": list(G.torsion)}


def _matrix_json(M: IntegerMatrix) -> dict:
    return {"shape": [M.rows, M.cols], "data": M.to_lists()}


def _matrix_text(M: IntegerMatrix) -> str:
    if M.rows == 0 or M.cols == 0:
        return f"0 ({M.rows}x{M.cols})"
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in M.to_lists()) + "]"


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print("\n".join(lines))


def _refuse_unverified(args, M: PrecyclicModule, command: str) -> int | None:
    report = verify_identities(M)
    if report.ok:
        return None
    f = report.first_failure
    msg = f"refusing to run {command}: identity {f.name!r} fails in degree {f.degree}"
    _emit(args, {"command": command, "ok": False, "error": msg,
                 "failure": {"identity": f.name, "degree": f.degree, "detail": _jsonable(f.detail)}},
          [msg])
    return EXIT_FAIL


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def cmd_verify(args) -> int:
    M = resolve_module(args.module, args.size_guard)
    report = verify_identities(M)
    lines = [f"verify {args.module}: {M.name or 'module'} through degree {M.max_degree}"]
    for name in report.names():
        checks = [c for c in report.checks if c.name == name]
        bad = [c for c in checks if not c.ok]
        degrees = f"n={checks[0].degree}..{checks[-1].degree}"
        if checks[0].informational:
            status = "info" if bad else "ok  "
            note = f" (not required; differs in n={','.join(str(c.degree) for c in bad)})" if bad else " (not required)"
            lines.append(f"  {status} {name} [{degrees}]{note}")
        elif bad:
            lines.append(f"  FAIL {name} [{degrees}] first at n={bad[0].degree}: {bad[0].detail}")
        else:
            lines.append(f"  ok   {name} [{degrees}]")
    lines.append("PASS" if report.ok else "FAIL")
    payload = {
        "command": "verify", "module": args.module, "ok": report.ok,
        "max_degree": M.max_degree,
        "checks": [{"identity": c.name, "degree": c.degree, "ok": c.ok,
                    "informational": c.informational, "detail": _jsonable(c.detail)}
                   for c in report.checks],
    }
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_FAIL


_GROUP_FUNCS: dict[str, tuple[str, Callable]] = {
    "homology": ("H", lambda M, n: homology(underlying_complex(M), n)),
    "cyclic": ("HC", cyclic_homology),
    "connes": ("HC^λ", connes_homology),
}


def cmd_groups(args) -> int:
    M = resolve_module(args.module, args.size_guard)
    refused = _refuse_unverified(args, M, args.command)
    if refused is not None:
        return refused
    window = M.max_degree - 1
    top = window if args.max_degree is None else args.max_degree
    if top > window:
        raise IncompleteData(f"degree {top} needs the module through degree {top + 1}; "
                             f"trustworthy window is 0..{window}")
    symbol, func = _GROUP_FUNCS[args.command]
    groups = {n: func(M, n).structure for n in range(top + 1)}
    lines = [f"{args.command} {args.module} (trustworthy through degree {window})"]
    if M.rational:
        lines.append("  coefficients ℚ: read free ranks; torsion reflects the integral build")
    lines += [f"  {symbol}_{n} = {G}" for n, G in groups.items()]
    payload = {"command": args.command, "module": args.module, "ok": True,
               "trustworthy_degree": window, "rational": M.rational,
               "groups": [dict(degree=n, **_group_json(G)) for n, G in groups.items()]}
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_sbi(args) -> int:
    M = resolve_module(args.module, args.size_guard)
    refused = _refuse_unverified(args, M, "sbi")
    if refused is not None:
        return refused
    n_max = max(M.max_degree - 2, 0) if args.max_degree is None else args.max_degree
    report = sbi_sequence(M, n_max)
    ok = report.exact and report.all_verified and report.shift_consistent
    lines = [f"sbi {args.module} through degree {n_max} (bicomplex width {report.width}, "
             f"height {report.height})"]
    if M.rational:
        lines.append("  coefficients ℚ: read free ranks; torsion reflects the integral build")
    lines.append(f"  {'n':>3}  {'H_n':<14}{'HC_n':<18}{'HC^λ_n':<14}HC_(n-2)")
    for r in report.rows:
        lines.append(f"  {r.degree:>3}  {str(r.H):<14}{str(r.HC):<18}{str(r.HC_lambda):<14}{r.HC_shifted}")
    lines.append("  maps (matrices in generator coordinates):")
    for n in range(n_max + 1):
        lines.append(f"    I_{n}: H_{n} -> HC_{n}      {_matrix_text(report.I[n])}")
        lines.append(f"    S_{n}: HC_{n} -> HC_{n - 2}    {_matrix_text(report.S[n])}")
        if n in report.B:
            lines.append(f"    B_{n}: HC_{n - 2} -> H_{n - 1}  {_matrix_text(report.B[n])}")
    lines.append("  exactness:")
    for nd in report.nodes:
        if nd.exactness is None:
            verdict = "not verified (window too small)"
        else:
            e = nd.exactness
            verdict = "exact" if e.ok else (
                f"NOT exact (well-defined={e.well_defined}, im⊆ker={e.image_in_kernel}, "
                f"ker⊆im={e.kernel_in_image})")
        lines.append(f"    at {nd.label:<8} (n={nd.degree}) {nd.structure}: {verdict}")
    if not report.shift_consistent:
        lines.append("  quotient homology does not match HC_{n-2}")
    lines.append("PASS" if ok else "FAIL")
    payload = {
        "command": "sbi", "module": args.module, "ok": ok, "n_max": n_max,
        "width": report.width, "height": report.height, "rational": M.rational,
        "exact": report.exact, "all_verified": report.all_verified,
        "shift_consistent": report.shift_consistent,
        "rows": [{"degree": r.degree, "H": _group_json(r.H), "HC": _group_json(r.HC),
                  "HC_lambda": _group_json(r.HC_lambda), "HC_shifted": _group_json(r.HC_shifted)}
                 for r in report.rows],
        "I": {str(n): _matrix_json(m) for n, m in report.I.items()},
        "S": {str(n): _matrix_json(m) for n, m in report.S.items()},
        "B": {str(n): _matrix_json(m) for n, m in report.B.items()},
        "nodes": [{"label": nd.label, "degree": nd.degree, "group": str(nd.structure),
                   "verified": nd.exactness is not None,
                   "exact": None if nd.exactness is None else nd.exactness.ok,
                   "rank_image": None if nd.exactness is None else nd.exactness.rank_image,
                   "rank_kernel": None if nd.exactness is None else nd.exactness.rank_kernel}
                  for nd in report.nodes],
    }
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_example(args) -> int:
    if args.name not in EXAMPLES:
        raise InputError(f"unknown example {args.name!r}; choose from {', '.join(EXAMPLES)}")
    M = EXAMPLES[args.name].build(args.max_degree, args.size_guard)
    if args.emit:
        save_module(M, args.emit)
        msg = f"wrote {args.name} through degree {M.max_degree} to {args.emit}"
        _emit(args, {"command": "example", "ok": True, "name": args.name,
                     "max_degree": M.max_degree, "ranks": list(M.ranks), "path": args.emit},
              [msg])
    else:
        sys.stdout.write(emit_module(M))
    return EXIT_OK


def cmd_simplex(args) -> int:
    if args.max_n < 1:
        raise InputError("--max-n must be at least 1")
    kind = SimplexKind(args.kind)
    report = verify_simplex_identities(args.max_n, kind)
    lines = [f"simplex-check kind={kind.value} n<={args.max_n}"]
    for family, count in report.checked.items():
        bad = report.failed(family)
        lines.append(f"  {'ok  ' if not bad else 'FAIL'} {family}: {count} instances"
                     + (f", {len(bad)} failures; first {bad[0]}" if bad else ""))
    lines.append("PASS" if report.ok else "FAIL")
    payload = {"command": "simplex-check", "kind": kind.value, "max_n": args.max_n,
               "ok": report.ok, "degeneracy_ok": report.degeneracy_ok,
               "face_and_cyclic_ok": report.face_and_cyclic_ok, "checked": report.checked,
               "failures": [vars(f) for f in report.failures]}
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="precyclic",
        description="Exact homology, cyclic homology and SBI checks for precyclic modules.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--size-guard", type=int, default=DEFAULT_SIZE_GUARD,
                        help="largest rank allowed in any degree (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check every structural identity")
    p.add_argument("module")
    p.set_defaults(func=cmd_verify)
    for name, what in (("homology", "H_n of (C, ∂)"), ("cyclic", "HC_n from the bicomplex"),
                       ("connes", "HC^λ_n from coker(1-t)")):
        p = sub.add_parser(name, parents=[common], help=what)
        p.add_argument("module")
        p.add_argument("--max-degree", type=int, default=None)
        p.set_defaults(func=cmd_groups)
    p = sub.add_parser("sbi", parents=[common], help="periodicity sequence with exactness")
    p.add_argument("module")
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(func=cmd_sbi)
    p = sub.add_parser("example", parents=[common], help="generate a built-in module")
    p.add_argument("name", help=", ".join(EXAMPLES))
    p.add_argument("--emit", metavar="FILE", default=None)
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(func=cmd_example)
    p = sub.add_parser("simplex-check", parents=[common],
                       help="coordinate-ring identities of the algebraic simplices")
    p.add_argument("--kind", choices=[k.value for k in SimplexKind], default="sum-one")
    p.add_argument("--max-n", type=int, default=6)
    p.set_defaults(func=cmd_simplex)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except (ModuleFileError, InputError, IncompleteData, SizeGuardExceeded, ValueError) as e:
        if isinstance(e, QuasiIsoInversionFailure):
            print(f"error: {e}", file=sys.stderr)
            return EXIT_FAIL
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
