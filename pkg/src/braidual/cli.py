"""Command-line front end.

Exit codes: 0 when every selected check passes (Skipped entries do not
count against a run), 1 when something fails, 2 for unreadable input,
unknown names and bad arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import nullcontext
from pathlib import Path

from . import catalog, fileformat
from .errors import (AntipodeNotInvertible, BraidualError, InvalidParameter, NoAntipode,
                     ParseError, PrecheckFailed, ShapeMismatch, Singular)
from .linalg import Space
from .report import EQUATIONS, CheckReport
from .structures import (BraidedAlgebra, BraidedBialgebra, BraidedCoalgebra, BraidedHopf,
                         Braiding, Side, degree_bound, unchecked)

DEFAULT_MAX_DIM = 4096

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

MODULE_SUFFIXES = ("regular", "regular-right", "comodule", "comodule-left",
                   "trivial-module", "trivial-comodule")


class UsageError(Exception):
    pass


def max_dim() -> int:
    raw = os.environ.get("BRAIDUAL_MAX_DIM", str(DEFAULT_MAX_DIM))
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"BRAIDUAL_MAX_DIM must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("BRAIDUAL_MAX_DIM must be positive")
    return value


def _enforce_cap(sf: fileformat.StructureFile) -> None:
    cap = max_dim()
    for name, m in sf.maps.items():
        size = max(m.domain.size, m.codomain.size)
        if size > cap:
            raise UsageError(f"map {name} lives on a space of dimension {size}, "
                             f"above BRAIDUAL_MAX_DIM={cap}")


def _catalog_module(base, suffix: str):
    from . import modules
    if suffix == "regular":
        return modules.regular_module(base, Side.LEFT)
    if suffix == "regular-right":
        return modules.regular_module(base, Side.RIGHT)
    if suffix == "comodule":
        return modules.self_comodule(base, Side.RIGHT)
    if suffix == "comodule-left":
        return modules.self_comodule(base, Side.LEFT)
    v = Space("V", 1, ("v",))
    if suffix == "trivial-module":
        return modules.trivial_module(base, v, Side.LEFT)
    return modules.trivial_comodule(base, v, Side.RIGHT)


def load(source: str, checked: bool = True):
    """Resolve a catalog name, ``name/suffix`` shorthand, or structure file."""
    path = Path(source)
    if path.is_file():
        sf = fileformat.read(path)
        _enforce_cap(sf)
        try:
            with nullcontext() if checked else unchecked():
                return fileformat.build(sf)
        except (ShapeMismatch, Singular) as exc:
            raise UsageError(f"{source}: {exc}") from None
    name, _, suffix = source.partition("/")
    try:
        obj = catalog.lookup(name)
    except KeyError:
        raise UsageError(f"no such file or catalog name: {source}") from None
    if suffix:
        if suffix not in MODULE_SUFFIXES:
            raise UsageError(f"unknown (co)module {suffix!r}; "
                             f"choose from {', '.join(MODULE_SUFFIXES)}")
        obj = _catalog_module(catalog.as_hopf_or_bialgebra(obj), suffix)
    _enforce_cap(fileformat.to_file(obj))
    return obj


def _bialgebra_of(obj):
    obj = catalog.as_hopf_or_bialgebra(obj)
    if isinstance(obj, BraidedHopf):
        return obj.bialgebra
    if not isinstance(obj, BraidedBialgebra):
        raise UsageError(f"expected a bialgebra, got a {type(obj).__name__}")
    return obj


def _cutoff_scope(obj, cutoff):
    if isinstance(obj, catalog.GradedStructure):
        if cutoff is not None and cutoff > obj.cutoff:
            raise UsageError(f"structure is only known up to degree {obj.cutoff}")
        return degree_bound(obj.cutoff if cutoff is None else cutoff)
    if cutoff is not None:
        return degree_bound(cutoff)
    return nullcontext()


def _write_out(path, obj, params=None):
    if path:
        fileformat.write(path, fileformat.to_file(obj, params))


def _emit(report: CheckReport, fmt: str, extra: dict | None = None) -> None:
    if fmt == "json":
        d = report.to_dict()
        if extra:
            d.update(extra)
        print(json.dumps(d, indent=2))
    else:
        print(report.format_text())
        for key, value in (extra or {}).items():
            print(f"  {key}: {value}")


def _finish(report: CheckReport, args, extra=None) -> int:
    _emit(report, args.format, extra)
    return EXIT_OK if report.ok else EXIT_FAIL


# --------------------------------------------------------------------------
# commands


def cmd_catalog(args) -> int:
    rows = []
    for name in catalog.CATALOG_NAMES:
        obj = catalog.lookup(name)
        h = catalog.as_hopf_or_bialgebra(obj)
        rows.append({"name": name, "kind": "hopf" if isinstance(h, BraidedHopf) else "bialgebra",
                     "dim": h.space.dim})
    rows.append({"name": "maxmonoid", "kind": "bialgebra",
                 "dim": catalog.lookup("maxmonoid").space.dim})
    if args.format == "json":
        print(json.dumps({"instances": rows,
                          "module_suffixes": list(MODULE_SUFFIXES)}, indent=2))
    else:
        for r in rows:
            print(f"{r['name']:20} {r['kind']:10} dim {r['dim']}")
        print("(co)modules: <name>/" + "|".join(MODULE_SUFFIXES))
    return EXIT_OK


def cmd_check(args) -> int:
    obj = load(args.input, checked=False)
    ids = None
    if args.axioms:
        ids = [a.strip() for a in args.axioms.split(",") if a.strip()]
        unknown = [a for a in ids if a not in EQUATIONS]
        if unknown:
            raise UsageError(f"unknown equation ids: {', '.join(unknown)}")
    with _cutoff_scope(obj, args.cutoff):
        target = obj.hopf if isinstance(obj, catalog.GradedStructure) else obj
        report = target.verify()
    report.subject = args.input
    if ids is not None:
        report = report.filtered(ids)
    return _finish(report, args)


def cmd_dualize(args) -> int:
    from .duality import double_dual_iso, dual_bialgebra, dual_hopf, verify_dual_pairing
    obj = load(args.input)
    with _cutoff_scope(obj, args.cutoff):
        h = catalog.as_hopf_or_bialgebra(obj)
        hb = _bialgebra_of(obj)
        if args.what == "bialgebra":
            u, _ = dual_bialgebra(hb)
            report, out = u.verify(), u
        elif args.what == "hopf":
            if not isinstance(h, BraidedHopf):
                raise NoAntipode(f"{args.input} has no antipode")
            out = dual_hopf(h)
            report = out.verify()
        elif args.what == "pair-verify":
            u, pairing = dual_bialgebra(hb)
            antipodes = None
            if isinstance(h, BraidedHopf):
                from .linalg import lin_transpose
                antipodes = (lin_transpose(h.antipode), h.antipode)
            report, out = verify_dual_pairing(pairing, u, hb, antipodes), None
        else:
            report, out = double_dual_iso(h), None
    report.subject = f"{args.what} of {args.input}"
    if out is not None:
        _write_out(args.out, out)
    elif args.out:
        raise UsageError(f"--what {args.what} produces no structure to write")
    return _finish(report, args)


def cmd_twist(args) -> int:
    from .twist import WhichBraiding, twist
    obj = load(args.input)
    which = WhichBraiding(args.braiding)
    with _cutoff_scope(obj, args.cutoff):
        t = twist(_bialgebra_of(obj), args.k, args.n, which)
        report = t.report()
    name = "Psi" if which is WhichBraiding.PSI else "Psi^-1"
    report.subject = f"{args.input}^({args.k},{args.n}) under {name}"
    with unchecked():
        _write_out(args.out, t.as_bialgebra())
    return _finish(report, args)


def cmd_convert(args) -> int:
    from . import modules
    obj = load(args.input)
    comod = isinstance(obj, (modules.BraidedComodule, modules.ComoduleAlgebra))
    mod = isinstance(obj, (modules.BraidedModule, modules.ModuleAlgebra))
    if not (comod or mod):
        raise UsageError("convert expects a module or comodule input")
    if args.round_trip:
        try:
            rt = modules.duality_round_trip(obj)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rt.report.subject = f"round trip of {args.input}"
        _write_out(args.out, rt.second)
        return _finish(rt.report, args, {"reproduced": rt.reproduced})
    direction = args.direction
    needs = {"comodule-to-module": comod, "dualize-coaction": comod,
             "module-to-comodule": mod, "dualize-action": mod}
    if direction is None:
        raise UsageError("convert needs --direction or --round-trip")
    if not needs[direction]:
        raise UsageError(f"--direction {direction} does not apply to a "
                         f"{type(obj).__name__}")
    try:
        if direction == "comodule-to-module":
            out = modules.comodule_to_module(obj)
        elif direction == "module-to-comodule":
            out = modules.module_to_comodule(obj)
        elif direction == "dualize-coaction":
            out = modules.dualize_coaction(obj)
        else:
            out = modules.dualize_action(obj)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = CheckReport(f"{direction} of {args.input}")
    report.extend(out.verify())
    if direction.startswith("dualize"):
        report.extend(modules.check_adjointness(obj, out))
    _write_out(args.out, out)
    return _finish(report, args)


# --------------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="braidual", description="Exact checks and dualities for braided "
                                             "Hopf algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, out=True):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--cutoff", type=int, default=None,
                        help="compare graded identities only up to this total degree")
        if out:
            sp.add_argument("--out", default=None, help="write the resulting structure here")

    c = sub.add_parser("catalog", help="list built-in structures")
    c.add_argument("action", choices=("list",))
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("check", help="run the axiom checks on a structure")
    c.add_argument("input")
    c.add_argument("--axioms", default=None, help="comma separated equation ids")
    common(c, out=False)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("dualize", help="build and verify the dual")
    c.add_argument("input")
    c.add_argument("--what", required=True,
                   choices=("bialgebra", "hopf", "pair-verify", "double-dual"))
    common(c)
    c.set_defaults(func=cmd_dualize)

    c = sub.add_parser("twist", help="build H^(k,n) and check it")
    c.add_argument("input")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--braiding", choices=("psi", "psiinv"), default="psi")
    common(c)
    c.set_defaults(func=cmd_twist)

    c = sub.add_parser("convert", help="turn (co)modules into each other")
    c.add_argument("input")
    c.add_argument("--direction", default=None,
                   choices=("comodule-to-module", "module-to-comodule",
                            "dualize-coaction", "dualize-action"))
    c.add_argument("--round-trip", action="store_true")
    common(c)
    c.set_defaults(func=cmd_convert)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"parse error at line {exc.line}, column {exc.column}: {exc.reason}",
              file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, InvalidParameter, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecheckFailed as exc:
        print(exc.report.format_text())
        return EXIT_FAIL
    except (NoAntipode, AntipodeNotInvertible, BraidualError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
