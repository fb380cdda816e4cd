"""Command-line front end.

Examples::

    klext kl --type A3 --x s2,s1,s3,s2
    klext pkl --type A2~ --I s1 --flavor antispherical --max-length 6
    klext ext --type A2 --case finite --I s1 --J s2 --format json
    klext double-check --type B2 --I s1 --J s2

Exit status: 0 on success, 1 on invalid input, 2 when an identity check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass

from . import __version__
from .cache import cache_load, cache_store
from .coxeter import LEFT, PRESETS, RIGHT, CoxeterSystem, Element
from .double import check_double_inversion, check_p_identities
from .errors import KLError
from .ext import BlockSpec, check_koszul_inversion_finite, ext_table
from .hecke import HeckeAlgebra
from .laurent import LaurentPoly
from .modules import ANTISPHERICAL, SPHERICAL, check_parabolic_inversion, parabolic_module, quotient_ball
from .parabolic import double_min_reps, is_regular, quotient
from .tables import CheckReport, KLTable

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2

log = logging.getLogger("klext")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which we reserve for failed checks
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class RunConfig:
    command: str
    system: CoxeterSystem
    I: frozenset[int]
    J: frozenset[int]
    max_length: int
    fmt: str
    cache: str | None


# -- output ------------------------------------------------------------------


def _poly_json(p: LaurentPoly) -> dict:
    return {"terms": p.to_json(), "text": str(p)}


def _dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def render_table(t: KLTable, fmt: str) -> str:
    labels = [str(x) for x in t.index]
    if fmt == "json":
        return _dump_json(
            {
                "kind": t.kind,
                "meta": t.meta,
                "index": labels,
                "entries": [[p.to_json() for p in row] for row in t.matrix()],
                "display": [[str(p) for p in row] for row in t.matrix()],
            }
        )
    if fmt == "csv":
        rows = [[t.kind, *labels]]
        rows += [[lab, *(str(p) for p in row)] for lab, row in zip(labels, t.matrix())]
        return _csv(rows)
    lines = [f"# {t.kind} table, {len(labels)} elements"]
    lines += [f"# {k}: {_meta_text(v)}" for k, v in sorted(t.meta.items())]
    lines.append("# row | column: polynomial (zero entries omitted)")
    for r in t.index:
        for c in t.index:
            p = t[(r, c)]
            if p:
                lines.append(f"{r} | {c}: {p}")
    return "\n".join(lines) + "\n"


def _meta_text(v) -> str:
    if isinstance(v, list):
        return "{" + ",".join(v) + "}"
    return str(v)


def render_listing(kind: str, x: Element, items: list[tuple[Element, LaurentPoly]], meta: dict, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(
            {
                "kind": kind,
                "meta": meta,
                "x": str(x),
                "terms": [{"y": str(y), **_poly_json(p)} for y, p in items],
            }
        )
    if fmt == "csv":
        return _csv([["y", kind], *[[str(y), str(p)] for y, p in items]])
    return "".join(f"{y}: {p}\n" for y, p in items)


def render_elements(kind: str, rows: list[tuple[Element, dict]], meta: dict, fmt: str) -> str:
    extra = sorted({k for _, d in rows for k in d})
    if fmt == "json":
        return _dump_json(
            {"kind": kind, "meta": meta, "elements": [{"element": str(x), "length": x.length, **d} for x, d in rows]}
        )
    if fmt == "csv":
        return _csv([["element", "length", *extra], *[[str(x), x.length, *(d[k] for k in extra)] for x, d in rows]])
    out = []
    for x, d in rows:
        tail = "".join(f"  {k}={d[k]}" for k in extra)
        out.append(f"{x}{tail}\n")
    return "".join(out)


def render_reports(reports: list[CheckReport], fmt: str) -> str:
    passed = all(r.passed for r in reports)
    if fmt == "json":
        return _dump_json(
            {
                "passed": passed,
                "checks": [
                    {"name": r.name, "passed": r.passed, "checked": r.checked, "counterexample": r.counterexample}
                    for r in reports
                ],
            }
        )
    if fmt == "csv":
        return _csv(
            [["check", "passed", "checked", "counterexample"]]
            + [[r.name, r.passed, r.checked, r.counterexample or ""] for r in reports]
        )
    return "".join(r.line() + "\n" for r in reports) + ("PASS\n" if passed else "FAIL\n")


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--type", dest="preset", metavar="PRESET", help=f"preset system: {', '.join(PRESETS)}")
    src.add_argument("--matrix", metavar="FILE", help="JSON file with 'generators' and 'matrix' (0 = infinity)")
    common.add_argument("--I", dest="I", default="", metavar="LABELS", help="comma-separated generators of I")
    common.add_argument("--J", dest="J", default="", metavar="LABELS", help="comma-separated generators of J")
    common.add_argument("--max-length", type=int, default=12, metavar="N", help="length bound (default 12)")
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache", metavar="PATH", help="JSON cache of KL polynomials")

    p = _Parser(prog="klext", description="Kazhdan-Lusztig polynomials, parabolic variants and Ext tables.")
    p.add_argument("--version", action="version", version=f"klext {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, description=help_)

    add("kl", "KL polynomials h_{y,x}; with --x, list y: h_{y,x}").add_argument("--x", metavar="WORD")
    add("ikl", "inverse KL polynomials h^{y,x}; with --x, list y: h^{x,y}").add_argument("--x", metavar="WORD")
    for name, what in (("pkl", "parabolic KL polynomials m_{y,x} / n_{y,x}"), ("pkl-inv", "inverse parabolic KL polynomials")):
        sp = add(name, what + " over ^I W")
        sp.add_argument("--flavor", choices=(SPHERICAL, ANTISPHERICAL), default=ANTISPHERICAL)
        sp.add_argument("--x", metavar="WORD")
    add("inv-check", "check both parabolic inversion formulas for I")
    add("double-check", "check the double parabolic identities and inversion formula for (J, I)")
    add("koszul-check", "check the finite-type Koszul inversion identity for (I, J)")
    add("ext", "Ext-dimension table of a singular parabolic block").add_argument(
        "--case", choices=("finite", "affine-neg", "affine-pos"), default="finite"
    )
    add("quotient", "minimal coset representatives for W_I").add_argument(
        "--side", choices=(LEFT, RIGHT), default=LEFT, help="left: ^I W (default); right: W^I"
    )
    add("double-cosets", "minimal double coset representatives ^J W^I")
    return p


def _config(ns) -> RunConfig:
    system = CoxeterSystem.preset(ns.preset) if ns.preset else CoxeterSystem.from_file(ns.matrix)
    if ns.max_length < 0:
        raise UsageError("--max-length must be non-negative")
    return RunConfig(
        ns.command, system, system.parse_subset(ns.I), system.parse_subset(ns.J), ns.max_length, ns.fmt, ns.cache
    )


# -- commands ----------------------------------------------------------------


def _meta(cfg: RunConfig, **kw) -> dict:
    W = cfg.system
    meta = {"system": W.name, "I": W.subset_labels(cfg.I), "J": W.subset_labels(cfg.J), "max_length": cfg.max_length}
    meta.update(kw)
    return meta


def _dispatch(cfg: RunConfig, ns, hecke: HeckeAlgebra) -> tuple[str, bool]:
    W, fmt, L = cfg.system, cfg.fmt, cfg.max_length
    cmd = cfg.command
    x = W.parse_word(ns.x) if getattr(ns, "x", None) else None

    if cmd == "kl":
        if x is not None:
            items = sorted(hecke.kl_basis(x).terms.items(), key=lambda t: t[0].sort_key())
            return render_listing("h", x, items, {"system": W.name}, fmt), True
        return render_table(hecke.kl_table(W.enumerate_up_to_length(L)), fmt), True

    if cmd == "ikl":
        if x is not None:
            t = hecke.inverse_table(W.enumerate_up_to_length(x.length))
            items = [(y, t[(x, y)]) for y in t.index if t[(x, y)]]
            return render_listing("h_inv", x, items, {"system": W.name}, fmt), True
        return render_table(hecke.inverse_table(W.enumerate_up_to_length(L)), fmt), True

    if cmd in ("pkl", "pkl-inv"):
        mod = parabolic_module(hecke, cfg.I, ns.flavor)
        meta = _meta(cfg, flavor=ns.flavor)
        if cmd == "pkl":
            if x is not None:
                items = sorted(mod.kl_basis(x).terms.items(), key=lambda t: t[0].sort_key())
                return render_listing("m" if ns.flavor == SPHERICAL else "n", x, items, meta, fmt), True
            return render_table(mod.table(quotient_ball(W, cfg.I, L)), fmt), True
        if x is not None:
            mod.check_index(x)
            t = mod.inverse_table(quotient_ball(W, cfg.I, x.length))
            items = [(y, t[(x, y)]) for y in t.index if t[(x, y)]]
            return render_listing(t.kind, x, items, meta, fmt), True
        return render_table(mod.inverse_table(quotient_ball(W, cfg.I, L)), fmt), True

    if cmd == "inv-check":
        rep = check_parabolic_inversion(hecke, cfg.I, quotient_ball(W, cfg.I, L))
        return render_reports([rep], fmt), rep.passed

    if cmd == "double-check":
        from .double import DoubleModule

        index = DoubleModule(hecke, cfg.J, cfg.I).regular_reps(L)
        reps = [
            check_p_identities(hecke, cfg.J, cfg.I, index),
            check_double_inversion(hecke, cfg.J, cfg.I, index),
        ]
        return render_reports(reps, fmt), all(r.passed for r in reps)

    if cmd == "koszul-check":
        rep = check_koszul_inversion_finite(hecke, cfg.I, cfg.J)
        return render_reports([rep], fmt), rep.passed

    if cmd == "ext":
        case = {"finite": "finite", "affine-neg": "affine_negative", "affine-pos": "affine_positive"}[ns.case]
        spec = BlockSpec(W, cfg.I, cfg.J, case, None if case == "finite" else L)
        return render_table(ext_table(hecke, spec), fmt), True

    if cmd == "quotient":
        rows = [(y, {}) for y in quotient(W, cfg.I, ns.side, L)]
        return render_elements("quotient", rows, _meta(cfg, side=ns.side), fmt), True

    if cmd == "double-cosets":
        rows = [(y, {"regular": is_regular(y, cfg.J, cfg.I)}) for y in double_min_reps(W, cfg.J, cfg.I, L)]
        return render_elements("double_cosets", rows, _meta(cfg), fmt), True

    raise UsageError(f"unknown command {cmd!r}")


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    """Run the CLI; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config(ns)
        hecke = HeckeAlgebra(cfg.system)
        if cfg.cache:
            cache_load(hecke, cfg.cache)
        text, ok = _dispatch(cfg, ns, hecke)
        if cfg.cache:
            cache_store(hecke, cfg.cache)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_INVALID
    except (KLError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"klext: error: {msg}", file=stderr)
        return EXIT_INVALID
    stdout.write(text)
    return EXIT_OK if ok else EXIT_FAILED


def main() -> None:
    logging.basicConfig(format="klext: warning: %(message)s", level=logging.WARNING)
    try:
        code = run()
    except SystemExit as exc:  # --help / --version
        code = exc.code if isinstance(exc.code, int) else 0
    sys.exit(code)
