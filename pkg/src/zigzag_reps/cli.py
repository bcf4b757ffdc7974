"""Command-line interface: ``zigzag-reps <command> [options]``.

Exit codes: 0 ok, 1 validation failure, 2 verification failure, 3 I/O or
usage error (unreadable file, parse error, unknown bar or index).
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .algebra import Chain, is_prime
from .apex import Mode
from .io import ParseError, Parsed, read
from .model import DeltaComplex, structural, validate
from .prism import PrismChain, Run, Vertical
from .zigzag import BarRecord, ZigzagBarcode, zigzag_barcode

EXIT_OK, EXIT_INVALID, EXIT_UNVERIFIED, EXIT_IO = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_IO):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    path: Optional[str] = None
    p: Optional[int] = None
    format: str = "auto"
    json: bool = False
    bar: Optional[int] = None
    index: Optional[int] = None
    mode: Mode = Mode.LAZY
    seed: int = 0
    extra: Dict[str, Any] = field(default_factory=dict)


def _load(cfg: RunConfig) -> Parsed:
    if cfg.path is None:
        raise CliError("an input file is required")
    try:
        return read(cfg.path, cfg.format)
    except OSError as exc:
        raise CliError(f"{cfg.path}: {exc.strerror or exc}") from None
    except ParseError as exc:
        raise CliError(f"{cfg.path}: {exc}") from None


def _field(cfg: RunConfig, parsed: Optional[Parsed] = None) -> int:
    p = cfg.p if cfg.p is not None else (parsed.p if parsed and parsed.p else 2)
    if not is_prime(p):
        raise CliError(f"field size {p} is not prime")
    return p


def _emit(out, cfg: RunConfig, payload, lines: Sequence[str]) -> None:
    if cfg.json:
        json.dump(payload, out, indent=2, sort_keys=False)
        out.write("\n")
    else:
        for line in lines:
            out.write(line + "\n")


def format_chain(z: Chain) -> str:
    if not z:
        return "0"
    return ", ".join(f"{cell}: {a}" for cell, a in sorted(z.items(), key=lambda kv: str(kv[0])))


def format_prism(pc: PrismChain) -> str:
    parts = []
    for cell, a in pc.sorted_terms():
        if isinstance(cell, Vertical):
            parts.append(f"{a}*{cell.cell}@{cell.t}")
        else:
            parts.append(f"{a}*{cell.cell}x[{cell.t1},{cell.t2}]")
    return " + ".join(parts) if parts else "0"


def _prism_json(pc: PrismChain) -> List[Dict[str, Any]]:
    out = []
    for cell, a in pc.sorted_terms():
        if isinstance(cell, Vertical):
            out.append({"cell": str(cell.cell), "t": cell.t, "coeff": a})
        else:
            out.append({"cell": str(cell.cell), "run": [cell.t1, cell.t2], "coeff": a})
    return out


def bar_json(zz: ZigzagBarcode, bar: BarRecord) -> Dict[str, Any]:
    pc = bar.pair
    return {
        "id": bar.id,
        "dim": bar.dim,
        "type": bar.type,
        "span": list(bar.span),
        "input_span": list(zz.input_span(bar)),
        "apex": {"b": bar.b, "d": bar.d, "kind": bar.kind.value},
        "pair": {"kind": pc.kind.name.lower(), "birth": repr(pc.birth), "death": repr(pc.death)},
    }


def _barcode(cfg: RunConfig):
    parsed = _load(cfg)
    p = _field(cfg, parsed)
    bad = structural(validate(parsed.complex, p))
    if bad:
        raise CliError("invalid zigzag:\n" + "\n".join(f"  {v}" for v in bad), EXIT_INVALID)
    return zigzag_barcode(parsed.complex, p, cfg.mode)


# --------------------------------------------------------------------------
# Commands


def cmd_validate(cfg: RunConfig, out=sys.stdout) -> int:
    parsed = _load(cfg)
    p = _field(cfg, parsed)
    violations = validate(parsed.complex, p)
    bad = structural(violations)
    payload = {
        "ok": not bad,
        "violations": [
            {"rule": v.rule, "cells": [str(c) for c in v.cells], "message": v.message, "repaired_by_padding": v.paddable}
            for v in violations
        ],
    }
    lines = [f"{'note' if v.paddable else 'error'}: {v}" + (" (repaired by padding)" if v.paddable else "") for v in violations]
    lines.append("ok" if not bad else f"{len(bad)} violation(s)")
    _emit(out, cfg, payload, lines)
    return EXIT_OK if not bad else EXIT_INVALID


def cmd_barcode(cfg: RunConfig, out=sys.stdout) -> int:
    zz = _barcode(cfg)
    payload = {"field": zz.p, "n": zz.complex.n, "bars": [bar_json(zz, b) for b in zz.bars]}
    lines = [
        f"{b.id}: dim {b.dim} {b.type} [{b.span[0]},{b.span[1]}]  apex {b.kind.value} b={b.b} d={b.d}"
        for b in zz.bars
    ]
    _emit(out, cfg, payload, lines)
    return EXIT_OK


def cmd_reps(cfg: RunConfig, out=sys.stdout) -> int:
    zz = _barcode(cfg)
    if cfg.bar is not None and not 0 <= cfg.bar < len(zz.bars):
        raise CliError(f"unknown bar {cfg.bar}; there are {len(zz.bars)} bars")
    if cfg.index is not None and not 0 <= cfg.index <= zz.complex.n:
        raise CliError(f"unknown index {cfg.index}; indices run from 0 to {zz.complex.n}")
    if cfg.bar is not None:
        bars = [zz.bar(cfg.bar)]
        if cfg.index is not None and cfg.index not in bars[0]:
            raise CliError(f"index {cfg.index} is outside the span {list(bars[0].span)} of bar {cfg.bar}")
    elif cfg.index is not None:
        bars = zz.alive(cfg.index)
    else:
        bars = zz.bars

    if cfg.bar is not None and cfg.index is not None:
        z = zz.representative(cfg.bar, cfg.index)
        payload = {"bar": cfg.bar, "index": cfg.index, "chain": {str(k): v for k, v in z.items()}}
        _emit(out, cfg, payload, [format_chain(z)])
        return EXIT_OK

    records, lines = [], []
    for bar in bars:
        idx = [cfg.index] if cfg.index is not None else list(bar.indices())
        slices = {i: zz.representative(bar.id, i) for i in idx}
        apex = zz.reps[bar.id].cycle
        records.append(
            {
                "bar": bar.id,
                "apex": _prism_json(apex),
                "slices": {str(i): {str(k): v for k, v in z.items()} for i, z in slices.items()},
            }
        )
        lines.append(f"bar {bar.id} (dim {bar.dim} {bar.type} [{bar.span[0]},{bar.span[1]}])")
        lines.append(f"  apex: {format_prism(apex)}")
        lines.extend(f"  {i}: {format_chain(z)}" for i, z in slices.items())
    _emit(out, cfg, {"reps": records}, lines)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out=sys.stdout) -> int:
    from .generate import random_suite
    from .verify import full_verify

    if cfg.path is not None:
        parsed = _load(cfg)
        cases = [(parsed.complex, _field(cfg, parsed))]
    else:
        count = cfg.extra.get("count", 20)
        cases = list(random_suite(cfg.seed, count, primes=(cfg.p,) if cfg.p else (2, 5)))
    reports, lines = [], []
    code = EXIT_OK
    for k, (c, p) in enumerate(cases):
        rep = full_verify(c, p, cfg.mode, seed=cfg.seed + k)
        reports.append(rep.to_dict())
        if not rep.ok:
            code = max(code, EXIT_INVALID if not rep["validate"].ok else EXIT_UNVERIFIED)
        if len(cases) == 1:
            lines.extend(rep.summary())
        else:
            status = "PASS" if rep.ok else "FAIL"
            nbars = len(rep.barcode.bars) if rep.barcode else 0
            lines.append(f"{status} case {k} (p={p}, m={c.m}, bars={nbars})")
            lines.extend("    " + s for s in rep.summary() if s.startswith("FAIL"))
    lines.append("all checks passed" if code == EXIT_OK else "verification failed")
    payload = reports[0] if len(reports) == 1 else {"ok": code == EXIT_OK, "cases": reports}
    _emit(out, cfg, payload, lines)
    return code


def _median_time(fn, repeat: int = 5) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def cmd_bench(cfg: RunConfig, out=sys.stdout) -> int:
    from .cone import build_cone
    from .generate import circle_lift_args, random_zigzag
    from .lift import lift_cycle
    from .model import pad
    from .reduction import lazy_reduce
    from .zigzag import RepIndex

    sizes = cfg.extra.get("sizes") or [1000, 10000]
    repeat = cfg.extra.get("repeat", 5)
    p = cfg.p or 2
    rows = []
    for m in sizes:
        c, args = circle_lift_args(m, p)
        lift_t = _median_time(lambda: lift_cycle(args, c), repeat)
        idx = RepIndex(lift_cycle(args, c))
        xs = [0.5 + 2 * k for k in range(0, c.n // 2, max(1, c.n // 400))]
        stab_t = _median_time(lambda: [idx.stab(x) for x in xs], repeat) / len(xs)
        scan_t = _median_time(lambda: [idx.scan(x) for x in xs[:20]], repeat) / len(xs[:20])
        rows.append({"m": c.m, "lift_s": lift_t, "stab_s": stab_t, "scan_s": scan_t})
    zc = pad(random_zigzag(cfg.seed, m=60))
    red_t = _median_time(lambda: lazy_reduce(build_cone(zc, p)), repeat)
    payload = {"field": p, "reduction_s": red_t, "reduction_m": zc.m, "rows": rows}
    lines = [f"reduction of a random zigzag (m={zc.m}): {red_t * 1e3:.2f} ms", f"{'m':>8} {'lift ms':>10} {'stab us':>10} {'scan us':>10}"]
    lines += [f"{r['m']:>8} {r['lift_s'] * 1e3:>10.2f} {r['stab_s'] * 1e6:>10.2f} {r['scan_s'] * 1e6:>10.2f}" for r in rows]
    _emit(out, cfg, payload, lines)
    return EXIT_OK


def render_text(zz: ZigzagBarcode) -> List[str]:
    """One row per bar; brackets mark odd (closed) ends, parentheses even ones."""
    n = zz.complex.n
    lines = [" " * 9 + "".join(str(i % 10) for i in range(n + 1))]
    for b in zz.bars:
        row = [" "] * (n + 1)
        for i in b.indices():
            row[i] = "-"
        row[b.span[0]] = "[" if b.span[0] % 2 else "("
        row[b.span[1]] = "]" if b.span[1] % 2 else ")"
        if b.span[0] == b.span[1]:
            row[b.span[0]] = "*"
        lines.append(f"H{b.dim} #{b.id:<4}" + "".join(row) + f"  {b.type}")
    return lines


def render_svg(zz: ZigzagBarcode) -> str:
    n = max(zz.complex.n, 1)
    unit, row, pad = 24, 18, 40
    w = pad * 2 + unit * n
    h = pad * 2 + row * max(len(zz.bars), 1)
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="monospace" font-size="10">']
    for i in range(n + 1):
        x = pad + unit * i
        parts.append(f'<line x1="{x}" y1="{pad - 10}" x2="{x}" y2="{h - pad}" stroke="#ddd"/>')
        parts.append(f'<text x="{x}" y="{pad - 14}" text-anchor="middle">{i}</text>')
    for k, b in enumerate(zz.bars):
        y = pad + row * k + row / 2
        x1, x2 = pad + unit * b.span[0], pad + unit * b.span[1]
        col = colors[b.dim % len(colors)]
        parts.append(f'<line x1="{x1}" y1="{y}" x2="{x2}" y2="{y}" stroke="{col}" stroke-width="4"/>')
        parts.append(f'<text x="{w - pad + 4}" y="{y + 3}">H{b.dim} {b.type}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_plot(cfg: RunConfig, out=sys.stdout) -> int:
    zz = _barcode(cfg)
    if cfg.extra.get("svg"):
        out.write(render_svg(zz))
    else:
        out.write("\n".join(render_text(zz)) + "\n")
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "barcode": cmd_barcode,
    "reps": cmd_reps,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", "-p", type=int, default=None, help="prime field size (default: file header, else 2)")
    common.add_argument("--format", choices=("auto", "interval", "events"), default="auto", help="input format")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--mode", choices=("lazy", "general"), default="lazy", help="representative formulas")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="zigzag-reps", description="Zigzag barcodes with representatives.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("validate", "barcode", "plot"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("input")
        if name == "plot":
            sp.add_argument("--svg", action="store_true", help="SVG instead of text")
    sp = sub.add_parser("reps", parents=[common])
    sp.add_argument("input")
    sp.add_argument("--bar", type=int, default=None)
    sp.add_argument("--index", type=int, default=None)
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("input", nargs="?", default=None, help="omit to verify a generated random suite")
    sp.add_argument("--count", type=int, default=20, help="suite size when no input is given")
    sp = sub.add_parser("bench", parents=[common])
    sp.add_argument("--sizes", type=int, nargs="+", default=None)
    sp.add_argument("--repeat", type=int, default=5)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    extra = {k: getattr(ns, k) for k in ("svg", "count", "sizes", "repeat") if hasattr(ns, k)}
    return RunConfig(
        command=ns.command,
        path=getattr(ns, "input", None),
        p=ns.field,
        format=ns.format,
        json=ns.json,
        bar=getattr(ns, "bar", None),
        index=getattr(ns, "index", None),
        mode=Mode(ns.mode),
        seed=ns.seed,
        extra=extra,
    )


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_IO
    cfg = config_from_args(ns)
    try:
        return COMMANDS[cfg.command](cfg, out)
    except CliError as exc:
        err.write(f"zigzag-reps: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
