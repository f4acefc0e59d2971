"""Command-line interface.

    icl analyze   --input G.txt
    icl code      --input G.txt --scheme scalar|binary|fractional [--seed S] --output code.json
    icl verify    --input G.txt --code code.json
    icl family    oddeven --n 10 [--output graph.txt]
    icl family    universal --m 4 --k 2 [--r 1] [--output graph.txt]
    icl universal --m 281 --k 9 [--r 1]
    icl sweep     --k-range 2:12 --m-range 2:480 [--format csv|json]

Exit status: 0 ok, 2 invalid input, 3 solver cap exceeded,
4 verification or bound check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from fractions import Fraction

from icl import coloring, families, index_code
from icl.config import Caps, CapExceeded, RunConfig
from icl.graphs import (
    Digraph,
    GraphFormatError,
    directed_complement,
    read_graph,
    serialize_graph,
    shadow,
    underlying_undirected,
    complement,
)

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_FAIL = 0, 2, 3, 4

log = logging.getLogger("icl")


def rational(x) -> str:
    return str(Fraction(x))


def invariant(name: str, value, witness: dict, exact: bool = True) -> dict:
    return {
        "invariant": name,
        "value": rational(value),
        "decimal": f"{float(value):.12g}",
        "witness": witness,
        "exact": exact,
    }


def _solution_witness(sol: coloring.FractionalSolution) -> dict:
    return {"sets": [list(s) for s in sol.family.sets], "weights": [str(w) for w in sol.weights]}


def analyze(side_info: Digraph, caps: Caps) -> list[dict]:
    """Bounds for the instance whose side-information graph is ``side_info``."""
    interference = directed_complement(side_info)
    gu_bar = complement(underlying_undirected(side_info))
    out = []
    chi = coloring.chromatic_coloring(gu_bar, cap=caps.n)
    out.append(invariant("chi", chi.num_colors, {"colors": list(chi.color_of)}))
    chi_f, sol = coloring.fractional_chromatic(gu_bar, cap=caps.n)
    out.append(invariant("chi_f", chi_f, _solution_witness(sol)))
    lc = coloring.local_chromatic(interference, cap=caps.n)
    out.append(invariant("chi_local", lc.local_value, {"colors": list(lc.color_of)}))
    chi_fl, sol = coloring.fractional_local_chromatic(interference, cap=caps.frac_local_n)
    out.append(invariant("chi_fractional_local", chi_fl, _solution_witness(sol), exact=sol.exact))
    if side_info.n <= caps.minrank_n:
        mr, rows = coloring.minrank2_witness(side_info, cap=caps.minrank_n)
        matrix = [[row >> j & 1 for j in range(side_info.n)] for row in rows]
        out.append(invariant("minrank2", mr, {"matrix": matrix}))
    return out


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def write_output(text: str, path) -> None:
    """Write ``text`` to ``path`` atomically, or to stdout when ``path`` is None."""
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".icl-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def render_invariants(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return dump_json(rows)
    if fmt == "csv":
        lines = ["invariant,value,decimal,exact"]
        lines += [f"{r['invariant']},{r['value']},{r['decimal']},{str(r['exact']).lower()}" for r in rows]
        return "\n".join(lines) + "\n"
    return "".join(f"{r['invariant']}: {r['value']}{'' if r['exact'] else ' (upper bound)'}\n" for r in rows)


def parse_range(text: str) -> range:
    """``a:b`` (inclusive) or a single integer."""
    if ":" in text:
        a, b = text.split(":", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_analyze(args, cfg: RunConfig) -> int:
    g = read_graph(cfg.inputs[0])
    write_output(render_invariants(analyze(g, cfg.caps), cfg.format), cfg.output)
    return EXIT_OK


def build_code(g: Digraph, scheme: str, seed, caps: Caps) -> index_code.IndexCode:
    if scheme == "scalar":
        return index_code.construct_scalar_code(g, cap=caps.n)[0]
    if scheme == "binary":
        return index_code.construct_binary_code(g, seed, cap=caps.n)
    return index_code.construct_fractional_code(g, cap=caps.frac_local_n)


def cmd_code(args, cfg: RunConfig) -> int:
    g = read_graph(cfg.inputs[0])
    code = build_code(g, cfg.scheme, cfg.seed, cfg.caps)
    report = index_code.verify(code, g)
    if not report.valid:
        log.error("refusing to write invalid code; failing users %s", list(report.failing_users))
        return EXIT_FAIL
    payload = code.to_json()
    payload["verification"] = report.to_json()
    write_output(dump_json(payload), cfg.output)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    g = read_graph(cfg.inputs[0])
    with open(args.code) as fh:
        code = index_code.IndexCode.from_json(json.load(fh))
    report = index_code.verify(code, g)
    out = report.to_json()
    out["rate"] = str(code.broadcast_rate)
    if cfg.format == "text":
        text = f"valid: {str(report.valid).lower()}\nrate: {code.broadcast_rate}\n"
        if report.failing_users:
            text += "failing users: " + " ".join(map(str, report.failing_users)) + "\n"
    else:
        text = dump_json(out)
    write_output(text, cfg.output)
    return EXIT_OK if report.valid else EXIT_FAIL


def cmd_family(args, cfg: RunConfig) -> int:
    if args.name == "oddeven":
        if args.n is None:
            raise ValueError("family oddeven needs --n")
        g = families.odd_even_tournament(args.n)
        lc = coloring.local_chromatic(g, cap=cfg.caps.n)
        chi_f, _ = coloring.fractional_chromatic(shadow(g), cap=cfg.caps.n)
        bound = Fraction(args.n, 2) + 1
        summary = {
            "family": "oddeven",
            "n": args.n,
            "max_out_degree": max(g.out_degree(v) for v in range(g.n)),
            "chi_local": lc.local_value,
            "chi_f_shadow": rational(chi_f),
            "local_bound": rational(bound),
            "bound_ok": lc.local_value <= bound and chi_f == args.n,
        }
    else:
        if args.m is None or args.k is None:
            raise ValueError("family universal needs --m and --k")
        params = families.UniversalParams(int(args.m), int(args.k), args.r)
        u = families.universal_digraph(params, cap=cfg.caps.universal_vertices)
        g = u.digraph
        summary = {
            "family": "universal",
            "m": params.m,
            "k": params.k,
            "r": params.r,
            "num_vertices": g.n,
            "labels": [[list(X), list(A)] for X, A in u.labels],
            "bound_ok": True,
        }
    if cfg.output:
        fmt = "json" if cfg.output.endswith(".json") else "edge_list"
        write_output(serialize_graph(g, fmt), cfg.output)
    sys.stdout.write(dump_json(summary))
    return EXIT_OK if summary["bound_ok"] else EXIT_FAIL


def cmd_universal(args, cfg: RunConfig) -> int:
    if args.m is None or args.k is None:
        raise ValueError("universal needs --m and --k")
    rep = families.universal_ratio(families.UniversalParams(int(args.m), int(args.k), args.r))
    if cfg.format == "text":
        text = f"m={rep.params.m} k={rep.params.k} r={rep.params.r} chi_f={rep.chi_f} ratio={float(rep.ratio):.12g}\n"
    elif cfg.format == "csv":
        text = families.sweep_csv([rep])
    else:
        text = dump_json(rep.to_json())
    write_output(text, cfg.output)
    return EXIT_OK if rep.bound_ok else EXIT_FAIL


def cmd_sweep(args, cfg: RunConfig) -> int:
    m_spec = args.m_range or args.m
    k_spec = args.k_range or args.k
    if m_spec is None or k_spec is None:
        raise ValueError("sweep needs an m range and a k range")
    reports = families.ratio_sweep(parse_range(m_spec), parse_range(k_spec), r=args.r)
    if cfg.format == "json":
        best = max(reports, key=lambda rep: rep.ratio, default=None)
        text = dump_json({
            "rows": [rep.to_json() for rep in reports],
            "max_ratio": None if best is None else best.to_json(),
            "bound": f"{families.RATIO_BOUND:.12g}",
        })
    else:
        text = families.sweep_csv(reports)
    write_output(text, cfg.output)
    return EXIT_OK if all(rep.bound_ok for rep in reports) else EXIT_FAIL


COMMANDS = {
    "analyze": cmd_analyze,
    "code": cmd_code,
    "verify": cmd_verify,
    "family": cmd_family,
    "universal": cmd_universal,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-n", type=int, help="override the solver vertex cap")
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--output", help="output path (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="icl", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="coloring bounds of a side-information graph")
    p.add_argument("--input", required=True)

    p = sub.add_parser("code", parents=[common], help="construct and verify an index code")
    p.add_argument("--input", required=True)
    p.add_argument("--scheme", choices=["scalar", "binary", "fractional"], default="scalar")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("verify", parents=[common], help="check an index code against an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--code", required=True)

    p = sub.add_parser("family", parents=[common], help="generate an extremal instance")
    p.add_argument("name", choices=["oddeven", "universal"])
    p.add_argument("--n", type=int)
    p.add_argument("--m")
    p.add_argument("--k")
    p.add_argument("--r", type=int, default=1)

    p = sub.add_parser("universal", parents=[common], help="closed-form ratio for U(r, m, k)")
    p.add_argument("--m")
    p.add_argument("--k")
    p.add_argument("--r", type=int, default=1)

    p = sub.add_parser("sweep", parents=[common], help="ratio table over (m, k) ranges")
    p.add_argument("--m")
    p.add_argument("--k")
    p.add_argument("--m-range")
    p.add_argument("--k-range")
    p.add_argument("--r", type=int, default=1)
    return parser


DEFAULT_FORMAT = {"sweep": "csv", "verify": "json"}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        caps = Caps.from_env()
        if args.cap_n is not None:
            caps = caps.with_n(args.cap_n)
        cfg = RunConfig(
            command=args.command,
            inputs=[args.input] if getattr(args, "input", None) else [],
            scheme=getattr(args, "scheme", "scalar"),
            seed=getattr(args, "seed", None),
            caps=caps,
            output=args.output,
            format=args.format or DEFAULT_FORMAT.get(args.command, "json"),
        )
        return COMMANDS[args.command](args, cfg)
    except CapExceeded as exc:
        log.error("%s", exc)
        return EXIT_CAP
    except (GraphFormatError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except index_code.ConstructionFailed as exc:
        log.error("%s", exc)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
