"""Command-line front end.

    greenforest VERB [options] GRAPH

GRAPH is an edge-list or JSON file, or ``-`` for stdin.  Exit status is 0 on
success, 2 when the input or a precondition is rejected, and 3 when the
verification suite (or an internal cross-check) fails.
"""

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from importlib import resources

from . import forests, greens, walks
from .errors import GreenForestError, Timeout
from .forests import DEFAULT_GUARD_EDGES, DEFAULT_GUARD_N
from .graph import format_weight, parse_graph
from .verify import verify

VERBS = ("greens", "trace", "hitting", "commute", "kemeny", "resistance",
         "stationary", "forests", "bounds", "verify")

EXIT_OK, EXIT_INVALID, EXIT_VERIFY = 0, 2, 3


# -- value formatting ---------------------------------------------------------------

class Formatter:
    def __init__(self, exact):
        self.exact = exact

    def text(self, x):
        if isinstance(x, float):
            return _float_text(x)
        if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
            x = Fraction(x)
            return format_weight(x) if self.exact else _float_text(float(x))
        return str(x)

    def json(self, x):
        if isinstance(x, float):
            return _float_json(x)
        if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
            x = Fraction(x)
            return format_weight(x) if self.exact else _float_json(float(x))
        return x


def _float_text(x):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0:
        x = 0.0  # no "-0"
    return f"{x:.12g}"


def _float_json(x):
    if math.isinf(x) or math.isnan(x):
        return _float_text(x)
    return float(f"{x:.12g}") + 0.0


# -- results ------------------------------------------------------------------------
# Each verb builds a plain dict; renderers turn it into text, csv or JSON.

def _scalar(name, value):
    return {"type": "scalar", "name": name, "value": value}


def _matrix(name, labels, rows):
    return {"type": "matrix", "name": name, "labels": labels, "rows": rows}


def _find(g, label):
    for v in g.labels:
        if str(v) == label:
            return v
    raise _Invalid(f"unknown vertex {label!r}")


class _Invalid(GreenForestError):
    pass


def _pair(args, g):
    if (args.source is None) != (args.target is None):
        raise _Invalid("--source and --target must be given together")
    if args.source is None:
        return None
    return _find(g, args.source), _find(g, args.target)


def _labels(g):
    return [str(v) for v in g.labels]


def cmd_greens(g, args):
    if args.kind == "combinatorial":
        m = greens.green_combinatorial_exact(g).matrix
        return _matrix("green-combinatorial", _labels(g), m.tolist())
    kernel = greens.green_normalized_scaled_exact(g)
    if args.exact:
        res = _matrix("green-normalized-kernel", _labels(g), kernel.matrix.tolist())
        res["note"] = "normalized Green's function = sqrt(pi_u pi_v) * K(u, v)"
        return res
    full = greens.assemble_normalized(kernel, greens.stationary(g))
    return _matrix("green-normalized", _labels(g), [[float(x) for x in row] for row in full])


def cmd_trace(g, args):
    if args.kind == "combinatorial":
        return _scalar("trace-green-combinatorial", greens.trace_green_combinatorial(g))
    return _scalar("trace-green-normalized", greens.trace_green_normalized(g, check=True))


def _mc_result(name, est, exact):
    return {"type": "estimate", "name": name, "mean": est.mean,
            "half_width": est.half_width, "trials": est.trials, "seed": est.seed,
            "exact": exact, "covered": est.covers(exact)}


def cmd_hitting(g, args):
    pair = _pair(args, g)
    if args.mc:
        if pair is None:
            raise _Invalid("--mc needs --source and --target")
        est = walks.hitting_mc(g, *pair, trials=args.trials, seed=args.seed,
                               max_steps=args.max_steps)
        return _mc_result("hitting-mc", est, walks.hitting_exact(g, *pair))
    if pair:
        return _scalar("hitting", walks.hitting_exact(g, *pair))
    return _matrix("hitting", _labels(g), walks.hitting_matrix(g).matrix.tolist())


def cmd_commute(g, args):
    pair = _pair(args, g)
    if pair:
        return _scalar("commute", walks.commute_exact(g, *pair))
    lab = g.labels
    return _matrix("commute", _labels(g),
                   [[walks.commute_exact(g, u, v) for v in lab] for u in lab])


def cmd_kemeny(g, args):
    if args.mc:
        start = _find(g, args.source) if args.source is not None else g.labels[0]
        est = walks.kemeny_mc(g, start, trials=args.trials, seed=args.seed,
                              max_steps=args.max_steps)
        return _mc_result("kemeny-mc", est, walks.kemeny(g))
    return _scalar("kemeny", walks.kemeny(g))


def cmd_resistance(g, args):
    pair = _pair(args, g)
    if pair:
        return _scalar("effective-resistance", walks.effective_resistance(g, *pair))
    lab = g.labels
    return _matrix("effective-resistance", _labels(g),
                   [[walks.effective_resistance(g, u, v) for v in lab] for u in lab])


def cmd_stationary(g, args):
    st = greens.stationary(g)
    return {"type": "vector", "name": "stationary", "labels": _labels(g), "values": list(st.pi)}


def cmd_forests(g, args):
    found = forests.enumerate_rooted_forests(g, args.k, args.guard_n, args.guard_edges)
    return {
        "type": "forests", "k": args.k, "count": len(found),
        "total_weight": sum((f.weight for f in found), Fraction(0)),
        "forests": [{"roots": [str(r) for r in f.roots],
                     "edges": [[str(s), str(d)] for s, d in f.edges],
                     "weight": f.weight,
                     "line": f.format()} for f in found],
    }


def cmd_bounds(g, args):
    rep = walks.check_bounds(g)
    return {
        "type": "report",
        "kemeny": rep.kemeny,
        "return_times": [[str(v), t] for v, t in rep.return_times.items()],
        "resistances": [[str(a), str(b), r] for (a, b), r in rep.resistances.items()],
        "all_passed": rep.all_passed,
        "verdicts": [{
            "name": v.name,
            "pair": [str(x) for x in v.pair] if v.pair else None,
            "lhs": v.lhs, "relation": v.relation, "rhs": v.rhs,
            "passed": v.passed, "tight": v.tight, "informational": v.informational,
        } for v in rep.verdicts],
    }


def cmd_verify(g, args):
    rep = verify(g, args.guard_n, args.guard_edges)
    return {
        "type": "checks", "ok": rep.ok, "failures": len(rep.failures),
        "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in rep.checks],
    }


COMMANDS = {verb: globals()[f"cmd_{verb}"] for verb in VERBS}


# -- rendering ------------------------------------------------------------------------

def _grid(header, rows):
    widths = [max(len(r[k]) for r in [header] + rows) for k in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip()
                     for r in [header] + rows)


def render_text(res, fmt):
    t = res["type"]
    if t == "scalar":
        return fmt.text(res["value"])
    if t == "matrix":
        rows = [[lab] + [fmt.text(x) for x in row] for lab, row in zip(res["labels"], res["rows"])]
        out = _grid([""] + res["labels"], rows)
        return out + (f"\n# {res['note']}" if "note" in res else "")
    if t == "vector":
        return _grid(["vertex", res["name"]],
                     [[lab, fmt.text(x)] for lab, x in zip(res["labels"], res["values"])])
    if t == "estimate":
        return (f"{res['name']}: {_float_text(res['mean'])} +/- {_float_text(res['half_width'])} "
                f"(trials={res['trials']}, seed={res['seed']}); exact {fmt.text(res['exact'])}")
    if t == "forests":
        lines = [f["line"] if fmt.exact else
                 f["line"].rsplit("weight=", 1)[0] + "weight=" + fmt.text(f["weight"])
                 for f in res["forests"]]
        lines.append(f"# {res['count']} forests, total weight {fmt.text(res['total_weight'])}")
        return "\n".join(lines)
    if t == "report":
        lines = [f"kemeny {fmt.text(res['kemeny'])}"]
        lines += [f"return-time {v} {fmt.text(x)}" for v, x in res["return_times"]]
        lines += [f"resistance {a} {b} {fmt.text(x)}" for a, b, x in res["resistances"]]
        for v in res["verdicts"]:
            status = "INFO" if v["informational"] else ("PASS" if v["passed"] else "FAIL")
            if v["informational"]:
                status += " holds" if v["passed"] else " fails"
            pair = f" {v['pair'][0]}->{v['pair'][1]}" if v["pair"] else ""
            lines.append(f"{status} {v['name']}{pair}: {fmt.text(v['lhs'])} "
                         f"{v['relation']} {fmt.text(v['rhs'])}")
        return "\n".join(lines)
    if t == "checks":
        lines = [f"{c['status']} {c['name']}" + (f": {c['detail']}" if c["detail"] else "")
                 for c in res["checks"]]
        lines.append(f"# {res['failures']} failures")
        return "\n".join(lines)
    raise AssertionError(t)


def render_csv(res, fmt):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    t = res["type"]
    if t == "scalar":
        w.writerows([["name", "value"], [res["name"], fmt.text(res["value"])]])
    elif t == "matrix":
        w.writerow([""] + res["labels"])
        for lab, row in zip(res["labels"], res["rows"]):
            w.writerow([lab] + [fmt.text(x) for x in row])
    elif t == "vector":
        w.writerow(["vertex", res["name"]])
        w.writerows([lab, fmt.text(x)] for lab, x in zip(res["labels"], res["values"]))
    elif t == "estimate":
        w.writerow(["name", "mean", "half_width", "trials", "seed", "exact"])
        w.writerow([res["name"], _float_text(res["mean"]), _float_text(res["half_width"]),
                    res["trials"], res["seed"], fmt.text(res["exact"])])
    elif t == "forests":
        w.writerow(["roots", "edges", "weight"])
        for f in res["forests"]:
            w.writerow([" ".join(f["roots"]), " ".join(f"{s}->{d}" for s, d in f["edges"]),
                        fmt.text(f["weight"])])
    elif t == "report":
        w.writerow(["name", "source", "target", "lhs", "relation", "rhs", "status"])
        for v in res["verdicts"]:
            src, dst = v["pair"] or ("", "")
            status = ("INFO" if v["informational"] else "") or ("PASS" if v["passed"] else "FAIL")
            w.writerow([v["name"], src, dst, fmt.text(v["lhs"]), v["relation"],
                        fmt.text(v["rhs"]), status])
    elif t == "checks":
        w.writerow(["name", "status", "detail"])
        w.writerows([c["name"], c["status"], c["detail"]] for c in res["checks"])
    return buf.getvalue().rstrip("\n")


COUNT_KEYS = frozenset({"k", "count", "trials", "seed", "failures"})


def _jsonify(obj, fmt, key=None):
    if isinstance(obj, dict):
        return {k: _jsonify(v, fmt, k) for k, v in obj.items() if k != "line"}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v, fmt, key) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, int) and key in COUNT_KEYS:
        return obj
    return fmt.json(obj)


def render_json(verb, g, res, fmt, args):
    doc = {
        "command": verb,
        "vertices": _labels(g),
        "mode": "exact" if fmt.exact else "float",
        "result": _jsonify(res, fmt),
    }
    if verb in ("greens", "trace"):
        doc["kind"] = args.kind
    return json.dumps(doc, indent=2)


# -- schema -------------------------------------------------------------------------------

def load_schema():
    text = resources.files("greenforest").joinpath("schemas/output.schema.json").read_text()
    return json.loads(text)


def validate_output(doc):
    """Validate a parsed JSON output document; raises jsonschema.ValidationError."""
    import jsonschema

    jsonschema.validate(doc, load_schema())


# -- entry point ----------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="greenforest",
        description="Exact Green's functions, hitting times and forest counts of weighted digraphs.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("graph", help="edge-list or JSON file, '-' for stdin")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_true", default=True,
                      help="rational output (default)")
    mode.add_argument("--float", dest="exact", action="store_false",
                      help="decimal output at 12 significant digits")
    p.add_argument("--kind", choices=("combinatorial", "normalized"), default="combinatorial")
    p.add_argument("--input-format", choices=("auto", "edge-list", "json"), default="auto")
    p.add_argument("--source", help="start vertex label")
    p.add_argument("--target", help="target vertex label")
    p.add_argument("--k", type=int, default=1, help="number of roots for 'forests'")
    p.add_argument("--mc", action="store_true", help="Monte Carlo estimate (hitting, kemeny)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--guard-n", type=int, default=DEFAULT_GUARD_N,
                   help="vertex limit for brute-force enumeration")
    p.add_argument("--guard-edges", type=int, default=DEFAULT_GUARD_EDGES,
                   help="edge limit for brute-force enumeration")
    return p


def _read_graph(args, stdin):
    if args.graph == "-":
        text = stdin.read()
    else:
        with open(args.graph, encoding="utf-8") as fh:
            text = fh.read()
    fmt = args.input_format
    if fmt == "auto":
        fmt = "json" if args.graph.endswith(".json") or text.lstrip().startswith("{") else "edge-list"
    return parse_graph(text, fmt)


def run(argv, stdout=None, stderr=None, stdin=None):
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    if args.trials < 1:
        print("error: --trials must be positive", file=stderr)
        return EXIT_INVALID
    try:
        g = _read_graph(args, stdin)
        res = COMMANDS[args.verb](g, args)
    except OSError as exc:
        print(f"error: cannot read {args.graph}: {exc.strerror or exc}", file=stderr)
        return EXIT_INVALID
    except Timeout as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    except GreenForestError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INVALID
    except ArithmeticError as exc:
        print(f"error: cross-check failed: {exc}", file=stderr)
        return EXIT_VERIFY
    fmt = Formatter(args.exact)
    if args.format == "json":
        out = render_json(args.verb, g, res, fmt, args)
    elif args.format == "csv":
        out = render_csv(res, fmt)
    else:
        out = render_text(res, fmt)
    print(out, file=stdout)
    if res["type"] == "checks" and not res["ok"]:
        return EXIT_VERIFY
    if res["type"] == "report" and not res["all_passed"]:
        return EXIT_VERIFY
    return EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
