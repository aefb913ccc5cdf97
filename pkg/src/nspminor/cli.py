"""Command-line front end.

    nspminor gen wheel 11
    nspminor certify prism 2,2,1
    nspminor verify-theorem thm4.3 --n 6..13
    nspminor scan corpus.g6 --check complement-ik
    nspminor bounds --n 6..20

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from itertools import islice
from pathlib import Path

from . import certificates as cert
from . import families as fam
from .graph import Graph, GraphError, canonical_code, complement, encode_graph6, parse_graph, to_json_obj
from .search import (
    ABSENT,
    FOUND,
    INCONCLUSIVE,
    SearchConfig,
    SearchInconclusive,
    hadwiger,
    has_complete_minor,
    has_minor,
    ik_sufficient,
    k3311,
)

ORDER_CAP = 15
CACHE_ENV = "NSPMINOR_CACHE"
THEOREMS = ("thm4.1", "thm4.3", "lem5.1", "thm5.2", "lem6.1", "thm6.3", "ex6.4", "sec7")
CHECKS = ("k7", "k3311", "hadwiger", "complement-ik")


class UsageError(Exception):
    pass


@dataclass
class Row:
    graph_id: str
    family: str = ""
    order: int | str = ""
    complement_size: int | str = ""
    certificate_target: str = ""
    certificate_verified: bool | str = ""
    hadwiger: int | str = ""
    search_nodes: int | str = ""
    elapsed_ms: float | str = ""
    outcome: str = ""
    passed: bool = True
    note: str = ""


COLUMNS = [f.name for f in fields(Row)]


class Reporter:
    """Writes rows as CSV (default) or JSON lines, then a summary line."""

    def __init__(self, out, as_json: bool, timing: bool):
        self.out, self.as_json, self.timing = out, as_json, timing
        self.all_passed = True
        self.count = 0
        self.writer = None

    def _header(self) -> None:
        if self.writer is None and not self.as_json:
            self.writer = csv.writer(self.out, lineterminator="\n")
            self.writer.writerow(COLUMNS)

    def row(self, r: Row) -> None:
        self._header()
        if not self.timing:
            r.elapsed_ms = ""
        elif isinstance(r.elapsed_ms, float):
            r.elapsed_ms = round(r.elapsed_ms, 1)
        self.all_passed &= bool(r.passed)
        self.count += 1
        if self.as_json:
            self.out.write(json.dumps(asdict(r)) + "\n")
        else:
            self.writer.writerow([_cell(getattr(r, c)) for c in COLUMNS])
        self.out.flush()

    def summary(self, theorem: str, span: str, passed: bool) -> None:
        self._header()
        verdict = "pass" if passed else "fail"
        if self.as_json:
            self.out.write(json.dumps({"summary": {"theorem": theorem, "range": span,
                                                   "rows": self.count, "result": verdict}}) + "\n")
        else:
            self.out.write(f"# summary,{theorem},{span},{self.count},{verdict}\n")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _span(text: str | None, default: tuple[int, int]) -> tuple[int, int]:
    if text is None:
        return default
    try:
        if ".." in text:
            a, b = text.split("..")
            return int(a), int(b)
        return int(text), int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected A..B") from None


def _family_tag(spec) -> str:
    if spec is None:
        return "-"
    if isinstance(spec, fam.Wheel):
        return f"wheel:{spec.n}"
    if isinstance(spec, fam.Prism):
        return "prism:" + ",".join(map(str, spec.subdivisions))
    return f"outerplanar:{spec.n}"


def _outerplanar(n: int, cap: int) -> list[fam.MaxOuterplanar]:
    """Enumeration, cached as JSON lines under $NSPMINOR_CACHE when set."""
    cache = os.environ.get(CACHE_ENV)
    path = Path(cache) / f"outerplanar_{n}.jsonl" if cache else None
    if path is not None and path.exists():
        return [fam.spec_from_json_obj(json.loads(line)) for line in path.read_text().splitlines()]
    specs = fam.enumerate_max_outerplanar(n, cap=cap)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("".join(json.dumps(s.to_json_obj()) + "\n" for s in specs))
    return specs


def _pmap(fn, items, jobs: int):
    """Ordered map, optionally across worker processes."""
    if jobs <= 1:
        yield from map(fn, items)
        return
    it = iter(items)
    with ProcessPoolExecutor(jobs) as pool:
        while True:
            chunk = list(islice(it, 64 * jobs))
            if not chunk:
                return
            yield from pool.map(fn, chunk)


# -- gen / certify ----------------------------------------------------------

def _spec_from_args(family: str, args: list[str], fan: int | None, chords: str | None):
    """Graph (and spec, if any) from the positional family arguments."""
    try:
        if family == "wheel":
            spec = fam.Wheel(int(args[0]))
        elif family == "prism":
            parts = [int(x) for x in args[0].split(",")]
            if len(parts) > 3:
                raise UsageError("a prism takes at most three subdivision counts")
            spec = fam.Prism(*(parts + [0] * (3 - len(parts))))
        elif family == "outerplanar":
            if fan is not None:
                spec = fam.fan(fan)
            else:
                n = int(args[0])
                pairs = [tuple(int(x) for x in c.split("-")) for c in (chords or "").split(",") if c]
                spec = fam.MaxOuterplanar(n, frozenset(pairs))
        elif family == "fixture":
            return fam.fixture(args[0]), None
        elif family == "spec":
            spec = fam.spec_from_json_obj(json.loads(args[0]))
        elif family == "graph":
            return parse_graph(args[0]), None
        else:
            raise UsageError(f"unknown family {family!r}")
    except (IndexError, ValueError, KeyError) as exc:
        raise UsageError(f"bad arguments for {family}: {exc}") from None
    return fam.build(spec), spec


def cmd_gen(ns) -> int:
    g, _ = _spec_from_args(ns.family, ns.args, ns.fan, ns.chords)
    if ns.format == "json":
        print(json.dumps(to_json_obj(g)))
    else:
        print(encode_graph6(g))
    return 0


def cmd_certify(ns) -> int:
    g, _ = _spec_from_args(ns.family, ns.args, ns.fan, ns.chords)
    try:
        spec, model = cert.certify(g)
    except cert.CertificateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = model.to_json_obj()
    out["family"] = _family_tag(spec)
    out["verified"] = cert.verify_minor_model(model)
    print(json.dumps(out))
    return 0 if out["verified"] else 1


# -- bounds -----------------------------------------------------------------

def cmd_bounds(ns) -> int:
    lo, hi = _span(ns.n, (6, 20))
    if lo < 6:
        raise UsageError("bounds need n >= 6")
    header = ["n", "residue", "s", "k_max", "hadwiger", "bound", "target", "closed_bound",
              "closed_target", "verdict"]
    w = csv.writer(sys.stdout, lineterminator="\n")
    if not ns.json:
        w.writerow(header)
    ok = True
    for n in range(lo, hi + 1):
        tr = cert.bound_trace(n)
        row = cert.closed_form_row(n)
        agree = (row["bound"], row["target"], row["k_max"], row["hadwiger"]) == \
            (tr.bound, tr.target_edges, tr.k_max, tr.hadwiger)
        verdict = tr.verdict and agree
        ok &= verdict
        vals = [n, row["residue"], row["s"], tr.k_max, tr.hadwiger, tr.bound, tr.target_edges,
                row["bound"], row["target"], "true" if verdict else "false"]
        if ns.json:
            print(json.dumps(dict(zip(header, vals))))
        else:
            w.writerow(vals)
    return 0 if ok else 1


# -- verify-theorem ---------------------------------------------------------

def _cert_row(gid: str, spec, host: Graph, model, want: int, t0: float) -> Row:
    ok = cert.verify_minor_model(model)
    return Row(gid, _family_tag(spec), host.n, host.size, model.target_name, ok,
               elapsed_ms=(time.perf_counter() - t0) * 1000, outcome=FOUND,
               passed=ok and model.target.n >= want)


def _wheel_cert_row(n: int, cfg) -> Row:
    t0 = time.perf_counter()
    model = cert.wheel_certificate(n)
    return _cert_row(f"W{n}", fam.Wheel(n), model.host, model, cert.wheel_hadwiger(n), t0)


def _wheel_sharp_row(n: int, cfg) -> Row:
    t0 = time.perf_counter()
    host = complement(fam.wheel(n))
    h = cert.wheel_hadwiger(n)
    res = has_complete_minor(host, h + 1, cfg)
    hw, _ = hadwiger(host, cfg)
    ok = res.outcome == ABSENT and hw == h and cert.bound_trace(n).verdict
    return Row(f"W{n}", f"wheel:{n}", n, host.size, f"K{h + 1}", "", hw, res.nodes,
               (time.perf_counter() - t0) * 1000, res.outcome, ok)


def _prism_row(spec, cfg, search: bool) -> Row:
    t0 = time.perf_counter()
    model = cert.prism_certificate(spec)
    want = (spec.order + 3) // 2
    row = _cert_row(f"P{''.join(map(str, spec.subdivisions))}", spec, model.host, model, want, t0)
    if search:
        res = has_complete_minor(model.host, want, cfg)
        row.search_nodes, row.outcome = res.nodes, res.outcome
        row.passed = row.passed and res.found
        row.elapsed_ms = (time.perf_counter() - t0) * 1000
    return row


def _outer_row(item) -> Row:
    idx, spec = item
    t0 = time.perf_counter()
    g = fam.max_outerplanar(spec)
    model = cert.outerplanar_certificate(g)
    return _cert_row(f"O{spec.n}-{idx}", spec, model.host, model, (spec.n + 3) // 2, t0)


def _order10_row(item) -> Row:
    idx, spec, budget = item
    t0 = time.perf_counter()
    g = fam.max_outerplanar(spec)
    host = complement(g)
    cfg = SearchConfig(budget=budget)
    res = has_complete_minor(host, 7, cfg)
    try:
        hw: int | str = hadwiger(host, cfg)[0]
    except SearchInconclusive:
        hw = ""
    return Row(f"O10-{idx}", _family_tag(spec), 10, host.size, "K7", "", hw, res.nodes,
               (time.perf_counter() - t0) * 1000, res.outcome,
               res.outcome != INCONCLUSIVE, encode_graph6(g))


def cmd_verify_theorem(ns) -> int:
    cfg = SearchConfig(budget=ns.budget, counting=not ns.no_counting)
    rep = Reporter(sys.stdout, ns.json, ns.timing)
    cap = 10 ** 9 if ns.i_know else ORDER_CAP
    tid = ns.theorem
    passed = True
    if tid in ("thm4.1", "thm4.3"):
        lo, hi = _span(ns.n, (6, 14) if tid == "thm4.1" else (6, 13))
        if lo < 6 or hi > cap:
            raise UsageError(f"n range must lie in 6..{cap} (use --i-know to lift the cap)")
        fn = _wheel_cert_row if tid == "thm4.1" else _wheel_sharp_row
        for n in range(lo, hi + 1):
            rep.row(fn(n, cfg))
        span = f"{lo}..{hi}"
    elif tid == "lem5.1":
        specs = fam.enumerate_prisms(11)
        codes = {canonical_code(fam.elongated_prism(*s.subdivisions)) for s in specs}
        for spec in specs:
            row = _prism_row(spec, cfg, search=False)
            steps = cert.prism_base_schedules()[spec.subdivisions].steps
            row.note = f"{len(steps)} contractions"
            row.passed = row.passed and len(steps) == 4
            rep.row(row)
        passed = len(specs) == 5 and len(codes) == 5
        span = "11"
    elif tid == "thm5.2":
        lo, hi = _span(ns.orders, (11, 15))
        if lo < 11 or hi > cap:
            raise UsageError(f"orders must lie in 11..{cap}")
        for order in range(lo | 1, hi + 1, 2):
            for spec in fam.enumerate_prisms(order):
                rep.row(_prism_row(spec, cfg, search=not ns.no_search))
        span = f"{lo}..{hi}"
    elif tid in ("lem6.1", "thm6.3"):
        lo, hi = (11, 11) if tid == "lem6.1" else _span(ns.orders, (11, 13))
        ocap = 10 ** 9 if ns.i_know else fam.OUTERPLANAR_CAP
        if lo < 11 or hi > ocap:
            raise UsageError(f"orders must lie in 11..{ocap} (use --i-know to lift the cap)")
        for order in range(lo | 1, hi + 1, 2):
            items = list(enumerate(_outerplanar(order, ocap), 1))
            for row in _pmap(_outer_row, items, ns.jobs):
                rep.row(row)
        span = f"{lo}..{hi}"
    elif tid == "ex6.4":
        items = [(i, s, ns.budget) for i, s in enumerate(_outerplanar(10, fam.OUTERPLANAR_CAP), 1)]
        absent = 0
        for row in _pmap(_order10_row, items, ns.jobs):
            absent += row.outcome == ABSENT
            rep.row(row)
        passed = absent >= 1
        span = "10"
    elif tid == "sec7":
        rep.row(_k3311_fixture_row(cfg))
        span = "11"
    else:
        raise UsageError(f"unknown theorem id {tid!r}")
    passed = passed and rep.all_passed
    rep.summary(tid, span, passed)
    return 0 if passed else 1


def _k3311_fixture_row(cfg) -> Row:
    t0 = time.perf_counter()
    comp = fam.fixture("sec7_complement")
    planar = fam.fixture("sec7_planar")
    k7 = has_complete_minor(comp, 7, cfg)
    hw, _ = hadwiger(comp, cfg)
    res = has_minor(comp, k3311(), cfg)
    steps = (cert.Contract(2, 11), cert.Contract(3, 10), cert.Contract(5, 9))
    contracted, _ = cert.apply_schedule(comp, cert.ContractionSchedule(steps, 1))
    explicit = has_minor(contracted, k3311(), cfg).found and contracted.n == 8
    ok = (comp.size == 28 and planar.size == 27 and k7.outcome == ABSENT and hw == 6
          and res.found and explicit)
    return Row("sec7", "fixture:sec7_planar", 11, comp.size, "K3311",
               res.found and cert.verify_minor_model(res.model), hw, k7.nodes + res.nodes,
               (time.perf_counter() - t0) * 1000, f"k7={k7.outcome};k3311={res.outcome}", ok,
               "explicit contraction confirms" if explicit else "explicit contraction fails")


# -- scan -------------------------------------------------------------------

def _scan_line(item) -> Row:
    lineno, text, checks, as_is, budget = item
    gid = f"line{lineno}"
    t0 = time.perf_counter()
    try:
        g = parse_graph(text)
    except GraphError as exc:
        return Row(gid, outcome="error", passed=False, note=f"line {lineno}: {exc}")
    host = g if as_is else complement(g)
    cfg = SearchConfig(budget=budget)
    row = Row(gid, _family_tag(fam.classify(g)), g.n, complement(g).size)
    outcomes, targets, verified, nodes, ok = [], [], [], 0, True
    for check in checks:
        if check == "hadwiger":
            try:
                hw, model = hadwiger(host, cfg)
                row.hadwiger = hw
                outcomes.append(f"hadwiger={hw}")
            except SearchInconclusive:
                outcomes.append("hadwiger=inconclusive")
                ok = False
            continue
        if check == "complement-ik":
            model = ik_sufficient(host, cfg)
            if model is None:
                outcomes.append("ik=inconclusive")
                ok = False
            else:
                outcomes.append(f"ik={model.target_name}")
                targets.append(model.target_name)
                verified.append(cert.verify_minor_model(model))
            continue
        pattern = k3311() if check == "k3311" else None
        res = has_minor(host, pattern, cfg) if pattern else has_complete_minor(host, 7, cfg)
        nodes += res.nodes
        outcomes.append(f"{check}={res.outcome}")
        if res.found:
            targets.append(res.model.target_name)
            verified.append(cert.verify_minor_model(res.model))
        else:
            ok = False
    row.certificate_target = "+".join(targets)
    row.certificate_verified = all(verified) if verified else ""
    row.search_nodes = nodes
    row.elapsed_ms = (time.perf_counter() - t0) * 1000
    row.outcome = ";".join(outcomes)
    row.passed = ok and all(verified)
    return row


def _scan_items(stream, checks, as_is, budget):
    for lineno, line in enumerate(stream, 1):
        if line.strip():
            yield (lineno, line, checks, as_is, budget)


def cmd_scan(ns) -> int:
    checks = tuple(ns.check or ["complement-ik"])
    stream = sys.stdin if ns.file == "-" else None
    try:
        if stream is None:
            stream = open(ns.file, encoding="ascii", errors="replace")
    except OSError as exc:
        raise UsageError(f"cannot read {ns.file}: {exc}") from None
    rep = Reporter(sys.stdout, ns.json, ns.timing)
    errors = 0
    with stream if stream is not sys.stdin else _nullcontext(stream):
        for row in _pmap(_scan_line, _scan_items(stream, checks, ns.as_is, ns.budget), ns.jobs):
            errors += row.outcome == "error"
            rep.row(row)
    rep.summary("scan:" + "+".join(checks), ns.file, rep.all_passed)
    if errors:
        return 2
    return 0 if rep.all_passed else 1


class _nullcontext:
    def __init__(self, obj):
        self.obj = obj

    def __enter__(self):
        return self.obj

    def __exit__(self, *exc):
        return False


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nspminor", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def graph_args(sp):
        sp.add_argument("family", help="wheel | prism | outerplanar | fixture | spec | graph")
        sp.add_argument("args", nargs="*", help="order, subdivisions a,b,c, fixture name, "
                                                "spec JSON or graph6/JSON graph text")
        sp.add_argument("--fan", type=int, help="outerplanar fan K_1 + P_{n-1}")
        sp.add_argument("--chords", help="outerplanar chords as 1-3,1-4,...")

    g = sub.add_parser("gen", help="print a family member")
    graph_args(g)
    g.add_argument("--format", choices=("g6", "json"), default="g6")
    g.set_defaults(fn=cmd_gen)

    c = sub.add_parser("certify", help="constructive K_n certificate in the complement")
    graph_args(c)
    c.set_defaults(fn=cmd_certify)

    def report_args(sp):
        sp.add_argument("--json", action="store_true", help="JSON lines instead of CSV")
        sp.add_argument("--timing", action="store_true", help="fill the elapsed_ms column")
        sp.add_argument("--budget", type=int, default=0, help="search node budget (0 = none)")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    v = sub.add_parser("verify-theorem", help="sweep one theorem over a range")
    v.add_argument("theorem", choices=THEOREMS)
    v.add_argument("--n", help="wheel orders A..B")
    v.add_argument("--orders", help="graph orders A..B")
    v.add_argument("--i-know", action="store_true", help="lift the range caps")
    v.add_argument("--no-search", action="store_true", help="skip the independent search")
    v.add_argument("--no-counting", action="store_true", help="disable the edge-loss prune")
    report_args(v)
    v.set_defaults(fn=cmd_verify_theorem)

    s = sub.add_parser("scan", help="check every graph in a graph6 / JSON-lines corpus")
    s.add_argument("file", help="corpus path or - for stdin")
    s.add_argument("--check", action="append", choices=CHECKS)
    s.add_argument("--as-is", action="store_true", help="check the graphs, not their complements")
    report_args(s)
    s.set_defaults(fn=cmd_scan)

    b = sub.add_parser("bounds", help="edge-count bound table for wheel complements")
    b.add_argument("--n", help="range A..B (default 6..20)")
    b.add_argument("--json", action="store_true")
    b.set_defaults(fn=cmd_bounds)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return ns.fn(ns)
    except BrokenPipeError:
        sys.stderr.close()
        return 0
    except (UsageError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
