from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from nspminor import families as fam
from nspminor.cli import COLUMNS, main
from nspminor.graph import canonical_code, decode_graph6, encode_graph6, parse_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(out):
    body = [line for line in out.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


@pytest.mark.parametrize("argv, spec", [
    (["wheel", "11"], fam.Wheel(11)),
    (["prism", "5,0,0"], fam.Prism(5, 0, 0)),
    (["prism", "2,1"], fam.Prism(2, 1, 0)),
    (["outerplanar", "--fan", "11"], fam.fan(11)),
    (["outerplanar", "6", "--chords", "1-3,1-4,1-5"], fam.MaxOuterplanar(6, frozenset({(1, 3), (1, 4), (1, 5)}))),
    (["spec", '{"family": "wheel", "n": 9}'], fam.Wheel(9)),
])
def test_gen_roundtrips_and_reclassifies(capsys, argv, spec):
    code, out, _ = run(capsys, "gen", *argv)
    assert code == 0
    g = decode_graph6(out.strip())
    assert canonical_code(g) == canonical_code(fam.build(spec))
    found = fam.classify(g)
    assert type(found) is type(spec)
    assert canonical_code(fam.build(found)) == canonical_code(g)


def test_gen_json_format(capsys):
    code, out, _ = run(capsys, "gen", "wheel", "7", "--format", "json")
    assert code == 0 and parse_graph(out) == fam.wheel(7)


@pytest.mark.parametrize("argv", [["gen", "cube", "3"], ["gen", "wheel"], ["gen", "wheel", "3"],
                                  ["gen", "prism", "1,1,1,1"], ["gen", "fixture", "nope"],
                                  ["frobnicate"]])
def test_gen_bad_input_exit2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_certify_wheel13(capsys):
    code, out, _ = run(capsys, "certify", "wheel", "13")
    obj = json.loads(out)
    assert code == 0 and obj["target"] == "K9" and obj["verified"]
    assert [2, 8] in obj["branch_sets"] and [4, 10] in obj["branch_sets"]


def test_certify_prism(capsys):
    code, out, _ = run(capsys, "certify", "prism", "2,2,1")
    assert code == 0 and json.loads(out)["target"] == "K7"


def test_certify_graph_text(capsys):
    g6 = encode_graph6(fam.max_outerplanar(fam.fan(13)))
    code, out, _ = run(capsys, "certify", "graph", g6)
    assert code == 0 and json.loads(out)["target"] == "K8"


def test_certify_unclassifiable(capsys):
    code, _, err = run(capsys, "certify", "graph", "D~{")
    assert code == 2 and "not a maximal" in err


def test_bounds_header_and_rows(capsys):
    code, out, _ = run(capsys, "bounds", "--n", "6..10")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "n,residue,s,k_max,hadwiger,bound,target,closed_bound,closed_target,verdict"
    assert lines[1] == "6,4s+2,1,1,3,5,6,5,6,true"
    # n = 7..10 at s = 1, 2
    assert [line.split(",")[5:7] for line in lines[2:]] == \
        [["8", "10"], ["12", "15"], ["17", "21"], ["20", "21"]]


def test_bounds_rejects_small_n(capsys):
    assert run(capsys, "bounds", "--n", "4..8")[0] == 2


def test_wheel_sharpness_report(capsys):
    code, out, _ = run(capsys, "verify-theorem", "thm4.3", "--n", "6..13")
    assert code == 0
    table = rows(out)
    assert [r["outcome"] for r in table] == ["absent"] * 8
    assert [int(r["hadwiger"]) for r in table] == [3 * (n - 1) // 4 for n in range(6, 14)]
    assert out.splitlines()[0] == ",".join(COLUMNS)
    assert out.splitlines()[-1] == "# summary,thm4.3,6..13,8,pass"


def test_wheel_sharpness_without_counting(capsys):
    assert run(capsys, "verify-theorem", "thm4.3", "--no-counting", "--n", "6..10")[0] == 0


def test_prism_base_report(capsys):
    code, out, _ = run(capsys, "verify-theorem", "lem5.1")
    table = rows(out)
    assert code == 0 and len(table) == 5
    assert all(r["certificate_target"] == "K7" and r["certificate_verified"] == "true"
               for r in table)


def test_order10_report(capsys):
    code, out, _ = run(capsys, "verify-theorem", "ex6.4")
    table = rows(out)
    assert code == 0 and len(table) == 82
    assert sum(r["outcome"] == "absent" for r in table) == 36


def test_k3311_fixture_report_json(capsys):
    code, out, _ = run(capsys, "verify-theorem", "sec7", "--json")
    first, summary = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and first["hadwiger"] == 6 and first["certificate_target"] == "K3311"
    assert summary["summary"]["result"] == "pass"


def test_range_cap(capsys):
    code, out, err = run(capsys, "verify-theorem", "thm4.1", "--n", "6..20")
    assert code == 2 and out == "" and "--i-know" in err
    assert run(capsys, "verify-theorem", "thm4.1", "--n", "6..20", "--i-know")[0] == 0
    assert run(capsys, "verify-theorem", "thm6.3", "--orders", "11..15")[0] == 2


def test_byte_stable_reports(capsys):
    a = run(capsys, "verify-theorem", "thm5.2", "--orders", "11..13")
    b = run(capsys, "verify-theorem", "thm5.2", "--orders", "11..13")
    assert a == b and a[0] == 0


def test_timing_column(capsys):
    _, out, _ = run(capsys, "verify-theorem", "thm4.1", "--n", "6..7", "--timing")
    assert all(float(r["elapsed_ms"]) >= 0 for r in rows(out))


def test_cache_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("NSPMINOR_CACHE", str(tmp_path))
    first = run(capsys, "verify-theorem", "lem6.1")
    assert (tmp_path / "outerplanar_11.jsonl").exists()
    assert run(capsys, "verify-theorem", "lem6.1") == first
    assert first[0] == 0 and len(rows(first[1])) == 228


def _corpus(tmp_path, lines):
    p = tmp_path / "corpus.g6"
    p.write_text("".join(line + "\n" for line in lines))
    return str(p)


def test_scan_sec7(capsys, tmp_path):
    path = _corpus(tmp_path, [encode_graph6(fam.fixture("sec7_planar"))])
    code, out, _ = run(capsys, "scan", path, "--check", "hadwiger", "--check", "k3311")
    (row,) = rows(out)
    assert code == 0
    assert row["hadwiger"] == "6" and row["certificate_target"] == "K3311"
    assert row["outcome"] == "hadwiger=6;k3311=found"


def test_scan_failed_check_exit1(capsys, tmp_path):
    path = _corpus(tmp_path, [encode_graph6(fam.fixture("sec7_planar"))])
    assert run(capsys, "scan", path, "--check", "k7")[0] == 1


def test_scan_empty(capsys, tmp_path):
    code, out, _ = run(capsys, "scan", _corpus(tmp_path, []))
    assert code == 0 and rows(out) == []


def test_scan_corrupt_line_continues(capsys, tmp_path):
    good = encode_graph6(fam.wheel(11))
    path = _corpus(tmp_path, [good, "not a graph", '{"n": 11, "edges": [[1, 2]]}'])
    code, out, _ = run(capsys, "scan", path)
    table = rows(out)
    assert code == 2 and len(table) == 3
    assert table[1]["outcome"] == "error" and "line 2" in table[1]["note"]
    assert table[0]["outcome"] == "ik=K7"


def test_scan_stdin_and_jobs(capsys, tmp_path, monkeypatch):
    lines = [encode_graph6(fam.build(s)) for s in fam.enumerate_prisms(11)]
    path = _corpus(tmp_path, lines)
    serial = run(capsys, "scan", path, "--check", "k7")
    parallel = run(capsys, "scan", path, "--check", "k7", "--jobs", "2")
    assert serial == parallel and serial[0] == 0
    monkeypatch.setattr(sys, "stdin", io.StringIO("\n".join(lines) + "\n"))
    piped = run(capsys, "scan", "-", "--check", "k7")
    assert rows(piped[1]) == rows(serial[1])


def test_scan_missing_file(capsys, tmp_path):
    assert run(capsys, "scan", str(tmp_path / "absent.g6"))[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nspminor.cli", "bounds", "--n", "6..6"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[1].startswith("6,")
