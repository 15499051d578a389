import json

import pytest

from sfq import cli
from sfq.io import format_vector, parse_table, parse_vector
from sfq.kgra import broom, gamma_bb, gamma_edge
from sfq.linalg import Inconsistent


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def record(nb, nw, edges, **extra):
    return json.dumps({"nb": nb, "nw": nw, "edges": edges, **extra}) + "\n"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_canon_three_cycle(tmp_path, capsys):
    f = write(tmp_path, "g.jsonl", record(5, 0, [["b3", "b1"], ["b3", "b2"], ["b2", "b3"]]))
    code, out, _ = run(capsys, "canon", f)
    assert code == 0
    assert json.loads(out) == {"nb": 5, "nw": 0, "edges": [["b2", "b3"], ["b3", "b1"], ["b3", "b2"]],
                               "coeff": "+1/1"}


def test_canon_duplicate_edge(tmp_path, capsys):
    f = write(tmp_path, "g.jsonl", record(2, 0, [["b1", "b2"], ["b1", "b2"]]))
    code, out, _ = run(capsys, "canon", f)
    assert code == 0 and out.split()[0] == "ZERO"


def test_canon_bad_colour_tag(tmp_path, capsys):
    f = write(tmp_path, "g.jsonl", "# header\n" + record(1, 1, [["b1", "r1"]]))
    code, _, err = run(capsys, "canon", f)
    assert code == 2
    assert "line 2" in err and "'r1'" in err


def test_canon_loop_is_an_input_error(tmp_path, capsys):
    f = write(tmp_path, "g.jsonl", record(2, 0, [["b2", "b2"]]))
    code, _, err = run(capsys, "canon", f)
    assert code == 2 and "loop" in err


def test_missing_file(capsys):
    code, _, _ = run(capsys, "canon", "/nonexistent/file")
    assert code == 2


def test_compose(tmp_path, capsys):
    a = write(tmp_path, "a", format_vector(gamma_edge()))
    b = write(tmp_path, "b", format_vector(gamma_bb()))
    code, out, _ = run(capsys, "compose", "--slot", "1", "--color", "c", a, b)
    assert code == 0
    assert len(parse_vector(out)) == 4
    code, _, _ = run(capsys, "compose", "--slot", "3", "--color", "c", a, b)
    assert code == 2


@pytest.mark.parametrize("cmd,inp,want", [
    ("hoch", broom(1), "ZERO 1 2 o"),
    ("pi", broom(2), None),
    ("pike-d", broom(1), format_vector(gamma_edge().with_color("o"))),
    ("pike-h", gamma_edge(), format_vector(broom(1))),
])
def test_unary_operators(tmp_path, capsys, cmd, inp, want):
    f = write(tmp_path, "g", format_vector(inp))
    code, out, _ = run(capsys, cmd, f)
    assert code == 0
    assert out.strip() == (want or format_vector(inp)).strip()


def test_pike_d_rejects_non_invariant(tmp_path, capsys):
    f = write(tmp_path, "g", record(2, 1, [["b1", "w1"]]))
    code, _, err = run(capsys, "pike-d", f)
    assert code == 2 and "invariant" in err


def test_run_and_verify(tmp_path, capsys):
    out_dir = tmp_path / "o"
    code, out, _ = run(capsys, "run", "--nmax", "2", "--kmax", "3", "--out", str(out_dir))
    assert code == 0 and "FAIL" not in out
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == ["mc.tsv", "report.png", "report.tsv", "table.txt"]
    assert (out_dir / "report.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    code, out, _ = run(capsys, "verify", str(out_dir / "table.txt"))
    assert code == 0
    statuses = {line.split("\t")[2] for line in out.splitlines()[1:]}
    assert statuses == {"PASS", "UNCHECKED"}


def test_verify_flags_perturbed_coefficient(tmp_path, capsys):
    out_dir = tmp_path / "o"
    run(capsys, "run", "--nmax", "2", "--kmax", "3", "--out", str(out_dir))
    text = (out_dir / "table.txt").read_text()
    bad = text.replace("  -1/12 ", "  -1/11 ", 1)
    assert bad != text
    code, out, _ = run(capsys, "verify", write(tmp_path, "bad.txt", bad))
    assert code == 4
    failed = [line.split("\t")[0] for line in out.splitlines() if "\tFAIL\t" in line]
    assert "o:2,3" in failed


def test_verify_flags_wrong_broom(tmp_path, capsys):
    out_dir = tmp_path / "o"
    run(capsys, "run", "--nmax", "2", "--kmax", "1", "--out", str(out_dir))
    text = (out_dir / "table.txt").read_text().replace("  +1/2 b1>w1 b1>w2", "  +1/3 b1>w1 b1>w2")
    code, out, _ = run(capsys, "verify", write(tmp_path, "bad.txt", text))
    assert code == 4
    failed = {line.split("\t")[0] for line in out.splitlines() if "\tFAIL\t" in line}
    assert "o:1,2" in failed


def test_verify_parse_error(tmp_path, capsys):
    code, _, err = run(capsys, "verify", write(tmp_path, "t.txt", "sfq-table 1\ncutoff two 1\n"))
    assert code == 2 and "line 2" in err


def test_run_rejects_small_nmax(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["run", "--nmax", "1", "--kmax", "1"])
    assert exc.value.code == 2


def test_run_inconsistent_exit_code(tmp_path, capsys, monkeypatch):
    def boom(*_a, **_k):
        raise Inconsistent("INCONSISTENT hoch-2@k=3", "hoch-2@k=3", (3, 2))
    monkeypatch.setattr(cli, "run_induction", boom)
    code, _, err = run(capsys, "run", "--nmax", "2", "--kmax", "1", "--out", str(tmp_path / "x"))
    assert code == 3 and "hoch-2@k=3" in err


def test_run_with_weight_cross_check(tmp_path, capsys):
    out_dir = tmp_path / "o"
    code, _, _ = run(capsys, "run", "--nmax", "2", "--kmax", "1", "--samples", "2000",
                     "--seed", "4", "--out", str(out_dir))
    assert code == 0
    rows = (out_dir / "weights.tsv").read_text().splitlines()
    assert rows[0] == "k\tmean\tstderr\tsamples\tseed"
    assert [r.split("\t")[0] for r in rows[1:]] == ["0", "1"]


def test_weight(tmp_path, capsys):
    f = write(tmp_path, "g", format_vector(broom(2)))
    code, out, _ = run(capsys, "weight", f, "--samples", "50000", "--seed", "1")
    assert code == 0
    header, row = out.splitlines()
    assert header == "mean\tstderr\tsamples\tseed"
    mean, stderr, samples, seed = row.split("\t")
    assert abs(float(mean) - 0.5) <= 3 * float(stderr) and samples == "50000" and seed == "1"


def test_weight_disconnected_is_zero(tmp_path, capsys):
    f = write(tmp_path, "g", record(2, 2, [["b1", "b2"], ["b1", "w1"], ["b2", "b1"], ["b2", "w1"]]))
    code, out, _ = run(capsys, "weight", f)
    assert code == 0 and out.splitlines()[1].startswith("0.0\t0.0\t")


def test_table_written_by_run_parses(tmp_path, capsys):
    out_dir = tmp_path / "o"
    run(capsys, "run", "--nmax", "3", "--kmax", "1", "--out", str(out_dir))
    tab = parse_table((out_dir / "table.txt").read_text())
    assert (3, 0) in tab.entries and (3, 1) in tab.entries
