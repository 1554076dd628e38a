import json

import pytest

from treeburn.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name, args in {
        "p3": ("perfect", "--h", 3),
        "path9": ("path", "--n", 9),
        "path16": ("path", "--n", 16),
        "prop": ("prop1", "--k", 3),
        "fb": ("fbtnp", "--n", 41, "--seed", 2),
        "r30": ("random-tree", "--n", 30, "--seed", 1),
    }.items():
        out = tmp_path / f"{name}.el"
        code, _, _ = run(capsys, "gen", *args, "--out", out)
        assert code == 0
        paths[name] = out
    return paths


def test_gen_reports(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "perfect", "--h", 3, "--out", tmp_path / "a.el")
    info = json.loads(out)
    assert code == 0 and info["n"] == 15 and info["is_perfect"]
    code, out, _ = run(capsys, "gen", "prop1", "--k", 3, "--out", tmp_path / "b.el")
    info = json.loads(out)
    assert info["n"] == 15 and (tmp_path / "b.seq").exists()
    code, out, err = run(capsys, "gen", "path", "--n", 9)
    assert out.splitlines()[0] == "9" and json.loads(err)["n"] == 9


def test_gen_usage_errors(capsys):
    assert run(capsys, "gen", "path")[0] == 2
    assert run(capsys, "gen", "fbtnp", "--n", 4)[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_bound(files, capsys):
    code, out, _ = run(capsys, "bound", files["fb"], "--algo", "improved", "--check", "validate")
    rep = json.loads(out)
    assert code == 0 and rep["result"]["steps_used"] <= 7  # ceil(sqrt(50)) - 1
    assert all(rep["verdicts"].values())
    code, out, _ = run(capsys, "bound", files["path9"], "--algo", "general")
    assert code == 0 and json.loads(out)["result"]["claimed_bound"] == 4
    assert run(capsys, "bound", files["p3"], "--algo", "sqrt")[0] == 2
    code, out, _ = run(capsys, "bound", files["p3"], "--check", "validate,oracle")
    rep = json.loads(out)
    assert rep["algorithm"] == "perfect" and rep["oracle"]["b"] == 4


def test_bound_formats(files, capsys):
    code, out, _ = run(capsys, "bound", files["fb"], "--format", "csv")
    assert out.startswith("algorithm,n,steps_used")
    code, out, _ = run(capsys, "bound", files["fb"], "--format", "dot")
    assert out.startswith("graph T {")


def test_verify(files, tmp_path, capsys):
    seq = files["prop"].with_suffix(".seq")
    code, out, _ = run(capsys, "verify", files["prop"], seq)
    assert code == 0 and json.loads(out)["strict"]["valid"]
    rev = tmp_path / "rev.seq"
    rev.write_text("\n".join(reversed(seq.read_text().split())) + "\n")
    assert run(capsys, "verify", files["prop"], rev)[0] == 1
    every = tmp_path / "all.seq"
    every.write_text("".join(f"{v}\n" for v in range(9)))
    assert run(capsys, "verify", files["path9"], every)[0] == 0
    bad = tmp_path / "bad.seq"
    bad.write_text("99\n")
    assert run(capsys, "verify", files["path9"], bad)[0] == 2


def test_solve(files, capsys):
    code, out, _ = run(capsys, "solve", files["path16"])
    assert code == 0 and json.loads(out)["b"] == 4
    assert json.loads(run(capsys, "solve", files["p3"])[1])["b"] == 4
    code, out, _ = run(capsys, "solve", files["r30"], "--max-nodes", 3)
    rep = json.loads(out)
    assert code == 3 and rep["upper_bound"] >= 1


def test_reports_are_byte_deterministic(files, capsys):
    a = run(capsys, "bound", files["fb"], "--algo", "sqrt")[1]
    b = run(capsys, "bound", files["fb"], "--algo", "sqrt")[1]
    assert a == b
    a = run(capsys, "bench", "--sizes", "5:31:2", "--algos", "sqrt,improved")[1]
    b = run(capsys, "bench", "--sizes", "5:31:2", "--algos", "sqrt,improved", "--workers", "2")[1]
    assert a == b


def test_bench(capsys, monkeypatch):
    code, out, _ = run(capsys, "bench", "--family", "path", "--sizes", "1:16",
                       "--algos", "general,oracle")
    rows = json.loads(out)["rows"]
    assert code == 0 and [r["oracle_b"] for r in rows] == [r["sqrt_n"] for r in rows]
    code, out, err = run(capsys, "bench", "--family", "random-tree", "--sizes", "50,120,300",
                         "--algos", "general", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("bessy")
    monkeypatch.setenv("PYRO_SEED", "5")
    seeded = json.loads(run(capsys, "bench", "--sizes", "21", "--algos", "sqrt")[1])
    assert json.loads(seeded["rows"][0]["spec"])["params"]["seed"] == 5 * 100_003


def test_bench_corpus_file(tmp_path, capsys):
    corpus = tmp_path / "c.jsonl"
    corpus.write_text('{"family": "complete", "params": {"h": 3, "leaves": 5}}\n'
                      '{"family": "perfect", "params": {"h": 2}}\n')
    code, out, _ = run(capsys, "bench", "--corpus", corpus, "--algos", "auto,oracle")
    rows = json.loads(out)["rows"]
    assert code == 0 and [r["oracle_b"] for r in rows] == [3, 3]
