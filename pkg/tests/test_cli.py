import pytest

from pertinex.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, main
from pertinex.corpus import save_collection


@pytest.fixture
def toy_file(toy_collection, tmp_path):
    path = tmp_path / "toy.json"
    save_collection(toy_collection, path)
    return path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_synth_then_stats(tmp_path, capsys):
    out = tmp_path / "wp.json"
    code, _, _ = run(["synth", "--seed", 7, "--out", out], capsys)
    assert code == EXIT_OK
    code, stdout, _ = run(["stats", "--collection", out], capsys)
    assert code == EXIT_OK
    assert "objects:              140" in stdout
    assert "queries:              25" in stdout
    assert "vocabulary:           50" in stdout


def test_synth_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["synth", "--seed", 7, "--out", a], capsys)[0] == EXIT_OK
    assert run(["synth", "--seed", 7, "--out", b], capsys)[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_search_table(toy_file, capsys):
    code, stdout, _ = run(["search", "--collection", toy_file, "--goals", "g1,g2"], capsys)
    assert code == EXIT_OK
    lines = stdout.strip().splitlines()
    assert len(lines) == 3  # header + two ranked objects
    assert "o1" in lines[1] and "1.741259" in lines[1]
    assert "o2" in lines[2] and "0.405465" in lines[2]


def test_eval_pr_outputs(toy_file, tmp_path, capsys):
    out_dir = tmp_path / "report"
    code, _, _ = run(["eval", "pr", "--collection", toy_file, "--out-dir", out_dir], capsys)
    assert code == EXIT_OK
    csv_text = (out_dir / "pr_curve.csv").read_text()
    assert csv_text.splitlines()[0] == "query_id,recall_level,precision"
    assert "__mean__" in csv_text
    assert (out_dir / "pr_curve.png").stat().st_size > 0


def test_eval_feedback_shape_and_determinism(tmp_path, capsys):
    coll = tmp_path / "wp.json"
    run(["synth", "--seed", 7, "--out", coll], capsys)
    outs = []
    for name in ("r1", "r2"):
        out_dir = tmp_path / name
        code, _, _ = run(["eval", "feedback", "--collection", coll,
                          "--methods", "baseline,prf,ppf", "--R", "1..10",
                          "--k", 10, "--out-dir", out_dir], capsys)
        assert code == EXIT_OK
        outs.append((out_dir / "feedback_curve.csv").read_bytes())
        assert (out_dir / "feedback_curve.png").stat().st_size > 0
    assert outs[0] == outs[1]
    lines = outs[0].decode().splitlines()
    assert lines[0] == "method,R,mean_avg_precision,queries_evaluated,queries_skipped"
    assert len(lines) == 1 + 3 * 10


def test_compare_outputs(tmp_path, capsys):
    coll = tmp_path / "wp.json"
    run(["synth", "--seed", 7, "--out", coll], capsys)
    out_dir = tmp_path / "cmp"
    code, stdout, _ = run(["compare", "--collection", coll, "--out-dir", out_dir], capsys)
    assert code == EXIT_OK
    assert "28%" in stdout and "87%" in stdout
    header = (out_dir / "overlap.csv").read_text().splitlines()[0]
    assert header == "query_id,set_difference_pct,weight_difference_pct,shared_goals"


def test_judgments_tsv_flag(toy_file, tmp_path, capsys):
    tsv = tmp_path / "extra.tsv"
    tsv.write_text("q1\to2\n")
    out_dir = tmp_path / "pr2"
    code, _, _ = run(["eval", "pr", "--collection", toy_file,
                      "--judgments", tsv, "--out-dir", out_dir], capsys)
    assert code == EXIT_OK


def test_unknown_subcommand_exit_64(capsys):
    assert run(["frobnicate"], capsys)[0] == EXIT_USAGE


def test_unknown_flag_exit_64(toy_file, capsys):
    assert run(["stats", "--collection", toy_file, "--bogus"], capsys)[0] == EXIT_USAGE


def test_missing_file_exit_io(tmp_path, capsys):
    code, _, err = run(["stats", "--collection", tmp_path / "absent.json"], capsys)
    assert code == EXIT_IO


def test_infeasible_synth_exit_validation(tmp_path, capsys):
    code, _, err = run(["synth", "--seed", 1, "--out", tmp_path / "x.json",
                        "--pertinent-per-query", 200], capsys)
    assert code == EXIT_VALIDATION
    assert "pertinent_per_query" in err


def test_help_exits_zero(capsys):
    assert run(["--help"], capsys)[0] == EXIT_OK
