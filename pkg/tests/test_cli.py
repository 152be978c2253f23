import json
import subprocess
import sys

import pytest

from aesu import CSV_HEADER, read_corpus
from aesu.cli import cli_main


def run(*argv):
    return cli_main(list(argv))


@pytest.fixture
def corpus_path(tmp_path):
    path = tmp_path / "corpus.jsonl"
    assert run("gen", "--n", "12", "--raters", "150", "--seed", "21", "--out", str(path)) == 0
    return path


class TestGen:
    def test_row_count_and_determinism(self, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        assert run("gen", "--n", "10", "--raters", "50", "--seed", "3", "--out", str(a)) == 0
        assert run("gen", "--n", "10", "--raters", "50", "--seed", "3", "--out", str(b)) == 0
        assert a.read_text() == b.read_text()
        assert len(a.read_text().splitlines()) == 10

    def test_bad_spec(self, tmp_path, capsys):
        code = run("gen", "--n", "0", "--raters", "5", "--seed", "1",
                   "--out", str(tmp_path / "x.jsonl"))
        assert code == 1
        assert "n_images" in capsys.readouterr().err


class TestFitAndMetrics:
    def test_fit_fills_shapes(self, corpus_path, tmp_path):
        out = tmp_path / "fit.jsonl"
        assert run("fit", "--input", str(corpus_path), "--format", "jsonl",
                   "--out", str(out)) == 0
        records = read_corpus(str(out), "jsonl")
        assert len(records) == 12
        assert all(r.fit is not None and r.opinion is not None for r in records)
        assert all(r.report is None for r in records)

    def test_metrics_fills_everything(self, corpus_path, tmp_path):
        out = tmp_path / "metrics.jsonl"
        assert run("metrics", "--input", str(corpus_path), "--format", "jsonl",
                   "--out", str(out), "--boot", "150") == 0
        records = read_corpus(str(out), "jsonl")
        assert all(r.report is not None and r.modality is not None for r in records)

    def test_csv_output_by_extension(self, corpus_path, tmp_path):
        out = tmp_path / "fit.csv"
        assert run("fit", "--input", str(corpus_path), "--format", "jsonl",
                   "--out", str(out)) == 0
        assert out.read_text().splitlines()[0] == CSV_HEADER

    def test_jobs_do_not_change_bytes(self, corpus_path, tmp_path):
        outs = []
        for jobs in ("1", "3"):
            out = tmp_path / f"fit-{jobs}.jsonl"
            assert run("fit", "--input", str(corpus_path), "--format", "jsonl",
                       "--out", str(out), "--jobs", jobs, "--seed", "5") == 0
            outs.append(out.read_text())
        assert outs[0] == outs[1]


class TestClassify:
    def test_explicit_center(self, corpus_path, tmp_path):
        out = tmp_path / "cls.jsonl"
        assert run("classify", "--input", str(corpus_path), "--format", "jsonl",
                   "--out", str(out), "--center", "0.419,0.444,0.137") == 0
        records = read_corpus(str(out), "jsonl")
        assert all(r.ternary_class in ("pleasing", "unpleasing", "uncertain") for r in records)

    def test_bad_center(self, corpus_path, tmp_path, capsys):
        code = run("classify", "--input", str(corpus_path), "--out",
                   str(tmp_path / "x.jsonl"), "--center", "0.4,0.6")
        assert code == 1


class TestSimulate:
    def test_summary(self, corpus_path, capsys):
        assert run("simulate", "--input", str(corpus_path), "--format", "jsonl",
                   "--center", "0.33,0.33,0.34") == 0
        payload = json.loads(capsys.readouterr().out)
        assert set(payload["rules"]) == {"binary", "ternary"}
        for rule in payload["rules"].values():
            assert 0.0 <= rule["satisfaction_ratio"] <= 1.0

    def test_no_pleasing_images_exits_one(self, tmp_path, capsys):
        # every image skewed low: the ternary rule recommends nothing
        path = tmp_path / "low.jsonl"
        rows = [
            {"image_id": f"low{i}", "counts": [30, 40, 20, 8, 2, 0, 0, 0, 0, 0]}
            for i in range(4)
        ]
        path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
        code = run("simulate", "--input", str(path), "--format", "jsonl",
                   "--rules", "ternary", "--center", "0.33,0.33,0.34")
        assert code == 1
        assert "NoRecommendations" in capsys.readouterr().err

    def test_unknown_rule(self, corpus_path, capsys):
        assert run("simulate", "--input", str(corpus_path), "--rules", "magic") == 1


class TestEval:
    def test_identity(self, corpus_path, tmp_path, capsys):
        out = tmp_path / "m.jsonl"
        assert run("metrics", "--input", str(corpus_path), "--format", "jsonl",
                   "--out", str(out), "--boot", "100") == 0
        capsys.readouterr()
        assert run("eval", "--pred", str(out), "--truth", str(out)) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["binary_accuracy"] == 1.0
        assert report["mean"]["plcc"] == pytest.approx(1.0)
        assert report["mean"]["srocc"] == pytest.approx(1.0)
        assert report["mean"]["mae"] == 0.0
        assert report["aesu"]["mae"] == 0.0
        assert report["distribution"]["emd_r1_mean"] == 0.0
        assert report["distribution"]["kld_mean"] <= 1e-7


class TestCompute:
    def test_fit_and_losses(self, tmp_path):
        reqs = tmp_path / "req.jsonl"
        out = tmp_path / "resp.jsonl"
        uniform = [0.1] * 10
        reqs.write_text(
            "\n".join(
                json.dumps(r)
                for r in [
                    {"op": "fit", "counts": [1] * 10, "seed": 5},
                    {
                        "op": "losses",
                        "r_pred": uniform,
                        "b_pred": [1.0, 1.0],
                        "r_true": uniform,
                        "b_true": [1.0, 1.0],
                    },
                    {"op": "opinion", "alpha": 9, "beta": 1},
                    {"op": "fit", "counts": [0] * 10},
                ]
            )
            + "\n"
        )
        assert run("compute", "--requests", str(reqs), "--out", str(out)) == 0
        responses = [json.loads(line) for line in out.read_text().splitlines()]
        assert responses[0]["ok"] and responses[0]["u"] == pytest.approx(1.0, abs=1e-3)
        assert responses[1]["ok"] and responses[1]["total"] <= 1e-9
        assert responses[2]["ok"] and responses[2]["b"] == pytest.approx(0.8)
        assert not responses[3]["ok"]
        assert responses[3]["error"] == "AllZeroCounts"


class TestUsage:
    def test_no_command(self, capsys):
        assert run() == 1

    def test_unknown_command(self, capsys):
        assert run("frobnicate") == 1

    def test_missing_required(self, capsys):
        assert run("fit", "--input", "x.jsonl") == 1

    def test_missing_input_file(self, tmp_path, capsys):
        code = run("fit", "--input", str(tmp_path / "nope.jsonl"),
                   "--out", str(tmp_path / "o.jsonl"))
        assert code == 1
        assert "IoError" in capsys.readouterr().err

    def test_help_exits_zero(self, capsys):
        assert run("--help") == 0

    def test_module_entry_point(self, tmp_path):
        out = tmp_path / "g.jsonl"
        proc = subprocess.run(
            [sys.executable, "-m", "aesu", "gen", "--n", "2", "--raters", "10",
             "--seed", "1", "--out", str(out)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert len(out.read_text().splitlines()) == 2
