import json

import pytest

from conftest import BANKER, CHURCH, BANKER_VECTOR
from punsense import defaults
from punsense.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestUsage:
    def test_no_command_is_usage_error(self):
        with pytest.raises(SystemExit) as excinfo:
            main([])
        assert excinfo.value.code == 2

    def test_unknown_command_is_usage_error(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["frobnicate"])
        assert excinfo.value.code == 2

    def test_missing_required_flag(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["build-index", "--source", "x"])  # --out missing
        assert excinfo.value.code == 2


class TestBuildIndex:
    def test_round_trip_with_analyze(self, capsys, tmp_path):
        source = defaults.default_source_path()
        out = tmp_path / "idx.txt"
        code, _, err = run(capsys, "build-index", "--source", str(source), "--out", str(out))
        assert code == 0
        assert out.exists()
        code, stdout, _ = run(
            capsys, "analyze", "--index", str(out), "--json", "--quiet", BANKER
        )
        assert code == 0
        payload = json.loads(stdout)
        assert payload["vector"] == BANKER_VECTOR

    def test_checksum_mismatch_is_domain_error(self, capsys, tmp_path):
        doctored = tmp_path / "source.txt"
        doctored.write_text(
            defaults.default_source_text() + "\n", encoding="utf-8"
        )
        out = tmp_path / "idx.txt"
        code, _, err = run(capsys, "build-index", "--source", str(doctored), "--out", str(out))
        assert code == 1
        assert "error" in err.lower() or "checksum" in err.lower()
        # --force accepts the unpinned source
        code, _, _ = run(
            capsys, "build-index", "--source", str(doctored), "--out", str(out), "--force"
        )
        assert code == 0


class TestAnalyze:
    def test_plain_output(self, capsys):
        code, stdout, _ = run(capsys, "analyze", "--quiet", BANKER)
        assert code == 0
        assert [int(x) for x in stdout.split()] == BANKER_VECTOR

    def test_sorted_output(self, capsys):
        code, stdout, _ = run(capsys, "analyze", "--transform", "sort", "--quiet", BANKER)
        counts = [int(x) for x in stdout.split()]
        assert counts == sorted(BANKER_VECTOR, reverse=True)

    def test_explain_names_contributing_words(self, capsys):
        code, stdout, _ = run(capsys, "explain", "--quiet", BANKER)
        assert code == 0
        payload = json.loads(stdout)
        assert payload["vector"] == BANKER_VECTOR
        contributors = {w for words in payload["source_words"].values() for w in words}
        assert {"banker", "interest", "lose", "use", "be"} <= contributors


class TestTrainClassify:
    def test_train_then_classify_json(self, capsys, tmp_path):
        model = tmp_path / "model.json"
        code, _, _ = run(
            capsys, "train",
            "--corpus", str(defaults.default_corpus_path()),
            "--model", str(model), "--method", "logreg", "--quiet",
        )
        assert code == 0
        code, stdout, _ = run(capsys, "classify", "--model", str(model), "--json", "--quiet", BANKER)
        assert code == 0
        payload = json.loads(stdout)
        assert set(payload) == {"label", "decision_value"}
        assert payload["label"] in ("pun", "not-pun")
        assert isinstance(payload["decision_value"], float)

    def test_missing_model_is_domain_error(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "classify", "--model", str(tmp_path / "nope.json"), "--quiet", BANKER
        )
        assert code == 1
        assert err.strip()


class TestLocate:
    def test_heterographic_church(self, capsys):
        code, stdout, _ = run(
            capsys, "locate", "--mode", "heterographic", "--quiet", CHURCH
        )
        assert code == 0
        assert stdout.strip() == "propane"

    def test_homographic_banker_json(self, capsys):
        code, stdout, _ = run(
            capsys, "locate", "--method", "sense_based", "--json", "--quiet", BANKER
        )
        assert code == 0
        payload = json.loads(stdout)
        assert payload["target"] == "interest"


class TestExperiment:
    def config(self, tmp_path, **extra):
        config = {
            "task": "classify",
            "methods": ["logreg"],
            "transforms": ["none"],
            "seeds": [0, 1],
        }
        config.update(extra)
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config), encoding="utf-8")
        return path

    def test_missing_corpus_is_domain_error(self, capsys, tmp_path):
        config = self.config(tmp_path, corpus=str(tmp_path / "nope.tsv"))
        code, _, err = run(capsys, "experiment", "--config", str(config), "--quiet")
        assert code == 1
        assert err.strip()

    def test_report_and_log_written(self, capsys, tmp_path):
        config = self.config(tmp_path)
        out = tmp_path / "report.json"
        log = tmp_path / "log.jsonl"
        code, stdout, _ = run(
            capsys, "experiment", "--config", str(config),
            "--out", str(out), "--log", str(log), "--quiet",
        )
        assert code == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["rows"][0]["method"] == "logreg"
        entries = [json.loads(line) for line in log.read_text(encoding="utf-8").splitlines()]
        assert [e["seed"] for e in entries] == [0, 1]
        # table output on stdout
        assert "logreg" in stdout

    def test_identical_seeds_are_byte_identical(self, capsys, tmp_path):
        config = self.config(tmp_path)
        blobs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            code, _, _ = run(
                capsys, "experiment", "--config", str(config), "--out", str(out), "--quiet"
            )
            assert code == 0
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]
