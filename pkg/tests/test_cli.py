"""End-to-end tests of the command-line interface.

These drive ``main`` in-process and assert on captured output and exit
codes, so they cover flag parsing, file handling and error mapping
without spawning subprocesses.
"""

import re

import pytest

from gaintree.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def parity_csv(tmp_path, capsys):
    path = tmp_path / "parity4.csv"
    code, out, _ = _run(capsys, "synth", "parity", "--bits", "4", "--complete",
                        "--out", str(path))
    assert code == EXIT_OK
    assert "wrote 16 examples (8 positive)" in out
    return path


@pytest.fixture
def concept_files(tmp_path, capsys):
    train = tmp_path / "train.csv"
    test = tmp_path / "test.csv"
    code, out, _ = _run(capsys, "synth", "tree", "--attrs", "8", "--depth", "3",
                        "--noise", "0.1", "--train-size", "200", "--test-size", "400",
                        "--seed", "3", "--out", str(train), "--test-out", str(test))
    assert code == EXIT_OK
    assert "wrote 200 training examples" in out
    assert "wrote 400 noise-free test examples" in out
    return train, test


class TestTrainEvalClassify:
    def test_train_then_eval_agree_on_training_errors(self, tmp_path, capsys, concept_files):
        train, _ = concept_files
        model = tmp_path / "model.txt"
        code, out, _ = _run(capsys, "train", "--data", str(train), "--alpha", "1.0",
                            "--out", str(model))
        assert code == EXIT_OK
        reported = re.search(r"training errors: (\d+) of (\d+)", out)
        assert reported is not None
        assert reported.group(2) == "200"
        code, out, _ = _run(capsys, "eval", "--model", str(model), "--data", str(train))
        assert code == EXIT_OK
        assert f"errors: {reported.group(1)}" in out
        confusion = re.search(r"TP: (\d+)  FP: (\d+)  TN: (\d+)  FN: (\d+)", out)
        assert confusion is not None
        assert sum(int(g) for g in confusion.groups()) == 200

    def test_parity_trains_to_zero_errors(self, tmp_path, capsys, parity_csv):
        model = tmp_path / "model.txt"
        code, out, _ = _run(capsys, "train", "--data", str(parity_csv), "--out", str(model))
        assert code == EXIT_OK
        assert "training errors: 0 of 16 (rate 0.0000)" in out
        assert "leaves: 16" in out

    def test_classify_accepts_labeled_and_unlabeled_rows(self, tmp_path, capsys, parity_csv):
        model = tmp_path / "model.txt"
        assert _run(capsys, "train", "--data", str(parity_csv), "--out", str(model))[0] == 0
        code, labeled_out, _ = _run(capsys, "classify", "--model", str(model),
                                    "--data", str(parity_csv))
        assert code == EXIT_OK
        labels = labeled_out.strip().splitlines()
        assert len(labels) == 16
        assert set(labels) == {"+", "-"}
        # same rows without the class column must classify identically
        unlabeled = tmp_path / "unlabeled.csv"
        lines = parity_csv.read_text().splitlines()
        unlabeled.write_text(
            "\n".join(",".join(line.split(",")[:-1]) for line in lines) + "\n"
        )
        code, out, _ = _run(capsys, "classify", "--model", str(model), "--data", str(unlabeled))
        assert code == EXIT_OK
        assert out == labeled_out

    def test_classify_proportions_column(self, tmp_path, capsys, parity_csv):
        model = tmp_path / "model.txt"
        assert _run(capsys, "train", "--data", str(parity_csv), "--out", str(model))[0] == 0
        code, out, _ = _run(capsys, "classify", "--model", str(model),
                            "--data", str(parity_csv), "--proportions")
        assert code == EXIT_OK
        for line in out.strip().splitlines():
            label, estimate = line.split("\t")
            assert label in "+-"
            assert float(estimate) == (1.0 if label == "+" else 0.0)

    def test_classify_rejects_mismatched_columns(self, tmp_path, capsys, parity_csv):
        model = tmp_path / "model.txt"
        assert _run(capsys, "train", "--data", str(parity_csv), "--out", str(model))[0] == 0
        bad = tmp_path / "bad.csv"
        bad.write_text("x0,b1,b2,b3\n0,1,0,1\n")
        code, _, err = _run(capsys, "classify", "--model", str(model), "--data", str(bad))
        assert code == EXIT_DATA
        assert "do not match" in err
        assert "'b0'" in err and "'x0'" in err


class TestSweep:
    def test_table_csv_and_plot(self, tmp_path, capsys, concept_files):
        train, test = concept_files
        csv_path = tmp_path / "sweep.csv"
        plot_path = tmp_path / "sweep.png"
        code, out, _ = _run(capsys, "sweep", "--data", str(train), "--holdout", str(test),
                            "--alpha-grid", "0,0.5,1,2,4,8",
                            "--csv", str(csv_path), "--plot", str(plot_path))
        assert code == EXIT_OK
        assert re.search(r"alpha\s+leaves\s+train_err\s+holdout_err", out)
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "alpha,leaves,train_err,holdout_err"
        assert len(lines) == 7
        leaves = [int(line.split(",")[1]) for line in lines[1:]]
        assert leaves == sorted(leaves, reverse=True)
        train_errs = [float(line.split(",")[2]) for line in lines[1:]]
        assert train_errs == sorted(train_errs)
        assert plot_path.stat().st_size > 0

    def test_descending_grid_is_a_usage_error(self, capsys, concept_files):
        train, test = concept_files
        code, _, err = _run(capsys, "sweep", "--data", str(train), "--holdout", str(test),
                            "--alpha-grid", "2,1")
        assert code == EXIT_USAGE
        assert "ascending" in err

    def test_unparseable_grid_is_a_usage_error(self, capsys, concept_files):
        train, test = concept_files
        code, _, err = _run(capsys, "sweep", "--data", str(train), "--holdout", str(test),
                            "--alpha-grid", "0;1")
        assert code == EXIT_USAGE
        assert "alpha grid" in err


class TestEnsemble:
    def test_runs_are_deterministic(self, capsys, concept_files):
        train, _ = concept_files
        argv = ("ensemble", "--data", str(train), "--size", "4",
                "--temperature", "1.0", "--seed", "11", "--weighting", "posterior")
        code, first, _ = _run(capsys, *argv)
        assert code == EXIT_OK
        code, second, _ = _run(capsys, *argv)
        assert code == EXIT_OK
        assert first == second
        assert len(re.findall(r"^tree \d+:", first, flags=re.M)) == 4

    def test_explicit_types_are_reported_in_order(self, capsys, parity_csv):
        code, out, _ = _run(capsys, "ensemble", "--data", str(parity_csv), "--size", "2",
                            "--temperature", "1e-9", "--types", "0110,0000")
        assert code == EXIT_OK
        assert "type 0110: 0\n" in out
        estimates = re.findall(r"^type (\d+): (\S+)$", out, flags=re.M)
        assert [bits for bits, _ in estimates] == ["0110", "0000"]

    def test_malformed_type_is_a_usage_error(self, capsys, parity_csv):
        code, _, err = _run(capsys, "ensemble", "--data", str(parity_csv), "--types", "01")
        assert code == EXIT_USAGE
        assert "need 4 characters" in err


class TestExitCodes:
    def test_missing_data_file_maps_to_data_error(self, tmp_path, capsys):
        code, _, err = _run(capsys, "train", "--data", str(tmp_path / "absent.csv"),
                            "--out", str(tmp_path / "m.txt"))
        assert code == EXIT_DATA
        assert "data error" in err

    def test_negative_alpha_maps_to_usage_error(self, tmp_path, capsys, parity_csv):
        code, _, err = _run(capsys, "train", "--data", str(parity_csv), "--alpha", "-1",
                            "--out", str(tmp_path / "m.txt"))
        assert code == EXIT_USAGE
        assert "usage error" in err

    def test_unknown_subcommand_maps_to_usage_error(self, capsys):
        code, _, err = _run(capsys, "transmogrify")
        assert code == EXIT_USAGE

    def test_conflicting_parity_modes_map_to_usage_error(self, tmp_path, capsys):
        code, _, _ = _run(capsys, "synth", "parity", "--bits", "3", "--complete",
                          "--sample-size", "5", "--out", str(tmp_path / "p.csv"))
        assert code == EXIT_USAGE

    def test_corrupt_model_maps_to_data_error(self, tmp_path, capsys, parity_csv):
        bad = tmp_path / "model.txt"
        bad.write_text("not a model\n" * 7)
        code, _, err = _run(capsys, "eval", "--model", str(bad), "--data", str(parity_csv))
        assert code == EXIT_DATA
        assert "not a model file" in err

    def test_malformed_csv_maps_to_data_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b,class\n0,1\n")
        code, _, err = _run(capsys, "train", "--data", str(bad),
                            "--out", str(tmp_path / "m.txt"))
        assert code == EXIT_DATA
        assert "line 2" in err
