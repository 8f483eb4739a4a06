from hwtune.harness.cli import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main
from tests import reset_di  # noqa


def test_select_quant(capsys):
    code = main(
        ["select-quant", "--params", "13e9", "--memory", "12", "--profile", "a6000"]
    )

    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "FP16   reject  26 GB required" in out
    assert "INT8   reject  13 GB required" in out
    assert "INT4   admit   6.5 GB required" in out
    assert "Recommendation on a6000: INT4" in out


def test_select_quant_nothing_fits(capsys):
    code = main(
        ["select-quant", "--params", "13e9", "--memory", "4", "--profile", "a6000"]
    )

    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "INT4   reject  6.5 GB required" in out
    assert "No quantization scheme fits into 4 GB" in out
    assert "Recommendation" not in out


def test_select_quant_without_measurement(tmp_path, capsys):
    table = tmp_path / "table.yaml"
    table.write_text(
        "device: adreno740\nentries:\n"
        "  - {model: tiny, scheme: FP16, tokens_per_second: 10.0}\n"
    )

    code = main(
        [
            "select-quant",
            "--params",
            "1e9",
            "--profile",
            "adreno740",
            "--schemes",
            "INT8",
            "INT4",
            "--table",
            str(table),
        ]
    )

    assert code == EXIT_OK
    assert "No admitted scheme was measured for tiny" in capsys.readouterr().out


def test_select_quant_with_measurements(capsys):
    code = main(
        [
            "select-quant",
            "--params",
            "3e9",
            "--profile",
            "adreno740",
            "--table",
            "adreno740_tokens",
            "--model",
            "openllama-3B",
        ]
    )

    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "Measured best for openllama-3B: INT8" in out


def test_tune_with_missing_manifest(tmp_path, capsys):
    code = main(["tune", "--manifest", str(tmp_path / "absent.yaml")])

    assert code == EXIT_USAGE
    assert "No manifest at" in capsys.readouterr().err


def test_unknown_command(capsys):
    assert main(["optimize"]) == EXIT_USAGE


def test_bad_target(tmp_path):
    code = main(["tune", "--output", str(tmp_path), "--target", "accuracy"])

    assert code == EXIT_USAGE


def test_tune_then_replay(tmp_path, capsys):
    run_dir = tmp_path / "run"

    code = main(["tune", "--output", str(run_dir), "--budget", "4", "--seed", "3"])

    assert code == EXIT_OK
    assert "completed after 4 rounds" in capsys.readouterr().out

    assert main(["replay", str(run_dir)]) == EXIT_OK
    assert "logs identical" in capsys.readouterr().out


def test_runtime_errors_exit_with_two(tmp_path, capsys):
    code = main(["tune", "--output", str(tmp_path), "--budget", "0"])

    assert code == EXIT_RUNTIME
    assert "BudgetError" in capsys.readouterr().err


def test_kernel_tune(capsys):
    code = main(
        [
            "kernel-tune",
            "--profile",
            "adreno740",
            "--kernel",
            "softmax_1024x1x32",
            "--budget",
            "6",
            "--strategy",
            "random",
        ]
    )

    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.startswith("softmax_1024x1x32: ")


def test_kernel_tune_unknown_strategy(capsys):
    code = main(["kernel-tune", "--profile", "a6000", "--strategy", "agent"])

    assert code == EXIT_USAGE


def test_compare(tmp_path, capsys):
    code = main(
        [
            "compare",
            "--optimizers",
            "random",
            "local",
            "--seeds",
            "0",
            "1",
            "--space",
            "resnet_appendix_d",
            "--budget",
            "4",
            "--output",
            str(tmp_path),
        ]
    )

    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("random ")
