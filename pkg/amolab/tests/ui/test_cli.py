import json
from unittest.mock import patch

import pytest

from amolab.ui.cli import (
    EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, RunConfig, build_parser, config_from_args, main, run,
)
from amolab.utils.errors import BandResolutionFailure


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.setenv("AMO_LAB_THREADS", "1")


def read_lines(path):
    with open(path) as f:
        return f.read().splitlines()


class TestRunConfig:

    def test_resolved_fills_defaults_and_converts(self):
        params = RunConfig("bands", {"lambda": "0.5", "pq": "2/5"}).resolved()

        assert params["lambda"] == 0.5
        assert params["pq"].denominator == 5
        assert params["theta"] == 0.0

    def test_unknown_command_and_parameter(self):
        assert run(RunConfig("spectrum", {})) == EXIT_USAGE
        assert run(RunConfig("bands", {"lambda": "0.5", "pq": "2/5", "colour": "red"})) == EXIT_USAGE

    def test_missing_required_parameter(self, tmp_path):
        assert run(RunConfig("bands", {"lambda": "0.5"}, output=str(tmp_path / "b.json"))) == EXIT_USAGE

    def test_bad_value(self, tmp_path):
        config = RunConfig("bands", {"lambda": "half", "pq": "2/5"}, output=str(tmp_path / "b.json"))

        assert run(config) == EXIT_USAGE


class TestMain:

    def test_butterfly_csv(self, tmp_path):
        out = tmp_path / "butterfly.csv"

        status = main(["butterfly", "--lambda", "0.5", "--qmax", "5", "--out", str(out)])

        lines = read_lines(out)
        assert status == EXIT_OK
        assert lines[0].startswith("# amolab ")
        assert lines[1] == "p,q,band,E_lo,E_hi"
        assert len(lines) == 2 + 37

    def test_butterfly_independent_of_threads(self, tmp_path):
        single, pooled = tmp_path / "one.csv", tmp_path / "two.csv"

        main(["butterfly", "--lambda", "0.5", "--qmax", "6", "--out", str(single), "--no-header", "--threads", "1"])
        main(["butterfly", "--lambda", "0.5", "--qmax", "6", "--out", str(pooled), "--no-header", "--threads", "2"])

        assert read_lines(single) == read_lines(pooled)

    def test_butterfly_with_failed_frequency_exits_numerical(self, tmp_path):
        out = tmp_path / "butterfly.csv"

        def failing_bands(lam, p_over_q, theta):
            raise BandResolutionFailure(f"no scan for {p_over_q}")

        with patch("amolab.periodic.butterfly.bands", side_effect=failing_bands):
            status = main(["butterfly", "--lambda", "2", "--qmax", "3", "--out", str(out)])

        with open(tmp_path / "butterfly.error.json") as f:
            payload = json.load(f)
        assert status == EXIT_NUMERICAL
        assert payload["error"] == "BandResolutionFailure"
        assert not out.exists()

    def test_cancel_test_report(self, tmp_path):
        out = tmp_path / "cancel.json"

        status = main(["cancel-test", "--trials", "40", "--seed", "7", "--out", str(out)])

        with open(out) as f:
            report = json.load(f)
        assert status == EXIT_OK
        assert report["trials"] == 40
        assert report["seed"] == 7
        assert report["pass"] is True

    def test_numerical_failure_writes_error_file(self, tmp_path):
        out = tmp_path / "holder.json"

        status = main(["holder", "--lambda", "0.5", "--pq", "2/5", "--spacing", "1e-3", "--out", str(out)])

        with open(tmp_path / "holder.error.json") as f:
            payload = json.load(f)
        assert status == EXIT_NUMERICAL
        assert payload["error"] == "ResolutionError"
        assert payload["command"] == "holder"
        assert not out.exists()

    def test_invalid_domain_value_is_a_usage_error(self, tmp_path):
        status = main(["shadow", "--lambda", "0.5", "--pq", "8/13", "--dev", "0.1",
                       "--out", str(tmp_path / "shadow.json")])

        assert status == EXIT_USAGE

    def test_unknown_flag_is_rejected_by_the_parser(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["bands", "--lambda", "0.5", "--pq", "2/5", "--colour", "red"])

        assert excinfo.value.code == 2

    def test_single_energy_lyapunov_prints_value(self, tmp_path, capsys):
        out = tmp_path / "lyapunov.json"

        status = main(["lyapunov", "--lambda", "2", "--alpha", "golden", "--E", "0",
                       "--n", "1000", "--grid", "32", "--out", str(out)])

        printed = float(capsys.readouterr().out.strip().splitlines()[-1])
        with open(out) as f:
            assert json.load(f)["lyap"] == printed
        assert status == EXIT_OK

    def test_ids_table_as_json(self, tmp_path):
        out = tmp_path / "ids.json"

        status = main(["ids", "--lambda", "0.5", "--pq", "1/3", "--e-min", "-3", "--e-max", "3",
                       "--e-count", "7", "--format", "json", "--out", str(out)])

        with open(out) as f:
            rows = json.load(f)["rows"]
        assert status == EXIT_OK
        assert [row["N"] for row in rows][0] == 0.0
        assert [row["N"] for row in rows][-1] == 1.0


class TestConfigPrecedence:

    @pytest.fixture
    def config_file(self, tmp_path):
        path = tmp_path / "bands.json"
        with open(path, "w") as f:
            json.dump({"lambda": 0.5, "pq": "2/5", "theta": 0.25, "threads": 3, "format": "json"}, f)
        return path

    def test_flags_override_file_values(self, config_file):
        args = build_parser().parse_args(["bands", "--config", str(config_file), "--lambda", "0.7"])

        config = config_from_args(args)

        assert config.params["lambda"] == "0.7"
        assert config.params["theta"] == 0.25
        assert config.threads == 3
        assert config.fmt == "json"

    def test_threads_fall_back_to_environment(self, monkeypatch):
        monkeypatch.setenv("AMO_LAB_THREADS", "5")
        args = build_parser().parse_args(["bands", "--lambda", "0.5", "--pq", "2/5"])

        assert config_from_args(args).threads == 5

    def test_unreadable_config_file(self, tmp_path):
        status = main(["bands", "--config", str(tmp_path / "missing.json")])

        assert status == EXIT_USAGE

    def test_menu_subcommand_starts_the_menu(self):
        with patch("amolab.ui.menu_ui.MenuUI.run") as menu_run:
            assert main(["menu"]) == EXIT_OK

        menu_run.assert_called_once()


class TestDefaultOutput:

    def test_report_lands_in_configured_output_dir(self, results_dir):
        status = main(["resonances", "--theta", "0.1", "--alpha", "golden", "--K", "200"])

        assert status == EXIT_OK
        assert (results_dir / "resonances.json").exists()

    def test_table_suffix_follows_format(self, results_dir):
        status = main(["butterfly", "--lambda", "1", "--qmax", "2", "--format", "parquet"])

        assert status == EXIT_OK
        assert (results_dir / "butterfly.parquet").exists()
