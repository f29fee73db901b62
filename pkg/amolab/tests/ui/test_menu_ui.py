from unittest.mock import patch

import pytest

from amolab.ui.menu_ui import MENU_COMMANDS, MenuUI


class TestMenuUI:

    @pytest.fixture
    def menu(self):
        return MenuUI()

    def test_get_int_input_retries_until_in_range(self, menu, capsys):
        with patch("builtins.input", side_effect=["x", "99", "2"]):
            assert menu.get_int_input("Choice: ", 1, 3) == 2

        printed = capsys.readouterr().out
        assert "Please enter a valid number" in printed
        assert "between 1 and 3" in printed

    def test_get_value_input_keeps_default(self, menu):
        with patch("builtins.input", return_value=""):
            assert menu.get_value_input("theta", 0.0) == "0.0"
            assert menu.get_value_input("E") is None

    def test_butterfly_run_from_menu(self, menu, tmp_path, monkeypatch):
        monkeypatch.setenv("AMO_LAB_THREADS", "1")
        out = tmp_path / "butterfly.csv"
        exit_choice = str(len(MENU_COMMANDS) + 1)
        answers = ["1", "0.5", "3", "", str(out), "n", "", exit_choice]

        with patch("builtins.input", side_effect=answers):
            menu.run()

        with open(out) as f:
            lines = f.read().splitlines()
        assert lines[0] == "p,q,band,E_lo,E_hi"
        assert len(lines) == 1 + 1 + 2 + 6

    def test_numerical_failure_points_at_the_error_file(self, menu, capsys):
        menu.report_status(3, "data/results/holder.json")

        assert ".error.json next to data/results/holder.json" in capsys.readouterr().out

    def test_success_names_the_output(self, menu, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("AMO_LAB_THREADS", "1")
        out = tmp_path / "cancel.json"
        exit_choice = str(len(MENU_COMMANDS) + 1)
        answers = ["10", "20", "3", "", str(out), "y", "", exit_choice]

        with patch("builtins.input", side_effect=answers):
            menu.run()

        assert f"Results written to {out}" in capsys.readouterr().out
        assert out.exists()
