import pytest

from amolab.utils import settings


class TestSettings:

    @pytest.fixture(autouse=True)
    def no_dotenv(self, monkeypatch):
        monkeypatch.setattr(settings, "load_dotenv", lambda override=False: None)

    def test_thread_count_from_environment(self, monkeypatch):
        monkeypatch.setenv("AMO_LAB_THREADS", "3")

        assert settings.get_thread_count() == 3

    def test_thread_count_falls_back_to_cores(self, monkeypatch):
        monkeypatch.delenv("AMO_LAB_THREADS", raising=False)
        monkeypatch.setattr(settings.os, "cpu_count", lambda: 6)

        assert settings.get_thread_count() == 6

    def test_seed_default_and_hex_override(self, monkeypatch):
        monkeypatch.delenv("AMO_LAB_SEED", raising=False)
        assert settings.get_seed() == 0x5EED

        monkeypatch.setenv("AMO_LAB_SEED", "0x10")
        assert settings.get_seed() == 16

    def test_malformed_value_exits_with_usage_status(self, monkeypatch, capsys):
        monkeypatch.setenv("AMO_LAB_THREADS", "many")

        with pytest.raises(SystemExit) as excinfo:
            settings.get_thread_count()

        assert excinfo.value.code == 2
        assert "AMO_LAB_THREADS" in capsys.readouterr().out

    def test_output_dir(self, monkeypatch):
        monkeypatch.setenv("AMO_LAB_OUTPUT_DIR", "/tmp/amolab-results")

        assert settings.get_output_dir() == "/tmp/amolab-results"
