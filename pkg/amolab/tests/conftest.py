import pytest
from hypothesis import settings

# numerical properties are slow per example and vary in runtime
settings.register_profile("amolab", deadline=None, max_examples=50)
settings.load_profile("amolab")


@pytest.fixture
def results_dir(tmp_path, monkeypatch):
    """Default output directory redirected into tmp_path."""
    directory = tmp_path / "results"
    monkeypatch.setenv("AMO_LAB_OUTPUT_DIR", str(directory))
    return directory
