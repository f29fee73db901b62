import json
from fractions import Fraction
from pathlib import Path

import pytest

from amolab.periodic.bands import bands


def load_fixture(filename):
    fixture_path = Path(__file__).parent / 'fixtures' / filename
    with open(fixture_path, 'r') as f:
        return json.load(f)


@pytest.fixture(scope="module")
def band_instances():
    return load_fixture("band_instances.json")


@pytest.fixture
def spectrum_of():
    def build(instance):
        return bands(instance["lambda"], Fraction(instance["p"], instance["q"]), instance["theta"])
    return build


@pytest.fixture(scope="module")
def two_fifths(band_instances):
    instance = band_instances["total_mass"]
    return bands(instance["lambda"], Fraction(instance["p"], instance["q"]), instance["theta"])
