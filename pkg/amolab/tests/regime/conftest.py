import json
import math
from fractions import Fraction
from pathlib import Path

import pytest

from amolab.arithmetic.frequencies import NearRational
from amolab.periodic.approximation import band_energy_at_rho
from amolab.periodic.bands import bands


def load_fixture(filename):
    fixture_path = Path(__file__).parent / 'fixtures' / filename
    with open(fixture_path, 'r') as f:
        return json.load(f)


@pytest.fixture(scope="module")
def golden_instances():
    return load_fixture("golden_instances.json")


@pytest.fixture(scope="module")
def q13_instance(golden_instances):
    instance = dict(golden_instances["q13"])
    spectrum = bands(instance["lambda"], Fraction(instance["p"], instance["q"]), instance["theta"])
    instance["E"] = band_energy_at_rho(spectrum, instance["band"], instance["rho"])
    instance["alpha_true"] = NearRational(instance["p"], instance["q"], math.exp(instance["dev_exponent"]))
    return instance
