import json
from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from amolab.reports.writers import ResultWriter
from amolab.utils.errors import EdgeSingularity


class TestResultWriter:

    @pytest.fixture
    def writer(self, tmp_path):
        return ResultWriter(output_dir=str(tmp_path / "results"))

    @pytest.fixture
    def bands_frame(self):
        return pd.DataFrame({
            "p": [0, 1, 1],
            "q": [1, 2, 2],
            "band": [1, 1, 2],
            "E_lo": [-3.0, -2.23606797749979, 1.0],
            "E_hi": [1.0, -1.0, 2.23606797749979],
        })

    def test_csv_starts_with_header_line(self, writer, bands_frame):
        path = writer.write_table(bands_frame, "butterfly")

        with open(path) as f:
            lines = f.read().splitlines()

        assert path.endswith("results/butterfly.csv")
        assert lines[0].startswith("# amolab ")
        assert lines[1] == "p,q,band,E_lo,E_hi"
        assert lines[3] == "1,2,1,-2.2360679774997898,-1"

    def test_csv_without_header_is_deterministic(self, tmp_path, bands_frame):
        writer = ResultWriter(output_dir=str(tmp_path), header=False)

        first = writer.write_table(bands_frame, "first")
        second = writer.write_table(bands_frame, "second")

        with open(first) as a, open(second) as b:
            assert a.read() == b.read()

    def test_csv_round_trips_doubles(self, tmp_path):
        writer = ResultWriter(output_dir=str(tmp_path), header=False)
        frame = pd.DataFrame({"x": [0.1, 1.0 / 3.0, np.pi]})

        path = writer.write_table(frame, "doubles")

        restored = pd.read_csv(path)
        assert restored["x"].tolist() == frame["x"].tolist()

    def test_json_table(self, writer, bands_frame):
        path = writer.write_table(bands_frame, "butterfly", fmt="json")

        with open(path) as f:
            payload = json.load(f)

        assert "generated" in payload
        assert len(payload["rows"]) == 3
        assert payload["rows"][0]["band"] == 1

    def test_json_table_round_trips_doubles(self, tmp_path):
        writer = ResultWriter(output_dir=str(tmp_path), header=False)
        values = [0.1, 1.0 / 3.0, np.pi, -2.8284271247461903, 1.0000000000000002, 5e-324]
        frame = pd.DataFrame({"band": np.arange(1, len(values) + 1), "E_lo": values})

        path = writer.write_table(frame, "doubles", fmt="json")

        with open(path) as f:
            rows = json.load(f)["rows"]
        assert [row["E_lo"] for row in rows] == values
        assert [row["band"] for row in rows] == list(range(1, len(values) + 1))

    def test_parquet_table(self, writer, bands_frame):
        path = writer.write_table(bands_frame, "butterfly", fmt="parquet")

        pd.testing.assert_frame_equal(pd.read_parquet(path), bands_frame)

    def test_unknown_format(self, writer, bands_frame):
        with pytest.raises(ValueError):
            writer.write_table(bands_frame, "butterfly", fmt="xlsx")

    def test_report_has_sorted_keys_and_numpy_values(self, tmp_path):
        writer = ResultWriter(output_dir=str(tmp_path), header=False)
        report = {
            "zeta": np.float64(0.5),
            "alpha": Fraction(2, 5),
            "count": np.int64(3),
            "passed": np.bool_(True),
            "values": np.array([1.0, 2.0]),
        }

        path = writer.write_report(report, "report")

        with open(path) as f:
            text = f.read()
        payload = json.loads(text)
        assert list(payload) == sorted(payload)
        assert payload["alpha"] == "2/5"
        assert payload["count"] == 3
        assert payload["passed"] is True
        assert payload["values"] == [1.0, 2.0]
        assert text.endswith("\n")

    def test_explicit_path_is_respected(self, writer, tmp_path, bands_frame):
        target = tmp_path / "elsewhere" / "bands.csv"

        path = writer.write_table(bands_frame, target)

        assert path == str(target)
        assert target.exists()

    def test_error_file(self, writer):
        path = writer.write_error(EdgeSingularity("E=1 sits at a band edge"), "density")

        with open(path) as f:
            payload = json.load(f)

        assert payload == {"command": "density", "error": "EdgeSingularity",
                           "message": "E=1 sits at a band edge"}
