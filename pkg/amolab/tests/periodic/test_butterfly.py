from unittest.mock import patch

import pandas as pd
import pytest

from amolab.periodic.bands import bands
from amolab.periodic.butterfly import BUTTERFLY_COLUMNS, PairFailure, _butterfly_chunk, butterfly, coprime_pairs
from amolab.utils.errors import BandResolutionFailure


def bands_failing_for_quarters(lam, p_over_q, theta):
    if p_over_q[1] == 4:
        raise BandResolutionFailure(f"no scan for {p_over_q}")
    return bands(lam, p_over_q, theta)


class TestCoprimePairs:

    def test_pairs_up_to_four(self):
        assert coprime_pairs(4) == [(0, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4)]


class TestButterfly:

    def test_one_row_per_band(self):
        frame = butterfly(0.5, 5)

        assert list(frame.columns) == BUTTERFLY_COLUMNS
        # q bands for each coprime p/q: 1 + 2 + 2·3 + 2·4 + 4·5
        assert len(frame) == 37

    def test_rows_sorted_by_q_p_band(self):
        frame = butterfly(0.5, 5)

        ordered = frame.sort_values(["q", "p", "band"]).reset_index(drop=True)
        pd.testing.assert_frame_equal(frame, ordered)
        assert (frame["E_lo"] <= frame["E_hi"]).all()

    def test_parallel_run_matches_serial(self):
        serial = butterfly(0.5, 6, threads=1, chunk_size=3)
        pooled = butterfly(0.5, 6, threads=2, chunk_size=3)

        pd.testing.assert_frame_equal(serial, pooled)

    def test_rejects_empty_range(self):
        with pytest.raises(ValueError):
            butterfly(0.5, 0)

    def test_supercritical_coupling_keeps_every_row(self):
        frame = butterfly(2.0, 40, chunk_size=16)

        assert len(frame) == 13111
        assert set(frame["q"]) == set(range(1, 41))


class TestButterflyFailures:

    def test_failed_pair_does_not_drop_its_chunk(self):
        with patch("amolab.periodic.butterfly.bands", side_effect=bands_failing_for_quarters):
            results = _butterfly_chunk([(1, 3), (1, 4), (2, 5)], lam=0.5, theta=0.0)

        assert len(results[0]) == 3
        assert isinstance(results[1], PairFailure)
        assert (results[1].p, results[1].q) == (1, 4)
        assert len(results[2]) == 5

    def test_any_failed_pair_fails_the_table(self):
        with patch("amolab.periodic.butterfly.bands", side_effect=bands_failing_for_quarters):
            with pytest.raises(BandResolutionFailure, match="2 of 12 frequencies: 1/4, 3/4"):
                butterfly(0.5, 6, chunk_size=16)
