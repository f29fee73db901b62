import pytest

from amolab.utils.batching import ChunkedRunner


def square_all(chunk):
    return [value * value for value in chunk]


def fail_on_seven(chunk):
    if 7 in chunk:
        raise RuntimeError("seven")
    return list(chunk)


class TestChunkedRunner:

    def test_calculate_chunk_ranges(self):
        runner = ChunkedRunner(square_all)

        assert runner._calculate_chunk_ranges(10, 4) == [(0, 4), (4, 8), (8, 10)]
        assert runner._calculate_chunk_ranges(0, 4) == []

    def test_merge_keeps_item_order(self):
        items = list(range(23))

        serial = ChunkedRunner(square_all, threads=1, chunk_size=5).run(items)
        pooled = ChunkedRunner(square_all, threads=4, chunk_size=5).run(items)

        assert serial == [value * value for value in items]
        assert pooled == serial

    def test_failed_chunk_is_padded_with_none(self):
        result = ChunkedRunner(fail_on_seven, chunk_size=4).run(list(range(10)))

        assert result[:4] == [0, 1, 2, 3]
        assert result[4:8] == [None] * 4
        assert result[8:] == [8, 9]

    def test_reraise_propagates_worker_errors(self):
        runner = ChunkedRunner(fail_on_seven, chunk_size=4, reraise=True)

        with pytest.raises(RuntimeError, match="seven"):
            runner.run(list(range(10)))

    def test_invalid_configuration(self):
        with pytest.raises(ValueError):
            ChunkedRunner(square_all, threads=0)
        with pytest.raises(ValueError):
            ChunkedRunner(square_all, chunk_size=0)
