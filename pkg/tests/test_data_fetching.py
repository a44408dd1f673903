import logging

import mpmath
import numpy as np
import pytest
from pydantic import ValidationError

from data_fetching import BUNDLED_ZEROS, ZeroDataset, get_data, load_zero_dataset, parse_zero_heights, update_data
from errors import ParseError


def test_fixture_dataset(zeros30):
    assert zeros30.count == 30
    assert zeros30.heights[0] == pytest.approx(14.134725141734693, rel=1e-15)
    assert zeros30.heights[-1] == pytest.approx(101.317851005731391, rel=1e-15)
    assert np.all(np.diff(zeros30.heights) > 0)


def test_comments_and_blank_lines_are_skipped():
    dataset = parse_zero_heights("# heights\n\n14.13\n  21.02  \n# trailing\n")
    np.testing.assert_array_equal(dataset.heights, [14.13, 21.02])


@pytest.mark.parametrize(
    "text, line",
    [("14.1\n21.0\n20.0\n", 3), ("14.1\nabc\n", 2), ("# c\n-3.0\n", 2), ("14.1\n14.1\n", 2), ("nan\n", 1)],
)
def test_malformed_heights_report_line(text, line):
    with pytest.raises(ParseError) as excinfo:
        parse_zero_heights(text)
    assert excinfo.value.line == line


def test_dataset_model_checks_order():
    with pytest.raises(ValidationError):
        ZeroDataset(heights=[21.0, 14.0])
    assert ZeroDataset(heights=[]).count == 0


def test_heights_are_read_only(zeros30):
    with pytest.raises(ValueError):
        zeros30.heights[0] = 1.0


def test_get_data_falls_back_to_bundled_heights(env, tmp_path, caplog):
    env(ZETAQUANT_ZEROS=tmp_path / "missing.txt")
    with caplog.at_level(logging.INFO, logger="data_fetching"):
        dataset = get_data()
    assert dataset.count == 100_000
    assert dataset.heights[-1] == pytest.approx(74920.827498994, abs=1e-6)
    assert "bundled" in caplog.text


def test_get_data_prefers_configured_file(env, tmp_path):
    path = tmp_path / "zeros.txt"
    path.write_text("14.134725141734693\n21.022039638771555\n")
    env(ZETAQUANT_ZEROS=path)
    assert get_data().count == 2
    assert get_data(str(BUNDLED_ZEROS)).count == 100_000


def test_update_data_writes_mpmath_heights(env, tmp_path):
    env()
    out = update_data(3, tmp_path / "data" / "zeros.txt")
    dataset = load_zero_dataset(out)
    assert dataset.count == 3
    with mpmath.workdps(25):
        expected = [float(mpmath.zetazero(k).imag) for k in range(1, 4)]
    np.testing.assert_allclose(dataset.heights, expected, rtol=1e-15)


@pytest.mark.parametrize("k", [31, 100, 1000])
def test_bundled_heights_match_mpmath(zeros_full, k):
    with mpmath.workdps(20):
        expected = float(mpmath.zetazero(k).imag)
    assert zeros_full.heights[k - 1] == pytest.approx(expected, abs=1e-6)
