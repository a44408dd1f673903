import logging
import os
from functools import lru_cache
from pathlib import Path

import mpmath
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from configs import get_settings
from errors import ParseError

logger = logging.getLogger(__name__)

BUNDLED_ZEROS = Path(__file__).parent / "fixtures" / "zeros_first100000.txt"


class ZeroDataset(BaseModel):
    """
    Heights t_k of the nontrivial zeros ½ + it_k, strictly increasing.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    heights: np.ndarray = Field(..., description="Positive, strictly increasing heights.")
    source: str = Field("memory", description="Where the heights came from.")

    @field_validator("heights", mode="before")
    @classmethod
    def _check_heights(cls, heights):
        array = np.array(heights, dtype=float, copy=True).ravel()
        if array.size and (array[0] <= 0 or np.any(np.diff(array) <= 0)):
            raise ValueError("heights must be positive and strictly increasing")
        array.flags.writeable = False
        return array

    @property
    def count(self) -> int:
        return int(self.heights.size)


def parse_zero_heights(text: str, source: str = "memory") -> ZeroDataset:
    """
    One positive decimal height per line; blank lines and '#' comments skipped.
    """
    heights = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            height = float(line)
        except ValueError:
            raise ParseError(f"not a number: {line!r}", line=line_number) from None
        if not np.isfinite(height) or height <= 0:
            raise ParseError(f"height must be positive and finite, got {line}", line=line_number)
        if heights and height <= heights[-1]:
            raise ParseError(f"height {line} does not exceed the previous {heights[-1]!r}", line=line_number)
        heights.append(height)
    return ZeroDataset(heights=heights, source=source)


def load_zero_dataset(path) -> ZeroDataset:
    path = Path(path)
    dataset = parse_zero_heights(path.read_text(), source=str(path))
    logger.debug("loaded %d zero heights from %s", dataset.count, path)
    return dataset


def update_data(count: int, out=None) -> Path:
    """
    Computes the first `count` zero heights with mpmath and writes them to `out`
    (the configured dataset path by default).
    """
    out = Path(out or get_settings().zeros_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# first {count} zero heights of zeta on the critical line (mpmath.zetazero)"]
    with mpmath.workdps(25):
        for k in range(1, count + 1):
            lines.append(mpmath.nstr(mpmath.zetazero(k).imag, 22))
            if k % 1000 == 0:
                logger.info("computed %d of %d zero heights", k, count)
    out.write_text("\n".join(lines) + "\n")
    get_data.cache_clear()
    return out


@lru_cache
def get_data(path: str | None = None) -> ZeroDataset:
    """
    The zero dataset used by the reconstructions: `path`, else the configured
    dataset, else the bundled first 100000 heights.
    """
    if path is not None:
        return load_zero_dataset(path)
    configured = get_settings().zeros_path
    if os.path.exists(configured):
        return load_zero_dataset(configured)
    logger.info("no zero dataset at %s; using the bundled heights in %s", configured, BUNDLED_ZEROS.name)
    return load_zero_dataset(BUNDLED_ZEROS)
