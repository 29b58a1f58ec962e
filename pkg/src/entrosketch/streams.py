"""Stream file parsing and synthetic stream generators.

File format: one record per line, "item<delim>quantity"; the quantity
field is optional and defaults to +1 (plain item lists).  Blank lines
and lines starting with '#' are skipped.
"""

from __future__ import annotations

import numpy as np


class StreamParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def iter_stream_lines(lines, delimiter: str = ","):
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        item, sep, qty = line.rpartition(delimiter)
        if not sep:
            item, qty = line, "1"
        if not item:
            # a line with no delimiter lands entirely in qty
            item, qty = qty, "1"
        try:
            delta = float(qty)
        except ValueError:
            raise StreamParseError(lineno, f"bad quantity {qty!r}") from None
        if not np.isfinite(delta):
            raise StreamParseError(lineno, f"non-finite quantity {qty!r}")
        yield item, delta


def iter_stream_file(path, delimiter: str = ","):
    with open(path, "r", encoding="utf-8") as fp:
        yield from iter_stream_lines(fp, delimiter)


def uniform_stream(n_items: int, n_updates: int, rng: np.random.Generator):
    """n_updates unit-quantity updates drawn uniformly over n_items types."""
    draws = rng.integers(0, n_items, size=n_updates)
    for j in draws:
        yield str(int(j)), 1.0


def zipf_probabilities(n_items: int, s: float) -> np.ndarray:
    ranks = np.arange(1, n_items + 1, dtype=np.float64)
    p = ranks**-s
    return p / p.sum()


def zipf_counts(n_items: int, s: float, n_updates: int, rng: np.random.Generator) -> np.ndarray:
    """Multinomial item totals of a Zipf(s) stream of n_updates updates."""
    return rng.multinomial(n_updates, zipf_probabilities(n_items, s)).astype(np.float64)


def counts_to_stream(counts):
    """Weighted one-update-per-item stream with the given totals."""
    for j, c in enumerate(counts):
        if c:
            yield str(j), float(c)
