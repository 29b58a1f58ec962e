"""Deterministic item -> projection-variate mapping.

Every distinct item gets k stationary draws from the skewed stable law
G(x;0) by feeding a counter-based 64-bit hash stream (splitmix64 over a
keyed index) into the stable sampler.  The mapping is a pure function of
(item bytes, row, master seed), so sketches built anywhere from the same
seed agree and can be merged.  No per-item state is ever stored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .stable import g0_from_uniform_exp

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3

_INV_2_64 = 2.0 ** -64


def mix64(x: int) -> int:
    """splitmix64 finalizer: a documented 64-bit bijective mixer."""
    x &= MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & MASK64
    x ^= x >> 31
    return x


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & MASK64
    return h


def item_key(item: bytes | str, master_seed: int) -> int:
    """Combine item bytes and master seed into the per-item hash key."""
    if isinstance(item, str):
        item = item.encode("utf-8")
    return mix64(fnv1a64(item) ^ mix64((master_seed ^ GOLDEN) & MASK64))


def hash_word(key: int, n: int) -> int:
    """n-th 64-bit word of the counter-based stream keyed by ``key``."""
    return mix64((key + (n & MASK64) * GOLDEN) & MASK64)


@dataclass(frozen=True)
class VariatePlan:
    """Width and seed that fix the whole item -> variates mapping."""

    master_seed: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0 <= self.master_seed <= MASK64:
            raise ValueError("master_seed must fit in 64 bits")


def uniform_exp_words(key: int, row: int, k: int, attempt: int = 0) -> tuple[int, int]:
    """The two hash words feeding row ``row`` (attempt counts redraws)."""
    idx = attempt * k + row
    return hash_word(key, 2 * idx), hash_word(key, 2 * idx + 1)


def item_variate(item: bytes | str, row: int, plan: VariatePlan) -> float:
    """One G(x;0) realization for (item, row); pure and deterministic."""
    if not 0 <= row < plan.k:
        raise IndexError(f"row {row} out of range [0, {plan.k})")
    key = item_key(item, plan.master_seed)
    return variate_from_key(key, row, plan.k)


def variate_from_key(key: int, row: int, k: int) -> float:
    attempt = 0
    while True:
        wu, ww = uniform_exp_words(key, row, k, attempt)
        u01 = (wu + 0.5) * _INV_2_64
        w01 = (ww + 0.5) * _INV_2_64
        # endpoints are excluded by construction but float rounding can
        # still land on 0.0/1.0; redraw from the next counter block
        if 0.0 < u01 < 1.0 and 0.0 < w01 < 1.0:
            u = np.pi * (u01 - 0.5)
            w = -np.log(w01)
            return g0_from_uniform_exp(u, w)
        attempt += 1


# vectorized (numpy) kernel: the pure-python backend for the sketch


def _mix64_np(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    x ^= x >> np.uint64(30)
    x *= np.uint64(0xBF58476D1CE4E5B9)
    x ^= x >> np.uint64(27)
    x *= np.uint64(0x94D049BB133111EB)
    x ^= x >> np.uint64(31)
    return x


def variates_np(key: int, k: int) -> np.ndarray:
    """All k row variates for one item key, vectorized over rows."""
    rows = np.arange(k, dtype=np.uint64)
    out = np.empty(k, dtype=np.float64)
    pending = rows
    attempt = np.uint64(0)
    key64 = np.uint64(key)
    golden = np.uint64(GOLDEN)
    kk = np.uint64(k)
    while pending.size:
        idx = attempt * kk + pending
        wu = _mix64_np(key64 + (np.uint64(2) * idx) * golden)
        ww = _mix64_np(key64 + (np.uint64(2) * idx + np.uint64(1)) * golden)
        u01 = (wu.astype(np.float64) + 0.5) * _INV_2_64
        w01 = (ww.astype(np.float64) + 0.5) * _INV_2_64
        ok = (u01 > 0.0) & (u01 < 1.0) & (w01 > 0.0) & (w01 < 1.0)
        done = pending[ok]
        u = np.pi * (u01[ok] - 0.5)
        w = -np.log(w01[ok])
        out[done] = (np.pi / 2 - u) * np.tan(u) + np.log(
            w * np.cos(u) / (np.pi / 2 - u)
        )
        pending = pending[~ok]
        attempt += np.uint64(1)
    return out


def accumulate_np(scaled: np.ndarray, key: int, delta: float) -> None:
    """Fixed-point counterpart of the compiled kernel (2^16 quantum)."""
    v = variates_np(key, scaled.shape[0]) * delta * 65536.0
    scaled += np.rint(v).astype(np.int64)
