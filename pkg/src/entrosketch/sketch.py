"""Linear entropy sketch: k stable projections plus the running total.

The sketch stores sum_t R_l(i_t)*d_t for l = 0..k-1 together with
sum_t d_t.  It is linear in the stream, so merge is elementwise
addition and deleting an element (negative delta) cancels the matching
insert.  Callers are responsible for the relaxed strict-turnstile
contract (non-negative final per-item counts); the sketch cannot check
it.

Precision contract: each increment R_l(i)*delta is rounded to the
nearest multiple of 2^-16 and accumulated in a 64-bit integer.
Integer addition is associative and exactly invertible, so
insert-then-delete cancellation, merge vs. single-pass equality, and
order independence all hold bitwise (float summation guarantees none
of these).  Accumulated values must stay below 2^37 in magnitude so they remain
exactly representable as doubles; update raises if a projection
leaves that range.

Binary format (little endian): magic b"ESKV", version u16, k u64,
zeta f64, master_seed u64, total f64, then k f64 projections.  All
stored values are exact multiples of 2^-16, so the round trip is
bit-exact.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass

import numpy as np

from ._backend import accumulate
from .hashing import MASK64, item_key

MAGIC = b"ESKV"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sHQdQd")

QUANTUM_BITS = 16
QUANTUM = 2.0**-QUANTUM_BITS
_SCALE = 2.0**QUANTUM_BITS
_LIMIT = 1 << 53  # beyond this, int64 counts are no longer exact doubles


@dataclass(frozen=True)
class SketchConfig:
    k: int
    zeta: float = 1.0
    master_seed: int = 0

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError("k must be a positive integer")
        if not self.zeta > 0.0:
            raise ValueError("zeta must be positive")
        if not 0 <= self.master_seed <= MASK64:
            raise ValueError("master_seed must fit in 64 bits")


@dataclass(frozen=True)
class StreamElement:
    item: bytes | str
    delta: float = 1.0


class EntropySketch:
    """O(k) one-pass summary of a turnstile stream.  Single-writer."""

    def __init__(self, config: SketchConfig):
        self.config = config
        self._scaled = np.zeros(config.k, dtype=np.int64)
        self._scaled_total = 0

    @property
    def k(self) -> int:
        return self.config.k

    @property
    def projections(self) -> np.ndarray:
        return self._scaled * QUANTUM

    @property
    def total(self) -> float:
        return self._scaled_total * QUANTUM

    def update(self, item: bytes | str, delta: float = 1.0) -> "EntropySketch":
        if not np.isfinite(delta):
            raise ValueError("delta must be finite")
        key = item_key(item, self.config.master_seed)
        accumulate(self._scaled, key, delta)
        self._scaled_total += int(np.rint(delta * _SCALE))
        if int(np.abs(self._scaled).max()) >= _LIMIT or abs(self._scaled_total) >= _LIMIT:
            raise OverflowError("projection accumulator left the exact-double range")
        return self

    def update_element(self, element: StreamElement) -> "EntropySketch":
        return self.update(element.item, element.delta)

    def normalized(self) -> np.ndarray:
        """y_l = projections[l]/total, the estimator's input."""
        if not self.total > 0.0:
            raise ValueError("total must be positive to normalize")
        return self.projections / self.total

    def merge(self, other: "EntropySketch") -> "EntropySketch":
        if self.config != other.config:
            raise ValueError("cannot merge sketches with different configs")
        out = EntropySketch(self.config)
        np.add(self._scaled, other._scaled, out=out._scaled)
        out._scaled_total = self._scaled_total + other._scaled_total
        return out

    def copy(self) -> "EntropySketch":
        out = EntropySketch(self.config)
        out._scaled[:] = self._scaled
        out._scaled_total = self._scaled_total
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, EntropySketch):
            return NotImplemented
        return (
            self.config == other.config
            and self._scaled_total == other._scaled_total
            and np.array_equal(self._scaled, other._scaled)
        )

    def __repr__(self) -> str:
        return (
            f"EntropySketch(k={self.config.k}, zeta={self.config.zeta}, "
            f"seed={self.config.master_seed}, total={self.total})"
        )

    # serialization

    def to_bytes(self) -> bytes:
        header = _HEADER.pack(
            MAGIC,
            FORMAT_VERSION,
            self.config.k,
            self.config.zeta,
            self.config.master_seed,
            self.total,
        )
        return header + self.projections.astype("<f8").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "EntropySketch":
        if len(data) < _HEADER.size:
            raise ValueError("truncated sketch: header incomplete")
        magic, version, k, zeta, seed, total = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported format version {version}")
        expected = _HEADER.size + 8 * k
        if len(data) != expected:
            raise ValueError(f"sketch length {len(data)} != expected {expected}")
        sketch = cls(SketchConfig(k=k, zeta=zeta, master_seed=seed))
        sketch._set_projections(
            np.frombuffer(data, dtype="<f8", offset=_HEADER.size), total
        )
        return sketch

    def to_json(self) -> str:
        return json.dumps(
            {
                "format_version": FORMAT_VERSION,
                "k": self.config.k,
                "zeta": self.config.zeta,
                "master_seed": self.config.master_seed,
                "total": self.total,
                "projections": self.projections.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "EntropySketch":
        obj = json.loads(text)
        if obj.get("format_version") != FORMAT_VERSION:
            raise ValueError("unsupported format version")
        sketch = cls(
            SketchConfig(
                k=int(obj["k"]),
                zeta=float(obj["zeta"]),
                master_seed=int(obj["master_seed"]),
            )
        )
        proj = np.asarray(obj["projections"], dtype=np.float64)
        if proj.shape != (sketch.config.k,):
            raise ValueError("projections length does not match k")
        sketch._set_projections(proj, float(obj["total"]))
        return sketch

    def _set_projections(self, projections: np.ndarray, total: float) -> None:
        # stored values are exact multiples of the quantum
        self._scaled = np.rint(projections * _SCALE).astype(np.int64)
        self._scaled_total = int(np.rint(total * _SCALE))


def new_sketch(k: int, zeta: float = 1.0, master_seed: int = 0) -> EntropySketch:
    return EntropySketch(SketchConfig(k=k, zeta=zeta, master_seed=master_seed))


def sketch_stream(elements, k: int, zeta: float = 1.0, master_seed: int = 0) -> EntropySketch:
    """One-pass sketch of an iterable of (item, delta) pairs."""
    sketch = new_sketch(k, zeta, master_seed)
    for item, delta in elements:
        sketch.update(item, delta)
    return sketch
