"""Maximally skewed 1-stable law G(x;0) and related samplers.

G(x;0) is the alpha=1 stable law with characteristic function
exp(-pi*|theta|/2 + i*theta*log|theta|); the moments of exp(X) are k^k.
Sampling follows the Chambers-Mallows-Stuck alpha=1 transform with the
skew sign and scale/location constants fixed empirically against the
k^k moment identity (stable-law sign conventions differ between
references, so the moment check, not a convention, is authoritative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HALF_PI = math.pi / 2

# G(x;0) in the four-parameter convention used throughout this package:
# cf = exp(gamma*(-|th| - i*th*beta*(2/pi)*log|th|) + i*delta*th)
G0_ALPHA = 1.0
G0_BETA = -1.0
G0_GAMMA = HALF_PI
G0_DELTA = 0.0


@dataclass(frozen=True)
class StableParams:
    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 2.0:
            raise ValueError("alpha must be in (0, 2]")
        if not -1.0 <= self.beta <= 1.0:
            raise ValueError("beta must be in [-1, 1]")
        if not self.gamma > 0.0:
            raise ValueError("gamma must be positive")


G0_PARAMS = StableParams(G0_ALPHA, G0_BETA, G0_GAMMA, G0_DELTA)


@dataclass(frozen=True)
class UniformExpPair:
    """One (uniform on (-pi/2, pi/2), standard exponential) input pair."""

    u: float
    w: float

    def __post_init__(self):
        if not -HALF_PI < self.u < HALF_PI:
            raise ValueError("u must lie strictly inside (-pi/2, pi/2)")
        if not self.w > 0.0:
            raise ValueError("w must be positive")


def cms_transform(pair: UniformExpPair, params: StableParams) -> float:
    """Chambers-Mallows-Stuck transform for the alpha=1 stable family.

    Returns one realization of the law with the given parameters.  The
    unit-scale transform is
        x = (2/pi) * [(pi/2 + beta*u) tan u
                      - beta*log((pi/2) w cos u / (pi/2 + beta*u))],
    and for scale gamma the alpha=1 scaling law drifts the location by
    -beta*(2/pi)*gamma*log(gamma), which is compensated here.
    """
    if params.alpha != 1.0:
        raise ValueError("cms_transform handles alpha=1 only")
    u, w, beta = pair.u, pair.w, params.beta
    bu = HALF_PI + beta * u
    x = (2.0 / math.pi) * (bu * math.tan(u) - beta * math.log(HALF_PI * w * math.cos(u) / bu))
    gamma = params.gamma
    return gamma * x + params.delta + beta * (2.0 / math.pi) * gamma * math.log(gamma)


def g0_from_uniform_exp(u: float, w: float) -> float:
    """cms_transform specialized to G(x;0); the sketch's hot formula."""
    return (HALF_PI - u) * math.tan(u) + math.log(w * math.cos(u) / (HALF_PI - u))


def _open_unit(words: np.ndarray) -> np.ndarray:
    return (words.astype(np.float64) + 0.5) * 2.0**-64


def _draw_uniform_exp(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """n pairs (u, w) with endpoint words rejected and redrawn."""
    u01 = _open_unit(rng.integers(0, 2**64, size=n, dtype=np.uint64))
    w01 = _open_unit(rng.integers(0, 2**64, size=n, dtype=np.uint64))
    bad = ~((u01 > 0.0) & (u01 < 1.0) & (w01 > 0.0) & (w01 < 1.0))
    while np.any(bad):
        m = int(bad.sum())
        u01[bad] = _open_unit(rng.integers(0, 2**64, size=m, dtype=np.uint64))
        w01[bad] = _open_unit(rng.integers(0, 2**64, size=m, dtype=np.uint64))
        bad = ~((u01 > 0.0) & (u01 < 1.0) & (w01 > 0.0) & (w01 < 1.0))
    return np.pi * (u01 - 0.5), -np.log(w01)


def sample_g0(rng: np.random.Generator, size: int | None = None):
    """Sample from G(x;0) using an explicit generator state.

    Identical generator state gives identical output.  For reproducible
    Monte Carlo across worker counts pass a counter-based generator,
    e.g. np.random.Generator(np.random.Philox(key=(seed, stream))).
    """
    n = 1 if size is None else int(size)
    u, w = _draw_uniform_exp(rng, n)
    y = (HALF_PI - u) * np.tan(u) + np.log(w * np.cos(u) / (HALF_PI - u))
    return float(y[0]) if size is None else y


def char_fn(theta: float) -> complex:
    """Characteristic function of G(x;0): exp(-pi|th|/2 + i th log|th|).

    The th*log|th| singularity at 0 is removable; char_fn(0) == 1.
    """
    if theta == 0.0:
        return complex(1.0, 0.0)
    a = abs(theta)
    return complex(math.exp(-HALF_PI * a)) * complex(
        math.cos(theta * math.log(a)), math.sin(theta * math.log(a))
    )


def sample_positive_stable(alpha: float, rng: np.random.Generator, size: int | None = None):
    """Positive strictly stable Z_a, Laplace transform exp(-lambda^alpha).

    Kanter's representation: Z = (a(U)/W)^((1-alpha)/alpha) with U
    uniform on (0, pi) and W standard exponential; evaluated in log
    space because the a(U) factors overflow as alpha -> 1.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    n = 1 if size is None else int(size)
    u, w = _draw_uniform_exp(rng, n)
    u = u + HALF_PI  # uniform on (0, pi)
    log_a = (
        np.log(np.sin((1.0 - alpha) * u))
        + (alpha / (1.0 - alpha)) * np.log(np.sin(alpha * u))
        - (1.0 / (1.0 - alpha)) * np.log(np.sin(u))
    )
    z = np.exp(((1.0 - alpha) / alpha) * (log_a - np.log(w)))
    return float(z[0]) if size is None else z


def y_alpha_transform(alpha: float, z):
    """Map a positive stable Z_a sample into the variable converging to G(x;0).

    y = (1 - z)/(1 - alpha) + log(1 - alpha), valid for alpha in (0, 1).
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    return (1.0 - z) / (1.0 - alpha) + math.log(1.0 - alpha)


def y_alpha_mgf(alpha: float, theta: float) -> float:
    """Moment generating function of the pre-limit variable Y_alpha.

    E exp(theta*Y_alpha) = (1-a)^theta * exp(-(theta/(1-a))^a + theta/(1-a));
    converges to theta^theta as alpha -> 1.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    r = theta / (1.0 - alpha)
    return (1.0 - alpha) ** theta * math.exp(-(r**alpha) + r)
