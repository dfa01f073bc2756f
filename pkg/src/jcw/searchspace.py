"""Architecture search space, genome encoding, and genetic variation operators.

A candidate architecture is a pair of per-layer vectors: channel counts
(structured pruning) and weight densities (how many weights survive inside the
remaining channels; density 1.0 means fully dense). Candidates are mapped to a
normalized feature vector in [0, 1]^(2L) on which simulated binary crossover
(SBX) and polynomial mutation (PLM) operate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Normalized genome: (C[0]/c_max[0], ..., C[L-1]/c_max[L-1], S[0], ..., S[L-1]).
FeatureVector = np.ndarray


def _round_half_away(x: np.ndarray) -> np.ndarray:
    """Round to nearest integer with ties going away from zero."""
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


@dataclass(frozen=True)
class SearchSpace:
    """Per-layer bounds for channel counts and weight densities.

    ``c_step`` and ``s_step`` optionally restrict the ranges to a coarser
    grid anchored at the lower bound (for example channel counts limited to
    multiples of 4). The defaults leave channels at integer resolution and
    densities continuous.
    """

    c_max: tuple[int, ...]
    c_min: tuple[int, ...] = ()
    s_min: float = 0.1
    s_max: float = 1.0
    c_step: int = 1
    s_step: float | None = None

    def __post_init__(self):
        if len(self.c_max) < 1:
            raise ValueError("c_max: need at least one layer")
        if any(int(c) != c or c < 1 for c in self.c_max):
            raise ValueError(f"c_max: entries must be positive integers, got {self.c_max}")
        object.__setattr__(self, "c_max", tuple(int(c) for c in self.c_max))
        if not self.c_min:
            floor = tuple(max(1, math.ceil(0.1 * c)) for c in self.c_max)
            object.__setattr__(self, "c_min", floor)
        else:
            object.__setattr__(self, "c_min", tuple(int(c) for c in self.c_min))
        if len(self.c_min) != len(self.c_max):
            raise ValueError(
                f"c_min: expected {len(self.c_max)} entries, got {len(self.c_min)}"
            )
        for lo, hi in zip(self.c_min, self.c_max):
            if not 1 <= lo <= hi:
                raise ValueError(f"c_min: need 1 <= c_min <= c_max per layer, got {lo} > {hi}")
        if not 0.0 < self.s_min <= self.s_max <= 1.0:
            raise ValueError(
                f"s_min/s_max: need 0 < s_min <= s_max <= 1, got ({self.s_min}, {self.s_max})"
            )
        if self.c_step < 1:
            raise ValueError(f"c_step: must be >= 1, got {self.c_step}")
        if self.s_step is not None and self.s_step <= 0:
            raise ValueError(f"s_step: must be positive, got {self.s_step}")

    @property
    def layer_count(self) -> int:
        return len(self.c_max)

    def channel_values(self, layer: int) -> np.ndarray:
        """All channel counts layer ``layer`` may take, ascending."""
        return np.arange(self.c_min[layer], self.c_max[layer] + 1, self.c_step)

    def density_values(self) -> np.ndarray | None:
        """The density grid, or None when densities are continuous."""
        if self.s_step is None:
            return None
        levels = int(math.floor((self.s_max - self.s_min) / self.s_step + 1e-9))
        return self.s_min + self.s_step * np.arange(levels + 1)


@dataclass(frozen=True)
class PruningConfig:
    """One candidate: per-layer channel counts and per-layer weight densities."""

    channels: tuple[int, ...]
    densities: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "channels", tuple(int(c) for c in self.channels))
        object.__setattr__(self, "densities", tuple(float(s) for s in self.densities))
        if len(self.channels) != len(self.densities):
            raise ValueError(
                f"channels/densities length mismatch: {len(self.channels)} vs {len(self.densities)}"
            )


@dataclass(frozen=True)
class GeneticParams:
    """Distribution indices and mutation probability for SBX + PLM."""

    mu_c: float = 0.5
    mu_m: float = 15.0
    mutation_prob: float = 0.1

    def __post_init__(self):
        if self.mu_c < 0 or self.mu_m < 0:
            raise ValueError("mu_c/mu_m: distribution indices must be >= 0")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError(f"mutation_prob: must be in [0, 1], got {self.mutation_prob}")


def validate_config(config: PruningConfig, space: SearchSpace) -> None:
    """Raise ValueError if ``config`` violates the bounds of ``space``."""
    if len(config.channels) != space.layer_count:
        raise ValueError(
            f"config has {len(config.channels)} layers, space has {space.layer_count}"
        )
    for l, (c, s) in enumerate(zip(config.channels, config.densities)):
        if not space.c_min[l] <= c <= space.c_max[l]:
            raise ValueError(
                f"layer {l}: channels {c} outside [{space.c_min[l]}, {space.c_max[l]}]"
            )
        if not space.s_min <= s <= space.s_max:
            raise ValueError(
                f"layer {l}: density {s} outside [{space.s_min}, {space.s_max}]"
            )


def encode(config: PruningConfig, space: SearchSpace) -> FeatureVector:
    """Map a config to its normalized genome (channel fractions, densities)."""
    validate_config(config, space)
    c = np.asarray(config.channels, dtype=float) / np.asarray(space.c_max, dtype=float)
    return np.concatenate([c, np.asarray(config.densities, dtype=float)])


def decode(feature: FeatureVector, space: SearchSpace) -> PruningConfig:
    """Map a genome back to a valid config.

    Channel fractions are scaled by c_max, rounded to the nearest value on the
    channel grid and clamped into range; densities are clamped (and snapped to
    the density grid when one is configured). Inverse of :func:`encode` for
    every config the space can produce.
    """
    feature = np.asarray(feature, dtype=float)
    L = space.layer_count
    if feature.shape != (2 * L,):
        raise ValueError(f"feature: expected shape ({2 * L},), got {feature.shape}")

    raw = feature[:L] * np.asarray(space.c_max, dtype=float)
    lo = np.asarray(space.c_min, dtype=float)
    steps = _round_half_away((raw - lo) / space.c_step)
    max_steps = (np.asarray(space.c_max) - np.asarray(space.c_min)) // space.c_step
    steps = np.clip(steps, 0, max_steps)
    channels = tuple(int(v) for v in (np.asarray(space.c_min) + steps.astype(int) * space.c_step))

    dens = np.clip(feature[L:], space.s_min, space.s_max)
    if space.s_step is not None:
        levels = int(math.floor((space.s_max - space.s_min) / space.s_step + 1e-9))
        k = np.clip(_round_half_away((dens - space.s_min) / space.s_step), 0, levels)
        dens = space.s_min + k * space.s_step
    return PruningConfig(channels=channels, densities=tuple(float(s) for s in dens))


def sbx_crossover(
    a: FeatureVector,
    b: FeatureVector,
    params: GeneticParams,
    rng: np.random.Generator,
) -> tuple[FeatureVector, FeatureVector]:
    """Simulated binary crossover with a fresh spread draw per dimension.

    Children straddle the parents symmetrically: per dimension the pre-clip
    child sum equals the parent sum, and a draw of exactly 0.5 reproduces the
    parents unchanged. Coordinates where the parents agree pass through
    untouched. Outputs are NOT clipped; the variation pipeline clips.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"parent length mismatch: {a.shape} vs {b.shape}")
    p = rng.random(a.shape[0])
    exponent = 1.0 / (params.mu_c + 1.0)
    u = np.where(p <= 0.5, (2.0 * p) ** exponent, (1.0 / (2.0 * (1.0 - p))) ** exponent)
    c1 = 0.5 * ((1.0 + u) * a + (1.0 - u) * b)
    c2 = 0.5 * ((1.0 - u) * a + (1.0 + u) * b)
    same = a == b
    return np.where(same, a, c1), np.where(same, b, c2)


def plm_mutate(
    x: FeatureVector,
    params: GeneticParams,
    lower: FeatureVector,
    upper: FeatureVector,
    rng: np.random.Generator,
) -> FeatureVector:
    """Polynomial mutation, each gene mutating independently.

    Two uniforms are drawn per dimension (gate, then shape) regardless of
    whether the gate fires, so the stream layout is input-independent. The
    delta form keeps mutated genes inside [lower, upper]; a final clip guards
    against last-ulp rounding only.
    """
    x = np.asarray(x, dtype=float)
    lower = np.broadcast_to(np.asarray(lower, dtype=float), x.shape)
    upper = np.broadcast_to(np.asarray(upper, dtype=float), x.shape)
    gate = rng.random(x.shape[0])
    r = rng.random(x.shape[0])

    span = upper - lower
    safe = np.where(span > 0, span, 1.0)
    d1 = (x - lower) / safe
    d2 = (upper - x) / safe
    n1 = params.mu_m + 1.0
    low = (2.0 * r + (1.0 - 2.0 * r) * (1.0 - d1) ** n1) ** (1.0 / n1) - 1.0
    high = 1.0 - (2.0 * (1.0 - r) + 2.0 * (r - 0.5) * (1.0 - d2) ** n1) ** (1.0 / n1)
    delta = np.where(r <= 0.5, low, high)

    mutate = (gate < params.mutation_prob) & (span > 0)
    out = np.where(mutate, x + delta * span, x)
    return np.clip(out, lower, upper)


def crossover_mutation(
    population: list[PruningConfig],
    params: GeneticParams,
    space: SearchSpace,
    rng: np.random.Generator,
) -> list[PruningConfig]:
    """Produce len(population) offspring: encode, SBX, clip, PLM, clip, decode.

    Parent pairs are drawn uniformly with replacement (two independent draws,
    which may coincide) until enough children exist; the child list is then
    trimmed to the population size.
    """
    if not population:
        raise ValueError("population must be non-empty")
    n = len(population)
    feats = [encode(c, space) for c in population]
    dim = feats[0].shape[0]

    children: list[np.ndarray] = []
    while len(children) < n:
        i = int(rng.integers(n))
        j = int(rng.integers(n))
        c1, c2 = sbx_crossover(feats[i], feats[j], params, rng)
        children.append(c1)
        children.append(c2)
    stacked = np.clip(np.stack(children[:n]), 0.0, 1.0)

    lower = np.zeros(dim)
    upper = np.ones(dim)
    mutated = [plm_mutate(child, params, lower, upper, rng) for child in stacked]
    return [decode(np.clip(m, 0.0, 1.0), space) for m in mutated]
