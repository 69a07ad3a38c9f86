"""Classical energy landscapes over the computational basis.

Energies are in units of the REM energy scale (eps = 1). A configuration is
an N-bit integer; bit ``i`` set means spin ``i`` points up.

Random instances are drawn with numpy's ``PCG64`` bit generator seeded by
the integer seed, and normal deviates come from ``Generator.standard_normal``
(numpy's ziggurat sampler). Both are covered by numpy's stream-compatibility
policy, so a given ``(n_qubits, seed)`` reproduces bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ParameterError, SizeError

MAX_QUBITS = 24

__all__ = [
    "Configuration",
    "Landscape",
    "TwoSpinParams",
    "generate_rem",
    "make_quasi_degenerate",
    "energy",
    "level_at_rank",
    "two_spin_landscape",
    "landscape_from_manifest",
]


@dataclass(frozen=True)
class Configuration:
    bits: int
    n_qubits: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise SizeError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if not 0 <= self.bits < (1 << self.n_qubits):
            raise ParameterError(
                f"bits={self.bits} out of range for {self.n_qubits} qubits"
            )

    def spins(self) -> np.ndarray:
        """Spin values (+1 up, -1 down) ordered by qubit index."""
        b = (self.bits >> np.arange(self.n_qubits)) & 1
        return 2 * b - 1


@dataclass(frozen=True)
class TwoSpinParams:
    delta: float
    barrier: float
    field: float = 1.0

    def __post_init__(self):
        if self.delta < 0:
            raise ParameterError(f"detuning must be >= 0, got {self.delta}")
        if not self.barrier >= self.delta:
            raise ParameterError(
                f"barrier ({self.barrier}) must not lie below detuning ({self.delta})"
            )


@dataclass(frozen=True, eq=False)
class Landscape:
    """Immutable energy table plus its ascending-energy ranking.

    ``rank_of[alpha]`` is the 1-based rank of configuration ``alpha``;
    ``order[r - 1]`` is the configuration at rank ``r``. Ties are broken in
    favour of the lower configuration index.
    """

    n_qubits: int
    energies: np.ndarray
    seed: int | None = None
    variant: str = "rem"
    meta: dict = field(default_factory=dict)
    order: np.ndarray = field(init=False, repr=False)
    rank_of: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        e = np.array(self.energies, dtype=np.float64)
        if e.shape != (1 << self.n_qubits,):
            raise DimensionError(
                f"expected {1 << self.n_qubits} energies, got shape {e.shape}"
            )
        if not np.all(np.isfinite(e)):
            raise ParameterError("energies must be finite")
        order = np.argsort(e, kind="stable")
        rank_of = np.empty_like(order)
        rank_of[order] = np.arange(1, e.size + 1)
        for arr in (e, order, rank_of):
            arr.setflags(write=False)
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "rank_of", rank_of)

    @property
    def dim(self) -> int:
        return self.energies.size

    @property
    def ground_bits(self) -> int:
        return int(self.order[0])

    @property
    def ground_energy(self) -> float:
        return float(self.energies[self.order[0]])

    def ground(self) -> Configuration:
        return Configuration(self.ground_bits, self.n_qubits)

    def rank(self, config: Configuration | int) -> int:
        bits = config.bits if isinstance(config, Configuration) else config
        return int(self.rank_of[bits])

    def manifest(self) -> dict:
        """JSON-ready description from which the landscape can be rebuilt."""
        out = {"n_qubits": self.n_qubits, "seed": self.seed, "variant": self.variant}
        out["k"] = self.meta.get("k")
        out["offset"] = self.meta.get("offset")
        for key in ("delta", "barrier", "field"):
            if key in self.meta:
                out[key] = self.meta[key]
        return out


def generate_rem(n_qubits: int, seed: int) -> Landscape:
    """Gaussian random energy model with 2**n_qubits i.i.d. N(0, 1) levels."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise SizeError(f"n_qubits must lie in [1, {MAX_QUBITS}], got {n_qubits}")
    rng = np.random.Generator(np.random.PCG64(seed))
    energies = rng.standard_normal(1 << n_qubits)
    return Landscape(n_qubits, energies, seed=seed, variant="rem")


def make_quasi_degenerate(landscape: Landscape, k: int, offset: float) -> Landscape:
    """Copy of ``landscape`` with ranks 2..k+1 pinned to ``E_GS + offset``.

    The ground configuration and its energy are left untouched.
    """
    if not 1 <= k < landscape.dim:
        raise SizeError(f"k must lie in [1, {landscape.dim - 1}], got {k}")
    if not offset > 0:
        raise ParameterError(f"offset must be positive, got {offset}")
    e = landscape.energies.copy()
    e[landscape.order[1 : k + 1]] = landscape.ground_energy + offset
    meta = dict(landscape.meta, k=k, offset=offset)
    return Landscape(
        landscape.n_qubits, e, seed=landscape.seed, variant="quasi_degenerate", meta=meta
    )


def energy(landscape: Landscape, config: Configuration) -> float:
    if config.n_qubits != landscape.n_qubits:
        raise DimensionError(
            f"configuration has {config.n_qubits} qubits, landscape {landscape.n_qubits}"
        )
    return float(landscape.energies[config.bits])


def level_at_rank(landscape: Landscape, rank: int) -> Configuration:
    if not 1 <= rank <= landscape.dim:
        raise IndexError(f"rank must lie in [1, {landscape.dim}], got {rank}")
    return Configuration(int(landscape.order[rank - 1]), landscape.n_qubits)


def two_spin_landscape(params: TwoSpinParams) -> Landscape:
    # bits 0 = down-down (global minimum), bits 3 = up-up (local minimum)
    e = np.array([0.0, params.barrier, params.barrier, params.delta])
    meta = {"delta": params.delta, "barrier": params.barrier, "field": params.field}
    return Landscape(2, e, variant="two_spin", meta=meta)


def landscape_from_manifest(manifest: dict) -> Landscape:
    """Rebuild a landscape from :meth:`Landscape.manifest` output."""
    variant = manifest.get("variant", "rem")
    if variant == "two_spin":
        params = TwoSpinParams(
            manifest["delta"], manifest["barrier"], manifest.get("field", 1.0)
        )
        return two_spin_landscape(params)
    base = generate_rem(int(manifest["n_qubits"]), int(manifest["seed"]))
    if variant == "rem":
        return base
    if variant == "quasi_degenerate":
        return make_quasi_degenerate(base, int(manifest["k"]), float(manifest["offset"]))
    raise ParameterError(f"unknown landscape variant {variant!r}")
