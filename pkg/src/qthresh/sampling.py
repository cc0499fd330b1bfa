"""Seeded random generation of unitaries, pure states and density matrices.

Every sampler takes an explicit ``seed`` (anything accepted by
``numpy.random.default_rng``: an integer, a SeedSequence, or a
Generator), and the output is fully determined by its arguments.
``sample(spec, index)`` derives an independent stream per index so batch
generation is order- and partition-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimension, InvalidParameter, InvalidRank
from .states import DensityMatrix, PureState, validate_density

DENSITY_KINDS = ("hilbert_schmidt", "rank_limited", "high_entropy")
ALL_KINDS = ("haar_pure", "haar_unitary") + DENSITY_KINDS


@dataclass(frozen=True)
class SamplerSpec:
    """What to sample and from which stream.

    ``dim`` is the total Hilbert-space dimension (N^2 for bipartite
    density matrices).  ``rank`` applies to ``rank_limited`` only and
    ``mix_toward_identity`` to ``high_entropy`` only.
    """

    kind: str
    dim: int
    rank: int | None = None
    mix_toward_identity: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise InvalidParameter(f"unknown sampler kind {self.kind!r}")
        if self.dim < 2:
            raise InvalidDimension(f"dim must be >= 2, got {self.dim}")
        if self.rank is not None and not (1 <= self.rank <= self.dim):
            raise InvalidRank(f"rank must lie in [1, {self.dim}], got {self.rank}")
        if self.mix_toward_identity is not None and not (
            0.0 <= self.mix_toward_identity <= 1.0
        ):
            raise InvalidParameter(
                f"mix_toward_identity must lie in [0, 1], got {self.mix_toward_identity}"
            )


def _rng(seed):
    return np.random.default_rng(seed)


def _ginibre(rng, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def haar_unitary(n: int, seed=0) -> np.ndarray:
    """Haar-distributed N x N unitary.

    QR of a complex Ginibre matrix with the triangular factor's diagonal
    phase-fixed positive, which makes the Q factor Haar rather than
    merely unitary.
    """
    if n < 1:
        raise InvalidDimension(f"unitary dimension must be >= 1, got {n}")
    rng = _rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, n, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_pure(dim: int, seed=0) -> PureState:
    """Haar-random pure state: a normalized complex standard-normal vector."""
    if dim < 2:
        raise InvalidDimension(f"dim must be >= 2, got {dim}")
    rng = _rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    return PureState(dim=dim, amplitudes=v)


def hs_random_density(dim: int, rank: int | None = None, seed=0) -> DensityMatrix:
    """G G^dagger / Tr(G G^dagger) for a dim x rank complex Ginibre G.

    ``rank = dim`` (the default) gives the Hilbert-Schmidt measure.
    ``dim`` must be a perfect square N^2 so the result is a valid
    bipartite state.
    """
    n = math.isqrt(dim)
    if n * n != dim:
        raise InvalidDimension(
            f"dim must be a perfect square (bipartite N^2), got {dim}"
        )
    if rank is None:
        rank = dim
    if not (1 <= rank <= dim):
        raise InvalidRank(f"rank must lie in [1, {dim}], got {rank}")
    g = _ginibre(_rng(seed), dim, rank)
    m = g @ g.conj().T
    m /= np.trace(m).real
    return validate_density(m, n)


def high_entropy_density(n: int, mix: float, seed=0) -> DensityMatrix:
    """Hilbert-Schmidt sample pushed toward I/N^2 by a convex ``mix``.

    Plain Hilbert-Schmidt sampling rarely reaches the high-entropy
    regime at larger N; mixing toward the identity does.
    """
    if not (0.0 <= mix <= 1.0):
        raise InvalidParameter(f"mix must lie in [0, 1], got {mix}")
    d = n * n
    base = hs_random_density(d, d, seed)
    m = (1.0 - mix) * base.entries + mix * np.eye(d) / d
    return validate_density(m, n)


def sample(spec: SamplerSpec, index: int = 0):
    """Draw the ``index``-th element of the stream defined by ``spec``.

    Each index gets its own child stream of ``spec.seed``, so draws are
    independent and the result does not depend on how a batch is split.
    """
    seed = np.random.SeedSequence(entropy=spec.seed, spawn_key=(index,))
    if spec.kind == "haar_unitary":
        return haar_unitary(spec.dim, seed)
    if spec.kind == "haar_pure":
        return haar_pure(spec.dim, seed)
    if spec.kind == "hilbert_schmidt":
        return hs_random_density(spec.dim, spec.dim, seed)
    if spec.kind == "rank_limited":
        if spec.rank is None:
            raise InvalidRank("rank_limited sampling requires a rank")
        return hs_random_density(spec.dim, spec.rank, seed)
    if spec.kind == "high_entropy":
        n = math.isqrt(spec.dim)
        if n * n != spec.dim:
            raise InvalidDimension(f"dim must be a perfect square, got {spec.dim}")
        mix = spec.mix_toward_identity
        if mix is None:
            raise InvalidParameter("high_entropy sampling requires mix_toward_identity")
        return high_entropy_density(n, mix, seed)
    raise InvalidParameter(f"unknown sampler kind {spec.kind!r}")
