"""Experiment orchestration: single-state threshold reports, randomized
theorem verification sweeps, and the Werner epsilon sweep with CSV
emission."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .entropy import (
    densecoding_threshold,
    linear_entropy,
    teleport_threshold_linear,
    teleport_threshold_vn,
    von_neumann_entropy,
)
from .errors import DimensionMismatch, InvalidParameter, TheoremViolation
from .families import WernerParams, critical_epsilons, werner_purity_closed_form, \
    werner_entropy_closed_form, werner_fef_closed_form
from .fef import (
    OptimizerConfig,
    TeleportVerdict,
    fef_certified,
    fef_lower_bound,
    usable_for_teleportation,
)
from .protocols import densecoding_chi_standard
from .sampling import SamplerSpec, sample
from .states import DensityMatrix, load_state, state_to_dict

FEF_MARGIN = 1e-7  # guard above 1/N against float noise faking a violation


class EntropyVerdict(str, Enum):
    ABOVE = "AboveThreshold"
    BELOW = "BelowThreshold"


@dataclass(frozen=True)
class ThresholdReport:
    """Everything the thresholds say about one state."""

    n: int
    s_vn: float
    s_linear: float
    t_vn: float
    t_linear: float
    densecoding_t: float
    fef_lower: float
    fef_upper: float
    teleport_verdict: TeleportVerdict
    entropy_verdict_teleport: EntropyVerdict
    entropy_verdict_densecoding: EntropyVerdict
    holevo_chi: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "s_vn_bits": self.s_vn,
            "s_linear": self.s_linear,
            "t_vn_bits": self.t_vn,
            "t_linear": self.t_linear,
            "densecoding_t_bits": self.densecoding_t,
            "fef_lower": self.fef_lower,
            "fef_upper": self.fef_upper,
            "teleport_verdict": self.teleport_verdict.value,
            "entropy_verdict_teleport": self.entropy_verdict_teleport.value,
            "entropy_verdict_densecoding": self.entropy_verdict_densecoding.value,
            "holevo_chi_bits": self.holevo_chi,
        }


def analyze_rho(rho: DensityMatrix, cfg: OptimizerConfig | None = None) -> ThresholdReport:
    """Full report for an in-memory state.

    Raises ``TheoremViolation`` if the state is simultaneously above the
    entropy threshold and certified usable, which no valid state can be.
    """
    cfg = cfg if cfg is not None else OptimizerConfig()
    n = rho.n
    s_vn = von_neumann_entropy(rho)
    t_vn = teleport_threshold_vn(n)
    dc_t = densecoding_threshold(n)
    bounds = fef_certified(rho, cfg)
    teleport_verdict = usable_for_teleportation(bounds, n)
    entropy_teleport = EntropyVerdict.ABOVE if s_vn > t_vn else EntropyVerdict.BELOW
    entropy_dc = EntropyVerdict.ABOVE if s_vn > dc_t else EntropyVerdict.BELOW
    if (
        entropy_teleport is EntropyVerdict.ABOVE
        and teleport_verdict is TeleportVerdict.USABLE_CERTIFIED
    ):
        raise TheoremViolation(
            f"S = {s_vn:.12f} bits exceeds threshold {t_vn:.12f} yet the "
            f"certified F lower bound is {bounds.lower:.12f} > 1/{n}; "
            f"offending state: {json.dumps(state_to_dict(rho))}"
        )
    return ThresholdReport(
        n=n,
        s_vn=s_vn,
        s_linear=linear_entropy(rho),
        t_vn=t_vn,
        t_linear=teleport_threshold_linear(n),
        densecoding_t=dc_t,
        fef_lower=bounds.lower,
        fef_upper=bounds.upper,
        teleport_verdict=teleport_verdict,
        entropy_verdict_teleport=entropy_teleport,
        entropy_verdict_densecoding=entropy_dc,
        holevo_chi=densecoding_chi_standard(rho),
    )


def analyze_state(path, cfg: OptimizerConfig | None = None) -> ThresholdReport:
    """Report for a state loaded from the JSON file format."""
    return analyze_rho(load_state(path), cfg)


@dataclass(frozen=True)
class VerificationSummary:
    """Cell counts of {S > T, S <= T} x {F_lower >= 1/N + margin, below}."""

    n: int
    samples: int
    sampler_kind: str
    sampler_seed: int
    optimizer_seed: int
    restarts: int
    threshold_bits: float
    fef_margin: float
    s_above_f_above: int
    s_above_f_below: int
    s_below_f_above: int
    s_below_f_below: int
    violations: int
    contrapositive_violations: int

    @property
    def count_s_above(self) -> int:
        return self.s_above_f_above + self.s_above_f_below

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "samples": self.samples,
            "sampler_kind": self.sampler_kind,
            "sampler_seed": self.sampler_seed,
            "optimizer_seed": self.optimizer_seed,
            "restarts": self.restarts,
            "threshold_bits": self.threshold_bits,
            "fef_margin": self.fef_margin,
            "cells": {
                "s_above_f_above": self.s_above_f_above,
                "s_above_f_below": self.s_above_f_below,
                "s_below_f_above": self.s_below_f_above,
                "s_below_f_below": self.s_below_f_below,
            },
            "violations": self.violations,
            "contrapositive_violations": self.contrapositive_violations,
        }


def verify_theorem(
    n: int,
    samples: int,
    sampler: SamplerSpec | None = None,
    cfg: OptimizerConfig | None = None,
) -> VerificationSummary:
    """Sample states and check both directions of the entropy threshold.

    A violation is a sample with S above the threshold whose certified
    F lower bound still clears 1/N + 1e-7; the contrapositive check flags
    any sample with F_lower above that margin and S above the threshold
    by more than 1e-9.  Either aborts with ``TheoremViolation`` carrying
    the offending state, serialized for reproduction.
    """
    if samples < 1:
        raise InvalidParameter(f"samples must be >= 1, got {samples}")
    sampler = (
        sampler
        if sampler is not None
        else SamplerSpec(kind="hilbert_schmidt", dim=n * n, seed=0)
    )
    if math.isqrt(sampler.dim) ** 2 != sampler.dim or math.isqrt(sampler.dim) != n:
        raise DimensionMismatch(
            f"sampler dim {sampler.dim} does not match bipartite N={n}"
        )
    cfg = cfg if cfg is not None else OptimizerConfig()
    threshold = teleport_threshold_vn(n)
    f_critical = 1.0 / n + FEF_MARGIN
    cells = [0, 0, 0, 0]  # [S>T & F>=, S>T & F<, S<=T & F>=, S<=T & F<]
    for index in range(samples):
        rho = sample(sampler, index)
        s = von_neumann_entropy(rho)
        lower = fef_lower_bound(rho, cfg).lower
        s_above = s > threshold
        f_above = lower >= f_critical
        cells[(0 if s_above else 2) + (0 if f_above else 1)] += 1
        if s_above and f_above:
            raise TheoremViolation(
                f"sample {index}: S = {s:.12f} > {threshold:.12f} with "
                f"F_lower = {lower:.12f} >= 1/{n} + {FEF_MARGIN}; offending "
                f"state: {json.dumps(state_to_dict(rho))}"
            )
        if f_above and s > threshold + 1e-9:
            raise TheoremViolation(
                f"sample {index}: contrapositive failure, F_lower = "
                f"{lower:.12f} with S = {s:.12f} > {threshold:.12f} + 1e-9; "
                f"offending state: {json.dumps(state_to_dict(rho))}"
            )
    return VerificationSummary(
        n=n,
        samples=samples,
        sampler_kind=sampler.kind,
        sampler_seed=sampler.seed,
        optimizer_seed=cfg.seed,
        restarts=cfg.restarts,
        threshold_bits=threshold,
        fef_margin=FEF_MARGIN,
        s_above_f_above=cells[0],
        s_above_f_below=cells[1],
        s_below_f_above=cells[2],
        s_below_f_below=cells[3],
        violations=cells[0],
        contrapositive_violations=0,
    )


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    s_bits: float
    s_linear: float
    f_closed: float
    chi_bits: float
    f_avg: float
    above_t_vn: bool
    above_t_dc: bool


CSV_HEADER = "epsilon,S_bits,S_linear,F,chi_bits,f_avg,above_T_vn,above_T_dc"


def _werner_row(n: int, eps: float) -> SweepRow:
    params = WernerParams(n, eps)
    s = werner_entropy_closed_form(params)
    f_val = werner_fef_closed_form(params)
    return SweepRow(
        epsilon=eps,
        s_bits=s,
        s_linear=1.0 - werner_purity_closed_form(params),
        f_closed=f_val,
        chi_bits=2.0 * math.log2(n) - s,
        f_avg=(n * f_val + 1.0) / (n + 1.0),
        above_t_vn=s > teleport_threshold_vn(n),
        above_t_dc=s > densecoding_threshold(n),
    )


def sweep_werner(n: int, grid_points: int) -> list[SweepRow]:
    """Uniform epsilon grid on [0, 1] plus the three critical markers."""
    if grid_points < 2:
        raise InvalidParameter(f"grid_points must be >= 2, got {grid_points}")
    crit = critical_epsilons(n)
    eps_values = list(np.linspace(0.0, 1.0, grid_points)) + [
        crit.eps_fef_above,
        crit.eps_entropy_at_teleport_threshold,
        crit.eps_entropy_at_densecoding_threshold,
    ]
    eps_values.sort()
    deduped: list[float] = []
    for eps in eps_values:
        if not deduped or eps - deduped[-1] > 1e-12:
            deduped.append(float(eps))
    return [_werner_row(n, eps) for eps in deduped]


def sweep_csv(rows: list[SweepRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.epsilon:.6f},{r.s_bits:.6f},{r.s_linear:.6f},{r.f_closed:.6f},"
            f"{r.chi_bits:.6f},{r.f_avg:.6f},{int(r.above_t_vn)},{int(r.above_t_dc)}"
        )
    return "\n".join(lines) + "\n"
