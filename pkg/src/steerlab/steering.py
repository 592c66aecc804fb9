"""Temporal steering game with displaced-parity measurements.

Alice prepares |alpha + beta> with probability p_plus and |alpha - beta>
otherwise (beta real), sends the system through a channel, and announces
which displacement (gamma1 for the plus branch, gamma2 for the minus
branch) the receiver should apply before measuring parity.  The figure of
merit is

    S = p_plus P(b | gamma1, alpha + beta)
        + (1 - p_plus) P(b | gamma2, alpha - beta)

which preparation-independent (unsteerable) channel models nominally keep
inside [1/4, 3/4]; a value outside the window is a steering violation.

Channels: Ideal passes the state through, GaussianClone keeps the
cos-scaled copy, and LhsMixture replaces the state by a fixed mixture of
coherent states regardless of the preparation.  Mixtures enter through
convex combination of parity probabilities (parity is linear in the
density operator), so no density-matrix machinery is needed.

The closed-form boundary of the steerable region in the (beta, p) plane
is provided for comparison; the model it derives from is not reproduced
by the direct mixture construction, so sweeps and the formula are only
ever compared side by side, never asserted against each other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .coherent import EXCLUDED_REGION_EPS, Parity, parity_probabilities

__all__ = [
    "LOWER_BOUND",
    "UPPER_BOUND",
    "Verdict",
    "PreparationEnsemble",
    "SteeringScenario",
    "IdealChannel",
    "GaussianCloneChannel",
    "LhsMixtureChannel",
    "Channel",
    "SteeringEvaluation",
    "RegionBoundary",
    "RegionPoint",
    "steering_verdict",
    "steering_sum",
    "steerable_region_bounds",
    "region_sweep",
]

LOWER_BOUND = 0.25
UPPER_BOUND = 0.75

# Values within this distance of a bound count as inside it.
TIE_TOL = 1e-12

_BOUNDARY_SINGULAR_EPS = 1e-6


class Verdict(Enum):
    WITHIN_BOUNDS = "within_bounds"
    VIOLATES_UPPER = "violates_upper"
    VIOLATES_LOWER = "violates_lower"


@dataclass(frozen=True)
class PreparationEnsemble:
    """Alice's game parameters: real alpha, real beta, branch probability."""

    alpha: float
    beta: float
    p_plus: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("alpha and beta must be finite")
        if not (0.0 <= self.p_plus <= 1.0):
            raise ValueError(f"p_plus must lie in [0, 1], got {self.p_plus!r}")


@dataclass(frozen=True)
class SteeringScenario:
    ensemble: PreparationEnsemble
    gamma1: complex
    gamma2: complex
    outcome: Parity

    def __post_init__(self):
        object.__setattr__(self, "gamma1", complex(self.gamma1))
        object.__setattr__(self, "gamma2", complex(self.gamma2))
        for g in (self.gamma1, self.gamma2):
            if not (math.isfinite(g.real) and math.isfinite(g.imag)):
                raise ValueError("displacements must be finite")


@dataclass(frozen=True)
class IdealChannel:
    """Noiseless pass-through."""


@dataclass(frozen=True)
class GaussianCloneChannel:
    """Receiver keeps the cos-scaled clone of the transmitted amplitude."""

    eta: float

    def __post_init__(self):
        if not math.isfinite(self.eta):
            raise ValueError(f"eta must be finite, got {self.eta!r}")


@dataclass(frozen=True)
class LhsMixtureChannel:
    """Preparation-independent output: a fixed mixture of coherent states."""

    states: tuple[complex, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        states = tuple(complex(s) for s in self.states)
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "weights", weights)
        if len(states) != len(weights) or not states:
            raise ValueError("states and weights must be equal-length and nonempty")
        if any(w < 0.0 for w in weights):
            raise ValueError("weights must be nonnegative")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {sum(weights)!r}")


Channel = IdealChannel | GaussianCloneChannel | LhsMixtureChannel


def received_components(channel: Channel, prepared: complex) -> list[tuple[float, complex]]:
    """Mixture of coherent amplitudes the receiver holds, pre-displacement.

    For LhsMixture the result does not depend on ``prepared``; that
    independence is exactly what makes the model unsteerable.
    """
    if isinstance(channel, IdealChannel):
        return [(1.0, complex(prepared))]
    if isinstance(channel, GaussianCloneChannel):
        return [(1.0, complex(prepared) * math.cos(abs(channel.eta)))]
    if isinstance(channel, LhsMixtureChannel):
        return list(zip(channel.weights, channel.states))
    raise ValueError(f"unknown channel model: {channel!r}")


def _conditional_probability(
    channel: Channel, prepared: complex, gamma: complex, outcome: Parity
) -> float:
    total = 0.0
    for weight, component in received_components(channel, prepared):
        total += weight * parity_probabilities(component + gamma).prob(outcome)
    return total


def steering_verdict(total: float, excluded: bool = False) -> Verdict:
    """Classify a probability sum against the [1/4, 3/4] window.

    Bounds are inclusive; equality at either edge (within TIE_TOL) is
    within bounds.
    """
    if total > UPPER_BOUND + TIE_TOL:
        return Verdict.VIOLATES_UPPER
    if total < LOWER_BOUND - TIE_TOL:
        return Verdict.VIOLATES_LOWER
    return Verdict.WITHIN_BOUNDS


@dataclass(frozen=True)
class SteeringEvaluation:
    sum: float
    verdict: Verdict
    excluded_region: bool
    lower: float = LOWER_BOUND
    upper: float = UPPER_BOUND


def steering_sum(scenario: SteeringScenario, channel: Channel) -> SteeringEvaluation:
    """Evaluate the steering combination for a scenario and channel.

    Each branch conditions on the announced displacement being applied to
    the channel output of that branch's preparation; for LhsMixture both
    branches see the same mixture.
    """
    ens = scenario.ensemble
    plus_amp = complex(ens.alpha + ens.beta)
    minus_amp = complex(ens.alpha - ens.beta)
    p_branch1 = _conditional_probability(channel, plus_amp, scenario.gamma1, scenario.outcome)
    p_branch2 = _conditional_probability(channel, minus_amp, scenario.gamma2, scenario.outcome)
    total = ens.p_plus * p_branch1 + (1.0 - ens.p_plus) * p_branch2
    excluded = (
        abs(ens.alpha) < EXCLUDED_REGION_EPS and abs(ens.beta) < EXCLUDED_REGION_EPS
    )
    return SteeringEvaluation(
        sum=total,
        verdict=steering_verdict(total, excluded),
        excluded_region=excluded,
    )


@dataclass(frozen=True)
class RegionBoundary:
    """Closed-form steerable-region bounds at one beta.

    ``is_real`` is False where the square-root argument turns negative
    (small beta); there the two bounds are complex conjugates and the
    stored values are their common real part.
    """

    p_low: float
    p_high: float
    is_real: bool


def steerable_region_bounds(beta: float) -> RegionBoundary:
    """Evaluate the closed-form region boundary at a real displacement.

    With E = exp(-4 beta^2):

        p_low  = ( sqrt(2) sqrt(2 E^2 - 3 E + 1) + 2 E - 2) / (4 (E - 1))
        p_high = (-sqrt(2) sqrt(2 E^2 - 3 E + 1) + 2 E - 2) / (4 (E - 1))

    The two expressions sum to 1 identically.  The formula has a removable
    singularity at beta = 0; inputs that close to zero are rejected.
    """
    if not math.isfinite(beta):
        raise ValueError(f"beta must be finite, got {beta!r}")
    if abs(beta) < _BOUNDARY_SINGULAR_EPS:
        raise ValueError(
            f"boundary formula is singular at beta = 0 (|beta| = {abs(beta)!r})"
        )
    e = math.exp(-4.0 * beta * beta)
    arg = 2.0 * e * e - 3.0 * e + 1.0
    root = cmath.sqrt(arg)
    denom = 4.0 * (e - 1.0)
    p_low = (math.sqrt(2.0) * root + 2.0 * e - 2.0) / denom
    p_high = (-math.sqrt(2.0) * root + 2.0 * e - 2.0) / denom
    return RegionBoundary(p_low=p_low.real, p_high=p_high.real, is_real=arg >= 0.0)


@dataclass(frozen=True)
class RegionPoint:
    beta: float
    p: float
    sum: float
    verdict: Verdict


def _validate_grid(grid: list[float], name: str) -> None:
    if not grid:
        raise ValueError(f"{name} must be nonempty")
    if any(later < earlier for earlier, later in zip(grid, grid[1:])):
        raise ValueError(f"{name} must be sorted ascending")


def region_sweep(
    beta_grid: list[float],
    p_grid: list[float],
    alpha: float,
    channel: Channel,
) -> list[RegionPoint]:
    """Steering sums over a (beta, p) grid with the canonical displacements.

    Uses gamma1 = -(alpha + beta), gamma2 = -(alpha - beta) and the even
    outcome at every grid point.  Rows come out in row-major order (beta
    outer, p inner); grid points are independent, so the sweep could be
    parallelized with results reassembled by index, and identical inputs
    always produce identical tables.
    """
    beta_grid = [float(b) for b in beta_grid]
    p_grid = [float(p) for p in p_grid]
    _validate_grid(beta_grid, "beta_grid")
    _validate_grid(p_grid, "p_grid")
    rows: list[RegionPoint] = []
    for beta in beta_grid:
        gamma1 = complex(-(alpha + beta))
        gamma2 = complex(-(alpha - beta))
        for p in p_grid:
            scenario = SteeringScenario(
                ensemble=PreparationEnsemble(alpha=alpha, beta=beta, p_plus=p),
                gamma1=gamma1,
                gamma2=gamma2,
                outcome=Parity.EVEN,
            )
            ev = steering_sum(scenario, channel)
            rows.append(RegionPoint(beta=beta, p=p, sum=ev.sum, verdict=ev.verdict))
    return rows
