"""Time-domain simulation of gradient-play schemes on bilinear games.

A scheme is a k-step linear update: the next strategy of each player mixes
the k most recent strategies (smoothness weights p) and the k most recent
observed gradients (gradient weights q), scaled by a learning rate that may
be negative.  Plain simultaneous gradient descent/ascent is the k = 1 scheme
with unit weights; the optimistic variant is k = 2 with gradient weights
(2, -1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import tolerances
from .errors import InsufficientDataError, InvalidInputError
from .linalg import GameMatrix
from .stability import Verdict


@dataclass(frozen=True)
class HgdaScheme:
    """A k-step history scheme: smoothness weights p, gradient weights q, rate eta.

    ``nash_compatible`` records whether the weights satisfy the conditions
    under which any limit point of the dynamics is an equilibrium: the
    smoothness weights sum to one and the gradient weights do not cancel.
    """

    p: tuple
    q: tuple
    eta: float
    nash_compatible: bool = field(init=False)

    def __init__(self, p, q, eta: float):
        p = tuple(float(v) for v in p)
        q = tuple(float(v) for v in q)
        if len(p) != len(q) or not p:
            raise InvalidInputError("p and q must be equal-length, non-empty weight lists")
        if not all(np.isfinite(p + q + (eta,))):
            raise InvalidInputError("scheme parameters must be finite")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "eta", float(eta))
        tol = tolerances.DEFAULT.nash_condition
        compatible = abs(sum(p) - 1.0) <= tol and abs(sum(q)) > tol
        object.__setattr__(self, "nash_compatible", compatible)

    @property
    def horizon(self) -> int:
        return len(self.p)

    def with_eta(self, eta: float) -> "HgdaScheme":
        return HgdaScheme(self.p, self.q, eta)


def gda_scheme(eta: float) -> HgdaScheme:
    """Simultaneous gradient descent/ascent: one-step memory, unit weights."""
    return HgdaScheme(p=(1.0,), q=(1.0,), eta=eta)


def ogda_scheme(eta: float) -> HgdaScheme:
    """Optimistic gradient descent/ascent: doubled current gradient minus the previous one."""
    return HgdaScheme(p=(1.0, 0.0), q=(2.0, -1.0), eta=eta)


@dataclass(frozen=True)
class Trajectory:
    """Joint strategy sequence w_t = (x_t, y_t) with convergence diagnostics.

    ``states`` has one row per step, the first ``k`` rows being the supplied
    initial conditions; ``residuals`` holds the joint Euclidean norms.
    ``diverged_at`` is the first step index whose norm exceeded the blow-up
    guard, or None.
    """

    states: np.ndarray
    dim: int
    residuals: np.ndarray
    diverged_at: Optional[int]

    @property
    def steps(self) -> int:
        return self.states.shape[0]

    @property
    def xs(self) -> np.ndarray:
        return self.states[:, : self.dim]

    @property
    def ys(self) -> np.ndarray:
        return self.states[:, self.dim :]


def simulate(
    scheme: HgdaScheme,
    game: GameMatrix,
    init,
    steps: int,
    guard: float = 1e12,
) -> Trajectory:
    """Iterate the scheme on the bilinear game for the given number of steps.

    ``init`` is either one joint state of length 2n (replicated across all k
    history slots, the usual way these schemes are started) or an explicit
    (k, 2n) array of history states.  Iteration halts early when the joint
    norm exceeds ``guard`` so that overflow never pollutes rate estimates.
    """
    n = game.dim
    k = scheme.horizon
    if steps < k:
        raise InvalidInputError(f"steps ({steps}) must be at least the horizon ({k})")
    if not guard > 0:
        raise InvalidInputError("divergence guard must be positive")
    init = np.asarray(init, dtype=float)
    if init.shape == (2 * n,):
        init = np.tile(init, (k, 1))
    if init.shape != (k, 2 * n):
        raise InvalidInputError(
            f"initial conditions must have shape ({k}, {2 * n}) or ({2 * n},), got {init.shape}"
        )
    if not np.all(np.isfinite(init)):
        raise InvalidInputError("initial conditions must be finite")

    a = game.entries
    at = a.T
    eta = scheme.eta
    states = np.empty((steps, 2 * n))
    states[:k] = init
    diverged_at = None
    for t in range(k, steps):
        x_next = np.zeros(n)
        y_next = np.zeros(n)
        for i in range(1, k + 1):
            prev = states[t - i]
            x, y = prev[:n], prev[n:]
            x_next += scheme.p[i - 1] * x - eta * scheme.q[i - 1] * (a @ y)
            y_next += scheme.p[i - 1] * y + eta * scheme.q[i - 1] * (at @ x)
        states[t, :n] = x_next
        states[t, n:] = y_next
        if float(np.linalg.norm(states[t])) > guard:
            diverged_at = t
            states = states[: t + 1]
            break
    residuals = np.linalg.norm(states, axis=1)
    return Trajectory(states=states, dim=n, residuals=residuals, diverged_at=diverged_at)


def empirical_rate(traj: Trajectory, tail_fraction: float = 0.5) -> float:
    """Per-step contraction factor fitted on the tail of a converging run.

    Least-squares slope of log ||w_t|| over the final ``tail_fraction`` of the
    steps, exponentiated.  Regression (rather than consecutive ratios)
    averages out the oscillation of complex-conjugate root pairs.
    """
    if traj.diverged_at is not None:
        raise InvalidInputError("trajectory diverged; no contraction rate exists")
    if not 0.0 < tail_fraction <= 1.0:
        raise InvalidInputError("tail_fraction must lie in (0, 1]")
    total = traj.steps
    window = max(int(round(tail_fraction * total)), 2)
    start = total - window
    res = traj.residuals[start:]
    ts = np.arange(start, total, dtype=float)
    zero_hits = np.flatnonzero(res == 0.0)
    if zero_hits.size:
        res = res[: zero_hits[0]]
        ts = ts[: zero_hits[0]]
    if res.size < 10:
        raise InsufficientDataError(
            f"only {res.size} usable samples in the regression window (need 10)"
        )
    slope = float(np.polyfit(ts, np.log(res), 1)[0])
    rate = float(np.exp(slope))
    if rate >= 1.0 - 1e-12:
        raise InsufficientDataError("no decay across the regression window")
    return rate


def nash_residual(traj: Trajectory, game: GameMatrix) -> tuple[float, float]:
    """Equilibrium residuals (||A y||, ||A^T x||) at the final state.

    Both must vanish at an equilibrium of the bilinear game, so a converged
    run should report values near zero.
    """
    if traj.diverged_at is not None:
        raise InvalidInputError("trajectory diverged; equilibrium residuals are meaningless")
    if traj.dim != game.dim:
        raise InvalidInputError("trajectory and game dimensions differ")
    x = traj.xs[-1]
    y = traj.ys[-1]
    return (
        float(np.linalg.norm(game.entries @ y)),
        float(np.linalg.norm(game.entries.T @ x)),
    )


def simulated_verdict(
    scheme: HgdaScheme,
    game: GameMatrix,
    init,
    steps: int,
    guard: float = 1e12,
) -> Verdict:
    """Empirical stable/unstable classification from a single long run.

    Intended for boundary searches: near the stability boundary the decay or
    growth over a long horizon is decisive even when single-step changes are
    tiny.  Never returns MARGINAL.
    """
    traj = simulate(scheme, game, init, steps, guard)
    if traj.diverged_at is not None:
        return Verdict.UNSTABLE
    final, first = traj.residuals[-1], traj.residuals[0]
    if final == 0.0 or final < first:
        return Verdict.STABLE
    return Verdict.UNSTABLE
