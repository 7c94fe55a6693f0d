# -*- coding: utf-8 -*-

"""Ground truth by trajectory integration, and the known exact domains."""

from dataclasses import dataclass
import enum
import logging

import numpy as np

logger = logging.getLogger(__name__)


class UnknownExactDA(KeyError):
    """No closed form of the domain of attraction is known for this system."""


class Verdict(enum.Enum):
    CONVERGED = "Converged"
    DIVERGED = "Diverged"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class SimOutcome:
    """The fate of one trajectory.

    Attributes
    ----------
    verdict : Verdict
    time : float
        The time at which the verdict was reached, or T when undecided.
    final_norm : float
        The Euclidean norm of the state at that time.
    """

    verdict: Verdict
    time: float
    final_norm: float


@dataclass(frozen=True)
class OracleParameters:
    """Integration settings: final time, step, convergence and blow-up radii."""

    t_final: float = 50.0
    dt: float = 1.0e-3
    eps_conv: float = 1.0e-3
    r_max: float = 1.0e3

    def __post_init__(self):
        for name in ("t_final", "dt", "eps_conv", "r_max"):
            if not getattr(self, name) > 0:
                raise ValueError("{} must be positive".format(name))
        if self.t_final < self.dt:
            raise ValueError("The final time must be at least one step")


def simulate_many(field, X0, t_final=50.0, dt=1.0e-3, eps_conv=1.0e-3, r_max=1.0e3):
    """Integrate many initial states with the classical fixed-step RK4.

    Trajectories are frozen as soon as they are decided: converged when the
    norm drops to eps_conv, diverged when it reaches r_max or stops being
    finite. The remaining ones are undecided at t_final.

    Parameters
    ----------
    field : PolyField
    X0 : array_like
        Initial states, shape (N, n).

    Returns
    -------
    [SimOutcome]
        One outcome per initial state, in input order.
    """
    parameters = OracleParameters(t_final, dt, eps_conv, r_max)
    X = np.array(X0, dtype=float).reshape(-1, field.dim)
    count = X.shape[0]
    verdicts = np.full(count, Verdict.UNDECIDED, dtype=object)
    times = np.full(count, float(parameters.t_final))
    norms = np.linalg.norm(X, axis=1)

    def decide(indices, t):
        values = norms[indices]
        diverged = ~np.isfinite(values) | (values >= parameters.r_max)
        converged = ~diverged & (values <= parameters.eps_conv)
        verdicts[indices[diverged]] = Verdict.DIVERGED
        verdicts[indices[converged]] = Verdict.CONVERGED
        times[indices[diverged | converged]] = t
        return indices[~(diverged | converged)]

    active = decide(np.arange(count), 0.0)
    h = parameters.dt
    n_steps = int(round(parameters.t_final / h))
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, n_steps + 1):
            if active.size == 0:
                break
            Y = X[active]
            k1 = field.evaluate(Y)
            k2 = field.evaluate(Y + 0.5 * h * k1)
            k3 = field.evaluate(Y + 0.5 * h * k2)
            k4 = field.evaluate(Y + h * k3)
            Y = Y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            X[active] = Y
            norms[active] = np.linalg.norm(Y, axis=1)
            active = decide(active, step * h)

    if active.size > 0:
        logger.debug("{} of {} trajectories undecided".format(active.size, count))
    return [
        SimOutcome(verdicts[i], float(times[i]), float(norms[i])) for i in range(count)
    ]


def simulate(field, x0, t_final=50.0, dt=1.0e-3, eps_conv=1.0e-3, r_max=1.0e3):
    """Integrate one initial state; see simulate_many."""
    x0 = np.asarray(x0, dtype=float).reshape(1, -1)
    return simulate_many(field, x0, t_final, dt, eps_conv, r_max)[0]


def _example_number(example):
    if isinstance(example, str):
        digits = "".join(c for c in example if c.isdigit())
        if not digits:
            raise UnknownExactDA(example)
        return int(digits)
    return int(example)


def exact_da_member(example, x):
    """Membership in the exact domain of attraction of Examples 1 and 2.

    Parameters
    ----------
    example : int or str
        1, 2 or a name such as "example1".
    x : array_like
        One state or an (N, n) array of states.

    Returns
    -------
    bool or numpy.ndarray

    Raises
    ------
    UnknownExactDA
        For any other system.
    """
    number = _example_number(example)
    X = np.asarray(x, dtype=float)
    single = X.ndim == 1
    X = np.atleast_2d(X)
    if number == 1:
        result = (X[:, 0] - 1) ** 2 + X[:, 1] ** 2 < 4
    elif number == 2:
        result = X[:, 0] ** 2 + X[:, 1] ** 2 - X[:, 2] ** 2 < 1
    else:
        raise UnknownExactDA(example)
    return bool(result[0]) if single else result


def exact_boundary_function(example):
    """F with the exact domain {F(x) < 0}, for drawing its boundary."""
    number = _example_number(example)
    if number == 1:
        return lambda X: (X[..., 0] - 1) ** 2 + X[..., 1] ** 2 - 4
    if number == 2:
        return lambda X: X[..., 0] ** 2 + X[..., 1] ** 2 - X[..., 2] ** 2 - 1
    raise UnknownExactDA(example)
