"""Deterministic mean dynamics of a bilinear quadrature QSDE.

The noise terms are martingales, so the expectation vector obeys the
affine ODE

    d<x>/dt = A0 + A <x>,

integrated here with the classical fixed-step fourth-order Runge-Kutta
scheme.  Output means are y1 = C1 <x>, y2 = C2 <x>, stacked as
[y1; y2].
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .realization import QsdeSystem
from .su_algebra import _frozen

__all__ = ["Trajectory", "mean_trajectory", "output_means", "write_csv"]


@dataclass(frozen=True)
class Trajectory:
    """Time grid, state means (len(times), s) and output means (len(times), 2*n_w)."""

    times: np.ndarray
    states: np.ndarray
    outputs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "times", _frozen(np.asarray(self.times, dtype=np.float64)))
        object.__setattr__(self, "states", _frozen(np.asarray(self.states, dtype=np.float64)))
        object.__setattr__(self, "outputs", _frozen(np.asarray(self.outputs, dtype=np.float64)))


def mean_trajectory(sys: QsdeSystem, x0, T: float, h: float) -> Trajectory:
    """Integrate d<x>/dt = A0 + A<x> from 0 to T with RK4 steps of size h.

    The grid is 0, h, 2h, ...; a shorter final step is taken if needed so
    the trajectory always ends exactly at T.
    """
    x0 = np.asarray(x0, dtype=np.float64).reshape(-1)
    if x0.shape != (sys.s,):
        raise ValueError(f"x0 must have length s={sys.s}, got {x0.shape}")
    if not np.all(np.isfinite(x0)):
        raise ValueError("x0 contains non-finite entries")
    T = float(T)
    h = float(h)
    if not np.isfinite(T) or T < 0:
        raise ValueError(f"T must be finite and >= 0, got {T}")
    if not np.isfinite(h) or h <= 0:
        raise ValueError(f"h must be finite and > 0, got {h}")

    A0, A = sys.A0, sys.A

    def rhs(x):
        return A0 + A @ x

    times = [0.0]
    states = [x0]
    t = 0.0
    x = x0
    while t < T - 1e-12 * max(1.0, T):
        step = min(h, T - t)
        k1 = rhs(x)
        k2 = rhs(x + 0.5 * step * k1)
        k3 = rhs(x + 0.5 * step * k2)
        k4 = rhs(x + step * k3)
        x = x + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = min(t + step, T)
        times.append(t)
        states.append(x)

    times_arr = np.asarray(times)
    states_arr = np.asarray(states)
    return Trajectory(times=times_arr, states=states_arr, outputs=output_means(sys, states_arr))


def output_means(sys: QsdeSystem, states: np.ndarray) -> np.ndarray:
    """Stack [C1 <x>; C2 <x>] for each row of states; shape (N, 2*n_w)."""
    states = np.atleast_2d(np.asarray(states, dtype=np.float64))
    if states.shape[1] != sys.s:
        raise ValueError(f"states must have {sys.s} columns, got {states.shape[1]}")
    return np.hstack([states @ sys.C1.T, states @ sys.C2.T])


def write_csv(traj: Trajectory, path_or_file) -> None:
    """Write t, x1..xs, y1..y{2*n_w} rows; floats use repr so they round-trip.

    Accepts a filesystem path or an open text file object.
    """
    if hasattr(path_or_file, "write"):
        _write_rows(traj, path_or_file)
        return
    with open(path_or_file, "w", newline="") as fh:
        _write_rows(traj, fh)


def _write_rows(traj: Trajectory, fh) -> None:
    s = traj.states.shape[1]
    m = traj.outputs.shape[1]
    writer = csv.writer(fh)
    writer.writerow(["t"] + [f"x{i + 1}" for i in range(s)] + [f"y{i + 1}" for i in range(m)])
    for t, x, y in zip(traj.times, traj.states, traj.outputs):
        writer.writerow([repr(float(t))] + [repr(float(v)) for v in x] + [repr(float(v)) for v in y])
