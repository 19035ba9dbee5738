"""Sampled ``(theta, f, f')`` curves shared by every solution source."""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .errors import ParameterError

__all__ = ["ProfileSource", "Profile", "sample_profile"]

FRONT_ZERO_TOL = 1e-10


class ProfileSource(enum.Enum):
    SERIES = "series"
    SHOOTING = "shooting"
    EXACT = "exact"
    PDE_RESCALED = "pde-rescaled"


@dataclass(frozen=True, eq=False)
class Profile:
    """Reduced profile sampled on ``[0, alpha]`` with ``thetas[-1] == alpha``."""

    thetas: np.ndarray
    f_values: np.ndarray
    df_values: np.ndarray
    source: ProfileSource
    alpha: float

    def __post_init__(self):
        th = np.asarray(self.thetas, dtype=float)
        f = np.asarray(self.f_values, dtype=float)
        df = np.asarray(self.df_values, dtype=float)
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "f_values", f)
        object.__setattr__(self, "df_values", df)
        object.__setattr__(self, "source", ProfileSource(self.source))
        if not (th.shape == f.shape == df.shape) or th.ndim != 1:
            raise ParameterError("thetas, f_values and df_values must be 1-D and equal length")
        if th.size < 2 or np.any(np.diff(th) <= 0):
            raise ParameterError("thetas must be strictly increasing with at least 2 samples")
        if np.any(f < 0):
            raise ParameterError(f"profile has negative values (min {f.min():.3e})")
        if abs(f[-1]) > FRONT_ZERO_TOL * max(1.0, float(f.max())):
            raise ParameterError(f"profile does not vanish at its last sample (f={f[-1]:.3e})")

    def __len__(self):
        return self.thetas.size

    def evaluator(self):
        """Piecewise cubic Hermite interpolant of f, returning 0 past the front."""
        spline = CubicHermiteSpline(self.thetas, self.f_values, self.df_values)
        lo, hi = self.thetas[0], self.thetas[-1]

        def f_eval(theta):
            theta = np.asarray(theta, dtype=float)
            inside = (theta >= lo) & (theta <= hi)
            out = np.where(inside, spline(np.clip(theta, lo, hi)), 0.0)
            return np.maximum(out, 0.0) if out.ndim else max(float(out), 0.0)

        return f_eval

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["theta", "f", "df", "source"])
        for th, f, df in zip(self.thetas, self.f_values, self.df_values):
            writer.writerow([repr(float(th)), repr(float(f)), repr(float(df)), self.source.value])
        return buf.getvalue()

    def to_record(self) -> dict:
        return {
            "source": self.source.value,
            "alpha": float(self.alpha),
            "theta": self.thetas.tolist(),
            "f": self.f_values.tolist(),
            "df": self.df_values.tolist(),
        }


def sample_profile(curve, alpha: float, samples: int = 201, source=ProfileSource.SERIES) -> Profile:
    """Sample any object with vectorised ``f``/``df`` methods on ``[0, alpha]``.

    Works for :class:`~frontflux.series.FrontSeries` and the closed-form
    profiles of :mod:`frontflux.similarity`.
    """
    if samples < 2:
        raise ParameterError(f"need at least 2 samples, got {samples}")
    thetas = np.linspace(0.0, alpha, samples)
    f = np.asarray(curve.f(thetas), dtype=float)
    df = np.asarray(curve.df(thetas), dtype=float)
    return Profile(thetas, f, df, source, alpha)
