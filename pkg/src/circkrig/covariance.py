"""Spectral covariance models on the circle.

An intrinsic model of order ``kappa`` assigns a positive weight ``gamma_n``
to each frequency ``n >= kappa`` with finite total mass.  The covariance of
the corresponding low-frequency-truncated process at lag ``theta`` is the
cosine series ``sum_n gamma_n cos(n*theta)``; removing every frequency below
``kappa`` is exactly what makes the process stationary over allowable
measures of that order.

Two classic periodic smoothing-spline kernels (``gamma_n = 2/n**(2m)``,
m = 1, 2) have closed polynomial forms and are provided directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.integrate import simpson

from .circle import TWO_PI, wrap
from .errors import SpectrumError, VariogramShiftError

__all__ = [
    "SpectralModel",
    "IntrinsicCovariance",
    "Semivariogram",
    "spline_kernel",
    "spline_covariance",
    "phi_from_variogram",
]

# Frequencies are processed in blocks of this size so that dense power-law
# models with very large cutoffs never materialize huge outer products.
_CHUNK = 4096


@dataclass(frozen=True)
class SpectralModel:
    """Positive coefficient sequence ``{gamma_n : n >= kappa}``.

    Two representations are supported and selected by the classmethods:

    * ``from_list``: explicit finite support ``gamma_kappa, gamma_kappa+1,
      ...``; the series is then computed exactly.
    * ``power_law``: ``gamma_n = a * n**(-p)`` with ``p > 1``, truncated at
      ``n_max``; the neglected tail is bounded by :meth:`tail_bound`.

    Parameters are validated on construction: weights must be strictly
    positive and the decay summable.
    """

    kappa: int
    values: np.ndarray | None = None
    a: float = 0.0
    p: float = 0.0
    n_max: int = 10_000

    def __post_init__(self):
        if not isinstance(self.kappa, (int, np.integer)) or self.kappa < 1:
            raise ValueError("order must be an integer >= 1")
        object.__setattr__(self, "kappa", int(self.kappa))
        if self.values is not None:
            if self.a != 0.0 or self.p != 0.0:
                raise ValueError("give either an explicit list or a power law")
            v = np.atleast_1d(np.asarray(self.values, dtype=float))
            if v.ndim != 1:
                raise ValueError("coefficient list must be 1-d")
            if not np.all(np.isfinite(v)):
                raise SpectrumError("coefficients must be finite")
            if v.size and np.any(v <= 0.0):
                n_bad = self.kappa + int(np.argmax(v <= 0.0))
                raise SpectrumError(
                    f"coefficient at frequency {n_bad} is not positive"
                )
            v = v.copy()
            v.flags.writeable = False
            object.__setattr__(self, "values", v)
            object.__setattr__(self, "n_max", self.kappa + v.size - 1)
        else:
            if not (np.isfinite(self.a) and self.a > 0.0):
                raise SpectrumError("power-law amplitude must be positive")
            if not (np.isfinite(self.p) and self.p > 1.0):
                raise SpectrumError(
                    f"power-law decay p={self.p} is not summable; need p > 1"
                )
            if int(self.n_max) < self.kappa:
                raise ValueError("truncation must reach the starting frequency")
            object.__setattr__(self, "a", float(self.a))
            object.__setattr__(self, "p", float(self.p))
            object.__setattr__(self, "n_max", int(self.n_max))

    @classmethod
    def from_list(cls, kappa: int, values) -> "SpectralModel":
        """Model with explicit weights for frequencies kappa, kappa+1, ...

        An empty list is legal and describes the zero process.
        """
        return cls(kappa=kappa, values=np.asarray(values, dtype=float))

    @classmethod
    def power_law(cls, kappa: int, a: float, p: float,
                  n_max: int = 10_000) -> "SpectralModel":
        """Model ``gamma_n = a * n**(-p)`` for n in [kappa, n_max]."""
        return cls(kappa=kappa, a=a, p=p, n_max=n_max)

    @property
    def is_power(self) -> bool:
        return self.values is None

    @property
    def support_end(self) -> int:
        """Largest represented frequency; kappa - 1 for an empty list."""
        return self.n_max

    def frequencies(self) -> np.ndarray:
        return np.arange(self.kappa, self.support_end + 1)

    def gammas(self) -> np.ndarray:
        """Weights aligned with :meth:`frequencies`."""
        if self.values is not None:
            return self.values
        return self.a * self.frequencies() ** (-self.p)

    def gamma(self, n) -> np.ndarray:
        """Weight at frequency ``n`` (0 outside the represented range)."""
        n = np.asarray(n)
        inside = (n >= self.kappa) & (n <= self.support_end)
        if self.values is not None:
            idx = np.where(inside, n - self.kappa, 0)
            out = np.where(inside, self.values[idx] if self.values.size
                           else 0.0, 0.0)
        else:
            out = np.where(inside, self.a * np.maximum(n, 1) ** (-self.p), 0.0)
        return out[()]

    def tail_bound(self) -> float:
        """Upper bound on the neglected mass ``sum_{n > n_max} gamma_n``.

        Zero for explicit lists.  For a power law the integral comparison
        ``sum_{n > N} a n**-p <= a N**(1-p) / (p-1)`` applies.
        """
        if self.values is not None:
            return 0.0
        return self.a * self.n_max ** (1.0 - self.p) / (self.p - 1.0)

    def total_mass(self) -> float:
        """Sum of the represented weights (excludes any truncated tail)."""
        return float(self.gammas().sum())

    def to_config(self) -> dict:
        if self.values is not None:
            return {"kappa": self.kappa, "type": "list",
                    "values": [float(v) for v in self.values]}
        return {"kappa": self.kappa, "type": "power",
                "a": self.a, "p": self.p, "n_max": self.n_max}

    @classmethod
    def from_config(cls, cfg: dict) -> "SpectralModel":
        """Rebuild a model from its :meth:`to_config` dictionary."""
        kind = cfg.get("type")
        kappa = cfg.get("kappa")
        if kind == "list":
            return cls.from_list(kappa, cfg.get("values", []))
        if kind == "power":
            return cls.power_law(kappa, cfg.get("a"), cfg.get("p"),
                                 int(cfg.get("n_max", 10_000)))
        raise ValueError(f"unknown spectrum type {kind!r}")


def _series_eval(model: SpectralModel, lag: np.ndarray) -> np.ndarray:
    """Truncated cosine series at canonical lags, chunked over frequency."""
    flat = np.ravel(lag)
    out = np.zeros(flat.size)
    freqs = model.frequencies()
    gams = model.gammas()
    for start in range(0, freqs.size, _CHUNK):
        f = freqs[start:start + _CHUNK]
        g = gams[start:start + _CHUNK]
        out += g @ np.cos(np.multiply.outer(f.astype(float), flat))
    return out.reshape(np.shape(lag))


class IntrinsicCovariance:
    """Callable covariance ``phi(theta) = sum_{n>=kappa} gamma_n cos(n theta)``.

    Evaluation is by the (possibly truncated) series unless ``closed_form``
    is supplied, in which case that function of the canonical lag in
    [0, 2*pi) is used instead and carries no truncation error.

    ``shift`` adds a constant to every value.  For orders >= 1 a constant is
    annihilated by every allowable measure, so shifted and unshifted models
    are the same intrinsic object; the shift is how variogram-derived models
    record their arbitrary constant.
    """

    def __init__(self, model: SpectralModel, closed_form=None,
                 shift: float = 0.0):
        self.model = model
        self.closed_form = closed_form
        self.shift = float(shift)

    @property
    def kappa(self) -> int:
        return self.model.kappa

    @property
    def tail_bound(self) -> float:
        """Series truncation error bound; 0 when a closed form is used."""
        if self.closed_form is not None:
            return 0.0
        return self.model.tail_bound()

    def __call__(self, lag):
        """Evaluate at lag(s); shape-preserving, lags taken modulo 2*pi."""
        canonical = wrap(np.asarray(lag, dtype=float))
        if self.closed_form is not None:
            vals = np.asarray(self.closed_form(canonical), dtype=float)
        else:
            vals = _series_eval(self.model, np.asarray(canonical))
        return (vals + self.shift)[()]

    @cached_property
    def phi0(self) -> float:
        """Value at lag zero (the truncated series mass plus shift)."""
        return float(self(0.0))

    def gram(self, x, y=None) -> np.ndarray:
        """Matrix ``phi(x_i - y_j)``; ``y`` defaults to ``x``."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = x if y is None else np.atleast_1d(np.asarray(y, dtype=float))
        return self(np.subtract.outer(x, y))

    def with_shift(self, shift: float) -> "IntrinsicCovariance":
        """Same spectral content with the constant replaced by ``shift``."""
        return IntrinsicCovariance(self.model, closed_form=self.closed_form,
                                   shift=shift)


def _spline_poly(m: int, d):
    """Closed spline-kernel polynomial on the canonical lag d in [0, 2*pi).

    Factored forms of d^2/2 - pi*d + pi^2/3 and
    -d^4/24 + pi*d^3/6 - pi^2*d^2/6 + pi^4/45; the factorizations avoid
    cancellation near d = 2*pi and make the d <-> 2*pi - d symmetry exact.
    """
    if m == 1:
        return np.pi**2 / 3.0 - d * (TWO_PI - d) / 2.0
    if m == 2:
        return np.pi**4 / 45.0 - (d * (TWO_PI - d)) ** 2 / 24.0
    raise ValueError(f"spline kernel order must be 1 or 2, got {m}")


def spline_kernel(m: int, s, t):
    """Closed-form circular spline kernel of order ``m`` in {1, 2}.

    Equals the series ``2 * sum_{n>=1} n**(-2m) cos(n (s - t))``.  The
    polynomial is applied to the canonical lag, and is 2*pi-periodic and
    even as written: substituting ``2*pi - d`` for ``d`` leaves it fixed.
    """
    if m not in (1, 2):
        raise ValueError(f"spline kernel order must be 1 or 2, got {m}")
    d = wrap(np.asarray(s, dtype=float) - np.asarray(t, dtype=float))
    return _spline_poly(m, np.asarray(d))[()]


def spline_covariance(m: int, n_max: int = 10_000) -> IntrinsicCovariance:
    """Spline kernel packaged as an order-1 intrinsic covariance.

    The spectral content is ``gamma_n = 2 * n**(-2m)``; evaluation uses the
    exact closed form, so ``n_max`` only documents the frequencies carried
    into simulation or reproducing-kernel expansions.
    """
    model = SpectralModel.power_law(1, 2.0, 2.0 * m, n_max=n_max)
    return IntrinsicCovariance(model, closed_form=lambda d: _spline_poly(m, d))


@dataclass(frozen=True)
class Semivariogram:
    """Increment variance ``tau(theta) = phi(0) - phi(theta)`` at order 1.

    ``c0`` is the constant used when converting back to a covariance via
    :func:`phi_from_variogram`; predictions never depend on it, but it must
    satisfy the lower bound :meth:`minimal_shift`.
    """

    covariance: IntrinsicCovariance
    c0: float = 0.0

    def __post_init__(self):
        cov = self.covariance
        if isinstance(cov, SpectralModel):
            cov = IntrinsicCovariance(cov)
            object.__setattr__(self, "covariance", cov)
        if cov.kappa != 1:
            raise ValueError("a semivariogram requires an order-1 model")
        if not np.isfinite(self.c0):
            raise ValueError("c0 must be finite")
        object.__setattr__(self, "c0", float(self.c0))

    def __call__(self, theta):
        # Any constant shift in the covariance cancels in the difference.
        return (self.covariance.phi0 - np.asarray(self.covariance(theta)))[()]

    def minimal_shift(self, panels: int = 10_000) -> float:
        """Lower admissible bound ``(1/pi) * integral_0^pi tau`` for ``c0``.

        Evaluated by composite Simpson quadrature on an even panel count.
        """
        panels += panels % 2
        grid = np.linspace(0.0, np.pi, panels + 1)
        return float(simpson(np.asarray(self(grid)), x=grid) / np.pi)


def phi_from_variogram(sv: Semivariogram, rtol: float = 1.0e-6,
                       panels: int = 10_000) -> IntrinsicCovariance:
    """Covariance ``phi = c0 - tau`` from a semivariogram and its constant.

    The constant must satisfy ``c0 >= (1/pi) * integral_0^pi tau`` (checked
    by quadrature at relative tolerance ``rtol``), which makes ``phi`` a
    valid order-1 model.  Different admissible constants give the same
    predictions and kriging variances; only the reported covariance values
    move by the constant.
    """
    bound = sv.minimal_shift(panels=panels)
    slack = rtol * max(1.0, abs(bound))
    if sv.c0 < bound - slack:
        raise VariogramShiftError(
            f"constant c0={sv.c0:.6g} is below the admissible bound "
            f"{bound:.6g} computed by quadrature"
        )
    base = sv.covariance
    # c0 - tau(theta) = phi_spectral(theta) + (c0 - phi_spectral(0)).
    return base.with_shift(sv.c0 - (base.phi0 - base.shift))
