"""Distributions on [0,1]: densities, CDFs, samplers, moments, tail models.

Three density families are supported:

* ``Uniform`` -- f(x) = 1, moments m_k = 1/(k+1);
* ``BetaEdge`` -- f(x) = c (1-x)^beta with c = beta+1 so the mass is 1,
  moments m_k = c B(k+1, beta+1);
* ``TabulatedDensity`` -- piecewise-linear density on a user grid, moments
  integrated exactly segment by segment.

All distributions expose the edge behaviour f(x) ~ c (1-x)^beta near x = 1,
which fixes the moment decay m_k ~ L k^(-alpha) with L = c Gamma(beta+1) and
alpha = beta + 1.  That decay law is packaged as a ``TailModel`` and drives
every truncation bound downstream.  Moment sequences (from a distribution or
the abstract power family m_j = j^(-s)) are the universal input of the
summation engines.

Objects are immutable after construction; samplers take the caller's
generator, so determinism is entirely in the caller's hands.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate
from scipy.special import gammaln

from .errors import InvalidTail, MissingEdgeData, QuadratureFailure
from .special import gamma_fn

__all__ = [
    "EdgeDistribution",
    "Uniform",
    "BetaEdge",
    "TabulatedDensity",
    "PowerMoments",
    "TailModel",
    "PowerLawForm",
    "MomentSequence",
    "moment",
    "moment_quadrature",
    "tail_model",
    "sample",
    "sample_many",
    "moment_sequence",
    "load_tabulated_csv",
]

_MASS_TOL = 1e-10


@dataclass(frozen=True)
class TailModel:
    """Moment decay law m(x) ~ L x^(-alpha) (1 + O(x^(-delta)))."""

    L: float
    alpha: float
    delta: float

    def __post_init__(self) -> None:
        if not (self.L > 0.0):
            raise ValueError(f"tail constant L must be positive, got {self.L}")
        if not (self.alpha > 0.0):
            raise ValueError(f"decay exponent alpha must be positive, got {self.alpha}")
        if not (self.delta > 0.0):
            raise ValueError(f"correction exponent delta must be positive, got {self.delta}")


@dataclass(frozen=True)
class PowerLawForm:
    """Exact closed form m_j = L (j + shift)^(-alpha), valid for every j >= 1.

    Sequences carrying this form admit high-order tail corrections; sequences
    with only an asymptotic TailModel get first-order truncation bounds.
    """

    L: float
    alpha: float
    shift: float = 0.0


class EdgeDistribution:
    """Base class for distributions supported on [0, 1]."""

    family: str = "abstract"

    # -- density / CDF / inverse CDF, vectorized over numpy arrays ----------
    def pdf(self, x):
        raise NotImplementedError

    def cdf(self, x):
        raise NotImplementedError

    def ppf(self, u):
        raise NotImplementedError

    # -- exact moments -------------------------------------------------------
    def moment(self, k: int) -> float:
        raise NotImplementedError

    def moments(self, k) -> np.ndarray:
        """Vectorized m_k over an integer array k >= 1."""
        k = np.asarray(k, dtype=np.float64)
        return np.array([self.moment(int(kk)) for kk in np.atleast_1d(k)])

    def edge_params(self) -> tuple[float, float, float]:
        """(c, beta, delta) of the density near x = 1."""
        raise MissingEdgeData(f"{self.family} distribution has no edge data")

    def power_law_form(self) -> PowerLawForm | None:
        return None


@dataclass(frozen=True)
class Uniform(EdgeDistribution):
    """Uniform density on [0, 1]; m_k = 1/(k+1)."""

    family: str = field(default="uniform", init=False)

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where((x >= 0.0) & (x <= 1.0), 1.0, 0.0)

    def cdf(self, x):
        return np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)

    def ppf(self, u):
        return np.asarray(u, dtype=np.float64)

    def moment(self, k: int) -> float:
        _check_order(k)
        return 1.0 / (k + 1.0)

    def moments(self, k) -> np.ndarray:
        k = np.asarray(k, dtype=np.float64)
        return 1.0 / (k + 1.0)

    def edge_params(self) -> tuple[float, float, float]:
        return (1.0, 0.0, 1.0)

    def power_law_form(self) -> PowerLawForm:
        return PowerLawForm(L=1.0, alpha=1.0, shift=1.0)


@dataclass(frozen=True)
class BetaEdge(EdgeDistribution):
    """Density f(x) = c (1-x)^beta on [0, 1] with c = beta + 1.

    The coefficient may be passed explicitly for readability, but total mass
    c/(beta+1) must equal 1, so any c other than beta+1 is rejected.
    """

    beta: float
    c: float | None = None
    delta: float = 1.0
    family: str = field(default="beta-edge", init=False)

    def __post_init__(self) -> None:
        if not (self.beta >= 0.0):
            raise ValueError(f"edge exponent beta must be >= 0, got {self.beta}")
        c = self.beta + 1.0 if self.c is None else float(self.c)
        if abs(c - (self.beta + 1.0)) > 1e-12:
            raise ValueError(
                f"density c(1-x)^beta has mass c/(beta+1); c={c} with beta={self.beta} "
                "does not normalize to 1"
            )
        object.__setattr__(self, "c", c)
        if not (self.delta > 0.0):
            raise ValueError(f"delta must be positive, got {self.delta}")

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        inside = (x >= 0.0) & (x <= 1.0)
        return np.where(inside, self.c * (1.0 - np.clip(x, 0.0, 1.0)) ** self.beta, 0.0)

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)
        return 1.0 - (1.0 - x) ** (self.beta + 1.0)

    def ppf(self, u):
        u = np.asarray(u, dtype=np.float64)
        return 1.0 - (1.0 - u) ** (1.0 / (self.beta + 1.0))

    def moment(self, k: int) -> float:
        _check_order(k)
        return float(self.moments(np.array([k]))[0])

    def moments(self, k) -> np.ndarray:
        # m_k = c * B(k+1, beta+1), evaluated through log-gammas so large k
        # neither overflows nor loses the leading behaviour.
        k = np.asarray(k, dtype=np.float64)
        return self.c * np.exp(
            gammaln(self.beta + 1.0) + gammaln(k + 1.0) - gammaln(k + self.beta + 2.0)
        )

    def edge_params(self) -> tuple[float, float, float]:
        return (self.c, self.beta, self.delta)


class TabulatedDensity(EdgeDistribution):
    """Piecewise-linear density from (x, f) pairs on a strictly increasing grid.

    The grid must cover [0, 1] and the trapezoid mass must equal 1 within
    1e-10 (pass normalize=True to rescale instead).  Edge behaviour cannot be
    inferred from a table; supply edge=(c, beta) (and optionally delta) to
    unlock the tail model.
    """

    family = "tabulated"

    def __init__(
        self,
        x: Sequence[float],
        f: Sequence[float],
        edge: tuple[float, float] | None = None,
        delta: float = 1.0,
        normalize: bool = False,
    ) -> None:
        x = np.asarray(x, dtype=np.float64)
        f = np.asarray(f, dtype=np.float64)
        if x.ndim != 1 or x.shape != f.shape or x.size < 2:
            raise ValueError("need matching 1-D arrays with at least two nodes")
        if np.any(np.diff(x) <= 0.0):
            raise ValueError("grid x must be strictly increasing")
        if abs(x[0]) > 1e-12 or abs(x[-1] - 1.0) > 1e-12:
            raise ValueError("grid must cover [0, 1]")
        if np.any(f < 0.0):
            raise ValueError("density values must be nonnegative")
        mass = float(np.trapezoid(f, x))
        if normalize:
            if mass <= 0.0:
                raise ValueError("cannot normalize a zero-mass table")
            f = f / mass
            mass = 1.0
        if abs(mass - 1.0) > _MASS_TOL:
            raise ValueError(f"density mass {mass!r} differs from 1 by more than {_MASS_TOL}")
        self.x = x
        self.x.setflags(write=False)
        self.f = f
        self.f.setflags(write=False)
        self._edge = (float(edge[0]), float(edge[1])) if edge is not None else None
        self._delta = float(delta)
        if self._edge is not None and not (self._edge[0] > 0.0 and self._edge[1] >= 0.0):
            raise ValueError(f"edge data needs c > 0 and beta >= 0, got {self._edge}")
        # cumulative mass at the grid nodes (piecewise quadratic in between)
        seg = 0.5 * (f[1:] + f[:-1]) * np.diff(x)
        self._cum = np.concatenate([[0.0], np.cumsum(seg)])
        self._cum.setflags(write=False)

    def pdf(self, x):
        return np.interp(np.asarray(x, dtype=np.float64), self.x, self.f, left=0.0, right=0.0)

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)
        idx = np.clip(np.searchsorted(self.x, x, side="right") - 1, 0, self.x.size - 2)
        x0, x1 = self.x[idx], self.x[idx + 1]
        f0, f1 = self.f[idx], self.f[idx + 1]
        t = (x - x0) / (x1 - x0)
        return self._cum[idx] + (x - x0) * (f0 + 0.5 * t * (f1 - f0))

    def ppf(self, u):
        # monotone bisection on the piecewise-quadratic CDF, to 1e-12
        u = np.asarray(u, dtype=np.float64)
        lo = np.zeros_like(u)
        hi = np.ones_like(u)
        for _ in range(52):
            mid = 0.5 * (lo + hi)
            below = self.cdf(mid) < u
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)

    def moment(self, k: int) -> float:
        _check_order(k)
        return float(self.moments(np.array([k]))[0])

    def moments(self, k) -> np.ndarray:
        # On each segment f(x) = A + B x, so int x^k f dx integrates exactly:
        # A (x1^(k+1) - x0^(k+1))/(k+1) + B (x1^(k+2) - x0^(k+2))/(k+2).
        k = np.atleast_1d(np.asarray(k, dtype=np.float64))
        x0, x1 = self.x[:-1], self.x[1:]
        f0, f1 = self.f[:-1], self.f[1:]
        B = (f1 - f0) / (x1 - x0)
        A = f0 - B * x0
        out = np.empty(k.shape, dtype=np.float64)
        chunk = max(1, (1 << 20) // self.x.size)
        for lo in range(0, k.size, chunk):
            kk = k[lo : lo + chunk, None]
            p1 = np.power(x1[None, :], kk + 1.0) - np.power(x0[None, :], kk + 1.0)
            p2 = np.power(x1[None, :], kk + 2.0) - np.power(x0[None, :], kk + 2.0)
            out[lo : lo + chunk] = np.sum(A * p1 / (kk + 1.0) + B * p2 / (kk + 2.0), axis=1)
        return out

    def edge_params(self) -> tuple[float, float, float]:
        if self._edge is None:
            raise MissingEdgeData(
                "tabulated density has no (c, beta) edge data; pass edge=(c, beta)"
            )
        c, beta = self._edge
        return (c, beta, self._delta)


@dataclass(frozen=True)
class PowerMoments:
    """Abstract moment sequence m_j = j^(-s); s = 1 is the Riemann case."""

    s: float

    def __post_init__(self) -> None:
        if not (self.s > 0.0):
            raise ValueError(f"power moments need s > 0, got {self.s}")

    def moments(self, j) -> np.ndarray:
        return np.asarray(j, dtype=np.float64) ** (-self.s)


class MomentSequence:
    """A decreasing sequence m_j in (0, 1] with a tail model.

    ``evaluator`` maps an integer array j >= 1 to m_j.  ``tail`` may be None
    for raw user sequences, in which case any operation that must bound a
    truncation error raises TailUnavailable.  ``power_law`` marks sequences
    whose closed form is exactly L (j+shift)^(-alpha).
    """

    def __init__(
        self,
        evaluator: Callable[[np.ndarray], np.ndarray],
        tail: TailModel | None,
        provenance: str = "abstract",
        power_law: PowerLawForm | None = None,
    ) -> None:
        self._evaluator = evaluator
        self.tail = tail
        self.provenance = provenance
        self.power_law = power_law

    def moments(self, j) -> np.ndarray:
        j = np.asarray(j)
        return np.asarray(self._evaluator(j), dtype=np.float64)

    def moment(self, j: int) -> float:
        return float(self.moments(np.array([j]))[0])

    def __call__(self, j):
        return self.moments(j)


def _check_order(k: int) -> None:
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"moment order must be an integer >= 1, got {k!r}")


def moment(dist: EdgeDistribution, k: int) -> float:
    """k-th moment int_0^1 x^k f(x) dx, by closed form or exact segment sums."""
    _check_order(k)
    return dist.moment(int(k))


def moment_quadrature(dist: EdgeDistribution, k: int, tol: float = 1e-12) -> float:
    """k-th moment by adaptive quadrature; the independent cross-check path.

    Integrates int_0^1 (1-u)^k f(1-u) du after the substitution u = 1-x, with
    a graded knot list near u = 0 so the edge behaviour (1-x)^beta and the
    x^k concentration are both resolved.
    """
    _check_order(k)

    def integrand(u: float) -> float:
        return (1.0 - u) ** k * float(dist.pdf(np.array([1.0 - u]))[0])

    knots = [2.0**-m for m in range(40, 1, -3)]
    knots += [0.1 / (k + 1.0), 1.0 / (k + 1.0), min(10.0 / (k + 1.0), 0.9)]
    points = sorted({p for p in knots if 0.0 < p < 1.0})
    with warnings.catch_warnings():
        # subdivision-limit warnings surface as QuadratureFailure below
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err = integrate.quad(
            integrand, 0.0, 1.0, points=points, limit=400, epsabs=tol * 0.1, epsrel=1e-13
        )
    if err > max(tol, 1e-15):
        raise QuadratureFailure(
            f"moment quadrature error estimate {err:.3e} exceeds tolerance {tol:.3e}"
        )
    return value


def tail_model(dist: EdgeDistribution, delta: float | None = None) -> TailModel:
    """TailModel (L, alpha, delta) from the density's edge behaviour.

    L = c Gamma(beta+1) and alpha = beta+1; tabulated densities without
    user-supplied edge data raise MissingEdgeData.
    """
    c, beta, d = dist.edge_params()
    if delta is not None:
        d = float(delta)
    return TailModel(L=c * gamma_fn(beta + 1.0), alpha=beta + 1.0, delta=d)


def sample(dist: EdgeDistribution, rng: np.random.Generator) -> float:
    """One draw by inverse-CDF sampling."""
    return float(dist.ppf(rng.random()))


def sample_many(dist: EdgeDistribution, rng: np.random.Generator, size: int) -> np.ndarray:
    """Vectorized inverse-CDF sampling."""
    return np.asarray(dist.ppf(rng.random(size)), dtype=np.float64)


def _spot_check(seq: MomentSequence, provenance: str) -> None:
    js = np.unique(np.round(np.geomspace(1, 1000, 40)).astype(np.int64))
    m = seq.moments(js)
    if np.any(m <= 0.0) or np.any(m > 1.0 + 1e-12):
        raise InvalidTail(f"{provenance} moments must lie in (0, 1]")
    if np.any(np.diff(m) > 1e-15):
        raise InvalidTail(f"{provenance} moments are not monotonically decreasing")
    if seq.tail is not None:
        # the scaled sequence j^alpha m_j must be near L once j is large
        j = 10_000
        scaled = float(seq.moments(np.array([j]))[0]) * j**seq.tail.alpha
        if not (0.5 * seq.tail.L <= scaled <= 2.0 * seq.tail.L):
            raise InvalidTail(
                f"j^alpha m_j = {scaled:.6g} at j={j} is inconsistent with tail "
                f"constant L = {seq.tail.L:.6g}"
            )


def moment_sequence(source: EdgeDistribution | PowerMoments) -> MomentSequence:
    """MomentSequence from a distribution or the abstract power family.

    The abstract PowerMoments(s) form has m_j = j^(-s) with tail
    (L=1, alpha=s); PowerMoments(1.0) is the Riemann sequence.
    """
    if isinstance(source, PowerMoments):
        s = source.s
        seq = MomentSequence(
            evaluator=source.moments,
            tail=TailModel(L=1.0, alpha=s, delta=math.inf),
            provenance="abstract",
            power_law=PowerLawForm(L=1.0, alpha=s, shift=0.0),
        )
        return seq
    if isinstance(source, EdgeDistribution):
        try:
            tail = tail_model(source)
        except MissingEdgeData:
            raise
        seq = MomentSequence(
            evaluator=source.moments,
            tail=tail,
            provenance="from-distribution",
            power_law=source.power_law_form(),
        )
        _spot_check(seq, source.family)
        return seq
    raise TypeError(f"cannot build a moment sequence from {type(source).__name__}")


def riemann_sequence() -> MomentSequence:
    """The sequence m_j = 1/j, whose moment zeta function is the Riemann series."""
    return moment_sequence(PowerMoments(1.0))


def load_tabulated_csv(
    path: str,
    edge: tuple[float, float] | None = None,
    delta: float = 1.0,
    normalize: bool = False,
) -> TabulatedDensity:
    """Load a density table from CSV with header ``x,f``."""
    xs: list[float] = []
    fs: list[float] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["x", "f"]:
            raise ValueError(f"{path}: expected CSV header 'x,f'")
        for row in reader:
            if not row:
                continue
            xs.append(float(row[0]))
            fs.append(float(row[1]))
    return TabulatedDensity(xs, fs, edge=edge, delta=delta, normalize=normalize)
