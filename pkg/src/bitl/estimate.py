"""Maximum-likelihood fitting of the joint model.

The likelihood is maximized by Nelder-Mead simplex search on an
unconstrained parameterization theta = (log xi1, log xi2, atanh delta),
so the box constraints (shapes positive, |delta| <= 1) hold by
construction and no projection logic is needed.  Five starts are used:
a moment-style start (shapes from marginal median inversion, delta from
the sample Kendall tau through delta = 9*tau/2, clamped) plus four
deterministically jittered copies; the dependence surface is shallow in
delta, which is exactly what the tau-based start compensates for.

Standard errors come from the observed information: the central-
difference Hessian of the log likelihood at the optimum, inverted when
negative definite.  Boundary estimates (|delta| beyond 0.999) and
non-invertible Hessians yield absent standard errors with a warning.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import optimize, stats

from bitl.bivariate import BitlParams, joint_log_pdf
from bitl.dataio import Dataset

__all__ = [
    "FitError",
    "FitOptions",
    "FitResult",
    "loglik",
    "fit_mle",
    "std_errors",
    "itl_shape_mle",
    "to_unconstrained",
    "from_unconstrained",
]

_DELTA_BOUNDARY = 0.999
_JITTER_SEED = 20_240_801  # fixed so a fit is a pure function of (data, options)


class FitError(RuntimeError):
    """Raised when no start yields a usable likelihood."""


@dataclass(frozen=True)
class FitOptions:
    starts: int = 5
    tol: float = 1e-8  # convergence: simplex diameter in theta-space
    max_evals: int = 2000  # per start

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_evals < 10:
            raise ValueError("max_evals must be >= 10")


@dataclass
class FitResult:
    params: BitlParams
    loglik: float
    se: tuple[float, float, float] | None
    aic: float
    bic: float
    converged: bool
    iterations: int
    boundary_flag: bool

    def to_dict(self) -> dict:
        se = None
        if self.se is not None:
            se = {"xi1": self.se[0], "xi2": self.se[1], "delta": self.se[2]}
        return {
            "params": {
                "xi1": self.params.xi1,
                "xi2": self.params.xi2,
                "delta": self.params.delta,
            },
            "loglik": self.loglik,
            "se": se,
            "aic": self.aic,
            "bic": self.bic,
            "converged": self.converged,
            "iterations": self.iterations,
            "boundary_flag": self.boundary_flag,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FitResult":
        se = d["se"]
        return cls(
            params=BitlParams(d["params"]["xi1"], d["params"]["xi2"], d["params"]["delta"]),
            loglik=d["loglik"],
            se=None if se is None else (se["xi1"], se["xi2"], se["delta"]),
            aic=d["aic"],
            bic=d["bic"],
            converged=d["converged"],
            iterations=d["iterations"],
            boundary_flag=d["boundary_flag"],
        )


def loglik(params: BitlParams, data: Dataset) -> float:
    """Sum of log joint densities; -inf if any observation has density 0.

    A zero density can only occur at the |delta| = 1 boundary, where the
    dependence bracket may vanish.
    """
    values = joint_log_pdf(data.x, data.y, params)
    total = float(np.sum(values))
    return total if np.isfinite(total) else -np.inf


def to_unconstrained(params: BitlParams) -> np.ndarray:
    """Map (xi1, xi2, delta) to the unconstrained search space."""
    delta = np.clip(params.delta, -1.0 + 1e-15, 1.0 - 1e-15)
    return np.array([np.log(params.xi1), np.log(params.xi2), np.arctanh(delta)])


def from_unconstrained(theta) -> BitlParams:
    """Inverse of `to_unconstrained`: exp on shapes, tanh on delta."""
    theta = np.asarray(theta, dtype=float)
    return BitlParams(np.exp(theta[0]), np.exp(theta[1]), np.tanh(theta[2]))


def median_shape(values: np.ndarray) -> float:
    """Shape whose distribution median equals the sample median."""
    m = float(np.median(values))
    return float(np.log(2.0) / (2.0 * np.log1p(m) - np.log1p(2.0 * m)))


def itl_shape_mle(values: np.ndarray) -> float:
    """Exact univariate shape MLE: n / sum(2*log(x+1) - log(2x+1)).

    The univariate score equation is linear in 1/shape, so the optimizer
    is closed-form; used for the independence submodel.
    """
    values = np.asarray(values, dtype=float)
    denom = float(np.sum(2.0 * np.log1p(values) - np.log1p(2.0 * values)))
    return float(values.size / denom)


def _start_points(data: Dataset, n_starts: int) -> list[np.ndarray]:
    tau = stats.kendalltau(data.x, data.y).statistic
    if not np.isfinite(tau):
        tau = 0.0
    delta0 = float(np.clip(4.5 * tau, -0.99, 0.99))
    base = to_unconstrained(
        BitlParams(median_shape(data.x), median_shape(data.y), delta0)
    )
    rng = np.random.default_rng(_JITTER_SEED)
    starts = [base]
    for _ in range(n_starts - 1):
        starts.append(base + rng.normal(scale=0.5, size=3))
    return starts


def _simplex_diameter(simplex: np.ndarray) -> float:
    diffs = simplex[:, None, :] - simplex[None, :, :]
    return float(np.max(np.abs(diffs)))


def fit_mle(data: Dataset, opts: FitOptions | None = None) -> FitResult:
    """Multistart Nelder-Mead MLE with observed-information standard errors."""
    if opts is None:
        opts = FitOptions()
    if data.n < 4:
        raise FitError(f"need at least 4 pairs to fit 3 parameters, got {data.n}")
    if np.all(data.x == data.x[0]) and np.all(data.y == data.y[0]):
        raise FitError("degenerate dataset: all pairs identical")

    def objective(theta: np.ndarray) -> float:
        if not np.all(np.isfinite(theta)):
            return np.inf
        try:
            params = from_unconstrained(theta)
        except ValueError:
            return np.inf
        return -loglik(params, data)

    best = None
    for theta0 in _start_points(data, opts.starts):
        res = optimize.minimize(
            objective,
            theta0,
            method="Nelder-Mead",
            options={
                "xatol": 0.5 * opts.tol,
                "fatol": 1e-9,
                "maxfev": opts.max_evals,
                "disp": False,
            },
        )
        if np.isfinite(res.fun) and (best is None or res.fun < best.fun):
            best = res
    if best is None:
        raise FitError("log likelihood was non-finite at every start")

    params = from_unconstrained(best.x)
    ll = -float(best.fun)
    converged = _simplex_diameter(best.final_simplex[0]) < opts.tol
    boundary = abs(params.delta) > _DELTA_BOUNDARY
    se = std_errors(params, data, boundary_flag=boundary)
    n = data.n
    k = 3
    return FitResult(
        params=params,
        loglik=ll,
        se=se,
        aic=-2.0 * ll + 2.0 * k,
        bic=-2.0 * ll + k * np.log(n),
        converged=bool(converged),
        iterations=int(best.nit),
        boundary_flag=bool(boundary),
    )


def hessian(fun, point: np.ndarray, rel_step: float = 1e-4) -> np.ndarray:
    """Central-difference Hessian; every entry computed independently."""
    point = np.asarray(point, dtype=float)
    k = point.size
    h = rel_step * np.maximum(np.abs(point), 1.0)
    out = np.empty((k, k))
    f0 = fun(point)
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = h[i]
        out[i, i] = (fun(point + ei) - 2.0 * f0 + fun(point - ei)) / (h[i] * h[i])
        for j in range(k):
            if j == i:
                continue
            ej = np.zeros(k)
            ej[j] = h[j]
            out[i, j] = (
                fun(point + ei + ej)
                - fun(point + ei - ej)
                - fun(point - ei + ej)
                + fun(point - ei - ej)
            ) / (4.0 * h[i] * h[j])
    return out


def std_errors(
    params: BitlParams, data: Dataset, boundary_flag: bool | None = None
) -> tuple[float, float, float] | None:
    """Observed-information standard errors at an interior optimum.

    Returns None (with a warning) when the estimate sits on the delta
    boundary or the negative Hessian is not positive definite.
    """
    if boundary_flag is None:
        boundary_flag = abs(params.delta) > _DELTA_BOUNDARY
    if boundary_flag:
        warnings.warn("delta estimate is on the boundary; standard errors unavailable")
        return None

    def ll_at(p: np.ndarray) -> float:
        try:
            return loglik(BitlParams(p[0], p[1], p[2]), data)
        except ValueError:
            return -np.inf

    point = np.array(params.astuple())
    H = hessian(ll_at, point)
    if not np.all(np.isfinite(H)):
        warnings.warn("Hessian evaluation failed; standard errors unavailable")
        return None
    try:
        cov = np.linalg.inv(-H)
    except np.linalg.LinAlgError:
        warnings.warn("observed information is singular; standard errors unavailable")
        return None
    diag = np.diag(cov)
    if np.any(diag <= 0.0):
        warnings.warn(
            "observed information is not positive definite; standard errors unavailable"
        )
        return None
    se = np.sqrt(diag)
    return (float(se[0]), float(se[1]), float(se[2]))
