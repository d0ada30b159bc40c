"""Power iteration and its static/dynamic generalized-momentum accelerations.

The momentum update is the normalized form of the monic matrix recurrence

    w_{k+1} = A w_k - beta_1 w_{k-1} - ... - beta_{m-1} w_{k-m+1},

with beta_j = p_{j+1} p0^j lambda_star^{j+1}, preceded by m-1 power steps
on p0*A.  The iterate then equals P_N(A/lambda_star) v0 up to normalization
and phase.  The dynamic variant re-estimates lambda_star each iteration
from the residual ratio rho_k via the contraction map
r(rho) = 1 / ((sigma^2/2) (log rho)^2 + 1) and the Rayleigh quotient.

Solvers are exposed both as plain functions and as sklearn-style
estimators (fit + get_params) for pipeline compatibility.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from .errors import NonFiniteIterate, ZeroVector
from .matio import matvec
from .prob import ProbVector, validate

_TINY = 1e-300


@dataclass
class IterationTrace:
    """Per-iteration solver record; NaN marks entries a step did not define."""

    h: np.ndarray
    nu: np.ndarray
    d: np.ndarray
    rho: np.ndarray
    r: np.ndarray
    beta: np.ndarray | None = None
    relerr: np.ndarray | None = None
    stalled: bool = field(default=False)
    n_steps: int = 0


def relative_error(x: np.ndarray, x_true: np.ndarray) -> float:
    """Phase-aligned relative error ||w x - x_true|| / ||x_true||.

    w = (x* x_true)/(x* x) removes complex scale and phase ambiguity, so
    any nonzero multiple of x_true scores 0.
    """
    x = np.asarray(x)
    x_true = np.asarray(x_true)
    nx = np.linalg.norm(x)
    nt = np.linalg.norm(x_true)
    if nx == 0 or nt == 0:
        raise ZeroVector("relative_error needs nonzero vectors")
    omega = np.vdot(x, x_true) / np.vdot(x, x)
    return float(np.linalg.norm(omega * x - x_true) / nt)


def momentum_params(p: ProbVector, lambda_star: float) -> np.ndarray:
    """beta_j = p_{j+1} p0^j lambda_star^{j+1} for j = 1..m-1."""
    if lambda_star <= 0:
        raise ValueError(f"lambda_star must be > 0, got {lambda_star}")
    pe = p.entries
    return np.array(
        [pe[j + 1] * pe[0] ** j * lambda_star ** (j + 1) for j in range(1, p.order)]
    )


def rate_from_ratio(sigma2: float, r: float) -> float:
    """Asymptotically optimal rate rho(r) = exp(-sigma^{-1} sqrt(2(1/r - 1)))."""
    if not 0 < r <= 1:
        raise ValueError(f"r must be in (0, 1], got {r}")
    return float(np.exp(-np.sqrt(2.0 * (1.0 / r - 1.0) / sigma2)))


def ratio_from_rate(sigma2: float, rho: float) -> float:
    """Inverse map r(rho) = 1 / ((sigma^2/2) (log rho)^2 + 1)."""
    if not 0 < rho <= 1:
        raise ValueError(f"rho must be in (0, 1], got {rho}")
    return float(1.0 / (0.5 * sigma2 * np.log(rho) ** 2 + 1.0))


def contraction_threshold(sigma2: float) -> float:
    """Infimum rho_1 of the interval on which r(rho) is a contraction."""
    if sigma2 <= 0:
        raise ValueError(f"sigma2 must be > 0, got {sigma2}")
    sigma = np.sqrt(sigma2)
    return float((-sigma2 + sigma * np.sqrt(sigma2 + 4.0)) / 2.0)


def random_unit_vector(n: int, seed: int) -> np.ndarray:
    """Seeded standard-normal start vector, unit-normalized."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)


def _empty_trace(N: int, m_minus_1: int = 0, with_relerr: bool = False) -> IterationTrace:
    nan = np.full(N + 1, np.nan)
    return IterationTrace(
        h=nan.copy(),
        nu=np.full(N + 1, np.nan, dtype=complex),
        d=nan.copy(),
        rho=nan.copy(),
        r=nan.copy(),
        beta=np.full((N + 1, m_minus_1), np.nan) if m_minus_1 else None,
        relerr=nan.copy() if with_relerr else None,
    )


def _normalize(v: np.ndarray):
    if not np.all(np.isfinite(v)):
        raise NonFiniteIterate("iterate contains NaN or Inf")
    h = float(np.linalg.norm(v))
    if h < _TINY:
        raise ZeroVector("iterate collapsed to zero")
    return h, v / h


def power_iterate(A, v0: np.ndarray, N: int, x_true=None):
    """Plain power method; records h_k, nu_k, d_k (and relerr if truth given)."""
    trace = _empty_trace(N, with_relerr=x_true is not None)
    h, x = _normalize(np.asarray(v0, dtype=float if not np.iscomplexobj(v0) else complex))
    trace.h[0] = h
    if x_true is not None:
        trace.relerr[0] = relative_error(x, x_true)
    for k in range(N):
        v = matvec(A, x)
        nu = np.vdot(x, v)
        d = float(np.linalg.norm(v - nu * x))
        h, x = _normalize(v)
        trace.h[k + 1] = h
        trace.nu[k] = nu
        trace.d[k] = d
        if x_true is not None:
            trace.relerr[k + 1] = relative_error(x, x_true)
    trace.n_steps = N
    return x, trace


def _warmup(A, v0, p: ProbVector, trace: IterationTrace, x_true):
    """m-1 power steps on p0*A; returns the list of iterates x_0..x_{m-1}."""
    h, x = _normalize(np.asarray(v0, dtype=float if not np.iscomplexobj(v0) else complex))
    trace.h[0] = h
    if x_true is not None:
        trace.relerr[0] = relative_error(x, x_true)
    xs = [x]
    for k in range(p.order - 1):
        v = p.p0 * matvec(A, xs[-1])
        nu = np.vdot(xs[-1], v)
        trace.nu[k] = nu
        trace.d[k] = float(np.linalg.norm(v - nu * xs[-1]))
        h, x = _normalize(v)
        trace.h[k + 1] = h
        xs.append(x)
        if x_true is not None:
            trace.relerr[k + 1] = relative_error(x, x_true)
    return xs


def _momentum_update(A, xs, k, betas, trace):
    """Shared normalized update of Algorithms 2 and 3 for one iteration."""
    v = matvec(A, xs[k])
    nu = np.vdot(xs[k], v)
    d = float(np.linalg.norm(v - nu * xs[k]))
    u = v.astype(complex) if np.iscomplexobj(v) else v.copy()
    H = 1.0
    for j in range(1, len(betas) + 1):
        H *= trace.h[k + 1 - j]
        if betas[j - 1]:
            u -= (betas[j - 1] / H) * xs[k - j]
    h, x_next = _normalize(u)
    trace.nu[k] = nu
    trace.d[k] = d
    trace.h[k + 1] = h
    return x_next, d


def static_momentum(A, v0: np.ndarray, p: ProbVector, lambda_star: float, N: int,
                    x_true=None):
    """Generalized momentum power method with fixed parameters.

    After m-1 warm-up power steps on p0*A, each iteration subtracts the
    history terms (beta_j / H_{k,j}) x_{k-j}; the output equals the
    normalized P_N(A/lambda_star) v0 up to phase.
    """
    m = p.order
    if N < m:
        raise ValueError(f"need N >= m = {m}, got {N}")
    betas = momentum_params(p, lambda_star)
    trace = _empty_trace(N, m_minus_1=m - 1, with_relerr=x_true is not None)
    xs = _warmup(A, v0, p, trace, x_true)
    for k in range(m - 1, N):
        trace.beta[k] = betas
        x_next, _ = _momentum_update(A, xs, k, betas, trace)
        xs.append(x_next)
        if x_true is not None:
            trace.relerr[k + 1] = relative_error(x_next, x_true)
    trace.n_steps = N
    return xs[N], trace


def dynamic_momentum(A, v0: np.ndarray, p: ProbVector, N: int, x_true=None,
                     tol: float | None = None):
    """Momentum power method with per-iteration parameter estimation.

    rho_{k-1} = min{d_k / d_{k-1}, 1}, floored at the contraction threshold,
    maps to r_k = 1/((sigma^2/2)(log rho)^2 + 1); the momentum parameters
    are rebuilt from the lambda estimate nu_k * r_k each iteration.  The
    first momentum iteration runs with zero parameters because no in-loop
    residual ratio exists yet.  An exact eigenvector hit (d_k = 0) returns
    early with the stalled flag set.
    """
    m = p.order
    if N < m:
        raise ValueError(f"need N >= m = {m}, got {N}")
    sigma2 = p.variance
    rho_floor = contraction_threshold(sigma2) + 1e-6
    trace = _empty_trace(N, m_minus_1=m - 1, with_relerr=x_true is not None)
    xs = _warmup(A, v0, p, trace, x_true)
    zero_betas = np.zeros(m - 1)
    for k in range(m - 1, N):
        # peek at the residual of the pending step to form the ratio
        if k >= m and trace.d[k - 1] > 0:
            v_prev_d = trace.d[k - 1]
        else:
            v_prev_d = None
        v = matvec(A, xs[k])
        nu = np.vdot(xs[k], v)
        d = float(np.linalg.norm(v - nu * xs[k]))
        if tol is not None and d <= tol:
            trace.nu[k] = nu
            trace.d[k] = d
            trace.n_steps = k
            h, x = _normalize(v)
            return x, trace
        if d == 0.0:
            trace.stalled = True
            trace.nu[k] = nu
            trace.d[k] = d
            trace.n_steps = k
            return xs[k], trace
        if v_prev_d is not None:
            rho = min(d / v_prev_d, 1.0)
            rho = max(rho, rho_floor)
            r = ratio_from_rate(sigma2, rho)
            lam_est = float(np.real(nu)) * r
            betas = momentum_params(p, abs(lam_est)) if lam_est > 0 else zero_betas
            trace.rho[k - 1] = rho
            trace.r[k] = r
        else:
            betas = zero_betas
        trace.beta[k] = betas
        u = v.astype(complex) if np.iscomplexobj(v) else v.copy()
        H = 1.0
        for j in range(1, m):
            H *= trace.h[k + 1 - j]
            if betas[j - 1]:
                u -= (betas[j - 1] / H) * xs[k - j]
        h, x_next = _normalize(u)
        trace.nu[k] = nu
        trace.d[k] = d
        trace.h[k + 1] = h
        xs.append(x_next)
        if x_true is not None:
            trace.relerr[k + 1] = relative_error(x_next, x_true)
    trace.n_steps = N
    return xs[N], trace


def _as_prob(prob) -> ProbVector:
    return prob if isinstance(prob, ProbVector) else validate(prob)


class PowerIteration(BaseEstimator):
    """Dominant-eigenpair estimator via plain power iteration."""

    def __init__(self, n_iter=100, seed=0):
        self.n_iter = n_iter
        self.seed = seed

    def fit(self, X, y=None, v0=None, x_true=None):
        if v0 is None:
            v0 = random_unit_vector(X.shape[0], self.seed)
        x, trace = power_iterate(X, v0, self.n_iter, x_true=x_true)
        self.eigenvector_ = x
        self.eigenvalue_ = float(np.real(trace.nu[self.n_iter - 1]))
        self.trace_ = trace
        self.n_features_in_ = X.shape[0]
        return self


class StaticMomentumPower(BaseEstimator):
    """Generalized momentum power method with fixed lambda_star."""

    def __init__(self, prob=(0.75, 0.0, 0.0, 0.25), lambda_star=1.0, n_iter=100,
                 seed=0):
        self.prob = prob
        self.lambda_star = lambda_star
        self.n_iter = n_iter
        self.seed = seed

    def fit(self, X, y=None, v0=None, x_true=None):
        p = _as_prob(self.prob)
        if v0 is None:
            v0 = random_unit_vector(X.shape[0], self.seed)
        x, trace = static_momentum(X, v0, p, self.lambda_star, self.n_iter,
                                   x_true=x_true)
        self.eigenvector_ = x
        self.eigenvalue_ = float(np.real(trace.nu[self.n_iter - 1]))
        self.trace_ = trace
        self.n_features_in_ = X.shape[0]
        return self


class DynamicMomentumPower(BaseEstimator):
    """Momentum power method that estimates lambda_star on the fly."""

    def __init__(self, prob=(0.75, 0.0, 0.0, 0.25), n_iter=100, seed=0, tol=None):
        self.prob = prob
        self.n_iter = n_iter
        self.seed = seed
        self.tol = tol

    def fit(self, X, y=None, v0=None, x_true=None):
        p = _as_prob(self.prob)
        if v0 is None:
            v0 = random_unit_vector(X.shape[0], self.seed)
        x, trace = dynamic_momentum(X, v0, p, self.n_iter, x_true=x_true,
                                    tol=self.tol)
        self.eigenvector_ = x
        last = trace.n_steps if trace.n_steps < self.n_iter else self.n_iter - 1
        self.eigenvalue_ = float(np.real(trace.nu[last]))
        self.trace_ = trace
        self.n_features_in_ = X.shape[0]
        return self
