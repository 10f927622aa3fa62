"""Brute-force minimum-time oracle.

Trusts only the bang-bang structure (first arc, ``k - 1`` half-turns, last
arc) and searches first/last arc durations on a grid by simulation.  None
of the closed-form circle-intersection algebra in :mod:`fuzzytoc.solver` is
used, so the two routes check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dynamics import TWO_PI, BangBangPlan, arc_end, plan_endpoint


class OracleMissError(RuntimeError):
    """No simulated plan landed within ``accept_radius`` of the target."""


@dataclass(frozen=True)
class OracleConfig:
    tau_steps: int = 512
    sigma_steps: int = 512
    k_max_search: int = 8
    accept_radius: float = 0.02
    refine_iters: int = 30
    seeds_per_branch: int = 16

    def __post_init__(self):
        for name in ("tau_steps", "sigma_steps", "k_max_search", "refine_iters", "seeds_per_branch"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not self.accept_radius > 0:
            raise ValueError("accept_radius must be > 0")

    @property
    def grid_bound(self) -> float:
        """Documented bound on the oracle's time error."""
        return self.accept_radius + TWO_PI / min(self.tau_steps, self.sigma_steps)


def _endpoints(S, T, sign: int, k: int, tau, sigma):
    """Simulated endpoints for arrays of first (``tau``) and last (``sigma``) durations."""
    tau, sigma = np.broadcast_arrays(np.asarray(tau, float), np.asarray(sigma, float))
    p = np.broadcast_to(np.asarray(S, float), tau.shape + (2,))
    p = arc_end(p, sign, tau)
    if k == 0:
        return p
    cur = sign
    for _ in range(k - 1):
        cur = -cur
        p = arc_end(p, cur, math.pi)
    return arc_end(p, -cur, sigma)


def _errors(S, T, sign, k, tau, sigma):
    end = _endpoints(S, T, sign, k, tau, sigma)
    return np.hypot(end[..., 0] - T[0], end[..., 1] - T[1])


def _local_minima(err: np.ndarray) -> np.ndarray:
    """Flat indices of cells no larger than any of their periodic neighbours."""
    mask = np.ones(err.shape, dtype=bool)
    axes = range(err.ndim)
    shifts = [(-1, 0, 1)] * err.ndim
    for offs in np.array(np.meshgrid(*shifts, indexing="ij")).reshape(err.ndim, -1).T:
        if not offs.any():
            continue
        mask &= err <= np.roll(err, tuple(offs), axis=tuple(axes))
    return np.flatnonzero(mask)


def _refine(S, T, sign, k, tau, sigma, h_tau, h_sigma, iters):
    """Pattern search on (tau, sigma) with step halving, all seeds at once."""
    offs = np.array([(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)], dtype=float)
    if k == 0:
        offs = offs[offs[:, 1] == 0]
    rows = np.arange(len(tau))
    for _ in range(iters):
        cand_t = np.clip(tau[:, None] + offs[None, :, 0] * h_tau, 0.0, TWO_PI)
        cand_s = np.clip(sigma[:, None] + offs[None, :, 1] * h_sigma, 0.0, TWO_PI)
        j = np.argmin(_errors(S, T, sign, k, cand_t, cand_s), axis=1)
        tau, sigma = cand_t[rows, j], cand_s[rows, j]
        h_tau *= 0.5
        h_sigma *= 0.5
    return _polish(S, T, sign, k, tau, sigma)


def _polish(S, T, sign, k, tau, sigma, iters=60, fd=1e-7):
    """Levenberg-Marquardt on the simulated endpoint residual.

    Coordinate search stalls in the long narrow valleys that appear when the
    first and last circles are nearly tangent; a damped Gauss-Newton step
    with a finite-difference Jacobian follows the valley floor.
    """
    T_arr = np.asarray(T, float)
    n_par = 1 if k == 0 else 2

    def resid(t, s):
        return _endpoints(S, T, sign, k, t, s) - T_arr

    lam = np.full(len(tau), 1e-3)
    r = resid(tau, sigma)
    cost = np.einsum("ij,ij->i", r, r)
    for _ in range(iters):
        if len(tau) == 0:
            break
        cols = [(resid(tau + fd, sigma) - resid(tau - fd, sigma)) / (2 * fd)]
        if n_par == 2:
            cols.append((resid(tau, sigma + fd) - resid(tau, sigma - fd)) / (2 * fd))
        J = np.stack(cols, axis=-1)  # (n, 2, n_par)
        JtJ = np.einsum("nij,nik->njk", J, J)
        Jtr = np.einsum("nij,ni->nj", J, r)
        A = JtJ + lam[:, None, None] * np.eye(n_par)
        step = -np.linalg.solve(A, Jtr[..., None])[..., 0]
        new_t = np.clip(tau + step[:, 0], 0.0, TWO_PI)
        new_s = np.clip(sigma + step[:, 1], 0.0, TWO_PI) if n_par == 2 else sigma
        new_r = resid(new_t, new_s)
        new_cost = np.einsum("ij,ij->i", new_r, new_r)
        ok = new_cost < cost
        tau = np.where(ok, new_t, tau)
        sigma = np.where(ok, new_s, sigma)
        r = np.where(ok[:, None], new_r, r)
        cost = np.where(ok, new_cost, cost)
        lam = np.clip(np.where(ok, lam / 3.0, lam * 4.0), 1e-12, 1e12)
        if cost.max() < 1e-26:
            break
    return tau, sigma, np.sqrt(cost)


def search(S: Sequence[float], T: Sequence[float], cfg: OracleConfig = OracleConfig()):
    """Best accepted ``(time, plan)`` found by the grid search, or ``None``."""
    S = (float(S[0]), float(S[1]))
    T = (float(T[0]), float(T[1]))
    h_t = TWO_PI / cfg.tau_steps
    h_s = TWO_PI / cfg.sigma_steps
    taus = np.arange(cfg.tau_steps) * h_t
    sigmas = np.arange(cfg.sigma_steps) * h_s
    best = None
    for k in range(cfg.k_max_search + 1):
        for sign in (-1, 1):
            if k == 0:
                err = _errors(S, T, sign, 0, taus, 0.0)
                idx = _local_minima(err)
                seed_t, seed_s = taus[idx], np.zeros(len(idx))
            else:
                err = _errors(S, T, sign, k, taus[:, None], sigmas[None, :])
                idx = _local_minima(err)
                it, js = np.unravel_index(idx, err.shape)
                seed_t, seed_s = taus[it], sigmas[js]
            order = np.argsort(err.ravel()[idx], kind="stable")[: cfg.seeds_per_branch]
            tau, sigma, e = _refine(S, T, sign, k, seed_t[order], seed_s[order],
                                    h_t, h_s, cfg.refine_iters)
            for t1, s1, e1 in zip(tau, sigma, e):
                if e1 > cfg.accept_radius:
                    continue
                plan = BangBangPlan.build(sign, t1, k, s1)
                end = plan_endpoint(S, plan)
                if math.hypot(end[0] - T[0], end[1] - T[1]) > cfg.accept_radius:
                    continue
                if best is None or plan.total_time < best[0]:
                    best = (plan.total_time, plan)
    return best


def brute_force_min_time(S: Sequence[float], T: Sequence[float], cfg: OracleConfig = OracleConfig()) -> float:
    found = search(S, T, cfg)
    if found is None:
        raise OracleMissError(f"oracle found no plan from {tuple(S)} to {tuple(T)}; refine cfg")
    return found[0]
