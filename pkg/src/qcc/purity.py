"""Optimal-output-purity functionals: maximal output p-norm and minimal
output entropy, plus multiplicativity/additivity gap measurement.

Both functionals are optimized over pure input states (the supremum over all
states is attained there).  The optimizers are multistart local ascents and
therefore report *certified one-sided bounds*: the returned value is always
achieved by ``optimizer_state``, never an unverified global claim.

For p >= 2 the engine is the fixed-point iteration

    psi  <-  principal eigenvector of  Phi^+( Phi(psi psi^+)^(p-1) ),

the natural power-iteration analogue, which ascends ``Tr Phi(rho)^p``.
For p in [1, 2) and for the entropy, it falls back to projected gradient
ascent on the unit sphere with backtracking line search.  ``p = inf``
ascends the top output eigenvalue through its eigenvector's pullback.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import channel as chn
from .channel import KrausChannel
from .conjugate import conjugate_kraus
from .linalg import (
    DEFAULT_TOL,
    Spectrum,
    dagger,
    hermitian_eigh,
    nonzero_spectrum,
    schatten_norm,
)
from .random import derived_rng, haar_state


@dataclass(frozen=True)
class OptimizerOptions:
    """Multistart optimizer configuration."""

    restarts: int = 32
    tol: float = 1e-10
    seed: int = 0
    max_iter: int = 2000


DEFAULT_OPTS = OptimizerOptions()


@dataclass(frozen=True)
class PurityReport:
    """Result of a purity optimization.

    ``value`` is the objective evaluated at ``optimizer_state``; for the
    p-norm it is a lower bound on the true supremum, for the entropy an
    upper bound on the true infimum.
    """

    value: float
    optimizer_state: np.ndarray
    p: float
    restarts: int
    converged: bool
    iterations: int


@dataclass(frozen=True)
class MultiplicativityGap:
    lhs: float
    rhs: float
    gap: float
    witness_state: np.ndarray | None
    report_1: PurityReport
    report_2: PurityReport
    report_12: PurityReport


@dataclass(frozen=True)
class EntropyAdditivityGap:
    lhs: float
    rhs: float
    gap: float
    report_1: PurityReport
    report_2: PurityReport
    report_12: PurityReport


def _sigma(ch: KrausChannel, psi: np.ndarray) -> np.ndarray:
    return chn.apply(ch, np.outer(psi, psi.conj()))


def _herm_power(w: np.ndarray, v: np.ndarray, q: float) -> np.ndarray:
    """(sum_i w_i^q v_i v_i^+) with eigenvalues clipped to the support."""
    wmax = max(float(w.max()), 0.0)
    wq = np.zeros_like(w)
    mask = w > 1e-15 * max(wmax, 1e-300)
    wq[mask] = w[mask] ** q
    return (v * wq) @ dagger(v)


def _top_eigvec(m: np.ndarray) -> np.ndarray:
    w, v = hermitian_eigh(m)
    return v[:, 0]


def _pnorm_objective(ch: KrausChannel, psi: np.ndarray, p: float) -> float:
    w = np.linalg.eigvalsh(_sigma(ch, psi))
    w = np.clip(w, 0.0, None)
    if math.isinf(p):
        return float(w.max())
    return float((w**p).sum())


def _fixed_point_restart(ch, p, psi, tol, max_iter):
    obj = _pnorm_objective(ch, psi, p)
    for it in range(1, max_iter + 1):
        w, v = hermitian_eigh(_sigma(ch, psi))
        w = np.clip(w, 0.0, None)
        m = chn.adjoint_apply(ch, _herm_power(w, v, p - 1))
        psi = _top_eigvec(m)
        new = _pnorm_objective(ch, psi, p)
        if abs(new - obj) <= tol * max(abs(new), 1e-12):
            return psi, it, True
        obj = new
    return psi, max_iter, False


def _pinf_restart(ch, psi, tol, max_iter):
    obj = _pnorm_objective(ch, psi, np.inf)
    for it in range(1, max_iter + 1):
        w, v = hermitian_eigh(_sigma(ch, psi))
        top = v[:, 0]
        m = chn.adjoint_apply(ch, np.outer(top, top.conj()))
        psi = _top_eigvec(m)
        new = _pnorm_objective(ch, psi, np.inf)
        if abs(new - obj) <= tol * max(abs(new), 1e-12):
            return psi, it, True
        obj = new
    return psi, max_iter, False


def _entropy_nat(ch: KrausChannel, psi: np.ndarray) -> float:
    w = np.clip(np.linalg.eigvalsh(_sigma(ch, psi)), 0.0, None)
    nz = w[w > 0]
    return float(-(nz * np.log(nz)).sum())


def _gradient_restart(ch, psi, tol, max_iter, p=None):
    """Projected gradient ascent on the unit sphere with backtracking.

    Maximizes ``Tr sigma^p`` when ``p`` is given, else ``-S(sigma)``.
    """

    def phi_and_grad(psi):
        w, v = hermitian_eigh(_sigma(ch, psi))
        w = np.clip(w, 0.0, None)
        if p is not None:
            phi = float((w**p).sum())
            grad_op = p * _herm_power(w, v, p - 1)
        else:
            nz = w[w > 0]
            phi = float((nz * np.log(nz)).sum())  # -S
            logw = np.log(np.maximum(w, 1e-18))
            grad_op = (v * (logw + 1.0)) @ dagger(v)
        return phi, chn.adjoint_apply(ch, grad_op) @ psi

    phi, g = phi_and_grad(psi)
    step = 1.0
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        r = g - psi * np.vdot(psi, g)
        rnorm2 = float(np.vdot(r, r).real)
        if rnorm2 < 1e-30:
            converged = True
            break
        accepted = False
        for _ in range(60):
            cand = psi + step * g
            cand = cand / np.linalg.norm(cand)
            phi_new, g_new = phi_and_grad(cand)
            if phi_new >= phi + 1e-4 * step * rnorm2:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            converged = True
            break
        moved = abs(phi_new - phi)
        psi, g = cand, g_new
        phi = phi_new
        step = min(step * 2.0, 1e6)
        if moved <= tol * max(abs(phi), 1e-12):
            converged = True
            break
    return psi, it, converged


def nu_p(
    ch: KrausChannel,
    p: float,
    opts: OptimizerOptions = DEFAULT_OPTS,
    initial_states=(),
) -> PurityReport:
    """Maximal output p-norm ``sup_psi || Phi(psi psi^+) ||_p``.

    Returns a certified lower bound achieved by ``optimizer_state``;
    ``converged`` reports whether the winning restart's relative objective
    change fell below ``opts.tol``.  Extra deterministic starting vectors
    can be supplied via ``initial_states`` (used e.g. to seed a product
    channel with the product of single-channel optimizers).
    """
    if p < 1:
        raise ValueError(f"nu_p requires p >= 1, got {p}")
    chn.require_cpt(ch, tol=1e-8)

    if math.isinf(p):
        engine = lambda psi0: _pinf_restart(ch, psi0, opts.tol, opts.max_iter)
    elif p >= 2:
        engine = lambda psi0: _fixed_point_restart(ch, p, psi0, opts.tol, opts.max_iter)
    else:
        engine = lambda psi0: _gradient_restart(ch, psi0, opts.tol, opts.max_iter, p=p)

    starts = [np.asarray(s, dtype=complex) for s in initial_states]
    starts += [haar_state(ch.d_in, derived_rng(opts.seed, r)) for r in range(opts.restarts)]

    best_val = -np.inf
    best_state = starts[0]
    best_conv = False
    total_iter = 0
    for psi0 in starts:
        psi, iters, conv = engine(psi0 / np.linalg.norm(psi0))
        total_iter += iters
        val = schatten_norm(_sigma(ch, psi), p)
        if val > best_val:
            best_val, best_state, best_conv = val, psi, conv
    return PurityReport(
        value=best_val,
        optimizer_state=best_state,
        p=p,
        restarts=len(starts),
        converged=best_conv,
        iterations=total_iter,
    )


def s_min(
    ch: KrausChannel,
    opts: OptimizerOptions = DEFAULT_OPTS,
    base: float = 2.0,
    initial_states=(),
) -> PurityReport:
    """Minimal output entropy, reported in the given log base (default bits).

    A certified upper bound achieved by ``optimizer_state``.
    """
    chn.require_cpt(ch, tol=1e-8)
    engine = lambda psi0: _gradient_restart(ch, psi0, opts.tol, opts.max_iter, p=None)
    starts = [np.asarray(s, dtype=complex) for s in initial_states]
    starts += [haar_state(ch.d_in, derived_rng(opts.seed, r)) for r in range(opts.restarts)]

    best_val = np.inf
    best_state = starts[0]
    best_conv = False
    total_iter = 0
    for psi0 in starts:
        psi, iters, conv = engine(psi0 / np.linalg.norm(psi0))
        total_iter += iters
        val = _entropy_nat(ch, psi)
        if val < best_val:
            best_val, best_state, best_conv = val, psi, conv
    return PurityReport(
        value=best_val / math.log(base),
        optimizer_state=best_state,
        p=1.0,
        restarts=len(starts),
        converged=best_conv,
        iterations=total_iter,
    )


def spectrum_pair_check(
    ch: KrausChannel, psi: np.ndarray, tol: float = DEFAULT_TOL
) -> tuple[Spectrum, Spectrum, float]:
    """Non-zero output spectra of the channel and its conjugate on one pure
    input, plus their maximal entrywise deviation (zero-padded)."""
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    rho = np.outer(psi, psi.conj())
    sa = nonzero_spectrum(chn.apply(ch, rho), tol)
    sb = nonzero_spectrum(chn.apply(conjugate_kraus(ch), rho), tol)
    n = max(len(sa), len(sb))
    pa = np.pad(sa.values, (0, n - len(sa)))
    pb = np.pad(sb.values, (0, n - len(sb)))
    dev = float(np.abs(pa - pb).max()) if n else 0.0
    return sa, sb, dev


def multiplicativity_gap(
    ch1: KrausChannel,
    ch2: KrausChannel,
    p: float,
    opts: OptimizerOptions = DEFAULT_OPTS,
    witness_tol: float = 1e-6,
) -> MultiplicativityGap:
    """Measure ``nu_p(ch1 (x) ch2) - nu_p(ch1) nu_p(ch2)``.

    The product optimizer is seeded with the tensor product of the two
    single-channel optimizing states, so the reported gap is never negative
    beyond the final iteration's slack (product states are feasible).
    A ``witness_state`` is returned only when the gap exceeds
    ``witness_tol`` (a candidate multiplicativity violation).
    """
    r1 = nu_p(ch1, p, opts)
    r2 = nu_p(ch2, p, opts)
    seed12 = np.kron(r1.optimizer_state, r2.optimizer_state)
    r12 = nu_p(chn.tensor(ch1, ch2), p, opts, initial_states=[seed12])
    lhs = r12.value
    rhs = r1.value * r2.value
    gap = lhs - rhs
    witness = r12.optimizer_state if gap > witness_tol else None
    return MultiplicativityGap(lhs, rhs, gap, witness, r1, r2, r12)


def additivity_gap_entropy(
    ch1: KrausChannel,
    ch2: KrausChannel,
    opts: OptimizerOptions = DEFAULT_OPTS,
    base: float = 2.0,
) -> EntropyAdditivityGap:
    """Measure ``(S_min(ch1) + S_min(ch2)) - S_min(ch1 (x) ch2)`` (>= 0 up to
    optimizer slack; product states are feasible for the joint infimum)."""
    r1 = s_min(ch1, opts, base=base)
    r2 = s_min(ch2, opts, base=base)
    seed12 = np.kron(r1.optimizer_state, r2.optimizer_state)
    r12 = s_min(chn.tensor(ch1, ch2), opts, base=base, initial_states=[seed12])
    rhs = r1.value + r2.value
    lhs = r12.value
    return EntropyAdditivityGap(lhs=lhs, rhs=rhs, gap=rhs - lhs, report_1=r1, report_2=r2, report_12=r12)


def sampled_nu_p(
    ch: KrausChannel,
    p: float,
    n_samples: int,
    rng: np.random.Generator,
    polish: bool = True,
    opts: OptimizerOptions = DEFAULT_OPTS,
) -> float:
    """Independent cross-check of :func:`nu_p`: exhaustive random sampling of
    pure states followed by a local polish from the best sample."""
    d = ch.d_in
    batch = rng.standard_normal((n_samples, d)) + 1j * rng.standard_normal((n_samples, d))
    batch /= np.linalg.norm(batch, axis=1, keepdims=True)
    out = np.einsum("kab,nb,nc,kdc->nad", ch.kraus, batch, batch.conj(), ch.kraus.conj(), optimize=True)
    if p == 2:
        vals = np.sqrt(np.einsum("nab,nba->n", out, out, optimize=True).real)
    else:
        vals = np.array([schatten_norm(m, p) for m in out])
    best = int(np.argmax(vals))
    if not polish:
        return float(vals[best])
    rep = nu_p(ch, p, replace(opts, restarts=0), initial_states=[batch[best]])
    return max(float(vals[best]), rep.value)
