"""Conjugate (complementary) channels by three routes, plus the partial
isometry relating any two realizations.

The canonical construction swaps Kraus indices: if ``F_1 .. F_n`` (each
``d_out x d_in``) represent the channel, the conjugate has ``d_out`` Kraus
operators ``R_mu`` (each ``n x d_in``) with ``R_mu[j, k] = F_j[mu, k]``.
The conjugate maps the input to the environment, so its output dimension is
the Kraus count of the parent and vice versa.  Any two realizations of the
conjugate differ only by conjugation with a partial isometry of rank equal
to the parent's Kraus rank.
"""

from __future__ import annotations

import numpy as np

from . import channel as chn
from .channel import AncillaRep, ChoiMatrix, KrausChannel, KrausRelation
from .linalg import (
    DEFAULT_TOL,
    canonical_hermitian_eigh,
    dagger,
    frobenius,
    kron,
)


class NotConjugateError(ValueError):
    """Raised when no partial isometry relates two claimed conjugates."""


def conjugate_kraus(ch: KrausChannel) -> KrausChannel:
    """Conjugate channel from the Kraus index swap.

    The result has ``d_out(ch)`` operators and output dimension
    ``n_kraus(ch)``; it is trace-preserving whenever ``ch`` is.
    """
    swapped = ch.kraus.transpose(1, 0, 2)
    return KrausChannel(d_in=ch.d_in, d_out=ch.n_kraus, kraus=swapped)


def conjugate_ancilla(rep: AncillaRep) -> KrausChannel:
    """Conjugate channel ``rho -> Tr_out V rho V^+`` from an ancilla isometry.

    Slicing ``V`` by output index gives Kraus operators directly; when ``V``
    was built by :func:`qcc.channel.kraus_to_ancilla` this reproduces
    :func:`conjugate_kraus` of the generating list operator by operator.
    """
    blocks = rep.isometry.reshape(rep.d_out, rep.env_dim, rep.d_in)
    return KrausChannel(d_in=rep.d_in, d_out=rep.env_dim, kraus=blocks.copy())


def conjugate_choi(choi: ChoiMatrix, tol: float = DEFAULT_TOL) -> ChoiMatrix:
    """Conjugate channel's Choi matrix via purification.

    Purifies the Choi state on (input copy) (x) (output copy) with a third
    factor carrying the eigenvector index, then traces out the output copy.
    The eigenbasis follows the module-wide deterministic ordering, so the
    result is reproducible; it is unique up to a block unitary on degenerate
    eigenspaces, which is exactly the partial-isometry freedom.
    """
    w, v = canonical_hermitian_eigh(choi.gamma)
    scale = max(float(np.abs(w).max()), 1e-300)
    if w.min() < -tol * scale:
        raise ValueError(f"Choi matrix is not PSD: eigenvalue {w.min():.3e}")
    keep = w > tol * scale
    lam = w[keep]
    kappa = int(keep.sum())
    d, dp = choi.d_in, choi.d_out
    # Purification amplitudes T[a, c, b] = sqrt(lam_c) z_c[(a, b)].
    z = v[:, keep].T.reshape(kappa, d, dp)
    t = np.sqrt(lam)[:, None, None] * z
    t = t.transpose(1, 0, 2).reshape(d * kappa, dp)
    gamma_ac = t @ dagger(t)
    return ChoiMatrix(d_in=d, d_out=kappa, gamma=gamma_ac)


def conjugate_channel(ch: KrausChannel, method: str = "kraus") -> KrausChannel:
    """Conjugate of ``ch`` as a Kraus channel, by the requested route."""
    if method == "kraus":
        return conjugate_kraus(ch)
    if method == "ancilla":
        return conjugate_ancilla(chn.kraus_to_ancilla(ch))
    if method == "choi":
        gamma_ac = conjugate_choi(chn.kraus_to_choi(ch))
        return chn.choi_to_kraus(gamma_ac)
    raise ValueError(f"unknown conjugation method {method!r}")


def _matrix_unit_residual(ch1: KrausChannel, ch2: KrausChannel, w: np.ndarray) -> float:
    """max_ab || ch1(E_ab) - W ch2(E_ab) W^+ ||_F."""
    d = ch1.d_in
    g1 = chn.kraus_to_choi(ch1).gamma
    g2 = chn.kraus_to_choi(ch2).gamma
    iw = kron(np.eye(d), w)
    delta = d * (g1 - iw @ g2 @ dagger(iw))
    blocks = delta.reshape(d, ch1.d_out, d, ch1.d_out)
    return float(
        max(
            np.linalg.norm(blocks[a, :, b, :])
            for a in range(d)
            for b in range(d)
        )
    )


def _snap_to_partial_isometry(w: np.ndarray) -> tuple[np.ndarray, int]:
    """Round singular values to {0, 1} at threshold 0.5 after normalizing."""
    u, s, vh = np.linalg.svd(w)
    if s.size == 0 or s[0] == 0:
        return np.zeros_like(w), 0
    snapped = (s / s[0] > 0.5).astype(float)
    rank = int(snapped.sum())
    return (u[:, :rank] * snapped[:rank]) @ vh[:rank], rank


def _stacked_ls_candidate(ch1: KrausChannel, ch2: KrausChannel) -> np.ndarray | None:
    """Least-squares W for index-matched lists: min sum_mu ||A_mu - W B_mu||."""
    if ch1.n_kraus != ch2.n_kraus:
        return None
    a = ch1.kraus.transpose(1, 0, 2).reshape(ch1.d_out, -1)
    b = ch2.kraus.transpose(1, 0, 2).reshape(ch2.d_out, -1)
    wt, *_ = np.linalg.lstsq(b.T, a.T, rcond=None)
    return wt.T


def _intertwiner_candidate(ch1: KrausChannel, ch2: KrausChannel) -> np.ndarray:
    """Smallest singular vector of the stacked system ch1(E)T = T ch2(E)."""
    d, n1, n2 = ch1.d_in, ch1.d_out, ch2.d_out
    g1 = chn.kraus_to_choi(ch1).gamma.reshape(d, n1, d, n1)
    g2 = chn.kraus_to_choi(ch2).gamma.reshape(d, n2, d, n2)
    rows = []
    eye1, eye2 = np.eye(n1), np.eye(n2)
    for a in range(d):
        for b in range(d):
            m1 = d * g1[a, :, b, :]
            m2 = d * g2[a, :, b, :]
            rows.append(np.kron(m1, eye2) - np.kron(eye1, m2.T))
    big = np.vstack(rows)
    _, _, vh = np.linalg.svd(big)
    return vh[-1].conj().reshape(n1, n2)


def _minimal_pair(ch: KrausChannel) -> KrausChannel:
    return chn.choi_to_kraus(chn.kraus_to_choi(ch))


def _alternating_candidate(
    ch1: KrausChannel, ch2: KrausChannel, w0: np.ndarray, iters: int = 200
) -> np.ndarray:
    """Polish W by alternating a Procrustes step for the unitary mixing of
    minimal Kraus lists with a least-squares step for W."""
    a_min = _minimal_pair(ch1)
    b_min = _minimal_pair(ch2)
    if a_min.n_kraus != b_min.n_kraus:
        return w0
    a = a_min.kraus
    b = b_min.kraus
    w = w0.copy()
    for _ in range(iters):
        wb = np.einsum("pq,kqc->kpc", w, b, optimize=True)
        m = np.einsum("kab,jab->kj", a, wb.conj(), optimize=True)
        uu, _, vv = np.linalg.svd(m)
        u = uu @ vv
        a_rot = np.einsum("kj,kab->jab", u.conj(), a, optimize=True)
        am = a_rot.transpose(1, 0, 2).reshape(a_rot.shape[1], -1)
        bm = b.transpose(1, 0, 2).reshape(b.shape[1], -1)
        wt, *_ = np.linalg.lstsq(bm.T, am.T, rcond=None)
        w_new = wt.T
        if frobenius(w_new - w) < 1e-14:
            w = w_new
            break
        w = w_new
    return w


def find_relating_isometry(
    ch1: KrausChannel, ch2: KrausChannel, tol: float = 1e-8
) -> KrausRelation:
    """Partial isometry ``W`` with ``ch1(rho) = W ch2(rho) W^+``.

    Both channels must be conjugates of a common parent (the caller's
    claim); the result is verified on all matrix-unit inputs and a
    :class:`NotConjugateError` is raised if no candidate reaches ``tol``.

    Candidates are tried in order: a stacked least-squares solve when the
    Kraus lists are index-matched (the canonical conjugates are), then the
    intertwiner system on matrix units, then an alternating polish through
    minimal representations.  Every candidate is projected onto the nearest
    partial isometry by snapping singular values to {0, 1} at threshold 0.5.
    """
    if ch1.d_in != ch2.d_in:
        raise ValueError("channels have different input dimensions")
    candidates: list[np.ndarray] = []
    ls = _stacked_ls_candidate(ch1, ch2)
    if ls is not None:
        candidates.append(ls)
    candidates.append(_intertwiner_candidate(ch1, ch2))

    best: tuple[float, np.ndarray, int] | None = None
    for raw in candidates:
        w, rank = _snap_to_partial_isometry(raw)
        if rank == 0:
            continue
        res = _matrix_unit_residual(ch1, ch2, w)
        if best is None or res < best[0]:
            best = (res, w, rank)
        if res < tol:
            return KrausRelation(w=w, rank=rank, residual=res)

    seed = best[1] if best is not None else np.eye(ch1.d_out, ch2.d_out)
    w, rank = _snap_to_partial_isometry(_alternating_candidate(ch1, ch2, seed))
    if rank:
        res = _matrix_unit_residual(ch1, ch2, w)
        if res < tol:
            return KrausRelation(w=w, rank=rank, residual=res)
        if best is None or res < best[0]:
            best = (res, w, rank)
    raise NotConjugateError(
        "no partial isometry relates the two channels "
        f"(best residual {best[0]:.3e})" if best else
        "no partial isometry relates the two channels"
    )
