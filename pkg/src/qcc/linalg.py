"""Complex linear-algebra kernels shared by every other module.

All functions take and return plain ``numpy`` arrays (dense, complex double
precision) and are pure: nothing here mutates its inputs or touches global
state.  Dimensions are desk scale (a few hundred at most), so everything is
backed by LAPACK through ``numpy.linalg``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Default relative cutoff separating "zero" eigenvalues/singular values from
#: genuine ones.  Everything that takes a ``tol`` argument defaults to this.
DEFAULT_TOL = 1e-10


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def as_complex(a) -> np.ndarray:
    """Return ``a`` as a C-contiguous complex128 array."""
    return np.ascontiguousarray(a, dtype=np.complex128)


def frobenius(a: np.ndarray) -> float:
    """Frobenius norm, as a plain float."""
    return float(np.linalg.norm(a))


def hermitian_eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues non-increasing.

    This is the single entry point to the eigensolver backend; callers must
    not call ``numpy.linalg.eigh`` directly so the backend stays swappable.

    Returns
    -------
    (w, v)
        ``w`` real eigenvalues sorted non-increasing, ``v`` the matching
        eigenvector columns.
    """
    w, v = np.linalg.eigh(m)
    return w[::-1].copy(), v[:, ::-1].copy()


def singular_values(m: np.ndarray) -> np.ndarray:
    """Singular values of ``m``, non-increasing."""
    return np.linalg.svd(m, compute_uv=False)


def canonical_hermitian_eigh(
    m: np.ndarray, degeneracy_tol: float = 1e-9
) -> tuple[np.ndarray, np.ndarray]:
    """Like :func:`hermitian_eigh` but with a deterministic eigenbasis.

    Degenerate eigenspaces (eigenvalues within ``degeneracy_tol`` relative to
    the spectral radius) are given a canonical basis by orthonormalising the
    projections of the standard basis vectors, taken in index order, onto the
    eigenspace.  Each vector's phase is fixed by making its first
    significant entry real and positive.  The result depends only on ``m``,
    not on backend-specific eigenvector choices.
    """
    w, v = hermitian_eigh(m)
    n = m.shape[0]
    scale = max(float(np.abs(w).max()), 1e-300) if n else 1.0
    out = np.empty_like(v)
    i = 0
    while i < n:
        j = i + 1
        while j < n and abs(w[j] - w[i]) <= degeneracy_tol * scale:
            j += 1
        block = v[:, i:j]
        if j - i > 1:
            block = _canonical_subspace_basis(block)
        out[:, i:j] = _fix_phases(block)
        i = j
    return w, out


def _canonical_subspace_basis(block: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis of span(block) via pivoted projection."""
    n, g = block.shape
    proj = block @ dagger(block)
    basis: list[np.ndarray] = []
    for k in range(n):
        cand = proj[:, k].copy()
        for b in basis:
            cand -= b * np.vdot(b, cand)
        norm = np.linalg.norm(cand)
        if norm > 1e-7:
            basis.append(cand / norm)
        if len(basis) == g:
            break
    if len(basis) < g:  # numerically defective projector; keep backend basis
        return block
    return np.column_stack(basis)


def _fix_phases(block: np.ndarray) -> np.ndarray:
    out = block.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = np.flatnonzero(np.abs(col) > 1e-8 * max(np.abs(col).max(), 1e-300))
        anchor = col[idx[0]] if idx.size else 1.0
        if abs(anchor) > 0:
            out[:, k] = col * (abs(anchor) / anchor)
    return out


@dataclass(frozen=True)
class Spectrum:
    """Non-zero part of a Hermitian spectrum, sorted non-increasing."""

    values: np.ndarray
    tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if np.any(np.diff(vals) > 1e-15):
            raise ValueError("spectrum values must be sorted non-increasing")

    def __len__(self) -> int:
        return len(self.values)


def partial_trace(m: np.ndarray, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Partial trace of a matrix on a bipartite space.

    Parameters
    ----------
    m
        Square matrix on the tensor product space, with the first factor as
        the major (row-major) index: entry ``((a, b), (a', b'))`` sits at
        ``(a * dB + b, a' * dB + b')``.
    dims
        ``(dA, dB)`` factor dimensions.
    keep
        ``"A"`` traces out the second factor, ``"B"`` the first.

    Returns
    -------
    The ``dA x dA`` (or ``dB x dB``) reduced matrix.  The trace is preserved.
    """
    da, db = dims
    m = np.asarray(m)
    if m.shape != (da * db, da * db):
        raise ValueError(
            f"matrix shape {m.shape} does not match dims ({da}, {db})"
        )
    t = m.reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("abcb->ac", t)
    if keep == "B":
        return np.einsum("abad->bd", t)
    raise ValueError("keep must be 'A' or 'B'")


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor (Kronecker) product with the first factor as the major index."""
    return np.kron(a, b)


def hadamard_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entrywise (Schur) product of two equal-shape matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a * b


def schatten_norm(m: np.ndarray, p: float) -> float:
    """Schatten p-norm ``(sum_i sigma_i^p)^(1/p)`` of a square matrix.

    Uses singular values, so ``m`` need not be Hermitian.  ``p = inf``
    returns the largest singular value.
    """
    if p < 1:
        raise ValueError(f"Schatten norm requires p >= 1, got {p}")
    m = np.asarray(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("schatten_norm expects a square matrix")
    s = singular_values(m)
    if math.isinf(p):
        return float(s[0]) if s.size else 0.0
    if p == 1:
        return float(s.sum())
    return float((s**p).sum() ** (1.0 / p))


def von_neumann_entropy(rho: np.ndarray, base: float = 2.0, tol: float = DEFAULT_TOL) -> float:
    """Von Neumann entropy ``-sum_i lam_i log(lam_i)`` with ``0 log 0 = 0``.

    Parameters
    ----------
    rho
        Density matrix: PSD within ``tol`` (relative to its largest
        eigenvalue) and unit trace within ``1e-8``.
    base
        Logarithm base; ``2`` gives bits, ``numpy.e`` nats.

    Raises
    ------
    ValueError
        If an eigenvalue is negative beyond tolerance or the trace deviates
        from one.
    """
    rho = np.asarray(rho)
    w = np.linalg.eigvalsh(rho)
    scale = max(float(w.max()), 0.0) if w.size else 0.0
    if w.size and w.min() < -tol * max(scale, 1.0):
        raise ValueError(f"matrix is not PSD: eigenvalue {w.min():.3e}")
    tr = float(w.sum())
    if abs(tr - 1.0) > 1e-8:
        raise ValueError(f"trace deviates from 1 by {abs(tr - 1.0):.3e}")
    w = np.clip(w, 0.0, None)
    nz = w[w > 0]
    return float(-(nz * np.log(nz)).sum() / np.log(base))


def nonzero_spectrum(m: np.ndarray, tol: float = DEFAULT_TOL) -> Spectrum:
    """Eigenvalues of a Hermitian matrix with ``|lam| > tol * lam_max`` kept.

    Raises ``ValueError`` when ``m`` deviates from Hermitian by more than
    ``1e-8`` relative to its norm.
    """
    m = np.asarray(m)
    scale = max(frobenius(m), 1e-300)
    if frobenius(m - dagger(m)) > 1e-8 * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    w, _ = hermitian_eigh((m + dagger(m)) / 2)
    cutoff = tol * max(float(np.abs(w).max()), 0.0) if w.size else 0.0
    kept = w[np.abs(w) > cutoff]
    return Spectrum(values=np.sort(kept)[::-1], tolerance=tol)


def majorizes(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Whether vector ``a`` majorizes ``b`` (prefix sums of sorted-descending
    ``a`` dominate those of ``b``).

    Vectors are zero-padded to equal length.  Their sums must agree within
    ``tol``; otherwise majorization is not defined and a ``ValueError`` is
    raised.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    n = max(a.size, b.size)
    a = np.pad(a, (0, n - a.size))
    b = np.pad(b, (0, n - b.size))
    scale = max(np.abs(a).sum(), np.abs(b).sum(), 1.0)
    if abs(a.sum() - b.sum()) > tol * scale:
        raise ValueError(
            f"sum mismatch: {a.sum():.12g} vs {b.sum():.12g}; majorization undefined"
        )
    pa = np.cumsum(np.sort(a)[::-1])
    pb = np.cumsum(np.sort(b)[::-1])
    return bool(np.all(pa >= pb - tol * scale))
