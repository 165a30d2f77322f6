"""Linearization operators for integer powers of channel outputs.

``theta`` assembles the cyclic Kraus-product sum that linearizes
``Tr Phi(rho)^p`` for pure inputs only; ``omega`` pushes the cyclic left
shift through the p-fold adjoint channel and works for every input.  Built
from the same Kraus list, the two are related exactly by
``omega = theta . L_p`` and by ``omega = theta(conjugate)^+``.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import channel as chn
from .channel import KrausChannel
from .conjugate import conjugate_kraus
from .linalg import dagger, frobenius, kron

#: Guard rails for the naive p-fold assembly.
MAX_P = 4
MAX_TOTAL_DIM = 256


def _check_p(p: int, d: int) -> None:
    if not isinstance(p, (int, np.integer)) or p < 1:
        raise ValueError("p must be a positive integer")
    if p > MAX_P or d**p > MAX_TOTAL_DIM:
        raise ValueError(
            f"p = {p} on dimension {d} exceeds the supported size "
            f"(p <= {MAX_P}, d^p <= {MAX_TOTAL_DIM})"
        )


def shift_operator(p: int, direction: str, d: int) -> np.ndarray:
    """Cyclic shift permutation on ``p`` factors of dimension ``d``:
    left sends ``|k1 k2 ... kp>`` to ``|k2 ... kp k1>``."""
    _check_p(p, d)
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")
    n = d**p
    op = np.zeros((n, n))
    for src in range(n):
        digits = []
        rem = src
        for _ in range(p):
            digits.append(rem % d)
            rem //= d
        digits.reverse()  # digits[0] = k1 (major)
        rotated = digits[1:] + digits[:1] if direction == "left" else digits[-1:] + digits[:-1]
        tgt = 0
        for dig in rotated:
            tgt = tgt * d + dig
        op[tgt, src] = 1.0
    return op


def theta(ch: KrausChannel, p: int) -> np.ndarray:
    """Cyclic sum ``sum A+_{k1} A_{k2} (x) A+_{k2} A_{k3} (x) ... (x) A+_{kp} A_{k1}``.

    Acts on ``p`` copies of the input space.  Assembly is the naive loop
    over Kraus index tuples, fine at desk scale.
    """
    _check_p(p, ch.d_in)
    n = ch.n_kraus
    pairs = np.einsum("iba,jbc->ijac", ch.kraus.conj(), ch.kraus, optimize=True)
    dim = ch.d_in**p
    out = np.zeros((dim, dim), dtype=complex)
    for ks in itertools.product(range(n), repeat=p):
        term = pairs[ks[0], ks[1 % p]]
        for i in range(1, p):
            term = kron(term, pairs[ks[i], ks[(i + 1) % p]])
        out += term
    return out


def _apply_adjoint_to_factor(ch: KrausChannel, m: np.ndarray, i: int, p: int) -> np.ndarray:
    """Adjoint channel on tensor factor ``i`` of a matrix on p output factors
    (the other factors' dimensions may already have been converted)."""
    shape = m.shape[0]
    left = 1
    for _ in range(i):
        left *= ch.d_in  # factors below i are already converted
    right = shape // (left * ch.d_out)
    t = m.reshape(left, ch.d_out, right, left, ch.d_out, right)
    out = np.einsum(
        "kba,LbRMcS,kcd->LaRMdS", ch.kraus.conj(), t, ch.kraus, optimize=True
    )
    new_dim = left * ch.d_in * right
    return out.reshape(new_dim, new_dim)


def omega(ch: KrausChannel, p: int) -> np.ndarray:
    """Adjoint channel applied factorwise to the left shift:
    the linearizer of ``Tr Phi(rho)^p`` valid for arbitrary mixed inputs."""
    _check_p(p, max(ch.d_in, ch.d_out))
    m = shift_operator(p, "left", ch.d_out).astype(complex)
    for i in range(p):
        m = _apply_adjoint_to_factor(ch, m, i, p)
    return m


def power_trace(ch: KrausChannel, rho: np.ndarray, p: int) -> float:
    """``Tr Phi(rho)^p`` computed directly (the quantity being linearized)."""
    sigma = chn.apply(ch, rho)
    return float(np.trace(np.linalg.matrix_power(sigma, p)).real)


def linearized_trace(x: np.ndarray, rho: np.ndarray, p: int) -> complex:
    """``Tr[rho^(x p) X]`` for a linearization operator ``X``."""
    big = rho
    for _ in range(p - 1):
        big = kron(big, rho)
    return complex(np.trace(big @ x))


def verify_gl_identity(ch: KrausChannel, p: int) -> tuple[float, float]:
    """Residuals of the two exact operator identities, with the conjugate
    built from the same Kraus list by the index swap (as the identities
    require): ``||omega - theta(conjugate)^+||_F`` and
    ``||omega - theta L_p||_F``."""
    om = omega(ch, p)
    res1 = frobenius(om - dagger(theta(conjugate_kraus(ch), p)))
    res2 = frobenius(om - theta(ch, p) @ shift_operator(p, "left", ch.d_in))
    return res1, res2
