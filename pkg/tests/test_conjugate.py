import numpy as np
import pytest

from qcc import channel as chn
from qcc import conjugate as conj
from qcc.channel import KrausChannel
from qcc.linalg import dagger, frobenius, partial_trace
from qcc.pauli import build_basis, pauli_channel
from qcc.purity import spectrum_pair_check
from qcc.random import haar_state, haar_unitary, random_density, random_kraus_operators, rng_from_seed

PAULIS = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def random_channel(rng, d_in, d_out, n):
    return KrausChannel(d_in=d_in, d_out=d_out, kraus=random_kraus_operators(d_in, d_out, n, rng))


def test_conjugate_of_identity_is_trace_map():
    ch = chn.identity_channel(3)
    cc = conj.conjugate_kraus(ch)
    assert cc.d_out == 1 and cc.n_kraus == 3
    rho = random_density(3, rng_from_seed(0))
    assert np.abs(chn.apply(cc, rho) - np.array([[1.0]])).max() < 1e-14


def test_conjugate_shape_law_and_cpt():
    rng = rng_from_seed(1)
    for _ in range(10):
        ch = random_channel(rng, int(rng.integers(2, 5)), int(rng.integers(2, 5)), int(rng.integers(1, 6)))
        cc = conj.conjugate_kraus(ch)
        assert cc.n_kraus == ch.d_out
        assert cc.d_out == ch.n_kraus
        assert chn.validate_cpt(cc).tp_ok


def test_qubit_pauli_conjugate_matches_displayed_form():
    # In the (I, sx, sy, sz) ordering the noisy-conjugate entries follow the
    # displayed 4x4 pattern in the Bloch components of the input.
    rng = rng_from_seed(2)
    w = np.concatenate([[1.0], rng.uniform(-0.3, 0.3, 3)])
    rho = sum(w[k] * PAULIS[k] for k in range(4)) / 2
    pattern = np.array(
        [
            [w[0], w[1], w[2], w[3]],
            [w[1], w[0], -1j * w[3], 1j * w[2]],
            [w[2], 1j * w[3], w[0], -1j * w[1]],
            [w[3], -1j * w[2], 1j * w[1], w[0]],
        ]
    )
    gamma = np.array(
        [[np.trace(PAULIS[m] @ rho @ PAULIS[n]) for n in range(4)] for m in range(4)]
    )
    assert np.abs(gamma - pattern).max() < 1e-13

    # The Pauli-channel conjugate is then sqrt(A) (4 N^C) sqrt(A) for any
    # weight vector, which the Kraus swap must reproduce.
    a = rng.dirichlet(np.ones(4))
    sqa = np.diag(np.sqrt(a))
    kraus = np.stack([np.sqrt(a[k]) * PAULIS[k] for k in range(4)])
    ch = KrausChannel(d_in=2, d_out=2, kraus=kraus)
    assert np.abs(chn.apply(conj.conjugate_kraus(ch), rho) - sqa @ pattern @ sqa).max() < 1e-13


def test_conjugate_of_cq_channel_is_schur_multiplier():
    rng = rng_from_seed(3)
    u = haar_unitary(3, rng)
    xs = [haar_state(2, rng) for _ in range(3)]
    kraus = np.stack([np.outer(x, u[:, k].conj()) for k, x in enumerate(xs)])
    ch = KrausChannel(d_in=3, d_out=2, kraus=kraus)
    gram = np.array([[np.vdot(xk, xj) for xk in xs] for xj in xs])
    rho = random_density(3, rng)
    rho_w = dagger(u) @ rho @ u  # matrix of rho in the w basis
    assert np.abs(chn.apply(conj.conjugate_kraus(ch), rho) - gram * rho_w).max() < 1e-13


def test_conjugate_choi_of_unitary_channel():
    rng = rng_from_seed(4)
    ch = KrausChannel.from_operators([haar_unitary(3, rng)])
    gamma_ac = conj.conjugate_choi(chn.kraus_to_choi(ch))
    assert gamma_ac.d_out == 1
    assert np.abs(gamma_ac.gamma - np.eye(3) / 3).max() < 1e-12


def test_conjugate_choi_matches_kraus_route_up_to_isometry():
    rng = rng_from_seed(5)
    for _ in range(5):
        ch = random_channel(rng, 2, 2, 3)
        via_choi = chn.choi_to_kraus(conj.conjugate_choi(chn.kraus_to_choi(ch)))
        via_kraus = conj.conjugate_kraus(ch)
        rel = conj.find_relating_isometry(via_choi, via_kraus)
        assert rel.residual < 1e-8
        wtw = dagger(rel.w) @ rel.w
        assert frobenius(wtw @ wtw - wtw) < 1e-8


def test_conjugate_choi_noisy_marginal_and_rank():
    noisy = pauli_channel(build_basis(2), np.full(4, 0.25)).channel
    gamma_ab = chn.kraus_to_choi(noisy)
    gamma_ac = conj.conjugate_choi(gamma_ab)
    kappa = chn.kraus_rank(noisy)
    eigs = np.linalg.eigvalsh(gamma_ac.gamma)
    rank = int((eigs > 1e-10 * eigs.max()).sum())
    assert rank <= 2 * kappa
    marg = partial_trace(gamma_ac.gamma, (2, gamma_ac.d_out), "A")
    assert abs(np.trace(marg) - 1.0) < 1e-12
    assert frobenius(gamma_ac.input_marginal() - np.eye(2) / 2) < 1e-12


def test_conjugate_ancilla_exactly_matches_kraus_swap():
    rng = rng_from_seed(6)
    ch = random_channel(rng, 2, 3, 4)
    rep = chn.kraus_to_ancilla(ch)
    assert np.abs(conj.conjugate_ancilla(rep).kraus - conj.conjugate_kraus(ch).kraus).max() == 0.0


def test_conjugate_ancilla_env_one_is_trace_map():
    rng = rng_from_seed(7)
    u = haar_unitary(2, rng)
    rep = chn.kraus_to_ancilla(KrausChannel.from_operators([u]))
    cc = conj.conjugate_ancilla(rep)
    rho = random_density(2, rng)
    assert np.abs(chn.apply(cc, rho) - np.array([[1.0]])).max() < 1e-13


def test_spectrum_law_on_random_channels():
    rng = rng_from_seed(8)
    worst = 0.0
    for _ in range(50):
        d_in, d_out = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        lo = max(1, -(-d_in // d_out))
        ch = random_channel(rng, d_in, d_out, int(rng.integers(lo, 7)))
        for _ in range(3):
            _, _, dev = spectrum_pair_check(ch, haar_state(ch.d_in, rng))
            worst = max(worst, dev)
    assert worst < 1e-9


def test_find_relating_isometry_identity_case():
    rng = rng_from_seed(9)
    ch = random_channel(rng, 2, 3, 3)
    cc = conj.conjugate_kraus(ch)
    rel = conj.find_relating_isometry(cc, cc)
    assert rel.residual < 1e-10
    # Any solution acts as the identity on the conjugate outputs.
    rho = random_density(2, rng)
    out = chn.apply(cc, rho)
    assert np.abs(rel.w @ out @ dagger(rel.w) - out).max() < 1e-10


def test_find_relating_isometry_recovers_unitary_mixing():
    rng = rng_from_seed(10)
    ch = random_channel(rng, 2, 3, 3)
    u = haar_unitary(3, rng)
    mixed_ops = np.einsum("jk,kab->jab", u, ch.kraus)
    mixed = KrausChannel(d_in=2, d_out=3, kraus=mixed_ops)
    rel = conj.find_relating_isometry(conj.conjugate_kraus(mixed), conj.conjugate_kraus(ch))
    assert rel.residual < 1e-8
    assert rel.rank == chn.kraus_rank(ch)


def test_double_conjugation_returns_original_up_to_isometry():
    rng = rng_from_seed(11)
    for _ in range(5):
        ch = random_channel(rng, 2, 3, 3)
        double = conj.conjugate_kraus(conj.conjugate_kraus(ch))
        rel = conj.find_relating_isometry(double, ch)
        assert rel.residual < 1e-8


def test_find_relating_isometry_rejects_unrelated_channels():
    rng = rng_from_seed(12)
    a = conj.conjugate_kraus(random_channel(rng, 2, 3, 3))
    b = conj.conjugate_kraus(random_channel(rng, 2, 3, 3))
    with pytest.raises(conj.NotConjugateError):
        conj.find_relating_isometry(a, b)


def test_tensor_compatibility_of_conjugates():
    rng = rng_from_seed(13)
    c1 = random_channel(rng, 2, 2, 2)
    c2 = random_channel(rng, 2, 2, 3)
    left = conj.conjugate_kraus(chn.tensor(c1, c2))
    right = chn.tensor(conj.conjugate_kraus(c1), conj.conjugate_kraus(c2))
    rel = conj.find_relating_isometry(left, right)
    assert rel.residual < 1e-8


def test_conjugate_channel_method_dispatch():
    rng = rng_from_seed(14)
    ch = random_channel(rng, 2, 2, 3)
    for method in ("kraus", "choi", "ancilla"):
        cc = conj.conjugate_channel(ch, method)
        assert chn.validate_cpt(cc).tp_ok
    with pytest.raises(ValueError):
        conj.conjugate_channel(ch, "nope")
