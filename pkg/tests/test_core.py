import json

import numpy as np
import pytest

from fidmono import config
from fidmono.core import (
    DensityMatrix,
    PureState,
    bell,
    derive_seed,
    dumps_state,
    eigh,
    eigvalsh,
    fidelity,
    fidelity_matrices,
    ghz,
    ginibre_random_mixed,
    haar_random_pure,
    kron,
    load_state,
    loads_state,
    make_rng,
    named_state,
    parse_named,
    partial_trace,
    product,
    save_state,
    sqrtm_psd,
    w_state,
    werner,
)
from fidmono.core.linalg import clamp_psd, permute_qubits_matrix, permute_qubits_vector
from fidmono.errors import DomainError, InputError, NotPSDError, NumericalError, SizeError

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)


def random_hermitian(rng, d):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (a + a.conj().T) / 2


def random_psd(rng, d, rank=None):
    g = rng.standard_normal((d, rank or d)) + 1j * rng.standard_normal((d, rank or d))
    return g @ g.conj().T


# --- kron ------------------------------------------------------------------


def test_kron_scalars_and_identity():
    assert kron([[2]], [[3]]).tolist() == [[6]]
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_block_structure():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    b = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    k = kron(a, b)
    assert k.shape == (8, 8)
    for i in range(8):
        for j in range(8):
            assert abs(k[i, j] - a[i // 4, j // 4] * b[i % 4, j % 4]) <= 1e-15 * abs(k[i, j]) + 1e-300


def test_kron_size_cap():
    big = np.eye(2**6)
    with pytest.raises(SizeError):
        kron(big, big)


# --- eigensolver -----------------------------------------------------------


def test_eigh_trivial():
    np.testing.assert_allclose(eigh(np.eye(2)).eigenvalues, [1, 1])
    np.testing.assert_allclose(eigh(SZ).eigenvalues, [-1, 1])
    w, v = eigh(SX)
    np.testing.assert_allclose(w, [-1, 1], atol=1e-15)
    minus = np.array([1, -1]) / np.sqrt(2)
    plus = np.array([1, 1]) / np.sqrt(2)
    assert abs(abs(np.vdot(v[:, 0], minus)) - 1) < 1e-14
    assert abs(abs(np.vdot(v[:, 1], plus)) - 1) < 1e-14


@pytest.mark.parametrize("d", [1, 2, 3, 5, 8, 16, 32])
def test_eigh_reconstruction_and_orthonormality(d):
    rng = np.random.default_rng(d)
    for _ in range(5):
        h = random_hermitian(rng, d)
        w, v = eigh(h)
        assert np.all(np.diff(w) >= 0)
        scale = np.linalg.norm(h)
        assert np.linalg.norm(v @ np.diag(w) @ v.conj().T - h) <= 1e-10 * scale
        assert np.linalg.norm(v.conj().T @ v - np.eye(d)) <= 1e-10
        np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-10 * scale)


def test_eigh_batched_matches_loop():
    rng = np.random.default_rng(3)
    hs = np.stack([random_hermitian(rng, 4) for _ in range(7)])
    batch = eigvalsh(hs)
    for h, w in zip(hs, batch):
        np.testing.assert_allclose(w, eigvalsh(h), atol=1e-13)


def test_eigh_degenerate_and_zero():
    w, v = eigh(np.zeros((4, 4)))
    np.testing.assert_array_equal(w, 0)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(4))
    p = np.diag([1.0, 1.0, 2.0, 2.0]).astype(complex)
    u = np.linalg.qr(np.random.default_rng(0).standard_normal((4, 4)))[0]
    np.testing.assert_allclose(eigvalsh(u @ p @ u.T), [1, 1, 2, 2], atol=1e-13)


def test_eigh_rejects_non_hermitian():
    with pytest.raises(InputError):
        eigh(np.array([[0, 1], [0, 0]], dtype=complex))
    with pytest.raises(InputError):
        eigh(np.ones((2, 3)))


def test_eigh_sweep_budget_exhausted():
    rng = np.random.default_rng(0)
    with pytest.raises(NumericalError):
        eigh(random_hermitian(rng, 8), max_sweeps=1)


def test_clamp_psd():
    np.testing.assert_array_equal(clamp_psd(np.array([-5e-11, 0.3])), [0.0, 0.3])
    with pytest.raises(NotPSDError):
        clamp_psd(np.array([-1e-6, 1.0]))


# --- sqrtm / fidelity ------------------------------------------------------


def test_sqrtm_trivial():
    np.testing.assert_allclose(sqrtm_psd(np.eye(3)), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(sqrtm_psd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14)


@pytest.mark.parametrize("rank", [1, 2, 8])
def test_sqrtm_squares_back(rank):
    rng = np.random.default_rng(rank)
    p = random_psd(rng, 8, rank)
    s = sqrtm_psd(p)
    assert np.linalg.norm(s @ s - p) <= 1e-10 * max(1.0, np.linalg.norm(p))
    assert np.linalg.norm(s - s.conj().T) <= 1e-12 * np.linalg.norm(s)


def test_sqrtm_rejects_negative():
    with pytest.raises(NotPSDError):
        sqrtm_psd(np.diag([1.0, -0.1]))


def test_fidelity_trivial_cases():
    zero, one, plus = product("0"), product("1"), product("+")
    rho = ginibre_random_mixed(2, 3, 5)
    assert abs(fidelity(rho, rho) - 1) < 1e-12
    assert abs(fidelity(bell(), bell()) - 1) < 1e-12
    assert fidelity(zero, one) < 1e-12
    assert abs(fidelity(zero, plus) - 0.5) < 1e-12


def test_fidelity_pure_overlap_and_symmetry():
    for s in range(20):
        a, b = haar_random_pure(2, s), haar_random_pure(2, 100 + s)
        overlap = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
        assert abs(fidelity(a, b) - overlap) < 1e-10
        r, q = ginibre_random_mixed(3, 1 + s % 8, s), ginibre_random_mixed(3, 8 - s % 8, 50 + s)
        assert abs(fidelity(r, q) - fidelity(q, r)) <= 1e-10


def test_fidelity_equal_implies_close():
    for s in range(5):
        rho = ginibre_random_mixed(2, 4, s)
        copy = DensityMatrix(rho.matrix.copy())
        assert abs(fidelity(rho, copy) - 1) < 1e-10
        assert np.linalg.norm(rho.matrix - copy.matrix) <= 1e-6


def test_fidelity_matrices_batched():
    a = np.stack([ginibre_random_mixed(2, 4, s).matrix for s in range(3)])
    b = np.stack([ginibre_random_mixed(2, 2, 9 + s).matrix for s in range(3)])
    f = fidelity_matrices(a, b)
    for i in range(3):
        assert abs(f[i] - fidelity(DensityMatrix(a[i]), DensityMatrix(b[i]))) < 1e-13


# --- partial trace / permutations -----------------------------------------


def test_partial_trace_examples():
    np.testing.assert_allclose(partial_trace(bell(), [0]).matrix, np.eye(2) / 2, atol=1e-15)
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = 0.5
    np.testing.assert_allclose(partial_trace(ghz(3), [0, 1]).matrix, expected, atol=1e-15)


def test_partial_trace_product_factors():
    ra = ginibre_random_mixed(1, 2, 1).matrix
    rb = ginibre_random_mixed(2, 3, 2).matrix
    rho = DensityMatrix(np.kron(ra, rb))
    np.testing.assert_allclose(partial_trace(rho, [0]).matrix, ra, atol=1e-14)
    np.testing.assert_allclose(partial_trace(rho, [1, 2]).matrix, rb, atol=1e-14)


def test_partial_trace_qubit_zero_is_most_significant():
    psi = product(["1", "0", "0"])  # |100> = basis index 4
    assert psi.amplitudes[4] == 1
    np.testing.assert_allclose(partial_trace(psi, [0]).matrix, np.diag([0, 1]), atol=0)
    np.testing.assert_allclose(partial_trace(psi, [2]).matrix, np.diag([1, 0]), atol=0)


def test_partial_trace_preserves_trace_and_psd():
    for s in range(10):
        rho = ginibre_random_mixed(4, 1 + s, s)
        red = partial_trace(rho, [1, 3])
        assert abs(np.trace(red.matrix) - 1) < 1e-12
        assert eigvalsh(red.matrix).min() >= -1e-12


def test_partial_trace_bad_keep():
    with pytest.raises(InputError):
        partial_trace(ghz(3), [3])
    with pytest.raises(InputError):
        partial_trace(ghz(3), [])
    # keep is a set
    np.testing.assert_array_equal(partial_trace(ghz(3), [0, 0]).matrix, partial_trace(ghz(3), [0]).matrix)


def test_permutations_agree():
    psi = haar_random_pure(3, 4)
    order = (2, 0, 1)
    pv = permute_qubits_vector(psi.amplitudes, 3, order)
    pm = permute_qubits_matrix(psi.density().matrix, 3, order)
    np.testing.assert_allclose(np.outer(pv, pv.conj()), pm, atol=1e-15)
    # new qubit 0 is old qubit 2
    np.testing.assert_allclose(
        partial_trace(PureState(pv), [0]).matrix, partial_trace(psi, [2]).matrix, atol=1e-15
    )


# --- states ---------------------------------------------------------------


def test_pure_state_validation():
    with pytest.raises(InputError):
        PureState(np.array([1.0, 1.0]))
    with pytest.raises(InputError):
        PureState(np.ones(3) / np.sqrt(3))
    psi = PureState.normalized([1, 1j])
    assert psi.n_qubits == 1
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0


def test_density_validation():
    with pytest.raises(InputError):
        DensityMatrix(np.array([[1, 1], [0, 0]], dtype=complex))
    with pytest.raises(InputError):
        DensityMatrix(np.eye(2))
    with pytest.raises(NotPSDError):
        DensityMatrix.validated(np.diag([1.5, -0.5]))


def test_size_cap(monkeypatch):
    monkeypatch.setenv(config.MAX_QUBITS_ENV, "3")
    ghz(3)
    with pytest.raises(SizeError):
        ghz(4)
    with pytest.raises(SizeError):
        haar_random_pure(4, 0)
    monkeypatch.setenv(config.MAX_QUBITS_ENV, "11")
    assert haar_random_pure(11, 0).n_qubits == 11
    monkeypatch.setenv(config.MAX_QUBITS_ENV, "zero")
    with pytest.raises(InputError):
        ghz(2)


def test_haar_and_ginibre_determinism():
    assert np.array_equal(haar_random_pure(3, 11).amplitudes, haar_random_pure(3, 11).amplitudes)
    assert not np.array_equal(haar_random_pure(3, 11).amplitudes, haar_random_pure(3, 12).amplitudes)
    assert np.array_equal(ginibre_random_mixed(2, 3, 5).matrix, ginibre_random_mixed(2, 3, 5).matrix)
    for s in range(20):
        assert abs(np.linalg.norm(haar_random_pure(4, s).amplitudes) - 1) < 1e-12


def test_ginibre_rank_and_trace():
    assert abs(ginibre_random_mixed(2, 1, 3).purity() - 1) < 1e-10
    rho = ginibre_random_mixed(3, 8, 3)
    assert abs(np.trace(rho.matrix) - 1) < 1e-14
    w = eigvalsh(ginibre_random_mixed(3, 2, 4).matrix)
    assert np.sum(w > 1e-10) == 2
    with pytest.raises(InputError):
        ginibre_random_mixed(2, 5, 0)


def test_haar_mean_marginal_purity():
    # E tr(rho_A^2) = (dA + dB) / (dA dB + 1) = 4/5 for two qubits
    n = 100_000
    m = np.stack([haar_random_pure(2, s).amplitudes for s in range(n)]).reshape(n, 2, 2)
    r = m @ m.conj().transpose(0, 2, 1)
    purity = np.einsum("nij,nji->n", r, r).real
    assert abs(purity.mean() - 0.8) < 3 * purity.std() / np.sqrt(n)


def test_haar_unitary_invariance():
    n = 10_000
    psis = np.stack([haar_random_pure(2, s).amplitudes for s in range(n)])
    u = np.linalg.qr(np.random.default_rng(7).standard_normal((4, 4)) + 1j * np.random.default_rng(8).standard_normal((4, 4)))[0]

    def purities(v):
        m = v.reshape(n, 2, 2)
        r = m @ m.conj().transpose(0, 2, 1)
        return np.einsum("nij,nji->n", r, r).real

    p0, p1 = purities(psis), purities(psis @ u.T)
    se = np.hypot(p0.std(), p1.std()) / np.sqrt(n)
    assert abs(p0.mean() - p1.mean()) < 3 * se


def test_named_states():
    w = w_state(3)
    nz = np.flatnonzero(np.abs(w.amplitudes) > 0)
    assert nz.tolist() == [1, 2, 4]
    np.testing.assert_allclose(w.amplitudes[nz], 1 / np.sqrt(3))
    np.testing.assert_allclose(werner(1).matrix, bell().density().matrix, atol=1e-15)
    assert abs(np.linalg.norm(ghz(4).amplitudes) - 1) < 1e-15
    assert named_state("ghz", 4).n_qubits == 4
    assert isinstance(parse_named("werner:0.5"), DensityMatrix)
    assert parse_named("product:0,+,1").n_qubits == 3
    assert parse_named("bell").n_qubits == 2
    for bad in ["nope", "ghz:x", "werner:2", "ghz:1", "product:0,q"]:
        with pytest.raises(InputError):
            parse_named(bad)


# --- rng / serialization ---------------------------------------------------


def test_rng_streams():
    a = make_rng(5, 1).standard_normal(4)
    assert np.array_equal(a, make_rng(5, 1).standard_normal(4))
    assert not np.array_equal(a, make_rng(5, 2).standard_normal(4))
    assert derive_seed(5, 1) == derive_seed(5, 1) != derive_seed(5, 2)
    for bad in (-1, 2**64, 1.5):
        with pytest.raises(InputError):
            make_rng(bad)


def test_serialization_round_trip(tmp_path):
    for state in [haar_random_pure(3, 1), ginibre_random_mixed(2, 3, 2), werner(0.3), ghz(4)]:
        back = loads_state(dumps_state(state))
        assert type(back) is type(state)
        a = state.amplitudes if isinstance(state, PureState) else state.matrix
        b = back.amplitudes if isinstance(back, PureState) else back.matrix
        assert np.max(np.abs(a - b)) <= 1e-15
        path = tmp_path / "s.json"
        save_state(state, path)
        assert np.array_equal(b, (load_state(path).amplitudes if isinstance(back, PureState) else load_state(path).matrix))


def test_serialization_errors():
    good = json.loads(dumps_state(bell()))
    with pytest.raises(InputError):
        loads_state(dumps_state(bell())[:-5])
    for patch in [{"kind": "weird"}, {"n_qubits": 3}, {"data": [[1, 0]]}]:
        with pytest.raises(InputError):
            loads_state(json.dumps({**good, **patch}))
    bad = {"kind": "mixed", "n_qubits": 1, "data": [[[1.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]]}
    with pytest.raises(NotPSDError):
        loads_state(json.dumps(bad))


def test_domain_error_is_input_error():
    assert issubclass(DomainError, InputError)
    assert issubclass(SizeError, InputError)
