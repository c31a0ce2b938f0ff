import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from podles import spectral as sp
from podles.scalars import DomainError


def rel_relations(config, X):
    return max(r for _, r in sp._relation_residuals(config, X).values())


def test_config_validation():
    with pytest.raises(DomainError):
        sp.SpectralConfig(1.2)
    with pytest.raises(DomainError):
        sp.SpectralConfig(0.5, twoJmax=20)
    cfg = sp.SpectralConfig.from_jmax(0.5, "7.5")
    assert cfg.twoJmax == 15
    assert cfg.is_interior(5.5) and not cfg.is_interior(6.5)


def test_space_dimension(small_config):
    space = sp.spinor_space(small_config.twoJmax)
    # each j carries 2j + 1 values of m and two chiralities
    assert space.dim == sum(2 * (t + 1) for t in range(1, 16, 2))


def test_dirac_spectrum(small_config):
    for j, closed, numeric, mult in sp.spectrum_rows(small_config):
        assert mult == int(2 * j + 1)
        if small_config.is_interior(j):
            assert abs(numeric - closed) <= 1e-9 * closed


def test_dirac_symmetric_and_block_diagonal(small_config):
    D = sp.build_dirac(small_config)
    assert np.allclose(D.matrix, D.matrix.T)
    assert D.bandwidth == 0
    full = sp.build_dirac(small_config, "delta") + \
        sp.build_dirac(small_config, "omega")
    assert np.allclose(full.matrix, D.matrix)


def test_W_is_orthogonal(small_config):
    W = sp.build_W(small_config)
    assert np.allclose(W.matrix @ W.matrix.T, np.eye(W.space.dim))


@pytest.mark.parametrize("i", sp.IDX)
def test_pi_is_tridiagonal_in_j(small_config, i):
    X = sp.build_x(small_config, i)
    assert X.bandwidth == 1


def test_pi_relations_and_adjoints(small_config):
    X = {i: sp.build_x(small_config, i) for i in sp.IDX}
    assert rel_relations(small_config, X) < 1e-9
    assert np.allclose(X[0].matrix, X[0].matrix.T.conj())
    # x_1^* = -q x_-1
    assert np.allclose(X[1].adjoint().matrix, -small_config.q * X[-1].matrix)


def test_mis_parenthesized_beta_breaks_relations(small_config):
    X = {i: sp.build_x(small_config, i, beta="inner") for i in sp.IDX}
    assert rel_relations(small_config, X) > 1e-3


def test_cancelled_alpha_breaks_relations(small_config):
    X = {i: sp.build_x(small_config, i, alpha="cancelled") for i in sp.IDX}
    assert rel_relations(small_config, X) > 1e-3


@given(st.floats(0.1, 0.9), st.integers(1, 8))
def test_beta_variants_differ(q, n):
    j = n + 0.5
    assert sp.beta_N(j, 0.5, q, "outer") != \
        pytest.approx(sp.beta_N(j, 0.5, q, "inner"), rel=1e-6)


def test_real_structure(small_config):
    J = sp.build_J(small_config)
    G = sp.build_gamma(small_config)
    D = sp.build_dirac(small_config)
    n = D.space.dim
    assert np.allclose(J.square().matrix, -np.eye(n))
    assert np.allclose(J.conjugate(D).matrix, D.matrix)
    assert np.allclose(J.conjugate(G).matrix, -G.matrix)
    assert np.allclose(G.anticommutator(D).matrix, 0)
    assert np.allclose((G @ G).matrix, np.eye(n))


def test_real_gamma_swap_commutes_with_J(small_config):
    J = sp.build_J(small_config)
    G = sp.build_gamma(small_config, "swap")
    assert np.allclose(J.conjugate(G).matrix, G.matrix)


def test_antiunitary_is_antilinear(small_config):
    J = sp.build_J(small_config)
    v = np.random.default_rng(0).normal(size=J.matrix.shape[0])
    assert np.allclose(J.apply(1j * v), -1j * J.apply(v))


def test_fit_decay_recovers_rate():
    q = 0.4
    seq = [(j + 0.5, 3.0 * q ** j) for j in range(12)]
    dr = sp.fit_decay(seq, math.log(q))
    assert dr.within(1e-9)
    assert dr.rate_ratio == pytest.approx(1.0)


def test_fit_decay_noise_floor():
    with pytest.raises(sp.EmptyFit):
        sp.fit_decay([(0.5, 1.0), (1.5, 1e-20), (2.5, 0.0)], -1.0)


def test_block_norms_of_identity(small_config):
    I = sp.BlockOperator.identity(sp.spinor_space(small_config.twoJmax))
    assert all(v == pytest.approx(1.0)
               for _, v in sp.block_norms(I, small_config))


def test_block_operator_shape_check(small_config):
    space = sp.spinor_space(small_config.twoJmax)
    with pytest.raises(ValueError):
        sp.BlockOperator(space, np.zeros((3, 3)))


def test_pi_minus_z_decays(small_config):
    for i in sp.IDX:
        op = sp.build_x(small_config, i) - sp.build_z(small_config, i)
        dr = sp.fit_decay(sp.block_norms(op, small_config),
                          math.log(small_config.q))
        assert dr.fitted_slope < 0


def test_csv_tables(small_config):
    text = sp.to_csv(sp.SPECTRUM_COLUMNS, sp.spectrum_rows(small_config))
    lines = text.splitlines()
    assert lines[0] == ",".join(sp.SPECTRUM_COLUMNS)
    assert len(lines) == 1 + 8
    rows = sp.decay_rows(small_config, "approx", 1, 0)
    assert rows and all(len(r) == len(sp.DECAY_COLUMNS) for r in rows)
