import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from simulmeas.measurements import (
    X_BASIS,
    Z_BASIS,
    Povm,
    adaptive_product_povm,
    anti_trine_povm,
    bell_basis,
    completeness_residual,
    povm,
    projective_xz,
    validate_povm,
)
from simulmeas.qcore import KET0, KET1, KET_MINUS, KET_PLUS, PAULI_X, PAULI_Z, projector, state_xz

angles = st.floats(-10, 10, allow_nan=False)


class TestProjectiveXZ:
    def test_z_basis(self):
        p = projective_xz(0.0)
        np.testing.assert_allclose(p.elements[0], projector(KET0), atol=1e-15)
        np.testing.assert_allclose(p.elements[1], projector(KET1), atol=1e-15)

    def test_x_basis(self):
        p = projective_xz(np.pi / 4)
        np.testing.assert_allclose(p.elements[0], projector(KET_PLUS), atol=1e-15)
        np.testing.assert_allclose(p.elements[1], projector(KET_MINUS), atol=1e-15)

    def test_pi_over_8_diagonalizes_x_plus_z(self):
        w, v = np.linalg.eigh((PAULI_X + PAULI_Z) / np.sqrt(2))
        np.testing.assert_allclose(projective_xz(np.pi / 8).elements[0], projector(v[:, 1]), atol=1e-12)

    @given(angles)
    def test_valid(self, a):
        assert validate_povm(projective_xz(a)) == []

    def test_born_rule_on_grid(self):
        grid = np.linspace(-np.pi, np.pi, 21)
        for a in grid:
            p = projective_xz(a)
            for b in grid:
                assert p.probabilities(state_xz(b))[0] == pytest.approx(np.cos(a - b) ** 2, abs=1e-12)


class TestBell:
    def test_complete(self):
        np.testing.assert_allclose(sum(bell_basis().elements), np.eye(4), atol=1e-15)

    def test_phi_plus_on_00(self):
        assert bell_basis().probabilities(np.kron(KET0, KET0))[0] == pytest.approx(0.5, abs=1e-15)

    def test_mutually_orthogonal(self):
        els = bell_basis().elements
        for i in range(4):
            for j in range(4):
                if i != j:
                    np.testing.assert_allclose(els[i] @ els[j], 0, atol=1e-15)

    def test_labels(self):
        assert bell_basis().labels == ("Phi+", "Phi-", "Psi+", "Psi-")


class TestAntiTrine:
    def test_first_vector_orthogonal_to_ket0(self):
        assert anti_trine_povm(0).probabilities(KET0)[0] < 1e-15

    def test_annihilates_matching_trine_state(self):
        p = anti_trine_povm(0)
        for i, a in enumerate((0, np.pi / 3, -np.pi / 3)):
            assert p.probabilities(state_xz(a))[i] <= 1e-12

    def test_frame_identity(self):
        # sum_i |v_i><v_i| = (3/2) I for the trine
        frame = sum(projector(state_xz(a)) for a in (0, np.pi / 3, -np.pi / 3))
        np.testing.assert_allclose(frame, 1.5 * np.eye(2), atol=1e-15)
        np.testing.assert_allclose(sum(anti_trine_povm(0).elements), np.eye(2), atol=1e-15)

    @given(angles)
    def test_any_rotation_complete(self, d):
        assert completeness_residual(anti_trine_povm(d)) < 1e-12
        assert validate_povm(anti_trine_povm(d)) == []


class TestAdaptive:
    def test_four_state_bell_half_measurement(self):
        p = adaptive_product_povm(Z_BASIS, [Z_BASIS, X_BASIS])
        assert len(p) == 4
        np.testing.assert_allclose(p.elements[0], np.kron(projector(KET0), projector(KET0)), atol=1e-15)
        np.testing.assert_allclose(p.elements[2], np.kron(projector(KET1), projector(KET_PLUS)), atol=1e-15)
        assert p.labels == ("0.0", "0.1", "1.0", "1.1")

    def test_complete(self):
        p = adaptive_product_povm(projective_xz(0.3), [projective_xz(1.1), anti_trine_povm(0.2)])
        assert validate_povm(p) == []

    def test_pw_entangled_alice(self):
        p = adaptive_product_povm(anti_trine_povm(0), [X_BASIS, Z_BASIS, Z_BASIS])
        assert len(p) == 6
        assert validate_povm(p) == []

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            adaptive_product_povm(Z_BASIS, [Z_BASIS])

    def test_dimension_check(self):
        with pytest.raises(ValueError):
            adaptive_product_povm(Z_BASIS, [bell_basis(), Z_BASIS])


class TestValidate:
    def test_z_basis_clean(self):
        assert validate_povm(Z_BASIS) == []

    def test_trivial_one_outcome(self):
        assert validate_povm(Povm((np.eye(2),), ())) == []

    def test_completeness_defect(self):
        bad = Povm((0.9 * projector(KET0), projector(KET1)), ())
        problems = validate_povm(bad)
        assert len(problems) == 1
        assert "completeness residual 0.1" in problems[0]
        assert completeness_residual(bad) == pytest.approx(0.1, abs=1e-15)

    def test_non_psd(self):
        bad = Povm((np.diag([1.5, 0.5]), np.diag([-0.5, 0.5])), ())
        assert any("not PSD" in x for x in validate_povm(bad))

    def test_non_hermitian(self):
        bad = Povm((np.array([[1, 0.5], [0, 0]]), np.array([[0, -0.5], [0, 1]])), ())
        assert any("not Hermitian" in x for x in validate_povm(bad))

    def test_checked_constructor_raises(self):
        with pytest.raises(ValueError):
            povm([0.9 * projector(KET0), projector(KET1)])
