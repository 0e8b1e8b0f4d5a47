import numpy as np
import pytest

from simulmeas.ensembles import peres_wootters_scenario, two_product_scenario
from simulmeas.measurements import X_BASIS, Z_BASIS, adaptive_product_povm, anti_trine_povm, bell_basis
from simulmeas.protocols import (
    PARAMETRIC_IDS,
    PRINTED_PW_ROTATION,
    PROTOCOL_IDS,
    bob_angle_eta,
    build_named_protocol,
    helstrom_from_states,
    helstrom_probability,
    match_printed_rotation,
    optimal_trine_rotation,
    rotation_conventions,
    two_product_locc,
)
from simulmeas.qcore import PAULI_X, PAULI_Z, projector, state_xz
from simulmeas.strategies import EntangledSimultaneous, evaluate, joint_distribution


def eigen_oracle(a, b):
    """1/2 + 1/4 * sum |eig(rho_a - rho_b)| for equal priors."""
    return 0.5 + 0.25 * np.abs(np.linalg.eigvalsh(projector(a) - projector(b))).sum()


class TestHelstrom:
    def test_orthogonal(self):
        assert helstrom_probability(0.0) == 1.0

    def test_identical(self):
        assert helstrom_probability(1.0) == 0.5

    def test_matches_eigen_oracle(self):
        a = np.kron(state_xz(0), state_xz(0))
        b = np.kron(state_xz(np.pi / 4), state_xz(np.pi / 4))
        assert helstrom_probability(0.5) == pytest.approx(eigen_oracle(a, b), abs=1e-12)
        assert helstrom_probability(0.5) == pytest.approx(0.9330127018922193, abs=1e-12)

    def test_trace_norm_form_agrees(self):
        for t in np.linspace(0, np.pi / 2, 9):
            a, b = state_xz(0), state_xz(t)
            assert helstrom_from_states(projector(a), projector(b)) == pytest.approx(eigen_oracle(a, b), abs=1e-12)

    @pytest.mark.parametrize("c", [-0.1, 1.1])
    def test_out_of_range(self, c):
        with pytest.raises(ValueError):
            helstrom_probability(c)


def best_branch_angle(scenario, alice_element, step=1e-4):
    """Grid search over Bob's basis angle for one branch of Alice's outcome."""
    grid = np.arange(-np.pi / 2, np.pi / 2, step)
    w = [it.prior * np.real(np.vdot(it.alice, alice_element @ it.alice)) for it in scenario.items]
    b0, b1 = scenario.items[0].bob, scenario.items[1].bob
    # success of basis {v(g), v(g + pi/2)} with MAP guessing
    c0 = np.abs(np.cos(grid)[:, None] * b0[0] + np.sin(grid)[:, None] * b0[1]) ** 2
    c1 = np.abs(np.cos(grid)[:, None] * b1[0] + np.sin(grid)[:, None] * b1[1]) ** 2
    c0, c1 = c0.ravel(), c1.ravel()
    succ = np.maximum(w[0] * c0, w[1] * c1) + np.maximum(w[0] * (1 - c0), w[1] * (1 - c1))
    i = np.argmax(succ)
    return grid[i], succ[i]


class TestEta:
    def test_zero_numerator(self):
        assert bob_angle_eta(np.pi / 2, 0.7) == 0.0

    def test_quarter_turns(self):
        # (sqrt2/2 - 1) / (sqrt2/2 + 1), then arctan
        assert bob_angle_eta(np.pi / 4, np.pi / 4) == pytest.approx(-0.16991845472706, abs=1e-12)

    def test_rejects_theta2_zero(self):
        with pytest.raises(ValueError):
            bob_angle_eta(0.5, 0.0)

    @pytest.mark.parametrize("t1,t2", [(np.pi / 3, np.pi / 6), (np.pi / 4, np.pi / 4), (0.3, 1.2)])
    def test_grid_search_oracle(self, t1, t2):
        scen = two_product_scenario(t1, t2)
        proto = two_product_locc(t1, t2)
        eta = bob_angle_eta(t1, t2)
        total = 0.0
        for k, target in enumerate([eta / 2, (2 * t2 - eta) / 2]):
            g, s = best_branch_angle(scen, proto.strategy.alice.elements[k])
            total += s
            # bases are equivalent modulo pi/2
            diff = (g - target + np.pi / 4) % (np.pi / 2) - np.pi / 4
            assert abs(diff) < 2e-4
        helstrom = helstrom_probability(np.cos(t1) * np.cos(t2))
        assert total == pytest.approx(helstrom, abs=1e-7)
        assert proto.evaluate().guess_probability == pytest.approx(helstrom, abs=1e-9)


class TestTwoProductLocc:
    def test_orthogonal(self):
        assert two_product_locc(np.pi / 2, np.pi / 2).evaluate().guess_probability == pytest.approx(1.0, abs=1e-12)

    def test_quarter_turns(self):
        assert two_product_locc(np.pi / 4, np.pi / 4).evaluate().guess_probability == pytest.approx(
            (1 + np.sqrt(0.75)) / 2, abs=1e-12
        )

    def test_alice_decides_alone(self):
        assert two_product_locc(np.pi / 2, np.pi / 4).evaluate().guess_probability == pytest.approx(1.0, abs=1e-12)

    def test_alice_basis_is_local_helstrom(self):
        t1 = 0.9
        alice = two_product_locc(t1, 0.5).strategy.alice
        w, v = np.linalg.eigh(projector(state_xz(0)) - projector(state_xz(t1)))
        np.testing.assert_allclose(alice.elements[0], projector(v[:, 1]), atol=1e-12)

    def test_expected_is_helstrom(self):
        p = two_product_locc(0.4, 1.0)
        assert p.expected.guess_probability == helstrom_probability(np.cos(0.4) * np.cos(1.0))


class TestRegistry:
    def test_size(self):
        assert len(PROTOCOL_IDS) == 12
        assert PARAMETRIC_IDS == ("two_product",)

    @pytest.mark.parametrize("pid", PROTOCOL_IDS)
    def test_expected_metrics(self, pid):
        proto = build_named_protocol(pid)
        got = proto.evaluate()
        for short, attr in (("guess", "guess_probability"), ("class", "class_guess_probability"), ("info", "mutual_information_bits")):
            exp = getattr(proto.expected, attr)
            if exp is not None:
                assert abs(getattr(got, attr) - exp) <= proto.tolerance(short), (pid, short)

    def test_unknown(self):
        with pytest.raises(KeyError):
            build_named_protocol("nope")

    def test_oneway_and_simultaneous_identical(self):
        a = build_named_protocol("six.oneway.guess")
        b = build_named_protocol("six.sim.guess")
        np.testing.assert_allclose(
            joint_distribution(a.scenario, a.strategy).p, joint_distribution(b.scenario, b.strategy).p, atol=1e-12
        )

    def test_six_oneway_bob_basis_is_x_minus_z(self):
        bob = build_named_protocol("six.oneway.guess").strategy.bob_given[0]
        w, v = np.linalg.eigh((PAULI_X - PAULI_Z) / np.sqrt(2))
        plus = projector(v[:, 1])
        assert min(np.abs(e - plus).max() for e in bob.elements) < 1e-12

    def test_six_oneway_info_closed_form(self):
        # closed form evaluated in base 2
        a, b = 3 + 2 * np.sqrt(2), 3 - 2 * np.sqrt(2)
        closed = (a * np.log2(a) + b * np.log2(b)) / 12 - 2 / 3
        assert closed == pytest.approx(0.5321652844095, abs=1e-12)
        assert build_named_protocol("six.oneway.guess").evaluate().mutual_information_bits == pytest.approx(closed, abs=1e-9)

    def test_pw_oneway_bob_bases_bisect_survivors(self):
        proto = build_named_protocol("pw.oneway")
        # after outcome 0, survivors are v(+pi/3) and v(-pi/3); bisector at 0
        bob = proto.strategy.bob_given[0]
        p = bob.probabilities(state_xz(np.pi / 3))
        assert max(p) == pytest.approx(np.cos(np.pi / 12) ** 2, abs=1e-12)

    def test_pw_entangled_x_branch_follows_exclusion_of_ket0(self):
        pw = peres_wootters_scenario()
        at0 = anti_trine_povm(0)
        swapped = EntangledSimultaneous(adaptive_product_povm(at0, [X_BASIS, X_BASIS, Z_BASIS]), bell_basis())
        assert evaluate(pw, swapped).guess_probability < (9 + np.sqrt(3)) / 12 - 0.05


class TestTrineRotation:
    def test_recovered_rotation_closed_form(self):
        closed = np.pi / 6 - np.arctan((4 ** (1 / 3) - 1) / np.sqrt(3))
        assert optimal_trine_rotation() == pytest.approx(closed, abs=1e-6)

    def test_rotation_hits_target_probability(self):
        proto = build_named_protocol("pw.sim.guess")
        assert proto.evaluate().guess_probability == pytest.approx(1 / (6 - 3 * 4 ** (1 / 3)), abs=1e-9)

    def test_printed_angle_convention(self):
        delta = optimal_trine_rotation()
        conv = rotation_conventions(delta)
        assert conv["hilbert_from_trine"] == pytest.approx(2 * PRINTED_PW_ROTATION, abs=1e-6)
        assert ("hilbert_from_trine", 2) in match_printed_rotation(delta)
        assert not [h for h in match_printed_rotation(delta) if h[1] == 1]

    def test_conventions_fold_symmetries(self):
        for d in (0.1, -0.1, 0.1 + np.pi / 3):
            assert rotation_conventions(d)["hilbert_from_antitrine"] == pytest.approx(0.1, abs=1e-12)
