import numpy as np
import pytest

from secgame import (
    GameElement,
    NetworkState,
    ValidationError,
    build_game,
    enumerate_states,
    expand_strategy,
    success_probability,
)
from secgame.builder import ActionSet

from oracles import random_network, random_restart


def element_for(game, pattern):
    return game.elements[int(pattern, 2)]


class TestWorkedElements:
    def test_healthy_state_attack_one_defend_one(self, example_game):
        el = element_for(example_game, "000")
        assert el.actions.attacker == (0, 1, 2, None)
        assert el.payoff[0, 0] == pytest.approx(2.2, abs=1e-12)
        assert el.transitions[0, 0, 4] == pytest.approx(0.2, abs=1e-12)   # one more down
        assert el.transitions[0, 0, 0] == pytest.approx(0.56, abs=1e-12)  # restored/stay
        assert el.end_prob[0, 0] == pytest.approx(0.24, abs=1e-12)

    def test_single_attack_state_attack_two_defend_two(self, example_game):
        el = element_for(example_game, "100")
        assert el.actions.attacker == (1, 2, None)
        # success probability 0.26 prices the attack at the node's attack value
        assert el.payoff[0, 0] == pytest.approx(0.26 * 8.75, abs=1e-12)
        assert el.transitions[0, 0, 6] == pytest.approx(0.26, abs=1e-12)
        assert el.transitions[0, 0, 0] == pytest.approx(0.148, abs=1e-12)
        assert el.transitions[0, 0, 4] == pytest.approx(0.37, abs=1e-12)
        assert el.end_prob[0, 0] == pytest.approx(0.222, abs=1e-12)

    def test_do_nothing_row(self, example_game):
        el = element_for(example_game, "100")
        row = el.actions.attacker.index(None)
        for col in range(len(el.actions.defender)):
            assert el.payoff[row, col] == 0.0
            assert el.transitions[row, col, 0] == pytest.approx(0.2, abs=1e-12)
            assert el.transitions[row, col, 4] == pytest.approx(0.5, abs=1e-12)
            assert el.end_prob[row, col] == pytest.approx(0.3, abs=1e-12)

    def test_healthy_state_restart_and_stay_merge(self, example_game):
        el = element_for(example_game, "000")
        row = el.actions.attacker.index(None)
        assert el.transitions[row, 0, 0] == pytest.approx(0.7, abs=1e-12)
        assert el.end_prob[row, 0] == pytest.approx(0.3, abs=1e-12)


class TestActionSets:
    def test_reduced_mode_counts(self, example_game):
        for k, el in enumerate(example_game.elements):
            alive = len(example_game.space.states[k].alive)
            assert len(el.actions.attacker) == alive + 1
            assert len(el.actions.defender) == alive + 1

    def test_all_compromised_reduced_has_single_action(self, example_game):
        el = element_for(example_game, "111")
        assert el.actions.attacker == (None,)
        assert el.payoff.shape == (1, 1)

    def test_full_mode_keeps_every_action(self, example_game_full):
        for el in example_game_full.elements:
            assert len(el.actions.attacker) == 4

    def test_full_mode_attack_on_compromised_is_failed_attack(self, example_game_full):
        el = element_for(example_game_full, "100")
        row = el.actions.attacker.index(0)  # node 1 is already down
        for col in range(4):
            assert el.payoff[row, col] == 0.0
            assert el.transitions[row, col, 0] == pytest.approx(0.2, abs=1e-12)
            assert el.transitions[row, col, 4] == pytest.approx(0.5, abs=1e-12)
            assert el.end_prob[row, col] == pytest.approx(0.3, abs=1e-12)


class TestInvariants:
    def test_rows_are_probability_distributions(self, example_game, example_game_full):
        for game in (example_game, example_game_full):
            for el in game.elements:
                mass = el.transitions.sum(axis=2) + el.end_prob
                np.testing.assert_allclose(mass, 1.0, atol=1e-12)
                assert el.end_prob.min() > 0

    def test_positive_stopping_bound(self, example_game):
        # end probability is at least (1 - max success prob) * min end prob
        max_ps = max(
            success_probability(red, node, defended=False)
            for red in example_game.space.reductions
            for node in red.alive
        )
        floor = (1 - max_ps) * min(p.p_e for p in example_game.space.restart)
        assert floor > 0
        assert example_game.min_end_probability() >= floor - 1e-12

    def test_transition_support_structure(self, example_game):
        for k, el in enumerate(example_game.elements):
            state = example_game.space.states[k]
            for ai, act in enumerate(el.actions.attacker):
                allowed = {0, k}
                if act is not None:
                    allowed.add(state.mask | state.bit(act))
                for dj in range(len(el.actions.defender)):
                    hit = set(np.nonzero(el.transitions[ai, dj])[0].tolist())
                    assert hit <= allowed

    def test_defending_the_target_cuts_the_payoff(self, example_game):
        for el in example_game.elements:
            for ai, act in enumerate(el.actions.attacker):
                if act is None:
                    continue
                dj = el.actions.defender.index(act)
                defended = el.payoff[ai, dj]
                for other in range(len(el.actions.defender)):
                    if other != dj:
                        assert defended < el.payoff[ai, other]

    def test_losing_a_supporter_raises_success_probability(self, example_game):
        space = example_game.space
        net = space.network
        for k, state in enumerate(space.states):
            for target in state.alive:
                for supporter in state.alive:
                    if supporter == target or net.support[supporter, target] == 0:
                        continue
                    fallen = NetworkState(3, state.mask | state.bit(supporter))
                    before = success_probability(space.reductions[k], target, False)
                    after = success_probability(
                        space.reductions[fallen.mask], target, False)
                    assert after > before

    def test_build_is_deterministic(self, example_space):
        a = build_game(example_space, "reduced")
        b = build_game(example_space, "reduced")
        for x, y in zip(a.elements, b.elements):
            np.testing.assert_array_equal(x.payoff, y.payoff)
            np.testing.assert_array_equal(x.transitions, y.transitions)
            np.testing.assert_array_equal(x.end_prob, y.end_prob)

    def test_random_games_row_mass(self):
        rng = np.random.default_rng(29)
        for _ in range(10):
            n = int(rng.integers(1, 5))
            net = random_network(rng, n)
            space = enumerate_states(
                net, defaults=random_restart(rng), initial=random_restart(rng, initial=True))
            for game in (build_game(space, "reduced"), build_game(space, "full")):
                for el in game.elements:
                    mass = el.transitions.sum(axis=2) + el.end_prob
                    np.testing.assert_allclose(mass, 1.0, atol=1e-12)
                    assert el.end_prob.min() > 0

    def test_contraction_factor_below_one(self, example_game):
        gamma = example_game.contraction_factor()
        assert 0 < gamma < 1


class TestExpandStrategy:
    def test_reduced_strategy_lands_on_alive_slots(self, example_game):
        el = element_for(example_game, "100")
        full = expand_strategy(el, [0.7, 0.2, 0.1], 3)
        np.testing.assert_allclose(full, [0.0, 0.7, 0.2, 0.1])

    def test_length_mismatch_rejected(self, example_game):
        el = element_for(example_game, "100")
        with pytest.raises(ValidationError, match="expected 3"):
            expand_strategy(el, [0.5, 0.5], 3)


class TestElementValidation:
    def test_leaky_row_rejected(self):
        with pytest.raises(ValidationError, match="transition mass"):
            GameElement(
                state_index=0,
                actions=ActionSet((None,), (None,)),
                payoff=np.zeros((1, 1)),
                transitions=np.full((1, 1, 2), 0.3),
                end_prob=np.full((1, 1), 0.3),
            )

    def test_zero_end_probability_rejected(self):
        with pytest.raises(ValidationError, match="end probability"):
            GameElement(
                state_index=0,
                actions=ActionSet((None,), (None,)),
                payoff=np.zeros((1, 1)),
                transitions=np.full((1, 1, 2), 0.5),
                end_prob=np.zeros((1, 1)),
            )
