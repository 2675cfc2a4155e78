import json

import numpy as np
import pytest

from secgame import ParseError, ValidationError, load_config, load_config_dict
from secgame.config import check_config, parse_config


def base_config():
    return {
        "schema": "secgame.config/1",
        "nodes": [
            {"name": "1", "independent_asset": 10, "probs": [0.2, 0.4, 0.5, 0.7]},
            {"name": "2", "independent_asset": 10, "probs": [0.2, 0.4, 0.5, 0.7]},
            {"name": "3", "independent_asset": 20, "probs": [0.2, 0.4, 0.5, 0.7]},
        ],
        "influence_edges": [
            {"from": "1", "to": "2", "weight": 0.2},
            {"from": "3", "to": "1", "weight": 0.1},
            {"from": "3", "to": "2", "weight": 0.1},
        ],
        "support_edges": [
            {"from": "1", "to": "1", "weight": 0.7},
            {"from": "2", "to": "1", "weight": 0.2},
            {"from": "3", "to": "1", "weight": 0.1},
            {"from": "2", "to": "2", "weight": 0.5},
            {"from": "3", "to": "2", "weight": 0.3},
            {"from": "3", "to": "3", "weight": 0.9},
        ],
    }


class TestBundledExample:
    def test_network_matrices(self, example_config):
        net = example_config.network
        np.testing.assert_allclose(
            net.influence,
            [[0.9, 0.2, 0.0], [0.0, 0.7, 0.0], [0.1, 0.1, 1.0]],
            atol=1e-12,
        )
        np.testing.assert_allclose(
            net.support,
            [[0.7, 0.0, 0.0], [0.2, 0.5, 0.0], [0.1, 0.3, 0.9]],
            atol=1e-12,
        )
        np.testing.assert_array_equal(net.independent_assets, [10.0, 10.0, 20.0])
        assert example_config.node_names == ("1", "2", "3")

    def test_restart_and_solver_blocks(self, example_config):
        assert example_config.restart_initial.p_r == 0.7
        assert example_config.restart_defaults.p_r == 0.2
        assert example_config.solver.tolerance == 1e-4
        assert example_config.solver.action_mode == "reduced"


class TestDiagonalInference:
    def test_self_influence_fills_column(self):
        config = load_config_dict(base_config())
        assert config.network.influence[0, 0] == pytest.approx(0.9, abs=1e-12)
        assert config.network.influence[1, 1] == pytest.approx(0.7, abs=1e-12)
        assert config.network.influence[2, 2] == pytest.approx(1.0, abs=1e-12)

    def test_overfull_column_is_reported(self):
        data = base_config()
        data["influence_edges"].append({"from": "2", "to": "1", "weight": 0.95})
        with pytest.raises(ValidationError, match="influence into node '1'"):
            load_config_dict(data)


class TestParseErrors:
    def test_missing_schema(self):
        data = base_config()
        del data["schema"]
        with pytest.raises(ParseError, match="schema"):
            load_config_dict(data)

    def test_unknown_node_in_edge(self):
        data = base_config()
        data["influence_edges"][0]["from"] = "9"
        with pytest.raises(ParseError, match="influence_edges\\[0\\].*unknown node"):
            load_config_dict(data)

    def test_explicit_self_influence_rejected(self):
        data = base_config()
        data["influence_edges"].append({"from": "1", "to": "1", "weight": 0.9})
        with pytest.raises(ParseError, match="self-influence is inferred"):
            load_config_dict(data)

    def test_duplicate_edge_rejected(self):
        data = base_config()
        data["influence_edges"].append({"from": "1", "to": "2", "weight": 0.1})
        with pytest.raises(ParseError, match="duplicate edge"):
            load_config_dict(data)

    def test_short_probs_rejected_with_path(self):
        data = base_config()
        data["nodes"][1]["probs"] = [0.2, 0.4, 0.5]
        with pytest.raises(ParseError, match="nodes\\[1\\].probs"):
            load_config_dict(data)

    def test_duplicate_node_name(self):
        data = base_config()
        data["nodes"][2]["name"] = "1"
        with pytest.raises(ParseError, match="duplicate node name"):
            load_config_dict(data)

    def test_unknown_action_mode(self):
        data = base_config()
        data["solver"] = {"action_mode": "oneshot"}
        with pytest.raises(ParseError, match="action_mode"):
            load_config_dict(data)

    def test_unknown_top_level_field(self):
        data = base_config()
        data["extra"] = 1
        with pytest.raises(ParseError, match="extra"):
            load_config_dict(data)

    def test_json_syntax_error_carries_location(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"schema": }')
        with pytest.raises(ParseError, match=r":1:"):
            load_config(path)


class TestSemanticChecks:
    def test_probability_ordering_violation_reported(self):
        data = base_config()
        data["nodes"][0]["probs"] = [0.5, 0.4, 0.6, 0.7]  # p_d1 >= p_n1
        with pytest.raises(ValidationError, match="p_d1 < p_n1"):
            load_config_dict(data)

    def test_all_violations_enumerated(self):
        data = base_config()
        data["nodes"][0]["probs"] = [0.5, 0.4, 0.6, 0.7]
        data["nodes"][1]["independent_asset"] = -3
        raw = parse_config(data)
        problems = check_config(raw)
        assert len(problems) == 2

    def test_restart_equality_outside_initial_state_rejected(self):
        data = base_config()
        data["restart"] = {"overrides": {"011": {"p_r": 0.7, "p_e": 0.3}}}
        with pytest.raises(ValidationError, match="011"):
            load_config_dict(data)

    def test_restart_override_applies(self):
        data = base_config()
        data["restart"] = {"overrides": {"011": {"p_r": 0.05}}}
        config = load_config_dict(data)
        space = config.state_space()
        assert space.restart[3].p_r == 0.05
        assert space.restart[3].p_e == 0.3  # merged from defaults
        assert space.restart[2].p_r == 0.2

    def test_bad_override_pattern_rejected(self):
        data = base_config()
        data["restart"] = {"overrides": {"01": {"p_r": 0.1}}}
        with pytest.raises(ParseError, match="n-bit pattern"):
            load_config_dict(data)

    def test_support_overflow_reported(self):
        data = base_config()
        data["support_edges"].append({"from": "1", "to": "3", "weight": 0.5})
        with pytest.raises(ValidationError, match="support into node '3'"):
            load_config_dict(data)


class TestRoundTrip:
    def test_bundled_file_solves_like_dict(self, example_config, tmp_path):
        data = base_config()
        data["restart"] = {
            "defaults": {"p_r": 0.2, "p_e": 0.3, "p_nothing_r": 0.2, "p_nothing_e": 0.3},
            "initial": {"p_r": 0.7, "p_e": 0.3, "p_nothing_r": 0.7, "p_nothing_e": 0.3},
        }
        path = tmp_path / "config.json"
        path.write_text(json.dumps(data))
        config = load_config(path)
        np.testing.assert_array_equal(config.network.influence,
                                      example_config.network.influence)
        assert config.restart_initial == example_config.restart_initial
