"""Subset expansion profiles and declarative design criteria."""

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from protolift import (
    BudgetExceeded,
    CriteriaConfig,
    FormatError,
    config_from_dict,
    config_hash,
    config_to_json_dict,
    expansion_profile,
    from_multiplicity_matrix,
    load_criteria,
    node_degrees,
    profile_to_json_dict,
    satisfies,
    verdict_from_json_dict,
    verdict_to_json_dict,
)

from oracles import random_graph


def four_cycle():
    return from_multiplicity_matrix([[1, 1], [1, 1]])


def test_profile_four_cycle():
    p = expansion_profile(four_cycle(), 2)
    assert p.min_neighbors == {1: 2, 2: 2}
    assert p.min_edges == {1: 2, 2: 4}
    assert p.min_ratio() == 1.0


def test_profile_parallel_pair():
    p = expansion_profile(from_multiplicity_matrix([[2]]), 1)
    assert p.min_neighbors[1] == 1
    assert p.min_edges[1] == 2


def test_profile_k_max_validation():
    with pytest.raises(ValueError):
        expansion_profile(four_cycle(), 0)
    with pytest.raises(ValueError):
        expansion_profile(four_cycle(), 3)


def test_profile_budget():
    g = from_multiplicity_matrix(np.ones((3, 20), dtype=int))
    with pytest.raises(BudgetExceeded):
        expansion_profile(g, 10, max_subsets=100)


def _brute_profile(g, k_max):
    adj = [set(g.var_adjacency[v]) for v in range(g.num_vars)]
    deg = node_degrees(g)[0]
    out_n, out_e = {}, {}
    for k in range(1, k_max + 1):
        out_n[k] = min(len(set().union(*(adj[v] for v in s))) for s in combinations(range(g.num_vars), k))
        out_e[k] = min(sum(deg[v] for v in s) for s in combinations(range(g.num_vars), k))
    return out_n, out_e


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_profile_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, 6, 6, max_mult=2, density=0.5, min_vars=2, min_checks=1)
    k_max = min(4, g.num_vars)
    p = expansion_profile(g, k_max)
    brute_n, brute_e = _brute_profile(g, k_max)
    assert p.min_neighbors == brute_n
    assert p.min_edges == brute_e
    for k in range(1, k_max + 1):
        # Distinct neighbours never exceed incident edges, and witnesses
        # actually achieve the reported minima.
        assert p.min_neighbors[k] <= p.min_edges[k]
        wit = p.neighbor_witnesses[k]
        assert len(wit) == k
        assert len(set().union(*({c for c in g.var_adjacency[v]} for v in wit))) == p.min_neighbors[k]
        ewit = p.edge_witnesses[k]
        assert sum(node_degrees(g)[0][v] for v in ewit) == p.min_edges[k]


def test_profile_k1_is_min_degree():
    rng = np.random.default_rng(17)
    for _ in range(30):
        g = random_graph(rng, 7, 7, max_mult=2, density=0.5, min_vars=1, min_checks=1)
        p = expansion_profile(g, 1)
        deg = node_degrees(g)[0]
        assert p.min_edges[1] == min(deg)
        assert p.min_neighbors[1] == min(
            len(set(g.var_adjacency[v])) for v in range(g.num_vars)
        )


def test_satisfies_expansion_pass_and_fail():
    g = four_cycle()
    ok = satisfies(g, CriteriaConfig(neighbor_ratio=1.0, girth_floor=None))
    assert ok.passed
    bad = satisfies(g, CriteriaConfig(neighbor_ratio=1.5, girth_floor=None))
    assert not bad.passed
    (crit,) = bad.criteria
    assert crit.name == "expansion"
    assert crit.witness == (0, 1)


def test_satisfies_girth_and_stopping():
    g = four_cycle()
    v = satisfies(g, CriteriaConfig(neighbor_ratio=None, girth_floor=4, stopping_floor=2, stopping_cap=4))
    assert v.passed
    names = [c.name for c in v.criteria]
    assert names == ["girth", "stopping"]
    v2 = satisfies(g, CriteriaConfig(neighbor_ratio=None, girth_floor=6))
    assert not v2.passed


def test_satisfies_stopping_floor_with_cap_exceeded():
    # Forest: no nonempty stopping set up to the cap counts as passing
    # any finite floor.
    g = from_multiplicity_matrix([[1, 1], [1, 0]])
    v = satisfies(g, CriteriaConfig(neighbor_ratio=None, girth_floor=None, stopping_floor=3, stopping_cap=2))
    assert v.passed


def test_tightening_thresholds_never_rescues_a_failure():
    rng = np.random.default_rng(23)
    for _ in range(25):
        g = random_graph(rng, 6, 6, max_mult=1, density=0.5, min_vars=2, min_checks=2)
        loose = CriteriaConfig(neighbor_ratio=0.5, girth_floor=4, stopping_floor=None)
        tight = CriteriaConfig(neighbor_ratio=1.0, girth_floor=6, stopping_floor=None)
        if not satisfies(g, loose).passed:
            assert not satisfies(g, tight).passed


def test_config_defaults_and_validation():
    cfg = CriteriaConfig()
    assert cfg.effective_k_max(20) == 8
    assert cfg.effective_k_max(3) == 3
    with pytest.raises(ValueError):
        CriteriaConfig(neighbor_ratio=0.0)
    with pytest.raises(ValueError):
        CriteriaConfig(k_max=0)
    with pytest.raises(ValueError):
        CriteriaConfig(stopping_cap=0)
    with pytest.raises(ValueError):
        CriteriaConfig(weights=("stopping", "mystery"))


def test_config_round_trip_and_unknown_keys():
    cfg = CriteriaConfig(k_max=3, neighbor_ratio=1.25, stopping_floor=4)
    assert config_from_dict(config_to_json_dict(cfg)) == cfg
    with pytest.raises(FormatError):
        config_from_dict({"nieghbor_ratio": 1.0})


def test_load_criteria_json(tmp_path):
    p = tmp_path / "crit.json"
    p.write_text('{"k_max": 2, "neighbor_ratio": 1.0, "girth_floor": 8}')
    cfg = load_criteria(p)
    assert cfg.k_max == 2
    assert cfg.girth_floor == 8
    assert cfg.stopping_cap == 8  # defaults survive


def test_load_criteria_toml(tmp_path):
    p = tmp_path / "crit.toml"
    p.write_text('k_max = 2\nneighbor_ratio = 1.0\ngirth_floor = 8\nweights = ["girth"]\n')
    cfg = load_criteria(p)
    assert cfg.k_max == 2
    assert cfg.weights == ("girth",)


def test_load_criteria_rejects_bad_files(tmp_path):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{nope")
    with pytest.raises(FormatError):
        load_criteria(bad_json)
    bad_toml = tmp_path / "bad.toml"
    bad_toml.write_text("= nope")
    with pytest.raises(FormatError):
        load_criteria(bad_toml)
    unknown = tmp_path / "unknown.json"
    unknown.write_text('{"spam": 1}')
    with pytest.raises(FormatError):
        load_criteria(unknown)


def test_config_hash_stable_and_sensitive():
    a = CriteriaConfig()
    b = CriteriaConfig()
    c = CriteriaConfig(girth_floor=8)
    assert config_hash(a) == config_hash(b)
    assert config_hash(a) != config_hash(c)


def test_verdict_json_round_trip():
    v = satisfies(four_cycle(), CriteriaConfig(neighbor_ratio=1.5))
    doc = verdict_to_json_dict(v)
    assert verdict_from_json_dict(doc) == v
    with pytest.raises(FormatError):
        verdict_from_json_dict({"pass": True})


def test_profile_json_shape():
    doc = profile_to_json_dict(expansion_profile(four_cycle(), 2))
    assert doc["min_neighbors"] == {"1": 2, "2": 2}
    assert doc["min_edges"] == {"1": 2, "2": 4}
    assert set(doc) == {
        "k_max",
        "min_neighbors",
        "min_edges",
        "neighbor_witnesses",
        "edge_witnesses",
    }
