"""Smoke tests for the python module: the main operations end to end."""

import os
import subprocess

import pytest

glc = pytest.importorskip("glc")


def test_encode_and_validate():
    g = glc.encode("\\x.x")
    assert g.node_count() == 1
    assert g.validate() == []
    assert glc.is_lambda_graph(g)


def test_omega_shape():
    omega = glc.encode("(\\x.x x) (\\x.x x)")
    assert omega.node_count() == 7
    assert glc.find_match_count(omega, "beta") == 1
    assert glc.is_isomorphic(omega, glc.omega_graph())


def test_reduce_identity_application():
    g = glc.compose_app(glc.encode("\\x.x"), glc.combinator("K"))
    red, trace = glc.reduce(g)
    assert trace.count("beta") == 1
    assert glc.is_isomorphic(red, glc.combinator("K"))


def test_skk_counts():
    g = glc.build_named("app(app(S,K),K)")
    red, trace = glc.reduce(g)
    assert trace.count("beta") == 5
    assert trace.count_local_prunes() == 1
    assert glc.is_isomorphic(red, glc.combinator("I"))


def test_succ_three_betas():
    g = glc.compose_app(glc.succ_graph(), glc.church(3))
    red, trace = glc.reduce(g)
    assert trace.count("beta") == 3
    assert glc.is_isomorphic(red, glc.church(4))


def test_equivalence_mod_structure():
    plus23 = glc.build_named("app(app(plus,church(2)),church(3))")
    red, _ = glc.reduce(plus23, [], 400)
    assert glc.equivalent_mod_structure(red, glc.church(5))


def test_serialize_round_trip():
    g = glc.church(4)
    h = glc.deserialize(g.serialize())
    assert glc.is_isomorphic(g, h)
    assert g.canonical_hash() == h.canonical_hash()


def test_predicates():
    s = glc.combinator("S")
    assert glc.is_lambda_graph(s)
    assert not glc.is_planar_in_disk(s)  # S hides a K3,3 minor
    assert glc.is_planar_in_disk(glc.church(3))


def test_planarize():
    s = glc.combinator("S")
    out, crossings = glc.planarize(s)
    assert crossings > 0
    assert glc.is_planar_in_disk(out)


def test_derived_moves():
    for variant in (1, 2, 3):
        ok, trace = glc.verify_planar_beta(variant)
        assert ok and trace.count("beta") == variant
    for eps in ("1", "a", "a^2*b^-1"):
        ok, _ = glc.verify_reidemeister_ii(eps)
        assert ok


def test_substitution_oracle():
    out = glc.substitute_str("\\y.x y", "x", "y")
    assert glc.alpha_eq_str(out, "\\z.y z")


def test_dot_export():
    assert glc.church(2).to_dot().startswith("digraph")


def test_cli_demo_if_available():
    cli = os.environ.get("GLC_CLI")
    if not cli:
        pytest.skip("GLC_CLI not set")
    manifest = os.path.join(os.path.dirname(__file__), "..", "..", "demos", "paper.toml")
    out = subprocess.run([cli, "demo", "--name", "skk", "--manifest", manifest],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip() == "beta=5 prune_local=1 result=I OK"
