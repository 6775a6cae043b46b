import json

import pytest

from holgds.errors import (
    ArityMismatch,
    BadEdgeOrder,
    InvalidPairing,
    NonBipartiteEdge,
    NonSimpleGdsGraph,
    NotBipartite,
    ParseError,
)
from holgds.grids import (
    GdsGrid,
    HolantGrid,
    Multigraph,
    check_pairing,
    parse_instance,
    parse_source_graph,
    render_instance,
    render_source_graph,
)
from holgds.signatures import Signature, equality, symmetric

from conftest import data_text, random_gds_grid, random_holant_grid

K2 = Multigraph(2, [(0, 1)])
TRIANGLE = Multigraph(3, [(0, 1), (1, 2), (2, 0)])


# -- validation -------------------------------------------------------------------------

def test_gds_k2_valid():
    GdsGrid.build(K2, [symmetric([0, 1, 1])] * 2)


def test_gds_k2_arity_mismatch():
    with pytest.raises(ArityMismatch):
        GdsGrid.build(K2, [symmetric([0, 1, 1, 1])] * 2)


def test_holant_triangle_valid():
    g = HolantGrid.build(TRIANGLE, [equality(2)] * 3)
    assert g.orders == ((0, 2), (0, 1), (1, 2))


def test_holant_arity_mismatch():
    with pytest.raises(ArityMismatch):
        HolantGrid.build(TRIANGLE, [equality(3)] * 3)


def test_self_loop_counts_twice():
    g = Multigraph(1, [(0, 0)])
    assert g.incident(0) == [0, 0]
    HolantGrid.build(g, [equality(2)])


def test_bad_edge_order():
    with pytest.raises(BadEdgeOrder):
        HolantGrid.build(TRIANGLE, [equality(2)] * 3, [(0, 0), (0, 1), (1, 2)])
    with pytest.raises(BadEdgeOrder):
        GdsGrid.build(K2, [symmetric([0, 1, 1])] * 2, [(0,), (0,)])


def test_gds_rejects_multigraph():
    with pytest.raises(NonSimpleGdsGraph):
        GdsGrid.build(Multigraph(2, [(0, 1), (0, 1)]), [symmetric([0, 1, 1, 1])] * 2)
    with pytest.raises(NonSimpleGdsGraph):
        GdsGrid.build(Multigraph(1, [(0, 0)]), [symmetric([0, 1, 1, 1])])


def test_gds_rejects_domain4():
    with pytest.raises(ArityMismatch):
        GdsGrid.build(K2, [Signature(4, 2, [1] * 16)] * 2)


def test_bipartition_edge_within_side():
    with pytest.raises(NonBipartiteEdge):
        Multigraph(2, [(0, 1)], (0, 0)).validate()


def test_two_coloring_odd_cycle():
    with pytest.raises(NotBipartite):
        TRIANGLE.two_coloring()
    assert not TRIANGLE.is_bipartite()
    assert Multigraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).is_bipartite()


def test_endpoint_out_of_range():
    with pytest.raises(ValueError):
        Multigraph(2, [(0, 2)]).validate()


# -- symmetric pairing ---------------------------------------------------------------------

def test_pairing_theta_and_k33():
    theta = Multigraph(2, [(0, 1)] * 3, (0, 1), ((0, 1),))
    assert check_pairing(theta)
    k33 = Multigraph(6, [(a, b) for a in range(3) for b in range(3, 6)],
                     (0, 0, 0, 1, 1, 1), ((0, 3), (1, 4), (2, 5)))
    assert check_pairing(k33)


def test_pairing_respects_multiplicity():
    # u0-v1 doubled but u1-v0 single
    g = Multigraph(4, [(0, 2), (0, 3), (0, 3), (1, 2), (1, 3)], (0, 0, 1, 1), ((0, 2), (1, 3)))
    with pytest.raises(InvalidPairing):
        g.validate()
    assert not check_pairing(g)


def test_pairing_must_be_bijection():
    g = Multigraph(4, [(0, 2), (1, 3)], (0, 0, 1, 1), ((0, 2), (0, 3)))
    with pytest.raises(InvalidPairing):
        g.validate()


def test_pairing_path_fails():
    # u0-v0, u0-v1, u1-v1: (u0, v1) present but (u1, v0) absent
    g = Multigraph(4, [(0, 2), (0, 3), (1, 3)], (0, 0, 1, 1), ((0, 2), (1, 3)))
    assert not check_pairing(g)


def test_no_pairing_is_not_paired():
    assert not check_pairing(K2)


# -- instance format ------------------------------------------------------------------------

def test_parse_k2_file():
    g = parse_instance(data_text("k2_ds.json"))
    assert isinstance(g, GdsGrid)
    assert g.graph.vertex_count == 2
    assert g.signatures[0] == symmetric([0, 1, 1])


def test_parse_triangle_file():
    g = parse_instance(data_text("triangle_eq.json"))
    assert isinstance(g, HolantGrid) and g.graph.vertex_count == 3


@pytest.mark.parametrize("name", ["k2_ds.json", "c4_ds.json", "triangle_eq.json"])
def test_bundled_files_are_canonical(name):
    text = data_text(name)
    assert render_instance(parse_instance(text)) == text


def _k2_doc(**over):
    doc = {
        "kind": "gds",
        "signatures": {"ds": {"arity": 2, "domain": 2, "symmetric": ["0", "1", "1"]}},
        "vertices": [{"id": 0, "sig": "ds"}, {"id": 1, "sig": "ds"}],
        "edges": [[0, 1]],
    }
    doc.update(over)
    return doc


def test_omitted_order_defaults():
    g = parse_instance(json.dumps(_k2_doc()))
    assert g.orders == ((1,), (0,))


def test_malformed_scalar_one_over_zero():
    doc = _k2_doc(signatures={"ds": {"arity": 2, "domain": 2, "symmetric": ["0", "1/0", "1"]}})
    with pytest.raises(ParseError) as info:
        parse_instance(json.dumps(doc))
    assert info.value.field == "signatures.ds"


def test_parse_error_line_number():
    with pytest.raises(ParseError) as info:
        parse_instance('{\n  "kind": "gds",\n  oops\n}')
    assert info.value.line == 3


@pytest.mark.parametrize("over, fld", [
    ({"kind": "graph"}, "kind"),
    ({"edges": [[0, 5]]}, "edges[0]"),
    ({"edges": [[0]]}, "edges[0]"),
    ({"vertices": [{"id": 0, "sig": "ds"}, {"id": 0, "sig": "ds"}]}, "vertices[1].id"),
    ({"vertices": [{"id": 0, "sig": "ds"}, {"id": 1, "sig": "nope"}]}, "vertices[1].sig"),
    ({"tags": {"planar": "yes"}}, "tags.planar"),
])
def test_parse_error_fields(over, fld):
    with pytest.raises(ParseError) as info:
        parse_instance(json.dumps(_k2_doc(**over)))
    assert info.value.field == fld


def test_parse_rejects_invalid_grid():
    doc = _k2_doc(signatures={"ds": {"arity": 3, "domain": 2, "symmetric": ["0", "1", "1", "1"]}})
    with pytest.raises(ParseError):
        parse_instance(json.dumps(doc))


def test_holant4_kind_requires_domain4():
    doc = {"kind": "holant4",
           "signatures": {"e": {"arity": 2, "domain": 2, "symmetric": ["1", "0", "1"]}},
           "vertices": [{"id": 0, "sig": "e"}], "edges": [[0, 0]]}
    with pytest.raises(ParseError):
        parse_instance(json.dumps(doc))


def test_round_trip_random_holant(rnd):
    for domain in (2, 4):
        for _ in range(25):
            g = random_holant_grid(rnd, domain, max_edges=4 if domain == 4 else 8)
            back = parse_instance(render_instance(g))
            assert back == g
            assert render_instance(back) == render_instance(g)


def test_round_trip_random_gds(rnd):
    for _ in range(40):
        g = random_gds_grid(rnd)
        assert parse_instance(render_instance(g)) == g


def test_round_trip_keeps_tags():
    g = Multigraph(2, [(0, 1)] * 3, (0, 1), ((0, 1),))
    grid = HolantGrid.build(g, [equality(3)] * 2, planar=True)
    back = parse_instance(render_instance(grid))
    assert back.planar is True
    assert back.graph.sym_pairing == ((0, 1),)


def test_source_graph_files():
    theta = parse_source_graph(data_text("theta.json"))
    assert theta.vertex_count == 2 and len(theta.edges) == 3
    k33 = parse_source_graph(data_text("k33.json"))
    assert k33.vertex_count == 6 and k33.is_simple()
    assert render_source_graph(k33) == data_text("k33.json")


def test_source_graph_rejects_same_side_edge():
    with pytest.raises(ParseError):
        parse_source_graph('{"n_per_side": 2, "edges": [[0, 1]]}')
    with pytest.raises(ParseError):
        parse_source_graph('{"n_per_side": 0, "edges": []}')


def test_source_graph_round_trip_keeps_sides_and_pairing():
    from holgds.transforms import double
    d = double(parse_source_graph(data_text("k33.json")))
    back = parse_source_graph(render_source_graph(d))
    assert back == d and check_pairing(back)
