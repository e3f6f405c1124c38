import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from petersen_girth.bounds import chi_c_complement_circular, chi_c_subdivision_formula, upper_even
from petersen_girth.errors import DomainError, InvalidInputError, SearchBudgetExhausted
from petersen_girth.graph_core import (
    SimpleGraph,
    complement,
    fractional_power,
    make_circular_complete,
    make_complete,
    make_cycle,
    subdivide,
    walk_power,
)
from petersen_girth.homomorphisms import (
    SearchOutcome,
    VertexMap,
    c5_coloring,
    chi_c_exact,
    circular_clique_hom,
    circular_ratios,
    clique_embedding,
    collapse_pet_to_pb,
    compose,
    cycle_noncolorability_certificate,
    eta_cycle_power_coloring,
    interleave_embedding,
    pb_circular_coloring,
    pet_to_cycle_power,
    search_hom,
    verify_hom,
)
from petersen_girth.odd_girth import IpSolution, ip_enumerate
from petersen_girth.petersen import GPParams, build_petersen


def random_graphs(count, max_vertices, seed):
    rng = np.random.default_rng(seed)
    for index in range(count):
        n = int(rng.integers(1, max_vertices + 1))
        graph = nx.gnp_random_graph(n, float(rng.uniform(0.2, 0.7)), seed=seed * 100 + index)
        yield SimpleGraph(n, tuple(graph.edges()))


def has_hom_by_brute_force(g, h):
    return any(all(h.has_edge(f[a], f[b]) for a, b in g.edges)
               for f in itertools.product(range(h.vertex_count), repeat=g.vertex_count))


# Verification

def test_verify_identity_and_constant_maps():
    c5 = make_cycle(5)
    assert verify_hom(VertexMap(c5, c5, tuple(range(5)))).ok
    check = verify_hom(VertexMap(c5, c5, (0,) * 5))
    assert not check.ok and check.failing_edge == (0, 1)


def test_verify_rejects_malformed_assignments():
    c5 = make_cycle(5)
    with pytest.raises(InvalidInputError):
        verify_hom(VertexMap(c5, c5, (0, 1, 2)))
    with pytest.raises(InvalidInputError):
        verify_hom(VertexMap(c5, c5, (0, 1, 2, 3, 5)))


def test_collapse_pet_to_pb():
    mapping = collapse_pet_to_pb(GPParams(7, 2))
    assert mapping.verified and verify_hom(mapping).ok
    assert mapping.source_name == "Pet(7,2)" and mapping.target_name == "Pb(7,2)"


def test_compose_requires_matching_graphs():
    first = collapse_pet_to_pb(GPParams(7, 2))
    with pytest.raises(InvalidInputError):
        compose(first, first)


# Search

@pytest.mark.parametrize("g,h,expected", [
    (build_petersen(GPParams(7, 3)), make_cycle(5), SearchOutcome.NONE),
    (build_petersen(GPParams(11, 3)), make_cycle(7), SearchOutcome.NONE),
    (make_cycle(9), make_cycle(5), SearchOutcome.FOUND),
    (build_petersen(GPParams(5, 2)), make_complete(3), SearchOutcome.FOUND),
    (make_complete(4), make_complete(3), SearchOutcome.NONE),
])
def test_search_hom_examples(g, h, expected):
    result = search_hom(g, h)
    assert result.outcome is expected
    if expected is SearchOutcome.FOUND:
        assert result.mapping.verified and verify_hom(result.mapping).ok


def test_search_hom_refutes_by_odd_girth_without_branching():
    result = search_hom(build_petersen(GPParams(9, 3)), make_cycle(5))
    assert result.outcome is SearchOutcome.NONE and result.nodes == 0


def test_search_hom_edge_cases():
    assert search_hom(SimpleGraph(0), make_cycle(5)).outcome is SearchOutcome.FOUND
    assert search_hom(make_cycle(5), SimpleGraph(0)).outcome is SearchOutcome.NONE
    assert search_hom(make_cycle(5), SimpleGraph(3)).outcome is SearchOutcome.NONE
    assert search_hom(SimpleGraph(4), SimpleGraph(1)).outcome is SearchOutcome.FOUND


def test_search_hom_reports_budget():
    result = search_hom(make_cycle(9), make_cycle(7), budget=1)
    assert result.outcome is SearchOutcome.BUDGET and result.mapping is None


def test_search_hom_matches_brute_force():
    sources = list(random_graphs(25, 6, seed=21))
    targets = list(random_graphs(25, 4, seed=22))
    for g, h in zip(sources, targets):
        found = search_hom(g, h).outcome is SearchOutcome.FOUND
        assert found == has_hom_by_brute_force(g, h), (g, h)


def test_target_transitive_pinning_keeps_answers():
    for g in random_graphs(15, 7, seed=23):
        for p, q in [(5, 2), (7, 3), (3, 1)]:
            h = make_circular_complete(p, q)
            assert search_hom(g, h, target_transitive=True).outcome == search_hom(g, h).outcome


# Circular chromatic number

def test_circular_ratios():
    assert circular_ratios(5) == [2, Fraction(5, 2), 3, 4, 5]


@pytest.mark.parametrize("g,p_max,expected", [
    (make_cycle(9), None, Fraction(9, 4)),
    (make_cycle(6), None, Fraction(2)),
    (make_complete(4), None, Fraction(4)),
    (build_petersen(GPParams(5, 2)), 10, Fraction(3)),
])
def test_chi_c_exact(g, p_max, expected):
    assert chi_c_exact(g, p_max=p_max) == expected


@pytest.mark.parametrize("k", range(1, 7))
def test_chi_c_of_odd_cycles(k):
    assert chi_c_exact(make_cycle(2 * k + 1)) == 2 + Fraction(1, k)


def atlas_graphs(min_vertices, max_vertices):
    for graph in nx.graph_atlas_g():
        size = graph.number_of_nodes()
        if min_vertices <= size <= max_vertices and graph.number_of_edges() and not nx.is_bipartite(graph):
            yield SimpleGraph(size, tuple(graph.edges()))


def maps_to(g, h):
    return search_hom(g, h).outcome is SearchOutcome.FOUND


@pytest.mark.parametrize("length", [5, 7])
def test_subdivision_and_cube_duality_on_small_atlas_graphs(length):
    cycle = make_cycle(length)
    cube = walk_power(cycle, 3)
    for g in atlas_graphs(3, 5):
        assert maps_to(fractional_power(g, 1, 3), cycle) == maps_to(g, cube), g


@pytest.mark.slow
@pytest.mark.parametrize("length", [5, 7])
def test_subdivision_and_cube_duality_on_atlas_graphs(length):
    cycle = make_cycle(length)
    cube = walk_power(cycle, 3)
    for g in atlas_graphs(6, 7):
        assert maps_to(fractional_power(g, 1, 3), cycle) == maps_to(g, cube), g


def test_chi_c_exact_reports_last_refuted_ratio():
    with pytest.raises(SearchBudgetExhausted) as info:
        chi_c_exact(build_petersen(GPParams(5, 2)), p_max=5)
    assert info.value.partial == Fraction(5, 2)


def test_chi_c_exact_rejects_edgeless():
    with pytest.raises(DomainError):
        chi_c_exact(SimpleGraph(3))


@pytest.mark.parametrize("p,q", [(p, q) for p in range(4, 11) for q in range(2, p // 2 + 1)])
def test_complement_of_circular_clique(p, q):
    assert chi_c_exact(complement(make_circular_complete(p, q))) == chi_c_complement_circular(p, q)


@pytest.mark.slow
@pytest.mark.parametrize("p,q", [(p, q) for p in range(11, 15) for q in range(2, p // 2 + 1)])
def test_complement_of_circular_clique_larger(p, q):
    assert chi_c_exact(complement(make_circular_complete(p, q))) == chi_c_complement_circular(p, q)


def test_subdivided_triangle():
    g = subdivide(make_cycle(3), 3)
    assert chi_c_exact(g) == chi_c_subdivision_formula(Fraction(3), 1) == Fraction(9, 4)


@pytest.mark.slow
def test_subdivided_complete_graph():
    assert chi_c_exact(subdivide(make_complete(4), 3)) == chi_c_subdivision_formula(Fraction(4), 1)


# Constructions

def test_pb_circular_coloring():
    coloring = pb_circular_coloring(GPParams(13, 4))
    assert coloring.threshold == 3 and coloring.values[1] == 9
    assert coloring.ratio == Fraction(13, 3)


@pytest.mark.parametrize("n,k", [(9, 4), (13, 2), (13, 3), (12, 4)])
def test_pb_circular_coloring_domain(n, k):
    with pytest.raises(DomainError):
        pb_circular_coloring(GPParams(n, k))


@pytest.mark.parametrize("n,k,threshold", [(11, 3, 4), (25, 3, 11), (9, 3, 3)])
def test_eta_cycle_power_coloring(n, k, threshold):
    coloring = eta_cycle_power_coloring(GPParams(n, k))
    assert coloring.threshold == threshold
    assert coloring.ratio == Fraction(2 * n, n - k)


@pytest.mark.parametrize("n,k", [(7, 3), (9, 4), (10, 3)])
def test_pet_to_cycle_power_domain(n, k):
    with pytest.raises(DomainError):
        pet_to_cycle_power(GPParams(n, k))


@pytest.mark.parametrize("p,q,p2,q2", [(7, 3, 5, 2), (5, 2, 3, 1), (9, 4, 7, 3), (5, 1, 5, 1)])
def test_circular_clique_hom(p, q, p2, q2):
    mapping = circular_clique_hom(p, q, p2, q2)
    assert mapping.verified and verify_hom(mapping).ok


def test_circular_clique_hom_rejects_larger_source():
    with pytest.raises(DomainError):
        circular_clique_hom(3, 1, 5, 2)


@pytest.mark.parametrize("n,k", [(25, 3), (15, 3), (43, 10)])
def test_c5_coloring(n, k):
    mapping = c5_coloring(GPParams(n, k))
    assert verify_hom(mapping).ok
    assert nx.is_isomorphic(mapping.target.to_networkx(), nx.cycle_graph(5))


@pytest.mark.parametrize("n,k", [(13, 3), (13, 4), (12, 4), (10, 3)])
def test_c5_coloring_domain(n, k):
    with pytest.raises(DomainError):
        c5_coloring(GPParams(n, k))


def test_c5_coloring_to_dict():
    data = c5_coloring(GPParams(25, 3)).to_dict()
    assert data["source"] == "Pet(25,3)" and data["target"] == "K_{5/2}"
    assert data["verified"] and len(data["assignment"]) == 50


@pytest.mark.parametrize("n,k", [(11, 3), (13, 3), (21, 5), (5, 2)])
def test_clique_embedding(n, k):
    witness = clique_embedding(GPParams(n, k))
    assert witness.verified
    assert witness.host.is_clique(witness.vertices)


def test_clique_embedding_size():
    witness = clique_embedding(GPParams(11, 3))
    assert witness.size == 10
    assert witness.to_dict()["vertices"][:3] == ["u0", "u1", "u2"]


def test_clique_embedding_negative_t():
    witness = clique_embedding(GPParams(11, 3), IpSolution(1, -4, -1))
    assert witness.verified and witness.size == 10
    assert witness.vertices[:5] == (0, 1, 9, 6, 3)


@pytest.mark.parametrize("n,k,size", [(15, 4, 10), (27, 8, 18), (35, 6, 14), (44, 10, 22)])
def test_clique_embedding_skips_the_t0_optimum(n, k, size):
    witness = clique_embedding(GPParams(n, k))
    assert witness.verified and witness.size == size
    assert "t=0" not in witness.description


def test_clique_embedding_pet_15_4_uses_negative_t():
    witness = clique_embedding(GPParams(15, 4))
    assert "(u=1, v=-4, t=-1)" in witness.description
    assert cycle_noncolorability_certificate(GPParams(15, 4)).valid


@pytest.mark.parametrize("n,k", [(9, 3), (6, 3), (7, 2)])
def test_clique_embedding_domain(n, k):
    with pytest.raises(DomainError):
        clique_embedding(GPParams(n, k))


def test_clique_embedding_rejects_t0_and_non_optimal():
    with pytest.raises(DomainError):
        clique_embedding(GPParams(5, 2), IpSolution(2, -1, 0))
    with pytest.raises(InvalidInputError):
        clique_embedding(GPParams(7, 3), IpSolution(2, -3, -1))


@pytest.mark.parametrize("n,k,q", [(7, 2, 6), (29, 4, 10)])
def test_interleave_embedding(n, k, q):
    report = interleave_embedding(GPParams(n, k), q)
    assert report.holds and report.max_ell >= q - 1
    assert report.power == k + 1


def test_interleave_embedding_default_q():
    assert interleave_embedding(GPParams(29, 4)).q == 10


def test_interleave_embedding_domain():
    with pytest.raises(DomainError):
        interleave_embedding(GPParams(11, 3))
    with pytest.raises(InvalidInputError):
        interleave_embedding(GPParams(7, 2), 1)


def test_cycle_noncolorability_certificate():
    certificate = cycle_noncolorability_certificate(GPParams(7, 3))
    assert certificate.valid
    assert (certificate.cycle_length, certificate.power) == (5, 3)
    assert search_hom(build_petersen(GPParams(7, 3)), make_cycle(5)).outcome is SearchOutcome.NONE
    assert certificate.to_dict()["valid"]


@pytest.mark.slow
def test_constructions_verify_up_to_120():
    for n in range(5, 121):
        for k in range(2, n // 2 + 1):
            params = GPParams(n, k)
            assert collapse_pet_to_pb(params).verified
            if n % 2 and k % 2 and n > 2 * k + 1:
                assert pet_to_cycle_power(params).verified
                eta_cycle_power_coloring(params)
            if n % 2 and k % 2 == 0 and k >= 4 and n % (k - 1) in (2 % (k - 1), (k - 3) % (k - 1)):
                pb_circular_coloring(params)


@pytest.mark.slow
def test_clique_embedding_up_to_120():
    checked = 0
    for n in range(5, 121):
        for k in range(2, n // 2 + 1):
            params = GPParams(n, k)
            result = ip_enumerate(params)
            if result is None or result.has_trivial_optimum or all(s.t == 0 for s in result.optima):
                continue
            witness = clique_embedding(params)
            assert witness.verified and witness.size == 4 * result.solution.r + 2, params
            checked += 1
    assert checked > 0


@pytest.mark.slow
def test_interleave_embedding_up_to_120():
    for n in range(5, 121):
        for k in range(2, n // 2 + 1, 2):
            assert interleave_embedding(GPParams(n, k)).holds, (n, k)


@pytest.mark.slow
def test_c5_coloring_for_odd_n_and_k():
    for n in range(15, 201, 2):
        for k in range(3, n // 5 + 1, 2):
            assert verify_hom(c5_coloring(GPParams(n, k))).ok, (n, k)


@pytest.mark.slow
def test_c5_coloring_via_pb_whenever_the_bound_allows():
    built = 0
    for n in range(5, 201, 2):
        for k in range(4, n // 2 + 1, 2):
            params = GPParams(n, k)
            bound = upper_even(params)
            if bound is None or bound > Fraction(5, 2):
                continue
            assert verify_hom(c5_coloring(params)).ok, (n, k)
            built += 1
    assert built > 0

