import itertools
import random

import pytest
from hypothesis import given, settings

from conftest import periodic_sets
from contact_duality import (AtomGraph, FiniteSpace, Ideal, LocalContactAlgebra, Overlap, Partition,
                             PowersetAlgebra, PreconditionError, UltPeriodicAlgebra, atom_graphs, c_rho,
                             check_lca, check_nca, finite_ideals, rc_algebra)
from contact_duality.extensions import (LocalProximitySpace, admissibility_report, admissible_lcas,
                                        alexandroff_ncr, beta_ncr, compare_ncr, enumerate_ka, inf_ncr,
                                        is_admissible_ncr, ka_hasse_dot, la_membership, lca_extension_order,
                                        local_proximity_spaces, njastad_delta, reconstruct_local_proximity,
                                        relation_subset, restrict_local_proximity, restricts_to, set_partitions,
                                        sup_ncr, wallman_check)
from contact_duality.report import STRUCTURAL
from oracles import atom_contact, beta_dyadic, beta_gfp, partition_related, product_sup_related, truncate


def compact(A, rho=None):
    return LocalContactAlgebra(A, rho or Overlap(A), Ideal.all())


def finite_lcas(max_atoms=3):
    for n in range(max_atoms + 1):
        A = PowersetAlgebra(range(n))
        for rho in atom_graphs(A):
            for I in finite_ideals(A):
                L = LocalContactAlgebra(A, rho, I)
                if check_lca(L).ok:
                    yield L


def index_edges(C):
    return {(min(p), min(q)) for e in C.edges for p, q in [tuple(e)]}


@pytest.fixture
def up_lca(up6):
    return LocalContactAlgebra(up6, Overlap(up6), Ideal.finite_elements())


# admissibility ------------------------------------------------------------------------------

def test_c_rho_admissible():
    for L in finite_lcas():
        if check_nca(L.algebra, L.rho).ok:
            assert is_admissible_ncr(L, c_rho(L))[0]


def test_compact_finite_only_rho_admissible():
    for L in finite_lcas():
        ka = [C for C in atom_graphs(L.algebra) if is_admissible_ncr(L, C)[0]]
        if check_nca(L.algebra, L.rho).ok:
            assert len(ka) == 1 and ka[0].same_as(L.rho)
        else:
            assert ka == []
        assert len(enumerate_ka(L)) == len(ka)


def test_rc1_witness(p2):
    L = compact(p2, AtomGraph.from_labels(p2, [("p", "q")]))
    ok, rep = is_admissible_ncr(L, Overlap(p2))
    assert not ok and not rep["RC1"].holds
    assert rep["RC1"].witness == (p2.element(["p"]), p2.element(["q"]))


def test_evens_odds_admissible(up_lca, up6):
    ok, rep = is_admissible_ncr(up_lca, Partition(up6, 2, [[0], [1]]))
    assert ok
    assert rep["RC2"].method == STRUCTURAL


@pytest.mark.parametrize("m", [1, 2, 3])
def test_small_partitions_admissible(up_lca, up6, m):
    for blocks in set_partitions(range(m)):
        assert is_admissible_ncr(up_lca, Partition(up6, m, blocks))[0]


def test_sampled_mod6_partitions_admissible(up_lca):
    ka = enumerate_ka(up_lca)
    assert len(ka) == 203
    for C in random.Random(7).sample(ka, 12):
        assert is_admissible_ncr(up_lca, C)[0]


def test_alexandroff_is_c_rho(up_lca, p3):
    assert alexandroff_ncr(compact(p3)).same_as(Overlap(p3))
    assert alexandroff_ncr(up_lca).partition_form()[1] == frozenset([frozenset(range(6))])


# beta ------------------------------------------------------------------------------------

def test_beta_p2_overlap(p2):
    C = beta_ncr(compact(p2))
    assert not C(p2.element(["p"]), p2.element(["q"]))


def test_beta_finite_cofinite_is_overlap(fc):
    assert beta_ncr(LocalContactAlgebra(fc, Overlap(fc), Ideal.finite_elements())).kind == "overlap"


def test_beta_matches_both_oracles():
    for n in range(4):
        A = PowersetAlgebra(range(n))
        full = frozenset(range(n))
        for rho in atom_graphs(A):
            C = beta_ncr(compact(A, rho))
            rel = atom_contact(index_edges(rho))
            g, d = beta_gfp(rel, full), beta_dyadic(rel, full)
            for a, b in itertools.product(A.elements(), repeat=2):
                assert C(a, b) == g(a, b) == d(a, b), (index_edges(rho), a, b)


@pytest.mark.parametrize("n", range(1, 5))
def test_beta_discrete_completely_separated(n):
    L = rc_algebra(FiniteSpace.discrete(list(range(n))))
    A = L.algebra
    C = beta_ncr(L)
    for a, b in itertools.product(A.elements(), repeat=2):
        assert (not C(a, b)) == A.is_zero(A.meet(a, b))


# lattice ----------------------------------------------------------------------------------

def test_c_rho_least_beta_greatest_finite():
    for L in finite_lcas():
        for C in enumerate_ka(L):
            assert compare_ncr(c_rho(L), C).verdict in ("precedes", "equal")
            assert compare_ncr(C, beta_ncr(L)).verdict in ("precedes", "equal")


def test_c_rho_least_beta_greatest_partitions(up_lca):
    lo, hi = c_rho(up_lca), beta_ncr(up_lca)
    for C in enumerate_ka(up_lca):
        v1, v2 = compare_ncr(lo, C), compare_ncr(C, hi)
        assert v1.verdict in ("precedes", "equal") and v2.verdict in ("precedes", "equal")
        assert v1.method == STRUCTURAL


def test_sup_inf_exist_for_finite_subsets():
    for L in finite_lcas():
        ka = enumerate_ka(L)
        for r in range(1, len(ka) + 1):
            for S in itertools.combinations(ka, r):
                s, i = sup_ncr(L, S), inf_ncr(L, S)
                for C in S:
                    assert compare_ncr(C, s).verdict in ("precedes", "equal")
                    assert compare_ncr(i, C).verdict in ("precedes", "equal")


def test_sup_idempotent_and_c_rho_neutral(up_lca, up6):
    C = Partition(up6, 3, [[0], [1, 2]])
    assert compare_ncr(sup_ncr(up_lca, [C]), C).verdict == "equal"
    assert compare_ncr(sup_ncr(up_lca, [c_rho(up_lca), C]), C).verdict == "equal"


def test_sup_is_least_upper_bound(up_lca):
    ka = enumerate_ka(up_lca)
    rng = random.Random(11)
    for _ in range(15):
        C1, C2 = rng.sample(ka, 2)
        s = sup_ncr(up_lca, [C1, C2])
        for C in (C1, C2):
            assert compare_ncr(C, s).verdict in ("precedes", "equal")
        for K in ka:
            above = all(compare_ncr(C, K).verdict in ("precedes", "equal") for C in (C1, C2))
            if above:
                assert compare_ncr(s, K).verdict in ("precedes", "equal")


def test_inf_is_greatest_lower_bound(up_lca):
    ka = enumerate_ka(up_lca)
    rng = random.Random(12)
    for _ in range(15):
        C1, C2 = rng.sample(ka, 2)
        i = inf_ncr(up_lca, [C1, C2])
        for K in ka:
            below = all(compare_ncr(K, C).verdict in ("precedes", "equal") for C in (C1, C2))
            if below:
                assert compare_ncr(K, i).verdict in ("precedes", "equal")


def test_sup_mod2_mod3_is_mod6(up_lca, up6):
    s = sup_ncr(up_lca, [Partition(up6, 2, [[0], [1]]), Partition(up6, 3, [[0], [1], [2]])])
    assert s.partition_form() == Partition(up6, 6, [[r] for r in range(6)]).partition_form()
    i = inf_ncr(up_lca, [Partition(up6, 2, [[0], [1]]), Partition(up6, 3, [[0], [1], [2]])])
    assert i.partition_form()[0] == 1


UP6 = UltPeriodicAlgebra(6)
SUP23 = sup_ncr(LocalContactAlgebra(UP6, Overlap(UP6), Ideal.finite_elements()),
                [Partition(UP6, 2, [[0], [1]]), Partition(UP6, 3, [[0], [1], [2]])])


@settings(max_examples=200)
@given(periodic_sets(6), periodic_sets(6))
def test_sup_mod2_mod3_truncation(a, b):
    A, s = UP6, SUP23
    ta, tb = truncate(A, a), truncate(A, b)
    assert s(a, b) == product_sup_related((2, 3), ta, tb)
    assert s(a, b) == partition_related([{r} for r in range(6)], 6, ta, tb)


def test_sup_rejects_inadmissible(up_lca, up6):
    with pytest.raises(PreconditionError):
        sup_ncr(up_lca, [])
    L = compact(PowersetAlgebra("pq"))
    with pytest.raises(PreconditionError):
        sup_ncr(L, [AtomGraph.from_labels(L.algebra, [("p", "q")])])


def test_compare_examples(up_lca, up6):
    m2, m3 = Partition(up6, 2, [[0], [1]]), Partition(up6, 3, [[0], [1], [2]])
    cmp = compare_ncr(m2, m3)
    assert cmp.verdict == "incomparable"
    assert cmp.witness_12 is not None and cmp.witness_21 is not None
    assert m2(*cmp.witness_12) and not m3(*cmp.witness_12)
    assert m3(*cmp.witness_21) and not m2(*cmp.witness_21)
    assert compare_ncr(m2, m2).verdict == "equal"
    assert compare_ncr(c_rho(up_lca), m2).verdict == "precedes"
    assert compare_ncr(m2, c_rho(up_lca)).verdict == "follows"


def test_relation_subset_finite_witness(p2):
    ok, w, _ = relation_subset(AtomGraph.from_labels(p2, [("p", "q")]), Overlap(p2))
    assert not ok and w == (p2.element(["p"]), p2.element(["q"]))


def test_hasse_mod3(up_lca, up6):
    rels = [Partition(up6, 3, b) for b in set_partitions(range(3))]
    names = ["P%d" % i for i in range(len(rels))]
    dot = ka_hasse_dot(rels, names)
    assert dot.startswith("digraph")
    assert dot.count("->") == 6


# extension order ---------------------------------------------------------------------------

def test_extension_reflexive(p3, up_lca):
    for base in (compact(p3), up_lca):
        v = lca_extension_order(base, base, base)
        assert v["leq"] and v["leq_s"]


def test_finite_membership_forces_base():
    for n in range(4):
        A = PowersetAlgebra(range(n))
        base = compact(A)
        for rho in atom_graphs(A):
            for I in finite_ideals(A):
                cand = LocalContactAlgebra(A, rho, I)
                if la_membership(base, cand).ok:
                    assert rho.same_as(base.rho) and I.top_element(A) == A.one


def test_finite_cofinite_fixture(fc):
    base = LocalContactAlgebra(fc, Overlap(fc), Ideal.finite_elements())
    big = LocalContactAlgebra(fc, Overlap(fc), Ideal.all())
    v = lca_extension_order(base, big, base)
    assert v["leq"] and not v["leq_s"]
    assert "free_cofinite" in v["leq_s_witness"][0]
    back = lca_extension_order(base, base, big)
    assert not back["leq"] and not back["leq_s"]


def test_extension_refuses_non_member(p2):
    base = compact(p2)
    cand = compact(p2, AtomGraph.from_labels(p2, [("p", "q")]))
    assert not la_membership(base, cand)["LA3"].holds
    with pytest.raises(PreconditionError):
        lca_extension_order(base, cand, base)


# local proximity spaces -----------------------------------------------------------------------

def overlap_space(points):
    A = PowersetAlgebra(points)
    return LocalProximitySpace(points, Overlap(A))


def test_restrict_two_points():
    X, L, rep = restrict_local_proximity(overlap_space("ab"))
    assert rep.ok and X.is_discrete
    assert len(L.algebra.elements()) == 4 and L.bounded.top == frozenset("ab")


def test_restrict_singleton():
    X, L, rep = restrict_local_proximity(overlap_space("a"))
    assert rep.ok and len(L.algebra.elements()) == 2


def test_restrict_non_separated():
    A = PowersetAlgebra("abc")
    P = LocalProximitySpace("abc", AtomGraph.from_labels(A, [("a", "b")]))
    assert not P.is_separated()
    with pytest.raises(PreconditionError):
        restrict_local_proximity(P)
    X, L, rep = restrict_local_proximity(P, check_separated=False)
    assert not X.is_discrete
    assert set(L.algebra.elements()) == {frozenset(), frozenset("ab"), frozenset("c"), frozenset("abc")}
    assert rep.ok


def test_reconstruct_discrete_overlap():
    X = FiniteSpace.discrete(list("abc"))
    P = reconstruct_local_proximity(X, rc_algebra(X))
    assert P.same_as(overlap_space("abc"))


def test_reconstruct_refuses_inadmissible():
    X = FiniteSpace.discrete(list("ab"))
    A = rc_algebra(X).algebra
    L = LocalContactAlgebra(A, AtomGraph.from_labels(A, [("a", "b")]), Ideal.all())
    assert not admissibility_report(X, L).ok
    with pytest.raises(PreconditionError):
        reconstruct_local_proximity(X, L)


@pytest.mark.parametrize("pts", ["", "a", "ab", "abc"])
def test_separated_spaces_are_overlap(pts):
    spaces = list(local_proximity_spaces(pts))
    assert len(spaces) == 1 and spaces[0].same_as(overlap_space(pts))


@pytest.mark.parametrize("pts", ["a", "ab", "abc"])
def test_round_trips(pts):
    for P in local_proximity_spaces(pts):
        X, L, rep = restrict_local_proximity(P)
        assert rep.ok
        assert reconstruct_local_proximity(X, L).same_as(P)
    X = FiniteSpace.discrete(list(pts))
    for L in admissible_lcas(X):
        assert restricts_to(reconstruct_local_proximity(X, L), X, L)


def test_sierpinski_not_recovered():
    # on a non-Tychonoff space the reconstructed proximity induces a coarser topology
    X = FiniteSpace.sierpinski("a", "b")
    for L in admissible_lcas(X):
        P = reconstruct_local_proximity(X, L)
        assert P.topology() != X


# Wallman -----------------------------------------------------------------------------------

def test_wallman_whole_algebra(p3):
    ok, rep = wallman_check(compact(p3), Overlap(p3), p3.elements())
    assert ok


def test_wallman_trivial_base_fails(p3):
    ok, rep = wallman_check(compact(p3), Overlap(p3), [p3.zero, p3.one])
    assert not ok and rep.holds("meet-closed", "(1)")
    a, c = rep["(2')"].witness
    assert p3.leq(a, c) and not p3.is_zero(a) and c != p3.one


def test_wallman_not_meet_closed(p3):
    p, q = p3.element(["p"]), p3.element(["q"])
    ok, rep = wallman_check(compact(p3), Overlap(p3), [p, q])
    assert not ok and rep["meet-closed"].witness == (p, q)


def test_wallman_clause_one_fails(p2):
    L = compact(p2)
    C = AtomGraph.from_labels(p2, [("p", "q")])
    ok, rep = wallman_check(L, C, p2.elements())
    assert not rep["(1)"].holds


# Njastad ---------------------------------------------------------------------------------------

def test_njastad_discrete_is_overlap():
    X = FiniteSpace.discrete(list("abc"))
    d = njastad_delta("abc", X, {x: x for x in "abc"})
    assert d.same_as(Overlap(d.algebra))


def test_njastad_sierpinski():
    S = FiniteSpace.sierpinski("a", "b")
    d = njastad_delta(["a"], S, {"a": "a"})
    one = frozenset("a")
    assert d(one, one) and not d(frozenset(), one)


def test_njastad_two_in_three():
    Y = FiniteSpace.generated("abc", [["a"], ["b"]])
    d = njastad_delta("ab", Y, {"a": "a", "b": "b"})
    assert d(frozenset("a"), frozenset("b"))
    assert LocalProximitySpace("ab", d).check().ok


def test_njastad_refusals():
    S = FiniteSpace.sierpinski("a", "b")
    with pytest.raises(PreconditionError):
        njastad_delta(["b"], S, {"b": "b"})
    with pytest.raises(PreconditionError):
        njastad_delta(["x", "y"], S, {"x": "a", "y": "a"})


def test_round_trip_exactly_on_clopen_topologies():
    # beyond the Tychonoff (discrete) case the round trip survives only when every open set is closed
    from contact_duality import enumerate_topologies
    for n in range(1, 4):
        for X in enumerate_topologies(list("abc")[:n]):
            clopen = all(X.is_closed(U) for U in X.opens)
            for L in admissible_lcas(X):
                assert restricts_to(reconstruct_local_proximity(X, L), X, L) == clopen
