import itertools

import pytest

from contact_duality import (AlgebraHom, AtomGraph, FiniteSpace, Ideal, LocalContactAlgebra, Overlap,
                             PowersetAlgebra, SpaceMap, UnsupportedOperation, atom_graphs, check_morphism_conditions,
                             check_nca, cluster_report, clusters, dual_morphism, factor_embedding,
                             is_lca_embedding, map_properties, psi_a_morphism, psi_a_object,
                             relative_algebra, round_trip_algebra, round_trip_object, sigma_u)
from contact_duality.spaces import all_maps
from oracles import atom_contact, clusters_by_definition


def disc(pts):
    return FiniteSpace.discrete(list(pts))


def compact(A, rho=None):
    return LocalContactAlgebra(A, rho or Overlap(A), Ideal.all())


def nca_universe(max_atoms=3):
    for n in range(max_atoms + 1):
        A = PowersetAlgebra(range(n))
        for C in atom_graphs(A):
            if check_nca(A, C).ok:
                yield A, C


def homs(S, T):
    for choice in itertools.product(S.atoms(), repeat=len(T.atoms())):
        images = {p: T.join_all(q for q, c in zip(T.atoms(), choice) if c == p) for p in S.atoms()}
        yield AlgebraHom.from_atom_images(S, T, images)


# clusters ---------------------------------------------------------------------------

def test_overlap_clusters_p2(p2):
    cs = clusters(p2, Overlap(p2))
    p = p2.element(["p"])
    assert len(cs) == 2
    sp = next(c for c in cs if p in c.atoms)
    assert sp.members == frozenset([p, p2.one])


def test_pq_graph_single_cluster(p2):
    C = AtomGraph.from_labels(p2, [("p", "q")])
    cs = clusters(p2, C)
    assert len(cs) == 1
    assert cs[0].members == frozenset(e for e in p2.elements() if e)
    assert len(cs[0].atoms) == 2


def test_two_element_cluster():
    A = PowersetAlgebra(["p"])
    cs = clusters(A, Overlap(A))
    assert [c.members for c in cs] == [frozenset([A.one])]


def test_clusters_match_brute_force():
    for A, C in nca_universe():
        edges = {(min(p), min(q)) for e in C.edges for p, q in [tuple(e)]}
        oracle = clusters_by_definition(atom_contact(edges), frozenset(range(len(A.atoms()))))
        assert {c.members for c in clusters(A, C)} == set(oracle), edges


def test_sigma_needs_normality():
    # on the path 1-0-2 the set {a : a C 0} holds 1 and 2, which are apart
    A = PowersetAlgebra(range(3))
    C = AtomGraph.from_labels(A, [(0, 1), (0, 2)])
    s0 = next(c for c in clusters(A, C) if A.element([0]) in c.atoms)
    assert not cluster_report(A, C, s0)["pairwise-contact"].holds
    assert s0.members not in clusters_by_definition(atom_contact({(0, 1), (0, 2)}), frozenset(range(3)))


def test_sigma_by_definition_matches_shortcut():
    for A, C in nca_universe():
        for c in clusters(A, C):
            for p in c.atoms:
                assert sigma_u(A, C, p) == c.members


def test_cluster_kernel_all_ncas():
    for A, C in nca_universe():
        for c in clusters(A, C):
            rep = cluster_report(A, C, c)
            assert rep.ok, str(rep)


def test_symbolic_clusters_are_principal(fc):
    from contact_duality import CRho
    L = LocalContactAlgebra(fc, Overlap(fc), Ideal.finite_elements())
    cs = clusters(fc, CRho(L), limit=4)
    assert fc.atom(2) in cs[2] and fc.atom(1) not in cs[2]


# dual objects -------------------------------------------------------------------------

def test_dual_p3_is_discrete(p3):
    Y = psi_a_object(compact(p3))
    assert len(Y.points) == 3 and Y.is_discrete


def test_dual_p1_single_point():
    Y = psi_a_object(compact(PowersetAlgebra(["p"])))
    assert len(Y.points) == 1


def test_dual_pq_graph_single_point(p2):
    Y = psi_a_object(compact(p2, AtomGraph.from_labels(p2, [("p", "q")])))
    assert len(Y.points) == 1


def test_dual_refuses_symbolic(fc):
    with pytest.raises(UnsupportedOperation):
        psi_a_object(LocalContactAlgebra(fc, Overlap(fc), Ideal.finite_elements()))


def test_lambda_g_is_closed(p3):
    Y = psi_a_object(compact(p3))
    for a in p3.elements():
        assert Y.is_closed(Y.lambda_g(a))


# morphisms ----------------------------------------------------------------------------------

def test_psi_a_identity(p3):
    phi = AlgebraHom.identity(p3)
    L = compact(p3)
    f = psi_a_morphism(phi, L, L)
    assert all(f(x) == x for x in f.source.points)


def test_psi_a_swap():
    X = disc("12")
    phi = dual_morphism(SpaceMap(X, X, {"1": "2", "2": "1"}))
    f = psi_a_morphism(phi)
    for s in f.source.points:
        assert f(s) != s


def test_psi_a_constant():
    X, Y = disc("12"), disc("*")
    phi = dual_morphism(SpaceMap.constant(X, Y, "*"))
    f = psi_a_morphism(phi)
    assert len(f.source.points) == 2 and len(set(f.images.values())) == 1


def test_conditions_constant_map():
    X, Y = disc("12"), disc("*")
    rep = check_morphism_conditions(dual_morphism(SpaceMap.constant(X, Y, "*")))
    assert rep["IS"].holds
    assert not rep["LS"].holds
    assert set(rep["LS"].witness) == {frozenset("1"), frozenset("2")}


def test_conditions_identity():
    rep = check_morphism_conditions(dual_morphism(SpaceMap.identity(disc("123"))))
    assert rep.ok


def test_conditions_injection():
    X, Y = disc("1"), disc("12")
    rep = check_morphism_conditions(dual_morphism(SpaceMap(X, Y, {"1": "1"})))
    assert rep["LS"].holds
    assert not rep["IS"].holds
    assert rep["IS"].witness == (frozenset("2"),)


def test_psi_a_refuses_without_el1(p2):
    # identity hom read against a smaller contact on the target
    L_src = compact(p2, AtomGraph.from_labels(p2, [("p", "q")]))
    L_tgt = compact(p2)
    phi = AlgebraHom.identity(p2)
    ok = check_morphism_conditions(phi, compact(p2), L_src)
    assert not ok["EL1"].holds
    from contact_duality import PreconditionError
    with pytest.raises(PreconditionError):
        psi_a_morphism(phi, L_tgt, L_src)


def test_lca_embedding_examples(p3):
    assert is_lca_embedding(AlgebraHom.identity(p3), compact(p3), compact(p3))[0]
    phi = dual_morphism(SpaceMap.constant(disc("12"), disc("*"), "*"))
    assert is_lca_embedding(phi)[0]
    fl = map_properties(psi_a_morphism(phi)).flags()
    assert fl["quasi-open"] and fl["semi-open"] and fl["perfect"] and fl["surjective"]
    B, epi = relative_algebra(p3, p3.element(["p", "q"]))
    ok, rep = is_lca_embedding(epi, compact(p3), compact(B))
    assert not ok and not rep["injective"].holds


# classification theorems on discrete spaces ---------------------------------------------------

SPACES = [disc("a"), disc("ab"), disc("abc")]


def test_surjective_iff_is():
    for X, Y in itertools.product(SPACES, repeat=2):
        for f in all_maps(X, Y):
            rep = check_morphism_conditions(dual_morphism(f))
            assert rep["IS"].holds == map_properties(f).flag("surjective")


def test_injective_iff_ls():
    for X, Y in itertools.product(SPACES, repeat=2):
        for f in all_maps(X, Y):
            rep = check_morphism_conditions(dual_morphism(f))
            assert rep["LS"].holds == map_properties(f).flag("injective")


def test_is_morphisms_are_injective():
    algs = [PowersetAlgebra(range(n)) for n in range(1, 4)]
    for S, T in itertools.product(algs, repeat=2):
        for phi in homs(S, T):
            rep = check_morphism_conditions(phi, compact(S), compact(T))
            if rep.holds("EL1", "L2", "IS"):
                assert rep["injective"].holds


def test_bijection_iff_iso_with_lo():
    for X, Y in itertools.product(SPACES, repeat=2):
        for f in all_maps(X, Y):
            rep = check_morphism_conditions(dual_morphism(f))
            fl = map_properties(f).flags()
            assert (rep["boolean-iso"].holds and rep["LO"].holds) == (fl["injective"] and fl["surjective"])


def test_dual_map_round_trip():
    """Psi^a(Psi^t(f)) matches f under the point identification x -> sigma_x."""
    for X, Y in itertools.product(SPACES, repeat=2):
        tX, _ = round_trip_object(X)
        tY, _ = round_trip_object(Y)
        for f in all_maps(X, Y):
            g = psi_a_morphism(dual_morphism(f))
            assert all(g(tX(x)) == tY(f(x)) for x in X.points)


def test_psi_a_functorial():
    algs = [PowersetAlgebra(range(n)) for n in range(1, 4)]
    for A, B, C in itertools.product(algs, repeat=3):
        for psi in homs(A, B):
            for phi in homs(B, C):
                comp = phi.compose(psi)
                f = psi_a_morphism(comp, compact(A), compact(C))
                g = psi_a_morphism(psi, compact(A), compact(B))
                h = psi_a_morphism(phi, compact(B), compact(C))
                assert all(f(x) == g(h(x)) for x in f.source.points)


# factorization ---------------------------------------------------------------------------------

def test_factor_closed_embedding():
    f = SpaceMap(disc("a"), disc("ab"), {"a": "a"})
    fac = factor_embedding(f)
    assert fac.report.holds("composite", "f1.dense", "f2.closed")
    assert fac.phi1.is_isomorphism()
    assert fac.report.holds("phi2.LS", "phi2.L2", "phi2.L3")
    assert fac.report["phi1.LO"].holds


def test_factor_dense_embedding():
    S = FiniteSpace.sierpinski("a", "b")
    f = SpaceMap.inclusion(S, ["a"])
    fac = factor_embedding(f)
    assert fac.report.holds("composite", "f1.dense", "f2.closed")
    assert all(fac.f2(x) == x for x in fac.f2.source.points)
    assert fac.phi2.is_isomorphism()


def test_factor_refuses_non_embedding():
    from contact_duality import PreconditionError
    with pytest.raises(PreconditionError):
        factor_embedding(SpaceMap.constant(disc("ab"), disc("c"), "c"))


def test_factor_all_discrete_injections():
    for X, Y in itertools.product(SPACES, repeat=2):
        for f in all_maps(X, Y):
            if map_properties(f).flag("injective"):
                fac = factor_embedding(f)
                assert fac.report.holds("composite", "f1.dense", "f2.closed", "phi2.LS", "phi2.L2", "phi2.L3")
                assert fac.phi1.is_isomorphism() and fac.report["phi1.LO"].holds


# round trips --------------------------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 3, 5])
def test_round_trip_object(n):
    X = disc("abcde"[:n])
    t, rep = round_trip_object(X)
    assert rep.ok and len(set(t.images.values())) == n


def test_round_trip_refuses_non_discrete():
    with pytest.raises(UnsupportedOperation):
        round_trip_object(FiniteSpace.sierpinski())


@pytest.mark.parametrize("n", range(5))
def test_round_trip_algebra(n):
    lam, rep = round_trip_algebra(compact(PowersetAlgebra(range(n))))
    assert rep.ok
