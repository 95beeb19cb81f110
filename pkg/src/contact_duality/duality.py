"""Clusters, the dual-space functor on finite local contact algebras, and
the morphism conditions that classify dual maps.

For a finite algebra every ultrafilter is principal, so the cluster of the
ultrafilter at atom p is sigma_p = {a : a C p} with C = C_rho.  The points of
the dual space are the bounded clusters; lambda_g(a) is the set of points
containing a, and these sets (closed under intersection) are the closed sets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import AlgebraHom, UnsupportedOperation
from .contact import CRho, LocalContactAlgebra
from .report import ConditionReport, ConstructionError, PreconditionError
from .spaces import FiniteSpace, SpaceMap, is_homeomorphism, map_properties, rc_algebra


@dataclass(frozen=True)
class Cluster:
    """A cluster, compared by member set; ``atoms`` lists every generating atom."""

    members: frozenset
    atoms: tuple = field(compare=False)
    bounded: bool = field(compare=False, default=True)

    @property
    def witness(self):
        return self.atoms[0]

    def __contains__(self, a) -> bool:
        return a in self.members

    def __repr__(self):
        return f"sigma[{'|'.join(_label(p) for p in self.atoms)}]"


def _label(e) -> str:
    try:
        return ",".join(str(x) for x in sorted(e))
    except TypeError:
        return ",".join(sorted(map(str, e)))


class SymbolicCluster:
    """Principal cluster sigma_n = {a : a C {n}} over a symbolic algebra."""

    def __init__(self, algebra, contact, n):
        self.algebra, self.contact, self.n = algebra, contact, n
        self.atom = algebra.atom(n)

    def __contains__(self, a) -> bool:
        return self.contact(a, self.atom)

    def __repr__(self):
        return f"sigma[{self.n}]"


def clusters(A, C, bounded=None, limit: int = 10) -> list:
    """Clusters of (A, C), one per distinct sigma_p, in atom order.

    ``bounded`` (an Ideal) sets the bounded flag.  For a symbolic algebra the
    first ``limit`` principal (hence bounded) clusters are returned.
    """
    if not A.finite:
        return [SymbolicCluster(A, C, n) for n in range(limit)]
    elems = A.elements()
    groups: dict = {}
    for p in A.atoms():
        sig = frozenset(a for a in elems if C(a, p))
        groups.setdefault(sig, []).append(p)
    out = []
    for sig, ps in groups.items():
        b = True if bounded is None else any(bounded.contains(A, a) for a in sig)
        out.append(Cluster(sig, tuple(ps), b))
    return out


def sigma_u(A, C, atom) -> frozenset:
    """The cluster of the ultrafilter at ``atom`` by its definition {a : aCb for all b in u}."""
    u = [b for b in A.elements() if A.leq(atom, b)]
    return frozenset(a for a in A.elements() if all(C(a, b) for b in u))


def cluster_report(A, C, sigma: Cluster) -> ConditionReport:
    """The kernel property plus the defining cluster properties, exhaustively."""
    rep = ConditionReport(f"cluster {sigma!r}")
    m = sigma.members
    elems = A.elements()
    w = next(((a, b) for a in elems for b in elems
              if a in m and A.complement(b) not in m and A.meet(a, b) not in m), None)
    rep.add("kernel", w is None, w)
    w = next(((a, b) for a in m for b in m if not C(a, b)), None)
    rep.add("pairwise-contact", w is None, w)
    w = next(((a, b) for a in elems for b in elems
              if A.join(a, b) in m and a not in m and b not in m), None)
    rep.add("prime", w is None, w)
    w = next(((a,) for a in elems if a not in m and all(C(a, b) for b in m)), None)
    rep.add("maximal", w is None, w)
    return rep


class DualSpace(FiniteSpace):
    """Finite space of bounded clusters, remembering its algebra."""

    def __init__(self, lca: LocalContactAlgebra, points, opens):
        super().__init__(points, opens)
        self.lca = lca

    def lambda_g(self, a) -> frozenset:
        return frozenset(s for s in self.points if a in s)

    def point_of_atom(self, p) -> Cluster:
        for s in self.points:
            if p in s.atoms:
                return s
        raise KeyError(p)


def lambda_g(Y: DualSpace, a) -> frozenset:
    return Y.lambda_g(a)


def psi_a_object(L: LocalContactAlgebra) -> DualSpace:
    A = L.algebra
    if not A.finite:
        raise UnsupportedOperation("dual space of a symbolic algebra is not a finite space")
    C = CRho(L)
    pts = [s for s in clusters(A, C, L.bounded) if s.bounded]
    closed = {frozenset(s for s in pts if a in s) for a in A.elements()}
    closed |= {frozenset(), frozenset(pts)}
    changed = True
    while changed:
        changed = False
        for F, G in list(itertools.combinations(closed, 2)):
            for H in (F & G, F | G):
                if H not in closed:
                    closed.add(H)
                    changed = True
    full = frozenset(pts)
    return DualSpace(L, pts, [full - F for F in closed])


# ---------------------------------------------------------------------------
# morphism conditions
# ---------------------------------------------------------------------------

def _lcas(phi, LA, LB):
    LA = LA or getattr(phi, "source_lca", None)
    LB = LB or getattr(phi, "target_lca", None)
    if LA is None or LB is None:
        raise PreconditionError("source and target local contact algebras are required")
    return LA, LB


def check_morphism_conditions(phi: AlgebraHom, LA: LocalContactAlgebra | None = None,
                              LB: LocalContactAlgebra | None = None) -> ConditionReport:
    """Conditions on phi: (A, rho, IB) -> (B, eta, IB'), exhaustively.

    EL1  a eta b => phiL(a) rho phiL(b)
    L2   b in IB' => phiL(b) in IB
    L3   a in IB => phi(a) in IB'
    IS   every bounded ultrafilter u of A has a bounded v of B with phiL(v) rho u
    LS   a, b in IB' and phiL(a) rho phiL(b) => a eta b
    ELS  as LS for all a, b
    FS   as ELS with C_rho and C_eta
    LO   a in A, b in IB', a rho phiL(b) => phi(a) eta b
    """
    LA, LB = _lcas(phi, LA, LB)
    A, B = LA.algebra, LB.algebra
    if not (A.finite and B.finite):
        raise UnsupportedOperation("morphism conditions are checked on finite algebras")
    rho, eta = LA.rho, LB.rho
    bA, bB = LA.is_bounded, LB.is_bounded
    lo = phi.lower_adjoint
    EA, EB = A.elements(), B.elements()
    rep = ConditionReport(f"morphism conditions for {phi.name}")

    def first(it):
        return next(iter(it), None)

    w = first((a, b) for a in EB for b in EB if eta(a, b) and not rho(lo(a), lo(b)))
    rep.add("EL1", w is None, w)
    w = first((b,) for b in EB if bB(b) and not bA(lo(b)))
    rep.add("L2", w is None, w)
    w = first((a,) for a in EA if bA(a) and not bB(phi(a)))
    rep.add("L3", w is None, w)

    qs = [q for q in B.atoms() if bB(q)]
    w = first((p,) for p in A.atoms() if bA(p) and not any(rho(lo(q), p) for q in qs))
    rep.add("IS", w is None, w, note="ultrafilters named by their atoms")

    w = first((a, b) for a in EB if bB(a) for b in EB if bB(b) and rho(lo(a), lo(b)) and not eta(a, b))
    rep.add("LS", w is None, w)
    w = first((a, b) for a in EB for b in EB if rho(lo(a), lo(b)) and not eta(a, b))
    rep.add("ELS", w is None, w)
    CA, CB = CRho(LA), CRho(LB)
    w = first((a, b) for a in EB for b in EB if CA(lo(a), lo(b)) and not CB(a, b))
    rep.add("FS", w is None, w)
    w = first((a, b) for a in EA for b in EB if bB(b) and rho(a, lo(b)) and not eta(phi(a), b))
    rep.add("LO", w is None, w)

    inj = phi.is_injective()
    w = None
    if not inj:
        seen = {}
        for a in EA:
            if phi(a) in seen:
                w = (seen[phi(a)], a)
                break
            seen[phi(a)] = a
    rep.add("injective", inj, w)
    img = set(phi.table.values())
    w = first((b,) for b in EB if b not in img)
    rep.add("surjective", w is None, w)
    iso = inj and w is None
    rep.add("boolean-iso", iso, None if iso else (rep["injective"].witness or rep["surjective"].witness))
    return rep


def psi_a_morphism(phi: AlgebraHom, LA=None, LB=None, X: DualSpace | None = None,
                   Y: DualSpace | None = None) -> SpaceMap:
    """Dual map Psi^a(B) -> Psi^a(A), sigma_v -> sigma of the ultrafilter phi^-1(v)."""
    LA, LB = _lcas(phi, LA, LB)
    rep = check_morphism_conditions(phi, LA, LB)
    for c in ("EL1", "L2"):
        if not rep[c].holds:
            raise PreconditionError(f"{c} fails for {phi.name}: witness {rep[c].witness!r}")
    X = X or psi_a_object(LB)
    Y = Y or psi_a_object(LA)
    lo = phi.lower_adjoint
    images = {}
    for s in X.points:
        targets = set()
        for q in s.atoms:
            p = lo(q)  # phi^-1 of the ultrafilter at q is the ultrafilter at this atom
            try:
                targets.add(Y.point_of_atom(p))
            except KeyError:
                raise ConstructionError(f"{s!r} maps outside the bounded clusters") from None
        if len(targets) != 1:
            raise ConstructionError(f"image of {s!r} depends on the witness ultrafilter")
        images[s] = targets.pop()
    return SpaceMap(X, Y, images)


def is_lca_embedding(phi: AlgebraHom, LA=None, LB=None) -> tuple[bool, ConditionReport]:
    LA, LB = _lcas(phi, LA, LB)
    A = LA.algebra
    E = A.elements()
    rep = ConditionReport(f"LCA embedding {phi.name}")
    inj = phi.is_injective()
    w = None if inj else next((a, b) for a in E for b in E if a != b and phi(a) == phi(b))
    rep.add("injective", inj, w)
    w = next(((a, b) for a in E for b in E if LA.rho(a, b) != LB.rho(phi(a), phi(b))), None)
    rep.add("reflects-contact", w is None, w)
    w = next(((a,) for a in E if LA.is_bounded(a) != LB.is_bounded(phi(a))), None)
    rep.add("reflects-boundedness", w is None, w)
    return rep.ok, rep


@dataclass
class Factorization:
    f1: SpaceMap
    f2: SpaceMap
    phi: AlgebraHom
    phi1: AlgebraHom
    phi2: AlgebraHom
    report: ConditionReport


def factor_embedding(f: SpaceMap) -> Factorization:
    """f = f2 . f1 through Z = cl(f(X)); dually phi = phi1 . phi2."""
    from .spaces import dual_morphism
    props = map_properties(f)
    for flag in ("homeomorphic-embedding", "skeletal"):
        if not props.flag(flag):
            raise PreconditionError(f"map is not a skeletal embedding ({flag} fails)")
    X, Y = f.source, f.target
    Zpts = Y.closure(f.image(X.full))
    Z = Y.subspace(Zpts)
    f1 = SpaceMap(X, Z, dict(f.images))
    f2 = SpaceMap.inclusion(Y, Zpts)
    phi, phi1, phi2 = dual_morphism(f), dual_morphism(f1), dual_morphism(f2)
    rep = ConditionReport("embedding factorization")
    comp = phi1.compose(phi2)
    w = next(((F,) for F in phi.source.elements() if comp(F) != phi(F)), None)
    rep.add("composite", w is None, w)
    r1 = check_morphism_conditions(phi1)
    r2 = check_morphism_conditions(phi2)
    rep.extend(r1, "phi1.")
    rep.extend(r2, "phi2.")
    m1, m2 = map_properties(f1), map_properties(f2)
    rep.add("f1.dense", m1.flag("dense-image"), m1["dense-image"].witness)
    rep.add("f2.closed", m2.flag("closed"), m2["closed"].witness)
    return Factorization(f1, f2, phi, phi1, phi2, rep)


# ---------------------------------------------------------------------------
# round trips
# ---------------------------------------------------------------------------

def round_trip_object(X: FiniteSpace) -> tuple[SpaceMap, ConditionReport]:
    """t_X: x -> sigma_x = {F in RC(X) : x in F}, checked to be a homeomorphism."""
    if not X.is_discrete:
        raise UnsupportedOperation("duality applies to Hausdorff (discrete) finite spaces")
    L = rc_algebra(X)
    Y = psi_a_object(L)
    by_members = {s.members: s for s in Y.points}
    rep = ConditionReport("object round trip")
    images = {}
    for x in X.points:
        sx = frozenset(F for F in L.algebra.elements() if x in F)
        if sx not in by_members:
            rep.add("sigma_x is a point", False, (x,))
            return None, rep
        images[x] = by_members[sx]
    rep.add("sigma_x is a point", True)
    t = SpaceMap(X, Y, images)
    ok = is_homeomorphism(t)
    rep.add("homeomorphism", ok, None if ok else (repr(t),))
    return t, rep


def round_trip_algebra(L: LocalContactAlgebra) -> tuple[AlgebraHom, ConditionReport]:
    """lambda_g: A -> RC(Psi^a(L)), checked to be an LCA isomorphism."""
    A = L.algebra
    Y = psi_a_object(L)
    M = rc_algebra(Y)
    rep = ConditionReport("algebra round trip")
    bad = next(((a,) for a in A.elements() if not M.algebra.contains(Y.lambda_g(a))), None)
    rep.add("lands in RC", bad is None, bad)
    if bad is not None:
        return None, rep
    lam = AlgebraHom(A, M.algebra, Y.lambda_g, "lambda_g")
    laws = lam.hom_law_failures()
    rep.add("boolean-hom", not laws, tuple(laws[:1]) or None)
    iso = lam.is_isomorphism()
    rep.add("bijective", iso, None if iso else ("lambda_g",))
    E = A.elements()
    w = next(((a, b) for a in E for b in E if L.rho(a, b) != M.rho(lam(a), lam(b))), None)
    rep.add("contact", w is None, w)
    w = next(((a,) for a in E if L.is_bounded(a) != M.is_bounded(lam(a))), None)
    rep.add("bounded", w is None, w)
    return lam, rep


def is_lca_isomorphism(h: AlgebraHom, LA, LB) -> bool:
    if not h.is_isomorphism():
        return False
    E = LA.algebra.elements()
    return (all(LA.rho(a, b) == LB.rho(h(a), h(b)) for a in E for b in E)
            and all(LA.is_bounded(a) == LB.is_bounded(h(a)) for a in E))
