"""Delta-ideals, their frame, the iota isomorphism onto open sets of the dual
space, and the sub-algebra constructions for open and regular closed subsets.

On a finite algebra every ideal is principal, so a delta-ideal is stored as
its frozenset of members.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraHom, Ideal, is_ideal, relative_algebra, trivial_algebra
from .contact import LocalContactAlgebra, Overlap, TableRelation, check_lca
from .duality import DualSpace, check_morphism_conditions, psi_a_morphism, psi_a_object
from .report import ConditionReport, ConstructionError, PreconditionError
from .spaces import SpaceMap, map_properties


def _members(L, I) -> frozenset:
    if isinstance(I, Ideal):
        return frozenset(I.elements(L.algebra))
    return frozenset(I)


def is_delta_ideal(L: LocalContactAlgebra, I) -> tuple[bool, tuple | None]:
    """Check I is an ideal inside IB with every member way inside another member."""
    A = L.algebra
    m = _members(L, I)
    if not is_ideal(A, m):
        return False, ("not an ideal",)
    for a in sorted(m, key=A.key):
        if not L.is_bounded(a):
            return False, ("unbounded", a)
    for a in sorted(m, key=A.key):
        if not any(L.way_inside(a, b) for b in m):
            return False, ("unrefinable", a)
    return True, None


def principal_delta_ideal(L: LocalContactAlgebra, a) -> frozenset:
    return frozenset(b for b in L.bounded_elements() if L.way_inside(b, a))


def _down(A, t) -> frozenset:
    return frozenset(e for e in A.elements() if A.leq(e, t))


class DeltaIdealFrame:
    """All delta-ideals of a finite LCA, ordered by inclusion."""

    def __init__(self, L: LocalContactAlgebra):
        A = L.algebra
        if not A.finite:
            raise PreconditionError("the delta-ideal frame is enumerated for finite algebras only")
        self.lca = L
        self.ideals = [_down(A, t) for t in A.elements() if is_delta_ideal(L, _down(A, t))[0]]
        self._set = frozenset(self.ideals)
        self.bottom = frozenset([A.zero])
        self.top = max(self.ideals, key=len)

    def __len__(self):
        return len(self.ideals)

    def __contains__(self, I):
        return frozenset(I) in self._set

    def leq(self, I, J) -> bool:
        return I <= J

    def top_element(self, I):
        return self.lca.algebra.join_all(I)

    def join(self, I, J) -> frozenset:
        """Ideal generated by the union."""
        A = self.lca.algebra
        return _down(A, A.join(self.top_element(I), self.top_element(J)))

    def meet(self, I, J) -> frozenset:
        """Largest delta-ideal inside the intersection."""
        return self.meet_all([I, J])

    def meet_all(self, family) -> frozenset:
        inter = frozenset.intersection(*map(frozenset, family)) if family else self.top
        inside = [K for K in self.ideals if K <= inter]
        return max(inside, key=len)

    def meet_gap(self, I, J) -> bool:
        """Whether the frame meet is strictly smaller than the plain intersection."""
        return self.meet(I, J) != (I & J)


def frame_of_delta_ideals(L: LocalContactAlgebra) -> DeltaIdealFrame:
    return DeltaIdealFrame(L)


def iota(L: LocalContactAlgebra, I, Y: DualSpace | None = None) -> frozenset:
    """iota(I) = union of lambda_g(a) over a in I."""
    ok, w = is_delta_ideal(L, I)
    if not ok:
        raise PreconditionError(f"not a delta-ideal: {w!r}")
    Y = Y or psi_a_object(L)
    out = frozenset()
    for a in _members(L, I):
        out |= Y.lambda_g(a)
    return out


def ib_u(L: LocalContactAlgebra, U, Y: DualSpace | None = None) -> frozenset:
    """IB_U = {b in IB : lambda_g(b) inside U}."""
    Y = Y or psi_a_object(L)
    U = frozenset(U)
    if not Y.is_open(U):
        raise PreconditionError("IB_U needs an open set of the dual space")
    return frozenset(b for b in L.bounded_elements() if Y.lambda_g(b) <= U)


@dataclass
class DualConstruction:
    lca: LocalContactAlgebra
    phi: AlgebraHom
    report: ConditionReport
    dual_map: SpaceMap | None = None
    image: frozenset = frozenset()
    observations: dict = field(default_factory=dict)


def _trivial_construction(L, report):
    T = trivial_algebra()
    LT = LocalContactAlgebra(T, Overlap(T), Ideal.all())
    phi = AlgebraHom(L.algebra, T, lambda a: T.zero, "to-trivial")
    phi.source_lca, phi.target_lca = L, LT
    report.add("degenerate", True, note="the zero ideal gives the one-element algebra and the empty space")
    return DualConstruction(LT, phi, report)


def _require(report: ConditionReport):
    if not report.ok:
        bad = report.failed()[0]
        raise ConstructionError(f"{report.title}: {bad.name} fails, witness {bad.witness!r}")


def open_set_dual(L: LocalContactAlgebra, I, Y: DualSpace | None = None) -> DualConstruction:
    """(A|a_I, eta, I) with a eta b iff a, b and some c in I share a point of Y."""
    ok, w = is_delta_ideal(L, I)
    if not ok:
        raise PreconditionError(f"not a delta-ideal: {w!r}")
    A = L.algebra
    I = _members(L, I)
    rep = ConditionReport("open subset construction")
    a_I = A.join_all(I)
    if A.is_zero(a_I):
        return _trivial_construction(L, rep)
    Y = Y or psi_a_object(L)
    B, phi = relative_algebra(A, a_I)
    meets_I = [s for s in Y.points if any(c in s for c in I)]
    eta = TableRelation(B, lambda a, b: any(a in s and b in s for s in meets_I), "eta")
    LB = LocalContactAlgebra(B, eta, Ideal.principal(a_I))
    phi.source_lca, phi.target_lca = L, LB
    rep.extend(check_lca(LB), "lca.")
    conds = check_morphism_conditions(phi)
    for c in ("EL1", "L2", "LO"):
        rep.add(f"phi.{c}", conds[c].holds, conds[c].witness)
    _require(rep)
    f = psi_a_morphism(phi)
    props = map_properties(f)
    for flag in ("open", "injective"):
        rep.add(f"map.{flag}", props.flag(flag), props[flag].witness)
    img = f.image(f.source.full)
    target = iota(L, I, Y)
    rep.add("image = iota(I)", img == target, None if img == target else (tuple(img ^ target),))
    _require(rep)
    return DualConstruction(LB, phi, rep, f, img, {"L3": conds["L3"].holds})


def regular_closed_dual(L: LocalContactAlgebra, a0, Y: DualSpace | None = None) -> DualConstruction:
    """(A|a0, rho restricted, phi(IB)) and its embedding onto lambda_g(a0)."""
    A = L.algebra
    if A.is_zero(a0):
        raise PreconditionError("a0 must be non-zero")
    Y = Y or psi_a_object(L)
    B, phi = relative_algebra(A, a0)
    eta = TableRelation(B, L.rho, "rho|a0")
    top = A.meet(L.bounded.top_element(A), a0)
    LB = LocalContactAlgebra(B, eta, Ideal.principal(top))
    phi.source_lca, phi.target_lca = L, LB
    rep = ConditionReport("regular closed subset construction")
    rep.extend(check_lca(LB), "lca.")
    conds = check_morphism_conditions(phi)
    for c in ("LS", "L2", "L3"):
        rep.add(f"phi.{c}", conds[c].holds, conds[c].witness)
    _require(rep)
    f = psi_a_morphism(phi)
    props = map_properties(f)
    for flag in ("closed", "quasi-open", "injective", "homeomorphic-embedding"):
        rep.add(f"map.{flag}", props.flag(flag), props[flag].witness)
    img = f.image(f.source.full)
    target = Y.lambda_g(a0)
    rep.add("image = lambda_g(a0)", img == target, None if img == target else (tuple(img ^ target),))
    _require(rep)
    return DualConstruction(LB, phi, rep, f, img)
