"""Compactification and local-compactification lattices, local proximity
spaces, and the Wallman-type criterion.

Normal contact relations C over an LCA (A, rho, IB) are *admissible* when
C is normal, rho <= C (RC1) and aCb implies a rho b for bounded b (RC2).
They are ordered by C1 <=_c C2 iff C2 is a subset of C1, so C_rho is the
least element and C_beta_rho the greatest.

Two families are decided exactly: finite algebras (every relation is
tabulated) and residue-partition relations on ultimately periodic sets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .algebra import Ideal, PeriodicSet, PowersetAlgebra, UnsupportedOperation, ultrafilters
from .contact import (CRho, ContactRelation, LocalContactAlgebra, Partition, TableRelation,
                      _Domain, atom_graphs, check_lca, check_nca, finite_ideals,
                      lift_partition, way_inside)
from .report import EXHAUSTIVE, SAMPLED, STRUCTURAL, ConditionReport, PreconditionError
from .spaces import FiniteSpace, rc_algebra

# ---------------------------------------------------------------------------
# relation comparisons
# ---------------------------------------------------------------------------


def as_partition(rel: ContactRelation, modulus: int | None = None):
    """Blocks of ``rel`` as a partition of Z/modulus, or None if it has no partition form."""
    form = rel.partition_form()
    if form is None:
        return None
    m, blocks = form
    target = modulus or m
    return lift_partition(m, blocks, target)


def _partition_modulus(*rels) -> int:
    return reduce(math.lcm, (r.partition_form()[0] for r in rels), 1)


def relation_subset(R1: ContactRelation, R2: ContactRelation, samples=30, seed=0):
    """Is R1 a subset of R2?  Returns (holds, witness pair, method)."""
    A = R1.algebra
    if A.finite:
        for a in A.elements():
            for b in A.elements():
                if R1(a, b) and not R2(a, b):
                    return False, (a, b), EXHAUSTIVE
        return True, None, EXHAUSTIVE
    if R1.partition_form() is not None and R2.partition_form() is not None:
        M = _partition_modulus(R1, R2)
        P1, P2 = as_partition(R1, M), as_partition(R2, M)
        # R1 <= R2 iff each block of P1 sits inside a block of P2
        for blk in sorted(P1, key=min):
            outer = next(b for b in P2 if min(blk) in b)
            extra = sorted(blk - outer)
            if extra:
                r, s = min(blk), extra[0]
                return False, (PeriodicSet.residue_class([r], M), PeriodicSet.residue_class([s], M)), STRUCTURAL
        return True, None, STRUCTURAL
    D = _Domain(A, samples, seed)
    for a, b in D.pairs():
        if R1(a, b) and not R2(a, b):
            return False, (a, b), SAMPLED
    return True, None, SAMPLED


def ideal_subset(A, I1: Ideal, I2: Ideal):
    """Is I1 a subset of I2?  Returns (holds, witness element or None)."""
    if A.finite:
        for e in I1.elements(A):
            if not I2.contains(A, e):
                return False, e
        return True, None
    if I1.kind in ("all", "principal", "finite_plus"):
        top = A.one if I1.kind == "all" else I1.top
        if not I2.contains(A, top):
            return False, top
    if I1.kind in ("finite", "finite_plus") and I2.kind == "principal":
        m = A.complement(I2.top).min()
        if m is not None:
            return False, A.atom(m)
    return True, None


# ---------------------------------------------------------------------------
# admissible normal contact relations
# ---------------------------------------------------------------------------

def is_admissible_ncr(L: LocalContactAlgebra, C: ContactRelation, samples=30, seed=0):
    """NCA axioms plus (RC1) rho <= C and (RC2) aCb, b bounded => a rho b."""
    A = L.algebra
    rep = check_nca(A, C, samples, seed)
    rep.title = f"admissible normal contact relation {C.kind}"
    ok, w, method = relation_subset(L.rho, C, samples, seed)
    rep.add("RC1", ok, w, method)
    D = _Domain(A, samples, seed)
    w = None
    if A.finite or C.partition_form() is None:
        w = next(((a, b) for a, b in D.pairs() if L.is_bounded(b) and C(a, b) and not L.rho(a, b)), None)
        method = D.method
    else:
        # a partition relation relates bounded (finite) b only through overlap
        method = STRUCTURAL if L.rho.kind == "overlap" and L.bounded.kind == "finite" else SAMPLED
        if method == SAMPLED:
            w = next(((a, b) for a, b in D.pairs() if L.is_bounded(b) and C(a, b) and not L.rho(a, b)), None)
    rep.add("RC2", w is None, w, method)
    return rep.ok, rep


def alexandroff_ncr(L: LocalContactAlgebra) -> ContactRelation:
    return CRho(L)


def beta_ncr(L: LocalContactAlgebra) -> ContactRelation:
    """The greatest admissible relation in the <=_c order.

    Finite algebras: a(-C)b iff some c has c << c, a << c and c << b*.
    Symbolic algebras: rho itself when rho is overlap with finite bounded
    elements, or when every element is bounded.
    """
    A = L.algebra
    if A.finite:
        ll = L.way_inside
        E = A.elements()
        refl = [c for c in E if ll(c, c)]

        def related(a, b):
            bc = A.complement(b)
            return not any(ll(a, c) and ll(c, bc) for c in refl)

        rel = TableRelation(A, related, "beta")
        rel.kind = "beta"
        return rel
    if L.bounded.kind == "all":
        return L.rho
    if L.rho.kind == "overlap" and L.bounded.kind == "finite":
        return L.rho
    raise UnsupportedOperation(f"C_beta_rho for {L!r}")


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def enumerate_ka(L: LocalContactAlgebra) -> list[ContactRelation]:
    """Admissible relations: all of them on finite algebras, the partition family otherwise."""
    A = L.algebra
    if A.finite:
        return [C for C in atom_graphs(A) if is_admissible_ncr(L, C)[0]]
    if L.rho.kind == "overlap" and L.bounded.kind == "finite":
        m = A.modulus
        return [Partition(A, m, blocks) for blocks in set_partitions(range(m))]
    raise UnsupportedOperation(f"no declared admissible family for {L!r}")


def _check_inputs(L, rels):
    rels = list(rels)
    if not rels:
        raise PreconditionError("need at least one relation")
    for C in rels:
        ok, rep = is_admissible_ncr(L, C)
        if not ok:
            bad = rep.failed()[0]
            raise PreconditionError(f"{C.kind} is not admissible: {bad.name} fails at {bad.witness!r}")
    return rels


def _partition_relation(A, M, blocks):
    return Partition(A, M, blocks)


def _refine(P1, P2):
    return frozenset(b1 & b2 for b1 in P1 for b2 in P2 if b1 & b2)


def _coarsen(P1, P2, M):
    parent = list(range(M))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for P in (P1, P2):
        for blk in P:
            blk = sorted(blk)
            for r in blk[1:]:
                parent[find(r)] = find(blk[0])
    groups: dict = {}
    for r in range(M):
        groups.setdefault(find(r), set()).add(r)
    return frozenset(frozenset(g) for g in groups.values())


def sup_ncr(L: LocalContactAlgebra, rels) -> ContactRelation:
    """Least upper bound in <=_c: the largest admissible relation inside every input."""
    rels = _check_inputs(L, rels)
    A = L.algebra
    if A.finite:
        below = [K for K in enumerate_ka(L) if all(relation_subset(K, C)[0] for C in rels)]
        best = [K for K in below if all(relation_subset(J, K)[0] for J in below)]
        return best[0]
    if all(C.partition_form() is not None for C in rels):
        M = _partition_modulus(*rels)
        blocks = reduce(_refine, (as_partition(C, M) for C in rels))
        return _partition_relation(A, M, blocks)
    raise UnsupportedOperation("sup of non-partition symbolic relations")


def inf_ncr(L: LocalContactAlgebra, rels) -> ContactRelation:
    """Greatest lower bound in <=_c.

    Finite algebras use the interpolation formula over the whole family:
    a(-C)b iff some c has c << c, a << c and c << b* in every input.
    """
    rels = _check_inputs(L, rels)
    A = L.algebra
    if A.finite:
        E = A.elements()
        lls = [lambda x, y, C=C: way_inside(C, x, y) for C in rels]
        refl = [c for c in E if all(ll(c, c) for ll in lls)]

        def related(a, b):
            bc = A.complement(b)
            return not any(all(ll(a, c) and ll(c, bc) for ll in lls) for c in refl)

        return TableRelation(A, related, "inf")
    if all(C.partition_form() is not None for C in rels):
        M = _partition_modulus(*rels)
        blocks = reduce(lambda P, Q: _coarsen(P, Q, M), (as_partition(C, M) for C in rels))
        return _partition_relation(A, M, blocks)
    raise UnsupportedOperation("inf of non-partition symbolic relations")


@dataclass
class Comparison:
    verdict: str          # precedes | follows | equal | incomparable
    witness_12: tuple | None  # pair in C1 but not in C2
    witness_21: tuple | None  # pair in C2 but not in C1
    method: str

    def to_dict(self, encode=None):
        enc = (lambda w: [encode(x) for x in w]) if encode else (lambda w: [repr(x) for x in w])
        d = {"verdict": self.verdict, "method": self.method}
        if self.witness_12 is not None:
            d["in_first_only"] = enc(self.witness_12)
        if self.witness_21 is not None:
            d["in_second_only"] = enc(self.witness_21)
        return d


def compare_ncr(C1: ContactRelation, C2: ContactRelation, samples=30, seed=0) -> Comparison:
    """C1 <=_c C2 iff C2 is a subset of C1."""
    s21, w21, m1 = relation_subset(C2, C1, samples, seed)
    s12, w12, m2 = relation_subset(C1, C2, samples, seed)
    if s21 and s12:
        v = "equal"
    elif s21:
        v = "precedes"
    elif s12:
        v = "follows"
    else:
        v = "incomparable"
    method = m1 if m1 == m2 else SAMPLED
    return Comparison(v, w12, w21, method)


def ka_hasse_dot(rels, names=None) -> str:
    """Hasse diagram of a family of relations under <=_c (edges point upward)."""
    names = names or [f"C{i}" for i in range(len(rels))]
    lt = {(i, j) for i in range(len(rels)) for j in range(len(rels))
          if i != j and compare_ncr(rels[i], rels[j]).verdict == "precedes"}
    lines = ["digraph ka {"]
    lines += [f'  "{n}";' for n in names]
    for i, j in sorted(lt):
        if not any((i, k) in lt and (k, j) in lt for k in range(len(rels))):
            lines.append(f'  "{names[i]}" -> "{names[j]}";')
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# local extensions
# ---------------------------------------------------------------------------

def la_membership(base: LocalContactAlgebra, cand: LocalContactAlgebra, samples=30, seed=0) -> ConditionReport:
    """(LA1) rho <= rho1, (LA2) IB <= IB1, (LA3) b in IB, b rho1 a => b rho a; plus LCA axioms."""
    A = base.algebra
    rep = ConditionReport("extension membership")
    rep.extend(check_lca(cand, samples, seed), "lca.")
    ok, w, m = relation_subset(base.rho, cand.rho, samples, seed)
    rep.add("LA1", ok, w, m)
    ok, w = ideal_subset(A, base.bounded, cand.bounded)
    rep.add("LA2", ok, None if ok else (w,), EXHAUSTIVE if A.finite else STRUCTURAL)
    D = _Domain(A, samples, seed)
    w = next(((b, a) for b, a in D.pairs() if base.is_bounded(b) and cand.rho(b, a) and not base.rho(b, a)), None)
    rep.add("LA3", w is None, w, D.method)
    return rep


def _top_of(A, I: Ideal):
    if I.kind == "all":
        return A.one
    if I.kind in ("principal", "finite_plus"):
        return I.top
    return None


def _bounded_ultrafilter_clause(A, cand1: LocalContactAlgebra, cand2: LocalContactAlgebra, probe=40):
    """Every bounded ultrafilter u of cand1 has b in IB2 with b rho1 u."""
    rho1 = cand1.rho
    if A.finite:
        tops = cand2.bounded.top_element(A)
        for p in A.atoms():
            if cand1.is_bounded(p) and not rho1(tops, p):
                return False, (p,), EXHAUSTIVE
        return True, None, EXHAUSTIVE
    U = ultrafilters(A)
    top2 = _top_of(A, cand2.bounded)
    for u in U.principal.take(probe):
        if not u.is_bounded(A, cand1.bounded):
            continue
        cands = [u.atom] + ([top2] if top2 is not None else [])
        if not any(cand2.is_bounded(b) and rho1(b, u.atom) for b in cands):
            return False, (u.atom,), SAMPLED
    form = rho1.partition_form()
    for u in U.free:
        if not u.is_bounded(A, cand1.bounded):
            continue
        if top2 is None or form is None:
            return False, (repr(u),), STRUCTURAL
        # b rho1 u for every member iff b is infinite in a class of u's block
        k, blocks = form
        r = u.residue if u.kind == "free_residue" else 0
        blk = next(b for b in blocks if r % k in b)
        if not any(top2.infinite_in_class(s, k) for s in blk):
            return False, (repr(u),), STRUCTURAL
    return True, None, SAMPLED


def lca_extension_order(base: LocalContactAlgebra, cand1: LocalContactAlgebra, cand2: LocalContactAlgebra,
                        samples=30, seed=0) -> dict:
    """Verdicts for cand1 <= cand2 and cand1 <=_s cand2 in the extension order."""
    for name, c in (("first", cand1), ("second", cand2)):
        rep = la_membership(base, c, samples, seed)
        if not rep.ok:
            bad = rep.failed()[0]
            raise PreconditionError(f"{name} candidate is not an extension: {bad.name} at {bad.witness!r}")
    A = base.algebra
    rel_ok, rel_w, _ = relation_subset(cand2.rho, cand1.rho, samples, seed)
    id_ok, id_w = ideal_subset(A, cand2.bounded, cand1.bounded)
    leq = rel_ok and id_ok
    out = {"leq": leq, "leq_witness": None if leq else (rel_w if not rel_ok else (id_w,))}
    if leq:
        s_ok, s_w, method = _bounded_ultrafilter_clause(A, cand1, cand2)
    else:
        s_ok, s_w, method = False, out["leq_witness"], EXHAUSTIVE
    out.update({"leq_s": s_ok, "leq_s_witness": s_w, "method": method})
    return out


# ---------------------------------------------------------------------------
# local proximity spaces (finite)
# ---------------------------------------------------------------------------

class LocalProximitySpace:
    """A finite set with a contact relation on its powerset and a boundedness ideal."""

    def __init__(self, points, rho, bounded_top=None):
        self.points = tuple(points)
        self.algebra = PowersetAlgebra(self.points)
        A = self.algebra
        if isinstance(rho, ContactRelation):
            self.rho = rho
        else:
            self.rho = TableRelation(A, lambda M, N: rho(M, N), "proximity")
        top = A.one if bounded_top is None else frozenset(bounded_top)
        self.bounded = Ideal.principal(top)

    @property
    def lca(self) -> LocalContactAlgebra:
        return LocalContactAlgebra(self.algebra, self.rho, self.bounded)

    def check(self) -> ConditionReport:
        """Contact axioms, BC1 and BC2 (BC3 is not required of a proximity space)."""
        rep = check_lca(self.lca)
        del rep.checks["BC3"]
        rep.title = "local proximity space"
        return rep

    def is_separated(self) -> bool:
        return all(self.rho(frozenset([x]), frozenset([y])) == (x == y)
                   for x in self.points for y in self.points)

    def closure(self, M) -> frozenset:
        M = frozenset(M)
        return frozenset(x for x in self.points if self.rho(frozenset([x]), M))

    def topology(self) -> FiniteSpace:
        closed = [M for M in self.algebra.elements() if self.closure(M) == M]
        full = frozenset(self.points)
        return FiniteSpace(self.points, [full - F for F in closed])

    def same_as(self, other: "LocalProximitySpace") -> bool:
        A = self.algebra
        return (set(self.points) == set(other.points)
                and self.bounded.top == other.bounded.top
                and all(self.rho(M, N) == other.rho(M, N) for M in A.elements() for N in A.elements()))

    def __repr__(self):
        return f"LocalProximitySpace({list(self.points)!r})"


def admissibility_report(X: FiniteSpace, L: LocalContactAlgebra) -> ConditionReport:
    """LCA axioms plus (A1) meeting sets are in contact and (A2) local way-inside bases."""
    A = L.algebra
    rep = ConditionReport("admissible for the space")
    rep.extend(check_lca(L), "lca.")
    E = A.elements()
    w = next(((F, G) for F in E for G in E if F & G and not L.rho(F, G)), None)
    rep.add("A1", w is None, w)
    bnd = L.bounded_elements()
    w = next(((F, x) for F in E for x in X.interior(F)
              if not any(x in X.interior(G) and L.way_inside(G, F) for G in bnd)), None)
    rep.add("A2", w is None, w)
    return rep


def restrict_local_proximity(P: LocalProximitySpace, check_separated=True):
    """(RC(X, tau), rho restricted, IB meet RC) for the topology tau induced by P.

    Returns (space, lca, report).  Pass ``check_separated=False`` to restrict a
    non-separated proximity; the admissibility report is still produced.
    """
    if check_separated and not P.is_separated():
        raise PreconditionError("proximity space is not separated")
    X = P.topology()
    A = rc_algebra(X).algebra
    rho = TableRelation(A, P.rho, "restricted")
    top = A.join_all(F for F in A.elements() if P.bounded.contains(P.algebra, F))
    L = LocalContactAlgebra(A, rho, Ideal.principal(top))
    return X, L, admissibility_report(X, L)


def reconstruct_local_proximity(X: FiniteSpace, L: LocalContactAlgebra) -> LocalProximitySpace:
    """The separated local proximity space on X restricting to the admissible L.

    IB is everything below a member of IB'; M(-rho)N iff for every B in IB
    there are F in IB' and G in RC(X) with M /\\ B <= int F, N <= int G and
    F(-rho')G.
    """
    rep = admissibility_report(X, L)
    if not rep.ok:
        bad = rep.failed()[0]
        raise PreconditionError(f"not admissible: {bad.name} fails at {bad.witness!r}")
    A = L.algebra
    rc = A.elements()
    ib_rc = L.bounded_elements()
    top = A.join_all(ib_rc)
    P = PowersetAlgebra(X.points)
    ib_sets = [M for M in P.elements() if M <= top]
    ints = {F: X.interior(F) for F in rc}
    sep_pairs = [(F, G) for F in ib_rc for G in rc if not L.rho(F, G)]

    def separated(M, N):
        for B in ib_sets:
            MB = M & B
            if not any(MB <= ints[F] and N <= ints[G] for F, G in sep_pairs):
                return False
        return True

    rel = TableRelation(P, lambda M, N: not separated(M, N), "reconstructed")
    return LocalProximitySpace(X.points, rel, top)


def restricts_to(P: LocalProximitySpace, X: FiniteSpace, L: LocalContactAlgebra) -> bool:
    Y, L2, _ = restrict_local_proximity(P, check_separated=False)
    if Y != X:
        return False
    A = L.algebra
    return (set(A.elements()) == set(L2.algebra.elements())
            and all(L.rho(F, G) == L2.rho(F, G) for F in A.elements() for G in A.elements())
            and set(L.bounded_elements()) == set(L2.bounded_elements()))


def local_proximity_spaces(points, separated_only=True):
    """Every local proximity space on a finite point set (contact is additive, so atom graphs)."""
    A = PowersetAlgebra(points)
    for rho in atom_graphs(A):
        for I in finite_ideals(A):
            P = LocalProximitySpace(points, rho, I.top)
            if separated_only and not P.is_separated():
                continue
            if P.check().ok:
                yield P


def admissible_lcas(X: FiniteSpace):
    """Every LCA on RC(X) admissible for X."""
    A = rc_algebra(X).algebra
    for rho in atom_graphs(A):
        for I in finite_ideals(A):
            L = LocalContactAlgebra(A, rho, I)
            if admissibility_report(X, L).ok:
                yield L


# ---------------------------------------------------------------------------
# Wallman-type criterion
# ---------------------------------------------------------------------------

def wallman_check(L: LocalContactAlgebra, C: ContactRelation, B, samples=30, seed=0):
    """Meet-closed B with (1) a rho b iff aCb on B, and (2') a <<_C c gives a <= b1 <= b2* <= c."""
    A = L.algebra
    B = list(dict.fromkeys(B))
    Bset = set(B)
    rep = ConditionReport("Wallman-type base")
    w = next(((a, b) for a in B for b in B if A.meet(a, b) not in Bset), None)
    rep.add("meet-closed", w is None, w)
    w = next(((a, b) for a in B for b in B if L.rho(a, b) != C(a, b)), None)
    rep.add("(1)", w is None, w)
    D = _Domain(A, samples, seed, extra=B)

    def witnessed(a, c):
        return any(A.leq(a, b1) and A.leq(b1, A.complement(b2)) and A.leq(A.complement(b2), c)
                   for b1 in B for b2 in B)

    w = next(((a, c) for a, c in D.pairs() if way_inside(C, a, c) and not witnessed(a, c)), None)
    rep.add("(2')", w is None, w, D.method)
    return rep.ok, rep


def njastad_delta(points, cX: FiniteSpace, e: dict) -> ContactRelation:
    """M delta N iff the closures of e(M) and e(N) in cX meet."""
    points = list(points)
    imgs = [e[x] for x in points]
    if len(set(imgs)) != len(imgs):
        raise PreconditionError("embedding is not injective")
    if not cX.is_dense(imgs):
        raise PreconditionError("embedding image is not dense")
    A = PowersetAlgebra(points)

    def cl(M):
        return cX.closure(e[x] for x in M)

    rel = TableRelation(A, lambda M, N: bool(cl(M) & cl(N)), "njastad")
    return rel
