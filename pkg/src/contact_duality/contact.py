"""Contact relations, local contact algebras and their axiom checkers.

Axioms, as implemented (C is a relation on a Boolean algebra A):

* C1  aCb implies a, b != 0; and a != 0 implies aCa
* C2  aCb implies bCa
* C3  aC(b v c) iff aCb or aCc
* C4  a /\\ b != 0 implies aCb
* normality       a(-C)b implies a(-C)c and c*(-C)b for some c
* extensionality  a != 1 implies b(-C)a for some b != 0

A local contact algebra (A, rho, IB) adds an ideal IB of bounded elements:

* BC1  a in IB, a << c imply a << b << c for some b in IB
* BC2  a rho b implies a rho (b /\\ d) for some d in IB
* BC3  a != 0 implies b << a for some non-zero b in IB

where a << b means a(-rho)b*.  Finite algebras are checked exhaustively;
symbolic ones on random samples plus kernel-supplied witness candidates.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property

from .algebra import AlgebraError, FiniteAlgebra, Ideal, PeriodicSet, is_ideal
from .report import EXHAUSTIVE, SAMPLED, STRUCTURAL, ConditionReport


class ContactRelation:
    """Base class.  Subclasses implement :meth:`related`."""

    kind = "abstract"
    #: kernels whose axioms hold by construction on their intended algebras
    structural: tuple = ()

    def __init__(self, algebra):
        self.algebra = algebra

    def related(self, a, b) -> bool:
        raise NotImplementedError

    def __call__(self, a, b) -> bool:
        return self.related(a, b)

    def describe(self) -> dict:
        return {"kind": self.kind}

    def interpolants(self, a, b) -> list:
        """Candidates c with a(-C)c and c*(-C)b when a(-C)b; used by sampled checks."""
        A = self.algebra
        return [b, A.complement(a)]

    def partition_form(self):
        """``(modulus, blocks)`` if the relation is a residue-partition relation."""
        return None

    # finite helpers -------------------------------------------------------
    @cached_property
    def pairs(self) -> frozenset:
        A = self.algebra
        if not A.finite:
            raise AlgebraError("pair table of a relation on an infinite algebra")
        return frozenset((a, b) for a in A.elements() for b in A.elements() if self.related(a, b))

    def same_as(self, other: "ContactRelation") -> bool:
        return self.pairs == other.pairs

    def __repr__(self):
        return f"{type(self).__name__}({self.algebra!r})"


class Overlap(ContactRelation):
    kind = "overlap"
    structural = ("C1", "C2", "C3", "C4", "normality", "extensionality")

    def related(self, a, b):
        A = self.algebra
        return not A.is_zero(A.meet(a, b))

    def partition_form(self):
        A = self.algebra
        if A.finite:
            return None
        m = A.modulus
        return m, frozenset(frozenset([r]) for r in range(m))


class AtomGraph(ContactRelation):
    """Contact generated by a symmetric relation on atoms (always contains overlap)."""

    kind = "atom_graph"
    structural = ("C1", "C2", "C3", "C4")

    def __init__(self, algebra: FiniteAlgebra, edges):
        super().__init__(algebra)
        atoms = algebra.atoms()
        index = {a: i for i, a in enumerate(atoms)}
        nbrs = [{i} for i in range(len(atoms))]
        clean = set()
        for p, q in edges:
            i, j = index[algebra.check(p)], index[algebra.check(q)]
            nbrs[i].add(j)
            nbrs[j].add(i)
            if i != j:
                clean.add(frozenset((atoms[i], atoms[j])))
        self.edges = frozenset(clean)
        self._nbrs = [frozenset(s) for s in nbrs]

    @classmethod
    def from_labels(cls, algebra: FiniteAlgebra, label_pairs) -> "AtomGraph":
        return cls(algebra, [(frozenset([p]), frozenset([q])) for p, q in label_pairs])

    def related(self, a, b):
        A = self.algebra
        ib = set(A.atom_indices(b))
        return any(self._nbrs[i] & ib for i in A.atom_indices(a))

    def describe(self):
        A = self.algebra
        edges = sorted((sorted((A.encode(p)["atoms"], A.encode(q)["atoms"])) for p, q in
                        (tuple(sorted(e, key=A.key)) for e in self.edges)))
        return {"kind": "atom_graph", "edges": edges}


class TableRelation(ContactRelation):
    """A relation on a finite algebra given by a predicate, tabulated once."""

    kind = "table"

    def __init__(self, algebra, predicate, name="table"):
        super().__init__(algebra)
        self.name = name
        self._table = frozenset((a, b) for a in algebra.elements() for b in algebra.elements()
                                if predicate(a, b))

    def related(self, a, b):
        return (a, b) in self._table

    @cached_property
    def pairs(self):
        return self._table

    def describe(self):
        A = self.algebra
        return {"kind": "explicit", "name": self.name,
                "pairs": sorted(([A.encode(a), A.encode(b)] for a, b in self._table),
                                key=lambda p: (A.key(A.decode(p[0])), A.key(A.decode(p[1]))))}


class ExplicitRelation(TableRelation):
    """Hand-entered pair table, closed under symmetry and upward closure.

    ``completion_changed`` records whether closing the table added pairs.
    """

    kind = "explicit"

    def __init__(self, algebra, pairs):
        raw = {(algebra.check(a), algebra.check(b)) for a, b in pairs}
        sym = raw | {(b, a) for a, b in raw}
        elems = algebra.elements()
        closed = {(x, y) for (a, b) in sym for x in elems if algebra.leq(a, x)
                  for y in elems if algebra.leq(b, y)}
        super().__init__(algebra, lambda a, b: (a, b) in closed, "explicit")
        self.completion_changed = closed != raw


class CRho(ContactRelation):
    """a C_rho b iff a rho b, or neither a nor b is bounded."""

    kind = "c_rho"

    def __init__(self, lca: "LocalContactAlgebra"):
        super().__init__(lca.algebra)
        self.lca = lca

    def related(self, a, b):
        L = self.lca
        return L.rho(a, b) or (not L.is_bounded(a) and not L.is_bounded(b))

    def interpolants(self, a, b):
        A = self.algebra
        return [b, A.complement(a), *self.lca.rho.interpolants(a, b)]

    @property
    def structural(self):
        if self.lca.rho.kind == "overlap" and self.lca.bounded.kind in ("finite", "all"):
            return ("C1", "C2", "C3", "C4", "normality", "extensionality")
        return ()

    def partition_form(self):
        A = self.algebra
        L = self.lca
        if A.finite or L.rho.kind != "overlap":
            return None
        m = A.modulus
        if L.bounded.kind == "finite":
            return m, frozenset([frozenset(range(m))])
        if L.bounded.kind == "all":
            return L.rho.partition_form()
        return None


class Partition(ContactRelation):
    """Residue-partition relation on ultimately periodic sets.

    ``blocks`` partition the residues mod ``modulus``; a and b are related iff
    they meet, or some block contains infinitely many members of both.  It is
    the contact of the compactification of the naturals with one point at
    infinity per block.
    """

    kind = "partition"
    structural = ("C1", "C2", "C3", "C4", "normality", "extensionality")

    def __init__(self, algebra, modulus: int, blocks):
        super().__init__(algebra)
        blocks = frozenset(frozenset(int(r) % modulus for r in blk) for blk in blocks)
        covered = [r for blk in blocks for r in blk]
        if sorted(covered) != list(range(modulus)) or frozenset() in blocks:
            raise AlgebraError(f"blocks {sorted(map(sorted, blocks))} do not partition Z/{modulus}")
        if not algebra.finite and algebra.modulus % modulus != 0:
            raise AlgebraError(f"partition modulus {modulus} must divide the algebra modulus")
        self.modulus, self.blocks = _canonical_partition(modulus, blocks)
        self._block_of = {}
        self._memo = {}
        for blk in self.blocks:
            for r in blk:
                self._block_of[r] = blk

    def block_sets(self) -> list[PeriodicSet]:
        return [PeriodicSet.residue_class(blk, self.modulus) for blk in _sorted_blocks(self.blocks)]

    def infinite_blocks(self, a) -> frozenset:
        return frozenset(blk for blk in self.blocks if any(a.infinite_in_class(r, self.modulus) for r in blk))

    def related(self, a, b):
        key = (a, b)
        if key not in self._memo:
            A = self.algebra
            self._memo[key] = (not A.is_zero(A.meet(a, b))
                               or bool(self.infinite_blocks(a) & self.infinite_blocks(b)))
        return self._memo[key]

    def hull(self, a) -> PeriodicSet:
        res = [r for blk in self.infinite_blocks(a) for r in blk]
        return PeriodicSet.residue_class(res, self.modulus)

    def interpolants(self, a, b):
        A = self.algebra
        near_a = A.meet(A.join(a, self.hull(a)), A.complement(b))
        near_b = A.meet(A.join(b, self.hull(b)), A.complement(a))
        return [near_b, A.complement(near_a), a, A.complement(b)]

    def partition_form(self):
        return self.modulus, self.blocks

    def describe(self):
        return {"kind": "partition", "modulus": self.modulus,
                "blocks": [sorted(b) for b in _sorted_blocks(self.blocks)]}

    def __repr__(self):
        return f"Partition(mod {self.modulus}: {[sorted(b) for b in _sorted_blocks(self.blocks)]})"


def _sorted_blocks(blocks):
    return sorted(blocks, key=lambda b: (min(b), sorted(b)))


def _canonical_partition(modulus, blocks):
    """Reduce to the smallest modulus whose residue classes the blocks are unions of."""
    for k in range(1, modulus + 1):
        if modulus % k:
            continue
        ok = True
        for blk in blocks:
            if any(((r + k) % modulus) not in blk for r in blk):
                ok = False
                break
        if ok:
            return k, frozenset(frozenset(r for r in blk if r < k) for blk in blocks
                                if any(r < k for r in blk))
    return modulus, blocks


def lift_partition(modulus, blocks, target_modulus) -> frozenset:
    """Express a partition of Z/modulus as one of Z/target_modulus."""
    if target_modulus % modulus:
        raise AlgebraError(f"{modulus} does not divide {target_modulus}")
    return frozenset(frozenset(r for r in range(target_modulus) if r % modulus in blk) for blk in blocks)


@dataclass(frozen=True)
class LocalContactAlgebra:
    algebra: object
    rho: ContactRelation
    bounded: Ideal

    def is_bounded(self, e) -> bool:
        return self.bounded.contains(self.algebra, e)

    def way_inside(self, a, b) -> bool:
        return way_inside(self.rho, a, b)

    def bounded_elements(self) -> list:
        return self.bounded.elements(self.algebra)

    def __repr__(self):
        return f"LCA({self.algebra!r}, {self.rho.kind}, {self.bounded.kind})"


def way_inside(rel, a, b) -> bool:
    """a << b, i.e. a is not in contact with the complement of b."""
    if isinstance(rel, LocalContactAlgebra):
        rel = rel.rho
    return not rel(a, rel.algebra.complement(b))


def c_rho(lca: LocalContactAlgebra) -> ContactRelation:
    return CRho(lca)


# ---------------------------------------------------------------------------
# checking machinery
# ---------------------------------------------------------------------------

class _Domain:
    """Elements to quantify over: every element (finite) or a seeded sample."""

    def __init__(self, algebra, samples=30, seed=0, extra=()):
        self.algebra = algebra
        self.finite = algebra.finite
        if self.finite:
            self.pool = algebra.elements()
            self.method = EXHAUSTIVE
        else:
            rng = random.Random(seed)
            pool = [algebra.zero, algebra.one, *extra]
            for n in range(3):
                try:
                    pool.append(algebra.atom(n))
                except AlgebraError:
                    pass
            m = getattr(algebra, "modulus", 1)
            if m > 1:
                for r in range(m):
                    cls = PeriodicSet.residue_class([r], m)
                    pool += [cls, algebra.complement(cls)]
            pool = [e for e in pool if algebra.contains(e)]
            pool += [algebra.random_element(rng) for _ in range(samples)]
            seen, uniq = set(), []
            for e in pool:
                if e not in seen:
                    seen.add(e)
                    uniq.append(e)
            self.pool = uniq
            self.method = SAMPLED
            self.rng = rng

    def pairs(self):
        return itertools.product(self.pool, repeat=2)

    def triples(self, limit=600):
        if self.finite:
            return itertools.product(self.pool, repeat=3)
        return ([self.rng.choice(self.pool) for _ in range(3)] for _ in range(limit))

    def candidates(self, *seeds, rel=None, sep=None):
        """Witness candidates for an existential: the whole algebra, or a pool."""
        if self.finite:
            return self.pool
        A = self.algebra
        out = list(seeds)
        for s in seeds:
            out.append(A.complement(s))
            m = s.min() if hasattr(s, "min") else None
            if m is not None:
                out.append(A.atom(m))
            out.append(PeriodicSet.finite(s.head) if hasattr(s, "head") else s)
        for s, t in itertools.combinations(seeds, 2):
            out += [A.meet(s, t), A.join(s, t)]
            mt = A.meet(s, t)
            m = mt.min()
            if m is not None:
                out.append(A.atom(m))
        if rel is not None:
            x, y = sep or seeds[:2]
            out += rel.interpolants(x, y)
        return out + self.pool


def _method(domain, rel, axiom):
    if domain.finite:
        return EXHAUSTIVE
    return STRUCTURAL if axiom in rel.structural else SAMPLED


def _first(iterable):
    for w in iterable:
        return w
    return None


def check_contact_axioms(algebra, rel: ContactRelation, samples=30, seed=0, report=None) -> ConditionReport:
    A, C = algebra, rel
    D = _Domain(A, samples, seed)
    rep = report or ConditionReport(f"contact axioms for {C.kind}")

    w = _first((a, b) for a, b in D.pairs() if C(a, b) and (A.is_zero(a) or A.is_zero(b)))
    if w is None:
        w = _first((a, a) for a in D.pool if not A.is_zero(a) and not C(a, a))
    rep.add("C1", w is None, w, _method(D, C, "C1"))

    w = _first((a, b) for a, b in D.pairs() if C(a, b) != C(b, a))
    rep.add("C2", w is None, w, _method(D, C, "C2"))

    w = _first((a, b, c) for a, b, c in D.triples()
               if C(a, A.join(b, c)) != (C(a, b) or C(a, c)))
    rep.add("C3", w is None, w, _method(D, C, "C3"))

    w = _first((a, b) for a, b in D.pairs() if not A.is_zero(A.meet(a, b)) and not C(a, b))
    rep.add("C4", w is None, w, _method(D, C, "C4"))
    return rep


def check_nca(algebra, rel: ContactRelation, samples=30, seed=0) -> ConditionReport:
    """Contact axioms plus normality and extensionality."""
    A, C = algebra, rel
    rep = check_contact_axioms(A, C, samples, seed, ConditionReport(f"normal contact algebra for {C.kind}"))
    D = _Domain(A, samples, seed)

    def separable(a, b):
        return any(not C(a, c) and not C(A.complement(c), b) for c in D.candidates(a, b, rel=C))

    w = _first((a, b) for a, b in D.pairs() if not C(a, b) and not separable(a, b))
    rep.add("normality", w is None, w, _method(D, C, "normality"))

    def extensional(a):
        return any(not A.is_zero(b) and not C(b, a) for b in D.candidates(A.complement(a)))

    w = _first((a,) for a in D.pool if a != A.one and not extensional(a))
    rep.add("extensionality", w is None, w, _method(D, C, "extensionality"))
    return rep


def _lca_structural(L: LocalContactAlgebra) -> bool:
    return L.rho.kind == "overlap" and L.bounded.kind in ("finite", "all")


def check_lca(lca: LocalContactAlgebra, samples=30, seed=0) -> ConditionReport:
    A, rho, IB = lca.algebra, lca.rho, lca.bounded
    rep = check_contact_axioms(A, rho, samples, seed, ConditionReport(f"local contact algebra {lca!r}"))
    D = _Domain(A, samples, seed)
    ll = lca.way_inside
    bounded = lca.is_bounded
    method = EXHAUSTIVE if D.finite else (STRUCTURAL if _lca_structural(lca) else SAMPLED)

    if D.finite:
        members = IB.elements(A)
        ok = is_ideal(A, members)
        rep.add("ideal", ok, None if ok else (IB.kind,), EXHAUSTIVE)
    else:
        rep.add("ideal", True, None, STRUCTURAL, note="ideal kinds are ideals by construction")

    def bc1(a, c):
        # a << b << c means a(-rho)b* and b(-rho)c*, so b* separates a from c*
        cands = D.candidates(a, c, rel=rho, sep=(A.complement(c), a))
        return any(bounded(b) and ll(a, b) and ll(b, c) for b in cands)

    w = _first((a, c) for a, c in D.pairs() if bounded(a) and ll(a, c) and not bc1(a, c))
    rep.add("BC1", w is None, w, method)

    def bc2(a, b):
        return any(bounded(d) and rho(a, A.meet(b, d)) for d in D.candidates(a, b, A.one))

    w = _first((a, b) for a, b in D.pairs() if rho(a, b) and not bc2(a, b))
    rep.add("BC2", w is None, w, method)

    def bc3(a):
        return any(bounded(b) and not A.is_zero(b) and ll(b, a) for b in D.candidates(a))

    w = _first((a,) for a in D.pool if not A.is_zero(a) and not bc3(a))
    rep.add("BC3", w is None, w, method)
    return rep


def is_lca(lca: LocalContactAlgebra, **kw) -> bool:
    return check_lca(lca, **kw).ok


def atom_graphs(algebra: FiniteAlgebra):
    """Every AtomGraph relation on a finite algebra (all symmetric atom relations)."""
    atoms = algebra.atoms()
    pairs = list(itertools.combinations(atoms, 2))
    for mask in range(2 ** len(pairs)):
        yield AtomGraph(algebra, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def finite_ideals(algebra: FiniteAlgebra):
    """Every ideal of a finite algebra (all principal)."""
    return [Ideal.principal(t) for t in algebra.elements()]
