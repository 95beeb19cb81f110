"""Finite topological spaces, maps between them, and the regular-closed functor.

A finite topology is determined by the minimal open neighbourhood N(x) of
each point, so interiors and closures are computed pointwise:
int(S) = {x : N(x) <= S} and cl(S) = {x : N(x) meets S}.
"""
from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from typing import Hashable, Iterable

from .algebra import AlgebraHom, FiniteAlgebra, Ideal
from .contact import AtomGraph, LocalContactAlgebra, Overlap
from .report import ConditionReport, PreconditionError


class SpaceError(ValueError):
    """Malformed space or map descriptor."""


def _sorted(points, order):
    return sorted(points, key=order.__getitem__)


class FiniteSpace:
    def __init__(self, points: Iterable[Hashable], opens: Iterable[Iterable[Hashable]]):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise SpaceError("duplicate points")
        self._order = {x: i for i, x in enumerate(self.points)}
        full = frozenset(self.points)
        fam = {frozenset(U) for U in opens} | {frozenset(), full}
        for U in fam:
            if not U <= full:
                raise SpaceError(f"open set {sorted(U, key=repr)} has points outside the space")
        for U, V in itertools.combinations(fam, 2):
            if U | V not in fam or U & V not in fam:
                raise SpaceError("opens are not closed under union and intersection")
        self.opens = frozenset(fam)
        self.full = full
        self._nbhd = {x: frozenset.intersection(*[U for U in fam if x in U]) for x in self.points}

    # constructors ---------------------------------------------------------
    @classmethod
    def generated(cls, points, subbase) -> "FiniteSpace":
        """Smallest topology containing ``subbase``."""
        points = list(points)
        fam = {frozenset(points)} | {frozenset(s) for s in subbase}
        base = set(fam)
        changed = True
        while changed:
            changed = False
            for U, V in list(itertools.combinations(base, 2)):
                if U & V not in base:
                    base.add(U & V)
                    changed = True
        opens = {frozenset()}
        for B in base:
            opens |= {U | B for U in opens}
        return cls(points, opens)

    @classmethod
    def discrete(cls, points) -> "FiniteSpace":
        points = list(points)
        return cls.generated(points, [[x] for x in points])

    @classmethod
    def indiscrete(cls, points) -> "FiniteSpace":
        return cls(points, [])

    @classmethod
    def sierpinski(cls, open_point="a", closed_point="b") -> "FiniteSpace":
        return cls([open_point, closed_point], [[open_point]])

    @classmethod
    def from_preorder(cls, points, leq) -> "FiniteSpace":
        """Alexandrov topology whose opens are the up-sets of ``leq``."""
        points = list(points)
        ups = [frozenset(y for y in points if leq(x, y)) for x in points]
        return cls.generated(points, ups)

    @classmethod
    def from_descriptor(cls, obj) -> "FiniteSpace":
        if not isinstance(obj, dict) or "points" not in obj:
            raise SpaceError("space descriptor needs 'points'")
        return cls.generated(obj["points"], obj.get("opens", []))

    def describe(self) -> dict:
        return {"points": list(self.points),
                "opens": [self.sort(U) for U in sorted(self.opens, key=self.set_key)]}

    # basics ---------------------------------------------------------------
    def sort(self, S) -> list:
        return _sorted(S, self._order)

    def set_key(self, S) -> tuple:
        idx = sorted(self._order[x] for x in S)
        return (len(idx), idx)

    def __repr__(self):
        return f"FiniteSpace({list(self.points)!r}, {len(self.opens)} opens)"

    def __eq__(self, other):
        return isinstance(other, FiniteSpace) and self.full == other.full and self.opens == other.opens

    def __hash__(self):
        return hash((self.full, self.opens))

    def __len__(self):
        return len(self.points)

    def nbhd(self, x) -> frozenset:
        return self._nbhd[x]

    def interior(self, S) -> frozenset:
        S = frozenset(S)
        return frozenset(x for x in self.points if self._nbhd[x] <= S)

    def closure(self, S) -> frozenset:
        S = frozenset(S)
        return frozenset(x for x in self.points if self._nbhd[x] & S)

    def is_open(self, S) -> bool:
        return frozenset(S) in self.opens

    def is_closed(self, S) -> bool:
        return self.full - frozenset(S) in self.opens

    @cached_property
    def closed_sets(self) -> list[frozenset]:
        return sorted((self.full - U for U in self.opens), key=self.set_key)

    @cached_property
    def open_sets(self) -> list[frozenset]:
        return sorted(self.opens, key=self.set_key)

    def is_dense(self, S) -> bool:
        return self.closure(S) == self.full

    def is_regular_closed(self, S) -> bool:
        S = frozenset(S)
        return self.closure(self.interior(S)) == S

    def is_regular_open(self, S) -> bool:
        S = frozenset(S)
        return self.interior(self.closure(S)) == S

    @cached_property
    def regular_closed_sets(self) -> list[frozenset]:
        return sorted({self.closure(U) for U in self.opens}, key=self.set_key)

    @cached_property
    def regular_open_sets(self) -> list[frozenset]:
        return sorted({self.interior(F) for F in self.closed_sets}, key=self.set_key)

    def subspace(self, S) -> "FiniteSpace":
        S = frozenset(S)
        if not S <= self.full:
            raise SpaceError("subspace points must lie in the space")
        return FiniteSpace([x for x in self.points if x in S], {U & S for U in self.opens})

    def specializes(self, x, y) -> bool:
        """x <= y in the specialization order, i.e. x lies in the closure of {y}."""
        return y in self._nbhd[x]

    @property
    def is_discrete(self) -> bool:
        return all(len(self._nbhd[x]) == 1 for x in self.points)

    is_hausdorff = is_discrete  # finite T2 spaces are discrete

    def to_dot(self, name="space", label=str) -> str:
        """Hasse diagram of the specialization preorder (edges point upward)."""
        lines = [f"digraph {name} {{"]
        for x in self.points:
            lines.append(f'  "{label(x)}";')
        for x in self.points:
            for y in self.points:
                if x != y and self.specializes(x, y) and not self.specializes(y, x):
                    between = any(z not in (x, y) and self.specializes(x, z) and self.specializes(z, y)
                                  and not self.specializes(z, x) and not self.specializes(y, z)
                                  for z in self.points)
                    if not between:
                        lines.append(f'  "{label(x)}" -> "{label(y)}";')
        for x, y in itertools.combinations(self.points, 2):
            if self.specializes(x, y) and self.specializes(y, x):
                lines.append(f'  "{label(x)}" -> "{label(y)}" [dir=both];')
        lines.append("}")
        return "\n".join(lines)


def enumerate_topologies(points) -> list[FiniteSpace]:
    """Every topology on a finite point list, via preorders (355 on 4 points)."""
    points = list(points)
    n = len(points)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for mask in range(2 ** len(pairs)):
        rel = {(i, i) for i in range(n)}
        rel |= {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if any((i, k) not in rel for (i, j) in rel for (j2, k) in rel if j == j2):
            continue
        out.append(FiniteSpace.from_preorder(points, lambda x, y, r=rel: (points.index(x), points.index(y)) in r))
    return out


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------

class SpaceMap:
    def __init__(self, source: FiniteSpace, target: FiniteSpace, images: dict):
        self.source = source
        self.target = target
        missing = [x for x in source.points if x not in images]
        if missing:
            raise SpaceError(f"map undefined at {missing!r}")
        bad = [x for x in source.points if images[x] not in target.full]
        if bad:
            raise SpaceError(f"images of {bad!r} are not points of the target")
        self.images = {x: images[x] for x in source.points}

    @classmethod
    def identity(cls, X: FiniteSpace) -> "SpaceMap":
        return cls(X, X, {x: x for x in X.points})

    @classmethod
    def inclusion(cls, Y: FiniteSpace, S) -> "SpaceMap":
        return cls(Y.subspace(S), Y, {x: x for x in S})

    @classmethod
    def constant(cls, X, Y, y) -> "SpaceMap":
        return cls(X, Y, {x: y for x in X.points})

    def __call__(self, x):
        return self.images[x]

    def __repr__(self):
        return f"SpaceMap({self.images!r})"

    def __eq__(self, other):
        return (isinstance(other, SpaceMap) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash(tuple(sorted(self.images.items(), key=repr)))

    def image(self, S) -> frozenset:
        return frozenset(self.images[x] for x in S)

    def preimage(self, S) -> frozenset:
        S = frozenset(S)
        return frozenset(x for x in self.source.points if self.images[x] in S)

    def compose(self, inner: "SpaceMap") -> "SpaceMap":
        """self after inner."""
        return SpaceMap(inner.source, self.target, {x: self(inner(x)) for x in inner.source.points})

    def describe(self) -> dict:
        return {"images": {str(x): self.images[x] for x in self.source.points}}


def all_maps(X: FiniteSpace, Y: FiniteSpace):
    for combo in itertools.product(Y.points, repeat=len(X.points)):
        yield SpaceMap(X, Y, dict(zip(X.points, combo)))


class MapPropertyReport(ConditionReport):
    """Flags of a map between finite spaces; failed flags carry witnesses."""

    FLAGS = ("continuous", "open", "closed", "perfect", "skeletal", "quasi-open", "semi-open",
             "injective", "surjective", "dense-image", "homeomorphic-embedding")

    def flag(self, name) -> bool:
        return self.checks[name].holds

    def flags(self) -> dict:
        return {n: self.checks[n].holds for n in self.FLAGS}


def _first(it):
    for w in it:
        return w
    return None


def map_properties(f: SpaceMap) -> MapPropertyReport:
    X, Y = f.source, f.target
    rep = MapPropertyReport("map properties")
    sort = lambda S, sp: tuple(sp.sort(S))

    w = _first(V for V in Y.open_sets if not X.is_open(f.preimage(V)))
    rep.add("continuous", w is None, None if w is None else ("open", sort(w, Y)))

    w = _first(U for U in X.open_sets if not Y.is_open(f.image(U)))
    rep.add("open", w is None, None if w is None else ("open", sort(w, X)))

    w = _first(F for F in X.closed_sets if not Y.is_closed(f.image(F)))
    rep.add("closed", w is None, None if w is None else ("closed", sort(w, X)))
    # fibres of a map on a finite space are finite, hence compact
    rep.add("perfect", w is None, None if w is None else ("closed", sort(w, X)),
            note="closed map with finite fibres")

    w = _first(V for V in Y.open_sets if Y.is_dense(V) and not X.is_dense(f.preimage(V)))
    rep.add("skeletal", w is None, None if w is None else ("dense open", sort(w, Y)))

    w = _first(U for U in X.open_sets if U and not Y.interior(f.image(U)))
    rep.add("quasi-open", w is None, None if w is None else ("open", sort(w, X)))

    img = f.image(X.full)
    sub = Y.subspace(img)

    def good_fibre_point(y):
        # x in int(U) iff N(x) <= U, and f is monotone in U, so N(x) is the test set
        return any(y in sub.interior(f.image(X.nbhd(x))) for x in f.preimage([y]))

    w = _first(y for y in Y.points if y in img and not good_fibre_point(y))
    rep.add("semi-open", w is None, None if w is None else ("point", w))

    w = _first((x1, x2) for x1, x2 in itertools.combinations(X.points, 2) if f(x1) == f(x2))
    rep.add("injective", w is None, None if w is None else ("points", *w))

    w = _first(y for y in Y.points if y not in img)
    rep.add("surjective", w is None, None if w is None else ("point", w))

    dense = Y.is_dense(img)
    rep.add("dense-image", dense, None if dense else ("missed", sort(Y.full - Y.closure(img), Y)))

    emb = rep.flag("continuous") and rep.flag("injective")
    w = None
    if emb:
        w = _first(U for U in X.open_sets if not sub.is_open(f.image(U)))
        emb = w is None
    wit = None
    if not emb:
        if not rep.flag("continuous"):
            wit = rep["continuous"].witness
        elif not rep.flag("injective"):
            wit = rep["injective"].witness
        else:
            wit = ("open", sort(w, X))
    rep.add("homeomorphic-embedding", emb, wit)
    return rep


# ---------------------------------------------------------------------------
# the regular-closed functor
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def rc_algebra(X: FiniteSpace) -> LocalContactAlgebra:
    """(RC(X), point-intersection contact, all elements bounded).

    Elements are regular closed point sets; atoms are the minimal non-empty
    ones.  When atoms overlap as point sets the contact is an atom graph.
    """
    rc = X.regular_closed_sets
    nonempty = [F for F in rc if F]
    atoms = [F for F in nonempty if not any(G < F for G in nonempty)]
    atoms.sort(key=X.set_key)
    A = FiniteAlgebra(atoms, ground=X.points)
    if A.disjoint:
        rho = Overlap(A)
    else:
        rho = AtomGraph(A, [(p, q) for p, q in itertools.combinations(atoms, 2) if p & q])
    return LocalContactAlgebra(A, rho, Ideal.all())


def dual_morphism(f: SpaceMap) -> AlgebraHom:
    """phi: RC(Y) -> RC(X), F -> cl(int(f^-1 F)), for continuous skeletal f."""
    props = map_properties(f)
    for flag in ("continuous", "skeletal"):
        if not props.flag(flag):
            raise PreconditionError(f"map is not {flag}: witness {props[flag].witness!r}")
    X, Y = f.source, f.target
    LX, LY = rc_algebra(X), rc_algebra(Y)
    phi = AlgebraHom(LY.algebra, LX.algebra, lambda F: X.closure(X.interior(f.preimage(F))), "psi_t")
    phi.source_lca, phi.target_lca, phi.space_map = LY, LX, f
    return phi


def dense_subspace_iso(Y: FiniteSpace, S) -> tuple[AlgebraHom, AlgebraHom]:
    """For X = S dense in Y: r(F) = F /\\ X and e(G) = cl_Y(G), mutually inverse."""
    S = frozenset(S)
    if not Y.is_dense(S):
        raise PreconditionError(f"{Y.sort(S)!r} is not dense in the space")
    X = Y.subspace(S)
    AY, AX = rc_algebra(Y).algebra, rc_algebra(X).algebra
    r = AlgebraHom(AY, AX, lambda F: F & S, "restrict")
    e = AlgebraHom(AX, AY, lambda G: Y.closure(G), "closure")
    return r, e


def is_homeomorphism(f: SpaceMap) -> bool:
    p = map_properties(f)
    return p.holds("continuous", "open", "injective", "surjective")
