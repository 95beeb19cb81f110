"""Decidable Boolean algebras, ideals, ultrafilters and complete homomorphisms.

Three families are supported:

* :class:`FiniteAlgebra` -- a finite atomic algebra whose elements are unions of
  atom point-sets.  ``PowersetAlgebra(atoms)`` is the special case where every
  atom is a singleton, and the regular closed sets of a finite space are the
  case where atoms may share boundary points.
* :class:`FiniteCofiniteAlgebra` -- finite and cofinite subsets of the naturals.
* :class:`UltPeriodicAlgebra` -- ultimately periodic subsets of the naturals
  whose period divides a fixed modulus.

Elements of the symbolic families are :class:`PeriodicSet` values kept in a
canonical form, so equality is structural.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Callable, Hashable, Iterable, Iterator, Sequence


class AlgebraError(ValueError):
    """Malformed descriptor or an element that does not belong to an algebra."""


class UnsupportedOperation(NotImplementedError):
    """The requested computation is not decidable for this kind of algebra."""


# ---------------------------------------------------------------------------
# Finite algebras
# ---------------------------------------------------------------------------

class FiniteAlgebra:
    """Finite Boolean algebra given by its atoms.

    Each atom is a non-empty frozenset of ground points and every element is
    the union of the atoms below it.  Atoms may overlap as point sets (this
    happens for regular closed sets of non-regular spaces); the Boolean
    structure is always that of the powerset of the atom list.
    """

    kind = "powerset"
    finite = True

    def __init__(self, atom_sets: Sequence[Iterable[Hashable]], ground: Sequence[Hashable] | None = None):
        atoms = tuple(frozenset(a) for a in atom_sets)
        if any(not a for a in atoms):
            raise AlgebraError("atoms must be non-empty point sets")
        if len(set(atoms)) != len(atoms):
            raise AlgebraError("duplicate atoms")
        if ground is None:
            seen: list = []
            for a in atoms:
                for x in _sorted_points(a):
                    if x not in seen:
                        seen.append(x)
            ground = seen
        self.ground = tuple(ground)
        self.atom_sets = atoms
        self._atom_index = {a: i for i, a in enumerate(atoms)}
        self._ground_index = {x: i for i, x in enumerate(self.ground)}
        self.disjoint = sum(len(a) for a in atoms) == len(frozenset().union(*atoms))
        self.zero = frozenset()
        self.one = frozenset().union(*atoms)

    def __repr__(self):
        if all(len(a) == 1 for a in self.atom_sets):
            labels = [next(iter(a)) for a in self.atom_sets]
            return f"PowersetAlgebra({labels!r})"
        return f"FiniteAlgebra({len(self.atom_sets)} atoms)"

    def __eq__(self, other):
        return isinstance(other, FiniteAlgebra) and set(self.atom_sets) == set(other.atom_sets)

    def __hash__(self):
        return hash(frozenset(self.atom_sets))

    # structure ------------------------------------------------------------
    def atoms(self) -> list[frozenset]:
        return list(self.atom_sets)

    def atom_indices(self, e: frozenset) -> tuple[int, ...]:
        if self.disjoint:
            return tuple(i for i, a in enumerate(self.atom_sets) if a <= e)
        return tuple(i for i, a in enumerate(self.atom_sets) if a <= e)

    def atoms_below(self, e: frozenset) -> list[frozenset]:
        return [self.atom_sets[i] for i in self.atom_indices(e)]

    def from_atoms(self, atoms: Iterable[frozenset]) -> frozenset:
        return frozenset().union(*atoms)

    @cached_property
    def _elements(self) -> tuple[frozenset, ...]:
        n = len(self.atom_sets)
        out = []
        for size in range(n + 1):
            for combo in itertools.combinations(range(n), size):
                out.append(frozenset().union(*(self.atom_sets[i] for i in combo)))
        return tuple(out)

    def elements(self) -> list[frozenset]:
        """All elements, ordered by number of atoms and then atom positions."""
        return list(self._elements)

    def size(self) -> int:
        return 2 ** len(self.atom_sets)

    @cached_property
    def _element_set(self) -> frozenset:
        return frozenset(self._elements)

    def contains(self, e) -> bool:
        return isinstance(e, frozenset) and e in self._element_set

    def check(self, e) -> frozenset:
        if not self.contains(e):
            raise AlgebraError(f"{e!r} is not an element of {self!r}")
        return e

    def element(self, points: Iterable[Hashable]) -> frozenset:
        return self.check(frozenset(points))

    def key(self, e: frozenset) -> tuple:
        idx = self.atom_indices(e)
        return (len(idx), idx)

    # Boolean operations ---------------------------------------------------
    def meet(self, a, b):
        if self.disjoint:
            return a & b
        common = set(self.atom_indices(a)) & set(self.atom_indices(b))
        return frozenset().union(*(self.atom_sets[i] for i in common))

    def join(self, a, b):
        return a | b

    def complement(self, a):
        if self.disjoint:
            return self.one - a
        below = set(self.atom_indices(a))
        return frozenset().union(*(s for i, s in enumerate(self.atom_sets) if i not in below))

    def leq(self, a, b) -> bool:
        return a <= b

    def is_zero(self, a) -> bool:
        return not a

    def meet_all(self, items: Iterable) -> frozenset:
        return reduce(self.meet, items, self.one)

    def join_all(self, items: Iterable) -> frozenset:
        return reduce(self.join, items, self.zero)

    def is_atom(self, e) -> bool:
        return e in self._atom_index

    # serialization --------------------------------------------------------
    def encode(self, e) -> dict:
        return {"atoms": _sorted_points(e, self._ground_index)}

    def decode(self, obj) -> frozenset:
        if isinstance(obj, dict) and "atoms" in obj:
            return self.element(obj["atoms"])
        if isinstance(obj, (list, tuple)):
            return self.element(obj)
        raise AlgebraError(f"cannot read finite element from {obj!r}")

    def describe(self) -> dict:
        if all(len(a) == 1 for a in self.atom_sets):
            return {"kind": "powerset", "atoms": [next(iter(a)) for a in self.atom_sets]}
        return {"kind": "finite", "atom_sets": [_sorted_points(a, self._ground_index) for a in self.atom_sets]}

    def random_element(self, rng: random.Random) -> frozenset:
        return frozenset().union(*(a for a in self.atom_sets if rng.random() < 0.5))


def PowersetAlgebra(atoms: Iterable[Hashable]) -> FiniteAlgebra:
    atoms = list(atoms)
    if len(set(atoms)) != len(atoms):
        raise AlgebraError("atom labels must be distinct")
    return FiniteAlgebra([[x] for x in atoms], ground=atoms)


def _sorted_points(points, index=None) -> list:
    if index is not None:
        return sorted(points, key=lambda x: index.get(x, len(index)))
    try:
        return sorted(points)
    except TypeError:
        return sorted(points, key=repr)


# ---------------------------------------------------------------------------
# Ultimately periodic subsets of the naturals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodicSet:
    """An ultimately periodic subset S of the naturals.

    For n >= threshold, n is in S iff n mod period is in residues; below the
    threshold S agrees with head.  Build values with :meth:`make`, which puts
    them in canonical form (minimal period, then minimal threshold).
    """

    threshold: int
    head: frozenset
    residues: frozenset
    period: int

    @classmethod
    def make(cls, head=(), threshold=0, residues=(), period=1) -> "PeriodicSet":
        if period < 1 or threshold < 0:
            raise AlgebraError("period must be >= 1 and threshold >= 0")
        head = frozenset(int(n) for n in head)
        if any(n < 0 or n >= threshold for n in head):
            raise AlgebraError("head members must lie in [0, threshold)")
        residues = frozenset(int(r) % period for r in residues)
        return cls._normalize(threshold, head, residues, period)

    @classmethod
    def _normalize(cls, threshold, head, residues, period):
        for p in sorted(_divisors(period)):
            if all(((r % p) in {s % p for s in residues}) == (r in residues) for r in range(period)):
                residues = frozenset(r for r in residues if r < p)
                period = p
                break
        t = threshold
        while t > 0 and ((t - 1) in head) == (((t - 1) % period) in residues):
            t -= 1
        head = frozenset(n for n in head if n < t)
        return cls(t, head, residues, period)

    @classmethod
    def finite(cls, members: Iterable[int]) -> "PeriodicSet":
        members = frozenset(int(n) for n in members)
        t = max(members) + 1 if members else 0
        return cls.make(members, t, (), 1)

    @classmethod
    def cofinite_except(cls, missing: Iterable[int]) -> "PeriodicSet":
        missing = frozenset(int(n) for n in missing)
        t = max(missing) + 1 if missing else 0
        return cls.make(frozenset(range(t)) - missing, t, (0,), 1)

    @classmethod
    def residue_class(cls, residues: Iterable[int], modulus: int) -> "PeriodicSet":
        return cls.make((), 0, residues, modulus)

    def __contains__(self, n: int) -> bool:
        if n < self.threshold:
            return n in self.head
        return (n % self.period) in self.residues

    def members_below(self, n: int) -> frozenset:
        return frozenset(k for k in range(n) if k in self)

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def is_cofinite(self) -> bool:
        return len(self.residues) == self.period

    def infinite_in_class(self, r: int, modulus: int) -> bool:
        """Whether the set contains infinitely many n with n = r (mod modulus)."""
        m = math.lcm(modulus, self.period)
        return any((s % self.period) in self.residues for s in range(r % modulus, m, modulus))

    def min(self) -> int | None:
        if self.head:
            return min(self.head)
        if not self.residues:
            return None
        return next(n for n in itertools.count(self.threshold) if (n % self.period) in self.residues)

    def __repr__(self):
        if self.is_finite:
            return f"Fin{sorted(self.head)}"
        if self.is_cofinite:
            return f"Cof{sorted(set(range(self.threshold)) - self.head)}"
        return (f"Per(head={sorted(self.head)}, t={self.threshold}, "
                f"res={sorted(self.residues)} mod {self.period})")


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _combine(a: PeriodicSet, b: PeriodicSet, op: Callable[[bool, bool], bool]) -> PeriodicSet:
    period = math.lcm(a.period, b.period)
    t = max(a.threshold, b.threshold)
    head = frozenset(n for n in range(t) if op(n in a, n in b))
    residues = frozenset(r for r in range(period) if op((t + r) in a, (t + r) in b))
    # residues were sampled at t + r; re-index them to absolute residues
    residues = frozenset((t + r) % period for r in residues)
    return PeriodicSet._normalize(t, head, residues, period)


class _NaturalsAlgebra:
    """Shared arithmetic for the two symbolic families."""

    finite = False
    modulus = 1

    def __init__(self):
        self.zero = PeriodicSet.make()
        self.one = PeriodicSet.make((), 0, (0,), 1)

    def meet(self, a, b):
        return _combine(a, b, lambda x, y: x and y)

    def join(self, a, b):
        return _combine(a, b, lambda x, y: x or y)

    def complement(self, a):
        return PeriodicSet(a.threshold, frozenset(range(a.threshold)) - a.head,
                           frozenset(range(a.period)) - a.residues, a.period)

    def leq(self, a, b) -> bool:
        return self.is_zero(self.meet(a, self.complement(b)))

    def is_zero(self, a) -> bool:
        return not a.head and not a.residues

    def meet_all(self, items):
        return reduce(self.meet, items, self.one)

    def join_all(self, items):
        return reduce(self.join, items, self.zero)

    def atom(self, n: int) -> PeriodicSet:
        return PeriodicSet.finite([n])

    def is_atom(self, e) -> bool:
        return e.is_finite and len(e.head) == 1

    def is_bounded_element(self, e) -> bool:
        return e.is_finite

    def contains(self, e) -> bool:
        return isinstance(e, PeriodicSet) and self.modulus % e.period == 0

    def check(self, e):
        if not self.contains(e):
            raise AlgebraError(f"{e!r} is not an element of {self!r}")
        return e

    def key(self, e) -> tuple:
        return (e.period, e.threshold, sorted(e.head), sorted(e.residues))

    def elements(self):
        raise UnsupportedOperation(f"{self!r} is infinite; elements are not enumerable")

    def atoms(self):
        raise UnsupportedOperation(f"{self!r} has infinitely many atoms")

    def random_element(self, rng: random.Random, max_threshold: int = 8) -> PeriodicSet:
        period = rng.choice(_divisors(self.modulus))
        t = rng.randint(0, max_threshold)
        head = [n for n in range(t) if rng.random() < 0.5]
        roll = rng.random()
        if roll < 0.2:
            residues = []
        elif roll < 0.35:
            residues = range(period)
        else:
            residues = [r for r in range(period) if rng.random() < 0.5]
        return PeriodicSet.make(head, t, residues, period)

    def tail_residues(self, e, modulus: int | None = None) -> frozenset:
        """Residues r mod ``modulus`` (default: algebra modulus) with e infinite in class r."""
        m = modulus or self.modulus
        return frozenset(r for r in range(m) if e.infinite_in_class(r, m))


class FiniteCofiniteAlgebra(_NaturalsAlgebra):
    """Finite and cofinite subsets of the naturals (period 1 elements)."""

    kind = "finite_cofinite"

    def __repr__(self):
        return "FiniteCofiniteAlgebra()"

    def __eq__(self, other):
        return isinstance(other, FiniteCofiniteAlgebra)

    def __hash__(self):
        return hash("finite_cofinite")

    def finite_set(self, members) -> PeriodicSet:
        return PeriodicSet.finite(members)

    def cofinite(self, missing=()) -> PeriodicSet:
        return PeriodicSet.cofinite_except(missing)

    def encode(self, e) -> dict:
        if e.is_finite:
            return {"finite": sorted(e.head)}
        return {"cofinite_except": sorted(set(range(e.threshold)) - e.head)}

    def decode(self, obj) -> PeriodicSet:
        if isinstance(obj, dict) and "finite" in obj:
            return PeriodicSet.finite(obj["finite"])
        if isinstance(obj, dict) and "cofinite_except" in obj:
            return PeriodicSet.cofinite_except(obj["cofinite_except"])
        raise AlgebraError(f"cannot read finite/cofinite element from {obj!r}")

    def describe(self) -> dict:
        return {"kind": "finite_cofinite"}


class UltPeriodicAlgebra(_NaturalsAlgebra):
    """Ultimately periodic subsets of the naturals with period dividing ``modulus``."""

    kind = "ult_periodic"

    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or modulus < 1:
            raise AlgebraError("modulus must be a positive integer")
        super().__init__()
        self.modulus = modulus

    def __repr__(self):
        return f"UltPeriodicAlgebra({self.modulus})"

    def __eq__(self, other):
        return isinstance(other, UltPeriodicAlgebra) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("ult_periodic", self.modulus))

    def residue_class(self, residues, modulus: int | None = None) -> PeriodicSet:
        return self.check(PeriodicSet.residue_class(residues, modulus or self.modulus))

    def encode(self, e) -> dict:
        return {"prefix": sorted(e.head), "threshold": e.threshold,
                "residues": sorted(e.residues), "modulus": e.period}

    def decode(self, obj) -> PeriodicSet:
        if isinstance(obj, dict) and "residues" in obj:
            e = PeriodicSet.make(obj.get("prefix", ()), obj.get("threshold", 0),
                                 obj["residues"], obj.get("modulus", self.modulus))
            return self.check(e)
        if isinstance(obj, dict) and "finite" in obj:
            return PeriodicSet.finite(obj["finite"])
        if isinstance(obj, dict) and "cofinite_except" in obj:
            return PeriodicSet.cofinite_except(obj["cofinite_except"])
        raise AlgebraError(f"cannot read ultimately periodic element from {obj!r}")

    def describe(self) -> dict:
        return {"kind": "ult_periodic", "modulus": self.modulus}


class RelativeAlgebra:
    """The algebra of elements below ``top`` in a symbolic parent algebra.

    Meets and joins are inherited; the complement of b is b* /\\ top.
    """

    def __init__(self, parent, top):
        if parent.is_zero(top):
            raise AlgebraError("relative algebra of the zero element is degenerate")
        self.parent = parent
        self.top = top
        self.finite = parent.finite
        self.kind = parent.kind
        self.modulus = getattr(parent, "modulus", 1)
        self.zero = parent.zero
        self.one = top

    def __repr__(self):
        return f"RelativeAlgebra({self.parent!r}, {self.top!r})"

    def meet(self, a, b):
        return self.parent.meet(a, b)

    def join(self, a, b):
        return self.parent.join(a, b)

    def complement(self, a):
        return self.parent.meet(self.parent.complement(a), self.top)

    def leq(self, a, b):
        return self.parent.leq(a, b)

    def is_zero(self, a):
        return self.parent.is_zero(a)

    def contains(self, e):
        return self.parent.contains(e) and self.parent.leq(e, self.top)

    def check(self, e):
        if not self.contains(e):
            raise AlgebraError(f"{e!r} is not below {self.top!r}")
        return e

    def key(self, e):
        return self.parent.key(e)

    def encode(self, e):
        return self.parent.encode(e)

    def decode(self, obj):
        return self.check(self.parent.decode(obj))

    def random_element(self, rng):
        return self.parent.meet(self.parent.random_element(rng), self.top)

    def is_bounded_element(self, e):
        return self.parent.is_bounded_element(e)

    def tail_residues(self, e, modulus=None):
        return self.parent.tail_residues(e, modulus)

    def atom(self, n):
        return self.check(self.parent.atom(n))

    def describe(self):
        return {"kind": "relative", "parent": self.parent.describe(), "top": self.parent.encode(self.top)}


def make_algebra(descriptor: dict):
    """Build an algebra from a JSON-style descriptor."""
    if not isinstance(descriptor, dict) or "kind" not in descriptor:
        raise AlgebraError(f"algebra descriptor needs a 'kind': {descriptor!r}")
    kind = descriptor["kind"]
    if kind == "powerset":
        atoms = descriptor.get("atoms")
        if not isinstance(atoms, list):
            raise AlgebraError("powerset descriptor needs an 'atoms' list")
        return PowersetAlgebra(atoms)
    if kind == "finite":
        return FiniteAlgebra(descriptor["atom_sets"])
    if kind == "finite_cofinite":
        return FiniteCofiniteAlgebra()
    if kind == "ult_periodic":
        m = descriptor.get("modulus")
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise AlgebraError("ult_periodic descriptor needs a positive integer 'modulus'")
        return UltPeriodicAlgebra(m)
    raise AlgebraError(f"unknown algebra kind {kind!r}")


# ---------------------------------------------------------------------------
# Ideals and ultrafilters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    """A decidable ideal.

    kind is one of ``all``, ``finite`` (finite elements of a symbolic algebra),
    ``principal`` (everything below ``top``) or ``finite_plus`` (elements whose
    part outside ``top`` is finite).
    """

    kind: str
    top: object = None

    @classmethod
    def all(cls) -> "Ideal":
        return cls("all")

    @classmethod
    def finite_elements(cls) -> "Ideal":
        return cls("finite")

    @classmethod
    def principal(cls, top) -> "Ideal":
        return cls("principal", top)

    @classmethod
    def generated(cls, algebra, generators: Iterable) -> "Ideal":
        return cls("principal", algebra.join_all(generators))

    @classmethod
    def finite_plus(cls, top) -> "Ideal":
        return cls("finite_plus", top)

    def contains(self, algebra, e) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "principal":
            return algebra.leq(e, self.top)
        if self.kind == "finite":
            if algebra.finite:
                return True
            return algebra.is_bounded_element(e)
        if self.kind == "finite_plus":
            if algebra.finite:
                return True
            return algebra.is_bounded_element(algebra.meet(e, algebra.complement(self.top)))
        raise AlgebraError(f"unknown ideal kind {self.kind!r}")

    def top_element(self, algebra):
        """Largest element of the ideal (finite algebras only)."""
        if not algebra.finite:
            if self.kind == "principal":
                return self.top
            raise UnsupportedOperation("non-principal ideal of a symbolic algebra has no top")
        if self.kind == "principal":
            return self.top
        return algebra.one

    def normalized(self, algebra) -> "Ideal":
        if algebra.finite:
            return Ideal.principal(self.top_element(algebra))
        return self

    def elements(self, algebra) -> list:
        if not algebra.finite:
            raise UnsupportedOperation("ideal of a symbolic algebra is not enumerable")
        return [e for e in algebra.elements() if self.contains(algebra, e)]

    def tail_residues(self, algebra) -> frozenset:
        """Residues mod the algebra modulus in which some member is infinite."""
        if algebra.finite:
            return frozenset()
        if self.kind == "all":
            return frozenset(range(algebra.modulus))
        if self.kind == "finite":
            return frozenset()
        return algebra.tail_residues(self.top)

    def describe(self, algebra) -> dict:
        if self.kind in ("all", "finite"):
            return {"kind": self.kind}
        return {"kind": self.kind, "top": algebra.encode(self.top)}


def is_ideal(algebra, members: Iterable) -> bool:
    """Check that a finite family is downward closed and closed under joins."""
    s = set(members)
    if algebra.zero not in s:
        return False
    for a in s:
        for b in s:
            if algebra.join(a, b) not in s:
                return False
    for a in s:
        for b in algebra.elements():
            if algebra.leq(b, a) and b not in s:
                return False
    return True


@dataclass(frozen=True)
class Ultrafilter:
    """Ultrafilter descriptor: principal at an atom, or a free one on the naturals.

    ``free_cofinite`` collects the cofinite sets; ``free_residue`` collects the
    sets containing almost all of the residue class ``residue`` mod ``modulus``.
    """

    kind: str
    atom: object = None
    residue: int | None = None
    modulus: int | None = None

    @classmethod
    def principal(cls, atom) -> "Ultrafilter":
        return cls("principal", atom=atom)

    def contains(self, algebra, e) -> bool:
        if self.kind == "principal":
            return algebra.leq(self.atom, e)
        if self.kind == "free_cofinite":
            return not e.is_finite
        if self.kind == "free_residue":
            return e.infinite_in_class(self.residue, self.modulus)
        raise AlgebraError(f"unknown ultrafilter kind {self.kind!r}")

    def is_bounded(self, algebra, ideal: Ideal) -> bool:
        if self.kind == "principal":
            return ideal.contains(algebra, self.atom)
        if algebra.finite:
            return False
        if ideal.kind == "all":
            return True
        if self.kind == "free_residue":
            return self.residue in ideal.tail_residues(algebra)
        return ideal.kind == "all"

    def members(self, algebra) -> list:
        return [e for e in algebra.elements() if self.contains(algebra, e)]


class PrincipalFamily:
    """The infinite family of principal ultrafilters of a symbolic algebra."""

    def __init__(self, algebra):
        self.algebra = algebra

    def __iter__(self) -> Iterator[Ultrafilter]:
        for n in itertools.count():
            yield Ultrafilter.principal(self.algebra.atom(n))

    def take(self, k: int) -> list[Ultrafilter]:
        return list(itertools.islice(self, k))


@dataclass
class SymbolicUltrafilters:
    principal: PrincipalFamily
    free: tuple


def ultrafilters(algebra):
    """Ultrafilters of an algebra.

    Finite algebras get the complete list (one per atom).  Symbolic algebras
    get a :class:`SymbolicUltrafilters` record holding the infinite principal
    family and the free descriptors of the algebra.
    """
    if algebra.finite:
        return [Ultrafilter.principal(a) for a in algebra.atoms()]
    if algebra.kind == "finite_cofinite":
        free = (Ultrafilter("free_cofinite"),)
    else:
        m = algebra.modulus
        free = tuple(Ultrafilter("free_residue", residue=r, modulus=m) for r in range(m))
    return SymbolicUltrafilters(PrincipalFamily(algebra), free)


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------

class AlgebraHom:
    """A complete Boolean homomorphism.

    For finite sources the map is tabulated; otherwise it is a callable
    together with a closed-form lower adjoint.
    """

    def __init__(self, source, target, fn: Callable, name: str = "hom", adjoint_fn: Callable | None = None):
        self.source = source
        self.target = target
        self.name = name
        self._fn = fn
        self._adjoint_fn = adjoint_fn
        self.table = None
        if source.finite:
            self.table = {a: fn(a) for a in source.elements()}

    def __call__(self, a):
        if self.table is not None:
            return self.table[a]
        return self._fn(a)

    def __repr__(self):
        return f"AlgebraHom({self.name}: {self.source!r} -> {self.target!r})"

    @classmethod
    def from_atom_images(cls, source: FiniteAlgebra, target, images: dict, name="hom") -> "AlgebraHom":
        """Extend atom images by joins; images must be disjoint and join to 1."""
        def fn(a):
            return target.join_all(images[p] for p in source.atoms_below(a))
        return cls(source, target, fn, name)

    @classmethod
    def identity(cls, algebra) -> "AlgebraHom":
        return cls(algebra, algebra, lambda a: a, "identity", adjoint_fn=lambda b: b)

    def compose(self, inner: "AlgebraHom") -> "AlgebraHom":
        """self after inner."""
        adj = None
        if self._adjoint_fn is not None and inner._adjoint_fn is not None:
            adj = lambda b: inner._adjoint_fn(self._adjoint_fn(b))
        return AlgebraHom(inner.source, self.target, lambda a: self(inner(a)),
                          f"{self.name}.{inner.name}", adjoint_fn=adj)

    def atom_images(self) -> dict:
        return {p: self(p) for p in self.source.atoms()}

    def hom_law_failures(self) -> list[tuple]:
        """Violations of the Boolean homomorphism laws (finite source only)."""
        S, T = self.source, self.target
        out = []
        if self(S.zero) != T.zero:
            out.append(("zero", S.zero))
        if self(S.one) != T.one:
            out.append(("one", S.one))
        for a in S.elements():
            if self(S.complement(a)) != T.complement(self(a)):
                out.append(("complement", a))
            for b in S.elements():
                if self(S.meet(a, b)) != T.meet(self(a), self(b)):
                    out.append(("meet", a, b))
                if self(S.join(a, b)) != T.join(self(a), self(b)):
                    out.append(("join", a, b))
        return out

    def is_injective(self) -> bool:
        if self.table is None:
            raise UnsupportedOperation("injectivity of a symbolic hom")
        return len(set(self.table.values())) == len(self.table)

    def is_surjective(self) -> bool:
        if self.table is None or not self.target.finite:
            raise UnsupportedOperation("surjectivity of a symbolic hom")
        return set(self.table.values()) == set(self.target.elements())

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def equals(self, other: "AlgebraHom") -> bool:
        return self.table is not None and all(self(a) == other(a) for a in self.source.elements())

    @cached_property
    def lower_adjoint(self) -> Callable:
        return adjoint(self)


def adjoint(phi: AlgebraHom) -> Callable:
    """The lower adjoint phi_L of a complete hom: phi_L(b) = meet{a : b <= phi(a)}.

    For finite algebras the meet is realised as the join of the source atoms p
    with phi(p) /\\ b != 0.  Symbolic homs must carry a closed form.
    """
    if phi._adjoint_fn is not None:
        return phi._adjoint_fn
    S, T = phi.source, phi.target
    if not (S.finite and T.finite):
        raise UnsupportedOperation(f"no closed-form adjoint for {phi!r}")
    atom_images = [(p, phi(p)) for p in S.atoms()]
    table = {}
    for b in T.elements():
        table[b] = S.join_all(p for p, img in atom_images if not T.is_zero(T.meet(img, b)))
    return table.__getitem__


def natural_epimorphism(parent, relative) -> AlgebraHom:
    top = relative.one
    return AlgebraHom(parent, relative, lambda a: parent.meet(a, top), "restrict",
                      adjoint_fn=lambda b: b)


def relative_algebra(algebra, a0):
    """The relative algebra of elements below a0 and the natural epimorphism a -> a /\\ a0."""
    algebra.check(a0)
    if algebra.is_zero(a0):
        raise AlgebraError("relative algebra of the zero element is degenerate")
    if algebra.finite:
        rel = FiniteAlgebra(algebra.atoms_below(a0), ground=[x for x in algebra.ground if x in a0])
    else:
        rel = RelativeAlgebra(algebra, a0)
    return rel, natural_epimorphism(algebra, rel)


def trivial_algebra() -> FiniteAlgebra:
    """The one-element algebra (0 = 1)."""
    return FiniteAlgebra([], ground=[])


def boolean_law_failures(algebra, samples: int = 40, seed: int = 0) -> tuple[list[tuple], str]:
    """Violations of the Boolean algebra laws, with the method used.

    Finite algebras are checked on every triple; symbolic ones on a seeded
    sample (their operations are closed forms, so this is a smoke test).
    """
    A = algebra
    if A.finite:
        pool, method = A.elements(), "exhaustive"
    else:
        rng = random.Random(seed)
        pool = [A.zero, A.one] + [A.random_element(rng) for _ in range(samples)]
        method = "sampled"
        pool = list(dict.fromkeys(pool))
    out = []
    for a in pool:
        ac = A.complement(a)
        if A.meet(a, ac) != A.zero or A.join(a, ac) != A.one:
            out.append(("complement", a))
        if A.meet(a, A.one) != a or A.join(a, A.zero) != a:
            out.append(("identity", a))
    if A.finite:
        triples = itertools.product(pool, repeat=3)
    else:
        triples = ([rng.choice(pool) for _ in range(3)] for _ in range(400))
    for a, b, c in triples:
        if A.meet(a, b) != A.meet(b, a) or A.join(a, b) != A.join(b, a):
            out.append(("commutative", a, b))
        if A.meet(a, A.join(b, c)) != A.join(A.meet(a, b), A.meet(a, c)):
            out.append(("distributive", a, b, c))
        if A.meet(a, A.meet(b, c)) != A.meet(A.meet(a, b), c):
            out.append(("associative", a, b, c))
        if A.leq(a, b) != (A.meet(a, b) == a):
            out.append(("order", a, b))
    return out, method
