"""Independent reference computations used to freeze expected values.

None of these import the library's derived constructions; they work from
definitions on plain Python sets.
"""
import itertools
import math


def subsets(xs):
    xs = list(xs)
    for r in range(len(xs) + 1):
        for c in itertools.combinations(xs, r):
            yield frozenset(c)


def atom_contact(edges):
    """Contact on subsets of atoms from an atom adjacency (reflexive closure added)."""
    def related(a, b):
        return any(x == y or (x, y) in edges or (y, x) in edges for x in a for y in b)
    return related


def way_inside(related, full):
    def ll(a, b):
        return not related(a, full - b)
    return ll


def beta_gfp(related, full):
    """a(-C)b iff (a, b*) lies in the largest interpolative sub-relation of <<."""
    elems = list(subsets(full))
    ll = way_inside(related, full)
    R = {(x, y) for x in elems for y in elems if ll(x, y)}
    while True:
        keep = {(x, y) for (x, y) in R if any((x, z) in R and (z, y) in R for z in elems)}
        if keep == R:
            break
        R = keep
    return lambda a, b: (a, full - b) not in R


def beta_dyadic(related, full, depth=None):
    """a(-C)b iff an explicit chain a << c_0 << c_1 << ... << c_L << b* exists.

    L = 2**depth; depth defaults to the least value with L + 1 > |A|.
    """
    elems = list(subsets(full))
    if depth is None:
        depth = max(1, math.ceil(math.log2(len(elems) + 1)))
    steps = 2 ** depth + 2
    ll = way_inside(related, full)
    succ = {x: [y for y in elems if ll(x, y)] for x in elems}

    def reach(a):
        frontier = {a}
        for _ in range(steps):
            frontier = {y for x in frontier for y in succ[x]}
        return frontier

    cache = {}

    def separated(a, b):
        if a not in cache:
            cache[a] = reach(a)
        return (full - b) in cache[a]

    return lambda a, b: not separated(a, b)


def clusters_by_definition(related, full):
    """All clusters of a finite contact algebra, found by brute force over families."""
    nonzero = [e for e in subsets(full) if e]
    out = []
    for fam in subsets(nonzero):
        if not fam:
            continue
        if not all(related(a, b) for a in fam for b in fam):
            continue
        if any(e not in fam and all(related(e, b) for b in fam) for e in nonzero):
            continue
        if any((a | b) in fam and a not in fam and b not in fam for a in nonzero for b in nonzero):
            continue
        out.append(fam)
    return out


def brute_adjoint(phi_table, source_elems, meet_all):
    """phi_L(b) = meet of {a : b <= phi(a)} by exhaustive search."""
    def lower(b):
        return meet_all([a for a in source_elems if b <= phi_table[a]])
    return lower


# ---------------------------------------------------------------------------
# truncation oracles for sets of naturals
# ---------------------------------------------------------------------------

N = 300
TAIL = range(N // 2, N)


def truncate(A, e, n=N):
    """Members of e below n, read through the algebra's own membership test."""
    return frozenset(k for k in range(n) if A.leq(A.atom(k), e))


def partition_related(blocks, modulus, a, b):
    """C_P on truncations: meet, or both hit one block often in the tail window."""
    if a & b:
        return True
    for blk in blocks:
        ka = sum(1 for k in TAIL if k % modulus in blk and k in a)
        kb = sum(1 for k in TAIL if k % modulus in blk and k in b)
        if ka >= 2 and kb >= 2:
            return True
    return False


def product_sup_related(moduli, a, b):
    """Closure of the diagonal in the product of one-point-per-residue compactifications.

    A point at infinity is a tuple of residues; a set accumulates at every
    tuple realized by its tail elements.
    """
    if a & b:
        return True
    tup = lambda k: tuple(k % m for m in moduli)
    ta = {tup(k) for k in TAIL if k in a}
    tb = {tup(k) for k in TAIL if k in b}
    return bool(ta & tb)
