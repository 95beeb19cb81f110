"""Dualize a few small local contact algebras and print their cluster spaces."""
from contact_duality import (AtomGraph, Ideal, LocalContactAlgebra, Overlap, PowersetAlgebra, check_lca,
                             frame_of_delta_ideals, psi_a_object)


def show(name, L):
    rep = check_lca(L)
    print(f"{name}: lca={rep.ok}")
    if not rep.ok:
        print("  " + str(rep).replace("\n", "\n  "))
        return
    Y = psi_a_object(L)
    print(f"  dual space: {len(Y.points)} points, discrete={Y.is_discrete}")
    print(f"  delta-ideals: {len(frame_of_delta_ideals(L))}")


A = PowersetAlgebra("pqr")
show("P(3) with overlap", LocalContactAlgebra(A, Overlap(A), Ideal.all()))
show("P(3) with p-q glued", LocalContactAlgebra(A, AtomGraph.from_labels(A, [("p", "q")]), Ideal.all()))
show("P(3), only p bounded", LocalContactAlgebra(A, Overlap(A), Ideal.principal(A.element(["p"]))))
