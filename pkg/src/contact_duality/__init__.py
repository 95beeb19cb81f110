"""Finite and symbolic toolkit for contact algebras and their dual spaces.

Local contact algebras are checked against their axioms, dualized to finite
spaces of clusters, and compared through their compactification lattices.
"""
from .algebra import (AlgebraError, AlgebraHom, FiniteAlgebra, FiniteCofiniteAlgebra, Ideal, PeriodicSet,
                      PowersetAlgebra, UltPeriodicAlgebra, Ultrafilter, UnsupportedOperation, adjoint,
                      boolean_law_failures, make_algebra, relative_algebra, ultrafilters)
from .contact import (AtomGraph, CRho, ContactRelation, ExplicitRelation, LocalContactAlgebra, Overlap,
                      Partition, TableRelation, atom_graphs, c_rho, check_contact_axioms, check_lca, check_nca,
                      finite_ideals, is_lca, way_inside)
from .duality import (Cluster, DualSpace, check_morphism_conditions, cluster_report, clusters,
                      factor_embedding, is_lca_embedding, lambda_g, psi_a_morphism, psi_a_object,
                      round_trip_algebra, round_trip_object, sigma_u)
from .extensions import (LocalProximitySpace, admissibility_report, alexandroff_ncr, beta_ncr, compare_ncr,
                         enumerate_ka, inf_ncr, is_admissible_ncr, lca_extension_order, njastad_delta,
                         reconstruct_local_proximity, restrict_local_proximity, sup_ncr, wallman_check)
from .frames import (DeltaIdealFrame, frame_of_delta_ideals, ib_u, iota, is_delta_ideal, open_set_dual,
                     regular_closed_dual)
from .report import ConditionReport, ConstructionError, PreconditionError
from .spaces import (FiniteSpace, SpaceMap, dense_subspace_iso, dual_morphism, enumerate_topologies,
                     map_properties, rc_algebra)

__version__ = "0.1.0"
