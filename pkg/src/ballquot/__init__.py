"""Exact lattice computations for ball quotients of IHS manifolds with prime-order symmetry."""
from .catalog import LatticeName, k3_lattice, k3n_lattice, make, parse
from .lattice import (DiscriminantGroup, FiniteQuadraticForm, GenusSymbol, Lattice, direct_sum,
                      discriminant_form, discriminant_group, dual_gram, forms_opposite,
                      genus_triple, is_p_elementary, twist)
from .sublattice import (PrimitiveEmbedding, decompose_vector, divisibility, glue_index,
                         orthogonal_complement, saturate)
from .isometry import (IsometryAction, ball_dimension, coinvariant_charpoly_check,
                       coxeter_action, glue_power_check, in_O_plus, totient_bound, verify)
from .cyclotomic import (CycScalar, CycVector, eigenspace_basis, isotropy_check,
                         positivity_check)
from .walls import (WallVector, WallVerdict, delta_prime_equiv_check, delta_prime_test,
                    delta_scan, enumerate_box, enumerate_definite, hyperplane_membership,
                    is_wall_divisor, two_torsion_obstruction)
from .chambers import (Chamber, chamber_of, cone_membership, crossing_count, local_walls,
                       refine_by_delta_prime)

__version__ = "0.1.0"
