"""Permutation polynomials of F_{q^n} built from linearized polynomials.

Exact finite-field arithmetic, q-linearized polynomial algebra, exact
character sums in Z[zeta_p], and constructors/verifiers for rational
permutation families with closed-form compositional inverses.
"""

__version__ = "0.1.0"

from .gf import (FieldCtx, FieldElem, FieldError, FieldMismatchError, make_field,  # noqa: E402
                 parse_elem, parse_field_spec)
from .linpoly import (LinPoly, SingularError, binomial, lambda_poly, lp_compose,  # noqa: E402
                      lp_invert, lp_invert_binomial, lp_kernel, lp_matrix, lp_rank, transpose)
from .exppoly import (Check, ExpPoly, NotAPermutationError, ScanBoundError,  # noqa: E402
                      ep_from_fraction, is_permutation, map_inverse_table, verify_inverse)
from .cyclo import (CycInt, DivisibilityError, ParityError, count_roots_Mt,  # noqa: E402
                    count_roots_Nt, gauss_sum, gauss_sum_base, parity_criterion,
                    weil_sum_closed, weil_sum_direct)
from .families import (Family, FamilyInstance, HypothesisError, PreconditionError,  # noqa: E402
                       audit_family, check_cor_s3, check_theorem1, check_theorem2,
                       family_conclusion, family_cor_n2k, family_e0, family_e1, family_f4k,
                       family_prop_first, family_prop_n3_sextic, family_thm_reciprocal,
                       family_thm_rs, search_family)

__all__ = [name for name in dir() if not name.startswith("_")]
