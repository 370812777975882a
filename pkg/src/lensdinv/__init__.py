"""Exact d-invariants of lens spaces and negative-definite plumbed
3-manifolds, with the distance-one surgery obstruction pipeline for
L(n,1) with n odd."""

from .exactlin import (CharVector, IntersectionForm, Rational, SingularFormError,
                       SpincClass, initial_char_vectors, invert_exact,
                       is_negative_definite, same_spinc_class)
from .lens import (LensSpace, lens_d, lens_d_multiset, lens_d_q1,
                   self_conjugate_labels)
from .plumbing import (AlgorithmInapplicableError, PathKind, PathOutcome,
                       PlumbingGraph, StepBudgetExceededError,
                       count_bad_vertices, dinv_plumbed, intersection_form,
                       maximising_supporters, push_down)
from .seifert import (MuShift, NotCoveredError, OutOfModeledRangeError,
                      SeifertParams, dinv_closed_tM, dinv_closed_tM_mu,
                      is_lspace_M, lens_case_labels, maximiser_families,
                      mu_shift, seifert_plumbing, tM_representative)
from .obstruction import (Candidate, DNotComputableError, Reason, SurgeryCase,
                          SweepBoundError, Verdict, VerdictKind, VValue,
                          candidates_for, check_case, classification_rows,
                          classify, even_spin_check, second_level_check,
                          surgered_homology, symmetry_prune, v_xi0)

__version__ = "0.1.0"
