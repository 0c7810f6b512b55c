from .tight import (NOT_TIGHT, TIGHT, UNKNOWN, Fragment, ShapeError, TightenResult,
                    TightResult, check_head_shape, is_pattern_derived, is_tight,
                    rewrite_bound, split_top, tighten, tightness_candidates)
from .lifting import core, is_representative, lift, lift_with_bindings, maximal_positions
from .pseudo import is_pseudo_pattern_shape, pseudo_pattern_lambda, pseudo_pattern_sp
from .chain import (CONSTANT_HEAD_CASE, FREE_HEAD_OCCURRENCE_CASE, PROJECTION_CASE,
                    ChainCertificate, ChainTooLarge, MAX_OCCURRENCES, NotPatternDerived, RefutationEvidence,
                    RefutationFailed, chain_step, generate_chain, max_free_occurrences,
                    mu, refute_chain_step, verify_element)
