"""Simple types, lambda terms, substitution and concrete syntax."""
from .signature import Signature
from .syntax import (ParseError, UnknownIdentifier, from_json, infer_type,
                     parse_term, show, show_subst, subst_to_json, to_json)
from .terms import (BOUND, CONST, FREE, LAMBDA, Abs, App, Head, KernelError,
                    PositionError, Subst, Term, TypeCheckError, abstract,
                    alpha_eq, apply_normal, apply_subst, beta_eta_normalize,
                    bound_vars, canonical_key, clean_subst, compose, const_term,
                    eta_reduce, free_term, free_vars, fresh_free_var, head_of,
                    is_closed, is_eta_long, is_prefix, iter_positions, occ,
                    parse_position, positions, projection, projections,
                    replace_at, saturate, show_position, strip_binders,
                    subterm_at, var_term)
from .types import Arrow, Base, Type, arrow, parse_type, show_type, split_type
