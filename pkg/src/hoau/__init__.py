"""Anti-unification over the simply-typed lambda calculus."""
from .kernel import *  # noqa: F401,F403
