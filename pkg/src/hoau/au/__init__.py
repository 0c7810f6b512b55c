from .matching import (DEFAULT_FUEL, MatchOutcome, MatchVerificationError, NotAPattern,
                       is_pattern, less_general, match_bounded, pattern_args, pattern_match)
from .generalize import (AUP, GenWitness, WitnessError, check_generalization,
                         enumerate_generalizations, find_witness, generate_terms,
                         ground_term, ground_witnesses, pattern_lgg)
