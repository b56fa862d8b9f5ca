"""Abelian and l-abelian complexities of morphic words, with tools for spotting k-regularity."""
from . import catalog, complexity, kernel, theorems, words
from .catalog import WORD_IDS, get_word
from .complexity import (ComplexitySeries, StatisticKind, extremal_counts, factor_complexity,
                         jump_functions, l_abelian_complexity, series, series_table)
from .errors import (AbelianLabError, AlphabetMismatch, NotClosed, NotProlongable, NotStabilized,
                     StateCapExceeded, TooShort, VerificationFailed)
from .kernel import (AutomaticKernel, KernelLabel, LinearRepresentation, RelationSet, SequenceOracle,
                     automatic_kernel, eval_linear_representation, guess_relations,
                     to_linear_representation)
from .sequences import named_sequence
from .theorems import (ReflectionSpec, VerificationReport, a_sequence, conjecture_blocks,
                       reflection_eval, solve_reflection, verify_A_relations, verify_pd_suite,
                       verify_tm_suite)
from .words import (Morphism, WordPrefix, block_coding, enumerate_factors, iterate_fixed_point,
                    literal, parikh)

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memo table (profiles, generated prefixes, recurrence values)."""
    words.clear_caches()
    complexity.clear_caches()
    theorems.clear_caches()
