"""Reversible-function synthesis into mixed-polarity Toffoli networks.

Functions enter as truth tables or permutations; the engine clears the
per-line difference vectors with a modified Quine-McCluskey procedure
and emits NOT/CNOT/multi-controlled-Toffoli circuits, which are then
simplified, verified by exact simulation, and costed in T-levels.
"""

from .cost_model import (CostReport, CostTable, DEFAULT_COST_TABLE,
                         UnknownCost, gate_histogram, parse_cost_table,
                         report, t_levels, t_levels_of_histogram)
from .cover import NoOddCover, esop_cover, select_cover
from .cubes import Cube, merge, merge_pass, mergeable, maximal_cubes
from .function_model import (BadLength, DifferenceVector, NotBijective,
                             ReversibleFunction, all_difference_vectors,
                             apply_gate_inputs, difference_vector,
                             from_permutation, from_truth_table, identity,
                             is_identity, segments)
from .gate_model import (Circuit, Gate, VerificationReport, eval_circuit,
                         eval_gate, gate, reverse, to_permutation, verify)
from .io_real import (BadHeader, BadRow, LineMismatch, UnknownGate,
                      parse_real, parse_tt, write_perm, write_real, write_tt)
from .mqm_engine import (ControlExpression, NoFreeLine, ScoredMinterm,
                         detect_spis, emit_gates, pair_cubes,
                         prime_implicants, score_minterms)
from .pattern_decomposition import (PatternSplit, complement_shortcut,
                                    find_patterns, synthesize_decomposed)
from .postprocess import (EsopLine, TemplateInapplicable, cancel_duplicates,
                          factor_across, factor_within, simplify_circuit)
from .synthesis_engine import (DEFAULT_CONFIG, LimitExceeded, NotSwappable,
                               SynthesisConfig, evaluate_vector,
                               fallback_eliminate, swap_options, swap_phase,
                               synthesize, update_vectors)
from .templates import TemplateMatch, match_templates

__version__ = "0.1.0"
