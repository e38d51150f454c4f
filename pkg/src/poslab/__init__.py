"""poslab: positionality of omega-regular objectives, decided algebraically.

Library layout:
  words     alphabets, finite and ultimately periodic words, subword order
  algebra   Wilke algebras, classification and decision procedures
  automata  deterministic parity automata and their algebra compilation
  families  anti-dictionary / SR / FG positional language families
  games     labelled arenas, play checks, positional and monitor solvers
  atl       concurrent game structures and the positional coalition fragments
  oracles   independent brute-force cross-checks
  fixtures  the named corpus and seeded random generators
  formats   JSON interchange
  cli       the poslab command-line tool
"""

from .algebra import (ClassificationReport, WilkeAlgebra, boolean_combine,
                      check_closure_conditions, check_prefix_independent_positionality,
                      classify, complement, image_of_word, is_aperiodic,
                      is_prefix_independent, product_algebra, residuals,
                      syntactic_quotient, up_membership, validate_algebra)
from .automata import (DPA, dpa, dpa_complement, dpa_parse, dpa_serialize,
                       dpa_to_wilke, dpa_up_membership)
from .families import (AntiDictionary, FGFamily, SRFamily, antidict,
                       antidict_extend_letter, antidict_totally_ordered,
                       dfa_residual_order, fg_intersect, fg_inverse_image,
                       fg_membership, rabin_family, sr_family, sr_membership,
                       sr_to_dpa, subseq_dfa)
from .games import (Edge, EdgeArena, LassoPlay, Monitor, MonitorMemoryStrategy,
                    PositionalStrategy, StateArena, build_gadget, check_plays,
                    edge_to_state, previous_label_monitor, solve_monitor_memory,
                    solve_positional, solve_uniform_positional, state_to_edge,
                    step_monitor, trivial_monitor, validate_arena)
from .atl import (CGS, Atom, Bottom, Coalition, GFFG, GFFGG, GU, GXOr, Next,
                  Not, Or, Release, Top, Until, build_separator, coalition_game,
                  encode_rabin, eval_path_on_lasso, model_check, parse_formula,
                  rewrite, serialize_formula, template_algebra, validate_cgs)
from .words import (Alphabet, FiniteWord, UPWord, subword_leq, up, up_equal,
                    up_normalize, word)

__version__ = "0.1.0"
