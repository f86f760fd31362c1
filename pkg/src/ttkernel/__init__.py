"""A small kernel for dependent type theory with cumulative universes,
Pi-types with eta, and booleans, normalized by evaluation."""

from ttkernel.canonicity import Witness, bool_witness, distinct01
from ttkernel.checker import CheckContext, TypeCheckError, check, check_program, empty_context, infer
from ttkernel.semantics import convertible, eval_term, nf, reify, reify_type
from ttkernel.surface import elaborate, parse, parse_term, pretty, resolve

__version__ = "0.1.0"
