"""Boolean witnesses for closed terms.

A closed term of type N2 evaluates without any free variable to get stuck
on, so its normal form is one of the two constructors. ``bool_witness``
returns that constructor together with a re-checked conversion between the
subject and it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ttkernel.checker import check, empty_context
from ttkernel.core import DEFAULT_MAX_UNIVERSE, ONE, ZERO, Term
from ttkernel.semantics import VBOOL, VONE, VZERO, NormalTerm, convertible, eval_term, nf


class BoolValue(enum.Enum):
    IS_ZERO = 0
    IS_ONE = 1


@dataclass(frozen=True)
class Witness:
    value: BoolValue
    subject: Term
    normal_form: NormalTerm
    certified: bool

    def __str__(self) -> str:
        return str(self.value.value)


class NotCanonical(AssertionError):
    """A closed boolean normalized to something other than 0 or 1."""


def bool_witness(t: Term, max_universe: int = DEFAULT_MAX_UNIVERSE) -> Witness:
    """Type-check ``t : N2`` in the empty context and extract its value.

    Raises ``TypeCheckError`` when ``t`` is open or not a boolean.
    """
    check(empty_context(max_universe), t, VBOOL)
    normal = nf((), VBOOL, t)
    if normal == ZERO:
        value = BoolValue.IS_ZERO
    elif normal == ONE:
        value = BoolValue.IS_ONE
    else:
        raise NotCanonical(f"closed boolean with non-canonical normal form {normal!r}")
    certified = convertible(0, VBOOL, eval_term((), t), eval_term((), normal))
    return Witness(value, t, normal, certified)


def distinct01() -> bool:
    """True exactly when the kernel does not identify 0 and 1."""
    return not convertible(0, VBOOL, VZERO, VONE)
