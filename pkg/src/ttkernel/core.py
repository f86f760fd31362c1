"""De Bruijn core syntax and explicit substitutions.

Terms and types share one grammar. A substitution from context Delta to
context Gamma is a tuple with one term per variable of Gamma, oldest variable
first; every entry is scoped in Delta. Variable ``Ix(k)`` in a context of
length ``n`` is therefore looked up at position ``n - 1 - k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

DEFAULT_MAX_UNIVERSE = 64


@dataclass(frozen=True)
class Ix:
    index: int

    def __repr__(self) -> str:
        return f"Ix({self.index})"


@dataclass(frozen=True)
class Lam:
    annotation: "Term"
    body: "Term"


@dataclass(frozen=True)
class Pi:
    domain: "Term"
    codomain: "Term"


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Univ:
    level: int


@dataclass(frozen=True)
class Bool:
    def __repr__(self) -> str:
        return "Bool"


@dataclass(frozen=True)
class Zero:
    def __repr__(self) -> str:
        return "Zero"


@dataclass(frozen=True)
class One:
    def __repr__(self) -> str:
        return "One"


@dataclass(frozen=True)
class Brec:
    motive: "Term"
    case0: "Term"
    case1: "Term"


Term = Union[Ix, Lam, Pi, App, Univ, Bool, Zero, One, Brec]
Substitution = Tuple[Term, ...]
Telescope = Tuple[Term, ...]

BOOL = Bool()
ZERO = Zero()
ONE = One()


def size(t: Term) -> int:
    """Number of constructors in ``t`` (variables count as one)."""
    if isinstance(t, Lam):
        return 1 + size(t.annotation) + size(t.body)
    if isinstance(t, Pi):
        return 1 + size(t.domain) + size(t.codomain)
    if isinstance(t, App):
        return 1 + size(t.fun) + size(t.arg)
    if isinstance(t, Brec):
        return 1 + size(t.motive) + size(t.case0) + size(t.case1)
    return 1


def is_scoped(t: Term, n: int) -> bool:
    """True when every free variable of ``t`` is below ``n``."""
    if isinstance(t, Ix):
        return 0 <= t.index < n
    if isinstance(t, Lam):
        return is_scoped(t.annotation, n) and is_scoped(t.body, n + 1)
    if isinstance(t, Pi):
        return is_scoped(t.domain, n) and is_scoped(t.codomain, n + 1)
    if isinstance(t, App):
        return is_scoped(t.fun, n) and is_scoped(t.arg, n)
    if isinstance(t, Brec):
        return is_scoped(t.motive, n) and is_scoped(t.case0, n) and is_scoped(t.case1, n)
    return True


def shift(t: Term, by: int = 1, cutoff: int = 0) -> Term:
    """Add ``by`` to every variable at or above ``cutoff``."""
    if isinstance(t, Ix):
        return Ix(t.index + by) if t.index >= cutoff else t
    if isinstance(t, Lam):
        return Lam(shift(t.annotation, by, cutoff), shift(t.body, by, cutoff + 1))
    if isinstance(t, Pi):
        return Pi(shift(t.domain, by, cutoff), shift(t.codomain, by, cutoff + 1))
    if isinstance(t, App):
        return App(shift(t.fun, by, cutoff), shift(t.arg, by, cutoff))
    if isinstance(t, Brec):
        return Brec(
            shift(t.motive, by, cutoff), shift(t.case0, by, cutoff), shift(t.case1, by, cutoff)
        )
    return t


def lift(s: Substitution) -> Substitution:
    """``s+ = (s p, q)``: push ``s`` under one binder."""
    return tuple(shift(u) for u in s) + (Ix(0),)


def apply_sub(t: Term, s: Substitution) -> Term:
    """Apply the parallel substitution ``s`` to ``t``."""
    if isinstance(t, Ix):
        assert t.index < len(s), f"{t} is out of scope for a substitution of length {len(s)}"
        return s[len(s) - 1 - t.index]
    if isinstance(t, Lam):
        return Lam(apply_sub(t.annotation, s), apply_sub(t.body, lift(s)))
    if isinstance(t, Pi):
        return Pi(apply_sub(t.domain, s), apply_sub(t.codomain, lift(s)))
    if isinstance(t, App):
        return App(apply_sub(t.fun, s), apply_sub(t.arg, s))
    if isinstance(t, Brec):
        # the motive is an ordinary function term, so it takes s itself; under
        # a literal Lam motive this unfolds to the binder-lifted form T s+
        return Brec(apply_sub(t.motive, s), apply_sub(t.case0, s), apply_sub(t.case1, s))
    return t


def id_sub(n: int) -> Substitution:
    return tuple(Ix(n - 1 - i) for i in range(n))


def comp_sub(s: Substitution, d: Substitution) -> Substitution:
    """Composite ``s d``: first ``s``, then ``d``."""
    return tuple(apply_sub(u, d) for u in s)


def weaken_sub(n: int) -> Substitution:
    """The projection ``p`` from a context of length ``n + 1`` to its prefix of length ``n``."""
    return tuple(Ix(n - i) for i in range(n))


def ext_sub(s: Substitution, a: Term) -> Substitution:
    return tuple(s) + (a,)


def single_sub(a: Term, n: int) -> Substitution:
    """``<a> = (1, a)``, instantiating the innermost binder of a context of length ``n + 1``."""
    return ext_sub(id_sub(n), a)


def instantiate_term(body: Term, arg: Term, n: int) -> Term:
    return apply_sub(body, single_sub(arg, n))


def alpha_eq(t: Term, u: Term) -> bool:
    return t == u
