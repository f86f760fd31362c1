"""Normalization by evaluation.

Values are the semantic domain: closed-under-evaluation representatives in
which every beta and brec redex has already been contracted. Free variables
are de Bruijn *levels* (``NVar``) so that values never need shifting; readback
turns level ``l`` into index ``size - l - 1``.

The readback is type-directed. At a function type every value is read back as
a lambda (eta-long), at the booleans a value is ``0``, ``1`` or a neutral, and
at a universe a value is read back as a type. Two well-typed terms are
convertible exactly when their readbacks are syntactically equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple, Union

from ttkernel.core import (
    BOOL,
    ONE,
    ZERO,
    App,
    Bool,
    Brec,
    Ix,
    Lam,
    One,
    Pi,
    Term,
    Univ,
    Zero,
)

Environment = Tuple["Value", ...]
NormalTerm = Term


@dataclass(frozen=True)
class Closure:
    env: Environment
    body: Term


@dataclass(frozen=True)
class VUniv:
    level: int


@dataclass(frozen=True)
class VBool:
    pass


@dataclass(frozen=True)
class VZero:
    pass


@dataclass(frozen=True)
class VOne:
    pass


@dataclass(frozen=True)
class VPi:
    domain: "Value"
    codomain: Closure


@dataclass(frozen=True)
class VLam:
    body: Closure


@dataclass(frozen=True)
class VBrec:
    # a function value of type (x : N2) -> U_n, not necessarily a VLam
    motive: "Value"
    case0: "Value"
    case1: "Value"


@dataclass(frozen=True)
class VNeutral:
    type: "Value"
    neutral: "Neutral"


@dataclass(frozen=True)
class NVar:
    level: int


@dataclass(frozen=True)
class NApp:
    fun: "Neutral"
    arg: "Value"
    arg_type: "Value"


@dataclass(frozen=True)
class NBrec:
    motive: "Value"
    case0: "Value"
    case1: "Value"
    scrutinee: "Neutral"


Value = Union[VUniv, VBool, VZero, VOne, VPi, VLam, VBrec, VNeutral]
Neutral = Union[NVar, NApp, NBrec]

VBOOL = VBool()
VZERO = VZero()
VONE = VOne()


def eval_term(env: Environment, t: Term) -> Value:
    if isinstance(t, Ix):
        return env[len(env) - 1 - t.index]
    if isinstance(t, App):
        return v_app(eval_term(env, t.fun), eval_term(env, t.arg))
    if isinstance(t, Lam):
        return VLam(Closure(env, t.body))
    if isinstance(t, Pi):
        return VPi(eval_term(env, t.domain), Closure(env, t.codomain))
    if isinstance(t, Brec):
        return VBrec(eval_term(env, t.motive), eval_term(env, t.case0), eval_term(env, t.case1))
    if isinstance(t, Univ):
        return VUniv(t.level)
    if isinstance(t, Bool):
        return VBOOL
    if isinstance(t, Zero):
        return VZERO
    if isinstance(t, One):
        return VONE
    raise AssertionError(f"not a core term: {t!r}")


def instantiate(c: Closure, v: Value) -> Value:
    return eval_term(c.env + (v,), c.body)


def v_app(f: Value, a: Value) -> Value:
    if isinstance(f, VLam):
        return instantiate(f.body, a)
    if isinstance(f, VBrec):
        if isinstance(a, VZero):
            return f.case0
        if isinstance(a, VOne):
            return f.case1
        assert isinstance(a, VNeutral), f"brec applied to a non-boolean {a!r}"
        return VNeutral(v_app(f.motive, a), NBrec(f.motive, f.case0, f.case1, a.neutral))
    if isinstance(f, VNeutral):
        ty = f.type
        assert isinstance(ty, VPi), f"neutral of non-function type {ty!r} applied"
        return VNeutral(instantiate(ty.codomain, a), NApp(f.neutral, a, ty.domain))
    raise AssertionError(f"cannot apply {f!r}")


def reflect(ty: Value, n: Neutral) -> Value:
    """Embed a neutral of type ``ty``.

    Neutral functions stay neutral values carrying their type; ``v_app`` then
    builds the applied neutral, and ``reify`` eta-expands them on the way out.
    """
    return VNeutral(ty, n)


def fresh(ty: Value, size: int) -> Value:
    return reflect(ty, NVar(size))


def reify(size: int, ty: Value, v: Value) -> NormalTerm:
    if isinstance(ty, VPi):
        x = fresh(ty.domain, size)
        return Lam(
            reify_type(size, ty.domain),
            reify(size + 1, instantiate(ty.codomain, x), v_app(v, x)),
        )
    if isinstance(ty, VBool):
        if isinstance(v, VZero):
            return ZERO
        if isinstance(v, VOne):
            return ONE
    elif isinstance(ty, VUniv):
        return reify_type(size, v)
    if isinstance(v, VNeutral):
        return readback_neutral(size, v.neutral)
    raise AssertionError(f"value {v!r} does not inhabit {ty!r}")


def reify_type(size: int, ty: Value) -> NormalTerm:
    if isinstance(ty, VBool):
        return BOOL
    if isinstance(ty, VUniv):
        return Univ(ty.level)
    if isinstance(ty, VPi):
        x = fresh(ty.domain, size)
        return Pi(reify_type(size, ty.domain), reify_type(size + 1, instantiate(ty.codomain, x)))
    if isinstance(ty, VNeutral):
        return readback_neutral(size, ty.neutral)
    raise AssertionError(f"not a type: {ty!r}")


def readback_neutral(size: int, n: Neutral) -> Term:
    if isinstance(n, NVar):
        return Ix(size - n.level - 1)
    if isinstance(n, NApp):
        return App(readback_neutral(size, n.fun), reify(size, n.arg_type, n.arg))
    if isinstance(n, NBrec):
        motive_body = reify_type(size + 1, v_app(n.motive, fresh(VBOOL, size)))
        brec = Brec(
            Lam(BOOL, motive_body),
            reify(size, v_app(n.motive, VZERO), n.case0),
            reify(size, v_app(n.motive, VONE), n.case1),
        )
        return App(brec, readback_neutral(size, n.scrutinee))
    raise AssertionError(f"not a neutral: {n!r}")


def fresh_env(ctx_types: Sequence[Value]) -> Environment:
    return tuple(fresh(ty, i) for i, ty in enumerate(ctx_types))


def nf(ctx_types: Sequence[Value], ty: Value, t: Term) -> NormalTerm:
    """Eta-long beta-normal form of ``t : ty`` in a context of the given types."""
    return reify(len(ctx_types), ty, eval_term(fresh_env(ctx_types), t))


def nf_type(ctx_types: Sequence[Value], t: Term) -> NormalTerm:
    return reify_type(len(ctx_types), eval_term(fresh_env(ctx_types), t))


def convertible(size: int, ty: Value, v: Value, w: Value) -> bool:
    return reify(size, ty, v) == reify(size, ty, w)


def convertible_types(size: int, a: Value, b: Value) -> bool:
    return reify_type(size, a) == reify_type(size, b)
