"""Bidirectional type checking for the core calculus.

Every lambda carries its domain, so ``infer`` is total on well-scoped syntax.
``check`` pushes an expected function type into a lambda body and otherwise
infers and subsumes. Subsumption is conversion, widened only at universe
heads: ``U_n`` fits ``U_m`` when ``n <= m``. Nothing deeper is cumulative, so
a variable of type ``(x : A) -> U0`` does not fit ``(x : A) -> U1``, while
``fun (x : A) => N2`` checks against both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from ttkernel.core import (
    DEFAULT_MAX_UNIVERSE,
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
from ttkernel.semantics import (
    VBOOL,
    VONE,
    VZERO,
    Closure,
    Environment,
    NormalTerm,
    Value,
    VBool,
    VPi,
    VUniv,
    convertible_types,
    eval_term,
    fresh,
    instantiate,
    reify,
    reify_type,
    v_app,
)
from ttkernel.surface import pretty


class TypeCheckError(Exception):
    """A term was rejected by the checker.

    ``decl`` names the declaration being checked and ``location`` is a
    ``(line, column)`` pair, both filled in when known.
    """

    kind = "TypeError"

    def __init__(self, message: str, decl: Optional[str] = None, location=None):
        super().__init__(message)
        self.message = message
        self.decl = decl
        self.location = location

    def __str__(self) -> str:
        where = ""
        if self.location is not None:
            where = f"{self.location[0]}:{self.location[1]}: "
        if self.decl is not None:
            where += f"in definition '{self.decl}': "
        return f"{where}{self.message}"


class NotAFunction(TypeCheckError):
    kind = "NotAFunction"


class NotAType(TypeCheckError):
    kind = "NotAType"


class UnboundVariable(TypeCheckError):
    kind = "UnboundVariable"


class UniverseCeiling(TypeCheckError):
    kind = "UniverseCeiling"


class MotiveShape(TypeCheckError):
    kind = "MotiveShape"


class Mismatch(TypeCheckError):
    kind = "Mismatch"

    def __init__(self, expected: NormalTerm, got: NormalTerm, names: Sequence[str] = ()):
        super().__init__(
            f"type mismatch: expected {pretty(expected, names)}, got {pretty(got, names)}"
        )
        self.expected = expected
        self.got = got


@dataclass(frozen=True)
class CheckContext:
    types: Tuple[Value, ...] = ()
    env: Environment = ()
    max_universe: int = field(default=DEFAULT_MAX_UNIVERSE)

    @property
    def size(self) -> int:
        return len(self.types)

    def extend(self, ty: Value) -> "CheckContext":
        return CheckContext(
            self.types + (ty,), self.env + (fresh(ty, self.size),), self.max_universe
        )

    def eval(self, t: Term) -> Value:
        return eval_term(self.env, t)

    def names(self) -> Tuple[str, ...]:
        return tuple(f"x{i}" for i in range(self.size))


def empty_context(max_universe: int = DEFAULT_MAX_UNIVERSE) -> CheckContext:
    return CheckContext(max_universe=max_universe)


def infer(ctx: CheckContext, t: Term) -> Value:
    """Return the least type of ``t`` in ``ctx``."""
    if isinstance(t, Ix):
        if not 0 <= t.index < ctx.size:
            raise UnboundVariable(f"variable index {t.index} is not bound")
        return ctx.types[ctx.size - 1 - t.index]
    if isinstance(t, Univ):
        if t.level + 1 > ctx.max_universe:
            raise UniverseCeiling(
                f"U{t.level} has no type below the universe ceiling {ctx.max_universe}"
            )
        return VUniv(t.level + 1)
    if isinstance(t, Bool):
        return VUniv(0)
    if isinstance(t, (Zero, One)):
        return VBOOL
    if isinstance(t, Pi):
        n = infer_universe(ctx, t.domain)
        m = infer_universe(ctx.extend(ctx.eval(t.domain)), t.codomain)
        return VUniv(max(n, m))
    if isinstance(t, Lam):
        infer_universe(ctx, t.annotation)
        dom = ctx.eval(t.annotation)
        body_ty = infer(ctx.extend(dom), t.body)
        return VPi(dom, Closure(ctx.env, reify_type(ctx.size + 1, body_ty)))
    if isinstance(t, App):
        fun_ty = infer(ctx, t.fun)
        if not isinstance(fun_ty, VPi):
            raise NotAFunction(
                f"cannot apply a term of type {_show_type(ctx, fun_ty)}"
            )
        check(ctx, t.arg, fun_ty.domain)
        return instantiate(fun_ty.codomain, ctx.eval(t.arg))
    if isinstance(t, Brec):
        motive_level(ctx, t.motive)
        motive = ctx.eval(t.motive)
        check(ctx, t.case0, v_app(motive, VZERO))
        check(ctx, t.case1, v_app(motive, VONE))
        return VPi(VBOOL, Closure(ctx.env + (motive,), App(Ix(1), Ix(0))))
    raise AssertionError(f"not a core term: {t!r}")


def motive_level(ctx: CheckContext, motive: Term) -> int:
    """Least ``n`` with ``motive : (x : N2) -> U_n``."""
    ty = infer(ctx, motive)
    if isinstance(ty, VPi) and isinstance(ty.domain, VBool):
        cod = instantiate(ty.codomain, fresh(VBOOL, ctx.size))
        if isinstance(cod, VUniv):
            return cod.level
    raise MotiveShape(
        f"brec motive must have type (x : N2) -> U_n, not {_show_type(ctx, ty)}"
    )


def subsumes(size: int, got: Value, expected: Value) -> bool:
    if isinstance(got, VUniv) and isinstance(expected, VUniv):
        return got.level <= expected.level
    return reify_type(size, got) == reify_type(size, expected)


def check(ctx: CheckContext, t: Term, expected: Value) -> None:
    if isinstance(t, Lam) and isinstance(expected, VPi):
        # check the body against the codomain so a body in a smaller universe
        # is accepted, as the abstraction rule allows
        dom = check_type(ctx, t.annotation)
        if not convertible_types(ctx.size, dom, expected.domain):
            raise Mismatch(
                reify_type(ctx.size, expected.domain), reify_type(ctx.size, dom), ctx.names()
            )
        x = fresh(dom, ctx.size)
        check(ctx.extend(dom), t.body, instantiate(expected.codomain, x))
        return
    got = infer(ctx, t)
    if not subsumes(ctx.size, got, expected):
        raise Mismatch(
            reify_type(ctx.size, expected), reify_type(ctx.size, got), ctx.names()
        )


def infer_universe(ctx: CheckContext, a: Term) -> int:
    ty = infer(ctx, a)
    if isinstance(ty, VUniv):
        return ty.level
    raise NotAType(f"expected a type, got a term of type {_show_type(ctx, ty)}")


def check_type(ctx: CheckContext, a: Term) -> Value:
    infer_universe(ctx, a)
    return ctx.eval(a)


@dataclass(frozen=True)
class CheckedDecl:
    name: str
    type_value: Value
    value: Value
    type_normal: NormalTerm
    term_normal: NormalTerm


def check_program(decls, max_universe: int = DEFAULT_MAX_UNIVERSE) -> list:
    """Check elaborated declarations in order.

    ``decls`` yields objects with ``name``, ``type`` and ``body`` core terms
    (and optionally ``location``). Earlier definitions are already inlined by
    elaboration, so each declaration is checked in the empty context.
    """
    ctx = empty_context(max_universe)
    out = []
    for d in decls:
        try:
            ty = check_type(ctx, d.type)
            check(ctx, d.body, ty)
        except TypeCheckError as err:
            err.decl = d.name
            if err.location is None:
                err.location = getattr(d, "location", None)
            raise
        value = ctx.eval(d.body)
        out.append(
            CheckedDecl(d.name, ty, value, reify_type(0, ty), reify(0, ty, value))
        )
    return out


def _show_type(ctx: CheckContext, ty: Value) -> str:
    return pretty(reify_type(ctx.size, ty), ctx.names())
