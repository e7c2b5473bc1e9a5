"""Core term syntax.

Terms use de Bruijn indices, so structural equality of well-scoped terms is
alpha-equivalence.  Binder names are kept on ``Pi``/``Lam`` nodes for display
only and are excluded from comparison and hashing.

The equality primitives (``Eq``, ``Refl``, ``EqRec``), the coercion ``Cast``
and the type-equality decider ``J`` are dedicated node forms rather than
applied constants: their reduction rules match saturated forms, so dedicated
nodes make rule firing unambiguous.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterator, Sequence


class ScopeError(Exception):
    """Internal invariant violation: an index adjustment went negative."""


@dataclass(frozen=True)
class Sort:
    tag: str  # "Prop" | "Type" | "Kind"

    def __str__(self) -> str:
        return self.tag


PROP = Sort("Prop")
TYPE = Sort("Type")
KIND = Sort("Kind")

# Display order only; there is no cumulativity between sorts.
SORT_LADDER = (PROP, TYPE, KIND)


@dataclass(frozen=True)
class Term:
    def __str__(self) -> str:
        return pretty(self)


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class SortT(Term):
    sort: Sort


@dataclass(frozen=True)
class Pi(Term):
    domain: Term
    codomain: Term  # binds one variable
    name: str = field(default="_", compare=False)


@dataclass(frozen=True)
class Lam(Term):
    domain: Term
    body: Term  # binds one variable
    name: str = field(default="_", compare=False)


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Global(Term):
    name: str


@dataclass(frozen=True)
class Eq(Term):
    ty: Term
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Refl(Term):
    ty: Term
    val: Term


@dataclass(frozen=True)
class EqRec(Term):
    ty: Term
    motive: Term
    lhs: Term
    rhs: Term
    base: Term
    proof: Term


@dataclass(frozen=True)
class Cast(Term):
    src: Term
    dst: Term
    proof: Term
    val: Term


@dataclass(frozen=True)
class J(Term):
    src: Term
    dst: Term
    val: Term


def unwind_apps(t: Term) -> tuple[Term, list[Term]]:
    """Split an application spine into (head, arguments outermost-last)."""
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def build_apps(head: Term, args: Sequence[Term]) -> Term:
    for a in args:
        head = App(head, a)
    return head


def shift(t: Term, cutoff: int = 0, amount: int = 1) -> Term:
    """Adjust free indices >= cutoff by ``amount``; bound structure unchanged."""
    match t:
        case Var(i):
            if i < cutoff:
                return t
            if i + amount < 0:
                raise ScopeError(f"shift would send index {i} below zero")
            return Var(i + amount)
        case SortT() | Global():
            return t
        case Pi(d, c, name=n):
            return Pi(shift(d, cutoff, amount), shift(c, cutoff + 1, amount), name=n)
        case Lam(d, b, name=n):
            return Lam(shift(d, cutoff, amount), shift(b, cutoff + 1, amount), name=n)
        case App(f, a):
            return App(shift(f, cutoff, amount), shift(a, cutoff, amount))
        case Eq(ty, l, r):
            return Eq(shift(ty, cutoff, amount), shift(l, cutoff, amount), shift(r, cutoff, amount))
        case Refl(ty, v):
            return Refl(shift(ty, cutoff, amount), shift(v, cutoff, amount))
        case EqRec(ty, p, l, r, b, e):
            return EqRec(*(shift(x, cutoff, amount) for x in (ty, p, l, r, b, e)))
        case Cast(s, d, e, v):
            return Cast(*(shift(x, cutoff, amount) for x in (s, d, e, v)))
        case J(s, d, v):
            return J(*(shift(x, cutoff, amount) for x in (s, d, v)))
    raise ScopeError(f"shift: unknown node {t!r}")


def subst(t: Term, target: int, value: Term) -> Term:
    """Replace ``Var(target)`` by ``value``; indices above ``target`` drop by one."""
    match t:
        case Var(i):
            if i == target:
                return value
            return Var(i - 1) if i > target else t
        case SortT() | Global():
            return t
        case Pi(d, c, name=n):
            return Pi(subst(d, target, value),
                      subst(c, target + 1, shift(value, 0, 1)), name=n)
        case Lam(d, b, name=n):
            return Lam(subst(d, target, value),
                       subst(b, target + 1, shift(value, 0, 1)), name=n)
        case App(f, a):
            return App(subst(f, target, value), subst(a, target, value))
        case Eq(ty, l, r):
            return Eq(subst(ty, target, value), subst(l, target, value), subst(r, target, value))
        case Refl(ty, v):
            return Refl(subst(ty, target, value), subst(v, target, value))
        case EqRec(ty, p, l, r, b, e):
            return EqRec(*(subst(x, target, value) for x in (ty, p, l, r, b, e)))
        case Cast(s, d, e, v):
            return Cast(*(subst(x, target, value) for x in (s, d, e, v)))
        case J(s, d, v):
            return J(*(subst(x, target, value) for x in (s, d, v)))
    raise ScopeError(f"subst: unknown node {t!r}")


def alpha_eq(t1: Term, t2: Term) -> bool:
    """Alpha-equivalence.  Literal structural equality under de Bruijn
    representation; display names are excluded from dataclass comparison."""
    return t1 == t2


def subterms(t: Term) -> Iterator[Term]:
    """All subterm children of ``t`` (not recursive)."""
    match t:
        case Var() | SortT() | Global():
            return
        case Pi(d, c) | Lam(d, c):
            yield d
            yield c
        case App(f, a):
            yield f
            yield a
        case Eq(ty, l, r):
            yield from (ty, l, r)
        case Refl(ty, v):
            yield from (ty, v)
        case EqRec(ty, p, l, r, b, e):
            yield from (ty, p, l, r, b, e)
        case Cast(s, d, e, v):
            yield from (s, d, e, v)
        case J(s, d, v):
            yield from (s, d, v)


def collect_globals(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Global):
            out.add(cur.name)
        stack.extend(subterms(cur))
    return out


def uses_var(t: Term, index: int) -> bool:
    """Does ``Var(index)`` occur free in ``t``?"""
    match t:
        case Var(i):
            return i == index
        case Pi(d, c) | Lam(d, c):
            return uses_var(d, index) or uses_var(c, index + 1)
        case _:
            return any(uses_var(s, index) for s in subterms(t))


_TAGS = {
    "Var": b"V", "SortT": b"S", "Pi": b"P", "Lam": b"L", "App": b"A",
    "Global": b"G", "Eq": b"E", "Refl": b"R", "EqRec": b"Q", "Cast": b"C",
    "J": b"J",
}


def _serialize(t: Term, out: list[bytes]) -> None:
    out.append(_TAGS[type(t).__name__])
    match t:
        case Var(i):
            out.append(str(i).encode())
        case SortT(s):
            out.append(s.tag.encode())
        case Global(n):
            out.append(str(len(n)).encode())
            out.append(n.encode())
        case _:
            for sub in subterms(t):
                _serialize(sub, out)
    out.append(b";")


def canonical_key(t: Term) -> str:
    """Fixed-width digest equal for alpha-equal terms.

    Collisions across distinct terms are astronomically unlikely but callers
    that act on key equality (cycle detection) must confirm with alpha_eq.
    """
    parts: list[bytes] = []
    _serialize(t, parts)
    return hashlib.sha256(b"".join(parts)).hexdigest()


# --- pretty printing -------------------------------------------------------
#
# Precedence positions, loosest to tightest.  A construct parenthesizes
# itself when printed at a position tighter than its own level.
_TERM, _ARROW, _APP, _ATOM = 0, 1, 2, 3


def _fresh_name(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def pretty(t: Term, names: Sequence[str] = (), avoid: Sequence[str] = ()) -> str:
    """Render ``t`` in the surface syntax; ``parse_term(pretty(t))`` is
    alpha-equal to ``t``.

    ``names`` supplies display names for free variables (innermost last).
    Binder names that would shadow an enclosing name or a referenced global
    are freshened with a numeric suffix.
    """
    taken = set(avoid) | collect_globals(t) | set(names)
    stack = list(names)

    def var_name(i: int) -> str:
        if i < len(stack):
            return stack[-(i + 1)]
        return f"_x{i - len(stack)}"  # uncovered free variable; see `names` pre

    def go(t: Term, pos: int) -> str:
        match t:
            case Var(i):
                return var_name(i)
            case SortT(s):
                return s.tag
            case Global(n):
                return n
            case Pi(d, c, name=n):
                if not uses_var(c, 0):
                    dom = go(d, _APP)
                    stack.append("_")  # codomain sits under the unused binder
                    try:
                        cod = go(c, _ARROW)
                    finally:
                        stack.pop()
                    s = f"{dom} -> {cod}"
                    return f"({s})" if pos > _ARROW else s
                return binder("forall", n, d, c, pos)
            case Lam(d, b, name=n):
                return binder("fun", n, d, b, pos)
            case App(f, a):
                s = f"{go(f, _APP)} {go(a, _ATOM)}"
                return f"({s})" if pos > _APP else s
            case Eq(ty, l, r):
                return prim("Eq", (ty, l, r), pos)
            case Refl(ty, v):
                return prim("refl", (ty, v), pos)
            case EqRec(ty, p, l, r, b, e):
                return prim("Eq_rec", (ty, p, l, r, b, e), pos)
            case Cast(src, dst, e, v):
                return prim("cast", (src, dst, e, v), pos)
            case J(src, dst, v):
                return prim("J", (src, dst, v), pos)
        raise ScopeError(f"pretty: unknown node {t!r}")

    def binder(kw: str, name: str, d: Term, body: Term, pos: int) -> str:
        shown = _fresh_name(name or "_", taken)
        dom = go(d, _TERM)
        taken.add(shown)
        stack.append(shown)
        try:
            s = f"{kw} ({shown} : {dom}), {go(body, _TERM)}"
        finally:
            stack.pop()
            taken.discard(shown)
        return f"({s})" if pos > _TERM else s

    def prim(kw: str, args: tuple[Term, ...], pos: int) -> str:
        s = " ".join([kw, *(go(a, _ATOM) for a in args)])
        return f"({s})" if pos > _APP else s

    return go(t, _TERM)
