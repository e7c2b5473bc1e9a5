"""Bidirectional type checking for the three-sort system.

Sort axioms: Prop : Type and Type : Kind.  Pi-formation rules:

    (Prop, Prop, Prop)   (Type, Prop, Prop)   (Prop, Type, Type)   (Type, Type, Type)

(Type, Prop, Prop) is the impredicative rule: quantifying over all
propositions still lands in Prop, which is what lets `forall (A : Prop), A`
inhabit Prop.  There is no cumulativity between sorts and no rule forms a
Pi-type in Kind.

The equality and coercion primitives have bespoke rules instead of
first-class signatures (their natural types quantify over Type, which the
ladder above cannot express):

    Eq T a b        : Prop       where T : Type and a, b : T
    refl T a        : Eq T a a
    Eq_rec T P a b x e : P b     where P : T -> Type, x : P a, e : Eq T a b
    cast A B e x    : B          where A, B : Prop, e : Eq Prop A B, x : A
    J A B x         : B          where A, B : Prop (only with j_rule on)

Type checking can itself demand reduction (exposing a Pi, settling a
conversion), and the irrelevant eliminators make that potentially divergent,
so every entry point threads the same fuel budget as the reducer and fails
with a distinguishable FuelExhausted instead of hanging.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import convert as _convert
from . import reduce as _reduce
from .env import Context, EnvEntry, GlobalEnv, ctx_extend, ctx_lookup
from .parser import (
    Assume, Axiom, Def, PragmaCheck, PragmaReduce, Program,
)
from .rules import DEFAULT_RULES, Fuel, RuleSet
from .syntax import (
    KIND, PROP, TYPE,
    App, Cast, Eq, EqRec, Global, J, Lam, Pi, Refl, Sort, SortT, Term, Var,
    pretty, subst,
)


class TypeCheckError(Exception):
    pass


class JDisabledError(TypeCheckError):
    pass


@dataclass(frozen=True)
class PtsRules:
    axioms: tuple[tuple[Sort, Sort], ...] = ((PROP, TYPE), (TYPE, KIND))
    pi_rules: tuple[tuple[Sort, Sort, Sort], ...] = (
        (PROP, PROP, PROP),
        (TYPE, PROP, PROP),  # impredicativity
        (PROP, TYPE, TYPE),
        (TYPE, TYPE, TYPE),
    )

    def sort_of(self, s: Sort) -> Sort | None:
        for lo, hi in self.axioms:
            if lo == s:
                return hi
        return None

    def pi_rule(self, s1: Sort, s2: Sort) -> Sort | None:
        for a, b, c in self.pi_rules:
            if a == s1 and b == s2:
                return c
        return None


STANDARD_PTS = PtsRules()


def _sort_of_type(env: GlobalEnv, ctx: Context, ty: Term, rules: RuleSet,
                  budget: Fuel, what: str) -> Sort:
    """The sort classifying ``ty``; fails if ``ty`` is not a type."""
    tty = infer(env, ctx, ty, rules, budget)
    w = _reduce.whnf_term(env, ctx, tty, rules, budget)
    if isinstance(w, SortT):
        return w.sort
    raise TypeCheckError(f"{what} is not a type: {pretty(ty)} : {pretty(w)}")


def _expect_sort(env: GlobalEnv, ctx: Context, term: Term, expected: Sort,
                 rules: RuleSet, budget: Fuel, what: str) -> None:
    ty = infer(env, ctx, term, rules, budget)
    w = _reduce.whnf_term(env, ctx, ty, rules, budget)
    if w != SortT(expected):
        raise TypeCheckError(
            f"{what} must have sort {expected}, but {pretty(term)} : {pretty(w)}")


def infer(env: GlobalEnv, ctx: Context, t: Term, rules: RuleSet = DEFAULT_RULES,
          budget: Fuel | None = None, pts: PtsRules = STANDARD_PTS) -> Term:
    if budget is None:
        budget = rules.new_budget()
    match t:
        case Var(i):
            if i < 0 or i >= len(ctx):
                raise TypeCheckError(f"unbound variable index {i}")
            return ctx_lookup(ctx, i)
        case SortT(s):
            above = pts.sort_of(s)
            if above is None:
                raise TypeCheckError(f"sort {s} has no type")
            return SortT(above)
        case Global(name):
            entry = env.lookup(name)
            if entry is None:
                raise TypeCheckError(f"unbound global {name!r}")
            return entry.type_
        case Pi(dom, cod):
            s1 = _sort_of_type(env, ctx, dom, rules, budget, "Pi domain")
            s2 = _sort_of_type(env, ctx_extend(ctx, dom), cod, rules, budget,
                               "Pi codomain")
            s3 = pts.pi_rule(s1, s2)
            if s3 is None:
                raise TypeCheckError(f"no Pi-formation rule for ({s1}, {s2})")
            return SortT(s3)
        case Lam(dom, body, name=n):
            # The domain must be a type; the synthesized Pi is not re-checked
            # against the formation table so that type-level functions such
            # as Eq_rec motives (T -> Type) stay expressible.
            _sort_of_type(env, ctx, dom, rules, budget, "lambda domain")
            body_ty = infer(env, ctx_extend(ctx, dom), body, rules, budget, pts)
            return Pi(dom, body_ty, name=n)
        case App(f, a):
            fty = infer(env, ctx, f, rules, budget, pts)
            w = _reduce.whnf_term(env, ctx, fty, rules, budget)
            if not isinstance(w, Pi):
                raise TypeCheckError(
                    f"applied term is not a function: {pretty(f)} : {pretty(w)}")
            check(env, ctx, a, w.domain, rules, budget, pts)
            return subst(w.codomain, 0, a)
        case Eq(ty, lhs, rhs):
            _expect_sort(env, ctx, ty, TYPE, rules, budget, "Eq carrier")
            check(env, ctx, lhs, ty, rules, budget, pts)
            check(env, ctx, rhs, ty, rules, budget, pts)
            return SortT(PROP)
        case Refl(ty, val):
            _expect_sort(env, ctx, ty, TYPE, rules, budget, "refl carrier")
            check(env, ctx, val, ty, rules, budget, pts)
            return Eq(ty, val, val)
        case EqRec(ty, motive, lhs, rhs, base, proof):
            _expect_sort(env, ctx, ty, TYPE, rules, budget, "Eq_rec carrier")
            mty = _reduce.whnf_term(
                env, ctx, infer(env, ctx, motive, rules, budget, pts),
                rules, budget)
            if not isinstance(mty, Pi):
                raise TypeCheckError(
                    f"Eq_rec motive is not a function: {pretty(mty)}")
            if not _convert.convert(env, ctx, mty.domain, ty,
                                    rules=rules, budget=budget):
                raise TypeCheckError(
                    f"Eq_rec motive domain {pretty(mty.domain)} does not match "
                    f"carrier {pretty(ty)}")
            cod = _reduce.whnf_term(env, ctx_extend(ctx, mty.domain),
                                    mty.codomain, rules, budget)
            if cod != SortT(TYPE):
                raise TypeCheckError(
                    f"Eq_rec motive must land in Type, found {pretty(cod)}")
            check(env, ctx, lhs, ty, rules, budget, pts)
            check(env, ctx, rhs, ty, rules, budget, pts)
            check(env, ctx, base, App(motive, lhs), rules, budget, pts)
            check(env, ctx, proof, Eq(ty, lhs, rhs), rules, budget, pts)
            return App(motive, rhs)
        case Cast(src, dst, proof, val):
            _expect_sort(env, ctx, src, PROP, rules, budget, "cast source")
            _expect_sort(env, ctx, dst, PROP, rules, budget, "cast target")
            check(env, ctx, proof, Eq(SortT(PROP), src, dst), rules, budget, pts)
            check(env, ctx, val, src, rules, budget, pts)
            return dst
        case J(src, dst, val):
            if not rules.j_rule:
                raise JDisabledError(
                    "J is not part of the active rule set (enable j_rule)")
            _expect_sort(env, ctx, src, PROP, rules, budget, "J source")
            _expect_sort(env, ctx, dst, PROP, rules, budget, "J target")
            check(env, ctx, val, src, rules, budget, pts)
            return dst
    raise TypeCheckError(f"cannot infer a type for {t!r}")


def check(env: GlobalEnv, ctx: Context, t: Term, expected: Term,
          rules: RuleSet = DEFAULT_RULES, budget: Fuel | None = None,
          pts: PtsRules = STANDARD_PTS) -> None:
    if budget is None:
        budget = rules.new_budget()
    actual = infer(env, ctx, t, rules, budget, pts)
    if not _convert.convert(env, ctx, actual, expected, rules=rules, budget=budget):
        raise TypeCheckError(
            f"type mismatch: expected {pretty(expected)}, inferred {pretty(actual)}"
            f" for {pretty(t)}")


@dataclass(frozen=True)
class PragmaResult:
    kind: str  # "check" | "reduce"
    term: Term
    type_: Term | None = None
    trace: _reduce.Trace | None = None


def elaborate(program: Program, rules: RuleSet = DEFAULT_RULES, *,
              reduce_strategy: str = "nf", run_reduce: bool = True,
              pts: PtsRules = STANDARD_PTS) -> tuple[GlobalEnv, list[PragmaResult]]:
    """Process declarations in order against a growing global environment.

    Each declaration gets a fresh budget of ``rules.fuel`` steps.  The first
    failing declaration aborts with its error, prefixed by its index.
    """
    env = GlobalEnv()
    results: list[PragmaResult] = []
    for index, decl in enumerate(program.declarations):
        budget = rules.new_budget()
        try:
            match decl:
                case Def(name, stated, body):
                    if stated is not None:
                        _sort_of_type(env, (), stated, rules, budget,
                                      f"stated type of {name}")
                        check(env, (), body, stated, rules, budget, pts)
                        ty = stated
                    else:
                        ty = infer(env, (), body, rules, budget, pts)
                    env.add(EnvEntry(name, ty, body, "def"))
                case Axiom(name, ty) | Assume(name, ty):
                    _sort_of_type(env, (), ty, rules, budget,
                                  f"type of {name}")
                    kind = "axiom" if isinstance(decl, Axiom) else "assume"
                    env.add(EnvEntry(name, ty, None, kind))
                case PragmaCheck(term):
                    ty = infer(env, (), term, rules, budget, pts)
                    results.append(PragmaResult("check", term, type_=ty))
                case PragmaReduce(term, strategy):
                    infer(env, (), term, rules, budget, pts)
                    if run_reduce:
                        trace = _reduce.reduce_with(
                            env, (), term, rules,
                            strategy or reduce_strategy, rules.new_budget())
                        results.append(PragmaResult("reduce", term, trace=trace))
        except TypeCheckError as exc:
            name = getattr(decl, "name", type(decl).__name__)
            raise type(exc)(f"declaration {index} ({name}): {exc}") from exc
    return env, results


def _has_free_var(t: Term, depth: int = 0) -> bool:
    match t:
        case Var(i):
            return i >= depth
        case Pi(d, c) | Lam(d, c):
            return _has_free_var(d, depth) or _has_free_var(c, depth + 1)
        case _:
            from .syntax import subterms
            return any(_has_free_var(s, depth) for s in subterms(t))


def closed_over_axioms(env: GlobalEnv, t: Term) -> bool:
    """True iff ``t`` has no free variables and never reaches an assumption:
    every global it references, transitively through types and definition
    bodies, is a definition or an axiom."""
    from .syntax import collect_globals

    if _has_free_var(t):
        return False
    seen: set[str] = set()
    pending = list(collect_globals(t))
    while pending:
        name = pending.pop()
        if name in seen:
            continue
        seen.add(name)
        entry = env.lookup(name)
        if entry is None or entry.kind == "assume":
            return False
        if entry.body is not None:
            pending.extend(collect_globals(entry.body))
        pending.extend(collect_globals(entry.type_))
    return True
