"""Executable checks of the compilation's correctness properties.

Every check takes an ordered program and returns a ``VerificationReport``.
Cross-semantics comparisons strip preference literals of both polarities
first: compiled programs derive ``-prec`` literals through the asymmetry
rules, which the source program cannot derive.

Programs whose only regular answer set is Lit are a known corner: once a
rule is named its translation can never reach Lit, so such programs have no
preferred answer set.  Checks comparing the two semantics compare consistent
answer sets exactly and record this case in ``notes`` instead of failing.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional

from .compiler import CompiledProgram, compile_program, project
from .core import (
    LIT,
    PREFERENCE,
    AnswerSet,
    Literal,
    OrderedProgram,
    Rule,
    Term,
    answer_set_key,
    applied,
    atom,
    blocked,
    complement,
    defeated,
    desugar_constraints,
    format_answer_set,
    ok,
    prec,
)
from .corpus import transitive_closure
from .parser import format_program, parse_program
from .solver import (
    DEFAULT_MAX_ENUMERATION,
    DEFAULT_MAX_UNDECIDED,
    answer_sets,
    can_precede,
    closure_trace,
    generating_rules,
    grounded_enumerations,
    reduct,
)

PASS, FAIL, SKIP = "pass", "fail", "skip"
LIT_CORNER = "lit-corner: the source program has answer set Lit, the compiled program has none"


@dataclass(frozen=True)
class PreferenceOrder:
    # (s, t) in pairs means prec(s, t): t is preferred over s
    pairs: frozenset = frozenset()

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs, key=str))

    def __len__(self):
        return len(self.pairs)

    def closure(self) -> PreferenceOrder:
        return PreferenceOrder(frozenset(transitive_closure(self.pairs)))


def extract_order(xs) -> PreferenceOrder:
    if xs is LIT:
        raise ValueError("Lit induces no order")
    return PreferenceOrder(frozenset(
        l.atom.args for l in xs if l.atom.kind == PREFERENCE and not l.negated
    ))


def is_strict_partial_order(o: PreferenceOrder) -> bool:
    pairs = o.pairs
    if any(s == t for s, t in pairs):
        return False
    if any((t, s) in pairs for s, t in pairs):
        return False
    return all((a, d) in pairs for a, b in pairs for c, d in pairs if b == c)


def static_order(p: OrderedProgram) -> PreferenceOrder:
    return PreferenceOrder(frozenset(p.preference_facts())).closure()


def strip_preferences(xs: AnswerSet) -> AnswerSet:
    if xs is LIT:
        return LIT
    return frozenset(l for l in xs if l.atom.kind != PREFERENCE)


def is_order_preserving(p, order: PreferenceOrder, xs: AnswerSet,
                        max_rules: int = DEFAULT_MAX_ENUMERATION) -> bool:
    """Does ``xs`` admit a grounded enumeration of its generating rules that respects ``order``?

    ``order`` relates rule names and is transitively closed first.  Checked
    by brute force over all grounded enumerations.
    """
    if xs is LIT:
        return True
    rules = list(p)
    gr = generating_rules(rules, xs)
    less = order.closure().pairs
    outside = [r for r in rules if r not in set(gr)]

    def below(r: Rule, r2: Rule) -> bool:
        return r.name is not None and r2.name is not None and (r.name, r2.name) in less

    for seq in grounded_enumerations(gr, max_rules):
        pos = {r: i for i, r in enumerate(seq)}
        if any(below(ri, rj) and pos[rj] > i for i, ri in enumerate(seq) for rj in seq):
            continue
        good = True
        for i, ri in enumerate(seq):
            heads = {r.head for r in seq[:i]}
            for r2 in outside:
                if below(ri, r2) and all(l in xs for l in r2.pbody) and not defeated(r2, heads):
                    good = False
                    break
            if not good:
                break
        if good:
            return True
    return False


@dataclass(frozen=True)
class VerificationReport:
    check: str
    verdict: str
    counterexample: Optional[dict] = None
    seed: Optional[str] = None
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def to_json(self) -> str:
        return json.dumps({
            "check": self.check,
            "seed": self.seed,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
            "notes": list(self.notes),
        }, sort_keys=True)


class Context:
    """Lazily computed artefacts shared between checks of one program."""

    def __init__(self, program: OrderedProgram, max_undecided: Optional[int] = DEFAULT_MAX_UNDECIDED):
        self.program = program
        self.max_undecided = max_undecided

    @cached_property
    def compiled(self) -> CompiledProgram:
        return compile_program(self.program)

    @cached_property
    def compiled_answers(self) -> list[AnswerSet]:
        return answer_sets(self.compiled.program, self.max_undecided)

    @cached_property
    def consistent_compiled(self) -> list[frozenset]:
        return [y for y in self.compiled_answers if y is not LIT]

    @cached_property
    def preferred(self) -> list[AnswerSet]:
        return sorted({project(y, self.compiled.language) for y in self.compiled_answers}, key=answer_set_key)

    @cached_property
    def regular(self) -> list[AnswerSet]:
        return answer_sets(self.program, self.max_undecided)

    @cached_property
    def base(self) -> OrderedProgram:
        return self.program.without_preference_facts()

    @cached_property
    def base_regular(self) -> list[AnswerSet]:
        return answer_sets(self.base, self.max_undecided)

    @cached_property
    def order(self) -> PreferenceOrder:
        return static_order(self.program)


def _fail(check: str, ctx: Context, clause: str, answer=None, **extra) -> VerificationReport:
    cx = {"program": format_program(ctx.program), "clause": clause}
    if answer is not None:
        cx["answer_set"] = format_answer_set(answer)
    cx.update({k: v if isinstance(v, (list, str)) else str(v) for k, v in extra.items()})
    return VerificationReport(check, FAIL, cx)


def check_theorem1(p: OrderedProgram, ctx: Optional[Context] = None) -> VerificationReport:
    """The order read off a consistent compiled answer set is strict; static orders agree."""
    ctx = ctx or Context(p)
    orders = []
    for y in ctx.consistent_compiled:
        o = extract_order(y)
        if not is_strict_partial_order(o):
            return _fail("theorem1", ctx, "order is not a strict partial order", y)
        orders.append(o)
    if p.is_static and len(set(orders)) > 1:
        return _fail("theorem1", ctx, "static program yields different orders", ctx.consistent_compiled[0])
    return VerificationReport("theorem1", PASS)


def _named_source(ctx: Context) -> dict[Term, Rule]:
    return desugar_constraints(ctx.program).named


def check_theorem2(p: OrderedProgram, ctx: Optional[Context] = None) -> VerificationReport:
    """ok(n) holds for every rule, and exactly one of applied(n), blocked(n)."""
    ctx = ctx or Context(p)
    for y in ctx.consistent_compiled:
        for n in _named_source(ctx):
            if Literal(ok(n)) not in y:
                return _fail("theorem2", ctx, f"item 1: ok({n}) missing", y)
            if (Literal(applied(n)) in y) == (Literal(blocked(n)) in y):
                return _fail("theorem2", ctx, f"item 2: applied/blocked not exclusive for {n}", y)
    return VerificationReport("theorem2", PASS)


def check_theorem2_trace(p: OrderedProgram, ctx: Optional[Context] = None) -> VerificationReport:
    """Stage conditions on the closure of the reduct of the compiled program."""
    ctx = ctx or Context(p)
    source = _named_source(ctx)
    for y in ctx.consistent_compiled:
        trace = closure_trace(reduct(ctx.compiled.program, y))
        for n, r in source.items():
            i = trace.index(Literal(ok(n)))
            ia = trace.index(Literal(applied(n)))
            ib = trace.index(Literal(blocked(n)))
            if i is None:
                if ia is not None or ib is not None:
                    return _fail("theorem2_trace", ctx, f"item 6: {n} decided without ok", y)
                continue
            if not defeated(r, y):
                stages = [trace.index(l) for l in r.pbody]
                if all(s is not None for s in stages):
                    j = max(stages, default=0)
                    if not trace.in_stage(Literal(applied(n)), max(i, j) + 1):
                        return _fail("theorem2_trace", ctx, f"item 3: applied({n}) late", y)
            if not all(l in y for l in r.pbody) and not trace.in_stage(Literal(blocked(n)), i + 1):
                return _fail("theorem2_trace", ctx, f"item 4: blocked({n}) late", y)
            if defeated(r, y) and ib is None:
                return _fail("theorem2_trace", ctx, f"item 5: blocked({n}) never derived", y)
            # item 6 at its strongest instance, the stage just before ok appears
            if (ia is not None and ia <= i) or (ib is not None and ib <= i):
                return _fail("theorem2_trace", ctx, f"item 6: {n} decided before stage {i + 1}", y)
    return VerificationReport("theorem2_trace", PASS)


AB_SCHEMAS = ("a1", "a2", "b1", "b2")


def check_theorem3(p: OrderedProgram, ctx: Optional[Context] = None) -> VerificationReport:
    """If prec(n, n') holds, every a/b rule of n is preceded by some a/b rule of n'
    in every grounded enumeration of the generating rules."""
    ctx = ctx or Context(p)
    cp = ctx.compiled
    ab = {}
    for pv, r in cp.tagged():
        if pv.schema in AB_SCHEMAS:
            ab.setdefault(pv.source[0], []).append(r)
    for y in ctx.consistent_compiled:
        gr = generating_rules(cp.program, y)
        in_gr = set(gr)
        for s, t in extract_order(y):
            if s not in ab or t not in ab:
                continue
            later = [r for r in ab[s] if r in in_gr]
            earlier = [r for r in ab[t] if r in in_gr]
            for rho in later:
                if can_precede(gr, rho, earlier):
                    return _fail("theorem3", ctx, f"{rho} can fire before every a/b rule of {t}", y)
    return VerificationReport("theorem3", PASS)


def _lit_corner(ctx: Context, source_sets: Iterable[AnswerSet], preferred: Iterable[AnswerSet]) -> bool:
    return LIT in set(source_sets) and LIT not in set(preferred) and bool(ctx.program.names)


def check_static_equivalence(p: OrderedProgram, ctx: Optional[Context] = None) -> VerificationReport:
    """Preferred answer sets coincide with the order-preserving answer sets of the unordered program."""
    ctx = ctx or Context(p)
    if not p.is_static:
        return VerificationReport("theorem4", SKIP, notes=("program is not statically ordered",))
    preserving = [x for x in ctx.base_regular if is_order_preserving(ctx.base, ctx.order, x)]
    lhs = {strip_preferences(x) for x in ctx.preferred}
    rhs = {strip_preferences(x) for x in preserving}
    notes = ()
    if _lit_corner(ctx, rhs, lhs):
        rhs.discard(LIT)
        notes = (LIT_CORNER,)
    if lhs != rhs:
        return _fail(
            "theorem4", ctx, "preferred and order-preserving answer sets differ",
            preferred=sorted(map(format_answer_set, lhs)), preserving=sorted(map(format_answer_set, rhs)),
        )
    return VerificationReport("theorem4", PASS, notes=notes)


def check_corollary5(p: OrderedProgram, ctx: Optional[Context] = None) -> VerificationReport:
    """Every preferred answer set of a static program is a regular answer set."""
    ctx = ctx or Context(p)
    if not p.is_static:
        return VerificationReport("corollary5", SKIP, notes=("program is not statically ordered",))
    regular = {strip_preferences(x) for x in ctx.base_regular}
    for x in ctx.preferred:
        if strip_preferences(x) not in regular:
            return _fail("corollary5", ctx, "preferred answer set is not a regular answer set", x)
    return VerificationReport("corollary5", PASS)


def check_theorem6(p: OrderedProgram, ctx: Optional[Context] = None) -> VerificationReport:
    """Without preference information preferred and regular answer sets coincide."""
    ctx = ctx or Context(p)
    if p.has_preferences:
        return VerificationReport("theorem6", SKIP, notes=("program contains preference atoms",))
    lhs, rhs = set(ctx.preferred), set(ctx.regular)
    notes = ()
    if _lit_corner(ctx, rhs, lhs):
        rhs.discard(LIT)
        notes = (LIT_CORNER,)
    if lhs != rhs:
        return _fail(
            "theorem6", ctx, "preferred and regular answer sets differ",
            preferred=sorted(map(format_answer_set, lhs)), regular=sorted(map(format_answer_set, rhs)),
        )
    return VerificationReport("theorem6", PASS, notes=notes)


def check_principle_I(p: OrderedProgram, ctx: Optional[Context] = None) -> VerificationReport:
    """Of two answer sets generated by R + r1 and R + r2 with r1 < r2, the first is not preferred."""
    ctx = ctx or Context(p)
    if not p.is_static:
        return VerificationReport("principle1", SKIP, notes=("program is not statically ordered",))
    preferred = {strip_preferences(x) for x in ctx.preferred}
    gens = [(x, set(generating_rules(ctx.base, x))) for x in ctx.base_regular]
    for x1, g1 in gens:
        for x2, g2 in gens:
            d1, d2 = g1 - g2, g2 - g1
            if len(d1) != 1 or len(d2) != 1:
                continue
            (r1,), (r2,) = d1, d2
            if r1.name is None or r2.name is None or (r1.name, r2.name) not in ctx.order:
                continue
            if strip_preferences(x1) in preferred:
                return _fail("principle1", ctx, f"answer set generated with {r1.name} < {r2.name} is preferred", x1)
    return VerificationReport("principle1", PASS)


def fresh_name(p: OrderedProgram, stem: str = "nx") -> Term:
    taken = {str(n) for n in p.names}
    i = 0
    while f"{stem}{i}" in taken:
        i += 1
    return Term(f"{stem}{i}")


def check_principle_II(p: OrderedProgram, r: Rule, form: str = "dynamic",
                       extended: Optional[PreferenceOrder] = None,
                       ctx: Optional[Context] = None) -> VerificationReport:
    """Adding a rule whose prerequisites fail keeps each preferred answer set preferred.

    ``form="dynamic"``: X stays a preferred answer set of ``p + [r]``.
    ``form="static"``: X together with the preference literals A for ``r``
    is a preferred answer set of the base program plus ``r`` under the
    extended order (which must agree with the old one on old rules).
    """
    name = "principle2_" + form
    ctx = ctx or Context(p)
    if r.name is not None and r.name in set(p.names):
        raise ValueError(f"rule name {r.name} already in use")
    if form not in ("dynamic", "static"):
        raise ValueError("form is 'dynamic' or 'static'")
    if form == "static" and (not p.is_static or r.name is None):
        return VerificationReport(name, SKIP, notes=("needs a static program and a named rule",))
    targets = [x for x in ctx.preferred if x is not LIT and not all(l in x for l in r.pbody)]
    if not targets:
        return VerificationReport(name, PASS, notes=("vacuous: no preferred answer set leaves the rule inapplicable",))
    if form == "dynamic":
        after = set(Context(p + [r], ctx.max_undecided).preferred)
        for x in targets:
            if x not in after:
                return _fail(name, ctx, "preferred answer set lost", x, rule=str(r))
        return VerificationReport(name, PASS)
    extended = (extended or ctx.order).closure()
    old = set(p.names)
    if not is_strict_partial_order(extended) or \
            {(s, t) for s, t in extended.pairs if s in old and t in old} != set(ctx.order.pairs):
        raise ValueError("extended order must be a strict partial order agreeing with the old one")
    facts = [Rule(Literal(prec(s, t))) for s, t in extended]
    augmented = OrderedProgram(ctx.base.rules + (r,) + tuple(facts))
    above = [t for s, t in extended.pairs if s == r.name]
    a = {Literal(prec(r.name, t)) for t in above} | {Literal(prec(t, r.name), True) for t in above}
    # A only covers rules above r; pairs below r add their own prec literals
    exact = not any(t == r.name for _, t in extended.pairs)
    after = Context(augmented, ctx.max_undecided).preferred
    for x in targets:
        want = x | a
        hit = [
            z for z in after
            if z is not LIT and want <= z and strip_preferences(z) == strip_preferences(x)
            and (not exact or z == want)
        ]
        if not hit:
            return _fail(name, ctx, "X with the added preference literals is not preferred", x,
                         rule=str(r), extended_order=format_program(OrderedProgram(facts)))
    return VerificationReport(name, PASS)


def probe(p: OrderedProgram, rng: random.Random,
          preferred: Iterable[AnswerSet] = ()) -> tuple[Rule, PreferenceOrder]:
    """A random fresh named rule and a random consistent extension of the static order.

    The rule's prerequisite is drawn from literals missing in one of
    ``preferred`` when possible, so that principle II is not vacuous.
    """
    lits = sorted({l for r in p for l in r.literals() if l.atom.kind != PREFERENCE}, key=lambda l: l.sort_key)
    if not lits:
        lits = [Literal(atom("a"))]
    lits = lits + [complement(l) for l in lits]
    targets = [x for x in preferred if x is not LIT]
    missing = [l for l in lits if l not in rng.choice(targets)] if targets else []
    pbody = (rng.choice(missing or lits),)
    if rng.random() < 0.5:
        extra = rng.choice(lits)
        pbody, nbody = (pbody + (extra,), ()) if rng.random() < 0.5 else (pbody, (extra,))
    else:
        nbody = ()
    r = Rule(rng.choice(lits), pbody, nbody, fresh_name(p))
    base = static_order(p) if p.is_static else PreferenceOrder()
    pairs = set(base.pairs)
    for s in p.names:
        roll = rng.random()
        cand = (r.name, s) if roll < 0.3 else (s, r.name) if roll < 0.45 else None
        if cand is None:
            continue
        trial = PreferenceOrder(frozenset(pairs | {cand})).closure()
        agrees = {(a, b) for a, b in trial.pairs if r.name not in (a, b)} == base.pairs
        if agrees and is_strict_partial_order(trial):
            pairs = set(trial.pairs)
    return r, PreferenceOrder(frozenset(pairs))


CHECKS: dict[str, Callable[..., VerificationReport]] = {
    "theorem1": check_theorem1,
    "theorem2": check_theorem2,
    "theorem2_trace": check_theorem2_trace,
    "theorem3": check_theorem3,
    "theorem4": check_static_equivalence,
    "corollary5": check_corollary5,
    "theorem6": check_theorem6,
    "principle1": check_principle_I,
}
PROBED = ("principle2_dynamic", "principle2_static")
ALL_CHECKS = tuple(CHECKS) + PROBED


def run_checks(p: OrderedProgram, names: Iterable[str] = ALL_CHECKS, seed: Optional[str] = None,
               max_undecided: Optional[int] = DEFAULT_MAX_UNDECIDED) -> list[VerificationReport]:
    """Run the named checks on ``p``; probed checks draw their rule from ``seed``."""
    ctx = Context(p, max_undecided)
    out = []
    for name in names:
        if name in CHECKS:
            rep = CHECKS[name](p, ctx=ctx)
        elif name in PROBED:
            r, ext = probe(p, random.Random(f"{seed}:{name}"), ctx.preferred)
            form = name.split("_")[1]
            rep = check_principle_II(p, r, form, ext, ctx=ctx)
            if rep.counterexample is not None:
                rep.counterexample.setdefault("rule", str(r))
        else:
            raise KeyError(f"unknown check {name!r}")
        out.append(VerificationReport(rep.check, rep.verdict, rep.counterexample, seed, rep.notes))
    return out


def replay(report: VerificationReport) -> VerificationReport:
    """Re-run a failing report's check on its recorded counterexample program."""
    if report.counterexample is None:
        raise ValueError("nothing to replay")
    cx = report.counterexample
    p = parse_program(cx["program"], unknown_names="ignore")
    if report.check in CHECKS:
        return CHECKS[report.check](p)
    form = report.check.split("_")[1]
    r = parse_program(cx["rule"], unknown_names="ignore").rules[0]
    ext = None
    if "extended_order" in cx:
        facts = parse_program(cx["extended_order"], unknown_names="ignore")
        ext = PreferenceOrder(frozenset(facts.preference_facts()))
    return check_principle_II(p, r, form, ext)
