"""Reader and printer for the ``.olp`` surface syntax.

    program   ::= statement*
    statement ::= [name ":"] clause "." | "set" ident "=" "{" ident ("," ident)* "}" "."
    clause    ::= literal | literal ":-" body | ":-" body
    body      ::= elem ("," elem)*
    elem      ::= literal | "not" literal | "not" "(" literal ")"
    literal   ::= ["-"] atom
    atom      ::= ident ["(" term ("," term)* ")"] | term "<" term | term "=" term

``n1 < n2`` is sugar for ``prec(n1, n2)``; ``set m = {a, b}.`` stands for the
facts ``in(a, m).`` and ``in(b, m).``.  ``%`` starts a comment.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import Optional

from .core import (
    CONTROL,
    CONTROL_ATOMS,
    EQUALITY,
    FALSE_ATOM_NAME,
    PREFERENCE,
    PRINTED_CONTROL,
    REGULAR,
    Atom,
    Literal,
    NameClash,
    OlpError,
    OrderedProgram,
    Rule,
    Term,
    UnknownName,
)


class ParseError(OlpError):
    def __init__(self, line: int, column: int, message: str, expected: Optional[list[str]] = None):
        self.line = line
        self.column = column
        self.message = message
        self.expected = list(expected or [])
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += f" (expected {', '.join(self.expected)})"
        super().__init__(text)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<if>:-)
  | (?P<colon>:)
  | (?P<dot>\.)
  | (?P<comma>,)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<lbrace>\{)
  | (?P<rbrace>\})
  | (?P<lt><)
  | (?P<eq>=)
  | (?P<minus>-)
  | (?P<ident>[a-z][A-Za-z0-9_']*|[0-9]+)
  | (?P<special>_[a-z][A-Za-z0-9_]*)
  | (?P<var>[A-Z][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)

_DESCRIBE = {
    "if": "':-'", "colon": "':'", "dot": "'.'", "comma": "','", "lpar": "'('",
    "rpar": "')'", "lbrace": "'{'", "rbrace": "'}'", "lt": "'<'", "eq": "'='",
    "minus": "'-'", "ident": "identifier", "special": "control atom", "var": "variable",
    "eof": "end of input",
}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(line, pos - line_start + 1, f"unexpected character {src[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass
class _Parser:
    tokens: list[Token]
    allow_control: bool = False
    pos: int = 0
    set_names: dict[Term, None] = field(default_factory=dict)

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, *expected: str) -> ParseError:
        t = self.tok
        return ParseError(t.line, t.column, message, [_DESCRIBE.get(e, e) for e in expected])

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            found = t.text or "end of input"
            raise self.error(f"unexpected {found!r}", repr(text) if text else kind)
        self.pos += 1
        return t

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.pos += 1
            return t
        return None

    def program(self) -> list[Rule]:
        rules = []
        while self.tok.kind != "eof":
            rules.extend(self.statement())
        return rules

    def statement(self) -> list[Rule]:
        if (
            self.tok.kind == "ident" and self.tok.text == "set"
            and self.tokens[self.pos + 1].kind == "ident"
            and self.tokens[self.pos + 2].kind == "eq"
        ):
            return self.set_statement()
        start = self.tok
        name = self.rule_name()
        if self.accept("if"):
            head = None
            pbody, nbody = self.body()
        else:
            head = self.literal()
            pbody, nbody = self.body() if self.accept("if") else ((), ())
        if head is not None and head.atom.kind == EQUALITY:
            raise ParseError(start.line, start.column, "equality atoms may only occur in rule bodies")
        self.expect("dot")
        return [Rule(head, pbody, nbody, name)]

    def rule_name(self) -> Optional[Term]:
        if self.tok.kind != "ident" or self.tok.text == "not":
            return None
        saved = self.pos
        try:
            name = self.term()
        except ParseError:
            self.pos = saved
            return None
        if self.accept("colon"):
            return name
        self.pos = saved
        return None

    def set_statement(self) -> list[Rule]:
        self.expect("ident", "set")
        m = Term(self.expect("ident").text)
        self.set_names.setdefault(m)
        self.expect("eq")
        self.expect("lbrace")
        members = [self.term()]
        while self.accept("comma"):
            members.append(self.term())
        self.expect("rbrace")
        self.expect("dot")
        return [Rule(Literal(Atom(CONTROL, "in", (n, m)))) for n in members]

    def body(self) -> tuple[tuple[Literal, ...], tuple[Literal, ...]]:
        pbody, nbody = [], []
        while True:
            if self.accept("ident", "not"):
                nbody.append(self.parenthesized_literal())
            else:
                pbody.append(self.parenthesized_literal())
            if not self.accept("comma"):
                return tuple(pbody), tuple(nbody)

    def parenthesized_literal(self) -> Literal:
        if self.accept("lpar"):
            l = self.literal()
            self.expect("rpar")
            return l
        return self.literal()

    def literal(self) -> Literal:
        negated = self.accept("minus") is not None
        start = self.tok
        if start.kind not in ("ident", "var", "special"):
            raise self.error(f"unexpected {start.text or 'end of input'!r}", "ident", "var", "minus")
        if start.kind == "special":
            a = self.special_atom()
        else:
            t = self.term()
            if self.accept("lt"):
                a = Atom(PREFERENCE, "prec", (t, self.term()))
            elif self.accept("eq"):
                if negated:
                    raise ParseError(start.line, start.column, "equality atoms cannot be strongly negated")
                a = Atom(EQUALITY, "=", (t, self.term()))
            elif t.is_variable:
                raise ParseError(start.line, start.column, "a variable is not an atom", ["'<'", "'='"])
            elif t.functor == "prec":
                if len(t.args) != 2:
                    raise ParseError(start.line, start.column, "prec/2 takes exactly two names")
                a = Atom(PREFERENCE, "prec", t.args)
            elif t.functor == "in" and len(t.args) == 2:
                a = Atom(CONTROL, "in", t.args)
            else:
                a = Atom(REGULAR, t.functor, t.args)
        return Literal(a, negated)

    def special_atom(self) -> Atom:
        t = self.tok
        functor = t.text
        self.pos += 1
        args = self.arguments()
        if functor == FALSE_ATOM_NAME and not args:
            return Atom(REGULAR, functor)
        if functor not in PRINTED_CONTROL or not self.allow_control:
            raise ParseError(t.line, t.column, f"control atom {functor} not allowed here")
        name = PRINTED_CONTROL[functor]
        if CONTROL_ATOMS[name][0] != len(args):
            raise ParseError(t.line, t.column, f"{functor} takes {CONTROL_ATOMS[name][0]} argument(s)")
        return Atom(CONTROL, name, args)

    def arguments(self) -> tuple[Term, ...]:
        if not self.accept("lpar"):
            return ()
        args = [self.term()]
        while self.accept("comma"):
            args.append(self.term())
        self.expect("rpar")
        return tuple(args)

    def term(self) -> Term:
        t = self.tok
        if t.kind == "var":
            self.pos += 1
            return Term(t.text)
        if t.kind != "ident":
            raise self.error(f"unexpected {t.text or 'end of input'!r}", "ident", "var")
        self.pos += 1
        return Term(t.text, self.arguments())


def _matches(ref: Term, declared: set[Term]) -> bool:
    if ref.is_ground:
        return ref in declared
    # schematic reference: any declared name with the same functor/arity
    return any(d.functor == ref.functor and len(d.args) == len(ref.args) for d in declared)


def check_names(program: OrderedProgram, set_names, unknown_names: Optional[str] = None) -> None:
    rule_names = {r.name for r in program if r.name is not None}
    set_names = set(set_names) | {
        r.head.atom.args[1] for r in program
        if r.head is not None and r.head.atom.kind == CONTROL and r.head.atom.name == "in"
    }
    clash = rule_names & set_names
    if clash:
        raise NameClash(f"names used both for rules and sets: {sorted(map(str, clash))}")
    mode = unknown_names or ("error" if program.is_static else "warn")
    for r in program:
        for l in r.literals():
            a = l.atom
            if a.kind != PREFERENCE:
                continue
            s, t = a.args
            kinds = {
                "rule" if _matches(x, rule_names) else "set" if _matches(x, set_names) else None
                for x in (s, t)
            }
            if kinds == {"rule", "set"}:
                raise NameClash(f"{a} relates a rule name with a set name")
            if None in kinds and mode != "ignore":
                msg = f"preference atom {a} mentions an undeclared name"
                if mode == "error":
                    raise UnknownName(msg)
                warnings.warn(msg, stacklevel=3)


def parse_program(src: str, *, allow_control: bool = False, unknown_names: Optional[str] = None) -> OrderedProgram:
    """Parse ``.olp`` text.

    ``unknown_names`` is one of ``"error"``, ``"warn"`` or ``"ignore"``; the
    default is an error for statically ordered programs and a warning
    otherwise.  ``allow_control`` admits compiled control atoms (``_ap`` and
    friends) so that compiled programs can be read back.
    """
    p = _Parser(tokenize(src), allow_control=allow_control)
    rules = p.program()
    program = OrderedProgram(rules)
    check_names(program, p.set_names, unknown_names)
    return program


def format_program(p) -> str:
    rules = list(p)
    if not rules:
        return ""
    return "\n".join(map(str, rules)) + "\n"
