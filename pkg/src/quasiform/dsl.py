"""Script language for declaring forms and queueing decision commands.

A script is a field declaration, form definitions, and commands:

    field F2(a, b, c);
    form q1 = <1, a, b, a*b, c>;
    form q2 = <1, a, c, a*c, b>;
    invariants q1;
    compare q1 q2;

Coefficient expressions use +, *, /, ^, parentheses, the constants 0 and 1,
and declared variables; integer literals appear only as exponents.  Lines
starting with # (to end of line) are comments.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DslSyntaxError,
    UndeclaredVariable,
    ZeroCoefficient,
)
from .fieldtower import DEFAULT_DEPTH_LIMIT, FieldTower, TowerElem
from .forms import QuasilinearForm

COMMAND_ARITY = {
    "invariants": 1,
    "compare": 2,
    "ruling": 1,
    "regular": 1,
    "splitting": 1,
    "corpus": 0,
}

_KEYWORDS = frozenset(COMMAND_ARITY) | {"field", "form"}
_PUNCT = frozenset("()<>,;=+*/^")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", or the punctuation character itself
    value: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(Token(ch, ch, line, start_col))
            i += 1
            col += 1
            continue
        raise DslSyntaxError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(Token("eof", "", line, col))
    return tokens


@dataclass(frozen=True)
class FormDef:
    name: str
    exprs: Tuple[str, ...]
    form: QuasilinearForm


@dataclass(frozen=True)
class Command:
    name: str
    args: Tuple[str, ...]
    line: int
    column: int


@dataclass(frozen=True)
class Script:
    field_vars: Tuple[str, ...]
    field: FieldTower
    forms: Tuple[FormDef, ...]
    commands: Tuple[Command, ...]

    def form_by_name(self, name: str) -> FormDef:
        for fd in self.forms:
            if fd.name == name:
                return fd
        raise KeyError(name)

    def render(self) -> str:
        """Canonical text whose parse is equivalent to this script."""
        lines = []
        if self.field_vars:
            lines.append("field F2(" + ", ".join(self.field_vars) + ");")
        for fd in self.forms:
            lines.append(f"form {fd.name} = <" + ", ".join(fd.exprs) + ">;")
        for cmd in self.commands:
            lines.append(" ".join((cmd.name,) + cmd.args) + ";")
        return "\n".join(lines) + "\n"


class _Parser:
    """Recursive descent over the token list; evaluates coefficient
    expressions directly to tower elements."""

    def __init__(self, tokens: List[Token],
                 depth_limit: int = DEFAULT_DEPTH_LIMIT):
        self.tokens = tokens
        self.pos = 0
        self.depth_limit = depth_limit
        self.field: Optional[FieldTower] = None
        self.field_vars: Tuple[str, ...] = ()
        self.forms: List[FormDef] = []
        self.form_names: Dict[str, int] = {}
        self.commands: List[Command] = []

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise DslSyntaxError(
                f"expected {what}, found {tok.value or 'end of input'!r}",
                tok.line, tok.column)
        return self.next()

    def fail(self, tok: Token, message: str):
        raise DslSyntaxError(message, tok.line, tok.column)

    def current_field(self) -> FieldTower:
        if self.field is None:
            self.field = FieldTower.rational((), depth_limit=self.depth_limit)
        return self.field

    def parse_script(self) -> Script:
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.kind != "ident":
                self.fail(tok, f"expected a statement, found {tok.value!r}")
            if tok.value == "field":
                self.parse_field()
            elif tok.value == "form":
                self.parse_form()
            elif tok.value in COMMAND_ARITY:
                self.parse_command()
            else:
                self.fail(tok, f"unknown statement {tok.value!r}")
        return Script(field_vars=self.field_vars,
                      field=self.current_field(),
                      forms=tuple(self.forms),
                      commands=tuple(self.commands))

    def parse_field(self) -> None:
        kw = self.next()
        if self.field is not None:
            self.fail(kw, "duplicate field declaration")
        if self.forms:
            self.fail(kw, "field must be declared before any form")
        name = self.expect("ident", "'F2'")
        if name.value != "F2":
            self.fail(name, f"the base field is F2, found {name.value!r}")
        self.expect("(", "'('")
        names: List[str] = []
        if self.peek().kind != ")":
            while True:
                v = self.expect("ident", "a variable name")
                if v.value in _KEYWORDS or v.value == "F2":
                    self.fail(v, f"{v.value!r} cannot name a variable")
                if v.value in names:
                    self.fail(v, f"duplicate variable {v.value!r}")
                names.append(v.value)
                if self.peek().kind != ",":
                    break
                self.next()
        self.expect(")", "')' or ','")
        self.expect(";", "';'")
        self.field_vars = tuple(names)
        self.field = FieldTower.rational(self.field_vars,
                                         depth_limit=self.depth_limit)

    def parse_form(self) -> None:
        self.next()
        name = self.expect("ident", "a form name")
        if name.value in _KEYWORDS or name.value == "F2":
            self.fail(name, f"{name.value!r} cannot name a form")
        if name.value in self.form_names:
            self.fail(name, f"form {name.value!r} is already defined")
        self.expect("=", "'='")
        self.expect("<", "'<'")
        coeffs: List[TowerElem] = []
        exprs: List[str] = []
        while True:
            start = self.pos
            value = self.parse_expr()
            exprs.append("".join(
                t.value for t in self.tokens[start:self.pos]))
            if value.is_zero:
                raise ZeroCoefficient(
                    f"coefficient {len(exprs)} of form {name.value!r} "
                    f"is zero")
            coeffs.append(value)
            if self.peek().kind != ",":
                break
            self.next()
        self.expect(">", "'>' or ','")
        self.expect(";", "';'")
        form = QuasilinearForm(self.current_field(), coeffs)
        self.form_names[name.value] = len(self.forms)
        self.forms.append(FormDef(name=name.value, exprs=tuple(exprs),
                                  form=form))

    def parse_command(self) -> None:
        kw = self.next()
        arity = COMMAND_ARITY[kw.value]
        args: List[str] = []
        for _ in range(arity):
            arg = self.expect("ident", "a form name")
            if arg.value not in self.form_names:
                self.fail(arg, f"form {arg.value!r} is not defined")
            args.append(arg.value)
        self.expect(";", "';'")
        self.commands.append(Command(name=kw.value, args=tuple(args),
                                     line=kw.line, column=kw.column))

    # expression grammar: expr := term (+ term)*; term := factor ((*|/)
    # factor)*; factor := atom (^ INT)?; atom := 0 | 1 | ident | ( expr )

    def parse_expr(self) -> TowerElem:
        value = self.parse_term()
        while self.peek().kind == "+":
            self.next()
            value = value + self.parse_term()
        return value

    def parse_term(self) -> TowerElem:
        value = self.parse_factor()
        while self.peek().kind in ("*", "/"):
            op = self.next()
            rhs = self.parse_factor()
            if op.kind == "*":
                value = value * rhs
            else:
                if rhs.is_zero:
                    self.fail(op, "division by zero")
                value = value * rhs.invert()
        return value

    def parse_factor(self) -> TowerElem:
        value = self.parse_atom()
        if self.peek().kind == "^":
            self.next()
            exp = self.expect("int", "an integer exponent")
            value = value ** int(exp.value)
        return value

    def parse_atom(self) -> TowerElem:
        tok = self.peek()
        if tok.kind == "int":
            if tok.value == "0":
                self.next()
                return self.current_field().zero()
            if tok.value == "1":
                self.next()
                return self.current_field().one()
            self.fail(tok, "integers other than 0 and 1 are only "
                           "allowed as exponents")
        if tok.kind == "ident":
            self.next()
            if tok.value in _KEYWORDS or tok.value == "F2":
                self.fail(tok, f"{tok.value!r} cannot appear in an "
                               f"expression")
            if tok.value not in self.current_field().base_vars:
                raise UndeclaredVariable(
                    f"line {tok.line}, column {tok.column}: variable "
                    f"{tok.value!r} is not declared")
            return self.current_field().var(tok.value)
        if tok.kind == "(":
            self.next()
            value = self.parse_expr()
            self.expect(")", "')'")
            return value
        self.fail(tok, f"expected an expression, found "
                       f"{tok.value or 'end of input'!r}")


def parse(text: str, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> Script:
    """Parse and validate a script; expressions are evaluated eagerly so
    zero coefficients and undeclared variables surface here."""
    return _Parser(tokenize(text), depth_limit).parse_script()


def scripts_equivalent(a: Script, b: Script) -> bool:
    """Same field, same form names with equal coefficients, same commands."""
    if a.field_vars != b.field_vars or a.field != b.field:
        return False
    if len(a.forms) != len(b.forms):
        return False
    for fa, fb in zip(a.forms, b.forms):
        if fa.name != fb.name or fa.form.coeffs != fb.form.coeffs:
            return False
    return [(c.name, c.args) for c in a.commands] == \
           [(c.name, c.args) for c in b.commands]
