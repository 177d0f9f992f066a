"""Expression language, job files and canonical formatting.

Expression grammar (whitespace insignificant, explicit ``*`` required)::

    expr     := term (('+' | '-') term)*
    term     := signed (('*' | '/') signed)*
    signed   := '-'? factor
    factor   := base ('^' nat)?
    base     := rational | variable | '(' expr ')'
    rational := integer ('/' positive-integer)?

``^`` binds tighter than unary minus, so ``-X1^2`` is ``-(X1^2)``. An integer
immediately followed by ``/`` and another integer is a rational literal, so
``2/3^2`` is ``(2/3)^2``. Division by a non-constant yields a
:class:`RationalFunction` and is only accepted when the caller allows it.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ParseError, ValidationError
from .exact import Enclosure, Polynomial, RationalFunction

MAX_EXPONENT = 1000
MAX_DEPTH = 100
MODES = ("implicit", "polynomial_map", "rational_map", "partial")
JOB_KEYS = ("mode", "x_vars", "y_vars", "m", "equations", "point", "assumptions", "seed", "precision_bits")

_PUNCT = set("+-*/^()")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", one of _PUNCT, or "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, n = 0, len(text)
    line, col = 1, 1
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if "0" <= ch <= "9":
            j = i
            while j < n and "0" <= text[j] <= "9":
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch == "_" or ("a" <= ch <= "z") or ("A" <= ch <= "Z"):
            j = i
            while j < n and (text[j] == "_" or text[j].isascii() and text[j].isalnum()):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError("unexpected character", line, col, ch)
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str], allow_division: bool):
        self.variables = tuple(variables)
        self.allow_division = allow_division
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0
        self.rational = False

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col, tok.text or "<end of input>")

    def parse(self):
        if self.tok.kind == "eof":
            self.error("empty expression")
        value = self.expr()
        if self.tok.kind != "eof":
            self.error("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.signed()
        while self.tok.kind in ("*", "/"):
            op_tok = self.advance()
            rhs_tok = self.tok
            rhs = self.signed()
            if op_tok.kind == "*":
                value = value * rhs
            else:
                value = self.divide(value, rhs, rhs_tok)
        return value

    def divide(self, a, b, tok: Token):
        if isinstance(b, Polynomial) and b.is_constant():
            c = b.constant_value()
            if c == 0:
                self.error("division by zero", tok)
            return a * (1 / c)
        if isinstance(b, RationalFunction) and b.is_zero():
            self.error("division by zero", tok)
        if not self.allow_division:
            self.error("division by a non-constant is only allowed in rational_map mode", tok)
        self.rational = True
        a = RationalFunction.coerce(a, self.variables)
        b = RationalFunction.coerce(b, self.variables)
        return a / b

    def signed(self):
        if self.tok.kind == "-":
            self.advance()
            return -self.factor()
        return self.factor()

    def factor(self):
        base = self.base()
        if self.tok.kind == "^":
            self.advance()
            t = self.tok
            if t.kind != "int":
                self.error("expected a non-negative integer exponent")
            self.advance()
            k = int(t.text)
            if k > MAX_EXPONENT:
                self.error(f"exponent exceeds the limit {MAX_EXPONENT}", t)
            return base**k
        return base

    def base(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            value = Fraction(int(t.text))
            if self.tok.kind == "/" and self.peek().kind == "int":
                self.advance()
                d = self.advance()
                if int(d.text) == 0:
                    self.error("rational literal needs a positive denominator", d)
                value = Fraction(int(t.text), int(d.text))
            return Polynomial.constant(self.variables, value)
        if t.kind == "ident":
            self.advance()
            if t.text not in self.variables:
                self.error(f"undeclared variable {t.text!r}", t)
            return Polynomial.variable(self.variables, t.text)
        if t.kind == "(":
            self.advance()
            self.depth += 1
            if self.depth > MAX_DEPTH:
                self.error("expression nested too deeply", t)
            value = self.expr()
            if self.tok.kind != ")":
                self.error("expected ')'")
            self.advance()
            self.depth -= 1
            return value
        if t.kind == "eof":
            self.error("unexpected end of input")
        self.error("expected a number, variable or '('")


def parse_expression(text: str | bytes, variables: Sequence[str], allow_division: bool = True):
    """Parse ``text`` into a Polynomial, or a RationalFunction if it divides by a non-constant."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            line = bytes(text[: exc.start]).count(b"\n") + 1
            col = exc.start - bytes(text).rfind(b"\n", 0, exc.start)
            raise ParseError("invalid UTF-8", line, col, repr(bytes(text[exc.start : exc.end]))) from None
    p = _Parser(text, variables, allow_division)
    try:
        value = p.parse()
    except RecursionError:
        raise ParseError("expression nested too deeply", p.tok.line, p.tok.col, p.tok.text) from None
    if p.rational and not isinstance(value, RationalFunction):
        value = RationalFunction.coerce(value, variables)
    return value


# formatting ---------------------------------------------------------------


def _format_monomial(variables: Sequence[str], e) -> str:
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.terms.items()):
        mono = _format_monomial(p.variables, e)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def format_canonical(obj) -> str:
    """Deterministic text for a Polynomial, RationalFunction or JobSpec."""
    if isinstance(obj, Polynomial):
        return format_polynomial(obj)
    if isinstance(obj, RationalFunction):
        if obj.is_polynomial():
            return format_polynomial(obj.as_polynomial())
        return f"({format_polynomial(obj.num)})/({format_polynomial(obj.den)})"
    if isinstance(obj, JobSpec):
        return format_job(obj)
    raise TypeError(f"cannot format {type(obj).__name__}")


# jobs ---------------------------------------------------------------------


@dataclass(frozen=True)
class AssumptionRecord:
    """An unverified hypothesis carried along with a verdict."""

    text: str
    source: str = "job file"

    def __post_init__(self):
        if not self.text.strip():
            raise ValidationError("assumption text must be non-empty", "assumptions")


@dataclass
class JobSpec:
    mode: str
    x_vars: tuple[str, ...]
    y_vars: tuple[str, ...]
    equations: list
    point: dict[str, Enclosure] | None = None
    assumptions: list[AssumptionRecord] = field(default_factory=list)
    seed: int | None = None
    precision: int = 128
    m: int | None = None

    @property
    def n(self) -> int:
        return len(self.x_vars)

    @property
    def all_vars(self) -> tuple[str, ...]:
        if self.mode in ("implicit", "partial"):
            return self.x_vars + self.y_vars
        return self.x_vars

    def digest(self) -> str:
        return hashlib.sha256(format_job(self).encode("utf-8")).hexdigest()

    def __eq__(self, other) -> bool:
        if not isinstance(other, JobSpec):
            return NotImplemented
        return (
            self.mode == other.mode
            and self.x_vars == other.x_vars
            and self.y_vars == other.y_vars
            and self.m == other.m
            and len(self.equations) == len(other.equations)
            and all(a == b for a, b in zip(self.equations, other.equations))
            and self.point == other.point
            and self.assumptions == other.assumptions
            and self.seed == other.seed
            and self.precision == other.precision
        )


def _enclosure_from_json(value, name: str) -> Enclosure:
    where = f"point.{name}"
    if isinstance(value, str):
        try:
            return Enclosure.from_decimal(value)
        except ValidationError as exc:
            raise ValidationError(f"{where}: {exc}", where) from None
    if isinstance(value, dict):
        extra = set(value) - {"mid", "rad"}
        if extra or "mid" not in value:
            raise ValidationError(f"{where}: expected keys 'mid' and optional 'rad'", where)
        try:
            mid = _rational_from_json(value["mid"])
            rad = _rational_from_json(value.get("rad", "0"))
        except (ValueError, ZeroDivisionError, TypeError):
            raise ValidationError(f"{where}: mid/rad must be exact rationals like \"3/2\"", where) from None
        if rad < 0:
            raise ValidationError(f"{where}: radius must be non-negative", where)
        return Enclosure(mid, rad)
    raise ValidationError(f"{where}: expected a decimal string or {{\"mid\", \"rad\"}} object", where)


def _rational_from_json(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise TypeError(v)
    return Fraction(v)


def _names(value, key: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ValidationError(f"{key} must be an array of variable names", key)
    for v in value:
        toks = tokenize(v) if v else []
        if len(toks) != 2 or toks[0].kind != "ident":
            raise ValidationError(f"{key}: {v!r} is not a valid variable name", key)
    if len(set(value)) != len(value):
        raise ValidationError(f"{key} contains duplicates", key)
    return tuple(value)


def parse_job(text: str | bytes) -> JobSpec:
    """Parse and fully validate a JSON job document."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError:
            raise ValidationError("job file is not valid UTF-8") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return job_from_dict(doc)


def _assumption_from_json(value, i: int) -> AssumptionRecord:
    where = f"assumptions[{i}]"
    if isinstance(value, str):
        return AssumptionRecord(value)
    if isinstance(value, dict) and set(value) <= {"text", "source"} and isinstance(value.get("text"), str):
        source = value.get("source", "job file")
        if not isinstance(source, str):
            raise ValidationError("assumption source must be a string", where)
        return AssumptionRecord(value["text"], source)
    raise ValidationError("assumption must be a string or an object with text and source", where)


def job_from_dict(doc) -> JobSpec:
    if not isinstance(doc, dict):
        raise ValidationError("job must be a JSON object")
    unknown = sorted(set(doc) - set(JOB_KEYS))
    if unknown:
        raise ValidationError(f"unknown key(s): {', '.join(unknown)}", unknown[0])
    for key in ("mode", "x_vars", "equations"):
        if key not in doc:
            raise ValidationError(f"missing required key {key!r}", key)
    mode = doc["mode"]
    if mode not in MODES:
        raise ValidationError(f"mode must be one of {', '.join(MODES)}", "mode")
    x_vars = _names(doc["x_vars"], "x_vars")
    y_vars = _names(doc.get("y_vars", []), "y_vars")
    if not x_vars:
        raise ValidationError("x_vars must be non-empty", "x_vars")
    clash = set(x_vars) & set(y_vars)
    if clash:
        raise ValidationError(f"names used in both x_vars and y_vars: {sorted(clash)}", "y_vars")
    n = len(x_vars)

    eqs = doc["equations"]
    if not isinstance(eqs, list) or not all(isinstance(e, str) for e in eqs):
        raise ValidationError("equations must be an array of expression strings", "equations")

    m = doc.get("m")
    if mode == "partial":
        if m is None:
            raise ValidationError("m is required in partial mode", "m")
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise ValidationError("m must be a positive integer", "m")
        if m >= n:
            raise ValidationError(f"partial mode needs m < n (got m={m}, n={n})", "m")
        if len(y_vars) != m:
            raise ValidationError(f"partial mode needs exactly m={m} y_vars", "y_vars")
        if len(eqs) != m:
            raise ValidationError(f"partial mode needs exactly m={m} equations", "equations")
    else:
        if m is not None:
            raise ValidationError("m is only allowed in partial mode", "m")
        if len(eqs) != n:
            raise ValidationError(f"{mode} mode needs exactly n={n} equations", "equations")
        if mode == "implicit" and len(y_vars) != n:
            raise ValidationError(f"implicit mode needs exactly n={n} y_vars", "y_vars")
        if mode in ("polynomial_map", "rational_map") and y_vars and len(y_vars) != n:
            raise ValidationError(f"y_vars must be empty or have n={n} names", "y_vars")

    variables = x_vars + y_vars if mode in ("implicit", "partial") else x_vars
    equations = []
    for i, src in enumerate(eqs):
        try:
            e = parse_expression(src, variables, allow_division=(mode == "rational_map"))
        except ParseError as exc:
            where = f"equations[{i}]"
            raise ParseError(f"{where}: {exc.reason}", exc.line, exc.column, exc.token, where) from None
        if mode == "rational_map":
            e = RationalFunction.coerce(e, variables)
            if e.den.is_zero():
                raise ValidationError(f"equations[{i}]: denominator is identically zero", f"equations[{i}]")
        equations.append(e)

    point = None
    if "point" in doc and doc["point"] is not None:
        raw = doc["point"]
        if not isinstance(raw, dict):
            raise ValidationError("point must be an object", "point")
        known = set(x_vars) | set(y_vars)
        for name in raw:
            if name not in known:
                raise ValidationError(f"point binds unknown variable {name!r}", f"point.{name}")
        point = {name: _enclosure_from_json(raw[name], name) for name in variables if name in raw}
    if mode in ("implicit", "partial"):
        if point is None:
            raise ValidationError(f"point required in {mode} mode", "point")
        missing = [v for v in variables if v not in point]
        if missing:
            raise ValidationError(f"point missing binding for {', '.join(missing)}", "point")

    raw_assumptions = doc.get("assumptions", [])
    if not isinstance(raw_assumptions, list):
        raise ValidationError("assumptions must be an array", "assumptions")
    assumptions = [_assumption_from_json(a, i) for i, a in enumerate(raw_assumptions)]

    seed = doc.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64):
        raise ValidationError("seed must be an unsigned 64-bit integer", "seed")
    prec = doc.get("precision_bits", 128)
    if isinstance(prec, bool) or not isinstance(prec, int) or prec < 8:
        raise ValidationError("precision_bits must be an integer >= 8", "precision_bits")

    return JobSpec(
        mode=mode,
        x_vars=x_vars,
        y_vars=y_vars,
        equations=equations,
        point=point,
        assumptions=assumptions,
        seed=seed,
        precision=prec,
        m=m,
    )


def job_to_dict(job: JobSpec) -> dict:
    doc: dict = {"mode": job.mode, "x_vars": list(job.x_vars), "y_vars": list(job.y_vars)}
    if job.m is not None:
        doc["m"] = job.m
    doc["equations"] = [format_canonical(e) for e in job.equations]
    if job.point is not None:
        doc["point"] = {v: {"mid": str(e.mid), "rad": str(e.rad)} for v, e in job.point.items()}
    doc["assumptions"] = [
        a.text if a.source == "job file" else {"text": a.text, "source": a.source} for a in job.assumptions
    ]
    if job.seed is not None:
        doc["seed"] = job.seed
    doc["precision_bits"] = job.precision
    return doc


def format_job(job: JobSpec) -> str:
    return json.dumps(job_to_dict(job), indent=2, ensure_ascii=False) + "\n"

