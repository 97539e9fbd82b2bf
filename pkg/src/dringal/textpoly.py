"""Text form of polynomials and field elements for the command line.

Grammar: plus-separated sums of terms, each term a ``*``-separated product
of atoms; an atom is a nonnegative integer, the variable ``T`` (or ``X``)
with an optional ``^`` exponent, a coefficient symbol ``g1``..``g9``, or the
extension generator ``u`` with an optional exponent.  No parentheses, no
minus signs (negatives are written as their mod-p representatives),
whitespace ignored, case-sensitive.
"""

from __future__ import annotations

from .apoly import APoly
from .errors import DringalError
from .extfield import ExtElem, ExtField


class ParseError(DringalError):
    """Input text does not match the polynomial grammar."""


_VARS = ("T", "X", "u") + tuple(f"g{i}" for i in range(1, 10))


def _tokenize(text: str) -> list:
    out = []
    i = 0
    s = "".join(text.split())
    n = len(s)
    while i < n:
        c = s[i]
        if c.isdigit():
            j = i
            while j < n and s[j].isdigit():
                j += 1
            out.append(("int", int(s[i:j])))
            i = j
        elif c in "+*^":
            out.append((c, c))
            i += 1
        elif c == "g" and i + 1 < n and s[i + 1].isdigit():
            out.append(("var", s[i : i + 2]))
            i += 2
        elif c in "TXu":
            out.append(("var", c))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r} in {text!r}")
    return out


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def eat(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {kind} at token {self.pos} in {self.text!r}")
        self.pos += 1
        return tok[1]

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.pos += 1
            return ("int", val, 1)
        if kind == "var":
            self.pos += 1
            exp = 1
            if self.peek()[0] == "^":
                self.pos += 1
                exp = self.eat("int")
            return ("var", val, exp)
        raise ParseError(f"expected a term at token {self.pos} in {self.text!r}")

    def term(self) -> list:
        atoms = [self.atom()]
        while self.peek()[0] == "*":
            self.pos += 1
            atoms.append(self.atom())
        return atoms

    def expr(self) -> list:
        terms = [self.term()]
        while self.peek()[0] == "+":
            self.pos += 1
            terms.append(self.term())
        if self.pos != len(self.toks):
            raise ParseError(f"trailing input at token {self.pos} in {self.text!r}")
        return terms


def parse_apoly(text: str, field, varname: str = "T") -> APoly:
    """Parse a polynomial in one variable over F_q (prime fields only)."""
    terms = _Parser(text).expr()
    acc = APoly(field, ())
    t_poly = APoly(field, (0, 1))
    for atoms in terms:
        coeff = 1
        exp = 0
        for kind, val, e in atoms:
            if kind == "int":
                coeff = coeff * val
            elif val == varname:
                exp += e
            else:
                raise ParseError(f"symbol {val!r} is not allowed here ({text!r})")
        acc = acc + APoly(field, (coeff,)) * t_poly**exp
    return acc


def parse_ext_elem(text: str, field: ExtField) -> ExtElem:
    """Parse an element of an extension field written in powers of u."""
    terms = _Parser(text).expr()
    acc = field(0)
    gen = field.gen
    for atoms in terms:
        coeff = 1
        exp = 0
        for kind, val, e in atoms:
            if kind == "int":
                coeff = coeff * val
            elif val == "u":
                exp += e
            else:
                raise ParseError(f"symbol {val!r} is not allowed here ({text!r})")
        acc = acc + gen**exp * coeff
    return acc


def parse_spec_map(text: str, field) -> dict:
    """Parse a specialization list g1=POLY,g2=POLY,... into APoly values."""
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ParseError(f"specialization {part!r} is not of the form gi=POLY")
        name, _, val = part.partition("=")
        name = name.strip()
        if name not in _VARS or not name.startswith("g"):
            raise ParseError(f"unknown coefficient symbol {name!r}")
        out[name] = parse_apoly(val, field)
    return out
