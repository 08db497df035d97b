"""Text and JSON forms for polynomials, maps, and gradings.

The inline syntax is what ``Polynomial.render`` produces: integer and
rational coefficients, explicit ``*`` between factors, ``^`` (or ``**``)
for powers, and parentheses.  Two-variable text uses either x, y or
u, v; three-variable text always uses x, y, z.  The JSON document form
carries explicit variable names next to the coordinate strings, plus an
optional grading, so files round-trip exactly.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .grading import Grading, ResidueGrading
from .maps import PolynomialMap
from .poly import DEFAULT_NAMES, Polynomial

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[+\-*/^(),])")
_NAME_OK = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")

_MIXED_NAMES = "mixing u, v with x, y, z in one expression"


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    position: int


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", position=pos
            )
        if match.group(1) is not None:
            tokens.append(_Token("int", match.group(1), pos))
        elif match.group(2) is not None:
            tokens.append(_Token("name", match.group(2), pos))
        else:
            op = "^" if match.group(3) == "**" else match.group(3)
            tokens.append(_Token("op", op, pos))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


def _resolve_names(tokens, arity):
    """Map the variable names appearing in ``tokens`` to indices.

    Returns (mapping, arity); ``arity`` may come in as None, in which
    case it is inferred: the z alphabet forces three variables, u, v or
    plain x, y give two.
    """
    committed = None
    saw_z = None
    for tok in tokens:
        if tok.kind != "name":
            continue
        if tok.text in ("x", "y", "z"):
            if committed == "uv":
                raise ParseError(_MIXED_NAMES, position=tok.position)
            committed = "xyz"
            if tok.text == "z":
                saw_z = tok
        elif tok.text in ("u", "v"):
            if committed == "xyz":
                raise ParseError(_MIXED_NAMES, position=tok.position)
            committed = "uv"
        else:
            raise ParseError(
                f"unknown variable {tok.text!r}", position=tok.position
            )
    if arity is None:
        arity = 3 if saw_z is not None else 2
    if arity == 3:
        if committed == "uv":
            raise ParseError(
                "three-variable text uses x, y, z",
                position=next(t for t in tokens if t.kind == "name").position,
            )
        return {"x": 0, "y": 1, "z": 2}, 3
    if arity == 2:
        if saw_z is not None:
            raise ParseError(
                "z is not available in two variables", position=saw_z.position
            )
        if committed == "uv":
            return {"u": 0, "v": 1}, 2
        return {"x": 0, "y": 1}, 2
    raise ParseError(f"inline text supports two or three variables, not {arity}")


class _ExprParser:
    """Recursive-descent parser over a token window.

    Grammar, loosest binding first:

        expr   := [sign] term ((+ | -) term)*
        term   := factor (* factor)*
        factor := atom [^ INT]
        atom   := INT [/ INT] | NAME | ( expr )
    """

    def __init__(self, tokens, mapping, arity):
        self.tokens = tokens
        self.mapping = mapping
        self.arity = arity
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def take(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def _is_op(self, *texts):
        tok = self.peek()
        return tok.kind == "op" and tok.text in texts

    def parse(self):
        poly = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(
                f"unexpected {tok.text!r} after expression", position=tok.position
            )
        return poly

    def expr(self):
        sign = 1
        if self._is_op("+", "-"):
            sign = -1 if self.take().text == "-" else 1
        poly = self.term() * sign
        while self._is_op("+", "-"):
            op = self.take().text
            nxt = self.term()
            poly = poly - nxt if op == "-" else poly + nxt
        return poly

    def term(self):
        poly = self.factor()
        while True:
            if self._is_op("*"):
                self.take()
                poly = poly * self.factor()
                continue
            tok = self.peek()
            if tok.kind in ("int", "name") or (
                tok.kind == "op" and tok.text == "("
            ):
                raise ParseError(
                    "missing operator (explicit * is required)",
                    position=tok.position,
                )
            if tok.kind == "op" and tok.text == "/":
                raise ParseError(
                    "division is only available between integer literals",
                    position=tok.position,
                )
            return poly

    def factor(self):
        poly = self.atom()
        if self._is_op("^"):
            caret = self.take()
            tok = self.peek()
            if tok.kind != "int":
                raise ParseError(
                    "exponents must be nonnegative integer literals",
                    position=caret.position,
                )
            self.take()
            poly = poly ** int(tok.text)
        return poly

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            value = int(tok.text)
            if self._is_op("/"):
                slash = self.take()
                den = self.peek()
                if den.kind != "int":
                    raise ParseError(
                        "division is only available between integer literals",
                        position=slash.position,
                    )
                self.take()
                if int(den.text) == 0:
                    raise ParseError(
                        "zero denominator", position=den.position
                    )
                value = Fraction(value, int(den.text))
            return Polynomial.constant(self.arity, value)
        if tok.kind == "name":
            return Polynomial.variable(self.arity, self.mapping[tok.text])
        if tok.kind == "op" and tok.text == "(":
            poly = self.expr()
            closing = self.peek()
            if not self._is_op(")"):
                raise ParseError(
                    "expected a closing parenthesis", position=closing.position
                )
            self.take()
            return poly
        what = tok.text if tok.kind != "end" else "end of input"
        raise ParseError(f"unexpected {what!r}", position=tok.position)


def parse_polynomial(text, arity=None):
    """Parse inline polynomial text.

    With ``arity`` None the variable alphabet decides: z means three
    variables, otherwise two.  Constants parse at arity 2 by default.
    """
    tokens = _tokenize(text)
    if tokens[0].kind == "end":
        raise ParseError("empty polynomial", position=0)
    mapping, arity = _resolve_names(tokens, arity)
    return _ExprParser(tokens, mapping, arity).parse()


def _split_coordinates(tokens):
    """Token windows for each top-level coordinate of '(f, g, ...)'."""
    first = tokens[0]
    if not (first.kind == "op" and first.text == "("):
        raise ParseError(
            "a map is a parenthesised list of coordinates", position=first.position
        )
    spans = []
    start = 1
    depth = 1
    for i in range(1, len(tokens)):
        tok = tokens[i]
        if tok.kind == "end":
            raise ParseError("expected a closing parenthesis", position=tok.position)
        if tok.kind != "op":
            continue
        if tok.text == "(":
            depth += 1
        elif tok.text == ")":
            depth -= 1
            if depth == 0:
                spans.append((start, i))
                if tokens[i + 1].kind != "end":
                    raise ParseError(
                        f"unexpected {tokens[i + 1].text!r} after the map",
                        position=tokens[i + 1].position,
                    )
                break
        elif tok.text == "," and depth == 1:
            spans.append((start, i))
            start = i + 1
    windows = []
    for lo, hi in spans:
        if lo == hi:
            raise ParseError(
                "empty coordinate", position=tokens[lo].position
            )
        windows.append(tokens[lo:hi] + [_Token("end", "", tokens[hi].position)])
    return windows


def parse_map(text):
    """Parse '(f, g)' or '(f, g, h)' into a PolynomialMap."""
    tokens = _tokenize(text)
    if tokens[0].kind == "end":
        raise ParseError("empty map", position=0)
    windows = _split_coordinates(tokens)
    if len(windows) not in (2, 3):
        raise ParseError(
            f"a map needs two or three coordinates, got {len(windows)}",
            position=tokens[0].position,
        )
    mapping, arity = _resolve_names(tokens, len(windows))
    coords = [_ExprParser(w, mapping, arity).parse() for w in windows]
    return PolynomialMap(coords)


def parse_weights(text, count=None):
    """Parse 'a,b,c' (parens and spaces tolerated) into an int tuple."""
    stripped = text.strip()
    if stripped.startswith("(") and stripped.endswith(")"):
        stripped = stripped[1:-1]
    pieces = stripped.split(",")
    weights = []
    for piece in pieces:
        piece = piece.strip()
        try:
            weights.append(int(piece))
        except ValueError:
            raise ParseError(f"weight {piece!r} is not an integer") from None
    if count is not None and len(weights) != count:
        raise ParseError(f"expected {count} weights, got {len(weights)}")
    return tuple(weights)


# ---------------------------------------------------------------------------
# JSON documents


def _require(condition, message):
    if not condition:
        raise ParseError(message)


@dataclass(frozen=True)
class MapDocument:
    """A map plus its variable names and an optional grading.

    Mirrors the JSON shape::

        {"vars": ["x", "y", "z"],
         "coords": ["y^2*z + x", "y", "z"],
         "grading": {"weights": [1, 1, -1]}}

    A residue grading adds "modulus" next to "weights".
    """

    vars: tuple
    coords: tuple
    weights: tuple = None
    modulus: int = None

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from None
        _require(isinstance(data, dict), "a map document is a JSON object")
        extra = set(data) - {"vars", "coords", "grading"}
        _require(not extra, f"unexpected keys {sorted(extra)}")
        names = data.get("vars")
        _require(
            isinstance(names, list) and names and
            all(isinstance(n, str) and _NAME_OK.match(n) for n in names),
            '"vars" must be a list of variable names',
        )
        _require(len(set(names)) == len(names), "variable names must be distinct")
        coords = data.get("coords")
        _require(
            isinstance(coords, list)
            and all(isinstance(c, str) for c in coords),
            '"coords" must be a list of polynomial strings',
        )
        _require(
            len(coords) == len(names),
            f"{len(names)} variables but {len(coords)} coordinates",
        )
        weights = modulus = None
        if data.get("grading") is not None:
            grading = data["grading"]
            _require(isinstance(grading, dict), '"grading" must be an object')
            extra = set(grading) - {"weights", "modulus"}
            _require(not extra, f"unexpected grading keys {sorted(extra)}")
            raw = grading.get("weights")
            _require(
                isinstance(raw, list)
                and all(type(w) is int for w in raw),
                '"weights" must be a list of integers',
            )
            _require(
                len(raw) == len(names),
                f"{len(names)} variables but {len(raw)} weights",
            )
            weights = tuple(raw)
            if grading.get("modulus") is not None:
                _require(
                    type(grading["modulus"]) is int and grading["modulus"] >= 1,
                    '"modulus" must be a positive integer',
                )
                modulus = grading["modulus"]
        return cls(tuple(names), tuple(coords), weights, modulus)

    def to_json(self):
        data = {"vars": list(self.vars), "coords": list(self.coords)}
        if self.weights is not None:
            data["grading"] = {"weights": list(self.weights)}
            if self.modulus is not None:
                data["grading"]["modulus"] = self.modulus
        return json.dumps(data, indent=2) + "\n"

    @classmethod
    def from_map(cls, m, grading=None, names=None):
        if names is None:
            names = DEFAULT_NAMES.get(m.arity)
            _require(names is not None, f"pass names= for arity {m.arity}")
        weights = modulus = None
        if isinstance(grading, ResidueGrading):
            weights, modulus = tuple(grading.weights), grading.modulus
        elif isinstance(grading, Grading):
            weights = tuple(grading.weights)
        elif grading is not None:
            weights = tuple(grading)
        return cls(
            tuple(names),
            tuple(c.render(names) for c in m.coords),
            weights,
            modulus,
        )

    def to_map(self):
        mapping = {name: i for i, name in enumerate(self.vars)}
        arity = len(self.vars)
        coords = []
        for text in self.coords:
            tokens = _tokenize(text)
            if tokens[0].kind == "end":
                raise ParseError("empty coordinate", position=0)
            for tok in tokens:
                if tok.kind == "name" and tok.text not in mapping:
                    raise ParseError(
                        f"unknown variable {tok.text!r}", position=tok.position
                    )
            coords.append(_ExprParser(tokens, mapping, arity).parse())
        return PolynomialMap(coords)

    def grading(self):
        if self.weights is None:
            return None
        if self.modulus is not None:
            return ResidueGrading(self.weights, self.modulus)
        return Grading(self.weights)
