"""Text formats for Lie algebra laws and representations.

Algebra files::

    dim 3
    param alpha
    param Z rel Z^2 = 1 - alpha^2
    bracket 1 3 -> 2: 1, 1: alpha

Representation files::

    size 3
    e 1 = -1 * X 2 3
    e 2 = X 1 3 + (1/2 + i) * X 2 2

Scalars are arithmetic expressions in rationals, ``i`` and declared
parameters (``+ - * / ^``, parentheses, juxtaposition as in ``2 i``).
Lines starting with ``#`` and trailing ``# ...`` comments are ignored.
"""

from __future__ import annotations

import re

from .algebra import LieAlgebra
from .gaussian import GQ, I
from .polynomials import Polynomial, param
from .representation import Representation
from .scalars import Relation, Scalar, scalar_param
from .triangular import TriIndex

__all__ = [
    "ParseError", "parse_algebra_file", "parse_rep_file", "parse_scalar",
    "format_algebra", "format_rep", "format_scalar",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Vec(dict):
    """Linear combination of basis matrices while parsing."""


def _tokenize(text: str, line: int, col0: int):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", line, col0 + bad + 1)
        start = m.start(m.lastindex)
        kind = ("num", "name", "op")[m.lastindex - 1]
        value = m.group(m.lastindex)
        if value == "**":
            value = "^"
        tokens.append((kind, value, col0 + start + 1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, names, line, col0, basis=False):
        self.toks = _tokenize(text, line, col0)
        self.pos = 0
        self.names = names
        self.line = line
        self.end_col = col0 + len(text) + 1
        self.basis = basis

    def error(self, msg, tok=None):
        col = tok[2] if tok else self.end_col
        return ParseError(msg, self.line, col)

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of expression")
        self.pos += 1
        return tok

    def parse(self):
        if not self.toks:
            raise self.error("empty expression")
        value = self.expr()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()[1]!r}", self.peek())
        return value

    def expr(self):
        value = self.term()
        while (tok := self.peek()) is not None and tok[1] in "+-" and tok[0] == "op":
            self.take()
            rhs = self.term()
            value = self.combine(value, rhs if tok[1] == "+" else self.negate(rhs), tok)
        return value

    def term(self):
        value = self.factor()
        while (tok := self.peek()) is not None:
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs = self.factor()
                value = self.multiply(value, rhs, tok) if tok[1] == "*" else self.divide(value, rhs, tok)
            elif tok[0] in ("num", "name") or tok[1] == "(":
                value = self.multiply(value, self.power(), tok)
            else:
                break
        return value

    def factor(self):
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] in "+-":
            self.take()
            value = self.factor()
            return self.negate(value) if tok[1] == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.take()
            sign = 1
            if self.peek() is not None and self.peek()[1] == "-":
                self.take()
                sign = -1
            exp_tok = self.take()
            if exp_tok[0] != "num":
                raise self.error("exponent must be an integer", exp_tok)
            if isinstance(base, _Vec):
                raise self.error("cannot raise a matrix to a power", tok)
            try:
                return base ** (sign * int(exp_tok[1]))
            except ZeroDivisionError:
                raise self.error("division by zero", tok) from None
        return base

    def atom(self):
        tok = self.take()
        kind, value, _ = tok
        if kind == "num":
            return GQ(int(value))
        if kind == "op":
            if value != "(":
                raise self.error(f"unexpected {value!r}", tok)
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                raise self.error("expected ')'", close)
            return inner
        if value == "i":
            return I
        if value == "X":
            if not self.basis:
                raise self.error("basis matrix X not allowed here", tok)
            a, b = self.take(), self.take()
            if a[0] != "num" or b[0] != "num":
                raise self.error("X must be followed by two indices", tok)
            i, j = int(a[1]), int(b[1])
            if not 1 <= i <= j:
                raise self.error(f"X {i} {j} is not upper triangular", tok)
            return _Vec({TriIndex(i, j): GQ(1)})
        if value in self.names:
            return self.names[value]
        raise self.error(f"undeclared parameter {value!r}", tok)

    # value arithmetic ---------------------------------------------------

    @staticmethod
    def negate(v):
        if isinstance(v, _Vec):
            return _Vec({t: -c for t, c in v.items()})
        return -v

    def combine(self, a, b, tok):
        va, vb = isinstance(a, _Vec), isinstance(b, _Vec)
        if va and vb:
            out = _Vec(a)
            for t, c in b.items():
                out[t] = out.get(t, 0) + c
            return _Vec({t: c for t, c in out.items() if c})
        if va or vb:
            vec, sc = (a, b) if va else (b, a)
            if not sc:
                return vec
            raise self.error("cannot add a scalar to a matrix", tok)
        return a + b

    def multiply(self, a, b, tok):
        if isinstance(a, _Vec) and isinstance(b, _Vec):
            raise self.error("cannot multiply two matrices", tok)
        if isinstance(a, _Vec):
            a, b = b, a
        if isinstance(b, _Vec):
            return _Vec({t: a * c for t, c in b.items() if a * c})
        return a * b

    def divide(self, a, b, tok):
        if isinstance(b, _Vec):
            raise self.error("cannot divide by a matrix", tok)
        if not b:
            raise self.error("division by zero", tok)
        if isinstance(a, _Vec):
            return _Vec({t: c / b for t, c in a.items()})
        return a / b


def parse_scalar(text: str, names: dict | None = None, line: int | None = None, column: int = 0):
    """Evaluate a scalar expression; ``names`` maps parameter names to scalars."""
    value = _Parser(text, names or {}, line, column).parse()
    return value


# ---------------------------------------------------------------------------
# statements


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield n, body


_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")
_RESERVED = {"i", "X", "e", "rel", "dim", "size", "param", "bracket"}


class _Params:
    def __init__(self):
        self.order: list = []
        self.names: dict = {}
        self.relations: list = []

    def declare(self, n, body, rest_col):
        rest = body[rest_col:]
        m = re.match(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s+rel\s+(.*)$", rest)
        if m:
            name = m.group(1)
            self._check_name(name, n, rest_col + rest.index(name) + 1)
            lhs, eq, rhs = m.group(2).partition("=")
            if not eq or re.sub(r"\s+", "", lhs).replace("**", "^") != f"{name}^2":
                raise ParseError(f"expected '{name}^2 = <polynomial>'", n, rest_col + m.start(2) + 1)
            col = rest_col + m.start(2) + len(lhs) + 1
            rad = parse_scalar(rhs, self.names, n, col)
            if isinstance(rad, Scalar):
                if rad.den != 1:
                    raise ParseError("radicand must be a polynomial", n, col + 1)
                poly = rad.num
            else:
                poly = Polynomial.const(rad)
            rel = Relation(param(name), poly)
            self.relations.append(rel)
            self.order.append(name)
            self.names[name] = scalar_param(name, (rel,))
            return
        names = rest.split()
        if not names:
            raise ParseError("param needs at least one name", n, len(body) + 1)
        for name in names:
            self._check_name(name, n, rest_col + rest.index(name) + 1)
            self.order.append(name)
            self.names[name] = scalar_param(name)

    def _check_name(self, name, n, col):
        if not _IDENT.match(name) or name in _RESERVED:
            raise ParseError(f"invalid parameter name {name!r}", n, col)
        if name in self.names:
            raise ParseError(f"parameter {name!r} declared twice", n, col)


def _int(text, n, col, what):
    if not re.fullmatch(r"\d+", text):
        raise ParseError(f"expected {what}, got {text!r}", n, col)
    return int(text)


def _words_with_cols(body):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", body)]


def parse_algebra_file(text: str) -> LieAlgebra:
    """Parse the algebra grammar into a :class:`LieAlgebra` (Jacobi is not enforced)."""
    dim = None
    params = _Params()
    brackets = []
    seen_pairs = set()
    for n, body in _lines(text):
        words = _words_with_cols(body)
        head, hcol = words[0]
        if head == "dim":
            if dim is not None:
                raise ParseError("dim declared twice", n, hcol)
            if len(words) != 2:
                raise ParseError("expected 'dim <n>'", n, hcol)
            dim = _int(words[1][0], n, words[1][1], "a dimension")
            if dim < 1:
                raise ParseError("dimension must be positive", n, words[1][1])
        elif dim is None:
            raise ParseError("file must start with 'dim <n>'", n, hcol)
        elif head == "param":
            params.declare(n, body, hcol + len("param") - 1)
        elif head == "bracket":
            m = re.match(r"\s*bracket\s+(\S+)\s+(\S+)\s*->\s*(.*)$", body)
            if not m:
                raise ParseError("expected 'bracket <i> <j> -> <k>: <scalar>, ...'", n, hcol)
            i = _int(m.group(1), n, m.start(1) + 1, "an index")
            j = _int(m.group(2), n, m.start(2) + 1, "an index")
            if not i < j:
                raise ParseError(f"bracket requires i < j, got {i} {j}", n, m.start(1) + 1)
            if j > dim:
                raise ParseError(f"index {j} outside 1..{dim}", n, m.start(2) + 1)
            if (i, j) in seen_pairs:
                raise ParseError(f"bracket {i} {j} given twice", n, hcol)
            seen_pairs.add((i, j))
            col = m.start(3)
            for part in _split_top(m.group(3)):
                k_text, colon, expr = part.partition(":")
                pcol = col + len(part) - len(part.lstrip())
                if not colon:
                    raise ParseError("expected '<k>: <scalar>'", n, pcol + 1)
                k = _int(k_text.strip(), n, pcol + 1, "an index")
                if not 1 <= k <= dim:
                    raise ParseError(f"index {k} outside 1..{dim}", n, pcol + 1)
                value = parse_scalar(expr, params.names, n, col + len(k_text) + 1)
                brackets.append((i, j, k, value))
                col += len(part) + 1
        else:
            raise ParseError(f"unknown statement {head!r}", n, hcol)
    if dim is None:
        raise ParseError("missing 'dim <n>'", 1, 1)
    return LieAlgebra.from_brackets(dim, brackets, params.order, (), params.relations)


def _split_top(text):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_rep_file(text: str) -> Representation:
    """Parse the representation grammar; missing ``e h`` lines are recorded as gaps."""
    size = None
    params = _Params()
    images: dict = {}
    for n, body in _lines(text):
        words = _words_with_cols(body)
        head, hcol = words[0]
        if head == "size":
            if size is not None:
                raise ParseError("size declared twice", n, hcol)
            if len(words) != 2:
                raise ParseError("expected 'size <k>'", n, hcol)
            size = _int(words[1][0], n, words[1][1], "a size")
            if size < 1:
                raise ParseError("size must be positive", n, words[1][1])
        elif size is None:
            raise ParseError("file must start with 'size <k>'", n, hcol)
        elif head == "param":
            params.declare(n, body, hcol + len("param") - 1)
        elif head == "e":
            m = re.match(r"\s*e\s+(\S+)\s*=(.*)$", body)
            if not m:
                raise ParseError("expected 'e <h> = <combination of X i j>'", n, hcol)
            h = _int(m.group(1), n, m.start(1) + 1, "a basis index")
            if h < 1:
                raise ParseError("basis index must be positive", n, m.start(1) + 1)
            if h in images:
                raise ParseError(f"e {h} given twice", n, hcol)
            value = _Parser(m.group(2), params.names, n, m.start(2), basis=True).parse()
            if not isinstance(value, _Vec):
                if value:
                    raise ParseError("image must be a combination of X i j", n, m.start(2) + 1)
                value = _Vec()
            for t in value:
                if t.j > size:
                    raise ParseError(f"X {t.i} {t.j} does not fit in size {size}", n,
                                     m.start(2) + 1)
            images[h] = dict(value)
        else:
            raise ParseError(f"unknown statement {head!r}", n, hcol)
    if size is None:
        raise ParseError("missing 'size <k>'", 1, 1)
    count = max(images, default=0)
    missing = tuple(h for h in range(1, count + 1) if h not in images)
    return Representation(size, tuple(images.get(h, {}) for h in range(1, count + 1)),
                          tuple(params.order), tuple(params.relations), missing)


# ---------------------------------------------------------------------------
# serialisation


def format_scalar(x, wrap: bool = False) -> str:
    """Text accepted by :func:`parse_scalar`; ``wrap`` parenthesises compound values."""
    if isinstance(x, Scalar):
        text = str(x)
        compound = True
    else:
        x = GQ(x) if not isinstance(x, GQ) else x
        text = str(x)
        compound = bool(x.re and x.im)
    return f"({text})" if wrap and compound else text


def _param_lines(names, relations):
    rel_vars = {r.var.name: r for r in relations}
    plain = [n for n in names if n not in rel_vars]
    lines = []
    if plain:
        lines.append("param " + " ".join(plain))
    for n in names:
        if n in rel_vars:
            lines.append(f"param {n} rel {n}^2 = {rel_vars[n].radicand}")
    return lines


def format_algebra(A: LieAlgebra) -> str:
    lines = [f"dim {A.dim}"] + _param_lines(A.param_names, A.relations)
    for i, j, row in A.brackets():
        parts = ", ".join(f"{k}: {format_scalar(c)}" for k, c in row.items())
        lines.append(f"bracket {i} {j} -> {parts}")
    return "\n".join(lines) + "\n"


def _term(c, t) -> str:
    text = format_scalar(c, wrap=True)
    if text in ("1", "-1"):
        return f"{text[:-1]}X {t.i} {t.j}"
    return f"{text} * X {t.i} {t.j}"


def format_rep(R: Representation) -> str:
    lines = [f"size {R.k}"] + _param_lines(R.param_names, R.relations)
    for h, img in enumerate(R.images, start=1):
        if h in R.missing:
            continue
        if not img:
            lines.append(f"e {h} = 0")
            continue
        terms = [_term(c, t) for t, c in img.items()]
        lines.append(f"e {h} = " + " + ".join(terms).replace("+ -", "- "))
    return "\n".join(lines) + "\n"
