"""Plain-text algebra files.

::

    nary v1
    arity 3
    dim 4
    symmetry skew
    [1 2 3] = 1*4          # comment
    [1 2 4] = -1/2*3 + 2*4

Bracket lines give the coefficient of each basis vector ``j`` as ``c*j``;
a bare ``j`` means coefficient 1.  Keys are taken as written and mapped to
their canonical representative; repeated keys are summed.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ArityMismatch, IndexOutOfRange, ParseError, RepeatedIndexNonzero
from .linalg import ZERO
from .product import NAryProduct, Symmetry, canonical_key, make_product

MAGIC = "nary v1"
HEADER = ("arity", "dim", "symmetry")

_INT = re.compile(r"[0-9]+")
_TERM = re.compile(r"\s*(?:(?P<coef>[0-9]+(?:/[0-9]+)?)\s*\*\s*)?(?P<idx>[0-9]+)\s*")


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _parse_header(lines: list[str]) -> tuple[dict, int]:
    """Return the header values and the index of the first relation line."""
    values: dict = {}
    stage = 0
    for lineno, raw in enumerate(lines, 1):
        text = _strip_comment(raw)
        if not text.strip():
            continue
        col = len(text) - len(text.lstrip()) + 1
        words = text.split()
        if stage == 0:
            if " ".join(words) != MAGIC:
                raise ParseError(f"expected '{MAGIC}'", lineno, col)
            stage = 1
            continue
        field_name = HEADER[stage - 1]
        if len(words) != 2 or words[0] != field_name:
            raise ParseError(f"expected '{field_name} <value>'", lineno, col)
        value_col = text.index(words[1], text.index(words[0]) + len(words[0])) + 1
        if field_name == "symmetry":
            try:
                values[field_name] = Symmetry(words[1])
            except ValueError:
                raise ParseError(f"unknown symmetry {words[1]!r}", lineno, value_col) from None
        else:
            if not _INT.fullmatch(words[1]):
                raise ParseError(f"{field_name} must be a positive integer", lineno, value_col)
            values[field_name] = int(words[1])
        stage += 1
        if stage == len(HEADER) + 1:
            return values, lineno
    missing = MAGIC if stage == 0 else HEADER[stage - 1]
    # a trailing newline does not start another line
    count = len(lines) - (1 if lines and lines[-1] == "" else 0)
    raise ParseError(f"missing '{missing}' header", count + 1, 1)


def _parse_terms(text: str, offset: int, lineno: int, p: int) -> list[Fraction]:
    vec = [ZERO] * p
    pos = 0
    sign = 1
    expect_term = True
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] in "+-":
            # binary operator between terms, or a unary minus
            if expect_term and text[pos] == "+":
                raise ParseError("unexpected '+'", lineno, offset + pos + 1)
            if text[pos] == "-":
                sign = -sign
            expect_term = True
            pos += 1
            continue
        if not expect_term:
            raise ParseError("expected '+' or '-' between terms", lineno, offset + pos + 1)
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("expected a term 'c*j'", lineno, offset + pos + 1)
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        idx = int(m.group("idx"))
        if not 1 <= idx <= p:
            raise ParseError(f"basis index {idx} outside 1..{p}", lineno, offset + m.start("idx") + 1)
        vec[idx - 1] += sign * coef
        sign = 1
        expect_term = False
        pos = m.end()
    if expect_term:
        raise ParseError("expected a term after '=' or a sign", lineno, offset + len(text) + 1)
    return vec


def parse(text: str) -> NAryProduct:
    """Parse an algebra file; errors carry the offending line and column."""
    lines = text.split("\n")
    header, last = _parse_header(lines)
    n, p, sym = header["arity"], header["dim"], header["symmetry"]
    if n < 2:
        raise ParseError("arity must be at least 2", 2, 1)
    if p < 1:
        raise ParseError("dim must be at least 1", 3, 1)
    if sym is Symmetry.CYCLIC and n != 3:
        raise ParseError("cyclic symmetry needs arity 3", 4, 1)
    raw = []
    for lineno in range(last + 1, len(lines) + 1):
        text = _strip_comment(lines[lineno - 1])
        if not text.strip():
            continue
        col = len(text) - len(text.lstrip())
        if text[col] != "[":
            raise ParseError("expected '[' to open a bracket key", lineno, col + 1)
        close = text.find("]", col)
        if close < 0:
            raise ParseError("unterminated '['", lineno, len(text) + 1)
        key_text = text[col + 1 : close]
        key = []
        for m in re.finditer(r"\S+", key_text):
            if not _INT.fullmatch(m.group()):
                raise ParseError(f"bad index {m.group()!r}", lineno, col + 2 + m.start())
            i = int(m.group())
            if not 1 <= i <= p:
                raise ParseError(f"index {i} outside 1..{p}", lineno, col + 2 + m.start())
            key.append(i)
        if len(key) != n:
            raise ParseError(f"key has {len(key)} indices, arity is {n}", lineno, col + 1)
        rest = text[close + 1 :]
        eq = rest.find("=")
        if eq < 0 or rest[:eq].strip():
            raise ParseError("expected '=' after the key", lineno, close + 2 + max(eq, 0))
        vec = _parse_terms(rest[eq + 1 :], close + eq + 2, lineno, p)
        stored, _ = canonical_key(key, sym)
        if stored is None and any(vec):
            raise RepeatedIndexNonzero(key, f"line {lineno}: repeated index in skew key {tuple(key)} with nonzero coefficient")
        raw.append((key, vec))
    try:
        return make_product(n, p, raw, sym)
    except (ArityMismatch, IndexOutOfRange) as exc:  # pragma: no cover - guarded above
        raise ParseError(str(exc), last + 1, 1) from None


def format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def serialize(prod: NAryProduct) -> str:
    lines = [MAGIC, f"arity {prod.arity}", f"dim {prod.dim}", f"symmetry {prod.symmetry.value}"]
    for key in prod.keys():
        vec = prod.constants[key]
        terms = []
        for j, c in enumerate(vec, 1):
            if not c:
                continue
            body = f"{format_coefficient(abs(c))}*{j}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        lines.append(f"[{' '.join(map(str, key))}] = {' '.join(terms)}")
    return "\n".join(lines) + "\n"
