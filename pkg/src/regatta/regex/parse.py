"""Recursive-descent parser for the regex dialect (see docs/regex-grammar.md)."""

from __future__ import annotations

from ..core.charclass import DEFAULT_ALPHABET_MAX, CharClass
from .ast import (
    Alt,
    And,
    AnchorEnd,
    AnchorStart,
    Class,
    Concat,
    Dot,
    Empty,
    Epsilon,
    Neg,
    Opt,
    Plus,
    Regex,
    Repeat,
    Star,
    children,
)

_DIGIT = CharClass.span("0", "9")
_WORD = CharClass([(ord("0"), ord("9")), (ord("A"), ord("Z")), (ord("a"), ord("z")), (ord("_"), ord("_"))])
_SPACE = CharClass.of(" \t\n\r\f\v")
_SHORTHAND = {"d": _DIGIT, "w": _WORD, "s": _SPACE}
_CONTROL = {"n": "\n", "t": "\t", "r": "\r", "f": "\f", "v": "\v", "0": "\0"}


class RegexSyntaxError(ValueError):
    def __init__(self, msg: str, src: str, pos: int):
        self.offset = len(src[:pos].encode("utf-8"))
        super().__init__(f"{msg} at byte offset {self.offset}")


class _Parser:
    def __init__(self, src: str, extended: bool, alphabet_max: int):
        self.src = src
        self.pos = 0
        self.extended = extended
        self.alphabet_max = alphabet_max
        self.specials = set("()[].*+?{}|^$\\") | (set("&~") if extended else set())

    def error(self, msg: str, pos: int | None = None):
        raise RegexSyntaxError(msg, self.src, self.pos if pos is None else pos)

    def peek(self) -> str | None:
        return self.src[self.pos] if self.pos < len(self.src) else None

    def take(self) -> str:
        ch = self.peek()
        if ch is None:
            self.error("unexpected end of pattern")
        self.pos += 1
        return ch

    def parse(self) -> Regex:
        r = self.alt()
        if self.pos != len(self.src):
            self.error(f"unexpected {self.peek()!r}")
        return r

    def alt(self) -> Regex:
        items = [self.inter()]
        while self.peek() == "|":
            self.pos += 1
            items.append(self.inter())
        return items[0] if len(items) == 1 else Alt(tuple(items))

    def inter(self) -> Regex:
        items = [self.concat()]
        while self.extended and self.peek() == "&":
            self.pos += 1
            items.append(self.concat())
        return items[0] if len(items) == 1 else And(tuple(items))

    def concat(self) -> Regex:
        items = []
        while True:
            ch = self.peek()
            if ch is None or ch in ")|" or (self.extended and ch == "&"):
                break
            items.append(self.unary())
        if not items:
            return Epsilon()
        return items[0] if len(items) == 1 else Concat(tuple(items))

    def unary(self) -> Regex:
        if self.extended and self.peek() == "~":
            self.pos += 1
            return Neg(self.unary())
        return self.postfix()

    def postfix(self) -> Regex:
        start = self.pos
        r = self.atom()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                r = Star(r)
            elif ch == "+":
                self.pos += 1
                r = Plus(r)
            elif ch == "?":
                self.pos += 1
                r = Opt(r)
            elif ch == "{":
                r = self.bounds(r)
            else:
                break
            if isinstance(r.r, (AnchorStart, AnchorEnd)):
                self.error("quantified anchor", start)
        return r

    def bounds(self, r: Regex) -> Regex:
        at = self.pos
        self.pos += 1
        lo = self.number()
        hi: int | None = lo
        if self.peek() == ",":
            self.pos += 1
            hi = None if self.peek() == "}" else self.number()
        if self.peek() != "}":
            self.error("expected '}'")
        self.pos += 1
        if hi is not None and lo > hi:
            self.error(f"repeat minimum {lo} exceeds maximum {hi}", at)
        return Repeat(r, lo, hi)

    def number(self) -> int:
        start = self.pos
        while self.peek() is not None and self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a number")
        return int(self.src[start : self.pos])

    def atom(self) -> Regex:
        ch = self.take()
        if ch == "(":
            if self.peek() == ")":
                self.pos += 1
                return Epsilon()
            r = self.alt()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return r
        if ch == "[":
            return self.char_class()
        if ch == ".":
            return Dot()
        if ch == "^":
            return AnchorStart()
        if ch == "$":
            return AnchorEnd()
        if ch == "\\":
            return Class(self.escape(in_class=False))
        if ch in self.specials:
            self.error(f"unexpected {ch!r}", self.pos - 1)
        return Class(CharClass.of(ch))

    def escape(self, in_class: bool) -> CharClass:
        ch = self.take()
        low = ch.lower()
        if low in _SHORTHAND:
            cc = _SHORTHAND[low]
            return cc.complement(self.alphabet_max) if ch.isupper() else cc
        if ch in _CONTROL:
            return CharClass.of(_CONTROL[ch])
        if ch == "x":
            return CharClass.of(chr(self.hex_digits(2)))
        if ch == "u":
            if self.peek() == "{":
                self.pos += 1
                start = self.pos
                while self.peek() not in ("}", None):
                    self.pos += 1
                text = self.src[start : self.pos]
                self.take()
                try:
                    cp = int(text, 16)
                except ValueError:
                    self.error("bad \\u{...} escape", start)
                return CharClass([(cp, cp)])
            return CharClass.of(chr(self.hex_digits(4)))
        if ch.isalnum():
            self.error(f"unknown escape \\{ch}", self.pos - 1)
        return CharClass.of(ch)

    def hex_digits(self, n: int) -> int:
        text = self.src[self.pos : self.pos + n]
        if len(text) != n or any(c not in "0123456789abcdefABCDEF" for c in text):
            self.error("bad hex escape")
        self.pos += n
        return int(text, 16)

    def char_class(self) -> Regex:
        start = self.pos - 1
        negate = False
        if self.peek() == "^":
            negate = True
            self.pos += 1
        if self.peek() == "]":
            self.pos += 1
            return Class(CharClass.full(self.alphabet_max)) if negate else Empty()
        acc = CharClass()
        while True:
            ch = self.peek()
            if ch is None:
                self.error("unterminated character class", start)
            if ch == "]":
                self.pos += 1
                break
            lo = self.class_atom()
            if self.peek() == "-" and self.src[self.pos + 1 : self.pos + 2] not in ("]", ""):
                self.pos += 1
                hi = self.class_atom()
                if len(lo.ranges) != 1 or len(hi.ranges) != 1 or len(lo) != 1 or len(hi) != 1:
                    self.error("class shorthand used as range bound")
                a, b = lo.lowest(), hi.lowest()
                if a > b:
                    self.error("reversed range in character class")
                acc = acc | CharClass([(a, b)])
            else:
                acc = acc | lo
        if negate:
            acc = acc.complement(self.alphabet_max)
        return Class(acc)

    def class_atom(self) -> CharClass:
        ch = self.take()
        if ch == "\\":
            return self.escape(in_class=True)
        return CharClass.of(ch)


def parse_regex(src: str, dialect: str = "basic", alphabet_max: int = DEFAULT_ALPHABET_MAX) -> Regex:
    """Parse ``src``; ``dialect`` is "basic" or "extended" (adds ``&`` and ``~``)."""
    if dialect not in ("basic", "extended"):
        raise ValueError(f"unknown dialect {dialect!r}")
    return _Parser(src, dialect == "extended", alphabet_max).parse()


def strip_anchors(r: Regex) -> Regex:
    """Remove outer ``^``/``$`` and check the regex is whole-string.

    Every alternative at top level must carry both anchors or neither; anchors
    anywhere else are rejected.
    """
    branches = r.items if isinstance(r, Alt) else (r,)
    out = []
    for b in branches:
        items = list(b.items) if isinstance(b, Concat) else [b]
        start = bool(items) and isinstance(items[0], AnchorStart)
        if start:
            items.pop(0)
        end = bool(items) and isinstance(items[-1], AnchorEnd)
        if end:
            items.pop()
        if start != end:
            raise ValueError("unanchored regex fragment: anchor '^' and '$' must appear together")
        for it in items:
            if _has_anchor(it):
                raise ValueError("anchor in the middle of a regex")
        out.append(Epsilon() if not items else items[0] if len(items) == 1 else Concat(tuple(items)))
    return out[0] if len(out) == 1 else Alt(tuple(out))


def _has_anchor(r: Regex) -> bool:
    return isinstance(r, (AnchorStart, AnchorEnd)) or any(_has_anchor(c) for c in children(r))


def collect_classes(r: Regex, alphabet_max: int = DEFAULT_ALPHABET_MAX) -> list[CharClass]:
    """Every character class of the regex, with ``.`` as the full alphabet; deduplicated."""
    out: dict[CharClass, None] = {}

    def go(node: Regex) -> None:
        if isinstance(node, Class):
            out.setdefault(node.cc)
        elif isinstance(node, Dot):
            out.setdefault(CharClass.full(alphabet_max))
        for c in children(node):
            go(c)

    go(r)
    return list(out)
