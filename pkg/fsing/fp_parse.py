import re
from .fp_arith import WORD_LIMIT
from .fp_errors import PolyParseError


TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")
SPACE = re.compile(r"\s*")
END = re.compile(r"\s*\Z")


def tokenize(src):
    tokens = []
    pos = 0
    while not END.match(src, pos):
        match = TOKEN.match(src, pos)
        if not match:
            bad = SPACE.match(src, pos).end()
            raise PolyParseError(f"Unexpected character '{src[bad]}'", src, bad)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    """Recursive descent over the expr/term/factor/base grammar."""

    def __init__(self, src, ring):
        self.src = src
        self.ring = ring
        self.tokens = tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        token = self.tokens[self.i]
        self.i += 1
        return token

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value or kind == "end":
            found = "end of input" if kind == "end" else f"'{text}'"
            raise PolyParseError(f"Expected '{value}', found {found}", self.src, pos)

    def parse(self):
        result = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise PolyParseError(f"Unexpected '{text}'", self.src, pos)
        return result

    def expr(self):
        result = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            result = result * self.unary()
        return result

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.factor()

    def factor(self):
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, text, pos = self.take()
            if kind != "num":
                found = "end of input" if kind == "end" else f"'{text}'"
                raise PolyParseError(f"Expected a natural exponent, found {found}", self.src, pos)
            k = int(text)
            if k >= WORD_LIMIT:
                raise PolyParseError(f"Exponent {text} is too large", self.src, pos)
            return base.pow(k)
        return base

    def base(self):
        kind, text, pos = self.take()
        if kind == "num":
            return self.ring.constant(int(text))
        if kind == "name":
            if text not in self.ring.var_names:
                raise PolyParseError(f"Unknown variable '{text}'", self.src, pos)
            return self.ring.var(text)
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        found = "end of input" if kind == "end" else f"'{text}'"
        raise PolyParseError(f"Expected a number, variable or '(', found {found}", self.src, pos)


def parse(src, ring):
    return _Parser(src, ring).parse()


def parse_list(src, ring):
    items = []
    offset = 0
    for piece in src.split(","):
        if piece.strip() == "":
            raise PolyParseError("Empty generator", src, offset)
        try:
            items.append(parse(piece, ring))
        except PolyParseError as e:
            raise PolyParseError(e.message, src, offset + e.position)
        offset += len(piece) + 1
    return items
