from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, rules: list[tuple[str, str]], error_cls) -> list[Token]:
    """Split *text* with named regex *rules*; kinds starting with ``_`` are dropped."""
    master = re.compile("|".join(f"(?P<{k}>{p})" for k, p in rules))
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = master.match(text, pos)
        if m is None:
            raise error_cls(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if not kind.startswith("_"):
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    out.append(Token("EOF", "", line, pos - line_start + 1))
    return out


class TokenStream:
    def __init__(self, tokens: list[Token], error_cls) -> None:
        self.tokens = tokens
        self.i = 0
        self.error_cls = error_cls

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.cur
        shown = tok.text or "end of input"
        raise self.error_cls(f"{message}, found {shown!r}", tok.line, tok.col)

    def is_word(self, *words: str) -> bool:
        return self.cur.kind == "IDENT" and self.cur.text.upper() in words

    def expect_word(self, word: str) -> Token:
        if not self.is_word(word):
            self.fail(f"expected {word}")
        return self.advance()

    def is_punct(self, text: str) -> bool:
        return self.cur.kind in ("PUNCT", "OP") and self.cur.text == text

    def expect_punct(self, text: str) -> Token:
        if not self.is_punct(text):
            self.fail(f"expected {text!r}")
        return self.advance()
