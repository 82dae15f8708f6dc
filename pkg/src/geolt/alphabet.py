"""Symmetric alphabets and the shortlex order on words.

An alphabet is an ordered list of named symbols together with an involution
pairing each symbol with its inverse (a symbol may be its own inverse) and an
optional marker designating one symbol as an identity letter, i.e. a generator
that evaluates to the group identity.  The declared symbol order is the only
order used anywhere: it induces the shortlex order on words, fixes the
traversal order of every BFS, and thereby makes all constructed automata
canonical.

Words are tuples of symbol indices.  Keeping them as plain int tuples makes
them hashable, cheap to slice, and independent of symbol spelling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import SpecError

Word = tuple[int, ...]
EPSILON: Word = ()


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    inverse: tuple[int, ...]  # involution on symbol indices
    identity: int | None = None  # index of the identity letter, if any

    def __post_init__(self):
        n = len(self.symbols)
        if n == 0:
            raise SpecError("alphabet must be nonempty")
        if len(set(self.symbols)) != n:
            raise SpecError("alphabet symbols must be distinct")
        if len(self.inverse) != n or sorted(self.inverse) != list(range(n)):
            raise SpecError("inverse must be a permutation of the symbol indices")
        for i, j in enumerate(self.inverse):
            if self.inverse[j] != i:
                raise SpecError("inverse must be an involution")
        if self.identity is not None:
            if not 0 <= self.identity < n:
                raise SpecError("identity index out of range")
            if self.inverse[self.identity] != self.identity:
                raise SpecError("an identity letter must be its own inverse")

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def make(pairs: Iterable[tuple[str, str]] = (),
             self_inverse: Iterable[str] = (),
             identity: str | None = None,
             order: Iterable[str] | None = None) -> "Alphabet":
        """Build an alphabet from inverse pairs plus self-inverse symbols.

        Default symbol order: pairs in the given order (symbol then its
        inverse), then the self-inverse symbols.  Pass `order` to override.
        """
        inv_name: dict[str, str] = {}
        names: list[str] = []
        for a, b in pairs:
            inv_name[a] = b
            inv_name[b] = a
            names.append(a)
            if b != a:
                names.append(b)
        for a in self_inverse:
            inv_name[a] = a
            names.append(a)
        if order is not None:
            order = list(order)
            if sorted(order) != sorted(names):
                raise SpecError("order must list exactly the declared symbols")
            names = order
        index = {s: i for i, s in enumerate(names)}
        inverse = tuple(index[inv_name[s]] for s in names)
        ident = index[identity] if identity is not None else None
        return Alphabet(tuple(names), inverse, ident)

    # -- basic queries --------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise SpecError(f"unknown symbol {symbol!r}") from None

    def word(self, names: Iterable[str]) -> Word:
        return tuple(self.index(s) for s in names)

    def inverse_word(self, w: Word) -> Word:
        return tuple(self.inverse[x] for x in reversed(w))

    # -- formatting / parsing --------------------------------------------------

    def word_str(self, w: Word) -> str:
        if not w:
            return "-"
        if all(len(s) == 1 for s in self.symbols):
            return "".join(self.symbols[x] for x in w)
        return ".".join(self.symbols[x] for x in w)

    def parse_word(self, text: str) -> Word:
        """Inverse of word_str: '-' is the empty word; multi-char symbol
        alphabets use '.' as a separator."""
        text = text.strip()
        if text in ("", "-"):
            return EPSILON
        if "." in text or any(len(s) > 1 for s in self.symbols):
            return self.word(t for t in text.split(".") if t)
        return self.word(text)

    # -- shortlex -------------------------------------------------------------

    @staticmethod
    def shortlex_key(w: Word) -> tuple[int, Word]:
        return (len(w), w)

    @staticmethod
    def shortlex_less(u: Word, v: Word) -> bool:
        return (len(u), u) < (len(v), v)

    def iter_words(self, max_len: int) -> Iterator[Word]:
        """All words of length <= max_len in shortlex order."""
        level: list[Word] = [EPSILON]
        yield EPSILON
        for _ in range(max_len):
            nxt = []
            for w in level:
                for x in range(self.size):
                    wx = w + (x,)
                    nxt.append(wx)
                    yield wx
            level = nxt

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> list[dict]:
        out = []
        for i, s in enumerate(self.symbols):
            entry: dict = {"symbol": s, "inverse": self.symbols[self.inverse[i]]}
            if self.identity == i:
                entry["identity"] = True
            out.append(entry)
        return out

    @staticmethod
    def from_json(data: list[dict]) -> "Alphabet":
        if not isinstance(data, list):
            raise SpecError("alphabet must be a list of symbol entries")
        names = []
        inv_names = []
        identity = None
        for entry in data:
            try:
                names.append(entry["symbol"])
                inv_names.append(entry["inverse"])
            except (TypeError, KeyError):
                raise SpecError(f"bad alphabet entry: {entry!r}") from None
            if entry.get("identity"):
                identity = entry["symbol"]
        index = {s: i for i, s in enumerate(names)}
        try:
            inverse = tuple(index[s] for s in inv_names)
        except KeyError as e:
            raise SpecError(f"inverse symbol {e} is not in the alphabet") from None
        ident = index[identity] if identity is not None else None
        return Alphabet(tuple(names), inverse, ident)
