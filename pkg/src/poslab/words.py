"""Alphabets, finite words, ultimately periodic words, and the subword order.

Infinite words are represented in ultimately periodic form ``prefix . period^w``.
Two such representations denote the same infinite word iff their normal forms
(primitive period, shortest prefix) coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Alphabet:
    """An ordered list of distinct symbol names; a letter's index is its identity."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("alphabet has duplicate letters: %r" % (self.letters,))
        object.__setattr__(self, "letters", tuple(self.letters))

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise KeyError("unknown letter %r (alphabet %r)" % (letter, self.letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)


@dataclass(frozen=True)
class FiniteWord:
    """A finite (possibly empty) word, stored as letter indices into its alphabet."""

    alphabet: Alphabet
    symbols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        n = len(self.alphabet)
        for s in self.symbols:
            if not 0 <= s < n:
                raise ValueError("letter index %d out of range for %r" % (s, self.alphabet))

    def __len__(self):
        return len(self.symbols)

    def __add__(self, other: "FiniteWord") -> "FiniteWord":
        if other.alphabet != self.alphabet:
            raise ValueError("alphabet mismatch")
        return FiniteWord(self.alphabet, self.symbols + other.symbols)

    def text(self) -> str:
        return "".join(self.alphabet.letters[s] for s in self.symbols)

    def __repr__(self):
        return "word(%r)" % self.text()


def word(alphabet: Alphabet, letters) -> FiniteWord:
    """Build a FiniteWord from an iterable of letter names (a string works
    when all letters are single characters)."""
    return FiniteWord(alphabet, tuple(alphabet.index(c) for c in letters))


@dataclass(frozen=True)
class UPWord:
    """An ultimately periodic infinite word ``prefix . period^w`` (period non-empty)."""

    prefix: FiniteWord
    period: FiniteWord

    def __post_init__(self):
        if len(self.period) == 0:
            raise ValueError("period must be non-empty")
        if self.prefix.alphabet != self.period.alphabet:
            raise ValueError("prefix and period use different alphabets")

    @property
    def alphabet(self) -> Alphabet:
        return self.period.alphabet

    def unroll(self, n: int) -> tuple[int, ...]:
        """First n letter indices of the denoted infinite word."""
        out = list(self.prefix.symbols)
        while len(out) < n:
            out.extend(self.period.symbols)
        return tuple(out[:n])

    def __repr__(self):
        return "up(%r, %r)" % (self.prefix.text(), self.period.text())


def up(alphabet: Alphabet, prefix, period) -> UPWord:
    return UPWord(word(alphabet, prefix), word(alphabet, period))


def _primitive_root(symbols: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest u with symbols == u^k, found by checking rotation divisors."""
    n = len(symbols)
    for d in range(1, n + 1):
        if n % d == 0 and symbols == symbols[:d] * (n // d):
            return symbols[:d]
    return symbols


def up_normalize(w: UPWord) -> UPWord:
    """Canonical representative: primitive period, shortest prefix.

    The prefix is shrunk while its last symbol equals the period's last
    symbol, rotating the period right each time; this never changes the
    denoted infinite word.
    """
    period = list(_primitive_root(w.period.symbols))
    prefix = list(w.prefix.symbols)
    while prefix and prefix[-1] == period[-1]:
        prefix.pop()
        period.insert(0, period.pop())
    alpha = w.alphabet
    return UPWord(FiniteWord(alpha, tuple(prefix)), FiniteWord(alpha, tuple(period)))


def up_equal(w1: UPWord, w2: UPWord) -> bool:
    """True iff the two representations denote the same infinite word."""
    if w1.alphabet != w2.alphabet:
        raise ValueError("alphabet mismatch")
    n1, n2 = up_normalize(w1), up_normalize(w2)
    return n1.prefix.symbols == n2.prefix.symbols and n1.period.symbols == n2.period.symbols


def subword_leq(u: FiniteWord, v: FiniteWord) -> bool:
    """True iff u embeds into v as a (not necessarily contiguous) subsequence."""
    if u.alphabet != v.alphabet:
        raise ValueError("alphabet mismatch")
    it = iter(v.symbols)
    return all(c in it for c in u.symbols)
