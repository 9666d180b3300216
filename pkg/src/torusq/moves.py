"""Symbolic regular-homotopy moves with mod-2 quadruple-point accounting.

Moves A, A^-1 and B each contribute one quadruple point; isotopy segments
(including stretches with only double curves) and rigid rotations contribute
none.  Sequences are not realized geometrically.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InconsistentMorseData, InputError, UnknownGenerator
from .mcg import GENERATORS, SWAP_LETTER


class Move(enum.Enum):
    A = "A"
    A_INV = "A_INV"
    B = "B"
    ISO = "ISO"
    ROT = "ROT"

    @property
    def q(self) -> int:
        return 1 if self in (Move.A, Move.A_INV, Move.B) else 0

    def inverse(self) -> Move:
        if self is Move.A:
            return Move.A_INV
        if self is Move.A_INV:
            return Move.A
        return self


@dataclass(frozen=True)
class MoveToken:
    move: Move
    note: str = ""

    def __str__(self) -> str:
        return self.move.value if not self.note else f"{self.move.value}  # {self.note}"


@dataclass(frozen=True)
class MoveSequence:
    tokens: tuple[MoveToken, ...] = ()

    @classmethod
    def of(cls, *moves: Move | MoveToken) -> MoveSequence:
        return cls(tuple(m if isinstance(m, MoveToken) else MoveToken(m) for m in moves))

    def __add__(self, other: MoveSequence) -> MoveSequence:
        return MoveSequence(self.tokens + other.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def moves(self) -> list[Move]:
        return [t.move for t in self.tokens]

    def reversed(self) -> MoveSequence:
        """Time reversal: reverse the order and invert each move."""
        return MoveSequence(tuple(MoveToken(t.move.inverse(), t.note) for t in reversed(self.tokens)))

    def format(self) -> str:
        return "\n".join(str(t) for t in self.tokens)


def concat(seqs: Iterable[MoveSequence]) -> MoveSequence:
    tokens: list[MoveToken] = []
    for s in seqs:
        tokens.extend(s.tokens)
    return MoveSequence(tuple(tokens))


def q_of(seq: MoveSequence | Iterable[Move | MoveToken]) -> int:
    tokens = seq.tokens if isinstance(seq, MoveSequence) else seq
    q = 0
    for t in tokens:
        q ^= (t.move if isinstance(t, MoveToken) else t).q
    return q


# --------------------------------------------------------------------------
# Builders for the generator homotopies of the standard torus


def builder_double_meridian_twist() -> MoveSequence:
    return MoveSequence.of(
        MoveToken(Move.A, "ring on a meridian"),
        MoveToken(Move.A, "ring on a parallel meridian, same side"),
        MoveToken(Move.B, "merge the two rings"),
        MoveToken(Move.A_INV, "remove the disc-bounding ring"),
    )


def builder_double_longitude_twist() -> MoveSequence:
    return MoveSequence.of(
        MoveToken(Move.A, "ring on a longitude"),
        MoveToken(Move.A, "ring on a parallel longitude, same side"),
        MoveToken(Move.B, "merge the two rings"),
        MoveToken(Move.A_INV, "remove the disc-bounding ring"),
    )


def builder_rotate_pi() -> MoveSequence:
    return MoveSequence.of(MoveToken(Move.ROT, "rotate by pi about the x axis"))


def builder_reflect_xy() -> MoveSequence:
    return MoveSequence.of(
        MoveToken(Move.A, "ring on the inner longitude"),
        MoveToken(Move.A, "ring on the outer longitude, cancelling twist"),
        MoveToken(Move.ISO, "exchange upper and lower halves with double curves only"),
    )


def builder_swap_ml() -> MoveSequence:
    return MoveSequence.of(
        MoveToken(Move.A, "ring on a small disc-bounding circle"),
        MoveToken(Move.ISO, "push the spanned disc around the torus (double curves only)"),
        MoveToken(Move.ISO, "isotope back onto the standard torus"),
    )


BUILDERS = {
    "double-meridian-twist": builder_double_meridian_twist,
    "double-longitude-twist": builder_double_longitude_twist,
    "rotate-pi": builder_rotate_pi,
    "reflect-xy": builder_reflect_xy,
    "swap-ml": builder_swap_ml,
}

_LETTER_BUILDERS = {
    "S": builder_double_meridian_twist,
    "L": builder_double_longitude_twist,
    "N": builder_rotate_pi,
    "R": builder_reflect_xy,
}


@dataclass(frozen=True)
class MorseData:
    """Critical point counts of a Morse function on F minus an open disc.

    The disc's boundary is the minimal level curve, so the counts satisfy
    n_min - n_saddle + n_max = chi(F) - 1.
    """

    n_min: int
    n_saddle: int
    n_max: int
    chi_F: int

    def __post_init__(self) -> None:
        if min(self.n_min, self.n_saddle, self.n_max) < 0:
            raise InconsistentMorseData("critical point counts must be non-negative")
        if self.chi_F > 2:
            raise InconsistentMorseData(f"a closed connected surface has chi <= 2, got {self.chi_F}")
        if self.n_min - self.n_saddle + self.n_max != self.chi_F - 1:
            raise InconsistentMorseData(
                f"{self.n_min} - {self.n_saddle} + {self.n_max} != chi - 1 = {self.chi_F - 1}"
            )


def builder_lemma_l2(morse: MorseData) -> MoveSequence:
    """Initial A move at the disc, then A / B / A^-1 at each minimum / saddle / maximum."""
    tokens = [MoveToken(Move.A, "initial ring around the fixed disc")]
    tokens += [MoveToken(Move.A, "minimum")] * morse.n_min
    tokens += [MoveToken(Move.B, "saddle")] * morse.n_saddle
    tokens += [MoveToken(Move.A_INV, "maximum")] * morse.n_max
    return MoveSequence(tuple(tokens))


def builder_word_to_moves(word: Sequence[tuple[str, int]]) -> MoveSequence:
    """Concatenate generator homotopies for a word; a leading swap letter adds the swap homotopy."""
    parts: list[MoveSequence] = []
    for pos, (letter, k) in enumerate(word):
        if letter == SWAP_LETTER:
            if pos != 0 or abs(k) != 1:
                raise UnknownGenerator("the swap may only appear once, as a prefix")
            parts.append(builder_swap_ml())
            continue
        build = _LETTER_BUILDERS.get(letter)
        if build is None or letter not in GENERATORS:
            raise UnknownGenerator(f"unknown generator {letter!r}")
        if k == 0:
            continue
        piece = build() if k > 0 else build().reversed()
        parts.extend([piece] * abs(k))
    return concat(parts)


# --------------------------------------------------------------------------
# Line-based move files


_TOKEN_NAMES = {"A": Move.A, "A_INV": Move.A_INV, "B": Move.B, "ISO": Move.ISO, "ROT": Move.ROT}


def parse_moves(text: str) -> MoveSequence:
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        move = _TOKEN_NAMES.get(line)
        if move is None:
            raise InputError(f"line {lineno}: unknown move token {line!r}")
        tokens.append(MoveToken(move))
    return MoveSequence(tuple(tokens))


def format_moves(seq: MoveSequence) -> str:
    return "".join(f"{t.move.value}\n" for t in seq.tokens)


__all__ = [
    "BUILDERS",
    "Move",
    "MorseData",
    "MoveSequence",
    "MoveToken",
    "builder_double_longitude_twist",
    "builder_double_meridian_twist",
    "builder_lemma_l2",
    "builder_reflect_xy",
    "builder_rotate_pi",
    "builder_swap_ml",
    "builder_word_to_moves",
    "concat",
    "format_moves",
    "parse_moves",
    "q_of",
]
