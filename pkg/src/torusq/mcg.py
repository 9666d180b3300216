"""GL2(Z) calculus for self-maps of the standard torus.

Matrices act on column vectors in the basis (m, l); the first column is the
image of m.  ``tau`` reduces mod 2, and the subgroup H = {U, V} of GL2(Z/2)
(identity and swap) decides regular homotopy to the inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotInTauU, NotRegularlyHomotopic, NotUnimodular, UnknownGenerator


@dataclass(frozen=True)
class MappingClass:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.det not in (1, -1):
            raise NotUnimodular(f"determinant of {self} is {self.det}")

    @classmethod
    def of(cls, entries: Sequence[int] | str) -> MappingClass:
        """Build from four entries (row-major) or a string like ``"1 2 0 1"``."""
        if isinstance(entries, str):
            entries = [int(tok) for tok in entries.replace(",", " ").split()]
        if len(entries) != 4:
            raise ValueError("a 2x2 matrix needs exactly four entries")
        return cls(*(int(x) for x in entries))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: MappingClass) -> MappingClass:
        return MappingClass(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> MappingClass:
        k = self.det
        return MappingClass(k * self.d, -k * self.b, -k * self.c, k * self.a)

    def __pow__(self, n: int) -> MappingClass:
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out @ base
        return out

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    def max_abs(self) -> int:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def __str__(self) -> str:
        return f"({self.a} {self.b}; {self.c} {self.d})"


@dataclass(frozen=True)
class MappingClassMod2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if any(x not in (0, 1) for x in (self.a, self.b, self.c, self.d)):
            raise ValueError("entries must be bits")
        if (self.a * self.d + self.b * self.c) % 2 == 0:
            raise NotUnimodular("matrix is singular over Z/2")

    def __matmul__(self, other: MappingClassMod2) -> MappingClassMod2:
        return MappingClassMod2(
            (self.a * other.a + self.b * other.c) % 2,
            (self.a * other.b + self.b * other.d) % 2,
            (self.c * other.a + self.d * other.c) % 2,
            (self.c * other.b + self.d * other.d) % 2,
        )

    @property
    def name(self) -> str:
        return _MOD2_NAMES.get(self, "other")

    def __str__(self) -> str:
        return f"[{self.a} {self.b}; {self.c} {self.d}]"


IDENTITY = MappingClass(1, 0, 0, 1)
SWAP = MappingClass(0, 1, 1, 0)
U = MappingClassMod2(1, 0, 0, 1)
V = MappingClassMod2(0, 1, 1, 0)
H = frozenset({U, V})
_MOD2_NAMES = {U: "U", V: "V"}

# generators of tau^-1(U); letter "X" is the swap, allowed only as a prefix
GENERATORS: dict[str, MappingClass] = {
    "S": MappingClass(1, 2, 0, 1),
    "L": MappingClass(1, 0, 2, 1),
    "N": MappingClass(-1, 0, 0, -1),
    "R": MappingClass(-1, 0, 0, 1),
}
SWAP_LETTER = "X"

Word = tuple[tuple[str, int], ...]


def tau(m: MappingClass) -> MappingClassMod2:
    return MappingClassMod2(m.a % 2, m.b % 2, m.c % 2, m.d % 2)


def reg_homotopic_to_inclusion(m: MappingClass) -> bool:
    return tau(m) in H


def q_parity(f: MappingClass, g: MappingClass) -> int:
    """Parity of quadruple points of a regular homotopy from i o f to i o g."""
    t = tau(g @ f.inverse())
    if t == U:
        return 0
    if t == V:
        return 1
    raise NotRegularlyHomotopic(f"tau(G F^-1) = {t} is not in H")


def _generator_power(letter: str, k: int) -> MappingClass:
    if letter == "S":
        return MappingClass(1, 2 * k, 0, 1)
    if letter == "L":
        return MappingClass(1, 0, 2 * k, 1)
    if letter == SWAP_LETTER:
        return SWAP**k
    if letter in GENERATORS:
        return GENERATORS[letter] ** k
    raise UnknownGenerator(f"unknown generator {letter!r}")


def word_product(word: Iterable[tuple[str, int]]) -> MappingClass:
    out = IDENTITY
    for letter, k in word:
        out = out @ _generator_power(letter, k)
    return out


def _even_quotient(x: int, y: int) -> int:
    """k minimizing |x - 2*k*y|; ties go to the smaller remainder magnitude, then positive."""
    q, r = divmod(x, 2 * y)
    # r lies in [0, 2|y|) for y > 0, or (2y, 0] for y < 0
    best = None
    for k in (q, q + 1):
        rem = x - 2 * k * y
        key = (abs(rem), rem < 0)
        if best is None or key < best[0]:
            best = (key, k)
    return best[1]


def decompose_tau_u(m: MappingClass) -> Word:
    """Write ``m`` (with tau(m) = U) as a product of S, L, N, R and their powers.

    Row operations by powers of S and L run an even-quotient Euclidean
    algorithm on the first column until it is (+-1, 0); the signs are then
    cleared with R and N and the remaining upper shear is a power of S.
    Each syllable is (letter, exponent); N and R always carry exponent 1.
    """
    if tau(m) != U:
        raise NotInTauU(f"tau({m}) = {tau(m)} is not the identity")
    ops: list[tuple[str, int]] = []  # left-multiplications applied to m, in order
    cur = m
    while cur.c != 0:
        if abs(cur.a) > abs(cur.c):
            k = _even_quotient(cur.a, cur.c)
            ops.append(("S", -k))
            cur = _generator_power("S", -k) @ cur
        else:
            k = _even_quotient(cur.c, cur.a)
            ops.append(("L", -k))
            cur = _generator_power("L", -k) @ cur
    if cur.a == -1:
        ops.append(("R", 1))
        cur = GENERATORS["R"] @ cur
    if cur.d == -1:
        # diag(1, -1) = N R
        ops.append(("N", 1))
        ops.append(("R", 1))
        cur = GENERATORS["N"] @ GENERATORS["R"] @ cur
    assert cur.a == 1 and cur.c == 0 and cur.d == 1 and cur.b % 2 == 0
    # m = G1^-1 ... Gk^-1 cur ; N and R are involutions
    word = [(letter, -k if letter in "SL" else 1) for letter, k in ops]
    if cur.b:
        word.append(("S", cur.b // 2))
    return tuple(word)


def format_word(word: Iterable[tuple[str, int]]) -> str:
    parts = [letter if k == 1 else f"{letter}^{k}" for letter, k in word]
    return " ".join(parts) if parts else "1"


def word_length(word: Iterable[tuple[str, int]]) -> int:
    """Number of generator letters, counting S^k and L^k as |k| letters."""
    return sum(abs(k) for _, k in word)


__all__ = [
    "GENERATORS",
    "H",
    "IDENTITY",
    "MappingClass",
    "MappingClassMod2",
    "SWAP",
    "SWAP_LETTER",
    "U",
    "V",
    "decompose_tau_u",
    "format_word",
    "q_parity",
    "reg_homotopic_to_inclusion",
    "tau",
    "word_length",
    "word_product",
]
