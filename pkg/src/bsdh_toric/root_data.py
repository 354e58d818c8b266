"""Cartan matrices, simple reflections and root/coroot heights.

Roots are integer tuples in the simple-root basis, coroots integer tuples in
the simple-coroot basis. All indices exposed to callers are 1-based.

The pairing convention is ``pairing(p, q) = <alpha_q, alpha_p^vee> = A[p][q]``,
so row ``p`` of the matrix lists how every simple root pairs with the coroot
of ``alpha_p``.
"""

from dataclasses import dataclass
from typing import NamedTuple, Sequence, Tuple

from .errors import InvalidInputError

Root = Tuple[int, ...]
Coroot = Tuple[int, ...]
Word = Tuple[int, ...]

MAX_WORD_LENGTH = 62

FAMILIES = ("A", "B", "C", "D", "G2")


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise InvalidInputError("Cartan matrix must have positive rank")
        for p, row in enumerate(rows, 1):
            if len(row) != n:
                raise InvalidInputError(f"Cartan matrix is not square (row {p} has {len(row)} entries, expected {n})")
        for p in range(n):
            if rows[p][p] != 2:
                raise InvalidInputError(f"Cartan matrix diagonal entry A[{p + 1}][{p + 1}] = {rows[p][p]}, must be 2")
            for q in range(n):
                if p == q:
                    continue
                if rows[p][q] > 0:
                    raise InvalidInputError(f"off-diagonal entry A[{p + 1}][{q + 1}] = {rows[p][q]} must be <= 0")
                if (rows[p][q] == 0) != (rows[q][p] == 0):
                    raise InvalidInputError(
                        f"zero pattern not symmetric: A[{p + 1}][{q + 1}] = {rows[p][q]}, A[{q + 1}][{p + 1}] = {rows[q][p]}"
                    )

    @property
    def n(self) -> int:
        return len(self.entries)

    def pairing(self, p: int, q: int) -> int:
        return pairing(self, p, q)

    def is_symmetric(self) -> bool:
        return all(self.entries[p][q] == self.entries[q][p] for p in range(self.n) for q in range(self.n))


def builtin_cartan(family: str, rank: int) -> GeneralizedCartanMatrix:
    """Cartan matrix of a finite-type root system in Bourbaki numbering.

    For B_n the last simple root is short, so ``A[n][n-1] = -2``; C_n is the
    transpose. G2 has ``A[1][2] = -3`` (alpha_1 short).
    """
    family = str(family).upper()
    if family not in FAMILIES:
        raise InvalidInputError(f"unknown root system family {family!r}; expected one of {', '.join(FAMILIES)}")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise InvalidInputError(f"rank must be a positive integer, got {rank!r}")
    minimum = {"A": 1, "B": 2, "C": 2, "D": 4, "G2": 2}[family]
    if rank < minimum or (family == "G2" and rank != 2):
        raise InvalidInputError(f"invalid rank {rank} for family {family}")

    a = [[2 if p == q else 0 for q in range(rank)] for p in range(rank)]
    if family == "G2":
        a[0][1] = -3
        a[1][0] = -1
        return GeneralizedCartanMatrix(a)
    for p in range(rank - 1):
        a[p][p + 1] = a[p + 1][p] = -1
    if family == "B":
        a[rank - 1][rank - 2] = -2
    elif family == "C":
        a[rank - 2][rank - 1] = -2
    elif family == "D":
        # alpha_{n-2} branches to alpha_{n-1} and alpha_n
        a[rank - 2][rank - 1] = a[rank - 1][rank - 2] = 0
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
    return GeneralizedCartanMatrix(a)


def _check_index(gcm: GeneralizedCartanMatrix, p: int) -> None:
    if not 1 <= p <= gcm.n:
        raise InvalidInputError(f"simple root index {p} out of range 1..{gcm.n}")


def pairing(gcm: GeneralizedCartanMatrix, p: int, q: int) -> int:
    _check_index(gcm, p)
    _check_index(gcm, q)
    return gcm.entries[p - 1][q - 1]


def validate_word(gcm: GeneralizedCartanMatrix, word: Sequence[int]) -> Word:
    word = tuple(word)
    if not word:
        raise InvalidInputError("word must contain at least one letter")
    if len(word) > MAX_WORD_LENGTH:
        raise InvalidInputError(f"word length {len(word)} exceeds the cap of {MAX_WORD_LENGTH}")
    for k, letter in enumerate(word, 1):
        if not isinstance(letter, int) or isinstance(letter, bool) or not 1 <= letter <= gcm.n:
            raise InvalidInputError(f"letter {letter!r} at position {k} is not a simple root index in 1..{gcm.n}")
    return word


def simple(gcm: GeneralizedCartanMatrix, p: int) -> Root:
    """The simple root (or coroot) with index ``p`` as a coefficient vector."""
    _check_index(gcm, p)
    return tuple(1 if q == p else 0 for q in range(1, gcm.n + 1))


def reflect_root(gcm: GeneralizedCartanMatrix, p: int, beta: Sequence[int]) -> Root:
    """s_p(beta) = beta - <beta, alpha_p^vee> alpha_p."""
    _check_index(gcm, p)
    row = gcm.entries[p - 1]
    c = sum(row[q] * beta[q] for q in range(gcm.n))
    out = list(beta)
    out[p - 1] -= c
    return tuple(out)


def reflect_coroot(gcm: GeneralizedCartanMatrix, p: int, beta: Sequence[int]) -> Coroot:
    """s_p(b) = b - <alpha_p, b> alpha_p^vee for a coroot b."""
    _check_index(gcm, p)
    c = sum(gcm.entries[q][p - 1] * beta[q] for q in range(gcm.n))
    out = list(beta)
    out[p - 1] -= c
    return tuple(out)


def height(v: Sequence[int]) -> int:
    return sum(v)


class GammaDatum(NamedTuple):
    root: Root
    coroot: Coroot
    b: int


def gamma_data(gcm: GeneralizedCartanMatrix, word: Sequence[int]):
    """Return one GammaDatum ``(gamma_i, coroot_i, b_i)`` per position of ``word``.

    ``gamma_i = s_{w_r} ... s_{w_{i+1}}(alpha_{w_i})``; ``coroot_i`` is the
    same reflection sequence applied to the simple coroot and ``b_i`` is its
    height.
    """
    word = validate_word(gcm, word)
    out = []
    for i, letter in enumerate(word):
        root = simple(gcm, letter)
        coroot = root
        for p in word[i + 1:]:
            root = reflect_root(gcm, p, root)
            coroot = reflect_coroot(gcm, p, coroot)
        out.append(GammaDatum(root, coroot, height(coroot)))
    return out


def b_values(gcm: GeneralizedCartanMatrix, word: Sequence[int]) -> Tuple[int, ...]:
    return tuple(d.b for d in gamma_data(gcm, word))
