"""Binary sequence families and the Legendre-symbol constructions.

Sequences are stored bit-packed: entry k (0-based) lives in word k // 64,
bit k % 64, with +1 encoded as 0 and -1 as 1.  Under this encoding the
product of two entries is the XOR of their bits, so a correlation sum over
a window of length M is ``M - 2 * popcount(xor of the aligned windows)``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from seqfam.ntcore import Prime, Residue, legendre_symbol

WORD_BITS = 64


def _pack(bits: np.ndarray) -> np.ndarray:
    nwords = max(1, -(-len(bits) // WORD_BITS))
    padded = np.zeros(nwords * WORD_BITS, dtype=np.uint8)
    padded[: len(bits)] = bits
    packed = np.packbits(padded, bitorder="little")
    return packed.view("<u8").astype(np.uint64)


def _unpack(words: np.ndarray, length: int) -> np.ndarray:
    raw = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length]


class BinarySequence:
    """Immutable {-1,+1} vector backed by packed 64-bit words."""

    __slots__ = ("_words", "_length")

    def __init__(self, words: np.ndarray, length: int):
        if length < 1:
            raise ValueError("sequence length must be positive")
        words = np.array(words, dtype=np.uint64)
        if words.ndim != 1 or len(words) != -(-length // WORD_BITS):
            raise ValueError("word count does not match length")
        tail = length % WORD_BITS
        if tail and int(words[-1]) >> tail:
            raise ValueError("bits set beyond sequence length")
        words.flags.writeable = False
        self._words = words
        self._length = length

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "BinarySequence":
        vals = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("need a nonempty 1-d sequence")
        if not np.all((vals == 1) | (vals == -1)):
            raise ValueError("entries must be -1 or +1")
        return cls(_pack((vals < 0).astype(np.uint8)), len(vals))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BinarySequence":
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 1 or bits.size == 0 or np.any(bits > 1):
            raise ValueError("bits must be a nonempty 0/1 vector")
        return cls(_pack(bits), len(bits))

    @property
    def words(self) -> np.ndarray:
        return self._words

    @property
    def length(self) -> int:
        return self._length

    def __len__(self) -> int:
        return self._length

    @property
    def bits(self) -> np.ndarray:
        return _unpack(self._words, self._length)

    @property
    def values(self) -> np.ndarray:
        return (1 - 2 * self.bits.astype(np.int8)).astype(np.int8)

    def __getitem__(self, k: int) -> int:
        """Entry at 0-based position k."""
        if not -self._length <= k < self._length:
            raise IndexError(k)
        k %= self._length
        return -1 if (int(self._words[k // WORD_BITS]) >> (k % WORD_BITS)) & 1 else 1

    def negate(self) -> "BinarySequence":
        return BinarySequence.from_bits(1 - self.bits)

    def to_string(self) -> str:
        return "".join("-" if b else "+" for b in self.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinarySequence):
            return NotImplemented
        return self._length == other._length and np.array_equal(self._words, other._words)

    def __hash__(self) -> int:
        return hash((self._length, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BinarySequence('{self.to_string()}')"


@dataclass(frozen=True, eq=False)
class SequenceFamily:
    """Ordered list of F sequences of common length N (duplicates allowed)."""

    members: tuple[BinarySequence, ...]
    label: str = ""
    _signs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        members = tuple(self.members)
        if not members:
            raise ValueError("a family needs at least one member")
        n = members[0].length
        if any(m.length != n for m in members):
            raise ValueError("all members must have the same length")
        object.__setattr__(self, "members", members)
        signs = np.stack([m.values for m in members])
        signs.flags.writeable = False
        object.__setattr__(self, "_signs", signs)

    @classmethod
    def from_matrix(cls, rows: np.ndarray | Sequence[Sequence[int]], label: str = "") -> "SequenceFamily":
        rows = np.asarray(rows)
        if rows.ndim != 2:
            raise ValueError("expected a 2-d array of signs")
        return cls(tuple(BinarySequence.from_values(r) for r in rows), label)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def length(self) -> int:
        return self.members[0].length

    @property
    def signs(self) -> np.ndarray:
        """Read-only (F, N) int8 matrix of entries."""
        return self._signs

    @property
    def bits(self) -> np.ndarray:
        return (self._signs < 0).astype(np.uint8)

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, k: int) -> BinarySequence:
        return self.members[k]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SequenceFamily):
            return NotImplemented
        return self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def equality_classes(self) -> tuple[np.ndarray, np.ndarray]:
        """Partition members by value.

        Returns ``(class_of, reps)``: the class index of every member and the
        smallest member index of every class.  Classes are numbered in order
        of their representatives.
        """
        seen: dict[BinarySequence, int] = {}
        class_of = np.empty(self.size, dtype=np.int64)
        reps = []
        for k, m in enumerate(self.members):
            if m not in seen:
                seen[m] = len(reps)
                reps.append(k)
            class_of[k] = seen[m]
        return class_of, np.array(reps, dtype=np.int64)


def dual_family(fam: SequenceFamily) -> SequenceFamily:
    """Transpose: member n of the result is column n of ``fam``."""
    return SequenceFamily.from_matrix(fam.signs.T, f"dual({fam.label})")


def negate_family(fam: SequenceFamily) -> SequenceFamily:
    return SequenceFamily(tuple(m.negate() for m in fam.members), fam.label)


class Orientation(str, enum.Enum):
    """Which index of n^2 - b i^2 enumerates the members."""

    BY_OUTER_N = "by_n"
    BY_OUTER_I = "by_i"


@dataclass(frozen=True)
class QuadraticFamilyParams:
    p: Prime
    b: int
    orientation: Orientation = Orientation.BY_OUTER_N

    def __post_init__(self) -> None:
        p = Prime(self.p)
        object.__setattr__(self, "p", p)
        if p < 11:
            raise ValueError(f"p must be at least 11, got {p}")
        b = int(self.b)
        if legendre_symbol(b, p) != -1:
            raise ValueError(f"b={b} is a quadratic residue mod {p}" if b % p else f"b={b} is divisible by {p}")
        object.__setattr__(self, "b", b % p)
        object.__setattr__(self, "orientation", Orientation(self.orientation))


def quadratic_symbol_matrix(p: int, b: int) -> np.ndarray:
    """Matrix A[n-1, i-1] = (n^2 - b i^2 / p) for 1 <= n, i <= (p-1)/2."""
    h = (p - 1) // 2
    out = np.empty((h, h), dtype=np.int8)
    for n in range(1, h + 1):
        for i in range(1, h + 1):
            out[n - 1, i - 1] = legendre_symbol(n * n - b * i * i, p)
    return out


def build_quadratic_family(params: QuadraticFamilyParams) -> SequenceFamily:
    p, b = params.p, params.b
    mat = quadratic_symbol_matrix(p, b)
    if np.any(mat == 0):
        raise ArithmeticError(f"zero symbol in quadratic family p={p} b={b}")
    if params.orientation is Orientation.BY_OUTER_I:
        mat = mat.T
    return SequenceFamily.from_matrix(mat, f"quadratic p={p} b={b} {params.orientation.value}")


@dataclass(frozen=True)
class PolySpec:
    """Monic polynomial over F_p, coefficients highest degree first."""

    p: int
    coeffs: tuple[int, ...]

    MAX_DEGREE = 3

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) % self.p for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs or coeffs[0] != 1:
            raise ValueError("polynomial must be monic")
        if not 1 <= len(coeffs) - 1 <= self.MAX_DEGREE:
            raise ValueError(f"degree must be in 1..{self.MAX_DEGREE}")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = (acc * x + c) % self.p
        return acc

    def shift(self, d: int) -> "PolySpec":
        """The polynomial X -> f(X + d)."""
        acc = [0]
        for c in self.coeffs:
            # acc * (X + d) + c
            nxt = [0] * (len(acc) + 1)
            for k, a in enumerate(acc):
                nxt[k] += a
                nxt[k + 1] += a * d
            nxt[-1] += c
            acc = nxt
        return PolySpec(self.p, tuple(acc[1:]))

    def has_root(self) -> bool:
        return any(self(x) == 0 for x in range(self.p))

    def is_squarefree(self) -> bool:
        return len(_poly_gcd(list(self.coeffs), _derivative(list(self.coeffs), self.p), self.p)) == 1

    def __str__(self) -> str:
        terms = []
        d = self.degree
        for k, c in enumerate(self.coeffs):
            e = d - k
            if c == 0:
                continue
            mono = "" if e == 0 else ("X" if e == 1 else f"X^{e}")
            if e and c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' if mono else ''}{mono}")
        return " + ".join(terms)


def _trim(a: list[int]) -> list[int]:
    k = 0
    while k < len(a) - 1 and a[k] == 0:
        k += 1
    return a[k:]


def _derivative(a: list[int], p: int) -> list[int]:
    d = len(a) - 1
    return _trim([(c * (d - k)) % p for k, c in enumerate(a[:-1])] or [0])


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv = pow(b[0], -1, p)
    while len(a) >= len(b):
        q = a[0] * inv % p
        for k in range(len(b)):
            a[k] = (a[k] - q * b[k]) % p
        a.pop(0)
    return _trim(a or [0])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(a), _trim(b)
    while any(b):
        a, b = b, _poly_mod(a, b, p)
    inv = pow(a[0], -1, p)
    return [c * inv % p for c in a]


def build_polynomial_family(p: int, polys: Sequence[PolySpec], label: str = "") -> SequenceFamily:
    """Members (f(n)/p) for n = 1..p, with +1 where p divides f(n)."""
    p = Prime(p)
    if not polys:
        raise ValueError("need at least one polynomial")
    rows = np.empty((len(polys), p), dtype=np.int8)
    for j, f in enumerate(polys):
        if f.p != p:
            raise ValueError(f"polynomial {f} is over F_{f.p}, not F_{p}")
        for n in range(1, p + 1):
            s = legendre_symbol(f(n), p)
            rows[j, n - 1] = s if s else 1
    return SequenceFamily.from_matrix(rows, label or f"polynomial p={p} count={len(polys)}")


def enumerate_gms_quadratics(p: int) -> list[PolySpec]:
    """All X^2 - a with a a quadratic nonresidue, a ascending."""
    p = Prime(p)
    return [PolySpec(p, (1, 0, -a)) for a in range(1, p) if legendre_symbol(a, p) == -1]


def enumerate_squarefree_upto(p: int, k: int, limit: int | None = None) -> list[PolySpec]:
    """Monic square-free polynomials of degree 1..k, by degree then coefficients."""
    p = Prime(p)
    if not 1 <= k <= PolySpec.MAX_DEGREE:
        raise ValueError(f"degree bound k must be in 1..{PolySpec.MAX_DEGREE}")
    out: list[PolySpec] = []
    for d in range(1, k + 1):
        for tail in itertools.product(range(p), repeat=d):
            f = PolySpec(p, (1, *tail))
            if f.is_squarefree():
                out.append(f)
                if limit is not None and len(out) >= limit:
                    return out
    return out


# -- family file format ------------------------------------------------------

FILE_MAGIC = "# seqfam v1"


class FamilyFormatError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def format_family(fam: SequenceFamily) -> str:
    lines = [f"{FILE_MAGIC} F={fam.size} N={fam.length} label={fam.label}"]
    lines.extend(m.to_string() for m in fam.members)
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> SequenceFamily:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(FILE_MAGIC + " "):
        raise FamilyFormatError(1, f"expected header starting with '{FILE_MAGIC}'")
    header = lines[0][len(FILE_MAGIC) + 1 :]
    head, sep, label = header.partition("label=")
    if not sep:
        raise FamilyFormatError(1, "header is missing label=")
    fields = dict(tok.split("=", 1) for tok in head.split() if "=" in tok)
    try:
        F, N = int(fields["F"]), int(fields["N"])
    except (KeyError, ValueError):
        raise FamilyFormatError(1, "header needs integer F= and N=") from None
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        s = line.strip()
        if len(s) != N:
            raise FamilyFormatError(lineno, f"expected {N} symbols, got {len(s)}")
        if set(s) - {"+", "-"}:
            raise FamilyFormatError(lineno, "symbols must be '+' or '-'")
        rows.append(BinarySequence.from_bits([c == "-" for c in s]))
    if len(rows) != F:
        raise FamilyFormatError(len(lines), f"header declares F={F} members, found {len(rows)}")
    return SequenceFamily(tuple(rows), label)


def write_family(fam: SequenceFamily, path: str | Path) -> None:
    Path(path).write_text(format_family(fam))


def read_family(path: str | Path) -> SequenceFamily:
    return parse_family(Path(path).read_text())
