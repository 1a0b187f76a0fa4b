from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from seqfam.families import BinarySequence, SequenceFamily
from seqfam.measures._backend import get_kernels
from seqfam.measures.budget import DEFAULT_BUDGET, SearchBudget


@dataclass(frozen=True)
class SpecificationPattern:
    """Target signs at strictly increasing 1-based positions."""

    positions: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        pos = tuple(int(x) for x in self.positions)
        sg = tuple(int(x) for x in self.signs)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "signs", sg)
        if not pos:
            raise ValueError("a specification needs at least one position")
        if len(pos) != len(sg):
            raise ValueError("positions and signs differ in length")
        if pos[0] < 1 or any(a >= b for a, b in zip(pos, pos[1:])):
            raise ValueError("positions must be strictly increasing and >= 1")
        if any(s not in (1, -1) for s in sg):
            raise ValueError("signs must be -1 or +1")

    @property
    def size(self) -> int:
        return len(self.positions)

    def matches(self, seq: BinarySequence) -> bool:
        if self.positions[-1] > seq.length:
            raise ValueError("pattern position beyond sequence length")
        return all(seq[q - 1] == e for q, e in zip(self.positions, self.signs))

    def to_dict(self) -> dict:
        return {"positions": list(self.positions), "signs": list(self.signs)}


@dataclass(frozen=True)
class ComplexityResult:
    value: int
    blocking_pattern: SpecificationPattern | None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "blocking": self.blocking_pattern.to_dict() if self.blocking_pattern else None,
        }


def complexity_search_depth(F: int, N: int) -> int:
    # 2^C <= F caps C at floor(log2 F); one more level finds the blocker.
    return min(N, F.bit_length())


def complexity_cost(fam: SequenceFamily) -> int:
    F, N = fam.size, fam.length
    return sum(comb(N, j) * F for j in range(1, complexity_search_depth(F, N) + 1))


def family_complexity(
    fam: SequenceFamily,
    budget: SearchBudget = DEFAULT_BUDGET,
    *,
    backend: str | None = None,
) -> ComplexityResult:
    """Exact family complexity with the lexicographically first blocking
    specification (positions first, then signs with +1 before -1)."""
    budget.check("family complexity", complexity_cost(fam))
    kernels = get_kernels(backend)
    bits = np.ascontiguousarray(fam.bits)
    F, N = fam.size, fam.length
    for j in range(1, complexity_search_depth(F, N) + 1):
        pos, code = kernels.first_uncovered(bits, j)
        if code >= 0:
            signs = tuple(-1 if (code >> (j - 1 - a)) & 1 else 1 for a in range(j))
            result = ComplexityResult(j - 1, SpecificationPattern(tuple(int(q) + 1 for q in pos), signs))
            break
    else:
        result = ComplexityResult(N, None)
    assert 2**result.value <= F
    return result


def count_matching_sequences(fam: SequenceFamily, pattern: SpecificationPattern) -> int:
    if pattern.positions[-1] > fam.length:
        raise ValueError("pattern position beyond family length")
    cols = fam.signs[:, [q - 1 for q in pattern.positions]]
    return int(np.all(cols == np.asarray(pattern.signs), axis=1).sum())
