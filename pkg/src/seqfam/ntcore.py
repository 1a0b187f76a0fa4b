"""Exact modular arithmetic over odd primes.

All arithmetic is on Python ints; the supported modulus range is capped at
``MAX_PRIME`` so that every product of two residues fits a signed 64-bit
word, which is what the numeric kernels assume.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_PRIME = 2**31

# Deterministic Miller-Rabin witnesses, exact for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Prime(int):
    """An odd prime below ``MAX_PRIME``; construction validates."""

    def __new__(cls, value: int) -> "Prime":
        value = int(value)
        if value < 3 or value >= MAX_PRIME:
            raise ValueError(f"{value} is outside the supported prime range [3, 2^31)")
        if not is_prime(value):
            raise ValueError(f"{value} is not prime")
        return super().__new__(cls, value)


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: Prime

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"residue {self.value} not in [0, {self.modulus})")

    def __int__(self) -> int:
        return self.value


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) via the binary reciprocity reduction.

    Returns 0 when p divides a, otherwise +1 or -1.
    """
    a = int(a) % p
    n = int(p)
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def find_quadratic_nonresidue(p: int) -> Residue:
    """Smallest positive b with (b/p) = -1."""
    p = Prime(p)
    b = 2
    while legendre_symbol(b, p) != -1:
        b += 1
    return Residue(b, p)
