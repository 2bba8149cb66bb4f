"""Classical number theory plus quantum period finding, Shor factoring,
discrete logarithms and the RSA round-trip demonstration.

All integer arithmetic stays on machine ints (inputs <= 4095); primality is
settled by trial division. The quantum subroutines sample measurement
outcomes from the exact final distribution of the period-finding circuit,
then post-process with continued fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import state as st
from .circuit import Circuit, run
from .errors import ArgumentError, InconclusiveError, NotInvertibleError
from .fourier import iqft_circuit
from .oracles import controlled_modexp


def gcd(a: int, b: int) -> int:
    """Euclid's remainder chain."""
    if a < 0 or b < 0:
        raise ArgumentError("gcd is defined here for non-negative integers")
    if a == 0 and b == 0:
        raise ArgumentError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd = a*x + b*y (extended Euclid)."""
    if a == 0 and b == 0:
        raise ArgumentError("bezout(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def mod_inverse(a: int, n: int) -> int:
    g, x, _ = bezout(a % n, n)
    if g != 1:
        raise NotInvertibleError(f"{a} has no inverse modulo {n} (gcd = {g})")
    return x % n


def modexp(a: int, x: int, n: int) -> int:
    """a^x mod n by square-and-multiply."""
    if n < 2:
        raise ArgumentError("modulus must be >= 2")
    if x < 0:
        raise ArgumentError("exponent must be non-negative")
    return pow(a % n, x, n)


@dataclass(frozen=True)
class Convergent:
    numerator: int
    denominator: int

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


def continued_fractions(m: int, big_m: int) -> list[Convergent]:
    """All convergents of m / big_m in increasing-denominator order; the
    last one equals the reduced fraction itself."""
    if not 0 <= m < big_m:
        raise ArgumentError("need 0 <= m < M")
    if m == 0:
        return [Convergent(0, 1)]
    # partial quotients of m / big_m
    quotients = []
    num, den = m, big_m
    while den:
        quotients.append(num // den)
        num, den = den, num % den
    convergents = []
    h_prev, h = 1, quotients[0]
    k_prev, k = 0, 1
    convergents.append(Convergent(h, k))
    for q in quotients[1:]:
        h, h_prev = q * h + h_prev, h
        k, k_prev = q * k + k_prev, k
        convergents.append(Convergent(h, k))
    return convergents


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power_root(n: int):
    """(p, k) with n = p^k and k >= 2, or None."""
    for k in range(2, n.bit_length() + 1):
        p = round(n ** (1.0 / k))
        for cand in (p - 1, p, p + 1):
            if cand >= 2 and cand**k == n:
                return cand, k
    return None


def _order_from_multiple(a: int, n: int, multiple: int) -> int | None:
    """Least r dividing `multiple` with a^r = 1 mod n, if any."""
    if multiple <= 0 or modexp(a, multiple, n) != 1:
        return None
    r = multiple
    for p in _prime_factors(multiple):
        while r % p == 0 and modexp(a, r // p, n) == 1:
            r //= p
    return r


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def period_circuit(a: int, n_mod: int, t: int) -> Circuit:
    """Exponent register (t qubits) + work register initialised |1>:
    Hadamards, controlled modular multiplications, inverse QFT."""
    width = max(n_mod.bit_length(), 1)
    total = t + width
    circ = Circuit(total)
    for q in range(t):
        circ.h(q)
    circ.extend(controlled_modexp(a, n_mod, t, width))
    circ.extend(iqft_circuit(t).remapped({q: q for q in range(t)}, total))
    return circ


def period_distribution(a: int, n_mod: int, t: int) -> dict[str, float]:
    width = max(n_mod.bit_length(), 1)
    circ = period_circuit(a, n_mod, t)
    final = run(circ, st.basis_state(1, t + width))
    return st.probabilities(final, list(range(t)))


def quantum_period(
    a: int, n_mod: int, t: int | None = None, seed: int = 0, attempts: int = 12
) -> int:
    """Order of a modulo n_mod via the phase-estimation circuit.

    Measured outcomes m concentrate on multiples of 2^t / r; continued
    fractions on m / 2^t propose denominators, which are lcm-accumulated
    until a verified multiple of the order appears (then reduced to the
    least r with a^r = 1).
    """
    if n_mod < 2:
        raise ArgumentError("modulus must be >= 2")
    a %= n_mod
    if math.gcd(a, n_mod) != 1:
        raise NotInvertibleError(f"gcd({a}, {n_mod}) != 1")
    if a == 1:
        return 1
    if t is None:
        t = n_mod.bit_length() + 2
    dist = period_distribution(a, n_mod, t)
    labels = sorted(dist)
    weights = np.array([dist[k] for k in labels])
    weights /= weights.sum()
    rng = np.random.default_rng(seed)
    acc = 1
    for _ in range(attempts):
        m = int(labels[rng.choice(len(labels), p=weights)], 2)
        if m == 0:
            continue
        for conv in continued_fractions(m, 1 << t):
            r_hat = conv.denominator
            if r_hat < 1 or r_hat > n_mod:
                continue
            order = _order_from_multiple(a, n_mod, r_hat)
            if order:
                return order
            acc = acc * r_hat // math.gcd(acc, r_hat)
            order = _order_from_multiple(a, n_mod, acc)
            if order:
                return order
    raise InconclusiveError(
        f"no verified period for a={a}, N={n_mod} after {attempts} samples"
    )


def shor_factor(n: int, seed: int = 0, max_bases: int = 20) -> tuple[int, int]:
    """Split an odd composite (not a prime power) into two factors.

    Bases a are drawn as a seeded shuffle of [2, n-2] filtered to coprime
    values; each even-order base with a^(r/2) != -1 yields factors through
    gcd(a^(r/2) +- 1, n).
    """
    if n % 2 == 0:
        raise ArgumentError(f"N = {n} is even; factor 2 classically")
    if is_prime(n):
        raise ArgumentError(f"N = {n} is prime")
    pp = prime_power_root(n)
    if pp:
        raise ArgumentError(
            f"N = {n} is the prime power {pp[0]}^{pp[1]}; use the root directly"
        )
    if not 15 <= n <= 4095:
        raise ArgumentError("shor_factor accepts 15 <= N <= 4095")
    rng = np.random.default_rng(seed)
    candidates = [a for a in range(2, n - 1) if math.gcd(a, n) == 1]
    rng.shuffle(candidates)
    for a in candidates[:max_bases]:
        r = quantum_period(a, n, seed=int(rng.integers(0, 2**63)))
        if r % 2:
            continue
        half = modexp(a, r // 2, n)
        if half == n - 1:
            continue
        factors = sorted(
            f for f in (math.gcd(half - 1, n), math.gcd(half + 1, n)) if 1 < f < n
        )
        if factors:
            p = factors[0]
            return (p, n // p)
    raise InconclusiveError(f"no factor of {n} found within {max_bases} bases")


def discrete_log(
    a: int, b: int, n_mod: int, t: int | None = None, seed: int = 0, attempts: int = 24
) -> int:
    """Find s with a^s = b (mod n_mod) via the two-register circuit.

    Both exponent registers share the same width t. Measured pairs
    (m1, m2) approximate (2^t s k / r, 2^t k / r); continued fractions on
    m2 recover (k, r), then s = (m1 r / 2^t) k^{-1} mod r, verified by
    modular exponentiation.
    """
    if math.gcd(a, n_mod) != 1:
        raise NotInvertibleError(f"gcd({a}, {n_mod}) != 1")
    a %= n_mod
    b %= n_mod
    if b == 1:
        return 0
    if t is None:
        t = n_mod.bit_length() + 2
    width = max(n_mod.bit_length(), 1)
    total = 2 * t + width
    circ = Circuit(total)
    for q in range(2 * t):
        circ.h(q)
    work = {q: 2 * t + q for q in range(width)}
    # b^x controlled by the x register, a^y controlled by the y register
    stage_b = controlled_modexp(b, n_mod, t, width)
    stage_a = controlled_modexp(a, n_mod, t, width)
    circ.extend(stage_b.remapped({**{q: q for q in range(t)}, **{t + q: 2 * t + q for q in range(width)}}, total))
    circ.extend(stage_a.remapped({**{q: t + q for q in range(t)}, **{t + q: 2 * t + q for q in range(width)}}, total))
    circ.extend(iqft_circuit(t).remapped({q: q for q in range(t)}, total))
    circ.extend(iqft_circuit(t).remapped({q: t + q for q in range(t)}, total))
    final = run(circ, st.basis_state(1, total))
    dist = st.probabilities(final, list(range(2 * t)))
    labels = sorted(dist)
    weights = np.array([dist[k] for k in labels])
    weights /= weights.sum()
    rng = np.random.default_rng(seed)
    big = 1 << t
    for _ in range(attempts):
        draw = labels[rng.choice(len(labels), p=weights)]
        m1 = int(draw[:t], 2)
        m2 = int(draw[t:], 2)
        if m2 == 0:
            continue
        for conv in continued_fractions(m2, big):
            k, r = conv.numerator, conv.denominator
            if r < 1 or r > n_mod or k == 0:
                continue
            if modexp(a, r, n_mod) != 1:
                continue
            try:
                k_inv = mod_inverse(k, r)
            except NotInvertibleError:
                continue
            s_hat = (round(m1 * r / big) * k_inv) % r
            if modexp(a, s_hat, n_mod) == b:
                return int(s_hat)
    raise InconclusiveError(f"discrete log of {b} base {a} mod {n_mod} not recovered")


@dataclass(frozen=True)
class RsaKeys:
    n: int
    e: int
    d: int
    p: int
    q: int
    phi: int


def rsa(p: int, q: int, e: int, message: int) -> tuple[RsaKeys, int, int]:
    """Key generation, encryption and decryption round trip."""
    if not (is_prime(p) and is_prime(q)):
        raise ArgumentError("p and q must be prime")
    n = p * q
    phi = (p - 1) * (q - 1)
    if math.gcd(e, phi) != 1:
        raise NotInvertibleError(f"gcd(e={e}, phi={phi}) != 1")
    if not 0 <= message < n:
        raise ArgumentError(f"message must satisfy 0 <= M < {n}")
    d = mod_inverse(e, phi)
    cipher = modexp(message, e, n)
    decrypted = modexp(cipher, d, n)
    return RsaKeys(n, e, d, p, q, phi), cipher, decrypted


def order_eigenvector(a: int, n_mod: int, s: int, r: int, width: int) -> np.ndarray:
    """|u_s> = (1/sqrt(r)) sum_k exp(-2 pi i s k / r) |a^k mod N>."""
    vec = np.zeros(1 << width, dtype=complex)
    for k in range(r):
        vec[modexp(a, k, n_mod)] += np.exp(-2j * math.pi * s * k / r)
    return vec / math.sqrt(r)
