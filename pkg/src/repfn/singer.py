"""Perfect difference sets in Z_{p^2+p+1} from the degree-3 extension of GF(p).

For a prime p, powers of a primitive element of GF(p^3) whose coordinate on
x^2 vanishes give a (p+1)-element set D with R_{D,-D}(t) = 1 for every
t != 0.  All field arithmetic is done on coefficient triples mod p; the
construction is deterministic, picking the lexicographically least monic
irreducible cubic and the least primitive element under it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import Group, GroupSubset, VerificationError
from .profiles import rep_diff_profile

DEFAULT_PRIME_BOUND = 1000

Triple = tuple[int, int, int]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldCtx:
    """GF(p^3) presented as GF(p)[x] mod a monic irreducible cubic.

    modulus stores (c, b, a, 1) for x^3 + a*x^2 + b*x + c, coefficients in
    ascending degree; elements are triples (c0, c1, c2) meaning
    c0 + c1*x + c2*x^2.
    """

    p: int
    modulus: tuple[int, int, int, int]
    primitive: Triple


def field_mul(ctx: FieldCtx, u: Triple, v: Triple) -> Triple:
    p = ctx.p
    c, b, a, _ = ctx.modulus
    # Schoolbook product, degree <= 4.
    w = [0] * 5
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                w[i + j] = (w[i + j] + ui * vj) % p
    # Reduce with x^3 = -(a*x^2 + b*x + c), top degree first.
    for d in (4, 3):
        t = w[d]
        if t:
            w[d] = 0
            w[d - 1] = (w[d - 1] - a * t) % p
            w[d - 2] = (w[d - 2] - b * t) % p
            w[d - 3] = (w[d - 3] - c * t) % p
    return (w[0], w[1], w[2])


def field_pow(ctx: FieldCtx, u: Triple, e: int) -> Triple:
    acc: Triple = (1, 0, 0)
    base = u
    while e:
        if e & 1:
            acc = field_mul(ctx, acc, base)
        base = field_mul(ctx, base, base)
        e >>= 1
    return acc


def _is_irreducible_cubic(p: int, a: int, b: int, c: int) -> bool:
    # A cubic over a field is irreducible iff it has no root.
    for t in range(p):
        if (((t + a) * t + b) * t + c) % p == 0:
            return False
    return True


def _element_order_is_full(ctx: FieldCtx, u: Triple, factors: list[int]) -> bool:
    q = ctx.p**3 - 1
    for f in factors:
        if field_pow(ctx, u, q // f) == (1, 0, 0):
            return False
    return True


def field_ctx_build(p: int) -> FieldCtx:
    """Deterministic GF(p^3): least irreducible (a, b, c) lexicographically,
    then the least primitive triple ordered by (c2, c1, c0)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    chosen = None
    for a in range(p):
        for b in range(p):
            for c in range(p):
                if _is_irreducible_cubic(p, a, b, c):
                    chosen = (c, b, a, 1)
                    break
            if chosen:
                break
        if chosen:
            break
    assert chosen is not None  # an irreducible cubic over GF(p) always exists
    ctx = FieldCtx(p, chosen, (0, 0, 0))
    factors = _prime_factors(p**3 - 1)
    for c2 in range(p):
        for c1 in range(p):
            for c0 in range(p):
                u = (c0, c1, c2)
                if u == (0, 0, 0):
                    continue
                if _element_order_is_full(ctx, u, factors):
                    return FieldCtx(p, chosen, u)
    raise VerificationError("no primitive element found; field arithmetic is broken")


@dataclass(frozen=True)
class PerfectDifferenceSet:
    """D in Z_n, n = p^2 + p + 1, with every nonzero difference hit exactly once."""

    p: int
    n: int
    subset: GroupSubset

    @property
    def elements(self) -> list[int]:
        return self.subset.elements()


def singer_set(p: int, *, prime_bound: int = DEFAULT_PRIME_BOUND) -> PerfectDifferenceSet:
    """Build the perfect difference set for the prime p and verify it.

    Walks alpha^i for i in [0, n): scaling by alpha^n multiplies an element
    by a nonzero scalar of the base field, which preserves vanishing of the
    x^2 coordinate, so every membership class is decided inside one period.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > prime_bound:
        raise ValueError(f"prime {p} exceeds the configured bound {prime_bound}")
    ctx = field_ctx_build(p)
    n = p * p + p + 1
    elems = []
    u: Triple = (1, 0, 0)
    for i in range(n):
        if u[2] == 0:
            elems.append(i)
        u = field_mul(ctx, u, ctx.primitive)
    subset = GroupSubset.from_elements(Group.cyclic(n), elems)
    if subset.card != p + 1:
        raise VerificationError(f"expected {p + 1} elements, built {subset.card}")
    diff = rep_diff_profile(subset)
    if diff.counts[0] != p + 1 or any(c != 1 for c in diff.counts[1:]):
        raise VerificationError("difference profile is not identically 1 off zero")
    return PerfectDifferenceSet(p, n, subset)
