"""Exact representation-function profiles over finite abelian groups.

R_{A,B}(g) counts ordered pairs (a, b) in A x B with a + b = g.  Two exact
routes are provided: a vectorized pair-enumeration baseline and a packed
big-integer multiplication that realizes the cyclic convolution in one
arbitrary-precision product.  Both return identical integer counts; the
fast route can be asked to cross-check itself against the baseline.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .groups import Group, GroupMismatchError, GroupSubset, VerificationError

# Below this group order the packed multiply does not pay for its setup.
FAST_ORDER_THRESHOLD = 512

_CHUNK = 1 << 16


def _coord_arrays(group: Group, idx: np.ndarray) -> list[np.ndarray]:
    # Row-major decode of many flat indices at once, last coordinate fastest.
    coords: list[np.ndarray] = []
    rest = idx.astype(np.int64, copy=True)
    for mi in reversed(group.orders):
        coords.append(rest % mi)
        rest //= mi
    coords.reverse()
    return coords


def rep_profile_naive(a: GroupSubset, b: GroupSubset | None = None) -> "RepProfile":
    """Exact R_{A,B} by enumerating all |A|*|B| pairs (vectorized in chunks)."""
    if b is None:
        b = a
    if b.group != a.group:
        raise GroupMismatchError("profile of subsets of different groups")
    group = a.group
    counts = np.zeros(group.order, dtype=np.int64)
    ea = np.asarray(a.elements(), dtype=np.int64)
    eb = np.asarray(b.elements(), dtype=np.int64)
    if ea.size and eb.size:
        step = max(1, _CHUNK // eb.size)
        if group.is_cyclic:
            m = group.orders[0]
            for lo in range(0, ea.size, step):
                block = (ea[lo : lo + step, None] + eb[None, :]) % m
                counts += np.bincount(block.ravel(), minlength=m)
        else:
            ca = _coord_arrays(group, ea)
            cb = _coord_arrays(group, eb)
            for lo in range(0, ea.size, step):
                flat = np.zeros((min(step, ea.size - lo), eb.size), dtype=np.int64)
                for xa, xb, mi in zip(ca, cb, group.orders):
                    flat = flat * mi + (xa[lo : lo + step, None] + xb[None, :]) % mi
                counts += np.bincount(flat.ravel(), minlength=group.order)
    return RepProfile(group, tuple(int(c) for c in counts))


def _pack(elems: list[tuple[int, ...]], strides: list[int], total: int, width: int) -> int:
    buf = bytearray(total * width)
    for coords in elems:
        pos = 0
        for c, s in zip(coords, strides):
            pos += c * s
        buf[pos * width] = 1
    return int.from_bytes(buf, "little")


def _convolve_packed(a: GroupSubset, b: GroupSubset) -> np.ndarray:
    """Exact linear convolution of the two indicator arrays via one big-int
    multiply, followed by per-axis cyclic folding.  Slot width is chosen so
    coefficients (bounded by min(|A|,|B|)) can never carry across slots."""
    group = a.group
    bound = min(a.card, b.card)
    width = 1
    while (1 << (8 * width)) <= bound:
        width *= 2
    if width > 4:
        raise VerificationError("convolution coefficients exceed 32-bit slots")

    # Linear radices 2*m_i - 1 leave room for index sums before folding.
    radices = [2 * mi - 1 for mi in group.orders]
    strides = [0] * len(radices)
    acc = 1
    for i in range(len(radices) - 1, -1, -1):
        strides[i] = acc
        acc *= radices[i]
    total = acc

    ca = [a.group.decode(e) for e in a.elements()]
    cb = [b.group.decode(e) for e in b.elements()]
    prod = _pack(ca, strides, total, width) * _pack(cb, strides, total, width)
    raw = prod.to_bytes(total * width, "little")
    dtype = {1: "<u1", 2: "<u2", 4: "<u4"}[width]
    arr = np.frombuffer(raw, dtype=dtype).astype(np.int64).reshape(radices)

    for axis, mi in enumerate(group.orders):
        if mi == 1:
            continue
        head = arr[(slice(None),) * axis + (slice(0, mi),)]
        tail = arr[(slice(None),) * axis + (slice(mi, 2 * mi - 1),)]
        head[(slice(None),) * axis + (slice(0, mi - 1),)] += tail
        arr = head
    return arr.reshape(group.order)


def rep_profile_fast(
    a: GroupSubset, b: GroupSubset | None = None, *, cross_check: bool = False
) -> "RepProfile":
    """Exact R_{A,B} via packed multiplication; optionally re-verified
    against the pair-enumeration baseline."""
    if b is None:
        b = a
    if b.group != a.group:
        raise GroupMismatchError("profile of subsets of different groups")
    counts = _convolve_packed(a, b)
    profile = RepProfile(a.group, tuple(int(c) for c in counts))
    if cross_check:
        baseline = rep_profile_naive(a, b)
        if baseline.counts != profile.counts:
            raise VerificationError("packed convolution disagrees with baseline")
    return profile


def rep_profile(
    a: GroupSubset,
    b: GroupSubset | None = None,
    *,
    method: str = "auto",
    cross_check: bool = False,
) -> "RepProfile":
    """Dispatch between the exact routes.  method: auto | naive | fast."""
    if method == "naive":
        profile = rep_profile_naive(a, b)
        if cross_check:
            fast = rep_profile_fast(a, b)
            if fast.counts != profile.counts:
                raise VerificationError("baseline disagrees with packed convolution")
        return profile
    if method == "fast":
        return rep_profile_fast(a, b, cross_check=cross_check)
    if method == "auto":
        if a.group.order >= FAST_ORDER_THRESHOLD:
            return rep_profile_fast(a, b, cross_check=cross_check)
        profile = rep_profile_naive(a, b)
        if cross_check:
            fast = rep_profile_fast(a, b)
            if fast.counts != profile.counts:
                raise VerificationError("baseline disagrees with packed convolution")
        return profile
    raise ValueError(f"unknown method {method!r}")


def rep_diff_profile(
    a: GroupSubset, *, method: str = "auto", cross_check: bool = False
) -> "RepProfile":
    """R_{A,-A}: counts of ordered pairs with a - a' = g."""
    return rep_profile(a, a.negate(), method=method, cross_check=cross_check)


@dataclass(frozen=True)
class RepProfile:
    """Exact counts R(g) for every flat index g of the group."""

    group: Group
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.group.order:
            raise ValueError("profile length must equal the group order")

    def __getitem__(self, g: int) -> int:
        return self.counts[self.group.check_element(g)]

    @cached_property
    def max_rep(self) -> int:
        return max(self.counts)

    def mass(self) -> int:
        """Total count over the group; equals |A|*|B|."""
        return sum(self.counts)

    def level_set(self, i: int) -> list[int]:
        """All g with R(g) = i, ascending."""
        return [g for g, c in enumerate(self.counts) if c == i]

    def spectrum(self) -> "RepSpectrum":
        hist: dict[int, int] = {}
        for c in self.counts:
            hist[c] = hist.get(c, 0) + 1
        return RepSpectrum(hist, self.max_rep)


@dataclass(frozen=True)
class RepSpectrum:
    """Histogram |S_i| = #{g : R(g) = i}, keyed by the count i."""

    histogram: dict[int, int]
    max_rep: int

    def __getitem__(self, i: int) -> int:
        return self.histogram.get(i, 0)

    def support(self) -> list[int]:
        return sorted(self.histogram)


def spectrum(a: GroupSubset, b: GroupSubset | None = None, *, method: str = "auto") -> RepSpectrum:
    return rep_profile(a, b, method=method).spectrum()
