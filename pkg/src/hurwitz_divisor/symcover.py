"""Permutations, transposition factorizations and cover counts.

Composition convention: ``(p * q)(x) = p(q(x))``, the rightmost factor acts
first.  Under it ``(1 3) * (1 2) == (1 2 3)``, so the canonical tuples built
by :func:`build_sigma0` multiply to the intended permutation literally; the
opposite convention would give the inverse.

Points are labelled ``1..d`` in the public API and ``0..d-1`` internally.
"""
from __future__ import annotations

import itertools
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "CycleType",
    "HurwitzTuple",
    "BranchData",
    "EnumerationTooLarge",
    "InvalidBranchData",
    "compose",
    "cycle_type",
    "parse_partition",
    "format_partition",
    "representative",
    "enumerate_xi",
    "centralizer",
    "count_covers",
    "riemann_hurwitz_genus",
    "build_sigma0",
    "sigma0_target",
    "minimal_sigma0_length",
    "SIGMA0_VARIANTS",
    "conjugation_canonical",
    "generates_symmetric_group",
    "node_ceiling",
    "DEFAULT_NODE_CEILING",
]

DEFAULT_NODE_CEILING = 10**8


class EnumerationTooLarge(RuntimeError):
    """Raised when a search would exceed its configured node ceiling."""


class InvalidBranchData(ValueError):
    pass


def node_ceiling(explicit: int | None = None) -> int:
    """Resolve the enumeration ceiling; ``HDL_NODE_CEILING`` overrides the default."""
    if explicit is not None:
        return explicit
    env = os.environ.get("HDL_NODE_CEILING")
    if env:
        return int(env)
    return DEFAULT_NODE_CEILING


class Permutation:
    """A bijection of {1..d}, stored as a 0-based image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(range(d))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Permutation":
        return cls(x - 1 for x in images)

    @classmethod
    def transposition(cls, a: int, b: int, d: int) -> "Permutation":
        if a == b or not (1 <= a <= d and 1 <= b <= d):
            raise ValueError(f"invalid transposition ({a} {b}) in S_{d}")
        img = list(range(d))
        img[a - 1], img[b - 1] = b - 1, a - 1
        return cls(img)

    @classmethod
    def from_cycles(cls, cycles: str | Iterable[Iterable[int]], d: int | None = None) -> "Permutation":
        """Build from cycle notation, e.g. ``"(1 2 3)(4 5)"`` or ``[[1, 2, 3], [4, 5]]``.

        ``d`` defaults to the largest point mentioned; ``"()"`` is the identity.
        """
        if isinstance(cycles, str):
            cycles = _parse_cycles(cycles)
        cycles = [list(c) for c in cycles]
        seen = [x for c in cycles for x in c]
        if len(seen) != len(set(seen)):
            raise ValueError(f"cycles are not disjoint: {cycles}")
        if any(x < 1 for x in seen):
            raise ValueError("points are labelled from 1")
        top = max(seen, default=0)
        if d is None:
            d = top
        if top > d:
            raise ValueError(f"point {top} exceeds degree {d}")
        img = list(range(d))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b - 1
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        """Image of the 1-based point ``x``."""
        return self.images[x - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, y in enumerate(self.images):
            inv[y] = i
        return Permutation(inv)

    def conjugate_by(self, g: "Permutation") -> "Permutation":
        """``g * self * g^-1``."""
        out = [0] * len(self.images)
        for i, y in enumerate(self.images):
            out[g.images[i]] = g.images[y]
        return Permutation(out)

    def cycles(self, *, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(i == y for i, y in enumerate(self.images))

    def is_transposition(self) -> bool:
        return sum(1 for i, y in enumerate(self.images) if i != y) == 2

    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, y in enumerate(self.images) if i != y)

    def sign(self) -> int:
        return -1 if (self.degree - len(self.cycles(include_fixed=True))) % 2 else 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation.from_cycles({str(self)!r}, d={self.degree})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycles(text: str) -> list[list[int]]:
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty cycle string")
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        if not tokens:
            continue
        try:
            cycles.append([int(t) for t in tokens])
        except ValueError:
            raise ValueError(f"malformed cycle notation: {text!r}") from None
    return cycles


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``(p * q)(x) = p(q(x))``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    pi = p.images
    return Permutation(pi[y] for y in q.images)


@dataclass(frozen=True, order=True)
class CycleType:
    """A partition of d, parts in weakly decreasing order."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(sorted((int(x) for x in self.parts), reverse=True))
        if not parts or parts[-1] < 1:
            raise ValueError(f"a partition needs positive parts, got {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return format_partition(self.parts)


def parse_partition(text: str) -> CycleType:
    """Parse ``"3,1,1"`` (spaces also accepted)."""
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    if not tokens:
        raise ValueError("empty partition")
    try:
        return CycleType(tuple(int(t) for t in tokens))
    except ValueError:
        raise ValueError(f"malformed partition: {text!r}") from None


def format_partition(parts: Iterable[int]) -> str:
    return ",".join(map(str, parts))


def cycle_type(p: Permutation) -> CycleType:
    return CycleType(tuple(len(c) for c in p.cycles(include_fixed=True)))


def representative(mu: CycleType | Sequence[int]) -> Permutation:
    """Canonical permutation of a cycle type: consecutive points, largest part first."""
    if not isinstance(mu, CycleType):
        mu = CycleType(tuple(mu))
    cycles = []
    start = 1
    for part in mu.parts:
        cycles.append(list(range(start, start + part)))
        start += part
    return Permutation.from_cycles(cycles, mu.degree)


@dataclass(frozen=True)
class HurwitzTuple:
    """An ordered tuple of transpositions in S_d with its cached product."""

    d: int
    entries: tuple[Permutation, ...]
    product: Permutation = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        for t in entries:
            if t.degree != self.d:
                raise ValueError(f"entry {t} does not act on {self.d} points")
            if not t.is_transposition():
                raise ValueError(f"entry {t} is not a transposition")
        object.__setattr__(self, "entries", entries)
        prod = list(range(self.d))
        for t in entries:
            a, b = t.support()
            prod[a - 1], prod[b - 1] = prod[b - 1], prod[a - 1]
        object.__setattr__(self, "product", Permutation(prod))

    @classmethod
    def from_pairs(cls, d: int, pairs: Iterable[tuple[int, int]]) -> "HurwitzTuple":
        return cls(d, tuple(Permutation.transposition(a, b, d) for a, b in pairs))

    @property
    def b(self) -> int:
        return len(self.entries)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(t.support() for t in self.entries)  # type: ignore[misc]

    def generates(self) -> bool:
        return generates_symmetric_group(self.d, self.pairs())

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "[" + ", ".join(str(t) for t in self.entries) + "]"


def generates_symmetric_group(d: int, pairs: Iterable[tuple[int, int]]) -> bool:
    """Transpositions generate S_d iff their support graph on {1..d} is connected."""
    parent = list(range(d + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = d
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            components -= 1
    return components == 1


# ---------------------------------------------------------------------------
# Enumeration of Xi^{d,b}_phi
# ---------------------------------------------------------------------------


def _transpositions(d: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(d), 2))


def _count_cycles(images: Sequence[int]) -> int:
    seen = [False] * len(images)
    n = 0
    for s in range(len(images)):
        if not seen[s]:
            n += 1
            x = s
            while not seen[x]:
                seen[x] = True
                x = images[x]
    return n


class _Budget:
    def __init__(self, ceiling: int):
        self.ceiling = ceiling
        self.visited = 0

    def tick(self) -> None:
        self.visited += 1
        if self.visited > self.ceiling:
            raise EnumerationTooLarge(
                f"enumeration exceeded the node ceiling of {self.ceiling} "
                "(set HDL_NODE_CEILING or pass a larger ceiling)"
            )


def _search(
    d: int,
    b: int,
    target: tuple[int, ...],
    prefix: tuple[int, ...],
    trans: list[tuple[int, int]],
    budget: _Budget,
) -> Iterator[tuple[int, ...]]:
    """Depth-first search over transposition indices extending ``prefix``.

    Prunes with the transposition distance from the prefix product to the
    target (must fit, with matching parity, in the remaining slots) and with
    the number of connected components of the support graph.
    """
    prod = list(range(d))
    label = list(range(d))
    for idx in prefix:
        a, c = trans[idx]
        prod[a], prod[c] = prod[c], prod[a]
        la, lc = label[a], label[c]
        if la != lc:
            label = [la if x == lc else x for x in label]

    def rec(prod: list[int], label: list[int], depth: int, acc: list[int]):
        budget.tick()
        remaining = b - depth
        # distance from prod to target: d - cycles(prod^-1 * target)
        inv = [0] * d
        for i, y in enumerate(prod):
            inv[y] = i
        dist = d - _count_cycles([inv[y] for y in target])
        if dist > remaining or (remaining - dist) % 2:
            return
        if len(set(label)) - 1 > remaining:
            return
        if remaining == 0:
            yield tuple(acc)
            return
        for idx, (a, c) in enumerate(trans):
            nprod = prod[:]
            nprod[a], nprod[c] = nprod[c], nprod[a]
            la, lc = label[a], label[c]
            nlabel = label if la == lc else [la if x == lc else x for x in label]
            acc.append(idx)
            yield from rec(nprod, nlabel, depth + 1, acc)
            acc.pop()

    yield from rec(prod, label, len(prefix), list(prefix))


def _xi_indices(
    d: int, b: int, phi: Permutation, ceiling: int | None = None, workers: int = 1
) -> list[tuple[int, ...]]:
    if b < 1:
        raise ValueError("b must be at least 1")
    if phi.degree != d:
        raise ValueError(f"phi acts on {phi.degree} points, expected {d}")
    if d < 2:
        return []
    if phi.sign() != (-1) ** b:
        return []
    trans = _transpositions(d)
    target = phi.images
    limit = node_ceiling(ceiling)
    if workers <= 1:
        return list(_search(d, b, target, (), trans, _Budget(limit)))

    # Partition by first entry; each partition is searched independently and
    # merged in first-entry order, which is also the sequential output order.
    def run(first: int) -> list[tuple[int, ...]]:
        return list(_search(d, b, target, (first,), trans, _Budget(limit)))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run, range(len(trans))))
    return [t for part in parts for t in part]


def enumerate_xi(
    d: int, b: int, phi: Permutation, *, ceiling: int | None = None, workers: int = 1
) -> tuple[HurwitzTuple, ...]:
    """All b-tuples of transpositions generating S_d with product ``phi``.

    Returned in lexicographic order of the entries (transpositions ordered
    as pairs).  A parity mismatch gives an empty result.
    """
    trans = [(a + 1, c + 1) for a, c in _transpositions(d)]
    return tuple(
        HurwitzTuple.from_pairs(d, (trans[i] for i in idx))
        for idx in _xi_indices(d, b, phi, ceiling, workers)
    )


def centralizer(phi: Permutation, *, ceiling: int | None = None) -> tuple[Permutation, ...]:
    """All g in S_d with g phi g^-1 = phi, by exhaustive search over S_d."""
    d = phi.degree
    limit = node_ceiling(ceiling)
    if math.factorial(d) > limit:
        raise EnumerationTooLarge(f"|S_{d}| = {math.factorial(d)} exceeds the ceiling {limit}")
    out = []
    for images in itertools.permutations(range(d)):
        g = Permutation(images)
        if phi.conjugate_by(g) == phi:
            out.append(g)
    return tuple(out)


def _conjugate_pairs(pairs: tuple[tuple[int, int], ...], g: Sequence[int]) -> tuple:
    out = []
    for a, c in pairs:
        x, y = g[a], g[c]
        out.append((x, y) if x < y else (y, x))
    return tuple(out)


def conjugation_canonical(pairs: tuple[tuple[int, int], ...], group: Sequence[Permutation]) -> tuple:
    """Least representative of ``pairs`` (0-based) under simultaneous conjugation."""
    return min(_conjugate_pairs(pairs, g.images) for g in group)


def count_covers(
    d: int, b: int, mu: CycleType | Sequence[int], *, ceiling: int | None = None, workers: int = 1
) -> int:
    """Number of G_phi-orbits on Xi^{d,b}_phi for the canonical phi of type ``mu``."""
    if not isinstance(mu, CycleType):
        mu = CycleType(tuple(mu))
    if mu.degree != d:
        raise ValueError(f"cycle type {mu} is not a partition of {d}")
    phi = representative(mu)
    group = centralizer(phi, ceiling=ceiling)
    trans = _transpositions(d)
    reps = set()
    for idx in _xi_indices(d, b, phi, ceiling, workers):
        reps.add(conjugation_canonical(tuple(trans[i] for i in idx), group))
    return len(reps)


@dataclass(frozen=True)
class BranchData:
    d: int
    profiles: tuple[CycleType, ...]

    def __post_init__(self) -> None:
        profiles = tuple(p if isinstance(p, CycleType) else CycleType(tuple(p)) for p in self.profiles)
        for p in profiles:
            if p.degree != self.d:
                raise InvalidBranchData(f"profile {p} does not partition {self.d}")
        object.__setattr__(self, "profiles", profiles)


def riemann_hurwitz_genus(data: BranchData) -> int:
    """Genus g of the cover from 2g - 2 = -2d + sum of ramification (part - 1)."""
    ram = sum(part - 1 for p in data.profiles for part in p.parts)
    twice = -2 * data.d + ram + 2
    if twice % 2 or twice < 0:
        raise InvalidBranchData(
            f"branch data of degree {data.d} with total ramification {ram} "
            f"gives 2g = {twice}, not a nonnegative even number"
        )
    return twice // 2


# ---------------------------------------------------------------------------
# Canonical tuples sigma_0
# ---------------------------------------------------------------------------

SIGMA0_VARIANTS = ("triple", "two-two", "factor1", "factor2")


def sigma0_target(variant: str, d: int, *, k: int = 0, j: int = 0, c: int = 0) -> Permutation:
    """Product the canonical tuple of ``variant`` must have."""
    if variant == "triple":
        return Permutation.from_cycles("(1 2 3)", d)
    if variant == "two-two":
        return Permutation.from_cycles("(1 2)(3 4)", d)
    if variant in ("factor1", "factor2"):
        return Permutation.from_cycles([list(range(1, j + 2 - 2 * c))], d)
    raise ValueError(f"unknown sigma_0 variant {variant!r}")


def _sigma0_pairs(variant: str, d: int | None, b: int | None, k: int, j: int, c: int):
    if variant == "triple":
        if d is None or b is None:
            raise ValueError("triple needs d and b")
        if d < 3:
            raise ValueError("triple needs d >= 3")
        pairs = [(1, 3), (1, 2)]
        if d == 3:
            tail, tail_pair = b - 2, (1, 3)
        else:
            for m in range(4, d):
                pairs += [(1, m), (1, m)]
            tail, tail_pair = b - 2 * (d - 3), (1, d)
        return d, b, pairs, tail, tail_pair
    if variant == "two-two":
        if d is None or b is None:
            raise ValueError("two-two needs d and b")
        if d < 4:
            raise ValueError("two-two needs d >= 4")
        pairs = [(1, 2), (1, 3), (1, 3), (3, 4)]
        for m in range(4, d):
            pairs += [(1, m), (1, m)]
        return d, b, pairs, b - 2 * (d - 2), (1, d)
    if variant in ("factor1", "factor2"):
        if not (1 <= j <= k and 0 <= c <= j // 2):
            raise ValueError(f"need 1 <= j <= k and 0 <= c <= j/2, got k={k}, j={j}, c={c}")
        if variant == "factor1":
            dd, bb, npairs = k + 1 - c, 6 * k - 3 * j, k - j + c
        else:
            dd, bb, npairs = j + 1 - c, 3 * j, c
        if d is not None and d != dd:
            raise ValueError(f"{variant} with k={k}, j={j}, c={c} has degree {dd}, not {d}")
        if b is not None and b != bb:
            raise ValueError(f"{variant} with k={k}, j={j}, c={c} has length {bb}, not {b}")
        # (1, j+1-2c), ..., (1, 2), then doubled (1, j+2-2c+mu), then (1 2) fill
        pairs = [(1, j + 2 - 2 * c - nu) for nu in range(1, j - 2 * c + 1)]
        for mu in range(npairs):
            pairs += [(1, j + 2 - 2 * c + mu)] * 2
        return dd, bb, pairs, bb - len(pairs), (1, 2)
    raise ValueError(f"unknown sigma_0 variant {variant!r}")


def build_sigma0(
    variant: str,
    d: int | None = None,
    b: int | None = None,
    *,
    k: int = 0,
    j: int = 0,
    c: int = 0,
) -> HurwitzTuple:
    """The explicit base tuple used to certify transitivity.

    ``triple``: ``[(13),(12),(14),(14),...,(1 d-1),(1 d-1),(1d),...,(1d)]``
    with product (123).  ``two-two``: ``[(12),(13),(13),(34),(14),(14),...,
    (1d),...,(1d)]`` with product (12)(34).  ``factor1``/``factor2`` are the
    two sides of the E_{j,c} splitting, parameterised by ``k, j, c`` (the
    degree and length follow from them) with product (1 2 ... j+1-2c).

    The repeated trailing transposition must occur a nonnegative even number
    of times and the tuple must generate S_d; otherwise ValueError.  For d=3
    the triple tail repeats (13) after the leading pair.
    """
    d, b, pairs, tail, tail_pair = _sigma0_pairs(variant, d, b, k, j, c)
    if tail < 0 or tail % 2:
        raise ValueError(
            f"{variant} sigma_0 with d={d}, b={b}: trailing {tail_pair} would appear "
            f"{tail} times, need a nonnegative even count"
        )
    pairs = pairs + [tail_pair] * tail
    t = HurwitzTuple.from_pairs(d, pairs)
    if not t.generates():
        raise ValueError(f"{variant} sigma_0 with d={d}, b={b} does not generate S_{d}")
    target = sigma0_target(variant, d, k=k, j=j, c=c)
    if t.product != target:
        raise ArithmeticError(f"{variant} sigma_0 multiplies to {t.product}, expected {target}")
    return t


def minimal_sigma0_length(variant: str, d: int) -> int:
    """Smallest b for which :func:`build_sigma0` succeeds (triple/two-two)."""
    for b in range(1, 4 * d + 8):
        try:
            build_sigma0(variant, d, b)
        except ValueError:
            continue
        return b
    raise ValueError(f"no admissible length for {variant} in degree {d}")
