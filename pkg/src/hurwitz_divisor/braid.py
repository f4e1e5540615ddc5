"""Braid group actions on Hurwitz tuples and orbit certificates.

The generator Gamma_i sends ``[..., t_i, t_{i+1}, ...]`` to
``[..., t_{i+1}, t_{i+1} t_i t_{i+1}, ...]``; the product of the tuple is
unchanged.  A word is applied right to left, its last letter first.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Sequence

from .symcover import (
    CycleType,
    HurwitzTuple,
    Permutation,
    _transpositions,
    _xi_indices,
    build_sigma0,
    centralizer,
    conjugation_canonical,
    cycle_type,
    representative,
)

__all__ = [
    "BraidWord",
    "OrbitReport",
    "OrbitMemoryExceeded",
    "act_generator",
    "act_inverse_generator",
    "act_word",
    "pure_braid_generators",
    "full_braid_generators",
    "word_permutation",
    "orbits",
    "certify_pure_braid_transitivity",
    "gamma_cubed_fixes_overlapping",
    "canonical_sigma0",
    "DEFAULT_STATE_CAP",
]

DEFAULT_STATE_CAP = 10**7

FULL = "full-braid"
PURE = "pure-braid"


class OrbitMemoryExceeded(RuntimeError):
    """The orbit search would store more states than allowed.

    ``partial`` holds the orbit sizes completed before the cap was hit.
    """

    def __init__(self, message: str, partial: Sequence[int] = ()):
        super().__init__(message)
        self.partial = tuple(partial)


def state_cap(explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("HDL_STATE_CAP")
    return int(env) if env else DEFAULT_STATE_CAP


@dataclass(frozen=True)
class BraidWord:
    """Signed generator indices: ``+i`` is Gamma_i, ``-i`` its inverse."""

    letters: tuple[int, ...]
    strands: int

    def __post_init__(self) -> None:
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise ValueError(f"generator index {x} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple(-x for x in reversed(self.letters)), self.strands)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ValueError("strand count mismatch")
        return BraidWord(self.letters + other.letters, self.strands)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"G{x}" if x > 0 else f"G{-x}^-1" for x in self.letters)


def word_permutation(word: BraidWord) -> tuple[int, ...]:
    """Permutation of strand positions induced by ``word`` (0-based images)."""
    perm = list(range(word.strands))
    for x in reversed(word.letters):
        i = abs(x) - 1
        perm = [i + 1 if p == i else i if p == i + 1 else p for p in perm]
    return tuple(perm)


# ---------------------------------------------------------------------------
# Action on tuples
# ---------------------------------------------------------------------------
# Internally a tuple is a tuple of 0-based sorted pairs (a, b).


def _conj(t: tuple[int, int], s: tuple[int, int]) -> tuple[int, int]:
    """s t s for transpositions s, t."""
    u, v = s

    def img(x: int) -> int:
        return v if x == u else u if x == v else x

    x, y = img(t[0]), img(t[1])
    return (x, y) if x < y else (y, x)


def _gamma(state: tuple, i: int) -> tuple:
    ti, tj = state[i - 1], state[i]
    return state[: i - 1] + (tj, _conj(ti, tj)) + state[i + 1 :]


def _gamma_inv(state: tuple, i: int) -> tuple:
    ti, tj = state[i - 1], state[i]
    return state[: i - 1] + (_conj(tj, ti), ti) + state[i + 1 :]


def _apply_word(state: tuple, letters: Sequence[int]) -> tuple:
    for x in reversed(letters):
        state = _gamma(state, x) if x > 0 else _gamma_inv(state, -x)
    return state


def _to_state(t: HurwitzTuple) -> tuple:
    return tuple((a - 1, b - 1) for a, b in t.pairs())


def _from_state(d: int, state: tuple) -> HurwitzTuple:
    return HurwitzTuple.from_pairs(d, ((a + 1, b + 1) for a, b in state))


def _check_index(i: int, b: int) -> None:
    if not 1 <= i <= b - 1:
        raise IndexError(f"generator index {i} out of range 1..{b - 1}")


def act_generator(i: int, t: HurwitzTuple) -> HurwitzTuple:
    _check_index(i, t.b)
    return _from_state(t.d, _gamma(_to_state(t), i))


def act_inverse_generator(i: int, t: HurwitzTuple) -> HurwitzTuple:
    _check_index(i, t.b)
    return _from_state(t.d, _gamma_inv(_to_state(t), i))


def act_word(word: BraidWord, t: HurwitzTuple) -> HurwitzTuple:
    if word.strands != t.b:
        raise ValueError(f"word on {word.strands} strands applied to a {t.b}-tuple")
    return _from_state(t.d, _apply_word(_to_state(t), word.letters))


def full_braid_generators(b: int) -> list[BraidWord]:
    return [BraidWord((i,), b) for i in range(1, b)]


def pure_braid_generators(b: int) -> list[BraidWord]:
    """A_{rs} = G_{s-1} ... G_{r+1} G_r^2 G_{r+1}^-1 ... G_{s-1}^-1, 1 <= r < s <= b."""
    if b < 2:
        raise ValueError("need at least two strands")
    words = []
    for r in range(1, b):
        for s in range(r + 1, b + 1):
            up = tuple(range(s - 1, r, -1))
            words.append(BraidWord(up + (r, r) + tuple(-x for x in reversed(up)), b))
    return words


def gamma_cubed_fixes_overlapping(t: HurwitzTuple, i: int) -> bool:
    """Whether Gamma_i^3 leaves entries i, i+1 of ``t`` unchanged."""
    _check_index(i, t.b)
    state = _to_state(t)
    moved = _gamma(_gamma(_gamma(state, i), i), i)
    return moved[i - 1 : i + 1] == state[i - 1 : i + 1]


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitReport:
    d: int
    b: int
    phi: str
    phi_type: str
    generators: str
    quotient: bool
    orbit_count: int
    orbit_sizes: tuple[int, ...]
    total_tuples: int
    transitive: bool
    nodes: int
    edges: int
    sigma0: Optional[str] = None
    sigma0_in_orbit: Optional[bool] = None

    def to_json(self) -> dict:
        data = asdict(self)
        data["orbit_sizes"] = list(self.orbit_sizes)
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _generator_letters(b: int, generators: str) -> list[tuple[int, ...]]:
    if b < 2:
        return []
    if generators == FULL:
        words = full_braid_generators(b)
    elif generators == PURE:
        words = pure_braid_generators(b)
    else:
        raise ValueError(f"unknown generator set {generators!r}; use {FULL!r} or {PURE!r}")
    out = []
    for w in words:
        out.append(w.letters)
        out.append(w.inverse().letters)
    return out


def _orbit_bfs(
    start: tuple,
    moves: list[tuple[int, ...]],
    canon: Callable[[tuple], tuple],
    product_ok: Callable[[tuple], bool],
    workers: int,
    pool: Optional[ThreadPoolExecutor],
    budget: list[int],
    cap: int,
    done: Sequence[int],
) -> tuple[list[tuple], int]:
    """Level-synchronous BFS; returns (orbit states in discovery order, edges)."""
    seen = {start}
    order = [start]
    frontier = [start]
    edges = 0

    def expand(chunk: list[tuple]) -> list[tuple]:
        out = []
        for s in chunk:
            for letters in moves:
                n = canon(_apply_word(s, letters))
                if not product_ok(n):
                    raise ArithmeticError(f"braid move changed the product of {s}")
                out.append(n)
        return out

    while frontier:
        if pool is not None and len(frontier) > 1:
            size = -(-len(frontier) // workers)
            chunks = [frontier[i : i + size] for i in range(0, len(frontier), size)]
            results = [n for part in pool.map(expand, chunks) for n in part]
        else:
            results = expand(frontier)
        edges += len(results)
        nxt = []
        for n in results:
            if n not in seen:
                seen.add(n)
                order.append(n)
                nxt.append(n)
                budget[0] += 1
                if budget[0] > cap:
                    raise OrbitMemoryExceeded(
                        f"orbit search stored more than {cap} states "
                        "(set HDL_STATE_CAP or pass a larger cap)",
                        partial=done,
                    )
        frontier = nxt
    return order, edges


def orbits(
    d: int,
    b: int,
    phi: Permutation,
    generators: str = FULL,
    *,
    quotient: bool = False,
    workers: int = 1,
    ceiling: int | None = None,
    cap: int | None = None,
    sigma0: Optional[HurwitzTuple] = None,
) -> OrbitReport:
    """Partition Xi^{d,b}_phi into orbits of the full or pure braid group.

    With ``quotient`` the tuples are first identified up to simultaneous
    conjugation by the centralizer of ``phi`` (cover-level orbits).  The
    report is identical for any ``workers`` value.
    """
    limit = state_cap(cap)
    moves = _generator_letters(b, generators)
    trans = _transpositions(d)
    xi = [tuple(trans[i] for i in idx) for idx in _xi_indices(d, b, phi, ceiling, workers)]

    if quotient:
        group = centralizer(phi, ceiling=ceiling)

        def canon(s: tuple) -> tuple:
            return conjugation_canonical(s, group)

        universe = sorted({canon(s) for s in xi})
    else:

        def canon(s: tuple) -> tuple:
            return s

        universe = xi  # already lexicographic
    members = set(universe)
    target = phi.images

    def product_ok(s: tuple) -> bool:
        prod = list(range(d))
        for a, c in s:
            prod[a], prod[c] = prod[c], prod[a]
        if quotient:
            return sorted(_cycle_lengths(prod)) == sorted(_cycle_lengths(target))
        return tuple(prod) == target

    sizes: list[int] = []
    assigned: dict[tuple, int] = {}
    edges = 0
    budget = [0]
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for s in universe:
            if s in assigned:
                continue
            budget[0] += 1
            orbit, e = _orbit_bfs(s, moves, canon, product_ok, workers, pool, budget, limit, sizes)
            edges += e
            for n in orbit:
                if n not in members:
                    raise ArithmeticError(f"orbit left Xi: {n}")
                assigned[n] = len(sizes)
            sizes.append(len(orbit))
    finally:
        if pool is not None:
            pool.shutdown()

    s0_str = None
    s0_in = None
    if sigma0 is not None:
        s0 = canon(_to_state(sigma0))
        s0_str = str(sigma0)
        s0_in = len(sizes) == 1 and s0 in assigned

    return OrbitReport(
        d=d,
        b=b,
        phi=str(phi),
        phi_type=str(cycle_type(phi)),
        generators=generators,
        quotient=quotient,
        orbit_count=len(sizes),
        orbit_sizes=tuple(sizes),
        total_tuples=len(universe),
        transitive=len(sizes) == 1,
        nodes=len(assigned),
        edges=edges,
        sigma0=s0_str,
        sigma0_in_orbit=s0_in,
    )


def _cycle_lengths(images: Sequence[int]) -> list[int]:
    seen = [False] * len(images)
    out = []
    for s in range(len(images)):
        if not seen[s]:
            n = 0
            x = s
            while not seen[x]:
                seen[x] = True
                x = images[x]
                n += 1
            out.append(n)
    return out


def canonical_sigma0(mu: CycleType, d: int, b: int) -> Optional[HurwitzTuple]:
    """Canonical tuple whose product is the representative of ``mu``, if one is defined."""
    parts = mu.parts
    nontrivial = tuple(x for x in parts if x > 1)
    try:
        if nontrivial == (3,):
            return build_sigma0("triple", d, b)
        if nontrivial == (2, 2):
            return build_sigma0("two-two", d, b)
    except ValueError:
        return None
    return None


def certify_pure_braid_transitivity(
    d: int,
    b: int,
    mu: CycleType | Sequence[int],
    *,
    workers: int = 1,
    ceiling: int | None = None,
    cap: int | None = None,
    sigma0: Optional[HurwitzTuple] = None,
) -> OrbitReport:
    """Pure-braid orbit report for the canonical phi of type ``mu``.

    When ``sigma0`` is omitted the canonical tuple for (123) or
    (12)(34) is used where it exists; its product must equal phi.
    """
    if not isinstance(mu, CycleType):
        mu = CycleType(tuple(mu))
    if mu.degree != d:
        raise ValueError(f"cycle type {mu} is not a partition of {d}")
    phi = representative(mu)
    if sigma0 is None:
        sigma0 = canonical_sigma0(mu, d, b)
    if sigma0 is not None and sigma0.product != phi:
        raise ValueError(f"sigma_0 multiplies to {sigma0.product}, not {phi}")
    return orbits(d, b, phi, PURE, workers=workers, ceiling=ceiling, cap=cap, sigma0=sigma0)
