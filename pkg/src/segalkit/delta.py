"""Combinatorics of the simplex category and its truncations.

Monotone maps between finite linear orders [m] = {0 < ... < m}, their
enumeration, the face selectors picking out a vertex subset, the unique
surjection/injection factorisation, and order reversal.  Everything here is
exact and exhaustively checkable; the rest of the package treats a monotone
map as the *name* of a simplicial operator.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .errors import InvalidSubset


_AFTER_CACHE = {}


@dataclass(frozen=True, order=True, eq=True)
class MonotoneMap:
    """A weakly increasing map [src] -> [tgt], stored as its value table."""

    src: int
    tgt: int
    values: tuple

    def __post_init__(self):
        if self.src < 0 or self.tgt < 0:
            raise ValueError("ranks must be nonnegative")
        if len(self.values) != self.src + 1:
            raise ValueError("value table length must be src + 1")
        if any(v < 0 or v > self.tgt for v in self.values):
            raise ValueError(f"values {self.values} out of range [0, {self.tgt}]")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"values {self.values} not weakly increasing")
        object.__setattr__(self, "_hash",
                           hash((self.src, self.tgt, self.values)))

    def __hash__(self):
        return self._hash

    def __call__(self, i):
        return self.values[i]

    def after(self, other):
        """Composite self . other, for other : [l] -> [src]; memoized."""
        out = _AFTER_CACHE.get((self, other))
        if out is None:
            if other.tgt != self.src:
                raise ValueError("maps not composable")
            out = MonotoneMap(other.src, self.tgt,
                              tuple(self.values[v] for v in other.values))
            _AFTER_CACHE[(self, other)] = out
        return out

    @property
    def is_identity(self):
        return self.src == self.tgt and self.values == tuple(range(self.src + 1))

    @property
    def is_injective(self):
        return len(set(self.values)) == self.src + 1

    @property
    def is_surjective(self):
        return len(set(self.values)) == self.tgt + 1

    def op(self):
        """Order reversal: i |-> tgt - self(src - i).  Involutive."""
        n, m = self.tgt, self.src
        return MonotoneMap(m, n, tuple(n - self.values[m - i] for i in range(m + 1)))

    def key(self):
        """Stable string key, used by JSON schemas and caches."""
        return f"{self.src}>{self.tgt}:" + ",".join(str(v) for v in self.values)

    def __repr__(self):
        return f"MonotoneMap({self.key()!r})"


def identity(n):
    return MonotoneMap(n, n, tuple(range(n + 1)))


def coface(n, i):
    """The injection [n-1] -> [n] omitting vertex i."""
    if not 0 <= i <= n:
        raise ValueError("coface index out of range")
    return MonotoneMap(n - 1, n, tuple(v if v < i else v + 1 for v in range(n)))


def codegeneracy(n, i):
    """The surjection [n+1] -> [n] repeating vertex i."""
    if not 0 <= i <= n:
        raise ValueError("codegeneracy index out of range")
    return MonotoneMap(n + 1, n, tuple(v if v <= i else v - 1 for v in range(n + 2)))


def vertex(n, i):
    """The map [0] -> [n] picking vertex i."""
    return MonotoneMap(0, n, (i,))


def collapse(m, n=0, at=0):
    """The constant map [m] -> [n] with value `at`."""
    return MonotoneMap(m, n, (at,) * (m + 1))


@lru_cache(maxsize=None)
def enumerate_monotone(m, n):
    """All monotone maps [m] -> [n], duplicate-free, in lexicographic order."""
    if m < 0 or n < 0:
        raise ValueError("ranks must be nonnegative")
    return tuple(
        MonotoneMap(m, n, values)
        for values in combinations_with_replacement(range(n + 1), m + 1)
    )


def face_inclusion(subset, n):
    """The unique injective monotone map into [n] with image `subset`.

    The induced simplicial operator on a simplicial object is the vertex
    selector usually written with the subset as its index.
    """
    members = sorted(set(subset))
    if not members:
        raise InvalidSubset("face selector needs a nonempty vertex set")
    if members[0] < 0 or members[-1] > n:
        raise InvalidSubset(f"vertices {members} not contained in [{n}]")
    return MonotoneMap(len(members) - 1, n, tuple(members))


def op_reindex(f):
    """Order-reverse a monotone map; functorial and involutive."""
    return f.op()


def epi_mono_factor(f):
    """The unique factorisation f = (face injection) . (degeneracy surjection)."""
    image = sorted(set(f.values))
    mono = MonotoneMap(len(image) - 1, f.tgt, tuple(image))
    index = {v: i for i, v in enumerate(image)}
    epi = MonotoneMap(f.src, len(image) - 1, tuple(index[v] for v in f.values))
    return epi, mono


class TruncatedDelta:
    """All monotone maps between ranks <= k, closed under composition."""

    def __init__(self, k):
        if k < 0:
            raise ValueError("truncation level must be nonnegative")
        self.k = k

    def ranks(self):
        return range(self.k + 1)

    def hom(self, m, n):
        return enumerate_monotone(m, n)

    def all_maps(self):
        for m in self.ranks():
            for n in self.ranks():
                yield from self.hom(m, n)

    def composable_pairs(self):
        """Pairs (g, f) with g . f defined, all ranks <= k."""
        for f in self.all_maps():
            for g in self.all_maps():
                if g.src == f.tgt:
                    yield g, f

    def as_fincat(self):
        """The truncation materialised as a finite category."""
        from .fincat import FinCat

        maps = sorted(self.all_maps(), key=lambda f: (f.src, f.tgt, f.values))
        index = {f: i for i, f in enumerate(maps)}
        src = tuple(f.src for f in maps)
        tgt = tuple(f.tgt for f in maps)
        ident = tuple(index[identity(n)] for n in self.ranks())
        comp = {}
        for g, f in self.composable_pairs():
            comp[(index[g], index[f])] = index[g.after(f)]
        return FinCat(
            objects=tuple(self.ranks()),
            morphisms=tuple(f.key() for f in maps),
            src=src,
            tgt=tgt,
            identity=ident,
            comp=comp,
            name=f"Delta<= {self.k}",
        )
