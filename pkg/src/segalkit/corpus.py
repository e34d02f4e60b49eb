"""Deterministic instance corpus for the check suites.

Instances are tagged with the sizes of their presenting levels; the
"small" class keeps the object- and arrow-carriers at five elements or
fewer and is padded to fifty-plus members with seeded carrier relabelings
(equality of base objects is index-based, so relabeled copies genuinely
exercise presentation invariance).  The extended class adds categories
whose nerves outgrow the small bound: longer chains, the commuting square,
a free composable pair with parallel arrows, and cyclic groups.
"""

import os
import random

from .fincat import (FinCat, FinSetBase, chain_cat, cyclic_group_cat,
                     discrete_cat, group_cat, poset_cat, product_cat)
from .internal import InternalCategory, constant_object, nerve

DEFAULT_SEED = 0


def corpus_seed():
    return int(os.environ.get("SEGALKIT_SEED", DEFAULT_SEED))


class CorpusItem:
    def __init__(self, name, icat, source_cat=None, tags=()):
        self.name = name
        self.icat = icat
        self.source_cat = source_cat     # FinCat when nerve-presented
        self.tags = tuple(tags)

    @property
    def small(self):
        sizes = self.icat.x.level_sizes()
        return sizes[0] <= 5 and sizes[1] <= 5

    def __repr__(self):
        return f"CorpusItem({self.name!r}, levels {self.icat.x.level_sizes()})"


def _parallel_pair_cat():
    return FinCat(
        objects=("a", "b"),
        morphisms=("id_a", "id_b", "f", "g"),
        src=(0, 1, 0, 0),
        tgt=(0, 1, 1, 1),
        identity=(0, 1),
        comp={(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2, (3, 0): 3, (1, 3): 3},
        name="parallel",
    )


def _idempotent_monoid_cat():
    table = {("e", "e"): "e", ("e", "p"): "p", ("p", "e"): "p", ("p", "p"): "p"}
    return group_cat(table, name="Mp")   # not a group; table is a monoid


def _free_composite_cat():
    """Two parallel arrows followed by one more, composites free: the
    smallest category where reflexive-graph data underdetermines functors."""
    morphisms = ("id_a", "id_b", "id_c", "f", "g", "h", "hf", "hg")
    src = (0, 1, 2, 0, 0, 1, 0, 0)
    tgt = (0, 1, 2, 1, 1, 2, 2, 2)
    identity = (0, 1, 2)
    comp = {(5, 3): 6, (5, 4): 7}      # h . f and h . g, freely adjoined
    for i in range(len(morphisms)):
        comp[(i, identity[src[i]])] = i
        comp[(identity[tgt[i]], i)] = i
    return FinCat(("a", "b", "c"), morphisms, src, tgt, identity, comp=comp,
                  name="freecomp")


def _vee_poset():
    rel = {("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("a", "c")}
    return poset_cat(("a", "b", "c"), lambda x, y: (x, y) in rel, name="vee")


def _wedge_poset():
    rel = {("a", "a"), ("b", "b"), ("c", "c"), ("a", "c"), ("b", "c")}
    return poset_cat(("a", "b", "c"), lambda x, y: (x, y) in rel, name="wedge")


def _square_poset():
    elems = ("00", "01", "10", "11")

    def leq(x, y):
        return x[0] <= y[0] and x[1] <= y[1]

    return poset_cat(elems, leq, name="square")


def _random_thin_cat(rng, n_objects, max_arrows):
    """A random poset with a bounded relation count, as a category."""
    elems = tuple(range(n_objects))
    order = list(elems)
    rng.shuffle(order)
    rel = {(x, x) for x in elems}
    attempts = 0
    while len(rel) < max_arrows and attempts < 20:
        attempts += 1
        i, j = sorted(rng.sample(range(n_objects), 2))
        closure = set(rel)
        closure.add((order[i], order[j]))
        changed = True
        while changed:
            changed = False
            for (a, b) in list(closure):
                for (c, d) in list(closure):
                    if b == c and (a, d) not in closure:
                        closure.add((a, d))
                        changed = True
        if len(closure) <= max_arrows:
            rel = closure
    return poset_cat(elems, lambda x, y: (x, y) in rel,
                     name=f"poset{n_objects}x{len(rel)}")


def _relabeled_nerve(cat, base, k, shift, name):
    """The same nerve over a shifted carrier: distinct presentation, same
    structure; equality is index-based so these are fresh instances."""
    x = nerve(cat, base, k)
    from .fincat import SetMor, SetObj
    from .internal import SimplicialObject

    def relabel(cell):
        return ("r", shift, cell)

    levels = {m: SetObj(f"{name}_{m}", tuple(relabel(c) for c in x.levels[m]))
              for m in range(k + 1)}
    ops = {}
    for phi, mor in x.ops.items():
        ops[phi] = SetMor(levels[phi.tgt], levels[phi.src],
                          {relabel(c): relabel(mor(c)) for c in mor.src})
    obj = SimplicialObject(base, k, levels, ops, name=name)
    return InternalCategory(obj)


def build_corpus(base=None, k=3, seed=None, min_small=50):
    """The bundled corpus: a list of CorpusItem values, deterministic for a
    given seed."""
    base = base or FinSetBase(100_000)
    seed = corpus_seed() if seed is None else seed
    rng = random.Random(seed)
    items = []

    def add(name, cat=None, icat=None, tags=()):
        if icat is None:
            icat = InternalCategory(nerve(cat, base, k))
        items.append(CorpusItem(name, icat, source_cat=cat, tags=tags))

    for n in range(1, 6):
        add(f"disc{n}", discrete_cat(tuple(range(n))), tags=("discrete",))
    for n in range(1, 6):
        items.append(CorpusItem(
            f"const{n}",
            InternalCategory(constant_object(base, base.range_obj(n), k)),
            tags=("constant",),
        ))
    add("chain1", chain_cat(1), tags=("poset",))
    add("vee", _vee_poset(), tags=("poset",))
    add("wedge", _wedge_poset(), tags=("poset",))
    add("parallel", _parallel_pair_cat(), tags=("gaunt",))
    add("bz2", cyclic_group_cat(2), tags=("group",))
    add("bz3", cyclic_group_cat(3), tags=("group",))
    add("idem", _idempotent_monoid_cat(), tags=("monoid",))

    for i in range(4):
        cat = _random_thin_cat(rng, rng.choice((2, 3, 4)), 5)
        add(f"rnd{i}_{cat.name}", cat, tags=("poset", "random"))

    # extended class: presentations whose nerves outgrow the small bound
    add("chain2", chain_cat(2), tags=("poset", "extended"))
    add("square", _square_poset(), tags=("poset", "extended"))
    add("freecomp", _free_composite_cat(), tags=("extended",))
    prod = product_cat(chain_cat(1), chain_cat(1), name="[1]x[1]")
    add("prod11", prod, tags=("poset", "extended"))

    # pad the small class to the requested size with relabeled carriers
    structural = [it for it in items if it.small]
    templates = [it for it in structural if it.source_cat is not None]
    shift = 1
    while sum(1 for it in items if it.small) < min_small:
        template = templates[shift % len(templates)]
        items.append(CorpusItem(
            f"{template.name}~r{shift}",
            _relabeled_nerve(template.source_cat, base, k, shift,
                             f"{template.name}~r{shift}"),
            source_cat=template.source_cat,
            tags=template.tags + ("relabeled",),
        ))
        shift += 1
    return items


def small_corpus(items):
    return [it for it in items if it.small]


def sample_pairs(items, count, seed=None):
    """Deterministic ordered-pair sample covering every item at least once
    in each role when the budget allows."""
    seed = corpus_seed() if seed is None else seed
    rng = random.Random(seed + 1)
    pairs = []
    n = len(items)
    for i in range(n):
        pairs.append((items[i], items[(i + 1) % n]))
    while len(pairs) < count:
        pairs.append((rng.choice(items), rng.choice(items)))
    return pairs[:count]
