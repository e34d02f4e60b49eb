"""JSON instance schema shared by the CLI and golden tests.

One flat schema with a `kind` discriminator; cells are JSON values with
lists standing for tuples (round-tripped canonically), and operator tables
are stored as index lists for the elementary faces and degeneracies only,
with the full operator calculus regenerated on load.
"""

import json

from .delta import codegeneracy, coface
from .errors import SchemaError
from .fincat import FinCat, FinSetBase, SetMor, SetObj
from .internal import (InternalCategory, SimplicialObject,
                       complete_ops_from_elementary, elementary_maps)
from .sset import TruncSSet

KINDS = ("fincat", "internal_category", "simplicial_object",
         "truncated_sset", "suite")


def to_jsonable(cell):
    if isinstance(cell, tuple):
        return [to_jsonable(c) for c in cell]
    if isinstance(cell, (str, int, bool)) or cell is None:
        return cell
    raise SchemaError(f"cell {cell!r} is not JSON-serializable")


def from_jsonable(cell):
    if isinstance(cell, list):
        return tuple(from_jsonable(c) for c in cell)
    return cell


def _elementary_tables(k, level_elements, act):
    """Index tables for faces `d:n:i` (level n -> n-1) and degeneracies
    `s:n:i` (level n -> n+1); entries index the source level's elements."""
    tables = {}
    for phi in elementary_maps(k):
        m, n = phi.src, phi.tgt
        if phi.is_injective:
            key = f"d:{n}:{next(v for v in range(n + 1) if v not in set(phi.values))}"
        else:
            key = f"s:{n}:{next(j for j in range(m) if phi.values[j] == phi.values[j + 1])}"
        index = {x: i for i, x in enumerate(level_elements[m])}
        tables[key] = [index[act(phi, x)] for x in level_elements[n]]
    return tables


def _elementary_ops_from_tables(k, levels, tables):
    elem = {}
    for phi in elementary_maps(k):
        m, n = phi.src, phi.tgt
        if phi.is_injective:
            key = f"d:{n}:{next(v for v in range(n + 1) if v not in set(phi.values))}"
        else:
            key = f"s:{n}:{next(j for j in range(m) if phi.values[j] == phi.values[j + 1])}"
        if key not in tables:
            raise SchemaError(f"missing operator table {key}")
        table = tables[key]
        if len(table) != len(levels[n]):
            raise SchemaError(f"operator table {key} has wrong length")
        elem[phi] = SetMor(levels[n], levels[m], {
            x: levels[m].elements[table[i]]
            for i, x in enumerate(levels[n].elements)
        })
    return elem


# ---------------------------------------------------------------------------
# fincat
# ---------------------------------------------------------------------------


def fincat_to_json(cat):
    comp = sorted(
        [g, f, cat.compose(g, f)]
        for g, f in cat.composable_pairs()
    )
    return {
        "kind": "fincat",
        "name": cat.name,
        "objects": [to_jsonable(o) for o in cat.objects],
        "morphisms": [
            {"name": to_jsonable(cat.morphisms[m]),
             "src": cat.src[m], "tgt": cat.tgt[m]}
            for m in range(cat.n_morphisms)
        ],
        "identity": list(cat.identity),
        "composition": comp,
    }


def fincat_from_json(doc):
    try:
        objects = tuple(from_jsonable(o) for o in doc["objects"])
        morphisms = tuple(from_jsonable(m["name"]) for m in doc["morphisms"])
        src = tuple(m["src"] for m in doc["morphisms"])
        tgt = tuple(m["tgt"] for m in doc["morphisms"])
        identity = tuple(doc["identity"])
        comp = {(g, f): h for g, f, h in doc["composition"]}
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed fincat document: {exc}")
    cat = FinCat(objects, morphisms, src, tgt, identity, comp=comp,
                 name=doc.get("name", ""))
    try:
        cat.validate()
    except AssertionError as exc:
        raise SchemaError(f"fincat axioms fail: {exc}")
    return cat


# ---------------------------------------------------------------------------
# simplicial objects and truncated simplicial sets
# ---------------------------------------------------------------------------


def simplicial_to_json(x, kind="simplicial_object"):
    k = x.k
    level_elements = {m: list(x.levels[m].elements) for m in range(k + 1)}
    return {
        "kind": kind,
        "name": x.name,
        "truncation": k,
        "coskeletal": bool(x.coskeletal),
        "levels": [[to_jsonable(c) for c in level_elements[m]]
                   for m in range(k + 1)],
        "operators": _elementary_tables(k, level_elements, x.act),
    }


def simplicial_from_json(doc, base=None):
    base = base or FinSetBase()
    try:
        k = int(doc["truncation"])
        raw_levels = doc["levels"]
        name = doc.get("name", "instance")
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed simplicial document: {exc}")
    if len(raw_levels) != k + 1:
        raise SchemaError("level list does not match the truncation")
    levels = {}
    for m, cells in enumerate(raw_levels):
        decoded = [from_jsonable(c) for c in cells]
        if len(set(decoded)) != len(decoded):
            raise SchemaError(f"duplicate cells at level {m}")
        levels[m] = base.obj(f"{name}_{m}", decoded)
    elem = _elementary_ops_from_tables(k, levels, doc.get("operators", {}))
    ops = complete_ops_from_elementary(k, levels, elem)
    obj = SimplicialObject(base, k, levels, ops,
                           coskeletal=bool(doc.get("coskeletal", True)),
                           name=name)
    try:
        obj.validate()
    except AssertionError as exc:
        raise SchemaError(f"simplicial identities fail: {exc}")
    return obj


def sset_to_json(s):
    level_elements = {m: list(s.level(m)) for m in range(s.k + 1)}
    return {
        "kind": "truncated_sset",
        "name": s.name,
        "truncation": s.k,
        "coskeletal": bool(s.coskeletal),
        "levels": [[to_jsonable(c) for c in level_elements[m]]
                   for m in range(s.k + 1)],
        "operators": _elementary_tables(s.k, level_elements, s.act),
    }


def sset_from_json(doc):
    x = simplicial_from_json(doc, base=FinSetBase(10 ** 9))
    action = {}
    for phi, mor in x.ops.items():
        for c in mor.src:
            action[(phi, c)] = mor(c)
    levels = {m: x.levels[m].elements for m in range(x.k + 1)}
    out = TruncSSet(x.k, levels, action, coskeletal=x.coskeletal, name=x.name)
    try:
        out.validate()
    except AssertionError as exc:
        raise SchemaError(f"simplicial identities fail: {exc}")
    return out


# ---------------------------------------------------------------------------
# top level
# ---------------------------------------------------------------------------


def load_document(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"{path}: {exc}")
    if not isinstance(doc, dict) or doc.get("kind") not in KINDS:
        raise SchemaError(f"{path}: missing or unknown kind")
    return doc


def load_internal_category(path, base=None, k=3):
    """Load an instance as an internal category: nerve-ify a fincat, or
    certify a simplicial object."""
    from .internal import nerve

    doc = load_document(path)
    base = base or FinSetBase()
    if doc["kind"] == "fincat":
        cat = fincat_from_json(doc)
        icat = InternalCategory(nerve(cat, base, k))
        return icat, cat, doc
    if doc["kind"] in ("internal_category", "simplicial_object"):
        obj = simplicial_from_json(doc, base=base)
        return InternalCategory(obj), None, doc
    raise SchemaError(f"{path}: expected a category-like instance")


def load_simplicial(path, base=None):
    doc = load_document(path)
    if doc["kind"] not in ("internal_category", "simplicial_object"):
        raise SchemaError(f"{path}: expected a simplicial instance")
    return simplicial_from_json(doc, base=base or FinSetBase()), doc


def dumps_report(report):
    """Deterministic JSON text for reports: sorted keys, stable lists."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
