"""JSON formats for relative posets, relative categories, simplicial sets and presentations.

Every loader rejects unknown keys.  Dumpers emit plain dicts with sorted
relation lists, so serialized output is deterministic.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .adjunction import TruncatedSimplicialSet
from .fpcat import CatPresentation, CyclicityReport, Relation
from .homology import HomologyResult
from .relcat import FiniteCategory, Functor, Poset, RelativeCategory, RelativePoset, validate
from .sset import FiniteSimplicialSet, Simplex, SimplicialMap, check_simplicial_set, degeneracy_word, op_from_word


class FormatError(ValueError):
    """Input is valid JSON but not a valid description of the expected object."""


POSET_KEYS = {"elements", "leq", "we", "labels"}
CATEGORY_KEYS = {"objects", "morphisms", "identity", "composition", "we", "labels"}
SSET_KEYS = {"generators", "faces", "labels"}
PRESENTATION_KEYS = {"vertices", "edges", "relations", "we", "labels"}
RELATION_KEYS = {"src", "tgt", "lhs", "rhs"}
SIMPLEX_KEYS = {"degen", "dim", "gen"}


def _tuplify(x: Any) -> Any:
    if isinstance(x, list):
        return tuple(_tuplify(v) for v in x)
    return x


def _listify(x: Any) -> Any:
    if isinstance(x, (tuple, list)):
        return [_listify(v) for v in x]
    if isinstance(x, frozenset):
        return sorted(_listify(v) for v in x)
    return x


def _check_keys(data: Any, allowed: set[str], required: set[str], what: str) -> None:
    if not isinstance(data, dict):
        raise FormatError(f"{what}: expected a JSON object")
    unknown = set(data) - allowed
    if unknown:
        raise FormatError(f"{what}: unknown keys {sorted(unknown)}")
    missing = required - set(data)
    if missing:
        raise FormatError(f"{what}: missing keys {sorted(missing)}")


def _pairs(raw: Any, what: str) -> list[tuple[int, int]]:
    if not isinstance(raw, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(v, int) for v in p) for p in raw
    ):
        raise FormatError(f"{what}: expected a list of integer pairs")
    return [(a, b) for a, b in raw]


def _ints(raw: Any, what: str) -> list[int]:
    if not isinstance(raw, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
        raise FormatError(f"{what}: expected a list of integers")
    return raw


# --------------------------------------------------------------------------
# posets
# --------------------------------------------------------------------------


def poset_from_json(data: Any, check: bool = True) -> RelativePoset:
    """Load a relative poset.  ``leq`` and ``we`` must already be reflexive and transitive.

    A missing ``we`` means only identities are weak equivalences.
    """
    _check_keys(data, POSET_KEYS, {"elements", "leq"}, "poset")
    elements = _ints(data["elements"], "poset.elements")
    leq = frozenset(_pairs(data["leq"], "poset.leq"))
    we = frozenset(_pairs(data["we"], "poset.we")) if "we" in data else frozenset((x, x) for x in elements)
    labels = _tuplify(data["labels"]) if "labels" in data else None
    if labels is not None and len(labels) != len(elements):
        raise FormatError("poset.labels: one label per element expected")
    P = RelativePoset(tuple(sorted(elements)), leq, labels, we)
    if list(P.elements) != elements and labels is not None:
        raise FormatError("poset.elements: must be sorted when labels are given")
    problems = validate(P) if check else []
    if problems:
        raise FormatError("invalid poset: " + "; ".join(str(v) for v in problems[:5]))
    return P


def poset_to_json(P: Poset) -> dict:
    out: dict[str, Any] = {"elements": list(P.elements), "leq": _listify(sorted(P.leq))}
    if isinstance(P, RelativePoset):
        out["we"] = _listify(sorted(P.we))
    if P.labels is not None:
        out["labels"] = _listify(P.labels)
    return out


# --------------------------------------------------------------------------
# categories
# --------------------------------------------------------------------------


def category_from_json(data: Any, check: bool = True) -> RelativeCategory:
    """Load a relative category; composition triples ``[g, f, h]`` mean ``g . f = h``.

    A missing ``we`` means only identities are weak equivalences.
    """
    _check_keys(data, CATEGORY_KEYS, {"objects", "morphisms", "identity", "composition"}, "category")
    objects = _ints(data["objects"], "category.objects")
    if objects != list(range(len(objects))):
        raise FormatError("category.objects: ids must be 0..n-1 in order")
    morphisms = tuple(_pairs(data["morphisms"], "category.morphisms"))
    identity = tuple(_ints(data["identity"], "category.identity"))
    compose: dict[tuple[int, int], int] = {}
    raw = data["composition"]
    if not isinstance(raw, list):
        raise FormatError("category.composition: expected a list of triples")
    for t in raw:
        if not (isinstance(t, list) and len(t) == 3 and all(isinstance(v, int) for v in t)):
            raise FormatError("category.composition: expected integer triples [g, f, g.f]")
        g, f, h = t
        if (g, f) in compose and compose[(g, f)] != h:
            raise FormatError(f"category.composition: conflicting entries for {(g, f)}")
        compose[(g, f)] = h
    labels = _tuplify(data["labels"]) if "labels" in data else None
    C = FiniteCategory(len(objects), morphisms, identity, compose, labels)
    we = frozenset(_ints(data["we"], "category.we")) if "we" in data else frozenset(identity)
    X = RelativeCategory(C, we)
    problems = validate(X) if check else []
    if problems:
        raise FormatError("invalid category: " + "; ".join(str(v) for v in problems[:5]))
    return X


def category_to_json(X: RelativeCategory | FiniteCategory) -> dict:
    C = X.base if isinstance(X, RelativeCategory) else X
    out: dict[str, Any] = {
        "objects": list(range(C.n_objects)),
        "morphisms": _listify(C.morphisms),
        "identity": list(C.identity),
        "composition": [[g, f, h] for (g, f), h in sorted(C.compose.items())],
    }
    if isinstance(X, RelativeCategory):
        out["we"] = sorted(X.we)
    if C.labels is not None:
        out["labels"] = _listify(C.labels)
    return out


# --------------------------------------------------------------------------
# simplicial sets
# --------------------------------------------------------------------------


def simplex_to_json(s: Simplex) -> dict:
    return {"degen": list(degeneracy_word(s.op)), "dim": s.dim, "gen": s.gen}


def simplex_from_json(data: Any, m: int) -> Simplex:
    """A simplex of dimension ``m`` given by its degeneracy word and generator."""
    _check_keys(data, SIMPLEX_KEYS, SIMPLEX_KEYS, "simplex")
    word = _ints(data["degen"], "simplex.degen")
    dim, gen = data["dim"], data["gen"]
    if not isinstance(dim, int) or not isinstance(gen, int):
        raise FormatError("simplex: dim and gen must be integers")
    if dim + len(word) != m or len(set(word)) != len(word) or any(not 0 <= j < m for j in word):
        raise FormatError(f"simplex: degeneracy word {word} does not lift dimension {dim} to {m}")
    return Simplex(op_from_word(word, m), dim, gen)


def sset_from_json(data: Any, check: bool = True) -> FiniteSimplicialSet:
    _check_keys(data, SSET_KEYS, {"generators", "faces"}, "sset")
    counts = tuple(_ints(data["generators"], "sset.generators"))
    raw = data["faces"]
    if not isinstance(raw, list) or len(raw) != len(counts):
        raise FormatError("sset.faces: one entry per dimension expected")
    faces = []
    for k, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != counts[k]:
            raise FormatError(f"sset.faces[{k}]: one entry per generator expected")
        out_row = []
        for fs in row:
            if not isinstance(fs, list) or len(fs) != (k + 1 if k else 0):
                raise FormatError(f"sset.faces[{k}]: each generator needs {k + 1 if k else 0} faces")
            out_row.append(tuple(simplex_from_json(f, k - 1) for f in fs))
        faces.append(tuple(out_row))
    labels = _tuplify(data["labels"]) if "labels" in data else None
    for k, row in enumerate(faces):
        for fs in row:
            for f in fs:
                if not (0 <= f.dim < len(counts) and 0 <= f.gen < counts[f.dim]):
                    raise FormatError(f"sset: face {f} names a missing generator")
    K = FiniteSimplicialSet(counts, tuple(faces), labels)
    problems = check_simplicial_set(K) if check else []
    if problems:
        raise FormatError("invalid simplicial set: " + "; ".join(str(v) for v in problems[:5]))
    return K


def sset_to_json(K: FiniteSimplicialSet) -> dict:
    out: dict[str, Any] = {
        "generators": list(K.counts),
        "faces": [[[simplex_to_json(f) for f in fs] for fs in row] for row in K.faces],
    }
    if K.labels is not None:
        out["labels"] = _listify(K.labels)
    return out


def truncated_to_json(T: TruncatedSimplicialSet) -> dict:
    return sset_to_json(T.to_simplicial_set())


def simplicial_map_to_json(f: SimplicialMap) -> list:
    return [[simplex_to_json(s) for s in row] for row in f.images]


def functor_to_json(F: Functor) -> dict:
    return {"objects": list(F.obj_map), "morphisms": list(F.mor_map)}


# --------------------------------------------------------------------------
# presentations
# --------------------------------------------------------------------------


def presentation_from_json(data: Any, check: bool = True) -> CatPresentation:
    _check_keys(data, PRESENTATION_KEYS, {"vertices", "edges"}, "presentation")
    n = data["vertices"]
    if not isinstance(n, int) or n < 0:
        raise FormatError("presentation.vertices: expected a vertex count")
    edges = tuple(_pairs(data["edges"], "presentation.edges"))
    relations = []
    for r in data.get("relations", []):
        _check_keys(r, RELATION_KEYS, RELATION_KEYS, "relation")
        relations.append(
            Relation(r["src"], r["tgt"], tuple(_ints(r["lhs"], "relation.lhs")), tuple(_ints(r["rhs"], "relation.rhs")))
        )
    we = frozenset(_ints(data.get("we", []), "presentation.we"))
    labels = _tuplify(data["labels"]) if "labels" in data else None
    p = CatPresentation(n, edges, tuple(relations), we, labels)
    problems = p.problems() if check else []
    if problems:
        raise FormatError("invalid presentation: " + "; ".join(problems[:5]))
    return p


def presentation_to_json(p: CatPresentation) -> dict:
    out: dict[str, Any] = {
        "vertices": p.n_vertices,
        "edges": _listify(p.edges),
        "relations": [{"src": r.src, "tgt": r.tgt, "lhs": list(r.lhs), "rhs": list(r.rhs)} for r in p.relations],
        "we": sorted(p.we),
    }
    if p.vertex_labels is not None:
        out["labels"] = _listify(p.vertex_labels)
    return out


def cyclicity_to_json(r: CyclicityReport) -> dict:
    return {"cyclic": True, "cycle": list(r.cycle)}


def homology_to_json(h: HomologyResult) -> dict:
    return h.to_json()


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------


def kind_of(data: Any) -> str:
    """Guess which format ``data`` is in from its distinguishing key."""
    if isinstance(data, dict):
        for key, kind in (("elements", "poset"), ("objects", "category"), ("generators", "sset"), ("vertices", "presentation")):
            if key in data:
                return kind
    raise FormatError("unrecognised input: expected a poset, category, sset or presentation object")


_LOADERS = {
    "poset": poset_from_json,
    "category": category_from_json,
    "sset": sset_from_json,
    "presentation": presentation_from_json,
}


def load_json(data: Any, check: bool = True):
    return _LOADERS[kind_of(data)](data, check)


def load(path: str | Path, check: bool = True):
    """Read and parse a file in any of the supported formats.

    With ``check=False`` only the shape of the input is checked, not the axioms.
    """
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    return load_json(data, check)


def to_json(obj) -> Any:
    if isinstance(obj, Poset):
        return poset_to_json(obj)
    if isinstance(obj, (RelativeCategory, FiniteCategory)):
        return category_to_json(obj)
    if isinstance(obj, FiniteSimplicialSet):
        return sset_to_json(obj)
    if isinstance(obj, TruncatedSimplicialSet):
        return truncated_to_json(obj)
    if isinstance(obj, CatPresentation):
        return presentation_to_json(obj)
    if isinstance(obj, CyclicityReport):
        return cyclicity_to_json(obj)
    if isinstance(obj, HomologyResult):
        return homology_to_json(obj)
    if isinstance(obj, SimplicialMap):
        return simplicial_map_to_json(obj)
    if isinstance(obj, Functor):
        return functor_to_json(obj)
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_json(obj), sort_keys=True, separators=(",", ":")) + "\n"
