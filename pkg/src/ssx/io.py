"""Reading and writing toolkit objects as versioned text files.

Files are UTF-8 JSON documents {"format": "ssx/1", "kind": ..., "payload":
...}.  Simplex words are rendered "dim.index" with degeneracy suffixes
("2.0 s1 s0"); a simplicial set lists per-dimension simplex records with
their face words; a groupoid lists endpoints, identities, and the full
composition table as triples.  Serialization is canonical (sorted keys,
fixed indentation), so serialize-parse-serialize is byte-identical.
Schema problems raise FormatError with the offending field path; the
parsed objects run their own validators, so structural violations fail
with the axiom named.
"""

from __future__ import annotations

import json

from .groupoid import FinGroupoid, GpdFunctor
from .lifting import LiftingProblem
from .sgpd import SGpdMap, SimpGroupoid
from .sset import FinSSet, SSetMap, pullback
from .words import SimplexRef, SimplexWord

FORMAT = "ssx/1"
KINDS = (
    "sset",
    "sset-map",
    "groupoid",
    "functor",
    "sgpd",
    "sgpd-map",
    "problem",
)

__all__ = [
    "FORMAT",
    "KINDS",
    "FormatError",
    "canonical_json",
    "parse",
    "parse_data",
    "serialize",
    "serialize_data",
]


class FormatError(Exception):
    """A schema violation, located by its field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


def canonical_json(doc) -> str:
    """The canonical text rendering used for files and machine reports."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- schema helpers -----------------------------------------------------------------


def _get(obj, key: str, path: str, typ=None):
    if not isinstance(obj, dict):
        raise FormatError(path, "expected an object")
    if key not in obj:
        raise FormatError(f"{path}.{key}", "missing field")
    val = obj[key]
    if typ is not None and not isinstance(val, typ):
        raise FormatError(f"{path}.{key}", f"expected {typ.__name__}")
    return val


def _word_str(w: SimplexWord) -> str:
    return f"{w.base.dim}.{w.base.index}" + "".join(f" s{j}" for j in w.degens)


def _parse_word(s, path: str) -> SimplexWord:
    if not isinstance(s, str):
        raise FormatError(path, "expected a word string")
    tokens = s.split()
    if not tokens:
        raise FormatError(path, "empty word")
    head = tokens[0].split(".")
    if len(head) != 2 or not all(t.isdigit() for t in head):
        raise FormatError(path, f"malformed base {tokens[0]!r}")
    degens = []
    for t in tokens[1:]:
        if not (t.startswith("s") and t[1:].isdigit()):
            raise FormatError(path, f"malformed degeneracy {t!r}")
        degens.append(int(t[1:]))
    return SimplexWord(
        SimplexRef(int(head[0]), int(head[1])), tuple(degens)
    )


def _images_payload(f: SSetMap) -> list[list[str]]:
    return [[_word_str(w) for w in layer] for layer in f.images]


def _parse_images(data, path: str) -> list[list[SimplexWord]]:
    if not isinstance(data, list):
        raise FormatError(path, "expected a list of image layers")
    out = []
    for n, layer in enumerate(data):
        if not isinstance(layer, list):
            raise FormatError(f"{path}[{n}]", "expected a list of words")
        out.append(
            [
                _parse_word(s, f"{path}[{n}][{i}]")
                for i, s in enumerate(layer)
            ]
        )
    return out


# -- per-kind payloads ----------------------------------------------------------------


def _sset_payload(A: FinSSet) -> dict:
    dims = []
    for n in range(len(A.counts)):
        layer = []
        for i in range(A.counts[n]):
            faces = A.faces[n][i] if n else ()
            layer.append({"faces": [_word_str(w) for w in faces]})
        dims.append(layer)
    return {"dims": dims, "truncation": A.truncation}


def _parse_sset(payload, path: str) -> FinSSet:
    dims = _get(payload, "dims", path, list)
    counts = []
    faces = []
    for n, layer in enumerate(dims):
        if not isinstance(layer, list):
            raise FormatError(f"{path}.dims[{n}]", "expected a list of records")
        counts.append(len(layer))
        recs = []
        for i, rec in enumerate(layer):
            here = f"{path}.dims[{n}][{i}]"
            fw = _get(rec, "faces", here, list)
            if n > 0 and len(fw) != n + 1:
                raise FormatError(
                    f"{here}.faces", f"need {n + 1} faces, got {len(fw)}"
                )
            recs.append(
                tuple(
                    _parse_word(s, f"{here}.faces[{k}]")
                    for k, s in enumerate(fw)
                )
            )
        faces.append(tuple(recs))
    tr = payload.get("truncation")
    if tr is not None and not isinstance(tr, int):
        raise FormatError(f"{path}.truncation", "expected an integer or null")
    return FinSSet(counts, faces, truncation=tr)


def _sset_map_payload(f: SSetMap) -> dict:
    return {
        "dom": _sset_payload(f.dom),
        "cod": _sset_payload(f.cod),
        "images": _images_payload(f),
    }


def _parse_sset_map(payload, path: str) -> SSetMap:
    dom = _parse_sset(_get(payload, "dom", path), f"{path}.dom")
    cod = _parse_sset(_get(payload, "cod", path), f"{path}.cod")
    images = _parse_images(_get(payload, "images", path), f"{path}.images")
    return SSetMap(dom, cod, images)


def _gpd_payload(G: FinGroupoid) -> dict:
    return {
        "objects": G.n_obj,
        "morphisms": [
            {"src": G.src[u], "tgt": G.tgt[u]} for u in range(G.n_mor)
        ],
        "identities": list(G.ident),
        "compose": [
            [u, v, w] for (u, v), w in sorted(G.comp_table.items())
        ],
    }


def _parse_gpd(payload, path: str) -> FinGroupoid:
    n_obj = _get(payload, "objects", path, int)
    mors = _get(payload, "morphisms", path, list)
    src, tgt = [], []
    for u, rec in enumerate(mors):
        here = f"{path}.morphisms[{u}]"
        src.append(_get(rec, "src", here, int))
        tgt.append(_get(rec, "tgt", here, int))
    ident = _get(payload, "identities", path, list)
    comp = {}
    for k, triple in enumerate(_get(payload, "compose", path, list)):
        here = f"{path}.compose[{k}]"
        if not (isinstance(triple, list) and len(triple) == 3):
            raise FormatError(here, "expected a triple [u, v, w]")
        comp[(triple[0], triple[1])] = triple[2]
    return FinGroupoid(n_obj, src, tgt, ident, comp)


def _functor_payload(F: GpdFunctor) -> dict:
    return {
        "dom": _gpd_payload(F.dom),
        "cod": _gpd_payload(F.cod),
        "obj_map": list(F.obj_map),
        "mor_map": list(F.mor_map),
    }


def _parse_functor(payload, path: str) -> GpdFunctor:
    dom = _parse_gpd(_get(payload, "dom", path), f"{path}.dom")
    cod = _parse_gpd(_get(payload, "cod", path), f"{path}.cod")
    return GpdFunctor(
        dom,
        cod,
        _get(payload, "obj_map", path, list),
        _get(payload, "mor_map", path, list),
    )


def _comp_images(X: SimpGroupoid) -> list[list[str]]:
    """Composition images against the canonical composable-pair order."""
    P = pullback(X.src, X.tgt)
    out = []
    for n in range(len(P.sset.counts)):
        out.append(
            [
                _word_str(X.compose_words(u, v))
                for (u, v) in P.tuples[n]
            ]
        )
    return out


def _sgpd_payload(X: SimpGroupoid) -> dict:
    return {
        "obj": _sset_payload(X.obj),
        "mor": _sset_payload(X.mor),
        "src": _images_payload(X.src),
        "tgt": _images_payload(X.tgt),
        "ident": _images_payload(X.ident),
        "invert": _images_payload(X.invert),
        "comp": _comp_images(X),
    }


def _parse_sgpd(payload, path: str) -> SimpGroupoid:
    obj = _parse_sset(_get(payload, "obj", path), f"{path}.obj")
    mor = _parse_sset(_get(payload, "mor", path), f"{path}.mor")

    def mk(name, dom, cod):
        images = _parse_images(
            _get(payload, name, path), f"{path}.{name}"
        )
        return SSetMap(dom, cod, images)

    src = mk("src", mor, obj)
    tgt = mk("tgt", mor, obj)
    ident = mk("ident", obj, mor)
    invert = mk("invert", mor, mor)
    pairs = pullback(src, tgt)
    comp = SSetMap(
        pairs.sset,
        mor,
        _parse_images(_get(payload, "comp", path), f"{path}.comp"),
    )
    return SimpGroupoid(obj, mor, src, tgt, ident, invert, comp, pairs=pairs)


def _sgpd_map_payload(p: SGpdMap) -> dict:
    return {
        "dom": _sgpd_payload(p.dom),
        "cod": _sgpd_payload(p.cod),
        "on_obj": _images_payload(p.on_obj),
        "on_mor": _images_payload(p.on_mor),
    }


def _parse_sgpd_map(payload, path: str) -> SGpdMap:
    dom = _parse_sgpd(_get(payload, "dom", path), f"{path}.dom")
    cod = _parse_sgpd(_get(payload, "cod", path), f"{path}.cod")
    on_obj = SSetMap(
        dom.obj,
        cod.obj,
        _parse_images(_get(payload, "on_obj", path), f"{path}.on_obj"),
    )
    on_mor = SSetMap(
        dom.mor,
        cod.mor,
        _parse_images(_get(payload, "on_mor", path), f"{path}.on_mor"),
    )
    return SGpdMap(dom, cod, on_obj, on_mor)


def _problem_payload(prob: LiftingProblem) -> dict:
    return {
        "i": _sset_map_payload(prob.i),
        "p": _sset_map_payload(prob.p),
        "f": _sset_map_payload(prob.f),
        "g": _sset_map_payload(prob.g),
    }


def _parse_problem(payload, path: str) -> LiftingProblem:
    return LiftingProblem(
        _parse_sset_map(_get(payload, "i", path), f"{path}.i"),
        _parse_sset_map(_get(payload, "p", path), f"{path}.p"),
        _parse_sset_map(_get(payload, "f", path), f"{path}.f"),
        _parse_sset_map(_get(payload, "g", path), f"{path}.g"),
    )


_SERIALIZERS = [
    (SimpGroupoid, "sgpd", _sgpd_payload),
    (SGpdMap, "sgpd-map", _sgpd_map_payload),
    (LiftingProblem, "problem", _problem_payload),
    (FinSSet, "sset", _sset_payload),
    (SSetMap, "sset-map", _sset_map_payload),
    (FinGroupoid, "groupoid", _gpd_payload),
    (GpdFunctor, "functor", _functor_payload),
]

_PARSERS = {
    "sset": _parse_sset,
    "sset-map": _parse_sset_map,
    "groupoid": _parse_gpd,
    "functor": _parse_functor,
    "sgpd": _parse_sgpd,
    "sgpd-map": _parse_sgpd_map,
    "problem": _parse_problem,
}


# -- entry points -----------------------------------------------------------------------


def serialize_data(obj) -> str:
    """Render a supported object as canonical "ssx/1" text."""
    for typ, kind, payload_fn in _SERIALIZERS:
        if isinstance(obj, typ):
            doc = {"format": FORMAT, "kind": kind, "payload": payload_fn(obj)}
            return canonical_json(doc)
    raise FormatError("$", f"cannot serialize {type(obj).__name__}")


def parse_data(text: str):
    """Parse "ssx/1" text into a validated object."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError("$", f"not well-formed: {e}") from None
    fmt = _get(doc, "format", "$", str)
    if fmt != FORMAT:
        raise FormatError("$.format", f"unsupported format {fmt!r}")
    kind = _get(doc, "kind", "$", str)
    if kind not in _PARSERS:
        raise FormatError("$.kind", f"unknown kind {kind!r}")
    payload = _get(doc, "payload", "$")
    return _PARSERS[kind](payload, "$.payload")


def serialize(obj, path) -> None:
    """Write an object to a file in canonical form."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_data(obj))


def parse(path):
    """Read and validate an object file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_data(text)
    except FormatError as e:
        raise FormatError(f"{path}:{e.path}", e.message) from None
