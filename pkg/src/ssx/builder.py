"""Assemble a FinSSet from raw simplices given by arbitrary hashables.

Many constructions (nerves, diagonals, rows of bisimplicial sets) are most
naturally described by listing all n-simplices in some raw encoding together
with face and degeneracy callbacks.  The builder detects degenerate raws by
the retraction test s_i(d_i x) = x, peels them to Eilenberg-Zilber normal
form, and assembles the nondegenerate skeleton with validated face words.

Raw layer order is preserved, so two builds whose raw enumerations agree
produce literally equal FinSSets.
"""

from __future__ import annotations

from .sset import FinSSet, SSetMap, ValidationError
from .words import SimplexRef, SimplexWord, degen_word


class BuiltSSet:
    """A FinSSet plus the dictionary between raw simplices and words."""

    __slots__ = ("sset", "layers", "face_fn", "degen_fn", "_word_of", "_nd_raw")

    def __init__(self, layers, face_fn, degen_fn, truncation=None, labels=False):
        self.layers = [list(layer) for layer in layers]
        self.face_fn = face_fn
        self.degen_fn = degen_fn
        self._word_of: list[dict] = [dict() for _ in self.layers]
        self._nd_raw: list[list] = []
        for n, layer in enumerate(self.layers):
            nd: list = []
            table = self._word_of[n]
            for x in layer:
                if x in table:
                    raise ValidationError(f"duplicate raw simplex {x!r} at level {n}")
                w = None
                for i in range(n):
                    fx = face_fn(n, x, i)
                    if degen_fn(n - 1, fx, i) == x:
                        w = degen_word(self.word_of_raw(n - 1, fx), i)
                        break
                if w is None:
                    w = SimplexWord(SimplexRef(n, len(nd)), ())
                    nd.append(x)
                table[x] = w
            self._nd_raw.append(nd)
        counts = [len(nd) for nd in self._nd_raw]
        faces = []
        for n, nd in enumerate(self._nd_raw):
            if n == 0:
                faces.append(tuple(() for _ in nd))
                continue
            faces.append(
                tuple(
                    tuple(
                        self.word_of_raw(n - 1, face_fn(n, x, i))
                        for i in range(n + 1)
                    )
                    for x in nd
                )
            )
        self.sset = FinSSet(
            counts,
            faces,
            truncation=truncation,
            labels=self._nd_raw if labels else None,
        )

    def word_of_raw(self, n: int, x) -> SimplexWord:
        try:
            return self._word_of[n][x]
        except (KeyError, IndexError):
            raise ValidationError(
                f"raw simplex {x!r} missing from level {n}"
            ) from None

    def raw_of_nondeg(self, n: int, idx: int):
        return self._nd_raw[n][idx]

    def raw_of_word(self, w: SimplexWord):
        x = self._nd_raw[w.base.dim][w.base.index]
        d = w.base.dim
        for j in reversed(w.degens):
            x = self.degen_fn(d, x, j)
            d += 1
        return x


def build_sset(layers, face_fn, degen_fn, truncation=None, labels=False) -> BuiltSSet:
    return BuiltSSet(layers, face_fn, degen_fn, truncation=truncation, labels=labels)


def map_from_raw(dom: BuiltSSet, cod: BuiltSSet, fn) -> SSetMap:
    """The simplicial map sending each raw simplex x at level n to fn(n, x)."""
    images = []
    # trailing all-degenerate levels carry no nondegenerate cells
    for n in range(len(dom.sset.counts)):
        images.append([cod.word_of_raw(n, fn(n, x)) for x in dom._nd_raw[n]])
    return SSetMap(dom.sset, cod.sset, images)
