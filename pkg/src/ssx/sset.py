"""Finite simplicial sets with explicit Eilenberg-Zilber bookkeeping.

A ``FinSSet`` stores, per dimension, the number of nondegenerate simplices
and the faces of each as ``SimplexWord`` values over lower-dimensional
nondegenerate simplices.  All other simplices are degeneracy words, so every
operation reduces to word algebra over the face tables.  Truncation is
explicit: a truncated object refuses to answer questions above its bound
instead of guessing.

The module provides the constructions the rest of the package leans on:
standard simplices, boundaries and horns, binary and n-ary products via
shuffle words, subcomplexes, strict pullbacks, colimits (coproduct, pushout
along a mono, coequalizer), exhaustive enumeration of simplicial maps,
the union-of-faces-containing subcomplex, and mono/iso/nonsingularity
checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import (
    SimplexRef,
    SimplexWord,
    WordError,
    apply_degens,
    degen_word,
    degeneracy_tuples,
    degens_of_surjection,
    face_word,
    strip_degens,
    surjection_of_word,
    validate_word,
)


class ValidationError(ValueError):
    """Raised when simplicial data violates a structural constraint."""


class TruncationError(ValueError):
    """Raised when an operation needs data above an object's truncation."""


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise ValidationError(msg)


class FinSSet:
    """A finite (possibly truncated) simplicial set.

    ``counts[n]`` is the number of nondegenerate n-simplices and
    ``faces[n][i]`` the (n+1)-tuple of face words of the i-th one.
    ``truncation`` is None for honestly finite-dimensional objects, else the
    largest dimension about which the data speaks.
    """

    __slots__ = ("counts", "faces", "truncation", "labels", "_cache")

    def __init__(self, counts, faces, truncation=None, labels=None, validate=True):
        counts = list(counts)
        faces = [tuple(rec) for rec in faces]
        while counts and counts[-1] == 0:
            counts.pop()
            faces.pop()
        self.counts = tuple(counts)
        self.faces = tuple(faces)
        self.truncation = truncation
        if labels is not None:
            labels = tuple(tuple(layer) for layer in labels[: len(self.counts)])
        self.labels = labels
        self._cache: dict = {}
        if validate:
            self._validate()

    # -- basic shape ----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def data_bound(self) -> int | None:
        """Largest dimension with known simplex data (None = unbounded)."""
        return self.truncation

    def has_data(self, n: int) -> bool:
        return self.truncation is None or n <= self.truncation

    def require_data(self, n: int) -> None:
        if not self.has_data(n):
            raise TruncationError(
                f"dimension {n} exceeds truncation {self.truncation}"
            )

    def nondeg(self, n: int) -> int:
        self.require_data(n)
        if n < 0 or n > self.dim:
            return 0
        return self.counts[n]

    def label(self, n: int, idx: int):
        if self.labels is None or n >= len(self.labels):
            return (n, idx)
        return self.labels[n][idx]

    # -- validation ------------------------------------------------------

    def _validate(self) -> None:
        _check(len(self.counts) == len(self.faces), "counts/faces length mismatch")
        if self.truncation is not None:
            _check(self.truncation >= 0, "negative truncation")
            _check(
                self.truncation >= self.dim,
                f"nondegenerate data in dimension {self.dim} above truncation "
                f"{self.truncation}",
            )
        for n, cnt in enumerate(self.counts):
            _check(cnt >= 0, f"negative count in dimension {n}")
            _check(
                len(self.faces[n]) == cnt,
                f"dimension {n}: {cnt} simplices but {len(self.faces[n])} face records",
            )
            for idx, rec in enumerate(self.faces[n]):
                if n == 0:
                    _check(rec == (), f"vertex {idx} must have empty face record")
                    continue
                _check(
                    len(rec) == n + 1,
                    f"simplex ({n},{idx}) has {len(rec)} faces, expected {n + 1}",
                )
                for i, w in enumerate(rec):
                    try:
                        validate_word(w)
                    except WordError as exc:
                        raise ValidationError(
                            f"simplex ({n},{idx}) face {i}: {exc}"
                        ) from exc
                    _check(
                        w.dim == n - 1,
                        f"simplex ({n},{idx}) face {i} has dimension {w.dim}",
                    )
                    _check(
                        w.base.dim < n and 0 <= w.base.index < self.counts[w.base.dim],
                        f"simplex ({n},{idx}) face {i} references missing base {w.base}",
                    )
        # simplicial identities d_i d_j = d_{j-1} d_i, checked on all words
        # through the top nondegenerate dimension via the integer tables.
        for n in range(2, self.dim + 1):
            size = self.n_words(n)
            for j in range(1, n + 1):
                fj = self.ftab(n, j)
                for i in range(j):
                    fi_low = self.ftab(n - 1, i)
                    fi = self.ftab(n, i)
                    fj_low = self.ftab(n - 1, j - 1)
                    for w in range(size):
                        if fi_low[fj[w]] != fj_low[fi[w]]:
                            raise ValidationError(
                                f"simplicial identity d_{i} d_{j} fails on word "
                                f"{self.words(n)[w]}"
                            )

    # -- word algebra bound to this sset ---------------------------------

    def base_face(self, ref: SimplexRef, i: int) -> SimplexWord:
        return self.faces[ref.dim][ref.index][i]

    def face_of(self, w: SimplexWord, i: int) -> SimplexWord:
        return face_word(w, i, self.base_face)

    def degen_of(self, w: SimplexWord, j: int) -> SimplexWord:
        return degen_word(w, j)

    def nondeg_word(self, n: int, idx: int) -> SimplexWord:
        return SimplexWord(SimplexRef(n, idx), ())

    def words(self, n: int) -> list[SimplexWord]:
        """All n-simplices in canonical order (base dim, base index, degens)."""
        key = ("words", n)
        if key not in self._cache:
            self.require_data(n)
            out: list[SimplexWord] = []
            for m in range(min(n, self.dim) + 1):
                for idx in range(self.counts[m]):
                    ref = SimplexRef(m, idx)
                    for degens in degeneracy_tuples(n - m, n):
                        out.append(SimplexWord(ref, degens))
            self._cache[key] = out
        return self._cache[key]

    def n_words(self, n: int) -> int:
        return len(self.words(n))

    def windex(self, n: int) -> dict[SimplexWord, int]:
        key = ("windex", n)
        if key not in self._cache:
            self._cache[key] = {w: i for i, w in enumerate(self.words(n))}
        return self._cache[key]

    def wid(self, w: SimplexWord) -> int:
        return self.windex(w.dim)[w]

    def ftab(self, n: int, i: int) -> list[int]:
        key = ("ftab", n, i)
        if key not in self._cache:
            lower = self.windex(n - 1)
            self._cache[key] = [lower[self.face_of(w, i)] for w in self.words(n)]
        return self._cache[key]

    def dtab(self, n: int, j: int) -> list[int]:
        key = ("dtab", n, j)
        if key not in self._cache:
            upper = self.windex(n + 1)
            self._cache[key] = [upper[degen_word(w, j)] for w in self.words(n)]
        return self._cache[key]

    def facekey(self, n: int) -> dict[tuple[int, ...], list[int]]:
        """Index n-simplices by their full face tuple."""
        key = ("facekey", n)
        if key not in self._cache:
            tabs = [self.ftab(n, i) for i in range(n + 1)]
            index: dict[tuple[int, ...], list[int]] = {}
            for w in range(self.n_words(n)):
                index.setdefault(tuple(tab[w] for tab in tabs), []).append(w)
            self._cache[key] = index
        return self._cache[key]

    def base_vertices(self, n: int, idx: int) -> tuple[int, ...]:
        """Vertex indices of a nondegenerate simplex, in simplex order."""
        key = ("bverts", n, idx)
        if key not in self._cache:
            if n == 0:
                res = (idx,)
            else:
                w0 = self.faces[n][idx][0]
                rest = self.word_vertices(w0)
                wn = self.faces[n][idx][n]
                res = (self.word_vertices(wn)[0],) + rest
            self._cache[key] = res
        return self._cache[key]

    def word_vertices(self, w: SimplexWord) -> tuple[int, ...]:
        bv = self.base_vertices(w.base.dim, w.base.index)
        return tuple(bv[s] for s in surjection_of_word(w))

    # -- faces-containing closure ----------------------------------------

    def face_closure(self, n: int, idx: int) -> frozenset[SimplexRef]:
        """Nondegenerate simplices appearing as iterated faces (incl. self)."""
        key = ("closure", n, idx)
        if key not in self._cache:
            refs = {SimplexRef(n, idx)}
            for w in self.faces[n][idx] if n > 0 else ():
                refs |= self.face_closure(w.base.dim, w.base.index)
            self._cache[key] = frozenset(refs)
        return self._cache[key]

    # -- equality ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinSSet):
            return NotImplemented
        return (
            self.counts == other.counts
            and self.faces == other.faces
            and self.truncation == other.truncation
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None  # value-equal but identity-cached; do not hash

    def __repr__(self) -> str:
        tr = "" if self.truncation is None else f", truncated at {self.truncation}"
        return f"FinSSet(counts={self.counts}{tr})"


class SSetMap:
    """A simplicial map, stored as image words of nondegenerate simplices."""

    __slots__ = ("dom", "cod", "images", "_cache")

    def __init__(self, dom: FinSSet, cod: FinSSet, images, validate=True):
        self.dom = dom
        self.cod = cod
        self.images = tuple(tuple(layer) for layer in images)
        self._cache: dict = {}
        if validate:
            self._validate()

    def _validate(self) -> None:
        _check(
            len(self.images) == len(self.dom.counts),
            f"expected images in {len(self.dom.counts)} dimensions, "
            f"got {len(self.images)}",
        )
        for n, layer in enumerate(self.images):
            _check(
                len(layer) == self.dom.counts[n],
                f"dimension {n}: {len(layer)} images for {self.dom.counts[n]} simplices",
            )
            self.cod.require_data(n)
            for idx, w in enumerate(layer):
                try:
                    validate_word(w)
                except WordError as exc:
                    raise ValidationError(f"image of ({n},{idx}): {exc}") from exc
                _check(w.dim == n, f"image of ({n},{idx}) has dimension {w.dim}")
                _check(
                    w.base.dim <= self.cod.dim
                    and 0 <= w.base.index < self.cod.counts[w.base.dim],
                    f"image of ({n},{idx}) references missing simplex {w.base}",
                )
        for n in range(1, len(self.images)):
            for idx in range(self.dom.counts[n]):
                img = self.images[n][idx]
                for i in range(n + 1):
                    expected = self.apply(self.dom.faces[n][idx][i])
                    got = self.cod.face_of(img, i)
                    if expected != got:
                        raise ValidationError(
                            f"face {i} of ({n},{idx}) not respected: "
                            f"f(d_{i} x)={expected} but d_{i} f(x)={got}"
                        )

    def apply(self, w: SimplexWord) -> SimplexWord:
        img = self.images[w.base.dim][w.base.index]
        return apply_degens(img, w.degens)

    def table(self, n: int) -> list[int]:
        key = ("table", n)
        if key not in self._cache:
            cindex = self.cod.windex(n)
            self._cache[key] = [cindex[self.apply(w)] for w in self.dom.words(n)]
        return self._cache[key]

    def __eq__(self, other):
        if not isinstance(other, SSetMap):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.images == other.images
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        return f"SSetMap({self.dom!r} -> {self.cod!r})"


def identity_map(A: FinSSet) -> SSetMap:
    images = [
        [A.nondeg_word(n, i) for i in range(A.counts[n])]
        for n in range(len(A.counts))
    ]
    return SSetMap(A, A, images, validate=False)


def compose_maps(g: SSetMap, f: SSetMap) -> SSetMap:
    _check(f.cod == g.dom, "composition mismatch")
    images = [
        [g.apply(f.images[n][i]) for i in range(f.dom.counts[n])]
        for n in range(len(f.dom.counts))
    ]
    return SSetMap(f.dom, g.cod, images, validate=False)


def constant_map(A: FinSSet, X: FinSSet, vertex: int) -> SSetMap:
    """The map collapsing A to a single vertex of X."""
    images = []
    for n in range(len(A.counts)):
        w = apply_degens(
            SimplexWord(SimplexRef(0, vertex), ()), tuple(range(n - 1, -1, -1))
        )
        images.append([w] * A.counts[n])
    return SSetMap(A, X, images)


def normalize_word(A: FinSSet, base: SimplexRef, ops=()) -> SimplexWord:
    """Evaluate a sequence of ("d"|"s", index) operators on a simplex.

    Operators apply in the listed order to the running simplex; the result
    is the EZ normal form.  Malformed input raises with the precise reason.
    """
    if not (0 <= base.dim <= A.dim and 0 <= base.index < A.counts[base.dim]):
        raise ValidationError(f"no nondegenerate simplex {base}")
    w = SimplexWord(base, ())
    for kind, i in ops:
        if kind == "d":
            w = A.face_of(w, i)
        elif kind == "s":
            w = degen_word(w, i)
        else:
            raise ValidationError(f"unknown operator kind {kind!r}")
    return w


def truncate(A: FinSSet, bound: int) -> FinSSet:
    """The bound-truncation of A: same data up to the bound, unknown above."""
    _check(bound >= 0, "truncation bound must be nonnegative")
    A.require_data(bound)
    labels = None
    if A.labels is not None:
        labels = A.labels[: bound + 1]
    return FinSSet(
        A.counts[: bound + 1],
        A.faces[: bound + 1],
        truncation=bound,
        labels=labels,
        validate=False,
    )


# -- builtin complexes ----------------------------------------------------


def _subset_complex(n: int, top_subsets) -> FinSSet:
    """Subcomplex of the n-simplex generated by vertex subsets."""
    by_dim: list[set[tuple[int, ...]]] = [set() for _ in range(n + 1)]
    stack = [tuple(s) for s in top_subsets]
    while stack:
        s = stack.pop()
        d = len(s) - 1
        if s in by_dim[d]:
            continue
        by_dim[d].add(s)
        if d > 0:
            for i in range(d + 1):
                stack.append(s[:i] + s[i + 1 :])
    layers = [sorted(layer) for layer in by_dim]
    index = [{s: i for i, s in enumerate(layer)} for layer in layers]
    counts = [len(layer) for layer in layers]
    faces = []
    for d, layer in enumerate(layers):
        if d == 0:
            faces.append(tuple(() for _ in layer))
            continue
        recs = []
        for s in layer:
            recs.append(
                tuple(
                    SimplexWord(
                        SimplexRef(d - 1, index[d - 1][s[:i] + s[i + 1 :]]), ()
                    )
                    for i in range(d + 1)
                )
            )
        faces.append(tuple(recs))
    return FinSSet(counts, faces, labels=layers)


def simplex(n: int) -> FinSSet:
    """The standard n-simplex."""
    verts = tuple(range(n + 1))
    return _subset_complex(n, [verts])


def boundary(n: int) -> FinSSet:
    """The boundary of the n-simplex (empty for n = 0)."""
    if n == 0:
        return FinSSet([], [])
    verts = tuple(range(n + 1))
    return _subset_complex(n, [verts[:i] + verts[i + 1 :] for i in range(n + 1)])


def horn(n: int, k: int) -> FinSSet:
    """The k-th horn of the n-simplex: all facets except the k-th."""
    _check(n >= 1, "horns need n >= 1")
    _check(0 <= k <= n, f"horn index {k} out of range for n={n}")
    verts = tuple(range(n + 1))
    return _subset_complex(
        n, [verts[:i] + verts[i + 1 :] for i in range(n + 1) if i != k]
    )


def builtin_complex(kind: str, n: int, k: int | None = None) -> FinSSet:
    if kind == "simplex":
        return simplex(n)
    if kind == "boundary":
        return boundary(n)
    if kind == "horn":
        if k is None:
            raise ValidationError("horn requires the horn index k")
        return horn(n, k)
    raise ValidationError(f"unknown builtin complex kind {kind!r}")


def simplex_inclusion(A: FinSSet, n: int) -> SSetMap:
    """Inclusion of a subset-labeled complex (boundary, horn) into simplex(n)."""
    S = simplex(n)
    sindex = [
        {S.label(d, i): i for i in range(S.counts[d])} for d in range(n + 1)
    ]
    images = []
    for d in range(len(A.counts)):
        layer = []
        for i in range(A.counts[d]):
            lab = A.label(d, i)
            layer.append(SimplexWord(SimplexRef(d, sindex[d][lab]), ()))
        images.append(layer)
    return SSetMap(A, S, images)


def vertex_inclusion(n: int, v: int) -> SSetMap:
    """The inclusion of vertex v into simplex(n)."""
    S = simplex(n)
    return SSetMap(simplex(0), S, [[SimplexWord(SimplexRef(0, v), ())]])


def simplex_map(m: int, n: int, vertex_images: tuple[int, ...]) -> SSetMap:
    """The simplicial map simplex(m) -> simplex(n) of a monotone vertex map."""
    _check(len(vertex_images) == m + 1, "need one image per vertex")
    _check(
        all(vertex_images[i] <= vertex_images[i + 1] for i in range(m)),
        "vertex images must be monotone",
    )
    Dm, Dn = simplex(m), simplex(n)
    nindex = [
        {Dn.label(d, i): i for i in range(Dn.counts[d])} for d in range(n + 1)
    ]
    images = []
    for d in range(m + 1):
        layer = []
        for i in range(Dm.counts[d]):
            src = Dm.label(d, i)
            vals = tuple(vertex_images[v] for v in src)
            dedup = tuple(sorted(set(vals)))
            base = SimplexRef(len(dedup) - 1, nindex[len(dedup) - 1][dedup])
            pos = {v: p for p, v in enumerate(dedup)}
            sigma = tuple(pos[v] for v in vals)
            layer.append(SimplexWord(base, degens_of_surjection(sigma)))
        images.append(layer)
    return SSetMap(Dm, Dn, images)


# -- tuple-indexed simplicial sets (products, pullbacks) -------------------


class TupleSSet:
    """A simplicial set whose nondegenerate simplices are tuples of words.

    Covers products (all componentwise-disjoint tuples) and strict pullbacks
    (the subfamily cut out by equalities).  EZ normal forms of arbitrary
    tuples factor through stripping the common degeneracies.
    """

    __slots__ = ("sset", "factors", "tuples", "tindex", "projections")

    def __init__(self, factors, tuples, truncation):
        self.factors = tuple(factors)
        self.tuples = [list(layer) for layer in tuples]
        # keep layer count in step with sset.counts, which pops trailing zeros
        while self.tuples and not self.tuples[-1]:
            self.tuples.pop()
        self.tindex = [
            {t: i for i, t in enumerate(layer)} for layer in self.tuples
        ]
        counts = [len(layer) for layer in self.tuples]
        faces = []
        for p, layer in enumerate(self.tuples):
            if p == 0:
                faces.append(tuple(() for _ in layer))
                continue
            recs = []
            for t in layer:
                recs.append(
                    tuple(self._word_of_raw(
                        tuple(self.factors[c].face_of(t[c], i) for c in range(len(t)))
                    ) for i in range(p + 1))
                )
            faces.append(tuple(recs))
        labels = [[tuple(t) for t in layer] for layer in self.tuples]
        self.sset = FinSSet(counts, faces, truncation=truncation, labels=labels)
        self.projections = tuple(
            SSetMap(
                self.sset,
                self.factors[c],
                [
                    [t[c] for t in layer]
                    for layer in self.tuples
                ],
                validate=False,
            )
            for c in range(len(self.factors))
        )

    def _word_of_raw(self, t: tuple[SimplexWord, ...]) -> SimplexWord:
        common = set(t[0].degens)
        for w in t[1:]:
            common &= set(w.degens)
        stripped = tuple(strip_degens(w, common) for w in t)
        d = stripped[0].dim
        idx = self.tindex[d].get(stripped)
        if idx is None:
            raise ValidationError(f"tuple {stripped} not present in dimension {d}")
        return SimplexWord(SimplexRef(d, idx), tuple(sorted(common, reverse=True)))

    def word_of_tuple(self, t) -> SimplexWord:
        """Normal form of an arbitrary tuple of same-dimension words."""
        return self._word_of_raw(tuple(t))

    def tuple_of_word(self, w: SimplexWord) -> tuple[SimplexWord, ...]:
        base = self.tuples[w.base.dim][w.base.index]
        return tuple(apply_degens(c, w.degens) for c in base)


def _combined_truncation(factors) -> int | None:
    bounds = [A.truncation for A in factors if A.truncation is not None]
    return min(bounds) if bounds else None


def product_many(factors) -> TupleSSet:
    """Product of finitely many simplicial sets via shuffle words."""
    factors = list(factors)
    _check(len(factors) >= 1, "product needs at least one factor")
    tr = _combined_truncation(factors)
    top = sum(max(A.dim, 0) if A.counts else 0 for A in factors)
    if any(not A.counts for A in factors):
        return TupleSSet(factors, [], tr)
    if tr is not None:
        top = min(top, tr)
    tuples: list[list[tuple[SimplexWord, ...]]] = []
    for p in range(top + 1):
        layer: list[tuple[SimplexWord, ...]] = []
        words = [A.words(p) for A in factors]

        def rec(c: int, acc: tuple, used_all: frozenset[int] | None):
            if c == len(factors):
                if not used_all:
                    layer.append(acc)
                return
            for w in words[c]:
                ds = frozenset(w.degens)
                nxt = ds if used_all is None else (used_all & ds)
                if c + 1 == len(factors) and nxt:
                    continue
                rec(c + 1, acc + (w,), nxt)

        rec(0, (), None)
        tuples.append(layer)
    return TupleSSet(factors, tuples, tr)


def product(A: FinSSet, B: FinSSet) -> TupleSSet:
    return product_many([A, B])


def pairing(maps, target: TupleSSet) -> SSetMap:
    """The map <f_1,...,f_k> into a tuple-indexed simplicial set."""
    maps = list(maps)
    _check(len(maps) == len(target.factors), "one leg per factor required")
    dom = maps[0].dom
    for f in maps[1:]:
        _check(f.dom == dom, "pairing legs must share a domain")
    images = []
    for n in range(len(dom.counts)):
        layer = []
        for i in range(dom.counts[n]):
            layer.append(
                target.word_of_tuple([f.images[n][i] for f in maps])
            )
        images.append(layer)
    return SSetMap(dom, target.sset, images)


def pullback(f: SSetMap, g: SSetMap) -> TupleSSet:
    """Strict pullback of f: A -> C and g: B -> C as a tuple sset."""
    _check(f.cod == g.cod, "pullback legs must share a codomain")
    A, B = f.dom, g.dom
    tr = _combined_truncation([A, B, f.cod])
    top = (max(A.dim, 0) + max(B.dim, 0)) if (A.counts and B.counts) else -1
    if tr is not None:
        top = min(top, tr)
    tuples = []
    for p in range(top + 1):
        fa = f.table(p)
        gb = g.table(p)
        byimage: dict[int, list[int]] = {}
        for vid, img in enumerate(gb):
            byimage.setdefault(img, []).append(vid)
        bwords = B.words(p)
        layer = []
        for uid, u in enumerate(A.words(p)):
            bucket = byimage.get(fa[uid])
            if not bucket:
                continue
            du = set(u.degens)
            for vid in bucket:
                v = bwords[vid]
                if du.isdisjoint(v.degens):
                    layer.append((u, v))
        tuples.append(layer)
    return TupleSSet([A, B], tuples, tr)


def joined_tuples(factors, joins, truncation="auto") -> TupleSSet:
    """Tuple sset cut out of a product by componentwise map equations.

    ``joins`` lists conditions (ci, fi, cj, fj) with fi out of factor ci and
    fj out of factor cj sharing a codomain, meaning fi(t[ci]) = fj(t[cj]).
    Enumeration is lexicographic in canonical word order per dimension, with
    bucket indexes keyed by the already-chosen components, so wide pullbacks
    (iterated fiber products, boundary-compatible families) stay cheap.
    """
    factors = list(factors)
    _check(len(factors) >= 1, "joined_tuples needs at least one factor")
    tr = _combined_truncation(factors) if truncation == "auto" else truncation
    if any(not A.counts for A in factors):
        return TupleSSet(factors, [], tr)
    top = sum(max(A.dim, 0) for A in factors)
    if tr is not None:
        top = min(top, tr)
    k = len(factors)
    self_conds: list[list] = [[] for _ in range(k)]
    later_conds: list[list] = [[] for _ in range(k)]
    for ci, fi, cj, fj in joins:
        _check(
            fi.dom == factors[ci] and fj.dom == factors[cj],
            "join leg does not start at its factor",
        )
        _check(fi.cod == fj.cod, "join legs must share a codomain")
        if ci == cj:
            self_conds[ci].append((fi, fj))
        elif ci < cj:
            later_conds[cj].append((ci, fi, fj))
        else:
            later_conds[ci].append((cj, fj, fi))
    tuples = []
    for p in range(top + 1):
        words = [A.words(p) for A in factors]
        ok_ids: list[list[int]] = []
        for c in range(k):
            ids = list(range(len(words[c])))
            for fi, fj in self_conds[c]:
                ti, tj = fi.table(p), fj.table(p)
                ids = [x for x in ids if ti[x] == tj[x]]
            ok_ids.append(ids)
        # per factor: (earlier component, its table, this factor's table)
        tabs = [
            [(other, fo.table(p), ft.table(p)) for other, fo, ft in later_conds[c]]
            for c in range(k)
        ]
        index: list[dict | None] = []
        for c in range(k):
            if not tabs[c]:
                index.append(None)
                continue
            d: dict[tuple, list[int]] = {}
            for x in ok_ids[c]:
                d.setdefault(tuple(tt[x] for _, _, tt in tabs[c]), []).append(x)
            index.append(d)
        layer: list[tuple] = []
        acc: list[int] = []

        def rec(c: int, common):
            if c == k:
                if not common:
                    layer.append(tuple(words[cc][x] for cc, x in enumerate(acc)))
                return
            if index[c] is None:
                cand = ok_ids[c]
            else:
                key = tuple(fo[acc[other]] for other, fo, _ in tabs[c])
                cand = index[c].get(key, ())
            for x in cand:
                ds = frozenset(words[c][x].degens)
                nxt = ds if common is None else (common & ds)
                if c + 1 == k and nxt:
                    continue
                acc.append(x)
                rec(c + 1, nxt)
                acc.pop()

        rec(0, None)
        tuples.append(layer)
    return TupleSSet(factors, tuples, tr)


# -- subcomplexes ----------------------------------------------------------


class Subcomplex:
    """A face-closed collection of nondegenerate simplices of a parent."""

    __slots__ = ("parent", "refs", "sset", "inclusion")

    def __init__(self, parent: FinSSet, refs):
        self.parent = parent
        closed: set[SimplexRef] = set()
        for r in refs:
            closed |= parent.face_closure(r.dim, r.index)
        self.refs = [
            sorted(i for d, i in ((r.dim, r.index) for r in closed) if d == n)
            for n in range(parent.dim + 1)
        ]
        while self.refs and not self.refs[-1]:
            self.refs.pop()
        index = [
            {idx: pos for pos, idx in enumerate(layer)} for layer in self.refs
        ]
        counts = [len(layer) for layer in self.refs]
        faces = []
        for n, layer in enumerate(self.refs):
            if n == 0:
                faces.append(tuple(() for _ in layer))
                continue
            recs = []
            for idx in layer:
                rec = []
                for w in parent.faces[n][idx]:
                    rec.append(
                        SimplexWord(
                            SimplexRef(
                                w.base.dim, index[w.base.dim][w.base.index]
                            ),
                            w.degens,
                        )
                    )
                recs.append(tuple(rec))
            faces.append(tuple(recs))
        labels = [
            [parent.label(n, idx) for idx in layer]
            for n, layer in enumerate(self.refs)
        ]
        self.sset = FinSSet(
            counts, faces, truncation=parent.truncation, labels=labels
        )
        self.inclusion = SSetMap(
            self.sset,
            parent,
            [
                [SimplexWord(SimplexRef(n, idx), ()) for idx in layer]
                for n, layer in enumerate(self.refs)
            ],
            validate=False,
        )

    def from_parent(self, w: SimplexWord) -> SimplexWord | None:
        """Express a parent word in subcomplex coordinates, if present."""
        if w.base.dim >= len(self.refs):
            return None
        try:
            pos = self.refs[w.base.dim].index(w.base.index)
        except ValueError:
            return None
        return SimplexWord(SimplexRef(w.base.dim, pos), w.degens)


def faces_containing(A: FinSSet, alpha: SimplexWord) -> Subcomplex:
    """Union of the faces of A (single-simplex subcomplexes) containing alpha.

    For degenerate alpha the base is used; the result contains alpha's base
    and is natural in alpha: beta a face of alpha implies C_alpha <= C_beta.
    """
    target = alpha.base
    refs = []
    for n in range(A.dim + 1):
        for idx in range(A.counts[n]):
            if target in A.face_closure(n, idx):
                refs.append(SimplexRef(n, idx))
    return Subcomplex(A, refs)


# -- colimits ---------------------------------------------------------------


class Coproduct:
    __slots__ = ("sset", "injections", "offsets")

    def __init__(self, parts):
        parts = list(parts)
        bounds = [A.truncation for A in parts if A.truncation is not None]
        tr = min(bounds) if bounds else None
        top = max((A.dim for A in parts), default=-1)
        counts = [0] * (top + 1)
        offsets = []
        for A in parts:
            offsets.append(tuple(counts[n] if n <= A.dim else 0 for n in range(top + 1)))
            for n in range(A.dim + 1):
                counts[n] += A.counts[n]
        faces = []
        labels = []
        for n in range(top + 1):
            recs = []
            labs = []
            for k, A in enumerate(parts):
                if n > A.dim:
                    continue
                off = offsets[k]
                for idx in range(A.counts[n]):
                    rec = tuple(
                        SimplexWord(
                            SimplexRef(w.base.dim, w.base.index + off[w.base.dim]),
                            w.degens,
                        )
                        for w in A.faces[n][idx]
                    )
                    recs.append(rec if n > 0 else ())
                    labs.append((k, A.label(n, idx)))
            faces.append(tuple(recs))
            labels.append(labs)
        self.sset = FinSSet(counts, faces, truncation=tr, labels=labels)
        self.offsets = offsets
        self.injections = tuple(
            SSetMap(
                A,
                self.sset,
                [
                    [
                        SimplexWord(SimplexRef(n, i + offsets[k][n]), ())
                        for i in range(A.counts[n])
                    ]
                    for n in range(A.dim + 1)
                ],
                validate=False,
            )
            for k, A in enumerate(parts)
        )


class Coequalizer:
    """Coequalizer of a parallel pair f, g: C -> A.

    Computed dimensionwise by equivalence closure on all simplex words; the
    quotient's normal forms are recovered by peeling degenerate members.
    """

    __slots__ = ("sset", "proj", "_parents", "_roots", "_qword", "A")

    def __init__(self, f: SSetMap, g: SSetMap):
        _check(f.dom == g.dom and f.cod == g.cod, "parallel pair expected")
        A, C = f.cod, f.dom
        self.A = A
        top = A.dim
        self._parents: list[list[int]] = []
        for n in range(top + 1):
            parent = list(range(A.n_words(n)))

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a, b in zip(f.table(n), g.table(n)):
                ra, rb = find(a), find(b)
                if ra != rb:
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
            self._parents.append([find(x) for x in range(len(parent))])
        # members per root, nondegenerate classes in canonical order
        self._roots = []
        counts = []
        nd_index: list[dict[int, int]] = []
        members_all = []
        for n in range(top + 1):
            members: dict[int, list[int]] = {}
            for x, r in enumerate(self._parents[n]):
                members.setdefault(r, []).append(x)
            members_all.append(members)
            words = A.words(n)
            nd_roots = [
                r
                for r in sorted(members)
                if all(not words[x].degens for x in members[r])
            ]
            self._roots.append(nd_roots)
            nd_index.append({r: i for i, r in enumerate(nd_roots)})
            counts.append(len(nd_roots))
        self._qword: list[dict[int, SimplexWord]] = [dict() for _ in range(top + 1)]

        def qword(n: int, root: int) -> SimplexWord:
            got = self._qword[n].get(root)
            if got is not None:
                return got
            if root in nd_index[n]:
                res = SimplexWord(SimplexRef(n, nd_index[n][root]), ())
            else:
                words = A.words(n)
                w = next(words[x] for x in members_all[n][root] if words[x].degens)
                j = w.degens[0]
                inner = SimplexWord(w.base, w.degens[1:])
                res = degen_word(
                    qword(n - 1, self._parents[n - 1][A.wid(inner)]), j
                )
            self._qword[n][root] = res
            return res

        faces = []
        for n in range(top + 1):
            if n == 0:
                faces.append(tuple(() for _ in self._roots[0]))
                continue
            recs = []
            words = A.words(n)
            for r in self._roots[n]:
                rep = A.words(n)[min(members_all[n][r])]
                rec = tuple(
                    qword(
                        n - 1,
                        self._parents[n - 1][A.wid(A.face_of(rep, i))],
                    )
                    for i in range(n + 1)
                )
                recs.append(rec)
            faces.append(tuple(recs))
        self.sset = FinSSet(counts, faces, truncation=A.truncation)
        self.proj = SSetMap(
            A,
            self.sset,
            [
                [
                    qword(n, self._parents[n][A.wid(A.nondeg_word(n, i))])
                    for i in range(A.counts[n])
                ]
                for n in range(top + 1)
            ],
        )

    def class_word(self, w: SimplexWord) -> SimplexWord:
        """Quotient normal form of an arbitrary word of A."""
        return self.proj.apply(w)


class Pushout:
    __slots__ = ("sset", "inl", "inr")

    def __init__(self, f: SSetMap, g: SSetMap):
        _check(f.dom == g.dom, "pushout legs must share a domain")
        if not (check_map(f).mono or check_map(g).mono):
            raise ValidationError(
                "pushout requires at least one monomorphism leg"
            )
        co = Coproduct([f.cod, g.cod])
        ceq = Coequalizer(
            compose_maps(co.injections[0], f), compose_maps(co.injections[1], g)
        )
        self.sset = ceq.sset
        self.inl = compose_maps(ceq.proj, co.injections[0])
        self.inr = compose_maps(ceq.proj, co.injections[1])


def colimit(kind: str, *args):
    """Dispatcher: coproduct(parts), pushout(f, g), coequalizer(f, g)."""
    if kind == "coproduct":
        return Coproduct(args[0] if len(args) == 1 else list(args))
    if kind == "pushout":
        return Pushout(*args)
    if kind == "coequalizer":
        return Coequalizer(*args)
    raise ValidationError(f"unknown colimit kind {kind!r}")


# -- map enumeration --------------------------------------------------------


def enumerate_maps(A: FinSSet, X: FinSSet, order: str = "canonical", limit=None):
    """All simplicial maps A -> X, complete and deterministically ordered.

    Backtracking over nondegenerate simplices in dimension order; images of
    faces are forced by earlier choices, so candidates come from an index of
    X-simplices by face tuples.  ``order="reversed"`` is an independently
    ordered second search used by completeness cross-checks.
    """
    if A.truncation is not None:
        raise TruncationError(
            "maps out of a truncated object are underdetermined"
        )
    if A.counts:
        X.require_data(A.dim)
    cells = []
    for n in range(A.dim + 1):
        layer = list(range(A.counts[n]))
        if order == "reversed":
            layer.reverse()
        cells.extend((n, i) for i in layer)
    assigned: list[list[int | None]] = [
        [None] * A.counts[n] for n in range(A.dim + 1)
    ]
    results: list[SSetMap] = []

    def image_of_word(w: SimplexWord) -> int:
        wid = assigned[w.base.dim][w.base.index]
        d = w.base.dim
        for j in reversed(w.degens):
            wid = X.dtab(d, j)[wid]
            d += 1
        return wid

    def rec(k: int) -> bool:
        if k == len(cells):
            images = [
                [X.words(n)[assigned[n][i]] for i in range(A.counts[n])]
                for n in range(A.dim + 1)
            ]
            results.append(SSetMap(A, X, images, validate=False))
            return limit is not None and len(results) >= limit
        n, idx = cells[k]
        if n == 0:
            cand = range(X.n_words(0))
        else:
            required = tuple(
                image_of_word(A.faces[n][idx][i]) for i in range(n + 1)
            )
            cand = X.facekey(n).get(required, ())
        it = reversed(list(cand)) if order == "reversed" else cand
        for wid in it:
            assigned[n][idx] = wid
            if rec(k + 1):
                return True
            assigned[n][idx] = None
        return False

    rec(0)
    return results


# -- checks -----------------------------------------------------------------


@dataclass(frozen=True)
class MapCheck:
    mono: bool
    iso: bool
    witness: tuple | None = None


def check_map(f: SSetMap) -> MapCheck:
    """Monomorphism and isomorphism flags.

    mono holds iff every nondegenerate simplex maps to a nondegenerate
    simplex and distinct nondegenerates stay distinct in each dimension;
    this is equivalent to levelwise injectivity on all simplices.
    """
    witness = None
    mono = True
    for n, layer in enumerate(f.images):
        seen: dict[SimplexWord, int] = {}
        for idx, w in enumerate(layer):
            if w.degens:
                mono, witness = False, (n, idx, "image degenerate")
                break
            if w in seen:
                mono, witness = False, (n, idx, f"collides with ({n},{seen[w]})")
                break
            seen[w] = idx
        if not mono:
            break
    iso = (
        mono
        and f.dom.counts == f.cod.counts
        and f.dom.truncation == f.cod.truncation
    )
    return MapCheck(mono, iso, witness)


def invert_iso(f: SSetMap) -> SSetMap:
    """The inverse of an isomorphism; raises if f is not one."""
    chk = check_map(f)
    if not chk.iso:
        raise ValidationError(f"map is not an isomorphism: {chk.witness}")
    images = []
    for n in range(len(f.cod.counts)):
        back = {w.base.index: idx for idx, w in enumerate(f.images[n])}
        images.append(
            [SimplexWord(SimplexRef(n, back[i]), ()) for i in range(f.cod.counts[n])]
        )
    return SSetMap(f.cod, f.dom, images, validate=False)


@dataclass(frozen=True)
class SSetCheck:
    nonsingular: bool
    witness: SimplexRef | None
    counts: tuple[int, ...]
    dim: int
    truncation: int | None


def char_map(A: FinSSet, ref: SimplexRef) -> SSetMap:
    """Characteristic map simplex(n) -> A of a nondegenerate n-simplex.

    The image of a vertex subset is obtained by stripping the absent
    vertices in descending order; removing vertex v while everything below
    v is still present is always the v-th face.
    """
    n = ref.dim
    Dn = simplex(n)
    images: list[list[SimplexWord]] = [[] for _ in range(n + 1)]
    for d in range(n + 1):
        for i in range(Dn.counts[d]):
            sub = set(Dn.label(d, i))
            w = SimplexWord(ref, ())
            for v in range(n, -1, -1):
                if v not in sub:
                    w = A.face_of(w, v)
            images[d].append(w)
    return SSetMap(Dn, A, images)


def check_sset(A: FinSSet) -> SSetCheck:
    """Structural report; nonsingular = all characteristic maps are mono."""
    witness = None
    nonsingular = True
    for n in range(A.dim + 1):
        for idx in range(A.counts[n]):
            if not check_map(char_map(A, SimplexRef(n, idx))).mono:
                nonsingular = False
                witness = SimplexRef(n, idx)
                break
        if not nonsingular:
            break
    return SSetCheck(nonsingular, witness, A.counts, A.dim, A.truncation)
