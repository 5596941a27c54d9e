"""Bisimplicial sets as lazily materialized rows of simplicial sets.

A ``BiSSet`` exposes row m (a vertical simplicial set) together with the
horizontal face and degeneracy maps between adjacent rows; rows are built
on demand and memoized, so unbounded families such as external products
stay cheap.  On top of the row view sit the levelwise nerve of a
simplicial groupoid, the diagonal, the external product, the left adjoint
d* of the diagonal in both its closed-form row description (disjoint
unions of closed stars) and its generic colimit presentation, the
transposition along the d* -| diag adjunction, horizontal matching
objects, and the horizontal Reedy check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .builder import BuiltSSet, build_sset, map_from_raw
from .groupoid import interval_gpd
from .sgpd import (
    SGpdMap,
    SGpdNatIso,
    SimpGroupoid,
    constant_sgpd,
    row,
    row_degen,
    row_face,
    row_map,
    sgpd_product,
)
from .sset import (
    Coequalizer,
    Coproduct,
    FinSSet,
    SSetMap,
    Subcomplex,
    TruncationError,
    TupleSSet,
    ValidationError,
    _check,
    char_map,
    check_map,
    compose_maps,
    constant_map,
    faces_containing,
    identity_map,
    invert_iso,
    joined_tuples,
    pairing,
    product,
    pullback,
    simplex,
    simplex_map,
    truncate,
)
from .words import SimplexRef, SimplexWord, apply_degens, surjection_of_word


def _vw(i: int) -> SimplexWord:
    return SimplexWord(SimplexRef(0, i), ())


class BiSSet:
    """A bisimplicial set seen through its rows.

    ``row(m)`` is the vertical simplicial set at horizontal level m;
    ``hface(m, i)`` and ``hdegen(m, j)`` are the horizontal structure maps
    row m -> row m-1 and row m -> row m+1.  The producing callbacks receive
    the view itself so they can reuse memoized rows.  ``h_bound`` and
    ``v_bound`` record how far the data extends; ``None`` means unbounded.
    ``diag_order`` optionally fixes the enumeration of the diagonal layers
    (constructions aligned with products supply pair-lexicographic order).
    """

    __slots__ = (
        "h_bound",
        "v_bound",
        "_row_fn",
        "_hface_fn",
        "_hdegen_fn",
        "_diag_order",
        "_rows",
        "_hfaces",
        "_hdegens",
        "_cache",
    )

    def __init__(
        self,
        row_fn,
        hface_fn,
        hdegen_fn,
        h_bound: int | None = None,
        v_bound: int | None = None,
        diag_order=None,
    ):
        self.h_bound = h_bound
        self.v_bound = v_bound
        self._row_fn = row_fn
        self._hface_fn = hface_fn
        self._hdegen_fn = hdegen_fn
        self._diag_order = diag_order
        self._rows: dict[int, FinSSet] = {}
        self._hfaces: dict[tuple[int, int], SSetMap] = {}
        self._hdegens: dict[tuple[int, int], SSetMap] = {}
        self._cache: dict = {}

    def require_row(self, m: int) -> None:
        _check(m >= 0, "row index must be nonnegative")
        if self.h_bound is not None and m > self.h_bound:
            raise TruncationError(
                f"row {m} exceeds the horizontal bound {self.h_bound}"
            )

    def row(self, m: int) -> FinSSet:
        self.require_row(m)
        got = self._rows.get(m)
        if got is None:
            got = self._rows[m] = self._row_fn(m)
        return got

    def hface(self, m: int, i: int) -> SSetMap:
        _check(m >= 1 and 0 <= i <= m, f"no horizontal face d_{i} at row {m}")
        self.require_row(m)
        got = self._hfaces.get((m, i))
        if got is None:
            got = self._hfaces[(m, i)] = self._hface_fn(self, m, i)
        return got

    def hdegen(self, m: int, j: int) -> SSetMap:
        _check(m >= 0 and 0 <= j <= m, f"no horizontal degeneracy s_{j} at row {m}")
        self.require_row(m + 1)
        got = self._hdegens.get((m, j))
        if got is None:
            got = self._hdegens[(m, j)] = self._hdegen_fn(self, m, j)
        return got

    def diag_layer(self, n: int) -> list[SimplexWord]:
        """All n-words of row n, in the order the diagonal enumerates them."""
        if self._diag_order is not None:
            return list(self._diag_order(self, n))
        return list(self.row(n).words(n))

    def check_identities(self, h_top: int | None = None) -> None:
        """Verify the horizontal simplicial identities as map equalities."""
        top = self.h_bound if h_top is None else h_top
        _check(top is not None, "an explicit horizontal bound is required")
        for m in range(2, top + 1):
            for j in range(m + 1):
                for i in range(j):
                    lhs = compose_maps(self.hface(m - 1, i), self.hface(m, j))
                    rhs = compose_maps(self.hface(m - 1, j - 1), self.hface(m, i))
                    if lhs != rhs:
                        raise ValidationError(
                            f"horizontal identity d_{i} d_{j} fails at row {m}"
                        )
        for m in range(top - 1):
            for j in range(m + 1):
                for i in range(j + 1):
                    lhs = compose_maps(self.hdegen(m + 1, i), self.hdegen(m, j))
                    rhs = compose_maps(self.hdegen(m + 1, j + 1), self.hdegen(m, i))
                    if lhs != rhs:
                        raise ValidationError(
                            f"horizontal identity s_{i} s_{j} fails at row {m}"
                        )
        for m in range(top):
            for j in range(m + 1):
                for i in range(m + 2):
                    lhs = compose_maps(self.hface(m + 1, i), self.hdegen(m, j))
                    if i == j or i == j + 1:
                        if lhs != identity_map(self.row(m)):
                            raise ValidationError(
                                f"horizontal d_{i} s_{j} is not the identity at row {m}"
                            )
                        continue
                    if i < j:
                        rhs = compose_maps(self.hdegen(m - 1, j - 1), self.hface(m, i))
                    else:
                        rhs = compose_maps(self.hdegen(m - 1, j), self.hface(m, i - 1))
                    if lhs != rhs:
                        raise ValidationError(
                            f"horizontal identity d_{i} s_{j} fails at row {m}"
                        )


class BiSSetMap:
    """Rowwise simplicial maps commuting with the horizontal structure."""

    __slots__ = ("dom", "cod", "parts")

    def __init__(self, dom: BiSSet, cod: BiSSet, parts, validate: bool = True):
        self.dom = dom
        self.cod = cod
        self.parts = tuple(parts)
        _check(len(self.parts) >= 1, "at least row 0 is required")
        if validate:
            self._validate()

    @property
    def h_bound(self) -> int:
        return len(self.parts) - 1

    def row(self, m: int) -> SSetMap:
        return self.parts[m]

    def _validate(self) -> None:
        M = self.h_bound
        for m, f in enumerate(self.parts):
            _check(
                f.dom == self.dom.row(m) and f.cod == self.cod.row(m),
                f"row {m} map has wrong endpoints",
            )
        for m in range(1, M + 1):
            for i in range(m + 1):
                lhs = compose_maps(self.cod.hface(m, i), self.parts[m])
                rhs = compose_maps(self.parts[m - 1], self.dom.hface(m, i))
                if lhs != rhs:
                    raise ValidationError(
                        f"map breaks horizontal face d_{i} at row {m}"
                    )
        for m in range(M):
            for j in range(m + 1):
                lhs = compose_maps(self.cod.hdegen(m, j), self.parts[m])
                rhs = compose_maps(self.parts[m + 1], self.dom.hdegen(m, j))
                if lhs != rhs:
                    raise ValidationError(
                        f"map breaks horizontal degeneracy s_{j} at row {m}"
                    )


# -- the levelwise nerve ------------------------------------------------------


def _vtrunc(A: FinSSet, bound: int | None) -> FinSSet:
    if bound is None or A.truncation == bound:
        return A
    return truncate(A, bound)


def _vtrunc_map(f: SSetMap, bound: int | None) -> SSetMap:
    if bound is None or (f.dom.truncation == bound and f.cod.truncation == bound):
        return f
    return SSetMap(
        _vtrunc(f.dom, bound),
        _vtrunc(f.cod, bound),
        f.images[: bound + 1],
        validate=False,
    )


def nerve_bisset(
    X: SimpGroupoid,
    h_bound: int | None = None,
    v_bound: int | None = None,
    validate: bool = True,
) -> BiSSet:
    """The levelwise nerve: row m is the strings of m composable morphisms."""
    D = X.depth
    H = D if h_bound is None else h_bound
    V = D if v_bound is None else v_bound
    if V > D:
        raise TruncationError(
            f"vertical bound {V} exceeds the groupoid truncation {D}"
        )

    def row_fn(m):
        return _vtrunc(row(X, m), V)

    def hface_fn(view, m, i):
        return _vtrunc_map(row_face(X, m, i, validate=validate), V)

    def hdegen_fn(view, m, j):
        return _vtrunc_map(row_degen(X, m, j, validate=validate), V)

    return BiSSet(row_fn, hface_fn, hdegen_fn, h_bound=H, v_bound=V)


def nerve_bisset_map(
    p: SGpdMap,
    dom_view: BiSSet,
    cod_view: BiSSet,
    h_bound: int | None = None,
    validate: bool = True,
) -> BiSSetMap:
    """The rowwise map of levelwise nerves induced by a simplicial functor."""
    bounds = [b for b in (dom_view.h_bound, cod_view.h_bound) if b is not None]
    if h_bound is None:
        _check(bounds, "an explicit horizontal bound is required")
        H = min(bounds)
    else:
        H = h_bound
    parts = [
        _vtrunc_map(row_map(p, m, validate=validate), dom_view.v_bound)
        for m in range(H + 1)
    ]
    return BiSSetMap(dom_view, cod_view, parts, validate=validate)


# -- the diagonal -------------------------------------------------------------


def diag_built(B: BiSSet, depth: int | None = None) -> BuiltSSet:
    """The diagonal as a built simplicial set; raws are words of row n."""
    if depth is None:
        bounds = [b for b in (B.h_bound, B.v_bound) if b is not None]
        _check(bounds, "an explicit depth is required for unbounded views")
        depth = min(bounds)
    got = B._cache.get(("diag", depth))
    if got is not None:
        return got
    layers = [B.diag_layer(n) for n in range(depth + 1)]

    def face_fn(n, w, i):
        return B.hface(n, i).apply(B.row(n).face_of(w, i))

    def degen_fn(n, w, j):
        return B.hdegen(n, j).apply(B.row(n).degen_of(w, j))

    built = build_sset(layers, face_fn, degen_fn, truncation=depth)
    B._cache[("diag", depth)] = built
    return built


def diag(B: BiSSet, depth: int | None = None) -> FinSSet:
    """Level n of the diagonal is row n at vertical dimension n."""
    return diag_built(B, depth).sset


def diag_map(F: BiSSetMap, dom_d: BuiltSSet, cod_d: BuiltSSet) -> SSetMap:
    """The simplicial map of diagonals induced by a rowwise map."""

    def fn(n, w):
        return F.parts[n].apply(w)

    return map_from_raw(dom_d, cod_d, fn)


# -- sing: diagonal of the levelwise nerve ------------------------------------


def sing_built(X: SimpGroupoid, depth: int | None = None) -> BuiltSSet:
    D = X.depth if depth is None else depth
    got = X._cache.get(("sing", D))
    if got is None:
        view = nerve_bisset(X, h_bound=D, v_bound=min(D, X.depth), validate=False)
        got = diag_built(view, D)
        X._cache[("sing", D)] = got
    return got


def sing(X: SimpGroupoid, depth: int | None = None) -> FinSSet:
    """The diagonal of the levelwise nerve, truncated at the given depth."""
    return sing_built(X, depth).sset


def sing_map(p: SGpdMap, depth: int | None = None) -> SSetMap:
    """The map of diagonals induced by a map of simplicial groupoids."""
    D = min(p.dom.depth, p.cod.depth) if depth is None else depth
    dom_b = sing_built(p.dom, D)
    cod_b = sing_built(p.cod, D)

    def fn(n, w):
        return row_map(p, n, validate=False).apply(w)

    return map_from_raw(dom_b, cod_b, fn)


# -- homotopies from natural isomorphisms --------------------------------------


def nat_iso_to_homotopy(alpha: SGpdNatIso, depth: int | None = None) -> SSetMap:
    """A simplicial homotopy between the diagonals of naturally isomorphic maps.

    The cylinder is driven by the nerve of the two-object chaotic groupoid:
    the returned map goes from sing(dom) x Delta^1 to sing(cod), restricting
    along the two ends to sing of the source and target functors.
    """
    F, G = alpha.fsrc, alpha.ftgt
    X, Y = F.dom, F.cod
    D = X.depth if depth is None else depth
    J = interval_gpd()
    K = constant_sgpd(J, X.depth)
    span = sgpd_product(X, K)
    W = span.sgpd

    # collapse the cylinder along the components of alpha
    oimg = []
    for n in range(len(W.obj.counts)):
        layer = []
        for xw, ew in span.obj_view.tuples[n]:
            fn = F.on_obj if ew.base.index == 0 else G.on_obj
            layer.append(fn.apply(xw))
        oimg.append(layer)
    mimg = []
    for n in range(len(W.mor.counts)):
        layer = []
        for uw, hw in span.mor_view.tuples[n]:
            a, b = J.mor_labels[hw.base.index]
            if (a, b) == (0, 0):
                layer.append(F.on_mor.apply(uw))
            elif (a, b) == (1, 1):
                layer.append(G.on_mor.apply(uw))
            else:
                cw = alpha.component.apply(X.src.apply(uw))
                if (a, b) == (0, 1):
                    layer.append(Y.compose_words(G.on_mor.apply(uw), cw))
                else:
                    layer.append(
                        Y.compose_words(F.on_mor.apply(uw), Y.invert.apply(cw))
                    )
        mimg.append(layer)
    phi = SGpdMap(
        W,
        Y,
        SSetMap(W.obj, Y.obj, oimg, validate=False),
        SSetMap(W.mor, Y.mor, mimg, validate=False),
    )

    singX = sing_built(X, D)
    singK = sing_built(K, D)
    P = product(singX.sset, singK.sset)
    mu = pairing([sing_map(span.left, D), sing_map(span.right, D)], P)

    Q = product(singX.sset, simplex(1))
    edge = J.mor_labels.index((0, 1))
    iota = SSetMap(
        simplex(1),
        singK.sset,
        [
            [singK.word_of_raw(0, _vw(0)), singK.word_of_raw(0, _vw(1))],
            [singK.word_of_raw(1, apply_degens(_vw(edge), (0,)))],
        ],
    )
    into_p = pairing(
        [Q.projections[0], compose_maps(iota, Q.projections[1])], P
    )
    return compose_maps(
        sing_map(phi, D), compose_maps(invert_iso(mu), into_p)
    )


def homotopy_ends(H: SSetMap, Q: TupleSSet) -> tuple[SSetMap, SSetMap]:
    """Restrictions of a cylinder map along the two ends of the interval."""
    A = Q.factors[0]
    ends = []
    for v in (0, 1):
        e = pairing([identity_map(A), constant_map(A, Q.factors[1], v)], Q)
        ends.append(compose_maps(H, e))
    return ends[0], ends[1]


# -- external products ---------------------------------------------------------


def _copies(B: FinSSet, count: int) -> FinSSet:
    """The disjoint union of ``count`` copies of B, copy-major per dimension."""
    counts = [c * count for c in B.counts]
    faces = []
    for n in range(len(B.counts)):
        recs = []
        for k in range(count):
            for idx in range(B.counts[n]):
                recs.append(
                    tuple(
                        SimplexWord(
                            SimplexRef(
                                w.base.dim,
                                w.base.index + k * B.counts[w.base.dim],
                            ),
                            w.degens,
                        )
                        for w in B.faces[n][idx]
                    )
                )
        faces.append(tuple(recs))
    return FinSSet(counts, faces, truncation=B.truncation, validate=False)


def _copy_word(B: FinSSet, k: int, w: SimplexWord) -> SimplexWord:
    """The word of the k-th copy of B corresponding to a word of B."""
    return SimplexWord(
        SimplexRef(w.base.dim, w.base.index + k * B.counts[w.base.dim]),
        w.degens,
    )


def exterior(A: FinSSet, B: FinSSet) -> BiSSet:
    """The external product: row m is one copy of B per m-simplex of A.

    Horizontal structure reindexes copies along the simplex operators of A;
    the diagonal layers are enumerated pair-lexicographically, so the
    diagonal equals the binary product literally.
    """

    def row_fn(m):
        A.require_data(m)
        return _copies(B, A.n_words(m))

    def _reindex(view, m, target_m, op):
        dom = view.row(m)
        cod = view.row(target_m)
        images: list[list[SimplexWord]] = [[] for _ in range(len(dom.counts))]
        for k, a in enumerate(A.words(m)):
            k2 = A.wid(op(a))
            for n in range(len(B.counts)):
                off = k2 * B.counts[n]
                for idx in range(B.counts[n]):
                    images[n].append(SimplexWord(SimplexRef(n, off + idx), ()))
        return SSetMap(dom, cod, images, validate=False)

    def hface_fn(view, m, i):
        return _reindex(view, m, m - 1, lambda a: A.face_of(a, i))

    def hdegen_fn(view, m, j):
        return _reindex(view, m, m + 1, lambda a: A.degen_of(a, j))

    def diag_order(view, n):
        A.require_data(n)
        B.require_data(n)
        return [
            _copy_word(B, k, w)
            for k in range(A.n_words(n))
            for w in B.words(n)
        ]

    return BiSSet(
        row_fn,
        hface_fn,
        hdegen_fn,
        h_bound=A.truncation,
        v_bound=B.truncation,
        diag_order=diag_order,
    )


def _ext_row_map(
    f: SSetMap,
    g: SSetMap,
    m: int,
    dom_view: BiSSet,
    cod_view: BiSSet,
    validate: bool = True,
) -> SSetMap:
    """Row m of the external product of two simplicial maps."""
    A1, B1 = f.dom, g.dom
    A2, B2 = f.cod, g.cod
    dom = dom_view.row(m)
    cod = cod_view.row(m)
    images: list[list[SimplexWord]] = [[] for _ in range(len(dom.counts))]
    for a in A1.words(m):
        k2 = A2.wid(f.apply(a))
        for n in range(len(B1.counts)):
            for idx in range(B1.counts[n]):
                gw = g.apply(B1.nondeg_word(n, idx))
                images[n].append(_copy_word(B2, k2, gw))
    return SSetMap(dom, cod, images, validate=validate)


def exterior_map(
    f: SSetMap,
    g: SSetMap,
    dom_view: BiSSet,
    cod_view: BiSSet,
    h_bound: int,
) -> BiSSetMap:
    """The rowwise map of external products induced by a pair of maps."""
    parts = [
        _ext_row_map(f, g, m, dom_view, cod_view) for m in range(h_bound + 1)
    ]
    return BiSSetMap(dom_view, cod_view, parts)


# -- d*: closed-form rows -------------------------------------------------------


class DStar:
    """d*(A): row m is the disjoint union of closed stars of the m-words of A.

    For a word alpha, the component C_alpha is the union of the closures of
    the simplices having alpha's base among their iterated faces.  Horizontal
    faces include components (the star of a word contains the star of its
    faces), horizontal degeneracies reindex them.  When an ambient embedding
    gamma: A -> B is supplied, ``comparison`` is the rowwise monomorphism
    into exterior(A, B) restricting gamma on each component.
    """

    __slots__ = ("A", "view", "h_bound", "ambient", "comparison", "_subs", "_cops")

    def __init__(
        self,
        A: FinSSet,
        gamma: SSetMap | None = None,
        h_bound: int | None = None,
    ):
        if A.truncation is not None:
            raise TruncationError("d* of a truncated object is underdetermined")
        self.A = A
        self.h_bound = max(A.dim, 0) if h_bound is None else h_bound
        self._subs: dict[int, list[Subcomplex]] = {}
        self._cops: dict[int, Coproduct] = {}

        def row_fn(m):
            return self._data(m)[1].sset

        def hface_fn(view, m, i):
            return self._structure(m, m - 1, lambda a: A.face_of(a, i))

        def hdegen_fn(view, m, j):
            return self._structure(m, m + 1, lambda a: A.degen_of(a, j))

        self.view = BiSSet(row_fn, hface_fn, hdegen_fn, v_bound=None)

        self.ambient = None
        self.comparison = None
        if gamma is not None:
            chk = check_map(gamma)
            if not chk.mono:
                raise ValidationError(
                    f"ambient comparison requires a monomorphism: {chk.witness}"
                )
            _check(gamma.dom == A, "the embedding must start at A")
            B = gamma.cod
            self.ambient = exterior(A, B)
            parts = []
            for m in range(self.h_bound + 1):
                subs, cop = self._data(m)
                images: list[list[SimplexWord]] = [
                    [] for _ in range(len(cop.sset.counts))
                ]
                for k, sub in enumerate(subs):
                    for n in range(len(sub.sset.counts)):
                        for c in range(sub.sset.counts[n]):
                            gw = gamma.apply(sub.inclusion.images[n][c])
                            images[n].append(_copy_word(B, k, gw))
                parts.append(SSetMap(cop.sset, self.ambient.row(m), images))
            self.comparison = BiSSetMap(self.view, self.ambient, parts)

    def _data(self, m: int) -> tuple[list[Subcomplex], Coproduct]:
        if m not in self._subs:
            self.A.require_data(m)
            subs = [faces_containing(self.A, w) for w in self.A.words(m)]
            self._subs[m] = subs
            self._cops[m] = Coproduct([s.sset for s in subs])
        return self._subs[m], self._cops[m]

    def components(self, m: int) -> list[Subcomplex]:
        return self._data(m)[0]

    def component_inclusion(self, m: int, k: int) -> SSetMap:
        """The inclusion of the k-th closed star into row m."""
        return self._data(m)[1].injections[k]

    def _structure(self, m: int, target_m: int, op) -> SSetMap:
        A = self.A
        subs, cop = self._data(m)
        tsubs, tcop = self._data(target_m)
        images: list[list[SimplexWord]] = [
            [] for _ in range(len(cop.sset.counts))
        ]
        for k, sub in enumerate(subs):
            k2 = A.wid(op(A.words(m)[k]))
            tsub = tsubs[k2]
            inj = tcop.injections[k2]
            for n in range(len(sub.sset.counts)):
                for c in range(sub.sset.counts[n]):
                    w2 = tsub.from_parent(sub.inclusion.images[n][c])
                    if w2 is None:
                        raise ValidationError(
                            "closed-star monotonicity violated; this is a bug"
                        )
                    images[n].append(inj.apply(w2))
        return SSetMap(cop.sset, tcop.sset, images)


def d_star(
    A: FinSSet,
    gamma: SSetMap | None = None,
    h_bound: int | None = None,
) -> DStar:
    """The left adjoint of the diagonal, in its closed-form row description."""
    return DStar(A, gamma, h_bound)


# -- d*: generic colimit presentation -------------------------------------------


def word_realizing_map(w: SimplexWord) -> SSetMap:
    """The map simplex(dim w) -> simplex(base dim) realizing a word's operator."""
    return simplex_map(w.dim, w.base.dim, surjection_of_word(w))


def _amalgamate(C: Coproduct, legs, cod: FinSSet) -> SSetMap:
    """The map out of a coproduct assembled from per-part legs."""
    images: list[list[SimplexWord]] = [
        [] for _ in range(len(C.sset.counts))
    ]
    for leg in legs:
        for n in range(len(leg.dom.counts)):
            for idx in range(leg.dom.counts[n]):
                images[n].append(leg.images[n][idx])
    return SSetMap(C.sset, cod, images, validate=False)


def d_star_generic_row(
    A: FinSSet, m: int
) -> tuple[Coequalizer, list[SSetMap]]:
    """Row m of d*(A) from the cellular presentation of A.

    A is the coequalizer of its face relations over one standard simplex per
    nondegenerate cell; applying d* piecewise gives row m as a coequalizer
    of rows of external products of standard simplices.  Returns the
    coequalizer and, per nondegenerate simplex of A in dimension order, the
    structure map of its piece into the quotient.
    """
    if A.truncation is not None:
        raise TruncationError("d* of a truncated object is underdetermined")
    views: dict[int, BiSSet] = {}

    def pview(k: int) -> BiSSet:
        if k not in views:
            Dk = simplex(k)
            views[k] = exterior(Dk, Dk)
        return views[k]

    piece_of: dict[tuple[int, int], int] = {}
    prows = []
    for k in range(A.dim + 1):
        for idx in range(A.counts[k]):
            piece_of[(k, idx)] = len(prows)
            prows.append(pview(k).row(m))
    target = Coproduct(prows)

    rel_parts = []
    left = []
    right = []
    for k in range(1, A.dim + 1):
        for idx in range(A.counts[k]):
            for i in range(k + 1):
                w = A.faces[k][idx][i]
                rel_parts.append(pview(k - 1).row(m))
                delta = simplex_map(
                    k - 1, k, tuple(v for v in range(k + 1) if v != i)
                )
                left.append(
                    compose_maps(
                        target.injections[piece_of[(k, idx)]],
                        _ext_row_map(delta, delta, m, pview(k - 1), pview(k)),
                    )
                )
                sigma = word_realizing_map(w)
                right.append(
                    compose_maps(
                        target.injections[piece_of[(w.base.dim, w.base.index)]],
                        _ext_row_map(
                            sigma,
                            sigma,
                            m,
                            pview(k - 1),
                            pview(w.base.dim),
                        ),
                    )
                )
    C = Coproduct(rel_parts)
    ceq = Coequalizer(
        _amalgamate(C, left, target.sset), _amalgamate(C, right, target.sset)
    )
    legs = [
        compose_maps(ceq.proj, target.injections[piece_of[(k, idx)]])
        for k in range(A.dim + 1)
        for idx in range(A.counts[k])
    ]
    return ceq, legs


def _induce_from_coequalizer(ceq: Coequalizer, h: SSetMap) -> SSetMap:
    """The unique map out of the quotient restricting to h, if h descends."""
    A = ceq.A
    Q = ceq.sset
    images: list[list[SimplexWord | None]] = [
        [None] * Q.counts[n] for n in range(len(Q.counts))
    ]
    for n in range(len(Q.counts)):
        for idx in range(A.counts[n]):
            qw = ceq.proj.images[n][idx]
            if qw.degens:
                continue
            val = h.images[n][idx]
            cur = images[n][qw.base.index]
            if cur is None:
                images[n][qw.base.index] = val
            elif cur != val:
                raise ValidationError(
                    f"map does not respect the quotient classes at ({n}, {idx})"
                )
    for n, layer in enumerate(images):
        _check(all(w is not None for w in layer), f"class without members at {n}")
    return SSetMap(Q, h.cod, images)


def d_star_agreement(d: DStar, m: int) -> SSetMap:
    """The canonical isomorphism from the colimit row onto the closed-star row.

    Builds the cocone of the generic presentation over the closed-star row
    (each piece maps through the characteristic inclusion of its cell),
    induces a map on the quotient, and checks it is an isomorphism.
    """
    A = d.A
    ceq, _legs = d_star_generic_row(A, m)
    subs, cop = d._data(m)
    fast = d.view.row(m)

    images: list[list[SimplexWord]] = [
        [] for _ in range(len(ceq.A.counts))
    ]
    for k in range(A.dim + 1):
        Dk = simplex(k)
        for idx in range(A.counts[k]):
            chi = char_map(A, SimplexRef(k, idx))
            for ib, beta in enumerate(Dk.words(m)):
                alpha = chi.apply(beta)
                ka = A.wid(alpha)
                sub = subs[ka]
                inj = cop.injections[ka]
                for n in range(len(Dk.counts)):
                    for c in range(Dk.counts[n]):
                        pw = chi.images[n][c]
                        w2 = sub.from_parent(pw)
                        if w2 is None:
                            raise ValidationError(
                                "piece image escapes its closed star; this is a bug"
                            )
                        images[n].append(inj.apply(w2))
    h_big = SSetMap(ceq.A, fast, images)
    induced = _induce_from_coequalizer(ceq, h_big)
    chk = check_map(induced)
    if not chk.iso:
        raise ValidationError(
            f"generic and closed-star rows disagree at row {m}: {chk.witness}"
        )
    return induced


# -- transposition along d* -| diag ---------------------------------------------


def word_classifying_map(T: FinSSet, w: SimplexWord) -> SSetMap:
    """The map simplex(dim w) -> T picking out the simplex word w."""
    k = w.dim
    Dk = simplex(k)
    images: list[list[SimplexWord]] = [[] for _ in range(k + 1)]
    for d in range(k + 1):
        for i in range(Dk.counts[d]):
            sub = set(Dk.label(d, i))
            ww = w
            for v in range(k, -1, -1):
                if v not in sub:
                    ww = T.face_of(ww, v)
            images[d].append(ww)
    return SSetMap(Dk, T, images)


def _h_operator_apply(
    V: BiSSet, k: int, word: SimplexWord, cell: SimplexWord
) -> SimplexWord:
    """Apply the horizontal operator named by an m-word over simplex(k).

    ``cell`` lives in row k; the result lives in row m = dim(word).
    """
    Dk = simplex(k)
    sub = set(Dk.label(word.base.dim, word.base.index))
    cur = cell
    cur_m = k
    for v in range(k, -1, -1):
        if v not in sub:
            cur = V.hface(cur_m, v).apply(cur)
            cur_m -= 1
    for j in reversed(word.degens):
        cur = V.hdegen(cur_m, j).apply(cur)
        cur_m += 1
    return cur


def dstar_unit(ds: DStar, depth: int | None = None) -> SSetMap:
    """The adjunction unit A -> diag(d*(A))."""
    A = ds.A
    D = max(A.dim, 0) if depth is None else depth
    db = diag_built(ds.view, D)
    images = []
    for n in range(A.dim + 1):
        subs, cop = ds._data(n)
        layer = []
        for idx in range(A.counts[n]):
            k = A.wid(A.nondeg_word(n, idx))
            w2 = subs[k].from_parent(A.nondeg_word(n, idx))
            layer.append(db.word_of_raw(n, cop.injections[k].apply(w2)))
        images.append(layer)
    return SSetMap(A, db.sset, images)


def dstar_transpose(ds: DStar, V: BiSSet, g: SSetMap) -> BiSSetMap:
    """The rowwise map d*(A) -> V matching g: A -> diag(V).

    Each component value is computed by pushing g's value on an enclosing
    simplex through the horizontal operator that carves out the component's
    index word, then through the vertical operator of the cell; the
    adjunction makes this independent of the choices, and the rowwise
    validation rechecks that.
    """
    A = ds.A
    db = None
    for key, built in V._cache.items():
        if isinstance(key, tuple) and key and key[0] == "diag" and built.sset == g.cod:
            db = built
    if db is None:
        _check(g.cod.truncation is not None, "g must land in a diagonal")
        db = diag_built(V, g.cod.truncation)
        _check(db.sset == g.cod, "g must land in the diagonal of V")
    parts = []
    for m in range(ds.h_bound + 1):
        subs, cop = ds._data(m)
        dom = ds.view.row(m)
        images: list[list[SimplexWord]] = [
            [] for _ in range(len(dom.counts))
        ]
        for k, alpha in enumerate(A.words(m)):
            sub = subs[k]
            for n in range(len(sub.sset.counts)):
                for c in range(sub.sset.counts[n]):
                    pw = sub.inclusion.images[n][c]
                    images[n].append(
                        _transpose_value(A, V, db, g, alpha, pw)
                    )
        parts.append(SSetMap(dom, V.row(m), images))
    return BiSSetMap(ds.view, V, parts)


def _transpose_value(
    A: FinSSet,
    V: BiSSet,
    db: BuiltSSet,
    g: SSetMap,
    alpha: SimplexWord,
    pw: SimplexWord,
) -> SimplexWord:
    y = None
    for ky in range(A.dim + 1):
        for iy in range(A.counts[ky]):
            clos = A.face_closure(ky, iy)
            if alpha.base in clos and pw.base in clos:
                y = SimplexRef(ky, iy)
                break
        if y is not None:
            break
    _check(y is not None, "component cell outside every enclosing simplex")
    chi = char_map(A, y)
    Dk = simplex(y.dim)
    base_w = None
    v_ref = None
    for d in range(y.dim + 1):
        for i in range(Dk.counts[d]):
            if chi.images[d][i] == SimplexWord(alpha.base, ()):
                base_w = Dk.nondeg_word(d, i)
            if chi.images[d][i] == pw:
                v_ref = (d, i)
    _check(base_w is not None and v_ref is not None, "characteristic mismatch")
    beta = apply_degens(base_w, alpha.degens)
    raw = db.raw_of_word(g.images[y.dim][y.index])
    w0 = _h_operator_apply(V, y.dim, beta, raw)
    sub = set(Dk.label(*v_ref))
    cur = w0
    rowm = V.row(alpha.dim)
    for v in range(y.dim, -1, -1):
        if v not in sub:
            cur = rowm.face_of(cur, v)
    return cur


def dstar_untranspose(ds: DStar, V: BiSSet, phi: BiSSetMap) -> SSetMap:
    """The map A -> diag(V) matching a rowwise map d*(A) -> V."""
    A = ds.A
    D = max(A.dim, 0)
    unit = dstar_unit(ds, D)
    return compose_maps(
        diag_map(phi, diag_built(ds.view, D), diag_built(V, D)), unit
    )


# -- horizontal matching objects and the Reedy check ----------------------------


def _point(tr: int | None) -> FinSSet:
    pt = simplex(0)
    return pt if tr is None else truncate(pt, tr)


def bisset_matching(B: BiSSet, n: int) -> TupleSSet:
    """The horizontal matching object at level n over copies of row n-1.

    Tuples (x_0, ..., x_n) of (n-1)-row simplices with d_i x_j = d_{j-1} x_i
    for i < j; at n = 0 the empty-tuple object is the point, encoded as a
    one-factor tuple sset over it.
    """
    if n == 0:
        return joined_tuples([_point(B.v_bound)], [])
    rowf = B.row(n - 1)
    joins = []
    if n >= 2:
        for j in range(1, n + 1):
            for i in range(j):
                joins.append((j, B.hface(n - 1, i), i, B.hface(n - 1, j - 1)))
    return joined_tuples([rowf] * (n + 1), joins)


def bisset_matching_restriction(B: BiSSet, n: int, M: TupleSSet) -> SSetMap:
    """The canonical map from row n into the matching object."""
    if n == 0:
        return pairing([constant_map(B.row(0), M.factors[0], 0)], M)
    return pairing([B.hface(n, i) for i in range(n + 1)], M)


@dataclass(frozen=True, eq=False)
class BiReedyLevel:
    n: int
    fibration: bool
    classification: object


@dataclass(frozen=True, eq=False)
class BiReedyReport:
    levels: tuple[BiReedyLevel, ...]

    @property
    def fibration(self) -> bool:
        return all(lv.fibration for lv in self.levels)

    def level(self, n: int) -> BiReedyLevel:
        return self.levels[n]


def reedy_check_bisset(f: BiSSetMap, depth: int | None = None) -> BiReedyReport:
    """Per-level horizontal Reedy fibration check of a rowwise map.

    At each level n the relative matching map from row n into the pullback
    of matching objects is classified as a Kan fibration on data up to the
    vertical depth.
    """
    from .lifting import classify_sset_fibration

    X, Y = f.dom, f.cod
    if depth is None:
        bounds = [b for b in (X.v_bound, Y.v_bound) if b is not None]
        _check(bounds, "an explicit vertical depth is required")
        depth = min(bounds)
    levels = []
    for n in range(f.h_bound + 1):
        MX = bisset_matching(X, n)
        MY = bisset_matching(Y, n)
        restr_x = bisset_matching_restriction(X, n, MX)
        restr_y = bisset_matching_restriction(Y, n, MY)
        if n == 0:
            mnf = pairing(
                [constant_map(MX.sset, MY.factors[0], 0)], MY
            )
        else:
            mnf = pairing(
                [
                    compose_maps(f.parts[n - 1], MX.projections[i])
                    for i in range(n + 1)
                ],
                MY,
            )
        T = pullback(mnf, restr_y)
        gap = pairing([restr_x, f.parts[n]], T)
        cls = classify_sset_fibration(gap, "kan", depth)
        levels.append(BiReedyLevel(n, cls.holds, cls))
    return BiReedyReport(tuple(levels))
