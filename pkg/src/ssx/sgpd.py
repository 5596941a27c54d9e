"""Simplicial groupoids as internal groupoids in finite simplicial sets.

A ``SimpGroupoid`` consists of two truncated simplicial sets (objects and
morphisms) together with five structure maps: source, target, identity,
inversion, and composition off the strict pullback mor x_obj mor.  All
groupoid axioms are checked on construction as equalities of simplicial
maps, plus a pointwise associativity sweep in every dimension up to the
truncation bound.

On top of that representation the module computes rows (iterated fiber
products of mor over obj), hom-groupoids of maps from a finite simplicial
set, matching and latching objects, Reedy gap functors with fibration and
cofibration flags, strict and lax fiber products, chaotic resolutions, and
the data needed to turn 2-isomorphisms into simplicial homotopies.
"""

from __future__ import annotations

from dataclasses import dataclass

from .builder import BuiltSSet, build_sset, map_from_raw
from .groupoid import (
    FinGroupoid,
    GpdClassification,
    GpdFunctor,
    GpdSpan,
    classify_gpd_map,
    composable_strings,
    nerve,
    string_degen,
    string_face,
    strict_fiber_product,
)
from .sset import (
    FinSSet,
    SSetMap,
    TruncationError,
    TupleSSet,
    ValidationError,
    _check,
    boundary,
    compose_maps,
    enumerate_maps,
    identity_map,
    joined_tuples,
    pairing,
    product,
    pullback,
    simplex,
    simplex_inclusion,
    truncate,
)
from .words import SimplexRef, SimplexWord


def _vw(i: int) -> SimplexWord:
    return SimplexWord(SimplexRef(0, i), ())


# -- the internal groupoid ----------------------------------------------------


class SimpGroupoid:
    """An internal groupoid in FinSSet, truncated at a common bound."""

    __slots__ = (
        "obj",
        "mor",
        "src",
        "tgt",
        "ident",
        "invert",
        "comp",
        "pairs",
        "_cache",
    )

    def __init__(
        self,
        obj: FinSSet,
        mor: FinSSet,
        src: SSetMap,
        tgt: SSetMap,
        ident: SSetMap,
        invert: SSetMap,
        comp: SSetMap,
        pairs: TupleSSet | None = None,
        validate: bool = True,
    ):
        _check(
            obj.truncation is not None and obj.truncation == mor.truncation,
            "obj and mor must share a finite truncation bound",
        )
        _check(src.dom == mor and src.cod == obj, "src must map mor to obj")
        _check(tgt.dom == mor and tgt.cod == obj, "tgt must map mor to obj")
        _check(ident.dom == obj and ident.cod == mor, "ident must map obj to mor")
        _check(
            invert.dom == mor and invert.cod == mor, "invert must map mor to mor"
        )
        self.obj = obj
        self.mor = mor
        self.src = src
        self.tgt = tgt
        self.ident = ident
        self.invert = invert
        self.pairs = pairs if pairs is not None else pullback(src, tgt)
        _check(
            comp.dom == self.pairs.sset and comp.cod == mor,
            "comp must map the composable-pair object to mor",
        )
        self.comp = comp
        self._cache: dict = {}
        if validate:
            self._validate()

    @property
    def depth(self) -> int:
        return self.obj.truncation

    def compose_words(self, u: SimplexWord, v: SimplexWord) -> SimplexWord:
        """The composite "u after v"; requires src(u) = tgt(v)."""
        return self.comp.apply(self.pairs.word_of_tuple((u, v)))

    def comp_dict(self, n: int) -> dict[tuple[int, int], int]:
        """Composition on word ids in dimension n, complete by construction."""
        key = ("comp_dict", n)
        if key not in self._cache:
            mw = self.mor.windex(n)
            table = self.comp.table(n)
            d: dict[tuple[int, int], int] = {}
            for pid, w in enumerate(self.pairs.sset.words(n)):
                u, v = self.pairs.tuple_of_word(w)
                d[(mw[u], mw[v])] = table[pid]
            self._cache[key] = d
        return self._cache[key]

    def _validate(self) -> None:
        id_obj = identity_map(self.obj)
        id_mor = identity_map(self.mor)
        pr_out, pr_in = self.pairs.projections
        equations = [
            ("src . ident = id_obj", compose_maps(self.src, self.ident), id_obj),
            ("tgt . ident = id_obj", compose_maps(self.tgt, self.ident), id_obj),
            ("src . invert = tgt", compose_maps(self.src, self.invert), self.tgt),
            ("tgt . invert = src", compose_maps(self.tgt, self.invert), self.src),
            (
                "invert . invert = id_mor",
                compose_maps(self.invert, self.invert),
                id_mor,
            ),
            (
                "src . comp = src . inner",
                compose_maps(self.src, self.comp),
                compose_maps(self.src, pr_in),
            ),
            (
                "tgt . comp = tgt . outer",
                compose_maps(self.tgt, self.comp),
                compose_maps(self.tgt, pr_out),
            ),
            (
                "left unit",
                compose_maps(
                    self.comp,
                    pairing(
                        [compose_maps(self.ident, self.tgt), id_mor], self.pairs
                    ),
                ),
                id_mor,
            ),
            (
                "right unit",
                compose_maps(
                    self.comp,
                    pairing(
                        [id_mor, compose_maps(self.ident, self.src)], self.pairs
                    ),
                ),
                id_mor,
            ),
            (
                "left inverse",
                compose_maps(
                    self.comp, pairing([self.invert, id_mor], self.pairs)
                ),
                compose_maps(self.ident, self.src),
            ),
            (
                "right inverse",
                compose_maps(
                    self.comp, pairing([id_mor, self.invert], self.pairs)
                ),
                compose_maps(self.ident, self.tgt),
            ),
        ]
        for name, got, want in equations:
            if got != want:
                raise ValidationError(f"internal groupoid axiom fails: {name}")
        for n in range(self.depth + 1):
            cd = self.comp_dict(n)
            st = self.src.table(n)
            by_tgt: dict[int, list[int]] = {}
            for w, t in enumerate(self.tgt.table(n)):
                by_tgt.setdefault(t, []).append(w)
            for (u, v), uv in cd.items():
                for w in by_tgt.get(st[v], ()):
                    if cd[(uv, w)] != cd[(u, cd[(v, w)])]:
                        raise ValidationError(
                            f"associativity fails in dimension {n} "
                            f"on word ids ({u},{v},{w})"
                        )

    def __eq__(self, other):
        if not isinstance(other, SimpGroupoid):
            return NotImplemented
        return (
            self.obj == other.obj
            and self.mor == other.mor
            and self.src == other.src
            and self.tgt == other.tgt
            and self.ident == other.ident
            and self.invert == other.invert
            and self.comp == other.comp
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"SimpGroupoid(obj={self.obj.counts}, mor={self.mor.counts}, "
            f"depth={self.depth})"
        )


class SGpdMap:
    """A map of internal groupoids: compatible maps on obj and mor."""

    __slots__ = ("dom", "cod", "on_obj", "on_mor", "_cache")

    def __init__(
        self,
        dom: SimpGroupoid,
        cod: SimpGroupoid,
        on_obj: SSetMap,
        on_mor: SSetMap,
        validate: bool = True,
    ):
        _check(
            on_obj.dom == dom.obj and on_obj.cod == cod.obj,
            "on_obj must map dom objects to cod objects",
        )
        _check(
            on_mor.dom == dom.mor and on_mor.cod == cod.mor,
            "on_mor must map dom morphisms to cod morphisms",
        )
        self.dom = dom
        self.cod = cod
        self.on_obj = on_obj
        self.on_mor = on_mor
        self._cache: dict = {}
        if validate:
            self._validate()

    def _validate(self) -> None:
        X, Y = self.dom, self.cod
        pr_out, pr_in = X.pairs.projections
        equations = [
            (
                "src",
                compose_maps(Y.src, self.on_mor),
                compose_maps(self.on_obj, X.src),
            ),
            (
                "tgt",
                compose_maps(Y.tgt, self.on_mor),
                compose_maps(self.on_obj, X.tgt),
            ),
            (
                "ident",
                compose_maps(Y.ident, self.on_obj),
                compose_maps(self.on_mor, X.ident),
            ),
            (
                "invert",
                compose_maps(Y.invert, self.on_mor),
                compose_maps(self.on_mor, X.invert),
            ),
            (
                "comp",
                compose_maps(self.on_mor, X.comp),
                compose_maps(
                    Y.comp,
                    pairing(
                        [
                            compose_maps(self.on_mor, pr_out),
                            compose_maps(self.on_mor, pr_in),
                        ],
                        Y.pairs,
                    ),
                ),
            ),
        ]
        for name, got, want in equations:
            if got != want:
                raise ValidationError(
                    f"map does not commute with structure map {name}"
                )

    def __eq__(self, other):
        if not isinstance(other, SGpdMap):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.on_obj == other.on_obj
            and self.on_mor == other.on_mor
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self) -> str:
        return f"SGpdMap({self.dom!r} -> {self.cod!r})"


def identity_sgpd_map(X: SimpGroupoid) -> SGpdMap:
    return SGpdMap(
        X, X, identity_map(X.obj), identity_map(X.mor), validate=False
    )


def compose_sgpd_maps(g: SGpdMap, f: SGpdMap) -> SGpdMap:
    _check(f.cod == g.dom, "composition mismatch")
    return SGpdMap(
        f.dom,
        g.cod,
        compose_maps(g.on_obj, f.on_obj),
        compose_maps(g.on_mor, f.on_mor),
        validate=False,
    )


# -- constructors -------------------------------------------------------------


def constant_sgpd(G: FinGroupoid, depth: int) -> SimpGroupoid:
    """The constant simplicial groupoid on a finite groupoid."""
    _check(depth >= 0, "depth must be nonnegative")
    O = FinSSet(
        [G.n_obj], [tuple(() for _ in range(G.n_obj))], truncation=depth
    )
    M = FinSSet(
        [G.n_mor], [tuple(() for _ in range(G.n_mor))], truncation=depth
    )
    src = SSetMap(M, O, [[_vw(G.src[u]) for u in range(G.n_mor)]])
    tgt = SSetMap(M, O, [[_vw(G.tgt[u]) for u in range(G.n_mor)]])
    ident = SSetMap(O, M, [[_vw(G.ident[a]) for a in range(G.n_obj)]])
    invert = SSetMap(M, M, [[_vw(G.inv[u]) for u in range(G.n_mor)]])
    P = pullback(src, tgt)
    comp = SSetMap(
        P.sset,
        M,
        [
            [_vw(G.comp(uw.base.index, vw.base.index)) for (uw, vw) in layer]
            for layer in P.tuples
        ],
    )
    X = SimpGroupoid(O, M, src, tgt, ident, invert, comp, pairs=P)
    X._cache["constant_of"] = G
    return X


def constant_sgpd_map(
    F: GpdFunctor, X: SimpGroupoid, Y: SimpGroupoid
) -> SGpdMap:
    """The map of constant simplicial groupoids induced by a functor."""
    _check(
        X._cache.get("constant_of") is F.dom
        and Y._cache.get("constant_of") is F.cod,
        "endpoints must be constant on the functor's groupoids",
    )
    on_obj = SSetMap(
        X.obj, Y.obj, [[_vw(F.obj_map[a]) for a in range(F.dom.n_obj)]]
    )
    on_mor = SSetMap(
        X.mor, Y.mor, [[_vw(F.mor_map[u]) for u in range(F.dom.n_mor)]]
    )
    return SGpdMap(X, Y, on_obj, on_mor)


def discrete_sgpd(A: FinSSet, depth: int) -> SimpGroupoid:
    """The discrete simplicial groupoid: obj = mor = A, identities only."""
    O = truncate(A, depth)
    e = identity_map(O)
    P = pullback(e, e)
    comp = SSetMap(P.sset, O, [[t[0] for t in layer] for layer in P.tuples])
    X = SimpGroupoid(O, O, e, e, e, e, comp, pairs=P)
    X._cache["discrete_of"] = A
    return X


def discrete_sgpd_map(
    f: SSetMap, X: SimpGroupoid, Y: SimpGroupoid
) -> SGpdMap:
    """The map of discrete simplicial groupoids induced by a simplicial map."""
    depth = X.depth
    _check(Y.depth == depth, "endpoints must share a depth")
    g = SSetMap(X.obj, Y.obj, f.images[: depth + 1], validate=False)
    return SGpdMap(X, Y, g, g)


def chaotic_resolution(G: FinGroupoid, depth: int) -> SimpGroupoid:
    """Resolution whose level n is the functor groupoid E[n] -> G.

    E[n] is the contractible groupoid on vertices 0..n, so a level-n object
    is a composable n-string in G and a level-n morphism is a pair of
    strings joined by a component at vertex 0 (the rest are forced).
    """
    _check(depth >= 0, "depth must be nonnegative")
    Ob = nerve(G, depth)

    def v0(n, s):
        return s if n == 0 else G.src[s[0]]

    mlayers = [
        [
            (s, t, c)
            for s in Ob.layers[n]
            for t in Ob.layers[n]
            for c in G.hom(v0(n, s), v0(n, t))
        ]
        for n in range(depth + 1)
    ]

    def mface(n, x, i):
        s, t, c = x
        if i == 0:
            c = G.comp(t[0], G.comp(c, G.inv[s[0]]))
        return (string_face(G, n, s, i), string_face(G, n, t, i), c)

    def mdegen(n, x, j):
        s, t, c = x
        return (string_degen(G, n, s, j), string_degen(G, n, t, j), c)

    Mb = build_sset(mlayers, mface, mdegen, truncation=depth)
    src = map_from_raw(Mb, Ob, lambda n, x: x[0])
    tgt = map_from_raw(Mb, Ob, lambda n, x: x[1])
    ident = map_from_raw(Ob, Mb, lambda n, s: (s, s, G.ident[v0(n, s)]))
    invert = map_from_raw(Mb, Mb, lambda n, x: (x[1], x[0], G.inv[x[2]]))
    P = pullback(src, tgt)
    images = []
    for p_dim, layer in enumerate(P.tuples):
        lay = []
        for uw, vw in layer:
            ur = Mb.raw_of_word(uw)
            vr = Mb.raw_of_word(vw)
            lay.append(
                Mb.word_of_raw(p_dim, (vr[0], ur[1], G.comp(ur[2], vr[2])))
            )
        images.append(lay)
    comp = SSetMap(P.sset, Mb.sset, images)
    X = SimpGroupoid(Ob.sset, Mb.sset, src, tgt, ident, invert, comp, pairs=P)
    X._cache["resolution_of"] = G
    X._cache["obj_built"] = Ob
    X._cache["mor_built"] = Mb
    return X


def resolution_map(
    F: GpdFunctor, X: SimpGroupoid, Y: SimpGroupoid
) -> SGpdMap:
    """The map of chaotic resolutions induced by a functor."""
    ob_x, mb_x = X._cache.get("obj_built"), X._cache.get("mor_built")
    ob_y, mb_y = Y._cache.get("obj_built"), Y._cache.get("mor_built")
    _check(
        ob_x is not None and ob_y is not None,
        "endpoints must be chaotic resolutions",
    )
    _check(
        X._cache.get("resolution_of") is F.dom
        and Y._cache.get("resolution_of") is F.cod,
        "endpoints must resolve the functor's groupoids",
    )

    def fo(n, s):
        if n == 0:
            return F.obj_map[s]
        return tuple(F.mor_map[u] for u in s)

    on_obj = map_from_raw(ob_x, ob_y, fo)
    on_mor = map_from_raw(
        mb_x, mb_y, lambda n, x: (fo(n, x[0]), fo(n, x[1]), F.mor_map[x[2]])
    )
    return SGpdMap(X, Y, on_obj, on_mor)


def resolution_unit(X: SimpGroupoid) -> SGpdMap:
    """The inclusion of the constant simplicial groupoid into its resolution."""
    G = X._cache.get("resolution_of")
    _check(G is not None, "argument must be a chaotic resolution")
    Ob, Mb = X._cache["obj_built"], X._cache["mor_built"]
    C = constant_sgpd(G, X.depth)
    on_obj = SSetMap(
        C.obj, X.obj, [[Ob.word_of_raw(0, a) for a in range(G.n_obj)]]
    )
    on_mor = SSetMap(
        C.mor,
        X.mor,
        [
            [
                Mb.word_of_raw(0, (G.src[u], G.tgt[u], u))
                for u in range(G.n_mor)
            ]
        ],
    )
    return SGpdMap(C, X, on_obj, on_mor)


def make_sgpd(kind: str, *args) -> SimpGroupoid:
    """Dispatcher over the stock constructors and the raw internal form."""
    if kind == "constant":
        return constant_sgpd(*args)
    if kind == "discrete":
        return discrete_sgpd(*args)
    if kind == "chaotic_resolution":
        return chaotic_resolution(*args)
    if kind == "internal":
        return SimpGroupoid(*args)
    raise ValidationError(f"unknown simplicial groupoid kind {kind!r}")


# -- rows ----------------------------------------------------------------------


def row_view(X: SimpGroupoid, m: int) -> TupleSSet:
    """The m-fold composable-string object as a tuple sset (m >= 2)."""
    _check(m >= 2, "row_view needs m >= 2")
    key = ("row_view", m)
    if key not in X._cache:
        joins = [(k, X.tgt, k + 1, X.src) for k in range(m - 1)]
        X._cache[key] = joined_tuples([X.mor] * m, joins)
    return X._cache[key]


def row(X: SimpGroupoid, m: int) -> FinSSet:
    """R_0 = obj, R_1 = mor, R_m = mor x_obj ... x_obj mor (m factors)."""
    _check(m >= 0, "row index must be a natural number")
    if m == 0:
        return X.obj
    if m == 1:
        return X.mor
    return row_view(X, m).sset


def _row_tuples(X: SimpGroupoid, m: int) -> list[list[tuple[SimplexWord, ...]]]:
    if m == 1:
        return [
            [(X.mor.nondeg_word(n, i),) for i in range(X.mor.counts[n])]
            for n in range(len(X.mor.counts))
        ]
    return row_view(X, m).tuples


def row_face(
    X: SimpGroupoid, m: int, i: int, validate: bool = True
) -> SSetMap:
    """Horizontal face R_m -> R_{m-1}: drop an end or compose inside.

    Cached per groupoid; the first construction fixes the validate flag.
    """
    _check(m >= 1 and 0 <= i <= m, "face index out of range")
    key = ("row_face", m, i)
    if key in X._cache:
        return X._cache[key]
    if m == 1:
        f = X.tgt if i == 0 else X.src
    else:
        target = None if m == 2 else row_view(X, m - 1)
        images = []
        for layer in _row_tuples(X, m):
            lay = []
            for t in layer:
                if i == 0:
                    nt = t[1:]
                elif i == m:
                    nt = t[:-1]
                else:
                    nt = (
                        t[: i - 1]
                        + (X.compose_words(t[i], t[i - 1]),)
                        + t[i + 1 :]
                    )
                lay.append(nt[0] if target is None else target.word_of_tuple(nt))
            images.append(lay)
        f = SSetMap(row(X, m), row(X, m - 1), images, validate=validate)
    X._cache[key] = f
    return f


def row_degen(
    X: SimpGroupoid, m: int, j: int, validate: bool = True
) -> SSetMap:
    """Horizontal degeneracy R_m -> R_{m+1}: insert an identity string."""
    _check(m >= 0 and 0 <= j <= m, "degeneracy index out of range")
    key = ("row_degen", m, j)
    if key in X._cache:
        return X._cache[key]
    if m == 0:
        f = X.ident
    else:
        target = row_view(X, m + 1)
        images = []
        for layer in _row_tuples(X, m):
            lay = []
            for t in layer:
                if j == 0:
                    idw = X.ident.apply(X.src.apply(t[0]))
                else:
                    idw = X.ident.apply(X.tgt.apply(t[j - 1]))
                lay.append(target.word_of_tuple(t[:j] + (idw,) + t[j:]))
            images.append(lay)
        f = SSetMap(row(X, m), target.sset, images, validate=validate)
    X._cache[key] = f
    return f


def row_map(p: SGpdMap, m: int, validate: bool = True) -> SSetMap:
    """The map of m-th rows induced by a map of simplicial groupoids."""
    _check(m >= 0, "row index must be a natural number")
    key = ("row_map", m)
    if key in p._cache:
        return p._cache[key]
    if m == 0:
        f = p.on_obj
    elif m == 1:
        f = p.on_mor
    else:
        RY = row_view(p.cod, m)
        images = [
            [
                RY.word_of_tuple(tuple(p.on_mor.apply(c) for c in t))
                for t in layer
            ]
            for layer in _row_tuples(p.dom, m)
        ]
        f = SSetMap(row(p.dom, m), RY.sset, images, validate=validate)
    p._cache[key] = f
    return f


# -- level groupoids -----------------------------------------------------------


def level_groupoid(X: SimpGroupoid, n: int) -> FinGroupoid:
    """The groupoid of n-simplices: all obj and mor words in dimension n."""
    key = ("level", n)
    if key not in X._cache:
        X.obj.require_data(n)
        X._cache[key] = FinGroupoid(
            X.obj.n_words(n),
            X.src.table(n),
            X.tgt.table(n),
            X.ident.table(n),
            X.comp_dict(n),
            inv=X.invert.table(n),
            validate="fast",
        )
    return X._cache[key]


def level_functor(p: SGpdMap, n: int) -> GpdFunctor:
    return GpdFunctor(
        level_groupoid(p.dom, n),
        level_groupoid(p.cod, n),
        p.on_obj.table(n),
        p.on_mor.table(n),
        validate=False,
    )


# -- hom groupoids --------------------------------------------------------------


class HomGroupoid:
    """The groupoid of simplicial maps A -> X.

    Objects are maps into obj(X), morphisms are maps into mor(X) with
    endpoints by postcomposition and composition through comp(X).
    """

    __slots__ = ("source", "target", "gpd", "obj_maps", "mor_maps", "_oi", "_mi")

    def __init__(self, source, target, gpd, obj_maps, mor_maps):
        self.source = source
        self.target = target
        self.gpd = gpd
        self.obj_maps = tuple(obj_maps)
        self.mor_maps = tuple(mor_maps)
        self._oi = {f.images: i for i, f in enumerate(self.obj_maps)}
        self._mi = {f.images: i for i, f in enumerate(self.mor_maps)}

    def obj_index(self, f: SSetMap) -> int:
        return self._oi[f.images]

    def mor_index(self, f: SSetMap) -> int:
        return self._mi[f.images]

    def __repr__(self):
        return (
            f"HomGroupoid({len(self.obj_maps)} objects, "
            f"{len(self.mor_maps)} morphisms)"
        )


def hom_groupoid(A: FinSSet, X: SimpGroupoid) -> HomGroupoid:
    """The hom groupoid of simplicial maps from A into an internal groupoid."""
    objs = enumerate_maps(A, X.obj)
    mors = enumerate_maps(A, X.mor)
    oindex = {f.images: i for i, f in enumerate(objs)}
    src = [oindex[compose_maps(X.src, f).images] for f in mors]
    tgt = [oindex[compose_maps(X.tgt, f).images] for f in mors]
    mindex = {f.images: i for i, f in enumerate(mors)}
    ident = [mindex[compose_maps(X.ident, f).images] for f in objs]
    inv = [mindex[compose_maps(X.invert, f).images] for f in mors]
    into: dict[int, list[int]] = {}
    for v, t in enumerate(tgt):
        into.setdefault(t, []).append(v)
    # compose through per-dimension word-id tables; a validated pairing per
    # composable pair costs quadratically more on large hom groupoids
    dims = range(len(A.counts))
    cd = [X.comp_dict(n) for n in dims]
    wid = X.mor.wid
    tabs = [
        tuple(tuple(wid(w) for w in f.images[n]) for n in dims)
        for f in mors
    ]
    tab_index = {t: i for i, t in enumerate(tabs)}
    comp_table: dict[tuple[int, int], int] = {}
    for u in range(len(mors)):
        tu = tabs[u]
        for v in into.get(src[u], ()):
            tv = tabs[v]
            key = tuple(
                tuple(cd[n][ab] for ab in zip(tu[n], tv[n]))
                for n in dims
            )
            comp_table[(u, v)] = tab_index[key]
    gpd = FinGroupoid(
        len(objs), src, tgt, ident, comp_table, inv=inv, validate="fast"
    )
    return HomGroupoid(A, X, gpd, objs, mors)


def hom_restrict(
    phi: SSetMap, hom_b: HomGroupoid, hom_a: HomGroupoid
) -> GpdFunctor:
    """Precomposition with phi: A -> B as a functor hom(B, X) -> hom(A, X)."""
    _check(
        phi.dom == hom_a.source and phi.cod == hom_b.source,
        "restriction map must run between the hom sources",
    )
    return GpdFunctor(
        hom_b.gpd,
        hom_a.gpd,
        [hom_a.obj_index(compose_maps(f, phi)) for f in hom_b.obj_maps],
        [hom_a.mor_index(compose_maps(f, phi)) for f in hom_b.mor_maps],
        validate=False,
    )


def hom_postcompose(
    p: SGpdMap, hom_x: HomGroupoid, hom_y: HomGroupoid
) -> GpdFunctor:
    """Postcomposition with p as a functor hom(A, X) -> hom(A, Y)."""
    _check(
        hom_x.source == hom_y.source,
        "postcomposition requires a common source",
    )
    return GpdFunctor(
        hom_x.gpd,
        hom_y.gpd,
        [
            hom_y.obj_index(compose_maps(p.on_obj, f))
            for f in hom_x.obj_maps
        ],
        [
            hom_y.mor_index(compose_maps(p.on_mor, f))
            for f in hom_x.mor_maps
        ],
        validate=False,
    )


@dataclass(frozen=True, eq=False)
class MatchingObject:
    hom: HomGroupoid
    level: HomGroupoid
    restriction: GpdFunctor


def matching_object(X: SimpGroupoid, n: int) -> MatchingObject:
    """Maps from the n-boundary, with the restriction functor from level n."""
    level = hom_groupoid(simplex(n), X)
    match = hom_groupoid(boundary(n), X)
    restriction = hom_restrict(simplex_inclusion(boundary(n), n), level, match)
    return MatchingObject(match, level, restriction)


@dataclass(frozen=True, eq=False)
class LatchingObject:
    gpd: FinGroupoid
    inclusion: GpdFunctor
    obj_words: tuple[int, ...]
    mor_words: tuple[int, ...]


def latching_object(X: SimpGroupoid, n: int) -> LatchingObject:
    """The subgroupoid of level n generated by all degenerate simplices.

    Objects are the degenerate obj words; morphisms are the closure of the
    degenerate mor words under composition (endpoints of degenerate
    morphisms are degenerate, so the closure stays over the object part).
    """
    _check(n >= 1, "latching objects start at dimension 1")
    X.obj.require_data(n)
    objs = [w for w, word in enumerate(X.obj.words(n)) if word.degens]
    mors = {w for w, word in enumerate(X.mor.words(n)) if word.degens}
    cd = X.comp_dict(n)
    st = X.src.table(n)
    tt = X.tgt.table(n)
    while True:
        new = {
            cd[(u, v)]
            for u in mors
            for v in mors
            if st[u] == tt[v] and cd[(u, v)] not in mors
        }
        if not new:
            break
        mors |= new
    mor_list = sorted(mors)
    oindex = {w: i for i, w in enumerate(objs)}
    mindex = {w: i for i, w in enumerate(mor_list)}
    it = X.ident.table(n)
    vt = X.invert.table(n)
    gpd = FinGroupoid(
        len(objs),
        [oindex[st[u]] for u in mor_list],
        [oindex[tt[u]] for u in mor_list],
        [mindex[it[o]] for o in objs],
        {
            (mindex[u], mindex[v]): mindex[cd[(u, v)]]
            for u in mor_list
            for v in mor_list
            if st[u] == tt[v]
        },
        inv=[mindex[vt[u]] for u in mor_list],
        validate="fast",
    )
    inclusion = GpdFunctor(
        gpd, level_groupoid(X, n), objs, mor_list, validate=False
    )
    return LatchingObject(gpd, inclusion, tuple(objs), tuple(mor_list))


# -- Reedy checks ----------------------------------------------------------------


def _pair_into_fiber(
    span: GpdSpan, F: GpdFunctor, G: GpdFunctor
) -> GpdFunctor:
    """The induced functor <F, G> into a strict fiber product groupoid."""
    P = span.gpd
    oindex = {P.obj_label(i): i for i in range(P.n_obj)}
    mindex = {P.mor_label(k): k for k in range(P.n_mor)}
    return GpdFunctor(
        F.dom,
        P,
        [
            oindex[(F.obj_map[a], G.obj_map[a])]
            for a in range(F.dom.n_obj)
        ],
        [
            mindex[(F.mor_map[u], G.mor_map[u])]
            for u in range(F.dom.n_mor)
        ],
        validate=False,
    )


def reedy_gap(p: SGpdMap, n: int) -> GpdFunctor:
    """Level n over the strict fiber product of matching objects."""
    mx = matching_object(p.dom, n)
    my = matching_object(p.cod, n)
    mp = hom_postcompose(p, mx.hom, my.hom)
    pn = hom_postcompose(p, mx.level, my.level)
    span = strict_fiber_product(mp, my.restriction)
    return _pair_into_fiber(span, mx.restriction, pn)


@dataclass(frozen=True)
class ReedyLevel:
    n: int
    fibration: bool
    cofibration: bool
    objectwise_cofibration: bool
    gap: GpdClassification


@dataclass(frozen=True)
class ReedyReport:
    levels: tuple[ReedyLevel, ...]

    @property
    def fibration(self) -> bool:
        return all(lv.fibration for lv in self.levels)

    @property
    def cofibration(self) -> bool:
        return all(lv.cofibration for lv in self.levels)

    @property
    def objectwise_cofibration(self) -> bool:
        return all(lv.objectwise_cofibration for lv in self.levels)

    def level(self, n: int) -> ReedyLevel:
        return self.levels[n]


def _latching_cofibration(p: SGpdMap, n: int) -> bool:
    """Injectivity of the pushout corner map on level-n object sets.

    The object part of a groupoid pushout is the pushout of object sets,
    so the latching condition reduces to a union-find over the degenerate
    obj words of the codomain and all obj words of the domain.
    """
    X, Y = p.dom, p.cod
    tab = p.on_obj.table(n)
    deg_y = [w for w, word in enumerate(Y.obj.words(n)) if word.degens]
    parent: dict[tuple[str, int], tuple[str, int]] = {}
    for w in range(X.obj.n_words(n)):
        parent[("x", w)] = ("x", w)
    for w in deg_y:
        parent[("y", w)] = ("y", w)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for w, word in enumerate(X.obj.words(n)):
        if word.degens:
            ra, rb = find(("x", w)), find(("y", tab[w]))
            if ra != rb:
                parent[ra] = rb
    images: dict[tuple[str, int], int] = {}
    for node in list(parent):
        kind, w = node
        images[find(node)] = tab[w] if kind == "x" else w
    return len(images) == len(set(images.values()))


def check_reedy(p: SGpdMap, D: int) -> ReedyReport:
    """Per-level fibration and cofibration flags for n <= D."""
    if p.dom.depth < D or p.cod.depth < D:
        raise TruncationError(
            f"Reedy check to dimension {D} exceeds truncation "
            f"{min(p.dom.depth, p.cod.depth)}"
        )
    levels = []
    for n in range(D + 1):
        gap = classify_gpd_map(reedy_gap(p, n))
        cofib = (
            _latching_cofibration(p, n)
            if n >= 1
            else len(set(p.on_obj.table(0))) == p.dom.obj.n_words(0)
        )
        owc = len(set(p.on_obj.table(n))) == p.dom.obj.n_words(n)
        levels.append(
            ReedyLevel(n, gap.isofibration, cofib, owc, gap)
        )
    return ReedyReport(tuple(levels))


# -- fiber products ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SGpdSpan:
    sgpd: SimpGroupoid
    left: SGpdMap
    right: SGpdMap
    obj_view: TupleSSet
    mor_view: TupleSSet
    connecting: SSetMap | None = None


def _strict_internal(
    OT: TupleSSet, MT: TupleSSet, X: SimpGroupoid, Y: SimpGroupoid
) -> SimpGroupoid:
    pr_mx, pr_my = MT.projections
    pr_ox, pr_oy = OT.projections
    src = pairing(
        [compose_maps(X.src, pr_mx), compose_maps(Y.src, pr_my)], OT
    )
    tgt = pairing(
        [compose_maps(X.tgt, pr_mx), compose_maps(Y.tgt, pr_my)], OT
    )
    ident = pairing(
        [compose_maps(X.ident, pr_ox), compose_maps(Y.ident, pr_oy)], MT
    )
    invert = pairing(
        [compose_maps(X.invert, pr_mx), compose_maps(Y.invert, pr_my)], MT
    )
    P = pullback(src, tgt)
    images = []
    for layer in P.tuples:
        lay = []
        for uw, vw in layer:
            ux, uy = MT.tuple_of_word(uw)
            vx, vy = MT.tuple_of_word(vw)
            lay.append(
                MT.word_of_tuple(
                    (X.compose_words(ux, vx), Y.compose_words(uy, vy))
                )
            )
        images.append(lay)
    comp = SSetMap(P.sset, MT.sset, images)
    return SimpGroupoid(
        OT.sset, MT.sset, src, tgt, ident, invert, comp, pairs=P
    )


def sgpd_product(X: SimpGroupoid, Y: SimpGroupoid) -> SGpdSpan:
    """The strict product with its two projections."""
    OT = product(X.obj, Y.obj)
    MT = product(X.mor, Y.mor)
    W = _strict_internal(OT, MT, X, Y)
    return SGpdSpan(
        W,
        SGpdMap(W, X, OT.projections[0], MT.projections[0]),
        SGpdMap(W, Y, OT.projections[1], MT.projections[1]),
        OT,
        MT,
    )


def sgpd_fiber_product(
    q: SGpdMap, p: SGpdMap, mode: str = "strict"
) -> SGpdSpan:
    """Strict or lax fiber product of q: X -> Z and p: Y -> Z.

    Strict is the equality pullback on obj and mor.  Lax has objects
    (a, phi, b) with phi: q(a) -> p(b) in Z and morphisms (u, phi, v)
    carrying the connecting morphism at their source; the target connector
    is forced to p(v) . phi . q(u)^{-1}.
    """
    _check(q.cod == p.cod, "fiber product legs must share a codomain")
    X, Y, Z = q.dom, p.dom, q.cod
    if mode == "strict":
        OT = pullback(q.on_obj, p.on_obj)
        MT = pullback(q.on_mor, p.on_mor)
        W = _strict_internal(OT, MT, X, Y)
        return SGpdSpan(
            W,
            SGpdMap(W, X, OT.projections[0], MT.projections[0]),
            SGpdMap(W, Y, OT.projections[1], MT.projections[1]),
            OT,
            MT,
        )
    if mode != "lax":
        raise ValidationError(f"unknown fiber product mode {mode!r}")
    OT = joined_tuples(
        [X.obj, Z.mor, Y.obj],
        [(0, q.on_obj, 1, Z.src), (1, Z.tgt, 2, p.on_obj)],
    )
    MT = joined_tuples(
        [X.mor, Z.mor, Y.mor],
        [
            (0, compose_maps(q.on_obj, X.src), 1, Z.src),
            (1, Z.tgt, 2, compose_maps(p.on_obj, Y.src)),
        ],
    )

    def connector_at_target(u, phi, v):
        return Z.compose_words(
            Z.compose_words(p.on_mor.apply(v), phi),
            Z.invert.apply(q.on_mor.apply(u)),
        )

    src = SSetMap(
        MT.sset,
        OT.sset,
        [
            [
                OT.word_of_tuple((X.src.apply(u), phi, Y.src.apply(v)))
                for (u, phi, v) in layer
            ]
            for layer in MT.tuples
        ],
    )
    tgt = SSetMap(
        MT.sset,
        OT.sset,
        [
            [
                OT.word_of_tuple(
                    (
                        X.tgt.apply(u),
                        connector_at_target(u, phi, v),
                        Y.tgt.apply(v),
                    )
                )
                for (u, phi, v) in layer
            ]
            for layer in MT.tuples
        ],
    )
    ident = SSetMap(
        OT.sset,
        MT.sset,
        [
            [
                MT.word_of_tuple((X.ident.apply(a), phi, Y.ident.apply(b)))
                for (a, phi, b) in layer
            ]
            for layer in OT.tuples
        ],
    )
    invert = SSetMap(
        MT.sset,
        MT.sset,
        [
            [
                MT.word_of_tuple(
                    (
                        X.invert.apply(u),
                        connector_at_target(u, phi, v),
                        Y.invert.apply(v),
                    )
                )
                for (u, phi, v) in layer
            ]
            for layer in MT.tuples
        ],
    )
    P = pullback(src, tgt)
    images = []
    for layer in P.tuples:
        lay = []
        for m2, m1 in layer:
            u2, _, v2 = MT.tuple_of_word(m2)
            u1, phi1, v1 = MT.tuple_of_word(m1)
            lay.append(
                MT.word_of_tuple(
                    (
                        X.compose_words(u2, u1),
                        phi1,
                        Y.compose_words(v2, v1),
                    )
                )
            )
        images.append(lay)
    comp = SSetMap(P.sset, MT.sset, images)
    W = SimpGroupoid(OT.sset, MT.sset, src, tgt, ident, invert, comp, pairs=P)
    return SGpdSpan(
        W,
        SGpdMap(W, X, OT.projections[0], MT.projections[0]),
        SGpdMap(W, Y, OT.projections[2], MT.projections[2]),
        OT,
        MT,
        connecting=OT.projections[1],
    )


def strict_to_lax_sgpd(
    q: SGpdMap, p: SGpdMap, strict: SGpdSpan, lax: SGpdSpan
) -> SGpdMap:
    """(a, b) with q(a) = p(b) goes to (a, identity connector, b)."""
    Z = q.cod
    on_obj = pairing(
        [
            strict.left.on_obj,
            compose_maps(
                Z.ident, compose_maps(q.on_obj, strict.left.on_obj)
            ),
            strict.right.on_obj,
        ],
        lax.obj_view,
    )
    on_mor = pairing(
        [
            strict.left.on_mor,
            compose_maps(
                Z.ident,
                compose_maps(
                    Z.src, compose_maps(q.on_mor, strict.left.on_mor)
                ),
            ),
            strict.right.on_mor,
        ],
        lax.mor_view,
    )
    return SGpdMap(strict.sgpd, lax.sgpd, on_obj, on_mor)


# -- 2-isomorphisms -----------------------------------------------------------------


class SGpdNatIso:
    """A 2-isomorphism between parallel maps of simplicial groupoids.

    The component map sends each object simplex a of the domain to a
    morphism simplex fsrc(a) -> ftgt(a) of the codomain, naturally in a.
    """

    __slots__ = ("fsrc", "ftgt", "component")

    def __init__(
        self,
        fsrc: SGpdMap,
        ftgt: SGpdMap,
        component: SSetMap,
        validate: bool = True,
    ):
        _check(
            fsrc.dom == ftgt.dom and fsrc.cod == ftgt.cod,
            "2-isomorphisms need parallel maps",
        )
        _check(
            component.dom == fsrc.dom.obj and component.cod == fsrc.cod.mor,
            "component must map dom objects to cod morphisms",
        )
        self.fsrc = fsrc
        self.ftgt = ftgt
        self.component = component
        if validate:
            self._validate()

    def _validate(self) -> None:
        X, Y = self.fsrc.dom, self.fsrc.cod
        if compose_maps(Y.src, self.component) != self.fsrc.on_obj:
            raise ValidationError("component does not start at the source map")
        if compose_maps(Y.tgt, self.component) != self.ftgt.on_obj:
            raise ValidationError("component does not end at the target map")
        lhs = compose_maps(
            Y.comp,
            pairing(
                [
                    compose_maps(self.component, X.tgt),
                    self.fsrc.on_mor,
                ],
                Y.pairs,
            ),
        )
        rhs = compose_maps(
            Y.comp,
            pairing(
                [
                    self.ftgt.on_mor,
                    compose_maps(self.component, X.src),
                ],
                Y.pairs,
            ),
        )
        if lhs != rhs:
            raise ValidationError("naturality square does not commute")


def identity_nat_iso(f: SGpdMap) -> SGpdNatIso:
    return SGpdNatIso(
        f, f, compose_maps(f.cod.ident, f.on_obj), validate=False
    )
