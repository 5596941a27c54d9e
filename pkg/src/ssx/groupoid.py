"""Finite groupoids, functors, nerves, and the surrounding machinery.

Objects and morphisms are integer indices; composition is a full lookup
table, so every categorical axiom is checked by finite enumeration.
``comp(u, v)`` means "u after v" and requires src(u) = tgt(v).

Alongside the basic calculus this module provides the standard stock of
examples, exhaustive functor and natural-isomorphism enumeration, strict
and lax fiber products with their comparison functor, the arrow groupoid,
map classification (isofibrations by brute-force lifting, cofibrations,
equivalences), and the nerve as a truncated simplicial set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .builder import BuiltSSet, build_sset, map_from_raw
from .sset import SSetMap, ValidationError, _check


class FinGroupoid:
    """A finite groupoid with full structure tables."""

    __slots__ = (
        "n_obj",
        "src",
        "tgt",
        "ident",
        "inv",
        "comp_table",
        "obj_labels",
        "mor_labels",
        "_cache",
    )

    def __init__(
        self,
        n_obj,
        src,
        tgt,
        ident,
        comp_table,
        inv=None,
        obj_labels=None,
        mor_labels=None,
        validate=True,
    ):
        self.n_obj = n_obj
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.ident = tuple(ident)
        self.comp_table = dict(comp_table)
        if inv is None:
            inv = self._derive_inverses()
        self.inv = tuple(inv)
        self.obj_labels = tuple(obj_labels) if obj_labels is not None else None
        self.mor_labels = tuple(mor_labels) if mor_labels is not None else None
        self._cache: dict = {}
        # validate=True checks everything; "fast" skips only the
        # associativity sweep, which is quadratic in composable pairs.
        if validate:
            self._validate(full=validate is True)

    @property
    def n_mor(self) -> int:
        return len(self.src)

    def _derive_inverses(self):
        inv = [None] * len(self.src)
        for u in range(len(self.src)):
            e = self.ident[self.tgt[u]]
            for v in range(len(self.src)):
                if (
                    self.src[v] == self.tgt[u]
                    and self.tgt[v] == self.src[u]
                    and self.comp_table.get((u, v)) == e
                ):
                    inv[u] = v
                    break
            if inv[u] is None:
                raise ValidationError(f"morphism {u} has no inverse")
        return inv

    def _validate(self, full: bool = True) -> None:
        n, m = self.n_obj, self.n_mor
        _check(len(self.tgt) == m and len(self.inv) == m, "table length mismatch")
        _check(len(self.ident) == n, "one identity per object required")
        _check(all(0 <= x < n for x in self.src + self.tgt), "endpoint out of range")
        for a in range(n):
            e = self.ident[a]
            _check(
                self.src[e] == a and self.tgt[e] == a,
                f"identity of {a} has wrong endpoints",
            )
        for (u, v), w in self.comp_table.items():
            _check(
                self.src[u] == self.tgt[v],
                f"composite ({u},{v}) recorded for non-composable pair",
            )
            _check(
                self.src[w] == self.src[v] and self.tgt[w] == self.tgt[u],
                f"composite of ({u},{v}) has wrong endpoints",
            )
        for u in range(m):
            for v in range(m):
                if self.src[u] == self.tgt[v] and (u, v) not in self.comp_table:
                    raise ValidationError(f"missing composite for ({u},{v})")
        for u in range(m):
            _check(
                self.comp(u, self.ident[self.src[u]]) == u
                and self.comp(self.ident[self.tgt[u]], u) == u,
                f"unit law fails at {u}",
            )
            _check(
                self.comp(u, self.inv[u]) == self.ident[self.tgt[u]]
                and self.comp(self.inv[u], u) == self.ident[self.src[u]],
                f"inverse law fails at {u}",
            )
        if full:
            for (u, v) in self.comp_table:
                for w in self.hom_into(self.src[v]):
                    if self.comp(self.comp(u, v), w) != self.comp(
                        u, self.comp(v, w)
                    ):
                        raise ValidationError(f"associativity fails at ({u},{v},{w})")

    def comp(self, u: int, v: int) -> int:
        try:
            return self.comp_table[(u, v)]
        except KeyError:
            raise ValidationError(
                f"morphisms {u} and {v} are not composable"
            ) from None

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        key = "hom"
        if key not in self._cache:
            table: dict[tuple[int, int], list[int]] = {}
            for u in range(self.n_mor):
                table.setdefault((self.src[u], self.tgt[u]), []).append(u)
            self._cache[key] = table
        return tuple(self._cache[key].get((a, b), ()))

    def out_of(self, a: int) -> tuple[int, ...]:
        key = "out"
        if key not in self._cache:
            table: dict[int, list[int]] = {}
            for u in range(self.n_mor):
                table.setdefault(self.src[u], []).append(u)
            self._cache[key] = table
        return tuple(self._cache[key].get(a, ()))

    def hom_into(self, a: int) -> tuple[int, ...]:
        key = "into"
        if key not in self._cache:
            table: dict[int, list[int]] = {}
            for u in range(self.n_mor):
                table.setdefault(self.tgt[u], []).append(u)
            self._cache[key] = table
        return tuple(self._cache[key].get(a, ()))

    def component_of(self) -> tuple[int, ...]:
        """Connected-component index per object, numbered by least member."""
        key = "comp_of"
        if key not in self._cache:
            parent = list(range(self.n_obj))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for u in range(self.n_mor):
                ra, rb = find(self.src[u]), find(self.tgt[u])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            roots = sorted({find(x) for x in range(self.n_obj)})
            rindex = {r: i for i, r in enumerate(roots)}
            self._cache[key] = tuple(rindex[find(x)] for x in range(self.n_obj))
        return self._cache[key]

    def vertex_group(self, a: int) -> tuple[int, ...]:
        return self.hom(a, a)

    def obj_label(self, a: int):
        return self.obj_labels[a] if self.obj_labels is not None else a

    def mor_label(self, u: int):
        return self.mor_labels[u] if self.mor_labels is not None else u

    def __eq__(self, other):
        if not isinstance(other, FinGroupoid):
            return NotImplemented
        return (
            self.n_obj == other.n_obj
            and self.src == other.src
            and self.tgt == other.tgt
            and self.ident == other.ident
            and self.comp_table == other.comp_table
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        return f"FinGroupoid({self.n_obj} objects, {self.n_mor} morphisms)"


def groupoid_from_homs(
    obj_labels, mor_records, comp_fn, ident_of, validate=True
) -> FinGroupoid:
    """Build a groupoid from labeled morphisms and a label-level composition.

    ``mor_records`` lists (label, src_idx, tgt_idx); ``comp_fn`` composes two
    labels; ``ident_of`` gives the identity label of an object index.
    """
    labels = [rec[0] for rec in mor_records]
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise ValidationError("duplicate morphism labels")
    src = [rec[1] for rec in mor_records]
    tgt = [rec[2] for rec in mor_records]
    ident = [index[ident_of(a)] for a in range(len(obj_labels))]
    into: dict[int, list[int]] = {}
    for v, t in enumerate(tgt):
        into.setdefault(t, []).append(v)
    comp_table = {}
    for u in range(len(labels)):
        for v in into.get(src[u], ()):
            comp_table[(u, v)] = index[comp_fn(labels[u], labels[v])]
    return FinGroupoid(
        len(obj_labels),
        src,
        tgt,
        ident,
        comp_table,
        obj_labels=obj_labels,
        mor_labels=labels,
        validate=validate,
    )


# -- stock examples ---------------------------------------------------------


def terminal_gpd() -> FinGroupoid:
    return FinGroupoid(1, [0], [0], [0], {(0, 0): 0})


def discrete_gpd(n: int) -> FinGroupoid:
    return FinGroupoid(
        n,
        list(range(n)),
        list(range(n)),
        list(range(n)),
        {(a, a): a for a in range(n)},
    )


def chaotic_gpd(n: int) -> FinGroupoid:
    """Exactly one morphism between any ordered pair of n objects."""
    mors = [(a, b) for a in range(n) for b in range(n)]
    return groupoid_from_homs(
        list(range(n)),
        [((a, b), a, b) for (a, b) in mors],
        lambda u, v: (v[0], u[1]),
        lambda a: (a, a),
    )


def interval_gpd() -> FinGroupoid:
    """The free-standing isomorphism: two objects, one iso between them."""
    return chaotic_gpd(2)


def cyclic_gpd(k: int) -> FinGroupoid:
    """One object with Z/k as its automorphism group."""
    return groupoid_from_homs(
        [0],
        [(g, 0, 0) for g in range(k)],
        lambda u, v: (u + v) % k,
        lambda a: 0,
    )


def disjoint_union_gpd(parts) -> tuple[FinGroupoid, tuple]:
    parts = list(parts)
    obj_off = []
    mor_off = []
    o = m = 0
    for G in parts:
        obj_off.append(o)
        mor_off.append(m)
        o += G.n_obj
        m += G.n_mor
    src = []
    tgt = []
    ident = [0] * o
    comp = {}
    obj_labels = []
    mor_labels = []
    for k, G in enumerate(parts):
        for a in range(G.n_obj):
            ident[obj_off[k] + a] = mor_off[k] + G.ident[a]
            obj_labels.append((k, G.obj_label(a)))
        for u in range(G.n_mor):
            src.append(obj_off[k] + G.src[u])
            tgt.append(obj_off[k] + G.tgt[u])
            mor_labels.append((k, G.mor_label(u)))
        for (u, v), w in G.comp_table.items():
            comp[(mor_off[k] + u, mor_off[k] + v)] = mor_off[k] + w
    G = FinGroupoid(
        o, src, tgt, ident, comp, obj_labels=obj_labels, mor_labels=mor_labels
    )
    injections = tuple(
        GpdFunctor(
            parts[k],
            G,
            [obj_off[k] + a for a in range(parts[k].n_obj)],
            [mor_off[k] + u for u in range(parts[k].n_mor)],
        )
        for k in range(len(parts))
    )
    return G, injections


# -- functors and natural isomorphisms ---------------------------------------


class GpdFunctor:
    __slots__ = ("dom", "cod", "obj_map", "mor_map")

    def __init__(self, dom, cod, obj_map, mor_map, validate=True):
        self.dom = dom
        self.cod = cod
        self.obj_map = tuple(obj_map)
        self.mor_map = tuple(mor_map)
        if validate:
            self._validate()

    def _validate(self):
        G, H = self.dom, self.cod
        _check(
            len(self.obj_map) == G.n_obj and len(self.mor_map) == G.n_mor,
            "functor table length mismatch",
        )
        for u in range(G.n_mor):
            fu = self.mor_map[u]
            _check(
                H.src[fu] == self.obj_map[G.src[u]]
                and H.tgt[fu] == self.obj_map[G.tgt[u]],
                f"functor breaks endpoints at morphism {u}",
            )
        for a in range(G.n_obj):
            _check(
                self.mor_map[G.ident[a]] == H.ident[self.obj_map[a]],
                f"functor breaks identity at object {a}",
            )
        for (u, v), w in G.comp_table.items():
            if H.comp(self.mor_map[u], self.mor_map[v]) != self.mor_map[w]:
                raise ValidationError(f"functor breaks composition at ({u},{v})")

    def on_obj(self, a: int) -> int:
        return self.obj_map[a]

    def on_mor(self, u: int) -> int:
        return self.mor_map[u]

    def __eq__(self, other):
        if not isinstance(other, GpdFunctor):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.obj_map == other.obj_map
            and self.mor_map == other.mor_map
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        return f"GpdFunctor({self.dom!r} -> {self.cod!r})"


def identity_functor(G: FinGroupoid) -> GpdFunctor:
    return GpdFunctor(
        G, G, range(G.n_obj), range(G.n_mor), validate=False
    )


def compose_functors(F2: GpdFunctor, F1: GpdFunctor) -> GpdFunctor:
    _check(F1.cod == F2.dom, "functor composition mismatch")
    return GpdFunctor(
        F1.dom,
        F2.cod,
        [F2.obj_map[a] for a in F1.obj_map],
        [F2.mor_map[u] for u in F1.mor_map],
        validate=False,
    )


def constant_functor(G: FinGroupoid, H: FinGroupoid, obj: int) -> GpdFunctor:
    return GpdFunctor(
        G,
        H,
        [obj] * G.n_obj,
        [H.ident[obj]] * G.n_mor,
    )


class GpdNatIso:
    """A natural isomorphism between parallel functors, given by components."""

    __slots__ = ("fsrc", "ftgt", "components")

    def __init__(self, fsrc: GpdFunctor, ftgt: GpdFunctor, components, validate=True):
        self.fsrc = fsrc
        self.ftgt = ftgt
        self.components = tuple(components)
        if validate:
            self._validate()

    def _validate(self):
        F, G = self.fsrc, self.ftgt
        _check(
            F.dom == G.dom and F.cod == G.cod,
            "natural isomorphism needs parallel functors",
        )
        H = F.cod
        for a in range(F.dom.n_obj):
            c = self.components[a]
            _check(
                H.src[c] == F.obj_map[a] and H.tgt[c] == G.obj_map[a],
                f"component at {a} has wrong endpoints",
            )
        for u in range(F.dom.n_mor):
            a, b = F.dom.src[u], F.dom.tgt[u]
            lhs = H.comp(self.components[b], F.mor_map[u])
            rhs = H.comp(G.mor_map[u], self.components[a])
            if lhs != rhs:
                raise ValidationError(f"naturality square fails at morphism {u}")

    def __eq__(self, other):
        if not isinstance(other, GpdNatIso):
            return NotImplemented
        return (
            self.fsrc == other.fsrc
            and self.ftgt == other.ftgt
            and self.components == other.components
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None


def enumerate_functors(A: FinGroupoid, B: FinGroupoid) -> list[GpdFunctor]:
    """All functors A -> B by backtracking over morphism images."""
    results: list[GpdFunctor] = []
    pairs = list(A.comp_table.items())

    def extend(obj_map):
        mor_map: list[int | None] = [None] * A.n_mor
        for a in range(A.n_obj):
            mor_map[A.ident[a]] = B.ident[obj_map[a]]
        free = [u for u in range(A.n_mor) if mor_map[u] is None]

        def rec(k: int):
            if k == len(free):
                if all(
                    B.comp(mor_map[u], mor_map[v]) == mor_map[w]
                    for (u, v), w in pairs
                ):
                    results.append(
                        GpdFunctor(A, B, obj_map, list(mor_map), validate=False)
                    )
                return
            u = free[k]
            for cand in B.hom(obj_map[A.src[u]], obj_map[A.tgt[u]]):
                mor_map[u] = cand
                rec(k + 1)
            mor_map[u] = None

        rec(0)

    def objs(k, acc):
        if k == A.n_obj:
            extend(list(acc))
            return
        for b in range(B.n_obj):
            objs(k + 1, acc + [b])

    objs(0, [])
    return results


def enumerate_nat_isos(F: GpdFunctor, G: GpdFunctor) -> list[GpdNatIso]:
    """All natural isomorphisms F => G by backtracking over components."""
    _check(F.dom == G.dom and F.cod == G.cod, "parallel functors required")
    A, H = F.dom, F.cod
    results: list[GpdNatIso] = []

    def rec(a: int, acc: list[int]):
        if a == A.n_obj:
            try:
                results.append(GpdNatIso(F, G, acc))
            except ValidationError:
                pass
            return
        for c in H.hom(F.obj_map[a], G.obj_map[a]):
            rec(a + 1, acc + [c])

    rec(0, [])
    return results


def functor_groupoid(A: FinGroupoid, B: FinGroupoid) -> FinGroupoid:
    """The groupoid of functors A -> B and natural isomorphisms."""
    functors = enumerate_functors(A, B)
    findex = {
        (F.obj_map, F.mor_map): i for i, F in enumerate(functors)
    }
    mor_records = []
    for i, F in enumerate(functors):
        for j, G in enumerate(functors):
            for t in enumerate_nat_isos(F, G):
                mor_records.append(((i, j, t.components), i, j))
    H = B

    def comp_fn(u, v):
        i2, j2, c2 = u
        i1, j1, c1 = v
        comps = tuple(H.comp(c2[a], c1[a]) for a in range(A.n_obj))
        return (i1, j2, comps)

    def ident_of(i):
        F = functors[i]
        return (i, i, tuple(H.ident[F.obj_map[a]] for a in range(A.n_obj)))

    G = groupoid_from_homs(
        [(F.obj_map, F.mor_map) for F in functors], mor_records, comp_fn, ident_of
    )
    G._cache["functors"] = functors
    return G


# -- fiber products -----------------------------------------------------------


@dataclass(frozen=True)
class GpdSpan:
    gpd: FinGroupoid
    left: GpdFunctor
    right: GpdFunctor


def strict_fiber_product(F: GpdFunctor, G: GpdFunctor) -> GpdSpan:
    """Objects (a, b) with F(a) = G(b); morphisms componentwise."""
    _check(F.cod == G.cod, "fiber product legs must share a codomain")
    A, B = F.dom, G.dom
    objs = [
        (a, b)
        for a in range(A.n_obj)
        for b in range(B.n_obj)
        if F.obj_map[a] == G.obj_map[b]
    ]
    oindex = {p: i for i, p in enumerate(objs)}
    mors = [
        (u, v)
        for u in range(A.n_mor)
        for v in range(B.n_mor)
        if F.mor_map[u] == G.mor_map[v]
    ]
    records = [
        ((u, v), oindex[(A.src[u], B.src[v])], oindex[(A.tgt[u], B.tgt[v])])
        for (u, v) in mors
    ]
    P = groupoid_from_homs(
        objs,
        records,
        lambda m2, m1: (A.comp(m2[0], m1[0]), B.comp(m2[1], m1[1])),
        lambda i: (A.ident[objs[i][0]], B.ident[objs[i][1]]),
    )
    left = GpdFunctor(
        P, A, [p[0] for p in objs], [m[0] for m in mors], validate=False
    )
    right = GpdFunctor(
        P, B, [p[1] for p in objs], [m[1] for m in mors], validate=False
    )
    return GpdSpan(P, left, right)


def lax_fiber_product(F: GpdFunctor, G: GpdFunctor) -> GpdSpan:
    """Objects (a, b, phi: F(a) -> G(b)); morphisms are compatible squares."""
    _check(F.cod == G.cod, "fiber product legs must share a codomain")
    A, B = F.dom, G.dom
    C = F.cod
    objs = [
        (a, b, phi)
        for a in range(A.n_obj)
        for b in range(B.n_obj)
        for phi in C.hom(F.obj_map[a], G.obj_map[b])
    ]
    oindex = {o: i for i, o in enumerate(objs)}
    records = []
    for si, (a, b, phi) in enumerate(objs):
        for u in A.out_of(a):
            a2 = A.tgt[u]
            for v in B.out_of(b):
                b2 = B.tgt[v]
                # phi2 is forced: phi2 = G(v) . phi . F(u)^{-1}
                phi2 = C.comp(
                    G.mor_map[v], C.comp(phi, C.inv[F.mor_map[u]])
                )
                records.append(
                    (
                        ((a, b, phi), (u, v)),
                        si,
                        oindex[(a2, b2, phi2)],
                    )
                )

    def comp_fn(m2, m1):
        (_, (u2, v2)) = m2
        (o1, (u1, v1)) = m1
        return (o1, (A.comp(u2, u1), B.comp(v2, v1)))

    def ident_of(i):
        a, b, phi = objs[i]
        return ((a, b, phi), (A.ident[a], B.ident[b]))

    P = groupoid_from_homs(objs, records, comp_fn, ident_of)
    left = GpdFunctor(
        P,
        A,
        [o[0] for o in objs],
        [rec[0][1][0] for rec in records],
        validate=False,
    )
    right = GpdFunctor(
        P,
        B,
        [o[1] for o in objs],
        [rec[0][1][1] for rec in records],
        validate=False,
    )
    return GpdSpan(P, left, right)


def strict_to_lax_comparison(
    F: GpdFunctor, G: GpdFunctor, strict: GpdSpan, lax: GpdSpan
) -> GpdFunctor:
    """(a, b) with F(a) = G(b) goes to (a, b, id)."""
    C = F.cod
    P, L = strict.gpd, lax.gpd
    lobj = {L.obj_label(i): i for i in range(L.n_obj)}
    lmor = {L.mor_label(k): k for k in range(L.n_mor)}
    obj_map = []
    for i in range(P.n_obj):
        a, b = P.obj_label(i)
        obj_map.append(lobj[(a, b, C.ident[F.obj_map[a]])])
    mor_map = []
    for k in range(P.n_mor):
        u, v = P.mor_label(k)
        a, b = P.obj_label(P.src[k])
        mor_map.append(lmor[((a, b, C.ident[F.obj_map[a]]), (u, v))])
    return GpdFunctor(P, L, obj_map, mor_map)


# -- arrow groupoid -----------------------------------------------------------


@dataclass(frozen=True)
class ArrowGpd:
    gpd: FinGroupoid
    src_functor: GpdFunctor
    tgt_functor: GpdFunctor
    ident_functor: GpdFunctor


def arrow_groupoid(G: FinGroupoid) -> ArrowGpd:
    """Objects are morphisms of G; morphisms are commuting squares (a, b).

    A square (a, b): f -> g satisfies b . f = g . a; equivalently
    g = b . f . a^{-1}, so squares are parametrized by (f, a, b).
    """
    objs = list(range(G.n_mor))
    records = []
    for f in objs:
        for a in G.out_of(G.src[f]):
            for b in G.out_of(G.tgt[f]):
                g = G.comp(b, G.comp(f, G.inv[a]))
                records.append(((f, g, a, b), f, g))
    A = groupoid_from_homs(
        objs,
        records,
        lambda m2, m1: (m1[0], m2[1], G.comp(m2[2], m1[2]), G.comp(m2[3], m1[3])),
        lambda f: (f, f, G.ident[G.src[f]], G.ident[G.tgt[f]]),
    )
    mindex = {lab: k for k, lab in enumerate(A.mor_labels)}
    src_f = GpdFunctor(
        A,
        G,
        [G.src[f] for f in objs],
        [lab[2] for lab in A.mor_labels],
        validate=False,
    )
    tgt_f = GpdFunctor(
        A,
        G,
        [G.tgt[f] for f in objs],
        [lab[3] for lab in A.mor_labels],
        validate=False,
    )
    ident_f = GpdFunctor(
        G,
        A,
        [G.ident[x] for x in range(G.n_obj)],
        [
            mindex[(G.ident[G.src[u]], G.ident[G.tgt[u]], u, u)]
            for u in range(G.n_mor)
        ],
        validate=False,
    )
    return ArrowGpd(A, src_f, tgt_f, ident_f)


# -- map classification --------------------------------------------------------


@dataclass(frozen=True)
class GpdClassification:
    isofibration: bool
    cofibration: bool
    fully_faithful: bool
    essentially_surjective: bool

    @property
    def equivalence(self) -> bool:
        return self.fully_faithful and self.essentially_surjective

    @property
    def trivial_fibration(self) -> bool:
        return self.isofibration and self.equivalence

    @property
    def trivial_cofibration(self) -> bool:
        return self.cofibration and self.equivalence


def classify_gpd_map(F: GpdFunctor) -> GpdClassification:
    G, H = F.dom, F.cod
    isofib = True
    for a in range(G.n_obj):
        for g in H.out_of(F.obj_map[a]):
            if not any(
                F.mor_map[u] == g for u in G.out_of(a)
            ):
                isofib = False
                break
        if not isofib:
            break
    cofib = len(set(F.obj_map)) == G.n_obj
    ff = True
    for a in range(G.n_obj):
        for b in range(G.n_obj):
            images = [F.mor_map[u] for u in G.hom(a, b)]
            target = H.hom(F.obj_map[a], F.obj_map[b])
            if len(set(images)) != len(images) or set(images) != set(target):
                ff = False
                break
        if not ff:
            break
    comp = H.component_of()
    hit = {comp[F.obj_map[a]] for a in range(G.n_obj)}
    es = hit == set(comp) if H.n_obj else True
    return GpdClassification(isofib, cofib, ff, es)


# -- isomorphism and equivalence ------------------------------------------------


def _group_signature(G: FinGroupoid, a: int):
    """Isomorphism-class fingerprint of the vertex group at a."""
    els = G.vertex_group(a)
    orders = []
    for u in els:
        k = 1
        v = u
        e = G.ident[a]
        while v != e:
            v = G.comp(u, v)
            k += 1
        orders.append(k)
    return tuple(sorted(orders))


def _groups_isomorphic(G: FinGroupoid, a: int, H: FinGroupoid, b: int) -> bool:
    ga, gb = G.vertex_group(a), H.vertex_group(b)
    if len(ga) != len(gb):
        return False
    if _group_signature(G, a) != _group_signature(H, b):
        return False
    import itertools

    pos_b = {u: i for i, u in enumerate(gb)}

    def order(K, e, u):
        k, v = 1, u
        while v != e:
            v = K.comp(u, v)
            k += 1
        return k

    ords_a = [order(G, G.ident[a], u) for u in ga]
    ords_b = [order(H, H.ident[b], u) for u in gb]
    for perm in itertools.permutations(range(len(gb))):
        if any(ords_a[i] != ords_b[perm[i]] for i in range(len(ga))):
            continue
        ok = True
        for i in range(len(ga)):
            for j in range(len(ga)):
                lhs = perm[ga.index(G.comp(ga[i], ga[j]))]
                rhs = pos_b[H.comp(gb[perm[i]], gb[perm[j]])]
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def _component_profile(G: FinGroupoid):
    comp = G.component_of()
    reps = {}
    sizes = {}
    for a in range(G.n_obj):
        reps.setdefault(comp[a], a)
        sizes[comp[a]] = sizes.get(comp[a], 0) + 1
    return comp, reps, sizes


def is_equivalent_gpd(G: FinGroupoid, H: FinGroupoid) -> bool:
    """Equivalence of groupoids: matching components with isomorphic groups."""
    _, repg, _ = _component_profile(G)
    _, reph, _ = _component_profile(H)
    gs = list(repg.values())
    hs = list(reph.values())
    if len(gs) != len(hs):
        return False
    used = [False] * len(hs)

    def rec(i):
        if i == len(gs):
            return True
        for j in range(len(hs)):
            if not used[j] and _groups_isomorphic(G, gs[i], H, hs[j]):
                used[j] = True
                if rec(i + 1):
                    return True
                used[j] = False
        return False

    return rec(0)


def is_isomorphic_gpd(G: FinGroupoid, H: FinGroupoid) -> bool:
    """Isomorphism: equivalence plus matching component object counts."""
    if G.n_obj != H.n_obj or G.n_mor != H.n_mor:
        return False
    compg, repg, sizeg = _component_profile(G)
    comph, reph, sizeh = _component_profile(H)
    gs = list(repg.keys())
    hs = list(reph.keys())
    if len(gs) != len(hs):
        return False
    used = [False] * len(hs)

    def rec(i):
        if i == len(gs):
            return True
        for j in range(len(hs)):
            if used[j] or sizeg[gs[i]] != sizeh[hs[j]]:
                continue
            if _groups_isomorphic(G, repg[gs[i]], H, reph[hs[j]]):
                used[j] = True
                if rec(i + 1):
                    return True
                used[j] = False
        return False

    return rec(0)


# -- nerve ----------------------------------------------------------------------


def composable_strings(G: FinGroupoid, n: int) -> list:
    """All n-strings (m_1, ..., m_n) with tgt(m_k) = src(m_{k+1}), lex order.

    Level 0 is the object list.  Strings read left to right along the path
    x_0 -> x_1 -> ... -> x_n, so m_k runs from vertex k-1 to vertex k.
    """
    if n == 0:
        return list(range(G.n_obj))
    level: list[tuple[int, ...]] = [(u,) for u in range(G.n_mor)]
    for _ in range(n - 1):
        level = [s + (u,) for s in level for u in G.out_of(G.tgt[s[-1]])]
    return level


def string_face(G: FinGroupoid, n: int, s, i: int):
    """Nerve face: drop an end or compose at an inner vertex."""
    if n == 1:
        return G.src[s[0]] if i == 1 else G.tgt[s[0]]
    if i == 0:
        return s[1:]
    if i == n:
        return s[:-1]
    return s[: i - 1] + (G.comp(s[i], s[i - 1]),) + s[i + 1 :]


def string_degen(G: FinGroupoid, n: int, s, j: int):
    """Nerve degeneracy: insert the identity of vertex j."""
    if n == 0:
        return (G.ident[s],)
    if j == 0:
        return (G.ident[G.src[s[0]]],) + s
    return s[:j] + (G.ident[G.tgt[s[j - 1]]],) + s[j:]


def nerve(G: FinGroupoid, depth: int) -> BuiltSSet:
    """The nerve as a simplicial set truncated at the given depth."""
    layers = [composable_strings(G, n) for n in range(depth + 1)]
    return build_sset(
        layers,
        lambda n, s, i: string_face(G, n, s, i),
        lambda n, s, j: string_degen(G, n, s, j),
        truncation=depth,
    )


def nerve_functor(
    F: GpdFunctor, dom_nerve: BuiltSSet, cod_nerve: BuiltSSet
) -> SSetMap:
    """The simplicial map of nerves induced by a functor."""

    def fn(n, s):
        if n == 0:
            return F.obj_map[s]
        return tuple(F.mor_map[u] for u in s)

    return map_from_raw(dom_nerve, cod_nerve, fn)
