"""Named verification suites over a deterministic built-in corpus.

Each suite replays one of the library's headline combinatorial facts as a
batch of named checks: the closed-star description of d*, the equivalence
of the groupoid-level and nerve-level Reedy gap verdicts, the nerve bridge
between isofibrations and Kan fibrations, the diagonal fibration theorem
and its hypotheses, preservation of fiber products by the diagonal,
levelwise homology profiles, the weak lifting space, and the word-level
normal-form identities.  Suites are deterministic: rerunning one yields
the same checks in the same order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .bisset import (
    d_star,
    d_star_agreement,
    nerve_bisset,
    nerve_bisset_map,
    sing,
    sing_map,
)
from .groupoid import (
    FinGroupoid,
    GpdFunctor,
    classify_gpd_map,
    constant_functor,
    cyclic_gpd,
    discrete_gpd,
    disjoint_union_gpd,
    identity_functor,
    interval_gpd,
    nerve,
    nerve_functor,
    terminal_gpd,
)
from .homology import homology
from .lifting import (
    LiftingProblem,
    classify_sset_fibration,
    jardine_criterion,
    solve_strict,
    weak_lift_space,
)
from .sgpd import (
    SGpdMap,
    chaotic_resolution,
    check_reedy,
    constant_sgpd,
    constant_sgpd_map,
    discrete_sgpd,
    discrete_sgpd_map,
    identity_sgpd_map,
    reedy_gap,
    resolution_map,
    sgpd_fiber_product,
)
from .sset import (
    FinSSet,
    SSetMap,
    Subcomplex,
    ValidationError,
    boundary,
    check_map,
    compose_maps,
    constant_map,
    enumerate_maps,
    horn,
    identity_map,
    pairing,
    product,
    pullback,
    simplex,
    simplex_inclusion,
    vertex_inclusion,
)
from .words import SimplexRef, degens_of_surjection, surjection_of_word

DEFAULT_DEPTH = 3

__all__ = ["Check", "DEFAULT_DEPTH", "SUITES", "run_suite", "suite_ids"]


@dataclass(frozen=True)
class Check:
    """One named verdict inside a suite report."""

    name: str
    passed: bool
    detail: str = ""
    witness: str | None = None


def _check_of(name, passed, detail="", witness=None):
    return Check(name, bool(passed), detail, witness)


# -- corpus ----------------------------------------------------------------------------


def corpus_groupoids() -> list[tuple[str, FinGroupoid]]:
    """The five standing example groupoids, smallest first."""
    U, _ = disjoint_union_gpd([cyclic_gpd(2), cyclic_gpd(2)])
    return [
        ("terminal", terminal_gpd()),
        ("disc2", discrete_gpd(2)),
        ("BZ2", cyclic_gpd(2)),
        ("J", interval_gpd()),
        ("BZ2+BZ2", U),
    ]


def corpus_functors() -> list[tuple[str, GpdFunctor]]:
    """Identities, collapses, point inclusions, fold and swap maps."""
    gs = corpus_groupoids()
    T = gs[0][1]
    Z2 = gs[2][1]
    J = gs[3][1]
    U = gs[4][1]
    fs: list[tuple[str, GpdFunctor]] = []
    for name, G in gs:
        fs.append((f"id[{name}]", identity_functor(G)))
    for name, G in gs[1:]:
        fs.append((f"{name}->terminal", constant_functor(G, T, 0)))
    for name, G in gs[1:]:
        fs.append((f"pt0->{name}", GpdFunctor(T, G, [0], [G.ident[0]])))
    fs.append(("pt1->J", GpdFunctor(T, J, [1], [J.ident[1]])))
    fs.append(("fold[BZ2+BZ2->BZ2]", GpdFunctor(U, Z2, [0, 0], [0, 1, 0, 1])))
    fs.append(("swap[BZ2+BZ2]", GpdFunctor(U, U, [1, 0], [2, 3, 0, 1])))
    fs.append(("swap[J]", GpdFunctor(J, J, [1, 0], [3, 2, 1, 0])))
    fs.append(("disc2->J", GpdFunctor(discrete_gpd(2), J, [0, 1], [0, 3])))
    return fs


def _resolution_isofibrations() -> list[tuple[str, GpdFunctor]]:
    """Corpus isofibrations with at most four morphisms upstairs."""
    by_name = dict(corpus_functors())
    picks = [
        "id[terminal]",
        "disc2->terminal",
        "id[BZ2]",
        "BZ2->terminal",
        "id[J]",
        "J->terminal",
        "fold[BZ2+BZ2->BZ2]",
    ]
    return [(n, by_name[n]) for n in picks]


def _seed_pairs(seeds, typ):
    out = []
    for name, obj in seeds or ():
        if isinstance(obj, typ):
            out.append((name, obj))
    return out


# -- d*-lemma ----------------------------------------------------------------------------


def _face_closed_subsets(n: int):
    """All face-closed subsets of the n-simplex, named by maximal cells."""
    X = simplex(n)
    cells = []
    for k in range(n + 1):
        for idx in range(X.counts[k]):
            cells.append((frozenset(X.label(k, idx)), SimplexRef(k, idx)))
    cells.sort(key=lambda c: (len(c[0]), tuple(sorted(c[0]))))

    out = []

    def name_of(taken):
        if not taken:
            return "empty"
        keys = sorted("".join(str(v) for v in sorted(s)) for s, _ in taken)
        return "+".join(keys)

    def extend(start, taken):
        out.append((name_of(taken), [r for _, r in taken]))
        for idx in range(start, len(cells)):
            s, r = cells[idx]
            if any(s <= t or t <= s for t, _ in taken):
                continue
            extend(idx + 1, taken + [(s, r)])

    extend(0, [])
    out.sort(key=lambda item: item[0])
    return X, out


_POINT = ((1, 0, 0), ((), (), ()))


def _dstar_instance_checks(name, A, gamma, m_top, cache):
    """Agreement, point-star homology, and mono comparison for one complex."""
    ds = d_star(A, gamma, h_bound=m_top)
    stars = 0
    for m in range(m_top + 1):
        try:
            d_star_agreement(ds, m)
        except ValidationError as e:
            return _check_of(
                name, False, witness=f"row {m}: fast/generic disagree: {e}"
            )
        for k, comp in enumerate(ds.components(m)):
            key = (comp.sset.counts, comp.sset.faces)
            prof = cache.get(key)
            if prof is None:
                prof = cache[key] = homology(comp.sset, 2)
            if (prof.ranks, prof.torsion) != _POINT:
                return _check_of(
                    name,
                    False,
                    witness=f"row {m} star {k}: homology {prof}, not a point",
                )
            stars += 1
        if gamma is not None:
            chk = check_map(ds.comparison.row(m))
            if not chk.mono:
                return _check_of(
                    name,
                    False,
                    witness=f"row {m}: comparison not mono: {chk.witness}",
                )
    ambient = "mono comparison" if gamma is not None else "no ambient embedding"
    return _check_of(
        name, True, f"rows 0..{m_top}: fast=generic, {stars} point stars, {ambient}"
    )


def suite_dstar_lemma(depth=None, seeds=()) -> list[Check]:
    checks = []
    cache: dict = {}
    for n in range(4):
        X, subsets = _face_closed_subsets(n)
        for sub_name, refs in subsets:
            sub = Subcomplex(X, refs)
            checks.append(
                _dstar_instance_checks(
                    f"dstar[D{n}:{sub_name}]", sub.sset, sub.inclusion, 4, cache
                )
            )
    for name, A in _seed_pairs(seeds, FinSSet):
        gamma = None
        if A.counts:
            for f in enumerate_maps(A, simplex(A.dim)):
                if check_map(f).mono:
                    gamma = f
                    break
        checks.append(
            _dstar_instance_checks(f"dstar[seed:{name}]", A, gamma, 4, cache)
        )
    return checks


# -- Reedy gap vs nerve gap ------------------------------------------------------------


def corpus_sgpd_maps(depth: int) -> list[tuple[str, SGpdMap]]:
    """Discrete, constant, resolution, and fiber-product instances."""
    by_name = dict(corpus_functors())
    T = terminal_gpd()
    J = interval_gpd()
    out: list[tuple[str, SGpdMap]] = []

    def discrete(name, f):
        X = discrete_sgpd(f.dom, depth)
        Y = discrete_sgpd(f.cod, depth)
        out.append((f"discrete[{name}]", discrete_sgpd_map(f, X, Y)))

    discrete("horn21", simplex_inclusion(horn(2, 1), 2))
    discrete("boundary2", simplex_inclusion(boundary(2), 2))
    discrete("vertex0", vertex_inclusion(1, 0))
    discrete("idD1", identity_map(simplex(1)))
    discrete("collapseD2", constant_map(simplex(2), simplex(0), 0))

    def constant(fname):
        F = by_name[fname]
        X = constant_sgpd(F.dom, depth)
        Y = constant_sgpd(F.cod, depth)
        out.append((f"constant[{fname}]", constant_sgpd_map(F, X, Y)))

    for fname in (
        "id[J]",
        "J->terminal",
        "fold[BZ2+BZ2->BZ2]",
        "pt0->J",
        "pt0->BZ2",
        "swap[BZ2+BZ2]",
        "id[BZ2]",
        "BZ2->terminal",
    ):
        constant(fname)

    def resolution(name, F):
        X = chaotic_resolution(F.dom, depth)
        Y = chaotic_resolution(F.cod, depth)
        out.append((f"resolution[{name}]", resolution_map(F, X, Y)))

    resolution("id[terminal]", by_name["id[terminal]"])
    resolution("BZ2->terminal", by_name["BZ2->terminal"])
    resolution("id[BZ2]", by_name["id[BZ2]"])
    resolution("disc2->terminal", by_name["disc2->terminal"])
    resolution("pt0->J", GpdFunctor(T, J, [0], [J.ident[0]]))

    FJ = by_name["J->terminal"]
    FZ = by_name["BZ2->terminal"]
    qc = constant_sgpd_map(
        FJ, constant_sgpd(FJ.dom, depth), constant_sgpd(FJ.cod, depth)
    )
    pc = constant_sgpd_map(
        FZ, constant_sgpd(FZ.dom, depth), constant_sgpd(FZ.cod, depth)
    )
    out.append(("fp-left[constJ*constBZ2]",
                sgpd_fiber_product(qc, pc).left))
    FD = by_name["disc2->terminal"]
    RT = chaotic_resolution(FZ.cod, depth)
    qr = resolution_map(FZ, chaotic_resolution(FZ.dom, depth), RT)
    pr = resolution_map(FD, chaotic_resolution(FD.dom, depth), RT)
    out.append(("fp-left[resBZ2*resD2]",
                sgpd_fiber_product(qr, pr).left))
    return out


def suite_reedy_eq(depth=None, seeds=()) -> list[Check]:
    D = DEFAULT_DEPTH if depth is None else depth
    checks = []
    corpus = corpus_sgpd_maps(D) + _seed_pairs(seeds, SGpdMap)
    for name, p in corpus:
        verdicts = []
        witness = None
        for n in range(D + 1):
            gap = reedy_gap(p, n)
            gpd_verdict = classify_gpd_map(gap).isofibration
            nm = nerve_functor(gap, nerve(gap.dom, D), nerve(gap.cod, D))
            nerve_verdict = classify_sset_fibration(nm, "kan", D).holds
            verdicts.append((n, gpd_verdict, nerve_verdict))
            if gpd_verdict != nerve_verdict and witness is None:
                witness = (
                    f"level {n}: groupoid gap isofibration is "
                    f"{gpd_verdict} but nerve gap Kan is {nerve_verdict}"
                )
        detail = ", ".join(
            f"n={n}:{'F' if a else 'f'}" for n, a, _ in verdicts
        )
        checks.append(
            _check_of(f"reedy-eq[{name}]", witness is None, detail, witness)
        )
    return checks


# -- nerve bridge ----------------------------------------------------------------------


def suite_nerve_bridge(depth=None, seeds=()) -> list[Check]:
    D = DEFAULT_DEPTH if depth is None else depth
    checks = []
    corpus = corpus_functors() + _seed_pairs(seeds, GpdFunctor)
    for name, F in corpus:
        iso_verdict = classify_gpd_map(F).isofibration
        rep = classify_sset_fibration(
            nerve_functor(F, nerve(F.dom, D), nerve(F.cod, D)), "kan", D
        )
        agree = iso_verdict == rep.holds
        detail = f"isofibration {iso_verdict}, nerve kan {rep.holds}"
        witness = None if agree else f"verdicts disagree: {detail}"
        checks.append(_check_of(f"nerve-bridge[{name}]", agree, detail, witness))
        if name == "pt0->J":
            neg = (not rep.holds) and rep.witness_family.startswith("horn(1,")
            checks.append(
                _check_of(
                    "nerve-bridge[pt0->J:negative-witness]",
                    neg,
                    f"fails at {rep.witness_family}",
                    None if neg else "expected a dimension-1 horn failure",
                )
            )
    return checks


# -- main theorem ----------------------------------------------------------------------


def _kan_holds(p: SSetMap, D: int):
    rep = classify_sset_fibration(p, "kan", D)
    return rep.holds, rep


def suite_main_theorem(depth=None, seeds=()) -> list[Check]:
    D = DEFAULT_DEPTH if depth is None else depth
    checks = []
    corpus: list[tuple[str, SGpdMap]] = []
    for name, F in _resolution_isofibrations():
        X = chaotic_resolution(F.dom, D)
        Y = chaotic_resolution(F.cod, D)
        corpus.append((name, resolution_map(F, X, Y)))
    corpus += _seed_pairs(seeds, SGpdMap)

    for name, p in corpus:
        witness = None
        rep = check_reedy(p, D)
        if not rep.fibration:
            bad = [lvl.n for lvl in rep.levels if not lvl.fibration]
            witness = f"Reedy gap fails at levels {bad}"
        if witness is None:
            vx = nerve_bisset(p.dom, h_bound=D, v_bound=D, validate=False)
            vy = nerve_bisset(p.cod, h_bound=D, v_bound=D, validate=False)
            bm = nerve_bisset_map(p, vx, vy, validate=False)
            for m in range(D + 1):
                holds, krep = _kan_holds(bm.row(m), D)
                if not holds:
                    witness = (
                        f"row {m} fails kan at {krep.witness_family}"
                    )
                    break
        if witness is None:
            holds, krep = _kan_holds(sing_map(p, D), D)
            if not holds:
                witness = f"sing fails kan at {krep.witness_family}"
        checks.append(
            _check_of(
                f"main-theorem[{name}]",
                witness is None,
                f"reedy<= {D}, rows kan, sing kan",
                witness,
            )
        )

    T = terminal_gpd()
    J = interval_gpd()
    pneg = constant_sgpd_map(
        constant_functor(J, T, 0), constant_sgpd(J, D), constant_sgpd(T, D)
    )
    nrep = check_reedy(pneg, 1)
    lvl1 = nrep.level(1)
    checks.append(
        _check_of(
            "main-theorem[constJ->terminal:reedy-negative]",
            not lvl1.fibration,
            "gap at level 1 is not an isofibration",
            None if not lvl1.fibration else "negative control passed Reedy",
        )
    )
    # sing of the map itself is a fibration (both sings are nerves of
    # groupoids), so the failing square lives at sing of the level-1 gap
    gap1 = reedy_gap(pneg, 1)
    pgap = constant_sgpd_map(
        gap1, constant_sgpd(gap1.dom, D), constant_sgpd(gap1.cod, D)
    )
    srep = classify_sset_fibration(sing_map(pgap, D), "kan", 1)
    neg_ok = (
        not srep.holds
        and srep.witness_family == "horn(1,0)"
        and srep.witness is not None
    )
    checks.append(
        _check_of(
            "main-theorem[constJ->terminal:sing-negative]",
            neg_ok,
            f"level-1 gap sing square fails at {srep.witness_family}",
            None if neg_ok else "expected a horn(1,0) failure with witness",
        )
    )
    return checks


# -- sing preserves fiber products -------------------------------------------------------


def suite_sing_limits(depth=None, seeds=()) -> list[Check]:
    D = DEFAULT_DEPTH if depth is None else depth
    T = terminal_gpd()
    CT = constant_sgpd(T, D)
    gs = corpus_groupoids()
    instances: list[tuple[str, SGpdMap, SGpdMap]] = []
    for (na, Ga), (nb, Gb) in combinations_with_replacement(gs, 2):
        q = constant_sgpd_map(
            constant_functor(Ga, T, 0), constant_sgpd(Ga, D), CT
        )
        p = constant_sgpd_map(
            constant_functor(Gb, T, 0), constant_sgpd(Gb, D), CT
        )
        instances.append((f"const[{na}]*const[{nb}]", q, p))
    Z2 = cyclic_gpd(2)
    D2 = discrete_gpd(2)
    R1 = chaotic_resolution(T, D)
    RZ = chaotic_resolution(Z2, D)
    RD = chaotic_resolution(D2, D)
    qr = resolution_map(constant_functor(Z2, T, 0), RZ, R1)
    qd = resolution_map(constant_functor(D2, T, 0), RD, R1)
    instances.append(("res[disc2]*res[disc2]", qd, qd))
    instances.append(("res[BZ2]*res[disc2]", qr, qd))

    seed_maps = _seed_pairs(seeds, SGpdMap)
    for k in range(0, len(seed_maps) - 1, 2):
        (n1, q), (n2, p) = seed_maps[k], seed_maps[k + 1]
        if q.cod == p.cod:
            instances.append((f"seed[{n1}]*seed[{n2}]", q, p))

    checks = []
    for name, q, p in instances:
        span = sgpd_fiber_product(q, p, "strict")
        target = pullback(sing_map(q, D), sing_map(p, D))
        comp = pairing(
            [sing_map(span.left, D), sing_map(span.right, D)], target
        )
        chk = check_map(comp)
        checks.append(
            _check_of(
                f"sing-limits[{name}]",
                chk.iso,
                f"diagonal counts {comp.dom.counts}",
                None if chk.iso else f"comparison not iso: {chk.witness}",
            )
        )
    return checks


# -- levelwise homology profiles ---------------------------------------------------------


_BZ2_SING_PROFILE = ((1, 0, 0, 0), ((), (2,), (), (2,)))


def suite_levelwise_we(depth=None, seeds=()) -> list[Check]:
    D = DEFAULT_DEPTH if depth is None else depth
    checks = []
    CJ = constant_sgpd(interval_gpd(), D + 1)
    prof = homology(sing(CJ, D + 1), D)
    point = prof.ranks == (1,) + (0,) * D and all(
        not t for t in prof.torsion
    )
    checks.append(
        _check_of(
            "levelwise-we[sing constJ contractible]",
            point,
            str(prof),
            None if point else f"expected point ranks, got {prof.ranks}",
        )
    )
    CZ = constant_sgpd(cyclic_gpd(2), 4)
    prof2 = homology(sing(CZ, 4), 3)
    match = (prof2.ranks, prof2.torsion) == _BZ2_SING_PROFILE
    checks.append(
        _check_of(
            "levelwise-we[sing constBZ2 vs bar resolution]",
            match,
            str(prof2),
            None
            if match
            else f"got {(prof2.ranks, prof2.torsion)}, "
            f"frozen oracle profile {_BZ2_SING_PROFILE}",
        )
    )
    return checks


# -- weak lifting space ------------------------------------------------------------------


def suite_weak_lift_space(depth=None, seeds=()) -> list[Check]:
    D = DEFAULT_DEPTH if depth is None else depth
    inclusions = [
        ("horn21", simplex_inclusion(horn(2, 1), 2)),
        ("vertex0", vertex_inclusion(1, 0)),
    ]
    T = terminal_gpd()
    Z2 = cyclic_gpd(2)
    D2 = discrete_gpd(2)
    R1 = chaotic_resolution(T, D)
    RZ = chaotic_resolution(Z2, D)
    RD = chaotic_resolution(D2, D)
    ps = [
        ("id[res terminal]", identity_sgpd_map(R1)),
        ("res[BZ2->terminal]",
         resolution_map(constant_functor(Z2, T, 0), RZ, R1)),
        ("id[res BZ2]", identity_sgpd_map(RZ)),
        ("res[disc2->terminal]",
         resolution_map(constant_functor(D2, T, 0), RD, R1)),
        ("id[res disc2]", identity_sgpd_map(RD)),
    ] + _seed_pairs(seeds, SGpdMap)
    checks = []
    for iname, i in inclusions:
        for pname, p in ps:
            ws = weak_lift_space(i, p)
            ok = ws.isofibration and ws.obj_surjective
            detail = (
                f"space {ws.gpd.n_obj} objects / {ws.gpd.n_mor} morphisms; "
                f"isofibration {ws.isofibration}, "
                f"object-surjective {ws.obj_surjective}"
            )
            checks.append(
                _check_of(
                    f"weak-lift-space[{iname}:{pname}]",
                    ok,
                    detail,
                    None if ok else detail,
                )
            )
    return checks


# -- jardine hypotheses ------------------------------------------------------------------


def suite_jardine(depth=None, seeds=()) -> list[Check]:
    D = DEFAULT_DEPTH if depth is None else depth
    T = terminal_gpd()
    Z2 = cyclic_gpd(2)
    D2 = discrete_gpd(2)
    R1 = chaotic_resolution(T, D)
    RZ = chaotic_resolution(Z2, D)
    RD = chaotic_resolution(D2, D)
    ps = [
        ("id[res terminal]", identity_sgpd_map(R1)),
        ("res[BZ2->terminal]",
         resolution_map(constant_functor(Z2, T, 0), RZ, R1)),
        ("res[disc2->terminal]",
         resolution_map(constant_functor(D2, T, 0), RD, R1)),
    ] + _seed_pairs(seeds, SGpdMap)
    gammas = [
        ("horn21", simplex_inclusion(horn(2, 1), 2)),
        ("vertex0", vertex_inclusion(1, 0)),
    ]
    checks = []
    for pname, p in ps:
        vx = nerve_bisset(p.dom, h_bound=D, v_bound=D, validate=False)
        vy = nerve_bisset(p.cod, h_bound=D, v_bound=D, validate=False)
        f = nerve_bisset_map(p, vx, vy, validate=False)
        for gname, gamma in gammas:
            rep = jardine_criterion(f, gamma, D)
            checks.append(
                _check_of(
                    f"jardine[{pname}:{gname}]",
                    rep.holds,
                    f"mode {rep.mode}, {rep.squares} diagonal squares",
                    rep.witness if not rep.holds else None,
                )
            )
    return checks


# -- normal forms and solver foundations ---------------------------------------------


def _identity_sweep(name: str, X: FinSSet, top: int) -> list[Check]:
    """Exhaustive word-level simplicial identities through dimension top."""
    dd = ds = ss = nf = 0
    witness = {"dd": None, "ds": None, "ss": None, "normal-form": None}
    for n in range(top + 1):
        for w in X.words(n):
            sigma = surjection_of_word(w)
            if degens_of_surjection(sigma) != w.degens:
                witness["normal-form"] = witness["normal-form"] or f"{w}"
            nf += 1
            if n >= 1:
                for j in range(n + 1):
                    sw = X.degen_of(w, j)
                    for i in range(n + 2):
                        got = X.face_of(sw, i)
                        if i == j or i == j + 1:
                            want = w
                        elif i < j:
                            want = X.degen_of(X.face_of(w, i), j - 1)
                        else:
                            want = X.degen_of(X.face_of(w, i - 1), j)
                        if got != want:
                            witness["ds"] = witness["ds"] or (
                                f"d_{i} s_{j} on {w}"
                            )
                        ds += 1
            if n >= 2:
                for j in range(n + 1):
                    for i in range(j):
                        a = X.face_of(X.face_of(w, j), i)
                        b = X.face_of(X.face_of(w, i), j - 1)
                        if a != b:
                            witness["dd"] = witness["dd"] or (
                                f"d_{i} d_{j} on {w}"
                            )
                        dd += 1
            for j in range(n + 1):
                for i in range(j + 1):
                    a = X.degen_of(X.degen_of(w, j), i)
                    b = X.degen_of(X.degen_of(w, i), j + 1)
                    if a != b:
                        witness["ss"] = witness["ss"] or f"s_{i} s_{j} on {w}"
                    ss += 1
    cases = {"dd": dd, "ds": ds, "ss": ss, "normal-form": nf}
    return [
        _check_of(
            f"normal-forms[{name}:{fam}]",
            witness[fam] is None,
            f"{cases[fam]} cases",
            witness[fam],
        )
        for fam in ("normal-form", "dd", "ds", "ss")
    ]


def _universal_property_checks() -> list[Check]:
    checks = []

    C = horn(2, 1)
    A = simplex(1)
    B = simplex(1)
    Q = product(A, B)
    into_q = enumerate_maps(C, Q.sset)
    lhs = {
        (
            compose_maps(Q.projections[0], h).images,
            compose_maps(Q.projections[1], h).images,
        )
        for h in into_q
    }
    rhs = {
        (u.images, v.images)
        for u in enumerate_maps(C, A)
        for v in enumerate_maps(C, B)
    }
    ok = lhs == rhs and len(into_q) == len(lhs)
    checks.append(
        _check_of(
            "foundations[product-universal]",
            ok,
            f"{len(into_q)} maps = {len(rhs)} pairs through projections",
            None if ok else "projection pairing is not a bijection",
        )
    )

    f = simplex_inclusion(horn(2, 0), 2)
    g = simplex_inclusion(horn(2, 2), 2)
    PB = pullback(f, g)
    T = simplex(1)
    into_pb = enumerate_maps(T, PB.sset)
    lhs2 = {
        (
            compose_maps(PB.projections[0], h).images,
            compose_maps(PB.projections[1], h).images,
        )
        for h in into_pb
    }
    rhs2 = {
        (u.images, v.images)
        for u in enumerate_maps(T, f.dom)
        for v in enumerate_maps(T, g.dom)
        if compose_maps(f, u) == compose_maps(g, v)
    }
    ok2 = lhs2 == rhs2 and len(into_pb) == len(lhs2)
    checks.append(
        _check_of(
            "foundations[pullback-universal]",
            ok2,
            f"{len(into_pb)} maps = {len(rhs2)} commuting pairs",
            None if ok2 else "pullback pairing is not a bijection",
        )
    )
    return checks


def _solver_completeness_checks(cap: int = 200) -> list[Check]:
    """Canonical and order-reversed searches agree on solvability."""
    U, _ = disjoint_union_gpd([cyclic_gpd(2), cyclic_gpd(2)])
    Z2 = cyclic_gpd(2)
    J = interval_gpd()
    T = terminal_gpd()
    ps = [
        ("nerve fold", nerve_functor(
            GpdFunctor(U, Z2, [0, 0], [0, 1, 0, 1]),
            nerve(U, 2), nerve(Z2, 2))),
        ("nerve J->terminal", nerve_functor(
            constant_functor(J, T, 0), nerve(J, 2), nerve(T, 2))),
        ("nerve pt0->J", nerve_functor(
            GpdFunctor(T, J, [0], [J.ident[0]]), nerve(T, 2), nerve(J, 2))),
    ]
    incls = [
        ("horn(1,0)", simplex_inclusion(horn(1, 0), 1)),
        ("horn(1,1)", simplex_inclusion(horn(1, 1), 1)),
        ("horn(2,0)", simplex_inclusion(horn(2, 0), 2)),
        ("horn(2,1)", simplex_inclusion(horn(2, 1), 2)),
        ("horn(2,2)", simplex_inclusion(horn(2, 2), 2)),
    ]
    squares = 0
    solved = 0
    witness = None
    for pname, p in ps:
        for iname, i in incls:
            if squares >= cap:
                break
            for f in enumerate_maps(i.dom, p.dom):
                if squares >= cap:
                    break
                pf = compose_maps(p, f)
                for g in enumerate_maps(i.cod, p.cod):
                    if compose_maps(g, i) != pf:
                        continue
                    if squares >= cap:
                        break
                    prob = LiftingProblem(i, p, f, g)
                    s1 = solve_strict(prob)
                    s2 = solve_strict(prob, order="reversed")
                    squares += 1
                    if s1.found != s2.found:
                        witness = witness or (
                            f"{pname} / {iname}: canonical found={s1.found} "
                            f"but reversed found={s2.found}"
                        )
                        continue
                    if s1.found:
                        solved += 1
                        for h in (s1.h, s2.h):
                            if (
                                compose_maps(p, h) != g
                                or compose_maps(h, i) != f
                            ):
                                witness = witness or (
                                    f"{pname} / {iname}: invalid lift returned"
                                )
    return [
        _check_of(
            "foundations[solver-completeness]",
            witness is None,
            f"{squares} squares, {solved} solvable, both orders agree",
            witness,
        )
    ]


def suite_normal_forms(depth=None, seeds=()) -> list[Check]:
    corpus = [
        ("simplex3", simplex(3)),
        ("boundary3", boundary(3)),
        ("horn31", horn(3, 1)),
        ("nerveBZ2", nerve(cyclic_gpd(2), 4).sset),
        ("nerveJ", nerve(interval_gpd(), 4).sset),
    ]
    checks = []
    for name, X in corpus:
        checks.extend(_identity_sweep(name, X, 4))
    for name, X in _seed_pairs(seeds, FinSSet):
        top = min(4, X.data_bound if X.truncation is not None else 4)
        checks.extend(_identity_sweep(f"seed:{name}", X, top))
    checks.extend(_universal_property_checks())
    checks.extend(_solver_completeness_checks())
    return checks


# -- registry -------------------------------------------------------------------------


SUITES = {
    "dstar-lemma": suite_dstar_lemma,
    "reedy-eq-injective": suite_reedy_eq,
    "nerve-bridge": suite_nerve_bridge,
    "jardine": suite_jardine,
    "main-theorem": suite_main_theorem,
    "sing-limits": suite_sing_limits,
    "levelwise-we": suite_levelwise_we,
    "weak-lift-space": suite_weak_lift_space,
    "normal-forms": suite_normal_forms,
}


def suite_ids() -> list[str]:
    return list(SUITES)


def run_suite(suite_id: str, depth=None, seeds=()) -> list[Check]:
    """Run one suite; checks come back in a deterministic order."""
    if suite_id not in SUITES:
        raise ValueError(
            f"unknown suite {suite_id!r}; choose from {', '.join(SUITES)}"
        )
    return SUITES[suite_id](depth=depth, seeds=seeds)
