"""Lifting problems and the fibration classifiers built on their solvers.

A lifting problem is a commuting square: a monomorphism i on the left, a
map p on the right, f on top, g on the bottom.  A strict solution is a
diagonal filling both triangles.  A weak solution fills the bottom
triangle on the nose and replaces the top one by a homotopy that is
constant in the base direction.  Both solvers run a complete backtracking
search over the free simplices of the diagonal's domain, so a reported
absence is a certified fact about the square, not a timeout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bisset import (
    BiReedyReport,
    BiSSetMap,
    d_star,
    diag_built,
    diag_map,
    exterior,
    exterior_map,
    reedy_check_bisset,
)
from .groupoid import (
    FinGroupoid,
    GpdClassification,
    GpdFunctor,
    classify_gpd_map,
    compose_functors,
    strict_fiber_product,
)
from .sgpd import (
    SGpdMap,
    _pair_into_fiber,
    check_reedy,
    hom_groupoid,
    hom_postcompose,
    hom_restrict,
)
from .sset import (
    FinSSet,
    SSetMap,
    TruncationError,
    TupleSSet,
    ValidationError,
    _check,
    boundary,
    check_map,
    compose_maps,
    constant_map,
    enumerate_maps,
    horn,
    identity_map,
    pairing,
    product,
    simplex,
    simplex_inclusion,
    vertex_inclusion,
)

__all__ = [
    "LiftingProblem",
    "LiftSearch",
    "ObstructionTrace",
    "WeakSolution",
    "GpdLiftingProblem",
    "FibrationReport",
    "JardineReport",
    "WeakLiftSpace",
    "cylinder",
    "solve_strict",
    "solve_weak",
    "validate_weak_solution",
    "classify_sset_fibration",
    "strictify_lift",
    "weak_lift_space",
    "jardine_criterion",
]


# -- problems and solutions -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LiftingProblem:
    """A commuting square i: A -> B, p: X -> Y, f: A -> X, g: B -> Y."""

    i: SSetMap
    p: SSetMap
    f: SSetMap
    g: SSetMap

    def __post_init__(self):
        _check(
            self.f.dom == self.i.dom and self.g.dom == self.i.cod,
            "top and bottom must start at the ends of i",
        )
        _check(
            self.f.cod == self.p.dom and self.g.cod == self.p.cod,
            "top and bottom must land at the ends of p",
        )
        chk = check_map(self.i)
        if not chk.mono:
            raise ValidationError(
                f"the left leg must be a monomorphism: {chk.witness}"
            )
        if compose_maps(self.p, self.f) != compose_maps(self.g, self.i):
            raise ValidationError("the square does not commute")

    @property
    def A(self) -> FinSSet:
        return self.i.dom

    @property
    def B(self) -> FinSSet:
        return self.i.cod

    @property
    def X(self) -> FinSSet:
        return self.p.dom

    @property
    def Y(self) -> FinSSet:
        return self.p.cod


@dataclass(frozen=True)
class ObstructionTrace:
    """The deepest dead end of a failed search.

    ``cell`` is the free simplex of B that admitted no image, ``faces`` the
    word ids its faces were already forced to (None in dimension 0), and
    ``assigned``/``total`` count the free cells filled at that point.
    """

    cell: tuple[int, int]
    faces: tuple[int, ...] | None
    assigned: int
    total: int


@dataclass(frozen=True, eq=False)
class LiftSearch:
    """Outcome of a complete strict search: a lift or an obstruction."""

    h: SSetMap | None
    obstruction: ObstructionTrace | None

    @property
    def found(self) -> bool:
        return self.h is not None

    def __bool__(self) -> bool:
        return self.found


@dataclass(frozen=True, eq=False)
class WeakSolution:
    """A pair (h, H): bottom triangle strict, top triangle up to homotopy.

    H runs from the cylinder on A into X; its end 0 is f, its end 1 is
    h composed with i, and its image in the base is constant along the
    cylinder direction.
    """

    h: SSetMap
    H: SSetMap


# -- the backtracking core --------------------------------------------------------


def _search_extensions(B, X, pre, constraints, order, emit):
    """Complete search over simplicial maps B -> X extending ``pre``.

    ``pre`` maps nondegenerate cells (n, idx) of B to X word ids.  Every
    constraint (via, target) with via: X -> Z and target: B -> Z keeps only
    candidates whose via-image equals the target word at that cell.  Each
    completed map is passed to ``emit``; a True return stops the search.
    Returns the deepest dead end for obstruction reporting, or None if no
    branch ever ran dry.
    """
    if B.truncation is not None:
        raise TruncationError(
            "maps out of a truncated object are underdetermined"
        )
    top = B.dim
    if B.counts:
        X.require_data(top)
    cells = []
    for n in range(top + 1):
        layer = [i for i in range(B.counts[n]) if (n, i) not in pre]
        if order == "reversed":
            layer.reverse()
        cells.extend((n, i) for i in layer)
    assigned: list[list[int | None]] = [
        [None] * B.counts[n] for n in range(top + 1)
    ]
    for (n, i), wid in pre.items():
        assigned[n][i] = wid
    xwords = [X.words(n) for n in range(top + 1)]
    facekeys = [None] + [X.facekey(n) for n in range(1, top + 1)]
    ctabs: list = [None] * (top + 1)

    def constraint_tables(n):
        if ctabs[n] is None:
            ctabs[n] = [
                (
                    via.table(n),
                    [via.cod.windex(n)[w] for w in target.images[n]],
                )
                for via, target in constraints
            ]
        return ctabs[n]

    def image_of_word(w):
        wid = assigned[w.base.dim][w.base.index]
        d = w.base.dim
        for j in reversed(w.degens):
            wid = X.dtab(d, j)[wid]
            d += 1
        return wid

    best = {"k": -1, "cell": None, "faces": None}
    stop = False
    total = len(cells)

    def rec(k):
        nonlocal stop
        if k == total:
            images = [
                [xwords[n][w] for w in assigned[n]]
                for n in range(top + 1)
            ]
            if emit(SSetMap(B, X, images, validate=False)):
                stop = True
            return
        n, idx = cells[k]
        if n == 0:
            required = None
            cand = range(X.n_words(0))
        else:
            faces = B.faces[n][idx]
            required = tuple(image_of_word(faces[i]) for i in range(n + 1))
            cand = facekeys[n].get(required, ())
        tabs = constraint_tables(n)
        it = reversed(list(cand)) if order == "reversed" else cand
        hit = False
        row = assigned[n]
        if len(tabs) == 1:
            tab0, targ0 = tabs[0]
            want = targ0[idx]
            for wid in it:
                if tab0[wid] != want:
                    continue
                hit = True
                row[idx] = wid
                rec(k + 1)
                row[idx] = None
                if stop:
                    return
        else:
            for wid in it:
                if any(tab[wid] != targ[idx] for tab, targ in tabs):
                    continue
                hit = True
                row[idx] = wid
                rec(k + 1)
                row[idx] = None
                if stop:
                    return
        if not hit and k > best["k"]:
            best.update(k=k, cell=(n, idx), faces=required)

    rec(0)
    if best["cell"] is None:
        return None
    return ObstructionTrace(
        cell=best["cell"],
        faces=best["faces"],
        assigned=best["k"],
        total=len(cells),
    )


def _forced_cells(i: SSetMap, f: SSetMap) -> dict[tuple[int, int], int]:
    """Cell assignments forced on the codomain of a monomorphism i by f."""
    pre: dict[tuple[int, int], int] = {}
    X = f.cod
    for n in range(len(i.dom.counts)):
        wi = X.windex(n)
        fi = f.images[n]
        for a, w in enumerate(i.images[n]):
            pre[(w.base.dim, w.base.index)] = wi[fi[a]]
    return pre


# -- solvers -----------------------------------------------------------------------


def solve_strict(prob: LiftingProblem, order: str = "canonical") -> LiftSearch:
    """A diagonal h with h after i = f and p after h = g, or an obstruction.

    The search assigns the free nondegenerate simplices of B in dimension
    order, pruned by the face index of X and the fiber constraint over g.
    It is complete: an empty result means no lift exists.
    ``order="reversed"`` reruns it with independently reversed choice
    orders for completeness cross-checks.
    """
    pre = _forced_cells(prob.i, prob.f)
    found: list[SSetMap] = []

    def emit(h):
        found.append(h)
        return True

    obstruction = _search_extensions(
        prob.B, prob.X, pre, [(prob.p, prob.g)], order, emit
    )
    if found:
        return LiftSearch(found[0], None)
    return LiftSearch(None, obstruction)


def cylinder(A: FinSSet) -> tuple[TupleSSet, SSetMap, SSetMap, SSetMap]:
    """The cylinder on A: (product, projection to A, end 0, end 1)."""
    Q = product(A, simplex(1))
    pr = Q.projections[0]
    e0 = pairing([identity_map(A), constant_map(A, simplex(1), 0)], Q)
    e1 = pairing([identity_map(A), constant_map(A, simplex(1), 1)], Q)
    return Q, pr, e0, e1


def validate_weak_solution(prob: LiftingProblem, sol: WeakSolution) -> None:
    """Machine-check the four conditions a weak solution must satisfy."""
    Q, pr, e0, e1 = cylinder(prob.A)
    base = compose_maps(compose_maps(prob.p, prob.f), pr)
    _check(compose_maps(prob.p, sol.h) == prob.g, "bottom triangle fails")
    _check(compose_maps(sol.H, e0) == prob.f, "homotopy end 0 is not f")
    _check(
        compose_maps(sol.H, e1) == compose_maps(sol.h, prob.i),
        "homotopy end 1 is not h after i",
    )
    _check(compose_maps(prob.p, sol.H) == base, "homotopy moves in the base")


def solve_weak(
    prob: LiftingProblem, order: str = "canonical"
) -> WeakSolution | None:
    """A weak solution (h, H), or None after a complete search.

    Candidates h range over all maps B -> X with p after h = g; for each,
    the homotopy H is searched on the cylinder of A with both ends pinned
    and the image in Y forced to be constant along the cylinder.  Whenever
    a strict solution exists the constant homotopy makes some pair
    succeed, so weak solvability subsumes strict solvability.
    """
    i, p, f, g = prob.i, prob.p, prob.f, prob.g
    A, X = prob.A, prob.X
    Q, pr, e0, e1 = cylinder(A)
    base = compose_maps(compose_maps(p, f), pr)
    end0 = _forced_cells(e0, f)
    out: list[WeakSolution] = []

    def try_h(h):
        pre = dict(end0)
        hi = compose_maps(h, i)
        for n in range(len(A.counts)):
            for a in range(A.counts[n]):
                w = e1.images[n][a]
                pre[(w.base.dim, w.base.index)] = X.wid(hi.images[n][a])
        got: list[SSetMap] = []

        def emit(H):
            got.append(H)
            return True

        _search_extensions(Q.sset, X, pre, [(p, base)], order, emit)
        if got:
            out.append(WeakSolution(h, got[0]))
            return True
        return False

    _search_extensions(prob.B, X, {}, [(p, g)], order, try_h)
    if not out:
        return None
    validate_weak_solution(prob, out[0])
    return out[0]


# -- fibration classifiers ---------------------------------------------------------


_MODES = ("kan", "trivial_kan", "weak_kan", "weak_trivial_kan")


@dataclass(frozen=True, eq=False)
class FibrationReport:
    """Outcome of a square sweep; a failure carries the exact square."""

    mode: str
    depth: int
    holds: bool
    squares: int
    witness: LiftingProblem | None = None
    witness_family: str | None = None

    def __bool__(self) -> bool:
        return self.holds


def _generating_family(mode: str, D: int) -> list[tuple[str, SSetMap]]:
    """The finite test family of a mode, in canonical order.

    Horns cover the anodyne generators; the weak modes add the vertex
    inclusions into each simplex, and the trivial variants the boundary
    inclusions.  The family is a fixed, documented choice: the weak modes
    do not claim closure under all trivial cofibrations.
    """
    fam: list[tuple[str, SSetMap]] = []
    if mode in ("kan", "weak_kan", "weak_trivial_kan"):
        for n in range(1, D + 1):
            for k in range(n + 1):
                fam.append((f"horn({n},{k})", simplex_inclusion(horn(n, k), n)))
    if mode in ("weak_kan", "weak_trivial_kan"):
        for n in range(1, D + 1):
            for v in range(n + 1):
                fam.append((f"vertex({v},{n})", vertex_inclusion(n, v)))
    if mode in ("trivial_kan", "weak_trivial_kan"):
        for n in range(D + 1):
            fam.append((f"boundary({n})", simplex_inclusion(boundary(n), n)))
    return fam


def classify_sset_fibration(
    p: SSetMap, mode: str, D: int, order: str = "canonical"
) -> FibrationReport:
    """Sweep every square of the mode's generating family up to depth D.

    kan solves horn squares strictly, trivial_kan boundary squares
    strictly; the weak modes solve their families weakly.  Squares are
    enumerated in canonical order (family, then top map, then bottom
    map), so the witness of a failing classification is reproducible.
    """
    _check(mode in _MODES, f"unknown mode {mode!r}")
    _check(D >= 0, "the check depth must be nonnegative")
    weak = mode.startswith("weak")
    squares = 0
    for name, incl in _generating_family(mode, D):
        A, B = incl.dom, incl.cod
        for f in enumerate_maps(A, p.dom, order=order):
            pf = compose_maps(p, f)
            pre_bottom = _forced_cells(incl, pf)
            gs: list[SSetMap] = []

            def emit(gmap):
                gs.append(gmap)
                return False

            _search_extensions(B, p.cod, pre_bottom, [], order, emit)
            # forced top cells do not depend on g, so hoist them out of
            # the per-square solve
            pre_top = _forced_cells(incl, f)
            for g in gs:
                squares += 1
                if weak:
                    ok = solve_weak(
                        LiftingProblem(incl, p, f, g), order=order
                    ) is not None
                else:
                    hits: list[SSetMap] = []

                    def hit(h):
                        hits.append(h)
                        return True

                    _search_extensions(
                        B, p.dom, pre_top, [(p, g)], order, hit
                    )
                    ok = bool(hits)
                if not ok:
                    return FibrationReport(
                        mode, D, False, squares,
                        LiftingProblem(incl, p, f, g), name,
                    )
    return FibrationReport(mode, D, True, squares)


# -- groupoid-valued problems -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GpdLiftingProblem:
    """A square against a map of simplicial groupoids.

    f and g are objects of the hom groupoids into X and Y, that is,
    simplicial maps into the object parts; the square commutes strictly.
    """

    i: SSetMap
    p: SGpdMap
    f: SSetMap
    g: SSetMap

    def __post_init__(self):
        chk = check_map(self.i)
        if not chk.mono:
            raise ValidationError(
                f"the left leg must be a monomorphism: {chk.witness}"
            )
        _check(
            self.f.dom == self.i.dom and self.g.dom == self.i.cod,
            "top and bottom must start at the ends of i",
        )
        _check(
            self.f.cod == self.p.dom.obj and self.g.cod == self.p.cod.obj,
            "top and bottom must land in the object parts",
        )
        if compose_maps(self.p.on_obj, self.f) != compose_maps(self.g, self.i):
            raise ValidationError("the square does not commute")


def strictify_lift(
    prob: GpdLiftingProblem, h: SSetMap, beta: SSetMap, gamma: SSetMap
) -> tuple[SSetMap, SSetMap]:
    """Replace a lax lift by a strict one 2-isomorphic to it.

    h: B -> obj(X) solves the square up to the isomorphisms beta: f => h
    after i in hom(A, X) and gamma: g => p after h in hom(B, Y), both given
    as simplicial maps into the morphism parts, with p after beta = gamma
    after i.  Returns (h2, theta) with h2 a strict solution and theta:
    h2 => h restricting to beta and projecting to gamma.

    The map p must pass the Reedy check up to the dimension of B; under
    that hypothesis the lift through the hom-groupoid isofibration exists,
    so an empty search is an internal error, not a negative answer.
    """
    i, p = prob.i, prob.p
    B = i.cod
    X, Y = p.dom, p.cod
    report = check_reedy(p, max(B.dim, 0))
    if not report.fibration:
        bad = [lv.n for lv in report.levels if not lv.fibration]
        raise ValidationError(
            f"Reedy precondition unverified: gap fails at levels {bad}"
        )
    hi = compose_maps(h, i)
    _check(h.dom == B and h.cod == X.obj, "h must be a map B -> obj(X)")
    _check(compose_maps(X.src, beta) == prob.f, "beta must start at f")
    _check(compose_maps(X.tgt, beta) == hi, "beta must end at h after i")
    _check(compose_maps(Y.src, gamma) == prob.g, "gamma must start at g")
    _check(
        compose_maps(Y.tgt, gamma) == compose_maps(p.on_obj, h),
        "gamma must end at p after h",
    )
    if compose_maps(p.on_mor, beta) != compose_maps(gamma, i):
        raise ValidationError("compatibility p after beta = gamma after i fails")
    inv_beta = compose_maps(X.invert, beta)
    inv_gamma = compose_maps(Y.invert, gamma)
    pre = _forced_cells(i, inv_beta)
    found: list[SSetMap] = []

    def emit(t):
        found.append(t)
        return True

    obstruction = _search_extensions(
        B,
        X.mor,
        pre,
        [(X.src, h), (p.on_mor, inv_gamma)],
        "canonical",
        emit,
    )
    if not found:
        raise RuntimeError(
            "internal error: the strictification lift is guaranteed under "
            f"the verified preconditions but none was found; {obstruction}"
        )
    out = found[0]
    h2 = compose_maps(X.tgt, out)
    theta = compose_maps(X.invert, out)
    _check(compose_maps(h2, i) == prob.f, "strict top triangle fails")
    _check(compose_maps(p.on_obj, h2) == prob.g, "strict bottom triangle fails")
    _check(compose_maps(theta, i) == beta, "theta does not restrict to beta")
    _check(
        compose_maps(p.on_mor, theta) == gamma,
        "theta does not project to gamma",
    )
    return h2, theta


# -- the weak-lift space -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WeakLiftSpace:
    """The groupoid of weak lifts of a square shape, with its projection.

    Objects of ``gpd`` are pairs (H, h): a homotopy on the cylinder of A
    whose base image is constant along the cylinder, and a map off B whose
    restriction is the end 1 of H.  ``psi`` sends (H, h) to (end 0 of H,
    p after h) in the groupoid of strict squares.
    """

    gpd: FinGroupoid
    psi: GpdFunctor
    square: FinGroupoid
    classification: GpdClassification
    obj_surjective: bool

    @property
    def isofibration(self) -> bool:
        return self.classification.isofibration


def weak_lift_space(i: SSetMap, p: SGpdMap) -> WeakLiftSpace:
    """Build the weak-lift groupoid of the square shape (i, p).

    The space is the fiber product of the fiberwise-homotopy groupoid on
    the cylinder of A with the hom groupoid off B, glued along end 1; the
    reported flags say whether its projection to the strict square
    groupoid is an isofibration and surjective on objects.
    """
    chk = check_map(i)
    if not chk.mono:
        raise ValidationError(f"i must be a monomorphism: {chk.witness}")
    A, B = i.dom, i.cod
    X, Y = p.dom, p.cod
    Q, pr, e0, e1 = cylinder(A)
    h_qx = hom_groupoid(Q.sset, X)
    h_qy = hom_groupoid(Q.sset, Y)
    h_ax = hom_groupoid(A, X)
    h_ay = hom_groupoid(A, Y)
    h_bx = hom_groupoid(B, X)
    h_by = hom_groupoid(B, Y)
    # homotopies into X whose Y-image factors through the projection to A
    fib = strict_fiber_product(
        hom_postcompose(p, h_qx, h_qy), hom_restrict(pr, h_ay, h_qy)
    )
    end1 = compose_functors(hom_restrict(e1, h_qx, h_ax), fib.left)
    space = strict_fiber_product(end1, hom_restrict(i, h_bx, h_ax))
    square = strict_fiber_product(
        hom_postcompose(p, h_ax, h_ay), hom_restrict(i, h_by, h_ay)
    )
    end0 = compose_functors(
        hom_restrict(e0, h_qx, h_ax), compose_functors(fib.left, space.left)
    )
    proj = compose_functors(hom_postcompose(p, h_bx, h_by), space.right)
    psi = _pair_into_fiber(square, end0, proj)
    cls = classify_gpd_map(psi)
    surj = len(set(psi.obj_map)) == square.gpd.n_obj
    return WeakLiftSpace(space.gpd, psi, square.gpd, cls, surj)


# -- the diagonal criterion ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class JardineReport:
    """Hypotheses and verified conclusion of the diagonal lifting criterion."""

    mode: str
    reedy: BiReedyReport
    rows: tuple[FibrationReport, ...]
    holds: bool
    squares: int
    witness: LiftingProblem | None
    factorization: tuple[BiSSetMap, BiSSetMap]
    diagonal: SSetMap

    def __bool__(self) -> bool:
        return self.holds


def jardine_criterion(f: BiSSetMap, gamma: SSetMap, D: int) -> JardineReport:
    """Check that gamma lifts against the diagonal of a rowwise fibration.

    Hypotheses are established first: the rowwise map must pass the
    horizontal Reedy check up to depth D and every row must classify as a
    Kan fibration (strict conclusion) or at least a weak one (weak
    conclusion); otherwise the criterion is not asserted and a validation
    error explains which hypothesis failed.  The conclusion is then
    verified square by square against the diagonal, and the two-step
    factorization of the embedding through the external products is
    returned for diagnostics.
    """
    n = max(gamma.cod.dim, 0)
    chk = check_map(gamma)
    if not chk.mono:
        raise ValidationError(f"gamma must be a monomorphism: {chk.witness}")
    _check(
        gamma.cod == simplex(n),
        "gamma must land in a standard simplex",
    )
    _check(n <= D, "the simplex dimension must not exceed the check depth")
    reedy = reedy_check_bisset(f, D)
    if not reedy.fibration:
        bad = [lv.n for lv in reedy.levels if not lv.fibration]
        raise ValidationError(
            f"hypotheses not established: Reedy gap fails at levels {bad}"
        )
    rows: list[FibrationReport] = []
    strict_rows = True
    for m in range(f.h_bound + 1):
        r = classify_sset_fibration(f.row(m), "kan", D)
        if not r.holds:
            strict_rows = False
            r = classify_sset_fibration(f.row(m), "weak_kan", D)
            if not r.holds:
                raise ValidationError(
                    f"hypotheses not established: row {m} fails "
                    f"weak_kan at {r.witness_family}"
                )
        rows.append(r)
    mode = "strict" if strict_rows else "weak"
    dd = diag_built(f.dom, D)
    dc = diag_built(f.cod, D)
    dmap = diag_map(f, dd, dc)
    A = gamma.dom
    squares = 0
    witness = None
    holds = True
    for u in enumerate_maps(A, dd.sset):
        pre = _forced_cells(gamma, compose_maps(dmap, u))
        vs: list[SSetMap] = []

        def emit(v):
            vs.append(v)
            return False

        _search_extensions(gamma.cod, dc.sset, pre, [], "canonical", emit)
        for v in vs:
            squares += 1
            prob = LiftingProblem(gamma, dmap, u, v)
            if mode == "strict":
                ok = solve_strict(prob).found
            else:
                ok = solve_weak(prob) is not None
            if not ok:
                holds, witness = False, prob
                break
        if not holds:
            break
    ds = d_star(A, gamma)
    target = exterior(simplex(n), simplex(n))
    second = exterior_map(
        gamma, identity_map(simplex(n)), ds.ambient, target, ds.h_bound
    )
    return JardineReport(
        mode,
        reedy,
        tuple(rows),
        holds,
        squares,
        witness,
        (ds.comparison, second),
        dmap,
    )
