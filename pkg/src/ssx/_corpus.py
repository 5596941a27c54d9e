"""The shipped example corpus, built from the library constructors.

The builders here are the source of truth; the files under ``ssx/data``
are their serializations, regenerated with ``python -m ssx._corpus``.
A parity test keeps the two in sync.
"""

from __future__ import annotations

from .groupoid import (
    GpdFunctor,
    constant_functor,
    cyclic_gpd,
    disjoint_union_gpd,
    interval_gpd,
    nerve,
    nerve_functor,
    terminal_gpd,
)
from .lifting import LiftingProblem
from .sgpd import (
    chaotic_resolution,
    constant_sgpd,
    constant_sgpd_map,
    resolution_map,
)
from .sset import (
    SSetMap,
    boundary,
    constant_map,
    enumerate_maps,
    horn,
    simplex,
    simplex_inclusion,
)

__all__ = ["build_corpus", "data_dir"]


def build_corpus() -> list[tuple[str, object]]:
    """Name/object pairs for every shipped data file, in file order."""
    T = terminal_gpd()
    Z2 = cyclic_gpd(2)
    J = interval_gpd()
    U, _ = disjoint_union_gpd([cyclic_gpd(2), cyclic_gpd(2)])
    fold = GpdFunctor(U, Z2, [0, 0], [0, 1, 0, 1])
    ptJ = GpdFunctor(T, J, [0], [J.ident[0]])

    NT = nerve(T, 3)
    NJ = nerve(J, 3)
    NU = nerve(U, 3)
    NZ = nerve(Z2, 3)
    nerve_ptJ = nerve_functor(ptJ, NT, NJ)
    nerve_fold = nerve_functor(fold, NU, NZ)

    # the edge of nerve(J) out of vertex 0, as a square with no strict or
    # weak lift against the point inclusion
    v0, v1 = NJ.sset.words(0)
    edges = [
        m
        for m in enumerate_maps(simplex(1), NJ.sset)
        if list(m.images[0]) == [v0, v1] and not m.images[1][0].degens
    ]
    if len(edges) != 1:
        raise AssertionError("expected one nondegenerate edge 0 -> 1")
    neg_problem = LiftingProblem(
        simplex_inclusion(horn(1, 0), 1),
        nerve_ptJ,
        constant_map(horn(1, 0), NT.sset, 0),
        edges[0],
    )
    pos_problem = LiftingProblem(
        simplex_inclusion(horn(2, 1), 2),
        nerve_functor(constant_functor(Z2, T, 0), NZ, NT),
        SSetMap(
            horn(2, 1),
            NZ.sset,
            [NZ.sset.words(0) * 3, NZ.sset.words(1)[:1] * 2],
        ),
        constant_map(simplex(2), NT.sset, 0),
    )

    RZ = chaotic_resolution(Z2, 3)
    RT = chaotic_resolution(T, 3)

    return [
        ("sset_simplex2", simplex(2)),
        ("sset_horn21", horn(2, 1)),
        ("sset_boundary2", boundary(2)),
        ("sset_nerve_J_d3", NJ.sset),
        ("sset_map_nerve_pt0_to_J_d3", nerve_ptJ),
        ("sset_map_nerve_fold_d3", nerve_fold),
        ("gpd_terminal", T),
        ("gpd_BZ2", Z2),
        ("gpd_J", J),
        ("gpd_BZ2_plus_BZ2", U),
        ("functor_fold", fold),
        ("functor_pt0_to_J", ptJ),
        ("sgpd_const_BZ2_d4", constant_sgpd(cyclic_gpd(2), 4)),
        ("sgpd_const_J_d3", constant_sgpd(J, 3)),
        (
            "sgpd_map_const_J_to_terminal_d3",
            constant_sgpd_map(
                constant_functor(J, T, 0),
                constant_sgpd(J, 3),
                constant_sgpd(T, 3),
            ),
        ),
        (
            "sgpd_map_res_BZ2_to_terminal_d3",
            resolution_map(constant_functor(Z2, T, 0), RZ, RT),
        ),
        ("problem_horn10_nerve_J", neg_problem),
        ("problem_horn21_nerve_BZ2", pos_problem),
    ]


def data_dir() -> str:
    import os

    return os.path.join(os.path.dirname(__file__), "data")


def _main() -> None:
    import os

    from .io import serialize

    out = data_dir()
    os.makedirs(out, exist_ok=True)
    for name, obj in build_corpus():
        path = os.path.join(out, f"{name}.ssx")
        serialize(obj, path)
        print(path)


if __name__ == "__main__":
    _main()
