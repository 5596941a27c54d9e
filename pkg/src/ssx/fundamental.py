"""Fundamental groupoids of simplicial sets by edge-path presentations.

Generators are the nondegenerate edges, oriented from vertex 0 to vertex 1;
every nondegenerate 2-simplex imposes the relation "long edge = second leg
after first leg" (a degenerate face contributes the empty path).  A spanning
tree per component turns the presentation into one vertex-group presentation
per component; coset enumeration with an explicit cap decides finite groups
and reports None when the cap is hit, so infinite fundamental groups are
detected honestly instead of looping.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .groupoid import FinGroupoid, groupoid_from_homs
from .sset import FinSSet


class CapExceeded(Exception):
    pass


@dataclass(frozen=True)
class PresentedGroupoid:
    """Vertices, oriented edge generators, and edge-word relators.

    A relator is a sequence of letters; letter 2*e traverses edge e
    forwards, 2*e+1 backwards.  Each relator is a loop.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    relators: tuple[tuple[int, ...], ...]


def fundamental_groupoid(A: FinSSet) -> PresentedGroupoid:
    """Presentation of the fundamental groupoid; needs data through dim 2."""
    A.require_data(2)
    n_edges = A.counts[1] if A.dim >= 1 else 0
    edges = tuple(
        (A.base_vertices(1, i)[0], A.base_vertices(1, i)[1])
        for i in range(n_edges)
    )
    relators = []
    if A.dim >= 2:
        for idx in range(A.counts[2]):
            w0, w1, w2 = A.faces[2][idx]

            def letters(w, sign):
                if w.degens:
                    return []
                e = w.base.index
                return [2 * e + (1 if sign < 0 else 0)]

            # traversal order: leg 0->1, then leg 1->2, then long edge reversed
            relators.append(
                tuple(letters(w2, +1) + letters(w0, +1) + letters(w1, -1))
            )
    return PresentedGroupoid(A.counts[0] if A.counts else 0, edges, relators)


def _spanning_forest(P: PresentedGroupoid):
    """BFS forest: per vertex its component root and tree path (letters)."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(P.n_vertices)]
    for e, (a, b) in enumerate(P.edges):
        adj[a].append((b, 2 * e))
        adj[b].append((a, 2 * e + 1))
    root = [None] * P.n_vertices
    path: list[tuple[int, ...] | None] = [None] * P.n_vertices
    tree_edges: set[int] = set()
    roots = []
    for start in range(P.n_vertices):
        if root[start] is not None:
            continue
        roots.append(start)
        root[start] = start
        path[start] = ()
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w, letter in adj[v]:
                if root[w] is None:
                    root[w] = start
                    path[w] = path[v] + (letter,)
                    tree_edges.add(letter // 2)
                    queue.append(w)
    return roots, root, path, tree_edges


def vertex_group_presentation(P: PresentedGroupoid, root_vertex: int, forest=None):
    """Generators (non-tree edges in the component) and relators over them."""
    if forest is None:
        forest = _spanning_forest(P)
    roots, root, path, tree_edges = forest
    comp_root = root[root_vertex]
    gens = [
        e
        for e, (a, b) in enumerate(P.edges)
        if e not in tree_edges and root[a] == comp_root
    ]
    gindex = {e: i for i, e in enumerate(gens)}
    relators = []
    for rel in P.relators:
        if not rel:
            continue
        a0 = P.edges[rel[0] // 2][1 if rel[0] % 2 else 0]
        if root[a0] != comp_root:
            continue
        word = []
        for letter in rel:
            e = letter // 2
            if e in tree_edges:
                continue
            word.append(2 * gindex[e] + (letter % 2))
        relators.append(tuple(word))
    return gens, relators


def todd_coxeter(n_gens: int, relators, cap: int) -> list[list[int]] | None:
    """Coset table of the trivial subgroup, or None once cap cosets exist.

    Returns, for each group element (coset), its image under each of the
    2*n_gens letters; coset 0 is the identity.
    """
    nl = 2 * n_gens
    table: list[list[int | None]] = [[None] * nl]
    parent = [0]
    pending: deque[tuple[int, int]] = deque()

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def set_entry(c: int, a: int, d: int) -> None:
        c, d = find(c), find(d)
        e = table[c][a]
        if e is not None and find(e) != d:
            pending.append((find(e), d))
            return
        table[c][a] = d
        e2 = table[d][a ^ 1]
        if e2 is None:
            table[d][a ^ 1] = c
        elif find(e2) != c:
            pending.append((find(e2), c))

    def merge_all() -> None:
        while pending:
            x, y = pending.popleft()
            x, y = find(x), find(y)
            if x == y:
                continue
            if x > y:
                x, y = y, x
            parent[y] = x
            for a in range(nl):
                z = table[y][a]
                if z is not None:
                    set_entry(x, a, find(z))
            table[y] = [None] * nl

    def define(c: int, a: int) -> int | None:
        if len(table) >= cap:
            return None
        d = len(table)
        table.append([None] * nl)
        parent.append(d)
        set_entry(c, a, d)
        merge_all()
        return d

    changed = True
    while changed:
        changed = False
        c = 0
        while c < len(table):
            if find(c) != c:
                c += 1
                continue
            for rel in relators:
                cur = c
                for a in rel:
                    cur = find(cur)
                    nxt = table[cur][a]
                    if nxt is None:
                        nxt = define(cur, a)
                        if nxt is None:
                            return None
                        changed = True
                    cur = nxt
                if find(cur) != find(c):
                    pending.append((find(cur), find(c)))
                    merge_all()
                    changed = True
            # ensure totality so the table closes even with few relators
            for a in range(2 * n_gens):
                if find(c) == c and table[c][a] is None:
                    if define(c, a) is None:
                        return None
                    changed = True
            c += 1
    live = sorted(x for x in range(len(table)) if find(x) == x)
    reindex = {x: i for i, x in enumerate(live)}
    return [
        [reindex[find(table[x][a])] for a in range(nl)] for x in live
    ]


def group_from_coset_table(n_gens: int, tab: list[list[int]]):
    """Multiplication table on elements, from representative letter words."""
    n = len(tab)
    word = [None] * n
    word[0] = ()
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for a in range(2 * n_gens):
            y = tab[x][a]
            if word[y] is None:
                word[y] = word[x] + (a,)
                queue.append(y)
    if any(w is None for w in word):
        raise ValueError("coset table is not transitive")

    def mult(i: int, j: int) -> int:
        # traversal order: element i first, then j
        cur = i
        for a in word[j]:
            cur = tab[cur][a]
        return cur

    table = [[mult(i, j) for j in range(n)] for i in range(n)]
    return table


def realize_groupoid(P: PresentedGroupoid, cap: int = 4096) -> FinGroupoid | None:
    """The presented groupoid as explicit tables, or None past the cap.

    Each component becomes a connected groupoid on its vertices whose homs
    are torsors over the vertex group at the component root.
    """
    forest = _spanning_forest(P)
    roots, root, path, tree_edges = forest
    comp_tabs = {}
    for r in roots:
        gens, relators = vertex_group_presentation(P, r, forest)
        tab = todd_coxeter(len(gens), relators, cap)
        if tab is None:
            return None
        comp_tabs[r] = group_from_coset_table(len(gens), tab)
    obj_labels = list(range(P.n_vertices))
    mor_records = []
    for v in range(P.n_vertices):
        r = root[v]
        mult = comp_tabs[r]
        for w in range(P.n_vertices):
            if root[w] != r:
                continue
            for g in range(len(mult)):
                mor_records.append(((v, w, g), v, w))

    def comp_fn(m2, m1):
        # m1: a -> b then m2: b -> c; group letters multiply in traversal order
        a, b, g1 = m1
        _, c, g2 = m2
        mult = comp_tabs[root[a]]
        return (a, c, mult[g1][g2])

    def ident_of(v):
        return (v, v, 0)

    return groupoid_from_homs(obj_labels, mor_records, comp_fn, ident_of)


def pi1_realized(A: FinSSet, cap: int = 4096) -> FinGroupoid | None:
    """Fundamental groupoid of A as explicit tables (None if cap exceeded)."""
    return realize_groupoid(fundamental_groupoid(A), cap)
