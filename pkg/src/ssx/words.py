"""Eilenberg-Zilber normal forms for simplices.

Every simplex of a simplicial set factors uniquely as an iterated degeneracy
s_{i_1} ... s_{i_r} x with x nondegenerate and i_1 > ... > i_r.  A
``SimplexWord`` stores that factorization: a reference to the nondegenerate
base plus the strictly decreasing tuple of degeneracy indices.  This module
implements the pure combinatorial layer: applying degeneracy and face
operators to words, stripping degeneracies, and the translation between
degeneracy words and monotone surjections.  Face lookups on nondegenerate
bases are delegated to a callback so the layer stays independent of any
particular simplicial set representation.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterator, NamedTuple


class SimplexRef(NamedTuple):
    """Reference to a nondegenerate simplex: its dimension and index."""

    dim: int
    index: int


class SimplexWord(NamedTuple):
    """A simplex in EZ normal form: degeneracies applied to a base.

    ``degens`` is strictly decreasing; the word denotes
    s_{degens[0]} ... s_{degens[-1]} (base) and has dimension
    ``base.dim + len(degens)``.
    """

    base: SimplexRef
    degens: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.base.dim + len(self.degens)


class WordError(ValueError):
    """Raised for malformed simplex words."""


def make_word(base_dim: int, base_index: int, degens: tuple[int, ...] = ()) -> SimplexWord:
    w = SimplexWord(SimplexRef(base_dim, base_index), tuple(degens))
    validate_word(w)
    return w


def validate_word(w: SimplexWord) -> None:
    """Check shape constraints; raises WordError with the precise reason.

    Strict decrease plus the top bound degens[0] <= dim-1 is equivalent to
    stepwise validity of each s_i application.
    """
    if w.base.dim < 0 or w.base.index < 0:
        raise WordError(f"negative base reference {w.base}")
    d = w.degens
    for k in range(len(d) - 1):
        if d[k] <= d[k + 1]:
            raise WordError(f"degeneracy indices not strictly decreasing: {d}")
    if d:
        if d[-1] < 0:
            raise WordError(f"negative degeneracy index in {d}")
        if d[0] > w.dim - 1:
            raise WordError(
                f"degeneracy index {d[0]} out of range for dimension {w.dim}"
            )


def degen_word(w: SimplexWord, j: int) -> SimplexWord:
    """Apply s_j to a word in normal form, renormalizing.

    Uses s_j s_i = s_{i+1} s_j for j <= i: indices >= j get bumped, then j
    is inserted at its sorted position.
    """
    if not 0 <= j <= w.dim:
        raise WordError(f"s_{j} undefined on a {w.dim}-simplex")
    out: list[int] = []
    k = 0
    d = w.degens
    while k < len(d) and d[k] >= j:
        out.append(d[k] + 1)
        k += 1
    out.append(j)
    out.extend(d[k:])
    return SimplexWord(w.base, tuple(out))


def strip_degen(w: SimplexWord, j: int) -> SimplexWord:
    """Remove one occurrence of s_j from the word (j must occur)."""
    if j not in w.degens:
        raise WordError(f"s_{j} does not occur in {w}")
    out = tuple((i - 1 if i > j else i) for i in w.degens if i != j)
    return SimplexWord(w.base, out)


def strip_degens(w: SimplexWord, js: frozenset[int] | set[int]) -> SimplexWord:
    """Remove a set of degeneracy indices (all must occur)."""
    out = w
    for j in sorted(js, reverse=True):
        out = strip_degen(out, j)
    return out


BaseFace = Callable[[SimplexRef, int], SimplexWord]


def face_word(w: SimplexWord, i: int, base_face: BaseFace) -> SimplexWord:
    """Apply d_i to a word, normalizing through the simplicial identities.

    ``base_face`` resolves d_i on a nondegenerate base (sset face table).
    """
    if not 0 <= i <= w.dim:
        raise WordError(f"d_{i} undefined on a {w.dim}-simplex")
    if w.dim == 0:
        raise WordError("0-simplices have no faces")
    pending: list[int] = []  # degeneracies to reapply, outermost first
    degens = w.degens
    k = 0
    cur = i
    res: SimplexWord | None = None
    while k < len(degens):
        j = degens[k]
        if cur < j:
            pending.append(j - 1)
        elif cur == j or cur == j + 1:
            res = SimplexWord(w.base, degens[k + 1 :])
            break
        else:
            pending.append(j)
            cur -= 1
        k += 1
    if res is None:
        res = base_face(w.base, cur)
    for j in reversed(pending):
        res = degen_word(res, j)
    return res


def apply_degens(w: SimplexWord, degens: tuple[int, ...]) -> SimplexWord:
    """Apply a strictly decreasing degeneracy tuple (innermost first)."""
    for j in reversed(degens):
        w = degen_word(w, j)
    return w


def surjection_of_word(w: SimplexWord) -> tuple[int, ...]:
    """The monotone surjection [dim] ->> [base.dim] the word denotes."""
    sigma = list(range(w.base.dim + 1))
    for j in reversed(w.degens):
        sigma.insert(j + 1, sigma[j])
    return tuple(sigma)


def degens_of_surjection(sigma: tuple[int, ...]) -> tuple[int, ...]:
    """Inverse of surjection_of_word on the degeneracy part."""
    rep = [i for i in range(len(sigma) - 1) if sigma[i] == sigma[i + 1]]
    return tuple(reversed(rep))


def degeneracy_tuples(r: int, n: int) -> Iterator[tuple[int, ...]]:
    """All strictly decreasing r-tuples valid on words of dimension n.

    Yields in lexicographic order of the decreasing tuples, which matches
    lexicographic order of the underlying ascending combinations.
    """
    for comb in combinations(range(n), r):
        yield tuple(reversed(comb))
