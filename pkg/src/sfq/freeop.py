"""Tree monomials of the free operad on the OC generators, used to check D^2 = 0.

A tree is a nested tuple.  Leaves are ``("L", colour, label)``; a vertex is
``("V", vid, corolla, solid_children, dashed_children)``.  Solid children are
kept sorted (the generators are symmetric in their solid inputs), dashed
children are planar.  The sign of a monomial refers to its vertices listed in
preorder; odd generators anticommute.
"""
from __future__ import annotations

from collections import defaultdict

from .graph import perm_parity
from .oc import Corolla, TreeTerm, oc_differential


def leaf(color: str, label: int) -> tuple:
    return ("L", color, label)


def corolla_tree(t: Corolla, vid: int = 0) -> tuple:
    solid = tuple(leaf("c", j) for j in range(1, t.n + 1))
    dashed = tuple(leaf("o", j) for j in range(1, t.k + 1))
    return ("V", vid, t, solid, dashed)


def _min_solid(node) -> int:
    if node[0] == "L":
        return node[2] if node[1] == "c" else 10 ** 9
    vals = [_min_solid(c) for c in node[3] + node[4]]
    return min(vals) if vals else 10 ** 9


def _sorted(node):
    if node[0] == "L":
        return node
    _, vid, t, solid, dashed = node
    solid = tuple(sorted((_sorted(c) for c in solid), key=_min_solid))
    return ("V", vid, t, solid, tuple(_sorted(c) for c in dashed))


def _preorder(node, out: list) -> None:
    if node[0] == "L":
        return
    out.append(node)
    for c in node[3] + node[4]:
        _preorder(c, out)


def canonical(node) -> tuple[int, tuple]:
    """Sort solid children, renumber vertices in preorder, return (sign, tree).

    The incoming vertex order is given by increasing ``vid``.
    """
    node = _sorted(node)
    verts: list = []
    _preorder(node, verts)
    odd = [v for v in verts if v[2].degree % 2]
    order = sorted(range(len(odd)), key=lambda i: odd[i][1])
    sign = -1 if perm_parity(order) else 1
    rank = {v[1]: i for i, v in enumerate(verts)}

    def renum(x):
        if x[0] == "L":
            return x
        return ("V", rank[x[1]], x[2], tuple(renum(c) for c in x[3]), tuple(renum(c) for c in x[4]))

    return sign, renum(node)


def _graft(node, solid_map: dict, dashed_map: dict):
    """Replace leaves of ``node`` by the given subtrees."""
    if node[0] == "L":
        return solid_map[node[2]] if node[1] == "c" else dashed_map[node[2]]
    return ("V", node[1], node[2],
            tuple(_graft(c, solid_map, dashed_map) for c in node[3]),
            tuple(_graft(c, solid_map, dashed_map) for c in node[4]))


def two_vertex_tree(term: TreeTerm, vid_outer, vid_inner) -> tuple:
    """coeff-free tree of (perm,id)(outer o_slot inner), leaves in t's labels."""
    o, i = term.outer, term.inner
    inner = corolla_tree(i, vid_inner)
    if term.color == "c":
        # inner takes solid labels 1..p, outer's other solid inputs come after
        p = i.n
        relabel_c = {j: term.perm[j - 1] for j in range(1, o.n + i.n)}
        inner = _graft(inner, {j: leaf("c", relabel_c[j]) for j in range(1, p + 1)},
                       {j: leaf("o", j) for j in range(1, i.k + 1)})
        solid = [inner] + [leaf("c", relabel_c[p + j]) for j in range(1, o.n)]
        dashed = [leaf("o", j) for j in range(1, o.k + 1)]
    else:
        s, kk = term.slot, i.k
        inner = _graft(inner, {j: leaf("c", term.perm[o.n + j - 1]) for j in range(1, i.n + 1)},
                       {j: leaf("o", s + j - 1) for j in range(1, kk + 1)})
        solid = [leaf("c", term.perm[j - 1]) for j in range(1, o.n + 1)]
        dashed = [leaf("o", j) for j in range(1, s)] + [inner] + \
                 [leaf("o", j + kk - 1) for j in range(s + 1, o.k + 1)]
    return ("V", vid_outer, o, tuple(solid), tuple(dashed))


def _retag(node):
    if node[0] == "L":
        return node
    return ("V", (node[1], 0), node[2], tuple(_retag(c) for c in node[3]),
            tuple(_retag(c) for c in node[4]))


def _replace(node, vid, sub):
    if node[0] == "L":
        return node
    if node[1] == vid:
        return sub
    return ("V", node[1], node[2], tuple(_replace(c, vid, sub) for c in node[3]),
            tuple(_replace(c, vid, sub) for c in node[4]))


def apply_d(tree) -> dict:
    """Derivation extension of D to a canonical tree monomial (vids in preorder)."""
    verts: list = []
    _preorder(tree, verts)
    tagged = _retag(tree)
    out: dict = defaultdict(int)
    before = 0
    for v in verts:
        sign_v = -1 if before % 2 else 1
        before += v[2].degree
        t, idx = v[2], v[1]
        for term in oc_differential(t):
            two = two_vertex_tree(term, (idx, 0), (idx, 1))
            two = _graft(two, {j: _retag(v[3][j - 1]) for j in range(1, t.n + 1)},
                         {j: _retag(v[4][j - 1]) for j in range(1, t.k + 1)})
            s, canon = canonical(_replace(tagged, (idx, 0), two))
            out[canon] += sign_v * term.coeff * s
    return {k: c for k, c in out.items() if c}


def d_of_corolla(t: Corolla) -> dict:
    out: dict = defaultdict(int)
    for term in oc_differential(t):
        s, canon = canonical(two_vertex_tree(term, 0, 1))
        out[canon] += term.coeff * s
    return {k: c for k, c in out.items() if c}


def d_squared(t: Corolla) -> dict:
    """D(D(t)) in the free operad; empty when D^2 = 0 at t."""
    total: dict = defaultdict(int)
    for tree, c in d_of_corolla(t).items():
        for tree2, c2 in apply_d(tree).items():
            total[tree2] += c * c2
    return {k: v for k, v in total.items() if v}
