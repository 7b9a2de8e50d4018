"""Rooted d-trees: the canonical balanced family and its density computations.

The canonical tree on parameters (d, Q) has vertices 0..d(Q+1)-1 and faces
all sets of spread at most d (max - min <= d); blocks sigma_1..sigma_Q of d
consecutive vertices partition the unrooted vertices, sigma_0 is the simplex
root.  Root vertices are attached block-wise to reach any facet count dQ+r.
Min-density is computed three independent ways: closed form, contiguous
block scan, and subset brute force; all three must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from shatterlab._bits import bits, iter_bits, submasks
from shatterlab.complexes import SimplicialComplex
from shatterlab.errors import InvalidArgumentError, ResourceLimitError
from shatterlab.setsystem import _as_vertex_mask

BRUTE_FORCE_VERTEX_CAP = 20


@dataclass(frozen=True)
class TreeParams:
    d: int
    Q: int
    r: int
    attachments: tuple[int, ...]  # block index (1..Q) per root, in label order


@dataclass(frozen=True)
class RootedDTree:
    complex: SimplicialComplex
    rho: int  # mask of the simplex root, a (d-1)-simplex
    roots: int  # mask of the vertex roots
    params: TreeParams | None = None

    @property
    def d(self) -> int:
        return self.complex.dimension

    @property
    def unrooted_mask(self) -> int:
        return self.complex.vertex_mask & ~(self.rho | self.roots)

    def facet_masks(self) -> list[int]:
        return self.complex.facets()


def sigma_mask(d: int, i: int) -> int:
    """Block sigma_i = {id, ..., (i+1)d - 1} (0-based relabelling)."""
    return ((1 << d) - 1) << (i * d)


def build_T0(d: int, Q: int) -> RootedDTree:
    if d < 1 or Q < 1:
        raise InvalidArgumentError("d and Q must be >= 1")
    nv = d * (Q + 1)
    faces = set()
    for lo in range(nv):
        hi = min(lo + d, nv - 1)
        window = 0
        for v in range(lo + 1, hi + 1):
            window |= 1 << v
        base = 1 << lo
        faces.add(base)
        for sub in submasks(window):
            faces.add(base | sub)
    cx = SimplicialComplex(nv, faces, validate=False)
    return RootedDTree(cx, sigma_mask(d, 0), 0, TreeParams(d, Q, 0, ()))


def single_simplex_tree(d: int) -> RootedDTree:
    """One d-simplex rooted at its first d vertices; the induction base case."""
    if d < 1:
        raise InvalidArgumentError("d must be >= 1")
    cx = SimplicialComplex(d + 1, submasks((1 << (d + 1)) - 1), validate=False)
    return RootedDTree(cx, (1 << d) - 1, 0, None)


def attachment_blocks(Q: int, r: int) -> tuple[int, ...]:
    """Block indices receiving a root, in attachment (= label) order.

    For 0 < r < Q the blocks are ceil(kQ/r) for k = 1..r; for r >= Q the
    recursion bottoms out first, then appends one full round 1..Q per level.
    """
    rounds, r0 = divmod(r, Q)
    seq: list[int] = []
    if r0:
        seq.extend(-(-k * Q // r0) for k in range(1, r0 + 1))
    for _ in range(rounds):
        seq.extend(range(1, Q + 1))
    return tuple(seq)


def attach_vertex(tree: RootedDTree, sigma, *, rooted: bool = False) -> RootedDTree:
    """Glue a new d-simplex formed by sigma and a fresh vertex."""
    d = tree.d
    smask = _as_vertex_mask(tree.complex.n, sigma)
    if smask.bit_count() != d or smask not in tree.complex:
        raise InvalidArgumentError("attachment site must be a (d-1)-simplex of the tree")
    v = tree.complex.n
    vbit = 1 << v
    faces = set(tree.complex.faces)
    faces.add(vbit)
    for sub in submasks(smask):
        faces.add(vbit | sub)
    cx = SimplicialComplex(v + 1, faces, validate=False)
    roots = tree.roots | vbit if rooted else tree.roots
    return RootedDTree(cx, tree.rho, roots, None)


def build_Tr(d: int, Q: int, r: int) -> RootedDTree:
    if r < 0:
        raise InvalidArgumentError("r must be >= 0")
    tree = build_T0(d, Q)
    blocks = attachment_blocks(Q, r)
    for block in blocks:
        tree = attach_vertex(tree, sigma_mask(d, block), rooted=True)
    return RootedDTree(
        tree.complex, tree.rho, tree.roots, TreeParams(d, Q, r, blocks)
    )


def is_d_tree(cx: SimplicialComplex, d: int) -> bool:
    """Leaf-stripping check of the inductive d-tree definition."""
    single = (1 << (d + 1)) - 1  # face count of one d-simplex
    faces = set(cx.faces)
    while True:
        if not faces:
            return False
        verts = 0
        for f in faces:
            verts |= f
        facets = [f for f in faces if not any(f != g and f & g == f for g in faces)]
        if any(f.bit_count() != d + 1 for f in facets):
            return False
        if len(facets) == 1:
            return len(faces) == single and verts.bit_count() == d + 1
        leaf = None
        for v in bits(verts):
            vbit = 1 << v
            if sum(1 for f in facets if f & vbit) == 1:
                leaf = vbit
                break
        if leaf is None:
            return False
        faces = {f for f in faces if not f & leaf}


def min_density_formula(d: int, Q: int, r: int) -> Fraction:
    """Closed form 2^d + r(2^d - 1)/(dQ)."""
    return Fraction(1 << d) + Fraction(r * ((1 << d) - 1), d * Q)


def min_density_bruteforce(
    tree: RootedDTree, *, vertex_cap: int = BRUTE_FORCE_VERTEX_CAP
) -> tuple[Fraction, int]:
    """Exact minimum of e(S)/|S| over non-empty sets of unrooted vertices.

    Returns (value, witness); the witness is the largest minimizing set,
    ties broken toward the lexicographically least vertex list.
    """
    unrooted = bits(tree.unrooted_mask)
    k = len(unrooted)
    if k == 0:
        raise InvalidArgumentError("tree has no unrooted vertices")
    if k > vertex_cap:
        raise ResourceLimitError(
            f"{k} unrooted vertices exceed the brute-force cap {vertex_cap}"
        )
    faces = sorted(tree.complex.faces)
    inc = []
    for v in unrooted:
        vbit = 1 << v
        m = 0
        for idx, f in enumerate(faces):
            if f & vbit:
                m |= 1 << idx
        inc.append(m)
    best_e = best_size = 0  # sentinel: compare e * size' vs e' * size
    best_subset = 0
    for s in range(1, 1 << k):
        acc = 0
        rest = s
        while rest:
            low = rest & -rest
            acc |= inc[low.bit_length() - 1]
            rest ^= low
        e = acc.bit_count()
        size = s.bit_count()
        if best_size == 0:
            better = True
        else:
            lhs, rhs = e * best_size, best_e * size
            better = lhs < rhs
            if not better and lhs == rhs:
                if size != best_size:
                    better = size > best_size
                else:
                    better = _vertex_list(s, unrooted) < _vertex_list(best_subset, unrooted)
        if better:
            best_e, best_size, best_subset = e, size, s
    witness = 0
    for i in iter_bits(best_subset):
        witness |= 1 << unrooted[i]
    return Fraction(best_e, best_size), witness


def _vertex_list(subset: int, unrooted: list[int]) -> tuple[int, ...]:
    return tuple(unrooted[i] for i in iter_bits(subset))


def is_balanced(tree: RootedDTree, *, vertex_cap: int = BRUTE_FORCE_VERTEX_CAP) -> bool:
    """True iff the full unrooted set attains the minimum density."""
    value, _ = min_density_bruteforce(tree, vertex_cap=vertex_cap)
    full = tree.unrooted_mask
    e = sum(1 for f in tree.complex.faces if f & full)
    return Fraction(e, full.bit_count()) == value


@dataclass(frozen=True)
class EmbeddingCount:
    count: int
    saturated: bool  # enumeration stopped at the cap


def _embedding_schedule(tree: RootedDTree) -> list[tuple[int, int]]:
    """Facet attachment order starting from a facet containing the root.

    Returns (new_vertex, glue_mask) per facet; the first entry glues to rho
    itself.  Any d-tree admits such an order from any of its facets.
    """
    facets = tree.facet_masks()
    if not any(f & tree.rho == tree.rho for f in facets):
        raise InvalidArgumentError("no facet of the tree contains rho")
    covered = tree.rho
    schedule: list[tuple[int, int]] = []
    pending = set(facets)
    progress = True
    while pending and progress:
        progress = False
        for f in sorted(pending):
            new = f & ~covered
            if new.bit_count() != 1:
                continue
            schedule.append((new.bit_length() - 1, f ^ new))
            covered |= f
            pending.discard(f)
            progress = True
            break
    if pending:
        raise InvalidArgumentError("complex is not a d-tree reachable from the root facet")
    if covered != tree.complex.vertex_mask:
        raise InvalidArgumentError("tree has vertices outside all facets")
    return schedule


def count_embeddings(
    tree: RootedDTree, cx: SimplicialComplex, sigma, cap: int = 1_000_000
) -> EmbeddingCount:
    """Injective maps V(T) -> V(C) sending rho to sigma and facets to d-simplices.

    The root is matched order-preservingly (sorted rho vertices onto sorted
    sigma vertices), so a single rooted d-simplex counts exactly the degree
    of sigma.  Vertex injectivity already forces distinct facet images.
    """
    d = tree.d
    smask = _as_vertex_mask(cx.n, sigma)
    if smask.bit_count() != d or smask not in cx:
        raise InvalidArgumentError("sigma must be a (d-1)-simplex of the target complex")
    schedule = _embedding_schedule(tree)
    mapping = dict(zip(bits(tree.rho), bits(smask)))
    used = smask
    cx_vertices = cx.vertices()
    extension_cache: dict[int, tuple[int, ...]] = {}

    def extensions(glue_img: int) -> tuple[int, ...]:
        try:
            return extension_cache[glue_img]
        except KeyError:
            ext = tuple(
                w for w in cx_vertices if not glue_img >> w & 1 and glue_img | (1 << w) in cx
            )
            extension_cache[glue_img] = ext
            return ext

    count = 0
    saturated = False

    def walk(idx: int, used: int) -> None:
        nonlocal count, saturated
        if saturated:
            return
        if idx == len(schedule):
            count += 1
            if count >= cap:
                saturated = True
            return
        new_v, glue = schedule[idx]
        glue_img = 0
        for v in iter_bits(glue):
            glue_img |= 1 << mapping[v]
        for w in extensions(glue_img):
            if used >> w & 1:
                continue
            mapping[new_v] = w
            walk(idx + 1, used | (1 << w))
            del mapping[new_v]

    walk(0, used)
    return EmbeddingCount(count, saturated)


def contiguous_min_density(tree: RootedDTree) -> tuple[Fraction, int, int]:
    """Minimum density over contiguous block unions sigma_i..sigma_j.

    Uses the closed forms: for j = Q every face meeting S has its maximum in
    S, giving 2^d faces per vertex plus 2^d - 1 per root attached inside the
    block range; for j < Q the dangling faces (maximum outside S) add a
    constant (d-1)2^d + 1.
    """
    if tree.params is None:
        raise InvalidArgumentError("contiguous block scan requires a canonical tree")
    d, Q = tree.params.d, tree.params.Q
    attachments = tree.params.attachments
    pd = 1 << d
    best: tuple[Fraction, int, int] | None = None
    for i in range(1, Q + 1):
        for j in range(i, Q + 1):
            size = d * (j - i + 1)
            l_count = sum(1 for a in attachments if i <= a <= j)
            e = pd * size + (pd - 1) * l_count
            if j < Q:
                e += (d - 1) * pd + 1
            dens = Fraction(e, size)
            if best is None or dens < best[0]:
                best = (dens, i, j)
    assert best is not None
    return best
