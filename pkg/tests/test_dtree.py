from fractions import Fraction
from itertools import combinations

import pytest

from shatterlab._bits import bits
from shatterlab.complexes import SimplicialComplex, density
from shatterlab.dtree import (
    RootedDTree,
    attach_vertex,
    attachment_blocks,
    build_T0,
    build_Tr,
    contiguous_min_density,
    count_embeddings,
    is_balanced,
    is_d_tree,
    min_density_bruteforce,
    min_density_formula,
    sigma_mask,
    single_simplex_tree,
)
from shatterlab.errors import InvalidArgumentError, ResourceLimitError


def brute_min_density_oracle(tree):
    """Direct reimplementation: loop subsets as tuples, count faces via sets."""
    faces = [frozenset(bits(f)) for f in tree.complex.faces]
    unrooted = bits(tree.unrooted_mask)
    best = None
    for size in range(1, len(unrooted) + 1):
        for sub in combinations(unrooted, size):
            s = set(sub)
            e = sum(1 for f in faces if f & s)
            val = Fraction(e, size)
            if best is None or val < best:
                best = val
    return best


def test_T0_1_1():
    t = build_T0(1, 1)
    assert t.complex.n == 2
    assert sorted(t.complex.faces) == [1, 2, 3]
    assert len(t.facet_masks()) == 1
    assert t.rho == 1 and t.roots == 0


def test_T0_2_5_shape():
    t = build_T0(2, 5)
    assert t.complex.n == 12
    assert len(t.complex.faces) == 43
    assert len(t.complex.faces_of_dim(1)) == 21
    assert len(t.facet_masks()) == 10
    facets = {frozenset(bits(f)) for f in t.facet_masks()}
    assert facets == {frozenset({i, i + 1, i + 2}) for i in range(10)}


def test_T0_blocks_are_faces_and_partition():
    for d, q in [(1, 5), (2, 4), (3, 4)]:
        t = build_T0(d, q)
        union = 0
        for i in range(q + 1):
            sm = sigma_mask(d, i)
            assert sm in t.complex.faces
            assert sm.bit_count() == d
            union |= sm
        assert union == (1 << (d * (q + 1))) - 1
        assert t.unrooted_mask == union ^ sigma_mask(d, 0)


def test_T0_invalid_args():
    with pytest.raises(InvalidArgumentError):
        build_T0(0, 3)
    with pytest.raises(InvalidArgumentError):
        build_T0(2, 0)
    with pytest.raises(InvalidArgumentError):
        build_Tr(1, 1, -1)


def test_Tr_attachment_schedule():
    assert attachment_blocks(5, 3) == (2, 4, 5)
    assert attachment_blocks(5, 0) == ()
    assert attachment_blocks(5, 7) == (3, 5, 1, 2, 3, 4, 5)
    assert attachment_blocks(3, 9) == (1, 2, 3) * 3


def test_Tr_2_5_3():
    t = build_Tr(2, 5, 3)
    assert len(t.facet_masks()) == 13
    assert t.roots.bit_count() == 3
    assert t.complex.n == 2 * 6 + 3
    # roots are fresh labels 12, 13, 14 in attachment order
    assert bits(t.roots) == [12, 13, 14]


def test_Tr_r0_equals_T0():
    for d, q in [(1, 3), (2, 4)]:
        assert build_Tr(d, q, 0).complex == build_T0(d, q).complex


def test_Tr_2_5_7():
    t = build_Tr(2, 5, 7)
    assert len(t.facet_masks()) == 2 * 5 + 7
    assert t.roots.bit_count() == 7


def test_canonical_trees_are_d_trees():
    for d, q, r in [(1, 2, 0), (1, 4, 3), (2, 3, 2), (2, 5, 7), (3, 2, 5)]:
        t = build_Tr(d, q, r)
        assert is_d_tree(t.complex, d)


def test_formula_instances():
    assert min_density_formula(2, 5, 3) == Fraction(49, 10)
    assert min_density_formula(1, 4, 3) == 2 + Fraction(3, 4)
    for d in (1, 2, 3):
        assert min_density_formula(d, 3, 0) == 1 << d


def test_bruteforce_examples():
    t = build_Tr(2, 5, 3)
    value, witness = min_density_bruteforce(t)
    assert value == Fraction(49, 10)
    assert witness == t.unrooted_mask

    t0 = build_T0(1, 2)
    value, witness = min_density_bruteforce(t0)
    assert value == 2
    assert witness == t0.unrooted_mask  # both unrooted vertices

    t1 = build_T0(2, 1)
    value, _ = min_density_bruteforce(t1)
    assert value == min_density_formula(2, 1, 0)


def test_bruteforce_matches_independent_oracle():
    for d, q, r in [(1, 2, 1), (1, 3, 4), (2, 2, 3)]:
        t = build_Tr(d, q, r)
        value, _ = min_density_bruteforce(t)
        assert value == brute_min_density_oracle(t)


def test_bruteforce_cap():
    t = build_Tr(1, 5, 0)
    with pytest.raises(ResourceLimitError):
        min_density_bruteforce(t, vertex_cap=3)


def test_contiguous_examples():
    t = build_Tr(2, 5, 3)
    value, i, j = contiguous_min_density(t)
    assert (value, i, j) == (Fraction(49, 10), 1, 5)

    t0 = build_T0(2, 5)
    value, i, j = contiguous_min_density(t0)
    assert value == 4 and (i, j) == (1, 5)
    # blocks with j < Q pay the dangling surcharge
    rep = density(t0.complex, sigma_mask(2, 1) | sigma_mask(2, 2))
    assert rep.density > 4


def test_dangling_count_formula():
    # (d-1)2^d + 1 evaluated directly, and observed on T0 block densities
    assert (2 - 1) * 4 + 1 == 5
    assert (3 - 1) * 8 + 1 == 17
    for d, q in [(2, 4), (3, 3)]:
        t0 = build_T0(d, q)
        for i in range(1, q):
            for j in range(i, q):
                s = 0
                for b in range(i, j + 1):
                    s |= sigma_mask(d, b)
                rep = density(t0.complex, s)
                size = d * (j - i + 1)
                expected = Fraction((1 << d) * size + (d - 1) * (1 << d) + 1, size)
                assert rep.density == expected


def test_contiguous_requires_canonical():
    t = build_T0(1, 2)
    bare = RootedDTree(t.complex, t.rho, t.roots, None)
    with pytest.raises(InvalidArgumentError):
        contiguous_min_density(bare)


def test_block_closed_forms_match_actual_density():
    for d, q, r in [(1, 4, 2), (2, 3, 4), (2, 5, 3), (3, 2, 1)]:
        tree = build_Tr(d, q, r)
        attach = tree.params.attachments
        for i in range(1, q + 1):
            for j in range(i, q + 1):
                s = 0
                for b in range(i, j + 1):
                    s |= sigma_mask(d, b)
                actual = density(tree.complex, s).density
                size = d * (j - i + 1)
                l_count = sum(1 for a in attach if i <= a <= j)
                e = (1 << d) * size + ((1 << d) - 1) * l_count
                if j < q:
                    e += (d - 1) * (1 << d) + 1
                assert actual == Fraction(e, size), (d, q, r, i, j)


def test_recursion_shift_identity():
    # adding one root per block raises the full-set density by (2^d - 1)/d
    for d, q, r in [(1, 3, 5), (2, 2, 3), (2, 5, 7), (3, 2, 4)]:
        if r < q:
            continue
        t_hi = build_Tr(d, q, r)
        t_lo = build_Tr(d, q, r - q)
        hi, _ = min_density_bruteforce(t_hi)
        lo, _ = min_density_bruteforce(t_lo)
        assert hi == lo + Fraction((1 << d) - 1, d)


def test_balanced_on_grid_samples():
    for d, q, r in [(1, 1, 0), (1, 5, 11), (2, 4, 5), (3, 2, 2)]:
        assert is_balanced(build_Tr(d, q, r))


def test_lopsided_attachment_checked_against_brute_force():
    # extra unrooted vertex on the last block: balance is whatever brute force says
    t0 = build_T0(2, 5)
    lop = attach_vertex(t0, sigma_mask(2, 5), rooted=False)
    value, witness = min_density_bruteforce(lop)
    full = lop.unrooted_mask
    e_full = sum(1 for f in lop.complex.faces if f & full)
    assert is_balanced(lop) == (Fraction(e_full, full.bit_count()) == value)
    assert value <= Fraction(e_full, full.bit_count())


def test_single_vertex_tree_trivially_balanced():
    t = single_simplex_tree(2)
    # unrooted set is one vertex; the only candidate attains the minimum
    assert t.unrooted_mask.bit_count() == 1
    assert is_balanced(t)


def test_attach_validates_site():
    t = build_T0(2, 2)
    with pytest.raises(InvalidArgumentError):
        attach_vertex(t, [0], rooted=True)  # wrong dimension
    with pytest.raises(InvalidArgumentError):
        attach_vertex(t, [0, 3], rooted=True)  # not a face


# -- embeddings --------------------------------------------------------------


def complete_graph(n):
    return SimplicialComplex.from_facets(n, [[i, j] for i in range(n) for j in range(i + 1, n)])


def test_embedding_single_simplex_equals_degree():
    from shatterlab.complexes import degree

    cx = SimplicialComplex.from_facets(6, [[0, 1, 2], [1, 2, 3], [1, 2, 4], [0, 4, 5]])
    t = single_simplex_tree(2)
    for sigma in cx.faces_of_dim(1):
        assert count_embeddings(t, cx, sigma).count == degree(cx, sigma, 2)


def test_embedding_path_into_k4():
    t = build_T0(1, 2)  # path on 3 vertices rooted at an endpoint
    assert count_embeddings(t, complete_graph(4), [0]).count == 6


def test_embedding_path_oracle_complete_graphs():
    # injective maps of a path into K_n: (n-1)(n-2)...(n-v+1)
    for q in (1, 2, 3):
        t = build_T0(1, q)
        v = t.complex.n
        for n in range(v, 8):
            expected = 1
            for i in range(1, v):
                expected *= n - i
            assert count_embeddings(t, complete_graph(n), [0]).count == expected


def test_embedding_facet_images_distinct():
    # explicit walk: images of distinct facets are distinct sets under injectivity
    t = build_T0(1, 2)
    cx = complete_graph(4)
    # count maps allowing equal facet images would be larger; with 3 distinct
    # vertices the two edge images always differ, so this is the same number
    assert count_embeddings(t, cx, [0]).count == 6


def test_embedding_cap_flags_saturation():
    t = build_T0(1, 2)
    res = count_embeddings(t, complete_graph(6), [0], cap=3)
    assert res.saturated and res.count == 3


def test_embedding_lower_bound_small():
    from shatterlab.complexes import delta_d

    for tree, n in [(build_T0(1, 2), 7), (build_T0(1, 3), 9), (build_T0(2, 1), 8)]:
        d = tree.d
        faces = [
            list(c)
            for size in range(1, d + 2)
            for c in combinations(range(n), size)
        ]
        cx = SimplicialComplex.from_facets(n, faces)
        f = len(tree.facet_masks())
        delta = delta_d(cx, d)
        assert delta >= f + 1
        got = count_embeddings(tree, cx, list(range(d)), cap=10**7)
        assert not got.saturated
        assert got.count >= (delta - f) ** f
