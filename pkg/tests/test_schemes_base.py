from fractions import Fraction

import pytest

from graphpir.core import measured_rate, symbolic_decode_check
from graphpir.graphs import GraphSpec, build_family
from graphpir.kernels import path_kernel, star_kernel
from graphpir.rng import CanonicalSource, SeededSource
from graphpir.schemes import (
    SchemeError,
    compose,
    compose_rate,
    compose_stars,
    kernel_factory,
    path_scheme,
    star_scheme,
)
from graphpir.tables import answer_grid


def test_path_kernel_three_servers():
    # the two-file case: desired file 1 vs desired file 2 only differ at
    # the middle server, which switches from position 1 to position 2
    kr1 = path_kernel([1, 2, 3], ["a", "b"], 1)
    kr2 = path_kernel([1, 2, 3], ["a", "b"], 2)
    assert kr1.requests == (
        (1, frozenset({("a", 1)})),
        (2, frozenset({("a", 2), ("b", 2)})),
        (3, frozenset({("b", 2)})),
    )
    assert kr2.requests == (
        (1, frozenset({("a", 1)})),
        (2, frozenset({("a", 1), ("b", 1)})),
        (3, frozenset({("b", 2)})),
    )
    assert kr1.plan == (frozenset({0}), frozenset({1, 2}))
    assert kr2.plan == (frozenset({0, 1}), frozenset({2}))


def test_path_kernel_orientation_is_involution():
    kr = path_kernel([1, 2, 3, 4], list("abc"), 2, orientation=-1)
    back = path_kernel([1, 2, 3, 4], list("abc"), 2, orientation=1)
    # flipping swaps the desired symbol's positions and the two plan halves
    assert kr.plan == (back.plan[1], back.plan[0])
    flipped = {
        (s, frozenset((sym, 3 - m if sym == "b" else m) for sym, m in f))
        for s, f in kr.requests
    }
    assert flipped == set(back.requests)


def test_star_kernel_shape():
    kr = star_kernel(9, [1, 2, 3], list("abc"), 2)
    assert kr.requests[0] == (9, frozenset({("a", 1), ("b", 1), ("c", 1)}))
    assert kr.requests[2] == (2, frozenset({("b", 2)}))
    assert kr.plan == (frozenset({0, 1, 3}), frozenset({2}))


@pytest.mark.parametrize("n", range(2, 11))
def test_path_scheme_rate_and_reliability(n):
    g = build_family("path", [n])
    for theta in range(1, n):
        t = path_scheme(g, theta, SeededSource(theta))
        assert symbolic_decode_check(t)
        assert measured_rate(t) == Fraction(2, n)


def test_path_two_servers_rate_one():
    t = path_scheme(2, 1, SeededSource(0))
    assert measured_rate(t) == 1


def test_path_answer_grid_reference():
    # three-server answer grid with degenerate randomness
    g = build_family("path", [3])
    grids = {}
    for theta in (1, 2):
        t = path_scheme(g, theta, CanonicalSource(), identity_perms=True,
                        canonical_order=False)
        grids[theta] = answer_grid(t, {1: "a", 2: "b"})
    assert grids[1] == [["a_1", "a_2+b_2", "b_2"]]
    assert grids[2] == [["a_1", "a_1+b_1", "b_2"]]


def test_star_scheme_all_thetas():
    g = build_family("star", [6])
    for theta in range(1, 6):
        t = star_scheme(g, theta, SeededSource(theta))
        assert symbolic_decode_check(t)
        assert measured_rate(t) == Fraction(2, 6)


def test_scheme_family_mismatch():
    with pytest.raises(SchemeError):
        path_scheme(build_family("star", [4]), 1, SeededSource(0))
    with pytest.raises(SchemeError):
        star_scheme(build_family("path", [4]), 1, SeededSource(0))
    with pytest.raises(SchemeError):
        path_scheme(build_family("path", [3], 2), 1, SeededSource(0))
    with pytest.raises(SchemeError):
        path_scheme(build_family("path", [3]), 5, SeededSource(0))


def test_kernel_factory_rejects_wrong_edge():
    g = build_family("path", [4])
    fa = kernel_factory("path", g, [1, 2])
    with pytest.raises(SchemeError):
        fa.run(3, 1, SeededSource(0))


def test_compose_two_isolated_edges():
    g = GraphSpec(4, ((1, 2), (3, 4)))
    t = compose(g, [((1,), "path"), ((2,), "path")], 2, SeededSource(3))
    assert symbolic_decode_check(t)
    assert measured_rate(t) == Fraction(1, 2)
    # decoy part still gets queried
    assert all(len(server) == 1 for server in t.requests)


def test_compose_single_part_matches_standalone_rate():
    g = build_family("path", [5])
    t = compose(g, [(tuple(range(1, 5)), "path")], 3, SeededSource(1))
    assert symbolic_decode_check(t)
    assert measured_rate(t) == Fraction(2, 5)


def test_compose_requires_partition():
    g = build_family("path", [4])
    with pytest.raises(SchemeError):
        compose(g, [((1, 2), "path")], 1, SeededSource(0))
    with pytest.raises(SchemeError):
        compose(g, [((1, 2), "path"), ((2, 3), "path")], 1, SeededSource(0))
    with pytest.raises(SchemeError):
        compose(g, [], 1, SeededSource(0))


def test_compose_stars_k22_and_k23():
    for m, n, want in ((2, 2, Fraction(1, 3)), (2, 3, Fraction(1, 4))):
        g = build_family("complete_bipartite", [m, n])
        for e in range(1, g.n_base_edges + 1):
            t = compose_stars(g, e, SeededSource("c%d%d%d" % (m, n, e)))
            assert symbolic_decode_check(t)
            assert measured_rate(t) == want
            assert measured_rate(t) == Fraction(2, m * (n + 1))


def test_compose_mixed_kinds():
    # a path part and a star part sharing the host graph
    g = GraphSpec(6, ((1, 2), (2, 3), (4, 5), (4, 6)))
    parts = [((1, 2), "path"), ((3, 4), "star")]
    for theta in range(1, 5):
        t = compose(g, parts, theta, SeededSource(theta))
        assert symbolic_decode_check(t)
        assert measured_rate(t) == Fraction(1, 3)


def test_compose_rate_helper():
    assert compose_rate([Fraction(2, 3), Fraction(2, 3)]) == Fraction(1, 3)
    assert compose_rate([1, 1]) == Fraction(1, 2)
