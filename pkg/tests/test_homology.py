import random
from fractions import Fraction

import pytest

from hyperhom.errors import ClassMismatch, NotIncluded, SchemaViolation
from hyperhom.homology import (
    ComplexSpec,
    build_complex,
    delta_pairing,
    duality_check,
    homology,
    homology_table,
    inclusion_induced,
    independence_carrier,
    mayer_vietoris,
    operator_action,
    simplicial_carrier,
    simplicial_word_carrier,
    word_carrier,
)
from hyperhom.hypergraphs import ClosureOp, Hypergraph, closure, power_set
from hyperhom.rings import GF, QQ, ZZ
from hyperhom.words import FULL, FreeChain, VertexSet, WedgeOperator, wedge_apply

S3 = VertexSet.of("s0", "s1", "s2")
SEGMENT = Hypergraph.of(S3, [[0], [1], [0, 1]])
CIRCLE = Hypergraph.of(S3, [[], [0], [1], [2], [0, 1], [1, 2], [0, 2]])
L1 = Hypergraph.of(S3, [[0, 1], [0, 1, 2]])
L2 = Hypergraph.of(S3, [[0, 1], [0, 2], [0, 1, 2]])


def alpha(*r):
    return WedgeOperator.weighted_sum("partial", r)


def omega(*r):
    return WedgeOperator.weighted_sum("d", r)


def spec(h, op, ring, q=0):
    make = simplicial_carrier if op.kind == "partial" else independence_carrier
    return ComplexSpec(make(h), op, q, ring)


def groups(h, op, ring, q=0):
    return {
        g.degree: (g.presentation.free_rank, list(g.presentation.torsion_factors))
        for g in homology_table(spec(h, op, ring, q))
    }


def test_build_segment_complex():
    built = build_complex(spec(SEGMENT, alpha(1, 1, 1), ZZ))
    assert built.basis(0) == [(0,), (1,)]
    assert built.basis(1) == [(0, 1)]
    assert built.basis(-1) == []
    mat = built.matrix(1)
    assert mat.entry_dict() == {(0, 0): -1, (1, 0): 1}
    # no empty edge: the degree-zero boundary is truncated to zero
    assert built.matrix(0).is_zero()


def test_build_independence_complex():
    built = build_complex(spec(L1, omega(1, 1, 1), ZZ))
    assert built.basis(1) == [(0, 1)]
    assert built.basis(2) == [(0, 1, 2)]
    assert built.matrix(1).entry_dict() == {(0, 0): 1}


def test_empty_hypergraph_is_all_zero():
    h = Hypergraph.of(S3, [])
    assert groups(h, alpha(1, 1, 1), ZZ) == {}


def test_segment_homology_matches_reduced_line():
    got = groups(SEGMENT, alpha(1, 1, 1), ZZ)
    assert got == {-1: (0, []), 0: (1, []), 1: (0, [])}


def test_circle_homology_weighted():
    # augmented triangle boundary: reduced circle homology
    got = groups(CIRCLE, alpha(1, 1, 1), ZZ)
    assert got == {-1: (0, []), 0: (0, []), 1: (1, [])}
    # generic nonzero weights do not change the answer
    got = groups(CIRCLE, alpha(1, 2, 3), ZZ)
    assert got == {-1: (0, []), 0: (0, []), 1: (1, [])}


def test_cohomology_torsion_examples():
    got = groups(L1, omega(1, 1, 2), ZZ)
    assert got[2] == (0, [2])
    assert all(v == (0, []) for n, v in got.items() if n != 2)

    got = groups(L2, omega(1, 2, 4), ZZ)
    assert got[2] == (0, [2])
    got = groups(L2, omega(1, 2, 3), ZZ)
    assert got[2] == (0, [])
    # the rank-one kernel in degree one survives any weights
    assert got[1] == (1, [])


def test_cohomology_over_f3():
    got = groups(L1, omega(1, 1, 2), GF(3))
    assert got[2] == (0, [])
    got = groups(L2, omega(1, 2, 4), GF(3))
    assert got[2] == (0, [])


def test_full_power_set_cohomology():
    # the only independence hypergraph containing the empty edge is the
    # full power set; its bottom map sends the empty edge to the weighted
    # vertex sum, and over a field the whole complex is exact
    full = Hypergraph(S3, power_set(S3))
    built = build_complex(spec(full, omega(1, 1, 2), QQ))
    assert built.basis(-1) == [()]
    assert built.matrix(-1).entry_dict() == {(0, 0): 1, (1, 0): 1, (2, 0): 2}
    assert all(
        g.presentation.is_zero for g in homology_table(spec(full, omega(1, 1, 2), QQ))
    )


def test_carrier_validation():
    with pytest.raises(ClassMismatch):
        spec(L1, alpha(1, 1, 1), ZZ)
    with pytest.raises(ClassMismatch):
        spec(SEGMENT, omega(1, 1, 1), ZZ)
    with pytest.raises(SchemaViolation):
        ComplexSpec(
            simplicial_carrier(SEGMENT), WedgeOperator.scalar("partial"), 0, ZZ
        )


def test_higher_arity_grading():
    # arity-three boundary on the full simplicial word module
    op = WedgeOperator.build("partial", 3, [(1, (0, 1, 2))])
    cx = ComplexSpec(simplicial_word_carrier(S3), op, 2, QQ)
    built = build_complex(cx)
    assert cx.degrees() == [-1, 2]
    # rightmost generator first: +(0,1), then -(0,), then -()
    assert built.matrix(2).entry_dict() == {(0, 0): -1}
    assert built.homology(2).presentation.is_zero
    assert built.homology(-1).presentation.is_zero


def test_arity_three_on_edge_carrier():
    # full power set on three vertices, single arity-three monomial with
    # weight 2: the only nonzero matrix is the 1x1 map {s0,s1,s2} -> empty
    # edge with entry -2, leaving Z/2 at the bottom of the offset-2 grid
    full = Hypergraph(S3, power_set(S3))
    op = WedgeOperator.build("partial", 3, [(2, (0, 1, 2))])
    by_q = {}
    for q in (0, 1, 2):
        cx = ComplexSpec(simplicial_carrier(full), op, q, ZZ)
        by_q[q] = {
            g.degree: (g.presentation.free_rank, list(g.presentation.torsion_factors))
            for g in homology_table(cx)
        }
    assert by_q[0] == {0: (3, [])}
    assert by_q[1] == {1: (3, [])}
    assert by_q[2] == {-1: (0, [2]), 2: (0, [])}
    built = build_complex(ComplexSpec(simplicial_carrier(full), op, 2, ZZ))
    assert built.matrix(2).entry_dict() == {(0, 0): -2}


def test_raising_action_beyond_top_degree():
    s = spec(L2, omega(1, 1, 1), QQ)
    mu = WedgeOperator.build("d", 2, [(1, (1, 2))])
    act = operator_action(s, mu)
    # the degree-one class maps into degree three, where the module is zero
    assert act[1].source_rank == 1 and act[1].target_rank == 0
    ident = operator_action(s, WedgeOperator.scalar("d", 1))
    assert ident[1].matrix == ((1,),)


def test_operator_action_scalars():
    s = spec(SEGMENT, alpha(1, 1, 1), QQ)
    ident = operator_action(s, WedgeOperator.scalar("partial", 1))
    assert ident[0].matrix == ((1,),)
    tripled = operator_action(s, WedgeOperator.scalar("partial", 3))
    assert tripled[0].matrix == ((3,),)


def test_operator_action_two_step_composition():
    s = spec(CIRCLE, alpha(1, 1, 1), QQ)
    beta = WedgeOperator.build("partial", 2, [(1, (0, 1))])
    act = operator_action(s, beta)
    # chain level: the action applied to the degree-one cycle
    z = (
        FreeChain.single(QQ, (1, 2))
        - FreeChain.single(QQ, (0, 2))
        + FreeChain.single(QQ, (0, 1))
    )
    val = wedge_apply(beta, z, FULL)
    assert val == FreeChain(QQ, -1, {(): -1})
    # its class in degree -1 dies (the group vanishes over a field)
    assert act[1].source_rank == 1 and act[1].target_rank == 0


def test_operator_action_functoriality_random():
    rng = random.Random(47)
    for _ in range(25):
        n = rng.randint(2, 4)
        vs = VertexSet.of(*[f"v{i}" for i in range(n)])
        pool = sorted(power_set(vs), key=lambda e: (len(e), e))
        seed = [e for e in pool if rng.random() < 0.4]
        h = closure(Hypergraph(vs, frozenset(seed)), ClosureOp.DELTA_UP)
        op = alpha(*[rng.randint(1, 3) for _ in range(n)])
        s = ComplexSpec(simplicial_carrier(h), op, 0, QQ)
        b1 = WedgeOperator.build(
            "partial", 2, [(rng.randint(-2, 2), tuple(sorted(rng.sample(range(n), 2))))]
        )
        b2 = WedgeOperator.build(
            "partial", 2, [(rng.randint(-2, 2), tuple(sorted(rng.sample(range(n), 2))))]
        )
        act1 = operator_action(s, b1)
        act12 = operator_action(s, b1.wedge(b2))
        act2 = operator_action(s, b2)
        for deg, m12 in act12.items():
            inner = act2[deg]
            outer = act1.get(inner.target_degree)
            if outer is None:
                assert m12.target_rank == 0
                continue
            assert outer.compose(inner, QQ).matrix == m12.matrix


def test_inclusion_zero_map_into_vanishing_group():
    maps = inclusion_induced(SEGMENT, CIRCLE, alpha(1, 1, 1), 0, QQ)
    assert maps[0].source_rank == 1
    assert maps[0].target_rank == 0
    assert maps[1].source_rank == 0 and maps[1].target_rank == 1


def test_inclusion_identity():
    maps = inclusion_induced(CIRCLE, CIRCLE, alpha(1, 1, 1), 0, QQ)
    assert maps[1].matrix == ((1,),)


def test_inclusion_requires_containment():
    with pytest.raises(NotIncluded):
        inclusion_induced(CIRCLE, SEGMENT, alpha(1, 1, 1), 0, QQ)


def test_inclusion_cohomology_over_f3():
    maps = inclusion_induced(L1, L2, omega(1, 1, 2), 0, GF(3))
    assert maps[2].source_rank == 0 and maps[2].target_rank == 0
    # over Q both degree-two groups vanish as well, and the degree-one
    # kernel class of the larger family receives nothing
    maps = inclusion_induced(L1, L2, omega(1, 1, 2), 0, QQ)
    assert maps[1].source_rank == 0 and maps[1].target_rank == 1


def test_inclusion_commutes_with_action():
    rng = random.Random(53)
    for _ in range(20):
        n = rng.randint(2, 4)
        vs = VertexSet.of(*[f"v{i}" for i in range(n)])
        pool = sorted(power_set(vs), key=lambda e: (len(e), e))
        small_seed = [e for e in pool if rng.random() < 0.3]
        extra = [e for e in pool if rng.random() < 0.3]
        small = closure(Hypergraph(vs, frozenset(small_seed)), ClosureOp.DELTA_UP)
        large = closure(
            Hypergraph(vs, small.edges | frozenset(extra)), ClosureOp.DELTA_UP
        )
        if small.has_empty_edge != large.has_empty_edge:
            large = large.with_edges(large.edges | {()})
            small = small.with_edges(small.edges | {()})
        op = alpha(*[rng.randint(1, 3) for _ in range(n)])
        beta = WedgeOperator.build(
            "partial", 2, [(1, tuple(sorted(rng.sample(range(n), 2))))]
        )
        incl = inclusion_induced(small, large, op, 0, QQ)
        act_small = operator_action(ComplexSpec(simplicial_carrier(small), op, 0, QQ), beta)
        act_large = operator_action(ComplexSpec(simplicial_carrier(large), op, 0, QQ), beta)
        for deg, m in act_small.items():
            tgt = m.target_degree
            if tgt < -1:
                continue
            lhs = act_large[deg].compose(incl[deg], QQ)
            rhs = incl.get(tgt)
            if rhs is None:
                assert all(not row or set(row) == {QQ.zero} for row in lhs.matrix)
                continue
            assert lhs.matrix == rhs.compose(m, QQ).matrix


def test_mayer_vietoris_two_segments():
    a = Hypergraph.of(S3, [[0], [1], [0, 1]])
    b = Hypergraph.of(S3, [[1], [2], [1, 2]])
    les = mayer_vietoris(a, b, alpha(1, 1, 1), 0, QQ)
    assert les.all_exact
    by_label = {
        (node.label, node.degree): node.free_rank for node in les.nodes
    }
    assert by_label[("union", 0)] == 1
    assert by_label[("sum", 0)] == 2
    assert by_label[("intersection", 0)] == 1
    assert by_label[("union", 1)] == 0
    total = sum(
        (-1) ** i * n.free_rank
        for i, n in enumerate(les.nodes)
    )
    assert total == 0


def test_mayer_vietoris_identical_pair_degenerates():
    les = mayer_vietoris(CIRCLE, CIRCLE, alpha(1, 1, 1), 0, QQ)
    assert les.all_exact


def test_mayer_vietoris_disjoint_edges_split():
    a = Hypergraph.of(S3, [[0]])
    b = Hypergraph.of(S3, [[1], [2], [1, 2]])
    les = mayer_vietoris(a, b, alpha(1, 1, 1), 0, QQ)
    assert les.all_exact
    ranks = {(n.label, n.degree): n.free_rank for n in les.nodes}
    assert ranks[("union", 0)] == ranks[("sum", 0)]


def test_mayer_vietoris_rejects_empty_edge_mismatch():
    a = Hypergraph.of(S3, [[], [0]])
    b = Hypergraph.of(S3, [[1]])
    with pytest.raises(ClassMismatch):
        mayer_vietoris(a, b, alpha(1, 1, 1), 0, QQ)


def test_mayer_vietoris_cohomology():
    les = mayer_vietoris(L1, L2, omega(1, 1, 1), 0, QQ)
    assert les.all_exact


def test_duality_single_vertex():
    report = duality_check(VertexSet.of("s"), [1], 0, 5)
    assert report.all_equal
    assert all(x == 0 for _, x, _ in report.degrees)


def test_duality_two_vertices():
    report = duality_check(VertexSet.of("a", "b"), [1, 1], 0, 4)
    assert report.all_equal
    assert [n for n, _, _ in report.degrees] == [-1, 0, 1, 2, 3]


def test_duality_rational_weights():
    report = duality_check(
        VertexSet.of("a", "b", "c"), [Fraction(1, 2), 2, Fraction(3, 5)], 0, 3
    )
    assert report.all_equal


def test_duality_betti_against_independent_elimination():
    # cross-check one instance against a direct Fraction row reduction
    vs = VertexSet.of("a", "b")
    z = [Fraction(1), Fraction(1)]
    report = duality_check(vs, z, 0, 4)

    def words(n):
        out = [()]
        for _ in range(n + 1):
            out = [w + (v,) for w in out for v in range(2)]
        return out

    def alpha_matrix(n):
        src = words(n)
        tgt = {w: i for i, w in enumerate(words(n - 1))}
        rows = [[Fraction(0)] * len(src) for _ in tgt]
        for j, w in enumerate(src):
            for i in range(n + 1):
                sub = w[:i] + w[i + 1 :]
                rows[tgt[sub]][j] += (-1) ** i * z[w[i]]
        return rows

    def frac_rank(rows):
        rows = [r[:] for r in rows]
        rank = 0
        cols = len(rows[0]) if rows else 0
        r = 0
        for c in range(cols):
            piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            rows[r] = [v / rows[r][c] for v in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            r += 1
            rank += 1
        return rank

    expected = {}
    for n in range(0, 4):
        dim = 2 ** (n + 1)
        expected[n] = dim - frac_rank(alpha_matrix(n)) - frac_rank(alpha_matrix(n + 1))
    got = {n: x for n, x, _ in report.degrees if n >= 0}
    assert got == expected


def test_adjointness_of_weighted_operators():
    rng = random.Random(59)
    z = [Fraction(rng.randint(1, 4)), Fraction(rng.randint(1, 4)), Fraction(2, 3)]
    a = WedgeOperator.weighted_sum("partial", z)
    w = WedgeOperator.weighted_sum("d", z)

    def words(maxlen):
        out = [()]
        acc = [()]
        for _ in range(maxlen):
            acc = [t + (v,) for t in acc for v in range(3)]
            out.extend(acc)
        return out

    ws = words(3)
    for xi in ws:
        for eta in ws:
            if len(xi) != len(eta) + 1:
                continue
            cx = FreeChain.single(QQ, xi)
            ce = FreeChain.single(QQ, eta)
            lhs = delta_pairing(wedge_apply(a, cx, FULL), ce)
            rhs = delta_pairing(cx, wedge_apply(w, ce, FULL))
            assert lhs == rhs


def test_adjointness_arity_three_sign():
    # reversal of three anticommuting generators contributes the sign -1
    z = [Fraction(1), Fraction(1), Fraction(1)]
    a = WedgeOperator.build("partial", 3, [(1, (0, 1, 2))])
    w = WedgeOperator.build("d", 3, [(-1, (0, 1, 2))])
    for xi in [(0, 1, 2), (2, 1, 0), (0, 2, 1)]:
        cx = FreeChain.single(QQ, xi)
        ce = FreeChain(QQ, -1, {(): 1})
        lhs = delta_pairing(wedge_apply(a, cx, FULL), ce)
        rhs = delta_pairing(cx, wedge_apply(w, ce, FULL))
        assert lhs == rhs


def test_word_module_complex_agrees_with_edge_complex():
    # the edge complex of a simplicial complex is the sub-block of the
    # full increasing-word complex spanned by its edges
    rng = random.Random(61)
    for _ in range(10):
        n = rng.randint(2, 4)
        vs = VertexSet.of(*[f"v{i}" for i in range(n)])
        pool = sorted(power_set(vs), key=lambda e: (len(e), e))
        h = closure(
            Hypergraph(vs, frozenset(e for e in pool if rng.random() < 0.35)),
            ClosureOp.DELTA_UP,
        )
        op = alpha(*[rng.randint(1, 3) for _ in range(n)])
        edge_cx = build_complex(ComplexSpec(simplicial_carrier(h), op, 0, QQ))
        word_cx = build_complex(ComplexSpec(simplicial_word_carrier(vs), op, 0, QQ))
        for deg in edge_cx.spec.degrees():
            rows = {w: i for i, w in enumerate(word_cx.basis(deg - 1))}
            cols = {w: j for j, w in enumerate(word_cx.basis(deg))}
            sub = {}
            for (i, j), v in word_cx.matrix(deg).entries:
                sub[(word_cx.basis(deg - 1)[i], word_cx.basis(deg)[j])] = v
            for (i, j), v in edge_cx.matrix(deg).entries:
                key = (edge_cx.basis(deg - 1)[i], edge_cx.basis(deg)[j])
                assert sub.get(key) == v
