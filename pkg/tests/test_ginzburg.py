"""Tests for R_n, Calabi-Yau completions, Ginzburg presentations, Jacobi bases.

The two R_n routes (structure constants from the multiplication law, and the
quotient presentation reduced by linear algebra) are compared product by
product; the completion fixtures are checked against hand-expanded
differentials, and the Koszul pair comparison supplies the cross-pipeline
oracle at the end.
"""

import warnings

import pytest

from quiverdg.dgalgebra import (
    InconsistentPresentation,
    cohomology,
    h0_algebra,
    realize,
    verify_differential,
)
from quiverdg.ginzburg import (
    CharacteristicWarning,
    NonzeroArrowDegree,
    ShortCycleWarning,
    build_rn,
    cy_completion,
    ginzburg,
    jacobi_basis,
    rn_presentation,
    verify_koszul_pair,
)
from quiverdg.fields import GroundField
from quiverdg.quiver import (
    Arrow,
    PathAlgebraElement,
    QuiverPresentation,
    Superpotential,
)

QQ = GroundField(0)


def a2_quiver():
    return QuiverPresentation(["1", "2"], [Arrow("a", "1", "2", 0)])


def one_loop():
    return QuiverPresentation(["v"], [Arrow("x", "v", "v", 0)])


def three_cycle():
    return QuiverPresentation(
        ["1", "2", "3"],
        [Arrow("x", "1", "2", 0), Arrow("y", "2", "3", 0),
         Arrow("z", "3", "1", 0)])


def test_rn_of_a2_matches_the_multiplication_law():
    # Six basis elements: two idempotents, the arrow in degree 1, its dual
    # in degree n-1, and two socle elements in degree n.
    for n in (2, 5):
        rn = build_rn(a2_quiver(), n)
        alg = rn.algebra
        assert alg.dim == 6
        assert dict(zip(alg.basis, alg.degrees)) == {
            "e_1": 0, "e_2": 0, "a": 1, "a^": n - 1, "t_1": n, "t_2": n}
        assert alg.verify() == []
        assert rn.pairing == {("a", "a^"): "1"}
        i = {label: k for k, label in enumerate(alg.basis)}
        one = alg.field.one()
        # a * a^ contracts to the socle at the tail of a, a^ * a at its head
        assert alg.mul({i["a"]: one}, {i["a^"]: one}) == {i["t_1"]: one}
        assert alg.mul({i["a^"]: one}, {i["a"]: one}) == {i["t_2"]: one}
        assert alg.mul({i["e_1"]: one}, {i["e_1"]: one}) == {i["e_1"]: one}
        assert alg.mul({i["e_1"]: one}, {i["a"]: one}) == {i["a"]: one}
        assert alg.mul({i["a"]: one}, {i["e_1"]: one}) == {}
        assert alg.mul({i["t_1"]: one}, {i["t_1"]: one}) == {}
        assert alg.mul({i["t_1"]: one}, {i["a"]: one}) == {}


def test_rn_is_coconnective_with_semisimple_degree_zero():
    for n in (2, 3, 5):
        rn = build_rn(a2_quiver(), n)
        table = dict(zip(rn.algebra.basis, rn.algebra.degrees))
        assert min(table.values()) == 0
        assert [label for label, d in table.items() if d == 0] == ["e_1", "e_2"]
        assert all(d >= 1 for label, d in table.items()
                   if not label.startswith("e_"))


def test_rn_requires_degree_zero_arrows():
    q = QuiverPresentation(["v"], [Arrow("x", "v", "v", 1)])
    with pytest.raises(NonzeroArrowDegree):
        build_rn(q, 2)
    with pytest.raises(NonzeroArrowDegree):
        cy_completion(q, 2)


def test_rn_presentation_agrees_with_structure_constants():
    # Weight bound 4 certifies the truncation (socle weight 2 plus one more
    # generator stays under it), so every product below is computed exactly
    # and can be compared with the direct structure constants.
    for quiver, n in ((a2_quiver(), 2), (one_loop(), 3)):
        rn = build_rn(quiver, n)
        t = realize(rn_presentation(quiver, n), (0, 2 * n), 4)
        assert t.certified_finite_dimensional
        assert sum(t.dims().values()) == rn.algebra.dim
        quiver_of = t.presentation.quiver
        elements = {}
        for label in rn.algebra.basis:
            if label.startswith("e_"):
                path = quiver_of.trivial(label[2:])
            else:
                path = quiver_of.path([label])
            elements[label] = t.qb.reduce(PathAlgebraElement.from_path(
                path, t.field.one()))
        index = {k: label for k, label in enumerate(rn.algebra.basis)}
        one = t.field.one()
        for left in rn.algebra.basis:
            for right in rn.algebra.basis:
                direct = rn.algebra.mul(
                    {rn.algebra.basis.index(left): one},
                    {rn.algebra.basis.index(right): one})
                expected = PathAlgebraElement.zero()
                for k, c in direct.items():
                    expected = expected + c * elements[index[k]]
                assert t.product(elements[left], elements[right]) == expected


def test_cy_completion_of_a2_gives_the_preprojective_algebra():
    # H^0 of Pi_2(A_2) is the preprojective algebra: e_1, e_2, a, a^ survive
    # while both length-2 cycles are killed by dz; the radical is spanned by
    # the two arrows and the quotient is k x k.
    pi2 = cy_completion(a2_quiver(), 2)
    assert {g.name: g.degree for g in pi2.generators} == {
        "a": 0, "a^": 0, "z_1": -1, "z_2": -1}
    scratch = pi2.quiver
    assert pi2.differential["z_1"] == PathAlgebraElement.from_path(
        scratch.path(["a", "a^"]), QQ.one())
    assert pi2.differential["z_2"] == -PathAlgebraElement.from_path(
        scratch.path(["a^", "a"]), QQ.one())
    t = realize(pi2, (-1, 0), 4)
    assert cohomology(t, (0, 0)).dims == {0: 4}
    h0 = h0_algebra(t)
    assert h0.algebra.dim == 4
    assert h0.algebra.verify() == []
    rad = h0.algebra.radical()
    assert rad.dimension == 2
    assert rad.quotient.dim == 2
    assert rad.quotient.is_commutative()
    assert rad.quotient.radical().dimension == 0
    # the two vertex classes project to orthogonal idempotents splitting 1
    one = QQ.one()
    e1 = PathAlgebraElement.from_path(scratch.trivial("1"), one)
    e2 = PathAlgebraElement.from_path(scratch.trivial("2"), one)
    u = rad.project({h0.representatives.index(e1): one})
    v = rad.project({h0.representatives.index(e2): one})
    assert rad.quotient.mul(u, u) == u
    assert rad.quotient.mul(v, v) == v
    assert rad.quotient.mul(u, v) == {}
    assert rad.quotient.unit == {k: u.get(k, 0) + v.get(k, 0)
                                 for k in set(u) | set(v)}


def test_cy_completion_of_point_is_polynomial_on_one_loop():
    point = QuiverPresentation(["v"], [])
    for n in (1, 2, 3):
        pres = cy_completion(point, n)
        assert [(g.name, g.degree) for g in pres.generators] == [
            ("z_v", 1 - n)]
        assert pres.differential == {}


def test_cy_completion_of_one_loop_at_n3():
    pres = cy_completion(one_loop(), 3)
    assert {g.name: g.degree for g in pres.generators} == {
        "x": 0, "x^": -1, "z_v": -2}
    scratch = pres.quiver
    expected = (PathAlgebraElement.from_path(scratch.path(["x", "x^"]), QQ.one())
                - PathAlgebraElement.from_path(scratch.path(["x^", "x"]), QQ.one()))
    assert pres.differential == {"z_v": expected}
    assert verify_differential(realize(pres, (-2, 0), 4)).ok


def test_ginzburg_of_cubic_loop():
    w = Superpotential(one_loop(), {("x", "x", "x"): 1})
    g = ginzburg(one_loop(), w)
    assert {gen.name: gen.degree for gen in g.generators} == {
        "x": 0, "x^": -1, "z_v": -2}
    assert g.weights == {"x": 1, "x^": 2, "z_v": 3}
    scratch = g.quiver
    assert g.differential["x^"] == PathAlgebraElement.from_path(
        scratch.path(["x", "x"]), QQ.of(3))
    commutator = (PathAlgebraElement.from_path(scratch.path(["x", "x^"]), QQ.one())
                  - PathAlgebraElement.from_path(scratch.path(["x^", "x"]), QQ.one()))
    assert g.differential["z_v"] == commutator
    # d^2 z = 3(x*x^2 - x^2*x) = 0 is what verify_differential certifies
    assert verify_differential(realize(g, (-2, 0), 5)).ok


def test_ginzburg_of_zero_potential_is_the_3cy_completion():
    w0 = Superpotential(one_loop(), {})
    g = ginzburg(one_loop(), w0)
    p3 = cy_completion(one_loop(), 3)
    assert g.differential == p3.differential
    assert g.weights == p3.weights
    assert [(a.name, a.degree) for a in g.generators] == [
        (a.name, a.degree) for a in p3.generators]


def test_ginzburg_of_three_cycle():
    # Rotating xyz past each arrow: dx^ = yz, dy^ = zx, dz^ = xy.
    w = Superpotential(three_cycle(), {("x", "y", "z"): 1})
    g = ginzburg(three_cycle(), w)
    scratch = g.quiver
    one = QQ.one()
    assert g.differential["x^"] == PathAlgebraElement.from_path(
        scratch.path(["y", "z"]), one)
    assert g.differential["y^"] == PathAlgebraElement.from_path(
        scratch.path(["z", "x"]), one)
    assert g.differential["z^"] == PathAlgebraElement.from_path(
        scratch.path(["x", "y"]), one)
    assert verify_differential(realize(g, (-2, 0), 4)).ok


def test_ginzburg_warnings_and_curvature_rejection():
    loop = one_loop()
    w3 = Superpotential(loop, {("x", "x", "x"): 1}, field=GroundField(3))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        ginzburg(loop, w3)
    assert [c.category for c in caught] == [CharacteristicWarning]
    two = QuiverPresentation(
        ["1", "2"], [Arrow("u", "1", "2", 0), Arrow("v", "2", "1", 0)])
    w2 = Superpotential(two, {("u", "v"): 1})
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        ginzburg(two, w2)
    assert [c.category for c in caught] == [ShortCycleWarning]
    # a length-1 cycle asks for a vertex term in d(x^): curvature, refused
    w1 = Superpotential(loop, {("x",): 1})
    with pytest.raises(InconsistentPresentation, match="curvature"):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            ginzburg(loop, w1)


def test_jacobi_basis_of_cubic_loop():
    loop = one_loop()
    w = Superpotential(loop, {("x", "x", "x"): 1})
    qb = jacobi_basis(loop, w, 6)
    assert [str(p) for p in qb.basis] == ["e_v", "x"]
    w3 = Superpotential(loop, {("x", "x", "x"): 1}, field=GroundField(3))
    assert len(jacobi_basis(loop, w3, 4)) == 5
    w0 = Superpotential(loop, {})
    assert len(jacobi_basis(loop, w0, 4)) == 5
    with pytest.raises(ValueError, match="length bound"):
        jacobi_basis(loop, w, -1)


def test_jacobi_count_equals_h0_dimension():
    # Jacobi algebra of the 3-cycle: all length-2 paths die, leaving the
    # three idempotents and three arrows; H^0 of the Ginzburg realization
    # must see the same six classes.
    w = Superpotential(three_cycle(), {("x", "y", "z"): 1})
    assert len(jacobi_basis(three_cycle(), w, 4)) == 6
    g = ginzburg(three_cycle(), w)
    t = realize(g, (-1, 0), 4)
    assert h0_algebra(t).algebra.dim == 6
    loop = one_loop()
    wx = Superpotential(loop, {("x", "x", "x"): 1})
    t_loop = realize(ginzburg(loop, wx), (-1, 0), 4)
    assert h0_algebra(t_loop).algebra.dim == len(jacobi_basis(loop, wx, 4))


def test_koszul_pair_for_point_and_a2():
    point = QuiverPresentation(["v"], [])
    report = verify_koszul_pair(point, 3, 4, (-4, 0))
    assert report.kind == "MatchWithinWindow" and report.all_match
    assert {d: row["completion"] for d, row in report.rows.items()} == {
        -4: 1, -3: 0, -2: 1, -1: 0, 0: 1}
    a2 = a2_quiver()
    report = verify_koszul_pair(a2, 2, 4, (-1, 0))
    assert report.all_match
    assert {d: (row["rn_dual"], row["completion"])
            for d, row in report.rows.items()} == {-1: (4, 4), 0: (4, 4)}
    report = verify_koszul_pair(a2, 3, 4, (0, 0))
    assert report.all_match and report.rows[0]["rn_dual"] == 3
    with pytest.raises(ValueError, match="empty window"):
        verify_koszul_pair(a2, 2, 4, (1, 0))
