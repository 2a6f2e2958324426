import random
from fractions import Fraction

from plde.geometry import (CLASS_OPPOSITE_ONLY, CLASS_UNCOVERED, CLASS_USEFUL,
                           all_useful_pairs, classify_module, corner_points,
                           face_parallel_modules, lp_feasible, witness_for_pair)
from plde.lattice import IntLattice

N_CASES = 200

EX1_S = [(0, 0), (0, 1), (1, 0)]
EX2_S = [(0, 1), (1, 0), (1, 1), (2, 0)]
SYS1_S = [(0, 0), (0, 1), (1, 0), (1, 1)]
SYS2_S = [(0, 1), (1, 0), (1, 2), (2, 1)]


def L(*rows, dim=2):
    return IntLattice(dim, rows)


# ----------------------------------------------------------------------
# corners


def test_corner_triangle():
    assert corner_points([(0, 0), (0, 1), (1, 0)]) == {(0, 0), (0, 1), (1, 0)}


def test_corner_collinear_midpoint():
    assert corner_points([(0, 0), (1, 0), (2, 0)]) == {(0, 0), (2, 0)}


def test_corner_quadrilateral():
    assert corner_points(EX2_S) == set(EX2_S)


def test_non_corners_are_convex_combinations():
    rng = random.Random(501)
    for _ in range(60):
        pts = list({(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(rng.randint(3, 6))})
        if len(pts) < 3:
            continue
        corners = corner_points(pts)
        for p in pts:
            if p in corners:
                continue
            others = [s for s in pts if s != p]
            m = len(others)
            cons = [([Fraction(1)] * m, "==", 1)]
            for c in range(2):
                cons.append(([Fraction(others[i][c]) for i in range(m)], "==", p[c]))
            for i in range(m):
                row = [Fraction(0)] * m
                row[i] = Fraction(1)
                cons.append((row, ">=", 0))
            assert lp_feasible(cons, m) is not None


# ----------------------------------------------------------------------
# exact feasibility


def test_lp_infeasible():
    assert lp_feasible([((1,), ">=", 1), ((-1,), ">=", 0)], 1) is None


def test_lp_with_equality():
    sol = lp_feasible([((1, 1), "==", 0), ((1, 0), ">=", 1)], 2)
    assert sol is not None and sol[0] + sol[1] == 0 and sol[0] >= 1


def test_lp_witness_system():
    # covector for the square's diagonal pair, orthogonal to (1,-1)
    cons = [((1, -1), "==", 0)]
    for s in SYS1_S:
        if s != (0, 0):
            cons.append((s, ">=", 1))
    sol = lp_feasible(cons, 2)
    assert sol is not None and sol[0] == sol[1] and sol[0] >= 1


def test_lp_solutions_satisfy_all_constraints():
    rng = random.Random(502)
    for _ in range(N_CASES):
        cons = []
        for _ in range(rng.randint(1, 6)):
            row = tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
            rel = rng.choice([">=", "=="])
            cons.append((row, rel, Fraction(rng.randint(-2, 2))))
        sol = lp_feasible(cons, 3)
        if sol is None:
            continue
        for row, rel, rhs in cons:
            val = sum(a * b for a, b in zip(row, sol))
            assert val == rhs if rel == "==" else val >= rhs


# ----------------------------------------------------------------------
# witnesses


def test_witness_square_diagonal():
    cert = witness_for_pair(SYS1_S, (0, 0), (1, 1), L((1, -1)))
    assert cert is not None
    assert cert.u == (1, 1)
    assert cert.min_face == frozenset([(0, 0)])
    assert cert.max_face == frozenset([(1, 1)])


def test_witness_blocked_by_congruent_max_face():
    assert witness_for_pair(EX1_S, (0, 0), (0, 1), L((1, -1))) is None


def test_witness_skew_module():
    cert = witness_for_pair(EX1_S, (1, 0), (0, 1), L((1, 2)))
    assert cert is not None
    values = {s: sum(a * b for a, b in zip(s, cert.u)) for s in EX1_S}
    assert values[(1, 0)] < values[(0, 0)] < values[(0, 1)]
    assert cert.min_face == frozenset([(1, 0)])
    assert cert.max_face == frozenset([(0, 1)])


def test_witness_certificates_verify_on_random_supports():
    rng = random.Random(503)
    mods = [L((1, -1)), L((1, 0)), L((0, 1)), L((2, 1)), IntLattice.zero(2)]
    done = 0
    while done < N_CASES:
        pts = list({(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(rng.randint(2, 6))})
        if len(pts) < 2:
            continue
        W = rng.choice(mods)
        corners = sorted(corner_points(pts))
        p = rng.choice(corners)
        p2 = rng.choice([c for c in corners if c != p] or corners)
        if p2 == p:
            continue
        cert = witness_for_pair(pts, p, p2, W)
        if cert is not None:
            cert.check(pts, W)  # raises on any violated postcondition
        done += 1


# ----------------------------------------------------------------------
# classification


def test_classify_golden_cases():
    assert classify_module(EX2_S, L((1, -1))).kind == CLASS_UNCOVERED
    assert classify_module(EX1_S, L((1, -1))).kind == CLASS_OPPOSITE_ONLY
    assert classify_module(SYS1_S, L((1, 0))).kind == CLASS_UNCOVERED
    assert classify_module(SYS1_S, L((0, 1))).kind == CLASS_UNCOVERED
    assert classify_module(SYS1_S, L((1, -1))).kind == CLASS_USEFUL
    assert classify_module(SYS2_S, L((1, 1))).kind == CLASS_UNCOVERED


def test_classify_zero_module_is_useful():
    for pts in (EX1_S, EX2_S, SYS1_S, SYS2_S):
        assert classify_module(pts, IntLattice.zero(2)).kind == CLASS_USEFUL


def test_classify_full_module_is_uncovered():
    assert classify_module(SYS1_S, IntLattice.full(2)).kind == CLASS_UNCOVERED


def test_useful_implies_singleton_faces_in_rank_one():
    # for r=2 and a rank-1 module both certificate faces must be singletons
    rng = random.Random(504)
    mods = [L((1, -1)), L((1, 0)), L((0, 1)), L((1, 1)), L((2, 1))]
    done = 0
    while done < N_CASES:
        pts = list({(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(rng.randint(2, 6))})
        if len(pts) < 2:
            continue
        W = rng.choice(mods)
        cls = classify_module(pts, W)
        if cls.kind == CLASS_USEFUL and W.rank == 1:
            assert len(cls.certificate.min_face) == 1
            assert len(cls.certificate.max_face) == 1
        done += 1


# ----------------------------------------------------------------------
# face-parallel candidates


def test_face_modules_quadrilateral():
    assert face_parallel_modules(EX2_S) == sorted([L((1, 0)), L((1, -1))], key=lambda x: x.key())


def test_face_modules_square():
    assert set(face_parallel_modules(SYS1_S)) == {L((1, 0)), L((0, 1))}


def test_face_modules_segment():
    assert face_parallel_modules([(1, 0), (0, 1)]) == [L((1, -1))]


def test_face_modules_3d():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    mods = face_parallel_modules(pts)
    facet = IntLattice(3, [(1, 0, 0), (0, 1, 0)])
    assert facet in mods
    assert any(m.rank == 1 for m in mods)


def test_all_useful_pairs_contains_both_orientations():
    certs = all_useful_pairs(SYS1_S, L((1, -1)))
    pairs = {(c.p, c.p_prime) for c in certs}
    assert ((0, 0), (1, 1)) in pairs and ((1, 1), (0, 0)) in pairs
