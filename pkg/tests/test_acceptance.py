"""The thirteen acceptance criteria, each checked at exact equality.

Every test records one PASS/FAIL line; the lines are repeated in the
pytest terminal summary under "acceptance criteria".
"""
import itertools
import random
import time
from fractions import Fraction

from holgds.classify import FP, HARD, classify_a1b, classify_ternary
from holgds.evaluate import brute_force, eliminate
from holgds.exactnum import (
    ExactMatrix,
    IntPoly,
    QuadExt,
    char_poly,
    eigenvalues_2x2,
    irreducible_mod_p_witness,
    is_rational,
    mat_det,
    sturm_real_root_count,
)
from holgds.gadgets import (
    LADDER_CLASSES,
    RecurrenceSystem,
    builtin_chain,
    builtin_ladder,
    collapse,
    family_member,
    gadgeture,
    iterate,
    ladder_gadgeture,
    transfer_matrix,
)
from holgds.grids import GdsGrid, HolantGrid, Multigraph
from holgds.interpolate import (
    MonomialBasis,
    check_conditions,
    galois_certificate_s5,
    points,
    recover,
    recover_product,
    recover_product_flat,
)
from holgds.reduction import assembled_grid, build_skeleton, evaluate_skeleton, k33, theta_graph
from holgds.signatures import (
    Signature,
    apply_eq3_tensor,
    decompose_eq3_tensor,
    equality,
    gate_signature,
    recursive_a1a_gate,
    symmetric,
    uniform,
)
from holgds.transforms import (
    bipartite_holant,
    double,
    gds_to_holant4,
    holant_to_gds,
    proportionality_factor,
    spectral_substitute,
    swapped_copy,
    symmetric_swap_check,
    times_factorization_check,
    vc_as_gds,
)

from conftest import random_gds_grid, random_holant_grid, random_table

# -- published constants, transcribed independently of the library ---------------------

H0 = [57, 179, 179, 194, 96, 179, 179, 194, 96, 179, 179, 194, 165, 179, 179, 194]

T16_TEXT = """
0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 1 1 1 1 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 1 1 1 1 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1
0 0 1 1 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 1 1 1 1 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 1 1 1 1 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1
0 1 0 1 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 1 1 1 1 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 1 1 1 1 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1
1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 1 1 1 1 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 1 1 1 1 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1
"""
T16 = [[int(x) for x in line.split()] for line in T16_TEXT.strip().splitlines()]

A5 = [[0, 0, 1, 0, 0], [0, 2, 1, 1, 0], [0, 2, 1, 0, 1], [0, 1, 1, 0, 0], [1, 2, 1, 0, 0]]
V5 = [57, 179, 194, 96, 165]
A5_CHAR = IntPoly([-1, -1, 2, 2, 3, -1])  # -x^5 + 3x^4 + 2x^3 + 2x^2 - x - 1

CHAIN_H1 = [0, 1, 1, 1]
CHAIN_T = [[0, 1, 0, 0], [0, 0, 1, 1], [1, 1, 0, 0], [0, 0, 1, 1]]


def m(rows):
    return ExactMatrix.from_rows(rows)


def summary(checks) -> tuple:
    failed = [name for name, ok in checks if not ok]
    return not failed, ("failed: " + ", ".join(failed)) if failed else ""


# -- independent oracles ------------------------------------------------------------------

def vc_by_definition(g: Multigraph) -> int:
    return sum(1 for bits in itertools.product((0, 1), repeat=g.vertex_count)
               if all(bits[a] or bits[b] for a, b in g.edges))


def ds_by_definition(g: Multigraph) -> int:
    closed = [set(g.neighbors(v)) | {v} for v in range(g.vertex_count)]
    return sum(1 for bits in itertools.product((0, 1), repeat=g.vertex_count)
               if all(any(bits[u] for u in closed[v]) for v in range(g.vertex_count)))


def random_bipartite(rnd: random.Random, max_side: int, p: float = 0.6) -> Multigraph:
    while True:
        a, b = rnd.randint(1, max_side), rnd.randint(1, max_side)
        edges = [(u, a + w) for u in range(a) for w in range(b) if rnd.random() < p]
        g = Multigraph(a + b, edges, [0] * a + [1] * b)
        if all(g.degree(v) > 0 for v in range(a + b)):
            return g


# -- criteria -----------------------------------------------------------------------------

def test_criterion_01_ladder_h0(acceptance):
    start = time.perf_counter()
    h0, _ = builtin_ladder()
    got = list(gadgeture(h0, "brute").table)
    elapsed = time.perf_counter() - start
    ok = got == H0 and elapsed < 1.0
    acceptance(1, "ladder H0 gadgeture by brute force", ok, f"{elapsed:.2f}s")


def test_criterion_02_transfer_matrix_and_iterates(acceptance):
    start = time.perf_counter()
    h0, rule = builtin_ladder()
    t = transfer_matrix(rule, 2, 2)
    sys16 = RecurrenceSystem(t, H0)
    checks = [("T16 entries", t.to_rows() == T16)]
    for s in (1, 2):
        brute = list(gadgeture(family_member(h0, rule, s), "brute").table)
        checks.append((f"iterate({s})", iterate(sys16, s) == brute))
    elapsed = time.perf_counter() - start
    checks.append(("runtime", elapsed < 30))
    ok, detail = summary(checks)
    acceptance(2, "16x16 transfer matrix and brute-forced H1, H2", ok, detail or f"{elapsed:.1f}s")


def test_criterion_03_classes_and_collapse(acceptance):
    _, rule = builtin_ladder()
    t = transfer_matrix(rule, 2, 2)
    vec, checks = list(H0), []
    for s in range(5):
        checks.append((f"classes at s={s}", all(len({vec[i] for i in cls}) == 1 for cls in LADDER_CLASSES)))
        vec = t @ vec
    sys5 = collapse(t, H0, LADDER_CLASSES)
    checks.append(("A5", sys5.matrix.to_rows() == A5))
    checks.append(("initial 5-vector", list(sys5.initial) == V5))
    ok, detail = summary(checks)
    acceptance(3, "equality classes for s <= 4 and collapse to A5", ok, detail)


def test_criterion_04_a5_polynomial(acceptance):
    a5 = m(A5)
    f = char_poly(a5)
    real = sturm_real_root_count(f)
    witness = irreducible_mod_p_witness(f, 1000)
    det = mat_det(a5)
    checks = [
        ("char poly", f == A5_CHAR),
        ("real roots", real == 3),
        ("witness prime", witness is not None),
        ("det", det == -1 and det == f.coeffs[0]),
    ]
    ok, detail = summary(checks)
    acceptance(4, "char_poly(A5), Sturm count, irreducibility, det", ok,
               detail or f"real roots {real}, witness {witness}")


def test_criterion_05_simple_chain(acceptance):
    h1, rule = builtin_chain()
    checks = [("H1 column", list(gadgeture(h1).table) == CHAIN_H1),
              ("recurrence matrix", transfer_matrix(rule, 1, 1).to_rows() == CHAIN_T)]
    ok, detail = summary(checks)
    acceptance(5, "simple chain gadgeture and 4x4 recurrence", ok, detail)


def test_criterion_06_product_identity(acceptance):
    start = time.perf_counter()
    rnd = random.Random(6)
    done = bad = 0
    while done < 120:
        h = random_bipartite(rnd, 5)
        if h.vertex_count > 16:
            continue
        sigs = [uniform(Signature(2, h.degree(v), random_table(rnd, 2, h.degree(v))))
                for v in range(h.vertex_count)]
        grid = GdsGrid.build(h, sigs)
        _, om1, om2 = times_factorization_check(grid)
        if brute_force(grid) != om1 * om2:
            bad += 1
        done += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 60
    acceptance(6, "#GDS = Holant(Omega1) * Holant(Omega2) on random uniform instances", ok,
               f"{done} instances, {bad} mismatches, {elapsed:.1f}s")


def test_criterion_07_transforms(acceptance):
    rnd = random.Random(7)
    checks = []
    bad = 0
    for _ in range(60):
        g = random_holant_grid(rnd, 2, max_edges=7)
        bad += brute_force(g) != eliminate(holant_to_gds(g))
    checks.append(("Holant to #GDS", bad == 0))
    bad = 0
    for _ in range(60):
        g = random_gds_grid(rnd, max_n=6)
        bad += brute_force(g) != eliminate(gds_to_holant4(g))
    checks.append(("#GDS to domain-4 Holant", bad == 0))
    path = Multigraph(4, [(0, 1), (1, 2), (2, 3)])
    ds = GdsGrid.build(path, [symmetric([0] + [1] * path.degree(v) + [1]) for v in range(4)])
    checks.append(("domain-4 path", eliminate(gds_to_holant4(ds)) == ds_by_definition(path)))
    for name, g in (("K33", k33()), ("theta", theta_graph())):
        want = vc_by_definition(g)
        checks.append((f"VC {name}", all(brute_force(vc_as_gds(g, v)) == want for v in (1, 2))))
    ok, detail = summary(checks)
    acceptance(7, "Holant/#GDS transforms and vertex-cover constructions", ok, detail)


def test_criterion_08_holant_squared_swap_double(acceptance):
    g = k33()
    checks = []
    for rows in ([[1, 1], [1, 0]], [[1, 2], [3, 1]]):
        f0 = apply_eq3_tensor(m(rows))
        gds = GdsGrid.build(g, [uniform(f0)] * g.vertex_count)
        hol = bipartite_holant(g, f0, equality(3))
        checks.append((f"Cor M={rows}", brute_force(gds) == brute_force(hol) ** 2))
    rnd = random.Random(8)
    c4 = Multigraph(4, [(0, 2), (2, 1), (1, 3), (3, 0)], (0, 0, 1, 1), ((0, 2), (1, 3)))
    paired_k33 = Multigraph(6, g.edges, (0, 0, 0, 1, 1, 1), ((0, 3), (1, 4), (2, 5)))
    bad = 0
    for _ in range(10):
        sigs = [Signature(2, 2, random_table(rnd, 2, 2)) for _ in range(4)]
        a, b = symmetric_swap_check(HolantGrid.build(c4, sigs), "brute")
        bad += a != b
        left, right = (Signature(2, 3, random_table(rnd, 2, 3)) for _ in range(2))
        a, b = symmetric_swap_check(HolantGrid.build(paired_k33, [left] * 3 + [right] * 3), "brute")
        bad += a != b
    checks.append(("swap", bad == 0))
    f = symmetric([2, 1, 1, 1])
    for name, h in (("theta", theta_graph()), ("K33", g)):
        whole = brute_force(bipartite_holant(double(h), f, equality(3)))
        parts = brute_force(bipartite_holant(h, f, equality(3))) * \
            brute_force(bipartite_holant(swapped_copy(h), f, equality(3)))
        checks.append((f"double {name}", whole == parts))
    ok, detail = summary(checks)
    acceptance(8, "#GDS = Holant^2, swap equality and doubled-graph product", ok, detail)


def test_criterion_09_spectral_numerics(acceptance):
    n = m([[4, 5], [6, 7]])
    l1, l2 = eigenvalues_2x2(n)
    r = l2 - l1
    x = m([[-1, 0], [1, 1]]) @ spectral_substitute(n, (-19 + r, -19 - r), (l2, l1))
    back = decompose_eq3_tensor(symmetric([0, 1, 1, 1]))
    checks = [
        ("char poly", char_poly(n) == IntPoly([-2, -11, 1])),
        ("eigenvalues", (l1, l2) == (QuadExt(Fraction(11, 2), Fraction(-1, 2), 129),
                                     QuadExt(Fraction(11, 2), Fraction(1, 2), 129))),
        ("rational product", all(is_rational(v) for v in x.entries)),
        ("proportional", proportionality_factor(x, m([[11, -5], [-5, -3]])) is not None),
        ("tensor", apply_eq3_tensor(m([[11, -5], [-5, -3]])).symmetric_values()
         == [2 * v for v in (603, -340, 115, -76)]),
        ("decomposition", back is not None and back.to_rows() == [[-1, 0], [1, 1]]),
    ]
    ok, detail = summary(checks)
    acceptance(9, "[[4,5],[6,7]] spectral substitution and (=3) M^x3 tensors", ok, detail)


def test_criterion_10_recursive_gate(acceptance):
    samples = [Fraction(2), Fraction(3), Fraction(-1, 2), Fraction(5, 3), Fraction(-7, 4),
               Fraction(1, 9), Fraction(4), Fraction(-3), Fraction(11, 5), Fraction(13, 7)]
    bad = []
    for a in samples:
        mm = gate_signature(recursive_a1a_gate(a)).matrix(1)
        p, q = a ** 3 + 1, a ** 2 + a
        e1, e2 = (a - 1) ** 2 * (a + 1), (a ** 2 + 1) * (a + 1)
        ok = mm.to_rows() == [[p, q], [q, p]] and mat_det(mm) == (a ** 2 - 1) ** 2 * (a ** 2 + 1)
        # both values are roots of det(M - x I) and they account for the trace
        ok = ok and all((p - e) ** 2 - q * q == 0 for e in (e1, e2)) and e1 + e2 == 2 * p
        if not ok:
            bad.append(str(a))
    acceptance(10, "[a,1,a] recursive gate matrix, det and eigenvalues", not bad,
               f"{len(samples)} values of a" + (f", failed at {bad}" if bad else ""))


def test_criterion_11_interpolation(acceptance):
    rnd = random.Random(11)
    certified = bad = 0
    while certified < 100:
        k, n = rnd.randint(1, 5), rnd.randint(0, 4)
        if MonomialBasis.expected_size(k, n) > 35:
            continue
        sys = RecurrenceSystem(m([[rnd.randint(-3, 3) for _ in range(k)] for _ in range(k)]),
                               [rnd.randint(-4, 4) for _ in range(k)])
        if not check_conditions(sys, n)["full_rank"]:
            continue
        basis = MonomialBasis(k, n)
        planted = {e: Fraction(rnd.randint(-20, 20), rnd.randint(1, 3)) for e in basis}
        values = [sum(planted[e] * c for e, c in zip(basis, basis.evaluate_row(p)))
                  for p in points(sys, len(basis))]
        bad += recover(values, sys, n).values != planted
        certified += 1
    sys_x = RecurrenceSystem(m([[2, 1], [0, 3]]), (0, 1))
    sys_y = RecurrenceSystem(m([[1, 1], [1, 2]]), (1, 0))
    bx, by = MonomialBasis(2, 2), MonomialBasis(2, 1)
    planted = {ei + ej: rnd.randint(0, 9) for ei in bx for ej in by}

    def h(x, y):
        return sum(c * x[0] ** e[0] * x[1] ** e[1] * y[0] ** e[2] * y[1] ** e[3] for e, c in planted.items())

    grid = [[h(x, y) for y in points(sys_y, len(by))] for x in points(sys_x, len(bx))]
    nested = recover_product(grid, sys_x, sys_y, (2, 1))
    flat = recover_product_flat(grid, sys_x, sys_y, (2, 1))
    cert = galois_certificate_s5(m(A5))
    checks = [("plant and recover", bad == 0),
              ("nested = flat", nested.values == flat.values == planted),
              ("Galois certificate", cert.ok and cert.witness_prime is not None)]
    ok, detail = summary(checks)
    acceptance(11, "interpolation recovery and the S5 certificate", ok,
               detail or f"{certified} instances, witness prime {cert.witness_prime}")


def test_criterion_12_theta_reduction(acceptance, theta_report):
    r = theta_report
    sk = build_skeleton(theta_graph(), [0])
    cross = all(evaluate_skeleton(sk, ladder_gadgeture(s), ladder_gadgeture(t))
                == eliminate(assembled_grid(sk, s, t)) for s, t in itertools.product((0, 1), repeat=2))
    checks = [
        ("1050 evaluations", r.evaluations == 1050 and len(r.table.values) == 1050),
        ("held-out values", len(r.held_out) >= 5 and r.residuals_zero),
        ("nonnegative integer coefficients", r.coefficients_nonnegative_integers
         and all(isinstance(c, int) and c >= 0 for c in r.table.values.values())),
        ("flat mod-p check", r.flat_check is True),
        ("skeleton vs full elimination", cross),
        ("vertex-cover oracle", r.vc_oracle == vc_by_definition(theta_graph()) == 3),
        ("runtime", r.seconds < 600),
    ]
    ok, detail = summary(checks)
    outcome = "agrees" if r.agreement else "documented discrepancy"
    acceptance(12, "end-to-end reduction on the theta graph", ok,
               detail or f"{r.seconds:.1f}s, selected sum {r.selected_sum} vs #VC {r.vc_oracle}: {outcome}")


def test_criterion_13_classifier(acceptance):
    def verdict(v):
        return v.label, v.case

    checks = [
        ("[1,0,0,5]", verdict(classify_ternary([1, 0, 0, 5])) == (FP, "Gen-Eq")),
        ("[1,2,4,8]", verdict(classify_ternary([1, 2, 4, 8])) == (FP, "degenerate")),
        ("[1,0,1,0]", verdict(classify_ternary([1, 0, 1, 0])) == (FP, "affine")),
        ("[0,1,1,1]", classify_ternary([0, 1, 1, 1]).label == HARD
         and classify_ternary([0, 1, 1, 1], planar=True).label == HARD),
        ("[a,b,b,a] planar", all(classify_ternary([a, b, b, a], planar=True).label == FP
                                 for a, b in ((2, 3), (5, -1), (Fraction(1, 2), 7)))),
        ("a=2, b=1/2", verdict(classify_a1b(2, Fraction(1, 2))) == (FP, "X=1")),
        ("a=b=2", verdict(classify_a1b(2, 2, planar=True)) == (FP, "X^3=Z")
         and classify_a1b(2, 2, planar=True).planar_only
         and classify_a1b(2, 2).label == HARD),
    ]
    ok, detail = summary(checks)
    acceptance(13, "classifier truth table", ok, detail)
