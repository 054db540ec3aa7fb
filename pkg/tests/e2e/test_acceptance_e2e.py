"""
Module: tests.e2e.test_acceptance_e2e
Description: End-to-end acceptance suite: the binary-forms stratification,
             oracle sweeps for the exact core, HN types, the blow-up
             simulator, the sheaf layer and the affine toy quotient

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- pytest: 7.4.3+ - Testing framework
- click: 8.1.7+ - CliRunner for the command-level checks

Usage:
    pytest tests/e2e/test_acceptance_e2e.py -v
    pytest tests/e2e/test_acceptance_e2e.py -v -m "not slow"

Notes:
    - Random suites use fixed seeds; every comparison is exact
    - Oracle sweeps are marked slow
"""

import json
import random
from collections import Counter
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import pytest

from gitstrata.blowup import CASE_PROPER_TRANSFORM, StratumCell, init_state, run
from gitstrata.cli import cli
from gitstrata.convex import min_norm_by_enumeration, min_norm_point
from gitstrata.data_loader import load_weight_system
from gitstrata.hilbert import (
    HilbertPolynomial,
    HNType,
    Ordering,
    beta_of_type,
    limit_sign,
    rudakov_compare,
)
from gitstrata.hkkn import (
    Cocharacter,
    EpsWeight,
    PointSupport,
    index_set,
    is_adapted,
    membership_Z,
    mu,
    stratum_of,
    sym_n_weight_system,
    twist_eps,
    ybar_indices,
)
from gitstrata.p1_config import (
    Configuration,
    Mobius,
    affine_equivalent,
    classify,
    membership_ts,
    optimal_frame,
    quotient_hypotheses,
    to_support,
)
from gitstrata.rational import InnerProduct, QVector
from gitstrata.sheaf import (
    Length2Sheaf,
    SplitBundle,
    beta_of_bundle,
    end_dim,
    hn_filtration,
    is_coprime_on_p1,
    is_indecomposable,
    is_tau_stable,
    stab_dims,
    to_blowup_cells,
)

SIGN_OF = {Ordering.LESS: -1, Ordering.EQUAL: 0, Ordering.GREATER: 1}


def sym_n_file(n: int) -> dict:
    return {
        "dimension": 1,
        "weights": [[str(n - 2 * j)] for j in range(n + 1)],
        "weyl": [[["1"]], [["-1"]]],
        "chamber": [["1"]],
        "adjoint_weights": ["2"],
    }


def expected_betas(n: int) -> list:
    betas = {0} | {2 * i - n for i in range(n // 2 + 1, n + 1)}
    return sorted(str(b) for b in betas)


def all_supports(size: int):
    for k in range(1, size + 1):
        for subset in combinations(range(size), k):
            yield PointSupport(frozenset(subset))


def random_point(rng: random.Random, dim: int) -> QVector:
    return QVector(
        tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(dim))
    )


def random_form(rng: random.Random, dim: int) -> InnerProduct:
    a = [[Fraction(rng.randint(-3, 3)) for _ in range(dim)] for _ in range(dim)]
    return InnerProduct(
        tuple(
            tuple(
                sum((a[k][i] * a[k][j] for k in range(dim)), Fraction(0))
                + (1 if i == j else 0)
                for j in range(dim)
            )
            for i in range(dim)
        )
    )


def random_polynomial(rng: random.Random) -> HilbertPolynomial:
    degree = rng.randint(0, 3)
    lower = [rng.randint(-3, 3) for _ in range(degree)]
    return HilbertPolynomial.of(*lower, rng.randint(1, 3))


def brute_force_affine_equivalent(c1: Configuration, c2: Configuration) -> bool:
    """Try every (a, b) fixed by sending two points of c1 to two points of c2"""
    source, target = c1.affine_values, c2.affine_values
    if len(source) != len(target):
        return False
    wanted = Counter(target)
    x1 = source[0]
    x2 = next(x for x in source if x != x1)
    for y1 in set(target):
        for y2 in set(target):
            if y1 == y2:
                continue
            a = (y2 - y1) / (x2 - x1)
            b = y1 - a * x1
            if Counter(a * x + b for x in source) == wanted:
                return True
    return False


class TestIndexSetFormula:
    """Index sets of binary forms through the CLI"""

    @pytest.mark.parametrize("n", range(2, 11))
    def test_sym_n(self, runner, write_json, isolated_cache, n):
        """Test {0} and 2i - n for n/2 < i <= n"""
        path = write_json(f"sym{n}.json", sym_n_file(n))
        result = runner.invoke(cli, ["index-set", "--input", path, "--no-cache"])

        assert result.exit_code == 0, result.stderr
        assert json.loads(result.stdout)["outputs"]["betas"] == expected_betas(n)

    def test_process_pool_agrees(self, sym_n):
        """Test that the parallel sweep merges to the same set"""
        ws = sym_n(7)
        assert index_set(ws, workers=2) == index_set(ws, workers=1)


class TestStratumOracle:
    """classify against the engine on framed configurations"""

    @pytest.mark.slow
    def test_exhaustive_small_configurations(self):
        """Test every configuration of n <= 6 points from {0, 1, 2, inf}"""
        checked = 0
        for n in range(1, 7):
            ws = sym_n_weight_system(n)
            for combo in combinations_with_replacement(("0", "1", "2", "inf"), n):
                c = Configuration.of(*combo)
                beta = QVector.of(classify(c))
                assert stratum_of(to_support(optimal_frame(c)), ws) == beta
                assert stratum_of(to_support(c), ws)[0] <= beta[0]
                checked += 1
        assert checked == 209


class TestZSignIdentity:
    """mu(x, beta) = -|beta|^2 on Z_beta"""

    @pytest.mark.parametrize("n", range(2, 9))
    def test_sym_n(self, n):
        """Test every nonzero beta and every support in Z_beta"""
        ws = sym_n_weight_system(n)
        for beta in index_set(ws):
            if beta.is_zero():
                continue
            lam = Cocharacter(beta)
            in_z = [x for x in all_supports(ws.size) if membership_Z(x, beta, ws)]
            assert in_z
            for x in in_z:
                assert mu(x, lam, ws) == -ws.ip.norm_sq(beta)

    def test_skew_form(self, example_path):
        """Test the identity under a non-standard inner product"""
        ws = load_weight_system(example_path("weight_systems", "planar_skew_form.json"))
        for beta in index_set(ws):
            if beta.is_zero():
                continue
            for x in all_supports(ws.size):
                if membership_Z(x, beta, ws):
                    assert mu(x, Cocharacter(beta), ws) == -ws.ip.norm_sq(beta)


class TestMinNormOracle:
    """Wolfe against exhaustive face enumeration"""

    @pytest.mark.slow
    def test_random_weight_sets(self):
        """Test 1000 random sets, up to 8 points in dimension up to 4"""
        rng = random.Random(1000)
        for _ in range(1000):
            dim = rng.randint(1, 4)
            points = [random_point(rng, dim) for _ in range(rng.randint(1, 8))]
            ip = random_form(rng, dim)
            assert min_norm_point(points, ip) == min_norm_by_enumeration(points, ip)


class TestRudakovOrder:
    """Closed form against the concrete limit and the preorder laws"""

    def test_random_pairs(self):
        """Test 1000 pairs at (n, m) = (50, 2500)"""
        rng = random.Random(2500)
        for _ in range(1000):
            p, q = random_polynomial(rng), random_polynomial(rng)
            assert SIGN_OF[rudakov_compare(p, q)] == limit_sign(p, q, 50, 2500)

    def test_preorder_laws(self):
        """Test reflexivity, antisymmetry and transitivity"""
        rng = random.Random(50)
        for _ in range(1000):
            p, q, r = (random_polynomial(rng) for _ in range(3))
            assert rudakov_compare(p, p) is Ordering.EQUAL
            pq, qr = SIGN_OF[rudakov_compare(p, q)], SIGN_OF[rudakov_compare(q, r)]
            assert pq == -SIGN_OF[rudakov_compare(q, p)]
            if pq >= 0 and qr >= 0:
                assert SIGN_OF[rudakov_compare(p, r)] >= 0


class TestBetaVectors:
    """beta(n, m, tau) for types of split bundles"""

    def test_random_split_types(self):
        """Test 500 types of HN length at most 3"""
        rng = random.Random(500)
        checked = 0
        while checked < 500:
            degrees = [rng.randint(-3, 3) for _ in range(rng.randint(1, 6))]
            bundle = SplitBundle(tuple(degrees))
            if hn_filtration(bundle).length > 3:
                continue
            n = rng.randint(5, 20)
            vector = beta_of_bundle(bundle, n, n + rng.randint(1, 60))
            values = [value for value, _ in vector.entries]
            assert all(a > b for a, b in zip(values, values[1:]))
            assert vector.trace == 0
            checked += 1

    def test_worked_value(self):
        """Test tau = (t+2, t+1) at (5, 10)"""
        vector = beta_of_type(HNType.parse("t+2;t+1"), 5, 10)
        assert vector.entries == ((Fraction(5, 91), 7), (Fraction(-5, 78), 6))


class TestAdaptedness:
    """Twisted pairings on the closure of Y_beta"""

    @pytest.mark.parametrize("n", range(2, 9))
    def test_twist_is_adapted(self, n):
        """Test every unstable beta below n"""
        ws = sym_n_weight_system(n)
        for i in range(n // 2 + 1, n):
            beta = QVector.of(2 * i - n)
            pairings = twist_eps(ws, beta, Cocharacter(beta), ybar_indices(beta, ws))
            assert is_adapted(pairings)
            assert min(pairings) == EpsWeight.of(0, -ws.ip.norm_sq(beta))
            assert quotient_hypotheses(n, i).holds

    @pytest.mark.parametrize("n", range(2, 9))
    def test_all_points_coincide(self, n):
        """Test that beta = n fails the hypotheses"""
        checks = quotient_hypotheses(n, n)
        assert checks.adapted
        assert checks.constant_stabilisers is False
        assert not checks.holds


class TestBlowupSimulator:
    """Runs on preserving graphs and the hand-traced case 2"""

    def test_sheaf_graphs(self):
        """Test to_blowup_cells outputs for random hom-dimension sets"""
        rng = random.Random(8)
        tau = HNType.parse("t+2;t+1")
        for _ in range(100):
            dims = sorted(rng.sample(range(0, 7), rng.randint(1, 4)))
            records = [
                Length2Sheaf(tau, is_split=split, summands_stable=True, hom_dim=d)
                for d in dims
                for split in ((True, False) if rng.random() < 0.7 else (True,))
            ]
            state = to_blowup_cells(records)
            final, trace = run(state)

            assert len(trace) <= state.d_max - state.d_min
            assert all(r.case == CASE_PROPER_TRANSFORM for r in trace)
            assert all(r.d_max_after < r.d_max_before for r in trace)
            assert final.is_constant
            assert {final.cell(c).ustab_dim for c in final.survivor_ids} == {dims[0]}
            expected = {f"split:d={dims[0]}"} | {
                f"nonsplit:d={dims[0]}"
                for r in records
                if r.hom_dim == dims[0] and not r.is_split
            }
            assert set(final.survivor_ids) == expected

    def test_chained_graph(self):
        """Test fixed cells with flow-ins at several dimensions"""
        cells = []
        for d in (1, 4, 6):
            cells.append(StratumCell(f"F{d}", (EpsWeight.of(0),), ustab_dim=d))
            cells.append(
                StratumCell(
                    f"M{d}", (EpsWeight.of(0), EpsWeight.of(d)), ustab_dim=d, flows_to=f"F{d}"
                )
            )
        final, trace = run(init_state(cells, p_preserves=True))
        assert [r.d_max_before for r in trace] == [6, 4]
        assert final.survivor_ids == ("F1", "M1")

    def test_case_two_hand_trace(self, runner, example_path):
        """Test the recorded r_min on the case-2 example"""
        path = example_path("cell_graphs", "case2.json")
        result = runner.invoke(cli, ["blowup", "--input", path])

        assert result.exit_code == 0, result.stderr
        (record,) = json.loads(result.stdout)["outputs"]["trace"]
        assert record["case"] == "case-2"
        assert record["r_min"] == ["2", "0"]
        assert record["zmin_after"] == ["E1:r=2"]


class TestSheafTheorems:
    """Stability and stabiliser claims on the sheaf fixtures"""

    TYPES = ("t+2;t+1", "t+3;t+1", "2t+3;t+1", "t+1;2t-1")

    def fixtures(self):
        for text in self.TYPES:
            tau = HNType.parse(text)
            for hom in range(0, 6):
                for split in (True, False):
                    yield Length2Sheaf(tau, is_split=split, summands_stable=True, hom_dim=hom)

    def test_coprime_biconditional(self):
        """Test tau-stable iff indecomposable on coprime types"""
        for record in self.fixtures():
            assert is_coprime_on_p1(record.tau)
            assert is_tau_stable(record) == is_indecomposable(record)

    def test_end_dimension_claim(self):
        """Test dim End = dim stab_U + 1 on every tau-stable fixture"""
        for record in self.fixtures():
            ustab, end_claim = stab_dims(record)
            if is_tau_stable(record):
                assert end_claim == ustab + 1
            else:
                assert end_claim is None

    def test_split_counterexample(self, runner):
        """Test that O(2) + O has End of dimension 5, not hom + 1 = 4"""
        result = runner.invoke(cli, ["hn", "--splitting", "2,0"])

        assert result.exit_code == 0, result.stderr
        outputs = json.loads(result.stdout)["outputs"]
        assert outputs["end_dim"] == 5
        assert outputs["length2"]["hom_dim"] + 1 == 4
        assert outputs["length2"]["tau_stable"] is False
        assert end_dim(SplitBundle.of(2, 0)) == 5


class TestAffineToyQuotient:
    """Orbit equivalence on the totally stable locus"""

    def bases(self, rng: random.Random):
        found = []
        while len(found) < 50:
            size = rng.randint(3, 5)
            values = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(size)]
            if len(set(values)) < 2:
                continue
            i = rng.randint(size + 1, size + 3)
            c = Configuration.of(*values, *(["inf"] * i))
            if membership_ts(c, i):
                found.append(Configuration.of(*c.affine_values))
        return found

    def test_constant_on_orbits(self):
        """Test 200 affine maps over 50 totally stable bases"""
        rng = random.Random(200)
        maps_applied = 0
        for base in self.bases(rng):
            for _ in range(4):
                a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 7), rng.randint(1, 7))
                m = Mobius.affine(a, Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
                image = base.apply(m)
                assert affine_equivalent(base, image)
                assert affine_equivalent(image, base)
                assert brute_force_affine_equivalent(base, image)
                maps_applied += 1
        assert maps_applied >= 200

    def test_separates_inequivalent_pairs(self):
        """Test agreement with the brute-force oracle on a grid of pairs"""
        pool = [
            Configuration.of(*combo)
            for combo in combinations_with_replacement(range(5), 4)
            if len(set(combo)) >= 2
        ]
        inequivalent = 0
        for c1, c2 in combinations(pool, 2):
            expected = brute_force_affine_equivalent(c1, c2)
            assert affine_equivalent(c1, c2) == expected
            inequivalent += not expected
        assert inequivalent >= 50

    @pytest.mark.parametrize(
        "left,right",
        [("0,1,2", "0,1,3"), ("0,0,1", "0,1,1/2"), ("0,1,2,4", "0,1,3,4"), ("0,0,1,1", "0,0,0,1")],
    )
    def test_hand_picked(self, left, right):
        """Test pairs that no affine map relates"""
        c1, c2 = Configuration.parse(left), Configuration.parse(right)
        assert not brute_force_affine_equivalent(c1, c2)
        assert not affine_equivalent(c1, c2)
