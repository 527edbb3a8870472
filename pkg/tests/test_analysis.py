import itertools

import numpy as np
import pytest

from ebrcodes import analysis
from ebrcodes.ebr import BRVPCode, EBRCode
from ebrcodes.eip import EIPCode
from ebrcodes.errors import TooLarge, UnknownSuite


def brute_min_weight(G):
    best = None
    for coeffs in itertools.product((0, 1), repeat=len(G)):
        if any(coeffs):
            w = int(((np.array(coeffs) @ G) % 2).sum())
            best = w if best is None else min(best, w)
    return best


def test_exhaustive_weight_matches_brute_force(rng):
    for _ in range(20):
        k, n = rng.integers(2, 9), rng.integers(9, 40)
        G = rng.integers(0, 2, (k, n), dtype=np.uint8)
        if not G.any(axis=1).all():
            continue
        from ebrcodes import linalg
        from ebrcodes.gf import GF2
        if linalg.rank(G, GF2) < k:
            continue
        assert analysis.min_weight_exhaustive(G) == brute_min_weight(G)


@pytest.mark.parametrize("code", [EBRCode(5, 1), EBRCode(5, 2), EBRCode(5, 3),
                                  EIPCode(5, 2)], ids=repr)
def test_syndrome_search_agrees_with_enumeration(code):
    G = analysis.generator_matrix(code)
    assert analysis.min_weight_search(code.constraint_matrix()) == \
        analysis.min_weight_exhaustive(G)


def test_search_budget_is_reported():
    with pytest.raises(TooLarge) as info:
        analysis.min_weight_search(EBRCode(7, 4).constraint_matrix(), budget=1000)
    assert info.value.bound is not None


@pytest.mark.parametrize("p,r", [(5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3),
                                 (7, 5), (7, 6), (11, 3), (11, 9)])
def test_witness_reaches_lower_bound(p, r):
    bound = analysis.distance_bounds(EBRCode(p, r))
    assert bound.lower == 2 * (r + 1)
    assert bound.witness_weight == bound.lower


def test_eip_witness():
    bound = analysis.distance_bounds(EIPCode(7, 3, g=0b1011))
    assert bound.lower == 16 and bound.witness_weight == 16


def test_product_code_distance():
    assert analysis.min_hamming_distance(analysis.hamming_product_code()) == 12


def test_mds_checks():
    assert analysis.mds_columns_check(EBRCode(7, 3, g=0b1011))
    assert analysis.mds_columns_check(EIPCode(5, 3))
    assert not analysis.mds_columns_check(EIPCode(7, 4))
    assert EIPCode(7, 4).is_mds is False
    assert analysis.line_mds_check(EBRCode(7, 3), slope=2)


def test_brvp_distance():
    assert analysis.min_hamming_distance(BRVPCode(7, 4)) == 10


def test_xor_formulas():
    for p, k in [(5, 3), (17, 8), (31, 20)]:
        assert analysis.shortened_encode_xors(p, 2, k) == analysis.shortened_encode_formula(p, 2, k)
    assert analysis.recursion_xors(17) == (3 * 17 - 5) // 2


def test_report_lines():
    claim = analysis.Claim("x.y", 3, 3)
    assert claim.line() == "claim=x.y computed=3 expected=3 status=pass"
    assert analysis.Claim("z", 15, 11).line().endswith("status=fail")


@pytest.mark.parametrize("name", sorted(analysis.SUITES))
def test_suites_pass(name):
    claims = analysis.run_suite(name)
    assert claims
    failed = [c.line() for c in claims if not c.passed]
    assert not failed, failed


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        analysis.run_suite("nope")
