"""Design verification: DS/PDS/RDS counting, SRG cross-route, multipliers."""

import pytest

import oracle
from diffsets import (
    DesignSet,
    NotCoprime,
    NotClosedUnderInverse,
    NotSRG,
    ParameterError,
    ParameterMismatch,
    abelian_make,
    cayley_srg_check,
    difference_profile,
    ds_complement,
    multiplier_check,
    pcp_pds,
    rds_base,
    subgroup_closure,
    verify_design,
    verify_ds,
    verify_pds,
    verify_rds,
)

FANO = (1, 2, 4)  # quadratic residues mod 7: a (7,3,1) planar difference set
PALEY13 = (1, 3, 4, 9, 10, 12)  # QRs mod 13: a (13,6,2,3) regular PDS


def test_fano_ds():
    g = abelian_make((7,))
    d = DesignSet(g, FANO, "DS", (7, 3, 1))
    res = verify_ds(d)
    assert res.params == (7, 3, 1)
    assert res.reversible is False
    # oracle agreement on the raw counts
    mul = lambda a, b: oracle.abelian_mul((7,), a, b)
    inv = lambda a: oracle.abelian_inv((7,), a)
    assert oracle.ds_lambda(7, mul, inv, FANO) == 1


def test_fano_complement():
    g = abelian_make((7,))
    d = DesignSet(g, FANO, "DS", (7, 3, 1))
    comp = ds_complement(d)
    assert verify_ds(comp).params == (7, 4, 2)


def test_fano_wrong_claim_rejected():
    g = abelian_make((7,))
    d = DesignSet(g, FANO, "DS", (7, 3, 2))
    with pytest.raises(ParameterMismatch):
        verify_ds(d)


def test_paley_pds_and_srg_agree():
    g = abelian_make((13,))
    d = DesignSet(g, PALEY13, "PDS", (13, 6, 2, 3))
    res = verify_pds(d, require_regular=True)
    assert res.params == (13, 6, 2, 3)
    assert res.regular is True  # reversibility is implied for a regular PDS
    srg = cayley_srg_check(d)
    assert (srg.n, srg.k, srg.lam, srg.mu) == (13, 6, 2, 3)
    assert srg.exhaustive
    mul = lambda a, b: oracle.abelian_mul((13,), a, b)
    inv = lambda a: oracle.abelian_inv((13,), a)
    assert oracle.pds_params(13, mul, inv, PALEY13) == (13, 6, 2, 3)
    assert oracle.srg_params(13, mul, inv, PALEY13) == (13, 6, 2, 3)


def test_non_reversible_pds_rejected():
    g = abelian_make((7,))
    d = DesignSet(g, FANO, "PDS", (7, 3, 1, 1))
    with pytest.raises(NotClosedUnderInverse):
        verify_pds(d, require_regular=True)


def test_not_srg_detected():
    g = abelian_make((8,))
    d = DesignSet(g, (1, 7, 2, 6), "PDS", (8, 4, 0, 0))
    with pytest.raises((NotSRG, ParameterMismatch)):
        verify_pds(d, require_regular=True)
        cayley_srg_check(d)


def test_difference_profile_matches_oracle():
    orders = (4, 2, 2)
    g = abelian_make(orders)
    members = (1, 3, 4, 8, 14, 15)
    d = DesignSet(g, members, "DS", (16, 6, 2))
    prof = difference_profile(d)
    mul = lambda a, b: oracle.abelian_mul(orders, a, b)
    inv = lambda a: oracle.abelian_inv(orders, a)
    counts = oracle.difference_counts(mul, inv, members)
    for z in range(1, g.size):
        assert prof.counts[z] == counts.get(z, 0)


def test_multiplier_check():
    g = abelian_make((7,))
    d = DesignSet(g, FANO, "DS", (7, 3, 1))
    assert multiplier_check(d, 2)  # doubling fixes the QR set mod 7
    assert not multiplier_check(d, 3)
    with pytest.raises(NotCoprime):
        multiplier_check(d, 7)


def test_rds_base_verifies():
    d = rds_base(1)
    res = verify_rds(d)
    assert res.params == (16, 4, 16, 4)
    assert d.forbidden.order == 4
    mul = d.group.mul
    inv = d.group.inv
    assert oracle.rds_ok(d.group.size, mul, inv, d.members,
                         d.forbidden.members, 4)


def test_rds_quotient_in_forbidden_rejected():
    d = rds_base(1)
    # swap one member for an element whose quotients land inside U
    bad_members = list(d.members)
    bad_members[0] = list(d.forbidden.members)[1]
    bad = DesignSet(d.group, tuple(sorted(bad_members)), "RDS", d.claimed,
                    forbidden=d.forbidden)
    with pytest.raises(ParameterMismatch):
        verify_rds(bad)


def test_verify_design_dispatch():
    g = abelian_make((7,))
    assert verify_design(DesignSet(g, FANO, "DS", (7, 3, 1))).kind == "DS"
    assert verify_design(rds_base(1)).kind == "RDS"
    with pytest.raises(ParameterError):
        DesignSet(g, FANO, "XXX", (7, 3, 1))


def test_srg_probe_mode_above_limit():
    # group order 6561 > 4096 forces the probe route
    d = pcp_pds(3, 4, 2)
    srg = cayley_srg_check(d)
    assert not srg.exhaustive
    assert (srg.n, srg.k, srg.lam, srg.mu) == verify_pds(d).params


def test_member_out_of_range_rejected():
    g = abelian_make((7,))
    with pytest.raises(ParameterError):
        DesignSet(g, (1, 2, 99), "DS", (7, 3, 1))
    with pytest.raises(ParameterError):
        DesignSet(g, (1, 1, 2), "DS", (7, 3, 1))
