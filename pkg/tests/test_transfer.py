"""Transfer engine: condition checks, design lifting, failure reporting."""

import pytest

import oracle
from diffsets import (
    ConditionsFailed,
    DesignNotFixed,
    DesignSet,
    abelian_make,
    aut_from_images,
    check_conditions,
    fingerprint,
    make_instance,
    pcp_pds,
    rds_transfer,
    spence,
    transfer_pds,
    transfer_rds,
    verify_design,
)

FANO = (1, 2, 4)


def test_design_must_be_fixed_eagerly():
    g = abelian_make((7,))
    d = DesignSet(g, FANO, "DS", (7, 3, 1))
    tripling = aut_from_images(g, [3])  # 3 * {1,2,4} = {3,6,5} != D
    with pytest.raises(DesignNotFixed):
        make_instance(d, [tripling], [((), 1)])


def test_identity_transfer_preserves_everything():
    d = pcp_pds(2, 2, 2)
    inst = make_instance(d, [], [((), g) for g in d.group.generators])
    rep = transfer_pds(inst)
    assert rep.all_pass
    assert rep.verified.params == (16, 6, 2, 2)
    fp = fingerprint(rep.new_group)
    assert fp.is_abelian and fp.order == 16
    # the rebuilt design has the same difference profile as the original
    mul, inv = rep.new_group.mul, rep.new_group.inv
    assert oracle.pds_params(16, mul, inv, rep.new_design.members) \
        == (16, 6, 2, 2)


def test_condition_i_failure_reported():
    g = abelian_make((7,))
    d = DesignSet(g, FANO, "DS", (7, 3, 1))
    doubling = aut_from_images(g, [2])  # fixes D, order 3
    # closure of {(doubling, 0)} union G has order 21 != 7: condition (i) fails
    inst = make_instance(d, [doubling], [((), 1), ((0,), 0)])
    report = check_conditions(inst)
    assert report.cond_i is False
    with pytest.raises(ConditionsFailed) as err:
        transfer_pds(inst)
    assert "condition (i)" in str(err.value)


def test_closure_too_small_is_condition_i_failure():
    g = abelian_make((7,))
    d = DesignSet(g, FANO, "DS", (7, 3, 1))
    inst = make_instance(d, [], [])
    report = check_conditions(inst)
    assert report.cond_i is False


def test_spence_transfer_full_report(corpus):
    inst, rep = corpus["spence_d1"]
    assert rep.all_pass
    assert rep.cond_ii is True and rep.cond_iii is True
    assert rep.verified.params == (351, 126, 45)
    assert rep.new_group.size == 351
    assert not fingerprint(rep.new_group).is_abelian
    # independent recount of the lifted design through the new group's mul
    mul, inv = rep.new_group.mul, rep.new_group.inv
    assert oracle.ds_lambda(351, mul, inv, rep.new_design.members) == 45


def test_lifted_members_project_onto_base(corpus):
    inst, rep = corpus["spence_d1"]
    G = rep.new_group
    base_members = set(inst.design.members)
    lifted = set(rep.new_design.members)
    for z in range(G.size):
        assert (z in lifted) == (int(G.base_part[z]) in base_members)


def test_rds_transfer_lifts_forbidden(corpus):
    inst, rep = corpus["rds_d1_v1"]
    assert rep.verified.params == (16, 4, 16, 4)
    assert rep.new_forbidden is not None and rep.new_forbidden.order == 4
    mul, inv = rep.new_group.mul, rep.new_group.inv
    assert oracle.rds_ok(rep.new_group.size, mul, inv,
                         rep.new_design.members,
                         rep.new_forbidden.members, 4)


def test_rds_kind_dispatch(corpus):
    inst, _ = corpus["rds_d1_v1"]
    with pytest.raises(Exception):
        transfer_pds(inst)  # wrong kind for the PDS/DS entry point
    inst2, _ = corpus["spence_d1"]
    with pytest.raises(Exception):
        transfer_rds(inst2)


def test_condition_lines_format(corpus):
    _, rep = corpus["spence_d1"]
    lines = rep.condition_lines()
    assert len(lines) == 3
    assert all(line.startswith("condition (") for line in lines)
    assert all("pass" in line for line in lines)
