"""Lifting designs along group extensions.

Given a design D in a group G, a set of design-preserving automorphisms, and
candidate generators written as (automorphism word, base element) pairs, we
close them up inside Aut(G) x G and test three conditions:

  (i)   the closure has the same order as G,
  (ii)  the slice X of pure translations is normal in both G and the closure,
  (iii) the closure acts transitively on the right cosets of X in G, where
        (phi, g) sends the coset X*h to X*(h^phi * g).

When all three hold, the pullback of D along the base-part projection is a
design in the closure with the same parameters - and we recount to prove it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    ClosureOverflow,
    ConditionsFailed,
    DesignNotFixed,
    ForbiddenNotSubgroup,
    NotBijective,
    ParameterMismatch,
)
from .groups import (
    ExtensionGroup,
    Group,
    GroupAutomorphism,
    Subgroup,
    coset_action_transitive,
    extension_closure,
    normality_witness,
    subgroup_closure,
)
from .verify import DesignSet, VerifyResult, verify_design

GenWord = Tuple[Tuple[int, ...], int]


@dataclass
class TransferInstance:
    """Everything needed to attempt one lift: the source design, the
    automorphisms (already certified), and the candidate generators."""

    design: DesignSet
    aut_gens: List[GroupAutomorphism]
    candidate_gens: List[GenWord]
    closure_cap: Optional[int] = None
    log: List[str] = field(default_factory=list)

    @property
    def source_group(self) -> Group:
        return self.design.group


def make_instance(design: DesignSet,
                  aut_gens: Sequence[GroupAutomorphism],
                  candidate_gens: Sequence[GenWord],
                  closure_cap: Optional[int] = None,
                  log: Optional[List[str]] = None) -> TransferInstance:
    """Bundle an instance, eagerly rejecting automorphisms that move the
    design (or, for a relative design, its forbidden subgroup)."""
    group = design.group
    member_set = set(design.members)
    for i, aut in enumerate(aut_gens):
        if aut.group is not group:
            raise DesignNotFixed(f"automorphism {i} acts on a different group")
        image = set(aut.perm[list(design.members)].tolist())
        if image != member_set:
            moved = sorted(image - member_set)[:3]
            raise DesignNotFixed(
                f"automorphism {i} does not fix the design; image gains "
                + ", ".join(group.element_name(z) for z in moved))
        if design.forbidden is not None:
            umem = list(design.forbidden.members)
            if set(aut.perm[umem].tolist()) != set(umem):
                raise DesignNotFixed(f"automorphism {i} does not fix the forbidden subgroup")
    for word, base in candidate_gens:
        for a in word:
            if not 0 <= a < len(aut_gens):
                raise DesignNotFixed(f"candidate word refers to automorphism {a}, "
                                     f"but only {len(aut_gens)} were given")
        if not 0 <= base < group.size:
            raise DesignNotFixed(f"candidate base element {base} out of range")
    return TransferInstance(design, list(aut_gens), list(candidate_gens),
                            closure_cap, list(log or ()))


@dataclass
class TransferReport:
    instance: TransferInstance
    new_group: Optional[ExtensionGroup]
    x_subgroup: Optional[Subgroup]
    cond_i: Optional[bool]
    cond_ii: Optional[bool]
    cond_iii: Optional[bool]
    witnesses: dict
    new_design: Optional[DesignSet] = None
    new_forbidden: Optional[Subgroup] = None
    verified: Optional[VerifyResult] = None

    @property
    def all_pass(self) -> bool:
        return bool(self.cond_i and self.cond_ii and self.cond_iii)

    def condition_lines(self) -> List[str]:
        lines = []
        for name, val in (("i", self.cond_i), ("ii", self.cond_ii), ("iii", self.cond_iii)):
            status = "pass" if val else ("fail" if val is not None else "skipped")
            line = f"condition ({name}): {status}"
            if name in self.witnesses:
                line += f" [{self.witnesses[name]}]"
            lines.append(line)
        return lines


def check_conditions(inst: TransferInstance) -> TransferReport:
    group = inst.source_group
    witnesses: dict = {}
    try:
        closure = extension_closure(group, inst.aut_gens, inst.candidate_gens,
                                    cap=inst.closure_cap)
    except ClosureOverflow as exc:
        witnesses["i"] = str(exc)
        return TransferReport(inst, None, None, False, None, None, witnesses)

    cond_i = closure.size == group.size
    if not cond_i:
        witnesses["i"] = f"closure has order {closure.size}, base group {group.size}"
        return TransferReport(inst, closure, None, False, None, None, witnesses)

    # X = base parts of the pure-translation slice (identity automorphism part)
    x_members = np.sort(closure.base_part[closure.aut_part == 0])
    x_sub = Subgroup(group, tuple(int(b) for b in x_members),
                     tuple(int(b) for b in x_members))

    cond_ii = True
    wit = normality_witness(group, x_sub)
    if wit is not None:
        g, s, c = wit
        cond_ii = False
        witnesses["ii"] = (f"X is not normal in the base group: "
                           f"{group.element_name(g)}^-1 * {group.element_name(s)} * "
                           f"{group.element_name(g)} = {group.element_name(c)}")
    if cond_ii:
        x_in_closure = np.array(
            [closure.index_of_pair(0, int(b)) for b in x_members], dtype=np.int64)
        for z in closure.generators:
            zi = np.full(len(x_in_closure), z, dtype=np.int64)
            conj = closure.mul_many(closure.mul_many(closure.inv_many(zi), x_in_closure), zi)
            bad = np.nonzero(~x_sub.mask[closure.base_part[conj]])[0]
            if bad.size:
                cond_ii = False
                x0 = int(x_in_closure[bad[0]])
                witnesses["ii"] = (f"1xX is not normal in the closure: conjugating "
                                   f"{closure.element_name(x0)} by {closure.element_name(z)}"
                                   f" leaves the slice")
                break

    acting = [(inst_perm, g) for inst_perm, g in
              ((closure.aut_perms[a], b) for a, b in closure.gen_pairs)]
    trans = coset_action_transitive(group, x_sub, acting)
    cond_iii = trans.transitive
    if not cond_iii:
        witnesses["iii"] = (f"coset action reaches {trans.reached} of {trans.total} cosets; "
                            f"coset of {group.element_name(trans.witness_rep)} is unreached")

    return TransferReport(inst, closure, x_sub, cond_i, cond_ii, cond_iii, witnesses)


def _lift_members(closure: ExtensionGroup, member_set: set) -> Tuple[int, ...]:
    mask = np.zeros(closure.base.size, dtype=bool)
    mask[list(member_set)] = True
    return tuple(int(z) for z in np.nonzero(mask[closure.base_part])[0])


def _require_pass(report: TransferReport) -> ExtensionGroup:
    if not report.all_pass:
        raise ConditionsFailed("; ".join(report.condition_lines()))
    closure = report.new_group
    assert closure is not None
    # regular action: with (i)-(iii) in hand the base-part projection must be
    # a bijection, so the pullback has one element per source member per coset
    if np.bincount(closure.base_part, minlength=closure.base.size).max() > 1:
        raise NotBijective("base-part projection of the closure is not injective")
    return closure


def transfer_design(inst: TransferInstance) -> TransferReport:
    """Run the conditions and, if they pass, lift and re-verify the design."""
    report = check_conditions(inst)
    closure = _require_pass(report)
    design = inst.design
    lifted = _lift_members(closure, set(design.members))
    if len(lifted) != design.size:
        raise ParameterMismatch(
            f"lifted design has {len(lifted)} members, source has {design.size}")
    forbidden = None
    if design.kind == "RDS":
        assert design.forbidden is not None
        u_lift = _lift_members(closure, set(design.forbidden.members))
        if len(u_lift) != design.forbidden.order:
            raise ForbiddenNotSubgroup(
                f"lifted forbidden set has {len(u_lift)} elements, "
                f"expected {design.forbidden.order}")
        forbidden = subgroup_closure(closure, u_lift)
        if forbidden.order != len(u_lift):
            raise ForbiddenNotSubgroup(
                f"lifted forbidden set generates a subgroup of order {forbidden.order}, "
                f"it is not closed at order {len(u_lift)}")
    new_design = DesignSet(closure, lifted, design.kind, design.claimed,
                           forbidden=forbidden, log=list(design.log))
    result = verify_design(new_design)
    if result.params != tuple(design.claimed):
        raise ParameterMismatch(
            f"lifted parameters {result.params} differ from source {tuple(design.claimed)}")
    report.new_design = new_design
    report.new_forbidden = forbidden
    report.verified = result
    return report


def transfer_pds(inst: TransferInstance) -> TransferReport:
    if inst.design.kind not in ("DS", "PDS"):
        raise ParameterMismatch(f"expected a DS or PDS instance, got {inst.design.kind}")
    return transfer_design(inst)


def transfer_rds(inst: TransferInstance) -> TransferReport:
    if inst.design.kind != "RDS":
        raise ParameterMismatch(f"expected an RDS instance, got {inst.design.kind}")
    return transfer_design(inst)
