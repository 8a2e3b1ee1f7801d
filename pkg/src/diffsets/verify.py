"""Difference-set verification by exhaustive quotient counting.

The central object is the difference profile: for a k-subset D of a finite
group, count for every group element z the ordered pairs (d1, d2) of distinct
members with d1 * d2^(-1) = z.  A design claim is then a statement that this
profile is constant on the relevant slices of the group, and verification
never trusts a construction - it always recounts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    ForbiddenNotSubgroup,
    NotClosedUnderInverse,
    NotCoprime,
    NotSRG,
    ParameterError,
    ParameterMismatch,
)
from .groups import AbelianGroup, Group, Subgroup

KINDS = ("DS", "PDS", "RDS")
SRG_EXHAUSTIVE_LIMIT = 4096
SRG_PROBES = 16
_BLOCK_ENTRIES = 1 << 21


@dataclass
class DesignSet:
    """A candidate design: member indices in a group plus the claimed
    parameter tuple ((v,k,lambda) for DS, (v,k,lambda,mu) for PDS,
    (m,u,k,lambda) for RDS with forbidden subgroup U)."""

    group: Group
    members: Tuple[int, ...]
    kind: str
    claimed: Tuple[int, ...]
    forbidden: Optional[Subgroup] = None
    log: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ParameterError(f"design kind must be one of {KINDS}, got {self.kind!r}")
        members = tuple(int(x) for x in self.members)
        if len(set(members)) != len(members):
            raise ParameterError("design members must be distinct")
        for x in members:
            if not 0 <= x < self.group.size:
                raise ParameterError(f"member index {x} out of range")
        self.members = tuple(sorted(members))
        want = 4 if self.kind in ("PDS", "RDS") else 3
        self.claimed = tuple(int(x) for x in self.claimed)
        if len(self.claimed) != want:
            raise ParameterError(
                f"{self.kind} parameter tuple needs {want} entries, got {self.claimed}")
        if self.kind == "RDS" and self.forbidden is None:
            raise ParameterError("an RDS needs its forbidden subgroup")

    @property
    def size(self) -> int:
        return len(self.members)

    def member_mask(self) -> np.ndarray:
        mask = np.zeros(self.group.size, dtype=bool)
        mask[list(self.members)] = True
        return mask

    def is_inverse_closed(self) -> bool:
        arr = np.array(self.members, dtype=np.int64)
        return set(self.group.inv_many(arr).tolist()) == set(self.members)


@dataclass(frozen=True)
class DifferenceProfile:
    counts: np.ndarray
    include_equal: bool

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def difference_profile(design: DesignSet, include_equal: bool = False) -> DifferenceProfile:
    """Count quotients d1 * d2^(-1) over ordered member pairs.

    With include_equal the diagonal pairs contribute k to the identity and the
    counts sum to k^2; without it they sum to k^2 - k.
    """
    group = design.group
    members = np.array(design.members, dtype=np.int64)
    k = len(members)
    counts = np.zeros(group.size, dtype=np.int64)
    if k:
        block = max(1, _BLOCK_ENTRIES // k)
        for lo in range(0, k, block):
            q = group.quotient_outer(members[lo:lo + block], members)
            counts += np.bincount(q.ravel(), minlength=group.size)
    if not include_equal:
        counts[group.identity] -= k
    return DifferenceProfile(counts, include_equal)


@dataclass(frozen=True)
class VerifyResult:
    kind: str
    params: Tuple[int, ...]
    reversible: Optional[bool] = None  # DS: closed under inversion
    regular: Optional[bool] = None     # PDS: inverse-closed and identity-free


def _offenders(group: Group, counts: np.ndarray, where: np.ndarray,
               expected: int, limit: int = 3) -> str:
    bad = np.nonzero(where & (counts != expected))[0]
    shown = ", ".join(
        f"{group.element_name(int(z))}: {int(counts[z])} (expected {expected})"
        for z in bad[:limit])
    return f"{bad.size} offender(s); first {min(limit, bad.size)}: {shown}"


def verify_ds(design: DesignSet) -> VerifyResult:
    """Check a (v,k,lambda) difference-set claim; every nonidentity element
    must occur exactly lambda times among distinct-pair quotients."""
    v, k, lam = design.claimed
    group = design.group
    if group.size != v:
        raise ParameterMismatch(f"group order {group.size} != claimed v = {v}")
    if design.size != k:
        raise ParameterMismatch(f"design size {design.size} != claimed k = {k}")
    counts = difference_profile(design).counts
    nonident = np.ones(group.size, dtype=bool)
    nonident[group.identity] = False
    if np.any(counts[nonident] != lam):
        raise ParameterMismatch(
            "quotient counts are not uniformly lambda: "
            + _offenders(group, counts, nonident, lam))
    return VerifyResult("DS", (v, k, lam), reversible=design.is_inverse_closed())


def verify_pds(design: DesignSet, require_regular: bool = False) -> VerifyResult:
    """Check a (v,k,lambda,mu) claim: lambda on the design, mu outside it,
    with the identity exempt on both sides."""
    v, k, lam, mu = design.claimed
    group = design.group
    if group.size != v:
        raise ParameterMismatch(f"group order {group.size} != claimed v = {v}")
    if design.size != k:
        raise ParameterMismatch(f"design size {design.size} != claimed k = {k}")
    mask = design.member_mask()
    regular = (not mask[group.identity]) and design.is_inverse_closed()
    if require_regular and not regular:
        if mask[group.identity]:
            raise NotClosedUnderInverse("regularity requested but the design contains the identity")
        raise NotClosedUnderInverse("regularity requested but the design is not inverse-closed")
    counts = difference_profile(design).counts
    inside = mask.copy()
    inside[group.identity] = False
    outside = ~mask
    outside[group.identity] = False
    problems = []
    if np.any(counts[inside] != lam):
        problems.append("on-design counts: " + _offenders(group, counts, inside, lam))
    if np.any(counts[outside] != mu):
        problems.append("off-design counts: " + _offenders(group, counts, outside, mu))
    if problems:
        raise ParameterMismatch("; ".join(problems))
    return VerifyResult("PDS", (v, k, lam, mu), regular=regular)


def _check_subgroup(group: Group, sub: Subgroup) -> None:
    if sub.parent is not group:
        raise ForbiddenNotSubgroup("forbidden subgroup belongs to a different group")
    members = np.array(sub.members, dtype=np.int64)
    if not sub.mask[group.identity]:
        raise ForbiddenNotSubgroup("forbidden set does not contain the identity")
    if not sub.mask[group.inv_many(members)].all():
        raise ForbiddenNotSubgroup("forbidden set is not closed under inversion")
    prods = group.quotient_outer(members, members)
    if not sub.mask[prods].all():
        raise ForbiddenNotSubgroup("forbidden set is not closed under the group operation")


def verify_rds(design: DesignSet) -> VerifyResult:
    """Check an (m,u,k,lambda) relative claim: quotients avoid the forbidden
    subgroup entirely and hit everything else exactly lambda times."""
    m, u, k, lam = design.claimed
    group = design.group
    sub = design.forbidden
    assert sub is not None
    _check_subgroup(group, sub)
    if sub.order != u:
        raise ParameterMismatch(f"forbidden subgroup order {sub.order} != claimed u = {u}")
    if group.size != m * u:
        raise ParameterMismatch(f"group order {group.size} != claimed m*u = {m * u}")
    if design.size != k:
        raise ParameterMismatch(f"design size {design.size} != claimed k = {k}")
    counts = difference_profile(design).counts
    inside = sub.mask.copy()
    inside[group.identity] = False
    outside = ~sub.mask
    problems = []
    if np.any(counts[inside] != 0):
        problems.append("forbidden quotients occur: " + _offenders(group, counts, inside, 0))
    if np.any(counts[outside] != lam):
        problems.append("outside counts: " + _offenders(group, counts, outside, lam))
    if problems:
        raise ParameterMismatch("; ".join(problems))
    return VerifyResult("RDS", (m, u, k, lam))


def verify_design(design: DesignSet) -> VerifyResult:
    if design.kind == "DS":
        return verify_ds(design)
    if design.kind == "PDS":
        return verify_pds(design)
    return verify_rds(design)


def ds_complement(design: DesignSet) -> DesignSet:
    """Complement of a difference set, with the complementary parameter claim."""
    v, k, lam = design.claimed
    mask = design.member_mask()
    members = tuple(int(z) for z in np.nonzero(~mask)[0])
    return DesignSet(design.group, members, "DS", (v, v - k, v - 2 * k + lam))


def multiplier_check(design: DesignSet, m: int) -> bool:
    """Does raising every member to the m-th power fix the design setwise?"""
    group = design.group
    if not isinstance(group, AbelianGroup):
        raise ParameterError("multiplier checks are defined here only for abelian groups")
    if gcd(m, group.size) != 1:
        raise NotCoprime(f"multiplier {m} shares a factor with the group order {group.size}")
    powered = group.pow_many(np.array(design.members, dtype=np.int64), m)
    return set(powered.tolist()) == set(design.members)


# ---------------------------------------------------------------------------
# strongly regular graph cross-check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SrgResult:
    n: int
    k: int
    lam: int
    mu: int
    exhaustive: bool
    degenerate_complete: bool


def cayley_srg_check(design: DesignSet,
                     exhaustive_limit: int = SRG_EXHAUSTIVE_LIMIT,
                     probes: int = SRG_PROBES) -> SrgResult:
    """Measure strong regularity of the quotient graph u ~ v iff u v^-1 in D.

    This is an independent recount through adjacency matrices (or, above the
    exhaustive limit, through exact per-row common-neighbor counts on a
    deterministic set of probe rows), so it can cross-check verify_pds.
    """
    group = design.group
    n = group.size
    mask = design.member_mask()
    if mask[group.identity]:
        raise NotClosedUnderInverse("graph check needs an identity-free connection set")
    if not design.is_inverse_closed():
        raise NotClosedUnderInverse("graph check needs an inverse-closed connection set")
    members = np.array(design.members, dtype=np.int64)
    k = len(members)
    degenerate = k == n - 1

    if n <= exhaustive_limit:
        adj = np.zeros((n, n), dtype=bool)
        all_idx = np.arange(n, dtype=np.int64)
        block = max(1, _BLOCK_ENTRIES // n)
        for lo in range(0, n, block):
            adj[lo:lo + block] = mask[group.quotient_outer(all_idx[lo:lo + block], all_idx)]
        if not np.array_equal(adj, adj.T):
            raise NotSRG("adjacency is not symmetric")
        common = (adj.astype(np.float32) @ adj.astype(np.float32)).astype(np.int64)
        off = ~np.eye(n, dtype=bool)
        lam_vals = np.unique(common[adj & off])
        mu_vals = np.unique(common[(~adj) & off])
        if lam_vals.size > 1:
            raise NotSRG(f"adjacent common-neighbor counts vary: {lam_vals[:4].tolist()}")
        if not degenerate and mu_vals.size > 1:
            raise NotSRG(f"non-adjacent common-neighbor counts vary: {mu_vals[:4].tolist()}")
        lam = int(lam_vals[0]) if lam_vals.size else 0
        mu = int(mu_vals[0]) if mu_vals.size else 0
        return SrgResult(n, k, lam, mu, True, degenerate)

    # probe mode: exact common-neighbor counts on a deterministic sample of
    # pairs.  Rows are spread across the vertex set; per row, the probed
    # columns cover both adjacent and non-adjacent partners.
    step = n // probes + 1
    rows = sorted({(i * step) % n for i in range(probes)} | {0})
    cols_per_side = 4 * probes
    lam_vals: set = set()
    mu_vals: set = set()
    for u in rows:
        targets = group.mul_elems(members, int(u))
        if len(set(targets.tolist())) != k:
            raise NotSRG(f"probe row {u} is not {k}-regular")
        nbr = np.zeros(n, dtype=bool)
        nbr[targets] = True
        adj_cols = [int(v) for v in targets[:cols_per_side] if int(v) != u]
        non = np.flatnonzero(~nbr)
        non = non[non != u]
        stride = max(1, len(non) // cols_per_side)
        non_cols = [int(v) for v in non[::stride][:cols_per_side]]
        for v, bucket in [(v, lam_vals) for v in adj_cols] + \
                         [(v, mu_vals) for v in non_cols]:
            bucket.add(int(nbr[group.mul_elems(members, v)].sum()))
        if len(lam_vals) > 1 or (not degenerate and len(mu_vals) > 1):
            raise NotSRG(f"probe row {u} breaks strong regularity: "
                         f"adjacent counts {sorted(lam_vals)}, others {sorted(mu_vals)}")
    lam = lam_vals.pop() if lam_vals else 0
    mu = mu_vals.pop() if mu_vals else 0
    return SrgResult(n, k, int(lam), int(mu), False, degenerate)
