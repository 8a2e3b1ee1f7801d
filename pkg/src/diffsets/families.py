"""Constructors for every supported design family.

Each function either returns a finished, verified DesignSet in an abelian
group, or a TransferInstance bundling that design with design-preserving
automorphisms and candidate generators, ready for the transfer engine.

Everywhere a construction allows an arbitrary choice (a primitive element, an
orbit representative, a basis completion), the choice here is canonical -
smallest index first - and recorded in the construction log, so reruns are
byte-identical and the verifier confirms correctness regardless.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iproduct
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .errors import (
    AssignmentNotInjective,
    DecompositionFailure,
    IndexNotTwo,
    MultiplierFails,
    NotRegular,
    NotReversible,
    NoValidAlpha,
    ParameterError,
    PsiDoesNotFixD,
    ReindexObstruction,
    RPlusOneNotTwiceOddPrime,
    TooManyLines,
)
from .fields import FiniteField, field_embed, field_make, galois_ring_make, hyperplanes
from .groups import (
    AbelianGroup,
    ExtensionGroup,
    Group,
    GroupAutomorphism,
    Subgroup,
    abelian_make,
    aut_from_images,
    extension_closure,
    subgroup_closure,
)
from .transfer import TransferInstance, TransferReport, make_instance, transfer_pds
from .verify import DesignSet, multiplier_check, verify_design, verify_ds, verify_pds, verify_rds


# ---------------------------------------------------------------------------
# small linear algebra over GF(p) on exponent vectors
# ---------------------------------------------------------------------------

class _SpanGF:
    """Incremental row space over GF(p), kept in reduced echelon form so that
    membership tests are a single forward elimination."""

    def __init__(self, dim: int, p: int):
        self.dim = dim
        self.p = p
        self.rows: List[np.ndarray] = []

    def reduce(self, vec) -> np.ndarray:
        v = np.array(vec, dtype=np.int64) % self.p
        for row in self.rows:
            piv = int(np.nonzero(row)[0][0])
            if v[piv]:
                v = (v - int(v[piv]) * row) % self.p
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec).any()

    def add(self, vec) -> bool:
        v = self.reduce(vec)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        v = (v * pow(int(v[nz[0]]), -1, self.p)) % self.p
        piv = int(nz[0])
        for i, row in enumerate(self.rows):
            if row[piv]:
                self.rows[i] = (row - int(row[piv]) * v) % self.p
        self.rows.append(v)
        self.rows.sort(key=lambda r: int(np.nonzero(r)[0][0]))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "_SpanGF":
        other = _SpanGF(self.dim, self.p)
        other.rows = [row.copy() for row in self.rows]
        return other


def invariant_hyperplane(group: AbelianGroup, aut: GroupAutomorphism,
                         keep_out: Optional[int] = None) -> Tuple[int, Tuple[int, ...]]:
    """For an elementary abelian group and an automorphism phi, return
    (u, basis of X) where X is a phi-invariant hyperplane avoiding u.

    X is grown greedily from Im(phi - 1) - any subspace containing that image
    is automatically invariant - and u defaults to the first standard basis
    vector outside the image (a vector inside it would lie in every invariant
    hyperplane, making the avoidance impossible).
    """
    p = group.orders[0]
    if any(o != p for o in group.orders):
        raise ParameterError("invariant hyperplanes need an elementary abelian group")
    dim = len(group.orders)
    span = _SpanGF(dim, p)
    for g in group.generators:
        span.add((group.digits[aut.apply(g)] - group.digits[g]) % p)
    if keep_out is None:
        u_digits = None
        for i in range(dim):
            e = np.zeros(dim, dtype=np.int64)
            e[i] = 1
            if not span.contains(e):
                u_digits = e
                break
        if u_digits is None:
            raise ParameterError("phi - 1 is surjective; no invariant hyperplane avoids anything")
    else:
        u_digits = np.array(group.digits[keep_out], dtype=np.int64)
        if span.contains(u_digits):
            raise ParameterError("the requested coset representative lies in Im(phi - 1), "
                                 "hence in every invariant hyperplane")
    x_span = span
    for j in range(dim):
        e = np.zeros(dim, dtype=np.int64)
        e[j] = 1
        if x_span.contains(e):
            continue
        trial = x_span.copy()
        trial.add(e)
        if trial.contains(u_digits):
            continue
        x_span = trial
    assert x_span.rank == dim - 1 and not x_span.contains(u_digits)
    basis = tuple(int(group.encode(row)) for row in x_span.rows)
    return int(group.encode(u_digits)), basis


# ---------------------------------------------------------------------------
# the dihedral trick and its converse
# ---------------------------------------------------------------------------

def dillon_fixture() -> Tuple[DesignSet, Subgroup]:
    """The order-16 reversible (16,6,2) fixture {1, a, b, c, a^3, a^2bc} in
    C4 x C2 x C2, with X = <a, b> of index 2."""
    group = abelian_make((4, 2, 2))
    a, b, c = group.generators
    a2bc = group.mul(group.mul(group.pow(a, 2), b), c)
    design = DesignSet(group, (0, a, b, c, group.pow(a, 3), a2bc), "DS", (16, 6, 2),
                       log=["fixture {1, a, b, c, a^3, a^2*b*c} in C4 x C2 x C2"])
    verify_ds(design)
    return design, subgroup_closure(group, (a, b))


def dihedral_converse(design: DesignSet, x_sub: Subgroup) -> TransferInstance:
    """Move a reversible DS / regular PDS into the generalized dihedral
    extension of an index-2 subgroup, by pairing the inversion map with a
    representative of the nontrivial coset."""
    group = design.group
    if not isinstance(group, AbelianGroup):
        raise ParameterError("the dihedral converse starts from an abelian group")
    if x_sub.parent is not group:
        raise ParameterError("X must be a subgroup of the design's group")
    if group.size != 2 * x_sub.order:
        raise IndexNotTwo(f"[G:X] = {group.size // x_sub.order}, need 2")
    if not design.is_inverse_closed():
        raise NotReversible("the design is not closed under inversion")
    if design.kind == "PDS" and group.identity in design.members:
        raise NotReversible("a regular PDS must not contain the identity")
    inversion = aut_from_images(group, [group.inv(g) for g in group.generators])
    y = int(np.nonzero(~x_sub.mask)[0][0])
    cands: List[Tuple[Tuple[int, ...], int]] = [((), g) for g in x_sub.gens]
    cands.append(((0,), y))
    return make_instance(design, [inversion], cands,
                         log=[f"inversion paired with coset representative {group.element_name(y)}"])


def _direct_basis(group: AbelianGroup, member_codes: Sequence[int]) -> List[int]:
    """Greedy generating sequence for the subgroup with the given members,
    required to decompose it as a direct product (checked by the caller)."""
    gens: List[int] = []
    span = {group.identity}
    for h in member_codes:
        if h in span:
            continue
        gens.append(int(h))
        span = set(subgroup_closure(group, tuple(gens)).members)
    return gens


def dillon_forward(dihedral_design: DesignSet, target: AbelianGroup) -> DesignSet:
    """Dillon's substitution: split the dihedral design as D1 u D2*g, embed
    the translation slice H into the abelian target (index 2), and replace g
    with a fixed element k outside the embedded copy of H."""
    group = dihedral_design.group
    if not isinstance(group, ExtensionGroup) or not isinstance(group.base, AbelianGroup):
        raise ParameterError("the dihedral design must live in an extension of an abelian group")
    aut_values = sorted(set(group.aut_part.tolist()))
    if len(aut_values) != 2:
        raise DecompositionFailure(
            f"the design's group has {len(aut_values)} automorphism slices, need exactly 2")
    base = group.base
    h_codes = sorted(int(b) for b in group.base_part[group.aut_part == 0])
    h_set = set(h_codes)

    member_arr = np.array(dihedral_design.members, dtype=np.int64)
    member_aut = group.aut_part[member_arr]
    d1 = sorted(int(b) for b in group.base_part[member_arr[member_aut == 0]])
    twisted = group.base_part[member_arr[member_aut != 0]]
    if len(set(group.aut_part[member_arr].tolist()) - {0}) > 1:
        raise DecompositionFailure("design members span more than one twisted slice")
    if twisted.size == 0:
        raise DecompositionFailure("design has no members outside the translation slice")
    c_ref = int(twisted.min())
    d2 = sorted(int(base.mul(c_ref, base.inv(int(mcode)))) for mcode in twisted)

    gens = _direct_basis(base, h_codes)
    orders = [base.element_order(g) for g in gens]
    tuples = list(_iproduct(*[range(o) for o in orders]))
    sources: List[int] = []
    for exps in tuples:
        acc = base.identity
        for g, e in zip(gens, exps):
            acc = base.mul(acc, base.pow(g, e))
        sources.append(int(acc))
    if len(set(sources)) != len(h_set) or set(sources) != h_set:
        raise DecompositionFailure("the translation slice is not the direct product "
                                   "of its greedy generators")

    if not isinstance(target, AbelianGroup):
        raise ParameterError("the substitution target must be abelian")
    if target.size != 2 * len(h_codes):
        raise IndexNotTwo(f"target order {target.size} != 2*|H| = {2 * len(h_codes)}")

    candidate_lists = []
    for o in orders:
        candidate_lists.append([t for t in range(target.size)
                                if target.pow(t, o) == target.identity])
    emb: Optional[Dict[int, int]] = None
    for images in _iproduct(*candidate_lists):
        dests = []
        for exps in tuples:
            acc = target.identity
            for img, e in zip(images, exps):
                acc = target.mul(acc, target.pow(img, e))
            dests.append(int(acc))
        if len(set(dests)) == len(h_set):
            emb = dict(zip(sources, dests))
            break
    if emb is None:
        raise IndexNotTwo("the target contains no index-2 copy of the translation slice")

    image_set = set(emb.values())
    k_elt = min(t for t in range(target.size) if t not in image_set)
    members = sorted({emb[d] for d in d1} | {int(target.mul(emb[d], k_elt)) for d in d2})
    out = DesignSet(target, tuple(members), "DS", dihedral_design.claimed,
                    log=[f"D1 size {len(d1)}, D2 size {len(d2)}, reference twist base "
                         f"{base.element_name(c_ref)}, k = {target.element_name(k_elt)}"])
    verify_ds(out)
    return out


@dataclass
class ChainResult:
    instance: TransferInstance
    report: TransferReport
    dihedral_design: DesignSet
    final_design: DesignSet


def corollary_chain(design: DesignSet, x_sub: Subgroup, target: AbelianGroup) -> ChainResult:
    """Reversible DS in G  ->  dihedral extension of X  ->  any abelian group
    containing X with index 2, preserving parameters at every step."""
    inst = dihedral_converse(design, x_sub)
    report = transfer_pds(inst)
    assert report.new_design is not None
    final = dillon_forward(report.new_design, target)
    return ChainResult(inst, report, report.new_design, final)


# ---------------------------------------------------------------------------
# p-group PDSs from partial congruence partitions
# ---------------------------------------------------------------------------

def pcp_pds(p: int, n: int, s: int) -> DesignSet:
    """Union of s order-p^n cyclic subgroups of C_{p^n} x C_{p^n} with
    pairwise trivial intersections, minus the identity."""
    if not sympy.isprime(p):
        raise ParameterError(f"p = {p} is not prime")
    if n < 1:
        raise ParameterError("n must be positive")
    if s < 2:
        raise ParameterError("s must be at least 2; one line minus the identity "
                             "is only degenerately a PDS")
    if s > p + 1:
        raise TooManyLines(f"at most {p + 1} lines of C_{p**n} x C_{p**n} intersect "
                           f"pairwise trivially; requested {s}")
    q = p ** n
    group = abelian_make((q, q))
    cs = np.arange(q, dtype=np.int64)
    lines = [cs.copy(), q * cs]
    for slope in range(1, p):
        lines.append(cs + q * ((cs * slope) % q))
    chosen = lines[:s]
    members: set = set()
    for line in chosen:
        members |= set(int(z) for z in line)
    members.discard(group.identity)
    assert len(members) == s * (q - 1), "lines do not intersect trivially"
    claimed = (q * q, s * (q - 1), q + s * s - 3 * s, s * s - s)
    slopes = list(range(1, p))[:max(0, s - 2)]
    design = DesignSet(group, tuple(sorted(members)), "PDS", claimed,
                       log=[f"lines: <(1,0)>, <(0,1)>"
                            + ("".join(f", <(1,{j})>" for j in slopes))])
    verify_pds(design, require_regular=True)
    return design


def pgroup_multiplier_transfer(p: int, n: int, base_pds: Optional[DesignSet] = None,
                               s: int = 2) -> TransferInstance:
    """Pair the multiplier automorphism g -> g^(p^(n-1)+1) with the second
    coordinate, landing the PDS in a nonabelian p-group.

    The candidate generators include (1, y^p) explicitly: it generates the
    second factor of X = <x, y^p>, and at p = 2, n = 2 the square of
    (phi, y) degenerates to the identity, so the pair (1,x), (phi,y) alone
    closes up short of |G|.
    """
    if n < 2:
        raise ParameterError("n must be at least 2: at n = 1 the multiplier map "
                             "is the identity")
    design = base_pds if base_pds is not None else pcp_pds(p, n, s)
    group = design.group
    q = p ** n
    if not isinstance(group, AbelianGroup) or group.orders != (q, q):
        raise ParameterError(f"expected a design in C_{q} x C_{q}")
    if group.identity in design.members or not design.is_inverse_closed():
        raise NotRegular("the base PDS must be regular (identity-free and inverse-closed)")
    t = p ** (n - 1) + 1
    if not multiplier_check(design, t):
        raise MultiplierFails(f"{t} is not a multiplier of this design, which contradicts "
                              "the multiplier theorem for regular abelian PDSs")
    phi = aut_from_images(group, [group.pow(g, t) for g in group.generators])
    x, y = group.generators
    cands = [((), x), ((), group.pow(y, p)), ((0,), y)]
    return make_instance(design, [phi], cands,
                         log=[f"multiplier {t} = p^(n-1)+1 fixes the design",
                              "generators (1,x), (1,y^p), (phi,y)"])


# ---------------------------------------------------------------------------
# Spence difference sets
# ---------------------------------------------------------------------------

def spence(d: int) -> TransferInstance:
    """(3^(3d-1)(3^3d+1)/2 ...) difference set in C_3^3d x C_r with the
    d-fold Frobenius twisted onto the first basis vector of nonzero trace."""
    if d < 1:
        raise ParameterError("d must be positive")
    m = 3 * d
    r = (3 ** m - 1) // 2
    override = (1, 2, 0, 1) if d == 1 else None
    F = field_make(3, m, modulus_override=override)
    group = abelian_make((3,) * m + (r,))
    planes = hyperplanes(F)
    wbase = 3 ** m
    h0 = set(planes[0].members)
    members: List[int] = [x for x in range(3 ** m) if x not in h0]
    for j in range(1, r):
        members.extend(h + wbase * j for h in planes[j].members)
    v = (3 ** m) * r
    k = 3 ** (m - 1) * (3 ** m + 1) // 2
    lam = 3 ** (m - 1) * (3 ** (m - 1) + 1) // 2
    design = DesignSet(group, tuple(sorted(members)), "DS", (v, k, lam),
                       log=[f"field {F!r}",
                            "members: (complement of H0, w^0) and (H0*g^j, w^j) for j >= 1"])
    verify_ds(design)

    images = [int(F.frob(3 ** i, d)) for i in range(m)]
    images.append(wbase * (3 ** d % r))
    phi = aut_from_images(group, images)

    h0_basis = _SpanGF(m, 3)
    basis_codes: List[int] = []
    for h in sorted(h0):
        if h0_basis.add(F.digits[h]):
            basis_codes.append(h)
    a_star = None
    for i in range(m):
        if F.trace(3 ** i) != 0:
            a_star = 3 ** i
            break
    assert a_star is not None, "the trace map vanishes on a basis"
    cands = [((), h) for h in basis_codes] + [((), wbase), ((0,), a_star)]
    return make_instance(design, [phi], cands,
                         log=[f"H0 basis {basis_codes}, twist companion a* = "
                              f"{F.element_str(a_star)}"])


def spence_sylow3(report: TransferReport) -> Subgroup:
    """The proof's Sylow-3 subgroup <1 x H0, (phi, a*)> inside the output."""
    closure = report.new_group
    assert closure is not None
    gens = closure.generators
    m = len(report.instance.source_group.orders) - 1
    return subgroup_closure(closure, tuple(gens[:m - 1]) + (gens[m],))


# ---------------------------------------------------------------------------
# Denniston partial difference sets
# ---------------------------------------------------------------------------

def denniston_even(m: int, r: int) -> TransferInstance:
    """Denniston-parameter PDS from an anisotropic quadratic cone over
    GF(2^m), with the coordinate swap twisted onto the complement of an
    invariant hyperplane."""
    if m < 2 or not 1 <= r < m:
        raise ParameterError("need m >= 2 and 1 <= r < m")
    F = field_make(2, m)
    q = 2 ** m
    alpha = None
    for e in range(1, q - 1):
        if gcd(e, q - 1) != 1:
            continue
        cand = int(F.exp[e % (q - 1)])
        if F.trace(F.inv(cand)) == 1:
            alpha = cand
            break
    if alpha is None:
        raise NoValidAlpha("no primitive element alpha satisfies tr(1/alpha) = 1")

    group = abelian_make((2,) * (3 * m))
    kbound = 2 ** r
    members: List[int] = []
    zero_count = 0
    for a in range(q):
        for b in range(q):
            qval = F.add(F.add(F.mul(a, a), F.mul(F.mul(alpha, a), b)), F.mul(b, b))
            if qval == 0 and (a or b):
                zero_count += 1
            if qval < kbound:
                members.extend(c + q * F.mul(c, a) + q * q * F.mul(c, b)
                               for c in range(1, q))
    if zero_count:
        raise NoValidAlpha(f"Q vanishes at {zero_count} nonzero points; the form is degenerate")
    k1 = 2 ** (m + r) - 2 ** m + 2 ** r
    claimed = (q ** 3, k1 * (q - 1), q - kbound + k1 * (kbound - 2), k1 * (kbound - 1))
    design = DesignSet(group, tuple(sorted(set(members))), "PDS", claimed,
                       log=[f"alpha = {F.element_str(alpha)}, K = codes below 2^{r}"])
    verify_pds(design, require_regular=True)

    images: List[int] = []
    for i in range(m):
        images.append(2 ** i)
    for i in range(m):
        images.append(2 ** (2 * m + i))
    for i in range(m):
        images.append(2 ** (m + i))
    phi = aut_from_images(group, images)
    u, basis = invariant_hyperplane(group, phi)
    cands = [((), x) for x in basis] + [((0,), u)]
    return make_instance(design, [phi], cands,
                         log=[f"swap twisted onto u = {group.element_name(u)}; "
                              f"X basis of size {len(basis)}"])


def denniston_gr4(t: int, k: int) -> TransferInstance:
    """Denniston-parameter PDS in C_4^t x C_2^t built over the Galois ring
    GR(4,t), with up to t commuting involutions psi_l twisted onto field
    translations."""
    if t < 2:
        raise ParameterError("t must be at least 2")
    if not 1 <= k <= t:
        raise ParameterError("need 1 <= k <= t")
    ring = galois_ring_make(t)
    F = ring.residue_field
    n1 = 2 ** t - 1
    rsize = 4 ** t

    w_i = None
    for i in range(n1):
        if F.trace(int(F.exp[i])) == 1:
            w_i = i
            break
    assert w_i is not None
    w = int(F.exp[w_i])
    one_plus_w = F.add(1, w)

    planes = hyperplanes(F)
    ksets = [tuple(int(ring.iso_table[x]) for x in plane.members) for plane in planes]

    def dbl(code: int) -> int:
        return int(ring.add(code, code))

    members: List[int] = []
    for i in range(n1):
        s_code = int(F.exp[i])
        for j in range(n1):
            pi_a = F.add(F.mul(F.exp[i], one_plus_w), F.mul(F.exp[j], w))
            base_pt = ring.add(ring.add(int(ring.hpow[i]), int(ring.hpow[(2 * i - j) % n1])),
                               int(ring.iso_table[int(pi_a)]))
            for kap in ksets[j]:
                members.append(int(ring.add(int(base_pt), kap)) + rsize * s_code)
    k1 = 2 ** (2 * t - 1) - 2 ** (t - 1)
    claimed = (2 ** (3 * t), k1 * (2 ** t - 1),
               2 ** (t - 1) + k1 * (2 ** (t - 1) - 2), k1 * (2 ** (t - 1) - 1))
    group = abelian_make((4,) * t + (2,) * t)
    design = DesignSet(group, tuple(sorted(members)), "PDS", claimed,
                       log=[f"ring {ring!r}, w = g^{w_i}"])
    verify_pds(design, require_regular=True)

    member_set = set(design.members)
    tr_g = int(F.trace(int(F.exp[1])))
    auts: List[GroupAutomorphism] = []
    for ell in range(k):
        images = []
        if ell == 0:
            for i in range(t):
                images.append(int(ring.add(4 ** i, dbl(4 ** i))))
            for j in range(t):
                images.append(rsize * 2 ** j)
        else:
            shift = 2 ** (ell - 1)
            excluded = {(ell - 1) % t, (ell - 2) % t}
            for i in range(t):
                images.append(int(ring.add(4 ** i, dbl(int(ring.hpow[(i + shift) % n1])))))
            for j in range(t):
                f_val = dbl(int(ring.hpow[j])) if tr_g else 0
                for kk in range(t):
                    if kk in excluded:
                        continue
                    f_val = int(ring.add(f_val, dbl(int(ring.hpow[(j + 2 ** kk) % n1]))))
                images.append(f_val + rsize * 2 ** j)
        aut = aut_from_images(group, images)
        if set(aut.perm[list(design.members)].tolist()) != member_set:
            raise PsiDoesNotFixD(f"psi_{ell} does not fix the design at t = {t}; "
                                 f"retry with k <= {ell}")
        auts.append(aut)

    cands = [((), 4 ** i) for i in range(t)]
    cands += [((), rsize * 2 ** j) for j in range(k, t)]
    cands += [((ell,), rsize * 2 ** ell) for ell in range(k)]
    return make_instance(design, auts, cands,
                         log=[f"{k} involution(s) twisted onto field translations"])


def denniston_odd(p: int, t: int) -> TransferInstance:
    """Odd-order Denniston-parameter PDS in C_p^(3m), m = p*t, with the
    p^(2t)-power map twisted onto a vector outside an invariant hyperplane.

    The two primitive elements cannot be chosen independently: the coset
    pairing only produces a PDS when the GF(p^m) side is generated by the
    relative norm of the GF(p^2m) side, so omega is taken to be N(alpha) =
    alpha^(p^m + 1) pulled back through the canonical subfield embedding.
    """
    if not sympy.isprime(p) or p == 2:
        raise ParameterError(f"p = {p} must be an odd prime")
    if t < 1:
        raise ParameterError("t must be positive")
    m = p * t
    q1 = p ** m
    q2 = p ** (2 * m)
    F1 = field_make(p, m)
    F2 = field_make(p, 2 * m)
    c = (q1 - 1) // (p - 1)
    group = abelian_make((p,) * (3 * m))

    emb = field_embed(F1, F2)
    rev = {int(v): i for i, v in enumerate(emb)}
    omega = rev[int(F2.exp[(q1 + 1) % (q2 - 1)])]
    members: List[int] = []
    for i in range(c):
        a_i = np.array([F1.pow(omega, i + c * j) for j in range(p - 1)], dtype=np.int64)
        b_idx = (i + c * np.arange((q2 - 1) // c, dtype=np.int64)) % (q2 - 1)
        b_i = np.concatenate([F2.exp[b_idx], np.array([0], dtype=np.int64)])
        members.extend(int(z) for z in np.add.outer(a_i, q1 * b_i).ravel())
    k1 = p ** (m + 1) - p ** m + p
    claimed = (p ** (3 * m), (q1 - 1) * ((p - 1) * (q1 + 1) + 1),
               q1 - p + k1 * (p - 2), k1 * (p - 1))
    design = DesignSet(group, tuple(sorted(members)), "PDS", claimed,
                       log=[f"fields {F1!r} and {F2!r}",
                            f"omega = pullback of the relative norm of alpha = "
                            f"{F1.element_str(omega)}"])
    verify_pds(design, require_regular=True)

    images = [int(F1.frob(p ** i, 2 * t)) for i in range(m)]
    images += [q1 * int(F2.frob(p ** i, 2 * t)) for i in range(2 * m)]
    phi = aut_from_images(group, images)
    u, basis = invariant_hyperplane(group, phi)
    cands = [((), x) for x in basis] + [((0,), u)]
    return make_instance(design, [phi], cands,
                         log=[f"power map twisted onto u = {group.element_name(u)}"])


# ---------------------------------------------------------------------------
# McFarland difference sets
# ---------------------------------------------------------------------------

def _plane_codes(plane, q: int) -> List[int]:
    if isinstance(plane.members[0], tuple):
        return [x + q * y for (x, y) in plane.members]
    return list(plane.members)


def mcfarland_base(q: int, s: int, k_orders: Optional[Sequence[int]] = None,
                   assignment: Optional[Sequence[int]] = None) -> DesignSet:
    """One hyperplane of GF(q)^(s+1) per nonidentity element of a tail group
    of order r+1; the union of the tagged hyperplanes is a difference set."""
    if q < 2 or s < 1:
        raise ParameterError("need q >= 2 and s >= 1")
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise ParameterError(f"q = {q} is not a prime power")
    p, e = next(iter(factors.items()))
    r = (q ** (s + 1) - 1) // (q - 1)
    if s == 1:
        F = field_make(p, e)
        planes = hyperplanes(F, ambient_dim=2)
        e_orders = (p,) * (2 * e)
        plane_codes = [_plane_codes(pl, q) for pl in planes]
    elif e == 1:
        F = field_make(p, s + 1)
        planes = hyperplanes(F)
        e_orders = (p,) * (s + 1)
        plane_codes = [list(pl.members) for pl in planes]
    else:
        raise ParameterError("supported shapes: s = 1 with any prime power q, "
                             "or prime q with s >= 2")
    assert len(planes) == r
    e_size = q ** (s + 1)

    tail = abelian_make(tuple(k_orders) if k_orders is not None else (r + 1,))
    if tail.size != r + 1:
        raise ParameterError(f"the tail group must have order r + 1 = {r + 1}, "
                             f"got {tail.size}")
    assign = tuple(assignment) if assignment is not None else tuple(range(1, r + 1))
    if len(assign) != r:
        raise ParameterError(f"assignment must tag all {r} hyperplanes")
    if any(a == tail.identity for a in assign):
        raise ParameterError("assignment may not use the identity of the tail group")
    if len(set(assign)) != len(assign):
        dup = sorted(a for a in set(assign) if list(assign).count(a) > 1)[0]
        raise AssignmentNotInjective(f"tail element {dup} is assigned to two hyperplanes")
    if any(not 0 <= a < tail.size for a in assign):
        raise ParameterError("assignment references elements outside the tail group")

    group = abelian_make(e_orders + tail.orders)
    members: List[int] = []
    for codes, a in zip(plane_codes, assign):
        members.extend(ec + e_size * a for ec in codes)
    claimed = (e_size * (r + 1), q ** s * r, q ** s * (q ** s - 1) // (q - 1))
    design = DesignSet(group, tuple(sorted(members)), "DS", claimed,
                       log=[f"{r} hyperplanes tagged by nonidentity elements of "
                            f"{tail!r}"])
    verify_ds(design)
    return design


def _swap_pairing(planes):
    """Index pairs of the hyperplane list under the coordinate swap, plus the
    unique fixed plane."""
    by_set = {frozenset(pl.members): i for i, pl in enumerate(planes)}
    image = []
    for pl in planes:
        image.append(by_set[frozenset((y, x) for (x, y) in pl.members)])
    fixed = [i for i, j in enumerate(image) if i == j]
    assert len(fixed) == 1, "the swap should fix exactly the diagonal"
    pairs = []
    seen = set(fixed)
    for i in range(len(planes)):
        if i in seen:
            continue
        seen.update((i, image[i]))
        pairs.append((i, image[i]))
    return fixed[0], pairs


def mcfarland_even(d: int, variant: int) -> TransferInstance:
    """McFarland design over E = GF(q)^2, q = 2^d, tail C_(q+2) (variants 1
    and 2) or dihedral of order q+2 (variant 3), with the coordinate swap
    paired against tail inversion / conjugation."""
    if d < 2:
        raise ParameterError("(q+2)/2 must be odd, which needs d >= 2")
    if variant not in (1, 2, 3):
        raise ParameterError("variant must be 1, 2, or 3")
    q = 2 ** d
    F = field_make(2, d)
    planes = hyperplanes(F, ambient_dim=2)
    fixed, pairs = _swap_pairing(planes)
    e_size = q * q
    plane_codes = [_plane_codes(pl, q) for pl in planes]
    e1, e2 = 1, q
    other_e = [2 ** i for i in range(1, d)] + [q * 2 ** i for i in range(1, d)]
    claimed = (q * q * (q + 2), q * (q + 1), q)

    if variant in (1, 2):
        half = (q + 2) // 2
        group = abelian_make((2,) * (2 * d) + (q + 2,))
        assign = [0] * len(planes)
        assign[fixed] = half
        pool = [x for x in range(1, q + 2) if x != half]
        for (i, j) in pairs:
            x = pool.pop(0)
            assign[i] = x
            pool.remove((q + 2 - x) % (q + 2))
            assign[j] = (q + 2 - x) % (q + 2)
        members: List[int] = []
        for codes, a in zip(plane_codes, assign):
            members.extend(ec + e_size * a for ec in codes)
        design = DesignSet(group, tuple(sorted(members)), "DS", claimed,
                           log=[f"fixed plane -> {half}; swap pairs matched to "
                                f"inverse pairs of C_{q + 2}"])
        verify_ds(design)
        images = [q * 2 ** i for i in range(d)] + [2 ** i for i in range(d)]
        images.append(e_size * (q + 1))
        phi = aut_from_images(group, images)
        y_g = e_size * 2
        u_g = e_size * half
        if variant == 1:
            cands = [((0,), u_g), ((), y_g)]
            cands += [((), 2 ** i) for i in range(d)]
            cands += [((), q * 2 ** i) for i in range(d)]
        else:
            cands = [((0,), e1), ((), y_g), ((), u_g), ((), e1 + e2)]
            cands += [((), g) for g in other_e]
        return make_instance(design, [phi], cands,
                             log=[f"variant {variant} generators"])

    # variant 3: dihedral tail, built as an extension over C_2^2d x C_(q+2)/2
    half = (q + 2) // 2
    base = abelian_make((2,) * (2 * d) + (half,))
    y0 = base.generators[2 * d]
    inv_images = list(base.generators[:2 * d]) + [base.pow(y0, half - 1)]
    inv3 = aut_from_images(base, inv_images)
    gprime = extension_closure(
        base, [inv3],
        [((), g) for g in base.generators[:2 * d]] + [((), y0), ((0,), 0)])
    assert gprime.size == q * q * (q + 2)

    def kp(a: int, j: int) -> int:
        return gprime.index_of_pair(a, e_size * j)

    u_el = kp(1, 0)
    kp_list = [(0, j) for j in range(1, half)] + [(1, j) for j in range(half)]
    kp_list.remove((1, 0))
    assign_k: List[Optional[Tuple[int, int]]] = [None] * len(planes)
    assign_k[fixed] = (1, 0)
    pool2 = list(kp_list)
    for (i, j) in pairs:
        a, jj = pool2.pop(0)
        mate = (a, (-jj) % half)
        pool2.remove(mate)
        assign_k[i] = (a, jj)
        assign_k[j] = mate
    members = []
    for codes, tag in zip(plane_codes, assign_k):
        a, jj = tag  # type: ignore[misc]
        for ec in codes:
            members.append(gprime.index_of_pair(a, ec + e_size * jj))
    design = DesignSet(gprime, tuple(sorted(members)), "DS", claimed,
                       log=["dihedral tail; fixed plane tagged by the involution u"])
    verify_ds(design)

    images = []
    for i in range(d):
        images.append(gprime.index_of_pair(0, q * 2 ** i))
    for i in range(d):
        images.append(gprime.index_of_pair(0, 2 ** i))
    images.append(kp(0, half - 1))
    images.append(u_el)
    psi = aut_from_images(gprime, images)
    cands = [((0,), gprime.index_of_pair(0, e1)),
             ((), kp(0, 1)), ((), u_el),
             ((), gprime.index_of_pair(0, e1 + e2))]
    cands += [((), gprime.index_of_pair(0, g)) for g in other_e]
    return make_instance(design, [psi], cands,
                         log=["variant 3: swap times conjugation-by-u twisted onto e1"])


def mcfarland_even_witnesses(report: TransferReport) -> Tuple[Subgroup, Subgroup]:
    """Variant 3's Sylow-2 subgroup Q' = <u, (psi,e1,1), (1,e_i,1)> and the
    elementary abelian E' = <u, (1,e1+e2,1), (1,e_i,1)> of order q^2."""
    closure = report.new_group
    assert closure is not None
    gens = closure.generators
    q_sub = subgroup_closure(closure, (gens[2], gens[0]) + tuple(gens[4:]))
    e_sub = subgroup_closure(closure, (gens[2], gens[3]) + tuple(gens[4:]))
    return q_sub, e_sub


def mcfarland_odd(q: int, s: int) -> TransferInstance:
    """McFarland design over GF(q)^(s+1) with tail Z/2p, q odd, r+1 = 2p; the
    unipotent single-block map acts on columns and is paired with an order-q
    multiplication of the tail."""
    if not sympy.isprime(q) or q == 2:
        raise ParameterError(f"q = {q} must be an odd prime")
    if s < 1:
        raise ParameterError("s must be positive")
    r = (q ** (s + 1) - 1) // (q - 1)
    twop = r + 1
    pp = twop // 2
    if twop % 2 or not sympy.isprime(pp) or pp == 2:
        raise RPlusOneNotTwiceOddPrime(f"r+1 = {twop} is not twice an odd prime")
    if not 2 <= s < q:
        raise ParameterError(f"need 2 <= s < q so the column action has order q, got s = {s}")
    assert (pp - 1) % q == 0
    n = s + 1
    espace = abelian_make((q,) * n)
    e_size = q ** n

    normals = []
    plane_members = []
    for fcode in range(1, e_size):
        f = espace.digits[fcode]
        nz = np.nonzero(f)[0]
        if f[nz[0]] != 1:
            continue
        normals.append(fcode)
        plane_members.append(np.nonzero((espace.digits @ f) % q == 0)[0])
    assert len(normals) == r

    # column action of the unipotent bidiagonal block: e_1 -> e_1,
    # e_j -> e_(j-1) + e_j
    m_images = [espace.generators[0]]
    for j in range(1, n):
        m_images.append(int(espace.generators[j - 1] + espace.generators[j]))
    m_aut = aut_from_images(espace, m_images)
    by_set = {frozenset(int(z) for z in mem): i for i, mem in enumerate(plane_members)}
    plane_image = [by_set[frozenset(int(z) for z in m_aut.perm[mem])]
                   for mem in plane_members]
    fixed = [i for i, j in enumerate(plane_image) if i == j]
    assert len(fixed) == 1 and normals[fixed[0]] == q ** s, \
        "the column action should fix exactly the hyperplane with normal e_(s+1)"
    plane_orbits = []
    seen = set(fixed)
    for i in range(r):
        if i in seen:
            continue
        orbit = [i]
        while plane_image[orbit[-1]] not in orbit:
            orbit.append(plane_image[orbit[-1]])
        assert len(orbit) == q
        seen.update(orbit)
        plane_orbits.append(orbit)

    c = None
    for cand in range(2, twop):
        if gcd(cand, twop) == 1 and pow(cand, q, twop) == 1 and cand % twop != 1:
            c = cand
            break
    assert c is not None, "no residue of multiplicative order q mod 2p"
    k_orbits = []
    seen_k = {0, pp}
    for x in range(1, twop):
        if x in seen_k:
            continue
        orbit = [x]
        while (orbit[-1] * c) % twop != x:
            orbit.append((orbit[-1] * c) % twop)
        assert len(orbit) == q
        seen_k.update(orbit)
        k_orbits.append(orbit)
    assert len(k_orbits) == len(plane_orbits)

    assign = [0] * r
    assign[fixed[0]] = pp
    for porb, korb in zip(plane_orbits, k_orbits):
        for pi, ki in zip(porb, korb):
            assign[pi] = ki

    group = abelian_make((q,) * n + (twop,))
    members: List[int] = []
    for mem, a in zip(plane_members, assign):
        members.extend(int(z) + e_size * a for z in mem)
    claimed = (e_size * twop, q ** s * r, q ** s * (q ** s - 1) // (q - 1))
    design = DesignSet(group, tuple(sorted(members)), "DS", claimed,
                       log=[f"sigma multiplier c = {c}; fixed hyperplane tagged by p = {pp}"])
    verify_ds(design)

    images = [int(m) for m in m_images] + [e_size * c]
    phi = aut_from_images(group, images)
    cands = [((), e_size)]
    cands += [((), q ** i) for i in range(s)]
    cands += [((0,), q ** s)]
    return make_instance(design, [phi], cands,
                         log=["generators (1,0,z), (1,e_i,0) for i <= s, (phi,e_(s+1),0)"])


def mcfarland_odd_sylow(report: TransferReport) -> Subgroup:
    """The proof's Sylow-q subgroup <(phi,e_(s+1),0), (1,e_i,0)>."""
    closure = report.new_group
    assert closure is not None
    return subgroup_closure(closure, tuple(closure.generators[1:]))


# ---------------------------------------------------------------------------
# relative difference sets in 2-groups
# ---------------------------------------------------------------------------

def _rds_group(d: int) -> Tuple[AbelianGroup, FiniteField, int]:
    q = 2 ** d
    F = field_make(2, 2 * d)
    group = abelian_make((q * q,) + (2,) * (4 * d))
    return group, F, q * q


def rds_base(d: int) -> DesignSet:
    """The spread RDS: pair the i-th power of w with the i-th hyperplane of
    GF(q^2)^2 in base order; any bijection onto the planes other than the
    forbidden one yields the same parameters."""
    if d < 1:
        raise ParameterError("d must be positive")
    group, F, qq = _rds_group(d)
    planes = hyperplanes(F, ambient_dim=2)
    members: List[int] = []
    for i in range(1, qq + 1):
        w = i % qq
        members.extend(w + qq * (x + qq * y) for (x, y) in planes[i].members)
    forbidden = subgroup_closure(group, tuple(qq * 2 ** i for i in range(2 * d)))
    assert forbidden.order == qq
    design = DesignSet(group, tuple(sorted(members)), "RDS",
                       (qq * qq, qq, qq * qq, qq), forbidden=forbidden,
                       log=["slot i carries hyperplane i of the base ordering"])
    verify_rds(design)
    return design


def rds_transfer(d: int, variant: int) -> TransferInstance:
    """Re-index the spread so the coordinatewise q-power map sends slot i to
    slot q^2 - i, then twist w-inversion x Frobenius onto the Thm-specific
    generators.  The re-indexing needs exactly 3 fixed hyperplanes; the map
    fixes q + 1 of them, so only q = 2 admits a valid ladder."""
    if d < 1:
        raise ParameterError("d must be positive")
    if variant not in (1, 2):
        raise ParameterError("variant must be 1 or 2")
    group, F, qq = _rds_group(d)
    q = 2 ** d
    planes = hyperplanes(F, ambient_dim=2)
    by_set = {frozenset(pl.members): i for i, pl in enumerate(planes)}
    image = [by_set[frozenset((int(F.frob(x, d)), int(F.frob(y, d)))
                              for (x, y) in pl.members)] for pl in planes]
    fixed = [i for i, j in enumerate(image) if i == j]
    if len(fixed) != 3:
        raise ReindexObstruction(
            f"the coordinatewise {q}-power map fixes {len(fixed)} of the {qq + 1} "
            f"hyperplanes, but the index ladder has exactly 3 self-paired slots "
            f"(0, {qq // 2}, {qq}); no re-indexing can satisfy the slot constraint "
            f"for q = {q} > 2")
    assert fixed == [0, 1, 2]
    ladder = [-1] * (qq + 1)
    ladder[0], ladder[qq // 2], ladder[qq] = 0, 1, 2
    slot = 1
    seen = set(fixed)
    for i in range(len(planes)):
        if i in seen:
            continue
        seen.update((i, image[i]))
        while ladder[slot] != -1:
            slot += 1
        ladder[slot] = i
        ladder[qq - slot] = image[i]
    members: List[int] = []
    for i in range(1, qq + 1):
        w = i % qq
        members.extend(w + qq * (x + qq * y) for (x, y) in planes[ladder[i]].members)
    forbidden = subgroup_closure(group, tuple(qq * 2 ** i for i in range(2 * d)))
    design = DesignSet(group, tuple(sorted(members)), "RDS",
                       (qq * qq, qq, qq * qq, qq), forbidden=forbidden,
                       log=[f"ladder {ladder}"])
    verify_rds(design)

    images_g = [qq - 1]
    images_g += [qq * int(F.frob(2 ** i, d)) for i in range(2 * d)]
    images_g += [qq * qq * int(F.frob(2 ** i, d)) for i in range(2 * d)]
    phi = aut_from_images(group, images_g)

    if variant == 1:
        cands = [((0,), 1), ((), 2)]
        cands += [((), qq * 2 ** i) for i in range(2 * d)]
        cands += [((), qq * qq * 2 ** i) for i in range(2 * d)]
        log = ["generators (phi,w,0,0), (1,w^2,0,0), and a basis of V"]
    else:
        beta = None
        for e in range(1, qq - 1):
            if gcd(e, qq - 1) != 1:
                continue
            cand = int(F.exp[e % (qq - 1)])
            if not F.in_subfield(cand, d):
                beta = cand
                break
        assert beta is not None
        span = _SpanGF(4 * d, 2)
        qbasis = []
        for a in range(1, qq):
            if F.in_subfield(a, d):
                vec = np.concatenate([F.digits[a], np.zeros(2 * d, dtype=np.int64)])
                if span.add(vec):
                    qbasis.append(a)
                vec2 = np.concatenate([np.zeros(2 * d, dtype=np.int64), F.digits[a]])
                span.add(vec2)
        u_vec = np.concatenate([F.digits[beta], np.zeros(2 * d, dtype=np.int64)])
        assert not span.contains(u_vec)
        for cand_vec in ([np.concatenate([F.digits[2 ** j], np.zeros(2 * d, dtype=np.int64)])
                          for j in range(2 * d)]
                         + [np.concatenate([np.zeros(2 * d, dtype=np.int64), F.digits[2 ** j]])
                            for j in range(2 * d)]):
            if span.contains(cand_vec):
                continue
            trial = span.copy()
            trial.add(cand_vec)
            if trial.contains(u_vec):
                continue
            span = trial
        assert span.rank == 4 * d - 1
        bcodes = []
        for row in span.rows:
            x = int(np.sum(row[:2 * d] * (1 << np.arange(2 * d))))
            y = int(np.sum(row[2 * d:] * (1 << np.arange(2 * d))))
            bcodes.append(qq * (x + qq * y))
        cands = [((0,), qq * beta), ((), 1)]
        cands += [((), b) for b in bcodes]
        log = [f"beta = {F.element_str(beta)}; B completed greedily from the "
               f"GF({q}) x GF({q}) block"]
    return make_instance(design, [phi], cands, log=log)
