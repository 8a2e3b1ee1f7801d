"""Finite groups with 0-based integer element indices.

Every group enumerates its elements as 0 .. size-1 with 0 the identity, and
all operations work on indices (vectorized variants take numpy arrays).  Two
concrete kinds are provided:

* AbelianGroup - a direct product of cyclic groups; the element with
  mixed-radix digits (d_0, d_1, ...) against the given orders has index
  sum(d_i * prod(orders[:i])).  This matches the integer coding of field and
  ring elements, so an additive field element code is directly an element
  index of the matching elementary abelian group.

* ExtensionGroup - a group of pairs (automorphism, base element) inside the
  semidirect product Aut(B) x B, multiplied by
  (f1, b1)(f2, b2) = (f1 f2, b1^f2 * b2), enumerated by a deterministic
  breadth-first closure from a generator list.  The base may itself be any
  group, so extensions nest.

Automorphisms are certified at construction: the generator-image map is
extended to a full permutation, then bijectivity and the homomorphism
property are checked exhaustively for groups of order <= 2^14 and on all
generator pairs plus 10^4 seeded random pairs above that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    ClosureOverflow,
    EmptyOrders,
    NotASubgroupMember,
    NotBijective,
    NotHomomorphism,
    ParameterError,
)

EXHAUSTIVE_LIMIT = 2 ** 14
SAMPLE_PAIRS = 10_000


class Group:
    """Common index-based interface; concrete classes fill in the tables."""

    size: int
    identity: int = 0
    generators: Tuple[int, ...]

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def inv_many(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def quotient_outer(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """All pairwise a_i * b_j^(-1), shape (len(a), len(b))."""
        raise NotImplementedError

    def mul_elems(self, a: np.ndarray, b: int) -> np.ndarray:
        return self.mul_many(a, np.full(np.shape(a), b, dtype=np.int64))

    def mul_outer(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.mul_many(np.asarray(a)[:, None], np.asarray(b)[None, :])

    def conj(self, x: int, g: int) -> int:
        return self.mul(self.inv(g), self.mul(x, g))

    def element_name(self, a: int) -> str:
        raise NotImplementedError

    def element(self, a: int) -> "GroupElement":
        if not 0 <= a < self.size:
            raise ParameterError(f"element index {a} out of range for group of order {self.size}")
        return GroupElement(self, int(a))


@dataclass(frozen=True)
class GroupElement:
    group: Group
    index: int

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.group is not self.group:
            raise ParameterError("elements of different groups cannot be multiplied")
        return GroupElement(self.group, self.group.mul(self.index, other.index))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, self.group.inv(self.index))

    @property
    def order(self) -> int:
        return element_order(self.group, self.index)

    def __repr__(self) -> str:
        return self.group.element_name(self.index)


class AbelianGroup(Group):
    def __init__(self, orders: Sequence[int]):
        orders = tuple(int(n) for n in orders)
        if len(orders) == 0:
            raise EmptyOrders("an abelian group needs at least one cyclic factor")
        if any(n < 2 for n in orders):
            raise ParameterError(f"cyclic factor orders must be at least 2, got {orders}")
        self.orders = orders
        self.size = int(np.prod([np.int64(n) for n in orders]))
        self._orders_arr = np.array(orders, dtype=np.int64)
        radix = np.ones(len(orders), dtype=np.int64)
        for i in range(1, len(orders)):
            radix[i] = radix[i - 1] * orders[i - 1]
        self._radix = radix
        codes = np.arange(self.size, dtype=np.int64)
        digs = np.empty((self.size, len(orders)), dtype=np.int64)
        rem = codes.copy()
        for i, n in enumerate(orders):
            digs[:, i] = rem % n
            rem //= n
        self.digits = digs
        self.generators = tuple(int(r) for r in radix)

    def encode(self, digs: np.ndarray) -> np.ndarray:
        return (digs % self._orders_arr) @ self._radix

    def mul(self, a: int, b: int) -> int:
        return int(self.encode(self.digits[a] + self.digits[b]))

    def inv(self, a: int) -> int:
        return int(self.encode(-self.digits[a]))

    def mul_many(self, a, b):
        return self.encode(self.digits[np.asarray(a)] + self.digits[np.asarray(b)])

    def inv_many(self, a):
        return self.encode(-self.digits[np.asarray(a)])

    def quotient_outer(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        return self.encode(self.digits[a][:, None, :] - self.digits[b][None, :, :])

    def pow_many(self, a, e: int):
        return self.encode(self.digits[np.asarray(a)] * e)

    def pow(self, a: int, e: int) -> int:
        return int(self.encode(self.digits[a] * e))

    def element_order(self, a: int) -> int:
        out = 1
        for d, n in zip(self.digits[a].tolist(), self.orders):
            out = lcm(out, n // gcd(d, n))
        return out

    def element_name(self, a: int) -> str:
        return "(" + ",".join(str(d) for d in self.digits[a].tolist()) + ")"

    def __repr__(self) -> str:
        return " x ".join(f"C{n}" for n in self.orders)


def abelian_make(orders: Sequence[int]) -> AbelianGroup:
    return AbelianGroup(orders)


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

class GroupAutomorphism:
    """A certified automorphism, stored as generator images plus a full
    permutation of the element indices (x -> x^phi)."""

    def __init__(self, group: Group, images: Tuple[int, ...], perm: np.ndarray, sampled: bool):
        self.group = group
        self.images = images
        self.perm = perm
        self.certified_by_sampling = sampled

    def apply(self, a: int) -> int:
        return int(self.perm[a])

    @property
    def order(self) -> int:
        cur = self.perm
        n = 1
        ident = np.arange(self.group.size)
        while not np.array_equal(cur, ident):
            cur = self.perm[cur]
            n += 1
            if n > self.group.size:
                raise ParameterError("permutation order exceeded group order")
        return n

    def __repr__(self) -> str:
        imgs = ",".join(self.group.element_name(i) for i in self.images)
        return f"Aut[{imgs}]"


def _extend_images_to_perm(group: Group, images: Sequence[int]) -> np.ndarray:
    if isinstance(group, AbelianGroup):
        img_digits = group.digits[np.asarray(images, dtype=np.int64)]
        return group.encode(group.digits @ img_digits)
    if isinstance(group, ExtensionGroup):
        perm = np.zeros(group.size, dtype=np.int64)
        for z in range(1, group.size):
            perm[z] = group.mul(int(perm[group.bfs_parent[z]]), int(images[group.bfs_genidx[z]]))
        return perm
    raise ParameterError(f"cannot extend images over {type(group).__name__}")


def aut_from_images(group: Group, images: Sequence[int],
                    exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> GroupAutomorphism:
    """Certify that the generator-image map extends to an automorphism.

    Raises NotBijective / NotHomomorphism with a witness otherwise.
    """
    images = tuple(int(i) for i in images)
    if len(images) != len(group.generators):
        raise ParameterError(
            f"need {len(group.generators)} generator images, got {len(images)}")
    for i in images:
        if not 0 <= i < group.size:
            raise ParameterError(f"image index {i} out of range")
    n = group.size
    perm = _extend_images_to_perm(group, images)

    counts = np.bincount(perm, minlength=n)
    if counts.max() > 1:
        dup = int(np.argmax(counts > 1))
        hits = np.nonzero(perm == dup)[0][:2]
        raise NotBijective(
            f"elements {group.element_name(int(hits[0]))} and "
            f"{group.element_name(int(hits[1]))} share the image {group.element_name(dup)}")

    sampled = n > exhaustive_limit
    if not sampled:
        all_idx = np.arange(n, dtype=np.int64)
        block = max(1, (1 << 22) // max(n, 1))
        for lo in range(0, n, block):
            rows = all_idx[lo:lo + block]
            lhs = perm[group.mul_outer(rows, all_idx)]
            rhs = group.mul_outer(perm[rows], perm)
            if not np.array_equal(lhs, rhs):
                r, c = np.argwhere(lhs != rhs)[0]
                x, y = int(rows[r]), int(c)
                raise NotHomomorphism(
                    f"images of {group.element_name(x)} and {group.element_name(y)} "
                    f"do not multiply compatibly")
    else:
        all_idx = np.arange(n, dtype=np.int64)
        for g in group.generators:
            gfull = np.full(n, g, dtype=np.int64)
            for a, b in ((gfull, all_idx), (all_idx, gfull)):
                lhs = perm[group.mul_many(a, b)]
                rhs = group.mul_many(perm[a], perm[b])
                bad = np.nonzero(lhs != rhs)[0]
                if bad.size:
                    x, y = int(a[bad[0]]), int(b[bad[0]])
                    raise NotHomomorphism(
                        f"images of {group.element_name(x)} and {group.element_name(y)} "
                        f"do not multiply compatibly")
        rng = np.random.default_rng(0x5EED)
        xs = rng.integers(0, n, SAMPLE_PAIRS)
        ys = rng.integers(0, n, SAMPLE_PAIRS)
        lhs = perm[group.mul_many(xs, ys)]
        rhs = group.mul_many(perm[xs], perm[ys])
        bad = np.nonzero(lhs != rhs)[0]
        if bad.size:
            x, y = int(xs[bad[0]]), int(ys[bad[0]])
            raise NotHomomorphism(
                f"images of {group.element_name(x)} and {group.element_name(y)} "
                f"do not multiply compatibly")
    return GroupAutomorphism(group, images, perm, sampled)


# ---------------------------------------------------------------------------
# semidirect extensions
# ---------------------------------------------------------------------------

class ExtensionGroup(Group):
    """Result of a breadth-first closure inside Aut(B) x B; see module notes."""

    def __init__(self, base: Group, aut_perms: np.ndarray, aut_mul: np.ndarray,
                 aut_inv: np.ndarray, aut_part: np.ndarray, base_part: np.ndarray,
                 pair_index: np.ndarray, bfs_parent: np.ndarray, bfs_genidx: np.ndarray,
                 gen_elements: Tuple[int, ...], gen_pairs: List[Tuple[int, int]]):
        self.base = base
        self.aut_perms = aut_perms
        self.aut_mul = aut_mul
        self.aut_inv = aut_inv
        self.aut_part = aut_part
        self.base_part = base_part
        self.pair_index = pair_index
        self.bfs_parent = bfs_parent
        self.bfs_genidx = bfs_genidx
        self.size = int(aut_part.shape[0])
        self.generators = gen_elements
        self.gen_pairs = gen_pairs
        self._nb = base.size

    def pair_of(self, z: int) -> Tuple[int, int]:
        return int(self.aut_part[z]), int(self.base_part[z])

    def index_of_pair(self, a: int, b: int) -> int:
        idx = int(self.pair_index[a * self._nb + b])
        if idx < 0:
            raise NotASubgroupMember(
                f"pair (aut {a}, {self.base.element_name(b)}) is not in the closure")
        return idx

    def mul(self, x: int, y: int) -> int:
        a1, b1 = int(self.aut_part[x]), int(self.base_part[x])
        a2, b2 = int(self.aut_part[y]), int(self.base_part[y])
        a = int(self.aut_mul[a1, a2])
        b = self.base.mul(int(self.aut_perms[a2, b1]), b2)
        return int(self.pair_index[a * self._nb + b])

    def inv(self, x: int) -> int:
        a, b = int(self.aut_part[x]), int(self.base_part[x])
        ai = int(self.aut_inv[a])
        bi = int(self.aut_perms[ai, self.base.inv(b)])
        return int(self.pair_index[ai * self._nb + bi])

    def mul_many(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        a1, b1 = self.aut_part[x], self.base_part[x]
        a2, b2 = self.aut_part[y], self.base_part[y]
        a = self.aut_mul[a1, a2]
        b = self.base.mul_many(self.aut_perms[a2, b1], b2)
        return self.pair_index[a * self._nb + b]

    def inv_many(self, x):
        x = np.asarray(x)
        ai = self.aut_inv[self.aut_part[x]]
        bi = self.aut_perms[ai, self.base.inv_many(self.base_part[x])]
        return self.pair_index[ai * self._nb + bi]

    def quotient_outer(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        ai2 = self.aut_inv[self.aut_part[y]]
        q = self.base.quotient_outer(self.base_part[x], self.base_part[y])
        b = self.aut_perms[ai2[None, :], q]
        a = self.aut_mul[self.aut_part[x][:, None], ai2[None, :]]
        return self.pair_index[a * self._nb + b]

    def element_name(self, z: int) -> str:
        a, b = self.pair_of(z)
        return f"(f{a};{self.base.element_name(b)})"

    def __repr__(self) -> str:
        return f"Extension[{self.aut_perms.shape[0]} auts over {self.base!r}, order {self.size}]"


def extension_closure(base: Group, auts: Sequence[GroupAutomorphism],
                      gens: Sequence[Tuple[Sequence[int], int]],
                      cap: Optional[int] = None) -> ExtensionGroup:
    """Close a list of (automorphism word, base element) generators.

    Each generator's automorphism part is given as a word in the supplied
    automorphism list (an empty word is the identity).  Raises ClosureOverflow
    if the closure exceeds `cap` (default 2 * |base|) elements.
    """
    if cap is None:
        cap = 2 * base.size
    nb = base.size
    for a in auts:
        if a.group is not base:
            raise ParameterError("automorphism acts on a different group than the base")

    # close the automorphism part first
    ident = np.arange(nb, dtype=np.int64)
    perms: List[np.ndarray] = [ident]
    keys: Dict[bytes, int] = {ident.tobytes(): 0}
    gen_aut_idx: List[int] = []
    for a in auts:
        k = a.perm.tobytes()
        if k not in keys:
            keys[k] = len(perms)
            perms.append(a.perm.astype(np.int64))
        gen_aut_idx.append(keys[k])
    frontier = list(range(len(perms)))
    while frontier:
        nxt = []
        for i in frontier:
            for j in gen_aut_idx:
                comp = perms[j][perms[i]]
                k = comp.tobytes()
                if k not in keys:
                    keys[k] = len(perms)
                    perms.append(comp)
                    nxt.append(keys[k])
                    if len(perms) > cap:
                        raise ClosureOverflow(
                            f"automorphism part exceeded the cap of {cap}")
        frontier = nxt
    na = len(perms)
    aut_perms = np.stack(perms)
    aut_mul = np.empty((na, na), dtype=np.int64)
    for i in range(na):
        for j in range(na):
            aut_mul[i, j] = keys[perms[j][perms[i]].tobytes()]
    aut_inv = np.argmin(aut_mul, axis=1).astype(np.int64)  # aut_mul[i,j]==0 exactly once

    gen_pairs: List[Tuple[int, int]] = []
    for word, b in gens:
        a = 0
        for w in word:
            if not 0 <= w < len(gen_aut_idx):
                raise ParameterError(f"automorphism word index {w} out of range")
            a = int(aut_mul[a, gen_aut_idx[w]])
        if not 0 <= b < nb:
            raise NotASubgroupMember(f"generator base element {b} out of range")
        gen_pairs.append((a, int(b)))

    pair_index = np.full(na * nb, -1, dtype=np.int64)
    aut_part: List[int] = [0]
    base_part: List[int] = [0]
    parent: List[int] = [0]
    genidx: List[int] = [0]
    pair_index[0] = 0
    base_mul = base.mul
    pos = 0
    while pos < len(aut_part):
        a1, b1 = aut_part[pos], base_part[pos]
        for gi, (a2, b2) in enumerate(gen_pairs):
            a = int(aut_mul[a1, a2])
            b = base_mul(int(aut_perms[a2, b1]), b2)
            key = a * nb + b
            if pair_index[key] < 0:
                pair_index[key] = len(aut_part)
                aut_part.append(a)
                base_part.append(b)
                parent.append(pos)
                genidx.append(gi)
                if len(aut_part) > cap:
                    raise ClosureOverflow(
                        f"closure exceeded the cap of {cap} elements")
        pos += 1

    gen_elements = tuple(int(pair_index[a * nb + b]) for a, b in gen_pairs)
    return ExtensionGroup(base, aut_perms, aut_mul, aut_inv,
                          np.array(aut_part, dtype=np.int64),
                          np.array(base_part, dtype=np.int64),
                          pair_index,
                          np.array(parent, dtype=np.int64),
                          np.array(genidx, dtype=np.int64),
                          gen_elements, gen_pairs)


# ---------------------------------------------------------------------------
# subgroups and cosets
# ---------------------------------------------------------------------------

class Subgroup:
    def __init__(self, parent: Group, members: Tuple[int, ...], gens: Tuple[int, ...]):
        self.parent = parent
        self.members = members
        self.gens = gens
        mask = np.zeros(parent.size, dtype=bool)
        mask[list(members)] = True
        self.mask = mask

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, idx: int) -> bool:
        return bool(self.mask[idx])

    def __repr__(self) -> str:
        return f"Subgroup(order {self.order} of {self.parent!r})"


def subgroup_closure(group: Group, gens: Sequence[int]) -> Subgroup:
    for g in gens:
        if not 0 <= int(g) < group.size:
            raise NotASubgroupMember(f"generator index {g} out of range")
    gens = tuple(int(g) for g in gens)
    seen = np.zeros(group.size, dtype=bool)
    seen[0] = True
    queue = [0]
    pos = 0
    while pos < len(queue):
        x = queue[pos]
        for g in gens:
            y = group.mul(x, g)
            if not seen[y]:
                seen[y] = True
                queue.append(y)
        pos += 1
    return Subgroup(group, tuple(sorted(queue)), gens)


def normality_witness(group: Group, sub: Subgroup) -> Optional[Tuple[int, int, int]]:
    """A triple (g, x, g^-1 x g) showing the subgroup is not normal, else None."""
    if sub.parent is not group:
        raise ParameterError("subgroup belongs to a different group")
    for g in group.generators:
        gi = group.inv(g)
        for s in sub.gens:
            c = group.mul(gi, group.mul(s, g))
            if not sub.mask[c]:
                return (g, s, c)
    return None


def is_normal(group: Group, sub: Subgroup) -> bool:
    return normality_witness(group, sub) is None


@dataclass(frozen=True)
class CosetTable:
    reps: Tuple[int, ...]
    cosid: np.ndarray

    @property
    def count(self) -> int:
        return len(self.reps)


def right_cosets(group: Group, sub: Subgroup) -> CosetTable:
    cosid = np.full(group.size, -1, dtype=np.int64)
    members = np.array(sub.members, dtype=np.int64)
    reps = []
    for idx in range(group.size):
        if cosid[idx] < 0:
            cosid[group.mul_elems(members, idx)] = len(reps)
            reps.append(idx)
    return CosetTable(tuple(reps), cosid)


@dataclass(frozen=True)
class TransitivityResult:
    transitive: bool
    reached: int
    total: int
    witness_rep: Optional[int]  # a coset representative not reached, if any


def coset_action_transitive(group: Group, sub: Subgroup,
                            acting: Sequence[Tuple[np.ndarray, int]]) -> TransitivityResult:
    """Orbit of the subgroup's own coset under (Xh) -> X h^phi g.

    `acting` is a list of (permutation over the group, element g) pairs.
    """
    table = right_cosets(group, sub)
    seen = np.zeros(table.count, dtype=bool)
    start = int(table.cosid[0])
    seen[start] = True
    queue = [start]
    pos = 0
    while pos < len(queue):
        rep = table.reps[queue[pos]]
        for perm, g in acting:
            cid = int(table.cosid[group.mul(int(perm[rep]), g)])
            if not seen[cid]:
                seen[cid] = True
                queue.append(cid)
        pos += 1
    reached = int(seen.sum())
    witness = None
    if reached != table.count:
        witness = int(table.reps[int(np.argmin(seen))])
    return TransitivityResult(reached == table.count, reached, table.count, witness)


# ---------------------------------------------------------------------------
# structure fingerprint
# ---------------------------------------------------------------------------

def element_order(group: Group, z: int) -> int:
    k = 1
    cur = z
    while cur != group.identity:
        cur = group.mul(cur, z)
        k += 1
        if k > group.size:
            raise ParameterError("element order exceeded group order")
    return k


def element_orders(group: Group) -> np.ndarray:
    n = group.size
    every = np.arange(n, dtype=np.int64)
    powers = every.copy()
    orders = np.zeros(n, dtype=np.int64)
    k = 1
    while True:
        hit = (powers == group.identity) & (orders == 0)
        orders[hit] = k
        if orders.min() > 0:
            return orders
        powers = group.mul_many(powers, every)
        k += 1
        if k > n:
            raise ParameterError("order computation exceeded group order")


def nonabelian_witness(group: Group) -> Optional[Tuple[int, int]]:
    """A pair of non-commuting generators, or None when all generators commute
    (which makes the whole group abelian)."""
    gens = group.generators
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            if group.mul(g, h) != group.mul(h, g):
                return (g, h)
    return None


@dataclass(frozen=True)
class StructureReport:
    order: int
    is_abelian: bool
    exponent: int
    order_histogram: Tuple[Tuple[int, int], ...]
    center_order: int
    derived_order: int
    sylow_normal: Tuple[Tuple[int, bool], ...]
    nonabelian_pair: Optional[Tuple[int, int]]


def fingerprint(group: Group, sylow: Optional[Dict[int, Subgroup]] = None) -> StructureReport:
    """Isomorphism-invariant summary used to compare construction outputs."""
    n = group.size
    orders = element_orders(group)
    vals, counts = np.unique(orders, return_counts=True)
    hist = tuple((int(v), int(c)) for v, c in zip(vals, counts))
    exponent = 1
    for v in vals.tolist():
        exponent = lcm(exponent, int(v))

    every = np.arange(n, dtype=np.int64)
    central = np.ones(n, dtype=bool)
    for g in group.generators:
        gfull = np.full(n, g, dtype=np.int64)
        central &= group.mul_many(every, gfull) == group.mul_many(gfull, every)
    center_order = int(central.sum())

    com_codes: set = set()
    for g in group.generators:
        gfull = np.full(n, g, dtype=np.int64)
        left = group.mul_many(gfull, every)
        right = group.mul_many(every, gfull)
        com = group.mul_many(group.inv_many(left), right)
        com_codes.update(np.unique(com).tolist())
    dgens: List[int] = []
    derived = subgroup_closure(group, dgens)
    for c in sorted(com_codes):
        if not derived.mask[c]:
            dgens.append(int(c))
            derived = subgroup_closure(group, dgens)
    derived_order = derived.order

    sylow_flags: List[Tuple[int, bool]] = []
    if sylow:
        for p in sorted(sylow):
            sub = sylow[p]
            expected = 1
            m = n
            while m % p == 0:
                expected *= p
                m //= p
            if sub.order != expected:
                raise ParameterError(
                    f"supplied subgroup of order {sub.order} is not a Sylow {p}-subgroup "
                    f"(expected order {expected})")
            sylow_flags.append((p, is_normal(group, sub)))

    witness = nonabelian_witness(group)
    return StructureReport(
        order=n,
        is_abelian=witness is None,
        exponent=exponent,
        order_histogram=hist,
        center_order=center_order,
        derived_order=derived_order,
        sylow_normal=tuple(sylow_flags),
        nonabelian_pair=witness,
    )
