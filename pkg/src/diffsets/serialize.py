"""Line-oriented text serialization for groups, designs, and Cayley graphs.

Files are UTF-8 text with bracketed section headers.  A group is stored as a
stack of levels (the innermost abelian group first, one section per extension
layer), followed by its full element enumeration, one element per line, as
comma-separated exponent tuples (extension elements prefix the automorphism
part with a semicolon).  Parsing does not trust the file: automorphisms are
re-certified, closures are re-run, and the stored enumeration is compared
line by line against the rebuilt group, so corrupted group data cannot load.

Design files embed their group, the member indices (one per line), the
forbidden subgroup for relative difference sets, and optionally the transfer
data (automorphism images and candidate generator words) needed to rebuild a
TransferInstance.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ForbiddenNotSubgroup, ParameterError, ParseError
from .groups import (
    AbelianGroup,
    ExtensionGroup,
    Group,
    GroupAutomorphism,
    abelian_make,
    aut_from_images,
    extension_closure,
    subgroup_closure,
)
from .transfer import TransferInstance, make_instance
from .verify import DesignSet

FORMAT_TAG = "diffsets-text-1"


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_element(group: Group, idx: int) -> str:
    if isinstance(group, AbelianGroup):
        return ",".join(str(d) for d in group.digits[idx].tolist())
    if isinstance(group, ExtensionGroup):
        a, b = group.pair_of(idx)
        return f"{a};{_render_element(group.base, b)}"
    raise ParameterError(f"cannot serialize a {type(group).__name__}")


def _group_levels(group: Group) -> List[Group]:
    levels: List[Group] = []
    g = group
    while isinstance(g, ExtensionGroup):
        levels.append(g)
        g = g.base
    if not isinstance(g, AbelianGroup):
        raise ParameterError(f"cannot serialize a {type(g).__name__} base")
    levels.append(g)
    levels.reverse()
    return levels


def group_lines(group: Group) -> List[str]:
    levels = _group_levels(group)
    lines = ["[group]", f"levels = {len(levels)}"]
    for li, lev in enumerate(levels):
        lines.append(f"[level {li}]")
        if isinstance(lev, AbelianGroup):
            lines.append("kind = abelian")
            lines.append("orders = " + ",".join(str(n) for n in lev.orders))
        else:
            assert isinstance(lev, ExtensionGroup)
            lines.append("kind = extension")
            lines.append(f"size = {lev.size}")
            na = lev.aut_perms.shape[0]
            lines.append(f"auts = {na}")
            for ai in range(na):
                imgs = ",".join(str(int(lev.aut_perms[ai, g])) for g in lev.base.generators)
                lines.append(f"aut{ai} = {imgs}")
            lines.append(f"gens = {len(lev.gen_pairs)}")
            for gi, (a, b) in enumerate(lev.gen_pairs):
                lines.append(f"gen{gi} = {a}|{b}")
    lines.append("[elements]")
    for z in range(group.size):
        lines.append(_render_element(group, z))
    return lines


def design_lines(design: DesignSet, instance: Optional[TransferInstance] = None) -> List[str]:
    lines = [f"# {FORMAT_TAG}", "[design]",
             f"kind = {design.kind}",
             "claimed = " + ",".join(str(x) for x in design.claimed)]
    for entry in design.log:
        lines.append(f"log = {entry}")
    lines.append("[members]")
    lines.extend(str(m) for m in design.members)
    if design.forbidden is not None:
        lines.append("[forbidden]")
        lines.append(",".join(str(m) for m in design.forbidden.members))
    if instance is not None:
        if instance.design is not design:
            raise ParameterError("transfer instance does not belong to this design")
        lines.append("[transfer]")
        lines.append(f"auts = {len(instance.aut_gens)}")
        for ai, aut in enumerate(instance.aut_gens):
            lines.append(f"aut{ai} = " + ",".join(str(i) for i in aut.images))
        lines.append(f"gens = {len(instance.candidate_gens)}")
        for gi, (word, b) in enumerate(instance.candidate_gens):
            word_s = ",".join(str(w) for w in word)
            lines.append(f"gen{gi} = {word_s}|{b}")
        if instance.closure_cap is not None:
            lines.append(f"cap = {instance.closure_cap}")
        for entry in instance.log:
            lines.append(f"log = {entry}")
    lines.extend(group_lines(design.group))
    return lines


def design_text(design: DesignSet, instance: Optional[TransferInstance] = None) -> str:
    return "\n".join(design_lines(design, instance)) + "\n"


def group_text(group: Group) -> str:
    return f"# {FORMAT_TAG}\n" + "\n".join(group_lines(group)) + "\n"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _split_sections(text: str) -> List[Tuple[str, List[str]]]:
    sections: List[Tuple[str, List[str]]] = []
    current: Optional[List[str]] = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = []
            sections.append((line[1:-1], current))
            continue
        if current is None:
            raise ParseError(f"line {ln}: content before any section header: {line!r}")
        current.append(line)
    return sections


def _kv(lines: Sequence[str], section: str) -> Dict[str, List[str]]:
    out: Dict[str, List[str]] = {}
    for line in lines:
        if "=" not in line:
            raise ParseError(f"[{section}] line is not a key = value pair: {line!r}")
        key, _, val = line.partition("=")
        out.setdefault(key.strip(), []).append(val.strip())
    return out


def _one(kv: Dict[str, List[str]], key: str, section: str) -> str:
    if key not in kv or len(kv[key]) != 1:
        raise ParseError(f"[{section}] needs exactly one {key!r} entry")
    return kv[key][0]


def _ints(text: str, what: str) -> List[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise ParseError(f"bad integer list in {what}: {text!r}") from None


def _parse_gen(entry: str, what: str) -> Tuple[Tuple[int, ...], int]:
    if "|" not in entry:
        raise ParseError(f"{what} must look like 'word|base', got {entry!r}")
    word_s, _, base_s = entry.partition("|")
    word = tuple(_ints(word_s, what))
    try:
        return word, int(base_s)
    except ValueError:
        raise ParseError(f"bad base element in {what}: {base_s!r}") from None


def parse_group_sections(sections: List[Tuple[str, List[str]]]) -> Group:
    by_name = dict(sections)
    if "group" not in by_name:
        raise ParseError("missing [group] section")
    head = _kv(by_name["group"], "group")
    n_levels = int(_one(head, "levels", "group"))
    group: Optional[Group] = None
    for li in range(n_levels):
        name = f"level {li}"
        if name not in by_name:
            raise ParseError(f"missing [{name}] section")
        kv = _kv(by_name[name], name)
        kind = _one(kv, "kind", name)
        if kind == "abelian":
            if group is not None:
                raise ParseError("abelian level is only allowed at the bottom of the stack")
            orders = _ints(_one(kv, "orders", name), f"[{name}] orders")
            group = abelian_make(orders)
        elif kind == "extension":
            if group is None:
                raise ParseError("extension level has no base group")
            size = int(_one(kv, "size", name))
            na = int(_one(kv, "auts", name))
            auts: List[GroupAutomorphism] = []
            for ai in range(na):
                images = _ints(_one(kv, f"aut{ai}", name), f"[{name}] aut{ai}")
                if len(images) != len(group.generators):
                    raise ParseError(f"[{name}] aut{ai} has {len(images)} images, "
                                     f"base group has {len(group.generators)} generators")
                auts.append(aut_from_images(group, images))
            ng = int(_one(kv, "gens", name))
            gens = []
            for gi in range(ng):
                word, b = _parse_gen(_one(kv, f"gen{gi}", name), f"[{name}] gen{gi}")
                gens.append((word, b))
            rebuilt = extension_closure(group, auts, gens, cap=size)
            if rebuilt.size != size:
                raise ParseError(f"[{name}] closure has {rebuilt.size} elements, "
                                 f"file claims {size}")
            group = rebuilt
        else:
            raise ParseError(f"unknown level kind {kind!r}")
    assert group is not None
    if "elements" not in by_name:
        raise ParseError("missing [elements] section")
    elems = by_name["elements"]
    if len(elems) != group.size:
        raise ParseError(f"[elements] lists {len(elems)} elements, "
                         f"group has {group.size}")
    for idx, line in enumerate(elems):
        want = _render_element(group, idx)
        if line != want:
            raise ParseError(f"element {idx} reads {line!r} but the rebuilt group "
                             f"enumerates {want!r}; the file is corrupted")
    return group


def parse_group(text: str) -> Group:
    return parse_group_sections(_split_sections(text))


def parse_design(text: str) -> Tuple[DesignSet, Optional[TransferInstance]]:
    sections = _split_sections(text)
    by_name = dict(sections)
    if "design" not in by_name:
        raise ParseError("missing [design] section")
    head = _kv(by_name["design"], "design")
    kind = _one(head, "kind", "design")
    claimed = tuple(_ints(_one(head, "claimed", "design"), "[design] claimed"))
    log = list(head.get("log", []))

    group = parse_group_sections(sections)

    if "members" not in by_name:
        raise ParseError("missing [members] section")
    try:
        members = tuple(int(line) for line in by_name["members"])
    except ValueError:
        raise ParseError("non-integer entry in [members]") from None
    for m in members:
        if not 0 <= m < group.size:
            raise ParseError(f"member {m} is out of range for a group of order {group.size}")

    forbidden = None
    if "forbidden" in by_name:
        if len(by_name["forbidden"]) != 1:
            raise ParseError("[forbidden] must be a single comma-separated line")
        f_members = _ints(by_name["forbidden"][0], "[forbidden]")
        for m in f_members:
            if not 0 <= m < group.size:
                raise ParseError(f"forbidden element {m} is out of range")
        forbidden = subgroup_closure(group, tuple(f_members))
        if sorted(forbidden.members) != sorted(set(f_members)):
            raise ForbiddenNotSubgroup(
                f"the stored forbidden set of size {len(set(f_members))} closes to a "
                f"subgroup of order {forbidden.order}")

    design = DesignSet(group, members, kind, claimed, forbidden=forbidden, log=log)

    instance = None
    if "transfer" in by_name:
        kv = _kv(by_name["transfer"], "transfer")
        na = int(_one(kv, "auts", "transfer"))
        auts = []
        for ai in range(na):
            images = _ints(_one(kv, f"aut{ai}", "transfer"), f"[transfer] aut{ai}")
            if len(images) != len(group.generators):
                raise ParseError(f"[transfer] aut{ai} has {len(images)} images, "
                                 f"group has {len(group.generators)} generators")
            auts.append(aut_from_images(group, images))
        ng = int(_one(kv, "gens", "transfer"))
        gens = []
        for gi in range(ng):
            gens.append(_parse_gen(_one(kv, f"gen{gi}", "transfer"), f"[transfer] gen{gi}"))
        cap = int(_one(kv, "cap", "transfer")) if "cap" in kv else None
        tlog = list(kv.get("log", []))
        instance = make_instance(design, auts, gens, closure_cap=cap, log=tlog)
    return design, instance


# ---------------------------------------------------------------------------
# Cayley graph exports
# ---------------------------------------------------------------------------

def _cayley_arcs(design: DesignSet) -> Tuple[bool, np.ndarray]:
    """(directed, arcs) with one arc u -> v per (u, d) pair, v = d * u."""
    group = design.group
    n = group.size
    members = np.array(design.members, dtype=np.int64)
    directed = not design.is_inverse_closed()
    targets = group.mul_outer(members, np.arange(n, dtype=np.int64))
    arcs = np.empty((targets.size, 2), dtype=np.int64)
    arcs[:, 0] = np.tile(np.arange(n, dtype=np.int64), len(members))
    arcs[:, 1] = targets.reshape(-1)
    return directed, arcs


def edges_text(design: DesignSet) -> str:
    directed, arcs = _cayley_arcs(design)
    lines = [f"# {FORMAT_TAG} cayley {'digraph' if directed else 'graph'}",
             f"# vertices: {design.group.size}",
             "# arc u -> v present iff v * u^-1 is a design member"
             + ("" if directed else "; undirected, one line per edge u <= v")]
    if directed:
        for u, v in arcs.tolist():
            lines.append(f"{u} {v}")
    else:
        for u, v in arcs.tolist():
            if u <= v:
                lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def dot_text(design: DesignSet) -> str:
    directed, arcs = _cayley_arcs(design)
    name = "cayley"
    head = "digraph" if directed else "graph"
    sep = "->" if directed else "--"
    lines = [f"// {FORMAT_TAG}: Cayley {head} on {design.group!r}",
             f"// arc u {sep} v present iff v * u^-1 is a design member",
             f"{head} {name} {{"]
    for u, v in arcs.tolist():
        if directed or u <= v:
            lines.append(f"  {u} {sep} {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# run manifests
# ---------------------------------------------------------------------------

def manifest_text(command: str, family: str, params: Dict[str, object],
                  files: Dict[str, str], results: List[str],
                  log: List[str], elapsed_s: float) -> str:
    lines = [f"# {FORMAT_TAG} manifest", "[manifest]",
             f"command = {command}",
             f"family = {family}",
             "params = " + " ".join(f"{k}={v}" for k, v in sorted(params.items())),
             "determinism = seed-free; every arbitrary choice is canonical"]
    for key in sorted(files):
        lines.append(f"file.{key} = {files[key]}")
    for r in results:
        lines.append(f"result = {r}")
    lines.append(f"elapsed_s = {elapsed_s:.3f}")
    lines.append("[log]")
    lines.extend(log)
    return "\n".join(lines) + "\n"
