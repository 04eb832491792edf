"""Finite diagrams: forest-shaped multigraphs and composition-closed diagrams.

A diagram holds named objects and named arrows (matrix morphisms between
them).  Forest diagrams are validated structurally; general diagrams are
closed under composition on demand, deduplicating composites that agree
within the backend tolerance.
"""
from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field, replace
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    ClosureDiverged,
    DimensionMismatch,
    InvalidInput,
    NotAForest,
    UnknownObject,
    UnsupportedOmega,
    WrongShape,
)
from .matcat import Morphism, SpaceObject, compose, identity
from .scalars import COMPLEX, ScalarBackend, backend_named

DEFAULT_BUDGET = 4096


class Shape(str, enum.Enum):
    FOREST = "forest"
    GENERAL = "general"


@dataclass(frozen=True)
class Diagram:
    objects: Mapping[str, SpaceObject]
    arrows: Mapping[str, Morphism]
    shape: Shape = Shape.GENERAL
    backend: ScalarBackend = COMPLEX
    supporting: tuple[str, ...] | None = None
    closed: bool = False
    budget: int = field(default=DEFAULT_BUDGET, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", MappingProxyType(dict(self.objects)))
        object.__setattr__(self, "arrows", MappingProxyType(dict(self.arrows)))
        object.__setattr__(self, "shape", Shape(self.shape))
        if self.supporting is not None:
            object.__setattr__(self, "supporting", tuple(self.supporting))

    def arrows_between(self, dom: str | None = None, cod: str | None = None):
        for name, f in self.arrows.items():
            if (dom is None or f.dom.name == dom) and (cod is None or f.cod.name == cod):
                yield name, f

    def is_identity(self, name: str) -> bool:
        f = self.arrows[name]
        return f.dom == f.cod and f.close(identity(f.dom, self.backend))

    def __len__(self):
        return len(self.objects)


def build_diagram(
    objects: Iterable[SpaceObject],
    arrows: Mapping[str, Morphism],
    backend: ScalarBackend = COMPLEX,
    shape: Shape | str | None = None,
    supporting: Sequence[str] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Diagram:
    """Type-check arrows against the object table and settle the shape."""
    table: dict[str, SpaceObject] = {}
    for o in objects:
        if o.name in table:
            raise InvalidInput(f"duplicate object {o.name!r}")
        table[o.name] = o
    for name, f in arrows.items():
        for end in (f.dom, f.cod):
            if end.name not in table:
                raise UnknownObject(f"arrow {name!r} mentions unknown object {end.name!r}")
            if table[end.name].dim != end.dim:
                raise DimensionMismatch(
                    f"arrow {name!r}: {end.name} has dimension {table[end.name].dim}, not {end.dim}"
                )
        backend.check(f.backend)
    forest_problem = _forest_violation(table, arrows, backend)
    if shape is None:
        shape = Shape.FOREST if forest_problem is None else Shape.GENERAL
    shape = Shape(shape)
    if shape is Shape.FOREST and forest_problem is not None:
        raise NotAForest(forest_problem)
    if supporting is not None:
        for s in supporting:
            if s not in table:
                raise UnknownObject(f"supporting object {s!r} is not in the diagram")
    return Diagram(table, arrows, shape, backend, supporting, budget=budget)


def _forest_violation(objects, arrows, backend) -> str | None:
    parents: dict[str, set[str]] = {name: set() for name in objects}
    for name, f in arrows.items():
        if f.dom == f.cod:
            if f.close(identity(f.dom, backend)):
                continue
            return f"arrow {name!r} is a loop on {f.dom.name}"
        parents[f.dom.name].add(f.cod.name)
    for node, ps in parents.items():
        if len(ps) > 1:
            return f"{node} has several parents {sorted(ps)}"
    for start in objects:
        seen = {start}
        node = start
        while parents[node]:
            (node,) = parents[node]
            if node in seen:
                return f"cycle through {node}"
            seen.add(node)
    return None


def leaves(d: Diagram) -> set[str]:
    """Objects that are not the target of any non-identity arrow."""
    if d.shape is not Shape.FOREST:
        raise WrongShape("leaves are defined for forest-shaped diagrams")
    targets = {f.cod.name for name, f in d.arrows.items() if not d.is_identity(name)}
    return {name for name in d.objects if name not in targets}


def reachable(d: Diagram, start: Iterable[str]) -> set[str]:
    seen = set(start)
    queue = deque(seen)
    succ: dict[str, set[str]] = {name: set() for name in d.objects}
    for f in d.arrows.values():
        succ[f.dom.name].add(f.cod.name)
    while queue:
        node = queue.popleft()
        for nxt in succ[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def close(d: Diagram, budget: int | None = None) -> Diagram:
    """Add identities and all composites, deduplicated up to epsilon."""
    budget = d.budget if budget is None else budget
    backend = d.backend
    arrows: dict[str, Morphism] = dict(d.arrows)
    by_ends: dict[tuple[str, str], list[Morphism]] = {}
    for f in arrows.values():
        by_ends.setdefault((f.dom.name, f.cod.name), []).append(f)

    def known(h: Morphism) -> bool:
        return any(h.close(g) for g in by_ends.get((h.dom.name, h.cod.name), ()))

    def insert(name: str, h: Morphism) -> str:
        base, k = name, 1
        while name in arrows:
            k += 1
            name = f"{base}#{k}"
        arrows[name] = h
        by_ends.setdefault((h.dom.name, h.cod.name), []).append(h)
        return name

    for obj in d.objects.values():
        ident = identity(obj, backend)
        if not known(ident):
            insert(f"id_{obj.name}", ident)

    def is_ident(name):
        f = arrows[name]
        return f.dom == f.cod and f.close(identity(f.dom, backend))

    idents = {name for name in arrows if is_ident(name)}
    frontier = [name for name in arrows if name not in idents]
    while frontier:
        fresh = []
        for fname in frontier:
            f = arrows[fname]
            for gname, g in list(arrows.items()):
                if gname in idents:
                    continue
                for first, second, a, b in ((fname, gname, f, g), (gname, fname, g, f)):
                    if a.cod != b.dom:
                        continue
                    h = compose(a, b)
                    if known(h):
                        continue
                    fresh.append(insert(f"{first};{second}", h))
                    if len(arrows) > budget:
                        raise ClosureDiverged(
                            f"closure exceeded {budget} arrows; composites keep drifting apart"
                        )
        frontier = fresh
    return replace(d, arrows=arrows, closed=True)


def resolve_omega(d: Diagram, omega: str | Sequence[str] | None = None) -> tuple[str, ...]:
    """Turn "all", "leaves", a comma list or a sequence of names into a validated subset."""
    if omega is None:
        if d.supporting is not None:
            omega = d.supporting
        else:
            omega = "leaves" if d.shape is Shape.FOREST else "all"
    if isinstance(omega, str):
        if omega == "all":
            omega = list(d.objects)
        elif omega == "leaves":
            found = leaves(d)
            omega = [name for name in d.objects if name in found]
        else:
            omega = [s.strip() for s in omega.split(",") if s.strip()]
    omega = list(dict.fromkeys(omega))
    for name in omega:
        if name not in d.objects:
            raise UnsupportedOmega(f"{name!r} is not an object of the diagram")
    if d.objects and not omega:
        raise UnsupportedOmega("a nonempty diagram needs a nonempty supporting subset")
    missed = set(d.objects) - reachable(d, omega)
    if missed:
        raise UnsupportedOmega(f"cannot reach {sorted(missed)} from {omega}")
    order = {name: k for k, name in enumerate(d.objects)}
    return tuple(sorted(omega, key=order.__getitem__))


def close_and_support(
    d: Diagram, omega: str | Sequence[str] | None = None, budget: int | None = None
) -> Diagram:
    closed = d if d.closed else close(d, budget)
    return replace(closed, supporting=resolve_omega(closed, omega))


# file format


def parse_validate(content: str | Path | Mapping, epsilon: float | None = None) -> Diagram:
    """Build a diagram from the JSON file format (path, JSON text, or parsed dict)."""
    if isinstance(content, Path) or (isinstance(content, str) and not content.lstrip().startswith("{")):
        try:
            content = Path(content).read_text(encoding="utf-8")
        except OSError as exc:
            raise InvalidInput(f"cannot read diagram file: {exc}") from exc
    if isinstance(content, str):
        try:
            content = json.loads(content)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"diagram is not valid JSON: {exc}") from exc
    if not isinstance(content, Mapping):
        raise InvalidInput("diagram JSON must be an object")
    eps = content.get("epsilon", 1e-9) if epsilon is None else epsilon
    backend = backend_named(content.get("backend", "complex-f64"), float(eps))
    objects = []
    for entry in content.get("objects", []):
        try:
            objects.append(SpaceObject(str(entry["name"]), int(entry["dim"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"bad object entry {entry!r}") from exc
    table = {o.name: o for o in objects}
    arrows: dict[str, Morphism] = {}
    for k, entry in enumerate(content.get("arrows", [])):
        name = str(entry.get("name", f"a{k}"))
        if name in arrows:
            raise InvalidInput(f"duplicate arrow name {name!r}")
        try:
            dom, cod, rows = table[entry["dom"]], table[entry["cod"]], entry["matrix"]
        except KeyError as exc:
            raise UnknownObject(f"arrow {name!r}: unknown object or missing field {exc}") from None
        if len(rows) != cod.dim or any(len(r) != dom.dim for r in rows):
            raise DimensionMismatch(
                f"arrow {name!r}: matrix is not {cod.dim}x{dom.dim} for {dom.name} -> {cod.name}"
            )
        arrows[name] = Morphism.from_rows(dom, cod, rows, backend)
    return build_diagram(objects, arrows, backend, content.get("shape"), content.get("supporting"))
