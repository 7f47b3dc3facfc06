"""File formats: index-category presentations and presheaf instances.

Category-presentation file:
    {"name": ..., "objects": [...], "morphisms": [{"id","dom","cod"}],
     "composition": [[g, f, gf], ...], "identities": {obj: morid}}

Presheaf-instance file:
    {"index": <category file path or builtin name>,
     "sizes": {obj: n}, "actions": {morid: [..table..]}}
"""

from __future__ import annotations

import json
from pathlib import Path

from .base import CatError
from .presheaf import FinCat, PresheafHandle, arrow_cat, empty_cat, point_cat, z2_cat

BUILTIN_CATS = {
    "point": point_cat,
    "z2": z2_cat,
    "arrow": arrow_cat,
    "empty": empty_cat,
}


def load_fincat(source) -> FinCat:
    if isinstance(source, str) and source in BUILTIN_CATS:
        return BUILTIN_CATS[source]()
    data = json.loads(Path(source).read_text()) if not isinstance(source, dict) else source
    try:
        return FinCat(
            name=data.get("name", "user"),
            objects=tuple(data["objects"]),
            morphisms=tuple((m["id"], m["dom"], m["cod"]) for m in data["morphisms"]),
            composition=tuple(tuple(t) for t in data["composition"]),
            identities=tuple(sorted(data["identities"].items())),
        )
    except KeyError as e:
        raise CatError(f"category file missing field {e}")


def load_presheaf_obj(handle: PresheafHandle, data: dict):
    cat = handle.cat
    sizes = [data["sizes"][o] for o in cat.objects]
    actions = []
    for m, d, c in cat.morphisms:
        if m in data.get("actions", {}):
            actions.append(tuple(data["actions"][m]))
        elif m == cat.id_of(d) and d == c:
            actions.append(tuple(range(sizes[cat.obj_index(d)])))
        else:
            raise CatError(f"presheaf file missing action table for {m!r}")
    return handle.make_obj(sizes, actions)


def load_presheaf_instance(source):
    data = json.loads(Path(source).read_text()) if not isinstance(source, dict) else source
    cat = load_fincat(data["index"])
    handle = PresheafHandle(cat)
    obj = load_presheaf_obj(handle, data) if "sizes" in data else None
    return handle, obj
