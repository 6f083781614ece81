"""Name-based scheme dispatch shared by the CLI and the verifier."""
from __future__ import annotations

from typing import Callable

from .core import FileId, Transcript
from .graphs import GraphSpec, classify_family
from .lift import lift_scheme
from .schemes import (
    SchemeError,
    complete_scheme,
    compose_stars,
    path_scheme,
    star_scheme,
)

SCHEME_NAMES = (
    "path",
    "star",
    "complete",
    "compose-stars",
    "lift:path",
    "lift:star",
    "lift:complete",
)


def auto_scheme_name(g: GraphSpec) -> str:
    fam = classify_family(g.base())
    base = None
    if "path" in fam:
        base = "path"
    elif "star" in fam:
        base = "star"
    elif "complete" in fam:
        base = "complete"
    elif "complete_bipartite" in fam and g.multiplicity == 1:
        return "compose-stars"
    if base is None:
        raise SchemeError("no scheme available for this graph")
    return base if g.multiplicity == 1 else "lift:" + base


def scheme_runner(name: str) -> Callable[..., Transcript]:
    """A callable (g, theta, rng, **assemble_kw) -> Transcript."""
    if name.startswith("lift:"):
        base = name.split(":", 1)[1]

        def run(g, theta, rng, **kw):
            return lift_scheme(base, g, theta, rng, **kw)

        return run
    simple = {
        "path": path_scheme,
        "star": star_scheme,
        "complete": complete_scheme,
        "compose-stars": compose_stars,
    }
    if name not in simple:
        raise SchemeError("unknown scheme %r" % name)
    return simple[name]


def resolve_scheme(scheme, g: GraphSpec):
    """(name, runner) from a scheme name, 'auto', or a callable."""
    if callable(scheme):
        return getattr(scheme, "__name__", "custom"), scheme
    name = auto_scheme_name(g) if scheme == "auto" else scheme
    return name, scheme_runner(name)


def all_thetas(g: GraphSpec) -> list[FileId]:
    return [
        FileId(e, c)
        for e in range(1, g.n_base_edges + 1)
        for c in range(1, g.multiplicity + 1)
    ]
