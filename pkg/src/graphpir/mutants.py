"""Deliberately broken scheme variants used as negative controls.

Each mutant is documented with the check it is expected to fail; the
verifier's test suite asserts these failures.
"""
from __future__ import annotations

from .core import Transcript
from .schemes import compose_stars


def drop_planned_request(t: Transcript) -> Transcript:
    """Remove one request that the decoding plan relies on.

    Expected failure: reliability (symbolic decode leaves residual
    coordinates for at least one target).
    """
    victim = min(t.decoding_plan[0])
    vs, vp = victim
    new_requests = []
    for s0, server in enumerate(t.requests):
        if s0 + 1 == vs:
            server = server[: vp - 1] + server[vp:]
        new_requests.append(tuple(server))

    def remap(ref):
        s, p = ref
        if s == vs and p > vp:
            return (s, p - 1)
        return ref

    new_plan = tuple(
        frozenset(remap(ref) for ref in entry if ref != victim)
        for entry in t.decoding_plan
    )
    return Transcript(
        t.graph, t.file_length, t.theta, tuple(new_requests), new_plan,
        t.permutations,
    )


def compose_stars_theta_ordered(g, theta, rng, **kw) -> Transcript:
    """Star composition whose wire order puts the desired part's
    requests first instead of canonical order.

    Expected failure: privacy (the request order at shared servers
    reveals which part holds theta). Detected by the exact and
    structural/statistical tiers alike.
    """
    kw.setdefault("canonical_order", False)
    return compose_stars(g, theta, rng, theta_part_first=True, **kw)


def compose_stars_no_decoy(g, theta, rng, **kw) -> Transcript:
    """Star composition that skips the decoy runs entirely: servers of
    non-desired parts receive no queries.

    Expected failure: privacy with total-variation distance near 1.
    """
    return compose_stars(g, theta, rng, skip_decoys=True, **kw)


MUTANTS = {
    "drop-request": (drop_planned_request, "reliability"),
    "theta-ordered-compose": (compose_stars_theta_ordered, "privacy"),
    "no-decoy-compose": (compose_stars_no_decoy, "privacy"),
}
