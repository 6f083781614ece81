"""Reference tables: formula grids and worked answer tables.

The two answer tables are rendered from actual scheme runs with
degenerate randomness (identity permutations, first-choice pool) and
with the wire kept in construction order, so the layout lines up with
the derivation order: subset bits then pair bits for the complete
graph, stage instances in stage order for the lifted path.
"""
from __future__ import annotations

from fractions import Fraction

from . import bounds as bnd
from .core import FileId, Transcript
from .graphs import build_family
from .lift import lift_scheme
from .rng import CanonicalSource
from .schemes import complete_scheme

_PRIMES = ("", "'", "''", "'''")


def _sym(letter_by_edge, f: FileId, idx: int) -> str:
    return "%s%s_%d" % (letter_by_edge[f.edge], _PRIMES[f.copy - 1], idx)


def form_symbols(form, letter_by_edge) -> str:
    coords = sorted(form, key=lambda c: (c[0].edge, c[0].copy, c[1]))
    return "+".join(_sym(letter_by_edge, f, b) for f, b in coords)


def answer_grid(t: Transcript, letter_by_edge) -> list[list[str]]:
    """Rows = request position, columns = servers."""
    depth = max(len(s) for s in t.requests)
    grid = []
    for row in range(depth):
        grid.append(
            [
                form_symbols(server[row].form, letter_by_edge)
                if row < len(server)
                else ""
                for server in t.requests
            ]
        )
    return grid


def _md(headers: list[str], rows: list[list[str]]) -> str:
    out = ["| " + " | ".join(headers) + " |"]
    out.append("| " + " | ".join("---" for _ in headers) + " |")
    for r in rows:
        out.append("| " + " | ".join(str(c) for c in r) + " |")
    return "\n".join(out)


def table_three() -> dict:
    """Answer table of the complete-graph scheme on three servers, one
    grid per desired pair."""
    g = build_family("complete", [3])
    letters = {1: "a", 2: "b", 3: "c"}
    out = {}
    for e, (i, ip) in enumerate(g.edges, start=1):
        t = complete_scheme(
            g, e, CanonicalSource(),
            identity_perms=True, canonical_order=False,
        )
        out["theta=(%d,%d)" % (i, ip)] = answer_grid(t, letters)
    return out


def table_four() -> dict:
    """Answer table of the lifted path scheme on path:3^2, one grid per
    desired (edge, copy)."""
    g = build_family("path", [3], 2)
    letters = {1: "a", 2: "b"}
    out = {}
    for e in (1, 2):
        for j in (1, 2):
            t = lift_scheme(
                "path", g, FileId(e, j), CanonicalSource(),
                identity_perms=True, canonical_order=False,
            )
            out["theta=(%d,%d)" % (e, j)] = answer_grid(t, letters)
    return out


def table_one_rows() -> list[list[str]]:
    rows = []
    for n in range(2, 9):
        v = bnd.path_rate(n)
        rows.append(["path", "N=%d" % n, str(v), str(v)])
    for leaves in (2, 3, 4, 5):
        rows.append(
            [
                "star",
                "leaves=%d" % leaves,
                "%.6f" % bnd.kmn_lower(1, leaves),
                "%.6f" % bnd.kmn_upper(1, leaves),
            ]
        )
    for m, n in ((2, 2), (2, 3), (3, 3)):
        rows.append(
            [
                "complete_bipartite",
                "M=%d,N=%d" % (m, n),
                "%.6f" % bnd.kmn_lower(m, n),
                "%.6f" % bnd.kmn_upper(m, n),
            ]
        )
    for n in (3, 4, 5, 6):
        rows.append(
            [
                "complete",
                "N=%d" % n,
                str(bnd.complete_scheme_rate(n)),
                str(bnd.cycle_rate(n)),
            ]
        )
    rows.append(["general", "", "same as complete", "min(Delta/|E|, 1/nu)"])
    return rows


def table_two_rows() -> list[list[str]]:
    rows = []
    for n in (3, 4, 5, 6):
        for r in (2, 3):
            d = bnd.discount(r)
            lo = bnd.path_rate(n) / d
            hi = lo if n % 2 == 0 else Fraction(2, n - 1) / d
            rows.append(["multi-path", "N=%d,r=%d" % (n, r), str(lo), str(hi)])
    for n in (3, 4, 5):
        for r in (2, 3):
            d = bnd.discount(r)
            rows.append(
                [
                    "multi-cycle",
                    "N=%d,r=%d" % (n, r),
                    str(bnd.cycle_rate(n) / d),
                    str(Fraction(2, n) / d),
                ]
            )
    for leaves in (2, 3, 4):
        for r in (2, 3):
            d = bnd.discount(r)
            rows.append(
                [
                    "multi-star",
                    "leaves=%d,r=%d" % (leaves, r),
                    str(Fraction(2, leaves + 1) / d),
                    str(1 / d),
                ]
            )
    for n in (3, 4, 5):
        for r in (2, 3):
            d = bnd.discount(r)
            rows.append(
                [
                    "complete-multigraph",
                    "N=%d,r=%d" % (n, r),
                    str(bnd.complete_scheme_rate(n) / d),
                    str(bnd.hamiltonian_vt_upper(n, r)),
                ]
            )
    return rows


def render_table(name: str) -> str:
    if name == "tableI":
        return _md(["family", "params", "lower", "upper"], table_one_rows())
    if name == "tableII":
        return _md(["family", "params", "lower", "upper"], table_two_rows())
    if name in ("tableIII", "tableIV"):
        grids = table_three() if name == "tableIII" else table_four()
        blocks = []
        for key, grid in grids.items():
            headers = ["%s" % key] + [
                "S_%d" % s for s in range(1, len(grid[0]) + 1)
            ]
            rows = [[str(rix + 1)] + row for rix, row in enumerate(grid)]
            blocks.append(_md(headers, rows))
        return "\n\n".join(blocks)
    raise ValueError("unknown table %r" % name)
