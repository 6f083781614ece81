"""Scheme kernels: query/plan shapes over abstract file symbols.

A kernel describes one run of a retrieval scheme with all index
randomization factored out: coordinates are (symbol, position) pairs
where positions live in permuted index space. The same kernel backs
three uses: a standalone scheme (symbols are FileIds, positions go
through fresh uniform permutations), a composition part (positions get a
repetition offset), and a lift stage instance (symbols are virtual files
that expand into real coordinates).

Orientation selects which hosting server of the desired edge delivers
which half of the file: -1 relabels the desired symbol's positions by
the kernel's half-swapping involution. The lift needs both versions; for
a standalone run the choice is absorbed by the uniform permutations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class KernelRun:
    length: int
    theta_symbol: object
    # (server, form) with form a frozenset of (symbol, position)
    requests: tuple[tuple[int, frozenset], ...]
    # plan[m-1] = indices into `requests` whose XOR is (theta_symbol, m)
    plan: tuple[frozenset, ...]


def _orient(requests, plan, theta_symbol, tau: dict[int, int]) -> tuple[tuple, tuple]:
    """Relabel the desired symbol's positions by the involution tau and
    move the plan entries accordingly."""
    new_requests = tuple(
        (
            server,
            frozenset(
                (sym, tau[m] if sym == theta_symbol else m) for sym, m in form
            ),
        )
        for server, form in requests
    )
    new_plan = [None] * len(plan)
    for m, entry in enumerate(plan, start=1):
        new_plan[tau[m] - 1] = entry
    return new_requests, tuple(new_plan)


def path_kernel(
    vertices: Sequence[int],
    symbols: Sequence,
    theta_pos: int,
    orientation: int = 1,
) -> KernelRun:
    """One run of the path scheme on vertices in path order.

    Server order[0] asks position 1 of the first edge; interior server k
    asks the sum of its two incident edges, at position 1 up to the
    desired edge and position 2 after it; the far end asks position 2 of
    the last edge. Half 1 is the XOR of the servers up to theta, half 2
    the XOR of the rest.
    """
    n = len(vertices)
    if n < 2 or len(symbols) != n - 1:
        raise ValueError("path kernel needs n >= 2 vertices and n-1 symbols")
    if not 1 <= theta_pos <= n - 1:
        raise ValueError("theta position out of range")
    requests = []
    for k in range(1, n + 1):
        if k == 1:
            form = frozenset({(symbols[0], 1)})
        elif k == n:
            form = frozenset({(symbols[n - 2], 2)})
        elif k <= theta_pos:
            form = frozenset({(symbols[k - 2], 1), (symbols[k - 1], 1)})
        else:
            form = frozenset({(symbols[k - 2], 2), (symbols[k - 1], 2)})
        requests.append((vertices[k - 1], form))
    plan = (
        frozenset(range(theta_pos)),
        frozenset(range(theta_pos, n)),
    )
    theta_symbol = symbols[theta_pos - 1]
    if orientation == -1:
        requests, plan = _orient(requests, plan, theta_symbol, {1: 2, 2: 1})
    return KernelRun(2, theta_symbol, tuple(requests), plan)


def star_kernel(
    center: int,
    leaves: Sequence[int],
    symbols: Sequence,
    theta_pos: int,
    orientation: int = 1,
) -> KernelRun:
    """One run of the trivial star scheme.

    The center returns the sum of position 1 of every file; each
    non-desired leaf returns position 1 of its own file; the desired leaf
    returns position 2. Half 1 comes from the center plus the other
    leaves, half 2 from the desired leaf.
    """
    if len(leaves) != len(symbols) or not symbols:
        raise ValueError("star kernel needs one symbol per leaf")
    if not 1 <= theta_pos <= len(symbols):
        raise ValueError("theta position out of range")
    requests = [(center, frozenset((s, 1) for s in symbols))]
    for i, leaf in enumerate(leaves, start=1):
        pos = 2 if i == theta_pos else 1
        requests.append((leaf, frozenset({(symbols[i - 1], pos)})))
    plan = (
        frozenset({0} | {i for i in range(1, len(leaves) + 1) if i != theta_pos}),
        frozenset({theta_pos}),
    )
    theta_symbol = symbols[theta_pos - 1]
    if orientation == -1:
        requests, plan = _orient(requests, plan, theta_symbol, {1: 2, 2: 1})
    return KernelRun(2, theta_symbol, tuple(requests), plan)
