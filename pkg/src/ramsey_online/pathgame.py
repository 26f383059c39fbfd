"""Forcing a monochromatic path while drawing a forest.

The board is summarized by one profile per component: at a chosen root
vertex, the number of edges on the longest red path ending there and on the
longest blue path ending there (both tracked explicitly, so they are lower
bounds that the real board realizes).  Builder joins the roots of two
components, or a root and a fresh vertex, or two fresh vertices, so the
board stays a forest.  Once the new edge is colored, Builder picks the
merged component's root among three candidates:

* the old root on the second side, keeping its other-color path;
* the old root on the first side, likewise;
* the far end of the joined path of the new color, with nothing known about
  the other color.

Joining red paths of lengths a and b yields a red path of length a + b + 1.
``solve_table`` finds, for a length target, a winning plan with the fewest
painter-reply leaves under a budget on edges and on live components.  The
plan for the default targets ships as JSON; ``load_table`` reads it.
"""

from __future__ import annotations

import json
import sys
from functools import lru_cache
from importlib import resources

FRESH = (0, 0)


def join_outcomes(p, q):
    """Per color: (candidate roots, joined length).  Candidates in fixed order."""
    (r1, b1), (r2, b2) = p, q
    red = ((max(r2, r1 + 1), b2), (max(r1, r2 + 1), b1), (r1 + r2 + 1, 0))
    blue = ((r2, max(b2, b1 + 1)), (r1, max(b1, b2 + 1)), (0, b1 + b2 + 1))
    return (red, r1 + r2 + 1), (blue, b1 + b2 + 1)


def candidate_joins(state):
    """Distinct (rest, p, q) choices: p, q from live profiles or a fresh vertex."""
    slots = list(state) + [FRESH, FRESH]
    n = len(state)
    seen = set()
    for i in range(len(slots)):
        for j in range(i + 1, len(slots)):
            if i >= n and j >= n and i != n:
                continue
            p, q = slots[i], slots[j]
            if (p, q) in seen:
                continue
            seen.add((p, q))
            rest = list(state)
            if i < n:
                rest.remove(p)
            if j < n:
                rest.remove(q)
            yield tuple(rest), p, q


def solve_table(k: int, max_components: int, budget: int):
    """Return (leaves, plan) or None.  plan maps (state, budget) to a move."""

    @lru_cache(maxsize=None)
    def best(state, b):
        if b == 0:
            return None
        found = None
        for rest, p, q in candidate_joins(state):
            total = 0
            picks = []
            ok = True
            for roots, length in join_outcomes(p, q):
                if length >= k:
                    total += 1
                    picks.append(None)
                    continue
                if len(rest) + 1 > max_components:
                    ok = False
                    break
                opts = []
                for idx, root in enumerate(roots):
                    nxt = tuple(sorted(rest + (root,)))
                    r = best(nxt, b - 1)
                    if r is not None:
                        opts.append((r[0], idx))
                if not opts:
                    ok = False
                    break
                leaves, idx = min(opts)
                total += leaves
                picks.append(idx)
            if ok and (found is None or total < found[0]):
                found = (total, p, q, tuple(picks))
        return found

    root = best((), budget)
    if root is None:
        return None
    # walk the chosen plan to collect the reachable entries
    plan = {}
    stack = [((), budget)]
    while stack:
        state, b = stack.pop()
        if (state, b) in plan:
            continue
        leaves, p, q, picks = best(state, b)
        plan[(state, b)] = (p, q, picks)
        rest = list(state)
        for x in (p, q):
            if x != FRESH:
                rest.remove(x)
        for (roots, length), pick in zip(join_outcomes(p, q), picks):
            if pick is not None:
                stack.append((tuple(sorted(rest + [roots[pick]])), b - 1))
    best.cache_clear()
    return root[0], plan


def _state_str(state) -> str:
    return ";".join(f"{r},{b}" for r, b in state)


def _parse_state(text: str):
    if not text:
        return ()
    return tuple(tuple(int(x) for x in part.split(",")) for part in text.split(";"))


def plan_to_json(k, max_components, budget, leaves, plan) -> dict:
    nodes = {}
    for (state, b), (p, q, picks) in sorted(plan.items(), key=lambda kv: (-kv[0][1], kv[0][0])):
        nodes[f"{_state_str(state)}|{b}"] = {"join": [list(p), list(q)], "pick": list(picks)}
    return {"k": k, "max_components": max_components, "budget": budget, "leaves": leaves, "nodes": nodes}


class PathTable:
    def __init__(self, data: dict):
        self.k = data["k"]
        self.budget = data["budget"]
        self.leaves = data["leaves"]
        self.max_components = data["max_components"]
        self.nodes = {}
        for key, v in data["nodes"].items():
            s, b = key.split("|")
            self.nodes[(_parse_state(s), int(b))] = (tuple(v["join"][0]), tuple(v["join"][1]), tuple(v["pick"]))

    def move(self, state, budget):
        return self.nodes[(tuple(sorted(state)), budget)]


SHIPPED = {6: "path_k6.json"}


@lru_cache(maxsize=None)
def load_table(k: int) -> PathTable:
    if k in SHIPPED:
        text = resources.files("ramsey_online").joinpath("data", SHIPPED[k]).read_text()
        return PathTable(json.loads(text))
    # small targets are quick to solve directly
    for budget in range(1, 4 * k + 8):
        res = solve_table(k, max(2, k - 1), budget)
        if res is not None:
            return PathTable(plan_to_json(k, max(2, k - 1), budget, *res))
    raise ValueError(f"no forcing plan found for paths with {k} edges")


def check_table(t: PathTable) -> int:
    """Replay every painter reply through the abstract game; return the leaf count."""
    leaves = 0
    stack = [((), t.budget)]
    while stack:
        state, b = stack.pop()
        if b <= 0:
            raise AssertionError("plan ran out of budget")
        p, q, picks = t.move(state, b)
        rest = list(state)
        for x in (p, q):
            if x != FRESH:
                rest.remove(x)  # raises if the plan names a missing profile
        if len(rest) + 1 > t.max_components + 1:
            raise AssertionError("too many components")
        for (roots, length), pick in zip(join_outcomes(p, q), picks):
            if length >= t.k:
                leaves += 1
                if pick is not None:
                    raise AssertionError("winning reply should end the plan")
                continue
            stack.append((tuple(sorted(rest + [roots[pick]])), b - 1))
    return leaves


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    k, maxc, budget = (int(x) for x in argv[:3])
    res = solve_table(k, maxc, budget)
    if res is None:
        print(f"no plan for k={k} with {maxc} components in {budget} edges", file=sys.stderr)
        return 1
    json.dump(plan_to_json(k, maxc, budget, *res), sys.stdout, separators=(",", ":"))
    print(f"leaves {res[0]}, entries {len(res[1])}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
