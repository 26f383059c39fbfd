"""Summary tables (tab-separated) with matching PNG figures.

Each table is written next to a figure drawn from the same rows, so the
numbers behind every plot stay greppable.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .builder import make_builder  # noqa: E402
from .engine import parse_constraint, run_game  # noqa: E402
from .painter import get_painter  # noqa: E402
from .patterns import catalog, classify, subgraphs_without_isolated  # noqa: E402

GAME_BUILDERS = ["star-triangle", "mono-path:6", "k4free", "k15free", "yfree"]
GAME_PAINTERS = ["always-red", "always-blue", "greedy"]
PAINTER_RUNS = [
    ("strategy2", "subgraph-free:X1"),
    ("strategy3", "subgraph-free:X2"),
    ("strategy4", "subgraph-free:X3"),
    ("strategy4", "subgraph-free:X4"),
    ("zero-cycle", "minor-free:K4"),
]


def _write_tsv(path: Path, header, rows):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


def game_rows(max_edges=64):
    rows = []
    for bname in GAME_BUILDERS:
        for pname in GAME_PAINTERS:
            b = make_builder(bname)
            c = parse_constraint(b.declared)
            t = run_game(b, get_painter(pname), c, max_edges)
            rows.append([bname, pname, c.spec, t.outcome.value, len(t.moves)])
    return rows


def painter_rows(max_edges, max_vertices=8):
    from .solver import verify_painter

    rows = []
    for pname, spec in PAINTER_RUNS:
        for budget in range(4, max_edges + 1):
            r = verify_painter(pname, spec, max_vertices, budget)
            rows.append([pname, spec, budget, "SURVIVES" if r.survives else "FAILS",
                         r.positions, r.stats.nodes, f"{r.stats.seconds:.3f}"])
    return rows


def lattice_rows():
    rows = []
    for F in subgraphs_without_isolated(catalog()["X"]):
        res = classify(F)
        edges = " ".join(f"{u}-{v}" for u, v in F.edges)
        rows.append([len(F.edges), edges, str(res.verdict), res.witness or ""])
    return rows


def _games_figure(rows, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    grid = [[next(r[4] for r in rows if r[0] == b and r[1] == p) for p in GAME_PAINTERS] for b in GAME_BUILDERS]
    im = ax.imshow(grid, cmap="viridis")
    ax.set_xticks(range(len(GAME_PAINTERS)), GAME_PAINTERS, rotation=30, ha="right")
    ax.set_yticks(range(len(GAME_BUILDERS)), GAME_BUILDERS)
    for i, b in enumerate(GAME_BUILDERS):
        for j, p in enumerate(GAME_PAINTERS):
            outcome = next(r[3] for r in rows if r[0] == b and r[1] == p)
            mark = "" if outcome == "BUILDER_WIN" else "*"
            ax.text(j, i, f"{grid[i][j]}{mark}", ha="center", va="center", color="w")
    fig.colorbar(im, ax=ax, label="edges drawn")
    ax.set_title("game length by builder and painter")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _growth_figure(rows, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    for pname, spec in PAINTER_RUNS:
        pts = [(r[2], r[4]) for r in rows if r[0] == pname and r[1] == spec]
        ax.plot([x for x, _ in pts], [y for _, y in pts], marker="o", label=f"{pname} / {spec.split(':')[1]}")
    ax.set_yscale("log")
    ax.xaxis.get_major_locator().set_params(integer=True)
    ax.set_xlabel("edge budget")
    ax.set_ylabel("distinct positions (8 vertices)")
    ax.legend(fontsize=8)
    ax.set_title("exhaustive painter checks")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _lattice_figure(rows, path):
    verdicts = sorted({r[2] for r in rows})
    sizes = sorted({r[0] for r in rows})
    fig, ax = plt.subplots(figsize=(6, 4))
    bottom = [0] * len(sizes)
    for v in verdicts:
        counts = [sum(1 for r in rows if r[0] == s and r[2] == v) for s in sizes]
        ax.bar(sizes, counts, bottom=bottom, label=v)
        bottom = [a + b for a, b in zip(bottom, counts)]
    ax.set_xticks(sizes)
    ax.set_xlabel("edges in the forbidden subgraph")
    ax.set_ylabel("subgraphs of X")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def build_report(out: Path, max_edges: int = 8) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    games = game_rows()
    paths.append(_write_tsv(out / "games.tsv", ["builder", "painter", "constraint", "outcome", "moves"], games))
    paths.append(_games_figure(games, out / "games.png"))
    growth = painter_rows(max_edges)
    paths.append(_write_tsv(out / "painter_growth.tsv",
                            ["painter", "constraint", "max_edges", "verdict", "positions", "nodes", "seconds"], growth))
    paths.append(_growth_figure(growth, out / "painter_growth.png"))
    lattice = lattice_rows()
    paths.append(_write_tsv(out / "lattice.tsv", ["edges", "edge_list", "verdict", "witness"], lattice))
    paths.append(_lattice_figure(lattice, out / "lattice.png"))
    return paths
