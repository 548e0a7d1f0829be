"""Draw the type-t fan of a rank-2 root system, coloured by relevant parabolic.

    python3 scripts/plot_rank2_fan.py --root-system A2 --type 2 --out a2_t2.png

Without matplotlib only the ray data is written (as JSON, to --data or stdout).
"""

import argparse
import json
import math
import sys

from satake_fans.cli import parse_nodes
from satake_fans.fans import build_fan_Ft
from satake_fans.rootsys import build_root_datum


def euclidean_frame(rd):
    """Plane coordinates for a point given by its pairings with the simple roots."""
    (g11, g12), (_, g22) = [[float(x) for x in row] for row in rd.gram]
    # simple roots as plane vectors via a 2x2 Cholesky factor
    a1 = (math.sqrt(g11), 0.0)
    a2 = (g12 / a1[0], math.sqrt(g22 - (g12 / a1[0]) ** 2))

    def to_plane(u):
        # solve <a1,x> = u1, <a2,x> = u2
        x0 = float(u[0]) / a1[0]
        x1 = (float(u[1]) - a2[0] * x0) / a2[1]
        return x0, x1

    return to_plane


def fan_data(label: str, type_text: str) -> dict:
    rd = build_root_datum(label)
    if rd.rank != 2:
        raise SystemExit("only rank-2 root systems can be drawn")
    fan = build_fan_Ft(rd, parse_nodes(type_text))
    if fan.degenerate:
        raise SystemExit("degenerate fan: nothing to draw in the plane")
    to_plane = euclidean_frame(rd)
    cones = []
    for c in fan.cones:
        gens = [g for g in c.rays] + [g for v in c.lineality for g in (v, tuple(-x for x in v))]
        pts = []
        for g in gens:
            x, y = to_plane(g)
            r = math.hypot(x, y) or 1.0
            pts.append((x / r, y / r))
        cones.append({"dim": c.dim, "unit_generators": pts})
    return {"root_system": label, "type": type_text, "degenerate": fan.degenerate,
            "cones": cones}


def draw(data, out):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 5))
    palette = plt.get_cmap("tab10")
    k = 0
    for c in data["cones"]:
        pts = c["unit_generators"]
        if c["dim"] == 2 and len(pts) >= 2:
            angles = sorted(math.atan2(y, x) for x, y in pts)
            if angles[-1] - angles[0] > math.pi:
                angles = angles[1:] + [angles[0] + 2 * math.pi]
            steps = [angles[0] + (angles[-1] - angles[0]) * i / 40 for i in range(41)]
            poly = [(0, 0)] + [(math.cos(a), math.sin(a)) for a in steps]
            ax.fill(*zip(*poly), color=palette(k % 10), alpha=0.35)
            k += 1
        elif c["dim"] == 1:
            for x, y in pts:
                ax.plot([0, x], [0, y], color="black", lw=1.5)
    ax.set_xlim(-1.1, 1.1)
    ax.set_ylim(-1.1, 1.1)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(f"{data['root_system']}, type {{{data['type']}}}: {len(data['cones'])} cones")
    fig.savefig(out, dpi=120, bbox_inches="tight")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--root-system", default="A2")
    ap.add_argument("--type", default="2")
    ap.add_argument("--out", help="image path (needs matplotlib)")
    ap.add_argument("--data", default="-", help="JSON path for the ray data")
    args = ap.parse_args(argv)
    data = fan_data(args.root_system, args.type)
    text = json.dumps(data, indent=2)
    if args.data == "-":
        print(text)
    else:
        with open(args.data, "w") as fh:
            fh.write(text + "\n")
    if args.out:
        try:
            draw(data, args.out)
        except ImportError:
            print("matplotlib not installed; wrote data only", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
