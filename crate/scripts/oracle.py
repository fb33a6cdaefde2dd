"""Independent dense-sampling check of the fixture catalog.

Samples each curve on a fine grid of the affine chart z = 1, extracts the
zero contours with marching squares and reports closed contours (ovals),
their nesting, open pieces, and which oval each metadata point lies on.
Run from the repository root:  python3 scripts/oracle.py [name ...]
"""
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
from matplotlib.path import Path as Poly
from skimage import measure

FIX = Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"
WINDOW = 8.0
N = 2401


def load(name):
    doc = json.loads((FIX / f"{name}.json").read_text())
    terms = [(c["a"], c["b"], c["c"], c["num"] / c["den"]) for c in doc["coefficients"]]
    return doc, terms


def evaluate(terms, X, Y):
    out = np.zeros_like(X)
    for a, b, c, k in terms:
        out += k * X**a * Y**b
    return out


def analyse(name):
    doc, terms = load(name)
    xs = np.linspace(-WINDOW, WINDOW, N)
    X, Y = np.meshgrid(xs, xs)
    V = evaluate(terms, X, Y)
    step = xs[1] - xs[0]
    contours = measure.find_contours(V, 0.0)
    closed, open_ = [], []
    for c in contours:
        pts = np.column_stack([xs[0] + c[:, 1] * step, xs[0] + c[:, 0] * step])
        if np.allclose(pts[0], pts[-1]) and len(pts) > 3:
            closed.append(pts)
        else:
            open_.append(pts)
    polys = [Poly(c) for c in closed]
    depth = []
    for i, c in enumerate(closed):
        depth.append(sum(1 for j, p in enumerate(polys) if j != i and p.contains_point(c[0])))
    owner = []
    for p in doc["metadata"].get("points", []):
        px, py = (float(Fraction(s)) for s in p[:2])
        dists = [np.min(np.hypot(c[:, 0] - px, c[:, 1] - py)) for c in closed]
        best = int(np.argmin(dists)) if dists else None
        owner.append(best if best is not None and dists[best] < 5 * step else None)
    return closed, open_, depth, owner


def main(names):
    names = names or sorted(p.stem for p in FIX.glob("*.json"))
    for name in names:
        closed, open_, depth, owner = analyse(name)
        print(f"{name}: {len(closed)} closed, {len(open_)} open, depths {depth}, points on {owner}")


if __name__ == "__main__":
    main(sys.argv[1:])
