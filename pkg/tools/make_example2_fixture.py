"""Regenerate the Example 2 fixtures.

A rational degree-5 parent patch over the unit triangle is split along the
segment from (0, 0) to (1/2, 1/2) into two rational patches, Y and R, which
share that segment as an edge:

    Y has corners (1/2, 1/2), (0, 1), (0, 0)   (edge y2 = 0 is the shared one)
    R has corners (1, 0), (1/2, 1/2), (0, 0)   (edge z1 = 0 is the shared one)

Control points come from the blossom of the parent in homogeneous
coordinates, so both pieces are exact reparametrisations of the parent.

    python3 tools/make_example2_fixture.py [OUTDIR]
"""

import sys
from pathlib import Path

import numpy as np

from tribez.core import RationalPatch, lex_position, theta
from tribez.patchfile import write_patch

N = 5


def parent() -> RationalPatch:
    pts, w = [], []
    for k1, k2 in theta(N):
        x, y = k1 / N, k2 / N
        pts.append([x, y, 0.6 * np.sin(np.pi * x) * np.cos(0.5 * np.pi * y) + 0.3 * x * y])
        w.append(1.0 + 0.6 * np.sin(1.3 * k1 + 0.7 * k2) ** 2)
    return RationalPatch(N, np.array(pts), np.array(w))


def blossom(patch: RationalPatch, args) -> np.ndarray:
    """Homogeneous blossom at ``len(args) == degree`` barycentric points."""
    n = patch.degree
    H = np.column_stack([patch.points * patch.weights[:, None], patch.weights])
    net = {k: H[lex_position(n, k)] for k in theta(n)}
    for level, (b1, b2, b3) in enumerate(args):
        deg = n - level - 1
        net = {
            (i, j): b1 * net[(i + 1, j)] + b2 * net[(i, j + 1)] + b3 * net[(i, j)]
            for i in range(deg + 1) for j in range(deg + 1 - i)
        }
    return net[(0, 0)]


def subpatch(patch: RationalPatch, corners) -> RationalPatch:
    a, b, o = (np.array([c[0], c[1], 1.0 - c[0] - c[1]]) for c in corners)
    rows = [blossom(patch, [a] * k1 + [b] * k2 + [o] * (N - k1 - k2)) for k1, k2 in theta(N)]
    H = np.array(rows)
    return RationalPatch(N, H[:, :-1] / H[:, -1:], H[:, -1])


def main(outdir):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    P = parent()
    write_patch(out / "example2_parent.json", P)
    write_patch(out / "example2_Y.json", subpatch(P, [(0.5, 0.5), (0.0, 1.0), (0.0, 0.0)]))
    write_patch(out / "example2_R.json", subpatch(P, [(1.0, 0.0), (0.5, 0.5), (0.0, 0.0)]))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src/tribez/fixtures")
