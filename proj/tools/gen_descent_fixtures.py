#!/usr/bin/env python3
"""Writes the synthetic descent fixtures in data/descent/.

Each fixture is a finite cubical complex (a grid with chosen top cells,
optionally wrapped or with pinched vertices), a level n and a function f on
the n-cubes. The expected outcome of extending f to the (n-1)-cubes is
solved here with exact fractions, independently of the C++ code.

    python3 tools/gen_descent_fixtures.py [outdir]
"""

import itertools
import json
import random
import sys
from fractions import Fraction
from pathlib import Path


def cell_id(base, dirs):
    b = "_".join(str(c) for c in base)
    return f"x{b}" if not dirs else f"{''.join('abcd'[d] for d in dirs)}{b}"


class Grid:
    """Cells of a grid {0..size_i} (or Z/size_i when wrapped) in d dims."""

    def __init__(self, sizes, wrap, tops, pinch=()):
        self.sizes, self.wrap = sizes, wrap
        self.d = len(sizes)
        self.cells = {}  # (base, dirs) -> id
        self.faces = {}  # id -> [(i, sign, face id)]
        self.dim = {}
        self.alias = {}
        for a, b in pinch:
            self.alias[cell_id(self.norm(a), ())] = cell_id(self.norm(b), ())
        for base, dirs in tops:
            self.add(tuple(base), tuple(dirs))

    def norm(self, base):
        return tuple(c % s if w else c for c, s, w in zip(base, self.sizes, self.wrap))

    def add(self, base, dirs):
        base = self.norm(base)
        cid = cell_id(base, dirs)
        if not dirs:
            cid = self.alias.get(cid, cid)
        if cid in self.dim:
            return cid
        for c, s, w in zip(base, self.sizes, self.wrap):
            assert 0 <= c <= s and not (w and c == s)
        self.dim[cid] = len(dirs)
        fs = []
        for i, axis in enumerate(dirs, start=1):
            rest = dirs[:i - 1] + dirs[i:]
            fs.append((i, "-", self.add(base, rest)))
            up = list(base)
            up[axis] += 1
            fs.append((i, "+", self.add(tuple(up), rest)))
        self.faces[cid] = fs
        return cid

    def top_dim(self):
        return max(self.dim.values())

    def cubes(self, n):
        return sorted(c for c, k in self.dim.items() if k == n)

    def face(self, c, i, s):
        for j, t, f in self.faces[c]:
            if j == i and t == s:
                return f
        raise KeyError((c, i, s))

    def vertices_of(self, c):
        """Signed vertex expansion as a list of (sign, vertex)."""
        out = [(1, c)]
        for _ in range(self.dim[c]):
            nxt = []
            for sg, x in out:
                nxt.append((sg, self.face(x, 1, "+")))
                nxt.append((-sg, self.face(x, 1, "-")))
            out = nxt
        return out

    def to_json(self):
        cubes = {str(n): self.cubes(n) for n in range(self.top_dim() + 1)}
        faces = [{"cube": c, "i": i, "sign": s, "face": f}
                 for n in range(1, self.top_dim() + 1) for c in self.cubes(n)
                 for i, s, f in self.faces[c]]
        return {"top_dim": self.top_dim(), "cubes": cubes, "faces": faces}


def rank_and_consistent(rows, rhs, ncols):
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                q = m[r][col] / m[rank][col]
                m[r] = [a - q * b for a, b in zip(m[r], m[rank])]
        rank += 1
    ok = all(any(v != 0 for v in r[:ncols]) or r[ncols] == 0 for r in m)
    return rank, ok


def expectation(g, n, values):
    nodes = g.cubes(n - 1)
    idx = {c: k for k, c in enumerate(nodes)}
    rows, rhs = [], []
    for x in g.cubes(n):
        for i in range(1, n + 1):
            row = [Fraction(0)] * len(nodes)
            row[idx[g.face(x, i, "+")]] += 1
            row[idx[g.face(x, i, "-")]] -= 1
            rows.append(row)
            rhs.append(values[x])
    rank, ok = rank_and_consistent(rows, rhs, len(nodes))
    return {"extends": ok, "solution_dim": len(nodes) - rank if ok else None}


def frac_str(q):
    return f"{q.numerator}/{q.denominator}"


def jump_function(g, n, rng):
    h = {v: Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for v in g.cubes(0)}
    return {x: sum(s * h[v] for s, v in g.vertices_of(x)) for x in g.cubes(n)}


def squares(w, h, keep):
    return [((a, b), (0, 1)) for a in range(w) for b in range(h) if keep(a, b)]


def edges_only(w, h):
    tops = [((a, b), (0,)) for a in range(w) for b in range(h + 1)]
    tops += [((a, b), (1,)) for a in range(w + 1) for b in range(h)]
    return tops


def build(rng):
    specs = []

    def add(name, grid, n, kind, note):
        specs.append((name, grid, n, kind, note))

    # 1-dimensional
    cyc = Grid([5], [True], [((a,), (0,)) for a in range(5)])
    add("cycle5_jump", cyc, 1, "jump", "closed loop of five edges, exact jumps")
    add("cycle5_constant", cyc, 1, "constant", "constant price around a loop")
    path = Grid([4], [False], [((a,), (0,)) for a in range(4)])
    add("path4_random", path, 1, "random", "a tree: any prices extend")
    loop = Grid([1], [True], [((0,), (0,))])
    add("single_loop_zero", loop, 1, "zero", "one edge from a vertex to itself")
    add("single_loop_one", loop, 1, "constant", "nonzero price on a self-loop")

    # squares
    full = Grid([2, 2], [False, False], squares(2, 2, lambda a, b: True))
    add("square2x2_level1_jump", full, 1, "jump", "filled 2x2 grid, edges")
    add("square2x2_level1_perturbed", full, 1, "perturbed", "one edge price changed")
    add("square2x2_level2_jump", full, 2, "jump", "filled 2x2 grid, squares")
    add("square2x2_level2_perturbed", full, 2, "perturbed", "one square price changed")
    holes = Grid([3, 3], [False, False], squares(3, 3, lambda a, b: (a + b) % 2 == 0) + edges_only(3, 3))
    add("checker3x3_level2_random", holes, 2, "random", "checkerboard squares")
    add("checker3x3_level1_jump", holes, 1, "jump", "checkerboard squares, edges")
    strip = Grid([4, 1], [False, False], squares(4, 1, lambda a, b: True))
    add("strip4_level2_random", strip, 2, "random", "row of squares, parallel vertical edges")
    add("strip4_level2_jump", strip, 2, "jump", "row of squares")

    # wrapped
    cyl = Grid([3, 1], [True, False], squares(3, 1, lambda a, b: True))
    add("cylinder3_level2_jump", cyl, 2, "jump", "annulus of three squares")
    add("cylinder3_level2_perturbed", cyl, 2, "perturbed", "annulus, one square changed")
    torus = Grid([3, 3], [True, True], squares(3, 3, lambda a, b: True))
    add("torus3_level2_jump", torus, 2, "jump", "3x3 torus")
    add("torus3_level2_perturbed", torus, 2, "perturbed", "3x3 torus, one square changed")
    add("torus3_level1_random", torus, 1, "random", "3x3 torus, random edge prices")
    small = Grid([1, 1], [True, True], squares(1, 1, lambda a, b: True))
    add("torus1_level2_constant", small, 2, "constant", "one square, all edges loops")

    # pinched
    pinched = Grid([3, 1], [False, False], squares(3, 1, lambda a, b: True),
                   pinch=[((0, 0), (3, 1))])
    add("pinched_strip_level1_jump", pinched, 1, "jump", "strip with two corners glued")
    add("pinched_strip_level1_random", pinched, 1, "random", "glued strip, random prices")

    # three dimensions
    cube = Grid([2, 1, 1], [False, False, False],
                [((a, 0, 0), (0, 1, 2)) for a in range(2)])
    add("prism_level3_jump", cube, 3, "jump", "two unit cubes side by side")
    add("prism_level3_perturbed", cube, 3, "perturbed", "two cubes, one changed")
    add("prism_level2_jump", cube, 2, "jump", "two cubes, square level")
    add("prism_level2_perturbed", cube, 2, "perturbed", "two cubes, one square changed")
    ring = Grid([2, 1, 1], [True, False, False], [((a, 0, 0), (0, 1, 2)) for a in range(2)])
    add("solid_ring_level3_random", ring, 3, "random", "two cubes closed into a ring")

    out = []
    for name, g, n, kind, note in specs:
        if kind == "jump":
            vals = jump_function(g, n, rng)
        elif kind == "perturbed":
            vals = jump_function(g, n, rng)
            victim = rng.choice(g.cubes(n))
            vals[victim] += rng.choice([1, -1, Fraction(1, 2)])
        elif kind == "constant":
            vals = {x: Fraction(1) for x in g.cubes(n)}
        elif kind == "zero":
            vals = {x: Fraction(0) for x in g.cubes(n)}
        else:
            vals = {x: Fraction(rng.randint(-4, 4), rng.randint(1, 2)) for x in g.cubes(n)}
        out.append({
            "name": name,
            "note": note,
            "n": n,
            "complex": g.to_json(),
            "function": {"dim": n, "values": {x: frac_str(v) for x, v in sorted(vals.items())}},
            "expect": expectation(g, n, vals),
        })
    return out


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "descent"
    outdir.mkdir(parents=True, exist_ok=True)
    fixtures = build(random.Random(20))
    for fx in fixtures:
        (outdir / f"{fx['name']}.json").write_text(json.dumps(fx, indent=1) + "\n")
    blocked = sum(1 for fx in fixtures if not fx["expect"]["extends"])
    print(f"{len(fixtures)} fixtures, {blocked} obstructed -> {outdir}")


if __name__ == "__main__":
    main()
