"""Writes the bundled corpus documents. Run from this directory."""

import json
from pathlib import Path


def table_cyclic(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def table_product(g, h):
    m, n = len(g), len(h)
    return [[g[a // n][b // n] * n + h[a % n][b % n] for b in range(m * n)] for a in range(m * n)]


def inverse(mul, g):
    return next(h for h in range(len(mul)) if mul[g][h] == 0)


def norm_one_action(mul, gens):
    """Characters of the norm-one torus: the dual of the augmentation ideal on e_g − e_1."""
    n = len(mul)
    idx = {g: g - 1 for g in range(1, n)}

    def act(h):
        cols = []
        for g in range(1, n):
            col = [0] * (n - 1)
            if mul[h][g] != 0:
                col[idx[mul[h][g]]] += 1
            if h != 0:
                col[idx[h]] -= 1
            cols.append(col)
        return [[cols[j][i] for j in range(n - 1)] for i in range(n - 1)]

    out = {}
    for h in gens:
        a = act(inverse(mul, h))
        out[str(h)] = [[a[j][i] for j in range(n - 1)] for i in range(n - 1)]
    return out


GROUPS = {
    "trivial": {"kind": "table", "mul": [[0]]},
    "z2": {"kind": "table", "mul": table_cyclic(2)},
    "z3": {"kind": "table", "mul": table_cyclic(3)},
    "z4": {"kind": "table", "mul": table_cyclic(4)},
    "z6": {"kind": "table", "mul": table_cyclic(6)},
    "v4": {"kind": "table", "mul": table_product(table_cyclic(2), table_cyclic(2))},
    "s3": {"kind": "perm", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]},
}

MODULES = {
    "sign": {"group": "z2", "ngens": 1, "action": {"1": [[-1]]}},
    "z.z2": {"group": "z2", "ngens": 1},
    "regular.z2": {"group": "z2", "ngens": 2, "action": {"1": [[0, 1], [1, 0]]}},
    "regular.z3": {"group": "z3", "ngens": 3, "action": {"1": [[0, 0, 1], [1, 0, 0], [0, 1, 0]]}},
    "z-mod-2.z2": {"group": "z2", "ngens": 1, "relations": [[2]]},
    "sign.s3": {"group": "s3", "ngens": 1, "action": {"1": [[-1]], "2": [[1]]}},
}


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def closure(simple, simple_co):
    """All (root, coroot) pairs generated from the simple ones by reflections."""
    pairs = {(tuple(a), tuple(c)) for a, c in zip(simple, simple_co)}
    frontier = list(pairs)
    while frontier:
        nxt = []
        for b, bc in frontier:
            for a, ac in zip(simple, simple_co):
                k = dot(b, ac)
                l = dot(a, bc)
                p = (tuple(x - k * y for x, y in zip(b, a)), tuple(x - l * y for x, y in zip(bc, ac)))
                if p not in pairs:
                    pairs.add(p)
                    nxt.append(p)
        frontier = nxt
    pairs = sorted(pairs)
    return [list(a) for a, _ in pairs], [list(c) for _, c in pairs]


def unit(n, i):
    return [1 if j == i else 0 for j in range(n)]


def cartan_a(r):
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(r)] for i in range(r)]


def datum(rank, simple=(), simple_co=(), group="trivial", action=None):
    roots, coroots = closure(list(simple), list(simple_co)) if simple else ([], [])
    d = {"group": group, "X_rank": rank, "roots": roots, "coroots": coroots}
    if action:
        d["action"] = action
    return d


def sl(n):
    r = n - 1
    return datum(r, cartan_a(r), [unit(r, i) for i in range(r)])


def pgl(n):
    r = n - 1
    return datum(r, [unit(r, i) for i in range(r)], cartan_a(r))


def gl(n, **kw):
    simple = [[1 if j == i else -1 if j == i + 1 else 0 for j in range(n)] for i in range(n - 1)]
    return datum(n, simple, simple, **kw)


def twist(d, group):
    return dict(d, group=group)


FLIP = {"1": [[0, 1], [1, 0]]}
DATA = {
    "sl2": sl(2),
    "sl3": sl(3),
    "sl4": sl(4),
    "pgl2": pgl(2),
    "pgl3": pgl(3),
    "pgl4": pgl(4),
    "gl2": gl(2),
    "gl3": gl(3),
    "gl4": gl(4),
    "sp4": datum(2, [[1, -1], [0, 2]], [[1, -1], [0, 1]]),
    "so5": datum(2, [[1, -1], [0, 1]], [[1, -1], [0, 2]]),
    "gm": datum(1),
    "sl2.z2": twist(sl(2), "z2"),
    "pgl2.z2": twist(pgl(2), "z2"),
    "gl2.z2": twist(gl(2), "z2"),
    "u2": gl(2, group="z2", action={"1": [[0, -1], [-1, 0]]}),
    "su3.qs": datum(2, cartan_a(2), [[1, 0], [0, 1]], group="z2", action=FLIP),
    "pu3.qs": datum(2, [[1, 0], [0, 1]], cartan_a(2), group="z2", action=FLIP),
    "sign-torus": datum(1, group="z2", action={"1": [[-1]]}),
    "norm-one.z3": datum(2, group="z3", action=norm_one_action(table_cyclic(3), [1])),
    "norm-one.v4": datum(3, group="v4", action=norm_one_action(GROUPS["v4"]["mul"], [1, 2])),
    "induced.z3": datum(3, group="z3", action={"1": [[0, 0, 1], [1, 0, 0], [0, 1, 0]]}),
}

SEQUENCES = {
    "seq.gln-pgln": {"kind": "central_torus_quotient", "datum": "gl2", "torus": [[1, 1]]},
    "seq.gl3-pgl3": {"kind": "central_torus_quotient", "datum": "gl3", "torus": [[1, 1, 1]]},
    "seq.sl2-gl2-gm": {"kind": "derived_coradical", "datum": "gl2"},
    "seq.sl2xpgl2": {"kind": "product", "left": "sl2", "right": "pgl2"},
    "seq.u2-scalars": {"kind": "central_torus_quotient", "datum": "u2", "torus": [[1, 1]]},
    "seq.u2-derived": {"kind": "derived_coradical", "datum": "u2"},
}


def main():
    out = Path(".")
    names = []
    for ty, docs in [("group", GROUPS), ("module", MODULES), ("datum", DATA), ("sequence", SEQUENCES)]:
        for name, doc in docs.items():
            text = json.dumps({"type": ty, "document": doc}, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
            (out / f"{name}.json").write_text(text)
            names.append(name)
    print("\n".join(names))


if __name__ == "__main__":
    main()
