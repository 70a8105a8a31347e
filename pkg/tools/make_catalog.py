"""Regenerate the built-in catalog from hand-written structure constants.

    python tools/make_catalog.py [outdir]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from hopf_forge.instances import dumps_spec  # noqa: E402


def zeros3(d):
    return [[[0] * d for _ in range(d)] for _ in range(d)]


def group_algebra(name, field, elements, op, labels):
    d = len(elements)
    index = {g: i for i, g in enumerate(elements)}
    mul = zeros3(d)
    comul = zeros3(d)
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            mul[i][j][index[op(g, h)]] = 1
        comul[i][i][i] = 1
    unit = [1 if i == 0 else 0 for i in range(d)]
    return {
        "name": name,
        "backend": "vect",
        "field": field,
        "dim": d,
        "labels": labels,
        "mul": mul,
        "unit": unit,
        "comul": comul,
        "counit": [1] * d,
    }


def sweedler(name, field, minus_one):
    # basis g^a x^b, index a + 2b: 1, g, x, gx
    def idx(a, b):
        return {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}[(a % 2, b)]

    powers = [(0, 0), (1, 0), (0, 1), (1, 1)]
    mul = zeros3(4)
    for i, (a, b) in enumerate(powers):
        for j, (c, dd) in enumerate(powers):
            if b + dd > 1:
                continue
            # g^a x^b g^c x^d = (-1)^{bc} g^{a+c} x^{b+d}
            mul[i][j][idx(a + c, b + dd)] = minus_one if b * c else 1
    comul = zeros3(4)
    comul[0][0][0] = 1                 # δ1 = 1⊗1
    comul[1][1][1] = 1                 # δg = g⊗g
    comul[2][2][0] = 1                 # δx = x⊗1 + g⊗x
    comul[2][1][2] = 1
    comul[3][3][1] = 1                 # δ(gx) = gx⊗g + 1⊗gx
    comul[3][0][3] = 1
    return {
        "name": name,
        "backend": "vect",
        "field": field,
        "dim": 4,
        "labels": ["1", "g", "x", "gx"],
        "mul": mul,
        "unit": [1, 0, 0, 0],
        "comul": comul,
        "counit": [1, 1, 0, 0],
    }


def main(outdir):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    specs = []
    specs.append(group_algebra("c2_f2", ["Fp", 2], [0, 1], lambda a, b: (a + b) % 2, ["1", "g"]))
    specs.append(group_algebra("c3_f3", ["Fp", 3], [0, 1, 2], lambda a, b: (a + b) % 3, ["1", "g", "g2"]))
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    specs.append(
        group_algebra(
            "s3_q",
            ["Q"],
            perms,
            lambda p, q: tuple(p[q[i]] for i in range(3)),
            ["e", "(12)", "(23)", "(13)", "(123)", "(132)"],
        )
    )
    specs.append(sweedler("sweedler_f5", ["Fp", 5], 4))
    specs.append(sweedler("sweedler_q", ["Q"], -1))
    specs.append(group_algebra("monoid_1z_f2", ["Fp", 2], ["1", "z"], lambda a, b: "z" if "z" in (a, b) else "1", ["1", "z"]))
    ext = {
        "name": "exterior_f3",
        "backend": "vect",
        "field": ["Fp", 3],
        "dim": 2,
        "labels": ["1", "x"],
        "mul": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        "unit": [1, 0],
        "comul": [[[1, 0], [0, 0]], [[0, 1], [1, 0]]],
        "counit": [1, 0],
        "parity": [0, 1],
    }
    specs.append(ext)
    specs.append(
        {
            "name": "z4_set",
            "backend": "set",
            "size": 4,
            "labels": ["0", "1", "2", "3"],
            "table": [[(a + b) % 4 for b in range(4)] for a in range(4)],
            "unit": 0,
        }
    )
    specs.append(
        {"name": "monoid_1z_set", "backend": "set", "size": 2, "labels": ["1", "z"], "table": [[0, 1], [1, 1]], "unit": 0}
    )
    for s in specs:
        (out / f"{s['name']}.json").write_text(dumps_spec(s), encoding="utf-8")
        print("wrote", s["name"])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src" / "hopf_forge" / "catalog")
