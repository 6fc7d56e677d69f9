#!/usr/bin/env python3
"""Regenerates the bundled model fixtures under models/."""

import json
import os
from itertools import product

OUT = os.path.join(os.path.dirname(__file__), "..", "models")


def write(name, doc):
    path = os.path.join(OUT, name)
    with open(path, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")
    print("wrote", path)


def fig1():
    """Three-component transmission system: w = min(g1, g2 + g3)."""
    table = []
    for g1, g2, g3 in product([0, 1], [0, 1, 2], [0, 1]):
        table.append({"in": [str(g1), str(g2), str(g3)],
                      "out": str(min(g1, g2 + g3))})
    doc = {
        "levels": 2,
        "components": [
            {"id": "c1", "performances": ["0", "1"], "probabilities": ["0.4", "0.6"]},
            {"id": "c2", "performances": ["0", "1", "2"],
             "probabilities": ["0.2", "0.3", "0.5"]},
            {"id": "c3", "performances": ["0", "1"], "probabilities": ["0.5", "0.5"]},
        ],
        "nodes": [
            {"id": "top", "level": 2, "parents": ["c1", "c2", "c3"],
             "structure": "custom", "table": table},
        ],
    }
    write("fig1.model.json", doc)


def table2_broken():
    """CPT whose per-parent-state columns do not normalize."""
    doc = {
        "levels": 3,
        "components": [
            {"id": "a", "performances": ["0", "1"], "probabilities": ["0.5", "0.5"]},
        ],
        "nodes": [
            {"id": "A", "level": 2, "parents": ["a"], "structure": "series"},
            {"id": "B", "level": 3, "parents": ["A"],
             "cpt": {"states": ["0", "1"],
                     "rows": [
                         {"in": [0], "p": ["0.2", "0.7"]},
                         {"in": [1], "p": ["0.8", "0.3"]},
                     ]}},
        ],
    }
    write("table2_broken.model.json", doc)


# failure rates (1e-6 per hour) for the 68 bottom components of the
# five-level drive-train fixture, with their group composition codes
CASE1_LAMBDAS = {
    16: 1.52, 17: 0.85, 18: 0.93, 19: 0.98, 20: 1.55, 21: 1.72, 22: 2.11,
    23: 0.96, 24: 1.00, 25: 2.13, 26: 2.24, 27: 1.64, 28: 1.55, 29: 1.26,
    30: 1.73, 31: 1.32, 32: 1.12, 33: 1.34, 34: 1.61, 35: 1.55, 36: 1.16,
    37: 1.21, 38: 1.12, 39: 1.32, 40: 1.47, 41: 1.73, 42: 1.21, 43: 0.99,
    44: 1.53, 45: 1.73, 46: 2.13, 47: 0.96, 48: 1.00, 49: 2.14, 50: 1.22,
    51: 1.61, 52: 1.55, 53: 1.16, 54: 1.71, 55: 1.52, 56: 1.42, 57: 1.22,
    58: 1.63, 59: 1.43, 60: 1.51, 61: 1.72, 62: 1.32, 63: 1.41, 64: 1.22,
    65: 1.52, 66: 1.31, 67: 9.86, 68: 1.52, 69: 1.73, 70: 2.13, 71: 9.51,
    72: 9.98, 73: 2.14, 74: 1.14, 75: 1.63, 76: 1.45, 77: 1.36, 78: 1.61,
    79: 1.24, 80: 1.12, 81: 1.44, 82: 1.63, 83: 1.45,
}

# ten bottom groups: (component id range, composition)
CASE1_GROUPS = [
    ((16, 19), "series"),
    ((20, 29), "xor"),
    ((30, 33), "series"),
    ((34, 39), "parallel"),
    ((40, 45), "parallel"),
    ((46, 50), "series"),
    ((51, 54), "series"),
    ((55, 62), "parallel"),
    ((63, 71), "xor"),
    ((72, 83), "parallel"),
]


def case1():
    comps = [{"id": f"c{i}", "lambda_e6": str(lam)}
             for i, lam in sorted(CASE1_LAMBDAS.items())]
    nodes = []
    for gi, ((lo, hi), psi) in enumerate(CASE1_GROUPS, start=1):
        nodes.append({"id": f"s2_{gi}", "level": 2,
                      "parents": [f"c{i}" for i in range(lo, hi + 1)],
                      "structure": psi})
    nodes += [
        {"id": "s3_1", "level": 3, "parents": ["s2_1", "s2_2", "s2_3", "s2_4"],
         "structure": "series"},
        {"id": "s3_2", "level": 3, "parents": ["s2_5", "s2_6", "s2_7"],
         "structure": "parallel"},
        {"id": "s3_3", "level": 3, "parents": ["s2_8", "s2_9", "s2_10"],
         "structure": "parallel"},
        {"id": "s4_1", "level": 4, "parents": ["s3_1", "s3_2", "s3_3"],
         "structure": "parallel"},
        {"id": "s5_1", "level": 5, "parents": ["s4_1"], "structure": "series"},
    ]
    write("case1.model.json", {"levels": 5, "components": comps, "nodes": nodes})


def bench():
    """Ten series groups: binary group values keep upper-level inference
    small, the per-group tables on the network path double with every
    added component, and the algebraic path stays linear."""
    comps, nodes = [], []
    lam = [1.12, 1.26, 1.34, 1.45, 1.52, 1.61, 1.73, 1.85, 1.93, 2.05]
    for g in range(10):
        ids = []
        for c in range(13):
            cid = f"b{g+1}_{c+1}"
            comps.append({"id": cid, "lambda_e6": str(lam[(g + c) % len(lam)])})
            ids.append(cid)
        nodes.append({"id": f"s2_{g+1}", "level": 2, "parents": ids,
                      "structure": "series"})
    nodes += [
        {"id": "s3_1", "level": 3,
         "parents": ["s2_1", "s2_2", "s2_3"], "structure": "parallel"},
        {"id": "s3_2", "level": 3,
         "parents": ["s2_4", "s2_5", "s2_6"], "structure": "series"},
        {"id": "s3_3", "level": 3,
         "parents": ["s2_7", "s2_8"], "structure": "parallel"},
        {"id": "s3_4", "level": 3,
         "parents": ["s2_9", "s2_10"], "structure": "series"},
        {"id": "s4_1", "level": 4,
         "parents": ["s3_1", "s3_2"], "structure": "series"},
        {"id": "s4_2", "level": 4,
         "parents": ["s3_3", "s3_4"], "structure": "parallel"},
        {"id": "s5_1", "level": 5,
         "parents": ["s4_1", "s4_2"], "structure": "parallel"},
    ]
    write("bench.model.json", {"levels": 5, "components": comps, "nodes": nodes})


# (mass kg, power W, cost M$, min, max, psi, lambda per hour) per unit
CASE2_UNITS = [
    (0.05, 0.11, 0.1, 1, 9, "xor", 1.42e-6),
    (0.013, 0.30, 0.2, 2, 8, "parallel", 1.53e-6),
    (0.014, 0.40, 0.1, 1, 9, "series", 1.31e-6),
    (0.007, 0.70, 0.4, 4, 9, "xor", 9.83e-7),
    (0.012, 0.20, 0.6, 3, 8, "parallel", 1.52e-6),
    (0.025, 0.50, 0.7, 1, 10, "series", 1.73e-6),
    (0.015, 0.50, 0.9, 1, 10, "parallel", 2.13e-6),
    (0.017, 0.70, 1.1, 2, 9, "series", 9.53e-7),
    (0.019, 0.90, 1.3, 2, 9, "parallel", 9.98e-7),
    (0.020, 0.20, 1.5, 2, 10, "parallel", 2.13e-6),
    (0.016, 0.60, 1.6, 3, 11, "series", 1.24e-6),
    (0.018, 0.80, 1.7, 4, 11, "parallel", 1.63e-6),
    (0.020, 0.20, 1.8, 4, 12, "series", 1.45e-6),
    (0.014, 0.40, 1.1, 2, 11, "parallel", 1.56e-6),
    (0.010, 0.10, 1.0, 1, 10, "series", 1.71e-6),
    (0.008, 0.80, 0.9, 1, 11, "parallel", 1.22e-6),
]

CASE2_BASELINE = [10, 7, 7, 9, 11, 8, 12, 6, 7, 12, 9, 8, 10, 9, 12, 8]


def case2(name):
    comps, nodes, units = [], [], []
    for j, (m, po, dc, nmin, nmax, psi, lam) in enumerate(CASE2_UNITS, start=1):
        cid = f"u{j}_1"
        comps.append({"id": cid, "lambda_e6": str(lam * 1e6)})
        nodes.append({"id": f"g{j}", "level": 2, "parents": [cid],
                      "structure": psi})
        units.append({"id": f"C{j}", "mass_kg": str(m), "power_w": str(po),
                      "cost_m": str(dc), "lambda_e6": str(lam * 1e6),
                      "psi": psi, "n_min": nmin, "n_max": nmax,
                      "node": f"g{j}"})
    nodes += [
        {"id": "s3_1", "level": 3,
         "parents": [f"g{j}" for j in range(1, 5)], "structure": "parallel"},
        {"id": "s3_2", "level": 3,
         "parents": [f"g{j}" for j in range(5, 9)], "structure": "parallel"},
        {"id": "s3_3", "level": 3,
         "parents": [f"g{j}" for j in range(9, 13)], "structure": "parallel"},
        {"id": "s3_4", "level": 3,
         "parents": [f"g{j}" for j in range(13, 17)], "structure": "parallel"},
        {"id": "s4_1", "level": 4,
         "parents": ["s3_1", "s3_2"], "structure": "parallel"},
        {"id": "s4_2", "level": 4,
         "parents": ["s3_3", "s3_4"], "structure": "parallel"},
        {"id": "s5_1", "level": 5,
         "parents": ["s4_1", "s4_2"], "structure": "parallel"},
    ]
    doc = {
        "levels": 5,
        "components": comps,
        "nodes": nodes,
        "design": {
            "units": units,
            "budgets": {"mass_kg": "15", "power_w": "150", "cost_m": "40",
                        "reliability": "0.9"},
            "mission_time_h": "35040",
            "demand": "1",
            "baseline": CASE2_BASELINE,
        },
    }
    write(name, doc)


def units4():
    """Small four-unit design with a 256-point bound box."""
    comps, nodes, units = [], [], []
    costs = [1.0, 2.0, 3.0, 4.0]
    lams = [30000.0, 22000.0, 18000.0, 26000.0]  # large rates: F(t) matters
    for j in range(1, 5):
        cid = f"u{j}_1"
        comps.append({"id": cid, "lambda_e6": str(lams[j - 1])})
        nodes.append({"id": f"g{j}", "level": 2, "parents": [cid],
                      "structure": "parallel"})
        units.append({"id": f"U{j}", "mass_kg": "0.5", "power_w": "2",
                      "cost_m": str(costs[j - 1]), "lambda_e6": str(lams[j - 1]),
                      "psi": "parallel", "n_min": 1, "n_max": 4, "node": f"g{j}"})
    nodes.append({"id": "top", "level": 3,
                  "parents": ["g1", "g2", "g3", "g4"], "structure": "series"})
    doc = {
        "levels": 3,
        "components": comps,
        "nodes": nodes,
        "design": {
            "units": units,
            "budgets": {"mass_kg": "10", "power_w": "40", "cost_m": "20",
                        "reliability": "0.5"},
            "mission_time_h": "10",
            "demand": "1",
        },
    }
    write("units4.model.json", doc)


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    fig1()
    table2_broken()
    case1()
    bench()
    case2("case2.model.json")
    units4()
