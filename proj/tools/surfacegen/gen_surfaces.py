#!/usr/bin/env python3
"""Regenerate data/surfaces/*.json from the polygon models.

Usage: gen_surfaces.py [output directory]
"""

import json
import os
import sys

import derive
import models


def fmt(word):
    return " ".join(n + ("'" if s < 0 else "") for n, s in word)


def emit(model):
    d = derive.derive(model)
    spine = d["spine"]
    geo = d["geometric"]
    curves = []
    for name, data in d["curves"].items():
        inter = {}
        for (a, b), v in geo.items():
            if a == name:
                inter[b] = v
            elif b == name:
                inter[a] = v
        curves.append({
            "name": name,
            "is_boundary": data["is_boundary"],
            "homology": data["homology"],
            "twist": {e: fmt(w) for e, w in data["twist"].items()},
            "twist_inverse": {e: fmt(w) for e, w in data["twist_inverse"].items()},
            "intersections": inter,
        })
    boundary_count = len(model.basepoints)
    return {
        "name": model.name,
        "genus": model.genus,
        "boundary_count": boundary_count,
        "vertices": [v for v, _, _ in model.basepoints],
        "edges": [{"name": n, "from": s, "to": t} for n, s, t, _ in model.edges],
        "peripheral": [{"basepoint": v, "word": fmt(derive.peripheral_word(model, spine, v))}
                       for v, _, _ in model.basepoints],
        "homology_basis": model.homology_basis,
        "intersection_form": d["form"],
        "curves": curves,
    }


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "..", "..", "data", "surfaces")
    os.makedirs(out, exist_ok=True)
    for make in models.ALL:
        model = make()
        doc = emit(model)
        path = os.path.join(out, model.name + ".json")
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        print(path)


if __name__ == "__main__":
    main()
