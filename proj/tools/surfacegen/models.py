"""Builtin surface models: polygons, spines and curves.

Each model fixes
  * the cut polygon (cyclic list of sides),
  * one basepoint per boundary component, on a chosen boundary side,
  * the spine edges, each realized as a crossing word between basepoints
    (tree edges have empty crossing words and run from p1),
  * how every arc crossing letter is written as a loop at p1 in spine edges,
  * the named curves as chord systems.
"""

from polygon import Polygon, boundary_curve, curve_from_chords, dual_curve


def word(text):
    out = []
    for tok in text.split():
        if tok.endswith("'"):
            out.append((tok[:-1], -1))
        else:
            out.append((tok, 1))
    return out


# The sides are read counter-clockwise off the cut-open drawing; the twists
# that satisfy the monodromy relation in the printed order are right-handed for
# the opposite orientation.
ORIENTATION = -1


class Model:
    def __init__(self, name, genus, sides, basepoints, edges, arc_words, curves,
                 peripheral_loops, homology_basis, intersections):
        self.name = name
        self.genus = genus
        self.poly = Polygon(sides, orientation=ORIENTATION)
        self.basepoints = basepoints  # [(vertex name, boundary label, coord)]
        self.edges = edges  # [(name, from, to, crossing word)]
        self.arc_words = {k: word(v) for k, v in arc_words.items()}
        self.curves = curves  # [(name, is_boundary, Chain)]
        self.peripheral_loops = peripheral_loops  # vertex -> crossing word
        self.homology_basis = homology_basis
        self.intersections = intersections  # expected geometric numbers


def s13():
    sides = ["b1", "a:r", "b3", "a:g", "b1", "a:b", "b2", "a:p",
             "b3", "a:r", "b1", "a:g", "b3", "a:p", "b2", "a:b"]
    poly = Polygon(sides, orientation=ORIENTATION)
    cycles = dict(poly.boundary_cycles())
    curves = [
        ("r", False, dual_curve(poly, "r", 0.5)),
        ("g", False, dual_curve(poly, "g", 0.5)),
        ("b", False, dual_curve(poly, "b", 0.5)),
        ("p", False, dual_curve(poly, "p", 0.5)),
        # band sum of r and g resolving their crossing: meets g once,
        # misses b and p
        ("y", False, curve_from_chords(poly, [((1, 0.3), (3, 0.35)),
                                              ((11, 0.65), (9, 0.7))])),
        ("b1", True, boundary_curve(poly, cycles["b1"])),
        ("b2", True, boundary_curve(poly, cycles["b2"])),
        ("b3", True, boundary_curve(poly, cycles["b3"])),
    ]
    return Model(
        name="S_1_3", genus=1, sides=sides,
        basepoints=[("p1", "b1", 0.5), ("p2", "b2", 6.5), ("p3", "b3", 2.5)],
        edges=[("x", "p1", "p1", word("r")),
               ("y", "p1", "p1", word("b")),
               ("t2", "p1", "p2", []),
               ("t3", "p1", "p3", []),
               ("d2", "p2", "p2", word("p b'")),
               ("d3", "p3", "p3", word("g p' r'"))],
        arc_words={"r": "x", "b": "y", "p": "t2 d2 t2' y",
                   "g": "t3 d3 t3' x t2 d2 t2' y"},
        curves=curves,
        peripheral_loops={},
        homology_basis=["x", "y", "d2", "d3"],
        intersections={("r", "g"): 1, ("r", "b"): 1, ("r", "p"): 1,
                       ("g", "b"): 1, ("g", "p"): 1, ("b", "p"): 0,
                       ("y", "g"): 1, ("y", "b"): 0, ("y", "p"): 0,
                       ("y", "r"): 1},
    )


def s11():
    sides = ["d", "a:A", "d", "a:B", "d", "a:A", "d", "a:B"]
    poly = Polygon(sides, orientation=ORIENTATION)
    cycles = dict(poly.boundary_cycles())
    curves = [
        ("a", False, dual_curve(poly, "A", 0.5)),
        ("b", False, dual_curve(poly, "B", 0.5)),
        ("d", True, boundary_curve(poly, cycles["d"])),
    ]
    return Model(
        name="S_1_1", genus=1, sides=sides,
        basepoints=[("p1", "d", 2.5)],
        edges=[("a", "p1", "p1", word("A")),
               ("b", "p1", "p1", word("B"))],
        arc_words={"A": "a", "B": "b"},
        curves=curves,
        peripheral_loops={},
        homology_basis=["a", "b"],
        intersections={("a", "b"): 1},
    )


def s12():
    sides = ["b1", "a:A", "b2", "a:B", "b2", "a:A",
             "b1", "a:C", "b2", "a:B", "b2", "a:C"]
    poly = Polygon(sides, orientation=ORIENTATION)
    cycles = dict(poly.boundary_cycles())
    curves = [
        ("c1", False, dual_curve(poly, "A", 0.5)),
        ("c2", False, dual_curve(poly, "B", 0.5)),
        ("c3", False, dual_curve(poly, "C", 0.5)),
        ("b1", True, boundary_curve(poly, cycles["b1"])),
        ("b2", True, boundary_curve(poly, cycles["b2"])),
    ]
    return Model(
        name="S_1_2", genus=1, sides=sides,
        basepoints=[("p1", "b1", 0.5), ("p2", "b2", 2.5)],
        edges=[("x", "p1", "p1", word("A")),
               ("y", "p1", "p1", word("B")),
               ("t", "p1", "p2", []),
               ("d2", "p2", "p2", word("B C' B' A'"))],
        arc_words={"A": "x", "B": "y", "C": "y' x' t d2' t' y"},
        curves=curves,
        peripheral_loops={},
        homology_basis=["x", "y", "d2"],
        intersections={("c1", "c2"): 1, ("c2", "c3"): 1, ("c1", "c3"): 0},
    )


def annulus():
    sides = ["b1", "a:A", "b2", "a:A"]
    poly = Polygon(sides, orientation=ORIENTATION)
    cycles = dict(poly.boundary_cycles())
    curves = [
        ("core", False, dual_curve(poly, "A", 0.5)),
        ("b1", True, boundary_curve(poly, cycles["b1"])),
        ("b2", True, boundary_curve(poly, cycles["b2"])),
    ]
    return Model(
        name="annulus", genus=0, sides=sides,
        basepoints=[("p1", "b1", 0.5), ("p2", "b2", 2.5)],
        edges=[("c", "p1", "p1", word("A")),
               ("t", "p1", "p2", [])],
        arc_words={"A": "c"},
        curves=curves,
        peripheral_loops={},
        homology_basis=["c"],
        intersections={},
    )


ALL = [s11, s12, s13, annulus]
