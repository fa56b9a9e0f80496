"""Polygon-gluing surface models used to derive the shipped twist tables.

A surface S with boundary is cut along a system of disjoint proper arcs into a
single disk. The disk is drawn as a circle whose perimeter is divided into
sides; every arc contributes two sides, every boundary segment one side.
Points on the perimeter are addressed by a coordinate ``side + t`` with
``0 < t < 1``. Side ``s`` of an arc is glued to its partner ``s'`` by
``(s, t) ~ (s', 1 - t)``, which keeps the glued surface orientable.

Paths and closed curves are sequences of straight chords inside the disk. The
homotopy class (rel endpoints) of a path between points on the perimeter is its
free-reduced sequence of arc crossings, because the cut surface is simply
connected. A Dehn twist about a simple closed curve ``c`` acts on a transverse
path by splicing a copy of ``c`` in at every crossing, turning left, which is
the positive (right-handed) twist for the orientation of the drawing.
"""

import math
from dataclasses import dataclass, field


def free_reduce(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return out


def inverse(word):
    return [(name, -sign) for name, sign in reversed(word)]


@dataclass
class Polygon:
    sides: list  # label per side, arcs and boundary segments
    arcs: dict = field(default_factory=dict)  # label -> (first side, second side)
    # +1: the surface carries the orientation of the drawing (sides listed
    # counter-clockwise); -1: the mirror orientation.
    orientation: int = 1

    def __post_init__(self):
        seen = {}
        for i, label in enumerate(self.sides):
            if label.startswith("a:"):
                seen.setdefault(label[2:], []).append(i)
        for name, where in seen.items():
            assert len(where) == 2, name
            self.arcs[name] = tuple(where)

    @property
    def n(self):
        return len(self.sides)

    def partner(self, side):
        label = self.sides[side]
        first, second = self.arcs[label[2:]]
        return second if side == first else first

    def boundary_cycles(self):
        cycles, seen = [], set()
        for s, label in enumerate(self.sides):
            if label.startswith("a:") or s in seen:
                continue
            cycle, cur = [], s
            while cur not in seen:
                seen.add(cur)
                cycle.append(cur)
                cur = (self.partner((cur + 1) % self.n) + 1) % self.n
            assert cur == s
            labels = {self.sides[c] for c in cycle}
            assert len(labels) == 1, labels
            cycles.append((self.sides[s], cycle))
        return cycles

    def point(self, coord):
        angle = 2.0 * math.pi * coord / self.n
        return (math.cos(angle), math.sin(angle))

    def exit_letter(self, side):
        """Crossing letter for leaving the disk through ``side``."""
        name = self.sides[side][2:]
        first, _ = self.arcs[name]
        return (name, 1 if side == first else -1)

    def exit_side(self, letter):
        name, sign = letter
        first, second = self.arcs[name]
        return first if sign > 0 else second


@dataclass
class Chain:
    """A path (open) or a closed curve as chords plus crossing letters."""

    pieces: list  # (start coord, end coord)
    letters: list  # letters[i] follows pieces[i]
    closed: bool


def in_arc(x, a, b, n):
    """True when x lies strictly inside the counter-clockwise arc a -> b."""
    da = (x - a) % n
    db = (b - a) % n
    return 0 < da < db


def crossing(poly, p, q):
    """Return (sign, lambda) for chords p and q or None when disjoint."""
    u1, u2 = p
    v1, v2 = q
    n = poly.n
    a = in_arc(v1, u1, u2, n)
    b = in_arc(v2, u1, u2, n)
    if a == b:
        return None
    sign = (1 if a else -1) * poly.orientation
    (x1, y1), (x2, y2) = poly.point(u1), poly.point(u2)
    (x3, y3), (x4, y4) = poly.point(v1), poly.point(v2)
    den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    lam = ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / den
    return sign, lam


class PositionSource:
    """Deterministic, pairwise distinct positions inside a side."""

    def __init__(self, seed=0.6180339887):
        self.state = seed

    def next(self):
        self.state = (self.state + 0.6180339887498949) % 1.0
        return 0.05 + 0.9 * self.state


def realize_path(poly, start, word, end, positions):
    pieces, cur = [], start
    for letter in word:
        side = poly.exit_side(letter)
        t = positions.next()
        pieces.append((cur, side + t))
        cur = poly.partner(side) + (1.0 - t)
    pieces.append((cur, end))
    return Chain(pieces, list(word), closed=False)


def curve_from_chords(poly, chords):
    """Closed curve from chords given as ((side, t), (side, t)) in order."""
    pieces, letters = [], []
    for i, ((s0, t0), (s1, t1)) in enumerate(chords):
        pieces.append((s0 + t0, s1 + t1))
        letters.append(poly.exit_letter(s1))
        ns, nt = chords[(i + 1) % len(chords)][0]
        assert ns == poly.partner(s1) and abs(nt - (1 - t1)) < 1e-12, (i, chords)
    return Chain(pieces, letters, closed=True)


def dual_curve(poly, arc, t=0.5):
    first, second = poly.arcs[arc]
    return curve_from_chords(poly, [((second, 1 - t), (first, t))])


def boundary_curve(poly, cycle, eps=0.02):
    chords = []
    for seg in cycle:
        chords.append((((seg - 1) % poly.n, 1 - eps), ((seg + 1) % poly.n, eps)))
    return curve_from_chords(poly, chords)


def rotation(curve, k, forward):
    m = len(curve.letters)
    if forward:
        return [curve.letters[(k + i) % m] for i in range(m)]
    return [(curve.letters[(k - 1 - i) % m][0], -curve.letters[(k - 1 - i) % m][1])
            for i in range(m)]


def twist_word(poly, curve, path, power=1):
    """Crossing word of T_curve^power applied to the path (power = +-1)."""
    word = []
    for i, piece in enumerate(path.pieces):
        hits = []
        for k, q in enumerate(curve.pieces):
            c = crossing(poly, piece, q)
            if c is not None:
                hits.append((c[1], k, c[0]))
        hits.sort()
        for _, k, sign in hits:
            word.extend(rotation(curve, k, sign * power > 0))
        if i < len(path.letters):
            word.append(path.letters[i])
    return free_reduce(word)


def algebraic_intersection(poly, a, b):
    total = 0
    for p in a.pieces:
        for q in b.pieces:
            c = crossing(poly, p, q)
            if c is not None:
                total += c[0]
    return total


def geometric_count(poly, a, b):
    return sum(1 for p in a.pieces for q in b.pieces if crossing(poly, p, q))
