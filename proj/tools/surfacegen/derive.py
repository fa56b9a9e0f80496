"""Derive spine twist tables and homology data from the polygon models."""

from polygon import (PositionSource, algebraic_intersection, free_reduce,
                     geometric_count, inverse, realize_path, twist_word)


class Spine:
    def __init__(self, model):
        self.model = model
        self.coord = {v: c for v, _, c in model.basepoints}
        self.root = model.basepoints[0][0]
        self.tree = {}  # vertex -> tree edge from root
        for name, src, dst, cw in model.edges:
            if src != dst:
                assert src == self.root and not cw
                self.tree[dst] = name

    def to_root(self, vertex):
        """Spine word from vertex to the root (inverse tree edge)."""
        if vertex == self.root:
            return []
        return [(self.tree[vertex], -1)]

    def from_root(self, vertex):
        if vertex == self.root:
            return []
        return [(self.tree[vertex], 1)]

    def convert(self, crossing_word, src, dst):
        out = list(self.to_root(src))
        for name, sign in crossing_word:
            w = self.model.arc_words[name]
            out.extend(w if sign > 0 else inverse(w))
        out.extend(self.from_root(dst))
        return free_reduce(out)

    def crossing_of(self, spine_word):
        """Crossing word of a spine word (inverse of convert)."""
        table = {name: cw for name, _, _, cw in self.model.edges}
        out = []
        for name, sign in spine_word:
            out.extend(table[name] if sign > 0 else inverse(table[name]))
        return free_reduce(out)


def twist_table(model, spine, curve, power, seed):
    positions = PositionSource(seed)
    table = {}
    for name, src, dst, cw in model.edges:
        path = realize_path(model.poly, spine.coord[src], cw, spine.coord[dst], positions)
        table[name] = spine.convert(twist_word(model.poly, curve, path, power), src, dst)
    return table


def abelianize(model, spine_word):
    idx = {n: i for i, n in enumerate(model.homology_basis)}
    v = [0] * len(idx)
    for name, sign in spine_word:
        if name in idx:
            v[idx[name]] += sign
    return v


def curve_loop_word(model, spine, chain):
    """Spine loop at the root freely homotopic to a closed curve."""
    return spine.convert(chain.letters, spine.root, spine.root)


def basis_loops(model, spine):
    """Closed chains realizing the homology basis classes."""
    loops = []
    positions = PositionSource(0.123)
    edges = {name: (src, dst, cw) for name, src, dst, cw in model.edges}
    for k, name in enumerate(model.homology_basis):
        src, dst, cw = edges[name]
        assert src == dst
        # a loop based on a boundary side; shift the basepoint so that distinct
        # loops never share an endpoint
        start = spine.coord[src] + 0.01 * (k + 1) - 0.02
        path = realize_path(model.poly, start, cw, start, positions)
        loops.append(path)
    return loops


def intersection_form(model, spine):
    loops = basis_loops(model, spine)
    r = len(loops)
    return [[algebraic_intersection(model.poly, loops[i], loops[j]) if i != j else 0
             for j in range(r)] for i in range(r)]


def derive(model):
    spine = Spine(model)
    for name, src, dst, cw in model.edges:
        assert spine.convert(cw, src, dst) == [(name, 1)], name
    for arc, w in model.arc_words.items():
        assert spine.crossing_of(w) == [(arc, 1)], arc
    out = {"spine": spine, "curves": {}}
    for cname, is_boundary, chain in model.curves:
        tables = []
        for power in (1, -1):
            t1 = twist_table(model, spine, chain, power, 0.31)
            t2 = twist_table(model, spine, chain, power, 0.77)
            assert t1 == t2, (cname, power)
            tables.append(t1)
        loop = curve_loop_word(model, spine, chain)
        out["curves"][cname] = {
            "is_boundary": is_boundary,
            "twist": tables[0],
            "twist_inverse": tables[1],
            "homology": abelianize(model, loop),
        }
    names = [c[0] for c in model.curves]
    chains = {c[0]: c[2] for c in model.curves}
    geo = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            geo[(a, b)] = geometric_count(model.poly, chains[a], chains[b])
    for (a, b), v in model.intersections.items():
        key = (a, b) if (a, b) in geo else (b, a)
        assert geo[key] == v, (a, b, geo[key], v)
    out["geometric"] = geo
    out["form"] = intersection_form(model, spine)
    return out


def peripheral_word(model, spine, vertex):
    """Boundary loop at a basepoint, traversed with the induced orientation."""
    label = next(b for v, b, _ in model.basepoints if v == vertex)
    coord = spine.coord[vertex]
    cycle = dict(model.poly.boundary_cycles())[label]
    start = cycle.index(int(coord))
    letters = []
    for i in range(len(cycle)):
        seg = cycle[(start + i) % len(cycle)]
        letters.append(model.poly.exit_letter((seg + 1) % model.poly.n))
    return spine.convert(letters, vertex, vertex)
