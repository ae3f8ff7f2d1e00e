"""Laurent-monomial model of the period group Y of Mumford's construction and the
combinatorics of the degenerate fibers of the subelliptic families.

Monomials in T1, T2, T3 are integer exponent vectors; everything here is exact.
"""
from __future__ import annotations

import enum
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

Exponents = tuple[int, int, int]


@dataclass(frozen=True)
class Monomial:
    exps: Exponents = (0, 0, 0)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(tuple(x + y for x, y in zip(self.exps, other.exps)))

    def __pow__(self, k: int) -> Monomial:
        return Monomial(tuple(k * x for x in self.exps))

    def inverse(self) -> Monomial:
        return self ** -1

    def is_one(self) -> bool:
        return self.exps == (0, 0, 0)

    def __str__(self) -> str:
        parts = [f"T{i + 1}^{x}" if x != 1 else f"T{i + 1}" for i, x in enumerate(self.exps) if x]
        return "*".join(parts) or "1"


ONE = Monomial()
T1, T2, T3 = Monomial((1, 0, 0)), Monomial((0, 1, 0)), Monomial((0, 0, 1))


@dataclass(frozen=True)
class MonomialTriple:
    """Multipliers of the coordinates (U, V, W)."""

    u: Monomial
    v: Monomial
    w: Monomial

    def __mul__(self, other: MonomialTriple) -> MonomialTriple:
        return MonomialTriple(self.u * other.u, self.v * other.v, self.w * other.w)

    def preserves_uvw(self) -> bool:
        return (self.u * self.v * self.w).is_one()

    def __iter__(self):
        return iter((self.u, self.v, self.w))


# generator triples r, s, t acting on (U, V, W)
R_TRIPLE = MonomialTriple(T2 * T3, T3.inverse(), T2.inverse())
S_TRIPLE = MonomialTriple(T3.inverse(), T1 * T3, T1.inverse())
T_TRIPLE = MonomialTriple(T2.inverse(), T1.inverse(), T1 * T2)


@dataclass(frozen=True)
class YElement:
    """alpha*r + beta*s in Y = Z^3 / Z(1,1,1), written additively."""

    alpha: int
    beta: int

    def __add__(self, other: YElement) -> YElement:
        return YElement(self.alpha + other.alpha, self.beta + other.beta)

    def __neg__(self) -> YElement:
        return YElement(-self.alpha, -self.beta)

    def __mul__(self, k: int) -> YElement:
        return YElement(k * self.alpha, k * self.beta)

    __rmul__ = __mul__


R = YElement(1, 0)
S = YElement(0, 1)
T = YElement(-1, -1)  # r + s + t = 0


def y_action_on_coordinate(y: YElement, coord: str) -> Monomial:
    """Multiplier S_y(X)/X for X in {U, V, W}.

    U and W follow S_{ar+bs}(U) = T2^-a T3^(b-a) U and S_{ar+bs}(W) = T2^-a T1^-b W;
    V is forced by invariance of UVW.
    """
    a, b = y.alpha, y.beta
    u = T2 ** -a * T3 ** (b - a)
    w = T2 ** -a * T1 ** -b
    if coord == "U":
        return u
    if coord == "W":
        return w
    if coord == "V":
        return (u * w).inverse()
    raise ValueError(f"unknown coordinate {coord!r}")


def y_action(y: YElement) -> MonomialTriple:
    return MonomialTriple(*(y_action_on_coordinate(y, c) for c in "UVW"))


def componentwise_triple(y: YElement) -> MonomialTriple:
    """r^alpha s^beta as a product of the generator triples (multiplication convention)."""
    out = MonomialTriple(ONE, ONE, ONE)
    for gen, k in ((R_TRIPLE, y.alpha), (S_TRIPLE, y.beta)):
        out = out * MonomialTriple(gen.u ** k, gen.v ** k, gen.w ** k)
    return out


@dataclass
class VerificationReport:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def verify_group_law(samples: int, seed: int, bound: int = 50) -> VerificationReport:
    rst = R_TRIPLE * S_TRIPLE * T_TRIPLE
    rst_ok = all(x.is_one() for x in rst)
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        y1 = YElement(rng.randint(-bound, bound), rng.randint(-bound, bound))
        y2 = YElement(rng.randint(-bound, bound), rng.randint(-bound, bound))
        if y_action(y1 + y2) != y_action(y1) * y_action(y2) or not y_action(y1).preserves_uvw():
            failures.append((y1, y2))
    return VerificationReport(
        "group_law",
        rst_ok and not failures,
        {"rst": [m.exps for m in rst], "rst_identity": rst_ok, "samples": samples, "failures": len(failures)},
    )


@dataclass(frozen=True)
class LocusRelation:
    """Multiplicative relation prod X_i^(k_i) = 1 among named coordinates."""

    exponents: tuple[int, ...]
    variables: tuple[str, ...] = ("T1", "T2", "T3")

    def __post_init__(self):
        if not any(self.exponents):
            raise ValueError("relation exponent vector must be nonzero")
        if len(self.exponents) != len(self.variables):
            raise ValueError("exponents and variables differ in length")

    def contains_multiple(self, exps) -> bool:
        """Whether ``exps`` is an integer multiple of the relation, i.e. the
        monomial is identically 1 on the locus."""
        exps = tuple(exps)
        pivot = next(i for i, x in enumerate(self.exponents) if x)
        k, r = divmod(exps[pivot], self.exponents[pivot])
        if r:
            return False
        return all(x == k * y for x, y in zip(exps, self.exponents))

    def holds_at(self, point, tol: float = 1e-9) -> bool:
        val = 1
        for x, k in zip(point, self.exponents):
            val *= complex(x) ** k
        return abs(val - 1) < tol

    def __str__(self) -> str:
        lhs = "*".join(f"{v}^{k}" for v, k in zip(self.variables, self.exponents) if k)
        return f"{lhs} = 1"


INFINITY = "inf"
FamilyId = Union[tuple[int, int], str]


def check_family(m: int, family: FamilyId) -> None:
    if m < 2:
        raise ValueError("m must be at least 2")
    if family == INFINITY:
        return
    c, e = family
    if not (0 <= c <= m and 0 <= e <= m):
        raise ValueError(f"need 0 <= c, e <= m, got {(c, e)}")
    if math.gcd(m, c, e) != 1:
        raise ValueError(f"gcd(m, c, e) = gcd({m}, {c}, {e}) != 1")


def family_locus(m: int, family: FamilyId) -> LocusRelation:
    """Torus relation cut out on O_i: T2^c = T3^(m-c), resp. T1 = T2^(m-1)."""
    if family == INFINITY:
        return LocusRelation((1, -(m - 1), 0))
    c, _ = family
    return LocusRelation((0, c, -(m - c)))


def family_generator(m: int, family: FamilyId) -> YElement:
    """Generator of Y_c = <r^c s^m>, resp. Y_inf = <r^-(m-1) s>."""
    if family == INFINITY:
        return YElement(-(m - 1), 1)
    return YElement(family[0], m)


def defining_coordinate(family: FamilyId) -> str:
    """Coordinate set to 1 in the ideal: U for (c, e), W for infinity."""
    return "W" if family == INFINITY else "U"


def verify_ideal_invariance(m: int, family: FamilyId, generator: YElement | None = None) -> VerificationReport:
    check_family(m, family)
    gen = family_generator(m, family) if generator is None else generator
    coord = defining_coordinate(family)
    mult = y_action_on_coordinate(gen, coord)
    locus = family_locus(m, family)
    ok = locus.contains_multiple(mult.exps)
    return VerificationReport(
        "ideal_invariance",
        ok,
        {
            "m": m,
            "family": family,
            "generator": (gen.alpha, gen.beta),
            "coordinate": coord,
            "multiplier": str(mult),
            "locus": str(locus),
        },
    )


def ideal_stabilizer(m: int, family: FamilyId) -> YElement | None:
    """Generator of {y in Y : the multiplier of the defining coordinate is 1 on the locus}.

    The multiplier is linear in (alpha, beta), so this solves alpha*A + beta*B = k*R over Q
    and clears denominators.  Returns None when only y = 0 qualifies.
    """
    check_family(m, family)
    coord = defining_coordinate(family)
    A = y_action_on_coordinate(R, coord).exps
    B = y_action_on_coordinate(S, coord).exps
    rel = family_locus(m, family).exponents
    sol = None
    for i, j in ((0, 1), (0, 2), (1, 2)):
        det = A[i] * B[j] - A[j] * B[i]
        if det:
            alpha = Fraction(rel[i] * B[j] - rel[j] * B[i], det)
            beta = Fraction(A[i] * rel[j] - A[j] * rel[i], det)
            sol = (alpha, beta)
            break
    if sol is None or any(sol[0] * a + sol[1] * b != r for a, b, r in zip(A, B, rel)):
        return None
    scale = math.lcm(sol[0].denominator, sol[1].denominator)
    alpha, beta = int(sol[0] * scale), int(sol[1] * scale)
    if beta < 0 or (beta == 0 and alpha < 0):
        alpha, beta = -alpha, -beta
    return YElement(alpha, beta)


class StratumId(enum.Enum):
    I = "I"
    II = "II"
    III = "III"


SURFACE_TYPES = {
    StratumId.I: "P1BundleOverElliptic",
    StratumId.II: "P1xP1",
    StratumId.III: "TwoP2PlusBlowup",
}


def chain_shift(m: int, stratum: StratumId) -> int:
    """Translation along the Z-chain of components induced by the acting generator."""
    if stratum is StratumId.I:
        return m  # s sends Z_k into Z_(k+1), generator r^c s^m
    if stratum is StratumId.II:
        return m - 1  # r^-(m-1) s sends Z_(k,0) to Z_(k-(m-1),1)
    return 2 * m - 1


@dataclass
class DualGraph:
    vertices: list[str]
    edges: list[tuple[str, str]]
    surface_type: str
    m: int | None = None
    stratum: str | None = None

    def cycle_length(self) -> int | None:
        """Length n when the graph is an n-gon (1-gon: one vertex with a self-loop)."""
        nv, ne = len(self.vertices), len(self.edges)
        if nv == 0 or nv != ne:
            return None
        degree = {v: 0 for v in self.vertices}
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for x, y in self.edges:
            degree[x] += 1
            degree[y] += 1
            adj[x].append(y)
            adj[y].append(x)
        if any(d != 2 for d in degree.values()):
            return None
        seen, stack = set(), [self.vertices[0]]
        while stack:
            v = stack.pop()
            if v not in seen:
                seen.add(v)
                stack.extend(adj[v])
        return nv if len(seen) == nv else None

    def arithmetic_genus(self) -> int:
        """h^1 of the dual graph, which is the arithmetic genus of a cycle of rational curves."""
        return len(self.edges) - len(self.vertices) + 1

    def canonical(self) -> DualGraph:
        def key(label):
            return int(label[1:]) if label[1:].isdigit() else label

        edges = sorted((tuple(sorted(e, key=key)) for e in self.edges), key=lambda e: (key(e[0]), key(e[1])))
        return DualGraph(sorted(self.vertices, key=key), edges, self.surface_type, self.m, self.stratum)

    def to_dot(self) -> str:
        g = self.canonical()
        lines = ["graph fiber {", f'  surface="{g.surface_type}";']
        lines += [f"  {v};" for v in g.vertices]
        lines += [f"  {x} -- {y};" for x, y in g.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        g = self.canonical()
        return {
            "m": g.m,
            "stratum": g.stratum,
            "surface_type": g.surface_type,
            "vertices": g.vertices,
            "edges": [list(e) for e in g.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def degenerate_fiber(m: int, stratum: StratumId | str) -> DualGraph:
    """Dual graph of the degenerate subelliptic curve over a point of the given stratum.

    Components Z_k (k in Z) meet Z_(k+1); the acting generator shifts k by ``chain_shift``,
    so the quotient is a cycle on the residues k mod shift.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    stratum = StratumId(stratum)
    n = chain_shift(m, stratum)
    vertices = [f"Z{k}" for k in range(n)]
    edges = [(f"Z{k}", f"Z{(k + 1) % n}") for k in range(n)]
    return DualGraph(vertices, edges, SURFACE_TYPES[stratum], m, stratum.value)


class WindowTooSmall(ValueError):
    pass


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def quotient_cycle_oracle(chain_length_window: int, shift: int) -> DualGraph:
    """Quotient of the chain 0 - 1 - ... - (window-1) by k ~ k + shift, via union-find
    on vertices and on edges separately."""
    if shift < 1:
        raise ValueError("shift must be positive")
    if chain_length_window < 3 * shift:
        raise WindowTooSmall(f"window {chain_length_window} < 3 * shift = {3 * shift}")
    verts, edges = _UnionFind(), _UnionFind()
    for k in range(chain_length_window):
        verts.find(k)
        if k + shift < chain_length_window:
            verts.union(k, k + shift)
    for k in range(chain_length_window - 1):
        edges.find(k)
        if k + shift < chain_length_window - 1:
            edges.union(k, k + shift)
    vertex_reps = sorted({verts.find(k) for k in range(chain_length_window)})
    edge_reps = sorted({edges.find(k) for k in range(chain_length_window - 1)})
    graph_edges = [(f"Z{verts.find(k)}", f"Z{verts.find(k + 1)}") for k in edge_reps]
    return DualGraph([f"Z{v}" for v in vertex_reps], graph_edges, "unspecified")


def classify_fiber(m: int, stratum: StratumId | str) -> dict:
    """The (surface, curve) pair over a boundary point of the stratum."""
    stratum = StratumId(stratum)
    n = degenerate_fiber(m, stratum).cycle_length()
    curve = "nodal curve" if n == 1 else f"{n}-gon of P1's"
    return {"m": m, "stratum": stratum.value, "surface_type": SURFACE_TYPES[stratum], "curve": curve, "polygon": n}


def stratum_of_point(family: FamilyId, point, tol: float = 0.0) -> StratumId | None:
    """Boundary stratum of a base point T = (T1, T2, T3) of X_i; None inside the torus."""
    zero = [abs(complex(x)) <= tol for x in point]
    if not any(zero):
        return None
    if family != INFINITY:
        if zero == [True, False, False]:
            return StratumId.I
        raise ValueError(f"{point} is not a boundary point of a finite family")
    if zero == [True, True, False]:
        return StratumId.II
    if all(zero):
        return StratumId.III
    raise ValueError(f"{point} is not a boundary point of the infinity family")
