"""Racks, quandles and rack colorings of braid closures.

Concrete racks: the cyclic racks C_k, the dihedral quandle ``a*b = 2b - a``
over Z or Z/m, and the product rack Z^n_R whose operation folds the dihedral
operation through every coordinate of the right operand,

    (x *_R y)_i = (((x_i * y_1) * y_2) ... ) * y_n.

The finite analogs (Z/m)^n_R satisfy the same identities and make the orbit
statements checkable by exhaustion.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .braid import BraidWord, Diagram, cable, close_braid
from .coloring import Coloring, coloring_from_seed
from .errors import (
    CarrierTooLarge,
    ComponentCountNotOne,
    InvalidColoring,
    LengthMismatch,
    RackSpecError,
)
from .linalg import IntMatrix, kernel_basis

Element = Hashable


@dataclass(frozen=True)
class RackOps:
    """A rack given by its operation and the right-inverse ``inv``:
    ``op(inv(x, y), y) == x``.  ``elements`` is None for infinite carriers."""
    name: str
    op: Callable[[Element, Element], Element]
    inv: Callable[[Element, Element], Element]
    elements: tuple | None = None

    @property
    def finite(self) -> bool:
        return self.elements is not None

    def __repr__(self):
        return f"RackOps({self.name})"


def cyclic_rack(k: int) -> RackOps:
    """C_k: Z/k with a*b = a+1.  k = 0 gives the infinite cyclic rack on Z."""
    if k < 0:
        raise RackSpecError("cyclic rack order must be >= 0")
    if k == 0:
        return RackOps("cyclic:0", lambda a, b: a + 1, lambda a, b: a - 1)
    return RackOps(f"cyclic:{k}", lambda a, b: (a + 1) % k, lambda a, b: (a - 1) % k,
                   tuple(range(k)))


def dihedral(m: int = 0) -> RackOps:
    """a*b = 2b - a over Z (m = 0) or Z/m; an involutory quandle."""
    if m < 0:
        raise RackSpecError("dihedral modulus must be >= 0")
    if m == 0:
        f = lambda a, b: 2 * b - a
        return RackOps("dihedral:0", f, f)
    f = lambda a, b: (2 * b - a) % m
    return RackOps(f"dihedral:{m}", f, f, tuple(range(m)))


def znr(n: int, mod: int = 0) -> RackOps:
    """The product rack Z^n_R, or (Z/mod)^n_R when mod > 0."""
    if n < 1:
        raise RackSpecError("Z^n_R needs n >= 1")

    def reduce(v):
        return v % mod if mod else v

    def op(x, y):
        out = []
        for xi in x:
            for yj in y:
                xi = 2 * yj - xi
            out.append(reduce(xi))
        return tuple(out)

    def inv(x, y):
        out = []
        for xi in x:
            for yj in reversed(y):
                xi = 2 * yj - xi
            out.append(reduce(xi))
        return tuple(out)

    elements = tuple(itertools.product(range(mod), repeat=n)) if mod else None
    return RackOps(f"znr:{n}" + (f":{mod}" if mod else ""), op, inv, elements)


def parse_rack(spec: str) -> RackOps:
    """``cyclic:k`` | ``dihedral:m`` | ``znr:n[:mod]``."""
    m = re.fullmatch(r"\s*(cyclic|dihedral|znr):(\d+)(?::(\d+))?\s*", spec)
    if not m:
        raise RackSpecError(f"bad rack spec {spec!r}; expected cyclic:k, dihedral:m or znr:n[:mod]")
    kind, a, b = m.group(1), int(m.group(2)), m.group(3)
    if kind == "znr":
        return znr(a, int(b) if b else 0)
    if b is not None:
        raise RackSpecError(f"{kind} takes a single parameter")
    return cyclic_rack(a) if kind == "cyclic" else dihedral(a)


def verify_rack_axioms(R: RackOps, sample: Iterable[tuple] | None = None) -> bool:
    """Self-distributivity and both inverse laws on ``sample`` (all triples if None)."""
    if sample is None:
        if not R.finite:
            raise ValueError("an infinite rack needs an explicit sample")
        sample = itertools.product(R.elements, repeat=3)
    seen = False
    for x, y, z in sample:
        seen = True
        if R.op(R.op(x, y), z) != R.op(R.op(x, z), R.op(y, z)):
            return False
        if R.op(R.inv(x, y), y) != x or R.inv(R.op(x, y), y) != x:
            return False
    if not seen:
        raise ValueError("empty sample")
    return True


def is_quandle(R: RackOps, sample: Iterable | None = None) -> bool:
    xs = R.elements if sample is None else sample
    return all(R.op(x, x) == x for x in xs)


def kink_map(R: RackOps) -> Callable[[Element], Element]:
    return lambda x: R.op(x, x)


def kink_inverse(R: RackOps) -> Callable[[Element], Element]:
    return lambda x: R.inv(x, x)


def associated_quandle(R: RackOps) -> RackOps:
    """x *_Q y = (x inv x) * y; its inverse is x ->  tau(x inv y)."""
    tau = kink_map(R)
    return RackOps(f"Q({R.name})",
                   lambda x, y: R.op(R.inv(x, x), y),
                   lambda x, y: tau(R.inv(x, y)),
                   R.elements)


# Closed forms for Z^n_R -------------------------------------------------------

def _alt_tail(v: Sequence[int]) -> int:
    """v_n - v_{n-1} + v_{n-2} - ... (sign alternates back from the last entry)."""
    n = len(v)
    return sum((-1) ** (n - 1 - k) * x for k, x in enumerate(v))


def znr_quandle_op(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    """Closed form of x *_Q y in the associated quandle of Z^n_R."""
    shift = 2 * (-_alt_tail(x) + _alt_tail(y))
    return tuple(xi + shift for xi in x)


def znr_tau(a: Sequence[int]) -> tuple[int, ...]:
    n = len(a)
    s = 2 * _alt_tail(a)
    return tuple((-1) ** n * ai + s for ai in a)


def znr_tau_power(a: Sequence[int], w: int) -> tuple[int, ...]:
    n = len(a)
    if n % 2 == 0:
        s = 2 * w * _alt_tail(a)
        return tuple(ai + s for ai in a)
    return znr_tau(a) if w % 2 else tuple(a)


def zn_closed_forms(n: int, x: Sequence[int], y: Sequence[int], w: int = 1):
    if len(x) != n or len(y) != n:
        raise LengthMismatch(f"expected {n}-tuples")
    return znr_quandle_op(x, y), znr_tau(x), znr_tau_power(x, w)


def iterate(f: Callable, x, k: int):
    for _ in range(k):
        x = f(x)
    return x


# Orbits and maximal connected subracks ----------------------------------------

@dataclass(frozen=True)
class OrbitDecomposition:
    components: tuple[tuple, ...]
    cyclic: tuple[bool, ...]

    def component_of(self, x) -> tuple:
        for c in self.components:
            if x in c:
                return c
        raise KeyError(x)


def _orbits(block: Sequence, R: RackOps) -> list[list]:
    members = set(block)
    gens = list(block)
    seen: set = set()
    out = []
    for x in block:
        if x in seen:
            continue
        orbit = [x]
        seen.add(x)
        frontier = [x]
        while frontier:
            nxt = []
            for u in frontier:
                for y in gens:
                    for v in (R.op(u, y), R.inv(u, y)):
                        if v not in seen and v in members:
                            seen.add(v)
                            orbit.append(v)
                            nxt.append(v)
            frontier = nxt
        out.append(orbit)
    return out


def maximal_connected_subracks(R: RackOps, cap: int = 4096) -> list[tuple]:
    """Partition a finite rack into its maximal connected subracks.

    Start from the Inn(R)-orbits and repeatedly split each block into the
    orbits of the inner maps of that block alone, until every block is
    transitive under its own inner maps.  Any connected subrack stays inside
    one block throughout, so the fixed point is the maximal decomposition.
    """
    if not R.finite:
        raise CarrierTooLarge("orbit computation needs a finite carrier")
    if len(R.elements) > cap:
        raise CarrierTooLarge(f"carrier of size {len(R.elements)} exceeds cap {cap}")
    blocks = [list(R.elements)]
    while True:
        refined = []
        changed = False
        for b in blocks:
            parts = _orbits(b, R)
            changed |= len(parts) > 1
            refined.extend(parts)
        blocks = refined
        if not changed:
            break
    return sorted((tuple(sorted(b)) for b in blocks), key=lambda c: c[0])


def is_cyclic_subrack(R: RackOps, comp: Sequence) -> bool:
    """a*b is independent of b within comp, and a -> a*a is one cycle on comp."""
    members = set(comp)
    for a in comp:
        succ = R.op(a, a)
        if succ not in members or any(R.op(a, b) != succ for b in comp):
            return False
    x, length = comp[0], 0
    while True:
        x = R.op(x, x)
        length += 1
        if x == comp[0]:
            break
    return length == len(comp)


def inner_orbits(R: RackOps, cap: int = 4096) -> OrbitDecomposition:
    comps = maximal_connected_subracks(R, cap)
    return OrbitDecomposition(tuple(comps), tuple(is_cyclic_subrack(R, c) for c in comps))


def verify_maxlem(R: RackOps, cap: int = 4096) -> bool:
    return all(inner_orbits(R, cap).cyclic)


def verify_tau_lemma(R: RackOps, cap: int = 4096) -> bool:
    """M_x equals the union of tau^m(M^Q_x) over m, for every x."""
    rack_comps = maximal_connected_subracks(R, cap)
    Q = associated_quandle(R)
    quandle_comps = maximal_connected_subracks(Q, cap)
    tau = kink_map(R)
    by_elem_q = {x: c for c in quandle_comps for x in c}
    for comp in rack_comps:
        for x in comp:
            start = frozenset(by_elem_q[x])
            union = set(start)
            image = start
            while True:
                image = frozenset(tau(y) for y in image)
                if image == start:
                    break
                union |= image
            if union != set(comp):
                return False
    return True


# Rack colorings of braid closures ---------------------------------------------

def rack_propagate(R: RackOps, w: BraidWord, left: Sequence) -> tuple:
    """Under color x beneath over color y becomes x*y at a positive crossing and
    x inv y at a negative one."""
    if len(left) != w.strands:
        raise LengthMismatch(f"{len(left)} colors for {w.strands} strands")
    vals = list(left)
    for g in w.letters:
        i = abs(g) - 1
        top, bot = vals[i], vals[i + 1]
        if g > 0:
            vals[i], vals[i + 1] = R.op(bot, top), top
        else:
            vals[i], vals[i + 1] = bot, R.inv(top, bot)
    return tuple(vals)


def rack_colorings_of_closure(R: RackOps, w: BraidWord, cap: int = 10 ** 6) -> list[tuple]:
    """Every left-end seed (carrier^b) fixed by propagation, in lexicographic order."""
    if not R.finite:
        raise CarrierTooLarge("enumeration needs a finite carrier")
    if len(R.elements) ** w.strands > cap:
        raise CarrierTooLarge(f"{len(R.elements)}^{w.strands} seeds exceed cap {cap}")
    return [s for s in itertools.product(R.elements, repeat=w.strands)
            if rack_propagate(R, w, s) == s]


def rack_coloring_from_seed(R: RackOps, d: Diagram, left: Sequence) -> dict:
    """Arc -> rack element for a seed that closes up; validated at every crossing."""
    left = tuple(left)
    if rack_propagate(R, d.word, left) != left:
        raise InvalidColoring(f"seed {left} does not close up")
    colors: dict = {arc: v for arc, v in zip(d.left_ends, left)}
    for x in d.crossings:
        f = R.op if x.sign > 0 else R.inv
        colors[x.under_out] = f(colors[x.under_in], colors[x.over])
    for x in d.crossings:
        f = R.op if x.sign > 0 else R.inv
        if colors[x.under_out] != f(colors[x.under_in], colors[x.over]):
            raise InvalidColoring("rack relation fails")
    return colors


def _linear_map_matrix(f: Callable[[tuple], tuple], dim: int) -> IntMatrix:
    cols = [f(tuple(int(i == j) for i in range(dim))) for j in range(dim)]
    return IntMatrix.from_rows([[cols[j][i] for j in range(dim)] for i in range(dim)], dim)


def znr_seed_lattice(w: BraidWord, n: int) -> list[tuple[int, ...]]:
    """Basis of closing Z^n_R seeds of w's closure, flattened to length n*b.

    Z^n_R propagation is linear in the seed, so the closing seeds are the
    kernel of (propagation matrix - identity).
    """
    R = znr(n)

    def run(flat):
        seed = [tuple(flat[k * n:(k + 1) * n]) for k in range(w.strands)]
        return tuple(v for t in rack_propagate(R, w, seed) for v in t)

    dim = n * w.strands
    P = _linear_map_matrix(run, dim)
    A = IntMatrix.from_rows(
        [[P[i, j] - int(i == j) for j in range(dim)] for i in range(dim)], dim)
    return kernel_basis(A)


# A Z^n_R tuple (C_1, ..., C_n) sits on a band with C_1 on the bottom strand:
# at a positive band crossing each under strand meets the over band bottom-up,
# which is the fold order of *_R.

def tuple_to_band(t: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(t))


def band_to_tuple(colors: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(colors))


@dataclass(frozen=True)
class ParallelBijection:
    """Col_{Z^n_R}(D) <-> Col_Z(D^(n)) for a knot diagram D given as a closed braid."""
    source: Diagram
    n: int
    parallel: Diagram

    def forward(self, rack_seed: Sequence[Sequence[int]]) -> Coloring:
        """Z^n_R seed on D's left ends -> Z-coloring of D^(n), completed by propagation."""
        if len(rack_seed) != self.source.strands:
            raise LengthMismatch("one tuple per strand of D is required")
        z_seed = tuple(v for t in rack_seed for v in tuple_to_band(t))
        return coloring_from_seed(self.parallel, z_seed)

    def backward(self, c: Coloring) -> tuple[tuple[int, ...], ...]:
        """Z-coloring of D^(n) -> Z^n_R seed on D's left ends."""
        z_seed = [c[a] for a in self.parallel.left_ends]
        n = self.n
        seed = tuple(band_to_tuple(z_seed[k * n:(k + 1) * n]) for k in range(self.source.strands))
        # every arc of D gets a well-defined Z^n_R color
        rack_coloring_from_seed(znr(n), self.source, seed)
        return seed

    def rack_coloring(self, rack_seed) -> dict:
        return rack_coloring_from_seed(znr(self.n), self.source, rack_seed)


def product_coloring_bijection(d: Diagram, n: int) -> ParallelBijection:
    if len(d.component_arcs) != 1:
        raise ComponentCountNotOne(f"diagram has {len(d.component_arcs)} components")
    return ParallelBijection(d, n, close_braid(cable(d.word, n).cabled))
