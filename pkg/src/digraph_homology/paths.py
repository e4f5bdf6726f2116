"""Path homology of digraphs over the integers.

Allowed paths, the regular boundary (faces with equal adjacent vertices
vanish), the complex of allowed chains whose boundary stays allowed, and
absolute/relative path homology.  Also the chain-level suspension cycle
construction and the suspension homomorphism computed as a composite of
long-exact-sequence maps.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

from .chains import (
    ChainComplex,
    ChainComplexPair,
    GroupMap,
    HomologyClass,
    NotACycleError,
    hom_map,
)
from .digraphs import (
    Digraph,
    DigraphMap,
    check_digraph_map,
    cone,
    require_subdigraph,
    suspension,
)
from .intlinalg import AbelianGroup, Echelon, sparse_kernel_basis


class InvalidMappingError(ValueError):
    pass


class PathChain:
    """Integer formal sum of same-length vertex sequences."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Optional[dict] = None):
        self.degree = degree
        self.terms: dict[tuple, int] = {}
        if terms:
            for path, coeff in terms.items():
                if coeff:
                    path = tuple(path)
                    if len(path) != degree + 1:
                        raise ValueError("path length does not match chain degree")
                    self.terms[path] = self.terms.get(path, 0) + coeff
            self.terms = {p: c for p, c in self.terms.items() if c}

    @staticmethod
    def single(path: Sequence, coeff: int = 1) -> "PathChain":
        path = tuple(path)
        return PathChain(len(path) - 1, {path: coeff})

    def __add__(self, other: "PathChain") -> "PathChain":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        merged = dict(self.terms)
        for p, c in other.terms.items():
            merged[p] = merged.get(p, 0) + c
        return PathChain(self.degree, merged)

    def __sub__(self, other: "PathChain") -> "PathChain":
        return self + other.scale(-1)

    def __neg__(self) -> "PathChain":
        return self.scale(-1)

    def scale(self, k: int) -> "PathChain":
        return PathChain(self.degree, {p: k * c for p, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PathChain):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "PathChain(0)"
        bits = []
        for path, coeff in sorted(self.terms.items(), key=lambda kv: kv[0]):
            word = "".join(str(v) for v in path)
            bits.append(f"{'+' if coeff > 0 else '-'}{abs(coeff) if abs(coeff) != 1 else ''}{word}")
        return "PathChain(" + " ".join(bits) + ")"

    def to_json(self) -> list:
        from .digraphs import label_str

        return [
            {"path": [label_str(v) for v in path], "coeff": coeff}
            for path, coeff in sorted(
                self.terms.items(), key=lambda kv: tuple(label_str(v) for v in kv[0])
            )
        ]

    @staticmethod
    def from_json(data: list) -> "PathChain":
        if not data:
            raise ValueError("cannot infer the degree of an empty chain; give at least one term")
        terms = {}
        degree = None
        for item in data:
            path = tuple(str(v) for v in item["path"])
            if degree is None:
                degree = len(path) - 1
            terms[path] = terms.get(path, 0) + int(item["coeff"])
        return PathChain(degree, terms)


def is_regular(path: Sequence) -> bool:
    return all(a != b for a, b in zip(path, path[1:]))


def is_allowed(g: Digraph, path: Sequence) -> bool:
    return all(g.has_arrow(a, b) for a, b in zip(path, path[1:]))


def allowed_paths(g: Digraph, n: int) -> list[tuple]:
    """All allowed n-paths, ordered lexicographically in the vertex order."""
    if n < 0:
        raise ValueError("negative path length")
    paths = [(v,) for v in g.vertices]
    for _ in range(n):
        paths = [p + (w,) for p in paths for w in g.out_neighbors(p[-1])]
    return paths


def _boundary_faces(path: tuple) -> list[tuple[tuple, int]]:
    """Regular faces of one path, with alternating signs."""
    out = []
    for i in range(len(path)):
        face = path[:i] + path[i + 1 :]
        if is_regular(face):
            out.append((face, (-1) ** i))
    return out


def regular_boundary(chain: PathChain) -> PathChain:
    """Boundary in the regular quotient: faces with equal adjacent
    vertices are dropped.

    >>> regular_boundary(PathChain.single((0, 1, 2)))
    PathChain(+01 -02 +12)
    """
    if chain.degree == 0:
        return PathChain(-1)
    terms: dict[tuple, int] = {}
    for path, coeff in chain.terms.items():
        if not is_regular(path):
            raise ValueError("chain contains a non-regular path")
        for face, sign in _boundary_faces(path):
            terms[face] = terms.get(face, 0) + sign * coeff
    return PathChain(chain.degree - 1, terms)


class OmegaComplex:
    """The complex of allowed chains whose regular boundary stays allowed.

    Per degree n <= maxdeg: the ordered allowed-path basis, a saturated
    lattice basis for the degree-n chain group inside it, and the boundary
    matrix in those lattice coordinates.  With `reduced=True` an
    augmentation to Z in degree -1 is appended.
    """

    def __init__(self, g: Digraph, maxdeg: int, reduced: bool = False):
        self.digraph = g
        self.maxdeg = maxdeg
        self.reduced = reduced
        self.allowed: dict[int, list[tuple]] = {}
        self.path_index: dict[int, dict[tuple, int]] = {}
        self._echelons: dict[int, Echelon] = {}
        degrees: dict[int, list] = {}
        boundary: dict[int, list] = {}

        if reduced:
            degrees[-1] = ["*"]

        for n in range(maxdeg + 1):
            paths = allowed_paths(g, n)
            self.allowed[n] = paths
            self.path_index[n] = {p: i for i, p in enumerate(paths)}
            if n == 0:
                basis = [{i: 1} for i in range(len(paths))]
            else:
                below = self.path_index[n - 1]
                nonallowed_rows: dict[tuple, int] = {}
                cols = []
                for p in paths:
                    col: dict[int, int] = {}
                    for face, sign in _boundary_faces(p):
                        if face in below:
                            continue
                        row = nonallowed_rows.setdefault(face, len(nonallowed_rows))
                        col[row] = col.get(row, 0) + sign
                    cols.append({k: v for k, v in col.items() if v})
                basis = sparse_kernel_basis(cols, len(nonallowed_rows))
            ech = Echelon()
            for vec in basis:
                ech.add(vec)
            self._echelons[n] = ech
            degrees[n] = [f"w{n}:{j}" for j in range(len(ech))]

            bcols = []
            if n == 0:
                if reduced:
                    for vec in ech.basis_vectors():
                        total = sum(vec.values())
                        bcols.append({0: total} if total else {})
                else:
                    bcols = [{} for _ in range(len(ech))]
            else:
                below_ech = self._echelons[n - 1]
                below_index = self.path_index[n - 1]
                for vec in ech.basis_vectors():
                    db: dict[int, int] = {}
                    for idx, coeff in vec.items():
                        for face, sign in _boundary_faces(paths[idx]):
                            row = below_index.get(face)
                            if row is not None:
                                db[row] = db.get(row, 0) + sign * coeff
                    db = {k: v for k, v in db.items() if v}
                    sol = below_ech.solve(db)
                    if sol is None:
                        raise AssertionError("boundary left the allowed chain lattice")
                    bcols.append({j: c for j, c in enumerate(sol) if c})
            boundary[n] = bcols

        if reduced:
            boundary[-1] = [{}]
        self.complex = ChainComplex(degrees, boundary)

    def rank(self, n: int) -> int:
        return self.complex.dim(n)

    def basis_chain(self, n: int, j: int) -> PathChain:
        vec = self._echelons[n].basis_vectors()[j]
        return PathChain(n, {self.allowed[n][i]: c for i, c in vec.items()})

    def lattice_coords(self, chain: PathChain) -> Optional[dict]:
        """Coordinates of an allowed chain in the degree-n lattice basis,
        or None if the chain is not in the lattice."""
        n = chain.degree
        if n not in self.allowed:
            raise ValueError(f"degree {n} outside the built range")
        index = self.path_index[n]
        vec: dict[int, int] = {}
        for path, coeff in chain.terms.items():
            if path not in index:
                return None
            vec[index[path]] = coeff
        sol = self._echelons[n].solve(vec)
        if sol is None:
            return None
        return {j: c for j, c in enumerate(sol) if c}

    def to_path_chain(self, n: int, vec: dict) -> PathChain:
        out = PathChain(n)
        for j, coeff in vec.items():
            out = out + self.basis_chain(n, j).scale(coeff)
        return out

    def homology(self, n: int) -> AbelianGroup:
        return self.complex.homology(n).group

    def class_of(self, chain: PathChain) -> HomologyClass:
        vec = self.lattice_coords(chain)
        if vec is None:
            raise NotACycleError("chain is not in the allowed-boundary lattice")
        hd = self.complex.homology(chain.degree)
        return HomologyClass(hd.group, hd.class_vector(vec))


@lru_cache(maxsize=128)
def build_omega_complex(g: Digraph, maxdeg: int, reduced: bool = False) -> OmegaComplex:
    """Build (and cache) the allowed-chain complex of g up to maxdeg."""
    return OmegaComplex(g, maxdeg, reduced)


class OmegaPair:
    """Relative allowed-chain machinery for a subdigraph inclusion."""

    def __init__(self, g: Digraph, a: Digraph, maxdeg: int, reduced: bool = False):
        require_subdigraph(a, g)
        self.digraph = g
        self.sub_digraph = a
        self.ambient = build_omega_complex(g, maxdeg, reduced)
        self.sub = build_omega_complex(a, maxdeg, reduced)
        inclusion: dict[int, list] = {}
        degrees = range(-1, maxdeg + 1) if reduced else range(maxdeg + 1)
        for n in degrees:
            if n == -1:
                inclusion[n] = [{0: 1}]
                continue
            cols = []
            for j in range(self.sub.rank(n)):
                chain = self.sub.basis_chain(n, j)
                coords = self.ambient.lattice_coords(chain)
                if coords is None:
                    raise AssertionError("sub lattice does not embed; invariant broken")
                cols.append(coords)
            inclusion[n] = cols
        self.pair = ChainComplexPair(self.ambient.complex, self.sub.complex, inclusion)

    def quotient_class(self, chain: PathChain) -> HomologyClass:
        """Class of an ambient allowed chain in the relative homology."""
        n = chain.degree
        vec = self.ambient.lattice_coords(chain)
        if vec is None:
            raise NotACycleError("chain is not in the ambient lattice")
        qvec = self.pair.ambient_chain_to_quotient(n, vec)
        hd = self.pair.quotient.homology(n)
        return HomologyClass(hd.group, hd.class_vector(qvec))


@lru_cache(maxsize=64)
def build_omega_pair(g: Digraph, a: Digraph, maxdeg: int, reduced: bool = False) -> OmegaPair:
    return OmegaPair(g, a, maxdeg, reduced)


def path_homology(
    g: Digraph,
    n: int,
    relative_to: Optional[Digraph] = None,
    reduced: bool = False,
    maxdeg: Optional[int] = None,
) -> AbelianGroup:
    """Path homology H_n(g) or H_n(g, relative_to) over the integers."""
    if n < 0:
        raise ValueError("negative degree")
    depth = max(maxdeg if maxdeg is not None else 0, n + 1)
    if relative_to is not None:
        pair = build_omega_pair(g, relative_to, depth, reduced)
        return pair.pair.quotient.homology(n).group
    return build_omega_complex(g, depth, reduced).homology(n)


def pushforward(f: DigraphMap, chain: PathChain) -> PathChain:
    """Chain map induced by a digraph map; non-regular images vanish."""
    if not check_digraph_map(f):
        raise InvalidMappingError("not a digraph map")
    terms: dict[tuple, int] = {}
    for path, coeff in chain.terms.items():
        image = tuple(f(v) for v in path)
        if is_regular(image):
            terms[image] = terms.get(image, 0) + coeff
    return PathChain(chain.degree, terms)


def append_vertex(chain: PathChain, v) -> PathChain:
    """The chain whose paths are those of `chain` with `v` appended."""
    return PathChain(
        chain.degree + 1, {path + (v,): coeff for path, coeff in chain.terms.items()}
    )


def suspension_cycle(
    z: PathChain, x: Digraph, apex_a="+a", apex_b="+b"
) -> PathChain:
    """Chain-level suspension of a cycle: (-1)^(n+1) * (z.a - z.b).

    Requires z to be a cycle in the degree-n allowed-boundary lattice of
    x; the result is verified to be a cycle of the suspension, and its
    class realizes the suspension homomorphism applied to [z].
    """
    n = z.degree
    oc = build_omega_complex(x, n)
    if oc.lattice_coords(z) is None:
        raise NotACycleError("chain does not lie in the allowed-boundary lattice")
    if n == 0:
        if sum(z.terms.values()) != 0:
            raise NotACycleError("a degree-0 chain must sum to zero (reduced cycle)")
    elif not regular_boundary(z).is_zero():
        raise NotACycleError("chain is not a cycle")
    sign = -1 if (n + 1) % 2 else 1
    out = (append_vertex(z, apex_a) - append_vertex(z, apex_b)).scale(sign)
    sx = suspension(x, apex_a, apex_b)
    oc_sx = build_omega_complex(sx, n + 1)
    if oc_sx.lattice_coords(out) is None:
        raise AssertionError("suspension cycle left the allowed-boundary lattice")
    if not regular_boundary(out).is_zero():
        raise AssertionError("suspension cycle has nonzero boundary")
    return out


def _pair_inclusion_induced(
    pair1: OmegaPair, pair2: OmegaPair, n: int
) -> GroupMap:
    """H_n(pair1 quotient) -> H_n(pair2 quotient) induced by an inclusion
    of digraph pairs (chains are literally reinterpreted)."""
    hd1 = pair1.pair.quotient.homology(n)
    hd2 = pair2.pair.quotient.homology(n)
    images = []
    for j in range(hd1.n_generators):
        qvec = hd1.representative(j)
        amb_vec = pair1.pair.quotient_section(n, qvec)
        chain = pair1.ambient.to_path_chain(n, amb_vec)
        coords = pair2.ambient.lattice_coords(chain)
        if coords is None:
            raise AssertionError("chain does not include into the larger pair")
        images.append(pair2.pair.ambient_chain_to_quotient(n, coords))
    return hom_map(hd1, hd2, images)


def path_suspension_map(
    x: Digraph, n: int, reduced: bool = False, apex_a="+a", apex_b="+b"
) -> GroupMap:
    """The suspension homomorphism H_n(x) -> H_{n+1}(suspension of x),
    computed as (quotient map)^-1 after (pair inclusion) after
    (connecting map)^-1 through the two cone pairs.

    At n = 0 the connecting map is only invertible against the augmented
    (reduced) degree-0 group, so the source is the reduced group there.
    """
    reduced = reduced or n == 0
    sx = suspension(x, apex_a, apex_b)
    cp = cone(x, apex_a)
    cm = cone(x, apex_b)
    pair_cone = build_omega_pair(cp, x, n + 2, reduced)
    pair_susp = build_omega_pair(sx, cm, n + 2, reduced)
    xi = pair_cone.pair.connecting_map(n + 1)
    # the connecting map of the cone pair lands in H_n(x)
    incl = _pair_inclusion_induced(pair_cone, pair_susp, n + 1)
    q = pair_susp.pair.quotient_map(n + 1)
    return q.inverse().compose(incl).compose(xi.inverse())


def suspension_homology_of_x(x: Digraph, n: int, reduced: bool = False):
    """Homology data pair (H_n(x), H_{n+1}(suspension x)) sharing the
    complexes used by path_suspension_map, for class comparisons."""
    sx = suspension(x, "+a", "+b")
    hd_x = build_omega_complex(x, n + 2, reduced).complex.homology(n)
    hd_sx = build_omega_complex(sx, n + 2, reduced).complex.homology(n + 1)
    return hd_x, hd_sx
