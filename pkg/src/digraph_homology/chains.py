"""Chain complexes over Z, homology with generators, maps of homology
groups, complex pairs, and long-exact-sequence machinery.

A chain complex stores, per degree, an ordered generator basis and the
boundary as sparse columns into the previous degree.  Homology groups are
computed with explicit generator representatives so that induced maps
(inclusions, quotients, connecting homomorphisms, comparison maps) come
out as honest integer matrices in fixed coordinates.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from .intlinalg import (
    AbelianGroup,
    Echelon,
    IntMatrix,
    NotASublatticeError,
    _snf_full,
    integer_solve,
    sparse_kernel_basis,
    vec_addmul,
)


class BoundaryNotSquareZeroError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


class LiftFailureError(RuntimeError):
    pass


class NotACycleError(ValueError):
    pass


class ChainComplex:
    """Non-negatively indexed complex of free Z-modules (degree -1 allowed
    for augmentations).  `boundary_cols[n][j]` is the sparse boundary of
    the j-th degree-n generator, a dict {index in degree n-1: coefficient}.
    """

    def __init__(self, degrees: dict[int, list], boundary_cols: dict[int, list]):
        self.degrees = {n: list(toks) for n, toks in degrees.items()}
        self.boundary_cols = {n: [dict(c) for c in cols] for n, cols in boundary_cols.items()}
        for n, cols in self.boundary_cols.items():
            if len(cols) != self.dim(n):
                raise DimensionMismatchError(f"boundary at degree {n} has wrong column count")
            below = self.dim(n - 1)
            for col in cols:
                if any(not 0 <= i < below for i in col):
                    raise DimensionMismatchError(f"boundary at degree {n} hits a bad row")
        self._homology: dict[int, HomologyData] = {}

    def dim(self, n: int) -> int:
        return len(self.degrees.get(n, ()))

    def basis(self, n: int) -> list:
        return self.degrees.get(n, [])

    def max_degree(self) -> int:
        return max(self.degrees) if self.degrees else -1

    def boundary_of(self, n: int, vec: dict) -> dict:
        """Boundary of a degree-n chain given as a sparse coordinate dict."""
        cols = self.boundary_cols.get(n)
        out: dict = {}
        if not cols:
            return out
        for j, coeff in vec.items():
            vec_addmul(out, cols[j], coeff)
        return out

    def boundary_matrix(self, n: int) -> IntMatrix:
        rows, cols = self.dim(n - 1), self.dim(n)
        data = [[0] * cols for _ in range(rows)]
        for j, col in enumerate(self.boundary_cols.get(n, [])):
            for i, val in col.items():
                data[i][j] = val
        return IntMatrix(data, cols=cols)

    def check_square_zero(self) -> None:
        for n in sorted(self.boundary_cols):
            if n - 1 not in self.boundary_cols:
                continue
            for j, col in enumerate(self.boundary_cols[n]):
                if self.boundary_of(n - 1, col):
                    raise BoundaryNotSquareZeroError(
                        f"boundary squared is nonzero on degree-{n} generator {j}"
                    )

    def homology(self, n: int) -> "HomologyData":
        if n not in self._homology:
            self._homology[n] = HomologyData(self, n)
        return self._homology[n]


class HomologyData:
    """Homology of a complex at one degree, with chosen generators.

    Generators are ordered torsion part first (divisors increasing), then
    the free part.  `class_vector` expresses any cycle in these
    coordinates, reducing torsion coordinates into [0, d).
    """

    def __init__(self, complex: ChainComplex, n: int):
        self.complex = complex
        self.n = n
        dim_n = complex.dim(n)
        cols = complex.boundary_cols.get(n, [{} for _ in range(dim_n)])
        kernel_vecs = sparse_kernel_basis(cols, complex.dim(n - 1))
        self._kernel = Echelon()
        for v in kernel_vecs:
            self._kernel.add(v)
        kernel_basis = self._kernel.basis_vectors()
        k = len(kernel_basis)

        image = Echelon()
        for col in complex.boundary_cols.get(n + 1, []):
            if col:
                image.add(col)
        image_cols = []
        for w in image.basis_vectors():
            y = self._kernel.solve(w)
            if y is None:
                raise BoundaryNotSquareZeroError(
                    f"image at degree {n} does not lie in the kernel"
                )
            image_cols.append(y)

        rel = IntMatrix.from_cols(image_cols, rows=k)
        snf = _snf_full(rel)
        divisors = snf.divisors
        rank_rel = len(divisors)
        torsion_idx = [i for i, d in enumerate(divisors) if d > 1]
        free_idx = list(range(rank_rel, k))
        self._gen_idx = torsion_idx + free_idx
        self._divisors = [divisors[i] for i in torsion_idx] + [0] * len(free_idx)
        self._U = snf.U
        self._Uinv = snf.Uinv
        self.group = AbelianGroup(len(free_idx), tuple(divisors[i] for i in torsion_idx))

    @property
    def n_generators(self) -> int:
        return len(self._gen_idx)

    def representative(self, j: int) -> dict:
        """Chain-level representative of the j-th homology generator."""
        col = self._Uinv.column(self._gen_idx[j])
        out: dict = {}
        for coeff, vec in zip(col, self._kernel.basis_vectors()):
            vec_addmul(out, vec, coeff)
        return out

    def class_vector(self, vec: dict) -> tuple[int, ...]:
        """Coordinates of a cycle's class in the chosen generators."""
        y = self._kernel.solve(dict(vec))
        if y is None:
            raise NotACycleError(f"chain is not a cycle in degree {self.n}")
        w = self._U.apply(y)
        out = []
        for idx, d in zip(self._gen_idx, self._divisors):
            out.append(w[idx] % d if d else w[idx])
        return tuple(out)

    def is_boundary(self, vec: dict) -> bool:
        return all(x == 0 for x in self.class_vector(vec))

    def zero_class(self) -> tuple[int, ...]:
        return (0,) * self.n_generators


class HomologyClass:
    """An element of a homology group in generator coordinates."""

    __slots__ = ("group", "coords")

    def __init__(self, group: AbelianGroup, coords: Sequence[int]):
        if len(coords) != group.n_generators:
            raise DimensionMismatchError("coordinate length mismatch")
        self.group = group
        self.coords = _reduce_coords(group, coords)

    def __eq__(self, other):
        if not isinstance(other, HomologyClass):
            return NotImplemented
        return self.group == other.group and self.coords == other.coords

    def __hash__(self):
        return hash((self.group, self.coords))

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        if self.group != other.group:
            raise DimensionMismatchError("classes live in different groups")
        return HomologyClass(self.group, [a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(self.group, [-a for a in self.coords])

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return self + (-other)

    def scale(self, k: int) -> "HomologyClass":
        return HomologyClass(self.group, [k * a for a in self.coords])

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def __repr__(self):
        return f"HomologyClass({self.coords} in {self.group})"


def _reduce_coords(group: AbelianGroup, coords: Sequence[int]) -> tuple[int, ...]:
    out = list(coords)
    for i, d in enumerate(group.torsion):
        out[i] %= d
    return tuple(out)


def _relation_vectors(group: AbelianGroup) -> list[list[int]]:
    g = group.n_generators
    rels = []
    for i, d in enumerate(group.torsion):
        v = [0] * g
        v[i] = d
        rels.append(v)
    return rels


class GroupMap:
    """Homomorphism between presented abelian groups as an integer matrix.

    Columns are images of source generators, in target-generator
    coordinates (torsion generators first).  Columns are normalized by
    reducing torsion coordinates mod d.
    """

    def __init__(self, source: AbelianGroup, target: AbelianGroup, matrix: IntMatrix):
        if matrix.shape != (target.n_generators, source.n_generators):
            raise DimensionMismatchError(
                f"matrix shape {matrix.shape} does not match "
                f"{target.n_generators}x{source.n_generators}"
            )
        cols = [_reduce_coords(target, matrix.column(j)) for j in range(matrix.cols)]
        self.source = source
        self.target = target
        self.matrix = IntMatrix.from_cols(cols, rows=target.n_generators)
        self._check_well_defined()

    def _check_well_defined(self):
        for i, d in enumerate(self.source.torsion):
            col = [d * x for x in self.matrix.column(i)]
            if any(x != 0 for x in _reduce_coords(self.target, col)):
                raise ValueError("matrix does not respect source torsion relations")

    @staticmethod
    def zero(source: AbelianGroup, target: AbelianGroup) -> "GroupMap":
        return GroupMap(
            source, target, IntMatrix.zeros(target.n_generators, source.n_generators)
        )

    @staticmethod
    def identity(group: AbelianGroup) -> "GroupMap":
        return GroupMap(group, group, IntMatrix.identity(group.n_generators))

    def __call__(self, cls: HomologyClass) -> HomologyClass:
        if cls.group != self.source:
            raise DimensionMismatchError("class not in the source group")
        return HomologyClass(self.target, self.matrix.apply(cls.coords))

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other."""
        if other.target != self.source:
            raise DimensionMismatchError("composition mismatch")
        return GroupMap(other.source, self.target, self.matrix @ other.matrix)

    def __eq__(self, other):
        if not isinstance(other, GroupMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def image_generators(self) -> list[list[int]]:
        """Generators in Z^{target gens} of the image subgroup's preimage
        lattice (image columns together with target relations)."""
        gens = [list(self.matrix.column(j)) for j in range(self.matrix.cols)]
        gens.extend(_relation_vectors(self.target))
        return gens

    def kernel_generators(self) -> list[list[int]]:
        """Generators in Z^{source gens} of the kernel subgroup's preimage
        lattice (includes source relations)."""
        t_rels = _relation_vectors(self.target)
        stacked = self.matrix
        for rel in t_rels:
            stacked = stacked.hstack(IntMatrix.from_cols([rel], rows=len(rel)))
        s = self.source.n_generators
        kernel = sparse_kernel_basis(
            [
                {i: v for i, v in enumerate(stacked.column(j)) if v}
                for j in range(stacked.cols)
            ],
            stacked.rows,
        )
        gens = []
        for vec in kernel:
            gens.append([vec.get(i, 0) for i in range(s)])
        gens.extend(_relation_vectors(self.source))
        return gens

    def inverse(self) -> "GroupMap":
        """Inverse homomorphism; raises if this map is not an isomorphism."""
        t_rels = _relation_vectors(self.target)
        stacked = self.matrix
        for rel in t_rels:
            stacked = stacked.hstack(IntMatrix.from_cols([rel], rows=len(rel)))
        s = self.source.n_generators
        t = self.target.n_generators
        cols = []
        for j in range(t):
            e = [1 if i == j else 0 for i in range(t)]
            sol = integer_solve(stacked, e)
            if sol is None:
                raise ValueError("map is not surjective; cannot invert")
            cols.append(sol[:s])
        inv = GroupMap(self.target, self.source, IntMatrix.from_cols(cols, rows=s))
        if inv.compose(self) != GroupMap.identity(self.source):
            raise ValueError("map is not injective; cannot invert")
        return inv


def _lattices_equal_as_subgroups(gens_a: list, gens_b: list) -> bool:
    ech_a = Echelon()
    for v in gens_a:
        ech_a.add({i: x for i, x in enumerate(v) if x})
    ech_b = Echelon()
    for v in gens_b:
        ech_b.add({i: x for i, x in enumerate(v) if x})
    return all(
        ech_b.contains(v) for v in ech_a.basis_vectors()
    ) and all(ech_a.contains(v) for v in ech_b.basis_vectors())


def verify_exactness(maps: Sequence[GroupMap]) -> bool:
    """True iff image equals kernel at every interior node of the sequence."""
    for f, g in zip(maps, maps[1:]):
        if f.target != g.source:
            raise DimensionMismatchError("consecutive maps are not composable")
        if not _lattices_equal_as_subgroups(f.image_generators(), g.kernel_generators()):
            return False
    return True


def hom_map(
    source: HomologyData, target: HomologyData, images: Sequence[dict]
) -> GroupMap:
    """GroupMap whose j-th column is the class of images[j] in the target."""
    if len(images) != source.n_generators:
        raise DimensionMismatchError("one image chain per source generator required")
    cols = [target.class_vector(img) for img in images]
    return GroupMap(
        source.group,
        target.group,
        IntMatrix.from_cols(cols, rows=target.group.n_generators),
    )


class ChainComplexPair:
    """A subcomplex inclusion with the induced quotient complex and the
    three families of long-exact-sequence maps.

    `inclusion_cols[n]` expresses the degree-n sub basis in ambient
    coordinates.  The embedded sub lattice must be saturated degreewise
    (true for coordinate subcomplexes and for saturated path lattices);
    otherwise the quotient would have torsion and NotASublatticeError is
    raised.
    """

    def __init__(
        self,
        ambient: ChainComplex,
        sub: ChainComplex,
        inclusion_cols: dict[int, list],
    ):
        self.ambient = ambient
        self.sub = sub
        self._adapters: dict[int, _DegreeAdapter] = {}
        degrees = sorted(set(ambient.degrees) | set(sub.degrees))
        for n in degrees:
            cols = inclusion_cols.get(n, [])
            if len(cols) != sub.dim(n):
                raise DimensionMismatchError(f"inclusion at degree {n} has wrong column count")
            self._adapters[n] = _DegreeAdapter(ambient.dim(n), cols)
        q_degrees = {}
        q_cols = {}
        for n in degrees:
            ad = self._adapters[n]
            q_degrees[n] = [f"q{n}:{j}" for j in range(ad.quot_dim)]
            cols = []
            if n - 1 in self._adapters:
                below = self._adapters[n - 1]
                for j in range(ad.quot_dim):
                    bound = ambient.boundary_of(n, ad.section(j))
                    cols.append(below.quotient_coords(bound))
            else:
                cols = [{} for _ in range(ad.quot_dim)]
            q_cols[n] = cols
        self.quotient = ChainComplex(q_degrees, q_cols)

    def sub_chain_to_ambient(self, n: int, vec: dict) -> dict:
        return self._adapters[n].include(vec)

    def ambient_chain_to_quotient(self, n: int, vec: dict) -> dict:
        return self._adapters[n].quotient_coords(vec)

    def quotient_section(self, n: int, vec: dict) -> dict:
        out: dict = {}
        ad = self._adapters[n]
        for j, coeff in vec.items():
            vec_addmul(out, ad.section(j), coeff)
        return out

    def ambient_chain_to_sub(self, n: int, vec: dict) -> dict:
        sub_vec = self._adapters[n].sub_coords(vec)
        if sub_vec is None:
            raise LiftFailureError(f"chain at degree {n} does not lie in the subcomplex")
        return sub_vec

    def inclusion_map(self, n: int) -> GroupMap:
        hd_sub = self.sub.homology(n)
        hd_amb = self.ambient.homology(n)
        images = [
            self.sub_chain_to_ambient(n, hd_sub.representative(j))
            for j in range(hd_sub.n_generators)
        ]
        return hom_map(hd_sub, hd_amb, images)

    def quotient_map(self, n: int) -> GroupMap:
        hd_amb = self.ambient.homology(n)
        hd_quot = self.quotient.homology(n)
        images = [
            self.ambient_chain_to_quotient(n, hd_amb.representative(j))
            for j in range(hd_amb.n_generators)
        ]
        return hom_map(hd_amb, hd_quot, images)

    def connecting_map(self, n: int, lift_perturbation: Optional[Callable] = None) -> GroupMap:
        """H_n(quotient) -> H_{n-1}(sub): lift, take the ambient boundary,
        express in the subcomplex.  `lift_perturbation(j)` may return a
        degree-n sub chain to add to the canonical lift of generator j
        (the induced map must not change; used to test lift independence).
        """
        hd_quot = self.quotient.homology(n)
        hd_sub = self.sub.homology(n - 1)
        images = []
        for j in range(hd_quot.n_generators):
            lift = self.quotient_section(n, hd_quot.representative(j))
            if lift_perturbation is not None:
                extra = lift_perturbation(j)
                if extra:
                    vec_addmul(lift, self.sub_chain_to_ambient(n, extra), 1)
            bound = self.ambient.boundary_of(n, lift)
            images.append(self.ambient_chain_to_sub(n - 1, bound))
        return hom_map(hd_quot, hd_sub, images)

    def les_maps(self, maxdeg: int) -> list[GroupMap]:
        """[i_m, q_m, xi_m, i_{m-1}, ..., i_0, q_0, 0] ready for
        verify_exactness; the terminal zero map checks q_0 surjectivity."""
        maps: list[GroupMap] = []
        for n in range(maxdeg, -1, -1):
            maps.append(self.inclusion_map(n))
            maps.append(self.quotient_map(n))
            if n > 0:
                maps.append(self.connecting_map(n))
        maps.append(GroupMap.zero(self.quotient.homology(0).group, AbelianGroup(0)))
        return maps


def homology_of(c: ChainComplex, n: int) -> AbelianGroup:
    """Homology group at degree n; checks boundary-squared-zero first."""
    c.check_square_zero()
    return c.homology(n).group


def les_connecting_map(pair: ChainComplexPair, n: int) -> GroupMap:
    """The long-exact-sequence connecting map H_n(quotient) -> H_{n-1}(sub)."""
    return pair.connecting_map(n)


class _DegreeAdapter:
    """Coordinate bridge for one degree of a complex pair.

    Splits Z^ambient into sub coordinates and quotient coordinates via a
    unimodular change of basis adapted to the (saturated) inclusion.
    """

    def __init__(self, ambient_dim: int, inclusion_cols: list):
        self.ambient_dim = ambient_dim
        self.sub_dim = len(inclusion_cols)
        self.quot_dim = ambient_dim - self.sub_dim
        self._cols = [dict(c) for c in inclusion_cols]
        coord = self._coordinate_rows()
        if coord is not None:
            self._mode = "coordinate"
            self._sub_rows = coord
            row_to_sub = {r: j for j, r in enumerate(coord)}
            self._quot_rows = [r for r in range(ambient_dim) if r not in row_to_sub]
            self._row_to_sub = row_to_sub
            self._row_to_quot = {r: j for j, r in enumerate(self._quot_rows)}
        else:
            self._mode = "general"
            mat = IntMatrix.from_cols(
                [Echelon.vector_as_list(c, ambient_dim) for c in self._cols],
                rows=ambient_dim,
            )
            snf = _snf_full(mat)
            if snf.rank != self.sub_dim or any(d != 1 for d in snf.divisors):
                raise NotASublatticeError(
                    "subcomplex is not a saturated degreewise sublattice"
                )
            self._U = snf.U
            self._V = snf.V
            self._Uinv = snf.Uinv

    def _coordinate_rows(self) -> Optional[list[int]]:
        rows = []
        seen = set()
        for c in self._cols:
            if len(c) != 1:
                return None
            (r, val), = c.items()
            if val != 1 or r in seen:
                return None
            rows.append(r)
            seen.add(r)
        return rows

    def include(self, sub_vec: dict) -> dict:
        out: dict = {}
        for j, coeff in sub_vec.items():
            vec_addmul(out, self._cols[j], coeff)
        return out

    def section(self, j: int) -> dict:
        if self._mode == "coordinate":
            return {self._quot_rows[j]: 1}
        return {
            i: v
            for i, v in enumerate(self._Uinv.column(self.sub_dim + j))
            if v
        }

    def quotient_coords(self, vec: dict) -> dict:
        if self._mode == "coordinate":
            out = {}
            for r, val in vec.items():
                j = self._row_to_quot.get(r)
                if j is not None:
                    out[j] = val
            return out
        full = Echelon.vector_as_list(vec, self.ambient_dim)
        w = self._U.apply(full)
        return {j: w[self.sub_dim + j] for j in range(self.quot_dim) if w[self.sub_dim + j]}

    def sub_coords(self, vec: dict) -> Optional[dict]:
        if self._mode == "coordinate":
            out = {}
            for r, val in vec.items():
                j = self._row_to_sub.get(r)
                if j is None:
                    return None
                out[j] = val
            return out
        full = Echelon.vector_as_list(vec, self.ambient_dim)
        w = self._U.apply(full)
        if any(w[self.sub_dim + j] for j in range(self.quot_dim)):
            return None
        y = self._V.apply(list(w[: self.sub_dim]) + [0] * 0)
        return {j: val for j, val in enumerate(y) if val}
