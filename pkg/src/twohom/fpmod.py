"""Finitely presented modules over Z or Z/n and their morphisms.

A module is R^gens / columnspan(rel); a morphism is a matrix on
generators that carries relations into relations.  Submodule membership,
morphism equality and every universal-property factorization reduce to
one primitive: exact solving against a relation matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .exactlin import (
    DimensionMismatch,
    Matrix,
    RingSpec,
    block_diag,
    hnf,
    hstack,
    kernel_basis,
    kron,
    snf,
    solve_many,
    vstack,
)


class InvalidMorphism(ValueError):
    """The matrix does not carry source relations into target relations."""


class FactorError(ValueError):
    """A factorization required by a universal property has no solution."""


@dataclass(frozen=True)
class FPModule:
    """R^gens modulo the column span of ``rel`` (one column per relation)."""

    ring: RingSpec
    gens: int
    rel: Matrix

    def __post_init__(self):
        if self.rel.rows != self.gens:
            raise DimensionMismatch(
                f"relation matrix has {self.rel.rows} rows for {self.gens} generators")
        if self.rel.ring != self.ring:
            raise DimensionMismatch("relation matrix over the wrong ring")

    @staticmethod
    def free(ring: RingSpec, rank: int) -> "FPModule":
        return FPModule(ring, rank, Matrix.zeros(ring, rank, 0))

    @staticmethod
    def zero(ring: RingSpec) -> "FPModule":
        return FPModule.free(ring, 0)

    @staticmethod
    def cyclic(ring: RingSpec, order: int) -> "FPModule":
        """Z/order (order = 0 gives the free rank-1 module)."""
        if order == 0:
            return FPModule.free(ring, 1)
        return FPModule(ring, 1, Matrix.from_rows(ring, [[order]]))

    def contains(self, cols: Matrix) -> bool:
        """Do the given columns lie in the relation span?"""
        if cols.rows != self.gens:
            raise DimensionMismatch("membership test on wrong-length columns")
        return solve_many(self.rel, cols) is not None

    def is_trivial(self) -> bool:
        return invariant_factors(self) == []

    def __repr__(self):
        return f"FPModule({self.ring}, gens={self.gens}, rel={self.rel.tolists()})"


class ModMor:
    """Morphism of presented modules; ``mat`` is dst.gens x src.gens."""

    __slots__ = ("src", "dst", "mat")

    def __init__(self, src: FPModule, dst: FPModule, mat: Matrix, check: bool = True):
        if mat.shape != (dst.gens, src.gens):
            raise DimensionMismatch(
                f"matrix {mat.shape} for morphism {src.gens} -> {dst.gens}")
        if mat.ring != src.ring or src.ring != dst.ring:
            raise DimensionMismatch("ring mismatch in morphism")
        self.src = src
        self.dst = dst
        self.mat = mat
        if check and not is_valid_mor(self):
            raise InvalidMorphism(
                f"matrix {mat.tolists()} does not respect relations")

    @staticmethod
    def zero(src: FPModule, dst: FPModule) -> "ModMor":
        return ModMor(src, dst, Matrix.zeros(src.ring, dst.gens, src.gens), check=False)

    @staticmethod
    def identity(m: FPModule) -> "ModMor":
        return ModMor(m, m, Matrix.identity(m.ring, m.gens), check=False)

    def is_zero_mor(self) -> bool:
        return equal_mor(self, ModMor.zero(self.src, self.dst))

    def __add__(self, other: "ModMor") -> "ModMor":
        _same_endpoints(self, other)
        return ModMor(self.src, self.dst, self.mat + other.mat, check=False)

    def __sub__(self, other: "ModMor") -> "ModMor":
        _same_endpoints(self, other)
        return ModMor(self.src, self.dst, self.mat - other.mat, check=False)

    def __neg__(self) -> "ModMor":
        return ModMor(self.src, self.dst, -self.mat, check=False)

    def __repr__(self):
        return f"ModMor({self.src.gens}->{self.dst.gens}, {self.mat.tolists()})"


def _same_endpoints(f: ModMor, g: ModMor):
    if f.src != g.src or f.dst != g.dst:
        raise DimensionMismatch("morphisms with different endpoints")


def is_valid_mor(f: ModMor) -> bool:
    """mat carries every source relation into the target relation span."""
    if f.src.rel.cols == 0:
        return True
    return f.dst.contains(f.mat @ f.src.rel)


def equal_mor(f: ModMor, g: ModMor) -> bool:
    """Equality as morphisms of the presented modules."""
    _same_endpoints(f, g)
    return f.dst.contains(f.mat - g.mat)


def compose(f: ModMor, g: ModMor) -> ModMor:
    """g after f (f then g)."""
    if f.dst != g.src:
        raise DimensionMismatch("non-composable morphisms")
    return ModMor(f.src, g.dst, g.mat @ f.mat, check=False)


def column_basis(mat: Matrix) -> Matrix:
    """A clean generating set for the column span: column-echelon form
    with zero columns dropped (over Z the result is a lattice basis)."""
    h, _ = hnf(mat.transpose())
    cols = h.transpose()
    keep = [j for j in range(cols.cols) if not cols.col(j).is_zero()]
    if not keep:
        return Matrix.zeros(mat.ring, mat.rows, 0)
    return hstack([cols.col(j) for j in keep])


def kernel(f: ModMor) -> Tuple[FPModule, ModMor]:
    """Kernel as a presented module with its inclusion into the source.

    Generators are the syzygies of [f.mat | dst.rel] projected to source
    coordinates and reduced to a column basis (redundant generators would
    poison downstream cover-based exactness checks); relations are pulled
    back from the source presentation, so the inclusion is mono.
    """
    ring = f.src.ring
    stacked = hstack([f.mat, f.dst.rel])
    syz = kernel_basis(stacked)
    gens_mat = Matrix(ring, f.src.gens, syz.cols, syz.arr[: f.src.gens, :])
    cols = column_basis(gens_mat)
    pull = kernel_basis(hstack([cols, f.src.rel]))
    rel = Matrix(ring, cols.cols, pull.cols, pull.arr[: cols.cols, :])
    K = FPModule(ring, cols.cols, rel)
    incl = ModMor(K, f.src, cols, check=False)
    return K, incl


def cokernel(f: ModMor) -> Tuple[FPModule, ModMor]:
    """Cokernel: target generators with the image columns added as relations."""
    Q = FPModule(f.src.ring, f.dst.gens, hstack([f.dst.rel, f.mat]))
    proj = ModMor(f.dst, Q, Matrix.identity(f.src.ring, f.dst.gens), check=False)
    return Q, proj


def factor_through(incl: ModMor, g: ModMor) -> ModMor:
    """The unique h with incl∘h = g (up to relations); raises FactorError.

    ``incl`` is typically a kernel inclusion; completeness of the solve
    makes the factorization exact whenever it exists.
    """
    if g.dst != incl.dst:
        raise DimensionMismatch("factor_through endpoint mismatch")
    sol = solve_many(hstack([incl.mat, incl.dst.rel]), g.mat)
    if sol is None:
        raise FactorError("no factorization through the given inclusion")
    mat = Matrix(g.src.ring, incl.src.gens, g.src.gens,
                 sol.arr[: incl.src.gens, :])
    return ModMor(g.src, incl.src, mat, check=False)


def direct_sum(m: FPModule, n: FPModule):
    """Biproduct with injections and projections.

    Returns (sum, inj_m, inj_n, proj_m, proj_n).
    """
    if m.ring != n.ring:
        raise DimensionMismatch("direct sum over different rings")
    ring = m.ring
    s = FPModule(ring, m.gens + n.gens, block_diag([m.rel, n.rel]))
    i_m = vstack([Matrix.identity(ring, m.gens),
                  Matrix.zeros(ring, n.gens, m.gens)])
    i_n = vstack([Matrix.zeros(ring, m.gens, n.gens),
                  Matrix.identity(ring, n.gens)])
    p_m = i_m.transpose()
    p_n = i_n.transpose()
    return (s,
            ModMor(m, s, i_m, check=False),
            ModMor(n, s, i_n, check=False),
            ModMor(s, m, p_m, check=False),
            ModMor(s, n, p_n, check=False))


def tensor(m: FPModule, n: FPModule) -> FPModule:
    """Tensor product presentation: generator (i, j) has index i*n.gens + j."""
    if m.ring != n.ring:
        raise DimensionMismatch("tensor over different rings")
    ring = m.ring
    gens = m.gens * n.gens
    parts = []
    if m.rel.cols:
        parts.append(kron(m.rel, Matrix.identity(ring, n.gens)))
    if n.rel.cols:
        parts.append(kron(Matrix.identity(ring, m.gens), n.rel))
    rel = hstack(parts) if parts else Matrix.zeros(ring, gens, 0)
    return FPModule(ring, gens, rel)


def tensor_mor(f: ModMor, n: FPModule) -> ModMor:
    """f (x) id_n, the Kronecker action on generators."""
    return ModMor(tensor(f.src, n), tensor(f.dst, n),
                  kron(f.mat, Matrix.identity(f.mat.ring, n.gens)),
                  check=False)


def normal_form_presentation(m: FPModule) -> FPModule:
    """The SNF change-of-generators presentation (for reports only:
    modules flowing through a computation keep their coordinates)."""
    factors = invariant_factors(m)
    ring = m.ring
    torsion = [d for d in factors if d != 0]
    free = len(factors) - len(torsion)
    gens = len(factors)
    rel = Matrix(ring, gens, len(torsion),
                 [torsion[j] if i == j else 0
                  for i in range(gens) for j in range(len(torsion))])
    return FPModule(ring, gens, rel)


def invariant_factors(m: FPModule) -> List[int]:
    """SNF-canonical invariant factor list; 0 denotes a free rank.

    Two modules are isomorphic iff the lists are equal.  Over Z/n the
    list consists of the divisors > 1 of n appearing in the Z-level SNF
    of [rel | n*I] (a "free" Z/n rank shows up as the factor n).
    """
    ring = m.ring
    if ring.is_modular:
        lifted = Matrix(RingSpec.Z(), m.gens, m.rel.cols, m.rel.arr)
        work = hstack([lifted, Matrix.identity(RingSpec.Z(), m.gens).scale(ring.n)])
    else:
        work = m.rel
    D, _, _ = snf(work)
    diag = [D.entry(i, i) for i in range(min(D.rows, D.cols))]
    factors = sorted((d for d in diag if d not in (0, 1)),
                     key=lambda d: (d,))
    # divisibility chain makes plain sorting canonical
    free = m.gens - sum(1 for d in diag if d != 0)
    return factors + [0] * free


def is_epi(f: ModMor) -> bool:
    Q, _ = cokernel(f)
    return Q.is_trivial()


def is_mono(f: ModMor) -> bool:
    _, incl = kernel(f)
    return incl.is_zero_mor()


def is_iso(f: ModMor) -> bool:
    return is_epi(f) and is_mono(f)


def is_exact_at(f: ModMor, g: ModMor) -> bool:
    """Exactness of  src(f) -> mid -> dst(g)  at the middle module."""
    if f.dst != g.src:
        raise DimensionMismatch("non-composable pair in exactness check")
    if not compose(f, g).is_zero_mor():
        return False
    K, incl = kernel(g)
    # every kernel generator must be an image element modulo relations
    return solve_many(hstack([f.mat, f.dst.rel]), incl.mat) is not None


def image_in(f: ModMor, cols: Matrix) -> Optional[Matrix]:
    """Preimages of the given columns under f (modulo relations), or None."""
    sol = solve_many(hstack([f.mat, f.dst.rel]), cols)
    if sol is None:
        return None
    return Matrix(f.src.ring, f.src.gens, cols.cols, sol.arr[: f.src.gens, :])


def hom_basis(src: FPModule, dst: FPModule) -> List[Matrix]:
    """Matrices generating all valid morphisms src -> dst.

    A matrix t is valid iff t * src.rel factors through dst.rel; that is
    one homogeneous linear system in the entries of t, so its solutions
    are generated by a kernel basis.
    """
    ring = src.ring
    n_t = dst.gens * src.gens
    if n_t == 0:
        return []
    if src.rel.cols == 0:
        out = []
        for k in range(n_t):
            arr = [0] * n_t
            arr[k] = 1
            out.append(_unvec(ring, arr, dst.gens, src.gens))
        return out
    lhs = hstack([kron(src.rel.transpose(), Matrix.identity(ring, dst.gens)),
                  kron(Matrix.identity(ring, src.rel.cols), dst.rel)])
    basis = kernel_basis(lhs)
    out = []
    for j in range(basis.cols):
        flat = [basis.entry(k, j) for k in range(n_t)]
        if any(flat):
            out.append(_unvec(ring, flat, dst.gens, src.gens))
    return out


def _unvec(ring: RingSpec, flat, rows: int, cols: int) -> Matrix:
    """Column-major entries -> Matrix."""
    row_major = [flat[j * rows + i] for i in range(rows) for j in range(cols)]
    return Matrix(ring, rows, cols, row_major)
