"""2-modules over a discrete base ring, their 1- and 2-morphisms,
relative kernels and relative cokernels with universal properties, and
the exactness predicates built on them.

Model: a 2-module is a 2-term complex [M1 --d--> M0] of presented
modules; objects of the underlying groupoid are elements of M0 and a
morphism x -> y is an element m of M1 with y = x + d(m).  A strict
morphism of 2-modules is a commuting square (f1, f0); a 2-morphism
F => G is a single map s: src.M0 -> dst.M1 with

    G.f0 = F.f0 + d∘s        G.f1 = F.f1 + s∘d

(both modulo relations).  A null homotopy of H is a 2-morphism H => 0,
i.e. 0 = H + (d∘s, s∘d).  These sign conventions are fixed once; the
relative-cokernel relation signs below are the unique ones making its
differential well defined, which is a tested invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .exactlin import DimensionMismatch, Matrix, RingSpec, block, hstack, vstack
from .fpmod import (
    FPModule,
    InvalidMorphism,
    ModMor,
    cokernel,
    compose as mcompose,
    direct_sum,
    equal_mor,
    factor_through,
    invariant_factors,
    is_epi,
    is_mono,
    kernel,
    is_valid_mor,
)


class CompatibilityError(ValueError):
    """A 2-cell fails the compatibility condition a construction requires."""


class TwoModule:
    """A 2-term complex [M1 --d--> M0] of presented modules."""

    __slots__ = ("M1", "M0", "d", "_pi1")

    def __init__(self, M1: FPModule, M0: FPModule, d: ModMor, check: bool = True):
        if d.src != M1 or d.dst != M0:
            raise DimensionMismatch("structure map endpoints do not match")
        if check and not is_valid_mor(d):
            raise InvalidMorphism("structure map does not respect relations")
        self.M1 = M1
        self.M0 = M0
        self.d = d
        self._pi1 = None

    @property
    def ring(self) -> RingSpec:
        return self.M0.ring

    @staticmethod
    def zero(ring: RingSpec) -> "TwoModule":
        z = FPModule.zero(ring)
        return TwoModule(z, z, ModMor.zero(z, z), check=False)

    @staticmethod
    def discrete(m: FPModule) -> "TwoModule":
        """[0 -> m]: the module m placed in degree 0."""
        z = FPModule.zero(m.ring)
        return TwoModule(z, m, ModMor.zero(z, m), check=False)

    @staticmethod
    def free(ring: RingSpec, rank: int) -> "TwoModule":
        return TwoModule.discrete(FPModule.free(ring, rank))

    def is_free(self) -> bool:
        return self.M1.gens == 0 and self.M0.rel.cols == 0

    def __eq__(self, other):
        if not isinstance(other, TwoModule):
            return NotImplemented
        return (self.M1 == other.M1 and self.M0 == other.M0
                and self.d.mat == other.d.mat)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __repr__(self):
        return (f"TwoModule([{self.M1.gens} gens] -> [{self.M0.gens} gens],"
                f" pi0={invariant_factors(pi0(self))}, pi1={invariant_factors(pi1(self))})")


class OneMor:
    """Strict morphism of 2-modules: a commuting square (f1, f0)."""

    __slots__ = ("src", "dst", "f1", "f0")

    def __init__(self, src: TwoModule, dst: TwoModule, f1: ModMor, f0: ModMor,
                 check: bool = True):
        if f1.src != src.M1 or f1.dst != dst.M1:
            raise DimensionMismatch("f1 endpoints")
        if f0.src != src.M0 or f0.dst != dst.M0:
            raise DimensionMismatch("f0 endpoints")
        if check:
            if not (is_valid_mor(f1) and is_valid_mor(f0)):
                raise InvalidMorphism("component is not a module morphism")
            if not equal_mor(mcompose(src.d, f0), mcompose(f1, dst.d)):
                raise InvalidMorphism("square does not commute")
        self.src = src
        self.dst = dst
        self.f1 = f1
        self.f0 = f0

    @staticmethod
    def zero(src: TwoModule, dst: TwoModule) -> "OneMor":
        return OneMor(src, dst, ModMor.zero(src.M1, dst.M1),
                      ModMor.zero(src.M0, dst.M0), check=False)

    @staticmethod
    def identity(m: TwoModule) -> "OneMor":
        return OneMor(m, m, ModMor.identity(m.M1), ModMor.identity(m.M0),
                      check=False)

    def __add__(self, other: "OneMor") -> "OneMor":
        _same_hom(self, other)
        return OneMor(self.src, self.dst, self.f1 + other.f1,
                      self.f0 + other.f0, check=False)

    def __sub__(self, other: "OneMor") -> "OneMor":
        _same_hom(self, other)
        return OneMor(self.src, self.dst, self.f1 - other.f1,
                      self.f0 - other.f0, check=False)

    def __neg__(self) -> "OneMor":
        return OneMor(self.src, self.dst, -self.f1, -self.f0, check=False)

    def __repr__(self):
        return f"OneMor(f1={self.f1.mat.tolists()}, f0={self.f0.mat.tolists()})"


def _same_hom(f: OneMor, g: OneMor):
    if f.src != g.src or f.dst != g.dst:
        raise DimensionMismatch("mismatched hom-set")


def one_mor_equal(f: OneMor, g: OneMor) -> bool:
    _same_hom(f, g)
    return equal_mor(f.f0, g.f0) and equal_mor(f.f1, g.f1)


def compose(f: OneMor, g: OneMor) -> OneMor:
    """f then g."""
    if f.dst != g.src:
        raise DimensionMismatch("non-composable 1-morphisms")
    return OneMor(f.src, g.dst, mcompose(f.f1, g.f1), mcompose(f.f0, g.f0),
                  check=False)


class TwoMor:
    """2-morphism frm => to between parallel 1-morphisms, carried by s."""

    __slots__ = ("frm", "to", "s")

    def __init__(self, frm: OneMor, to: OneMor, s: ModMor, check: bool = True):
        _same_hom(frm, to)
        if s.src != frm.src.M0 or s.dst != frm.dst.M1:
            raise DimensionMismatch("homotopy component endpoints")
        if check:
            if not is_valid_mor(s):
                raise InvalidMorphism("homotopy is not a module morphism")
            d_dst = frm.dst.d
            d_src = frm.src.d
            if not equal_mor(to.f0, frm.f0 + mcompose(s, d_dst)):
                raise InvalidMorphism("degree-0 homotopy identity fails")
            if not equal_mor(to.f1, frm.f1 + mcompose(d_src, s)):
                raise InvalidMorphism("degree-1 homotopy identity fails")
        self.frm = frm
        self.to = to
        self.s = s

    @staticmethod
    def identity(f: OneMor) -> "TwoMor":
        return TwoMor(f, f, ModMor.zero(f.src.M0, f.dst.M1), check=False)

    def inverse(self) -> "TwoMor":
        return TwoMor(self.to, self.frm, -self.s, check=False)

    def is_null(self) -> bool:
        return one_mor_equal(self.to, OneMor.zero(self.frm.src, self.frm.dst))

    def __repr__(self):
        return f"TwoMor(s={self.s.mat.tolists()})"


def two_mor_equal(a: TwoMor, b: TwoMor) -> bool:
    return equal_mor(a.s, b.s)


def null_homotopy(of: OneMor, s: ModMor, check: bool = True) -> TwoMor:
    """The 2-morphism of => 0 carried by s."""
    return TwoMor(of, OneMor.zero(of.src, of.dst), s, check=check)


def zero_null_homotopy(of: OneMor) -> TwoMor:
    """Canonical cell for a composite that is already the zero morphism."""
    return null_homotopy(of, ModMor.zero(of.src.M0, of.dst.M1))


def vcomp(a: TwoMor, b: TwoMor) -> TwoMor:
    """Vertical composition: homotopies add."""
    if not one_mor_equal(a.to, b.frm):
        raise DimensionMismatch("non-composable 2-morphisms")
    return TwoMor(a.frm, b.to, a.s + b.s, check=False)


def whisker_left(h: OneMor, a: TwoMor) -> TwoMor:
    """h∘a : compose(frm, h) => compose(to, h) for a: frm => to into h.src."""
    if a.frm.dst != h.src:
        raise DimensionMismatch("whisker_left endpoints")
    return TwoMor(compose(a.frm, h), compose(a.to, h),
                  mcompose(a.s, h.f1), check=False)


def whisker_right(a: TwoMor, h: OneMor) -> TwoMor:
    """a∘h : compose(h, frm) => compose(h, to) for h into a's source."""
    if h.dst != a.frm.src:
        raise DimensionMismatch("whisker_right endpoints")
    return TwoMor(compose(h, a.frm), compose(h, a.to),
                  mcompose(h.f0, a.s), check=False)


# ---------------------------------------------------------------------------
# pi invariants
# ---------------------------------------------------------------------------

def pi0(m: TwoModule) -> FPModule:
    """Objects up to isomorphism: cokernel of the structure map."""
    return cokernel(m.d)[0]


def _pi1_data(m: TwoModule) -> Tuple[FPModule, ModMor]:
    if m._pi1 is None:
        m._pi1 = kernel(m.d)
    return m._pi1


def pi1(m: TwoModule) -> FPModule:
    """Automorphisms of zero: kernel of the structure map."""
    return _pi1_data(m)[0]


def pi0_mor(f: OneMor) -> ModMor:
    return ModMor(pi0(f.src), pi0(f.dst), f.f0.mat, check=False)


def pi1_mor(f: OneMor) -> ModMor:
    ksrc, isrc = _pi1_data(f.src)
    kdst, idst = _pi1_data(f.dst)
    return factor_through(idst, mcompose(isrc, f.f1))


def is_pi_trivial(m: TwoModule) -> bool:
    return invariant_factors(pi0(m)) == [] and invariant_factors(pi1(m)) == []


def pi_profile(m: TwoModule) -> Tuple[List[int], List[int]]:
    return invariant_factors(pi0(m)), invariant_factors(pi1(m))


def is_essentially_surjective(f: OneMor) -> bool:
    return is_epi(pi0_mor(f))


def is_faithful(f: OneMor) -> bool:
    return is_mono(pi1_mor(f))


def is_full(f: OneMor) -> bool:
    return is_epi(pi1_mor(f)) and is_mono(pi0_mor(f))


def is_equivalence(f: OneMor) -> bool:
    return is_full(f) and is_faithful(f) and is_essentially_surjective(f)


# ---------------------------------------------------------------------------
# biproduct
# ---------------------------------------------------------------------------

@dataclass
class BiproductResult:
    total: TwoModule
    inj1: OneMor
    inj2: OneMor
    proj1: OneMor
    proj2: OneMor


def biproduct(a: TwoModule, b: TwoModule) -> BiproductResult:
    """Degreewise direct sum with the canonical injections/projections."""
    if a.ring != b.ring:
        raise DimensionMismatch("biproduct over different rings")
    s1, i1a, i1b, p1a, p1b = direct_sum(a.M1, b.M1)
    s0, i0a, i0b, p0a, p0b = direct_sum(a.M0, b.M0)
    d = ModMor(s1, s0, block([[a.d.mat, Matrix.zeros(a.ring, a.M0.gens, b.M1.gens)],
                              [Matrix.zeros(a.ring, b.M0.gens, a.M1.gens), b.d.mat]]),
               check=False)
    total = TwoModule(s1, s0, d, check=False)
    return BiproductResult(
        total,
        OneMor(a, total, i1a, i0a, check=False),
        OneMor(b, total, i1b, i0b, check=False),
        OneMor(total, a, p1a, p0a, check=False),
        OneMor(total, b, p1b, p0b, check=False),
    )


# ---------------------------------------------------------------------------
# relative kernel
# ---------------------------------------------------------------------------

@dataclass
class RelKernelResult:
    """Kernel of F relative to phi: G∘F => 0.

    K.M0 is the module of pairs (a, b) with F.f0(a) + d(b) = 0 and
    G.f1(b) = phi.s(a); ``incl`` embeds it into A.M0 (+) B.M1, and
    ``to_a`` / ``to_b`` are the two coordinate projections of ``incl``.
    """

    K: TwoModule
    e: OneMor
    eps: TwoMor
    incl: ModMor
    to_a: ModMor
    to_b: ModMor
    F: OneMor
    phi: TwoMor
    G: OneMor


def _check_null_homotopy_of(phi: TwoMor, comp: OneMor, what: str):
    if not phi.is_null():
        raise CompatibilityError(f"{what}: cell is not a null homotopy")
    if not one_mor_equal(phi.frm, comp):
        raise CompatibilityError(f"{what}: cell is not a homotopy of the composite")


def relative_kernel(F: OneMor, phi: TwoMor, G: OneMor) -> RelKernelResult:
    """Relative kernel of  A --F--> B --G--> C  along phi: G∘F => 0."""
    if F.dst != G.src:
        raise DimensionMismatch("relative kernel of a non-composable pair")
    _check_null_homotopy_of(phi, compose(F, G), "relative kernel")
    A, B, C = F.src, F.dst, G.dst
    ring = A.ring
    dom, dom_ia, dom_ib, dom_pa, dom_pb = direct_sum(A.M0, B.M1)
    cod, *_ = direct_sum(B.M0, C.M1)
    theta = ModMor(dom, cod,
                   block([[F.f0.mat, B.d.mat],
                          [-phi.s.mat, G.f1.mat]]), check=False)
    kmod, incl = kernel(theta)
    to_a = mcompose(incl, dom_pa)
    to_b = mcompose(incl, dom_pb)
    dk = factor_through(incl, ModMor(A.M1, dom,
                                     vstack([A.d.mat, -F.f1.mat]), check=False))
    K = TwoModule(A.M1, kmod, dk, check=False)
    e = OneMor(K, A, ModMor.identity(A.M1), to_a, check=False)
    eps = null_homotopy(compose(e, F), to_b, check=False)
    return RelKernelResult(K, e, eps, incl, to_a, to_b, F, phi, G)


def rk_compatible(res: RelKernelResult, E: OneMor, psi: TwoMor) -> bool:
    """Is psi: F∘E => 0 compatible with the defining cell phi?"""
    lhs = whisker_left(res.G, psi).s          # G.f1 ∘ psi.s
    rhs = whisker_right(res.phi, E).s         # phi.s ∘ E.f0
    return equal_mor(lhs, rhs)


def rk_factorize(res: RelKernelResult, E: OneMor, psi: TwoMor
                 ) -> Tuple[OneMor, TwoMor]:
    """Universal property: factor (E, psi) through (e, eps).

    Returns (E', psi') with psi': e∘E' => E; E' sends k to the pair
    (E.f0(k), psi.s(k)).
    """
    if E.dst != res.F.src:
        raise DimensionMismatch("factorization target mismatch")
    _check_null_homotopy_of(psi, compose(E, res.F), "rk_factorize")
    if not rk_compatible(res, E, psi):
        raise CompatibilityError("cell incompatible with the kernel's defining cell")
    K = res.K
    dom = res.incl.dst
    pair = ModMor(E.src.M0, dom, vstack([E.f0.mat, psi.s.mat]), check=False)
    f0 = factor_through(res.incl, pair)
    eprime = OneMor(E.src, K, E.f1, f0)
    psiprime = TwoMor(compose(eprime, res.e), E,
                      ModMor.zero(E.src.M0, res.F.src.M1))
    return eprime, psiprime


def rk_unique_cell(res: RelKernelResult,
                   fac1: Tuple[OneMor, TwoMor],
                   fac2: Tuple[OneMor, TwoMor]) -> TwoMor:
    """The unique 2-morphism between two factorizations of the same (E, psi)."""
    (e1, psi1), (e2, psi2) = fac1, fac2
    return TwoMor(e1, e2, psi1.s - psi2.s)


# ---------------------------------------------------------------------------
# relative cokernel
# ---------------------------------------------------------------------------

@dataclass
class RelCokernelResult:
    """Cokernel of G relative to phi: G∘F => 0.

    Q.M0 = C.M0 and Q.M1 = (B.M0 (+) C.M1) / N where N is spanned by the
    columns (F.f0 a, phi.s a) and (d_B m, -G.f1 m); d_Q[b, c] =
    G.f0(b) + d_C(c).  That d_Q kills N is the tested well-definedness
    invariant pinning the signs.
    """

    Q: TwoModule
    p: OneMor
    pi: TwoMor
    F: OneMor
    phi: TwoMor
    G: OneMor


def relative_cokernel(F: OneMor, phi: TwoMor, G: OneMor) -> RelCokernelResult:
    if F.dst != G.src:
        raise DimensionMismatch("relative cokernel of a non-composable pair")
    _check_null_homotopy_of(phi, compose(F, G), "relative cokernel")
    A, B, C = F.src, F.dst, G.dst
    ring = A.ring
    amb, *_ = direct_sum(B.M0, C.M1)
    n_cols = hstack([
        vstack([F.f0.mat, phi.s.mat]),
        vstack([B.d.mat, -G.f1.mat]),
    ])
    qm1 = FPModule(ring, amb.gens, hstack([amb.rel, n_cols]))
    dq = ModMor(qm1, C.M0, hstack([G.f0.mat, C.d.mat]))  # checked: kills N
    Q = TwoModule(qm1, C.M0, dq, check=False)
    p = OneMor(C, Q,
               ModMor(C.M1, qm1,
                      vstack([Matrix.zeros(ring, B.M0.gens, C.M1.gens),
                              Matrix.identity(ring, C.M1.gens)]), check=False),
               ModMor.identity(C.M0), check=False)
    pi_s = ModMor(B.M0, qm1,
                  vstack([-Matrix.identity(ring, B.M0.gens),
                          Matrix.zeros(ring, C.M1.gens, B.M0.gens)]), check=False)
    pi = null_homotopy(compose(G, p), pi_s)
    return RelCokernelResult(Q, p, pi, F, phi, G)


def rc_compatible(res: RelCokernelResult, E: OneMor, psi: TwoMor) -> bool:
    """Is psi: E∘G => 0 compatible with the defining cell phi?"""
    lhs = whisker_left(E, res.phi).s          # E.f1 ∘ phi.s
    rhs = whisker_right(psi, res.F).s         # psi.s ∘ F.f0
    return equal_mor(lhs, rhs)


def rc_factorize(res: RelCokernelResult, E: OneMor, psi: TwoMor
                 ) -> Tuple[OneMor, TwoMor]:
    """Universal property: factor (E, psi) through (p, pi).

    Returns (E', psi') with psi': E'∘p => E; E' agrees with E on objects
    and sends the class [b, c] to -psi.s(b) + E.f1(c).
    """
    if E.src != res.G.dst:
        raise DimensionMismatch("factorization source mismatch")
    _check_null_homotopy_of(psi, compose(res.G, E), "rc_factorize")
    if not rc_compatible(res, E, psi):
        raise CompatibilityError("cell incompatible with the cokernel's defining cell")
    Q = res.Q
    f1 = ModMor(Q.M1, E.dst.M1, hstack([-psi.s.mat, E.f1.mat]))
    eprime = OneMor(Q, E.dst, f1, ModMor(Q.M0, E.dst.M0, E.f0.mat, check=False))
    psiprime = TwoMor(compose(res.p, eprime), E,
                      ModMor.zero(E.src.M0, E.dst.M1))
    return eprime, psiprime


def rc_unique_cell(res: RelCokernelResult,
                   fac1: Tuple[OneMor, TwoMor],
                   fac2: Tuple[OneMor, TwoMor]) -> TwoMor:
    (e1, psi1), (e2, psi2) = fac1, fac2
    return TwoMor(e1, e2, psi1.s - psi2.s)


# ---------------------------------------------------------------------------
# exactness
# ---------------------------------------------------------------------------

def comparison_into_kernel(F: OneMor, phi: TwoMor, G: OneMor,
                           psi_next: Optional[TwoMor] = None,
                           H: Optional[OneMor] = None
                           ) -> Tuple[OneMor, RelKernelResult]:
    """The canonical comparison A -> Ker(G, psi_next) induced by (F, phi).

    With no following data the plain kernel of G is used (H = 0, psi_next
    the canonical cell).
    """
    if H is None:
        zero = TwoModule.zero(G.dst.ring)
        H = OneMor.zero(G.dst, zero)
        psi_next = zero_null_homotopy(compose(G, H))
    elif psi_next is None:
        psi_next = zero_null_homotopy(compose(G, H))
    res = relative_kernel(G, psi_next, H)
    cmp_mor, _ = rk_factorize(res, F, phi)
    return cmp_mor, res


def check_relative_two_exact(F: OneMor, phi: TwoMor, G: OneMor,
                             psi_next: Optional[TwoMor] = None,
                             H: Optional[OneMor] = None) -> bool:
    """2-exactness at the middle of (F, phi, G): the comparison into the
    (relative) kernel of G is full and essentially surjective."""
    cmp_mor, _ = comparison_into_kernel(F, phi, G, psi_next, H)
    return is_full(cmp_mor) and is_essentially_surjective(cmp_mor)


def is_extension(F: OneMor, phi: TwoMor, G: OneMor) -> bool:
    """Extension: faithful first leg, essentially surjective second leg,
    2-exact at all three spots.

    Operationally: Ker(F, phi) is pi-trivial (left edge), the middle
    comparison is full + essentially surjective, and Coker(phi, G) is
    pi-trivial (right edge, the dual comparison).
    """
    if not is_faithful(F):
        return False
    if not is_essentially_surjective(G):
        return False
    try:
        left = relative_kernel(F, phi, G)
    except CompatibilityError:
        return False
    if not is_pi_trivial(left.K):
        return False
    if not check_relative_two_exact(F, phi, G):
        return False
    right = relative_cokernel(F, phi, G)
    return is_pi_trivial(right.Q)
