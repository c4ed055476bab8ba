import random

import pytest

from twohom import catalog
from twohom.exactlin import Matrix, ZZ
from twohom.fpmod import FPModule, ModMor, is_iso
from twohom.twomod import (
    OneMor,
    TwoModule,
    biproduct,
    compose,
    is_pi_trivial,
    pi0_mor,
    pi1_mor,
    pi_profile,
    zero_null_homotopy,
)
from twohom.complex2 import validate_chain_homotopy, validate_complex
from twohom.resolution import resolve
from twohom.derived import (
    FunctorSpec,
    apply,
    check_long_sequence,
    check_projective_vanishing,
    classical_tor_oracle,
    derive,
    derive_mor,
    exactness_at_a_spot,
    find_null_homotopy,
    is_right_relative_two_exact,
    long_sequence,
    resolution_independence,
    solve_two_cell,
)

T2 = FunctorSpec.tensor_with(FPModule.cyclic(ZZ, 2))
TI = FunctorSpec.identity()


class TestApply:
    def test_identity_is_noop(self):
        m = catalog.mul_two()
        assert apply(TI, m) is m

    def test_tensor_rank_one(self):
        assert pi_profile(apply(T2, catalog.z_free())) == ([2], [])

    def test_tensor_resolution_complex(self):
        res = resolve(catalog.z_mod(2), 2)
        tc = apply(T2, res.complex())
        ok, why = validate_complex(tc)
        assert ok, why
        # 2 (x) Z/2 = 0: the differential dies
        assert tc.diff(1).f0.mat.tolists() in ([[2]], [[-2]], [[0]])
        d = tc.diff(1).f0.mat.entry(0, 0)
        assert d % 2 == 0

    def test_tensor_preserves_biproduct_pi(self):
        # additive functors preserve biproducts at pi level
        rng = random.Random(8)
        for _ in range(15):
            a = catalog.z_mod(rng.choice([2, 3, 4]))
            b = catalog.z_mod(rng.choice([2, 3, 6]))
            t = FunctorSpec.tensor_with(FPModule.cyclic(ZZ, rng.choice([2, 4])))
            tb = apply(t, biproduct(a, b).total)
            parts = biproduct(apply(t, a), apply(t, b)).total
            assert pi_profile(tb) == pi_profile(parts)

    def test_tensor_preserves_biproduct_comparison(self):
        a, b = catalog.z_mod(4), catalog.z_mod(6)
        bp = biproduct(a, b)
        t = T2
        tb = apply(t, bp.total)
        tinj1, tinj2 = apply(t, bp.inj1), apply(t, bp.inj2)
        parts = biproduct(apply(t, a), apply(t, b))
        # canonical comparison T(A) x T(B) -> T(A x B)
        cmp_mor = compose(parts.proj1, tinj1) + compose(parts.proj2, tinj2)
        assert is_iso(pi0_mor(cmp_mor)) and is_iso(pi1_mor(cmp_mor))


class TestTorOracle:
    def test_tor0(self):
        assert classical_tor_oracle(FPModule.cyclic(ZZ, 4),
                                    FPModule.cyclic(ZZ, 6), 0) == [2]

    def test_tor1(self):
        assert classical_tor_oracle(FPModule.cyclic(ZZ, 4),
                                    FPModule.cyclic(ZZ, 6), 1) == [2]

    def test_free_flat(self):
        assert classical_tor_oracle(FPModule.free(ZZ, 3),
                                    FPModule.cyclic(ZZ, 4), 1) == []

    def test_coprime(self):
        assert classical_tor_oracle(FPModule.cyclic(ZZ, 2),
                                    FPModule.cyclic(ZZ, 3), 1) == []

    def test_rejects_modular_ring(self):
        from twohom.exactlin import RingSpec
        with pytest.raises(ValueError):
            classical_tor_oracle(FPModule.free(RingSpec.Zmod(4), 1),
                                 FPModule.free(RingSpec.Zmod(4), 1), 0)


class TestDerive:
    def test_tensor_on_z2(self):
        assert derive(T2, catalog.z_mod(2), 0, 2).pi == ([2], [2])
        assert derive(T2, catalog.z_mod(2), 1, 2).pi == ([2], [])

    def test_identity_on_shift(self):
        assert derive(TI, catalog.shift_mod(), 0, 2).pi == ([], [0])
        assert derive(TI, catalog.shift_mod(), 1, 2).pi == ([0], [])

    def test_free_objects_concentrated_in_zero(self):
        d0 = derive(T2, catalog.z_free(), 0, 2)
        assert d0.pi == ([2], [])
        for i in (1, 2):
            assert derive(T2, catalog.z_free(), i, 2).pi == ([], [])

    def test_window_against_oracle(self):
        for a in (2, 3, 4, 6):
            for b in (2, 3, 4, 6):
                m0 = FPModule.cyclic(ZZ, a)
                n = FPModule.cyclic(ZZ, b)
                t = FunctorSpec.tensor_with(n)
                res = resolve(TwoModule.discrete(m0), 4)
                tc = apply(t, res.complex())
                for i in range(3):
                    want = (classical_tor_oracle(m0, n, i),
                            classical_tor_oracle(m0, n, i + 1))
                    assert tc.homology(i).pi == want

    def test_degree_bound(self):
        with pytest.raises(ValueError):
            derive(T2, catalog.z_mod(2), 3, 2)


class TestDeriveMor:
    def test_identity_induces_identity(self):
        res = resolve(catalog.z_mod(2), 2)
        u = derive_mor(T2, OneMor.identity(catalog.z_mod(2)), 0, res, res)
        assert is_iso(pi0_mor(u)) and is_iso(pi1_mor(u))

    def test_zero_induces_zero(self):
        res = resolve(catalog.z_mod(2), 2)
        z = OneMor.zero(catalog.z_mod(2), catalog.z_mod(2))
        u = derive_mor(T2, z, 0, res, res)
        assert pi0_mor(u).is_zero_mor()

    def test_catalog_projection_tor_functoriality(self):
        res_src = resolve(catalog.z_free(), 2)
        res_dst = resolve(catalog.z_mod(2), 2)
        u = derive_mor(T2, catalog.projection(), 0, res_src, res_dst)
        # Tor_0 functoriality: Z/2 = Z (x) Z/2 --id--> Z/2 (x) Z/2
        assert is_iso(pi0_mor(u))


class TestResolutionIndependence:
    def test_same_resolution(self):
        res = resolve(catalog.z_mod(2), 2)
        w = resolution_independence(T2, catalog.z_mod(2), res, res, 0)
        assert w.certified

    def test_padded_variant(self):
        res1 = resolve(catalog.z_mod(2), 2)
        res2 = resolve(catalog.z_mod(2), 4)
        for i in (0, 1):
            w = resolution_independence(T2, catalog.z_mod(2), res1, res2, i)
            assert w.certified

    def test_free_with_distinct_cover_ranks(self):
        zf = catalog.z_free()
        res1 = resolve(zf, 2)
        # a fatter resolution of the same object: cover rank 2
        from twohom.resolution import assemble_resolution
        p0 = TwoModule.free(ZZ, 2)
        aug = OneMor(p0, zf, ModMor.zero(p0.M1, zf.M1),
                     ModMor(p0.M0, zf.M0, Matrix.from_rows(ZZ, [[1, 0]]),
                            check=False))
        p1 = TwoModule.free(ZZ, 1)
        f1 = OneMor(p1, p0, ModMor.zero(p1.M1, p0.M1),
                    ModMor(p1.M0, p0.M0, Matrix.from_rows(ZZ, [[0], [1]]),
                           check=False))
        p_zero = TwoModule.zero(ZZ)
        f2 = OneMor.zero(p_zero, p1)
        res2 = assemble_resolution(zf, [p0, p1, p_zero], [f1, f2], aug,
                                   ModMor.zero(p1.M0, zf.M1))
        from twohom.resolution import validate_resolution
        ok, why = validate_resolution(res2)
        assert ok, why
        for i in (0, 1):
            w = resolution_independence(T2, zf, res1, res2, i)
            assert w.certified


class TestRightExactness:
    def test_identity_functor(self):
        f, phi, g = catalog.catalog_extension()
        assert is_right_relative_two_exact(TI, f, phi, g)

    def test_tensor_z2(self):
        f, phi, g = catalog.catalog_extension()
        assert is_right_relative_two_exact(T2, f, phi, g)

    def test_a_spot_tor_obstruction(self):
        f, phi, g = catalog.catalog_extension()
        assert exactness_at_a_spot(TI, f, phi, g)
        assert not exactness_at_a_spot(T2, f, phi, g)

    def test_non_extension_rejected(self):
        zf = catalog.z_free()
        f = OneMor.zero(zf, zf)
        with pytest.raises(ValueError):
            is_right_relative_two_exact(T2, f,
                                        zero_null_homotopy(compose(f, f)), f)


class TestProjectiveVanishing:
    def test_rank_one(self):
        assert check_projective_vanishing(T2, catalog.z_free(), 2)

    def test_rank_two(self):
        assert check_projective_vanishing(T2, TwoModule.free(ZZ, 2), 2)

    def test_contrapositive(self):
        assert derive(T2, catalog.z_mod(2), 1, 2).pi != ([], [])

    def test_non_free_rejected(self):
        with pytest.raises(ValueError):
            check_projective_vanishing(T2, catalog.z_mod(2), 2)


class TestTwoCellSolver:
    def test_finds_zero_for_zero(self):
        z = OneMor.zero(catalog.mul_two(), catalog.mul_two())
        cell = find_null_homotopy(z)
        assert cell is not None

    def test_contractible_identity(self):
        idm = catalog.identity_mod()
        cell = find_null_homotopy(OneMor.identity(idm))
        assert cell is not None  # the identity of a contractible object dies

    def test_no_homotopy_when_pi_nonzero(self):
        m = catalog.z_mod(2)
        cell = find_null_homotopy(OneMor.identity(m))
        assert cell is None

    def test_side_conditions(self):
        # force a specific restriction along a map
        zf = catalog.z_free()
        idm = catalog.identity_mod()
        f = OneMor(zf, idm, ModMor.zero(zf.M1, idm.M1),
                   ModMor(zf.M0, idm.M0, Matrix.from_rows(ZZ, [[1]]),
                          check=False))
        target = ModMor(zf.M0, idm.M1, Matrix.from_rows(ZZ, [[-1]]),
                        check=False)
        cell = solve_two_cell(OneMor.identity(idm), OneMor.zero(idm, idm),
                              extra=[(f.f0, target)])
        assert cell is not None
        from twohom.fpmod import compose as mcompose, equal_mor
        assert equal_mor(mcompose(f.f0, cell.s), target)


class TestLongSequence:
    def test_catalog_ladder(self):
        f, phi, g = catalog.catalog_extension()
        seq = long_sequence(T2, f, phi, g, 1)
        pis = [(e.label, e.degree, e.homology.pi) for e in seq.entries]
        assert pis == [("A", 1, ([], [])), ("B", 1, ([], [])),
                       ("C", 1, ([2], [])), ("A", 0, ([2], [])),
                       ("B", 0, ([2], [])), ("C", 0, ([2], [2]))]
        by_name = dict(seq.maps)
        assert is_iso(pi0_mor(by_name["delta_1"]))
        assert pi0_mor(by_name["u_0"]).is_zero_mor()
        assert is_iso(pi0_mor(by_name["v_0"]))

    def test_catalog_checks_exact(self):
        f, phi, g = catalog.catalog_extension()
        seq = long_sequence(T2, f, phi, g, 1)
        detail = []
        assert check_long_sequence(seq, detail)
        assert len(detail) == 4
        assert all(ok for _, ok, _ in detail)

    def test_zero_delta_breaks_exactness(self):
        import dataclasses

        f, phi, g = catalog.catalog_extension()
        seq = long_sequence(T2, f, phi, g, 1)
        # sabotage: replace the connecting map by zero and re-solve the cells
        maps = [(name, OneMor.zero(mor.src, mor.dst) if name == "delta_1"
                 else mor) for name, mor in seq.maps]
        new_cells = []
        for k in range(len(maps) - 1):
            comp = compose(maps[k][1], maps[k + 1][1])
            cell = find_null_homotopy(comp)
            assert cell is not None  # composites with a zero map still die
            new_cells.append(cell)
        broken = dataclasses.replace(seq, maps=maps, cells=new_cells)
        assert not check_long_sequence(broken)

    def test_a_zero_degenerates(self):
        zf = catalog.z_free()
        zero = TwoModule.zero(ZZ)
        f = OneMor.zero(zero, zf)
        g = OneMor.identity(zf)
        phi = zero_null_homotopy(compose(f, g))
        seq = long_sequence(T2, f, phi, g, 1)
        by_name = dict(seq.maps)
        assert pi0_mor(by_name["delta_1"]).is_zero_mor()
        assert is_iso(pi0_mor(by_name["v_0"]))
        assert check_long_sequence(seq)

    def test_identity_functor_degenerates(self):
        f, phi, g = catalog.catalog_extension()
        seq = long_sequence(TI, f, phi, g, 1)
        by_name = dict(seq.maps)
        assert pi0_mor(by_name["delta_1"]).is_zero_mor()
        assert pi1_mor(by_name["delta_1"]).is_zero_mor()
        assert check_long_sequence(seq)

    def test_precondition_gate(self):
        zf = catalog.z_free()
        f = OneMor.zero(zf, zf)
        with pytest.raises(ValueError):
            long_sequence(T2, f, zero_null_homotopy(compose(f, f)), f, 1)

    def test_zero_extension(self):
        zero = TwoModule.zero(ZZ)
        z = OneMor.zero(zero, zero)
        seq = long_sequence(T2, z, zero_null_homotopy(compose(z, z)), z, 1)
        assert all(is_pi_trivial(e.homology.module) for e in seq.entries)
        assert check_long_sequence(seq)

    def test_all_cyclic_coefficients(self):
        f, phi, g = catalog.catalog_extension()
        for n in (2, 3, 4, 6):
            t = FunctorSpec.tensor_with(FPModule.cyclic(ZZ, n))
            seq = long_sequence(t, f, phi, g, 1)
            assert check_long_sequence(seq), n
            # L_1T(C) = Tor_1(Z/2, Z/n) exactly
            c1 = [e for e in seq.entries if e.label == "C" and e.degree == 1][0]
            want = classical_tor_oracle(FPModule.cyclic(ZZ, 2),
                                        FPModule.cyclic(ZZ, n), 1)
            assert pi_profile(c1.homology.module)[0] == want


def test_lemma1_functor_image_of_homotopy():
    from twohom.resolution import compare, homotopy_between_lifts, perturb_lift
    res = resolve(catalog.z_mod(2), 2)
    base = compare(OneMor.identity(catalog.z_mod(2)), res, res)
    other = perturb_lift(base, {0: Matrix.from_rows(ZZ, [[3]])})
    h = homotopy_between_lifts(base, other)
    th = apply(T2, h)
    ok, why = validate_chain_homotopy(th)
    assert ok, why
