mod common;

use common::{form, model};
use gencx::cohomology::cohomology;
use gencx::exterior::{exp_form, Basis, Form};
use gencx::liealg::LieModel;
use gencx::linalg::{Cq, Field};
use gencx::symplectic::SymplecticData;
use proptest::prelude::*;

fn data(m: &str, w: &str) -> SymplecticData {
    let m = model(m);
    let w = form(w, m.n());
    SymplecticData::new(&m, &w).unwrap()
}

fn t6() -> SymplecticData {
    data("(0,0,0,0,0,0)", "12+34+56")
}

fn kt() -> SymplecticData {
    data("(0,0,0,12)", "14+23")
}

fn hxh() -> SymplecticData {
    data("(0,0,12,0,0,45)", "14+23+56")
}

#[test]
fn star_on_the_plane() {
    let sd = data("(0,0)", "12");
    assert_eq!(sd.star_of(&form("()", 2)), form("12", 2));
    assert_eq!(sd.star_of(&form("1", 2)), form("-1", 2));
    assert_eq!(sd.star_of(&form("2", 2)), form("-2", 2));
    assert_eq!(sd.star_of(&form("12", 2)), form("()", 2));
    assert_eq!(sd.lambda_of(&form("12", 2)), form("-1*()", 2));
}

#[test]
fn star_pairs_one_forms_through_the_inverse() {
    // ω = e14 + e23 has ω^{-1}(e1, e4) = ω^{-1}(e2, e3) = −1
    let sd = kt();
    let inv = |a: usize, b: usize| match (a, b) {
        (1, 4) | (2, 3) => -1,
        (4, 1) | (3, 2) => 1,
        _ => 0,
    };
    for a in 1..=4 {
        for b in 1..=4 {
            let lhs = Form::gen(4, a).wedge(&sd.star_of(&Form::gen(4, b)));
            assert_eq!(lhs, sd.volume.scale(&Cq::from_int(inv(a, b))), "e{} e{}", a, b);
        }
    }
}

#[test]
fn volume_and_hop_on_functions() {
    let sd = hxh();
    assert_eq!(sd.volume, form("123456", 6));
    let one = form("()", 6);
    assert_eq!(sd.lambda_of(&sd.omega), one.scale(&Cq::from_int(-3)));
    assert_eq!(sd.apply(&sd.hop, &one), one.scale(&Cq::from_int(3)));
}

#[test]
fn relations_hold_on_shipped_models() {
    for sd in [t6(), kt(), hxh()] {
        let rep = sd.relations();
        assert!(rep.all_hold, "{:?}", rep);
        assert_eq!(rep.relations.len(), 12);
        assert_eq!(rep.get("**=Id"), Some(true));
    }
}

#[test]
fn delta_vanishes_on_the_torus() {
    assert!(t6().delta.is_zero());
    assert!(!kt().delta.is_zero());
}

#[test]
fn rejects_bad_forms() {
    let m = model("(0,0,0,12)");
    assert!(SymplecticData::new(&m, &form("12+34", 4)).is_err());
    assert!(SymplecticData::new(&LieModel::abelian(4), &form("12", 4)).is_err());
    assert!(SymplecticData::new(&LieModel::abelian(3), &form("12", 3)).is_err());
    let twisted = model("(0,0,0,0,0,0)").with_twist(form("123", 6)).unwrap();
    assert!(SymplecticData::new(&twisted, &form("12+34+56", 6)).is_err());
}

#[test]
fn phi_of_unit_and_a_one_form() {
    let sd = data("(0,0,0,0)", "12+34");
    let rho = exp_form(&sd.omega.scale(&Cq::i()));
    assert_eq!(sd.phi(&form("()", 4)), rho);
    assert_eq!(sd.phi(&form("1", 4)), rho.wedge(&form("1", 4)));
    let s = sd.structure().unwrap();
    assert_eq!(s.grading_of(&rho), Some(2));
    let (del, delbar) = s.del_split(&rho).unwrap();
    assert!(del.is_zero() && delbar.is_zero());
}

#[test]
fn phi_identities_with_grading_orientation() {
    // φ(Λ^k) = U^{n−k}, so d pairs with ∂̄ and δ with ∂; the literal pairing only survives d = 0
    let rep = t6().phi_report().unwrap();
    assert!(rep.as_stated.holds() && rep.swapped.holds() && rep.degenerates());
    for sd in [kt(), hxh()] {
        let rep = sd.phi_report().unwrap();
        assert!(rep.graded && rep.isomorphism);
        assert!(rep.swapped.holds(), "{:?}", rep.failures);
        assert!(!rep.as_stated.d_identity && !rep.as_stated.delta_identity);
        assert!(rep.degenerates());
        assert_eq!(rep.delbar_cohomology, rep.betti);
    }
    assert_eq!(kt().phi_report().unwrap().del_cohomology, vec![1, 3, 4, 3, 1]);
}

#[test]
fn phi_fails_on_a_basis_form_of_kt_as_stated() {
    let sd = kt();
    let s = sd.structure().unwrap();
    let a = form("4", 4);
    let (del, delbar) = s.del_split(&sd.phi(&a)).unwrap();
    let target = sd.phi(&form("12", 4));
    assert_ne!(del, target);
    assert_eq!(delbar, target);
}

fn lefschetz_deficits(sd: &SymplecticData) -> Vec<usize> {
    let ring = cohomology(&sd.model);
    let rep = ring.lefschetz_report(&sd.omega).unwrap();
    rep.levels.iter().map(|l| l.kernel_dim).collect()
}

#[test]
fn harmonic_classes() {
    let rep = t6().harmonic_report();
    assert!(rep.every_class_harmonic);
    for sd in [kt(), hxh()] {
        let n = sd.n();
        let rep = sd.harmonic_report();
        assert!(!rep.every_class_harmonic);
        // missing classes in degree n + j match the Lefschetz kernel on H^{n−j}
        for (k, ker) in lefschetz_deficits(&sd).into_iter().enumerate() {
            let level = &rep.levels[2 * n - k];
            assert_eq!(level.betti - level.harmonic_classes, ker, "degree {}", 2 * n - k);
        }
        for level in &rep.levels[..=n - 1] {
            assert_eq!(level.harmonic_classes, level.betti);
        }
    }
    let kt_levels = kt().harmonic_report().levels;
    assert_eq!((kt_levels[3].betti, kt_levels[3].harmonic_classes), (3, 2));
    let hh: Vec<(usize, usize)> = hxh().harmonic_report().levels.iter().map(|l| (l.betti, l.harmonic_classes)).collect();
    assert_eq!(hh, vec![(1, 1), (4, 4), (8, 8), (10, 8), (8, 7), (4, 2), (1, 1)]);
}

#[test]
fn primitive_decompositions_recombine() {
    let sd = hxh();
    let n2 = 6;
    for k in 0..=n2 {
        let b = Basis::degree(n2, k);
        for i in 0..b.len() {
            let a: Form = b.element(i);
            let parts = sd.primitive_decomposition(&a).unwrap();
            let mut sum = Form::zero(n2);
            for (r, p) in &parts {
                assert!(sd.lambda_of(p).is_zero());
                sum = sum + sd.omega.wedge_pow(*r).wedge(p);
            }
            assert_eq!(sum, a);
        }
    }
}

#[test]
fn lefschetz_constants_match_sl2_recursion() {
    // Λ L^j a = −j(m − j + 1) L^{j−1} a on primitive a with H-weight m = n − s
    for sd in [t6(), kt(), hxh()] {
        let n = sd.n() as i64;
        let consts = sd.lefschetz_constants();
        assert!(!consts.is_empty());
        for c in consts {
            let m = n - c.degree as i64;
            let expect: i64 = (1..=c.j as i64).map(|i| -i * (m - i + 1)).product();
            let v = c.value.expect("scalar on primitives");
            assert_eq!(v, Cq::from_int(expect));
            assert!(!v.is_zero());
        }
    }
}

#[test]
fn yan_merkulov_instances() {
    let e = t6().equivalence().unwrap();
    assert!(e.lefschetz && e.ddelta_lemma && e.harmonic && e.agree);
    for sd in [kt(), hxh()] {
        let e = sd.equivalence().unwrap();
        assert!(!e.lefschetz && !e.ddelta_lemma && !e.harmonic && e.agree);
    }
}

#[test]
fn report_json_keys() {
    let v: serde_json::Value = serde_json::to_value(kt().relations()).unwrap();
    assert_eq!(v["all_hold"], true);
    let v: serde_json::Value = serde_json::to_value(kt().lefschetz_constants()).unwrap();
    assert_eq!(v[0]["value"], "-2");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn relations_on_random_torus_forms(c in proptest::collection::vec(-3i64..=3, 6)) {
        let masks = [0b0011u32, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100];
        let mut w = Form::zero(4);
        for (m, x) in masks.iter().zip(&c) {
            w.add_term(*m, Cq::from_int(*x));
        }
        prop_assume!(!w.wedge_pow(2).is_zero());
        let sd = SymplecticData::new(&LieModel::abelian(4), &w).unwrap();
        prop_assert!(sd.relations().all_hold);
        prop_assert!(sd.phi_report().unwrap().degenerates());
    }

    #[test]
    fn relations_on_kt_forms(a in 1i64..=3, b in -3i64..=3, c in -2i64..=2) {
        // closed 2-forms a e14 + b e23 + c e13 on (0,0,0,12)
        let mut w = Form::zero(4);
        for (mask, x) in [(0b1001u32, a), (0b0110, b), (0b0101, c)] {
            w.add_term(mask, Cq::from_int(x));
        }
        prop_assume!(!w.wedge_pow(2).is_zero());
        let sd = SymplecticData::new(&model("(0,0,0,12)"), &w).unwrap();
        prop_assert!(sd.relations().all_hold);
        prop_assert!(sd.phi_report().unwrap().swapped.holds());
    }
}
