mod common;

use common::{form, model, table};
use gencx::cohomology::{
    cohomology, coords_form, form_coords, lemma_check, massey_quadruple, massey_triple, symplectic_existence, Cochain,
    Existence,
};
use gencx::exterior::{format_form, Basis, Form};
use gencx::linalg::{Cq, Field, Matrix, Subspace};
use proptest::prelude::*;

fn cochain(s: &str, n: usize, k: usize) -> Cochain {
    Cochain::new(k, form_coords(n, k, &form(s, n)))
}

#[test]
fn table_betti_numbers() {
    for r in table() {
        let b = cohomology(&model(&r.algebra)).betti();
        assert_eq!((b[1], b[2]), (r.b1, r.b2), "row {} {}", r.row, r.algebra);
    }
}

#[test]
fn euler_characteristic_vanishes_on_table() {
    for r in table() {
        let ring = cohomology(&model(&r.algebra));
        assert_eq!(ring.coh.euler_characteristic(), 0, "row {}", r.row);
        let b = ring.betti();
        for k in 0..=6 {
            assert_eq!(b[k], b[6 - k], "Poincaré duality, row {}", r.row);
        }
    }
}

#[test]
fn heisenberg_massey_product() {
    let h = model("(0,0,12)");
    let ring = cohomology(&h);
    let mp = massey_triple(&h, &ring.coh, &cochain("1", 3, 1), &cochain("2", 3, 1), &cochain("1", 3, 1), None).unwrap();
    assert_eq!(format_form(&coords_form(3, 2, &mp.representative.v)), "-2*13");
    assert_eq!(mp.indeterminacy.as_ref().unwrap().dim(), 0);
    assert!(mp.nonvanishing);
    assert_eq!(ring.class_of(&form("-2*13", 3)).unwrap(), mp.class);
}

#[test]
fn massey_verdict_is_choice_independent() {
    let h = model("(0,0,12)");
    let ring = cohomology(&h);
    let (a, b) = (cochain("1", 3, 1), cochain("2", 3, 1));
    let base = massey_triple(&h, &ring.coh, &a, &b, &a, None).unwrap();
    for (s, t) in [("1", "2"), ("2", "-1"), ("1+2", "3*1")] {
        let shifted =
            massey_triple(&h, &ring.coh, &a, &b, &a, Some((&cochain(s, 3, 1), &cochain(t, 3, 1)))).unwrap();
        assert_eq!(shifted.nonvanishing, base.nonvanishing);
        let diff: Vec<Cq> = shifted.class.iter().zip(&base.class).map(|(x, y)| x.clone() - y.clone()).collect();
        assert!(shifted.indeterminacy.as_ref().unwrap().contains(&diff));
    }
}

#[test]
fn massey_requires_vanishing_products() {
    let t3 = model("(0,0,0)");
    let ring = cohomology(&t3);
    let r = massey_triple(&t3, &ring.coh, &cochain("1", 3, 1), &cochain("2", 3, 1), &cochain("3", 3, 1), None);
    assert!(r.is_err());
}

#[test]
fn quadruple_product_on_filiform() {
    // ⟨e1, e1, e1, e2⟩-type products live on the filiform algebra
    let m = model("(0,0,12,13)");
    let ring = cohomology(&m);
    let e1 = cochain("1", 4, 1);
    let e2 = cochain("2", 4, 1);
    let q = massey_quadruple(&m, &ring.coh, &e2, &e1, &e1, &e1);
    match q {
        Ok(p) => assert!(ring.coh.is_closed(p.representative.deg, &p.representative.v)),
        Err(e) => panic!("{}", e),
    }
}

#[test]
fn lefschetz_kernels_on_product_of_heisenbergs() {
    let m = model("(0,0,12,0,0,45)");
    let ring = cohomology(&m);
    let rep = ring.lefschetz_report(&form("14+23+56", 6)).unwrap();
    assert!(!rep.passes);
    let h1: Subspace = ring.lefschetz_kernel(&form("14+23+56", 6), 1).unwrap();
    let expect1 = Subspace::span(h1.ambient(), vec![ring.class_of(&form("2", 6)).unwrap(), ring.class_of(&form("5", 6)).unwrap()]);
    assert_eq!(h1, expect1);
    let h2 = ring.lefschetz_kernel(&form("14+23+56", 6), 2).unwrap();
    let expect2 = Subspace::span(h2.ambient(), vec![ring.class_of(&form("25", 6)).unwrap()]);
    assert_eq!(h2, expect2);
    assert_eq!(rep.level(1).kernel, vec!["2", "5"]);
    assert_eq!(rep.level(2).kernel, vec!["25"]);
}

#[test]
fn kodaira_thurston_lefschetz_fails() {
    let m = model("(0,0,0,12)");
    let rep = cohomology(&m).lefschetz_report(&form("14+23", 4)).unwrap();
    assert!(!rep.passes);
    assert_eq!(rep.level(1).kernel, vec!["1"]);
    let t4 = cohomology(&gencx::liealg::LieModel::abelian(4));
    assert!(t4.lefschetz_report(&form("12+34", 4)).unwrap().passes);
}

#[test]
fn lefschetz_rejects_bad_forms() {
    let ring = cohomology(&model("(0,0,0,12)"));
    assert!(ring.lefschetz_report(&form("12", 4)).is_err());
    assert!(ring.lefschetz_report(&form("12+34", 4)).is_err());
}

#[test]
fn eight_dimensional_example() {
    let m = model("(0,0,12,13,14,15,16,36-45-27)");
    let ring = cohomology(&m);
    assert_eq!(ring.betti(), vec![1, 2, 3, 4, 4, 4, 3, 2, 1]);
    let printed: Vec<Vec<Cq>> =
        ["23", "34-25", "17"].iter().map(|s| ring.class_of(&form(s, 8)).unwrap()).collect();
    assert_eq!(Subspace::span(3, printed).dim(), 3);
    let rep = symplectic_existence(&m).unwrap();
    assert_eq!(rep.verdict, Existence::Impossible);
}

#[test]
fn symplectic_existence_verdicts() {
    assert_eq!(symplectic_existence(&model("(0,0,0,0,0,12+34)")).unwrap().verdict, Existence::Impossible);
    let t6 = symplectic_existence(&gencx::liealg::LieModel::abelian(6)).unwrap();
    assert_eq!(t6.verdict, Existence::Exists);
    let w = form(t6.witness.as_deref().unwrap(), 6);
    assert!(!w.wedge_pow(3).is_zero());
    let kt = symplectic_existence(&model("(0,0,0,12)")).unwrap();
    assert_eq!(kt.verdict, Existence::Exists);
}

#[test]
fn symplectic_column_agrees_with_existence() {
    for r in table().into_iter().filter(|r| [1, 6, 14, 32, 33].contains(&r.row)) {
        let v = symplectic_existence(&model(&r.algebra)).unwrap().verdict;
        if r.symplectic == "—" {
            assert_eq!(v, Existence::Impossible, "row {}", r.row);
        } else {
            assert_eq!(v, Existence::Exists, "row {}", r.row);
        }
    }
}

#[test]
fn twisted_cohomology_of_compact_group() {
    let su2 = model(r#"{"n":3,"d":["23","-13","12"],"H":"123"}"#);
    let s = su2.direct_sum(&su2).unwrap();
    let rep = cohomology(&s).twisted_report();
    assert_eq!((rep.twisted.even, rep.twisted.odd), (0, 0));
    assert!(rep.agree);
    let untwisted = cohomology(&su2.with_twist(Form::zero(3)).unwrap());
    assert_eq!(untwisted.betti(), vec![1, 0, 0, 1]);
}

#[test]
fn twisted_cohomology_of_torus() {
    let m = model(r#"{"n":3,"d":["0","0","0"],"H":"123"}"#);
    let rep = cohomology(&m).twisted_report();
    assert_eq!((rep.twisted.even, rep.twisted.odd), (3, 3));
    assert!(rep.agree);
}

#[test]
fn lemma_check_for_d_and_zero() {
    let m = model("(0,0,12)");
    let basis = Basis::full(3);
    let d = m.d_h_matrix();
    let z = Matrix::zeros(basis.len(), basis.len());
    let v = lemma_check(&basis, &d, &z).unwrap();
    assert!(!v.holds);
    assert!(lemma_check(&basis, &d, &d.add(&Matrix::identity(basis.len()))).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn prop_cup_product_independent_of_representatives(row in 0usize..34, seed in prop::collection::vec(-2i64..=2, 30)) {
        let r = &table()[row];
        let m = model(&r.algebra);
        let ring = cohomology(&m);
        let reps1 = ring.rep_forms(1);
        let reps2 = ring.rep_forms(2);
        // perturb every degree-2 representative by the differential of a 1-form
        let mut it = seed.iter().cycle();
        let shifted: Vec<Form> = reps2.iter().map(|r| {
            let mut x = Form::zero(6);
            for k in 1..=6 { x = x + Form::gen(6, k).scale(&Cq::from_int(*it.next().unwrap())); }
            r.clone() + m.d(&x)
        }).collect();
        for a in &reps1 {
            for (b, b2) in reps2.iter().zip(&shifted) {
                prop_assert_eq!(ring.class_of_degree(3, &a.wedge(b)).unwrap(), ring.class_of_degree(3, &a.wedge(b2)).unwrap());
            }
        }
    }

    #[test]
    fn prop_exact_forms_have_zero_class(row in 0usize..34, c in prop::collection::vec(-3i64..=3, 15)) {
        let m = model(&table()[row].algebra);
        let ring = cohomology(&m);
        let basis = Basis::degree(6, 2);
        let x = basis.form(&c.iter().map(|&v| Cq::from_int(v)).collect::<Vec<_>>());
        let dx = m.d(&x);
        prop_assert!(ring.is_exact(&dx));
        prop_assert!(ring.class_of_degree(3, &dx).unwrap().iter().all(|v| v.is_zero()));
    }
}
