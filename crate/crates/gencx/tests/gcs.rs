mod common;

use common::{form, model, table, Row};
use gencx::exterior::{exp_form, format_form, Basis, Form, GenBivector, GenVector, Multivector};
use gencx::gcs::{
    courant, courant_tensor, kahler_pair_check, spinor_of, submanifold_check, verify_spinor, GCStructure,
};
use gencx::liealg::LieModel;
use gencx::linalg::{Cq, Field, Subspace};
use proptest::prelude::*;

fn spinor(cell: &str, symplectic: bool) -> Form {
    if symplectic {
        exp_form(&form(cell, 6).scale(&Cq::i()))
    } else {
        form(cell, 6)
    }
}

/// Every listed cell as (row, column type, spinor).
fn cells(rows: &[Row]) -> Vec<(usize, usize, Form)> {
    let mut out = Vec::new();
    for r in rows {
        for (cell, kind) in [(&r.type3, 3), (&r.type2, 2), (&r.type1, 1), (&r.symplectic, 0)] {
            if cell != "—" {
                out.push((r.row, kind, spinor(cell, kind == 0)));
            }
        }
    }
    out
}

fn structure(m: &str, rho: &str) -> GCStructure {
    GCStructure::from_spinor(&model(m), &form(rho, model(m).n())).unwrap()
}

#[test]
fn table_structures_are_closed_pure_spinors() {
    let rows = table();
    let mut failures = Vec::new();
    let mut count = 0;
    for (row, kind, rho) in cells(&rows) {
        let m = model(&rows[row - 1].algebra);
        let g = GCStructure::from_spinor(&m, &rho).unwrap();
        count += 1;
        assert_eq!(g.kind, kind, "row {}", row);
        assert!(g.report.pure && g.report.nondegenerate, "row {}", row);
        if !g.report.closed {
            failures.push((row, kind));
        }
    }
    assert_eq!(count, 97);
    // the single printed cell that is not closed (nor integrable)
    assert_eq!(failures, vec![(31, 2)]);
}

#[test]
fn misprinted_cell_and_its_repair() {
    let m = model("(0,0,0,0,13+42,14+23)");
    let printed = GCStructure::from_spinor(&m, &form("(1+i2)(3+i4)exp i(56)", 6)).unwrap();
    assert!(!printed.report.integrable);
    assert!(!printed.involutive());
    assert!(printed.euler_check().is_err());
    let repaired = GCStructure::from_spinor(&m, &form("(1+i2)(3-i4)exp i(56)", 6)).unwrap();
    assert!(repaired.report.closed);
    assert_eq!(repaired.kind, 2);
}

#[test]
fn structure_examples() {
    let m = "(0,0,12,13,23,14+25)";
    let c = structure(m, "(1+i2)(4+i5)(3+i6)");
    assert!(c.report.is_gcs() && c.report.closed);
    assert_eq!(c.kind, 3);
    let t2 = structure(m, "(1+i2)(4+i5)exp i(36)");
    assert_eq!(t2.kind, 2);
    assert!(t2.report.closed);
    let t4 = LieModel::abelian(4);
    let r = verify_spinor(&t4, &form("12", 4), format_form, |_| None).unwrap();
    assert!(r.pure && !r.nondegenerate);
    assert!(GCStructure::from_spinor(&t4, &form("12", 4)).is_err());
    assert!(GCStructure::from_spinor(&t4, &form("1+2", 4)).is_err());
    assert!(verify_spinor(&t4, &Form::zero(4), format_form, |_| None).is_err());
}

#[test]
fn report_json_fields() {
    let c = structure("(0,0,0,0,0,0)", "exp(i(12+34+56))");
    let v = serde_json::to_value(&c.report).unwrap();
    for key in ["pure", "nondegenerate", "integrable", "closed", "type", "twist-class", "witnesses"] {
        assert!(v.get(key).is_some(), "{}", key);
    }
    assert_eq!(v["type"], 0);
}

#[test]
fn j_is_an_orthogonal_complex_structure() {
    let rows = table();
    for (row, _, rho) in cells(&rows).into_iter().step_by(7) {
        let g = GCStructure::from_spinor(&model(&rows[row - 1].algebra), &rho).unwrap();
        let n = g.n();
        let j2 = g.j.mul(&g.j);
        assert_eq!(j2, gencx::linalg::Matrix::identity(2 * n).scale(&Cq::from_int(-1)));
        assert!(g.j.to_rows().iter().flatten().all(|c| c.is_real()));
        let basis = GenVector::<Cq>::standard_basis(n);
        for a in &basis {
            for b in &basis {
                let ja = GenVector::from_coords(&g.j.mul_vec(&a.to_coords()));
                let jb = GenVector::from_coords(&g.j.mul_vec(&b.to_coords()));
                assert_eq!(ja.pairing(&jb), a.pairing(b));
            }
        }
        assert_eq!(g.l.dim(), n);
        assert_eq!(g.l.intersection(&g.lbar).unwrap().dim(), 0);
    }
}

#[test]
fn grading_is_the_eigenspace_decomposition() {
    let rows = table();
    let full = Basis::full(6);
    for (row, _, rho) in cells(&rows) {
        let g = GCStructure::from_spinor(&model(&rows[row - 1].algebra), &rho).unwrap();
        let total: usize = (-3..=3).map(|k| g.uk(k).dim()).sum();
        assert_eq!(total, 64);
        for k in -3i64..=3 {
            for b in g.uk(k).basis() {
                let a = full.form(b);
                assert_eq!(g.jay_action(&a), a.scale(&Cq::gauss(0, k)), "row {} k {}", row, k);
            }
        }
        assert_eq!(g.jay_action(&g.rho), g.rho.scale(&Cq::gauss(0, 3)));
    }
}

#[test]
fn mukai_pairing_respects_grading() {
    let rows = table();
    for (row, _, rho) in cells(&rows) {
        let g = GCStructure::from_spinor(&model(&rows[row - 1].algebra), &rho).unwrap();
        let ranks = g.mukai_ranks();
        for a in 0..7 {
            for b in 0..7 {
                if a + b == 6 {
                    assert_eq!(ranks[a][b], g.u[a].dim(), "row {}", row);
                } else {
                    assert_eq!(ranks[a][b], 0, "row {}", row);
                }
            }
        }
    }
}

#[test]
fn complex_grading_is_bidegree() {
    let g = structure("(0,0,0,0,0,0)", "(1+i2)(3+i4)(5+i6)");
    let dims: Vec<usize> = (-3..=3).map(|k| g.uk(k).dim()).collect();
    assert_eq!(dims, vec![1, 6, 15, 20, 15, 6, 1]);
    assert_eq!(g.grading_of(&form("1+i2", 6)), Some(1));
    assert_eq!(g.grading_of(&form("1-i2", 6)), Some(-1));
    assert_eq!(g.grading_of(&form("(1+i2)(1-i2)", 6)), Some(0));
    assert_eq!(g.grading_of(&form("(1+i2)(3+i4)(1-i2)", 6)), Some(1));
    assert_eq!(g.grading_of(&form("1", 6)), None);
}

#[test]
fn symplectic_grading_top_pieces() {
    let g = structure("(0,0,0,0,0,0)", "exp(i(12+34+56))");
    let dims: Vec<usize> = (-3..=3).map(|k| g.uk(k).dim()).collect();
    assert_eq!(dims, vec![1, 6, 15, 20, 15, 6, 1]);
    assert_eq!(g.grading_of(&exp_form(&form("-i(12+34+56)", 6))), Some(-3));
}

#[test]
fn generalized_calabi_yau_has_no_del() {
    let rows = table();
    for (row, _, rho) in cells(&rows).into_iter().filter(|c| c.0 != 31) {
        let g = GCStructure::from_spinor(&model(&rows[row - 1].algebra), &rho).unwrap();
        let (del, delbar) = g.del_split(&g.rho).unwrap();
        assert!(del.is_zero() && delbar.is_zero());
    }
}

#[test]
fn del_split_of_non_closed_forms() {
    let g = structure("(0,0,0,0,13-24,14+23)", "(1+i2)(3+i4)(5+i6)");
    let a = form("5+i6", 6);
    let k = g.grading_of(&a).unwrap();
    assert_eq!(k, 1);
    let (del, delbar) = g.del_split(&a).unwrap();
    assert_eq!(del.clone() + delbar.clone(), g.model.d(&a));
    assert!(del.is_zero() || g.grading_of(&del) == Some(2));
    assert!(delbar.is_zero() || g.grading_of(&delbar) == Some(0));
    assert!(g.del_split(&form("1+5", 6)).is_err());
}

#[test]
fn euler_characteristic_from_e1() {
    let rows = table();
    for (row, _, rho) in cells(&rows).into_iter().filter(|c| c.0 != 31) {
        let g = GCStructure::from_spinor(&model(&rows[row - 1].algebra), &rho).unwrap();
        let e = g.euler_check().unwrap();
        assert!(e.holds, "row {}", row);
        assert_eq!(e.alternating_sum, 0);
    }
}

#[test]
fn symplectic_e1_matches_betti() {
    for (m, w) in [("(0,0,0,0,0,0)", "12+34+56"), ("(0,0,0,12,0,0)", "14+23+56")] {
        let lm = model(m);
        let g = GCStructure::from_spinor(&lm, &exp_form(&form(w, 6).scale(&Cq::i()))).unwrap();
        let e1 = g.canonical_e1().unwrap();
        let b = gencx::cohomology::cohomology(&lm).betti();
        for k in 0..=6usize {
            // dim H_∂^{n−k} = b_k, stored at index (n − k) + n
            assert_eq!(e1[6 - k], b[k], "{} k={}", m, k);
        }
    }
}

#[test]
fn ddj_lemma_verdicts() {
    let kahler = structure("(0,0,0,0,0,0)", "(1+i2)(3+i4)(5+i6)");
    assert!(kahler.ddj_lemma().unwrap().holds);
    let kt = GCStructure::from_spinor(&model("(0,0,0,12)"), &exp_form(&form("i(14+23)", 4))).unwrap();
    let v = kt.ddj_lemma().unwrap();
    assert!(!v.holds);
    assert!(!v.witnesses.is_empty());
}

#[test]
fn integrability_routes_agree_on_table() {
    let rows = table();
    for (row, _, rho) in cells(&rows) {
        let g = GCStructure::from_spinor(&model(&rows[row - 1].algebra), &rho).unwrap();
        assert_eq!(g.report.integrable, g.involutive(), "row {}", row);
    }
}

#[test]
fn courant_bracket_is_derived_bracket() {
    let su2 = model(r#"{"n":3,"d":["23","-13","12"],"H":"123"}"#);
    for m in [su2.direct_sum(&LieModel::abelian(1)).unwrap(), model("(0,0,12,13)")] {
        let n = m.n();
        let basis = GenVector::<Cq>::standard_basis(n);
        let full = Basis::full(n);
        for a in &basis {
            for b in &basis {
                let c = courant(&m, a, b);
                let da = |f: &Form| m.d_h(&a.act(f)) + a.act(&m.d_h(f));
                for i in 0..full.len() {
                    let phi: Form = full.element(i);
                    assert_eq!(da(&b.act(&phi)) - b.act(&da(&phi)), c.act(&phi));
                }
            }
        }
    }
}

#[test]
fn b_field_transforms() {
    let g = structure("(0,0,0,0)", "exp(i(12+34))");
    let same = g.transform_b(&Form::zero(4), false).unwrap();
    assert_eq!(same.rho, g.rho);
    let t = g.transform_b(&form("13", 4), false).unwrap();
    assert_eq!(t.rho, exp_form(&form("13+i(12+34)", 4)));
    assert!(t.report.is_gcs() && t.report.closed);
    let full = Basis::full(4);
    let moved = g.b_transported_grading(&form("13", 4));
    for (a, b) in moved.iter().zip(&t.u) {
        assert_eq!(a, b);
    }
    assert_eq!(full.len(), 16);
}

#[test]
fn b_field_equivariance_on_table() {
    let rows = table();
    for (row, _, rho) in cells(&rows).into_iter().step_by(5) {
        let m = model(&rows[row - 1].algebra);
        let g = GCStructure::from_spinor(&m, &rho).unwrap();
        // closed B: the differential of a 1-form plus a closed generator product
        let b = m.d(&form("6", 6)) + form("12", 6);
        assert!(m.d(&b).is_zero());
        let t = g.transform_b(&b, false).unwrap();
        assert_eq!(t.report.integrable, g.report.integrable);
        assert_eq!(g.b_transported_grading(&b), t.u, "row {}", row);
    }
}

#[test]
fn non_closed_b_needs_a_twist_shift() {
    let m = model("(0,0,0,12)");
    let g = GCStructure::from_spinor(&m, &form("(1+i3)(2+i4)", 4));
    let g = match g {
        Ok(g) => g,
        Err(_) => GCStructure::from_spinor(&m, &exp_form(&form("i(14+23)", 4))).unwrap(),
    };
    let b = form("34", 4);
    assert!(g.transform_b(&b, false).is_err());
    let t = g.transform_b(&b, true).unwrap();
    assert_eq!(t.model.h(), &(m.h().clone() - m.d(&b)));
    assert_eq!(t.report.integrable, g.report.integrable);
}

#[test]
fn hyperkahler_forms_are_b_transforms() {
    let t4 = LieModel::abelian(4);
    let w1 = form("(12+34)-(13+42)", 4);
    let s = GCStructure::from_spinor(&t4, &exp_form(&w1.scale(&Cq::i()))).unwrap();
    let t = s.transform_b(&form("14+23", 4), false).unwrap();
    assert_eq!(t.rho, exp_form(&(form("14+23", 4) + w1.scale(&Cq::i()))));
}

#[test]
fn beta_transform_reverifies() {
    let g = structure("(0,0,0,0,0,0)", "exp(i(12+34+56))");
    let beta = Multivector::gen(6, 1).wedge(&Multivector::gen(6, 2));
    let t = g.transform_beta(&beta).unwrap();
    assert!(t.report.is_gcs());
    assert_eq!(t.rho, gencx::exterior::exp_act(&gencx::exterior::ExpKind::BetaContract(beta), &g.rho).unwrap());
}

fn vec6(re: [i64; 6], im: [i64; 6]) -> GenVector {
    GenVector::new((0..6).map(|k| Cq::gauss(re[k], im[k])).collect(), vec![Cq::zero(); 6])
}

#[test]
fn iwasawa_deformation() {
    let g = structure("(0,0,0,0,13-24,14+23)", "(1+i2)(3+i4)(5+i6)");
    assert!(g.report.closed);
    let mut beta = GenBivector::new();
    beta.push(Cq::from_frac(-1, 4), vec6([0, 0, 1, 0, 0, 0], [0, 0, 0, -1, 0, 0]), vec6([0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, -1]));
    assert!(g.maurer_cartan(&beta).unwrap().is_zero());
    let d = g.deform(&beta).unwrap();
    let printed = exp_form(&form("-(35-46)-i(45+36)", 6)).wedge(&form("1+i2", 6));
    // the deformed spinor is the printed closed form up to the overall factor −1
    assert_eq!(d.structure.rho, -printed);
    assert_eq!(d.structure.kind, 1);
    assert!(d.structure.report.closed);
}

#[test]
fn beta_deformation_drops_type_by_two() {
    for m in ["(0,0,0,0,0,0)", "(0,0,0,0,13-24,14+23)"] {
        let g = structure(m, "(1+i2)(3+i4)(5+i6)");
        let mut beta = GenBivector::new();
        beta.push(Cq::one(), vec6([0, 0, 1, 0, 0, 0], [0, 0, 0, -1, 0, 0]), vec6([0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, -1]));
        let d = g.deform(&beta).unwrap();
        assert_eq!(d.structure.kind, 1, "{}", m);
    }
}

#[test]
fn deformation_by_zero_is_identity() {
    let g = structure("(0,0,0,0,13-24,14+23)", "(1+i2)(3+i4)(5+i6)");
    assert_eq!(g.deform(&GenBivector::new()).unwrap().structure.rho, g.rho);
}

#[test]
fn maurer_cartan_failure_is_reported() {
    let g = structure("(0,0,0,0,13-24,14+23)", "(1+i2)(3+i4)(5+i6)");
    let (_, dual) = g.dual_bases();
    let mut found = false;
    for a in 0..6 {
        for b in a + 1..6 {
            let mut eps = GenBivector::new();
            eps.push(Cq::one(), dual[a].clone(), dual[b].clone());
            let mc = g.maurer_cartan(&eps).unwrap();
            if !mc.is_zero() {
                found = true;
                assert!(g.deform(&eps).is_err());
            }
        }
    }
    assert!(found);
    let mut outside = GenBivector::new();
    outside.push(Cq::one(), GenVector::vector(6, 1), GenVector::vector(6, 2));
    assert!(g.maurer_cartan(&outside).is_err());
}

#[test]
fn kahler_pairs() {
    let t6 = LieModel::abelian(6);
    let c = GCStructure::from_spinor(&t6, &form("(1+i2)(3+i4)(5+i6)", 6)).unwrap();
    let s = GCStructure::from_spinor(&t6, &exp_form(&form("i(12+34+56)", 6))).unwrap();
    let (r, pair) = kahler_pair_check(&c, &s).unwrap();
    assert!(r.valid);
    let pair = pair.unwrap();
    assert_eq!(pair.metric, gencx::linalg::Matrix::identity(6));
    assert!(pair.b.is_zero());
    assert_eq!(pair.c_plus.dim(), 6);
    let (r, pair) = kahler_pair_check(&s, &s).unwrap();
    assert!(!r.valid && pair.is_none());
    assert_eq!(r.failing_minor, Some(1));
}

#[test]
fn hyperkahler_pair_normalization() {
    let t4 = LieModel::abelian(4);
    let (wi, wj, wk) = (form("12+34", 4), form("13+42", 4), form("14+23", 4));
    let mk = |b: &Form, re: Cq, w: &Form| {
        let rho = exp_form(&(b.clone() + w.scale(&(Cq::i() * re))));
        GCStructure::from_spinor(&t4, &rho).unwrap()
    };
    let half = Cq::from_frac(1, 2);
    let printed1 = mk(&wk, half.clone(), &(wi.clone() - wj.clone()));
    let printed2 = mk(&-wk.clone(), half, &(wi.clone() + wj.clone()));
    let (r, _) = kahler_pair_check(&printed1, &printed2).unwrap();
    assert!(!r.commute);
    let one = Cq::one();
    let fixed1 = mk(&wk, one.clone(), &(wi.clone() - wj.clone()));
    let fixed2 = mk(&-wk.clone(), one, &(wi + wj));
    let (r, pair) = kahler_pair_check(&fixed1, &fixed2).unwrap();
    assert!(r.valid);
    assert_eq!(r.intersection_dim, 2);
    let pair = pair.unwrap();
    assert!(pair.b.is_zero());
    assert_eq!(pair.metric, pair.metric.transpose());
}

#[test]
fn submanifold_criteria() {
    let t4 = LieModel::abelian(4);
    let v = |xs: [i64; 4]| xs.iter().map(|&x| Cq::from_int(x)).collect::<Vec<_>>();
    let s = GCStructure::from_spinor(&t4, &exp_form(&form("i(12+34)", 4))).unwrap();
    let lag = submanifold_check(&s, &[v([1, 0, 0, 0]), v([0, 0, 1, 0])], &Form::zero(4)).unwrap();
    assert!(lag.invariant);
    assert_eq!(lag.coisotropic, Some(true));
    let sym = submanifold_check(&s, &[v([1, 0, 0, 0]), v([0, 1, 0, 0])], &Form::zero(4)).unwrap();
    assert!(!sym.invariant);
    assert_eq!(sym.coisotropic, Some(false));
    let c = GCStructure::from_spinor(&t4, &form("(1+i2)(3+i4)", 4)).unwrap();
    let line = submanifold_check(&c, &[v([1, 0, 0, 0]), v([0, 1, 0, 0])], &Form::zero(4)).unwrap();
    assert!(line.invariant);
    assert_eq!(line.coisotropic, None);
    let bad = submanifold_check(&c, &[v([1, 0, 0, 0]), v([0, 0, 1, 0])], &Form::zero(4)).unwrap();
    assert!(!bad.invariant);
    let whole = submanifold_check(&s, &[v([1, 0, 0, 0]), v([0, 1, 0, 0]), v([0, 0, 1, 0]), v([0, 0, 0, 1])], &form("13-24", 4))
        .unwrap();
    assert!(whole.invariant);
    assert!(whole.transverse.is_some());
}

#[test]
fn real_invariant_isotropics_sit_in_degree_zero() {
    let t4 = LieModel::abelian(4);
    let s = GCStructure::from_spinor(&t4, &exp_form(&form("i(12+34)", 4))).unwrap();
    let w = [GenVector::vector(4, 1), GenVector::vector(4, 3), GenVector::covector(4, 2), GenVector::covector(4, 4)];
    let rho = spinor_of(4, &w).unwrap();
    assert_eq!(s.grading_of(&rho), Some(0));
    let c = GCStructure::from_spinor(&t4, &form("(1+i2)(3+i4)", 4)).unwrap();
    let w = [GenVector::vector(4, 1), GenVector::vector(4, 2), GenVector::covector(4, 3), GenVector::covector(4, 4)];
    let rho = spinor_of(4, &w).unwrap();
    assert_eq!(rho.lowest_degree(), Some(2));
    assert_eq!(c.grading_of(&rho), Some(0));
    assert!(spinor_of(4, &w[..3]).is_err());
}

fn random_two_form(c: &[i64]) -> Form {
    Basis::degree(6, 2).form(&c.iter().map(|&x| Cq::from_int(x)).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn prop_integrability_routes_agree_under_perturbation(
        cell in 0usize..97,
        c in prop::collection::vec(-1i64..=1, 15),
    ) {
        let rows = table();
        let (row, _, rho) = cells(&rows).swap_remove(cell);
        let m = model(&rows[row - 1].algebra);
        let b = random_two_form(&c);
        let perturbed = gencx::exterior::exp_form(&b).wedge(&rho);
        let g = GCStructure::from_spinor(&m, &perturbed).unwrap();
        prop_assert_eq!(g.report.integrable, g.involutive());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn prop_maurer_cartan_is_courant_tensor_of_graph(c in prop::collection::vec(-2i64..=2, 15)) {
        let g = structure("(0,0,0,0,13-24,14+23)", "(1+i2)(3+i4)(5+i6)");
        let (l, dual) = g.dual_bases();
        let mut eps = GenBivector::new();
        let mut idx = 0;
        for a in 0..6 {
            for b in a + 1..6 {
                if c[idx] != 0 {
                    eps.push(Cq::from_int(c[idx]), dual[a].clone(), dual[b].clone());
                }
                idx += 1;
            }
        }
        let mc = g.maurer_cartan(&eps).unwrap();
        let two = Cq::from_int(2);
        let graph = |x: &GenVector| {
            let mut out = x.clone();
            for (k, u, w) in &eps.terms {
                let s = k.clone() * two.clone();
                out = out + w.scale(&(s.clone() * u.pairing(x))) - u.scale(&(s * w.pairing(x)));
            }
            out
        };
        let gr: Vec<GenVector> = l.iter().map(graph).collect();
        for a in 0..6 {
            for b in a + 1..6 {
                for cc in b + 1..6 {
                    let t = courant_tensor(&g.model, &gr[a], &gr[b], &gr[cc]);
                    prop_assert_eq!(t, mc.coeff((1 << a) | (1 << b) | (1 << cc)));
                }
            }
        }
    }
}

#[test]
fn lbar_subspace_of_structure() {
    let g = structure("(0,0,0,0,0,0)", "(1+i2)(3+i4)(5+i6)");
    // T^{1,0} ⊕ T^{*0,1}
    let v = vec6([1, 0, 0, 0, 0, 0], [0, -1, 0, 0, 0, 0]);
    assert!(g.lbar.contains(&v.to_coords()));
    assert!(g.l.contains(&v.conj().to_coords()));
    let s: Subspace = g.l.sum(&g.lbar).unwrap();
    assert_eq!(s.dim(), 12);
}
