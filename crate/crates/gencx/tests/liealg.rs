mod common;

use common::{form, model, table};
use gencx::exterior::{format_form, Form};
use gencx::liealg::{restrict, LieModel};
use gencx::linalg::Cq;
use gencx::Error;
use proptest::prelude::*;

#[test]
fn table_algebras_round_trip() {
    for r in table() {
        let m = model(&r.algebra);
        assert_eq!(LieModel::parse(&m.to_shorthand()).unwrap(), m, "row {}", r.row);
        assert_eq!(LieModel::parse(&m.to_json()).unwrap(), m, "row {}", r.row);
    }
}

#[test]
fn shorthand_differentials() {
    let kt = model("(0,0,0,12)");
    assert_eq!(kt.d(&form("34", 4)), form("-123", 4));
    assert_eq!(kt.d(&form("4", 4)), form("12", 4));
    assert!(kt.d(&form("13", 4)).is_zero());
}

#[test]
fn jacobi_failure_is_reported() {
    assert_eq!(LieModel::parse("(0,0,12,34)").unwrap_err(), Error::Jacobi(4));
}

#[test]
fn twist_must_be_closed() {
    let r = LieModel::parse(r#"{"n":5,"d":["0","0","0","12","0"],"H":"345"}"#);
    assert!(r.is_err());
    let ok = LieModel::parse(r#"{"n":4,"d":["0","0","0","12"],"H":"123"}"#).unwrap();
    assert_eq!(ok.h(), &form("123", 4));
}

#[test]
fn non_nilpotent_algebras() {
    let su2 = model(r#"{"n":3,"d":["23","-13","12"],"H":"123"}"#);
    assert!(matches!(su2.filtration(), Err(Error::NotNilpotent(_))));
    let s = su2.direct_sum(&su2).unwrap();
    assert_eq!(s.n(), 6);
    assert_eq!(s.de(4), &form("56", 6));
    assert_eq!(s.h(), &form("123+456", 6));
}

#[test]
fn d_squares_to_zero_on_table() {
    for r in table() {
        let m = model(&r.algebra);
        let d = m.d_h_matrix();
        assert!(d.mul(&d).is_zero(), "row {}", r.row);
    }
    let su2 = model(r#"{"n":3,"d":["23","-13","12"],"H":"123"}"#);
    let d = su2.direct_sum(&su2).unwrap().d_h_matrix();
    assert!(d.mul(&d).is_zero());
}

#[test]
fn filtration_of_heisenberg_product() {
    let f = model("(0,0,12,13,14,15)").filtration_report().unwrap();
    assert_eq!(f.dims, vec![2, 3, 4, 5, 6]);
    assert_eq!(f.nil_index, 5);
    assert_eq!(f.jump_from, Some(1));
    assert_eq!(f.excluded_types, vec![2, 3]);
    assert_eq!(f.generator_degrees, vec![1, 1, 2, 3, 4, 5]);
}

#[test]
fn filtration_exclusions_on_table() {
    let mut excluded_three = Vec::new();
    for r in table() {
        let rep = model(&r.algebra).filtration_report().unwrap();
        if rep.excluded_types.contains(&3) {
            excluded_three.push(r.row);
            assert_eq!(r.type3, "—", "row {} excludes type 3 but lists one", r.row);
        }
        if rep.excluded_types.contains(&2) {
            assert_eq!(r.type2, "—", "row {}", r.row);
        }
    }
    assert!(!excluded_three.is_empty());
}

#[test]
fn eight_dimensional_filtration() {
    let m = model("(0,0,12,13,14,15,16,36-45-27)");
    let f = m.filtration_report().unwrap();
    assert_eq!(f.dims, vec![2, 3, 4, 5, 6, 7, 8]);
    assert_eq!(f.excluded_types, vec![2, 3, 4]);
}

#[test]
fn nilpotent_degree_drops_under_d() {
    for r in table() {
        let m = model(&r.algebra);
        let f = m.filtration().unwrap();
        for k in 1..=6 {
            let e = Form::gen(6, k);
            let nil = f.nil_degree(&e).unwrap();
            if nil >= 2 {
                assert_eq!(f.nil_degree(&m.d(&e)), Some(nil - 1), "row {} e{}", r.row, k);
            }
        }
    }
}

#[test]
fn restriction_to_subspaces() {
    let v = |xs: &[i64]| xs.iter().map(|&x| Cq::from_int(x)).collect::<Vec<_>>();
    let a = form("25", 6);
    let r = restrict(&[v(&[0, 1, 0, 0, 0, 0]), v(&[0, 0, 0, 0, 1, 0])], &a).unwrap();
    assert_eq!(format_form(&r), "12");
    let r = restrict(&[v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])], &form("12", 4)).unwrap();
    assert!(r.is_zero());
    assert!(restrict(&[v(&[1, 0]), v(&[2, 0])], &form("12", 2)).is_err());
}

#[test]
fn variables_and_coframe() {
    let m = model(r#"{"n":3,"d":["0","0","0"],"H":"0","vars":["x"]}"#);
    let f = gencx::exterior::parse_form_vars("x2", 3, &["x".to_string()]).unwrap();
    // d(x e2) = dx ∧ e2 = e12
    assert_eq!(format!("{}", gencx::exterior::format_form_ext(&m.d(&f))), "12");
}

fn nilpotent_model() -> impl Strategy<Value = LieModel> {
    // strictly upper-triangular structure constants give a nilpotent algebra once Jacobi holds
    prop::collection::vec(-1i64..=1, 10).prop_filter_map("Jacobi", |c| {
        let n = 5;
        let mut de = vec![Form::zero(n); n];
        let mut idx = 0;
        for k in 2..n {
            for i in 0..k {
                for j in i + 1..k {
                    if idx < c.len() && (i + j + k) % 2 == 0 {
                        de[k].add_term((1 << i) | (1 << j), Cq::from_int(c[idx]));
                        idx += 1;
                    }
                }
            }
        }
        LieModel::new(de, Form::zero(n)).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prop_d_squared_zero(m in nilpotent_model()) {
        let d = m.d_h_matrix();
        prop_assert!(d.mul(&d).is_zero());
    }

    #[test]
    fn prop_shorthand_round_trip(m in nilpotent_model()) {
        prop_assert_eq!(LieModel::parse(&m.to_shorthand()).unwrap(), m.clone());
        prop_assert_eq!(LieModel::parse(&m.to_json()).unwrap(), m);
    }
}
