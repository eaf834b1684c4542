use gencx::exterior::*;
use gencx::linalg::{Cq, Field};
use proptest::prelude::*;

fn f(s: &str, n: usize) -> Form {
    parse_form(s, n).unwrap()
}

fn gv(x: &[i64], xi: &[i64]) -> GenVector {
    GenVector::new(x.iter().map(|&a| Cq::from_int(a)).collect(), xi.iter().map(|&a| Cq::from_int(a)).collect())
}

#[test]
fn wedge_basics() {
    let e1 = Form::<Cq>::gen(2, 1);
    let e2 = Form::<Cq>::gen(2, 2);
    assert!(e1.wedge(&e1).is_zero());
    assert_eq!(e1.wedge(&e2), f("12", 2));
    assert_eq!(e2.wedge(&e1), -f("12", 2));
    assert_eq!(f("()+i*12", 2).wedge(&f("()-i*12", 2)), Form::one(2));
    assert!(e1.try_wedge(&Form::gen(3, 1)).is_err());
}

#[test]
fn contraction_convention() {
    let d1 = Multivector::<Cq>::gen(2, 1);
    let d2 = Multivector::<Cq>::gen(2, 2);
    assert_eq!(d1.contract(&f("12", 2)).unwrap(), f("2", 2));
    assert!(d2.contract(&f("1", 2)).unwrap().is_zero());
    // (∂1∧∂2)⌟e12 = ∂2⌟(∂1⌟e12) = +1
    let both = d1.wedge(&d2).contract(&f("12", 2)).unwrap();
    let nested = d2.contract(&d1.contract(&f("12", 2)).unwrap()).unwrap();
    assert_eq!(both, nested);
    assert_eq!(both, Form::one(2));
}

#[test]
fn clifford_examples() {
    let v = gv(&[1, 0], &[1, 0]);
    assert_eq!(v.act(&Form::one(2)), f("1", 2));
    assert_eq!(v.act(&f("1", 2)), Form::one(2));
    assert_eq!(v.pairing(&v), Cq::one());
    assert_eq!(gv(&[1, 0], &[0, 1]).act(&f("1", 2)), f("()-12", 2));
    let w = gv(&[0, 0], &[1, 0]);
    assert!(w.act(&w.act(&f("()+2+12", 2))).is_zero());
}

#[test]
fn mukai_examples() {
    let a = f("exp(i*12)", 2);
    let b = f("exp(-i*12)", 2);
    assert_eq!(mukai(&a, &b).unwrap(), f("-2*i*12", 2));
    assert!(mukai(&Form::<Cq>::one(3), &Form::one(3)).unwrap().is_zero());
    assert_eq!(mukai(&f("1+i2", 2), &f("1-i2", 2)).unwrap(), f("-2*i*12", 2));
}

#[test]
fn exponentials() {
    let a = f("34", 4);
    assert_eq!(exp_act(&ExpKind::BWedge(Form::zero(4)), &a).unwrap(), a);
    assert_eq!(exp_act(&ExpKind::BWedge(f("12", 4)), &a).unwrap(), f("34+1234", 4));
    assert!(exp_act(&ExpKind::BWedge(f("1", 4)), &a).is_err());
    assert!(exp_act(&ExpKind::BWedge(f("12+3", 4)), &a).is_err());
    let beta = Multivector(f("12", 4));
    assert_eq!(exp_act(&ExpKind::BetaContract(beta), &f("1234", 4)).unwrap(), f("1234+34", 4));
}

#[test]
fn bivector_action_matches_b_and_beta() {
    let n = 3;
    let a = f("()+12+i*23+123+2", n);
    // ∂1∧∂2 acts as (∂1∧∂2)⌟
    let u = GenVector::vector(n, 1);
    let w = GenVector::vector(n, 2);
    let beta = Multivector::<Cq>::gen(n, 1).wedge(&Multivector::gen(n, 2));
    assert_eq!(bivector_act(&u, &w, &a), beta.contract(&a).unwrap());
    // e1∧e2 acts as −e12∧
    let u = GenVector::covector(n, 1);
    let w = GenVector::covector(n, 2);
    assert_eq!(bivector_act(&u, &w, &a), -f("12", n).wedge(&a));
}

#[test]
fn parser_round_trip_and_notation() {
    for (s, n) in [
        ("(1+i2)(4+i5)(3+i6)", 6),
        ("(1+i2)(4+i5)exp(i*36)", 6),
        ("exp(i*(12+34+56))", 6),
        ("exp(3+i1)6", 6),
        ("2*34-1/3*i*56+()", 6),
        ("[10]1", 10),
    ] {
        let a = f(s, n);
        let printed = format_form(&a);
        assert_eq!(parse_form(&printed, n).unwrap(), a, "{} -> {}", s, printed);
    }
    assert_eq!(f("exp(3+i1)6", 6), f("()+36+i*16", 6));
    assert_eq!(f("0", 3), Form::zero(3));
    assert_eq!(f("13−24", 4), f("13-24", 4));
    assert!(parse_form("17", 6).is_err());
    assert!(parse_form("1+", 3).is_err());
    assert!(parse_form("exp(()+1)", 3).is_err());
    assert_eq!(format_form(&f("i*()", 2)), "i*()");
}

#[test]
fn parser_with_variables() {
    let vars = vec!["x1".to_string(), "x2".to_string()];
    let a = parse_form_vars("(x1+i*x2)3", 3, &vars).unwrap();
    let c = a.coeff(0b100);
    assert!(c.as_constant().is_none());
    assert_eq!(c.partial(1), gencx::linalg::RatFn::from_cq(Cq::i()));
}

fn arb_form(n: usize) -> impl Strategy<Value = Form> {
    prop::collection::vec((0u32..(1 << n), -3i64..=3, -3i64..=3), 0..6).prop_map(move |ts| {
        let mut a = Form::zero(n);
        for (m, re, im) in ts {
            a.add_term(m, Cq::gauss(re, im));
        }
        a
    })
}

fn arb_genvector(n: usize) -> impl Strategy<Value = GenVector> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 2 * n)
        .prop_map(|v| GenVector::from_coords(&v.into_iter().map(|(a, b)| Cq::gauss(a, b)).collect::<Vec<_>>()))
}

fn homogeneous(a: &Form, k: usize) -> Form {
    a.part(k)
}

proptest! {
    #[test]
    fn clifford_square(v in arb_genvector(4), a in arb_form(4)) {
        prop_assert_eq!(v.act(&v.act(&a)), a.scale(&v.pairing(&v)));
    }

    #[test]
    fn graded_commutative(a in arb_form(5), b in arb_form(5), p in 0usize..=5, q in 0usize..=5) {
        let (x, y) = (homogeneous(&a, p), homogeneous(&b, q));
        let s = if (p * q) % 2 == 0 { Cq::one() } else { -Cq::one() };
        prop_assert_eq!(x.wedge(&y), y.wedge(&x).scale(&s));
    }

    #[test]
    fn reversal_is_antiautomorphism(a in arb_form(5), b in arb_form(5)) {
        prop_assert_eq!(a.reversal().reversal(), a.clone());
        prop_assert_eq!(a.wedge(&b).reversal(), b.reversal().wedge(&a.reversal()));
    }

    #[test]
    fn contraction_is_derivation(i in 1usize..=5, a in arb_form(5), b in arb_form(5), p in 0usize..=5) {
        let x = homogeneous(&a, p);
        let s = if p % 2 == 0 { Cq::one() } else { -Cq::one() };
        let lhs = x.wedge(&b).contract_gen(i);
        let rhs = x.contract_gen(i).wedge(&b) + x.wedge(&b.contract_gen(i)).scale(&s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_round_trip(a in arb_form(6)) {
        prop_assert_eq!(parse_form(&format_form(&a), 6).unwrap(), a);
    }
}
