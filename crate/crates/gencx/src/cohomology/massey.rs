use super::complex::{CochainAlgebra, Cohomology};
use crate::linalg::{Cq, Field, Matrix, Subspace};
use crate::{Error, Result};

/// Homogeneous cochain in coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub deg: usize,
    pub v: Vec<Cq>,
}

impl Cochain {
    pub fn new(deg: usize, v: Vec<Cq>) -> Self {
        Cochain { deg, v }
    }

    /// `ā = (−1)^{deg} a`.
    pub fn bar(&self) -> Cochain {
        if self.deg % 2 == 0 {
            self.clone()
        } else {
            Cochain { deg: self.deg, v: self.v.iter().map(|x| -x.clone()).collect() }
        }
    }

    fn add(&self, o: &Cochain) -> Cochain {
        debug_assert_eq!(self.deg, o.deg);
        Cochain { deg: self.deg, v: self.v.iter().zip(&o.v).map(|(a, b)| a.clone() + b.clone()).collect() }
    }
}

fn mul<A: CochainAlgebra + ?Sized>(alg: &A, a: &Cochain, b: &Cochain) -> Cochain {
    let deg = a.deg + b.deg;
    if deg > alg.top_degree() {
        return Cochain::new(deg, Vec::new());
    }
    Cochain::new(deg, alg.mul(a.deg, &a.v, b.deg, &b.v))
}

fn primitive(coh: &Cohomology, x: &Cochain, what: &str) -> Result<Cochain> {
    if x.deg == 0 {
        return Err(Error::Undefined(format!("{} has degree 0", what)));
    }
    match coh.primitive(x.deg, &x.v) {
        Some(p) => Ok(Cochain::new(x.deg - 1, p)),
        None => Err(Error::Undefined(format!("{} is not exact", what))),
    }
}

/// A computed Massey product with the primitives that were used.
#[derive(Clone, Debug)]
pub struct MasseyProblem {
    /// `(i, j, a_ij)` for every defining entry, inputs included.
    pub entries: Vec<(usize, usize, Cochain)>,
    pub representative: Cochain,
    /// Class coordinates of the representative.
    pub class: Vec<Cq>,
    /// Indeterminacy in class coordinates, when it is computed (triple products).
    pub indeterminacy: Option<Subspace>,
    /// Triple products: the product does not contain zero. Quadruple products: the
    /// representative for the solved choice is not exact.
    pub nonvanishing: bool,
}

impl MasseyProblem {
    pub fn entry(&self, i: usize, j: usize) -> Option<&Cochain> {
        self.entries.iter().find(|(a, b, _)| *a == i && *b == j).map(|(_, _, c)| c)
    }
}

fn check_closed(coh: &Cohomology, xs: &[&Cochain]) -> Result<()> {
    for (i, x) in xs.iter().enumerate() {
        if !coh.is_closed(x.deg, &x.v) {
            return Err(Error::Invalid(format!("input {} is not closed", i + 1)));
        }
    }
    Ok(())
}

/// Span of `{a·y} + {x·c}` in class coordinates of degree `p+q+r−1`.
fn triple_indeterminacy<A: CochainAlgebra + ?Sized>(alg: &A, coh: &Cohomology, a: &Cochain, c: &Cochain, q: usize) -> Subspace {
    let deg = a.deg + q + c.deg - 1;
    let target = coh.betti_at(deg);
    let mut vs = Vec::new();
    let mut add = |x: Cochain| {
        if x.deg <= coh.top_degree() {
            vs.push(coh.class_coords(x.deg, &x.v).expect("products of cocycles are closed"));
        }
    };
    let ydeg = q + c.deg - 1;
    if ydeg <= coh.top_degree() {
        for y in coh.reps(ydeg) {
            add(mul(alg, a, &Cochain::new(ydeg, y.clone())));
        }
    }
    let xdeg = a.deg + q - 1;
    if xdeg <= coh.top_degree() {
        for x in coh.reps(xdeg) {
            add(mul(alg, &Cochain::new(xdeg, x.clone()), c));
        }
    }
    Subspace::span(target, vs)
}

/// Triple product `⟨a, b, c⟩` with `da_{02} = ā b`, `da_{13} = b̄ c` and representative
/// `ā a_{13} + ā_{02} c`. Optional closed shifts alter the primitive choice.
pub fn massey_triple<A: CochainAlgebra + ?Sized>(
    alg: &A,
    coh: &Cohomology,
    a: &Cochain,
    b: &Cochain,
    c: &Cochain,
    shifts: Option<(&Cochain, &Cochain)>,
) -> Result<MasseyProblem> {
    check_closed(coh, &[a, b, c])?;
    let mut a02 = primitive(coh, &mul(alg, &a.bar(), b), "ā·b")?;
    let mut a13 = primitive(coh, &mul(alg, &b.bar(), c), "b̄·c")?;
    if let Some((s02, s13)) = shifts {
        check_closed(coh, &[s02, s13])?;
        a02 = a02.add(s02);
        a13 = a13.add(s13);
    }
    let rep = mul(alg, &a.bar(), &a13).add(&mul(alg, &a02.bar(), c));
    let deg = rep.deg;
    if deg > coh.top_degree() {
        return Err(Error::Undefined("product lands above the top degree".into()));
    }
    let class = coh.class_coords(deg, &rep.v).expect("Massey representatives are closed");
    let ind = triple_indeterminacy(alg, coh, a, c, b.deg);
    let nonvanishing = !ind.contains(&class);
    Ok(MasseyProblem {
        entries: vec![(0, 1, a.clone()), (1, 2, b.clone()), (2, 3, c.clone()), (0, 2, a02), (1, 3, a13)],
        representative: rep,
        class,
        indeterminacy: Some(ind),
        nonvanishing,
    })
}

/// Quadruple product `⟨a, b, c, e⟩`; the pairwise primitives are chosen so that both
/// triple subproducts vanish simultaneously, by solving the joint affine system.
pub fn massey_quadruple<A: CochainAlgebra + ?Sized>(
    alg: &A,
    coh: &Cohomology,
    a: &Cochain,
    b: &Cochain,
    c: &Cochain,
    e: &Cochain,
) -> Result<MasseyProblem> {
    check_closed(coh, &[a, b, c, e])?;
    let a02 = primitive(coh, &mul(alg, &a.bar(), b), "ā·b")?;
    let a13 = primitive(coh, &mul(alg, &b.bar(), c), "b̄·c")?;
    let a24 = primitive(coh, &mul(alg, &c.bar(), e), "c̄·e")?;
    let t1 = mul(alg, &a.bar(), &a13).add(&mul(alg, &a02.bar(), c));
    let t2 = mul(alg, &b.bar(), &a24).add(&mul(alg, &a13.bar(), e));
    let top = coh.top_degree();
    if t1.deg > top || t2.deg > top {
        return Err(Error::Undefined("subproducts land above the top degree".into()));
    }
    // unknown closed shifts z02, z13, z24 in class coordinates
    let (d02, d13, d24) = (a02.deg, a13.deg, a24.deg);
    let (n02, n13, n24) = (coh.betti_at(d02), coh.betti_at(d13), coh.betti_at(d24));
    let (r1, r2) = (coh.betti_at(t1.deg), coh.betti_at(t2.deg));
    let mut m = Matrix::zeros(r1 + r2, n02 + n13 + n24);
    let class = |x: &Cochain| coh.class_coords(x.deg, &x.v).expect("closed");
    let put = |m: &mut Matrix, row0: usize, col: usize, v: Vec<Cq>| {
        for (i, x) in v.into_iter().enumerate() {
            m[(row0 + i, col)] = m[(row0 + i, col)].clone() + x;
        }
    };
    for (i, z) in coh.reps(d02).iter().enumerate() {
        let z = Cochain::new(d02, z.clone());
        put(&mut m, 0, i, class(&mul(alg, &z.bar(), c)));
    }
    for (i, z) in coh.reps(d13).iter().enumerate() {
        let z = Cochain::new(d13, z.clone());
        put(&mut m, 0, n02 + i, class(&mul(alg, &a.bar(), &z)));
        put(&mut m, r1, n02 + i, class(&mul(alg, &z.bar(), e)));
    }
    for (i, z) in coh.reps(d24).iter().enumerate() {
        let z = Cochain::new(d24, z.clone());
        put(&mut m, r1, n02 + n13 + i, class(&mul(alg, &b.bar(), &z)));
    }
    let mut rhs: Vec<Cq> = class(&t1).into_iter().map(|x| -x).collect();
    rhs.extend(class(&t2).into_iter().map(|x| -x));
    let u = m
        .solve(&rhs)
        .ok_or_else(|| Error::Undefined("no simultaneous choice makes both triple products vanish".into()))?;
    let shift = |deg: usize, coords: &[Cq]| Cochain::new(deg, coh.rep_of(deg, coords));
    let a02 = a02.add(&shift(d02, &u[..n02]));
    let a13 = a13.add(&shift(d13, &u[n02..n02 + n13]));
    let a24 = a24.add(&shift(d24, &u[n02 + n13..]));
    let t1 = mul(alg, &a.bar(), &a13).add(&mul(alg, &a02.bar(), c));
    let t2 = mul(alg, &b.bar(), &a24).add(&mul(alg, &a13.bar(), e));
    let a03 = primitive(coh, &t1, "⟨a,b,c⟩ representative")?;
    let a14 = primitive(coh, &t2, "⟨b,c,e⟩ representative")?;
    let rep = mul(alg, &a.bar(), &a14).add(&mul(alg, &a02.bar(), &a24)).add(&mul(alg, &a03.bar(), e));
    if rep.deg > top {
        return Err(Error::Undefined("product lands above the top degree".into()));
    }
    let cls = class(&rep);
    let nonvanishing = cls.iter().any(|x| !x.is_zero());
    Ok(MasseyProblem {
        entries: vec![
            (0, 1, a.clone()),
            (1, 2, b.clone()),
            (2, 3, c.clone()),
            (3, 4, e.clone()),
            (0, 2, a02),
            (1, 3, a13),
            (2, 4, a24),
            (0, 3, a03),
            (1, 4, a14),
        ],
        representative: rep,
        class: cls,
        indeterminacy: None,
        nonvanishing,
    })
}
