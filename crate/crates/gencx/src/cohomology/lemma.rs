use serde::Serialize;

use crate::exterior::{format_form, Basis};
use crate::linalg::{Matrix, Subspace};
use crate::{Error, Result};

/// Outcome of comparing `Im A ∩ ker B`, `Im B ∩ ker A` and `Im AB`.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaVerdict {
    pub im_a_ker_b: usize,
    pub im_b_ker_a: usize,
    pub im_ab: usize,
    pub holds: bool,
    /// Elements of `Im A ∩ ker B` or `Im B ∩ ker A` outside `Im AB`.
    pub witnesses: Vec<String>,
}

/// Checks the `AB`-lemma for two anticommuting differentials on the space spanned by `basis`.
pub fn lemma_check(basis: &Basis, a: &Matrix, b: &Matrix) -> Result<LemmaVerdict> {
    let dim = basis.len();
    if a.rows() != dim || a.cols() != dim || b.rows() != dim || b.cols() != dim {
        return Err(Error::Dimension("operators must act on the given basis".into()));
    }
    if !a.mul(b).add(&b.mul(a)).is_zero() {
        return Err(Error::Invalid("the two differentials do not anticommute".into()));
    }
    let ker_a = a.rank_kernel().1;
    let ker_b = b.rank_kernel().1;
    let x = a.image().intersection(&ker_b)?;
    let y = b.image().intersection(&ker_a)?;
    let z = a.mul(b).image();
    let mut witnesses = Vec::new();
    let mut collect = |s: &Subspace| {
        for v in s.basis() {
            if !z.contains(v) {
                witnesses.push(format_form(&basis.form(v)));
            }
        }
    };
    collect(&x);
    collect(&y);
    let holds = x == z && y == z;
    Ok(LemmaVerdict { im_a_ker_b: x.dim(), im_b_ker_a: y.dim(), im_ab: z.dim(), holds, witnesses })
}
