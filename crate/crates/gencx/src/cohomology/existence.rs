use serde::Serialize;

use crate::exterior::{degree_masks, format_form, Basis, Form};
use crate::liealg::LieModel;
use crate::linalg::Cq;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Existence {
    /// Every product of `m` closed 2-forms vanishes.
    Impossible,
    /// A closed 2-form with nonvanishing top power was found.
    Exists,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExistenceReport {
    pub verdict: Existence,
    pub closed_two_forms: usize,
    /// Number of basis tuples on which the multilinear top-power map was evaluated.
    pub tuples_checked: usize,
    pub witness: Option<String>,
}

/// Largest number of candidate combinations tried in the witness search.
const SEARCH_LIMIT: usize = 200_000;

fn multisets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(i, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, k, &mut Vec::new(), &mut out);
    out
}

/// Decides whether an invariant symplectic form can exist, by a multilinear certificate
/// on closed 2-forms and a bounded witness search.
pub fn symplectic_existence(m: &LieModel) -> Result<ExistenceReport> {
    let n = m.n();
    if n % 2 != 0 {
        return Err(Error::Invalid("odd-dimensional model".into()));
    }
    let half = n / 2;
    let b2 = Basis::degree(n, 2);
    let closed: Vec<Form> = m.d_matrix(2).kernel_basis().iter().map(|v| b2.form(v)).collect();
    let tuples = multisets(closed.len(), half);
    let mut nonzero = false;
    for t in &tuples {
        let mut w = Form::one(n);
        for &i in t {
            w = w.wedge(&closed[i]);
            if w.is_zero() {
                break;
            }
        }
        if !w.is_zero() {
            nonzero = true;
            break;
        }
    }
    if !nonzero {
        return Ok(ExistenceReport {
            verdict: Existence::Impossible,
            closed_two_forms: closed.len(),
            tuples_checked: tuples.len(),
            witness: None,
        });
    }
    // witnesses by increasing support, coefficients in {−2, …, 2}
    let mut tried = 0;
    for support in 1..=closed.len() {
        for mask in degree_masks(closed.len(), support) {
            let idx: Vec<usize> = (0..closed.len()).filter(|i| mask & (1 << i) != 0).collect();
            let mut coeffs = vec![1i64; support];
            loop {
                tried += 1;
                if tried > SEARCH_LIMIT {
                    return Ok(ExistenceReport {
                        verdict: Existence::Inconclusive,
                        closed_two_forms: closed.len(),
                        tuples_checked: tuples.len(),
                        witness: None,
                    });
                }
                let mut omega = Form::zero(n);
                for (c, &i) in coeffs.iter().zip(&idx) {
                    omega = omega + closed[i].scale(&Cq::from_int(*c));
                }
                if !omega.wedge_pow(half).is_zero() {
                    return Ok(ExistenceReport {
                        verdict: Existence::Exists,
                        closed_two_forms: closed.len(),
                        tuples_checked: tuples.len(),
                        witness: Some(format_form(&omega)),
                    });
                }
                // next coefficient vector in {1,2,−1,−2}^support; the first entry stays positive
                let order = [1i64, 2, -1, -2];
                let mut pos = 0;
                loop {
                    if pos == support {
                        break;
                    }
                    let cur = order.iter().position(|&x| x == coeffs[pos]).unwrap();
                    let limit = if pos == 0 { 2 } else { 4 };
                    if cur + 1 < limit {
                        coeffs[pos] = order[cur + 1];
                        break;
                    }
                    coeffs[pos] = order[0];
                    pos += 1;
                }
                if pos == support {
                    break;
                }
            }
        }
    }
    Ok(ExistenceReport {
        verdict: Existence::Inconclusive,
        closed_two_forms: closed.len(),
        tuples_checked: tuples.len(),
        witness: None,
    })
}
