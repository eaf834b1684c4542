use serde::Serialize;

use super::DualityPair;
use crate::exterior::{format_form, Basis, GenVector};
use crate::gcs::{kahler_pair_check, GCStructure, GKReport};
use crate::linalg::{Cq, Matrix, Subspace};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct TransportReport {
    pub spinor: String,
    pub source_type: usize,
    pub dual_type: usize,
    pub integrable: bool,
    /// `φ(L) = L̃`.
    pub eigenbundle_matches: bool,
    /// `τ(U^k) = Ũ^k` on invariant forms, listed for `k = −half, …, half`.
    pub grading_matches: Vec<bool>,
    /// `dd^J`-lemma verdicts on both sides, when both structures are integrable.
    pub lemma: Option<(bool, bool)>,
}

impl TransportReport {
    pub fn holds(&self) -> bool {
        self.eigenbundle_matches
            && self.grading_matches.iter().all(|&b| b)
            && self.lemma.map_or(true, |(a, b)| a == b)
            && self.source_type.abs_diff(self.dual_type) == 1
    }
}

#[derive(Clone, Debug)]
pub struct Transport {
    pub structure: GCStructure,
    pub report: TransportReport,
}

impl DualityPair {
    fn phi_matrix(&self) -> Matrix {
        let n = self.source.n();
        let cols: Vec<Vec<Cq>> = GenVector::standard_basis(n).iter().map(|v| self.phi(v).to_coords()).collect();
        Matrix::from_cols(2 * n, &cols)
    }

    fn tau_matrix(&self) -> Matrix {
        let b = Basis::full(self.source.n());
        b.matrix_of(&b, |a| self.tau_unchecked(a))
    }

    /// Transports an invariant structure by `τ` on its spinor and re-verifies it on the dual.
    pub fn transport(&self, s: &GCStructure) -> Result<Transport> {
        if s.model != self.source.model {
            return Err(Error::Invalid("structure lives on a different model".into()));
        }
        let rho = self.tau(&s.rho)?;
        let t = GCStructure::from_spinor(&self.dual.model, &rho)?;
        let phi = self.phi_matrix();
        let eigenbundle_matches = s.l.image_under(&phi) == t.l && s.lbar.image_under(&phi) == t.lbar;
        let inv = self.invariant_forms();
        let inv_dual = self.reversed().invariant_forms();
        let tau = self.tau_matrix();
        let half = s.half() as i64;
        let grading_matches = (-half..=half)
            .map(|k| {
                let src: Subspace = s.uk(k).intersection(&inv).expect("same ambient");
                let dst = t.uk(k).intersection(&inv_dual).expect("same ambient");
                src.image_under(&tau) == dst
            })
            .collect();
        let lemma = if s.is_integrable() && t.is_integrable() {
            Some((s.ddj_lemma()?.holds, t.ddj_lemma()?.holds))
        } else {
            None
        };
        let report = TransportReport {
            spinor: format_form(&rho),
            source_type: s.kind,
            dual_type: t.kind,
            integrable: t.is_integrable(),
            eigenbundle_matches,
            grading_matches,
            lemma,
        };
        Ok(Transport { structure: t, report })
    }

    /// Transports both members of a generalized Kähler pair and checks the pair on each side.
    pub fn transport_kahler(&self, s1: &GCStructure, s2: &GCStructure) -> Result<(GKReport, GKReport)> {
        let before = kahler_pair_check(s1, s2)?.0;
        let t1 = self.transport(s1)?.structure;
        let t2 = self.transport(s2)?.structure;
        let after = kahler_pair_check(&t1, &t2)?.0;
        Ok((before, after))
    }
}
