//! Acceptance checks: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` fail for documented reasons in the source data; their failure is
//! reported but does not fail the run. Any other failure exits nonzero.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use gencx::blowup::{blowup_report, build_blowup_ring, default_samples, BlowupInput, Prediction};
use gencx::cohomology::{cohomology, coords_form, form_coords, massey_triple, symplectic_existence, Cochain, Existence};
use gencx::exterior::{exp_form, format_form, parse_form, Basis, Form, GenBivector, GenVector};
use gencx::gcs::GCStructure;
use gencx::liealg::LieModel;
use gencx::linalg::{Cq, Field, Subspace};
use gencx::minimal::{hirsch_extend, minimal_model, Cdga, Generator};
use gencx::symplectic::SymplecticData;
use gencx::tduality::dualize_along;
use gencx_cli::table::{cell_spinor, load_rows, verify_table, CellStatus, Row, EMPTY};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

type Check = Result<(), String>;

const KNOWN_RED: [usize; 3] = [2, 7, 12];

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn model(s: &str) -> LieModel {
    LieModel::parse(s).expect("model")
}

fn form(s: &str, n: usize) -> Form {
    parse_form(s, n).expect("form")
}

fn rows() -> Vec<Row> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/table1");
    load_rows(&dir).expect("table data")
}

fn table_betti() -> Check {
    let t = verify_table(&rows(), false)?;
    let bad: Vec<String> = t.rows.iter().filter(|r| !r.betti_match).map(|r| format!("row {}", r.row)).collect();
    ensure(t.rows.len() == 34 && bad.is_empty(), format!("Betti mismatch in {}", bad.join(", ")))
}

fn table_cells() -> Check {
    let t = verify_table(&rows(), true)?;
    let mut bad = Vec::new();
    for r in &t.rows {
        for c in &r.cells {
            if let CellStatus::Failed { witnesses } = &c.status {
                bad.push(format!("row {} type {} {}: {}", r.row, c.kind, c.cell, witnesses.join("; ")));
            }
        }
    }
    ensure(
        bad.is_empty(),
        format!(
            "{}/{} cells verify; {} (the 3-i4 variant of this cell is closed)",
            t.cells_verified,
            t.cells_listed,
            bad.join(", ")
        ),
    )
}

fn heisenberg_massey() -> Check {
    let h = model("(0,0,12)");
    let ring = cohomology(&h);
    let c = |s: &str| Cochain::new(1, form_coords(3, 1, &form(s, 3)));
    let p = massey_triple(&h, &ring.coh, &c("1"), &c("2"), &c("1"), None).map_err(|e| e.to_string())?;
    let rep = coords_form(3, 2, &p.representative.v);
    ensure(format_form(&rep) == "-2*13", format!("representative {}", format_form(&rep)))?;
    ensure(p.indeterminacy.as_ref().map(|s| s.dim()) == Some(0), "indeterminacy is not zero")?;
    ensure(p.nonvanishing, "product contains zero")?;
    ensure(ring.class_of(&form("-2*13", 3)).ok() == Some(p.class), "class differs from [-2e13]")
}

fn gil_kernels() -> Check {
    let m = model("(0,0,12,0,0,45)");
    let ring = cohomology(&m);
    let w = form("14+23+56", 6);
    let class = |s: &str| ring.class_of(&form(s, 6)).expect("class");
    let k1 = ring.lefschetz_kernel(&w, 1).map_err(|e| e.to_string())?;
    let k2 = ring.lefschetz_kernel(&w, 2).map_err(|e| e.to_string())?;
    ensure(k2 == Subspace::span(k2.ambient(), vec![class("25")]), "ker ω on H² is not span{e25}")?;
    ensure(k1 == Subspace::span(k1.ambient(), vec![class("2"), class("5")]), "ker ω² on H¹ is not span{e2, e5}")
}

fn eight_dimensional() -> Check {
    let m = model("(0,0,12,13,14,15,16,36-45-27)");
    let ring = cohomology(&m);
    let printed: Vec<Vec<Cq>> =
        ["23", "34-25", "17"].iter().map(|s| ring.class_of(&form(s, 8)).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    ensure(ring.betti()[2] == 3 && Subspace::span(3, printed).dim() == 3, "H² is not spanned by e23, e34−e25, e17")?;
    let e = symplectic_existence(&m).map_err(|e| e.to_string())?;
    ensure(e.verdict == Existence::Impossible, format!("existence verdict {:?}", e.verdict))?;
    let f = m.filtration_report().map_err(|e| e.to_string())?;
    ensure(f.excluded_types == vec![2, 3, 4], format!("excluded types {:?}", f.excluded_types))
}

fn symplectic_models() -> Vec<(&'static str, SymplecticData)> {
    [("T⁶", "(0,0,0,0,0,0)", "12+34+56"), ("KT", "(0,0,0,12)", "14+23"), ("H×H", "(0,0,12,0,0,45)", "14+23+56")]
        .into_iter()
        .map(|(name, m, w)| {
            let m = model(m);
            let w = form(w, m.n());
            (name, SymplecticData::new(&m, &w).expect("symplectic"))
        })
        .collect()
}

fn sl2_suite() -> Check {
    for (name, sd) in symplectic_models() {
        let r = sd.relations();
        let failed: Vec<&str> = r.relations.iter().filter(|x| !x.holds).map(|x| x.name.as_str()).collect();
        ensure(r.all_hold, format!("{}: {}", name, failed.join(", ")))?;
    }
    Ok(())
}

fn phi_identities() -> Check {
    let mut reasons = Vec::new();
    for (name, sd) in symplectic_models().into_iter().take(2) {
        let r = sd.phi_report().map_err(|e| e.to_string())?;
        ensure(r.degenerates(), format!("{}: E1 does not degenerate", name))?;
        if !r.as_stated.holds() {
            reasons.push(format!(
                "{}: as stated d-identity {} / δ-identity {}; with ∂ and ∂̄ exchanged {} / {}",
                name, r.as_stated.d_identity, r.as_stated.delta_identity, r.swapped.d_identity, r.swapped.delta_identity
            ));
        }
    }
    ensure(reasons.is_empty(), format!("{} (φ maps Λ^k onto U^(n-k), so d pairs with ∂̄); dim H_∂ = b_k holds", reasons.join("; ")))
}

fn yan_merkulov() -> Check {
    for (name, sd) in symplectic_models() {
        let e = sd.equivalence().map_err(|e| e.to_string())?;
        let expect = name == "T⁶";
        ensure(
            e.agree && e.lefschetz == expect && e.ddelta_lemma == expect && e.harmonic == expect,
            format!("{}: Lefschetz {}, dδ {}, harmonic {}", name, e.lefschetz, e.ddelta_lemma, e.harmonic),
        )?;
    }
    Ok(())
}

fn kt_pair_identities() -> Check {
    let p = dualize_along(&model("(0,0,0,12)"), 4).map_err(|e| e.to_string())?;
    ensure(p.dual.model.is_abelian() && p.dual.model.h() == &form("124", 4), "dual is not (T⁴, e12∧θ̃)")?;
    let r = p.verify().map_err(|e| e.to_string())?;
    ensure(r.invariant_forms == 16, format!("{} invariant forms", r.invariant_forms))?;
    ensure(r.all_hold(), r.witnesses.join("; "))
}

fn structure_transport() -> Check {
    let p = dualize_along(&model("(0,0,0,12)"), 4).map_err(|e| e.to_string())?;
    let s = GCStructure::from_spinor(&p.source.model, &exp_form(&form("i(14+23)", 4))).map_err(|e| e.to_string())?;
    let t = p.transport(&s).map_err(|e| e.to_string())?;
    let r = &t.report;
    ensure(r.dual_type == 1, format!("dual type {}", r.dual_type))?;
    ensure(r.integrable && t.structure.is_integrable(), "transported spinor is not twisted-integrable")?;
    ensure(r.grading_matches.iter().all(|&b| b), format!("τ(U^k) = Ũ^k: {:?}", r.grading_matches))?;
    ensure(r.holds(), "transport report fails")
}

fn compact_groups() -> Check {
    let su2 = model(r#"{"n":3,"d":["23","-13","12"],"H":"123"}"#);
    let t = cohomology(&su2.direct_sum(&su2).map_err(|e| e.to_string())?).twisted_cohomology();
    ensure((t.even, t.odd) == (0, 0), format!("d_H-cohomology ({}, {})", t.even, t.odd))?;
    let p = dualize_along(&su2, 1).map_err(|e| e.to_string())?;
    ensure(p.dual.model == su2, "su(2) is not self-dual along e1")?;
    let r = p.verify().map_err(|e| e.to_string())?;
    ensure(r.all_hold(), r.witnesses.join("; "))
}

fn iwasawa() -> Check {
    let m = model("(0,0,0,0,13-24,14+23)");
    let g = GCStructure::from_spinor(&m, &form("(1+i2)(3+i4)(5+i6)", 6)).map_err(|e| e.to_string())?;
    let v = |re: [i64; 6], im: [i64; 6]| GenVector::new((0..6).map(|k| Cq::gauss(re[k], im[k])).collect(), vec![Cq::zero(); 6]);
    let mut beta = GenBivector::new();
    beta.push(Cq::from_frac(-1, 4), v([0, 0, 1, 0, 0, 0], [0, 0, 0, -1, 0, 0]), v([0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, -1]));
    ensure(g.maurer_cartan(&beta).map_err(|e| e.to_string())?.is_zero(), "Maurer–Cartan fails for β₁")?;
    let d = g.deform(&beta).map_err(|e| e.to_string())?;
    let expected = exp_form(&form("-(35-46)-i(45+36)", 6)).wedge(&form("1+i2", 6));
    let rho = &d.structure.rho;
    if *rho == expected {
        return Ok(());
    }
    let sign = if *rho == -expected.clone() { "equals −1 times the expected form (same spinor line)" } else { "differs from the expected form" };
    Err(format!("e^β₁·ρ₁ = {} {}", format_form(rho), sign))
}

fn gil_blowup() -> Check {
    let m = model("(0,0,12,0,0,45)");
    let tangent = vec![
        [1, 1, 1, 0, 0, 0].iter().map(|&x| Cq::from_int(x)).collect(),
        [0, 0, 0, 1, 1, 1].iter().map(|&x| Cq::from_int(x)).collect(),
    ];
    let input = BlowupInput::from_subgroup(&m, &form("14+23+56", 6), &tangent, &[]).map_err(|e| e.to_string())?;
    let ring = build_blowup_ring(input).map_err(|e| e.to_string())?;
    let r = blowup_report(&ring, &default_samples()).map_err(|e| e.to_string())?;
    let two_d = 2 * r.d;
    let at = |i: usize| r.levels.iter().find(|l| l.level == i).expect("level");
    ensure(at(two_d).kernels.generic + 1 == at(two_d).ambient, format!("level {}: {} → {}", two_d, at(two_d).ambient, at(two_d).kernels.generic))?;
    ensure(at(two_d).prediction == Prediction::Equal(at(two_d).ambient - 1), "condition checker does not predict the drop")?;
    for l in r.levels.iter().filter(|l| l.level > two_d) {
        ensure(l.kernels.generic == l.ambient, format!("level {} changed", l.level))?;
    }
    ensure(r.levels.iter().all(|l| l.matches), "a prediction does not match")
}

fn labelled(a: &Cdga, k: usize, label: &str) -> Vec<Cq> {
    let i = a.labels(k).iter().position(|l| l == label).expect("label");
    a.basis_vec(k, i)
}

fn minimal_models() -> Check {
    let heis = Cdga::from_model(&model("(0,0,12)")).map_err(|e| e.to_string())?;
    let pm = minimal_model(&heis, 3).map_err(|e| e.to_string())?;
    let r = pm.report().map_err(|e| e.to_string())?;
    ensure(r.census == vec![0, 3, 0, 0] && r.check.holds(), format!("CE(0,0,12) model census {:?}", r.census))?;
    ensure(r.generators[2].differential == "x1_1·x1_2", format!("third generator d = {}", r.generators[2].differential))?;

    let s2 = Cdga::from_json(r#"{"dims": [1, 0, 1]}"#).map_err(|e| e.to_string())?;
    let r = minimal_model(&s2, 3).and_then(|pm| pm.report()).map_err(|e| e.to_string())?;
    let shape: Vec<(usize, &str)> = r.generators.iter().map(|g| (g.degree, g.differential.as_str())).collect();
    ensure(shape == vec![(2, "0"), (3, "x2_1^2")] && r.check.holds(), format!("S² model {:?}", shape))?;

    let s2xs2 = Cdga::from_json(r#"{"dims": [1, 0, 2, 0, 1], "labels": [["1"], [], ["v1", "v2"], [], ["vol"]], "products": [[2, 0, 2, 1, ["1"]]]}"#)
        .map_err(|e| e.to_string())?;
    let sharp = hirsch_extend(&s2xs2, &[Generator::new(3, "u")], &[vec![Cq::one()]], 7).map_err(|e| e.to_string())?;
    let coh = sharp.cohomology();
    let (v1, v2) = (Cochain::new(2, labelled(&sharp, 2, "v1")), Cochain::new(2, labelled(&sharp, 2, "v2")));
    let p = massey_triple(&sharp, &coh, &v1, &v2, &v2, None).map_err(|e| e.to_string())?;
    ensure(p.nonvanishing, "⟨v1, v2, v2⟩ contains zero")?;
    let pm = minimal_model(&sharp, 3).map_err(|e| e.to_string())?;
    ensure(pm.check().map_err(|e| e.to_string())?.holds(), "sharp model fails its check")
}

fn random_cq(rng: &mut StdRng) -> Cq {
    Cq::gauss(rng.gen_range(-3..=3), rng.gen_range(-2..=2))
}

fn property_suites() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let n = 6;
    let full = Basis::full(n);
    for s in 0..1000 {
        let v = GenVector::new((0..n).map(|_| random_cq(&mut rng)).collect(), (0..n).map(|_| random_cq(&mut rng)).collect());
        let coords: Vec<Cq> = (0..full.len()).map(|_| if rng.gen_bool(0.2) { random_cq(&mut rng) } else { Cq::zero() }).collect();
        let a = full.form(&coords);
        ensure(v.act(&v.act(&a)) == a.scale(&v.pairing(&v)), format!("Clifford square fails on sample {}", s))?;
    }

    let rows = rows();
    let cells: Vec<(usize, LieModel, Form)> = rows
        .iter()
        .flat_map(|r| r.cells().map(|(kind, cell)| (r.row, r.algebra.clone(), kind, cell.to_string())))
        .filter(|(_, _, _, cell)| cell != EMPTY)
        .map(|(row, alg, kind, cell)| {
            let m = model(&alg);
            let rho = cell_spinor(kind, &cell, m.n()).expect("cell");
            (row, m, rho)
        })
        .collect();
    let structures: Vec<(usize, GCStructure)> = cells
        .par_iter()
        .map(|(row, m, rho)| (*row, GCStructure::from_spinor(m, rho).expect("pure nondegenerate cell")))
        .collect();
    for (row, g) in &structures {
        let ranks = g.mukai_ranks();
        let dim = g.n();
        for a in 0..=dim {
            for b in 0..=dim {
                let expect = if a + b == dim { g.u[a].dim() } else { 0 };
                ensure(ranks[a][b] == expect, format!("Mukai pairing U^{} × U^{} on row {}", a as i64 - 3, b as i64 - 3, row))?;
            }
        }
        ensure(g.report.integrable == g.involutive(), format!("integrability routes disagree on row {}", row))?;
    }

    let b2 = Basis::degree(n, 2);
    let mut perturbed = 0;
    let mut attempts = 0;
    while perturbed < 100 {
        attempts += 1;
        ensure(attempts <= 2000, "could not sample 100 non-integrable perturbations")?;
        let (row, g) = &structures[rng.gen_range(0..structures.len())];
        let coeffs: Vec<Cq> = (0..b2.len()).map(|_| Cq::from_int(rng.gen_range(-1..=1))).collect();
        let b = b2.form(&coeffs);
        let p = GCStructure::from_spinor(&g.model, &exp_form(&b).wedge(&g.rho)).map_err(|e| e.to_string())?;
        if p.report.integrable {
            continue;
        }
        perturbed += 1;
        ensure(!p.involutive(), format!("a non-integrable perturbation of row {} is involutive", row))?;
    }

    let su2 = model(r#"{"n":3,"d":["23","-13","12"],"H":"123"}"#);
    let mut models: Vec<LieModel> = rows.iter().map(|r| model(&r.algebra)).collect();
    models.push(su2.direct_sum(&su2).map_err(|e| e.to_string())?);
    models.push(dualize_along(&model("(0,0,0,12)"), 4).map_err(|e| e.to_string())?.dual.model);
    models.push(model("(0,0,12,13,14,15,16,36-45-27)"));
    for m in &models {
        let d = m.d_h_matrix();
        ensure(d.mul(&d).is_zero(), format!("d² ≠ 0 on {}", m.to_shorthand()))?;
    }
    Ok(())
}

fn main() {
    let criteria: Vec<(usize, &str, fn() -> Check)> = vec![
        (1, "nilpotent table Betti columns", table_betti),
        (2, "nilpotent table structure cells", table_cells),
        (3, "Heisenberg Massey product", heisenberg_massey),
        (4, "H×H Lefschetz kernels", gil_kernels),
        (5, "eight-dimensional nilmanifold", eight_dimensional),
        (6, "sl(2) operator suite", sl2_suite),
        (7, "φ-map identities", phi_identities),
        (8, "Lefschetz, dδ-lemma and harmonic verdicts agree", yan_merkulov),
        (9, "T-duality identities for the Kodaira–Thurston pair", kt_pair_identities),
        (10, "structure transport across T-duality", structure_transport),
        (11, "compact groups: d_H-cohomology and self-duality", compact_groups),
        (12, "Iwasawa β-deformation", iwasawa),
        (13, "blow-up Lefschetz kernels", gil_blowup),
        (14, "minimal models", minimal_models),
        (15, "property suites", property_suites),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(()) => println!("criterion {:2} PASS  {}", id, name),
            Err(reason) => {
                let known = KNOWN_RED.contains(&id);
                println!("criterion {:2} FAIL  {}: {}{}", id, name, reason, if known { " [known]" } else { "" });
                if !known {
                    unexpected.push(id);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {:?}", unexpected);
        std::process::exit(1);
    }
}
