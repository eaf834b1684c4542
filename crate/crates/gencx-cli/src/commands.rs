//! Subcommand implementations.

use std::fmt::Write as _;
use std::path::Path;

use gencx::blowup::{blowup_report, build_blowup_ring, default_samples, BlowupInput, Prediction};
use gencx::cohomology::{cohomology, coords_form, form_coords, massey_quadruple, massey_triple, Cochain};
use gencx::exterior::{format_form, parse_form, Form};
use gencx::gcs::{verify_spinor, GCStructure};
use gencx::liealg::LieModel;
use gencx::linalg::Cq;
use gencx::minimal::{minimal_model, s_formality_probe, Cdga, FormalityVerdict};
use gencx::symplectic::SymplecticData;
use gencx::tduality::dualize_along;
use serde_json::{json, Value};

use crate::table::{load_rows, render, verify_table};
use crate::{Command, Failure, Output};

type Res<T> = Result<T, Failure>;

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load_model(text: &str, twist: Option<&str>) -> Res<LieModel> {
    let m = LieModel::parse(text).map_err(Failure::input)?;
    match twist {
        Some(h) => {
            let h = parse_form(h, m.n()).map_err(Failure::input)?;
            m.with_twist(h).map_err(Failure::input)
        }
        None => Ok(m),
    }
}

fn load_form(text: &str, n: usize) -> Res<Form> {
    parse_form(text, n).map_err(Failure::input)
}

fn parse_scalars(text: &str) -> Res<Vec<Cq>> {
    text.split(',').map(|s| s.trim().parse::<Cq>().map_err(Failure::input)).collect()
}

pub fn dispatch(cmd: Command) -> Res<Output> {
    match cmd {
        Command::Parse { model, twist, forms } => parse(&model, twist.as_deref(), &forms),
        Command::Betti { model, twist } => betti(&model, twist.as_deref()),
        Command::VerifyGcs { model, spinor, twist } => verify_gcs(&model, &spinor, twist.as_deref()),
        Command::Table1 { dir, verify_all } => table1(&dir, verify_all),
        Command::Lefschetz { model, omega } => lefschetz(&model, &omega),
        Command::Ddlemma { model, spinor, omega, twist } => ddlemma(&model, spinor.as_deref(), omega.as_deref(), twist.as_deref()),
        Command::Massey { model, forms } => massey(&model, &forms),
        Command::Tdualize { model, circle, twist, forms, spinor } => {
            tdualize(&model, circle, twist.as_deref(), &forms, spinor.as_deref())
        }
        Command::Blowup { input, model, omega, tangent, chern, eps } => {
            blowup(input.as_deref(), model.as_deref(), omega.as_deref(), &tangent, &chern, eps.as_deref())
        }
        Command::Minmodel { input, degree, probe, dimension } => minmodel(&input, degree, probe, dimension),
        Command::Sl2Check { model, omega } => sl2_check(&model, &omega),
    }
}

fn parse(model: &str, twist: Option<&str>, forms: &[String]) -> Res<Output> {
    let m = load_model(model, twist)?;
    let n = m.n();
    let mut printed = Vec::new();
    for f in forms {
        let a = load_form(f, n)?;
        let s = format_form(&a);
        if parse_form(&s, n).ok().as_ref() != Some(&a) {
            return Err(Failure::math(format!("{} does not reparse to the same form", s)));
        }
        printed.push(s);
    }
    let model_json: Value = serde_json::from_str(&m.to_json()).expect("model json");
    let mut text = format!("n = {}\nmodel = {}\n", n, m.to_shorthand());
    if !m.h().is_zero() {
        writeln!(text, "H = {}", format_form(m.h())).unwrap();
    }
    for s in &printed {
        writeln!(text, "form = {}", s).unwrap();
    }
    Ok(Output {
        ok: true,
        json: json!({ "n": n, "shorthand": m.to_shorthand(), "model": model_json, "forms": printed }),
        text,
    })
}

fn betti(model: &str, twist: Option<&str>) -> Res<Output> {
    let m = load_model(model, twist)?;
    let ring = cohomology(&m);
    let b = ring.betti();
    let chi = ring.coh.euler_characteristic();
    let mut text = format!("b = {:?}\neuler characteristic = {}\n", b, chi);
    let mut v = json!({ "betti": b, "euler_characteristic": chi });
    if !m.h().is_zero() {
        let t = ring.twisted_report();
        writeln!(text, "d_H-cohomology: even {}, odd {}", t.twisted.even, t.twisted.odd).unwrap();
        writeln!(text, "H-cohomology: even {}, odd {}", t.h_cohomology.even, t.h_cohomology.odd).unwrap();
        v["twisted"] = to_json(&t);
    }
    Ok(Output { ok: true, json: v, text })
}

fn verify_gcs(model: &str, spinor: &str, twist: Option<&str>) -> Res<Output> {
    let m = load_model(model, twist)?;
    let rho = load_form(spinor, m.n())?;
    let r = verify_spinor(&m, &rho, format_form, |_| None).map_err(Failure::input)?;
    let mut text = format!(
        "type {}\npure: {}\nnondegenerate: {}\nintegrable: {}\nclosed: {}\n",
        r.kind,
        yes(r.pure),
        yes(r.nondegenerate),
        yes(r.integrable),
        yes(r.closed)
    );
    for w in &r.witnesses {
        writeln!(text, "witness: {}", w).unwrap();
    }
    Ok(Output { ok: r.is_gcs(), json: to_json(&r), text })
}

fn table1(dir: &Path, verify_all: bool) -> Res<Output> {
    let rows = load_rows(dir).map_err(Failure::Input)?;
    let t = verify_table(&rows, verify_all).map_err(Failure::Input)?;
    let ok = if verify_all { t.all_verified } else { t.rows.iter().all(|r| r.betti_match) };
    Ok(Output { ok, json: to_json(&t), text: render(&t) })
}

fn lefschetz(model: &str, omega: &str) -> Res<Output> {
    let m = load_model(model, None)?;
    let w = load_form(omega, m.n())?;
    let r = cohomology(&m).lefschetz_report(&w).map_err(Failure::input)?;
    let half = m.n() / 2;
    let mut text = String::new();
    for l in &r.levels {
        writeln!(
            text,
            "k={}: omega^{}: H^{} -> H^{}  rank {}/{}  kernel [{}]",
            l.k,
            half - l.k,
            l.k,
            m.n() - l.k,
            l.rank,
            l.source_dim,
            l.kernel.join(", ")
        )
        .unwrap();
    }
    writeln!(text, "hard Lefschetz: {}", yes(r.passes)).unwrap();
    Ok(Output { ok: r.passes, json: to_json(&r), text })
}

fn lemma_text(name: &str, v: &gencx::cohomology::LemmaVerdict) -> String {
    let mut text = format!(
        "{}-lemma: {}\ndim Im A ∩ ker B = {}, dim Im B ∩ ker A = {}, dim Im AB = {}\n",
        name,
        if v.holds { "holds" } else { "fails" },
        v.im_a_ker_b,
        v.im_b_ker_a,
        v.im_ab
    );
    for w in &v.witnesses {
        writeln!(text, "witness: {}", w).unwrap();
    }
    text
}

fn ddlemma(model: &str, spinor: Option<&str>, omega: Option<&str>, twist: Option<&str>) -> Res<Output> {
    let m = load_model(model, twist)?;
    let (name, v) = match (spinor, omega) {
        (Some(s), _) => {
            let rho = load_form(s, m.n())?;
            let g = GCStructure::from_spinor(&m, &rho).map_err(Failure::input)?;
            if !g.is_integrable() {
                return Err(Failure::math(format!("the spinor is not integrable: {}", g.report.witnesses.join("; "))));
            }
            ("dd^J", g.ddj_lemma().map_err(Failure::math)?)
        }
        (None, Some(w)) => {
            let w = load_form(w, m.n())?;
            let sd = SymplecticData::new(&m, &w).map_err(Failure::input)?;
            ("dδ", sd.ddelta_lemma().map_err(Failure::math)?)
        }
        (None, None) => return Err(Failure::Input("give --spinor or --omega".into())),
    };
    Ok(Output { ok: v.holds, text: lemma_text(name, &v), json: to_json(&v) })
}

fn massey(model: &str, forms: &[String]) -> Res<Output> {
    let m = load_model(model, None)?;
    let n = m.n();
    let ring = cohomology(&m);
    let cochains = forms
        .iter()
        .map(|s| {
            let a = load_form(s, n)?;
            let k = a.degree().ok_or_else(|| Failure::Input(format!("{} is not homogeneous", s)))?;
            Ok(Cochain::new(k, form_coords(n, k, &a)))
        })
        .collect::<Res<Vec<_>>>()?;
    let p = match cochains.len() {
        3 => massey_triple(&m, &ring.coh, &cochains[0], &cochains[1], &cochains[2], None),
        _ => massey_quadruple(&m, &ring.coh, &cochains[0], &cochains[1], &cochains[2], &cochains[3]),
    };
    let p = p.map_err(|e| match e {
        gencx::Error::Undefined(_) => Failure::math(format!("the product is not defined: {}", e)),
        gencx::Error::Invalid(_) => Failure::input(e),
        other => Failure::math(other),
    })?;
    let rep = format_form(&coords_form(n, p.representative.deg, &p.representative.v));
    let class: Vec<String> = p.class.iter().map(|c| c.to_string()).collect();
    let entries: Vec<Value> = p
        .entries
        .iter()
        .map(|(i, j, c)| json!({ "i": i, "j": j, "form": format_form(&coords_form(n, c.deg, &c.v)) }))
        .collect();
    let indeterminacy = p.indeterminacy.as_ref().map(|s| s.dim());
    let mut text = format!("degree {}\nrepresentative: {}\nclass: [{}]\n", p.representative.deg, rep, class.join(", "));
    if let Some(d) = indeterminacy {
        writeln!(text, "indeterminacy dimension: {}", d).unwrap();
    }
    writeln!(text, "nonvanishing: {}", yes(p.nonvanishing)).unwrap();
    Ok(Output {
        ok: true,
        json: json!({
            "degree": p.representative.deg,
            "representative": rep,
            "class": class,
            "indeterminacy_dim": indeterminacy,
            "nonvanishing": p.nonvanishing,
            "entries": entries,
        }),
        text,
    })
}

fn tdualize(model: &str, circle: usize, twist: Option<&str>, forms: &[String], spinor: Option<&str>) -> Res<Output> {
    let m = load_model(model, twist)?;
    let n = m.n();
    let pair = dualize_along(&m, circle).map_err(Failure::input)?;
    let identities = pair.verify().map_err(Failure::math)?;
    let dual_json: Value = serde_json::from_str(&pair.dual.model.to_json()).expect("model json");
    let mut text = format!(
        "dual model = {}\ndual H = {}\ncurvature = {}, dual curvature = {}\n",
        pair.dual.model.to_shorthand(),
        format_form(pair.dual.model.h()),
        format_form(&pair.source.curvature()),
        format_form(&pair.dual.curvature())
    );
    writeln!(
        text,
        "identities on {} invariant forms and {} invariant vectors: {}",
        identities.invariant_forms,
        identities.invariant_vectors,
        if identities.all_hold() { "hold" } else { "FAIL" }
    )
    .unwrap();
    for w in &identities.witnesses {
        writeln!(text, "witness: {}", w).unwrap();
    }
    let mut ok = identities.all_hold();
    let mut images = Vec::new();
    for f in forms {
        let a = load_form(f, n)?;
        let t = pair.tau(&a).map_err(Failure::math)?;
        writeln!(text, "tau({}) = {}", format_form(&a), format_form(&t)).unwrap();
        images.push(json!({ "form": format_form(&a), "image": format_form(&t) }));
    }
    let mut v = json!({
        "dual": dual_json,
        "curvature": format_form(&pair.source.curvature()),
        "dual_curvature": format_form(&pair.dual.curvature()),
        "identities": to_json(&identities),
        "tau": images,
    });
    if let Some(s) = spinor {
        let rho = load_form(s, n)?;
        let g = GCStructure::from_spinor(&m, &rho).map_err(Failure::input)?;
        let tr = pair.transport(&g).map_err(Failure::math)?;
        let r = &tr.report;
        writeln!(
            text,
            "transported spinor = {}\ntype {} -> {}, integrable: {}, eigenbundle: {}, grading: {}",
            r.spinor,
            r.source_type,
            r.dual_type,
            yes(r.integrable),
            yes(r.eigenbundle_matches),
            yes(r.grading_matches.iter().all(|&b| b))
        )
        .unwrap();
        ok &= r.holds() && r.integrable;
        v["transport"] = to_json(r);
    }
    Ok(Output { ok, json: v, text })
}

fn prediction_text(p: &Prediction) -> String {
    match p {
        Prediction::Equal(v) => format!("= {}", v),
        Prediction::AtMost(v) => format!("<= {}", v),
        Prediction::None => "none".into(),
    }
}

fn blowup(
    input: Option<&Path>,
    model: Option<&str>,
    omega: Option<&str>,
    tangent: &[String],
    chern: &[String],
    eps: Option<&str>,
) -> Res<Output> {
    let input = match (input, model) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))?;
            BlowupInput::from_json(&text).map_err(Failure::input)?
        }
        (None, Some(model)) => {
            let m = load_model(model, None)?;
            let w = load_form(omega.ok_or_else(|| Failure::Input("--model needs --omega".into()))?, m.n())?;
            let vs = tangent.iter().map(|t| parse_scalars(t)).collect::<Res<Vec<_>>>()?;
            let cs = chern.iter().map(|c| load_form(c, vs.len())).collect::<Res<Vec<_>>>()?;
            BlowupInput::from_subgroup(&m, &w, &vs, &cs).map_err(Failure::input)?
        }
        (None, None) => return Err(Failure::Input("give an input file or --model".into())),
    };
    let samples = match eps {
        Some(e) => parse_scalars(e)?,
        None => default_samples(),
    };
    let ring = build_blowup_ring(input).map_err(Failure::input)?;
    let r = blowup_report(&ring, &samples).map_err(Failure::math)?;
    let mut text = format!(
        "n = {}, d = {}, codimension {}\nbetti: ambient {:?}, submanifold {:?}, blow-up {:?}\n",
        r.n,
        r.d,
        2 * r.k,
        r.betti_ambient,
        r.betti_sub,
        r.betti_blowup
    );
    writeln!(text, "euler additivity: {}, Poincaré duality: {}", yes(r.euler_additive), yes(r.poincare_duality)).unwrap();
    let c = &r.conditions;
    writeln!(
        text,
        "kernel class restricting nonzero: {}",
        c.kernel_restricts.as_deref().unwrap_or("none")
    )
    .unwrap();
    writeln!(text, "Thom class outside the image: {}", yes(c.thom_outside_image)).unwrap();
    if let Some(outside) = c.thom_times_kernel_outside_image {
        let pair = c.kernel_pair.as_ref().map(|(a, b)| format!("{}, {}", a, b)).unwrap_or_else(|| "none".into());
        writeln!(text, "kernel pair restricting nonzero: {}", pair).unwrap();
        writeln!(text, "Thom class times kernel outside the image: {}", yes(outside)).unwrap();
    }
    for l in &r.levels {
        writeln!(
            text,
            "level {}: ambient kernel {}, blow-up kernel {} (prediction {}) {}{}",
            l.level,
            l.ambient,
            l.kernels.generic,
            prediction_text(&l.prediction),
            if l.matches { "ok" } else { "MISMATCH" },
            if l.kernels.stable { "" } else { ", unstable at some samples" }
        )
        .unwrap();
    }
    writeln!(text, "Lefschetz on the blow-up: {}", yes(r.blowup_lefschetz)).unwrap();
    let ok = r.euler_additive && r.poincare_duality && r.levels.iter().all(|l| l.matches);
    Ok(Output { ok, json: to_json(&r), text })
}

fn minmodel(input: &str, degree: usize, probe: bool, dimension: Option<usize>) -> Res<Output> {
    let target = if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).map_err(|e| Failure::Input(format!("{}: {}", input, e)))?;
        Cdga::from_json(&text).map_err(Failure::input)?
    } else {
        Cdga::from_model(&load_model(input, None)?).map_err(Failure::input)?
    };
    let pm = minimal_model(&target, degree).map_err(Failure::input)?;
    let report = pm.report().map_err(Failure::math)?;
    let mut text = format!("minimal model through degree {}\n", report.through);
    for g in &report.generators {
        writeln!(text, "  {} (degree {}): d = {}, image {}", g.label, g.degree, g.differential, g.image).unwrap();
    }
    writeln!(text, "generators per degree: {:?}", report.census).unwrap();
    writeln!(text, "quasi-isomorphism through degree {}: {}", report.through, yes(report.check.holds())).unwrap();
    for note in &report.notes {
        writeln!(text, "note: {}", note).unwrap();
    }
    let mut v = json!({ "model": to_json(&report) });
    if probe {
        let f = s_formality_probe(&pm, degree, dimension).map_err(Failure::math)?;
        let verdict = match &f.verdict {
            FormalityVerdict::FormalCertified { s, dimension } => format!("formal ({}-formal, dimension {})", s, dimension),
            FormalityVerdict::SFormal { s } => format!("{}-formal", s),
            FormalityVerdict::Nonformal { witness } => {
                let classes: Vec<&str> = witness.classes.iter().map(|(_, c)| c.as_str()).collect();
                format!("not formal: <{}> = {} is nonvanishing", classes.join(", "), witness.value)
            }
            FormalityVerdict::Inconclusive { reason } => format!("inconclusive: {}", reason),
        };
        writeln!(text, "formality: {}", verdict).unwrap();
        v["formality"] = to_json(&f);
    }
    Ok(Output { ok: report.check.holds(), json: v, text })
}

fn sl2_check(model: &str, omega: &str) -> Res<Output> {
    let m = load_model(model, None)?;
    let w = load_form(omega, m.n())?;
    let sd = SymplecticData::new(&m, &w).map_err(Failure::input)?;
    let rel = sd.relations();
    let phi = sd.phi_report().map_err(Failure::math)?;
    let eq = sd.equivalence().map_err(Failure::math)?;
    let mut text = String::new();
    for r in &rel.relations {
        writeln!(text, "{:<24} {}", r.name, if r.holds { "holds" } else { "FAILS" }).unwrap();
    }
    writeln!(
        text,
        "phi: graded {}, isomorphism {}; del-phi = phi-d {}, -2i delbar-phi = phi-delta {}; \
         delbar-phi = phi-d {}, -2i del-phi = phi-delta {}",
        yes(phi.graded),
        yes(phi.isomorphism),
        yes(phi.as_stated.d_identity),
        yes(phi.as_stated.delta_identity),
        yes(phi.swapped.d_identity),
        yes(phi.swapped.delta_identity)
    )
    .unwrap();
    writeln!(text, "dim H_del by degree {:?}, betti {:?}", phi.del_cohomology, phi.betti).unwrap();
    writeln!(
        text,
        "hard Lefschetz {}, dδ-lemma {}, harmonic representatives {}",
        yes(eq.lefschetz),
        yes(eq.ddelta_lemma),
        yes(eq.harmonic)
    )
    .unwrap();
    Ok(Output {
        ok: rel.all_hold,
        json: json!({ "relations": to_json(&rel), "phi": to_json(&phi), "equivalence": to_json(&eq) }),
        text,
    })
}
