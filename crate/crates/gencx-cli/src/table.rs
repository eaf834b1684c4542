//! Bundled rows of the six-dimensional nilpotent table and their verification.

use std::path::Path;

use gencx::cohomology::cohomology;
use gencx::exterior::{exp_form, format_form, parse_form, Form};
use gencx::gcs::verify_spinor;
use gencx::liealg::LieModel;
use gencx::linalg::Cq;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Marker for cells where no structure of the column's type exists.
pub const EMPTY: &str = "—";

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub row: usize,
    pub algebra: String,
    pub b1: usize,
    pub b2: usize,
    pub type3: String,
    pub type2: String,
    pub type1: String,
    pub symplectic: String,
}

impl Row {
    /// `(column type, cell)` with type 0 for the symplectic column.
    pub fn cells(&self) -> [(usize, &str); 4] {
        [(3, &self.type3), (2, &self.type2), (1, &self.type1), (0, &self.symplectic)]
    }
}

/// Reads every `*.json` file of `dir`, ordered by row number.
pub fn load_rows(dir: &Path) -> Result<Vec<Row>, String> {
    let entries = std::fs::read_dir(dir).map_err(|e| format!("{}: {}", dir.display(), e))?;
    let mut rows = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().and_then(|s| s.to_str()) != Some("json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {}", path.display(), e))?;
        let row: Row = serde_json::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e))?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(format!("{}: no row files", dir.display()));
    }
    rows.sort_by_key(|r| r.row);
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CellStatus {
    Verified,
    Failed { witnesses: Vec<String> },
    /// Nonexistence cells rest on a proof, not on a computation.
    NotMachineChecked,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    #[serde(rename = "type")]
    pub kind: usize,
    pub cell: String,
    #[serde(flatten)]
    pub status: CellStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub row: usize,
    pub algebra: String,
    pub betti: (usize, usize),
    pub betti_expected: (usize, usize),
    pub betti_match: bool,
    pub cells: Vec<CellReport>,
}

impl RowReport {
    pub fn verified(&self) -> bool {
        self.betti_match && self.cells.iter().all(|c| !matches!(c.status, CellStatus::Failed { .. }))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
    pub cells_listed: usize,
    pub cells_verified: usize,
    pub cells_not_checked: usize,
    pub all_verified: bool,
}

/// Spinor of a cell: the form itself, or `e^{iω}` for the symplectic column.
pub fn cell_spinor(kind: usize, cell: &str, n: usize) -> gencx::Result<Form> {
    let f = parse_form(cell, n)?;
    Ok(if kind == 0 { exp_form(&f.scale(&Cq::i())) } else { f })
}

fn check_cell(m: &LieModel, kind: usize, cell: &str) -> CellStatus {
    let rho = match cell_spinor(kind, cell, m.n()) {
        Ok(r) => r,
        Err(e) => return CellStatus::Failed { witnesses: vec![e.to_string()] },
    };
    let report = match verify_spinor(m, &rho, format_form, |_| None) {
        Ok(r) => r,
        Err(e) => return CellStatus::Failed { witnesses: vec![e.to_string()] },
    };
    let mut witnesses = report.witnesses.clone();
    if report.integrable && !report.closed {
        witnesses.push(format!("d rho = {}", format_form(&m.d_h(&rho))));
    }
    if report.kind != kind {
        witnesses.push(format!("type {} instead of {}", report.kind, kind));
    }
    if report.pure && report.nondegenerate && report.closed && report.kind == kind {
        CellStatus::Verified
    } else {
        CellStatus::Failed { witnesses }
    }
}

/// Betti numbers for every row and, with `cells`, verification of every listed structure.
pub fn verify_row(r: &Row, cells: bool) -> Result<RowReport, String> {
    let m = LieModel::parse(&r.algebra).map_err(|e| format!("row {}: {}", r.row, e))?;
    let b = cohomology(&m).betti();
    let cells = if cells {
        r.cells()
            .iter()
            .map(|&(kind, cell)| CellReport {
                kind,
                cell: cell.to_string(),
                status: if cell == EMPTY { CellStatus::NotMachineChecked } else { check_cell(&m, kind, cell) },
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(RowReport {
        row: r.row,
        algebra: r.algebra.clone(),
        betti: (b[1], b[2]),
        betti_expected: (r.b1, r.b2),
        betti_match: (b[1], b[2]) == (r.b1, r.b2),
        cells,
    })
}

pub fn verify_table(rows: &[Row], cells: bool) -> Result<TableReport, String> {
    let rows: Vec<RowReport> = rows.par_iter().map(|r| verify_row(r, cells)).collect::<Result<_, _>>()?;
    let all = rows.iter().flat_map(|r| &r.cells);
    let cells_listed = all.clone().filter(|c| c.cell != EMPTY).count();
    let cells_verified = all.clone().filter(|c| matches!(c.status, CellStatus::Verified)).count();
    let cells_not_checked = all.filter(|c| matches!(c.status, CellStatus::NotMachineChecked)).count();
    let all_verified = rows.iter().all(|r| r.verified());
    Ok(TableReport { rows, cells_listed, cells_verified, cells_not_checked, all_verified })
}

pub fn render(t: &TableReport) -> String {
    let mut out = String::new();
    for r in &t.rows {
        let mark = if r.betti_match { "ok" } else { "MISMATCH" };
        out.push_str(&format!(
            "row {:2}  {:<28} b1={} b2={} [{}]\n",
            r.row, r.algebra, r.betti.0, r.betti.1, mark
        ));
        for c in &r.cells {
            let status = match &c.status {
                CellStatus::Verified => "verified".to_string(),
                CellStatus::NotMachineChecked => "not machine-checked (paper proof)".to_string(),
                CellStatus::Failed { witnesses } => format!("FAILED: {}", witnesses.join("; ")),
            };
            let label = if c.kind == 0 { "symplectic".to_string() } else { format!("type {}", c.kind) };
            out.push_str(&format!("    {:<10}  {:<32} {}\n", label, c.cell, status));
        }
    }
    if t.rows.iter().any(|r| !r.cells.is_empty()) {
        out.push_str(&format!(
            "{} rows, {}/{} listed cells verified, {} cells not machine-checked\n",
            t.rows.len(),
            t.cells_verified,
            t.cells_listed,
            t.cells_not_checked
        ));
    } else {
        out.push_str(&format!("{} rows\n", t.rows.len()));
    }
    out
}
