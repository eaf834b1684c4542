#![allow(dead_code)]

use gencx::exterior::{parse_form, Form};
use gencx::liealg::LieModel;
use serde::Deserialize;

#[derive(Deserialize, Clone, Debug)]
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

pub fn table() -> Vec<Row> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/table1");
    (1..=34)
        .map(|i| {
            let text = std::fs::read_to_string(format!("{}/row{:02}.json", dir, i)).expect("table row");
            serde_json::from_str(&text).expect("row json")
        })
        .collect()
}

pub fn model(s: &str) -> LieModel {
    LieModel::parse(s).expect("model")
}

pub fn form(s: &str, n: usize) -> Form {
    parse_form(s, n).expect("form")
}
