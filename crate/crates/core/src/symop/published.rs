//! Hard-coded printed commutator tables and their comparison with the oracle.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::algebra::{commutator_table, AlgebraElement};
use super::catalog::{generator, Catalog};
use super::diffop::DiffOperator;
use super::GaussianRational;

const DATA: &str = include_str!("../../data/published_tables.json");

#[derive(Deserialize)]
struct RawPair {
    i: usize,
    j: usize,
    result: BTreeMap<usize, String>,
}

#[derive(Deserialize)]
struct RawTable {
    origin: String,
    pairs: Vec<RawPair>,
    #[serde(default)]
    printed_expressions: Vec<String>,
    #[serde(default)]
    notes: Vec<String>,
}

/// A printed table, indices 1-based over the catalog basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PublishedTable {
    pub catalog: Catalog,
    pub origin: String,
    pub entries: BTreeMap<(usize, usize), AlgebraElement>,
    /// Printed operator expressions for the basis, where they were given.
    pub printed_expressions: Vec<DiffOperator>,
    pub notes: Vec<String>,
}

fn load() -> BTreeMap<Catalog, PublishedTable> {
    let raw: BTreeMap<String, RawTable> =
        serde_json::from_str(DATA).expect("embedded table data is valid JSON");
    raw.into_iter()
        .map(|(name, t)| {
            let catalog: Catalog = name.parse().expect("known catalog name");
            let entries = t
                .pairs
                .into_iter()
                .map(|p| {
                    let coeffs = p.result.into_iter().map(|(k, c)| {
                        (k, c.parse::<GaussianRational>().expect("valid coefficient"))
                    });
                    ((p.i, p.j), AlgebraElement::from_coefficients(catalog, coeffs))
                })
                .collect();
            let printed_expressions = t
                .printed_expressions
                .iter()
                .map(|s| s.parse().expect("valid operator text"))
                .collect();
            let table = PublishedTable { catalog, origin: t.origin, entries, printed_expressions, notes: t.notes };
            (catalog, table)
        })
        .collect()
}

pub fn published_table(catalog: Catalog) -> &'static PublishedTable {
    static TABLES: OnceLock<BTreeMap<Catalog, PublishedTable>> = OnceLock::new();
    &TABLES.get_or_init(load)[&catalog]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyEntry {
    pub i: usize,
    pub j: usize,
    pub oracle: AlgebraElement,
    pub published: AlgebraElement,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub table: String,
    pub origin: String,
    pub entries: Vec<DiscrepancyEntry>,
    pub notes: Vec<String>,
}

impl DiscrepancyReport {
    pub fn total(&self) -> usize {
        self.entries.len()
    }

    pub fn matched(&self) -> usize {
        self.entries.iter().filter(|e| e.matches).count()
    }

    pub fn is_clean(&self) -> bool {
        self.matched() == self.total()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &DiscrepancyEntry> {
        self.entries.iter().filter(|e| !e.matches)
    }
}

/// Entry-by-entry comparison over every pair present in either table.
pub fn verify_table(
    name: &str,
    oracle: &BTreeMap<(usize, usize), AlgebraElement>,
    published: &PublishedTable,
) -> DiscrepancyReport {
    let mut pairs: Vec<(usize, usize)> = oracle.keys().chain(published.entries.keys()).copied().collect();
    pairs.sort_unstable();
    pairs.dedup();
    let zero = AlgebraElement::zero(published.catalog);
    let entries = pairs
        .into_iter()
        .map(|(i, j)| {
            let o = oracle.get(&(i, j)).unwrap_or(&zero).clone();
            let p = published.entries.get(&(i, j)).unwrap_or(&zero).clone();
            let matches = o == p;
            DiscrepancyEntry { i, j, oracle: o, published: p, matches }
        })
        .collect();
    DiscrepancyReport {
        table: name.to_string(),
        origin: published.origin.clone(),
        entries,
        notes: published.notes.clone(),
    }
}

/// Compares the oracle commutator table of `catalog` with the printed one.
pub fn verify_against_paper(catalog: Catalog) -> DiscrepancyReport {
    let published = published_table(catalog);
    let oracle = commutator_table(catalog).expect("built-in catalogs are closed");
    let mut report = verify_table(catalog.name(), &oracle.entries, published);
    for (k, printed) in published.printed_expressions.iter().enumerate() {
        let bound = generator(catalog, k + 1).expect("index in range");
        if *printed != bound {
            report.notes.push(format!(
                "printed expression {printed} for {} differs from the indexed generator {bound}; the index is used",
                catalog.label(k + 1)
            ));
        }
    }
    report
}
