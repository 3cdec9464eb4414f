//! Line-delimited JSON records written by the CLI.
//!
//! A witness record looks like
//!
//! ```text
//! {"degree":3,"genus":0,"orders":[2,2,2,2],"cycles":[[1,2],[2,3],[2,3],[1,2]],"checks":{...}}
//! ```
//!
//! Cycles are support lists in canonical rotation (smallest point first); the
//! identity is `[]`. Serializing a parsed record reproduces it byte for byte.

use hurwitz_core::{CheckKind, Cycle, Permutation, RamificationData, Result, SearchOutcome, WitnessTuple};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub lengths: bool,
    pub product: bool,
    pub transitive: bool,
    pub genus: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consecutive: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub degree: usize,
    pub genus: Option<i64>,
    pub orders: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
    #[serde(default)]
    pub checks: Option<Checks>,
}

impl WitnessRecord {
    pub fn new(data: &RamificationData, witness: &WitnessTuple) -> Self {
        let report = witness.report();
        let get = |kind| report.get(kind).unwrap_or(false);
        WitnessRecord {
            degree: witness.degree(),
            genus: data.genus(),
            orders: data.orders().to_vec(),
            cycles: witness.cycles().iter().map(|c| c.support().to_vec()).collect(),
            checks: Some(Checks {
                lengths: get(CheckKind::Lengths),
                product: get(CheckKind::Product),
                transitive: get(CheckKind::Transitive),
                genus: get(CheckKind::Genus),
                consecutive: report.get(CheckKind::Consecutive),
            }),
        }
    }

    pub fn parse(line: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(line.trim())
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    /// Ramification data carrying the record's claimed genus.
    pub fn data(&self) -> Result<RamificationData> {
        Ok(RamificationData::new(self.degree, self.orders.clone())?.with_genus(self.genus))
    }

    pub fn witness(&self) -> Result<WitnessTuple> {
        let cycles = self
            .cycles
            .iter()
            .map(|s| Cycle::new(self.degree, s.clone()))
            .collect::<Result<Vec<_>>>()?;
        WitnessTuple::new(self.degree, cycles)
    }
}

/// Outcome of `search` / `count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub degree: usize,
    pub profiles: String,
    pub exists: bool,
    pub tuples_with_first_fixed: String,
    pub raw_tuple_count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_count: Option<String>,
    /// Each permutation as its list of nontrivial disjoint cycles.
    pub witness: Option<Vec<Vec<Vec<usize>>>>,
    pub max_degree: usize,
}

impl SearchRecord {
    pub fn new(degree: usize, profiles: String, outcome: &SearchOutcome) -> Self {
        // counts go out as strings: they are u128 and may exceed what JSON
        // readers hold exactly
        SearchRecord {
            degree,
            profiles,
            exists: outcome.exists,
            tuples_with_first_fixed: outcome.tuples_with_first_fixed.to_string(),
            raw_tuple_count: outcome.raw_tuple_count.to_string(),
            class_count: outcome.class_count.map(|c| c.to_string()),
            witness: outcome
                .witness
                .as_ref()
                .map(|w| w.iter().map(permutation_cycles).collect()),
            max_degree: outcome.limits.max_degree,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }
}

fn permutation_cycles(p: &Permutation) -> Vec<Vec<usize>> {
    p.cycles().iter().map(|c| c.support().to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use hurwitz_core::construct_witness;

    #[test]
    fn record_layout_is_stable() {
        let (_, w) = construct_witness(2, &[2, 2]).unwrap();
        let data = RamificationData::new(2, vec![2, 2]).unwrap();
        let line = WitnessRecord::new(&data, &w).to_line();
        assert_eq!(
            line,
            r#"{"degree":2,"genus":0,"orders":[2,2],"cycles":[[1,2],[1,2]],"checks":{"lengths":true,"product":true,"transitive":true,"genus":true,"consecutive":true}}"#
        );
        assert_eq!(WitnessRecord::parse(&line).unwrap().to_line(), line);
    }

    #[test]
    fn checks_may_be_omitted_on_input() {
        let r = WitnessRecord::parse(r#"{"degree":3,"genus":0,"orders":[3,3],"cycles":[[1,2,3],[1,3,2]]}"#).unwrap();
        assert_eq!(r.checks, None);
        assert_eq!(r.witness().unwrap().lengths(), vec![3, 3]);
        assert!(WitnessRecord::parse(r#"{"degree":3}"#).is_err());
    }
}
