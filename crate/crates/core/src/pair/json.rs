//! Pair and environment files.
//!
//! ```json
//! {"atoms": ["a0", "a1"], "coding": [{"args": ["a0"], "res": "a0", "value": "a1"}]}
//! {"env": [{"var": "x", "atoms": ["a0"]}]}
//! ```
//!
//! Each coding entry states `c({args}, res) = value`. `args` is a set:
//! order does not matter and duplicates are rejected. Unknown fields are
//! rejected. Atoms are numbered `0..n` in file order and keep their labels.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Atom, Key, PairData, PartialPair};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub atoms: Vec<String>,
    #[serde(default)]
    pub coding: Vec<PairEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub args: Vec<String>,
    pub res: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvFile {
    pub env: Vec<EnvEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvEntry {
    pub var: String,
    pub atoms: Vec<String>,
}

impl PairFile {
    /// Unvalidated pair data. Labels that appear only in the coding are given
    /// fresh atoms outside the carrier so that validation reports them.
    pub fn to_data(&self) -> Result<PairData> {
        let mut ids: BTreeMap<String, Atom> = BTreeMap::new();
        let mut data = PairData::default();
        for label in &self.atoms {
            let fresh = Atom(ids.len() as u128);
            let id = *ids.entry(label.clone()).or_insert(fresh);
            data.atoms.push(id);
            data.labels.insert(id, label.clone());
        }
        let mut atom = |label: &String, data: &mut PairData| -> Atom {
            let fresh = Atom(ids.len() as u128);
            let a = *ids.entry(label.clone()).or_insert(fresh);
            data.labels.entry(a).or_insert_with(|| label.clone());
            a
        };
        for entry in &self.coding {
            let distinct: BTreeSet<&String> = entry.args.iter().collect();
            if distinct.len() != entry.args.len() {
                return Err(Error::Format(format!("duplicate member in args {:?}", entry.args)));
            }
            let args: Vec<Atom> = entry.args.iter().map(|l| atom(l, &mut data)).collect();
            let res = atom(&entry.res, &mut data);
            let value = atom(&entry.value, &mut data);
            data.entries.push((Key::new(args, res), value));
        }
        Ok(data)
    }

    pub fn from_pair(p: &PartialPair) -> PairFile {
        PairFile {
            atoms: p.atoms().iter().map(|&a| p.label(a)).collect(),
            coding: p
                .coding()
                .iter()
                .map(|(k, v)| PairEntry {
                    args: k.args.iter().map(|&a| p.label(a)).collect(),
                    res: p.label(k.res),
                    value: p.label(*v),
                })
                .collect(),
        }
    }
}

pub fn pair_from_json(text: &str) -> Result<PairData> {
    let file: PairFile = serde_json::from_str(text)?;
    file.to_data()
}

pub fn pair_to_json(p: &PartialPair) -> serde_json::Value {
    serde_json::to_value(PairFile::from_pair(p)).expect("pair file serializes")
}

pub fn environment_from_json(text: &str) -> Result<EnvFile> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::Violation;

    #[test]
    fn reads_and_writes() {
        let text = r#"{"atoms": ["a0", "a1"], "coding": [{"args": ["a1", "a0"], "res": "a0", "value": "a1"}]}"#;
        let p = pair_from_json(text).unwrap().into_pair().unwrap();
        assert_eq!(p, PartialPair::build([0, 1], [(vec![0, 1], 0, 1)]).unwrap());
        assert_eq!(p.label(Atom(1)), "a1");
        let back = pair_to_json(&p);
        assert_eq!(
            back.to_string(),
            r#"{"atoms":["a0","a1"],"coding":[{"args":["a0","a1"],"res":"a0","value":"a1"}]}"#
        );
    }

    #[test]
    fn rejects_unknown_fields_and_duplicate_args() {
        assert!(pair_from_json(r#"{"atoms": [], "extra": 1}"#).is_err());
        assert!(pair_from_json(r#"{"atoms": ["a"], "coding": [{"args": ["a"], "res": "a", "value": "a", "x": 0}]}"#).is_err());
        assert!(matches!(
            pair_from_json(r#"{"atoms": ["a"], "coding": [{"args": ["a", "a"], "res": "a", "value": "a"}]}"#),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn stray_labels_are_reported() {
        let data = pair_from_json(r#"{"atoms": ["a"], "coding": [{"args": [], "res": "b", "value": "a"}]}"#).unwrap();
        let report = data.validate();
        assert!(matches!(report.violations[..], [Violation::OutsideCarrier { .. }]));
        let data = pair_from_json(r#"{"atoms": ["a", "a"]}"#).unwrap();
        assert!(matches!(data.validate().violations[..], [Violation::DuplicateAtom(_)]));
    }

    #[test]
    fn environment_file() {
        let env = environment_from_json(r#"{"env": [{"var": "x", "atoms": ["a0"]}]}"#).unwrap();
        assert_eq!(env.env[0].var, "x");
        assert!(environment_from_json(r#"{"env": [{"var": "x"}]}"#).is_err());
    }
}
