//! File formats: set systems (JSON and compact text), regions, matrices,
//! witnesses and census reports.

use std::collections::BTreeMap;

use dmkit_core::canonical::canonical_form;
use dmkit_core::census::{CensusReport, ClassCounts, Discrepancy, TheoremId};
use dmkit_core::gf2::SkewSymMatrixGF2;
use dmkit_core::latticepath::{parse_word, word_string, Region};
use dmkit_core::minor_scan::MinorWitness;
use dmkit_core::{Mask, SeWitness, SetSystem};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Core(#[from] dmkit_core::Error),
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Compact,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetSystemFile {
    elements: Vec<String>,
    feasible: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
}

/// Feasible sets ordered by size, then by their element indices.
fn ordered_sets(s: &SetSystem) -> Vec<Mask> {
    let mut sets = s.feasible().to_vec();
    sets.sort_by_key(|&m| {
        let idx: Vec<u32> = (0..s.n() as u32).filter(|i| m >> i & 1 == 1).collect();
        (m.count_ones(), idx)
    });
    sets
}

fn system_from_parts(elements: Vec<String>, sets: Vec<Vec<String>>) -> Result<SetSystem> {
    let empty = SetSystem::new(elements.clone(), [])?;
    let masks = sets
        .iter()
        .map(|set| {
            let refs: Vec<&str> = set.iter().map(String::as_str).collect();
            let m = empty.mask_of(&refs)?;
            if m.count_ones() as usize != set.len() {
                return Err(FormatError::Malformed(format!(
                    "repeated element in set {set:?}"
                )));
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SetSystem::new(elements, masks)?)
}

/// Parses either format, telling them apart by the first character.
pub fn parse_set_system(text: &str) -> Result<SetSystem> {
    let t = text.trim_start();
    if t.starts_with('{') {
        let f: SetSystemFile = serde_json::from_str(t)?;
        system_from_parts(f.elements, f.feasible)
    } else {
        parse_compact(t)
    }
}

/// `a b c | - ; a b ; a b c`: labels, a bar, then sets separated by `;`
/// with `-` for the empty set.
pub fn parse_compact(text: &str) -> Result<SetSystem> {
    let line = text.trim();
    let (head, tail) = line
        .split_once('|')
        .ok_or_else(|| FormatError::Malformed("compact format needs `labels | sets`".into()))?;
    let elements: Vec<String> = head.split_whitespace().map(String::from).collect();
    let mut sets = Vec::new();
    if !tail.trim().is_empty() {
        for part in tail.split(';') {
            let part = part.trim();
            match part {
                "" => return Err(FormatError::Malformed("empty entry between `;`".into())),
                "-" => sets.push(Vec::new()),
                _ => sets.push(part.split_whitespace().map(String::from).collect()),
            }
        }
    }
    system_from_parts(elements, sets)
}

pub fn to_json(s: &SetSystem) -> String {
    to_json_kind(s, None)
}

pub fn to_json_kind(s: &SetSystem, kind: Option<&str>) -> String {
    let file = SetSystemFile {
        elements: s.labels().to_vec(),
        feasible: ordered_sets(s)
            .into_iter()
            .map(|m| s.labels_of(m).into_iter().map(String::from).collect())
            .collect(),
        kind: kind.map(String::from),
    };
    serde_json::to_string(&file).expect("plain data serializes")
}

pub fn to_compact(s: &SetSystem) -> String {
    let sets: Vec<String> = ordered_sets(s)
        .into_iter()
        .map(|m| {
            if m == 0 {
                "-".to_string()
            } else {
                s.labels_of(m).join(" ")
            }
        })
        .collect();
    format!("{} | {}", s.labels().join(" "), sets.join(" ; "))
}

pub fn serialize(s: &SetSystem, format: Format) -> String {
    match format {
        Format::Json => to_json(s),
        Format::Compact => to_compact(s),
    }
}

/// The canonical form written over the labels of `s`, identical for isomorphic inputs
/// that share a label set.
pub fn canonical_json(s: &SetSystem) -> Result<String> {
    let cf = canonical_form(s)?;
    Ok(to_json(&SetSystem::new(
        s.labels().to_vec(),
        cf.sets().iter().copied(),
    )?))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionFile {
    d: usize,
    c: usize,
    u: usize,
    v: usize,
    #[serde(rename = "P")]
    p: String,
    #[serde(rename = "Q")]
    q: String,
}

pub fn parse_region(text: &str) -> Result<Region> {
    let f: RegionFile = serde_json::from_str(text)?;
    let r = Region {
        d: f.d,
        c: f.c,
        u: f.u,
        v: f.v,
        p: parse_word(&f.p)?,
        q: parse_word(&f.q)?,
    };
    dmkit_core::latticepath::validate_region(&r)?;
    Ok(r)
}

pub fn region_to_json(r: &Region) -> String {
    let f = RegionFile {
        d: r.d,
        c: r.c,
        u: r.u,
        v: r.v,
        p: word_string(&r.p),
        q: word_string(&r.q),
    };
    serde_json::to_string(&f).expect("plain data serializes")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    labels: Vec<String>,
    rows: Vec<String>,
}

/// A symmetric GF(2) matrix with element labels.
pub fn parse_matrix(text: &str) -> Result<(Vec<String>, SkewSymMatrixGF2)> {
    let f: MatrixFile = serde_json::from_str(text)?;
    if f.labels.len() != f.rows.len() {
        return Err(FormatError::Malformed(format!(
            "{} labels but {} rows",
            f.labels.len(),
            f.rows.len()
        )));
    }
    let c = SkewSymMatrixGF2::from_bit_strings(&f.rows)?;
    // labels are validated by building an empty system on them
    SetSystem::new(f.labels.clone(), [])?;
    Ok((f.labels, c))
}

pub fn matrix_to_json(labels: &[String], c: &SkewSymMatrixGF2) -> String {
    let f = MatrixFile {
        labels: labels.to_vec(),
        rows: c.to_bit_strings(),
    };
    serde_json::to_string(&f).expect("plain data serializes")
}

/// Labels of a mask as a JSON-friendly list.
pub fn set_labels(s: &SetSystem, m: Mask) -> Vec<String> {
    s.labels_of(m).into_iter().map(String::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeWitnessJson {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub u: String,
}

impl SeWitnessJson {
    pub fn new(s: &SetSystem, w: &SeWitness) -> Self {
        SeWitnessJson {
            x: set_labels(s, w.x),
            y: set_labels(s, w.y),
            u: s.label(w.u).to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitnessJson {
    pub deleted: Vec<String>,
    pub contracted: Vec<String>,
    pub target: String,
}

impl MinorWitnessJson {
    pub fn new(s: &SetSystem, w: &MinorWitness) -> Self {
        MinorWitnessJson {
            deleted: set_labels(s, w.deleted),
            contracted: set_labels(s, w.contracted),
            target: w.target_name.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyJson {
    /// Decimal string; indices reach 2^128.
    pub family_index: String,
    pub theorem: String,
    pub direct: bool,
    pub exminor: bool,
    pub system: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MinorWitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub n: usize,
    pub theorem: Option<String>,
    pub systems: u64,
    pub in_scope: u64,
    pub members: u64,
    pub counts: BTreeMap<String, u64>,
    pub discrepancy_count: u64,
    pub discrepancies: Vec<DiscrepancyJson>,
}

impl ReportJson {
    pub fn from_report(r: &CensusReport) -> Self {
        let discrepancies = r
            .discrepancies
            .iter()
            .map(|d| {
                let s = SetSystem::from_family_index(r.n, d.family_index).expect("recorded index");
                DiscrepancyJson {
                    family_index: d.family_index.to_string(),
                    theorem: d.theorem.to_string(),
                    direct: d.direct,
                    exminor: d.exminor,
                    system: to_compact(&s),
                    witness: d.witness.as_ref().map(|w| MinorWitnessJson::new(&s, w)),
                }
            })
            .collect();
        ReportJson {
            n: r.n,
            theorem: r.theorem.map(|t| t.to_string()),
            systems: r.systems,
            in_scope: r.in_scope,
            members: r.members,
            counts: r
                .counts
                .entries()
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
            discrepancy_count: r.discrepancy_count,
            discrepancies,
        }
    }

    pub fn to_report(&self) -> Result<CensusReport> {
        let theorem = self
            .theorem
            .as_deref()
            .map(str::parse::<TheoremId>)
            .transpose()?;
        let get = |k: &str| self.counts.get(k).copied().unwrap_or(0);
        let counts = ClassCounts {
            delta: get("delta-matroid"),
            even_delta: get("even-delta-matroid"),
            higgs: get("higgs"),
            full_higgs: get("full-higgs"),
            even_higgs: get("even-higgs"),
            matroid: get("matroid"),
            matroid_stack: get("matroid-stack"),
            paving: get("paving"),
            sparse_paving: get("sparse-paving"),
            quotient: get("quotient"),
            binary: get("binary"),
        };
        let discrepancies = self
            .discrepancies
            .iter()
            .map(|d| {
                let family_index: u128 = d.family_index.parse().map_err(|_| {
                    FormatError::Malformed(format!("bad family index `{}`", d.family_index))
                })?;
                let s = SetSystem::from_family_index(self.n, family_index)?;
                let witness = d
                    .witness
                    .as_ref()
                    .map(|w| -> Result<MinorWitness> {
                        let del: Vec<&str> = w.deleted.iter().map(String::as_str).collect();
                        let con: Vec<&str> = w.contracted.iter().map(String::as_str).collect();
                        Ok(MinorWitness {
                            deleted: s.mask_of(&del)?,
                            contracted: s.mask_of(&con)?,
                            target_name: w.target.clone(),
                        })
                    })
                    .transpose()?;
                Ok(Discrepancy {
                    family_index,
                    theorem: d.theorem.parse()?,
                    direct: d.direct,
                    exminor: d.exminor,
                    witness,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CensusReport {
            n: self.n,
            theorem,
            systems: self.systems,
            in_scope: self.in_scope,
            members: self.members,
            counts,
            discrepancy_count: self.discrepancy_count,
            discrepancies,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dmkit_core::catalog::make_named;

    #[test]
    fn parses_spec_examples() {
        let s2 = parse_set_system(r#"{"elements":["a","b"],"feasible":[[],["a","b"]]}"#).unwrap();
        assert_eq!(s2.feasible(), &[0, 0b11]);
        let e = parse_set_system(r#"{"elements":["e"],"feasible":[[]]}"#).unwrap();
        assert_eq!(e.element_status(0), Ok(dmkit_core::ElementStatus::Loop));
        let t1 = parse_set_system("a b c | - ; a b ; a b c").unwrap();
        assert_eq!(t1, make_named("T1").unwrap());
    }

    #[test]
    fn round_trips() {
        let s = make_named("T8*{a,c,d}").unwrap();
        assert_eq!(parse_set_system(&to_json(&s)).unwrap(), s);
        assert_eq!(parse_set_system(&to_compact(&s)).unwrap(), s);
        let c = canonical_json(&s).unwrap();
        assert_eq!(canonical_json(&parse_set_system(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn improper_is_parseable() {
        let s = parse_set_system("a b |").unwrap();
        assert!(!s.is_proper());
        assert_eq!(to_compact(&s), "a b | ");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_set_system(r#"{"elements":["a","a"],"feasible":[]}"#),
            Err(FormatError::Core(dmkit_core::Error::DuplicateLabel(_)))
        ));
        assert!(matches!(
            parse_set_system(r#"{"elements":["a"],"feasible":[["b"]]}"#),
            Err(FormatError::Core(dmkit_core::Error::UnknownElement(_)))
        ));
        assert!(parse_set_system("a b c").is_err());
        assert!(parse_set_system("{").is_err());
        assert!(parse_set_system("a b | a a").is_err());
    }

    #[test]
    fn region_and_matrix_round_trip() {
        let text = r#"{"d":1,"c":0,"u":1,"v":1,"P":"EN","Q":"EE"}"#;
        let r = parse_region(text).unwrap();
        assert_eq!(region_to_json(&r), text);
        assert!(parse_region(r#"{"d":2,"c":0,"u":0,"v":1,"P":"N","Q":"E"}"#).is_err());
        let m = r#"{"labels":["a","b"],"rows":["01","10"]}"#;
        let (labels, c) = parse_matrix(m).unwrap();
        assert_eq!(matrix_to_json(&labels, &c), m);
        assert!(parse_matrix(r#"{"labels":["a","b"],"rows":["01","00"]}"#).is_err());
    }
}
