//! Named set systems and the excluded-minor lists of the minor-closed classes.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bits::{self, iter_bits};
use crate::canonical::{canonical_form, canonical_form_with_cap, CanonicalForm};
use crate::error::{Error, Result};
use crate::setsystem::{Mask, SetSystem};

/// A named system with its canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub system: SetSystem,
    pub canonical: CanonicalForm,
}

impl CatalogEntry {
    pub fn new(name: impl Into<String>, system: SetSystem) -> Result<Self> {
        let canonical = canonical_form_with_cap(&system, crate::MAX_ELEMENTS)?;
        Ok(CatalogEntry {
            name: name.into(),
            system,
            canonical,
        })
    }

    pub fn n(&self) -> usize {
        self.system.n()
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn sys(names: &[&str], sets: &[&str]) -> SetSystem {
    let ls = labels(names);
    let masks = sets.iter().map(|s| {
        s.chars()
            .map(|c| {
                1 << names
                    .iter()
                    .position(|l| l.starts_with(c))
                    .expect("known label")
            })
            .fold(0, |a, b| a | b)
    });
    SetSystem::new(ls, masks).expect("catalog definitions are well formed")
}

const ABC: [&str; 3] = ["a", "b", "c"];
const ABCD: [&str; 4] = ["a", "b", "c", "d"];

/// `S_k = ({e1, …, ek}, {∅, E})`. `S_2` uses labels `a, b`.
pub fn s_k(k: usize) -> Result<SetSystem> {
    if k > crate::MAX_ELEMENTS {
        return Err(Error::TooManyElements(k));
    }
    let ls: Vec<String> = if k == 2 {
        labels(&["a", "b"])
    } else {
        (1..=k).map(|i| format!("e{i}")).collect()
    };
    SetSystem::new(ls, [0, bits::full(k)])
}

pub fn t(i: usize) -> Result<SetSystem> {
    let s = match i {
        1 => sys(&ABC, &["", "ab", "abc"]),
        2 => sys(&ABC, &["", "ab", "ac", "abc"]),
        3 => sys(&ABC, &["", "a", "ab", "abc"]),
        4 => sys(&ABC, &["", "a", "ab", "ac", "abc"]),
        5 => sys(&ABCD, &["", "ab", "abcd"]),
        6 => sys(&ABCD, &["", "ab", "ac", "abcd"]),
        7 => sys(&ABCD, &["", "ab", "ac", "ad", "abcd"]),
        8 => sys(&ABCD, &["", "a", "ab", "ac", "ad", "abcd"]),
        _ => return Err(Error::UnknownName(format!("T{i}"))),
    };
    Ok(s)
}

/// Edge lists of the graphs whose edges give the 2-sets of `U3`–`U7`.
const U_GRAPHS: [&[&str]; 5] = [
    &["ab", "cd"],
    &["ab", "bc", "cd"],
    &["ab", "bc", "ad", "cd"],
    &["ab", "bc", "ac", "ad"],
    &["ab", "bc", "ac", "cd", "ad"],
];

pub fn u(i: usize) -> Result<SetSystem> {
    match i {
        1 => Ok(sys(&["a", "b"], &["", "a", "ab"])),
        2 => Ok(sys(&ABC, &["", "c", "ab", "abc"])),
        3..=7 => {
            let mut sets: Vec<&str> = alloc::vec!["", "abcd"];
            sets.extend_from_slice(U_GRAPHS[i - 3]);
            Ok(sys(&ABCD, &sets))
        }
        _ => Err(Error::UnknownName(format!("U{i}"))),
    }
}

pub fn p(i: usize) -> Result<SetSystem> {
    let s = match i {
        1 => sys(&ABC, &["", "ab", "ac", "bc", "abc"]),
        2 => sys(&ABC, &["", "a", "b", "c", "ab", "ac", "bc"]),
        3 => sys(&ABC, &["", "b", "c", "ab", "ac", "abc"]),
        4 => sys(&ABCD, &["", "ab", "ac", "ad", "bc", "bd", "cd"]),
        5 => sys(&ABCD, &["", "ab", "ad", "bc", "cd", "abcd"]),
        _ => return Err(Error::UnknownName(format!("P{i}"))),
    };
    Ok(s)
}

fn base_system(name: &str) -> Result<SetSystem> {
    let unknown = || Error::UnknownName(name.to_string());
    let mut chars = name.chars();
    let head = chars.next().ok_or_else(unknown)?;
    let rest = chars.as_str();
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
        return Err(unknown());
    }
    let i: usize = rest.parse().map_err(|_| unknown())?;
    match head {
        'S' => match i {
            1 => SetSystem::new(labels(&["e1"]), [0, 1]),
            _ => s_k(i),
        },
        'T' => t(i),
        'U' => u(i),
        'P' => p(i),
        _ => Err(unknown()),
    }
    .map_err(|e| match e {
        Error::UnknownName(_) => unknown(),
        other => other,
    })
}

fn parse_twist_set(s: &SetSystem, spec: &str, whole: &str) -> Result<Mask> {
    let malformed = || Error::MalformedTwist(whole.to_string());
    if spec.is_empty() {
        return Ok(s.ground());
    }
    if let Some(inner) = spec.strip_prefix('{') {
        let inner = inner.strip_suffix('}').ok_or_else(malformed)?;
        if inner.trim().is_empty() {
            return Ok(0);
        }
        let names: Vec<&str> = inner.split(',').map(str::trim).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(malformed());
        }
        return s.mask_of(&names);
    }
    if spec.contains(['{', '}', ',', '*']) {
        return Err(malformed());
    }
    if let Some(i) = s.index_of(spec) {
        return Ok(1 << i);
    }
    // run-together single-character labels, e.g. `T5*ad`
    let mut m = 0;
    for c in spec.chars() {
        let mut buf = [0u8; 4];
        m |= 1
            << s.index_of(c.encode_utf8(&mut buf))
                .ok_or_else(|| Error::UnknownElement(spec.to_string()))?;
    }
    Ok(m)
}

/// Builds a named system: `S1`, `S2`, `S_k`/`Sk`, `T1`–`T8`, `U1`–`U7`,
/// `P1`–`P5`, optionally followed by a twist `*{a,b}`, `*a`, or `*` (dual).
pub fn make_named(name: &str) -> Result<SetSystem> {
    let name = name.trim();
    match name.split_once('*') {
        None => base_system(name),
        Some((base, spec)) => {
            let s = base_system(base.trim())?;
            let a = parse_twist_set(&s, spec.trim(), name)?;
            s.twist(a)
        }
    }
}

fn lex_cmp(a: Mask, b: Mask) -> core::cmp::Ordering {
    bits::size(a)
        .cmp(&bits::size(b))
        .then_with(|| iter_bits(a).cmp(iter_bits(b)))
}

/// All subsets of an `n`-set ordered by size, then lexicographically.
pub fn subsets_size_lex(n: usize) -> Vec<Mask> {
    let mut v: Vec<Mask> = (0..(1u32 << n)).collect();
    v.sort_by(|&a, &b| lex_cmp(a, b));
    v
}

/// The name of `base * a`: `X`, `X*`, or `X*{…}`.
pub fn twist_name(base: &str, s: &SetSystem, a: Mask) -> String {
    if a == 0 {
        base.to_string()
    } else if a == s.ground() {
        format!("{base}*")
    } else {
        format!("{base}*{}", s.format_set(a))
    }
}

/// Twists of `s` up to isomorphism, each represented by its smallest twist
/// set in (size, lex) order and listed in that order.
pub fn twist_classes_named(s: &SetSystem, base: &str) -> Result<Vec<CatalogEntry>> {
    if s.n() > 8 {
        return Err(Error::PermutationCap { n: s.n(), cap: 8 });
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in subsets_size_lex(s.n()) {
        let t = s.twist(a)?;
        let form = canonical_form(&t)?;
        if seen.insert(form.clone()) {
            out.push(CatalogEntry {
                name: twist_name(base, s, a),
                system: t,
                canonical: form,
            });
        }
    }
    Ok(out)
}

pub fn twist_classes(s: &SetSystem) -> Result<Vec<CatalogEntry>> {
    twist_classes_named(s, "S")
}

/// Standard names of the twists of `T_i` up to isomorphism, in table order.
pub fn twist_table_labels(i: usize) -> Result<&'static [&'static str]> {
    const TABLES: [&[&str]; 8] = [
        &["T1", "T1*", "T1*{a}", "T1*{b,c}", "T1*{c}", "T1*{a,b}"],
        &["T2", "T2*", "T2*{a}", "T2*{b,c}", "T2*{c}", "T2*{a,b}"],
        &["T3", "T3*{b}", "T3*{a}", "T3*{b,c}"],
        &["T4", "T4*", "T4*{a}", "T4*{b,c}", "T4*{b}", "T4*{a,c}"],
        &[
            "T5",
            "T5*{a,d}",
            "T5*{a}",
            "T5*{b,c,d}",
            "T5*{a,b}",
            "T5*{c,d}",
        ],
        &[
            "T6",
            "T6*{b}",
            "T6*{a,d}",
            "T6*{a}",
            "T6*{b,c,d}",
            "T6*{a,b}",
            "T6*{c,d}",
        ],
        &[
            "T7",
            "T7*",
            "T7*{a}",
            "T7*{b,c,d}",
            "T7*{b}",
            "T7*{a,c,d}",
            "T7*{a,b}",
            "T7*{c,d}",
        ],
        &[
            "T8",
            "T8*",
            "T8*{a}",
            "T8*{b,c,d}",
            "T8*{b}",
            "T8*{a,c,d}",
            "T8*{a,b}",
            "T8*{c,d}",
        ],
    ];
    TABLES
        .get(i.wrapping_sub(1))
        .copied()
        .ok_or_else(|| Error::UnknownName(format!("T{i}")))
}

/// The twists of `T_i` under their standard names.
pub fn twist_table(i: usize) -> Result<Vec<CatalogEntry>> {
    twist_table_labels(i)?
        .iter()
        .map(|&name| CatalogEntry::new(name, make_named(name)?))
        .collect()
}

fn entries(names: &[&str]) -> Vec<CatalogEntry> {
    names
        .iter()
        .map(|&n| CatalogEntry::new(n, make_named(n).expect("catalog name")).expect("small system"))
        .collect()
}

/// `𝒯`: every twist of `T1`–`T8`, 51 systems.
pub fn t_family() -> Vec<CatalogEntry> {
    (1..=8)
        .flat_map(|i| twist_table(i).expect("tables exist"))
        .collect()
}

fn t_family_of(indices: &[usize]) -> Vec<CatalogEntry> {
    indices
        .iter()
        .flat_map(|&i| twist_table(i).expect("tables exist"))
        .collect()
}

/// `S_k * {e1, …, ej}`.
pub fn s_twist(k: usize, j: usize) -> Result<CatalogEntry> {
    let s = s_k(k)?;
    let a = bits::full(j.min(k));
    CatalogEntry::new(twist_name(&format!("S{k}"), &s, a), s.twist(a)?)
}

/// Twists of `S_k` for `k` in `ks`, one per isomorphism class, filtered by
/// the twist-set size `j ≤ k/2`.
fn s_twists(
    ks: impl Iterator<Item = usize>,
    keep: impl Fn(usize, usize) -> bool,
) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for k in ks {
        for j in 0..=k / 2 {
            if keep(k, j) {
                out.push(s_twist(k, j).expect("k within range"));
            }
        }
    }
    out
}

/// `𝒮` truncated to ground sets of at most `cap` elements.
pub fn s_family(cap: usize) -> Vec<CatalogEntry> {
    s_twists(3..=cap, |_, _| true)
}

/// `𝒫`: every twist of `P1`–`P5`, up to isomorphism.
pub fn p_family() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for i in 1..=5 {
        let s = p(i).expect("P1-P5 exist");
        out.extend(twist_classes_named(&s, &format!("P{i}")).expect("small"));
    }
    out
}

/// The minor-closed classes with a known excluded-minor list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExminorClassId {
    DeltaMatroid,
    EvenDeltaWithinEven,
    EvenDeltaWithinAll,
    HiggsLift,
    FullHiggs,
    EvenHiggsWithinEven,
    MatroidEquicardinal,
    Binary,
    MatroidStack,
    EvenMatroidStack,
    Paving,
    SparsePaving,
    QuotientStack,
}

impl ExminorClassId {
    pub const ALL: [ExminorClassId; 13] = [
        ExminorClassId::DeltaMatroid,
        ExminorClassId::EvenDeltaWithinEven,
        ExminorClassId::EvenDeltaWithinAll,
        ExminorClassId::HiggsLift,
        ExminorClassId::FullHiggs,
        ExminorClassId::EvenHiggsWithinEven,
        ExminorClassId::MatroidEquicardinal,
        ExminorClassId::Binary,
        ExminorClassId::MatroidStack,
        ExminorClassId::EvenMatroidStack,
        ExminorClassId::Paving,
        ExminorClassId::SparsePaving,
        ExminorClassId::QuotientStack,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExminorClassId::DeltaMatroid => "delta",
            ExminorClassId::EvenDeltaWithinEven => "even-delta",
            ExminorClassId::EvenDeltaWithinAll => "even-delta-all",
            ExminorClassId::HiggsLift => "higgs",
            ExminorClassId::FullHiggs => "full-higgs",
            ExminorClassId::EvenHiggsWithinEven => "even-higgs",
            ExminorClassId::MatroidEquicardinal => "matroid",
            ExminorClassId::Binary => "binary",
            ExminorClassId::MatroidStack => "matroid-stack",
            ExminorClassId::EvenMatroidStack => "even-matroid-stack",
            ExminorClassId::Paving => "paving",
            ExminorClassId::SparsePaving => "sparse-paving",
            ExminorClassId::QuotientStack => "quotient",
        }
    }

    /// Whether the list contains members whose size grows with the cap.
    pub fn has_infinite_family(self) -> bool {
        !matches!(
            self,
            ExminorClassId::HiggsLift
                | ExminorClassId::FullHiggs
                | ExminorClassId::EvenHiggsWithinEven
        )
    }
}

impl fmt::Display for ExminorClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExminorClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExminorClassId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

fn dedup(list: Vec<CatalogEntry>, cap: usize) -> Vec<CatalogEntry> {
    let mut seen = BTreeSet::new();
    list.into_iter()
        .filter(|e| e.n() <= cap && seen.insert(e.canonical.clone()))
        .collect()
}

/// The excluded minors of a class, truncated to ground sets of at most
/// `cap` elements, canonicalized and deduplicated in list order.
pub fn excluded_minor_set(id: ExminorClassId, cap: usize) -> Vec<CatalogEntry> {
    use ExminorClassId::*;
    let cap = cap.min(crate::MAX_ELEMENTS);
    let list = match id {
        DeltaMatroid => {
            let mut v = s_family(cap);
            v.extend(t_family());
            v
        }
        EvenDeltaWithinEven => {
            let mut v = s_twists((4..=cap).step_by(2), |_, _| true);
            v.extend(t_family_of(&[5, 6, 7]));
            v
        }
        EvenDeltaWithinAll => {
            let mut v = entries(&["S1"]);
            v.extend(s_family(cap));
            v.extend(t_family_of(&[5, 6, 7]));
            v
        }
        HiggsLift => entries(&["U1", "U2", "U3", "U4", "U5", "U6", "U7"]),
        FullHiggs => entries(&["U1", "S2"]),
        EvenHiggsWithinEven => entries(&["U3", "U4", "U5", "U6", "U7"]),
        MatroidEquicardinal => {
            let mut v = entries(&["T5*{a,d}", "T6*{a,d}"]);
            v.extend(s_twists((4..=cap).step_by(2), |k, j| j == k / 2));
            v
        }
        Binary => {
            let mut v = p_family();
            v.extend(s_family(cap));
            v.extend(t_family());
            v
        }
        MatroidStack => {
            let mut v = s_twists(3..=cap, |k, j| 2 * j != k);
            v.extend(t_family_of(&[1, 2, 3, 4]));
            v.extend(entries(&[
                "T5",
                "T5*a",
                "T5*{b,c,d}",
                "T6",
                "T6*a",
                "T6*b",
                "T6*{b,c,d}",
                "T7",
                "T7*a",
                "T7*b",
                "T7*{a,c,d}",
                "T7*{b,c,d}",
                "T7*",
                "T8",
                "T8*a",
                "T8*b",
                "T8*{a,c,d}",
                "T8*{b,c,d}",
                "T8*",
            ]));
            v
        }
        EvenMatroidStack => {
            let mut v = s_twists((4..=cap).step_by(2), |k, j| 2 * j != k);
            v.extend(entries(&[
                "T5",
                "T5*a",
                "T5*{b,c,d}",
                "T6",
                "T6*a",
                "T6*b",
                "T6*{b,c,d}",
                "T7",
                "T7*a",
                "T7*b",
                "T7*{b,c,d}",
                "T7*{a,c,d}",
                "T7*",
            ]));
            v
        }
        Paving => {
            let mut v = s_twists(3..=cap, |_, j| j == 0);
            v.extend(entries(&[
                "T1*{b,c}",
                "T1*",
                "T2",
                "T2*{a,b}",
                "T2*{b,c}",
                "T2*",
                "T3*b",
                "T3*{b,c}",
                "T4",
                "T4*b",
                "T4*{a,c}",
                "T4*{b,c}",
                "T6*{b,c,d}",
                "T7",
                "T7*b",
                "T7*{b,c,d}",
                "T8",
                "T8*{b,c,d}",
            ]));
            v
        }
        SparsePaving => {
            let mut v = s_twists(3..=cap, |_, j| j == 0);
            v.extend(entries(&["T2", "T2*", "T3*b", "T4*b", "T4*{a,c}"]));
            v
        }
        QuotientStack => {
            let mut v = s_twists(3..=cap, |_, j| j == 0);
            v.extend(entries(&[
                "T1", "T1*", "T2", "T2*", "T3", "T4", "T4*", "T5", "T6", "T7", "T7*", "T8", "T8*",
            ]));
            v
        }
    };
    dedup(list, cap)
}
