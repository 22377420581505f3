//! Minor enumeration in normal form and excluded-minor classification.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::{self, submasks};
use crate::canonical::{canonical_of_masks, CanonicalForm};
use crate::catalog::{excluded_minor_set, CatalogEntry, ExminorClassId};
use crate::error::{Error, Result};
use crate::setsystem::{minor_masks, Mask, SetSystem};
use crate::stacks;

/// A minor `S \ X / Y` isomorphic to a named catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorWitness {
    pub deleted: Mask,
    pub contracted: Mask,
    pub target_name: String,
}

/// Disjoint pairs `(X, Y)` with `|X| + |Y| = t`, ordered by `(X, Y)` mask values.
pub fn pairs_of_total(n: usize, t: usize) -> Vec<(Mask, Mask)> {
    let mut out = Vec::new();
    for u in bits::masks_of_size(n, t) {
        for y in submasks(u) {
            out.push((u & !y, y));
        }
    }
    out.sort_unstable();
    out
}

/// Every valid `(X, Y)` leaving `m` elements, with its minor, in scan order.
pub fn enumerate_minors(
    s: &SetSystem,
    m: usize,
) -> impl Iterator<Item = (Mask, Mask, SetSystem)> + '_ {
    let t = s.n().checked_sub(m);
    let pairs = t.map(|t| pairs_of_total(s.n(), t)).unwrap_or_default();
    pairs
        .into_iter()
        .filter_map(move |(x, y)| s.minor(x, y).ok().map(|minor| (x, y, minor)))
}

#[derive(Clone, Debug, Default)]
struct SizeBucket {
    signatures: BTreeSet<Vec<u16>>,
    forms: BTreeMap<CanonicalForm, String>,
}

/// A compiled list of targets for repeated minor searches.
#[derive(Clone, Debug, Default)]
pub struct ExminorScanner {
    buckets: BTreeMap<usize, SizeBucket>,
    pairs: Vec<Vec<Vec<(Mask, Mask)>>>,
}

impl ExminorScanner {
    /// Targets keep their first name when several are isomorphic.
    pub fn new(targets: &[CatalogEntry], max_n: usize) -> Self {
        let mut buckets: BTreeMap<usize, SizeBucket> = BTreeMap::new();
        for e in targets {
            let b = buckets.entry(e.n()).or_default();
            b.signatures
                .insert(signature_of(e.n(), e.system.feasible()));
            b.forms
                .entry(e.canonical.clone())
                .or_insert_with(|| e.name.clone());
        }
        let max_n = max_n.min(crate::MAX_ELEMENTS);
        let pairs = (0..=max_n)
            .map(|n| (0..=n).map(|t| pairs_of_total(n, t)).collect())
            .collect();
        ExminorScanner { buckets, pairs }
    }

    pub fn target_count(&self) -> usize {
        self.buckets.values().map(|b| b.forms.len()).sum()
    }

    /// The first witness in scan order: fewest removed elements, then by
    /// `(X, Y)` mask values.
    pub fn find(&self, s: &SetSystem) -> Option<MinorWitness> {
        let n = s.n();
        let feasible = s.feasible();
        let mut buf = Vec::new();
        let mut sig = Vec::new();
        for t in 0..=n {
            let Some(bucket) = self.buckets.get(&(n - t)) else {
                continue;
            };
            let owned;
            let pairs: &[(Mask, Mask)] = match self.pairs.get(n) {
                Some(p) => &p[t],
                None => {
                    owned = pairs_of_total(n, t);
                    &owned
                }
            };
            for &(x, y) in pairs {
                sig.clear();
                sig.resize(n - t + 1, 0u16);
                let mut any = false;
                for &f in feasible {
                    if f & y == y && f & x == 0 {
                        sig[bits::size(f) - bits::size(y)] += 1;
                        any = true;
                    }
                }
                if !any || !bucket.signatures.contains(&sig) {
                    continue;
                }
                minor_masks(feasible, n, x, y, &mut buf);
                let form = canonical_of_masks(n - t, &buf);
                if let Some(name) = bucket.forms.get(&form) {
                    return Some(MinorWitness {
                        deleted: x,
                        contracted: y,
                        target_name: name.clone(),
                    });
                }
            }
        }
        None
    }
}

fn signature_of(n: usize, feasible: &[Mask]) -> Vec<u16> {
    let mut sig = alloc::vec![0u16; n + 1];
    for &f in feasible {
        sig[bits::size(f)] += 1;
    }
    sig
}

/// The first minor of `s` isomorphic to one of `targets`, in scan order.
pub fn has_minor_from(s: &SetSystem, targets: &[CatalogEntry]) -> Option<MinorWitness> {
    ExminorScanner::new(targets, s.n()).find(s)
}

/// Outcome of an excluded-minor scan.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Member,
    Excluded(MinorWitness),
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member)
    }

    pub fn witness(&self) -> Option<&MinorWitness> {
        match self {
            Verdict::Member => None,
            Verdict::Excluded(w) => Some(w),
        }
    }
}

/// Checks the side condition under which a class's excluded-minor list is valid.
pub fn check_hypothesis(s: &SetSystem, id: ExminorClassId) -> Result<()> {
    use ExminorClassId::*;
    if !s.is_proper() {
        return Err(Error::Improper);
    }
    let fail = |what: &str| Err(Error::Hypothesis(String::from(what)));
    match id {
        DeltaMatroid | EvenDeltaWithinAll | Binary => Ok(()),
        EvenDeltaWithinEven if !s.is_even() => fail("the set system is not even"),
        EvenDeltaWithinEven => Ok(()),
        HiggsLift | FullHiggs if !s.is_delta_matroid() => {
            fail("the set system is not a delta-matroid")
        }
        HiggsLift | FullHiggs => Ok(()),
        EvenHiggsWithinEven if !(s.is_even() && s.is_delta_matroid()) => {
            fail("the set system is not an even delta-matroid")
        }
        EvenHiggsWithinEven => Ok(()),
        MatroidEquicardinal if !s.is_equicardinal() => {
            fail("the feasible sets are not equicardinal")
        }
        MatroidEquicardinal => Ok(()),
        MatroidStack | EvenMatroidStack | Paving | SparsePaving | QuotientStack => {
            let c = stacks::classify_stack(s)?;
            let ok = match id {
                MatroidStack => c.matroid_stack,
                EvenMatroidStack => c.matroid_stack && c.even,
                Paving => c.paving,
                SparsePaving => c.sparse_paving,
                _ => c.quotient,
            };
            if ok {
                Ok(())
            } else {
                fail(match id {
                    MatroidStack => "not a matroid stack set system",
                    EvenMatroidStack => "not an even matroid stack set system",
                    Paving => "not a paving set system",
                    SparsePaving => "not a sparse paving set system",
                    _ => "not a quotient set system",
                })
            }
        }
    }
}

/// A reusable classifier for one class, valid for ground sets up to `cap`.
#[derive(Clone, Debug)]
pub struct ExminorClassifier {
    id: ExminorClassId,
    cap: usize,
    scanner: ExminorScanner,
}

impl ExminorClassifier {
    pub fn new(id: ExminorClassId, cap: usize) -> Self {
        let targets = excluded_minor_set(id, cap);
        ExminorClassifier {
            id,
            cap,
            scanner: ExminorScanner::new(&targets, cap),
        }
    }

    pub fn id(&self) -> ExminorClassId {
        self.id
    }

    pub fn classify(&self, s: &SetSystem) -> Result<Verdict> {
        if s.n() > self.cap && self.id.has_infinite_family() {
            return Err(Error::InfeasibleParameters(alloc::format!(
                "classifier built for at most {} elements",
                self.cap
            )));
        }
        check_hypothesis(s, self.id)?;
        Ok(self.classify_unchecked(s))
    }

    /// The scan alone, skipping the side condition.
    pub fn classify_unchecked(&self, s: &SetSystem) -> Verdict {
        match self.scanner.find(s) {
            None => Verdict::Member,
            Some(w) => Verdict::Excluded(w),
        }
    }
}

/// Membership in a class by absence of its excluded minors. Side-condition
/// failures are reported as [`Error::Hypothesis`].
pub fn classify_by_exminors(s: &SetSystem, id: ExminorClassId) -> Result<Verdict> {
    ExminorClassifier::new(id, s.n()).classify(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::is_isomorphic;
    use crate::catalog::{make_named, CatalogEntry};
    use crate::higgs::classify_higgs;

    fn entry(name: &str) -> CatalogEntry {
        CatalogEntry::new(name, make_named(name).unwrap()).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let s = make_named("T5").unwrap();
        let all: Vec<_> = enumerate_minors(&s, 4).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].2, s);
        let u2 = make_named("U2").unwrap();
        let s2 = make_named("S2").unwrap();
        assert!(enumerate_minors(&u2, 2).any(|(_, _, m)| is_isomorphic(&m, &s2).unwrap()));
        let e = SetSystem::from_masks(2, [0]).unwrap();
        let pairs: Vec<_> = enumerate_minors(&e, 1).map(|(x, y, _)| (x, y)).collect();
        assert_eq!(pairs, [(0b01, 0), (0b10, 0)]);
    }

    #[test]
    fn pair_counts() {
        // sum over t of C(n,t) 2^t = 3^n
        let total: usize = (0..=4).map(|t| pairs_of_total(4, t).len()).sum();
        assert_eq!(total, 81);
    }

    #[test]
    fn has_minor_examples() {
        let t5 = make_named("T5").unwrap();
        let w = has_minor_from(&t5, &[entry("S2")]).unwrap();
        assert_eq!((w.deleted, w.contracted), (0, 0b0011));
        let u24 = SetSystem::from_masks(4, bits::masks_of_size(4, 2)).unwrap();
        let list = excluded_minor_set(ExminorClassId::DeltaMatroid, 4);
        assert_eq!(has_minor_from(&u24, &list), None);
        let w = has_minor_from(&t5, &[entry("T5")]).unwrap();
        assert_eq!((w.deleted, w.contracted), (0, 0));
    }

    #[test]
    fn classify_examples() {
        let t1 = make_named("T1").unwrap();
        let v = classify_by_exminors(&t1, ExminorClassId::DeltaMatroid).unwrap();
        assert_eq!(
            v,
            Verdict::Excluded(MinorWitness {
                deleted: 0,
                contracted: 0,
                target_name: "T1".into()
            })
        );
        let u1 = make_named("U1").unwrap();
        assert!(!classify_by_exminors(&u1, ExminorClassId::HiggsLift)
            .unwrap()
            .is_member());
        let s2 = make_named("S2").unwrap();
        assert!(!classify_by_exminors(&s2, ExminorClassId::FullHiggs)
            .unwrap()
            .is_member());
        assert!(classify_by_exminors(&s2, ExminorClassId::HiggsLift)
            .unwrap()
            .is_member());
        assert!(classify_higgs(&s2).unwrap().is_higgs());
        assert!(matches!(
            classify_by_exminors(&t1, ExminorClassId::HiggsLift),
            Err(Error::Hypothesis(_))
        ));
        let s1 = make_named("S1").unwrap();
        assert!(matches!(
            classify_by_exminors(&s1, ExminorClassId::EvenDeltaWithinEven),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn witnesses_reverify() {
        let list = excluded_minor_set(ExminorClassId::DeltaMatroid, 4);
        for idx in (1u128..65536).step_by(97) {
            let s = SetSystem::from_family_index(4, idx).unwrap();
            if let Some(w) = has_minor_from(&s, &list) {
                let m = s.minor(w.deleted, w.contracted).unwrap();
                let target = list.iter().find(|e| e.name == w.target_name).unwrap();
                assert!(is_isomorphic(&m, &target.system).unwrap());
                assert_eq!(has_minor_from(&s, &list), Some(w));
            }
        }
    }
}
