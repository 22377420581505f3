//! Set systems `(E, F)`: a labeled ground set and a family of feasible subsets.
//!
//! Subsets are bitmasks over the label order: bit `i` is the element
//! `labels[i]`. The feasible family is kept sorted by mask value without
//! duplicates. Improper systems (no feasible sets) are representable, but the
//! delta-matroid operations reject them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{self, iter_bits};
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// A subset of the ground set, bit `i` standing for the `i`-th label.
pub type Mask = u32;

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 16;

/// Membership bitmap over all `2^n` subsets of an `n`-element ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyBits {
    words: Vec<u64>,
}

impl FamilyBits {
    pub fn empty(n: usize) -> Self {
        let nbits = 1usize << n;
        FamilyBits {
            words: vec![0; nbits.div_ceil(64)],
        }
    }

    pub fn from_masks(n: usize, masks: &[Mask]) -> Self {
        let mut bits = Self::empty(n);
        for &m in masks {
            bits.insert(m);
        }
        bits
    }

    #[inline]
    pub fn contains(&self, mask: Mask) -> bool {
        let m = mask as usize;
        self.words[m >> 6] >> (m & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, mask: Mask) {
        let m = mask as usize;
        self.words[m >> 6] |= 1 << (m & 63);
    }

    pub fn intersect_with(&mut self, other: &FamilyBits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    /// Closes the family upward: every superset of a member becomes a member.
    pub fn up_closure(n: usize, masks: &[Mask]) -> Self {
        let mut bits = Self::from_masks(n, masks);
        for e in 0..n {
            for m in 0..(1u32 << n) {
                if m & (1 << e) == 0 && bits.contains(m) {
                    bits.insert(m | 1 << e);
                }
            }
        }
        bits
    }

    /// Closes the family downward: every subset of a member becomes a member.
    pub fn down_closure(n: usize, masks: &[Mask]) -> Self {
        let mut bits = Self::from_masks(n, masks);
        for e in 0..n {
            for m in 0..(1u32 << n) {
                if m & (1 << e) != 0 && bits.contains(m) {
                    bits.insert(m & !(1 << e));
                }
            }
        }
        bits
    }
}

/// How an element sits in every feasible set of a proper system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementStatus {
    Loop,
    Coloop,
    Neither,
}

/// A triple `(X, Y, u)` at which the symmetric exchange axiom fails: no
/// `v ∈ X △ Y` makes `X △ {u, v}` feasible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeWitness {
    pub x: Mask,
    pub y: Mask,
    pub u: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetSystem {
    labels: Vec<String>,
    feasible: Vec<Mask>,
}

/// Labels `a, b, c, …` for small ground sets, `e1, e2, …` past 26.
pub fn default_labels(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("e{i}")).collect()
    }
}

impl SetSystem {
    pub fn new<I>(labels: Vec<String>, feasible: I) -> Result<Self>
    where
        I: IntoIterator<Item = Mask>,
    {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let ground = bits::full(n);
        let mut feasible: Vec<Mask> = feasible.into_iter().collect();
        if let Some(&bad) = feasible.iter().find(|&&m| m & !ground != 0) {
            return Err(Error::MaskOutOfRange { mask: bad, n });
        }
        feasible.sort_unstable();
        feasible.dedup();
        Ok(SetSystem { labels, feasible })
    }

    /// A system on `n` elements labeled `a, b, c, …`.
    pub fn from_masks<I>(n: usize, feasible: I) -> Result<Self>
    where
        I: IntoIterator<Item = Mask>,
    {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        Self::new(default_labels(n), feasible)
    }

    /// Builds a system from label strings, e.g. `&["a","b"]` and `&[&[], &["a","b"]]`.
    pub fn from_sets(labels: &[&str], sets: &[&[&str]]) -> Result<Self> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let empty = SetSystem::new(owned.clone(), [])?;
        let masks = sets
            .iter()
            .map(|s| empty.mask_of(s))
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(owned, masks)
    }

    /// The system whose family index is `index`: bit `j` of the index is set
    /// exactly when the subset with mask `j` is feasible. Needs `n ≤ 7`.
    pub fn from_family_index(n: usize, index: u128) -> Result<Self> {
        if n > 7 {
            return Err(Error::CensusCapacity(n));
        }
        let subsets = 1u32 << n;
        if subsets < 128 && index >> subsets != 0 {
            return Err(Error::InfeasibleParameters(format!(
                "family index {index} needs more than 2^{n} bits"
            )));
        }
        let masks = (0..subsets).filter(|&j| index >> j & 1 == 1);
        Self::from_masks(n, masks)
    }

    /// Inverse of [`SetSystem::from_family_index`]; `None` when `n > 7`.
    pub fn family_index(&self) -> Option<u128> {
        if self.n() > 7 {
            return None;
        }
        Some(self.feasible.iter().fold(0u128, |acc, &m| acc | 1 << m))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Feasible sets, ascending by mask value.
    #[inline]
    pub fn feasible(&self) -> &[Mask] {
        &self.feasible
    }

    /// Feasible sets ordered by size, then by their members lexicographically.
    pub fn feasible_sorted_by_size(&self) -> Vec<Mask> {
        let mut v = self.feasible.clone();
        v.sort_by(|a, b| {
            bits::size(*a)
                .cmp(&bits::size(*b))
                .then_with(|| iter_bits(*a).cmp(iter_bits(*b)))
        });
        v
    }

    pub fn len(&self) -> usize {
        self.feasible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.feasible.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.feasible.is_empty()
    }

    #[inline]
    pub fn ground(&self) -> Mask {
        bits::full(self.n())
    }

    pub fn contains(&self, mask: Mask) -> bool {
        self.feasible.binary_search(&mask).is_ok()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mask_of(&self, labels: &[&str]) -> Result<Mask> {
        labels.iter().try_fold(0, |acc, l| {
            self.index_of(l)
                .map(|i| acc | 1 << i)
                .ok_or_else(|| Error::UnknownElement(l.to_string()))
        })
    }

    pub fn labels_of(&self, mask: Mask) -> Vec<&str> {
        iter_bits(mask).map(|i| self.labels[i].as_str()).collect()
    }

    /// `{a,b}` style rendering of a subset.
    pub fn format_set(&self, mask: Mask) -> String {
        let mut s = String::from("{");
        for (k, i) in iter_bits(mask).enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(&self.labels[i]);
        }
        s.push('}');
        s
    }

    pub fn bits(&self) -> FamilyBits {
        FamilyBits::from_masks(self.n(), &self.feasible)
    }

    /// Number of feasible sets of each size `0..=n`.
    pub fn size_signature(&self) -> Vec<usize> {
        let mut sig = vec![0; self.n() + 1];
        for &m in &self.feasible {
            sig[bits::size(m)] += 1;
        }
        sig
    }

    /// Smallest and largest feasible-set sizes.
    pub fn size_range(&self) -> Option<(usize, usize)> {
        let min = self.feasible.iter().map(|&m| bits::size(m)).min()?;
        let max = self.feasible.iter().map(|&m| bits::size(m)).max()?;
        Some((min, max))
    }

    /// Feasible sets of the given size, ascending.
    pub fn layer(&self, size: usize) -> Vec<Mask> {
        self.feasible
            .iter()
            .copied()
            .filter(|&m| bits::size(m) == size)
            .collect()
    }

    pub fn is_equicardinal(&self) -> bool {
        match self.feasible.first() {
            None => true,
            Some(&f) => self
                .feasible
                .iter()
                .all(|&m| m.count_ones() == f.count_ones()),
        }
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e >= self.n() {
            Err(Error::UnknownElement(format!("#{e}")))
        } else {
            Ok(())
        }
    }

    fn check_mask(&self, mask: Mask) -> Result<()> {
        if mask & !self.ground() != 0 {
            Err(Error::MaskOutOfRange { mask, n: self.n() })
        } else {
            Ok(())
        }
    }

    pub fn element_status(&self, e: usize) -> Result<ElementStatus> {
        self.check_element(e)?;
        if !self.is_proper() {
            return Err(Error::Improper);
        }
        let bit = 1 << e;
        let hits = self.feasible.iter().filter(|&&m| m & bit != 0).count();
        Ok(if hits == 0 {
            ElementStatus::Loop
        } else if hits == self.feasible.len() {
            ElementStatus::Coloop
        } else {
            ElementStatus::Neither
        })
    }

    /// The minor `S \ X / Y` in normal form: ground set `E − (X ∪ Y)` and
    /// feasible sets `F − Y` for every feasible `F` with `Y ⊆ F ⊆ E − X`.
    ///
    /// Rejects overlapping `X`, `Y` and pairs without a witnessing feasible set.
    pub fn minor(&self, deleted: Mask, contracted: Mask) -> Result<SetSystem> {
        self.check_mask(deleted)?;
        self.check_mask(contracted)?;
        if deleted & contracted != 0 {
            return Err(Error::OverlappingMinor {
                deleted,
                contracted,
            });
        }
        let mut out = Vec::new();
        if !minor_masks(&self.feasible, self.n(), deleted, contracted, &mut out) {
            return Err(Error::InvalidMinor {
                deleted,
                contracted,
            });
        }
        let keep = self.ground() & !(deleted | contracted);
        let labels = iter_bits(keep).map(|i| self.labels[i].clone()).collect();
        Ok(SetSystem {
            labels,
            feasible: out,
        })
    }

    /// `S \ e`; deleting a coloop contracts it.
    pub fn delete(&self, e: usize) -> Result<SetSystem> {
        match self.element_status(e)? {
            ElementStatus::Coloop => self.minor(0, 1 << e),
            _ => self.minor(1 << e, 0),
        }
    }

    /// `S / e`; contracting a loop deletes it.
    pub fn contract(&self, e: usize) -> Result<SetSystem> {
        match self.element_status(e)? {
            ElementStatus::Loop => self.minor(1 << e, 0),
            _ => self.minor(0, 1 << e),
        }
    }

    /// The twist (partial dual) `S * A = (E, {F △ A})`.
    pub fn twist(&self, a: Mask) -> Result<SetSystem> {
        self.check_mask(a)?;
        let mut feasible: Vec<Mask> = self.feasible.iter().map(|&f| f ^ a).collect();
        feasible.sort_unstable();
        Ok(SetSystem {
            labels: self.labels.clone(),
            feasible,
        })
    }

    /// `S* = S * E`.
    pub fn dual(&self) -> SetSystem {
        let e = self.ground();
        let mut feasible: Vec<Mask> = self.feasible.iter().map(|&f| f ^ e).collect();
        feasible.sort_unstable();
        SetSystem {
            labels: self.labels.clone(),
            feasible,
        }
    }

    /// All feasible sizes share one parity. Vacuously true when improper.
    pub fn is_even(&self) -> bool {
        match self.feasible.first() {
            None => true,
            Some(&f) => self
                .feasible
                .iter()
                .all(|&m| (m.count_ones() ^ f.count_ones()) & 1 == 0),
        }
    }

    /// Checks the symmetric exchange axiom, returning the first failing triple
    /// in `(X, Y, u)` order if there is one.
    pub fn check_delta_matroid(&self) -> Result<Option<SeWitness>> {
        if !self.is_proper() {
            return Err(Error::Improper);
        }
        Ok(se_witness(self.n(), &self.feasible, &self.bits()))
    }

    /// Proper and satisfying the symmetric exchange axiom.
    pub fn is_delta_matroid(&self) -> bool {
        matches!(self.check_delta_matroid(), Ok(None))
    }

    /// `(D_min, D_max)`: the matroids of minimum- and maximum-size feasible sets.
    pub fn min_max_matroids(&self) -> Result<(Matroid, Matroid)> {
        if self.check_delta_matroid()?.is_some() {
            return Err(Error::NotDeltaMatroid);
        }
        let (lo, hi) = self.size_range().ok_or(Error::Improper)?;
        let dmin = Matroid::new(SetSystem::new(self.labels.clone(), self.layer(lo))?)?;
        let dmax = Matroid::new(SetSystem::new(self.labels.clone(), self.layer(hi))?)?;
        debug_assert!(self.feasible.iter().all(|&f| {
            dmin.bases().iter().any(|&b| b & !f == 0) && dmax.bases().iter().any(|&b| f & !b == 0)
        }));
        Ok((dmin, dmax))
    }

    /// Relabels by sending element `i` to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<SetSystem> {
        let n = self.n();
        let mut seen = 0 as Mask;
        if perm.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "permutation of length {} for {n} elements",
                perm.len()
            )));
        }
        for &p in perm {
            if p >= n || seen & (1 << p) != 0 {
                return Err(Error::InfeasibleParameters("not a permutation".into()));
            }
            seen |= 1 << p;
        }
        let mut labels = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[i].clone();
        }
        let feasible = self.feasible.iter().map(|&m| permute_mask(m, perm));
        SetSystem::new(labels, feasible)
    }

    /// Same family, new labels.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<SetSystem> {
        if labels.len() != self.n() {
            return Err(Error::GroundSetMismatch);
        }
        SetSystem::new(labels, self.feasible.iter().copied())
    }

    pub(crate) fn from_parts_unchecked(labels: Vec<String>, mut feasible: Vec<Mask>) -> SetSystem {
        feasible.sort_unstable();
        feasible.dedup();
        SetSystem { labels, feasible }
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("({")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(l)?;
        }
        f.write_str("}, {")?;
        for (i, &m) in self.feasible_sorted_by_size().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if m == 0 {
                f.write_str("∅")?;
            } else {
                f.write_str(&self.format_set(m))?;
            }
        }
        f.write_str("})")
    }
}

#[inline]
pub(crate) fn permute_mask(mask: Mask, perm: &[usize]) -> Mask {
    iter_bits(mask).fold(0, |acc, i| acc | 1 << perm[i])
}

/// Writes the feasible sets of `S \ X / Y` into `out` (sorted). Returns
/// `false` when no feasible set witnesses the pair, leaving `out` empty.
pub(crate) fn minor_masks(
    feasible: &[Mask],
    n: usize,
    deleted: Mask,
    contracted: Mask,
    out: &mut Vec<Mask>,
) -> bool {
    out.clear();
    let keep = bits::full(n) & !(deleted | contracted);
    for &f in feasible {
        if f & contracted == contracted && f & deleted == 0 {
            out.push(bits::compress(f, keep));
        }
    }
    if out.is_empty() {
        return false;
    }
    out.sort_unstable();
    true
}

/// First `(X, Y, u)` violating the symmetric exchange axiom.
pub(crate) fn se_witness(n: usize, feasible: &[Mask], bits: &FamilyBits) -> Option<SeWitness> {
    let mut reach = [0 as Mask; MAX_ELEMENTS];
    for &x in feasible {
        // reach[u] = { v : X △ {u, v} feasible }
        for (u, slot) in reach.iter_mut().enumerate().take(n) {
            let xu = x ^ (1 << u);
            let mut r = 0;
            for v in 0..n {
                let target = if v == u { xu } else { xu ^ (1 << v) };
                if bits.contains(target) {
                    r |= 1 << v;
                }
            }
            *slot = r;
        }
        for &y in feasible {
            let d = x ^ y;
            for u in iter_bits(d) {
                if reach[u] & d == 0 {
                    return Some(SeWitness { x, y, u });
                }
            }
        }
    }
    None
}
