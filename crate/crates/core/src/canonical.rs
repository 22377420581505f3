//! Isomorphism via exhaustive permutation canonicalization.
//!
//! The canonical form of a system is the lexicographically least list of
//! feasible sets, each keyed by `(size, mask)`, over every relabeling of the
//! ground set. Systems are isomorphic exactly when their forms agree.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::setsystem::{permute_mask, Mask, SetSystem};

/// Default largest ground set accepted by the canonicalizer.
pub const DEFAULT_PERMUTATION_CAP: usize = 10;

/// Isomorphism-invariant encoding of a set system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    sets: Vec<Mask>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Feasible sets in canonical order: by size, then by mask value.
    pub fn sets(&self) -> &[Mask] {
        &self.sets
    }

    /// The canonical representative, labeled `a, b, c, …`.
    pub fn to_system(&self) -> SetSystem {
        SetSystem::from_masks(self.n, self.sets.iter().copied())
            .expect("canonical forms carry in-range masks")
    }
}

#[inline]
fn key(m: Mask) -> u32 {
    (m.count_ones() << 16) | m
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::PermutationCap { n, cap })
    } else {
        Ok(())
    }
}

/// Canonical form together with a permutation realizing it: element `i` of
/// `s` becomes element `perm[i]` of the canonical representative.
pub fn canonical_labeling_with_cap(
    s: &SetSystem,
    cap: usize,
) -> Result<(CanonicalForm, Vec<usize>)> {
    check_cap(s.n(), cap)?;
    Ok(canonicalize(s.n(), s.feasible()))
}

/// Canonical form of a raw family on `n` elements; no cap check.
pub(crate) fn canonical_of_masks(n: usize, feasible: &[Mask]) -> CanonicalForm {
    canonicalize(n, feasible).0
}

fn canonicalize(n: usize, feasible: &[Mask]) -> (CanonicalForm, Vec<usize>) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best_perm = perm.clone();
    let mut best: Vec<u32> = feasible.iter().map(|&m| key(m)).collect();
    best.sort_unstable();
    let mut scratch = vec![0u32; feasible.len()];

    let mut consider = |perm: &[usize], best: &mut Vec<u32>, best_perm: &mut Vec<usize>| {
        for (dst, &m) in scratch.iter_mut().zip(feasible) {
            *dst = key(permute_mask(m, perm));
        }
        scratch.sort_unstable();
        if scratch < *best {
            best.copy_from_slice(&scratch);
            best_perm.copy_from_slice(perm);
        }
    };

    // Heap's algorithm visits every permutation once.
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm, &mut best, &mut best_perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }

    let sets = best.into_iter().map(|k| k & 0xffff).collect();
    (CanonicalForm { n, sets }, best_perm)
}

pub fn canonical_labeling(s: &SetSystem) -> Result<(CanonicalForm, Vec<usize>)> {
    canonical_labeling_with_cap(s, DEFAULT_PERMUTATION_CAP)
}

pub fn canonical_form_with_cap(s: &SetSystem, cap: usize) -> Result<CanonicalForm> {
    canonical_labeling_with_cap(s, cap).map(|(f, _)| f)
}

pub fn canonical_form(s: &SetSystem) -> Result<CanonicalForm> {
    canonical_form_with_cap(s, DEFAULT_PERMUTATION_CAP)
}

/// Cheap isomorphism invariant: ground size and feasible-set size counts.
pub fn size_signature(s: &SetSystem) -> (usize, Vec<usize>) {
    (s.n(), s.size_signature())
}

/// Isomorphism test with a size-signature prefilter.
pub fn is_isomorphic(a: &SetSystem, b: &SetSystem) -> Result<bool> {
    if a.n() != b.n() || a.len() != b.len() || a.size_signature() != b.size_signature() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// The system relabeled into canonical element order.
pub fn canonical_relabel(s: &SetSystem) -> Result<SetSystem> {
    let (_, perm) = canonical_labeling(s)?;
    s.permuted(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: try every bijection directly.
    fn brute_iso(a: &SetSystem, b: &SetSystem) -> bool {
        fn rec(a: &SetSystem, b: &SetSystem, perm: &mut Vec<usize>, used: u32) -> bool {
            let n = a.n();
            if perm.len() == n {
                return a
                    .feasible()
                    .iter()
                    .all(|&m| b.contains(permute_mask(m, perm)))
                    && a.len() == b.len();
            }
            for j in 0..n {
                if used & (1 << j) == 0 {
                    perm.push(j);
                    if rec(a, b, perm, used | 1 << j) {
                        return true;
                    }
                    perm.pop();
                }
            }
            false
        }
        a.n() == b.n() && rec(a, b, &mut Vec::new(), 0)
    }

    #[test]
    fn t7_not_self_dual() {
        let t7 = SetSystem::from_masks(4, [0, 0b0011, 0b0101, 0b1001, 0b1111]).unwrap();
        assert!(!is_isomorphic(&t7, &t7.dual()).unwrap());
        assert!(!brute_iso(&t7, &t7.dual()));
    }

    #[test]
    fn cap_is_enforced() {
        let big = SetSystem::from_masks(11, [0]).unwrap();
        assert_eq!(
            canonical_form(&big),
            Err(Error::PermutationCap { n: 11, cap: 10 })
        );
        assert!(canonical_form_with_cap(&big, 11).is_ok());
    }

    #[test]
    fn labeling_reproduces_form() {
        let s = SetSystem::from_masks(4, [0b0001, 0b0110, 0b1110]).unwrap();
        let (form, perm) = canonical_labeling(&s).unwrap();
        let relabeled = s.permuted(&perm).unwrap();
        let mut sets = relabeled.feasible().to_vec();
        sets.sort_by_key(|&m| key(m));
        assert_eq!(sets, form.sets());
    }

    fn arb_system() -> impl Strategy<Value = SetSystem> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(0..(1u32 << n), 1..12)
                .prop_map(move |m| SetSystem::from_masks(n, m).unwrap())
        })
    }

    proptest! {
        #[test]
        fn invariant_under_relabeling(s in arb_system(), seed in any::<u64>()) {
            let n = s.n();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut x = seed;
            for i in (1..n).rev() {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (x >> 33) as usize % (i + 1));
            }
            let t = s.permuted(&perm).unwrap();
            prop_assert_eq!(canonical_form(&s).unwrap(), canonical_form(&t).unwrap());
        }

        #[test]
        fn agrees_with_brute_force(a in arb_system(), b in arb_system()) {
            prop_assert_eq!(is_isomorphic(&a, &b).unwrap(), brute_iso(&a, &b));
        }
    }
}
