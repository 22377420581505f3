//! Higgs lifts of a quotient pair and the delta-matroids built from them.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::bits::{self, iter_bits};
use crate::error::{Error, Result};
use crate::linear;
use crate::matroid::{is_quotient, Matroid};
use crate::setsystem::{FamilyBits, Mask, SetSystem};

/// A set `K ⊆ {0, …, k}` whose complement has no two consecutive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HiggsIndexSet {
    k: usize,
    members: u32,
}

impl HiggsIndexSet {
    pub fn new<I: IntoIterator<Item = usize>>(k: usize, members: I) -> Result<Self> {
        if k >= 32 {
            return Err(Error::IndexOutOfRange { index: k, k: 31 });
        }
        let mut set = 0u32;
        for i in members {
            if i > k {
                return Err(Error::IndexOutOfRange { index: i, k });
            }
            set |= 1 << i;
        }
        if set == 0 {
            return Err(Error::EmptyIndexSet);
        }
        let missing = !set & bits::full(k + 1);
        if let Some(i) = (0..k).find(|&i| missing >> i & 0b11 == 0b11) {
            return Err(Error::ConsecutiveGap(i, i + 1));
        }
        Ok(HiggsIndexSet { k, members: set })
    }

    /// `K = {0, …, k}`.
    pub fn full(k: usize) -> Self {
        HiggsIndexSet::new(k, 0..=k).expect("the full index set is valid")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn contains(&self, i: usize) -> bool {
        i <= self.k && self.members >> i & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        iter_bits(self.members)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn is_full(&self) -> bool {
        self.members == bits::full(self.k + 1)
    }

    /// `k` and every member even.
    pub fn is_even(&self) -> bool {
        self.k.is_multiple_of(2) && self.members & 0xaaaa_aaaa == 0
    }

    /// Every valid index set for a given `k`, in increasing mask order.
    pub fn all(k: usize) -> impl Iterator<Item = HiggsIndexSet> {
        (1u32..(1 << (k + 1))).filter_map(move |m| HiggsIndexSet::new(k, iter_bits(m)).ok())
    }
}

impl fmt::Display for HiggsIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (j, i) in self.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HiggsClassification {
    /// The layer of this size is nonempty but differs from the matching Higgs lift.
    NotHiggs {
        layer: usize,
    },
    Higgs(HiggsIndexSet),
    FullHiggs {
        k: usize,
    },
    EvenHiggs(HiggsIndexSet),
}

impl HiggsClassification {
    /// The index set, for any Higgs lift delta-matroid.
    pub fn index_set(&self) -> Option<HiggsIndexSet> {
        match *self {
            HiggsClassification::NotHiggs { .. } => None,
            HiggsClassification::Higgs(k) | HiggsClassification::EvenHiggs(k) => Some(k),
            HiggsClassification::FullHiggs { k } => Some(HiggsIndexSet::full(k)),
        }
    }

    pub fn is_higgs(&self) -> bool {
        !matches!(self, HiggsClassification::NotHiggs { .. })
    }

    pub fn is_full(&self) -> bool {
        matches!(self, HiggsClassification::FullHiggs { .. })
    }

    /// Even Higgs lift delta-matroid. Matroids and full pairs with `k = 0`
    /// qualify as well, though they are reported as `FullHiggs`.
    pub fn is_even_higgs(&self) -> bool {
        self.index_set().is_some_and(|k| k.is_even())
    }
}

fn check_pair(q: &Matroid, l: &Matroid) -> Result<()> {
    if !is_quotient(q, l)? {
        return Err(Error::NotQuotient);
    }
    Ok(())
}

/// Sets containing a basis of `q` and contained in a basis of `l`.
fn sandwich(q: &Matroid, l: &Matroid) -> FamilyBits {
    let mut up = FamilyBits::up_closure(q.n(), q.bases());
    up.intersect_with(&FamilyBits::down_closure(l.n(), l.bases()));
    up
}

fn lift_layer(q: &Matroid, sw: &FamilyBits, i: usize) -> Vec<Mask> {
    bits::masks_of_size(q.n(), q.rank() + i)
        .filter(|&m| sw.contains(m))
        .collect()
}

/// The `i`-th Higgs lift of `q` toward `l`, clamped to `q` below 0 and to
/// `l` above `k = r(l) − r(q)`.
pub fn higgs_lift(q: &Matroid, l: &Matroid, i: i64) -> Result<Matroid> {
    check_pair(q, l)?;
    let k = (l.rank() - q.rank()) as i64;
    if i <= 0 {
        return Ok(q.clone());
    }
    if i >= k {
        return Ok(l.clone());
    }
    let sw = sandwich(q, l);
    let bases = lift_layer(q, &sw, i as usize);
    Ok(Matroid::new_unchecked(SetSystem::from_parts_unchecked(
        q.labels().to_vec(),
        bases,
    )))
}

/// Union of the Higgs lift basis families indexed by `kset`.
pub fn build_higgs_dm(q: &Matroid, l: &Matroid, kset: &HiggsIndexSet) -> Result<SetSystem> {
    check_pair(q, l)?;
    let k = l.rank() - q.rank();
    if kset.k() != k {
        return Err(Error::IndexSetMismatch {
            expected: k,
            found: kset.k(),
        });
    }
    let sw = sandwich(q, l);
    let masks = kset.iter().flat_map(|i| lift_layer(q, &sw, i)).collect();
    Ok(SetSystem::from_parts_unchecked(q.labels().to_vec(), masks))
}

/// Decides whether a delta-matroid is a Higgs lift delta-matroid by
/// comparing each nonempty size layer with the sets sandwiched between
/// bases of `D_min` and `D_max`.
pub fn classify_higgs(d: &SetSystem) -> Result<HiggsClassification> {
    let (q, l) = d.min_max_matroids()?;
    let sw = sandwich(&q, &l);
    let (r_q, r_l) = (q.rank(), l.rank());
    let k = r_l - r_q;
    let sig = d.size_signature();
    let mut members = Vec::new();
    for (s, &count) in sig.iter().enumerate().take(r_l + 1).skip(r_q) {
        if count == 0 {
            continue;
        }
        let expected = lift_layer(&q, &sw, s - r_q);
        if expected != d.layer(s) {
            return Ok(HiggsClassification::NotHiggs { layer: s });
        }
        members.push(s - r_q);
    }
    // a delta-matroid with full matching layers cannot skip two sizes in a row
    let kset =
        HiggsIndexSet::new(k, members).expect("delta-matroid layers have no consecutive gap");
    Ok(if kset.is_full() {
        HiggsClassification::FullHiggs { k }
    } else if kset.is_even() {
        HiggsClassification::EvenHiggs(kset)
    } else {
        HiggsClassification::Higgs(kset)
    })
}

/// A random quotient pair `(Q, L)` of ranks `r_q ≤ r_l` on `n` elements.
///
/// `L` is the column matroid of a random full-rank matrix over a small prime
/// field. `Q` comes from extending that matrix by `r_l − r_q` independent
/// columns and contracting them, so it is an elementary-quotient chain below `L`.
pub fn random_quotient_pair<R: RngCore + ?Sized>(
    n: usize,
    r_q: usize,
    r_l: usize,
    rng: &mut R,
) -> Result<(Matroid, Matroid)> {
    if r_q > r_l || r_l > n {
        return Err(Error::InfeasibleParameters(format!(
            "need r_q <= r_l <= n, got {r_q}, {r_l}, {n}"
        )));
    }
    if n > crate::MAX_ELEMENTS {
        return Err(Error::TooManyElements(n));
    }
    const PRIMES: [u32; 4] = [2, 3, 5, 7];
    let t = r_l - r_q;
    let cols = n + t;
    for _ in 0..1000 {
        let p = PRIMES[(rng.next_u32() % 4) as usize];
        let rows = r_l;
        let matrix: Vec<u8> = (0..rows * cols)
            .map(|_| (rng.next_u32() % p) as u8)
            .collect();
        let a = bits::full(n);
        let y = bits::full(cols) & !a;
        if linear::column_rank(p, rows, cols, &matrix, a) != r_l
            || linear::column_rank(p, rows, cols, &matrix, y) != t
        {
            continue;
        }
        let l_bases: Vec<Mask> = bits::masks_of_size(n, r_l)
            .filter(|&b| linear::column_rank(p, rows, cols, &matrix, b) == r_l)
            .collect();
        let q_bases: Vec<Mask> = bits::masks_of_size(n, r_q)
            .filter(|&b| linear::column_rank(p, rows, cols, &matrix, b | y) == r_l)
            .collect();
        let l = Matroid::new(SetSystem::from_masks(n, l_bases)?)?;
        let q = Matroid::new(SetSystem::from_masks(n, q_bases)?)?;
        debug_assert!(is_quotient(&q, &l).unwrap_or(false));
        return Ok((q, l));
    }
    Err(Error::InfeasibleParameters(format!(
        "no quotient pair found for n={n}, r_q={r_q}, r_l={r_l}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::rank_table;
    use proptest::prelude::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn trivial_pair(n: usize) -> (Matroid, Matroid) {
        (
            Matroid::from_bases(n, [0]).unwrap(),
            Matroid::from_bases(n, [bits::full(n)]).unwrap(),
        )
    }

    #[test]
    fn index_set_validation() {
        assert_eq!(
            HiggsIndexSet::new(3, [0, 3]),
            Err(Error::ConsecutiveGap(1, 2))
        );
        assert_eq!(
            HiggsIndexSet::new(2, [0, 3]),
            Err(Error::IndexOutOfRange { index: 3, k: 2 })
        );
        assert_eq!(HiggsIndexSet::new(2, []), Err(Error::EmptyIndexSet));
        assert!(HiggsIndexSet::new(2, [1]).is_ok());
        assert_eq!(HiggsIndexSet::all(2).count(), 5);
    }

    #[test]
    fn lift_examples() {
        let (q, l) = trivial_pair(2);
        assert_eq!(higgs_lift(&q, &l, 0).unwrap(), q);
        assert_eq!(
            higgs_lift(&q, &l, 1).unwrap(),
            Matroid::uniform(1, 2).unwrap()
        );
        assert_eq!(higgs_lift(&q, &l, 7).unwrap(), l);
        assert_eq!(higgs_lift(&q, &l, -3).unwrap(), q);
        assert_eq!(higgs_lift(&l, &q, 1), Err(Error::NotQuotient));
    }

    #[test]
    fn build_examples() {
        let (q, l) = trivial_pair(2);
        let full = build_higgs_dm(&q, &l, &HiggsIndexSet::full(2)).unwrap();
        assert_eq!(full.feasible(), &[0, 1, 2, 3]);
        let even = build_higgs_dm(&q, &l, &HiggsIndexSet::new(2, [0, 2]).unwrap()).unwrap();
        assert_eq!(even.feasible(), &[0, 3]);
        assert_eq!(
            build_higgs_dm(&q, &l, &HiggsIndexSet::full(3)),
            Err(Error::IndexSetMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn classify_examples() {
        let u1 = SetSystem::from_masks(2, [0, 1, 3]).unwrap();
        assert!(matches!(
            classify_higgs(&u1),
            Ok(HiggsClassification::NotHiggs { .. })
        ));
        let s2 = SetSystem::from_masks(2, [0, 3]).unwrap();
        assert_eq!(
            classify_higgs(&s2),
            Ok(HiggsClassification::EvenHiggs(
                HiggsIndexSet::new(2, [0, 2]).unwrap()
            ))
        );
        let m = Matroid::uniform(2, 4).unwrap();
        assert_eq!(
            classify_higgs(m.system()),
            Ok(HiggsClassification::FullHiggs { k: 0 })
        );
        let t1 = SetSystem::from_masks(3, [0, 3, 7]).unwrap();
        assert_eq!(classify_higgs(&t1), Err(Error::NotDeltaMatroid));
    }

    fn arb_pair() -> impl Strategy<Value = (Matroid, Matroid)> {
        (1usize..=6, 0usize..=6, 0usize..=6, any::<u64>()).prop_map(|(n, a, b, seed)| {
            let (lo, hi) = (a.min(b) % (n + 1), a.max(b) % (n + 1));
            let (lo, hi) = (lo.min(hi), lo.max(hi));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_quotient_pair(n, lo, hi, &mut rng).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn lift_matches_rank_formula((q, l) in arb_pair()) {
            prop_assert!(is_quotient(&q, &l).unwrap());
            let k = l.rank() - q.rank();
            let (tq, tl) = (rank_table(&q), rank_table(&l));
            for i in 0..=k {
                let h = higgs_lift(&q, &l, i as i64).unwrap();
                let th = rank_table(&h);
                for x in 0..th.len() {
                    prop_assert_eq!(th[x], (tq[x] + i as u8).min(tl[x]));
                }
            }
        }

        #[test]
        fn lift_duality((q, l) in arb_pair()) {
            let k = l.rank() - q.rank();
            for i in 0..=k {
                let h = higgs_lift(&q, &l, i as i64).unwrap();
                let j = (k - i) as i64;
                prop_assert_eq!(h.dual(), higgs_lift(&l.dual(), &q.dual(), j).unwrap());
            }
        }

        #[test]
        fn lift_commutes_with_minors((q, l) in arb_pair(), x in 0u32..64) {
            let x = x & q.system().ground();
            let k = l.rank() - q.rank();
            for i in 0..=k {
                let h = higgs_lift(&q, &l, i as i64).unwrap();
                let (qr, lr) = (q.restrict(x).unwrap(), l.restrict(x).unwrap());
                prop_assert_eq!(h.restrict(x).unwrap(), higgs_lift(&qr, &lr, i as i64).unwrap());
                let t = l.rank_of(x).unwrap() as i64 - q.rank_of(x).unwrap() as i64;
                let (qc, lc) = (q.contract(x).unwrap(), l.contract(x).unwrap());
                prop_assert_eq!(h.contract(x).unwrap(), higgs_lift(&qc, &lc, i as i64 - t).unwrap());
            }
        }

        #[test]
        fn lift_nesting((q, l) in arb_pair()) {
            let k = l.rank() - q.rank();
            for i in 0..=k {
                for j in i..=k {
                    let hi = higgs_lift(&q, &l, i as i64).unwrap();
                    let hj = higgs_lift(&q, &l, j as i64).unwrap();
                    prop_assert_eq!(higgs_lift(&hi, &hj, (j - i) as i64).unwrap(), hj);
                }
            }
        }

        #[test]
        fn build_classify_round_trip((q, l) in arb_pair()) {
            let k = l.rank() - q.rank();
            for kset in HiggsIndexSet::all(k) {
                let d = build_higgs_dm(&q, &l, &kset).unwrap();
                prop_assert!(d.is_delta_matroid());
                let got = classify_higgs(&d).unwrap().index_set().unwrap();
                // the classifier measures indices from the smallest occupied layer
                let lo = kset.iter().next().unwrap();
                let hi = kset.iter().last().unwrap();
                let shifted = HiggsIndexSet::new(hi - lo, kset.iter().map(|i| i - lo)).unwrap();
                prop_assert_eq!(got, shifted);
            }
        }

        #[test]
        fn delta_matroids_sit_inside_full_lift((q, l) in arb_pair(), drop in any::<u64>()) {
            // thin the full lift randomly, keep only delta-matroids
            let full = build_higgs_dm(&q, &l, &HiggsIndexSet::full(l.rank() - q.rank())).unwrap();
            let kept: Vec<Mask> = full.feasible().iter().enumerate()
                .filter(|(i, &m)| q.is_basis(m) || l.is_basis(m) || drop >> (i % 64) & 1 == 1)
                .map(|(_, &m)| m).collect();
            let d = SetSystem::from_masks(q.n(), kept).unwrap();
            if let Ok((dq, dl)) = d.min_max_matroids() {
                let sup = build_higgs_dm(&dq, &dl, &HiggsIndexSet::full(dl.rank() - dq.rank())).unwrap();
                prop_assert!(d.feasible().iter().all(|&f| sup.contains(f)));
            }
        }
    }
}
