//! Matroids given by their bases.

use alloc::vec::Vec;

use crate::bits::{self, iter_bits};
use crate::error::{Error, Result};
use crate::setsystem::{FamilyBits, Mask, SetSystem};

/// A set system whose feasible sets are the bases of a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matroid {
    system: SetSystem,
    rank: usize,
}

/// Equicardinality plus basis exchange.
pub fn is_matroid(s: &SetSystem) -> bool {
    s.is_proper() && s.is_equicardinal() && basis_exchange_holds(s.n(), s.feasible())
}

fn basis_exchange_holds(n: usize, bases: &[Mask]) -> bool {
    let fam = FamilyBits::from_masks(n, bases);
    bases.iter().all(|&b1| {
        bases.iter().all(|&b2| {
            iter_bits(b1 & !b2)
                .all(|x| iter_bits(b2 & !b1).any(|y| fam.contains(b1 ^ (1 << x) ^ (1 << y))))
        })
    })
}

impl Matroid {
    pub fn new(system: SetSystem) -> Result<Self> {
        if !system.is_proper() {
            return Err(Error::Improper);
        }
        if !is_matroid(&system) {
            return Err(Error::NotMatroid);
        }
        let rank = bits::size(system.feasible()[0]);
        Ok(Matroid { system, rank })
    }

    /// Matroid on `n` default-labeled elements with the given bases.
    pub fn from_bases<I: IntoIterator<Item = Mask>>(n: usize, bases: I) -> Result<Self> {
        Self::new(SetSystem::from_masks(n, bases)?)
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::InfeasibleParameters(alloc::format!(
                "rank {r} exceeds {n}"
            )));
        }
        Self::from_bases(n, bits::masks_of_size(n, r))
    }

    pub(crate) fn new_unchecked(system: SetSystem) -> Self {
        debug_assert!(is_matroid(&system));
        let rank = bits::size(system.feasible()[0]);
        Matroid { system, rank }
    }

    pub fn system(&self) -> &SetSystem {
        &self.system
    }

    pub fn into_system(self) -> SetSystem {
        self.system
    }

    pub fn bases(&self) -> &[Mask] {
        self.system.feasible()
    }

    pub fn n(&self) -> usize {
        self.system.n()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[alloc::string::String] {
        self.system.labels()
    }

    /// `r(X) = max |B ∩ X|` over bases `B`.
    pub fn rank_of(&self, x: Mask) -> Result<usize> {
        if x & !self.system.ground() != 0 {
            return Err(Error::MaskOutOfRange {
                mask: x,
                n: self.n(),
            });
        }
        Ok(self.rank_mask(x))
    }

    pub(crate) fn rank_mask(&self, x: Mask) -> usize {
        self.bases()
            .iter()
            .map(|&b| bits::size(b & x))
            .max()
            .unwrap_or(0)
    }

    pub fn is_independent(&self, x: Mask) -> bool {
        self.bases().iter().any(|&b| x & !b == 0)
    }

    pub fn is_basis(&self, x: Mask) -> bool {
        self.system.contains(x)
    }

    /// Membership bitmap of the independent sets.
    pub fn independent_sets(&self) -> FamilyBits {
        FamilyBits::down_closure(self.n(), self.bases())
    }

    /// Minimal dependent sets, ordered by size and then mask value.
    pub fn circuits(&self) -> Vec<Mask> {
        let n = self.n();
        let indep = self.independent_sets();
        let mut out: Vec<Mask> = (0..(1u32 << n))
            .filter(|&c| !indep.contains(c) && iter_bits(c).all(|e| indep.contains(c & !(1 << e))))
            .collect();
        out.sort_by_key(|&m| bits::size_key(m));
        out
    }

    pub fn dual(&self) -> Matroid {
        Matroid {
            system: self.system.dual(),
            rank: self.n() - self.rank,
        }
    }

    /// `M | X`: bases are the maximal intersections `B ∩ X`, on ground set `X`.
    pub fn restrict(&self, x: Mask) -> Result<Matroid> {
        let r = self.rank_of(x)?;
        let masks = self
            .bases()
            .iter()
            .filter(|&&b| bits::size(b & x) == r)
            .map(|&b| bits::compress(b & x, x))
            .collect();
        let labels = iter_bits(x).map(|i| self.labels()[i].clone()).collect();
        Ok(Matroid::new_unchecked(SetSystem::from_parts_unchecked(
            labels, masks,
        )))
    }

    /// `M / X`: bases `B − X` for bases meeting `X` in a maximal set.
    pub fn contract(&self, x: Mask) -> Result<Matroid> {
        let r = self.rank_of(x)?;
        let keep = self.system.ground() & !x;
        let masks = self
            .bases()
            .iter()
            .filter(|&&b| bits::size(b & x) == r)
            .map(|&b| bits::compress(b & keep, keep))
            .collect();
        let labels = iter_bits(keep).map(|i| self.labels()[i].clone()).collect();
        Ok(Matroid::new_unchecked(SetSystem::from_parts_unchecked(
            labels, masks,
        )))
    }

    /// Paving: every circuit has at least `rank` elements. Sparse paving:
    /// paving with a paving dual.
    pub fn paving_flags(&self) -> (bool, bool) {
        let paving = self.is_paving();
        (paving, paving && self.dual().is_paving())
    }

    pub fn is_paving(&self) -> bool {
        self.circuits().iter().all(|&c| bits::size(c) >= self.rank)
    }
}

/// Whether `q` is a quotient of `l`: every circuit of `l` is a union of
/// circuits of `q`.
pub fn is_quotient(q: &Matroid, l: &Matroid) -> Result<bool> {
    if q.labels() != l.labels() {
        return Err(Error::GroundSetMismatch);
    }
    let qc = q.circuits();
    Ok(l.circuits().iter().all(|&c| {
        let covered = qc
            .iter()
            .filter(|&&d| d & !c == 0)
            .fold(0, |acc, &d| acc | d);
        covered == c
    }))
}

/// Rank function values for every subset, indexed by mask.
pub fn rank_table(m: &Matroid) -> Vec<u8> {
    let n = m.n();
    let mut table = alloc::vec![0u8; 1 << n];
    let indep = m.independent_sets();
    for x in 0..(1u32 << n) {
        table[x as usize] = if indep.contains(x) {
            x.count_ones() as u8
        } else {
            // drop any element: rank(X) = max over X − e, dependent sets lose nothing
            iter_bits(x)
                .map(|e| table[(x & !(1 << e)) as usize])
                .max()
                .unwrap_or(0)
        };
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::submasks;
    use proptest::prelude::*;

    fn u24_minus_34() -> Matroid {
        // 2-subsets of {1,2,3,4} except {3,4}
        Matroid::from_bases(4, bits::masks_of_size(4, 2).filter(|&m| m != 0b1100)).unwrap()
    }

    /// Independent oracle for quotient testing via bases.
    fn quotient_by_bases(q: &Matroid, l: &Matroid) -> bool {
        let n = q.n();
        l.bases().iter().all(|&b| {
            (0..n).filter(|&e| b & (1 << e) == 0).all(|e| {
                let be = b | 1 << e;
                let l_set: Mask = iter_bits(be)
                    .filter(|&f| l.is_basis(be & !(1 << f)))
                    .fold(0, |a, f| a | 1 << f);
                q.bases().iter().filter(|&&bq| bq & !b == 0).any(|&bq| {
                    let qe = bq | 1 << e;
                    let q_set: Mask = iter_bits(qe)
                        .filter(|&f| q.is_basis(qe & !(1 << f)))
                        .fold(0, |a, f| a | 1 << f);
                    q_set & !l_set == 0
                })
            })
        })
    }

    /// Brute force circuits: dependent sets none of whose proper subsets are dependent.
    fn brute_circuits(m: &Matroid) -> Vec<Mask> {
        let dep = |x: Mask| !m.is_independent(x);
        let mut v: Vec<Mask> = (0..(1u32 << m.n()))
            .filter(|&c| dep(c) && submasks(c).filter(|&s| s != c).all(|s| !dep(s)))
            .collect();
        v.sort_by_key(|&m| bits::size_key(m));
        v
    }

    #[test]
    fn is_matroid_examples() {
        assert!(is_matroid(u24_minus_34().system()));
        let bad = SetSystem::from_masks(4, [0b0011, 0b0101, 0b1100]).unwrap();
        assert!(!is_matroid(&bad));
        assert!(is_matroid(&SetSystem::from_masks(3, [0]).unwrap()));
    }

    #[test]
    fn rank_examples() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.rank_of(0b0001), Ok(1));
        assert_eq!(u.rank_of(0), Ok(0));
        assert_eq!(u24_minus_34().rank_of(0b1100), Ok(1));
        assert!(u.rank_of(0b10000).is_err());
    }

    #[test]
    fn circuit_examples() {
        assert!(Matroid::from_bases(3, [7]).unwrap().circuits().is_empty());
        assert_eq!(u24_minus_34().circuits(), [0b1100, 0b0111, 0b1011]);
        assert_eq!(brute_circuits(&u24_minus_34()), [0b1100, 0b0111, 0b1011]);
        assert_eq!(Matroid::from_bases(3, [0]).unwrap().circuits(), [1, 2, 4]);
    }

    #[test]
    fn quotient_examples() {
        let u13 = Matroid::uniform(1, 3).unwrap();
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(is_quotient(&u13, &u23), Ok(true));
        let q = Matroid::from_bases(2, [0b01]).unwrap();
        let l = Matroid::uniform(1, 2).unwrap();
        assert_eq!(is_quotient(&q, &l), Ok(false));
        assert!(!quotient_by_bases(&q, &l));
        assert_eq!(is_quotient(&u23, &u23), Ok(true));
        assert_eq!(is_quotient(&u13, &l), Err(Error::GroundSetMismatch));
    }

    #[test]
    fn paving_examples() {
        assert_eq!(Matroid::uniform(2, 4).unwrap().paving_flags(), (true, true));
        assert_eq!(
            Matroid::from_bases(3, [7]).unwrap().paving_flags(),
            (true, true)
        );
        // b, c parallel in rank 2: the circuit {b,c} has size 2 = rank
        let par = Matroid::from_bases(3, [0b011, 0b101]).unwrap();
        assert_eq!(brute_circuits(&par), [0b110]);
        assert_eq!(par.paving_flags(), (true, true));
        // rank 3 on {a,b,c,d} with c a loop: circuit {c} of size 1 < 3
        let lp = Matroid::from_bases(4, [0b1011]).unwrap();
        assert_eq!(brute_circuits(&lp), [0b0100]);
        assert_eq!(lp.paving_flags(), (false, false));
    }

    #[test]
    fn restriction_and_contraction() {
        let m = u24_minus_34();
        let r = m.restrict(0b1100).unwrap();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.bases(), &[0b01, 0b10]);
        let c = m.contract(0b0001).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.bases(), &[0b001, 0b010, 0b100]);
    }

    #[test]
    fn rank_table_matches_rank() {
        let m = u24_minus_34();
        let t = rank_table(&m);
        for x in 0..16u32 {
            assert_eq!(t[x as usize] as usize, m.rank_mask(x));
        }
    }

    /// Random matroid from a random 0/1/2 matrix over GF(3).
    pub(crate) fn arb_matroid(max_n: usize) -> impl Strategy<Value = Matroid> {
        (1..=max_n, 1usize..=3).prop_flat_map(|(n, rows)| {
            proptest::collection::vec(0u8..3, n * rows)
                .prop_map(move |m| crate::linear::column_matroid(3, rows, n, &m))
        })
    }

    proptest! {
        #[test]
        fn circuits_match_brute_force(m in arb_matroid(6)) {
            prop_assert_eq!(m.circuits(), brute_circuits(&m));
        }

        #[test]
        fn dual_involution_and_cocircuits(m in arb_matroid(6)) {
            prop_assert_eq!(m.dual().dual(), m.clone());
            // cocircuits are minimal sets meeting every basis
            let co: Vec<Mask> = {
                let meets_all = |x: Mask| m.bases().iter().all(|&b| b & x != 0);
                let mut v: Vec<Mask> = (0..(1u32 << m.n()))
                    .filter(|&x| meets_all(x) && iter_bits(x).all(|e| !meets_all(x & !(1 << e))))
                    .collect();
                v.sort_by_key(|&x| bits::size_key(x));
                v
            };
            prop_assert_eq!(m.dual().circuits(), co);
        }

        #[test]
        fn rank_is_submodular(m in arb_matroid(5), x in 0u32..32, y in 0u32..32) {
            let g = m.system().ground();
            let (x, y) = (x & g, y & g);
            let r = |s| m.rank_mask(s);
            prop_assert!(r(x | y) + r(x & y) <= r(x) + r(y));
            prop_assert!(r(x & y) <= r(x));
        }

        #[test]
        fn quotient_tests_agree(q in arb_matroid(5), l in arb_matroid(5)) {
            if q.n() == l.n() {
                let a = is_quotient(&q, &l).unwrap();
                prop_assert_eq!(a, quotient_by_bases(&q, &l));
                if a {
                    prop_assert!(is_quotient(&l.dual(), &q.dual()).unwrap());
                }
            }
        }
    }
}
