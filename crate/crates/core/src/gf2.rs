//! Symmetric matrices over GF(2), their delta-matroids `D(C)`, and binary
//! delta-matroid recognition.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::bits::{self, iter_bits};
use crate::canonical::{canonical_of_masks, CanonicalForm};
use crate::catalog::p_family;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::minor_scan::{ExminorScanner, Verdict};
use crate::setsystem::{Mask, SetSystem};

/// A symmetric matrix over GF(2), one row bitmask per element. In
/// characteristic two skew-symmetry is symmetry and the diagonal is free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewSymMatrixGF2 {
    n: usize,
    rows: Vec<u64>,
}

impl SkewSymMatrixGF2 {
    pub fn new(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > crate::MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        for (i, &r) in rows.iter().enumerate() {
            if r >> n != 0 {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has bits beyond column {n}"
                )));
            }
            for (j, &rj) in rows.iter().enumerate() {
                if (r >> j & 1) != (rj >> i & 1) {
                    return Err(Error::NotSymmetric(i.min(j), i.max(j)));
                }
            }
        }
        Ok(SkewSymMatrixGF2 { n, rows })
    }

    /// Parses rows written as bit strings in column order, e.g. `"0110"`.
    pub fn from_bit_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.len();
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                parse_bits(r.as_ref(), n).map_err(|m| Error::ShapeMismatch(format!("row {i}: {m}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn zero(n: usize) -> Self {
        SkewSymMatrixGF2 {
            n,
            rows: alloc::vec![0; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        SkewSymMatrixGF2 {
            n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    /// A uniformly random symmetric matrix.
    pub fn random<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut rows = alloc::vec![0u64; n];
        for i in 0..n {
            for j in i..n {
                if rng.next_u32() & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        SkewSymMatrixGF2 { n, rows }
    }

    /// The matrix whose upper triangle (diagonal included, row-major) is
    /// read from the bits of `code`. Enumerates all `2^(n(n+1)/2)` matrices.
    pub fn from_upper_code(n: usize, code: u64) -> Self {
        let mut rows = alloc::vec![0u64; n];
        let mut bit = 0;
        for i in 0..n {
            for j in i..n {
                if code >> bit & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                bit += 1;
            }
        }
        SkewSymMatrixGF2 { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Rows as bit strings in column order.
    pub fn to_bit_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|&r| {
                (0..self.n)
                    .map(|j| if r >> j & 1 == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

fn parse_bits(s: &str, len: usize) -> core::result::Result<u64, String> {
    if s.len() != len {
        return Err(format!("expected {len} bits, found {}", s.len()));
    }
    s.bytes().enumerate().try_fold(0u64, |acc, (j, b)| match b {
        b'0' => Ok(acc),
        b'1' => Ok(acc | 1 << j),
        _ => Err(format!("unexpected character `{}`", b as char)),
    })
}

/// Rank over GF(2) of bitmask rows, eliminating on the lowest set bit.
fn gf2_rank(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let r = rows[i];
        if r == 0 {
            continue;
        }
        let low = r & r.wrapping_neg();
        for row in rows.iter_mut().skip(i + 1) {
            if *row & low != 0 {
                *row ^= r;
            }
        }
        rank += 1;
    }
    rank
}

/// Principal submatrix restricted to `a`, compressed to `|a|` columns.
fn principal_rows(c: &SkewSymMatrixGF2, a: Mask) -> Vec<u64> {
    iter_bits(a)
        .map(|i| bits::compress(c.rows[i] as Mask & a, a) as u64)
        .collect()
}

/// Whether `C[A]` is nonsingular over GF(2). The empty matrix is.
pub fn principal_nonsingular(c: &SkewSymMatrixGF2, a: Mask) -> bool {
    let mut rows = principal_rows(c, a);
    gf2_rank(&mut rows) == rows.len()
}

/// `D(C)`: the subsets `A` with `C[A]` nonsingular, on default labels.
pub fn d_of_c(c: &SkewSymMatrixGF2) -> SetSystem {
    let feasible: Vec<Mask> = (0..=bits::full(c.n))
        .filter(|&a| principal_nonsingular(c, a))
        .collect();
    SetSystem::from_masks(c.n, feasible).expect("empty set is always feasible")
}

/// A dense GF(2) matrix with row bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows || cols > 64 || data.iter().any(|&r| cols < 64 && r >> cols != 0) {
            return Err(Error::ShapeMismatch(format!(
                "expected a {rows}x{cols} matrix"
            )));
        }
        Ok(Gf2Matrix { rows, cols, data })
    }

    pub fn from_bit_strings<S: AsRef<str>>(rows: &[S], cols: usize) -> Result<Self> {
        let data = rows
            .iter()
            .map(|r| parse_bits(r.as_ref(), cols).map_err(Error::ShapeMismatch))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows.len(), cols, data)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i] >> j & 1 == 1
    }
}

/// The symmetric block matrix `[[0, A], [Aᵀ, 0]]` on `n` elements, where
/// rows of `A` follow the elements of `b` and columns the remaining ones,
/// both in increasing order. If `(I | A)` represents `M` with `I` on `b`,
/// then `D(C) = M * b`.
pub fn representation_twist(a_mat: &Gf2Matrix, b: Mask, n: usize) -> Result<SkewSymMatrixGF2> {
    if n > crate::MAX_ELEMENTS || b >> n != 0 {
        return Err(Error::MaskOutOfRange { mask: b, n });
    }
    let basis: Vec<usize> = iter_bits(b).collect();
    let rest: Vec<usize> = iter_bits(bits::full(n) & !b).collect();
    if a_mat.rows != basis.len() || a_mat.cols != rest.len() {
        return Err(Error::ShapeMismatch(format!(
            "expected a {}x{} block, found {}x{}",
            basis.len(),
            rest.len(),
            a_mat.rows,
            a_mat.cols
        )));
    }
    let mut rows = alloc::vec![0u64; n];
    for (i, &bi) in basis.iter().enumerate() {
        for (j, &rj) in rest.iter().enumerate() {
            if a_mat.get(i, j) {
                rows[bi] |= 1 << rj;
                rows[rj] |= 1 << bi;
            }
        }
    }
    Ok(SkewSymMatrixGF2 { n, rows })
}

/// The binary matroid represented by `(I | A)`, `I` on the elements of `b`.
pub fn binary_matroid_from_standard(a_mat: &Gf2Matrix, b: Mask, n: usize) -> Result<Matroid> {
    let c = representation_twist(a_mat, b, n)?;
    let r = a_mat.rows;
    let mut dense = alloc::vec![0u8; r * n];
    for (i, bi) in iter_bits(b).enumerate() {
        dense[i * n + bi] = 1;
        for j in 0..n {
            if b >> j & 1 == 0 && c.get(bi, j) {
                dense[i * n + j] = 1;
            }
        }
    }
    Ok(crate::linear::column_matroid(2, r, n, &dense))
}

/// The twist moving a feasible set onto `∅`: the lexicographically least
/// among the smallest feasible sets.
pub fn normalizing_twist(d: &SetSystem) -> Mask {
    let (k, _) = d.size_range().unwrap_or((0, 0));
    d.feasible()
        .iter()
        .copied()
        .filter(|&f| bits::size(f) == k)
        // among equal sizes, a larger bit-reversed value is lexicographically smaller
        .max_by_key(|&f| f.reverse_bits())
        .unwrap_or(0)
}

/// Binary recognition by scanning for minors isomorphic to twists of
/// `P1`–`P5`. For delta-matroids the rest of the binary excluded-minor list
/// cannot occur, since it consists of non-delta-matroids.
pub fn is_binary_dm(d: &SetSystem) -> Result<Verdict> {
    if !d.is_proper() {
        return Err(Error::Improper);
    }
    if !d.is_delta_matroid() {
        return Err(Error::NotDeltaMatroid);
    }
    let scanner = ExminorScanner::new(&p_family(), d.n());
    Ok(match scanner.find(d) {
        None => Verdict::Member,
        Some(w) => Verdict::Excluded(w),
    })
}

/// Exhaustive reference for small ground sets: the canonical forms of every
/// `D(C)` on `n` elements.
#[derive(Clone, Debug)]
pub struct BinaryOracle {
    n: usize,
    forms: BTreeSet<CanonicalForm>,
}

impl BinaryOracle {
    pub const MAX_N: usize = 5;

    pub fn new(n: usize) -> Result<Self> {
        if n > Self::MAX_N {
            return Err(Error::InfeasibleParameters(format!(
                "binary oracle supports at most {} elements",
                Self::MAX_N
            )));
        }
        let mut raw = BTreeSet::new();
        for code in 0..1u64 << (n * (n + 1) / 2) {
            let c = SkewSymMatrixGF2::from_upper_code(n, code);
            raw.insert(d_of_c(&c).feasible().to_vec());
        }
        let forms = raw.iter().map(|f| canonical_of_masks(n, f)).collect();
        Ok(BinaryOracle { n, forms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of isomorphism classes of `D(C)`.
    pub fn class_count(&self) -> usize {
        self.forms.len()
    }

    /// Whether `D` is isomorphic to `D(C)` for some `C`.
    pub fn is_d_of_c(&self, d: &SetSystem) -> bool {
        d.n() == self.n
            && self
                .forms
                .contains(&canonical_of_masks(d.n(), d.feasible()))
    }

    /// Whether some twist of `D` by a feasible set is isomorphic to a `D(C)`.
    pub fn is_binary(&self, d: &SetSystem) -> bool {
        match d.twist(normalizing_twist(d)) {
            Ok(t) => self.is_d_of_c(&t),
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_named, p};
    use crate::minor_scan::has_minor_from;
    use proptest::prelude::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Determinant over GF(2) by cofactor expansion: an independent oracle.
    fn det(rows: &[Vec<bool>]) -> bool {
        let n = rows.len();
        if n == 0 {
            return true;
        }
        (0..n).fold(false, |acc, j| {
            if !rows[0][j] {
                return acc;
            }
            let minor: Vec<Vec<bool>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            acc ^ det(&minor)
        })
    }

    fn dense(c: &SkewSymMatrixGF2, a: Mask) -> Vec<Vec<bool>> {
        let idx: Vec<usize> = iter_bits(a).collect();
        idx.iter()
            .map(|&i| idx.iter().map(|&j| c.get(i, j)).collect())
            .collect()
    }

    #[test]
    fn principal_examples() {
        let c = SkewSymMatrixGF2::from_bit_strings(&["01", "10"]).unwrap();
        assert!(principal_nonsingular(&c, 0));
        assert!(principal_nonsingular(&c, 0b11));
        assert!(!principal_nonsingular(&SkewSymMatrixGF2::zero(3), 0b101));
        assert_eq!(d_of_c(&c).feasible(), &[0, 0b11]);
        assert_eq!(d_of_c(&SkewSymMatrixGF2::zero(3)).feasible(), &[0]);
        assert_eq!(d_of_c(&SkewSymMatrixGF2::identity(3)).len(), 8);
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(
            SkewSymMatrixGF2::new(alloc::vec![0b10, 0b00]),
            Err(Error::NotSymmetric(0, 1))
        );
        assert!(SkewSymMatrixGF2::from_bit_strings(&["01", "1"]).is_err());
    }

    #[test]
    fn u12_twist() {
        let a = Gf2Matrix::from_bit_strings(&["1"], 1).unwrap();
        let c = representation_twist(&a, 0b01, 2).unwrap();
        assert_eq!(c.rows(), &[0b10, 0b01]);
        let m = binary_matroid_from_standard(&a, 0b01, 2).unwrap();
        assert_eq!(m.bases(), &[0b01, 0b10]);
        assert_eq!(d_of_c(&c), m.system().twist(0b01).unwrap());
    }

    #[test]
    fn zero_block_and_free_matroid() {
        let a = Gf2Matrix::new(2, 2, alloc::vec![0, 0]).unwrap();
        let c = representation_twist(&a, 0b0011, 4).unwrap();
        assert_eq!(c, SkewSymMatrixGF2::zero(4));
        let m = binary_matroid_from_standard(&a, 0b0011, 4).unwrap();
        assert_eq!(m.bases(), &[0b0011]);
        assert_eq!(d_of_c(&c), m.system().twist(0b0011).unwrap());
        let free = Gf2Matrix::new(3, 0, alloc::vec![0, 0, 0]).unwrap();
        let c = representation_twist(&free, 0b111, 3).unwrap();
        assert_eq!(d_of_c(&c).feasible(), &[0]);
        assert!(representation_twist(&free, 0b011, 3).is_err());
    }

    /// Every `(I | A)` on at most four elements.
    fn all_standard(n: usize) -> impl Iterator<Item = (Gf2Matrix, Mask)> {
        (0..=bits::full(n)).flat_map(move |b| {
            let r = bits::size(b);
            let cols = n - r;
            (0..1u64 << (r * cols)).map(move |code| {
                let data = (0..r)
                    .map(|i| code >> (i * cols) & bits::full(cols) as u64)
                    .collect();
                (Gf2Matrix::new(r, cols, data).unwrap(), b)
            })
        })
    }

    #[test]
    fn twist_matches_d_of_c_for_small_binary_matroids() {
        for n in 0..=4 {
            for (a, b) in all_standard(n) {
                let m = binary_matroid_from_standard(&a, b, n).unwrap();
                assert!(m.is_basis(b));
                let c = representation_twist(&a, b, n).unwrap();
                assert_eq!(d_of_c(&c), m.system().twist(b).unwrap());
                assert!(is_binary_dm(m.system()).unwrap().is_member());
            }
        }
    }

    #[test]
    fn p_family_is_not_binary() {
        for i in 1..=5 {
            let s = p(i).unwrap();
            assert!(!is_binary_dm(&s).unwrap().is_member(), "P{i}");
        }
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert!(!is_binary_dm(&u24.system().twist(0b0011).unwrap())
            .unwrap()
            .is_member());
        assert_eq!(
            is_binary_dm(&make_named("T1").unwrap()),
            Err(Error::NotDeltaMatroid)
        );
    }

    #[test]
    fn oracle_agrees_with_exminors_n4() {
        let oracle = BinaryOracle::new(4).unwrap();
        let targets = p_family();
        for idx in 1u128..(1 << 16) {
            let s = SetSystem::from_family_index(4, idx).unwrap();
            if !s.is_delta_matroid() {
                continue;
            }
            let direct = oracle.is_binary(&s);
            assert_eq!(direct, has_minor_from(&s, &targets).is_none(), "{s}");
            // every feasible twist is equally good for normalizing
            for &f in s.feasible() {
                assert_eq!(oracle.is_d_of_c(&s.twist(f).unwrap()), direct);
            }
        }
    }

    #[test]
    fn no_d_of_c_has_p_minor_n5() {
        let targets = p_family();
        let scanner = ExminorScanner::new(&targets, 5);
        let mut seen = BTreeSet::new();
        for code in 0..1u64 << 15 {
            let d = d_of_c(&SkewSymMatrixGF2::from_upper_code(5, code));
            if seen.insert(d.feasible().to_vec()) {
                assert!(scanner.find(&d).is_none(), "{d}");
            }
        }
    }

    proptest! {
        #[test]
        fn rank_matches_determinant(seed in any::<u64>(), n in 0usize..=6, a in any::<u32>()) {
            let c = SkewSymMatrixGF2::random(n, &mut ChaCha8Rng::seed_from_u64(seed));
            let a = a & bits::full(n);
            prop_assert_eq!(principal_nonsingular(&c, a), det(&dense(&c, a)));
        }

        #[test]
        fn d_of_c_is_delta_matroid(seed in any::<u64>(), n in 0usize..=6) {
            let c = SkewSymMatrixGF2::random(n, &mut ChaCha8Rng::seed_from_u64(seed));
            let d = d_of_c(&c);
            prop_assert!(d.contains(0));
            prop_assert!(d.is_delta_matroid());
            prop_assert!(is_binary_dm(&d).unwrap().is_member());
            for &f in d.feasible() {
                prop_assert!(is_binary_dm(&d.twist(f).unwrap()).unwrap().is_member());
            }
        }
    }
}
