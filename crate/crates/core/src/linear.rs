//! Small prime-field linear algebra for building represented matroids.

use alloc::vec::Vec;

use crate::bits::{self, iter_bits};
use crate::matroid::Matroid;
use crate::setsystem::{Mask, SetSystem};

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small: Fermat
    let mut r = 1u32;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank over GF(p) of the columns of a `rows × n` row-major matrix selected by `cols`.
pub(crate) fn column_rank(p: u32, rows: usize, n: usize, matrix: &[u8], cols: Mask) -> usize {
    let idx: Vec<usize> = iter_bits(cols).collect();
    let mut m: Vec<Vec<u32>> = (0..rows)
        .map(|r| idx.iter().map(|&c| matrix[r * n + c] as u32 % p).collect())
        .collect();
    let mut rank = 0;
    for col in 0..idx.len() {
        let Some(piv) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col], p);
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The column matroid of a `rows × n` matrix over GF(p).
pub(crate) fn column_matroid(p: u32, rows: usize, n: usize, matrix: &[u8]) -> Matroid {
    let full = bits::full(n);
    let r = column_rank(p, rows, n, matrix, full);
    let bases: Vec<Mask> = bits::masks_of_size(n, r)
        .filter(|&b| column_rank(p, rows, n, matrix, b) == r)
        .collect();
    Matroid::new_unchecked(SetSystem::from_masks(n, bases).expect("n within range"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_from_generic_matrix() {
        // columns (1,0), (0,1), (1,1), (1,2) over GF(3): U_{2,4}
        let m = [1, 0, 1, 1, 0, 1, 1, 2];
        let mat = column_matroid(3, 2, 4, &m);
        assert_eq!(mat.bases().len(), 6);
        // over GF(2) the last column (1,0) repeats the first
        let m2 = column_matroid(2, 2, 4, &m);
        assert_eq!(m2.bases().len(), 5);
    }
}
