//! Bitmask helpers for subsets of a ground set `{0, …, n-1}`.

use crate::setsystem::Mask;

/// Mask with the low `n` bits set.
#[inline]
pub const fn full(n: usize) -> Mask {
    if n >= 32 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

#[inline]
pub const fn size(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Indices of the set bits, ascending.
pub fn iter_bits(mut mask: Mask) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Packs the bits of `mask` selected by `keep` into the low positions,
/// preserving their order.
pub fn compress(mask: Mask, keep: Mask) -> Mask {
    let mut out = 0;
    for (pos, i) in iter_bits(keep).enumerate() {
        if mask & (1 << i) != 0 {
            out |= 1 << pos;
        }
    }
    out
}

/// Inverse of [`compress`]: spreads the low bits of `mask` onto the set
/// positions of `keep`.
pub fn expand(mask: Mask, keep: Mask) -> Mask {
    let mut out = 0;
    for (pos, i) in iter_bits(keep).enumerate() {
        if mask & (1 << pos) != 0 {
            out |= 1 << i;
        }
    }
    out
}

/// All submasks of `mask` in increasing numeric order, starting with 0.
pub fn submasks(mask: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(0 as Mask);
    core::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

/// All `k`-subsets of `{0, …, n-1}` in increasing numeric order.
pub fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = Mask> {
    let limit: u64 = 1u64 << n;
    let mut next: Option<u64> = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some((1u64 << k) - 1)
    };
    core::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nx = (((r ^ cur) >> 2) / c) | r;
            if nx < limit {
                Some(nx)
            } else {
                None
            }
        };
        Some(cur as Mask)
    })
}

/// Sort key ordering subsets by size, then numerically.
#[inline]
pub const fn size_key(mask: Mask) -> u64 {
    ((mask.count_ones() as u64) << 32) | mask as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn compress_expand_roundtrip() {
        let keep = 0b1011_0110;
        for m in submasks(keep) {
            assert_eq!(expand(compress(m, keep), keep), m);
        }
        assert_eq!(compress(0b1010, 0b1110), 0b101);
    }

    #[test]
    fn submasks_ascending_and_complete() {
        let got: Vec<_> = submasks(0b1101).collect();
        assert_eq!(got, [0, 1, 4, 5, 8, 9, 12, 13]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn masks_of_size_counts() {
        assert_eq!(masks_of_size(5, 2).count(), 10);
        assert_eq!(masks_of_size(4, 0).collect::<Vec<_>>(), [0]);
        assert_eq!(masks_of_size(3, 3).collect::<Vec<_>>(), [7]);
        assert_eq!(masks_of_size(3, 4).count(), 0);
        let v: Vec<_> = masks_of_size(4, 2).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
