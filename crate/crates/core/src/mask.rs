//! Subsets of `{1, ..., n}` as bit masks: bit `k - 1` stands for member `k`.

use crate::error::{Error, Result};

pub type Mask = u64;

pub const MAX_MEMBERS: usize = 63;

/// Mask from 1-based member indices.
pub fn from_indices(indices: &[usize]) -> Result<Mask> {
    let mut m = 0;
    for &i in indices {
        if i == 0 || i > MAX_MEMBERS {
            return Err(Error::InvalidParameter(format!("member index {i} out of range")));
        }
        m |= 1 << (i - 1);
    }
    Ok(m)
}

/// 1-based member indices in increasing order.
pub fn indices(mask: Mask) -> Vec<usize> {
    members(mask).map(|k| k + 1).collect()
}

/// 0-based positions of the set bits, increasing.
pub fn members(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let k = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(k)
        }
    })
}

pub fn size(mask: Mask) -> usize {
    mask.count_ones() as usize
}

pub fn full(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn check(mask: Mask, n: usize) -> Result<()> {
    if mask == 0 {
        return Err(Error::EmptySubset);
    }
    if mask & !full(n) != 0 {
        return Err(Error::MaskOutOfRange { mask, n });
    }
    Ok(())
}

/// All nonempty masks over `n` members with at most `d` elements, in increasing mask order.
///
/// Walks combinations by size rather than scanning `2^n` masks, so `n = 20, d = 2` is cheap.
pub fn up_to(n: usize, d: usize) -> Vec<Mask> {
    let mut out: Vec<Mask> = (1..=d.min(n)).flat_map(|k| of_size(n, k)).collect();
    out.sort_unstable();
    out
}

/// All masks over `n` members with exactly `k` elements (Gosper's hack), increasing.
pub fn of_size(n: usize, k: usize) -> Vec<Mask> {
    if k == 0 || k > n {
        return Vec::new();
    }
    let limit = full(n);
    let mut out = Vec::new();
    let mut m: Mask = full(k);
    loop {
        out.push(m);
        let c = m & m.wrapping_neg();
        let r = m + c;
        if r == 0 || r > limit {
            break;
        }
        m = (((r ^ m) >> 2) / c) | r;
        if m > limit {
            break;
        }
    }
    out
}

/// Every nonempty submask of `mask`.
pub fn submasks(mask: Mask) -> impl Iterator<Item = Mask> {
    let mut s = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = s;
        s = (s - 1) & mask;
        if s == 0 {
            done = true;
        }
        Some(cur)
    })
}
