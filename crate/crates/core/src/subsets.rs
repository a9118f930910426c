//! Lexicographic enumeration of fixed-size subsets.

use std::ops::ControlFlow;

/// Calls `f` on every `size`-subset of `pool` in lexicographic order of
/// positions. `pool` is expected to be sorted, in which case the subsets come
/// out sorted and in lexicographic order of their values.
pub fn for_each_subset<F>(pool: &[u32], size: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    let n = pool.len();
    if size > n {
        return ControlFlow::Continue(());
    }
    if size == 0 {
        return f(&[]);
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut buf: Vec<u32> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        f(&buf)?;
        // advance the rightmost index that still has room
        let mut i = size;
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            if idx[i] < n - size + i {
                break;
            }
        }
        idx[i] += 1;
        buf[i] = pool[idx[i]];
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
            buf[j] = pool[idx[j]];
        }
    }
}

/// Collects every `size`-subset of `pool`.
pub fn subsets(pool: &[u32], size: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let _ = for_each_subset(pool, size, |s| {
        out.push(s.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Sorted-set helpers over ascending `u32` slices.
pub(crate) fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

pub(crate) fn intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}
