//! Permutations in one-line notation with values `1..=n`, and the
//! statistics the rest of the crate needs.

use crate::error::{Error, Result};

/// Fails unless `w` lists each of `1..=w.len()` exactly once.
pub fn check_permutation(w: &[usize]) -> Result<()> {
    let mut seen = vec![false; w.len()];
    for &v in w {
        if v == 0 || v > w.len() || std::mem::replace(&mut seen[v - 1], true) {
            return Err(Error::InvalidArgument(format!("{w:?} is not a permutation")));
        }
    }
    Ok(())
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut w: Vec<usize> = (1..=n).collect();
    let mut out = vec![w.clone()];
    while next_permutation(&mut w) {
        out.push(w.clone());
    }
    out
}

/// Advances `w` to its lexicographic successor; false at the last one.
pub fn next_permutation<T: Ord>(w: &mut [T]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let Some(i) = (0..w.len() - 1).rev().find(|&i| w[i] < w[i + 1]) else {
        return false;
    };
    let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).expect("successor exists");
    w.swap(i, j);
    w[i + 1..].reverse();
    true
}

/// Positions `i` (1-based) with `w_i > w_{i+1}`.
pub fn descent_set(w: &[usize]) -> Vec<usize> {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect()
}

pub fn maj(w: &[usize]) -> usize {
    descent_set(w).iter().sum()
}

pub fn inverse(w: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; w.len()];
    for (i, &v) in w.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    inv
}

pub fn is_derangement(w: &[usize]) -> bool {
    w.iter().enumerate().all(|(i, &v)| v != i + 1)
}

/// The first ascent sits at an even position, where position `n` always
/// counts as an ascent. The empty permutation qualifies.
pub fn is_desarrangement(w: &[usize]) -> bool {
    first_non_descent(&descent_set(w), w.len()).is_none_or(|a| a % 2 == 0)
}

/// Smallest element of `[n] \ des`, or `None` when `n = 0`.
pub fn first_non_descent(des: &[usize], n: usize) -> Option<usize> {
    (1..=n).find(|i| !des.contains(i))
}

/// Cycle lengths sorted in weakly decreasing order.
pub fn cycle_type(w: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; w.len()];
    let mut lens = Vec::new();
    for start in 0..w.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = w[i] - 1;
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let p = all_permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![1, 2, 3]);
        assert_eq!(p[5], vec![3, 2, 1]);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all_permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn statistics() {
        let w = [3, 1, 4, 2];
        assert_eq!(descent_set(&w), vec![1, 3]);
        assert_eq!(maj(&w), 4);
        assert_eq!(inverse(&w), vec![2, 4, 1, 3]);
        assert!(is_derangement(&w));
        assert_eq!(cycle_type(&w), vec![4]);
        assert_eq!(cycle_type(&[2, 1, 3]), vec![2, 1]);
    }

    #[test]
    fn desarrangements_are_equinumerous_with_derangements() {
        assert!(is_desarrangement(&[]));
        assert!(is_desarrangement(&[2, 1]));
        assert!(!is_desarrangement(&[1]));
        assert!(!is_desarrangement(&[3, 2, 1]));
        for n in 0..=6 {
            let perms = all_permutations(n);
            let d = perms.iter().filter(|w| is_derangement(w)).count();
            let e = perms.iter().filter(|w| is_desarrangement(w)).count();
            assert_eq!(d, e, "n={n}");
        }
    }
}
