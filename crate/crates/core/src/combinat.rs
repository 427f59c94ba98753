//! Small combinatorial enumerators used throughout.

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Sign of a permutation given in one-line notation.
pub fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `k`-element subsets of `items`, each in the order of `items`.
pub fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Weak compositions of `n` into `parts` nonnegative parts, lexicographically
/// decreasing (so `(n, 0, …)` comes first).
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Partitions (weakly decreasing, length `≤ rows`, parts `≤ cols`) fitting
/// in a `rows × cols` box, padded with zeros to length `rows`.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Vec<usize>> {
    fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == rows {
            out.push(cur.clone());
            return;
        }
        for p in 0..=max {
            cur.push(p);
            rec(rows, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `n! / (λ_1! ⋯ λ_N!)` with `n = Σ λ_i`.
pub fn multinomial(parts: &[usize]) -> u128 {
    let n: usize = parts.iter().sum();
    parts.iter().fold(factorial(n), |acc, &p| acc / factorial(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(combinations(&[1, 2, 3, 4], 2).len(), 6);
        assert_eq!(compositions(3, 2), vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(partitions_in_box(2, 2).len(), 6);
        assert_eq!(multinomial(&[2, 1]), 3);
    }

    #[test]
    fn signs() {
        let total: i64 = permutations(3).iter().map(|p| perm_sign(p)).sum();
        assert_eq!(total, 0);
        assert_eq!(perm_sign(&[1, 0, 2]), -1);
    }
}
