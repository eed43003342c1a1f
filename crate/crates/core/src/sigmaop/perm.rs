//! Permutations of `{0, …, n-1}` stored as value lists.
//!
//! A permutation `ρ` acts on tuples by `(ρ·v)_t = v_{ρ(t)}`.

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `+1` or `-1`.
pub fn sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Lexicographic rank of a permutation.
pub fn rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut r = 0usize;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r = r * (n - i) + smaller;
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(n: usize, mut r: usize) -> Perm {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = r % base;
        r /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// All permutations in lexicographic order.
pub fn all(n: usize) -> Vec<Perm> {
    (0..factorial(n) as usize).map(|r| unrank(n, r)).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

/// Adjacent swaps `j` (exchanging positions `j`, `j+1`) such that acting by
/// them in order realizes the action of `p`.
pub fn adjacent_word(p: &[usize]) -> Vec<usize> {
    let mut l = p.to_vec();
    let mut word = Vec::new();
    let n = l.len();
    for pass in 0..n {
        for j in 0..n.saturating_sub(1 + pass) {
            if l[j] > l[j + 1] {
                l.swap(j, j + 1);
                word.push(j);
            }
        }
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_round_trips() {
        for n in 0..6 {
            let ps = all(n);
            assert_eq!(ps.len() as u64, factorial(n));
            for (r, p) in ps.iter().enumerate() {
                assert_eq!(rank(p), r);
            }
        }
        assert_eq!(unrank(3, 0), vec![0, 1, 2]);
    }

    #[test]
    fn signs() {
        assert_eq!(sign(&[1, 0, 2]), -1);
        assert_eq!(sign(&[1, 2, 0]), 1);
        for p in all(4) {
            assert_eq!(
                sign(&p),
                if adjacent_word(&p).len().is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            );
        }
    }
}
