//! Permutations of `[n]`, stored 0-based in one-line notation (`p[i]` is the image of `i`).

use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn check(p: &[usize]) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return Err(Error::InvalidPermutation(format!("{:?}", p)));
        }
        seen[x] = true;
    }
    Ok(())
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

/// `x -> outer[inner[x]]`.
pub fn compose(outer: &[usize], inner: &[usize]) -> Perm {
    inner.iter().map(|&x| outer[x]).collect()
}

/// Direct sum: `a` acts on the first `a.len()` points, `b` on the rest.
pub fn direct_sum(a: &[usize], b: &[usize]) -> Perm {
    let k = a.len();
    a.iter().copied().chain(b.iter().map(|&x| x + k)).collect()
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// Block permutation `rho_lambda`.
///
/// `lambda[j]` is the (0-based) old block placed at new block position `j`; the result sends
/// every old position to its new position.
pub fn block_permutation(lambda: &[usize], sizes: &[usize]) -> Result<Perm> {
    if lambda.len() != sizes.len() {
        return Err(Error::InvalidPermutation(format!(
            "{} blocks but {} sizes",
            lambda.len(),
            sizes.len()
        )));
    }
    check(lambda)?;
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &s in sizes {
        offsets.push(acc);
        acc += s;
    }
    let mut rho = vec![0; acc];
    let mut pos = 0;
    for &old in lambda {
        for l in 0..sizes[old] {
            rho[offsets[old] + l] = pos;
            pos += 1;
        }
    }
    Ok(rho)
}

/// All permutations of `[n]` in lexicographic order.
pub fn all(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p = identity(n);
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_identity() {
        assert_eq!(block_permutation(&[0, 1, 2], &[2, 1, 3]).unwrap(), identity(6));
    }

    #[test]
    fn block_swap_of_singletons_is_transposition() {
        assert_eq!(block_permutation(&[1, 0], &[1, 1]).unwrap(), vec![1, 0]);
    }

    #[test]
    fn block_swap_uneven() {
        // blocks [a][b c] -> [b c][a]
        assert_eq!(block_permutation(&[1, 0], &[1, 2]).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn enumerates_factorial() {
        assert_eq!(all(4).len(), 24);
        assert_eq!(all(1), vec![vec![0]]);
    }

    #[test]
    fn compose_with_inverse() {
        let p = vec![2, 0, 3, 1];
        assert!(is_identity(&compose(&p, &inverse(&p))));
        assert!(check(&[0, 0]).is_err());
    }
}
