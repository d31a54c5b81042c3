use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `0..n`, stored as its image list: `self[i]` is where `i` goes.
/// Products compose right to left: `p.compose(q)` is `p ∘ q`, so `q` acts first.
/// This is the multiplication of `Σₙ` everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPerm(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// The transposition swapping `i` and `j` in `Σₙ`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, j);
        Perm(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Perm(v)
    }

    /// Rank in the lexicographic order of `Σₙ` (Lehmer code).
    pub fn rank(&self) -> u64 {
        let n = self.0.len();
        let mut rank = 0u64;
        let mut used = vec![false; n];
        for (pos, &v) in self.0.iter().enumerate() {
            let smaller = (0..v).filter(|&u| !used[u]).count() as u64;
            rank = rank * (n - pos) as u64 + smaller;
            used[v] = true;
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: u64) -> Perm {
        let mut digits = vec![0usize; n];
        for (i, d) in digits.iter_mut().enumerate().rev() {
            let base = (n - i) as u64;
            *d = (rank % base) as usize;
            rank /= base;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        Perm(digits.into_iter().map(|d| pool.remove(d)).collect())
    }

    /// All of `Σₙ` in lexicographic order, identity first.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::with_capacity(factorial(n) as usize);
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
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

    /// The block sum acting on `0..n+m` with `self` on the first `n` points.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let n = self.degree();
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&i| i + n));
        Perm(v)
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation on points `1..n`, `()` for the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for s in 0..n {
            if seen[s] || self.0[s] == s {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = s;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}
