//! Signed permutations as the hyperoctahedral group `W(B_n)`.
//!
//! Generators are numbered `0..n` here, with `s_0` negating the first entry.
//! Generator `i` corresponds to generator `i + 1` of the standard `B_n` system.

use std::fmt;

use crate::coxsys::{Gen, Word};
use crate::Error;

/// Largest rank counted exhaustively by [`count_avoiding`].
pub const MAX_EXHAUSTIVE_RANK: usize = 8;

/// Window notation `[w(1), …, w(n)]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self, Error> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &a in &window {
            let u = a.unsigned_abs() as usize;
            if a == 0 || u > n || seen[u] {
                return Err(Error::Param(format!("not a signed permutation: {window:?}")));
            }
            seen[u] = true;
        }
        Ok(SignedPermutation { window })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { window: (1..=n as i32).collect() }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &a)| a == i as i32 + 1)
    }

    /// `w·s_i`: `s_0` negates position 1, `s_i` swaps positions `i` and `i + 1`.
    pub fn apply_right(&self, i: usize) -> Result<Self, Error> {
        let n = self.rank();
        if i >= n {
            return Err(Error::Param(format!("generator s_{i} out of range for rank {n}")));
        }
        let mut w = self.window.clone();
        if i == 0 {
            w[0] = -w[0];
        } else {
            w.swap(i - 1, i);
        }
        Ok(SignedPermutation { window: w })
    }

    /// Whether `ℓ(w·s_i) < ℓ(w)`.
    pub fn is_descent(&self, i: usize) -> bool {
        if i == 0 {
            self.window[0] < 0
        } else {
            self.window[i - 1] > self.window[i]
        }
    }

    /// Removes descents greedily, recording the generators used.
    fn reduce(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut path = Vec::new();
        while let Some(i) = (0..w.rank()).find(|&i| w.is_descent(i)) {
            w = w.apply_right(i).expect("in range");
            path.push(i);
        }
        debug_assert!(w.is_identity());
        path
    }

    pub fn length(&self) -> usize {
        self.reduce().len()
    }

    /// A reduced word in the labels of the standard `B_n` system.
    pub fn reduced_word(&self) -> Word {
        Word(self.reduce().iter().rev().map(|&i| i as Gen + 1).collect())
    }

    /// Positions `i < j` with `a_j < a_i < 0`.
    pub fn has_bad_pair(&self) -> bool {
        let neg: Vec<i32> = self.window.iter().copied().filter(|&a| a < 0).collect();
        neg.windows(2).any(|p| p[1] < p[0])
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.window)
    }
}

/// All `2^n n!` signed permutations of rank `n`.
pub fn all_signed_permutations(n: usize) -> Vec<SignedPermutation> {
    fn rec(n: usize, cur: &mut Vec<i32>, used: &mut [bool], out: &mut Vec<SignedPermutation>) {
        if cur.len() == n {
            out.push(SignedPermutation { window: cur.clone() });
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                for s in [1, -1] {
                    cur.push(s * v as i32);
                    rec(n, cur, used, out);
                    cur.pop();
                }
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n + 1], &mut out);
    out
}

/// `Σ_k C(n,k)² k!`.
pub fn avoiding_formula(n: usize) -> u128 {
    let mut binom = 1u128;
    let mut fact = 1u128;
    let mut sum = 0u128;
    for k in 0..=n as u128 {
        if k > 0 {
            binom = binom * (n as u128 + 1 - k) / k;
            fact *= k;
        }
        sum += binom * binom * fact;
    }
    sum
}

/// Count of signed permutations without a bad pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedCount {
    pub rank: usize,
    /// Exhaustive count, absent above [`MAX_EXHAUSTIVE_RANK`].
    pub count: Option<u128>,
    pub formula: u128,
}

impl SignedCount {
    pub fn verified(&self) -> bool {
        self.count == Some(self.formula)
    }
}

pub fn count_avoiding(n: usize) -> SignedCount {
    let formula = avoiding_formula(n);
    let count = (n <= MAX_EXHAUSTIVE_RANK)
        .then(|| all_signed_permutations(n).iter().filter(|w| !w.has_bad_pair()).count() as u128);
    SignedCount { rank: n, count, formula }
}

/// Bad-pair-free count against the dimension of `nH(B_n, 2s, J_<4)`.
pub fn bn_basis_crosscheck(n: usize, budget: &crate::wordengine::Budget) -> Result<bool, Error> {
    use crate::coxsys::{standard_system, StandardFamily};
    use crate::groupmodel::{wj0_basis, GroupTable};
    let m = standard_system(StandardFamily::B(n))?;
    let j0 = m.pairs().filter(|&(_, _, x)| x.is_some_and(|x| x < 4)).map(|(i, j, _)| (i, j)).collect();
    let table = GroupTable::build(&m, budget);
    if !table.is_complete() {
        return Err(Error::Budget(format!("group table for B_{n} incomplete")));
    }
    let dim = wj0_basis(&m, &j0, budget).count().ok_or_else(|| Error::Budget("ideal incomplete".into()))?;
    let c = count_avoiding(n);
    Ok(c.count.unwrap_or(c.formula) == dim as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxsys::{standard_system, StandardFamily};
    use crate::groupmodel::{wj0_basis_in, GroupTable};
    use crate::wordengine::Budget;
    use std::collections::{BTreeSet, HashMap};

    fn sp(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(sp(&[1, 2]).apply_right(0).unwrap(), sp(&[-1, 2]));
        assert_eq!(sp(&[1, 2]).apply_right(1).unwrap(), sp(&[2, 1]));
        let w = sp(&[3, -1, 2]);
        assert_eq!(w.apply_right(0).unwrap().apply_right(0).unwrap(), w);
        assert!(w.apply_right(3).is_err());
        assert!(SignedPermutation::new(vec![1, 1]).is_err());
        assert!(SignedPermutation::new(vec![0]).is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(SignedPermutation::identity(4).length(), 0);
        assert_eq!(sp(&[-1, 2, 3]).length(), 1);
        assert_eq!(sp(&[2, 1]).length(), 1);
        assert_eq!(sp(&[-1, -2]).length(), 4);
    }

    #[test]
    fn bad_pair_examples() {
        assert!(sp(&[-1, -2]).has_bad_pair());
        assert!(!sp(&[-2, -1]).has_bad_pair());
        assert!(!sp(&[3, -1, 2]).has_bad_pair());
    }

    #[test]
    fn counts() {
        assert_eq!(count_avoiding(1).count, Some(2));
        assert_eq!(count_avoiding(2).count, Some(7));
        assert_eq!(count_avoiding(3).count, Some(34));
        assert_eq!(avoiding_formula(5), 1546);
        for n in 1..=7 {
            assert!(count_avoiding(n).verified(), "n={n}");
        }
        let big = count_avoiding(MAX_EXHAUSTIVE_RANK + 1);
        assert_eq!(big.count, None);
        assert!(!big.verified());
    }

    /// ℓ = inv + #{i<j : a_i + a_j < 0} + #{i : a_i < 0}.
    fn inversion_length(w: &SignedPermutation) -> usize {
        let a = w.window();
        let mut l = a.iter().filter(|&&x| x < 0).count();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                l += (a[i] > a[j]) as usize + (a[i] + a[j] < 0) as usize;
            }
        }
        l
    }

    #[test]
    fn length_is_consistent() {
        for n in 1..=4 {
            let lens: HashMap<SignedPermutation, usize> =
                all_signed_permutations(n).into_iter().map(|w| (w.clone(), w.length())).collect();
            for (w, &l) in &lens {
                assert_eq!(l, inversion_length(w));
                for i in 0..n {
                    let u = &lens[&w.apply_right(i).unwrap()];
                    if w.is_descent(i) {
                        assert_eq!(*u + 1, l);
                    } else {
                        assert_eq!(*u, l + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn greedy_choice_does_not_matter() {
        fn step_counts(
            w: &SignedPermutation,
            memo: &mut HashMap<SignedPermutation, Vec<usize>>,
        ) -> Vec<usize> {
            if let Some(c) = memo.get(w) {
                return c.clone();
            }
            let mut counts: Vec<usize> = if w.is_identity() { vec![0] } else { Vec::new() };
            for i in (0..w.rank()).filter(|&i| w.is_descent(i)) {
                counts.extend(step_counts(&w.apply_right(i).unwrap(), memo).into_iter().map(|c| c + 1));
            }
            counts.sort_unstable();
            counts.dedup();
            memo.insert(w.clone(), counts.clone());
            counts
        }
        for n in 1..=4 {
            let mut memo = HashMap::new();
            for w in all_signed_permutations(n) {
                assert_eq!(step_counts(&w, &mut memo), vec![w.length()], "{w:?}");
            }
        }
    }

    #[test]
    fn bijection_with_basis() {
        for n in 2..=4 {
            let m = standard_system(StandardFamily::B(n)).unwrap();
            let table = GroupTable::build(&m, &Budget::default());
            let j0 =
                m.pairs().filter(|&(_, _, x)| x.is_some_and(|x| x < 4)).map(|(i, j, _)| (i, j)).collect();
            let basis: BTreeSet<u32> = wj0_basis_in(&table, &j0).elements.iter().map(|e| e.id).collect();
            let good: BTreeSet<u32> = all_signed_permutations(n)
                .iter()
                .filter(|w| !w.has_bad_pair())
                .map(|w| table.element_of(w.reduced_word().as_slice()).unwrap())
                .collect();
            assert_eq!(basis, good, "n={n}");
        }
        for n in 2..=5 {
            assert!(bn_basis_crosscheck(n, &Budget::default()).unwrap());
        }
    }
}
