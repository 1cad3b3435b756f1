//! Finite-dimensionality decisions and closed-form dimensions.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::coxsys::{compile, recognize_type, CoxeterMatrix, Cutoff, NilHeckeParams, StandardFamily};
use crate::groupmodel::{commuting_pairs, wj0_basis};
use crate::signedperm::avoiding_formula;
use crate::wordengine::{enumerate_basis, Budget};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Finite,
    Infinite,
    Unsupported,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Finite => "finite",
            Verdict::Infinite => "infinite",
            Verdict::Unsupported => "unsupported",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimInfo {
    Exact { value: u128, formula: String },
    ByEnumeration,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub dim: DimInfo,
    /// Identifier of a bundled diagram module witnessing infinite rank.
    pub witness: Option<String>,
    pub notes: String,
}

impl ClassificationResult {
    fn infinite(notes: impl Into<String>) -> Self {
        ClassificationResult {
            verdict: Verdict::Infinite,
            dim: DimInfo::NotApplicable,
            witness: None,
            notes: notes.into(),
        }
    }

    fn unsupported(notes: impl Into<String>) -> Self {
        ClassificationResult {
            verdict: Verdict::Unsupported,
            dim: DimInfo::NotApplicable,
            witness: None,
            notes: notes.into(),
        }
    }

    pub fn exact_dim(&self) -> Option<u128> {
        match self.dim {
            DimInfo::Exact { value, .. } => Some(value),
            _ => None,
        }
    }
}

pub fn catalan(n: usize) -> BigUint {
    // C_{k+1} = C_k · 2(2k+1) / (k+2)
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

fn cat(n: usize) -> u128 {
    catalan(n).to_u128().expect("fits")
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Dimension of `nH(A_n, (d,2,…,2), J_<3)`: `(d-1)C_{n+1} - (d-2)`.
pub fn xyx_dimension(n: usize, d: u32) -> u128 {
    let d = d as u128;
    (d - 1) * cat(n + 1) - (d - 2)
}

/// The partial-sum form `(d-1)C_{n+1} - (d-2)C_n + (d-2) Σ_{j=1}^{n-1} j C_{n-j}`.
/// It equals [`xyx_dimension`] for `n ≤ 3` and falls short from `n = 4` on.
pub fn xyx_partial_sum_formula(n: usize, d: u32) -> u128 {
    let d = d as u128;
    let partial: u128 = (1..n).map(|j| j as u128 * cat(n - j)).sum();
    (d - 1) * cat(n + 1) + (d - 2) * partial - (d - 2) * cat(n)
}

/// `n!(1 + n(d-1))`.
pub fn nc_a_dimension(n: usize, d: u32) -> u128 {
    factorial(n) * (1 + n as u128 * (d as u128 - 1))
}

/// Number of fully commutative elements of a finite Coxeter group.
pub fn fc_count_finite(matrix: &CoxeterMatrix, order: u128) -> Option<u128> {
    if order <= 2_000_000 {
        return wj0_basis(matrix, &commuting_pairs(matrix), &Budget::default()).count().map(|c| c as u128);
    }
    let p = NilHeckeParams::with_cutoff(matrix.clone(), vec![2; matrix.rank()], Cutoff::Finite(3)).ok()?;
    enumerate_basis(&compile(&p), &Budget::default()).dimension().map(|c| c as u128)
}

/// Dimension of one connected component for `k ≥ 3`, or `None` if infinite.
fn component_dim(matrix: &CoxeterMatrix, d: &[u32], k: Cutoff) -> Result<Option<DimInfo>, Error> {
    let exact = |value: u128, formula: &str| Some(DimInfo::Exact { value, formula: formula.to_string() });
    let Some((fam, perm)) = recognize_type(matrix)? else { return Ok(None) };
    let kf = match k {
        Cutoff::Finite(k) => Some(k),
        Cutoff::Infinite => None,
    };
    if d.iter().all(|&x| x == 2) {
        let Some(order) = fam.group_order() else {
            let fc_finite =
                matches!(fam, StandardFamily::E(n) | StandardFamily::F(n) | StandardFamily::H(n) if n >= 5);
            return Ok((kf == Some(3) && fc_finite).then_some(DimInfo::ByEnumeration));
        };
        if let StandardFamily::I2(m) = fam {
            let below = kf.is_none_or(|k| m < k);
            return Ok(if below {
                exact(2 * m as u128, "2m (m < k)")
            } else {
                exact(2 * m as u128 - 1, "2m-1 (m >= k)")
            });
        }
        return Ok(match (kf, fam) {
            (Some(3), StandardFamily::A(n)) => exact(cat(n + 1), "Catalan C_{n+1}"),
            (Some(3), _) => match fc_count_finite(matrix, order) {
                Some(v) => exact(v, "fully commutative count"),
                None => Some(DimInfo::ByEnumeration),
            },
            (Some(4), StandardFamily::B(n)) => exact(avoiding_formula(n), "sum_k C(n,k)^2 k!"),
            (Some(4), StandardFamily::F(4)) => exact(304, "F4 constant 304"),
            (Some(4 | 5), StandardFamily::H(3)) => exact(76, "H3 constant 76"),
            (Some(4 | 5), StandardFamily::H(4)) => exact(1460, "H4 constant 1460"),
            _ => exact(order, "|W|"),
        });
    }
    // Type A with one end exponent above 2.
    let StandardFamily::A(n) = fam else { return Ok(None) };
    let big: Vec<usize> = (0..d.len()).filter(|&i| d[i] > 2).collect();
    let ends = [perm[0] - 1, perm[n - 1] - 1];
    if big.len() != 1 || !ends.contains(&big[0]) {
        return Ok(None);
    }
    let dd = d[big[0]];
    Ok(match kf {
        Some(3) => exact(xyx_dimension(n, dd), "(d-1)C_{n+1} - (d-2)"),
        _ => exact(nc_a_dimension(n, dd), "n!(1+n(d-1))"),
    })
}

/// Cutoffs 1 and 2: trees with one multiple edge, or simply laced trees.
fn classify_small_k(p: &NilHeckeParams) -> ClassificationResult {
    let m = &p.matrix;
    let n = p.rank() as u128;
    let finite = |value: u128, formula: &str| ClassificationResult {
        verdict: Verdict::Finite,
        dim: DimInfo::Exact { value, formula: formula.to_string() },
        witness: None,
        notes: String::new(),
    };
    if !m.is_tree() {
        return ClassificationResult::infinite("Coxeter graph is not a tree");
    }
    let multiple: Vec<(usize, usize, Option<u32>)> =
        m.pairs().filter(|&(i, j, x)| m.is_edge(i, j) && x != Some(3)).collect();
    match multiple.as_slice() {
        [] => {
            let big: Vec<u32> = p.d.iter().copied().filter(|&x| x >= 3).collect();
            match big.as_slice() {
                [] => finite(1 + n * n, "1 + |I|^2 (d_i0 - 1)"),
                [d] => finite(1 + n * n * (*d as u128 - 1), "1 + |I|^2 (d_i0 - 1)"),
                _ => ClassificationResult::infinite("more than one node has d_i >= 3"),
            }
        }
        [(i0, j0, Some(mm))] if *mm >= 4 && p.all_d_two() => {
            let mm = *mm as u128;
            if mm % 2 == 1 {
                return finite((mm - 1) * n * n / 2 + 1, "(m-1)|I|^2/2 + 1");
            }
            // Sizes of the two trees left after deleting the edge i0–j0.
            let a = side_size(m, *i0, *j0) as u128;
            let b = n - a;
            finite(mm * n * n / 2 + 1 - 2 * a * b, "m|I|^2/2 + 1 - 2ab")
        }
        _ => ClassificationResult::infinite("no finite case of the k <= 2 classification applies"),
    }
}

/// Number of nodes reachable from `start` without crossing the edge to `cut`.
fn side_size(m: &CoxeterMatrix, start: usize, cut: usize) -> usize {
    let mut seen = vec![false; m.rank() + 1];
    seen[start] = true;
    seen[cut] = true;
    let mut stack = vec![start];
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for w in m.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    count
}

/// Decides whether `nH(W, d, J0)` is finite-dimensional.
pub fn classify(params: &NilHeckeParams) -> Result<ClassificationResult, Error> {
    let Some(k) = params.effective_cutoff() else {
        return Ok(ClassificationResult::unsupported("J0 is not of the form J_<k"));
    };
    let mut result = match k {
        Cutoff::Finite(k) if k <= 2 => {
            if !params.matrix.is_connected() {
                return Ok(ClassificationResult::unsupported(
                    "disconnected Coxeter graph with k <= 2 is outside the classification",
                ));
            }
            classify_small_k(params)
        }
        _ => {
            let mut value = 1u128;
            let mut formulas = Vec::new();
            let mut by_enumeration = false;
            let mut infinite = false;
            for comp in params.matrix.components() {
                let sub = params.matrix.submatrix(&comp);
                let d: Vec<u32> = comp.iter().map(|&i| params.d[i - 1]).collect();
                match component_dim(&sub, &d, k)? {
                    None => {
                        infinite = true;
                        break;
                    }
                    Some(DimInfo::Exact { value: v, formula }) => {
                        value =
                            value.checked_mul(v).ok_or_else(|| Error::Budget("dimension overflow".into()))?;
                        formulas.push(formula);
                    }
                    Some(_) => by_enumeration = true,
                }
            }
            if infinite {
                ClassificationResult::infinite("no finite case of the classification applies")
            } else {
                let dim = if by_enumeration {
                    DimInfo::ByEnumeration
                } else {
                    DimInfo::Exact { value, formula: formulas.join(" * ") }
                };
                ClassificationResult { verdict: Verdict::Finite, dim, witness: None, notes: String::new() }
            }
        }
    };
    if result.verdict == Verdict::Infinite {
        result.witness = crate::diagmod::witness_for(&compile(params));
    }
    Ok(result)
}

/// The exact dimension when the classifier has one.
pub fn closed_form_dim(params: &NilHeckeParams) -> Result<Option<(u128, String)>, Error> {
    Ok(match classify(params)?.dim {
        DimInfo::Exact { value, formula } => Some((value, formula)),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxsys::{standard_system, StandardFamily as F};

    fn params(f: F, d: Vec<u32>, k: Cutoff) -> NilHeckeParams {
        NilHeckeParams::with_cutoff(standard_system(f).unwrap(), d, k).unwrap()
    }

    fn two(f: F, k: Cutoff) -> NilHeckeParams {
        params(f, vec![2; f.rank()], k)
    }

    fn dim(p: &NilHeckeParams) -> Option<u128> {
        classify(p).unwrap().exact_dim()
    }

    #[test]
    fn catalan_values() {
        let v: Vec<u128> = (0..8).map(cat).collect();
        assert_eq!(v, vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn formula_values() {
        assert_eq!(xyx_dimension(3, 3), 27);
        assert_eq!(xyx_dimension(6, 2), 429);
        assert_eq!(xyx_dimension(1, 5), 5);
        assert_eq!(nc_a_dimension(3, 3), 42);
        for n in 1..=3 {
            for d in 2..=5 {
                assert_eq!(xyx_dimension(n, d), xyx_partial_sum_formula(n, d));
            }
        }
        assert_eq!((xyx_dimension(4, 3), xyx_partial_sum_formula(4, 3)), (83, 82));
    }

    /// Commutation classes of words in s_1..s_n avoiding s_i s_j s_i (|i-j| = 1),
    /// s_1^d and s_i^2 (i > 1), counted by brute force.
    fn xyx_oracle(n: u8, d: usize) -> usize {
        use std::collections::BTreeSet;
        let killed = |w: &[u8]| {
            w.windows(3).any(|x| x[0] == x[2] && x[0].abs_diff(x[1]) == 1)
                || w.chunk_by(|a, b| a == b).any(|run| run.len() >= if run[0] == 1 { d } else { 2 })
        };
        let class = |w: Vec<u8>| {
            let mut seen = BTreeSet::from([w.clone()]);
            let mut stack = vec![w];
            while let Some(x) = stack.pop() {
                for i in 0..x.len().saturating_sub(1) {
                    if x[i].abs_diff(x[i + 1]) >= 2 {
                        let mut y = x.clone();
                        y.swap(i, i + 1);
                        if seen.insert(y.clone()) {
                            stack.push(y);
                        }
                    }
                }
            }
            seen
        };
        let mut level = BTreeSet::from([Vec::new()]);
        let mut total = 1;
        while !level.is_empty() {
            let mut next = BTreeSet::new();
            for w in &level {
                for g in 1..=n {
                    let mut x: Vec<u8> = w.clone();
                    x.push(g);
                    let c = class(x);
                    if !c.iter().any(|m| killed(m)) {
                        next.insert(c.into_iter().next().expect("nonempty class"));
                    }
                }
            }
            total += next.len();
            level = next;
        }
        total
    }

    #[test]
    fn xyx_matches_brute_force() {
        for n in 1..=5u8 {
            for d in 2..=4u32 {
                assert_eq!(xyx_oracle(n, d as usize) as u128, xyx_dimension(n as usize, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn known_examples() {
        assert_eq!(dim(&two(F::H(4), Cutoff::Finite(4))), Some(1460));
        assert_eq!(dim(&params(F::A(3), vec![3, 2, 2], Cutoff::Finite(6))), Some(42));
        let e9 = classify(&two(F::E(9), Cutoff::Finite(4))).unwrap();
        assert_eq!(e9.verdict, Verdict::Infinite);
        let e9k3 = classify(&two(F::E(9), Cutoff::Finite(3))).unwrap();
        assert_eq!((e9k3.verdict, e9k3.dim), (Verdict::Finite, DimInfo::ByEnumeration));
        assert_eq!(dim(&two(F::I2(5), Cutoff::Finite(2))), Some(9));
        assert_eq!(dim(&two(F::B(2), Cutoff::Finite(2))), Some(7));
        assert_eq!(dim(&params(F::A(4), vec![2, 2, 2, 3], Cutoff::Finite(3))), Some(xyx_dimension(4, 3)));
        assert_eq!(dim(&params(F::A(3), vec![2, 3, 2], Cutoff::Finite(3))), None);
        assert_eq!(dim(&params(F::A(3), vec![3, 2, 3], Cutoff::Infinite)), None);
    }

    #[test]
    fn table_rows() {
        for k in [4, 5, 6] {
            assert_eq!(dim(&two(F::F(4), Cutoff::Finite(k))), Some(if k == 4 { 304 } else { 1152 }));
            assert_eq!(dim(&two(F::H(3), Cutoff::Finite(k))), Some(if k < 6 { 76 } else { 120 }));
            assert_eq!(dim(&two(F::B(5), Cutoff::Finite(k))), Some(if k == 4 { 1546 } else { 3840 }));
            assert_eq!(dim(&two(F::E(8), Cutoff::Finite(k))), Some(696_729_600));
        }
        for m in 3..=12 {
            for k in 3..=9 {
                let want = if m < k { 2 * m } else { 2 * m - 1 };
                let f = if m == 3 {
                    F::A(2)
                } else if m == 4 {
                    F::B(2)
                } else {
                    F::I2(m)
                };
                assert_eq!(dim(&two(f, Cutoff::Finite(k))), Some(want as u128), "m={m} k={k}");
            }
        }
        assert_eq!(dim(&two(F::A(4), Cutoff::Finite(3))), Some(42));
        assert_eq!(dim(&two(F::H(3), Cutoff::Finite(3))), Some(44));
        assert_eq!(dim(&two(F::F(4), Cutoff::Finite(3))), Some(106));
    }

    #[test]
    fn tree_formulas() {
        // B3-shaped tree: edge removal gives a = 1, b = 2.
        assert_eq!(dim(&two(F::B(3), Cutoff::Finite(2))), Some(4 * 9 / 2 + 1 - 4));
        assert_eq!(dim(&two(F::I2(6), Cutoff::Finite(2))), Some(6 * 4 / 2 + 1 - 2));
        assert_eq!(dim(&params(F::A(3), vec![2, 4, 2], Cutoff::Finite(2))), Some(1 + 9 * 3));
        assert_eq!(dim(&params(F::A(3), vec![3, 4, 2], Cutoff::Finite(1))), None);
        assert_eq!(dim(&params(F::B(3), vec![3, 2, 2], Cutoff::Finite(2))), None);
    }

    #[test]
    fn disconnected() {
        let m = CoxeterMatrix::from_edges(3, &[(1, 2, Some(3))]).unwrap();
        let p = NilHeckeParams::with_cutoff(m.clone(), vec![2, 2, 3], Cutoff::Finite(4)).unwrap();
        assert_eq!(dim(&p), Some(6 * 3));
        let p = NilHeckeParams::with_cutoff(m, vec![2, 2, 2], Cutoff::Finite(2)).unwrap();
        assert_eq!(classify(&p).unwrap().verdict, Verdict::Unsupported);
    }

    #[test]
    fn explicit_j0() {
        use crate::coxsys::Truncation;
        let m = standard_system(F::B(3)).unwrap();
        let j0 = [(1, 3), (2, 3)].into_iter().collect();
        let p = NilHeckeParams::new(m.clone(), vec![2; 3], Truncation::ExplicitJ0(j0)).unwrap();
        assert_eq!(dim(&p), Some(34));
        let j0 = [(1, 2), (1, 3)].into_iter().collect();
        let p = NilHeckeParams::new(m, vec![2; 3], Truncation::ExplicitJ0(j0)).unwrap();
        assert_eq!(classify(&p).unwrap().verdict, Verdict::Unsupported);
    }
}
