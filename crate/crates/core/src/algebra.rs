//! Multiplication tables on monomial bases and the structure computed from them.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::coxsys::{Gen, GeneralPresentation, NilHeckeParams, Word};
use crate::linalg;
use crate::wordengine::{Budget, Status, WordEngine};
use crate::Error;

const ZERO: u32 = u32::MAX;

/// Largest prime below 2^62.
pub const DEFAULT_PRIME: u64 = (1 << 62) - 57;

/// A monomial basis with left and right multiplication by generators.
#[derive(Clone, Debug)]
pub struct BasisTable {
    pub presentation: GeneralPresentation,
    words: Vec<Word>,
    index: HashMap<Word, u32>,
    level_starts: Vec<usize>,
    left: Vec<u32>,
    right: Vec<u32>,
    reversal: Vec<u32>,
}

impl BasisTable {
    /// Enumerates the basis and records all generator products.
    pub fn build(pres: &GeneralPresentation, budget: &Budget) -> Result<Self, Error> {
        let engine = WordEngine::new(pres);
        let (e, members) = engine.enumerate_indexed(budget);
        if let Status::BudgetExceeded { at_length, reason } = &e.status {
            return Err(Error::Budget(format!("enumeration stopped at length {at_length}: {reason}")));
        }
        let n = pres.generators;
        let words: Vec<Word> = e.words().cloned().collect();
        let mut level_starts = vec![0];
        for l in &e.levels {
            level_starts.push(level_starts.last().unwrap() + l.len());
        }
        let lookup = |w: &[Gen]| members.get(w).unwrap_or(ZERO);
        let mut left = vec![ZERO; n * words.len()];
        let mut right = vec![ZERO; n * words.len()];
        let mut reversal = Vec::with_capacity(words.len());
        let mut buf = Vec::new();
        for (x, w) in words.iter().enumerate() {
            for g in 1..=n as Gen {
                buf.clear();
                buf.extend_from_slice(w.as_slice());
                buf.push(g);
                right[x * n + g as usize - 1] = lookup(&buf);
                buf.clear();
                buf.push(g);
                buf.extend_from_slice(w.as_slice());
                left[x * n + g as usize - 1] = lookup(&buf);
            }
            reversal.push(lookup(w.reversed().as_slice()));
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        Ok(BasisTable { presentation: pres.clone(), words, index, level_starts, left, right, reversal })
    }

    pub fn from_params(params: &NilHeckeParams, budget: &Budget) -> Result<Self, Error> {
        Self::build(&crate::coxsys::compile(params), budget)
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn generators(&self) -> usize {
        self.presentation.generators
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, x: u32) -> &Word {
        &self.words[x as usize]
    }

    pub fn grade(&self, x: u32) -> usize {
        self.words[x as usize].len()
    }

    pub fn max_length(&self) -> usize {
        self.level_starts.len() - 2
    }

    /// Indices of basis monomials of length `l`.
    pub fn level(&self, l: usize) -> std::ops::Range<u32> {
        if l + 1 >= self.level_starts.len() {
            return 0..0;
        }
        self.level_starts[l] as u32..self.level_starts[l + 1] as u32
    }

    /// Index of a canonical word.
    pub fn index_of(&self, w: &Word) -> Option<u32> {
        self.index.get(w).copied()
    }

    pub fn left_mul(&self, g: Gen, x: u32) -> Option<u32> {
        let v = self.left[x as usize * self.generators() + g as usize - 1];
        (v != ZERO).then_some(v)
    }

    pub fn right_mul(&self, x: u32, g: Gen) -> Option<u32> {
        let v = self.right[x as usize * self.generators() + g as usize - 1];
        (v != ZERO).then_some(v)
    }

    /// The basis monomial equal to an arbitrary word, or `None` if it is zero.
    pub fn monomial(&self, w: &[Gen]) -> Option<u32> {
        w.iter().try_fold(0u32, |x, &g| self.right_mul(x, g))
    }

    pub fn mul_monomials(&self, a: u32, b: u32) -> Option<u32> {
        self.words[b as usize].as_slice().iter().try_fold(a, |x, &g| self.right_mul(x, g))
    }

    /// Basis monomial of the reversed word.
    pub fn reversed(&self, x: u32) -> Option<u32> {
        let v = self.reversal[x as usize];
        (v != ZERO).then_some(v)
    }
}

/// A rational linear combination of basis monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgElement {
    terms: BTreeMap<u32, BigRational>,
}

impl AlgElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(x: u32) -> Self {
        Self::from_terms([(x, BigRational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, BigRational)>) -> Self {
        let mut e = Self::zero();
        for (x, c) in terms {
            e.add_term(x, c);
        }
        e
    }

    pub fn add_term(&mut self, x: u32, c: BigRational) {
        let v = self.terms.entry(x).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.terms.iter().map(|(&x, c)| (x, c))
    }

    pub fn support(&self) -> Vec<u32> {
        self.terms.keys().copied().collect()
    }
}

pub fn mult(table: &BasisTable, a: &AlgElement, b: &AlgElement) -> AlgElement {
    let mut out = AlgElement::zero();
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            if let Some(z) = table.mul_monomials(x, y) {
                out.add_term(z, cx * cy);
            }
        }
    }
    out
}

/// `s_g · a`.
pub fn left_gen(table: &BasisTable, g: Gen, a: &AlgElement) -> AlgElement {
    AlgElement::from_terms(a.terms().filter_map(|(x, c)| table.left_mul(g, x).map(|y| (y, c.clone()))))
}

/// `a · s_g`.
pub fn right_gen(table: &BasisTable, a: &AlgElement, g: Gen) -> AlgElement {
    AlgElement::from_terms(a.terms().filter_map(|(x, c)| table.right_mul(x, g).map(|y| (y, c.clone()))))
}

/// Nilpotency index of the augmentation ideal and the evidence for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nilpotency {
    pub index: usize,
    /// A nonzero product of `index - 1` generators.
    pub witness: Word,
    /// Every top-length monomial times every generator, on either side, vanishes.
    pub top_products_zero: bool,
}

/// `N` with `𝔪^N = 0 ≠ 𝔪^{N-1}`: one more than the longest basis word.
///
/// The algebra is graded by word length and every monomial of length `l` is
/// a product of `l` generators, so `𝔪^l` is spanned by monomials of length
/// at least `l`.
pub fn nilpotency(table: &BasisTable) -> Nilpotency {
    let top = table.max_length();
    let witness = table.word(table.level(top).start).clone();
    let n = table.generators() as Gen;
    let top_products_zero = table
        .level(top)
        .all(|x| (1..=n).all(|g| table.left_mul(g, x).is_none() && table.right_mul(x, g).is_none()));
    Nilpotency { index: top + 1, witness, top_products_zero }
}

pub fn nilpotency_index(table: &BasisTable) -> usize {
    nilpotency(table).index
}

/// Dimensions of the primitive subspaces and the primitive monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityReport {
    pub left_dim: usize,
    pub right_dim: usize,
    pub two_sided_dim: usize,
    pub left_monomials: Vec<u32>,
    pub right_monomials: Vec<u32>,
    pub primitive_monomials: Vec<u32>,
    pub left_kernel: Vec<AlgElement>,
    pub right_kernel: Vec<AlgElement>,
    pub two_sided_kernel: Vec<AlgElement>,
}

impl PrimitivityReport {
    /// Whether each kernel is spanned by the monomials it contains.
    pub fn monomially_spanned(&self) -> bool {
        self.left_dim == self.left_monomials.len()
            && self.right_dim == self.right_monomials.len()
            && self.two_sided_dim == self.primitive_monomials.len()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Kernel of `x ↦ (s_g x)_g` and/or `x ↦ (x s_g)_g`, grade by grade.
fn graded_kernel(table: &BasisTable, sides: &[Side]) -> Vec<AlgElement> {
    let n = table.generators() as Gen;
    let mut out = Vec::new();
    for l in 0..=table.max_length() {
        let cols = table.level(l);
        let rows_level = table.level(l + 1);
        let width = cols.len();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for &side in sides {
            for g in 1..=n {
                let mut block = vec![vec![BigRational::zero(); width]; rows_level.len()];
                for (c, x) in cols.clone().enumerate() {
                    let y = match side {
                        Side::Left => table.left_mul(g, x),
                        Side::Right => table.right_mul(x, g),
                    };
                    if let Some(y) = y {
                        block[(y - rows_level.start) as usize][c] += BigRational::one();
                    }
                }
                rows.extend(block.into_iter().filter(|r| r.iter().any(|v| !v.is_zero())));
            }
        }
        for v in linalg::kernel(&rows, width) {
            out.push(AlgElement::from_terms(
                v.into_iter().enumerate().map(|(c, q)| (cols.start + c as u32, q)),
            ));
        }
    }
    out
}

pub fn primitive_spaces(table: &BasisTable) -> PrimitivityReport {
    let n = table.generators() as Gen;
    let all: Vec<u32> = (0..table.dim() as u32).collect();
    let left_monomials: Vec<u32> =
        all.iter().copied().filter(|&x| (1..=n).all(|g| table.left_mul(g, x).is_none())).collect();
    let right_monomials: Vec<u32> =
        all.iter().copied().filter(|&x| (1..=n).all(|g| table.right_mul(x, g).is_none())).collect();
    let primitive_monomials =
        left_monomials.iter().copied().filter(|x| right_monomials.binary_search(x).is_ok()).collect();
    let left_kernel = graded_kernel(table, &[Side::Left]);
    let right_kernel = graded_kernel(table, &[Side::Right]);
    let two_sided_kernel = graded_kernel(table, &[Side::Left, Side::Right]);
    PrimitivityReport {
        left_dim: left_kernel.len(),
        right_dim: right_kernel.len(),
        two_sided_dim: two_sided_kernel.len(),
        left_monomials,
        right_monomials,
        primitive_monomials,
        left_kernel,
        right_kernel,
        two_sided_kernel,
    }
}

/// Equal left and right primitive dimensions, with word reversal carrying
/// left-primitive monomials bijectively onto right-primitive ones.
pub fn leftright_symmetry_check(table: &BasisTable) -> bool {
    let r = primitive_spaces(table);
    if r.left_dim != r.right_dim || r.left_monomials.len() != r.right_monomials.len() {
        return false;
    }
    let mut image: Vec<u32> = match r.left_monomials.iter().map(|&x| table.reversed(x)).collect() {
        Some(v) => v,
        None => return false,
    };
    image.sort_unstable();
    image.dedup();
    image == r.right_monomials
}

/// Whether the finite-dimensional algebra is Frobenius, by the structural criterion.
pub fn frobenius_predicate(params: &NilHeckeParams) -> Result<bool, Error> {
    let c = crate::classifier::classify(params)?;
    if !matches!(c.verdict, crate::classifier::Verdict::Finite) {
        return Err(Error::Precondition("algebra is not known to be finite-dimensional".into()));
    }
    let j0 = params.j0();
    let all_braids_kept = params.matrix.pairs().all(|(i, j, m)| m.is_none() || j0.contains(&(i, j)));
    let two = params.all_d_two() && all_braids_kept;
    let rank_one = params.rank() == 1 && params.d[0] >= 3;
    Ok(two || rank_one)
}

/// Outcome of the randomized nondegeneracy test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrobeniusCheck {
    pub frobenius: bool,
    pub trials: usize,
    pub prime: u64,
    /// Probability that a Frobenius algebra is reported otherwise.
    pub error_bound: f64,
}

/// Searches for a functional `f` whose Gram matrix `f(u·v)` is invertible mod `prime`.
///
/// The determinant is a polynomial of degree `dim` in the coefficients of `f`,
/// so a Frobenius algebra is missed with probability at most `(dim/p)^trials`.
pub fn frobenius_randomized(table: &BasisTable, trials: usize, prime: u64, seed: u64) -> FrobeniusCheck {
    assert!(linalg::is_prime(prime), "modulus must be prime");
    let dim = table.dim();
    let products: Vec<Vec<u32>> = (0..dim as u32)
        .map(|u| (0..dim as u32).map(|v| table.mul_monomials(u, v).unwrap_or(ZERO)).collect())
        .collect();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut frobenius = false;
    let mut run = 0;
    for _ in 0..trials {
        run += 1;
        let f: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..prime)).collect();
        let gram: Vec<Vec<u64>> = products
            .iter()
            .map(|row| row.iter().map(|&z| if z == ZERO { 0 } else { f[z as usize] }).collect())
            .collect();
        if linalg::det_mod(gram, prime) != 0 {
            frobenius = true;
            break;
        }
    }
    let error_bound = if frobenius { 0.0 } else { (dim as f64 / prime as f64).powi(run as i32) };
    FrobeniusCheck { frobenius, trials: run, prime, error_bound }
}

pub fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
