//! Exact Coxeter group backend for `d = (2, …, 2)`.
//!
//! Group elements are stored as the functional `ρ* ∘ w` on the geometric
//! representation, where `ρ*` takes the value 1 on every simple root. Since
//! `ρ*` lies in the open fundamental chamber, `w ↦ ρ* ∘ w` is injective. The
//! coordinates `c_j = ρ*(w α_j)` live in one cyclotomic ring per system, so
//! equality and hashing are exact.

pub mod cyclotomic;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::BuildHasher;
use std::rc::Rc;

use aho_corasick::automaton::Automaton;
use aho_corasick::dfa::DFA;
use aho_corasick::{Anchored, MatchKind, StartKind};
use hashbrown::HashTable;
use rustc_hash::FxBuildHasher;

pub use cyclotomic::{Cyc, CyclotomicRing};

use crate::coxsys::{CoxeterMatrix, Gen, Word};
use crate::wordengine::{Budget, Status};

/// Square matrix over a cyclotomic ring, row-major.
pub type RingMatrix = Vec<Vec<Cyc>>;

#[derive(Clone, Debug)]
enum Coef {
    Zero,
    Int(i64),
    Ring(Vec<Vec<i64>>),
}

/// The geometric representation of a Coxeter system over `Z[x]/Φ_{2L}`.
#[derive(Clone, Debug)]
pub struct GroupModel {
    matrix: CoxeterMatrix,
    ring: CyclotomicRing,
    /// `coef[i * n + j]` is `2cos(π/m_ij)` (2 for m = ∞), used for j ≠ i.
    coef: Vec<Coef>,
}

impl GroupModel {
    pub fn new(matrix: &CoxeterMatrix) -> Self {
        let ring = CyclotomicRing::new(2 * matrix.finite_lcm());
        let n = matrix.rank();
        let mut coef = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let c = if i == j { ring.zero() } else { Self::cos_term(&ring, matrix.m(i, j)) };
                coef.push(if c.iter().all(|&t| t == 0) {
                    Coef::Zero
                } else if c[1..].iter().all(|&t| t == 0) {
                    Coef::Int(c[0])
                } else {
                    Coef::Ring(ring.mul_matrix(&c))
                });
            }
        }
        GroupModel { matrix: matrix.clone(), ring, coef }
    }

    fn cos_term(ring: &CyclotomicRing, m: Option<u32>) -> Cyc {
        match m {
            Some(m) => ring.two_cos_pi_over(m),
            None => ring.int(2),
        }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> &CyclotomicRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Length of a coordinate vector: `rank · deg` integers.
    pub fn stride(&self) -> usize {
        self.rank() * self.ring.deg()
    }

    /// `-2B(α_j, α_i)` as a ring element.
    pub fn bilinear_coef(&self, i: usize, j: usize) -> Cyc {
        if i == j {
            return self.ring.int(-2);
        }
        Self::cos_term(&self.ring, self.matrix.m(i, j))
    }

    pub fn identity_coords(&self) -> Vec<i64> {
        let d = self.ring.deg();
        let mut v = vec![0; self.stride()];
        for j in 0..self.rank() {
            v[j * d] = 1;
        }
        v
    }

    /// Coordinates of `w·s_i` from those of `w`; `None` on integer overflow.
    pub fn act_right(&self, v: &[i64], i: Gen, out: &mut Vec<i64>) -> Option<()> {
        let n = self.rank();
        let d = self.ring.deg();
        let i = i as usize - 1;
        out.clear();
        out.extend_from_slice(v);
        let ci = &v[i * d..(i + 1) * d];
        for j in 0..n {
            let dst = &mut out[j * d..(j + 1) * d];
            if j == i {
                for t in dst.iter_mut() {
                    *t = t.checked_neg()?;
                }
                continue;
            }
            match &self.coef[i * n + j] {
                Coef::Zero => {}
                Coef::Int(a) => {
                    for (t, &c) in dst.iter_mut().zip(ci) {
                        *t = t.checked_add(a.checked_mul(c)?)?;
                    }
                }
                Coef::Ring(mm) => {
                    for (r, t) in dst.iter_mut().enumerate() {
                        let mut acc = *t as i128;
                        for (s, &c) in ci.iter().enumerate() {
                            acc += mm[r][s] as i128 * c as i128;
                        }
                        *t = i64::try_from(acc).ok()?;
                    }
                }
            }
        }
        Some(())
    }

    /// Generator matrices `σ_i` acting on the simple-root basis (column j is σ_i(α_j)).
    pub fn generator_matrices(&self) -> Vec<RingMatrix> {
        let n = self.rank();
        (1..=n)
            .map(|i| {
                let mut m = identity(&self.ring, n);
                for j in 1..=n {
                    if j == i {
                        m[i - 1][j - 1] = self.ring.int(-1);
                    } else {
                        m[i - 1][j - 1] = self.bilinear_coef(i, j);
                    }
                }
                m
            })
            .collect()
    }
}

pub fn identity(ring: &CyclotomicRing, n: usize) -> RingMatrix {
    (0..n).map(|r| (0..n).map(|c| ring.int((r == c) as i64)).collect()).collect()
}

pub fn mat_mul(ring: &CyclotomicRing, a: &RingMatrix, b: &RingMatrix) -> RingMatrix {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&a[r][k], &b[k][c]))))
                .collect()
        })
        .collect()
}

pub fn mat_pow(ring: &CyclotomicRing, a: &RingMatrix, e: u32) -> RingMatrix {
    (0..e).fold(identity(ring, a.len()), |acc, _| mat_mul(ring, &acc, a))
}

/// Generator matrices of the geometric representation, with the defining
/// relations `σ_i² = 1` and `(σ_i σ_j)^m = 1` checked exactly.
pub fn reflection_rep(matrix: &CoxeterMatrix) -> (CyclotomicRing, Vec<RingMatrix>) {
    let model = GroupModel::new(matrix);
    let gens = model.generator_matrices();
    let ring = model.ring.clone();
    let id = identity(&ring, matrix.rank());
    for (i, s) in gens.iter().enumerate() {
        assert_eq!(mat_mul(&ring, s, s), id, "σ_{} is not an involution", i + 1);
    }
    for (i, j, m) in matrix.pairs() {
        if let Some(m) = m {
            let p = mat_mul(&ring, &gens[i - 1], &gens[j - 1]);
            assert_eq!(mat_pow(&ring, &p, m), id, "braid relation fails for ({i}, {j})");
        }
    }
    (ring, gens)
}

const NONE: u32 = u32::MAX;

/// An element of a [`GroupTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub id: u32,
    pub length: u32,
}

/// All elements of a Coxeter group up to a length or size budget, in BFS order.
pub struct GroupTable {
    model: GroupModel,
    coords: Vec<i64>,
    lengths: Vec<u32>,
    right: Vec<u32>,
    parent: Vec<(u32, Gen)>,
    level_starts: Vec<usize>,
    status: Status,
    /// First level whose upward neighbours are unknown.
    explored_levels: usize,
}

impl GroupTable {
    pub fn build(matrix: &CoxeterMatrix, budget: &Budget) -> Self {
        let model = GroupModel::new(matrix);
        let n = model.rank();
        let stride = model.stride();
        let hasher = FxBuildHasher;
        let mut table: HashTable<u32> = HashTable::new();
        let mut t = GroupTable {
            coords: model.identity_coords(),
            model,
            lengths: vec![0],
            right: vec![NONE; n],
            parent: vec![(NONE, 0)],
            level_starts: vec![0, 1],
            status: Status::Complete,
            explored_levels: 0,
        };
        table.insert_unique(hasher.hash_one(&t.coords[..stride]), 0, |&x| {
            hasher.hash_one(&t.coords[x as usize * stride..(x as usize + 1) * stride])
        });
        let mut buf = Vec::with_capacity(stride);
        let mut level = 0usize;
        loop {
            let (a, b) = (t.level_starts[level], t.level_starts[level + 1]);
            if a == b {
                break;
            }
            if level >= budget.max_word_length {
                t.status = Status::BudgetExceeded {
                    at_length: level,
                    reason: format!("elements of length {level} exist"),
                };
                t.explored_levels = level;
                return t;
            }
            for w in a..b {
                for i in 0..n {
                    if t.right[w * n + i] != NONE {
                        continue;
                    }
                    let src = t.coords[w * stride..(w + 1) * stride].to_vec();
                    if t.model.act_right(&src, i as Gen + 1, &mut buf).is_none() {
                        t.status = Status::BudgetExceeded {
                            at_length: level + 1,
                            reason: "coefficient overflow".into(),
                        };
                        t.explored_levels = level;
                        return t;
                    }
                    let h = hasher.hash_one(&buf[..]);
                    let coords = &t.coords;
                    let found = table
                        .find(h, |&x| coords[x as usize * stride..(x as usize + 1) * stride] == buf[..])
                        .copied();
                    let u = match found {
                        Some(u) => u as usize,
                        None => {
                            let u = t.lengths.len();
                            if u >= budget.max_class_count {
                                t.status = Status::BudgetExceeded {
                                    at_length: level + 1,
                                    reason: format!("more than {} elements", budget.max_class_count),
                                };
                                t.explored_levels = level;
                                return t;
                            }
                            t.coords.extend_from_slice(&buf);
                            t.lengths.push(level as u32 + 1);
                            t.right.extend(std::iter::repeat_n(NONE, n));
                            t.parent.push((w as u32, i as Gen + 1));
                            let coords = &t.coords;
                            table.insert_unique(h, u as u32, |&x| {
                                hasher.hash_one(&coords[x as usize * stride..(x as usize + 1) * stride])
                            });
                            u
                        }
                    };
                    t.right[w * n + i] = u as u32;
                    t.right[u * n + i] = w as u32;
                }
            }
            t.level_starts.push(t.lengths.len());
            level += 1;
        }
        t.explored_levels = level + 1;
        t
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn rank(&self) -> usize {
        self.model.rank()
    }

    pub fn status(&self) -> &Status {
        &self.status
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.status, Status::Complete)
    }

    /// Number of elements found.
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// Group order when the table is complete.
    pub fn order(&self) -> Option<usize> {
        self.is_complete().then(|| self.len())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { id: 0, length: 0 }
    }

    pub fn element(&self, id: u32) -> GroupElement {
        GroupElement { id, length: self.lengths[id as usize] }
    }

    pub fn coords(&self, id: u32) -> &[i64] {
        let s = self.model.stride();
        &self.coords[id as usize * s..(id as usize + 1) * s]
    }

    pub fn level(&self, l: usize) -> std::ops::Range<u32> {
        if l + 1 >= self.level_starts.len() {
            return 0..0;
        }
        self.level_starts[l] as u32..self.level_starts[l + 1] as u32
    }

    /// Whether all neighbours of elements of length `l` are known.
    pub fn level_explored(&self, l: usize) -> bool {
        l < self.explored_levels
    }

    /// `w·s_i`, if recorded.
    pub fn right_mul(&self, id: u32, i: Gen) -> Option<u32> {
        let r = self.right[id as usize * self.rank() + i as usize - 1];
        (r != NONE).then_some(r)
    }

    pub fn is_descent(&self, id: u32, i: Gen) -> bool {
        self.right_mul(id, i).is_some_and(|u| self.lengths[u as usize] < self.lengths[id as usize])
    }

    /// Right descent set as a bit mask, bit `i - 1` for generator `i`.
    pub fn descents(&self, id: u32) -> u64 {
        (1..=self.rank() as Gen).filter(|&i| self.is_descent(id, i)).fold(0, |m, i| m | 1 << (i - 1))
    }

    /// One reduced word (the BFS spanning-tree path).
    pub fn reduced_word(&self, id: u32) -> Word {
        let mut w = Vec::with_capacity(self.lengths[id as usize] as usize);
        let mut x = id;
        while x != 0 {
            let (p, g) = self.parent[x as usize];
            w.push(g);
            x = p;
        }
        w.reverse();
        Word(w)
    }

    /// The element represented by a (not necessarily reduced) word.
    pub fn element_of(&self, word: &[Gen]) -> Option<u32> {
        word.iter().try_fold(0u32, |x, &g| self.right_mul(x, g))
    }

    /// The longest element, when the table is complete.
    pub fn longest(&self) -> Option<u32> {
        self.is_complete().then(|| self.len() as u32 - 1)
    }
}

/// Memoized reduced-word sets.
pub struct ReducedWords<'a> {
    table: &'a GroupTable,
    memo: HashMap<u32, Rc<Vec<Word>>>,
}

impl<'a> ReducedWords<'a> {
    pub fn new(table: &'a GroupTable) -> Self {
        ReducedWords { table, memo: HashMap::new() }
    }

    /// All reduced words of an element, sorted.
    pub fn get(&mut self, id: u32) -> Rc<Vec<Word>> {
        if let Some(r) = self.memo.get(&id) {
            return r.clone();
        }
        let t = self.table;
        let out = if id == 0 {
            vec![Word::empty()]
        } else {
            let mut out = Vec::new();
            for i in 1..=t.rank() as Gen {
                if t.is_descent(id, i) {
                    let prev = t.right_mul(id, i).expect("descent");
                    for w in self.get(prev).iter() {
                        let mut w = w.clone();
                        w.push(i);
                        out.push(w);
                    }
                }
            }
            out.sort();
            out
        };
        let out = Rc::new(out);
        self.memo.insert(id, out.clone());
        out
    }
}

pub fn all_reduced_words(table: &GroupTable, id: u32) -> Vec<Word> {
    ReducedWords::new(table).get(id).as_ref().clone()
}

/// Tests whether some reduced word of an element contains a pattern.
///
/// Reduced words are read right to left by walking descents, so the automaton
/// matches the reversed patterns.
pub struct PatternChecker {
    dfa: Option<DFA>,
}

impl PatternChecker {
    pub fn new(forbidden: &[Word]) -> Self {
        let pats: Vec<Vec<u8>> = forbidden.iter().filter(|w| !w.is_empty()).map(|w| w.reversed().0).collect();
        if pats.is_empty() {
            return PatternChecker { dfa: None };
        }
        let dfa = DFA::builder()
            .match_kind(MatchKind::Standard)
            .start_kind(StartKind::Unanchored)
            .build(&pats)
            .expect("pattern automaton");
        PatternChecker { dfa: Some(dfa) }
    }

    pub fn avoids(&self, table: &GroupTable, id: u32) -> bool {
        let Some(dfa) = &self.dfa else { return true };
        let start = dfa.start_state(Anchored::No).expect("unanchored start");
        let mut seen = HashSet::new();
        let mut stack = vec![(id, start)];
        seen.insert((id, start.as_usize()));
        while let Some((w, st)) = stack.pop() {
            for i in 1..=table.rank() as Gen {
                if !table.is_descent(w, i) {
                    continue;
                }
                let nst = dfa.next_state(Anchored::No, st, i);
                if dfa.is_match(nst) {
                    return false;
                }
                let v = table.right_mul(w, i).expect("descent");
                if seen.insert((v, nst.as_usize())) {
                    stack.push((v, nst));
                }
            }
        }
        true
    }
}

pub fn avoids_patterns(table: &GroupTable, id: u32, forbidden: &[Word]) -> bool {
    PatternChecker::new(forbidden).avoids(table, id)
}

/// A right weak order ideal with one reduced word and the descent set per element.
#[derive(Clone, Debug)]
pub struct IdealEnumeration {
    pub elements: Vec<GroupElement>,
    pub words: Vec<Word>,
    pub descents: Vec<u64>,
    pub status: Status,
}

impl IdealEnumeration {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.status, Status::Complete)
    }

    pub fn count(&self) -> Option<usize> {
        self.is_complete().then(|| self.len())
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for e in &self.elements {
            let l = e.length as usize;
            if v.len() <= l {
                v.resize(l + 1, 0);
            }
            v[l] += 1;
        }
        v
    }
}

/// Breadth-first search of the ideal cut out by a downward-closed predicate.
pub fn weak_ideal_enumerate(
    table: &GroupTable,
    mut predicate: impl FnMut(&GroupTable, u32) -> bool,
) -> IdealEnumeration {
    let mut out =
        IdealEnumeration { elements: vec![], words: vec![], descents: vec![], status: Status::Complete };
    if !predicate(table, 0) {
        return out;
    }
    let mut frontier = vec![0u32];
    let mut length = 0usize;
    while !frontier.is_empty() {
        for &x in &frontier {
            out.elements.push(table.element(x));
            out.words.push(table.reduced_word(x));
            out.descents.push(table.descents(x));
        }
        if !table.level_explored(length) {
            out.status = table.status.clone();
            return out;
        }
        let mut next = BTreeSet::new();
        for &x in &frontier {
            for i in 1..=table.rank() as Gen {
                if let Some(u) = table.right_mul(x, i) {
                    if table.lengths[u as usize] as usize == length + 1 {
                        next.insert(u);
                    }
                }
            }
        }
        frontier = next.into_iter().filter(|&u| predicate(table, u)).collect();
        length += 1;
    }
    out
}

/// Both alternating words of every pair with finite `m` outside `J0`.
pub fn killed_patterns(matrix: &CoxeterMatrix, j0: &BTreeSet<(usize, usize)>) -> Vec<Word> {
    let mut out = Vec::new();
    for (i, j, m) in matrix.pairs() {
        if let Some(m) = m {
            if !j0.contains(&(i, j)) {
                out.push(Word::alternating(i as Gen, j as Gen, m as usize));
                out.push(Word::alternating(j as Gen, i as Gen, m as usize));
            }
        }
    }
    out
}

/// `W(J0)`: elements with no reduced word containing a killed braid word.
///
/// An element avoids the patterns iff all its descent predecessors do and its
/// right descent set contains no killed pair: a reduced word ending in a
/// killed word `alt(i, j, m)` is exactly an element with both `i` and `j` as
/// right descents.
pub fn wj0_basis(matrix: &CoxeterMatrix, j0: &BTreeSet<(usize, usize)>, budget: &Budget) -> IdealEnumeration {
    let table = GroupTable::build(matrix, budget);
    wj0_basis_in(&table, j0)
}

pub fn wj0_basis_in(table: &GroupTable, j0: &BTreeSet<(usize, usize)>) -> IdealEnumeration {
    let matrix = table.model().matrix().clone();
    let killed_masks: Vec<u64> = matrix
        .pairs()
        .filter(|&(i, j, m)| m.is_some() && !j0.contains(&(i, j)))
        .map(|(i, j, _)| (1u64 << (i - 1)) | (1u64 << (j - 1)))
        .collect();
    let mut kept = vec![false; table.len()];
    weak_ideal_enumerate(table, |t, x| {
        let ds = t.descents(x);
        let ok = killed_masks.iter().all(|&k| ds & k != k)
            && (1..=t.rank() as Gen)
                .filter(|&i| ds >> (i - 1) & 1 == 1)
                .all(|i| kept[t.right_mul(x, i).expect("descent") as usize]);
        kept[x as usize] = ok;
        ok
    })
}

/// Pairs with `m_ij < 3`.
pub fn commuting_pairs(matrix: &CoxeterMatrix) -> BTreeSet<(usize, usize)> {
    matrix.pairs().filter(|&(_, _, m)| m.is_some_and(|m| m < 3)).map(|(i, j, _)| (i, j)).collect()
}

/// Number of fully commutative elements.
pub fn fc_count(matrix: &CoxeterMatrix, budget: &Budget) -> Option<usize> {
    wj0_basis(matrix, &commuting_pairs(matrix), budget).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxsys::{standard_system, StandardFamily as F};

    fn sys(f: F) -> CoxeterMatrix {
        standard_system(f).unwrap()
    }

    fn all_pairs(m: &CoxeterMatrix) -> BTreeSet<(usize, usize)> {
        m.pairs().map(|(i, j, _)| (i, j)).collect()
    }

    #[test]
    fn reflection_rep_relations() {
        for f in [F::A(3), F::B(3), F::D(4), F::F(4), F::H(3), F::H(4), F::I2(7), F::I2(12), F::E(6)] {
            let (ring, gens) = reflection_rep(&sys(f));
            for (i, s) in gens.iter().enumerate() {
                assert_eq!(s[i][i], ring.int(-1));
            }
        }
        let (ring, gens) = reflection_rep(&sys(F::A(2)));
        // σ_1(α_2) = α_2 + α_1
        assert_eq!(gens[0][0][1], ring.int(1));
        assert_eq!(gens[0][1][1], ring.int(1));
        let inf = CoxeterMatrix::from_edges(3, &[(1, 2, None), (2, 3, Some(5))]).unwrap();
        reflection_rep(&inf);
    }

    #[test]
    fn group_orders() {
        let b = Budget::default();
        for f in [F::A(1), F::A(3), F::A(4), F::B(3), F::B(4), F::D(4), F::D(5), F::F(4), F::H(3), F::H(4)] {
            let t = GroupTable::build(&sys(f), &b);
            assert_eq!(t.order().map(|o| o as u128), f.group_order(), "{f}");
        }
        for m in [3, 4, 5, 7, 8, 12] {
            assert_eq!(GroupTable::build(&sys(F::I2(m)), &b).order(), Some(2 * m as usize));
        }
        assert_eq!(GroupTable::build(&sys(F::E(6)), &b).order(), Some(51840));
    }

    #[test]
    fn infinite_group_budget() {
        let m = CoxeterMatrix::from_edges(2, &[(1, 2, None)]).unwrap();
        let t = GroupTable::build(&m, &Budget::with_length(20));
        assert!(!t.is_complete());
        assert_eq!(t.level(20).len(), 2);
        let affine =
            CoxeterMatrix::from_edges(3, &[(1, 2, Some(3)), (2, 3, Some(3)), (1, 3, Some(3))]).unwrap();
        let b = Budget { max_class_count: 5000, ..Budget::default() };
        assert!(!GroupTable::build(&affine, &b).is_complete());
    }

    #[test]
    fn lengths_and_words() {
        let t = GroupTable::build(&sys(F::B(3)), &Budget::default());
        for id in 0..t.len() as u32 {
            let w = t.reduced_word(id);
            assert_eq!(w.len() as u32, t.element(id).length);
            assert_eq!(t.element_of(w.as_slice()), Some(id));
        }
        let w0 = t.longest().unwrap();
        assert_eq!(t.element(w0).length, 9);
        assert_eq!(t.descents(w0), 0b111);
    }

    #[test]
    fn reduced_word_examples() {
        let t = GroupTable::build(&sys(F::A(2)), &Budget::default());
        assert_eq!(all_reduced_words(&t, 0), vec![Word::empty()]);
        let w0 = t.longest().unwrap();
        assert_eq!(all_reduced_words(&t, w0), vec![Word(vec![1, 2, 1]), Word(vec![2, 1, 2])]);
        let t = GroupTable::build(&sys(F::I2(4)), &Budget::default());
        let w0 = t.longest().unwrap();
        assert_eq!(all_reduced_words(&t, w0), vec![Word(vec![1, 2, 1, 2]), Word(vec![2, 1, 2, 1])]);
    }

    /// Naive reduced words: all words of the right length evaluating to the element.
    fn naive_reduced_words(t: &GroupTable, id: u32) -> Vec<Word> {
        let l = t.element(id).length as usize;
        let n = t.rank() as Gen;
        let mut words = vec![Word::empty()];
        for _ in 0..l {
            words = words
                .iter()
                .flat_map(|w| (1..=n).map(move |g| w.concat(&Word(vec![g]))))
                .filter(|w| {
                    t.element_of(w.as_slice()).is_some_and(|x| t.element(x).length as usize == w.len())
                })
                .collect();
        }
        let mut out: Vec<Word> =
            words.into_iter().filter(|w| t.element_of(w.as_slice()) == Some(id)).collect();
        out.sort();
        out
    }

    #[test]
    fn memo_agrees_with_naive() {
        let t = GroupTable::build(&sys(F::B(3)), &Budget::default());
        let mut rw = ReducedWords::new(&t);
        for id in 0..t.len() as u32 {
            if t.element(id).length <= 8 {
                assert_eq!(*rw.get(id), naive_reduced_words(&t, id));
            }
        }
    }

    #[test]
    fn pattern_examples() {
        let t = GroupTable::build(&sys(F::I2(4)), &Budget::default());
        let pats = [Word(vec![1, 2, 1, 2]), Word(vec![2, 1, 2, 1])];
        assert!(!avoids_patterns(&t, t.longest().unwrap(), &pats));
        let t = GroupTable::build(&sys(F::A(2)), &Budget::default());
        let x = t.element_of(&[1, 2]).unwrap();
        assert!(avoids_patterns(&t, x, &[Word(vec![1, 2, 1]), Word(vec![2, 1, 2])]));
        let f4 = sys(F::F(4));
        let t = GroupTable::build(&f4, &Budget::default());
        let x = t.element_of(&[2, 3, 2, 3]).unwrap();
        assert!(!avoids_patterns(&t, x, &[Word(vec![2, 3, 2, 3]), Word(vec![3, 2, 3, 2])]));
    }

    #[test]
    fn checker_agrees_with_reduced_words() {
        let m = sys(F::B(3));
        let t = GroupTable::build(&m, &Budget::default());
        let pats = vec![Word(vec![1, 2, 1]), Word(vec![2, 3]), Word(vec![3, 2, 3, 2])];
        let c = PatternChecker::new(&pats);
        for id in 0..t.len() as u32 {
            let naive =
                all_reduced_words(&t, id).iter().all(|w| pats.iter().all(|p| !w.contains(p.as_slice())));
            assert_eq!(c.avoids(&t, id), naive);
        }
    }

    #[test]
    fn ideal_examples() {
        let b = Budget::default();
        let a2 = sys(F::A(2));
        let t = GroupTable::build(&a2, &b);
        assert_eq!(weak_ideal_enumerate(&t, |_, _| true).count(), Some(6));
        assert_eq!(wj0_basis(&sys(F::A(3)), &all_pairs(&sys(F::A(3))), &b).count(), Some(24));
        assert_eq!(fc_count(&sys(F::A(4)), &b), Some(42));
        assert_eq!(fc_count(&a2, &b), Some(5));
        assert_eq!(fc_count(&sys(F::I2(7)), &b), Some(13));
        assert_eq!(fc_count(&sys(F::B(2)), &b), Some(7));
        for m in 3..10 {
            assert_eq!(fc_count(&sys(F::I2(m)), &b), Some(2 * m as usize - 1));
        }
    }

    fn cutoff_j0(m: &CoxeterMatrix, k: u32) -> BTreeSet<(usize, usize)> {
        m.pairs().filter(|&(_, _, x)| x.is_some_and(|x| x < k)).map(|(i, j, _)| (i, j)).collect()
    }

    #[test]
    fn closed_form_table_values() {
        let b = Budget::default();
        let f4 = sys(F::F(4));
        let t = GroupTable::build(&f4, &b);
        let pats = killed_patterns(&f4, &cutoff_j0(&f4, 4));
        let c = PatternChecker::new(&pats);
        let slow = weak_ideal_enumerate(&t, |t, x| c.avoids(t, x));
        assert_eq!(slow.count(), Some(304));
        assert_eq!(wj0_basis_in(&t, &cutoff_j0(&f4, 4)).count(), Some(304));
        let h4 = sys(F::H(4));
        assert_eq!(wj0_basis(&h4, &cutoff_j0(&h4, 4), &b).count(), Some(1460));
        let h3 = sys(F::H(3));
        assert_eq!(wj0_basis(&h3, &cutoff_j0(&h3, 5), &b).count(), Some(76));
    }

    #[test]
    fn fast_predicate_matches_pattern_predicate() {
        let b = Budget::default();
        for f in [F::B(4), F::D(4), F::H(3), F::A(4)] {
            let m = sys(f);
            let t = GroupTable::build(&m, &b);
            for k in [3, 4, 5] {
                let j0 = cutoff_j0(&m, k);
                let c = PatternChecker::new(&killed_patterns(&m, &j0));
                let slow = weak_ideal_enumerate(&t, |t, x| c.avoids(t, x));
                let fast = wj0_basis_in(&t, &j0);
                assert_eq!(slow.elements, fast.elements, "{f} k={k}");
            }
        }
    }

    #[test]
    fn ideal_is_downward_closed() {
        let m = sys(F::F(4));
        let t = GroupTable::build(&m, &Budget::default());
        let ideal = wj0_basis_in(&t, &cutoff_j0(&m, 4));
        let ids: HashSet<u32> = ideal.elements.iter().map(|e| e.id).collect();
        for e in &ideal.elements {
            for i in 1..=4 {
                if t.is_descent(e.id, i) {
                    assert!(ids.contains(&t.right_mul(e.id, i).unwrap()));
                }
            }
        }
    }
}
