//! Braid-class closure and level-synchronous basis enumeration.
//!
//! A word is a basis monomial when no word reachable from it by kept
//! relations contains a killed word. Classes are represented by their
//! lexicographically least member.

use std::collections::BTreeMap;

use aho_corasick::{AhoCorasick, MatchKind};
use hashbrown::HashTable;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;
use std::hash::BuildHasher;

use crate::coxsys::{Gen, GeneralPresentation, Word};

/// Limits that stop enumeration of infinite-dimensional algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_word_length: usize,
    pub max_class_size: usize,
    pub max_class_count: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_word_length: 256, max_class_size: 10_000_000, max_class_count: 10_000_000 }
    }
}

impl Budget {
    pub fn with_length(max_word_length: usize) -> Self {
        Budget { max_word_length, ..Budget::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidClass {
    pub canonical: Word,
    pub size: usize,
    pub members: Option<Vec<Word>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Class(BraidClass),
    Rejected,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Complete,
    BudgetExceeded { at_length: usize, reason: String },
}

/// One basis class: canonical word and number of member words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub canonical: Word,
    pub size: usize,
}

/// Classes by length. `levels[l]` is sorted by canonical word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisEnumeration {
    pub levels: Vec<Vec<ClassInfo>>,
    pub status: Status,
}

impl BasisEnumeration {
    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    /// Number of classes found so far.
    pub fn total(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.is_complete().then(|| self.total())
    }

    /// Length of the longest basis word.
    pub fn max_length(&self) -> usize {
        self.levels.iter().rposition(|l| !l.is_empty()).unwrap_or(0)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// All canonical words in (length, lexicographic) order.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.levels.iter().flatten().map(|c| &c.canonical)
    }
}

const REJECTED: u32 = u32::MAX;

/// Words of one length in a flat arena, hashed by content.
struct Store {
    len: usize,
    data: Vec<Gen>,
    table: HashTable<u32>,
    /// Closure id while enumerating, class index afterwards; `REJECTED` for zero classes.
    owner: Vec<u32>,
}

impl Store {
    fn new(len: usize) -> Self {
        Store { len, data: Vec::new(), table: HashTable::new(), owner: Vec::new() }
    }

    fn count(&self) -> usize {
        self.owner.len()
    }

    fn word(&self, i: usize) -> &[Gen] {
        &self.data[i * self.len..(i + 1) * self.len]
    }

    fn find(&self, w: &[Gen]) -> Option<usize> {
        let h = FxBuildHasher.hash_one(w);
        self.table.find(h, |&i| self.word(i as usize) == w).map(|&i| i as usize)
    }

    fn insert(&mut self, w: &[Gen], owner: u32) {
        let i = self.count() as u32;
        self.data.extend_from_slice(w);
        self.owner.push(owner);
        let h = FxBuildHasher.hash_one(w);
        let (data, len) = (&self.data, self.len);
        self.table.insert_unique(h, i, |&j| {
            FxBuildHasher.hash_one(&data[j as usize * len..(j as usize + 1) * len])
        });
    }
}

/// Every member word of every enumerated class, looked up by content.
/// Words of rejected classes met during enumeration map to `None`, as do
/// words never met (their classes are zero too).
pub struct MemberIndex {
    levels: Vec<Vec<Store>>,
}

impl MemberIndex {
    pub fn get(&self, w: &[Gen]) -> Option<u32> {
        if w.is_empty() {
            return Some(0);
        }
        for s in self.levels.get(w.len())? {
            if let Some(i) = s.find(w) {
                let o = s.owner[i];
                return (o != REJECTED).then_some(o);
            }
        }
        None
    }

    /// Number of stored member words of nonzero classes.
    pub fn member_count(&self) -> usize {
        1 + self
            .levels
            .iter()
            .flatten()
            .map(|s| s.owner.iter().filter(|&&o| o != REJECTED).count())
            .sum::<usize>()
    }
}

/// Killed words of a presentation, deduplicated, by length then lexicographically.
pub fn forbidden_substrings(pres: &GeneralPresentation) -> Vec<Word> {
    let mut v = pres.killed.clone();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v.dedup();
    v
}

/// Where the members of a frontier class live in the previous level's stores.
#[derive(Clone, Copy)]
struct Loc {
    part: usize,
    first: usize,
    size: usize,
}

enum Explored {
    Class,
    Rejected,
    TooLarge,
}

/// Accepted closure inside a chunk store.
struct Found {
    id: u32,
    first: usize,
    canonical: usize,
    size: usize,
}

/// Matchers built once per presentation.
pub struct WordEngine {
    generators: usize,
    forbidden: Vec<Word>,
    forbid: AhoCorasick,
    max_forbidden: usize,
    /// Relation sides as (pattern, replacement), bucketed by their first two letters.
    rules: Vec<(Vec<Gen>, Vec<Gen>)>,
    by_prefix: Vec<Vec<u32>>,
}

impl WordEngine {
    pub fn new(pres: &GeneralPresentation) -> Self {
        let forbidden = forbidden_substrings(pres);
        let forbid = AhoCorasick::builder()
            .match_kind(MatchKind::Standard)
            .build(forbidden.iter().map(|w| w.as_slice()))
            .expect("forbidden matcher");
        let max_forbidden = forbidden.iter().map(Word::len).max().unwrap_or(1);
        let n = pres.generators + 1;
        let mut rules = Vec::new();
        let mut by_prefix = vec![Vec::new(); n * n];
        for r in &pres.kept {
            for (a, b) in [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)] {
                assert!(a.len() >= 2 && a.len() == b.len(), "kept relations preserve length >= 2");
                by_prefix[a.0[0] as usize * n + a.0[1] as usize].push(rules.len() as u32);
                rules.push((a.0.clone(), b.0.clone()));
            }
        }
        WordEngine { generators: pres.generators, forbidden, forbid, max_forbidden, rules, by_prefix }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn forbidden(&self) -> &[Word] {
        &self.forbidden
    }

    pub fn has_forbidden(&self, w: &[Gen]) -> bool {
        self.forbid.is_match(w)
    }

    /// Forbidden occurrence overlapping `w[start..end]`.
    fn forbidden_near(&self, w: &[Gen], start: usize, end: usize) -> bool {
        let lo = start.saturating_sub(self.max_forbidden - 1);
        let hi = (end + self.max_forbidden - 1).min(w.len());
        self.forbid.is_match(&w[lo..hi])
    }

    // Only kept relations are applied. A killed relation can fire only on a
    // word that already contains one of its sides, which is forbidden, so for
    // classes that survive the two closures coincide.
    //
    // Explored words are appended to `store` under closure `id`. Meeting a
    // word owned by an earlier closure means meeting a rejected class.
    fn explore(&self, store: &mut Store, w: &[Gen], id: u32, max_size: usize) -> Explored {
        let first = store.count();
        store.insert(w, id);
        let verdict = 'bfs: {
            if self.forbid.is_match(w) {
                break 'bfs Explored::Rejected;
            }
            if self.rules.is_empty() {
                break 'bfs Explored::Class;
            }
            let n = self.generators + 1;
            let mut head = first;
            let mut x: Vec<Gen> = Vec::with_capacity(w.len());
            let mut y: Vec<Gen> = Vec::with_capacity(w.len());
            while head < store.count() {
                x.clear();
                x.extend_from_slice(store.word(head));
                head += 1;
                for s in 0..x.len().saturating_sub(1) {
                    for &r in &self.by_prefix[x[s] as usize * n + x[s + 1] as usize] {
                        let (pat, rep) = &self.rules[r as usize];
                        let e = s + pat.len();
                        if e > x.len() || x[s..e] != pat[..] {
                            continue;
                        }
                        y.clear();
                        y.extend_from_slice(&x);
                        y[s..e].copy_from_slice(rep);
                        if let Some(j) = store.find(&y) {
                            if store.owner[j] != id {
                                debug_assert_eq!(store.owner[j], REJECTED);
                                break 'bfs Explored::Rejected;
                            }
                            continue;
                        }
                        store.insert(&y, id);
                        if self.forbidden_near(&y, s, e) {
                            break 'bfs Explored::Rejected;
                        }
                        if store.count() - first > max_size {
                            break 'bfs Explored::TooLarge;
                        }
                    }
                }
            }
            Explored::Class
        };
        if !matches!(verdict, Explored::Class) {
            store.owner[first..].fill(REJECTED);
        }
        verdict
    }

    /// Closure of `w` under kept relations.
    pub fn class_closure(&self, w: &Word, budget: &Budget, keep_members: bool) -> Closure {
        let mut store = Store::new(w.len());
        match self.explore(&mut store, w.as_slice(), 0, budget.max_class_size) {
            Explored::Rejected => Closure::Rejected,
            Explored::TooLarge => Closure::BudgetExceeded,
            Explored::Class => {
                let size = store.count();
                let canonical = Word((0..size).map(|i| store.word(i)).min().expect("non-empty").to_vec());
                let members = keep_members.then(|| {
                    let mut v: Vec<Word> = (0..size).map(|i| Word(store.word(i).to_vec())).collect();
                    v.sort();
                    v
                });
                Closure::Class(BraidClass { canonical, size, members })
            }
        }
    }

    /// Canonical member of the class of `w`, or `None` when the monomial is zero.
    pub fn canonical(&self, w: &Word, budget: &Budget) -> Result<Option<Word>, crate::Error> {
        match self.class_closure(w, budget, false) {
            Closure::Class(c) => Ok(Some(c.canonical)),
            Closure::Rejected => Ok(None),
            Closure::BudgetExceeded => Err(crate::Error::Budget(format!("class of {w:?} too large"))),
        }
    }

    pub fn enumerate(&self, budget: &Budget) -> BasisEnumeration {
        self.run(budget, false).0
    }

    /// Enumeration plus an index from every member word to its class.
    pub fn enumerate_indexed(&self, budget: &Budget) -> (BasisEnumeration, MemberIndex) {
        let (e, idx) = self.run(budget, true);
        (e, idx.expect("requested"))
    }

    /// Is `u·g` forbidden at its end for some member `u` of the class at `loc`?
    /// A cheap certificate of rejection that avoids most closures of zero products.
    fn suffix_rejects(&self, prev: &[Store], loc: Option<Loc>, g: Gen, buf: &mut Vec<Gen>) -> bool {
        let Some(loc) = loc else { return false };
        let store = &prev[loc.part];
        let keep = (self.max_forbidden - 1).min(store.len);
        (loc.first..loc.first + loc.size).any(|i| {
            let u = store.word(i);
            buf.clear();
            buf.extend_from_slice(&u[u.len() - keep..]);
            buf.push(g);
            self.forbid.is_match(&buf[..])
        })
    }

    fn expand_chunk(
        &self,
        chunk: &[(ClassInfo, Option<Loc>)],
        prev: &[Store],
        budget: &Budget,
    ) -> Result<(Store, Vec<Found>), ()> {
        let len = chunk.first().map_or(0, |c| c.0.canonical.len()) + 1;
        let mut store = Store::new(len);
        let mut found = Vec::new();
        let mut buf: Vec<Gen> = Vec::with_capacity(len);
        let mut tail: Vec<Gen> = Vec::with_capacity(self.max_forbidden);
        let mut next_id = 0u32;
        for (c, loc) in chunk {
            for g in 1..=self.generators as Gen {
                buf.clear();
                buf.extend_from_slice(c.canonical.as_slice());
                buf.push(g);
                if self.forbidden_near(&buf, len - 1, len)
                    || store.find(&buf).is_some()
                    || self.suffix_rejects(prev, *loc, g, &mut tail)
                {
                    continue;
                }
                let first = store.count();
                match self.explore(&mut store, &buf, next_id, budget.max_class_size) {
                    Explored::TooLarge => return Err(()),
                    Explored::Rejected => {}
                    Explored::Class => {
                        let canonical =
                            (first..store.count()).min_by_key(|&i| store.word(i)).expect("non-empty");
                        found.push(Found { id: next_id, first, canonical, size: store.count() - first });
                    }
                }
                next_id += 1;
            }
        }
        Ok((store, found))
    }

    fn run(&self, budget: &Budget, index: bool) -> (BasisEnumeration, Option<MemberIndex>) {
        let mut levels: Vec<Vec<ClassInfo>> = vec![vec![ClassInfo { canonical: Word::empty(), size: 1 }]];
        let mut locs: Vec<Option<Loc>> = vec![None];
        let mut stores: Vec<Vec<Store>> = vec![Vec::new()];
        let mut total = 1usize;
        let threads = rayon::current_num_threads().max(1);
        let finish = |levels: Vec<Vec<ClassInfo>>, stores: Vec<Vec<Store>>, status: Status| {
            (BasisEnumeration { levels, status }, index.then(|| MemberIndex { levels: stores }))
        };
        loop {
            let len = levels.len() - 1;
            if levels[len].is_empty() {
                levels.pop();
                return finish(levels, stores, Status::Complete);
            }
            let exceeded = |reason: String| Status::BudgetExceeded { at_length: len + 1, reason };
            if len >= budget.max_word_length {
                let r = format!("word length {} exceeds {}", len + 1, budget.max_word_length);
                return finish(levels, stores, exceeded(r));
            }
            let frontier: Vec<(ClassInfo, Option<Loc>)> =
                levels[len].iter().cloned().zip(locs.iter().copied()).collect();
            let prev = &stores[len];
            let chunk = frontier.len().div_ceil(threads * 4).max(256);
            let parts: Vec<_> = if threads > 1 && frontier.len() > chunk {
                frontier.par_chunks(chunk).map(|c| self.expand_chunk(c, prev, budget)).collect()
            } else {
                vec![self.expand_chunk(&frontier, prev, budget)]
            };
            let Ok(parts) = parts.into_iter().collect::<Result<Vec<_>, ()>>() else {
                let r = format!("class size exceeds {}", budget.max_class_size);
                return finish(levels, stores, exceeded(r));
            };
            // Merge by canonical word; the same class may appear in several chunks.
            let mut next: BTreeMap<&[Gen], Vec<(usize, &Found)>> = BTreeMap::new();
            for (p, (store, found)) in parts.iter().enumerate() {
                for f in found {
                    next.entry(store.word(f.canonical)).or_default().push((p, f));
                }
            }
            let base = total as u32;
            total += next.len();
            let level: Vec<ClassInfo> = next
                .iter()
                .map(|(c, owners)| ClassInfo { canonical: Word(c.to_vec()), size: owners[0].1.size })
                .collect();
            locs = next
                .values()
                .map(|owners| {
                    let (p, f) = owners[0];
                    Some(Loc { part: p, first: f.first, size: f.size })
                })
                .collect();
            let mut remap: Vec<Vec<u32>> = parts.iter().map(|(_, f)| vec![REJECTED; max_id(f)]).collect();
            for (t, owners) in next.values().enumerate() {
                for &(p, f) in owners {
                    remap[p][f.id as usize] = base + t as u32;
                }
            }
            drop(next);
            let mut level_stores = Vec::with_capacity(parts.len());
            for ((mut store, _), map) in parts.into_iter().zip(remap) {
                for o in store.owner.iter_mut() {
                    if *o != REJECTED {
                        *o = map[*o as usize];
                    }
                }
                level_stores.push(store);
            }
            levels.push(level);
            if !index {
                stores[len].clear();
            }
            stores.push(level_stores);
            if total > budget.max_class_count {
                let r = format!("class count exceeds {}", budget.max_class_count);
                return finish(levels, stores, exceeded(r));
            }
        }
    }
}

fn max_id(found: &[Found]) -> usize {
    found.iter().map(|f| f.id as usize + 1).max().unwrap_or(0)
}

pub fn enumerate_basis(pres: &GeneralPresentation, budget: &Budget) -> BasisEnumeration {
    WordEngine::new(pres).enumerate(budget)
}

pub fn class_closure(w: &Word, pres: &GeneralPresentation, budget: &Budget) -> Closure {
    WordEngine::new(pres).class_closure(w, budget, true)
}

pub fn canonical(
    w: &Word,
    pres: &GeneralPresentation,
    budget: &Budget,
) -> Result<Option<Word>, crate::Error> {
    WordEngine::new(pres).canonical(w, budget)
}

/// Dimension, or `None` when the budget runs out.
pub fn dimension(pres: &GeneralPresentation, budget: &Budget) -> Option<usize> {
    enumerate_basis(pres, budget).dimension()
}
