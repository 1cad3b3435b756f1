//! Coxeter matrices, standard families, truncations and their compilation
//! to a uniform presentation (generators, kept relations, killed words).

use std::collections::BTreeSet;
use std::fmt;

use crate::Error;

/// A generator index. Generators are 1-based everywhere.
pub type Gen = u8;

/// A word in the generators. The empty word is the identity monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Gen] {
        &self.0
    }

    /// Alternating word `i j i ...` of length `m`.
    pub fn alternating(i: Gen, j: Gen, m: usize) -> Self {
        Word((0..m).map(|t| if t % 2 == 0 { i } else { j }).collect())
    }

    pub fn power(i: Gen, e: usize) -> Self {
        Word(vec![i; e])
    }

    pub fn reversed(&self) -> Self {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, g: Gen) {
        self.0.push(g);
    }

    /// Parses space- or comma-separated 1-based generator indices.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let mut out = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let g: u32 = tok.parse().map_err(|_| Error::Param(format!("bad generator index `{tok}`")))?;
            if g == 0 || g > Gen::MAX as u32 {
                return Err(Error::Param(format!("generator index {g} out of range")));
            }
            out.push(g as Gen);
        }
        Ok(Word(out))
    }

    pub fn contains(&self, pat: &[Gen]) -> bool {
        !pat.is_empty() && self.0.windows(pat.len()).any(|w| w == pat)
    }
}

impl From<Vec<Gen>> for Word {
    fn from(v: Vec<Gen>) -> Self {
        Word(v)
    }
}

impl From<&[Gen]> for Word {
    fn from(v: &[Gen]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (t, g) in self.0.iter().enumerate() {
            if t > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Symmetric Coxeter matrix. `None` encodes m = ∞.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Option<u32>>,
}

impl CoxeterMatrix {
    /// Builds from a full square array; `None` means ∞.
    pub fn new(rows: Vec<Vec<Option<u32>>>) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Param("rank must be positive".into()));
        }
        if n > Gen::MAX as usize {
            return Err(Error::Param(format!("rank {n} exceeds {}", Gen::MAX)));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Param(format!("row {} has length {}", i + 1, row.len())));
            }
            for (j, &e) in row.iter().enumerate() {
                if i == j {
                    if e != Some(1) {
                        return Err(Error::Param(format!("m_{0}{0} must be 1", i + 1)));
                    }
                } else if matches!(e, Some(v) if v < 2) {
                    return Err(Error::Param(format!("m_{}{} must be at least 2", i + 1, j + 1)));
                }
                entries.push(e);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::Param(format!("matrix not symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        Ok(CoxeterMatrix { rank: n, entries })
    }

    /// Matrix with off-diagonal entries 2 except for the listed edges.
    pub fn from_edges(rank: usize, edges: &[(usize, usize, Option<u32>)]) -> Result<Self, Error> {
        let mut rows = vec![vec![Some(2); rank]; rank];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Some(1);
        }
        for &(i, j, m) in edges {
            if i == 0 || j == 0 || i > rank || j > rank || i == j {
                return Err(Error::Param(format!("bad edge ({i}, {j})")));
            }
            rows[i - 1][j - 1] = m;
            rows[j - 1][i - 1] = m;
        }
        Self::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// m_ij with 1-based indices; `None` is ∞.
    pub fn m(&self, i: usize, j: usize) -> Option<u32> {
        self.entries[(i - 1) * self.rank + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<Option<u32>>> {
        self.entries.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    /// Unordered pairs `i < j` (1-based) with their labels.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Option<u32>)> + '_ {
        let n = self.rank;
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j, self.m(i, j))))
    }

    /// Is {i, j} an edge of the Coxeter graph (m ≥ 3 or ∞)?
    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.m(i, j) != Some(2)
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (1..=self.rank).filter(|&j| self.is_edge(i, j)).collect()
    }

    /// Connected components of the Coxeter graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank;
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for s in 1..=n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut t = 0;
            while t < comp.len() {
                let v = comp[t];
                t += 1;
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Restriction to the given (1-based) generators, relabelled 1..len in that order.
    pub fn submatrix(&self, gens: &[usize]) -> CoxeterMatrix {
        let rows = gens.iter().map(|&i| gens.iter().map(|&j| self.m(i, j)).collect()).collect();
        CoxeterMatrix::new(rows).expect("submatrix of a valid matrix")
    }

    /// Relabels so that new generator `t+1` is old generator `perm[t]`.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterMatrix {
        self.submatrix(perm)
    }

    /// Number of graph edges (pairs with m ≥ 3 or ∞).
    pub fn edge_count(&self) -> usize {
        self.pairs().filter(|&(i, j, _)| self.is_edge(i, j)).count()
    }

    /// Connected and acyclic Coxeter graph.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.rank
    }

    /// lcm of all finite off-diagonal entries (1 when there are none).
    pub fn finite_lcm(&self) -> u64 {
        self.pairs().filter_map(|(_, _, m)| m).fold(1u64, |acc, m| num_integer::lcm(acc, m as u64))
    }
}

/// Truncation cutoff k ∈ {1, 2, …} ∪ {∞}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Cutoff {
    Finite(u32),
    Infinite,
}

impl Cutoff {
    /// Whether the braid relation with label `m` is kept (m < k). ∞ labels carry no relation.
    pub fn keeps(self, m: Option<u32>) -> bool {
        match (m, self) {
            (None, _) => false,
            (Some(_), Cutoff::Infinite) => true,
            (Some(m), Cutoff::Finite(k)) => m < k,
        }
    }
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cutoff::Finite(k) => write!(f, "{k}"),
            Cutoff::Infinite => write!(f, "infinity"),
        }
    }
}

impl std::str::FromStr for Cutoff {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Cutoff::Infinite),
            _ => {
                let k: u32 = s.parse().map_err(|_| Error::Param(format!("bad cutoff `{s}`")))?;
                if k == 0 {
                    return Err(Error::Param("cutoff must be at least 1".into()));
                }
                Ok(Cutoff::Finite(k))
            }
        }
    }
}

/// Either a cutoff or an explicit set of kept pairs `(i, j)` with `i < j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Truncation {
    Cutoff(Cutoff),
    ExplicitJ0(BTreeSet<(usize, usize)>),
}

/// Coxeter matrix, exponents and truncation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NilHeckeParams {
    pub matrix: CoxeterMatrix,
    pub d: Vec<u32>,
    pub truncation: Truncation,
}

impl NilHeckeParams {
    pub fn new(matrix: CoxeterMatrix, d: Vec<u32>, truncation: Truncation) -> Result<Self, Error> {
        if d.len() != matrix.rank() {
            return Err(Error::Param(format!(
                "exponent vector has length {}, rank is {}",
                d.len(),
                matrix.rank()
            )));
        }
        if let Some(i) = d.iter().position(|&x| x < 2) {
            return Err(Error::Param(format!("d_{} must be at least 2", i + 1)));
        }
        if let Truncation::ExplicitJ0(j0) = &truncation {
            for &(i, j) in j0 {
                if i == 0 || j == 0 || i > matrix.rank() || j > matrix.rank() || i >= j {
                    return Err(Error::Param(format!("bad J0 pair ({i}, {j})")));
                }
                if matrix.m(i, j).is_none() {
                    return Err(Error::Param(format!("J0 pair ({i}, {j}) has m = infinity")));
                }
            }
        }
        Ok(NilHeckeParams { matrix, d, truncation })
    }

    pub fn with_cutoff(matrix: CoxeterMatrix, d: Vec<u32>, k: Cutoff) -> Result<Self, Error> {
        Self::new(matrix, d, Truncation::Cutoff(k))
    }

    /// All-2 exponents.
    pub fn nil_coxeter(matrix: CoxeterMatrix, k: Cutoff) -> Self {
        let n = matrix.rank();
        Self::new(matrix, vec![2; n], Truncation::Cutoff(k)).expect("valid")
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn all_d_two(&self) -> bool {
        self.d.iter().all(|&x| x == 2)
    }

    /// Kept pairs `(i, j)`, `i < j`.
    pub fn j0(&self) -> BTreeSet<(usize, usize)> {
        match &self.truncation {
            Truncation::ExplicitJ0(s) => s.clone(),
            Truncation::Cutoff(k) => {
                self.matrix.pairs().filter(|&(_, _, m)| k.keeps(m)).map(|(i, j, _)| (i, j)).collect()
            }
        }
    }

    /// The cutoff, or the smallest k with J_<k equal to the explicit set if any.
    pub fn effective_cutoff(&self) -> Option<Cutoff> {
        match &self.truncation {
            Truncation::Cutoff(k) => Some(*k),
            Truncation::ExplicitJ0(j0) => {
                let max_m = self.matrix.pairs().filter_map(|(_, _, m)| m).max().unwrap_or(2);
                let mut cands: Vec<Cutoff> = (1..=max_m + 1).map(Cutoff::Finite).collect();
                cands.push(Cutoff::Infinite);
                cands.into_iter().find(|&k| {
                    let p = NilHeckeParams {
                        matrix: self.matrix.clone(),
                        d: self.d.clone(),
                        truncation: Truncation::Cutoff(k),
                    };
                    &p.j0() == j0
                })
            }
        }
    }

    /// Restriction to a set of generators.
    pub fn restrict(&self, gens: &[usize]) -> NilHeckeParams {
        let matrix = self.matrix.submatrix(gens);
        let d = gens.iter().map(|&i| self.d[i - 1]).collect();
        let truncation = match &self.truncation {
            Truncation::Cutoff(k) => Truncation::Cutoff(*k),
            Truncation::ExplicitJ0(j0) => {
                let pos = |g: usize| gens.iter().position(|&x| x == g).map(|p| p + 1);
                Truncation::ExplicitJ0(
                    j0.iter()
                        .filter_map(|&(i, j)| match (pos(i), pos(j)) {
                            (Some(a), Some(b)) => Some((a.min(b), a.max(b))),
                            _ => None,
                        })
                        .collect(),
                )
            }
        };
        NilHeckeParams { matrix, d, truncation }
    }
}

/// Braid relation: two alternating words of equal length.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

/// Uniform presentation consumed by the word engine and the module verifier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneralPresentation {
    pub generators: usize,
    pub d: Vec<u32>,
    pub kept: Vec<Relation>,
    pub killed: Vec<Word>,
}

impl GeneralPresentation {
    /// Kept relations and killed words in a normal order, for equality checks.
    pub fn normalized(&self) -> (Vec<Relation>, Vec<Word>) {
        let mut kept: Vec<Relation> =
            self.kept
                .iter()
                .map(|r| {
                    if r.lhs <= r.rhs {
                        r.clone()
                    } else {
                        Relation { lhs: r.rhs.clone(), rhs: r.lhs.clone() }
                    }
                })
                .collect();
        kept.sort();
        kept.dedup();
        let mut killed = self.killed.clone();
        killed.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        killed.dedup();
        (kept, killed)
    }

    /// Same kept relations and killed words up to order.
    pub fn same_algebra(&self, other: &GeneralPresentation) -> bool {
        self.generators == other.generators && self.normalized() == other.normalized()
    }
}

/// One braid relation per pair with finite label.
pub fn braid_relations(matrix: &CoxeterMatrix) -> Vec<((usize, usize), Relation)> {
    matrix
        .pairs()
        .filter_map(|(i, j, m)| {
            m.map(|m| {
                (
                    (i, j),
                    Relation {
                        lhs: Word::alternating(i as Gen, j as Gen, m as usize),
                        rhs: Word::alternating(j as Gen, i as Gen, m as usize),
                    },
                )
            })
        })
        .collect()
}

/// Keeps the braid relations in J0 and kills both sides of the others.
pub fn compile(params: &NilHeckeParams) -> GeneralPresentation {
    let j0 = params.j0();
    let mut kept = Vec::new();
    let mut killed: Vec<Word> =
        params.d.iter().enumerate().map(|(i, &e)| Word::power((i + 1) as Gen, e as usize)).collect();
    for (pair, rel) in braid_relations(&params.matrix) {
        if j0.contains(&pair) {
            kept.push(rel);
        } else {
            killed.push(rel.lhs);
            killed.push(rel.rhs);
        }
    }
    GeneralPresentation { generators: params.rank(), d: params.d.clone(), kept, killed }
}

/// Families of Coxeter graphs recognised by the classifier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum StandardFamily {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F(usize),
    H(usize),
    I2(u32),
}

impl StandardFamily {
    pub fn rank(self) -> usize {
        match self {
            StandardFamily::A(n)
            | StandardFamily::B(n)
            | StandardFamily::D(n)
            | StandardFamily::E(n)
            | StandardFamily::F(n)
            | StandardFamily::H(n) => n,
            StandardFamily::I2(_) => 2,
        }
    }

    pub fn validate(self) -> Result<(), Error> {
        let ok = match self {
            StandardFamily::A(n) => n >= 1,
            StandardFamily::B(n) => n >= 2,
            StandardFamily::D(n) => n >= 4,
            StandardFamily::E(n) => n >= 6,
            StandardFamily::F(n) => n >= 4,
            StandardFamily::H(n) => n >= 3,
            StandardFamily::I2(m) => m >= 3,
        };
        let ok = ok && self.rank() <= Gen::MAX as usize;
        if ok {
            Ok(())
        } else {
            Err(Error::Param(format!("family parameter out of range: {self}")))
        }
    }

    /// Parses a family letter with rank (or m for I2).
    pub fn from_parts(family: &str, rank: Option<usize>, m: Option<u32>) -> Result<Self, Error> {
        let need = || rank.ok_or_else(|| Error::Param(format!("family {family} needs a rank")));
        let f = match family {
            "A" => StandardFamily::A(need()?),
            "B" => StandardFamily::B(need()?),
            "D" => StandardFamily::D(need()?),
            "E" => StandardFamily::E(need()?),
            "F" => StandardFamily::F(need()?),
            "H" => StandardFamily::H(need()?),
            "I2" => StandardFamily::I2(m.ok_or_else(|| Error::Param("family I2 needs m".into()))?),
            other => return Err(Error::Param(format!("unknown family `{other}`"))),
        };
        f.validate()?;
        Ok(f)
    }

    /// Order of the Coxeter group when it is finite.
    pub fn group_order(self) -> Option<u128> {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            StandardFamily::A(n) => Some(fact(n + 1)),
            StandardFamily::B(n) => Some((1u128 << n) * fact(n)),
            StandardFamily::D(n) => Some((1u128 << (n - 1)) * fact(n)),
            StandardFamily::E(6) => Some(51_840),
            StandardFamily::E(7) => Some(2_903_040),
            StandardFamily::E(8) => Some(696_729_600),
            StandardFamily::F(4) => Some(1152),
            StandardFamily::H(3) => Some(120),
            StandardFamily::H(4) => Some(14_400),
            StandardFamily::I2(m) => Some(2 * m as u128),
            _ => None,
        }
    }
}

impl fmt::Display for StandardFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardFamily::A(n) => write!(f, "A{n}"),
            StandardFamily::B(n) => write!(f, "B{n}"),
            StandardFamily::D(n) => write!(f, "D{n}"),
            StandardFamily::E(n) => write!(f, "E{n}"),
            StandardFamily::F(n) => write!(f, "F{n}"),
            StandardFamily::H(n) => write!(f, "H{n}"),
            StandardFamily::I2(m) => write!(f, "I2({m})"),
        }
    }
}

fn chain_edges(n: usize) -> Vec<(usize, usize, Option<u32>)> {
    (1..n).map(|i| (i, i + 1, Some(3))).collect()
}

/// Matrix of a standard family under the fixed labelling:
/// B has m_12 = 4, F has m_23 = 4, H has m_12 = 5, D forks at n-2 with
/// extra node n, E is the chain 1,2,4,5,…,n with 3 attached to 4.
pub fn standard_system(family: StandardFamily) -> Result<CoxeterMatrix, Error> {
    family.validate()?;
    let edges = match family {
        StandardFamily::A(n) => chain_edges(n),
        StandardFamily::B(n) => {
            let mut e = chain_edges(n);
            e[0].2 = Some(4);
            e
        }
        StandardFamily::F(n) => {
            let mut e = chain_edges(n);
            e[1].2 = Some(4);
            e
        }
        StandardFamily::H(n) => {
            let mut e = chain_edges(n);
            e[0].2 = Some(5);
            e
        }
        StandardFamily::D(n) => {
            let mut e = chain_edges(n - 1);
            e.push((n - 2, n, Some(3)));
            e
        }
        StandardFamily::E(n) => {
            let mut e = vec![(1, 2, Some(3)), (2, 4, Some(3)), (3, 4, Some(3))];
            e.extend((4..n).map(|i| (i, i + 1, Some(3))));
            e
        }
        StandardFamily::I2(m) => vec![(1, 2, Some(m))],
    };
    CoxeterMatrix::from_edges(family.rank(), &edges)
}

/// Recognises a connected Coxeter graph as a standard family. The returned
/// map sends family generator `t+1` to input generator `perm[t]`.
pub fn recognize_type(matrix: &CoxeterMatrix) -> Result<Option<(StandardFamily, Vec<usize>)>, Error> {
    if !matrix.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = matrix.rank();
    if matrix.pairs().any(|(_, _, m)| m.is_none()) || !matrix.is_tree() {
        return Ok(None);
    }
    let found = match n {
        1 => Some((StandardFamily::A(1), vec![1])),
        2 => {
            let m = matrix.m(1, 2).expect("finite");
            let fam = match m {
                3 => StandardFamily::A(2),
                4 => StandardFamily::B(2),
                m => StandardFamily::I2(m),
            };
            Some((fam, vec![1, 2]))
        }
        _ => recognize_tree(matrix),
    };
    if let Some((fam, perm)) = &found {
        debug_assert_eq!(&matrix.permuted(perm), &standard_system(*fam).expect("valid"));
    }
    Ok(found)
}

fn recognize_tree(matrix: &CoxeterMatrix) -> Option<(StandardFamily, Vec<usize>)> {
    let n = matrix.rank();
    let deg: Vec<usize> = (1..=n).map(|i| matrix.neighbors(i).len()).collect();
    let branch: Vec<usize> = (1..=n).filter(|&i| deg[i - 1] >= 3).collect();
    if branch.is_empty() {
        let end = (1..=n).find(|&i| deg[i - 1] == 1)?;
        let path = walk(matrix, end, 0);
        let labels: Vec<u32> = path.windows(2).map(|w| matrix.m(w[0], w[1]).expect("finite")).collect();
        let special: Vec<usize> = (0..labels.len()).filter(|&t| labels[t] != 3).collect();
        let rev = |p: &Vec<usize>| p.iter().rev().copied().collect::<Vec<_>>();
        return match special.as_slice() {
            [] => Some((StandardFamily::A(n), path)),
            [t] => {
                let (t, lab) = (*t, labels[*t]);
                let last = n - 2;
                match lab {
                    4 if t == 0 => Some((StandardFamily::B(n), path)),
                    4 if t == last => Some((StandardFamily::B(n), rev(&path))),
                    4 if n >= 4 && t == 1 => Some((StandardFamily::F(n), path)),
                    4 if n >= 4 && t + 3 == n => Some((StandardFamily::F(n), rev(&path))),
                    5 if t == 0 => Some((StandardFamily::H(n), path)),
                    5 if t == last => Some((StandardFamily::H(n), rev(&path))),
                    _ => None,
                }
            }
            _ => None,
        };
    }
    if branch.len() != 1 || deg[branch[0] - 1] != 3 {
        return None;
    }
    if matrix.pairs().any(|(i, j, m)| matrix.is_edge(i, j) && m != Some(3)) {
        return None;
    }
    let c = branch[0];
    let mut arms: Vec<Vec<usize>> = matrix
        .neighbors(c)
        .into_iter()
        .map(|s| {
            let mut a = vec![s];
            a.extend(walk(matrix, s, c).into_iter().skip(1));
            a
        })
        .collect();
    arms.sort_by_key(|a| a.len());
    let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
    match (lens[0], lens[1]) {
        (1, 1) => {
            // D_n: chain 1..n-1, node n attached to n-2 = centre.
            let mut perm: Vec<usize> = arms[2].iter().rev().copied().collect();
            perm.push(c);
            perm.push(arms[0][0]);
            perm.push(arms[1][0]);
            Some((StandardFamily::D(n), perm))
        }
        (1, 2) => {
            // E_n: 1 - 2 - 4 - 5 - ... - n, 3 attached to 4 = centre.
            let mut perm = vec![arms[1][1], arms[1][0], arms[0][0], c];
            perm.extend(arms[2].iter().copied());
            Some((StandardFamily::E(n), perm))
        }
        _ => None,
    }
}

/// Walks a path starting at `start`, not stepping back to `from` (0 = none).
fn walk(matrix: &CoxeterMatrix, start: usize, from: usize) -> Vec<usize> {
    let mut path = vec![start];
    let (mut prev, mut cur) = (from, start);
    loop {
        let next: Vec<usize> = matrix.neighbors(cur).into_iter().filter(|&v| v != prev).collect();
        if next.len() != 1 {
            return path;
        }
        prev = cur;
        cur = next[0];
        path.push(cur);
    }
}

/// Generators s, t, u, v of G29 are 1, 2, 3, 4.
pub const G29_NAMES: [&str; 4] = ["s", "t", "u", "v"];

fn g29_relations() -> Vec<Relation> {
    let w = |s: &str| Word(s.chars().map(|c| "stuv".find(c).expect("generator name") as Gen + 1).collect());
    [
        ("sv", "vs"),
        ("su", "us"),
        ("sts", "tst"),
        ("vtv", "tvt"),
        ("uvu", "vuv"),
        ("tutu", "utut"),
        ("vtuvtu", "tuvtuv"),
    ]
    .iter()
    .map(|(l, r)| Relation { lhs: w(l), rhs: w(r) })
    .collect()
}

/// Presentation of the G29 nil-Hecke algebra: relations of length < k kept,
/// longer ones killed on both sides, plus generator powers.
pub fn g29_presentation(d: &[u32], k: Cutoff) -> Result<GeneralPresentation, Error> {
    if d.len() != 4 || d.iter().any(|&x| x < 2) {
        return Err(Error::Param("G29 needs four exponents, each at least 2".into()));
    }
    if matches!(k, Cutoff::Finite(k) if k < 3) {
        return Err(Error::Unsupported("G29 requires k >= 3".into()));
    }
    let mut kept = Vec::new();
    let mut killed: Vec<Word> =
        d.iter().enumerate().map(|(i, &e)| Word::power((i + 1) as Gen, e as usize)).collect();
    for rel in g29_relations() {
        if k.keeps(Some(rel.lhs.len() as u32)) {
            kept.push(rel);
        } else {
            killed.push(rel.lhs);
            killed.push(rel.rhs);
        }
    }
    Ok(GeneralPresentation { generators: 4, d: d.to_vec(), kept, killed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn standard_examples() {
        let i25 = standard_system(StandardFamily::I2(5)).unwrap();
        assert_eq!(i25.rows(), vec![vec![Some(1), Some(5)], vec![Some(5), Some(1)]]);
        let a3 = standard_system(StandardFamily::A(3)).unwrap();
        assert_eq!((a3.m(1, 2), a3.m(2, 3), a3.m(1, 3)), (Some(3), Some(3), Some(2)));
        let f4 = standard_system(StandardFamily::F(4)).unwrap();
        assert_eq!((f4.m(1, 2), f4.m(2, 3), f4.m(3, 4)), (Some(3), Some(4), Some(3)));
        let e6 = standard_system(StandardFamily::E(6)).unwrap();
        assert_eq!(e6.neighbors(4), vec![2, 3, 5]);
        let d5 = standard_system(StandardFamily::D(5)).unwrap();
        assert_eq!(d5.neighbors(3), vec![2, 4, 5]);
        assert!(standard_system(StandardFamily::D(3)).is_err());
    }

    #[test]
    fn braid_relation_examples() {
        let a2 = standard_system(StandardFamily::A(2)).unwrap();
        let r = braid_relations(&a2);
        assert_eq!(r[0].1, Relation { lhs: w("1 2 1"), rhs: w("2 1 2") });
        let i24 = standard_system(StandardFamily::I2(4)).unwrap();
        assert_eq!(braid_relations(&i24)[0].1.lhs, w("1 2 1 2"));
        let a3 = standard_system(StandardFamily::A(3)).unwrap();
        assert!(braid_relations(&a3).iter().any(|(p, r)| *p == (1, 3) && r.lhs == w("1 3")));
        let inf = CoxeterMatrix::from_edges(2, &[(1, 2, None)]).unwrap();
        assert!(braid_relations(&inf).is_empty());
    }

    #[test]
    fn compile_examples() {
        let a2 = standard_system(StandardFamily::A(2)).unwrap();
        let p = NilHeckeParams::nil_coxeter(a2.clone(), Cutoff::Infinite);
        let g = compile(&p);
        assert_eq!(g.kept, vec![Relation { lhs: w("1 2 1"), rhs: w("2 1 2") }]);
        assert_eq!(g.killed, vec![w("1 1"), w("2 2")]);
        let g2 = compile(&NilHeckeParams::nil_coxeter(a2.clone(), Cutoff::Finite(2)));
        assert!(g2.kept.is_empty());
        assert_eq!(g2.normalized().1, vec![w("1 1"), w("2 2"), w("1 2 1"), w("2 1 2")]);
        let g1 = compile(&NilHeckeParams::nil_coxeter(a2, Cutoff::Finite(1)));
        assert!(g1.same_algebra(&g2));

        let h3 = standard_system(StandardFamily::H(3)).unwrap();
        let g = compile(&NilHeckeParams::nil_coxeter(h3, Cutoff::Finite(4)));
        assert!(g.killed.contains(&w("1 2 1 2 1")) && g.killed.contains(&w("2 1 2 1 2")));
        assert!(g.kept.iter().any(|r| r.lhs == w("2 3 2")));
        assert!(g.kept.iter().any(|r| r.lhs == w("1 3")));
    }

    #[test]
    fn explicit_j0_matches_cutoff() {
        let f4 = standard_system(StandardFamily::F(4)).unwrap();
        for k in [Cutoff::Finite(2), Cutoff::Finite(3), Cutoff::Finite(4), Cutoff::Infinite] {
            let p = NilHeckeParams::nil_coxeter(f4.clone(), k);
            let q = NilHeckeParams::new(f4.clone(), vec![2; 4], Truncation::ExplicitJ0(p.j0())).unwrap();
            assert!(compile(&p).same_algebra(&compile(&q)));
            let e = q.effective_cutoff().unwrap();
            assert_eq!(compile(&NilHeckeParams::nil_coxeter(f4.clone(), e)), compile(&q));
        }
        let odd = NilHeckeParams::new(f4, vec![2; 4], Truncation::ExplicitJ0([(2, 3)].into())).unwrap();
        assert_eq!(odd.effective_cutoff(), None);
    }

    #[test]
    fn recognize_examples() {
        let i25 = standard_system(StandardFamily::I2(5)).unwrap();
        assert_eq!(recognize_type(&i25).unwrap().unwrap().0, StandardFamily::I2(5));
        let a4 = standard_system(StandardFamily::A(4)).unwrap();
        let rev = a4.permuted(&[4, 3, 2, 1]);
        let (fam, perm) = recognize_type(&rev).unwrap().unwrap();
        assert_eq!(fam, StandardFamily::A(4));
        assert_eq!(rev.permuted(&perm), a4);
        let cyc = CoxeterMatrix::from_edges(
            4,
            &[(1, 2, Some(3)), (2, 3, Some(3)), (3, 4, Some(3)), (4, 1, Some(3))],
        )
        .unwrap();
        assert_eq!(recognize_type(&cyc).unwrap(), None);
        let disc = CoxeterMatrix::from_edges(2, &[]).unwrap();
        assert!(matches!(recognize_type(&disc), Err(Error::Disconnected)));
        // The appendix labels H3 with m_23 = 5.
        let h3_alt = CoxeterMatrix::from_edges(3, &[(1, 2, Some(3)), (2, 3, Some(5))]).unwrap();
        assert_eq!(recognize_type(&h3_alt).unwrap().unwrap().0, StandardFamily::H(3));
    }

    #[test]
    fn recognize_inverts_standard() {
        let fams = [
            StandardFamily::A(1),
            StandardFamily::A(5),
            StandardFamily::B(2),
            StandardFamily::B(3),
            StandardFamily::B(6),
            StandardFamily::D(4),
            StandardFamily::D(7),
            StandardFamily::E(6),
            StandardFamily::E(8),
            StandardFamily::E(10),
            StandardFamily::F(4),
            StandardFamily::F(6),
            StandardFamily::H(3),
            StandardFamily::H(5),
            StandardFamily::I2(7),
        ];
        for fam in fams {
            let m = standard_system(fam).unwrap();
            let (got, perm) = recognize_type(&m).unwrap().unwrap();
            assert_eq!(got, fam);
            assert_eq!(m.permuted(&perm), m);
        }
    }

    #[test]
    fn g29_examples() {
        let g3 = g29_presentation(&[2; 4], Cutoff::Finite(3)).unwrap();
        assert_eq!(g3.kept.len(), 2);
        assert_eq!(g3.killed.len(), 4 + 10);
        let g5 = g29_presentation(&[2; 4], Cutoff::Finite(5)).unwrap();
        assert_eq!(g5.kept.len(), 6);
        assert!(g5.killed.contains(&w("4 2 3 4 2 3")));
        let g7 = g29_presentation(&[2; 4], Cutoff::Finite(7)).unwrap();
        assert_eq!(g7.killed.len(), 4);
        assert!(matches!(g29_presentation(&[2; 4], Cutoff::Finite(2)), Err(Error::Unsupported(_))));
    }
}
