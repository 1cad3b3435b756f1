//! Diagram modules: labeled digraphs whose `+` edges raise a grade, read as
//! cyclic modules over a presented algebra. A diagram verifies when every kept
//! relation acts identically on every node and every killed word acts as zero;
//! it witnesses infinite rank when it also has a reachable cycle through a
//! `+` edge.

use std::collections::{HashMap, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::coxsys::{
    compile, g29_presentation, standard_system, CoxeterMatrix, Cutoff, Gen, GeneralPresentation,
    NilHeckeParams, StandardFamily, Word,
};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub gen: Gen,
    #[serde(default)]
    pub plus: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDiagram {
    pub nodes: Vec<String>,
    pub start: String,
    pub edges: Vec<Edge>,
}

/// A node index together with its grade.
pub type State = (usize, u64);

/// Transition table of a structurally valid diagram.
#[derive(Clone, Debug)]
pub struct CompiledDiagram {
    names: Vec<String>,
    start: usize,
    gens: usize,
    /// `next[node * gens + (g - 1)]`.
    next: Vec<Option<(usize, bool)>>,
}

impl ModuleDiagram {
    pub fn new(nodes: &[&str], start: &str, edges: &[(&str, &str, Gen, bool)]) -> Self {
        ModuleDiagram {
            nodes: nodes.iter().map(|s| s.to_string()).collect(),
            start: start.to_string(),
            edges: edges
                .iter()
                .map(|&(f, t, gen, plus)| Edge { from: f.into(), to: t.into(), gen, plus })
                .collect(),
        }
    }

    pub fn max_gen(&self) -> usize {
        self.edges.iter().map(|e| e.gen as usize).max().unwrap_or(0)
    }

    /// Checks endpoints and determinism, then builds the transition table over
    /// generators `1..=gens`.
    pub fn compile(&self, gens: usize) -> Result<CompiledDiagram, Error> {
        let mut index = HashMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if index.insert(n.as_str(), i).is_some() {
                return Err(Error::Structure(format!("duplicate node `{n}`")));
            }
        }
        let look =
            |n: &str| index.get(n).copied().ok_or_else(|| Error::Structure(format!("unknown node `{n}`")));
        let start = look(&self.start)?;
        let mut next = vec![None; self.nodes.len() * gens];
        for e in &self.edges {
            let (f, t) = (look(&e.from)?, look(&e.to)?);
            let g = e.gen as usize;
            if g == 0 || g > gens {
                return Err(Error::Structure(format!("generator {g} out of range 1..={gens}")));
            }
            let slot = &mut next[f * gens + g - 1];
            if slot.is_some() {
                return Err(Error::Structure(format!("two edges labeled {g} leave `{}`", e.from)));
            }
            *slot = Some((t, e.plus));
        }
        Ok(CompiledDiagram { names: self.nodes.clone(), start, gens, next })
    }
}

impl CompiledDiagram {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn step(&self, v: usize, g: Gen) -> Option<(usize, bool)> {
        let g = g as usize;
        if g == 0 || g > self.gens {
            return None;
        }
        self.next[v * self.gens + g - 1]
    }

    /// Acts by `word`, rightmost letter first; `None` is the zero vector.
    pub fn act(&self, state: State, word: &[Gen]) -> Option<State> {
        word.iter().rev().try_fold(state, |(v, r), &g| self.step(v, g).map(|(t, p)| (t, r + p as u64)))
    }

    fn successors(&self, v: usize) -> impl Iterator<Item = (Gen, usize, bool)> + '_ {
        (1..=self.gens).filter_map(move |g| self.step(v, g as Gen).map(|(t, p)| (g as Gen, t, p)))
    }

    /// Shortest letter path (in application order) from `src` to each node.
    fn bfs(&self, src: usize) -> Vec<Option<Vec<Gen>>> {
        let mut paths: Vec<Option<Vec<Gen>>> = vec![None; self.len()];
        paths[src] = Some(Vec::new());
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for (g, t, _) in self.successors(v) {
                if paths[t].is_none() {
                    let mut p = paths[v].clone().expect("visited");
                    p.push(g);
                    paths[t] = Some(p);
                    queue.push_back(t);
                }
            }
        }
        paths
    }

    /// The shortest closed walk through a `+` edge reachable from the start,
    /// as (prefix from start to the cycle, cycle), both in application order.
    fn plus_cycle(&self) -> Option<(Vec<Gen>, Vec<Gen>, Vec<usize>)> {
        let from_start = self.bfs(self.start);
        let mut best: Option<(Vec<Gen>, Vec<usize>)> = None;
        for u in 0..self.len() {
            if from_start[u].is_none() {
                continue;
            }
            for (g, v, plus) in self.successors(u) {
                if !plus {
                    continue;
                }
                let Some(back) = self.bfs(v)[u].clone() else { continue };
                let mut letters = vec![g];
                letters.extend(back);
                if best.as_ref().is_none_or(|(b, _)| letters.len() < b.len()) {
                    let mut nodes = vec![u];
                    let mut cur = u;
                    for &l in &letters[..letters.len() - 1] {
                        cur = self.step(cur, l).expect("on path").0;
                        nodes.push(cur);
                    }
                    best = Some((letters, nodes));
                }
            }
        }
        let (letters, nodes) = best?;
        // Rotate so the cycle starts at its node closest to the start.
        let rot = (0..nodes.len())
            .min_by_key(|&i| (from_start[nodes[i]].as_ref().expect("reachable").len(), i))
            .expect("non-empty");
        let cycle: Vec<Gen> = letters[rot..].iter().chain(&letters[..rot]).copied().collect();
        let prefix = from_start[nodes[rot]].clone().expect("reachable");
        Some((prefix, cycle, nodes))
    }

    pub fn all_reachable(&self) -> bool {
        self.bfs(self.start).iter().all(Option::is_some)
    }

    pub fn has_plus_cycle(&self) -> bool {
        self.plus_cycle().is_some()
    }
}

/// A relation or killed word that fails at some node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub node: String,
    pub relation: String,
    pub lhs: Option<(String, u64)>,
    pub rhs: Option<(String, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub relations_ok: bool,
    pub failures: Vec<Failure>,
    pub is_witness: bool,
    pub details: String,
}

/// Checks the diagram against every kept relation and killed word at every
/// node. Grade 0 suffices since the action only ever adds to the grade.
pub fn verify(diagram: &ModuleDiagram, pres: &GeneralPresentation) -> Result<VerificationReport, Error> {
    if diagram.max_gen() > pres.generators {
        return Err(Error::Param(format!(
            "diagram uses generator {} but the presentation has {}",
            diagram.max_gen(),
            pres.generators
        )));
    }
    let cd = diagram.compile(pres.generators)?;
    let named = |s: Option<State>| s.map(|(v, r)| (cd.name(v).to_string(), r));
    let mut failures = Vec::new();
    for v in 0..cd.len() {
        for rel in &pres.kept {
            let (l, r) = (cd.act((v, 0), rel.lhs.as_slice()), cd.act((v, 0), rel.rhs.as_slice()));
            if l != r {
                failures.push(Failure {
                    node: cd.name(v).to_string(),
                    relation: format!("{} = {}", rel.lhs, rel.rhs),
                    lhs: named(l),
                    rhs: named(r),
                });
            }
        }
        for w in &pres.killed {
            if let Some(s) = cd.act((v, 0), w.as_slice()) {
                failures.push(Failure {
                    node: cd.name(v).to_string(),
                    relation: format!("{w} = 0"),
                    lhs: named(Some(s)),
                    rhs: None,
                });
            }
        }
    }
    let relations_ok = failures.is_empty();
    let reachable = cd.all_reachable();
    let cycle = cd.has_plus_cycle();
    let details = format!(
        "{} nodes, {} edges; {} failures; all nodes reachable: {reachable}; plus-cycle: {cycle}",
        cd.len(),
        diagram.edges.len(),
        failures.len()
    );
    Ok(VerificationReport { relations_ok, is_witness: relations_ok && reachable && cycle, failures, details })
}

/// A word of length at least `n` acting nonzero on the start node: a path to
/// the shortest plus-cycle followed by repetitions of the cycle.
pub fn growth_certificate(
    diagram: &ModuleDiagram,
    pres: &GeneralPresentation,
    n: usize,
) -> Result<Word, Error> {
    if !verify(diagram, pres)?.is_witness {
        return Err(Error::Precondition("diagram is not a witness".into()));
    }
    if n == 0 {
        return Ok(Word::empty());
    }
    let cd = diagram.compile(pres.generators)?;
    let (prefix, cycle, _) = cd.plus_cycle().expect("witness has a plus-cycle");
    let reps = n.saturating_sub(prefix.len()).div_ceil(cycle.len()).max(1);
    let mut applied = prefix;
    for _ in 0..reps {
        applied.extend_from_slice(&cycle);
    }
    applied.reverse();
    Ok(Word(applied))
}

/// One single-edge change of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mutation {
    ChangeGen { edge: usize, gen: Gen },
    Drop { edge: usize },
    FlipPlus { edge: usize },
}

impl Mutation {
    pub fn apply(&self, d: &ModuleDiagram) -> ModuleDiagram {
        let mut out = d.clone();
        match *self {
            Mutation::ChangeGen { edge, gen } => out.edges[edge].gen = gen,
            Mutation::Drop { edge } => {
                out.edges.remove(edge);
            }
            Mutation::FlipPlus { edge } => out.edges[edge].plus ^= true,
        }
        out
    }
}

/// Pseudo-random single-edge mutations, reproducible from `seed`.
pub fn random_mutations(d: &ModuleDiagram, gens: usize, count: usize, seed: u64) -> Vec<Mutation> {
    let mut rng = StdRng::seed_from_u64(seed);
    if d.edges.is_empty() {
        return Vec::new();
    }
    (0..count)
        .map(|_| {
            let edge = rng.gen_range(0..d.edges.len());
            match rng.gen_range(0..3) {
                0 if gens > 1 => {
                    let old = d.edges[edge].gen;
                    let mut gen = rng.gen_range(1..gens) as Gen;
                    if gen >= old {
                        gen += 1;
                    }
                    Mutation::ChangeGen { edge, gen }
                }
                1 => Mutation::Drop { edge },
                _ => Mutation::FlipPlus { edge },
            }
        })
        .collect()
}

/// Whether a mutated diagram still verifies as a witness. Structural errors
/// count as failing verification.
pub fn survives(d: &ModuleDiagram, pres: &GeneralPresentation) -> bool {
    verify(d, pres).map(|r| r.is_witness).unwrap_or(false)
}

/// Parameters a bundled figure is checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FigureSystem {
    Coxeter(NilHeckeParams),
    G29 { d: Vec<u32>, k: Cutoff },
}

impl FigureSystem {
    pub fn presentation(&self) -> GeneralPresentation {
        match self {
            FigureSystem::Coxeter(p) => compile(p),
            FigureSystem::G29 { d, k } => g29_presentation(d, *k).expect("valid G29 parameters"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BundledFigure {
    pub id: String,
    pub system: FigureSystem,
    pub diagram: ModuleDiagram,
}

fn params(matrix: CoxeterMatrix, d: Vec<u32>, k: u32) -> FigureSystem {
    FigureSystem::Coxeter(
        NilHeckeParams::with_cutoff(matrix, d, Cutoff::Finite(k)).expect("valid parameters"),
    )
}

fn edges_owned(edges: &[(String, String, Gen, bool)]) -> Vec<Edge> {
    edges.iter().map(|(f, t, g, p)| Edge { from: f.clone(), to: t.clone(), gen: *g, plus: *p }).collect()
}

fn diagram(nodes: Vec<String>, start: &str, edges: Vec<(String, String, Gen, bool)>) -> ModuleDiagram {
    ModuleDiagram { nodes, start: start.into(), edges: edges_owned(&edges) }
}

fn b(j: usize) -> String {
    format!("B{j}")
}

fn bp(j: usize) -> String {
    format!("B'{j}")
}

/// Path `α – β_1 – … – β_{m-1} – γ` with α = 1, β_j = j + 1, γ = m + 1. All
/// labels are 3 except the last, which is `last`.
fn path_matrix(m: usize, last: u32) -> CoxeterMatrix {
    let edges: Vec<_> = (1..=m).map(|i| (i, i + 1, Some(if i == m { last } else { 3 }))).collect();
    CoxeterMatrix::from_edges(m + 1, &edges).expect("valid")
}

/// Forward chain `A → B_1 → … → B_m` and the mirrored return `B'_m → … → B'_1`.
fn chains(m: usize, first: Gen) -> (Vec<String>, Vec<(String, String, Gen, bool)>) {
    let mut nodes = vec!["A".to_string()];
    nodes.extend((1..=m).map(b));
    nodes.extend((1..=m).map(bp));
    let mut edges = vec![("A".into(), b(1), first, false)];
    for j in 1..m {
        edges.push((b(j), b(j + 1), (j + 1) as Gen, false));
        edges.push((bp(j + 1), bp(j), (j + 1) as Gen, false));
    }
    (nodes, edges)
}

/// Simply-laced path, `d_α = d_γ = 3`, k = 2.
pub fn fig2a(m: usize) -> BundledFigure {
    let g = (m + 1) as Gen;
    let (mut nodes, mut edges) = chains(m, 1);
    nodes.push("C".into());
    edges.push((b(m), "C".into(), g, false));
    edges.push(("C".into(), bp(m), g, false));
    edges.push((bp(1), "A".into(), 1, true));
    let mut d = vec![2; m + 1];
    d[0] = 3;
    d[m] = 3;
    BundledFigure {
        id: format!("fig2a(m={m})"),
        system: params(path_matrix(m, 3), d, 2),
        diagram: diagram(nodes, "A", edges),
    }
}

/// Path whose last edge has label 4, `d_α = 3`, k = 2.
pub fn fig2b(m: usize) -> BundledFigure {
    let (nodes, mut edges) = chains(m, 1);
    edges.push((b(m), bp(m), (m + 1) as Gen, false));
    edges.push((bp(1), "A".into(), 1, true));
    let mut d = vec![2; m + 1];
    d[0] = 3;
    BundledFigure {
        id: format!("fig2b(m={m})"),
        system: params(path_matrix(m, 4), d, 2),
        diagram: diagram(nodes, "A", edges),
    }
}

/// Cycle graph of length `m` with all labels 3, `d = 2s`, k = 3.
pub fn cycle_figure(m: usize) -> BundledFigure {
    let edges: Vec<_> = (1..=m).map(|i| (i, i % m + 1, Some(3))).collect();
    let matrix = CoxeterMatrix::from_edges(m, &edges).expect("valid");
    let a = |i: usize| format!("A{i}");
    let nodes = (1..=m).map(a).collect();
    let dedges = (1..=m).map(|i| (a(i), a(i % m + 1), i as Gen, i == m)).collect();
    BundledFigure {
        id: format!("cycle(m={m})"),
        system: params(matrix, vec![2; m], 3),
        diagram: diagram(nodes, "A1", dedges),
    }
}

/// Two forks joined by the path `β_1 – … – β_{m-1}`: α_1, α_2 hang off β_1 and
/// γ_1, γ_2 off β_{m-1}. Generators α_1 = 1, α_2 = 2, β_j = j + 2,
/// γ_1 = m + 2, γ_2 = m + 3. `d = 2s`, k = 3.
pub fn fig6(m: usize) -> BundledFigure {
    assert!(m >= 2);
    let beta = |j: usize| (j + 2) as Gen;
    let (g1, g2) = ((m + 2) as Gen, (m + 3) as Gen);
    let mut medges = vec![(1, 3, Some(3)), (2, 3, Some(3))];
    medges.extend((1..m - 1).map(|j| (j + 2, j + 3, Some(3))));
    medges.push((m + 1, m + 2, Some(3)));
    medges.push((m + 1, m + 3, Some(3)));
    let matrix = CoxeterMatrix::from_edges(m + 3, &medges).expect("valid");

    let mut nodes: Vec<String> = vec!["A".into(), "B".into()];
    nodes.extend((1..=m).map(b));
    nodes.extend(["C".to_string(), "D".to_string()]);
    nodes.extend((1..=m).map(bp));
    let mut edges = vec![("A".into(), b(1), 2, false), ("B".into(), b(1), 1, false)];
    for j in 1..m {
        edges.push((b(j), b(j + 1), beta(j), false));
        edges.push((bp(j + 1), bp(j), beta(j), false));
    }
    edges.push((b(m), "D".into(), g1, false));
    edges.push((b(m), "C".into(), g2, false));
    edges.push(("C".into(), bp(m), g1, false));
    edges.push(("D".into(), bp(m), g2, false));
    edges.push((bp(1), "B".into(), 2, true));
    edges.push((bp(1), "A".into(), 1, true));
    BundledFigure {
        id: format!("fig6(m={m})"),
        system: params(matrix, vec![2; m + 3], 3),
        diagram: diagram(nodes, "A", edges),
    }
}

/// Path `α – β_1 – … – β_{m-1}` with γ_1, γ_2 attached to its far end,
/// `d_α = 3`, k = 3. Generators α = 1, β_j = j + 1, γ_1 = m + 1, γ_2 = m + 2.
pub fn fig_s3(m: usize) -> BundledFigure {
    assert!(m >= 1);
    let (g1, g2) = ((m + 1) as Gen, (m + 2) as Gen);
    let mut medges: Vec<_> = (1..m).map(|i| (i, i + 1, Some(3))).collect();
    medges.push((m, m + 1, Some(3)));
    medges.push((m, m + 2, Some(3)));
    let matrix = CoxeterMatrix::from_edges(m + 2, &medges).expect("valid");

    let (mut nodes, mut edges) = chains(m, 1);
    nodes.extend(["B".to_string(), "C".to_string()]);
    edges.push((b(m), "B".into(), g1, false));
    edges.push((b(m), "C".into(), g2, false));
    edges.push(("B".into(), bp(m), g2, false));
    edges.push(("C".into(), bp(m), g1, false));
    edges.push((bp(1), "A".into(), 1, true));
    let mut d = vec![2; m + 2];
    d[0] = 3;
    BundledFigure {
        id: format!("figS3(m={m})"),
        system: params(matrix, d, 3),
        diagram: diagram(nodes, "A", edges),
    }
}

fn numbered(n: usize, edges: &[(usize, usize, Gen, bool)]) -> ModuleDiagram {
    ModuleDiagram {
        nodes: (1..=n).map(|i| i.to_string()).collect(),
        start: "1".into(),
        edges: edges
            .iter()
            .map(|&(f, t, gen, plus)| Edge { from: f.to_string(), to: t.to_string(), gen, plus })
            .collect(),
    }
}

/// Twenty-one node module for F_5 (m_23 = 4), `d = 2s`, k = 4.
pub fn f5_module() -> BundledFigure {
    #[rustfmt::skip]
    let edges = [
        (1, 2, 1, true), (2, 3, 2, false), (3, 4, 3, false), (4, 5, 4, false),
        (5, 6, 5, false), (5, 16, 2, false), (6, 7, 2, false), (7, 8, 3, false),
        (8, 9, 4, false), (8, 18, 2, false), (9, 10, 2, false), (10, 11, 3, false),
        (10, 19, 1, false), (11, 1, 2, false), (11, 12, 1, false), (12, 13, 2, true),
        (13, 3, 1, false), (13, 14, 3, false), (14, 4, 1, false), (14, 15, 4, false),
        (15, 5, 1, false), (15, 20, 5, false), (16, 7, 5, false), (16, 17, 3, false),
        (17, 8, 5, false), (18, 21, 1, false), (18, 10, 4, false), (19, 12, 3, false),
        (20, 6, 1, false), (21, 19, 4, false),
    ];
    let matrix = standard_system(StandardFamily::F(5)).expect("valid");
    BundledFigure {
        id: "F5module".into(),
        system: params(matrix, vec![2; 5], 4),
        diagram: numbered(21, &edges),
    }
}

/// Sixteen node module for H_5 (m_12 = 5), `d = 2s`, k = 4.
pub fn h5_module() -> BundledFigure {
    #[rustfmt::skip]
    let edges = [
        (1, 2, 1, false), (2, 3, 2, false), (3, 4, 1, false), (3, 11, 3, false),
        (4, 5, 3, false), (5, 6, 2, false), (5, 13, 4, false), (6, 7, 4, false),
        (7, 8, 5, false), (7, 16, 3, false), (8, 9, 3, false), (9, 10, 4, false),
        (10, 1, 2, true), (11, 5, 1, false), (11, 12, 4, false), (12, 13, 1, false),
        (12, 14, 5, false), (13, 7, 2, false), (13, 15, 5, false), (14, 15, 1, false),
        (15, 8, 2, false), (16, 9, 5, false),
    ];
    let matrix = standard_system(StandardFamily::H(5)).expect("valid");
    BundledFigure {
        id: "H5module".into(),
        system: params(matrix, vec![2; 5], 4),
        diagram: numbered(16, &edges),
    }
}

/// Three node module for G29 with generators s, t, u, v = 1, 2, 3, 4.
pub fn g29_module(k: Cutoff) -> BundledFigure {
    let d = ModuleDiagram::new(
        &["A", "B", "C"],
        "A",
        &[("A", "B", 2, false), ("B", "C", 3, false), ("C", "A", 4, true)],
    );
    BundledFigure { id: "G29module".into(), system: FigureSystem::G29 { d: vec![2; 4], k }, diagram: d }
}

/// Every figure at the parameters it is shipped with.
pub fn bundled_figures() -> Vec<BundledFigure> {
    vec![
        fig2a(2),
        fig2a(3),
        fig2b(2),
        fig2b(3),
        cycle_figure(3),
        fig6(2),
        fig6(3),
        fig_s3(1),
        fig_s3(2),
        f5_module(),
        h5_module(),
        g29_module(Cutoff::Finite(3)),
    ]
}

/// A bundled figure that verifies as a witness for exactly this presentation.
pub fn witness_for(pres: &GeneralPresentation) -> Option<String> {
    bundled_figures()
        .into_iter()
        .filter(|f| f.system.presentation().generators == pres.generators)
        .find(|f| verify(&f.diagram, pres).is_ok_and(|r| r.is_witness))
        .map(|f| f.id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxsys::Relation;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn act_basics() {
        let d = ModuleDiagram::new(&["A", "B"], "A", &[("A", "B", 1, false)]);
        let cd = d.compile(1).unwrap();
        assert_eq!(cd.act((0, 0), &[]), Some((0, 0)));
        assert_eq!(cd.act((0, 0), &[1]), Some((1, 0)));
        assert_eq!(cd.act((1, 0), &[1]), None);
        assert_eq!(cd.act((0, 5), &[]), Some((0, 5)));
    }

    #[test]
    fn rightmost_letter_acts_first() {
        let fig = fig2a(2);
        let cd = fig.diagram.compile(3).unwrap();
        // s_β1 s_α (A) = B2; the other order is zero.
        assert_eq!(cd.act((0, 0), &[2, 1]).map(|(v, _)| cd.name(v).to_string()), Some("B2".into()));
        assert_eq!(cd.act((0, 0), &[1, 2]), None);
    }

    #[test]
    fn structural_errors() {
        let dup = ModuleDiagram::new(&["A", "B"], "A", &[("A", "B", 1, false), ("A", "A", 1, false)]);
        assert!(matches!(dup.compile(1), Err(Error::Structure(_))));
        let bad = ModuleDiagram::new(&["A"], "A", &[("A", "Z", 1, false)]);
        assert!(matches!(bad.compile(1), Err(Error::Structure(_))));
        let nostart = ModuleDiagram::new(&["A"], "Q", &[]);
        assert!(nostart.compile(1).is_err());
    }

    #[test]
    fn empty_diagram() {
        let d = ModuleDiagram::new(&["A"], "A", &[]);
        let pres = g29_presentation(&[2; 4], Cutoff::Finite(3)).unwrap();
        let r = verify(&d, &pres).unwrap();
        assert!(r.relations_ok);
        assert!(!r.is_witness);
        assert!(growth_certificate(&d, &pres, 5).is_err());
    }

    #[test]
    fn g29_all_cutoffs() {
        let fig = g29_module(Cutoff::Finite(3));
        for k in 3..=7 {
            let pres = g29_presentation(&[2; 4], Cutoff::Finite(k)).unwrap();
            let r = verify(&fig.diagram, &pres).unwrap();
            assert!(r.relations_ok && r.is_witness, "k={k}: {:?}", r.failures);
        }
        let pres = fig.system.presentation();
        let cert = growth_certificate(&fig.diagram, &pres, 10).unwrap();
        assert_eq!(cert, w("4 3 2 4 3 2 4 3 2 4 3 2"));
        assert!(growth_certificate(&fig.diagram, &pres, 0).unwrap().is_empty());
    }

    /// Figures whose published diagram fails a commutation relation.
    const DEFECTIVE: [&str; 2] = ["F5module", "H5module"];

    #[test]
    fn published_defects() {
        let summary = |fig: BundledFigure| -> Vec<(String, String)> {
            let r = verify(&fig.diagram, &fig.system.presentation()).unwrap();
            r.failures.into_iter().map(|f| (f.node, f.relation)).collect()
        };
        let s = |a: &str, b: &str| (a.to_string(), b.to_string());
        assert_eq!(summary(f5_module()), vec![s("4", "2 4 = 4 2"), s("17", "2 5 = 5 2")]);
        assert_eq!(summary(h5_module()), vec![s("9", "2 4 = 4 2")]);
    }

    #[test]
    fn only_added_plus_markers_survive_mutation() {
        for fig in bundled_figures() {
            let pres = fig.system.presentation();
            for m in random_mutations(&fig.diagram, pres.generators, 20, 7) {
                if survives(&m.apply(&fig.diagram), &pres) {
                    let Mutation::FlipPlus { edge } = m else { panic!("{}: {m:?} survived", fig.id) };
                    assert!(!fig.diagram.edges[edge].plus, "{}", fig.id);
                }
            }
        }
    }

    #[test]
    fn every_figure_is_a_witness() {
        for fig in bundled_figures().into_iter().filter(|f| !DEFECTIVE.contains(&f.id.as_str())) {
            let pres = fig.system.presentation();
            let r = verify(&fig.diagram, &pres).unwrap();
            assert!(r.relations_ok, "{}: {:?}", fig.id, &r.failures[..r.failures.len().min(5)]);
            assert!(r.is_witness, "{}: {}", fig.id, r.details);
            let cd = fig.diagram.compile(pres.generators).unwrap();
            for n in [1, 37, 100] {
                let cert = growth_certificate(&fig.diagram, &pres, n).unwrap();
                assert!(cert.len() >= n);
                let (_, grade) = cd.act((cd.start(), 0), cert.as_slice()).expect("nonzero");
                assert!(grade >= 1, "{}", fig.id);
            }
        }
    }

    #[test]
    fn figure_shapes() {
        let f5 = f5_module();
        assert_eq!(f5.diagram.nodes.len(), 21);
        let FigureSystem::Coxeter(p) = &f5.system else { panic!() };
        assert_eq!(p.matrix.m(2, 3), Some(4));
        assert_eq!(h5_module().diagram.nodes.len(), 16);
        let FigureSystem::Coxeter(p) = fig2a(2).system else { panic!() };
        assert_eq!(p.d, vec![3, 2, 3]);
        assert_eq!((p.matrix.m(1, 2), p.matrix.m(2, 3), p.matrix.m(1, 3)), (Some(3), Some(3), Some(2)));
    }

    #[test]
    fn certificate_repeats_cycle() {
        let fig = fig6(3);
        let pres = fig.system.presentation();
        let cd = fig.diagram.compile(pres.generators).unwrap();
        let (prefix, cycle, _) = cd.plus_cycle().unwrap();
        assert!(prefix.is_empty());
        let cert = growth_certificate(&fig.diagram, &pres, 50).unwrap();
        assert_eq!(cert.len(), 50usize.div_ceil(cycle.len()) * cycle.len());
    }

    #[test]
    fn grade_equivariance() {
        let fig = f5_module();
        let cd = fig.diagram.compile(5).unwrap();
        let words = [w("1 2 3"), w("2 1 1"), w("5 4 3 2 1"), w("2 1 2 1 3")];
        for v in 0..cd.len() {
            for word in &words {
                let base = cd.act((v, 0), word.as_slice());
                let shifted = cd.act((v, 7), word.as_slice());
                assert_eq!(base.map(|(u, r)| (u, r + 7)), shifted);
            }
        }
    }

    #[test]
    fn failing_relation_reported() {
        let d = ModuleDiagram::new(&["A", "B"], "A", &[("A", "B", 1, false), ("B", "A", 1, true)]);
        let pres = GeneralPresentation {
            generators: 2,
            d: vec![2, 2],
            kept: vec![Relation { lhs: w("1 2"), rhs: w("2 1") }],
            killed: vec![w("1 1"), w("2 2")],
        };
        let r = verify(&d, &pres).unwrap();
        assert!(!r.relations_ok);
        assert!(!r.is_witness);
        assert_eq!(r.failures.len(), 2);
    }

    #[test]
    fn witness_lookup() {
        for fig in bundled_figures().into_iter().filter(|f| !DEFECTIVE.contains(&f.id.as_str())) {
            assert!(witness_for(&fig.system.presentation()).is_some(), "{}", fig.id);
        }
    }
}
