//! Finite / affine / indefinite classification of Coxeter graphs, the
//! classical family tables, and the minimal-infinite-subset sweep.
//!
//! A diagram is Finite iff its cosine matrix is positive definite, Affine
//! iff it is positive semidefinite with corank 1 per affine component, and
//! Indefinite otherwise (the standard finiteness criterion).

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{CoxeterGraph, Label, VertexSet};
use crate::matrix::{cosine_matrix, inertia, CosineMatrix, Inertia, MatrixError, MatrixMode};

/// Default cap on the rank of graphs accepted by the subset sweep.
pub const DEFAULT_RANK_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("rank {rank} exceeds the configured cap of {cap}")]
    RankCapExceeded { rank: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Finite => write!(f, "Finite"),
            Kind::Affine => write!(f, "Affine"),
            Kind::Indefinite => write!(f, "Indefinite"),
        }
    }
}

fn kind_of_inertia(ine: Inertia) -> Kind {
    if ine.negative > 0 {
        Kind::Indefinite
    } else if ine.zero > 0 {
        Kind::Affine
    } else {
        Kind::Finite
    }
}

/// Verdict for one connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentVerdict {
    pub vertices: VertexSet,
    pub kind: Kind,
    pub family: Option<FamilyName>,
}

/// Verdict for a whole graph, with per-component detail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeVerdict {
    pub kind: Kind,
    pub components: Vec<ComponentVerdict>,
}

/// Options shared by the classification and hyperbolicity entry points.
#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub mode: MatrixMode,
    pub rank_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            mode: MatrixMode::Exact,
            rank_cap: DEFAULT_RANK_CAP,
        }
    }
}

/// Classify a graph from the inertia of its cosine matrix, per connected
/// component. The group is infinite iff the kind is not Finite.
pub fn group_type(g: &CoxeterGraph) -> Result<TypeVerdict, ClassifyError> {
    group_type_with(g, MatrixMode::Exact)
}

pub fn group_type_with(g: &CoxeterGraph, mode: MatrixMode) -> Result<TypeVerdict, ClassifyError> {
    let m = cosine_matrix(g, mode)?;
    Ok(group_type_of_matrix(g, &m))
}

fn group_type_of_matrix(g: &CoxeterGraph, m: &CosineMatrix) -> TypeVerdict {
    let mut components = Vec::new();
    let mut overall = Kind::Finite;
    for comp in g.components() {
        let ine = inertia(&m.principal_submatrix(comp));
        let kind = kind_of_inertia(ine);
        let family = g
            .induced_subgraph(comp)
            .ok()
            .and_then(|sub| identify_family(&sub));
        components.push(ComponentVerdict {
            vertices: comp,
            kind,
            family,
        });
        overall = match (overall, kind) {
            (_, Kind::Indefinite) | (Kind::Indefinite, _) => Kind::Indefinite,
            (_, Kind::Affine) | (Kind::Affine, _) => Kind::Affine,
            _ => Kind::Finite,
        };
    }
    TypeVerdict {
        kind: overall,
        components,
    }
}

/// Names of the classical connected finite and affine diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
    AffineA(usize),
    AffineB(usize),
    AffineC(usize),
    AffineD(usize),
    AffineE6,
    AffineE7,
    AffineE8,
    AffineF4,
    AffineG2,
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // affine names carry a combining tilde, e.g. Ã_2
        match self {
            FamilyName::A(n) => write!(f, "A_{n}"),
            FamilyName::B(n) => write!(f, "B_{n}"),
            FamilyName::D(n) => write!(f, "D_{n}"),
            FamilyName::E6 => write!(f, "E_6"),
            FamilyName::E7 => write!(f, "E_7"),
            FamilyName::E8 => write!(f, "E_8"),
            FamilyName::F4 => write!(f, "F_4"),
            FamilyName::H3 => write!(f, "H_3"),
            FamilyName::H4 => write!(f, "H_4"),
            FamilyName::I2(m) => write!(f, "I_2({m})"),
            FamilyName::AffineA(n) => write!(f, "A\u{303}_{n}"),
            FamilyName::AffineB(n) => write!(f, "B\u{303}_{n}"),
            FamilyName::AffineC(n) => write!(f, "C\u{303}_{n}"),
            FamilyName::AffineD(n) => write!(f, "D\u{303}_{n}"),
            FamilyName::AffineE6 => write!(f, "E\u{303}_6"),
            FamilyName::AffineE7 => write!(f, "E\u{303}_7"),
            FamilyName::AffineE8 => write!(f, "E\u{303}_8"),
            FamilyName::AffineF4 => write!(f, "F\u{303}_4"),
            FamilyName::AffineG2 => write!(f, "G\u{303}_2"),
        }
    }
}

impl FamilyName {
    /// Whether the family is finite (as opposed to affine).
    pub fn is_finite(self) -> bool {
        !matches!(
            self,
            FamilyName::AffineA(_)
                | FamilyName::AffineB(_)
                | FamilyName::AffineC(_)
                | FamilyName::AffineD(_)
                | FamilyName::AffineE6
                | FamilyName::AffineE7
                | FamilyName::AffineE8
                | FamilyName::AffineF4
                | FamilyName::AffineG2
        )
    }

    /// The canonical name of the same diagram (I_2(3) = A_2, I_2(4) = B_2).
    pub fn canonical(self) -> FamilyName {
        match self {
            FamilyName::I2(3) => FamilyName::A(2),
            FamilyName::I2(4) => FamilyName::B(2),
            other => other,
        }
    }

    /// Build the diagram of the family.
    pub fn diagram(self) -> CoxeterGraph {
        fn chain(labels: &[u32]) -> CoxeterGraph {
            let mut g = CoxeterGraph::new(labels.len() + 1);
            for (i, &m) in labels.iter().enumerate() {
                g.set_label(i + 1, i + 2, Label::Finite(m)).unwrap();
            }
            g
        }
        // path 1..=(n−1) plus a leaf n on `attach`, all labels 3
        fn branched(n: usize, attach: usize) -> CoxeterGraph {
            let mut g = CoxeterGraph::new(n);
            for i in 1..n - 1 {
                g.set_label(i, i + 1, Label::Finite(3)).unwrap();
            }
            g.set_label(attach, n, Label::Finite(3)).unwrap();
            g
        }
        match self {
            FamilyName::A(n) => {
                if n == 1 {
                    CoxeterGraph::new(1)
                } else {
                    chain(&vec![3; n - 1])
                }
            }
            FamilyName::B(n) => {
                assert!(n >= 2);
                let mut labels = vec![3; n - 1];
                labels[n - 2] = 4;
                chain(&labels)
            }
            FamilyName::D(n) => {
                assert!(n >= 4);
                branched(n, n - 2)
            }
            FamilyName::E6 => branched(6, 3),
            FamilyName::E7 => branched(7, 3),
            FamilyName::E8 => branched(8, 3),
            FamilyName::F4 => chain(&[3, 4, 3]),
            FamilyName::H3 => chain(&[3, 5]),
            FamilyName::H4 => chain(&[3, 3, 5]),
            FamilyName::I2(m) => {
                assert!(m >= 3);
                chain(&[m])
            }
            FamilyName::AffineA(n) => {
                if n == 1 {
                    let mut g = CoxeterGraph::new(2);
                    g.set_label(1, 2, Label::Infinite).unwrap();
                    g
                } else {
                    // (n+1)-cycle of label-3 edges
                    let mut g = CoxeterGraph::new(n + 1);
                    for i in 1..=n {
                        g.set_label(i, i + 1, Label::Finite(3)).unwrap();
                    }
                    g.set_label(1, n + 1, Label::Finite(3)).unwrap();
                    g
                }
            }
            FamilyName::AffineB(n) => {
                assert!(n >= 3);
                // fork leaves 1, 2 on vertex 3; spine ends with a label-4 edge
                let mut g = CoxeterGraph::new(n + 1);
                g.set_label(1, 3, Label::Finite(3)).unwrap();
                g.set_label(2, 3, Label::Finite(3)).unwrap();
                for i in 3..n {
                    g.set_label(i, i + 1, Label::Finite(3)).unwrap();
                }
                g.set_label(n, n + 1, Label::Finite(4)).unwrap();
                g
            }
            FamilyName::AffineC(n) => {
                assert!(n >= 2);
                let mut labels = vec![3; n];
                labels[0] = 4;
                labels[n - 1] = 4;
                chain(&labels)
            }
            FamilyName::AffineD(n) => {
                assert!(n >= 4);
                // forks at both ends of the spine 3..(n−1)
                let mut g = CoxeterGraph::new(n + 1);
                g.set_label(1, 3, Label::Finite(3)).unwrap();
                g.set_label(2, 3, Label::Finite(3)).unwrap();
                for i in 3..n - 1 {
                    g.set_label(i, i + 1, Label::Finite(3)).unwrap();
                }
                g.set_label(n - 1, n, Label::Finite(3)).unwrap();
                g.set_label(n - 1, n + 1, Label::Finite(3)).unwrap();
                g
            }
            FamilyName::AffineE6 => {
                // arms of length 2, 2, 2 from the branch vertex 3
                let mut g = CoxeterGraph::new(7);
                for i in 1..=4 {
                    g.set_label(i, i + 1, Label::Finite(3)).unwrap();
                }
                g.set_label(3, 6, Label::Finite(3)).unwrap();
                g.set_label(6, 7, Label::Finite(3)).unwrap();
                g
            }
            FamilyName::AffineE7 => {
                // E7 with the affine node extending the long arm: arms 1, 3, 3
                let mut g = CoxeterGraph::new(8);
                for i in 1..=6 {
                    g.set_label(i, i + 1, Label::Finite(3)).unwrap();
                }
                g.set_label(4, 8, Label::Finite(3)).unwrap();
                g
            }
            FamilyName::AffineE8 => {
                // arms 1, 2, 5
                let mut g = CoxeterGraph::new(9);
                for i in 1..=7 {
                    g.set_label(i, i + 1, Label::Finite(3)).unwrap();
                }
                g.set_label(3, 9, Label::Finite(3)).unwrap();
                g
            }
            FamilyName::AffineF4 => chain(&[3, 3, 4, 3]),
            FamilyName::AffineG2 => chain(&[3, 6]),
        }
    }
}

/// Match a connected diagram against the classical finite and affine
/// tables; `None` if it is not classical (or not connected).
pub fn identify_family(g: &CoxeterGraph) -> Option<FamilyName> {
    let n = g.rank();
    if n == 1 {
        return Some(FamilyName::A(1));
    }
    if !g.is_connected() {
        return None;
    }
    let edges: Vec<((usize, usize), Label)> = g.labeled_pairs().collect();
    let m = edges.len();

    // ∞ appears only in Ã_1
    if edges.iter().any(|&(_, l)| l == Label::Infinite) {
        if n == 2 && m == 1 {
            return Some(FamilyName::AffineA(1));
        }
        return None;
    }

    let mut degree = vec![0usize; n + 1];
    for &((i, j), _) in &edges {
        degree[i] += 1;
        degree[j] += 1;
    }

    if m == n {
        // a connected graph with n edges contains exactly one cycle; the
        // classical tables only allow the pure cycle Ã_{n−1}
        let all_deg2 = (1..=n).all(|v| degree[v] == 2);
        let all_3 = edges.iter().all(|&(_, l)| l == Label::Finite(3));
        if all_deg2 && all_3 && n >= 3 {
            return Some(FamilyName::AffineA(n - 1));
        }
        return None;
    }
    if m != n - 1 {
        return None;
    }

    // trees from here on
    let max_deg = (1..=n).map(|v| degree[v]).max().unwrap();
    if max_deg >= 4 {
        // D̃_4 is the only classical diagram with a degree-4 vertex
        let star = n == 5
            && (1..=n).filter(|&v| degree[v] == 4).count() == 1
            && edges.iter().all(|&(_, l)| l == Label::Finite(3));
        return if star { Some(FamilyName::AffineD(4)) } else { None };
    }

    let branch_vertices: Vec<usize> = (1..=n).filter(|&v| degree[v] == 3).collect();
    match branch_vertices.len() {
        0 => identify_path(g, n),
        1 => identify_single_branch(g, n, branch_vertices[0]),
        2 => identify_double_fork(g, n, branch_vertices[0], branch_vertices[1]),
        _ => None,
    }
}

fn path_label_sequence(g: &CoxeterGraph, n: usize) -> Vec<u32> {
    // walk from the smallest endpoint
    let masks = g.adjacency_masks();
    let start = (1..=n).find(|&v| masks[v].len() == 1).unwrap();
    let mut seq = Vec::with_capacity(n - 1);
    let mut prev = 0usize;
    let mut cur = start;
    for _ in 0..n - 1 {
        let next = masks[cur].iter().find(|&u| u != prev).unwrap();
        match g.label(cur, next) {
            Label::Finite(m) => seq.push(m),
            Label::Infinite => unreachable!("∞ handled before path classification"),
        }
        prev = cur;
        cur = next;
    }
    seq
}

fn identify_path(g: &CoxeterGraph, n: usize) -> Option<FamilyName> {
    let seq = path_label_sequence(g, n);
    let non3: Vec<(usize, u32)> = seq
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l != 3)
        .map(|(i, &l)| (i, l))
        .collect();
    let last = seq.len() - 1;
    match non3.as_slice() {
        [] => Some(FamilyName::A(n)),
        [(pos, 4)] => {
            if *pos == 0 || *pos == last {
                Some(FamilyName::B(n))
            } else if n == 4 && *pos == 1 {
                Some(FamilyName::F4)
            } else if n == 5 && (*pos == 1 || *pos == 2) {
                Some(FamilyName::AffineF4)
            } else {
                None
            }
        }
        [(pos, 5)] if *pos == 0 || *pos == last => match n {
            2 => Some(FamilyName::I2(5)),
            3 => Some(FamilyName::H3),
            4 => Some(FamilyName::H4),
            _ => None,
        },
        [(pos, 6)] if *pos == 0 || *pos == last => match n {
            2 => Some(FamilyName::I2(6)),
            3 => Some(FamilyName::AffineG2),
            _ => None,
        },
        [(_, label)] if n == 2 => Some(FamilyName::I2(*label)),
        [(0, 4), (pos, 4)] if *pos == last => Some(FamilyName::AffineC(n - 1)),
        _ => None,
    }
}

// labels along each arm, read outward from the branch vertex
fn arm_labels(g: &CoxeterGraph, branch: usize) -> Option<Vec<Vec<u32>>> {
    let masks = g.adjacency_masks();
    let mut arms = Vec::new();
    for first in masks[branch].iter() {
        let mut labels = Vec::new();
        let mut prev = branch;
        let mut cur = first;
        loop {
            match g.label(prev, cur) {
                Label::Finite(m) => labels.push(m),
                Label::Infinite => return None,
            }
            let next: Vec<usize> = masks[cur].iter().filter(|&u| u != prev).collect();
            match next.len() {
                0 => break,
                1 => {
                    prev = cur;
                    cur = next[0];
                }
                _ => return None, // second branch vertex; not an arm
            }
        }
        arms.push(labels);
    }
    arms.sort_by_key(|a| (a.len(), a.clone()));
    Some(arms)
}

fn identify_single_branch(g: &CoxeterGraph, n: usize, branch: usize) -> Option<FamilyName> {
    let arms = arm_labels(g, branch)?;
    if arms.len() != 3 {
        return None;
    }
    let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
    let all3 = arms.iter().all(|a| a.iter().all(|&l| l == 3));
    if all3 {
        return match (lens[0], lens[1], lens[2]) {
            (1, 1, x) => Some(FamilyName::D(x + 3)),
            (1, 2, 2) => Some(FamilyName::E6),
            (1, 2, 3) => Some(FamilyName::E7),
            (1, 2, 4) => Some(FamilyName::E8),
            (2, 2, 2) => Some(FamilyName::AffineE6),
            (1, 3, 3) => Some(FamilyName::AffineE7),
            (1, 2, 5) => Some(FamilyName::AffineE8),
            _ => None,
        };
    }
    // B̃: two label-3 leaf arms plus a 3-chain arm ending in a 4
    if lens[0] == 1 && lens[1] == 1 && arms[0] == [3] && arms[1] == [3] {
        let spine = &arms[2];
        let t = spine.len();
        if spine[..t - 1].iter().all(|&l| l == 3) && spine[t - 1] == 4 {
            return Some(FamilyName::AffineB(n - 1));
        }
    }
    None
}

fn identify_double_fork(g: &CoxeterGraph, n: usize, b1: usize, b2: usize) -> Option<FamilyName> {
    // D̃_{n−1}: label-3 forks at both ends of a label-3 spine
    let masks = g.adjacency_masks();
    let deg = |v: usize| masks[v].len();
    for b in [b1, b2] {
        let leaves: Vec<usize> = masks[b].iter().filter(|&u| deg(u) == 1).collect();
        if leaves.len() != 2 {
            return None;
        }
        if leaves.iter().any(|&u| g.label(b, u) != Label::Finite(3)) {
            return None;
        }
    }
    // walk the spine from b1 to b2 over degree-2 vertices
    let mut prev = b1;
    let mut cur = masks[b1].iter().find(|&u| deg(u) != 1)?;
    if g.label(b1, cur) != Label::Finite(3) {
        return None;
    }
    while cur != b2 {
        if deg(cur) != 2 {
            return None;
        }
        let next = masks[cur].iter().find(|&u| u != prev).unwrap();
        if g.label(cur, next) != Label::Finite(3) {
            return None;
        }
        prev = cur;
        cur = next;
    }
    Some(FamilyName::AffineD(n - 1))
}

/// A minimal vertex set inducing an infinite subgroup: the induced kind is
/// not Finite while every proper subset induces a finite one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimalInfinite {
    pub vertices: VertexSet,
    pub kind: Kind,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub subsets_examined: usize,
    pub minimal_infinite_found: usize,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub sets: Vec<MinimalInfinite>,
    pub stats: SweepStats,
}

/// All minimal infinite vertex sets, by a level-wise sweep over connected
/// finite sets: a candidate is examined only when all its one-smaller
/// subsets are finite (a minimal affine or indefinite diagram has every
/// proper subdiagram finite), so positive-definite pruning is exact.
pub fn minimal_infinite_subsets(
    g: &CoxeterGraph,
    opts: &ClassifyOptions,
) -> Result<SweepResult, ClassifyError> {
    let n = g.rank();
    if n > opts.rank_cap {
        return Err(ClassifyError::RankCapExceeded {
            rank: n,
            cap: opts.rank_cap,
        });
    }
    let matrix = cosine_matrix(g, opts.mode)?;
    let masks = g.adjacency_masks();

    let mut stats = SweepStats::default();
    let mut minimal: Vec<MinimalInfinite> = Vec::new();
    // all connected finite sets found so far, any size
    let mut finite_all: HashSet<VertexSet> = HashSet::new();
    // connected finite sets of the current size
    let mut frontier: Vec<VertexSet> = Vec::new();
    for v in 1..=n {
        let s = VertexSet::singleton(v);
        finite_all.insert(s);
        frontier.push(s);
    }
    stats.subsets_examined = n;

    let is_finite_set = |s: VertexSet, finite_all: &HashSet<VertexSet>| -> bool {
        // finite iff every connected component is a known finite set
        g.components_within(s)
            .iter()
            .all(|c| finite_all.contains(c))
    };

    while !frontier.is_empty() {
        let mut next: Vec<VertexSet> = Vec::new();
        let mut seen: HashSet<VertexSet> = HashSet::new();
        for &base in &frontier {
            let mut neighborhood = VertexSet::EMPTY;
            for v in base.iter() {
                neighborhood = neighborhood.union(masks[v]);
            }
            for v in neighborhood.difference(base).iter() {
                let cand = base.with(v);
                if !seen.insert(cand) {
                    continue;
                }
                stats.subsets_examined += 1;
                let all_deletions_finite = cand
                    .iter()
                    .all(|u| is_finite_set(cand.without(u), &finite_all));
                if !all_deletions_finite {
                    // contains an infinite proper subset: infinite, not minimal
                    continue;
                }
                let ine = inertia(&matrix.principal_submatrix(cand));
                match kind_of_inertia(ine) {
                    Kind::Finite => {
                        finite_all.insert(cand);
                        next.push(cand);
                    }
                    kind => minimal.push(MinimalInfinite {
                        vertices: cand,
                        kind,
                    }),
                }
            }
        }
        next.sort();
        frontier = next;
    }

    minimal.sort_by_key(|m| (m.vertices.len(), m.vertices.to_vec()));
    stats.minimal_infinite_found = minimal.len();
    Ok(SweepResult {
        sets: minimal,
        stats,
    })
}

/// A vertex set inducing an affine diagram (a "parabolic subgraph"), if one
/// exists: the smallest minimal infinite subset of Affine kind.
pub fn has_parabolic_subgraph(
    g: &CoxeterGraph,
    opts: &ClassifyOptions,
) -> Result<Option<VertexSet>, ClassifyError> {
    let sweep = minimal_infinite_subsets(g, opts)?;
    Ok(sweep
        .sets
        .iter()
        .find(|m| m.kind == Kind::Affine)
        .map(|m| m.vertices))
}

/// Memoized per-subset kinds, shared by tests and sweeps.
pub fn subset_kind_cache(
    g: &CoxeterGraph,
    mode: MatrixMode,
) -> Result<impl FnMut(VertexSet) -> Kind + '_, ClassifyError> {
    let matrix = cosine_matrix(g, mode)?;
    let mut cache: HashMap<VertexSet, Kind> = HashMap::new();
    Ok(move |s: VertexSet| -> Kind {
        if let Some(&k) = cache.get(&s) {
            return k;
        }
        let k = kind_of_inertia(inertia(&matrix.principal_submatrix(s)));
        cache.insert(s, k);
        k
    })
}
