//! Coxeter graphs: labeled-pair data model, text and JSON formats, induced
//! subgraphs, the unjoined predicate, and the Σ_k family generator.
//!
//! Vertices are numbered 1..=rank. Pairs absent from the label map commute
//! (label 2); an "edge" is any pair with label ≥ 3 or ∞.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported rank (vertex sets are 64-bit masks, bit 0 unused).
pub const MAX_RANK: usize = 63;

/// A Coxeter label m_st ∈ {2, 3, …} ∪ {∞}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    /// Edges of the graph are the pairs with label ≥ 3 (or ∞).
    pub fn is_edge(self) -> bool {
        self != Label::Finite(2)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid label {0}: Coxeter labels are 2, 3, ... or inf")]
    InvalidLabel(i64),
    #[error("vertex {vertex} out of range 1..={rank}")]
    VertexOutOfRange { vertex: i64, rank: usize },
    #[error("self-pair at vertex {0}")]
    SelfPair(usize),
    #[error("conflicting labels declared for pair ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("vertex sets overlap")]
    OverlappingSets,
}

/// A parse failure, with the 1-based line it occurred on.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("missing 'rank N' declaration")]
    MissingRank,
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        kind: ParseErrorKind::Syntax(message.into()),
    }
}

/// A subset of the vertices 1..=rank, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_RANK).contains(&v));
        VertexSet(1 << v)
    }

    pub fn full(rank: usize) -> Self {
        debug_assert!(rank <= MAX_RANK);
        let mut s = VertexSet::EMPTY;
        for v in 1..=rank {
            s = s.with(v);
        }
        s
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 & (1 << v) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min_vertex(self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Ascending vertex iterator.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s = s.with(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Coxeter graph: a rank and a symmetric label map over vertex pairs.
#[derive(Clone)]
pub struct CoxeterGraph {
    rank: usize,
    labels: BTreeMap<(usize, usize), Label>,
    names: Option<Vec<String>>,
}

impl PartialEq for CoxeterGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.labels == other.labels
    }
}

impl Eq for CoxeterGraph {}

impl fmt::Debug for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGraph(rank {}", self.rank)?;
        for (&(i, j), label) in &self.labels {
            write!(f, ", {i}-{j}:{label}")?;
        }
        write!(f, ")")
    }
}

impl CoxeterGraph {
    pub fn new(rank: usize) -> Self {
        assert!(
            (1..=MAX_RANK).contains(&rank),
            "rank must be between 1 and {MAX_RANK}"
        );
        CoxeterGraph {
            rank,
            labels: BTreeMap::new(),
            names: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.rank)
    }

    /// Set m_ij. Label 2 erases the pair; overwrites silently.
    pub fn set_label(&mut self, i: usize, j: usize, label: Label) -> Result<(), GraphError> {
        let (i, j) = self.check_pair(i, j)?;
        if let Label::Finite(m) = label {
            if m < 2 {
                return Err(GraphError::InvalidLabel(m as i64));
            }
        }
        if label.is_edge() {
            self.labels.insert((i, j), label);
        } else {
            self.labels.remove(&(i, j));
        }
        Ok(())
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(usize, usize), GraphError> {
        for v in [i, j] {
            if v < 1 || v > self.rank {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v as i64,
                    rank: self.rank,
                });
            }
        }
        if i == j {
            return Err(GraphError::SelfPair(i));
        }
        Ok((i.min(j), i.max(j)))
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        debug_assert!(i != j && i >= 1 && j >= 1 && i <= self.rank && j <= self.rank);
        let key = (i.min(j), i.max(j));
        *self.labels.get(&key).unwrap_or(&Label::Finite(2))
    }

    /// Pairs with label ≥ 3 (or ∞), ascending.
    pub fn labeled_pairs(&self) -> impl Iterator<Item = ((usize, usize), Label)> + '_ {
        self.labels.iter().map(|(&p, &l)| (p, l))
    }

    pub fn labeled_pair_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v - 1].clone(),
            None => v.to_string(),
        }
    }

    pub fn set_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.rank);
        self.names = Some(names);
    }

    /// Neighbors of v (pairs with label ≥ 3).
    pub fn adjacency(&self, v: usize) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for u in 1..=self.rank {
            if u != v && self.label(u, v).is_edge() {
                s = s.with(u);
            }
        }
        s
    }

    /// Adjacency masks indexed by vertex (index 0 unused).
    pub fn adjacency_masks(&self) -> Vec<VertexSet> {
        let mut masks = vec![VertexSet::EMPTY; self.rank + 1];
        for &(i, j) in self.labels.keys() {
            masks[i] = masks[i].with(j);
            masks[j] = masks[j].with(i);
        }
        masks
    }

    /// Connected components over the edges, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// Connected components of the induced subgraph on `within`.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let masks = self.adjacency_masks();
        let mut remaining = within;
        let mut out = Vec::new();
        while let Some(start) = remaining.min_vertex() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = vec![start];
            while let Some(v) = frontier.pop() {
                for u in masks[v].intersection(within).iter() {
                    if !comp.contains(u) {
                        comp = comp.with(u);
                        frontier.push(u);
                    }
                }
            }
            remaining = remaining.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// True iff every pair (x, y) with x ∈ a, y ∈ b has label exactly 2.
    pub fn unjoined(&self, a: VertexSet, b: VertexSet) -> Result<bool, GraphError> {
        if a.is_empty() || b.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        if !a.is_disjoint(b) {
            return Err(GraphError::OverlappingSets);
        }
        self.check_subset(a)?;
        self.check_subset(b)?;
        for x in a.iter() {
            if !self.adjacency(x).is_disjoint(b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_subset(&self, s: VertexSet) -> Result<(), GraphError> {
        if !s.is_subset(self.vertices()) {
            let v = s.difference(self.vertices()).min_vertex().unwrap();
            return Err(GraphError::VertexOutOfRange {
                vertex: v as i64,
                rank: self.rank,
            });
        }
        Ok(())
    }

    /// Restriction to `s`, vertices renumbered 1..|s| in ascending order;
    /// original numbering is kept in vertex names.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<CoxeterGraph, GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        self.check_subset(s)?;
        let old: Vec<usize> = s.to_vec();
        let mut g = CoxeterGraph::new(old.len());
        let names = old.iter().map(|&v| self.vertex_name(v)).collect();
        g.set_names(names);
        for (a, &va) in old.iter().enumerate() {
            for (b, &vb) in old.iter().enumerate().skip(a + 1) {
                let label = self.label(va, vb);
                if label.is_edge() {
                    g.set_label(a + 1, b + 1, label).unwrap();
                }
            }
        }
        Ok(g)
    }

    /// Parse the line-based text format.
    pub fn parse(text: &str) -> Result<CoxeterGraph, ParseError> {
        let mut graph: Option<CoxeterGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let directive = tokens.next().unwrap();
            match directive {
                "rank" => {
                    if graph.is_some() {
                        return Err(syntax(line_no, "duplicate rank declaration"));
                    }
                    let n: i64 = tokens
                        .next()
                        .ok_or_else(|| syntax(line_no, "rank requires a value"))?
                        .parse()
                        .map_err(|_| syntax(line_no, "rank must be an integer"))?;
                    if !(1..=MAX_RANK as i64).contains(&n) {
                        return Err(syntax(
                            line_no,
                            format!("rank must be between 1 and {MAX_RANK}"),
                        ));
                    }
                    graph = Some(CoxeterGraph::new(n as usize));
                }
                "edge" => {
                    let g = graph.as_mut().ok_or(ParseError {
                        line: line_no,
                        kind: ParseErrorKind::MissingRank,
                    })?;
                    let mut next_int = || -> Result<i64, ParseError> {
                        tokens
                            .next()
                            .ok_or_else(|| syntax(line_no, "edge requires 'edge I J M'"))?
                            .parse()
                            .map_err(|_| syntax(line_no, "edge vertices must be integers"))
                    };
                    let i = next_int()?;
                    let j = next_int()?;
                    let m_token = tokens
                        .next()
                        .ok_or_else(|| syntax(line_no, "edge requires 'edge I J M'"))?;
                    for v in [i, j] {
                        if v < 1 || v > g.rank as i64 {
                            return Err(ParseError {
                                line: line_no,
                                kind: GraphError::VertexOutOfRange {
                                    vertex: v,
                                    rank: g.rank,
                                }
                                .into(),
                            });
                        }
                    }
                    if i >= j {
                        return Err(syntax(line_no, "edge vertices must satisfy I < J"));
                    }
                    let label = if m_token == "inf" {
                        Label::Infinite
                    } else {
                        let m: i64 = m_token
                            .parse()
                            .map_err(|_| syntax(line_no, "edge label must be an integer or 'inf'"))?;
                        if m < 2 {
                            return Err(ParseError {
                                line: line_no,
                                kind: GraphError::InvalidLabel(m).into(),
                            });
                        }
                        Label::Finite(m as u32)
                    };
                    let (i, j) = (i as usize, j as usize);
                    let existing = g.labels.get(&(i, j)).copied().unwrap_or(Label::Finite(2));
                    if g.labels.contains_key(&(i, j)) && existing != label {
                        return Err(ParseError {
                            line: line_no,
                            kind: GraphError::DuplicateEdge(i, j).into(),
                        });
                    }
                    g.set_label(i, j, label).unwrap();
                }
                other => {
                    return Err(syntax(line_no, format!("unknown directive '{other}'")));
                }
            }
            if tokens.next().is_some() {
                return Err(syntax(line_no, "unexpected trailing tokens"));
            }
        }
        graph.ok_or(ParseError {
            line: 1,
            kind: ParseErrorKind::MissingRank,
        })
    }

    /// Serialize to the text format; `parse` round-trips it.
    pub fn to_text(&self) -> String {
        let mut out = format!("rank {}\n", self.rank);
        for (&(i, j), label) in &self.labels {
            out.push_str(&format!("edge {i} {j} {label}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let edges = self
            .labels
            .iter()
            .map(|(&(i, j), &label)| {
                let m = match label {
                    Label::Finite(m) => JsonLabel::Num(m as i64),
                    Label::Infinite => JsonLabel::Word("inf".to_string()),
                };
                (i as i64, j as i64, m)
            })
            .collect();
        let doc = JsonGraph {
            rank: self.rank as i64,
            edges,
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<CoxeterGraph, ParseError> {
        let doc: JsonGraph = serde_json::from_str(text).map_err(|e| ParseError {
            line: e.line().max(1),
            kind: ParseErrorKind::Syntax(e.to_string()),
        })?;
        let semantic = |kind: ParseErrorKind| ParseError { line: 1, kind };
        if !(1..=MAX_RANK as i64).contains(&doc.rank) {
            return Err(semantic(ParseErrorKind::Syntax(format!(
                "rank must be between 1 and {MAX_RANK}"
            ))));
        }
        let mut g = CoxeterGraph::new(doc.rank as usize);
        for (i, j, m) in doc.edges {
            for v in [i, j] {
                if v < 1 || v > g.rank as i64 {
                    return Err(semantic(
                        GraphError::VertexOutOfRange {
                            vertex: v,
                            rank: g.rank,
                        }
                        .into(),
                    ));
                }
            }
            if i == j {
                return Err(semantic(GraphError::SelfPair(i as usize).into()));
            }
            let label = match m {
                JsonLabel::Num(m) => {
                    if m < 2 {
                        return Err(semantic(GraphError::InvalidLabel(m).into()));
                    }
                    Label::Finite(m as u32)
                }
                JsonLabel::Word(w) if w == "inf" => Label::Infinite,
                JsonLabel::Word(w) => {
                    return Err(semantic(ParseErrorKind::Syntax(format!(
                        "edge label must be an integer or \"inf\", got \"{w}\""
                    ))));
                }
            };
            let (a, b) = (i.min(j) as usize, i.max(j) as usize);
            if let Some(&existing) = g.labels.get(&(a, b)) {
                if existing != label {
                    return Err(semantic(GraphError::DuplicateEdge(a, b).into()));
                }
            }
            g.set_label(a, b, label).unwrap();
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    rank: i64,
    edges: Vec<(i64, i64, JsonLabel)>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonLabel {
    Num(i64),
    Word(String),
}

/// The family Σ_k: k chain copies 3–3–3–5 whose first vertices (the hubs
/// 5c+1) form a complete graph with label-5 edges.
pub fn sigma_family(k: usize) -> CoxeterGraph {
    assert!(
        (1..=MAX_RANK / 5).contains(&k),
        "sigma_family supports 1 <= k <= {}",
        MAX_RANK / 5
    );
    let mut g = CoxeterGraph::new(5 * k);
    for c in 0..k {
        let base = 5 * c;
        for t in 1..=3 {
            g.set_label(base + t, base + t + 1, Label::Finite(3)).unwrap();
        }
        g.set_label(base + 4, base + 5, Label::Finite(5)).unwrap();
    }
    for a in 0..k {
        for b in a + 1..k {
            g.set_label(5 * a + 1, 5 * b + 1, Label::Finite(5)).unwrap();
        }
    }
    g
}

/// The hub vertices of Σ_k (5c+1 for c < k).
pub fn sigma_hubs(k: usize) -> VertexSet {
    (0..k).map(|c| 5 * c + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn vs(vals: &[usize]) -> VertexSet {
        vals.iter().copied().collect()
    }

    #[test]
    fn parse_a2() {
        let g = CoxeterGraph::parse("rank 2\nedge 1 2 3\n").unwrap();
        assert_eq!(g.rank(), 2);
        assert_eq!(g.label(1, 2), Label::Finite(3));
    }

    #[test]
    fn parse_sigma1() {
        let text = "rank 5\nedge 1 2 3\nedge 2 3 3\nedge 3 4 3\nedge 4 5 5\n";
        let g = CoxeterGraph::parse(text).unwrap();
        assert_eq!(g, sigma_family(1));
    }

    #[test]
    fn parse_errors() {
        let err = CoxeterGraph::parse("rank 2\nedge 1 2 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.kind, ParseErrorKind::Graph(GraphError::InvalidLabel(1)));

        let err = CoxeterGraph::parse("rank 2\nedge 1 3 3\n").unwrap_err();
        assert!(matches!(
            err.kind,
            ParseErrorKind::Graph(GraphError::VertexOutOfRange { vertex: 3, rank: 2 })
        ));

        let err = CoxeterGraph::parse("rank 3\nedge 1 2 3\nedge 1 2 4\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(
            err.kind,
            ParseErrorKind::Graph(GraphError::DuplicateEdge(1, 2))
        );
        // repeating the same label is fine
        assert!(CoxeterGraph::parse("rank 3\nedge 1 2 3\nedge 1 2 3\n").is_ok());

        let err = CoxeterGraph::parse("edge 1 2 3\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingRank);

        let err = CoxeterGraph::parse("# nothing\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingRank);

        let err = CoxeterGraph::parse("rank 2\nedge 2 1 3\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn parse_comments_and_inf() {
        let text = "# title\nrank 3   # three vertices\nedge 1 2 inf\nedge 2 3 2\n";
        let g = CoxeterGraph::parse(text).unwrap();
        assert_eq!(g.label(1, 2), Label::Infinite);
        assert_eq!(g.label(2, 3), Label::Finite(2));
        assert_eq!(g.labeled_pair_count(), 1);
    }

    #[test]
    fn sigma_family_structure() {
        for k in 1..=5 {
            let g = sigma_family(k);
            assert_eq!(g.rank(), 5 * k);
            assert_eq!(g.labeled_pair_count(), 4 * k + k * (k - 1) / 2);
            // hub pairs carry label 5
            for a in 0..k {
                for b in a + 1..k {
                    assert_eq!(g.label(5 * a + 1, 5 * b + 1), Label::Finite(5));
                }
            }
        }
        let s2 = sigma_family(2);
        assert_eq!(s2.label(1, 6), Label::Finite(5));
        assert_eq!(s2.label(2, 7), Label::Finite(2));
        let s3 = sigma_family(3);
        for (a, b) in [(1, 6), (1, 11), (6, 11)] {
            assert_eq!(s3.label(a, b), Label::Finite(5));
        }
    }

    #[test]
    fn hiding_hubs_leaves_k_h4_chains() {
        for k in 1..=4 {
            let g = sigma_family(k);
            let non_hubs = g.vertices().difference(sigma_hubs(k));
            let comps = g.components_within(non_hubs);
            assert_eq!(comps.len(), k);
            for comp in comps {
                assert_eq!(comp.len(), 4);
                let sub = g.induced_subgraph(comp).unwrap();
                // chain with labels 3, 3, 5
                assert_eq!(sub.labeled_pair_count(), 3);
                let labels: Vec<Label> = sub.labeled_pairs().map(|(_, l)| l).collect();
                assert_eq!(
                    labels,
                    vec![Label::Finite(3), Label::Finite(3), Label::Finite(5)]
                );
            }
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let g = sigma_family(1);
        let sub = g.induced_subgraph(vs(&[1, 2, 3, 4])).unwrap();
        assert_eq!(sub.rank(), 4);
        let labels: Vec<Label> = sub.labeled_pairs().map(|(_, l)| l).collect();
        assert_eq!(labels, vec![Label::Finite(3); 3]);
        assert_eq!(sub.vertex_name(1), "1");

        assert_eq!(
            g.induced_subgraph(VertexSet::EMPTY),
            Err(GraphError::EmptySubset)
        );
    }

    #[test]
    fn unjoined_examples() {
        let g = sigma_family(1);
        assert!(g.unjoined(vs(&[1]), vs(&[3, 4, 5])).unwrap());
        assert!(!g.unjoined(vs(&[1]), vs(&[2])).unwrap());

        let s2 = sigma_family(2);
        let a = vs(&[1, 2, 3, 4, 5]);
        let b = vs(&[6, 7, 8, 9, 10]);
        assert!(!s2.unjoined(a, b).unwrap());

        assert_eq!(
            g.unjoined(vs(&[1, 2]), vs(&[2, 3])),
            Err(GraphError::OverlappingSets)
        );
        assert_eq!(
            g.unjoined(VertexSet::EMPTY, vs(&[1])),
            Err(GraphError::EmptySubset)
        );
    }

    #[test]
    fn unjoined_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5E7);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 7);
            let rank = g.rank();
            let a: VertexSet = (1..=rank).filter(|_| rng.gen_bool(0.3)).collect();
            let b: VertexSet = (1..=rank)
                .filter(|v| !a.contains(*v) && rng.gen_bool(0.3))
                .collect();
            if a.is_empty() || b.is_empty() {
                continue;
            }
            assert_eq!(g.unjoined(a, b).unwrap(), g.unjoined(b, a).unwrap());
        }
    }

    #[test]
    fn components_examples() {
        let g = CoxeterGraph::new(4); // all labels 2
        assert_eq!(g.components().len(), 4);

        assert_eq!(sigma_family(1).components().len(), 1);

        let s3 = sigma_family(3);
        let non_hubs = s3.vertices().difference(sigma_hubs(3));
        let comps = s3.components_within(non_hubs);
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 4));
        // ordered by smallest vertex
        assert_eq!(comps[0].min_vertex(), Some(2));
        assert_eq!(comps[1].min_vertex(), Some(7));
        assert_eq!(comps[2].min_vertex(), Some(12));
    }

    fn random_graph(rng: &mut ChaCha8Rng, max_rank: usize) -> CoxeterGraph {
        let rank = rng.gen_range(1..=max_rank);
        let mut g = CoxeterGraph::new(rank);
        for i in 1..=rank {
            for j in i + 1..=rank {
                let label = match rng.gen_range(0..6) {
                    0 => Label::Finite(3),
                    1 => Label::Finite(4),
                    2 => Label::Finite(5),
                    3 => Label::Finite(6),
                    4 => Label::Infinite,
                    _ => Label::Finite(2),
                };
                g.set_label(i, j, label).unwrap();
            }
        }
        g
    }

    #[test]
    fn text_and_json_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0F0F);
        for _ in 0..80 {
            let g = random_graph(&mut rng, 8);
            assert_eq!(CoxeterGraph::parse(&g.to_text()).unwrap(), g);
            assert_eq!(CoxeterGraph::from_json(&g.to_json()).unwrap(), g);
        }
        for k in [1, 4] {
            let g = sigma_family(k);
            assert_eq!(CoxeterGraph::parse(&g.to_text()).unwrap(), g);
            assert_eq!(CoxeterGraph::from_json(&g.to_json()).unwrap(), g);
        }
    }

    #[test]
    fn json_errors() {
        let err = CoxeterGraph::from_json("{\"rank\": -1, \"edges\": []}").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));

        let err = CoxeterGraph::from_json("{\"rank\": 2, \"edges\": [[1, 2, 1]]}").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Graph(GraphError::InvalidLabel(1)));

        let err = CoxeterGraph::from_json("not json").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));

        let g = CoxeterGraph::from_json("{\"rank\": 2, \"edges\": [[1, 2, \"inf\"]]}").unwrap();
        assert_eq!(g.label(1, 2), Label::Infinite);
    }

    #[test]
    fn every_hub_pair_fails_unjoined() {
        for k in 2..=4 {
            let g = sigma_family(k);
            let hubs: Vec<usize> = sigma_hubs(k).to_vec();
            for (a, &ha) in hubs.iter().enumerate() {
                for &hb in hubs.iter().skip(a + 1) {
                    let ca: VertexSet = (ha..ha + 5).collect();
                    let cb: VertexSet = (hb..hb + 5).collect();
                    assert!(!g.unjoined(ca, cb).unwrap());
                }
            }
        }
    }
}
