//! Exhaustive census: every label assignment over the pairs of a rank-n
//! graph, classified and checked for hyperbolicity, streamed as CSV in
//! canonical (odometer) order. Kernel calls run on a worker pool; rows are
//! buffered per chunk and emitted in order.

use std::collections::BTreeMap;
use std::io::Write;

use coxlab_core::{
    cosine_matrix, det_elimination, group_type_with, identify_family, inertia,
    is_word_hyperbolic_with, ClassifyOptions, CoxeterGraph, Label, MatrixMode,
};
use rayon::prelude::*;

use crate::Failure;

/// Hard cap for exhaustive mode.
const MAX_CENSUS_RANK: usize = 7;
const CHUNK: usize = 4096;

fn parse_labels(spec: &str) -> Result<Vec<Label>, Failure> {
    let mut labels = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let label = if token == "inf" {
            Label::Infinite
        } else {
            let m: u32 = token
                .parse()
                .map_err(|_| Failure::new(2, format!("invalid label '{token}' in --labels")))?;
            if m < 2 {
                return Err(Failure::new(2, format!("invalid label {m}: labels are >= 2")));
            }
            Label::Finite(m)
        };
        if !labels.contains(&label) {
            labels.push(label);
        }
    }
    if labels.is_empty() {
        return Err(Failure::new(2, "--labels must list at least one label"));
    }
    Ok(labels)
}

struct Row {
    graph_id: String,
    kind: String,
    family: String,
    det: String,
    inertia: (usize, usize, usize),
    hyperbolic: bool,
}

fn census_row(rank: usize, labels: &[Label], assignment: &[usize]) -> Result<Row, Failure> {
    let mut g = CoxeterGraph::new(rank);
    let mut slot = 0;
    for i in 1..=rank {
        for j in i + 1..=rank {
            g.set_label(i, j, labels[assignment[slot]]).unwrap();
            slot += 1;
        }
    }
    let graph_id: Vec<String> = assignment
        .iter()
        .map(|&a| labels[a].to_string())
        .collect();

    let matrix = cosine_matrix(&g, MatrixMode::Exact)?;
    let det = det_elimination(&matrix);
    let ine = inertia(&matrix);
    let verdict = group_type_with(&g, MatrixMode::Exact)?;
    let family = if g.is_connected() {
        identify_family(&g).map(|f| f.to_string()).unwrap_or_default()
    } else {
        String::new()
    };
    let opts = ClassifyOptions::default();
    let hyp = is_word_hyperbolic_with(&g, &opts)?;

    Ok(Row {
        graph_id: graph_id.join("-"),
        kind: verdict.kind.to_string(),
        family,
        det: det.to_decimal(6),
        inertia: (ine.positive, ine.negative, ine.zero),
        hyperbolic: hyp.hyperbolic,
    })
}

fn is_connected(rank: usize, labels: &[Label], assignment: &[usize]) -> bool {
    // union-find over the edges of the assignment
    let mut parent: Vec<usize> = (0..=rank).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let root = find(parent, parent[v]);
            parent[v] = root;
        }
        parent[v]
    }
    let mut slot = 0;
    for i in 1..=rank {
        for j in i + 1..=rank {
            if labels[assignment[slot]].is_edge() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
            slot += 1;
        }
    }
    let root = find(&mut parent, 1);
    (2..=rank).all(|v| find(&mut parent, v) == root)
}

pub fn run(rank: usize, labels_spec: &str, connected: bool, limit: u128) -> Result<(), Failure> {
    if rank < 1 || rank > MAX_CENSUS_RANK {
        return Err(Failure::new(
            4,
            format!("census rank must be between 1 and {MAX_CENSUS_RANK}, got {rank}"),
        ));
    }
    let labels = parse_labels(labels_spec)?;
    let pairs = rank * (rank - 1) / 2;
    let total = (labels.len() as u128)
        .checked_pow(pairs as u32)
        .unwrap_or(u128::MAX);
    if total > limit {
        return Err(Failure::new(
            4,
            format!("census would enumerate {total} graphs, above the limit of {limit}"),
        ));
    }
    let total = total as usize;

    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    writeln!(out, "graph_id,kind,family,det,n_plus,n_minus,n_zero,hyperbolic")
        .map_err(|e| Failure::new(1, e.to_string()))?;

    let mut tab: BTreeMap<(String, bool), usize> = BTreeMap::new();
    let mut emitted = 0usize;

    let mut start = 0usize;
    while start < total {
        let end = (start + CHUNK).min(total);
        let rows: Vec<Option<Row>> = (start..end)
            .into_par_iter()
            .map(|code| {
                let mut assignment = vec![0usize; pairs];
                let mut c = code;
                for slot in assignment.iter_mut() {
                    *slot = c % labels.len();
                    c /= labels.len();
                }
                if connected && !is_connected(rank, &labels, &assignment) {
                    return Ok(None);
                }
                census_row(rank, &labels, &assignment).map(Some)
            })
            .collect::<Result<Vec<Option<Row>>, Failure>>()?;
        for row in rows.into_iter().flatten() {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                row.graph_id,
                row.kind,
                row.family,
                row.det,
                row.inertia.0,
                row.inertia.1,
                row.inertia.2,
                row.hyperbolic
            )
            .map_err(|e| Failure::new(1, e.to_string()))?;
            *tab.entry((row.kind.clone(), row.hyperbolic)).or_default() += 1;
            emitted += 1;
        }
        start = end;
    }
    out.flush().map_err(|e| Failure::new(1, e.to_string()))?;

    eprintln!("census: {emitted} graphs emitted (of {total} enumerated)");
    eprintln!("counts by (kind, hyperbolic):");
    for ((kind, hyp), count) in &tab {
        eprintln!("  {kind} {}: {count}", if *hyp { "hyperbolic" } else { "not-hyperbolic" });
    }
    Ok(())
}
