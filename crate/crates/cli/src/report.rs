//! The analyze report: one pass over the kernel, rendered as text or JSON.
//! JSON output is deterministic (fixed field order, sorted vertex lists,
//! no timing inside the body).

use serde::Serialize;

use coxlab_core::{
    cosine_matrix, det_elimination, group_type_with, inertia, is_word_hyperbolic_with,
    ClassifyOptions, CoxeterGraph, MatrixMode, ParabolicStatus, VertexSet, Witness,
};

use crate::Failure;

#[derive(Serialize)]
pub struct AnalysisReport {
    graph: GraphSummary,
    mode: ModeOut,
    determinant: ValueOut,
    inertia: InertiaOut,
    #[serde(rename = "type")]
    type_verdict: TypeOut,
    hyperbolicity: HypOut,
}

#[derive(Serialize)]
struct GraphSummary {
    rank: usize,
    labeled_pairs: usize,
}

#[derive(Serialize)]
struct ModeOut {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    digits: Option<u32>,
}

#[derive(Serialize)]
struct ValueOut {
    exact: String,
    decimal: String,
}

#[derive(Serialize)]
struct InertiaOut {
    positive: usize,
    negative: usize,
    zero: usize,
}

#[derive(Serialize)]
struct TypeOut {
    kind: String,
    components: Vec<ComponentOut>,
}

#[derive(Serialize)]
struct ComponentOut {
    vertices: Vec<usize>,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum WitnessOut {
    Affine { vertices: Vec<usize> },
    Pair { first: Vec<usize>, second: Vec<usize> },
}

#[derive(Serialize)]
struct HypOut {
    hyperbolic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessOut>,
    paper_mode_applicable: bool,
    parabolic_status: &'static str,
    minimal_infinite_subsets: usize,
    subsets_examined: usize,
}

pub fn parabolic_status_str(status: ParabolicStatus) -> &'static str {
    match status {
        ParabolicStatus::Absent => "absent",
        ParabolicStatus::OnlyAffineRank2 => "only_affine_rank2",
        ParabolicStatus::AffineRank3Plus => "affine_rank3_plus",
    }
}

fn vertices_of(s: VertexSet) -> Vec<usize> {
    s.to_vec()
}

pub fn analyze(
    graph: &CoxeterGraph,
    mode: MatrixMode,
    rank_cap: usize,
) -> Result<AnalysisReport, Failure> {
    let matrix = cosine_matrix(graph, mode)?;
    let det = det_elimination(&matrix);
    let ine = inertia(&matrix);
    let verdict = group_type_with(graph, mode)?;
    let opts = ClassifyOptions { mode, rank_cap };
    let hyp = is_word_hyperbolic_with(graph, &opts)?;

    let witness = hyp.witness.as_ref().map(|w| match w {
        Witness::Affine(s) => WitnessOut::Affine {
            vertices: vertices_of(*s),
        },
        Witness::Pair(a, b) => WitnessOut::Pair {
            first: vertices_of(*a),
            second: vertices_of(*b),
        },
    });

    Ok(AnalysisReport {
        graph: GraphSummary {
            rank: graph.rank(),
            labeled_pairs: graph.labeled_pair_count(),
        },
        mode: ModeOut {
            kind: match mode {
                MatrixMode::Exact => "exact",
                MatrixMode::Numeric(_) => "numeric",
            },
            digits: match mode {
                MatrixMode::Exact => None,
                MatrixMode::Numeric(d) => Some(d),
            },
        },
        determinant: ValueOut {
            exact: det.to_radical_string(),
            decimal: det.to_decimal(6),
        },
        inertia: InertiaOut {
            positive: ine.positive,
            negative: ine.negative,
            zero: ine.zero,
        },
        type_verdict: TypeOut {
            kind: verdict.kind.to_string(),
            components: verdict
                .components
                .iter()
                .map(|c| ComponentOut {
                    vertices: vertices_of(c.vertices),
                    kind: c.kind.to_string(),
                    family: c.family.map(|f| f.to_string()),
                })
                .collect(),
        },
        hyperbolicity: HypOut {
            hyperbolic: hyp.hyperbolic,
            witness,
            paper_mode_applicable: hyp.paper_mode_applicable,
            parabolic_status: parabolic_status_str(hyp.parabolic_status),
            minimal_infinite_subsets: hyp.minimal_infinite.len(),
            subsets_examined: hyp.stats.subsets_examined,
        },
    })
}

impl AnalysisReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "graph: rank {}, {} labeled pairs\n",
            self.graph.rank, self.graph.labeled_pairs
        ));
        match self.mode.digits {
            None => out.push_str("mode: exact\n"),
            Some(d) => out.push_str(&format!("mode: numeric ({d} digits)\n")),
        }
        out.push_str(&format!(
            "determinant: {} = {}\n",
            self.determinant.exact, self.determinant.decimal
        ));
        out.push_str(&format!(
            "inertia: ({}, {}, {})\n",
            self.inertia.positive, self.inertia.negative, self.inertia.zero
        ));
        out.push_str(&format!("type: {}\n", self.type_verdict.kind));
        for c in &self.type_verdict.components {
            let family = match &c.family {
                Some(f) => format!(" ({f})"),
                None => String::new(),
            };
            out.push_str(&format!(
                "  component {}: {}{}\n",
                format_vertices(&c.vertices),
                c.kind,
                family
            ));
        }
        out.push_str(&format!(
            "hyperbolic: {}\n",
            if self.hyperbolicity.hyperbolic {
                "yes"
            } else {
                "no"
            }
        ));
        if let Some(w) = &self.hyperbolicity.witness {
            match w {
                WitnessOut::Affine { vertices } => out.push_str(&format!(
                    "  witness: affine subset {}\n",
                    format_vertices(vertices)
                )),
                WitnessOut::Pair { first, second } => out.push_str(&format!(
                    "  witness: unjoined infinite pair {} x {}\n",
                    format_vertices(first),
                    format_vertices(second)
                )),
            }
        }
        out.push_str(&format!(
            "  paper_mode_applicable: {} (parabolic subgraphs: {})\n",
            self.hyperbolicity.paper_mode_applicable, self.hyperbolicity.parabolic_status
        ));
        out.push_str(&format!(
            "  minimal infinite subsets: {} (subsets examined: {})\n",
            self.hyperbolicity.minimal_infinite_subsets, self.hyperbolicity.subsets_examined
        ));
        out
    }
}

fn format_vertices(vs: &[usize]) -> String {
    let inner: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
