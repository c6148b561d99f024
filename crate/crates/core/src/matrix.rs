//! Cosine matrices and the determinant/inertia engines: fraction-free
//! elimination, the cycle-expansion determinant, the Σ_k family recurrence
//! and its closed form.
//!
//! The cosine matrix of a graph has 1 on the diagonal and −cos(π/m_ij) off
//! it (label 2 gives 0, label ∞ gives −1). Its determinant and inertia are
//! the determinant and signature of the graph.

use num::bigint::BigInt;
use num::{One, Zero};
use thiserror::Error;

use crate::field::{cos_label, rational_cos_pi_over, FieldElement, Rational};
use crate::graph::{CoxeterGraph, Label, VertexSet};

/// Default cap on the number of cycle paths (and enumeration work).
pub const DEFAULT_CYCLE_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("label {0} is outside the exact field Q(\u{221a}2, \u{221a}3, \u{221a}5); use numeric mode")]
    UnsupportedLabel(Label),
    #[error("cycle enumeration exceeded the budget of {0}")]
    CycleBudgetExceeded(usize),
}

/// Entry mode for [`cosine_matrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixMode {
    /// Exact entries; requires all labels in {2, …, 6} ∪ {∞}.
    Exact,
    /// Irrational cosines replaced by rational approximations correct to
    /// the given number of digits.
    Numeric(u32),
}

/// Symmetric matrix of field elements with unit diagonal.
///
/// Rows and columns are 0-based; row v−1 corresponds to graph vertex v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosineMatrix {
    n: usize,
    entries: Vec<FieldElement>,
    mode: MatrixMode,
}

impl CosineMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> MatrixMode {
        self.mode
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.n + j]
    }

    /// Principal submatrix on the (1-based) vertices of `s`.
    pub fn principal_submatrix(&self, s: VertexSet) -> CosineMatrix {
        let rows: Vec<usize> = s.iter().map(|v| v - 1).collect();
        let k = rows.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in &rows {
            for &j in &rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        CosineMatrix {
            n: k,
            entries,
            mode: self.mode,
        }
    }
}

/// Signature counts (n⁺, n⁻, n⁰) of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl std::fmt::Display for Inertia {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

fn entry_for_label(label: Label, mode: MatrixMode) -> Result<FieldElement, MatrixError> {
    match label {
        Label::Infinite => Ok(-FieldElement::one()),
        Label::Finite(m) => match mode {
            MatrixMode::Exact => match cos_label(m) {
                Ok(c) => Ok(-&c),
                Err(_) => Err(MatrixError::UnsupportedLabel(label)),
            },
            MatrixMode::Numeric(digits) => match m {
                // exactly rational cosines stay exact
                2 => Ok(FieldElement::zero()),
                3 => Ok(FieldElement::from_ratio(-1, 2)),
                _ => Ok(FieldElement::from_rational(
                    -rational_cos_pi_over(m, digits),
                )),
            },
        },
    }
}

/// The cosine matrix of a graph.
pub fn cosine_matrix(g: &CoxeterGraph, mode: MatrixMode) -> Result<CosineMatrix, MatrixError> {
    let n = g.rank();
    let mut entries = vec![FieldElement::zero(); n * n];
    for i in 0..n {
        entries[i * n + i] = FieldElement::one();
    }
    for ((a, b), label) in g.labeled_pairs() {
        let e = entry_for_label(label, mode)?;
        entries[(a - 1) * n + (b - 1)] = e.clone();
        entries[(b - 1) * n + (a - 1)] = e;
    }
    Ok(CosineMatrix { n, entries, mode })
}

/// Exact determinant by elimination over the field with row pivoting:
/// the product of the pivots, every division done with exact field
/// inverses against reduced rational coordinates.
pub fn det_elimination(m: &CosineMatrix) -> FieldElement {
    let n = m.n;
    let mut w: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| (0..n).map(|j| m.entry(i, j).clone()).collect())
        .collect();
    let mut det = FieldElement::one();
    for k in 0..n {
        let pivot_row = match (k..n).find(|&r| !w[r][k].is_zero()) {
            Some(r) => r,
            None => return FieldElement::zero(),
        };
        if pivot_row != k {
            w.swap(k, pivot_row);
            det = -det;
        }
        det = &det * &w[k][k];
        if k + 1 == n {
            break;
        }
        let inv_pivot = w[k][k].fast_inverse().unwrap();
        for i in k + 1..n {
            if w[i][k].is_zero() {
                continue;
            }
            let factor = &w[i][k] * &inv_pivot;
            for j in k + 1..n {
                if w[k][j].is_zero() {
                    continue;
                }
                let delta = &factor * &w[k][j];
                w[i][j] = &w[i][j] - &delta;
            }
        }
    }
    det
}

/// Exact inertia by symmetric elimination: nonzero diagonal pivots are
/// counted by sign and eliminated by a congruence (Schur complement); when
/// the active diagonal is all zero, a nonzero off-diagonal entry is removed
/// as a hyperbolic pair contributing (+1, −1); a fully zero block is the
/// corank.
pub fn inertia(m: &CosineMatrix) -> Inertia {
    let n = m.n;
    let mut w: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| (0..n).map(|j| m.entry(i, j).clone()).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut result = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !active.is_empty() {
        if let Some(&t) = active.iter().find(|&&t| !w[t][t].is_zero()) {
            let sign = w[t][t].sign();
            if sign > 0 {
                result.positive += 1;
            } else {
                result.negative += 1;
            }
            let inv = w[t][t].fast_inverse().unwrap();
            active.retain(|&x| x != t);
            for a in 0..active.len() {
                let i = active[a];
                if w[i][t].is_zero() {
                    continue;
                }
                let factor = &w[i][t] * &inv;
                for b in a..active.len() {
                    let j = active[b];
                    let delta = &factor * &w[t][j];
                    let updated = &w[i][j] - &delta;
                    w[i][j] = updated.clone();
                    if i != j {
                        w[j][i] = updated;
                    }
                }
            }
        } else {
            // all-zero diagonal: look for a hyperbolic pair
            let mut pair = None;
            'search: for (a, &i) in active.iter().enumerate() {
                for &j in active.iter().skip(a + 1) {
                    if !w[i][j].is_zero() {
                        pair = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((t, u)) = pair else {
                result.zero += active.len();
                break;
            };
            result.positive += 1;
            result.negative += 1;
            let inv = w[t][u].fast_inverse().unwrap();
            active.retain(|&x| x != t && x != u);
            for a in 0..active.len() {
                let i = active[a];
                for b in a..active.len() {
                    let j = active[b];
                    // Schur complement w.r.t. the block [[0, a], [a, 0]]
                    let cross = &(&w[i][t] * &w[u][j]) + &(&w[i][u] * &w[t][j]);
                    let delta = &cross * &inv;
                    let updated = &w[i][j] - &delta;
                    w[i][j] = updated.clone();
                    if i != j {
                        w[j][i] = updated;
                    }
                }
            }
        }
    }
    result
}

/// An oriented simple cycle over the edges of a graph.
///
/// Length-2 paths (one per edge, orientation-free) are stored once; cycles
/// of length ≥ 3 appear in both orientations, starting at their smallest
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePath {
    vertices: Vec<usize>,
}

impl CyclePath {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

fn adjacency_lists(g: &CoxeterGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.rank() + 1];
    for ((i, j), _) in g.labeled_pairs() {
        adj[i].push(j);
        adj[j].push(i);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

fn cycles_from_adjacency(
    n: usize,
    adj: &[Vec<usize>],
    budget: usize,
) -> Result<Vec<CyclePath>, MatrixError> {
    let mut out = cycles_unsorted(n, adj, budget)?;
    out.sort_by_cached_key(|c| (c.vertex_set().to_vec(), c.vertices.clone()));
    Ok(out)
}

fn cycles_unsorted(
    n: usize,
    adj: &[Vec<usize>],
    budget: usize,
) -> Result<Vec<CyclePath>, MatrixError> {
    let mut out: Vec<CyclePath> = Vec::new();
    let mut work: usize = 0;

    // the two-vertex back-and-forth paths, one per edge
    for i in 1..=n {
        for &j in &adj[i] {
            if j > i {
                out.push(CyclePath { vertices: vec![i, j] });
                if out.len() > budget {
                    return Err(MatrixError::CycleBudgetExceeded(budget));
                }
            }
        }
    }

    // oriented simple cycles of length ≥ 3, rooted at their smallest vertex
    let mut path: Vec<usize> = Vec::new();
    let mut on_path = vec![false; n + 1];
    for root in 1..=n {
        path.clear();
        path.push(root);
        on_path.iter_mut().for_each(|b| *b = false);
        on_path[root] = true;
        // iterative DFS: stack of (vertex, next neighbor index)
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&(v, idx)) = stack.last() {
            if idx >= adj[v].len() {
                stack.pop();
                on_path[v] = false;
                path.pop();
                continue;
            }
            stack.last_mut().unwrap().1 += 1;
            let u = adj[v][idx];
            work += 1;
            if work > budget.saturating_mul(16) {
                return Err(MatrixError::CycleBudgetExceeded(budget));
            }
            if u == root && path.len() >= 3 {
                // canonical orientation: second vertex below last
                if path[1] < *path.last().unwrap() {
                    let forward = path.clone();
                    let mut backward = vec![root];
                    backward.extend(path[1..].iter().rev());
                    out.push(CyclePath { vertices: forward });
                    out.push(CyclePath { vertices: backward });
                    if out.len() > budget {
                        return Err(MatrixError::CycleBudgetExceeded(budget));
                    }
                }
                continue;
            }
            if u > root && !on_path[u] {
                path.push(u);
                on_path[u] = true;
                stack.push((u, 0));
            }
        }
    }
    Ok(out)
}

/// All simple cycle paths of the graph, in deterministic order.
pub fn enumerate_cycles(g: &CoxeterGraph, budget: usize) -> Result<Vec<CyclePath>, MatrixError> {
    cycles_from_adjacency(g.rank(), &adjacency_lists(g), budget)
}

/// Cycle-expansion determinant evaluated on an explicit cosine matrix
/// (edge weights are the negated off-diagonal entries).
pub fn det_vinberg_matrix(m: &CosineMatrix, budget: usize) -> Result<FieldElement, MatrixError> {
    let n = m.n;
    let mut adj = vec![Vec::new(); n + 1];
    for i in 0..n {
        for j in i + 1..n {
            if !m.entry(i, j).is_zero() {
                adj[i + 1].push(j + 1);
                adj[j + 1].push(i + 1);
            }
        }
    }
    // the sum is order-independent, so the canonical ordering is skipped
    let cycles = cycles_unsorted(n, &adj, budget)?;

    let weight = |i: usize, j: usize| -> FieldElement { -m.entry(i - 1, j - 1) };
    let mut weighted: Vec<(u64, FieldElement)> = Vec::with_capacity(cycles.len());
    for c in &cycles {
        let p = if c.len() == 2 {
            let w = weight(c.vertices[0], c.vertices[1]);
            &w * &w
        } else {
            let mut p = weight(c.vertices[c.len() - 1], c.vertices[0]);
            for k in 0..c.len() - 1 {
                p = &p * &weight(c.vertices[k], c.vertices[k + 1]);
            }
            p
        };
        let mask = c.vertices.iter().fold(0u64, |acc, &v| acc | (1 << v));
        weighted.push((mask, p));
    }

    // sum of (−1)^s p(γ_1)…p(γ_s) over vertex-disjoint collections,
    // sign handled by an add/subtract flag instead of negation
    let mut total = FieldElement::one();
    let mut stack: Vec<(usize, u64, FieldElement, bool)> =
        vec![(0, 0, FieldElement::one(), true)];
    while let Some((start, used, product, subtract)) = stack.pop() {
        for i in start..weighted.len() {
            let (mask, ref p) = weighted[i];
            if mask & used != 0 {
                continue;
            }
            let term = &product * p;
            total = if subtract {
                &total - &term
            } else {
                &total + &term
            };
            stack.push((i + 1, used | mask, term, !subtract));
        }
    }
    Ok(total)
}

/// Determinant by the cycle expansion: the sum over unordered collections
/// of pairwise vertex-disjoint oriented cycle paths of (−1)^s times the
/// product of their edge-weight products.
pub fn det_vinberg(g: &CoxeterGraph, budget: usize) -> Result<FieldElement, MatrixError> {
    let m = cosine_matrix(g, MatrixMode::Exact)?;
    det_vinberg_matrix(&m, budget)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k.min(n - k) {
        num *= BigInt::from(n - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

/// det(Σ_1) = (2−√5)/16.
pub fn sigma1_det() -> FieldElement {
    (FieldElement::from_integer(2) - FieldElement::sqrt(5).unwrap())
        .scale(&Rational::new(BigInt::one(), BigInt::from(16)))
}

/// det(H_4) = (7−3√5)/32.
pub fn h4_det() -> FieldElement {
    (FieldElement::from_integer(7)
        - FieldElement::sqrt(5).unwrap().scale(&Rational::from_integer(BigInt::from(3))))
    .scale(&Rational::new(BigInt::one(), BigInt::from(32)))
}

/// det(Σ_k) by the family recurrence
/// d_{k+1} = d_k·d_1 + Σ_{m=1}^{k} (−1)^m m! C(k,m) (−cos(π/5))^{m+1} d^{m+1} d_{k−m},
/// iterated from d_0 = 1.
pub fn det_sigma_recurrence(k: usize) -> FieldElement {
    assert!(k >= 1);
    let d1 = sigma1_det();
    let d = h4_det();
    let neg_cos5 = -&cos_label(5).unwrap();
    let cd = &neg_cos5 * &d; // (2−√5)/32

    let mut ds: Vec<FieldElement> = vec![FieldElement::one(), d1.clone()];
    for kk in 1..k {
        let mut next = &ds[kk] * &d1;
        for m in 1..=kk {
            let coeff = factorial(m) * binomial(kk, m);
            let term = cd
                .pow((m + 1) as u32)
                .scale(&Rational::from_integer(coeff));
            let term = &term * &ds[kk - m];
            if m % 2 == 1 {
                next = &next - &term;
            } else {
                next = &next + &term;
            }
        }
        ds.push(next);
    }
    ds.swap_remove(k)
}

/// det(Σ_k) by the closed form (2−√5)^k (k+1) / 2^{5k}.
pub fn det_sigma_closed(k: usize) -> FieldElement {
    assert!(k >= 1);
    let base = FieldElement::from_integer(2) - FieldElement::sqrt(5).unwrap();
    let denom = BigInt::one() << (5 * k);
    base.pow(k as u32)
        .scale(&Rational::new(BigInt::from(k + 1), denom))
}
