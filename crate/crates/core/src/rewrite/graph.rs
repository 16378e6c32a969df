use std::collections::HashMap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{RewriteError, RewriteSystem};
use crate::coeff::Field;
use crate::freealg::Word;

const MAX_VERTICES: usize = 2_000_000;

/// Normal-word automaton: vertices are the normal words of length `k`
/// (one less than the longest leading word), and `u -> v` whenever
/// `u = a w`, `v = w b` and `a w b` is normal. Normal words of length
/// `m >= k` are in bijection with paths of length `m - k`.
#[derive(Clone, Debug)]
pub struct UfnarovskiGraph {
    /// Vertex length.
    pub k: usize,
    /// Vertices, in the original alphabet.
    pub vertices: Vec<Word>,
    /// Edges as vertex index pairs (parallel edges possible when `k = 0`).
    pub edges: Vec<(usize, usize)>,
    /// Number of normal words of each length below `k`.
    pub short_counts: Vec<u64>,
}

struct Automaton {
    k: usize,
    vertices: Vec<Word>,
    adj: Vec<Vec<usize>>,
    short_counts: Vec<u64>,
}

fn build<F: Field>(rs: &RewriteSystem<F>) -> Result<Automaton, RewriteError> {
    let n = rs.n() as u8;
    let k = rs.max_rule_degree().saturating_sub(1);
    let mut level: Vec<Vec<u8>> = vec![Vec::new()];
    let mut short_counts = Vec::with_capacity(k);
    for _ in 0..k {
        short_counts.push(level.len() as u64);
        let mut next = Vec::new();
        for w in &level {
            for b in 0..n {
                let mut v = w.clone();
                v.push(b);
                if !rs.suffix_reducible(&v) {
                    next.push(v);
                }
            }
        }
        if next.len() > MAX_VERTICES {
            return Err(RewriteError::GraphTooLarge(MAX_VERTICES));
        }
        level = next;
    }
    level.sort_unstable_by(|a, b| Word(a.clone()).cmp(&Word(b.clone())));
    let index: HashMap<&[u8], usize> = level
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let mut adj = vec![Vec::new(); level.len()];
    for (i, u) in level.iter().enumerate() {
        for b in 0..n {
            let mut w = u.clone();
            w.push(b);
            if rs.suffix_reducible(&w) {
                continue;
            }
            let v = if k == 0 { &w[..0] } else { &w[1..] };
            if let Some(&j) = index.get(v) {
                adj[i].push(j);
            }
        }
    }
    Ok(Automaton {
        k,
        vertices: level.into_iter().map(Word).collect(),
        adj,
        short_counts,
    })
}

impl Automaton {
    fn counts(&self, upto: usize) -> Result<Vec<u128>, RewriteError> {
        let mut out = Vec::with_capacity(upto + 1);
        let mut cur: Vec<u128> = vec![1; self.vertices.len()];
        for m in 0..=upto {
            if m < self.k {
                out.push(self.short_counts[m] as u128);
                continue;
            }
            if m > self.k {
                let mut next = vec![0u128; self.vertices.len()];
                for (i, succ) in self.adj.iter().enumerate() {
                    // paths of length t+1 starting at i
                    let mut s: u128 = 0;
                    for &j in succ {
                        s = s
                            .checked_add(cur[j])
                            .ok_or(RewriteError::HilbertOverflow(m))?;
                    }
                    next[i] = s;
                }
                cur = next;
            }
            let total = cur
                .iter()
                .try_fold(0u128, |a, &b| a.checked_add(b))
                .ok_or(RewriteError::HilbertOverflow(m))?;
            out.push(total);
        }
        Ok(out)
    }
}

/// Dimensions of the graded pieces in degrees `0..=degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFunction {
    pub values: Vec<u64>,
    /// Set when the system is not certified complete and `degree` exceeds
    /// its truncation: entries above the truncation are upper bounds.
    pub truncated: bool,
}

/// Counts normal words per degree.
pub fn hilbert_function<F: Field>(
    rs: &RewriteSystem<F>,
    degree: usize,
) -> Result<HilbertFunction, RewriteError> {
    let values = exact_counts(rs, degree)?
        .into_iter()
        .enumerate()
        .map(|(m, v)| u64::try_from(v).map_err(|_| RewriteError::HilbertOverflow(m)))
        .collect::<Result<_, _>>()?;
    Ok(HilbertFunction {
        values,
        truncated: !rs.is_certified() && degree > rs.truncation(),
    })
}

pub(crate) fn exact_counts<F: Field>(
    rs: &RewriteSystem<F>,
    degree: usize,
) -> Result<Vec<u128>, RewriteError> {
    build(rs)?.counts(degree)
}

/// Number of vertices of the normal-word automaton plus its vertex length;
/// bounds the order of the linear recurrence the Hilbert function obeys.
pub(crate) fn recurrence_bound<F: Field>(rs: &RewriteSystem<F>) -> Result<usize, RewriteError> {
    let a = build(rs)?;
    Ok(a.vertices.len() + a.k)
}

pub fn ufnarovski_graph<F: Field>(rs: &RewriteSystem<F>) -> Result<UfnarovskiGraph, RewriteError> {
    if !rs.is_certified() {
        return Err(RewriteError::NotComplete);
    }
    let a = build(rs)?;
    let edges = a
        .adj
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
        .collect();
    Ok(UfnarovskiGraph {
        k: a.k,
        vertices: a
            .vertices
            .iter()
            .map(|w| rs.order().from_rank_space(w))
            .collect(),
        edges,
        short_counts: a.short_counts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthKind {
    FiniteDimensional { dimension: u64 },
    PolynomialGrowth { gk: usize },
    Exponential,
    InconclusiveTruncated,
}

impl GrowthKind {
    /// GK dimension when known (0 for finite-dimensional algebras).
    pub fn gk(&self) -> Option<usize> {
        match self {
            GrowthKind::FiniteDimensional { .. } => Some(0),
            GrowthKind::PolynomialGrowth { gk } => Some(*gk),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub kind: GrowthKind,
    /// Dimensions in degrees `0..=truncation`.
    pub hilbert: Vec<u64>,
}

impl UfnarovskiGraph {
    /// Classifies growth from the cycle structure.
    pub fn growth(&self) -> Result<GrowthKind, RewriteError> {
        let nv = self.vertices.len();
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(nv, self.edges.len());
        for _ in 0..nv {
            g.add_node(());
        }
        for &(a, b) in &self.edges {
            g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
        }
        // reverse topological order: successors' components come first
        let sccs = tarjan_scc(&g);
        let mut comp = vec![0usize; nv];
        for (c, members) in sccs.iter().enumerate() {
            for v in members {
                comp[v.index()] = c;
            }
        }
        let mut internal = vec![0usize; sccs.len()];
        for &(a, b) in &self.edges {
            if comp[a] == comp[b] {
                internal[comp[a]] += 1;
            }
        }
        let mut weight = vec![0usize; sccs.len()];
        for (c, members) in sccs.iter().enumerate() {
            if internal[c] == 0 {
                continue;
            }
            if internal[c] > members.len() {
                return Ok(GrowthKind::Exponential);
            }
            weight[c] = 1;
        }
        let mut best = vec![0usize; sccs.len()];
        let mut paths = vec![0u128; nv];
        for (c, members) in sccs.iter().enumerate() {
            let mut succ_best = 0;
            for v in members {
                for w in g.neighbors(*v) {
                    if comp[w.index()] != c {
                        succ_best = succ_best.max(best[comp[w.index()]]);
                    }
                }
            }
            best[c] = weight[c] + succ_best;
        }
        let gk = best.iter().copied().max().unwrap_or(0);
        if gk > 0 {
            return Ok(GrowthKind::PolynomialGrowth { gk });
        }
        // acyclic: count all paths
        let mut total: u128 = self.short_counts.iter().map(|&c| c as u128).sum();
        for members in &sccs {
            let v = members[0];
            let mut s: u128 = 1;
            for w in g.neighbors(v) {
                s = s
                    .checked_add(paths[w.index()])
                    .ok_or(RewriteError::HilbertOverflow(0))?;
            }
            paths[v.index()] = s;
            total = total
                .checked_add(s)
                .ok_or(RewriteError::HilbertOverflow(0))?;
        }
        let dimension = u64::try_from(total).map_err(|_| RewriteError::HilbertOverflow(0))?;
        Ok(GrowthKind::FiniteDimensional { dimension })
    }
}

/// Exact classification for certified systems, otherwise the observed
/// Hilbert prefix only.
pub fn classify_growth<F: Field>(rs: &RewriteSystem<F>) -> Result<GrowthReport, RewriteError> {
    let hilbert = hilbert_function(rs, rs.truncation())?.values;
    let kind = if rs.is_certified() {
        ufnarovski_graph(rs)?.growth()?
    } else {
        GrowthKind::InconclusiveTruncated
    };
    Ok(GrowthReport { kind, hilbert })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rational;
    use crate::freealg::{MonomialOrder, NCPoly};
    use crate::rewrite::{complete_truncated, Presentation};

    type P = NCPoly<Rational>;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    fn system(n: usize, rels: Vec<P>, d: usize) -> RewriteSystem<Rational> {
        let p = Presentation::new(names(n), rels).unwrap();
        complete_truncated(&p, d, &MonomialOrder::natural(n)).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let rs = system(1, vec![P::generator(0).pow(2)], 4);
        let g = ufnarovski_graph(&rs).unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert!(g.edges.is_empty());
        assert_eq!(
            g.growth().unwrap(),
            GrowthKind::FiniteDimensional { dimension: 2 }
        );
    }

    #[test]
    fn free_algebra_is_exponential() {
        let p: Presentation<Rational> = Presentation::free(names(2));
        let rs = complete_truncated(&p, 6, &MonomialOrder::natural(2)).unwrap();
        assert_eq!(
            hilbert_function(&rs, 4).unwrap().values,
            vec![1, 2, 4, 8, 16]
        );
        assert_eq!(classify_growth(&rs).unwrap().kind, GrowthKind::Exponential);
    }

    #[test]
    fn polynomial_ring_in_three_variables() {
        let x = P::generator;
        let rels = vec![
            x(1).mul(&x(0)).sub(&x(0).mul(&x(1))),
            x(2).mul(&x(0)).sub(&x(0).mul(&x(2))),
            x(2).mul(&x(1)).sub(&x(1).mul(&x(2))),
        ];
        let rs = system(3, rels, 12);
        let rep = classify_growth(&rs).unwrap();
        assert_eq!(rep.kind, GrowthKind::PolynomialGrowth { gk: 3 });
        assert_eq!(&rep.hilbert[..5], &[1, 3, 6, 10, 15]);
    }

    #[test]
    fn uncertified_is_inconclusive() {
        let x = P::generator;
        let r = x(0).mul(&x(1)).mul(&x(0)).sub(&x(1).mul(&x(0)).mul(&x(1)));
        let rs = system(2, vec![r], 6);
        assert!(matches!(
            ufnarovski_graph(&rs),
            Err(RewriteError::NotComplete)
        ));
        assert_eq!(
            classify_growth(&rs).unwrap().kind,
            GrowthKind::InconclusiveTruncated
        );
    }
}
