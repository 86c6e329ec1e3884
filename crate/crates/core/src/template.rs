//! Templates: the short-edge-free pieces a floor diagram splits into.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::floor::Edge;
use crate::poly::{interpolate, MultiPoly};
use crate::poset::{ClassLabel, MarkingPoset};
use crate::{Error, Result};

/// A template on vertices 0..=l, edges sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Template {
    l: usize,
    edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateInvariants {
    pub l: usize,
    pub mu: BigUint,
    pub delta: usize,
    /// kappa_1..kappa_l
    pub kappa: Vec<u64>,
    pub k_min: usize,
    pub j0: usize,
    pub s: usize,
}

/// (j - i) w - 1, the cogenus an edge contributes.
pub fn edge_cost(&(i, j, w): &Edge) -> usize {
    (j - i) * w as usize - 1
}

/// kappa_1..kappa_l: weight crossing each gap.
pub fn kappa(l: usize, edges: &[Edge]) -> Vec<u64> {
    (1..=l)
        .map(|g| {
            edges
                .iter()
                .filter(|e| e.0 < g && g <= e.1)
                .map(|e| e.2 as u64)
                .sum()
        })
        .collect()
}

impl Template {
    pub fn new(l: usize, mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort();
        if l == 0 || edges.is_empty() {
            return Err(Error::InvalidTemplate("empty template".into()));
        }
        for &(i, j, w) in &edges {
            if !(i < j && j <= l && w >= 1) {
                return Err(Error::InvalidTemplate(format!("bad edge ({i},{j},{w})")));
            }
            if j == i + 1 && w == 1 {
                return Err(Error::InvalidTemplate(format!("short edge ({i},{j},1)")));
            }
        }
        for v in 1..l {
            if !edges.iter().any(|e| e.0 < v && v < e.1) {
                return Err(Error::InvalidTemplate(format!("vertex {v} is not covered")));
            }
        }
        Ok(Self { l, edges })
    }

    pub fn len(&self) -> usize {
        self.l
    }

    /// Templates always have at least one edge.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cogenus(&self) -> usize {
        self.edges.iter().map(edge_cost).sum()
    }

    pub fn multiplicity(&self) -> BigUint {
        let mut m = BigUint::one();
        for &(_, _, w) in &self.edges {
            m *= w as u64 * w as u64;
        }
        m
    }

    pub fn kappa(&self) -> Vec<u64> {
        kappa(self.l, &self.edges)
    }

    pub fn invariants(&self) -> TemplateInvariants {
        let kappa = self.kappa();
        let mut best = i64::MIN;
        let mut j0 = 1;
        for (idx, &kj) in kappa.iter().enumerate() {
            let val = kj as i64 - idx as i64;
            if val > best {
                best = val;
                j0 = idx + 1;
            }
        }
        let s = self.edges.iter().filter(|e| e.0 + 1 == j0 && e.1 == j0).count();
        TemplateInvariants {
            l: self.l,
            mu: self.multiplicity(),
            delta: self.cogenus(),
            kappa,
            k_min: best.max(1) as usize,
            j0,
            s,
        }
    }

    pub fn k_min(&self) -> usize {
        self.invariants().k_min
    }

    /// The poset of Gamma placed at position k: backbone 0..=l, k + i - 1 - kappa_i
    /// short edges in gap i, every edge subdivided.
    pub fn poset_at(&self, k: usize) -> Result<MarkingPoset> {
        let inv = self.invariants();
        if k < inv.k_min {
            return Err(Error::BelowKmin {
                index: 0,
                k,
                k_min: inv.k_min,
            });
        }
        let mut p = MarkingPoset::new(self.l + 1);
        for (g, &kg) in inv.kappa.iter().enumerate() {
            p.add_fixed(g, (k + g) as u64 - kg);
        }
        for &(i, j, w) in &self.edges {
            p.add_class(i, j, 1, ClassLabel::Edge { src: i, tgt: j, weight: w });
        }
        Ok(p)
    }

    /// Number of linear extensions (up to equivalence) of Gamma at position k.
    pub fn extensions_at(&self, k: usize) -> Result<BigUint> {
        Ok(self.poset_at(k)?.count_extensions())
    }

    /// P_Gamma(k), interpolated on k_min..=k_min+#E and checked one step further.
    pub fn poly(&self) -> Result<MultiPoly> {
        let k0 = self.k_min();
        let n = self.edges.len();
        let mut pts = Vec::with_capacity(n + 2);
        for k in k0..=k0 + n + 1 {
            let v = self.extensions_at(k)?;
            pts.push((k as i64, BigRational::from_integer(v.into())));
        }
        interpolate(&pts, n)
    }
}

/// Edges (i, j, w) on 0..=l with 1 <= cost <= budget.
fn candidate_edges(l: usize, budget: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for i in 0..l {
        for j in i + 1..=l {
            for w in 1..=budget as u32 + 1 {
                let e = (i, j, w);
                let c = edge_cost(&e);
                if c >= 1 && c <= budget {
                    out.push(e);
                }
            }
        }
    }
    out
}

/// All multisets drawn from `cands` (sorted) with total cost exactly `budget`.
pub(crate) fn edge_multisets(cands: &[Edge], budget: usize, f: &mut dyn FnMut(&[Edge])) {
    fn rec(cands: &[Edge], from: usize, left: usize, cur: &mut Vec<Edge>, f: &mut dyn FnMut(&[Edge])) {
        if left == 0 {
            f(cur);
            return;
        }
        for x in from..cands.len() {
            let c = edge_cost(&cands[x]);
            if c <= left {
                cur.push(cands[x]);
                rec(cands, x, left - c, cur, f);
                cur.pop();
            }
        }
    }
    rec(cands, 0, budget, &mut Vec::new(), f);
}

/// All templates of cogenus exactly delta, ordered by (l, edges).
pub fn enumerate_templates(delta: usize) -> Vec<Template> {
    let mut out = Vec::new();
    if delta == 0 {
        return out;
    }
    for l in 1..=delta + 1 {
        let cands = candidate_edges(l, delta);
        edge_multisets(&cands, delta, &mut |edges| {
            if let Ok(t) = Template::new(l, edges.to_vec()) {
                out.push(t);
            }
        });
    }
    out.sort();
    out
}
