//! Extended templates (Lambda, A, B): the right end of a decomposed diagram.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::floor::Edge;
use crate::poly::{falling, MultiPoly, Var};
use crate::poset::{ClassLabel, MarkingPoset};
use crate::seq::{factorial, SupportMatrix, TangencySequence};
use crate::template::{edge_cost, edge_multisets, kappa};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtendedTemplate {
    l: usize,
    lambda: Vec<Edge>,
    a: SupportMatrix,
    b: SupportMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtInvariants {
    pub l: usize,
    pub delta: usize,
    pub delta_lambda: usize,
    pub kappa: Vec<u64>,
    pub d_min: usize,
    pub i0: usize,
    pub s: usize,
    pub mu: BigUint,
}

impl ExtendedTemplate {
    pub fn new(l: usize, mut lambda: Vec<Edge>, a: SupportMatrix, b: SupportMatrix) -> Result<Self> {
        lambda.sort();
        let m = a.length().max(b.length());
        if l < m {
            return Err(Error::InvalidExtended(format!("length {l} is below l(A), l(B) = {m}")));
        }
        for &(i, j, w) in &lambda {
            if !(i < j && j <= l && w >= 1) {
                return Err(Error::InvalidExtended(format!("bad edge ({i},{j},{w})")));
            }
            if j == i + 1 && w == 1 {
                return Err(Error::InvalidExtended(format!("short edge ({i},{j},1)")));
            }
        }
        for v in 1..=l - m {
            if !lambda.iter().any(|e| e.0 < v && v < e.1) {
                return Err(Error::InvalidExtended(format!("vertex {v} is not covered")));
            }
        }
        Ok(Self { l, lambda, a, b })
    }

    pub fn trivial() -> Self {
        Self {
            l: 0,
            lambda: Vec::new(),
            a: SupportMatrix::zero(),
            b: SupportMatrix::zero(),
        }
    }

    pub fn len(&self) -> usize {
        self.l
    }

    /// True for length 0, i.e. the trivial extended template.
    pub fn is_empty(&self) -> bool {
        self.l == 0
    }

    pub fn lambda(&self) -> &[Edge] {
        &self.lambda
    }

    pub fn a(&self) -> &SupportMatrix {
        &self.a
    }

    pub fn b(&self) -> &SupportMatrix {
        &self.b
    }

    pub fn delta_lambda(&self) -> usize {
        self.lambda.iter().map(edge_cost).sum()
    }

    pub fn cogenus(&self) -> usize {
        self.delta_lambda() + self.a.delta() as usize + self.b.delta() as usize
    }

    pub fn multiplicity(&self) -> BigUint {
        let mut m = BigUint::one();
        for &(_, _, w) in &self.lambda {
            m *= w as u64 * w as u64;
        }
        m
    }

    /// l - g + 1 + kappa_g + wls(A)_{l+1-g} + wls(B)_{l+1-g}, for gap g in 1..=l.
    fn gap_excess(&self, kappa: &[u64], g: usize) -> u64 {
        let r = self.l + 1 - g;
        (self.l - g + 1) as u64 + kappa[g - 1] + self.a.wls(r) + self.b.wls(r)
    }

    pub fn invariants(&self) -> ExtInvariants {
        let kappa = kappa(self.l, &self.lambda);
        let mut d_min = 1;
        let mut i0 = 0;
        for g in 1..=self.l {
            let e = self.gap_excess(&kappa, g) as usize;
            if i0 == 0 || e > d_min {
                d_min = e;
                i0 = g;
            }
        }
        let s = if i0 == 0 {
            0
        } else {
            self.lambda.iter().filter(|e| e.0 + 1 == i0 && e.1 == i0).count()
        };
        ExtInvariants {
            l: self.l,
            delta: self.cogenus(),
            delta_lambda: self.delta_lambda(),
            kappa,
            d_min,
            i0,
            s,
            mu: self.multiplicity(),
        }
    }

    pub fn d_min(&self) -> usize {
        self.invariants().d_min
    }

    /// Defect delta(Lambda) + 2 delta(A) + 2 delta(B) - ||A|| - ||B||.
    pub fn defect(&self) -> usize {
        self.delta_lambda() + 2 * (self.a.delta() + self.b.delta()) as usize
            - (self.a.norm1() + self.b.norm1()) as usize
    }

    /// The poset P(Lambda, A, B) for degree d and unconstrained tangencies beta.
    pub fn marking_poset(&self, beta: &TangencySequence, d: usize) -> Result<MarkingPoset> {
        let inv = self.invariants();
        if d < inv.d_min {
            return Err(Error::BelowDmin { d, d_min: inv.d_min });
        }
        let residual = beta.checked_sub(&self.b.col_sums()).map_err(|column| Error::RowSumExceeds {
            matrix: 'B',
            column,
        })?;
        let l = self.l;
        let mut p = MarkingPoset::new(l + 2);
        for g in 1..=l {
            let e = self.gap_excess(&inv.kappa, g);
            let short = d as i64 - e as i64;
            if short < 0 {
                return Err(Error::NegativeShortEdges { gap: g });
            }
            p.add_fixed(g - 1, short as u64);
        }
        for &(i, j, w) in &self.lambda {
            p.add_class(i, j, 1, ClassLabel::Edge { src: i, tgt: j, weight: w });
        }
        for ((i, j), n) in self.b.iter() {
            p.add_class(l - i, l + 1, n, ClassLabel::Beta { src: l - i, weight: j as u32 });
        }
        for (j, n) in residual.iter() {
            p.add_class(l, l + 1, n, ClassLabel::Beta { src: l, weight: j as u32 });
        }
        Ok(p)
    }

    /// Q(alpha; beta): linear extensions of the marking poset up to equivalence.
    pub fn q_count(&self, alpha: &TangencySequence, beta: &TangencySequence) -> Result<BigUint> {
        alpha
            .checked_sub(&self.a.col_sums())
            .map_err(|column| Error::RowSumExceeds { matrix: 'A', column })?;
        let d = (alpha.weighted() + beta.weighted()) as usize;
        Ok(self.marking_poset(beta, d)?.count_extensions())
    }

    /// q in D, S, beta_j with Q = (|beta| - delta(B))! / beta! * q.
    ///
    /// Sums over coarse placements of the Lambda-edge and B-edge midpoints into
    /// gaps. Gap g <= l holds d - e_g fixed midpoints, so r extra elements give
    /// prod_{t=1}^{r} (D - e_g + t) / (class factorials). The last gap mixes the
    /// placed B-midpoints with the residual beta-vertices.
    pub fn q_poly(&self) -> MultiPoly {
        let inv = self.invariants();
        let l = self.l;
        // classes: (first gap, last gap, size), gaps numbered 1..=l+1
        let mut classes: Vec<(usize, usize, u64)> = Vec::new();
        let mut grouped: BTreeMap<Edge, u64> = BTreeMap::new();
        for &e in &self.lambda {
            *grouped.entry(e).or_default() += 1;
        }
        for (&(i, j, _), &n) in &grouped {
            classes.push((i + 1, j, n));
        }
        for ((i, _), n) in self.b.iter() {
            classes.push((l - i + 1, l + 1, n));
        }
        let excess: Vec<i64> = (1..=l).map(|g| self.gap_excess(&inv.kappa, g) as i64).collect();
        let norm_b = self.b.norm1();
        let delta_b = self.b.delta();

        let mut beta_part = MultiPoly::one();
        for (j, c) in self.b.col_sums().iter() {
            beta_part = &beta_part * &falling(&MultiPoly::var(Var::B(j as u16)), c as u32);
        }

        let mut total = MultiPoly::zero();
        let mut counts = alloc::vec![0u64; l + 1];
        let mut denom = BigUint::one();
        place(&classes, 0, &mut counts, &mut denom, &mut |counts, denom| {
            let mut term = MultiPoly::one();
            for g in 1..=l {
                for t in 1..=counts[g - 1] as i64 {
                    term = &term * &MultiPoly::linear(Var::D, t - excess[g - 1]);
                }
            }
            let r = counts[l];
            for u in (norm_b - r)..delta_b {
                term = &term * &MultiPoly::linear(Var::S, -(u as i64));
            }
            let inv_denom = BigRational::new(BigInt::one(), BigInt::from(denom.clone()));
            total += term.scale(&inv_denom);
        });
        &total * &beta_part
    }
}

/// Distributes each class over its gap range, tracking per-gap totals and the
/// product of the per-gap class factorials.
fn place(
    classes: &[(usize, usize, u64)],
    x: usize,
    counts: &mut Vec<u64>,
    denom: &mut BigUint,
    f: &mut dyn FnMut(&[u64], &BigUint),
) {
    if x == classes.len() {
        f(counts, denom);
        return;
    }
    let (lo, hi, size) = classes[x];
    #[allow(clippy::too_many_arguments)]
    fn spread(
        classes: &[(usize, usize, u64)],
        x: usize,
        g: usize,
        hi: usize,
        left: u64,
        counts: &mut Vec<u64>,
        denom: &mut BigUint,
        f: &mut dyn FnMut(&[u64], &BigUint),
    ) {
        if g == hi {
            counts[g - 1] += left;
            let saved = denom.clone();
            *denom *= factorial(left);
            place(classes, x + 1, counts, denom, f);
            *denom = saved;
            counts[g - 1] -= left;
            return;
        }
        for c in 0..=left {
            counts[g - 1] += c;
            let saved = denom.clone();
            *denom *= factorial(c);
            spread(classes, x, g + 1, hi, left - c, counts, denom, f);
            *denom = saved;
            counts[g - 1] -= c;
        }
    }
    spread(classes, x, lo, hi, size, counts, denom, f);
}

/// All matrices given as multisets of cells (i, j) with sum of i j equal to `cost`.
fn matrices_of_delta(cost: usize) -> Vec<SupportMatrix> {
    let cells: Vec<(usize, usize)> = (1..=cost.max(1))
        .flat_map(|i| (1..=cost / i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    fn rec(cells: &[(usize, usize)], from: usize, left: usize, m: &mut SupportMatrix, out: &mut Vec<SupportMatrix>) {
        if left == 0 {
            out.push(m.clone());
            return;
        }
        for x in from..cells.len() {
            let (i, j) = cells[x];
            if i * j <= left {
                let v = m.get(i, j);
                m.set(i, j, v + 1);
                rec(cells, x, left - i * j, m, out);
                m.set(i, j, v);
            }
        }
    }
    rec(&cells, 0, cost, &mut SupportMatrix::zero(), &mut out);
    out
}

/// All extended templates of cogenus exactly delta, sorted.
pub fn enumerate_extended_templates(delta: usize) -> Vec<ExtendedTemplate> {
    let mut out = Vec::new();
    for da in 0..=delta {
        for db in 0..=delta - da {
            let rem = delta - da - db;
            for a in matrices_of_delta(da) {
                for b in matrices_of_delta(db) {
                    let m = a.length().max(b.length());
                    if m == 0 {
                        if rem == 0 {
                            out.push(ExtendedTemplate::trivial());
                        }
                        continue;
                    }
                    for l in m..=m + rem {
                        let cands: Vec<Edge> = (0..l)
                            .flat_map(|i| (i + 1..=l).flat_map(move |j| (1..=rem as u32 + 1).map(move |w| (i, j, w))))
                            .filter(|e| (1..=rem).contains(&edge_cost(e)))
                            .collect();
                        let mut push = |edges: &[Edge]| {
                            if let Ok(t) = ExtendedTemplate::new(l, edges.to_vec(), a.clone(), b.clone()) {
                                out.push(t);
                            }
                        };
                        if rem == 0 {
                            push(&[]);
                        } else {
                            edge_multisets(&cands, rem, &mut push);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use alloc::vec;

    fn m(cells: &[((usize, usize), u64)]) -> SupportMatrix {
        let mut x = SupportMatrix::zero();
        for &((i, j), v) in cells {
            x.set(i, j, v);
        }
        x
    }

    fn seq(v: &[u64]) -> TangencySequence {
        v.into()
    }

    #[test]
    fn invariants_examples() {
        let t = ExtendedTemplate::new(1, vec![(0, 1, 2)], m(&[((1, 1), 1)]), SupportMatrix::zero()).unwrap();
        let inv = t.invariants();
        assert_eq!((inv.d_min, inv.s), (4, 1));
        let t = ExtendedTemplate::new(2, vec![(0, 2, 1)], SupportMatrix::zero(), m(&[((1, 1), 1)])).unwrap();
        let inv = t.invariants();
        assert_eq!((inv.d_min, inv.s), (3, 0));
        assert_eq!(ExtendedTemplate::trivial().d_min(), 1);
    }

    #[test]
    fn q_count_examples() {
        let b11 = ExtendedTemplate::new(1, vec![], SupportMatrix::zero(), m(&[((1, 1), 1)])).unwrap();
        assert_eq!(b11.q_count(&seq(&[]), &seq(&[3])).unwrap(), BigUint::from(5u32));
        let triv = ExtendedTemplate::trivial();
        assert_eq!(triv.q_count(&seq(&[]), &seq(&[2, 1])).unwrap(), BigUint::from(3u32));
        let a11 = ExtendedTemplate::new(1, vec![], m(&[((1, 1), 1)]), SupportMatrix::zero()).unwrap();
        assert_eq!(a11.q_count(&seq(&[1]), &seq(&[1])).unwrap(), BigUint::one());
        assert!(matches!(
            b11.q_count(&seq(&[]), &seq(&[0, 1])),
            Err(Error::RowSumExceeds { matrix: 'B', .. })
        ));
        assert!(matches!(b11.q_count(&seq(&[]), &seq(&[1])), Err(Error::BelowDmin { .. })));
    }

    #[test]
    fn q_poly_examples() {
        assert_eq!(ExtendedTemplate::trivial().q_poly(), MultiPoly::one());
        let b11 = ExtendedTemplate::new(1, vec![], SupportMatrix::zero(), m(&[((1, 1), 1)])).unwrap();
        assert_eq!(b11.q_poly(), parse_poly("b1 D + b1 S - b1").unwrap());
        let b11x2 = ExtendedTemplate::new(1, vec![], SupportMatrix::zero(), m(&[((1, 1), 2)])).unwrap();
        let expect = &parse_poly("1/2 b1^2 - 1/2 b1").unwrap()
            * &parse_poly("D^2 + 2 D S + S^2 - 5 D - 5 S + 6").unwrap();
        assert_eq!(b11x2.q_poly(), expect);
    }

    #[test]
    fn counts_per_cogenus() {
        assert_eq!(enumerate_extended_templates(0).len(), 1);
        assert_eq!(enumerate_extended_templates(1).len(), 2);
        assert_eq!(enumerate_extended_templates(2).len(), 11);
    }
}
