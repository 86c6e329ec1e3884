//! Splitting a marked floor diagram into templates and an extended template, and back.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::ext::ExtendedTemplate;
use crate::floor::{CompatiblePair, Edge, FloorDiagram};
use crate::seq::{seq_multinomial, SupportMatrix, TangencySequence};
use crate::template::Template;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Templates with their positions k, left to right.
    pub templates: Vec<(Template, usize)>,
    pub ext: ExtendedTemplate,
}

impl Decomposition {
    pub fn cogenus(&self) -> usize {
        self.templates.iter().map(|(t, _)| t.cogenus()).sum::<usize>() + self.ext.cogenus()
    }
}

pub fn decompose(fd: &FloorDiagram, pair: &CompatiblePair) -> Result<Decomposition> {
    let d = fd.degree();
    if pair.alpha.len() != d || pair.beta.len() != d {
        return Err(Error::Incompatible(0));
    }
    let mut a = SupportMatrix::zero();
    let mut b = SupportMatrix::zero();
    for i in 1..d {
        for (j, n) in pair.alpha[d - i - 1].iter() {
            a.set(i, j, n);
        }
        for (j, n) in pair.beta[d - i - 1].iter() {
            b.set(i, j, n);
        }
    }
    let m = a.length().max(b.length());
    let right = d - m;

    let long: Vec<Edge> = fd
        .edges()
        .iter()
        .copied()
        .filter(|&(i, j, w)| !(j == i + 1 && w == 1))
        .collect();
    // blocks of overlapping edges, as (start, end, edges)
    let mut blocks: Vec<(usize, usize, Vec<Edge>)> = Vec::new();
    for e in long {
        match blocks.last_mut() {
            Some(blk) if e.0 < blk.1 => {
                blk.1 = blk.1.max(e.1);
                blk.2.push(e);
            }
            _ => blocks.push((e.0, e.1, alloc::vec![e])),
        }
    }
    let mut templates = Vec::new();
    let mut rest = Vec::new();
    for (lo, hi, edges) in blocks {
        if hi <= right {
            let shifted = edges.iter().map(|&(i, j, w)| (i - lo, j - lo, w)).collect();
            templates.push((Template::new(hi - lo, shifted)?, lo));
        } else {
            rest.push((lo, edges));
        }
    }
    let left = rest.iter().map(|r| r.0).min().unwrap_or(right).min(right);
    let lambda = rest
        .iter()
        .flat_map(|r| r.1.iter().map(|&(i, j, w)| (i - left, j - left, w)))
        .collect();
    let ext = ExtendedTemplate::new(d - left, lambda, a, b)?;
    Ok(Decomposition { templates, ext })
}

/// The unique marked diagram decomposing into `parts`, or the first violated condition.
pub fn recompose(
    parts: &Decomposition,
    alpha: &TangencySequence,
    beta: &TangencySequence,
) -> Result<(FloorDiagram, CompatiblePair)> {
    let d = (alpha.weighted() + beta.weighted()) as usize;
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let ext = &parts.ext;
    let l = ext.len();
    let limit = d as isize - l as isize;
    let mut prev_end = 0usize;
    for (idx, (t, k)) in parts.templates.iter().enumerate() {
        let k_min = t.k_min();
        if *k < k_min {
            return Err(Error::BelowKmin { index: idx, k: *k, k_min });
        }
        if idx > 0 && *k < prev_end {
            return Err(Error::Overlap { index: idx - 1, next: idx });
        }
        prev_end = k + t.len();
    }
    if let Some((t, k)) = parts.templates.last() {
        let end = k + t.len();
        if end as isize > limit {
            return Err(Error::TooFarRight { end, limit });
        }
    }
    if limit < 1 {
        return Err(Error::BelowDmin { d, d_min: ext.d_min() });
    }
    let alpha_d = alpha
        .checked_sub(&ext.a().col_sums())
        .map_err(|column| Error::RowSumExceeds { matrix: 'A', column })?;
    let beta_d = beta
        .checked_sub(&ext.b().col_sums())
        .map_err(|column| Error::RowSumExceeds { matrix: 'B', column })?;

    let base = d - l;
    let mut edges: Vec<Edge> = Vec::new();
    for (t, k) in &parts.templates {
        edges.extend(t.edges().iter().map(|&(i, j, w)| (i + k, j + k, w)));
    }
    edges.extend(ext.lambda().iter().map(|&(i, j, w)| (i + base, j + base, w)));
    let mut shorts = Vec::new();
    for v in 1..d {
        let crossing: u64 = edges
            .iter()
            .filter(|e| e.0 <= v && v < e.1)
            .map(|e| e.2 as u64)
            .sum();
        let used = ext.a().wls(d - v) + ext.b().wls(d - v) + crossing;
        if used > v as u64 {
            return Err(Error::NegativeShortEdges { gap: v });
        }
        for _ in 0..v as u64 - used {
            shorts.push((v, v + 1, 1));
        }
    }
    edges.extend(shorts);
    let fd = FloorDiagram::new(d, edges)?;

    let mut pa = alloc::vec![TangencySequence::zero(); d];
    let mut pb = alloc::vec![TangencySequence::zero(); d];
    for i in 1..=ext.a().length().max(ext.b().length()) {
        pa[d - i - 1] = ext.a().row(i);
        pb[d - i - 1] = ext.b().row(i);
    }
    pa[d - 1] = alpha_d;
    pb[d - 1] = beta_d;
    Ok((fd, CompatiblePair { alpha: pa, beta: pb }))
}

/// prod P_Gamma(k) * binom(alpha; rows of A) * Q(Lambda, A, B): the marking count
/// of the recomposed diagram for this pair, computed from its parts.
pub fn tail_factor(parts: &Decomposition, alpha: &TangencySequence, beta: &TangencySequence) -> Result<BigUint> {
    let mut acc = BigUint::from(1u32);
    for (t, k) in &parts.templates {
        acc *= t.extensions_at(*k)?;
    }
    acc *= seq_multinomial(alpha, &parts.ext.a().rows())?;
    acc *= parts.ext.q_count(alpha, beta)?;
    Ok(acc)
}
