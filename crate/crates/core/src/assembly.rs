//! The main formula: first factors from templates, second factors from extended
//! templates, and their sum N_delta.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ext::{enumerate_extended_templates, ExtendedTemplate};
use crate::poly::{discrete_sum, falling, falling_product, rat, MultiPoly, Var};
use crate::seq::{factorial, TangencySequence};
use crate::template::{enumerate_templates, Template};
use crate::{Error, Result};

/// A template together with the data the first factor needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogTemplate {
    pub template: Template,
    pub delta: usize,
    pub l: usize,
    pub k_min: usize,
    pub mu: BigRational,
    /// P_Gamma in k
    pub poly: MultiPoly,
}

impl CatalogTemplate {
    pub fn new(template: Template) -> Result<Self> {
        let inv = template.invariants();
        let poly = template.poly()?;
        Ok(Self {
            delta: inv.delta,
            l: inv.l,
            k_min: inv.k_min,
            mu: BigRational::from_integer(BigInt::from(inv.mu)),
            poly,
            template,
        })
    }

    /// y -> mu * sum_{k = k_min}^{y - l} P(k) g(k).
    ///
    /// Where g is only eventually polynomial, the terms below its threshold use
    /// exact values, so the result is again exact for every y >= 0.
    fn sum_against(&self, g: &Eventual) -> Eventual {
        let c = self.k_min as i64;
        let l = self.l as i64;
        let start = c.max(g.from);
        let p_at = |k: i64| self.poly.evaluate(|_| rat(k));
        let mut head = BigRational::zero();
        for k in c..start {
            head += p_at(k) * g.value(k);
        }
        let tail = discrete_sum(&(&self.poly * &g.poly.rename(Var::X, Var::K)), start)
            .substitute(Var::X, &MultiPoly::linear(Var::X, -l));
        let poly = (&tail + &MultiPoly::constant(head)).scale(&self.mu);
        let from = start - 1 + l;
        let values = (0..from.max(0))
            .map(|y| {
                let mut acc = BigRational::zero();
                for k in c..=y - l {
                    acc += p_at(k) * g.value(k);
                }
                acc * &self.mu
            })
            .collect();
        Eventual { poly, from: from.max(0), values }
    }
}

/// A function on integers y >= 0 that agrees with `poly` (in x) for y >= from
/// and takes the listed exact values below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eventual {
    pub poly: MultiPoly,
    pub from: i64,
    pub values: Vec<BigRational>,
}

impl Eventual {
    pub fn one() -> Self {
        Self {
            poly: MultiPoly::one(),
            from: 0,
            values: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self {
            poly: MultiPoly::zero(),
            from: 0,
            values: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() && self.values.iter().all(Zero::is_zero)
    }

    pub fn value(&self, y: i64) -> BigRational {
        if y < 0 {
            BigRational::zero()
        } else if y >= self.from {
            self.poly.evaluate(|_| rat(y))
        } else {
            self.values[y as usize].clone()
        }
    }

    pub fn add(&self, other: &Eventual) -> Eventual {
        let from = self.from.max(other.from);
        Eventual {
            poly: &self.poly + &other.poly,
            from,
            values: (0..from).map(|y| self.value(y) + other.value(y)).collect(),
        }
    }
}

/// Templates grouped by cogenus (index 0 is empty).
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub by_cogenus: Vec<Vec<CatalogTemplate>>,
}

impl Catalog {
    pub fn build(max_delta: usize) -> Result<Self> {
        let mut by_cogenus = alloc::vec![Vec::new()];
        for c in 1..=max_delta {
            let mut row = Vec::new();
            for t in enumerate_templates(c) {
                row.push(CatalogTemplate::new(t)?);
            }
            by_cogenus.push(row);
        }
        Ok(Self { by_cogenus })
    }

    pub fn from_templates(max_delta: usize, templates: Vec<CatalogTemplate>) -> Self {
        let mut by_cogenus: Vec<Vec<CatalogTemplate>> = (0..=max_delta).map(|_| Vec::new()).collect();
        for t in templates {
            if t.delta <= max_delta {
                by_cogenus[t.delta].push(t);
            }
        }
        Self { by_cogenus }
    }

    pub fn max_delta(&self) -> usize {
        self.by_cogenus.len() - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = &CatalogTemplate> {
        self.by_cogenus.iter().flatten()
    }
}

/// H_0..H_delta: H_c(y) sums, over ordered template collections of total
/// cogenus c, the iterated sums with the last template ending at most at y.
pub fn first_factor_table(catalog: &Catalog, delta: usize) -> Vec<Eventual> {
    let mut h = alloc::vec![Eventual::one()];
    for c in 1..=delta {
        let mut acc = Eventual::zero();
        for dc in 1..=c.min(catalog.max_delta()) {
            for t in &catalog.by_cogenus[dc] {
                acc = acc.add(&t.sum_against(&h[c - dc]));
            }
        }
        h.push(acc);
    }
    h
}

/// H_{c,e}: as above, restricted to collections of template defect exactly e
/// and templates of cogenus at most t + 1. Indexed [c][e] for e <= t.
pub fn first_factor_table_by_defect(catalog: &Catalog, delta: usize, t: usize) -> Vec<Vec<Eventual>> {
    let mut h: Vec<Vec<Eventual>> = Vec::new();
    let mut base = alloc::vec![Eventual::zero(); t + 1];
    base[0] = Eventual::one();
    h.push(base);
    for c in 1..=delta {
        let mut row = alloc::vec![Eventual::zero(); t + 1];
        for dc in 1..=c.min(t + 1).min(catalog.max_delta()) {
            for tm in &catalog.by_cogenus[dc] {
                for e in (dc - 1)..=t {
                    let prev = &h[c - dc][e - (dc - 1)];
                    if !prev.is_zero() {
                        row[e] = row[e].add(&tm.sum_against(prev));
                    }
                }
            }
        }
        h.push(row);
    }
    h
}

/// The iterated sum for one ordered list of templates, outermost upper bound
/// D - l_ext - l(Gamma_m). Computed directly, without the table.
pub fn first_factor(templates: &[Template], l_ext: usize) -> Result<MultiPoly> {
    let mut g = Eventual::one();
    for t in templates {
        g = CatalogTemplate::new(t.clone())?.sum_against(&g);
    }
    Ok(g.poly.substitute(Var::X, &MultiPoly::linear(Var::D, -(l_ext as i64))))
}

/// R_delta(D) = H_delta(D).
pub fn r_poly(delta: usize) -> Result<MultiPoly> {
    let catalog = Catalog::build(delta)?;
    let h = first_factor_table(&catalog, delta);
    Ok(h[delta].poly.rename(Var::X, Var::D))
}

/// mu(Lambda) * binom(alpha; rows of A) * prod_{i=delta(B)}^{delta-1} (S - i) * q.
pub fn second_factor(ext: &ExtendedTemplate, delta: usize) -> MultiPoly {
    let inv = ext.invariants();
    let mut p = MultiPoly::constant(BigRational::from_integer(BigInt::from(inv.mu)));
    let mut denom = BigUint::one();
    for (j, c) in ext.a().col_sums().iter() {
        p = &p * &falling(&MultiPoly::var(Var::A(j as u16)), c as u32);
    }
    for (_, n) in ext.a().iter() {
        denom *= factorial(n);
    }
    p = p.scale(&BigRational::new(BigInt::one(), BigInt::from(denom)));
    let db = ext.b().delta() as u32;
    p = &p * &falling_product(Var::S, db, delta as u32);
    &p * &ext.q_poly()
}

/// The contribution of one extended template to N_delta, given H from `first_factor_table`.
pub fn ext_summand(ext: &ExtendedTemplate, delta: usize, h: &[Eventual]) -> MultiPoly {
    let c = delta - ext.cogenus();
    let first = h[c].poly.substitute(Var::X, &MultiPoly::linear(Var::D, -(ext.len() as i64)));
    &first * &second_factor(ext, delta)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodePolynomial {
    pub delta: usize,
    pub poly: MultiPoly,
}

impl NodePolynomial {
    /// 1^{beta_1} 2^{beta_2} ... (|beta| - delta)! / beta! * N_delta(d, |beta|, alpha, beta).
    pub fn evaluate(&self, alpha: &TangencySequence, beta: &TangencySequence) -> Result<BigUint> {
        let norm = beta.norm();
        if norm < self.delta as u64 {
            return Err(Error::OutOfDomain { norm, delta: self.delta });
        }
        let d = alpha.weighted() + beta.weighted();
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let int = |n: u64| BigRational::from_integer(BigInt::from(n));
        let value = self.poly.evaluate(|v| match v {
            Var::D => int(d),
            Var::S => int(norm),
            Var::A(i) => int(alpha.get(i as usize)),
            Var::B(i) => int(beta.get(i as usize)),
            Var::K | Var::X => BigRational::zero(),
        });
        let pre = BigRational::new(
            BigInt::from(beta.weight_power() * factorial(norm - self.delta as u64)),
            BigInt::from(beta.factorial()),
        );
        let total = value * pre;
        if !total.is_integer() || total < BigRational::zero() {
            return Err(Error::NotInteger(alloc::format!("{total}")));
        }
        Ok(total.to_integer().to_biguint().expect("non-negative"))
    }
}

/// N_delta summed over all extended templates.
pub fn node_polynomial(delta: usize) -> Result<NodePolynomial> {
    let catalog = Catalog::build(delta)?;
    let h = first_factor_table(&catalog, delta);
    let mut poly = MultiPoly::zero();
    for c in 0..=delta {
        for ext in enumerate_extended_templates(c) {
            poly += ext_summand(&ext, delta, &h);
        }
    }
    Ok(NodePolynomial { delta, poly })
}

/// Relative Severi degree through the node polynomial (requires |beta| >= delta).
pub fn evaluate_relative_severi(delta: usize, alpha: &TangencySequence, beta: &TangencySequence) -> Result<BigUint> {
    if beta.norm() < delta as u64 {
        return Err(Error::OutOfDomain {
            norm: beta.norm(),
            delta,
        });
    }
    node_polynomial(delta)?.evaluate(alpha, beta)
}

/// One summand of the main formula: an ordered template list and an extended template.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandIndex {
    pub templates: Vec<Template>,
    pub ext: ExtendedTemplate,
}

impl SummandIndex {
    pub fn cogenus(&self) -> usize {
        self.templates.iter().map(Template::cogenus).sum::<usize>() + self.ext.cogenus()
    }

    /// (sum of (delta(Gamma) - 1), delta(Lambda) + 2 delta(A) + 2 delta(B) - ||A|| - ||B||)
    pub fn defects(&self) -> (usize, usize) {
        let dt = self.templates.iter().map(|t| t.cogenus() - 1).sum();
        (dt, self.ext.defect())
    }

    /// first_factor * second_factor for this single summand.
    pub fn value(&self) -> Result<MultiPoly> {
        let delta = self.cogenus();
        Ok(&first_factor(&self.templates, self.ext.len())? * &second_factor(&self.ext, delta))
    }
}

/// Every summand index of total cogenus delta.
pub fn summand_indices(delta: usize) -> Vec<SummandIndex> {
    let by: Vec<Vec<Template>> = (0..=delta).map(enumerate_templates).collect();
    // ordered template lists of each total cogenus
    let mut lists: Vec<Vec<Vec<Template>>> = alloc::vec![alloc::vec![Vec::new()]];
    for c in 1..=delta {
        let mut row = Vec::new();
        for dc in 1..=c {
            for prefix in &lists[c - dc] {
                for t in &by[dc] {
                    let mut l = prefix.clone();
                    l.push(t.clone());
                    row.push(l);
                }
            }
        }
        lists.push(row);
    }
    let mut out = Vec::new();
    for c in 0..=delta {
        for ext in enumerate_extended_templates(c) {
            for l in &lists[delta - c] {
                out.push(SummandIndex {
                    templates: l.clone(),
                    ext: ext.clone(),
                });
            }
        }
    }
    out
}

/// Terms of N_delta of degree >= 3 delta - t, from summands of small defect only.
pub fn leading_terms(delta: usize, t: usize) -> Result<MultiPoly> {
    let catalog = Catalog::build((t + 1).min(delta))?;
    let h = first_factor_table_by_defect(&catalog, delta, t);
    let mut poly = MultiPoly::zero();
    for c in 0..=delta.min(t) {
        for ext in enumerate_extended_templates(c) {
            if ext.defect() > t {
                continue;
            }
            let mut first = MultiPoly::zero();
            for part in &h[delta - c] {
                first += &part.poly;
            }
            let first = first.substitute(Var::X, &MultiPoly::linear(Var::D, -(ext.len() as i64)));
            poly += &first * &second_factor(&ext, delta);
        }
    }
    let min = (3 * delta).saturating_sub(t) as u32;
    Ok(poly.truncate_below(min))
}
