//! Reference values transcribed from the published tables and displays.

use std::collections::BTreeMap;

use floorpoly_core::ext::ExtendedTemplate;
use floorpoly_core::floor::Edge;
use floorpoly_core::poly::{parse_poly, rat, rat_frac, Monomial, MultiPoly, Var};
use floorpoly_core::seq::SupportMatrix;
use floorpoly_core::template::Template;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// One row of the template table.
pub struct TemplateRow {
    pub edges: &'static [Edge],
    pub delta: usize,
    pub l: usize,
    pub mu: u64,
    pub kappa: &'static [u64],
    pub k_min: usize,
    pub p: &'static str,
    pub s: usize,
}

impl TemplateRow {
    pub fn template(&self) -> Template {
        Template::new(self.l, self.edges.to_vec()).expect("table rows are templates")
    }
}

pub const TEMPLATE_TABLE: &[TemplateRow] = &[
    TemplateRow { edges: &[(0, 1, 2)], delta: 1, l: 1, mu: 4, kappa: &[2], k_min: 2, p: "k - 1", s: 1 },
    TemplateRow { edges: &[(0, 2, 1)], delta: 1, l: 2, mu: 1, kappa: &[1, 1], k_min: 1, p: "2 k + 1", s: 1 },
    TemplateRow { edges: &[(0, 1, 3)], delta: 2, l: 1, mu: 9, kappa: &[3], k_min: 3, p: "k - 2", s: 1 },
    TemplateRow { edges: &[(0, 1, 2), (0, 1, 2)], delta: 2, l: 1, mu: 16, kappa: &[4], k_min: 4, p: "1/2 (k - 2) (k - 3)", s: 2 },
    TemplateRow { edges: &[(0, 2, 1), (0, 2, 1)], delta: 2, l: 2, mu: 1, kappa: &[2, 2], k_min: 2, p: "k (2 k - 1)", s: 0 },
    TemplateRow { edges: &[(0, 1, 2), (0, 2, 1)], delta: 2, l: 2, mu: 4, kappa: &[3, 1], k_min: 3, p: "2 k (k - 2)", s: 1 },
    TemplateRow { edges: &[(0, 2, 1), (1, 2, 2)], delta: 2, l: 2, mu: 4, kappa: &[1, 3], k_min: 2, p: "2 k (k - 1)", s: 1 },
    TemplateRow { edges: &[(0, 3, 1)], delta: 2, l: 3, mu: 1, kappa: &[1, 1, 1], k_min: 1, p: "3 (k + 1)", s: 0 },
    TemplateRow { edges: &[(0, 2, 1), (1, 3, 1)], delta: 2, l: 3, mu: 1, kappa: &[1, 2, 1], k_min: 1, p: "k (4 k + 5)", s: 0 },
];

/// One row of the extended-template table; matrices as ((i, j), entry).
pub struct ExtRow {
    pub lambda: &'static [Edge],
    pub a: &'static [((usize, usize), u64)],
    pub b: &'static [((usize, usize), u64)],
    pub delta: usize,
    pub l: usize,
    pub mu: u64,
    pub kappa: &'static [u64],
    pub d_min: usize,
    pub q: &'static str,
    pub s: usize,
}

fn matrix(cells: &[((usize, usize), u64)]) -> SupportMatrix {
    let mut m = SupportMatrix::zero();
    for &((i, j), v) in cells {
        m.set(i, j, v);
    }
    m
}

impl ExtRow {
    /// Length taken from the structure (edges and matrix rows), not the printed column.
    pub fn ext(&self) -> ExtendedTemplate {
        let (a, b) = (matrix(self.a), matrix(self.b));
        let l = self
            .lambda
            .iter()
            .map(|e| e.1)
            .chain([a.length(), b.length()])
            .max()
            .unwrap_or(0);
        ExtendedTemplate::new(l, self.lambda.to_vec(), a, b).expect("table rows are extended templates")
    }
}

const A11: &[((usize, usize), u64)] = &[((1, 1), 1)];
const NONE: &[((usize, usize), u64)] = &[];

pub const EXT_TABLE: &[ExtRow] = &[
    ExtRow { lambda: &[], a: NONE, b: NONE, delta: 0, l: 0, mu: 1, kappa: &[], d_min: 1, q: "1", s: 0 },
    ExtRow { lambda: &[], a: A11, b: NONE, delta: 1, l: 1, mu: 1, kappa: &[0], d_min: 1, q: "1", s: 0 },
    ExtRow { lambda: &[], a: NONE, b: A11, delta: 1, l: 1, mu: 1, kappa: &[0], d_min: 1, q: "b1 (D + S - 1)", s: 0 },
    ExtRow { lambda: &[(0, 1, 2)], a: A11, b: NONE, delta: 2, l: 1, mu: 4, kappa: &[2], d_min: 4, q: "D - 3", s: 1 },
    ExtRow { lambda: &[(0, 1, 2)], a: NONE, b: A11, delta: 2, l: 1, mu: 4, kappa: &[2], d_min: 4, q: "b1 (D - 3) (D + S - 2)", s: 1 },
    ExtRow { lambda: &[(0, 2, 1)], a: A11, b: NONE, delta: 2, l: 2, mu: 1, kappa: &[1, 1], d_min: 3, q: "2 (D - 2)", s: 0 },
    ExtRow { lambda: &[(0, 2, 1)], a: NONE, b: A11, delta: 2, l: 2, mu: 1, kappa: &[1, 1], d_min: 3, q: "b1 (D - 2) (2 D + 2 S - 3)", s: 0 },
    ExtRow { lambda: &[], a: &[((1, 1), 2)], b: NONE, delta: 2, l: 1, mu: 1, kappa: &[0], d_min: 3, q: "1", s: 0 },
    ExtRow { lambda: &[], a: A11, b: A11, delta: 2, l: 1, mu: 1, kappa: &[0], d_min: 3, q: "b1 (D + S - 2)", s: 0 },
    ExtRow { lambda: &[], a: NONE, b: &[((1, 1), 2)], delta: 2, l: 1, mu: 1, kappa: &[0], d_min: 3, q: "1/2 b1 (b1 - 1) (D^2 + 2 D S + S^2 - 5 D - 5 S + 6)", s: 0 },
    ExtRow { lambda: &[], a: &[((1, 2), 1)], b: NONE, delta: 2, l: 1, mu: 1, kappa: &[0], d_min: 3, q: "1", s: 0 },
    ExtRow { lambda: &[], a: NONE, b: &[((1, 2), 1)], delta: 2, l: 1, mu: 1, kappa: &[0], d_min: 3, q: "b2 (S - 1) (D + S - 2)", s: 0 },
    ExtRow { lambda: &[], a: &[((2, 1), 1)], b: NONE, delta: 2, l: 3, mu: 1, kappa: &[0, 0], d_min: 3, q: "1", s: 0 },
    ExtRow { lambda: &[], a: NONE, b: &[((2, 1), 1)], delta: 2, l: 3, mu: 1, kappa: &[0, 0], d_min: 3, q: "b1 (S - 1) (2 D + S - 3)", s: 0 },
];

/// Printed entries known to disagree with the definitions, as (row, column).
pub const TEMPLATE_TABLE_ERRATA: &[(usize, &str)] = &[(1, "s")];
pub const EXT_TABLE_ERRATA: &[(usize, &str)] = &[(1, "d_min"), (2, "d_min"), (12, "l"), (13, "l")];

const GOLDEN: [&str; 4] = [
    include_str!("../golden/n0.txt"),
    include_str!("../golden/n1.txt"),
    include_str!("../golden/n2.txt"),
    include_str!("../golden/n3.txt"),
];

/// The appendix polynomial N_delta, delta <= 3, as printed.
pub fn appendix(delta: usize) -> Option<MultiPoly> {
    let text = GOLDEN.get(delta)?;
    let mut p = MultiPoly::zero();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        p += parse_poly(line).expect("golden lines parse");
    }
    Some(p)
}

/// The one printed coefficient of N_2 that is not integer valued: the d |beta|^2
/// term is printed as 3/2, recomputation gives 83/2.
pub fn appendix_erratum(delta: usize) -> Option<(Monomial, BigRational, BigRational)> {
    (delta == 2).then(|| (Monomial::from_pairs(vec![(Var::D, 1), (Var::S, 2)]), rat_frac(3, 2), rat_frac(83, 2)))
}

pub const PRINTED_TERM_COUNTS: &[(usize, usize)] = &[(4, 599), (5, 1625), (6, 3980)];

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// 3^delta / delta!
fn lead_factor(delta: usize) -> BigRational {
    BigRational::new(BigInt::from(3).pow(delta as u32), factorial(delta))
}

/// Coefficients of d^{2 delta}, d^{2 delta - 1}, ..., d^{2 delta - 5} in the
/// displayed expansion of R_delta(d).
pub fn r_expansion(delta: usize) -> [BigRational; 6] {
    let t = delta as i64;
    let inner = [
        rat(1),
        rat_frac(-8 * t, 3),
        rat_frac(t * (11 * t + 1), 9),
        rat_frac(t * (t - 1) * (496 * t - 245), 162),
        rat_frac(-t * (t - 1) * (1685 * t * t - 2773 * t + 1398), 486),
        rat_frac(-t * (t - 1) * (t - 2) * (7352 * t * t + 11611 * t - 25221), 7290),
    ];
    let f = lead_factor(delta);
    inner.map(|c| c * &f)
}

/// The displayed terms of degree >= 3 delta - 2 of N_delta, instantiated at delta.
/// Exponents are tracked as signed integers until the end, since the bracketed
/// groups carry d^{2 delta - 4} |beta|^{delta - 2}.
pub fn theorem_leading(delta: usize) -> Result<MultiPoly, String> {
    if delta == 0 {
        return Ok(MultiPoly::one());
    }
    let t = delta as i64;
    // (coefficient, d, |beta|, alpha_1, beta_1)
    type Term = (BigRational, i64, i64, u32, u32);
    let mut terms: Vec<Term> = vec![(rat(1), 2 * t, t, 0, 0)];
    let first: [(BigRational, i64, i64, u32, u32); 5] = [
        (rat_frac(-3 * (t - 1), 2), 2, 0, 0, 0),
        (rat(-8), 1, 1, 0, 0),
        (rat(1), 0, 1, 1, 0),
        (rat(1), 1, 0, 0, 1),
        (rat(1), 0, 1, 0, 1),
    ];
    for (c, d, s, a, b) in first {
        terms.push((c * rat_frac(t, 3), d + 2 * t - 2, s + t - 1, a, b));
    }
    let second: [(BigRational, i64, i64, u32, u32); 14] = [
        (rat_frac(3 * (t - 1) * (t - 2) * (3 * t - 1), 8), 4, 0, 0, 0),
        (rat(12 * t * (t - 1)), 3, 1, 0, 0),
        (rat(11 * t + 1), 2, 2, 0, 0),
        (rat_frac(-3 * t * (t - 1), 2), 3, 0, 0, 1),
        (rat_frac(-3 * t * (t - 1), 2), 2, 1, 1, 0),
        (rat_frac(-(t + 5) * (3 * t - 2), 2), 2, 1, 0, 1),
        (rat(-8 * (t - 1)), 1, 2, 1, 0),
        (rat(-8 * (t - 1)), 1, 2, 0, 1),
        (rat_frac(t - 1, 2), 2, 0, 0, 2),
        (rat_frac(t - 1, 2), 0, 2, 2, 0),
        (rat_frac(t - 1, 2), 0, 2, 0, 2),
        (rat(t - 1), 1, 1, 1, 1),
        (rat(t - 1), 1, 1, 0, 2),
        (rat(t - 1), 0, 2, 1, 1),
    ];
    for (c, d, s, a, b) in second {
        terms.push((c * rat_frac(t, 9), d + 2 * t - 4, s + t - 2, a, b));
    }
    let mut collected: BTreeMap<(i64, i64, u32, u32), BigRational> = BTreeMap::new();
    for (c, d, s, a, b) in terms {
        *collected.entry((d, s, a, b)).or_insert_with(BigRational::zero) += c;
    }
    let mut p = MultiPoly::zero();
    for ((d, s, a, b), c) in collected {
        if c.is_zero() {
            continue;
        }
        if d < 0 || s < 0 {
            return Err(format!("term d^{d} |beta|^{s} with coefficient {c}"));
        }
        let m = Monomial::from_pairs(vec![(Var::D, d as u32), (Var::S, s as u32), (Var::A(1), a), (Var::B(1), b)]);
        p.add_term(m, c);
    }
    Ok(p.scale(&lead_factor(delta)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        for row in TEMPLATE_TABLE {
            assert_eq!(row.template().cogenus(), row.delta);
            parse_poly(row.p).unwrap();
        }
        for row in EXT_TABLE {
            assert_eq!(row.ext().cogenus(), row.delta);
            parse_poly(row.q).unwrap();
        }
    }

    #[test]
    fn goldens_have_printed_sizes() {
        let sizes: Vec<usize> = (0..4).map(|d| appendix(d).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 7, 47, 189]);
        let (m, printed, _) = appendix_erratum(2).unwrap();
        assert_eq!(appendix(2).unwrap().coeff(&m), printed);
    }

    #[test]
    fn leading_display_at_one_is_n1() {
        assert_eq!(theorem_leading(1).unwrap(), appendix(1).unwrap());
        assert_eq!(r_expansion(1)[..3], [rat(3), rat(-8), rat(4)]);
    }
}
