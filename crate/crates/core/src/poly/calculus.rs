use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rat, MultiPoly, Var};
use crate::seq::factorial;
use crate::{Error, Result};

/// y (y - 1) ... (y - n + 1)
pub fn falling(y: &MultiPoly, n: u32) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for i in 0..n {
        acc = &acc * &(y - &MultiPoly::int(i as i64));
    }
    acc
}

/// prod_{i=c}^{delta-1} (var - i), expanded. Empty for c = delta.
pub fn falling_product(var: Var, c: u32, delta: u32) -> MultiPoly {
    let x = MultiPoly::var(var);
    let mut acc = MultiPoly::one();
    for i in c..delta {
        acc = &acc * &(&x - &MultiPoly::int(i as i64));
    }
    acc
}

/// Signed Stirling number of the first kind s(n, m).
pub fn stirling_first(n: u32, m: u32) -> BigInt {
    // row[j] = s(i, j)
    let mut row = alloc::vec![BigInt::zero(); n as usize + 1];
    row[0] = BigInt::one();
    for i in 0..n as usize {
        for j in (1..=i + 1).rev() {
            let prev = row[j - 1].clone();
            row[j] = prev - BigInt::from(i) * &row[j];
        }
        row[0] = BigInt::zero();
    }
    row.get(m as usize).cloned().unwrap_or_default()
}

/// F(x) with F(x) = sum_{k=c}^{x} p(k) for all integers x >= c - 1.
///
/// `p` is a polynomial in k whose coefficients may involve other variables;
/// the result is in x. Uses Newton's forward differences at c:
/// sum_{t=0}^{x-c} binom(t, j) = binom(x - c + 1, j + 1).
pub fn discrete_sum(p: &MultiPoly, c: i64) -> MultiPoly {
    let n = p.degree_in(Var::K) as usize;
    let mut diffs: Vec<MultiPoly> = (0..=n)
        .map(|t| p.substitute_value(Var::K, &rat(c + t as i64)))
        .collect();
    let y = MultiPoly::linear(Var::X, 1 - c);
    let mut out = MultiPoly::zero();
    for j in 0..=n {
        let delta_j = diffs[0].clone();
        if !delta_j.is_zero() {
            let basis = falling(&y, j as u32 + 1)
                .scale(&BigRational::new(BigInt::one(), factorial(j as u64 + 1).into()));
            out += &delta_j * &basis;
        }
        for t in 0..diffs.len() - 1 {
            diffs[t] = &diffs[t + 1] - &diffs[t];
        }
        diffs.pop();
    }
    out
}

/// The polynomial in k of the given degree through the first `degree + 1`
/// points; every remaining point must lie on it too.
pub fn interpolate(points: &[(i64, BigRational)], degree: usize) -> Result<MultiPoly> {
    if points.len() < degree + 1 {
        return Err(Error::TooFewPoints {
            needed: degree + 1,
            got: points.len(),
        });
    }
    for (i, a) in points.iter().enumerate() {
        if points[..i].iter().any(|b| b.0 == a.0) {
            return Err(Error::RepeatedAbscissa(a.0));
        }
    }
    let base = &points[..=degree];
    // Newton divided differences
    let mut coef: Vec<BigRational> = base.iter().map(|p| p.1.clone()).collect();
    for j in 1..=degree {
        for i in (j..=degree).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = rat(base[i].0 - base[i - j].0);
            coef[i] = num / den;
        }
    }
    let mut poly = MultiPoly::zero();
    let mut basis = MultiPoly::one();
    for (j, c) in coef.iter().enumerate() {
        poly += basis.scale(c);
        basis = &basis * &MultiPoly::linear(Var::K, -base[j].0);
    }
    for (x, y) in &points[degree + 1..] {
        let v = poly.evaluate(|_| rat(*x));
        if &v != y {
            return Err(Error::DegreeOverflow(*x, degree));
        }
    }
    Ok(poly)
}
