//! Integer polynomials in the indeterminate `q` and Gaussian binomial coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact nonnegative count. Serializes as a decimal string.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Count(pub BigUint);

impl Count {
    pub fn zero() -> Self {
        Count(BigUint::zero())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Converts a signed value, failing on negatives.
    pub fn try_from_int(v: BigInt) -> Result<Self> {
        v.to_biguint()
            .map(Count)
            .ok_or_else(|| Error::domain(format!("negative count {v}")))
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count(v)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// Serializes a big integer as a decimal string.
pub(crate) fn serialize_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Add for &Count {
    type Output = Count;
    fn add(self, rhs: &Count) -> Count {
        Count(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Count> for Count {
    fn add_assign(&mut self, rhs: &Count) {
        self.0 += &rhs.0;
    }
}

impl std::iter::Sum for Count {
    fn sum<I: Iterator<Item = Count>>(iter: I) -> Count {
        Count(iter.map(|c| c.0).sum())
    }
}

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

/// Polynomial in `q` with integer coefficients; `coeffs[i]` multiplies `q^i`.
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c · q^power`
    pub fn monomial(c: impl Into<BigInt>, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// `q^power + c`, the usual factor shape in order formulas.
    pub fn binomial_factor(power: usize, c: i64) -> Self {
        &Self::monomial(1, power) + &Self::constant(c)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        qpoly_degree(self)
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        qpoly_eval(self, q)
    }

    pub fn eval_u64(&self, q: u64) -> BigInt {
        qpoly_eval(self, &BigInt::from(q))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitutes `q^s` for `q`.
    pub fn substitute_power(&self, s: usize) -> Self {
        assert!(s >= 1, "substitution exponent must be positive");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * s + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * s] = c.clone();
        }
        QPoly { coeffs }
    }

    /// Exact division of every coefficient by `d`; fails if any is not divisible.
    pub fn exact_div(&self, d: i64) -> Result<Self> {
        let d = BigInt::from(d);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (quot, rem) = c.div_rem(&d);
            if !rem.is_zero() {
                return Err(Error::domain(format!(
                    "coefficient {c} is not divisible by {d}"
                )));
            }
            out.push(quot);
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.sign() != Sign::Minus)
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a QPoly>) -> QPoly {
        factors.into_iter().fold(QPoly::one(), |acc, f| &acc * f)
    }

    pub fn render(&self) -> String {
        render(self)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        QPoly::from_coeffs(coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

/// Horner evaluation.
pub fn qpoly_eval(poly: &QPoly, q: &BigInt) -> BigInt {
    poly.coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * q + c)
}

pub fn qpoly_degree(poly: &QPoly) -> Degree {
    match poly.coeffs.len() {
        0 => Degree::MinusInfinity,
        len => Degree::Finite(len - 1),
    }
}

/// Descending powers joined by `+`/`-`, e.g. `q^4 + q^3 + 2*q^2 + q + 1`.
fn render(poly: &QPoly) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (power, c) in poly.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let var = match power {
            0 => String::new(),
            1 => "q".to_string(),
            k => format!("q^{k}"),
        };
        if var.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{mag}*{var}"));
        }
    }
    out
}

fn check_binomial_args(m: i64, k: i64) -> Result<(usize, usize)> {
    if m < 0 || k < 0 || k > m {
        return Err(Error::domain(format!(
            "Gaussian binomial needs 0 <= k <= m, got m = {m}, k = {k}"
        )));
    }
    Ok((m as usize, k as usize))
}

/// Exact value of the Gaussian binomial `[m, k]_q` from the product/quotient definition.
pub fn gaussian_binomial_exact(m: i64, k: i64, q: u64) -> Result<Count> {
    let (m, k) = check_binomial_args(m, k)?;
    if q < 2 {
        return Err(Error::domain(format!("q must be at least 2, got {q}")));
    }
    let q = BigUint::from(q);
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((m - i) as u32) - &one;
        den *= q.pow((i + 1) as u32) - &one;
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "Gaussian binomial quotient is not exact");
    Ok(Count(quot))
}

/// Row `m` of the Gaussian triangle: `[m, k]_q` for `k = 0..=m`, built by the
/// Pascal-type recurrence `[m,k] = [m-1,k] + q^(m-k) [m-1,k-1]`.
pub fn gaussian_binomial_row(m: usize) -> Vec<QPoly> {
    let mut row = vec![QPoly::one()];
    for mm in 1..=m {
        let mut next = Vec::with_capacity(mm + 1);
        for k in 0..=mm {
            let upper = if k < mm { row[k].clone() } else { QPoly::zero() };
            let lower = if k >= 1 {
                row[k - 1].shift(mm - k)
            } else {
                QPoly::zero()
            };
            next.push(&upper + &lower);
        }
        row = next;
    }
    row
}

/// The polynomial `[m, k]_q`.
pub fn gaussian_binomial_poly(m: i64, k: i64) -> Result<QPoly> {
    let (m, k) = check_binomial_args(m, k)?;
    Ok(gaussian_binomial_row(m).swap_remove(k))
}

/// Values of `[m, k]_q` at a fixed integer `q` for all `0 <= k <= m <= m_max`,
/// filled in by the Pascal-type recurrence over big integers.
#[derive(Debug, Clone)]
pub struct GaussianTable {
    q: u64,
    rows: Vec<Vec<BigUint>>,
}

impl GaussianTable {
    pub fn new(m_max: usize, q: u64) -> Self {
        let big_q = BigUint::from(q);
        let mut powers = vec![BigUint::one()];
        for i in 1..=m_max {
            let next = &powers[i - 1] * &big_q;
            powers.push(next);
        }
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for m in 1..=m_max {
            let prev = &rows[m - 1];
            let row = (0..=m)
                .map(|k| {
                    let upper = if k < m { prev[k].clone() } else { BigUint::zero() };
                    if k >= 1 {
                        upper + &powers[m - k] * &prev[k - 1]
                    } else {
                        upper
                    }
                })
                .collect();
            rows.push(row);
        }
        GaussianTable { q, rows }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, m: usize, k: usize) -> &BigUint {
        &self.rows[m][k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Number of k-dimensional subspaces of F_2^m, by enumerating reduced
    /// row-echelon bases as bit patterns.
    fn count_subspaces_f2(m: usize, k: usize) -> u64 {
        let vectors = 1u32 << m;
        let mut seen = std::collections::HashSet::new();
        fn span(basis: &[u32]) -> Vec<u32> {
            let mut s = vec![0u32];
            for &b in basis {
                let extra: Vec<u32> = s.iter().map(|v| v ^ b).collect();
                s.extend(extra);
            }
            s.sort_unstable();
            s.dedup();
            s
        }
        fn rec(
            start: u32,
            vectors: u32,
            basis: &mut Vec<u32>,
            k: usize,
            seen: &mut std::collections::HashSet<Vec<u32>>,
        ) {
            if basis.len() == k {
                let s = span(basis);
                if s.len() == 1 << k {
                    seen.insert(s);
                }
                return;
            }
            for v in start..vectors {
                basis.push(v);
                rec(v + 1, vectors, basis, k, seen);
                basis.pop();
            }
        }
        rec(1, vectors, &mut Vec::new(), k, &mut seen);
        seen.len() as u64
    }

    #[test]
    fn subspace_count_oracle() {
        assert_eq!(count_subspaces_f2(4, 2), 35);
        assert_eq!(gaussian_binomial_exact(4, 2, 2).unwrap(), Count::from(35));
        for m in 1..=5 {
            for k in 0..=m {
                assert_eq!(
                    gaussian_binomial_exact(m as i64, k as i64, 2).unwrap(),
                    Count::from(count_subspaces_f2(m, k)),
                    "m = {m}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn exact_examples() {
        for q in 2..10 {
            for m in 0..6 {
                assert_eq!(gaussian_binomial_exact(m, 0, q).unwrap(), Count::from(1));
            }
        }
        assert_eq!(gaussian_binomial_exact(2, 1, 3).unwrap(), Count::from(4));
        assert!(gaussian_binomial_exact(3, 4, 2).is_err());
        assert!(gaussian_binomial_exact(3, -1, 2).is_err());
        assert!(gaussian_binomial_exact(3, 1, 1).is_err());
    }

    #[test]
    fn poly_examples() {
        for m in 0..8 {
            assert_eq!(gaussian_binomial_poly(m, m).unwrap(), QPoly::one());
        }
        assert_eq!(gaussian_binomial_poly(2, 1).unwrap(), QPoly::from_i64s(&[1, 1]));
        let b42 = gaussian_binomial_poly(4, 2).unwrap();
        assert_eq!(b42, QPoly::from_i64s(&[1, 1, 2, 1, 1]));
        assert_eq!(b42.render(), "q^4 + q^3 + 2*q^2 + q + 1");
        assert!(gaussian_binomial_poly(2, 3).is_err());
    }

    #[test]
    fn eval_and_degree() {
        let p = QPoly::from_i64s(&[1, 1]);
        assert_eq!(p.eval_u64(3), BigInt::from(4));
        assert_eq!(QPoly::zero().eval_u64(17), BigInt::zero());
        let b42 = gaussian_binomial_poly(4, 2).unwrap();
        assert_eq!(b42.eval_u64(2), BigInt::from(35));
        assert_eq!(p.degree(), Degree::Finite(1));
        assert_eq!(QPoly::zero().degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
        for m in 0..12i64 {
            for k in 0..=m {
                let d = gaussian_binomial_poly(m, k).unwrap().degree();
                assert_eq!(d, Degree::Finite((k * (m - k)) as usize));
            }
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(QPoly::zero().render(), "0");
        assert_eq!(QPoly::from_i64s(&[-1, 0, 1]).render(), "q^2 - 1");
        assert_eq!(QPoly::from_i64s(&[0, -3]).render(), "-3*q");
        assert_eq!(QPoly::from_i64s(&[2]).render(), "2");
        assert_eq!(QPoly::from_i64s(&[0, 1, 0, -2]).render(), "-2*q^3 + q");
    }

    #[test]
    fn substitution_and_halving() {
        let p = QPoly::from_i64s(&[1, 2, 3]);
        assert_eq!(p.substitute_power(2), QPoly::from_i64s(&[1, 0, 2, 0, 3]));
        assert_eq!(
            QPoly::from_i64s(&[2, 4]).exact_div(2).unwrap(),
            QPoly::from_i64s(&[1, 2])
        );
        assert!(QPoly::from_i64s(&[2, 3]).exact_div(2).is_err());
    }

    #[test]
    fn table_matches_product_formula() {
        for q in [2u64, 3, 5, 9] {
            let t = GaussianTable::new(12, q);
            for m in 0..=12 {
                for k in 0..=m {
                    assert_eq!(
                        Count(t.get(m, k).clone()),
                        gaussian_binomial_exact(m as i64, k as i64, q).unwrap()
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn poly_eval_matches_exact(m in 0i64..20, k_frac in 0.0f64..=1.0, q in 2u64..60) {
            let k = ((m as f64) * k_frac).round() as i64;
            let poly = gaussian_binomial_poly(m, k).unwrap();
            let exact = gaussian_binomial_exact(m, k, q).unwrap();
            prop_assert_eq!(Count::try_from_int(poly.eval_u64(q)).unwrap(), exact);
            prop_assert!(poly.has_nonnegative_coeffs());
        }

        #[test]
        fn ring_ops_commute_with_eval(
            a in prop::collection::vec(-20i64..20, 0..6),
            b in prop::collection::vec(-20i64..20, 0..6),
            q in -5i64..9,
        ) {
            let (pa, pb) = (QPoly::from_i64s(&a), QPoly::from_i64s(&b));
            let q = BigInt::from(q);
            prop_assert_eq!((&pa * &pb).eval(&q), pa.eval(&q) * pb.eval(&q));
            prop_assert_eq!((&pa + &pb).eval(&q), pa.eval(&q) + pb.eval(&q));
            prop_assert_eq!((&pa - &pb).eval(&q), pa.eval(&q) - pb.eval(&q));
        }
    }
}
