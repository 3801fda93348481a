//! Prime fields `F_p` for odd primes `p` and small dense square matrices over them.
//!
//! Every element carries its modulus. Mixing moduli is reported as
//! [`Error::ModulusMismatch`] rather than coerced.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported matrix dimension.
pub const MAX_MATRIX_DIM: usize = 8;

/// Returns true when `p` is an odd prime.
pub fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn check_modulus(p: u32) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is not an odd prime")))
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue by Fermat's little theorem.
#[inline]
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, (p - 2) as u64, p)
}

/// A residue class modulo an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElement {
    value: u32,
    modulus: u32,
}

impl FpElement {
    /// Reduces `value` modulo `p`; negative inputs are allowed.
    pub fn new(value: i64, p: u32) -> Result<Self> {
        check_modulus(p)?;
        Ok(Self::from_raw(value.rem_euclid(p as i64) as u32, p))
    }

    pub fn zero(p: u32) -> Result<Self> {
        Self::new(0, p)
    }

    pub fn one(p: u32) -> Result<Self> {
        Self::new(1, p)
    }

    /// Caller guarantees `p` is an odd prime and `value < p`.
    pub(crate) fn from_raw(value: u32, modulus: u32) -> Self {
        debug_assert!(value < modulus);
        FpElement { value, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Signed representative in `(-p/2, p/2]`.
    pub fn centered(self) -> i64 {
        let v = self.value as i64;
        if v > (self.modulus / 2) as i64 {
            v - self.modulus as i64
        } else {
            v
        }
    }

    fn same_field(self, rhs: Self) -> Result<u32> {
        if self.modulus == rhs.modulus {
            Ok(self.modulus)
        } else {
            Err(Error::ModulusMismatch {
                left: self.modulus,
                right: rhs.modulus,
            })
        }
    }

    pub fn add(self, rhs: Self) -> Result<Self> {
        let p = self.same_field(rhs)?;
        Ok(Self::from_raw((self.value + rhs.value) % p, p))
    }

    pub fn sub(self, rhs: Self) -> Result<Self> {
        let p = self.same_field(rhs)?;
        Ok(Self::from_raw((self.value + p - rhs.value) % p, p))
    }

    pub fn mul(self, rhs: Self) -> Result<Self> {
        let p = self.same_field(rhs)?;
        Ok(Self::from_raw(mul_mod(self.value, rhs.value, p), p))
    }

    pub fn neg(self) -> Self {
        Self::from_raw((self.modulus - self.value) % self.modulus, self.modulus)
    }

    pub fn pow(self, exp: u64) -> Self {
        Self::from_raw(pow_mod(self.value, exp, self.modulus), self.modulus)
    }

    pub fn inv(self) -> Result<Self> {
        field_inv(self)
    }

    pub fn is_square(self) -> bool {
        self.value == 0 || pow_mod(self.value, ((self.modulus - 1) / 2) as u64, self.modulus) == 1
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Multiplicative inverse; zero has none.
pub fn field_inv(a: FpElement) -> Result<FpElement> {
    if a.is_zero() {
        return Err(Error::domain(format!("0 has no inverse mod {}", a.modulus)));
    }
    Ok(FpElement::from_raw(inv_mod(a.value, a.modulus), a.modulus))
}

/// Least `δ ≥ 2` that is not a square mod `p`.
pub fn smallest_nonsquare(p: u32) -> Result<FpElement> {
    check_modulus(p)?;
    (2..p)
        .map(|d| FpElement::from_raw(d, p))
        .find(|d| !d.is_square())
        .ok_or_else(|| Error::domain(format!("no non-square mod {p}")))
}

/// Dense `n × n` matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFp {
    n: usize,
    modulus: u32,
    entries: Vec<u32>,
}

impl MatrixFp {
    fn check_dim(n: usize) -> Result<()> {
        if (1..=MAX_MATRIX_DIM).contains(&n) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "matrix dimension {n} outside 1..={MAX_MATRIX_DIM}"
            )))
        }
    }

    pub fn zero(n: usize, p: u32) -> Result<Self> {
        Self::check_dim(n)?;
        check_modulus(p)?;
        Ok(MatrixFp {
            n,
            modulus: p,
            entries: vec![0; n * n],
        })
    }

    pub fn identity(n: usize, p: u32) -> Result<Self> {
        Self::scalar(n, FpElement::one(p)?)
    }

    pub fn scalar(n: usize, c: FpElement) -> Result<Self> {
        let mut m = Self::zero(n, c.modulus)?;
        for i in 0..n {
            m.entries[i * n + i] = c.value;
        }
        Ok(m)
    }

    /// Builds a matrix from integer rows, reducing each entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R], p: u32) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zero(n, p)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.entries[i * n + j] = v.rem_euclid(p as i64) as u32;
            }
        }
        Ok(m)
    }

    /// Builds a matrix from field elements, which must all share one modulus.
    pub fn from_elements(n: usize, elems: &[FpElement]) -> Result<Self> {
        Self::check_dim(n)?;
        if elems.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: n * n,
                right: elems.len(),
            });
        }
        let p = elems[0].modulus;
        let mut m = Self::zero(n, p)?;
        for (slot, e) in m.entries.iter_mut().zip(elems) {
            if e.modulus != p {
                return Err(Error::ModulusMismatch {
                    left: p,
                    right: e.modulus,
                });
            }
            *slot = e.value;
        }
        Ok(m)
    }

    /// Column-major raw residues; caller guarantees validity.
    pub(crate) fn from_columns_raw(n: usize, p: u32, cols: &[[u32; MAX_MATRIX_DIM]]) -> Self {
        let mut entries = vec![0; n * n];
        for (c, col) in cols.iter().take(n).enumerate() {
            for r in 0..n {
                entries[r * n + c] = col[r];
            }
        }
        MatrixFp {
            n,
            modulus: p,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn get(&self, row: usize, col: usize) -> FpElement {
        FpElement::from_raw(self.entries[row * self.n + col], self.modulus)
    }

    pub(crate) fn raw(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.n + col]
    }

    /// Raw residues, row-major.
    pub fn residues(&self) -> &[u32] {
        &self.entries
    }

    fn conformable(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        mat_mul(self, other)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.conformable(other)?;
        let p = self.modulus;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(MatrixFp {
            n: self.n,
            modulus: p,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.conformable(other)?;
        let p = self.modulus;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(MatrixFp {
            n: self.n,
            modulus: p,
            entries,
        })
    }

    pub fn scale(&self, c: FpElement) -> Result<Self> {
        if c.modulus != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: c.modulus,
            });
        }
        let p = self.modulus;
        Ok(MatrixFp {
            n: self.n,
            modulus: p,
            entries: self.entries.iter().map(|&a| mul_mod(a, c.value, p)).collect(),
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        MatrixFp {
            n,
            modulus: self.modulus,
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        mat_rank(self)
    }

    pub fn det(&self) -> FpElement {
        let (_, det) = eliminate(self.n, self.modulus, self.entries.clone());
        FpElement::from_raw(det, self.modulus)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Returns `c` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<FpElement> {
        let n = self.n;
        let c = self.entries[0];
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { c } else { 0 };
                if self.entries[i * n + j] != want {
                    return None;
                }
            }
        }
        Some(FpElement::from_raw(c, self.modulus))
    }
}

impl fmt::Display for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.raw(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Product over `F_p`.
pub fn mat_mul(a: &MatrixFp, b: &MatrixFp) -> Result<MatrixFp> {
    a.conformable(b)?;
    let n = a.n;
    let p = a.modulus as u64;
    let mut entries = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u64;
            for k in 0..n {
                acc += a.entries[i * n + k] as u64 * b.entries[k * n + j] as u64;
            }
            entries[i * n + j] = (acc % p) as u32;
        }
    }
    Ok(MatrixFp {
        n,
        modulus: a.modulus,
        entries,
    })
}

/// Rank over `F_p` by Gaussian elimination.
pub fn mat_rank(a: &MatrixFp) -> usize {
    eliminate(a.n, a.modulus, a.entries.clone()).0
}

/// Row-reduces an `n × n` row-major matrix in place; returns `(rank, det)`.
fn eliminate(n: usize, p: u32, mut m: Vec<u32>) -> (usize, u32) {
    let mut rank = 0;
    let mut det = 1u32;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| m[r * n + col] != 0) else {
            det = 0;
            continue;
        };
        if pivot != rank {
            for c in 0..n {
                m.swap(pivot * n + c, rank * n + c);
            }
            det = (p - det) % p;
        }
        let pv = m[rank * n + col];
        det = mul_mod(det, pv, p);
        let pinv = inv_mod(pv, p);
        for r in (rank + 1)..n {
            let f = mul_mod(m[r * n + col], pinv, p);
            if f == 0 {
                continue;
            }
            for c in col..n {
                let sub = mul_mod(f, m[rank * n + c], p);
                m[r * n + c] = (m[r * n + c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    (rank, if rank == n { det } else { 0 })
}
