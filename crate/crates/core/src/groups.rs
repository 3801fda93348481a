//! Group families, their forms and orders, and algebraic-group descriptors.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_odd_prime, smallest_nonsquare, FpElement, MatrixFp, MAX_MATRIX_DIM};
use crate::qpoly::{Count, QPoly};

/// Every group family the crate knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupFamily {
    Gl,
    U,
    Sp,
    Gsp,
    OOdd,
    SoOdd,
    OPlus,
    OMinus,
    SoPlus,
    SoMinus,
    GoPlus,
    GoMinus,
    GoPlusConn,
    GoMinusConn,
}

impl GroupFamily {
    pub const ALL: [GroupFamily; 14] = [
        GroupFamily::Gl,
        GroupFamily::U,
        GroupFamily::Sp,
        GroupFamily::Gsp,
        GroupFamily::OOdd,
        GroupFamily::SoOdd,
        GroupFamily::OPlus,
        GroupFamily::OMinus,
        GroupFamily::SoPlus,
        GroupFamily::SoMinus,
        GroupFamily::GoPlus,
        GroupFamily::GoMinus,
        GroupFamily::GoPlusConn,
        GroupFamily::GoMinusConn,
    ];

    pub fn tag(self) -> &'static str {
        use GroupFamily::*;
        match self {
            Gl => "gl",
            U => "u",
            Sp => "sp",
            Gsp => "gsp",
            OOdd => "o_odd",
            SoOdd => "so_odd",
            OPlus => "o_plus",
            OMinus => "o_minus",
            SoPlus => "so_plus",
            SoMinus => "so_minus",
            GoPlus => "go_plus",
            GoMinus => "go_minus",
            GoPlusConn => "go_plus_conn",
            GoMinusConn => "go_minus_conn",
        }
    }

    /// Matrix dimension for size parameter `n`.
    pub fn matrix_dim(self, n: usize) -> usize {
        use GroupFamily::*;
        match self {
            Gl | U => n,
            OOdd | SoOdd => 2 * n + 1,
            _ => 2 * n,
        }
    }

    pub fn is_similitude(self) -> bool {
        use GroupFamily::*;
        matches!(self, Gsp | GoPlus | GoMinus | GoPlusConn | GoMinusConn)
    }

    /// Families cut out by `det g = 1` on top of the form condition.
    pub fn is_special(self) -> bool {
        use GroupFamily::*;
        matches!(self, SoOdd | SoPlus | SoMinus)
    }

    pub fn is_connected_similitude(self) -> bool {
        matches!(self, GroupFamily::GoPlusConn | GroupFamily::GoMinusConn)
    }

    /// Kind of the defining form, or `None` for GL/U.
    pub fn form_kind(self) -> Option<FormKind> {
        use GroupFamily::*;
        match self {
            Gl | U => None,
            Sp | Gsp => Some(FormKind::Symplectic),
            OOdd | SoOdd => Some(FormKind::SymmetricOdd),
            OPlus | SoPlus | GoPlus | GoPlusConn => Some(FormKind::SymmetricSplit),
            OMinus | SoMinus | GoMinus | GoMinusConn => Some(FormKind::SymmetricNonsplit),
        }
    }

    /// The even orthogonal sign `+1`/`-1`, when the family has one.
    pub fn orthogonal_sign(self) -> Option<i64> {
        match self.form_kind() {
            Some(FormKind::SymmetricSplit) => Some(1),
            Some(FormKind::SymmetricNonsplit) => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GroupFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupFamily::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::domain(format!("unknown group family '{s}'")))
    }
}

/// A family with its size parameter and field size.
///
/// `n` is the matrix dimension for GL/U, the half-dimension for symplectic and
/// even orthogonal families, and `m` with dimension `2m+1` for odd orthogonal ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub n: usize,
    pub q: u64,
}

impl GroupSpec {
    pub fn new(family: GroupFamily, n: usize, q: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("size parameter n must be at least 1"));
        }
        if q < 2 {
            return Err(Error::domain(format!("q must be at least 2, got {q}")));
        }
        Ok(GroupSpec { family, n, q })
    }

    pub fn matrix_dim(&self) -> usize {
        self.family.matrix_dim(self.n)
    }

    /// `q` as a prime-field modulus, for census contexts.
    pub fn prime(&self) -> Result<u32> {
        u32::try_from(self.q)
            .ok()
            .filter(|&p| is_odd_prime(p))
            .ok_or_else(|| Error::domain(format!("census needs an odd prime field, got q = {}", self.q)))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, q={})", self.family, self.n, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    Symplectic,
    SymmetricSplit,
    SymmetricNonsplit,
    SymmetricOdd,
}

/// A nondegenerate bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSpec {
    pub kind: FormKind,
    pub gram: MatrixFp,
    pub similitude_allowed: bool,
}

/// Gram matrix realizing the family's form over `F_p`.
///
/// Symplectic `[[0, I], [-I, 0]]`; split `[[0, I], [I, 0]]`; non-split
/// `split(2n-2) ⊕ diag(1, -δ)` with `δ` the least non-square; odd the identity.
pub fn standard_form(family: GroupFamily, n: usize, p: u32) -> Result<FormSpec> {
    let kind = family
        .form_kind()
        .ok_or_else(|| Error::domain(format!("{family} has no defining bilinear form")))?;
    if n == 0 {
        return Err(Error::domain("size parameter n must be at least 1"));
    }
    let dim = family.matrix_dim(n);
    if dim > MAX_MATRIX_DIM {
        return Err(Error::domain(format!(
            "matrix dimension {dim} exceeds {MAX_MATRIX_DIM}"
        )));
    }
    let mut rows = vec![vec![0i64; dim]; dim];
    let hyperbolic = |rows: &mut Vec<Vec<i64>>, half: usize, lower: i64| {
        for i in 0..half {
            rows[i][half + i] = 1;
            rows[half + i][i] = lower;
        }
    };
    match kind {
        FormKind::Symplectic => hyperbolic(&mut rows, n, -1),
        FormKind::SymmetricSplit => hyperbolic(&mut rows, n, 1),
        FormKind::SymmetricNonsplit => {
            let delta = smallest_nonsquare(p)?;
            hyperbolic(&mut rows, n - 1, 1);
            rows[dim - 2][dim - 2] = 1;
            rows[dim - 1][dim - 1] = -(delta.value() as i64);
        }
        FormKind::SymmetricOdd => {
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = 1;
            }
        }
    }
    Ok(FormSpec {
        kind,
        gram: MatrixFp::from_rows(&rows, p)?,
        similitude_allowed: family.is_similitude(),
    })
}

fn prod_factors(range: impl Iterator<Item = usize>, f: impl Fn(usize) -> QPoly) -> QPoly {
    range.fold(QPoly::one(), |acc, i| &acc * &f(i))
}

/// `∏_{i=1}^{m} (q^{2i} - 1)`
fn prod_q2i_minus_one(m: usize) -> QPoly {
    prod_factors(1..=m, |i| QPoly::binomial_factor(2 * i, -1))
}

/// |GL(n, q)| as a polynomial.
pub(crate) fn gl_order_poly(n: usize) -> QPoly {
    prod_factors(1..=n, |i| QPoly::binomial_factor(i, -1)).shift(n * (n.saturating_sub(1)) / 2)
}

pub(crate) fn sp_order_poly(n: usize) -> QPoly {
    prod_q2i_minus_one(n).shift(n * n)
}

pub(crate) fn o_odd_order_poly(m: usize) -> QPoly {
    prod_q2i_minus_one(m).shift(m * m).scale(&BigInt::from(2))
}

/// |O^±(2m, q)|; `sign = +1` takes the factor `q^m - 1`.
pub(crate) fn o_even_order_poly(m: usize, sign: i64) -> QPoly {
    let core = &QPoly::binomial_factor(m, -sign) * &prod_q2i_minus_one(m - 1);
    core.shift(m * (m - 1)).scale(&BigInt::from(2))
}

/// Group order as a polynomial in `q`.
pub fn group_order_poly(family: GroupFamily, n: usize) -> QPoly {
    use GroupFamily::*;
    let q_minus_one = QPoly::from_i64s(&[-1, 1]);
    let halve = |p: QPoly| p.exact_div(2).expect("orthogonal orders are even");
    match family {
        Gl => gl_order_poly(n),
        U => prod_factors(1..=n, |i| {
            QPoly::binomial_factor(i, if i % 2 == 0 { -1 } else { 1 })
        })
        .shift(n * (n - 1) / 2),
        Sp => sp_order_poly(n),
        Gsp => &q_minus_one * &sp_order_poly(n),
        OOdd => o_odd_order_poly(n),
        SoOdd => halve(o_odd_order_poly(n)),
        OPlus => o_even_order_poly(n, 1),
        OMinus => o_even_order_poly(n, -1),
        SoPlus => halve(o_even_order_poly(n, 1)),
        SoMinus => halve(o_even_order_poly(n, -1)),
        GoPlus => &q_minus_one * &o_even_order_poly(n, 1),
        GoMinus => &q_minus_one * &o_even_order_poly(n, -1),
        GoPlusConn => &q_minus_one * &halve(o_even_order_poly(n, 1)),
        GoMinusConn => &q_minus_one * &halve(o_even_order_poly(n, -1)),
    }
}

/// Exact group order at `spec.q`.
pub fn group_order_formula(spec: &GroupSpec) -> Count {
    let v = group_order_poly(spec.family, spec.n).eval_u64(spec.q);
    Count::try_from_int(v).expect("group orders are positive for q >= 2")
}

/// The similitude factor of `g` relative to `gram`, if `gᵀ·gram·g = μ·gram`.
fn similitude_factor(g: &MatrixFp, gram: &MatrixFp) -> Result<Option<FpElement>> {
    let lhs = g.transpose().mul(gram)?.mul(g)?;
    let n = gram.dim();
    let Some((r, c)) = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .find(|&(r, c)| !gram.get(r, c).is_zero())
    else {
        return Ok(None);
    };
    let mu = lhs.get(r, c).mul(gram.get(r, c).inv()?)?;
    if mu.is_zero() || lhs != gram.scale(mu)? {
        return Ok(None);
    }
    Ok(Some(mu))
}

/// Membership test. Returns the similitude factor `μ` for members (`μ = 1`
/// for GL and the isometry groups), `None` otherwise.
pub fn is_member(g: &MatrixFp, spec: &GroupSpec, form: Option<&FormSpec>) -> Result<Option<FpElement>> {
    let dim = spec.matrix_dim();
    if g.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: g.dim(),
        });
    }
    let p = g.modulus();
    let one = FpElement::one(p)?;
    if !g.is_invertible() {
        return Ok(None);
    }
    let family = spec.family;
    let Some(form) = form else {
        return match family {
            GroupFamily::Gl => Ok(Some(one)),
            _ => Err(Error::domain(format!("{family} membership needs a form"))),
        };
    };
    if form.gram.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: form.gram.dim(),
        });
    }
    let Some(mu) = similitude_factor(g, &form.gram)? else {
        return Ok(None);
    };
    if !family.is_similitude() && mu != one {
        return Ok(None);
    }
    if family.is_special() && g.det() != one {
        return Ok(None);
    }
    if family.is_connected_similitude() && g.det() != mu.pow(spec.n as u64) {
        return Ok(None);
    }
    Ok(Some(mu))
}

/// Dimension, rank and Weyl group order of the ambient algebraic group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupDescriptor {
    pub family: GroupFamily,
    pub n: usize,
    pub d: u64,
    pub r: u64,
    #[serde(serialize_with = "crate::qpoly::serialize_decimal")]
    pub weyl_order: BigUint,
    /// Bounds apply only to connected groups with connected center.
    pub applicable: bool,
    pub inapplicable_reason: Option<&'static str>,
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn descriptor(family: GroupFamily, n: usize) -> GroupDescriptor {
    use GroupFamily::*;
    let n64 = n as u64;
    let type_a = factorial(n);
    let type_bc = factorial(n) << n;
    let type_d = factorial(n) << n.saturating_sub(1);
    let (d, r, weyl) = match family {
        Gl | U => (n64 * n64, n64, type_a),
        Gsp => (2 * n64 * n64 + n64 + 1, n64 + 1, type_bc),
        Sp | OOdd | SoOdd => (2 * n64 * n64 + n64, n64, type_bc),
        OPlus | OMinus | SoPlus | SoMinus => (2 * n64 * n64 - n64, n64, type_d),
        GoPlus | GoMinus | GoPlusConn | GoMinusConn => (2 * n64 * n64 - n64 + 1, n64 + 1, type_d),
    };
    let reason = match family {
        Gl | U | Gsp | SoOdd | GoPlusConn | GoMinusConn => None,
        Sp | SoPlus | SoMinus => Some("center not connected"),
        OOdd | OPlus | OMinus | GoPlus | GoMinus => Some("group not connected"),
    };
    GroupDescriptor {
        family,
        n,
        d,
        r,
        weyl_order: weyl,
        applicable: reason.is_none(),
        inapplicable_reason: reason,
    }
}
