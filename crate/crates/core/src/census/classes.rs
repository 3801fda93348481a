//! Involution class sizes from centralizer orders.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::InvolutionBucket;
use crate::error::{Error, Result};
use crate::groups::{gl_order_poly, o_even_order_poly, o_odd_order_poly, sp_order_poly, GroupFamily};
use crate::qpoly::{Count, QPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassSign {
    Plus,
    Minus,
}

impl ClassSign {
    fn value(self) -> i64 {
        match self {
            ClassSign::Plus => 1,
            ClassSign::Minus => -1,
        }
    }

    fn flip(self, by: i64) -> ClassSign {
        if by == 1 {
            self
        } else {
            match self {
                ClassSign::Plus => ClassSign::Minus,
                ClassSign::Minus => ClassSign::Plus,
            }
        }
    }
}

/// Label of a class of elements with `g² = I`.
///
/// `Isometric` classes have `μ = 1` and `j = dim ker(g - I)`. The sign is the
/// type of the even-dimensional eigenspace when an eigenspace of each parity
/// decides the class; when both have odd dimension it names one of the two
/// discriminant classes. Labels of a single class carry no sign.
/// `Skew` is the unique class with `μ = -1` in the similitude groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum InvolutionClass {
    Isometric { j: usize, sign: Option<ClassSign> },
    Skew,
}

fn eval(poly: &QPoly, q: u64) -> BigUint {
    poly.eval_u64(q)
        .to_biguint()
        .expect("group orders are positive")
}

fn orthogonal_order(dim: usize, sign: Option<ClassSign>) -> Result<QPoly> {
    if dim % 2 == 1 {
        return Ok(o_odd_order_poly(dim / 2));
    }
    let sign = sign.ok_or_else(|| Error::domain("even-dimensional orthogonal factor needs a sign"))?;
    if dim == 0 {
        return match sign {
            ClassSign::Plus => Ok(QPoly::one()),
            ClassSign::Minus => Err(Error::domain("zero-dimensional space has split type")),
        };
    }
    Ok(o_even_order_poly(dim / 2, sign.value()))
}

/// Isometries in the family all have determinant 1.
fn det_one(family: GroupFamily) -> bool {
    family.is_special() || family.is_connected_similitude()
}

/// |G| / |centralizer| for the involution class `class` of the group
/// `family(n)` at `q`.
pub fn wall_class_size(family: GroupFamily, n: usize, class: InvolutionClass, q: u64) -> Result<Count> {
    use GroupFamily::*;
    if q < 2 {
        return Err(Error::domain(format!("q must be at least 2, got {q}")));
    }
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let invalid = || Error::domain(format!("invalid involution class {class:?} for {family}({n})"));
    let dim = family.matrix_dim(n);
    let (group, centralizer) = match (family, class) {
        (Gl, InvolutionClass::Isometric { j, sign: None }) if j <= n => {
            (gl_order_poly(n), &gl_order_poly(j) * &gl_order_poly(n - j))
        }
        (Sp | Gsp, InvolutionClass::Isometric { j, sign: None }) if j <= dim && j % 2 == 0 => {
            let k = j / 2;
            (sp_order_poly(n), &sp_order_poly(k) * &sp_order_poly(n - k))
        }
        (Gsp, InvolutionClass::Skew) => (sp_order_poly(n), gl_order_poly(n)),
        (OOdd | SoOdd, InvolutionClass::Isometric { j, sign }) if j <= dim => {
            if family == SoOdd && j % 2 == 0 {
                return Err(invalid());
            }
            let whole = o_odd_order_poly(n);
            match sign {
                None if j == 0 || j == dim => (whole.clone(), whole),
                Some(s) if j != 0 && j != dim => {
                    let (even, odd) = if j % 2 == 0 { (j, dim - j) } else { (dim - j, j) };
                    (whole, &orthogonal_order(even, Some(s))? * &orthogonal_order(odd, None)?)
                }
                _ => return Err(invalid()),
            }
        }
        (
            OPlus | OMinus | SoPlus | SoMinus | GoPlus | GoMinus | GoPlusConn | GoMinusConn,
            InvolutionClass::Isometric { j, sign },
        ) if j <= dim => {
            let form_sign = family.orthogonal_sign().expect("orthogonal family");
            let whole_sign = if form_sign == 1 { ClassSign::Plus } else { ClassSign::Minus };
            if det_one(family) && j % 2 == 1 {
                return Err(invalid());
            }
            let whole = orthogonal_order(dim, Some(whole_sign))?;
            match sign {
                None if j == 0 || j == dim => (whole.clone(), whole),
                Some(s) if j != 0 && j != dim => {
                    let centralizer = if j % 2 == 0 {
                        &orthogonal_order(j, Some(s))? * &orthogonal_order(dim - j, Some(s.flip(form_sign)))?
                    } else {
                        &orthogonal_order(j, None)? * &orthogonal_order(dim - j, None)?
                    };
                    (whole, centralizer)
                }
                _ => return Err(invalid()),
            }
        }
        (GoPlus | GoPlusConn, InvolutionClass::Skew) => (o_even_order_poly(n, 1), gl_order_poly(n)),
        _ => return Err(invalid()),
    };
    let (quot, rem) = eval(&group, q).div_rem(&eval(&centralizer, q));
    if !rem.is_zero() {
        return Err(Error::Verification(format!(
            "centralizer order does not divide |{family}({n})| at q={q}"
        )));
    }
    Ok(Count(quot))
}

/// All valid class labels of `family(n)`, grouped by bucket `(μ, j)`.
fn class_labels(family: GroupFamily, n: usize) -> Result<Vec<(i8, usize, Vec<InvolutionClass>)>> {
    use GroupFamily::*;
    let dim = family.matrix_dim(n);
    let both = |j| {
        vec![
            InvolutionClass::Isometric { j, sign: Some(ClassSign::Plus) },
            InvolutionClass::Isometric { j, sign: Some(ClassSign::Minus) },
        ]
    };
    let single = |j| vec![InvolutionClass::Isometric { j, sign: None }];
    let mut out = Vec::new();
    match family {
        Gl => {
            for j in 0..=n {
                out.push((1, j, single(j)));
            }
        }
        Sp | Gsp => {
            for j in (0..=dim).step_by(2) {
                out.push((1, j, single(j)));
            }
        }
        OOdd | SoOdd | OPlus | OMinus | SoPlus | SoMinus | GoPlus | GoMinus | GoPlusConn | GoMinusConn => {
            for j in 0..=dim {
                if det_one(family) && (dim - j) % 2 == 1 {
                    continue;
                }
                if j == 0 || j == dim {
                    out.push((1, j, single(j)));
                } else {
                    out.push((1, j, both(j)));
                }
            }
        }
        U => return Err(Error::domain("no involution class data for unitary groups")),
    }
    if matches!(family, Gsp | GoPlus | GoPlusConn) {
        out.push((-1, n, vec![InvolutionClass::Skew]));
    }
    Ok(out)
}

/// Expected involution buckets `(μ, j, count)` computed from class sizes, in the
/// order a census report lists them; buckets with no classes are omitted.
pub fn expected_buckets(family: GroupFamily, n: usize, q: u64) -> Result<Vec<InvolutionBucket>> {
    let mut buckets = Vec::new();
    for (mu, j, labels) in class_labels(family, n)? {
        let mut count = Count::zero();
        for class in labels {
            count += &wall_class_size(family, n, class, q)?;
        }
        if !count.0.is_zero() {
            buckets.push(InvolutionBucket { mu, j, count });
        }
    }
    buckets.sort_by_key(|b| (-b.mu, b.j));
    Ok(buckets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupFamily::*;

    fn iso(j: usize, sign: Option<ClassSign>) -> InvolutionClass {
        InvolutionClass::Isometric { j, sign }
    }

    #[test]
    fn class_size_examples() {
        assert_eq!(wall_class_size(Sp, 2, iso(2, None), 3).unwrap(), Count::from(90));
        assert_eq!(wall_class_size(Gl, 2, iso(1, None), 3).unwrap(), Count::from(12));
        assert_eq!(wall_class_size(Gsp, 1, InvolutionClass::Skew, 3).unwrap(), Count::from(12));
    }

    #[test]
    fn invalid_labels_are_rejected() {
        assert!(wall_class_size(Sp, 2, iso(1, None), 3).is_err());
        assert!(wall_class_size(Sp, 1, InvolutionClass::Skew, 3).is_err());
        assert!(wall_class_size(GoMinus, 1, InvolutionClass::Skew, 3).is_err());
        assert!(wall_class_size(SoOdd, 1, iso(2, Some(ClassSign::Plus)), 3).is_err());
        assert!(wall_class_size(OOdd, 1, iso(1, None), 3).is_err());
        assert!(wall_class_size(OPlus, 1, iso(0, Some(ClassSign::Plus)), 3).is_err());
        assert!(wall_class_size(Gl, 2, iso(3, None), 3).is_err());
        assert!(wall_class_size(U, 2, iso(1, None), 3).is_err());
    }

    #[test]
    fn sp4_buckets_sum_to_92() {
        let b = expected_buckets(Sp, 2, 3).unwrap();
        let counts: Vec<_> = b.iter().map(|b| (b.j, b.count.to_u64().unwrap())).collect();
        assert_eq!(counts, vec![(0, 1), (2, 90), (4, 1)]);
    }

    #[test]
    fn orthogonal_bucket_totals() {
        let total = |f, n, q| -> u64 {
            expected_buckets(f, n, q)
                .unwrap()
                .iter()
                .map(|b| b.count.to_u64().unwrap())
                .sum()
        };
        assert_eq!(total(OOdd, 1, 3), 20);
        assert_eq!(total(OPlus, 1, 3), 4);
        assert_eq!(total(OMinus, 1, 3), 6);
        assert_eq!(total(OOdd, 2, 3), 1784);
        assert_eq!(total(OPlus, 2, 3), 140);
        assert_eq!(total(OMinus, 2, 3), 152);
        assert_eq!(total(GoPlus, 2, 3), 164);
        assert_eq!(total(SoOdd, 1, 7), 50);
    }
}
