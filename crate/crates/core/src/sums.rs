//! Closed-form sums of irreducible character degrees.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groups::{GroupFamily, GroupSpec};
use crate::qpoly::{gaussian_binomial_row, Count, QPoly};

/// Which characters are summed, and with what weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumKind {
    /// All irreducible characters.
    All,
    /// Real-valued irreducible characters.
    RealValued,
    /// `Σ ε(χ)·χ(1)` with ε the Frobenius–Schur indicator.
    FsSigned,
    /// Characters with indicator `+1`.
    FsPlus,
    /// Characters with indicator `-1`.
    FsMinus,
}

impl SumKind {
    pub const ALL: [SumKind; 5] = [
        SumKind::All,
        SumKind::RealValued,
        SumKind::FsSigned,
        SumKind::FsPlus,
        SumKind::FsMinus,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SumKind::All => "all",
            SumKind::RealValued => "real_valued",
            SumKind::FsSigned => "fs_signed",
            SumKind::FsPlus => "fs_plus",
            SumKind::FsMinus => "fs_minus",
        }
    }
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SumKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace('-', "_");
        SumKind::ALL
            .into_iter()
            .find(|k| k.tag() == t || (t == "real" && *k == SumKind::RealValued))
            .ok_or_else(|| Error::domain(format!("unknown sum kind '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumResult {
    pub spec: GroupSpec,
    pub kind: SumKind,
    pub value: Count,
    pub poly: Option<QPoly>,
    pub source_citation: String,
}

impl Serialize for SumResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            family: GroupFamily,
            n: usize,
            q: u64,
            kind: SumKind,
            value: &'a Count,
            poly: Option<String>,
            source_citation: &'a str,
        }
        Wire {
            family: self.spec.family,
            n: self.spec.n,
            q: self.spec.q,
            kind: self.kind,
            value: &self.value,
            poly: self.poly.as_ref().map(QPoly::render),
            source_citation: &self.source_citation,
        }
        .serialize(s)
    }
}

/// `Σ_{k=0}^{m} q^{k(m-k+t)}·[m,k]_q`. Every binomial sum below is this kernel,
/// possibly evaluated at `q²`.
pub fn binomial_sum_kernel(m: usize, t: usize) -> QPoly {
    gaussian_binomial_row(m)
        .iter()
        .enumerate()
        .fold(QPoly::zero(), |acc, (k, b)| &acc + &b.shift(k * (m - k + t)))
}

/// `Σ_{k=0}^{m} q^{2k(m-k)}·[m,k]_{q²}`, the GL(m) real sum at `q²`.
pub(crate) fn even_kernel(m: usize) -> QPoly {
    binomial_sum_kernel(m, 0).substitute_power(2)
}

fn prod(n: usize, f: impl Fn(usize) -> QPoly) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, i| &acc * &f(i))
}

fn gl_all(n: usize) -> QPoly {
    prod(n, |i| if i % 2 == 1 { QPoly::binomial_factor(i, -1) } else { QPoly::monomial(1, i) })
}

fn u_all(n: usize) -> QPoly {
    prod(n, |i| if i % 2 == 1 { QPoly::binomial_factor(i, 1) } else { QPoly::monomial(1, i) })
}

fn sp_all(n: usize) -> QPoly {
    prod(n, |i| QPoly::binomial_factor(i, 1)).shift(n * (n + 1) / 2)
}

fn sp_fs_signed(n: usize) -> QPoly {
    even_kernel(n)
}

fn gsp_all(n: usize) -> Result<QPoly> {
    let plus = prod(n, |i| QPoly::binomial_factor(i, 1));
    let alternating = prod(n, |i| QPoly::binomial_factor(i, if i % 2 == 0 { 1 } else { -1 }));
    let doubled = (&QPoly::from_i64s(&[-1, 1]) * &(&plus + &alternating)).shift(n * (n + 1) / 2);
    doubled.exact_div(2)
}

/// `Σ_{k=0}^{m} q^{2k(m-k+1)}·[m,k]_{q²}`.
pub(crate) fn odd_kernel(m: usize) -> QPoly {
    binomial_sum_kernel(m, 1).substitute_power(2)
}

fn o_odd_all(m: usize) -> QPoly {
    odd_kernel(m).scale(&BigInt::from(2))
}

/// `E(m) + q^{m-1}(q^m - sign)·E(m-1)`.
fn o_even_all(m: usize, sign: i64) -> QPoly {
    let tail = (&QPoly::binomial_factor(m, -sign) * &even_kernel(m - 1)).shift(m - 1);
    &even_kernel(m) + &tail
}

fn go_real(n: usize, sign: i64) -> QPoly {
    let o = o_even_all(n, sign);
    if sign == -1 {
        return o;
    }
    let extra = prod(n - 1, |i| QPoly::binomial_factor(i, 1))
        .shift(n * (n - 1) / 2)
        .scale(&BigInt::from(2));
    &o + &extra
}

fn no_formula(family: GroupFamily, kind: SumKind) -> Error {
    Error::NoFormula {
        family: family.tag().to_string(),
        kind: kind.tag().to_string(),
    }
}

/// A formula: either an integer polynomial in `q`, or a `q`-dependent value
/// that is half of an integer polynomial plus or minus another.
enum Formula {
    Poly(QPoly, &'static str),
    HalfCombination {
        base: QPoly,
        delta: i64,
        other: QPoly,
        citation: &'static str,
    },
}

fn formula(family: GroupFamily, n: usize, kind: SumKind) -> Result<Formula> {
    use GroupFamily::*;
    use SumKind::*;
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let poly = |p: QPoly, c: &'static str| Ok(Formula::Poly(p, c));
    match (family, kind) {
        (Gl, RealValued) => poly(
            binomial_sum_kernel(n, 0),
            "GL(n): real-valued degrees sum to the involution count, sum over k of q^{k(n-k)}[n,k]_q",
        ),
        (Gl, All) => poly(gl_all(n), "GL(n): product of q^i - 1 (i odd) and q^i (i even)"),
        (U, All) => poly(u_all(n), "U(n): product of q^i + 1 (i odd) and q^i (i even)"),
        (Sp, All) => poly(sp_all(n), "Sp(2n): q^{n(n+1)/2} times product of q^i + 1"),
        (Sp, FsSigned) => poly(
            sp_fs_signed(n),
            "Sp(2n): indicator-weighted sum equals the involution count, sum over k of q^{2k(n-k)}[n,k]_{q^2}",
        ),
        (Sp, FsPlus | FsMinus) => Ok(Formula::HalfCombination {
            base: sp_all(n),
            delta: if kind == FsPlus { 1 } else { -1 },
            other: sp_fs_signed(n),
            citation: "Sp(2n), q = 1 mod 4: half of (all-degree sum +/- indicator-weighted sum)",
        }),
        (Gsp, RealValued) => poly(
            &sp_fs_signed(n) + &sp_all(n),
            "GSp(2n): indicator-weighted Sp sum plus Sp all-degree sum",
        ),
        (Gsp, All) => poly(
            gsp_all(n)?,
            "GSp(2n): half of q^{n(n+1)/2}(q-1)[prod(q^i + 1) + prod(q^i + (-1)^i)]",
        ),
        (OOdd, All) => poly(o_odd_all(n), "O(2m+1): twice sum over k of q^{2k(m-k+1)}[m,k]_{q^2}"),
        (SoOdd, All) => poly(o_odd_all(n).exact_div(2)?, "SO(2m+1): half the O(2m+1) sum"),
        (OPlus, All) => poly(o_even_all(n, 1), "O+(2m): E(m) + q^{m-1}(q^m - 1)E(m-1)"),
        (OMinus, All) => poly(o_even_all(n, -1), "O-(2m): E(m) + q^{m-1}(q^m + 1)E(m-1)"),
        (SoPlus | SoMinus, RealValued) => poly(
            even_kernel(n),
            "SO(2m): real-valued degrees sum to the GL(m) real sum at q^2",
        ),
        (SoPlus | SoMinus, All) if n % 2 == 0 => poly(
            even_kernel(n),
            "SO(2m), m even: every character is real-valued, GL(m) real sum at q^2",
        ),
        (GoPlus, RealValued) => poly(
            go_real(n, 1),
            "GO+(2n): O+ sum plus 2q^{n(n-1)/2} prod_{i<n}(q^i + 1)",
        ),
        (GoMinus, RealValued) => poly(go_real(n, -1), "GO-(2n): equals the O- sum"),
        _ => Err(no_formula(family, kind)),
    }
}

fn check_fs_modulus(family: GroupFamily, kind: SumKind, q: u64) -> Result<()> {
    if matches!(kind, SumKind::FsPlus | SumKind::FsMinus) && q % 4 != 1 {
        return Err(Error::domain(format!(
            "{family} {kind} needs q = 1 mod 4 (for other q some characters are not real-valued), got q={q}"
        )));
    }
    Ok(())
}

/// Exact value of the degree sum of `kind` for `spec`.
pub fn degree_sum(spec: &GroupSpec, kind: SumKind) -> Result<SumResult> {
    let f = formula(spec.family, spec.n, kind)?;
    check_fs_modulus(spec.family, kind, spec.q)?;
    let q = BigInt::from(spec.q);
    let (value, poly, citation) = match f {
        Formula::Poly(p, c) => (p.eval(&q), Some(p), c),
        Formula::HalfCombination {
            base,
            delta,
            other,
            citation,
        } => {
            let doubled = base.eval(&q) + BigInt::from(delta) * other.eval(&q);
            let (half, rem) = doubled.div_rem(&BigInt::from(2));
            if !rem.is_zero() {
                return Err(Error::Verification(format!(
                    "{} {kind}: doubled value {doubled} is odd",
                    spec
                )));
            }
            (half, None, citation)
        }
    };
    Ok(SumResult {
        spec: *spec,
        kind,
        value: Count::try_from_int(value)?,
        poly,
        source_citation: citation.to_string(),
    })
}

/// The degree sum as an integer polynomial in `q`.
pub fn degree_sum_poly(family: GroupFamily, n: usize, kind: SumKind) -> Result<QPoly> {
    match formula(family, n, kind)? {
        Formula::Poly(p, _) => Ok(p),
        Formula::HalfCombination { base, delta, other, .. } => {
            let doubled = &base + &other.scale(&BigInt::from(delta));
            doubled.exact_div(2).map_err(|e| Error::NoFormula {
                family: family.tag().to_string(),
                kind: format!("{kind} as an integer polynomial ({e})"),
            })
        }
    }
}

/// Twice the `fs_plus` (`delta = 1`) or `fs_minus` (`delta = -1`) sum of Sp(2n).
pub fn sp_fs_doubled(n: usize, delta: i64) -> QPoly {
    &sp_all(n) + &sp_fs_signed(n).scale(&BigInt::from(delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::Degree;
    use GroupFamily::*;

    fn value(family: GroupFamily, n: usize, q: u64, kind: SumKind) -> u64 {
        degree_sum(&GroupSpec::new(family, n, q).unwrap(), kind)
            .unwrap()
            .value
            .to_u64()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(value(Gl, 2, 3, SumKind::RealValued), 14);
        assert_eq!(value(Sp, 1, 3, SumKind::All), 12);
        assert_eq!(value(SoOdd, 1, 3, SumKind::All), 10);
        assert_eq!(value(GoPlus, 2, 3, SumKind::RealValued), 164);
        assert_eq!(value(Gsp, 1, 3, SumKind::RealValued), 14);
        assert_eq!(value(Sp, 1, 5, SumKind::FsPlus), 16);
        assert_eq!(value(Gsp, 2, 3, SumKind::All), 1620);
        assert_eq!(value(Gl, 2, 3, SumKind::All), 18);
        assert_eq!(value(OOdd, 2, 3, SumKind::All), 1784);
        assert_eq!(value(OPlus, 2, 3, SumKind::All), 140);
        assert_eq!(value(OMinus, 2, 3, SumKind::All), 152);
        assert_eq!(value(Sp, 2, 3, SumKind::FsSigned), 92);
        assert_eq!(value(Gsp, 2, 3, SumKind::RealValued), 1172);
    }

    #[test]
    fn small_character_tables() {
        // GL(2,3): degrees 1,1,2,2,2,3,3,4; U(1,q) is cyclic of order q+1.
        assert_eq!(value(Gl, 2, 3, SumKind::All), 18);
        assert_eq!(value(U, 1, 7, SumKind::All), 8);
        assert_eq!(value(Gl, 1, 5, SumKind::All), 4);
        // GL(2,q) has q-1 linear characters, q-1 of degree q, (q-1)(q-2)/2 of degree q+1
        // and q(q-1)/2 of degree q-1.
        for q in [3u64, 5, 7, 9, 11] {
            let expect = (q - 1) + (q - 1) * q + (q - 1) * (q - 2) / 2 * (q + 1) + q * (q - 1) / 2 * (q - 1);
            assert_eq!(value(Gl, 2, q, SumKind::All), expect);
        }
    }

    #[test]
    fn unsupported_and_domain_errors() {
        let spec = GroupSpec::new(Sp, 1, 3).unwrap();
        assert!(matches!(degree_sum(&spec, SumKind::FsPlus), Err(Error::Domain(_))));
        let spec = GroupSpec::new(GoPlusConn, 1, 3).unwrap();
        assert!(matches!(degree_sum(&spec, SumKind::RealValued), Err(Error::NoFormula { .. })));
        let spec = GroupSpec::new(SoPlus, 1, 3).unwrap();
        assert!(matches!(degree_sum(&spec, SumKind::All), Err(Error::NoFormula { .. })));
        assert!(degree_sum(&GroupSpec::new(SoPlus, 2, 3).unwrap(), SumKind::All).is_ok());
        assert!(degree_sum_poly(Sp, 1, SumKind::FsPlus).is_err());
        assert!(degree_sum_poly(U, 2, SumKind::RealValued).is_err());
    }

    #[test]
    fn poly_examples() {
        assert_eq!(degree_sum_poly(Gl, 1, SumKind::RealValued).unwrap(), QPoly::constant(2));
        assert_eq!(degree_sum_poly(Gl, 3, SumKind::RealValued).unwrap().degree(), Degree::Finite(4));
        for n in 1..=4 {
            let real = degree_sum_poly(Gsp, n, SumKind::RealValued).unwrap();
            let all = degree_sum_poly(Gsp, n, SumKind::All).unwrap();
            assert_eq!(real.degree(), Degree::Finite(n * n + n));
            assert_eq!(all.degree(), Degree::Finite(n * n + n + 1));
        }
    }

    #[test]
    fn poly_matches_value() {
        for family in GroupFamily::ALL {
            for kind in SumKind::ALL {
                for n in 1..=4 {
                    let Ok(p) = degree_sum_poly(family, n, kind) else { continue };
                    for q in [3u64, 5, 9, 13] {
                        let r = degree_sum(&GroupSpec::new(family, n, q).unwrap(), kind).unwrap();
                        assert_eq!(BigInt::from(r.value.0.clone()), p.eval_u64(q));
                        assert_eq!(r.poly.as_ref(), Some(&p));
                    }
                }
            }
        }
    }

    #[test]
    fn fs_split_values() {
        for n in 1..=4 {
            for q in [5u64, 9, 13, 17] {
                let spec = GroupSpec::new(Sp, n, q).unwrap();
                let plus = degree_sum(&spec, SumKind::FsPlus).unwrap().value.0;
                let minus = degree_sum(&spec, SumKind::FsMinus).unwrap().value.0;
                let all = degree_sum(&spec, SumKind::All).unwrap().value.0;
                let signed = degree_sum(&spec, SumKind::FsSigned).unwrap().value.0;
                assert_eq!(&plus + &minus, all);
                assert_eq!(plus - minus, signed);
            }
        }
    }

    #[test]
    fn json_shape() {
        let r = degree_sum(&GroupSpec::new(Gl, 1, 3).unwrap(), SumKind::RealValued).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["family"], "gl");
        assert_eq!(v["kind"], "real_valued");
        assert_eq!(v["value"], "2");
        assert_eq!(v["poly"], "2");
        let r = degree_sum(&GroupSpec::new(Sp, 1, 5).unwrap(), SumKind::FsPlus).unwrap();
        assert!(serde_json::to_value(&r).unwrap()["poly"].is_null());
    }

    #[test]
    fn kind_tags_round_trip() {
        for k in SumKind::ALL {
            assert_eq!(k.tag().parse::<SumKind>().unwrap(), k);
        }
        assert!("nope".parse::<SumKind>().is_err());
    }
}
