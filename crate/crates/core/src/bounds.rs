//! Upper and lower bounds on character degree sums, and exhaustive scans of the
//! auxiliary inequalities behind them. All arithmetic is exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Pow;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groups::{descriptor, GroupDescriptor, GroupFamily, GroupSpec};
use crate::qpoly::{Count, GaussianTable, QPoly};
use crate::sums::{degree_sum, even_kernel, odd_kernel, SumKind};

/// The four bounds for one descriptor at one `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValues {
    /// `q^{(d-r)/2}(q-1)^r`
    pub lower: Count,
    /// `q^{(d-r)/2}(q+1)^r`
    pub conj_upper: Count,
    /// `(q+1)^{(d+r)/2}`
    pub refined_upper: Count,
    /// `(q+1)^{(d+r)/2}(1 + 2r|W|/(q-1))`, reduced.
    pub kowalski_upper: BigRational,
}

fn pow(base: u64, exp: u64) -> BigUint {
    Pow::pow(BigUint::from(base), exp)
}

pub fn bound_values(desc: &GroupDescriptor, q: u64) -> Result<BoundValues> {
    if !desc.applicable {
        return Err(Error::Inapplicable(
            desc.inapplicable_reason.unwrap_or("not applicable").to_string(),
        ));
    }
    if q < 2 {
        return Err(Error::domain(format!("q must be at least 2, got {q}")));
    }
    let (d, r) = (desc.d, desc.r);
    debug_assert!((d - r) % 2 == 0 && (d + r) % 2 == 0);
    let positive_roots = (d - r) / 2;
    let qp = pow(q, positive_roots);
    let refined = pow(q + 1, (d + r) / 2);
    let numerator = BigUint::from(q - 1) + BigUint::from(2 * r) * &desc.weyl_order;
    let kowalski = BigRational::new(
        BigInt::from(refined.clone() * numerator),
        BigInt::from(q - 1),
    );
    Ok(BoundValues {
        lower: Count(&qp * pow(q - 1, r)),
        conj_upper: Count(&qp * pow(q + 1, r)),
        refined_upper: Count(refined),
        kowalski_upper: kowalski,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumValueKind {
    /// The exact degree sum.
    Exact,
    /// An upper estimate for the degree sum.
    Surrogate,
}

impl SumValueKind {
    pub fn tag(self) -> &'static str {
        match self {
            SumValueKind::Exact => "exact",
            SumValueKind::Surrogate => "surrogate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRow {
    pub spec: GroupSpec,
    pub d: u64,
    pub r: u64,
    pub weyl_order: BigUint,
    pub sum_value: Count,
    pub sum_kind: SumValueKind,
    pub bounds: BoundValues,
    /// `lower ≤ sum`; `None` when the sum is only an upper estimate.
    pub pass_lower: Option<bool>,
    /// `sum ≤ conj_upper`; `None` when the sum is only an upper estimate.
    pub pass_conj: Option<bool>,
    /// `sum ≤ refined_upper`
    pub pass_refined: bool,
    /// `refined_upper ≤ kowalski_upper`
    pub pass_kowalski: bool,
}

fn flag(f: Option<bool>) -> &'static str {
    match f {
        Some(true) => "true",
        Some(false) => "false",
        None => "not-evaluable",
    }
}

impl BoundsRow {
    pub const CSV_HEADER: [&'static str; 17] = [
        "family",
        "n",
        "q",
        "d",
        "r",
        "weyl",
        "sum",
        "sum_kind",
        "lower",
        "conj_upper",
        "refined_upper",
        "kowalski_num",
        "kowalski_den",
        "pass_lower",
        "pass_conj",
        "pass_refined",
        "pass_kowalski",
    ];

    /// Every evaluable flag holds.
    pub fn passes(&self) -> bool {
        self.pass_lower != Some(false) && self.pass_conj != Some(false) && self.pass_refined && self.pass_kowalski
    }

    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.spec.family.tag().to_string(),
            self.spec.n.to_string(),
            self.spec.q.to_string(),
            self.d.to_string(),
            self.r.to_string(),
            self.weyl_order.to_string(),
            self.sum_value.to_string(),
            self.sum_kind.tag().to_string(),
            self.bounds.lower.to_string(),
            self.bounds.conj_upper.to_string(),
            self.bounds.refined_upper.to_string(),
            self.bounds.kowalski_upper.numer().to_string(),
            self.bounds.kowalski_upper.denom().to_string(),
            flag(self.pass_lower).to_string(),
            flag(self.pass_conj).to_string(),
            self.pass_refined.to_string(),
            self.pass_kowalski.to_string(),
        ]
    }
}

impl Serialize for BoundsRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(Self::CSV_HEADER.len()))?;
        for (key, value) in Self::CSV_HEADER.iter().zip(self.csv_record()) {
            match *key {
                "n" | "q" | "d" | "r" => map.serialize_entry(key, &value.parse::<u64>().expect("integer column"))?,
                "pass_refined" | "pass_kowalski" => map.serialize_entry(key, &(value == "true"))?,
                "pass_lower" | "pass_conj" => match value.as_str() {
                    "true" => map.serialize_entry(key, &true)?,
                    "false" => map.serialize_entry(key, &false)?,
                    other => map.serialize_entry(key, other)?,
                },
                _ => map.serialize_entry(key, &value)?,
            }
        }
        map.end()
    }
}

/// Families with a bounds row.
pub const BOUNDS_FAMILIES: [GroupFamily; 6] = [
    GroupFamily::Gl,
    GroupFamily::U,
    GroupFamily::Gsp,
    GroupFamily::SoOdd,
    GroupFamily::GoPlusConn,
    GroupFamily::GoMinusConn,
];

/// Compares the degree sum of `spec` with its bounds. For the connected
/// orthogonal similitude groups the sum is replaced by `(q-1)` times the
/// O^± sum, an upper estimate, and only upper comparisons are made.
pub fn check_bounds(spec: &GroupSpec) -> Result<BoundsRow> {
    use GroupFamily::*;
    let (family, n, q) = (spec.family, spec.n, spec.q);
    let desc = descriptor(family, n);
    if !desc.applicable {
        return Err(Error::Inapplicable(
            desc.inapplicable_reason.unwrap_or("not applicable").to_string(),
        ));
    }
    if !matches!(family, Gl | U) && q % 2 == 0 {
        return Err(Error::domain(format!("{family} bounds need odd q, got {q}")));
    }
    let bounds = bound_values(&desc, q)?;
    let (sum_value, sum_kind) = match family {
        Gl | U | Gsp | SoOdd => (degree_sum(spec, SumKind::All)?.value, SumValueKind::Exact),
        GoPlusConn | GoMinusConn => {
            let o = if family == GoPlusConn { OPlus } else { OMinus };
            let o_sum = degree_sum(&GroupSpec::new(o, n, q)?, SumKind::All)?.value;
            (Count(o_sum.0 * BigUint::from(q - 1)), SumValueKind::Surrogate)
        }
        _ => return Err(Error::Inapplicable(format!("no bounds row for {family}"))),
    };
    let exact = sum_kind == SumValueKind::Exact;
    let pass_lower = exact.then(|| bounds.lower <= sum_value);
    let pass_conj = exact.then(|| sum_value <= bounds.conj_upper);
    let pass_refined = sum_value <= bounds.refined_upper;
    let refined_rational = BigRational::from_integer(BigInt::from(bounds.refined_upper.0.clone()));
    let pass_kowalski = refined_rational <= bounds.kowalski_upper;
    Ok(BoundsRow {
        spec: *spec,
        d: desc.d,
        r: desc.r,
        weyl_order: desc.weyl_order,
        sum_value,
        sum_kind,
        bounds,
        pass_lower,
        pass_conj,
        pass_refined,
        pass_kowalski,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// `[m,k]_q ≤ q^{k(m-k)-m+1}(q+1)^{m-1}` for `1 ≤ k ≤ m`.
    Binomineq,
    /// `Σ_k q^{2k(m-k)}[m,k]_{q²} ≤ 2(q+1)^{m²-1}` (m odd) or `(q+1)^{m²}` (m even).
    EvenDim,
    /// `Σ_k q^{2k(m-k+1)}[m,k]_{q²} ≤ (q+1)^{m²+m}`.
    OddDim,
}

impl Lemma {
    pub const ALL: [Lemma; 3] = [Lemma::Binomineq, Lemma::EvenDim, Lemma::OddDim];

    pub fn tag(self) -> &'static str {
        match self {
            Lemma::Binomineq => "binomineq",
            Lemma::EvenDim => "even_dim",
            Lemma::OddDim => "odd_dim",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Lemma {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace('-', "_");
        Lemma::ALL
            .into_iter()
            .find(|l| l.tag() == t)
            .ok_or_else(|| Error::domain(format!("unknown lemma '{s}'")))
    }
}

/// One failing cell: `lhs ≤ rhs` does not hold.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub lemma: Lemma,
    pub m: usize,
    pub k: Option<usize>,
    pub q: u64,
    pub lhs: Count,
    pub rhs: Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub lemma: Lemma,
    pub m_max: usize,
    pub q_max: u64,
    pub cells_checked: u64,
    /// Sorted by `(lemma, m, k, q)`.
    pub violations: Vec<Violation>,
}

impl ScanResult {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

fn to_count(v: BigInt) -> Count {
    Count::try_from_int(v).expect("kernel sums are positive")
}

fn scan_binomineq(m_max: usize, q: u64) -> (u64, Vec<Violation>) {
    let table = GaussianTable::new(m_max, q);
    let q_big = BigUint::from(q);
    let mut cells = 0;
    let mut out = Vec::new();
    for m in 1..=m_max {
        let rhs_base = pow(q + 1, m as u64 - 1);
        for k in 1..=m {
            cells += 1;
            let e = (k * (m - k)) as i64 - m as i64 + 1;
            let (lhs, rhs) = if e >= 0 {
                (table.get(m, k).clone(), &rhs_base * Pow::pow(&q_big, e as u64))
            } else {
                (table.get(m, k) * Pow::pow(&q_big, (-e) as u64), rhs_base.clone())
            };
            if lhs > rhs {
                out.push(Violation {
                    lemma: Lemma::Binomineq,
                    m,
                    k: Some(k),
                    q,
                    lhs: Count(lhs),
                    rhs: Count(rhs),
                });
            }
        }
    }
    (cells, out)
}

fn scan_kernel(lemma: Lemma, kernels: &[QPoly], q: u64) -> (u64, Vec<Violation>) {
    let q_big = BigInt::from(q);
    let mut out = Vec::new();
    for (i, kernel) in kernels.iter().enumerate() {
        let m = i + 1;
        let m64 = m as u64;
        let lhs = to_count(kernel.eval(&q_big));
        let rhs = match lemma {
            Lemma::EvenDim if m % 2 == 1 => pow(q + 1, m64 * m64 - 1) * 2u32,
            Lemma::EvenDim => pow(q + 1, m64 * m64),
            Lemma::OddDim => pow(q + 1, m64 * m64 + m64),
            Lemma::Binomineq => unreachable!("binomial scan has its own loop"),
        };
        if lhs.0 > rhs {
            out.push(Violation {
                lemma,
                m,
                k: None,
                q,
                lhs,
                rhs: Count(rhs),
            });
        }
    }
    (kernels.len() as u64, out)
}

/// Checks the lemma for every `1 ≤ m ≤ m_max` (and `1 ≤ k ≤ m`) and
/// `2 ≤ q ≤ q_max`, in parallel over `q` on the current rayon pool.
pub fn scan_inequalities(lemma: Lemma, m_max: usize, q_max: u64) -> Result<ScanResult> {
    if m_max < 1 {
        return Err(Error::domain("m_max must be at least 1"));
    }
    if q_max < 2 {
        return Err(Error::domain("q_max must be at least 2"));
    }
    let kernels: Vec<QPoly> = match lemma {
        Lemma::Binomineq => Vec::new(),
        Lemma::EvenDim => (1..=m_max).into_par_iter().map(even_kernel).collect(),
        Lemma::OddDim => (1..=m_max).into_par_iter().map(odd_kernel).collect(),
    };
    let per_q: Vec<(u64, Vec<Violation>)> = (2..=q_max)
        .into_par_iter()
        .map(|q| match lemma {
            Lemma::Binomineq => scan_binomineq(m_max, q),
            _ => scan_kernel(lemma, &kernels, q),
        })
        .collect();
    let cells_checked = per_q.iter().map(|(c, _)| c).sum();
    let mut violations: Vec<Violation> = per_q.into_iter().flat_map(|(_, v)| v).collect();
    violations.sort_by(|a, b| (a.lemma, a.m, a.k, a.q).cmp(&(b.lemma, b.m, b.k, b.q)));
    Ok(ScanResult {
        lemma,
        m_max,
        q_max,
        cells_checked,
        violations,
    })
}

/// Every bounds row for the given families, `n` values and `q` values, in
/// that nesting order.
pub fn bounds_table(families: &[GroupFamily], ns: &[usize], qs: &[u64]) -> Result<Vec<BoundsRow>> {
    let mut specs = Vec::new();
    for &family in families {
        for &n in ns {
            for &q in qs {
                specs.push(GroupSpec::new(family, n, q)?);
            }
        }
    }
    specs.par_iter().map(check_bounds).collect()
}
