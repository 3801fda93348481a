//! Brute-force census of classical matrix groups over small odd prime fields.
//!
//! Every element is visited once. Involutions are bucketed by similitude factor
//! and fixed-space dimension, and the twisted sets `{g : g² = c·μ(g)·I}` are
//! counted for `c = ±1`. Closed-form counts are checked against this oracle.

mod classes;
mod search;
mod verify;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

pub use classes::{expected_buckets, wall_class_size, ClassSign, InvolutionClass};
pub use verify::{acceptance_matrix, involution_sum_kind, verify_counts, verify_counts_with, Claim, VerificationRecord};

use crate::error::{Error, Result};
use crate::field::{FpElement, MatrixFp, MAX_MATRIX_DIM};
use crate::groups::{group_order_formula, standard_form, GroupFamily, GroupSpec};
use crate::qpoly::Count;
use search::{eigenspace_dim, square_scalar, Columns, Searcher};

/// Largest group order the census will enumerate.
pub const MAX_CENSUS_ORDER: u64 = 1 << 31;
/// Largest group order for which elements may be materialized in memory.
pub const MAX_MATERIALIZED_ORDER: u64 = 1_000_000;
/// Largest group order for the hash-based duplicate audit.
pub const MAX_AUDIT_ORDER: u64 = 10_000_000;

/// Largest prime admitted for each matrix dimension (index = dimension).
const PRIME_LIMIT_BY_DIM: [u32; 6] = [0, 31, 31, 13, 7, 5];

/// The constant `c` in `g² = c·μ(g)·I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Twist {
    Plus,
    Minus,
}

impl Twist {
    pub fn label(self) -> &'static str {
        match self {
            Twist::Plus => "+1",
            Twist::Minus => "-1",
        }
    }

    fn index(self) -> usize {
        match self {
            Twist::Plus => 0,
            Twist::Minus => 1,
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Twist {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Twist::Plus),
            "-1" | "-" => Ok(Twist::Minus),
            other => Err(Error::domain(format!("twist constant must be +1 or -1, got '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusQuery {
    pub spec: GroupSpec,
    pub want_buckets: bool,
    pub twist_constants: Vec<Twist>,
}

impl CensusQuery {
    /// Buckets and both twist constants.
    pub fn full(spec: GroupSpec) -> Self {
        CensusQuery {
            spec,
            want_buckets: true,
            twist_constants: vec![Twist::Plus, Twist::Minus],
        }
    }
}

/// Involutions with similitude factor `mu` and `dim ker(g - I) = j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvolutionBucket {
    pub mu: i8,
    pub j: usize,
    pub count: Count,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub spec: GroupSpec,
    pub order: Count,
    pub involution_total: Count,
    /// Nonzero buckets sorted by `mu` (`+1` first) then `j`. Empty unless requested.
    pub buckets: Vec<InvolutionBucket>,
    pub twisted_counts: BTreeMap<Twist, Count>,
}

impl CensusReport {
    /// Total over buckets with the given similitude factor.
    pub fn involutions_with_mu(&self, mu: i8) -> Count {
        self.buckets
            .iter()
            .filter(|b| b.mu == mu)
            .map(|b| b.count.clone())
            .sum()
    }

    pub fn bucket(&self, mu: i8, j: usize) -> Count {
        self.buckets
            .iter()
            .find(|b| b.mu == mu && b.j == j)
            .map(|b| b.count.clone())
            .unwrap_or_default()
    }
}

struct TwistedMap<'a>(&'a BTreeMap<Twist, Count>);

impl Serialize for TwistedMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k.label(), v)?;
        }
        map.end()
    }
}

impl Serialize for CensusReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Involutions<'a> {
            total: &'a Count,
            buckets: &'a [InvolutionBucket],
        }
        #[derive(Serialize)]
        struct Wire<'a> {
            family: GroupFamily,
            n: usize,
            p: u64,
            order: &'a Count,
            involutions: Involutions<'a>,
            twisted: TwistedMap<'a>,
        }
        Wire {
            family: self.spec.family,
            n: self.spec.n,
            p: self.spec.q,
            order: &self.order,
            involutions: Involutions {
                total: &self.involution_total,
                buckets: &self.buckets,
            },
            twisted: TwistedMap(&self.twisted_counts),
        }
        .serialize(s)
    }
}

/// Rejects groups outside the census envelope.
pub fn check_envelope(spec: &GroupSpec) -> Result<()> {
    let estimated = group_order_formula(spec);
    let refuse = |reason: String| Error::EnvelopeExceeded {
        spec: spec.to_string(),
        reason,
        estimated_order: estimated.to_string(),
    };
    if spec.family == GroupFamily::U {
        return Err(Error::domain("no census for unitary groups (needs F_{q^2})"));
    }
    let p = spec.prime()?;
    let dim = spec.matrix_dim();
    let Some(&limit) = PRIME_LIMIT_BY_DIM.get(dim) else {
        return Err(refuse(format!("matrix dimension {dim} exceeds 5")));
    };
    if p > limit {
        return Err(refuse(format!(
            "dimension {dim} admits primes up to {limit}, got {p}"
        )));
    }
    if estimated.0 > BigUint::from(MAX_CENSUS_ORDER) {
        return Err(refuse(format!("group order exceeds {MAX_CENSUS_ORDER}")));
    }
    Ok(())
}

fn searcher_for(spec: &GroupSpec) -> Result<Searcher> {
    check_envelope(spec)?;
    let p = spec.prime()?;
    let form = match spec.family {
        GroupFamily::Gl => None,
        f => Some(standard_form(f, spec.n, p)?),
    };
    Ok(Searcher::new(spec.family, spec.n, p, form.as_ref()))
}

/// Independent units of work: one per (multiplier, first column).
fn partitions(searcher: &Searcher) -> Vec<(u32, search::Vector)> {
    searcher
        .multipliers()
        .into_iter()
        .flat_map(|mu| {
            searcher
                .first_columns(mu)
                .into_iter()
                .map(move |c| (mu, c))
        })
        .collect()
}

#[derive(Debug, Clone, Default)]
struct Tally {
    order: u64,
    involutions: u64,
    /// `[mu index][j]`, mu index 0 for +1 and 1 for -1.
    buckets: [[u64; MAX_MATRIX_DIM + 1]; 2],
    twisted: [u64; 2],
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.order += other.order;
        self.involutions += other.involutions;
        for (a, b) in self.buckets.iter_mut().zip(other.buckets) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        for (x, y) in self.twisted.iter_mut().zip(other.twisted) {
            *x += y;
        }
        self
    }
}

/// Streams every element of the group to `visit` together with its similitude
/// factor, single-threaded; returns the number of elements.
pub fn enumerate_group(spec: &GroupSpec, mut visit: impl FnMut(&MatrixFp, FpElement)) -> Result<u64> {
    let searcher = searcher_for(spec)?;
    let (dim, p) = (searcher.dim, searcher.p);
    let mut count = 0u64;
    for (mu, first) in partitions(&searcher) {
        searcher.walk(mu, &first, &mut |cols: &Columns, mu| {
            count += 1;
            let g = MatrixFp::from_columns_raw(dim, p, cols);
            visit(&g, FpElement::from_raw(mu, p));
        });
    }
    Ok(count)
}

/// Number of elements, counted by walking the search tree.
pub fn enumerate_count(spec: &GroupSpec) -> Result<u64> {
    let searcher = searcher_for(spec)?;
    Ok(partitions(&searcher)
        .par_iter()
        .map(|(mu, first)| {
            let mut n = 0u64;
            searcher.walk(*mu, first, &mut |_, _| n += 1);
            n
        })
        .sum())
}

/// Every element with its similitude factor; refused above [`MAX_MATERIALIZED_ORDER`].
pub fn collect_elements(spec: &GroupSpec) -> Result<Vec<(MatrixFp, FpElement)>> {
    let order = group_order_formula(spec);
    if order.0 > BigUint::from(MAX_MATERIALIZED_ORDER) {
        return Err(Error::EnvelopeExceeded {
            spec: spec.to_string(),
            reason: format!("materialized mode is limited to {MAX_MATERIALIZED_ORDER} elements"),
            estimated_order: order.to_string(),
        });
    }
    let mut out = Vec::new();
    enumerate_group(spec, |g, mu| out.push((g.clone(), mu)))?;
    Ok(out)
}

/// Streams the group and checks that no element appears twice, by hashing a
/// packed encoding of each matrix. Returns the number of distinct elements seen
/// and whether any duplicate occurred.
pub fn audit_distinct(spec: &GroupSpec) -> Result<(u64, bool)> {
    let order = group_order_formula(spec);
    if order.0 > BigUint::from(MAX_AUDIT_ORDER) {
        return Err(Error::EnvelopeExceeded {
            spec: spec.to_string(),
            reason: format!("duplicate audit is limited to {MAX_AUDIT_ORDER} elements"),
            estimated_order: order.to_string(),
        });
    }
    let searcher = searcher_for(spec)?;
    let (dim, p) = (searcher.dim, searcher.p);
    let bits = 32 - p.leading_zeros();
    assert!(bits as usize * dim * dim <= 128, "encoding overflows u128");
    let mut seen = HashSet::with_capacity(order.to_u64().unwrap_or(0) as usize);
    let mut duplicate = false;
    for (mu, first) in partitions(&searcher) {
        searcher.walk(mu, &first, &mut |cols: &Columns, _| {
            let mut key = 0u128;
            for col in cols.iter().take(dim) {
                for &v in col.iter().take(dim) {
                    key = (key << bits) | v as u128;
                }
            }
            if !seen.insert(key) {
                duplicate = true;
            }
        });
    }
    Ok((seen.len() as u64, duplicate))
}

/// Runs the census on the current rayon pool. Work is split by
/// (multiplier, first column) and merged by exact addition, so the report does
/// not depend on the number of worker threads.
pub fn run_census(query: &CensusQuery) -> Result<CensusReport> {
    let searcher = searcher_for(&query.spec)?;
    let (dim, p) = (searcher.dim, searcher.p);
    let want_plus = query.twist_constants.contains(&Twist::Plus);
    let want_minus = query.twist_constants.contains(&Twist::Minus);
    let want_buckets = query.want_buckets;

    let tally = partitions(&searcher)
        .par_iter()
        .map(|(mu, first)| {
            let mut t = Tally::default();
            searcher.walk(*mu, first, &mut |cols: &Columns, mu| {
                t.order += 1;
                let Some(lambda) = square_scalar(cols, dim, p) else {
                    return;
                };
                if lambda == 1 {
                    t.involutions += 1;
                    if want_buckets {
                        let mu_index = if mu == 1 {
                            0
                        } else {
                            debug_assert_eq!(mu, p - 1, "involutions have similitude ±1");
                            1
                        };
                        t.buckets[mu_index][eigenspace_dim(cols, dim, p, 1)] += 1;
                    }
                }
                if want_plus && lambda == mu {
                    t.twisted[0] += 1;
                }
                if want_minus && lambda == p - mu {
                    t.twisted[1] += 1;
                }
            });
            t
        })
        .reduce(Tally::default, Tally::merge);

    let mut buckets = Vec::new();
    if want_buckets {
        for (mu_index, mu) in [(0usize, 1i8), (1, -1)] {
            for (j, &count) in tally.buckets[mu_index].iter().enumerate() {
                if count > 0 {
                    buckets.push(InvolutionBucket {
                        mu,
                        j,
                        count: Count::from(count),
                    });
                }
            }
        }
    }
    let twisted_counts = query
        .twist_constants
        .iter()
        .map(|&t| (t, Count::from(tally.twisted[t.index()])))
        .collect();
    Ok(CensusReport {
        spec: query.spec,
        order: Count::from(tally.order),
        involution_total: Count::from(tally.involutions),
        buckets,
        twisted_counts,
    })
}
