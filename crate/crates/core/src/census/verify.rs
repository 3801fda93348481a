//! Closed-form counts checked against the census.

use serde::Serialize;

use super::classes::{expected_buckets, wall_class_size, InvolutionClass};
use super::{run_census, CensusQuery, CensusReport, Twist};
use crate::error::{Error, Result};
use crate::groups::{group_order_formula, GroupFamily, GroupSpec};
use crate::qpoly::Count;
use crate::sums::{degree_sum, SumKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub formula: Count,
    pub census: Count,
    pub pass: bool,
    /// The identity is taken from outside the formulas implemented here and
    /// only checked numerically.
    pub external: bool,
}

impl Claim {
    fn new(name: impl Into<String>, formula: Count, census: Count) -> Self {
        let pass = formula == census;
        Claim {
            name: name.into(),
            formula,
            census,
            pass,
            external: false,
        }
    }

    fn external(mut self) -> Self {
        self.external = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub spec: GroupSpec,
    pub claims: Vec<Claim>,
}

impl VerificationRecord {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    /// `Err(Verification)` naming every failed claim.
    pub fn into_result(self) -> Result<Self> {
        if self.all_pass() {
            return Ok(self);
        }
        let names: Vec<String> = self
            .failures()
            .map(|c| format!("{} (formula {}, census {})", c.name, c.formula, c.census))
            .collect();
        Err(Error::Verification(format!("{}: {}", self.spec, names.join("; "))))
    }
}

/// The degree-sum kind whose value is the involution count of the family.
pub fn involution_sum_kind(family: GroupFamily) -> Option<SumKind> {
    use GroupFamily::*;
    match family {
        Gl | Gsp | SoPlus | SoMinus | GoPlus | GoMinus => Some(SumKind::RealValued),
        Sp => Some(SumKind::FsSigned),
        OOdd | SoOdd | OPlus | OMinus => Some(SumKind::All),
        U | GoPlusConn | GoMinusConn => None,
    }
}

/// Runs the census and checks every applicable count identity.
pub fn verify_counts(spec: &GroupSpec) -> Result<VerificationRecord> {
    verify_counts_with(spec, |_| {})
}

/// As [`verify_counts`], with `tamper` applied to the census report before
/// comparison. Used to exercise failure reporting.
pub fn verify_counts_with(spec: &GroupSpec, tamper: impl FnOnce(&mut CensusReport)) -> Result<VerificationRecord> {
    use GroupFamily::*;
    let mut report = run_census(&CensusQuery::full(*spec))?;
    tamper(&mut report);
    let (family, n, q) = (spec.family, spec.n, spec.q);
    let mut claims = vec![Claim::new("order", group_order_formula(spec), report.order.clone())];

    if let Some(kind) = involution_sum_kind(family) {
        claims.push(Claim::new(
            format!("involutions = {kind} sum"),
            degree_sum(spec, kind)?.value,
            report.involution_total.clone(),
        ));
    }

    let expected = expected_buckets(family, n, q)?;
    let mut keys: Vec<(i8, usize)> = expected
        .iter()
        .chain(&report.buckets)
        .map(|b| (b.mu, b.j))
        .collect();
    keys.sort_by_key(|&(mu, j)| (-mu, j));
    keys.dedup();
    for (mu, j) in keys {
        let formula = expected
            .iter()
            .find(|b| b.mu == mu && b.j == j)
            .map(|b| b.count.clone())
            .unwrap_or_default();
        claims.push(Claim::new(
            format!("bucket mu={mu:+} j={j}"),
            formula,
            report.bucket(mu, j),
        ));
    }

    match family {
        Gsp => {
            let sp = GroupSpec::new(Sp, n, q)?;
            claims.push(Claim::new(
                "first term: Sp fs_signed = involutions with mu=+1",
                degree_sum(&sp, SumKind::FsSigned)?.value,
                report.involutions_with_mu(1),
            ));
            claims.push(Claim::new(
                "second term: Sp all = involutions with mu=-1",
                degree_sum(&sp, SumKind::All)?.value,
                report.involutions_with_mu(-1),
            ));
            claims.push(
                Claim::new(
                    "twisted(-1) = GSp all sum",
                    degree_sum(spec, SumKind::All)?.value,
                    report.twisted_counts.get(&Twist::Minus).cloned().unwrap_or_default(),
                )
                .external(),
            );
        }
        GoPlus | GoPlusConn => claims.push(Claim::new(
            "involutions with mu=-1 = |O+|/|GL(n)|",
            wall_class_size(family, n, InvolutionClass::Skew, q)?,
            report.involutions_with_mu(-1),
        )),
        GoMinus | GoMinusConn => claims.push(Claim::new(
            "involutions with mu=-1 = 0",
            Count::zero(),
            report.involutions_with_mu(-1),
        )),
        _ => {}
    }

    Ok(VerificationRecord { spec: *spec, claims })
}

/// The census cases of the standard verification matrix, smallest groups first
/// within each family block.
pub fn acceptance_matrix() -> Vec<GroupSpec> {
    use GroupFamily::*;
    let mut cases = Vec::new();
    let mut push = |families: &[GroupFamily], params: &[(usize, u64)]| {
        for &family in families {
            for &(n, p) in params {
                cases.push(GroupSpec::new(family, n, p).expect("valid matrix case"));
            }
        }
    };
    push(&[Gl], &[(1, 3), (1, 13), (2, 3), (2, 7), (3, 3), (3, 5), (4, 3)]);
    push(&[Sp], &[(1, 3), (1, 5), (2, 3), (2, 5)]);
    push(&[Gsp], &[(1, 3), (1, 5), (1, 7), (2, 3), (2, 5)]);
    push(&[OOdd, SoOdd], &[(1, 3), (1, 7), (1, 13), (2, 3), (2, 5)]);
    push(
        &[OPlus, OMinus, SoPlus, SoMinus, GoPlus, GoMinus, GoPlusConn, GoMinusConn],
        &[(1, 3), (1, 5), (1, 11), (2, 3), (2, 5)],
    );
    cases
}
