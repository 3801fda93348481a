use chardeg_core::census::{
    audit_distinct, check_envelope, enumerate_group, expected_buckets, run_census, verify_counts, CensusQuery,
    Twist,
};
use chardeg_core::field::MatrixFp;
use chardeg_core::groups::{group_order_formula, GroupFamily, GroupSpec};
use chardeg_core::qpoly::Count;
use chardeg_core::sums::{degree_sum, SumKind};
use chardeg_core::Error;

use GroupFamily::*;

fn spec(family: GroupFamily, n: usize, p: u64) -> GroupSpec {
    GroupSpec::new(family, n, p).unwrap()
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn eigenspaces_of_involutions_are_complementary() {
    for s in [spec(Gsp, 2, 3), spec(OMinus, 2, 3), spec(OOdd, 2, 3), spec(Gl, 3, 3)] {
        let dim = s.matrix_dim();
        let id = MatrixFp::identity(dim, s.q as u32).unwrap();
        let mut seen = 0u64;
        enumerate_group(&s, |g, mu| {
            let sq = g.mul(g).unwrap();
            if sq != id {
                return;
            }
            seen += 1;
            let j = dim - g.sub(&id).unwrap().rank();
            let j_neg = dim - g.add(&id).unwrap().rank();
            assert_eq!(j + j_neg, dim, "{s}: {g}");
            if mu.value() != 1 {
                assert_eq!(j, dim / 2, "{s}: skew involution {g}");
            }
        })
        .unwrap();
        let report = run_census(&CensusQuery::full(s)).unwrap();
        assert_eq!(Count::from(seen), report.involution_total);
    }
}

#[test]
fn symplectic_fixed_spaces_are_even() {
    let report = run_census(&CensusQuery::full(spec(Sp, 2, 5))).unwrap();
    assert!(report.buckets.iter().all(|b| b.mu == 1 && b.j % 2 == 0));
    assert_eq!(report.involution_total, Count::from(652));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    for s in [spec(Gsp, 2, 3), spec(OOdd, 2, 3), spec(GoMinusConn, 2, 3)] {
        let q = CensusQuery::full(s);
        let one = with_threads(1, || run_census(&q).unwrap());
        let four = with_threads(4, || run_census(&q).unwrap());
        assert_eq!(one, four);
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&four).unwrap()
        );
    }
}

#[test]
fn no_duplicates_and_orders_match() {
    for s in [
        spec(Gl, 3, 3),
        spec(Sp, 2, 3),
        spec(Gsp, 2, 3),
        spec(OOdd, 2, 3),
        spec(OPlus, 2, 5),
        spec(GoMinus, 2, 3),
        spec(GoPlusConn, 2, 3),
        spec(SoMinus, 1, 13),
    ] {
        let (distinct, duplicate) = audit_distinct(&s).unwrap();
        assert!(!duplicate, "{s}");
        assert_eq!(Count::from(distinct), group_order_formula(&s), "{s}");
    }
}

#[test]
fn totals_equal_bucket_sums_and_class_data() {
    for family in [Gl, Sp, Gsp, OOdd, SoOdd, OPlus, OMinus, SoPlus, SoMinus, GoPlus, GoMinus, GoPlusConn, GoMinusConn] {
        for p in [3u64, 5] {
            let s = spec(family, 1, p);
            let r = run_census(&CensusQuery::full(s)).unwrap();
            let sum: Count = r.buckets.iter().map(|b| b.count.clone()).sum();
            assert_eq!(sum, r.involution_total, "{s}");
            assert_eq!(r.buckets, expected_buckets(family, 1, p).unwrap(), "{s}");
        }
    }
}

#[test]
fn similitude_groups() {
    let gsp2 = run_census(&CensusQuery::full(spec(Gsp, 1, 3))).unwrap();
    assert_eq!(gsp2.order, Count::from(48));
    assert_eq!(gsp2.twisted_counts[&Twist::Minus], Count::from(18));
    assert_eq!(gsp2.involutions_with_mu(-1), Count::from(12));

    let gsp4 = run_census(&CensusQuery {
        spec: spec(Gsp, 2, 3),
        want_buckets: false,
        twist_constants: vec![Twist::Minus],
    })
    .unwrap();
    assert_eq!(gsp4.twisted_counts[&Twist::Minus], Count::from(1620));
    assert!(gsp4.buckets.is_empty());
    assert!(!gsp4.twisted_counts.contains_key(&Twist::Plus));

    let gom = run_census(&CensusQuery::full(spec(GoMinus, 1, 5))).unwrap();
    assert_eq!(gom.involutions_with_mu(-1), Count::zero());
}

#[test]
fn verification_examples() {
    let r = verify_counts(&spec(OOdd, 2, 3)).unwrap();
    assert!(r.all_pass());
    assert_eq!(r.claim("order").unwrap().census, Count::from(103_680));
    assert_eq!(r.claim("involutions = all sum").unwrap().census, Count::from(1784));

    let r = verify_counts(&spec(SoOdd, 1, 7)).unwrap();
    assert!(r.all_pass());
    assert_eq!(r.claim("involutions = all sum").unwrap().census, Count::from(50));

    let r = verify_counts(&spec(OPlus, 2, 3)).unwrap();
    assert!(r.all_pass());
    assert_eq!(r.claim("order").unwrap().formula, Count::from(1152));

    let r = verify_counts(&spec(Gsp, 1, 5)).unwrap();
    assert_eq!(
        r.claim("first term: Sp fs_signed = involutions with mu=+1").unwrap().census,
        Count::from(2)
    );
}

#[test]
fn formula_and_census_agree_beyond_the_matrix() {
    for (family, n, p, kind) in [
        (Gl, 2, 11, SumKind::RealValued),
        (Sp, 1, 13, SumKind::FsSigned),
        (OMinus, 1, 13, SumKind::All),
        (GoPlus, 1, 7, SumKind::RealValued),
        (SoPlus, 2, 3, SumKind::All),
    ] {
        let s = spec(family, n, p);
        let r = run_census(&CensusQuery::full(s)).unwrap();
        assert_eq!(degree_sum(&s, kind).unwrap().value, r.involution_total, "{s}");
    }
}

#[test]
fn envelope_is_enforced() {
    for s in [spec(Gl, 2, 37), spec(Gl, 3, 17), spec(Sp, 2, 11), spec(OOdd, 2, 7), spec(Gl, 6, 3)] {
        match check_envelope(&s) {
            Err(Error::EnvelopeExceeded { estimated_order, .. }) => {
                assert_eq!(estimated_order, group_order_formula(&s).to_string())
            }
            other => panic!("{s}: {other:?}"),
        }
        assert!(run_census(&CensusQuery::full(s)).is_err());
    }
    assert!(matches!(check_envelope(&spec(Gl, 2, 9)), Err(Error::Domain(_))));
}
