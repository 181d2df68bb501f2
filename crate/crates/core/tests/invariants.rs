use proptest::prelude::*;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use residue_core::artin_euler::{
    factor_bounds, l_rho_local_factor, log_local_factor, truncated_product_l1,
};
use residue_core::field_catalog::{
    filter_by_conditions, frobenius_class, load_catalog, write_catalog, LocalCondition,
    LocalConditionSet, NumberFieldRecord,
};
use residue_core::prime_poly::{is_prime, partitions, primes_up_to, CycleType, IntPolynomial};
use residue_core::quadratic_oracle::{
    class_number_by_character_sum, class_number_imaginary, fundamental_range, is_fundamental,
    kronecker_chi,
};

fn small_primes() -> Vec<u64> {
    primes_up_to(200.0)
}

fn cycle_type() -> impl Strategy<Value = CycleType> {
    (3u32..=5).prop_flat_map(|n| {
        let all = partitions(n).unwrap();
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn prime() -> impl Strategy<Value = u64> {
    let ps = small_primes();
    (0..ps.len()).prop_map(move |i| ps[i])
}

fn field(deg: usize) -> impl Strategy<Value = Option<NumberFieldRecord>> {
    prop::collection::vec(-9i64..=9, deg).prop_map(|mut c| {
        c.push(1);
        IntPolynomial::new(c)
            .ok()
            .and_then(|p| NumberFieldRecord::from_polynomial(p).ok())
    })
}

fn condition() -> impl Strategy<Value = LocalCondition> {
    prop_oneof![
        Just(LocalCondition::Ramified),
        Just(LocalCondition::Unramified(CycleType::identity(3))),
        Just(LocalCondition::Unramified(CycleType::full_cycle(3))),
        Just(LocalCondition::IfUnramified(
            CycleType::of(3, vec![2, 1]).unwrap()
        )),
    ]
}

fn cubic_catalog() -> &'static [NumberFieldRecord] {
    static CAT: std::sync::OnceLock<Vec<NumberFieldRecord>> = std::sync::OnceLock::new();
    CAT.get_or_init(|| residue_core::field_catalog::enumerate_cubics(12).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn frobenius_degrees_sum_to_degree(f in field(4), p in prime()) {
        if let Some(f) = f {
            let obs = frobenius_class(&f, p).unwrap();
            let total: u32 = obs.class.degrees().iter().sum();
            if obs.class.is_ramified() {
                prop_assert!(total <= f.degree() as u32);
            } else {
                prop_assert_eq!(total, f.degree() as u32);
            }
        }
    }

    #[test]
    fn local_factor_is_sandwiched(c in cycle_type(), p in prime()) {
        let v = l_rho_local_factor(&c, p).unwrap().value;
        let (lo, hi) = factor_bounds(p, c.n() - 1).unwrap();
        prop_assert!(lo <= v && v <= hi);
        let approx = log_local_factor(c.parts(), p).exp();
        prop_assert!((approx / v.to_f64().unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn truncated_estimate_within_envelope(f in field(3), x in 10.0f64..3000.0) {
        if let Some(f) = f {
            let est = truncated_product_l1(&f, x).unwrap();
            let (lo, hi) = residue_core::artin_euler::envelope_products(2, x);
            prop_assert!(est.value >= lo * (1.0 - 1e-12) && est.value <= hi * (1.0 + 1e-12));
        }
    }

    #[test]
    fn condition_sets_intersect(
        a in prop::collection::btree_map(prime().prop_filter("small", |p| *p <= 13), condition(), 0..3),
        b in prop::collection::btree_map(prime().prop_filter("small", |p| *p <= 13), condition(), 0..3),
    ) {
        let cat = cubic_catalog();
        let mut sa = LocalConditionSet::new();
        for (p, c) in &a { sa.insert(*p, c.clone()).unwrap(); }
        let mut sb = LocalConditionSet::new();
        for (p, c) in &b { sb.insert(*p, c.clone()).unwrap(); }
        let fa = filter_by_conditions(cat, &sa, None).unwrap();
        let fb = filter_by_conditions(cat, &sb, None).unwrap();
        let conflict = a.keys().any(|p| b.contains_key(p) && a[p] != b[p]);
        if conflict {
            // a union with clashing conditions at one prime is not a set; check the intersection directly
            let both: Vec<_> = cat.iter().filter(|r| fa.contains(r) && fb.contains(r)).collect();
            for r in both {
                let p = a.keys().find(|p| b.contains_key(p) && a[*p] != b[*p]).unwrap();
                let class = frobenius_class(r, *p).unwrap().class;
                prop_assert!(a[p].admits(&class) && b[p].admits(&class));
            }
        } else {
            let mut su = sa.clone();
            for (p, c) in &b {
                if !a.contains_key(p) { su.insert(*p, c.clone()).unwrap(); }
            }
            let fu = filter_by_conditions(cat, &su, None).unwrap();
            let inter: Vec<NumberFieldRecord> = fa.iter().filter(|r| fb.contains(r)).cloned().collect();
            prop_assert_eq!(fu, inter);
        }
    }

    #[test]
    fn kronecker_is_multiplicative(i in 0usize..1500, m in 1u64..5000, n in 1u64..5000) {
        let ds = fundamental_range(-10_000);
        let d = ds[i % ds.len()];
        let chi = |k| kronecker_chi(d, k).unwrap() as i32;
        prop_assert_eq!(chi(m * n), chi(m) * chi(n));
    }

    #[test]
    fn catalog_round_trips(fields in prop::collection::vec(field(3), 1..12)) {
        let mut records: Vec<NumberFieldRecord> = fields.into_iter().flatten().collect();
        let mut seen = std::collections::BTreeSet::new();
        records.retain(|r| seen.insert(r.poly.coeffs().to_vec()));
        prop_assume!(!records.is_empty());
        let mut buf = Vec::new();
        write_catalog(&records, &mut buf).unwrap();
        let loaded = load_catalog(buf.as_slice()).unwrap();
        prop_assert!(loaded.diagnostics.is_empty(), "{:?}", loaded.diagnostics);
        prop_assert_eq!(loaded.records.len(), records.len());
        for (a, b) in loaded.records.iter().zip(&records) {
            prop_assert_eq!(&a.poly, &b.poly);
            prop_assert_eq!(a.disc, b.disc);
            prop_assert_eq!(a.signature, b.signature);
        }
        let mut again = Vec::new();
        write_catalog(&loaded.records, &mut again).unwrap();
        prop_assert_eq!(buf, again);
    }
}

#[test]
fn class_number_oracles_agree_to_ten_thousand() {
    let ds = fundamental_range(-10_000);
    assert!(ds.iter().all(|&d| is_fundamental(d)));
    for d in ds {
        let h = class_number_imaginary(d).unwrap().h;
        assert_eq!(h, class_number_by_character_sum(d).unwrap(), "D = {d}");
    }
}

#[test]
fn exact_factor_matches_rational_formula() {
    // independent form: (1 - 1/p) / prod_j (1 - p^{-d_j})
    for c in partitions(4).unwrap() {
        for p in [2u64, 3, 5, 7, 101] {
            assert!(is_prime(p));
            let one = BigRational::from_integer(1.into());
            let pq = BigRational::from_integer(p.into());
            let mut want = &one - one.clone() / &pq;
            for &d in c.parts() {
                want /= &one - one.clone() / num_traits::pow(pq.clone(), d as usize);
            }
            assert_eq!(l_rho_local_factor(&c, p).unwrap().value, want, "{c} at {p}");
        }
    }
}
