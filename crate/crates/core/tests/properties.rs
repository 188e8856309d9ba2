//! Algebraic properties of the invariants, checked exhaustively over every
//! admissible type with fields ≤ 40 and on 10⁵ random admissible types.

use bidouble::cover::{self, CoverType, DEFAULT_FIELD_CAP};
use bidouble::search::{self, enumerate_admissible};
use bidouble::topology::{are_homeomorphic, homeo_class_key, is_catanese_tuple};
use bidouble::{validate_type, SurfaceInvariants};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXHAUSTIVE_BOUND: i64 = 40;
const RANDOM_SAMPLES: usize = 100_000;

/// Every admissible type (canonical or not) with fields ≤ bound, by plain
/// quadruple loop.
fn all_admissible(bound: i64) -> Vec<CoverType> {
    let mut out = Vec::new();
    for a in 3..=bound {
        for b in 3..=bound {
            for m2 in 3..=bound {
                for n2 in 3..=bound {
                    if let Ok(t) = validate_type(a, b, m2, n2) {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

/// Random admissible type with every field ≤ cap, built half by half.
fn random_admissible(rng: &mut impl Rng, cap: i64) -> CoverType {
    let mut half = || {
        let y = rng.gen_range(3..=(cap - 1) / 2);
        // x > 2y, x ≡ y (mod 2), x ≤ cap
        let lo = if y % 2 == 1 { 2 * y + 1 } else { 2 * y + 2 };
        let steps = (cap - lo) / 2;
        (lo + 2 * rng.gen_range(0..=steps), y)
    };
    let (a, n2) = half();
    let (m2, b) = half();
    validate_type(a, b, m2, n2).expect("constructed admissible")
}

fn random_types() -> Vec<CoverType> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b1d0);
    (0..RANDOM_SAMPLES)
        .map(|_| random_admissible(&mut rng, DEFAULT_FIELD_CAP))
        .collect()
}

/// χ expanded in a, b, m2, n2, evaluated in i128.
fn chi_polynomial(t: &CoverType) -> i128 {
    let (a, b, m, n) = t.as_tuple();
    let (a, b, m, n) = (a as i128, b as i128, m as i128, n as i128);
    4 + a * b + n * m + (a + n) * (b + m) - 2 * (a + b + m + n)
}

fn check_single(t: &CoverType) -> Result<(), String> {
    let p = cover::derive_params(t);
    let inv = cover::surface_invariants(t);
    let fail = |what: &str| Err(format!("{what} fails for {t}"));
    if [p.u, p.v, p.w, p.z].iter().any(|x| x % 2 != 0) {
        return fail("evenness of u, v, w, z");
    }
    if p.u < 8 || p.v < 8 || p.w < 4 || p.z < 4 {
        return fail("lower bounds on u, v, w, z");
    }
    if inv.kk != 8 * p.u * p.v || inv.kk % 32 != 0 {
        return fail("K² = 8uv ≡ 0 mod 32");
    }
    if 12 * inv.chi != inv.kk + inv.euler {
        return fail("Noether");
    }
    if inv.b_plus + inv.b_minus != inv.b2 || inv.b_plus - inv.b_minus != inv.sigma {
        return fail("Betti bookkeeping");
    }
    if inv.r % 2 != 0 || p.u % inv.r != 0 || p.v % inv.r != 0 || inv.r < 2 {
        return fail("r even and dividing u, v");
    }
    if inv.kk <= 0 || inv.chi <= 0 || inv.euler <= 0 {
        return fail("positivity");
    }
    if inv.b_plus <= 0 || inv.b_plus % 2 != 1 {
        return fail("b+ odd and positive");
    }
    if chi_polynomial(t) != inv.chi as i128 {
        return fail("χ polynomial expansion");
    }
    let s = t.swap();
    if cover::validate_type_with_cap(s.a(), s.b(), s.m2(), s.n2(), cover::MAX_FIELD_CAP).is_err() {
        return fail("involution preserves admissibility");
    }
    if cover::surface_invariants(&s) != inv {
        return fail("involution invariance");
    }
    let c = cover::canonicalize(t);
    if cover::canonicalize(&c) != c || cover::canonicalize(&s) != c {
        return fail("canonicalize idempotent and constant on orbits");
    }
    Ok(())
}

#[test]
fn single_type_laws_exhaustive() {
    let types = all_admissible(EXHAUSTIVE_BOUND);
    assert!(types.len() > 20_000, "{}", types.len());
    let violations: Vec<String> = types.iter().filter_map(|t| check_single(t).err()).collect();
    assert!(
        violations.is_empty(),
        "{} violations, first: {:?}",
        violations.len(),
        violations.first()
    );
}

#[test]
fn single_type_laws_random() {
    let violations: Vec<String> = random_types()
        .iter()
        .filter_map(|t| check_single(t).err())
        .collect();
    assert!(
        violations.is_empty(),
        "{} violations, first: {:?}",
        violations.len(),
        violations.first()
    );
}

#[test]
fn signature_negative_up_to_forty() {
    for t in all_admissible(EXHAUSTIVE_BOUND) {
        assert!(cover::surface_invariants(&t).sigma < 0, "{t}");
    }
}

#[test]
fn homeomorphism_is_key_equality() {
    let invs: Vec<SurfaceInvariants> = enumerate_admissible(EXHAUSTIVE_BOUND)
        .map(|t| cover::surface_invariants(&t))
        .collect();
    for x in &invs {
        assert!(are_homeomorphic(x, x));
    }
    // All pairs: the relation is exactly key equality and is symmetric, which
    // makes it an equivalence relation.
    for (i, x) in invs.iter().enumerate() {
        for y in &invs[i + 1..] {
            let h = are_homeomorphic(x, y);
            assert_eq!(h, are_homeomorphic(y, x));
            assert_eq!(h, homeo_class_key(x) == homeo_class_key(y));
        }
    }
}

#[test]
fn homeomorphism_transitive_within_classes() {
    let buckets = search::group_by_homeo_class(enumerate_admissible(EXHAUSTIVE_BOUND));
    for bucket in buckets.values().filter(|b| b.len() >= 3) {
        let invs: Vec<SurfaceInvariants> = bucket
            .members()
            .map(|m| cover::surface_invariants(&m.cover))
            .collect();
        for x in &invs {
            for y in &invs {
                for z in &invs {
                    assert!(are_homeomorphic(x, y) && are_homeomorphic(y, z));
                    assert!(are_homeomorphic(x, z));
                }
            }
        }
    }
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head.clone());
            out.push(p);
        }
    }
    out
}

#[test]
fn catanese_verdict_permutation_and_swap_invariant() {
    let buckets = search::group_by_homeo_class(enumerate_admissible(EXHAUSTIVE_BOUND));
    let mut checked = 0;
    for bucket in buckets.values().filter(|b| b.len() >= 2) {
        let members: Vec<CoverType> = bucket.members().map(|m| m.cover).collect();
        // Every pair and up to the first few triples, Catanese or not.
        let mut tuples: Vec<Vec<CoverType>> = Vec::new();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                tuples.push(vec![members[i], members[j]]);
                if let Some(&third) = members.get(j + 1) {
                    tuples.push(vec![members[i], members[j], third]);
                }
            }
        }
        for tuple in tuples {
            let base = is_catanese_tuple(&tuple).unwrap().is_catanese;
            for p in permutations(&tuple) {
                assert_eq!(is_catanese_tuple(&p).unwrap().is_catanese, base);
                let swapped: Vec<CoverType> = p.iter().map(CoverType::swap).collect();
                assert_eq!(is_catanese_tuple(&swapped).unwrap().is_catanese, base);
            }
            checked += 1;
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn mixed_class_tuples_are_never_catanese() {
    let types: Vec<CoverType> = enumerate_admissible(24).collect();
    for w in types.windows(2) {
        let (x, y) = (
            cover::surface_invariants(&w[0]),
            cover::surface_invariants(&w[1]),
        );
        let v = is_catanese_tuple(w).unwrap();
        if homeo_class_key(&x) != homeo_class_key(&y) {
            assert!(!v.is_catanese);
            assert!(v.shared_key.is_none());
        }
    }
}

fn admissible_strategy() -> impl Strategy<Value = CoverType> {
    let half = (3i64..4_000).prop_flat_map(|y| {
        let lo = if y % 2 == 1 { 2 * y + 1 } else { 2 * y + 2 };
        (0..=(DEFAULT_FIELD_CAP - lo) / 2).prop_map(move |k| (lo + 2 * k, y))
    });
    (half.clone(), half).prop_map(|((a, n2), (m2, b))| validate_type(a, b, m2, n2).unwrap())
}

proptest! {
    #[test]
    fn diffeo_obstruction_symmetric(t in admissible_strategy()) {
        let x = cover::surface_invariants(&t);
        let y = cover::surface_invariants(&t.swap());
        prop_assert_eq!(
            bidouble::diffeo_obstruction(&x, &y),
            bidouble::diffeo_obstruction(&y, &x)
        );
    }

    #[test]
    fn serde_round_trip(t in admissible_strategy()) {
        let json = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<CoverType>(&json).unwrap(), t);
    }

    #[test]
    fn validation_matches_constraint_list(
        a in -5i64..60, b in -5i64..60, m2 in -5i64..60, n2 in -5i64..60
    ) {
        let listed = cover::violated_constraints(a, b, m2, n2);
        match validate_type(a, b, m2, n2) {
            Ok(_) => prop_assert!(listed.is_empty()),
            Err(cover::CoverError::ConstraintViolation(cs)) => prop_assert_eq!(cs, listed),
            Err(e) => prop_assert!(false, "unexpected {:?}", e),
        }
    }
}
