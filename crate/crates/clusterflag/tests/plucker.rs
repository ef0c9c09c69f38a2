use clusterflag::flag_seeds::{initial_index_sets, lift_index_set, FlagType};
use clusterflag::plucker_algebra::*;
use proptest::prelude::*;

mod common;
use common::{relations, subsets};

fn permutations(v: &[u32]) -> Vec<(Vec<u32>, usize)> {
    if v.len() <= 1 {
        return vec![(v.to_vec(), 0)];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for (mut p, inv) in permutations(&rest) {
            p.insert(0, x);
            // Moving the i-th smallest to the front costs i inversions.
            out.push((p, inv + i));
        }
    }
    out
}

#[test]
fn sign_coherence_exhaustive() {
    for len in 1..=5usize {
        for base in subsets(7, len) {
            for (p, inv) in permutations(&base) {
                let want = if inv % 2 == 0 { 1 } else { -1 };
                assert_eq!(normalize_index(&p), (want, PluckerIndex::from_sorted(base.clone())), "{p:?}");
            }
        }
    }
    assert_eq!(normalize_index(&[2, 4, 2]).0, 0);
}

#[test]
fn phi_star_of_relation_is_relation_of_extended_sets() {
    let mut count = 0;
    for (n, p, q, dk, s, j, l) in relations(6) {
        let mut dims = vec![p, q, dk];
        dims.dedup();
        let rel = plucker_relation(s, &j, &l).unwrap();
        let image = embed_phi_star(&rel, n, &dims).unwrap();
        let ext = |set: &[u32], d: u32| -> Vec<u32> { set.iter().copied().chain(n + 1..=n + dk - d).collect() };
        let lifted = plucker_relation(s, &ext(&j, p), &ext(&l, q)).unwrap();
        assert_eq!(image, lifted, "n={n} dims={dims:?} s={s} J={j:?} L={l:?}");
        count += 1;
    }
    let binom = |n: u32, k: u32| (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
    let mut want = 0;
    for n in 2..=6u32 {
        for dk in 1..n {
            for q in 1..=dk {
                for p in 1..=q {
                    want += binom(n, p) * binom(n, q) * p as u64;
                }
            }
        }
    }
    assert_eq!(count, want);
}

#[test]
fn relations_vanish_on_flags() {
    let points: Vec<Vec<EvaluationPoint>> = (0..=5u64)
        .map(|dk| (0..20).map(|t| random_point(dk.max(1) as usize, 10, DEFAULT_PRIME, 1000 * dk + t)).collect())
        .collect();
    for (n, p, q, dk, s, j, l) in relations(5) {
        let rel = plucker_relation(s, &j, &l).unwrap();
        let mut dims = vec![p, q, dk];
        dims.dedup();
        let image = embed_phi_star(&rel, n, &dims).unwrap();
        for pt in &points[dk as usize] {
            assert_eq!(evaluate(&rel, pt).unwrap(), 0, "n={n} s={s} J={j:?} L={l:?}");
            assert_eq!(evaluate(&image, pt).unwrap(), 0, "phi n={n} s={s} J={j:?} L={l:?}");
        }
    }
}

#[test]
fn lifts_equal_unipotent_minors() {
    for n in 2..=8u32 {
        for mask in 1u32..(1 << (n - 1)) {
            let dims: Vec<u32> = (1..n).filter(|d| mask & (1 << (d - 1)) != 0).collect();
            let flag = FlagType::new(n, dims.clone()).unwrap();
            let sets = initial_index_sets(&flag);
            let pts: Vec<EvaluationPoint> = (0..2).map(|t| random_unipotent_point(n, &dims, DEFAULT_PRIME, t)).collect();
            for set in sets.frozen.iter().chain(&sets.mutable) {
                let f = lift_index_set(set, &flag).unwrap();
                assert!(f.is_homogeneous(), "{flag} {set:?}");
                for pt in &pts {
                    assert_eq!(evaluate(&f, pt).unwrap(), pt.last_columns_minor(set).unwrap(), "{flag} {set:?}");
                }
            }
        }
    }
}

fn poly(n: u32, dims: Vec<u32>) -> impl Strategy<Value = PluckerPolynomial> {
    let var = proptest::sample::select(dims)
        .prop_flat_map(move |d| proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), d as usize));
    proptest::collection::vec((-5i64..=5, proptest::collection::vec(var, 0..=2)), 0..=4).prop_map(|terms| {
        let mut f = PluckerPolynomial::zero();
        for (c, mono) in terms {
            let refs: Vec<&[u32]> = mono.iter().map(Vec::as_slice).collect();
            f = &f + &PluckerPolynomial::signed_product(&refs).scale(&c.into());
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn phi_star_is_a_ring_homomorphism(f in poly(6, vec![2, 4]), g in poly(6, vec![2, 4])) {
        let phi = |h: &PluckerPolynomial| embed_phi_star(h, 6, &[2, 4]).unwrap();
        prop_assert_eq!(phi(&(&f * &g)), &phi(&f) * &phi(&g));
        prop_assert_eq!(phi(&(&f + &g)), &phi(&f) + &phi(&g));
        for (mono, _) in phi(&f).terms() {
            prop_assert!(mono.iter().all(|idx| idx.len() == 4));
        }
    }

    #[test]
    fn evaluation_is_linear(f in poly(6, vec![2, 3]), g in poly(6, vec![2, 3]), seed in 0u64..1000) {
        let pt = random_point(3, 6, DEFAULT_PRIME, seed);
        let (a, b) = (evaluate(&f, &pt).unwrap(), evaluate(&g, &pt).unwrap());
        prop_assert_eq!(evaluate(&(&f + &g), &pt).unwrap(), add_mod(a, b, DEFAULT_PRIME));
        prop_assert_eq!(evaluate(&(&f * &g), &pt).unwrap(), mul_mod(a, b, DEFAULT_PRIME));
    }
}
