mod common;

use common::{dense_rank, small_random_poly, to_dense};
use kyflat_core::exactla::{
    block_rank_sum, rank_exact, rank_modular, rank_modular_with_primes, Ranker, Scalar, SparseMatrix,
};
use kyflat_core::koszul::{koszul_flattening, weight_blocks_product};
use kyflat_core::symtensor::{catalecticant, gen_product, shifted_partials};
use proptest::prelude::*;

fn int_matrix() -> impl Strategy<Value = SparseMatrix> {
    (0usize..7, 0usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::option::weighted(0.5, -6i64..=6), r * c).prop_map(move |cells| {
            let entries = cells
                .into_iter()
                .enumerate()
                .filter_map(|(i, v)| v.map(|v| (i / c.max(1), i % c.max(1), Scalar::int(v))))
                .collect();
            SparseMatrix::new(r, c, entries).unwrap()
        })
    })
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut s = seed | 1;
    for i in (1..n).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        p.swap(i, (s % (i as u64 + 1)) as usize);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exact_rank_matches_dense_oracle(m in int_matrix()) {
        prop_assert_eq!(rank_exact(&m).unwrap().rank, dense_rank(to_dense(&m)));
    }

    #[test]
    fn rank_ignores_permutations(m in int_matrix(), seed in any::<u64>()) {
        let rows = shuffled(m.n_rows(), seed);
        let cols = shuffled(m.n_cols(), seed.rotate_left(17));
        prop_assert_eq!(rank_exact(&m.permute(&rows, &cols)).unwrap().rank, rank_exact(&m).unwrap().rank);
    }

    #[test]
    fn rank_ignores_row_scaling(m in int_matrix(), num in 1i64..50, den in 1i64..50, neg in any::<bool>()) {
        prop_assume!(m.n_rows() > 0);
        let factor = Scalar::ratio(if neg { -num } else { num }, den).unwrap();
        let scaled = m.scale_row(m.n_rows() / 2, &factor).unwrap();
        prop_assert_eq!(rank_exact(&scaled).unwrap().rank, rank_exact(&m).unwrap().rank);
    }

    #[test]
    fn modular_rank_never_exceeds_exact(m in int_matrix(), seed in any::<u64>()) {
        prop_assert!(rank_modular(&m, 1, seed).unwrap().rank <= rank_exact(&m).unwrap().rank);
    }
}

#[test]
fn modular_rank_on_constructed_matrices() {
    let mut mats = Vec::new();
    for seed in 0..6 {
        let p = small_random_poly(3, 4, 3, seed);
        mats.push(catalecticant(&p, 2).unwrap());
        mats.push(shifted_partials(&p, 1, 1).unwrap());
        mats.push(koszul_flattening(&p, 2, 1).unwrap());
    }
    for d in 3..=4 {
        mats.push(koszul_flattening(&gen_product(d).unwrap(), 1, 1).unwrap());
    }
    for m in &mats {
        assert!(m.n_cols() <= 200);
        let exact = rank_exact(m).unwrap().rank;
        let mut hit = false;
        for s in 0..3 {
            let r = rank_modular(m, 1, s).unwrap();
            assert!(r.rank <= exact);
            hit |= r.rank == exact;
        }
        assert!(hit);
    }
}

#[test]
fn small_prime_rank_drop_is_a_lower_bound() {
    // det = 2^31 + 11, which is prime
    let q: i64 = 2147483659;
    let m = SparseMatrix::new(
        2,
        2,
        vec![
            (0, 0, Scalar::int(q + 1)),
            (0, 1, Scalar::int(1)),
            (1, 0, Scalar::int(1)),
            (1, 1, Scalar::int(1)),
        ],
    )
    .unwrap();
    assert_eq!(rank_exact(&m).unwrap().rank, 2);
    let r = rank_modular_with_primes(&m, &[q as u64]).unwrap();
    assert_eq!(r.rank, 1);
    assert!(r.is_certified_lower_bound);
}

#[test]
fn block_sum_matches_assembled_rank() {
    for d in 2..=5 {
        let chow = gen_product(d).unwrap();
        for k in 1..d {
            for p in 1..d {
                let blocks: Vec<SparseMatrix> = weight_blocks_product(d, k, p)
                    .unwrap()
                    .iter()
                    .map(|b| b.matrix(d, k, p).unwrap())
                    .collect();
                let assembled = rank_exact(&koszul_flattening(&chow, k, p).unwrap()).unwrap().rank;
                let summed = block_rank_sum(&blocks, Ranker::Exact).unwrap();
                assert_eq!(summed.rank, assembled, "d={d} k={k} p={p}");
                let modular = block_rank_sum(&blocks, Ranker::Modular { primes: 1, seed: 7 }).unwrap();
                assert_eq!(modular.rank, assembled);
            }
        }
    }
}
