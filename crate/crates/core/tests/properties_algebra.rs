use heisweil::forms::{find_polarization, BilinearForm, FormKind, PolarizationInput, QuadraticForm};
use heisweil::gf::{all_vectors, FpMatrix, FqScalar, GfExt};
use heisweil::grp::{
    coboundary_solve, complement_exists, cyclic, direct_product, find_isomorphism, symmetric, CoboundaryResult, Cocycle2,
    FinGroup, SemidirectData,
};
use proptest::prelude::*;

const PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

fn matrix(p: u32, dim: usize, entries: &[u32]) -> FpMatrix {
    let rows: Vec<Vec<u32>> = entries.chunks(dim).map(|r| r.iter().map(|x| x % p).collect()).collect();
    FpMatrix::from_rows(p, &rows).unwrap()
}

fn invertible(p: u32, dim: usize) -> impl Strategy<Value = FpMatrix> {
    prop::collection::vec(0..p, dim * dim).prop_map(move |e| matrix(p, dim, &e)).prop_filter("singular", |m| m.inverse().is_some())
}

fn quadratic(p: u32, dim: usize, upper: &[u32], diag: &[u32]) -> QuadraticForm {
    let mut u = FpMatrix::zeros(p, dim, dim);
    let mut k = 0;
    for i in 0..dim {
        for j in i + 1..dim {
            u.set(i, j, upper[k] % p);
            k += 1;
        }
    }
    QuadraticForm::new(u, diag.iter().map(|d| d % p).collect()).unwrap()
}

proptest! {
    #[test]
    fn inverse_is_two_sided((p, m, idx) in (0..PRIMES.len(), 1usize..=4)
        .prop_filter("field too large", |&(i, m)| (PRIMES[i] as u64).pow(m as u32) <= 1 << 16)
        .prop_flat_map(|(i, m)| {
            let q = (PRIMES[i] as u64).pow(m as u32);
            (Just(PRIMES[i]), Just(m), 1..q)
        }))
    {
        let f = GfExt::new(p, m).unwrap();
        let a = FqScalar::from_index(&f, idx);
        let inv = a.inv().unwrap();
        prop_assert_eq!(a.mul(&inv), FqScalar::one(&f));
    }

    #[test]
    fn solutions_satisfy_the_system(p in prop::sample::select(&PRIMES[..]), rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(0u32..13, 36 + 6)) {
        let a = matrix(p, cols, &seed[..rows * cols]);
        let x: Vec<u32> = seed[36..36 + cols].iter().map(|v| v % p).collect();
        let b = a.mul_vec(&x);
        let sol = a.solve(&b).unwrap();
        let y = sol.solution.expect("consistent system");
        prop_assert_eq!(a.mul_vec(&y), b);
        for k in &sol.kernel {
            prop_assert!(a.mul_vec(k).iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn alternating_part_has_zero_diagonal(p in prop::sample::select(&PRIMES[..4]), dim in 1usize..=8, e in prop::collection::vec(0u32..7, 64)) {
        let b = BilinearForm::new(matrix(p, dim, &e[..dim * dim])).unwrap();
        let w = b.associated_alternating();
        prop_assert!((0..dim).all(|i| w.gram.get(i, i) == 0));
        prop_assert!(w.is_alternating());
    }

    #[test]
    fn classification_is_basis_free((p, m) in (0usize..3).prop_flat_map(|i| (Just(PRIMES[i]), invertible(PRIMES[i], 4))), upper in prop::collection::vec(0u32..5, 6), diag in prop::collection::vec(0u32..5, 4)) {
        let q = quadratic(p, 4, &upper, &diag);
        let pulled = q.pullback(&m);
        prop_assert_eq!(q.classify().unwrap(), pulled.classify().unwrap());
        prop_assert_eq!(q.count_zeros().unwrap(), pulled.count_zeros().unwrap());
    }

    #[test]
    fn polarization_has_witt_index_dims(p in prop::sample::select(&PRIMES[..3]), dim in 1usize..=6, upper in prop::collection::vec(0u32..5, 15), diag in prop::collection::vec(0u32..5, 6)) {
        let q = quadratic(p, dim, &upper, &diag[..dim]);
        prop_assume!(q.is_nondegenerate());
        let pol = find_polarization(&PolarizationInput::Quadratic(q.clone())).unwrap();
        let w = q.witt_index();
        prop_assert_eq!(pol.plus.len(), w);
        prop_assert_eq!(pol.minus.len(), w);
        prop_assert_eq!(pol.plus.len() + pol.zero.len() + pol.minus.len(), dim);
        for (u, v) in pol.plus.iter().zip(&pol.minus) {
            prop_assert_eq!(q.eval(u), 0);
            prop_assert_eq!(q.eval(v), 0);
            prop_assert_eq!(q.polar_form().eval(u, v), 1);
        }
    }

    #[test]
    fn coboundaries_are_solved_exactly(which in 0usize..4, modulus in 2u64..13, b in prop::collection::vec(0u64..1000, 24)) {
        let g = sample_group(which);
        let b: Vec<u64> = b[..g.order()].iter().map(|x| x % modulus).collect();
        let c = Cocycle2::coboundary_of(&g, modulus, &b);
        let CoboundaryResult::Solved { cochain } = coboundary_solve(&g, &c).unwrap() else {
            return Err(TestCaseError::fail("coboundary reported nontrivial"));
        };
        prop_assert_eq!(&Cocycle2::coboundary_of(&g, modulus, &cochain), &c);
        // Restrictions to subgroups stay solvable.
        for gen in 1..g.order() as u32 {
            let sub = g.generate(&[gen]);
            let (sg, embed) = g.subgroup_group(&sub);
            let solved = coboundary_solve(&sg, &c.restrict(&embed)).unwrap();
            let ok = matches!(solved, CoboundaryResult::Solved { .. });
            prop_assert!(ok, "restriction to <{}> unsolved", gen);
        }
    }
}

fn sample_group(which: usize) -> FinGroup {
    match which {
        0 => cyclic(12),
        1 => direct_product(&cyclic(2), &cyclic(4)),
        2 => symmetric(3).0,
        _ => symmetric(4).0,
    }
}

#[test]
fn trace_additive_norm_multiplicative() {
    for (p, m) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let f = GfExt::new(p, m).unwrap();
        let elems: Vec<FqScalar> = (0..f.order()).map(|i| FqScalar::from_index(&f, i)).collect();
        for a in &elems {
            let (na, ta) = a.norm_trace(1).unwrap();
            assert!(na.as_prime().is_some() && ta.as_prime().is_some());
            for b in &elems {
                let (nb, tb) = b.norm_trace(1).unwrap();
                let (nab, _) = a.mul(b).norm_trace(1).unwrap();
                let (_, tapb) = a.add(b).norm_trace(1).unwrap();
                assert_eq!(nab, na.mul(&nb));
                assert_eq!(tapb, ta.add(&tb));
            }
        }
    }
}

#[test]
fn alternating_part_exhaustive() {
    for p in [2, 3, 5] {
        for dim in 1..=3usize {
            let total = (p as u64).pow((dim * dim) as u32);
            for idx in 0..total {
                let e = heisweil::gf::index_to_vector(p, dim * dim, idx as usize);
                let w = BilinearForm::new(matrix(p, dim, &e)).unwrap().associated_alternating();
                assert!((0..dim).all(|i| w.gram.get(i, i) == 0));
            }
        }
    }
}

/// Over F_2 the zero count of a nondegenerate form in dimension 2n is
/// 2^{2n-1} + 2^{n-1} for the split type and 2^{2n-1} - 2^{n-1} otherwise.
#[test]
fn zero_counts_decide_the_type_over_f2() {
    for dim in [2usize, 4, 6, 8] {
        let n = dim / 2;
        let cross = dim * (dim - 1) / 2;
        let split = (1u64 << (dim - 1)) + (1 << (n - 1));
        let nonsplit = (1u64 << (dim - 1)) - (1 << (n - 1));
        // Dims 6 and 8 have 2^21 and 2^36 forms; walk a sparse odd-stride sample.
        let total = 1u64 << (cross + dim);
        let stride = match dim {
            8 => 200_000_033,
            6 => 1031,
            _ => 1,
        };
        let mut idx = 0;
        let mut seen = [0usize; 2];
        while idx < total {
            let bits: Vec<u32> = (0..cross + dim).map(|k| ((idx >> k) & 1) as u32).collect();
            let q = quadratic(2, dim, &bits[..cross], &bits[cross..]);
            if q.is_nondegenerate() {
                let zeros = q.count_zeros().unwrap();
                let kind = q.classify().unwrap().kind;
                assert_eq!(kind == FormKind::Split, zeros == split, "{q:?}");
                assert_eq!(kind == FormKind::Nonsplit, zeros == nonsplit, "{q:?}");
                seen[(kind == FormKind::Split) as usize] += 1;
            }
            idx += stride;
        }
        assert!(seen[0] > 0 && seen[1] > 0, "dim {dim}: {seen:?}");
    }
}

#[test]
fn complements_have_complementary_order() {
    let s4 = symmetric(4).0;
    let z2z4 = direct_product(&cyclic(2), &cyclic(4));
    let cases: Vec<(FinGroup, Vec<u32>)> = vec![
        (cyclic(4), cyclic(4).generate(&[2])),
        (cyclic(6), cyclic(6).generate(&[2])),
        (z2z4.clone(), z2z4.generate(&[(0..8).find(|&x| z2z4.element_order(x) == 4).unwrap() as u32])),
        (s4.clone(), s4.commutator_subgroup()),
        (s4.clone(), s4.commutator_subgroup().iter().copied().filter(|&x| s4.element_order(x as usize) <= 2).collect()),
    ];
    let mut found = 0;
    for (e, n) in cases {
        assert!(e.is_normal(&n));
        let res = complement_exists(&e, &n).unwrap();
        if let Some(h) = res.complement {
            found += 1;
            assert!(e.is_subgroup(&h));
            assert_eq!(h.len() * n.len(), e.order());
            assert_eq!(h.iter().filter(|x| n.contains(x)).count(), 1);
        }
    }
    // Z/4 over Z/2 does not split; the others do.
    assert_eq!(found, 4);
}

#[test]
fn trivial_actions_give_direct_products() {
    let factors = [vec![2usize, 2], vec![2, 4], vec![3, 3, 2], vec![4, 4, 4]];
    for orders in factors {
        let groups: Vec<FinGroup> = orders.iter().map(|&k| cyclic(k)).collect();
        let built = SemidirectData::direct(groups.clone()).build().unwrap().unwrap();
        let direct = groups[1..].iter().fold(groups[0].clone(), |acc, g| direct_product(&acc, g));
        assert_eq!(built.group.order(), direct.order());
        assert_eq!(built.group.exponent(), direct.exponent());
        assert!(find_isomorphism(&built.group, &direct).is_some(), "{orders:?}");
    }
}

#[test]
fn split_and_nonsplit_models_count_correctly() {
    for n in 1..=3 {
        let split = QuadraticForm::split_model(2, n);
        let nonsplit = QuadraticForm::nonsplit_model(2, n).unwrap();
        let dim = 2 * n as u32;
        assert_eq!(split.count_zeros().unwrap(), (1 << (dim - 1)) + (1 << (n - 1)));
        assert_eq!(nonsplit.count_zeros().unwrap(), (1 << (dim - 1)) - (1 << (n - 1)));
        assert_eq!(all_vectors(2, 2 * n).count(), 1 << dim);
    }
}
