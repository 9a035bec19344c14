use heisweil::rootdata::{weyl_centralizer, CartanType, ResidueFunctional, RootSystem, WeylGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SYSTEMS: [&str; 12] = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"];

#[test]
fn centralizer_quotients_are_p_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    for s in SYSTEMS {
        let rs = RootSystem::new(s.parse::<CartanType>().unwrap()).unwrap();
        let w = WeylGroup::new(&rs).unwrap();
        for trial in 0..1000 {
            let p = [2, 3, 5, 7][trial % 4];
            let symbols = rng.gen_range(1..=3);
            let values = (0..rs.rank()).map(|_| (0..symbols).map(|_| rng.gen_range(0..p)).collect()).collect();
            let x = ResidueFunctional::new(p, symbols, values).unwrap();
            let vals = x.evaluate(&rs);
            let zeros: Vec<usize> = (0..rs.roots.len()).filter(|&a| vals[a].iter().all(|&c| c == 0)).collect();
            let report = weyl_centralizer(&rs, &w, &x, &zeros);
            assert!(report.w_prime_normal, "{s} p={p} {x:?}");
            assert!(report.is_p_group, "{s} p={p} {x:?}: quotient {}", report.quotient_order);
            if report.ge2 {
                assert_eq!(report.quotient_order, 1);
            }
        }
    }
}

