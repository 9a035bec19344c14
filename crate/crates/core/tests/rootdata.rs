use std::collections::BTreeSet;

use heisweil::rootdata::finite::{abelianization_order_check, unipotent_triviality_suite, unipotent_commutator_check, MatrixGroupType};
use heisweil::rootdata::{
    appendix_d_report, ge1_check, levi_torsion, torsion_primes, weyl_centralizer, CartanType, ResidueFunctional, RootSystem,
    WeylGroup,
};
use heisweil::Error;

fn set(xs: &[u64]) -> BTreeSet<u64> {
    xs.iter().copied().collect()
}

#[test]
fn torsion_table() {
    let t = |s: &str, pi1: u64| torsion_primes(&[s.parse::<CartanType>().unwrap()], pi1).unwrap();
    for n in 1..=8 {
        assert!(t(&format!("A{n}"), 1).is_empty());
    }
    for n in 2..=6 {
        assert!(t(&format!("C{n}"), 1).is_empty());
    }
    assert!(t("B2", 1).is_empty());
    assert!(t("D3", 1).is_empty());
    for s in ["B3", "B5", "D4", "D7", "G2"] {
        assert_eq!(t(s, 1), set(&[2]), "{s}");
    }
    for s in ["F4", "E6", "E7"] {
        assert_eq!(t(s, 1), set(&[2, 3]), "{s}");
    }
    assert_eq!(t("E8", 1), set(&[2, 3, 5]));
    // PGL_4: A_3 with fundamental group of order 4
    assert_eq!(t("A3", 4), set(&[2]));
    assert_eq!(torsion_primes(&["A2".parse().unwrap(), "G2".parse().unwrap()], 3).unwrap(), set(&[2, 3]));
    assert!(matches!("H3".parse::<CartanType>(), Err(Error::Domain(_))));
}

#[test]
fn levi_torsion_is_monotone() {
    for s in ["A4", "B3", "B4", "C3", "C4", "D4", "F4", "G2"] {
        let rs = RootSystem::new(s.parse().unwrap()).unwrap();
        let ambient = torsion_primes(&[rs.cartan_type], 1).unwrap();
        for (subset, types, primes) in levi_torsion(&rs) {
            assert!(primes.is_subset(&ambient), "{s} {subset:?} {types:?}");
            let rank: usize = types.iter().map(|t| t.rank()).sum();
            assert_eq!(rank, subset.len());
        }
    }
    // spot checks of the Levi classification
    let f4 = RootSystem::new(CartanType::F4).unwrap();
    assert_eq!(f4.levi_types(&[0, 1, 2]), vec![CartanType::B(3)]);
    assert_eq!(f4.levi_types(&[1, 2, 3]), vec![CartanType::C(3)]);
    let b4 = RootSystem::new(CartanType::B(4)).unwrap();
    assert_eq!(b4.levi_types(&[1, 2, 3]), vec![CartanType::B(3)]);
    let d4 = RootSystem::new(CartanType::D(4)).unwrap();
    assert_eq!(d4.levi_types(&[0, 1, 2, 3]), vec![CartanType::D(4)]);
    assert_eq!(d4.levi_types(&[0, 2, 3]), vec![CartanType::A(1), CartanType::A(1), CartanType::A(1)]);
}

/// Independent model of `W(D_4)`: signed permutations with an even number
/// of sign changes acting on `Z⁴`.
fn d4_signed_permutations() -> Vec<([usize; 4], [i64; 4])> {
    let mut out = Vec::new();
    let perms = permutations(4);
    for p in &perms {
        for mask in 0..16u32 {
            if mask.count_ones() % 2 == 0 {
                let signs = std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
                out.push(([p[0], p[1], p[2], p[3]], signs));
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn spin8_stabilizer_against_signed_permutations() {
    let group = d4_signed_permutations();
    assert_eq!(group.len(), 192);
    let act = |(p, s): &([usize; 4], [i64; 4]), v: [i64; 4]| -> [i64; 4] {
        let mut out = [0; 4];
        for i in 0..4 {
            out[p[i]] = s[i] * v[i];
        }
        out
    };
    // 2(Z⁴ + Zϖ₄) = 2Z⁴ ∪ (2Z⁴ + (1,1,1,1))
    let in_2x = |d: [i64; 4]| d.iter().all(|x| x % 2 == 0) || d.iter().all(|x| x % 2 != 0);
    let lambdas = [[1, 1, 0, 0], [0, 1, 1, 0]];
    let stab: Vec<_> = group
        .iter()
        .filter(|w| lambdas.iter().all(|&l| {
            let wl = act(w, l);
            in_2x(std::array::from_fn(|i| l[i] - wl[i]))
        }))
        .collect();
    let report = appendix_d_report().unwrap();
    assert_eq!(report.weyl_order, 192);
    assert_eq!(stab.len(), 32);
    assert_eq!(report.stabilizer_order, stab.len());
    assert!(report.stabilizer_nonabelian);
    assert!(report.stabilizer_normal);
    assert_eq!(report.sign_change_order, 8);
    assert!(report.sign_change_elementary_abelian);
    assert!(report.complement_is_klein_four);
    assert_eq!(report.structure, "(Z/2)^3 ⋊ (Z/2)^2");
    assert!(report.residue_centralizer_agrees);
    assert!(report.ge1.holds);
    assert!(!report.ge2);
    assert_eq!(report.w_prime_order, 1);
    assert!(report.quotient_is_2_group);
}

#[test]
fn centralizer_examples() {
    let a2 = RootSystem::new(CartanType::A(2)).unwrap();
    let w = WeylGroup::new(&a2).unwrap();
    let generic = ResidueFunctional::new(3, 2, vec![vec![1, 0], vec![0, 1]]).unwrap();
    let r = weyl_centralizer(&a2, &w, &generic, &[]);
    assert_eq!((r.centralizer_order, r.w_prime_order, r.is_p_group, r.ge2), (1, 1, true, true));

    let one_zero = ResidueFunctional::new(3, 1, vec![vec![0], vec![1]]).unwrap();
    let r = weyl_centralizer(&a2, &w, &one_zero, &[]);
    assert_eq!(r.w_prime_order, 2);
    // direct stabilizer computation: the reflection in α₁ fixes the functional
    let s1 = w.index_of(&a2.reflection(0)).unwrap() as u32;
    assert!(r.centralizer.contains(&s1));
    assert!(r.centralizer_order >= r.w_prime_order);
    assert!(r.is_p_group);
    assert!(!r.ge2);
    let phi_h = [0, a2.root_index(&a2.roots[0].iter().map(|x| -x).collect::<Vec<_>>()).unwrap()];
    let r = weyl_centralizer(&a2, &w, &one_zero, &phi_h);
    assert_eq!(r.ge2, r.centralizer_order == 2);
}

#[test]
fn ge1_examples() {
    let d4 = RootSystem::new(CartanType::D(4)).unwrap();
    let both = ResidueFunctional::from_weights(&d4, 2, &[vec![2, 2, 0, 0], vec![0, 2, 2, 0]]).unwrap();
    assert!(ge1_check(&d4, &both, &[]).holds);

    let zero = ResidueFunctional::new(2, 1, vec![vec![0]; 4]).unwrap();
    let r = ge1_check(&d4, &zero, &[]);
    assert!(!r.holds && r.witness.is_some());

    let one = ResidueFunctional::from_weights(&d4, 2, &[vec![2, 2, 0, 0]]).unwrap();
    let r = ge1_check(&d4, &one, &[]);
    assert!(!r.holds);
    let witness = r.witness.unwrap();
    // ⟨e₁+e₂, α⟩ must be even for the witness
    assert_eq!((witness[0] + witness[1]).rem_euclid(2), 0);
    assert_eq!(witness.iter().map(|x| x.abs()).sum::<i64>(), 2);
}

#[test]
fn unipotent_commutators() {
    for t in [MatrixGroupType::Sl2, MatrixGroupType::Sl3, MatrixGroupType::Sp4] {
        for q in [4, 5, 7, 8] {
            let r = unipotent_commutator_check(t, q).unwrap();
            assert!(r.holds, "{t} over F_{q}: {r:?}");
        }
    }
    for q in [2, 3] {
        assert!(!unipotent_commutator_check(MatrixGroupType::Sl2, q).unwrap().holds);
    }
    let sp4 = unipotent_commutator_check(MatrixGroupType::Sp4, 4).unwrap();
    assert_eq!(sp4.unipotent_order, 256);
    assert!(matches!(unipotent_commutator_check(MatrixGroupType::Sl2, 9), Err(Error::Unsupported(_))));
    assert!(unipotent_commutator_check(MatrixGroupType::Sl2, 6).is_err());
}

#[test]
fn abelianizations() {
    let ab = |t, q| abelianization_order_check(t, q).unwrap().abelianization_order;
    assert_eq!(ab(MatrixGroupType::Sl2, 4), 1);
    assert_eq!(ab(MatrixGroupType::Sl2, 2), 2);
    assert_eq!(ab(MatrixGroupType::Sl2, 3), 3);
    assert_eq!(ab(MatrixGroupType::Sl2, 5), 1);
    assert_eq!(ab(MatrixGroupType::Gl2, 5), 4);
    assert_eq!(ab(MatrixGroupType::Sl3, 4), 1);
    assert!(abelianization_order_check(MatrixGroupType::Gl2, 5).unwrap().prime_to_q);
    assert!(matches!(abelianization_order_check(MatrixGroupType::Sl3, 7), Err(Error::Resource(_))));
}

#[test]
fn unipotent_acts_trivially_on_random_instances() {
    let report = unipotent_triviality_suite(100, 0).unwrap();
    assert_eq!(report.instances.len(), 100);
    assert_eq!(report.hypotheses_met, 100);
    assert!(report.all_pass);
    assert!(report.instances.iter().any(|i| i.action_order > 1));
    assert!(report.instances.iter().any(|i| i.character.iter().any(|&c| c != 0)));
}
