use std::collections::HashSet;

use heisweil::autz::{
    autz_group, inner, isometry_group, polarization_stabilizer, project, stabilizer_membership, CentralAutomorphism,
    PartialPolarization,
};
use heisweil::cyclotomic::{CycField, CycMatrix};
use heisweil::forms::{find_polarization, BilinearForm};
use heisweil::gf::{all_vectors, index_to_vector, FpMatrix};
use heisweil::grp::{find_isomorphism, linear_characters};
use heisweil::heis::{HeisType, HeisenbergGroup};
use heisweil::reps::{
    clifford_decompose, frobenius_schur, heisenberg_rep, intertwiner, psi_value, r_structure, CycRep,
};
use heisweil::weil::{
    gerardin_weil, linearize, linearize_via_polarization, projective_weil, r_linearize, scalar_ratio, semidirect_product,
    symplectic_section, WeilLinearization,
};
use heisweil::Cyc;
use proptest::prelude::*;

fn model(p: u32, n: usize, kind: HeisType) -> HeisenbergGroup {
    HeisenbergGroup::standard_model(p, n, kind).unwrap()
}

/// Every standard model of order at most 2^9, 3^5 or 5^3.
fn small_models() -> Vec<HeisenbergGroup> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(model(2, n, HeisType::Positive));
        out.push(model(2, n, HeisType::Negative));
    }
    out.push(model(3, 1, HeisType::Odd));
    out.push(model(3, 2, HeisType::Odd));
    out.push(model(5, 1, HeisType::Odd));
    out
}

/// A random form on F_p^dim whose alternating part is nondegenerate.
fn heis_strategy(p: u32, dim: usize) -> impl Strategy<Value = HeisenbergGroup> {
    prop::collection::vec(0..p, dim * dim).prop_filter_map("degenerate alternating part", move |e| {
        let rows: Vec<Vec<u32>> = e.chunks(dim).map(<[u32]>::to_vec).collect();
        HeisenbergGroup::build(p, BilinearForm::from_rows(p, &rows).ok()?).ok()
    })
}

fn any_small_heis() -> impl Strategy<Value = HeisenbergGroup> {
    prop_oneof![heis_strategy(2, 2), heis_strategy(2, 4), heis_strategy(3, 2)]
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

fn check_extraspecial(h: &HeisenbergGroup) -> Result<(), TestCaseError> {
    let g = h.group().unwrap();
    let centre: Vec<u32> = (0..h.p()).map(|a| h.central(a) as u32).collect();
    prop_assert_eq!(sorted(g.commutator_subgroup()), sorted(centre.clone()));
    prop_assert_eq!(sorted(g.center()), sorted(centre.clone()));
    for x in 0..g.order() {
        prop_assert!(centre.contains(&(g.pow(x, h.p() as u64) as u32)));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn built_groups_are_extraspecial(h in any_small_heis()) {
        check_extraspecial(&h)?;
    }

    #[test]
    fn isomorphism_test_agrees_with_search(a in any_small_heis(), b in any_small_heis()) {
        prop_assume!(a.order() == b.order());
        let found = find_isomorphism(&a.group().unwrap(), &b.group().unwrap()).is_some();
        prop_assert_eq!(a.is_isomorphic(&b), found);
    }

    #[test]
    fn splittings_are_closed_and_bijective(h in any_small_heis(), mask in 1u32..4) {
        let pol = find_polarization(&h.polarization_input()).unwrap();
        let basis: Vec<Vec<u32>> = pol.plus.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, v)| v.clone()).collect();
        prop_assume!(!basis.is_empty());
        let lift = h.splitting(&basis).unwrap();
        let set: HashSet<u32> = lift.iter().copied().collect();
        for &x in &lift {
            for &y in &lift {
                let xy = h.mul(&h.element(x as usize), &h.element(y as usize));
                prop_assert!(set.contains(&(h.index_of(&xy) as u32)));
            }
        }
        let images: HashSet<Vec<u32>> = lift.iter().map(|&x| h.element(x as usize).v).collect();
        prop_assert_eq!(images.len(), lift.len());
        prop_assert_eq!(lift.len(), (h.p() as usize).pow(basis.len() as u32));
    }

    #[test]
    fn central_character_is_psi(h in any_small_heis(), k in 1u32..3) {
        prop_assume!(k < h.p());
        let rep = heisenberg_rep(&h, k).unwrap().rep;
        for a in 0..h.p() {
            let expected = CycMatrix::scalar(rep.field(), rep.dim(), &psi_value(rep.field(), h.p(), k, a));
            prop_assert_eq!(rep.matrix(h.central(a)), &expected);
        }
    }
}

#[test]
fn standard_models_are_extraspecial() {
    for h in small_models() {
        check_extraspecial(&h).unwrap();
    }
}

#[test]
fn classify_recovers_the_requested_type() {
    for p in [2, 3, 5] {
        for n in 1..=3 {
            let kinds: &[HeisType] = if p == 2 { &[HeisType::Positive, HeisType::Negative] } else { &[HeisType::Odd] };
            for &kind in kinds {
                assert_eq!(model(p, n, kind).classify(), kind);
            }
        }
    }
}

#[test]
fn indicator_table_and_structure_sign() {
    for h in small_models() {
        let g = h.group().unwrap();
        let rep = heisenberg_rep(&h, 1).unwrap().rep;
        let expected = match h.kind() {
            HeisType::Positive => 1,
            HeisType::Negative => -1,
            HeisType::Odd => 0,
        };
        assert_eq!(frobenius_schur(&g, &rep).unwrap(), expected, "{:?} n={}", h.kind(), h.n());
        if h.n() > 2 {
            continue;
        }
        match r_structure(&g, &rep).unwrap() {
            Some(rs) => {
                let field = rs.j.field().clone();
                let sign = CycMatrix::scalar(&field, rep.dim(), &Cyc::from_int(&field, rs.sign as i64));
                assert_eq!(rs.j.mul(&rs.j.conj()), sign);
                assert_eq!(rs.sign, expected);
            }
            None => assert_eq!(expected, 0),
        }
    }
}

/// A one-dimensional representation of the centre given by `ψ_k`, `k = 0`
/// being the trivial character.
fn central_rep(h: &HeisenbergGroup, k: u32) -> (Vec<u32>, CycRep) {
    let field = CycField::new(heisweil::reps::heisenberg_conductor(h.p())).unwrap();
    let centre: Vec<u32> = (0..h.p()).map(|a| h.central(a) as u32).collect();
    let mats = (0..h.p()).map(|a| CycMatrix::scalar(&field, 1, &psi_value(&field, h.p(), k, a))).collect();
    (centre, CycRep::new(&field, 1, mats).unwrap())
}

#[test]
fn clifford_dimensions_add_up() {
    for h in [model(2, 1, HeisType::Positive), model(2, 1, HeisType::Negative), model(2, 2, HeisType::Negative), model(3, 1, HeisType::Odd)] {
        let g = h.group().unwrap();
        for k in 0..h.p().min(2) {
            let (centre, rho) = central_rep(&h, k);
            let dec = clifford_decompose(&g, &centre, &rho, 7).unwrap();
            assert_eq!(dec.induced_dim, h.vector_count());
            let total: usize = dec.components.iter().map(|c| c.multiplicity * c.sigma.dim()).sum();
            assert_eq!(total, dec.induced_dim);
            if k == 0 {
                // Trivial on the centre: the linear characters of V, once each.
                assert_eq!(dec.components.len(), h.vector_count());
            } else {
                assert_eq!(dec.components.len(), 1);
                assert_eq!(dec.components[0].sigma.dim(), (h.p() as usize).pow(h.n() as u32));
            }
        }
    }
}

/// Brute-force count of the matrices preserving `Q_P` (p = 2) or `ω_P`.
fn count_isometries(h: &HeisenbergGroup) -> usize {
    let p = h.p();
    let d = h.dim();
    let vecs: Vec<Vec<u32>> = all_vectors(p, d).collect();
    let total = (p as usize).pow((d * d) as u32);
    (0..total)
        .filter(|&idx| {
            let e = index_to_vector(p, d * d, idx);
            let rows: Vec<Vec<u32>> = e.chunks(d).map(<[u32]>::to_vec).collect();
            let m = FpMatrix::from_rows(p, &rows).unwrap();
            if m.inverse().is_none() {
                return false;
            }
            match h.quadratic() {
                Some(q) => vecs.iter().all(|v| q.eval(&m.mul_vec(v)) == q.eval(v)),
                None => vecs.iter().all(|v| vecs.iter().all(|w| h.omega().eval(&m.mul_vec(v), &m.mul_vec(w)) == h.omega().eval(v, w))),
            }
        })
        .count()
}

#[test]
fn central_automorphism_group_structure() {
    for h in [
        model(2, 1, HeisType::Positive),
        model(2, 1, HeisType::Negative),
        model(2, 2, HeisType::Positive),
        model(2, 2, HeisType::Negative),
        model(3, 1, HeisType::Odd),
        model(5, 1, HeisType::Odd),
    ] {
        let iso = isometry_group(&h).unwrap();
        let aut = autz_group(&h, &iso).unwrap();
        assert_eq!(iso.matrices.len(), count_isometries(&h));
        assert_eq!(aut.order(), h.vector_count() * iso.matrices.len());
        let z = h.element(h.central(1));
        let identity = FpMatrix::identity(h.p(), h.dim());
        let inner_set: HashSet<CentralAutomorphism> = all_vectors(h.p(), h.dim()).map(|u| inner(&h, &u)).collect();
        let mut kernel = HashSet::new();
        for f in &aut.elements {
            assert_eq!(f.apply(&z), z);
            if project(f) == identity {
                kernel.insert(f.clone());
            }
        }
        assert_eq!(kernel, inner_set);
        // Homomorphism on all pairs for the small groups, sampled otherwise.
        let step = if aut.order() > 200 { 7 } else { 1 };
        for f in aut.elements.iter().step_by(step) {
            for g in aut.elements.iter().step_by(step) {
                assert_eq!(project(&f.compose(g)), project(f).mul(&project(g)));
            }
        }
    }
}

#[test]
fn lagrangian_stabilizers_are_subgroups() {
    for kind in [HeisType::Positive, HeisType::Negative] {
        let h = model(2, 2, kind);
        let iso = isometry_group(&h).unwrap();
        let aut = autz_group(&h, &iso).unwrap();
        let pol = find_polarization(&h.polarization_input()).unwrap();
        let pp = PartialPolarization::from_polarization(&h, &pol).unwrap();
        let stab: HashSet<u32> = polarization_stabilizer(&h, &aut, &pp).unwrap().into_iter().collect();
        let members: HashSet<u32> =
            (0..aut.order() as u32).filter(|&i| stabilizer_membership(&h, &aut.elements[i as usize], &pp).unwrap()).collect();
        assert_eq!(stab, members);
        for &a in &stab {
            let f = &aut.elements[a as usize];
            assert!(stab.contains(&(aut.index_of(&f.invert()).unwrap() as u32)));
            for &b in &stab {
                let fg = f.compose(&aut.elements[b as usize]);
                assert!(stab.contains(&(aut.index_of(&fg).unwrap() as u32)));
            }
        }
    }
}

fn assert_exact(h: &HeisenbergGroup, lin: &WeilLinearization, aut: &heisweil::autz::AutGroup) {
    let sd = semidirect_product(h, aut).unwrap();
    let full = lin.assemble(&sd);
    assert!(full.is_homomorphism(&sd.group));
    for x in 0..h.order() {
        assert_eq!(full.matrix(sd.index(0, x)), lin.omega.matrix(x));
    }
    assert!(lin.rep.is_homomorphism(&aut.group));
}

fn assert_multiplicative(chi: &[u64], m: u64, aut: &heisweil::grp::FinGroup) {
    for a in 0..aut.order() {
        for b in 0..aut.order() {
            assert_eq!((chi[a] + chi[b]) % m, chi[aut.mul(a, b)] % m);
        }
    }
}

#[test]
fn linearizations_restrict_and_differ_by_characters() {
    for p in [3, 5] {
        let h = model(p, 1, HeisType::Odd);
        let sp = symplectic_section(&h).unwrap();
        let pw = projective_weil(&h, 1, &sp).unwrap();
        let lin = linearize(&pw, &sp).unwrap().linearized().unwrap();
        if p == 3 {
            assert_exact(&h, &lin, &sp);
        }
        let all = gerardin_weil(&h, 1, &sp).unwrap();
        let omega = lin.omega.clone();
        for l in &all.linearizations {
            let rep = l.rep.embed(omega.field()).unwrap();
            for (a, f) in sp.elements.iter().enumerate() {
                for x in 0..h.order() {
                    let fx = h.index_of(&f.apply(&h.element(x)));
                    assert_eq!(rep.matrix(a).mul(omega.matrix(x)), omega.matrix(fx).mul(rep.matrix(a)));
                }
            }
            let chi = scalar_ratio(&all.linearizations[0].rep, &l.rep).unwrap();
            assert_multiplicative(&chi, l.rep.field().conductor(), &sp.group);
        }
    }
}

#[test]
fn real_forms_are_an_orbit_of_sign_characters() {
    for kind in [HeisType::Positive, HeisType::Negative] {
        let h = model(2, 2, kind);
        let iso = isometry_group(&h).unwrap();
        let aut = autz_group(&h, &iso).unwrap();
        let pol = find_polarization(&h.polarization_input()).unwrap();
        let pp = PartialPolarization::from_polarization(&h, &pol).unwrap();
        let stab = aut.subgroup(&polarization_stabilizer(&h, &aut, &pp).unwrap());
        let a = stab.subgroup(&stab.group.sylow(2));
        let pw = projective_weil(&h, 1, &a).unwrap();
        let lin = linearize(&pw, &a).unwrap().linearized().unwrap();
        assert_exact(&h, &lin, &a);
        let r = r_linearize(&h, &lin, &a).unwrap();
        let signs = linear_characters(&a.group, 2);
        assert_eq!(r.reps.len(), signs.len());
        for rep in &r.reps {
            assert!(rep.matrices().iter().all(|m| r.j.mul(&m.conj()) == m.mul(&r.j)));
            for s in &signs {
                let flipped = rep.twist(s, 2).unwrap();
                assert!(r.reps.contains(&flipped));
            }
            let chi = scalar_ratio(&r.reps[0], rep).unwrap();
            assert_multiplicative(&chi, rep.field().conductor(), &a.group);
        }
        // The induced construction gives an equivalent representation of A ⋉ P.
        let pl = linearize_via_polarization(&h, 1, &a).unwrap().unwrap();
        let assembled = lin.assemble(&pl.semidirect);
        let induced = pl.rep.embed(assembled.field()).unwrap();
        let t = intertwiner(&pl.semidirect.group, &assembled, &induced).expect("equivalent representations");
        assert!(!t.is_zero());
    }
}
