use heisweil::autz::{autz_group, isometry_group, polarization_stabilizer, PartialPolarization};
use heisweil::forms::find_polarization;
use heisweil::heis::{HeisType, HeisenbergGroup};
use heisweil::weil::*;

#[test]
fn inner_subgroup_is_obstructed() {
    for (n, kind) in [(1, HeisType::Positive), (1, HeisType::Negative), (2, HeisType::Positive), (2, HeisType::Negative)] {
        let h = HeisenbergGroup::standard_model(2, n, kind).unwrap();
        let a = inner_subgroup(&h).unwrap();
        let pw = projective_weil(&h, 1, &a).unwrap();
        assert!(matches!(linearize(&pw, &a).unwrap(), Linearization::Obstructed(_)));
        let ex = exhaustive_obstruction(&pw, &a, 1 << 20).unwrap();
        assert!(ex.nontrivial);
    }
    let h = HeisenbergGroup::standard_model(3, 1, HeisType::Odd).unwrap();
    let a = inner_subgroup(&h).unwrap();
    let pw = projective_weil(&h, 1, &a).unwrap();
    assert!(matches!(linearize(&pw, &a).unwrap(), Linearization::Obstructed(_)));
}

#[test]
fn gerardin_counts() {
    for (p, expected) in [(3, 3), (5, 1)] {
        let h = HeisenbergGroup::standard_model(p, 1, HeisType::Odd).unwrap();
        let sp = symplectic_section(&h).unwrap();
        let g = gerardin_weil(&h, 1, &sp).unwrap();
        assert_eq!(g.count, expected);
    }
}

#[test]
fn polarization_path_agrees() {
    let h = HeisenbergGroup::standard_model(2, 2, HeisType::Positive).unwrap();
    let iso = isometry_group(&h).unwrap();
    let aut = autz_group(&h, &iso).unwrap();
    let pol = find_polarization(&h.polarization_input()).unwrap();
    let pp = PartialPolarization::from_polarization(&h, &pol).unwrap();
    let stab = polarization_stabilizer(&h, &aut, &pp).unwrap();
    let stab_group = aut.subgroup(&stab);
    let syl = stab_group.group.sylow(2);
    let a = stab_group.subgroup(&syl);
    assert_eq!(a.order(), 16);
    let pl = linearize_via_polarization(&h, 1, &a).unwrap().unwrap();
    assert!(pl.restricts_to_heisenberg);
    assert!(pl.rep.is_homomorphism(&pl.semidirect.group));
    let pw = projective_weil(&h, 1, &a).unwrap();
    let lin = linearize(&pw, &a).unwrap().linearized().unwrap();
    let assembled = lin.assemble(&pl.semidirect);
    assert!(assembled.is_homomorphism(&pl.semidirect.group));
    let cmp = compare_paths(&pl, &lin, &a.group).unwrap().unwrap();
    assert!(cmp.character_is_multiplicative && cmp.twisted_equal);
    let r = r_linearize(&h, &lin, &a).unwrap();
    assert_eq!(r.reps.len(), r.order_two_characters);
}

#[test]
fn special_iso() {
    let h = HeisenbergGroup::standard_model(3, 1, HeisType::Odd).unwrap();
    let demo = special_iso_demo(&h, &[1, 0]).unwrap();
    assert_eq!(demo.stabilizer_order, 3);
    assert!(demo.conjugator_projects_to_w);
}
