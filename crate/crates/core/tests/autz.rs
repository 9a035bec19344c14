use heisweil::autz::{autz_group, exact_sequence_report, isometry_group, polarization_stabilizer, PartialPolarization};
use heisweil::forms::find_polarization;
use heisweil::heis::{HeisType, HeisenbergGroup};

#[test]
fn exact_sequences() {
    for (n, kind, image, splits) in [
        (1, HeisType::Positive, 2, Some(true)),
        (1, HeisType::Negative, 6, Some(true)),
        (2, HeisType::Positive, 72, Some(true)),
        (2, HeisType::Negative, 120, Some(true)),
    ] {
        let h = HeisenbergGroup::standard_model(2, n, kind).unwrap();
        let r = exact_sequence_report(&h).unwrap();
        assert_eq!(r.image_order, image);
        assert_eq!(r.autz_order, image * (1 << (2 * n)));
        assert_eq!(r.kernel_is_inner, Some(true));
        assert_eq!(r.image_is_full, Some(true));
        assert_eq!(r.splits, splits);
    }
}

#[test]
fn stabilizer_of_lagrangian_lift() {
    let h = HeisenbergGroup::standard_model(2, 2, HeisType::Positive).unwrap();
    let iso = isometry_group(&h).unwrap();
    let aut = autz_group(&h, &iso).unwrap();
    let pol = find_polarization(&h.polarization_input()).unwrap();
    let pp = PartialPolarization::from_polarization(&h, &pol).unwrap();
    let stab = polarization_stabilizer(&h, &aut, &pp).unwrap();
    assert_eq!(stab.len(), 48);
    assert!(aut.group.is_subgroup(&stab));
}

#[test]
fn dimension_four_complements_are_genuine() {
    for kind in [HeisType::Positive, HeisType::Negative] {
        let h = HeisenbergGroup::standard_model(2, 2, kind).unwrap();
        let iso = isometry_group(&h).unwrap();
        let aut = autz_group(&h, &iso).unwrap();
        let kernel: Vec<u32> = (0..aut.order() as u32).filter(|&i| aut.elements[i as usize].is_inner()).collect();
        let c = heisweil::grp::complement_exists(&aut.group, &kernel).unwrap().complement.unwrap();
        assert!(aut.group.is_subgroup(&c));
        assert_eq!(c.len(), iso.matrices.len());
        assert_eq!(c.iter().filter(|x| kernel.contains(x)).count(), 1);
    }
}
