use heisweil::heis::{HeisType, HeisenbergGroup};
use heisweil::reps::{frobenius_schur, heisenberg_rep, r_structure, verify_stone_von_neumann};

fn check(p: u32, n: usize, kind: HeisType, fs: i8) {
    let h = HeisenbergGroup::standard_model(p, n, kind).unwrap();
    let report = verify_stone_von_neumann(&h).unwrap();
    assert!(report.complete, "{report:?}");
    let g = h.group().unwrap();
    let hr = heisenberg_rep(&h, 1).unwrap();
    assert_eq!(hr.rep.dim(), (p as usize).pow(n as u32));
    assert_eq!(frobenius_schur(&g, &hr.rep).unwrap(), fs);
    let r = r_structure(&g, &hr.rep).unwrap();
    assert_eq!(r.map(|r| r.sign), if fs == 0 { None } else { Some(fs) });
}

#[test]
fn dihedral_eight() {
    check(2, 1, HeisType::Positive, 1);
}

#[test]
fn quaternion_eight() {
    check(2, 1, HeisType::Negative, -1);
}

#[test]
fn extraspecial_27() {
    check(3, 1, HeisType::Odd, 0);
}

#[test]
fn order_32_both_types() {
    check(2, 2, HeisType::Positive, 1);
    check(2, 2, HeisType::Negative, -1);
}

#[test]
fn order_125() {
    check(5, 1, HeisType::Odd, 0);
}
