use heisweil::autz::{autz_group, exact_sequence_report, isometry_group, polarization_stabilizer, AutGroup, PartialPolarization};
use heisweil::cyclotomic::CycMatrix;
use heisweil::forms::{find_polarization, BilinearForm, QuadraticForm};
use heisweil::heis::{HeisType, HeisenbergGroup};
use heisweil::reps::{frobenius_schur, heisenberg_rep, is_irreducible, psi_value, r_structure, verify_stone_von_neumann};
use heisweil::rootdata::finite::{abelianization_order_check, unipotent_commutator_check, MatrixGroupType};
use heisweil::rootdata::{appendix_d_report, ge1_check, torsion_primes, weyl_centralizer, CartanType, ResidueFunctional, RootSystem, WeylGroup};
use heisweil::verify::{run_all, run_criterion};
use heisweil::weil::{
    count_linearizations, gerardin_weil, inner_subgroup, linearize, projective_weil, r_linearize, symplectic_section, Linearization,
};
use heisweil::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;

/// A JSON document and whether the command's own checks succeeded.
pub struct Output {
    pub doc: Value,
    pub ok: bool,
}

impl From<Value> for Output {
    fn from(doc: Value) -> Self {
        Output { doc, ok: true }
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn kind_of(p: u32, kind: Option<&str>) -> Result<HeisType> {
    match kind {
        Some(s) => s.parse(),
        None if p == 2 => Ok(HeisType::Positive),
        None => Ok(HeisType::Odd),
    }
}

fn model(m: &Model) -> Result<HeisenbergGroup> {
    HeisenbergGroup::standard_model(m.p, m.n, kind_of(m.p, m.kind.as_deref())?)
}

fn parse_json<T: serde::de::DeserializeOwned>(flag: &str, s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::domain(format!("--{flag}: {e}")))
}

fn describe(h: &HeisenbergGroup) -> Value {
    json!({ "p": h.p(), "n": h.n(), "type": h.kind(), "order": h.order(), "group": to_json(h) })
}

pub fn run(cmd: &Command, seed: u64) -> Result<Output> {
    Ok(match cmd {
        Command::Heis(c) => heis(c)?.into(),
        Command::Rep(c) => rep(c)?.into(),
        Command::Autz(c) => autz(c)?.into(),
        Command::Weil(c) => weil(c)?.into(),
        Command::Forms(c) => forms(c)?.into(),
        Command::Rootdata(c) => rootdata(c)?.into(),
        Command::Verify(VerifyCmd::All { criterion }) => {
            let outcomes = match criterion {
                Some(id) => vec![run_criterion(*id, seed)?],
                None => run_all(seed),
            };
            let ok = outcomes.iter().all(|o| o.passed);
            for o in &outcomes {
                eprintln!("{}", o.line());
            }
            Output { doc: json!({ "seed": seed, "passed": ok, "criteria": to_json(&outcomes) }), ok }
        }
    })
}

fn heis(c: &HeisCmd) -> Result<Value> {
    match c {
        HeisCmd::Build(m) => Ok(describe(&model(m)?)),
        HeisCmd::Classify { model: input } => {
            let h = match &input.gram {
                Some(g) => HeisenbergGroup::build(input.p, BilinearForm::from_rows(input.p, &parse_json::<Vec<Vec<u32>>>("gram", g)?)?)?,
                None => model(&Model { p: input.p, n: input.n.unwrap_or(1), kind: input.kind.clone() })?,
            };
            let (_, squares) = h.induced_forms();
            let squaring = squares.map(|q| q.classify()).transpose()?;
            Ok(json!({
                "p": h.p(),
                "n": h.n(),
                "type": h.classify(),
                "order": h.order(),
                "squaring_form": to_json(&squaring),
            }))
        }
        HeisCmd::CentralProduct { p, n1, type1, n2, type2 } => {
            let a = HeisenbergGroup::standard_model(*p, *n1, kind_of(*p, type1.as_deref())?)?;
            let b = HeisenbergGroup::standard_model(*p, *n2, kind_of(*p, type2.as_deref())?)?;
            Ok(describe(&a.central_product(&b)?))
        }
    }
}

fn flavor_name(indicator: i8) -> &'static str {
    match indicator {
        1 => "real",
        -1 => "quaternionic",
        _ => "complex",
    }
}

fn rep(c: &RepCmd) -> Result<Value> {
    match c {
        RepCmd::Heisenberg { model: m, psi, matrices } => {
            let h = model(m)?;
            let hr = heisenberg_rep(&h, *psi)?;
            let g = h.group()?;
            let field = hr.rep.field().clone();
            let central_ok = (0..h.p()).all(|a| {
                let s = psi_value(&field, h.p(), *psi, a);
                *hr.rep.matrix(h.central(a)) == CycMatrix::scalar(&field, hr.rep.dim(), &s)
            });
            Ok(json!({
                "p": h.p(),
                "n": h.n(),
                "type": h.kind(),
                "psi": psi,
                "dim": hr.rep.dim(),
                "conductor": field.conductor(),
                "irreducible": is_irreducible(&hr.rep),
                "homomorphism": hr.rep.is_homomorphism(&g),
                "central_character_ok": central_ok,
                "rep": if *matrices { to_json(&hr.rep) } else { Value::Null },
            }))
        }
        RepCmd::Fs { model: m, psi } => {
            let h = model(m)?;
            let g = h.group()?;
            let rep = heisenberg_rep(&h, *psi)?.rep;
            let indicator = frobenius_schur(&g, &rep)?;
            let rs = r_structure(&g, &rep)?;
            Ok(json!({
                "p": h.p(),
                "n": h.n(),
                "type": h.kind(),
                "psi": psi,
                "indicator": indicator,
                "flavor": flavor_name(indicator),
                "j_sign": rs.as_ref().map(|r| r.sign),
                "j": rs.as_ref().map(|r| to_json(&r.j)),
            }))
        }
        RepCmd::Svn(m) => Ok(to_json(&verify_stone_von_neumann(&model(m)?)?)),
    }
}

fn autz(c: &AutzCmd) -> Result<Value> {
    match c {
        AutzCmd::Report(m) => Ok(to_json(&exact_sequence_report(&model(m)?)?)),
        AutzCmd::Splits(m) => {
            let r = exact_sequence_report(&model(m)?)?;
            Ok(json!({
                "p": r.p,
                "n": r.n,
                "type": r.kind,
                "splits": r.splits,
                "certificate": to_json(&r.certificate),
                "predicted_by_dimension": r.predicted_by_dimension,
                "predicted_by_rank": r.predicted_by_rank,
            }))
        }
    }
}

fn subgroup(h: &HeisenbergGroup, choice: SubgroupChoice) -> Result<AutGroup> {
    match choice {
        SubgroupChoice::Inner => inner_subgroup(h),
        SubgroupChoice::Section => symplectic_section(h),
        SubgroupChoice::Full => autz_group(h, &isometry_group(h)?),
        SubgroupChoice::Stabilizer | SubgroupChoice::StabilizerSylow2 => {
            let aut = autz_group(h, &isometry_group(h)?)?;
            let pol = find_polarization(&h.polarization_input())?;
            let pp = PartialPolarization::from_polarization(h, &pol)?;
            let stab = aut.subgroup(&polarization_stabilizer(h, &aut, &pp)?);
            Ok(if choice == SubgroupChoice::Stabilizer { stab } else { stab.subgroup(&stab.group.sylow(2)) })
        }
    }
}

fn subgroup_name(choice: SubgroupChoice) -> &'static str {
    match choice {
        SubgroupChoice::Inner => "inner",
        SubgroupChoice::Section => "section",
        SubgroupChoice::Full => "full",
        SubgroupChoice::Stabilizer => "stabilizer",
        SubgroupChoice::StabilizerSylow2 => "stabilizer-sylow2",
    }
}

fn weil(c: &WeilCmd) -> Result<Value> {
    match c {
        WeilCmd::Linearize { model: m, psi, subgroup: choice, matrices } => {
            let h = model(m)?;
            let aut = subgroup(&h, *choice)?;
            let pw = projective_weil(&h, *psi, &aut)?;
            let head = json!({
                "p": h.p(),
                "n": h.n(),
                "type": h.kind(),
                "psi": psi,
                "subgroup": subgroup_name(*choice),
                "subgroup_order": aut.order(),
                "flavor": pw.flavor,
            });
            let tail = match linearize(&pw, &aut)? {
                Linearization::Linearized(l) => {
                    let gens: Vec<Value> = l
                        .generator_matrices(&aut.group)
                        .into_iter()
                        .map(|(g, m)| json!({ "element": g, "matrix": to_json(&m) }))
                        .collect();
                    json!({ "status": "linearized", "modulus": l.modulus, "obstruction": null,
                            "generators": if *matrices { Value::Array(gens) } else { Value::Null } })
                }
                Linearization::Obstructed(o) => {
                    json!({ "status": "obstructed", "modulus": o.modulus, "obstruction": to_json(&o.class), "generators": null })
                }
            };
            Ok(merge(head, tail))
        }
        WeilCmd::RLinearize { model: m, subgroup: choice } => {
            let h = model(m)?;
            let aut = subgroup(&h, *choice)?;
            let pw = projective_weil(&h, 1, &aut)?;
            let lin = linearize(&pw, &aut)?
                .linearized()
                .ok_or_else(|| Error::domain("the projective Weil representation does not linearize on this subgroup"))?;
            let r = r_linearize(&h, &lin, &aut)?;
            Ok(json!({
                "p": h.p(),
                "n": h.n(),
                "type": h.kind(),
                "subgroup": subgroup_name(*choice),
                "subgroup_order": aut.order(),
                "flavor": r.flavor,
                "sign": r.sign,
                "count": r.reps.len(),
                "order_two_characters": r.order_two_characters,
                "unique": r.unique,
            }))
        }
        WeilCmd::Gerardin { p, psi } => {
            let h = HeisenbergGroup::standard_model(*p, 1, HeisType::Odd)?;
            let sp = symplectic_section(&h)?;
            let g = gerardin_weil(&h, *psi, &sp)?;
            let labels: Vec<Value> =
                g.linearizations.iter().map(|l| json!({ "label": l.label, "character": l.character })).collect();
            Ok(json!({
                "p": p,
                "psi": psi,
                "group_order": sp.order(),
                "modulus": g.modulus,
                "abelianization_order": g.abelianization_order,
                "count": g.count,
                "linearizations": labels,
            }))
        }
        WeilCmd::Count { model: m, psi, subgroup: choice } => {
            let h = model(m)?;
            let aut = subgroup(&h, *choice)?;
            Ok(json!({
                "p": h.p(),
                "n": h.n(),
                "type": h.kind(),
                "psi": psi,
                "subgroup": subgroup_name(*choice),
                "subgroup_order": aut.order(),
                "count": count_linearizations(&h, *psi, &aut)?,
            }))
        }
    }
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(x), Value::Object(y)) = (&mut a, b) {
        x.extend(y);
    }
    a
}

fn form(args: &FormArgs) -> Result<(&'static str, QuadraticForm)> {
    let need_p = || args.p.ok_or_else(|| Error::domain("--p is required for this model"));
    Ok(match args.model {
        FormModel::Split => ("split", QuadraticForm::split_model(need_p()?, args.n)),
        FormModel::Nonsplit => ("nonsplit", QuadraticForm::nonsplit_model(need_p()?, args.n)?),
        FormModel::Norm => ("norm", QuadraticForm::norm_form(need_p()?)?),
        FormModel::NormTrace => {
            let q = args.q.ok_or_else(|| Error::domain("--q is required for the norm-trace model"))?;
            ("norm-trace", QuadraticForm::trace_norm(q)?)
        }
    })
}

fn forms(c: &FormsCmd) -> Result<Value> {
    match c {
        FormsCmd::Classify(a) => {
            let (name, q) = form(a)?;
            let class = q.classify()?;
            Ok(json!({
                "model": name,
                "p": q.p,
                "q": a.q,
                "dim": q.dim,
                "kind": class.kind,
                "witt_index": class.witt_index,
                "zeros": q.count_zeros()?,
                "form": to_json(&q),
            }))
        }
        FormsCmd::CountZeros(a) => {
            let (name, q) = form(a)?;
            Ok(json!({ "model": name, "p": q.p, "q": a.q, "dim": q.dim, "zeros": q.count_zeros()? }))
        }
    }
}

/// Standard coordinates (possibly half-integral) to the doubled integral ones.
fn doubled(rows: &[Vec<f64>]) -> Result<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&x| {
                    let d = 2.0 * x;
                    if d.fract() != 0.0 || d.abs() > 1e9 {
                        Err(Error::domain(format!("coordinate {x} is not half-integral")))
                    } else {
                        Ok(d as i64)
                    }
                })
                .collect()
        })
        .collect()
}

fn rootdata(c: &RootdataCmd) -> Result<Value> {
    match c {
        RootdataCmd::Torsion { types, pi1 } => {
            let parsed = types.iter().map(|t| t.parse::<CartanType>()).collect::<Result<Vec<_>>>()?;
            let primes = torsion_primes(&parsed, *pi1)?;
            Ok(json!({ "types": to_json(&parsed), "pi1_torsion": pi1, "primes": primes }))
        }
        RootdataCmd::Centralizer { kind, p, weights, levi } => {
            let rs = RootSystem::new(kind.parse()?)?;
            let w = WeylGroup::new(&rs)?;
            let weights = doubled(&parse_json::<Vec<Vec<f64>>>("weights", weights)?)?;
            if weights.iter().any(|v| v.len() != rs.ambient_dim) {
                return Err(Error::domain(format!("weights need {} coordinates", rs.ambient_dim)));
            }
            let x = ResidueFunctional::from_weights(&rs, *p, &weights)?;
            let mut phi_h = Vec::new();
            for r in doubled(&parse_json::<Vec<Vec<f64>>>("levi", levi)?)? {
                let neg: Vec<i64> = r.iter().map(|c| -c).collect();
                for v in [r, neg] {
                    let i = rs.root_index(&v).ok_or_else(|| Error::domain(format!("{v:?} (doubled) is not a root")))?;
                    if !phi_h.contains(&i) {
                        phi_h.push(i);
                    }
                }
            }
            let report = weyl_centralizer(&rs, &w, &x, &phi_h);
            let ge1 = ge1_check(&rs, &x, &phi_h);
            Ok(json!({
                "type": rs.cartan_type,
                "p": p,
                "weyl_order": w.order(),
                "functional": to_json(&x),
                "centralizer": to_json(&report),
                "ge1": to_json(&ge1),
            }))
        }
        RootdataCmd::AppendixD => Ok(to_json(&appendix_d_report()?)),
        RootdataCmd::CommutatorCheck { group, q, abelianization } => {
            let t: MatrixGroupType = group.parse()?;
            let check = unipotent_commutator_check(t, *q)?;
            let ab = if *abelianization { Some(abelianization_order_check(t, *q)?) } else { None };
            Ok(merge(to_json(&check), json!({ "abelianization": to_json(&ab) })))
        }
    }
}
