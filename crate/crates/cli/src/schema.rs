use serde_json::{json, Map, Value};

const INT: &str = "integer";
const BOOL: &str = "boolean";
const STR: &str = "string";
const OBJ: &str = "object";
const ARR: &str = "array";
const ANY: &str = "any";

fn fields(path: &str) -> Option<&'static [(&'static str, &'static str)]> {
    Some(match path {
        "heis build" | "heis central-product" => &[("p", INT), ("n", INT), ("type", STR), ("order", INT), ("group", OBJ)],
        "heis classify" => &[("p", INT), ("n", INT), ("type", STR), ("order", INT), ("squaring_form", ANY)],
        "rep heisenberg" => &[
            ("p", INT),
            ("n", INT),
            ("type", STR),
            ("psi", INT),
            ("dim", INT),
            ("conductor", INT),
            ("irreducible", BOOL),
            ("homomorphism", BOOL),
            ("central_character_ok", BOOL),
            ("rep", ANY),
        ],
        "rep fs" => &[
            ("p", INT),
            ("n", INT),
            ("type", STR),
            ("psi", INT),
            ("indicator", INT),
            ("flavor", STR),
            ("j_sign", ANY),
            ("j", ANY),
        ],
        "rep svn" => &[
            ("p", INT),
            ("n", INT),
            ("order", INT),
            ("conjugacy_classes", INT),
            ("linear_characters", INT),
            ("expected_dim", INT),
            ("entries", ARR),
            ("complete", BOOL),
        ],
        "autz report" => &[
            ("p", INT),
            ("n", INT),
            ("type", STR),
            ("kernel_order", INT),
            ("image_order", INT),
            ("autz_order", INT),
            ("materialized", BOOL),
            ("kernel_is_inner", ANY),
            ("image_is_full", ANY),
            ("splits", ANY),
            ("certificate", ANY),
            ("predicted_by_dimension", ANY),
            ("predicted_by_rank", ANY),
        ],
        "autz splits" => &[
            ("p", INT),
            ("n", INT),
            ("type", STR),
            ("splits", ANY),
            ("certificate", ANY),
            ("predicted_by_dimension", ANY),
            ("predicted_by_rank", ANY),
        ],
        "weil linearize" => &[
            ("p", INT),
            ("n", INT),
            ("type", STR),
            ("psi", INT),
            ("subgroup", STR),
            ("subgroup_order", INT),
            ("flavor", STR),
            ("status", STR),
            ("modulus", INT),
            ("obstruction", ANY),
            ("generators", ANY),
        ],
        "weil r-linearize" => &[
            ("p", INT),
            ("n", INT),
            ("type", STR),
            ("subgroup", STR),
            ("subgroup_order", INT),
            ("flavor", STR),
            ("sign", INT),
            ("count", INT),
            ("order_two_characters", INT),
            ("unique", BOOL),
        ],
        "weil gerardin" => &[
            ("p", INT),
            ("psi", INT),
            ("group_order", INT),
            ("modulus", INT),
            ("abelianization_order", INT),
            ("count", INT),
            ("linearizations", ARR),
        ],
        "weil count" => {
            &[("p", INT), ("n", INT), ("type", STR), ("psi", INT), ("subgroup", STR), ("subgroup_order", INT), ("count", INT)]
        }
        "forms classify" => &[
            ("model", STR),
            ("p", INT),
            ("q", ANY),
            ("dim", INT),
            ("kind", STR),
            ("witt_index", INT),
            ("zeros", INT),
            ("form", OBJ),
        ],
        "forms count-zeros" => &[("model", STR), ("p", INT), ("q", ANY), ("dim", INT), ("zeros", INT)],
        "rootdata torsion" => &[("types", ARR), ("pi1_torsion", INT), ("primes", ARR)],
        "rootdata centralizer" => {
            &[("type", STR), ("p", INT), ("weyl_order", INT), ("functional", OBJ), ("centralizer", OBJ), ("ge1", OBJ)]
        }
        "rootdata appendix-d" => &[
            ("weyl_order", INT),
            ("stabilizer_order", INT),
            ("stabilizer_nonabelian", BOOL),
            ("stabilizer_normal", BOOL),
            ("sign_change_order", INT),
            ("sign_change_elementary_abelian", BOOL),
            ("complement_order", ANY),
            ("complement_is_klein_four", BOOL),
            ("structure", STR),
            ("residue_centralizer_agrees", BOOL),
            ("ge1", OBJ),
            ("ge2", BOOL),
            ("w_prime_order", INT),
            ("quotient_is_2_group", BOOL),
        ],
        "rootdata commutator-check" => &[
            ("type", STR),
            ("q", INT),
            ("borel_order", INT),
            ("unipotent_order", INT),
            ("commutator_order", INT),
            ("holds", BOOL),
            ("abelianization", ANY),
        ],
        "verify all" => &[("seed", INT), ("passed", BOOL), ("criteria", ARR)],
        _ => return None,
    })
}

pub fn subcommands() -> Vec<&'static str> {
    vec![
        "heis build",
        "heis classify",
        "heis central-product",
        "rep heisenberg",
        "rep fs",
        "rep svn",
        "autz report",
        "autz splits",
        "weil linearize",
        "weil r-linearize",
        "weil gerardin",
        "weil count",
        "forms classify",
        "forms count-zeros",
        "rootdata torsion",
        "rootdata centralizer",
        "rootdata appendix-d",
        "rootdata commutator-check",
        "verify all",
    ]
}

/// JSON Schema (draft 2020-12) of a subcommand's output; every listed
/// property is required, `any` properties may be null.
pub fn schema(path: &str) -> Option<Value> {
    let fields = fields(path)?;
    let mut props = Map::new();
    for (name, ty) in fields {
        let spec = if *ty == ANY { json!({}) } else { json!({ "type": ty }) };
        props.insert(name.to_string(), spec);
    }
    Some(json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": format!("heisweil {path}"),
        "type": "object",
        "required": fields.iter().map(|(n, _)| n).collect::<Vec<_>>(),
        "properties": props,
    }))
}
