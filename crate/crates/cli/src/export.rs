//! Canonical JSON documents: sorted keys (the default serde_json map),
//! rationals rendered as `p/q` strings, and a versioned schema field.
//! Identical invocations must produce byte-identical output, so nothing
//! time- or environment-dependent belongs here.

use serde_json::{json, Map, Value};
use torelli::obstruction::{H1Dim, NumericClass, SectionProfileRow, SectionSpaceKind};
use torelli::partition::Partition;
use torelli::scalar::{format_rat, Rat};

pub const SCHEMA: &str = "torelli/1";

pub fn rat_value(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn rats_value(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat_value).collect())
}

pub fn document(kind: &str, mut fields: Map<String, Value>) -> Value {
    fields.insert("schema".into(), json!(SCHEMA));
    fields.insert("kind".into(), json!(kind));
    Value::Object(fields)
}

pub fn decomposition_value(
    g: usize,
    input: &str,
    pieces: &[(Partition, i64)],
    motivic: i64,
) -> Value {
    let irreps: Vec<Value> = pieces
        .iter()
        .map(|(lambda, mult)| {
            let dim = torelli::character::irrep_dimension_i64(lambda, g).expect("dimension");
            let twist = {
                let s = motivic + lambda.size() as i64;
                if s % 2 == 0 {
                    Some(-s / 2)
                } else {
                    None
                }
            };
            let mut m = Map::new();
            m.insert("lambda".into(), json!(lambda.parts()));
            m.insert("mult".into(), json!(mult));
            m.insert("dim".into(), json!(dim));
            if let Some(t) = twist {
                m.insert("twist".into(), json!(t));
            }
            Value::Object(m)
        })
        .collect();
    let mut fields = Map::new();
    fields.insert("g".into(), json!(g));
    fields.insert("input".into(), json!(input));
    fields.insert("motivic_weight".into(), json!(motivic));
    fields.insert("irreps".into(), Value::Array(irreps));
    document("decomposition", fields)
}

pub fn numeric_class_value(c: &NumericClass) -> Value {
    let mut m = Map::new();
    m.insert("c".into(), rat_value(&c.c));
    m.insert("e".into(), rats_value(&c.e));
    let pairs: Map<String, Value> = c
        .e_pairs
        .iter()
        .map(|((i, j), v)| (format!("{i},{j}"), rat_value(v)))
        .collect();
    m.insert("e_ij".into(), Value::Object(pairs));
    m.insert("zero".into(), json!(c.is_zero()));
    Value::Object(m)
}

pub fn h1dim_value(d: &H1Dim) -> Value {
    match d {
        H1Dim::Exact(k) => json!(k),
        H1Dim::Finite => json!("finite"),
        H1Dim::Infinite => json!("infinite"),
    }
}

pub fn profile_row_value(row: &SectionProfileRow) -> Value {
    let mut m = Map::new();
    m.insert("r".into(), json!(row.r));
    match &row.kind {
        SectionSpaceKind::Affine { dim } => {
            m.insert("space".into(), json!("affine"));
            m.insert("dim".into(), json!(dim));
        }
        SectionSpaceKind::Points { count } => {
            m.insert("space".into(), json!("points"));
            m.insert("count".into(), json!(count));
        }
        SectionSpaceKind::PointsTimesTorsor {
            count,
            t,
            torsor_dim,
        } => {
            m.insert("space".into(), json!("points_times_torsor"));
            m.insert("count".into(), json!(count));
            m.insert("t".into(), json!(t));
            m.insert("torsor_dim".into(), h1dim_value(torsor_dim));
        }
    }
    if row.odd_step_injectivity_assumed {
        m.insert(
            "assumption".into(),
            json!("odd-step collapse imported: cup-product injectivity is not recomputed"),
        );
    }
    Value::Object(m)
}

pub fn to_string_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use torelli::scalar::rat;

    #[test]
    fn rationals_as_strings() {
        assert_eq!(rat_value(&rat(-3, 4)), Value::String("-3/4".into()));
        assert_eq!(rat_value(&rat(5, 1)), Value::String("5".into()));
    }

    #[test]
    fn decomposition_roundtrips_through_json() {
        use torelli::partition::Partition;
        let pieces = vec![
            (Partition::new(vec![2, 2]).unwrap(), 1),
            (Partition::trivial(), 1),
        ];
        let doc = decomposition_value(3, "wedge2(L30H)", &pieces, -2);
        let text = to_string_pretty(&doc);
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(to_string_pretty(&parsed), text);
        // and the fields match the inputs
        assert_eq!(parsed["g"], 3);
        assert_eq!(parsed["irreps"][0]["lambda"], serde_json::json!([2, 2]));
        assert_eq!(parsed["irreps"][0]["dim"], 90);
    }

    #[test]
    fn keys_are_sorted() {
        let mut m = Map::new();
        m.insert("zeta".into(), json!(1));
        m.insert("alpha".into(), json!(2));
        let s = serde_json::to_string(&document("t", m)).unwrap();
        let alpha = s.find("alpha").unwrap();
        let zeta = s.find("zeta").unwrap();
        assert!(alpha < zeta);
    }
}
