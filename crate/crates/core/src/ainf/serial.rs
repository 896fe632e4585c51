use serde_json::{json, Map, Value};

use super::structure::AInfStructure;
use crate::Result;

/// Serializes a structure (table plus resolved products) to the JSON shape
/// `{"g": {"1,0": "<form>"}, "mu": [{"args": [..], "out": "eta", "coeff": ".."}]}`.
pub fn structure_to_json(s: &AInfStructure) -> Result<Value> {
    let mut g = Map::new();
    for (k, v, _) in s.gtable.iter() {
        g.insert(format!("{},{}", k.0, k.1), Value::String(format!("{}", v)));
    }
    let mut mu = Vec::new();
    for arity in s.arities() {
        let mut entries: Vec<_> = s.support(arity).collect();
        entries.sort_by(|a, b| a.0.cmp(b.0));
        for (w, e) in entries {
            let coeff = e.resolve(&s.gtable)?;
            mu.push(json!({
                "args": w.iter().map(|g| g.name()).collect::<Vec<_>>(),
                "out": e.out.name(),
                "coeff": format!("{}", coeff),
            }));
        }
    }
    Ok(json!({ "g": Value::Object(g), "mu": Value::Array(mu) }))
}
