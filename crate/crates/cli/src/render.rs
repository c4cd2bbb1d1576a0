//! JSON and text renderings of core values.

use chern_core::{AbelianInvariants, CharacterTable, Subgroup, VirtualCharacter};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// Integers become JSON numbers when they fit in an `i64`, strings otherwise.
pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn invariants(inv: &AbelianInvariants) -> Value {
    json!({
        "free_rank": inv.free_rank,
        "divisors": ints(&inv.divisors),
        "text": inv.to_string(),
    })
}

pub fn vchar(x: &VirtualCharacter) -> Value {
    json!({ "coeffs": ints(x.coeffs()), "text": x.to_string() })
}

pub fn subgroup(table_group: &chern_core::FiniteGroup, h: &Subgroup) -> Value {
    json!({
        "order": h.order(),
        "elements": h.elements().iter().map(|&x| table_group.label(x)).collect::<Vec<_>>(),
    })
}

pub fn subgroup_text(g: &chern_core::FiniteGroup, h: &Subgroup) -> String {
    let labels: Vec<&str> = h.elements().iter().map(|&x| g.label(x)).collect();
    format!("order {} {{{}}}", h.order(), labels.join(", "))
}

/// Class labels in table column order: the representative's label.
pub fn class_labels(t: &CharacterTable) -> Vec<String> {
    t.classes().reps.iter().map(|&r| t.group().label(r).to_string()).collect()
}

/// Left-aligned columns separated by two spaces.
pub fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut w = vec![0; width];
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(i, c)| format!("{c:<width$}", width = w[i])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
