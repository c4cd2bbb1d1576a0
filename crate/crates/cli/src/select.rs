//! Picking subgroups by spec or by element list.

use std::collections::BTreeMap;
use std::sync::Arc;

use chern_core::group::subgroup_lattice;
use chern_core::{build_catalog_group, parse_group_spec, FiniteGroup, Subgroup};

/// Isomorphism invariants used to match a subgroup against a catalog group.
#[derive(Debug, PartialEq, Eq)]
struct Fingerprint {
    order: usize,
    abelian: bool,
    classes: usize,
    element_orders: BTreeMap<usize, usize>,
}

fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut element_orders = BTreeMap::new();
    for x in 0..g.order() {
        *element_orders.entry(g.element_order(x)).or_insert(0) += 1;
    }
    Fingerprint { order: g.order(), abelian: g.is_abelian(), classes: g.conjugacy_data().len(), element_orders }
}

/// Conjugacy representatives of subgroups of `g` matching `spec`, in canonical order.
pub fn matching_subgroups(g: &Arc<FiniteGroup>, spec: &str) -> Result<Vec<Subgroup>, String> {
    let spec = parse_group_spec(spec).map_err(|e| format!("subgroup spec: {e}"))?;
    let target = build_catalog_group(&spec).map_err(|e| format!("subgroup spec: {e}"))?;
    let want = fingerprint(&target);
    if want.order > g.order() || !g.order().is_multiple_of(want.order) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for h in subgroup_lattice(g, true).map_err(|e| e.to_string())? {
        if h.order() != want.order {
            continue;
        }
        let hg = FiniteGroup::from_subgroup(g, &h).map_err(|e| e.to_string())?;
        if fingerprint(&hg) == want {
            out.push(h);
        }
    }
    Ok(out)
}

/// Parses a comma-separated list of element labels or indices. The list must
/// already be closed under multiplication.
pub fn subgroup_from_elements(g: &FiniteGroup, list: &str) -> Result<Subgroup, String> {
    let mut elems = Vec::new();
    for item in split_top_level(list) {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let x = match g.labels().iter().position(|l| l == item) {
            Some(x) => x,
            None => match item.parse::<usize>() {
                Ok(i) if i < g.order() => i,
                _ => return Err(format!("unknown element '{item}'")),
            },
        };
        elems.push(x);
    }
    Subgroup::from_elements(g, elems).map_err(|e| e.to_string())
}

/// Splits on commas outside brackets, so matrix labels like `[1 0; 0 1]` survive.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
