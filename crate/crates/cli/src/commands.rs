//! One function per subcommand, each producing a text and a JSON rendering.

use std::sync::Arc;

use chern_core::filtration::{gamma_filtration, graded_ring_report, GradedRingReport};
use chern_core::group::{subgroup_lattice, SUBGROUP_LATTICE_BOUND};
use chern_core::saturation::{describe_subgroup, saturation_verdict, stable_element_subring};
use chern_core::{
    build_catalog_group, character_table, parse_group_spec, saturated_filtration, CharacterTable, FiniteGroup,
    GroupSpec, Inclusion, PrimeIndexNorm, VirtualCharacter,
};
use serde_json::{json, Value};

use crate::expr::parse_expr;
use crate::render::{self, class_labels, columns};
use crate::select::{matching_subgroups, subgroup_from_elements};
use crate::suites::{self, Suite};

pub struct Report {
    pub text: String,
    pub json: Value,
    /// `false` only for failed verification.
    pub passed: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json, passed: true }
    }
}

pub type CmdResult = Result<Report, String>;

fn load_group(spec: &str) -> Result<(GroupSpec, Arc<FiniteGroup>), String> {
    let parsed = parse_group_spec(spec).map_err(|e| format!("group spec '{spec}': {e}"))?;
    let g = build_catalog_group(&parsed).map_err(|e| e.to_string())?;
    Ok((parsed, Arc::new(g)))
}

fn load_table(spec: &str) -> Result<(GroupSpec, Arc<CharacterTable>), String> {
    let (parsed, g) = load_group(spec)?;
    let t = character_table(g).map_err(|e| e.to_string())?;
    Ok((parsed, Arc::new(t)))
}

fn check_depth(depth: usize) -> Result<(), String> {
    if (1..=MAX_DEPTH).contains(&depth) {
        Ok(())
    } else {
        Err(format!("depth must be between 1 and {MAX_DEPTH}"))
    }
}

pub const MAX_DEPTH: usize = 24;

pub fn group_info(spec: &str) -> CmdResult {
    let (parsed, g) = load_group(spec)?;
    let cls = g.conjugacy_data();
    let classes: Vec<Value> = (0..cls.len())
        .map(|c| json!({ "rep": g.label(cls.reps[c]), "size": cls.sizes[c], "element_order": g.element_order(cls.reps[c]) }))
        .collect();
    let subgroups = if g.order() <= SUBGROUP_LATTICE_BOUND {
        subgroup_lattice(&g, true).ok().map(|l| l.iter().map(|h| h.order()).collect::<Vec<_>>())
    } else {
        None
    };
    let has_table = character_table(g.clone()).is_ok();
    let mut text = format!(
        "group {parsed}\norder {}\nexponent {}\nabelian {}\ncenter order {}\nconjugacy classes {}\n",
        g.order(),
        g.exponent(),
        g.is_abelian(),
        g.center().len(),
        cls.len()
    );
    let mut rows = vec![vec!["class".to_string(), "rep".into(), "size".into(), "order".into()]];
    for c in 0..cls.len() {
        rows.push(vec![
            c.to_string(),
            g.label(cls.reps[c]).to_string(),
            cls.sizes[c].to_string(),
            g.element_order(cls.reps[c]).to_string(),
        ]);
    }
    text.push_str(&columns(&rows));
    match &subgroups {
        Some(orders) => {
            let shown: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
            text.push_str(&format!("subgroup classes {} (orders {})\n", orders.len(), shown.join(" ")));
        }
        None => text.push_str("subgroup classes not computed (group too large)\n"),
    }
    text.push_str(&format!("character table {}\n", if has_table { "available" } else { "unavailable" }));
    let json = json!({
        "command": "group-info",
        "group": parsed.to_string(),
        "order": g.order(),
        "exponent": g.exponent(),
        "abelian": g.is_abelian(),
        "center_order": g.center().len(),
        "classes": classes,
        "subgroup_class_orders": subgroups,
        "character_table": has_table,
    });
    Ok(Report::ok(text, json))
}

pub fn table(spec: &str) -> CmdResult {
    let (parsed, t) = load_table(spec)?;
    let labels = class_labels(&t);
    let cls = t.classes();
    let mut rows = vec![std::iter::once(String::new()).chain(labels.iter().cloned()).collect::<Vec<_>>()];
    rows.push(std::iter::once("size".to_string()).chain(cls.sizes.iter().map(|s| s.to_string())).collect());
    for i in 0..t.rank() {
        rows.push(std::iter::once(format!("r{i}")).chain(t.row(i).iter().map(|v| v.to_string())).collect());
    }
    let text = format!(
        "character table of {parsed} (order {}, conductor {})\n{}",
        t.group().order(),
        t.exponent(),
        columns(&rows)
    );
    let json = json!({
        "command": "table",
        "group": parsed.to_string(),
        "order": t.group().order(),
        "conductor": t.exponent(),
        "classes": labels,
        "class_sizes": cls.sizes,
        "degrees": t.degrees(),
        "rows": (0..t.rank()).map(|i| t.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(Report::ok(text, json))
}

fn graded_degrees(report: &GradedRingReport, depth: usize) -> (String, Vec<Value>) {
    let mut text = String::new();
    let mut out = Vec::new();
    for d in report.degrees.iter().filter(|d| (1..=depth).contains(&d.degree)) {
        text.push_str(&format!("degree {}: {}\n", d.degree, d.invariants));
        for g in &d.generators {
            text.push_str(&format!("  generator {g}\n"));
        }
        out.push(json!({
            "degree": d.degree,
            "invariants": render::invariants(&d.invariants),
            "generators": d.generators.iter().map(render::vchar).collect::<Vec<_>>(),
            "witnesses": d.witnesses.iter().map(|(l, c)| json!({ "monomial": l, "coords": render::ints(c) })).collect::<Vec<_>>(),
        }));
    }
    (text, out)
}

pub fn graded(spec: &str, depth: usize) -> CmdResult {
    check_depth(depth)?;
    let (parsed, t) = load_table(spec)?;
    let f = gamma_filtration(&t, depth + 1).map_err(|e| e.to_string())?;
    let report = graded_ring_report(&f).map_err(|e| e.to_string())?;
    let (body, degrees) = graded_degrees(&report, depth);
    let text = format!("gamma filtration of {parsed}, degrees 1..{depth}\n{body}");
    Ok(Report::ok(
        text,
        json!({ "command": "graded", "group": parsed.to_string(), "depth": depth, "degrees": degrees }),
    ))
}

pub fn saturated(spec: &str, depth: usize) -> CmdResult {
    check_depth(depth)?;
    let (parsed, t) = load_table(spec)?;
    let f = saturated_filtration(&t, depth + 1).map_err(|e| e.to_string())?;
    let report = f.graded_report().map_err(|e| e.to_string())?;
    let verdict = saturation_verdict(&f).map_err(|e| e.to_string())?;
    let (body, degrees) = graded_degrees(&report, depth);
    let mut text = format!("saturated filtration of {parsed}, degrees 1..{depth}\n{body}");
    let mut beyond = Vec::new();
    for n in 1..=depth {
        for c in f.contributions(n).iter().filter(|c| c.beyond_gamma) {
            text.push_str(&format!(
                "degree {n}: induction from {} leaves the gamma filtration\n",
                describe_subgroup(&t, &c.subgroup)
            ));
            beyond.push(json!({ "degree": n, "subgroup": render::subgroup(t.group(), &c.subgroup) }));
        }
    }
    let show = |x: Option<usize>| x.map_or("none".to_string(), |n| n.to_string());
    text.push_str(&format!(
        "saturated {} (first failing degree {}, first lattice difference {})\n",
        verdict.saturated,
        show(verdict.first_failing_degree),
        show(verdict.first_lattice_difference)
    ));
    let json = json!({
        "command": "saturated",
        "group": parsed.to_string(),
        "depth": depth,
        "degrees": degrees,
        "beyond_gamma": beyond,
        "saturated": verdict.saturated,
        "first_failing_degree": verdict.first_failing_degree,
        "first_lattice_difference": verdict.first_lattice_difference,
    });
    Ok(Report::ok(text, json))
}

pub fn stable(spec: &str, p: u64, depth: usize) -> CmdResult {
    check_depth(depth)?;
    let (parsed, g) = load_group(spec)?;
    let rep = stable_element_subring(&g, p, depth + 1).map_err(|e| e.to_string())?;
    let mut text = format!(
        "stable elements of {parsed} at p = {p}\nSylow subgroup {}\nnormalizer order {}\n",
        render::subgroup_text(&g, &rep.sylow),
        rep.normalizer.order()
    );
    let mut action = Vec::new();
    for (s, perm) in &rep.action {
        let shown: Vec<String> = perm.iter().map(|j| format!("r{j}")).collect();
        text.push_str(&format!("conjugation by {}: {}\n", g.label(*s), shown.join(" ")));
        action.push(json!({ "element": g.label(*s), "permutation": perm }));
    }
    let mut degrees = Vec::new();
    for d in &rep.degrees {
        text.push_str(&format!("degree {}: {}\n", d.degree, d.invariants));
        for x in &d.generators {
            text.push_str(&format!("  generator {x}\n"));
        }
        degrees.push(json!({
            "degree": d.degree,
            "invariants": render::invariants(&d.invariants),
            "generators": d.generators.iter().map(render::vchar).collect::<Vec<_>>(),
        }));
    }
    let json = json!({
        "command": "stable",
        "group": parsed.to_string(),
        "prime": p,
        "depth": depth,
        "sylow": render::subgroup(&g, &rep.sylow),
        "normalizer_order": rep.normalizer.order(),
        "action": action,
        "degrees": degrees,
    });
    Ok(Report::ok(text, json))
}

pub fn norm(spec: &str, sub: Option<&str>, sub_elements: Option<&str>, expr: &str) -> CmdResult {
    let (parsed, t) = load_table(spec)?;
    let g = t.group();
    let norm = match (sub, sub_elements) {
        (Some(s), None) => {
            let candidates = matching_subgroups(g, s)?;
            if candidates.is_empty() {
                return Err(format!("{parsed} has no subgroup matching {s}"));
            }
            candidates
                .iter()
                .find_map(|h| Inclusion::new(&t, h).ok().and_then(|inc| PrimeIndexNorm::new(inc).ok()))
                .ok_or_else(|| format!("no subgroup matching {s} is normal of prime index at most 7 in {parsed}"))?
        }
        (None, Some(list)) => {
            let h = subgroup_from_elements(g, list)?;
            let inc = Inclusion::new(&t, &h).map_err(|e| e.to_string())?;
            PrimeIndexNorm::new(inc).map_err(|e| e.to_string())?
        }
        _ => return Err("give exactly one of --sub and --sub-elements".into()),
    };
    let inc = norm.inclusion();
    let x = parse_expr(expr, inc.sub()).map_err(|e| format!("expression '{expr}' {e}"))?;
    let value = norm.norm_virtual(&x).map_err(|e| e.to_string())?;
    let p = norm.prime();
    let mut text = format!(
        "norm from {} to {parsed} (index {p})\nx = {x}\nN(x) = {value}\nformula and vee routes agree\n",
        render::subgroup_text(g, inc.subgroup())
    );
    let mut index_two = Value::Null;
    if p == 2 {
        let agrees = index_two_formula(&norm, &x)? == value;
        text.push_str(&format!("index-2 formula {}\n", if agrees { "agrees" } else { "DISAGREES" }));
        index_two = json!(agrees);
    }
    let json = json!({
        "command": "norm",
        "group": parsed.to_string(),
        "subgroup": render::subgroup(g, inc.subgroup()),
        "index": p,
        "input": render::vchar(&x),
        "norm": render::vchar(&value),
        "index_two_formula_agrees": index_two,
    });
    let passed = index_two != json!(false);
    Ok(Report { text, json, passed })
}

/// `N(s - t) = N(s) + N(-t) + ind(s (-t)^t)` with `N(-t) = -N(t) + ind(t t^t)`.
fn index_two_formula(norm: &PrimeIndexNorm, x: &VirtualCharacter) -> Result<VirtualCharacter, String> {
    let inc = norm.inclusion();
    let (s, t) = x.split_signs();
    let e = |r: chern_core::Result<VirtualCharacter>| r.map_err(|e| e.to_string());
    let tt = norm.conjugate(&t, 1);
    let ns = e(inc.tensor_induce(&s))?;
    let n_neg_t = &-e(inc.tensor_induce(&t))? + &e(inc.induce(&(&t * &tt)))?;
    let cross = e(inc.induce(&(&s * &tt)))?;
    Ok(&(&ns + &n_neg_t) - &cross)
}

pub fn verify(suite: Suite, seed: u64) -> CmdResult {
    let results = suites::run(suite, seed);
    let mut text = String::new();
    let mut out = Vec::new();
    for r in &results {
        text.push_str(&format!("suite {}\n", r.suite.name()));
        for c in &r.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                text.push_str(&format!("  {status}  {}\n", c.name));
            } else {
                text.push_str(&format!("  {status}  {} ({})\n", c.name, c.detail));
            }
        }
        out.push(json!({
            "name": r.suite.name(),
            "passed": r.passed(),
            "checks": r.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
        }));
    }
    let passed = results.iter().all(|r| r.passed());
    let total: usize = results.iter().map(|r| r.checks.len()).sum();
    let failed: usize = results.iter().map(|r| r.checks.iter().filter(|c| !c.passed).count()).sum();
    text.push_str(&format!("{} checks, {failed} failed\n", total));
    let json = json!({ "command": "verify", "suite": suite.name(), "seed": seed, "passed": passed, "suites": out });
    Ok(Report { text, json, passed })
}
