//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use chern_core::{build_catalog_group, character_table, parse_group_spec, CharacterTable, FiniteGroup};

pub fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(build_catalog_group(&parse_group_spec(spec).expect("valid spec")).expect("catalog group"))
}

pub fn table(spec: &str) -> Arc<CharacterTable> {
    Arc::new(character_table(group(spec)).expect("character table"))
}
