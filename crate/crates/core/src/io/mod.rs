//! File formats, the fixture expression language and manifest verification.

mod expr;
mod files;
mod manifest;
mod scalars;

pub use files::{
    field_from_json, field_to_json, group_from_json, group_to_json, load_group, load_rep, load_table, rep_from_json,
    table_from_json, table_to_json, AnyElement,
};
pub use manifest::{verify_manifest, verify_manifest_json};
