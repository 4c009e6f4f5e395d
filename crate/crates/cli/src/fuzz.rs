//! Harnesses shared by the cargo-fuzz targets and the corpus replay test.
//! Each takes raw bytes, must never panic on bad input, and asserts that
//! accepted input survives a print/parse round trip.

use sumcore::model::parse_cayley_table;
use sumcore::setfile::{parse_rle, parse_set_text, write_rle};
use sumcore::{parse_set_spec, GroupModel, ModelDesc};

use crate::config::ExperimentConfig;
use crate::witness_json::parse_witness_json;

/// Carrier used when plain set files have no header.
const PLAIN_UNIVERSE: usize = 4096;
const MAX_TABLE: usize = 64;

fn text(data: &[u8]) -> Option<&str> {
    std::str::from_utf8(data).ok()
}

pub fn set_spec(data: &[u8]) {
    let Some(t) = text(data) else { return };
    if let Ok(spec) = parse_set_spec(t) {
        let printed = spec.to_string();
        assert_eq!(parse_set_spec(&printed).as_ref(), Ok(&spec), "{printed}");
    }
}

pub fn set_file(data: &[u8]) {
    let Some(t) = text(data) else { return };
    if let Ok((universe, set)) = parse_rle(t) {
        let printed = write_rle(&set);
        let (u2, back) = parse_rle(&printed).expect("written RLE parses");
        assert_eq!((u2, &back), (universe, &set));
    }
    if let Ok(set) = parse_set_text(t, PLAIN_UNIVERSE) {
        assert!(set.members().all(|x| x < PLAIN_UNIVERSE));
    }
}

pub fn model_desc(data: &[u8]) {
    let Some(t) = text(data) else { return };
    if let Ok(desc @ (ModelDesc::ZWindow { .. } | ModelDesc::Cyclic(_))) = t.parse::<ModelDesc>() {
        assert_eq!(desc.to_string().parse::<ModelDesc>().as_ref(), Ok(&desc));
    }
}

pub fn cayley_table(data: &[u8]) {
    let Some(t) = text(data) else { return };
    let Ok(rows) = parse_cayley_table(t) else { return };
    if rows.len() > MAX_TABLE {
        return;
    }
    if let Ok(GroupModel::Cayley(g)) = GroupModel::from_table(rows.clone()) {
        assert_eq!(g.rows(), rows);
        let e = g.identity();
        assert!((0..g.order()).all(|x| g.mul(e, x) == x && g.mul(x, e) == x));
    }
}

pub fn config_toml(data: &[u8]) {
    let Some(t) = text(data) else { return };
    if let Ok(cfg) = ExperimentConfig::from_toml(t) {
        let printed = cfg.to_toml().expect("valid config prints");
        let back = ExperimentConfig::from_toml(&printed).expect("printed config parses");
        assert_eq!(back, cfg);
    }
}

pub fn witness_json(data: &[u8]) {
    let Some(t) = text(data) else { return };
    if let Ok(w) = parse_witness_json(t) {
        let printed = serde_json::to_string(&w).expect("witness prints");
        assert_eq!(parse_witness_json(&printed).expect("printed witness parses"), w);
    }
}

pub type Harness = fn(&[u8]);

/// Target name to harness, in the order of `fuzz/fuzz_targets`.
pub const TARGETS: [(&str, Harness); 6] = [
    ("set_spec", set_spec),
    ("set_file", set_file),
    ("model_desc", model_desc),
    ("cayley_table", cayley_table),
    ("config_toml", config_toml),
    ("witness_json", witness_json),
];
