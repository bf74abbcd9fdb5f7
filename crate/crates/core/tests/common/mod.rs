#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use linecrit::case::{read_case, SystemCase};

pub fn data_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(file)
}

pub fn ieee(buses: usize) -> SystemCase {
    read_case(&data_path(&format!("ieee{buses}.cdf"))).expect("bundled case parses")
}

pub mod oracles;
pub mod reference;
