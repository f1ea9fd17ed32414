//! Inputs shared by the benches.

use latres_core::rootdatum::GroupDatum;
use latres_core::{corpus, Config};

pub const DATA: &[&str] = &["pgl2", "gl3", "sp4", "su3.qs", "norm-one.z3", "norm-one.v4"];

pub fn data(cfg: &Config) -> Vec<(&'static str, GroupDatum)> {
    DATA.iter()
        .map(|&n| (n, corpus::datum(n, cfg).expect("corpus datum")))
        .collect()
}
