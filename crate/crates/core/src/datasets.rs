//! Small published datasets shipped with the crate, parsed from the files
//! under `fixtures/`.

use crate::fca::{parse_cxt, FormalContext};
use crate::omspace::{parse_distance_csv, FiniteMetric};
use crate::scaling::{parse_scaling_config, parse_table_csv, ManyValuedTable, ScalingConfig};

pub const REMBRANDT_CXT: &str = include_str!("../fixtures/rembrandt.cxt");
pub const AIRLINES_CXT: &str = include_str!("../fixtures/airlines.cxt");
pub const AIRLINES_DIST_CSV: &str = include_str!("../fixtures/airlines_dist.csv");
pub const SOCIALNET_CXT: &str = include_str!("../fixtures/socialnet.cxt");
pub const BUNDESLIGA_CSV: &str = include_str!("../fixtures/bundesliga.csv");
pub const BUNDESLIGA_SCALING_JSON: &str = include_str!("../fixtures/bundesliga_scaling.json");

/// Rembrandt paintings and their properties.
pub fn rembrandt() -> FormalContext {
    parse_cxt(REMBRANDT_CXT).expect("bundled fixture parses")
}

/// Cities served by airlines.
pub fn airlines() -> FormalContext {
    parse_cxt(AIRLINES_CXT).expect("bundled fixture parses")
}

/// Geodesic distances in nautical miles between the airline cities.
pub fn airline_distances() -> FiniteMetric {
    parse_distance_csv(AIRLINES_DIST_CSV).expect("bundled fixture parses")
}

/// Social networking platforms and their features.
pub fn social_networks() -> FormalContext {
    parse_cxt(SOCIALNET_CXT).expect("bundled fixture parses")
}

/// Final 2022/23 Bundesliga table.
pub fn bundesliga() -> ManyValuedTable {
    parse_table_csv(BUNDESLIGA_CSV).expect("bundled fixture parses")
}

/// Domination scales: W and GF ascending, L and GA descending.
pub fn bundesliga_scaling() -> ScalingConfig {
    parse_scaling_config(BUNDESLIGA_SCALING_JSON).expect("bundled fixture parses")
}
