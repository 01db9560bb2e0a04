//! Delay-optimal constructions and the exhaustive minimum-delay search.

mod construct;
mod gf2;
mod search;

pub use construct::{base_bcod, construct_bcod, MAX_HALF_WIDTH};
pub use search::{search_min_delay, SearchConfig};
