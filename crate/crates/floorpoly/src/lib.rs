//! File formats, cache, reference data and checks behind the `floorpoly` tool.

pub mod cache;
pub mod formats;
pub mod paper;
pub mod compute;
pub mod verify;
