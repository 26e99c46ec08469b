pub mod error;
pub mod half;
pub mod map;
pub mod diagram;
pub mod moves;
pub mod invariants;
pub mod family;
pub mod format;
