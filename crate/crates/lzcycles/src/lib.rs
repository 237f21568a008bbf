//! Optimal levelset persistent cycles on weak pseudomanifolds.

pub mod complex;
pub mod dualgraph;
pub mod exec;
pub mod fixtures;
pub mod levelset;
pub mod mincut;
pub mod optcycles;
pub mod oracle;
pub mod z2;
pub mod zigzag;
