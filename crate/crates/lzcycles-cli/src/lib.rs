pub mod json;
pub mod wpc;
