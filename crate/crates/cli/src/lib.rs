pub mod format;
pub mod svg;
pub mod table;
