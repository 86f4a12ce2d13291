//! The `nabla-kit` command-line tool: an expression language over the
//! library and the verify/scan/cache entry points.

pub mod app;
pub mod eval;
pub mod expr;
pub mod render;
