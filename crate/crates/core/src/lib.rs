pub mod body;
pub mod cli;
pub mod constructors;
pub mod error;
pub mod io;
pub mod metrics;
pub mod optimize;
pub mod sphere;
pub mod wulff;
