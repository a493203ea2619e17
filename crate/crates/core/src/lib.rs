pub mod classify;
pub mod cli;
pub mod error;
pub mod haar;
pub mod ratfunc;
pub mod surface;
pub mod symgrp;
pub mod trace;
pub mod weingarten;
pub mod words;

pub use error::{Error, Result};
