// SPDX-License-Identifier: MIT OR Apache-2.0

//! Variety files, reports and the `kfano` command line on top of `kfano-core`.

pub mod cli;
pub mod input;
pub mod report;

pub use input::{parse_variety, read_variety, ParseError};
