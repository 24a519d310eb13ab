// SPDX-License-Identifier: Apache-2.0

pub mod capacity;
pub mod cli;
pub mod channels;
pub mod conjectures;
pub mod error;
pub mod matcore;
pub mod purity;
pub mod tolerance;

pub use error::{Error, Result};
