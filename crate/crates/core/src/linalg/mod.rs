// SPDX-License-Identifier: MIT

//! Linear algebra over prime fields and over the rationals.

pub mod exact;
pub mod fast;
pub mod field;
pub mod modp;
