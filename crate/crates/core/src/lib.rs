// SPDX-License-Identifier: MIT

//! Invariant polydifferential operators on a symplectic vector space V = C^{2d}:
//! the spaces SC_n(V) ⊆ Quant_n(V) ⊆ Inv_n(V), their S_n and S_{n+1}
//! structure, and the generating functions describing them.

pub mod characters;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod linalg;
pub mod polydiff;
pub mod series;
pub mod spaces;

pub use error::{Error, Result};
