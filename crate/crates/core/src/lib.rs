//! Atom spectra of finite rings.
//!
//! Given a finite associative unital ring `R` by its tables, this crate
//! enumerates right ideals and submodule lattices, decides monoformity of
//! finite right modules, computes the atom spectrum of `R` as classes of
//! comonoform right ideals, and classifies the Serre subcategories of finitely
//! generated modules as open subsets of the spectrum. A brute-force closure
//! oracle and a battery of structural checks ([`check`]) keep the open-set
//! representation honest.
//!
//! ```
//! use std::sync::Arc;
//! use atomspec::{builtin, AtomSpectrum, serre};
//!
//! let ring = Arc::new(builtin::tri2(2).unwrap());
//! let spec = AtomSpectrum::new(&ring).unwrap();
//! assert_eq!(spec.len(), 2);
//! assert_eq!(serre::enumerate_serre(&spec).unwrap().subcategories.len(), 4);
//! ```

pub mod builtin;
pub mod check;
pub mod elemset;
pub mod error;
pub mod format;
pub mod iso;
pub mod lattice;
pub mod module;
pub mod monoform;
pub mod ring;
pub mod serre;
pub mod spectrum;

pub use builtin::RingSpec;
pub use elemset::ElemSet;
pub use error::{Axiom, Error, Result};
pub use module::{RightIdeal, RightModule};
pub use monoform::Filtration;
pub use ring::{FiniteRing, Limits, RawTables};
pub use serre::{ClosureUniverse, SerreLattice, SerreSubcategory};
pub use spectrum::{Atom, AtomSet, AtomSpectrum, OpenSet};
