//! Exact arithmetic for the Fox function, Cohen groups `[J_n(S^1), ΩY]` and
//! class-2 truncations of Fox torus homotopy groups.
//!
//! A user supplies a [`SpaceModel`]: a truncated graded abelian group
//! `{π_d}` together with a bilinear, graded-symmetric Whitehead bracket
//! table. Everything else is computed from that data:
//!
//! * [`fox`]: Fox signs of subset pairs and the Fox function `φ(l, k)` by
//!   subset enumeration, recurrence and closed form.
//! * [`numtheory`]: binomials, Lucas residues, Catalan numbers, the `Δ`
//!   table deciding when two homogeneous classes commute, and the stem
//!   predicates for `[J_k(S^1), ΩS^{2n}]`.
//! * [`pi`]: the space-model data type, its JSON file format and a
//!   catalog of worked models.
//! * [`cohen`]: the Cohen group law, inverses, commutators, orders,
//!   abelianness and nilpotency probes.
//! * [`torus`]: subset-indexed elements of class-2 torus groups and their
//!   signed commutator rule.
//!
//! ```
//! use foxcohen::{catalog_model, CohenGroup};
//!
//! let s2 = catalog_model("S2@4").unwrap();
//! let group = CohenGroup::new(&s2, 2).unwrap();
//! let x = group.parse_element(r#"{"2":[1]}"#).unwrap();
//! let square = group.multiply(&x, &x).unwrap();
//! assert_eq!(group.format_element(&square), r#"{"2":[2],"3":[2]}"#);
//! ```

pub mod cli;
pub mod cohen;
mod error;
pub mod fox;
pub mod numtheory;
pub mod pi;
pub mod torus;
pub mod verify;

pub use cohen::{AbelianCheck, CohenElement, CohenGroup, EnumeratedGroup, NilpotencyProbe, Order};
pub use error::{Error, Result};
pub use fox::{fox_sign, phi_bruteforce, phi_closed, phi_recurrence, FoxTable, IndexSet};
pub use numtheory::{BracketOrder, DeltaEntry, StemReport};
pub use pi::catalog::{catalog, catalog_model, CatalogEntry};
pub use pi::{load_space, serialize_space, FgAbelianGroup, Generator, PiElement, SpaceModel, Violation};
pub use torus::{SubsetOrder, TauElement, TauGroup};
