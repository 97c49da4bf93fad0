//! Affine Weyl group combinatorics for connected components of affine
//! Deligne-Lusztig varieties: root data, Bruhat order, admissible sets,
//! short elements and the permissible-reflection graph on `W_0^J`.

pub mod admissible;
pub mod appendix;
pub mod affine;
pub mod cartan;
pub mod connectivity;
pub mod coweight;
pub mod error;
pub mod fold_sweep;
pub mod folding;
pub mod g2;
pub mod properties;
pub mod root_datum;
pub mod sigma;
pub mod snf;
pub mod subset;
pub mod weyl;

pub use affine::{Elem, Levi};
pub use cartan::Family;
pub use error::{Error, Result};
pub use root_datum::{Coweight, Int, Isogeny, RootDatum, RootId};
pub use subset::Subset;
pub use weyl::Weyl;
