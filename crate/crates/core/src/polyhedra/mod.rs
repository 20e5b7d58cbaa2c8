//! Polyhedra in constraint form ([`HPoly`]) and generator form ([`GenSet`]).

mod compare;
mod dd;
mod fm;
mod genset;
mod hpoly;
mod ops;

pub use compare::{generators_outside, is_subset, set_equal, Comparison, Counterexample, Generator, SetRef};
pub use dd::{dd_convert, dd_reverse};
pub use fm::fm_eliminate;
pub use genset::GenSet;
pub use hpoly::{Constraint, HPoly};
pub use ops::{
    affine_hull, affine_image, affine_preimage, codim, minkowski_sum, relative_interior,
    relative_interior_point, AffineHull, RelInt,
};
