pub mod error;
pub mod geometry;
pub mod heights;
pub mod logvalue;
pub mod magnitude;
mod numeric;
pub mod places;
pub mod presentations;
pub mod quadratic;
pub mod verify;
