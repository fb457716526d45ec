//! Exact integers, rationals, polynomials, truncated series and heights.

pub mod height;
pub mod modp;
pub mod mpoly;
pub mod poly;
pub mod quotient;
pub mod ring;
pub mod series;

pub use height::{height_int, height_poly, Height};
pub use mpoly::MPoly;
pub use poly::{
    content_primitive, discriminant, int_gcd, poly_gcd, primitive_of_rational, rat_to_primitive, resultant_rat, to_rat_poly, UniPoly,
};
pub use quotient::ModElem;
pub use ring::{abs_rat, common_denominator, int, rat, rat_int, Field, Int, Rat, Ring, Scalar};
pub use series::{series_invert, TruncSeries};
