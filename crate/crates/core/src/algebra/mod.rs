//! Exact arithmetic foundation: rationals, univariate and bivariate
//! polynomials, ternary forms, resultants and linear algebra.

pub mod bivariate;
pub mod form;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod rational;
pub mod resultant;

pub use bivariate::BiPoly;
pub use form::{interpolation_space, monomials, ProjPoint, ProjTransform, TernaryForm};
pub use matrix::RationalMatrix;
pub use poly::UniPoly;
pub use rational::{int, rat, Rational};
pub use resultant::{discriminant, resultant, resultant_formal};
