//! Certified explicit bounds for the stable Arakelov invariants of curves
//! presented as covers of the projective line branched over three points.
//!
//! The crate is organized as a pipeline. [`dessins`] turns permutation
//! triples into cover data (degree, cusps, genus). [`modlambda`] evaluates
//! the modular lambda function on the imaginary axis with rigorous error
//! bounds. [`merkl`] certifies an explicit sup bound for Arakelov-Green
//! functions on covers equipped with a standard atlas, and [`heights`]
//! turns it into height bounds for algebraic points. [`invariants`]
//! assembles the headline bounds on the Faltings height, self-intersection,
//! discriminant, and delta invariant, and [`applications`] specializes them
//! to modular and Galois covers and to covers with a fixed branch locus.
//!
//! Every inequality is checked in outward-rounded interval arithmetic via
//! the [`rigor`] crate, so a `Certified` verdict is a machine-checked proof
//! of the stated comparison at the chosen precision.

pub mod applications;
pub mod dessins;
pub mod heights;
pub mod invariants;
pub mod merkl;
pub mod modlambda;

#[cfg(test)]
pub(crate) mod testutil;
