//! Harmonic analysis on the quaternionic hyperbolic ball.
//!
//! The crate implements, end to end, the computable layer of spherical
//! analysis on `Sp(n,1)/Sp(n) x Sp(1)` for the bundles attached to the
//! (nu+1)-dimensional representations of Sp(1):
//!
//! * [`quat`], [`group`]: quaternion matrix algebra and the matrix model of
//!   the group, with Iwasawa/Cartan component extraction in closed form;
//! * [`reps`]: the representations tau_nu and their characters;
//! * [`specfun`]: complex log-gamma, the Gauss hypergeometric series,
//!   Jacobi functions and Harish-Chandra c-functions;
//! * [`jacobi`]: the Jacobi transform pair with its discrete spectrum, and
//!   the tau_nu-spherical transform through the weight reduction;
//! * [`poisson`]: tau_nu-spherical functions, Poisson transforms, boundary
//!   generators, asymptotic profiles and ball-average functionals;
//! * [`fourier`]: the vector-valued Helgason-Fourier transform,
//!   convolution, spectral projections and the restriction-estimate ratio;
//! * [`numerics`]: quadrature panels, Haar samplers and deterministic
//!   sample streams;
//! * [`verify`]: named verification suites producing reproducible JSON
//!   reports (also exposed through the `hyperq` binary).
//!
//! Runnable walkthroughs for each capability live under `examples/`.

pub mod fourier;
pub mod group;
pub mod io;
pub mod jacobi;
pub mod numerics;
pub mod poisson;
pub mod quat;
pub mod reps;
pub mod specfun;
pub mod verify;
