//! Exact thermodynamics and entanglement of the XX spin-½ chain in a staggered field.
//!
//! * [`model`]: parameter types, dispersion, Fermi-edge angle, Bogoliubov angle.
//! * [`oracle`]: dense exact diagonalization for chains of up to 12 sites.
//! * [`fermion`]: the free-fermion solution of a finite open chain.
//! * [`thermo`]: infinite-chain observables by quadrature.
//! * [`analysis`]: witness boundaries, the critical staggered field, maximal-entropy curves.
//! * [`check`]: the oracle-versus-fermion consistency harness.

pub mod analysis;
pub mod check;
pub mod eigen;
pub mod error;
pub mod fermion;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod root;
pub mod thermo;

pub use error::{Error, Result};
pub use model::{CouplingParams, FiniteChain, ModeSpectrum, SiteParity, Temperature};
