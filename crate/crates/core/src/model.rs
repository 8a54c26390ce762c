//! Parameter types and the closed-form layer of the staggered XX chain.
//!
//! The Hamiltonian is
//!
//! ```text
//! H = -Σ_l [ (J/2)(σˣ_l σˣ_{l+1} + σʸ_l σʸ_{l+1}) + B_l σᶻ_l ],   B_l = B + (-1)^l b
//! ```
//!
//! on an open chain with sites `l = 1..N`. Odd sites feel `B - b`, even sites `B + b`.
//! After the fermionization the chain decouples into pairs of modes with energies
//! `λ± = 2B ± 2√(J²cos²ω + b²)`; everything else in the crate is built on top of the
//! functions here.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// The triple `(J, B, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    /// Exchange coupling `J >= 0`.
    pub coupling: f64,
    /// Uniform field `B`.
    pub field: f64,
    /// Staggered field amplitude `b`.
    pub staggered: f64,
}

impl CouplingParams {
    pub fn new(coupling: f64, field: f64, staggered: f64) -> Result<Self> {
        let p = Self {
            coupling,
            field,
            staggered,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.coupling.is_finite() || self.coupling < 0.0 {
            return Err(Error::InvalidParams(format!(
                "J = {} must be finite and non-negative",
                self.coupling
            )));
        }
        if !self.field.is_finite() || !self.staggered.is_finite() {
            return Err(Error::InvalidParams(format!(
                "fields must be finite (B = {}, b = {})",
                self.field, self.staggered
            )));
        }
        Ok(())
    }

    /// All three energies multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            coupling: s * self.coupling,
            field: s * self.field,
            staggered: s * self.staggered,
        }
    }

    pub fn with_field(&self, field: f64) -> Self {
        Self { field, ..*self }
    }

    pub fn with_staggered(&self, staggered: f64) -> Self {
        Self { staggered, ..*self }
    }

    pub fn with_coupling(&self, coupling: f64) -> Self {
        Self { coupling, ..*self }
    }

    /// Local field `B_l` felt by a site of the given parity.
    pub fn local_field(&self, parity: SiteParity) -> f64 {
        self.field + parity.sign() * self.staggered
    }
}

/// Temperature, with `T = 0` kept as an exact symbolic limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Temperature {
    Zero,
    Finite(f64),
}

impl Temperature {
    pub fn finite(t: f64) -> Result<Self> {
        let temp = Temperature::Finite(t);
        temp.validate()?;
        Ok(temp)
    }

    pub fn from_beta(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidTemperature(1.0 / beta));
        }
        Self::finite(1.0 / beta)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Temperature::Zero => Ok(()),
            Temperature::Finite(t) if t.is_finite() && t > 0.0 => Ok(()),
            Temperature::Finite(t) => Err(Error::InvalidTemperature(t)),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Temperature::Zero)
    }

    /// `1/T`, or `None` at zero temperature.
    pub fn beta(&self) -> Option<f64> {
        match *self {
            Temperature::Zero => None,
            Temperature::Finite(t) => Some(1.0 / t),
        }
    }

    /// `T` as a number, `0.0` for the zero variant.
    pub fn value(&self) -> f64 {
        match *self {
            Temperature::Zero => 0.0,
            Temperature::Finite(t) => t,
        }
    }

    /// `tanh(βλ/2)`, or its limit `sign(λ)` at `T = 0` with `sign(0) = 0`.
    ///
    /// This is `1 - 2⟨n⟩` for a fermion mode of energy `-λ`, i.e. the derivative of
    /// `ln 2cosh(βλ/2)` with respect to `βλ/2`.
    pub fn mode_polarization(&self, lambda: f64) -> f64 {
        match *self {
            Temperature::Zero => sign0(lambda),
            Temperature::Finite(t) => (0.5 * lambda / t).tanh(),
        }
    }
}

/// Sign with `sign(0) = 0`.
pub(crate) fn sign0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `ln(2 cosh x)` without overflow: `|x| + ln(1 + e^{-2|x|})`.
pub fn ln_two_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p()
}

/// An open chain of `N` sites, `N` even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteChain {
    sites: usize,
}

impl FiniteChain {
    pub fn new(sites: usize) -> Result<Self> {
        if sites < 2 || !sites.is_multiple_of(2) {
            return Err(Error::InvalidChain(sites));
        }
        Ok(Self { sites })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    /// Number of mode pairs, `N/2`.
    pub fn mode_pairs(&self) -> usize {
        self.sites / 2
    }

    /// Mode angle `πk/(N+1)`.
    pub fn mode_angle(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.mode_pairs() {
            return Err(Error::ModeOutOfRange {
                k,
                max: self.mode_pairs(),
            });
        }
        Ok(PI * k as f64 / (self.sites as f64 + 1.0))
    }
}

/// Sublattice of a site. Site `l` carries the staggered sign `(-1)^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SiteParity {
    Even,
    Odd,
}

impl SiteParity {
    pub fn of_site(l: usize) -> Self {
        if l.is_multiple_of(2) {
            SiteParity::Even
        } else {
            SiteParity::Odd
        }
    }

    /// `(-1)^l`: `+1` for even sites, `-1` for odd.
    pub fn sign(&self) -> f64 {
        match self {
            SiteParity::Even => 1.0,
            SiteParity::Odd => -1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SiteParity::Even => "even",
            SiteParity::Odd => "odd",
        }
    }

    pub fn flipped(&self) -> Self {
        match self {
            SiteParity::Even => SiteParity::Odd,
            SiteParity::Odd => SiteParity::Even,
        }
    }
}

impl std::str::FromStr for SiteParity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "even" => Ok(SiteParity::Even),
            "odd" => Ok(SiteParity::Odd),
            other => Err(format!("unknown parity '{other}', expected 'even' or 'odd'")),
        }
    }
}

/// One pair of Bogoliubov modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub k: usize,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// Bogoliubov angle `θ_k`.
    pub theta: f64,
}

/// Finite-chain single-particle spectrum, modes ordered by `k = 1..N/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum {
    pub chain: FiniteChain,
    pub modes: Vec<Mode>,
}

/// `√(J²c² + b²)`, half the splitting of a mode pair.
pub(crate) fn mode_amplitude(j: f64, c: f64, b: f64) -> f64 {
    (j * c).hypot(b)
}

/// `∂/∂J √(J²c² + b²) = J c² / √(J²c² + b²)`.
///
/// At `J = b = 0` the ratio is `0/0`; the `J → 0⁺` limit `|c|` is used.
pub(crate) fn amplitude_d_coupling(j: f64, c: f64, b: f64) -> f64 {
    let amp = mode_amplitude(j, c, b);
    if amp == 0.0 {
        c.abs()
    } else {
        j * c * c / amp
    }
}

/// `∂/∂b √(J²c² + b²) = b / √(J²c² + b²)`, zero where the amplitude vanishes.
pub(crate) fn amplitude_d_staggered(j: f64, c: f64, b: f64) -> f64 {
    let amp = mode_amplitude(j, c, b);
    if amp == 0.0 {
        0.0
    } else {
        b / amp
    }
}

/// Zero-temperature Fermi-edge angle `Ω ∈ [0, π/2]`.
///
/// `π/2` for `|B| < |b|`, `acos(√(B² − b²)/J)` in between, `0` above `√(J² + b²)`.
pub fn omega_cutoff(p: &CouplingParams) -> f64 {
    let field = p.field.abs();
    let stag = p.staggered.abs();
    if field < stag {
        return FRAC_PI_2;
    }
    let j = p.coupling;
    if j == 0.0 {
        return 0.0;
    }
    let excess = ((field - stag) * (field + stag)).sqrt();
    (excess / j).clamp(0.0, 1.0).acos()
}

/// `(λ⁺, λ⁻)` at continuous momentum `ω`.
pub fn dispersion_cont(omega: f64, p: &CouplingParams) -> (f64, f64) {
    let amp = mode_amplitude(p.coupling, omega.cos(), p.staggered);
    (2.0 * p.field + 2.0 * amp, 2.0 * p.field - 2.0 * amp)
}

/// `(λ_k⁺, λ_k⁻)` for mode `k` of a finite chain.
pub fn dispersion_finite(k: usize, chain: &FiniteChain, p: &CouplingParams) -> Result<(f64, f64)> {
    Ok(dispersion_cont(chain.mode_angle(k)?, p))
}

/// `θ_k = ½ atan2(b, J cos(πk/(N+1)))`.
///
/// With `b >= 0` this puts `2θ_k` in `[0, π)`; `J cos = b = 0` gives `0`.
pub fn bogoliubov_angle(k: usize, chain: &FiniteChain, p: &CouplingParams) -> Result<f64> {
    let c = chain.mode_angle(k)?.cos();
    Ok(0.5 * p.staggered.atan2(p.coupling * c))
}
