//! Thermodynamic-limit observables.
//!
//! With `ω = πk/N` continuous, mode sums become `(N/π)∫₀^{π/2} dω`. Finite temperatures
//! are integrated numerically; at `T = 0` the `tanh` factors are replaced by their sign
//! limits and the integrals run up to the Fermi-edge angle `Ω`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::model::{
    amplitude_d_coupling, amplitude_d_staggered, dispersion_cont, ln_two_cosh, omega_cutoff, sign0,
    CouplingParams, SiteParity, Temperature,
};
use crate::quadrature::{integrate, QuadConfig};

/// `βJ` above which the finite-temperature integrand is split at `Ω`.
const STEEP_FRONT_BETA_J: f64 = 20.0;

/// Per-site observables of the infinite chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoObservables {
    /// `ln Z / N`, absent at `T = 0`.
    pub ln_z_density: Option<f64>,
    /// `−T ln Z / N`, absent at `T = 0`.
    pub free_energy_density: Option<f64>,
    pub witness: f64,
    /// `M / N`.
    pub magnetization: f64,
    /// `M_s / N`.
    pub staggered_magnetization: f64,
    /// Fermi-edge angle `Ω`.
    pub omega: f64,
}

/// Occupation `η` of the σᶻ = +1 state of one site, `ρ_l = diag(η, 1 − η)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteOccupation {
    pub eta: f64,
    /// Set when `η` was evaluated at finite temperature, where the single-site state is
    /// mixed for reasons other than entanglement.
    pub finite_temperature_extension: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyPoint {
    pub eta: f64,
    /// Binary entropy in bits.
    pub entropy: f64,
}

/// `−η log₂ η − (1 − η) log₂(1 − η)` with `0 log 0 = 0`.
pub fn binary_entropy(eta: f64) -> f64 {
    let h = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    h(eta) + h(1.0 - eta)
}

/// `∫₀^{π/2} g(tanh(βλ⁺/2), tanh(βλ⁻/2), cos ω) dω` at finite temperature.
fn thermal_integral<G>(p: &CouplingParams, beta: f64, g: G) -> f64
where
    G: Fn(f64, f64, f64) -> f64,
{
    let t = Temperature::Finite(1.0 / beta);
    let integrand = |omega: f64| {
        let (lp, lm) = dispersion_cont(omega, p);
        g(t.mode_polarization(lp), t.mode_polarization(lm), omega.cos())
    };
    integrate(integrand, 0.0, FRAC_PI_2, &split_points(p, Some(beta)), QuadConfig::default())
}

fn split_points(p: &CouplingParams, beta: Option<f64>) -> Vec<f64> {
    match beta {
        Some(beta) if beta * p.coupling <= STEEP_FRONT_BETA_J => Vec::new(),
        _ => vec![omega_cutoff(p)],
    }
}

/// `ln Z / N = (1/π) ∫₀^{π/2} ln[4 cosh(βλ⁺/2) cosh(βλ⁻/2)] dω`.
pub fn log_partition_density(p: &CouplingParams, t: Temperature) -> Result<f64> {
    p.validate()?;
    t.validate()?;
    let beta = t.beta().ok_or(Error::ZeroTemperature)?;
    let integrand = |omega: f64| {
        let (lp, lm) = dispersion_cont(omega, p);
        ln_two_cosh(0.5 * beta * lp) + ln_two_cosh(0.5 * beta * lm)
    };
    let total = integrate(integrand, 0.0, FRAC_PI_2, &split_points(p, Some(beta)), QuadConfig::default());
    Ok(total / PI)
}

/// `W = 2T ∂(ln Z/N)/∂J`.
///
/// Finite `T`: `(2/π)∫₀^{π/2} [tanh(βλ⁺/2) − tanh(βλ⁻/2)] J cos²ω/√(J²cos²ω + b²) dω`.
/// `T = 0`: `(4/π)∫₀^Ω J cos²ω/√(J²cos²ω + b²) dω`.
pub fn witness_thermo(p: &CouplingParams, t: Temperature) -> Result<f64> {
    p.validate()?;
    t.validate()?;
    let (j, b) = (p.coupling, p.staggered);
    let value = match t.beta() {
        Some(beta) => {
            2.0 / PI * thermal_integral(p, beta, |tp, tm, c| (tp - tm) * amplitude_d_coupling(j, c, b))
        }
        None => {
            let omega = omega_cutoff(p);
            let f = |w: f64| amplitude_d_coupling(j, w.cos(), b);
            4.0 / PI * integrate(f, 0.0, omega, &[], QuadConfig::default())
        }
    };
    Ok(value)
}

/// `m = M/N`. At `T = 0` this is `1 − 2Ω/π` (odd in `B`).
pub fn magnetization_density(p: &CouplingParams, t: Temperature) -> Result<f64> {
    p.validate()?;
    t.validate()?;
    Ok(match t.beta() {
        Some(beta) => thermal_integral(p, beta, |tp, tm, _| tp + tm) / PI,
        None => sign0(p.field) * (1.0 - 2.0 * omega_cutoff(p) / PI),
    })
}

/// `m_s = M_s/N`. At `T = 0` this is `(1/π)∫₀^Ω 2b/√(J²cos²ω + b²) dω`; `b = 0` gives `0`.
pub fn staggered_magnetization_density(p: &CouplingParams, t: Temperature) -> Result<f64> {
    p.validate()?;
    t.validate()?;
    let (j, b) = (p.coupling, p.staggered);
    if b == 0.0 {
        return Ok(0.0);
    }
    Ok(match t.beta() {
        Some(beta) => {
            thermal_integral(p, beta, |tp, tm, c| (tp - tm) * amplitude_d_staggered(j, c, b)) / PI
        }
        None => {
            let omega = omega_cutoff(p);
            let f = |w: f64| 2.0 * amplitude_d_staggered(j, w.cos(), b);
            integrate(f, 0.0, omega, &[], QuadConfig::default()) / PI
        }
    })
}

/// `η = ½[1 + m + (−1)^l m_s]`, clamped to `[0, 1]`.
pub fn site_occupation(p: &CouplingParams, parity: SiteParity, t: Temperature) -> Result<SiteOccupation> {
    let m = magnetization_density(p, t)?;
    let ms = staggered_magnetization_density(p, t)?;
    Ok(SiteOccupation {
        eta: (0.5 * (1.0 + m + parity.sign() * ms)).clamp(0.0, 1.0),
        finite_temperature_extension: !t.is_zero(),
    })
}

/// Ground-state entropy of one site. Only `T = 0` is accepted: at finite temperature the
/// whole chain is mixed and the single-site entropy no longer measures entanglement.
pub fn site_entropy(p: &CouplingParams, parity: SiteParity, t: Temperature) -> Result<EntropyPoint> {
    if !t.is_zero() {
        return Err(Error::FiniteTemperatureUnsupported);
    }
    let eta = site_occupation(p, parity, t)?.eta;
    Ok(EntropyPoint {
        eta,
        entropy: binary_entropy(eta),
    })
}

pub fn observables(p: &CouplingParams, t: Temperature) -> Result<ThermoObservables> {
    let ln_z_density = match t {
        Temperature::Zero => None,
        Temperature::Finite(_) => Some(log_partition_density(p, t)?),
    };
    Ok(ThermoObservables {
        ln_z_density,
        free_energy_density: ln_z_density.map(|l| -t.value() * l),
        witness: witness_thermo(p, t)?,
        magnetization: magnetization_density(p, t)?,
        staggered_magnetization: staggered_magnetization_density(p, t)?,
        omega: omega_cutoff(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion;
    use crate::model::FiniteChain;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(j: f64, field: f64, staggered: f64) -> CouplingParams {
        CouplingParams::new(j, field, staggered).unwrap()
    }

    const FD_STEP: f64 = 1e-5;

    fn central<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
        (f(x + FD_STEP) - f(x - FD_STEP)) / (2.0 * FD_STEP)
    }

    #[test]
    fn log_partition_examples() {
        let lnz = log_partition_density(&params(0.0, 1.0, 0.0), Temperature::Finite(1.0)).unwrap();
        assert!((lnz - (2.0 * 1f64.cosh()).ln()).abs() < 1e-12);
        let hot = log_partition_density(&params(1.2, 0.7, 0.4), Temperature::Finite(1e6)).unwrap();
        assert!((hot - 2f64.ln()).abs() < 1e-6);
        assert_eq!(
            log_partition_density(&params(1.0, 0.0, 0.0), Temperature::Zero),
            Err(Error::ZeroTemperature)
        );
        let chain = FiniteChain::new(400).unwrap();
        let p = params(1.0, 0.0, 0.0);
        let finite = fermion::log_partition_finite(&chain, &p, Temperature::Finite(1.0)).unwrap() / 400.0;
        let dense = log_partition_density(&p, Temperature::Finite(1.0)).unwrap();
        assert!((finite - dense).abs() < 2e-3);
    }

    #[test]
    fn witness_examples() {
        let w = witness_thermo(&params(1.0, 0.0, 0.0), Temperature::Zero).unwrap();
        assert!((w - 4.0 / PI).abs() < 1e-12);
        let w = witness_thermo(&params(1.0, 0.0, 0.56), Temperature::Zero).unwrap();
        assert!((w - 1.0).abs() < 2e-3);
        assert_eq!(witness_thermo(&params(1.0, 2.0, 0.0), Temperature::Zero).unwrap(), 0.0);
        let w = witness_thermo(&params(1.0, 0.0, 0.0), Temperature::Finite(2.0)).unwrap();
        assert!((w - 0.47).abs() < 5e-3);
    }

    #[test]
    fn magnetization_examples() {
        assert_eq!(magnetization_density(&params(1.0, 2.0, 0.0), Temperature::Zero).unwrap(), 1.0);
        assert_eq!(magnetization_density(&params(1.0, 0.0, 0.0), Temperature::Zero).unwrap(), 0.0);
        let m = magnetization_density(&params(1.0, 0.5f64.sqrt(), 0.0), Temperature::Zero).unwrap();
        assert!((m - 0.5).abs() < 1e-15);
    }

    #[test]
    fn staggered_magnetization_examples() {
        for t in [Temperature::Zero, Temperature::Finite(0.4)] {
            assert_eq!(staggered_magnetization_density(&params(1.0, 0.3, 0.0), t).unwrap(), 0.0);
        }
        let ms = staggered_magnetization_density(&params(0.0, 0.0, 1.0), Temperature::Zero).unwrap();
        assert!((ms - 1.0).abs() < 1e-14);
        assert_eq!(staggered_magnetization_density(&params(1.0, 2.0, 0.5), Temperature::Zero).unwrap(), 0.0);
    }

    #[test]
    fn occupation_and_entropy_examples() {
        for parity in [SiteParity::Even, SiteParity::Odd] {
            let occ = site_occupation(&params(1.0, 0.0, 0.0), parity, Temperature::Zero).unwrap();
            assert_eq!(occ.eta, 0.5);
            assert!(!occ.finite_temperature_extension);
            let s = site_entropy(&params(1.0, 0.0, 0.0), parity, Temperature::Zero).unwrap();
            assert_eq!(s.entropy, 1.0);
            let s = site_entropy(&params(1.0, 2.0, 0.0), parity, Temperature::Zero).unwrap();
            assert_eq!((s.eta, s.entropy), (1.0, 0.0));
        }
        let occ = site_occupation(&params(0.0, 0.0, 1.0), SiteParity::Odd, Temperature::Zero).unwrap();
        assert!(occ.eta.abs() < 1e-14);
        let s = site_entropy(&params(0.0, 0.0, 1.0), SiteParity::Odd, Temperature::Zero).unwrap();
        assert!(s.entropy < 1e-12);
        let warm = site_occupation(&params(1.0, 0.2, 0.1), SiteParity::Even, Temperature::Finite(0.5)).unwrap();
        assert!(warm.finite_temperature_extension);
        assert_eq!(
            site_entropy(&params(1.0, 0.0, 0.0), SiteParity::Odd, Temperature::Finite(0.1)),
            Err(Error::FiniteTemperatureUnsupported)
        );
    }

    #[test]
    fn binary_entropy_edges() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert_eq!(binary_entropy(0.5), 1.0);
    }

    #[test]
    fn derivative_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let p = params(
                rng.random_range(0.2..2.0),
                rng.random_range(0.0..2.0),
                rng.random_range(0.0..2.0),
            );
            let t = rng.random_range(0.1..5.0);
            let temp = Temperature::Finite(t);
            let lnz = |q: CouplingParams| log_partition_density(&q, temp).unwrap();
            let dj = central(|x| lnz(p.with_coupling(x)), p.coupling);
            let db = central(|x| lnz(p.with_field(x)), p.field);
            let ds = central(|x| lnz(p.with_staggered(x)), p.staggered);
            let w = witness_thermo(&p, temp).unwrap();
            let m = magnetization_density(&p, temp).unwrap();
            let ms = staggered_magnetization_density(&p, temp).unwrap();
            assert!((w - 2.0 * t * dj).abs() < 1e-8, "{p:?} T={t}: {w} vs {}", 2.0 * t * dj);
            assert!((m - t * db).abs() < 1e-8, "{p:?} T={t}: {m} vs {}", t * db);
            assert!((ms - t * ds).abs() < 1e-8, "{p:?} T={t}: {ms} vs {}", t * ds);
        }
    }

    #[test]
    fn zero_temperature_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut checked = 0;
        while checked < 20 {
            let p = params(
                rng.random_range(0.2..2.0),
                rng.random_range(0.0..2.0),
                rng.random_range(0.0..2.0),
            );
            let edge = p.coupling.hypot(p.staggered);
            if (p.field - p.staggered).abs() <= 0.05 || (p.field - edge).abs() <= 0.05 {
                continue;
            }
            checked += 1;
            let cold = Temperature::Finite(1e-4);
            let pairs = [
                (witness_thermo(&p, cold), witness_thermo(&p, Temperature::Zero)),
                (magnetization_density(&p, cold), magnetization_density(&p, Temperature::Zero)),
                (
                    staggered_magnetization_density(&p, cold),
                    staggered_magnetization_density(&p, Temperature::Zero),
                ),
            ];
            for (a, b) in pairs {
                let (a, b) = (a.unwrap(), b.unwrap());
                assert!((a - b).abs() < 1e-3, "{p:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn observables_bundle() {
        let p = params(1.0, 0.3, 0.2);
        let o = observables(&p, Temperature::Finite(0.5)).unwrap();
        let lnz = o.ln_z_density.unwrap();
        assert_eq!(o.free_energy_density, Some(-0.5 * lnz));
        assert_eq!(o.omega, omega_cutoff(&p));
        let z = observables(&p, Temperature::Zero).unwrap();
        assert!(z.ln_z_density.is_none() && z.free_energy_density.is_none());
        assert!(z.witness <= 4.0 / PI + 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn parity_and_bounds(
            j in 0.0..2.0f64,
            field in 0.0..3.0f64,
            stag in 0.0..3.0f64,
            t in prop_oneof![Just(0.0), 0.05..5.0f64],
        ) {
            let p = params(j, field, stag);
            let temp = if t == 0.0 { Temperature::Zero } else { Temperature::Finite(t) };
            let o = observables(&p, temp).unwrap();
            prop_assert!(o.witness.abs() <= 4.0 / PI + 1e-9);
            prop_assert!((-1.0..=1.0).contains(&o.magnetization));
            prop_assert!((-1.0..=1.0).contains(&o.staggered_magnetization));
            let neg_b = observables(&p.with_field(-field), temp).unwrap();
            let neg_s = observables(&p.with_staggered(-stag), temp).unwrap();
            prop_assert!((neg_b.witness - o.witness).abs() < 1e-12);
            prop_assert!((neg_s.witness - o.witness).abs() < 1e-12);
            prop_assert!((neg_b.magnetization + o.magnetization).abs() < 1e-12);
            prop_assert!((neg_s.staggered_magnetization + o.staggered_magnetization).abs() < 1e-12);
            if let Some(l) = o.ln_z_density {
                prop_assert!((neg_b.ln_z_density.unwrap() - l).abs() < 1e-12);
                prop_assert!((neg_s.ln_z_density.unwrap() - l).abs() < 1e-12);
            }
            if t == 0.0 {
                for parity in [SiteParity::Even, SiteParity::Odd] {
                    let s = site_entropy(&p, parity, temp).unwrap();
                    let mirrored = site_entropy(&p.with_staggered(-stag), parity.flipped(), temp).unwrap();
                    prop_assert!((s.entropy - mirrored.entropy).abs() < 1e-12);
                }
            }
        }
    }
}
