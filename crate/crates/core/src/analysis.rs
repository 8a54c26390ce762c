//! Entanglement boundaries and maximal-entropy curves of the infinite chain.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::model::{amplitude_d_staggered, CouplingParams, SiteParity, Temperature};
use crate::quadrature::{integrate, QuadConfig};
use crate::root::bisect;
use crate::thermo::{site_entropy, site_occupation, witness_thermo};

/// Points in the coarse field scan that brackets the outermost `W = 1` crossing.
pub const BOUNDARY_SCAN_POINTS: usize = 128;

/// Bisection stops once the bracket is narrower than this.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// `W` must exceed `1` by this much to count as a violation of the separable bound.
pub const WITNESS_MARGIN: f64 = 1e-12;

/// Outcome of a `W = 1` search along one parameter axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryResult {
    pub found: bool,
    /// Location of the crossing, present iff `found`.
    pub value: Option<f64>,
    /// Width of the final bisection interval.
    pub bracket: f64,
}

impl BoundaryResult {
    fn absent() -> Self {
        Self {
            found: false,
            value: None,
            bracket: 0.0,
        }
    }
}

/// Point of maximal (`S = 1`) odd-site entropy at `T = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakPoint {
    pub staggered: f64,
    /// `B_peak`, the uniform field at which `M = M_s`.
    pub field: f64,
    /// `B_peak − b`.
    pub epsilon: f64,
    /// The `b = 0` case, where the peak collapses onto `B = 0`.
    pub degenerate: bool,
}

/// What the witness says about a state. `Undetected` does not mean separable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    WitnessedEntangled,
    Undetected,
}

impl Verdict {
    pub fn from_witness(w: f64) -> Self {
        if w > 1.0 + WITNESS_MARGIN {
            Verdict::WitnessedEntangled
        } else {
            Verdict::Undetected
        }
    }

    pub fn is_entangled(&self) -> bool {
        matches!(self, Verdict::WitnessedEntangled)
    }
}

pub fn classify_point(p: &CouplingParams, t: Temperature) -> Result<Verdict> {
    Ok(Verdict::from_witness(witness_thermo(p, t)?))
}

fn require_positive_coupling(j: f64) -> Result<()> {
    if !(j.is_finite() && j > 0.0) {
        return Err(Error::InvalidParams(format!("J = {j} must be positive")));
    }
    Ok(())
}

/// Outermost crossing of `W(B) = 1` along `B >= 0`.
///
/// `W` is sampled at [`BOUNDARY_SCAN_POINTS`] fields on `[0, √(J² + b²) + 20T]`, the last
/// sample with `W >= 1` is located, and the crossing just beyond it is refined by bisection.
/// `W` need not be monotone in `B`.
pub fn witness_boundary_field(j: f64, b: f64, t: Temperature) -> Result<BoundaryResult> {
    require_positive_coupling(j)?;
    t.validate()?;
    let base = CouplingParams::new(j, 0.0, b)?;
    let upper = j.hypot(b) + 20.0 * t.value();
    let step = upper / (BOUNDARY_SCAN_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..BOUNDARY_SCAN_POINTS).map(|i| i as f64 * step).collect();
    let witness = |field: f64| witness_thermo(&base.with_field(field), t);

    let mut outermost = None;
    for (i, &field) in grid.iter().enumerate() {
        if witness(field)? >= 1.0 {
            outermost = Some(i);
        }
    }
    let Some(i) = outermost else {
        return Ok(BoundaryResult::absent());
    };
    if i + 1 == grid.len() {
        return Ok(BoundaryResult {
            found: true,
            value: Some(upper),
            bracket: 0.0,
        });
    }
    let f = |field: f64| witness(field).map_or(f64::NAN, |w| w - 1.0);
    let root = bisect(f, grid[i], grid[i + 1], BOUNDARY_TOL)?;
    Ok(BoundaryResult {
        found: true,
        value: Some(root.root),
        bracket: root.width(),
    })
}

/// Highest temperature with `W >= 1` at fixed `(J, B, b)`, scanning `T ∈ [0, 4(J + |B| + |b|)]`.
pub fn witness_boundary_temperature(p: &CouplingParams) -> Result<BoundaryResult> {
    p.validate()?;
    require_positive_coupling(p.coupling)?;
    let upper = 4.0 * (p.coupling + p.field.abs() + p.staggered.abs());
    let step = upper / (BOUNDARY_SCAN_POINTS - 1) as f64;
    let temp = |t: f64| {
        if t == 0.0 {
            Temperature::Zero
        } else {
            Temperature::Finite(t)
        }
    };
    let mut outermost = None;
    for i in 0..BOUNDARY_SCAN_POINTS {
        if witness_thermo(p, temp(i as f64 * step))? >= 1.0 {
            outermost = Some(i);
        }
    }
    let Some(i) = outermost else {
        return Ok(BoundaryResult::absent());
    };
    let lo = i as f64 * step;
    let f = |t: f64| witness_thermo(p, temp(t)).map_or(f64::NAN, |w| w - 1.0);
    let root = bisect(f, lo, lo + step, BOUNDARY_TOL)?;
    Ok(BoundaryResult {
        found: true,
        value: Some(root.root),
        bracket: root.width(),
    })
}

/// Staggered field above which the `T = 0` witness detects nothing.
///
/// At `T = 0` the witness is largest at `B = 0` for every `b`, so this is the root of
/// `W(J, 0, b, T = 0) = 1` on `b ∈ [0, J]`.
pub fn critical_staggered_field(j: f64, tol: f64) -> Result<f64> {
    require_positive_coupling(j)?;
    if tol.is_nan() || tol < 1e-8 {
        return Err(Error::InvalidParams(format!("tolerance {tol} below 1e-8")));
    }
    let f = |b: f64| {
        CouplingParams::new(j, 0.0, b)
            .and_then(|p| witness_thermo(&p, Temperature::Zero))
            .map_or(f64::NAN, |w| w - 1.0)
    };
    Ok(bisect(f, 0.0, j, tol)?.root)
}

/// `g(Ω) = Ω − π/2 + ∫₀^Ω b/√(J²cos²ω + b²) dω`, whose root is the odd-site `M = M_s` point.
fn odd_peak_condition(j: f64, b: f64, omega: f64) -> f64 {
    let integral = integrate(
        |w: f64| amplitude_d_staggered(j, w.cos(), b),
        0.0,
        omega,
        &[],
        QuadConfig::default(),
    );
    omega - FRAC_PI_2 + integral
}

/// Uniform field at which a site of the given parity is maximally entangled at `T = 0`.
///
/// Only odd sites have such a point for `b > 0`; for `b = 0` both parities peak at the
/// degenerate point `B = 0`.
pub fn max_entropy_field(j: f64, b: f64, parity: SiteParity) -> Result<PeakPoint> {
    require_positive_coupling(j)?;
    if !(b.is_finite() && b >= 0.0) {
        return Err(Error::InvalidParams(format!("b = {b} must be finite and non-negative")));
    }
    if b == 0.0 {
        return Ok(PeakPoint {
            staggered: 0.0,
            field: 0.0,
            epsilon: 0.0,
            degenerate: true,
        });
    }
    if parity == SiteParity::Even {
        return Err(Error::NoSolution(format!(
            "even sites reach S = 1 only at B = b = 0 (b = {b})"
        )));
    }

    let omega = bisect(|w| odd_peak_condition(j, b, w), 0.0, FRAC_PI_2, 0.0)?.root;
    let field = (j * omega.cos()).hypot(b);
    let peak = PeakPoint {
        staggered: b,
        field,
        epsilon: field - b,
        degenerate: false,
    };
    let p = CouplingParams::new(j, field, b)?;
    let s = site_entropy(&p, SiteParity::Odd, Temperature::Zero)?;
    if (s.entropy - 1.0).abs() > 1e-9 {
        let eta = site_occupation(&p, SiteParity::Odd, Temperature::Zero)?.eta;
        return Err(Error::OracleInconsistency(format!(
            "peak at J = {j}, b = {b}, B = {field}: S = {}, η = {eta}",
            s.entropy
        )));
    }
    Ok(peak)
}

/// `max_entropy_field` for odd sites along an ascending grid of positive `b`.
pub fn epsilon_curve(j: f64, b_grid: &[f64]) -> Result<Vec<PeakPoint>> {
    if b_grid.iter().any(|&b| b.is_nan() || b <= 0.0) {
        return Err(Error::InvalidParams("staggered-field grid must be positive".into()));
    }
    if b_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams("staggered-field grid must be ascending".into()));
    }
    b_grid
        .iter()
        .map(|&b| max_entropy_field(j, b, SiteParity::Odd))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(j: f64, field: f64, staggered: f64) -> CouplingParams {
        CouplingParams::new(j, field, staggered).unwrap()
    }

    fn closed_form_b0_boundary() -> f64 {
        (1.0 - PI * PI / 16.0).sqrt()
    }

    #[test]
    fn zero_temperature_boundary_without_staggering() {
        let r = witness_boundary_field(1.0, 0.0, Temperature::Zero).unwrap();
        assert!(r.found);
        let b_star = r.value.unwrap();
        assert!((b_star - closed_form_b0_boundary()).abs() < 1e-9);
        assert!(r.bracket <= 1e-8);
        let w = witness_thermo(&params(1.0, b_star, 0.0), Temperature::Zero).unwrap();
        assert!((w - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn no_boundary_above_critical_or_when_hot() {
        assert!(!witness_boundary_field(1.0, 0.8, Temperature::Zero).unwrap().found);
        let hot = witness_boundary_field(1.0, 0.0, Temperature::Finite(2.0)).unwrap();
        assert_eq!(hot, BoundaryResult::absent());
    }

    #[test]
    fn boundary_has_unit_witness_at_finite_temperature() {
        for (b, t) in [(0.0, 0.2), (0.3, 0.1), (0.45, 0.05)] {
            let r = witness_boundary_field(1.0, b, Temperature::Finite(t)).unwrap();
            assert!(r.found);
            let w = witness_thermo(&params(1.0, r.value.unwrap(), b), Temperature::Finite(t)).unwrap();
            assert!((w - 1.0).abs() <= 1e-6, "b={b} T={t}: W={w}");
            assert!(r.bracket <= 1e-8);
        }
    }

    #[test]
    fn classification_flips_once_across_boundary() {
        for (b, t) in [(0.0, Temperature::Zero), (0.3, Temperature::Zero), (0.2, Temperature::Finite(0.3))] {
            let b_star = witness_boundary_field(1.0, b, t).unwrap().value.unwrap();
            let inside = classify_point(&params(1.0, b_star - 1e-6, b), t).unwrap();
            let outside = classify_point(&params(1.0, b_star + 1e-6, b), t).unwrap();
            assert_eq!(inside, Verdict::WitnessedEntangled);
            assert_eq!(outside, Verdict::Undetected);
        }
    }

    #[test]
    fn boundary_field_is_nearly_flat_below_critical() {
        let reference = witness_boundary_field(1.0, 0.0, Temperature::Zero).unwrap().value.unwrap();
        for b in [0.1, 0.2, 0.3, 0.4] {
            let v = witness_boundary_field(1.0, b, Temperature::Zero).unwrap().value.unwrap();
            assert!((v - reference).abs() <= 0.05, "b={b}: {v}");
        }
    }

    #[test]
    fn entangled_temperature_range_shrinks_with_staggering() {
        let limits: Vec<f64> = [0.0, 0.2, 0.4]
            .iter()
            .map(|&b| {
                witness_boundary_temperature(&params(1.0, 0.0, b))
                    .unwrap()
                    .value
                    .unwrap()
            })
            .collect();
        assert!(limits.windows(2).all(|w| w[1] < w[0]), "{limits:?}");
    }

    #[test]
    fn critical_field() {
        let bc = critical_staggered_field(1.0, 1e-8).unwrap();
        assert!((bc - 0.56).abs() <= 5e-3, "b_c = {bc}");
        let w = witness_thermo(&params(1.0, 0.0, bc), Temperature::Zero).unwrap();
        assert!((w - 1.0).abs() <= 1e-8);
        for s in [0.5, 2.0] {
            let scaled = critical_staggered_field(s, 1e-8).unwrap();
            assert!((scaled - s * bc).abs() <= 1e-6);
        }
        assert!(critical_staggered_field(1.0, 1e-9).is_err());
        assert!(critical_staggered_field(0.0, 1e-8).is_err());
    }

    #[test]
    fn zero_field_maximizes_zero_temperature_witness() {
        for b in [0.0, 0.2, 0.5, 0.8, 1.5] {
            let at_zero = witness_thermo(&params(1.0, 0.0, b), Temperature::Zero).unwrap();
            for i in 1..=60 {
                let field = 0.05 * i as f64;
                let w = witness_thermo(&params(1.0, field, b), Temperature::Zero).unwrap();
                assert!(w <= at_zero + 1e-12, "b={b} B={field}");
            }
        }
    }

    #[test]
    fn odd_peak_examples() {
        let peak = max_entropy_field(1.0, 1.0, SiteParity::Odd).unwrap();
        assert!(peak.field > 1.0 && peak.field < 2f64.sqrt());
        assert!((peak.field - 1.18).abs() < 5e-3);
        assert!(!peak.degenerate);
        let occ = site_occupation(&params(1.0, peak.field, 1.0), SiteParity::Odd, Temperature::Zero).unwrap();
        assert!((occ.eta - 0.5).abs() <= 1e-9);
        assert!(matches!(
            max_entropy_field(1.0, 1.0, SiteParity::Even),
            Err(Error::NoSolution(_))
        ));
    }

    #[test]
    fn degenerate_and_small_coupling_peaks() {
        for parity in [SiteParity::Even, SiteParity::Odd] {
            let p = max_entropy_field(1.0, 0.0, parity).unwrap();
            assert!(p.degenerate);
            assert_eq!((p.field, p.epsilon), (0.0, 0.0));
        }
        let weak = max_entropy_field(1e-4, 1.0, SiteParity::Odd).unwrap();
        assert!(weak.epsilon > 0.0 && weak.epsilon < 1e-8);
    }

    #[test]
    fn epsilon_curve_ordering() {
        let grid = [1.0, 2.0, 4.0];
        let one = epsilon_curve(1.0, &grid).unwrap();
        let two = epsilon_curve(2.0, &grid).unwrap();
        assert!(one.windows(2).all(|w| w[1].epsilon < w[0].epsilon));
        assert!(one.iter().zip(&two).all(|(a, b)| b.epsilon > a.epsilon));
        for p in &one {
            assert!(p.staggered < p.field && p.field <= (1.0 + p.staggered * p.staggered).sqrt());
        }
        assert!(epsilon_curve(1.0, &[2.0, 1.0]).is_err());
        assert!(epsilon_curve(1.0, &[0.0, 1.0]).is_err());
    }

    #[test]
    fn classification_examples() {
        assert!(classify_point(&params(1.0, 0.0, 0.0), Temperature::Zero).unwrap().is_entangled());
        assert_eq!(classify_point(&params(1.0, 2.0, 0.0), Temperature::Zero).unwrap(), Verdict::Undetected);
        assert_eq!(
            classify_point(&params(1.0, 0.0, 0.0), Temperature::Finite(2.0)).unwrap(),
            Verdict::Undetected
        );
    }
}
