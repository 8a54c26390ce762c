//! Self-consistency harness: dense oracle versus free-fermion formulas, and analytic
//! derivatives versus finite differences of `ln Z`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::model::{CouplingParams, FiniteChain, Temperature};
use crate::oracle::ExactChain;
use crate::{fermion, thermo};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_CASES: usize = 20;
pub const DEFAULT_SIZES: [usize; 4] = [2, 4, 6, 8];

/// Central-difference step for the derivative-closure checks.
pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub log_partition: f64,
    pub witness: f64,
    pub magnetization: f64,
    pub ground_energy: f64,
    pub derivative: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            log_partition: 1e-9,
            witness: 1e-8,
            magnetization: 1e-8,
            ground_energy: 1e-9,
            derivative: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            log_partition: s * self.log_partition,
            witness: s * self.witness,
            magnetization: s * self.magnetization,
            ground_energy: s * self.ground_energy,
            derivative: s * self.derivative,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub seed: u64,
    pub cases: usize,
    pub sizes: Vec<usize>,
    pub tolerances: Tolerances,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            cases: DEFAULT_CASES,
            sizes: DEFAULT_SIZES.to_vec(),
            tolerances: Tolerances::default(),
        }
    }
}

/// Largest deviation seen for one compared quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub quantity: &'static str,
    pub max: f64,
    pub tolerance: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub quantity: &'static str,
    /// `None` for thermodynamic-limit checks.
    pub sites: Option<usize>,
    pub params: CouplingParams,
    pub temperature: f64,
    pub deviation: f64,
    pub tolerance: f64,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let size = self.sites.map_or("N=inf".to_string(), |n| format!("N={n}"));
        write!(
            f,
            "{}: {size} J={} B={} b={} T={} deviation {:e} > {:e}",
            self.quantity,
            self.params.coupling,
            self.params.field,
            self.params.staggered,
            self.temperature,
            self.deviation,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckReport {
    pub deviations: Vec<Deviation>,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn max_deviation(&self, quantity: &str) -> Option<f64> {
        self.deviations
            .iter()
            .find(|d| d.quantity == quantity)
            .map(|d| d.max)
    }

    fn record(
        &mut self,
        quantity: &'static str,
        sites: Option<usize>,
        params: CouplingParams,
        temperature: f64,
        deviation: f64,
        tolerance: f64,
    ) {
        // false for NaN
        let ok = deviation <= tolerance;
        match self.deviations.iter_mut().find(|d| d.quantity == quantity) {
            Some(d) => {
                d.max = d.max.max(deviation);
                d.samples += 1;
            }
            None => self.deviations.push(Deviation {
                quantity,
                max: deviation,
                tolerance,
                samples: 1,
            }),
        }
        if !ok {
            self.failures.push(Failure {
                quantity,
                sites,
                params,
                temperature,
                deviation,
                tolerance,
            });
        }
    }
}

fn draw(rng: &mut ChaCha8Rng) -> (CouplingParams, f64) {
    let p = CouplingParams {
        coupling: rng.random_range(0.2..2.0),
        field: rng.random_range(0.0..2.0),
        staggered: rng.random_range(0.0..2.0),
    };
    (p, rng.random_range(0.1..5.0))
}

fn central<F: Fn(f64) -> Result<f64>>(f: F, x: f64) -> Result<f64> {
    Ok((f(x + FD_STEP)? - f(x - FD_STEP)?) / (2.0 * FD_STEP))
}

fn compare_with_oracle(
    report: &mut CheckReport,
    chain: FiniteChain,
    p: CouplingParams,
    t: f64,
    tol: &Tolerances,
) -> Result<()> {
    let n = Some(chain.sites());
    let temp = Temperature::Finite(t);
    let exact = ExactChain::new(chain, p)?;

    let ln_z = fermion::log_partition_finite(&chain, &p, temp)?;
    report.record("lnZ", n, p, t, (ln_z - exact.log_partition(temp)?).abs(), tol.log_partition);
    let w = fermion::witness_finite(&chain, &p, temp)?;
    report.record("W", n, p, t, (w - exact.witness(temp)?).abs(), tol.witness);
    let m = fermion::magnetization_finite(&chain, &p, temp)?;
    report.record("M", n, p, t, (m - exact.magnetization(temp)?).abs(), tol.magnetization);
    let ms = fermion::staggered_magnetization_finite(&chain, &p, temp)?;
    report.record(
        "M_s",
        n,
        p,
        t,
        (ms - exact.staggered_magnetization(temp)?).abs(),
        tol.magnetization,
    );
    let e0 = fermion::ground_energy_finite(&chain, &p);
    report.record("E0", n, p, t, (e0 - exact.ground_energy()).abs(), tol.ground_energy);

    let ln_z_at = |q: CouplingParams| fermion::log_partition_finite(&chain, &q, temp);
    let sites = chain.sites() as f64;
    let dj = central(|x| ln_z_at(p.with_coupling(x)), p.coupling)?;
    let db = central(|x| ln_z_at(p.with_field(x)), p.field)?;
    let ds = central(|x| ln_z_at(p.with_staggered(x)), p.staggered)?;
    report.record("dlnZ/dJ (finite N)", n, p, t, (w - 2.0 * t * dj / sites).abs(), tol.derivative);
    report.record("dlnZ/dB (finite N)", n, p, t, (m - t * db).abs(), tol.derivative);
    report.record("dlnZ/db (finite N)", n, p, t, (ms - t * ds).abs(), tol.derivative);
    Ok(())
}

fn thermodynamic_closure(report: &mut CheckReport, p: CouplingParams, t: f64, tol: &Tolerances) -> Result<()> {
    let temp = Temperature::Finite(t);
    let ln_z_at = |q: CouplingParams| thermo::log_partition_density(&q, temp);
    let dj = central(|x| ln_z_at(p.with_coupling(x)), p.coupling)?;
    let db = central(|x| ln_z_at(p.with_field(x)), p.field)?;
    let ds = central(|x| ln_z_at(p.with_staggered(x)), p.staggered)?;
    let w = thermo::witness_thermo(&p, temp)?;
    let m = thermo::magnetization_density(&p, temp)?;
    let ms = thermo::staggered_magnetization_density(&p, temp)?;
    report.record("dlnZ/dJ (N=inf)", None, p, t, (w - 2.0 * t * dj).abs(), tol.derivative);
    report.record("dlnZ/dB (N=inf)", None, p, t, (m - t * db).abs(), tol.derivative);
    report.record("dlnZ/db (N=inf)", None, p, t, (ms - t * ds).abs(), tol.derivative);
    Ok(())
}

/// Run every comparison for `cfg.cases` seeded draws per chain length, plus one `J = 0`
/// draw per length where both routes must give exactly `W = 0`.
pub fn run(cfg: &CheckConfig) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = CheckReport::default();
    let tol = &cfg.tolerances;

    for &n in &cfg.sizes {
        let chain = FiniteChain::new(n)?;
        for _ in 0..cfg.cases {
            let (p, t) = draw(&mut rng);
            compare_with_oracle(&mut report, chain, p, t, tol)?;
        }
        let (mut p, t) = draw(&mut rng);
        p.coupling = 0.0;
        let temp = Temperature::Finite(t);
        let w_fermion = fermion::witness_finite(&chain, &p, temp)?;
        let w_oracle = ExactChain::new(chain, p)?.witness(temp)?;
        let worst = w_fermion.abs().max(w_oracle.abs());
        report.record("W at J=0", Some(n), p, t, worst, 0.0);
    }
    for _ in 0..cfg.cases {
        let (p, t) = draw(&mut rng);
        thermodynamic_closure(&mut report, p, t, tol)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CheckConfig {
        CheckConfig {
            cases: 3,
            sizes: vec![2, 4],
            ..CheckConfig::default()
        }
    }

    #[test]
    fn default_tolerances_pass() {
        let report = run(&small()).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.max_deviation("W at J=0"), Some(0.0));
        assert!(report.max_deviation("lnZ").unwrap() < 1e-9);
    }

    #[test]
    fn zeroed_tolerances_fail() {
        let cfg = CheckConfig {
            tolerances: Tolerances::default().scaled(0.0),
            ..small()
        };
        let report = run(&cfg).unwrap();
        assert!(!report.passed());
        assert!(report.failures.iter().all(|f| f.quantity != "W at J=0"));
        assert!(report.failures[0].to_string().contains("deviation"));
    }

    #[test]
    fn deterministic_for_a_seed() {
        assert_eq!(run(&small()).unwrap(), run(&small()).unwrap());
    }
}
