//! Brute-force ground truth by dense exact diagonalization.
//!
//! The Hamiltonian is assembled as a real symmetric `2^N × 2^N` matrix in the σᶻ product
//! basis. Bit `l - 1` of a basis index is the state of site `l`, with a set bit meaning
//! σᶻ = +1. Nothing here uses the free-fermion solution; the two routes are compared in
//! tests and by the `check` harness.

use num_complex::Complex64;

use crate::eigen::SymmetricEigen;
use crate::error::{Error, Result};
use crate::model::{CouplingParams, FiniteChain, SiteParity, Temperature};

/// Largest chain handled by the dense oracle.
pub const MAX_SITES: usize = 12;

/// Energies closer than this to the ground energy count as degenerate with it.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// A real symmetric operator on the `2^N`-dimensional chain Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    sites: usize,
    dim: usize,
    entries: Vec<f64>,
}

impl DenseOperator {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

fn check_chain(chain: &FiniteChain) -> Result<()> {
    if chain.sites() > MAX_SITES {
        return Err(Error::ChainTooLarge {
            sites: chain.sites(),
            max: MAX_SITES,
        });
    }
    Ok(())
}

fn spin_z(state: usize, site: usize) -> f64 {
    if state >> (site - 1) & 1 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Basis state reached by flipping both spins of bond `(l, l+1)`, if they are anti-aligned.
fn bond_flip(state: usize, l: usize) -> Option<usize> {
    let mask = 0b11 << (l - 1);
    let pair = state & mask;
    if pair == 0 || pair == mask {
        None
    } else {
        Some(state ^ mask)
    }
}

/// Hamiltonian of the open chain.
///
/// `(σˣσˣ + σʸσʸ)/2` exchanges `|01⟩ ↔ |10⟩` with unit amplitude, so each anti-aligned bond
/// contributes an off-diagonal `-J`. The diagonal is `-Σ_l B_l σᶻ_l`.
pub fn build_hamiltonian(chain: &FiniteChain, p: &CouplingParams) -> Result<DenseOperator> {
    check_chain(chain)?;
    p.validate()?;
    let n = chain.sites();
    let dim = 1usize << n;
    let mut entries = vec![0.0; dim * dim];
    let fields: Vec<f64> = (1..=n)
        .map(|l| p.local_field(SiteParity::of_site(l)))
        .collect();
    for s in 0..dim {
        entries[s * dim + s] = -(1..=n).map(|l| fields[l - 1] * spin_z(s, l)).sum::<f64>();
        for l in 1..n {
            if let Some(t) = bond_flip(s, l) {
                entries[t * dim + s] = -p.coupling;
            }
        }
    }
    Ok(DenseOperator {
        sites: n,
        dim,
        entries,
    })
}

#[derive(Debug, Clone)]
struct Block {
    basis: Vec<usize>,
    eigen: SymmetricEigen,
}

#[derive(Debug, Clone, Copy)]
struct Level {
    energy: f64,
    block: usize,
    index: usize,
}

/// Eigen-decomposition of a [`DenseOperator`].
///
/// The matrix is first split into its connected blocks (for the XX chain these are the
/// fixed-magnetization sectors), each diagonalized by Jacobi rotations.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    sites: usize,
    dim: usize,
    blocks: Vec<Block>,
    levels: Vec<Level>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl SpectralDecomposition {
    pub fn of(h: &DenseOperator) -> Self {
        let dim = h.dim();
        let mut parent: Vec<usize> = (0..dim).collect();
        for i in 0..dim {
            for j in 0..i {
                if h.get(i, j) != 0.0 || h.get(j, i) != 0.0 {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); dim];
        for i in 0..dim {
            let r = find(&mut parent, i);
            members[r].push(i);
        }

        let mut blocks = Vec::new();
        let mut levels = Vec::with_capacity(dim);
        for basis in members.into_iter().filter(|m| !m.is_empty()) {
            let m = basis.len();
            let mut sub = vec![0.0; m * m];
            for (a, &i) in basis.iter().enumerate() {
                for (b, &j) in basis.iter().enumerate() {
                    sub[a * m + b] = h.get(i, j);
                }
            }
            let eigen = SymmetricEigen::jacobi(&sub, m);
            let block = blocks.len();
            levels.extend(eigen.values.iter().enumerate().map(|(index, &energy)| Level {
                energy,
                block,
                index,
            }));
            blocks.push(Block { basis, eigen });
        }
        levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        Self {
            sites: h.sites(),
            dim,
            blocks,
            levels,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn ground_energy(&self) -> f64 {
        self.levels[0].energy
    }

    /// `E₁ − E₀` (zero for a one-dimensional space).
    pub fn gap(&self) -> f64 {
        self.levels.get(1).map_or(0.0, |l| l.energy - self.levels[0].energy)
    }

    /// Dense eigenvector of the `n`-th lowest level.
    pub fn eigenvector(&self, n: usize) -> Vec<f64> {
        let level = self.levels[n];
        let block = &self.blocks[level.block];
        let mut v = vec![0.0; self.dim];
        for (a, &i) in block.basis.iter().enumerate() {
            v[i] = block.eigen.vectors[a * block.basis.len() + level.index];
        }
        v
    }

    /// `max |H − VΛVᵀ|`.
    pub fn reconstruction_error(&self, h: &DenseOperator) -> f64 {
        let vs: Vec<Vec<f64>> = (0..self.dim).map(|n| self.eigenvector(n)).collect();
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let r: f64 = self
                    .levels
                    .iter()
                    .zip(&vs)
                    .map(|(l, v)| v[i] * l.energy * v[j])
                    .sum();
                worst = worst.max((r - h.get(i, j)).abs());
            }
        }
        worst
    }

    /// `max |VᵀV − 1|`.
    pub fn orthogonality_error(&self) -> f64 {
        let vs: Vec<Vec<f64>> = (0..self.dim).map(|n| self.eigenvector(n)).collect();
        let mut worst = 0.0f64;
        for a in 0..self.dim {
            for b in 0..self.dim {
                let dot: f64 = vs[a].iter().zip(&vs[b]).map(|(x, y)| x * y).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - expect).abs());
            }
        }
        worst
    }

    /// `ln Σ e^{−βE_n}`, shifted by the ground energy.
    pub fn log_partition(&self, t: Temperature) -> Result<f64> {
        t.validate()?;
        let beta = t.beta().ok_or(Error::ZeroTemperature)?;
        let e0 = self.ground_energy();
        let sum: f64 = self
            .levels
            .iter()
            .map(|l| (-beta * (l.energy - e0)).exp())
            .sum();
        Ok(-beta * e0 + sum.ln())
    }

    /// Normalized Boltzmann weights per level. At `T = 0` the ground eigenspace (within
    /// [`DEGENERACY_TOL`]) is weighted uniformly.
    fn weights(&self, t: Temperature) -> Result<Vec<f64>> {
        t.validate()?;
        let e0 = self.ground_energy();
        let raw: Vec<f64> = match t.beta() {
            Some(beta) => self
                .levels
                .iter()
                .map(|l| (-beta * (l.energy - e0)).exp())
                .collect(),
            None => self
                .levels
                .iter()
                .map(|l| if l.energy - e0 < DEGENERACY_TOL { 1.0 } else { 0.0 })
                .collect(),
        };
        let z: f64 = raw.iter().sum();
        Ok(raw.into_iter().map(|w| w / z).collect())
    }

    /// Thermal average of a per-eigenvector expectation.
    pub fn thermal_average<F: Fn(&[f64]) -> f64>(&self, t: Temperature, expectation: F) -> Result<f64> {
        let weights = self.weights(t)?;
        Ok(weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(n, &w)| w * expectation(&self.eigenvector(n)))
            .sum())
    }

    fn sites(&self) -> usize {
        self.sites
    }
}

/// `Σ_l ⟨ψ| σˣ_l σˣ_{l+1} + σʸ_l σʸ_{l+1} |ψ⟩` over the `N − 1` open-chain bonds.
pub fn bond_correlator_sum(sites: usize, psi: &[f64]) -> f64 {
    let mut total = 0.0;
    for (s, &amp) in psi.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        for l in 1..sites {
            if let Some(t) = bond_flip(s, l) {
                total += 2.0 * psi[t] * amp;
            }
        }
    }
    total
}

/// `⟨ψ| σᶻ_l |ψ⟩`.
pub fn site_z(psi: &[f64], l: usize) -> f64 {
    psi.iter()
        .enumerate()
        .map(|(s, a)| a * a * spin_z(s, l))
        .sum()
}

/// Reduced density matrix of site `l` for a real pure state, in the order `(↑, ↓)`.
pub fn reduced_site_density(psi: &[f64], l: usize) -> [[f64; 2]; 2] {
    let bit = 1usize << (l - 1);
    let mut rho = [[0.0; 2]; 2];
    for (s, &a) in psi.iter().enumerate() {
        if s & bit != 0 {
            rho[0][0] += a * a;
            let partner = psi[s ^ bit];
            rho[0][1] += a * partner;
            rho[1][0] += partner * a;
        } else {
            rho[1][1] += a * a;
        }
    }
    rho
}

/// Von Neumann entropy in bits of a real symmetric 2 × 2 density matrix.
fn entropy_of_density(rho: [[f64; 2]; 2]) -> f64 {
    let mean = 0.5 * (rho[0][0] + rho[1][1]);
    let radius = (0.5 * (rho[0][0] - rho[1][1])).hypot(rho[0][1]);
    [mean + radius, mean - radius]
        .iter()
        .map(|&lam| lam.clamp(0.0, 1.0))
        .filter(|&lam| lam > 0.0)
        .map(|lam| -lam * lam.log2())
        .sum()
}

/// A small chain together with its exact spectrum.
#[derive(Debug, Clone)]
pub struct ExactChain {
    pub chain: FiniteChain,
    pub params: CouplingParams,
    pub hamiltonian: DenseOperator,
    pub spectrum: SpectralDecomposition,
}

impl ExactChain {
    pub fn new(chain: FiniteChain, params: CouplingParams) -> Result<Self> {
        let hamiltonian = build_hamiltonian(&chain, &params)?;
        let spectrum = SpectralDecomposition::of(&hamiltonian);
        Ok(Self {
            chain,
            params,
            hamiltonian,
            spectrum,
        })
    }

    fn check_site(&self, l: usize) -> Result<()> {
        if l == 0 || l > self.chain.sites() {
            return Err(Error::SiteOutOfRange {
                l,
                max: self.chain.sites(),
            });
        }
        Ok(())
    }

    pub fn log_partition(&self, t: Temperature) -> Result<f64> {
        self.spectrum.log_partition(t)
    }

    pub fn ground_energy(&self) -> f64 {
        self.spectrum.ground_energy()
    }

    /// `(1/N) Σ_l ⟨σˣσˣ + σʸσʸ⟩`, normalized by `N` although the open chain has `N − 1` bonds.
    pub fn witness(&self, t: Temperature) -> Result<f64> {
        let n = self.spectrum.sites();
        let sum = self
            .spectrum
            .thermal_average(t, |psi| bond_correlator_sum(n, psi))?;
        Ok(sum / n as f64)
    }

    pub fn site_magnetization(&self, t: Temperature, l: usize) -> Result<f64> {
        self.check_site(l)?;
        self.spectrum.thermal_average(t, |psi| site_z(psi, l))
    }

    /// `Σ_l ⟨σᶻ_l⟩`.
    pub fn magnetization(&self, t: Temperature) -> Result<f64> {
        let n = self.chain.sites();
        self.spectrum
            .thermal_average(t, |psi| (1..=n).map(|l| site_z(psi, l)).sum())
    }

    /// `Σ_l (−1)^l ⟨σᶻ_l⟩`.
    pub fn staggered_magnetization(&self, t: Temperature) -> Result<f64> {
        let n = self.chain.sites();
        self.spectrum.thermal_average(t, |psi| {
            (1..=n)
                .map(|l| SiteParity::of_site(l).sign() * site_z(psi, l))
                .sum()
        })
    }

    /// Binary entropy of site `l` in the (unique) ground state.
    ///
    /// Computed from `⟨σᶻ_l⟩` and, separately, from the eigenvalues of the partial trace;
    /// the two must agree within `1e-10`.
    pub fn ground_site_entropy(&self, l: usize) -> Result<f64> {
        self.check_site(l)?;
        let gap = self.spectrum.gap();
        if gap < DEGENERACY_TOL {
            return Err(Error::DegenerateGroundState { gap });
        }
        let psi = self.spectrum.eigenvector(0);
        let eta = (0.5 * (1.0 + site_z(&psi, l))).clamp(0.0, 1.0);
        let from_z = [eta, 1.0 - eta]
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| -x * x.log2())
            .sum::<f64>();
        let from_trace = entropy_of_density(reduced_site_density(&psi, l));
        if (from_z - from_trace).abs() > 1e-10 {
            return Err(Error::OracleInconsistency(format!(
                "site {l}: entropy from ⟨σᶻ⟩ = {from_z}, from partial trace = {from_trace}"
            )));
        }
        Ok(from_z)
    }
}

/// `ln Z` from the full spectrum of `h`.
pub fn log_partition_direct(h: &DenseOperator, t: Temperature) -> Result<f64> {
    if t.is_zero() {
        return Err(Error::ZeroTemperature);
    }
    SpectralDecomposition::of(h).log_partition(t)
}

pub fn witness_direct(chain: &FiniteChain, p: &CouplingParams, t: Temperature) -> Result<f64> {
    ExactChain::new(*chain, *p)?.witness(t)
}

pub fn site_magnetization_direct(
    chain: &FiniteChain,
    p: &CouplingParams,
    t: Temperature,
    l: usize,
) -> Result<f64> {
    ExactChain::new(*chain, *p)?.site_magnetization(t, l)
}

pub fn ground_site_entropy_direct(chain: &FiniteChain, p: &CouplingParams, l: usize) -> Result<f64> {
    ExactChain::new(*chain, *p)?.ground_site_entropy(l)
}

/// Single-site state `½(1 + r·σ)` in the order `(↑, ↓)`.
fn site_density(r: [f64; 3]) -> [[Complex64; 2]; 2] {
    let [x, y, z] = r;
    [
        [Complex64::new(0.5 * (1.0 + z), 0.0), Complex64::new(0.5 * x, -0.5 * y)],
        [Complex64::new(0.5 * x, 0.5 * y), Complex64::new(0.5 * (1.0 - z), 0.0)],
    ]
}

/// `(1/N) Σ_l Tr[ρ (σˣ_lσˣ_{l+1} + σʸ_lσʸ_{l+1})]` for the product state `⊗_l ½(1 + r_l·σ)`.
///
/// Evaluated by brute force over the `2^N` basis, not from the Bloch vectors directly.
/// Each `r_l` must satisfy `|r_l| <= 1`.
pub fn product_state_witness(bloch: &[[f64; 3]]) -> Result<f64> {
    let n = bloch.len();
    if !(2..=MAX_SITES).contains(&n) {
        return Err(Error::ChainTooLarge {
            sites: n,
            max: MAX_SITES,
        });
    }
    if let Some(r) = bloch
        .iter()
        .find(|r| r.iter().map(|c| c * c).sum::<f64>() > 1.0 + 1e-12)
    {
        return Err(Error::InvalidParams(format!("Bloch vector {r:?} outside the unit ball")));
    }
    let rhos: Vec<_> = bloch.iter().map(|&r| site_density(r)).collect();
    // Index 0 is ↑ (bit set), 1 is ↓.
    let elem = |s: usize, t: usize| -> Complex64 {
        rhos.iter().enumerate().fold(Complex64::new(1.0, 0.0), |acc, (i, rho)| {
            let a = 1 - (s >> i & 1);
            let b = 1 - (t >> i & 1);
            acc * rho[a][b]
        })
    };
    let mut total = Complex64::new(0.0, 0.0);
    for s in 0..(1usize << n) {
        for l in 1..n {
            if let Some(t) = bond_flip(s, l) {
                total += 2.0 * elem(s, t);
            }
        }
    }
    Ok(total.re / n as f64)
}
