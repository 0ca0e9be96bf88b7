//! Collective spin operators and states in the Dicke basis.
//!
//! The basis of the maximal sector `j = N/2` is ordered by ascending `m`,
//! index `i` holding `|j, m⟩` with `2m = 2i - 2j`. Quantum numbers are kept
//! doubled (`two_j`, `two_m`) so half-integers stay exact.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::wigner;

const NORM_TOLERANCE: f64 = 1e-12;

/// Symmetric sector of `N` two-level atoms, `j = N/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinSector {
    two_j: u32,
}

impl SpinSector {
    pub fn new(n_atoms: u32) -> Result<Self> {
        if n_atoms == 0 {
            return Err(Error::NoAtoms);
        }
        Ok(Self { two_j: n_atoms })
    }

    pub fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn n_atoms(self) -> u32 {
        self.two_j
    }

    pub fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    pub fn j(self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    /// Doubled `m` labels in basis order, `-2j, -2j+2, …, 2j`.
    pub fn two_m_values(self) -> impl Iterator<Item = i32> {
        let tj = self.two_j as i32;
        (0..=tj).map(move |i| 2 * i - tj)
    }

    pub fn two_m_at(self, index: usize) -> i32 {
        2 * index as i32 - self.two_j as i32
    }

    /// Basis index of `|j, m⟩`, or `None` if `m` is not in the sector.
    pub fn index_of(self, two_m: i32) -> Option<usize> {
        let tj = self.two_j as i32;
        if two_m.abs() > tj || (two_m + tj) % 2 != 0 {
            None
        } else {
            Some(((two_m + tj) / 2) as usize)
        }
    }

    pub fn check_two_m(self, two_m: i32) -> Result<usize> {
        self.index_of(two_m).ok_or(Error::QuantumNumber {
            two_j: self.two_j,
            two_m,
        })
    }
}

/// Builds a sector for `n_atoms` atoms.
pub fn make_sector(n_atoms: u32) -> Result<SpinSector> {
    SpinSector::new(n_atoms)
}

/// Dense operator on a spin sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperator {
    sector: SpinSector,
    matrix: Array2<C64>,
}

impl SpinOperator {
    pub fn from_matrix(sector: SpinSector, matrix: Array2<C64>) -> Result<Self> {
        let d = sector.dim();
        if matrix.dim() != (d, d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: matrix.nrows(),
            });
        }
        Ok(Self { sector, matrix })
    }

    pub fn sector(&self) -> SpinSector {
        self.sector
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Array2<C64> {
        self.matrix
    }

    /// Operator product `self · rhs`.
    pub fn compose(&self, rhs: &SpinOperator) -> SpinOperator {
        assert_eq!(self.sector, rhs.sector);
        SpinOperator {
            sector: self.sector,
            matrix: self.matrix.dot(&rhs.matrix),
        }
    }

    /// `[self, rhs]`.
    pub fn commutator(&self, rhs: &SpinOperator) -> SpinOperator {
        let ab = self.matrix.dot(&rhs.matrix);
        let ba = rhs.matrix.dot(&self.matrix);
        SpinOperator {
            sector: self.sector,
            matrix: ab - ba,
        }
    }

    pub fn adjoint(&self) -> SpinOperator {
        SpinOperator {
            sector: self.sector,
            matrix: self.matrix.t().mapv(|z| z.conj()),
        }
    }

    pub fn scaled(&self, factor: C64) -> SpinOperator {
        SpinOperator {
            sector: self.sector,
            matrix: &self.matrix * factor,
        }
    }

    pub fn plus(&self, rhs: &SpinOperator) -> SpinOperator {
        SpinOperator {
            sector: self.sector,
            matrix: &self.matrix + &rhs.matrix,
        }
    }

    /// Largest element-wise modulus.
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest `|A_ik - conj(A_ki)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.sector.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for k in 0..d {
                worst = worst.max((self.matrix[[i, k]] - self.matrix[[k, i]].conj()).norm());
            }
        }
        worst
    }

    pub fn apply(&self, state: &CollectiveState) -> Result<Array1<C64>> {
        if state.sector != self.sector {
            return Err(Error::SectorMismatch {
                left: self.sector.two_j,
                right: state.sector.two_j,
            });
        }
        Ok(self.matrix.dot(&state.amplitudes))
    }
}

fn ladder_coefficient(sector: SpinSector, two_m: i32) -> f64 {
    // ⟨j, m+1| J₊ |j, m⟩ = √(j(j+1) − m(m+1)), in doubled integers
    let tj = f64::from(sector.two_j);
    let tm = f64::from(two_m);
    (0.25 * (tj * (tj + 2.0) - tm * (tm + 2.0))).sqrt()
}

pub fn build_jz(sector: SpinSector) -> SpinOperator {
    let d = sector.dim();
    let mut m = Array2::zeros((d, d));
    for i in 0..d {
        m[[i, i]] = C64::new(f64::from(sector.two_m_at(i)) / 2.0, 0.0);
    }
    SpinOperator { sector, matrix: m }
}

pub fn build_jplus(sector: SpinSector) -> SpinOperator {
    let d = sector.dim();
    let mut m = Array2::zeros((d, d));
    for i in 0..d - 1 {
        m[[i + 1, i]] = C64::new(ladder_coefficient(sector, sector.two_m_at(i)), 0.0);
    }
    SpinOperator { sector, matrix: m }
}

pub fn build_jminus(sector: SpinSector) -> SpinOperator {
    build_jplus(sector).adjoint()
}

/// `J_x = (J₊ + J₋)/2`.
pub fn build_jx(sector: SpinSector) -> SpinOperator {
    let jp = build_jplus(sector);
    let jm = jp.adjoint();
    jp.plus(&jm).scaled(C64::new(0.5, 0.0))
}

/// `J_y = (J₊ − J₋)/(2i)`.
pub fn build_jy(sector: SpinSector) -> SpinOperator {
    let jp = build_jplus(sector);
    let jm = jp.adjoint();
    jp.plus(&jm.scaled(C64::new(-1.0, 0.0)))
        .scaled(C64::new(0.0, -0.5))
}

/// `J² = J_x² + J_y² + J_z²`, built from the component matrices.
pub fn build_jsq(sector: SpinSector) -> SpinOperator {
    let jx = build_jx(sector);
    let jy = build_jy(sector);
    let jz = build_jz(sector);
    jx.compose(&jx)
        .plus(&jy.compose(&jy))
        .plus(&jz.compose(&jz))
}

/// The three Cartesian components, built once.
#[derive(Debug, Clone)]
pub struct SpinComponents {
    pub jx: SpinOperator,
    pub jy: SpinOperator,
    pub jz: SpinOperator,
}

impl SpinComponents {
    pub fn new(sector: SpinSector) -> Self {
        Self {
            jx: build_jx(sector),
            jy: build_jy(sector),
            jz: build_jz(sector),
        }
    }
}

/// Normalized pure state `Σ_m c_m |j, m⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveState {
    sector: SpinSector,
    amplitudes: Array1<C64>,
}

impl CollectiveState {
    /// Wraps amplitudes that must already have unit norm (within 1e-12).
    pub fn new(sector: SpinSector, amplitudes: Array1<C64>) -> Result<Self> {
        if amplitudes.len() != sector.dim() {
            return Err(Error::DimensionMismatch {
                expected: sector.dim(),
                got: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { sector, amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(sector: SpinSector, amplitudes: Array1<C64>) -> Result<Self> {
        if amplitudes.len() != sector.dim() {
            return Err(Error::DimensionMismatch {
                expected: sector.dim(),
                got: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !(norm_sq > 0.0) || !norm_sq.is_finite() {
            return Err(Error::NotNormalized { norm_sq });
        }
        let scale = norm_sq.sqrt().recip();
        Ok(Self {
            sector,
            amplitudes: amplitudes.mapv(|z| z * scale),
        })
    }

    /// Dicke state `|j, m⟩`.
    pub fn dicke(sector: SpinSector, two_m: i32) -> Result<Self> {
        let idx = sector.check_two_m(two_m)?;
        let mut a = Array1::zeros(sector.dim());
        a[idx] = C64::new(1.0, 0.0);
        Ok(Self {
            sector,
            amplitudes: a,
        })
    }

    /// Coherent spin state pointing along `(sinθ cosφ, sinθ sinφ, cosθ)`:
    /// every atom in `cos(θ/2)|↑⟩ + e^{iφ} sin(θ/2)|↓⟩`.
    pub fn coherent(sector: SpinSector, theta: f64, phi: f64) -> Self {
        let n = sector.two_j;
        let (s, c) = (theta / 2.0).sin_cos();
        let lf = crate::numeric::LogFactorials::up_to(n);
        let amplitudes = (0..sector.dim())
            .map(|i| {
                // i = number of up spins = j + m
                let ups = i as u32;
                let downs = n - ups;
                let log_binom = 0.5 * (lf.get(n) - lf.get(ups) - lf.get(downs));
                let mag = log_binom.exp() * c.powi(ups as i32) * s.powi(downs as i32);
                C64::from_polar(1.0, f64::from(downs) * phi) * mag
            })
            .collect();
        Self { sector, amplitudes }
    }

    pub fn sector(&self) -> SpinSector {
        self.sector
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &CollectiveState) -> C64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// `⟨state| op |state⟩`.
pub fn expectation(state: &CollectiveState, op: &SpinOperator) -> Result<C64> {
    let v = op.apply(state)?;
    Ok(state
        .amplitudes
        .iter()
        .zip(v.iter())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// First moments and symmetrized second moments of the collective spin.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MomentTable {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub jx2: f64,
    pub jy2: f64,
    pub jz2: f64,
    /// `⟨J_x J_y + J_y J_x⟩`
    pub xy_sym: f64,
    /// `⟨J_x J_z + J_z J_x⟩`
    pub xz_sym: f64,
    /// `⟨J_y J_z + J_z J_y⟩`
    pub yz_sym: f64,
}

impl MomentTable {
    pub fn var_x(&self) -> f64 {
        self.jx2 - self.jx * self.jx
    }

    pub fn var_y(&self) -> f64 {
        self.jy2 - self.jy * self.jy
    }

    pub fn var_z(&self) -> f64 {
        self.jz2 - self.jz * self.jz
    }

    /// `⟨J_x²⟩ + ⟨J_y²⟩ + ⟨J_z²⟩`, equal to `j(j+1)` in the sector.
    pub fn casimir(&self) -> f64 {
        self.jx2 + self.jy2 + self.jz2
    }
}

/// All nine moments from dense products.
///
/// With `u_a = J_a |ψ⟩`, `⟨J_a J_b⟩ = ⟨u_a|u_b⟩` because the components are
/// Hermitian, so three matrix-vector products suffice.
pub fn moments(state: &CollectiveState) -> MomentTable {
    moments_with(state, &SpinComponents::new(state.sector))
}

/// [`moments`] with prebuilt operators.
pub fn moments_with(state: &CollectiveState, ops: &SpinComponents) -> MomentTable {
    let psi = &state.amplitudes;
    let ux = ops.jx.matrix.dot(psi);
    let uy = ops.jy.matrix.dot(psi);
    let uz = ops.jz.matrix.dot(psi);
    let dot = |a: &Array1<C64>, b: &Array1<C64>| -> C64 {
        a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
    };
    MomentTable {
        jx: dot(psi, &ux).re,
        jy: dot(psi, &uy).re,
        jz: dot(psi, &uz).re,
        jx2: dot(&ux, &ux).re,
        jy2: dot(&uy, &uy).re,
        jz2: dot(&uz, &uz).re,
        xy_sym: 2.0 * dot(&ux, &uy).re,
        xz_sym: 2.0 * dot(&ux, &uz).re,
        yz_sym: 2.0 * dot(&uy, &uz).re,
    }
}

/// `e^{-iβJ_y}|state⟩`, using the reduced Wigner matrix `d^j(β)`.
pub fn rotate_y(state: &CollectiveState, beta: f64) -> CollectiveState {
    let d = wigner::d_matrix(state.sector.two_j, beta);
    let amps = d.mapv(|x| C64::new(x, 0.0)).dot(&state.amplitudes);
    CollectiveState {
        sector: state.sector,
        amplitudes: amps,
    }
}
