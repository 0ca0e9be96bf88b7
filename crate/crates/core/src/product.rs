//! Full `2^N` tensor-product representation for small `N`.
//!
//! Basis index bits: bit `i` is atom `i`, with 0 for spin up and 1 for spin
//! down. Single-atom operators are placed by Kronecker products with atom
//! `N − 1` as the leftmost factor.

use ndarray::{linalg::kron, Array1, Array2};
use num_complex::Complex64 as C64;

use crate::entangle::{self, FrameAngles};
use crate::error::{Error, Result};
use crate::spin::{make_sector, CollectiveState};

pub const MAX_PRODUCT_ATOMS: u32 = 4;

/// Cartesian component of a single-atom spin operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    fn half_pauli(self) -> Array2<C64> {
        let z = C64::new(0.0, 0.0);
        let h = 0.5;
        match self {
            Axis::X => ndarray::arr2(&[[z, C64::new(h, 0.0)], [C64::new(h, 0.0), z]]),
            Axis::Y => ndarray::arr2(&[[z, C64::new(0.0, -h)], [C64::new(0.0, h), z]]),
            Axis::Z => ndarray::arr2(&[[C64::new(h, 0.0), z], [z, C64::new(-h, 0.0)]]),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpaceState {
    n_atoms: u32,
    amplitudes: Array1<C64>,
}

fn check_atoms(n_atoms: u32) -> Result<()> {
    if n_atoms == 0 {
        return Err(Error::NoAtoms);
    }
    if n_atoms > MAX_PRODUCT_ATOMS {
        return Err(Error::TooManyAtoms {
            n_atoms,
            max: MAX_PRODUCT_ATOMS,
        });
    }
    Ok(())
}

impl ProductSpaceState {
    pub fn new(n_atoms: u32, amplitudes: Array1<C64>) -> Result<Self> {
        check_atoms(n_atoms)?;
        let dim = 1usize << n_atoms;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            n_atoms,
            amplitudes,
        })
    }

    pub fn n_atoms(&self) -> u32 {
        self.n_atoms
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    fn expect(&self, op: &Array2<C64>) -> f64 {
        let u = op.dot(&self.amplitudes);
        self.amplitudes
            .iter()
            .zip(u.iter())
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
            .re
    }

    /// Projection onto the symmetric subspace, as collective Dicke amplitudes.
    pub fn to_collective(&self) -> Result<CollectiveState> {
        let sector = make_sector(self.n_atoms)?;
        let n = self.n_atoms;
        let mut c = Array1::<C64>::zeros(sector.dim());
        for (bits, amp) in self.amplitudes.iter().enumerate() {
            let downs = bits.count_ones();
            c[(n - downs) as usize] += amp / binomial(n, downs).sqrt();
        }
        CollectiveState::new(sector, c)
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Spreads each Dicke amplitude `c_m` evenly over the bitstrings with
/// `j − m` down spins.
pub fn embed_symmetric(state: &CollectiveState) -> Result<ProductSpaceState> {
    let n = state.sector().n_atoms();
    check_atoms(n)?;
    let c = state.amplitudes();
    let amplitudes = (0..1usize << n)
        .map(|bits| {
            let downs = bits.count_ones();
            c[(n - downs) as usize] / binomial(n, downs).sqrt()
        })
        .collect();
    ProductSpaceState::new(n, amplitudes)
}

/// Every atom in `cos(θ/2)|↑⟩ + e^{iφ} sin(θ/2)|↓⟩`.
pub fn product_css(n_atoms: u32, theta: f64, phi: f64) -> Result<ProductSpaceState> {
    check_atoms(n_atoms)?;
    let (s, c) = (theta / 2.0).sin_cos();
    let down = C64::from_polar(s, phi);
    let amplitudes = (0..1usize << n_atoms)
        .map(|bits| {
            let downs = bits.count_ones() as i32;
            down.powi(downs) * c.powi(n_atoms as i32 - downs)
        })
        .collect();
    ProductSpaceState::new(n_atoms, amplitudes)
}

/// `J_{i,a} = σ_a/2` on slot `atom`, identity elsewhere.
pub fn atom_operator(n_atoms: u32, atom: u32, axis: Axis) -> Array2<C64> {
    let eye = Array2::<C64>::eye(2);
    (0..n_atoms).rev().fold(Array2::<C64>::eye(1), |acc, slot| {
        if slot == atom {
            kron(&acc, &axis.half_pauli())
        } else {
            kron(&acc, &eye)
        }
    })
}

struct AtomOperators {
    ops: Vec<[Array2<C64>; 3]>,
}

impl AtomOperators {
    fn new(n_atoms: u32) -> Self {
        let ops = (0..n_atoms)
            .map(|i| Axis::ALL.map(|a| atom_operator(n_atoms, i, a)))
            .collect();
        Self { ops }
    }

    fn rotated(&self, atom: usize, dir: [f64; 3]) -> Array2<C64> {
        let [x, y, z] = &self.ops[atom];
        x * C64::from(dir[0]) + y * C64::from(dir[1]) + z * C64::from(dir[2])
    }

    /// `⟨A B⟩ − ⟨A⟩⟨B⟩` for slots `i ≠ l`.
    fn covariance(state: &ProductSpaceState, a: &Array2<C64>, b: &Array2<C64>) -> f64 {
        state.expect(&a.dot(b)) - state.expect(a) * state.expect(b)
    }
}

/// Ordered-pair double sums `Σ_{i≠l}` of rotated covariances along `x'`
/// and `y'`.
pub fn pairwise_corr(state: &ProductSpaceState, angles: FrameAngles) -> (f64, f64) {
    let n = state.n_atoms as usize;
    let ops = AtomOperators::new(state.n_atoms);
    let [ex, ey, _] = angles.axes();
    let mut corr = (0.0, 0.0);
    for i in 0..n {
        let (xi, yi) = (ops.rotated(i, ex), ops.rotated(i, ey));
        for l in (0..n).filter(|&l| l != i) {
            let (xl, yl) = (ops.rotated(l, ex), ops.rotated(l, ey));
            corr.0 += AtomOperators::covariance(state, &xi, &xl);
            corr.1 += AtomOperators::covariance(state, &yi, &yl);
        }
    }
    corr
}

/// Per-atom `(ΔJ_{i,x'}², ΔJ_{i,y'}²)`.
pub fn individual_rotated_variances(
    state: &ProductSpaceState,
    angles: FrameAngles,
) -> Vec<(f64, f64)> {
    let ops = AtomOperators::new(state.n_atoms);
    let [ex, ey, _] = angles.axes();
    (0..state.n_atoms as usize)
        .map(|i| {
            let (x, y) = (ops.rotated(i, ex), ops.rotated(i, ey));
            (
                AtomOperators::covariance(state, &x, &x),
                AtomOperators::covariance(state, &y, &y),
            )
        })
        .collect()
}

/// Collective `(ΔJ_{x'}², ΔJ_{y'}²)` with `J_{x'} = Σ_i J_{i,x'}`.
pub fn collective_rotated_variances(state: &ProductSpaceState, angles: FrameAngles) -> (f64, f64) {
    let ops = AtomOperators::new(state.n_atoms);
    let [ex, ey, _] = angles.axes();
    let dim = 1usize << state.n_atoms;
    let zero = Array2::<C64>::zeros((dim, dim));
    let (jx, jy) = (0..state.n_atoms as usize).fold((zero.clone(), zero), |(x, y), i| {
        (x + ops.rotated(i, ex), y + ops.rotated(i, ey))
    });
    (
        AtomOperators::covariance(state, &jx, &jx),
        AtomOperators::covariance(state, &jy, &jy),
    )
}

/// Frame of the symmetric projection, from the collective pipeline.
pub fn collective_frame(state: &ProductSpaceState) -> Result<FrameAngles> {
    Ok(entangle::analyze(&state.to_collective()?)?.angles)
}

/// `E` assembled from the pairwise double sums.
pub fn entanglement_e(state: &ProductSpaceState, angles: FrameAngles) -> f64 {
    let (cx, cy) = pairwise_corr(state, angles);
    entangle::entanglement_e(cx, cy)
}

/// `max |⟨J_{i,a} J_{l,b}⟩ − ⟨J_{i,a}⟩⟨J_{l,b}⟩|` over ordered pairs `i ≠ l`
/// and the component pairs `xx, yy, zz, xy, xz, yz`.
pub fn separability_residual(state: &ProductSpaceState) -> f64 {
    const PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];
    let n = state.n_atoms as usize;
    let ops = AtomOperators::new(state.n_atoms);
    let mut worst = 0.0f64;
    for i in 0..n {
        for l in (0..n).filter(|&l| l != i) {
            for (a, b) in PAIRS {
                let c = AtomOperators::covariance(state, &ops.ops[i][a], &ops.ops[l][b]);
                worst = worst.max(c.abs());
            }
        }
    }
    worst
}

/// `max ‖P_{il} ψ − ψ‖` over all transpositions of two atoms.
pub fn swap_symmetry_residual(state: &ProductSpaceState) -> f64 {
    let n = state.n_atoms as usize;
    let psi = &state.amplitudes;
    let mut worst = 0.0f64;
    for i in 0..n {
        for l in i + 1..n {
            let dist = (0..psi.len())
                .map(|bits| {
                    let (bi, bl) = ((bits >> i) & 1, (bits >> l) & 1);
                    let swapped = if bi == bl {
                        bits
                    } else {
                        bits ^ (1 << i) ^ (1 << l)
                    };
                    (psi[swapped] - psi[bits]).norm_sqr()
                })
                .sum::<f64>()
                .sqrt();
            worst = worst.max(dist);
        }
    }
    worst
}
