//! Two-atom spin space and the pair selection rule.
//!
//! The 16-dimensional product basis is `e₁ ⊗ n₁ ⊗ e₂ ⊗ n₂` with `+½` before
//! `−½` for every factor, so basis index `8·e₁ + 4·n₁ + 2·e₂ + n₂` where a
//! bit value of 0 means spin up. All spin operators are in units of ħ (ħ²
//! for squared operators).

use std::str::FromStr;
use std::sync::OnceLock;

use nalgebra::{SMatrix, SVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::PairError;
use crate::hyperfine::{HyperfineSpectrum, HyperfineState};

pub type PairMatrix = SMatrix<Complex64, 16, 16>;
pub type PairVector = SVector<Complex64, 16>;

/// Eigenvalue clustering tolerance for projector construction, in ħ².
pub const CLUSTER_TOLERANCE: f64 = 1e-6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Position of each spin-½ factor inside the product basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Electron1 = 0,
    Nucleus1 = 1,
    Electron2 = 2,
    Nucleus2 = 3,
}

impl Slot {
    fn bit(self, index: usize) -> usize {
        (index >> (3 - self as usize)) & 1
    }
}

/// Product-basis index of `|m_e1, m_n1, m_e2, m_n2⟩`, each given as `true` for +½.
pub fn canonical_index(e1_up: bool, n1_up: bool, e2_up: bool, n2_up: bool) -> usize {
    let bit = |up: bool| usize::from(!up);
    8 * bit(e1_up) + 4 * bit(n1_up) + 2 * bit(e2_up) + bit(n2_up)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairState {
    pub amplitudes: PairVector,
    pub label: String,
}

impl PairState {
    /// Normalizes `amplitudes`. Zero vectors are kept as-is.
    pub fn new(amplitudes: PairVector, label: impl Into<String>) -> Self {
        let norm = amplitudes.norm();
        let amplitudes = if norm > 0.0 { amplitudes.unscale(norm) } else { amplitudes };
        Self { amplitudes, label: label.into() }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// Same state multiplied by `e^{iφ}`.
    pub fn with_phase(&self, phase: f64) -> Self {
        Self { amplitudes: self.amplitudes * Complex64::from_polar(1.0, phase), label: self.label.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    /// Total electron spin squared, S².
    ElectronSpinSquared,
    /// Total nuclear spin squared, I².
    NuclearSpinSquared,
    /// Total spin squared, F² = (S + I)².
    TotalSpinSquared,
    ElectronSpinZ,
    NuclearSpinZ,
    /// Exchange of the two atoms.
    Swap,
    /// S₁ₓ + S₂ₓ.
    DriveElectron,
    /// I₁ₓ + I₂ₓ.
    DriveNuclear,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 8] = [
        Self::ElectronSpinSquared,
        Self::NuclearSpinSquared,
        Self::TotalSpinSquared,
        Self::ElectronSpinZ,
        Self::NuclearSpinZ,
        Self::Swap,
        Self::DriveElectron,
        Self::DriveNuclear,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::ElectronSpinSquared => "S2",
            Self::NuclearSpinSquared => "I2",
            Self::TotalSpinSquared => "F2",
            Self::ElectronSpinZ => "Sz",
            Self::NuclearSpinZ => "Iz",
            Self::Swap => "swap",
            Self::DriveElectron => "drive_electron",
            Self::DriveNuclear => "drive_nuclear",
        }
    }
}

impl FromStr for OperatorKind {
    type Err = PairError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| PairError::UnknownKind(s.to_string()))
    }
}

/// Which spins the uniform microwave field flips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Drive {
    Electron,
    Nuclear,
}

impl Drive {
    pub fn operator_kind(self) -> OperatorKind {
        match self {
            Self::Electron => OperatorKind::DriveElectron,
            Self::Nuclear => OperatorKind::DriveNuclear,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Electron => "electron",
            Self::Nuclear => "nuclear",
        }
    }
}

impl FromStr for Drive {
    type Err = PairError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "electron" => Ok(Self::Electron),
            "nuclear" => Ok(Self::Nuclear),
            other => Err(PairError::UnknownDrive(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveOperator {
    pub matrix: PairMatrix,
    pub kind: OperatorKind,
}

impl CollectiveOperator {
    /// max |O − O†|.
    pub fn hermiticity_residual(&self) -> f64 {
        (self.matrix - self.matrix.adjoint()).map(|z| z.norm()).max()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = SymmetricEigen::new(self.matrix).eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Orthogonal projector onto the eigenspace with eigenvalue `target`.
    pub fn spectral_projector(&self, target: f64) -> PairMatrix {
        let eig = SymmetricEigen::new(self.matrix);
        let mut p = PairMatrix::zeros();
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            if (lambda - target).abs() <= CLUSTER_TOLERANCE {
                let v = eig.eigenvectors.column(k);
                p += v * v.adjoint();
            }
        }
        p
    }
}

type Spin2 = [[Complex64; 2]; 2];

fn sigma_x() -> Spin2 {
    [[ZERO, Complex64::new(0.5, 0.0)], [Complex64::new(0.5, 0.0), ZERO]]
}

fn sigma_y() -> Spin2 {
    [[ZERO, Complex64::new(0.0, -0.5)], [Complex64::new(0.0, 0.5), ZERO]]
}

fn sigma_z() -> Spin2 {
    [[Complex64::new(0.5, 0.0), ZERO], [ZERO, Complex64::new(-0.5, 0.0)]]
}

/// Spin-½ operator acting on one slot, identity on the other three.
fn embed(op: Spin2, slot: Slot) -> PairMatrix {
    let others = [Slot::Electron1, Slot::Nucleus1, Slot::Electron2, Slot::Nucleus2]
        .into_iter()
        .filter(|&s| s != slot)
        .collect::<Vec<_>>();
    PairMatrix::from_fn(
        |i, j| {
            if others.iter().all(|s| s.bit(i) == s.bit(j)) {
                op[slot.bit(i)][slot.bit(j)]
            } else {
                ZERO
            }
        },
    )
}

fn vector_sum(slots: &[Slot]) -> [PairMatrix; 3] {
    let total = |op: fn() -> Spin2| slots.iter().map(|&s| embed(op(), s)).sum::<PairMatrix>();
    [total(sigma_x), total(sigma_y), total(sigma_z)]
}

fn squared(v: &[PairMatrix; 3]) -> PairMatrix {
    v.iter().map(|m| m * m).sum()
}

fn swap_matrix() -> PairMatrix {
    PairMatrix::from_fn(|i, j| {
        let (first, second) = (j >> 2, j & 3);
        if i == (second << 2 | first) {
            ONE
        } else {
            ZERO
        }
    })
}

fn build(kind: OperatorKind) -> PairMatrix {
    use Slot::*;
    let electrons = [Electron1, Electron2];
    let nuclei = [Nucleus1, Nucleus2];
    match kind {
        OperatorKind::ElectronSpinSquared => squared(&vector_sum(&electrons)),
        OperatorKind::NuclearSpinSquared => squared(&vector_sum(&nuclei)),
        OperatorKind::TotalSpinSquared => squared(&vector_sum(&[Electron1, Nucleus1, Electron2, Nucleus2])),
        OperatorKind::ElectronSpinZ => vector_sum(&electrons)[2],
        OperatorKind::NuclearSpinZ => vector_sum(&nuclei)[2],
        OperatorKind::Swap => swap_matrix(),
        OperatorKind::DriveElectron => vector_sum(&electrons)[0],
        OperatorKind::DriveNuclear => vector_sum(&nuclei)[0],
    }
}

/// Collective operator assembled from single-spin generators. Memoized.
pub fn collective_operator(kind: OperatorKind) -> CollectiveOperator {
    static CACHE: [OnceLock<PairMatrix>; 8] = [const { OnceLock::new() }; 8];
    let slot = OperatorKind::ALL.iter().position(|&k| k == kind).expect("kind listed in ALL");
    CollectiveOperator { matrix: *CACHE[slot].get_or_init(|| build(kind)), kind }
}

/// Parses `kind` and returns the operator.
pub fn collective_operator_named(kind: &str) -> Result<CollectiveOperator, PairError> {
    Ok(collective_operator(kind.parse()?))
}

/// Non-interacting pair Hamiltonian H₁ + H₂ (Hz) at the spectrum's field.
pub fn pair_hamiltonian(spec: &HyperfineSpectrum) -> PairMatrix {
    // Rebuild H = V diag(E) Vᵀ from the spectrum to stay in the labeled frame.
    let v = spec.eigenvectors;
    let e = nalgebra::Matrix4::from_diagonal(&nalgebra::Vector4::from(spec.energies));
    let single = v * e * v.transpose();
    PairMatrix::from_fn(|i, j| {
        let (i1, i2, j1, j2) = (i >> 2, i & 3, j >> 2, j & 3);
        let mut value = 0.0;
        if i2 == j2 {
            value += single[(i1, j1)];
        }
        if i1 == j1 {
            value += single[(i2, j2)];
        }
        Complex64::new(value, 0.0)
    })
}

fn product_amplitudes(spec: &HyperfineSpectrum, first: HyperfineState, second: HyperfineState) -> PairVector {
    let u = spec.eigenvector(first);
    let v = spec.eigenvector(second);
    PairVector::from_fn(|idx, _| Complex64::new(u[idx >> 2] * v[idx & 3], 0.0))
}

/// `|first⟩ ⊗ |second⟩` built from the field-dependent eigenvectors.
pub fn pair_basis_state(spec: &HyperfineSpectrum, first: HyperfineState, second: HyperfineState) -> PairState {
    PairState::new(product_amplitudes(spec, first, second), format!("{first}{second}"))
}

/// `(|xy⟩ + |yx⟩)/√2`; equals the product state when `first == second`.
pub fn symmetrized_pair_state(spec: &HyperfineSpectrum, first: HyperfineState, second: HyperfineState) -> PairState {
    if first == second {
        return pair_basis_state(spec, first, second);
    }
    let sum = product_amplitudes(spec, first, second) + product_amplitudes(spec, second, first);
    PairState::new(sum, format!("{first}{second}_sym"))
}

/// ⟨ψ|O|ψ⟩ including its (rounding-level) imaginary part.
pub fn expectation_complex(state: &PairState, op: &CollectiveOperator) -> Complex64 {
    state.amplitudes.dotc(&(op.matrix * state.amplitudes))
}

/// Re ⟨ψ|O|ψ⟩.
pub fn expectation_value(state: &PairState, op: &CollectiveOperator) -> f64 {
    expectation_complex(state, op).re
}

/// ⟨final| drive |initial⟩ in units of ħ.
pub fn drive_coupling(initial: &PairState, final_state: &PairState, drive: Drive) -> Complex64 {
    let op = collective_operator(drive.operator_kind());
    final_state.amplitudes.dotc(&(op.matrix * initial.amplitudes))
}

/// Projections of drive·|bb⟩ onto symmetry-forbidden subspaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForbiddennessReport {
    pub field: f64,
    pub drive: Drive,
    /// ‖drive·|bb⟩‖.
    pub driven_norm: f64,
    /// Norm of the projection onto the S = 0 subspace.
    pub singlet_projection_norm: f64,
    /// Norm of the projection onto the F = 1 eigenspace of F².
    pub odd_f_projection_norm: f64,
    /// Norm of the projection onto the exchange-antisymmetric subspace.
    pub antisymmetric_projection_norm: f64,
}

/// Applies the drive to `|bb⟩` and measures what leaks into the S = 0,
/// odd-F and exchange-antisymmetric subspaces.
///
/// The S = 0 and antisymmetric leaks vanish at every field. The odd-F leak
/// does not: S_x turns `|S=1,−1⟩|I=1,−1⟩` into `|S=1,0⟩|I=1,−1⟩`, which is
/// an equal mix of F = 2 and F = 1, giving a norm of exactly 1/2.
pub fn forbiddenness_check(spec: &HyperfineSpectrum, drive: Drive) -> ForbiddennessReport {
    let bb = pair_basis_state(spec, HyperfineState::B, HyperfineState::B);
    let driven = collective_operator(drive.operator_kind()).matrix * bb.amplitudes;

    let s2 = collective_operator(OperatorKind::ElectronSpinSquared);
    let f2 = collective_operator(OperatorKind::TotalSpinSquared);
    let swap = collective_operator(OperatorKind::Swap);

    let singlet = s2.spectral_projector(0.0);
    let odd_f = f2.spectral_projector(2.0);
    let antisymmetric = swap.spectral_projector(-1.0);

    ForbiddennessReport {
        field: spec.field,
        drive,
        driven_norm: driven.norm(),
        singlet_projection_norm: (singlet * driven).norm(),
        odd_f_projection_norm: (odd_f * driven).norm(),
        antisymmetric_projection_norm: (antisymmetric * driven).norm(),
    }
}

/// ‖AB − BA‖ (max element modulus).
pub fn commutator_norm(a: &PairMatrix, b: &PairMatrix) -> f64 {
    (a * b - b * a).map(|z| z.norm()).max()
}
