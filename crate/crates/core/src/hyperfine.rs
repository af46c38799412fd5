//! Ground-state hydrogen in a static magnetic field.
//!
//! Single-atom basis is `|m_s, m_i⟩` in the order `{|++⟩, |+−⟩, |−+⟩, |−−⟩}`.
//! The four eigenstates are
//!
//! ```text
//! a = cos θ |−+⟩ − sin θ |+−⟩      b = |−−⟩
//! c = cos θ |+−⟩ + sin θ |−+⟩      d = |++⟩
//! ```
//!
//! with `tan 2θ = (A/h) / ((γ_e + γ_p) B)`. Energies are reported as E/h in Hz.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix4, SymmetricEigen, Vector4};

use crate::constants::PhysicalConstants;
use crate::error::HyperfineError;

/// Index of `|++⟩` in the single-atom basis.
pub const UP_UP: usize = 0;
/// Index of `|+−⟩`.
pub const UP_DOWN: usize = 1;
/// Index of `|−+⟩`.
pub const DOWN_UP: usize = 2;
/// Index of `|−−⟩`.
pub const DOWN_DOWN: usize = 3;

/// m_s and m_i of each basis vector.
const BASIS_MS: [f64; 4] = [0.5, 0.5, -0.5, -0.5];
const BASIS_MI: [f64; 4] = [0.5, -0.5, 0.5, -0.5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HyperfineState {
    A,
    B,
    C,
    D,
}

impl HyperfineState {
    pub const ALL: [HyperfineState; 4] = [Self::A, Self::B, Self::C, Self::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> char {
        match self {
            Self::A => 'a',
            Self::B => 'b',
            Self::C => 'c',
            Self::D => 'd',
        }
    }

    /// Basis vector carrying this state's phase convention (and its dominant
    /// component for B > 0).
    fn reference_component(self) -> usize {
        match self {
            Self::A => DOWN_UP,
            Self::B => DOWN_DOWN,
            Self::C => UP_DOWN,
            Self::D => UP_UP,
        }
    }
}

impl fmt::Display for HyperfineState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for HyperfineState {
    type Err = HyperfineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "a" | "A" => Ok(Self::A),
            "b" | "B" => Ok(Self::B),
            "c" | "C" => Ok(Self::C),
            "d" | "D" => Ok(Self::D),
            other => Err(HyperfineError::UnknownLabel(other.to_string())),
        }
    }
}

/// Labeled eigen-decomposition at one field value.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperfineSpectrum {
    pub field: f64,
    pub theta: f64,
    /// E/h in Hz, indexed by [`HyperfineState::index`].
    pub energies: [f64; 4],
    /// Column `k` is the eigenvector of state `k` over the `|m_s, m_i⟩` basis.
    pub eigenvectors: Matrix4<f64>,
}

impl HyperfineSpectrum {
    pub fn energy(&self, state: HyperfineState) -> f64 {
        self.energies[state.index()]
    }

    pub fn eigenvector(&self, state: HyperfineState) -> Vector4<f64> {
        self.eigenvectors.column(state.index()).into_owned()
    }

    /// ‖VᵀV − 1‖ (max element).
    pub fn unitarity_residual(&self) -> f64 {
        let v = &self.eigenvectors;
        (v.transpose() * v - Matrix4::identity()).amax()
    }

    /// θ read back from the a and c eigenvectors.
    pub fn theta_from_eigenvectors(&self) -> f64 {
        let a = self.eigenvector(HyperfineState::A);
        let c = self.eigenvector(HyperfineState::C);
        let from_a = (-a[UP_DOWN]).atan2(a[DOWN_UP]);
        let from_c = c[DOWN_UP].atan2(c[UP_DOWN]);
        0.5 * (from_a + from_c)
    }
}

fn check_field(field: f64) -> Result<(), HyperfineError> {
    if field.is_finite() && field >= 0.0 {
        Ok(())
    } else {
        Err(HyperfineError::NegativeField(field))
    }
}

/// θ = ½·arctan(A/h / ((γ_e+γ_p)·B)); π/4 at B = 0.
pub fn mixing_angle(c: &PhysicalConstants, field: f64) -> Result<f64, HyperfineError> {
    check_field(field)?;
    Ok(0.5 * c.hyperfine_a_over_h.atan2((c.gamma_e + c.gamma_p) * field))
}

/// H/h = (A/h)·I·S + γ_e·B·m_s − γ_p·B·m_i, in Hz.
pub fn hamiltonian_matrix(c: &PhysicalConstants, field: f64) -> Result<Matrix4<f64>, HyperfineError> {
    check_field(field)?;
    let a = c.hyperfine_a_over_h;
    let mut h = Matrix4::zeros();
    for i in 0..4 {
        let (ms, mi) = (BASIS_MS[i], BASIS_MI[i]);
        h[(i, i)] = a * ms * mi + c.gamma_e * field * ms - c.gamma_p * field * mi;
    }
    // I+S- + I-S+ connects |+−⟩ and |−+⟩ with amplitude 1/2.
    h[(UP_DOWN, DOWN_UP)] = 0.5 * a;
    h[(DOWN_UP, UP_DOWN)] = 0.5 * a;
    Ok(h)
}

/// Field above which state c lies above state d.
///
/// The nuclear Zeeman term eventually beats the hyperfine splitting of the
/// pure state d = |++⟩ against the upper mixed state c. Below this field the
/// energy order is a < b < c < d.
pub fn cd_crossing_field(c: &PhysicalConstants) -> f64 {
    c.hyperfine_a_over_h * (c.gamma_e - c.gamma_p) / (2.0 * c.gamma_e * c.gamma_p)
}

/// m_F = m_s + m_i of each basis vector.
fn total_projection() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::from_fn(|i, _| BASIS_MS[i] + BASIS_MI[i]))
}

/// Numerically diagonalizes [`hamiltonian_matrix`] and labels the states.
///
/// Degenerate eigenvalue clusters (the F = 1 triplet at B = 0) are resolved
/// by diagonalizing F_z inside the cluster, so every eigenvector has definite
/// m_F. Labels follow from m_F: d has m_F = +1, b has m_F = −1, and the two
/// m_F = 0 states are a (lower) and c (upper). Labeling is therefore by
/// adiabatic identity, not by energy rank, which matters above
/// [`cd_crossing_field`].
pub fn eigensystem(c: &PhysicalConstants, field: f64) -> Result<HyperfineSpectrum, HyperfineError> {
    let h = hamiltonian_matrix(c, field)?;
    let eig = SymmetricEigen::new(h);
    let scale = eig.eigenvalues.amax().max(1.0);

    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = Matrix4::from_fn(|r, k| eig.eigenvectors[(r, order[k])]);

    resolve_degeneracies(&values, &mut vectors, scale);

    let fz = total_projection();
    let mut slots: [Option<usize>; 4] = [None; 4];
    let mut zero_projection = Vec::with_capacity(2);
    for k in 0..4 {
        let v = vectors.column(k);
        let mf = (v.transpose() * fz * v)[(0, 0)];
        let slot = if (mf - 1.0).abs() < 1e-6 {
            HyperfineState::D
        } else if (mf + 1.0).abs() < 1e-6 {
            HyperfineState::B
        } else if mf.abs() < 1e-6 {
            zero_projection.push(k);
            continue;
        } else {
            return Err(HyperfineError::LabelMismatch {
                field,
                detail: format!("eigenvector {k} has non-integer m_F = {mf}"),
            });
        };
        if slots[slot.index()].replace(k).is_some() {
            return Err(HyperfineError::LabelMismatch {
                field,
                detail: format!("two eigenvectors claim state {slot}"),
            });
        }
    }
    match zero_projection[..] {
        // `values` is ascending, so the first m_F = 0 vector is the lower one.
        [lo, hi] => {
            slots[HyperfineState::A.index()] = Some(lo);
            slots[HyperfineState::C.index()] = Some(hi);
        }
        _ => {
            return Err(HyperfineError::LabelMismatch {
                field,
                detail: format!("expected two m_F = 0 states, found {}", zero_projection.len()),
            })
        }
    }

    let mut energies = [0.0; 4];
    let mut eigenvectors = Matrix4::zeros();
    for state in HyperfineState::ALL {
        let k = slots[state.index()].expect("every slot filled above");
        let mut v = vectors.column(k).into_owned();
        let reference = state.reference_component();
        if v[reference] < 0.0 {
            v = -v;
        }
        // Dominant-component check; at B = 0 the a/c components tie.
        let dominant = v.iamax();
        if dominant != reference && (v[dominant].abs() - v[reference].abs()) > 1e-9 {
            return Err(HyperfineError::LabelMismatch {
                field,
                detail: format!("state {state} is dominated by basis vector {dominant}, expected {reference}"),
            });
        }
        energies[state.index()] = values[k];
        eigenvectors.set_column(state.index(), &v);
    }

    Ok(HyperfineSpectrum { field, theta: mixing_angle(c, field)?, energies, eigenvectors })
}

fn resolve_degeneracies(values: &[f64], vectors: &mut Matrix4<f64>, scale: f64) {
    let fz = total_projection();
    let tol = 1e-9 * scale;
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && (values[end] - values[start]).abs() <= tol {
            end += 1;
        }
        let k = end - start;
        if k > 1 {
            let q = DMatrix::from_fn(4, k, |r, j| vectors[(r, start + j)]);
            let fz_dyn = DMatrix::from_fn(4, 4, |r, s| fz[(r, s)]);
            let sub = q.transpose() * &fz_dyn * &q;
            let rot = SymmetricEigen::new(sub).eigenvectors;
            let rotated = q * rot;
            for j in 0..k {
                for r in 0..4 {
                    vectors[(r, start + j)] = rotated[(r, j)];
                }
            }
        }
        start = end;
    }
}

/// E_to − E_from in Hz.
pub fn transition_frequency(
    spec: &HyperfineSpectrum,
    from: HyperfineState,
    to: HyperfineState,
) -> Result<f64, HyperfineError> {
    if from == to {
        return Err(HyperfineError::SameState(from.label()));
    }
    Ok(spec.energy(to) - spec.energy(from))
}

/// Closed-form Breit-Rabi energies `[a, b, c, d]` in Hz.
pub fn breit_rabi_closed_form(c: &PhysicalConstants, field: f64) -> Result<[f64; 4], HyperfineError> {
    check_field(field)?;
    let a = c.hyperfine_a_over_h;
    let half_sum = 0.5 * (c.gamma_e + c.gamma_p) * field;
    let half_diff = 0.5 * (c.gamma_e - c.gamma_p) * field;
    let root = (0.25 * a * a + half_sum * half_sum).sqrt();
    Ok([-0.25 * a - root, 0.25 * a - half_diff, -0.25 * a + root, 0.25 * a + half_diff])
}
