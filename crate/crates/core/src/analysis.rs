//! Fiducial vectors: verification, closed-form constructions, the group
//! action on states, eigenspaces, stabilizers and orbit accounting.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::clifford::{
    canonicalize, compose, element_order, group_matrices, group_order, is_canonical,
    is_canonical_order3, synthesize, CliffordElement, IntMat2, SymplecticPart, Synthesizer,
    DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::numtheory::{legendre_symbol, solve_unity_cube_root, Modulus};
use crate::weyl::{displacement_overlap, PhaseContext, StateVector, SymplecticIndex};

pub const DEFAULT_FIDUCIAL_TOL: f64 = 1e-8;
pub const DEFAULT_EIGENVECTOR_TOL: f64 = 1e-9;
/// Projector traces farther than this from an integer are rejected.
pub const TRACE_INTEGRALITY_TOL: f64 = 0.01;

#[derive(Clone, Debug, PartialEq)]
pub struct FiducialReport {
    pub d: usize,
    pub norm_error: f64,
    /// `|⟨ψ|D_p ψ⟩|` for each `p ≠ 0` in row-major order.
    pub overlaps: Vec<(SymplecticIndex, f64)>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl FiducialReport {
    pub fn overlap(&self, p: SymplecticIndex) -> Option<f64> {
        let d = self.d as i64;
        let p = SymplecticIndex::new(p.p1.rem_euclid(d), p.p2.rem_euclid(d));
        self.overlaps.iter().find(|(q, _)| *q == p).map(|&(_, v)| v)
    }
}

/// Check `|⟨ψ|D_p ψ⟩| = 1/√(d+1)` for every `p ≠ 0`.
pub fn verify_fiducial(psi: &StateVector, tol: f64) -> Result<FiducialReport> {
    let d = psi.dim();
    if d < 2 {
        return Err(Error::InvalidDimension(d as i64));
    }
    let ctx = PhaseContext::new(d)?;
    let target = 1.0 / ((d + 1) as f64).sqrt();
    let overlaps: Vec<_> = SymplecticIndex::nonzero(d)
        .map(|p| (p, displacement_overlap(psi.as_slice(), p, &ctx).norm()))
        .collect();
    let max_deviation = overlaps
        .iter()
        .map(|&(_, v)| (v - target).abs())
        .fold(0.0, f64::max);
    let norm_error = (psi.norm() - 1.0).abs();
    Ok(FiducialReport {
        d,
        norm_error,
        overlaps,
        max_deviation,
        tolerance: tol,
        passed: max_deviation <= tol && norm_error <= tol,
    })
}

/// The closed-form fiducial vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FiducialRecipe {
    D2,
    /// `(e^(−it)|e_1⟩ − e^(it)|e_2⟩)/√2`, `t` in radians.
    D3 {
        t: f64,
    },
    D4,
    D7a,
    D7b,
    D19,
}

impl FiducialRecipe {
    pub const NAMES: [&'static str; 6] = ["d2", "d3", "d4", "d7a", "d7b", "d19"];

    /// Look up a recipe by name; `t` is used only by `d3` (default 0).
    pub fn from_name(name: &str, t: Option<f64>) -> Result<Self> {
        Ok(match name {
            "d2" => FiducialRecipe::D2,
            "d3" => FiducialRecipe::D3 {
                t: t.unwrap_or(0.0),
            },
            "d4" => FiducialRecipe::D4,
            "d7a" => FiducialRecipe::D7a,
            "d7b" => FiducialRecipe::D7b,
            "d19" => FiducialRecipe::D19,
            other => return Err(Error::UnknownRecipe(other.to_string())),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            FiducialRecipe::D2 => 2,
            FiducialRecipe::D3 { .. } => 3,
            FiducialRecipe::D4 => 4,
            FiducialRecipe::D7a | FiducialRecipe::D7b => 7,
            FiducialRecipe::D19 => 19,
        }
    }
}

impl FromStr for FiducialRecipe {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FiducialRecipe::from_name(s, None)
    }
}

impl fmt::Display for FiducialRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiducialRecipe::D2 => write!(f, "d2"),
            FiducialRecipe::D3 { t } => write!(f, "d3(t={t})"),
            FiducialRecipe::D4 => write!(f, "d4"),
            FiducialRecipe::D7a => write!(f, "d7a"),
            FiducialRecipe::D7b => write!(f, "d7b"),
            FiducialRecipe::D19 => write!(f, "d19"),
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn legendre(r: i64, p: i64) -> f64 {
    legendre_symbol(r, p).expect("odd prime modulus") as f64
}

/// Evaluate a recipe in double precision.
pub fn exact_fiducial(recipe: FiducialRecipe) -> StateVector {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let s5 = 5f64.sqrt();
    let amps = match recipe {
        FiducialRecipe::D2 => vec![
            c(((3.0 + s3) / 6.0).sqrt(), 0.0),
            cis(FRAC_PI_4) * ((3.0 - s3) / 6.0).sqrt(),
        ],
        FiducialRecipe::D3 { t } => vec![c(0.0, 0.0), cis(-t) / s2, -cis(t) / s2],
        FiducialRecipe::D4 => {
            let pre = ((5.0 - s5) / 40.0).sqrt();
            let k = (2.0 + s5).sqrt();
            let i = c(0.0, 1.0);
            vec![
                c(2.0 * FRAC_PI_8.cos(), 0.0) * pre,
                i * (cis(-FRAC_PI_8) + k * cis(FRAC_PI_8)) * pre,
                c(0.0, 2.0 * FRAC_PI_8.sin()) * pre,
                i * (cis(-FRAC_PI_8) - k * cis(FRAC_PI_8)) * pre,
            ]
        }
        FiducialRecipe::D7a => {
            let a0 = c((1.0 / (4.0 - s2)).sqrt(), ((4.0 - s2) / 2.0).sqrt()) * 0.5;
            let a1 = 0.25 * ((8.0 - 5.0 * s2) / 7.0).sqrt();
            let a2 = 2f64.powf(-1.75);
            std::iter::once(a0)
                .chain((1..7).map(|r| c(-(a1 + legendre(r, 7) * a2), 0.0)))
                .collect()
        }
        FiducialRecipe::D7b => {
            let b0 = ((2.0 + 3.0 * s2) / 14.0).sqrt();
            let b1 = ((4.0 - s2) / 28.0).sqrt();
            let theta = (-(s2 + 1.0).sqrt() / 2.0).acos();
            std::iter::once(c(b0, 0.0))
                .chain((1..7).map(|r| cis(legendre(r, 7) * theta) * b1))
                .collect()
        }
        FiducialRecipe::D19 => {
            let b0 = ((5.0 + 9.0 * s5) / 95.0).sqrt();
            let b1 = ((10.0 - s5) / 190.0).sqrt();
            let theta = ((s5 - 1.0) / 8.0).sqrt().acos();
            std::iter::once(c(b0, 0.0))
                .chain((1..19).map(|r| cis(legendre(r, 19) * theta) * b1))
                .collect()
        }
    };
    StateVector::from_vec(amps)
}

/// Representative of `t` modulo `t ↦ nπ/3 ± t`, in `[0, π/6]`.
pub fn reduce_d3_parameter(t: f64) -> f64 {
    let r = t.rem_euclid(FRAC_PI_3);
    if r > FRAC_PI_6 {
        FRAC_PI_3 - r
    } else {
        r
    }
}

fn check_dim(e: &CliffordElement, psi: &StateVector) -> Result<()> {
    if e.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: psi.dim(),
        });
    }
    Ok(())
}

/// `Û ψ` for the synthesized representative `Û` of `e`.
pub fn apply(e: &CliffordElement, psi: &StateVector) -> Result<StateVector> {
    check_dim(e, psi)?;
    Synthesizer::new(e.modulus())?.apply(e, psi)
}

#[inline]
fn phase_free_fidelity(psi: &[Complex64], u_psi: &[Complex64]) -> f64 {
    let ip: Complex64 = psi.iter().zip(u_psi).map(|(a, b)| a.conj() * b).sum();
    let nn: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    ip.norm() / nn
}

/// `1 − |⟨ψ|Ûψ⟩| ≤ tol`.
pub fn is_eigenvector(e: &CliffordElement, psi: &StateVector, tol: f64) -> Result<bool> {
    let u_psi = apply(e, psi)?;
    Ok(1.0 - phase_free_fidelity(psi.as_slice(), u_psi.as_slice()) <= tol)
}

/// Dimensions of the eigenspaces of a unitary operation, sorted ascending,
/// zeros omitted.
pub fn eigenspace_dims(e: &CliffordElement) -> Result<Vec<usize>> {
    if !e.is_unitary() {
        return Err(Error::NotUnitary);
    }
    let k = element_order(e)?;
    let u = synthesize(e)?;
    let (scalar, residual) = u.pow(k).scalar_residual();
    if residual > 1e-8 {
        return Err(Error::NotScalarPower { residual });
    }
    let root = Complex64::from_polar(scalar.norm().powf(1.0 / k as f64), scalar.arg() / k as f64);
    let u = u.entries / root;

    let d = e.dim();
    let mut power = nalgebra::DMatrix::<Complex64>::identity(d, d);
    let mut traces = Vec::with_capacity(k as usize);
    for _ in 0..k {
        traces.push(power.trace());
        power = &power * &u;
    }
    let mut dims = Vec::new();
    for r in 0..k {
        let t: Complex64 = traces
            .iter()
            .enumerate()
            .map(|(j, &tr)| tr * cis(-2.0 * PI * (j as f64) * (r as f64) / k as f64))
            .sum::<Complex64>()
            / k as f64;
        let n = t.re.round();
        if (t.re - n).abs() > TRACE_INTEGRALITY_TOL || t.im.abs() > TRACE_INTEGRALITY_TOL {
            return Err(Error::NonIntegerTrace { trace: t.re });
        }
        if n >= 1.0 {
            dims.push(n as usize);
        }
    }
    dims.sort_unstable();
    Ok(dims)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerResult {
    /// Canonical forms, in enumeration order.
    pub elements: Vec<CliffordElement>,
    pub order: u64,
    /// An element of full order, when the subgroup is cyclic.
    pub generator_hint: Option<CliffordElement>,
}

impl StabilizerResult {
    pub fn contains(&self, e: &CliffordElement) -> bool {
        let c = canonicalize(e);
        self.elements.contains(&c)
    }
}

/// All operations of the extended group having `psi` as an eigenvector.
pub fn stabilizer(psi: &StateVector, tol: f64) -> Result<StabilizerResult> {
    stabilizer_capped(psi, tol, DEFAULT_ENUMERATION_CAP)
}

pub fn stabilizer_capped(psi: &StateVector, tol: f64, cap: u64) -> Result<StabilizerResult> {
    let d = psi.dim() as i64;
    let modulus = Modulus::new(d)?;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let order = group_order(d, true);
    if order > cap {
        return Err(Error::CapExceeded { order, cap });
    }
    let ctx = PhaseContext::new(modulus.dim())?;
    let amps = psi.as_slice();
    let elements: Vec<CliffordElement> = group_matrices(modulus, true)
        .par_iter()
        .flat_map_iter(|&f| {
            // V ψ is shared by every χ with this F
            let part = SymplecticPart::new(f, modulus).expect("enumerated matrices are valid");
            let v_psi = part.apply(amps, &ctx);
            let mut found = Vec::new();
            for x in 0..d {
                for y in 0..d {
                    let u_psi = part.finish(&v_psi, [x, y], &ctx);
                    if 1.0 - phase_free_fidelity(amps, &u_psi) <= tol {
                        let e = CliffordElement::new(f, [x, y], modulus).expect("valid");
                        if is_canonical(&e) {
                            found.push(e);
                        }
                    }
                }
            }
            found
        })
        .collect();
    let order = elements.len() as u64;
    let generator_hint = elements
        .iter()
        .find(|e| element_order(e).ok() == Some(order))
        .copied();
    Ok(StabilizerResult {
        elements,
        order,
        generator_hint,
    })
}

/// The cyclic group generated by `e`, in canonical form.
pub fn cyclic_subgroup(e: &CliffordElement) -> Result<Vec<CliffordElement>> {
    let k = element_order(e)?;
    Ok((0..k).map(|j| canonicalize(&e.pow(j))).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitStats {
    pub stabilizer_order: u64,
    pub orbit_size: u64,
    pub sic_count: u64,
}

/// Orbit size `|EC/I| / |stab|` and the number `orbit / d²` of SICs in it.
pub fn orbit_stats(psi: &StateVector, tol: f64) -> Result<OrbitStats> {
    orbit_stats_capped(psi, tol, DEFAULT_ENUMERATION_CAP)
}

pub fn orbit_stats_capped(psi: &StateVector, tol: f64, cap: u64) -> Result<OrbitStats> {
    let stab = stabilizer_capped(psi, tol, cap)?;
    orbit_from_stabilizer(psi.dim() as i64, stab.order)
}

pub fn orbit_from_stabilizer(d: i64, stabilizer_order: u64) -> Result<OrbitStats> {
    let orbit_size = group_order(d, true) / stabilizer_order;
    let d_squared = (d * d) as u64;
    if !orbit_size.is_multiple_of(d_squared) {
        return Err(Error::NonDivisible {
            orbit: orbit_size,
            d_squared,
        });
    }
    Ok(OrbitStats {
        stabilizer_order,
        orbit_size,
        sic_count: orbit_size / d_squared,
    })
}

/// `l ∘ e ∘ l⁻¹` in canonical form.
pub fn conjugate(l: &CliffordElement, e: &CliffordElement) -> Result<CliffordElement> {
    Ok(canonicalize(&compose(&compose(l, e)?, &l.inverse())?))
}

/// `[diag(α, −α−1), 0]` for a root `α` of `α² + α + 1 ≡ 0 (mod d)`, when
/// one exists with the factorization conditions met.
pub fn diag_order3(d: i64) -> Option<CliffordElement> {
    let alpha = solve_unity_cube_root(d)?;
    let modulus = Modulus::new(d).ok()?;
    let e = CliffordElement::new(IntMat2::diag(alpha, -alpha - 1), [0, 0], modulus).ok()?;
    debug_assert!(is_canonical_order3(&e));
    Some(e)
}

/// The operation `[Z, 0]` in canonical form.
pub fn z_element(modulus: Modulus) -> CliffordElement {
    canonicalize(&CliffordElement::new(IntMat2::Z, [0, 0], modulus).expect("det Z = 1"))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZWitness {
    /// A stabilizing element.
    pub element: CliffordElement,
    /// `l` with `l ∘ element ∘ l⁻¹ = [Z, 0]`.
    pub conjugator: CliffordElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    pub stabilizer: StabilizerResult,
    /// A canonical order-3 element of the stabilizer.
    pub order3_witness: Option<CliffordElement>,
    pub z_witness: Option<ZWitness>,
}

impl SymmetryReport {
    pub fn has_order3_stabilizer(&self) -> bool {
        self.order3_witness.is_some()
    }

    pub fn has_z_conjugate(&self) -> bool {
        self.z_witness.is_some()
    }
}

/// Search the enumerated group for `l` with `l ∘ e ∘ l⁻¹ = [Z, 0]`.
pub fn find_z_conjugator(e: &CliffordElement, cap: u64) -> Result<Option<CliffordElement>> {
    let modulus = e.modulus();
    let z = z_element(modulus);
    let order = group_order(modulus.d(), true);
    if order > cap {
        return Err(Error::CapExceeded { order, cap });
    }
    // conjugation preserves F's trace and determinant
    if !is_canonical_order3(e) {
        return Ok(None);
    }
    Ok(group_matrices(modulus, true)
        .par_iter()
        .find_map_first(|&f| {
            let d = modulus.d();
            (0..d)
                .flat_map(|x| (0..d).map(move |y| [x, y]))
                .map(|chi| CliffordElement::new(f, chi, modulus).expect("valid"))
                .find(|l| conjugate(l, e).ok() == Some(z))
        }))
}

pub fn conjecture_scan(psi: &StateVector, tol: f64) -> Result<SymmetryReport> {
    conjecture_scan_capped(psi, tol, DEFAULT_ENUMERATION_CAP)
}

pub fn conjecture_scan_capped(psi: &StateVector, tol: f64, cap: u64) -> Result<SymmetryReport> {
    let stabilizer = stabilizer_capped(psi, tol, cap)?;
    let candidates: Vec<_> = stabilizer
        .elements
        .iter()
        .filter(|e| is_canonical_order3(e))
        .copied()
        .collect();
    let order3_witness = candidates.first().copied();
    let mut z_witness = None;
    for e in candidates {
        if let Some(l) = find_z_conjugator(&e, cap)? {
            z_witness = Some(ZWitness {
                element: e,
                conjugator: l,
            });
            break;
        }
    }
    Ok(SymmetryReport {
        stabilizer,
        order3_witness,
        z_witness,
    })
}
