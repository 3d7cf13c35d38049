//! Displacement operators `D_p = τ^(p1 p2) S^p1 T^p2` and the dense complex
//! substrate (operators with an anti-linear flag, state vectors).
//!
//! `T|e_r⟩ = ω^r|e_r⟩`, `S|e_r⟩ = |e_(r+1 mod d)⟩`, `ω = exp(2πi/d)` and
//! `τ = −exp(πi/d)`. Every root of unity is evaluated from an exact
//! rational multiple of π.

use std::f64::consts::PI;
use std::ops::{Add, Index, IndexMut, Neg};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Phase constants for dimension `d`, with a lookup table of the `2d`-th
/// roots of unity `exp(iπ j / d)`.
#[derive(Clone, Debug)]
pub struct PhaseContext {
    d: i64,
    pub omega: Complex64,
    pub tau: Complex64,
    half_roots: Vec<Complex64>,
}

impl PhaseContext {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let d = d as i64;
        let half_roots: Vec<Complex64> = (0..2 * d)
            .map(|j| Complex64::from_polar(1.0, PI * j as f64 / d as f64))
            .collect();
        let omega = half_roots[(2 % (2 * d)) as usize];
        let tau = half_roots[((d + 1) % (2 * d)) as usize];
        Ok(PhaseContext {
            d,
            omega,
            tau,
            half_roots,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d as usize
    }

    /// `τ^k`. Since `τ = exp(iπ (d + 1)/d)`, the power only depends on
    /// `k (d + 1) mod 2d`.
    #[inline]
    pub fn tau_pow(&self, k: i64) -> Complex64 {
        let m = 2 * self.d;
        let j = ((k.rem_euclid(m) as i128 * (self.d + 1) as i128) % m as i128) as usize;
        self.half_roots[j]
    }

    /// `ω^k`.
    #[inline]
    pub fn omega_pow(&self, k: i64) -> Complex64 {
        self.half_roots[(2 * k.rem_euclid(self.d)) as usize]
    }
}

/// A pair `p = (p1, p2)` labelling the displacement `D_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticIndex {
    pub p1: i64,
    pub p2: i64,
}

impl SymplecticIndex {
    pub const fn new(p1: i64, p2: i64) -> Self {
        SymplecticIndex { p1, p2 }
    }

    pub fn is_zero_mod(self, d: i64) -> bool {
        self.p1.rem_euclid(d) == 0 && self.p2.rem_euclid(d) == 0
    }

    /// All of `(Z_d)^2` in row-major order, `(0,0)` first.
    pub fn all(d: usize) -> impl Iterator<Item = SymplecticIndex> {
        let d = d as i64;
        (0..d).flat_map(move |a| (0..d).map(move |b| SymplecticIndex::new(a, b)))
    }

    /// `(Z_d)^2` without the origin.
    pub fn nonzero(d: usize) -> impl Iterator<Item = SymplecticIndex> {
        Self::all(d).skip(1)
    }
}

impl Neg for SymplecticIndex {
    type Output = SymplecticIndex;
    fn neg(self) -> Self {
        SymplecticIndex::new(-self.p1, -self.p2)
    }
}

impl Add for SymplecticIndex {
    type Output = SymplecticIndex;
    fn add(self, q: Self) -> Self {
        SymplecticIndex::new(self.p1 + q.p1, self.p2 + q.p2)
    }
}

impl From<(i64, i64)> for SymplecticIndex {
    fn from((p1, p2): (i64, i64)) -> Self {
        SymplecticIndex::new(p1, p2)
    }
}

/// `⟨p, q⟩ = p2 q1 − p1 q2`, unreduced.
pub fn symplectic_form(p: SymplecticIndex, q: SymplecticIndex) -> i64 {
    p.p2 * q.p1 - p.p1 * q.p2
}

/// A dense `d × d` matrix. When `antilinear` is set the operator acts as
/// `v ↦ M · conj(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub entries: DMatrix<Complex64>,
    pub antilinear: bool,
}

impl OperatorMatrix {
    pub fn linear(entries: DMatrix<Complex64>) -> Self {
        OperatorMatrix {
            entries,
            antilinear: false,
        }
    }

    pub fn identity(d: usize) -> Self {
        Self::linear(DMatrix::identity(d, d))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Operator product `self ∘ other`.
    pub fn compose(&self, other: &OperatorMatrix) -> OperatorMatrix {
        let rhs = if self.antilinear {
            other.entries.map(|z| z.conj())
        } else {
            other.entries.clone()
        };
        OperatorMatrix {
            entries: &self.entries * rhs,
            antilinear: self.antilinear ^ other.antilinear,
        }
    }

    /// Conjugate a linear operator: `A X A†`. For an anti-linear `A = M K`
    /// this is `M conj(X) M†`.
    pub fn conjugate_linear(&self, x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let inner = if self.antilinear {
            x.map(|z| z.conj())
        } else {
            x.clone()
        };
        &self.entries * inner * self.entries.adjoint()
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        let input = if self.antilinear {
            v.amplitudes.map(|z| z.conj())
        } else {
            v.amplitudes.clone()
        };
        StateVector::new(&self.entries * input)
    }

    pub fn pow(&self, k: u64) -> OperatorMatrix {
        let mut acc = OperatorMatrix::identity(self.dim());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Largest entry of `M†M − 1`.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        let g = self.entries.adjoint() * &self.entries - DMatrix::<Complex64>::identity(d, d);
        g.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `|Tr(A† B)|`; equals `d` exactly when the two unitaries agree up to a
    /// phase. The flags must match for the comparison to be meaningful.
    pub fn phase_free_overlap(&self, other: &OperatorMatrix) -> f64 {
        (self.entries.adjoint() * &other.entries).trace().norm()
    }

    /// Whether the two operators agree up to a global phase within `tol`.
    pub fn proportional_to(&self, other: &OperatorMatrix, tol: f64) -> bool {
        self.antilinear == other.antilinear
            && (self.phase_free_overlap(other) - self.dim() as f64).abs() <= tol
    }

    /// Whether `M = c · 1` for some scalar, within `tol` entrywise.
    pub fn scalar_residual(&self) -> (Complex64, f64) {
        let d = self.dim();
        let c = self.entries.trace() / d as f64;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let target = if i == j { c } else { Complex64::new(0.0, 0.0) };
                worst = worst.max((self.entries[(i, j)] - target).norm());
            }
        }
        (c, worst)
    }
}

/// A complex amplitude vector in the standard basis `|e_0⟩ … |e_(d−1)⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: DVector<Complex64>) -> Self {
        StateVector { amplitudes }
    }

    pub fn from_vec(v: Vec<Complex64>) -> Self {
        StateVector::new(DVector::from_vec(v))
    }

    pub fn from_parts(re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch {
                expected: re.len(),
                found: im.len(),
            });
        }
        Ok(StateVector::from_vec(
            re.iter()
                .zip(im)
                .map(|(&a, &b)| Complex64::new(a, b))
                .collect(),
        ))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalized(&self) -> StateVector {
        let n = self.norm();
        StateVector::new(self.amplitudes.map(|z| z / n))
    }

    pub fn conj(&self) -> StateVector {
        StateVector::new(self.amplitudes.map(|z| z.conj()))
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }
}

impl Index<usize> for StateVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.amplitudes[i]
    }
}

impl IndexMut<usize> for StateVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.amplitudes[i]
    }
}

/// Dense `D_p`.
pub fn displacement(p: SymplecticIndex, ctx: &PhaseContext) -> OperatorMatrix {
    let d = ctx.dim();
    let di = d as i64;
    let prefactor = ctx.tau_pow(p.p1.rem_euclid(2 * di) * p.p2.rem_euclid(2 * di));
    let shift = p.p1.rem_euclid(di) as usize;
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for s in 0..d {
        m[((s + shift) % d, s)] = prefactor * ctx.omega_pow(p.p2 * s as i64);
    }
    OperatorMatrix::linear(m)
}

/// `⟨ψ|D_p|ψ⟩` in O(d) from the shift-and-phase structure of `D_p`.
pub fn displacement_overlap(
    psi: &[Complex64],
    p: SymplecticIndex,
    ctx: &PhaseContext,
) -> Complex64 {
    let d = psi.len();
    let di = d as i64;
    let prefactor = ctx.tau_pow(p.p1.rem_euclid(2 * di) * p.p2.rem_euclid(2 * di));
    let shift = p.p1.rem_euclid(di) as usize;
    let p2 = p.p2.rem_euclid(di);
    let mut acc = Complex64::new(0.0, 0.0);
    for s in 0..d {
        acc += psi[(s + shift) % d].conj() * ctx.omega_pow(p2 * s as i64) * psi[s];
    }
    prefactor * acc
}

/// `D_p ψ` in O(d).
pub fn displace_vector(
    psi: &[Complex64],
    p: SymplecticIndex,
    ctx: &PhaseContext,
) -> Vec<Complex64> {
    let d = psi.len();
    let di = d as i64;
    let prefactor = ctx.tau_pow(p.p1.rem_euclid(2 * di) * p.p2.rem_euclid(2 * di));
    let shift = p.p1.rem_euclid(di) as usize;
    let p2 = p.p2.rem_euclid(di);
    let mut out = vec![Complex64::new(0.0, 0.0); d];
    for s in 0..d {
        out[(s + shift) % d] = prefactor * ctx.omega_pow(p2 * s as i64) * psi[s];
    }
    out
}

#[cfg(test)]
pub(crate) fn max_entry_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
