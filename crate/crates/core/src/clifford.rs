//! The extended Clifford group modulo phases, represented by pairs
//! `(F, χ)` with `F` a 2×2 integer matrix of determinant `±1 (mod d̄)` and
//! `χ ∈ (Z_d)^2`, composed by the semidirect rule
//! `(F1, χ1) ∘ (F2, χ2) = (F1 F2, χ1 + F1 χ2)`.
//!
//! Concrete operators are synthesized as `D_χ V_F` for prime `F`,
//! `D_χ V_F1 V_F2` otherwise, and as `J ∘ U(J̃F, J̃χ)` for anti-unitary
//! elements, where `J` is complex conjugation in the standard basis and
//! `J̃ = diag(1, −1)`. For even `d` the pairs are taken modulo the
//! 8-element kernel.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numtheory::{gcd, mod_inverse, Modulus, ResidueCountTable};
use crate::weyl::{
    displace_vector, displacement, OperatorMatrix, PhaseContext, StateVector, SymplecticIndex,
};

/// Default bound on the size of a group that will be enumerated.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// A 2×2 integer matrix `[[α, β], [γ, δ]]`, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat2(pub [i64; 4]);

impl IntMat2 {
    pub const IDENTITY: IntMat2 = IntMat2([1, 0, 0, 1]);
    /// `J̃ = diag(1, −1)`, the matrix of complex conjugation.
    pub const J_TILDE: IntMat2 = IntMat2([1, 0, 0, -1]);
    /// The order-3 matrix `Z = [[0, −1], [1, −1]]`.
    pub const Z: IntMat2 = IntMat2([0, -1, 1, -1]);

    pub const fn new(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Self {
        IntMat2([alpha, beta, gamma, delta])
    }

    pub const fn diag(a: i64, b: i64) -> Self {
        IntMat2([a, 0, 0, b])
    }

    #[inline]
    pub fn alpha(&self) -> i64 {
        self.0[0]
    }
    #[inline]
    pub fn beta(&self) -> i64 {
        self.0[1]
    }
    #[inline]
    pub fn gamma(&self) -> i64 {
        self.0[2]
    }
    #[inline]
    pub fn delta(&self) -> i64 {
        self.0[3]
    }

    pub fn det(&self) -> i64 {
        self.alpha() * self.delta() - self.beta() * self.gamma()
    }

    pub fn trace(&self) -> i64 {
        self.alpha() + self.delta()
    }

    pub fn reduce(&self, m: i64) -> IntMat2 {
        IntMat2(self.0.map(|x| x.rem_euclid(m)))
    }

    pub fn mul(&self, o: &IntMat2) -> IntMat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        IntMat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn mul_mod(&self, o: &IntMat2, m: i64) -> IntMat2 {
        self.mul(o).reduce(m)
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        [
            self.alpha() * v[0] + self.beta() * v[1],
            self.gamma() * v[0] + self.delta() * v[1],
        ]
    }

    /// `[[δ, −β], [−γ, α]]`.
    pub fn adjugate(&self) -> IntMat2 {
        IntMat2([self.delta(), -self.beta(), -self.gamma(), self.alpha()])
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// A matrix in `SL(2, Z_d̄)`, entries reduced into `[0, d̄)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SL2Matrix {
    m: IntMat2,
    modulus: Modulus,
}

impl SL2Matrix {
    pub fn new(m: IntMat2, modulus: Modulus) -> Result<Self> {
        let dbar = modulus.dbar();
        let m = m.reduce(dbar);
        let det = m.det().rem_euclid(dbar);
        if det != 1 % dbar {
            return Err(Error::BadDeterminant { det, dbar });
        }
        Ok(SL2Matrix { m, modulus })
    }

    pub fn matrix(&self) -> IntMat2 {
        self.m
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Unitary,
    AntiUnitary,
}

/// An element `[F, χ]` of the extended Clifford group modulo phases.
///
/// `F` is reduced into `[0, d̄)` and `χ` into `[0, d)`. For even `d`,
/// structurally distinct pairs may denote the same operation; compare with
/// [`elements_equal`] or after [`canonicalize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    f: IntMat2,
    chi: [i64; 2],
    modulus: Modulus,
}

impl CliffordElement {
    pub fn new(f: IntMat2, chi: [i64; 2], modulus: Modulus) -> Result<Self> {
        if modulus.d() < 2 {
            return Err(Error::InvalidDimension(modulus.d()));
        }
        let dbar = modulus.dbar();
        let f = f.reduce(dbar);
        let det = f.det().rem_euclid(dbar);
        if det != 1 && det != dbar - 1 {
            return Err(Error::BadDeterminant { det, dbar });
        }
        Ok(CliffordElement {
            f,
            chi: chi.map(|x| modulus.red_d(x)),
            modulus,
        })
    }

    pub fn identity(modulus: Modulus) -> Self {
        CliffordElement {
            f: IntMat2::IDENTITY.reduce(modulus.dbar()),
            chi: [0, 0],
            modulus,
        }
    }

    /// The element `[J̃, 0]` of complex conjugation.
    pub fn conjugation(modulus: Modulus) -> Self {
        CliffordElement::new(IntMat2::J_TILDE, [0, 0], modulus).expect("det J̃ = −1")
    }

    /// The pure displacement `[1, χ]`.
    pub fn displacement(chi: [i64; 2], modulus: Modulus) -> Self {
        CliffordElement::new(IntMat2::IDENTITY, chi, modulus).expect("det 1 = 1")
    }

    pub fn f(&self) -> IntMat2 {
        self.f
    }

    pub fn chi(&self) -> [i64; 2] {
        self.chi
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.modulus.dim()
    }

    pub fn parity(&self) -> Parity {
        if self.f.det().rem_euclid(self.modulus.dbar()) == 1 {
            Parity::Unitary
        } else {
            Parity::AntiUnitary
        }
    }

    pub fn is_unitary(&self) -> bool {
        self.parity() == Parity::Unitary
    }

    /// Lexicographic key: `F` row-major, then `χ`.
    pub fn key(&self) -> ([i64; 4], [i64; 2]) {
        (self.f.0, self.chi)
    }

    fn compose_unchecked(&self, o: &CliffordElement) -> CliffordElement {
        let m = self.modulus;
        let fchi = self.f.apply(o.chi);
        CliffordElement {
            f: self.f.mul_mod(&o.f, m.dbar()),
            chi: [
                m.red_d(self.chi[0] + fchi[0]),
                m.red_d(self.chi[1] + fchi[1]),
            ],
            modulus: m,
        }
    }

    /// `(F, χ)⁻¹ = (F⁻¹, −F⁻¹ χ)` with `F⁻¹ = det(F) · adj(F)`.
    pub fn inverse(&self) -> CliffordElement {
        let m = self.modulus;
        let det = if self.is_unitary() { 1 } else { -1 };
        let finv = IntMat2(self.f.adjugate().0.map(|x| det * x)).reduce(m.dbar());
        let v = finv.apply(self.chi);
        CliffordElement {
            f: finv,
            chi: [m.red_d(-v[0]), m.red_d(-v[1])],
            modulus: m,
        }
    }

    pub fn pow(&self, k: u64) -> CliffordElement {
        let mut acc = CliffordElement::identity(self.modulus);
        let mut base = *self;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            k >>= 1;
        }
        acc
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, ({}, {})]", self.f, self.chi[0], self.chi[1])
    }
}

/// Reduce and check a candidate pair for dimension `d`.
pub fn validate_element(f: IntMat2, chi: [i64; 2], d: i64) -> Result<CliffordElement> {
    CliffordElement::new(f, chi, Modulus::new(d)?)
}

/// `β ≠ 0` and `gcd(β, d̄) = 1`.
pub fn is_prime_matrix(f: &SL2Matrix) -> bool {
    let beta = f.m.beta();
    beta != 0 && gcd(beta, f.modulus.dbar()) == 1
}

/// Write a non-prime `F` as `F1 F2` with `F1 = [[0, −1], [1, x]]` and
/// `F2 = [[γ + xα, δ + xβ], [−α, −β]]`, taking the smallest `x ≥ 0` for
/// which `δ + xβ` is a unit modulo `d̄`.
pub fn decompose_nonprime(f: &SL2Matrix) -> Result<(SL2Matrix, SL2Matrix)> {
    if is_prime_matrix(f) {
        return Err(Error::PrimeInput);
    }
    let modulus = f.modulus;
    let dbar = modulus.dbar();
    let [a, b, c, d] = f.m.0;
    let x = (0..dbar)
        .find(|&x| {
            let v = (d + x * b).rem_euclid(dbar);
            v != 0 && gcd(v, dbar) == 1
        })
        .expect("a unit δ + xβ exists whenever det F ≡ 1");
    let f1 = SL2Matrix::new(IntMat2::new(0, -1, 1, x), modulus)?;
    let f2 = SL2Matrix::new(IntMat2::new(c + x * a, d + x * b, -a, -b), modulus)?;
    Ok((f1, f2))
}

/// A prime matrix prepared for building `V_F`.
#[derive(Clone, Copy, Debug)]
struct PrimeFactor {
    alpha: i64,
    beta_inv: i64,
    delta: i64,
}

impl PrimeFactor {
    fn new(f: &SL2Matrix) -> Self {
        debug_assert!(is_prime_matrix(f));
        PrimeFactor {
            alpha: f.m.alpha(),
            beta_inv: mod_inverse(f.m.beta(), f.modulus.dbar()).expect("prime matrix"),
            delta: f.m.delta(),
        }
    }

    /// `τ^(β⁻¹ (α s² − 2 r s + δ r²)) / √d` at `(r, s)`.
    #[inline]
    fn entry(&self, r: i64, s: i64, ctx: &PhaseContext, scale: f64) -> Complex64 {
        let e = self.beta_inv * (self.alpha * s * s - 2 * r * s + self.delta * r * r);
        ctx.tau_pow(e) * scale
    }

    fn matrix(&self, ctx: &PhaseContext) -> DMatrix<Complex64> {
        let d = ctx.dim();
        let scale = 1.0 / (d as f64).sqrt();
        DMatrix::from_fn(d, d, |r, s| self.entry(r as i64, s as i64, ctx, scale))
    }

    fn apply(&self, v: &[Complex64], ctx: &PhaseContext) -> Vec<Complex64> {
        let d = v.len();
        let scale = 1.0 / (d as f64).sqrt();
        (0..d as i64)
            .map(|r| {
                v.iter()
                    .enumerate()
                    .map(|(s, &z)| self.entry(r, s as i64, ctx, scale) * z)
                    .sum()
            })
            .collect()
    }
}

/// The linear part `V_F1 [V_F2]` of a synthesized operator, for the
/// unitary element `[F', χ']` with `F' = F` (unitary) or `F' = J̃F`
/// (anti-unitary).
#[derive(Clone, Debug)]
pub struct SymplecticPart {
    factors: Vec<PrimeFactor>,
    antilinear: bool,
}

impl SymplecticPart {
    /// Prepare the `V` factors for a matrix of determinant `±1 (mod d̄)`.
    pub fn new(f: IntMat2, modulus: Modulus) -> Result<Self> {
        let dbar = modulus.dbar();
        let det = f.det().rem_euclid(dbar);
        let (linear_f, antilinear) = if det == 1 {
            (f, false)
        } else if det == dbar - 1 {
            (IntMat2::J_TILDE.mul(&f), true)
        } else {
            return Err(Error::BadDeterminant { det, dbar });
        };
        let sl = SL2Matrix::new(linear_f, modulus)?;
        let factors = if is_prime_matrix(&sl) {
            vec![PrimeFactor::new(&sl)]
        } else {
            let (f1, f2) = decompose_nonprime(&sl)?;
            vec![PrimeFactor::new(&f1), PrimeFactor::new(&f2)]
        };
        Ok(SymplecticPart {
            factors,
            antilinear,
        })
    }

    pub fn is_antilinear(&self) -> bool {
        self.antilinear
    }

    /// Dense `V_F1 [V_F2]` (always linear).
    pub fn matrix(&self, ctx: &PhaseContext) -> DMatrix<Complex64> {
        let mut it = self.factors.iter();
        let first = it.next().expect("at least one factor").matrix(ctx);
        it.fold(first, |acc, f| acc * f.matrix(ctx))
    }

    /// `V_F1 [V_F2] v` in O(d²).
    pub fn apply(&self, v: &[Complex64], ctx: &PhaseContext) -> Vec<Complex64> {
        self.factors
            .iter()
            .rev()
            .fold(v.to_vec(), |acc, f| f.apply(&acc, ctx))
    }

    /// The displacement applied after `V`: `χ` for unitary elements,
    /// `J̃χ` for anti-unitary ones.
    pub fn linear_chi(&self, chi: [i64; 2]) -> SymplecticIndex {
        if self.antilinear {
            SymplecticIndex::new(chi[0], -chi[1])
        } else {
            SymplecticIndex::new(chi[0], chi[1])
        }
    }

    /// The action of the operator for `[F, χ]` on `ψ`:
    /// `D_χ V ψ`, or `conj(D_(J̃χ) V ψ)` when anti-linear.
    ///
    /// `vpsi` must be `self.apply(ψ)`; callers sweeping over many `χ` for a
    /// fixed `F` compute it once.
    pub fn finish(&self, vpsi: &[Complex64], chi: [i64; 2], ctx: &PhaseContext) -> Vec<Complex64> {
        let mut out = displace_vector(vpsi, self.linear_chi(chi), ctx);
        if self.antilinear {
            out.iter_mut().for_each(|z| *z = z.conj());
        }
        out
    }
}

/// Builds concrete operators for elements of one dimension, reusing the
/// phase tables.
#[derive(Clone, Debug)]
pub struct Synthesizer {
    ctx: PhaseContext,
    modulus: Modulus,
}

impl Synthesizer {
    pub fn new(modulus: Modulus) -> Result<Self> {
        Ok(Synthesizer {
            ctx: PhaseContext::new(modulus.dim())?,
            modulus,
        })
    }

    pub fn context(&self) -> &PhaseContext {
        &self.ctx
    }

    fn check(&self, e: &CliffordElement) -> Result<()> {
        if e.modulus != self.modulus {
            return Err(Error::DimensionMismatch {
                expected: self.modulus.dim(),
                found: e.dim(),
            });
        }
        Ok(())
    }

    /// A matrix `M` (flagged anti-linear where applicable) representing
    /// `[F, χ]`.
    pub fn matrix(&self, e: &CliffordElement) -> Result<OperatorMatrix> {
        self.check(e)?;
        let part = SymplecticPart::new(e.f, e.modulus)?;
        let v = part.matrix(&self.ctx);
        let u = displacement(part.linear_chi(e.chi), &self.ctx).entries * v;
        Ok(if part.antilinear {
            OperatorMatrix {
                entries: u.map(|z| z.conj()),
                antilinear: true,
            }
        } else {
            OperatorMatrix::linear(u)
        })
    }

    /// The synthesized operator applied to `psi`, without materializing it.
    pub fn apply(&self, e: &CliffordElement, psi: &StateVector) -> Result<StateVector> {
        self.check(e)?;
        if psi.dim() != self.modulus.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.modulus.dim(),
                found: psi.dim(),
            });
        }
        let part = SymplecticPart::new(e.f, e.modulus)?;
        let vpsi = part.apply(psi.as_slice(), &self.ctx);
        Ok(StateVector::from_vec(part.finish(&vpsi, e.chi, &self.ctx)))
    }
}

/// Synthesize a representative operator of `[F, χ]`. The global phase is
/// whatever the construction produces.
pub fn synthesize(e: &CliffordElement) -> Result<OperatorMatrix> {
    Synthesizer::new(e.modulus)?.matrix(e)
}

fn same_dimension(a: &CliffordElement, b: &CliffordElement) -> Result<()> {
    if a.modulus != b.modulus {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

/// `(F_a F_b, χ_a + F_a χ_b)`.
pub fn compose(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
    same_dimension(a, b)?;
    Ok(a.compose_unchecked(b))
}

/// One of the 8 kernel elements
/// `([[1 + rd, sd], [td, 1 + rd]], (sd/2, td/2))` for even `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KernelElement {
    pub r: bool,
    pub s: bool,
    pub t: bool,
}

impl KernelElement {
    pub fn all() -> impl Iterator<Item = KernelElement> {
        (0..8u8).map(|bits| KernelElement {
            r: bits & 4 != 0,
            s: bits & 2 != 0,
            t: bits & 1 != 0,
        })
    }

    /// The pair this kernel element denotes. Only meaningful for even `d`.
    pub fn to_element(&self, modulus: Modulus) -> CliffordElement {
        let d = modulus.d();
        let (r, s, t) = (self.r as i64, self.s as i64, self.t as i64);
        let f = IntMat2::new(1 + r * d, s * d, t * d, 1 + r * d);
        CliffordElement::new(f, [s * d / 2, t * d / 2], modulus)
            .expect("kernel elements have det 1")
    }
}

/// The representative of the kernel coset of `e`: for odd `d` the reduced
/// pair itself, for even `d` the lexicographically smallest of the 8
/// members `e ∘ k`.
pub fn canonicalize(e: &CliffordElement) -> CliffordElement {
    if !e.modulus.is_even() {
        return *e;
    }
    KernelElement::all()
        .map(|k| e.compose_unchecked(&k.to_element(e.modulus)))
        .min_by_key(|x| x.key())
        .expect("8 kernel elements")
}

pub fn is_canonical(e: &CliffordElement) -> bool {
    canonicalize(e) == *e
}

pub fn elements_equal(a: &CliffordElement, b: &CliffordElement) -> Result<bool> {
    same_dimension(a, b)?;
    Ok(canonicalize(a) == canonicalize(b))
}

/// `Tr F (mod d)`.
pub fn clifford_trace(e: &CliffordElement) -> i64 {
    e.modulus.red_d(e.f.trace())
}

pub fn is_identity(e: &CliffordElement) -> bool {
    canonicalize(e) == CliffordElement::identity(e.modulus)
}

/// Smallest `k ≥ 1` with `e^k` equal to the identity operation.
pub fn element_order(e: &CliffordElement) -> Result<u64> {
    let bound = group_order(e.modulus.d(), true);
    let mut acc = *e;
    for k in 1..=bound {
        if is_identity(&acc) {
            return Ok(k);
        }
        acc = acc.compose_unchecked(e);
    }
    Err(Error::OrderOverflow { bound })
}

/// Unitary, `Tr F ≡ −1 (mod d)` and `F ≢ 1 (mod d)`.
pub fn is_canonical_order3(e: &CliffordElement) -> bool {
    let m = e.modulus;
    e.is_unitary()
        && clifford_trace(e) == m.red_d(-1)
        && e.f.reduce(m.d()) != IntMat2::IDENTITY.reduce(m.d())
}

/// `|C(d)/I(d)| = d² Σ_n ν(n, d) ν(n + 1, d)`, doubled for the extended
/// group.
pub fn group_order(d: i64, extended: bool) -> u64 {
    let sl = ResidueCountTable::new(d).adjacent_product_sum();
    let order = (d * d) as u64 * sl;
    if extended {
        2 * order
    } else {
        order
    }
}

/// Every matrix modulo `d̄` with determinant `1` (or `±1` when extended),
/// in lexicographic order.
pub fn group_matrices(modulus: Modulus, extended: bool) -> Vec<IntMat2> {
    let dbar = modulus.dbar();
    let mut out = Vec::new();
    for a in 0..dbar {
        for b in 0..dbar {
            for c in 0..dbar {
                for d in 0..dbar {
                    let det = (a * d - b * c).rem_euclid(dbar);
                    if det == 1 % dbar || (extended && det == dbar - 1) {
                        out.push(IntMat2([a, b, c, d]));
                    }
                }
            }
        }
    }
    out
}

/// The canonical elements `[F, χ]` with the given `F`, over all `χ`.
pub fn canonical_elements_for(
    f: IntMat2,
    modulus: Modulus,
) -> impl Iterator<Item = CliffordElement> {
    let d = modulus.d();
    (0..d)
        .flat_map(move |x| (0..d).map(move |y| [x, y]))
        .filter_map(move |chi| CliffordElement::new(f, chi, modulus).ok())
        .filter(is_canonical)
}

/// Each element of the (extended) Clifford group modulo phases exactly
/// once, in canonical form.
pub fn enumerate_group(d: i64, extended: bool) -> Result<impl Iterator<Item = CliffordElement>> {
    enumerate_group_capped(d, extended, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_group_capped(
    d: i64,
    extended: bool,
    cap: u64,
) -> Result<impl Iterator<Item = CliffordElement>> {
    let modulus = Modulus::new(d)?;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let order = group_order(d, extended);
    if order > cap {
        return Err(Error::CapExceeded { order, cap });
    }
    Ok(group_matrices(modulus, extended)
        .into_iter()
        .flat_map(move |f| canonical_elements_for(f, modulus)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{max_entry_diff, symplectic_form};
    use std::collections::HashSet;

    fn el(f: [i64; 4], chi: [i64; 2], d: i64) -> CliffordElement {
        validate_element(IntMat2(f), chi, d).unwrap()
    }

    fn sl(f: [i64; 4], d: i64) -> SL2Matrix {
        SL2Matrix::new(IntMat2(f), Modulus::new(d).unwrap()).unwrap()
    }

    /// `U D_p U† = ω^⟨χ, Fp⟩ D_Fp` for every `p`; returns the worst entry error.
    pub(crate) fn conjugation_error(
        e: &CliffordElement,
        u: &OperatorMatrix,
        ctx: &PhaseContext,
    ) -> f64 {
        let d = e.dim();
        let mut worst: f64 = 0.0;
        for p in SymplecticIndex::all(d) {
            let lhs = u.conjugate_linear(&displacement(p, ctx).entries);
            let fp = e.f().apply([p.p1, p.p2]);
            let fp = SymplecticIndex::new(fp[0], fp[1]);
            let chi = SymplecticIndex::new(e.chi()[0], e.chi()[1]);
            let rhs = displacement(fp, ctx).entries * ctx.omega_pow(symplectic_form(chi, fp));
            worst = worst.max(max_entry_diff(&lhs, &rhs));
        }
        worst
    }

    #[test]
    fn validate_examples() {
        let z = el([0, -1, 1, -1], [0, 0], 5);
        assert_eq!(z.parity(), Parity::Unitary);
        let j = el([1, 0, 0, -1], [0, 0], 4);
        assert_eq!(j.parity(), Parity::AntiUnitary);
        assert_eq!(
            validate_element(IntMat2([1, 1, 0, 2]), [3, 1], 5),
            Err(Error::BadDeterminant { det: 2, dbar: 5 })
        );
        // reduction of negative entries
        assert_eq!(z.f(), IntMat2([0, 4, 1, 4]));
    }

    #[test]
    fn prime_matrix_examples() {
        assert!(is_prime_matrix(&sl([-1, -1, 1, 0], 5)));
        assert!(!is_prime_matrix(&sl([-2, 3, -1, 1], 6)));
        assert!(!is_prime_matrix(&sl([1, 0, 0, 1], 7)));
    }

    #[test]
    fn decomposition_examples() {
        let cases = [
            ([-2, 3, -1, 1], 6),
            ([1, 0, 1, 1], 4),
            ([-5, -6, -7, 4], 21),
        ];
        for (f, d) in cases {
            let m = sl(f, d);
            let (f1, f2) = decompose_nonprime(&m).unwrap();
            assert!(is_prime_matrix(&f1) && is_prime_matrix(&f2));
            let dbar = m.modulus().dbar();
            assert_eq!(f1.matrix().mul_mod(&f2.matrix(), dbar), m.matrix());
        }
        let (f1, f2) = decompose_nonprime(&sl([1, 0, 1, 1], 4)).unwrap();
        assert_eq!(f1.matrix(), IntMat2([0, 7, 1, 0]));
        assert_eq!(f2.matrix(), IntMat2([1, 1, 7, 0]));
        assert_eq!(
            decompose_nonprime(&sl([-1, -1, 1, 0], 5)),
            Err(Error::PrimeInput)
        );
    }

    #[test]
    fn decomposition_covers_all_nonprime() {
        for d in 2..=9 {
            let modulus = Modulus::new(d).unwrap();
            for f in group_matrices(modulus, false) {
                let m = SL2Matrix::new(f, modulus).unwrap();
                if !is_prime_matrix(&m) {
                    let (f1, f2) = decompose_nonprime(&m).unwrap();
                    assert_eq!(f1.matrix().mul_mod(&f2.matrix(), modulus.dbar()), f);
                }
            }
        }
    }

    #[test]
    fn synthesis_examples() {
        let id = CliffordElement::identity(Modulus::new(3).unwrap());
        let u = synthesize(&id).unwrap();
        assert!(u.scalar_residual().1 < 1e-12);

        let e5 = el([-1, -1, 1, 0], [2, 2], 5);
        let s5 = Synthesizer::new(e5.modulus()).unwrap();
        let u5 = s5.matrix(&e5).unwrap();
        assert!(u5.unitarity_defect() < 1e-12);
        assert!(conjugation_error(&e5, &u5, s5.context()) < 1e-10);

        let e6 = el([-2, 3, -1, 1], [3, 0], 6);
        let s6 = Synthesizer::new(e6.modulus()).unwrap();
        assert!(conjugation_error(&e6, &s6.matrix(&e6).unwrap(), s6.context()) < 1e-10);
    }

    #[test]
    fn f5_operator_matches_closed_form() {
        // (1/√5) D_(2,2) Σ exp(−4πi s(s + 2r)/5) |e_r⟩⟨e_s| up to phase
        let e5 = el([-1, -1, 1, 0], [2, 2], 5);
        let s5 = Synthesizer::new(e5.modulus()).unwrap();
        let ctx = s5.context();
        let inner = DMatrix::from_fn(5, 5, |r, s| {
            let (r, s) = (r as f64, s as f64);
            Complex64::from_polar(
                1.0 / 5f64.sqrt(),
                -4.0 * std::f64::consts::PI * s * (s + 2.0 * r) / 5.0,
            )
        });
        let closed = OperatorMatrix::linear(displacement((2, 2).into(), ctx).entries * inner);
        assert!(s5.matrix(&e5).unwrap().proportional_to(&closed, 1e-10));
    }

    #[test]
    fn anti_unitary_conjugation_element_is_complex_conjugation() {
        let j = CliffordElement::conjugation(Modulus::new(4).unwrap());
        let u = synthesize(&j).unwrap();
        assert!(u.antilinear);
        assert!(u.scalar_residual().1 < 1e-12);
    }

    #[test]
    fn compose_examples() {
        let z = el([0, -1, 1, -1], [0, 0], 5);
        let z3 = compose(&compose(&z, &z).unwrap(), &z).unwrap();
        assert!(is_identity(&z3));

        let a7 = el([2, -1, -1, 0], [1, 1], 7);
        let f7 = el([-2, -2, -2, 1], [2, 0], 7);
        assert!(elements_equal(&compose(&a7, &a7).unwrap(), &f7).unwrap());

        let e = el([3, 1, 2, 1], [4, 6], 7);
        let id = CliffordElement::identity(e.modulus());
        assert_eq!(compose(&id, &e).unwrap(), e);
        assert_eq!(compose(&e, &e.inverse()).unwrap(), id);

        let other = el([1, 0, 0, 1], [0, 0], 5);
        assert!(matches!(
            compose(&e, &other),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonicalize_examples() {
        let m4 = Modulus::new(4).unwrap();
        let e = el([5, 0, 0, 5], [0, 0], 4);
        assert_eq!(canonicalize(&e), CliffordElement::identity(m4));

        // the coset of ([[1,0],[0,1]], (2,0)), listed directly from the kernel formula
        let e = el([1, 0, 0, 1], [2, 0], 4);
        let mut members = Vec::new();
        for r in 0..2 {
            for s in 0..2 {
                for t in 0..2 {
                    let f = IntMat2([1 + 4 * r, 4 * s, 4 * t, 1 + 4 * r]);
                    let chi = [(2 + 2 * s) % 4, (2 * t) % 4];
                    members.push((f.reduce(8).0, chi));
                }
            }
        }
        members.sort();
        assert_eq!(canonicalize(&e).key(), members[0]);
        assert_eq!(canonicalize(&el([1, 4, 0, 1], [0, 0], 4)), canonicalize(&e));

        let e5 = el([2, 3, 1, 2], [4, 1], 5);
        assert_eq!(canonicalize(&e5), e5);
    }

    #[test]
    fn elements_equal_agrees_with_operators() {
        let m4 = Modulus::new(4).unwrap();
        let e = el([1, 2, 3, 7], [1, 3], 4);
        for k in KernelElement::all() {
            let other = compose(&e, &k.to_element(m4)).unwrap();
            assert!(elements_equal(&e, &other).unwrap());
            assert!(synthesize(&e)
                .unwrap()
                .proportional_to(&synthesize(&other).unwrap(), 1e-9));
        }
        let a = el([0, -1, 1, -1], [0, 0], 5);
        let b = el([1, 1, 0, 1], [0, 0], 5);
        assert!(!elements_equal(&a, &b).unwrap());
        assert!(!synthesize(&a)
            .unwrap()
            .proportional_to(&synthesize(&b).unwrap(), 1e-6));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(clifford_trace(&el([0, -1, 1, -1], [0, 0], 7)), 6);
        assert_eq!(
            clifford_trace(&CliffordElement::identity(Modulus::new(5).unwrap())),
            2
        );
        assert_eq!(clifford_trace(&el([-4, 11, 1, 3], [4, -5], 12)), 11);
    }

    #[test]
    fn trace_is_coset_invariant() {
        let m6 = Modulus::new(6).unwrap();
        for f in group_matrices(m6, true).into_iter().step_by(37) {
            let e = CliffordElement::new(f, [1, 4], m6).unwrap();
            for k in KernelElement::all() {
                let other = compose(&e, &k.to_element(m6)).unwrap();
                assert_eq!(clifford_trace(&e), clifford_trace(&other));
            }
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(element_order(&el([-1, -1, 1, 0], [2, 2], 5)).unwrap(), 3);
        assert_eq!(element_order(&el([-9, 0, 0, -2], [0, 0], 19)).unwrap(), 18);
        assert_eq!(element_order(&el([2, -1, -1, 0], [1, 1], 7)).unwrap(), 6);
        let f19 = el([-9, 0, 0, -2], [0, 0], 19).pow(6);
        assert_eq!(f19.f(), IntMat2([-8, 0, 0, 7]).reduce(19));
    }

    #[test]
    fn canonical_order3_examples() {
        for d in 2..=12 {
            assert!(
                is_canonical_order3(&el([0, -1, 1, -1], [0, 0], d)),
                "d = {d}"
            );
        }
        assert!(!is_canonical_order3(&CliffordElement::identity(
            Modulus::new(3).unwrap()
        )));
        let e6 = el([5, 4, 2, -3], [-4, 5], 6);
        assert_eq!(clifford_trace(&e6), 2);
        assert!(!is_canonical_order3(&e6));
        assert_eq!(element_order(&e6).unwrap(), 3);
    }

    #[test]
    fn group_order_examples() {
        assert_eq!(group_order(2, true), 48);
        assert_eq!(group_order(5, true), 6000);
        assert_eq!(group_order(7, true), 32928);
        for p in [2i64, 3, 5, 7, 11, 13] {
            assert_eq!(group_order(p, false), (p.pow(3) * (p * p - 1)) as u64);
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_group(2, true).unwrap().count(), 48);
        assert_eq!(enumerate_group(3, true).unwrap().count(), 432);
        assert_eq!(enumerate_group(4, true).unwrap().count(), 1536);
        assert!(matches!(
            enumerate_group_capped(7, true, 1000).map(|_| ()),
            Err(Error::CapExceeded {
                order: 32928,
                cap: 1000
            })
        ));
    }

    #[test]
    fn enumeration_matches_hash_set_dedup() {
        for d in 2..=6 {
            let modulus = Modulus::new(d).unwrap();
            for extended in [false, true] {
                let mut seen = HashSet::new();
                for f in group_matrices(modulus, extended) {
                    for x in 0..d {
                        for y in 0..d {
                            seen.insert(canonicalize(
                                &CliffordElement::new(f, [x, y], modulus).unwrap(),
                            ));
                        }
                    }
                }
                let listed: Vec<_> = enumerate_group(d, extended).unwrap().collect();
                let listed_set: HashSet<_> = listed.iter().copied().collect();
                assert_eq!(listed.len(), listed_set.len());
                assert_eq!(listed_set, seen);
                assert_eq!(listed.len() as u64, group_order(d, extended));
            }
        }
    }

    #[test]
    fn kernel_synthesizes_to_scalars() {
        for d in [2i64, 4, 6, 8] {
            let m = Modulus::new(d).unwrap();
            for k in KernelElement::all() {
                let u = synthesize(&k.to_element(m)).unwrap();
                assert!(!u.antilinear);
                assert!(u.scalar_residual().1 < 1e-10, "d={d} {k:?}");
                assert!(is_identity(&k.to_element(m)));
            }
        }
    }

    #[test]
    fn homomorphism_small_dimensions() {
        for d in 2..=3 {
            let modulus = Modulus::new(d).unwrap();
            let s = Synthesizer::new(modulus).unwrap();
            let elems: Vec<_> = enumerate_group(d, true).unwrap().collect();
            let mats: Vec<_> = elems.iter().map(|e| s.matrix(e).unwrap()).collect();
            for (i, a) in elems.iter().enumerate() {
                for (j, b) in elems.iter().enumerate() {
                    let prod = mats[i].compose(&mats[j]);
                    let direct = s.matrix(&compose(a, b).unwrap()).unwrap();
                    assert!(prod.proportional_to(&direct, 1e-9), "{a} ∘ {b}");
                }
            }
        }
    }

    #[test]
    fn anti_unitary_orders_are_even() {
        for d in 2..=5 {
            for e in enumerate_group(d, true)
                .unwrap()
                .filter(|e| !e.is_unitary())
            {
                assert_eq!(element_order(&e).unwrap() % 2, 0);
            }
        }
    }

    #[test]
    fn inverse_is_two_sided() {
        for d in [4i64, 5, 6] {
            let id = CliffordElement::identity(Modulus::new(d).unwrap());
            for e in enumerate_group(d, true).unwrap().step_by(13) {
                assert!(elements_equal(&compose(&e, &e.inverse()).unwrap(), &id).unwrap());
                assert!(elements_equal(&compose(&e.inverse(), &e).unwrap(), &id).unwrap());
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element(d: i64) -> impl Strategy<Value = CliffordElement> {
            let modulus = Modulus::new(d).unwrap();
            let mats = group_matrices(modulus, true);
            (0..mats.len(), 0..d, 0..d)
                .prop_map(move |(i, x, y)| CliffordElement::new(mats[i], [x, y], modulus).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(300))]

            #[test]
            fn homomorphism_d4((a, b) in (element(4), element(4))) {
                let s = Synthesizer::new(a.modulus()).unwrap();
                let prod = s.matrix(&a).unwrap().compose(&s.matrix(&b).unwrap());
                prop_assert!(prod.proportional_to(&s.matrix(&compose(&a, &b).unwrap()).unwrap(), 1e-9));
            }

            #[test]
            fn homomorphism_d5((a, b) in (element(5), element(5))) {
                let s = Synthesizer::new(a.modulus()).unwrap();
                let prod = s.matrix(&a).unwrap().compose(&s.matrix(&b).unwrap());
                prop_assert!(prod.proportional_to(&s.matrix(&compose(&a, &b).unwrap()).unwrap(), 1e-9));
            }

            #[test]
            fn conjugation_law_d6(e in element(6)) {
                let s = Synthesizer::new(e.modulus()).unwrap();
                prop_assert!(conjugation_error(&e, &s.matrix(&e).unwrap(), s.context()) < 1e-9);
            }

            #[test]
            fn vector_path_matches_matrix(e in element(6), seed in 0u64..1000) {
                let s = Synthesizer::new(e.modulus()).unwrap();
                let psi = StateVector::from_vec((0..6).map(|k| {
                    let x = (seed as f64 + 1.0) * (k as f64 + 0.5);
                    Complex64::new(x.sin(), (1.7 * x).cos())
                }).collect());
                let a = s.matrix(&e).unwrap().apply(&psi);
                let b = s.apply(&e, &psi).unwrap();
                prop_assert!((a.amplitudes - b.amplitudes).norm() < 1e-10);
            }
        }
    }
}
