//! The natural symplectic pair `X = A x A^` and its block isomorphisms.
//!
//! The lattice of `X` is `L + L*` (rank `4g`). The symplectic form
//! `w((v1, l1), (v2, l2)) = l1(v2) - l2(v1)` has Gram matrix
//! `S = [[0, -I], [I, 0]]`, and `psi_L: A x A^ -> A^ x A`,
//! `(a, b) -> (-b, a)`, has the same block matrix read as a map into
//! `L* + L`. Everything else (the hermitian form, the semicharacter, the
//! symplectic group) is derived from these two matrices.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{dot, IntMatrix, ScalarMatrix};
use crate::scalar::Scalar;
use crate::snf;
use crate::torus::{self, ComplexTorus, TorusHom};

/// `[[0, -I_n], [I_n, 0]]`.
pub fn standard_form(n: usize) -> IntMatrix {
    let i = IntMatrix::identity(n);
    let z = IntMatrix::zeros(n, n);
    IntMatrix::from_blocks(&z, &-&i, &i, &z).expect("square blocks")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticPair {
    base: Arc<ComplexTorus>,
    dual: Arc<ComplexTorus>,
    j_x: ScalarMatrix,
    gram: IntMatrix,
    psi: IntMatrix,
}

pub fn build_pair(a: Arc<ComplexTorus>) -> SymplecticPair {
    let dual = Arc::new(a.dual());
    let j_x = ScalarMatrix::block_diag(a.complex_structure(), dual.complex_structure());
    let n = a.rank();
    let pair = SymplecticPair { base: a, dual, j_x, gram: standard_form(n), psi: standard_form(n) };
    debug_assert!(pair.invariants_hold());
    pair
}

impl SymplecticPair {
    pub fn base(&self) -> &Arc<ComplexTorus> {
        &self.base
    }

    pub fn dual(&self) -> &Arc<ComplexTorus> {
        &self.dual
    }

    /// Rank of `L + L*`, i.e. `4g`.
    pub fn rank(&self) -> usize {
        2 * self.base.rank()
    }

    /// `blockdiag(J_A, -J_A^T)`.
    pub fn complex_structure(&self) -> &ScalarMatrix {
        &self.j_x
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// Matrix of `psi_L: L + L* -> L* + L`.
    pub fn psi(&self) -> &IntMatrix {
        &self.psi
    }

    /// Matrix of `psi_L^{-1}: L* + L -> L + L*`, `(x, y) -> (y, -x)`.
    pub fn psi_inverse(&self) -> IntMatrix {
        -&self.psi
    }

    /// Skew-symmetry, `det S = 1`, and `J_X^T S J_X = S`.
    pub fn invariants_hold(&self) -> bool {
        let s = &self.gram;
        if s.transpose() != -s || snf::int_det(s) != BigInt::one() {
            return false;
        }
        let ss = s.to_scalar();
        &(&self.j_x.transpose() * &ss) * &self.j_x == ss
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.rank() {
            return Err(Error::DimensionMismatch(format!("vector of length {} in a rank-{} lattice", n, self.rank())));
        }
        Ok(())
    }

    /// `w(x, y) = x^T S y`.
    pub fn omega(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        Ok(dot(x, &self.gram.mul_vec(y)?))
    }

    /// `(g(x, y), w(x, y))` with `g(x, y) = w(J_X x, y)`; `H = g + i w`.
    pub fn hermitian(&self, x: &[Scalar], y: &[Scalar]) -> Result<(Scalar, Scalar)> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let s = self.gram.to_scalar();
        let sy = s.mul_vec(y)?;
        let jx = self.j_x.mul_vec(x)?;
        Ok((dot(&jx, &sy), dot(x, &sy)))
    }

    /// Gram matrices `(g(e_i, e_j), w(e_i, e_j))`, i.e. `(J_X^T S, S)`.
    pub fn hermitian_grams(&self) -> (ScalarMatrix, ScalarMatrix) {
        let s = self.gram.to_scalar();
        (&self.j_x.transpose() * &s, s)
    }

    /// `chi((v, l)) = (-1)^{l(v)}`.
    pub fn semicharacter(&self, lam: &[BigInt]) -> Result<i8> {
        self.check_len(lam.len())?;
        let n = self.base.rank();
        let pairing = dot(&lam[..n], &lam[n..]);
        Ok(if pairing.is_even() { 1 } else { -1 })
    }
}

/// A morphism `A x A^ -> B x B^` as the block matrix `[[a, b], [c, d]]` with
/// `a: A -> B`, `b: A^ -> B`, `c: A -> B^`, `d: A^ -> B^`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockIso {
    src: Arc<SymplecticPair>,
    dst: Arc<SymplecticPair>,
    alpha: TorusHom,
    beta: TorusHom,
    gamma: TorusHom,
    delta: TorusHom,
    rho: IntMatrix,
}

impl BlockIso {
    pub fn new(
        src: Arc<SymplecticPair>,
        dst: Arc<SymplecticPair>,
        alpha: IntMatrix,
        beta: IntMatrix,
        gamma: IntMatrix,
        delta: IntMatrix,
    ) -> Result<Self> {
        if src.base.dim() != dst.base.dim() {
            return Err(Error::DimensionMismatch(format!(
                "block isomorphism between pairs of dimensions {} and {}",
                src.base.dim(),
                dst.base.dim()
            )));
        }
        let (a, ah) = (src.base.clone(), src.dual.clone());
        let (b, bh) = (dst.base.clone(), dst.dual.clone());
        let alpha = TorusHom::new(a.clone(), b.clone(), alpha)?;
        let beta = TorusHom::new(ah.clone(), b, beta)?;
        let gamma = TorusHom::new(a, bh.clone(), gamma)?;
        let delta = TorusHom::new(ah, bh, delta)?;
        let rho = IntMatrix::from_blocks(alpha.matrix(), beta.matrix(), gamma.matrix(), delta.matrix())?;
        Ok(BlockIso { src, dst, alpha, beta, gamma, delta, rho })
    }

    /// Splits a `4g x 4g` matrix into its four blocks.
    pub fn from_matrix(src: Arc<SymplecticPair>, dst: Arc<SymplecticPair>, rho: &IntMatrix) -> Result<Self> {
        let n = src.base.rank();
        if rho.rows() != dst.rank() || rho.cols() != src.rank() || dst.base.rank() != n {
            return Err(Error::DimensionMismatch("block matrix shape".into()));
        }
        BlockIso::new(
            src,
            dst,
            rho.block(0, 0, n, n),
            rho.block(0, n, n, n),
            rho.block(n, 0, n, n),
            rho.block(n, n, n, n),
        )
    }

    pub fn identity(pair: Arc<SymplecticPair>) -> Self {
        let n = pair.rank();
        BlockIso::from_matrix(pair.clone(), pair, &IntMatrix::identity(n)).expect("identity is valid")
    }

    pub fn src(&self) -> &Arc<SymplecticPair> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<SymplecticPair> {
        &self.dst
    }

    pub fn alpha(&self) -> &TorusHom {
        &self.alpha
    }

    pub fn beta(&self) -> &TorusHom {
        &self.beta
    }

    pub fn gamma(&self) -> &TorusHom {
        &self.gamma
    }

    pub fn delta(&self) -> &TorusHom {
        &self.delta
    }

    pub fn rho(&self) -> &IntMatrix {
        &self.rho
    }

    /// `self . inner`.
    pub fn compose(&self, inner: &BlockIso) -> Result<BlockIso> {
        if inner.dst != self.src {
            return Err(Error::NotComposable(format!(
                "{} -> {} then {} -> {}",
                inner.src.base.name(),
                inner.dst.base.name(),
                self.src.base.name(),
                self.dst.base.name()
            )));
        }
        BlockIso::from_matrix(inner.src.clone(), self.dst.clone(), &(&self.rho * &inner.rho))
    }

    pub fn is_invertible(&self) -> bool {
        !snf::int_det(&self.rho).is_zero()
    }

    /// Inverse over `Z`, if `rho` is unimodular.
    pub fn inverse(&self) -> Result<Option<BlockIso>> {
        let Some(inv) = linalg::inverse(&self.rho.to_rational())? else {
            return Ok(None);
        };
        match inv.to_integer() {
            Some(m) => Ok(Some(BlockIso::from_matrix(self.dst.clone(), self.src.clone(), &m)?)),
            None => Ok(None),
        }
    }

    /// `f^dagger = [[d^, -b^], [-c^, a^]]: B x B^ -> A x A^`.
    pub fn dagger(&self) -> BlockIso {
        let a = self.delta.transpose();
        let b = self.beta.transpose().neg();
        let c = self.gamma.transpose().neg();
        let d = self.alpha.transpose();
        BlockIso::new(
            self.dst.clone(),
            self.src.clone(),
            a.matrix().clone(),
            b.matrix().clone(),
            c.matrix().clone(),
            d.matrix().clone(),
        )
        .expect("transposed blocks intertwine the dual structures")
    }

    /// `[[a, -b], [-c, d]]`.
    pub fn ddagger(&self) -> BlockIso {
        let out = BlockIso::new(
            self.src.clone(),
            self.dst.clone(),
            self.alpha.matrix().clone(),
            -self.beta.matrix(),
            -self.gamma.matrix(),
            self.delta.matrix().clone(),
        )
        .expect("sign changes keep blocks valid");
        debug_assert!(ddagger_identity_holds(self));
        out
    }

    /// The same morphism read as `A^ x A -> B^ x B`: `[[d, c], [b, a]]`.
    pub fn swap(&self) -> BlockIso {
        BlockIso::new(
            Arc::new(build_pair(self.src.dual.clone())),
            Arc::new(build_pair(self.dst.dual.clone())),
            self.delta.matrix().clone(),
            self.gamma.matrix().clone(),
            self.beta.matrix().clone(),
            self.alpha.matrix().clone(),
        )
        .expect("swapped blocks keep their endpoints")
    }

    /// `psi_L` of the source pair as a block morphism `A x A^ -> A^ x A`.
    pub fn psi_of(pair: &Arc<SymplecticPair>) -> BlockIso {
        let target = Arc::new(build_pair(pair.dual.clone()));
        BlockIso::from_matrix(pair.clone(), target, pair.psi()).expect("psi is a valid block morphism")
    }
}

/// `psi_{L_B}^{-1} . rho(f^s) . psi_{L_A} = rho(f^ddagger)`, exactly.
pub fn ddagger_identity_holds(f: &BlockIso) -> bool {
    let s = f.swap();
    let lhs = &(&f.dst.psi_inverse() * s.rho()) * f.src.psi();
    let n = f.src.base.rank();
    let expect = IntMatrix::from_blocks(f.alpha.matrix(), &-f.beta.matrix(), &-f.gamma.matrix(), f.delta.matrix())
        .expect("square blocks");
    debug_assert_eq!(expect.rows(), 2 * n);
    lhs == expect
}

/// Verdicts of the three independent symplectic tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticOracles {
    /// `f^dagger . f = Id` and `f . f^dagger = Id`.
    pub dagger: bool,
    /// `rho^T S_B rho = S_A`.
    pub gram: bool,
    /// `rho` is complex linear for `J_X` and preserves `H = g + i w` on every
    /// pair of basis vectors.
    pub unitary: bool,
}

impl SymplecticOracles {
    pub fn agree(&self) -> bool {
        self.dagger == self.gram && self.gram == self.unitary
    }
}

pub fn symplectic_oracles(f: &BlockIso) -> SymplecticOracles {
    let fd = f.dagger();
    let dagger = fd.rho().try_mul(f.rho()).map(|m| m.is_identity()).unwrap_or(false)
        && f.rho().try_mul(fd.rho()).map(|m| m.is_identity()).unwrap_or(false);

    let gram = &(&f.rho.transpose() * f.dst.gram()) * &f.rho == *f.src.gram();

    let rho_s = f.rho.to_scalar();
    let complex_linear = &f.dst.j_x * &rho_s == &rho_s * &f.src.j_x;
    let unitary = complex_linear && preserves_hermitian(f, &rho_s);

    SymplecticOracles { dagger, gram, unitary }
}

/// `rho^T G_B rho = G_A` for the Gram matrices of both `g` and `w`, i.e.
/// `H(rho e_i, rho e_j) = H(e_i, e_j)` on every pair of basis vectors.
fn preserves_hermitian(f: &BlockIso, rho_s: &ScalarMatrix) -> bool {
    let (g_a, w_a) = f.src.hermitian_grams();
    let (g_b, w_b) = f.dst.hermitian_grams();
    let rt = rho_s.transpose();
    &(&rt * &g_b) * rho_s == g_a && &(&rt * &w_b) * rho_s == w_a
}

/// Common verdict of the three oracles. Disagreement is an invariant breach
/// and is reported as [`Error::OracleDisagreement`], never as `false`.
pub fn is_symplectic(f: &BlockIso) -> Result<bool> {
    let o = symplectic_oracles(f);
    if !o.agree() {
        return Err(Error::OracleDisagreement(format!(
            "dagger={} gram={} unitary={} on {}",
            o.dagger, o.gram, o.unitary, f.rho
        )));
    }
    Ok(o.dagger)
}

/// Sub-checks behind a Lagrangian verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LagrangianReport {
    pub isotropic: bool,
    pub half_rank: bool,
    pub saturated: bool,
    pub unimodular_pairing: bool,
}

impl LagrangianReport {
    pub fn is_lagrangian(&self) -> bool {
        self.isotropic && self.half_rank && self.saturated && self.unimodular_pairing
    }
}

fn check_columns(pair: &SymplecticPair, y: &IntMatrix) -> Result<()> {
    if y.rows() != pair.rank() {
        return Err(Error::DimensionMismatch(format!(
            "basis vectors of length {} in a rank-{} lattice",
            y.rows(),
            pair.rank()
        )));
    }
    if y.cols() == 0 || linalg::rank(&y.to_rational()) != y.cols() {
        return Err(Error::DependentColumns);
    }
    Ok(())
}

/// Rejects sublattices whose real span is not `J_X`-stable.
pub fn check_j_stable(pair: &SymplecticPair, y: &IntMatrix) -> Result<()> {
    check_columns(pair, y)?;
    let ys = y.to_scalar();
    let jy = &pair.j_x * &ys;
    for c in 0..y.cols() {
        if linalg::solve(&ys, &jy.col(c))?.is_none() {
            return Err(Error::NotJStable);
        }
    }
    Ok(())
}

/// Lagrangian sub-checks using only the lattice and `S`; the complex
/// structure is not consulted.
pub fn lattice_lagrangian_report(pair: &SymplecticPair, y: &IntMatrix) -> Result<LagrangianReport> {
    check_columns(pair, y)?;
    let isotropic = (&(&y.transpose() * &pair.gram) * y).is_zero();
    let half_rank = y.cols() * 2 == pair.rank();
    let s = snf::smith_normal_form(y);
    let saturated = s.invariant_factors().iter().all(|d| d.is_one());
    let unimodular_pairing = if isotropic && half_rank && saturated {
        // columns of U^{-1} beyond the first k complete a basis of Z^{4g}
        let u_inv = linalg::inverse(&s.u.to_rational())?.and_then(|m| m.to_integer()).expect("U is unimodular");
        let k = y.cols();
        let complement = u_inv.block(0, k, pair.rank(), pair.rank() - k);
        let pairing = &(&y.transpose() * &pair.gram) * &complement;
        snf::int_det(&pairing).abs().is_one()
    } else {
        false
    };
    Ok(LagrangianReport { isotropic, half_rank, saturated, unimodular_pairing })
}

pub fn lagrangian_report(pair: &SymplecticPair, y: &IntMatrix) -> Result<LagrangianReport> {
    check_j_stable(pair, y)?;
    lattice_lagrangian_report(pair, y)
}

pub fn is_isotropic(pair: &SymplecticPair, y: &IntMatrix) -> Result<bool> {
    Ok(lagrangian_report(pair, y)?.isotropic)
}

pub fn is_lagrangian(pair: &SymplecticPair, y: &IntMatrix) -> Result<bool> {
    Ok(lagrangian_report(pair, y)?.is_lagrangian())
}

fn bounded(m: &IntMatrix, bound: u32) -> bool {
    let b = BigInt::from(bound);
    m.data().iter().all(|x| x.abs() <= b)
}

fn symmetric_elements(basis: &[TorusHom], bound: u32) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    if basis.is_empty() {
        return out;
    }
    for c in torus::coefficient_box(basis.len(), bound) {
        let t = torus::combine(basis, &c).expect("nonempty basis");
        let m = t.matrix();
        if !m.is_zero() && bounded(m, bound) && m.transpose() == *m {
            out.push(m.clone());
        }
    }
    out
}

/// Generators of `Sp(A x A^)` with entries bounded by `bound`:
/// diagonal `blockdiag(T, (T^T)^{-1})` for unimodular `T` in `End(A)`,
/// lower and upper shears by symmetric blocks, and the element
/// `[[0, -I], [I, 0]]` when `A` and `A^` share a presentation.
/// Coefficients over each Hom-lattice basis range over `[-bound, bound]`.
pub fn sp_generators(a: &Arc<ComplexTorus>, bound: u32) -> Result<Vec<BlockIso>> {
    let pair = Arc::new(build_pair(a.clone()));
    let n = a.rank();
    let id = IntMatrix::identity(n);
    let zero = IntMatrix::zeros(n, n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |f: BlockIso, out: &mut Vec<BlockIso>| -> Result<()> {
        if !is_symplectic(&f)? {
            return Err(Error::TheoremViolation(format!("generator {} is not symplectic", f.rho)));
        }
        if seen.insert(f.rho.clone()) {
            out.push(f);
        }
        Ok(())
    };

    push(BlockIso::identity(pair.clone()), &mut out)?;

    let end = torus::hom_lattice(a, a)?;
    for c in torus::coefficient_box(end.len(), bound) {
        let t = torus::combine(&end, &c).expect("End(A) contains the identity");
        let m = t.matrix();
        if !bounded(m, bound) || !snf::int_det(m).abs().is_one() {
            continue;
        }
        let inv_t = linalg::inverse(&m.transpose().to_rational())?.and_then(|x| x.to_integer()).expect("unimodular");
        let f = BlockIso::new(pair.clone(), pair.clone(), m.clone(), zero.clone(), zero.clone(), inv_t)?;
        push(f, &mut out)?;
    }

    let dual = pair.dual().clone();
    for t in symmetric_elements(&torus::hom_lattice(a, &dual)?, bound) {
        let f = BlockIso::new(pair.clone(), pair.clone(), id.clone(), zero.clone(), t, id.clone())?;
        push(f, &mut out)?;
    }
    for t in symmetric_elements(&torus::hom_lattice(&dual, a)?, bound) {
        let f = BlockIso::new(pair.clone(), pair.clone(), id.clone(), t, zero.clone(), id.clone())?;
        push(f, &mut out)?;
    }

    if a.is_self_dual_presentation() {
        let f = BlockIso::new(pair.clone(), pair.clone(), zero.clone(), -&id, id.clone(), zero.clone())?;
        push(f, &mut out)?;
    }
    Ok(out)
}

/// All distinct products of at most `max_len` generators (identity included).
pub fn words(generators: &[BlockIso], max_len: usize) -> Result<Vec<BlockIso>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let mut seen = BTreeSet::new();
    let id = BlockIso::identity(first.src.clone());
    seen.insert(id.rho.clone());
    let mut all = alloc::vec![id.clone()];
    let mut frontier = alloc::vec![id];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in generators {
                let p = g.compose(w)?;
                if seen.insert(p.rho.clone()) {
                    next.push(p.clone());
                    all.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(all)
}

/// Short human-readable name of the kind of block matrix.
pub fn describe(f: &BlockIso) -> String {
    format!("{} -> {}: {}", f.src.base.name(), f.dst.base.name(), f.rho)
}
