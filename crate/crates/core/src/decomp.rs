//! Classification of symplectic isomorphisms `f: A x A^ -> B x B^` into the
//! beta-isogeny / gamma-isogeny / graph cases, with kernel recipes checked at
//! the level of integer matrices.
//!
//! When `End^0(A)` is a division algebra every nonzero block is zero or an
//! isogeny, which forces exactly one of:
//! - `det b != 0`;
//! - `b = 0`, `det c != 0`;
//! - `b = c = 0`, `a` invertible over `Z` and `d = (a^T)^{-1}`.
//!
//! Any other outcome on a symplectic input is reported as
//! [`Error::TheoremViolation`] with the offending matrix.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::endalg::{self, DivisionVerdict};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf;
use crate::symplectic::{self, build_pair, BlockIso, SymplecticPair};
use crate::torus::{self, ComplexTorus};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Case {
    BetaIsogeny(BigInt),
    GammaIsogeny(BigInt),
    GraphIso,
}

impl Case {
    pub fn name(&self) -> &'static str {
        match self {
            Case::BetaIsogeny(_) => "BetaIsogeny",
            Case::GammaIsogeny(_) => "GammaIsogeny",
            Case::GraphIso => "GraphIso",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::BetaIsogeny(d) | Case::GammaIsogeny(d) => write!(f, "{}, degree {}", self.name(), d),
            Case::GraphIso => write!(f, "GraphIso"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trichotomy {
    pub case: Case,
    pub division_hypothesis: DivisionVerdict,
}

fn dump(f: &BlockIso) -> String {
    format!(
        "rho = {} (alpha = {}, beta = {}, gamma = {}, delta = {})",
        f.rho(),
        f.alpha().matrix(),
        f.beta().matrix(),
        f.gamma().matrix(),
        f.delta().matrix()
    )
}

fn violation(what: &str, f: &BlockIso) -> Error {
    Error::TheoremViolation(format!("{}: {}", what, dump(f)))
}

/// Division verdict for `End^0` of the source torus of `f`.
pub fn source_verdict(f: &BlockIso) -> Result<DivisionVerdict> {
    let e = endalg::end_algebra(f.src().base())?;
    endalg::division_verdict(e.algebra())
}

pub fn classify(f: &BlockIso) -> Result<Trichotomy> {
    classify_with(f, &source_verdict(f)?)
}

/// [`classify`] with a precomputed verdict for `End^0(A)`.
pub fn classify_with(f: &BlockIso, verdict: &DivisionVerdict) -> Result<Trichotomy> {
    if !verdict.is_division() {
        return Err(Error::NotApplicable(format!(
            "End^0({}) is not certified division ({})",
            f.src().base().name(),
            verdict.tag()
        )));
    }
    if !symplectic::is_symplectic(f)? {
        return Err(Error::NotSymplectic);
    }
    let beta = f.beta().matrix();
    let gamma = f.gamma().matrix();
    let det_beta = snf::int_det(beta);
    let case = if !det_beta.is_zero() {
        Case::BetaIsogeny(det_beta.abs())
    } else if !beta.is_zero() {
        return Err(violation("beta is nonzero but not an isogeny", f));
    } else if !gamma.is_zero() {
        let det_gamma = snf::int_det(gamma);
        if det_gamma.is_zero() {
            return Err(violation("beta = 0 and gamma is nonzero but not an isogeny", f));
        }
        Case::GammaIsogeny(det_gamma.abs())
    } else {
        let alpha = f.alpha().matrix();
        if !snf::int_det(alpha).abs().is_one() {
            return Err(violation("beta = gamma = 0 but alpha is not an isomorphism", f));
        }
        if !(&f.delta().matrix().transpose() * alpha).is_identity() {
            return Err(violation("beta = gamma = 0 but delta^T alpha != I", f));
        }
        Case::GraphIso
    };
    Ok(Trichotomy { case, division_hypothesis: verdict.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub alpha: IntMatrix,
    pub beta: IntMatrix,
    pub gamma: IntMatrix,
    pub delta: IntMatrix,
}

impl Blocks {
    fn of(f: &BlockIso) -> Self {
        Blocks {
            alpha: f.alpha().matrix().clone(),
            beta: f.beta().matrix().clone(),
            gamma: f.gamma().matrix().clone(),
            delta: f.delta().matrix().clone(),
        }
    }

    pub fn assemble(&self) -> IntMatrix {
        IntMatrix::from_blocks(&self.alpha, &self.beta, &self.gamma, &self.delta).expect("square blocks")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecipeKind {
    /// Opaque tag for the construction applied directly to `f`.
    OrlovConstruction(Blocks),
    /// The construction applied to `(f^ddagger)^s`, then conjugated by the
    /// Poincare kernels: `psi_B^{-1} . rho((f^ddagger)^s) . psi_A`.
    PoincareConjugated { inner: Blocks, pre: IntMatrix, post: IntMatrix },
    /// Structure sheaf of the graph of `alpha`.
    GraphKernel(IntMatrix),
}

impl RecipeKind {
    pub fn name(&self) -> &'static str {
        match self {
            RecipeKind::OrlovConstruction(_) => "OrlovConstruction",
            RecipeKind::PoincareConjugated { .. } => "PoincareConjugated",
            RecipeKind::GraphKernel(_) => "GraphKernel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelRecipe {
    pub kind: RecipeKind,
    pub verified: bool,
    pub reconstruction: IntMatrix,
}

pub fn kernel_recipe(f: &BlockIso) -> Result<KernelRecipe> {
    kernel_recipe_for(f, &classify(f)?)
}

/// Recipe for an already classified `f`.
pub fn kernel_recipe_for(f: &BlockIso, t: &Trichotomy) -> Result<KernelRecipe> {
    let (kind, reconstruction) = match t.case {
        Case::BetaIsogeny(_) => {
            let b = Blocks::of(f);
            let r = b.assemble();
            (RecipeKind::OrlovConstruction(b), r)
        }
        Case::GammaIsogeny(_) => {
            let inner = f.ddagger().swap();
            if inner.beta().matrix() != &-f.gamma().matrix() {
                return Err(violation("beta slot of (f^ddagger)^s is not -gamma", f));
            }
            if snf::int_det(inner.beta().matrix()).is_zero() {
                return Err(violation("beta slot of (f^ddagger)^s is not an isogeny", f));
            }
            let pre = f.src().psi().clone();
            let post = f.dst().psi_inverse();
            let r = &(&post * inner.rho()) * &pre;
            (RecipeKind::PoincareConjugated { inner: Blocks::of(&inner), pre, post }, r)
        }
        Case::GraphIso => {
            let a = f.alpha().matrix().clone();
            let inv_t = crate::linalg::inverse(&a.transpose().to_rational())?
                .and_then(|m| m.to_integer())
                .ok_or_else(|| violation("alpha is not invertible over Z", f))?;
            let r = IntMatrix::block_diag(&a, &inv_t);
            (RecipeKind::GraphKernel(a), r)
        }
    };
    if &reconstruction != f.rho() {
        return Err(violation(&format!("{} reconstruction {} differs", kind.name(), reconstruction), f));
    }
    Ok(KernelRecipe { kind, verified: true, reconstruction })
}

/// One enumerated element and what happened to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchEntry {
    pub rho: IntMatrix,
    pub outcome: core::result::Result<(Case, &'static str), String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BatchReport {
    pub total: usize,
    pub counts: BTreeMap<&'static str, usize>,
    pub not_applicable: usize,
    pub violations: Vec<String>,
    pub entries: Vec<BatchEntry>,
    pub note: Option<String>,
}

impl BatchReport {
    pub fn count(&self, case: &str) -> usize {
        self.counts.get(case).copied().unwrap_or(0)
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Classifies every element `base . w` where `w` runs over words of length at
/// most `word_len` in `sp_generators(A, bound)` and `base: X_A -> X_B` is the
/// identity when `A = B` and otherwise the first isomorphism found by
/// [`symplectic_search`].
pub fn verify_batch(a: &Arc<ComplexTorus>, b: &Arc<ComplexTorus>, word_len: usize, bound: u32) -> Result<BatchReport> {
    let mut report = BatchReport::default();
    let base = if a == b {
        BlockIso::identity(Arc::new(build_pair(a.clone())))
    } else {
        match symplectic_search(a, b, bound)? {
            Some(f) => f,
            None => {
                report.note = Some(format!(
                    "no symplectic isomorphism {} x {}^ -> {} x {}^ with coefficients in [-{}, {}]",
                    a.name(),
                    a.name(),
                    b.name(),
                    b.name(),
                    bound,
                    bound
                ));
                return Ok(report);
            }
        }
    };
    let gens = symplectic::sp_generators(a, bound)?;
    let words = symplectic::words(&gens, word_len)?;
    let e = endalg::end_algebra(a)?;
    let verdict = endalg::division_verdict(e.algebra())?;
    for w in words {
        let f = base.compose(&w)?;
        report.total += 1;
        let outcome = match classify_with(&f, &verdict).and_then(|t| Ok((kernel_recipe_for(&f, &t)?, t))) {
            Ok((recipe, t)) => {
                *report.counts.entry(t.case.name()).or_insert(0) += 1;
                Ok((t.case, recipe.kind.name()))
            }
            Err(Error::NotApplicable(msg)) => {
                report.not_applicable += 1;
                Err(msg)
            }
            Err(err) => {
                let msg = format!("{}", err);
                report.violations.push(msg.clone());
                Err(msg)
            }
        };
        report.entries.push(BatchEntry { rho: f.rho().clone(), outcome });
    }
    report.entries.sort_by(|x, y| x.rho.cmp(&y.rho));
    Ok(report)
}

fn hom_elements(src: &Arc<ComplexTorus>, dst: &Arc<ComplexTorus>, bound: u32) -> Result<Vec<IntMatrix>> {
    let basis = torus::hom_lattice(src, dst)?;
    if basis.is_empty() {
        return Ok(alloc::vec![IntMatrix::zeros(dst.rank(), src.rank())]);
    }
    Ok(torus::coefficient_box(basis.len(), bound)
        .into_iter()
        .map(|c| torus::combine(&basis, &c).expect("nonempty").matrix().clone())
        .collect())
}

/// Exhaustive search for a symplectic `A x A^ -> B x B^` whose four blocks
/// are combinations of their Hom-lattice bases with coefficients in
/// `[-bound, bound]`. Uses the block form of `rho^T S rho = S`:
/// `a^T c` and `d^T b` symmetric, `d^T a - b^T c = I`.
pub fn symplectic_search(a: &Arc<ComplexTorus>, b: &Arc<ComplexTorus>, bound: u32) -> Result<Option<BlockIso>> {
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let pa: Arc<SymplecticPair> = Arc::new(build_pair(a.clone()));
    let pb: Arc<SymplecticPair> = Arc::new(build_pair(b.clone()));
    let (ah, bh) = (pa.dual().clone(), pb.dual().clone());
    let alphas = hom_elements(a, b, bound)?;
    let betas = hom_elements(&ah, b, bound)?;
    let gammas = hom_elements(a, &bh, bound)?;
    let deltas = hom_elements(&ah, &bh, bound)?;

    let symmetric = |m: &IntMatrix| m.transpose() == *m;
    let mut left = Vec::new();
    for x in &alphas {
        for z in &gammas {
            if symmetric(&(&x.transpose() * z)) {
                left.push((x, z));
            }
        }
    }
    let mut right = Vec::new();
    for y in &betas {
        for w in &deltas {
            if symmetric(&(&w.transpose() * y)) {
                right.push((y, w));
            }
        }
    }
    for (x, z) in &left {
        for (y, w) in &right {
            let m = &(&w.transpose() * *x) - &(&y.transpose() * *z);
            if m.is_identity() {
                let f = BlockIso::new(pa.clone(), pb.clone(), (*x).clone(), (*y).clone(), (*z).clone(), (*w).clone())?;
                if !symplectic::is_symplectic(&f)? {
                    return Err(Error::TheoremViolation(format!(
                        "block conditions hold but {} is not symplectic",
                        f.rho()
                    )));
                }
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}
