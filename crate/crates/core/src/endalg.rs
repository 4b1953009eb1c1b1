//! Endomorphism algebras `End^0(A) = Q (x) End(A)` and division verdicts.
//!
//! Algebras are finite-dimensional over `Q`, given by structure constants
//! `e_i e_j = sum_k c[i][j][k] e_k`. Verdicts come with certificates that
//! [`verify_verdict`] re-checks from scratch.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hilbert::{self, Place};
use crate::linalg;
use crate::matrix::{IntMatrix, RatMatrix};
use crate::poly::{self, Factorization, Poly};
use crate::torus::{self, ComplexTorus, TorusHom};

/// Coordinates of an algebra element in the chosen basis.
pub type Element = Vec<BigRational>;

fn zero_vec(n: usize) -> Element {
    alloc::vec![BigRational::zero(); n]
}

fn is_zero_vec(x: &[BigRational]) -> bool {
    x.iter().all(|c| c.is_zero())
}

fn scale_vec(k: &BigRational, x: &[BigRational]) -> Element {
    x.iter().map(|c| k * c).collect()
}

fn add_vec(x: &[BigRational], y: &[BigRational]) -> Element {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    constants: Vec<Vec<Vec<BigRational>>>,
    one: Element,
}

impl Algebra {
    /// Validates shapes, the two-sided identity and associativity on all
    /// basis triples.
    pub fn new(constants: Vec<Vec<Vec<BigRational>>>, one: Element) -> Result<Self> {
        let dim = one.len();
        let shape_ok = constants.len() == dim
            && constants.iter().all(|row| row.len() == dim && row.iter().all(|c| c.len() == dim));
        if !shape_ok {
            return Err(Error::InconsistentAlgebra(format!("structure constants are not {0}x{0}x{0}", dim)));
        }
        let alg = Algebra { dim, constants, one };
        for i in 0..dim {
            let e = alg.basis_element(i);
            if alg.mul(&alg.one, &e) != e || alg.mul(&e, &alg.one) != e {
                return Err(Error::InconsistentAlgebra(format!("one is not an identity for e{}", i)));
            }
        }
        if let Some((i, j, k)) = alg.associativity_failure() {
            return Err(Error::InconsistentAlgebra(format!("(e{0} e{1}) e{2} != e{0} (e{1} e{2})", i, j, k)));
        }
        Ok(alg)
    }

    /// The quaternion algebra `(a, b)`: basis `1, i, j, k = ij` with
    /// `i^2 = a`, `j^2 = b`, `ij = -ji`.
    pub fn quaternion(a: &BigRational, b: &BigRational) -> Result<Self> {
        let z = BigRational::zero;
        let o = BigRational::one;
        let e = |idx: usize, k: BigRational| {
            let mut v = alloc::vec![z(), z(), z(), z()];
            v[idx] = k;
            v
        };
        let ab = a * b;
        let table = alloc::vec![
            alloc::vec![e(0, o()), e(1, o()), e(2, o()), e(3, o())],
            alloc::vec![e(1, o()), e(0, a.clone()), e(3, o()), e(2, a.clone())],
            alloc::vec![e(2, o()), e(3, -o()), e(0, b.clone()), e(1, -b.clone())],
            alloc::vec![e(3, o()), e(2, -a.clone()), e(1, b.clone()), e(0, -ab)],
        ];
        Algebra::new(table, e(0, o()))
    }

    /// `Q[n] / (n^2)`, basis `1, n`.
    pub fn dual_numbers() -> Self {
        let table = alloc::vec![
            alloc::vec![alloc::vec![int(1), int(0)], alloc::vec![int(0), int(1)]],
            alloc::vec![alloc::vec![int(0), int(1)], alloc::vec![int(0), int(0)]],
        ];
        Algebra::new(table, alloc::vec![int(1), int(0)]).expect("valid table")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Vec<Vec<BigRational>>] {
        &self.constants
    }

    pub fn one(&self) -> &Element {
        &self.one
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = zero_vec(self.dim);
        v[i] = BigRational::one();
        v
    }

    pub fn mul(&self, x: &[BigRational], y: &[BigRational]) -> Element {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for (k, c) in self.constants[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &f * c;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[BigRational], n: usize) -> Element {
        (0..n).fold(self.one.clone(), |acc, _| self.mul(&acc, x))
    }

    pub fn scalar(&self, k: &BigRational) -> Element {
        scale_vec(k, &self.one)
    }

    /// `r` with `x = r * 1`, if `x` is a scalar.
    pub fn as_scalar(&self, x: &[BigRational]) -> Option<BigRational> {
        let t = self.one.iter().position(|c| !c.is_zero())?;
        let r = &x[t] / &self.one[t];
        (self.scalar(&r) == x).then_some(r)
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut lhs = zero_vec(n);
                    let mut rhs = zero_vec(n);
                    for m in 0..n {
                        let cij = &self.constants[i][j][m];
                        let cjk = &self.constants[j][k][m];
                        for t in 0..n {
                            if !cij.is_zero() {
                                lhs[t] += cij * &self.constants[m][k][t];
                            }
                            if !cjk.is_zero() {
                                rhs[t] += cjk * &self.constants[i][m][t];
                            }
                        }
                    }
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_failure().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.constants[i][j] == self.constants[j][i]))
    }

    /// Matrix of `y -> x y` in the basis.
    pub fn left_regular(&self, x: &[BigRational]) -> RatMatrix {
        RatMatrix::from_columns(
            self.dim,
            &(0..self.dim).map(|j| self.mul(x, &self.basis_element(j))).collect::<Vec<_>>(),
        )
        .expect("dim columns of length dim")
    }

    /// Trace of the left-regular representation.
    pub fn trace(&self, x: &[BigRational]) -> BigRational {
        let l = self.left_regular(x);
        (0..self.dim).fold(BigRational::zero(), |acc, i| acc + l.get(i, i))
    }

    /// `Gram(i, j) = Tr(e_i e_j)`.
    pub fn trace_gram(&self) -> RatMatrix {
        let traces: Vec<BigRational> = (0..self.dim).map(|k| self.trace(&self.basis_element(k))).collect();
        RatMatrix::from_fn(self.dim, self.dim, |i, j| {
            self.constants[i][j].iter().zip(&traces).fold(BigRational::zero(), |acc, (c, t)| acc + c * t)
        })
    }

    /// Dickson's criterion: nondegenerate trace form.
    pub fn is_semisimple(&self) -> bool {
        !linalg::det(&self.trace_gram()).expect("square").is_zero()
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Element> {
        let n = self.dim;
        // x e_j - e_j x = 0 for every j, linear in the coordinates of x
        let m = RatMatrix::from_fn(n * n, n, |row, i| {
            let (j, k) = (row / n, row % n);
            &self.constants[i][j][k] - &self.constants[j][i][k]
        });
        linalg::nullspace(&m)
    }

    /// Monic minimal polynomial of `x` over `Q`.
    pub fn minimal_polynomial(&self, x: &[BigRational]) -> Poly {
        let mut powers: Vec<Element> = alloc::vec![self.one.clone()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            let m = RatMatrix::from_columns(self.dim, &powers).expect("equal lengths");
            if let Some(c) = linalg::solve(&m, &next).expect("shapes match") {
                // x^d = sum c_i x^i
                let mut coeffs: Vec<BigRational> = c.into_iter().map(|v| -v).collect();
                coeffs.push(BigRational::one());
                return Poly::new(coeffs);
            }
            powers.push(next);
        }
    }

    /// `p(x)` computed in the algebra.
    pub fn eval_poly(&self, p: &Poly, x: &[BigRational]) -> Element {
        p.coeffs().iter().rev().fold(zero_vec(self.dim), |acc, c| add_vec(&self.mul(&acc, x), &self.scalar(c)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAlgebra {
    base: Arc<ComplexTorus>,
    basis: Vec<TorusHom>,
    algebra: Algebra,
}

fn vec_of(m: &IntMatrix) -> Vec<BigRational> {
    m.data().iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

pub fn end_algebra(a: &Arc<ComplexTorus>) -> Result<EndAlgebra> {
    let basis = torus::hom_lattice(a, a)?;
    let n = a.rank();
    let r = basis.len();
    let columns: Vec<Vec<BigRational>> = basis.iter().map(|f| vec_of(f.matrix())).collect();
    let m = RatMatrix::from_columns(n * n, &columns)?;
    let coords = |t: &IntMatrix| -> Result<Element> {
        linalg::solve(&m, &vec_of(t))?
            .ok_or_else(|| Error::InconsistentAlgebra("product outside the span of End(A)".into()))
    };
    let mut constants = Vec::with_capacity(r);
    for ei in &basis {
        let mut row = Vec::with_capacity(r);
        for ej in &basis {
            row.push(coords(&(ei.matrix() * ej.matrix()))?);
        }
        constants.push(row);
    }
    let one = coords(&IntMatrix::identity(n))?;
    let algebra = Algebra::new(constants, one)?;
    Ok(EndAlgebra { base: a.clone(), basis, algebra })
}

impl EndAlgebra {
    pub fn base(&self) -> &Arc<ComplexTorus> {
        &self.base
    }

    pub fn basis(&self) -> &[TorusHom] {
        &self.basis
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Rational matrix `sum x_i T_i`.
    pub fn element_matrix(&self, x: &[BigRational]) -> RatMatrix {
        let n = self.base.rank();
        self.basis.iter().zip(x).fold(RatMatrix::zeros(n, n), |acc, (f, c)| &acc + &f.matrix().to_rational().scale(c))
    }

    /// Coordinates of a rational matrix in `End^0(A)`, if it lies there.
    pub fn coordinates(&self, t: &RatMatrix) -> Option<Element> {
        let n = self.base.rank();
        let columns: Vec<Vec<BigRational>> = self.basis.iter().map(|f| vec_of(f.matrix())).collect();
        let m = RatMatrix::from_columns(n * n, &columns).ok()?;
        linalg::solve(&m, t.data()).ok()?
    }

    pub fn trace_gram(&self) -> RatMatrix {
        self.algebra.trace_gram()
    }

    pub fn is_semisimple(&self) -> bool {
        self.algebra.is_semisimple()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCertificate {
    pub element: Element,
    pub minimal_polynomial: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionCertificate {
    pub a: BigRational,
    pub b: BigRational,
    pub i: Element,
    pub j: Element,
    pub k: Element,
    /// A place with `(a, b)_v = -1`; `None` when every symbol is `+1`.
    pub place: Option<Place>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroDivisorCertificate {
    /// `f(x) * (m / f)(x) = 0` with both factors nonzero.
    ReducibleMinimalPolynomial { element: Element, minimal_polynomial: Poly, factor: Poly },
    /// `left * right = 0` with both nonzero.
    ZeroDivisor { left: Element, right: Element },
    /// `element^index = 0`, `element != 0`.
    Nilpotent { element: Element, index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionVerdict {
    Field(FieldCertificate),
    QuaternionDivision(QuaternionCertificate),
    Split(QuaternionCertificate),
    NotDivision(ZeroDivisorCertificate),
    Undetermined(String),
}

impl DivisionVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            DivisionVerdict::Field(_) => "Field",
            DivisionVerdict::QuaternionDivision(_) => "QuaternionDivision",
            DivisionVerdict::Split(_) => "Split",
            DivisionVerdict::NotDivision(_) => "NotDivision",
            DivisionVerdict::Undetermined(_) => "Undetermined",
        }
    }

    /// Certified division algebra.
    pub fn is_division(&self) -> bool {
        matches!(self, DivisionVerdict::Field(_) | DivisionVerdict::QuaternionDivision(_))
    }
}

/// Coefficient vectors over `{0, 1, -1, 2, -2}` in lexicographic order,
/// zero excluded.
fn candidates(dim: usize, values: &[i64]) -> impl Iterator<Item = Element> + '_ {
    let total = values.len().pow(dim as u32);
    (1..total).map(move |mut code| {
        let mut v = zero_vec(dim);
        for slot in (0..dim).rev() {
            v[slot] = int(values[code % values.len()]);
            code /= values.len();
        }
        v
    })
}

const PRIMITIVE_VALUES: [i64; 5] = [0, 1, -1, 2, -2];
const ZERO_DIVISOR_VALUES: [i64; 3] = [0, 1, -1];

fn split_reducible(x: &[BigRational], m: &Poly) -> Result<Option<ZeroDivisorCertificate>> {
    match poly::factor_check(m)? {
        Factorization::Irreducible => Ok(None),
        Factorization::Factor(f) => Ok(Some(ZeroDivisorCertificate::ReducibleMinimalPolynomial {
            element: x.to_vec(),
            minimal_polynomial: m.clone(),
            factor: f,
        })),
    }
}

fn nilpotent_certificate(alg: &Algebra, x: Element) -> Result<ZeroDivisorCertificate> {
    let mut p = x.clone();
    for index in 1..=alg.dim + 1 {
        if is_zero_vec(&p) {
            return Ok(ZeroDivisorCertificate::Nilpotent { element: x, index });
        }
        p = alg.mul(&p, &x);
    }
    Err(Error::InconsistentAlgebra("radical element of the trace form is not nilpotent".into()))
}

fn search_zero_divisor(alg: &Algebra) -> Option<ZeroDivisorCertificate> {
    for x in candidates(alg.dim, &ZERO_DIVISOR_VALUES) {
        let l = alg.left_regular(&x);
        if let Some(y) = linalg::nullspace(&l).into_iter().next() {
            return Some(ZeroDivisorCertificate::ZeroDivisor { left: x, right: y });
        }
    }
    None
}

fn commutative_verdict(alg: &Algebra) -> Result<DivisionVerdict> {
    let mut reducible = None;
    for x in candidates(alg.dim, &PRIMITIVE_VALUES) {
        let m = alg.minimal_polynomial(&x);
        if m.degree() == Some(alg.dim) {
            return Ok(match split_reducible(&x, &m)? {
                None => DivisionVerdict::Field(FieldCertificate { element: x, minimal_polynomial: m }),
                Some(cert) => DivisionVerdict::NotDivision(cert),
            });
        }
        if reducible.is_none() && m.degree().unwrap_or(0) > 1 {
            reducible = split_reducible(&x, &m)?;
        }
    }
    Ok(match reducible {
        Some(cert) => DivisionVerdict::NotDivision(cert),
        None => DivisionVerdict::Undetermined("no primitive element with coefficients in {0, +-1, +-2}".into()),
    })
}

fn quaternion_verdict(alg: &Algebra) -> Result<DivisionVerdict> {
    if !alg.is_semisimple() {
        let radical = linalg::nullspace(&alg.trace_gram());
        let x = radical.into_iter().next().expect("singular Gram matrix has a kernel");
        return Ok(DivisionVerdict::NotDivision(nilpotent_certificate(alg, x)?));
    }
    if alg.center().len() != 1 {
        return Ok(DivisionVerdict::Undetermined("center is larger than Q".into()));
    }
    let n = alg.dim;
    let traces: Vec<BigRational> = (0..n).map(|k| alg.trace(&alg.basis_element(k))).collect();
    let pure = linalg::nullspace(&RatMatrix::from_columns(
        1,
        &traces.iter().map(|t| alloc::vec![t.clone()]).collect::<Vec<_>>(),
    )?);

    let square_scalar = |v: &Element| -> Result<Option<BigRational>> {
        let sq = alg.mul(v, v);
        match alg.as_scalar(&sq) {
            Some(s) => Ok(Some(s)),
            None => Err(Error::InconsistentAlgebra("trace-zero element does not square to a scalar".into())),
        }
    };

    let i = pure[0].clone();
    let a = square_scalar(&i)?.expect("checked");
    if a.is_zero() {
        return Ok(DivisionVerdict::NotDivision(nilpotent_certificate(alg, i)?));
    }
    // trace-zero and orthogonal to i under the trace form
    let ti: Vec<BigRational> = (0..n).map(|k| alg.trace(&alg.mul(&i, &alg.basis_element(k)))).collect();
    let system = RatMatrix::from_rows(alloc::vec![traces.clone(), ti])?;
    let orth = linalg::nullspace(&system);
    let j = orth
        .into_iter()
        .next()
        .ok_or_else(|| Error::InconsistentAlgebra("no trace-zero element orthogonal to i".into()))?;
    let b = square_scalar(&j)?.expect("checked");
    if b.is_zero() {
        return Ok(DivisionVerdict::NotDivision(nilpotent_certificate(alg, j)?));
    }
    let k = alg.mul(&i, &j);
    let ji = alg.mul(&j, &i);
    if add_vec(&k, &ji) != zero_vec(n) {
        return Err(Error::InconsistentAlgebra("i j != -j i".into()));
    }
    let mut place = None;
    for v in hilbert::relevant_places(&a, &b) {
        if hilbert::hilbert_symbol(&a, &b, v)? == -1 {
            place = Some(v);
            break;
        }
    }
    let cert = QuaternionCertificate { a, b, i, j, k, place };
    Ok(if place.is_some() { DivisionVerdict::QuaternionDivision(cert) } else { DivisionVerdict::Split(cert) })
}

/// Division verdict with a certificate. Certified tests: dimension 1,
/// commutative dimension 2 and 4, noncommutative dimension 4. Other
/// dimensions are `NotDivision` only when a zero divisor turns up in a small
/// search, otherwise `Undetermined`.
pub fn division_verdict(alg: &Algebra) -> Result<DivisionVerdict> {
    let verdict = match alg.dim {
        0 => DivisionVerdict::Undetermined("zero algebra".into()),
        1 => DivisionVerdict::Field(FieldCertificate {
            element: alg.one.clone(),
            minimal_polynomial: Poly::from_i64(&[-1, 1]),
        }),
        2 | 4 if alg.is_commutative() => commutative_verdict(alg)?,
        4 => quaternion_verdict(alg)?,
        d => match search_zero_divisor(alg) {
            Some(cert) => DivisionVerdict::NotDivision(cert),
            None => DivisionVerdict::Undetermined(format!("dimension {} has no certified division test", d)),
        },
    };
    debug_assert!(verify_verdict(alg, &verdict));
    Ok(verdict)
}

/// Re-checks a certificate from scratch.
pub fn verify_verdict(alg: &Algebra, v: &DivisionVerdict) -> bool {
    let n = alg.dim;
    match v {
        DivisionVerdict::Field(c) => {
            c.element.len() == n
                && alg.minimal_polynomial(&c.element) == c.minimal_polynomial
                && c.minimal_polynomial.degree() == Some(n)
                && alg.is_commutative()
                && (n == 1 || poly::rational_roots(&c.minimal_polynomial).is_empty())
                && poly::quadratic_factor(&c.minimal_polynomial).is_none()
        }
        DivisionVerdict::QuaternionDivision(c) | DivisionVerdict::Split(c) => {
            let basis = [alg.one.clone(), c.i.clone(), c.j.clone(), c.k.clone()];
            let spans = n == 4 && linalg::rank(&RatMatrix::from_columns(4, &basis).expect("length 4")) == 4;
            let relations = alg.mul(&c.i, &c.i) == alg.scalar(&c.a)
                && alg.mul(&c.j, &c.j) == alg.scalar(&c.b)
                && alg.mul(&c.i, &c.j) == c.k
                && add_vec(&c.k, &alg.mul(&c.j, &c.i)) == zero_vec(n);
            let symbols = match (v, c.place) {
                (DivisionVerdict::QuaternionDivision(_), Some(p)) => {
                    hilbert::hilbert_symbol(&c.a, &c.b, p).ok() == Some(-1)
                }
                (DivisionVerdict::Split(_), None) => hilbert::relevant_places(&c.a, &c.b)
                    .into_iter()
                    .all(|p| hilbert::hilbert_symbol(&c.a, &c.b, p).ok() == Some(1)),
                _ => false,
            };
            spans && relations && symbols
        }
        DivisionVerdict::NotDivision(ZeroDivisorCertificate::ReducibleMinimalPolynomial {
            element,
            minimal_polynomial,
            factor,
        }) => {
            let Some((cofactor, rem)) = minimal_polynomial.div_rem(factor) else {
                return false;
            };
            let proper = factor.degree().is_some_and(|d| d >= 1) && cofactor.degree().is_some_and(|d| d >= 1);
            let left = alg.eval_poly(factor, element);
            let right = alg.eval_poly(&cofactor, element);
            rem.is_zero()
                && proper
                && alg.minimal_polynomial(element) == *minimal_polynomial
                && !is_zero_vec(&left)
                && !is_zero_vec(&right)
                && is_zero_vec(&alg.mul(&left, &right))
        }
        DivisionVerdict::NotDivision(ZeroDivisorCertificate::ZeroDivisor { left, right }) => {
            !is_zero_vec(left) && !is_zero_vec(right) && is_zero_vec(&alg.mul(left, right))
        }
        DivisionVerdict::NotDivision(ZeroDivisorCertificate::Nilpotent { element, index }) => {
            !is_zero_vec(element) && *index >= 1 && is_zero_vec(&alg.pow(element, *index))
        }
        DivisionVerdict::Undetermined(_) => true,
    }
}

/// The ring isomorphism `End^0(A) -> End^0(B)`, `f -> xi f xi^{-1}` with
/// `xi^{-1} = psi / n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugation {
    pub xi: TorusHom,
    pub n: BigInt,
    pub psi: TorusHom,
    /// Images of the basis of `End(A)`.
    pub images: Vec<RatMatrix>,
}

impl Conjugation {
    pub fn apply(&self, f: &RatMatrix) -> RatMatrix {
        let inv = self.psi.matrix().to_rational().scale(&BigRational::new(BigInt::one(), self.n.clone()));
        &(&self.xi.matrix().to_rational() * f) * &inv
    }

    pub fn apply_inverse(&self, g: &RatMatrix) -> RatMatrix {
        let inv = self.psi.matrix().to_rational().scale(&BigRational::new(BigInt::one(), self.n.clone()));
        &(&inv * g) * &self.xi.matrix().to_rational()
    }
}

pub fn conjugate_algebra(xi: &TorusHom, e: &EndAlgebra) -> Result<Conjugation> {
    if xi.source() != e.base() {
        return Err(Error::NotComposable(format!(
            "isogeny from {} applied to End^0({})",
            xi.source().name(),
            e.base().name()
        )));
    }
    let qi = torus::quasi_inverse(xi)?;
    let mut c = Conjugation { xi: xi.clone(), n: qi.n, psi: qi.psi, images: Vec::new() };
    c.images = e.basis().iter().map(|f| c.apply(&f.matrix().to_rational())).collect();

    let jb = xi.target().complex_structure();
    for img in &c.images {
        let s = img.to_scalar();
        if jb * &s != &s * jb {
            return Err(Error::TheoremViolation(format!("conjugate {} is not in End^0(B)", img)));
        }
    }
    let alg = e.algebra();
    let r = alg.dim();
    let image_of = |x: &Element| -> RatMatrix {
        let n = xi.target().rank();
        c.images.iter().zip(x).fold(RatMatrix::zeros(n, n), |acc, (m, k)| &acc + &m.scale(k))
    };
    for i in 0..r {
        for j in 0..r {
            let prod = alg.mul(&alg.basis_element(i), &alg.basis_element(j));
            if image_of(&prod) != &c.images[i] * &c.images[j] {
                return Err(Error::TheoremViolation(format!("conjugation is not multiplicative on e{} e{}", i, j)));
            }
        }
        let back = c.apply_inverse(&c.images[i]);
        if back != e.basis()[i].matrix().to_rational() {
            return Err(Error::TheoremViolation("conjugation round trip failed".into()));
        }
    }
    if !image_of(alg.one()).is_identity() {
        return Err(Error::TheoremViolation("conjugation does not preserve 1".into()));
    }
    Ok(c)
}
