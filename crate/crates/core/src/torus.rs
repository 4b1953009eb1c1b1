//! Complex tori `(R^{2g}/Z^{2g}, J)`, their duals, homomorphisms and isogenies.
//!
//! The lattice is always `Z^{2g}`; a torus is its complex structure `J`.
//! A homomorphism `A -> B` is an integer `2g_B x 2g_A` matrix `T` with
//! `J_B T = T J_A`. The same matrix is both the rational representation
//! (acting on the lattice) and the analytic one (read over the scalars).
//!
//! The dual torus has structure `-J^T` on the dual lattice, and the
//! double-dual identification is the identity matrix, so the transpose of
//! the transpose of `T` is `T` again.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{IntMatrix, Matrix, ScalarMatrix};
use crate::scalar::Scalar;
use crate::snf;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexTorus {
    name: String,
    g: usize,
    j: ScalarMatrix,
}

impl ComplexTorus {
    pub fn new(name: impl Into<String>, j: ScalarMatrix) -> Result<Self> {
        let name = name.into();
        if !j.is_square() || j.rows() == 0 || !j.rows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(alloc::format!(
                "complex structure of {} must be 2g x 2g, got {}x{}",
                name,
                j.rows(),
                j.cols()
            )));
        }
        j.tag()?;
        let sq = &j * &j;
        if sq != -ScalarMatrix::identity(j.rows()) {
            return Err(Error::NotComplexStructure(name));
        }
        Ok(ComplexTorus { g: j.rows() / 2, name, j })
    }

    /// The elliptic curve `C / (Z + tau Z)` with `tau = x + i y`, `y > 0`,
    /// presented in the lattice basis `(1, tau)`.
    pub fn elliptic(name: impl Into<String>, x: Scalar, y: Scalar) -> Result<Self> {
        if y.is_zero() {
            return Err(Error::Parse("imaginary part of tau must be nonzero".into()));
        }
        let inv_y = &Scalar::one() / &y;
        let norm = &(&x * &x) + &(&y * &y);
        let j = ScalarMatrix::from_rows(alloc::vec![
            alloc::vec![-(&x * &inv_y), -(&norm * &inv_y)],
            alloc::vec![inv_y.clone(), &x * &inv_y],
        ])?;
        ComplexTorus::new(name, j)
    }

    /// Product torus with block-diagonal complex structure.
    pub fn product(&self, other: &ComplexTorus, name: impl Into<String>) -> Result<Self> {
        ComplexTorus::new(name, ScalarMatrix::block_diag(&self.j, &other.j))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Complex dimension `g`.
    pub fn dim(&self) -> usize {
        self.g
    }

    /// Rank of the lattice, `2g`.
    pub fn rank(&self) -> usize {
        2 * self.g
    }

    pub fn complex_structure(&self) -> &ScalarMatrix {
        &self.j
    }

    pub fn extension(&self) -> u64 {
        self.j.tag().expect("validated at construction")
    }

    /// `A^ = (V*/L*, -J^T)`. Names toggle a trailing `^`, so the dual of the
    /// dual is equal to the original torus.
    pub fn dual(&self) -> ComplexTorus {
        let name = match self.name.strip_suffix('^') {
            Some(base) => String::from(base),
            None => alloc::format!("{}^", self.name),
        };
        ComplexTorus { name, g: self.g, j: -self.j.transpose() }
    }

    /// True when `J` equals the structure of the dual in the stored bases.
    pub fn is_self_dual_presentation(&self) -> bool {
        self.j == -self.j.transpose()
    }
}

/// A homomorphism of complex tori given by its rational representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusHom {
    source: Arc<ComplexTorus>,
    target: Arc<ComplexTorus>,
    matrix: IntMatrix,
}

pub fn intertwines(source: &ComplexTorus, target: &ComplexTorus, t: &IntMatrix) -> bool {
    let ts = t.to_scalar();
    &target.j * &ts == &ts * &source.j
}

impl TorusHom {
    pub fn new(source: Arc<ComplexTorus>, target: Arc<ComplexTorus>, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "a map {} -> {} needs a {}x{} matrix, got {}x{}",
                source.name(),
                target.name(),
                target.rank(),
                source.rank(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !intertwines(&source, &target, &matrix) {
            return Err(Error::NotIntertwining { source_name: source.name().into(), target: target.name().into() });
        }
        Ok(TorusHom { source, target, matrix })
    }

    pub fn identity(a: Arc<ComplexTorus>) -> Self {
        let n = a.rank();
        TorusHom { source: a.clone(), target: a, matrix: IntMatrix::identity(n) }
    }

    /// Multiplication by `n`.
    pub fn multiplication(a: Arc<ComplexTorus>, n: i64) -> Self {
        let m = IntMatrix::identity(a.rank()).scale(&BigInt::from(n));
        TorusHom { source: a.clone(), target: a, matrix: m }
    }

    pub fn zero(source: Arc<ComplexTorus>, target: Arc<ComplexTorus>) -> Self {
        let m = IntMatrix::zeros(target.rank(), source.rank());
        TorusHom { source, target, matrix: m }
    }

    pub fn source(&self) -> &Arc<ComplexTorus> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ComplexTorus> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// The analytic representation: the same matrix over the scalars.
    pub fn analytic(&self) -> ScalarMatrix {
        self.matrix.to_scalar()
    }

    /// `self . inner`, i.e. first `inner`, then `self`.
    pub fn compose(&self, inner: &TorusHom) -> Result<TorusHom> {
        if inner.target != self.source {
            return Err(Error::NotComposable(alloc::format!(
                "{} -> {} then {} -> {}",
                inner.source.name(),
                inner.target.name(),
                self.source.name(),
                self.target.name()
            )));
        }
        Ok(TorusHom { source: inner.source.clone(), target: self.target.clone(), matrix: &self.matrix * &inner.matrix })
    }

    /// Transposed morphism `B^ -> A^` with matrix `T^T`.
    pub fn transpose(&self) -> TorusHom {
        TorusHom {
            source: Arc::new(self.target.dual()),
            target: Arc::new(self.source.dual()),
            matrix: self.matrix.transpose(),
        }
    }

    pub fn neg(&self) -> TorusHom {
        TorusHom { source: self.source.clone(), target: self.target.clone(), matrix: -&self.matrix }
    }

    pub fn add(&self, other: &TorusHom) -> Result<TorusHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotComposable("sum of maps with different endpoints".into()));
        }
        Ok(TorusHom { source: self.source.clone(), target: self.target.clone(), matrix: &self.matrix + &other.matrix })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Degree `[L_B : T L_A]` if `T` has full rank, computed from the Smith
    /// invariants.
    pub fn isogeny_degree(&self) -> Result<Option<BigInt>> {
        is_isogeny(self)
    }
}

/// `Z`-basis of `Hom(A, B)`: the saturated integer kernel of
/// `T -> J_B T - T J_A` on row-major matrix entries.
pub fn hom_lattice(a: &Arc<ComplexTorus>, b: &Arc<ComplexTorus>) -> Result<Vec<TorusHom>> {
    crate::scalar::try_join_tags(a.extension(), b.extension())?;
    let (rb, ra) = (b.rank(), a.rank());
    let n = rb * ra;
    let mut op = ScalarMatrix::zeros(n, n);
    for i in 0..rb {
        for k in 0..ra {
            let row = i * ra + k;
            for j in 0..rb {
                let v = op.get(row, j * ra + k).clone() + b.j.get(i, j).clone();
                op.set(row, j * ra + k, v);
            }
            for l in 0..ra {
                let v = op.get(row, i * ra + l).clone() - a.j.get(l, k).clone();
                op.set(row, i * ra + l, v);
            }
        }
    }
    snf::integer_kernel(&op).into_iter().map(|v| TorusHom::new(a.clone(), b.clone(), Matrix::new(rb, ra, v)?)).collect()
}

/// Integer combination `sum c_i T_i` of same-shaped matrices.
pub fn combine(basis: &[TorusHom], coeffs: &[i64]) -> Option<TorusHom> {
    let first = basis.first()?;
    let mut m = IntMatrix::zeros(first.matrix.rows(), first.matrix.cols());
    for (t, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            m = &m + &t.matrix.scale(&BigInt::from(c));
        }
    }
    Some(TorusHom { source: first.source.clone(), target: first.target.clone(), matrix: m })
}

/// Degree of `f` as an isogeny, or `None` if `det T = 0`.
pub fn is_isogeny(f: &TorusHom) -> Result<Option<BigInt>> {
    if f.source.dim() != f.target.dim() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "isogeny between tori of dimensions {} and {}",
            f.source.dim(),
            f.target.dim()
        )));
    }
    let s = snf::smith_normal_form(&f.matrix);
    let factors = s.invariant_factors();
    if factors.len() < f.matrix.rows() {
        return Ok(None);
    }
    let deg = factors.iter().fold(BigInt::one(), |acc, x| acc * x);
    debug_assert_eq!(deg, snf::int_det(&f.matrix).abs());
    Ok(Some(deg))
}

/// `(n, psi)` with `psi . f = n_A`, `f . psi = n_B` and `n` minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiInverse {
    pub n: BigInt,
    pub psi: TorusHom,
}

pub fn quasi_inverse(f: &TorusHom) -> Result<QuasiInverse> {
    if is_isogeny(f)?.is_none() {
        return Err(Error::NotAnIsogeny);
    }
    let inv = linalg::inverse(&f.matrix.to_rational())?.ok_or(Error::NotAnIsogeny)?;
    let n = inv.data().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = inv.map(|x| (x * BigInt::clone(&n)).to_integer());
    let psi = TorusHom::new(f.target.clone(), f.source.clone(), scaled)?;
    let na = IntMatrix::identity(f.matrix.cols()).scale(&n);
    let nb = IntMatrix::identity(f.matrix.rows()).scale(&n);
    if &psi.matrix * &f.matrix != na || &f.matrix * &psi.matrix != nb {
        return Err(Error::TheoremViolation("quasi-inverse composition is not n".into()));
    }
    Ok(QuasiInverse { n, psi })
}

/// Coefficient vectors in `[-bound, bound]^len` ordered by max-norm, then by
/// number of nonzero entries, then preferring earlier basis elements and the
/// values `1, -1, 2, -2, ...` in that order.
pub fn coefficient_shells(len: usize, bound: u32) -> impl Iterator<Item = Vec<i64>> {
    let mut out = Vec::new();
    for m in 1..=bound as i64 {
        let values: Vec<i64> = (1..=m).flat_map(|v| [v, -v]).collect();
        for k in 1..=len {
            let total = values.len().pow(k as u32);
            for support in combinations(len, k) {
                for code in 0..total {
                    // decode base-|values| digits, last support position fastest
                    let mut rest = code;
                    let mut c = alloc::vec![0i64; len];
                    for p in (0..k).rev() {
                        c[support[p]] = values[rest % values.len()];
                        rest /= values.len();
                    }
                    if c.iter().any(|v| v.abs() == m) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out.into_iter()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All coefficient vectors in the box `[-bound, bound]^len`, lexicographic.
pub fn coefficient_box(len: usize, bound: u32) -> Vec<Vec<i64>> {
    let b = bound as i64;
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (-b..=b).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out
}

/// Searches small combinations of the `Hom(A, B)` basis for one with nonzero
/// determinant. `None` means "none at this bound" unless the lattice is zero.
pub fn isogeny_witness(a: &Arc<ComplexTorus>, b: &Arc<ComplexTorus>, bound: u32) -> Result<Option<TorusHom>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch("isogeny witness between different dimensions".into()));
    }
    let basis = hom_lattice(a, b)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for c in coefficient_shells(basis.len(), bound) {
        let f = combine(&basis, &c).expect("nonempty basis");
        if !snf::int_det(&f.matrix).is_zero() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    pub(crate) fn e_i() -> Arc<ComplexTorus> {
        Arc::new(ComplexTorus::new("Ei", IntMatrix::from_i64(2, 2, &[0, -1, 1, 0]).to_scalar()).unwrap())
    }

    fn e_2i() -> Arc<ComplexTorus> {
        let j = ScalarMatrix::from_rows(alloc::vec![
            alloc::vec![Scalar::zero(), Scalar::from_int(-2)],
            alloc::vec![Scalar::frac(1, 2), Scalar::zero()],
        ])
        .unwrap();
        Arc::new(ComplexTorus::new("E2i", j).unwrap())
    }

    fn e_sqrt2i() -> Arc<ComplexTorus> {
        let r2 = Scalar::sqrt(2).unwrap();
        Arc::new(ComplexTorus::elliptic("Esqrt2i", Scalar::zero(), r2).unwrap())
    }

    fn m(r: usize, c: usize, v: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(r, c, v)
    }

    #[test]
    fn elliptic_presentation_matches_hand_written() {
        let ei = ComplexTorus::elliptic("Ei", Scalar::zero(), Scalar::one()).unwrap();
        assert_eq!(&ei, e_i().as_ref());
        let e2 = ComplexTorus::elliptic("E2i", Scalar::zero(), Scalar::from_int(2)).unwrap();
        assert_eq!(&e2, e_2i().as_ref());
        let r2 = Scalar::sqrt(2).unwrap();
        let expect = ScalarMatrix::from_rows(alloc::vec![
            alloc::vec![Scalar::zero(), -r2.clone()],
            alloc::vec![&Scalar::one() / &r2, Scalar::zero()],
        ])
        .unwrap();
        assert_eq!(e_sqrt2i().complex_structure(), &expect);
    }

    #[test]
    fn rejects_non_complex_structure() {
        let err = ComplexTorus::new("E1", IntMatrix::identity(2).to_scalar()).unwrap_err();
        assert_eq!(alloc::string::ToString::to_string(&err), "J^2 != -I at torus E1");
        assert!(ComplexTorus::new("odd", IntMatrix::identity(3).to_scalar()).is_err());
    }

    #[test]
    fn dual_examples() {
        let ei = e_i();
        assert_eq!(ei.dual().complex_structure(), ei.complex_structure());
        assert_eq!(ei.dual().dual(), *ei);
        let d = e_2i().dual();
        let expect = ScalarMatrix::from_rows(alloc::vec![
            alloc::vec![Scalar::zero(), Scalar::frac(-1, 2)],
            alloc::vec![Scalar::from_int(2), Scalar::zero()],
        ])
        .unwrap();
        assert_eq!(d.complex_structure(), &expect);
        assert_eq!(d.name(), "E2i^");
        assert_eq!(e_sqrt2i().dual().dual(), *e_sqrt2i());
    }

    #[test]
    fn hom_lattice_of_e_i() {
        let ei = e_i();
        let basis = hom_lattice(&ei, &ei).unwrap();
        assert_eq!(basis.len(), 2);
        let mats: Vec<_> = basis.iter().map(|f| f.matrix().clone()).collect();
        assert_eq!(mats, alloc::vec![m(2, 2, &[1, 0, 0, 1]), m(2, 2, &[0, 1, -1, 0])]);
    }

    #[test]
    fn e_i_and_e_sqrt2i_share_no_maps() {
        assert!(hom_lattice(&e_i(), &e_sqrt2i()).unwrap().is_empty());
        assert!(hom_lattice(&e_sqrt2i(), &e_i()).unwrap().is_empty());
    }

    #[test]
    fn transpose_examples() {
        let ei = e_i();
        let id = TorusHom::identity(ei.clone());
        assert_eq!(id.transpose(), TorusHom::identity(Arc::new(ei.dual())));
        let three = TorusHom::multiplication(ei.clone(), 3);
        assert_eq!(three.transpose().matrix(), three.matrix());
        let f = TorusHom::new(ei.clone(), e_2i(), m(2, 2, &[2, 0, 0, 1])).unwrap();
        assert_eq!(f.transpose().transpose(), f);
    }

    #[test]
    fn isogeny_degrees() {
        let ei = e_i();
        assert_eq!(is_isogeny(&TorusHom::identity(ei.clone())).unwrap(), Some(BigInt::from(1)));
        assert_eq!(is_isogeny(&TorusHom::multiplication(ei.clone(), 3)).unwrap(), Some(BigInt::from(9)));
        let f = TorusHom::new(ei.clone(), e_2i(), m(2, 2, &[2, 0, 0, 1])).unwrap();
        assert_eq!(is_isogeny(&f).unwrap(), Some(BigInt::from(2)));
        assert_eq!(is_isogeny(&TorusHom::zero(ei.clone(), ei.clone())).unwrap(), None);
    }

    #[test]
    fn diag_2_1_intertwines_e_i_and_e_2i() {
        assert!(intertwines(&e_i(), &e_2i(), &m(2, 2, &[2, 0, 0, 1])));
        assert!(!intertwines(&e_i(), &e_2i(), &m(2, 2, &[1, 0, 0, 1])));
        assert!(TorusHom::new(e_i(), e_2i(), IntMatrix::identity(2)).is_err());
    }

    #[test]
    fn quasi_inverse_examples() {
        let ei = e_i();
        let f = TorusHom::new(ei.clone(), e_2i(), m(2, 2, &[2, 0, 0, 1])).unwrap();
        let q = quasi_inverse(&f).unwrap();
        assert_eq!(q.n, BigInt::from(2));
        assert_eq!(q.psi.matrix(), &m(2, 2, &[1, 0, 0, 2]));

        let q = quasi_inverse(&TorusHom::identity(ei.clone())).unwrap();
        assert_eq!(q.n, BigInt::from(1));
        assert!(q.psi.matrix().is_identity());

        let q = quasi_inverse(&TorusHom::multiplication(ei.clone(), 2)).unwrap();
        assert_eq!(q.n, BigInt::from(2));
        assert!(q.psi.matrix().is_identity());

        assert_eq!(quasi_inverse(&TorusHom::zero(ei.clone(), ei)), Err(Error::NotAnIsogeny));
    }

    #[test]
    fn witnesses() {
        let ei = e_i();
        let w = isogeny_witness(&ei, &ei, 3).unwrap().unwrap();
        assert!(w.matrix().is_identity());
        let w = isogeny_witness(&ei, &e_2i(), 3).unwrap().unwrap();
        assert!(is_isogeny(&w).unwrap().is_some());
        assert_eq!(isogeny_witness(&ei, &e_sqrt2i(), 3).unwrap(), None);
    }

    #[test]
    fn shells_are_ordered() {
        let v: Vec<_> = coefficient_shells(2, 1).collect();
        assert_eq!(v[0], alloc::vec![1, 0]);
        assert_eq!(v[1], alloc::vec![-1, 0]);
        assert_eq!(v[2], alloc::vec![0, 1]);
        assert_eq!(v.len(), 8);
        assert_eq!(coefficient_shells(3, 2).count(), 5usize.pow(3) - 1);
        assert_eq!(coefficient_box(2, 1).len(), 9);
    }

    #[test]
    fn mixed_extensions_are_rejected() {
        let r3 = Scalar::sqrt(3).unwrap();
        let e3 = Arc::new(ComplexTorus::elliptic("Esqrt3i", Scalar::zero(), r3).unwrap());
        assert_eq!(hom_lattice(&e3, &e_sqrt2i()).unwrap_err(), Error::ExtensionMismatch(3, 2));
    }
}
