//! Exact 3x3 matrices over cyclotomic fields and elements of `PGL_3`.
//!
//! A [`ProjElement`] couples a chosen invertible lift with its canonical
//! rescaling (first nonzero entry in row-major order scaled to 1), which
//! makes projective equality decidable and hashable. Characteristic
//! polynomials are always taken of an explicit lift; their projective
//! equivalence classes and eigenvalue-ratio invariants are computed exactly.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::cyclotomic::{lcm_u32, CycloElement, CycloField};
use crate::{Error, Result};

/// A 3x3 matrix with entries in a single cyclotomic field.
#[derive(Clone)]
pub struct Matrix3 {
    field: Arc<CycloField>,
    entries: Vec<CycloElement>,
}

impl PartialEq for Matrix3 {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.entries == other.entries
    }
}

impl Eq for Matrix3 {}

impl Matrix3 {
    /// Builds a matrix from nine row-major entries sharing one field.
    pub fn new(field: &Arc<CycloField>, entries: Vec<CycloElement>) -> Result<Self> {
        if entries.len() != 9 {
            return Err(Error::BadParameters(format!(
                "a 3x3 matrix needs 9 entries, got {}",
                entries.len()
            )));
        }
        for e in &entries {
            if e.conductor() != field.conductor() {
                return Err(Error::FieldMismatch(field.conductor(), e.conductor()));
            }
        }
        Ok(Matrix3 {
            field: Arc::clone(field),
            entries,
        })
    }

    /// Builds a matrix from rows of machine integers.
    pub fn from_int_rows(field: &Arc<CycloField>, rows: [[i64; 3]; 3]) -> Self {
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| CycloElement::from_int(field, v))
            .collect();
        Matrix3 {
            field: Arc::clone(field),
            entries,
        }
    }

    pub fn identity(field: &Arc<CycloField>) -> Self {
        Self::from_int_rows(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn diag(a: CycloElement, b: CycloElement, c: CycloElement) -> Result<Self> {
        let field = Arc::clone(a.field());
        let zero = CycloElement::zero(&field);
        Matrix3::new(
            &field,
            vec![
                a,
                zero.clone(),
                zero.clone(),
                zero.clone(),
                b,
                zero.clone(),
                zero.clone(),
                zero,
                c,
            ],
        )
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn entry(&self, row: usize, col: usize) -> &CycloElement {
        &self.entries[3 * row + col]
    }

    pub fn entries(&self) -> &[CycloElement] {
        &self.entries
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.conductor() != other.conductor() {
            Err(Error::FieldMismatch(self.conductor(), other.conductor()))
        } else {
            Ok(())
        }
    }

    /// Matrix product over a shared field.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let zero = CycloElement::zero(&self.field);
        let mut out = vec![zero; 9];
        for i in 0..3 {
            for k in 0..3 {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..3 {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.try_mul(b)?;
                    out[3 * i + j] = out[3 * i + j].try_add(&t)?;
                }
            }
        }
        Matrix3::new(&self.field, out)
    }

    /// Multiplies every entry by a scalar from the same field.
    pub fn scale(&self, c: &CycloElement) -> Result<Self> {
        if c.conductor() != self.conductor() {
            return Err(Error::FieldMismatch(self.conductor(), c.conductor()));
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.try_mul(c))
            .collect::<Result<Vec<_>>>()?;
        Matrix3::new(&self.field, entries)
    }

    pub fn determinant(&self) -> CycloElement {
        let m = |i: usize, j: usize| self.entry(i, j);
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &(m(r1, c1) * m(r2, c2)) - &(m(r1, c2) * m(r2, c1))
        };
        let t0 = m(0, 0) * &minor(1, 2, 1, 2);
        let t1 = m(0, 1) * &minor(1, 2, 0, 2);
        let t2 = m(0, 2) * &minor(1, 2, 0, 1);
        &(&t0 - &t1) + &t2
    }

    /// Classical adjugate, satisfying `adj(M) * M = det(M) * I`.
    pub fn adjugate(&self) -> Self {
        let m = |i: usize, j: usize| self.entry(i, j);
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &(m(r1, c1) * m(r2, c2)) - &(m(r1, c2) * m(r2, c1))
        };
        let entries = vec![
            minor(1, 2, 1, 2),
            minor(0, 2, 1, 2).neg(),
            minor(0, 1, 1, 2),
            minor(1, 2, 0, 2).neg(),
            minor(0, 2, 0, 2),
            minor(0, 1, 0, 2).neg(),
            minor(1, 2, 0, 1),
            minor(0, 2, 0, 1).neg(),
            minor(0, 1, 0, 1),
        ];
        Matrix3 {
            field: Arc::clone(&self.field),
            entries,
        }
    }

    /// Exact inverse; fails on singular input.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.determinant();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let inv_det = det.inv()?;
        self.adjugate().scale(&inv_det)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(9);
        for j in 0..3 {
            for i in 0..3 {
                entries.push(self.entry(i, j).clone());
            }
        }
        Matrix3 {
            field: Arc::clone(&self.field),
            entries,
        }
    }

    /// Entrywise complex conjugation.
    pub fn conj(&self) -> Self {
        Matrix3 {
            field: Arc::clone(&self.field),
            entries: self.entries.iter().map(CycloElement::conj).collect(),
        }
    }

    /// True when every entry is fixed by conjugation.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(CycloElement::is_real)
    }

    /// Embeds every entry into `Q(zeta_M)`.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == self.conductor() {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(m))
            .collect::<Result<Vec<_>>>()?;
        Matrix3::new(&CycloField::new(m), entries)
    }

    /// Coefficients of the characteristic polynomial
    /// `t^3 - e1*t^2 + e2*t - e3` of this explicit matrix.
    pub fn charpoly(&self) -> CharPoly {
        let m = |i: usize, j: usize| self.entry(i, j);
        let e1 = &(m(0, 0) + m(1, 1)) + m(2, 2);
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &(m(r1, c1) * m(r2, c2)) - &(m(r1, c2) * m(r2, c1))
        };
        let e2 = &(&minor(0, 1, 0, 1) + &minor(0, 2, 0, 2)) + &minor(1, 2, 1, 2);
        let e3 = self.determinant();
        CharPoly { e1, e2, e3 }
    }
}

impl fmt::Display for Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..3 {
            write!(f, "[{}, {}, {}]", self.entry(i, 0), self.entry(i, 1), self.entry(i, 2))?;
            if i < 2 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix3(N={}; {})", self.conductor(), self)
    }
}

/// Characteristic polynomial of a cubic matrix, stored through its
/// elementary symmetric functions: `t^3 - e1*t^2 + e2*t - e3`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharPoly {
    pub e1: CycloElement,
    pub e2: CycloElement,
    pub e3: CycloElement,
}

impl CharPoly {
    /// Monic coefficient list `[c0, c1, c2, 1]` with
    /// `p(t) = t^3 + c2*t^2 + c1*t + c0`.
    pub fn coefficients(&self) -> [CycloElement; 4] {
        let one = CycloElement::one(self.e1.field());
        [self.e3.neg(), self.e2.clone(), self.e1.neg(), one]
    }

    /// True when all three coefficients are real.
    pub fn is_real(&self) -> bool {
        self.e1.is_real() && self.e2.is_real() && self.e3.is_real()
    }

    /// Characteristic polynomial of `c * M` given the one of `M`.
    pub fn scale_lift(&self, c: &CycloElement) -> Result<CharPoly> {
        let c2 = c.try_mul(c)?;
        let c3 = c2.try_mul(c)?;
        Ok(CharPoly {
            e1: self.e1.try_mul(c)?,
            e2: self.e2.try_mul(&c2)?,
            e3: self.e3.try_mul(&c3)?,
        })
    }

    /// Decides whether two characteristic polynomials agree up to the
    /// rescaling `q(t) = c^3 * p(t/c)` of the underlying lift, i.e. whether
    /// the two spectra differ by a global scalar.
    ///
    /// Both polynomials must come from invertible matrices, so `e3 != 0`.
    /// The scalar is pinned down exactly: from `e1` when present, otherwise
    /// from the `e2`/`e3` pair; when only `e3` survives, a complex cube root
    /// always exists and the classes agree.
    pub fn class_eq(&self, other: &CharPoly) -> Result<bool> {
        if self.e1.conductor() != other.e1.conductor() {
            return Err(Error::FieldMismatch(
                self.e1.conductor(),
                other.e1.conductor(),
            ));
        }
        if self.e3.is_zero() || other.e3.is_zero() {
            return Err(Error::Singular);
        }
        let (p1, p2, p3) = (&self.e1, &self.e2, &self.e3);
        let (q1, q2, q3) = (&other.e1, &other.e2, &other.e3);
        if p1.is_zero() != q1.is_zero() || p2.is_zero() != q2.is_zero() {
            return Ok(false);
        }
        if !p1.is_zero() {
            let c = q1.try_div(p1)?;
            let c2 = c.try_mul(&c)?;
            let c3 = c2.try_mul(&c)?;
            return Ok(*q2 == p2.try_mul(&c2)? && *q3 == p3.try_mul(&c3)?);
        }
        if !p2.is_zero() {
            // c^2 = q2/p2 and c^3 = q3/p3 are simultaneously solvable over C
            // exactly when (q3/p3)^2 = (q2/p2)^3.
            let lhs = q3.pow(2)?.try_mul(&p2.pow(3)?)?;
            let rhs = q2.pow(3)?.try_mul(&p3.pow(2)?)?;
            return Ok(lhs == rhs);
        }
        // Fully depressed on both sides: c^3 = q3/p3 always has a complex
        // solution.
        Ok(true)
    }
}

/// An element of `PGL_3` represented by an invertible lift together with its
/// canonical rescaling.
#[derive(Clone)]
pub struct ProjElement {
    lift: Matrix3,
    canon: Matrix3,
}

impl PartialEq for ProjElement {
    fn eq(&self, other: &Self) -> bool {
        self.canon == other.canon
    }
}

impl Eq for ProjElement {}

impl Hash for ProjElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canon.conductor().hash(state);
        for e in self.canon.entries() {
            e.hash(state);
        }
    }
}

impl ProjElement {
    /// Wraps an invertible lift; fails on singular matrices.
    pub fn new(lift: Matrix3) -> Result<Self> {
        if lift.determinant().is_zero() {
            return Err(Error::Singular);
        }
        let canon = canonical_scaling(&lift)?;
        Ok(ProjElement { lift, canon })
    }

    /// The lift this element was constructed from.
    pub fn lift(&self) -> &Matrix3 {
        &self.lift
    }

    /// The canonical lift: first nonzero entry in row-major order equals 1.
    pub fn canon(&self) -> &Matrix3 {
        &self.canon
    }

    pub fn conductor(&self) -> u32 {
        self.canon.conductor()
    }

    pub fn identity(field: &Arc<CycloField>) -> Self {
        let id = Matrix3::identity(field);
        ProjElement {
            lift: id.clone(),
            canon: id,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.canon == Matrix3::identity(self.canon.field())
    }

    /// Projective product. Operands over different conductors are embedded
    /// into the least common multiple first.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let m = lcm_u32(self.conductor(), other.conductor());
        let a = self.canon.embed(m)?;
        let b = other.canon.embed(m)?;
        ProjElement::new(a.mul(&b)?)
    }

    /// Projective inverse via the adjugate, avoiding any division.
    pub fn inverse(&self) -> Self {
        ProjElement::new(self.canon.adjugate()).expect("adjugate of invertible is invertible")
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inverse().pow(-e);
        }
        let mut acc = ProjElement::identity(self.canon.field());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The Galois conjugate: entrywise complex conjugation of the lift.
    pub fn galois_sigma(&self) -> Self {
        ProjElement::new(self.lift.conj()).expect("conjugate stays invertible")
    }

    /// Embeds into a larger cyclotomic field.
    pub fn embed(&self, m: u32) -> Result<Self> {
        ProjElement::new(self.lift.embed(m)?)
    }

    /// Least `k >= 1` with `g^k` the identity in `PGL_3`, searched up to
    /// `max`.
    pub fn proj_order(&self, max: u32) -> Result<u32> {
        if max == 0 {
            return Err(Error::BadParameters("order bound must be positive".into()));
        }
        let mut cur = self.clone();
        for k in 1..=max {
            if cur.is_identity() {
                return Ok(k);
            }
            cur = cur.mul(self)?;
        }
        Err(Error::OrderNotFound(max))
    }

    /// Characteristic polynomial of the canonical lift.
    pub fn charpoly(&self) -> CharPoly {
        self.canon.charpoly()
    }

    /// The set of eigenvalue-ratio exponent pairs of this element relative
    /// to `zeta_n`: all `(a, b)` in `[0, n)^2` such that some lift has
    /// spectrum `{c, c*zeta_n^a, c*zeta_n^b}`.
    ///
    /// The element must have finite order dividing `n`. The match is decided
    /// exactly from the symmetric functions of the canonical lift: the
    /// scalar `c` is forced by `e1` when `1 + zeta^a + zeta^b != 0`, by the
    /// `e2`/`e3` pair when only the linear symmetric function vanishes, and
    /// in the fully depressed case (both vanish) a complex cube root always
    /// supplies `c`, so only the vanishing pattern is checked.
    pub fn eigenratio_class(&self, n: u32) -> Result<BTreeSet<(u32, u32)>> {
        if n == 0 {
            return Err(Error::BadParameters("n must be positive".into()));
        }
        let ord = self
            .proj_order(n)
            .map_err(|_| Error::NotFiniteOrder(n))?;
        if n % ord != 0 {
            return Err(Error::NotFiniteOrder(n));
        }
        let m = lcm_u32(self.conductor(), n);
        let g = self.embed(m)?;
        let cp = g.canon.charpoly();
        let field = CycloField::new(m);
        let step = (m / n) as i64;
        let zeta = |k: u32| CycloElement::zeta_pow(&field, (k % n) as i64 * step);
        let one = CycloElement::one(&field);
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                let za = zeta(a);
                let zb = zeta(b);
                let zab = zeta((a + b) % n);
                let s1 = one.try_add(&za)?.try_add(&zb)?;
                let s2 = za.try_add(&zb)?.try_add(&zab)?;
                let s3 = zab;
                let matched = if !s1.is_zero() {
                    if cp.e1.is_zero() {
                        false
                    } else {
                        let c = cp.e1.try_div(&s1)?;
                        let c2 = c.try_mul(&c)?;
                        let c3 = c2.try_mul(&c)?;
                        cp.e2 == s2.try_mul(&c2)? && cp.e3 == s3.try_mul(&c3)?
                    }
                } else if !s2.is_zero() {
                    if !cp.e1.is_zero() || cp.e2.is_zero() {
                        false
                    } else {
                        let lhs = cp.e3.pow(2)?.try_mul(&s2.pow(3)?)?;
                        let rhs = cp.e2.pow(3)?.try_mul(&s3.pow(2)?)?;
                        lhs == rhs
                    }
                } else {
                    cp.e1.is_zero() && cp.e2.is_zero()
                };
                if matched {
                    out.insert((a, b));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for ProjElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjElement(N={}; {})", self.conductor(), self.canon)
    }
}

impl fmt::Display for ProjElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canon)
    }
}

fn canonical_scaling(lift: &Matrix3) -> Result<Matrix3> {
    let pivot = lift
        .entries()
        .iter()
        .find(|e| !e.is_zero())
        .ok_or(Error::Singular)?;
    let inv = pivot.inv()?;
    lift.scale(&inv)
}

/// Necessary condition for `g` and `h` to be conjugate in `PGL_3`: their
/// eigenvalue-ratio classes relative to `zeta_n` intersect.
///
/// A `false` answer certifies non-conjugacy; a `true` answer is only
/// necessary, not sufficient.
pub fn conjugacy_necessary(g: &ProjElement, h: &ProjElement, n: u32) -> Result<bool> {
    let pg = g.eigenratio_class(n)?;
    let ph = h.eigenratio_class(n)?;
    Ok(pg.intersection(&ph).next().is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fld(n: u32) -> Arc<CycloField> {
        CycloField::new(n)
    }

    fn zeta(n: u32, k: i64) -> CycloElement {
        CycloElement::zeta_pow(&fld(n), k)
    }

    fn diag_unit(n: u32, a: i64, b: i64) -> ProjElement {
        let f = fld(n);
        let m = Matrix3::diag(
            CycloElement::one(&f),
            CycloElement::zeta_pow(&f, a),
            CycloElement::zeta_pow(&f, b),
        )
        .unwrap();
        ProjElement::new(m).unwrap()
    }

    #[test]
    fn determinant_and_adjugate() {
        let f = fld(12);
        let m = Matrix3::new(
            &f,
            vec![
                CycloElement::from_int(&f, 2),
                zeta(12, 1),
                CycloElement::zero(&f),
                CycloElement::one(&f),
                zeta(12, 5),
                CycloElement::from_int(&f, 3),
                zeta(12, 2),
                CycloElement::zero(&f),
                CycloElement::one(&f),
            ],
        )
        .unwrap();
        let det = m.determinant();
        let prod = m.adjugate().mul(&m).unwrap();
        let expected = Matrix3::identity(&f)
            .scale(&det)
            .unwrap();
        assert_eq!(prod, expected);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix3::identity(&f));
    }

    #[test]
    fn singular_matrices_are_rejected() {
        let f = fld(4);
        let m = Matrix3::from_int_rows(&f, [[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert!(m.determinant().is_zero());
        assert!(matches!(ProjElement::new(m), Err(Error::Singular)));
    }

    #[test]
    fn canonical_scaling_pins_first_nonzero_entry() {
        let f = fld(3);
        let m = Matrix3::diag(zeta(3, 1), zeta(3, 2), CycloElement::one(&f)).unwrap();
        let g = ProjElement::new(m).unwrap();
        assert!(g.canon().entry(0, 0).is_one());
        // Scalar multiples collapse to the same projective element.
        let scaled = Matrix3::diag(
            zeta(3, 1).try_mul(&zeta(3, 1)).unwrap(),
            CycloElement::one(&f),
            zeta(3, 1),
        )
        .unwrap();
        let h = ProjElement::new(scaled).unwrap();
        assert_eq!(g, h);
        use std::collections::HashSet;
        let set: HashSet<ProjElement> = [g.clone(), h].into_iter().collect();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn scalar_matrices_are_the_identity() {
        let z = zeta(3, 1);
        let m = Matrix3::diag(z.clone(), z.clone(), z).unwrap();
        let g = ProjElement::new(m).unwrap();
        assert!(g.is_identity());
        assert_eq!(g.proj_order(5).unwrap(), 1);
    }

    #[test]
    fn projective_orders() {
        assert_eq!(diag_unit(12, 1, 0).proj_order(24).unwrap(), 12);
        assert_eq!(diag_unit(5, 1, 4).proj_order(10).unwrap(), 5);
        let f = fld(4);
        let unipotent = Matrix3::from_int_rows(&f, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        let g = ProjElement::new(unipotent).unwrap();
        assert_eq!(g.proj_order(24), Err(Error::OrderNotFound(24)));
    }

    #[test]
    fn hessian_v_matrix_facts() {
        // V * conj(V) = 3 * I and V has projective order 4.
        let f = fld(3);
        let one = CycloElement::one(&f);
        let z = zeta(3, 1);
        let z2 = zeta(3, 2);
        let v = Matrix3::new(
            &f,
            vec![
                one.clone(),
                one.clone(),
                one.clone(),
                one.clone(),
                z.clone(),
                z2.clone(),
                one.clone(),
                z2,
                z,
            ],
        )
        .unwrap();
        let prod = v.mul(&v.conj()).unwrap();
        let three = Matrix3::identity(&f)
            .scale(&CycloElement::from_int(&f, 3))
            .unwrap();
        assert_eq!(prod, three);
        let g = ProjElement::new(v).unwrap();
        assert_eq!(g.proj_order(12).unwrap(), 4);
    }

    #[test]
    fn charpoly_of_diagonal_matrices() {
        let g = diag_unit(3, 1, 2);
        let cp = g.charpoly();
        assert!(cp.e1.is_zero());
        assert!(cp.e2.is_zero());
        assert!(cp.e3.is_one());

        let h = diag_unit(5, 2, 3);
        let hp = h.charpoly();
        // e1 = 1 + z^2 + z^3, e3 = 1 for diag(1, z^2, z^3).
        let f = fld(5);
        let expect_e1 = CycloElement::one(&f)
            .try_add(&zeta(5, 2))
            .unwrap()
            .try_add(&zeta(5, 3))
            .unwrap();
        assert_eq!(hp.e1, expect_e1);
        assert!(hp.e3.is_one());
        // The spectrum {1, z^2, z^3} is closed under conjugation, so this
        // particular lift already has a real characteristic polynomial.
        assert!(hp.is_real());
    }

    #[test]
    fn charpoly_reality_depends_on_the_lift() {
        // The lift diag(z^3, z^4, z^2) has a non-real characteristic
        // polynomial even though rescaling by z^-3 produces a lift
        // (the canonical one) whose spectrum {1, z, z^4} is conjugation
        // closed and hence has real coefficients.
        let lift = Matrix3::diag(zeta(5, 3), zeta(5, 4), zeta(5, 2)).unwrap();
        assert!(!lift.charpoly().is_real());
        let g = ProjElement::new(lift).unwrap();
        assert!(g.charpoly().is_real());
        assert_eq!(g, diag_unit(5, 1, 4));
    }

    #[test]
    fn charpoly_class_detects_scalar_rescaling() {
        let f = fld(12);
        let m = Matrix3::new(
            &f,
            vec![
                CycloElement::from_int(&f, 1),
                zeta(12, 1),
                CycloElement::from_int(&f, 2),
                CycloElement::zero(&f),
                zeta(12, 7),
                CycloElement::one(&f),
                CycloElement::one(&f),
                CycloElement::zero(&f),
                zeta(12, 3),
            ],
        )
        .unwrap();
        assert!(!m.determinant().is_zero());
        let scaled = m.scale(&zeta(12, 5)).unwrap();
        assert!(m.charpoly().class_eq(&scaled.charpoly()).unwrap());
        // A genuinely different spectrum pattern is rejected.
        let other = diag_unit(3, 0, 1).embed(12).unwrap();
        let depressed = diag_unit(3, 1, 2).embed(12).unwrap();
        assert!(!other
            .charpoly()
            .class_eq(&depressed.charpoly())
            .unwrap());
    }

    #[test]
    fn charpoly_class_fully_depressed_branch() {
        // diag(1, z3, z3^2) and its scalar rescalings all have e1 = e2 = 0;
        // any two such classes agree because a cube root of the determinant
        // ratio always exists over C.
        let a = diag_unit(3, 1, 2).embed(12).unwrap();
        let b = diag_unit(12, 4, 8);
        assert!(a.charpoly().class_eq(&b.charpoly()).unwrap());
    }

    #[test]
    fn eigenratio_of_rotation_type_element() {
        let g = diag_unit(5, 1, 4);
        let pats = g.eigenratio_class(5).unwrap();
        let expect: BTreeSet<(u32, u32)> = [(1, 4), (4, 1), (3, 4), (4, 3), (1, 2), (2, 1)]
            .into_iter()
            .collect();
        assert_eq!(pats, expect);
    }

    #[test]
    fn eigenratio_of_identity_and_homology() {
        let f = fld(5);
        let id = ProjElement::identity(&f);
        let pats = id.eigenratio_class(5).unwrap();
        assert_eq!(pats, [(0, 0)].into_iter().collect());

        let h = diag_unit(5, 0, 1);
        let pats = h.eigenratio_class(5).unwrap();
        // Spectrum {c, c, c*z}: anchor at the repeated eigenvalue gives
        // (0, 1)/(1, 0); anchor at the simple one gives (4, 4).
        let expect: BTreeSet<(u32, u32)> = [(0, 1), (1, 0), (4, 4)].into_iter().collect();
        assert_eq!(pats, expect);
    }

    #[test]
    fn eigenratio_requires_compatible_order() {
        let g = diag_unit(5, 1, 4);
        assert_eq!(g.eigenratio_class(7), Err(Error::NotFiniteOrder(7)));
        let f = fld(4);
        let unipotent = Matrix3::from_int_rows(&f, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        let g = ProjElement::new(unipotent).unwrap();
        assert_eq!(g.eigenratio_class(6), Err(Error::NotFiniteOrder(6)));
    }

    #[test]
    fn conjugacy_test_separates_inverse_pairs() {
        // diag(1, z5, z5^4) is potentially conjugate to its inverse.
        let g = diag_unit(5, 1, 4);
        assert!(conjugacy_necessary(&g, &g.inverse(), 5).unwrap());
        // diag(1, z7, z7^3) is certified non-conjugate to its inverse.
        let h = diag_unit(7, 1, 3);
        let hpats = h.eigenratio_class(7).unwrap();
        let expect: BTreeSet<(u32, u32)> =
            [(1, 3), (3, 1), (2, 6), (6, 2), (4, 5), (5, 4)].into_iter().collect();
        assert_eq!(hpats, expect);
        let ipats = h.inverse().eigenratio_class(7).unwrap();
        let expect_inv: BTreeSet<(u32, u32)> =
            [(4, 6), (6, 4), (1, 5), (5, 1), (2, 3), (3, 2)].into_iter().collect();
        assert_eq!(ipats, expect_inv);
        assert!(!conjugacy_necessary(&h, &h.inverse(), 7).unwrap());
    }

    #[test]
    fn sigma_of_real_matrix_is_fixed() {
        let f = fld(4);
        let m = Matrix3::from_int_rows(&f, [[0, -1, 0], [1, 0, 0], [0, 0, 1]]);
        let g = ProjElement::new(m).unwrap();
        assert_eq!(g.galois_sigma(), g);
        let h = diag_unit(3, 1, 2);
        assert_eq!(h.galois_sigma(), h.inverse());
    }

    #[test]
    fn charpoly_conjugation_invariance() {
        // Characteristic polynomial classes are conjugation invariants.
        let f = fld(12);
        let p = Matrix3::from_int_rows(&f, [[1, 1, 0], [0, 1, 1], [1, 0, 1]]);
        assert!(!p.determinant().is_zero());
        let g = diag_unit(12, 1, 7);
        let conj = ProjElement::new(
            p.inverse()
                .unwrap()
                .mul(g.canon())
                .unwrap()
                .mul(&p)
                .unwrap(),
        )
        .unwrap();
        assert!(g.charpoly().class_eq(&conj.charpoly()).unwrap());
        assert_eq!(
            g.eigenratio_class(12).unwrap(),
            conj.eigenratio_class(12).unwrap()
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn product_respects_canonicalization(
            a in 0i64..12, b in 0i64..12, c in 0i64..12, d in 0i64..12,
        ) {
            let g = diag_unit(12, a, b);
            let h = diag_unit(12, c, d);
            let prod = g.mul(&h).unwrap();
            let expect = diag_unit(12, a + c, b + d);
            prop_assert_eq!(prod, expect);
        }

        #[test]
        fn adjugate_identity_holds(coeffs in proptest::collection::vec(-3i64..=3, 9)) {
            let f = fld(4);
            let entries: Vec<CycloElement> = coeffs
                .iter()
                .map(|&v| CycloElement::from_int(&f, v))
                .collect();
            let m = Matrix3::new(&f, entries).unwrap();
            let det = m.determinant();
            let prod = m.adjugate().mul(&m).unwrap();
            let expect = Matrix3::identity(&f).scale(&det).unwrap();
            prop_assert_eq!(prod, expect);
        }
    }
}
