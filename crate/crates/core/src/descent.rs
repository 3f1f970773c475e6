//! Descent of cyclic and dihedral subgroups of `PGL_3` to the reals.
//!
//! A cyclic subgroup generated by a finite-order element is classified
//! through its normal form `diag(1, zeta_n^a, zeta_n^b)`. Its field of
//! moduli is always real; it is definable over `R` exactly when `n = 2` or
//! one of `a+b`, `a-2b`, `2a-b` vanishes mod `n`. For definable forms an
//! explicit real model is produced by conjugating with
//! `phi = [[1,0,0],[0,alpha,beta],[0,conj(alpha),conj(beta)]]` and rescaling
//! by `1/i`, after a permutation reduction to the `a+b = 0` case.


use crate::cyclotomic::{gcd_u32, lcm_u32, CycloElement, CycloField};
use crate::projlinear::{conjugacy_necessary, Matrix3, ProjElement};
use crate::{Error, Result};

/// Largest projective order searched when classifying a single element.
pub const MAX_ORDER: u32 = 360;

/// Normal form `diag(1, zeta_n^a, zeta_n^b)` of a finite-order element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicNormalForm {
    pub n: u32,
    pub a: u32,
    pub b: u32,
}

impl CyclicNormalForm {
    /// Validates `n >= 2`, `0 <= a < b <= n-1` and `gcd(a, b) = 1`.
    pub fn new(n: u32, a: u32, b: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParameters(format!(
                "normal form needs n >= 2, got n={}",
                n
            )));
        }
        if !(a < b && b <= n - 1) {
            return Err(Error::BadParameters(format!(
                "normal form needs 0 <= a < b <= n-1, got (a, b) = ({}, {})",
                a, b
            )));
        }
        if gcd_u32(a, b) != 1 {
            return Err(Error::BadParameters(format!(
                "normal form needs gcd(a, b) = 1, got gcd({}, {}) = {}",
                a,
                b,
                gcd_u32(a, b)
            )));
        }
        Ok(CyclicNormalForm { n, a, b })
    }

    /// True for the homology forms `(0, 1)`: two equal eigenvalues.
    pub fn is_homology(&self) -> bool {
        self.a == 0
    }

    /// The element `diag(1, zeta_n^a, zeta_n^b)` realizing this form.
    pub fn element(&self) -> ProjElement {
        let f = CycloField::new(self.n);
        let m = Matrix3::diag(
            CycloElement::one(&f),
            CycloElement::zeta_pow(&f, self.a as i64),
            CycloElement::zeta_pow(&f, self.b as i64),
        )
        .expect("diagonal over one field");
        ProjElement::new(m).expect("roots of unity are invertible")
    }
}

/// Computes the canonical normal form of a finite-order element: the
/// lexicographically least `(a, b)` over all eigenvalue-ratio patterns of
/// all generators `g^k` with `gcd(k, n) = 1`, restricted to representatives
/// with `a < b` and `gcd(a, b) = 1`.
pub fn cyclic_normal_form(g: &ProjElement) -> Result<CyclicNormalForm> {
    let n = g
        .proj_order(MAX_ORDER)
        .map_err(|_| Error::NotFiniteOrder(MAX_ORDER))?;
    if n == 1 {
        return Err(Error::IdentityElement);
    }
    let pats = g.eigenratio_class(n)?;
    let mut best: Option<(u32, u32)> = None;
    for &(a, b) in &pats {
        for k in 1..n {
            if gcd_u32(k, n) != 1 {
                continue;
            }
            let (ka, kb) = ((k * a) % n, (k * b) % n);
            if ka < kb && kb <= n - 1 && gcd_u32(ka, kb) == 1 {
                let cand = (ka, kb);
                if best.map_or(true, |cur| cand < cur) {
                    best = Some(cand);
                }
            }
        }
    }
    let (a, b) = best.ok_or_else(|| {
        Error::Inconsistency(format!("no valid normal form found for order {}", n))
    })?;
    CyclicNormalForm::new(n, a, b)
}

/// Decides definability over `R` for a cyclic normal form and explains the
/// decision. Returns `(definable, reason)`.
pub fn definable_cyclic(nf: &CyclicNormalForm) -> (bool, String) {
    let (n, a, b) = (nf.n, nf.a, nf.b);
    if n == 2 {
        return (true, "n=2".into());
    }
    if (a + b) % n == 0 {
        return (true, "a+b=0 mod n".into());
    }
    if (a + 2 * n - 2 * b) % n == 0 {
        return (true, "a-2b=0 mod n".into());
    }
    if (2 * a + n - b) % n == 0 {
        return (true, "2a-b=0 mod n".into());
    }
    if nf.is_homology() {
        (
            false,
            format!("homology of period {} >= 3 admits no real model", n),
        )
    } else {
        (
            false,
            "none of a+b, a-2b, 2a-b vanishes mod n".into(),
        )
    }
}

/// Real field of moduli for the cyclic group generated by `g`.
///
/// This always holds: the Galois conjugate of `<g>` is `<g^-1>`. The
/// function certifies it computationally by comparing the characteristic
/// polynomial class and the eigenvalue-ratio class of `sigma(g)` and
/// `g^-1`.
pub fn has_real_field_of_moduli_cyclic(g: &ProjElement) -> Result<(bool, String)> {
    let n = g
        .proj_order(MAX_ORDER)
        .map_err(|_| Error::NotFiniteOrder(MAX_ORDER))?;
    let sigma = g.galois_sigma();
    let inverse = g.inverse();
    if !sigma.charpoly().class_eq(&inverse.charpoly())? {
        return Err(Error::Inconsistency(
            "sigma(g) and g^-1 have different characteristic polynomial classes".into(),
        ));
    }
    if n > 1 && !conjugacy_necessary(&sigma, &inverse, n)? {
        return Err(Error::Inconsistency(
            "sigma(g) and g^-1 have disjoint eigenvalue-ratio classes".into(),
        ));
    }
    Ok((
        true,
        "sigma(<g>) = <g^-1> = <g>: the field of moduli is real".into(),
    ))
}

/// Conjugation parameters `alpha, beta` with `Im(alpha * conj(beta)) != 0`,
/// stored over a conductor divisible by 4.
#[derive(Clone, Debug)]
pub struct RealModelParams {
    alpha: CycloElement,
    beta: CycloElement,
}

impl RealModelParams {
    pub fn new(alpha: &CycloElement, beta: &CycloElement) -> Result<Self> {
        let m = lcm_u32(4, lcm_u32(alpha.conductor(), beta.conductor()));
        let alpha = alpha.embed(m)?;
        let beta = beta.embed(m)?;
        let pairing = alpha.try_mul(&beta.conj())?;
        let (_, im) = pairing.re_im();
        if im.is_zero() {
            return Err(Error::DegenerateParams);
        }
        Ok(RealModelParams { alpha, beta })
    }

    /// The default choice `alpha = 1`, `beta = i`.
    pub fn standard() -> Self {
        let f = CycloField::new(4);
        RealModelParams::new(&CycloElement::one(&f), &CycloElement::zeta_pow(&f, 1))
            .expect("standard parameters are non-degenerate")
    }

    /// Parses parameters from scalar expressions over `Q(zeta_conductor)`,
    /// with `z` denoting the conductor-th root of unity. Missing expressions
    /// default to `alpha = 1` and `beta = i`.
    pub fn from_strings(alpha: Option<&str>, beta: Option<&str>, conductor: u32) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::BadParameters("conductor must be positive".into()));
        }
        let field = CycloField::new(conductor);
        let alpha = match alpha {
            Some(expr) => CycloElement::parse(&field, expr)?,
            None => CycloElement::one(&field),
        };
        let beta = match beta {
            Some(expr) => CycloElement::parse(&field, expr)?,
            None => {
                let m = lcm_u32(4, conductor);
                CycloElement::zeta_pow(&CycloField::new(m), (m / 4) as i64)
            }
        };
        RealModelParams::new(&alpha, &beta)
    }

    pub fn alpha(&self) -> &CycloElement {
        &self.alpha
    }

    pub fn beta(&self) -> &CycloElement {
        &self.beta
    }

    pub fn conductor(&self) -> u32 {
        self.alpha.conductor()
    }

    /// The conjugator `[[1,0,0],[0,alpha,beta],[0,conj(alpha),conj(beta)]]`
    /// over a field containing the parameters.
    pub fn phi(&self, m: u32) -> Result<Matrix3> {
        let field = CycloField::new(m);
        let alpha = self.alpha.embed(m)?;
        let beta = self.beta.embed(m)?;
        let one = CycloElement::one(&field);
        let zero = CycloElement::zero(&field);
        Matrix3::new(
            &field,
            vec![
                one,
                zero.clone(),
                zero.clone(),
                zero.clone(),
                alpha.clone(),
                beta.clone(),
                zero,
                alpha.conj(),
                beta.conj(),
            ],
        )
    }
}

/// Result of a cyclic real-model construction.
#[derive(Clone, Debug)]
pub struct CyclicRealModel {
    /// A real matrix generating a conjugate of the input group.
    pub matrix: Matrix3,
    /// Exponent `a'` of the reduced diagonal `diag(1, z^a', z^-a')`.
    pub reduced_exponent: u32,
    /// Coordinate permutation reducing the input form to the `a+b = 0` case.
    pub pre_conjugator: Matrix3,
    /// The conjugator `phi` applied after the reduction.
    pub conjugator: Matrix3,
    /// Mismatches against the closed-form entry formulas; empty in practice.
    pub diagnostics: Vec<String>,
}

/// Result of a dihedral real-model construction.
#[derive(Clone, Debug)]
pub struct DihedralRealModel {
    pub rotation: Matrix3,
    pub reflection: Matrix3,
    pub diagnostics: Vec<String>,
}

fn exact_im(x: &CycloElement, m: u32) -> Result<CycloElement> {
    let (_, im) = x.embed(m)?.re_im();
    im.embed(m)
}

/// Divides a matrix by `i = zeta_4`, staying in a conductor divisible by 4.
fn divide_by_i(mat: &Matrix3) -> Result<Matrix3> {
    let m = mat.conductor();
    debug_assert_eq!(m % 4, 0);
    let field = CycloField::new(m);
    let i_inv = CycloElement::zeta_pow(&field, -((m / 4) as i64));
    mat.scale(&i_inv)
}

/// Conjugates `x` into `adj(phi) * x * phi / i`, which has real entries for
/// the reduced rotation, the coordinate swap, and the icosahedral generator.
pub(crate) fn realify(x: &Matrix3, params: &RealModelParams) -> Result<Matrix3> {
    let m = lcm_u32(lcm_u32(4, x.conductor()), params.conductor());
    let phi = params.phi(m)?;
    let lifted = x.embed(m)?;
    divide_by_i(&phi.adjugate().mul(&lifted)?.mul(&phi)?)
}

/// Builds a real model for the cyclic group of a definable normal form.
///
/// The form is first reduced to the rotation case `diag(1, z^a', z^-a')` by
/// a coordinate permutation chosen from the criterion clause that holds,
/// then conjugated by `phi` and rescaled by `1/i`. The returned matrix is
/// verified to be real, of projective order `n`, and exactly conjugate to
/// the reduced diagonal.
pub fn real_model_cyclic(
    nf: &CyclicNormalForm,
    params: &RealModelParams,
) -> Result<CyclicRealModel> {
    let (ok, reason) = definable_cyclic(nf);
    if !ok {
        return Err(Error::CriterionFailed(reason));
    }
    let (n, a, b) = (nf.n, nf.a, nf.b);
    let m = lcm_u32(lcm_u32(4, n), params.conductor());
    let field = CycloField::new(m);

    if n == 2 {
        // diag(1, 1, -1) is already a real model for the unique form (0, 1).
        let matrix = Matrix3::diag(
            CycloElement::one(&field),
            CycloElement::one(&field),
            CycloElement::from_int(&field, -1),
        )?;
        return Ok(CyclicRealModel {
            matrix,
            reduced_exponent: 1,
            pre_conjugator: Matrix3::identity(&field),
            conjugator: Matrix3::identity(&field),
            diagnostics: Vec::new(),
        });
    }

    let (pre, reduced_a) = if (a + b) % n == 0 {
        (Matrix3::identity(&field), a)
    } else if (a + 2 * n - 2 * b) % n == 0 {
        // a = 2b: conjugating by [X:Y:Z] -> [Y:Z:X] turns diag(1, z^2b, z^b)
        // into diag(z^b, 1, z^2b) ~ diag(1, z^-b, z^b).
        (
            Matrix3::from_int_rows(&field, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
            n - b,
        )
    } else {
        // b = 2a: conjugating by [X:Y:Z] -> [Z:X:Y] turns diag(1, z^a, z^2a)
        // into diag(z^a, z^2a, 1) ~ diag(1, z^a, z^-a).
        (
            Matrix3::from_int_rows(&field, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
            a,
        )
    };

    let step = (m / n) as i64;
    let w = CycloElement::zeta_pow(&field, reduced_a as i64 * step);
    let reduced = Matrix3::diag(CycloElement::one(&field), w.clone(), w.conj())?;

    // The permutation really does reduce the input form.
    let original = nf.element().embed(m)?;
    let pre_proj = ProjElement::new(pre.clone())?;
    let moved = pre_proj
        .inverse()
        .mul(&original)?
        .mul(&pre_proj)?;
    if moved != ProjElement::new(reduced.clone())? {
        return Err(Error::Inconsistency(
            "permutation reduction disagrees with the reduced diagonal".into(),
        ));
    }

    let phi = params.phi(m)?;
    let matrix = realify(&reduced, params)?;
    if !matrix.is_real() {
        return Err(Error::Inconsistency(
            "cyclic model has a non-real entry".into(),
        ));
    }
    let model = ProjElement::new(matrix.clone())?;
    if model.proj_order(n)? != n {
        return Err(Error::Inconsistency(
            "cyclic model does not have projective order n".into(),
        ));
    }
    let phi_proj = ProjElement::new(phi.clone())?;
    let back = phi_proj.mul(&model)?.mul(&phi_proj.inverse())?;
    if back != ProjElement::new(reduced)? {
        return Err(Error::Inconsistency(
            "conjugating the model back does not recover the diagonal".into(),
        ));
    }

    let diagnostics = cyclic_closed_form_diagnostics(&matrix, params, &w, m)?;
    Ok(CyclicRealModel {
        matrix,
        reduced_exponent: reduced_a,
        pre_conjugator: pre,
        conjugator: phi,
        diagnostics,
    })
}

/// Compares a computed cyclic model against the closed-form entries
/// `[[2Im(ab~), 0, 0], [0, 2Im(ab~w), 2|b|^2 Im(w)], [0, -2|a|^2 Im(w),
/// 2Im(ab~w~)]]` and reports any mismatch.
fn cyclic_closed_form_diagnostics(
    computed: &Matrix3,
    params: &RealModelParams,
    w: &CycloElement,
    m: u32,
) -> Result<Vec<String>> {
    let field = CycloField::new(m);
    let alpha = params.alpha().embed(m)?;
    let beta = params.beta().embed(m)?;
    let two = CycloElement::from_int(&field, 2);
    let ab_bar = alpha.try_mul(&beta.conj())?;
    let norm_b = beta.try_mul(&beta.conj())?;
    let norm_a = alpha.try_mul(&alpha.conj())?;
    let e00 = two.try_mul(&exact_im(&ab_bar, m)?)?;
    let e11 = two.try_mul(&exact_im(&ab_bar.try_mul(w)?, m)?)?;
    let e12 = two.try_mul(&norm_b)?.try_mul(&exact_im(w, m)?)?;
    let e21 = two.try_mul(&norm_a)?.try_mul(&exact_im(w, m)?)?.neg();
    let e22 = two.try_mul(&exact_im(&ab_bar.try_mul(&w.conj())?, m)?)?;
    let zero = CycloElement::zero(&field);
    let expected = [
        [e00, zero.clone(), zero.clone()],
        [zero.clone(), e11, e12],
        [zero.clone(), e21, e22],
    ];
    let mut diagnostics = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if computed.entry(i, j) != &expected[i][j] {
                diagnostics.push(format!(
                    "entry ({}, {}): computed {} but closed form gives {}",
                    i,
                    j,
                    computed.entry(i, j),
                    expected[i][j]
                ));
            }
        }
    }
    Ok(diagnostics)
}

/// Builds a real model for the dihedral group
/// `<diag(1, z^a, z^-a), [X:Z:Y]>` of order `2n`.
pub fn real_model_dihedral(
    n: u32,
    a: u32,
    params: &RealModelParams,
) -> Result<DihedralRealModel> {
    if n < 2 {
        return Err(Error::BadParameters(format!(
            "dihedral model needs n >= 2, got n={}",
            n
        )));
    }
    if gcd_u32(a % n, n) != 1 {
        return Err(Error::BadParameters(format!(
            "dihedral model needs gcd(a, n) = 1, got a={}, n={}",
            a, n
        )));
    }
    let m = lcm_u32(lcm_u32(4, n), params.conductor());
    let field = CycloField::new(m);
    let step = (m / n) as i64;
    let w = CycloElement::zeta_pow(&field, (a % n) as i64 * step);
    let rotation_src = Matrix3::diag(CycloElement::one(&field), w.clone(), w.conj())?;
    let reflection_src = Matrix3::from_int_rows(&field, [[1, 0, 0], [0, 0, 1], [0, 1, 0]]);

    let rotation = realify(&rotation_src, params)?;
    let reflection = realify(&reflection_src, params)?;
    if !rotation.is_real() || !reflection.is_real() {
        return Err(Error::Inconsistency(
            "dihedral model has a non-real entry".into(),
        ));
    }
    let r = ProjElement::new(rotation.clone())?;
    let s = ProjElement::new(reflection.clone())?;
    if r.proj_order(n)? != n || s.proj_order(2)? != 2 {
        return Err(Error::Inconsistency(
            "dihedral model generators have wrong orders".into(),
        ));
    }
    if s.mul(&r)?.mul(&s)? != r.inverse() {
        return Err(Error::Inconsistency(
            "dihedral relation s*r*s = r^-1 fails in the model".into(),
        ));
    }
    let group = crate::finitegroup::FiniteSubgroup::closure(
        &[r, s],
        2 * n as usize + 2,
    )?;
    if group.order() != 2 * n as usize {
        return Err(Error::Inconsistency(format!(
            "dihedral model closes to order {} instead of {}",
            group.order(),
            2 * n
        )));
    }

    // Closed-form check for the reflection image: [[2Im(ab~), 0, 0],
    // [0, -2Im(ab), -2Im(b^2)], [0, 2Im(a^2), 2Im(ab)]].
    let alpha = params.alpha().embed(m)?;
    let beta = params.beta().embed(m)?;
    let two = CycloElement::from_int(&field, 2);
    let zero = CycloElement::zero(&field);
    let e00 = two.try_mul(&exact_im(&alpha.try_mul(&beta.conj())?, m)?)?;
    let e11 = two.try_mul(&exact_im(&alpha.try_mul(&beta)?, m)?)?.neg();
    let e12 = two.try_mul(&exact_im(&beta.try_mul(&beta)?, m)?)?.neg();
    let e21 = two.try_mul(&exact_im(&alpha.try_mul(&alpha)?, m)?)?;
    let e22 = two.try_mul(&exact_im(&alpha.try_mul(&beta)?, m)?)?;
    let expected = [
        [e00, zero.clone(), zero.clone()],
        [zero.clone(), e11, e12],
        [zero.clone(), e21, e22],
    ];
    let mut diagnostics = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if reflection.entry(i, j) != &expected[i][j] {
                diagnostics.push(format!(
                    "reflection entry ({}, {}): computed {} but closed form gives {}",
                    i,
                    j,
                    reflection.entry(i, j),
                    expected[i][j]
                ));
            }
        }
    }
    Ok(DihedralRealModel {
        rotation,
        reflection,
        diagnostics,
    })
}

/// Searches for a scalar `c` such that `c * lift` has a real characteristic
/// polynomial, where `lift` is the canonical lift of `g`.
///
/// Candidates range over the roots of unity of order `lcm(2n, 4)`; whenever
/// any complex rescaling works, one of these does, because a real cubic has
/// a conjugation-closed spectrum and the eigenvalues are roots of unity up
/// to one global scalar. Returns the first witness, trying `c = 1` first.
pub fn exists_real_charpoly_lift(g: &ProjElement) -> Result<Option<CycloElement>> {
    let n = g
        .proj_order(MAX_ORDER)
        .map_err(|_| Error::NotFiniteOrder(MAX_ORDER))?;
    if n < 3 {
        return Err(Error::BadParameters(format!(
            "real-charpoly search expects order >= 3, got {}",
            n
        )));
    }
    let l = lcm_u32(2 * n, 4);
    let m = lcm_u32(g.conductor(), l);
    let field = CycloField::new(m);
    let cp = g.embed(m)?.charpoly();
    let step = (m / l) as i64;
    for k in 0..l {
        let c = CycloElement::zeta_pow(&field, k as i64 * step);
        if cp.scale_lift(&c)?.is_real() {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Three-valued classification results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

/// Positive evidence attached to a verdict.
#[derive(Clone, Debug)]
pub enum Witness {
    /// Real generators of a conjugate model.
    RealModelGenerators(Vec<Matrix3>),
    /// A conjugator carrying the group onto its Galois image.
    ModuliConjugator(Matrix3),
}

/// Negative evidence attached to a verdict.
#[derive(Clone, Debug)]
pub enum Obstruction {
    /// A homology of period at least 3 admits no real model.
    HomologyPeriodGe3 { n: u32 },
    /// A cyclic subgroup of the group is itself not definable.
    CyclicSubgroup {
        form: CyclicNormalForm,
        element: Matrix3,
    },
    /// An elementary abelian subgroup of order 9 forbids real definability
    /// because C3 x C3 embeds into PGL_3(K) only when K contains a
    /// primitive cube root of unity.
    C3xC3Rule {
        witness: Option<Box<(Matrix3, Matrix3)>>,
    },
    /// The cyclic definability criterion fails for this form.
    CriterionFailed { form: CyclicNormalForm },
}

/// Outcome of a moduli/definability classification.
#[derive(Clone, Debug)]
pub struct DescentVerdict {
    /// Is the field of moduli real?
    pub moduli: TriState,
    /// Is the group definable over `R`?
    pub definable: TriState,
    /// Real field of moduli without a real model.
    pub pseudo_real: bool,
    pub reason: String,
    pub witness: Option<Witness>,
    pub obstruction: Option<Obstruction>,
}

/// Classifies the cyclic group generated by a validated normal form.
pub fn verdict_for_form(nf: &CyclicNormalForm) -> Result<DescentVerdict> {
    let (ok, reason) = definable_cyclic(nf);
    if ok {
        let model = real_model_cyclic(nf, &RealModelParams::standard())?;
        Ok(DescentVerdict {
            moduli: TriState::Yes,
            definable: TriState::Yes,
            pseudo_real: false,
            reason,
            witness: Some(Witness::RealModelGenerators(vec![model.matrix])),
            obstruction: None,
        })
    } else {
        let obstruction = if nf.is_homology() {
            Obstruction::HomologyPeriodGe3 { n: nf.n }
        } else {
            Obstruction::CriterionFailed { form: *nf }
        };
        Ok(DescentVerdict {
            moduli: TriState::Yes,
            definable: TriState::No,
            pseudo_real: true,
            reason,
            witness: None,
            obstruction: Some(obstruction),
        })
    }
}

/// Classifies the cyclic group generated by an explicit element.
///
/// The verdict is computed from the canonical normal form and then
/// cross-checked along an independent route: for every order, definability
/// must coincide with `g` being potentially conjugate to `g^-1`, which is
/// decided through eigenvalue-ratio classes.
pub fn verdict_cyclic(g: &ProjElement) -> Result<DescentVerdict> {
    let nf = cyclic_normal_form(g)?;
    let verdict = verdict_for_form(&nf)?;
    let (moduli_ok, _) = has_real_field_of_moduli_cyclic(g)?;
    if !moduli_ok {
        return Err(Error::Inconsistency(
            "cyclic moduli certificate failed".into(),
        ));
    }
    let conj_route = conjugacy_necessary(g, &g.inverse(), nf.n)?;
    let criterion_route = verdict.definable == TriState::Yes;
    if conj_route != criterion_route {
        return Err(Error::Inconsistency(format!(
            "criterion says definable={} but inverse-conjugacy says {} for {:?}",
            criterion_route, conj_route, nf
        )));
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use crate::finitegroup::FiniteSubgroup;

    fn fld(n: u32) -> Arc<CycloField> {
        CycloField::new(n)
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
    fn normal_form_validation() {
        assert!(CyclicNormalForm::new(5, 1, 2).is_ok());
        assert!(CyclicNormalForm::new(5, 0, 1).is_ok());
        assert!(CyclicNormalForm::new(1, 0, 1).is_err());
        assert!(CyclicNormalForm::new(5, 2, 2).is_err());
        assert!(CyclicNormalForm::new(5, 1, 5).is_err());
        assert!(CyclicNormalForm::new(9, 3, 6).is_err());
        assert!(CyclicNormalForm::new(7, 0, 0).is_err());
    }

    #[test]
    fn canonical_forms_of_diagonal_elements() {
        let nf = cyclic_normal_form(&diag_unit(5, 1, 4)).unwrap();
        assert_eq!((nf.n, nf.a, nf.b), (5, 1, 2));
        assert!(!nf.is_homology());

        let nf = cyclic_normal_form(&diag_unit(3, 0, 1)).unwrap();
        assert_eq!((nf.n, nf.a, nf.b), (3, 0, 1));
        assert!(nf.is_homology());

        let nf = cyclic_normal_form(&diag_unit(2, 0, 1)).unwrap();
        assert_eq!((nf.n, nf.a, nf.b), (2, 0, 1));

        // The normal form only depends on the projective class.
        let scaled = diag_unit(7, 2, 5);
        let nf1 = cyclic_normal_form(&scaled).unwrap();
        let nf2 = cyclic_normal_form(&scaled.pow(3).unwrap()).unwrap();
        assert_eq!(nf1, nf2);
    }

    #[test]
    fn normal_form_rejects_identity_and_infinite_order() {
        assert_eq!(
            cyclic_normal_form(&ProjElement::identity(&fld(4))),
            Err(Error::IdentityElement)
        );
        let unipotent = Matrix3::from_int_rows(&fld(4), [[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(
            cyclic_normal_form(&ProjElement::new(unipotent).unwrap()),
            Err(Error::NotFiniteOrder(MAX_ORDER))
        );
    }

    #[test]
    fn criterion_table() {
        let check = |n, a, b| definable_cyclic(&CyclicNormalForm::new(n, a, b).unwrap());
        assert_eq!(check(2, 0, 1), (true, "n=2".into()));
        assert!(!check(3, 0, 1).0);
        assert!(check(3, 1, 2).0);
        assert_eq!(check(4, 1, 2), (true, "2a-b=0 mod n".into()));
        assert_eq!(check(5, 1, 4), (true, "a+b=0 mod n".into()));
        assert!(check(5, 1, 2).0);
        assert!(check(7, 3, 5).0);
        assert!(!check(7, 1, 3).0);
        assert!(!check(7, 1, 5).0);
        assert!(!check(5, 0, 1).0);
        assert!(check(12, 1, 11).0);
        assert!(!check(12, 1, 4).0);
    }

    #[test]
    fn criterion_is_orbit_invariant() {
        // Every valid form must classify identically to the canonical form
        // of the element it represents.
        for n in 2..=12u32 {
            for a in 0..n {
                for b in (a + 1)..n {
                    if gcd_u32(a, b) != 1 {
                        continue;
                    }
                    let nf = CyclicNormalForm::new(n, a, b).unwrap();
                    let canonical = cyclic_normal_form(&nf.element()).unwrap();
                    assert_eq!(
                        definable_cyclic(&nf).0,
                        definable_cyclic(&canonical).0,
                        "orbit invariance fails for ({}, {}, {})",
                        n,
                        a,
                        b
                    );
                }
            }
        }
    }

    #[test]
    fn rotation_real_model_is_a_rotation_block() {
        let nf = CyclicNormalForm::new(5, 1, 4).unwrap();
        let model = real_model_cyclic(&nf, &RealModelParams::standard()).unwrap();
        assert!(model.matrix.is_real());
        assert!(model.diagnostics.is_empty());
        assert_eq!(model.reduced_exponent, 1);
        // With alpha=1, beta=i the model is -2 times a rotation block:
        // entries (1,1) = (2,2) = -2cos(2pi/5) and (1,2) = -(2,1) = 2sin.
        assert_eq!(model.matrix.entry(1, 1), model.matrix.entry(2, 2));
        assert_eq!(
            model.matrix.entry(1, 2),
            &model.matrix.entry(2, 1).neg()
        );
        let m20 = fld(20);
        let w = CycloElement::zeta_pow(&m20, 4);
        let trace_term = w.try_add(&w.conj()).unwrap().neg();
        assert_eq!(model.matrix.entry(1, 1), &trace_term);
        assert_eq!(
            model.matrix.entry(0, 0),
            &CycloElement::from_int(&m20, -2)
        );
    }

    #[test]
    fn case_reduction_handles_all_clauses() {
        // 2a - b = 0: form (5, 1, 2).
        let model = real_model_cyclic(
            &CyclicNormalForm::new(5, 1, 2).unwrap(),
            &RealModelParams::standard(),
        )
        .unwrap();
        assert!(model.matrix.is_real());
        assert_eq!(model.reduced_exponent, 1);
        assert!(model.diagnostics.is_empty());

        // a - 2b = 0: form (7, 3, 5) since 3 = 2*5 mod 7.
        let model = real_model_cyclic(
            &CyclicNormalForm::new(7, 3, 5).unwrap(),
            &RealModelParams::standard(),
        )
        .unwrap();
        assert!(model.matrix.is_real());
        assert_eq!(model.reduced_exponent, 2);
        assert!(model.diagnostics.is_empty());
        let g = ProjElement::new(model.matrix.clone()).unwrap();
        assert_eq!(g.proj_order(7).unwrap(), 7);

        // n = 2.
        let model = real_model_cyclic(
            &CyclicNormalForm::new(2, 0, 1).unwrap(),
            &RealModelParams::standard(),
        )
        .unwrap();
        assert!(model.matrix.is_real());
    }

    #[test]
    fn real_model_respects_custom_parameters() {
        let f12 = fld(12);
        let alpha = CycloElement::parse(&f12, "z^2 + 1").unwrap();
        let beta = CycloElement::parse(&f12, "z^3 - 2").unwrap();
        let params = RealModelParams::new(&alpha, &beta).unwrap();
        let nf = CyclicNormalForm::new(3, 1, 2).unwrap();
        let model = real_model_cyclic(&nf, &params).unwrap();
        assert!(model.matrix.is_real());
        assert!(model.diagnostics.is_empty());
        let g = ProjElement::new(model.matrix).unwrap();
        assert_eq!(g.proj_order(3).unwrap(), 3);
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        let f = fld(4);
        let one = CycloElement::one(&f);
        assert_eq!(
            RealModelParams::new(&one, &one).unwrap_err(),
            Error::DegenerateParams
        );
        // alpha = beta = i is just as degenerate.
        let i = CycloElement::zeta_pow(&f, 1);
        assert_eq!(
            RealModelParams::new(&i, &i).unwrap_err(),
            Error::DegenerateParams
        );
    }

    #[test]
    fn non_definable_forms_refuse_models() {
        let nf = CyclicNormalForm::new(7, 1, 3).unwrap();
        assert!(matches!(
            real_model_cyclic(&nf, &RealModelParams::standard()),
            Err(Error::CriterionFailed(_))
        ));
        let nf = CyclicNormalForm::new(3, 0, 1).unwrap();
        assert!(matches!(
            real_model_cyclic(&nf, &RealModelParams::standard()),
            Err(Error::CriterionFailed(_))
        ));
    }

    #[test]
    fn dihedral_model_of_order_ten() {
        let model = real_model_dihedral(5, 1, &RealModelParams::standard()).unwrap();
        assert!(model.rotation.is_real());
        assert!(model.reflection.is_real());
        assert!(model.diagnostics.is_empty());
        // With alpha=1, beta=i the reflection is -2 * diag(1, 1, -1).
        let m20 = fld(20);
        let expect = Matrix3::diag(
            CycloElement::from_int(&m20, -2),
            CycloElement::from_int(&m20, -2),
            CycloElement::from_int(&m20, 2),
        )
        .unwrap();
        assert_eq!(model.reflection, expect);
        let r = ProjElement::new(model.rotation).unwrap();
        let s = ProjElement::new(model.reflection).unwrap();
        let group = FiniteSubgroup::closure(&[r, s], 30).unwrap();
        assert_eq!(group.order(), 10);
        let fp = group.fingerprint().unwrap();
        assert_eq!(fp.order_histogram[&2], 5);
        assert_eq!(fp.order_histogram[&5], 4);
    }

    #[test]
    fn dihedral_model_rejects_bad_parameters() {
        assert!(matches!(
            real_model_dihedral(6, 2, &RealModelParams::standard()),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            real_model_dihedral(1, 1, &RealModelParams::standard()),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn real_charpoly_lift_search() {
        // diag(z^3, z^4, z^2) rescales to diag(1, z, z^4), which already has
        // a real characteristic polynomial, so c = 1 is found first.
        let f5 = fld(5);
        let lift = Matrix3::diag(
            CycloElement::zeta_pow(&f5, 3),
            CycloElement::zeta_pow(&f5, 4),
            CycloElement::zeta_pow(&f5, 2),
        )
        .unwrap();
        let g = ProjElement::new(lift).unwrap();
        let c = exists_real_charpoly_lift(&g).unwrap().unwrap();
        assert!(c.is_one());

        // The form (4, 1, 2) needs a genuine rescaling: c = i works.
        let g = diag_unit(4, 1, 2);
        let c = exists_real_charpoly_lift(&g).unwrap().unwrap();
        assert!(!g.charpoly().is_real());
        let rescaled = g.embed(c.conductor()).unwrap().charpoly().scale_lift(&c);
        assert!(rescaled.unwrap().is_real());

        // Homologies of period >= 3 admit no real-charpoly lift.
        let g = diag_unit(3, 0, 1);
        assert!(exists_real_charpoly_lift(&g).unwrap().is_none());

        // Non-definable non-homologies admit none either.
        let g = diag_unit(7, 1, 3);
        assert!(exists_real_charpoly_lift(&g).unwrap().is_none());

        // Orders below 3 are outside the search contract.
        assert!(matches!(
            exists_real_charpoly_lift(&diag_unit(2, 0, 1)),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn real_charpoly_lift_matches_criterion() {
        for n in 3..=10u32 {
            for a in 1..n {
                for b in (a + 1)..n {
                    if gcd_u32(a, b) != 1 {
                        continue;
                    }
                    let nf = CyclicNormalForm::new(n, a, b).unwrap();
                    let witness = exists_real_charpoly_lift(&nf.element()).unwrap();
                    assert_eq!(
                        witness.is_some(),
                        definable_cyclic(&nf).0,
                        "lift existence disagrees with criterion at ({}, {}, {})",
                        n,
                        a,
                        b
                    );
                }
            }
        }
    }

    #[test]
    fn verdicts_for_elements() {
        let v = verdict_cyclic(&diag_unit(5, 1, 4)).unwrap();
        assert_eq!(v.moduli, TriState::Yes);
        assert_eq!(v.definable, TriState::Yes);
        assert!(!v.pseudo_real);
        match v.witness {
            Some(Witness::RealModelGenerators(ms)) => {
                assert_eq!(ms.len(), 1);
                assert!(ms[0].is_real());
            }
            other => panic!("expected a real-model witness, got {:?}", other),
        }

        let v = verdict_cyclic(&diag_unit(3, 0, 1)).unwrap();
        assert_eq!(v.definable, TriState::No);
        assert!(v.pseudo_real);
        assert!(matches!(
            v.obstruction,
            Some(Obstruction::HomologyPeriodGe3 { n: 3 })
        ));

        let v = verdict_cyclic(&diag_unit(7, 1, 3)).unwrap();
        assert_eq!(v.definable, TriState::No);
        assert!(v.pseudo_real);
        assert!(matches!(
            v.obstruction,
            Some(Obstruction::CriterionFailed { .. })
        ));
    }

    #[test]
    fn moduli_certificate_for_cyclic_groups() {
        for g in [
            diag_unit(5, 1, 4),
            diag_unit(7, 1, 3),
            diag_unit(3, 0, 1),
            diag_unit(12, 1, 7),
        ] {
            let (ok, _) = has_real_field_of_moduli_cyclic(&g).unwrap();
            assert!(ok);
        }
    }
}
