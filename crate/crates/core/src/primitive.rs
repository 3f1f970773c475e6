//! Catalog of the finite primitive subgroups of `PGL_3(C)`: the three
//! Hessian groups, the icosahedral group, the alternating group on six
//! letters, and the Klein quartic group `PSL(2,7)`.
//!
//! The Hessian groups and the icosahedral copy are built explicitly from
//! generator matrices and classified by computation. The remaining two
//! entries carry no generator matrices; their moduli facts come from the
//! uniqueness of their conjugacy classes, and their definability verdicts
//! from an abstract subgroup (`A6` contains `C3 x C3`) or from a stored
//! witness element (`PSL(2,7)` contains `diag(1, zeta_7, zeta_7^3)`).

use std::fmt;

use crate::cyclotomic::{lcm_u32, CycloElement, CycloField};
use crate::descent::{
    cyclic_normal_form, definable_cyclic, realify, DescentVerdict, Obstruction, RealModelParams,
    TriState, Witness,
};
use crate::finitegroup::{FiniteSubgroup, GroupFingerprint, DEFAULT_CLOSURE_CAP};
use crate::projlinear::{Matrix3, ProjElement};
use crate::{Error, Result};

/// Conductor of the field generated by the Hessian matrix entries.
pub const HESSIAN_CONDUCTOR: u32 = 3;
/// Conductor of the field generated by the icosahedral matrix entries.
pub const ICOSAHEDRAL_CONDUCTOR: u32 = 5;

/// Standard generators of the Hessian groups over `Q(zeta_3)`.
#[derive(Clone, Debug)]
pub struct HessianGenerators {
    /// `diag(1, z, z^2)` for a primitive cube root of unity `z`.
    pub s: ProjElement,
    /// The coordinate rotation `[Y:Z:X]`.
    pub t: ProjElement,
    /// The homology `diag(1, 1, z)` of period 3.
    pub u: ProjElement,
    /// The symmetric matrix `[[1,1,1],[1,z,z^2],[1,z^2,z]]` of projective
    /// order 4.
    pub v: ProjElement,
}

/// Builds the four standard Hessian generators.
pub fn hessian_generators() -> Result<HessianGenerators> {
    let field = CycloField::new(HESSIAN_CONDUCTOR);
    let one = CycloElement::one(&field);
    let z = CycloElement::zeta_pow(&field, 1);
    let z2 = CycloElement::zeta_pow(&field, 2);
    let s = ProjElement::new(Matrix3::diag(one.clone(), z.clone(), z2.clone())?)?;
    let t = ProjElement::new(Matrix3::from_int_rows(
        &field,
        [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
    ))?;
    let u = ProjElement::new(Matrix3::diag(one.clone(), one.clone(), z.clone())?)?;
    let v = ProjElement::new(Matrix3::new(
        &field,
        vec![
            one.clone(),
            one.clone(),
            one.clone(),
            one.clone(),
            z.clone(),
            z2.clone(),
            one,
            z2,
            z,
        ],
    )?)?;
    Ok(HessianGenerators { s, t, u, v })
}

/// Standard generators of an icosahedral subgroup over `Q(zeta_5)`.
///
/// `c` is the symmetric involution `[[1,2,2],[1,s1,s2],[1,s2,s1]]` with
/// `s1 = 2cos(4pi/5)` and `s2 = 2cos(2pi/5)`; together with the rotation
/// `a = diag(1, z^-1, z)` and the swap `b = [X:Z:Y]` it closes to a group
/// of order 60.
#[derive(Clone, Debug)]
pub struct IcosahedralGenerators {
    pub a: ProjElement,
    pub b: ProjElement,
    pub c: ProjElement,
}

/// Builds the three standard icosahedral generators.
pub fn icosahedral_generators() -> Result<IcosahedralGenerators> {
    let field = CycloField::new(ICOSAHEDRAL_CONDUCTOR);
    let one = CycloElement::one(&field);
    let two = CycloElement::from_int(&field, 2);
    let z = |k: i64| CycloElement::zeta_pow(&field, k);
    let a = ProjElement::new(Matrix3::diag(one.clone(), z(-1), z(1))?)?;
    let b = ProjElement::new(Matrix3::from_int_rows(
        &field,
        [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
    ))?;
    let s1 = z(2).try_add(&z(3))?;
    let s2 = z(1).try_add(&z(4))?;
    let c = ProjElement::new(Matrix3::new(
        &field,
        vec![
            one.clone(),
            two.clone(),
            two,
            one.clone(),
            s1.clone(),
            s2.clone(),
            one,
            s2,
            s1,
        ],
    )?)?;
    Ok(IcosahedralGenerators { a, b, c })
}

/// The element `diag(1, zeta_7, zeta_7^3)` contained in a representative
/// copy of `PSL(2,7)`.
pub fn psl27_witness() -> Result<ProjElement> {
    let field = CycloField::new(7);
    ProjElement::new(Matrix3::diag(
        CycloElement::one(&field),
        CycloElement::zeta_pow(&field, 1),
        CycloElement::zeta_pow(&field, 3),
    )?)
}

/// Names of the cataloged primitive subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimitiveName {
    Hess216,
    Hess72,
    Hess36,
    A5,
    A6,
    Psl27,
}

impl PrimitiveName {
    /// All catalog entries in their fixed order.
    pub const ALL: [PrimitiveName; 6] = [
        PrimitiveName::Hess216,
        PrimitiveName::Hess72,
        PrimitiveName::Hess36,
        PrimitiveName::A5,
        PrimitiveName::A6,
        PrimitiveName::Psl27,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PrimitiveName::Hess216 => "hess216",
            PrimitiveName::Hess72 => "hess72",
            PrimitiveName::Hess36 => "hess36",
            PrimitiveName::A5 => "a5",
            PrimitiveName::A6 => "a6",
            PrimitiveName::Psl27 => "psl27",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        PrimitiveName::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown catalog entry: {s}")))
    }

    pub fn expected_order(&self) -> usize {
        match self {
            PrimitiveName::Hess216 => 216,
            PrimitiveName::Hess72 => 72,
            PrimitiveName::Hess36 => 36,
            PrimitiveName::A5 => 60,
            PrimitiveName::A6 => 360,
            PrimitiveName::Psl27 => 168,
        }
    }
}

impl fmt::Display for PrimitiveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Closes the stored generators of a catalog group.
///
/// Only the Hessian groups and the icosahedral copy carry generators; the
/// other entries return `NoGenerators`.
pub fn build_group(name: PrimitiveName) -> Result<FiniteSubgroup> {
    match name {
        PrimitiveName::Hess216 => {
            let g = hessian_generators()?;
            FiniteSubgroup::closure(&[g.s, g.t, g.u, g.v], DEFAULT_CLOSURE_CAP)
        }
        PrimitiveName::Hess72 => {
            let g = hessian_generators()?;
            let uvu = g.u.mul(&g.v)?.mul(&g.u.inverse())?;
            FiniteSubgroup::closure(&[g.s, g.t, g.v, uvu], DEFAULT_CLOSURE_CAP)
        }
        PrimitiveName::Hess36 => {
            let g = hessian_generators()?;
            FiniteSubgroup::closure(&[g.s, g.t, g.v], DEFAULT_CLOSURE_CAP)
        }
        PrimitiveName::A5 => {
            let g = icosahedral_generators()?;
            FiniteSubgroup::closure(&[g.a, g.b, g.c], DEFAULT_CLOSURE_CAP)
        }
        PrimitiveName::A6 | PrimitiveName::Psl27 => {
            Err(Error::NoGenerators(name.as_str().into()))
        }
    }
}

/// How a real field of moduli was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuliEvidence {
    /// The group equals its entrywise Galois image.
    SigmaStable,
    /// This element of the ambient group conjugates the group onto its
    /// Galois image.
    Conjugator(Matrix3),
    /// The group is unique up to conjugacy in `PGL_3(C)`, so it is
    /// conjugate to its Galois image; recorded without a computation.
    Literature,
}

/// Certifies a real field of moduli for a computed group.
///
/// Sigma-stability is checked first. Otherwise, when an ambient group is
/// supplied, it is searched for an element conjugating the group onto its
/// Galois image. `None` means no certificate was found, not a negative.
pub fn moduli_check(
    group: &FiniteSubgroup,
    ambient: Option<&FiniteSubgroup>,
) -> Result<Option<ModuliEvidence>> {
    if group.is_sigma_stable() {
        return Ok(Some(ModuliEvidence::SigmaStable));
    }
    if let Some(amb) = ambient {
        let image = group.sigma_image();
        if let Some(psi) = FiniteSubgroup::subgroup_conjugacy_search(group, &image, amb)? {
            return Ok(Some(ModuliEvidence::Conjugator(psi.canon().clone())));
        }
    }
    Ok(None)
}

/// Conjugates every generator by the parameter matrix and divides by `i`.
///
/// Returns the images when all of them are real; their closure is then
/// required to have the same order as the group. Returns `None` as soon
/// as one image fails to be real.
pub fn try_real_model(
    group: &FiniteSubgroup,
    params: &RealModelParams,
) -> Result<Option<Vec<Matrix3>>> {
    let mut images = Vec::new();
    for g in group.generators() {
        let r = realify(g.canon(), params)?;
        if !r.is_real() {
            return Ok(None);
        }
        images.push(r);
    }
    let proj: Vec<ProjElement> = images
        .iter()
        .cloned()
        .map(ProjElement::new)
        .collect::<Result<_>>()?;
    let closed = FiniteSubgroup::closure(&proj, group.order() + 1)?;
    if closed.order() != group.order() {
        return Err(Error::Inconsistency(format!(
            "real images close to order {} but the group has order {}",
            closed.order(),
            group.order()
        )));
    }
    Ok(Some(images))
}

/// Decides real definability for a group whose field of moduli is already
/// settled, applying rules in a fixed order:
///
/// 1. a cyclic subgroup that is not definable over `R` obstructs the whole
///    group, because a real model for the group restricts to one for every
///    subgroup via the same conjugator;
/// 2. a subgroup isomorphic to `C3 x C3` obstructs it, because `C3 x C3`
///    embeds into `PGL_3(K)` only when `K` contains a primitive cube root
///    of unity, and `zeta_3` is not real;
/// 3. otherwise a model is attempted constructively by conjugating the
///    generators with the parameter matrix built from `alpha = 1`,
///    `beta = i`.
///
/// When no rule applies the verdict is `Unknown`.
pub fn pseudo_real_check(group: &FiniteSubgroup, moduli: TriState) -> Result<DescentVerdict> {
    let pseudo = moduli == TriState::Yes;
    for g in group.elements().iter().skip(1) {
        let nf = cyclic_normal_form(g)?;
        let (ok, clause) = definable_cyclic(&nf);
        if !ok {
            return Ok(DescentVerdict {
                moduli,
                definable: TriState::No,
                pseudo_real: pseudo,
                reason: format!(
                    "contains a cyclic subgroup of type (n,a,b)=({},{},{}) that is not \
                     definable over R: {clause}",
                    nf.n, nf.a, nf.b
                ),
                witness: None,
                obstruction: Some(Obstruction::CyclicSubgroup {
                    form: nf,
                    element: g.canon().clone(),
                }),
            });
        }
    }
    if let Some((x, y)) = group.find_subgroup_c3xc3()? {
        return Ok(DescentVerdict {
            moduli,
            definable: TriState::No,
            pseudo_real: pseudo,
            reason: "contains C3 x C3, which embeds into PGL_3(K) only when K contains a \
                     primitive cube root of unity"
                .into(),
            witness: None,
            obstruction: Some(Obstruction::C3xC3Rule {
                witness: Some(Box::new((x.canon().clone(), y.canon().clone()))),
            }),
        });
    }
    match try_real_model(group, &RealModelParams::standard())? {
        Some(images) => Ok(DescentVerdict {
            moduli,
            definable: TriState::Yes,
            pseudo_real: false,
            reason: "conjugating the generators by the standard parameter matrix yields a \
                     real model"
                .into(),
            witness: Some(Witness::RealModelGenerators(images)),
            obstruction: None,
        }),
        None => Ok(DescentVerdict {
            moduli,
            definable: TriState::Unknown,
            pseudo_real: false,
            reason: "no obstruction found, and the standard conjugation does not produce a \
                     real model"
                .into(),
            witness: None,
            obstruction: None,
        }),
    }
}

/// A real model of the icosahedral group.
#[derive(Clone, Debug)]
pub struct A5RealModel {
    /// Real images of the three generators under the conjugation.
    pub generators: Vec<Matrix3>,
    /// Order of the closure of the images; always 60.
    pub order: usize,
    /// Entries of the conjugated symmetric generator that differ from the
    /// reference table of `reference_conjugated_c`.
    pub diagnostics: Vec<String>,
}

/// Closed-form reference table for the conjugated symmetric generator.
///
/// The table expresses `adj(phi) * C * phi / i` through real and imaginary
/// parts of the parameters, for the normalization of `C` whose first row
/// is `(2, 2, 2)` and whose trigonometric entries are `cos(4pi/5)` and
/// `cos(2pi/5)`:
///
/// ```text
/// [ 4Im(ab~)   8Im(ab~)Re(a)                     8Im(ab~)Re(b)                   ]
/// [ 2Im(b~)    2(cos(4pi/5)Im(ab~)-cos(2pi/5)Im(ab))   -2cos(2pi/5)Im(b^2)       ]
/// [ 2Im(a)     2cos(2pi/5)Im(a^2)                2(cos(4pi/5)Im(ab~)+cos(2pi/5)Im(ab)) ]
/// ```
///
/// The catalog generator instead has first row `(1, 2, 2)` and doubled
/// trigonometric entries `2cos(4pi/5)`, `2cos(2pi/5)`, which is the
/// normalization that actually closes to a group of order 60. Its
/// conjugate therefore differs from this table in the five entries
/// `(0,0)`, `(1,1)`, `(1,2)`, `(2,1)`, `(2,2)`, each by a factor of two,
/// except where the entry vanishes for special parameters (for example
/// `Im(beta^2) = 0` when `beta = i` hides the `(1,2)` discrepancy);
/// `real_model_a5` reports the mismatches as diagnostics.
pub fn reference_conjugated_c(params: &RealModelParams) -> Result<Matrix3> {
    let m = lcm_u32(
        lcm_u32(4, ICOSAHEDRAL_CONDUCTOR),
        params.conductor(),
    );
    let field = CycloField::new(m);
    let alpha = params.alpha().embed(m)?;
    let beta = params.beta().embed(m)?;
    let im = |x: &CycloElement| -> Result<CycloElement> { x.re_im().1.embed(m) };
    let re = |x: &CycloElement| -> Result<CycloElement> { x.re_im().0.embed(m) };
    let int = |v: i64| CycloElement::from_int(&field, v);
    let zeta5 = |k: i64| CycloElement::zeta_pow(&field, k * (m as i64) / 5);
    let half = crate::cyclotomic::Rat::new(1.into(), 2.into());
    let cos4 = zeta5(2).try_add(&zeta5(3))?.scale(&half);
    let cos2 = zeta5(1).try_add(&zeta5(4))?.scale(&half);
    let im_ab_bar = im(&alpha.try_mul(&beta.conj())?)?;
    let im_ab = im(&alpha.try_mul(&beta)?)?;
    let im_a2 = im(&alpha.try_mul(&alpha)?)?;
    let im_b2 = im(&beta.try_mul(&beta)?)?;
    let entries = vec![
        int(4).try_mul(&im_ab_bar)?,
        int(8).try_mul(&im_ab_bar)?.try_mul(&re(&alpha)?)?,
        int(8).try_mul(&im_ab_bar)?.try_mul(&re(&beta)?)?,
        int(2).try_mul(&im(&beta.conj())?)?,
        int(2).try_mul(&cos4.try_mul(&im_ab_bar)?.try_sub(&cos2.try_mul(&im_ab)?)?)?,
        int(-2).try_mul(&cos2)?.try_mul(&im_b2)?,
        int(2).try_mul(&im(&alpha)?)?,
        int(2).try_mul(&cos2)?.try_mul(&im_a2)?,
        int(2).try_mul(&cos4.try_mul(&im_ab_bar)?.try_add(&cos2.try_mul(&im_ab)?)?)?,
    ];
    Matrix3::new(&field, entries)
}

/// Conjugates the icosahedral generators into an explicit real model.
///
/// Every image `adj(phi) * g * phi / i` is verified to be real, and the
/// three images must close to a group of order 60. The conjugated
/// symmetric generator is additionally compared entry by entry against
/// `reference_conjugated_c`; mismatches go into the diagnostics rather
/// than failing, since the model itself is verified directly.
pub fn real_model_a5(params: &RealModelParams) -> Result<A5RealModel> {
    let gens = icosahedral_generators()?;
    let mut images = Vec::new();
    for g in [&gens.a, &gens.b, &gens.c] {
        let r = realify(g.canon(), params)?;
        if !r.is_real() {
            return Err(Error::Inconsistency(
                "conjugated icosahedral generator is not real".into(),
            ));
        }
        images.push(r);
    }
    let proj: Vec<ProjElement> = images
        .iter()
        .cloned()
        .map(ProjElement::new)
        .collect::<Result<_>>()?;
    let closed = FiniteSubgroup::closure(&proj, 61)?;
    if closed.order() != 60 {
        return Err(Error::Inconsistency(format!(
            "real icosahedral images close to order {}, expected 60",
            closed.order()
        )));
    }
    let reference = reference_conjugated_c(params)?;
    let computed = images[2].embed(reference.conductor())?;
    let mut diagnostics = Vec::new();
    for row in 0..3 {
        for col in 0..3 {
            if computed.entry(row, col) != reference.entry(row, col) {
                diagnostics.push(format!(
                    "entry ({row},{col}): computed {}, reference {}",
                    computed.entry(row, col),
                    reference.entry(row, col)
                ));
            }
        }
    }
    Ok(A5RealModel {
        generators: images,
        order: closed.order(),
        diagnostics,
    })
}

/// How a catalog verdict was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationMode {
    /// Built from generators and classified by computation.
    Computed,
    /// Deduced from an abstract subgroup fact without matrices.
    RuleBased,
    /// Recorded from the classification literature, with any stored
    /// witness element checked computationally.
    Literature,
}

impl VerificationMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerificationMode::Computed => "computed",
            VerificationMode::RuleBased => "rule-based",
            VerificationMode::Literature => "literature",
        }
    }
}

/// One classified primitive subgroup.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: PrimitiveName,
    pub expected_order: usize,
    /// Canonical lifts of the stored generators, when the group is built
    /// explicitly.
    pub generators: Option<Vec<Matrix3>>,
    /// A stored element of the group certifying the obstruction, when the
    /// entry carries no generators.
    pub witness_element: Option<Matrix3>,
    /// Fingerprint of the computed group, when built.
    pub fingerprint: Option<GroupFingerprint>,
    pub moduli_evidence: ModuliEvidence,
    pub verdict: DescentVerdict,
    pub verification_mode: VerificationMode,
}

fn computed_entry(
    name: PrimitiveName,
    group: &FiniteSubgroup,
    ambient: Option<&FiniteSubgroup>,
) -> Result<CatalogEntry> {
    let evidence = moduli_check(group, ambient)?.ok_or_else(|| {
        Error::Inconsistency(format!("no moduli certificate found for {name}"))
    })?;
    let fingerprint = group.fingerprint()?;
    if fingerprint.order != name.expected_order() {
        return Err(Error::Inconsistency(format!(
            "{name} closed to order {}, expected {}",
            fingerprint.order,
            name.expected_order()
        )));
    }
    let verdict = pseudo_real_check(group, TriState::Yes)?;
    Ok(CatalogEntry {
        name,
        expected_order: name.expected_order(),
        generators: Some(
            group
                .generators()
                .iter()
                .map(|g| g.canon().clone())
                .collect(),
        ),
        witness_element: None,
        fingerprint: Some(fingerprint),
        moduli_evidence: evidence,
        verdict,
        verification_mode: VerificationMode::Computed,
    })
}

fn a6_entry() -> CatalogEntry {
    CatalogEntry {
        name: PrimitiveName::A6,
        expected_order: 360,
        generators: None,
        witness_element: None,
        fingerprint: None,
        moduli_evidence: ModuliEvidence::Literature,
        verdict: DescentVerdict {
            moduli: TriState::Yes,
            definable: TriState::No,
            pseudo_real: true,
            reason: "two disjoint 3-cycles generate a C3 x C3 subgroup, which embeds into \
                     PGL_3(K) only when K contains a primitive cube root of unity"
                .into(),
            witness: None,
            obstruction: Some(Obstruction::C3xC3Rule { witness: None }),
        },
        verification_mode: VerificationMode::RuleBased,
    }
}

fn psl27_entry() -> Result<CatalogEntry> {
    let witness = psl27_witness()?;
    let nf = cyclic_normal_form(&witness)?;
    let (ok, clause) = definable_cyclic(&nf);
    if ok {
        return Err(Error::Inconsistency(
            "the stored PSL(2,7) element unexpectedly passes the cyclic criterion".into(),
        ));
    }
    Ok(CatalogEntry {
        name: PrimitiveName::Psl27,
        expected_order: 168,
        generators: None,
        witness_element: Some(witness.canon().clone()),
        fingerprint: None,
        moduli_evidence: ModuliEvidence::Literature,
        verdict: DescentVerdict {
            moduli: TriState::Yes,
            definable: TriState::No,
            pseudo_real: true,
            reason: format!(
                "a representative copy contains diag(1, zeta_7, zeta_7^3) of type \
                 (n,a,b)=({},{},{}), which is not definable over R ({clause}); a real \
                 model of the group would restrict to one for this cyclic subgroup",
                nf.n, nf.a, nf.b
            ),
            witness: None,
            obstruction: Some(Obstruction::CyclicSubgroup {
                form: nf,
                element: witness.canon().clone(),
            }),
        },
        verification_mode: VerificationMode::Literature,
    })
}

/// Builds and classifies the full catalog, in the order of
/// `PrimitiveName::ALL`.
pub fn catalog() -> Result<Vec<CatalogEntry>> {
    let h216 = build_group(PrimitiveName::Hess216)?;
    let h72 = build_group(PrimitiveName::Hess72)?;
    let h36 = build_group(PrimitiveName::Hess36)?;
    let a5 = build_group(PrimitiveName::A5)?;
    Ok(vec![
        computed_entry(PrimitiveName::Hess216, &h216, None)?,
        computed_entry(PrimitiveName::Hess72, &h72, Some(&h216))?,
        computed_entry(PrimitiveName::Hess36, &h36, Some(&h216))?,
        computed_entry(PrimitiveName::A5, &a5, None)?,
        a6_entry(),
        psl27_entry()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn histogram(group: &FiniteSubgroup) -> BTreeMap<u32, usize> {
        group.fingerprint().unwrap().order_histogram
    }

    #[test]
    fn hessian_groups_have_the_classical_orders() {
        let h216 = build_group(PrimitiveName::Hess216).unwrap();
        let h72 = build_group(PrimitiveName::Hess72).unwrap();
        let h36 = build_group(PrimitiveName::Hess36).unwrap();
        assert_eq!(h216.order(), 216);
        assert_eq!(h72.order(), 72);
        assert_eq!(h36.order(), 36);
        assert_eq!(
            histogram(&h216),
            BTreeMap::from([(1, 1), (2, 9), (3, 80), (4, 54), (6, 72)])
        );
        assert_eq!(
            histogram(&h72),
            BTreeMap::from([(1, 1), (2, 9), (3, 8), (4, 54)])
        );
        assert_eq!(
            histogram(&h36),
            BTreeMap::from([(1, 1), (2, 9), (3, 8), (4, 18)])
        );
        assert!(h36.is_subgroup_of(&h72));
        assert!(h72.is_subgroup_of(&h216));
    }

    #[test]
    fn hessian_groups_are_sigma_stable() {
        for name in [
            PrimitiveName::Hess216,
            PrimitiveName::Hess72,
            PrimitiveName::Hess36,
        ] {
            let group = build_group(name).unwrap();
            assert!(group.is_sigma_stable(), "{name} is not sigma-stable");
        }
    }

    #[test]
    fn sigma_conjugator_for_hess72_is_found_in_hess216() {
        let h216 = build_group(PrimitiveName::Hess216).unwrap();
        let h72 = build_group(PrimitiveName::Hess72).unwrap();
        let image = h72.sigma_image();
        let psi = FiniteSubgroup::subgroup_conjugacy_search(&h72, &image, &h216)
            .unwrap()
            .expect("a conjugator must exist inside Hess216");
        let conjugated = h72.conjugate_by(&psi).unwrap();
        for g in conjugated.elements() {
            assert!(image.contains(g));
        }
        assert!(psi.is_identity());
    }

    #[test]
    fn c3xc3_is_found_in_hessians_and_not_in_a5() {
        for name in [
            PrimitiveName::Hess216,
            PrimitiveName::Hess72,
            PrimitiveName::Hess36,
        ] {
            let group = build_group(name).unwrap();
            let (x, y) = group
                .find_subgroup_c3xc3()
                .unwrap()
                .unwrap_or_else(|| panic!("no C3 x C3 found in {name}"));
            assert_eq!(x.proj_order(3).unwrap(), 3);
            assert_eq!(y.proj_order(3).unwrap(), 3);
        }
        let a5 = build_group(PrimitiveName::A5).unwrap();
        assert!(a5.find_subgroup_c3xc3().unwrap().is_none());
    }

    #[test]
    fn icosahedral_group_closes_to_order_60() {
        let gens = icosahedral_generators().unwrap();
        assert_eq!(gens.a.proj_order(5).unwrap(), 5);
        assert_eq!(gens.b.proj_order(2).unwrap(), 2);
        assert_eq!(gens.c.proj_order(2).unwrap(), 2);
        let a5 = build_group(PrimitiveName::A5).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(
            histogram(&a5),
            BTreeMap::from([(1, 1), (2, 15), (3, 20), (5, 24)])
        );
        assert!(a5.is_sigma_stable());
    }

    #[test]
    fn icosahedral_real_model_closes_to_order_60() {
        let model = real_model_a5(&RealModelParams::standard()).unwrap();
        assert_eq!(model.order, 60);
        for image in &model.generators {
            assert!(image.is_real());
        }
        assert_eq!(model.diagnostics.len(), 3);
        for coords in ["(0,0)", "(1,1)", "(2,2)"] {
            assert!(
                model.diagnostics.iter().any(|d| d.contains(coords)),
                "no diagnostic for entry {coords}"
            );
        }
    }

    #[test]
    fn reference_table_differs_in_five_entries_for_generic_params() {
        let field = CycloField::new(8);
        let params = RealModelParams::new(
            &CycloElement::zeta_pow(&field, 1),
            &CycloElement::zeta_pow(&field, 3),
        )
        .unwrap();
        let model = real_model_a5(&params).unwrap();
        assert_eq!(model.order, 60);
        assert_eq!(model.diagnostics.len(), 5);
        for coords in ["(0,0)", "(1,1)", "(1,2)", "(2,1)", "(2,2)"] {
            assert!(
                model.diagnostics.iter().any(|d| d.contains(coords)),
                "no diagnostic for entry {coords}"
            );
        }
    }

    #[test]
    fn icosahedral_real_model_accepts_custom_params() {
        let field = CycloField::new(12);
        let params = RealModelParams::new(
            &CycloElement::one(&field),
            &CycloElement::zeta_pow(&field, 2),
        )
        .unwrap();
        let model = real_model_a5(&params).unwrap();
        assert_eq!(model.order, 60);
        for image in &model.generators {
            assert!(image.is_real());
        }
    }

    #[test]
    fn hessian_verdicts_are_pseudo_real() {
        let h216 = build_group(PrimitiveName::Hess216).unwrap();
        let verdict = pseudo_real_check(&h216, TriState::Yes).unwrap();
        assert_eq!(verdict.definable, TriState::No);
        assert!(verdict.pseudo_real);
        match verdict.obstruction {
            Some(Obstruction::CyclicSubgroup { form, .. }) => {
                assert!(!definable_cyclic(&form).0);
            }
            other => panic!("expected a cyclic obstruction for hess216, got {other:?}"),
        }
        for name in [PrimitiveName::Hess72, PrimitiveName::Hess36] {
            let group = build_group(name).unwrap();
            let verdict = pseudo_real_check(&group, TriState::Yes).unwrap();
            assert_eq!(verdict.definable, TriState::No, "{name}");
            assert!(verdict.pseudo_real, "{name}");
            match verdict.obstruction {
                Some(Obstruction::C3xC3Rule { witness: Some(_) }) => {}
                other => panic!("expected a C3 x C3 obstruction for {name}, got {other:?}"),
            }
        }
    }

    #[test]
    fn icosahedral_verdict_is_definable() {
        let a5 = build_group(PrimitiveName::A5).unwrap();
        let verdict = pseudo_real_check(&a5, TriState::Yes).unwrap();
        assert_eq!(verdict.definable, TriState::Yes);
        assert!(!verdict.pseudo_real);
        match verdict.witness {
            Some(Witness::RealModelGenerators(images)) => {
                assert_eq!(images.len(), 3);
                assert!(images.iter().all(|m| m.is_real()));
            }
            other => panic!("expected real model generators, got {other:?}"),
        }
    }

    #[test]
    fn psl27_witness_fails_the_cyclic_criterion() {
        let witness = psl27_witness().unwrap();
        let verdict = crate::descent::verdict_cyclic(&witness).unwrap();
        assert_eq!(verdict.moduli, TriState::Yes);
        assert_eq!(verdict.definable, TriState::No);
        assert!(verdict.pseudo_real);
        let nf = cyclic_normal_form(&witness).unwrap();
        assert_eq!((nf.n, nf.a, nf.b), (7, 1, 3));
    }

    #[test]
    fn catalog_matches_expected_verdicts() {
        let entries = catalog().unwrap();
        assert_eq!(entries.len(), 6);
        for (entry, name) in entries.iter().zip(PrimitiveName::ALL) {
            assert_eq!(entry.name, name);
            assert_eq!(entry.expected_order, name.expected_order());
            let expect_definable = name == PrimitiveName::A5;
            assert_eq!(
                entry.verdict.definable == TriState::Yes,
                expect_definable,
                "{name}"
            );
            assert_eq!(entry.verdict.moduli, TriState::Yes, "{name}");
            assert_eq!(entry.verdict.pseudo_real, !expect_definable, "{name}");
        }
        assert_eq!(
            entries
                .iter()
                .map(|e| e.verification_mode)
                .collect::<Vec<_>>(),
            vec![
                VerificationMode::Computed,
                VerificationMode::Computed,
                VerificationMode::Computed,
                VerificationMode::Computed,
                VerificationMode::RuleBased,
                VerificationMode::Literature,
            ]
        );
        for entry in &entries[..4] {
            assert_eq!(entry.moduli_evidence, ModuliEvidence::SigmaStable);
            assert!(entry.generators.is_some());
            assert_eq!(
                entry.fingerprint.as_ref().unwrap().order,
                entry.expected_order
            );
        }
        match &entries[4].verdict.obstruction {
            Some(Obstruction::C3xC3Rule { witness: None }) => {}
            other => panic!("expected an abstract C3 x C3 obstruction for a6, got {other:?}"),
        }
        match &entries[5].verdict.obstruction {
            Some(Obstruction::CyclicSubgroup { form, .. }) => {
                assert_eq!((form.n, form.a, form.b), (7, 1, 3));
            }
            other => panic!("expected a cyclic obstruction for psl27, got {other:?}"),
        }
        assert!(entries[5].witness_element.is_some());
    }

    #[test]
    fn entries_without_generators_cannot_be_built() {
        for name in [PrimitiveName::A6, PrimitiveName::Psl27] {
            assert!(matches!(
                build_group(name),
                Err(Error::NoGenerators(_))
            ));
        }
    }

    #[test]
    fn primitive_names_roundtrip_through_strings() {
        for name in PrimitiveName::ALL {
            assert_eq!(PrimitiveName::parse(name.as_str()).unwrap(), name);
        }
        assert!(PrimitiveName::parse("hess128").is_err());
    }
}
