//! JSON wire formats.
//!
//! Field elements travel as `{"N": conductor, "coeffs": ["p/q", ...]}`
//! with one rational string per power-basis coefficient. Matrices are
//! `{"field_N": N, "rows": [[elem; 3]; 3]}`; projective elements use the
//! same shape through their canonical lift. Groups serialize their
//! generators and order, and are re-closed on deserialization. Verdicts,
//! witnesses, obstructions and catalog entries use lowercase tagged
//! objects.

use std::str::FromStr;
use std::sync::Arc;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::curves::{
    CandidateReport, FiberReport, HomogeneousPolynomial, ModuliObstructionReport,
    QuinticFamilyMember, SmoothnessCertificate,
};
use crate::cyclotomic::{CycloElement, CycloField, Rat};
use crate::descent::{
    CyclicNormalForm, CyclicRealModel, DescentVerdict, DihedralRealModel, Obstruction, TriState,
    Witness,
};
use crate::finitegroup::FiniteSubgroup;
use crate::primitive::{A5RealModel, CatalogEntry, ModuliEvidence, PrimitiveName, VerificationMode};
use crate::projlinear::{Matrix3, ProjElement};

fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

fn rat_from_string<E: DeError>(s: &str) -> Result<Rat, E> {
    Rat::from_str(s.trim()).map_err(|e| E::custom(format!("bad rational {s:?}: {e}")))
}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    #[serde(rename = "N")]
    n: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CycloWire {
            n: self.conductor(),
            coeffs: self.coeffs().iter().map(rat_to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = CycloWire::deserialize(deserializer)?;
        if wire.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let field = CycloField::new(wire.n);
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| rat_from_string(s))
            .collect::<Result<Vec<_>, _>>()?;
        CycloElement::from_coeffs(&field, coeffs).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    #[serde(rename = "field_N")]
    field_n: u32,
    rows: Vec<Vec<CycloElement>>,
}

impl Serialize for Matrix3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows = (0..3)
            .map(|r| (0..3).map(|c| self.entry(r, c).clone()).collect())
            .collect();
        MatrixWire {
            field_n: self.conductor(),
            rows,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        if wire.field_n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        if wire.rows.len() != 3 || wire.rows.iter().any(|r| r.len() != 3) {
            return Err(D::Error::custom("matrix must have 3 rows of 3 entries"));
        }
        let field = CycloField::new(wire.field_n);
        let mut entries = Vec::with_capacity(9);
        for row in wire.rows {
            for elem in row {
                entries.push(elem.embed(wire.field_n).map_err(D::Error::custom)?);
            }
        }
        Matrix3::new(&field, entries).map_err(D::Error::custom)
    }
}

impl Serialize for ProjElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.canon().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProjElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let lift = Matrix3::deserialize(deserializer)?;
        ProjElement::new(lift).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupWire {
    generators: Vec<ProjElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<ProjElement>>,
}

impl Serialize for FiniteSubgroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupWire {
            generators: self.generators().to_vec(),
            order: Some(self.order()),
            elements: None,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteSubgroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = GroupWire::deserialize(deserializer)?;
        let group =
            FiniteSubgroup::closure(&wire.generators, crate::finitegroup::DEFAULT_CLOSURE_CAP)
                .map_err(D::Error::custom)?;
        if let Some(order) = wire.order {
            if group.order() != order {
                return Err(D::Error::custom(format!(
                    "generators close to order {}, not the recorded {}",
                    group.order(),
                    order
                )));
            }
        }
        Ok(group)
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    exps: [u32; 3],
    coeff: CycloElement,
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    #[serde(rename = "field_N")]
    field_n: u32,
    degree: u32,
    terms: Vec<TermWire>,
}

impl Serialize for HomogeneousPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyWire {
            field_n: self.conductor(),
            degree: self.degree(),
            terms: self
                .terms()
                .map(|(&(i, j, k), coeff)| TermWire {
                    exps: [i, j, k],
                    coeff: coeff.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HomogeneousPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = PolyWire::deserialize(deserializer)?;
        if wire.field_n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let field = CycloField::new(wire.field_n);
        let terms = wire
            .terms
            .into_iter()
            .map(|t| {
                t.coeff
                    .embed(wire.field_n)
                    .map(|coeff| ((t.exps[0], t.exps[1], t.exps[2]), coeff))
            })
            .collect::<crate::Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        HomogeneousPolynomial::from_terms(&field, wire.degree, terms).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct FormWire {
    n: u32,
    a: u32,
    b: u32,
}

impl Serialize for CyclicNormalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FormWire {
            n: self.n,
            a: self.a,
            b: self.b,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CyclicNormalForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = FormWire::deserialize(deserializer)?;
        CyclicNormalForm::new(wire.n, wire.a, wire.b).map_err(D::Error::custom)
    }
}

impl Serialize for TriState {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Unknown => "unknown",
        })
    }
}

impl<'de> Deserialize<'de> for TriState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match String::deserialize(deserializer)?.as_str() {
            "yes" => Ok(TriState::Yes),
            "no" => Ok(TriState::No),
            "unknown" => Ok(TriState::Unknown),
            other => Err(D::Error::custom(format!("unknown tristate {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum WitnessWire {
    #[serde(rename = "real-model-generators")]
    RealModelGenerators { generators: Vec<Matrix3> },
    #[serde(rename = "moduli-conjugator")]
    ModuliConjugator { conjugator: Matrix3 },
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Witness::RealModelGenerators(generators) => WitnessWire::RealModelGenerators {
                generators: generators.clone(),
            },
            Witness::ModuliConjugator(conjugator) => WitnessWire::ModuliConjugator {
                conjugator: conjugator.clone(),
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Witness {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(match WitnessWire::deserialize(deserializer)? {
            WitnessWire::RealModelGenerators { generators } => {
                Witness::RealModelGenerators(generators)
            }
            WitnessWire::ModuliConjugator { conjugator } => Witness::ModuliConjugator(conjugator),
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum ObstructionWire {
    #[serde(rename = "homology-period>=3")]
    Homology { n: u32 },
    #[serde(rename = "cyclic-subgroup-obstruction")]
    CyclicSubgroup {
        form: CyclicNormalForm,
        element: Matrix3,
    },
    #[serde(rename = "C3xC3-rule")]
    C3xC3 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<(Matrix3, Matrix3)>,
    },
    #[serde(rename = "criterion-failed")]
    CriterionFailed { form: CyclicNormalForm },
}

impl Serialize for Obstruction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Obstruction::HomologyPeriodGe3 { n } => ObstructionWire::Homology { n: *n },
            Obstruction::CyclicSubgroup { form, element } => ObstructionWire::CyclicSubgroup {
                form: *form,
                element: element.clone(),
            },
            Obstruction::C3xC3Rule { witness } => ObstructionWire::C3xC3 {
                witness: witness.as_deref().cloned(),
            },
            Obstruction::CriterionFailed { form } => {
                ObstructionWire::CriterionFailed { form: *form }
            }
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Obstruction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(match ObstructionWire::deserialize(deserializer)? {
            ObstructionWire::Homology { n } => Obstruction::HomologyPeriodGe3 { n },
            ObstructionWire::CyclicSubgroup { form, element } => {
                Obstruction::CyclicSubgroup { form, element }
            }
            ObstructionWire::C3xC3 { witness } => Obstruction::C3xC3Rule {
                witness: witness.map(Box::new),
            },
            ObstructionWire::CriterionFailed { form } => Obstruction::CriterionFailed { form },
        })
    }
}

#[derive(Serialize, Deserialize)]
struct VerdictWire {
    moduli: TriState,
    definable: TriState,
    pseudo_real: bool,
    reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    obstruction: Option<Obstruction>,
}

impl Serialize for DescentVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        VerdictWire {
            moduli: self.moduli,
            definable: self.definable,
            pseudo_real: self.pseudo_real,
            reason: self.reason.clone(),
            witness: self.witness.clone(),
            obstruction: self.obstruction.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DescentVerdict {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = VerdictWire::deserialize(deserializer)?;
        Ok(DescentVerdict {
            moduli: wire.moduli,
            definable: wire.definable,
            pseudo_real: wire.pseudo_real,
            reason: wire.reason,
            witness: wire.witness,
            obstruction: wire.obstruction,
        })
    }
}

impl Serialize for PrimitiveName {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for PrimitiveName {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        PrimitiveName::parse(&String::deserialize(deserializer)?).map_err(D::Error::custom)
    }
}

impl Serialize for VerificationMode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for VerificationMode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match String::deserialize(deserializer)?.as_str() {
            "computed" => Ok(VerificationMode::Computed),
            "rule-based" => Ok(VerificationMode::RuleBased),
            "literature" => Ok(VerificationMode::Literature),
            other => Err(D::Error::custom(format!(
                "unknown verification mode {other:?}"
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum EvidenceWire {
    #[serde(rename = "sigma-stable")]
    SigmaStable,
    #[serde(rename = "conjugator")]
    Conjugator { psi: Matrix3 },
    #[serde(rename = "literature")]
    Literature,
}

impl Serialize for ModuliEvidence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ModuliEvidence::SigmaStable => EvidenceWire::SigmaStable,
            ModuliEvidence::Conjugator(psi) => EvidenceWire::Conjugator { psi: psi.clone() },
            ModuliEvidence::Literature => EvidenceWire::Literature,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ModuliEvidence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(match EvidenceWire::deserialize(deserializer)? {
            EvidenceWire::SigmaStable => ModuliEvidence::SigmaStable,
            EvidenceWire::Conjugator { psi } => ModuliEvidence::Conjugator(psi),
            EvidenceWire::Literature => ModuliEvidence::Literature,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogWire {
    name: PrimitiveName,
    expected_order: usize,
    verification_mode: VerificationMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Matrix3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness_element: Option<Matrix3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fingerprint: Option<crate::finitegroup::GroupFingerprint>,
    moduli_evidence: ModuliEvidence,
    verdict: DescentVerdict,
}

impl Serialize for CatalogEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CatalogWire {
            name: self.name,
            expected_order: self.expected_order,
            verification_mode: self.verification_mode,
            generators: self.generators.clone(),
            witness_element: self.witness_element.clone(),
            fingerprint: self.fingerprint.clone(),
            moduli_evidence: self.moduli_evidence.clone(),
            verdict: self.verdict.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CatalogEntry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = CatalogWire::deserialize(deserializer)?;
        Ok(CatalogEntry {
            name: wire.name,
            expected_order: wire.expected_order,
            generators: wire.generators,
            witness_element: wire.witness_element,
            fingerprint: wire.fingerprint,
            moduli_evidence: wire.moduli_evidence,
            verdict: wire.verdict,
            verification_mode: wire.verification_mode,
        })
    }
}

impl Serialize for FiberReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            fiber_exponent: u32,
            intermediate_gcd_degree: Option<usize>,
            final_gcd_degree: Option<usize>,
        }
        Wire {
            fiber_exponent: self.fiber_exponent,
            intermediate_gcd_degree: self.intermediate_gcd_degree,
            final_gcd_degree: self.final_gcd_degree,
        }
        .serialize(serializer)
    }
}

impl Serialize for SmoothnessCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            smooth: bool,
            boundary_partials_are_pure_powers: bool,
            resultant_matches_closed_form: bool,
            fibers: &'a [FiberReport],
        }
        Wire {
            smooth: self.smooth,
            boundary_partials_are_pure_powers: self.boundary_partials_are_pure_powers,
            resultant_matches_closed_form: self.resultant_matches_closed_form,
            fibers: &self.fibers,
        }
        .serialize(serializer)
    }
}

impl Serialize for CandidateReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            kind: &'a str,
            alpha_exp: u32,
            beta_exp: u32,
            failure: &'a Option<String>,
        }
        Wire {
            kind: self.kind,
            alpha_exp: self.alpha_exp,
            beta_exp: self.beta_exp,
            failure: &self.failure,
        }
        .serialize(serializer)
    }
}

impl Serialize for ModuliObstructionReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            obstructed: bool,
            derivation: &'a [String],
            candidates: &'a [CandidateReport],
        }
        Wire {
            obstructed: self.obstructed,
            derivation: &self.derivation,
            candidates: &self.candidates,
        }
        .serialize(serializer)
    }
}

impl Serialize for QuinticFamilyMember {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            a: String,
            b: String,
            poly: &'a HomogeneousPolynomial,
        }
        Wire {
            a: rat_to_string(&self.a),
            b: rat_to_string(&self.b),
            poly: &self.poly,
        }
        .serialize(serializer)
    }
}

impl Serialize for A5RealModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            generators: &'a [Matrix3],
            order: usize,
            diagnostics: &'a [String],
        }
        Wire {
            generators: &self.generators,
            order: self.order,
            diagnostics: &self.diagnostics,
        }
        .serialize(serializer)
    }
}

impl Serialize for CyclicRealModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            matrix: &'a Matrix3,
            reduced_exponent: u32,
            pre_conjugator: &'a Matrix3,
            conjugator: &'a Matrix3,
            diagnostics: &'a [String],
        }
        Wire {
            matrix: &self.matrix,
            reduced_exponent: self.reduced_exponent,
            pre_conjugator: &self.pre_conjugator,
            conjugator: &self.conjugator,
            diagnostics: &self.diagnostics,
        }
        .serialize(serializer)
    }
}

impl Serialize for DihedralRealModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            rotation: &'a Matrix3,
            reflection: &'a Matrix3,
            diagnostics: &'a [String],
        }
        Wire {
            rotation: &self.rotation,
            reflection: &self.reflection,
            diagnostics: &self.diagnostics,
        }
        .serialize(serializer)
    }
}

/// Reads a scalar either from the element wire format or from an
/// expression string such as `"1/2*z^3 - 2"` over the given conductor.
pub fn scalar_from_json(field: &Arc<CycloField>, value: &serde_json::Value) -> crate::Result<CycloElement> {
    match value {
        serde_json::Value::String(expr) => CycloElement::parse(field, expr),
        other => {
            let elem: CycloElement = serde_json::from_value(other.clone())
                .map_err(|e| crate::Error::Parse(e.to_string()))?;
            elem.embed(field.conductor())
        }
    }
}
