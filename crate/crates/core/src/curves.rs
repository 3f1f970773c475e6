//! Smooth plane curves acted on by `PGL_3`: polynomial transformation,
//! automorphism checks, Galois conjugation, and the quintic family
//! `X^5 + Y^5 + Z^5 + i a X (YZ)^2 + i b X^3 YZ` whose members have real
//! dihedral automorphism groups but no real field of moduli.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::{lcm_u32, CycloElement, CycloField, Rat};
use crate::finitegroup::FiniteSubgroup;
use crate::projlinear::{Matrix3, ProjElement};
use crate::{Error, Result};

/// Conductor hosting the quintic family: `i` and `zeta_5` must coexist.
pub const QUINTIC_CONDUCTOR: u32 = 20;

/// A homogeneous polynomial in `X, Y, Z` with cyclotomic coefficients,
/// stored as a sparse exponent map.
#[derive(Clone, Debug)]
pub struct HomogeneousPolynomial {
    field: Arc<CycloField>,
    degree: u32,
    terms: BTreeMap<(u32, u32, u32), CycloElement>,
}

impl PartialEq for HomogeneousPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor()
            && self.degree == other.degree
            && self.terms == other.terms
    }
}

impl Eq for HomogeneousPolynomial {}

impl HomogeneousPolynomial {
    /// Builds a polynomial from `(exponents, coefficient)` pairs. Every
    /// exponent triple must sum to `degree`; duplicate triples are summed
    /// and zero coefficients dropped.
    pub fn from_terms(
        field: &Arc<CycloField>,
        degree: u32,
        terms: Vec<((u32, u32, u32), CycloElement)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<(u32, u32, u32), CycloElement> = BTreeMap::new();
        for ((i, j, k), coeff) in terms {
            if i + j + k != degree {
                return Err(Error::BadParameters(format!(
                    "term X^{i} Y^{j} Z^{k} does not have total degree {degree}"
                )));
            }
            if coeff.conductor() != field.conductor() {
                return Err(Error::FieldMismatch(coeff.conductor(), field.conductor()));
            }
            let entry = match map.remove(&(i, j, k)) {
                Some(prev) => prev.try_add(&coeff)?,
                None => coeff,
            };
            if !entry.is_zero() {
                map.insert((i, j, k), entry);
            }
        }
        Ok(HomogeneousPolynomial {
            field: field.clone(),
            degree,
            terms: map,
        })
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &CycloElement)> {
        self.terms.iter()
    }

    /// The coefficient of `X^i Y^j Z^k`, zero when absent.
    pub fn coeff(&self, exps: (u32, u32, u32)) -> CycloElement {
        self.terms
            .get(&exps)
            .cloned()
            .unwrap_or_else(|| CycloElement::zero(&self.field))
    }

    pub fn scale(&self, c: &CycloElement) -> Result<Self> {
        let mut terms = Vec::new();
        for (exps, coeff) in &self.terms {
            terms.push((*exps, coeff.try_mul(c)?));
        }
        HomogeneousPolynomial::from_terms(&self.field, self.degree, terms)
    }

    pub fn embed(&self, m: u32) -> Result<Self> {
        let field = CycloField::new(m);
        let mut terms = Vec::new();
        for (exps, coeff) in &self.terms {
            terms.push((*exps, coeff.embed(m)?));
        }
        HomogeneousPolynomial::from_terms(&field, self.degree, terms)
    }

    /// Entrywise complex conjugation of coefficients.
    pub fn galois_sigma(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(exps, coeff)| (*exps, coeff.conj()))
            .collect();
        HomogeneousPolynomial {
            field: self.field.clone(),
            degree: self.degree,
            terms,
        }
    }

    /// Partial derivative with respect to variable 0 (`X`), 1 (`Y`) or
    /// 2 (`Z`).
    pub fn derivative(&self, var: usize) -> Result<Self> {
        if var > 2 {
            return Err(Error::BadParameters(format!(
                "variable index {var} out of range"
            )));
        }
        if self.degree == 0 {
            return HomogeneousPolynomial::from_terms(&self.field, 0, Vec::new());
        }
        let mut terms = Vec::new();
        for (&(i, j, k), coeff) in &self.terms {
            let e = [i, j, k][var];
            if e == 0 {
                continue;
            }
            let mut exps = [i, j, k];
            exps[var] -= 1;
            terms.push((
                (exps[0], exps[1], exps[2]),
                coeff.scale(&Rat::from_integer(i64::from(e).into())),
            ));
        }
        HomogeneousPolynomial::from_terms(&self.field, self.degree - 1, terms)
    }

    /// Substitutes the canonical lift of `g`: the result is `F(g * v)`
    /// where each variable is replaced by the corresponding row form.
    /// Both operands are embedded into their least common field.
    pub fn transform(&self, g: &ProjElement) -> Result<Self> {
        let m = lcm_u32(self.conductor(), g.conductor());
        let field = CycloField::new(m);
        let poly = self.embed(m)?;
        let mat = g.canon().embed(m)?;
        let rows: Vec<TriPoly> = (0..3)
            .map(|r| {
                let mut row = TriPoly::new();
                for (c, exps) in [(0usize, (1, 0, 0)), (1, (0, 1, 0)), (2, (0, 0, 1))] {
                    let coeff = mat.entry(r, c).clone();
                    if !coeff.is_zero() {
                        row.insert(exps, coeff);
                    }
                }
                row
            })
            .collect();
        let mut acc = TriPoly::new();
        for (&(i, j, k), coeff) in &poly.terms {
            let mut term = TriPoly::from([((0, 0, 0), coeff.clone())]);
            for (row, e) in rows.iter().zip([i, j, k]) {
                for _ in 0..e {
                    term = tri_mul(&term, row)?;
                }
            }
            acc = tri_add(&acc, &term)?;
        }
        HomogeneousPolynomial::from_terms(&field, self.degree, acc.into_iter().collect())
    }

    /// Projective equality: `self = c * other` for some nonzero scalar.
    pub fn proportional_to(&self, other: &Self) -> Result<bool> {
        let m = lcm_u32(self.conductor(), other.conductor());
        let a = self.embed(m)?;
        let b = other.embed(m)?;
        if a.is_zero() || b.is_zero() {
            return Ok(a.is_zero() && b.is_zero());
        }
        if a.terms.keys().ne(b.terms.keys()) {
            return Ok(false);
        }
        let first = a.terms.keys().next().copied().expect("nonzero");
        let c = a.coeff(first).try_div(&b.coeff(first))?;
        Ok(a == b.scale(&c)?)
    }

    /// Does `g` leave the zero locus invariant, i.e. `F(g*v)` proportional
    /// to `F`?
    pub fn is_invariant_under(&self, g: &ProjElement) -> Result<bool> {
        self.transform(g)?.proportional_to(self)
    }
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j, k), coeff) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({coeff})")?;
            for (name, e) in [("X", i), ("Y", j), ("Z", k)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

type TriPoly = BTreeMap<(u32, u32, u32), CycloElement>;

fn tri_add(a: &TriPoly, b: &TriPoly) -> Result<TriPoly> {
    let mut out = a.clone();
    for (exps, coeff) in b {
        let entry = match out.remove(exps) {
            Some(prev) => prev.try_add(coeff)?,
            None => coeff.clone(),
        };
        if !entry.is_zero() {
            out.insert(*exps, entry);
        }
    }
    Ok(out)
}

fn tri_mul(a: &TriPoly, b: &TriPoly) -> Result<TriPoly> {
    let mut out = TriPoly::new();
    for ((i1, j1, k1), c1) in a {
        for ((i2, j2, k2), c2) in b {
            let exps = (i1 + i2, j1 + j2, k1 + k2);
            let prod = c1.try_mul(c2)?;
            let entry = match out.remove(&exps) {
                Some(prev) => prev.try_add(&prod)?,
                None => prod,
            };
            if !entry.is_zero() {
                out.insert(exps, entry);
            }
        }
    }
    Ok(out)
}

/// Dense univariate polynomial over a cyclotomic field, `coeffs[k]` being
/// the coefficient of the `k`-th power.
pub type UniPoly = Vec<CycloElement>;

fn uni_trim(p: &mut UniPoly) {
    while p.last().is_some_and(CycloElement::is_zero) {
        p.pop();
    }
}

fn uni_is_zero(p: &UniPoly) -> bool {
    p.iter().all(CycloElement::is_zero)
}

/// Degree of a trimmed nonzero polynomial; `None` for the zero polynomial.
pub fn uni_degree(p: &UniPoly) -> Option<usize> {
    let mut q = p.clone();
    uni_trim(&mut q);
    q.len().checked_sub(1)
}

fn uni_add(a: &UniPoly, b: &UniPoly, field: &Arc<CycloField>) -> Result<UniPoly> {
    let zero = CycloElement::zero(field);
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    for idx in 0..a.len().max(b.len()) {
        out.push(
            a.get(idx)
                .unwrap_or(&zero)
                .try_add(b.get(idx).unwrap_or(&zero))?,
        );
    }
    uni_trim(&mut out);
    Ok(out)
}

fn uni_mul(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    if uni_is_zero(a) || uni_is_zero(b) {
        return Ok(Vec::new());
    }
    let field = CycloField::new(a[0].conductor());
    let mut out = vec![CycloElement::zero(&field); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].try_add(&ca.try_mul(cb)?)?;
        }
    }
    uni_trim(&mut out);
    Ok(out)
}

fn uni_neg(a: &UniPoly) -> UniPoly {
    a.iter().map(CycloElement::neg).collect()
}

/// Euclidean division by a nonzero divisor over the coefficient field.
fn uni_divrem(a: &UniPoly, b: &UniPoly) -> Result<(UniPoly, UniPoly)> {
    let mut rem = a.clone();
    uni_trim(&mut rem);
    let mut div = b.clone();
    uni_trim(&mut div);
    if div.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let field = CycloField::new(div[0].conductor());
    let lead_inv = div.last().expect("nonzero").inv()?;
    let mut quot = vec![CycloElement::zero(&field); rem.len().saturating_sub(div.len() - 1)];
    while rem.len() >= div.len() && !rem.is_empty() {
        let shift = rem.len() - div.len();
        let factor = rem.last().expect("nonzero").try_mul(&lead_inv)?;
        quot[shift] = quot[shift].try_add(&factor)?;
        for (idx, coeff) in div.iter().enumerate() {
            rem[shift + idx] = rem[shift + idx].try_sub(&factor.try_mul(coeff)?)?;
        }
        uni_trim(&mut rem);
    }
    uni_trim(&mut quot);
    Ok((quot, rem))
}

/// Monic greatest common divisor via the Euclidean algorithm; returns the
/// zero polynomial only when both inputs are zero.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    let mut x = a.clone();
    let mut y = b.clone();
    uni_trim(&mut x);
    uni_trim(&mut y);
    while !y.is_empty() {
        let (_, rem) = uni_divrem(&x, &y)?;
        x = y;
        y = rem;
    }
    if let Some(lead) = x.last().cloned() {
        let inv = lead.inv()?;
        for coeff in &mut x {
            *coeff = coeff.try_mul(&inv)?;
        }
    }
    Ok(x)
}

/// Horner evaluation.
pub fn uni_eval(p: &UniPoly, at: &CycloElement) -> Result<CycloElement> {
    let field = CycloField::new(at.conductor());
    let mut acc = CycloElement::zero(&field);
    for coeff in p.iter().rev() {
        acc = acc.try_mul(at)?.try_add(coeff)?;
    }
    Ok(acc)
}

/// A polynomial in `X` whose coefficients are polynomials in `Z`:
/// `coeffs[k]` multiplies `X^k`.
pub type XZPoly = Vec<UniPoly>;

fn xz_trim(p: &mut XZPoly) {
    while p.last().is_some_and(uni_is_zero) {
        p.pop();
    }
}

/// Writes `F(X, 1, Z)` as a polynomial in `X` over `Q(zeta)[Z]`.
pub fn dehomogenize_y(poly: &HomogeneousPolynomial) -> XZPoly {
    let field = poly.field().clone();
    let mut out: XZPoly = Vec::new();
    for (&(i, _, k), coeff) in poly.terms.clone().iter() {
        let (i, k) = (i as usize, k as usize);
        while out.len() <= i {
            out.push(Vec::new());
        }
        while out[i].len() <= k {
            out[i].push(CycloElement::zero(&field));
        }
        out[i][k] = out[i][k].try_add(coeff).expect("same field");
    }
    for row in &mut out {
        uni_trim(row);
    }
    xz_trim(&mut out);
    out
}

/// Evaluates every `Z`-coefficient at `z`, producing a univariate
/// polynomial in `X`.
pub fn specialize_z(poly: &XZPoly, z: &CycloElement) -> Result<UniPoly> {
    let mut out = Vec::with_capacity(poly.len());
    for coeff in poly {
        out.push(uni_eval(coeff, z)?);
    }
    uni_trim(&mut out);
    Ok(out)
}

/// Sylvester resultant with respect to `X` of two polynomials with
/// `Q(zeta)[Z]` coefficients. Leading coefficients must be nonzero
/// polynomials in `Z`.
pub fn resultant_x(p: &XZPoly, q: &XZPoly) -> Result<UniPoly> {
    let mut p = p.clone();
    let mut q = q.clone();
    xz_trim(&mut p);
    xz_trim(&mut q);
    if p.len() < 2 || q.len() < 2 {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let n = p.len() - 1;
    let m = q.len() - 1;
    let dim = n + m;
    let zero: UniPoly = Vec::new();
    let mut rows: Vec<Vec<UniPoly>> = Vec::with_capacity(dim);
    for shift in 0..m {
        let mut row = vec![zero.clone(); dim];
        for (idx, coeff) in p.iter().rev().enumerate() {
            row[shift + idx] = coeff.clone();
        }
        rows.push(row);
    }
    for shift in 0..n {
        let mut row = vec![zero.clone(); dim];
        for (idx, coeff) in q.iter().rev().enumerate() {
            row[shift + idx] = coeff.clone();
        }
        rows.push(row);
    }
    let field = CycloField::new(
        p.iter()
            .flatten()
            .chain(q.iter().flatten())
            .map(CycloElement::conductor)
            .next()
            .expect("nonempty"),
    );
    let mut memo: HashMap<u64, UniPoly> = HashMap::new();
    minor_det(&rows, 0, (1u64 << dim) - 1, &field, &mut memo)
}

/// Determinant of the minor using rows `row..` and the columns in `cols`,
/// expanded along the first remaining row with memoization on the column
/// set.
fn minor_det(
    rows: &[Vec<UniPoly>],
    row: usize,
    cols: u64,
    field: &Arc<CycloField>,
    memo: &mut HashMap<u64, UniPoly>,
) -> Result<UniPoly> {
    if row == rows.len() {
        return Ok(vec![CycloElement::one(field)]);
    }
    if let Some(hit) = memo.get(&cols) {
        return Ok(hit.clone());
    }
    let mut acc: UniPoly = Vec::new();
    let mut sign_positive = true;
    for col in 0..rows[row].len() {
        if cols & (1 << col) == 0 {
            continue;
        }
        let entry = &rows[row][col];
        if !uni_is_zero(entry) {
            let sub = minor_det(rows, row + 1, cols & !(1 << col), field, memo)?;
            let prod = uni_mul(entry, &sub)?;
            let signed = if sign_positive { prod } else { uni_neg(&prod) };
            acc = uni_add(&acc, &signed, field)?;
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    Ok(acc)
}

/// A member of the quintic family together with its parameters.
#[derive(Clone, Debug)]
pub struct QuinticFamilyMember {
    pub a: Rat,
    pub b: Rat,
    pub poly: HomogeneousPolynomial,
}

/// Builds `X^5 + Y^5 + Z^5 + i a X (YZ)^2 + i b X^3 YZ` over
/// `Q(zeta_20)`. Both parameters must be nonzero rationals.
pub fn quintic_member(a: &Rat, b: &Rat) -> Result<QuinticFamilyMember> {
    use num_traits::Zero;
    if a.is_zero() || b.is_zero() {
        return Err(Error::BadParameters(
            "quintic family parameters must be nonzero".into(),
        ));
    }
    let field = CycloField::new(QUINTIC_CONDUCTOR);
    let one = CycloElement::one(&field);
    let i = CycloElement::zeta_pow(&field, (QUINTIC_CONDUCTOR / 4) as i64);
    let poly = HomogeneousPolynomial::from_terms(
        &field,
        5,
        vec![
            ((5, 0, 0), one.clone()),
            ((0, 5, 0), one.clone()),
            ((0, 0, 5), one),
            ((1, 2, 2), i.scale(a)),
            ((3, 1, 1), i.scale(b)),
        ],
    )?;
    Ok(QuinticFamilyMember {
        a: a.clone(),
        b: b.clone(),
        poly,
    })
}

/// The dihedral automorphism group `<diag(1, z5, z5^-1), [X:Z:Y]>` of the
/// quintic family, closed over the family's field.
pub fn d10_group() -> Result<FiniteSubgroup> {
    let field = CycloField::new(QUINTIC_CONDUCTOR);
    let step = (QUINTIC_CONDUCTOR / 5) as i64;
    let rho1 = ProjElement::new(Matrix3::diag(
        CycloElement::one(&field),
        CycloElement::zeta_pow(&field, step),
        CycloElement::zeta_pow(&field, -step),
    )?)?;
    let rho2 = ProjElement::new(Matrix3::from_int_rows(
        &field,
        [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
    ))?;
    FiniteSubgroup::closure(&[rho1, rho2], 12)
}

/// Does every element of the group leave the curve invariant?
pub fn aut_contains(poly: &HomogeneousPolynomial, group: &FiniteSubgroup) -> Result<bool> {
    for g in group.elements() {
        if !poly.is_invariant_under(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Galois compatibility of automorphisms: every group element `g` with
/// `g in Aut(C)` must satisfy `sigma(g) in Aut(sigma(C))`, and back.
/// Returns `PreconditionFailed` when the group does not act on the curve
/// in the first place.
pub fn aut_sigma_compat(poly: &HomogeneousPolynomial, group: &FiniteSubgroup) -> Result<bool> {
    if !aut_contains(poly, group)? {
        return Err(Error::PreconditionFailed(
            "the group is not contained in the automorphism group of the curve".into(),
        ));
    }
    let sigma_poly = poly.galois_sigma();
    for g in group.elements() {
        if !sigma_poly.is_invariant_under(&g.galois_sigma())? {
            return Ok(false);
        }
    }
    for g in group.elements() {
        if !poly.is_invariant_under(&g.galois_sigma().galois_sigma())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-fiber report of the singular-point search over `z = zeta_5^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    /// Exponent `k` of the fiber `z = zeta_5^k`.
    pub fiber_exponent: u32,
    /// Degree of `gcd(F_Y(X,1,z), F_Z(X,1,z))`.
    pub intermediate_gcd_degree: Option<usize>,
    /// Degree of the gcd after also intersecting with `F_X(X,1,z)`;
    /// `Some(0)` certifies the fiber is free of singular points.
    pub final_gcd_degree: Option<usize>,
}

/// Outcome of the quintic smoothness decision.
#[derive(Clone, Debug)]
pub struct SmoothnessCertificate {
    pub smooth: bool,
    /// `F_X` and `F_Z` restrict to `5X^4` and `5Z^4` on `Y = 0`, so no
    /// singular point lies on that line.
    pub boundary_partials_are_pure_powers: bool,
    /// The resultant of `F_Y(X,1,Z)` and `F_Z(X,1,Z)` in `X` equals
    /// `-125 i b^3 (Z^5-1)^3`, confining singular candidates to the
    /// fibers `z^5 = 1`.
    pub resultant_matches_closed_form: bool,
    pub fibers: Vec<FiberReport>,
}

/// The closed form `-125 i b^3 (Z^5 - 1)^3` of the family's resultant.
pub fn quintic_resultant_closed_form(b: &Rat) -> UniPoly {
    let field = CycloField::new(QUINTIC_CONDUCTOR);
    let i = CycloElement::zeta_pow(&field, (QUINTIC_CONDUCTOR / 4) as i64);
    let unit = i.scale(&(b * b * b * Rat::from_integer(125.into())));
    let mut out = vec![CycloElement::zero(&field); 16];
    out[0] = unit.clone();
    out[5] = unit.scale(&Rat::from_integer((-3).into()));
    out[10] = unit.scale(&Rat::from_integer(3.into()));
    out[15] = unit.neg();
    out
}

/// Decides smoothness of a family member.
///
/// Singular points off `Y = 0` are roots of the system
/// `F_X = F_Y = F_Z = 0` in the chart `Y = 1`. The resultant of the last
/// two equations in `X` vanishes only over `z^5 = 1`, and on each such
/// fiber `F_Y = z F_Z`, so the fiber has a singular point exactly when
/// `gcd(F_Z(X,1,z), F_X(X,1,z))` is nonconstant.
pub fn smoothness_check_quintic(member: &QuinticFamilyMember) -> Result<SmoothnessCertificate> {
    let poly = &member.poly;
    let field = poly.field().clone();
    let fx = poly.derivative(0)?;
    let fy = poly.derivative(1)?;
    let fz = poly.derivative(2)?;

    let boundary = {
        let five = CycloElement::from_int(&field, 5);
        let restrict_y0 = |p: &HomogeneousPolynomial| -> BTreeMap<(u32, u32, u32), CycloElement> {
            p.terms
                .iter()
                .filter(|((_, j, _), _)| *j == 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect()
        };
        restrict_y0(&fx) == BTreeMap::from([((4, 0, 0), five.clone())])
            && restrict_y0(&fz) == BTreeMap::from([((0, 0, 4), five)])
    };

    let f0 = dehomogenize_y(&fx);
    let f1 = dehomogenize_y(&fy);
    let f2 = dehomogenize_y(&fz);
    let resultant = resultant_x(&f1, &f2)?;
    let resultant_matches = resultant == quintic_resultant_closed_form(&member.b);
    if !resultant_matches {
        return Err(Error::Inconsistency(
            "quintic resultant does not match its closed form".into(),
        ));
    }

    let mut fibers = Vec::new();
    let mut all_clean = true;
    for k in 0..5 {
        let z = CycloElement::zeta_pow(&field, i64::from(k) * i64::from(QUINTIC_CONDUCTOR / 5));
        let s1 = specialize_z(&f1, &z)?;
        let s2 = specialize_z(&f2, &z)?;
        let s0 = specialize_z(&f0, &z)?;
        let intermediate = uni_gcd(&s1, &s2)?;
        let final_gcd = uni_gcd(&intermediate, &s0)?;
        let report = FiberReport {
            fiber_exponent: k,
            intermediate_gcd_degree: uni_degree(&intermediate),
            final_gcd_degree: uni_degree(&final_gcd),
        };
        if report.final_gcd_degree != Some(0) {
            all_clean = false;
        }
        fibers.push(report);
    }

    Ok(SmoothnessCertificate {
        smooth: boundary && resultant_matches && all_clean,
        boundary_partials_are_pure_powers: boundary,
        resultant_matches_closed_form: resultant_matches,
        fibers,
    })
}

/// One candidate projective equivalence tested by the moduli search.
#[derive(Clone, Debug)]
pub struct CandidateReport {
    /// `"diag"` for `diag(1, alpha, beta)`, `"swap"` for `[X:alpha Z:beta Y]`.
    pub kind: &'static str,
    /// `alpha = zeta_5^alpha_exp`.
    pub alpha_exp: u32,
    /// `beta = zeta_5^beta_exp`.
    pub beta_exp: u32,
    /// `None` when the candidate works; otherwise the first failing
    /// monomial comparison.
    pub failure: Option<String>,
}

/// Outcome of the field-of-moduli search for a quintic member.
#[derive(Clone, Debug)]
pub struct ModuliObstructionReport {
    /// True when no candidate maps the curve onto its conjugate.
    pub obstructed: bool,
    /// Checkpoints of the derivation that confines candidates to the
    /// fifty maps tested.
    pub derivation: Vec<String>,
    pub candidates: Vec<CandidateReport>,
}

fn candidate_matrices(field: &Arc<CycloField>) -> Vec<(&'static str, u32, u32, ProjElement)> {
    let step = (QUINTIC_CONDUCTOR / 5) as i64;
    let zero = CycloElement::zero(field);
    let one = CycloElement::one(field);
    let mut out = Vec::with_capacity(50);
    for alpha_exp in 0..5u32 {
        for beta_exp in 0..5u32 {
            let alpha = CycloElement::zeta_pow(field, step * i64::from(alpha_exp));
            let beta = CycloElement::zeta_pow(field, step * i64::from(beta_exp));
            let diag = Matrix3::diag(one.clone(), alpha.clone(), beta.clone())
                .expect("diagonal of units");
            let swap = Matrix3::new(
                field,
                vec![
                    one.clone(),
                    zero.clone(),
                    zero.clone(),
                    zero.clone(),
                    zero.clone(),
                    alpha,
                    zero.clone(),
                    beta,
                    zero.clone(),
                ],
            )
            .expect("well-formed matrix");
            out.push((
                "diag",
                alpha_exp,
                beta_exp,
                ProjElement::new(diag).expect("invertible"),
            ));
            out.push((
                "swap",
                alpha_exp,
                beta_exp,
                ProjElement::new(swap).expect("invertible"),
            ));
        }
    }
    out
}

/// Tests the fifty candidate maps against a target curve, reporting the
/// first failing coefficient for each and the first fully matching
/// candidate, if any.
pub fn search_candidates(
    poly: &HomogeneousPolynomial,
    target: &HomogeneousPolynomial,
) -> Result<(Option<(&'static str, u32, u32)>, Vec<CandidateReport>)> {
    let field = poly.field().clone();
    let mut matched = None;
    let mut reports = Vec::with_capacity(50);
    for (kind, alpha_exp, beta_exp, phi) in candidate_matrices(&field) {
        let transformed = poly.transform(&phi)?;
        let failure = first_mismatch(&transformed, target)?;
        if failure.is_none() && matched.is_none() {
            matched = Some((kind, alpha_exp, beta_exp));
        }
        reports.push(CandidateReport {
            kind,
            alpha_exp,
            beta_exp,
            failure,
        });
    }
    Ok((matched, reports))
}

/// First monomial at which `lhs` fails to be a scalar multiple of `rhs`.
fn first_mismatch(
    lhs: &HomogeneousPolynomial,
    rhs: &HomogeneousPolynomial,
) -> Result<Option<String>> {
    let m = lcm_u32(lhs.conductor(), rhs.conductor());
    let a = lhs.embed(m)?;
    let b = rhs.embed(m)?;
    if a.terms.keys().ne(b.terms.keys()) {
        let all: std::collections::BTreeSet<_> =
            a.terms.keys().chain(b.terms.keys()).collect();
        for exps in all {
            if a.terms.contains_key(exps) != b.terms.contains_key(exps) {
                return Ok(Some(format!(
                    "monomial X^{} Y^{} Z^{} appears on only one side",
                    exps.0, exps.1, exps.2
                )));
            }
        }
    }
    let first = a.terms.keys().next().copied().expect("nonzero curves");
    let c = b.coeff(first).try_div(&a.coeff(first))?;
    for (exps, coeff) in &a.terms {
        let scaled = coeff.try_mul(&c)?;
        let want = b.coeff(*exps);
        if scaled != want {
            return Ok(Some(format!(
                "coefficient of X^{} Y^{} Z^{}: {} * ({c}) != {}",
                exps.0, exps.1, exps.2, coeff, want
            )));
        }
    }
    Ok(None)
}

/// Decides whether a smooth family member fails to have a real field of
/// moduli.
///
/// An equivalence `C -> sigma(C)` must normalize `Aut(C) = D10` and fix
/// or invert the rotation, so after rescaling it is `diag(1, alpha,
/// beta)` or `[X : alpha Z : beta Y]`; matching the coefficients of
/// `X^5`, `Y^5`, `Z^5` then forces `alpha^5 = beta^5 = 1`. All fifty
/// remaining candidates are tested exactly; each fails on the `X^3 Y Z`
/// or `X Y^2 Z^2` coefficient, where the equations `alpha beta = -1` and
/// `(alpha beta)^2 = -1` collide.
pub fn moduli_obstruction_quintic(member: &QuinticFamilyMember) -> Result<ModuliObstructionReport> {
    let sigma = member.poly.galois_sigma();
    let (matched, candidates) = search_candidates(&member.poly, &sigma)?;
    let derivation = vec![
        "an isomorphism C -> sigma(C) conjugates Aut(C) = D10 onto Aut(sigma(C)) = D10, \
         and eigenvalue multisets force it to fix or invert the rotation diag(1, z5, z5^-1)"
            .to_string(),
        "hence the map is diag(1, alpha, beta) or [X : alpha Z : beta Y] up to scaling"
            .to_string(),
        "matching the X^5, Y^5, Z^5 coefficients of the transformed curve against \
         sigma(C) forces the scalar to 1 and alpha^5 = beta^5 = 1, leaving 50 candidates"
            .to_string(),
        "the X^3 Y Z coefficient demands alpha * beta = -1 while the X Y^2 Z^2 \
         coefficient demands (alpha * beta)^2 = -1, which no fifth roots of unity satisfy"
            .to_string(),
    ];
    Ok(ModuliObstructionReport {
        obstructed: matched.is_none(),
        derivation,
        candidates,
    })
}
