//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are dense rational coefficient vectors on the power basis
//! `1, zeta, ..., zeta^(phi(N)-1)`, reduced modulo the `N`-th cyclotomic
//! polynomial. All operations are exact; numeric evaluation is available
//! through [`CycloElement::to_complex`] at any requested precision.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use numeric::ComplexApprox;

/// Arbitrary-precision rational scalar.
pub type Rat = BigRational;

pub(crate) fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub(crate) fn gcd_u32(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Dense univariate polynomials over `Q`, used for cyclotomic moduli.
mod polyq {
    use super::Rat;
    use num_traits::Zero;

    pub fn trim(p: &mut Vec<Rat>) {
        while p.len() > 1 && p.last().map_or(false, Zero::is_zero) {
            p.pop();
        }
    }

    pub fn is_zero(p: &[Rat]) -> bool {
        p.iter().all(Zero::is_zero)
    }

    pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        trim(&mut out);
        out
    }

    /// Quotient and remainder of `a` by `b`; `b` must be nonzero.
    pub fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut bb = b.to_vec();
        trim(&mut bb);
        let db = bb.len() - 1;
        assert!(!is_zero(&bb), "division by the zero polynomial");
        if r.len() <= db && !(r.len() == bb.len()) {
            return (vec![Rat::zero()], r);
        }
        let lead = bb[db].clone();
        let mut q = vec![Rat::zero(); r.len().saturating_sub(db)];
        while r.len() > db || (r.len() == bb.len() && !is_zero(&r)) {
            let dr = r.len() - 1;
            if dr < db || is_zero(&r) {
                break;
            }
            let c = &r[dr] / &lead;
            q[dr - db] = c.clone();
            for k in 0..=db {
                let t = &c * &bb[k];
                r[dr - db + k] -= t;
            }
            trim(&mut r);
            if r.len() == 1 && r[0].is_zero() {
                break;
            }
        }
        trim(&mut q);
        (q, r)
    }
}

fn cyclotomic_modulus(n: u32, memo: &mut HashMap<u32, Vec<Rat>>) -> Vec<Rat> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    let mut den = vec![Rat::one()];
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_modulus(d, memo);
            den = polyq::mul(&den, &phi_d);
        }
    }
    let (q, r) = polyq::divrem(&num, &den);
    debug_assert!(polyq::is_zero(&r), "cyclotomic division must be exact");
    memo.insert(n, q.clone());
    q
}

/// The cyclotomic field `Q(zeta_N)` with its reduction data.
///
/// Instances are cached per conductor and shared through `Arc`, so field
/// construction is cheap after the first request.
pub struct CycloField {
    conductor: u32,
    degree: usize,
    modulus: Vec<Rat>,
    zeta_pow: Vec<Vec<Rat>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloField(N={}, degree={})", self.conductor, self.degree)
    }
}

static FIELD_CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();

impl CycloField {
    /// Returns the cached field of conductor `n`. The conductor must be
    /// positive.
    pub fn new(n: u32) -> Arc<CycloField> {
        assert!(n >= 1, "conductor must be positive");
        let cache = FIELD_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("field cache poisoned");
        if let Some(f) = guard.get(&n) {
            return Arc::clone(f);
        }
        let mut memo = HashMap::new();
        let modulus = cyclotomic_modulus(n, &mut memo);
        let degree = modulus.len() - 1;
        let mut zeta_pow: Vec<Vec<Rat>> = Vec::with_capacity(n as usize);
        for k in 0..degree.min(n as usize) {
            let mut v = vec![Rat::zero(); degree];
            v[k] = Rat::one();
            zeta_pow.push(v);
        }
        while zeta_pow.len() < n as usize {
            let prev = zeta_pow.last().expect("power table seeded").clone();
            zeta_pow.push(mulx_mod(&prev, &modulus));
        }
        let field = Arc::new(CycloField {
            conductor: n,
            degree,
            modulus,
            zeta_pow,
        });
        guard.insert(n, Arc::clone(&field));
        field
    }

    /// Conductor `N` of the field.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Degree `phi(N)` of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic minimal polynomial of `zeta_N`, lowest coefficient first.
    pub fn modulus(&self) -> &[Rat] {
        &self.modulus
    }
}

fn mulx_mod(p: &[Rat], modulus: &[Rat]) -> Vec<Rat> {
    let d = modulus.len() - 1;
    let mut out = vec![Rat::zero(); d];
    for k in 0..d - 1 {
        out[k + 1] = p[k].clone();
    }
    let carry = p[d - 1].clone();
    if !carry.is_zero() {
        for k in 0..d {
            let t = &carry * &modulus[k];
            out[k] -= t;
        }
    }
    out
}

/// An element of `Q(zeta_N)` on the power basis of that field.
#[derive(Clone)]
pub struct CycloElement {
    field: Arc<CycloField>,
    coeffs: Vec<Rat>,
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElement {}

impl Hash for CycloElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl CycloElement {
    /// The zero element.
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloElement {
            field: Arc::clone(field),
            coeffs: vec![Rat::zero(); field.degree],
        }
    }

    /// The multiplicative identity.
    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rat(field, Rat::one())
    }

    /// Embeds a rational number.
    pub fn from_rat(field: &Arc<CycloField>, r: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); field.degree];
        coeffs[0] = r;
        CycloElement {
            field: Arc::clone(field),
            coeffs,
        }
    }

    /// Embeds a machine integer.
    pub fn from_int(field: &Arc<CycloField>, v: i64) -> Self {
        Self::from_rat(field, rat_int(v))
    }

    /// The root of unity `zeta_N^k`; the exponent is taken modulo `N`.
    pub fn zeta_pow(field: &Arc<CycloField>, k: i64) -> Self {
        let n = field.conductor as i64;
        let k = k.rem_euclid(n) as usize;
        CycloElement {
            field: Arc::clone(field),
            coeffs: field.zeta_pow[k].clone(),
        }
    }

    /// Builds an element from explicit basis coefficients.
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != field.degree {
            return Err(Error::BadParameters(format!(
                "expected {} coefficients for conductor {}, got {}",
                field.degree,
                field.conductor,
                coeffs.len()
            )));
        }
        Ok(CycloElement {
            field: Arc::clone(field),
            coeffs,
        })
    }

    /// The field this element lives in.
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Conductor of the ambient field.
    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// Basis coefficients, constant term first.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// True when the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value when [`Self::is_rational`] holds.
    pub fn to_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field.conductor != other.field.conductor {
            Err(Error::FieldMismatch(
                self.field.conductor,
                other.field.conductor,
            ))
        } else {
            Ok(())
        }
    }

    /// Sum, failing on a conductor mismatch.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloElement {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    /// Difference, failing on a conductor mismatch.
    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloElement {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    /// Product, failing on a conductor mismatch.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let d = self.field.degree;
        let mut conv = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut out = conv[..d.min(conv.len())].to_vec();
        out.resize(d, Rat::zero());
        for k in (d..conv.len()).rev() {
            if conv[k].is_zero() {
                continue;
            }
            let red = &self.field.zeta_pow[k % self.field.conductor as usize];
            // k < 2*phi(N) <= 2N, so k mod N indexes the power table whenever
            // k >= N; for d <= k < N reduce by the precomputed x^k vector too.
            let vec = if k >= self.field.conductor as usize {
                red
            } else {
                &self.field.zeta_pow[k]
            };
            let c = conv[k].clone();
            for (o, v) in out.iter_mut().zip(vec) {
                *o += &c * v;
            }
        }
        Ok(CycloElement {
            field: Arc::clone(&self.field),
            coeffs: out,
        })
    }

    pub fn neg(&self) -> Self {
        CycloElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplies every coefficient by a rational scalar.
    pub fn scale(&self, r: &Rat) -> Self {
        CycloElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the (irreducible) field modulus.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r0 = self.coeffs.clone();
        polyq::trim(&mut r0);
        let mut r1 = self.field.modulus.clone();
        let mut s0 = vec![Rat::one()];
        let mut s1 = vec![Rat::zero()];
        while !polyq::is_zero(&r1) {
            let (q, rem) = polyq::divrem(&r0, &r1);
            let qs1 = polyq::mul(&q, &s1);
            let mut s_next = vec![Rat::zero(); s0.len().max(qs1.len())];
            for (k, v) in s0.iter().enumerate() {
                s_next[k] += v;
            }
            for (k, v) in qs1.iter().enumerate() {
                s_next[k] -= v;
            }
            polyq::trim(&mut s_next);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_next;
        }
        debug_assert!(r0.len() == 1, "modulus is irreducible, gcd is constant");
        let c = r0[0].clone();
        let mut coeffs: Vec<Rat> = s0.iter().map(|v| v / &c).collect();
        coeffs.resize(self.field.degree, Rat::zero());
        Ok(CycloElement {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    /// Quotient, failing on a conductor mismatch or a zero divisor.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let inv = other.inv()?;
        self.try_mul(&inv)
    }

    /// Integer power, with negative exponents through the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = CycloElement::one(&self.field);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Complex conjugation, the Galois map `zeta -> zeta^(N-1)`.
    pub fn conj(&self) -> Self {
        let n = self.field.conductor as usize;
        let mut out = vec![Rat::zero(); self.field.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = (n - k) % n;
            for (o, v) in out.iter_mut().zip(&self.field.zeta_pow[idx]) {
                *o += c * v;
            }
        }
        CycloElement {
            field: Arc::clone(&self.field),
            coeffs: out,
        }
    }

    /// True when the element is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Embeds into `Q(zeta_M)` for a multiple `M` of the conductor, sending
    /// `zeta_N` to `zeta_M^(M/N)`.
    pub fn embed(&self, m: u32) -> Result<Self> {
        let n = self.field.conductor;
        if m == 0 || m % n != 0 {
            return Err(Error::NotASubfield(n, m));
        }
        if m == n {
            return Ok(self.clone());
        }
        let target = CycloField::new(m);
        let step = (m / n) as usize;
        let mut out = vec![Rat::zero(); target.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let tk = (k * step) % m as usize;
            for (o, v) in out.iter_mut().zip(&target.zeta_pow[tk]) {
                *o += c * v;
            }
        }
        Ok(CycloElement {
            field: target,
            coeffs: out,
        })
    }

    /// Inverse of [`Self::embed`]: expresses the element on the basis of
    /// `Q(zeta_n)` when it lies in that subfield.
    pub fn restrict(&self, n: u32) -> Result<Self> {
        let m = self.field.conductor;
        if n == 0 || m % n != 0 {
            return Err(Error::NotASubfield(n, m));
        }
        if m == n {
            return Ok(self.clone());
        }
        let sub = CycloField::new(n);
        let cols: Vec<Vec<Rat>> = (0..sub.degree)
            .map(|k| {
                CycloElement::zeta_pow(&sub, k as i64)
                    .embed(m)
                    .expect("subfield embeds")
                    .coeffs
            })
            .collect();
        match gaussian_solve(&cols, &self.coeffs) {
            Some(coeffs) => Ok(CycloElement { field: sub, coeffs }),
            None => Err(Error::NotInSubfield(n)),
        }
    }

    /// Real and imaginary parts as exact elements.
    ///
    /// When the conductor is not divisible by 4 the element is first embedded
    /// into `Q(zeta_lcm(4,N))` so that `i` is available; the returned parts
    /// live in that field.
    pub fn re_im(&self) -> (Self, Self) {
        let n = self.field.conductor;
        let x = if n % 4 == 0 {
            self.clone()
        } else {
            self.embed(lcm_u32(4, n)).expect("lcm embedding succeeds")
        };
        let xbar = x.conj();
        let half = Rat::new(BigInt::from(1), BigInt::from(2));
        let re = x.try_add(&xbar).expect("same field").scale(&half);
        let m = x.field.conductor;
        let i = CycloElement::zeta_pow(&x.field, (m / 4) as i64);
        let diff = x.try_sub(&xbar).expect("same field").scale(&half);
        let im = diff.try_div(&i).expect("i is invertible");
        (re, im)
    }

    /// Numeric value at `prec` bits of working precision.
    pub fn to_complex(&self, prec: usize) -> ComplexApprox {
        numeric::evaluate(self, prec)
    }

    /// Parses a scalar expression such as `z^3`, `1/2*z^3-2` or `-z+1`,
    /// where `z` denotes `zeta_N` for the given field.
    pub fn parse(field: &Arc<CycloField>, input: &str) -> Result<Self> {
        parse_expr(field, input)
    }
}

fn gaussian_solve(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let rows = rhs.len();
    let ncols = cols.len();
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; ncols];
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].recip();
        for v in a[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=ncols {
                    let t = &f * &a[rank][c];
                    a[r][c] -= t;
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    for r in rank..rows {
        if !a[r][ncols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); ncols];
    for (col, &p) in pivot_of_col.iter().enumerate() {
        if p != usize::MAX {
            sol[col] = a[p][ncols].clone();
        }
    }
    Some(sol)
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            if k == 0 || !unit {
                write!(f, "{}", mag)?;
            }
            if k > 0 {
                if !unit {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement(N={}, {})", self.field.conductor, self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait for &CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: &CycloElement) -> CycloElement {
                self.$try(rhs).expect("operands share a cyclotomic field")
            }
        }
        impl std::ops::$trait for CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: CycloElement) -> CycloElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement::neg(self)
    }
}

/// Recursive-descent parser for scalar expressions over one field.
///
/// Grammar: a sum of terms joined by `+`/`-`; each term is a `*`-separated
/// product of factors; a factor is a rational literal (`p`, `p/q`) or a power
/// of the generator (`z`, `z^k`, `z^-k`). Whitespace is ignored.
fn parse_expr(field: &Arc<CycloField>, input: &str) -> Result<CycloElement> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0usize;
    let value = parse_sum(field, &chars, &mut pos)?;
    if pos != chars.len() {
        return Err(Error::Parse(format!(
            "unexpected input at offset {}: {:?}",
            pos,
            chars[pos..].iter().collect::<String>()
        )));
    }
    Ok(value)
}

fn parse_sum(field: &Arc<CycloField>, s: &[char], pos: &mut usize) -> Result<CycloElement> {
    let mut negate = false;
    if s.get(*pos) == Some(&'+') {
        *pos += 1;
    } else if s.get(*pos) == Some(&'-') {
        negate = true;
        *pos += 1;
    }
    let mut acc = parse_product(field, s, pos)?;
    if negate {
        acc = acc.neg();
    }
    while let Some(&op) = s.get(*pos) {
        if op != '+' && op != '-' {
            break;
        }
        *pos += 1;
        let term = parse_product(field, s, pos)?;
        acc = if op == '+' {
            acc.try_add(&term)?
        } else {
            acc.try_sub(&term)?
        };
    }
    Ok(acc)
}

fn parse_product(field: &Arc<CycloField>, s: &[char], pos: &mut usize) -> Result<CycloElement> {
    let mut acc = parse_factor(field, s, pos)?;
    while s.get(*pos) == Some(&'*') {
        *pos += 1;
        let f = parse_factor(field, s, pos)?;
        acc = acc.try_mul(&f)?;
    }
    Ok(acc)
}

fn parse_factor(field: &Arc<CycloField>, s: &[char], pos: &mut usize) -> Result<CycloElement> {
    match s.get(*pos) {
        Some('z') | Some('Z') => {
            *pos += 1;
            let mut exp = 1i64;
            if s.get(*pos) == Some(&'^') {
                *pos += 1;
                exp = parse_int(s, pos)?;
            }
            Ok(CycloElement::zeta_pow(field, exp))
        }
        Some(c) if c.is_ascii_digit() || *c == '-' => {
            let numer = parse_int(s, pos)?;
            if s.get(*pos) == Some(&'/') {
                *pos += 1;
                let denom = parse_int(s, pos)?;
                if denom == 0 {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(CycloElement::from_rat(
                    field,
                    Rat::new(BigInt::from(numer), BigInt::from(denom)),
                ))
            } else {
                Ok(CycloElement::from_int(field, numer))
            }
        }
        other => Err(Error::Parse(format!(
            "expected factor at offset {}, found {:?}",
            pos, other
        ))),
    }
}

fn parse_int(s: &[char], pos: &mut usize) -> Result<i64> {
    let mut sign = 1i64;
    if s.get(*pos) == Some(&'-') {
        sign = -1;
        *pos += 1;
    }
    let start = *pos;
    while s.get(*pos).map_or(false, |c| c.is_ascii_digit()) {
        *pos += 1;
    }
    if *pos == start {
        return Err(Error::Parse(format!("expected integer at offset {}", pos)));
    }
    let text: String = s[start..*pos].iter().collect();
    text.parse::<i64>()
        .map(|v| sign * v)
        .map_err(|e| Error::Parse(format!("integer out of range: {}", e)))
}

/// Numeric evaluation of cyclotomic elements with arbitrary-precision floats.
pub mod numeric {
    use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    use super::{CycloElement, Rat};

    const RM: RoundingMode = RoundingMode::ToEven;

    /// A complex value with arbitrary-precision real and imaginary parts.
    #[derive(Clone, Debug)]
    pub struct ComplexApprox {
        pub re: BigFloat,
        pub im: BigFloat,
    }

    impl ComplexApprox {
        /// Rounds both parts to machine doubles.
        pub fn to_f64s(&self) -> (f64, f64) {
            (to_f64(&self.re), to_f64(&self.im))
        }

        /// True when both parts of the difference are at most `2^e` in
        /// absolute value.
        pub fn agrees_within_pow2(&self, other: &ComplexApprox, e: i32) -> bool {
            let p = 192;
            let dr = self.re.sub(&other.re, p, RM).abs();
            let di = self.im.sub(&other.im, p, RM).abs();
            le_pow2(&dr, e) && le_pow2(&di, e)
        }
    }

    /// True when `|x| <= 2^e`.
    pub fn le_pow2(x: &BigFloat, e: i32) -> bool {
        let mut thr = BigFloat::from_i8(1, 64);
        thr.set_exponent(e + 1);
        match x.abs().cmp(&thr) {
            Some(v) => v <= 0,
            None => false,
        }
    }

    /// Best-effort conversion to `f64` through the raw representation.
    pub fn to_f64(x: &BigFloat) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        let Some((words, _len, sign, exp, _inexact)) = x.as_raw_parts() else {
            return f64::NAN;
        };
        let nw = words.len();
        if nw == 0 {
            return 0.0;
        }
        let top = words[nw - 1] as f64;
        let next = if nw >= 2 { words[nw - 2] as f64 } else { 0.0 };
        let mant = top + next / 18446744073709551616.0;
        let v = mant * 2f64.powi(exp - 64);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    fn bigint_to_bigfloat(z: &BigInt, p: usize, cc: &mut Consts) -> BigFloat {
        let s = z.abs().to_string();
        let f = BigFloat::parse(&s, Radix::Dec, p, RM, cc);
        if z.is_negative() {
            f.neg()
        } else {
            f
        }
    }

    fn rat_to_bigfloat(r: &Rat, p: usize, cc: &mut Consts) -> BigFloat {
        let num = bigint_to_bigfloat(r.numer(), p, cc);
        let den = bigint_to_bigfloat(r.denom(), p, cc);
        num.div(&den, p, RM)
    }

    pub(super) fn evaluate(x: &CycloElement, prec: usize) -> ComplexApprox {
        let p = prec.max(64) + 32;
        let mut cc = Consts::new().expect("constants cache");
        let n = x.field.conductor;
        let two_pi = cc.pi(p, RM).mul(&BigFloat::from_i8(2, p), p, RM);
        let theta = two_pi.div(&BigFloat::from_u32(n, p), p, RM);
        let mut re = BigFloat::from_i8(0, p);
        let mut im = BigFloat::from_i8(0, p);
        for (k, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = rat_to_bigfloat(c, p, &mut cc);
            if k == 0 {
                re = re.add(&cf, p, RM);
                continue;
            }
            let angle = theta.mul(&BigFloat::from_u64(k as u64, p), p, RM);
            let cos = angle.cos(p, RM, &mut cc);
            let sin = angle.sin(p, RM, &mut cc);
            re = re.add(&cf.mul(&cos, p, RM), p, RM);
            im = im.add(&cf.mul(&sin, p, RM), p, RM);
        }
        ComplexApprox { re, im }
    }
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

    fn int_poly(coeffs: &[i64]) -> Vec<Rat> {
        coeffs.iter().map(|&c| rat_int(c)).collect()
    }

    #[test]
    fn moduli_of_small_conductors() {
        assert_eq!(fld(1).modulus(), &int_poly(&[-1, 1])[..]);
        assert_eq!(fld(2).modulus(), &int_poly(&[1, 1])[..]);
        assert_eq!(fld(4).modulus(), &int_poly(&[1, 0, 1])[..]);
        assert_eq!(fld(12).modulus(), &int_poly(&[1, 0, -1, 0, 1])[..]);
        assert_eq!(
            fld(20).modulus(),
            &int_poly(&[1, 0, -1, 0, 1, 0, -1, 0, 1])[..]
        );
    }

    #[test]
    fn modulus_product_identity() {
        // Independent check: the product of Phi_d over all divisors d of n
        // must reconstruct x^n - 1.
        let mut memo = HashMap::new();
        for n in 1..=24u32 {
            let mut prod = vec![Rat::one()];
            for d in 1..=n {
                if n % d == 0 {
                    let phi = cyclotomic_modulus(d, &mut memo);
                    prod = {
                        let mut out = vec![Rat::zero(); prod.len() + phi.len() - 1];
                        for (i, a) in prod.iter().enumerate() {
                            for (j, b) in phi.iter().enumerate() {
                                out[i + j] += a * b;
                            }
                        }
                        out
                    };
                }
            }
            let mut expect = vec![Rat::zero(); n as usize + 1];
            expect[0] = -Rat::one();
            expect[n as usize] = Rat::one();
            assert_eq!(prod, expect, "divisor product fails for n={}", n);
        }
    }

    #[test]
    fn degrees_match_euler_phi() {
        for (n, phi) in [(1, 1), (2, 1), (3, 2), (4, 2), (12, 4), (20, 8), (36, 12)] {
            assert_eq!(fld(n).degree(), phi, "phi({}) mismatch", n);
        }
    }

    #[test]
    fn root_of_unity_relations() {
        let z = zeta(3, 1);
        let z2 = zeta(3, 2);
        assert!(z.try_mul(&z2).unwrap().is_one());
        assert_eq!(zeta(12, 7), zeta(12, -5));
        let sum = (0..5).fold(CycloElement::zero(&fld(5)), |acc, k| {
            acc.try_add(&zeta(5, k)).unwrap()
        });
        assert!(sum.is_zero());
    }

    #[test]
    fn conjugation_and_reality() {
        assert_eq!(zeta(5, 1).conj(), zeta(5, 4));
        let x = zeta(5, 1).try_add(&zeta(5, 4)).unwrap();
        assert!(x.is_real());
        assert!(!zeta(5, 1).is_real());
        let one_plus = CycloElement::one(&fld(5)).try_add(&zeta(5, 1)).unwrap();
        assert!(!one_plus.is_real());
    }

    #[test]
    fn inverse_and_division() {
        let x = CycloElement::one(&fld(7)).try_add(&zeta(7, 1)).unwrap();
        let prod = x.try_mul(&x.inv().unwrap()).unwrap();
        assert!(prod.is_one());
        assert_eq!(
            CycloElement::zero(&fld(7)).inv(),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn field_mismatch_is_rejected() {
        let err = zeta(3, 1).try_add(&zeta(5, 1)).unwrap_err();
        assert_eq!(err, Error::FieldMismatch(3, 5));
    }

    #[test]
    fn embedding_and_restriction() {
        assert_eq!(zeta(5, 1).embed(20).unwrap(), zeta(20, 4));
        let x = zeta(5, 1)
            .try_add(&CycloElement::from_int(&fld(5), 3))
            .unwrap();
        let lifted = x.embed(20).unwrap();
        assert_eq!(lifted.restrict(5).unwrap(), x);
        assert_eq!(zeta(20, 1).restrict(5), Err(Error::NotInSubfield(5)));
        assert_eq!(zeta(5, 1).embed(7), Err(Error::NotASubfield(5, 7)));
        // Embedding is a ring homomorphism.
        let a = zeta(5, 2);
        let b = zeta(5, 3).scale(&Rat::new(BigInt::from(2), BigInt::from(3)));
        let lhs = a.try_mul(&b).unwrap().embed(20).unwrap();
        let rhs = a.embed(20).unwrap().try_mul(&b.embed(20).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn real_and_imaginary_parts() {
        let (re, im) = zeta(5, 1).re_im();
        assert_eq!(re.conductor(), 20);
        assert!(re.is_real());
        assert!(im.is_real());
        // re^2 + im^2 = |zeta_5|^2 = 1.
        let norm = re
            .try_mul(&re)
            .unwrap()
            .try_add(&im.try_mul(&im).unwrap())
            .unwrap();
        assert!(norm.is_one());
        // For conductor already divisible by 4 the field is unchanged.
        let (re4, im4) = zeta(4, 1).re_im();
        assert!(re4.is_zero());
        assert!(im4.is_one());
    }

    #[test]
    fn numeric_evaluation() {
        let i = zeta(4, 1).to_complex(128);
        assert!(numeric::le_pow2(&i.re, -100));
        let one = BigFloat::from_i8(1, 192);
        assert!(numeric::le_pow2(&i.im.sub(&one, 192, astro_rm()), -100));

        // zeta_6 = 1/2 + i*sqrt(3)/2: the real part is exactly representable.
        let z6 = zeta(6, 1).to_complex(128);
        let half = BigFloat::from_f64(0.5, 192);
        assert!(numeric::le_pow2(&z6.re.sub(&half, 192, astro_rm()), -100));
        let im2 = z6.im.mul(&z6.im, 192, astro_rm());
        let three_q = BigFloat::from_f64(0.75, 192);
        assert!(numeric::le_pow2(&im2.sub(&three_q, 192, astro_rm()), -100));

        let (refl, imfl) = zeta(8, 1).to_complex(128).to_f64s();
        assert!((refl - imfl).abs() < 1e-15);
        assert!((refl * refl - 0.5).abs() < 1e-15);
    }

    use astro_float::BigFloat;
    fn astro_rm() -> astro_float::RoundingMode {
        astro_float::RoundingMode::ToEven
    }

    #[test]
    fn f64_conversion_roundtrip() {
        for v in [0.0, 1.0, -1.5, 0.1, 1e-10, -3.25e8, 0.7071067811865476] {
            let f = BigFloat::from_f64(v, 128);
            let back = numeric::to_f64(&f);
            assert!(
                (back - v).abs() <= v.abs() * 1e-15,
                "roundtrip failed for {}: got {}",
                v,
                back
            );
        }
    }

    #[test]
    fn expression_parsing() {
        let f = fld(12);
        let x = CycloElement::parse(&f, "1/2*z^3 - 2").unwrap();
        let expect = zeta(12, 3)
            .scale(&Rat::new(BigInt::from(1), BigInt::from(2)))
            .try_sub(&CycloElement::from_int(&f, 2))
            .unwrap();
        assert_eq!(x, expect);
        assert_eq!(CycloElement::parse(&f, "z^12").unwrap(), CycloElement::one(&f));
        assert_eq!(CycloElement::parse(&f, "z^-1").unwrap(), zeta(12, 11));
        assert_eq!(CycloElement::parse(&f, "-z"), Ok(zeta(12, 1).neg()));
        assert_eq!(CycloElement::parse(&f, "2*3").unwrap(), CycloElement::from_int(&f, 6));
        assert!(CycloElement::parse(&f, "z^").is_err());
        assert!(CycloElement::parse(&f, "1//2").is_err());
        assert!(CycloElement::parse(&f, "w").is_err());
    }

    #[test]
    fn display_roundtrip() {
        let f = fld(12);
        for text in ["0", "1", "-1", "z", "1/2*z^3 - 2", "z^2 + z + 1", "-2/3*z^2"] {
            let x = CycloElement::parse(&f, text).unwrap();
            let shown = x.to_string();
            let back = CycloElement::parse(&f, &shown).unwrap();
            assert_eq!(back, x, "display text {:?} reparsed differently", shown);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms_hold(
            a in proptest::collection::vec(-6i64..=6, 8),
            b in proptest::collection::vec(-6i64..=6, 8),
            c in proptest::collection::vec(-6i64..=6, 8),
        ) {
            let f = fld(20);
            let mk = |v: &Vec<i64>| {
                CycloElement::from_coeffs(&f, v.iter().map(|&x| rat_int(x)).collect()).unwrap()
            };
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
            prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
            let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
            let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let assoc_l = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
            let assoc_r = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(assoc_l, assoc_r);
        }

        #[test]
        fn conjugation_is_an_involution_and_homomorphism(
            a in proptest::collection::vec(-6i64..=6, 8),
            b in proptest::collection::vec(-6i64..=6, 8),
        ) {
            let f = fld(20);
            let mk = |v: &Vec<i64>| {
                CycloElement::from_coeffs(&f, v.iter().map(|&x| rat_int(x)).collect()).unwrap()
            };
            let (a, b) = (mk(&a), mk(&b));
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(
                a.try_mul(&b).unwrap().conj(),
                a.conj().try_mul(&b.conj()).unwrap()
            );
            let (re, im) = a.re_im();
            let i = CycloElement::zeta_pow(&fld(20), 5);
            let rebuilt = re.try_add(&im.try_mul(&i).unwrap()).unwrap();
            prop_assert_eq!(rebuilt, a.clone());
        }

        #[test]
        fn inverses_cancel(a in proptest::collection::vec(-6i64..=6, 8)) {
            let f = fld(20);
            let x = CycloElement::from_coeffs(&f, a.iter().map(|&v| rat_int(v)).collect()).unwrap();
            prop_assume!(!x.is_zero());
            prop_assert!(x.try_mul(&x.inv().unwrap()).unwrap().is_one());
        }
    }
}
