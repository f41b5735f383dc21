//! Curve families with their genus formulas and affine point counts.
//!
//! Supported families:
//! * linearized Artin–Schreier covers `A(y) = f(x)` with `A(y) = y^{p^h} + c·y`
//!   (`c = -1, h = 1` is the Artin–Schreier curve `y^p - y = f(x)`),
//! * the Hermitian curve `y^q + y = x^{q+1}` over `F_q`,
//! * odd-degree hyperelliptic curves `y^2 = f(x)` in odd characteristic,
//! * Legendre elliptic curves `y^2 = x(x-1)(x-λ)`.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::ffield::{make_field, AdditiveImage, Elem, Embedding, Field, FieldError, Limits};
use crate::poly::Poly;

pub mod parse;

pub use parse::{parse_curve, parse_element, parse_rational, prime_power};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("pole of order {order} is divisible by p = {p} (wild conductor)")]
    WildPoleOrder { order: usize, p: u64 },
    #[error("f is not squarefree")]
    NotSquarefree,
    #[error("hyperelliptic model has even degree {0}; only odd-degree models are supported")]
    EvenDegree(usize),
    #[error("Legendre parameter must avoid 0 and 1")]
    DegenerateLambda,
    #[error("this family needs odd characteristic")]
    NeedsOddCharacteristic,
    #[error("f is constant; the cover is not geometrically irreducible")]
    ConstantFunction,
    #[error("linearized covers with h > 1 only admit f = x^(p^h+1)")]
    UnsupportedLinearized,
    #[error("denominator does not split into linear factors over the base field")]
    NotSplit,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl CurveError {
    pub fn code(&self) -> &'static str {
        match self {
            CurveError::WildPoleOrder { .. } => "WildPoleOrder",
            CurveError::NotSquarefree => "NotSquarefree",
            CurveError::EvenDegree(_) => "EvenDegree",
            CurveError::DegenerateLambda => "DegenerateLambda",
            CurveError::NeedsOddCharacteristic => "NeedsOddCharacteristic",
            CurveError::ConstantFunction => "ConstantFunction",
            CurveError::UnsupportedLinearized => "UnsupportedLinearized",
            CurveError::NotSplit => "NotSplit",
            CurveError::NotPrimePower(_) => "NotPrimePower",
            CurveError::Parse(_) => "Parse",
            CurveError::Field(FieldError::CapExceeded { .. }) => "CapExceeded",
            CurveError::Field(_) => "Field",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    LinearizedAS,
    Hyperelliptic,
    Hermitian,
    Legendre,
}

/// Principal part `sum_{k=1}^{m} c_k (x - b)^{-k}` at a finite pole `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pole {
    pub at: Elem,
    /// `principal[k - 1] = c_k`; the last entry is non-zero.
    pub principal: Vec<Elem>,
}

impl Pole {
    pub fn order(&self) -> usize {
        self.principal.len()
    }
}

/// Where a pole sits on the projective line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    Finite(Elem),
    Infinity,
}

/// A rational function stored as polynomial part plus principal parts at
/// finite poles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub poly: Poly,
    pub poles: Vec<Pole>,
}

impl RationalFunction {
    pub fn polynomial(poly: Poly) -> RationalFunction {
        RationalFunction {
            poly,
            poles: Vec::new(),
        }
    }

    /// Partial-fraction decomposition of `num / den`. Every root of the reduced
    /// denominator must lie in `field`.
    pub fn from_fraction(
        field: &Field,
        num: &Poly,
        den: &Poly,
        limits: &Limits,
    ) -> Result<RationalFunction, CurveError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero.into());
        }
        let g = num.gcd(field, den);
        let (num, _) = num.divrem(field, &g)?;
        let (den, _) = den.divrem(field, &g)?;
        let (poly, rem) = num.divrem(field, &den)?;
        let den_deg = den.degree().unwrap_or(0);
        if den_deg == 0 {
            return Ok(RationalFunction::polynomial(poly));
        }
        let mut poles = Vec::new();
        let mut found = 0;
        for b in field.elements(limits)? {
            let m = den.root_multiplicity(field, &b);
            if m == 0 {
                continue;
            }
            found += m;
            // den = (x - b)^m · rest
            let shifted_den = den.shift(field, &b);
            let rest = Poly::new(shifted_den.coeffs()[m..].to_vec());
            let shifted_rem = rem.shift(field, &b);
            let series = series_div(field, &shifted_rem, &rest, m)?;
            let principal: Vec<Elem> = (1..=m).map(|k| series[m - k].clone()).collect();
            poles.push(Pole { at: b, principal });
            if found == den_deg {
                break;
            }
        }
        if found != den_deg {
            return Err(CurveError::NotSplit);
        }
        Ok(RationalFunction { poly, poles })
    }

    /// Value at `x`, or `None` when `x` is a pole.
    pub fn eval(&self, field: &Field, x: &Elem) -> Option<Elem> {
        let mut acc = self.poly.eval(field, x);
        for pole in &self.poles {
            let diff = field.sub(x, &pole.at);
            let inv = field.inv(&diff).ok()?;
            let mut part = field.zero();
            for c in pole.principal.iter().rev() {
                part = field.mul(&field.add(&part, c), &inv);
            }
            acc = field.add(&acc, &part);
        }
        Some(acc)
    }

    /// Value at infinity when finite (the constant term of the polynomial part).
    pub fn value_at_infinity(&self, field: &Field) -> Option<Elem> {
        match self.poly.degree() {
            Some(d) if d >= 1 => None,
            _ => Some(self.poly.coeff(field, 0)),
        }
    }

    pub fn pole_orders(&self) -> Vec<(Place, usize)> {
        let mut out: Vec<(Place, usize)> = self
            .poles
            .iter()
            .map(|p| (Place::Finite(p.at.clone()), p.order()))
            .collect();
        if let Some(d) = self.poly.degree() {
            if d >= 1 {
                out.push((Place::Infinity, d));
            }
        }
        out
    }

    pub fn is_constant(&self) -> bool {
        self.poles.is_empty() && self.poly.degree().unwrap_or(0) == 0
    }

    pub fn embed(&self, emb: &Embedding) -> RationalFunction {
        RationalFunction {
            poly: self.poly.map_coeffs(|c| emb.apply(c)),
            poles: self
                .poles
                .iter()
                .map(|p| Pole {
                    at: emb.apply(&p.at),
                    principal: p.principal.iter().map(|c| emb.apply(c)).collect(),
                })
                .collect(),
        }
    }

    pub fn display(&self) -> String {
        let mut terms = Vec::new();
        if !self.poly.is_zero() {
            terms.push(self.poly.display("x"));
        }
        for pole in &self.poles {
            let base = if pole.at.is_zero() {
                "x".to_string()
            } else {
                format!("(x-({}))", pole.at)
            };
            for (k, c) in pole.principal.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let cs = c.to_string();
                let cs = if cs.contains('+') { format!("({cs})") } else { cs };
                let den = if k == 0 {
                    base.clone()
                } else {
                    format!("{base}^{}", k + 1)
                };
                terms.push(format!("{cs}/{den}"));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// First `n` coefficients of the power series `a / b`, with `b(0) != 0`.
fn series_div(field: &Field, a: &Poly, b: &Poly, n: usize) -> Result<Vec<Elem>, CurveError> {
    let b0_inv = field.inv(&b.coeff(field, 0))?;
    let mut out: Vec<Elem> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = a.coeff(field, k);
        for (j, o) in out.iter().enumerate() {
            acc = field.sub(&acc, &field.mul(o, &b.coeff(field, k - j)));
        }
        out.push(field.mul(&acc, &b0_inv));
    }
    Ok(out)
}

/// Additive polynomial `A(y) = y^{p^h} + c·y` with `c` a residue mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Additive {
    pub h: u32,
    pub c: u64,
}

impl Additive {
    pub fn apply(&self, field: &Field, y: &Elem) -> Elem {
        let lead = field.frobenius_pow(y, self.h as usize);
        field.add(&lead, &field.scale(y, self.c))
    }

    fn is_artin_schreier(&self, p: u64) -> bool {
        self.h == 1 && self.c == p - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveData {
    Linearized { additive: Additive, f: RationalFunction },
    Hyperelliptic { f: Poly },
    Legendre { lambda: Elem },
}

/// A validated curve over `F_q` together with its genus.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    family: Family,
    base: Field,
    data: CurveData,
    genus: u64,
}

impl CurveSpec {
    /// `y^p - y = f(x)`.
    pub fn artin_schreier(base: &Field, f: RationalFunction) -> Result<CurveSpec, CurveError> {
        let additive = Additive {
            h: 1,
            c: base.p() - 1,
        };
        Self::build(Family::LinearizedAS, base, CurveData::Linearized { additive, f })
    }

    /// `y^{p^h} + y = f(x)`.
    pub fn linearized(base: &Field, h: u32, f: RationalFunction) -> Result<CurveSpec, CurveError> {
        let additive = Additive { h, c: 1 };
        Self::build(Family::LinearizedAS, base, CurveData::Linearized { additive, f })
    }

    /// The Hermitian curve `y^q + y = x^{q+1}` over `F_q`.
    pub fn hermitian(q: u64) -> Result<CurveSpec, CurveError> {
        let (p, r) = prime_power(q)?;
        let base = make_field(p, r)?;
        let f = RationalFunction::polynomial(Poly::monomial(&base, base.one(), q as usize + 1));
        let additive = Additive { h: r as u32, c: 1 };
        Self::build(Family::Hermitian, &base, CurveData::Linearized { additive, f })
    }

    pub fn hyperelliptic(base: &Field, f: Poly) -> Result<CurveSpec, CurveError> {
        Self::build(Family::Hyperelliptic, base, CurveData::Hyperelliptic { f })
    }

    pub fn legendre(base: &Field, lambda: Elem) -> Result<CurveSpec, CurveError> {
        Self::build(Family::Legendre, base, CurveData::Legendre { lambda })
    }

    fn build(family: Family, base: &Field, data: CurveData) -> Result<CurveSpec, CurveError> {
        let mut spec = CurveSpec {
            family,
            base: base.clone(),
            data,
            genus: 0,
        };
        spec.genus = validate(&spec)?;
        Ok(spec)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn data(&self) -> &CurveData {
        &self.data
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    /// `q = p^r`.
    pub fn q(&self) -> u64 {
        self.base.size().expect("base field size fits in u64")
    }

    /// Branch points of the cyclic cover to the `x`-line: every pole of `f`.
    pub fn branch_points(&self) -> Vec<(Place, usize)> {
        match &self.data {
            CurveData::Linearized { f, .. } => f.pole_orders(),
            _ => Vec::new(),
        }
    }
}

/// The polynomial `f` of a hyperelliptic-type model `y^2 = f(x)`.
fn square_model(base: &Field, data: &CurveData) -> Option<Poly> {
    match data {
        CurveData::Hyperelliptic { f } => Some(f.clone()),
        CurveData::Legendre { lambda } => {
            let x = Poly::x(base);
            let xm1 = x.sub(base, &Poly::constant(base.one()));
            let xml = x.sub(base, &Poly::constant(lambda.clone()));
            Some(x.mul(base, &xm1).mul(base, &xml))
        }
        CurveData::Linearized { .. } => None,
    }
}

/// Enforces the family invariants and returns the genus.
pub fn validate(spec: &CurveSpec) -> Result<u64, CurveError> {
    let base = &spec.base;
    let p = base.p();
    match &spec.data {
        CurveData::Linearized { additive, f } => {
            if f.is_constant() {
                return Err(CurveError::ConstantFunction);
            }
            let orders = f.pole_orders();
            if let Some((_, d)) = orders.iter().find(|(_, d)| (*d as u64).is_multiple_of(p)) {
                return Err(CurveError::WildPoleOrder { order: *d, p });
            }
            let ph = crate::ffield::checked_pow(p, additive.h)
                .ok_or(CurveError::UnsupportedLinearized)?;
            if additive.h > 1 {
                let expected = Poly::monomial(base, base.one(), ph as usize + 1);
                if !f.poles.is_empty() || f.poly != expected {
                    return Err(CurveError::UnsupportedLinearized);
                }
            }
            let total: u64 = orders.iter().map(|(_, d)| *d as u64 + 1).sum();
            // 2g = (p^h - 1)(sum (d_P + 1) - 2)
            let two_g = (ph - 1) * (total - 2);
            Ok(two_g / 2)
        }
        CurveData::Hyperelliptic { f } => {
            if p == 2 {
                return Err(CurveError::NeedsOddCharacteristic);
            }
            let d = f.degree().unwrap_or(0);
            if d == 0 {
                return Err(CurveError::ConstantFunction);
            }
            if d % 2 == 0 {
                return Err(CurveError::EvenDegree(d));
            }
            if f.gcd(base, &f.derivative(base)).degree() != Some(0) {
                return Err(CurveError::NotSquarefree);
            }
            Ok((d as u64 - 1) / 2)
        }
        CurveData::Legendre { lambda } => {
            if p == 2 {
                return Err(CurveError::NeedsOddCharacteristic);
            }
            if lambda.is_zero() || *lambda == base.one() {
                return Err(CurveError::DegenerateLambda);
            }
            Ok(1)
        }
    }
}

pub fn genus(spec: &CurveSpec) -> u64 {
    spec.genus
}

/// Counts elements of `field` with a per-element weight, splitting the index
/// range across worker threads.
pub fn par_weighted_count<F>(field: &Field, limits: &Limits, weight: F) -> Result<u64, FieldError>
where
    F: Fn(&Elem) -> u64 + Sync,
{
    const CHUNK: u64 = 1 << 12;
    let n = field.check_enumerable(limits)?;
    let chunks = n.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(n);
            field.elements_range(start, end).map(|x| weight(&x)).sum::<u64>()
        })
        .sum())
}

/// The field `F_{q^s}` and the embedding of the base field into it.
pub fn extension(spec: &CurveSpec, s: u32) -> Result<(Field, Embedding), CurveError> {
    let target = make_field(spec.p(), spec.base.degree() * s as usize)?;
    let emb = Embedding::new(&spec.base, &target)?;
    Ok((target, emb))
}

/// Exact number of affine points over `F_{q^s}`.
///
/// Linearized covers use the additive-map method: each `x` away from the poles
/// contributes the kernel size of `A` when `f(x)` lies in the image of `A`.
/// Square models count `y` with `y^2 = f(x)` from a table of squares.
pub fn affine_count(spec: &CurveSpec, s: u32, limits: &Limits) -> Result<u64, CurveError> {
    let (target, emb) = extension(spec, s)?;
    target.check_enumerable(limits)?;
    let p = spec.p();
    match &spec.data {
        CurveData::Linearized { additive, f } => {
            let f = f.embed(&emb);
            let count = if additive.is_artin_schreier(p) {
                // y^p - y is onto the trace-zero hyperplane with kernel F_p
                par_weighted_count(&target, limits, |x| match f.eval(&target, x) {
                    Some(z) if target.trace_to_prime(&z) == 0 => p,
                    _ => 0,
                })?
            } else {
                let image = AdditiveImage::new(&target, additive.h, additive.c);
                let kappa = image.kernel_size();
                par_weighted_count(&target, limits, |x| match f.eval(&target, x) {
                    Some(z) if image.contains(&z) => kappa,
                    _ => 0,
                })?
            };
            Ok(count)
        }
        data => {
            let f = square_model(&spec.base, data)
                .expect("square model")
                .map_coeffs(|c| emb.apply(c));
            let squares = square_counts(&target, limits)?;
            Ok(par_weighted_count(&target, limits, |x| {
                let z = f.eval(&target, x);
                u64::from(squares[z.index(p) as usize])
            })?)
        }
    }
}

/// `counts[i]` is the number of `y` with `y^2` equal to the element of index `i`.
fn square_counts(field: &Field, limits: &Limits) -> Result<Vec<u8>, CurveError> {
    let n = field.check_enumerable(limits)?;
    let p = field.p();
    let mut counts = vec![0u8; n as usize];
    for y in field.elements(limits)? {
        counts[field.square(&y).index(p) as usize] += 1;
    }
    Ok(counts)
}

/// Points of the smooth model outside the affine chart over `F_{q^s}`: one
/// point over each finite pole of `f` and the fiber over `x = ∞`.
pub fn points_at_infinity(spec: &CurveSpec, s: u32) -> Result<u64, CurveError> {
    match &spec.data {
        CurveData::Linearized { additive, f } => {
            let finite = f.poles.len() as u64;
            let infinite = match f.value_at_infinity(&spec.base) {
                None => 1,
                Some(c) => {
                    let (target, emb) = extension(spec, s)?;
                    let c = emb.apply(&c);
                    if additive.is_artin_schreier(spec.p()) {
                        if target.trace_to_prime(&c) == 0 {
                            spec.p()
                        } else {
                            0
                        }
                    } else {
                        let image = AdditiveImage::new(&target, additive.h, additive.c);
                        if image.contains(&c) {
                            image.kernel_size()
                        } else {
                            0
                        }
                    }
                }
            };
            Ok(finite + infinite)
        }
        _ => Ok(1),
    }
}

/// `N_s = #X(F_{q^s})` for the smooth projective model.
pub fn point_count(spec: &CurveSpec, s: u32, limits: &Limits) -> Result<u64, CurveError> {
    Ok(affine_count(spec, s, limits)? + points_at_infinity(spec, s)?)
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.q();
        match (&self.family, &self.data) {
            (Family::Hermitian, _) => write!(f, "hermitian q={q}"),
            (_, CurveData::Linearized { additive, f: rf }) => {
                if additive.is_artin_schreier(self.p()) {
                    write!(f, "as p={} q={q} f={}", self.p(), rf.display())
                } else {
                    write!(f, "lin h={} q={q} f={}", additive.h, rf.display())
                }
            }
            (_, CurveData::Hyperelliptic { f: poly }) => {
                write!(f, "hyp q={q} f={}", poly.display("x"))
            }
            (_, CurveData::Legendre { lambda }) => {
                write!(f, "legendre p={} q={q} lambda={lambda}", self.p())
            }
        }
    }
}
