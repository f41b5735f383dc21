//! Supersingular Artin–Schreier curves built from the base-p digits of `δ`,
//! the Deuring–Shafarevich formula, Igusa's count of supersingular Legendre
//! curves and a catalog of known examples.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::curves::{point_count, prime_power, CurveError, CurveSpec, RationalFunction};
use crate::ffield::{checked_pow, is_prime, make_field, Embedding, FieldError, Limits};
use crate::npoly::{newton_polygon, NpError};
use crate::poly::Poly;
use crate::zeta::{l_polynomial, ZetaError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("δ must be positive")]
    ZeroDelta,
    #[error("base-{p} digit {digit} of δ = {delta} is not 0 or 1")]
    BadDigits { p: u64, delta: u64, digit: u64 },
    #[error("genus identity fails: runs give {sum}, target {target}")]
    IdentityFailure { sum: BigUint, target: BigUint },
    #[error("run invariant fails: {0}")]
    RunInvariant(String),
    #[error("instantiation needs {needed} factors or q^g = {size}, over the cap {cap}")]
    CapExceeded { needed: String, size: String, cap: u64 },
    #[error("factor {curve} is not supersingular: {polygon}")]
    NotSupersingular { curve: String, polygon: String },
    #[error("Deuring-Shafarevich data inconsistent: {0}")]
    InconsistentBranchData(String),
    #[error("needs an odd prime, got {0}")]
    NeedsOddPrime(u64),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Np(#[from] NpError),
}

impl From<FieldError> for ConstructError {
    fn from(e: FieldError) -> Self {
        ConstructError::Curve(e.into())
    }
}

impl ConstructError {
    pub fn code(&self) -> &'static str {
        match self {
            ConstructError::NotPrime(_) => "NotPrime",
            ConstructError::ZeroDelta => "ZeroDelta",
            ConstructError::BadDigits { .. } => "BadDigits",
            ConstructError::IdentityFailure { .. } => "IdentityFailure",
            ConstructError::RunInvariant(_) => "RunInvariant",
            ConstructError::CapExceeded { .. } => "CapExceeded",
            ConstructError::NotSupersingular { .. } => "NotSupersingular",
            ConstructError::InconsistentBranchData(_) => "InconsistentBranchData",
            ConstructError::NeedsOddPrime(_) => "NeedsOddPrime",
            ConstructError::Curve(e) => e.code(),
            ConstructError::Zeta(e) => e.code(),
            ConstructError::Np(e) => e.code(),
        }
    }
}

/// A maximal block of 1-digits of `δ`: exponents `s, ..., s + r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub s: u32,
    pub r: u32,
    /// `d = r + 1`, the dimension of `L_i`.
    pub d: u32,
    /// `u = (s + 1) - Σ_{j<i} (r_j + 1)`; elements of `L_i` have degree `p^u`.
    pub u: u32,
    /// `(p^d - 1) Π_{j<i} p^{d_j}`.
    pub factor_count: BigUint,
    /// `p^u (p - 1) / 2`.
    pub factor_genus: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CkpPlan {
    pub p: u64,
    pub delta: u64,
    /// Base-p digits, least significant first.
    pub digits: Vec<u64>,
    pub runs: Vec<Run>,
    /// `δ p (p-1)^2 / 2`.
    pub genus_target: BigUint,
}

impl CkpPlan {
    /// `lcm` of the run dimensions: the factor curves live over `F_{p^D}`.
    pub fn base_degree(&self) -> u32 {
        self.runs.iter().fold(1, |acc, r| acc.lcm(&r.d))
    }

    pub fn total_factors(&self) -> BigUint {
        self.runs.iter().map(|r| &r.factor_count).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p,
            "delta": self.delta,
            "digits": self.digits,
            "genus": self.genus_target.to_string(),
            "base_degree": self.base_degree(),
            "runs": self.runs.iter().map(|r| json!({
                "s": r.s, "r": r.r, "d": r.d, "u": r.u,
                "factor_count": r.factor_count.to_string(),
                "factor_genus": r.factor_genus.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Splits `δ` into runs of 1-digits and checks the genus bookkeeping.
pub fn ckp_plan(p: u64, delta: u64) -> Result<CkpPlan, ConstructError> {
    if !is_prime(p) {
        return Err(ConstructError::NotPrime(p));
    }
    if delta == 0 {
        return Err(ConstructError::ZeroDelta);
    }
    let mut digits = Vec::new();
    let mut n = delta;
    while n > 0 {
        digits.push(n % p);
        n /= p;
    }
    if let Some(&digit) = digits.iter().find(|&&d| d > 1) {
        return Err(ConstructError::BadDigits { p, delta, digit });
    }
    let pb = BigUint::from(p);
    let mut runs: Vec<Run> = Vec::new();
    let mut used = 0u32; // Σ_{j<i} d_j
    let mut k = 0usize;
    while k < digits.len() {
        if digits[k] == 0 {
            k += 1;
            continue;
        }
        let s = k;
        while k < digits.len() && digits[k] == 1 {
            k += 1;
        }
        let r = (k - s - 1) as u32;
        let d = r + 1;
        let u = s as u32 + 1 - used;
        let factor_count = (pb.pow(d) - 1u32) * pb.pow(used);
        let factor_genus = pb.pow(u) * (p - 1) / 2u32;
        runs.push(Run {
            s: s as u32,
            r,
            d,
            u,
            factor_count,
            factor_genus,
        });
        used += d;
    }
    for w in runs.windows(2) {
        if w[1].s < w[0].s + w[0].r + 2 {
            return Err(ConstructError::RunInvariant(format!(
                "s = {} follows a run ending at {}",
                w[1].s,
                w[0].s + w[0].r
            )));
        }
        if w[1].u < w[0].u + 1 {
            return Err(ConstructError::RunInvariant(format!(
                "u = {} does not exceed {}",
                w[1].u, w[0].u
            )));
        }
    }
    let genus_target = BigUint::from(delta) * p * (p - 1) * (p - 1) / 2u32;
    let sum: BigUint = runs.iter().map(|r| &r.factor_count * &r.factor_genus).sum();
    if sum != genus_target {
        return Err(ConstructError::IdentityFailure {
            sum,
            target: genus_target,
        });
    }
    let plan = CkpPlan {
        p,
        delta,
        digits,
        runs,
        genus_target,
    };
    let expected = pb.pow(used) - 1u32;
    if plan.total_factors() != expected {
        return Err(ConstructError::RunInvariant("factor counts do not partition".into()));
    }
    Ok(plan)
}

/// A factor curve `y^p - y = x f(x)` with the run that carries its top term.
#[derive(Debug, Clone)]
pub struct Factor {
    pub run: usize,
    pub spec: CurveSpec,
}

/// Emits every `C_f` for non-zero `f ∈ ⊕ L_i`, `L_i = F_{p^{d_i}} x^{p^{u_i}}`.
/// Refuses when the factor count or any `q^g` exceeds the cap.
pub fn instantiate_factors(plan: &CkpPlan, limits: &Limits) -> Result<Vec<Factor>, ConstructError> {
    let p = plan.p;
    let big_d = plan.base_degree();
    let total = plan.total_factors();
    let q = checked_pow(p, big_d);
    let top_genus = plan.runs.last().map(|r| r.factor_genus.clone()).unwrap_or_default();
    let size = q.and_then(|q| {
        let g: u32 = top_genus.clone().try_into().ok()?;
        checked_pow(q, g)
    });
    let cap_err = || ConstructError::CapExceeded {
        needed: total.to_string(),
        size: size.map_or_else(|| "overflow".to_string(), |s| s.to_string()),
        cap: limits.enum_cap,
    };
    match size {
        Some(s) if s <= limits.enum_cap && total <= BigUint::from(limits.enum_cap) => {}
        _ => return Err(cap_err()),
    }
    let base = make_field(p, big_d as usize)?;
    // F_{p^{d_i}} inside the base field, in canonical order of the subfield
    let coeff_sets = plan
        .runs
        .iter()
        .map(|run| {
            let sub = make_field(p, run.d as usize)?;
            let emb = Embedding::new(&sub, &base)?;
            Ok(sub.elements(limits)?.map(|c| emb.apply(&c)).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>, FieldError>>()?;
    let degrees: Vec<usize> = plan
        .runs
        .iter()
        .map(|r| checked_pow(p, r.u).expect("degree fits") as usize + 1)
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; plan.runs.len()];
    loop {
        // odometer over (c_1, ..., c_k), first coordinate fastest
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < coeff_sets[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
        let top = (0..choice.len()).rev().find(|&j| choice[j] != 0).expect("non-zero tuple");
        let mut terms = vec![base.zero(); degrees[top] + 1];
        for (j, &c) in choice.iter().enumerate() {
            terms[degrees[j]] = coeff_sets[j][c].clone();
        }
        let f = RationalFunction::polynomial(Poly::new(terms));
        out.push(Factor {
            run: top,
            spec: CurveSpec::artin_schreier(&base, f)?,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub curve: String,
    pub g: u64,
    pub p_rank: u64,
    pub supersingular: bool,
    pub polygon: String,
}

/// Computes `L` and the Newton polygon of every factor in parallel; any
/// factor that is not supersingular is an error.
pub fn verify_supersingular_factors(
    factors: &[Factor],
    limits: &Limits,
) -> Result<Vec<FactorReport>, ConstructError> {
    let reports = factors
        .par_iter()
        .map(|f| {
            let l = l_polynomial(&f.spec, limits)?;
            let np = newton_polygon(&l)?;
            Ok(FactorReport {
                curve: f.spec.to_string(),
                g: l.genus(),
                p_rank: np.p_rank(),
                supersingular: np.is_supersingular(),
                polygon: np.text(),
            })
        })
        .collect::<Result<Vec<_>, ConstructError>>()?;
    if let Some(bad) = reports.iter().find(|r| !r.supersingular) {
        return Err(ConstructError::NotSupersingular {
            curve: bad.curve.clone(),
            polygon: bad.polygon.clone(),
        });
    }
    Ok(reports)
}

/// `f_X = |H|(f_Z - 1) + Σ (e_x - 1) + 1` for a Galois cover with group of
/// order `|H| = p^n`.
pub fn ds_p_rank(h: u64, f_z: u64, ramification: &[u64]) -> Result<u64, ConstructError> {
    let bad = |m: String| ConstructError::InconsistentBranchData(m);
    let (p, _) = prime_power(h).map_err(|_| bad(format!("|H| = {h} is not a prime power")))?;
    for &e in ramification {
        let is_power = e >= 1 && prime_power(e).map_or(e == 1, |(q, _)| q == p);
        if !is_power || !h.is_multiple_of(e) {
            return Err(bad(format!("e = {e} is not a power of {p} dividing {h}")));
        }
    }
    let f = h as i128 * (f_z as i128 - 1)
        + ramification.iter().map(|&e| e as i128 - 1).sum::<i128>()
        + 1;
    u64::try_from(f).map_err(|_| bad(format!("p-rank would be {f}")))
}

/// Supersingular Legendre curves over `F_{p²}`: the number of `λ` and the
/// number of distinct `j(λ) = 2^8 (λ²-λ+1)³ / (λ²(λ-1)²)`.
pub fn igusa_counts(p: u64, limits: &Limits) -> Result<(u64, u64), ConstructError> {
    if !is_prime(p) {
        return Err(ConstructError::NotPrime(p));
    }
    if p == 2 {
        return Err(ConstructError::NeedsOddPrime(p));
    }
    let f = make_field(p, 2)?;
    let pb = p as i128;
    let mut lambdas = 0u64;
    let mut js = BTreeSet::new();
    for lambda in f.elements(limits)? {
        if lambda.is_zero() || lambda == f.one() {
            continue;
        }
        let spec = CurveSpec::legendre(&f, lambda.clone())?;
        let n = point_count(&spec, 1, limits)? as i128;
        let a = (p * p + 1) as i128 - n;
        if a % pb != 0 {
            continue;
        }
        lambdas += 1;
        let l2 = f.square(&lambda);
        let num = f.sub(&f.add(&l2, &f.one()), &lambda);
        let num = f.mul(&f.from_prime(256 % p), &f.mul(&f.square(&num), &num));
        let lm1 = f.sub(&lambda, &f.one());
        let den = f.mul(&l2, &f.square(&lm1));
        js.insert(f.div(&num, &den)?.index(p));
    }
    Ok((lambdas, js.len() as u64))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogCurve {
    pub name: String,
    pub curve: String,
    pub g: u64,
    pub p_rank: u64,
    pub supersingular: bool,
    pub polygon: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_polynomial: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IgusaEntry {
    pub p: u64,
    pub lambda_count: u64,
    pub iso_classes: u64,
}

/// `y^2 = (cubic)` is supersingular over `F_p` iff `p ≡ residue (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticRule {
    pub name: String,
    pub model: String,
    pub curve_template: String,
    pub min_p: u64,
    pub modulus: u64,
    pub residue: u64,
}

impl EllipticRule {
    pub fn curve_for(&self, p: u64) -> String {
        self.curve_template.replace("{p}", &p.to_string())
    }

    pub fn predicts_supersingular(&self, p: u64) -> bool {
        p % self.modulus == self.residue
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub version: u32,
    pub curves: Vec<CatalogCurve>,
    pub igusa: Vec<IgusaEntry>,
    pub elliptic_rules: Vec<EllipticRule>,
}

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

pub fn catalog() -> Catalog {
    serde_json::from_str(CATALOG_JSON).expect("embedded catalog is valid")
}

pub fn catalog_json() -> &'static str {
    CATALOG_JSON
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plans() {
        let p = ckp_plan(2, 3).unwrap();
        assert_eq!(p.runs.len(), 1);
        assert_eq!((p.runs[0].s, p.runs[0].r, p.runs[0].u), (0, 1, 1));
        assert_eq!(p.genus_target, BigUint::from(3u32));
        let p = ckp_plan(3, 10).unwrap();
        let shape: Vec<(u32, u32, u32)> = p.runs.iter().map(|r| (r.s, r.r, r.u)).collect();
        assert_eq!(shape, vec![(0, 0, 1), (2, 0, 2)]);
        assert_eq!(p.genus_target, BigUint::from(60u32));
        assert!(matches!(ckp_plan(3, 2), Err(ConstructError::BadDigits { digit: 2, .. })));
        assert!(matches!(ckp_plan(4, 1), Err(ConstructError::NotPrime(4))));
    }

    #[test]
    fn small_instantiations() {
        let lim = Limits::default();
        let names = |p, d| -> Vec<String> {
            instantiate_factors(&ckp_plan(p, d).unwrap(), &lim)
                .unwrap()
                .iter()
                .map(|f| f.spec.to_string())
                .collect()
        };
        assert_eq!(names(2, 1), vec!["as p=2 q=2 f=x^3"]);
        assert_eq!(names(2, 2), vec!["as p=2 q=2 f=x^5"]);
        assert_eq!(names(3, 1), vec!["as p=3 q=3 f=x^4", "as p=3 q=3 f=2*x^4"]);
        let three = instantiate_factors(&ckp_plan(2, 3).unwrap(), &lim).unwrap();
        assert_eq!(three.len(), 3);
        assert!(three.iter().all(|f| f.spec.genus() == 1 && f.spec.q() == 4));
    }

    #[test]
    fn deuring_shafarevich() {
        assert_eq!(ds_p_rank(3, 0, &[3]).unwrap(), 0);
        assert_eq!(ds_p_rank(5, 0, &[5, 5, 5]).unwrap(), 8);
        assert_eq!(ds_p_rank(2, 1, &[]).unwrap(), 1);
        assert!(ds_p_rank(3, 0, &[]).is_err());
        assert!(ds_p_rank(4, 0, &[3]).is_err());
    }

    #[test]
    fn igusa_small() {
        let lim = Limits::default();
        assert_eq!(igusa_counts(3, &lim).unwrap(), (1, 1));
        assert_eq!(igusa_counts(5, &lim).unwrap(), (2, 1));
        assert!(igusa_counts(2, &lim).is_err());
    }

    #[test]
    fn catalog_loads() {
        let c = catalog();
        assert_eq!(c.version, 1);
        assert_eq!(c.curves.len(), 5);
        assert_eq!(c.igusa.len(), 5);
    }
}
