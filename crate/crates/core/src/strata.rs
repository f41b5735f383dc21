//! Dimension counts for Newton polygon and p-rank strata of `A_g`, `M_g`
//! and `H_g`.

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::npoly::{xi_plus_e, NewtonPolygon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("{0} is not a two-slope polygon n/(m+n), m/(m+n) with m > n")]
    NotTwoSlope(String),
    #[error("p-rank {f} out of range for genus {g}")]
    PRankOutOfRange { g: u64, f: u64 },
    #[error("curve strata need g >= 2, got {0}")]
    GenusTooSmall(u64),
    #[error("codimension of {xi} changes at e = {e}: {before} -> {after}")]
    CodimChanged {
        xi: String,
        e: u64,
        before: u64,
        after: u64,
    },
}

impl StrataError {
    pub fn code(&self) -> &'static str {
        match self {
            StrataError::NotTwoSlope(_) => "NotTwoSlope",
            StrataError::PRankOutOfRange { .. } => "PRankOutOfRange",
            StrataError::GenusTooSmall(_) => "GenusTooSmall",
            StrataError::CodimChanged { .. } => "CodimChanged",
        }
    }
}

/// `g(g+1)/2`.
pub fn dim_ag(g: u64) -> u64 {
    g * (g + 1) / 2
}

/// `#{(x, y) ∈ Z² : 1 ≤ x ≤ g, ξ(x) ≤ y < x}`.
pub fn sdim(xi: &NewtonPolygon) -> u64 {
    (1..=xi.genus() as i64)
        .map(|x| {
            let lo = xi.hull_at(Rational64::from(x)).ceil().to_integer();
            (x - lo).max(0) as u64
        })
        .sum()
}

pub fn codim(xi: &NewtonPolygon) -> u64 {
    dim_ag(xi.genus()) - sdim(xi)
}

/// `(m, n)` for a polygon with slopes `n/(m+n)` and `m/(m+n)` only.
pub fn two_slope_shape(xi: &NewtonPolygon) -> Option<(i64, i64)> {
    match xi.segments() {
        [(lo, _), (hi, _)] => {
            let n = *lo.numer();
            let m = *hi.numer();
            (lo.denom() == hi.denom() && m + n == *lo.denom() && m > n && m.gcd(&n) == 1)
                .then_some((m, n))
        }
        _ => None,
    }
}

/// `c(ξ) = #{(x, y) : 0 ≤ x ≤ g, (n/(m+n))x ≤ y < (m/(m+n))x}`.
pub fn central_leaf_dim(xi: &NewtonPolygon) -> Result<u64, StrataError> {
    let (m, n) = two_slope_shape(xi).ok_or_else(|| StrataError::NotTwoSlope(xi.text()))?;
    let h = m + n;
    Ok((0..=xi.genus() as i64)
        .map(|x| {
            // integers y with ceil(n x / h) ≤ y < m x / h
            let lo = Integer::div_ceil(&(n * x), &h);
            let hi = Integer::div_ceil(&(m * x), &h);
            (hi - lo).max(0) as u64
        })
        .sum())
}

/// `i(ξ) = sdim(ξ) - c(ξ)`.
pub fn isogeny_leaf_dim(xi: &NewtonPolygon) -> Result<u64, StrataError> {
    Ok(sdim(xi) - central_leaf_dim(xi)?)
}

/// `δ_g = g(g+1)/2 - ⌊g²/4⌋`.
pub fn delta_g(g: u64) -> u64 {
    dim_ag(g) - g * g / 4
}

/// Least `g ≥ 2` with `δ_g > 3g - 3 = dim M_g`.
pub fn first_g_exceeding_moduli_dim() -> u64 {
    (2..).find(|&g| delta_g(g) > 3 * g - 3).expect("δ_g grows quadratically")
}

/// Dimensions of the p-rank `f` strata in `A_g`, `M_g` and `H_g`.
pub fn p_rank_stratum_dims(g: u64, f: u64) -> Result<(u64, u64, u64), StrataError> {
    if g < 2 {
        return Err(StrataError::GenusTooSmall(g));
    }
    if f > g {
        return Err(StrataError::PRankOutOfRange { g, f });
    }
    Ok((dim_ag(g) - (g - f), 2 * g - 3 + f, g - 1 + f))
}

/// Codimension of `ξ^{+e}` in `A_{g+e}` for `e = 0..=e_max`; errors on the
/// first value that differs from the codimension of `ξ`.
pub fn codim_invariance_check(xi: &NewtonPolygon, e_max: u64) -> Result<Vec<u64>, StrataError> {
    let base = codim(xi);
    (0..=e_max)
        .map(|e| {
            let c = codim(&xi_plus_e(xi, e));
            if c == base {
                Ok(c)
            } else {
                Err(StrataError::CodimChanged {
                    xi: xi.text(),
                    e,
                    before: base,
                    after: c,
                })
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub polygon: String,
    pub g: u64,
    pub sdim: u64,
    pub codim: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u64>,
}

impl StratumReport {
    pub fn of(xi: &NewtonPolygon) -> StratumReport {
        let c = central_leaf_dim(xi).ok();
        let s = sdim(xi);
        StratumReport {
            polygon: xi.text(),
            g: xi.genus(),
            sdim: s,
            codim: dim_ag(xi.genus()) - s,
            c,
            i: c.map(|c| s - c),
        }
    }
}

/// The two-slope examples `g = 4, {1/4, 3/4}` and `g = 5, {2/5, 3/5}`.
pub fn leaf_examples() -> Vec<StratumReport> {
    [(1, 4, 4), (2, 5, 5)]
        .iter()
        .map(|&(n, h, mult)| {
            let xi = NewtonPolygon::from_slopes(&[
                (Rational64::new(n, h), mult),
                (Rational64::new(h - n, h), mult),
            ])
            .expect("valid two-slope polygon");
            StratumReport::of(&xi)
        })
        .collect()
}

pub fn render_reports(rows: &[StratumReport]) -> String {
    let width = rows.iter().map(|r| r.polygon.chars().count()).max().unwrap_or(0).max(7);
    let mut out = vec![format!("{:<width$}  g  sdim  codim  c  i", "polygon")];
    for r in rows {
        let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        let pad = width - r.polygon.chars().count();
        out.push(format!(
            "{}{}  {}  {:>4}  {:>5}  {}  {}",
            r.polygon,
            " ".repeat(pad),
            r.g,
            r.sdim,
            r.codim,
            opt(r.c),
            opt(r.i)
        ));
    }
    out.join("\n")
}
