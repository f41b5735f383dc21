//! Newton polygons of L-polynomials and of abelian varieties.
//!
//! A polygon is stored as its segments `(slope, width)` with strictly
//! increasing slopes. All coordinates are exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde_json::json;
use thiserror::Error;

use crate::zeta::LPolynomial;

/// Largest genus accepted by [`enumerate_symmetric`].
pub const MAX_ENUM_GENUS: u64 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NpError {
    #[error("hull vertex ({x}, {y}) is not a lattice point")]
    NonIntegralBreakPoint { x: u64, y: String },
    #[error("slope multiset is not symmetric under λ ↔ 1-λ")]
    AsymmetricSlopes,
    #[error("polygons of different genus ({0} and {1})")]
    GenusMismatch(u64, u64),
    #[error("enumeration is capped at g = {max}, asked for {g}")]
    EnumerationCap { g: u64, max: u64 },
    #[error("invalid polygon: {0}")]
    Invalid(String),
    #[error("cannot parse polygon: {0}")]
    Parse(String),
}

impl NpError {
    pub fn code(&self) -> &'static str {
        match self {
            NpError::NonIntegralBreakPoint { .. } => "NonIntegralBreakPoint",
            NpError::AsymmetricSlopes => "AsymmetricSlopes",
            NpError::GenusMismatch(..) => "GenusMismatch",
            NpError::EnumerationCap { .. } => "EnumerationCap",
            NpError::Invalid(_) => "InvalidPolygon",
            NpError::Parse(_) => "Parse",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    g: u64,
    segments: Vec<(Rational64, u64)>,
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

impl NewtonPolygon {
    /// Builds a polygon from `(slope, multiplicity)` pairs in any order.
    /// Checks height `2g`, slopes in `[0,1]`, lattice breaks and symmetry.
    pub fn from_slopes(slopes: &[(Rational64, u64)]) -> Result<NewtonPolygon, NpError> {
        let mut segs: Vec<(Rational64, u64)> = Vec::new();
        let mut sorted: Vec<(Rational64, u64)> =
            slopes.iter().copied().filter(|&(_, m)| m > 0).collect();
        sorted.sort();
        for (s, m) in sorted {
            if s < Rational64::zero() || s > Rational64::one() {
                return Err(NpError::Invalid(format!("slope {s} outside [0,1]")));
            }
            match segs.last_mut() {
                Some(last) if last.0 == s => last.1 += m,
                _ => segs.push((s, m)),
            }
        }
        let width: u64 = segs.iter().map(|s| s.1).sum();
        if !width.is_multiple_of(2) {
            return Err(NpError::Invalid(format!("odd total width {width}")));
        }
        let np = NewtonPolygon {
            g: width / 2,
            segments: segs,
        };
        np.check()?;
        Ok(np)
    }

    fn check(&self) -> Result<(), NpError> {
        let mut x = 0u64;
        let mut y = Rational64::zero();
        for &(s, w) in &self.segments {
            x += w;
            y += s * Rational64::from(w as i64);
            if !y.is_integer() {
                return Err(NpError::NonIntegralBreakPoint {
                    x,
                    y: y.to_string(),
                });
            }
        }
        for &(s, w) in &self.segments {
            if self.multiplicity(Rational64::one() - s) != w {
                return Err(NpError::AsymmetricSlopes);
            }
        }
        Ok(())
    }

    /// Slopes 0 and 1 with multiplicity `g` each.
    pub fn ordinary(g: u64) -> NewtonPolygon {
        NewtonPolygon::from_slopes(&[(r(0, 1), g), (r(1, 1), g)]).expect("valid")
    }

    /// `σ_g`: slope 1/2 with multiplicity `2g`.
    pub fn supersingular(g: u64) -> NewtonPolygon {
        NewtonPolygon::from_slopes(&[(r(1, 2), 2 * g)]).expect("valid")
    }

    pub fn genus(&self) -> u64 {
        self.g
    }

    /// `(slope, multiplicity)` with strictly increasing slopes.
    pub fn segments(&self) -> &[(Rational64, u64)] {
        &self.segments
    }

    /// All `2g` slopes in non-decreasing order.
    pub fn slopes(&self) -> Vec<Rational64> {
        self.segments
            .iter()
            .flat_map(|&(s, m)| std::iter::repeat_n(s, m as usize))
            .collect()
    }

    pub fn multiplicity(&self, slope: Rational64) -> u64 {
        self.segments
            .iter()
            .find(|s| s.0 == slope)
            .map_or(0, |s| s.1)
    }

    /// Hull vertices from `(0,0)` to `(2g,g)`.
    pub fn breaks(&self) -> Vec<(u64, u64)> {
        let mut out = vec![(0, 0)];
        let mut x = 0u64;
        let mut y = Rational64::zero();
        for &(s, w) in &self.segments {
            x += w;
            y += s * Rational64::from(w as i64);
            out.push((x, y.to_integer() as u64));
        }
        out
    }

    /// Ordinate of the hull at `x ∈ [0, 2g]`.
    pub fn hull_at(&self, x: Rational64) -> Rational64 {
        let mut x0 = Rational64::zero();
        let mut y = Rational64::zero();
        for &(s, w) in &self.segments {
            let x1 = x0 + Rational64::from(w as i64);
            if x <= x1 {
                return y + s * (x - x0);
            }
            y += s * Rational64::from(w as i64);
            x0 = x1;
        }
        y
    }

    pub fn p_rank(&self) -> u64 {
        self.multiplicity(Rational64::zero())
    }

    pub fn is_supersingular(&self) -> bool {
        self.segments.iter().all(|s| s.0 == r(1, 2))
    }

    pub fn is_ordinary(&self) -> bool {
        self.p_rank() == self.g
    }

    /// Text form `NP{0^2, (1/3)^3, ...}`.
    pub fn text(&self) -> String {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|&(s, m)| {
                if s.is_integer() {
                    format!("{s}^{m}")
                } else {
                    format!("({s})^{m}")
                }
            })
            .collect();
        format!("NP{{{}}}", parts.join(", "))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "g": self.g,
            "slopes": self.segments.iter().map(|(s, m)| {
                vec![s.numer().to_string(), s.denom().to_string(), m.to_string()]
            }).collect::<Vec<_>>(),
            "breaks": self.breaks(),
        })
    }

    /// Character plot of the hull, one column per unit of `x`. Breaks are
    /// drawn as `o`, other lattice points on the hull as `*`, and non-lattice
    /// hull points as `.` in the row below them.
    pub fn render_ascii(&self) -> String {
        let width = 2 * self.g as usize;
        let breaks = self.breaks();
        let mut rows = Vec::new();
        for y in (0..=self.g as i64).rev() {
            let mut line = format!("{y:>3} |");
            for x in 0..=width {
                let h = self.hull_at(Rational64::from(x as i64));
                let ch = if h == Rational64::from(y) {
                    if breaks.iter().any(|b| b.0 as usize == x) {
                        'o'
                    } else {
                        '*'
                    }
                } else if !h.is_integer() && h.floor() == Rational64::from(y) {
                    '.'
                } else {
                    ' '
                };
                line.push(ch);
            }
            rows.push(line.trim_end().to_string());
        }
        rows.push(format!("    +{}", "-".repeat(width + 1)));
        let labels: Vec<String> = breaks.iter().map(|(x, y)| format!("({x},{y})")).collect();
        rows.push(format!("breaks: {}", labels.join(" ")));
        rows.join("\n")
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl std::str::FromStr for NewtonPolygon {
    type Err = NpError;

    /// Parses `NP{0^1, (1/4)^4, (3/4)^4, 1^1}`; the `NP{}` wrapper and the
    /// parentheses are optional, and a missing `^m` means multiplicity 1.
    fn from_str(s: &str) -> Result<Self, NpError> {
        let body = s.trim();
        let body = body
            .strip_prefix("NP{")
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(body);
        let bad = || NpError::Parse(s.to_string());
        let mut slopes = Vec::new();
        for item in body.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (sl, mult) = match item.rsplit_once('^') {
                Some((a, b)) => (a.trim(), b.trim().parse::<u64>().map_err(|_| bad())?),
                None => (item, 1),
            };
            let sl = sl.trim_start_matches('(').trim_end_matches(')');
            let slope = match sl.split_once('/') {
                Some((n, d)) => {
                    let n: i64 = n.trim().parse().map_err(|_| bad())?;
                    let d: i64 = d.trim().parse().map_err(|_| bad())?;
                    if d == 0 {
                        return Err(bad());
                    }
                    Rational64::new(n, d)
                }
                None => Rational64::from(sl.parse::<i64>().map_err(|_| bad())?),
            };
            slopes.push((slope, mult));
        }
        NewtonPolygon::from_slopes(&slopes)
    }
}

fn valuation(c: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut v = 0;
    let mut c = c.clone();
    loop {
        let (q, rem) = c.div_rem(&p);
        if !rem.is_zero() {
            return v;
        }
        c = q;
        v += 1;
    }
}

/// Lower convex hull (monotone chain) of points sorted by `x`.
pub fn lower_hull(points: &[(Rational64, Rational64)]) -> Vec<(Rational64, Rational64)> {
    let mut hull: Vec<(Rational64, Rational64)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0);
            if cross <= Rational64::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

/// The Newton polygon of `L` over `F_{p^r}`: the lower hull of
/// `(i, v_p(c_i)/r)`, zero coefficients omitted.
pub fn newton_polygon(l: &LPolynomial) -> Result<NewtonPolygon, NpError> {
    let rr = l.r() as i64;
    let points: Vec<(Rational64, Rational64)> = l
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            (
                Rational64::from(i as i64),
                Rational64::new(valuation(c, l.p()) as i64, rr),
            )
        })
        .collect();
    let hull = lower_hull(&points);
    let mut segments = Vec::new();
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !b.1.is_integer() {
            return Err(NpError::NonIntegralBreakPoint {
                x: b.0.to_integer() as u64,
                y: b.1.to_string(),
            });
        }
        let dx = b.0 - a.0;
        segments.push(((b.1 - a.1) / dx, dx.to_integer() as u64));
    }
    let np = NewtonPolygon {
        g: l.genus(),
        segments,
    };
    np.check()?;
    Ok(np)
}

/// `ξ1 ≤ ξ2`: the hull of `ξ1` is nowhere below the hull of `ξ2`.
pub fn np_leq(a: &NewtonPolygon, b: &NewtonPolygon) -> Result<bool, NpError> {
    if a.g != b.g {
        return Err(NpError::GenusMismatch(a.g, b.g));
    }
    Ok(a.breaks().iter().chain(b.breaks().iter()).all(|&(x, _)| {
        let x = Rational64::from(x as i64);
        a.hull_at(x) >= b.hull_at(x)
    }))
}

/// `ξ^{+e}`: adds `e` copies each of slopes 0 and 1.
pub fn xi_plus_e(xi: &NewtonPolygon, e: u64) -> NewtonPolygon {
    let mut slopes = xi.segments.clone();
    slopes.push((r(0, 1), e));
    slopes.push((r(1, 1), e));
    NewtonPolygon::from_slopes(&slopes).expect("adding ordinary pairs keeps validity")
}

/// All symmetric Newton polygons of height `2g`, ordinary first and `σ_g`
/// last (lexicographic on the sorted slope sequence).
pub fn enumerate_symmetric(g: u64) -> Result<Vec<NewtonPolygon>, NpError> {
    if g > MAX_ENUM_GENUS {
        return Err(NpError::EnumerationCap {
            g,
            max: MAX_ENUM_GENUS,
        });
    }
    // slopes d/h < 1/2 in lowest terms; each block pairs (d/h)^h with
    // ((h-d)/h)^h and uses h units of genus
    let blocks: Vec<(i64, i64)> = (1..=g as i64)
        .flat_map(|h| (0..h).map(move |d| (d, h)))
        .filter(|&(d, h)| 2 * d < h && d.gcd(&h) == 1)
        .collect();
    let mut out = Vec::new();
    let mut counts = vec![0u64; blocks.len()];
    fill(&blocks, 0, g, &mut counts, &mut out);
    out.sort_by_key(|a| a.slopes());
    Ok(out)
}

fn fill(
    blocks: &[(i64, i64)],
    idx: usize,
    left: u64,
    counts: &mut Vec<u64>,
    out: &mut Vec<NewtonPolygon>,
) {
    if idx == blocks.len() {
        let mut slopes = vec![(r(1, 2), 2 * left)];
        for (&(d, h), &k) in blocks.iter().zip(counts.iter()) {
            slopes.push((r(d, h), k * h as u64));
            slopes.push((r(h - d, h), k * h as u64));
        }
        out.push(NewtonPolygon::from_slopes(&slopes).expect("blocks are valid"));
        return;
    }
    let h = blocks[idx].1 as u64;
    for k in 0..=left / h {
        counts[idx] = k;
        fill(blocks, idx + 1, left - k * h, counts, out);
    }
    counts[idx] = 0;
}
