//! Ekedahl–Oort types `ν = [ν_1, ..., ν_g]` and their Young types.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest length accepted by [`enumerate_eo`].
pub const MAX_EO_GENUS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EoError {
    #[error("not an Ekedahl-Oort sequence: {0:?}")]
    InvalidNu(Vec<u32>),
    #[error("not a Young type of length {g}: {mu:?}")]
    InvalidYoung { g: usize, mu: Vec<u32> },
    #[error("EO enumeration is capped at g = {max}, asked for {g}")]
    EnumerationCap { g: usize, max: usize },
    #[error("golden tables exist for g = 2 and g = 3 only, asked for {0}")]
    NoGoldenTable(usize),
}

impl EoError {
    pub fn code(&self) -> &'static str {
        match self {
            EoError::InvalidNu(_) => "InvalidNu",
            EoError::InvalidYoung { .. } => "InvalidYoung",
            EoError::EnumerationCap { .. } => "EnumerationCap",
            EoError::NoGoldenTable(_) => "NoGoldenTable",
        }
    }
}

/// `ν` with `ν_0 = 0` and `ν_i ≤ ν_{i+1} ≤ ν_i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EOType {
    nu: Vec<u32>,
}

/// Strictly decreasing positive parts `μ_1 > μ_2 > ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct YoungType {
    mu: Vec<u32>,
}

impl EOType {
    pub fn new(nu: Vec<u32>) -> Result<EOType, EoError> {
        let mut prev = 0;
        for &v in &nu {
            if v != prev && v != prev + 1 {
                return Err(EoError::InvalidNu(nu));
            }
            prev = v;
        }
        Ok(EOType { nu })
    }

    /// The ordinary type `[1, 2, ..., g]`.
    pub fn ordinary(g: usize) -> EOType {
        EOType {
            nu: (1..=g as u32).collect(),
        }
    }

    /// The superspecial type `[0, ..., 0]`.
    pub fn superspecial(g: usize) -> EOType {
        EOType { nu: vec![0; g] }
    }

    pub fn nu(&self) -> &[u32] {
        &self.nu
    }

    pub fn genus(&self) -> usize {
        self.nu.len()
    }
}

impl fmt::Display for EOType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nu.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl YoungType {
    pub fn new(mu: Vec<u32>) -> Option<YoungType> {
        let ok = mu.iter().all(|&m| m > 0) && mu.windows(2).all(|w| w[0] > w[1]);
        ok.then_some(YoungType { mu })
    }

    pub fn parts(&self) -> &[u32] {
        &self.mu
    }
}

impl fmt::Display for YoungType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mu.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.mu.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `2^g` types of length `g`, in descending lexicographic order of `ν`
/// (ordinary first).
pub fn enumerate_eo(g: usize) -> Result<Vec<EOType>, EoError> {
    if g > MAX_EO_GENUS {
        return Err(EoError::EnumerationCap {
            g,
            max: MAX_EO_GENUS,
        });
    }
    let mut out: Vec<EOType> = (0u64..1 << g)
        .map(|bits| {
            let mut v = 0;
            let nu = (0..g)
                .map(|i| {
                    v += ((bits >> i) & 1) as u32;
                    v
                })
                .collect();
            EOType { nu }
        })
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// `μ_j = #{i : i - ν_i ≥ j}`.
pub fn young_type(t: &EOType) -> YoungType {
    let w: Vec<u32> = t
        .nu
        .iter()
        .enumerate()
        .map(|(i, &v)| i as u32 + 1 - v)
        .collect();
    let top = w.iter().copied().max().unwrap_or(0);
    YoungType {
        mu: (1..=top)
            .map(|j| w.iter().filter(|&&x| x >= j).count() as u32)
            .collect(),
    }
}

/// Inverse of [`young_type`] for types of length `g`.
pub fn eo_from_young(g: usize, mu: &YoungType) -> Result<EOType, EoError> {
    let bad = || EoError::InvalidYoung {
        g,
        mu: mu.mu.clone(),
    };
    let top = mu.mu.first().copied().unwrap_or(0) as usize;
    if top > g {
        return Err(bad());
    }
    // the positive values of w_i = i - ν_i form the conjugate partition of μ
    let mut w: Vec<u32> = vec![0; g - top];
    w.extend((1..=top as u32).map(|k| mu.mu.iter().filter(|&&m| m >= k).count() as u32));
    w.sort_unstable();
    let nu = w
        .iter()
        .enumerate()
        .map(|(i, &x)| (i as u32 + 1).checked_sub(x).ok_or_else(bad))
        .collect::<Result<Vec<_>, _>>()?;
    let t = EOType::new(nu).map_err(|_| bad())?;
    if young_type(&t) != *mu {
        return Err(bad());
    }
    Ok(t)
}

/// `f = max{i : ν_i = i}`, 0 if there is none.
pub fn eo_p_rank(t: &EOType) -> usize {
    t.nu.iter()
        .enumerate()
        .filter(|&(i, &v)| v as usize == i + 1)
        .map(|(i, _)| i + 1)
        .max()
        .unwrap_or(0)
}

/// `a = g - ν_g`.
pub fn eo_a_number(t: &EOType) -> usize {
    t.genus() - t.nu.last().copied().unwrap_or(0) as usize
}

/// Dimension `Σ ν_i` of the stratum in `A_g`.
pub fn eo_dim(t: &EOType) -> usize {
    t.nu.iter().map(|&v| v as usize).sum()
}

pub fn eo_codim(t: &EOType) -> usize {
    let g = t.genus();
    g * (g + 1) / 2 - eo_dim(t)
}

/// `[1, ..., e, ν_1 + e, ..., ν_g + e]`.
pub fn add_ordinary(t: &EOType, e: usize) -> EOType {
    let e32 = e as u32;
    EOType {
        nu: (1..=e32).chain(t.nu.iter().map(|&v| v + e32)).collect(),
    }
}

fn power(base: &str, k: usize) -> String {
    match k {
        1 => base.to_string(),
        _ if base.contains('_') => format!("({base})^{k}"),
        _ => format!("{base}^{k}"),
    }
}

/// Local part `ν' = [ν_{f+1} - f, ..., ν_g - f]`, which has p-rank 0.
fn local_part(t: &EOType) -> Vec<u32> {
    let f = eo_p_rank(t);
    t.nu[f..].iter().map(|&v| v - f as u32).collect()
}

fn local_name(nu: &[u32]) -> Option<String> {
    let n = nu.len();
    if nu.iter().all(|&v| v == 0) {
        return Some(power("I_{1,1}", n));
    }
    if nu.iter().enumerate().all(|(i, &v)| v as usize == i) {
        return Some(format!("I_{{{n},1}}"));
    }
    match nu {
        [0, 1, 1] => Some("I_{3,2}".into()),
        [0, 0, 1] => Some("I_{1,1} ⊕ I_{2,1}".into()),
        _ => None,
    }
}

/// Display name: `L^f ⊕ (local part)` with the classical names for `g ≤ 3`,
/// and the raw sequence beyond that unless the type is `L^g` or `I_{g,1}`.
pub fn eo_name(t: &EOType) -> String {
    let g = t.genus();
    let f = eo_p_rank(t);
    let local = local_part(t);
    if g > 3 && f != g && !(f == 0 && local.iter().enumerate().all(|(i, &v)| v as usize == i)) {
        return format!("ν={t}");
    }
    let mut parts = Vec::new();
    if f > 0 {
        parts.push(power("L", f));
    }
    if !local.is_empty() {
        parts.push(local_name(&local).unwrap_or_else(|| format!("ν={t}")));
    }
    parts.join(" ⊕ ")
}

// Dieudonné modules of the p-rank 0 parts, copied as display strings.
const LOCAL_DIEUDONNE: &[(&[u32], &str)] = &[
    (&[0], "D_{1,1}"),
    (&[0, 1], "E/E(F^2+V^2)"),
    (&[0, 0], "(D_{1,1})^2"),
    (&[0, 1, 2], "E/E(F^3+V^3)"),
    (&[0, 1, 1], "E/E(F^2+V) ⊕ E/E(V^2+F)"),
    (&[0, 0, 1], "D_{1,1} ⊕ E/E(F^2+V^2)"),
    (&[0, 0, 0], "(D_{1,1})^3"),
];

/// Mod-p Dieudonné module for `g ≤ 3`, as an opaque string.
pub fn eo_dieudonne(t: &EOType) -> Option<String> {
    if t.genus() > 3 {
        return None;
    }
    let f = eo_p_rank(t);
    let local = local_part(t);
    let mut parts = Vec::new();
    if f > 0 {
        parts.push(power("D(L)", f));
    }
    if !local.is_empty() {
        let (_, s) = LOCAL_DIEUDONNE.iter().find(|(nu, _)| *nu == local.as_slice())?;
        parts.push(s.to_string());
    }
    Some(parts.join(" ⊕ "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EoRow {
    pub name: String,
    pub codim: usize,
    pub f: usize,
    pub a: usize,
    pub nu: EOType,
    pub mu: YoungType,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dieudonne: Option<String>,
}

impl EoRow {
    pub fn of(t: &EOType) -> EoRow {
        EoRow {
            name: eo_name(t),
            codim: eo_codim(t),
            f: eo_p_rank(t),
            a: eo_a_number(t),
            mu: young_type(t),
            dieudonne: eo_dieudonne(t),
            nu: t.clone(),
        }
    }
}

/// One row per type of length `g`, ordinary first.
pub fn eo_table(g: usize) -> Result<Vec<EoRow>, EoError> {
    Ok(enumerate_eo(g)?.iter().map(EoRow::of).collect())
}

/// The classical tables for `g = 2` and `g = 3`.
pub fn golden_tables(g: usize) -> Result<Vec<EoRow>, EoError> {
    if !(2..=3).contains(&g) {
        return Err(EoError::NoGoldenTable(g));
    }
    eo_table(g)
}

/// Aligned plain-text rendering of a table.
pub fn render_table(rows: &[EoRow]) -> String {
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.name.clone(),
                r.codim.to_string(),
                r.f.to_string(),
                r.a.to_string(),
                r.nu.to_string(),
                r.mu.to_string(),
                r.dieudonne.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let header = ["name", "cod", "f", "a", "nu", "mu", "Dieudonne module"];
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |row: &[String]| {
        let padded: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(&header.map(String::from))];
    out.extend(cells.iter().map(|r| line(r)));
    out.join("\n")
}
