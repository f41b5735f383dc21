//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the counting code under test.

#![allow(dead_code)]

use std::collections::HashMap;

use curvezeta::curves::{extension, parse_curve, CurveData, CurveSpec, Place};
use curvezeta::ffield::{Elem, Field, Limits};
use curvezeta::poly::Poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Below this size the oracle walks every `(x, y)` pair; above it, it
/// tabulates the left-hand side once per `y`.
pub const PAIR_LIMIT: u64 = 1 << 10;

fn lhs_additive(field: &Field, h: u32, c: u64, y: &Elem) -> Elem {
    // y^{p^h} + c y by repeated p-th powers, without the Frobenius matrix
    let mut lead = y.clone();
    for _ in 0..h {
        lead = field.pow(&lead, field.p());
    }
    field.add(&lead, &field.scale(y, c))
}

fn histogram(field: &Field, lhs: impl Fn(&Elem) -> Elem) -> HashMap<Elem, u64> {
    let mut out = HashMap::new();
    for y in field.elements(&Limits::default()).expect("small field") {
        *out.entry(lhs(&y)).or_insert(0) += 1;
    }
    out
}

fn additive_params(spec: &CurveSpec) -> (u32, u64) {
    let CurveData::Linearized { additive, .. } = spec.data() else {
        unreachable!()
    };
    (additive.h, additive.c)
}

/// Legendre and hyperelliptic right-hand sides over the base field.
fn square_rhs(spec: &CurveSpec) -> Poly {
    let f = spec.base();
    match spec.data() {
        CurveData::Hyperelliptic { f: poly } => poly.clone(),
        CurveData::Legendre { lambda } => {
            let x = Poly::x(f);
            let xm1 = x.sub(f, &Poly::constant(f.one()));
            let xml = x.sub(f, &Poly::constant(lambda.clone()));
            x.mul(f, &xm1).mul(f, &xml)
        }
        CurveData::Linearized { .. } => unreachable!(),
    }
}

/// `#X(F_{q^s})` by direct enumeration.
pub fn brute_count(spec: &CurveSpec, s: u32) -> u64 {
    let (target, emb) = extension(spec, s).expect("extension");
    let size = target.size().expect("small field");
    let all: Vec<Elem> = target.elements(&Limits::default()).expect("small").collect();
    match spec.data() {
        CurveData::Linearized { f, .. } => {
            let (h, c) = additive_params(spec);
            let f = f.embed(&emb);
            let affine: u64 = if size <= PAIR_LIMIT {
                let lhs: Vec<Elem> = all.iter().map(|y| lhs_additive(&target, h, c, y)).collect();
                all.iter()
                    .filter_map(|x| f.eval(&target, x))
                    .map(|z| lhs.iter().filter(|&v| *v == z).count() as u64)
                    .sum()
            } else {
                let hist = histogram(&target, |y| lhs_additive(&target, h, c, y));
                all.iter()
                    .filter_map(|x| f.eval(&target, x))
                    .map(|z| hist.get(&z).copied().unwrap_or(0))
                    .sum()
            };
            let mut off = 0;
            let mut infinity_is_pole = false;
            for (place, _) in f.pole_orders() {
                off += 1;
                infinity_is_pole |= place == Place::Infinity;
            }
            if !infinity_is_pole {
                let v = f.value_at_infinity(&target).expect("finite at infinity");
                off += all.iter().filter(|y| lhs_additive(&target, h, c, y) == v).count() as u64;
            }
            affine + off
        }
        _ => {
            let rhs = square_rhs(spec).map_coeffs(|c| emb.apply(c));
            let affine: u64 = if size <= PAIR_LIMIT {
                all.iter()
                    .map(|x| {
                        let z = rhs.eval(&target, x);
                        all.iter().filter(|y| target.square(y) == z).count() as u64
                    })
                    .sum()
            } else {
                let hist = histogram(&target, |y| target.square(y));
                all.iter()
                    .map(|x| hist.get(&rhs.eval(&target, x)).copied().unwrap_or(0))
                    .sum()
            };
            // odd-degree models have one point at infinity
            affine + 1
        }
    }
}

/// Curves used by the counting oracle, each with the largest `s` that keeps
/// `F_{q^s}` at or below `2^16` elements.
pub fn oracle_corpus() -> Vec<(CurveSpec, u32)> {
    [
        "as p=2 q=2 f=x^3",
        "as p=2 q=2 f=x^5+x^3+1",
        "as p=2 q=2 f=x^3+1/x",
        "as p=2 q=4 f=t*x^5+x^3",
        "as p=3 q=3 f=x^4+x^2",
        "as p=3 q=3 f=x^2+1/x+1/(x-1)^2",
        "as p=3 q=9 f=t*x^2+1/x",
        "as p=3 q=3 f=1/x+2",
        "as p=5 q=5 f=x^3+2/(x-1)",
        "as p=7 q=7 f=x^2+3",
        "hermitian q=2",
        "hermitian q=3",
        "hermitian q=4",
        "lin h=2 q=4 f=x^5",
        "hyp q=3 f=x^3+x",
        "hyp q=7 f=x^5+3*x+1",
        "hyp q=9 f=x^3+t*x+1",
        "hyp q=5 f=x^5+x^2+3",
        "legendre p=5 lambda=2",
        "legendre p=7 lambda=3",
        "legendre p=3 lambda=2",
    ]
    .iter()
    .map(|c| {
        let spec = parse_curve(c).unwrap_or_else(|e| panic!("{c}: {e}"));
        let q = spec.q() as f64;
        let s_max = (16.0 * 2f64.ln() / q.ln()).floor() as u32;
        (spec, s_max)
    })
    .collect()
}

/// A tame Artin–Schreier curve over `F_p` with its number of poles.
pub struct TameCurve {
    pub text: String,
    pub poles: u64,
    pub p: u64,
}

/// 50 seeded curves `y^p - y = f(x)` over `F_p`, `p ∈ {2, 3, 5}`, with at
/// most three poles in `F_p ∪ {∞}`, all of order prime to `p`, and `p^g`
/// small enough to count.
pub fn tame_corpus() -> Vec<TameCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let mut out = Vec::new();
    while out.len() < 50 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let places = p + 1; // p finite points and infinity (index p)
        let b = rng.gen_range(1..=3u64.min(places));
        let mut chosen: Vec<u64> = Vec::new();
        while (chosen.len() as u64) < b {
            let pl = rng.gen_range(0..places);
            if !chosen.contains(&pl) {
                chosen.push(pl);
            }
        }
        chosen.sort_unstable();
        let mut terms = Vec::new();
        let mut weight = 0u64;
        for &pl in &chosen {
            let d = loop {
                let d = rng.gen_range(1..=7u64);
                if d % p != 0 {
                    break d;
                }
            };
            weight += d + 1;
            let c = rng.gen_range(1..p.max(2));
            if pl == p {
                terms.push(format!("{c}*x^{d}"));
                // a random lower-order tail
                let low = rng.gen_range(0..d);
                if low > 0 && low % p != 0 {
                    terms.push(format!("{}*x^{low}", rng.gen_range(1..p.max(2))));
                }
            } else {
                terms.push(format!("{c}/(x-{pl})^{d}"));
            }
        }
        let g = (p - 1) * (weight - 2) / 2;
        if g == 0 || (p as f64).powi(g as i32) > (1u64 << 20) as f64 {
            continue;
        }
        out.push(TameCurve {
            text: format!("as p={p} q={p} f={}", terms.join("+")),
            poles: b,
            p,
        });
    }
    out
}

/// Lower hull ordinate at every integer abscissa, by testing every pair of
/// points (cubic time).
pub fn brute_hull(points: &[(i64, i64)], x_max: i64) -> Vec<num_rational::Rational64> {
    use num_rational::Rational64;
    (0..=x_max)
        .map(|x| {
            let mut best: Option<Rational64> = None;
            for &(x1, y1) in points {
                for &(x2, y2) in points {
                    if x1 <= x && x <= x2 && x1 < x2 {
                        let v = Rational64::from(y1)
                            + Rational64::new((y2 - y1) * (x - x1), x2 - x1);
                        best = Some(best.map_or(v, |b| b.min(v)));
                    }
                    if x1 == x && x2 == x {
                        let v = Rational64::from(y1.min(y2));
                        best = Some(best.map_or(v, |b| b.min(v)));
                    }
                }
            }
            best.expect("x inside the point range")
        })
        .collect()
}
