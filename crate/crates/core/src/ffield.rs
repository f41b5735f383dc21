//! Finite fields `F_{p^r}` as dense coefficient vectors over the prime field.
//!
//! Every field is built directly over `F_p` with a canonical modulus: the least
//! monic irreducible polynomial of degree `r` when the coefficient tuple
//! `(c_0, ..., c_{r-1})` is read as a base-`p` integer. Extensions are never
//! stacked as towers; a smaller field is mapped into a larger one with
//! [`Embedding`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;
use thiserror::Error;

use crate::linalg;

/// Default bound on the number of elements any enumeration may visit.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 26;

/// Characteristics at or above this bound are rejected so that products of two
/// residues always fit in a `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

pub(crate) type Coeffs = SmallVec<[u64; 12]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is above the supported bound 2^31")]
    CharacteristicTooLarge(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field of size {p}^{r} exceeds the enumeration cap of {cap} elements")]
    CapExceeded { p: u64, r: usize, cap: u64 },
    #[error("GF({p}^{small}) is not a subfield of GF({p}^{large})")]
    NotSubfield { p: u64, small: usize, large: usize },
    #[error("fields have different characteristics {0} and {1}")]
    CharacteristicMismatch(u64, u64),
    #[error("minimal polynomial has no root in the target field")]
    NoRoot,
    #[error("division by zero")]
    DivisionByZero,
}

/// Enumeration limits shared by every counting routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub enum_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }
}

impl Limits {
    pub fn with_cap(enum_cap: u64) -> Self {
        Limits { enum_cap }
    }
}

/// An element of some `F_{p^r}`: `r` residues mod `p`, lowest degree first.
///
/// The owning [`Field`] is passed explicitly to every operation. Elements are
/// always fully reduced, so equality is coefficient-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Elem(pub(crate) Coeffs);

impl Elem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Index in the canonical enumeration order: `sum c_i p^i`.
    pub fn index(&self, p: u64) -> u64 {
        self.0.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    /// The prime-field value of an element that lies in `F_p`, if it does.
    pub fn as_prime(&self) -> Option<u64> {
        if self.0.iter().skip(1).all(|&c| c == 0) {
            Some(self.0[0])
        } else {
            None
        }
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: compare as base-`p` integers, most significant digit last.
impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders `c0+c1*t+c2*t^2`, omitting zero terms.
impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{c}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

struct Inner {
    p: u64,
    r: usize,
    /// Monic modulus, `r + 1` coefficients, lowest degree first.
    modulus: Vec<u64>,
    /// Column `i` holds `(t^i)^p`.
    frobenius: Vec<Coeffs>,
    /// `Tr(t^i)` down to `F_p`.
    trace_basis: Vec<u64>,
}

/// The field `F_{p^r}` with its canonical modulus. Cheap to clone.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `GF(p^r; modulus=x^2+1)`.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}; modulus={})",
            self.p(),
            self.degree(),
            format_prime_poly(&self.inner.modulus, "x")
        )
    }
}

pub(crate) fn format_prime_poly(coeffs: &[u64], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns the canonical `F_{p^r}`. Identical inputs give identical moduli.
pub fn make_field(p: u64, r: usize) -> Result<Field, FieldError> {
    if p >= MAX_CHARACTERISTIC {
        return Err(FieldError::CharacteristicTooLarge(p));
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if r == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let modulus = least_irreducible(p, r);
    Ok(Field::with_modulus(p, modulus))
}

/// Least monic irreducible of degree `r` in the base-`p` ordering of
/// `(c_0, ..., c_{r-1})`.
fn least_irreducible(p: u64, r: usize) -> Vec<u64> {
    let mut low = vec![0u64; r];
    loop {
        let mut candidate = low.clone();
        candidate.push(1);
        if fp::is_irreducible(&candidate, p) {
            return candidate;
        }
        // increment c_0 first
        for c in low.iter_mut() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
}

impl Field {
    fn with_modulus(p: u64, modulus: Vec<u64>) -> Field {
        let r = modulus.len() - 1;
        let mut field = Field {
            inner: Arc::new(Inner {
                p,
                r,
                modulus,
                frobenius: Vec::new(),
                trace_basis: Vec::new(),
            }),
        };
        let t = field.generator();
        let tp = field.pow(&t, p);
        let mut frobenius = Vec::with_capacity(r);
        let mut col = field.one();
        for _ in 0..r {
            frobenius.push(col.0.clone());
            col = field.mul(&col, &tp);
        }
        {
            let inner = Arc::get_mut(&mut field.inner).expect("fresh field");
            inner.frobenius = frobenius;
        }
        let mut trace_basis = Vec::with_capacity(r);
        for i in 0..r {
            let mut e = field.zero();
            e.0[i] = 1;
            let mut acc = field.zero();
            let mut cur = e;
            for _ in 0..r {
                acc = field.add(&acc, &cur);
                cur = field.frobenius(&cur);
            }
            trace_basis.push(acc.as_prime().expect("trace lies in the prime field"));
        }
        Arc::get_mut(&mut field.inner).expect("fresh field").trace_basis = trace_basis;
        field
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    /// Extension degree `r` over `F_p`.
    pub fn degree(&self) -> usize {
        self.inner.r
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// `p^r`, or `None` on `u64` overflow.
    pub fn size(&self) -> Option<u64> {
        checked_pow(self.p(), self.degree() as u32)
    }

    pub fn check_enumerable(&self, limits: &Limits) -> Result<u64, FieldError> {
        match self.size() {
            Some(n) if n <= limits.enum_cap => Ok(n),
            _ => Err(FieldError::CapExceeded {
                p: self.p(),
                r: self.degree(),
                cap: limits.enum_cap,
            }),
        }
    }

    pub fn zero(&self) -> Elem {
        Elem(SmallVec::from_elem(0, self.degree()))
    }

    pub fn one(&self) -> Elem {
        self.from_prime(1)
    }

    pub fn from_prime(&self, c: u64) -> Elem {
        let mut e = self.zero();
        e.0[0] = c % self.p();
        e
    }

    pub fn from_i64(&self, c: i64) -> Elem {
        self.from_prime(c.rem_euclid(self.p() as i64) as u64)
    }

    /// Builds an element from coefficients, reducing each mod `p` and the
    /// vector mod the field's modulus.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Elem {
        let p = self.p();
        let mut v: Coeffs = coeffs.iter().map(|c| c % p).collect();
        self.reduce_in_place(&mut v);
        Elem(v)
    }

    pub fn from_index(&self, mut idx: u64) -> Elem {
        let p = self.p();
        let mut e = self.zero();
        for c in e.0.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
        e
    }

    /// The residue class of the polynomial variable.
    pub fn generator(&self) -> Elem {
        self.from_coeffs(&[0, 1])
    }

    fn reduce_in_place(&self, v: &mut Coeffs) {
        let p = self.p();
        let r = self.degree();
        let m = &self.inner.modulus;
        while v.len() > r {
            let top = v.pop().expect("non-empty");
            if top == 0 {
                continue;
            }
            let shift = v.len() - r;
            let neg = p - top;
            for j in 0..r {
                v[shift + j] = (v[shift + j] + neg * m[j]) % p;
            }
        }
        while v.len() < r {
            v.push(0);
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.p();
        Elem(
            a.0.iter()
                .zip(b.0.iter())
                .map(|(&x, &y)| {
                    let s = x + y;
                    if s >= p {
                        s - p
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.p();
        Elem(
            a.0.iter()
                .zip(b.0.iter())
                .map(|(&x, &y)| if x >= y { x - y } else { x + p - y })
                .collect(),
        )
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let p = self.p();
        Elem(a.0.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
    }

    pub fn scale(&self, a: &Elem, c: u64) -> Elem {
        let p = self.p();
        let c = c % p;
        Elem(a.0.iter().map(|&x| x * c % p).collect())
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.p();
        let r = self.degree();
        if r == 1 {
            return Elem(SmallVec::from_elem(a.0[0] * b.0[0] % p, 1));
        }
        let mut prod: Coeffs = SmallVec::from_elem(0, 2 * r - 1);
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        self.reduce_in_place(&mut prod);
        Elem(prod)
    }

    pub fn square(&self, a: &Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let inv = fp::inverse_mod(&a.0, &self.inner.modulus, self.p());
        Ok(self.from_coeffs(&inv))
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `x ↦ x^p`, applied as the precomputed `F_p`-linear map.
    pub fn frobenius(&self, a: &Elem) -> Elem {
        let p = self.p();
        let r = self.degree();
        let mut out: Coeffs = SmallVec::from_elem(0, r);
        for (i, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(self.inner.frobenius[i].iter()) {
                *o = (*o + c * m) % p;
            }
        }
        Elem(out)
    }

    /// `x ↦ x^{p^k}`.
    pub fn frobenius_pow(&self, a: &Elem, k: usize) -> Elem {
        let mut x = a.clone();
        for _ in 0..k % self.degree() {
            x = self.frobenius(&x);
        }
        x
    }

    /// Matrix of `x ↦ x^p` on the power basis; `m[i][j]` is coordinate `i` of `(t^j)^p`.
    pub fn frobenius_matrix(&self) -> Vec<Vec<u64>> {
        let r = self.degree();
        (0..r)
            .map(|i| (0..r).map(|j| self.inner.frobenius[j][i]).collect())
            .collect()
    }

    /// `x + x^p + ... + x^{p^{r-1}}`, as a residue mod `p`.
    pub fn trace_to_prime(&self, a: &Elem) -> u64 {
        let p = self.p();
        a.0.iter()
            .zip(self.inner.trace_basis.iter())
            .fold(0, |acc, (&c, &t)| (acc + c * t) % p)
    }

    /// Iterates the whole field in canonical order.
    pub fn elements(&self, limits: &Limits) -> Result<Elements, FieldError> {
        let n = self.check_enumerable(limits)?;
        Ok(self.elements_range(0, n))
    }

    /// Iterates indices `start..end` in canonical order. Disjoint ranges visit
    /// disjoint elements, so enumeration may be split across workers.
    pub fn elements_range(&self, start: u64, end: u64) -> Elements {
        Elements {
            p: self.p(),
            current: self.from_index(start),
            remaining: end.saturating_sub(start),
        }
    }

    /// Fibers of `x ↦ x^{q+1}` on `F_{q^2}^*` where `self = F_q`.
    pub fn norm_fibers(&self, limits: &Limits) -> Result<NormFibers, FieldError> {
        let q = self.size().ok_or(FieldError::CapExceeded {
            p: self.p(),
            r: self.degree(),
            cap: limits.enum_cap,
        })?;
        let ext = make_field(self.p(), 2 * self.degree())?;
        let mut fibers = BTreeMap::new();
        for x in ext.elements(limits)? {
            if x.is_zero() {
                continue;
            }
            let n = ext.pow(&x, q + 1);
            *fibers.entry(n).or_insert(0u64) += 1;
        }
        Ok(NormFibers { q, ext, fibers })
    }

    /// Number of elements with each trace value, indexed by the value.
    pub fn trace_fibers(&self, limits: &Limits) -> Result<Vec<u64>, FieldError> {
        let mut counts = vec![0u64; self.p() as usize];
        for x in self.elements(limits)? {
            counts[self.trace_to_prime(&x) as usize] += 1;
        }
        Ok(counts)
    }

    /// Every element fixed by `x ↦ x^{p^d}`: the subfield `F_{p^d}`.
    pub fn is_in_subfield(&self, a: &Elem, d: usize) -> bool {
        self.frobenius_pow(a, d) == *a
    }
}

/// Fiber sizes of the norm `F_{q^2}^* → F_q^*`, keyed by the norm value as an
/// element of `F_{q^2}`.
#[derive(Debug, Clone)]
pub struct NormFibers {
    pub q: u64,
    pub ext: Field,
    pub fibers: BTreeMap<Elem, u64>,
}

impl NormFibers {
    /// `true` when exactly `q - 1` values are hit, each `q + 1` times.
    pub fn is_uniform(&self) -> bool {
        self.fibers.len() as u64 == self.q - 1 && self.fibers.values().all(|&c| c == self.q + 1)
    }
}

pub struct Elements {
    p: u64,
    current: Elem,
    remaining: u64,
}

impl Iterator for Elements {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.current.clone();
        if self.remaining > 0 {
            for c in self.current.0.iter_mut() {
                *c += 1;
                if *c < self.p {
                    break;
                }
                *c = 0;
            }
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// The ring embedding `F_{p^r} ↪ F_{p^{rs}}` sending the source generator to
/// the first root (in canonical order) of its minimal polynomial.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    /// Images of `1, t, ..., t^{r-1}`.
    basis_images: Vec<Elem>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Embedding, FieldError> {
        if source.p() != target.p() {
            return Err(FieldError::CharacteristicMismatch(source.p(), target.p()));
        }
        if !target.degree().is_multiple_of(source.degree()) {
            return Err(FieldError::NotSubfield {
                p: source.p(),
                small: source.degree(),
                large: target.degree(),
            });
        }
        let root = if source.degree() == 1 {
            // the modulus is x + c_0, whose only root is -c_0
            target.from_prime((source.p() - source.modulus()[0]) % source.p())
        } else {
            let n = target.size().ok_or(FieldError::NoRoot)?;
            target
                .elements_range(0, n)
                .find(|x| eval_prime_poly(target, source.modulus(), x).is_zero())
                .ok_or(FieldError::NoRoot)?
        };
        let mut basis_images = Vec::with_capacity(source.degree());
        let mut cur = target.one();
        for _ in 0..source.degree() {
            basis_images.push(cur.clone());
            cur = target.mul(&cur, &root);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            basis_images,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        let t = &self.target;
        let mut acc = t.zero();
        for (&c, img) in x.0.iter().zip(self.basis_images.iter()) {
            if c != 0 {
                acc = t.add(&acc, &t.scale(img, c));
            }
        }
        acc
    }
}

/// Evaluates a polynomial with prime-field coefficients at a field element.
pub fn eval_prime_poly(field: &Field, coeffs: &[u64], x: &Elem) -> Elem {
    let mut acc = field.zero();
    for &c in coeffs.iter().rev() {
        acc = field.mul(&acc, x);
        acc = field.add(&acc, &field.from_prime(c));
    }
    acc
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Test whether `z` lies in the image of the `F_p`-linear map
/// `y ↦ y^{p^h} + c·y` on a field, with the map's kernel size.
#[derive(Debug, Clone)]
pub struct AdditiveImage {
    p: u64,
    /// Rows spanning the annihilator of the image.
    checks: Vec<Vec<u64>>,
    kernel_size: u64,
}

impl AdditiveImage {
    pub fn new(field: &Field, h: u32, c: u64) -> AdditiveImage {
        let p = field.p();
        let n = field.degree();
        let frob = field.frobenius_matrix();
        let mut m = linalg::identity(n);
        for _ in 0..h {
            m = linalg::mat_mul(&frob, &m, p);
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = (row[i] + c % p) % p;
        }
        let rank = linalg::rank(&m, p);
        let checks = linalg::kernel(&linalg::transpose(&m), p);
        AdditiveImage {
            p,
            checks,
            kernel_size: checked_pow(p, (n - rank) as u32).expect("kernel fits"),
        }
    }

    pub fn kernel_size(&self) -> u64 {
        self.kernel_size
    }

    pub fn contains(&self, z: &Elem) -> bool {
        let p = self.p;
        self.checks.iter().all(|row| {
            row.iter()
                .zip(z.0.iter())
                .fold(0, |acc, (&a, &b)| (acc + a * b) % p)
                == 0
        })
    }
}

/// Polynomial arithmetic over `F_p` on raw coefficient vectors.
pub(crate) mod fp {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn inv_mod_p(a: u64, p: u64) -> u64 {
        let mut base = a % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    /// Remainder of `a` by `b`; `b` must be non-zero after trimming.
    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut b = b.to_vec();
        trim(&mut b);
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod_p(b[db], p);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r[r.len() - 1] * lead_inv % p;
            q[shift] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p - c) * bj) % p;
            }
            trim(&mut r);
        }
        (q, r)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            e >>= 1;
            if e > 0 {
                b = rem(&mul(&b, &b, p), m, p);
            }
        }
        acc
    }

    /// Ben-Or: a monic `f` of degree `r` is irreducible iff
    /// `gcd(f, x^{p^i} - x) = 1` for `1 ≤ i ≤ r/2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let r = f.len() - 1;
        if r == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let mut xp = x.clone();
        for _ in 1..=r / 2 {
            xp = powmod(&xp, p, f, p);
            let g = gcd(f, &sub(&xp, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Inverse of `a` modulo the irreducible `m`.
    pub fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        // extended Euclid tracking only the coefficient of a
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a non-zero constant
        let c = inv_mod_p(r0[0], p);
        s0.iter().map(|&x| x * c % p).collect()
    }
}
