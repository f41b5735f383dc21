//! Univariate polynomials over a finite field.

use crate::ffield::{Elem, Field, FieldError};

/// Dense polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, field: &Field, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| field.sub(&self.coeff(field, i), &other.coeff(field, i)))
                .collect(),
        )
    }

    pub fn neg(&self, field: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| field.neg(c)).collect())
    }

    pub fn scale(&self, field: &Field, c: &Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, field: &Field, e: u32) -> Poly {
        let mut acc = Poly::constant(field.one());
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    pub fn divrem(&self, field: &Field, divisor: &Poly) -> Result<(Poly, Poly), FieldError> {
        let lead = divisor.leading().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = field.inv(lead)?;
        let db = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = field.mul(&rem[k + db], &lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = field.sub(&rem[k + j], &field.mul(&c, d));
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, field: &Field, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(field, &b).expect("non-zero divisor").1;
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn monic(&self, field: &Field) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(field, &field.inv(l).expect("non-zero leading")),
        }
    }

    pub fn derivative(&self, field: &Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| field.scale(c, i as u64))
                .collect(),
        )
    }

    pub fn eval(&self, field: &Field, x: &Elem) -> Elem {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    }

    /// `P(x + b)`.
    pub fn shift(&self, field: &Field, b: &Elem) -> Poly {
        let lin = Poly::new(vec![b.clone(), field.one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(field, &lin).add(field, &Poly::constant(c.clone()));
        }
        acc
    }

    /// Multiplicity of `b` as a root.
    pub fn root_multiplicity(&self, field: &Field, b: &Elem) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let shifted = self.shift(field, b);
        shifted.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Applies a map to every coefficient (e.g. a field embedding).
    pub fn map_coeffs(&self, f: impl Fn(&Elem) -> Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn display(&self, var: &str) -> String {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let coeff = if cs.contains('+') { format!("({cs})") } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(match (coeff.as_str(), mono.is_empty()) {
                (_, true) => coeff,
                ("1", false) => mono,
                (_, false) => format!("{coeff}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}
