//! The textual curve grammar:
//!
//! ```text
//! as p=<p> q=<p^r> f=<rational expression in x>
//! lin h=<h> q=<q> [f=<rational expression>]
//! hermitian q=<q>
//! hyp q=<q> f=<polynomial>
//! legendre p=<p> [q=<p^r>] lambda=<element expression>
//! ```
//!
//! Expressions use `+ - * / ^`, parentheses, integer literals, `x` for the
//! curve variable and `t` for the generator of the base field.

use std::collections::BTreeMap;

use super::{CurveError, CurveSpec, RationalFunction};
use crate::ffield::{is_prime, make_field, Elem, Field, Limits};
use crate::poly::Poly;

/// `(p, r)` with `q = p^r`.
pub fn prime_power(q: u64) -> Result<(u64, usize), CurveError> {
    if q < 2 {
        return Err(CurveError::NotPrimePower(q));
    }
    let p = (2..=q)
        .find(|d| q.is_multiple_of(*d))
        .expect("q >= 2 has a prime divisor");
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    if rest != 1 || !is_prime(p) {
        return Err(CurveError::NotPrimePower(q));
    }
    Ok((p, r))
}

fn parse_err(msg: impl Into<String>) -> CurveError {
    CurveError::Parse(msg.into())
}

/// Parses a curve description into a validated [`CurveSpec`].
pub fn parse_curve(text: &str) -> Result<CurveSpec, CurveError> {
    let mut words = text.split_whitespace();
    let kind = words.next().ok_or_else(|| parse_err("empty curve description"))?;
    let mut args: BTreeMap<String, String> = BTreeMap::new();
    let mut last: Option<String> = None;
    for w in words {
        match w.split_once('=') {
            Some((k, v)) => {
                if args.insert(k.to_string(), v.to_string()).is_some() {
                    return Err(parse_err(format!("duplicate key `{k}`")));
                }
                last = Some(k.to_string());
            }
            None => {
                // continuation of an expression that contained spaces
                let key = last
                    .as_ref()
                    .ok_or_else(|| parse_err(format!("unexpected token `{w}`")))?;
                args.get_mut(key).expect("key inserted").push_str(w);
            }
        }
    }
    let int = |key: &str| -> Result<Option<u64>, CurveError> {
        args.get(key)
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| parse_err(format!("`{key}` must be a positive integer")))
            })
            .transpose()
    };
    let allowed: &[&str] = match kind {
        "as" => &["p", "q", "f"],
        "lin" => &["h", "q", "f"],
        "hermitian" => &["q"],
        "hyp" => &["q", "f"],
        "legendre" => &["p", "q", "lambda"],
        other => return Err(parse_err(format!("unknown curve family `{other}`"))),
    };
    if let Some(k) = args.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(parse_err(format!("unknown key `{k}` for `{kind}`")));
    }
    let limits = Limits::default();
    let base_field = |p: Option<u64>, q: Option<u64>| -> Result<Field, CurveError> {
        let (pp, r) = match (p, q) {
            (_, Some(q)) => prime_power(q)?,
            (Some(p), None) => (p, 1),
            (None, None) => return Err(parse_err("missing `q`")),
        };
        if let Some(p) = p {
            if p != pp {
                return Err(parse_err(format!("q is not a power of p = {p}")));
            }
        }
        Ok(make_field(pp, r)?)
    };
    let need = |key: &str| -> Result<&String, CurveError> {
        args.get(key).ok_or_else(|| parse_err(format!("missing `{key}`")))
    };
    match kind {
        "as" => {
            let base = base_field(int("p")?, int("q")?)?;
            let f = parse_rational_function(&base, need("f")?, &limits)?;
            CurveSpec::artin_schreier(&base, f)
        }
        "lin" => {
            let h = int("h")?.ok_or_else(|| parse_err("missing `h`"))?;
            let h = u32::try_from(h).map_err(|_| parse_err("`h` too large"))?;
            let base = base_field(None, int("q")?)?;
            let f = match args.get("f") {
                Some(expr) => parse_rational_function(&base, expr, &limits)?,
                None => {
                    let ph = crate::ffield::checked_pow(base.p(), h)
                        .ok_or(CurveError::UnsupportedLinearized)?;
                    RationalFunction::polynomial(Poly::monomial(&base, base.one(), ph as usize + 1))
                }
            };
            CurveSpec::linearized(&base, h, f)
        }
        "hermitian" => CurveSpec::hermitian(int("q")?.ok_or_else(|| parse_err("missing `q`"))?),
        "hyp" => {
            let base = base_field(None, int("q")?)?;
            let (num, den) = parse_rational(&base, need("f")?)?;
            if den.degree() != Some(0) {
                return Err(parse_err("hyperelliptic f must be a polynomial"));
            }
            let inv = base.inv(&den.coeffs()[0])?;
            CurveSpec::hyperelliptic(&base, num.scale(&base, &inv))
        }
        "legendre" => {
            let base = base_field(int("p")?, int("q")?)?;
            let lambda = parse_element(&base, need("lambda")?)?;
            CurveSpec::legendre(&base, lambda)
        }
        _ => unreachable!("family checked above"),
    }
}

fn parse_rational_function(
    field: &Field,
    expr: &str,
    limits: &Limits,
) -> Result<RationalFunction, CurveError> {
    let (num, den) = parse_rational(field, expr)?;
    RationalFunction::from_fraction(field, &num, &den, limits)
}

/// Parses an expression in `x` and `t` into `(numerator, denominator)`.
pub fn parse_rational(field: &Field, expr: &str) -> Result<(Poly, Poly), CurveError> {
    let mut parser = Parser {
        field,
        chars: expr.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        allow_x: true,
    };
    let value = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parse_err(format!(
            "unexpected `{}` in `{expr}`",
            parser.chars[parser.pos]
        )));
    }
    Ok((value.num, value.den))
}

/// Parses a constant expression in `t` to a field element.
pub fn parse_element(field: &Field, expr: &str) -> Result<Elem, CurveError> {
    let mut parser = Parser {
        field,
        chars: expr.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        allow_x: false,
    };
    let value = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parse_err(format!("trailing input in `{expr}`")));
    }
    let inv = field.inv(&value.den.coeff(field, 0))?;
    Ok(field.mul(&value.num.coeff(field, 0), &inv))
}

/// A fraction of polynomials during parsing.
struct Frac {
    num: Poly,
    den: Poly,
}

struct Parser<'a> {
    field: &'a Field,
    chars: Vec<char>,
    pos: usize,
    allow_x: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn constant(&self, c: Elem) -> Frac {
        Frac {
            num: Poly::constant(c),
            den: Poly::constant(self.field.one()),
        }
    }

    fn expr(&mut self) -> Result<Frac, CurveError> {
        let f = self.field;
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            let a = acc.num.mul(f, &rhs.den);
            let b = rhs.num.mul(f, &acc.den);
            acc = Frac {
                num: if op == '+' { a.add(f, &b) } else { a.sub(f, &b) },
                den: acc.den.mul(f, &rhs.den),
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac, CurveError> {
        let f = self.field;
        let mut acc = self.unary()?;
        loop {
            let op = match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    '*'
                }
                Some('/') => {
                    self.pos += 1;
                    '/'
                }
                // implicit product: `2x`, `(1+t)x`, `x(x+1)`
                Some(c) if c == '(' || c.is_ascii_alphabetic() => '*',
                _ => break,
            };
            let rhs = self.unary()?;
            acc = if op == '*' {
                Frac {
                    num: acc.num.mul(f, &rhs.num),
                    den: acc.den.mul(f, &rhs.den),
                }
            } else {
                if rhs.num.is_zero() {
                    return Err(parse_err("division by zero"));
                }
                Frac {
                    num: acc.num.mul(f, &rhs.den),
                    den: acc.den.mul(f, &rhs.num),
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Frac, CurveError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(Frac {
                num: v.num.neg(self.field),
                den: v.den,
            });
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| parse_err("exponent too large"))?;
            return Ok(Frac {
                num: base.num.pow(self.field, e),
                den: base.den.pow(self.field, e),
            });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64, CurveError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(parse_err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| parse_err(format!("integer `{s}` too large")))
    }

    fn atom(&mut self) -> Result<Frac, CurveError> {
        let f = self.field;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(parse_err("missing `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('x') if self.allow_x => {
                self.pos += 1;
                Ok(Frac {
                    num: Poly::x(f),
                    den: Poly::constant(f.one()),
                })
            }
            Some('t') => {
                self.pos += 1;
                Ok(self.constant(f.generator()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.constant(f.from_prime(n % f.p())))
            }
            Some(c) => Err(parse_err(format!("unexpected `{c}`"))),
            None => Err(parse_err("unexpected end of expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{CurveData, Family};

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(2).unwrap(), (2, 1));
        assert_eq!(prime_power(12), Err(CurveError::NotPrimePower(12)));
        assert_eq!(prime_power(1), Err(CurveError::NotPrimePower(1)));
    }

    #[test]
    fn element_expressions() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(parse_element(&f, "1+2*t").unwrap(), f.from_coeffs(&[1, 2]));
        assert_eq!(parse_element(&f, "t^2").unwrap(), f.from_coeffs(&[2, 0]));
        assert_eq!(parse_element(&f, "1/t").unwrap(), f.inv(&f.generator()).unwrap());
        assert!(parse_element(&f, "x").is_err());
    }

    #[test]
    fn partial_fractions() {
        let f = make_field(5, 1).unwrap();
        let spec = parse_curve("as p=5 q=5 f=x^2 + 3/(x-1)^2 + 1/x").unwrap();
        let CurveData::Linearized { f: rf, .. } = spec.data() else {
            panic!("linearized");
        };
        assert_eq!(rf.poly.degree(), Some(2));
        assert_eq!(rf.poles.len(), 2);
        let at1 = rf.poles.iter().find(|p| p.at == f.one()).unwrap();
        assert_eq!(at1.order(), 2);
        assert_eq!(at1.principal[1], f.from_prime(3));
        // agrees with direct evaluation of the expression
        let (num, den) = parse_rational(&f, "x^2 + 3/(x-1)^2 + 1/x").unwrap();
        for x in f.elements(&Limits::default()).unwrap().skip(2) {
            let direct = f.div(&num.eval(&f, &x), &den.eval(&f, &x)).unwrap();
            assert_eq!(rf.eval(&f, &x).unwrap(), direct);
        }
    }

    #[test]
    fn families_parse() {
        assert_eq!(parse_curve("hermitian q=3").unwrap().family(), Family::Hermitian);
        assert_eq!(parse_curve("lin h=2 q=4").unwrap().genus(), 6);
        assert_eq!(parse_curve("legendre p=5 lambda=2").unwrap().genus(), 1);
        assert!(parse_curve("foo q=3").is_err());
        assert!(parse_curve("as p=3 q=9 g=2 f=x").is_err());
        assert!(parse_curve("as p=2 q=9 f=x").is_err());
        let spaced = parse_curve("as p=2 q=2 f=x^3 + x").unwrap();
        assert_eq!(spaced.genus(), 1);
    }
}
