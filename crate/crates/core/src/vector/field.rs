//! Exact arithmetic in Q(i, √2, √3, √5).
//!
//! An element is a rational combination of the sixteen monomials
//! `i^a √2^b √3^c √5^d` over a shared positive denominator. The cube root
//! of unity `w = (-1 + i√3)/2` lives here too, so every component alphabet
//! used for KS coordinatizations is covered.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

const I: usize = 1;
const R2: usize = 2;
const R3: usize = 4;
const R5: usize = 8;

/// Coefficient picked up when multiplying monomials `a` and `b`.
fn mono_factor(a: usize, b: usize) -> i128 {
    let both = a & b;
    let mut f: i128 = 1;
    if both & I != 0 {
        f = -f;
    }
    if both & R2 != 0 {
        f *= 2;
    }
    if both & R3 != 0 {
        f *= 3;
    }
    if both & R5 != 0 {
        f *= 5;
    }
    f
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cx {
    num: [i64; 16],
    den: i64,
}

impl Cx {
    pub const ZERO: Cx = Cx { num: [0; 16], den: 1 };
    pub const ONE: Cx = Cx::int(1);

    pub const fn int(n: i64) -> Cx {
        let mut num = [0; 16];
        num[0] = n;
        Cx { num, den: 1 }
    }

    pub fn rational(n: i64, d: i64) -> Cx {
        assert!(d != 0, "zero denominator");
        let mut wide = [0i128; 16];
        wide[0] = n as i128;
        Self::from_wide(wide, d as i128)
    }

    pub fn i() -> Cx {
        Self::mono(I)
    }

    pub fn sqrt2() -> Cx {
        Self::mono(R2)
    }

    pub fn sqrt3() -> Cx {
        Self::mono(R3)
    }

    pub fn sqrt5() -> Cx {
        Self::mono(R5)
    }

    /// `w = e^{2πi/3}`.
    pub fn omega() -> Cx {
        let mut wide = [0i128; 16];
        wide[0] = -1;
        wide[I | R3] = 1;
        Self::from_wide(wide, 2)
    }

    fn mono(m: usize) -> Cx {
        let mut num = [0; 16];
        num[m] = 1;
        Cx { num, den: 1 }
    }

    fn from_wide(mut num: [i128; 16], mut den: i128) -> Cx {
        if den < 0 {
            den = -den;
            for c in &mut num {
                *c = -*c;
            }
        }
        let g = num.iter().fold(den, |g, &c| gcd(g, c));
        let narrow = |x: i128| i64::try_from(x / g).expect("coefficient exceeds 64 bits");
        Cx { num: num.map(narrow), den: narrow(den) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    /// The rational value, if the element is rational.
    pub fn as_rational(&self) -> Option<(i64, i64)> {
        self.num[1..].iter().all(|&c| c == 0).then_some((self.num[0], self.den))
    }

    pub fn conj(&self) -> Cx {
        self.galois(I)
    }

    /// Flips the sign of every generator in `s`.
    fn galois(&self, s: usize) -> Cx {
        let mut out = *self;
        for (m, c) in out.num.iter_mut().enumerate() {
            if (m & s).count_ones() % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }

    /// Multiplicative inverse: the product of the other fifteen Galois
    /// conjugates divided by the (rational) norm.
    pub fn inv(&self) -> Option<Cx> {
        if self.is_zero() {
            return None;
        }
        let mut co = Cx::ONE;
        for s in 1..16 {
            co = co * self.galois(s);
        }
        let norm = *self * co;
        let (n, d) = norm.as_rational().expect("norm is rational");
        Some(co * Cx::rational(d, n))
    }

    pub fn pow(&self, e: u32) -> Cx {
        (0..e).fold(Cx::ONE, |acc, _| acc * *self)
    }

    /// Coefficients `(p, q)` with `self = p + q w`, when the element lies in
    /// Q(w).
    fn omega_coords(&self) -> Option<((i64, i64), (i64, i64))> {
        if self.num.iter().enumerate().any(|(m, &c)| c != 0 && m != 0 && m != I | R3) {
            return None;
        }
        // a + b i√3 = (a + b) + 2b w
        let a = Cx::rational(self.num[0], self.den);
        let b = Cx::rational(self.num[I | R3], self.den);
        let p = (a + b).as_rational()?;
        let q = (b + b).as_rational()?;
        Some((p, q))
    }
}

impl Default for Cx {
    fn default() -> Self {
        Cx::ZERO
    }
}

impl Add for Cx {
    type Output = Cx;
    fn add(self, o: Cx) -> Cx {
        let (a, b) = (self.den as i128, o.den as i128);
        let mut num = [0i128; 16];
        for (m, n) in num.iter_mut().enumerate() {
            *n = self.num[m] as i128 * b + o.num[m] as i128 * a;
        }
        Cx::from_wide(num, a * b)
    }
}

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { num: self.num.map(|c| -c), den: self.den }
    }
}

impl Sub for Cx {
    type Output = Cx;
    fn sub(self, o: Cx) -> Cx {
        self + -o
    }
}

impl Mul for Cx {
    type Output = Cx;
    fn mul(self, o: Cx) -> Cx {
        let mut num = [0i128; 16];
        for (a, &x) in self.num.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, &y) in o.num.iter().enumerate() {
                if y != 0 {
                    num[a ^ b] += x as i128 * y as i128 * mono_factor(a, b);
                }
            }
        }
        Cx::from_wide(num, self.den as i128 * o.den as i128)
    }
}

fn fmt_rational(f: &mut fmt::Formatter<'_>, (n, d): (i64, i64)) -> fmt::Result {
    if d == 1 {
        write!(f, "{n}")
    } else {
        write!(f, "{n}/{d}")
    }
}

/// Writes the element in the expression grammar accepted by [`parse_component`]:
/// `p+q*w` inside Q(w), otherwise a sum of monomial terms.
impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if let Some((p, q)) = self.omega_coords() {
            if q.0 != 0 {
                if p.0 != 0 {
                    fmt_rational(f, p)?;
                    f.write_str(if q.0 > 0 { "+" } else { "-" })?;
                } else if q.0 < 0 {
                    f.write_str("-")?;
                }
                let q = (q.0.abs(), q.1);
                if q != (1, 1) {
                    fmt_rational(f, q)?;
                    f.write_str("*")?;
                }
                return f.write_str("w");
            }
        }
        let mut first = true;
        for (m, &c) in self.num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let g = gcd(c as i128, self.den as i128) as i64;
            let (n, d) = (c / g, self.den / g);
            if !first {
                f.write_str(if n > 0 { "+" } else { "-" })?;
            } else if n < 0 {
                f.write_str("-")?;
            }
            first = false;
            let coeff = (n.abs(), d);
            let atoms: Vec<&str> = [(I, "i"), (R2, "r2"), (R3, "r3"), (R5, "r5")]
                .iter()
                .filter(|(bit, _)| m & bit != 0)
                .map(|(_, s)| *s)
                .collect();
            if atoms.is_empty() {
                fmt_rational(f, coeff)?;
            } else {
                if coeff != (1, 1) {
                    fmt_rational(f, coeff)?;
                    f.write_str("*")?;
                }
                f.write_str(&atoms.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad component `{text}`: {reason}")]
pub struct ComponentError {
    pub text: String,
    pub reason: &'static str,
}

/// Parses a component expression over `i`, `w`, `r2`, `r3`, `r5` and
/// integers with `+ - * / ^` and parentheses.
pub fn parse_component(text: &str) -> Result<Cx, ComponentError> {
    let tokens: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = ExprParser { t: &tokens, pos: 0 };
    let err = |reason| ComponentError { text: text.to_string(), reason };
    let v = p.expr().map_err(err)?;
    if p.pos != tokens.len() {
        return Err(err("trailing characters"));
    }
    Ok(v)
}

struct ExprParser<'a> {
    t: &'a [char],
    pos: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<char> {
        self.t.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Cx, &'static str> {
        let mut v = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let r = self.term()?;
            v = if c == '+' { v + r } else { v - r };
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<Cx, &'static str> {
        let mut v = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let r = self.unary()?;
            v = if c == '*' { v * r } else { v * r.inv().ok_or("division by zero")? };
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<Cx, &'static str> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Cx, &'static str> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(base.pow(u32::try_from(e).map_err(|_| "exponent too large")?));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, &'static str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err("expected a number");
        }
        self.t[start..self.pos].iter().collect::<String>().parse().map_err(|_| "number too large")
    }

    fn atom(&mut self) -> Result<Cx, &'static str> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err("missing `)`");
                }
                self.pos += 1;
                Ok(v)
            }
            Some('i') => {
                self.pos += 1;
                Ok(Cx::i())
            }
            Some('w') => {
                self.pos += 1;
                Ok(Cx::omega())
            }
            Some('r') => {
                self.pos += 1;
                let v = match self.peek() {
                    Some('2') => Cx::sqrt2(),
                    Some('3') => Cx::sqrt3(),
                    Some('5') => Cx::sqrt5(),
                    _ => return Err("only r2, r3 and r5 are supported"),
                };
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(Cx::int(self.integer()?)),
            _ => Err("unexpected character"),
        }
    }
}
