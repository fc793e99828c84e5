//! Exact univariate polynomial arithmetic over the rationals.
//!
//! Two layers: [`RatPoly`] is a general dense polynomial with full arithmetic,
//! used for derivatives, gcds and Sturm chains; [`Polynomial`] is the monic
//! equation polynomial with degree >= 1, the form every public entry point
//! takes. All coefficients are exact rationals; nothing here rounds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{format_rational, parse_rational, rational_to_f64};

/// Dense rational polynomial; `coeffs[i]` is the coefficient of `x^i`.
/// The zero polynomial is the empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// `x - r`.
    pub fn linear_root(r: &BigRational) -> Self {
        Self::from_coeffs(vec![-r.clone(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    /// Exact formal derivative.
    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        RatPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        RatPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut exp: usize) -> RatPoly {
        let mut result = RatPoly::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Polynomial long division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let d_deg = divisor.degree().expect("division by zero polynomial");
        let d_lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d_deg)];
        while rem.len() > d_deg {
            let k = rem.len() - 1 - d_deg;
            let factor = rem.last().unwrap() / &d_lead;
            if !factor.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    let t = &factor * dc;
                    rem[k + i] -= t;
                }
                quot[k] = factor;
            }
            rem.pop();
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &RatPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd via a primitive polynomial remainder sequence over the
    /// integers, which keeps coefficient growth in check.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = int_primitive(self.to_int_scaled());
        let mut b = int_primitive(other.to_int_scaled());
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = int_primitive(int_pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        let coeffs = a.into_iter().map(BigRational::from_integer).collect::<Vec<_>>();
        RatPoly::from_coeffs(coeffs).monic()
    }

    /// Clears denominators: an integer polynomial with the same roots.
    pub fn to_int_scaled(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
    }
}

fn int_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = int_trim(v);
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if content.is_zero() || content.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a  mod  b`.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead_b = b.last().unwrap();
    let mut rem = a.to_vec();
    while rem.len() > db {
        let lead_r = rem.last().unwrap().clone();
        let k = rem.len() - 1 - db;
        for c in rem.iter_mut() {
            *c *= lead_b;
        }
        for (i, bc) in b.iter().enumerate() {
            rem[k + i] -= &lead_r * bc;
        }
        rem = int_trim(rem);
    }
    rem
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", format_rational(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", format_rational(&mag))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The monic equation polynomial: exact rational coefficients, degree >= 1,
/// leading coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    inner: RatPoly,
}

impl Polynomial {
    /// Normalizes to monic form; rejects the zero polynomial and constants.
    pub fn from_coefficients(coeffs: Vec<BigRational>) -> Result<Self> {
        let raw = RatPoly::from_coeffs(coeffs);
        Self::from_ratpoly(raw)
    }

    pub fn from_ratpoly(raw: RatPoly) -> Result<Self> {
        match raw.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Err(Error::DegreeZero),
            Some(_) => Ok(Self { inner: raw.monic() }),
        }
    }

    /// Parses either a comma-separated coefficient list (constant term first)
    /// or a symbolic expression in `x`, then normalizes to monic form.
    pub fn parse(text: &str) -> Result<Self> {
        let raw = if text.contains(',') {
            let coeffs = text
                .split(',')
                .map(|tok| {
                    parse_rational(tok)
                        .map_err(|_| Error::ParsePolynomial(format!("bad coefficient {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if coeffs.last().is_some_and(Zero::is_zero) {
                return Err(Error::ParsePolynomial("leading coefficient must be nonzero".into()));
            }
            RatPoly::from_coeffs(coeffs)
        } else {
            parse_expression(text)?
        };
        Self::from_ratpoly(raw)
    }

    pub fn degree(&self) -> usize {
        self.inner.degree().expect("invariant: degree >= 1")
    }

    /// Coefficients `a_0 ..= a_n`, with `a_n = 1`.
    pub fn coefficients(&self) -> &[BigRational] {
        self.inner.coeffs()
    }

    pub fn coefficient(&self, i: usize) -> BigRational {
        self.inner.coeff(i)
    }

    pub fn as_ratpoly(&self) -> &RatPoly {
        &self.inner
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.inner.eval(x)
    }

    /// Exact formal derivative; not re-normalized to monic (it may be a
    /// constant, for degree-1 input).
    pub fn derivative(&self) -> RatPoly {
        self.inner.derivative()
    }

    /// Whether `self` divides `other` exactly.
    pub fn divides(&self, other: &Polynomial) -> bool {
        self.inner.divides(&other.inner)
    }

    /// Yun's square-free decomposition: monic, pairwise-coprime square-free
    /// factors with their multiplicities, ordered by increasing multiplicity.
    /// The product of `factor^multiplicity` reproduces the input exactly.
    pub fn squarefree_decompose(&self) -> Vec<(Polynomial, usize)> {
        let p = &self.inner;
        let dp = p.derivative();
        let g = p.gcd(&dp);
        if g.degree() == Some(0) {
            return vec![(self.clone(), 1)];
        }
        let mut out = Vec::new();
        let mut c = p.exact_div(&g).expect("gcd divides");
        let mut d = dp.exact_div(&g).expect("gcd divides derivative").sub(&c.derivative());
        let mut mult = 1;
        while c.degree() > Some(0) {
            let a = c.gcd(&d);
            let c_next = c.exact_div(&a).expect("gcd divides c");
            d = d.exact_div(&a).expect("gcd divides d").sub(&c_next.derivative());
            c = c_next;
            if a.degree() > Some(0) {
                out.push((Polynomial { inner: a }, mult));
            }
            mult += 1;
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Polynomial::parse(s)
    }
}

// ---------------------------------------------------------------------------
// Expression parser: +, -, *, /, ^, parentheses, integer/decimal/fraction
// literals, the single variable x. Implicit multiplication ("2x", "x^2(x-1)")
// is accepted. Division is exact and only by nonzero constants.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigRational),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                tokens.push(Token::Plus);
                chars.next();
            }
            // ASCII hyphen or the unicode minus some sources use.
            '-' | '\u{2212}' => {
                tokens.push(Token::Minus);
                chars.next();
            }
            '*' => {
                tokens.push(Token::Star);
                chars.next();
            }
            '/' => {
                tokens.push(Token::Slash);
                chars.next();
            }
            '^' => {
                tokens.push(Token::Caret);
                chars.next();
            }
            '(' => {
                tokens.push(Token::LParen);
                chars.next();
            }
            ')' => {
                tokens.push(Token::RParen);
                chars.next();
            }
            'x' | 'X' => {
                tokens.push(Token::Var);
                chars.next();
            }
            '0'..='9' | '.' => {
                let mut end = start;
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_digit() || d == '.' {
                        end = i + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let lit = &text[start..end];
                let value = parse_rational(lit)
                    .map_err(|_| Error::ParsePolynomial(format!("bad numeric literal {lit:?}")))?;
                tokens.push(Token::Number(value));
            }
            _ => {
                return Err(Error::ParsePolynomial(format!("unexpected character {c:?}")));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RatPoly> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Token::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.next();
                    let rhs = self.unary()?;
                    if rhs.degree() != Some(0) {
                        return Err(Error::ParsePolynomial(
                            "division is only supported by nonzero constants".into(),
                        ));
                    }
                    let inv = rhs.coeff(0).recip();
                    acc = acc.scale(&inv);
                }
                // Implicit multiplication: "2x", "x^2(x-1)".
                Some(Token::Number(_)) | Some(Token::Var) | Some(Token::LParen) => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatPoly> {
        let mut negate = false;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Minus => {
                    negate = !negate;
                    self.next();
                }
                Token::Plus => {
                    self.next();
                }
                _ => break,
            }
        }
        let p = self.power()?;
        Ok(if negate { p.neg() } else { p })
    }

    fn power(&mut self) -> Result<RatPoly> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.next();
            let exp = match self.next() {
                Some(Token::Number(n)) if n.is_integer() && !n.is_negative() => n
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::ParsePolynomial("exponent too large".into()))?,
                other => {
                    return Err(Error::ParsePolynomial(format!(
                        "exponent must be a nonnegative integer, got {other:?}"
                    )));
                }
            };
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatPoly> {
        match self.next() {
            Some(Token::Number(n)) => Ok(RatPoly::constant(n)),
            Some(Token::Var) => Ok(RatPoly::x()),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::ParsePolynomial("unbalanced parentheses".into())),
                }
            }
            other => Err(Error::ParsePolynomial(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_expression(text: &str) -> Result<RatPoly> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::ParsePolynomial("empty input".into()));
    }
    let mut parser = Parser { tokens, pos: 0 };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::ParsePolynomial(format!("trailing input at token {}", parser.pos)));
    }
    Ok(poly)
}
