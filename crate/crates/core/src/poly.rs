//! Exact multivariate polynomials over Gaussian rationals, and their
//! fraction field.
//!
//! Coefficients of every operator in this crate live here. The ring is
//! `Q(i)[p1, ..., pn]` for a declared set of parameter names (for the
//! models shipped in the catalog these are `c1`, `c2` and `t`), and the
//! elimination engine works over the corresponding fraction field. There
//! is no floating point anywhere: zero tests are exact and equality is
//! decidable.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};
use num_complex::Complex;

use crate::errors::{Result, SpinError};

/// A Gaussian rational: `re + im*i` with exact rational parts.
pub type GRat = Complex<BigRational>;

pub fn grat_zero() -> GRat {
    Complex::new(BigRational::zero(), BigRational::zero())
}

pub fn grat_one() -> GRat {
    Complex::new(BigRational::one(), BigRational::zero())
}

pub fn grat_i() -> GRat {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn grat_int(n: i64) -> GRat {
    Complex::new(BigRational::from(BigInt::from(n)), BigRational::zero())
}

pub fn grat_ratio(num: i64, den: i64) -> GRat {
    Complex::new(
        BigRational::new(BigInt::from(num), BigInt::from(den)),
        BigRational::zero(),
    )
}

/// `i^k` for `k mod 4`.
pub fn grat_i_pow(k: u8) -> GRat {
    match k % 4 {
        0 => grat_one(),
        1 => grat_i(),
        2 => -grat_one(),
        _ => -grat_i(),
    }
}

fn grat_inv(a: &GRat) -> GRat {
    let norm = &a.re * &a.re + &a.im * &a.im;
    Complex::new(&a.re / &norm, -&a.im / &norm)
}

/// The declared parameter names of a coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSet {
    names: Vec<String>,
}

impl ParamSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Ring {
        Arc::new(ParamSet {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    /// The ring with no parameters (plain Gaussian rationals).
    pub fn empty() -> Ring {
        Arc::new(ParamSet { names: Vec::new() })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub type Ring = Arc<ParamSet>;

/// Exponent vector, one entry per declared parameter.
type Mono = Vec<u16>;

fn mono_mul(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mono_divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_div(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A multivariate polynomial over Gaussian rationals.
///
/// Terms are kept in a map keyed by exponent vector (lexicographic order);
/// zero coefficients are never stored, so the zero polynomial has an empty
/// term map and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Mono, GRat>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, c: GRat) -> Poly {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(vec![0; ring.len()], c);
        }
        p
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, grat_one())
    }

    pub fn int(ring: &Ring, n: i64) -> Poly {
        Poly::constant(ring, grat_int(n))
    }

    /// The polynomial `name`, which must be a declared parameter.
    pub fn var(ring: &Ring, name: &str) -> Result<Poly> {
        let idx = ring
            .index(name)
            .ok_or_else(|| SpinError::RingMismatch(name.to_string()))?;
        let mut mono = vec![0u16; ring.len()];
        mono[idx] = 1;
        let mut p = Poly::zero(ring);
        p.terms.insert(mono, grat_one());
        Ok(p)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    /// True when the polynomial is a single term `c * p1^a1 ... pn^an`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<GRat> {
        if self.is_zero() {
            return Some(grat_zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    fn assert_ring(&self, other: &Poly) {
        assert_eq!(
            self.ring.names(),
            other.ring.names(),
            "polynomial ring mismatch"
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone()).or_insert_with(grat_zero);
            *entry += c.clone();
            if entry.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_ring(other);
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = mono_mul(ma, mb);
                let c = ca * cb;
                let entry = out.terms.entry(m).or_insert_with(grat_zero);
                *entry += c;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn scale(&self, c: &GRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c.clone();
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Leading (lexicographically largest) term.
    fn leading(&self) -> Option<(&Mono, &GRat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> GRat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(grat_zero)
    }

    /// Total degree in the given variable index.
    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    /// Variables actually occurring.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.len())
            .filter(|&v| self.degree_in(v) > 0)
            .collect()
    }

    /// Evaluate at a full assignment of the parameters.
    pub fn eval(&self, point: &[GRat]) -> GRat {
        assert_eq!(point.len(), self.ring.len());
        let mut acc = grat_zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= point[v].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division; panics if `other` does not divide `self`.
    fn divexact(&self, other: &Poly) -> Poly {
        let (q, r) = self.divrem(other);
        assert!(r.is_zero(), "divexact: division was not exact");
        q
    }

    /// Multivariate division by a single divisor under lex order.
    fn divrem(&self, other: &Poly) -> (Poly, Poly) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let (dm, dc) = {
            let (m, c) = other.leading().unwrap();
            (m.clone(), c.clone())
        };
        let dc_inv = grat_inv(&dc);
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        loop {
            // find the largest remaining term divisible by the divisor's leading monomial
            let target = rem
                .terms
                .iter()
                .rev()
                .find(|(m, _)| mono_divides(&dm, m))
                .map(|(m, c)| (m.clone(), c.clone()));
            match target {
                None => break,
                Some((m, c)) => {
                    let qm = mono_div(&m, &dm);
                    let qc = &c * &dc_inv;
                    let mut single = Poly::zero(&self.ring);
                    single.terms.insert(qm, qc);
                    quot = quot.add(&single);
                    rem = rem.sub(&single.mul(other));
                }
            }
        }
        (quot, rem)
    }

    /// Split off the monomial content: returns `(monomial, primitive)` with
    /// `self = monomial * primitive` where `monomial` is the GCD of all terms'
    /// monomials times 1 and `primitive` has unit leading coefficient.
    pub fn monomial_content_split(&self) -> (Mono, Poly) {
        if self.is_zero() {
            return (vec![0; self.ring.len()], self.clone());
        }
        let mut gcd_m = self.terms.keys().next().unwrap().clone();
        for m in self.terms.keys() {
            for (g, e) in gcd_m.iter_mut().zip(m) {
                *g = (*g).min(*e);
            }
        }
        let mut prim = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            prim.terms.insert(mono_div(m, &gcd_m), c.clone());
        }
        (gcd_m, prim)
    }

    /// Normalize so the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&grat_inv(&lc))
    }

    /// Coefficients of `self` viewed as univariate in `var`, constant term first.
    fn univar_coeffs(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![Poly::zero(&self.ring); deg + 1];
        for (m, c) in &self.terms {
            let e = m[var] as usize;
            let mut m2 = m.clone();
            m2[var] = 0;
            let entry = coeffs[e].terms.entry(m2).or_insert_with(grat_zero);
            *entry += c.clone();
        }
        for p in &mut coeffs {
            p.terms.retain(|_, c| !c.is_zero());
        }
        coeffs
    }

    fn from_univar(ring: &Ring, var: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(ring);
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut m2 = m.clone();
                m2[var] += e as u16;
                out.terms.insert(m2, c.clone());
            }
        }
        out
    }
}

/// GCD of two polynomials, normalized monic. Constants have GCD one.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    a.assert_ring(b);
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.ring());
    }
    // main variable: the highest-index variable occurring in either
    let var = a
        .support_vars()
        .into_iter()
        .chain(b.support_vars())
        .max()
        .unwrap();
    let da = a.degree_in(var);
    let db = b.degree_in(var);
    if da == 0 {
        let cont_b = content_in(b, var);
        return poly_gcd(a, &cont_b);
    }
    if db == 0 {
        let cont_a = content_in(a, var);
        return poly_gcd(b, &cont_a);
    }
    let cont_a = content_in(a, var);
    let cont_b = content_in(b, var);
    let c = poly_gcd(&cont_a, &cont_b);
    let mut u = a.divexact(&cont_a);
    let mut v = b.divexact(&cont_b);
    if u.degree_in(var) < v.degree_in(var) {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let r = pseudo_rem(&u, &v, var);
        if r.is_zero() {
            let cont_v = content_in(&v, var);
            return c.mul(&v.divexact(&cont_v)).monic();
        }
        if r.degree_in(var) == 0 {
            return c.monic();
        }
        u = v;
        let cont_r = content_in(&r, var);
        v = r.divexact(&cont_r);
    }
}

/// Content of `p` w.r.t. `var`: GCD of its univariate coefficients.
fn content_in(p: &Poly, var: usize) -> Poly {
    let coeffs = p.univar_coeffs(var);
    let mut g = Poly::zero(p.ring());
    for c in &coeffs {
        if !c.is_zero() {
            g = poly_gcd(&g, c);
            if g.is_constant() && !g.is_zero() {
                return Poly::one(p.ring());
            }
        }
    }
    g
}

/// Pseudo-remainder of `u` by `v` in variable `var`.
fn pseudo_rem(u: &Poly, v: &Poly, var: usize) -> Poly {
    let mut r = u.univar_coeffs(var);
    let vc = v.univar_coeffs(var);
    let dv = vc.len() - 1;
    let lv = vc[dv].clone();
    let trim = |r: &mut Vec<Poly>| {
        while r.len() > 1 && r.last().unwrap().is_zero() {
            r.pop();
        }
    };
    trim(&mut r);
    while r.len() - 1 >= dv && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r = lv * r - lr * x^(dr-dv) * v ; degree strictly drops
        for c in r.iter_mut() {
            *c = c.mul(&lv);
        }
        for (k, vk) in vc.iter().enumerate() {
            let idx = dr - dv + k;
            r[idx] = r[idx].sub(&lr.mul(vk));
        }
        trim(&mut r);
    }
    Poly::from_univar(u.ring(), var, &r)
}

/// An element of the fraction field `Q(i)(p1, ..., pn)`.
///
/// Always normalized: GCD of numerator and denominator is a unit, the
/// denominator has leading coefficient one, and zero is `0/1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficient {
    num: Poly,
    den: Poly,
}

impl Coefficient {
    pub fn new(num: Poly, den: Poly) -> Coefficient {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Coefficient {
                den: Poly::one(num.ring()),
                num,
            };
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.divexact(&g);
        let mut den = den.divexact(&g);
        let lc = den.leading_coeff();
        let lc_inv = grat_inv(&lc);
        num = num.scale(&lc_inv);
        den = den.scale(&lc_inv);
        Coefficient { num, den }
    }

    pub fn from_poly(p: Poly) -> Coefficient {
        let one = Poly::one(p.ring());
        Coefficient { num: p, den: one }
    }

    pub fn zero(ring: &Ring) -> Coefficient {
        Coefficient::from_poly(Poly::zero(ring))
    }

    pub fn one(ring: &Ring) -> Coefficient {
        Coefficient::from_poly(Poly::one(ring))
    }

    pub fn int(ring: &Ring, n: i64) -> Coefficient {
        Coefficient::from_poly(Poly::int(ring, n))
    }

    pub fn constant(ring: &Ring, c: GRat) -> Coefficient {
        Coefficient::from_poly(Poly::constant(ring, c))
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Coefficient> {
        Ok(Coefficient::from_poly(Poly::var(ring, name)?))
    }

    pub fn ring(&self) -> &Ring {
        self.num.ring()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        Coefficient::new(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Coefficient) -> Coefficient {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Coefficient {
        Coefficient {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        Coefficient::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Coefficient) -> Coefficient {
        assert!(!other.is_zero(), "division by zero coefficient");
        Coefficient::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Coefficient {
        assert!(!self.is_zero(), "inverting zero coefficient");
        Coefficient::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &GRat) -> Coefficient {
        Coefficient::new(self.num.scale(c), self.den.clone())
    }

    /// Evaluate at a parameter point; `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[GRat]) -> Option<GRat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) * grat_inv(&d))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // leading term first
        for (m, c) in self.terms.iter().rev() {
            let (sign, mag) = grat_sign_split(c);
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_term(f, &mag, m, self.ring.names())?;
        }
        Ok(())
    }
}

/// Split a Gaussian rational into (is_negative, magnitude-as-printed).
fn grat_sign_split(c: &GRat) -> (bool, GRat) {
    if c.im.is_zero() {
        if c.re < BigRational::zero() {
            return (true, -c.clone());
        }
    } else if c.re.is_zero() && c.im < BigRational::zero() {
        return (true, -c.clone());
    }
    (false, c.clone())
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &GRat,
    mono: &[u16],
    names: &[String],
) -> fmt::Result {
    let trivial_mono = mono.iter().all(|&e| e == 0);
    let coeff_str = grat_to_string(c);
    if trivial_mono {
        return write!(f, "{coeff_str}");
    }
    let is_one = c.im.is_zero() && c.re.is_one();
    if !is_one {
        write!(f, "{coeff_str}*")?;
    }
    let mut firstv = true;
    for (v, &e) in mono.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !firstv {
            write!(f, "*")?;
        }
        firstv = false;
        if e == 1 {
            write!(f, "{}", names[v])?;
        } else {
            write!(f, "{}^{}", names[v], e)?;
        }
    }
    Ok(())
}

fn grat_to_string(c: &GRat) -> String {
    if c.im.is_zero() {
        format!("{}", c.re)
    } else if c.re.is_zero() {
        if c.im.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", c.im)
        }
    } else {
        format!("({}+{}*i)", c.re, c.im)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            let c = self.den.constant_value().unwrap();
            if c.is_one() {
                return write!(f, "{}", self.num);
            }
            let scaled = self.num.scale(&grat_inv(&c));
            return write!(f, "{}", scaled);
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

/// Parse a coefficient expression: `+ - * / ^`, parentheses, integers,
/// `i`, and declared parameter names. Examples: `-8*t^3`, `c1*c2`,
/// `(t^2-1)/2`, `1/2`.
pub fn parse_coeff(ring: &Ring, input: &str) -> Result<Coefficient> {
    let mut p = Parser {
        ring: ring.clone(),
        chars: input.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(SpinError::Parse(format!(
            "unexpected trailing input at {} in `{input}`",
            p.pos
        )));
    }
    Ok(e)
}

struct Parser {
    ring: Ring,
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Coefficient> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Coefficient> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let fct = self.factor()?;
                    acc = acc.mul(&fct);
                }
                Some('/') => {
                    self.pos += 1;
                    let fct = self.factor()?;
                    if fct.is_zero() {
                        return Err(SpinError::Parse("division by zero".into()));
                    }
                    acc = acc.div(&fct);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Coefficient> {
        self.skip_ws();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                self.skip_ws();
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let e = self.uint()?;
                    if base.is_polynomial() {
                        Ok(Coefficient::from_poly(base.num().pow(e)))
                    } else {
                        let mut acc = Coefficient::one(&self.ring);
                        for _ in 0..e {
                            acc = acc.mul(&base);
                        }
                        Ok(acc)
                    }
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Coefficient> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(SpinError::Parse("expected `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()? as i64;
                Ok(Coefficient::int(&self.ring, n))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "i" {
                    Ok(Coefficient::constant(&self.ring, grat_i()))
                } else {
                    Coefficient::var(&self.ring, &name)
                }
            }
            other => Err(SpinError::Parse(format!("unexpected input: {other:?}"))),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(SpinError::Parse("expected integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u32>()
            .map_err(|e| SpinError::Parse(format!("bad integer `{s}`: {e}")))
    }
}
