//! Exact arithmetic in `Q(ε)`, `ε = exp(2πi/r)`.
//!
//! Elements are stored as the canonical residue modulo the cyclotomic
//! polynomial `Φ_r`, so two elements are equal exactly when their coefficient
//! vectors are. Accumulation in the group ring `Q[x]/(x^r - 1)` is available
//! through [`GroupRingAccumulator`] and canonicalized once at the end.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer polynomial, coefficients from the constant term upward.
pub type IntPoly = Vec<BigInt>;

fn trim_int(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact quotient of integer polynomials where `divisor` is monic.
fn div_exact_monic(num: &[BigInt], divisor: &[BigInt]) -> IntPoly {
    let mut rem = num.to_vec();
    let dd = divisor.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (t, d) in divisor.iter().enumerate() {
            rem[k + t] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    trim_int(&mut quot);
    quot
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (s, x) in a.iter().enumerate() {
        for (t, y) in b.iter().enumerate() {
            out[s + t] += x * y;
        }
    }
    out
}

/// `Φ_r`, by dividing `x^r - 1` by `Φ_d` for every proper divisor `d` of `r`.
pub fn cyclotomic_polynomial(r: u32) -> Result<IntPoly> {
    if r == 0 {
        return Err(Error::ZeroIndex);
    }
    let r = r as usize;
    let mut table: Vec<Option<IntPoly>> = vec![None; r + 1];
    for d in 1..=r {
        if !r.is_multiple_of(d) {
            continue;
        }
        let mut num = vec![BigInt::zero(); d + 1];
        num[0] = -BigInt::one();
        num[d] = BigInt::one();
        let mut denom: IntPoly = vec![BigInt::one()];
        for (e, phi_e) in table.iter().enumerate().take(d).skip(1) {
            if d.is_multiple_of(e) {
                let phi_e = phi_e.as_ref().expect("divisors are visited in order");
                denom = mul_int(&denom, phi_e);
            }
        }
        table[d] = Some(div_exact_monic(&num, &denom));
    }
    Ok(table[r].take().expect("r divides itself"))
}

/// Euler's totient.
pub fn totient(r: u32) -> u32 {
    (1..=r).filter(|k| k.gcd(&r) == 1).count() as u32
}

#[derive(Debug)]
struct FieldData {
    r: u32,
    /// Monic `Φ_r` as rationals, length `φ(r) + 1`.
    modulus: Vec<Rational>,
    /// Canonical residues of `x^k` for `0 <= k < max(r, 2φ(r) - 1)`.
    powers: Vec<Vec<Rational>>,
}

/// The field `Q(ε_r)` with its precomputed reduction tables.
#[derive(Debug, Clone)]
pub struct CyclotomicField(Arc<FieldData>);

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.0.r == other.0.r
    }
}

impl Eq for CyclotomicField {}

impl CyclotomicField {
    pub fn new(r: u32) -> Result<Self> {
        let phi = cyclotomic_polynomial(r)?;
        let modulus: Vec<Rational> = phi.into_iter().map(Rational::from_integer).collect();
        let deg = modulus.len() - 1;
        let span = (r as usize).max(2 * deg);
        let mut powers = Vec::with_capacity(span);
        let mut cur = vec![Rational::zero(); deg];
        cur[0] = Rational::one();
        for _ in 0..span {
            powers.push(cur.clone());
            cur = shift_reduce(&cur, &modulus);
        }
        Ok(CyclotomicField(Arc::new(FieldData { r, modulus, powers })))
    }

    pub fn r(&self) -> u32 {
        self.0.r
    }

    /// `φ(r)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> CyclotomicNumber {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> CyclotomicNumber {
        let mut z = self.zero();
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(&self, n: i64) -> CyclotomicNumber {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `ε^j`, with `j` taken mod `r`.
    pub fn root_power(&self, j: i64) -> CyclotomicNumber {
        let k = j.rem_euclid(i64::from(self.0.r)) as usize;
        CyclotomicNumber {
            field: self.clone(),
            coeffs: self.0.powers[k].clone(),
        }
    }

    /// Canonicalize an arbitrary polynomial in `ε` (constant term first).
    pub fn reduce(&self, poly: &[Rational]) -> CyclotomicNumber {
        let mut z = self.zero();
        let d = self.degree();
        let mut extra: Vec<Rational> = Vec::new();
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                z.coeffs[k] += c;
            } else if let Some(p) = self.0.powers.get(k) {
                for (t, q) in p.iter().enumerate() {
                    z.coeffs[t] += c * q;
                }
            } else {
                if extra.len() <= k {
                    extra.resize(k + 1, Rational::zero());
                }
                extra[k] += c;
            }
        }
        if !extra.is_empty() {
            // very high powers: fold using x^r = 1
            let r = self.0.r as usize;
            let mut folded = vec![Rational::zero(); r];
            for (k, c) in extra.into_iter().enumerate() {
                folded[k % r] += c;
            }
            z += &self.reduce(&folded);
        }
        z
    }

    /// Parse the text form written by `Display`, e.g. `(3/2) + (-1/2)*e^1`.
    pub fn parse(&self, text: &str) -> Result<CyclotomicNumber> {
        parse_value(self, text)
    }
}

/// Multiply a canonical residue by `x` and reduce mod the monic `modulus`.
fn shift_reduce(p: &[Rational], modulus: &[Rational]) -> Vec<Rational> {
    let d = p.len();
    let mut out = vec![Rational::zero(); d];
    let top = p[d - 1].clone();
    for k in (1..d).rev() {
        out[k] = p[k - 1].clone();
    }
    if d > 0 {
        out[0] = Rational::zero();
    }
    if !top.is_zero() {
        for k in 0..d {
            out[k] -= &top * &modulus[k];
        }
    }
    out
}

/// An element of `Q(ε_r)` in canonical form.
#[derive(Debug, Clone)]
pub struct CyclotomicNumber {
    field: CyclotomicField,
    coeffs: Vec<Rational>,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl CyclotomicNumber {
    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn r(&self) -> u32 {
        self.field.r()
    }

    /// Coefficients on `1, ε, ..., ε^(φ(r)-1)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, q: &Rational) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Reduce again; a no-op on canonical values.
    pub fn canonicalize(&self) -> CyclotomicNumber {
        self.field.reduce(&self.coeffs)
    }

    fn check_field(&self, other: &CyclotomicNumber) {
        assert!(
            self.field == other.field,
            "cyclotomic fields differ: r = {} vs r = {}",
            self.r(),
            other.r()
        );
    }

    pub fn checked_mul(&self, other: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        if self.field != other.field {
            return Err(Error::IndexMismatch { left: self.r(), right: other.r() });
        }
        Ok(self * other)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_r`.
    pub fn inverse(&self) -> Result<CyclotomicNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus = self.field.0.modulus.clone();
        let (g, s) = ext_gcd(trim_q(self.coeffs.clone()), trim_q(modulus));
        // Φ_r is irreducible, so g is a nonzero constant
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        let scaled: Vec<Rational> = s.iter().map(|c| c * &inv_g).collect();
        Ok(self.field.reduce(&scaled))
    }

    pub fn pow(&self, mut e: u32) -> CyclotomicNumber {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Decimal rendering with at least `digits` correct fractional digits.
    pub fn approximate(&self, digits: u32) -> Approximation {
        approximate(self, digits)
    }

    /// Plain `f64` evaluation for plotting and quick checks.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let r = f64::from(self.r());
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = rational_to_f64(c);
            let theta = std::f64::consts::TAU * k as f64 / r;
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }
}

fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn trim_q(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Returns `(g, s)` with `s*a ≡ g (mod b)`, `g = gcd(a, b)` up to a unit.
fn ext_gcd(a: Vec<Rational>, b: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![Rational::one()], vec![Rational::zero()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, rem) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (s, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (t, y) in b.iter().enumerate() {
            out[s + t] += x * y;
        }
    }
    trim_q(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (k, x) in a.iter().enumerate() {
        out[k] += x;
    }
    for (k, y) in b.iter().enumerate() {
        out[k] -= y;
    }
    trim_q(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim_q(a.to_vec());
    let b = trim_q(b.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (t, y) in b.iter().enumerate() {
            rem[k + t] -= &c * y;
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    (trim_q(quot), trim_q(rem))
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_field(rhs);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_field(rhs);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_field(rhs);
        let d = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (s, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[s + t] += x * y;
                }
            }
        }
        self.field.reduce(&prod)
    }
}

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        self.check_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CyclotomicNumber {
    /// A rational value prints bare (`11/6`); otherwise every nonzero
    /// coefficient prints parenthesized, e.g. `(3/2) + (-1/2)*e^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*e^{k}")?;
            }
        }
        Ok(())
    }
}

/// Accumulates values in `Q[x]/(x^r - 1)` where multiplying by a root of
/// unity is a rotation, then canonicalizes once.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRingAccumulator {
    slots: Vec<Rational>,
}

impl GroupRingAccumulator {
    pub fn zero(r: u32) -> Self {
        GroupRingAccumulator {
            slots: vec![Rational::zero(); r as usize],
        }
    }

    pub fn one(r: u32) -> Self {
        let mut acc = Self::zero(r);
        acc.slots[0] = Rational::one();
        acc
    }

    pub fn slots(&self) -> &[Rational] {
        &self.slots
    }

    /// `self += q * ε^shift`.
    pub fn add_root_multiple(&mut self, shift: u64, q: &Rational) {
        let r = self.slots.len() as u64;
        self.slots[(shift % r) as usize] += q;
    }

    /// `self += q * ε^shift * other`.
    pub fn add_rotated_scaled(&mut self, other: &GroupRingAccumulator, shift: u64, q: &Rational) {
        let r = self.slots.len();
        let shift = (shift % r as u64) as usize;
        for (k, c) in other.slots.iter().enumerate() {
            if !c.is_zero() {
                self.slots[(k + shift) % r] += c * q;
            }
        }
    }

    pub fn add_assign(&mut self, other: &GroupRingAccumulator) {
        for (a, b) in self.slots.iter_mut().zip(&other.slots) {
            *a += b;
        }
    }

    pub fn canonicalize(&self, field: &CyclotomicField) -> CyclotomicNumber {
        field.reduce(&self.slots)
    }
}

/// Decimal rendering of a field element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximation {
    pub re: String,
    pub im: String,
}

impl fmt::Display for Approximation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

fn pow10(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), n as usize)
}

/// `atan(1/x)` scaled by `scale`, truncated.
fn atan_inv(x: u32, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = scale / &x;
    let mut sum = term.clone();
    let mut k = 1u32;
    loop {
        term = -(term / &x2);
        if term.is_zero() {
            break;
        }
        sum += &term / BigInt::from(2 * k + 1);
        k += 1;
    }
    sum
}

/// Machin's formula at fixed point.
fn pi_fixed(scale: &BigInt) -> BigInt {
    BigInt::from(16) * atan_inv(5, scale) - BigInt::from(4) * atan_inv(239, scale)
}

/// `(cos θ, sin θ)` at fixed point for `|θ| <= π`.
fn cos_sin_fixed(theta: &BigInt, scale: &BigInt) -> (BigInt, BigInt) {
    let mut cos = scale.clone();
    let mut sin = BigInt::zero();
    let mut term = scale.clone();
    let mut n = 1u32;
    loop {
        term = (&term * theta) / scale / BigInt::from(n);
        if term.is_zero() {
            break;
        }
        match n % 4 {
            1 => sin += &term,
            2 => cos -= &term,
            3 => sin -= &term,
            _ => cos += &term,
        }
        n += 1;
    }
    (cos, sin)
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    // half away from zero
    let twice: BigInt = num * BigInt::from(2);
    let q: BigInt = (twice.abs() + den) / (den * BigInt::from(2));
    if num.sign() == Sign::Minus {
        -q
    } else {
        q
    }
}

fn render_fixed(value: &BigInt, digits: u32) -> String {
    let neg = value.sign() == Sign::Minus;
    let mag = value.abs();
    let unit = pow10(digits);
    let (int_part, frac) = mag.div_rem(&unit);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac.to_string();
        s.push('.');
        for _ in frac.len()..digits as usize {
            s.push('0');
        }
        s.push_str(&frac);
    }
    s
}

fn approximate(c: &CyclotomicNumber, digits: u32) -> Approximation {
    let digits = digits.max(1);
    // guard digits absorb fixed-point truncation, amplified by the
    // coefficient magnitudes
    let mag_digits: u32 = c
        .coeffs
        .iter()
        .map(|q| (q.numer().abs().to_string().len() + 1) as u32)
        .max()
        .unwrap_or(1);
    let guard = 12 + mag_digits;
    let work = digits + guard;
    let scale = pow10(work);
    let r = i64::from(c.r());
    let pi = pi_fixed(&scale);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (k, q) in c.coeffs.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let k = k as i64;
        // angle 2πk/r folded into (-π, π]
        let folded = if 2 * k <= r { k } else { k - r };
        let theta = (&pi * BigInt::from(2 * folded)) / BigInt::from(r);
        let (cos, sin) = if folded == 0 {
            (scale.clone(), BigInt::zero())
        } else {
            cos_sin_fixed(&theta, &scale)
        };
        re += (q.numer() * cos) / q.denom();
        im += (q.numer() * sin) / q.denom();
    }
    let drop = pow10(guard);
    let re = round_div(&re, &drop);
    let im = round_div(&im, &drop);
    Approximation {
        re: render_fixed(&re, digits),
        im: render_fixed(&im, digits),
    }
}

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn parse_rational(text: &str, pos: usize) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| parse_err(pos, format!("bad integer `{num}`")))?;
    let den: BigInt = den.parse().map_err(|_| parse_err(pos, format!("bad integer `{den}`")))?;
    if den.is_zero() {
        return Err(parse_err(pos, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn parse_value(field: &CyclotomicField, text: &str) -> Result<CyclotomicNumber> {
    let bytes = text.as_bytes();
    let mut poly: Vec<Rational> = Vec::new();
    let mut pos = 0usize;
    let skip_ws = |p: &mut usize| {
        while *p < bytes.len() && bytes[*p].is_ascii_whitespace() {
            *p += 1;
        }
    };
    let mut expect_term = true;
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            if expect_term {
                return Err(parse_err(pos, "expected a term"));
            }
            break;
        }
        if !expect_term {
            if bytes[pos] != b'+' {
                return Err(parse_err(pos, "expected `+`"));
            }
            pos += 1;
            expect_term = true;
            continue;
        }
        let start = pos;
        let coeff = if bytes[pos] == b'(' {
            let close = text[pos..]
                .find(')')
                .map(|k| pos + k)
                .ok_or_else(|| parse_err(pos, "unclosed `(`"))?;
            let q = parse_rational(&text[pos + 1..close], pos + 1)?;
            pos = close + 1;
            q
        } else if bytes[pos] == b'e' {
            Rational::one()
        } else {
            let end = text[pos..]
                .find(|ch: char| ch == '+' || ch == '*' || ch.is_whitespace())
                .map(|k| pos + k)
                .unwrap_or(bytes.len());
            // allow a leading sign on bare rationals
            let end = if end == pos && matches!(bytes[pos], b'-' | b'+') {
                text[pos + 1..]
                    .find(|ch: char| ch == '+' || ch == '*' || ch.is_whitespace())
                    .map(|k| pos + 1 + k)
                    .unwrap_or(bytes.len())
            } else {
                end
            };
            let q = parse_rational(&text[pos..end], start)?;
            pos = end;
            q
        };
        skip_ws(&mut pos);
        let mut power = 0usize;
        let rest = &text[pos..];
        let after_star = rest.strip_prefix('*').map(str::trim_start);
        let e_part = match (bytes.get(start), after_star) {
            (Some(b'e'), _) => Some(rest),
            (_, Some(s)) => Some(s),
            _ => None,
        };
        if let Some(s) = e_part {
            let consumed_before = text.len() - s.len();
            let s = s
                .strip_prefix("e^")
                .ok_or_else(|| parse_err(consumed_before, "expected `e^k`"))?;
            let digits_len = s.bytes().take_while(u8::is_ascii_digit).count();
            if digits_len == 0 {
                return Err(parse_err(consumed_before + 2, "expected exponent"));
            }
            power = s[..digits_len].parse().map_err(|_| parse_err(consumed_before + 2, "bad exponent"))?;
            pos = consumed_before + 2 + digits_len;
        }
        if poly.len() <= power {
            poly.resize(power + 1, Rational::zero());
        }
        poly[power] += coeff;
        expect_term = false;
    }
    Ok(field.reduce(&poly))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(p: &[i64]) -> IntPoly {
        p.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2).unwrap(), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(6).unwrap(), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12).unwrap(), ints(&[1, 0, -1, 0, 1]));
        assert!(cyclotomic_polynomial(0).is_err());
        for r in 1..=30 {
            assert_eq!(cyclotomic_polynomial(r).unwrap().len() as u32 - 1, totient(r));
        }
    }

    #[test]
    fn product_of_cyclotomics_is_x_pow_r_minus_one() {
        for r in 1..=24u32 {
            let mut prod = ints(&[1]);
            for d in 1..=r {
                if r % d == 0 {
                    prod = mul_int(&prod, &cyclotomic_polynomial(d).unwrap());
                }
            }
            let mut expected = vec![BigInt::zero(); r as usize + 1];
            expected[0] = BigInt::from(-1);
            expected[r as usize] = BigInt::one();
            assert_eq!(prod, expected);
        }
    }

    #[test]
    fn root_power_examples() {
        let f2 = CyclotomicField::new(2).unwrap();
        assert_eq!(f2.root_power(1), f2.from_integer(-1));
        let f4 = CyclotomicField::new(4).unwrap();
        assert_eq!(f4.root_power(2), f4.from_integer(-1));
        let f3 = CyclotomicField::new(3).unwrap();
        assert_eq!(&f3.root_power(1) + &f3.root_power(2), f3.from_integer(-1));
        assert_eq!(f3.root_power(0), f3.one());
        assert_eq!(f3.root_power(-1), f3.root_power(2));
    }

    #[test]
    fn roots_sum_to_zero() {
        for r in 1..=12u32 {
            let f = CyclotomicField::new(r).unwrap();
            let mut total = f.zero();
            for j in 0..r {
                total += &f.root_power(i64::from(j));
            }
            let expected = if r == 1 { f.one() } else { f.zero() };
            assert_eq!(total, expected, "r={r}");
        }
    }

    #[test]
    fn root_orders() {
        for r in 2..=8u32 {
            let f = CyclotomicField::new(r).unwrap();
            for j in 1..r {
                let z = f.root_power(i64::from(j));
                let order = (1..=r).find(|&e| z.pow(e) == f.one()).unwrap();
                assert_eq!(order, r / j.gcd(&r), "r={r} j={j}");
            }
            for a in 0..r {
                for b in 0..r {
                    assert_eq!(
                        &f.root_power(i64::from(a)) * &f.root_power(i64::from(b)),
                        f.root_power(i64::from(a + b))
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_and_division_by_zero() {
        let f = CyclotomicField::new(5).unwrap();
        let x = f.reduce(&[q(1, 2), q(-3, 1), q(0, 1), q(7, 4)]);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, f.one());
        assert_eq!(f.zero().inverse(), Err(Error::DivisionByZero));
        let g = CyclotomicField::new(1).unwrap();
        assert_eq!(g.from_rational(q(3, 7)).inverse().unwrap(), g.from_rational(q(7, 3)));
    }

    #[test]
    fn reduce_is_idempotent() {
        let f = CyclotomicField::new(6).unwrap();
        let poly: Vec<Rational> = (0..20).map(|k| q(k * k - 7, k + 1)).collect();
        let once = f.reduce(&poly);
        assert_eq!(once.canonicalize(), once);
        assert_eq!(once.coeffs().len(), 2);
    }

    #[test]
    fn group_ring_matches_field() {
        let f = CyclotomicField::new(6).unwrap();
        let mut acc = GroupRingAccumulator::one(6);
        let mut direct = f.one();
        for (shift, n) in [(1u64, 2i64), (5, 3), (4, 7)] {
            let mut next = GroupRingAccumulator::zero(6);
            next.add_rotated_scaled(&acc, shift, &q(1, n));
            acc = next;
            direct = (&direct * &f.root_power(shift as i64)).scale(&q(1, n));
        }
        assert_eq!(acc.canonicalize(&f), direct);
    }

    #[test]
    fn approximations() {
        let f1 = CyclotomicField::new(1).unwrap();
        assert_eq!(f1.one().approximate(3).to_string(), "(1.000, 0.000)");
        let f4 = CyclotomicField::new(4).unwrap();
        assert_eq!(f4.root_power(1).approximate(5).to_string(), "(0.00000, 1.00000)");
        let f3 = CyclotomicField::new(3).unwrap();
        let e3 = f3.root_power(1).approximate(7);
        assert_eq!(e3.re, "-0.5000000");
        assert_eq!(e3.im, "0.8660254");
        assert_eq!(f1.from_rational(q(11, 6)).approximate(12).re, "1.833333333333");
        assert_eq!(f1.from_rational(q(-1, 3)).approximate(4).re, "-0.3333");
        // 40 digits of sqrt(3)/2
        let e40 = f3.root_power(1).approximate(40);
        assert_eq!(e40.im, "0.8660254037844386467637231707529361834714");
        let (re, im) = f3.root_power(2).to_complex_f64();
        assert!((re + 0.5).abs() < 1e-12 && (im + 0.75f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn display_and_parse() {
        let f = CyclotomicField::new(3).unwrap();
        let x = f.reduce(&[q(3, 2), q(-1, 2)]);
        assert_eq!(x.to_string(), "(3/2) + (-1/2)*e^1");
        assert_eq!(f.parse(&x.to_string()).unwrap(), x);
        assert_eq!(f.from_rational(q(11, 6)).to_string(), "11/6");
        assert_eq!(f.parse("11/6").unwrap(), f.from_rational(q(11, 6)));
        assert_eq!(f.parse("-2").unwrap(), f.from_integer(-2));
        assert_eq!(f.parse("e^2").unwrap(), f.root_power(2));
        assert_eq!(f.zero().to_string(), "0");
        assert!(f.parse("(1/2").is_err());
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("").is_err());
    }
}
