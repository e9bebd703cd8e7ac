//! Multiple harmonic sums at roots of unity.
//!
//! A word `z[i_1,j_1] ... z[i_k,j_k]` codes the sum
//!
//! ```text
//! A_w(n) = Σ_{n ≥ n_1 > n_2 > ... > n_k ≥ 1} Π_t ε^(j_t n_t) / n_t^(i_t)
//! ```
//!
//! with `ε = exp(2πi/r)`; `S_w(n)` is the same sum over weakly decreasing
//! indices. `A` extends linearly to a map `ρ_n` from the algebra into
//! `Q(ε)`, and `S_w(n) = ρ_n(overline(w))`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{AlgebraElement, EulerAlgebra};
use crate::cyclotomic::{CyclotomicField, CyclotomicNumber, GroupRingAccumulator, Rational};
use crate::error::{Error, Result};
use crate::words::{act_on_word, enumerate_compositions, Word};

/// Strict (`A`) or weak (`S`) inequalities between summation indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumKind {
    A,
    S,
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumKind::A => "A",
            SumKind::S => "S",
        })
    }
}

impl FromStr for SumKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(SumKind::A),
            "S" | "s" => Ok(SumKind::S),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown sum kind `{s}`") }),
        }
    }
}

/// An evaluated sum together with its inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicValue {
    pub word: Word,
    pub n: u64,
    pub kind: SumKind,
    pub value: CyclotomicNumber,
}

impl HarmonicValue {
    pub fn r(&self) -> u32 {
        self.value.r()
    }
}

/// `lcm(1..=n)^|w|`: a multiple of every denominator in `A_u(m)`, `S_u(m)`
/// for suffixes `u` of `w` and `m ≤ n`.
fn common_denominator(w: &Word, n: u64) -> BigInt {
    let lcm = (1..=n.max(1)).fold(BigInt::one(), |acc, m| acc.lcm(&BigInt::from(m)));
    num_traits::pow(lcm, w.degree() as usize)
}

/// Direct nested summation. Works over integers scaled by `L^|w|` with
/// `L = lcm(1..=n)`, so each partial coefficient divides exactly.
fn nested_sum(w: &Word, n: u64, kind: SumKind, r: u32) -> GroupRingAccumulator {
    fn go(
        letters: &[crate::words::Letter],
        max: u64,
        kind: SumKind,
        shift: u64,
        coeff: &BigInt,
        slots: &mut [BigInt],
        r: u64,
    ) {
        let Some((a, rest)) = letters.split_first() else {
            slots[shift as usize] += coeff;
            return;
        };
        for m in 1..=max {
            let c = coeff / num_traits::pow(BigInt::from(m), a.weight() as usize);
            let s = (shift + u64::from(a.root()) * (m % r)) % r;
            let next = match kind {
                SumKind::A => m - 1,
                SumKind::S => m,
            };
            go(rest, next, kind, s, &c, slots, r);
        }
    }
    let scale = common_denominator(w, n);
    let mut slots = vec![BigInt::zero(); r as usize];
    go(w.letters(), n, kind, 0, &scale, &mut slots, u64::from(r));
    let mut acc = GroupRingAccumulator::zero(r);
    for (k, c) in slots.into_iter().enumerate() {
        acc.add_root_multiple(k as u64, &Rational::new(c, scale.clone()));
    }
    acc
}

/// Evaluates sums for a fixed index `r`, with a per-session value cache.
#[derive(Debug)]
pub struct HarmonicEvaluator {
    field: CyclotomicField,
    algebra: EulerAlgebra,
    /// `A_w(0..=m)` for the largest `m` requested so far.
    cache: RwLock<HashMap<Word, Vec<CyclotomicNumber>>>,
    weak_cache: RwLock<HashMap<(Word, u64), CyclotomicNumber>>,
}

impl HarmonicEvaluator {
    pub fn new(r: u32) -> Result<Self> {
        Ok(HarmonicEvaluator {
            field: CyclotomicField::new(r)?,
            algebra: EulerAlgebra::new(r)?,
            cache: RwLock::default(),
            weak_cache: RwLock::default(),
        })
    }

    pub fn r(&self) -> u32 {
        self.field.r()
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn algebra(&self) -> &EulerAlgebra {
        &self.algebra
    }

    fn check(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|a| !a.fits(self.r())) {
            Some(&letter) => Err(Error::LetterOutsideAlgebra { letter, r: self.r() }),
            None => Ok(()),
        }
    }

    /// Direct nested summation with strict inequalities.
    pub fn eval_a_bruteforce(&self, w: &Word, n: u64) -> Result<CyclotomicNumber> {
        self.check(w)?;
        Ok(nested_sum(w, n, SumKind::A, self.r()).canonicalize(&self.field))
    }

    /// Direct nested summation with weak inequalities.
    pub fn eval_s_bruteforce(&self, w: &Word, n: u64) -> Result<CyclotomicNumber> {
        self.check(w)?;
        Ok(nested_sum(w, n, SumKind::S, self.r()).canonicalize(&self.field))
    }

    /// `A_w(n)` by dynamic programming over suffixes:
    /// `A_{a w'}(m) = A_{a w'}(m-1) + ε^(j_a m) / m^(i_a) · A_{w'}(m-1)`.
    pub fn eval_a(&self, w: &Word, n: u64) -> Result<CyclotomicNumber> {
        self.check(w)?;
        let idx = n as usize;
        if let Some(v) = self.cache.read().expect("cache poisoned").get(w).and_then(|row| row.get(idx)) {
            return Ok(v.clone());
        }
        let row: Vec<CyclotomicNumber> = self
            .suffix_table(w, n)
            .iter()
            .map(|acc| acc.canonicalize(&self.field))
            .collect();
        let value = row[idx].clone();
        let mut cache = self.cache.write().expect("cache poisoned");
        let entry = cache.entry(w.clone()).or_default();
        if entry.len() < row.len() {
            *entry = row;
        }
        Ok(value)
    }

    /// `A_w(m)` for `m = 0..=n`, unreduced. Runs on integer numerators over
    /// `lcm(1..=n)^|w|`, which every entry of the table divides into exactly.
    fn suffix_table(&self, w: &Word, n: u64) -> Vec<GroupRingAccumulator> {
        let r = self.r() as usize;
        let len = n as usize + 1;
        let scale = common_denominator(w, n);
        let unit = {
            let mut slots = vec![BigInt::zero(); r];
            slots[0] = scale.clone();
            slots
        };
        // row[m] = A_{suffix}(m); the empty suffix is identically 1
        let mut row: Vec<Vec<BigInt>> = vec![unit; len];
        for a in w.letters().iter().rev() {
            let mut next: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); r]; len];
            for m in 1..len {
                let (done, todo) = next.split_at_mut(m);
                let cur = &mut todo[0];
                cur.clone_from(&done[m - 1]);
                let power = num_traits::pow(BigInt::from(m), a.weight() as usize);
                let shift = (a.root() as usize * m) % r;
                for (k, c) in row[m - 1].iter().enumerate() {
                    if !c.is_zero() {
                        cur[(k + shift) % r] += c / &power;
                    }
                }
            }
            row = next;
        }
        row.into_iter()
            .map(|slots| {
                let mut acc = GroupRingAccumulator::zero(self.r());
                for (k, c) in slots.into_iter().enumerate() {
                    if !c.is_zero() {
                        acc.add_root_multiple(k as u64, &Rational::new(c, scale.clone()));
                    }
                }
                acc
            })
            .collect()
    }

    /// `S_w(n) = ρ_n(overline(w))`.
    pub fn eval_s(&self, w: &Word, n: u64) -> Result<CyclotomicNumber> {
        let key = (w.clone(), n);
        if let Some(v) = self.weak_cache.read().expect("cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let value = self.rho(&self.algebra.overline(w)?, n)?;
        self.weak_cache
            .write()
            .expect("cache poisoned")
            .insert(key, value.clone());
        Ok(value)
    }

    pub fn eval(&self, w: &Word, n: u64, kind: SumKind) -> Result<HarmonicValue> {
        let value = match kind {
            SumKind::A => self.eval_a(w, n)?,
            SumKind::S => self.eval_s(w, n)?,
        };
        Ok(HarmonicValue { word: w.clone(), n, kind, value })
    }

    /// `ρ_n`, the linear extension of `w ↦ A_w(n)`.
    pub fn rho(&self, x: &AlgebraElement, n: u64) -> Result<CyclotomicNumber> {
        if x.r() != self.r() {
            return Err(Error::IndexMismatch { left: self.r(), right: x.r() });
        }
        let mut acc = self.field.zero();
        for (w, c) in x.terms() {
            acc += &self.eval_a(w, n)?.scale(c);
        }
        Ok(acc)
    }

    /// Evaluate an element written in overline coordinates: `Σ c_w S_w(n)`.
    pub fn rho_overline(&self, x: &AlgebraElement, n: u64) -> Result<CyclotomicNumber> {
        let mut acc = self.field.zero();
        for (w, c) in x.terms() {
            acc += &self.eval_s(w, n)?.scale(c);
        }
        Ok(acc)
    }

    /// Product of sums of the given kind over a list of words.
    pub fn product(&self, words: &[Word], n: u64, kind: SumKind) -> Result<CyclotomicNumber> {
        let mut acc = self.field.one();
        for w in words {
            let v = match kind {
                SumKind::A => self.eval_a(w, n)?,
                SumKind::S => self.eval_s(w, n)?,
            };
            acc = &acc * &v;
        }
        Ok(acc)
    }

    pub fn clear_cache(&self) {
        self.cache.write().expect("cache poisoned").clear();
        self.weak_cache.write().expect("cache poisoned").clear();
        self.algebra.clear_cache();
    }
}

/// `A_w` in terms of `S`: `w = Σ_J (-1)^(ℓ(w)-ℓ(J)) overline(J[w])`.
///
/// The result is expressed in overline coordinates; evaluate it with
/// [`HarmonicEvaluator::rho_overline`].
pub fn a_from_s_expansion(w: &Word, r: u32) -> Result<AlgebraElement> {
    if w.is_empty() {
        return Ok(AlgebraElement::one(r));
    }
    let mut out = AlgebraElement::zero(r);
    for comp in enumerate_compositions(w.len())? {
        let sign = if (w.len() - comp.len()).is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        out.add_term(act_on_word(&comp, w, r)?, sign);
    }
    Ok(out)
}

/// A signed sum of products of sums: `Σ sign · Π_t X_{w_t}(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductExpansion {
    pub terms: Vec<(i8, Vec<Word>)>,
}

impl ProductExpansion {
    pub fn evaluate(&self, ev: &HarmonicEvaluator, n: u64, kind: SumKind) -> Result<CyclotomicNumber> {
        let mut acc = ev.field().zero();
        for (sign, words) in &self.terms {
            let p = ev.product(words, n, kind)?;
            acc = if *sign > 0 { &acc + &p } else { &acc - &p };
        }
        Ok(acc)
    }
}

fn factorization_terms(w: &Word, min_parts: usize) -> Result<Vec<(i8, Vec<Word>)>> {
    let rev = w.reversed();
    let mut out = Vec::new();
    for comp in enumerate_compositions(w.len())? {
        if comp.len() < min_parts {
            continue;
        }
        let sign = if (w.len() - comp.len()).is_multiple_of(2) { 1 } else { -1 };
        out.push((sign, rev.factor(&comp)?));
    }
    Ok(out)
}

/// Factorizations `w_1 ... w_k = R(w)` with sign `(-1)^(ℓ(w)-k)`.
///
/// Evaluated with `A`-values this gives `S_w(n)`; evaluated with `S`-values it
/// gives `A_w(n)`.
pub fn product_expansion(w: &Word) -> Result<ProductExpansion> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(ProductExpansion { terms: factorization_terms(w, 1)? })
}

/// The identity
/// `A_w + (-1)^ℓ(w) A_{R(w)} = Σ_{k>1} (-1)^(ℓ(w)-k) Π A_{w_t} - Σ_{u ≺ w} A_u`
/// where every term on the right has length below `ℓ(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityIdentity {
    pub word: Word,
    /// Factorizations of `R(w)` into at least two pieces.
    pub products: ProductExpansion,
    /// Coarsenings `J[w]` for every composition `J` other than `(1,...,1)`,
    /// one entry per composition.
    pub strict_coarsenings: Vec<Word>,
}

impl DualityIdentity {
    pub fn lhs(&self, ev: &HarmonicEvaluator, n: u64) -> Result<CyclotomicNumber> {
        let a = ev.eval_a(&self.word, n)?;
        let b = ev.eval_a(&self.word.reversed(), n)?;
        Ok(if self.word.len().is_multiple_of(2) { &a + &b } else { &a - &b })
    }

    pub fn rhs(&self, ev: &HarmonicEvaluator, n: u64) -> Result<CyclotomicNumber> {
        let mut acc = self.products.evaluate(ev, n, SumKind::A)?;
        for u in &self.strict_coarsenings {
            acc = &acc - &ev.eval_a(u, n)?;
        }
        Ok(acc)
    }

    /// Longest word appearing on the right-hand side.
    pub fn max_rhs_length(&self) -> usize {
        self.products
            .terms
            .iter()
            .flat_map(|(_, ws)| ws.iter().map(Word::len))
            .chain(self.strict_coarsenings.iter().map(Word::len))
            .max()
            .unwrap_or(0)
    }
}

pub fn duality_reduction(w: &Word, r: u32) -> Result<DualityIdentity> {
    if w.len() < 2 {
        return Err(Error::OutOfRange("word length", 2));
    }
    let products = ProductExpansion { terms: factorization_terms(w, 2)? };
    let strict_coarsenings = enumerate_compositions(w.len())?
        .iter()
        .skip(1) // (1,...,1) comes first
        .map(|c| act_on_word(c, w, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(DualityIdentity {
        word: w.clone(),
        products,
        strict_coarsenings,
    })
}
