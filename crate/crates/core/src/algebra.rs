//! The quasi-shuffle Hopf algebra on the letters `z[i,j]`.
//!
//! Elements are finite linear combinations of words with exact rational
//! coefficients, stored in the canonical graded-lexicographic word order.
//! [`EulerAlgebra`] fixes the index `r` and owns the memo tables for the
//! word-level products.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_traits::{One, Signed, Zero};

use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::words::{act_on_word, bracket, enumerate_compositions, Letter, Word};

type Terms = BTreeMap<Word, Rational>;

fn add_term(terms: &mut Terms, w: Word, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// A finite linear combination of words over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    r: u32,
    terms: Terms,
}

impl AlgebraElement {
    pub fn zero(r: u32) -> Self {
        AlgebraElement { r, terms: Terms::new() }
    }

    /// The unit `1`.
    pub fn one(r: u32) -> Self {
        Self::word(r, Word::empty())
    }

    /// A single word with coefficient one. The word is not validated; use
    /// [`AlgebraElement::from_word`] for untrusted input.
    pub fn word(r: u32, w: Word) -> Self {
        let mut terms = Terms::new();
        terms.insert(w, Rational::one());
        AlgebraElement { r, terms }
    }

    pub fn from_word(r: u32, w: Word) -> Result<Self> {
        check_word(&w, r)?;
        Ok(Self::word(r, w))
    }

    pub fn from_terms<I>(r: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        let mut out = Self::zero(r);
        for (w, c) in terms {
            check_word(&w, r)?;
            add_term(&mut out.terms, w, c);
        }
        Ok(out)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        add_term(&mut self.terms, w, c);
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(self.r);
        }
        AlgebraElement {
            r: self.r,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * q)).collect(),
        }
    }

    /// Linear extension of a word map.
    pub fn map_words<F: FnMut(&Word) -> Word>(&self, mut f: F) -> Self {
        let mut out = Self::zero(self.r);
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Linear extension of a map from words to elements.
    pub fn flat_map<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&Word) -> Result<AlgebraElement>,
    {
        let mut out = Self::zero(self.r);
        for (w, c) in &self.terms {
            let image = f(w)?;
            for (v, d) in image.terms {
                out.add_term(v, d * c);
            }
        }
        Ok(out)
    }

    /// True when every term has the same degree (the zero element counts).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Word::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.r == other.r {
            Ok(())
        } else {
            Err(Error::IndexMismatch { left: self.r, right: other.r })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }
}

fn check_word(w: &Word, r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::ZeroIndex);
    }
    match w.letters().iter().find(|a| !a.fits(r)) {
        Some(&letter) => Err(Error::LetterOutsideAlgebra { letter, r }),
        None => Ok(()),
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    /// Panics if the indices differ; see [`AlgebraElement::checked_add`].
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("adding elements of different algebras")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            r: self.r,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for AlgebraElement {
    /// Canonical text: `2 z[1,0] z[1,0] + z[2,0]`, unit word as a bare
    /// coefficient, `0` for the zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag} {w}")?;
            }
        }
        Ok(())
    }
}

/// An element of the tensor square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    r: u32,
    terms: BTreeMap<(Word, Word), Rational>,
}

impl TensorElement {
    pub fn zero(r: u32) -> Self {
        TensorElement { r, terms: BTreeMap::new() }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, left: &Word, right: &Word) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `f ⊗ g` applied termwise with word maps.
    pub fn map_words<F, G>(&self, mut f: F, mut g: G) -> Self
    where
        F: FnMut(&Word) -> Word,
        G: FnMut(&Word) -> Word,
    {
        let mut out = Self::zero(self.r);
        for ((u, v), c) in &self.terms {
            out.add_term(f(u), g(v), c.clone());
        }
        out
    }

    /// `(ε ⊗ id)`: keep terms whose left factor is `1`.
    pub fn counit_left(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.r);
        for ((u, v), c) in &self.terms {
            if u.is_empty() {
                out.add_term(v.clone(), c.clone());
            }
        }
        out
    }

    /// `(id ⊗ ε)`.
    pub fn counit_right(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.r);
        for ((u, v), c) in &self.terms {
            if v.is_empty() {
                out.add_term(u.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((u, v), c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{u} ⊗ {v}")?;
        }
        Ok(())
    }
}

/// Which word-level recursion to run: the quasi-shuffle `*`, or its signed
/// variant that expresses `*` in the overline basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Stuffle {
    Plus,
    Minus,
}

type ProductCache = RwLock<HashMap<(Word, Word), Arc<Terms>>>;

/// The algebra of index `r` together with its product memo tables.
///
/// The caches are internally synchronized and never change results, so one
/// instance may be shared across threads.
#[derive(Debug)]
pub struct EulerAlgebra {
    r: u32,
    plus: ProductCache,
    minus: ProductCache,
}

impl Clone for EulerAlgebra {
    fn clone(&self) -> Self {
        EulerAlgebra::new(self.r).expect("index already validated")
    }
}

impl EulerAlgebra {
    pub fn new(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroIndex);
        }
        Ok(EulerAlgebra {
            r,
            plus: RwLock::default(),
            minus: RwLock::default(),
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn letter(&self, i: u32, j: u32) -> Result<Letter> {
        Letter::new(i, j, self.r)
    }

    pub fn word(&self, pairs: &[(u32, u32)]) -> Result<Word> {
        Word::from_pairs(pairs, self.r)
    }

    pub fn element(&self, w: Word) -> Result<AlgebraElement> {
        AlgebraElement::from_word(self.r, w)
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::one(self.r)
    }

    pub fn clear_cache(&self) {
        self.plus.write().expect("cache poisoned").clear();
        self.minus.write().expect("cache poisoned").clear();
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        if x.r == self.r {
            Ok(())
        } else {
            Err(Error::IndexMismatch { left: self.r, right: x.r })
        }
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        check_word(w, self.r)
    }

    fn word_product(&self, u: &Word, v: &Word, kind: Stuffle) -> Arc<Terms> {
        if u.is_empty() || v.is_empty() {
            let mut t = Terms::new();
            t.insert(if u.is_empty() { v.clone() } else { u.clone() }, Rational::one());
            return Arc::new(t);
        }
        // both recursions are commutative, so key on the ordered pair
        let key = if u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
        let cache = match kind {
            Stuffle::Plus => &self.plus,
            Stuffle::Minus => &self.minus,
        };
        if let Some(hit) = cache.read().expect("cache poisoned").get(&key) {
            return Arc::clone(hit);
        }
        let (u, v) = (&key.0, &key.1);
        let a = u.letters()[0];
        let b = v.letters()[0];
        let w = u.tail();
        let rest = v.tail();
        let ab = bracket(&[a, b], self.r).expect("letters validated on entry");
        let mut out = Terms::new();
        for (x, c) in self.word_product(&w, v, kind).iter() {
            add_term(&mut out, x.prepend(a), c.clone());
        }
        for (x, c) in self.word_product(u, &rest, kind).iter() {
            add_term(&mut out, x.prepend(b), c.clone());
        }
        for (x, c) in self.word_product(&w, &rest, kind).iter() {
            let c = match kind {
                Stuffle::Plus => c.clone(),
                Stuffle::Minus => -c,
            };
            add_term(&mut out, x.prepend(ab), c);
        }
        let out = Arc::new(out);
        cache
            .write()
            .expect("cache poisoned")
            .entry(key)
            .or_insert_with(|| Arc::clone(&out));
        out
    }

    fn bilinear(&self, x: &AlgebraElement, y: &AlgebraElement, kind: Stuffle) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        for w in x.terms.keys().chain(y.terms.keys()) {
            self.check_word(w)?;
        }
        let mut out = AlgebraElement::zero(self.r);
        for (u, c) in &x.terms {
            for (v, d) in &y.terms {
                let cd = c * d;
                for (w, e) in self.word_product(u, v, kind).iter() {
                    out.add_term(w.clone(), e * &cd);
                }
            }
        }
        Ok(out)
    }

    /// The quasi-shuffle product `x * y`.
    pub fn star(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.bilinear(x, y, Stuffle::Plus)
    }

    /// `u * v` for two words.
    pub fn star_words(&self, u: &Word, v: &Word) -> Result<AlgebraElement> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(AlgebraElement {
            r: self.r,
            terms: (*self.word_product(u, v, Stuffle::Plus)).clone(),
        })
    }

    /// Iterated product; the empty product is `1`.
    pub fn star_all<'a, I>(&self, factors: I) -> Result<AlgebraElement>
    where
        I: IntoIterator<Item = &'a AlgebraElement>,
    {
        let mut acc = self.one();
        for f in factors {
            acc = self.star(&acc, f)?;
        }
        Ok(acc)
    }

    /// Deconcatenation coproduct.
    pub fn coproduct(&self, x: &AlgebraElement) -> Result<TensorElement> {
        self.check(x)?;
        let mut out = TensorElement::zero(self.r);
        for (w, c) in &x.terms {
            for p in 0..=w.len() {
                out.add_term(w.slice(0, p), w.slice(p, w.len()), c.clone());
            }
        }
        Ok(out)
    }

    /// Coefficient of the empty word.
    pub fn counit(&self, x: &AlgebraElement) -> Rational {
        x.coefficient(&Word::empty())
    }

    /// Multiply the two tensor factors back together.
    pub fn contract(&self, t: &TensorElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(self.r);
        for ((u, v), c) in &t.terms {
            for (w, e) in self.word_product(u, v, Stuffle::Plus).iter() {
                out.add_term(w.clone(), e * c);
            }
        }
        Ok(out)
    }

    /// The antipode, computed word by word with the composition formula
    /// `S(w) = (-1)^ℓ(w) Σ_I I[R(w)]`.
    pub fn antipode(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        x.flat_map(|w| self.antipode_via_compositions(w))
    }

    pub fn antipode_via_compositions(&self, w: &Word) -> Result<AlgebraElement> {
        self.check_word(w)?;
        if w.is_empty() {
            return Ok(self.one());
        }
        let rev = w.reversed();
        let sign = if w.len().is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        let mut out = AlgebraElement::zero(self.r);
        for comp in enumerate_compositions(w.len())? {
            out.add_term(act_on_word(&comp, &rev, self.r)?, sign.clone());
        }
        Ok(out)
    }

    /// The antipode from iterated products over all factorizations,
    /// `S(w) = Σ_{w_1...w_k = w} (-1)^k w_1 * ... * w_k`.
    pub fn antipode_via_products(&self, w: &Word) -> Result<AlgebraElement> {
        self.check_word(w)?;
        if w.is_empty() {
            return Ok(self.one());
        }
        let mut out = AlgebraElement::zero(self.r);
        for comp in enumerate_compositions(w.len())? {
            let factors: Vec<AlgebraElement> = w
                .factor(&comp)?
                .into_iter()
                .map(|f| AlgebraElement::word(self.r, f))
                .collect();
            let prod = self.star_all(&factors)?;
            let sign = if comp.len() % 2 == 0 { Rational::one() } else { -Rational::one() };
            out = &out + &prod.scale(&sign);
        }
        Ok(out)
    }

    /// `overline(w) = Σ_{J ∈ C(ℓ(w))} J[w]`, with `overline(1) = 1`.
    pub fn overline(&self, w: &Word) -> Result<AlgebraElement> {
        self.check_word(w)?;
        if w.is_empty() {
            return Ok(self.one());
        }
        let mut out = AlgebraElement::zero(self.r);
        for comp in enumerate_compositions(w.len())? {
            out.add_term(act_on_word(&comp, w, self.r)?, Rational::one());
        }
        Ok(out)
    }

    /// Read `x` as coordinates in the overline basis and expand into words.
    pub fn expand_overline(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        x.flat_map(|w| self.overline(w))
    }

    /// Product of `overline(u)` and `overline(v)`, returned in overline
    /// coordinates. Runs the product recursion with the bracket term negated.
    pub fn overline_star(&self, u: &Word, v: &Word) -> Result<AlgebraElement> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(AlgebraElement {
            r: self.r,
            terms: (*self.word_product(u, v, Stuffle::Minus)).clone(),
        })
    }

    /// Bilinear extension of [`EulerAlgebra::overline_star`].
    pub fn overline_star_elements(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.bilinear(x, y, Stuffle::Minus)
    }

    /// Linear word reversal `R`.
    pub fn reverse(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        Ok(x.map_words(Word::reversed))
    }
}
