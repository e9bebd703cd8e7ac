//! Letters `z[i,j]`, words over them, compositions, and the combinatorial
//! actions on words: bracketing, block coarsening, reversal and Lyndon tests.
//!
//! The ambient index `r` is not stored in letters; routines that need the
//! modulus for the second subscript take it explicitly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The symbol `z[i,j]` with `i >= 1` and `0 <= j < r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    i: u32,
    j: u32,
}

impl Letter {
    pub fn new(i: u32, j: u32, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroIndex);
        }
        if i == 0 || j >= r {
            return Err(Error::InvalidLetter { i, j, r });
        }
        Ok(Letter { i, j })
    }

    /// Exponent weight (first subscript).
    pub fn weight(&self) -> u32 {
        self.i
    }

    /// Root-of-unity index (second subscript).
    pub fn root(&self) -> u32 {
        self.j
    }

    pub fn fits(&self, r: u32) -> bool {
        self.j < r
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z[{},{}]", self.i, self.j)
    }
}

/// Sum all subscripts, the second one mod `r`.
pub fn bracket(letters: &[Letter], r: u32) -> Result<Letter> {
    if r == 0 {
        return Err(Error::ZeroIndex);
    }
    if letters.is_empty() {
        return Err(Error::EmptyBracket);
    }
    let mut i = 0u32;
    let mut j = 0u64;
    for a in letters {
        if !a.fits(r) {
            return Err(Error::LetterOutsideAlgebra { letter: *a, r });
        }
        i += a.i;
        j += u64::from(a.j);
    }
    Ok(Letter {
        i,
        j: (j % u64::from(r)) as u32,
    })
}

/// A finite word; the empty word is the unit `1`.
///
/// Words are ordered graded-lexicographically: by degree, then length, then
/// letter sequence. This is the canonical term order for serialization and is
/// unrelated to the [`LetterOrder`] used for Lyndon tests.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Build a word from `(i, j)` pairs, validating each against `r`.
    pub fn from_pairs(pairs: &[(u32, u32)], r: u32) -> Result<Self> {
        pairs
            .iter()
            .map(|&(i, j)| Letter::new(i, j, r))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn letter(a: Letter) -> Self {
        Word(vec![a])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// `|w|`, the sum of first subscripts.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|a| a.i).sum()
    }

    /// `ℓ(w)`, the number of letters.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn fits(&self, r: u32) -> bool {
        self.0.iter().all(|a| a.fits(r))
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn tail(&self) -> Word {
        Word(self.0.get(1..).map(<[Letter]>::to_vec).unwrap_or_default())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, a: Letter) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Word reversal `R`.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `a^k`.
    pub fn power(a: Letter, k: usize) -> Word {
        Word(vec![a; k])
    }

    /// Split into consecutive subwords of the given lengths.
    pub fn factor(&self, parts: &Composition) -> Result<Vec<Word>> {
        check_len(parts.total(), self.len())?;
        let mut out = Vec::with_capacity(parts.len());
        let mut start = 0;
        for &p in parts.parts() {
            out.push(self.slice(start, start + p));
            start += p;
        }
        Ok(out)
    }
}

impl From<Letter> for Word {
    fn from(a: Letter) -> Self {
        Word::letter(a)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Word reversal.
pub fn reverse(w: &Word) -> Word {
    w.reversed()
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual })
    }
}

/// An ordered tuple of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidComposition);
        }
        Ok(Composition(parts))
    }

    /// `(1, 1, ..., 1)` with `k` parts.
    pub fn ones(k: usize) -> Self {
        Composition(vec![1; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `ℓ(J)`, the number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Consecutive index ranges of each block.
    pub fn blocks(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        self.0.iter().scan(0usize, |start, &p| {
            let range = *start..*start + p;
            *start += p;
            Some(range)
        })
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// `J ∘ I`: sum consecutive parts of `I` in blocks of sizes given by `J`.
pub fn compose_compositions(outer: &Composition, inner: &Composition) -> Result<Composition> {
    check_len(outer.total(), inner.len())?;
    Ok(Composition(
        outer
            .blocks()
            .map(|range| inner.0[range].iter().sum())
            .collect(),
    ))
}

/// `J(X)` at the index level: root-of-unity exponents are summed mod `r`
/// within each block of `J`.
pub fn act_on_args(outer: &Composition, args: &[u32], r: u32) -> Result<Vec<u32>> {
    if r == 0 {
        return Err(Error::ZeroIndex);
    }
    check_len(outer.total(), args.len())?;
    Ok(outer
        .blocks()
        .map(|range| {
            let s: u64 = args[range].iter().map(|&j| u64::from(j)).sum();
            (s % u64::from(r)) as u32
        })
        .collect())
}

/// `I[w]`: bracket consecutive `I`-blocks of the letters of `w`.
pub fn act_on_word(comp: &Composition, w: &Word, r: u32) -> Result<Word> {
    check_len(comp.total(), w.len())?;
    comp.blocks()
        .map(|range| bracket(&w.0[range], r))
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

/// All `2^(n-1)` compositions of `n`.
///
/// Compositions are indexed by the set of "joined" boundaries between
/// consecutive positions. Boundary `1` (between the first and second
/// position) is the most significant bit of the index, and indices run
/// upward from zero, so `(1,...,1)` comes first and `(n)` last.
pub fn enumerate_compositions(n: usize) -> Result<Vec<Composition>> {
    if n == 0 {
        return Err(Error::OutOfRange("composition total", 1));
    }
    let gaps = n - 1;
    let count = 1usize << gaps;
    let mut out = Vec::with_capacity(count);
    for mask in 0..count {
        let mut parts = Vec::new();
        let mut cur = 1;
        for b in 0..gaps {
            let joined = mask >> (gaps - 1 - b) & 1 == 1;
            if joined {
                cur += 1;
            } else {
                parts.push(cur);
                cur = 1;
            }
        }
        parts.push(cur);
        out.push(Composition(parts));
    }
    Ok(out)
}

/// `{ I[w] : I ∈ C(ℓ(w)) }`, one entry per composition (duplicates kept).
/// The empty word coarsens only to itself.
pub fn coarsenings(w: &Word, r: u32) -> Result<Vec<Word>> {
    if w.is_empty() {
        return Ok(vec![Word::empty()]);
    }
    enumerate_compositions(w.len())?
        .iter()
        .map(|c| act_on_word(c, w, r))
        .collect()
}

/// A total order on letters, extended lexicographically to words.
pub trait LetterOrder {
    fn compare(&self, a: &Letter, b: &Letter) -> Ordering;

    /// Lexicographic extension; a proper prefix is smaller.
    fn compare_words(&self, u: &[Letter], v: &[Letter]) -> Ordering {
        for (a, b) in u.iter().zip(v) {
            match self.compare(a, b) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        u.len().cmp(&v.len())
    }
}

/// `(i, j)` lexicographic order on letters.
#[derive(Debug, Clone, Copy, Default)]
pub struct Lexicographic;

impl LetterOrder for Lexicographic {
    fn compare(&self, a: &Letter, b: &Letter) -> Ordering {
        a.cmp(b)
    }
}

impl<F> LetterOrder for F
where
    F: Fn(&Letter, &Letter) -> Ordering,
{
    fn compare(&self, a: &Letter, b: &Letter) -> Ordering {
        self(a, b)
    }
}

/// True iff `w` is strictly smaller than each of its proper right factors.
pub fn is_lyndon<O: LetterOrder + ?Sized>(w: &Word, order: &O) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let letters = w.letters();
    Ok((1..letters.len()).all(|k| order.compare_words(letters, &letters[k..]) == Ordering::Less))
}

/// Integer Möbius function by trial factorization.
pub fn mobius(mut n: u64) -> i32 {
    assert!(n > 0, "mobius is defined on positive integers");
    let mut sign = 1;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of Lyndon words of degree `n` in the algebra of index `r`.
///
/// For `n >= 2` this is `(1/n) Σ_{d|n} μ(n/d) (r+1)^d`. At `n = 1` that
/// expression gives `r + 1`, but only the `r` letters `z[1,j]` have degree
/// one, so the enumeration value `r` is returned instead.
pub fn lyndon_count(n: u32, r: u32) -> Result<u128> {
    if n == 0 {
        return Err(Error::OutOfRange("degree", 1));
    }
    if r == 0 {
        return Err(Error::ZeroIndex);
    }
    if n == 1 {
        return Ok(u128::from(r));
    }
    let base = BigInt::from(r) + BigInt::one();
    let mut total = BigInt::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            let mu = mobius(u64::from(n / d));
            if mu != 0 {
                total += BigInt::from(mu) * num_traits::pow(base.clone(), d as usize);
            }
        }
    }
    let count = total / BigInt::from(n);
    count
        .to_u128()
        .ok_or(Error::OutOfRange("lyndon count fits in 128 bits; degree", 0))
}

/// Every word of degree exactly `n`; there are `r (r+1)^(n-1)` of them for
/// `n >= 1`. Ordered by composition (see [`enumerate_compositions`]) and then
/// lexicographically by the root indices.
pub fn enumerate_words(n: u32, r: u32) -> Result<Vec<Word>> {
    if r == 0 {
        return Err(Error::ZeroIndex);
    }
    if n == 0 {
        return Ok(vec![Word::empty()]);
    }
    let mut out = Vec::new();
    for comp in enumerate_compositions(n as usize)? {
        let k = comp.len();
        let mut roots = vec![0u32; k];
        'odometer: loop {
            out.push(Word(
                comp.parts()
                    .iter()
                    .zip(&roots)
                    .map(|(&i, &j)| Letter { i: i as u32, j })
                    .collect(),
            ));
            // last position runs fastest
            let mut pos = k;
            loop {
                if pos == 0 {
                    break 'odometer;
                }
                pos -= 1;
                roots[pos] += 1;
                if roots[pos] < r {
                    break;
                }
                roots[pos] = 0;
            }
        }
    }
    Ok(out)
}

/// All words with `|w| <= max_degree` and `ℓ(w) <= max_len`, including `1`.
pub fn words_up_to(max_degree: u32, max_len: usize, r: u32) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for n in 0..=max_degree {
        out.extend(enumerate_words(n, r)?.into_iter().filter(|w| w.len() <= max_len));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: u32, j: u32, r: u32) -> Letter {
        Letter::new(i, j, r).unwrap()
    }

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn letter_validation() {
        assert!(Letter::new(0, 0, 1).is_err());
        assert!(Letter::new(1, 3, 3).is_err());
        assert!(Letter::new(1, 0, 0).is_err());
        assert_eq!(z(2, 1, 3).to_string(), "z[2,1]");
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&[z(1, 1, 3), z(2, 1, 3)], 3).unwrap(), z(3, 2, 3));
        assert_eq!(bracket(&[z(1, 1, 3), z(1, 2, 3)], 3).unwrap(), z(2, 0, 3));
        assert_eq!(bracket(&[z(4, 2, 5)], 5).unwrap(), z(4, 2, 5));
        assert_eq!(bracket(&[], 3), Err(Error::EmptyBracket));
        assert!(bracket(&[z(1, 2, 3)], 2).is_err());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose_compositions(&comp(&[2, 1]), &comp(&[1, 3, 2])).unwrap(), comp(&[4, 2]));
        let inner = comp(&[3, 1, 4, 1]);
        assert_eq!(compose_compositions(&Composition::ones(4), &inner).unwrap(), inner);
        assert_eq!(compose_compositions(&comp(&[4]), &inner).unwrap(), comp(&[9]));
        assert!(matches!(
            compose_compositions(&comp(&[2, 2]), &comp(&[1, 1, 1])),
            Err(Error::LengthMismatch { expected: 4, actual: 3 })
        ));
    }

    #[test]
    fn act_on_args_examples() {
        assert_eq!(act_on_args(&comp(&[2, 1]), &[1, 1, 0], 2).unwrap(), vec![0, 0]);
        assert_eq!(act_on_args(&Composition::ones(3), &[2, 0, 1], 3).unwrap(), vec![2, 0, 1]);
        assert_eq!(act_on_args(&comp(&[3]), &[1, 1, 2], 3).unwrap(), vec![1]);
        assert!(act_on_args(&comp(&[3]), &[1, 1], 3).is_err());
    }

    #[test]
    fn act_on_args_matches_complex_products() {
        // multiply the actual roots of unity and read off the exponent
        let r = 3u32;
        let args = [1u32, 1, 2];
        let theta = std::f64::consts::TAU / f64::from(r);
        let (mut re, mut im) = (1.0f64, 0.0f64);
        for &j in &args {
            let (sn, cs) = (theta * f64::from(j)).sin_cos();
            let nre = re * cs - im * sn;
            im = re * sn + im * cs;
            re = nre;
        }
        let angle = im.atan2(re).rem_euclid(std::f64::consts::TAU);
        let k = (angle / theta).round() as u32 % r;
        assert_eq!(act_on_args(&comp(&[3]), &args, r).unwrap(), vec![k]);
    }

    #[test]
    fn act_on_word_examples() {
        let w = Word::from_pairs(&[(1, 0), (1, 0)], 1).unwrap();
        assert_eq!(act_on_word(&Composition::ones(2), &w, 1).unwrap(), w);
        assert_eq!(act_on_word(&comp(&[2]), &w, 1).unwrap(), Word::from_pairs(&[(2, 0)], 1).unwrap());
        assert!(act_on_word(&comp(&[3]), &w, 1).is_err());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse(&Word::empty()), Word::empty());
        let w = Word::from_pairs(&[(1, 1), (2, 0)], 2).unwrap();
        assert_eq!(reverse(&w), Word::from_pairs(&[(2, 0), (1, 1)], 2).unwrap());
        assert_eq!(reverse(&reverse(&w)), w);
    }

    #[test]
    fn compositions_listing() {
        assert_eq!(enumerate_compositions(1).unwrap(), vec![comp(&[1])]);
        assert_eq!(
            enumerate_compositions(3).unwrap(),
            vec![comp(&[1, 1, 1]), comp(&[1, 2]), comp(&[2, 1]), comp(&[3])]
        );
        assert_eq!(enumerate_compositions(5).unwrap().len(), 16);
        assert!(enumerate_compositions(0).is_err());
    }

    #[test]
    fn coarsening_examples() {
        let a = z(1, 1, 2);
        let b = z(2, 1, 2);
        assert_eq!(coarsenings(&Word::letter(a), 2).unwrap(), vec![Word::letter(a)]);
        let ab = Word::from_letters(vec![a, b]);
        assert_eq!(
            coarsenings(&ab, 2).unwrap(),
            vec![ab.clone(), Word::letter(bracket(&[a, b], 2).unwrap())]
        );
        let abc = Word::from_letters(vec![a, b, a]);
        assert_eq!(coarsenings(&abc, 2).unwrap().len(), 4);
        assert_eq!(coarsenings(&Word::empty(), 2).unwrap(), vec![Word::empty()]);
    }

    /// Definitional check: compare against every proper right factor.
    fn lyndon_brute(w: &[Letter]) -> bool {
        (1..w.len()).all(|k| {
            let v = &w[k..];
            // lexicographic with prefix-smaller, written out longhand
            let mut idx = 0;
            loop {
                if idx == w.len() {
                    return true;
                }
                if idx == v.len() {
                    return false;
                }
                if w[idx] != v[idx] {
                    return w[idx] < v[idx];
                }
                idx += 1;
            }
        })
    }

    #[test]
    fn lyndon_examples() {
        let a = z(1, 0, 1);
        let b = z(2, 0, 1);
        assert!(is_lyndon(&Word::letter(a), &Lexicographic).unwrap());
        assert!(!is_lyndon(&Word::power(a, 2), &Lexicographic).unwrap());
        assert!(is_lyndon(&Word::from_letters(vec![a, b]), &Lexicographic).unwrap());
        assert!(!is_lyndon(&Word::from_letters(vec![b, a]), &Lexicographic).unwrap());
        assert_eq!(is_lyndon(&Word::empty(), &Lexicographic), Err(Error::EmptyWord));
        // reversed letter order flips the answer
        let rev = |x: &Letter, y: &Letter| y.cmp(x);
        assert!(is_lyndon(&Word::from_letters(vec![b, a]), &rev).unwrap());
    }

    #[test]
    fn lyndon_count_examples() {
        assert_eq!(lyndon_count(2, 1).unwrap(), 1);
        assert_eq!(lyndon_count(1, 3).unwrap(), 3);
        assert_eq!(lyndon_count(2, 2).unwrap(), 3);
        assert!(lyndon_count(0, 1).is_err());
    }

    #[test]
    fn lyndon_count_matches_enumeration() {
        for r in 1..=4 {
            for n in 1..=6 {
                let found = enumerate_words(n, r)
                    .unwrap()
                    .iter()
                    .filter(|w| lyndon_brute(w.letters()))
                    .count() as u128;
                assert_eq!(found, lyndon_count(n, r).unwrap(), "n={n} r={r}");
                assert_eq!(
                    found,
                    enumerate_words(n, r)
                        .unwrap()
                        .iter()
                        .filter(|w| is_lyndon(w, &Lexicographic).unwrap())
                        .count() as u128
                );
            }
        }
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (n, &mu) in expected.iter().enumerate() {
            assert_eq!(mobius(n as u64 + 1), mu);
        }
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(enumerate_words(0, 3).unwrap(), vec![Word::empty()]);
        assert_eq!(
            enumerate_words(1, 2).unwrap(),
            vec![Word::letter(z(1, 0, 2)), Word::letter(z(1, 1, 2))]
        );
        let three: Vec<String> = enumerate_words(3, 1).unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(three, ["z[1,0] z[1,0] z[1,0]", "z[1,0] z[2,0]", "z[2,0] z[1,0]", "z[3,0]"]);
        for r in 1..=4u32 {
            for n in 1..=6u32 {
                let words = enumerate_words(n, r).unwrap();
                assert_eq!(words.len() as u64, u64::from(r) * u64::from(r + 1).pow(n - 1));
                let mut sorted = words.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), words.len());
                assert!(words.iter().all(|w| w.degree() == n && w.fits(r)));
            }
        }
    }
}
