//! Set partitions, the partition-lattice Möbius function, and symmetrized
//! harmonic sums expressed through single-letter sums.
//!
//! Refinement is oriented so that `B ⪯ C` means every block of `B` is a
//! union of blocks of `C`: the all-singletons partition is the top element
//! and the one-block partition the bottom. With that orientation
//! `μ(B, {{1},...,{k}}) = c(B) = (-1)^(k-q) Π (|B_t| - 1)!`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{AlgebraElement, EulerAlgebra};
use crate::cyclotomic::{CyclotomicNumber, Rational};
use crate::error::{Error, Result};
use crate::harmonic::HarmonicEvaluator;
use crate::words::{bracket, Letter, Word};

/// Largest ground set accepted by [`enumerate_set_partitions`].
pub const MAX_SET_PARTITION_SIZE: usize = 10;

/// A partition of `{0, ..., k-1}`; blocks are sorted and ordered by minimum.
///
/// Displayed 1-based, e.g. `{{1,2},{3}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    size: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; size];
        let mut blocks = blocks;
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
            for &e in b.iter() {
                if e >= size {
                    return Err(Error::InvalidPartition(format!("element {} outside 1..={size}", e + 1)));
                }
                if std::mem::replace(&mut seen[e], true) {
                    return Err(Error::InvalidPartition(format!("element {} repeated", e + 1)));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("element {} missing", missing + 1)));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { size, blocks })
    }

    /// From a block label per element (any labels; equal label = same block).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index: Vec<(usize, usize)> = Vec::new();
        for (e, &label) in labels.iter().enumerate() {
            match index.iter().find(|(l, _)| *l == label) {
                Some(&(_, b)) => blocks[b].push(e),
                None => {
                    index.push((label, blocks.len()));
                    blocks.push(vec![e]);
                }
            }
        }
        SetPartition { size: labels.len(), blocks }
    }

    pub fn singletons(size: usize) -> Self {
        SetPartition { size, blocks: (0..size).map(|e| vec![e]).collect() }
    }

    pub fn one_block(size: usize) -> Self {
        SetPartition { size, blocks: vec![(0..size).collect()] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of each element.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.size];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                out[e] = b;
            }
        }
        out
    }

    /// `self ⪯ other`: every block of `self` is a union of blocks of `other`.
    pub fn is_coarsening_of(&self, other: &SetPartition) -> bool {
        if self.size != other.size {
            return false;
        }
        let mine = self.labels();
        other
            .blocks
            .iter()
            .all(|b| b.iter().all(|&e| mine[e] == mine[b[0]]))
    }

    /// Block sizes, largest first.
    pub fn shape(&self) -> IntegerPartition {
        let mut parts: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition { parts }
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (t, e) in b.iter().enumerate() {
                if t > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", e + 1)?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// Restricted-growth strings, in lexicographic order.
fn restricted_growth(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; k];
    fn go(pos: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == labels.len() {
            out.push(labels.clone());
            return;
        }
        for l in 0..=max + 1 {
            labels[pos] = l;
            go(pos + 1, max.max(l), labels, out);
        }
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    // element 0 always carries label 0
    go(1, 0, &mut labels, &mut out);
    out
}

/// All partitions of `{1, ..., k}` (Bell(k) of them), ordered by their
/// restricted-growth strings.
pub fn enumerate_set_partitions(k: usize) -> Result<Vec<SetPartition>> {
    if !(1..=MAX_SET_PARTITION_SIZE).contains(&k) {
        return Err(Error::OutOfRange("set partition size (at most 10)", 1));
    }
    Ok(restricted_growth(k).iter().map(|l| SetPartition::from_labels(l)).collect())
}

/// All `B ⪯ C`, i.e. partitions obtained by merging blocks of `C`.
pub fn coarsenings_of(c: &SetPartition) -> Vec<SetPartition> {
    let p = c.num_blocks();
    restricted_growth(p)
        .into_iter()
        .map(|merge| {
            let mut labels = vec![0; c.size()];
            for (b, block) in c.blocks().iter().enumerate() {
                for &e in block {
                    labels[e] = merge[b];
                }
            }
            SetPartition::from_labels(&labels)
        })
        .collect()
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `c(B) = (-1)^(k-q) Π_t (|B_t| - 1)!`.
pub fn c_coefficient(b: &SetPartition) -> i64 {
    let sign = if (b.size() - b.num_blocks()).is_multiple_of(2) { 1 } else { -1 };
    sign * b.blocks().iter().map(|blk| factorial(blk.len() - 1)).product::<i64>()
}

/// `μ(B, C)` for `B ⪯ C`: for each block of `B` made of `n` blocks of `C`,
/// a factor `(-1)^(n-1) (n-1)!`.
pub fn partition_mobius(b: &SetPartition, c: &SetPartition) -> Result<i64> {
    if !b.is_coarsening_of(c) {
        return Err(Error::Incomparable);
    }
    let labels = b.labels();
    let mut counts = vec![0usize; b.num_blocks()];
    for block in c.blocks() {
        counts[labels[block[0]]] += 1;
    }
    Ok(counts
        .into_iter()
        .map(|n| if n % 2 == 1 { factorial(n - 1) } else { -factorial(n - 1) })
        .product())
}

/// An integer partition, parts weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(IntegerPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `m_s` for `s = 1..=total`, at index `s - 1`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.total()];
        for &p in &self.parts {
            m[p - 1] += 1;
        }
        m
    }

    /// Number of set partitions of `{1..k}` with these block sizes,
    /// `k! / (Π m_s! Π b_t!)`.
    pub fn set_partition_count(&self) -> BigInt {
        let fact = |n: usize| -> BigInt { (1..=n).map(BigInt::from).product() };
        let mut denom = BigInt::one();
        for &m in &self.multiplicities() {
            denom *= fact(m);
        }
        for &b in &self.parts {
            denom *= fact(b);
        }
        fact(self.total()) / denom
    }
}

/// Partitions of `k` in reverse lexicographic order, starting with `(k)`.
pub fn enumerate_integer_partitions(k: usize) -> Vec<IntegerPartition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
        if rest == 0 {
            out.push(IntegerPartition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        go(k, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Every ordering of `items`, including repeats when items coincide.
fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    fn go<T: Clone>(pool: &mut Vec<T>, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if pool.is_empty() {
            out.push(cur.clone());
            return;
        }
        for idx in 0..pool.len() {
            let x = pool.remove(idx);
            cur.push(x);
            go(pool, cur, out);
            let x = cur.pop().expect("pushed above");
            pool.insert(idx, x);
        }
    }
    let mut out = Vec::new();
    go(&mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn block_letters(w: &Word, blocks: &[Vec<usize>], r: u32) -> Result<Vec<Letter>> {
    blocks
        .iter()
        .map(|b| {
            let letters: Vec<Letter> = b.iter().map(|&e| w.letters()[e]).collect();
            bracket(&letters, r)
        })
        .collect()
}

fn check_partition_of(c: &SetPartition, w: &Word) -> Result<()> {
    if c.size() != w.len() {
        return Err(Error::InvalidPartition(format!(
            "partition of {} elements for a word of length {}",
            c.size(),
            w.len()
        )));
    }
    Ok(())
}

/// Both sides of `Σ_σ σ·[C-blocks of w] = Σ_{B ⪯ C} μ(B, C) B(w)` as algebra
/// elements, where `B(w)` is the star product of the block brackets.
pub fn symmetrization_identity(
    alg: &EulerAlgebra,
    c: &SetPartition,
    w: &Word,
) -> Result<(AlgebraElement, AlgebraElement)> {
    check_partition_of(c, w)?;
    let r = alg.r();
    let mut lhs = AlgebraElement::zero(r);
    for perm in permutations(&block_letters(w, c.blocks(), r)?) {
        lhs.add_term(Word::from_letters(perm), Rational::one());
    }
    let mut rhs = AlgebraElement::zero(r);
    for b in coarsenings_of(c) {
        let mu = partition_mobius(&b, c)?;
        let factors = block_letters(w, b.blocks(), r)?
            .into_iter()
            .map(|a| AlgebraElement::word(r, Word::letter(a)))
            .collect::<Vec<_>>();
        let prod = alg.star_all(&factors)?;
        rhs = &rhs + &prod.scale(&Rational::from_integer(BigInt::from(mu)));
    }
    Ok((lhs, rhs))
}

/// `Σ_{σ ∈ Σ_p} A_{σ·[C_1]...[C_p]}(n)` against `Σ_{B ⪯ C} μ(B, C) ρ_n(B(w))`.
pub fn general_symmetrization(
    ev: &HarmonicEvaluator,
    c: &SetPartition,
    w: &Word,
    n: u64,
) -> Result<(CyclotomicNumber, CyclotomicNumber)> {
    check_partition_of(c, w)?;
    let r = ev.r();
    let mut lhs = ev.field().zero();
    for perm in permutations(&block_letters(w, c.blocks(), r)?) {
        lhs += &ev.eval_a(&Word::from_letters(perm), n)?;
    }
    let mut rhs = ev.field().zero();
    for b in coarsenings_of(c) {
        let mu = partition_mobius(&b, c)?;
        let factors = block_letters(w, b.blocks(), r)?
            .into_iter()
            .map(|a| AlgebraElement::word(r, Word::letter(a)))
            .collect::<Vec<_>>();
        let prod = ev.algebra().star_all(&factors)?;
        rhs += &ev.rho(&prod, n)?.scale(&Rational::from_integer(BigInt::from(mu)));
    }
    Ok((lhs, rhs))
}

fn symmetrize(
    ev: &HarmonicEvaluator,
    w: &Word,
    n: u64,
    weak: bool,
) -> Result<(CyclotomicNumber, CyclotomicNumber)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let k = w.len();
    let mut lhs = ev.field().zero();
    for perm in permutations(w.letters()) {
        let v = Word::from_letters(perm);
        lhs += &if weak { ev.eval_s(&v, n)? } else { ev.eval_a(&v, n)? };
    }
    let mut rhs = ev.field().zero();
    for b in enumerate_set_partitions(k)? {
        let c = c_coefficient(&b);
        let c = if weak { c.abs() } else { c };
        let mut prod = ev.field().from_integer(c);
        for a in block_letters(w, b.blocks(), ev.r())? {
            prod = &prod * &ev.eval_a(&Word::letter(a), n)?;
        }
        rhs += &prod;
    }
    Ok((lhs, rhs))
}

/// `Σ_σ A_{σ·w}(n)` and `Σ_B c(B) Π_t A_{[B_t]}(n)`.
pub fn symmetrize_a(ev: &HarmonicEvaluator, w: &Word, n: u64) -> Result<(CyclotomicNumber, CyclotomicNumber)> {
    symmetrize(ev, w, n, false)
}

/// `Σ_σ S_{σ·w}(n)` and `Σ_B |c(B)| Π_t A_{[B_t]}(n)`.
pub fn symmetrize_s(ev: &HarmonicEvaluator, w: &Word, n: u64) -> Result<(CyclotomicNumber, CyclotomicNumber)> {
    symmetrize(ev, w, n, true)
}

fn power_sum(ev: &HarmonicEvaluator, a: Letter, k: usize, n: u64, signed: bool) -> Result<CyclotomicNumber> {
    if k == 0 {
        return Err(Error::OutOfRange("power", 1));
    }
    let r = ev.r();
    let mut total = ev.field().zero();
    for part in enumerate_integer_partitions(k) {
        let mut weight = Rational::one();
        for m in part.multiplicities() {
            for t in 2..=m {
                weight /= Rational::from_integer(BigInt::from(t));
            }
        }
        let mut prod = ev.field().one();
        for &b in part.parts() {
            let mut f = Rational::new(BigInt::one(), BigInt::from(b));
            if signed && b % 2 == 0 {
                f = -f;
            }
            weight *= f;
            let letter = bracket(&vec![a; b], r)?;
            prod = &prod * &ev.eval_a(&Word::letter(letter), n)?;
        }
        if !weight.is_zero() {
            total += &prod.scale(&weight);
        }
    }
    Ok(total)
}

/// `S_{a^k}(n) = Σ_{b ⊢ k} (1/Π m_s!) Π_t A_{[b_t a]}(n) / b_t`.
pub fn power_sum_s(ev: &HarmonicEvaluator, a: Letter, k: usize, n: u64) -> Result<CyclotomicNumber> {
    power_sum(ev, a, k, n, false)
}

/// `A_{a^k}(n) = Σ_{b ⊢ k} (1/Π m_s!) Π_t (-1)^(b_t-1) A_{[b_t a]}(n) / b_t`.
///
/// Refuses to run unless [`confirm_power_sum_a_signs`] holds.
pub fn power_sum_a(ev: &HarmonicEvaluator, a: Letter, k: usize, n: u64) -> Result<CyclotomicNumber> {
    if !confirm_power_sum_a_signs() {
        return Err(Error::SignGateFailed);
    }
    power_sum(ev, a, k, n, true)
}

/// Checks the signed power-sum formula against direct nested summation on a
/// fixed grid (r ≤ 3, a few letters, k ≤ 4, n ≤ 6). Computed once per process.
pub fn confirm_power_sum_a_signs() -> bool {
    static GATE: OnceLock<bool> = OnceLock::new();
    *GATE.get_or_init(|| {
        (1..=3u32).all(|r| {
            let Ok(ev) = HarmonicEvaluator::new(r) else { return false };
            let letters = [(1, 0), (2, r - 1), (1, r / 2)];
            letters.iter().all(|&(i, j)| {
                let a = Letter::new(i, j, r).expect("valid letter");
                (1..=4).all(|k| {
                    (0..=6).all(|n| {
                        let direct = ev.eval_a_bruteforce(&Word::power(a, k), n);
                        let formula = power_sum(&ev, a, k, n, true);
                        matches!((direct, formula), (Ok(x), Ok(y)) if x == y)
                    })
                })
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(k: usize) -> usize {
        // Bell triangle
        let mut row = vec![1usize];
        for _ in 1..k {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                next.push(next.last().unwrap() + x);
            }
            row = next;
        }
        *row.last().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn set_partition_counts() {
        assert_eq!(enumerate_set_partitions(1).unwrap().len(), 1);
        assert_eq!(enumerate_set_partitions(3).unwrap().len(), 5);
        assert_eq!(enumerate_set_partitions(5).unwrap().len(), 52);
        for k in 1..=8 {
            let all = enumerate_set_partitions(k).unwrap();
            assert_eq!(all.len(), bell(k));
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
        assert!(enumerate_set_partitions(0).is_err());
        assert!(enumerate_set_partitions(11).is_err());
    }

    #[test]
    fn set_partition_validation() {
        assert!(SetPartition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(SetPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(SetPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(SetPartition::new(2, vec![vec![0, 1], vec![]]).is_err());
        let p = SetPartition::new(3, vec![vec![2], vec![1, 0]]).unwrap();
        assert_eq!(p.to_string(), "{{1,2},{3}}");
    }

    #[test]
    fn c_coefficient_examples() {
        assert_eq!(c_coefficient(&SetPartition::singletons(4)), 1);
        assert_eq!(c_coefficient(&SetPartition::one_block(2)), -1);
        assert_eq!(c_coefficient(&SetPartition::one_block(3)), 2);
        assert_eq!(c_coefficient(&SetPartition::one_block(4)), -6);
    }

    #[test]
    fn mobius_examples() {
        let c = SetPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(partition_mobius(&c, &c).unwrap(), 1);
        assert_eq!(partition_mobius(&SetPartition::one_block(2), &SetPartition::singletons(2)).unwrap(), -1);
        let other = SetPartition::new(3, vec![vec![0], vec![1, 2]]).unwrap();
        assert_eq!(partition_mobius(&other, &c), Err(Error::Incomparable));
        for k in 1..=5 {
            let top = SetPartition::singletons(k);
            for b in enumerate_set_partitions(k).unwrap() {
                assert_eq!(partition_mobius(&b, &top).unwrap(), c_coefficient(&b));
            }
        }
    }

    #[test]
    fn mobius_recurrence() {
        // Σ_{B ⪯ D ⪯ C} μ(D, C) = 0 whenever B ≠ C
        for k in 1..=4 {
            let all = enumerate_set_partitions(k).unwrap();
            for c in &all {
                for b in all.iter().filter(|b| b.is_coarsening_of(c)) {
                    let total: i64 = all
                        .iter()
                        .filter(|d| b.is_coarsening_of(d) && d.is_coarsening_of(c))
                        .map(|d| partition_mobius(d, c).unwrap())
                        .sum();
                    assert_eq!(total, i64::from(b == c), "{b} {c}");
                }
            }
        }
    }

    #[test]
    fn block_size_counts() {
        for k in 1..=6 {
            let all = enumerate_set_partitions(k).unwrap();
            let parts = enumerate_integer_partitions(k);
            let mut total = BigInt::zero();
            for p in &parts {
                let found = all.iter().filter(|b| &b.shape() == p).count();
                assert_eq!(BigInt::from(found), p.set_partition_count(), "{p:?}");
                total += p.set_partition_count();
            }
            assert_eq!(total, BigInt::from(all.len()));
        }
        assert_eq!(enumerate_integer_partitions(5).len(), 7);
    }

    #[test]
    fn symmetrize_examples() {
        let ev = HarmonicEvaluator::new(1).unwrap();
        let aa = ev.algebra().word(&[(1, 0), (1, 0)]).unwrap();
        let (l, r) = symmetrize_a(&ev, &aa, 2).unwrap();
        assert_eq!(l, ev.field().one());
        assert_eq!(r, ev.field().one());
        let (l, r) = symmetrize_s(&ev, &aa, 2).unwrap();
        assert_eq!(l, ev.field().from_rational(q(7, 2)));
        assert_eq!(r, l);
        let single = ev.algebra().word(&[(3, 0)]).unwrap();
        let (l, r) = symmetrize_a(&ev, &single, 4).unwrap();
        assert_eq!(l, ev.eval_a(&single, 4).unwrap());
        assert_eq!(r, l);

        let ev2 = HarmonicEvaluator::new(2).unwrap();
        let w = ev2.algebra().word(&[(1, 1), (1, 0)]).unwrap();
        let (l, r) = symmetrize_s(&ev2, &w, 4).unwrap();
        let oracle = &ev2.eval_s_bruteforce(&w, 4).unwrap() + &ev2.eval_s_bruteforce(&w.reversed(), 4).unwrap();
        assert_eq!(l, oracle);
        assert_eq!(r, oracle);
    }

    #[test]
    fn power_sum_examples() {
        let ev = HarmonicEvaluator::new(1).unwrap();
        let a = ev.algebra().letter(1, 0).unwrap();
        assert_eq!(power_sum_s(&ev, a, 1, 5).unwrap(), ev.eval_a(&Word::letter(a), 5).unwrap());
        assert_eq!(power_sum_s(&ev, a, 2, 2).unwrap(), ev.field().from_rational(q(7, 4)));
        assert_eq!(power_sum_a(&ev, a, 2, 2).unwrap(), ev.field().from_rational(q(1, 2)));
        assert_eq!(
            power_sum_a(&ev, a, 4, 6).unwrap(),
            ev.eval_a_bruteforce(&Word::power(a, 4), 6).unwrap()
        );
        let ev2 = HarmonicEvaluator::new(2).unwrap();
        let b = ev2.algebra().letter(1, 1).unwrap();
        assert_eq!(
            power_sum_s(&ev2, b, 3, 5).unwrap(),
            ev2.eval_s_bruteforce(&Word::power(b, 3), 5).unwrap()
        );
        assert!(power_sum_s(&ev2, b, 0, 5).is_err());
    }

    #[test]
    fn sign_gate_holds() {
        assert!(confirm_power_sum_a_signs());
    }

    #[test]
    fn general_symmetrization_examples() {
        let ev = HarmonicEvaluator::new(3).unwrap();
        let w = ev.algebra().word(&[(1, 1), (2, 0), (1, 2)]).unwrap();
        let c = SetPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let (l, r) = general_symmetrization(&ev, &c, &w, 5).unwrap();
        assert_eq!(l, r);
        let (l, r) = general_symmetrization(&ev, &SetPartition::one_block(3), &w, 5).unwrap();
        let single = Word::letter(bracket(w.letters(), 3).unwrap());
        assert_eq!(l, ev.eval_a(&single, 5).unwrap());
        assert_eq!(r, l);
        let (l, r) = general_symmetrization(&ev, &SetPartition::singletons(3), &w, 5).unwrap();
        let (sl, sr) = symmetrize_a(&ev, &w, 5).unwrap();
        assert_eq!((l.clone(), r.clone()), (sl, sr));
        assert_eq!(l, r);
        assert!(general_symmetrization(&ev, &SetPartition::singletons(2), &w, 5).is_err());
        let (fl, fr) = symmetrization_identity(ev.algebra(), &c, &w).unwrap();
        assert_eq!(fl, fr);
    }
}
