//! Verification suites over enumerated and seeded inputs.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};
use std::time::{Duration, Instant};

use clap::ValueEnum;
use euler_core::harmonic::{a_from_s_expansion, duality_reduction, product_expansion};
use euler_core::symmetric::{
    confirm_power_sum_a_signs, enumerate_set_partitions, power_sum_a, power_sum_s, symmetrization_identity,
    symmetrize_a, symmetrize_s,
};
use euler_core::words::{enumerate_compositions, words_up_to};
use euler_core::{AlgebraElement, EulerAlgebra, HarmonicEvaluator, Letter, Rational, Result, TensorElement, Word};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::lcg::Lcg;

/// Seeded pairs checked by the antipode suite.
pub const ANTIPODE_PAIRS: usize = 200;
/// Seeded `(u, v, n)` triples checked by the homomorphism suite.
pub const HOMOMORPHISM_PAIRS: usize = 500;
/// Largest letter weight drawn by the sampler.
pub const SAMPLE_MAX_WEIGHT: u32 = 2;
/// Largest power checked by the power-sum cases.
pub const MAX_POWER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Hopf,
    Antipode,
    Homomorphism,
    Duality,
    Symmetric,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Hopf, Suite::Antipode, Suite::Homomorphism, Suite::Duality, Suite::Symmetric];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Antipode => "antipode",
            Suite::Homomorphism => "homomorphism",
            Suite::Duality => "duality",
            Suite::Symmetric => "symmetric",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }
}

impl Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub r: u32,
    pub max_degree: u32,
    pub max_length: usize,
    pub max_n: u64,
    pub seed: u64,
}

/// One failed check, with both sides rendered exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub case: usize,
    pub check: &'static str,
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub suites: Vec<SuiteReport>,
    /// Not part of the rendered report.
    pub wall_time: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }

    pub fn cases(&self) -> usize {
        self.suites.iter().map(|s| s.cases).sum()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "verify r={} seed={} max-degree={} max-length={} max-n={}\n",
            c.r, c.seed, c.max_degree, c.max_length, c.max_n
        );
        for s in &self.suites {
            let _ = writeln!(out, "{:<13} {:>6} cases {:>4} failures", s.suite.name(), s.cases, s.failures.len());
            for f in &s.failures {
                let _ = writeln!(
                    out,
                    "  FAIL case {} [{}] {}\n    lhs: {}\n    rhs: {}",
                    f.case, f.check, f.input, f.lhs, f.rhs
                );
            }
        }
        out.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        out
    }

    pub fn to_json(&self) -> Value {
        let c = &self.config;
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|s| {
                let failures: Vec<Value> = s
                    .failures
                    .iter()
                    .map(|f| json!({"case": f.case, "check": f.check, "input": f.input, "lhs": f.lhs, "rhs": f.rhs}))
                    .collect();
                json!({"suite": s.suite.name(), "cases": s.cases, "failures": failures})
            })
            .collect();
        json!({
            "passed": self.passed(),
            "seed": c.seed,
            "max_degree": c.max_degree,
            "max_length": c.max_length,
            "max_n": c.max_n,
            "suites": suites,
        })
    }
}

/// Collects failed checks for one case.
struct Checker {
    case: usize,
    input: String,
    failures: Vec<Failure>,
}

impl Checker {
    fn new(case: usize, input: impl Display) -> Self {
        Checker { case, input: input.to_string(), failures: Vec::new() }
    }

    fn eq<T: PartialEq + Display>(&mut self, check: &'static str, lhs: Result<T>, rhs: Result<T>) {
        let show = |x: &Result<T>| match x {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        let same = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
        if !same {
            self.fail(check, show(&lhs), show(&rhs));
        }
    }

    fn holds(&mut self, check: &'static str, ok: bool, detail: impl Display) {
        if !ok {
            self.fail(check, detail.to_string(), "true".into());
        }
    }

    fn fail(&mut self, check: &'static str, lhs: String, rhs: String) {
        self.failures.push(Failure { case: self.case, check, input: self.input.clone(), lhs, rhs });
    }
}

/// Runs `check` on every case in parallel; failures come back in case order.
fn run_cases<C, F>(suite: Suite, cases: &[C], check: F) -> SuiteReport
where
    C: Sync,
    F: Fn(usize, &C) -> Vec<Failure> + Sync,
{
    let failures = cases
        .par_iter()
        .enumerate()
        .map(|(i, c)| check(i, c))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    SuiteReport { suite, cases: cases.len(), failures }
}

fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn pair_label(u: &Word, v: &Word) -> String {
    format!("({u}) * ({v})")
}

/// Iterated coproduct, keyed by the three tensor factors.
#[derive(Debug, PartialEq, Eq)]
struct Triple(BTreeMap<(Word, Word, Word), Rational>);

impl Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (k, ((a, b, c), q)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({q}) {a} ⊗ {b} ⊗ {c}")?;
        }
        Ok(())
    }
}

fn iterated_coproducts(alg: &EulerAlgebra, w: &Word) -> Result<(Triple, Triple)> {
    let delta = alg.coproduct(&alg.element(w.clone())?)?;
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    // deconcatenation never cancels, so no zero entries need pruning
    let bump = |m: &mut BTreeMap<_, Rational>, key, q: Rational| {
        *m.entry(key).or_insert_with(Rational::zero) += q;
    };
    for ((u, v), c) in delta.terms() {
        for ((u1, u2), d) in alg.coproduct(&alg.element(u.clone())?)?.terms() {
            bump(&mut left, (u1.clone(), u2.clone(), v.clone()), c * d);
        }
        for ((v1, v2), d) in alg.coproduct(&alg.element(v.clone())?)?.terms() {
            bump(&mut right, (u.clone(), v1.clone(), v2.clone()), c * d);
        }
    }
    Ok((Triple(left), Triple(right)))
}

/// `Σ S(w_(1)) * w_(2)` and `Σ w_(1) * S(w_(2))`.
fn antipode_convolutions(alg: &EulerAlgebra, w: &Word) -> Result<(AlgebraElement, AlgebraElement)> {
    let r = alg.r();
    let delta = alg.coproduct(&alg.element(w.clone())?)?;
    let mut left = AlgebraElement::zero(r);
    let mut right = AlgebraElement::zero(r);
    for ((u, v), c) in delta.terms() {
        let eu = alg.element(u.clone())?;
        let ev = alg.element(v.clone())?;
        left = &left + &alg.star(&alg.antipode(&eu)?, &ev)?.scale(c);
        right = &right + &alg.star(&eu, &alg.antipode(&ev)?)?.scale(c);
    }
    Ok((left, right))
}

fn flip(t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(t.r());
    for ((u, v), c) in t.terms() {
        out.add_term(v.clone(), u.clone(), c.clone());
    }
    out
}

fn hopf_suite(alg: &EulerAlgebra, words: &[Word]) -> SuiteReport {
    run_cases(Suite::Hopf, words, |i, w| {
        let mut ck = Checker::new(i, w);
        match iterated_coproducts(alg, w) {
            Ok((l, r)) => ck.eq("coassociativity", Ok(l), Ok(r)),
            Err(e) => ck.fail("coassociativity", format!("error: {e}"), String::new()),
        }
        let x = alg.element(w.clone());
        let delta = x.clone().and_then(|x| alg.coproduct(&x));
        ck.eq("counit_left", delta.clone().map(|d| d.counit_left()), x.clone());
        ck.eq("counit_right", delta.clone().map(|d| d.counit_right()), x.clone());
        let unit = x.as_ref().map(|x| alg.one().scale(&alg.counit(x))).map_err(Clone::clone);
        let conv = antipode_convolutions(alg, w);
        ck.eq("antipode_left", conv.clone().map(|c| c.0), unit.clone());
        ck.eq("antipode_right", conv.map(|c| c.1), unit);
        let lhs = alg.coproduct(&alg.element(w.reversed()).expect("reversal keeps letters"));
        let rhs = delta.map(|d| flip(&d.map_words(Word::reversed, Word::reversed)));
        ck.eq("reversal_coproduct", lhs, rhs);
        ck.failures
    })
}

fn sample_pairs(rng: &mut Lcg, cfg: &VerifyConfig, count: usize) -> Vec<(Word, Word)> {
    let half = (cfg.max_length / 2).max(1);
    (0..count)
        .map(|_| loop {
            let u = rng.word(cfg.r, half, SAMPLE_MAX_WEIGHT);
            let v = rng.word(cfg.r, half, SAMPLE_MAX_WEIGHT);
            if u.degree() + v.degree() <= cfg.max_degree.max(1) {
                break (u, v);
            }
        })
        .collect()
}

enum AntipodeCase {
    Word(Word),
    Pair(Word, Word),
}

fn antipode_suite(alg: &EulerAlgebra, words: &[Word], cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = Lcg::new(cfg.seed);
    let mut cases: Vec<AntipodeCase> = words.iter().cloned().map(AntipodeCase::Word).collect();
    cases.extend(
        sample_pairs(&mut rng, cfg, ANTIPODE_PAIRS)
            .into_iter()
            .map(|(u, v)| AntipodeCase::Pair(u, v)),
    );
    run_cases(Suite::Antipode, &cases, |i, case| match case {
        AntipodeCase::Word(w) => {
            let mut ck = Checker::new(i, w);
            ck.eq("two_formulas", alg.antipode_via_compositions(w), alg.antipode_via_products(w));
            let x = alg.element(w.clone());
            let twice = x.clone().and_then(|x| alg.antipode(&alg.antipode(&x)?));
            ck.eq("involution", twice, x);
            let srw = alg
                .element(w.reversed())
                .and_then(|x| alg.antipode(&x))
                .map(|s| s.scale(&sign(w.len())));
            ck.eq("overline_via_antipode", alg.overline(w), srw);
            ck.failures
        }
        AntipodeCase::Pair(u, v) => {
            let mut ck = Checker::new(i, pair_label(u, v));
            let (Ok(eu), Ok(ev)) = (alg.element(u.clone()), alg.element(v.clone())) else {
                unreachable!("sampled words fit the algebra")
            };
            let prod = alg.star(&eu, &ev);
            let lhs = prod.clone().and_then(|p| alg.antipode(&p));
            let rhs = alg.antipode(&eu).and_then(|su| alg.star(&su, &alg.antipode(&ev)?));
            ck.eq("antipode_homomorphism", lhs, rhs);
            let lhs = prod.and_then(|p| alg.reverse(&p));
            let rhs = alg.reverse(&eu).and_then(|ru| alg.star(&ru, &alg.reverse(&ev)?));
            ck.eq("reversal_homomorphism", lhs, rhs);
            ck.failures
        }
    })
}

enum EvalCase {
    Word(Word),
    Triple(Word, Word, u64),
}

fn homomorphism_suite(ev: &HarmonicEvaluator, words: &[Word], cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = Lcg::new(cfg.seed);
    let mut cases: Vec<EvalCase> = words.iter().cloned().map(EvalCase::Word).collect();
    for (u, v) in sample_pairs(&mut rng, cfg, HOMOMORPHISM_PAIRS) {
        let n = u64::from(rng.below((cfg.max_n + 1).min(u64::from(u32::MAX)) as u32));
        cases.push(EvalCase::Triple(u, v, n));
    }
    run_cases(Suite::Homomorphism, &cases, |i, case| match case {
        EvalCase::Word(w) => {
            let mut ck = Checker::new(i, w);
            for n in 0..=cfg.max_n {
                ck.eq("strict_oracle", ev.eval_a(w, n), ev.eval_a_bruteforce(w, n));
                ck.eq("weak_oracle", ev.eval_s(w, n), ev.eval_s_bruteforce(w, n));
            }
            ck.failures
        }
        EvalCase::Triple(u, v, n) => {
            let mut ck = Checker::new(i, format!("{} at n = {n}", pair_label(u, v)));
            let lhs = ev.algebra().star_words(u, v).and_then(|p| ev.rho(&p, *n));
            let rhs = ev.eval_a(u, *n).and_then(|a| Ok(&a * &ev.eval_a(v, *n)?));
            ck.eq("evaluation_homomorphism", lhs, rhs);
            ck.failures
        }
    })
}

fn duality_suite(ev: &HarmonicEvaluator, words: &[Word], cfg: &VerifyConfig) -> SuiteReport {
    let alg = ev.algebra();
    let r = ev.r();
    let nonempty: Vec<Word> = words.iter().filter(|w| !w.is_empty()).cloned().collect();
    run_cases(Suite::Duality, &nonempty, |i, w| {
        let mut ck = Checker::new(i, w);
        let expansion = product_expansion(w);
        let a_from_s = a_from_s_expansion(w, r);
        let reduction = (w.len() >= 2).then(|| duality_reduction(w, r));
        if let Some(Ok(id)) = &reduction {
            ck.holds(
                "reduction_shortens",
                id.max_rhs_length() < w.len(),
                format!("max right-hand length {}", id.max_rhs_length()),
            );
        }
        // w = Σ (-1)^(ℓ-k) overline(w_1) * ... * overline(w_k) over factorizations of R(w)
        let inverted = enumerate_compositions(w.len()).and_then(|comps| {
            let rev = w.reversed();
            let mut acc = AlgebraElement::zero(r);
            for comp in comps {
                let bars = rev
                    .factor(&comp)?
                    .iter()
                    .map(|p| alg.overline(p))
                    .collect::<Result<Vec<_>>>()?;
                acc = &acc + &alg.star_all(&bars)?.scale(&sign(w.len() - comp.len()));
            }
            Ok(acc)
        });
        ck.eq("overline_inversion", inverted, alg.element(w.clone()));
        for n in 0..=cfg.max_n {
            let a = ev.eval_a(w, n);
            let s = ev.eval_s(w, n);
            let bar = alg.overline(w).and_then(|b| ev.rho(&b, n));
            ck.eq("weak_from_overline", bar, ev.eval_s_bruteforce(w, n));
            let via = |kind| expansion.clone().and_then(|e| e.evaluate(ev, n, kind));
            ck.eq("weak_from_strict_products", via(euler_core::SumKind::A), s.clone());
            ck.eq("strict_from_weak_products", via(euler_core::SumKind::S), a.clone());
            ck.eq("strict_from_weak_expansion", a_from_s.clone().and_then(|x| ev.rho_overline(&x, n)), a);
            if let Some(id) = &reduction {
                let id = id.clone();
                ck.eq("length_reduction", id.clone().and_then(|d| d.lhs(ev, n)), id.and_then(|d| d.rhs(ev, n)));
            }
        }
        ck.failures
    })
}

enum SymmetricCase {
    Gate,
    Word(Word),
    Power(Letter, usize),
}

fn symmetric_suite(ev: &HarmonicEvaluator, words: &[Word], cfg: &VerifyConfig) -> SuiteReport {
    let r = ev.r();
    let mut cases = vec![SymmetricCase::Gate];
    cases.extend(words.iter().filter(|w| !w.is_empty()).cloned().map(SymmetricCase::Word));
    for i in 1..=SAMPLE_MAX_WEIGHT {
        for j in 0..r {
            let a = Letter::new(i, j, r).expect("subscripts in range");
            cases.extend((1..=MAX_POWER).map(|k| SymmetricCase::Power(a, k)));
        }
    }
    run_cases(Suite::Symmetric, &cases, |i, case| match case {
        SymmetricCase::Gate => {
            let mut ck = Checker::new(i, "signed power-sum gate");
            ck.holds("sign_gate", confirm_power_sum_a_signs(), "false");
            ck.failures
        }
        SymmetricCase::Word(w) => {
            let mut ck = Checker::new(i, w);
            match enumerate_set_partitions(w.len()) {
                Ok(parts) => {
                    for c in parts {
                        let (l, rt) = match symmetrization_identity(ev.algebra(), &c, w) {
                            Ok((l, rt)) => (Ok(l), Ok(rt)),
                            Err(e) => (Err(e.clone()), Err(e)),
                        };
                        ck.eq("partition_symmetrization", l, rt);
                    }
                }
                Err(e) => ck.fail("partition_symmetrization", format!("error: {e}"), String::new()),
            }
            for n in 0..=cfg.max_n {
                for (name, res) in [("strict_symmetrization", symmetrize_a(ev, w, n)), ("weak_symmetrization", symmetrize_s(ev, w, n))] {
                    match res {
                        Ok((l, rt)) => ck.eq(name, Ok(l), Ok(rt)),
                        Err(e) => ck.fail(name, format!("error: {e}"), String::new()),
                    }
                }
            }
            ck.failures
        }
        SymmetricCase::Power(a, k) => {
            let w = Word::power(*a, *k);
            let mut ck = Checker::new(i, &w);
            for n in 0..=cfg.max_n {
                ck.eq("weak_power_sum", power_sum_s(ev, *a, *k, n), ev.eval_s(&w, n));
                ck.eq("strict_power_sum", power_sum_a(ev, *a, *k, n), ev.eval_a(&w, n));
            }
            ck.failures
        }
    })
}

/// Runs the requested suites. Suites draw from independent generators seeded
/// with `cfg.seed`, so a suite's report is the same alone or inside `all`.
pub fn verify(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let start = Instant::now();
    let ev = HarmonicEvaluator::new(cfg.r)?;
    let words = words_up_to(cfg.max_degree, cfg.max_length, cfg.r)?;
    let suites = suite
        .expand()
        .into_iter()
        .map(|s| match s {
            Suite::Hopf => hopf_suite(ev.algebra(), &words),
            Suite::Antipode => antipode_suite(ev.algebra(), &words, cfg),
            Suite::Homomorphism => homomorphism_suite(&ev, &words, cfg),
            Suite::Duality => duality_suite(&ev, &words, cfg),
            Suite::Symmetric => symmetric_suite(&ev, &words, cfg),
            Suite::All => unreachable!("expanded above"),
        })
        .collect();
    Ok(VerifyReport { config: cfg.clone(), suites, wall_time: start.elapsed() })
}
