//! Batch verification sweeps. Every sweep is bounded by its config; a pass
//! means "no counterexample within these bounds", never more.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::{check_p, Sign};
use crate::lattice::{decompose_sp, enumerate_image, synthesize_word, SpElement};
use crate::matrix::{RepMatrix2, RepMatrix4};
use crate::obstruction::{check_homology_obstruction, derived_invariants, match_vector_families, HomologyVector};
use crate::star::{interval_classify, mobius_apply, q_project, star, ExtendedRational, Interval, StarMap};
use crate::words::{ll_prefix, normal_form, Generator, GroupWord, Letter, LlPrefix, NormalForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub p: u32,
    pub max_word_length: usize,
    pub kappa_max: u64,
    pub seed: u64,
    pub sample_count: usize,
    /// Abort a breadth-first sweep once it has seen this many classes.
    pub class_limit: usize,
    /// Number of factors in exhaustively listed block products.
    pub max_blocks: usize,
    /// Word length for the free-subgroup check.
    pub free_length: usize,
}

impl SweepConfig {
    pub fn new(p: u32) -> SweepConfig {
        SweepConfig {
            p,
            max_word_length: 8,
            kappa_max: 10,
            seed: 0,
            sample_count: 1000,
            class_limit: 1_000_000,
            max_blocks: 4,
            free_length: 12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<RepMatrix4>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vectors: Option<(HomologyVector, HomologyVector)>,
}

impl Counterexample {
    fn new(detail: impl Into<String>) -> Counterexample {
        Counterexample { detail: detail.into(), word: None, matrix: None, vectors: None }
    }

    fn word(mut self, w: &GroupWord) -> Counterexample {
        self.word = Some(w.to_string());
        self
    }

    fn matrix(mut self, m: RepMatrix4) -> Counterexample {
        self.matrix = Some(m);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Statistics {
    pub words_visited: u64,
    pub matrices_hashed: u64,
    pub classes: u64,
    pub samples: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub status: Status,
    pub cases: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub p: u32,
    pub status: Status,
    pub scope: String,
    pub checks: Vec<CheckSummary>,
    pub counterexample: Option<Counterexample>,
    pub statistics: Statistics,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// One named sub-check with its first counterexample.
struct Sub {
    name: &'static str,
    cases: u64,
    failure: Option<Counterexample>,
}

impl Sub {
    fn new(name: &'static str) -> Sub {
        Sub { name, cases: 0, failure: None }
    }

    fn record(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(cx());
        }
    }
}

fn finish(claim: &str, p: u32, scope: String, subs: Vec<Sub>, mut statistics: Statistics, start: Instant) -> VerificationReport {
    statistics.wall_time = start.elapsed();
    let counterexample = subs.iter().find_map(|s| s.failure.clone());
    VerificationReport {
        claim: claim.to_string(),
        p,
        status: if counterexample.is_some() { Status::Fail } else { Status::Pass },
        scope,
        checks: subs
            .into_iter()
            .map(|s| CheckSummary {
                name: s.name.to_string(),
                status: if s.failure.is_some() { Status::Fail } else { Status::Pass },
                cases: s.cases,
            })
            .collect(),
        counterexample,
        statistics,
    }
}

/// A reproducible generator for sample `index`.
fn sample_rng(seed: u64, salt: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.rotate_left(32));
    rng.set_stream(index as u64);
    rng
}

/// Runs `f` on `count` independently seeded samples in parallel, keeping
/// the results in sample order.
fn samples<T: Send>(cfg: &SweepConfig, salt: u64, count: usize, f: impl Fn(&mut ChaCha8Rng) -> T + Sync) -> Vec<T> {
    (0..count)
        .into_par_iter()
        .map(|i| f(&mut sample_rng(cfg.seed, salt, i)))
        .collect()
}

/// A word with at most `max_len` letters of exponent `+-1`.
pub fn random_word(rng: &mut impl Rng, p: u32, max_len: usize) -> GroupWord {
    let alphabet = Generator::alphabet(p);
    let len = rng.random_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| {
            let g = alphabet[rng.random_range(0..alphabet.len())];
            Letter::new(g, if rng.random::<bool>() { 1 } else { -1 })
        })
        .collect();
    GroupWord::from_letters(p, letters).expect("letters come from the alphabet of p")
}

pub fn relations(p: u32) -> Result<Vec<GroupWord>> {
    check_p(p)?;
    let texts: &[&str] = match p {
        2 => &["r^4", "g^2", "g r g r", "r^2 b r^2 b^-1"],
        3 => &["a^2", "d^3", "g^2", "g d g d", "a b a^-1 b^-1", "a g a^-1 g^-1", "a d a^-1 d^-1"],
        _ => &["a^2", "g^2", "s^2", "a b a^-1 b^-1", "a g a^-1 g^-1", "a s a^-1 s^-1"],
    };
    texts.iter().map(|t| GroupWord::parse(t, p)).collect()
}

pub fn verify_relations(p: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let map = StarMap::new(p)?;
    let mut sub = Sub::new("relators map to the identity");
    let mut stats = Statistics::default();
    for r in relations(p)? {
        let m = map.eval(&r)?;
        stats.words_visited += 1;
        sub.record(m.is_identity(), || Counterexample::new("relator with nontrivial image").word(&r).matrix(m.clone()));
    }
    Ok(finish("relations", p, "every defining relator".into(), vec![sub], stats, start))
}

struct Class {
    form: NormalForm,
    word: GroupWord,
    matrix: RepMatrix4,
}

struct Ball {
    classes: Vec<Class>,
    by_matrix: HashMap<SpElement, usize>,
    words_visited: u64,
    /// Two words with the same normal form but different images, or the
    /// reverse, or an image outside `S_p`.
    conflict: Option<Counterexample>,
}

/// Breadth-first search over normal-form classes of words of length at
/// most `radius`. Each new edge is checked against both hash tables, so
/// the sweep covers every word, not only one representative per class.
fn explore(p: u32, radius: usize, class_limit: usize) -> Result<Ball> {
    let map = StarMap::new(p)?;
    let letters: Vec<(Letter, RepMatrix4)> = Generator::alphabet(p)
        .into_iter()
        .flat_map(|g| [1, -1].map(|e| (Letter::new(g, e), map.letter(g, e).expect("alphabet of p"))))
        .collect();
    let root = GroupWord::empty(p)?;
    let id = SpElement::identity(p)?;
    let mut ball = Ball {
        classes: vec![Class { form: normal_form(&root), word: root, matrix: RepMatrix4::identity() }],
        by_matrix: HashMap::from([(id, 0)]),
        words_visited: 1,
        conflict: None,
    };
    let mut by_form: HashMap<NormalForm, usize> = HashMap::from([(ball.classes[0].form.clone(), 0)]);
    let mut frontier = vec![0usize];
    for _ in 0..radius {
        let children: Vec<(usize, GroupWord, NormalForm, RepMatrix4)> = frontier
            .par_iter()
            .flat_map_iter(|&i| {
                let c = &ball.classes[i];
                letters.iter().map(move |(l, m)| {
                    let w = GroupWord::from_letters(p, c.word.letters().iter().copied().chain([*l])).expect("same p");
                    let f = normal_form(&w);
                    (i, w, f, &c.matrix * m)
                })
            })
            .collect();
        let mut next = Vec::new();
        for (_, word, form, matrix) in children {
            ball.words_visited += 1;
            if let Some(&j) = by_form.get(&form) {
                if ball.classes[j].matrix != matrix && ball.conflict.is_none() {
                    ball.conflict = Some(
                        Counterexample::new(format!("same normal form as {} but a different image", ball.classes[j].word))
                            .word(&word)
                            .matrix(matrix),
                    );
                }
                continue;
            }
            let key = match decompose_sp(&matrix, p) {
                Ok(e) => e,
                Err(err) => {
                    if ball.conflict.is_none() {
                        ball.conflict = Some(Counterexample::new(format!("image does not decompose: {err}")).word(&word).matrix(matrix));
                    }
                    continue;
                }
            };
            if let Some(&j) = ball.by_matrix.get(&key) {
                if ball.conflict.is_none() {
                    ball.conflict = Some(
                        Counterexample::new(format!("same image as {} but a different normal form", ball.classes[j].word))
                            .word(&word)
                            .matrix(matrix.clone()),
                    );
                }
            }
            let idx = ball.classes.len();
            if idx >= class_limit {
                return Err(Error::ResourceLimit(format!("more than {class_limit} classes within length {radius}")));
            }
            by_form.insert(form.clone(), idx);
            ball.by_matrix.entry(key).or_insert(idx);
            ball.classes.push(Class { form, word, matrix });
            next.push(idx);
        }
        frontier = next;
    }
    Ok(ball)
}

pub fn verify_kernel(cfg: &SweepConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    check_p(cfg.p)?;
    let ball = explore(cfg.p, cfg.max_word_length, cfg.class_limit)?;
    let mut consistent = Sub::new("image is a function of the normal form and vice versa");
    consistent.record(ball.conflict.is_none(), || ball.conflict.clone().expect("checked"));
    let mut kernel = Sub::new("image is the identity iff the normal form is trivial");
    for c in &ball.classes {
        let trivial = c.form.is_trivial();
        kernel.record(c.matrix.is_identity() == trivial, || {
            Counterexample::new(format!("identity image: {}, trivial form: {trivial}", c.matrix.is_identity()))
                .word(&c.word)
                .matrix(c.matrix.clone())
        });
    }
    let stats = Statistics {
        words_visited: ball.words_visited,
        matrices_hashed: ball.by_matrix.len() as u64,
        classes: ball.classes.len() as u64,
        ..Statistics::default()
    };
    let scope = format!("all words of length <= {}", cfg.max_word_length);
    Ok(finish("kernel", cfg.p, scope, vec![consistent, kernel], stats, start))
}

/// An element of `S_p` outside `B_p` with the smallest `kappa`; the
/// designated `[[11, 7], [25, 16]]` at `p = 5`. `None` for `p < 5`.
pub fn excluded_witness(p: u32) -> Option<SpElement> {
    if p < 5 {
        return None;
    }
    if p == 5 {
        return SpElement::new(5, Sign::Plus, 2, 7, 5, 3, Sign::Plus).ok();
    }
    let pi = p as i64;
    let mut best: Option<SpElement> = None;
    for k in -3i64..=3 {
        for n in -3i64..=3 {
            for delta in Sign::BOTH {
                let lm = k * n * pi + delta.to_i64() * k + n;
                if lm == 0 {
                    continue;
                }
                for l in 1..=lm.abs() {
                    if lm % l != 0 {
                        continue;
                    }
                    for (l, m) in [(l, lm / l), (-l, -lm / l)] {
                        let e = SpElement { omega: Sign::Plus, k: k.into(), ell: l.into(), m: m.into(), n: n.into(), delta, p };
                        if !e.in_b_p() && best.as_ref().is_none_or(|b| e.kappa() < b.kappa()) {
                            best = Some(e);
                        }
                    }
                }
            }
        }
    }
    best
}

pub fn verify_image(cfg: &SweepConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let p = cfg.p;
    check_p(p)?;
    let elements: Vec<SpElement> = enumerate_image(p, cfg.kappa_max)
        .into_iter()
        .flat_map(|e| {
            let neg = SpElement { omega: -e.omega, ..e.clone() }.canonical();
            if neg == e {
                vec![e]
            } else {
                vec![e, neg]
            }
        })
        .collect();
    let results: Vec<Option<Counterexample>> = elements
        .par_iter()
        .map(|e| match synthesize_word(e) {
            Ok(w) => {
                let m = star(&w);
                (m != e.assemble()).then(|| Counterexample::new(format!("word does not realize {e}")).word(&w).matrix(m))
            }
            Err(err) => Some(Counterexample::new(format!("{e}: {err}")).matrix(e.assemble())),
        })
        .collect();
    let mut synth = Sub::new("every enumerated element is realized by its synthesized word");
    for r in results {
        synth.record(r.is_none(), || r.clone().expect("failure"));
    }

    let ball = explore(p, cfg.max_word_length, cfg.class_limit)?;
    let mut words = Sub::new("every word image lies in B_p");
    words.record(ball.conflict.is_none(), || ball.conflict.clone().expect("checked"));
    for (e, &i) in &ball.by_matrix {
        words.record(e.in_b_p(), || {
            Counterexample::new(format!("{e} is outside B_p")).word(&ball.classes[i].word).matrix(e.assemble())
        });
    }
    let mut subs = vec![synth, words];
    if let Some(wit) = excluded_witness(p) {
        let mut excluded = Sub::new("the excluded witness is a non-member and never produced");
        let neg = SpElement { omega: -wit.omega, ..wit.clone() }.canonical();
        excluded.record(!wit.in_b_p(), || Counterexample::new(format!("{wit} satisfies the inequalities")));
        excluded.record(matches!(synthesize_word(&wit), Err(Error::NotInBp)), || {
            Counterexample::new(format!("{wit} was synthesized"))
        });
        for e in [&wit, &neg] {
            excluded.record(!ball.by_matrix.contains_key(e), || {
                let w = &ball.classes[ball.by_matrix[e]].word;
                Counterexample::new(format!("{e} is produced")).word(w).matrix(e.assemble())
            });
        }
        subs.push(excluded);
    }
    let stats = Statistics {
        words_visited: ball.words_visited,
        matrices_hashed: ball.by_matrix.len() as u64,
        classes: ball.classes.len() as u64,
        samples: elements.len() as u64,
        ..Statistics::default()
    };
    let scope = format!("kappa <= {}, words of length <= {}", cfg.kappa_max, cfg.max_word_length);
    Ok(finish("image", p, scope, subs, stats, start))
}

fn q_of(text: &str, p: u32) -> (GroupWord, RepMatrix2) {
    let w = GroupWord::parse(text, p).expect("generated text is valid");
    let q = q_project(&star(&w));
    (w, q)
}

/// Tuples over `0..base` of every length in `1..=max_len`.
fn tuples(base: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `eta_k gamma^e rho` with `eta_k = (beta gamma)^(k-1) beta`.
fn block_text(k: usize, gamma: bool) -> String {
    let mut s = "b g ".repeat(k - 1) + "b";
    if gamma {
        s.push_str(" g");
    }
    s.push_str(" r");
    s
}

fn sign_pattern_holds(q: &RepMatrix2) -> bool {
    let (a, b, c, d) = (q.a(), q.b(), q.c(), q.d());
    let pos = a.is_positive() && c.is_positive() && d.is_positive() && !b.is_negative();
    let neg = a.is_negative() && c.is_negative() && d.is_negative() && !b.is_positive();
    pos || neg
}

fn block_sign_checks(cfg: &SweepConfig) -> Vec<Sub> {
    let mut sub = Sub::new("nontrivial blocks have a uniform sign pattern");
    let check = |blocks: &[(usize, bool)]| -> Option<Counterexample> {
        let text: Vec<String> = blocks.iter().map(|&(k, g)| block_text(k, g)).collect();
        let (w, q) = q_of(&text.join(" "), 2);
        (!sign_pattern_holds(&q)).then(|| Counterexample::new(format!("q image {:?}", q.rows())).word(&w))
    };
    let choices: Vec<(usize, bool)> = (1..=3).flat_map(|k| [(k, false), (k, true)]).collect();
    let exhaustive: Vec<Option<Counterexample>> = tuples(choices.len(), cfg.max_blocks)
        .par_iter()
        .map(|t| check(&t.iter().map(|&i| choices[i]).collect::<Vec<_>>()))
        .collect();
    let random = samples(cfg, 2, cfg.sample_count, |rng| {
        let n = rng.random_range(1..=8);
        let blocks: Vec<(usize, bool)> = (0..n).map(|_| (rng.random_range(1..=6), rng.random())).collect();
        check(&blocks)
    });
    for r in exhaustive.into_iter().chain(random) {
        sub.record(r.is_none(), || r.clone().expect("failure"));
    }
    vec![sub]
}

fn eta_product_checks(cfg: &SweepConfig) -> Vec<Sub> {
    const ETAS: [&str; 5] = ["b g", "b d", "b d^2", "b g d", "b g d^2"];
    let forbidden = [[1, 0, 0, 1], [-1, 0, 0, -1], [1, 0, 0, -1], [-1, 0, 0, 1]].map(|[a, b, c, d]| RepMatrix2::from_i64([[a, b], [c, d]]));
    let mut sub = Sub::new("eta products are never plus or minus diagonal units");
    let check = |idx: &[usize]| -> Option<Counterexample> {
        let text: Vec<&str> = idx.iter().map(|&i| ETAS[i]).collect();
        let (w, q) = q_of(&text.join(" "), 3);
        forbidden.contains(&q).then(|| Counterexample::new(format!("q image {:?}", q.rows())).word(&w))
    };
    let exhaustive: Vec<_> = tuples(ETAS.len(), cfg.max_blocks).par_iter().map(|t| check(t)).collect();
    let random = samples(cfg, 3, cfg.sample_count, |rng| {
        let n = rng.random_range(1..=12);
        check(&(0..n).map(|_| rng.random_range(0..ETAS.len())).collect::<Vec<_>>())
    });
    for r in exhaustive.into_iter().chain(random) {
        sub.record(r.is_none(), || r.clone().expect("failure"));
    }
    vec![sub]
}

/// Reduced words in the involutions beta, gamma, sigma of `G'`.
fn involution_words(max_len: usize) -> Vec<Vec<usize>> {
    tuples(3, max_len).into_iter().filter(|t| t.windows(2).all(|w| w[0] != w[1])).collect()
}

fn involution_text(t: &[usize]) -> String {
    t.iter().map(|&i| ["b", "g", "s"][i]).collect::<Vec<_>>().join(" ")
}

fn random_involution_word(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<usize> {
    let n = rng.random_range(1..=max_len);
    let mut t: Vec<usize> = Vec::with_capacity(n);
    while t.len() < n {
        let i = rng.random_range(0..3);
        if t.last() != Some(&i) {
            t.push(i);
        }
    }
    t
}

fn mobius_checks(cfg: &SweepConfig) -> Vec<Sub> {
    let p = cfg.p;
    let zero = ExtendedRational::integer(0);
    let inf = ExtendedRational::Infinity;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let halves = [ExtendedRational::Finite(half.clone()), ExtendedRational::Finite(-half)];
    // (endpoint failure, interval failure), each optional
    let check = |t: &[usize]| -> (Option<Counterexample>, Option<Counterexample>) {
        let (w, q) = q_of(&involution_text(t), p);
        let images = [mobius_apply(&q, &zero), mobius_apply(&q, &inf)];
        let endpoint = (p == 4 && images.iter().any(|x| halves.contains(x)))
            .then(|| Counterexample::new(format!("images of 0 and inf: {}, {}", images[0], images[1])).word(&w));
        let want = match ll_prefix(&w).expect("p >= 4") {
            LlPrefix::Gamma => Some(Interval::GammaMinus),
            LlPrefix::Sigma => Some(Interval::SigmaMinus),
            _ => None,
        };
        let interval = want.and_then(|iv| {
            let ok = images.iter().all(|x| interval_classify(x, p).expect("p >= 4").contains(&iv));
            (!ok).then(|| Counterexample::new(format!("images {}, {} not all in {iv}", images[0], images[1])).word(&w))
        });
        (endpoint, interval)
    };
    let exhaustive: Vec<_> = involution_words(cfg.max_word_length).par_iter().map(|t| check(t)).collect();
    let random = samples(cfg, 4, cfg.sample_count, |rng| check(&random_involution_word(rng, 3 * cfg.max_word_length)));
    let mut endpoint = Sub::new("0 and inf never land on +-1/2");
    let mut interval = Sub::new("leading gamma or sigma pins the images of 0 and inf");
    for (e, i) in exhaustive.into_iter().chain(random) {
        if p == 4 {
            endpoint.record(e.is_none(), || e.clone().expect("failure"));
        }
        interval.record(i.is_none(), || i.clone().expect("failure"));
    }
    if p == 4 {
        vec![endpoint, interval]
    } else {
        vec![interval]
    }
}

type M2 = [[i128; 2]; 2];

fn mul2(x: &M2, y: &M2) -> M2 {
    let f = |i: usize, j: usize| x[i][0] * y[0][j] + x[i][1] * y[1][j];
    [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
}

/// Depth-first search over reduced words in `U^{+-1}, L^{+-1}`; returns the
/// number of words and the first one evaluating to the identity.
fn free_search(p: u32, max_len: usize) -> (u64, Option<String>) {
    let pi = p as i128;
    let gens: [M2; 4] = [[[1, 1], [0, 1]], [[1, -1], [0, 1]], [[1, 0], [pi, 1]], [[1, 0], [-pi, 1]]];
    const NAMES: [&str; 4] = ["U", "U^-1", "L", "L^-1"];
    fn go(gens: &[M2; 4], m: M2, path: &mut Vec<usize>, max_len: usize, count: &mut u64) -> Option<Vec<usize>> {
        if path.len() == max_len {
            return None;
        }
        for g in 0..4 {
            if path.last().is_some_and(|&h| h ^ 1 == g) {
                continue;
            }
            path.push(g);
            *count += 1;
            let next = mul2(&m, &gens[g]);
            if next == [[1, 0], [0, 1]] {
                return Some(path.clone());
            }
            if let Some(bad) = go(gens, next, path, max_len, count) {
                return Some(bad);
            }
            path.pop();
        }
        None
    }
    let mut count = 0;
    let bad = go(&gens, [[1, 0], [0, 1]], &mut Vec::new(), max_len, &mut count);
    (count, bad.map(|b| b.iter().map(|&i| NAMES[i]).collect::<Vec<_>>().join(" ")))
}

pub fn verify_claims(cfg: &SweepConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let p = cfg.p;
    check_p(p)?;
    let mut stats = Statistics::default();
    let mut subs = match p {
        2 => block_sign_checks(cfg),
        3 => eta_product_checks(cfg),
        _ => mobius_checks(cfg),
    };
    if p >= 4 {
        let (count, bad) = free_search(p, cfg.free_length);
        let mut free = Sub::new("upper and lower unipotents generate a free group");
        free.cases = count;
        free.failure = bad.map(|w| Counterexample::new(format!("{w} is the identity")));
        stats.words_visited += count;
        subs.push(free);
    }
    stats.samples = cfg.sample_count as u64;
    let scope = format!(
        "exhaustive to {} factors / length {}, {} random samples, free words to length {}",
        cfg.max_blocks, cfg.max_word_length, cfg.sample_count, cfg.free_length
    );
    Ok(finish("claims", p, scope, subs, stats, start))
}

/// Round trips and the closed-form composition on random words.
pub fn verify_structure(cfg: &SweepConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let p = cfg.p;
    check_p(p)?;
    let results = samples(cfg, 5, cfg.sample_count, |rng| {
        let w1 = random_word(rng, p, cfg.max_word_length);
        let w2 = random_word(rng, p, cfg.max_word_length);
        let (m1, m2) = (star(&w1), star(&w2));
        let m12 = &m1 * &m2;
        let decomposed = (decompose_sp(&m1, p), decompose_sp(&m2, p), decompose_sp(&m12, p));
        let (Ok(e1), Ok(e2), Ok(e12)) = decomposed else {
            return (Some(Counterexample::new("image does not decompose").word(&w1).matrix(m1)), None);
        };
        let round = (e1.assemble() == m1 && e12.assemble() == m12)
            .then_some(())
            .map_or_else(|| Some(Counterexample::new("assemble(decompose(M)) != M").word(&w1).matrix(m1.clone())), |_| None);
        // With hats for omega-scaled blocks: D12 = A1 D2 + D1 (A2^T)^-1.
        let hat = |e: &SpElement, m: RepMatrix2| m.scale(&e.omega.to_bigint());
        let lhs = &(&hat(&e1, e1.a_block()) * &hat(&e2, e2.d_block())) + &(&hat(&e1, e1.d_block()) * &hat(&e2, e2.lower_right()));
        let cocycle = (lhs != hat(&e12, e12.d_block())).then(|| {
            Counterexample::new(format!("cocycle identity fails for {e1} and {e2}")).word(&w1.multiply(&w2).expect("same p"))
        });
        (round, cocycle)
    });
    let mut round = Sub::new("assemble inverts decompose");
    let mut cocycle = Sub::new("D blocks satisfy the cocycle identity");
    for (r, c) in results {
        round.record(r.is_none(), || r.clone().expect("failure"));
        cocycle.record(c.is_none(), || c.clone().expect("failure"));
    }
    let stats = Statistics { samples: cfg.sample_count as u64, words_visited: 2 * cfg.sample_count as u64, ..Statistics::default() };
    let scope = format!("{} random word pairs of length <= {}", cfg.sample_count, cfg.max_word_length);
    Ok(finish("structure", p, scope, vec![round, cocycle], stats, start))
}

/// Necessary conditions and family matching on pairs `(v, star(w) v)`.
pub fn verify_obstructions(cfg: &SweepConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let p = cfg.p;
    check_p(p)?;
    let pb = BigInt::from(p);
    let results = samples(cfg, 6, cfg.sample_count, |rng| {
        let v = HomologyVector::from_array([(); 4].map(|_| BigInt::from(rng.random_range(-9i64..=9))));
        let w = random_word(rng, p, cfg.max_word_length);
        let m = star(&w);
        let v2 = v.transform(&m);
        let e = decompose_sp(&m, p).expect("word images decompose");
        let cx = |what: &str| {
            let mut c = Counterexample::new(format!("{what} ({e})")).word(&w);
            c.vectors = Some((v.clone(), v2.clone()));
            c
        };
        let conditions = (!check_homology_obstruction(&v, &v2, p).pair(e.omega, e.delta).passes()).then(|| cx("conditions fail"));
        let inv = derived_invariants(&v, &v2, p, e.delta);
        let mut identities = None;
        let mut families = None;
        if !inv.delta.is_zero() {
            let o = |n: BigInt| BigRational::from_integer(e.omega.apply(n));
            let cdef = inv.cdef.as_ref().expect("delta != 0");
            let ok = inv.delta == inv.delta_prime
                && cdef.c == o(e.delta.apply(e.m.clone()))
                && cdef.d == o(&e.k * &pb + 1)
                && cdef.e == o(e.delta.apply(&e.n * &pb) + 1)
                && cdef.f == o(e.ell.clone());
            identities = (!ok).then(|| cx("c, d, e, f or delta disagree with the parameters"));
            families = match_vector_families(&v, &v2, p).families.is_empty().then(|| cx("no family matches"));
        }
        (conditions, identities, families, !inv.delta.is_zero())
    });
    let mut conditions = Sub::new("necessary conditions pass for the realizing signs");
    let mut identities = Sub::new("delta is preserved and c, d, e, f recover the parameters");
    let mut families = Sub::new("some vector family matches");
    for (c, i, f, nonzero) in results {
        conditions.record(c.is_none(), || c.clone().expect("failure"));
        if nonzero {
            identities.record(i.is_none(), || i.clone().expect("failure"));
            families.record(f.is_none(), || f.clone().expect("failure"));
        }
    }
    let stats = Statistics { samples: cfg.sample_count as u64, ..Statistics::default() };
    let scope = format!("{} random pairs, words of length <= {}", cfg.sample_count, cfg.max_word_length);
    Ok(finish("obstructions", p, scope, vec![conditions, identities, families], stats, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(p: u32) -> SweepConfig {
        SweepConfig { max_word_length: 4, kappa_max: 6, sample_count: 200, free_length: 8, ..SweepConfig::new(p) }
    }

    #[test]
    fn relation_counts() {
        assert_eq!(relations(2).unwrap().len(), 4);
        assert_eq!(relations(3).unwrap().len(), 7);
        assert_eq!(relations(7).unwrap().len(), 6);
        for p in [2, 3, 4, 5, 7] {
            assert!(verify_relations(p).unwrap().passed());
        }
    }

    #[test]
    fn a_false_relator_is_caught() {
        let map = StarMap::new(5).unwrap();
        assert!(!map.eval(&GroupWord::parse("b g", 5).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn small_sweeps_pass() {
        for p in [2, 3, 4, 5] {
            let cfg = quick(p);
            for r in [
                verify_kernel(&cfg).unwrap(),
                verify_image(&cfg).unwrap(),
                verify_claims(&cfg).unwrap(),
                verify_structure(&cfg).unwrap(),
                verify_obstructions(&cfg).unwrap(),
            ] {
                assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
            }
        }
    }

    #[test]
    fn trivial_kernel_sweep() {
        let cfg = SweepConfig { max_word_length: 1, ..SweepConfig::new(3) };
        let r = verify_kernel(&cfg).unwrap();
        assert!(r.passed());
        assert!(r.statistics.classes > 1);
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = quick(5);
        let a = serde_json::to_string(&verify_claims(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_claims(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
        let a = serde_json::to_string(&verify_kernel(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_kernel(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn class_limit_is_reported() {
        let cfg = SweepConfig { class_limit: 5, ..quick(5) };
        assert!(matches!(verify_kernel(&cfg), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn witnesses() {
        assert!(excluded_witness(4).is_none());
        let w = excluded_witness(5).unwrap();
        assert_eq!(w.a_block(), RepMatrix2::from_i64([[11, 7], [25, 16]]));
        for p in [6, 7, 11] {
            let w = excluded_witness(p).unwrap();
            assert!(w.satisfies_determinant_condition() && !w.in_b_p());
        }
    }

    #[test]
    fn free_search_finds_relations_in_non_free_groups() {
        // U and L with p = 1 generate SL(2, Z), where (U L^-1 U)^4 = 1.
        let (_, bad) = free_search(1, 12);
        assert!(bad.is_some());
        assert!(free_search(4, 8).1.is_none());
    }
}
