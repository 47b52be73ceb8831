//! Acceptance sweeps. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use goeritz::harness::{
    verify_claims, verify_image, verify_kernel, verify_obstructions, verify_relations, verify_structure, SweepConfig,
    VerificationReport,
};
use goeritz::{enumerate_image, find_goeritz_matrix, freely_homotopic, star, FreeWord, HomologyVector, SpElement};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn sweep(reports: Vec<goeritz::Result<VerificationReport>>) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for r in reports {
        match r {
            Ok(r) => {
                ok &= r.passed();
                details.push(format!("p={} {:?}", r.p, r.status));
                if let Some(cx) = r.counterexample {
                    details.push(format!("[{}]", cx.detail));
                }
            }
            Err(e) => {
                ok = false;
                details.push(format!("error: {e}"));
            }
        }
    }
    Outcome { ok, detail: details.join(", ") }
}

fn cfg(p: u32, f: impl FnOnce(&mut SweepConfig)) -> SweepConfig {
    let mut c = SweepConfig::new(p);
    c.seed = 20_261_016;
    f(&mut c);
    c
}

fn relations() -> Outcome {
    sweep([2, 3, 4, 5, 7].map(verify_relations).into())
}

fn structure() -> Outcome {
    sweep(
        [2, 3, 5]
            .map(|p| {
                verify_structure(&cfg(p, |c| {
                    c.max_word_length = 12;
                    c.sample_count = 10_000;
                }))
            })
            .into(),
    )
}

fn kernel() -> Outcome {
    sweep([2, 3, 5].map(|p| verify_kernel(&cfg(p, |c| c.max_word_length = 8))).into())
}

fn image() -> Outcome {
    let mut reports: Vec<_> = [2, 3, 4]
        .map(|p| {
            verify_image(&cfg(p, |c| {
                c.kappa_max = 10;
                c.max_word_length = 6;
            }))
        })
        .into();
    reports.push(verify_image(&cfg(5, |c| {
        c.kappa_max = 12;
        c.max_word_length = 10;
    })));
    sweep(reports)
}

fn claims() -> Outcome {
    sweep(
        [2, 3, 4, 5, 7]
            .map(|p| {
                verify_claims(&cfg(p, |c| {
                    c.max_word_length = 8;
                    c.max_blocks = 4;
                    c.sample_count = 10_000;
                    c.free_length = 12;
                }))
            })
            .into(),
    )
}

fn obstructions() -> Outcome {
    sweep(
        [2, 3, 5]
            .map(|p| {
                verify_obstructions(&cfg(p, |c| {
                    c.max_word_length = 12;
                    c.sample_count = 10_000;
                }))
            })
            .into(),
    )
}

type V4 = [i64; 4];

/// The 4x4 matrix of an element, rebuilt from its parameters in machine
/// integers: `omega * [[A, eps D], [0, (A^T)^-1]]`.
fn oracle_matrix(e: &SpElement) -> [[i64; 4]; 4] {
    let i = |n: &num_bigint::BigInt| n.to_i64().expect("small");
    let (p, k, l, m, n) = (e.p as i64, i(&e.k), i(&e.ell), i(&e.m), i(&e.n));
    let d = e.delta.to_i64();
    let eps = if e.p == 3 { -1 } else { 1 };
    let (a11, a22) = (k * p + 1, n * p + d);
    let rows = [
        [a11, l, eps * (k - d * n), eps * d * m],
        [m * p, a22, eps * m, 0],
        [0, 0, d * a22, -d * m * p],
        [0, 0, -d * l, d * a11],
    ];
    rows.map(|r| r.map(|x| e.omega.to_i64() * x))
}

fn apply(m: &[[i64; 4]; 4], v: &V4) -> V4 {
    std::array::from_fn(|r| (0..4).map(|c| m[r][c] * v[c]).sum())
}

fn hv(v: &V4) -> HomologyVector {
    HomologyVector::new(v[0], v[1], v[2], v[3])
}

fn grid() -> Vec<V4> {
    let r = -3..=3i64;
    let mut out = Vec::new();
    for a in r.clone() {
        for x in r.clone() {
            for b in r.clone() {
                for y in r.clone() {
                    out.push([a, x, b, y]);
                }
            }
        }
    }
    out
}

fn coherence() -> Outcome {
    let vs = grid();
    let mut details = Vec::new();
    let mut ok = true;
    for p in [2u32, 3] {
        let mats: Vec<[[i64; 4]; 4]> = enumerate_image(p, 8)
            .iter()
            .flat_map(|e| {
                let m = oracle_matrix(e);
                [m, m.map(|r| r.map(|x| -x))]
            })
            .collect();
        let (mut agree, mut false_neg, mut false_pos, mut beyond) = (0u64, 0u64, 0u64, 0u64);
        let mut example = None;
        for v in &vs {
            let reach: HashSet<V4> = mats.iter().map(|m| apply(m, v)).collect();
            let hv_v = hv(v);
            for w in &vs {
                let expected = reach.contains(w);
                match find_goeritz_matrix(&hv_v, &hv(w), p, 64) {
                    Some((e, word)) => {
                        let m = oracle_matrix(&e);
                        let genuine = apply(&m, v) == *w && star(&word) == e.assemble();
                        if !genuine || (!expected && e.kappa() <= 8.into()) {
                            false_pos += 1;
                            example.get_or_insert(format!("p={p} {v:?}->{w:?} via {e}"));
                        } else if !expected {
                            beyond += 1;
                        } else {
                            agree += 1;
                        }
                    }
                    None if expected => {
                        false_neg += 1;
                        example.get_or_insert(format!("p={p} {v:?}->{w:?} missed"));
                    }
                    None => agree += 1,
                }
            }
        }
        ok &= false_neg == 0 && false_pos == 0;
        details.push(format!(
            "p={p}: {agree} agree, {false_neg} false negatives, {false_pos} false positives, {beyond} certified beyond kappa 8"
        ));
        if let Some(x) = example {
            details.push(x);
        }
    }
    Outcome { ok, detail: details.join("; ") }
}

fn random_free(rng: &mut ChaCha8Rng, len: usize) -> Vec<char> {
    (0..len).map(|_| ['x', 'X', 'y', 'Y'][rng.random_range(0..4)]).collect()
}

fn inv(c: char) -> char {
    if c.is_lowercase() {
        c.to_ascii_uppercase()
    } else {
        c.to_ascii_lowercase()
    }
}

fn naive_reduce(w: &[char]) -> Vec<char> {
    let mut out: Vec<char> = Vec::new();
    for &c in w {
        if out.last() == Some(&inv(c)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    while out.len() >= 2 && out[0] == inv(out[out.len() - 1]) {
        out.pop();
        out.remove(0);
    }
    out
}

/// Conjugacy by comparing every rotation of the cyclic reductions.
fn rotation_oracle(u: &[char], v: &[char]) -> bool {
    let (u, v) = (naive_reduce(u), naive_reduce(v));
    u.len() == v.len() && (u.is_empty() || (0..u.len()).any(|i| u[i..].iter().chain(&u[..i]).eq(v.iter())))
}

fn parse(w: &[char]) -> FreeWord {
    if w.is_empty() {
        FreeWord::new(Vec::new())
    } else {
        w.iter().collect::<String>().parse().expect("valid letters")
    }
}

fn homotopy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut conj_ok, mut non_ok) = (0, 0);
    for _ in 0..1000 {
        let (lu, lg) = (rng.random_range(0..12), rng.random_range(0..8));
        let u = random_free(&mut rng, lu);
        let g = random_free(&mut rng, lg);
        let ginv: Vec<char> = g.iter().rev().map(|&c| inv(c)).collect();
        let v: Vec<char> = g.iter().chain(&u).chain(&ginv).copied().collect();
        if freely_homotopic(&parse(&u), &parse(&v)) {
            conj_ok += 1;
        }
    }
    let mut pairs = 0;
    while pairs < 1000 {
        let (lu, lv) = (rng.random_range(0..10), rng.random_range(0..10));
        let (u, v) = (random_free(&mut rng, lu), random_free(&mut rng, lv));
        if rotation_oracle(&u, &v) {
            continue;
        }
        pairs += 1;
        if !freely_homotopic(&parse(&u), &parse(&v)) {
            non_ok += 1;
        }
    }
    Outcome { ok: conj_ok == 1000 && non_ok == 1000, detail: format!("{conj_ok}/1000 conjugate, {non_ok}/1000 non-conjugate") }
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("relations", Duration::from_secs(1), relations),
        ("structure", Duration::from_secs(30), structure),
        ("kernel", Duration::from_secs(300), kernel),
        ("image", Duration::from_secs(300), image),
        ("claims", Duration::from_secs(120), claims),
        ("obstruction soundness", Duration::from_secs(60), obstructions),
        ("decision coherence", Duration::from_secs(600), coherence),
        ("homotopy", Duration::from_secs(5), homotopy),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let pass = outcome.ok && elapsed <= budget;
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {}: {name} ({:.2?} of {:?}): {}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            elapsed,
            budget,
            outcome.detail
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
