//! Command-line front end. `run` returns the process exit code: 0 for
//! pass/found, 1 for obstructed/absent/fail, 2 for errors.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::harness::{self, SweepConfig, VerificationReport};
use crate::lattice::{decompose_sp, enumerate_image, in_a_p, synthesize_word, SpElement};
use crate::matrix::{RepMatrix2, RepMatrix4};
use crate::obstruction::{obstruct, HomologyVector, Verdict};
use crate::star::{star, StarMap};
use crate::words::{cyclic_reduce, freely_homotopic, normal_form, FreeWord, GroupWord};

#[derive(Debug, Parser)]
#[command(name = "goeritz", version, about = "Exact computations with the genus-2 Goeritz groups of L(p, 1)")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the homology matrix of a word.
    Eval {
        word: String,
        #[arg(long)]
        p: u32,
    },
    /// Canonical form of a word modulo beta^2.
    NormalForm {
        word: String,
        #[arg(long)]
        p: u32,
    },
    /// Parameters of a 4x4 matrix in S_p (file path or `-` for stdin).
    Decompose {
        matrix: String,
        #[arg(long)]
        p: u32,
    },
    /// A_p, S_p, B_p and image membership of a 2x2 or 4x4 matrix.
    Member {
        matrix: String,
        #[arg(long)]
        p: u32,
    },
    /// A word realizing an SpElement given as JSON (file or `-`).
    Synthesize { element: String },
    /// Decide whether some image matrix carries v to v'.
    Obstruct {
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(allow_hyphen_values = true)]
        v_prime: String,
        #[arg(long)]
        p: u32,
        /// Range for free parameters of underdetermined systems.
        #[arg(long, default_value_t = 64)]
        bound: u64,
    },
    /// List B_p elements with omega = +1 up to a kappa bound.
    Enumerate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        kappa: u64,
    },
    /// Run a verification sweep.
    Verify {
        suite: Suite,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Free homotopy (conjugacy) of two words in x, y.
    Homotopy { u: String, v: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Suite {
    Relations,
    Kernel,
    Image,
    Claims,
    Structure,
    Obstructions,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 8)]
    max_length: usize,
    #[arg(long, default_value_t = 10)]
    kappa: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1_000_000)]
    class_limit: usize,
    #[arg(long, default_value_t = 4)]
    max_blocks: usize,
    #[arg(long, default_value_t = 12)]
    free_length: usize,
}

impl SweepArgs {
    fn config(&self) -> SweepConfig {
        SweepConfig {
            p: self.p,
            max_word_length: self.max_length,
            kappa_max: self.kappa,
            seed: self.seed,
            sample_count: self.samples,
            class_limit: self.class_limit,
            max_blocks: self.max_blocks,
            free_length: self.free_length,
        }
    }
}

/// Text or JSON, plus the exit code.
struct Output {
    text: String,
    json: serde_json::Value,
    code: i32,
}

fn read_source(path: &str) -> Result<String> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::MatrixFormat(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn to_json<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn free_word(text: &str) -> Result<FreeWord> {
    if text.trim() == "1" {
        return Ok(FreeWord::new(Vec::new()));
    }
    text.parse()
}

fn show_free(w: &FreeWord) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

fn show_word(w: &GroupWord) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

fn report_output(r: VerificationReport) -> Output {
    let mut text = format!("{} (p = {}): {:?}\nscope: {}\n", r.claim, r.p, r.status, r.scope);
    for c in &r.checks {
        text += &format!("  {:?}  {} ({} cases)\n", c.status, c.name, c.cases);
    }
    if let Some(cx) = &r.counterexample {
        text += &format!("counterexample: {}\n", cx.detail);
        if let Some(w) = &cx.word {
            text += &format!("  word: {w}\n");
        }
    }
    text += &format!("elapsed: {:.2?}", r.statistics.wall_time);
    Output { code: if r.passed() { 0 } else { 1 }, json: to_json(&r), text }
}

fn element_json(e: &SpElement) -> serde_json::Value {
    json!({ "element": e, "a": e.a_block(), "d": e.d_block(), "matrix": e.assemble() })
}

fn execute(cli: &Cli) -> Result<Output> {
    Ok(match &cli.command {
        Command::Eval { word, p } => {
            let w = GroupWord::parse(word, *p)?;
            let m = StarMap::new(*p)?.eval(&w)?;
            Output { text: m.to_string(), json: json!({ "word": show_word(&w), "p": p, "matrix": m }), code: 0 }
        }
        Command::NormalForm { word, p } => {
            let nf = normal_form(&GroupWord::parse(word, *p)?);
            let realized = show_word(&nf.realize());
            Output { text: format!("{nf}\nword: {realized}"), json: json!({ "normal_form": nf, "word": realized }), code: 0 }
        }
        Command::Decompose { matrix, p } => {
            let m = RepMatrix4::parse(&read_source(matrix)?)?;
            match decompose_sp(&m, *p) {
                Ok(e) => Output {
                    text: format!("{e}\nA =\n{}\nD =\n{}", e.a_block(), e.d_block()),
                    json: element_json(&e),
                    code: 0,
                },
                Err(err @ Error::NotInSp { .. }) => {
                    Output { text: err.to_string(), json: json!({ "element": null, "reason": err.to_string() }), code: 1 }
                }
                Err(err) => return Err(err),
            }
        }
        Command::Member { matrix, p } => member(&read_source(matrix)?, *p)?,
        Command::Synthesize { element } => {
            let raw: SpElement = serde_json::from_str(&read_source(element)?)?;
            let e = SpElement::new(raw.p, raw.omega, raw.k, raw.ell, raw.m, raw.n, raw.delta)?;
            match synthesize_word(&e) {
                Ok(w) => {
                    let ok = star(&w) == e.assemble();
                    Output {
                        text: format!("{}\nverified: {ok}", show_word(&w)),
                        json: json!({ "element": e, "word": show_word(&w), "verified": ok }),
                        code: if ok { 0 } else { 1 },
                    }
                }
                Err(err @ (Error::NotInBp | Error::NotInImage { .. })) => {
                    Output { text: err.to_string(), json: json!({ "element": e, "word": null, "reason": err.to_string() }), code: 1 }
                }
                Err(err) => return Err(err),
            }
        }
        Command::Obstruct { v, v_prime, p, bound } => {
            let (v, w): (HomologyVector, HomologyVector) = (v.parse()?, v_prime.parse()?);
            let r = obstruct(&v, &w, *p, *bound)?;
            let mut text = format!("v = {v}, v' = {w}, p = {p}\ndelta = {}, delta' = {}\n", r.invariants.delta, r.invariants.delta_prime);
            for c in &r.conditions.pairs {
                text += &format!(
                    "  {}: congruence {:?}, gcd {:?}, divisibility {:?}, inequality {:?}\n",
                    c.key(),
                    c.congruence,
                    c.gcd,
                    c.divisibility,
                    c.inequality
                );
            }
            text += &format!("families: {:?}{}\n", r.families, if r.families_complete { "" } else { " (only 1-3 decidable)" });
            if let Some(c) = &r.certificate {
                text += &format!("certificate: {} via {}\n", c.element, show_word(&c.word));
            }
            text += &format!("verdict: {} ({})", r.verdict, r.reason);
            let code = if r.verdict == Verdict::Certified { 0 } else { 1 };
            Output { text, json: to_json(&r), code }
        }
        Command::Enumerate { p, kappa } => {
            crate::int::check_p(*p)?;
            let list = enumerate_image(*p, *kappa);
            let text = list
                .iter()
                .map(|e| format!("{:>4}  {e}", e.kappa().to_string()))
                .collect::<Vec<_>>()
                .join("\n");
            Output { text, json: to_json(&list), code: 0 }
        }
        Command::Verify { suite, sweep } => {
            let cfg = sweep.config();
            let report = match suite {
                Suite::Relations => harness::verify_relations(cfg.p),
                Suite::Kernel => harness::verify_kernel(&cfg),
                Suite::Image => harness::verify_image(&cfg),
                Suite::Claims => harness::verify_claims(&cfg),
                Suite::Structure => harness::verify_structure(&cfg),
                Suite::Obstructions => harness::verify_obstructions(&cfg),
            }?;
            report_output(report)
        }
        Command::Homotopy { u, v } => {
            let (u, v) = (free_word(u)?, free_word(v)?);
            let same = freely_homotopic(&u, &v);
            let (cu, cv) = (cyclic_reduce(&u), cyclic_reduce(&v));
            Output {
                text: format!(
                    "{}\ncyclically reduced: {} | {}",
                    if same { "freely homotopic" } else { "not freely homotopic" },
                    show_free(&cu),
                    show_free(&cv)
                ),
                json: json!({ "freely_homotopic": same, "u": show_free(&cu), "v": show_free(&cv) }),
                code: if same { 0 } else { 1 },
            }
        }
    })
}

fn member(text: &str, p: u32) -> Result<Output> {
    crate::int::check_p(p)?;
    // A 4x4 matrix must lie in S_p; a 2x2 one is read as omega * A.
    let element = match RepMatrix4::parse(text) {
        Ok(m) => decompose_sp(&m, p).ok(),
        Err(_) => {
            let a = RepMatrix2::parse(text)?;
            let e = SpElement::from_q(&a, p).or_else(|| SpElement::from_q(&a.scale(&(-1).into()), p).map(|e| SpElement { omega: -e.omega, ..e }.canonical()));
            if !in_a_p(&a, p) && e.is_none() {
                None
            } else {
                e
            }
        }
    };
    let Some(e) = element else {
        let text = "A_p: false\nS_p: false\nB_p: false\nimage: false".to_string();
        return Ok(Output { text, json: json!({ "a_p": false, "s_p": false, "b_p": false, "image": false }), code: 1 });
    };
    let b = e.in_b_p();
    let (image, word, reason) = match synthesize_word(&e) {
        Ok(w) => (Some(true), Some(show_word(&w)), None),
        Err(err @ (Error::NotInBp | Error::NotInImage { .. })) => (Some(false), None, Some(err.to_string())),
        Err(err) => (None, None, Some(err.to_string())),
    };
    let mut text = format!("{e}\nA_p: true\nS_p: true\nB_p: {b}\nimage: ");
    text += &match (image, &word, &reason) {
        (Some(true), Some(w), _) => format!("true, word {w}"),
        (_, _, Some(r)) => format!("{}, {r}", image.map_or("unknown".into(), |i| i.to_string())),
        _ => "unknown".into(),
    };
    let json = json!({ "element": e, "a_p": true, "s_p": true, "b_p": b, "image": image, "word": word, "reason": reason });
    Ok(Output { text, json, code: if image == Some(true) { 0 } else { 1 } })
}

/// Parses `args` (program name first), runs the command and writes its
/// output to `out`.
pub fn run<I, T>(args: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let (body, code) = match execute(&cli) {
        Ok(o) if cli.json => (serde_json::to_string_pretty(&o.json).expect("json values print"), o.code),
        Ok(o) => (o.text, o.code),
        Err(e) if cli.json => (json!({ "error": e.to_string() }).to_string(), 2),
        Err(e) => (format!("error: {e}"), 2),
    };
    let _ = writeln!(out, "{body}");
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(std::iter::once("goeritz").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn eval_and_normal_form() {
        let (code, text) = call(&["eval", "g", "--p", "2"]);
        assert_eq!(code, 0);
        assert!(text.contains("-1"));
        let (code, text) = call(&["--json", "normal-form", "b^2", "--p", "5"]);
        assert_eq!(code, 0);
        assert!(text.contains("\"word\": \"1\""));
        assert_eq!(call(&["eval", "r", "--p", "5"]).0, 2);
    }

    #[test]
    fn obstruct_exit_codes() {
        let (code, text) = call(&["--json", "obstruct", "0,0,1,0", "0,0,1,1", "--p", "2"]);
        assert_eq!(code, 0);
        let j: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(j["certificate"]["word"], "g");
        assert_eq!(call(&["obstruct", "0,0,1,0", "0,0,6,0", "--p", "5"]).0, 1);
        assert_eq!(call(&["obstruct", "-1,0,1,0", "1,2", "--p", "5"]).0, 2);
    }

    #[test]
    fn homotopy_and_verify() {
        assert_eq!(call(&["homotopy", "xyX", "y"]).0, 0);
        assert_eq!(call(&["homotopy", "xy", "yX"]).0, 1);
        assert_eq!(call(&["verify", "relations", "--p", "3"]).0, 0);
        assert_eq!(call(&["verify", "kernel", "--p", "5", "--max-length", "3"]).0, 0);
    }

    #[test]
    fn files() {
        let dir = std::env::temp_dir().join(format!("goeritz-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let m = dir.join("m.txt");
        std::fs::write(&m, star(&GroupWord::parse("b s g", 5).unwrap()).to_string()).unwrap();
        let (code, text) = call(&["decompose", m.to_str().unwrap(), "--p", "5"]);
        assert_eq!(code, 0, "{text}");
        assert_eq!(call(&["member", m.to_str().unwrap(), "--p", "5"]).0, 0);
        let a = dir.join("a.txt");
        std::fs::write(&a, "-9 -4\n-25 -11").unwrap();
        let (code, text) = call(&["member", a.to_str().unwrap(), "--p", "5"]);
        assert_eq!(code, 1);
        assert!(text.contains("B_p: true") && text.contains("not in the image"), "{text}");
        let e = dir.join("e.json");
        std::fs::write(&e, r#"{"omega":1,"k":1,"ell":1,"m":1,"n":0,"delta":1,"p":5}"#).unwrap();
        let (code, text) = call(&["synthesize", e.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(text.starts_with("b g b s"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
