//! Command-line front end. Every subcommand builds a JSON report; the text
//! output is a rendering of that same report.

mod render;

pub use render::{render_text, Envelope};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::{Read, Write};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::fedder::{graded_summand_test, is_f_split, twist_spectrum, witness_from_proof};
use crate::frobmod::{
    alpha, alpha_enumerate, alpha_table, ci_filtration_check, class_summary, cyclic_decompose, pn_pushforward,
    strand_module, veronese_decompose,
};
use crate::ideal::{Ideal, IdealClass, IdealInput, MonomialIdeal};
use crate::json::BigCount;
use crate::koszul::{betti_power_formula, brute_betti, codepth, hilbert_identity, strand_check};
use crate::levels::{f_level_bounds, generation_exponent, semisimple_pushforward_exponent};
use crate::limits::Limits;
use crate::par;
use crate::poly::Ring;

#[derive(Debug, Parser)]
#[command(name = "frobkit", version, about = "Frobenius splitting, pushforward and codepth computations over F_p")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the data-parallel kernels.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Refuse enumerations larger than this many monomials.
    #[arg(long, global = true)]
    pub max_monomials: Option<u64>,
    /// Override the truncation degree of Koszul homology and filtrations.
    #[arg(long, global = true)]
    pub degree_bound: Option<u32>,
    /// Refuse q = p^e above this value.
    #[arg(long, global = true)]
    pub qmax: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct IdealArgs {
    /// Characteristic p.
    #[arg(long = "char")]
    pub characteristic: Option<u32>,
    /// Comma-separated variable names.
    #[arg(long)]
    pub vars: Option<String>,
    /// Comma-separated generators.
    #[arg(long, allow_hyphen_values = true)]
    pub ideal: Option<String>,
    /// `monomial` or `ci`; detected when omitted.
    #[arg(long)]
    pub class: Option<String>,
    /// Read `char p; vars ...; ideal ...;` from a file (`-` for stdin).
    #[arg(long, conflicts_with_all = ["characteristic", "vars", "ideal", "class"])]
    pub input: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Fedder-type F-splitting test.
    Fsplit {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        e: u32,
    },
    /// Is R(-j) a graded summand of F^e_*R?
    Summand {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        j: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        e: u32,
    },
    /// Graded summand tests for j = 0..=jmax.
    Twists {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value_t = 3)]
        jmax: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        e: u32,
    },
    /// Witness monomials of a split complete intersection.
    Witness {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        e: u32,
    },
    /// Codepth and depth from Koszul homology.
    Codepth {
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Least e with p^e > codepth.
    Genexp {
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Betti numbers of m^j in d variables: formula against a computed resolution.
    Betti {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=6))]
        d: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        j: u64,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Exactness of a strand sequence over the Veronese subring of k[x,y].
    Strand {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        j: u64,
        #[arg(long, default_value_t = 6)]
        kmax: u64,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Multiplicities of O(-i) in F_*O(l) on P^n.
    Alpha {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
    },
    /// Line-bundle decomposition of F^e_*O(l) on P^n.
    Pn {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        e: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        l: i64,
    },
    /// Cyclic decomposition of F^e_*R for artinian monomial R.
    Decompose {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        e: u32,
    },
    /// Conic decomposition for a Veronese subring of F_p[x,y].
    Veronese {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        ell: u64,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        e: u32,
        #[arg(long, default_value_t = 12)]
        bound: u64,
    },
    /// Frobenius filtration of a monomial complete intersection.
    Filtration {
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Bounds on the Frobenius level.
    Flevel {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        emax: u32,
    },
    /// Loewy length and the semisimple pushforward exponent.
    Loewy {
        #[command(flatten)]
        ideal: IdealArgs,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fsplit { .. } => "fsplit",
            Command::Summand { .. } => "summand",
            Command::Twists { .. } => "twists",
            Command::Witness { .. } => "witness",
            Command::Codepth { .. } => "codepth",
            Command::Genexp { .. } => "genexp",
            Command::Betti { .. } => "betti",
            Command::Strand { .. } => "strand",
            Command::Alpha { .. } => "alpha",
            Command::Pn { .. } => "pn",
            Command::Decompose { .. } => "decompose",
            Command::Veronese { .. } => "veronese",
            Command::Filtration { .. } => "filtration",
            Command::Flevel { .. } => "flevel",
            Command::Loewy { .. } => "loewy",
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::UnsupportedClass(_) | Error::NotArtinian(_) | Error::NotInMaxSquared | Error::NotFSplit { .. } => 2,
        Error::ResourceGuard { .. } | Error::ExponentOverflow(_) => 3,
        Error::Verification(_) => 4,
        Error::Parse(_) | Error::InvalidArgument(_) | Error::RingMismatch => 1,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

struct Outcome {
    input: Value,
    result: Value,
    certificates: Value,
    notes: Vec<String>,
}

fn load_ideal(args: &IdealArgs) -> Result<IdealInput> {
    if let Some(path) = &args.input {
        let mut text = String::new();
        if path == "-" {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        } else {
            text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("reading {path}: {e}")))?;
        }
        return IdealInput::parse(&text);
    }
    let p = args.characteristic.ok_or_else(|| Error::invalid("--char is required (or --input)"))?;
    let vars = args.vars.as_deref().ok_or_else(|| Error::invalid("--vars is required (or --input)"))?;
    let class = args.class.as_deref().map(str::parse::<IdealClass>).transpose()?;
    IdealInput::from_parts(p, vars, args.ideal.as_deref().unwrap_or(""), class)
}

fn ideal_echo(inp: &IdealInput) -> Value {
    json!({
        "char": inp.ring.prime().get(),
        "vars": inp.ring.vars(),
        "ideal": inp.ideal.generator_polynomials().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "class": inp.ideal.class(),
    })
}

fn with_params(mut echo: Value, params: Value) -> Value {
    if let (Some(e), Some(p)) = (echo.as_object_mut(), params.as_object()) {
        for (k, v) in p {
            e.insert(k.clone(), v.clone());
        }
    }
    echo
}

fn dispatch(cmd: &Command, limits: &Limits) -> Result<Outcome> {
    match cmd {
        Command::Fsplit { ideal, e } => {
            let inp = load_ideal(ideal)?;
            let cert = is_f_split(&inp.ideal, *e, limits)?;
            Ok(Outcome {
                input: with_params(ideal_echo(&inp), json!({ "e": e })),
                result: json!({ "verdict": cert.verdict, "e": cert.e, "q": cert.q }),
                certificates: to_value(&cert),
                notes: inp.warnings,
            })
        }
        Command::Summand { ideal, j, e } => {
            let inp = load_ideal(ideal)?;
            let cert = graded_summand_test(&inp.ideal, *j, *e, limits)?;
            Ok(Outcome {
                input: with_params(ideal_echo(&inp), json!({ "j": j, "e": e })),
                result: json!({ "verdict": cert.verdict, "j": cert.j, "e": cert.e, "q": cert.q }),
                certificates: to_value(&cert),
                notes: inp.warnings,
            })
        }
        Command::Twists { ideal, jmax, e } => {
            let inp = load_ideal(ideal)?;
            let spectrum = twist_spectrum(&inp.ideal, *e, *jmax, limits)?;
            let verdicts: serde_json::Map<String, Value> =
                spectrum.entries.iter().map(|(j, c)| (j.to_string(), Value::Bool(c.verdict))).collect();
            let mut notes = inp.warnings.clone();
            notes.extend(spectrum.warnings.iter().cloned());
            Ok(Outcome {
                input: with_params(ideal_echo(&inp), json!({ "jmax": jmax, "e": e })),
                result: json!({
                    "q": spectrum.q, "n": spectrum.n, "d": spectrum.d, "band": spectrum.band,
                    "asserted": spectrum.asserted, "verdicts": verdicts,
                }),
                certificates: to_value(&spectrum.entries),
                notes,
            })
        }
        Command::Witness { ideal, e } => {
            let inp = load_ideal(ideal)?;
            let chain = witness_from_proof(&inp.ideal, *e, limits)?;
            let mut notes = inp.warnings.clone();
            notes.extend(chain.warnings.iter().cloned());
            Ok(Outcome {
                input: with_params(ideal_echo(&inp), json!({ "e": e })),
                result: json!({
                    "q": chain.q, "n": chain.n, "d": chain.d, "gamma": chain.gamma, "g": chain.g,
                    "deg_g": chain.deg_g, "expected_deg_g": chain.expected_deg_g,
                }),
                certificates: to_value(&chain.factors),
                notes,
            })
        }
        Command::Codepth { ideal } => {
            let inp = load_ideal(ideal)?;
            let m = inp.ideal.require_monomial("codepth")?;
            let r = codepth(m, limits)?;
            Ok(Outcome {
                input: ideal_echo(&inp),
                result: json!({
                    "codepth": r.codepth, "depth": r.depth, "nvars": r.nvars,
                    "bound": r.bound, "lcm_degree": r.lcm_degree,
                }),
                certificates: json!({ "homology": r.table }),
                notes: inp.warnings,
            })
        }
        Command::Genexp { ideal } => {
            let inp = load_ideal(ideal)?;
            let g = generation_exponent(&inp.ideal, limits)?;
            Ok(Outcome { input: ideal_echo(&inp), result: to_value(&g), certificates: Value::Null, notes: inp.warnings })
        }
        Command::Betti { d, j, p } => betti_command(*d, *j, *p, limits),
        Command::Strand { ell, j, kmax, p } => {
            let r = strand_check(*ell, *j, *kmax, *p, limits)?;
            if !r.exact {
                return Err(Error::Verification(format!("strand sequence for l = {ell}, j = {j} is not exact")));
            }
            let g = strand_module(*ell, *j, *kmax, limits)?;
            Ok(Outcome {
                input: json!({ "ell": ell, "j": j, "kmax": kmax, "p": p }),
                result: json!({ "exact": r.exact, "b1": r.b1, "b2": r.b2, "strand_module": g }),
                certificates: to_value(&r.degrees),
                notes: vec![],
            })
        }
        Command::Alpha { n, p, l } => {
            let prime = crate::field::Prime::new(*p)?;
            let table = alpha_table(*n, prime.get(), *l);
            let mut agree = true;
            let mut sum = num_bigint::BigUint::default();
            let mut out = serde_json::Map::new();
            for (i, a) in &table {
                agree &= num_bigint::BigUint::from(alpha_enumerate(*n, *p, *i, *l, limits)?) == *a;
                agree &= alpha(*n, *p, *i, *l) == *a;
                sum += a;
                out.insert(i.to_string(), to_value(&BigCount(a.clone())));
            }
            let expected = num_bigint::BigUint::from(*p).pow(*n as u32);
            if !agree || sum != expected {
                return Err(Error::Verification("alpha routes disagree or do not sum to p^n".into()));
            }
            Ok(Outcome {
                input: json!({ "n": n, "p": p, "l": l }),
                result: json!({
                    "alpha": out, "sum": BigCount(sum), "expected_sum": BigCount(expected),
                    "routes_agree": agree,
                }),
                certificates: Value::Null,
                notes: vec![],
            })
        }
        Command::Pn { n, p, e, l } => {
            let r = pn_pushforward(*n, *p, *e, *l, limits)?;
            if r.generates != r.expected_generates {
                return Err(Error::Verification("generation flag differs from the p^e > n criterion".into()));
            }
            Ok(Outcome {
                input: json!({ "n": n, "p": p, "e": e, "l": l }),
                result: to_value(&r),
                certificates: Value::Null,
                notes: vec![],
            })
        }
        Command::Decompose { ideal, e } => {
            let inp = load_ideal(ideal)?;
            let m = inp.ideal.require_monomial("decompose")?;
            let d = cyclic_decompose(m, *e, limits)?;
            let mut notes = inp.warnings.clone();
            if !d.direct {
                notes.push("greedy cyclic pieces overlap: the sum is not direct".into());
            }
            Ok(Outcome {
                input: with_params(ideal_echo(&inp), json!({ "e": e })),
                result: json!({
                    "dimension": d.dimension, "direct": d.direct, "pieces": d.pieces.len(),
                    "classes": class_summary(&d),
                }),
                certificates: to_value(&d),
                notes,
            })
        }
        Command::Veronese { ell, p, e, bound } => {
            let d = veronese_decompose(*ell, *p, *e, *bound, limits)?;
            Ok(Outcome {
                input: json!({ "ell": ell, "p": p, "e": e, "bound": bound }),
                result: json!({
                    "multiplicities": d.multiplicities.iter().map(|(j, m)| (j.to_string(), Value::from(*m))).collect::<serde_json::Map<_, _>>(),
                    "hilbert_check": d.hilbert_check, "has_r_summand": d.has_r_summand,
                    "has_nonfree_summand": d.has_nonfree_summand,
                }),
                certificates: to_value(&d.classes),
                notes: vec![],
            })
        }
        Command::Filtration { ideal } => {
            let inp = load_ideal(ideal)?;
            let m = match &inp.ideal {
                Ideal::Monomial(m) => m.clone(),
                Ideal::Ci(ci) => ci
                    .to_monomial_ideal()
                    .ok_or_else(|| Error::UnsupportedClass("filtration needs monomial generators".into()))?,
            };
            let r = ci_filtration_check(&m, limits)?;
            if !r.passed {
                return Err(Error::Verification("filtration subquotients do not match".into()));
            }
            let mut notes = inp.warnings.clone();
            notes.push(r.note.clone());
            Ok(Outcome {
                input: ideal_echo(&inp),
                result: json!({
                    "passed": r.passed, "steps": r.steps, "expected_steps": r.expected_steps,
                    "bound": r.bound, "dim_r": r.dim_r,
                }),
                certificates: to_value(&r.subquotients),
                notes,
            })
        }
        Command::Flevel { ideal, emax } => {
            let inp = load_ideal(ideal)?;
            let r = f_level_bounds(&inp.ideal, *emax, limits)?;
            Ok(Outcome {
                input: with_params(ideal_echo(&inp), json!({ "emax": emax })),
                result: json!({
                    "lower": r.lower, "upper": r.upper, "exact": r.exact, "p": r.p,
                    "provenance": r.provenance,
                }),
                certificates: to_value(&r.certificates),
                notes: inp.warnings,
            })
        }
        Command::Loewy { ideal } => {
            let inp = load_ideal(ideal)?;
            let m = inp.ideal.require_monomial("loewy")?;
            let ll = m.loewy_length(limits)?;
            let hilbert = m.staircase(ll, limits)?.hilbert();
            let s = semisimple_pushforward_exponent(&inp.ideal, limits)?;
            Ok(Outcome {
                input: ideal_echo(&inp),
                result: json!({
                    "loewy_length": ll, "dimension": hilbert.iter().sum::<usize>(), "hilbert": hilbert,
                    "semisimple_exponent": s.e, "log_loewy": s.log_loewy,
                }),
                certificates: to_value(&s),
                notes: inp.warnings,
            })
        }
    }
}

fn betti_command(d: u64, j: u64, p: u32, limits: &Limits) -> Result<Outcome> {
    let ring = Ring::indexed(p, d as usize)?;
    let mj = MonomialIdeal::maximal_power(&ring, j, limits)?;
    let bound = j + d;
    let res = brute_betti(&mj, bound, limits)?;
    let mut rows = Vec::new();
    let mut agree = true;
    for i in 0..=d {
        let formula = betti_power_formula(d, j, i);
        let twist = if i == 0 { 0 } else { j + i - 1 };
        let computed = res.betti.get(i as usize, twist);
        agree &= num_bigint::BigUint::from(computed) == formula && res.betti.total(i as usize) == computed;
        rows.push(json!({ "i": i, "twist": -(twist as i64), "formula": BigCount(formula), "computed": computed }));
    }
    agree &= res.betti.length() as u64 == d;
    let identity = hilbert_identity(&mj, &res.betti, 12, limits)?;
    if !agree || identity.is_some() {
        return Err(Error::Verification(format!("Betti numbers of m^{j} in {d} variables disagree")));
    }
    Ok(Outcome {
        input: json!({ "d": d, "j": j, "p": p }),
        result: json!({ "agree": agree, "hilbert_identity_through": 12, "rows": rows }),
        certificates: json!({ "bound": bound, "betti": res.betti }),
        notes: vec![format!("resolution computed through internal degree {bound}")],
    })
}

fn limits_from(g: &GlobalOpts) -> Limits {
    let mut l = Limits::default();
    if let Some(m) = g.max_monomials {
        l.max_monomials = m;
    }
    if let Some(q) = g.qmax {
        l.max_q = q;
    }
    l.degree_bound = g.degree_bound;
    l
}

/// Parse `argv`, run the subcommand, write the report; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let limits = limits_from(&cli.global);
    let name = cli.command.name();
    let start = Instant::now();
    let threads = cli.global.threads.map(usize::from);
    let outcome = match threads {
        Some(t) => par::with_threads(t, || dispatch(&cli.command, &limits)),
        None => dispatch(&cli.command, &limits),
    };
    let timing_us = start.elapsed().as_micros() as u64;
    match outcome {
        Ok(o) => {
            let env = Envelope::new(name, o.input, o.result, o.certificates, o.notes, timing_us);
            let text = if cli.global.json { env.to_json() } else { render_text(&env) };
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.global.json {
                let v = json!({
                    "tool": "frobkit", "version": env!("CARGO_PKG_VERSION"), "command": name,
                    "error": { "exit_code": code, "message": e.to_string() },
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}
