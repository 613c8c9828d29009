//! Subcommand dispatch and deterministic text/JSON/CSV rendering.

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use oneplace::construct::{
    count_table, curve_from_delta, delta_sequences_with_frobenius_threads, embeddings_filter,
    ConstructError,
};
use oneplace::criterion::one_place_semigroup;
use oneplace::param::{implicitize, ParamError, Parametrization};
use oneplace::reduce::{rdeg, reduced_equation_of, ReduceError};
use oneplace::semigroup::{frobenius_free, DeltaReason, DeltaSeq, NumSgp, SemigroupError};
use oneplace::BiPoly;

use crate::parser::{parse_poly, parse_sequence, parse_tpoly};

#[derive(Parser, Debug)]
#[command(
    name = "oneplace",
    version,
    about = "Plane algebraic curves with one place at infinity: decision, construction, enumeration, reduction, implicitization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide the one-place property; print the value sequence and roots
    Check {
        /// Polynomial in x and y, e.g. "((y^3-x^2)^2-x*y^2)^4-(y^3-x^2)"
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Canonical curve for a delta-sequence
    Curve {
        /// Comma-separated sequence, e.g. "6,4,3"
        sequence: String,
        #[arg(long)]
        json: bool,
    },
    /// All delta-sequences with the given Frobenius number
    Enumerate {
        frobenius: i64,
        /// Print only the number of sequences
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// Delta-sequences with this Frobenius number generating the same semigroup
    Filter {
        /// Comma-separated generators, e.g. "6,7"
        generators: String,
        frobenius: i64,
        #[arg(long)]
        json: bool,
    },
    /// Frobenius number, conductor and genus of a free arrangement
    Frobenius {
        /// Comma-separated sequence, e.g. "24,16,28,7"
        sequence: String,
        #[arg(long)]
        json: bool,
    },
    /// Reduced equation with the automorphism realizing it
    Reduce {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Implicit equation of the parametrized curve (x(t), y(t))
    Implicitize {
        /// x(t), e.g. "t^4-t"
        xt: String,
        /// y(t), e.g. "t^3-1"
        yt: String,
        #[arg(long)]
        json: bool,
    },
    /// CSV table of delta-sequence and semigroup counts per Frobenius number
    Table { f_max: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub body: String,
}

impl CommandResult {
    fn ok(body: String) -> Self {
        CommandResult { exit_code: 0, body }
    }

    fn rejected(command: &str, json: bool, reason: &str, message: String) -> Self {
        let body = if json {
            render_json(&json!({
                "command": command,
                "ok": false,
                "error": { "reason": reason, "message": message },
            }))
        } else {
            format!("rejected: {reason}\n{message}")
        };
        CommandResult { exit_code: 1, body }
    }

    fn usage(message: String) -> Self {
        CommandResult {
            exit_code: 2,
            body: format!("error: {message}"),
        }
    }
}

fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable payload")
}

fn seq_str(seq: &[u64]) -> String {
    let inner: Vec<String> = seq.iter().map(u64::to_string).collect();
    format!("[{}]", inner.join(", "))
}

fn enumeration_threads() -> Result<usize, String> {
    match std::env::var("ONEPLACE_THREADS") {
        Err(_) => Ok(1),
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(format!(
                "ONEPLACE_THREADS must be a positive integer, got '{v}'"
            )),
        },
    }
}

pub fn run(cli: Cli) -> CommandResult {
    match cli.command {
        Command::Check { expr, json } => check(&expr, json),
        Command::Curve { sequence, json } => curve(&sequence, json),
        Command::Enumerate {
            frobenius,
            count,
            json,
        } => enumerate(frobenius, count, json),
        Command::Filter {
            generators,
            frobenius,
            json,
        } => filter(&generators, frobenius, json),
        Command::Frobenius { sequence, json } => frobenius_cmd(&sequence, json),
        Command::Reduce { expr, json } => reduce(&expr, json),
        Command::Implicitize { xt, yt, json } => implicitize_cmd(&xt, &yt, json),
        Command::Table { f_max } => table(f_max),
    }
}

fn check(expr: &str, json: bool) -> CommandResult {
    let f = match parse_poly(expr) {
        Ok(f) => f,
        Err(e) => return CommandResult::usage(e.to_string()),
    };
    match one_place_semigroup(&f) {
        Err(r) => CommandResult::rejected("check", json, r.reason_id(), r.to_string()),
        Ok(vd) => {
            let seq = vd.value_sequence();
            let sgp = NumSgp::new(seq).expect("value sequence is numerical");
            let roots: Vec<String> = vd.roots.iter().map(BiPoly::to_string).collect();
            if json {
                CommandResult::ok(render_json(&json!({
                    "command": "check",
                    "ok": true,
                    "result": {
                        "input": f.to_string(),
                        "sequence": seq,
                        "roots": roots,
                        "frobenius": sgp.frobenius(),
                        "conductor": sgp.conductor(),
                        "genus": sgp.genus(),
                        "preprocessing": {
                            "swapped": vd.preprocessing.swapped,
                            "scale": vd.preprocessing.scale.to_string(),
                            "yshift": vd.preprocessing.yshift.to_string(),
                        },
                    },
                })))
            } else {
                CommandResult::ok(format!(
                    "sequence: {}\nroots: [{}]\nfrobenius: {}\nconductor: {}\ngenus: {}",
                    seq_str(seq),
                    roots.join(", "),
                    sgp.frobenius(),
                    sgp.conductor(),
                    sgp.genus()
                ))
            }
        }
    }
}

fn curve(sequence: &str, json: bool) -> CommandResult {
    let seq = match parse_sequence(sequence) {
        Ok(s) => s,
        Err(e) => return CommandResult::usage(e),
    };
    match curve_from_delta(&seq) {
        Err(ConstructError::NotDeltaSequence(r)) => {
            CommandResult::rejected("curve", json, delta_reason_id(&r), r.to_string())
        }
        Err(e) => CommandResult::rejected("curve", json, "curve:invalid", e.to_string()),
        Ok(f) => {
            if json {
                CommandResult::ok(render_json(&json!({
                    "command": "curve",
                    "ok": true,
                    "result": { "sequence": seq, "curve": f.to_string() },
                })))
            } else {
                CommandResult::ok(f.to_string())
            }
        }
    }
}

fn enumerate(frobenius: i64, count: bool, json: bool) -> CommandResult {
    if frobenius < 1 {
        return CommandResult::usage("Frobenius number must be at least 1".into());
    }
    let threads = match enumeration_threads() {
        Ok(t) => t,
        Err(e) => return CommandResult::usage(e),
    };
    let seqs = delta_sequences_with_frobenius_threads(frobenius, threads);
    if json {
        let list: Vec<&[u64]> = seqs.iter().map(DeltaSeq::seq).collect();
        return CommandResult::ok(render_json(&json!({
            "command": "enumerate",
            "ok": true,
            "result": {
                "frobenius": frobenius,
                "count": seqs.len(),
                "sequences": list,
            },
        })));
    }
    if count {
        return CommandResult::ok(seqs.len().to_string());
    }
    let lines: Vec<String> = seqs.iter().map(|d| seq_str(d.seq())).collect();
    CommandResult::ok(lines.join("\n"))
}

fn filter(generators: &str, frobenius: i64, json: bool) -> CommandResult {
    let gens = match parse_sequence(generators) {
        Ok(s) => s,
        Err(e) => return CommandResult::usage(e),
    };
    match embeddings_filter(&gens, frobenius) {
        Err(ConstructError::FrobeniusMismatch { expected, actual }) => CommandResult::rejected(
            "filter",
            json,
            "filter:frobenius-mismatch",
            format!("generators have Frobenius number {actual}, expected {expected}"),
        ),
        Err(ConstructError::Semigroup(e)) => {
            CommandResult::rejected("filter", json, semigroup_reason_id(&e), e.to_string())
        }
        Err(e) => CommandResult::rejected("filter", json, "filter:invalid", e.to_string()),
        Ok(seqs) => {
            if json {
                let list: Vec<&[u64]> = seqs.iter().map(DeltaSeq::seq).collect();
                CommandResult::ok(render_json(&json!({
                    "command": "filter",
                    "ok": true,
                    "result": {
                        "generators": gens,
                        "frobenius": frobenius,
                        "sequences": list,
                    },
                })))
            } else {
                let lines: Vec<String> = seqs.iter().map(|d| seq_str(d.seq())).collect();
                CommandResult::ok(lines.join("\n"))
            }
        }
    }
}

fn frobenius_cmd(sequence: &str, json: bool) -> CommandResult {
    let seq = match parse_sequence(sequence) {
        Ok(s) => s,
        Err(e) => return CommandResult::usage(e),
    };
    match frobenius_free(&seq) {
        Err(e) => {
            CommandResult::rejected("frobenius", json, semigroup_reason_id(&e), e.to_string())
        }
        Ok(f) => {
            let sgp = NumSgp::new(&seq).expect("complete chain implies gcd 1");
            debug_assert_eq!(sgp.frobenius(), f);
            if json {
                CommandResult::ok(render_json(&json!({
                    "command": "frobenius",
                    "ok": true,
                    "result": {
                        "sequence": seq,
                        "frobenius": f,
                        "conductor": sgp.conductor(),
                        "genus": sgp.genus(),
                    },
                })))
            } else {
                CommandResult::ok(format!(
                    "frobenius: {}\nconductor: {}\ngenus: {}",
                    f,
                    sgp.conductor(),
                    sgp.genus()
                ))
            }
        }
    }
}

fn reduce(expr: &str, json: bool) -> CommandResult {
    let f = match parse_poly(expr) {
        Ok(f) => f,
        Err(e) => return CommandResult::usage(e.to_string()),
    };
    let vd = match one_place_semigroup(&f) {
        Ok(vd) => vd,
        Err(r) => return CommandResult::rejected("reduce", json, r.reason_id(), r.to_string()),
    };
    match reduced_equation_of(&vd) {
        Err(ReduceError::Rejected(r)) => {
            CommandResult::rejected("reduce", json, r.reason_id(), r.to_string())
        }
        Err(e @ ReduceError::NotReducible(_)) => {
            CommandResult::rejected("reduce", json, "reduce:not-reducible", e.to_string())
        }
        Ok((out, auto, trace)) => {
            let reduced_seq = one_place_semigroup(&out)
                .expect("reduced equation has one place")
                .value_sequence()
                .to_vec();
            if json {
                CommandResult::ok(render_json(&json!({
                    "command": "reduce",
                    "ok": true,
                    "result": {
                        "input": f.to_string(),
                        "sequence": vd.value_sequence(),
                        "reduced": out.to_string(),
                        "reduced_sequence": reduced_seq,
                        "rdeg": rdeg(&vd),
                        "total_degree": out.total_degree().unwrap_or(0),
                        "sigma_x": auto.image_x.to_string(),
                        "sigma_y": auto.image_y.to_string(),
                        "inverse_x": auto.inverse_x.to_string(),
                        "inverse_y": auto.inverse_y.to_string(),
                        "scale": trace.scale.to_string(),
                    },
                })))
            } else {
                CommandResult::ok(format!(
                    "reduced: {}\nsequence: {}\nreduced-sequence: {}\nrdeg: {}\ntotal-degree: {}\nsigma(x): {}\nsigma(y): {}\ninverse(x): {}\ninverse(y): {}\nscale: {}",
                    out,
                    seq_str(vd.value_sequence()),
                    seq_str(&reduced_seq),
                    rdeg(&vd),
                    out.total_degree().unwrap_or(0),
                    auto.image_x,
                    auto.image_y,
                    auto.inverse_x,
                    auto.inverse_y,
                    trace.scale,
                ))
            }
        }
    }
}

fn implicitize_cmd(xt: &str, yt: &str, json: bool) -> CommandResult {
    let x = match parse_tpoly(xt) {
        Ok(p) => p,
        Err(e) => return CommandResult::usage(e.to_string()),
    };
    let y = match parse_tpoly(yt) {
        Ok(p) => p,
        Err(e) => return CommandResult::usage(e.to_string()),
    };
    let result = Parametrization::new(x, y).and_then(|p| implicitize(&p));
    match result {
        Err(e) => CommandResult::rejected("implicitize", json, param_reason_id(&e), e.to_string()),
        Ok(f) => {
            if json {
                CommandResult::ok(render_json(&json!({
                    "command": "implicitize",
                    "ok": true,
                    "result": {
                        "xt": xt.trim(),
                        "yt": yt.trim(),
                        "curve": f.to_string(),
                    },
                })))
            } else {
                CommandResult::ok(f.to_string())
            }
        }
    }
}

fn table(f_max: i64) -> CommandResult {
    if f_max < 1 {
        return CommandResult::usage("table bound must be at least 1".into());
    }
    let mut out = String::from("F,n_delta,n_semigroups");
    for (f, ndelta, nsgp) in count_table(f_max) {
        out.push_str(&format!("\n{f},{ndelta},{nsgp}"));
    }
    CommandResult::ok(out)
}

fn delta_reason_id(r: &DeltaReason) -> &'static str {
    match r {
        DeltaReason::NotCoprime => "delta:not-coprime",
        DeltaReason::NotFree => "delta:not-free",
        DeltaReason::ProductInequality { .. } => "delta:product-inequality",
        DeltaReason::ChainCondition { .. } => "delta:chain-condition",
    }
}

fn semigroup_reason_id(e: &SemigroupError) -> &'static str {
    match e {
        SemigroupError::BadGenerators => "semigroup:bad-generators",
        SemigroupError::NotNumerical => "semigroup:not-numerical",
        SemigroupError::IncompleteChain => "semigroup:incomplete-chain",
        SemigroupError::NotFree => "semigroup:not-free",
    }
}

fn param_reason_id(e: &ParamError) -> &'static str {
    match e {
        ParamError::ConstantCoordinate => "param:constant-coordinate",
        ParamError::EqualDegrees => "param:equal-degrees",
        ParamError::NotFaithful => "param:not-faithful",
        ParamError::Degenerate => "param:degenerate",
        ParamError::OnCurve => "param:on-curve",
        ParamError::Rejected(r) => r.reason_id(),
    }
}
