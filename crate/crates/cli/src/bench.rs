use std::time::{Duration, Instant};

use clap::{Args, ValueEnum};
use menon::arithfn::{
    cohen_phi_oracle, jordan, klee_phi, klee_phi_oracle, sieve_build, SieveKind, DEFAULT_SIEVE_MEMORY_BYTES,
};
use menon::factorint::factorize_u64;
use menon::report::Format;
use menon::{Error, SParam, WideNat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Output, Status};

const SPOT_CHECKS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum BenchFn {
    KleePhi,
    Jordan,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long = "fn", value_enum, default_value = "klee_phi")]
    function: BenchFn,
    /// Upper end of the range for the closed form and the sieve.
    #[arg(long, default_value_t = 100_000)]
    limit: u64,
    /// Upper end of the range for the definitional oracle.
    #[arg(long, default_value_t = 1_000)]
    oracle_limit: u64,
    #[arg(long, default_value_t = 2)]
    s: u32,
    /// Repetitions per strategy; the median is reported.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    reps: u32,
}

#[derive(Serialize)]
struct Row {
    strategy: &'static str,
    limit: u64,
    ns_per_op: u64,
}

#[derive(Serialize)]
struct SpotCheck {
    points: usize,
    agree: bool,
}

#[derive(Serialize)]
struct Doc {
    #[serde(rename = "fn")]
    function: &'static str,
    s: u32,
    rows: Vec<Row>,
    spot_check: SpotCheck,
}

fn median_ns_per_op(reps: u32, ops: u64, mut f: impl FnMut() -> Result<(), Error>) -> Result<u64, Error> {
    let mut times = Vec::with_capacity(reps as usize);
    for _ in 0..reps {
        let start = Instant::now();
        f()?;
        times.push(start.elapsed());
    }
    times.sort();
    let mid: Duration = times[times.len() / 2];
    Ok((mid.as_nanos() / ops.max(1) as u128) as u64)
}

pub fn run(args: &BenchArgs, format: Format, budget: u128, seed: u64) -> Output {
    let s = SParam::new(args.s)?;
    if args.limit == 0 {
        return Err(Error::Domain("--limit must be positive".into()));
    }
    let (name, kind) = match args.function {
        BenchFn::KleePhi => ("klee_phi", SieveKind::KleePhi),
        BenchFn::Jordan => ("jordan", SieveKind::Jordan),
    };
    let closed = |n: u64| -> Result<WideNat, Error> {
        let f = factorize_u64(n)?;
        match args.function {
            BenchFn::KleePhi => klee_phi(&f, s),
            BenchFn::Jordan => jordan(&f, s),
        }
    };
    let oracle = |n: u64| match args.function {
        BenchFn::KleePhi => klee_phi_oracle(n, s, budget),
        BenchFn::Jordan => cohen_phi_oracle(n, s, budget),
    };

    let oracle_ns = median_ns_per_op(args.reps, args.oracle_limit, || {
        (1..=args.oracle_limit).try_for_each(|n| oracle(n).map(drop))
    })?;
    let closed_ns =
        median_ns_per_op(args.reps, args.limit, || (1..=args.limit).try_for_each(|n| closed(n).map(drop)))?;
    let mut table = None;
    let sieve_ns = median_ns_per_op(args.reps, args.limit, || {
        table = Some(sieve_build(args.limit, s, kind, DEFAULT_SIEVE_MEMORY_BYTES)?);
        Ok(())
    })?;
    let table = table.ok_or_else(|| Error::Internal("sieve was not built".into()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agree = true;
    for _ in 0..SPOT_CHECKS {
        let n = rng.gen_range(1..=args.limit);
        if table.get(n) != Some(closed(n)?) {
            eprintln!("sieve disagrees with the closed form at n={n}");
            agree = false;
        }
    }

    let rows = vec![
        Row { strategy: "oracle", limit: args.oracle_limit, ns_per_op: oracle_ns },
        Row { strategy: "closed_form", limit: args.limit, ns_per_op: closed_ns },
        Row { strategy: "sieve", limit: args.limit, ns_per_op: sieve_ns },
    ];
    let spot = SpotCheck { points: SPOT_CHECKS, agree };
    let text = match format {
        Format::Table => {
            let mut out = format!("{:<12} {:>10} {:>12}\n", "strategy", "limit", "ns/op");
            for r in &rows {
                out += &format!("{:<12} {:>10} {:>12}\n", r.strategy, r.limit, r.ns_per_op);
            }
            out + &format!("spot check: {} points, agree={}\n", spot.points, spot.agree)
        }
        Format::Json => {
            let doc = Doc { function: name, s: args.s, rows, spot_check: spot };
            serde_json::to_string(&doc).map_err(|e| Error::Internal(e.to_string()))? + "\n"
        }
        Format::Csv => {
            let mut out = String::from("strategy,limit,ns_per_op\n");
            for r in &rows {
                out += &format!("{},{},{}\n", r.strategy, r.limit, r.ns_per_op);
            }
            out
        }
    };
    Ok((text, if agree { Status::Ok } else { Status::Mismatch }))
}
