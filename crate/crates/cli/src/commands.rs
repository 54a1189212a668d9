use std::fmt::Write as _;

use menon::factorint::factorize;
use menon::grouptotient::{klee_phi_group, order_census, tarnauceanu_phi, AbelianGroup};
use menon::identities::{verify as verify_one, EquivalenceRoute, IdentityInstance, MainParams, VerifyConfig};
use menon::par::Exec;
use menon::report::{render_report, render_sweep, Format};
use menon::sweep::{self, IdentityKind, SweepSpec};
use menon::{Error, SParam, WideNat};
use serde::Serialize;

use crate::{Global, Output, Status, SweepArgs, VerifyArgs};

fn config(g: &Global, exec: Exec) -> VerifyConfig {
    VerifyConfig { budget: g.budget, exec, falsify_rhs: g.falsify_rhs }
}

fn csv_line(cells: &[String]) -> String {
    cells.join(",") + "\n"
}

fn json<T: Serialize>(v: &T) -> Result<String, Error> {
    serde_json::to_string(v).map(|t| t + "\n").map_err(|e| Error::Internal(e.to_string()))
}

pub fn factor(n: &str, format: Format) -> Output {
    let n: WideNat = n.parse()?;
    if n.is_zero() {
        return Err(Error::Domain("0 has no factorization".into()));
    }
    let f = factorize(n)?;
    let text = match format {
        Format::Table => {
            let parts: Vec<String> = f
                .factors()
                .iter()
                .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
                .collect();
            let rhs = if parts.is_empty() { "1".to_string() } else { parts.join(" * ") };
            format!("{n} = {rhs}\n")
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Factor {
                p: WideNat,
                e: u32,
            }
            #[derive(Serialize)]
            struct Doc {
                n: WideNat,
                factors: Vec<Factor>,
            }
            let factors = f.factors().iter().map(|&(p, e)| Factor { p, e }).collect();
            json(&Doc { n, factors })?
        }
        Format::Csv => {
            let mut out = csv_line(&["p".into(), "e".into()]);
            for (p, e) in f.factors() {
                out += &csv_line(&[p.to_string(), e.to_string()]);
            }
            out
        }
    };
    Ok((text, Status::Ok))
}

fn instance(args: &VerifyArgs) -> Result<IdentityInstance, Error> {
    let need = |v: Option<u64>, name: &str| {
        v.ok_or_else(|| Error::Domain(format!("{} needs --{name}", args.identity.name())))
    };
    let s = SParam::new(args.s)?;
    let (k, r) = (args.k, args.r);
    let a = match &args.a {
        Some(a) if a.len() != k as usize => {
            return Err(Error::Domain(format!("--a has {} entries but k = {k}", a.len())));
        }
        Some(a) => a.clone(),
        None => vec![1; k as usize],
    };
    Ok(match args.identity {
        IdentityKind::Menon => IdentityInstance::Menon { n: need(args.n, "n")? },
        IdentityKind::MenonSury => IdentityInstance::MenonSury { n: need(args.n, "n")?, k },
        IdentityKind::LiKim => IdentityInstance::LiKim { n: need(args.n, "n")?, k, r, a },
        IdentityKind::Main => IdentityInstance::Main(MainParams { n: need(args.n, "n")?, s, k, r, a }),
        IdentityKind::PrimePower => IdentityInstance::PrimePower { p: need(args.p, "p")?, t: args.t, r, k },
        IdentityKind::RhsEquivalence => {
            let via = match args.via.replace('_', "-").as_str() {
                "divisor-sum" => EquivalenceRoute::DivisorSum,
                "main-at-one" => EquivalenceRoute::MainAtOne,
                other => return Err(Error::Domain(format!("unknown route {other:?}"))),
            };
            IdentityInstance::RhsEquivalence { n: need(args.n, "n")?, k, r, via }
        }
        IdentityKind::ShiftedLiKim => IdentityInstance::ShiftedLiKim { n: need(args.n, "n")?, k, r, a },
        IdentityKind::UnitsOnly => IdentityInstance::UnitsOnly { n: need(args.n, "n")?, s, k, a },
        IdentityKind::SingleUnit => IdentityInstance::SingleUnit { n: need(args.n, "n")?, s },
        IdentityKind::ProgressionCount => IdentityInstance::ProgressionCount {
            n: need(args.n, "n")?,
            d: need(args.d, "d")?,
            s,
            r_shift: args.shift,
        },
        IdentityKind::GroupProduct => {
            let factors = match &args.factors {
                Some(f) => f.clone(),
                None => vec![need(args.n, "n")?, need(args.m, "m")?],
            };
            IdentityInstance::GroupProduct { factors, s }
        }
    })
}

pub fn verify(args: &VerifyArgs, g: &Global) -> Output {
    let inst = instance(args)?;
    let report = verify_one(&inst, &config(g, Exec::Sequential));
    let status = match (&report.failure, report.matched) {
        (_, true) => Status::Ok,
        (None, false) => Status::Mismatch,
        (Some(f), false) => {
            use menon::identities::FailureKind::*;
            match f.kind {
                Domain | Unsupported => Status::Usage,
                Overflow | BoundExceeded | ResourceLimit => Status::Aborted,
                Internal => Status::Mismatch,
            }
        }
    };
    if let Some(f) = &report.failure {
        eprintln!("{inst}: {}", f.message);
    }
    Ok((render_report(&report, g.format, g.timings)?, status))
}

pub fn sweep(args: &SweepArgs, g: &Global) -> Output {
    let spec = SweepSpec {
        kind: args.identity,
        n: args.n,
        s: args.s,
        k: args.k,
        r: args.r,
        p: args.p,
        t: args.t,
        m: args.m,
        max_modulus: args.max_modulus,
        random_shifts: args.random_shifts,
        seed: g.seed,
    };
    let instances = sweep::instances(&spec)?;
    let outcome = sweep::run(&instances, &config(g, Exec::Sequential), g.workers())?;
    let summary = outcome.summary;
    if g.format != Format::Table {
        eprintln!("{}", menon::report::render_summary(&summary));
    }
    let status = if summary.mismatched > 0 { Status::Mismatch } else { Status::Ok };
    Ok((render_sweep(&outcome, g.format, g.timings, args.all)?, status))
}

pub fn group(factors: &[u64], s: u32, format: Format) -> Output {
    let s = SParam::new(s)?;
    let grp = AbelianGroup::new(factors.to_vec())?;
    let census = order_census(&grp)?;
    let tarnauceanu = tarnauceanu_phi(&grp)?;
    let klee = klee_phi_group(&grp, s)?;
    let census_text = census.iter().map(|(o, c)| format!("{o}:{c}")).collect::<Vec<_>>().join(" ");
    let factors_text = factors.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let text = match format {
        Format::Table => {
            let mut out = String::new();
            let name = factors.iter().map(|m| format!("Z_{m}")).collect::<Vec<_>>().join(" x ");
            let _ = writeln!(out, "group        {name}");
            let _ = writeln!(out, "order        {}", grp.order());
            let _ = writeln!(out, "exponent     {}", grp.exponent());
            let _ = writeln!(out, "census       {census_text}");
            let _ = writeln!(out, "tarnauceanu  {tarnauceanu}");
            let _ = writeln!(out, "klee_phi_s   {klee} (s={})", s.get());
            out
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                factors: Vec<u64>,
                s: SParam,
                order: WideNat,
                exponent: WideNat,
                census: Vec<(u64, WideNat)>,
                tarnauceanu_phi: WideNat,
                klee_phi: WideNat,
            }
            json(&Doc {
                factors: factors.to_vec(),
                s,
                order: grp.order(),
                exponent: grp.exponent(),
                census: census.into_iter().collect(),
                tarnauceanu_phi: tarnauceanu,
                klee_phi: klee,
            })?
        }
        Format::Csv => {
            let header = ["factors", "s", "order", "exponent", "census", "tarnauceanu_phi", "klee_phi"];
            csv_line(&header.map(String::from))
                + &csv_line(&[
                    format!("\"{factors_text}\""),
                    s.get().to_string(),
                    grp.order().to_string(),
                    grp.exponent().to_string(),
                    census_text,
                    tarnauceanu.to_string(),
                    klee.to_string(),
                ])
        }
    };
    Ok((text, Status::Ok))
}
