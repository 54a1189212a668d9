use clap::{Args, ValueEnum};
use menon::arithfn::{
    cohen_phi_oracle, euler_phi, gcd_s, is_s_free, jordan, klee_phi, klee_phi_oracle, mobius, sigma_k,
    sigma_ks, tau, tau_s, von_sterneck,
};
use menon::factorint::{factorize, is_prime, largest_s_power_part};
use menon::report::Format;
use menon::{Error, SParam, WideNat};
use serde::Serialize;

use crate::{Output, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Function {
    KleePhi,
    KleePhiOracle,
    Phi,
    Jordan,
    CohenPhi,
    VonSterneck,
    Tau,
    TauS,
    /// σ_k, the sum of k-th powers of divisors.
    Sigma,
    SigmaKs,
    Mobius,
    GcdS,
    IsSFree,
    IsPrime,
    LargestSPowerPart,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    function: Function,
    #[arg(long)]
    n: Option<String>,
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Power k for sigma and sigma_ks.
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Arguments of gcd_s, comma-separated.
    #[arg(long, value_delimiter = ',')]
    xs: Option<Vec<String>>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Value {
    Nat(WideNat),
    Int(i8),
    Bool(bool),
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Nat(v) => v.fmt(f),
            Value::Int(v) => v.fmt(f),
            Value::Bool(v) => v.fmt(f),
        }
    }
}

fn small(n: WideNat) -> Result<u64, Error> {
    n.to_u64().ok_or_else(|| Error::Domain(format!("{n} is too large for an enumeration oracle")))
}

struct Inputs {
    n: Option<WideNat>,
    xs: Option<Vec<WideNat>>,
}

fn inputs(args: &EvalArgs) -> Result<Inputs, Error> {
    let n = args.n.as_deref().map(str::parse).transpose()?;
    let xs = match &args.xs {
        Some(xs) => Some(xs.iter().map(|x| x.parse()).collect::<Result<Vec<WideNat>, _>>()?),
        None => None,
    };
    Ok(Inputs { n, xs })
}

fn evaluate(args: &EvalArgs, input: &Inputs, budget: u128) -> Result<Value, Error> {
    use Function::*;
    let s = SParam::new(args.s)?;
    if args.function == GcdS {
        let xs = input.xs.as_ref().ok_or_else(|| Error::Domain("gcd_s needs --xs".into()))?;
        return gcd_s(xs, s).map(Value::Nat);
    }
    let n = input.n.ok_or_else(|| Error::Domain(format!("{:?} needs --n", args.function)))?;
    match args.function {
        IsPrime => return is_prime(n).map(Value::Bool),
        IsSFree => return is_s_free(n, s).map(Value::Bool),
        LargestSPowerPart => return largest_s_power_part(n, args.s).map(Value::Nat),
        KleePhiOracle => return klee_phi_oracle(small(n)?, s, budget).map(Value::Nat),
        CohenPhi => return cohen_phi_oracle(small(n)?, s, budget).map(Value::Nat),
        VonSterneck => return von_sterneck(small(n)?, s, budget).map(Value::Nat),
        _ => {}
    }
    if n.is_zero() {
        return Err(Error::Domain(format!("{:?} is defined for n >= 1", args.function)));
    }
    let f = factorize(n)?;
    Ok(match args.function {
        KleePhi => Value::Nat(klee_phi(&f, s)?),
        Phi => Value::Nat(euler_phi(&f)?),
        Jordan => Value::Nat(jordan(&f, s)?),
        Tau => Value::Nat(tau(&f)),
        TauS => Value::Nat(tau_s(&f, s)),
        Sigma => Value::Nat(sigma_k(&f, args.k)?),
        SigmaKs => Value::Nat(sigma_ks(&f, args.k, s)?),
        Mobius => Value::Int(mobius(&f)),
        _ => unreachable!("handled above"),
    })
}

#[derive(Serialize)]
struct Doc<'a> {
    #[serde(rename = "fn")]
    function: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<WideNat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    xs: Option<&'a [WideNat]>,
    s: u32,
    k: u32,
    value: Value,
}

pub fn run(args: &EvalArgs, format: Format, budget: u128) -> Output {
    let input = inputs(args)?;
    let value = evaluate(args, &input, budget)?;
    let name = args.function.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let text = match format {
        Format::Table => format!("{value}\n"),
        Format::Json => {
            let doc =
                Doc { function: &name, n: input.n, xs: input.xs.as_deref(), s: args.s, k: args.k, value };
            serde_json::to_string(&doc).map_err(|e| Error::Internal(e.to_string()))? + "\n"
        }
        Format::Csv => {
            let n = input.n.map(|n| n.to_string()).unwrap_or_default();
            let xs = input.xs.iter().flatten().map(WideNat::to_string).collect::<Vec<_>>().join(";");
            format!("fn,n,xs,s,k,value\n{name},{n},{xs},{},{},{value}\n", args.s, args.k)
        }
    };
    Ok((text, Status::Ok))
}
