use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use syndromelab_core::model::{
    generate_bb_code_capacity, generate_planted_pairs, generate_random_model, BbCheckSide,
    Monomial, PlantedPairSpec, RandomModelSpec, DEFAULT_PRIOR,
};

use crate::error::{LabError, LabResult};
use crate::io::{save_model, ModelFileError};

#[derive(Debug, Args)]
pub struct GenModelArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Model file to write.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Seeded random sparse model.
    Random {
        #[arg(long)]
        checks: usize,
        #[arg(long)]
        faults: usize,
        #[arg(long)]
        max_col_wt: usize,
        #[arg(long)]
        max_row_wt: usize,
        #[arg(long, default_value_t = 0)]
        observables: usize,
        #[arg(long, default_value_t = DEFAULT_PRIOR)]
        prior: f64,
    },
    /// Code-capacity model of a bivariate-bicycle code. Terms are `i,j`
    /// exponent pairs of `x^i y^j`, separated by spaces.
    Bb {
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// The [[144,12,12]] gross code: l=12, m=6, A = x^3 + y + y^2,
        /// B = y^3 + x + x^2.
        #[arg(long)]
        gross: bool,
        /// Which checks form the model: `x` detects Z errors, `z` detects
        /// X errors.
        #[arg(long, value_enum)]
        side: Side,
    },
    /// Model with check pairs planted to share a given number of columns.
    Planted {
        #[arg(long)]
        pairs: usize,
        #[arg(long, default_value_t = 8)]
        shared: usize,
        #[arg(long)]
        pool: usize,
        #[arg(long)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        filler: usize,
        #[arg(long, default_value_t = DEFAULT_PRIOR)]
        prior: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Side {
    X,
    Z,
}

fn parse_terms(s: &str) -> LabResult<Vec<Monomial>> {
    s.split_whitespace()
        .map(|t| {
            let (i, j) = t
                .split_once(',')
                .ok_or_else(|| LabError::usage(format!("term {t:?} is not i,j")))?;
            let p = |v: &str| {
                v.parse::<u32>()
                    .map_err(|e| LabError::usage(format!("term {t:?}: {e}")))
            };
            Ok(Monomial::new(p(i)?, p(j)?))
        })
        .collect()
}

pub fn run(args: &GenModelArgs) -> LabResult<()> {
    let out = args
        .out
        .as_ref()
        .ok_or_else(|| LabError::usage("gen-model needs --out"))?;
    let seed = || {
        args.seed
            .ok_or_else(|| LabError::usage("this generator needs --seed"))
    };
    let model = match &args.kind {
        GenKind::Random {
            checks,
            faults,
            max_col_wt,
            max_row_wt,
            observables,
            prior,
        } => {
            let spec = RandomModelSpec {
                n_observables: *observables,
                prior: *prior,
                ..RandomModelSpec::new(*checks, *faults, *max_col_wt, *max_row_wt, seed()?)
            };
            generate_random_model(&spec)
        }
        GenKind::Bb {
            l,
            m,
            a,
            b,
            gross,
            side,
        } => {
            let (l, m, a, b) = if *gross {
                (
                    12,
                    6,
                    vec![
                        Monomial::new(3, 0),
                        Monomial::new(0, 1),
                        Monomial::new(0, 2),
                    ],
                    vec![
                        Monomial::new(0, 3),
                        Monomial::new(1, 0),
                        Monomial::new(2, 0),
                    ],
                )
            } else {
                let need = |v: &Option<String>, name: &str| {
                    v.as_deref()
                        .ok_or_else(|| {
                            LabError::usage(format!("--{name} required without --gross"))
                        })
                        .and_then(parse_terms)
                };
                let l = l.ok_or_else(|| LabError::usage("--l required without --gross"))?;
                let m = m.ok_or_else(|| LabError::usage("--m required without --gross"))?;
                (l, m, need(a, "a")?, need(b, "b")?)
            };
            let side = match side {
                Side::X => BbCheckSide::XChecks,
                Side::Z => BbCheckSide::ZChecks,
            };
            generate_bb_code_capacity(l, m, &a, &b, side)
        }
        GenKind::Planted {
            pairs,
            shared,
            pool,
            extra,
            filler,
            prior,
        } => {
            let spec = PlantedPairSpec {
                n_pairs: *pairs,
                shared: *shared,
                pool: *pool,
                extra: *extra,
                filler: *filler,
                prior: *prior,
                seed: seed()?,
            };
            generate_planted_pairs(&spec)
        }
    }
    .map_err(LabError::data)?;
    save_model(&model, out).map_err(|e| match e {
        ModelFileError::Io { .. } => LabError::internal(e),
        _ => LabError::data(e),
    })?;
    println!(
        "checks {} faults {} observables {} groups {}",
        model.n_checks(),
        model.n_faults(),
        model.n_observables(),
        model.n_groups()
    );
    Ok(())
}
