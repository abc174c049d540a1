//! Experiment rows, closed-form predictions and the CSV report.

use std::io::Write;

use cptagg_core::{
    algorithm1, exact_union_majority, trivial_best_input, FamilySpec, Limits,
};
use num_integer::binomial;
use num_rational::Ratio;
use rayon::prelude::*;

/// Version written in the leading comment line of every report.
pub const CSV_SCHEMA: u32 = 1;

pub const CSV_COLUMNS: [&str; 13] = [
    "family",
    "n",
    "k",
    "t",
    "f_opt",
    "f_trivial",
    "f_alg1",
    "ratio_trivial_num",
    "ratio_trivial_den",
    "ratio_alg1_num",
    "ratio_alg1_den",
    "formula_opt",
    "formula_input",
];

/// Optimum for `t` symmetric CPTs with pairwise disjoint parents over `n` attributes.
///
/// With `c = ceil(t/2)` it is `t 2^(n-2) - 2^(n-t-1) c C(2c-1, c)` for odd `t`
/// and `t 2^(n-2) - 2^(n-t-1) c C(2c, c)` for even `t`. Needs `n >= t + 1`.
pub fn symmetric_optimum(n: usize, t: usize) -> Option<u64> {
    if t == 0 || n < t + 1 || n < 2 {
        return None;
    }
    let c = t.div_ceil(2) as u64;
    let central = if t % 2 == 1 { binomial(2 * c - 1, c) } else { binomial(2 * c, c) };
    let base = (t as u64) << (n - 2);
    Some(base - (c * central << (n - t - 1)))
}

/// Objective of any input of such an instance, `(t-1) 2^(n-2)`.
pub fn symmetric_input_objective(n: usize, t: usize) -> Option<u64> {
    (t >= 1 && n >= 2).then(|| ((t - 1) as u64) << (n - 2))
}

/// Optimum of the `(k, n)` context family, `2^(n-1) C(n-1, k)`.
pub fn tkn_optimum(n: usize, k: usize) -> u64 {
    binomial((n - 1) as u64, k as u64) << (n - 1)
}

/// Objective of any input of the `(k, n)` context family,
/// `(2^n - 2^(n-k)) * sum_{j=0..k} C(k, j) C(n-k-1, k-j)`.
pub fn tkn_input_objective(n: usize, k: usize) -> u64 {
    let (n64, k64) = (n as u64, k as u64);
    let sum: u64 = (0..=k64)
        .map(|j| {
            let rest = n64 - k64 - 1;
            if k64 - j > rest {
                0
            } else {
                binomial(k64, j) * binomial(rest, k64 - j)
            }
        })
        .sum();
    ((1u64 << n) - (1u64 << (n - k))) * sum
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRow {
    pub family: &'static str,
    pub n: usize,
    pub k: Option<usize>,
    pub t: usize,
    pub f_opt: u64,
    pub f_trivial: u64,
    pub f_alg1: u64,
    pub ratio_trivial: Ratio<u64>,
    pub ratio_alg1: Ratio<u64>,
    pub formula_opt: Option<u64>,
    pub formula_input: Option<u64>,
}

/// `value / opt`, taken as 1 when both are zero.
pub fn ratio(value: u64, opt: u64) -> Ratio<u64> {
    if opt == 0 {
        assert_eq!(value, 0, "a zero optimum forces every objective to zero");
        Ratio::from_integer(1)
    } else {
        Ratio::new(value, opt)
    }
}

pub fn decimal(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl ExperimentRow {
    /// Closed forms agree with the measurements wherever they apply.
    pub fn formulas_hold(&self) -> bool {
        self.formula_opt.is_none_or(|f| f == self.f_opt)
            && self.formula_input.is_none_or(|f| f == self.f_trivial)
    }

    /// `f_opt <= f_alg1 <= f_trivial <= 2 f_opt`, strict at the end when `f_opt > 0`.
    pub fn bounds_hold(&self) -> bool {
        let chain = self.f_opt <= self.f_alg1 && self.f_alg1 <= self.f_trivial;
        let two = if self.f_opt > 0 {
            self.f_trivial < 2 * self.f_opt
        } else {
            self.f_trivial == 0
        };
        chain && two
    }

    pub fn csv_record(&self) -> [String; 13] {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.family.to_owned(),
            self.n.to_string(),
            opt(self.k.map(|k| k as u64)),
            self.t.to_string(),
            self.f_opt.to_string(),
            self.f_trivial.to_string(),
            self.f_alg1.to_string(),
            self.ratio_trivial.numer().to_string(),
            self.ratio_trivial.denom().to_string(),
            self.ratio_alg1.numer().to_string(),
            self.ratio_alg1.denom().to_string(),
            opt(self.formula_opt),
            opt(self.formula_input),
        ]
    }
}

/// Generates the instance and measures all three objectives.
pub fn run_row(spec: &FamilySpec, limits: &Limits) -> cptagg_core::Result<ExperimentRow> {
    let instance = spec.generate()?;
    let f_opt = exact_union_majority(&instance, limits)?.objective;
    let f_trivial = trivial_best_input(&instance)?.objective;
    let f_alg1 = algorithm1(&instance, limits)?.objective;
    let (k, formula_opt, formula_input) = match *spec {
        FamilySpec::Tkn { n, k } => (Some(k), Some(tkn_optimum(n, k)), Some(tkn_input_objective(n, k))),
        FamilySpec::SymmetricDisjoint { n, t, .. } => {
            (None, symmetric_optimum(n, t), symmetric_input_objective(n, t))
        }
        FamilySpec::CopyParent { n } => {
            (None, symmetric_optimum(n, n - 1), symmetric_input_objective(n, n - 1))
        }
        FamilySpec::Random { .. } => (None, None, None),
    };
    Ok(ExperimentRow {
        family: spec.family_name(),
        n: instance.n(),
        k,
        t: instance.t(),
        f_opt,
        f_trivial,
        f_alg1,
        ratio_trivial: ratio(f_trivial, f_opt),
        ratio_alg1: ratio(f_alg1, f_opt),
        formula_opt,
        formula_input,
    })
}

/// Runs every spec concurrently; rows come back in the order of `specs`.
pub fn run_sweep(specs: &[FamilySpec], limits: &Limits) -> cptagg_core::Result<Vec<ExperimentRow>> {
    specs.par_iter().map(|s| run_row(s, limits)).collect()
}

/// Which instances a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    /// `n` in range, `k` in `max(2, k_min)..=min(n-1, k_max)`.
    Tkn { n_min: usize, n_max: usize, k_min: usize, k_max: usize },
    /// `t` in range, `n` in `max(t+1, n_min)..=n_max`.
    SymmetricDisjoint { t_min: usize, t_max: usize, n_min: usize, n_max: usize, seed: u64 },
    CopyParent { n_min: usize, n_max: usize },
    /// Every `(n, t)` pair, `seeds` consecutive seeds starting at `seed`.
    Random {
        n_min: usize,
        n_max: usize,
        t_min: usize,
        t_max: usize,
        max_parents: usize,
        seed: u64,
        seeds: u64,
    },
}

impl Sweep {
    pub fn specs(&self) -> Vec<FamilySpec> {
        let mut out = Vec::new();
        match *self {
            Sweep::Tkn { n_min, n_max, k_min, k_max } => {
                for n in n_min..=n_max {
                    for k in k_min.max(2)..=k_max.min(n.saturating_sub(1)) {
                        out.push(FamilySpec::Tkn { n, k });
                    }
                }
            }
            Sweep::SymmetricDisjoint { t_min, t_max, n_min, n_max, seed } => {
                for t in t_min..=t_max {
                    for n in n_min.max(t + 1)..=n_max {
                        out.push(FamilySpec::SymmetricDisjoint { n, t, seed });
                    }
                }
            }
            Sweep::CopyParent { n_min, n_max } => {
                out.extend((n_min..=n_max).map(|n| FamilySpec::CopyParent { n }));
            }
            Sweep::Random { n_min, n_max, t_min, t_max, max_parents, seed, seeds } => {
                for n in n_min..=n_max {
                    for t in t_min..=t_max {
                        for s in seed..seed + seeds {
                            out.push(FamilySpec::Random { n, t, max_parents: max_parents.min(n - 1), seed: s });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Writes the schema comment, the fixed header and one record per row.
pub fn write_csv<W: Write>(mut out: W, rows: &[ExperimentRow]) -> std::io::Result<()> {
    writeln!(out, "# schema={CSV_SCHEMA}")?;
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_COLUMNS)?;
    for row in rows {
        writer.write_record(row.csv_record())?;
    }
    writer.flush()
}
