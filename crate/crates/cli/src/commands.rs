//! One function per subcommand, each producing a [`Table`].

use monopath_core::asymptotics::{
    critical_p, exploration_drift, f_of_b, gumbel_cdf, limit_prob, limit_prob_tanh,
    rest_term_limit, solve_p_from_b, GUMBEL_MEAN,
};
use monopath_core::exact::{default_truncation_eps, reach_prob_dp};
use monopath_core::gap::{
    exploration_statistic, sample_path_count, sample_rest_term, simulate_reach,
};
use monopath_core::stats::{
    empirical_pmf, geometric_pmf, ks_distance, summarize, tv_distance_discrete, EmpiricalSample,
};
use num_traits::ToPrimitive;

use crate::runner::Runner;
use crate::spec::{Command, ExperimentSpec, WindowGrid, QUAD_TOL};
use crate::{CliError, Table, Value};

/// Runs the command named by `spec`.
pub fn run(spec: &ExperimentSpec) -> Result<Table, CliError> {
    let runner = Runner::new(spec.threads, spec.master_seed)?;
    Ok(match spec.command {
        Command::Exact => cmd_exact(spec),
        Command::Simulate => cmd_simulate(spec, &runner),
        Command::Limit => cmd_limit(spec),
        Command::Sweep => cmd_sweep(spec, &runner),
        Command::Gumbel => cmd_gumbel(spec, &runner),
        Command::Paths => cmd_paths(spec, &runner),
        Command::Rest => cmd_rest(spec, &runner),
    })
}

fn indicator(hit: bool) -> f64 {
    if hit {
        1.0
    } else {
        0.0
    }
}

/// Rows `(n, p, prob_exact, truncation_mass)`.
pub fn cmd_exact(spec: &ExperimentSpec) -> Table {
    let mut table = Table::new(&["n", "p", "prob_exact", "truncation_mass"]);
    for &n in &spec.n {
        for &p in &spec.p {
            let eps = spec
                .truncation_eps
                .unwrap_or_else(|| default_truncation_eps(n));
            match reach_prob_dp(n, p, eps) {
                Ok(r) => table.push(vec![
                    n.into(),
                    p.into(),
                    r.probability.into(),
                    r.truncation_mass.into(),
                ]),
                Err(e) => table.push_error(vec![n.into(), p.into()], &e),
            }
        }
    }
    table
}

/// Rows `(n, p, prob_mc, std_error, trials)`.
pub fn cmd_simulate(spec: &ExperimentSpec, runner: &Runner) -> Table {
    let mut table = Table::new(&["n", "p", "prob_mc", "std_error", "trials"]);
    for &n in &spec.n {
        for &p in &spec.p {
            match runner.estimate(spec.trials, |s| simulate_reach(n, p, s).map(indicator)) {
                Ok(e) => table.push(vec![
                    n.into(),
                    p.into(),
                    e.mean.into(),
                    e.std_error.into(),
                    e.trials.into(),
                ]),
                Err(e) => table.push_error(vec![n.into(), p.into()], &e),
            }
        }
    }
    table
}

/// Rows `(x, limit_prob, limit_prob_tanh, f_b)` with `b = e^x`.
pub fn cmd_limit(spec: &ExperimentSpec) -> Table {
    let mut table = Table::new(&["x", "limit_prob", "limit_prob_tanh", "f_b"]);
    let xs: Vec<f64> = match &spec.window {
        WindowGrid::X(xs) => xs.clone(),
        WindowGrid::B(bs) => bs.iter().map(|b| b.ln()).collect(),
    };
    for x in xs {
        let row = limit_prob_tanh(x, QUAD_TOL).and_then(|t| Ok((t, f_of_b(x.exp())?)));
        match row {
            Ok((tanh, f_b)) => table.push(vec![
                x.into(),
                limit_prob(x).into(),
                tanh.into(),
                f_b.into(),
            ]),
            Err(e) => table.push_error(vec![x.into(), limit_prob(x).into()], &e),
        }
    }
    table
}

/// Rows `(n, x, p, prob_mc, std_error, limit_prob)`: the phase-transition
/// curve. With a `b` grid, `p` solves `n = log(b/p)/p` and `x = log b`.
pub fn cmd_sweep(spec: &ExperimentSpec, runner: &Runner) -> Table {
    let mut table = Table::new(&["n", "x", "p", "prob_mc", "std_error", "limit_prob"]);
    for &n in &spec.n {
        let points: Vec<(f64, Result<f64, monopath_core::Error>, f64)> = match &spec.window {
            WindowGrid::X(xs) => xs
                .iter()
                .map(|&x| (x, critical_p(n, x).map(|s| s.p), limit_prob(x)))
                .collect(),
            WindowGrid::B(bs) => bs
                .iter()
                .map(|&b| (b.ln(), solve_p_from_b(n, b), limit_prob(b.ln())))
                .collect(),
        };
        for (x, p, limit) in points {
            let row = p.and_then(|p| {
                runner
                    .estimate(spec.trials, |s| simulate_reach(n, p, s).map(indicator))
                    .map(|e| (p, e))
            });
            match row {
                Ok((p, e)) => table.push(vec![
                    n.into(),
                    x.into(),
                    p.into(),
                    e.mean.into(),
                    e.std_error.into(),
                    limit.into(),
                ]),
                Err(e) => table.push_error(vec![n.into(), x.into()], &e),
            }
        }
    }
    table
}

/// Rows `(a, p, ks_distance, mean, se, target_mean)` for the exploration
/// statistic against the Gumbel law shifted by `log(e^a - 1)`.
pub fn cmd_gumbel(spec: &ExperimentSpec, runner: &Runner) -> Table {
    let mut table = Table::new(&["a", "p", "ks_distance", "mean", "se", "target_mean"]);
    for &a in &spec.a {
        for &p in &spec.p {
            let drift = exploration_drift(a);
            let row = runner
                .run(spec.trials, |s| exploration_statistic(a, p, s))
                .and_then(|values| {
                    let summary = summarize(&values)?;
                    let shifted = values.into_iter().map(|z| z - drift).collect();
                    let ks = ks_distance(&EmpiricalSample::new(shifted)?, gumbel_cdf);
                    Ok((ks, summary))
                });
            match row {
                Ok((ks, sum)) => table.push(vec![
                    a.into(),
                    p.into(),
                    ks.into(),
                    sum.mean.into(),
                    sum.std_error.into(),
                    (GUMBEL_MEAN + drift).into(),
                ]),
                Err(e) => table.push_error(vec![a.into(), p.into()], &e),
            }
        }
    }
    table
}

/// Rows `(a, p, k, empirical_pmf, geometric_pmf, tv_distance)`, one per
/// `k` from 1 to the largest observed path count.
pub fn cmd_paths(spec: &ExperimentSpec, runner: &Runner) -> Table {
    let mut table = Table::new(&[
        "a",
        "p",
        "k",
        "empirical_pmf",
        "geometric_pmf",
        "tv_distance",
    ]);
    for &a in &spec.a {
        for &p in &spec.p {
            let success = (-a).exp();
            let row = runner
                .run(spec.trials, |s| {
                    sample_path_count(a, p, s).map(|c| c.to_u64().unwrap_or(u64::MAX))
                })
                .and_then(|counts| {
                    let cap = counts.iter().copied().max().unwrap_or(1);
                    let pmf = empirical_pmf(counts);
                    let tv = tv_distance_discrete(&pmf, |k| geometric_pmf(k, success), cap)?;
                    Ok((pmf, cap, tv))
                });
            match row {
                Ok((pmf, cap, tv)) => {
                    for k in 1..=cap {
                        table.push(vec![
                            a.into(),
                            p.into(),
                            k.into(),
                            pmf.get(&k).copied().unwrap_or(0.0).into(),
                            geometric_pmf(k, success).into(),
                            tv.into(),
                        ]);
                    }
                }
                Err(e) => table.push_error(vec![a.into(), p.into()], &e),
            }
        }
    }
    table
}

/// Rows `(a, p, mean_r, se, target, var_r)` for the coupling rest term.
pub fn cmd_rest(spec: &ExperimentSpec, runner: &Runner) -> Table {
    let mut table = Table::new(&["a", "p", "mean_r", "se", "target", "var_r"]);
    for &a in &spec.a {
        for &p in &spec.p {
            let row = runner
                .run(spec.trials, |s| sample_rest_term(a, p, s))
                .and_then(|values| summarize(&values));
            match row {
                Ok(sum) => table.push(vec![
                    a.into(),
                    p.into(),
                    sum.mean.into(),
                    sum.std_error.into(),
                    rest_term_limit(a).into(),
                    sum.variance.into(),
                ]),
                Err(e) => table.push_error(vec![a.into(), p.into()], &e),
            }
        }
    }
    table
}

impl Table {
    /// Float cell at (`row`, `column`), if present.
    pub fn float(&self, row: usize, column: &str) -> Option<f64> {
        match self.rows.get(row)?.get(self.column(column)?)? {
            Value::Float(v) => Some(*v),
            Value::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    /// Error text of `row`, empty on success.
    pub fn error_text(&self, row: usize) -> &str {
        match self.rows[row].last() {
            Some(Value::Text(t)) => t,
            _ => "",
        }
    }
}
