//! Executes a validated [`RunConfig`].

use qwalk::entanglement::{entropy_sweep, entropy_time_series};
use qwalk::spectral::omega;
use qwalk::walk::evolve_with;
use qwalk::zitter::zb_frequency;
use qwalk::{make_initial_state, SpinorState, UnitsConfig};
use rayon::prelude::*;

use crate::config::{RunConfig, Task};
use crate::output::{emit_csv, Cell};
use crate::CliError;

pub struct Table {
    pub headers: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

/// Computes the table for `task` on the current rayon pool.
pub fn compute(task: &Task) -> Result<Table, CliError> {
    let units = UnitsConfig::default();
    Ok(match task {
        Task::Walk { walk, init, steps, lattice, history } => {
            let state = make_initial_state(init, *lattice)?;
            let mut rows = Vec::new();
            let mut record = |step: usize, s: &SpinorState| {
                for (i, (up, down)) in s.spin_resolved_distribution().into_iter().enumerate() {
                    rows.push(vec![step.into(), lattice.site(i).into(), up.into(), down.into(), (up + down).into()]);
                }
            };
            evolve_with(&state, walk, *steps, |n, s| {
                if *history || n == *steps {
                    record(n, s);
                }
            })?;
            Table { headers: &["step", "x", "p_up", "p_down", "p_total"], rows }
        }
        Task::Spectrum { theta1, theta2, momenta } => {
            let rows = momenta
                .iter()
                .map(|&k| {
                    let w = omega(*theta1, *theta2, k, &units);
                    vec![k.into(), w.into(), (-units.hbar * w).into(), (units.hbar * w).into()]
                })
                .collect();
            Table { headers: &["k", "omega", "energy_plus", "energy_minus"], rows }
        }
        Task::Zitter { theta1, theta2, k } => {
            let n2 = theta2.len();
            let rows = (0..theta1.len() * n2)
                .into_par_iter()
                .map(|idx| {
                    let (t1, t2) = (theta1[idx / n2], theta2[idx % n2]);
                    vec![t1.into(), t2.into(), (*k).into(), zb_frequency(t1, t2, *k, &units).into()]
                })
                .collect();
            Table { headers: &["theta1", "theta2", "k", "Z"], rows }
        }
        Task::Entropy { walk, init, steps } => {
            let series = entropy_time_series(init, walk, *steps)?;
            let rows = series.into_iter().enumerate().map(|(n, s)| vec![n.into(), s.into()]).collect();
            Table { headers: &["step", "S"], rows }
        }
        Task::Sweep { grid, steps } => {
            let result = entropy_sweep(grid, *steps)?;
            let rows = result.rows().map(|(a, b, s)| vec![a.into(), b.into(), s.into()]).collect();
            Table { headers: &["axis1", "axis2", "S"], rows }
        }
    })
}

/// Computes and writes the output of `config`.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let table = match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(format!("cannot start {n} worker threads: {e}")))?
            .install(|| compute(&config.task))?,
        None => compute(&config.task)?,
    };
    emit_csv(table.headers, &table.rows, config.out.as_deref())
}
