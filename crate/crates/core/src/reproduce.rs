//! Reference tables and the harness that recomputes them.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use crate::complex::{assemble_complex, build_layers};
use crate::enumerate::{enumerate_perfect_forms, enumerate_rank_n, enumerate_rank_plus, rank_n, ClassStore, RankNOptions};
use crate::equiv::{are_equivalent, automorphism_group};
use crate::error::{Error, Result};
use crate::forms::VectorConfiguration;
use crate::homology::{homology_of_complex, torsion_prime_bound};
use crate::io::parse_records;
use crate::realize::test_realizability;

/// Perfect form counts for `n = 1, …, 8`.
pub const PERFECT_FORMS: [usize; 8] = [1, 1, 1, 2, 3, 7, 33, 10916];

/// Classes with `s = n` for `n = 1, …, 7`.
pub const MINIMAL_CLASSES: [usize; 7] = [1, 1, 1, 1, 2, 3, 6];

/// Index histogram of the `s = n = 7` classes.
pub const MINIMAL_CLASSES_7_BY_INDEX: [(u64, usize); 4] = [(1, 1), (2, 3), (3, 1), (4, 1)];

/// Orbit counts by lattice dimension `n`, starting at rank `n`.
pub fn orbit_counts(n: usize) -> &'static [usize] {
    match n {
        4 => &[1, 3, 4, 4, 2, 2, 2],
        5 => &[2, 5, 10, 16, 23, 25, 23, 16],
        6 => &[3, 10, 28, 71, 162, 329, 589],
        7 => &[6, 28, 115, 467, 1882, 7375],
        8 => &[13, 106, 783, 6167, 50645],
        9 => &[44, 759, 13437],
        10 => &[283, 16062],
        _ => &[],
    }
}

/// `(k, free rank)` of the groups nonzero modulo `S_{N+1}`, with `k` the
/// rank minus `N`.
pub fn homology_reference(n: usize) -> Option<&'static [(i64, usize)]> {
    match n {
        3 | 4 => Some(&[(3, 1)]),
        5 => Some(&[(5, 1)]),
        _ => None,
    }
}

/// The 13 classes of rank 8 in dimension 8.
pub fn sigma8_representatives() -> Vec<VectorConfiguration> {
    parse_records(include_str!("../data/sigma8.txt")).expect("embedded records parse").configs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Target {
    Table1,
    Table2,
    Table3,
    Table4,
    Sigma8,
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "table1" => Target::Table1,
            "table2" => Target::Table2,
            "table3" => Target::Table3,
            "table4" => Target::Table4,
            "sigma8" => Target::Sigma8,
            _ => return Err(Error::Invalid(format!("unknown target `{s}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Budget,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Budget => "BUDGET",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub label: String,
    pub expected: String,
    pub got: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReproReport {
    pub target: Target,
    pub entries: Vec<Entry>,
}

impl ReproReport {
    pub fn status(&self) -> Status {
        if self.entries.iter().any(|e| e.status == Status::Fail) {
            Status::Fail
        } else if self.entries.iter().any(|e| e.status == Status::Budget) {
            Status::Budget
        } else {
            Status::Pass
        }
    }
}

impl fmt::Display for ReproReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{} {}: expected {} got {}", e.status, e.label, e.expected, e.got)?;
        }
        write!(f, "{:?}: {}", self.target, self.status())
    }
}

#[derive(Clone, Debug)]
pub struct ReproOptions {
    /// Largest dimension for perfect forms.
    pub table1_max: usize,
    pub table2_max: usize,
    /// `(n, highest rank)` per row.
    pub table3_rows: Vec<(usize, usize)>,
    pub table4_dims: Vec<usize>,
    /// Wall-clock budget; entries not started in time are reported as
    /// exhausted.
    pub budget: Option<Duration>,
}

impl Default for ReproOptions {
    fn default() -> Self {
        ReproOptions {
            table1_max: 6,
            table2_max: 7,
            table3_rows: vec![(4, 10), (5, 12), (6, 8), (7, 8)],
            table4_dims: vec![3, 4],
            budget: None,
        }
    }
}

struct Harness {
    start: Instant,
    budget: Option<Duration>,
    entries: Vec<Entry>,
}

impl Harness {
    fn out_of_time(&self) -> bool {
        self.budget.is_some_and(|b| self.start.elapsed() > b)
    }

    fn push(&mut self, label: String, expected: String, got: Result<String>) {
        let (got, status) = match got {
            Ok(g) => {
                let s = if g == expected { Status::Pass } else { Status::Fail };
                (g, s)
            }
            Err(Error::BudgetExhausted { .. }) => ("budget exhausted".into(), Status::Budget),
            Err(e) => (format!("error: {e}"), Status::Fail),
        };
        self.entries.push(Entry { label, expected, got, status });
    }

    fn skip(&mut self, label: String, expected: String) {
        self.entries.push(Entry { label, expected, got: "not started".into(), status: Status::Budget });
    }

    /// Runs `f` unless the budget is spent.
    fn run(&mut self, label: String, expected: String, f: impl FnOnce() -> Result<String>) {
        if self.out_of_time() {
            self.skip(label, expected);
        } else {
            let got = f();
            self.push(label, expected, got);
        }
    }
}

pub fn reproduce(target: Target, opts: &ReproOptions) -> Result<ReproReport> {
    let mut h = Harness { start: Instant::now(), budget: opts.budget, entries: Vec::new() };
    match target {
        Target::Table1 => {
            for n in 1..=opts.table1_max.min(PERFECT_FORMS.len()) {
                h.run(format!("table1 n={n}"), PERFECT_FORMS[n - 1].to_string(), || {
                    Ok(enumerate_perfect_forms(n)?.len().to_string())
                });
            }
        }
        Target::Table2 => {
            for n in 1..=opts.table2_max.min(MINIMAL_CLASSES.len()) {
                let mut hist = None;
                h.run(format!("table2 n={n}"), MINIMAL_CLASSES[n - 1].to_string(), || {
                    let classes = enumerate_rank_n(n, &RankNOptions::default())?;
                    hist = Some(rank_n::index_histogram(&classes));
                    Ok(classes.len().to_string())
                });
                if n == 7 {
                    let expected: BTreeMap<u64, usize> = MINIMAL_CLASSES_7_BY_INDEX.into_iter().collect();
                    let got = hist.map(|m| format!("{m:?}")).ok_or(Error::BudgetExhausted { iterations: 0, pool: 0 });
                    h.push("table2 n=7 by index".into(), format!("{expected:?}"), got);
                }
            }
        }
        Target::Table3 => {
            for &(n, top) in &opts.table3_rows {
                let expected = orbit_counts(n);
                let top = top.min(n + expected.len() - 1);
                let mut layer: Option<Vec<VectorConfiguration>> = None;
                for r in n..=top {
                    let exp = expected[r - n].to_string();
                    let label = format!("table3 n={n} r={r}");
                    if h.out_of_time() || (r > n && layer.is_none()) {
                        h.skip(label, exp);
                        continue;
                    }
                    let next = if r == n {
                        enumerate_rank_n(n, &RankNOptions::default()).map(|c| c.into_iter().map(|c| c.config).collect())
                    } else {
                        enumerate_rank_plus(n, r, layer.as_deref().unwrap_or_default(), &Default::default())
                    };
                    let got = next.as_ref().map(|l| l.len().to_string()).map_err(clone_err);
                    layer = next.ok();
                    h.push(label, exp, got);
                }
            }
        }
        Target::Table4 => {
            for &n in &opts.table4_dims {
                let Some(reference) = homology_reference(n) else {
                    return Err(Error::Invalid(format!("no reference homology for N = {n}")));
                };
                h.run(format!("table4 N={n}"), format!("{reference:?}"), || {
                    let layers = build_layers(n, n * (n + 1) / 2)?;
                    let c = assemble_complex(n, &layers)?;
                    let rep = homology_of_complex(&c, torsion_prime_bound(n))?;
                    let got: Vec<(i64, usize)> = rep
                        .nonzero_mod_sb()
                        .iter()
                        .map(|r| (r.table_k(n), if r.filtered_torsion.is_empty() { r.free_rank } else { usize::MAX }))
                        .collect();
                    Ok(format!("{got:?}"))
                });
            }
        }
        Target::Sigma8 => {
            let reps = sigma8_representatives();
            h.push("sigma8 count".into(), "13".into(), Ok(reps.len().to_string()));
            h.push("sigma8 s".into(), "8".repeat(13), Ok(reps.iter().map(|v| v.len().to_string()).collect()));
            h.run("sigma8 realizable".into(), "13".into(), || {
                let mut ok = 0;
                for v in &reps {
                    ok += usize::from(test_realizability(v)?.verdict.is_realizable());
                }
                Ok(ok.to_string())
            });
            h.run("sigma8 inequivalent pairs".into(), "78".into(), || {
                let mut none = 0;
                for i in 0..reps.len() {
                    for j in i + 1..reps.len() {
                        none += usize::from(are_equivalent(&reps[i], &reps[j])?.is_none());
                    }
                }
                Ok(none.to_string())
            });
            h.run("sigma8 orientation-reversing".into(), "13".into(), || {
                let mut rev = 0;
                for v in &reps {
                    rev += usize::from(!automorphism_group(v)?.orientation_faithful());
                }
                Ok(rev.to_string())
            });
            h.run("sigma8 distinct classes".into(), "13".into(), || {
                let mut store = ClassStore::new();
                for v in &reps {
                    store.insert(v.clone())?;
                }
                Ok(store.len().to_string())
            });
        }
    }
    Ok(ReproReport { target, entries: h.entries })
}

fn clone_err(e: &Error) -> Error {
    match e {
        Error::BudgetExhausted { iterations, pool } => Error::BudgetExhausted { iterations: *iterations, pool: *pool },
        other => Error::Invalid(other.to_string()),
    }
}
