//! Mutation sequences carrying the rectangle seed of `Gr_{d_k;N}` to a seed
//! containing the image of the flag seed as a restricted seed, and the
//! end-to-end verification of that claim.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flag_seeds::{flag_initial_seed, grassmannian_initial_seed, phi_star_seed, FlagError, FlagType};
use crate::quiver_seeds::{match_by_tableau, seeds_equal, Oracle, OracleConfig, Seed, SeedError};
use crate::young_tableaux::{Tableau, TableauError};

#[derive(Debug, Error)]
pub enum ProgramError {
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error("no vertex at grid position {0:?}")]
    MissingPosition((u32, u32)),
    #[error("keep set: {0}")]
    KeepSet(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, ProgramError>;

/// Coordinate inside a mutation region: row `i` (row 1 on top of the
/// region), column `j` from the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridCoord {
    pub i: u32,
    pub j: u32,
}

/// Rectangular region of one block of the flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    /// Index `j` of the block `[d_{j-1}, d_j]`, from 2 to `k`.
    pub block: usize,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    /// Seed row of region row 1.
    pub top: u32,
}

impl Region {
    pub fn to_seed(&self, g: GridCoord) -> (u32, u32) {
        (self.top + g.i - 1, 1 + g.j)
    }

    /// Pages `1..=a+c-1`: rows `a` down to 1, full rows below row `i`, `c`
    /// columns on row `i`, one fewer on each row above.
    pub fn pages(&self) -> Vec<Vec<GridCoord>> {
        let (a, b, c) = (self.a, self.b, self.c);
        if a == 0 {
            return Vec::new();
        }
        (1..=a + c - 1)
            .map(|page| {
                let mut out = Vec::new();
                for r in (1..=a).rev() {
                    let cols = if r > page {
                        b
                    } else if r == page {
                        c
                    } else {
                        c.saturating_sub(page - r)
                    };
                    out.extend((1..=cols).map(|j| GridCoord { i: r, j }));
                }
                out
            })
            .collect()
    }

    /// `ac(c+1)/2 + ab(a-1)/2`.
    pub fn expected_length(&self) -> usize {
        let (a, b, c) = (self.a as usize, self.b as usize, self.c as usize);
        a * c * (c + 1) / 2 + a * b * a.saturating_sub(1) / 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub block: usize,
    pub page: u32,
    pub coord: GridCoord,
    pub pos: (u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationProgram {
    pub flag: FlagType,
    pub regions: Vec<Region>,
    pub steps: Vec<Step>,
    /// Grid positions frozen after the mutations.
    pub freeze_positions: Vec<(u32, u32)>,
    /// Columns `[1, d_j] ∪ [n+1, n+d_k-d_j]`, `j < k`, frozen wherever they sit.
    pub freeze_columns: Vec<Vec<u32>>,
}

impl MutationProgram {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Closed-form length summed over regions.
    pub fn expected_length(&self) -> usize {
        self.regions.iter().map(Region::expected_length).sum()
    }

    /// The same program with the regions run in another order; `order`
    /// indexes `regions`.
    pub fn with_block_order(&self, order: &[usize]) -> MutationProgram {
        let mut p = self.clone();
        p.steps = order
            .iter()
            .map(|&r| self.regions[r].block)
            .flat_map(|blk| self.steps.iter().filter(move |s| s.block == blk).copied())
            .collect();
        p
    }

    /// Grid labels `(L)` of the steps on the rectangle seed.
    pub fn labels(&self, start: &Seed) -> Result<Vec<String>> {
        self.steps
            .iter()
            .map(|s| {
                let v = start.quiver.find_pos(s.pos).ok_or(ProgramError::MissingPosition(s.pos))?;
                Ok(start.label(v).to_string())
            })
            .collect()
    }
}

/// Program for `Fl_{d_1,...,d_k;n}` inside `Gr_{d_k;N}`: in each block
/// region `(d_j - d_{j-1} - 1) x (d_k - 2)` at seed row `d_{j-1} - d_1 + 2`,
/// column 2, the two-step sequence with `c = d_{j-1}`.
pub fn general_flag_program(flag: &FlagType) -> MutationProgram {
    let (n, k) = (flag.n, flag.k());
    let dk = flag.top();
    let mut regions = Vec::new();
    let mut steps = Vec::new();
    let mut freeze_positions = Vec::new();
    for j in 2..=k {
        let region = Region {
            block: j,
            a: flag.d(j) - flag.d(j - 1) - 1,
            b: dk - 2,
            c: flag.d(j - 1),
            top: flag.d(j - 1) - flag.d(1) + 2,
        };
        for (p, page) in region.pages().into_iter().enumerate() {
            for coord in page {
                steps.push(Step {
                    block: j,
                    page: p as u32 + 1,
                    coord,
                    pos: region.to_seed(coord),
                });
            }
        }
        for i in 1..=region.a {
            freeze_positions.push((region.top + i - 1, flag.d(j - 1) + 1));
        }
        regions.push(region);
    }
    let freeze_columns = (1..k).map(|j| (1..=flag.d(j)).chain(n + 1..=n + dk - flag.d(j)).collect()).collect();
    MutationProgram {
        flag: flag.clone(),
        regions,
        steps,
        freeze_positions,
        freeze_columns,
    }
}

pub fn two_step_program(d1: u32, d2: u32, n: u32) -> Result<MutationProgram> {
    Ok(general_flag_program(&FlagType::new(n, vec![d1, d2])?))
}

/// Momentum twistors: `Fl_{2,4;n}` in `Gr_{4;n+2}`.
pub fn mt_program(n: u32) -> Result<MutationProgram> {
    if n < 5 {
        return Err(ProgramError::InvalidParameters(format!("momentum twistor program needs n >= 5, got {n}")));
    }
    two_step_program(2, 4, n)
}

/// Spinor helicity: `Fl_{2,n-2;n}` in `Gr_{n-2;2n-4}`.
pub fn sh_program(n: u32) -> Result<MutationProgram> {
    if n < 6 {
        return Err(ProgramError::InvalidParameters(format!("spinor helicity program needs n >= 6, got {n}")));
    }
    two_step_program(2, n - 2, n)
}

/// Tableau expected at region position `(j1+1, c-j2)` once page
/// `j1 + j2 + 1` of a two-step program is done: columns
/// `[1, d1+j1+1] ∪ [n-d2+d1+j1+2, n]` and `[1, j2] ∪ [n-d2+j1+j2+2, n-d2+d1+j1+1]`.
pub fn two_step_expected_tableau(d1: u32, d2: u32, n: u32, j1: u32, j2: u32) -> Result<Tableau> {
    let m = n - d2;
    let col1: Vec<u32> = (1..=d1 + j1 + 1).chain(m + d1 + j1 + 2..=n).collect();
    let col2: Vec<u32> = (1..=j2).chain(m + j1 + j2 + 2..=m + d1 + j1 + 1).collect();
    Ok(Tableau::from_columns(&[col1, col2])?)
}

/// The same tableau with second column `[1, j2] ∪ [d1+j1+j2+2, 2d1+j1+1]`,
/// which coincides with [`two_step_expected_tableau`] exactly when `n - d2 = d1`.
pub fn two_step_expected_tableau_symmetric(d1: u32, d2: u32, n: u32, j1: u32, j2: u32) -> Result<Tableau> {
    let col1: Vec<u32> = (1..=d1 + j1 + 1).chain(n - d2 + d1 + j1 + 2..=n).collect();
    let col2: Vec<u32> = (1..=j2).chain(d1 + j1 + j2 + 2..=2 * d1 + j1 + 1).collect();
    Ok(Tableau::from_columns(&[col1, col2])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Check every exchange relation on the oracle points.
    pub verify_exchange: bool,
    /// Check the two-step placement of new tableaux after every page.
    pub check_placements: bool,
    pub oracle: OracleConfig,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            verify_exchange: true,
            check_placements: true,
            oracle: OracleConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// Seed right after the mutations.
    pub mutated: Seed,
    /// Seed after freezing and deleting.
    pub endpoint: Seed,
    pub sequence: Vec<String>,
    pub frozen: Vec<String>,
    pub deleted: Vec<String>,
    pub exchange_checks: usize,
    pub exchange_failures: Vec<String>,
    pub placements_checked: usize,
    pub placement_failures: Vec<String>,
    pub max_multiplicity: i64,
}

/// Runs only the mutations of `prog`.
pub fn mutate_along(start: &Seed, prog: &MutationProgram) -> Result<Seed> {
    let mut seed = start.clone();
    for step in &prog.steps {
        let v = seed.quiver.find_pos(step.pos).ok_or(ProgramError::MissingPosition(step.pos))?;
        seed = seed.mutate(v)?;
    }
    Ok(seed)
}

/// Applies the mutations, the freezes, and the restriction to the vertices
/// whose tableau classes are those of `expected`.
pub fn run_program(start: &Seed, prog: &MutationProgram, expected: &[Tableau], opts: &RunOptions) -> Result<RunOutcome> {
    let flag = &prog.flag;
    let oracle = if opts.verify_exchange {
        Some(Oracle::for_seed(start, opts.oracle)?)
    } else {
        None
    };
    let mut values = oracle.as_ref().map(|o| o.seed_values(start));
    let mut seed = start.clone();
    let mut sequence = Vec::new();
    let (mut exchange_checks, mut exchange_failures) = (0, Vec::new());
    let (mut placements_checked, mut placement_failures) = (0, Vec::new());
    let mut max_multiplicity = seed.quiver.max_multiplicity();
    for (idx, step) in prog.steps.iter().enumerate() {
        let v = seed.quiver.find_pos(step.pos).ok_or(ProgramError::MissingPosition(step.pos))?;
        sequence.push(seed.label(v).to_string());
        let next = seed.mutate(v)?;
        if let (Some(o), Some(vals)) = (&oracle, values.as_mut()) {
            exchange_checks += 1;
            match o.check_exchange(&seed, v, &next.vars[v].laurent, vals) {
                Some(new) => {
                    for (t, x) in new.into_iter().enumerate() {
                        vals[t][v] = x;
                    }
                }
                None => {
                    exchange_failures.push(format!("step {} at {}", idx + 1, seed.label(v)));
                    *vals = o.seed_values(&next);
                }
            }
        }
        seed = next;
        max_multiplicity = max_multiplicity.max(seed.quiver.max_multiplicity());

        let page_done = prog.steps.get(idx + 1).map_or(true, |s| s.page != step.page || s.block != step.block);
        if opts.check_placements && flag.k() == 2 && page_done {
            let region = prog.regions[0];
            let page = step.page;
            for j1 in 0..page {
                let j2 = page - 1 - j1;
                if j1 + 1 > region.a || j2 + 1 > region.c {
                    continue;
                }
                let coord = GridCoord { i: j1 + 1, j: region.c - j2 };
                let pos = region.to_seed(coord);
                let v = seed.quiver.find_pos(pos).ok_or(ProgramError::MissingPosition(pos))?;
                let want = two_step_expected_tableau(flag.d(1), flag.d(2), flag.n, j1, j2)?.fill_up(flag.n, &flag.dims)?;
                placements_checked += 1;
                if !seed.vars[v].tableau.equivalent(&want) {
                    placement_failures.push(format!(
                        "page {page}: {} holds {:?}, expected {:?}",
                        seed.label(v),
                        seed.vars[v].tableau.rows(),
                        want.rows()
                    ));
                }
            }
        }
    }
    let mutated = seed.clone();

    let mut to_freeze = Vec::new();
    for &pos in &prog.freeze_positions {
        to_freeze.push(seed.quiver.find_pos(pos).ok_or(ProgramError::MissingPosition(pos))?);
    }
    for col in &prog.freeze_columns {
        let t = Tableau::column(col)?;
        let hits: Vec<usize> = (0..seed.len()).filter(|&v| seed.vars[v].tableau.equivalent(&t)).collect();
        match hits[..] {
            [v] => to_freeze.push(v),
            _ => return Err(ProgramError::KeepSet(format!("column {col:?} found at {} vertices", hits.len()))),
        }
    }
    to_freeze.retain(|&v| !seed.quiver.is_frozen(v));
    to_freeze.sort_unstable();
    to_freeze.dedup();
    let frozen = to_freeze.iter().map(|&v| seed.label(v).to_string()).collect();
    let seed = seed.freeze(&to_freeze);

    let mut keep = Vec::new();
    for t in expected {
        let hits: Vec<usize> = (0..seed.len())
            .filter(|&v| seed.vars[v].tableau.equivalent(t) && !keep.contains(&v))
            .collect();
        match hits[..] {
            [v] => keep.push(v),
            [] => return Err(ProgramError::KeepSet(format!("no vertex carries {:?}", t.rows()))),
            _ => return Err(ProgramError::KeepSet(format!("{} vertices carry {:?}", hits.len(), t.rows()))),
        }
    }
    keep.sort_unstable();
    let deleted = (0..seed.len()).filter(|v| !keep.contains(v)).map(|v| seed.label(v).to_string()).collect();
    let endpoint = seed.restrict_to(&keep)?;
    Ok(RunOutcome {
        mutated,
        endpoint,
        sequence,
        frozen,
        deleted,
        exchange_checks,
        exchange_failures,
        placements_checked,
        placement_failures,
        max_multiplicity,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub flag: String,
    pub grassmannian: String,
    pub mutations: usize,
    pub freezes: usize,
    pub deletions: usize,
    pub sequence: Vec<String>,
    pub frozen: Vec<String>,
    pub deleted: Vec<String>,
    pub checks: Vec<Check>,
    /// Observations that are not failures, such as arrow multiplicities
    /// above one.
    pub findings: Vec<String>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Everything produced while verifying one flag.
#[derive(Debug, Clone)]
pub struct Verification {
    pub report: Report,
    pub flag_seed: Seed,
    pub expected: Seed,
    pub outcome: RunOutcome,
}

fn push(checks: &mut Vec<Check>, name: &str, pass: bool, detail: String) {
    checks.push(Check {
        name: name.into(),
        pass,
        detail,
    });
}

/// Builds the rectangle seed, runs the program, and compares the endpoint
/// with the image of the flag seed.
pub fn verify_theorem(flag: &FlagType, oracle: OracleConfig) -> Result<Verification> {
    verify_program(&general_flag_program(flag), oracle)
}

pub fn verify_program(prog: &MutationProgram, oracle: OracleConfig) -> Result<Verification> {
    let flag = &prog.flag;
    let mut timings = BTreeMap::new();
    let clock = Instant::now();
    let flag_seed = flag_initial_seed(flag)?;
    let expected = phi_star_seed(&flag_seed, flag)?;
    let start = grassmannian_initial_seed(flag.top(), flag.big_n())?;
    timings.insert("build".to_string(), clock.elapsed().as_secs_f64() * 1e3);

    let clock = Instant::now();
    let targets: Vec<Tableau> = expected.vars.iter().map(|v| v.tableau.clone()).collect();
    let opts = RunOptions {
        verify_exchange: true,
        check_placements: true,
        oracle,
    };
    let outcome = run_program(&start, prog, &targets, &opts)?;
    timings.insert("run".to_string(), clock.elapsed().as_secs_f64() * 1e3);

    let clock = Instant::now();
    let mut checks = Vec::new();
    let mut findings = Vec::new();
    push(
        &mut checks,
        "program length",
        prog.len() == prog.expected_length(),
        format!("{} mutations, closed form {}", prog.len(), prog.expected_length()),
    );
    push(
        &mut checks,
        "exchange relations",
        outcome.exchange_failures.is_empty(),
        format!("{} checked, failures {:?}", outcome.exchange_checks, outcome.exchange_failures),
    );
    if flag.k() == 2 {
        push(
            &mut checks,
            "placements",
            outcome.placement_failures.is_empty(),
            format!("{} checked, failures {:?}", outcome.placements_checked, outcome.placement_failures),
        );
    }
    if outcome.max_multiplicity > 1 {
        findings.push(format!("arrow multiplicity up to {}", outcome.max_multiplicity));
    }

    let endpoint = &outcome.endpoint;
    let mut ends: Vec<Tableau> = endpoint.vars.iter().map(|v| v.tableau.reduce()).collect();
    let mut wants: Vec<Tableau> = targets.iter().map(Tableau::reduce).collect();
    ends.sort();
    wants.sort();
    push(
        &mut checks,
        "tableau multiset",
        ends == wants,
        format!("{} endpoint vertices, {} expected", ends.len(), wants.len()),
    );

    match match_by_tableau(&expected, endpoint) {
        Ok(map) => {
            let cmp = seeds_equal(endpoint, &expected, &map, oracle)?;
            let arrow_issues: Vec<String> = cmp.mismatches.iter().filter(|m| !m.starts_with("cluster")).cloned().collect();
            let detail = if arrow_issues.is_empty() {
                format!("{} arrows equal under the tableau matching", endpoint.quiver.arrows().len())
            } else {
                arrow_issues.join("; ")
            };
            push(&mut checks, "quiver", cmp.arrows_equal, detail);
            push(&mut checks, "laurent", cmp.laurent_equal, format!("{} trials", oracle.trials));
            let mut weighted = endpoint.clone();
            for (i, &j) in map.iter().enumerate() {
                weighted.vars[i].weight = expected.vars[j].weight.clone();
            }
            let unbalanced: Vec<String> = weighted
                .quiver
                .mutable_vertices()
                .into_iter()
                .filter(|&v| !weighted.is_balanced(v))
                .map(|v| weighted.label(v).to_string())
                .collect();
            push(&mut checks, "balance", unbalanced.is_empty(), format!("unbalanced {unbalanced:?}"));
        }
        Err(e) => {
            push(&mut checks, "quiver", false, e.clone());
            push(&mut checks, "laurent", false, e);
        }
    }
    timings.insert("compare".to_string(), clock.elapsed().as_secs_f64() * 1e3);

    let report = Report {
        schema_version: REPORT_SCHEMA_VERSION,
        flag: flag.to_string(),
        grassmannian: format!("Gr_{{{};{}}}", flag.top(), flag.big_n()),
        mutations: prog.len(),
        freezes: outcome.frozen.len(),
        deletions: outcome.deleted.len(),
        sequence: outcome.sequence.clone(),
        frozen: outcome.frozen.clone(),
        deleted: outcome.deleted.clone(),
        checks,
        findings,
        timings_ms: timings,
    };
    Ok(Verification {
        report,
        flag_seed,
        expected,
        outcome,
    })
}
