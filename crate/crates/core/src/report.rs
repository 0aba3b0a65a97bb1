//! Machine-readable reports for the `monograph` commands.
//!
//! Every rational is rendered as a `p/q` or integer string. Documents serialise through
//! `serde_json::Value`, whose maps keep keys sorted, so identical inputs give byte-identical
//! output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::check::{run_checks, CheckOutcome};
use crate::cohomology::{invariant_cycles_report, CohomologyError};
use crate::graph::GraphError;
use crate::linalg::{format_rational, nullspace, Rational, Subspace};
use crate::local_system::LocalSystemError;
use crate::problem::{ParseError, ProblemSpec};
use crate::tate::{tate_report, TateError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Laplacian,
    Cohomology,
    Defect,
    Tate { ord: usize, g: Vec<Rational> },
    Check { seed: u64 },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Laplacian => "laplacian",
            Command::Cohomology => "cohomology",
            Command::Defect => "defect",
            Command::Tate { .. } => "tate",
            Command::Check { .. } => "check",
        }
    }

    pub fn needs_input(&self) -> bool {
        matches!(self, Command::Laplacian | Command::Cohomology | Command::Defect)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("`{0}` needs an input problem (--input FILE)")]
    MissingInput(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    LocalSystem(#[from] LocalSystemError),
    #[error(transparent)]
    Tate(TateError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
}

impl RunError {
    /// 2 for bad input, 3 for a broken internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Invariant(_) | RunError::ChecksFailed { .. } => 3,
            _ => 2,
        }
    }
}

impl From<CohomologyError> for RunError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::InvariantViolation(s) => RunError::Invariant(s),
            CohomologyError::LocalSystem(l) => RunError::LocalSystem(l),
            CohomologyError::Linalg(l) => RunError::Invariant(l.to_string()),
        }
    }
}

impl From<TateError> for RunError {
    fn from(e: TateError) -> Self {
        match e {
            TateError::Cohomology(c) => c.into(),
            TateError::Linalg(l) => RunError::Invariant(l.to_string()),
            other => RunError::Tate(other),
        }
    }
}

type Grid = Vec<Vec<String>>;

#[derive(Debug, Clone, Serialize)]
pub struct TateSection {
    pub m: usize,
    pub gvals: Vec<String>,
    pub det: String,
    pub rank: usize,
    pub kernel: Grid,
    pub edge_images: Grid,
    pub holonomy: String,
    pub defect: usize,
    pub quotient_dim: usize,
    pub matches_closed_form: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub problem: Option<Value>,
    /// Matrices as string grids, keyed by name.
    pub matrices: BTreeMap<String, Grid>,
    /// Subspace bases, one vector per entry.
    pub subspaces: BTreeMap<String, Grid>,
    pub dims: BTreeMap<String, usize>,
    pub verdict: Option<String>,
    pub tate: Option<TateSection>,
    pub checks: Option<Vec<CheckLine>>,
}

impl ReportDocument {
    fn new(command: &Command, problem: Option<&ProblemSpec>) -> Self {
        ReportDocument {
            command: command.name().to_string(),
            problem: problem.map(ProblemSpec::to_json),
            matrices: BTreeMap::new(),
            subspaces: BTreeMap::new(),
            dims: BTreeMap::new(),
            verdict: None,
            tate: None,
            checks: None,
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json_string(&self) -> String {
        let value = serde_json::to_value(self).expect("report serialises");
        let mut s = serde_json::to_string_pretty(&value).expect("value serialises");
        s.push('\n');
        s
    }

    /// `Err(ChecksFailed)` when this is a `check` report with failures.
    pub fn check_status(&self) -> Result<(), RunError> {
        let Some(checks) = &self.checks else {
            return Ok(());
        };
        let failed = checks.iter().filter(|c| !c.passed).count();
        if failed > 0 {
            return Err(RunError::ChecksFailed {
                failed,
                total: checks.len(),
            });
        }
        Ok(())
    }

    /// Plain-text summary for people.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== monograph {} ==", self.command);
        for (k, v) in &self.dims {
            let _ = writeln!(out, "{k:>24}: {v}");
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "{:>24}: {v}", "verdict");
        }
        if let Some(t) = &self.tate {
            let _ = writeln!(out, "{:>24}: {}", "cycle length", t.m);
            let _ = writeln!(out, "{:>24}: {}", "g", t.gvals.join(", "));
            let _ = writeln!(out, "{:>24}: {}", "holonomy", t.holonomy);
            let _ = writeln!(out, "{:>24}: {}", "det A", t.det);
            let _ = writeln!(out, "{:>24}: {}", "rank A", t.rank);
            let _ = writeln!(out, "{:>24}: {}", "defect", t.defect);
            let _ = writeln!(out, "{:>24}: {}", "quotient dim", t.quotient_dim);
            if let Some(b) = t.matches_closed_form {
                let _ = writeln!(out, "{:>24}: {b}", "closed-form kernel");
            }
        }
        for (name, grid) in &self.matrices {
            let _ = writeln!(out, "\n{name}:");
            out.push_str(&grid_text(grid));
        }
        for (name, vectors) in &self.subspaces {
            let _ = writeln!(out, "\n{name} (dim {}):", vectors.len());
            for v in vectors {
                let _ = writeln!(out, "  ({})", v.join(", "));
            }
        }
        if let Some(checks) = &self.checks {
            let _ = writeln!(out);
            for c in checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "[{mark}] {:<40} {}", c.name, c.detail);
            }
        }
        out
    }
}

fn grid_text(grid: &Grid) -> String {
    let width = grid.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in grid {
        let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        let _ = writeln!(out, "  [ {} ]", cells.join("  "));
    }
    out
}

fn vector_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn basis_grid(s: &Subspace) -> Grid {
    s.basis_vectors().iter().map(|v| vector_strings(v)).collect()
}

fn verdict(defect: usize) -> String {
    if defect == 0 {
        "exact".to_string()
    } else {
        format!("defect {defect}")
    }
}

/// Runs one command. `problem` is required by `laplacian`, `cohomology` and `defect`.
pub fn run(problem: Option<&ProblemSpec>, command: &Command) -> Result<ReportDocument, RunError> {
    let mut doc = ReportDocument::new(command, problem);
    let need = || problem.ok_or(RunError::MissingInput(command.name()));
    match command {
        Command::Laplacian => {
            let g = need()?.graph()?;
            let d = g.incidence_matrix();
            let lap = g.laplacian();
            if d.mul(&d.transpose()).ok().as_ref() != Some(&lap) {
                return Err(RunError::Invariant("Laplacian differs from D·Dᵗ".into()));
            }
            let kernel = nullspace(&lap);
            doc.dims.insert("vertices".into(), g.vertex_count());
            doc.dims.insert("edges".into(), g.edge_count());
            doc.dims.insert("rank_laplacian".into(), lap.rank());
            doc.dims.insert("rank_incidence".into(), d.rank());
            doc.dims.insert("kernel_dim".into(), kernel.dim());
            doc.matrices.insert("D".into(), d.to_string_grid());
            doc.matrices.insert("laplacian".into(), lap.to_string_grid());
            doc.subspaces.insert("kernel".into(), basis_grid(&kernel));
        }
        Command::Cohomology | Command::Defect => {
            let spec = need()?;
            let sys = spec.local_system()?;
            let rep = invariant_cycles_report(&sys)?;
            doc.dims.insert("rank".into(), rep.rank);
            doc.dims.insert("vertices".into(), rep.vertex_count);
            doc.dims.insert("edges".into(), rep.edge_count);
            doc.dims.insert("h0".into(), rep.h0_dim);
            doc.dims.insert("h1".into(), rep.h1_dim);
            doc.subspaces.insert("h0".into(), basis_grid(&rep.h0_basis));
            doc.matrices.insert("alpha".into(), rep.alpha.to_string_grid());
            doc.matrices.insert("A".into(), rep.system_matrix.to_string_grid());
            if matches!(command, Command::Defect) {
                doc.dims.insert("rank_A".into(), rep.system_matrix.rank());
                doc.dims.insert("W".into(), rep.w.dim());
                doc.dims.insert("T".into(), rep.t.dim());
                doc.dims.insert("defect".into(), rep.defect);
                doc.matrices
                    .insert("residue_constraints".into(), rep.residue_constraints.to_string_grid());
                doc.subspaces.insert("W".into(), basis_grid(&rep.w));
                doc.subspaces.insert("T".into(), basis_grid(&rep.t));
                doc.subspaces
                    .insert("obstruction".into(), basis_grid(&rep.obstruction));
                doc.verdict = Some(verdict(rep.defect));
            }
            if sys.rank() == 1 && sys.is_trivial() {
                let g = sys.graph();
                doc.matrices.insert("D".into(), g.incidence_matrix().to_string_grid());
                doc.matrices.insert("laplacian".into(), g.laplacian().to_string_grid());
            }
        }
        Command::Tate { ord, g } => {
            let t = tate_report(*ord, g)?;
            doc.matrices.insert("A".into(), t.system_matrix.to_string_grid());
            doc.subspaces.insert("obstruction".into(), basis_grid(&t.obstruction));
            doc.dims.insert("rank_A".into(), t.rank);
            doc.dims.insert("defect".into(), t.defect);
            doc.verdict = Some(verdict(t.defect));
            doc.tate = Some(TateSection {
                m: t.m,
                gvals: vector_strings(&t.gvals),
                det: format_rational(&t.det),
                rank: t.rank,
                kernel: basis_grid(&t.kernel),
                edge_images: t.edge_images.iter().map(|v| vector_strings(v)).collect(),
                holonomy: format_rational(&t.holonomy),
                defect: t.defect,
                quotient_dim: t.quotient_dim,
                matches_closed_form: t.matches_closed_form,
            });
        }
        Command::Check { seed } => {
            let outcomes = run_checks(*seed);
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            doc.dims.insert("checks".into(), outcomes.len());
            doc.dims.insert("failed".into(), failed);
            doc.checks = Some(outcomes.into_iter().map(CheckOutcome::into_line).collect());
            doc.verdict = Some(if failed == 0 { "pass" } else { "fail" }.to_string());
        }
    }
    Ok(doc)
}

/// `run` followed by the failure policy of `check`: any failed check becomes an error.
pub fn run_strict(problem: Option<&ProblemSpec>, command: &Command) -> Result<ReportDocument, RunError> {
    let doc = run(problem, command)?;
    doc.check_status()?;
    Ok(doc)
}
