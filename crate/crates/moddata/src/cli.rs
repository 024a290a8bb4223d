//! Command-line driver plumbing: case files, case assembly, batch runs,
//! resume, reporting, and verification.

use crate::engine::{
    run_case, CandidateCase, CaseBudget, CaseTree, Fact, FactKind, FactRegistry, Hint, Outcome,
};
use crate::exactpoly::{parse_poly, MultiPoly, Vars};
use crate::factorlab::{cyclotomic_poly, euler_phi, AtomLibrary};
use crate::groebner::Budget;
use crate::symmetry::{
    enumerate_groups, DualityInvolution, GroupCandidate, GroupConstraints, Permutation,
};
use crate::template::{
    build_template, enumerate_sign_choices, orbit_spoly_relations, orthogonality_relations,
    reindex, twist_relations, SignExpr, SignFunction, SMatrixTemplate,
};
use std::path::{Path, PathBuf};


#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    CaseFile { path: String, msg: String },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Symmetry(#[from] crate::symmetry::SymmetryError),
    #[error(transparent)]
    Template(#[from] crate::template::TemplateError),
    #[error(transparent)]
    Engine(#[from] crate::engine::EngineError),
    #[error(transparent)]
    Verify(#[from] crate::verify::VerifyError),
}

fn case_err(path: &str, msg: impl Into<String>) -> CliError {
    CliError::CaseFile {
        path: path.to_string(),
        msg: msg.into(),
    }
}

// ---------------------------------------------------------------------------
// Case files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CaseFile {
    pub name: String,
    pub rank: usize,
    pub group: Vec<String>,
    pub duality: String,
    pub signs: SignSpec,
    #[serde(default)]
    pub sign_symbols: Vec<String>,
    #[serde(default)]
    pub extra_relations: Vec<String>,
    #[serde(default)]
    pub spoly: Vec<SPolySpec>,
    #[serde(default)]
    pub atoms: Vec<String>,
    #[serde(default)]
    pub facts: Vec<FactSpec>,
    #[serde(default)]
    pub hints: Vec<Hint>,
    #[serde(default)]
    pub probes: Vec<String>,
    #[serde(default)]
    pub solution_marks: Vec<String>,
    #[serde(default = "default_positivity")]
    pub positivity: String,
    #[serde(default)]
    pub budget: BudgetSpec,
}

fn default_positivity() -> String {
    "auto".to_string()
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum SignSpec {
    /// `signs = "auto"` or `signs = "auto:2"` (choice index).
    Auto(String),
    /// Explicit per-generator table of sign expressions.
    Table(Vec<Vec<String>>),
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SPolySpec {
    pub row: usize,
    pub orbit: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FactSpec {
    pub kind: String,
    pub arg: String,
    #[serde(default)]
    pub bound: Option<i64>,
    pub why: String,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BudgetSpec {
    #[serde(default = "d_depth")]
    pub max_depth: usize,
    #[serde(default = "d_nodes")]
    pub max_nodes: usize,
    #[serde(default = "d_pairs")]
    pub max_pairs: usize,
    #[serde(default = "d_millis")]
    pub max_millis: u64,
    #[serde(default)]
    pub degree_cap: Option<u32>,
}

fn d_depth() -> usize {
    12
}
fn d_nodes() -> usize {
    500
}
fn d_pairs() -> usize {
    1_000_000
}
fn d_millis() -> u64 {
    30 * 60 * 1000
}

impl Default for BudgetSpec {
    fn default() -> Self {
        BudgetSpec {
            max_depth: d_depth(),
            max_nodes: d_nodes(),
            max_pairs: d_pairs(),
            max_millis: d_millis(),
            degree_cap: None,
        }
    }
}

impl BudgetSpec {
    pub fn to_case_budget(self) -> CaseBudget {
        CaseBudget {
            max_depth: self.max_depth,
            max_nodes: self.max_nodes,
            groebner: Budget {
                max_pairs: self.max_pairs,
                max_millis: self.max_millis,
            },
            degree_cap: self.degree_cap,
        }
    }
}

pub fn parse_case_file(text: &str, path: &str) -> Result<CaseFile, CliError> {
    toml::from_str(text).map_err(|e| case_err(path, e.to_string()))
}

pub fn render_case_file(case: &CaseFile) -> String {
    toml::to_string_pretty(case).expect("case files serialize")
}

pub fn load_case_file(path: &Path) -> Result<CaseFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_case_file(&text, &path.display().to_string())
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

/// Default trial-division atoms generated from the case symbol table:
/// variables, twist binomials, dimension binomials, `p^2 +/- D`, and
/// low-order cyclotomic polynomials in each twist variable.
pub fn default_atoms(template: &SMatrixTemplate, vars: &Vars) -> AtomLibrary {
    let mut atoms: Vec<MultiPoly> = Vec::new();
    for i in 0..vars.len() {
        atoms.push(MultiPoly::var(vars, i));
    }
    let one = MultiPoly::one(vars);
    let mut tvars: Vec<MultiPoly> = Vec::new();
    let mut dvars: Vec<MultiPoly> = Vec::new();
    for (i, name) in vars.names().iter().enumerate() {
        if name.starts_with('t') {
            tvars.push(MultiPoly::var(vars, i));
        }
        if name.starts_with('d') && name != "D" {
            dvars.push(MultiPoly::var(vars, i));
        }
    }
    for t in &tvars {
        atoms.push(t.sub(&one));
        atoms.push(t.add(&one));
    }
    for (a, t1) in tvars.iter().enumerate() {
        for t2 in tvars.iter().skip(a + 1) {
            atoms.push(t1.sub(t2));
            atoms.push(t1.add(t2));
        }
    }
    for d in &dvars {
        atoms.push(d.sub(&one));
        atoms.push(d.add(&one));
    }
    for (a, d1) in dvars.iter().enumerate() {
        for d2 in dvars.iter().skip(a + 1) {
            atoms.push(d1.sub(d2));
            atoms.push(d1.add(d2));
        }
    }
    if let (Some(p), Some(dd)) = (vars.index_of("p"), vars.index_of("D")) {
        let p = MultiPoly::var(vars, p);
        let dd = MultiPoly::var(vars, dd);
        atoms.push(p.mul(&p).sub(&dd));
        atoms.push(p.mul(&p).add(&dd));
    }
    for t in &tvars {
        let tv = t.support()[0];
        for m in [3u32, 4, 5, 6, 8, 12] {
            if euler_phi(m) <= 4 {
                atoms.push(cyclotomic_poly(m, tv, vars));
            }
        }
    }
    let _ = template;
    AtomLibrary::new(atoms)
}

fn sign_function_from_spec(
    file: &CaseFile,
    group: &GroupCandidate,
) -> Result<SignFunction, CliError> {
    match &file.signs {
        SignSpec::Table(rows) => {
            if rows.len() != group.generators.len() {
                return Err(case_err(
                    &file.name,
                    "sign table rows must match the generator count",
                ));
            }
            let mut per_generator = Vec::new();
            for row in rows {
                if row.len() != file.rank {
                    return Err(case_err(&file.name, "sign table width must equal the rank"));
                }
                let mut eps = Vec::new();
                for cell in row {
                    eps.push(
                        SignExpr::parse(cell, &file.sign_symbols)
                            .map_err(|e| case_err(&file.name, e.to_string()))?,
                    );
                }
                per_generator.push(eps);
            }
            Ok(SignFunction {
                sign_symbols: file.sign_symbols.clone(),
                per_generator,
            })
        }
        SignSpec::Auto(spec) => {
            let choice_idx = spec
                .strip_prefix("auto")
                .and_then(|rest| rest.strip_prefix(':'))
                .map(|s| s.parse::<usize>())
                .transpose()
                .map_err(|_| case_err(&file.name, "bad auto sign spec"))?
                .unwrap_or(0);
            let choices = enumerate_sign_choices(group);
            let choice = choices.get(choice_idx).ok_or_else(|| {
                case_err(
                    &file.name,
                    format!(
                        "sign choice {choice_idx} out of range ({} available)",
                        choices.len()
                    ),
                )
            })?;
            Ok(choice.signs.clone())
        }
    }
}

/// Builds the runnable case from a case file: template, first-round
/// relations, facts, atoms, hints.
pub fn assemble_case(file: &CaseFile) -> Result<CandidateCase, CliError> {
    let r = file.rank;
    let duality = DualityInvolution::from_cycles(&file.duality, r)
        .map_err(|e| case_err(&file.name, e.to_string()))?;
    let mut gens = Vec::new();
    for g in &file.group {
        gens.push(
            Permutation::parse_cycles(g, r).map_err(|e| case_err(&file.name, e.to_string()))?,
        );
    }
    let group = GroupCandidate::new(gens, duality)
        .map_err(|e| case_err(&file.name, e.to_string()))?;
    let signs = sign_function_from_spec(file, &group)?;
    let template = build_template(&group, &signs)?;

    // first-round relations on the template ring
    let mut relations: Vec<(String, MultiPoly)> = Vec::new();
    for (k, p) in orthogonality_relations(&template).into_iter().enumerate() {
        relations.push((format!("orth{}", k + 1), p));
    }
    for (k, p) in twist_relations(&template).into_iter().enumerate() {
        relations.push((format!("twist{}", k + 1), p));
    }
    let mut fidx = 0usize;
    for p in &template.sign_relations {
        fidx += 1;
        relations.push((format!("f{fidx}"), p.clone()));
    }

    // orbit s-polynomial requests extend the ring with integer symbols
    let mut vars = template.vars.clone();
    let mut zcount = 0usize;
    let mut zsyms: Vec<String> = Vec::new();
    for spec in &file.spoly {
        if spec.row >= r || spec.orbit.iter().any(|&c| c >= r) {
            return Err(case_err(&file.name, "orbit request out of range"));
        }
        let (bigger, names, rels) =
            orbit_spoly_relations(&template, &vars, spec.row, &spec.orbit, &mut zcount);
        // re-embed all previous relations into the bigger ring
        relations = relations
            .into_iter()
            .map(|(n, p)| (n, reindex(&p, &bigger)))
            .collect();
        vars = bigger;
        for p in rels {
            fidx += 1;
            relations.push((format!("f{fidx}"), p));
        }
        zsyms.extend(names);
    }

    for text in &file.extra_relations {
        let p = parse_poly(text, &vars).map_err(|e| case_err(&file.name, e.to_string()))?;
        fidx += 1;
        relations.push((format!("f{fidx}"), p));
    }

    // fact registry: real designations extend to the z-symbols (integers)
    let mut real = template.real_symbols.clone();
    real.extend(std::iter::repeat(true).take(vars.len() - real.len()));
    let mut facts = FactRegistry::new(&vars, real);

    // seeded facts
    for (i, name) in vars.names().iter().enumerate() {
        let role_dim = name.starts_with('d') && name != "D";
        if role_dim || name == "p" || name == "D" {
            facts.add(Fact {
                kind: FactKind::Nonzero(name.clone()),
                provenance: "admissibility".into(),
            })?;
        }
        if name.starts_with('t') {
            facts.add(Fact {
                kind: FactKind::RootOfUnity(name.clone()),
                provenance: "twists are roots of unity".into(),
            })?;
        }
        if template
            .vars
            .index_of(name)
            .map(|k| matches!(template.roles.get(k), Some(crate::template::SymbolRole::Sign)))
            .unwrap_or(false)
        {
            facts.add(Fact {
                kind: FactKind::Nonzero(name.clone()),
                provenance: "sign symbols square to one".into(),
            })?;
        }
        let _ = i;
    }
    for z in &zsyms {
        facts.add(Fact {
            kind: FactKind::Integer(z.clone()),
            provenance: "orbit polynomial coefficient".into(),
        })?;
    }
    facts.add(Fact {
        kind: FactKind::Positive("D".into()),
        provenance: "sum of squares of real dimensions".into(),
    })?;

    // positivity normalization: when every column outside the orbit of 0 is
    // visibly not the positive column, the positive column sits in the orbit
    // of 0 and all dimensions can be taken >= 1
    let auto = match file.positivity.as_str() {
        "auto" => true,
        "none" => false,
        other => {
            return Err(case_err(
                &file.name,
                format!("positivity must be `auto` or `none`, got `{other}`"),
            ))
        }
    };
    if auto && fp_column_pinned(&template, &group) {
        for name in vars.names() {
            if name.starts_with('d') && name != "D" {
                facts.add(Fact {
                    kind: FactKind::LowerBound(name.clone(), 1),
                    provenance: "positive-column normalization".into(),
                })?;
            }
        }
    }

    for spec in &file.facts {
        let kind = match spec.kind.as_str() {
            "nonzero" => FactKind::Nonzero(spec.arg.clone()),
            "positive" => FactKind::Positive(spec.arg.clone()),
            "integer" => FactKind::Integer(spec.arg.clone()),
            "perfect_square" => FactKind::PerfectSquare(spec.arg.clone()),
            "root_of_unity" => FactKind::RootOfUnity(spec.arg.clone()),
            "lower_bound" => FactKind::LowerBound(
                spec.arg.clone(),
                spec.bound
                    .ok_or_else(|| case_err(&file.name, "lower_bound needs a bound"))?,
            ),
            other => {
                return Err(case_err(&file.name, format!("unknown fact kind `{other}`")))
            }
        };
        facts.add(Fact {
            kind,
            provenance: spec.why.clone(),
        })?;
    }

    let mut atoms = default_atoms(&template, &vars);
    for text in &file.atoms {
        let p = parse_poly(text, &vars).map_err(|e| case_err(&file.name, e.to_string()))?;
        atoms.register(p);
    }

    let mut probes = Vec::new();
    for text in &file.probes {
        probes.push(parse_poly(text, &vars).map_err(|e| case_err(&file.name, e.to_string()))?);
    }
    let mut solution_marks = Vec::new();
    for text in &file.solution_marks {
        solution_marks
            .push(parse_poly(text, &vars).map_err(|e| case_err(&file.name, e.to_string()))?);
    }

    // validate hints parse against the final ring
    for hint in &file.hints {
        if hint.justification.trim().is_empty() {
            return Err(case_err(
                &file.name,
                format!("hint {} lacks a justification", hint.id),
            ));
        }
        if let Some(rel) = &hint.relation {
            parse_poly(rel, &vars).map_err(|e| {
                case_err(&file.name, format!("hint {}: {e}", hint.id))
            })?;
        }
    }

    Ok(CandidateCase {
        name: file.name.clone(),
        group,
        template,
        vars,
        relations,
        facts,
        hints: file.hints.clone(),
        atoms,
        probes,
        solution_marks,
    })
}

/// True when every column outside the orbit of label 0 visibly cannot be the
/// all-positive column: it contains a zero entry, a pair of entries summing
/// to zero, or sits under a non-self-dual label.
fn fp_column_pinned(template: &SMatrixTemplate, group: &GroupCandidate) -> bool {
    let r = template.rank;
    let orbit0 = group.orbit_of(0);
    for j in 0..r {
        if orbit0.contains(&j) {
            continue;
        }
        if !template.star.self_dual(j) {
            continue;
        }
        let mut non_fp = false;
        for i in 0..r {
            if template.entry(i, j).is_zero() {
                non_fp = true;
                break;
            }
            for i2 in 0..r {
                if i2 != i
                    && !template.entry(i, j).is_zero()
                    && template.entry(i, j).add(template.entry(i2, j)).is_zero()
                {
                    non_fp = true;
                    break;
                }
            }
            if non_fp {
                break;
            }
        }
        if !non_fp {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Tabular view of one case run, one row per deduction or terminal node.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Report {
    pub case_name: String,
    pub rows: Vec<ReportRow>,
    pub outcome: String,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ReportRow {
    pub label: String,
    pub zero_factors: Vec<String>,
    pub deduction: String,
    pub outcome: Option<String>,
}

pub fn report_from_tree(tree: &CaseTree) -> Report {
    let mut rows = Vec::new();
    let mut run_no = 0usize;
    for node in &tree.nodes {
        run_no += 1;
        let label = format!("{}-{}", tree.case_name, run_no);
        let zero_factors = node.added.clone();
        let deduction = if node.action == "initial" {
            "orthogonality and twist relations".to_string()
        } else {
            format!("{} ({})", node.action, node.justification)
        };
        let outcome = node.outcome.as_ref().map(|o| match o {
            Outcome::Contradiction { witness, rule } => {
                format!("contradiction: {witness} ({rule})")
            }
            Outcome::Solved { .. } => "solved".to_string(),
            Outcome::Unresolved { reason } => format!("unresolved: {reason}"),
            Outcome::Open => "open".to_string(),
        });
        rows.push(ReportRow {
            label,
            zero_factors,
            deduction,
            outcome,
        });
    }
    let outcome = if tree.all_contradicted() {
        "all branches contradicted".to_string()
    } else if tree.any_solved() {
        "solutions found".to_string()
    } else {
        "unresolved branches remain".to_string()
    };
    Report {
        case_name: tree.case_name.clone(),
        rows,
        outcome,
    }
}

pub fn render_report(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "case {}: {}\n",
        report.case_name, report.outcome
    ));
    out.push_str("run | zero factors / added | deduction | outcome\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{} | {} | {} | {}\n",
            row.label,
            row.zero_factors.join(" ; "),
            row.deduction,
            row.outcome.clone().unwrap_or_default()
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// Skeletons for one candidate group: a case file per surviving sign choice
/// with relabel-merge notes, or an elimination note when no sign assignment
/// is admissible.
pub struct GroupSkeletons {
    pub group_label: String,
    pub cases: Vec<(CaseFile, Vec<String>)>,
    pub eliminated: Option<String>,
}

/// Case-file skeletons for every candidate (group, duality, sign choice) at
/// the given rank and duality shape, one entry per group.
pub fn cmd_enumerate(rank: usize, nsd_pairs: u8) -> Result<Vec<GroupSkeletons>, CliError> {
    let groups = enumerate_groups(
        rank,
        GroupConstraints {
            non_integral: true,
            nsd_pairs,
        },
    )?;
    let duality = crate::symmetry::duality_for(rank, nsd_pairs)?;
    let mut out = Vec::new();
    for g in &groups {
        let label = g
            .generator_strings()
            .join("")
            .replace(")(", "-")
            .replace(['(', ')'], "");
        let choices = enumerate_sign_choices(g);
        let mut cases = Vec::new();
        for (ci, choice) in choices.iter().enumerate() {
            let mut notes = Vec::new();
            for (merged, witness) in &choice.merged {
                notes.push(format!(
                    "merged sign choice {:?} via relabeling {}",
                    merged.render(),
                    witness.to_cycles()
                ));
            }
            let name = format!("r{rank}_{label}_choice{ci}");
            cases.push((
                CaseFile {
                    name,
                    rank,
                    group: g.generator_strings(),
                    duality: duality.as_permutation().to_cycles(),
                    signs: SignSpec::Table(choice.signs.render()),
                    sign_symbols: vec![],
                    extra_relations: vec![],
                    spoly: vec![],
                    atoms: vec![],
                    facts: vec![],
                    hints: vec![],
                    probes: vec![],
                    solution_marks: vec![],
                    positivity: "auto".into(),
                    budget: BudgetSpec::default(),
                },
                notes,
            ));
        }
        let eliminated = if cases.is_empty() {
            Some(
                "no sign assignment satisfies the structural sign rules;                  the group admits no modular data"
                    .to_string(),
            )
        } else {
            None
        };
        out.push(GroupSkeletons {
            group_label: format!("g_{label}"),
            cases,
            eliminated,
        });
    }
    Ok(out)
}

pub struct RunResult {
    pub case_name: String,
    pub tree: CaseTree,
    pub report: Report,
}

/// Runs case files; deterministic output order follows the input order.
pub fn cmd_run(paths: &[PathBuf], parallel: usize) -> Result<Vec<RunResult>, CliError> {
    let files: Result<Vec<CaseFile>, CliError> =
        paths.iter().map(|p| load_case_file(p)).collect();
    let files = files?;
    let cases: Result<Vec<(CandidateCase, CaseBudget)>, CliError> = files
        .iter()
        .map(|f| Ok((assemble_case(f)?, f.budget.to_case_budget())))
        .collect();
    let cases = cases?;

    let trees: Vec<CaseTree> = if parallel > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parallel)
            .build()
            .expect("thread pool");
        pool.install(|| {
            cases
                .par_iter()
                .map(|(case, budget)| run_case(case, budget))
                .collect()
        })
    } else {
        cases
            .iter()
            .map(|(case, budget)| run_case(case, budget))
            .collect()
    };

    Ok(trees
        .into_iter()
        .map(|tree| {
            let report = report_from_tree(&tree);
            RunResult {
                case_name: tree.case_name.clone(),
                tree,
                report,
            }
        })
        .collect())
}

/// Exit classification across a batch: 0 all contradicted, 10 solutions
/// found, 20 unresolved remain.
pub fn exit_code(results: &[RunResult]) -> i32 {
    let any_unresolved = results.iter().any(|r| r.tree.any_unresolved());
    let any_solved = results.iter().any(|r| r.tree.any_solved());
    if any_solved {
        10
    } else if any_unresolved {
        20
    } else {
        0
    }
}

/// Writes the run outputs: per case a plain-text trace, a JSONL trace
/// mirror, and a report table.
pub fn write_outputs(results: &[RunResult], dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io {
        path: dir.display().to_string(),
        source: e,
    })?;
    for r in results {
        let base = dir.join(&r.case_name);
        let write = |path: PathBuf, text: String| -> Result<(), CliError> {
            std::fs::write(&path, text).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                source: e,
            })
        };
        write(
            base.with_extension("trace.txt"),
            r.tree.render_text(),
        )?;
        let mut jsonl = String::new();
        for node in &r.tree.nodes {
            jsonl.push_str(&serde_json::to_string(node).expect("serialize node"));
            jsonl.push('\n');
        }
        write(base.with_extension("trace.jsonl"), jsonl)?;
        write(
            base.with_extension("report.txt"),
            render_report(&r.report),
        )?;
    }
    Ok(())
}

/// Re-runs the unresolved cases from a previous output directory with a new
/// budget; resolved cases are left untouched.
pub fn cmd_resume(
    case_paths: &[PathBuf],
    out_dir: &Path,
    budget: Option<BudgetSpec>,
) -> Result<Vec<RunResult>, CliError> {
    let mut to_run = Vec::new();
    for p in case_paths {
        let file = load_case_file(p)?;
        let trace = out_dir.join(format!("{}.trace.jsonl", file.name));
        let needs_run = if trace.exists() {
            let text = std::fs::read_to_string(&trace).map_err(|e| CliError::Io {
                path: trace.display().to_string(),
                source: e,
            })?;
            text.lines().any(|l| {
                serde_json::from_str::<crate::engine::NodeRecord>(l)
                    .map(|n| {
                        matches!(
                            n.outcome,
                            Some(Outcome::Unresolved { .. }) | Some(Outcome::Open)
                        )
                    })
                    .unwrap_or(true)
            })
        } else {
            true
        };
        if needs_run {
            let mut file = file;
            if let Some(b) = budget {
                file.budget = b;
            }
            to_run.push(file);
        }
    }
    let cases: Result<Vec<(CandidateCase, CaseBudget)>, CliError> = to_run
        .iter()
        .map(|f| Ok((assemble_case(f)?, f.budget.to_case_budget())))
        .collect();
    let cases = cases?;
    let results: Vec<RunResult> = cases
        .iter()
        .map(|(case, budget)| {
            let tree = run_case(case, budget);
            let report = report_from_tree(&tree);
            RunResult {
                case_name: tree.case_name.clone(),
                tree,
                report,
            }
        })
        .collect();
    write_outputs(&results, out_dir)?;
    Ok(results)
}

// ---------------------------------------------------------------------------
// Solution files and verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SolutionFile {
    pub name: String,
    /// Case file path, relative to the solution file.
    pub case_file: String,
    #[serde(default)]
    pub symbols: Vec<crate::verify::AlgebraicSpec>,
    /// Extra relations (beyond the case's own) the embedding must satisfy.
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_precision_bits")]
    pub precision_bits: usize,
}

fn default_tolerance() -> f64 {
    1e-9
}

fn default_precision_bits() -> usize {
    256
}

pub fn load_solution_file(path: &Path) -> Result<SolutionFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    toml::from_str(&text).map_err(|e| case_err(&path.display().to_string(), e.to_string()))
}

/// Embeds a solution file and runs the admissibility checks.
pub fn cmd_verify(
    solution_path: &Path,
) -> Result<crate::verify::AdmissibilityReport, CliError> {
    let solution = load_solution_file(solution_path)?;
    let base = solution_path.parent().unwrap_or(Path::new("."));
    let case_file = load_case_file(&base.join(&solution.case_file))?;
    let case = assemble_case(&case_file)?;
    let ctx = crate::verify::NumCtx::new(solution.precision_bits);
    let mut extra = Vec::new();
    for text in &solution.relations {
        extra.push(
            parse_poly(text, &case.vars)
                .map_err(|e| case_err(&solution.name, e.to_string()))?,
        );
    }
    let md = crate::verify::embed(&case, &solution.symbols, &extra, &ctx, 1e-20)?;
    Ok(crate::verify::verify_admissibility(&md, &ctx, solution.tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
name = "sample"
rank = 6
group = ["(01)", "(45)"]
duality = "(45)"
signs = [["+", "+", "e", "e", "-e", "-e"], ["+", "+", "+", "+", "+", "+"]]
sign_symbols = ["e"]
extra_relations = ["t1-1", "t4^2+1"]

[[facts]]
kind = "nonzero"
arg = "a1"
why = "declared for the test"

[[hints]]
id = "h-demo"
relation = "t2-1"
justification = "demo hint"
when = ["t3-1"]
"#;

    #[test]
    fn case_file_roundtrip() {
        let file = parse_case_file(SAMPLE, "test").unwrap();
        let rendered = render_case_file(&file);
        let reparsed = parse_case_file(&rendered, "test").unwrap();
        assert_eq!(file, reparsed);
    }

    #[test]
    fn assemble_sample_case() {
        let file = parse_case_file(SAMPLE, "test").unwrap();
        let case = assemble_case(&file).unwrap();
        // the S-matrix has zeros where the sign pattern forces them
        assert!(case.template.entry(2, 4).is_zero());
        assert!(case.template.entry(3, 5).is_zero());
        assert!(!case.relations.is_empty());
        // positivity auto-normalization fires: columns 2..5 all have zeros
        assert!(case.facts.lower_bound(case.vars.index_of("d1").unwrap()) == Some(1));
    }

    #[test]
    fn enumerate_skeletons() {
        let sd = cmd_enumerate(6, 0).unwrap();
        assert_eq!(sd.len(), 19);
        // a few groups admit no sign assignment at all and carry a note
        let eliminated = sd.iter().filter(|g| g.eliminated.is_some()).count();
        assert_eq!(eliminated, 3);

        let nsd2 = cmd_enumerate(6, 2).unwrap();
        assert_eq!(nsd2.len(), 7);

        let r2 = cmd_enumerate(2, 0).unwrap();
        assert_eq!(r2.len(), 1);
    }

    #[test]
    fn empty_run_is_success() {
        let results = cmd_run(&[], 1).unwrap();
        assert!(results.is_empty());
        assert_eq!(exit_code(&results), 0);
    }
}
