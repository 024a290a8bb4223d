//! The deduction loop: run a Groebner basis, extract and classify factors
//! against a fact registry, add forced relations, branch on genuine splits,
//! detect contradictions, apply hints, and record the full trace.

use crate::exactpoly::{MonomialOrder, MultiPoly, Rat, Vars};
use crate::factorlab::{cyclotomic_candidates, extract_factors, AtomLibrary};
use crate::groebner::{buchberger, normal_form, Budget, GroebnerBasis, GroebnerError, Ideal};
use crate::symmetry::GroupCandidate;
use crate::template::SMatrixTemplate;
use num_traits::{One, Signed, Zero};

const ORDER: MonomialOrder = MonomialOrder::GradedRevLex;

// ---------------------------------------------------------------------------
// Facts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum FactKind {
    Nonzero(String),
    Positive(String),
    Integer(String),
    PerfectSquare(String),
    RootOfUnity(String),
    LowerBound(String, i64),
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Fact {
    pub kind: FactKind,
    pub provenance: String,
}

/// Registry of admissibility facts about the case symbols, parsed against
/// the case variable table.
#[derive(Debug, Clone)]
pub struct FactRegistry {
    pub vars: Vars,
    pub facts: Vec<Fact>,
    nonzero: Vec<MultiPoly>,
    positive: Vec<usize>,
    lower_bounds: Vec<(usize, i64)>,
    integer: Vec<usize>,
    perfect_square: Vec<usize>,
    root_of_unity: Vec<usize>,
    real: Vec<bool>,
    cyclotomic_max_order: u32,
}

impl FactRegistry {
    pub fn new(vars: &Vars, real: Vec<bool>) -> Self {
        assert_eq!(real.len(), vars.len());
        FactRegistry {
            vars: vars.clone(),
            facts: Vec::new(),
            nonzero: Vec::new(),
            positive: Vec::new(),
            lower_bounds: Vec::new(),
            integer: Vec::new(),
            perfect_square: Vec::new(),
            root_of_unity: Vec::new(),
            real,
            cyclotomic_max_order: 240,
        }
    }

    pub fn set_cyclotomic_bound(&mut self, max_order: u32) {
        self.cyclotomic_max_order = max_order;
    }

    pub fn add(&mut self, fact: Fact) -> Result<(), EngineError> {
        assert!(!fact.provenance.is_empty(), "facts carry a provenance");
        match &fact.kind {
            FactKind::Nonzero(text) => {
                let p = crate::exactpoly::parse_poly(text, &self.vars)
                    .map_err(|e| EngineError::BadFact(e.to_string()))?;
                if p.is_zero() {
                    return Err(EngineError::BadFact("zero polynomial".into()));
                }
                let (_, prim) = p.primitive_part(ORDER);
                if !self.nonzero.contains(&prim) {
                    self.nonzero.push(prim);
                }
            }
            FactKind::Positive(name) => {
                let idx = self.var_of(name)?;
                self.positive.push(idx);
            }
            FactKind::LowerBound(name, b) => {
                let idx = self.var_of(name)?;
                self.lower_bounds.push((idx, *b));
                if *b > 0 {
                    self.positive.push(idx);
                }
            }
            FactKind::Integer(name) => {
                let idx = self.var_of(name)?;
                self.integer.push(idx);
            }
            FactKind::PerfectSquare(name) => {
                let idx = self.var_of(name)?;
                self.perfect_square.push(idx);
                self.integer.push(idx);
            }
            FactKind::RootOfUnity(name) => {
                let idx = self.var_of(name)?;
                self.root_of_unity.push(idx);
            }
        }
        self.facts.push(fact);
        Ok(())
    }

    fn var_of(&self, name: &str) -> Result<usize, EngineError> {
        self.vars
            .index_of(name)
            .ok_or_else(|| EngineError::BadFact(format!("unknown symbol `{name}`")))
    }

    pub fn nonzero_polys(&self) -> &[MultiPoly] {
        &self.nonzero
    }

    pub fn is_positive_var(&self, idx: usize) -> bool {
        self.positive.contains(&idx)
    }

    pub fn is_real_var(&self, idx: usize) -> bool {
        self.real.get(idx).copied().unwrap_or(false)
    }

    pub fn is_integer_var(&self, idx: usize) -> bool {
        self.integer.contains(&idx)
    }

    pub fn is_perfect_square_var(&self, idx: usize) -> bool {
        self.perfect_square.contains(&idx)
    }

    pub fn is_root_of_unity_var(&self, idx: usize) -> bool {
        self.root_of_unity.contains(&idx)
    }

    pub fn lower_bound(&self, idx: usize) -> Option<i64> {
        self.lower_bounds
            .iter()
            .filter(|(v, _)| *v == idx)
            .map(|(_, b)| *b)
            .max()
    }

    /// Extends the registry to a larger variable table sharing this one as a
    /// prefix; fresh symbols start with no designations.
    pub fn extended(&self, bigger: &Vars, extra_real: &[bool]) -> FactRegistry {
        let mut real = self.real.clone();
        real.extend_from_slice(extra_real);
        assert_eq!(real.len(), bigger.len());
        let mut out = FactRegistry::new(bigger, real);
        out.cyclotomic_max_order = self.cyclotomic_max_order;
        for f in &self.facts {
            let mut f2 = f.clone();
            if let FactKind::Nonzero(_) = &f.kind {
                // re-parse against the bigger table
            }
            let _ = &mut f2;
            out.add(f.clone()).expect("re-adding facts");
        }
        out
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("bad fact: {0}")]
    BadFact(String),
    #[error("bad hint `{id}`: {msg}")]
    BadHint { id: String, msg: String },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

// ---------------------------------------------------------------------------
// Factor classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Classification {
    ProvablyNonzero(String),
    MustBeZeroImpossible(String),
    Unknown,
}

impl Classification {
    pub fn cannot_vanish(&self) -> bool {
        !matches!(self, Classification::Unknown)
    }
}

/// Decides whether a factor can be dismissed: products of registered nonzero
/// quantities, sign-definite sums over real symbols, root-of-unity
/// polynomials with no admissible cyclotomic divisor, and integer or
/// perfect-square violations.
pub fn classify_factor(f: &MultiPoly, facts: &FactRegistry) -> Classification {
    assert!(!f.is_zero());
    if f.is_constant() {
        return Classification::ProvablyNonzero("nonzero constant".into());
    }
    let (_, prim) = f.primitive_part(ORDER);

    // product of registered nonzero quantities (powers included)
    let mut rest = prim.clone();
    let mut used: Vec<String> = Vec::new();
    loop {
        let mut progressed = false;
        for nz in facts.nonzero_polys() {
            while let Some(q) = rest.exact_div(nz) {
                rest = q.primitive_part(ORDER).1;
                if !used.contains(&nz.to_string()) {
                    used.push(nz.to_string());
                }
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    if rest.is_constant() && !rest.is_zero() {
        return Classification::ProvablyNonzero(format!(
            "product of nonzero quantities: {}",
            used.join(", ")
        ));
    }

    if positivity_check(&prim, facts) {
        return Classification::ProvablyNonzero("sign-definite sum".into());
    }
    let neg = prim.neg();
    if positivity_check(&neg, facts) {
        return Classification::ProvablyNonzero("sign-definite sum".into());
    }

    let support = prim.support();
    if support.len() == 1 {
        let v = support[0];
        if facts.is_root_of_unity_var(v) && prim.has_integer_coeffs() {
            if let Ok(orders) = cyclotomic_candidates(&prim, v, facts.cyclotomic_max_order) {
                if orders.is_empty() {
                    return Classification::ProvablyNonzero(format!(
                        "no root of unity of order <= {} satisfies it",
                        facts.cyclotomic_max_order
                    ));
                }
            }
        }
        if facts.is_integer_var(v) {
            if let Some(root) = sole_integer_roots(&prim, v) {
                if root.is_empty() {
                    return Classification::MustBeZeroImpossible(format!(
                        "{} is an integer but the factor has no integer root",
                        facts.vars.name(v)
                    ));
                }
                if facts.is_perfect_square_var(v)
                    && root.iter().all(|r| !is_perfect_square(r))
                {
                    return Classification::MustBeZeroImpossible(format!(
                        "{} is a perfect square but the factor forces a non-square value",
                        facts.vars.name(v)
                    ));
                }
            }
        }
    }

    if let Some(reason) = bilinear_bound_rule(&prim, facts) {
        return Classification::ProvablyNonzero(reason);
    }

    Classification::Unknown
}

fn is_perfect_square(r: &Rat) -> bool {
    if !r.is_integer() || r.is_negative() {
        return false;
    }
    let n = r.numer().clone();
    let s = n.sqrt();
    &s * &s == n
}

/// Integer roots of a univariate polynomial (empty vector = provably none);
/// `None` when the check does not apply.
fn sole_integer_roots(p: &MultiPoly, v: usize) -> Option<Vec<Rat>> {
    let deg = p.degree_in(v)?;
    if deg == 0 || p.support().len() != 1 {
        return None;
    }
    let mut roots = Vec::new();
    // evaluate at integer candidates dividing the constant term
    let mut constant = Rat::zero();
    let mut lead = Rat::zero();
    for (m, c) in p.terms() {
        if m.exp(v) == 0 {
            constant += c.clone();
        }
        if m.exp(v) as u32 == deg {
            lead += c.clone();
        }
    }
    if constant.is_zero() {
        roots.push(Rat::zero());
        return Some(roots);
    }
    if !constant.is_integer() || !lead.is_integer() {
        return None;
    }
    let cnum = constant.numer().abs();
    let mut d = num_bigint::BigInt::one();
    while &d * &d <= cnum {
        if (&cnum % &d).is_zero() {
            for cand in [d.clone(), &cnum / &d] {
                for sign in [1, -1] {
                    let x = Rat::from_integer(&cand * num_bigint::BigInt::from(sign));
                    if eval_univar(p, v, &x).is_zero() && !roots.contains(&x) {
                        roots.push(x);
                    }
                }
            }
        }
        d += 1;
    }
    Some(roots)
}

fn eval_univar(p: &MultiPoly, v: usize, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for (m, c) in p.terms() {
        let mut pow = Rat::one();
        for _ in 0..m.exp(v) {
            pow *= x;
        }
        acc += c * pow;
    }
    acc
}

/// Sound, incomplete vanishing check: true when the polynomial is a
/// non-negative constant plus terms that are provably positive under the
/// registered positivity facts and even powers of real nonzero symbols, with
/// something strictly positive present.
pub fn positivity_check(f: &MultiPoly, facts: &FactRegistry) -> bool {
    if f.is_zero() {
        return false;
    }
    let mut has_strict = false;
    for (m, c) in f.terms() {
        if m.is_unit() {
            if c.is_negative() {
                return false;
            }
            has_strict = true;
            continue;
        }
        if c.is_negative() {
            return false;
        }
        let mut positive_term = true;
        for v in m.support() {
            if !facts.is_real_var(v) {
                return false;
            }
            if facts.is_positive_var(v) {
                continue;
            }
            // even powers of real nonzero symbols are positive
            let nz = facts
                .nonzero_polys()
                .iter()
                .any(|p| p == &MultiPoly::var(&f.vars().clone(), v));
            if m.exp(v) % 2 == 0 && nz {
                continue;
            }
            positive_term = false;
            break;
        }
        if !positive_term {
            return false;
        }
        has_strict = true;
    }
    has_strict
}

/// Bound rule for the shape `a*x*y + b*x + c*y + d` with `x, y >= 1`:
/// when the surface is bounded away from zero on the quadrant the factor
/// cannot vanish.
fn bilinear_bound_rule(f: &MultiPoly, facts: &FactRegistry) -> Option<String> {
    let support = f.support();
    if support.len() != 2 {
        return None;
    }
    let (x, y) = (support[0], support[1]);
    if facts.lower_bound(x).map_or(true, |b| b < 1) {
        return None;
    }
    if facts.lower_bound(y).map_or(true, |b| b < 1) {
        return None;
    }
    let mut a = Rat::zero();
    let mut bx = Rat::zero();
    let mut cy = Rat::zero();
    let mut d = Rat::zero();
    for (m, c) in f.terms() {
        match (m.exp(x), m.exp(y)) {
            (1, 1) => a += c.clone(),
            (1, 0) => bx += c.clone(),
            (0, 1) => cy += c.clone(),
            (0, 0) => d += c.clone(),
            _ => return None,
        }
    }
    // maximum over the quadrant exists iff a < 0, a+b <= 0, a+c <= 0 along
    // the edges; the maximum then sits at (1,1)
    let corner = &a + &bx + &cy + &d;
    if a < Rat::zero()
        && &a + &bx <= Rat::zero()
        && &a + &cy <= Rat::zero()
        && corner < Rat::zero()
    {
        return Some(format!(
            "bounded above by {} on the x,y >= 1 quadrant",
            corner
        ));
    }
    let neg = f.neg();
    let mut a = Rat::zero();
    let mut bx = Rat::zero();
    let mut cy = Rat::zero();
    let mut d = Rat::zero();
    for (m, c) in neg.terms() {
        match (m.exp(x), m.exp(y)) {
            (1, 1) => a += c.clone(),
            (1, 0) => bx += c.clone(),
            (0, 1) => cy += c.clone(),
            (0, 0) => d += c.clone(),
            _ => return None,
        }
    }
    let corner = &a + &bx + &cy + &d;
    if a < Rat::zero()
        && &a + &bx <= Rat::zero()
        && &a + &cy <= Rat::zero()
        && corner < Rat::zero()
    {
        return Some("bounded below away from zero on the x,y >= 1 quadrant".into());
    }
    None
}

// ---------------------------------------------------------------------------
// Basis analysis
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct FactorRow {
    pub element: String,
    pub factors: Vec<(String, u32, Classification)>,
    pub cofactor: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ForcedRelation {
    pub relation: MultiPoly,
    pub from_element: MultiPoly,
    pub nonzero_cofactors: Vec<(MultiPoly, String)>,
}

#[derive(Debug, Clone)]
pub struct BranchCandidate {
    pub element: MultiPoly,
    pub factors: Vec<MultiPoly>,
}

#[derive(Debug, Clone)]
pub enum Analysis {
    Contradiction {
        witness: MultiPoly,
        reasons: Vec<String>,
    },
    ForcedRelations(Vec<ForcedRelation>),
    Branches(Vec<BranchCandidate>),
    Quiet,
}

/// Scans every basis element: a fully nonzero factorization is a
/// contradiction, exactly one unknown factor forces a relation, several
/// unknown factors become a branch candidate. Forced relations accumulate
/// across all elements before branching is considered.
pub fn analyze_basis(
    gb: &GroebnerBasis,
    lib: &AtomLibrary,
    facts: &FactRegistry,
) -> (Analysis, Vec<FactorRow>) {
    let mut rows = Vec::new();
    let mut forced: Vec<ForcedRelation> = Vec::new();
    let mut branches: Vec<BranchCandidate> = Vec::new();

    for element in &gb.elements {
        if element.is_constant() && !element.is_zero() {
            rows.push(FactorRow {
                element: element.to_string(),
                factors: vec![(
                    element.to_string(),
                    1,
                    Classification::ProvablyNonzero("nonzero constant".into()),
                )],
                cofactor: None,
            });
            return (
                Analysis::Contradiction {
                    witness: element.clone(),
                    reasons: vec!["empty variety".into()],
                },
                rows,
            );
        }
        let fz = extract_factors(element, lib);
        let mut pieces: Vec<(MultiPoly, u32)> = fz.factors.clone();
        if !fz.cofactor.is_constant() {
            pieces.push((fz.cofactor.clone(), 1));
        }
        let mut classified: Vec<(MultiPoly, u32, Classification)> = pieces
            .iter()
            .map(|(p, m)| (p.clone(), *m, classify_factor(p, facts)))
            .collect();
        classified.sort_by(|(a, _, _), (b, _, _)| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.to_string().cmp(&b.to_string()))
        });
        rows.push(FactorRow {
            element: element.to_string(),
            factors: classified
                .iter()
                .map(|(p, m, c)| (p.to_string(), *m, c.clone()))
                .collect(),
            cofactor: if fz.cofactor.is_constant() {
                None
            } else {
                Some(fz.cofactor.to_string())
            },
        });

        let unknown: Vec<&(MultiPoly, u32, Classification)> = classified
            .iter()
            .filter(|(_, _, c)| !c.cannot_vanish())
            .collect();
        if unknown.is_empty() {
            let reasons = classified
                .iter()
                .map(|(p, _, c)| format!("{p}: {c:?}"))
                .collect();
            return (
                Analysis::Contradiction {
                    witness: element.clone(),
                    reasons,
                },
                rows,
            );
        }
        if unknown.len() == 1 {
            let relation = unknown[0].0.clone();
            let nonzero_cofactors = classified
                .iter()
                .filter(|(_, _, c)| c.cannot_vanish())
                .map(|(p, _, c)| (p.clone(), format!("{c:?}")))
                .collect();
            if !forced.iter().any(|f| f.relation == relation) {
                forced.push(ForcedRelation {
                    relation,
                    from_element: element.clone(),
                    nonzero_cofactors,
                });
            }
        } else if unknown.len() >= 2 {
            branches.push(BranchCandidate {
                element: element.clone(),
                factors: unknown.iter().map(|(p, _, _)| p.clone()).collect(),
            });
        }
    }

    // keep only forced relations that are new modulo the current basis
    forced.retain(|f| !normal_form(&f.relation, &gb.elements, gb.order).is_zero());
    if !forced.is_empty() {
        forced.sort_by(|a, b| {
            a.relation
                .degree()
                .cmp(&b.relation.degree())
                .then_with(|| a.relation.to_string().cmp(&b.relation.to_string()))
        });
        return (Analysis::ForcedRelations(forced), rows);
    }
    branches.retain(|b| {
        b.factors
            .iter()
            .any(|f| !normal_form(f, &gb.elements, gb.order).is_zero())
    });
    if !branches.is_empty() {
        branches.sort_by(|a, b| {
            a.element
                .degree()
                .cmp(&b.element.degree())
                .then_with(|| a.element.to_string().cmp(&b.element.to_string()))
        });
        return (Analysis::Branches(branches), rows);
    }
    (Analysis::Quiet, rows)
}

// ---------------------------------------------------------------------------
// Hints and cases
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Hint {
    pub id: String,
    /// Polynomial relation to add, if any.
    pub relation: Option<String>,
    /// Fact to add, if any.
    pub fact: Option<FactKind>,
    /// Non-empty free-text justification.
    pub justification: String,
    /// The hint fires once all these polynomials are in the node's ideal.
    #[serde(default)]
    pub when: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseBudget {
    pub max_depth: usize,
    pub max_nodes: usize,
    pub groebner: Budget,
    pub degree_cap: Option<u32>,
}

impl Default for CaseBudget {
    fn default() -> Self {
        CaseBudget {
            max_depth: 12,
            max_nodes: 500,
            groebner: Budget::default(),
            degree_cap: None,
        }
    }
}

/// One classification case, ready to run.
#[derive(Debug, Clone)]
pub struct CandidateCase {
    pub name: String,
    pub group: GroupCandidate,
    pub template: SMatrixTemplate,
    pub vars: Vars,
    pub relations: Vec<(String, MultiPoly)>,
    pub facts: FactRegistry,
    pub hints: Vec<Hint>,
    pub atoms: AtomLibrary,
    pub probes: Vec<MultiPoly>,
    /// Relations whose joint membership marks the case solved.
    pub solution_marks: Vec<MultiPoly>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub enum Outcome {
    Contradiction {
        witness: String,
        rule: String,
    },
    Solved {
        marks: Vec<String>,
    },
    Unresolved {
        reason: String,
    },
    Open,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct NodeRecord {
    pub id: usize,
    pub parent: Option<usize>,
    pub action: String,
    pub justification: String,
    pub added: Vec<String>,
    pub basis_len: usize,
    pub basis_max_degree: u32,
    pub basis_complete: bool,
    pub factor_rows: Vec<FactorRow>,
    pub outcome: Option<Outcome>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CaseTree {
    pub case_name: String,
    pub nodes: Vec<NodeRecord>,
}

impl CaseTree {
    pub fn root_outcomes(&self) -> Vec<&Outcome> {
        self.nodes
            .iter()
            .filter(|n| n.children.is_empty())
            .filter_map(|n| n.outcome.as_ref())
            .collect()
    }

    pub fn all_contradicted(&self) -> bool {
        let leaves = self.root_outcomes();
        !leaves.is_empty()
            && leaves
                .iter()
                .all(|o| matches!(o, Outcome::Contradiction { .. }))
    }

    pub fn any_solved(&self) -> bool {
        self.root_outcomes()
            .iter()
            .any(|o| matches!(o, Outcome::Solved { .. }))
    }

    pub fn any_unresolved(&self) -> bool {
        self.root_outcomes()
            .iter()
            .any(|o| matches!(o, Outcome::Unresolved { .. } | Outcome::Open))
    }

    /// Deterministic plain-text rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("case {}\n", self.case_name));
        for n in &self.nodes {
            out.push_str(&format!(
                "node {} parent {} action {} :: {}\n",
                n.id,
                n.parent.map_or("-".to_string(), |p| p.to_string()),
                n.action,
                n.justification,
            ));
            for a in &n.added {
                out.push_str(&format!("  + {a}\n"));
            }
            out.push_str(&format!(
                "  basis: {} elements, max degree {}, complete {}\n",
                n.basis_len, n.basis_max_degree, n.basis_complete
            ));
            for row in &n.factor_rows {
                let fs: Vec<String> = row
                    .factors
                    .iter()
                    .map(|(p, m, c)| {
                        let tag = match c {
                            Classification::ProvablyNonzero(_) => "nonzero",
                            Classification::MustBeZeroImpossible(_) => "impossible",
                            Classification::Unknown => "open",
                        };
                        if *m > 1 {
                            format!("({p})^{m}[{tag}]")
                        } else {
                            format!("({p})[{tag}]")
                        }
                    })
                    .collect();
                out.push_str(&format!("  factored: {} => {}\n", row.element, fs.join(" ")));
            }
            if let Some(o) = &n.outcome {
                out.push_str(&format!("  outcome: {o:?}\n"));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// The run loop
// ---------------------------------------------------------------------------

struct Runner<'a> {
    case: &'a CandidateCase,
    budget: &'a CaseBudget,
    nodes: Vec<NodeRecord>,
    hint_used: Vec<bool>,
}

/// Depth-first deduction: Groebner run, probe memberships, reality check,
/// factor analysis; then forced relations, hints, or branches; terminal
/// outcomes otherwise. Every added t-relation is closed under the group's
/// index action.
pub fn run_case(case: &CandidateCase, budget: &CaseBudget) -> CaseTree {
    let mut runner = Runner {
        case,
        budget,
        nodes: Vec::new(),
        hint_used: vec![false; case.hints.len()],
    };
    let base: Vec<(String, MultiPoly)> = case.relations.clone();
    let n0 = base.len();
    runner.expand(
        None,
        "initial".into(),
        "orthogonality + twist + declared".into(),
        base,
        n0,
        0,
    );
    CaseTree {
        case_name: case.name.clone(),
        nodes: runner.nodes,
    }
}

impl<'a> Runner<'a> {
    fn expand(
        &mut self,
        parent: Option<usize>,
        action: String,
        justification: String,
        relations: Vec<(String, MultiPoly)>,
        new_from: usize,
        depth: usize,
    ) -> usize {
        let id = self.nodes.len();
        let added: Vec<String> = relations[new_from.min(relations.len())..]
            .iter()
            .map(|(n, p)| format!("{n} = {p}"))
            .collect();
        self.nodes.push(NodeRecord {
            id,
            parent,
            action,
            justification,
            added,
            basis_len: 0,
            basis_max_degree: 0,
            basis_complete: false,
            factor_rows: Vec::new(),
            outcome: None,
            children: Vec::new(),
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(id);
        }

        if self.nodes.len() > self.budget.max_nodes {
            self.nodes[id].outcome = Some(Outcome::Unresolved {
                reason: "node budget exhausted".into(),
            });
            return id;
        }
        if depth > self.budget.max_depth {
            self.nodes[id].outcome = Some(Outcome::Unresolved {
                reason: "depth budget exhausted".into(),
            });
            return id;
        }

        let ideal = Ideal::new(
            relations.iter().map(|(_, p)| p.clone()).collect(),
            ORDER,
        );
        let gb = match buchberger(&ideal, self.budget.degree_cap, &self.budget.groebner) {
            Ok(gb) => gb,
            Err(GroebnerError::ResourceLimit { pairs, millis, partial }) => {
                self.nodes[id].basis_len = partial.elements.len();
                self.nodes[id].basis_max_degree = partial.max_degree;
                self.nodes[id].outcome = Some(Outcome::Unresolved {
                    reason: format!("groebner budget exhausted after {pairs} pairs / {millis} ms"),
                });
                return id;
            }
            Err(e) => {
                self.nodes[id].outcome = Some(Outcome::Unresolved {
                    reason: format!("groebner failure: {e}"),
                });
                return id;
            }
        };
        self.nodes[id].basis_len = gb.elements.len();
        self.nodes[id].basis_max_degree = gb.max_degree;
        self.nodes[id].basis_complete = gb.complete;

        if gb.is_empty_variety() {
            self.nodes[id].outcome = Some(Outcome::Contradiction {
                witness: "1".into(),
                rule: "empty variety".into(),
            });
            return id;
        }

        // membership probes over products of quantities that cannot vanish
        for probe in self.probe_polys() {
            if normal_form(&probe, &gb.elements, gb.order).is_zero() {
                self.nodes[id].outcome = Some(Outcome::Contradiction {
                    witness: probe.to_string(),
                    rule: "product of nonzero quantities lies in the ideal".into(),
                });
                return id;
            }
        }

        // reality rule on non-self-dual columns
        if let Some(col) = self.real_nsd_column(&gb) {
            self.nodes[id].outcome = Some(Outcome::Contradiction {
                witness: format!("column {col}"),
                rule: "non-self-dual column forced entirely real".into(),
            });
            return id;
        }

        let (analysis, rows) = analyze_basis(&gb, &self.case.atoms, &self.case.facts);
        self.nodes[id].factor_rows = rows;

        match analysis {
            Analysis::Contradiction { witness, reasons } => {
                self.nodes[id].outcome = Some(Outcome::Contradiction {
                    witness: witness.to_string(),
                    rule: reasons.join("; "),
                });
                id
            }
            Analysis::ForcedRelations(forced) => {
                let mut rels = relations.clone();
                let mut names = Vec::new();
                for f in &forced {
                    let name = format!("h{}", self.next_h_index(&rels));
                    names.push(name.clone());
                    rels.push((name, f.relation.clone()));
                    for closed in self.t_closure(&f.relation) {
                        if !rels.iter().any(|(_, p)| *p == closed) {
                            let cname = format!("h{}", self.next_h_index(&rels));
                            rels.push((cname, closed));
                        }
                    }
                }
                let just = forced
                    .iter()
                    .map(|f| {
                        format!(
                            "forced: {} vanishes because {} factors as it does and the cofactors cannot vanish",
                            f.relation, f.from_element
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("; ");
                let nf = relations.len();
                self.expand(
                    Some(id),
                    format!("add {}", names.join(", ")),
                    just,
                    rels,
                    nf,
                    depth + 1,
                );
                id
            }
            Analysis::Branches(branches) => {
                if let Some(hid) = self.applicable_hint(&gb) {
                    self.apply_hint_node(id, hid, &relations, depth);
                    return id;
                }
                let b = &branches[0];
                for factor in &b.factors {
                    let mut rels = relations.clone();
                    let name = format!("h{}", self.next_h_index(&rels));
                    rels.push((name, factor.clone()));
                    for closed in self.t_closure(factor) {
                        if !rels.iter().any(|(_, p)| *p == closed) {
                            let cname = format!("h{}", self.next_h_index(&rels));
                            rels.push((cname, closed));
                        }
                    }
                    self.expand(
                        Some(id),
                        format!("branch {factor}"),
                        format!("factor of {}", b.element),
                        rels,
                        relations.len(),
                        depth + 1,
                    );
                }
                id
            }
            Analysis::Quiet => {
                if let Some(hid) = self.applicable_hint(&gb) {
                    self.apply_hint_node(id, hid, &relations, depth);
                    return id;
                }
                // solution marks all in the ideal -> solved
                if !self.case.solution_marks.is_empty()
                    && self
                        .case
                        .solution_marks
                        .iter()
                        .all(|m| normal_form(m, &gb.elements, gb.order).is_zero())
                {
                    self.nodes[id].outcome = Some(Outcome::Solved {
                        marks: self
                            .case
                            .solution_marks
                            .iter()
                            .map(|m| m.to_string())
                            .collect(),
                    });
                    return id;
                }
                self.nodes[id].outcome = Some(Outcome::Open);
                id
            }
        }
    }

    fn next_h_index(&self, rels: &[(String, MultiPoly)]) -> usize {
        let mut max = 0usize;
        for (n, _) in rels {
            if let Some(stripped) = n.strip_prefix('h') {
                if let Ok(k) = stripped.parse::<usize>() {
                    max = max.max(k);
                }
            }
        }
        max + 1
    }

    fn probe_polys(&self) -> Vec<MultiPoly> {
        let mut pool: Vec<MultiPoly> = self.case.facts.nonzero_polys().to_vec();
        for (i, _) in self.case.vars.names().iter().enumerate() {
            if self.case.facts.is_root_of_unity_var(i) {
                let v = MultiPoly::var(&self.case.vars, i);
                if !pool.contains(&v) {
                    pool.push(v);
                }
            }
        }
        let mut probes: Vec<MultiPoly> = Vec::new();
        for i in 0..pool.len() {
            probes.push(pool[i].clone());
            for j in (i + 1)..pool.len() {
                probes.push(pool[i].mul(&pool[j]));
                for k in (j + 1)..pool.len() {
                    probes.push(pool[i].mul(&pool[j]).mul(&pool[k]));
                }
            }
        }
        probes.extend(self.case.probes.iter().cloned());
        probes
    }

    /// A non-self-dual column all of whose conjugate pairs are forced real.
    fn real_nsd_column(&self, gb: &GroebnerBasis) -> Option<usize> {
        for (col, pairs) in &self.case.template.nsd_column_pairs {
            if pairs.is_empty() {
                continue;
            }
            let all_real = pairs.iter().all(|(x, y)| {
                if x == y {
                    return true;
                }
                let x = crate::template::reindex(x, &self.case.vars);
                let y = crate::template::reindex(y, &self.case.vars);
                let diff = x.sub(&y);
                if normal_form(&diff, &gb.elements, gb.order).is_zero() {
                    return true;
                }
                // x congruent to an expression in real symbols only
                let nx = normal_form(&x, &gb.elements, gb.order);
                nx.support()
                    .iter()
                    .all(|&v| self.case.facts.is_real_var(v))
            });
            if all_real {
                return Some(*col);
            }
        }
        None
    }

    fn applicable_hint(&mut self, gb: &GroebnerBasis) -> Option<usize> {
        for (i, hint) in self.case.hints.iter().enumerate() {
            if self.hint_used[i] {
                continue;
            }
            let ready = hint.when.iter().all(|w| {
                crate::exactpoly::parse_poly(w, &self.case.vars)
                    .map(|p| normal_form(&p, &gb.elements, gb.order).is_zero())
                    .unwrap_or(false)
            });
            if ready {
                self.hint_used[i] = true;
                return Some(i);
            }
        }
        None
    }

    fn apply_hint_node(
        &mut self,
        id: usize,
        hint_idx: usize,
        relations: &[(String, MultiPoly)],
        depth: usize,
    ) {
        let hint = &self.case.hints[hint_idx];
        let mut rels = relations.to_vec();
        if let Some(text) = &hint.relation {
            match crate::exactpoly::parse_poly(text, &self.case.vars) {
                Ok(p) => {
                    let name = format!("h{}", self.next_h_index(&rels));
                    rels.push((name, p.clone()));
                    for closed in self.t_closure(&p) {
                        if !rels.iter().any(|(_, q)| *q == closed) {
                            let cname = format!("h{}", self.next_h_index(&rels));
                            rels.push((cname, closed));
                        }
                    }
                }
                Err(e) => {
                    self.nodes[id].outcome = Some(Outcome::Unresolved {
                        reason: format!("hint {} failed to parse: {e}", hint.id),
                    });
                    return;
                }
            }
        }
        // fact hints mutate a clone of the case; recorded in the trace
        let action = format!("hint {}", hint.id);
        let just = hint.justification.clone();
        if let Some(kind) = hint.fact.clone() {
            let mut case2 = self.case.clone();
            if case2
                .facts
                .add(Fact {
                    kind,
                    provenance: format!("hint {}", hint.id),
                })
                .is_err()
            {
                self.nodes[id].outcome = Some(Outcome::Unresolved {
                    reason: format!("hint {} adds a malformed fact", hint.id),
                });
                return;
            }
            let mut sub = Runner {
                case: &case2,
                budget: self.budget,
                nodes: std::mem::take(&mut self.nodes),
                hint_used: std::mem::take(&mut self.hint_used),
            };
            sub.expand(Some(id), action, just, rels, relations.len(), depth + 1);
            self.nodes = sub.nodes;
            self.hint_used = sub.hint_used;
            return;
        }
        self.expand(Some(id), action, just, rels, relations.len(), depth + 1);
    }

    /// Index-action closure for t-equality patterns: when the added relation
    /// is `t_i +/- t_j` or `t_i +/- 1`, its translates along every group
    /// element are added too.
    fn t_closure(&self, relation: &MultiPoly) -> Vec<MultiPoly> {
        let template = &self.case.template;
        let r = template.rank;
        let mut pattern = None;
        'search: for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let ti = crate::template::reindex(&template.t_diag[i], &self.case.vars);
                let tj = crate::template::reindex(&template.t_diag[j], &self.case.vars);
                let diff = ti.sub(&tj);
                let sum = ti.add(&tj);
                let (_, prel) = relation.primitive_part(ORDER);
                if !diff.is_zero() && prel == diff.primitive_part(ORDER).1 {
                    pattern = Some((i, j, false));
                    break 'search;
                }
                if !sum.is_zero() && prel == sum.primitive_part(ORDER).1 {
                    pattern = Some((i, j, true));
                    break 'search;
                }
            }
        }
        let Some((i, j, negated)) = pattern else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for g in &self.case.group.elements {
            let (gi, gj) = (g.apply(i), g.apply(j));
            let ti = crate::template::reindex(&template.t_diag[gi], &self.case.vars);
            let tj = crate::template::reindex(&template.t_diag[gj], &self.case.vars);
            let rel = if negated { ti.add(&tj) } else { ti.sub(&tj) };
            if rel.is_zero() {
                continue;
            }
            let (_, prim) = rel.primitive_part(ORDER);
            if prim != relation.primitive_part(ORDER).1 && !out.contains(&prim) {
                out.push(prim);
            }
        }
        out.sort_by_key(|p| p.to_string());
        out
    }
}

// ---------------------------------------------------------------------------
// Terminal solving
// ---------------------------------------------------------------------------

/// Eliminates down to one kept variable and returns the univariate factors
/// that can actually vanish at an algebraic integer (non-monic irreducible
/// factors are dropped; with an INTEGER fact only integer-rooted linear
/// factors survive).
pub fn solve_terminal(
    relations: &[MultiPoly],
    keep_var: usize,
    facts: &FactRegistry,
    budget: &Budget,
) -> Result<Vec<MultiPoly>, EngineError> {
    let nvars = facts.vars.len();
    if keep_var + 1 != nvars {
        // the kept variable must be the trailing one for the elimination
        // order to apply; callers reorder the ring if needed
        return Err(EngineError::BadFact(format!(
            "kept variable must be the last of the table (got {keep_var} of {nvars})"
        )));
    }
    let ideal = Ideal::new(relations.to_vec(), ORDER);
    let outs = crate::groebner::eliminate_solve(&ideal, 1, budget)?;
    let Some(best) = outs
        .iter()
        .filter(|p| !p.is_zero())
        .min_by_key(|p| p.degree().unwrap_or(u32::MAX))
    else {
        return Err(EngineError::BadFact(
            "elimination produced no univariate polynomial; the ideal is not zero-dimensional over the kept variable"
                .into(),
        ));
    };
    let fz = crate::factorlab::factor_univariate(best, 24);
    let mut survivors = Vec::new();
    for (factor, _) in fz.factors {
        let (lm, lc) = factor.leading_term(ORDER).unwrap();
        let _ = lm;
        let monic = lc.is_one() || *lc == -Rat::one();
        if !monic {
            // an algebraic integer is never a root of a primitive non-monic
            // irreducible integer polynomial
            continue;
        }
        if facts.is_integer_var(keep_var) {
            if factor.degree() != Some(1) {
                continue;
            }
            if sole_integer_roots(&factor, keep_var).map_or(true, |r| r.is_empty()) {
                continue;
            }
        }
        survivors.push(factor);
    }
    Ok(survivors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, VarTable};

    fn registry(vars: &Vars) -> FactRegistry {
        let real = vec![true; vars.len()];
        FactRegistry::new(vars, real)
    }

    #[test]
    fn classify_examples() {
        let vars = VarTable::new(vec!["p", "D", "a1", "a2", "d1", "d2", "d3"]);
        let mut facts = registry(&vars);
        for name in ["p", "D", "d1", "d2", "d3"] {
            facts
                .add(Fact {
                    kind: FactKind::Nonzero(name.into()),
                    provenance: "admissibility".into(),
                })
                .unwrap();
        }
        for name in ["d1", "d2", "d3"] {
            facts
                .add(Fact {
                    kind: FactKind::Positive(name.into()),
                    provenance: "dimension column".into(),
                })
                .unwrap();
        }
        let pd = parse_poly("p*D", &vars).unwrap();
        assert!(matches!(
            classify_factor(&pd, &facts),
            Classification::ProvablyNonzero(_)
        ));

        let s = parse_poly("1+d1^2+d2^2+d3^2", &vars).unwrap();
        assert!(matches!(
            classify_factor(&s, &facts),
            Classification::ProvablyNonzero(_)
        ));

        let unknown = parse_poly("a1+a2", &vars).unwrap();
        assert_eq!(classify_factor(&unknown, &facts), Classification::Unknown);
    }

    #[test]
    fn positivity_examples() {
        let vars = VarTable::new(vec!["d1", "d2", "d3"]);
        let mut facts = registry(&vars);
        for name in ["d1", "d2", "d3"] {
            facts
                .add(Fact {
                    kind: FactKind::LowerBound(name.into(), 1),
                    provenance: "dimension column".into(),
                })
                .unwrap();
        }
        assert!(positivity_check(
            &parse_poly("d1^2+d2^2+1", &vars).unwrap(),
            &facts
        ));
        assert!(positivity_check(
            &parse_poly("d2*d3", &vars).unwrap(),
            &facts
        ));
        assert!(!positivity_check(
            &parse_poly("d1+d2-d1*d2", &vars).unwrap(),
            &facts
        ));
        // the bilinear rule picks it up once a constant pushes it negative
        let f = parse_poly("d1+d2-d1*d2-2", &vars).unwrap();
        assert!(matches!(
            classify_factor(&f, &facts),
            Classification::ProvablyNonzero(_)
        ));
    }

    #[test]
    fn integer_violation() {
        let vars = VarTable::new(vec!["z"]);
        let mut facts = registry(&vars);
        facts
            .add(Fact {
                kind: FactKind::Integer("z".into()),
                provenance: "orbit polynomial coefficient".into(),
            })
            .unwrap();
        let f = parse_poly("4*z+2", &vars).unwrap();
        assert!(matches!(
            classify_factor(&f, &facts),
            Classification::MustBeZeroImpossible(_)
        ));
        let g = parse_poly("z-3", &vars).unwrap();
        assert_eq!(classify_factor(&g, &facts), Classification::Unknown);
    }

    #[test]
    fn perfect_square_violation() {
        let vars = VarTable::new(vec!["z"]);
        let mut facts = registry(&vars);
        facts
            .add(Fact {
                kind: FactKind::PerfectSquare("z".into()),
                provenance: "square of an integer ratio".into(),
            })
            .unwrap();
        let f = parse_poly("z-2", &vars).unwrap();
        assert!(matches!(
            classify_factor(&f, &facts),
            Classification::MustBeZeroImpossible(_)
        ));
        let g = parse_poly("z-4", &vars).unwrap();
        assert_eq!(classify_factor(&g, &facts), Classification::Unknown);
    }

    #[test]
    fn root_of_unity_rule() {
        let vars = VarTable::new(vec!["t2"]);
        let mut facts = registry(&vars);
        facts
            .add(Fact {
                kind: FactKind::RootOfUnity("t2".into()),
                provenance: "twist".into(),
            })
            .unwrap();
        let f = parse_poly("t2-2", &vars).unwrap();
        assert!(matches!(
            classify_factor(&f, &facts),
            Classification::ProvablyNonzero(_)
        ));
        let g = parse_poly("t2^2+t2+1", &vars).unwrap();
        assert_eq!(classify_factor(&g, &facts), Classification::Unknown);
    }

    #[test]
    fn analyze_forced_and_branch() {
        let vars = VarTable::new(vec!["p", "D", "d2", "t2", "t3"]);
        let mut facts = registry(&vars);
        for name in ["p", "D", "d2"] {
            facts
                .add(Fact {
                    kind: FactKind::Nonzero(name.into()),
                    provenance: "admissibility".into(),
                })
                .unwrap();
        }
        for name in ["t2", "t3"] {
            facts
                .add(Fact {
                    kind: FactKind::RootOfUnity(name.into()),
                    provenance: "twist".into(),
                })
                .unwrap();
        }
        let lib = AtomLibrary::new(vec![
            parse_poly("p", &vars).unwrap(),
            parse_poly("D", &vars).unwrap(),
            parse_poly("d2", &vars).unwrap(),
            parse_poly("p^2+D", &vars).unwrap(),
            parse_poly("t3-1", &vars).unwrap(),
            parse_poly("t3-t2", &vars).unwrap(),
            parse_poly("t2+1", &vars).unwrap(),
        ]);

        // forced relation: d2 (p^2 + D)
        let gens = vec![parse_poly("d2*(p^2+D)", &vars).unwrap()];
        let gb = buchberger(&Ideal::new(gens, ORDER), None, &Budget::default()).unwrap();
        let (analysis, _) = analyze_basis(&gb, &lib, &facts);
        match analysis {
            Analysis::ForcedRelations(f) => {
                assert_eq!(f.len(), 1);
                assert_eq!(f[0].relation, parse_poly("p^2+D", &vars).unwrap());
            }
            other => panic!("expected forced relation, got {other:?}"),
        }

        // contradiction: p*D
        let gens = vec![parse_poly("p*D", &vars).unwrap()];
        let gb = buchberger(&Ideal::new(gens, ORDER), None, &Budget::default()).unwrap();
        let (analysis, _) = analyze_basis(&gb, &lib, &facts);
        assert!(matches!(analysis, Analysis::Contradiction { .. }));

        // branch: (t3 - 1)(t3 - t2)(t2 + 1)
        let gens = vec![parse_poly("(t3-1)*(t3-t2)*(t2+1)", &vars).unwrap()];
        let gb = buchberger(&Ideal::new(gens, ORDER), None, &Budget::default()).unwrap();
        let (analysis, _) = analyze_basis(&gb, &lib, &facts);
        match analysis {
            Analysis::Branches(b) => {
                assert_eq!(b[0].factors.len(), 3);
            }
            other => panic!("expected branches, got {other:?}"),
        }
    }

    #[test]
    fn solve_terminal_examples() {
        // ideal {x^2 - 1, y - x}, keep x: table ordered (y, x)
        let vars = VarTable::new(vec!["y", "x"]);
        let facts = registry(&vars);
        let rels = vec![
            parse_poly("x^2-1", &vars).unwrap(),
            parse_poly("y-x", &vars).unwrap(),
        ];
        let out = solve_terminal(&rels, 1, &facts, &Budget::default()).unwrap();
        let strs: Vec<String> = out.iter().map(|p| p.to_string()).collect();
        assert!(strs.contains(&"x - 1".to_string()));
        assert!(strs.contains(&"x + 1".to_string()));

        // {2x - 1} with INTEGER(x): no survivors
        let vars = VarTable::new(vec!["w", "x"]);
        let mut facts = registry(&vars);
        facts
            .add(Fact {
                kind: FactKind::Integer("x".into()),
                provenance: "declared".into(),
            })
            .unwrap();
        let rels = vec![
            parse_poly("2*x-1", &vars).unwrap(),
            parse_poly("w", &vars).unwrap(),
        ];
        let out = solve_terminal(&rels, 1, &facts, &Budget::default()).unwrap();
        assert!(out.is_empty());
    }
}
