//! Symbolic (S, T) templates: build the entry grid from a group candidate and
//! sign assignment, enumerate and prune sign choices, and generate the
//! first-round polynomial relations.

use crate::exactpoly::{MonomialOrder, MultiPoly, Rat, VarTable, Vars};
use crate::symmetry::{DualityInvolution, GroupCandidate, Permutation};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

const ORDER: MonomialOrder = MonomialOrder::GradedRevLex;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TemplateError {
    #[error("inconsistent sign assignment: {0}")]
    InconsistentSigns(String),
    #[error("sign function shape mismatch")]
    SignShape,
    #[error("too many sign symbols")]
    TooManySignSymbols,
    #[error("generator count mismatch")]
    GeneratorMismatch,
}

/// A formal sign: +/-1 times a square-free monomial in named sign symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignExpr {
    pub neg: bool,
    pub parities: u64,
}

impl SignExpr {
    pub fn plus() -> Self {
        SignExpr {
            neg: false,
            parities: 0,
        }
    }

    pub fn minus() -> Self {
        SignExpr {
            neg: true,
            parities: 0,
        }
    }

    pub fn symbol(idx: usize) -> Self {
        SignExpr {
            neg: false,
            parities: 1u64 << idx,
        }
    }

    pub fn mul(&self, other: &SignExpr) -> SignExpr {
        SignExpr {
            neg: self.neg ^ other.neg,
            parities: self.parities ^ other.parities,
        }
    }

    pub fn is_one(&self) -> bool {
        !self.neg && self.parities == 0
    }

    pub fn is_concrete(&self) -> bool {
        self.parities == 0
    }

    /// Renders like `+`, `-`, `+e`, `-e1*e2`.
    pub fn render(&self, symbols: &[String]) -> String {
        let mut out = String::from(if self.neg { "-" } else { "+" });
        let mut first = true;
        for (i, name) in symbols.iter().enumerate() {
            if self.parities & (1 << i) != 0 {
                if !first {
                    out.push('*');
                }
                out.push_str(name);
                first = false;
            }
        }
        out
    }

    /// Parses `+`, `-`, `e`, `-e`, `e1*e2`, `+1`, `-1`.
    pub fn parse(text: &str, symbols: &[String]) -> Result<SignExpr, TemplateError> {
        let mut t = text.trim();
        let mut neg = false;
        if let Some(rest) = t.strip_prefix('-') {
            neg = true;
            t = rest.trim();
        } else if let Some(rest) = t.strip_prefix('+') {
            t = rest.trim();
        }
        let mut parities = 0u64;
        if !t.is_empty() && t != "1" {
            for part in t.split('*') {
                let idx = symbols
                    .iter()
                    .position(|s| s == part.trim())
                    .ok_or_else(|| {
                        TemplateError::InconsistentSigns(format!(
                            "unknown sign symbol `{part}`"
                        ))
                    })?;
                parities ^= 1u64 << idx;
            }
        }
        Ok(SignExpr { neg, parities })
    }
}

/// Sign functions for each group generator, plus the shared sign-symbol
/// table for symbolic assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignFunction {
    pub sign_symbols: Vec<String>,
    pub per_generator: Vec<Vec<SignExpr>>,
}

impl SignFunction {
    pub fn all_plus(generators: usize, rank: usize) -> Self {
        SignFunction {
            sign_symbols: Vec::new(),
            per_generator: vec![vec![SignExpr::plus(); rank]; generators],
        }
    }

    pub fn is_concrete(&self) -> bool {
        self.per_generator
            .iter()
            .all(|v| v.iter().all(|e| e.is_concrete()))
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        self.per_generator
            .iter()
            .map(|v| v.iter().map(|e| e.render(&self.sign_symbols)).collect())
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Signed union-find over entry positions
// ---------------------------------------------------------------------------

struct SignedUf {
    parent: Vec<usize>,
    weight: Vec<SignExpr>, // value(x) = weight(x) * value(parent)
    zero: Vec<bool>,       // set on roots forced to vanish
    conflict: Vec<Option<SignExpr>>, // non-vanishing symbolic conflict on root
}

impl SignedUf {
    fn new(n: usize) -> Self {
        SignedUf {
            parent: (0..n).collect(),
            weight: vec![SignExpr::plus(); n],
            zero: vec![false; n],
            conflict: vec![None; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, SignExpr) {
        if self.parent[x] == x {
            return (x, SignExpr::plus());
        }
        let (root, w) = self.find(self.parent[x]);
        let total = self.weight[x].mul(&w);
        self.parent[x] = root;
        self.weight[x] = total.clone();
        (root, total)
    }

    /// Impose value(a) = w * value(b).
    fn union(&mut self, a: usize, b: usize, w: SignExpr) {
        let (ra, wa) = self.find(a);
        let (rb, wb) = self.find(b);
        if ra == rb {
            // cycle: value(ra) = wa^-1 * w * wb * value(ra)
            let total = wa.mul(&w).mul(&wb);
            if !total.is_one() {
                if total.is_concrete() {
                    self.zero[ra] = true;
                } else {
                    self.conflict[ra] = Some(total);
                }
            }
            return;
        }
        // value(ra) = wa^-1 * value(a) = wa^-1 w value(b) = wa^-1 w wb value(rb)
        let total = wa.mul(&w).mul(&wb);
        self.parent[ra] = rb;
        self.weight[ra] = total;
        if self.zero[ra] {
            self.zero[rb] = true;
        }
        if let Some(c) = self.conflict[ra].take() {
            self.conflict[rb] = Some(c);
        }
    }
}

// ---------------------------------------------------------------------------
// Template
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SymbolRole {
    /// D stands for the squared total dimension.
    DTotal,
    Dim(usize),
    Interior,
    IntegerCoeff,
    Eigen,
    Twist(usize),
    P,
    Sign,
}

/// Symbolic r x r S-matrix with its structurally conjugated twin and the
/// diagonal T, over a shared symbol table.
#[derive(Debug, Clone)]
pub struct SMatrixTemplate {
    pub rank: usize,
    pub vars: Vars,
    pub entries: Vec<Vec<MultiPoly>>,
    pub t_diag: Vec<MultiPoly>,
    pub star: DualityInvolution,
    pub roles: Vec<SymbolRole>,
    pub real_symbols: Vec<bool>,
    /// Per non-self-dual column: conjugate entry pairs (x, conj x) that carry
    /// the column's potential non-real content.
    pub nsd_column_pairs: Vec<(usize, Vec<(MultiPoly, MultiPoly)>)>,
    /// Square relations (and the sign-product relation for self-dual data)
    /// for symbolic sign symbols.
    pub sign_relations: Vec<MultiPoly>,
}

impl SMatrixTemplate {
    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    /// Conjugate grid: conj(S)_ij = S_(i*)j.
    pub fn conj_entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[self.star.star(i)][j]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.index_of(name)
    }

    pub fn d_poly(&self) -> MultiPoly {
        MultiPoly::var_named(&self.vars, "D").unwrap()
    }

    pub fn p_poly(&self) -> MultiPoly {
        MultiPoly::var_named(&self.vars, "p").unwrap()
    }

    /// Canonical grid rendering used for golden comparisons and relabeling
    /// checks.
    pub fn render_grid(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect()
    }
}

struct NameAlloc {
    names: Vec<String>,
    roles: Vec<SymbolRole>,
}

impl NameAlloc {
    fn push(&mut self, name: String, role: SymbolRole) -> usize {
        self.names.push(name);
        self.roles.push(role);
        self.names.len() - 1
    }
}

/// Builds the symbolic template: entries are unified into a minimal symbol
/// set by closing over transpose symmetry, dual symmetry, the Galois
/// symmetry for every generator, and conjugate-grid identification. Entries
/// whose closure forces x = -x become 0; entries tied to the (0,0) slot
/// become +/-1.
pub fn build_template(
    group: &GroupCandidate,
    signs: &SignFunction,
) -> Result<SMatrixTemplate, TemplateError> {
    let r = group.rank();
    if signs.per_generator.len() != group.generators.len() {
        return Err(TemplateError::GeneratorMismatch);
    }
    for v in &signs.per_generator {
        if v.len() != r {
            return Err(TemplateError::SignShape);
        }
    }
    if signs.sign_symbols.len() > 60 {
        return Err(TemplateError::TooManySignSymbols);
    }
    let star = &group.duality;
    let pos = |i: usize, j: usize| i * r + j;

    let mut uf = SignedUf::new(r * r);
    for i in 0..r {
        for j in 0..r {
            uf.union(pos(i, j), pos(j, i), SignExpr::plus());
            uf.union(pos(i, j), pos(star.star(i), star.star(j)), SignExpr::plus());
        }
    }
    for (g, eps) in group.generators.iter().zip(&signs.per_generator) {
        let ginv = g.inverse();
        for i in 0..r {
            for j in 0..r {
                let w = eps[g.apply(i)].mul(&eps[j]);
                uf.union(pos(i, j), pos(g.apply(i), ginv.apply(j)), w);
            }
        }
    }

    // classify classes
    let mut class_info: BTreeMap<usize, ClassKind> = BTreeMap::new();
    for i in 0..r {
        for j in 0..r {
            let (root, _) = uf.find(pos(i, j));
            class_info.entry(root).or_insert(ClassKind::Interior);
        }
    }
    // mark row-0 classes
    for j in 0..r {
        let (root, _) = uf.find(pos(0, j));
        let kind = if j == 0 { ClassKind::Unit } else { ClassKind::Dim(j) };
        let slot = class_info.get_mut(&root).unwrap();
        *slot = match (&slot, kind) {
            (ClassKind::Unit, _) | (_, ClassKind::Unit) => ClassKind::Unit,
            (ClassKind::Dim(a), ClassKind::Dim(b)) => ClassKind::Dim(*a.min(&b)),
            (_, k) => k,
        };
    }

    // reject zero or symbolically conflicted row-0 classes
    for j in 0..r {
        let (root, _) = uf.find(pos(0, j));
        if uf.zero[root] {
            return Err(TemplateError::InconsistentSigns(format!(
                "row-0 entry at column {j} forced to vanish"
            )));
        }
        if let Some(c) = &uf.conflict[root] {
            return Err(TemplateError::InconsistentSigns(format!(
                "row-0 entry at column {j} forced equal to {} times itself",
                c.render(&signs.sign_symbols)
            )));
        }
    }

    // interior symbolic conflicts: a nonzero symbolic weight on a cycle
    // cannot be resolved structurally
    for (root, kind) in &class_info {
        if matches!(kind, ClassKind::Interior) {
            if let Some(c) = &uf.conflict[*root] {
                return Err(TemplateError::InconsistentSigns(format!(
                    "interior entry class forced equal to {} times itself",
                    c.render(&signs.sign_symbols)
                )));
            }
        }
    }

    // T diagonal identification: t_i = t_(i*), t_0 = 1
    let mut t_name_of: Vec<Option<usize>> = vec![None; r];
    for i in 1..r {
        let partner = star.star(i);
        let rep = i.min(partner);
        t_name_of[i] = Some(rep);
    }

    // assemble the variable table: D, dims, interior, p, twists, signs
    let mut alloc = NameAlloc {
        names: Vec::new(),
        roles: Vec::new(),
    };
    alloc.push("D".to_string(), SymbolRole::DTotal);
    let mut dim_var: BTreeMap<usize, usize> = BTreeMap::new();
    for j in 1..r {
        let (root, _) = uf.find(pos(0, j));
        if let ClassKind::Dim(rep) = class_info[&root] {
            if rep == j {
                let idx = alloc.push(format!("d{j}"), SymbolRole::Dim(j));
                dim_var.insert(root, idx);
            }
        }
    }
    // interior classes in row-major order of least position
    let mut interior_roots: Vec<(usize, usize)> = Vec::new(); // (min position, root)
    for i in 0..r {
        for j in 0..r {
            let (root, _) = uf.find(pos(i, j));
            if matches!(class_info[&root], ClassKind::Interior)
                && !uf.zero[root]
                && !interior_roots.iter().any(|(_, rt)| *rt == root)
            {
                interior_roots.push((pos(i, j), root));
            }
        }
    }
    interior_roots.sort();
    let mut interior_var: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, (_, root)) in interior_roots.iter().enumerate() {
        let idx = alloc.push(format!("a{}", k + 1), SymbolRole::Interior);
        interior_var.insert(*root, idx);
    }
    alloc.push("p".to_string(), SymbolRole::P);
    let mut t_var: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 1..r {
        if t_name_of[i] == Some(i) {
            let idx = alloc.push(format!("t{i}"), SymbolRole::Twist(i));
            t_var.insert(i, idx);
        }
    }
    let sign_base = alloc.names.len();
    for name in &signs.sign_symbols {
        alloc.push(name.clone(), SymbolRole::Sign);
    }

    let vars = VarTable::new(alloc.names.clone());
    let roles = alloc.roles;

    let sign_poly = |w: &SignExpr| -> MultiPoly {
        let mut p = MultiPoly::one(&vars);
        for b in 0..signs.sign_symbols.len() {
            if w.parities & (1 << b) != 0 {
                p = p.mul(&MultiPoly::var(&vars, sign_base + b));
            }
        }
        if w.neg {
            p = p.neg();
        }
        p
    };

    // anchor weight per class: the anchor position carries the bare symbol
    let mut anchor_weight: BTreeMap<usize, SignExpr> = BTreeMap::new();
    for i in 0..r {
        for j in 0..r {
            let (root, w) = uf.find(pos(i, j));
            let is_anchor = match class_info[&root] {
                ClassKind::Unit => i == 0 && j == 0,
                ClassKind::Dim(rep) => i == 0 && j == rep,
                ClassKind::Interior => {
                    interior_roots.iter().any(|(p, rt)| *rt == root && *p == pos(i, j))
                }
            };
            if is_anchor {
                anchor_weight.insert(root, w);
            }
        }
    }

    // materialize entries: value(pos) = (w_pos * w_anchor) * symbol
    let mut entries = vec![vec![MultiPoly::zero(&vars); r]; r];
    for i in 0..r {
        for j in 0..r {
            let (root, w) = uf.find(pos(i, j));
            if uf.zero[root] {
                continue;
            }
            let base = match class_info[&root] {
                ClassKind::Unit => MultiPoly::one(&vars),
                ClassKind::Dim(_) => {
                    let idx = dim_var[&root];
                    MultiPoly::var(&vars, idx)
                }
                ClassKind::Interior => {
                    let idx = interior_var[&root];
                    MultiPoly::var(&vars, idx)
                }
            };
            let rel = w.mul(&anchor_weight[&root]);
            entries[i][j] = base.mul(&sign_poly(&rel));
        }
    }

    let mut t_diag = vec![MultiPoly::one(&vars); r];
    for i in 1..r {
        let rep = t_name_of[i].unwrap();
        t_diag[i] = MultiPoly::var(&vars, t_var[&rep]);
    }

    // reality: a symbol is real when its class touches a position with a
    // self-dual row or column index; dims and D are always real
    let mut real_symbols = vec![false; vars.len()];
    real_symbols[0] = true;
    for (idx, role) in roles.iter().enumerate() {
        if matches!(role, SymbolRole::Dim(_)) {
            real_symbols[idx] = true;
        }
    }
    for i in 0..r {
        for j in 0..r {
            if star.self_dual(i) || star.self_dual(j) {
                let (root, _) = uf.find(pos(i, j));
                if let Some(idx) = interior_var.get(&root) {
                    real_symbols[*idx] = true;
                }
            }
        }
    }

    // conjugate pairs per non-self-dual column
    let mut nsd_column_pairs = Vec::new();
    for j in 0..r {
        if star.self_dual(j) {
            continue;
        }
        let mut pairs: Vec<(MultiPoly, MultiPoly)> = Vec::new();
        for i in 0..r {
            if star.self_dual(i) {
                continue;
            }
            let x = entries[i][j].clone();
            let y = entries[star.star(i)][j].clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let key_exists = pairs
                .iter()
                .any(|(a, b)| (*a == x && *b == y) || (*a == y && *b == x));
            if !key_exists {
                pairs.push((x, y));
            }
        }
        nsd_column_pairs.push((j, pairs));
    }

    // sign-symbol square relations; for self-dual data the per-generator
    // sign product must equal the permutation sign, which pins the product
    // of the symbolic parts
    let mut sign_relations = Vec::new();
    for b in 0..signs.sign_symbols.len() {
        let e = MultiPoly::var(&vars, sign_base + b);
        sign_relations.push(e.mul(&e).sub(&MultiPoly::one(&vars)));
    }
    if star.is_trivial() && r % 2 == 0 {
        for (g, eps) in group.generators.iter().zip(&signs.per_generator) {
            let mut w = SignExpr::plus();
            for e in eps {
                w = w.mul(e);
            }
            if g.sign() < 0 {
                w = w.mul(&SignExpr::minus());
            }
            if !w.is_one() {
                if w.is_concrete() {
                    return Err(TemplateError::InconsistentSigns(format!(
                        "sign product for generator {} has the wrong parity",
                        g.to_cycles(),
                    )));
                }
                sign_relations.push(sign_poly(&w).sub(&MultiPoly::one(&vars)));
            }
        }
    }

    Ok(SMatrixTemplate {
        rank: r,
        vars,
        entries,
        t_diag,
        star: star.clone(),
        roles,
        real_symbols,
        nsd_column_pairs,
        sign_relations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ClassKind {
    Unit,
    Dim(usize),
    Interior,
}

impl fmt::Display for SMatrixTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Relations
// ---------------------------------------------------------------------------

fn push_unique(out: &mut Vec<MultiPoly>, p: MultiPoly) {
    if p.is_zero() {
        return;
    }
    let (_, prim) = p.primitive_part(ORDER);
    if !out.contains(&prim) {
        out.push(prim);
    }
}

/// Entrywise polynomials of S * conj(S) - D * Id, deduplicated, zero entries
/// dropped.
pub fn orthogonality_relations(template: &SMatrixTemplate) -> Vec<MultiPoly> {
    let r = template.rank;
    let d = template.d_poly();
    let mut out = Vec::new();
    for i in 0..r {
        for j in i..r {
            let mut acc = MultiPoly::zero(&template.vars);
            for k in 0..r {
                // (S conj(S))_ij = sum_k S_ik * S_(j*)k
                acc = acc.add(
                    &template
                        .entry(i, k)
                        .mul(template.entry(template.star.star(j), k)),
                );
            }
            if i == j {
                acc = acc.sub(&d);
            }
            push_unique(&mut out, acc);
        }
    }
    out
}

/// Entrywise polynomials of p*S - T*S*T*S*T, deduplicated.
pub fn twist_relations(template: &SMatrixTemplate) -> Vec<MultiPoly> {
    let r = template.rank;
    let p = template.p_poly();
    let mut out = Vec::new();
    for i in 0..r {
        for j in i..r {
            let mut acc = MultiPoly::zero(&template.vars);
            for k in 0..r {
                acc = acc.add(
                    &template
                        .entry(i, k)
                        .mul(template.entry(k, j))
                        .mul(&template.t_diag[k]),
                );
            }
            let rhs = template.t_diag[i].mul(&template.t_diag[j]).mul(&acc);
            let rel = p.mul(template.entry(i, j)).sub(&rhs);
            push_unique(&mut out, rel);
        }
    }
    out
}

/// Extends a template's variable table with fresh names (appended at the
/// end) and re-embeds a polynomial into the larger ring.
pub fn extend_vars(vars: &Vars, extra: &[String]) -> Vars {
    let mut names: Vec<String> = vars.names().to_vec();
    for n in extra {
        assert!(vars.index_of(n).is_none(), "symbol `{n}` already exists");
        names.push(n.clone());
    }
    VarTable::new(names)
}

pub fn reindex(p: &MultiPoly, bigger: &Vars) -> MultiPoly {
    let small = p.vars();
    assert!(bigger.len() >= small.len());
    for i in 0..small.len() {
        assert_eq!(small.name(i), bigger.name(i), "tables must share a prefix");
    }
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut exps = vec![0u16; bigger.len()];
            exps[..small.len()].copy_from_slice(m.exps());
            (crate::exactpoly::Monomial::from_exps(&exps), c.clone())
        })
        .collect();
    MultiPoly::from_terms(bigger, terms)
}

/// The defining relations of the orbit s-polynomial of row `row` over the
/// column orbit: expands prod_(k in orbit) (x - S_rk / d_k), clears
/// denominators, and equates each elementary-symmetric coefficient to a
/// fresh integer symbol. Returns the extended symbol table, the fresh symbol
/// names, and the defining polynomials (in the extended table).
pub fn orbit_spoly_relations(
    template: &SMatrixTemplate,
    base: &Vars,
    row: usize,
    orbit: &[usize],
    next_z_index: &mut usize,
) -> (Vars, Vec<String>, Vec<MultiPoly>) {
    let t = orbit.len();
    let mut names = Vec::new();
    for _ in 0..t {
        *next_z_index += 1;
        names.push(format!("z{}", *next_z_index));
    }
    let bigger = extend_vars(base, &names);

    // d_k as entry (0,k); numerators S_(row,k)
    let dcol: Vec<MultiPoly> = orbit
        .iter()
        .map(|&k| reindex(template.entry(0, k), &bigger))
        .collect();
    let num: Vec<MultiPoly> = orbit
        .iter()
        .map(|&k| reindex(template.entry(row, k), &bigger))
        .collect();

    let mut rels = Vec::new();
    for m in 1..=t {
        // e_m * prod d_k = sum over |T| = m of prod_(T) num * prod_(not T) d
        let mut sum = MultiPoly::zero(&bigger);
        let mut subset = vec![false; t];
        loop {
            if subset.iter().filter(|&&b| b).count() == m {
                let mut prod = MultiPoly::one(&bigger);
                for (idx, &in_t) in subset.iter().enumerate() {
                    prod = prod.mul(if in_t { &num[idx] } else { &dcol[idx] });
                }
                sum = sum.add(&prod);
            }
            // advance subset
            let mut pos = 0;
            loop {
                if pos == t {
                    break;
                }
                subset[pos] = !subset[pos];
                if subset[pos] {
                    break;
                }
                pos += 1;
            }
            if pos == t {
                break;
            }
        }
        let z = MultiPoly::var_named(&bigger, &names[m - 1]).unwrap();
        let mut dprod = MultiPoly::one(&bigger);
        for d in &dcol {
            dprod = dprod.mul(d);
        }
        rels.push(z.mul(&dprod).sub(&sum));
    }
    (bigger, names, rels)
}

/// Eigenvalue definitions s_ij * d_j - S_ij for the requested cells,
/// introducing fresh `s` symbols named `sI_J`.
pub fn eigenvalue_defs(
    template: &SMatrixTemplate,
    cells: &[(usize, usize)],
) -> (Vars, Vec<String>, Vec<MultiPoly>) {
    let names: Vec<String> = cells.iter().map(|(i, j)| format!("s{i}_{j}")).collect();
    let bigger = extend_vars(&template.vars, &names);
    let mut rels = Vec::new();
    for ((i, j), name) in cells.iter().zip(&names) {
        let s = MultiPoly::var_named(&bigger, name).unwrap();
        let dj = reindex(template.entry(0, *j), &bigger);
        let sij = reindex(template.entry(*i, *j), &bigger);
        rels.push(s.mul(&dj).sub(&sij));
    }
    (bigger, names, rels)
}

// ---------------------------------------------------------------------------
// Sign-choice enumeration
// ---------------------------------------------------------------------------

/// One concrete sign choice; relabel-equivalent choices are merged into the
/// representative with a witness.
#[derive(Debug, Clone)]
pub struct SignChoice {
    pub signs: SignFunction,
    pub merged: Vec<(SignFunction, Permutation)>,
}

/// Enumerates the concrete sign assignments consistent with the structural
/// constraints, merging relabel-equivalent choices.
pub fn enumerate_sign_choices(group: &GroupCandidate) -> Vec<SignChoice> {
    let r = group.rank();
    let gens = &group.generators;
    let star = &group.duality;

    // unify labels whose signs must agree within each generator
    let mut label_class: Vec<Vec<usize>> = Vec::new();
    for g in gens {
        let mut uf: Vec<usize> = (0..r).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] == x {
                x
            } else {
                let r = find(uf, uf[x]);
                uf[x] = r;
                r
            }
        }
        fn join(uf: &mut Vec<usize>, a: usize, b: usize) {
            let (ra, rb) = (find(uf, a), find(uf, b));
            if ra != rb {
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                uf[hi] = lo;
            }
        }
        for b in 0..r {
            join(&mut uf, b, star.star(b));
        }
        if g.is_involution() && (0..r).any(|i| g.apply(i) == i) {
            for i in 0..r {
                join(&mut uf, i, g.apply(i));
            }
        }
        let classes: Vec<usize> = (0..r).map(|i| find(&mut uf, i)).collect();
        label_class.push(classes);
    }

    // free bits: class representatives other than the class of 0
    let mut free_slots: Vec<(usize, usize)> = Vec::new(); // (generator, class rep)
    for (gi, classes) in label_class.iter().enumerate() {
        let zero_class = classes[0];
        let mut reps: Vec<usize> = classes.clone();
        reps.sort();
        reps.dedup();
        for rep in reps {
            if rep != zero_class {
                free_slots.push((gi, rep));
            }
        }
    }

    let mut raw: Vec<SignFunction> = Vec::new();
    let total = 1u64 << free_slots.len();
    'assign: for mask in 0..total {
        let mut per_gen: Vec<Vec<SignExpr>> = Vec::new();
        for (gi, classes) in label_class.iter().enumerate() {
            let mut eps = vec![SignExpr::plus(); r];
            for i in 0..r {
                let rep = classes[i];
                if rep == classes[0] {
                    continue;
                }
                let slot = free_slots
                    .iter()
                    .position(|&(g, c)| g == gi && c == rep)
                    .unwrap();
                if mask & (1 << slot) != 0 {
                    eps[i] = SignExpr::minus();
                }
            }
            per_gen.push(eps);
        }
        let sf = SignFunction {
            sign_symbols: Vec::new(),
            per_generator: per_gen,
        };
        // self-dual data at even rank: sign product equals permutation sign
        if star.is_trivial() && r % 2 == 0 {
            for (g, eps) in gens.iter().zip(&sf.per_generator) {
                let neg = eps.iter().filter(|e| e.neg).count() % 2 == 1;
                let want_neg = g.sign() < 0;
                if neg != want_neg {
                    continue 'assign;
                }
            }
        }
        // structural consistency (cycles through the row-0 classes)
        if build_template(group, &sf).is_err() {
            continue;
        }
        raw.push(sf);
    }

    // merge relabel-equivalent choices by comparing canonically renamed grids
    let relabelings: Vec<Permutation> = crate::symmetry::admissible_relabelings(star)
        .into_iter()
        .filter(|pi| {
            group
                .elements
                .iter()
                .all(|g| group.elements.contains(&g.relabel(pi)))
        })
        .collect();

    let mut choices: Vec<SignChoice> = Vec::new();
    'outer: for sf in raw {
        let template = build_template(group, &sf).unwrap();
        let sig = canonical_signature(&template, &Permutation::identity(r));
        for choice in &mut choices {
            let base = build_template(group, &choice.signs).unwrap();
            for pi in &relabelings {
                if pi.is_identity() {
                    continue;
                }
                if canonical_signature(&base, pi) == sig {
                    choice.merged.push((sf, pi.clone()));
                    continue 'outer;
                }
            }
        }
        choices.push(SignChoice {
            signs: sf,
            merged: Vec::new(),
        });
    }
    choices
}

/// Grid signature after applying a relabeling and renaming symbols in
/// first-occurrence order; two templates describe the same modular data
/// candidate iff their signatures agree for some admissible relabeling.
pub fn canonical_signature(template: &SMatrixTemplate, pi: &Permutation) -> Vec<Vec<String>> {
    let r = template.rank;
    let inv = pi.inverse();
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    let mut counter = 0usize;
    let mut grid = vec![vec![String::new(); r]; r];
    for i in 0..r {
        for j in 0..r {
            let e = template.entry(inv.apply(i), inv.apply(j));
            grid[i][j] = rename_poly(e, &mut rename, &mut counter);
        }
    }
    grid
}

fn rename_poly(
    p: &MultiPoly,
    rename: &mut BTreeMap<String, String>,
    counter: &mut usize,
) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    if let Some(c) = p.constant_value() {
        return if c == Rat::one() {
            "1".into()
        } else if c == -Rat::one() {
            "-1".into()
        } else {
            c.to_string()
        };
    }
    // single signed symbol expected at template level
    let mut s = String::new();
    let (_, prim) = p.primitive_part(ORDER);
    let neg = prim != *p && p.primitive_part(ORDER).0 < Rat::from_integer(0.into());
    if neg {
        s.push('-');
    }
    let support = p.support();
    for v in support {
        let name = p.vars().name(v).to_string();
        let new = rename.entry(name).or_insert_with(|| {
            *counter += 1;
            format!("x{counter}")
        });
        s.push_str(new);
        s.push('*');
    }
    s.pop();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::GroupCandidate;

    fn perm(s: &str, r: usize) -> Permutation {
        Permutation::parse_cycles(s, r).unwrap()
    }

    fn concrete(signs: &[i8]) -> Vec<SignExpr> {
        signs
            .iter()
            .map(|&s| {
                if s >= 0 {
                    SignExpr::plus()
                } else {
                    SignExpr::minus()
                }
            })
            .collect()
    }

    #[test]
    fn rank1_trivial_template() {
        let group =
            GroupCandidate::new(vec![], DualityInvolution::identity(1)).unwrap();
        let sf = SignFunction::all_plus(0, 1);
        let t = build_template(&group, &sf).unwrap();
        assert_eq!(t.entry(0, 0), &MultiPoly::one(&t.vars));
    }

    #[test]
    fn theorem16_shape() {
        // <(01)(2435)> with eps0 = eps2 = +, eps1 = eps4 = -
        let d = crate::symmetry::duality_for(6, 2).unwrap();
        let group = GroupCandidate::new(vec![perm("(01)(2435)", 6)], d).unwrap();
        let sf = SignFunction {
            sign_symbols: vec![],
            per_generator: vec![concrete(&[1, -1, 1, 1, -1, -1])],
        };
        let t = build_template(&group, &sf).unwrap();
        let g = t.render_grid();
        // row 0: 1, d1, d2, d2, d4, d4
        assert_eq!(g[0], vec!["1", "d1", "d2", "d2", "d4", "d4"]);
        // S11 = eps0 eps1 = -1; S12 = eps1 eps4 d4 = +d4; S14 = eps1 eps2 d2 = -d2
        assert_eq!(g[1][1], "-1");
        assert_eq!(g[1][2], "d4");
        assert_eq!(g[1][4], "-d2");
        // interior block: a1 a2 / cross c1 c2 appear as a1..a4 in row-major order
        assert_eq!(g[2][2], "a1");
        assert_eq!(g[2][3], "a2");
        assert_eq!(g[2][4], "a3");
        assert_eq!(g[2][5], "a4");
        // (4,4) block reuses a-symbols with the eps2 eps4 sign
        assert_eq!(g[4][4], "-a2");
        assert_eq!(g[4][5], "-a1");
        // T diagonal: pairs share twists
        assert_eq!(t.t_diag[2], t.t_diag[3]);
        assert_eq!(t.t_diag[4], t.t_diag[5]);
    }

    #[test]
    fn galois_identity_holds() {
        let d = crate::symmetry::duality_for(6, 2).unwrap();
        let group = GroupCandidate::new(vec![perm("(01)(2435)", 6)], d).unwrap();
        let sf = SignFunction {
            sign_symbols: vec![],
            per_generator: vec![concrete(&[1, -1, 1, 1, -1, -1])],
        };
        let t = build_template(&group, &sf).unwrap();
        let g = &group.generators[0];
        let ginv = g.inverse();
        let eps = &sf.per_generator[0];
        for i in 0..6 {
            for j in 0..6 {
                let lhs = t.entry(i, j).clone();
                let w = eps[g.apply(i)].mul(&eps[j]);
                let mut rhs = t.entry(g.apply(i), ginv.apply(j)).clone();
                if w.neg {
                    rhs = rhs.neg();
                }
                assert_eq!(lhs, rhs, "Galois identity at ({i},{j})");
            }
        }
        // symmetry and dual symmetry
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(t.entry(i, j), t.entry(j, i));
                assert_eq!(
                    t.entry(i, j),
                    t.entry(t.star.star(i), t.star.star(j))
                );
            }
        }
    }

    #[test]
    fn orthogonality_row0() {
        // trivial group, rank 3: row 0 gives 1 + d1^2 + d2^2 - D
        let group =
            GroupCandidate::new(vec![], DualityInvolution::identity(3)).unwrap();
        let sf = SignFunction::all_plus(0, 3);
        let t = build_template(&group, &sf).unwrap();
        let rels = orthogonality_relations(&t);
        let expect =
            crate::exactpoly::parse_poly("d1^2+d2^2-D+1", &t.vars).unwrap();
        let (_, expect) = expect.primitive_part(ORDER);
        assert!(rels.contains(&expect));
    }

    #[test]
    fn twist_trivial_rank1() {
        let group =
            GroupCandidate::new(vec![], DualityInvolution::identity(1)).unwrap();
        let sf = SignFunction::all_plus(0, 1);
        let t = build_template(&group, &sf).unwrap();
        let rels = twist_relations(&t);
        // p*1 - 1 = p - 1
        let expect = crate::exactpoly::parse_poly("p-1", &t.vars).unwrap();
        assert_eq!(rels, vec![expect]);
    }

    #[test]
    fn sign_choice_counts() {
        // (012) at rank 6, self-dual: 4 raw choices, choices 3/4 merge
        let d = DualityInvolution::identity(6);
        let group = GroupCandidate::new(vec![perm("(012)", 6)], d).unwrap();
        let choices = enumerate_sign_choices(&group);
        let raw: usize = choices.iter().map(|c| 1 + c.merged.len()).sum();
        assert_eq!(raw, 4, "raw sign choices for (012)");
        assert!(
            choices.iter().any(|c| !c.merged.is_empty()),
            "two of the four choices merge under relabeling"
        );
        assert_eq!(choices.len(), 3);
    }

    #[test]
    fn sign_choice_counts_0213_45() {
        let d = crate::symmetry::duality_for(6, 1).unwrap();
        let group =
            GroupCandidate::new(vec![perm("(0213)", 6), perm("(45)", 6)], d).unwrap();
        let choices = enumerate_sign_choices(&group);
        let raw: usize = choices.iter().map(|c| 1 + c.merged.len()).sum();
        assert_eq!(raw, 8, "raw sign choices for <(0213),(45)>");
    }

    #[test]
    fn sign_choice_counts_th19() {
        let d = crate::symmetry::duality_for(6, 1).unwrap();
        let group = GroupCandidate::new(
            vec![perm("(01)(23)", 6), perm("(02)(13)", 6), perm("(45)", 6)],
            d,
        )
        .unwrap();
        let choices = enumerate_sign_choices(&group);
        let raw: usize = choices.iter().map(|c| 1 + c.merged.len()).sum();
        assert_eq!(raw, 8, "raw sign choices for <(01)(23),(02)(13),(45)>");
    }

    #[test]
    fn orbit_spoly_examples() {
        // <(01)> at rank 6, all-plus signs on the orbit {0,1}
        let d = DualityInvolution::identity(6);
        let group = GroupCandidate::new(vec![perm("(01)", 6)], d).unwrap();
        let sf = SignFunction {
            sign_symbols: vec![],
            per_generator: vec![concrete(&[1, 1, 1, 1, 1, -1])],
        };
        let t = build_template(&group, &sf).unwrap();
        // S11 = 1 via the (0,0) class
        assert_eq!(t.entry(1, 1), &MultiPoly::one(&t.vars));
        let mut zi = 0;
        let (bigger, names, rels) = orbit_spoly_relations(&t, &t.vars.clone(), 1, &[0, 1], &mut zi);
        assert_eq!(names, vec!["z1", "z2"]);
        // z1*d1 = S10*d1... i.e. d1^2 + 1 = z1 d1 (with S11 = 1, d0 = 1)
        let expect = crate::exactpoly::parse_poly("z1*d1-d1^2-1", &bigger).unwrap();
        let (_, e1) = expect.primitive_part(ORDER);
        let (_, r1) = rels[0].primitive_part(ORDER);
        assert!(r1 == e1 || r1 == e1.neg().primitive_part(ORDER).1);
    }

    #[test]
    fn eigenvalue_def_cells() {
        let group =
            GroupCandidate::new(vec![], DualityInvolution::identity(3)).unwrap();
        let sf = SignFunction::all_plus(0, 3);
        let t = build_template(&group, &sf).unwrap();
        let (bigger, names, rels) = eigenvalue_defs(&t, &[(0, 1), (1, 0)]);
        assert_eq!(names, vec!["s0_1", "s1_0"]);
        // s01*d1 - d1 and s10*1 - d1
        let e0 = crate::exactpoly::parse_poly("s0_1*d1-d1", &bigger).unwrap();
        let e1 = crate::exactpoly::parse_poly("s1_0-d1", &bigger).unwrap();
        assert_eq!(rels[0], e0);
        assert_eq!(rels[1], e1);
    }

    #[test]
    fn symbolic_sign_template() {
        // one-pair NSD <(01)> with eps2 = eps3 = e, eps4 = -e (as eps0*eps_i)
        let d = crate::symmetry::duality_for(6, 1).unwrap();
        let group =
            GroupCandidate::new(vec![perm("(01)", 6), perm("(45)", 6)], d).unwrap();
        let symbols = vec!["e".to_string()];
        let e = SignExpr::symbol(0);
        let me = e.mul(&SignExpr::minus());
        let eps_main = vec![
            SignExpr::plus(),
            SignExpr::plus(),
            e.clone(),
            e.clone(),
            me.clone(),
            me,
        ];
        let eps_conj = vec![SignExpr::plus(); 6];
        let sf = SignFunction {
            sign_symbols: symbols,
            per_generator: vec![eps_main, eps_conj],
        };
        let t = build_template(&group, &sf).unwrap();
        let g = t.render_grid();
        assert_eq!(g[0], vec!["1", "d1", "d2", "d3", "d4", "d4"]);
        assert_eq!(g[1][2], "d2*e");
        assert_eq!(g[1][4], "-d4*e");
        // squares of sign symbols become relations
        assert_eq!(t.sign_relations.len(), 1);
    }

    #[test]
    fn nontrivial_group_sign_rejection() {
        // (0123) self-dual: the sign product rule rejects even products
        let d = DualityInvolution::identity(6);
        let group = GroupCandidate::new(vec![perm("(0123)", 6)], d).unwrap();
        let choices = enumerate_sign_choices(&group);
        // every surviving choice has an odd number of minus signs
        for c in &choices {
            let neg = c.signs.per_generator[0].iter().filter(|e| e.neg).count();
            assert_eq!(neg % 2, 1);
        }
        assert!(!choices.is_empty());
    }
}
