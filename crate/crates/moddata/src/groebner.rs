//! Normal-form reduction, Buchberger's algorithm, ideal membership, Krull
//! dimension, and elimination.
//!
//! The inner loop works fraction-free over integer-primitive polynomials;
//! results are converted back to rational polynomials at the API boundary.
//! Pair management follows the Gebauer-Moeller update with the product and
//! chain criteria, pairs selected by minimal lcm degree (normal strategy).

use crate::exactpoly::{Monomial, MonomialOrder, MultiPoly, Rat, Vars};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct Ideal {
    pub generators: Vec<MultiPoly>,
    pub order: MonomialOrder,
}

impl Ideal {
    /// Drops zero generators and duplicates (by canonical form).
    pub fn new(generators: Vec<MultiPoly>, order: MonomialOrder) -> Self {
        let mut gens: Vec<MultiPoly> = Vec::new();
        for g in generators {
            if g.is_zero() {
                continue;
            }
            let (_, prim) = g.primitive_part(order);
            if !gens.contains(&prim) {
                gens.push(prim);
            }
        }
        Ideal {
            generators: gens,
            order,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub elements: Vec<MultiPoly>,
    pub order: MonomialOrder,
    pub complete: bool,
    pub degree_cap: Option<u32>,
    pub pairs_processed: usize,
    pub max_degree: u32,
}

impl GroebnerBasis {
    /// True when the ideal is the whole ring, i.e. the basis reduces to {1}.
    pub fn is_empty_variety(&self) -> bool {
        self.elements
            .iter()
            .any(|e| e.is_constant() && !e.is_zero())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_millis: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 1_000_000,
            max_millis: 30 * 60 * 1000,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GroebnerError {
    #[error("resource limit exceeded after {pairs} pairs ({millis} ms)")]
    ResourceLimit {
        pairs: usize,
        millis: u64,
        partial: Box<GroebnerBasis>,
    },
    #[error("operation requires a complete Groebner basis")]
    IncompleteBasis,
    #[error("empty generator list")]
    EmptyIdeal,
    #[error("kept variables must form a suffix of the variable table")]
    BadEliminationSuffix,
}

// ---------------------------------------------------------------------------
// Integer-primitive working representation
// ---------------------------------------------------------------------------

/// Polynomial with integer coefficients, terms sorted descending under the
/// active order, content 1, positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IPoly {
    terms: Vec<(Monomial, BigInt)>,
}

fn support_mask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for v in m.support() {
        mask |= 1 << (v & 63);
    }
    mask
}

impl IPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm_mask(&self) -> u64 {
        support_mask(&self.terms[0].0)
    }

    fn lt(&self) -> &(Monomial, BigInt) {
        &self.terms[0]
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn strip_content(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() && !g.is_zero() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
        if self.terms[0].1.is_negative() {
            for (_, c) in &mut self.terms {
                *c = -c.clone();
            }
        }
    }
}

fn to_ipoly(p: &MultiPoly, order: MonomialOrder) -> IPoly {
    let (_, prim) = p.primitive_part(order);
    let mut terms: Vec<(Monomial, BigInt)> = prim
        .terms()
        .iter()
        .map(|(m, c)| (m.clone(), c.numer().clone()))
        .collect();
    terms.sort_by(|(a, _), (b, _)| order.compare(b, a));
    IPoly { terms }
}

fn from_ipoly(ip: &IPoly, vars: &Vars) -> MultiPoly {
    MultiPoly::from_terms(
        vars,
        ip.terms
            .iter()
            .map(|(m, c)| (m.clone(), Rat::from_integer(c.clone())))
            .collect(),
    )
}

/// Merge `dst_scale * dst + src_scale * (shift * src)` over sorted term lists.
fn add_scaled_shifted(
    dst: &[(Monomial, BigInt)],
    dst_scale: &BigInt,
    src: &[(Monomial, BigInt)],
    src_scale: &BigInt,
    shift: &Monomial,
    order: MonomialOrder,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let mut i = 0;
    let mut j = 0;
    while i < dst.len() && j < src.len() {
        let sm = src[j].0.mul(shift);
        match order.compare(&dst[i].0, &sm) {
            Ordering::Greater => {
                out.push((dst[i].0.clone(), &dst[i].1 * dst_scale));
                i += 1;
            }
            Ordering::Less => {
                out.push((sm, &src[j].1 * src_scale));
                j += 1;
            }
            Ordering::Equal => {
                let c = &dst[i].1 * dst_scale + &src[j].1 * src_scale;
                if !c.is_zero() {
                    out.push((sm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    while i < dst.len() {
        out.push((dst[i].0.clone(), &dst[i].1 * dst_scale));
        i += 1;
    }
    while j < src.len() {
        out.push((src[j].0.mul(shift), &src[j].1 * src_scale));
        j += 1;
    }
    out
}

/// Full fraction-free reduction of `f` by `basis` (result defined up to a
/// positive rational unit; content-stripped).
fn nf_int(f: IPoly, basis: &[IPoly], order: MonomialOrder) -> IPoly {
    let masks: Vec<u64> = basis
        .iter()
        .map(|g| if g.is_zero() { u64::MAX } else { g.lm_mask() })
        .collect();
    nf_int_masked(f, basis, &masks, order)
}

/// Full fraction-free reduction with precomputed leading-support masks.
fn nf_int_masked(
    f: IPoly,
    basis: &[IPoly],
    masks: &[u64],
    order: MonomialOrder,
) -> IPoly {
    let mut work = f.terms;
    let mut done: Vec<(Monomial, BigInt)> = Vec::new();
    let mut steps = 0usize;
    while let Some((m, c)) = work.first().cloned() {
        // among admissible reducers prefer the shortest, then the lowest
        // leading monomial; this keeps tails and coefficients small
        let mmask = support_mask(&m);
        let reducer = basis
            .iter()
            .zip(masks)
            .filter(|(g, gm)| {
                **gm != u64::MAX && (**gm & !mmask) == 0 && g.lt().0.divides(&m)
            })
            .map(|(g, _)| g)
            .min_by(|a, b| {
                a.terms
                    .len()
                    .cmp(&b.terms.len())
                    .then_with(|| order.compare(&a.lt().0, &b.lt().0))
            });
        match reducer {
            None => {
                done.push((m, c));
                work.remove(0);
            }
            Some(g) => {
                let (gm, gc) = g.lt();
                let q = m.try_div(gm).unwrap();
                let d = c.gcd(gc);
                let a = gc / &d; // multiplies work and done
                let b = -(&c / &d); // multiplies shifted g
                work = add_scaled_shifted(&work, &a, &g.terms, &b, &q, order);
                if !a.is_one() {
                    for (_, dc) in &mut done {
                        *dc = &*dc * &a;
                    }
                }
                steps += 1;
                if steps % 16 == 0 {
                    strip_joint(&mut work, &mut done);
                }
            }
        }
    }
    let mut out = IPoly { terms: done };
    out.strip_content();
    out
}

fn strip_joint(work: &mut [(Monomial, BigInt)], done: &mut [(Monomial, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in work.iter().chain(done.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in work.iter_mut().chain(done.iter_mut()) {
        *c = &*c / &g;
    }
}

fn spoly(f: &IPoly, g: &IPoly, order: MonomialOrder) -> IPoly {
    let (fm, fc) = f.lt();
    let (gm, gc) = g.lt();
    let lcm = fm.lcm(gm);
    let d = fc.gcd(gc);
    let a = gc / &d;
    let b = -(fc / &d);
    let sf = lcm.try_div(fm).unwrap();
    let sg = lcm.try_div(gm).unwrap();
    let shifted_f: Vec<(Monomial, BigInt)> = f
        .terms
        .iter()
        .map(|(m, c)| (m.mul(&sf), c.clone()))
        .collect();
    let terms = add_scaled_shifted(&shifted_f, &a, &g.terms, &b, &sg, order);
    let mut out = IPoly { terms };
    out.strip_content();
    out
}

// ---------------------------------------------------------------------------
// Buchberger with Gebauer-Moeller pair management
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
struct Pair {
    deg: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

struct PairOrd {
    pair: Pair,
    order: MonomialOrder,
}

impl PartialEq for PairOrd {
    fn eq(&self, other: &Self) -> bool {
        self.pair == other.pair
    }
}
impl Eq for PairOrd {}

impl Ord for PairOrd {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap; reverse for minimal-degree-first.
        other
            .pair
            .deg
            .cmp(&self.pair.deg)
            .then_with(|| self.order.compare(&other.pair.lcm, &self.pair.lcm))
            .then_with(|| other.pair.i.cmp(&self.pair.i))
            .then_with(|| other.pair.j.cmp(&self.pair.j))
    }
}

impl PartialOrd for PairOrd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct GmState {
    basis: Vec<IPoly>,
    pairs: BinaryHeap<PairOrd>,
    order: MonomialOrder,
}

impl GmState {
    fn new(order: MonomialOrder) -> Self {
        GmState {
            basis: Vec::new(),
            pairs: BinaryHeap::new(),
            order,
        }
    }

    /// Gebauer-Moeller update: add `h` to the basis, creating and pruning
    /// critical pairs.
    fn add(&mut self, h: IPoly) {
        let t = self.basis.len();
        let ht = h.lt().0.clone();

        // prune old pairs by the chain criterion
        let old: Vec<PairOrd> = std::mem::take(&mut self.pairs).into_vec();
        let mut kept: Vec<PairOrd> = Vec::with_capacity(old.len());
        for p in old {
            let lcm_ij = &p.pair.lcm;
            if ht.divides(lcm_ij) {
                let lcm_it = self.basis[p.pair.i].lt().0.lcm(&ht);
                let lcm_jt = self.basis[p.pair.j].lt().0.lcm(&ht);
                if lcm_it != *lcm_ij && lcm_jt != *lcm_ij {
                    continue;
                }
            }
            kept.push(p);
        }

        // candidate new pairs
        let cand: Vec<Pair> = (0..t)
            .map(|i| {
                let lcm = self.basis[i].lt().0.lcm(&ht);
                Pair {
                    deg: lcm.degree(),
                    lcm,
                    i,
                    j: t,
                }
            })
            .collect();

        // M criterion: drop pairs whose lcm is a proper multiple of another's
        let mut keep_flag = vec![true; cand.len()];
        for a in 0..cand.len() {
            if !keep_flag[a] {
                continue;
            }
            for b in 0..cand.len() {
                if a == b || !keep_flag[b] {
                    continue;
                }
                if cand[b].lcm.divides(&cand[a].lcm) && cand[b].lcm != cand[a].lcm {
                    keep_flag[a] = false;
                    break;
                }
            }
        }

        // F criterion: one pair per lcm; B criterion: drop the whole lcm
        // class when some member has coprime leading monomials.
        let mut groups: Vec<(Monomial, Vec<usize>)> = Vec::new();
        for (idx, p) in cand.iter().enumerate() {
            if !keep_flag[idx] {
                continue;
            }
            match groups.iter_mut().find(|(l, _)| *l == p.lcm) {
                Some((_, v)) => v.push(idx),
                None => groups.push((p.lcm.clone(), vec![idx])),
            }
        }
        let mut new_pairs: Vec<Pair> = Vec::new();
        for (_, members) in groups {
            let coprime = members
                .iter()
                .any(|&idx| self.basis[cand[idx].i].lt().0.coprime(&ht));
            if coprime {
                continue;
            }
            new_pairs.push(cand[members[0]].clone());
        }

        self.pairs = kept.into();
        let order = self.order;
        for p in new_pairs {
            self.pairs.push(PairOrd { pair: p, order });
        }
        self.basis.push(h);
    }
}

/// Runs Buchberger's algorithm. With `degree_cap` set, S-pairs whose lcm
/// degree exceeds the cap are deferred and the result is flagged incomplete.
pub fn buchberger(
    ideal: &Ideal,
    degree_cap: Option<u32>,
    budget: &Budget,
) -> Result<GroebnerBasis, GroebnerError> {
    if ideal.generators.is_empty() {
        return Err(GroebnerError::EmptyIdeal);
    }
    let vars = ideal.generators[0].vars().clone();
    let order = ideal.order;
    let start = Instant::now();

    let mut init: Vec<IPoly> = ideal
        .generators
        .iter()
        .map(|g| to_ipoly(g, order))
        .filter(|g| !g.is_zero())
        .collect();
    // deterministic insert order: by leading monomial, then term data
    init.sort_by(|a, b| {
        order
            .compare(&a.lt().0, &b.lt().0)
            .then_with(|| cmp_terms(a, b, order))
    });

    let mut st = GmState::new(order);
    for g in init {
        let r = nf_int(g, &st.basis, order);
        if !r.is_zero() {
            st.add(r);
        }
    }

    let mut deferred = 0usize;
    let mut pairs_processed = 0usize;
    let mut max_degree = st.basis.iter().map(|g| g.degree()).max().unwrap_or(0);
    // interreduce and rebuild when the working basis has grown far beyond
    // the last compacted size; keeps reducers short and coefficients small
    let mut restart_floor = st.basis.len().max(32);

    while let Some(p) = st.pairs.pop() {
        let total_terms: usize = st.basis.iter().map(|g| g.terms.len()).sum();
        if st.basis.len() > restart_floor * 2 || total_terms > 40_000 {
            let compact = interreduce(std::mem::take(&mut st.basis), order);
            let again = deferred > 0;
            deferred = 0;
            st = GmState::new(order);
            for g in compact {
                let r = nf_int(g, &st.basis, order);
                if !r.is_zero() {
                    st.add(r);
                }
            }
            restart_floor = st.basis.len().max(32);
            let _ = again;
            continue;
        }
        if let Some(cap) = degree_cap {
            if p.pair.deg > cap {
                deferred += 1;
                continue;
            }
        }
        pairs_processed += 1;
        if std::env::var_os("MODDATA_GB_TRACE").is_some() && pairs_processed % 500 == 0 {
            let nterms: usize = st.basis.iter().map(|g| g.terms.len()).sum();
            let maxbits = st
                .basis
                .iter()
                .flat_map(|g| g.terms.iter().map(|(_, c)| c.bits()))
                .max()
                .unwrap_or(0);
            eprintln!(
                "gb trace: {} pairs, {} basis, {} terms, coeff bits {}, queue {}, {:?}",
                pairs_processed,
                st.basis.len(),
                nterms,
                maxbits,
                st.pairs.len(),
                start.elapsed()
            );
        }
        if pairs_processed > budget.max_pairs
            || start.elapsed().as_millis() as u64 > budget.max_millis
        {
            let partial = finalize(
                &st.basis,
                &vars,
                order,
                false,
                degree_cap,
                pairs_processed,
                max_degree,
            );
            return Err(GroebnerError::ResourceLimit {
                pairs: pairs_processed,
                millis: start.elapsed().as_millis() as u64,
                partial: Box::new(partial),
            });
        }
        let s = spoly(&st.basis[p.pair.i], &st.basis[p.pair.j], order);
        if s.is_zero() {
            continue;
        }
        let r = nf_int(s, &st.basis, order);
        if !r.is_zero() {
            max_degree = max_degree.max(r.degree());
            // a unit in the basis: the variety is empty, stop early
            if r.lt().0.is_unit() {
                let one = IPoly {
                    terms: vec![(Monomial::unit(vars.len()), BigInt::one())],
                };
                return Ok(finalize(
                    &[one],
                    &vars,
                    order,
                    true,
                    degree_cap,
                    pairs_processed,
                    max_degree,
                ));
            }
            st.add(r);
        }
    }

    let complete = deferred == 0;
    Ok(finalize(
        &st.basis,
        &vars,
        order,
        complete,
        degree_cap,
        pairs_processed,
        max_degree,
    ))
}

/// Drops redundant leading monomials and fully reduces each element against
/// the rest until stable.
fn interreduce(elems: Vec<IPoly>, order: MonomialOrder) -> Vec<IPoly> {
    let mut keep = vec![true; elems.len()];
    for i in 0..elems.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..elems.len() {
            if i == j || !keep[j] {
                continue;
            }
            if elems[j].lt().0.divides(&elems[i].lt().0)
                && (elems[j].lt().0 != elems[i].lt().0 || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<IPoly> = elems
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(e, _)| e)
        .collect();
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<IPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, g)| *j != i && !g.is_zero())
                .map(|(_, g)| g.clone())
                .collect();
            let r = nf_int(minimal[i].clone(), &others, order);
            if r != minimal[i] {
                changed = true;
                minimal[i] = r;
            }
        }
        minimal.retain(|g| !g.is_zero());
        if !changed {
            break;
        }
    }
    minimal.sort_by(|a, b| {
        order
            .compare(&a.lt().0, &b.lt().0)
            .then_with(|| cmp_terms(a, b, order))
    });
    minimal
}

fn cmp_terms(a: &IPoly, b: &IPoly, order: MonomialOrder) -> Ordering {
    for ((ma, ca), (mb, cb)) in a.terms.iter().zip(&b.terms) {
        match order.compare(ma, mb).then_with(|| ca.cmp(cb)) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

/// Interreduction: drop elements with redundant leading monomials, then (for
/// complete bases) fully reduce each element against the others.
fn finalize(
    basis: &[IPoly],
    vars: &Vars,
    order: MonomialOrder,
    complete: bool,
    degree_cap: Option<u32>,
    pairs_processed: usize,
    max_degree: u32,
) -> GroebnerBasis {
    let elems: Vec<IPoly> = basis.to_vec();

    let mut keep = vec![true; elems.len()];
    for i in 0..elems.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..elems.len() {
            if i == j || !keep[j] {
                continue;
            }
            if elems[j].lt().0.divides(&elems[i].lt().0)
                && (elems[j].lt().0 != elems[i].lt().0 || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<IPoly> = elems
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(e, _)| e)
        .collect();

    if complete {
        loop {
            let mut changed = false;
            for i in 0..minimal.len() {
                let others: Vec<IPoly> = minimal
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                let r = nf_int(minimal[i].clone(), &others, order);
                if r != minimal[i] {
                    changed = true;
                    minimal[i] = r;
                }
            }
            minimal.retain(|g| !g.is_zero());
            if !changed {
                break;
            }
        }
    }

    minimal.sort_by(|a, b| {
        order
            .compare(&a.lt().0, &b.lt().0)
            .then_with(|| cmp_terms(a, b, order))
    });

    GroebnerBasis {
        elements: minimal.iter().map(|g| from_ipoly(g, vars)).collect(),
        order,
        complete,
        degree_cap,
        pairs_processed,
        max_degree,
    }
}

// ---------------------------------------------------------------------------
// Public reduction and membership
// ---------------------------------------------------------------------------

/// Exact normal form: returns `r` with `f - r` in the ideal generated by
/// `basis` and no term of `r` divisible by any basis leading monomial.
/// Deterministic given the basis order.
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly], order: MonomialOrder) -> MultiPoly {
    let vars = f.vars().clone();
    let ib: Vec<IPoly> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_ipoly(g, order))
        .collect();

    let mut work: Vec<(Monomial, Rat)> = f.terms().to_vec();
    work.sort_by(|(a, _), (b, _)| order.compare(b, a));
    let mut done: Vec<(Monomial, Rat)> = Vec::new();
    while let Some((m, c)) = work.first().cloned() {
        let reducer = ib.iter().find(|g| g.lt().0.divides(&m));
        match reducer {
            None => {
                done.push((m, c));
                work.remove(0);
            }
            Some(g) => {
                let (gm, gc) = g.lt();
                let q = m.try_div(gm).unwrap();
                let factor = &c / Rat::from_integer(gc.clone());
                let mut sub: Vec<(Monomial, Rat)> = g
                    .terms
                    .iter()
                    .map(|(tm, tc)| (tm.mul(&q), -(Rat::from_integer(tc.clone()) * &factor)))
                    .collect();
                work = merge_rat(&work, &mut sub, order);
            }
        }
    }
    MultiPoly::from_terms(&vars, done)
}

fn merge_rat(
    a: &[(Monomial, Rat)],
    b: &mut Vec<(Monomial, Rat)>,
    order: MonomialOrder,
) -> Vec<(Monomial, Rat)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() && j < b.len() {
        match order.compare(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 + &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b.drain(j..));
    out
}

/// Ideal membership against a complete basis.
pub fn membership(f: &MultiPoly, gb: &GroebnerBasis) -> Result<bool, GroebnerError> {
    if !gb.complete {
        return Err(GroebnerError::IncompleteBasis);
    }
    Ok(normal_form(f, &gb.elements, gb.order).is_zero())
}

/// Semi-decidable membership against a possibly partial basis: a zero normal
/// form still proves membership.
pub fn membership_partial(f: &MultiPoly, gb: &GroebnerBasis) -> Option<bool> {
    if normal_form(f, &gb.elements, gb.order).is_zero() {
        Some(true)
    } else if gb.complete {
        Some(false)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Krull dimension
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KrullDim {
    EmptyVariety,
    Dim(usize),
}

/// Dimension of the quotient ring via maximal independent variable sets
/// modulo the leading-term ideal.
pub fn krull_dimension(gb: &GroebnerBasis) -> Result<KrullDim, GroebnerError> {
    if !gb.complete {
        return Err(GroebnerError::IncompleteBasis);
    }
    if gb.is_empty_variety() {
        return Ok(KrullDim::EmptyVariety);
    }
    let nvars = gb.elements[0].vars().len();
    let mut supports: Vec<Vec<usize>> = gb
        .elements
        .iter()
        .map(|e| {
            let (lm, _) = e.leading_term(gb.order).unwrap();
            lm.support().collect::<Vec<_>>()
        })
        .collect();
    supports.sort_by_key(|s| s.len());
    supports.dedup();

    // dim = nvars - (minimum hitting set of the leading-term supports)
    fn search(supports: &[Vec<usize>], idx: usize, chosen: &mut Vec<usize>, best: &mut usize) {
        if chosen.len() >= *best {
            return;
        }
        let next = supports[idx..]
            .iter()
            .position(|s| !s.iter().any(|v| chosen.contains(v)));
        match next {
            None => {
                *best = chosen.len();
            }
            Some(off) => {
                let sup = supports[idx + off].clone();
                for v in sup {
                    chosen.push(v);
                    search(supports, idx + off + 1, chosen, best);
                    chosen.pop();
                }
            }
        }
    }
    let mut best = usize::MAX;
    let mut chosen = Vec::new();
    search(&supports, 0, &mut chosen, &mut best);
    Ok(KrullDim::Dim(nvars - best))
}

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

/// Computes a Groebner basis under `Eliminate(n - keep)` and returns the
/// elements lying in the subring of the `keep` trailing variables.
pub fn eliminate_solve(
    ideal: &Ideal,
    keep: usize,
    budget: &Budget,
) -> Result<Vec<MultiPoly>, GroebnerError> {
    if ideal.generators.is_empty() {
        return Err(GroebnerError::EmptyIdeal);
    }
    let nvars = ideal.generators[0].vars().len();
    if keep > nvars {
        return Err(GroebnerError::BadEliminationSuffix);
    }
    let k = nvars - keep;
    let elim = Ideal {
        generators: ideal.generators.clone(),
        order: MonomialOrder::Eliminate(k),
    };
    let gb = buchberger(&elim, None, budget)?;
    Ok(gb
        .elements
        .iter()
        .filter(|e| e.support().iter().all(|&v| v >= k))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, VarTable};

    fn gb_of(gens: &[&str], vars: &Vars, order: MonomialOrder) -> GroebnerBasis {
        let polys: Vec<MultiPoly> = gens.iter().map(|s| parse_poly(s, vars).unwrap()).collect();
        buchberger(&Ideal::new(polys, order), None, &Budget::default()).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let vars = VarTable::new(vec!["x", "y"]);
        let x2 = parse_poly("x^2", &vars).unwrap();
        let x = parse_poly("x", &vars).unwrap();
        assert!(normal_form(&x2, &[x.clone()], MonomialOrder::GradedRevLex).is_zero());

        let f = parse_poly("x+y", &vars).unwrap();
        let g = parse_poly("x-y", &vars).unwrap();
        let r = normal_form(&f, &[g], MonomialOrder::Lex);
        assert_eq!(r, parse_poly("2*y", &vars).unwrap());

        assert_eq!(normal_form(&f, &[], MonomialOrder::Lex), f);
    }

    #[test]
    fn buchberger_already_basis() {
        let vars = VarTable::new(vec!["x", "y"]);
        let gb = gb_of(&["x", "y"], &vars, MonomialOrder::GradedRevLex);
        assert!(gb.complete);
        assert_eq!(gb.elements.len(), 2);
    }

    #[test]
    fn buchberger_membership_example() {
        let vars = VarTable::new(vec!["x", "y"]);
        let gb = gb_of(&["x^2-y", "y^2-x"], &vars, MonomialOrder::GradedRevLex);
        assert!(gb.complete);
        let x4 = parse_poly("x^4-x", &vars).unwrap();
        assert!(membership(&x4, &gb).unwrap());
        let xp1 = parse_poly("x+1", &vars).unwrap();
        assert!(!membership(&xp1, &gb).unwrap());
    }

    #[test]
    fn membership_trivial() {
        let vars = VarTable::new(vec!["x"]);
        let gb = gb_of(&["x^2"], &vars, MonomialOrder::GradedRevLex);
        assert!(membership(&parse_poly("0", &vars).unwrap(), &gb).unwrap());
        assert!(!membership(&parse_poly("x", &vars).unwrap(), &gb).unwrap());
    }

    #[test]
    fn krull_examples() {
        let vars = VarTable::new(vec!["x", "y"]);
        let gb = gb_of(&["x"], &vars, MonomialOrder::GradedRevLex);
        assert_eq!(krull_dimension(&gb).unwrap(), KrullDim::Dim(1));

        let gb = gb_of(&["x", "y"], &vars, MonomialOrder::GradedRevLex);
        assert_eq!(krull_dimension(&gb).unwrap(), KrullDim::Dim(0));

        let gb = gb_of(&["1"], &vars, MonomialOrder::GradedRevLex);
        assert_eq!(krull_dimension(&gb).unwrap(), KrullDim::EmptyVariety);
    }

    #[test]
    fn empty_variety_detected() {
        let vars = VarTable::new(vec!["x", "y"]);
        let gb = gb_of(&["x-1", "x-2"], &vars, MonomialOrder::GradedRevLex);
        assert!(gb.is_empty_variety());
        assert_eq!(krull_dimension(&gb).unwrap(), KrullDim::EmptyVariety);
    }

    #[test]
    fn eliminate_examples() {
        let vars = VarTable::new(vec!["x", "y"]);
        let mk = |gens: &[&str]| {
            Ideal::new(
                gens.iter().map(|s| parse_poly(s, &vars).unwrap()).collect(),
                MonomialOrder::GradedRevLex,
            )
        };
        let out = eliminate_solve(&mk(&["x-y", "y^2-1"]), 1, &Budget::default()).unwrap();
        let y2 = parse_poly("y^2-1", &vars).unwrap();
        assert!(out.contains(&y2));

        let out = eliminate_solve(&mk(&["x+y", "x-y"]), 1, &Budget::default()).unwrap();
        assert!(out.contains(&parse_poly("y", &vars).unwrap()));

        let out = eliminate_solve(&mk(&["x^2+y^2-2", "x-y"]), 1, &Budget::default()).unwrap();
        assert!(out
            .iter()
            .any(|p| p.exact_div(&y2).map_or(false, |q| q.is_constant() && !q.is_zero())));
    }

    #[test]
    fn spair_certificate_and_generator_invariance() {
        let vars = VarTable::new(vec!["x", "y", "z"]);
        let gens = ["x^2*y-z", "x*z-y^2", "y*z-x"];
        let polys: Vec<MultiPoly> = gens.iter().map(|s| parse_poly(s, &vars).unwrap()).collect();
        let gb = gb_of(&gens, &vars, MonomialOrder::GradedRevLex);
        assert!(gb.complete);
        for g in &polys {
            assert!(normal_form(g, &gb.elements, gb.order).is_zero());
        }
        for i in 0..gb.elements.len() {
            for j in (i + 1)..gb.elements.len() {
                let fi = to_ipoly(&gb.elements[i], gb.order);
                let fj = to_ipoly(&gb.elements[j], gb.order);
                let s = spoly(&fi, &fj, gb.order);
                let f = from_ipoly(&s, &vars);
                assert!(normal_form(&f, &gb.elements, gb.order).is_zero());
            }
        }
    }

    #[test]
    fn lex_vs_grevlex_membership_agrees() {
        let vars = VarTable::new(vec!["x", "y"]);
        let gens = ["x^2-y", "x*y-1"];
        let g1 = gb_of(&gens, &vars, MonomialOrder::GradedRevLex);
        let g2 = gb_of(&gens, &vars, MonomialOrder::Lex);
        for probe in ["x^3-1", "y^2-x", "x+y", "x^2+y", "y^3-1"] {
            let f = parse_poly(probe, &vars).unwrap();
            assert_eq!(
                membership(&f, &g1).unwrap(),
                membership(&f, &g2).unwrap(),
                "disagreement on {probe}"
            );
        }
    }

    #[test]
    fn degree_cap_gives_partial() {
        let vars = VarTable::new(vec!["x", "y"]);
        let polys: Vec<MultiPoly> = ["x^2*y-1", "x*y^2-x"]
            .iter()
            .map(|s| parse_poly(s, &vars).unwrap())
            .collect();
        let gb = buchberger(
            &Ideal::new(polys, MonomialOrder::GradedRevLex),
            Some(3),
            &Budget::default(),
        )
        .unwrap();
        assert!(!gb.complete);
        assert!(membership(&parse_poly("x", &vars).unwrap(), &gb).is_err());
        assert_eq!(
            membership_partial(&parse_poly("x^2*y-1", &vars).unwrap(), &gb),
            Some(true)
        );
    }
}
