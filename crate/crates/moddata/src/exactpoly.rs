//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials are sparse maps from exponent vectors to nonzero rational
//! coefficients, tied to an ordered variable table. The variable order is part
//! of every case definition because it determines monomial orders and thus the
//! shape of Groebner output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Exact rational scalar. Always stored in lowest terms with positive
/// denominator (enforced by the backing implementation).
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Ordered list of variable names; the order is significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        Arc::new(VarTable { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub type Vars = Arc<VarTable>;

const INLINE_VARS: usize = 20;

/// Exponent vector indexed by a fixed variable table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u16; INLINE_VARS]>,
}

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn var(nvars: usize, idx: usize, exp: u16) -> Self {
        let mut m = Self::unit(nvars);
        m.exps[idx] = exp;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, idx: usize) -> u16 {
        self.exps[idx]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Exact quotient, or `None` when some exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variable indices with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

/// Total multiplicative monomial orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MonomialOrder {
    /// Total degree first, ties broken by the rightmost difference reversed.
    GradedRevLex,
    /// Plain left-to-right exponent comparison.
    Lex,
    /// Graded comparison on the first `k` variables, ties broken by
    /// GradedRevLex on the remainder. Used to eliminate leading variables.
    Eliminate(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => lex_cmp(a.exps(), b.exps()),
            MonomialOrder::GradedRevLex => grevlex_cmp(a.exps(), b.exps()),
            MonomialOrder::Eliminate(k) => {
                let k = k.min(a.exps().len());
                grevlex_cmp(&a.exps()[..k], &b.exps()[..k])
                    .then_with(|| grevlex_cmp(&a.exps()[k..], &b.exps()[k..]))
            }
        }
    }
}

fn lex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // rightmost difference: smaller exponent means greater monomial
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("variable table mismatch")]
    VarTableMismatch,
}

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept sorted descending by GradedRevLex, so equal polynomials
/// have identical term vectors regardless of construction path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vars,
    terms: Vec<(Monomial, Rat)>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((Monomial::unit(vars.len()), c));
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn int(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, rat_int(n))
    }

    pub fn var(vars: &Vars, idx: usize) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: vec![(Monomial::var(vars.len(), idx, 1), Rat::one())],
        }
    }

    pub fn var_named(vars: &Vars, name: &str) -> Option<Self> {
        vars.index_of(name).map(|i| Self::var(vars, i))
    }

    pub fn from_terms(vars: &Vars, terms: Vec<(Monomial, Rat)>) -> Self {
        let mut p = MultiPoly {
            vars: vars.clone(),
            terms,
        };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        self.terms
            .sort_by(|(a, _), (b, _)| grevlex_cmp(b.exps(), a.exps()));
        let mut out: Vec<(Monomial, Rat)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        self.terms = out;
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_unit())
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Total degree; `None` is the degree of the zero polynomial and sorts
    /// below every finite degree.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(var) as u32).max()
    }

    /// Variable indices occurring with nonzero exponent anywhere.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vars.len()];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn check_same_vars(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarTableMismatch)
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MultiPoly::from_terms(&self.vars, terms)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        MultiPoly::from_terms(&self.vars, terms)
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, tc)| (m.clone(), tc * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Leading term under the given order.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.compare(a, b))
            .map(|(m, c)| (m, c))
    }

    /// Partial derivative with respect to one variable.
    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                let mut exps = SmallVec::<[u16; INLINE_VARS]>::from_slice(m.exps());
                exps[var] = e - 1;
                terms.push((Monomial { exps }, c * rat_int(e as i64)));
            }
        }
        MultiPoly::from_terms(&self.vars, terms)
    }

    /// Simultaneous substitution of polynomials for variables. Unassigned
    /// variables are left in place.
    pub fn substitute(&self, assignment: &[Option<MultiPoly>]) -> MultiPoly {
        assert_eq!(assignment.len(), self.vars.len());
        let mut acc = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut base = Monomial::unit(self.vars.len());
            let mut poly_part: Option<MultiPoly> = None;
            for i in 0..self.vars.len() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                match &assignment[i] {
                    None => {
                        let mut exps =
                            SmallVec::<[u16; INLINE_VARS]>::from_slice(base.exps());
                        exps[i] = e;
                        base = Monomial { exps };
                    }
                    Some(sub) => {
                        let powed = sub.pow(e as u32);
                        poly_part = Some(match poly_part {
                            None => powed,
                            Some(p) => p.mul(&powed),
                        });
                    }
                }
            }
            let term = MultiPoly {
                vars: self.vars.clone(),
                terms: vec![(base, c.clone())],
            };
            let full = match poly_part {
                None => term,
                Some(p) => p.mul(&term),
            };
            acc = acc.add(&full);
        }
        acc
    }

    /// Exact polynomial quotient, or `None` when the division leaves a
    /// remainder. Order-independent: succeeds iff `other` divides `self`.
    pub fn exact_div(&self, other: &MultiPoly) -> Option<MultiPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MultiPoly::zero(&self.vars));
        }
        let order = MonomialOrder::GradedRevLex;
        let (lm, lc) = other.leading_term(order).unwrap();
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot_terms: Vec<(Monomial, Rat)> = Vec::new();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_term(order).unwrap();
            let qm = rm.try_div(&lm)?;
            let qc = rc / &lc;
            quot_terms.push((qm.clone(), qc.clone()));
            rem = rem.sub(&other.mul_term(&qm, &qc));
        }
        Some(MultiPoly::from_terms(&self.vars, quot_terms))
    }

    /// Content/primitive decomposition: returns `(unit, primitive)` with
    /// `self = unit * primitive`, where `primitive` has coprime integer
    /// coefficients and positive leading coefficient under `order`.
    pub fn primitive_part(&self, order: MonomialOrder) -> (Rat, MultiPoly) {
        if self.is_zero() {
            return (Rat::one(), self.clone());
        }
        let mut denom_lcm = BigInt::one();
        for (_, c) in &self.terms {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = numer_gcd.gcd(&scaled);
        }
        let mut unit = Rat::new(numer_gcd, denom_lcm);
        let mut prim = self.scale(&unit.recip());
        let (_, lc) = prim.leading_term(order).unwrap();
        if lc.is_negative() {
            unit = -unit;
            prim = prim.neg();
        }
        (unit, prim)
    }

    /// True when all coefficients are integers.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Renders the polynomial with terms descending under `order`.
    pub fn to_string_ordered(&self, order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<&(Monomial, Rat)> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out = String::new();
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            let mono_str = monomial_string(m, &self.vars);
            match (coeff_str.as_str(), mono_str.as_str()) {
                (_, "") => out.push_str(&coeff_str),
                ("1", _) => out.push_str(&mono_str),
                _ => {
                    out.push_str(&coeff_str);
                    out.push('*');
                    out.push_str(&mono_str);
                }
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_ordered(MonomialOrder::GradedRevLex))
    }
}

fn monomial_string(m: &Monomial, vars: &VarTable) -> String {
    let mut parts = Vec::new();
    for i in 0..m.nvars() {
        let e = m.exp(i);
        if e == 1 {
            parts.push(vars.name(i).to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", vars.name(i), e));
        }
    }
    parts.join("*")
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

/// Parses the polynomial mini-language:
/// `expr := ['-'] term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := base ('^' uint)?`, `base := int ('/' uint)? | ident | '(' expr ')'`.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly, PolyError> {
    let mut p = Parser {
        input: text.as_bytes(),
        pos: 0,
        vars,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(PolyError::Syntax {
            pos: p.pos,
            msg: format!("unexpected character `{}`", p.input[p.pos] as char),
        });
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(PolyError::Syntax {
                        pos: self.pos,
                        msg: "expected `)`".to_string(),
                    })
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.uint_big()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let start = self.pos;
                    let denom = self.uint_big()?;
                    if denom.is_zero() {
                        return Err(PolyError::Syntax {
                            pos: start,
                            msg: "zero denominator".to_string(),
                        });
                    }
                    Ok(MultiPoly::constant(self.vars, Rat::new(numer, denom)))
                } else {
                    Ok(MultiPoly::constant(self.vars, Rat::from_integer(numer)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let mut end = self.pos;
                while end < self.input.len()
                    && (self.input[end].is_ascii_alphanumeric() || self.input[end] == b'_')
                {
                    end += 1;
                }
                let name = std::str::from_utf8(&self.input[start..end]).unwrap();
                self.pos = end;
                match self.vars.index_of(name) {
                    Some(idx) => Ok(MultiPoly::var(self.vars, idx)),
                    None => Err(PolyError::UnknownVariable {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            _ => Err(PolyError::Syntax {
                pos: self.pos,
                msg: "expected integer, variable, or `(`".to_string(),
            }),
        }
    }

    fn uint(&mut self) -> Result<u32, PolyError> {
        let start = self.pos;
        let big = self.uint_big()?;
        big.try_into().map_err(|_| PolyError::Syntax {
            pos: start,
            msg: "exponent too large".to_string(),
        })
    }

    fn uint_big(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PolyError::Syntax {
                pos: start,
                msg: "expected digits".to_string(),
            });
        }
        Ok(std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vars {
        VarTable::new(vec!["x", "y"])
    }

    fn xyz() -> Vars {
        VarTable::new(vec!["x", "y", "z"])
    }

    #[test]
    fn parse_basic() {
        let vars = VarTable::new(vec!["e"]);
        let p = parse_poly("e^2-1", &vars).unwrap();
        let e = MultiPoly::var(&vars, 0);
        assert_eq!(p, e.mul(&e).sub(&MultiPoly::one(&vars)));
    }

    #[test]
    fn parse_zero() {
        let vars = xy();
        assert!(parse_poly("0", &vars).unwrap().is_zero());
    }

    #[test]
    fn parse_product_expands() {
        let vars = VarTable::new(vec!["d1"]);
        let a = parse_poly("(d1+1)*(d1-1)", &vars).unwrap();
        let b = parse_poly("d1^2-1", &vars).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_errors() {
        let vars = xy();
        match parse_poly("x + w", &vars) {
            Err(PolyError::UnknownVariable { name, pos }) => {
                assert_eq!(name, "w");
                assert_eq!(pos, 4);
            }
            other => panic!("expected unknown variable, got {other:?}"),
        }
        assert!(matches!(
            parse_poly("x + ", &vars),
            Err(PolyError::Syntax { .. })
        ));
    }

    #[test]
    fn difference_of_squares() {
        let vars = xy();
        let x = MultiPoly::var(&vars, 0);
        let one = MultiPoly::one(&vars);
        let prod = x.add(&one).mul(&x.sub(&one));
        assert_eq!(prod, parse_poly("x^2-1", &vars).unwrap());
        assert!(prod.mul(&MultiPoly::zero(&vars)).is_zero());
    }

    #[test]
    fn grevlex_examples() {
        let vars = xyz();
        let xz = parse_poly("x*z", &vars).unwrap();
        let y2 = parse_poly("y^2", &vars).unwrap();
        let m1 = xz.terms()[0].0.clone();
        let m2 = y2.terms()[0].0.clone();
        assert_eq!(
            MonomialOrder::GradedRevLex.compare(&m1, &m2),
            Ordering::Less
        );
    }

    #[test]
    fn lex_example() {
        let vars = xy();
        let x = parse_poly("x", &vars).unwrap().terms()[0].0.clone();
        let y9 = parse_poly("y^9", &vars).unwrap().terms()[0].0.clone();
        assert_eq!(MonomialOrder::Lex.compare(&x, &y9), Ordering::Greater);
    }

    #[test]
    fn eliminate_example() {
        let vars = xy();
        let y3 = parse_poly("y^3", &vars).unwrap().terms()[0].0.clone();
        let x = parse_poly("x", &vars).unwrap().terms()[0].0.clone();
        assert_eq!(MonomialOrder::Eliminate(1).compare(&y3, &x), Ordering::Less);
    }

    #[test]
    fn substitution_examples() {
        let vars = VarTable::new(vec!["e", "d1", "z"]);
        let p = parse_poly("e^2-1", &vars).unwrap();
        let mut assign = vec![None, None, None];
        assign[0] = Some(MultiPoly::one(&vars));
        assert!(p.substitute(&assign).is_zero());

        let q = parse_poly("d1^2-z*d1+1", &vars).unwrap();
        let mut assign = vec![None, None, None];
        assign[2] = Some(MultiPoly::int(&vars, 3));
        assert_eq!(
            q.substitute(&assign),
            parse_poly("d1^2-3*d1+1", &vars).unwrap()
        );

        let empty = vec![None, None, None];
        assert_eq!(q.substitute(&empty), q);
    }

    #[test]
    fn display_canonical() {
        let vars = VarTable::new(vec!["d1", "t3"]);
        let p = parse_poly("2*d1^2*t3 - 1", &vars).unwrap();
        assert_eq!(p.to_string(), "2*d1^2*t3 - 1");
    }

    #[test]
    fn exact_division() {
        let vars = xy();
        let f = parse_poly("x^2-y^2", &vars).unwrap();
        let g = parse_poly("x-y", &vars).unwrap();
        let q = f.exact_div(&g).unwrap();
        assert_eq!(q, parse_poly("x+y", &vars).unwrap());
        assert!(parse_poly("x^2+1", &vars)
            .unwrap()
            .exact_div(&g)
            .is_none());
    }

    #[test]
    fn primitive_normalization() {
        let vars = xy();
        let f = parse_poly("2/3*x - 4/3*y", &vars).unwrap();
        let (unit, prim) = f.primitive_part(MonomialOrder::GradedRevLex);
        assert_eq!(prim, parse_poly("x - 2*y", &vars).unwrap());
        assert_eq!(prim.scale(&unit), f);
    }
}
