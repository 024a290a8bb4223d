//! Factor extraction for Groebner-basis elements: square-free decomposition,
//! univariate factorization over the rationals, atom-library trial division,
//! and cyclotomic recognition.
//!
//! No general multivariate factorization lives here. The factors that matter
//! are structurally predictable, so trial division against a per-case atom
//! library plus square-free splitting plus univariate completion covers the
//! deduction pipeline; anything left unsplit is carried as a cofactor.

use crate::exactpoly::{rat_int, MonomialOrder, MultiPoly, PolyError, Rat, Vars};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

const ORDER: MonomialOrder = MonomialOrder::GradedRevLex;

/// Ordered list of trial-division candidates.
#[derive(Debug, Clone)]
pub struct AtomLibrary {
    atoms: Vec<MultiPoly>,
}

impl AtomLibrary {
    pub fn new(atoms: Vec<MultiPoly>) -> Self {
        let mut lib = AtomLibrary { atoms: Vec::new() };
        for a in atoms {
            lib.register(a);
        }
        lib
    }

    /// Adds an atom unless it is constant, zero, or an associate of an
    /// existing atom.
    pub fn register(&mut self, atom: MultiPoly) {
        if atom.is_zero() || atom.is_constant() {
            return;
        }
        let (_, prim) = atom.primitive_part(ORDER);
        if !self.atoms.contains(&prim) {
            self.atoms.push(prim);
        }
    }

    pub fn atoms(&self) -> &[MultiPoly] {
        &self.atoms
    }
}

/// `unit * prod(factors^multiplicity) * cofactor` equals the original input.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(MultiPoly, u32)>,
    pub cofactor: MultiPoly,
    /// False when some part resisted complete splitting.
    pub complete: bool,
}

impl Factorization {
    /// Recomputes the defining product; callers assert equality with the
    /// original input.
    pub fn reconstruct(&self, vars: &Vars) -> MultiPoly {
        let mut acc = MultiPoly::constant(vars, self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc.mul(&self.cofactor)
    }
}

// ---------------------------------------------------------------------------
// Multivariate gcd (primitive PRS)
// ---------------------------------------------------------------------------

fn coeffs_in(f: &MultiPoly, v: usize) -> Vec<MultiPoly> {
    let vars = f.vars();
    let deg = f.degree_in(v).unwrap_or(0) as usize;
    let mut out = vec![MultiPoly::zero(vars); deg + 1];
    for (m, c) in f.terms() {
        let e = m.exp(v) as usize;
        let mut stripped = m.exps().to_vec();
        stripped[v] = 0;
        let mono = crate::exactpoly::Monomial::from_exps(&stripped);
        out[e] = out[e].add(&MultiPoly::from_terms(vars, vec![(mono, c.clone())]));
    }
    out
}

fn from_coeffs(coeffs: &[MultiPoly], v: usize, vars: &Vars) -> MultiPoly {
    let mut acc = MultiPoly::zero(vars);
    let xv = MultiPoly::var(vars, v);
    for (e, c) in coeffs.iter().enumerate() {
        acc = acc.add(&c.mul(&xv.pow(e as u32)));
    }
    acc
}

fn content_in(f: &MultiPoly, v: usize) -> MultiPoly {
    let coeffs = coeffs_in(f, v);
    let mut acc = MultiPoly::zero(f.vars());
    for c in coeffs {
        if !c.is_zero() {
            acc = gcd_multi(&acc, &c);
        }
    }
    acc
}

/// Multivariate gcd over the rationals, normalized integer-primitive with
/// positive leading coefficient.
pub fn gcd_multi(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return if g.is_zero() {
            g.clone()
        } else {
            g.primitive_part(ORDER).1
        };
    }
    if g.is_zero() {
        return f.primitive_part(ORDER).1;
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(f.vars());
    }
    let sup_f = f.support();
    let sup_g = g.support();
    let v = *sup_f.iter().chain(sup_g.iter()).max().unwrap();
    if !sup_f.contains(&v) {
        return gcd_multi(f, &content_in(g, v));
    }
    if !sup_g.contains(&v) {
        return gcd_multi(&content_in(f, v), g);
    }

    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd_multi(&cf, &cg);
    let fp = f.exact_div(&cf).expect("content divides");
    let gp = g.exact_div(&cg).expect("content divides");

    let (mut a, mut b) = if f.degree_in(v) >= g.degree_in(v) {
        (fp, gp)
    } else {
        (gp, fp)
    };
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b, v);
        let r = if r.is_zero() {
            r
        } else {
            let rc = content_in(&r, v);
            r.exact_div(&rc).expect("content divides")
        };
        a = b;
        b = r;
    }
    let prim = a.primitive_part(ORDER).1;
    c.mul(&prim).primitive_part(ORDER).1
}

/// Pseudo-remainder of `a` by `b` with respect to variable `v`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v).unwrap_or(0);
    let b_coeffs = coeffs_in(b, v);
    let lb = b_coeffs[db as usize].clone();
    let vars = a.vars().clone();
    let xv = MultiPoly::var(&vars, v);
    let mut r = a.clone();
    loop {
        let da = match r.degree_in(v) {
            Some(d) if d >= db && !r.is_zero() => d,
            _ => return r,
        };
        let r_coeffs = coeffs_in(&r, v);
        let lr = r_coeffs[da as usize].clone();
        // r := lb*r - lr*x^(da-db)*b
        r = lb.mul(&r).sub(&lr.mul(&xv.pow(da - db)).mul(b));
    }
}

// ---------------------------------------------------------------------------
// Square-free decomposition
// ---------------------------------------------------------------------------

/// Square-free decomposition via gcds with partial derivatives, iterated over
/// each variable (Yun's algorithm per main variable, recursing on content).
pub fn squarefree(f: &MultiPoly) -> Factorization {
    assert!(!f.is_zero(), "square-free decomposition of zero");
    let vars = f.vars().clone();
    let (unit, prim) = f.primitive_part(ORDER);
    let mut factors: Vec<(MultiPoly, u32)> = Vec::new();
    decompose(&prim, &mut factors);
    factors.sort_by(|(a, am), (b, bm)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.to_string().cmp(&b.to_string()))
            .then_with(|| am.cmp(bm))
    });
    let fz = Factorization {
        unit,
        factors,
        cofactor: MultiPoly::one(&vars),
        complete: true,
    };
    debug_assert_eq!(fz.reconstruct(&vars), *f);
    fz
}

fn decompose(f: &MultiPoly, out: &mut Vec<(MultiPoly, u32)>) {
    if f.is_constant() {
        return;
    }
    let v = *f.support().last().unwrap();
    let content = content_in(f, v);
    let p = f.exact_div(&content).expect("content divides");

    // Yun's algorithm on the part primitive in v
    let dp = p.derivative(v);
    let mut g = gcd_multi(&p, &dp);
    let mut w = p.exact_div(&g).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_constant() {
        let y = gcd_multi(&w, &g);
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_constant() {
            out.push((z.primitive_part(ORDER).1, i));
        }
        g = g.exact_div(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    decompose(&content, out);
}

// ---------------------------------------------------------------------------
// Univariate factorization over Q
// ---------------------------------------------------------------------------

/// Complete factorization of a univariate polynomial into rational
/// irreducibles, by rational-root stripping, cyclotomic trial division, and
/// interpolation search over integer divisor combinations. Above
/// `max_degree` the input is returned as its own cofactor, flagged
/// incomplete.
pub fn factor_univariate(f: &MultiPoly, max_degree: u32) -> Factorization {
    let vars = f.vars().clone();
    assert!(!f.is_zero());
    let support = f.support();
    assert!(support.len() <= 1, "input must be univariate");
    let (unit, prim) = f.primitive_part(ORDER);
    if prim.is_constant() {
        return Factorization {
            unit,
            factors: Vec::new(),
            cofactor: prim,
            complete: true,
        };
    }
    let v = support[0];
    if f.degree().unwrap() > max_degree {
        return Factorization {
            unit,
            factors: Vec::new(),
            cofactor: prim,
            complete: false,
        };
    }

    // square-free split first; factor each part
    let sf = squarefree(&prim);
    let mut factors: Vec<(MultiPoly, u32)> = Vec::new();
    let mut cofactor = MultiPoly::one(&vars);
    let mut complete = true;
    for (part, mult) in &sf.factors {
        let (fs, co, _ok) = factor_squarefree_univariate(part, v);
        for irr in fs {
            factors.push((irr, *mult));
        }
        if !co.is_constant() {
            cofactor = cofactor.mul(&co.pow(*mult));
            complete = false;
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    let fz = Factorization {
        unit: unit * sf.unit,
        factors,
        cofactor,
        complete,
    };
    debug_assert_eq!(fz.reconstruct(&vars), *f);
    fz
}

/// Returns (irreducible factors, unsplit cofactor, fully-split flag).
fn factor_squarefree_univariate(p: &MultiPoly, v: usize) -> (Vec<MultiPoly>, MultiPoly, bool) {
    let vars = p.vars().clone();
    let mut rest = p.primitive_part(ORDER).1;
    let mut out = Vec::new();

    // rational roots give linear factors
    loop {
        if rest.degree().unwrap_or(0) < 1 {
            break;
        }
        match rational_root(&rest, v) {
            None => break,
            Some((num, den)) => {
                // factor den*x - num
                let lin = MultiPoly::var(&vars, v)
                    .scale(&Rat::from_integer(den))
                    .sub(&MultiPoly::constant(&vars, Rat::from_integer(num)));
                let lin = lin.primitive_part(ORDER).1;
                rest = rest.exact_div(&lin).expect("root divides").primitive_part(ORDER).1;
                out.push(lin);
            }
        }
    }

    // cyclotomic divisors (cheap and common in this domain)
    let deg_left = rest.degree().unwrap_or(0);
    if deg_left >= 2 {
        for m in 3..=240u32 {
            if euler_phi(m) > rest.degree().unwrap_or(0) {
                continue;
            }
            let phi = cyclotomic_poly(m, v, &vars);
            while let Some(q) = rest.exact_div(&phi) {
                out.push(phi.clone());
                rest = q.primitive_part(ORDER).1;
            }
            if rest.degree().unwrap_or(0) < 2 {
                break;
            }
        }
    }
    if rest.degree().unwrap_or(0) == 1 {
        out.push(rest.clone());
        rest = MultiPoly::one(&vars);
    }

    // interpolation search for factors of degree 2..deg/2
    let mut split_ok = true;
    'outer: while rest.degree().unwrap_or(0) >= 4 {
        let d = rest.degree().unwrap();
        for k in 2..=(d / 2) {
            match kronecker_search(&rest, v, k) {
                KroneckerOutcome::Factor(g) => {
                    rest = rest.exact_div(&g).expect("factor divides").primitive_part(ORDER).1;
                    out.push(g);
                    continue 'outer;
                }
                KroneckerOutcome::NoFactor => {}
                KroneckerOutcome::Overflow => {
                    split_ok = false;
                    break 'outer;
                }
            }
        }
        // no factor up to d/2: irreducible
        break;
    }

    if split_ok {
        if !rest.is_constant() {
            out.push(rest);
        }
        (out, MultiPoly::one(&vars), true)
    } else {
        (out, rest, false)
    }
}

/// Rational root p/q of a primitive integer polynomial in variable `v`:
/// p divides the trailing coefficient, q the leading one.
fn rational_root(p: &MultiPoly, v: usize) -> Option<(BigInt, BigInt)> {
    let deg = p.degree_in(v)? as usize;
    if deg == 0 {
        return None;
    }
    let coeffs = coeffs_in(p, v);
    let lead = coeffs[deg].constant_value()?;
    let trail = coeffs[0].constant_value()?;
    if !lead.is_integer() || !trail.is_integer() {
        return None;
    }
    if trail.is_zero() {
        return Some((BigInt::zero(), BigInt::one()));
    }
    let lead = lead.numer().clone();
    let trail = trail.numer().clone();
    for num in all_divisors(&trail) {
        for den in all_divisors(&lead) {
            for sign in [1i64, -1] {
                let n = &num * BigInt::from(sign);
                let x = Rat::new(n.clone(), den.clone());
                let mut acc = Rat::zero();
                for (e, c) in coeffs.iter().enumerate() {
                    if let Some(cv) = c.constant_value() {
                        let mut pow = Rat::one();
                        for _ in 0..e {
                            pow *= &x;
                        }
                        acc += cv * pow;
                    } else {
                        return None;
                    }
                }
                if acc.is_zero() {
                    return Some((n, den.clone()));
                }
            }
        }
    }
    None
}

enum KroneckerOutcome {
    Factor(MultiPoly),
    NoFactor,
    Overflow,
}

const KRONECKER_BUDGET: u64 = 2_000_000;

/// Searches for a degree-`k` divisor by interpolating through divisor
/// combinations of values at k+1 integer points.
fn kronecker_search(p: &MultiPoly, v: usize, k: u32) -> KroneckerOutcome {
    let vars = p.vars().clone();
    let pts: Vec<i64> = sample_points(k as usize + 1);
    let mut value_divisors: Vec<Vec<BigInt>> = Vec::new();
    for &x in &pts {
        let val = eval_at_int(p, v, x);
        if val.is_zero() {
            // rational roots were stripped already; treat as no factor here
            return KroneckerOutcome::NoFactor;
        }
        let divs = all_divisors(&val);
        value_divisors.push(divs);
    }
    let mut combos: u64 = 1;
    for d in &value_divisors {
        combos = combos.saturating_mul(d.len() as u64 * 2);
        if combos > KRONECKER_BUDGET {
            return KroneckerOutcome::Overflow;
        }
    }

    let n = pts.len();
    let mut idx = vec![0usize; n];
    let mut signs = vec![false; n];
    loop {
        let values: Vec<BigInt> = (0..n)
            .map(|i| {
                let d = value_divisors[i][idx[i]].clone();
                if signs[i] {
                    -d
                } else {
                    d
                }
            })
            .collect();
        if let Some(cand) = interpolate(&pts, &values, v, &vars) {
            if cand.degree() == Some(k) && !cand.is_constant() {
                let prim = cand.primitive_part(ORDER).1;
                if let Some(_q) = p.exact_div(&prim) {
                    return KroneckerOutcome::Factor(prim);
                }
            }
        }
        // advance odometer over (sign, divisor) choices
        let mut pos = 0;
        loop {
            if pos == n {
                return KroneckerOutcome::NoFactor;
            }
            if !signs[pos] {
                signs[pos] = true;
                break;
            }
            signs[pos] = false;
            idx[pos] += 1;
            if idx[pos] < value_divisors[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn sample_points(n: usize) -> Vec<i64> {
    let mut pts = Vec::with_capacity(n);
    let mut x = 0i64;
    while pts.len() < n {
        pts.push(x);
        x = if x > 0 { -x } else { -x + 1 };
    }
    pts
}

fn eval_at_int(p: &MultiPoly, v: usize, x: i64) -> BigInt {
    let mut acc = Rat::zero();
    let xr = rat_int(x);
    for (m, c) in p.terms() {
        let e = m.exp(v) as u32;
        let mut pow = Rat::one();
        for _ in 0..e {
            pow *= &xr;
        }
        acc += c * pow;
    }
    debug_assert!(acc.is_integer());
    acc.numer().clone()
}

fn all_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    // trial division; inputs here are small evaluation values
    let mut divs: Vec<BigInt> = Vec::new();
    let mut rest = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2u32);
    while &d * &d <= rest {
        if (&rest % &d).is_zero() {
            let mut cnt = 0;
            while (&rest % &d).is_zero() {
                rest = &rest / &d;
                cnt += 1;
            }
            primes.push((d.clone(), cnt));
        }
        d += 1;
    }
    if rest > BigInt::one() {
        primes.push((rest, 1));
    }
    divs.push(BigInt::one());
    for (p, cnt) in primes {
        let snapshot = divs.clone();
        let mut pk = BigInt::one();
        for _ in 0..cnt {
            pk = &pk * &p;
            for s in &snapshot {
                divs.push(s * &pk);
            }
        }
    }
    divs.sort();
    divs
}

/// Lagrange interpolation; returns None when the result is not a polynomial
/// with the requested integer values (cannot happen) or has non-integer
/// coefficients worth rejecting early.
fn interpolate(pts: &[i64], values: &[BigInt], v: usize, vars: &Vars) -> Option<MultiPoly> {
    let n = pts.len();
    let mut acc = MultiPoly::zero(vars);
    let xv = MultiPoly::var(vars, v);
    for i in 0..n {
        let mut num = MultiPoly::constant(vars, Rat::from_integer(values[i].clone()));
        let mut den = Rat::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            num = num.mul(&xv.sub(&MultiPoly::int(vars, pts[j])));
            den *= rat_int(pts[i]) - rat_int(pts[j]);
        }
        acc = acc.add(&num.scale(&den.recip()));
    }
    Some(acc)
}

// ---------------------------------------------------------------------------
// Atom-library extraction
// ---------------------------------------------------------------------------

/// Repeatedly divides out library atoms, square-free splits the residue, and
/// completes univariate residues; whatever remains is the cofactor.
pub fn extract_factors(f: &MultiPoly, lib: &AtomLibrary) -> Factorization {
    assert!(!f.is_zero(), "cannot factor zero");
    let vars = f.vars().clone();
    let (mut unit, mut rest) = f.primitive_part(ORDER);
    let mut factors: Vec<(MultiPoly, u32)> = Vec::new();

    for atom in lib.atoms() {
        let mut mult = 0u32;
        while let Some(q) = rest.exact_div(atom) {
            let (u, qp) = q.primitive_part(ORDER);
            unit *= u;
            rest = qp;
            mult += 1;
        }
        if mult > 0 {
            factors.push((atom.clone(), mult));
        }
    }

    let mut cofactor = MultiPoly::one(&vars);
    let mut complete = true;
    if !rest.is_constant() {
        let sf = squarefree(&rest);
        unit *= sf.unit;
        for (part, mult) in sf.factors {
            if part.support().len() == 1 && part.degree().unwrap_or(0) <= 16 {
                let uf = factor_univariate(&part, 16);
                let scaled = uf.unit;
                let mut upow = Rat::one();
                for _ in 0..mult {
                    upow *= &scaled;
                }
                unit *= upow;
                for (irr, m) in uf.factors {
                    merge_factor(&mut factors, irr, m * mult);
                }
                if !uf.cofactor.is_constant() {
                    cofactor = cofactor.mul(&uf.cofactor.pow(mult));
                    complete = false;
                }
            } else if part.support().len() <= 1 {
                merge_factor(&mut factors, part, mult);
            } else {
                // multivariate square-free part: a legitimate split factor
                merge_factor(&mut factors, part, mult);
            }
        }
    } else {
        unit *= rest.constant_value().unwrap();
    }

    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    let fz = Factorization {
        unit,
        factors,
        cofactor,
        complete,
    };
    debug_assert_eq!(fz.reconstruct(&vars), *f);
    fz
}

fn merge_factor(factors: &mut Vec<(MultiPoly, u32)>, f: MultiPoly, m: u32) {
    match factors.iter_mut().find(|(g, _)| *g == f) {
        Some((_, gm)) => *gm += m,
        None => factors.push((f, m)),
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic recognition
// ---------------------------------------------------------------------------

pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The m-th cyclotomic polynomial in variable `v`.
pub fn cyclotomic_poly(m: u32, v: usize, vars: &Vars) -> MultiPoly {
    let x = MultiPoly::var(vars, v);
    let mut num = x.pow(m).sub(&MultiPoly::one(vars));
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_poly(d, v, vars);
            num = num.exact_div(&phi_d).expect("cyclotomic divides");
        }
    }
    num
}

/// Orders m <= max_order whose cyclotomic polynomial divides `f`.
/// Rejects inputs that are not integer-coefficient univariate polynomials in
/// `var` (after primitivization).
pub fn cyclotomic_candidates(
    f: &MultiPoly,
    var: usize,
    max_order: u32,
) -> Result<Vec<u32>, PolyError> {
    let support = f.support();
    if support.iter().any(|&v| v != var) {
        return Err(PolyError::VarTableMismatch);
    }
    let (_, prim) = f.primitive_part(ORDER);
    if !prim.has_integer_coeffs() {
        return Err(PolyError::VarTableMismatch);
    }
    let deg = prim.degree().unwrap_or(0);
    let mut out = Vec::new();
    for m in 1..=max_order {
        if euler_phi(m) > deg {
            continue;
        }
        let phi = cyclotomic_poly(m, var, f.vars());
        if prim.exact_div(&phi).is_some() {
            out.push(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, VarTable};

    #[test]
    fn squarefree_examples() {
        let vars = VarTable::new(vec!["x", "y"]);
        let f = parse_poly("(x-1)^2*y", &vars).unwrap();
        let sf = squarefree(&f);
        assert_eq!(sf.reconstruct(&vars), f);
        let mut parts: Vec<(String, u32)> = sf
            .factors
            .iter()
            .map(|(p, m)| (p.to_string(), *m))
            .collect();
        parts.sort();
        assert_eq!(
            parts,
            vec![("x - 1".to_string(), 2), ("y".to_string(), 1)]
        );

        let g = parse_poly("x^2+y", &vars).unwrap();
        let sf = squarefree(&g);
        assert_eq!(sf.factors.len(), 1);
        assert_eq!(sf.factors[0], (g.clone(), 1));
    }

    #[test]
    fn squarefree_univariate_powers() {
        let vars = VarTable::new(vec!["t"]);
        let f = parse_poly("(t^2+1)^2*(t+1)", &vars).unwrap();
        let sf = squarefree(&f);
        assert_eq!(sf.reconstruct(&vars), f);
        let mut parts: Vec<(String, u32)> = sf
            .factors
            .iter()
            .map(|(p, m)| (p.to_string(), *m))
            .collect();
        parts.sort();
        assert_eq!(
            parts,
            vec![("t + 1".to_string(), 1), ("t^2 + 1".to_string(), 2)]
        );
    }

    #[test]
    fn factor_univariate_examples() {
        let vars = VarTable::new(vec!["x"]);
        let f = parse_poly("x^2-1", &vars).unwrap();
        let fz = factor_univariate(&f, 16);
        assert!(fz.complete);
        let mut strs: Vec<String> = fz.factors.iter().map(|(p, _)| p.to_string()).collect();
        strs.sort();
        assert_eq!(strs, vec!["x + 1", "x - 1"]);

        let phi5 = parse_poly("x^4+x^3+x^2+x+1", &vars).unwrap();
        let fz = factor_univariate(&phi5, 16);
        assert_eq!(fz.factors.len(), 1);
        assert_eq!(fz.factors[0].0, phi5);

        let f = parse_poly("x^3-x", &vars).unwrap();
        let fz = factor_univariate(&f, 16);
        let mut strs: Vec<String> = fz.factors.iter().map(|(p, _)| p.to_string()).collect();
        strs.sort();
        assert_eq!(strs, vec!["x", "x + 1", "x - 1"]);
    }

    #[test]
    fn factor_univariate_nontrivial_quartic() {
        let vars = VarTable::new(vec!["x"]);
        // (x^2+x+3)(x^2-2x+5): no rational roots, not cyclotomic
        let f = parse_poly("(x^2+x+3)*(x^2-2*x+5)", &vars).unwrap();
        let fz = factor_univariate(&f, 16);
        assert!(fz.complete);
        assert_eq!(fz.factors.len(), 2);
        assert_eq!(fz.reconstruct(&vars), f);
    }

    #[test]
    fn extract_factor_examples() {
        let vars = VarTable::new(vec!["p", "D", "d2"]);
        let lib = AtomLibrary::new(vec![
            parse_poly("p", &vars).unwrap(),
            parse_poly("D", &vars).unwrap(),
            parse_poly("d2", &vars).unwrap(),
            parse_poly("p^2+D", &vars).unwrap(),
        ]);
        let pd = parse_poly("p*D", &vars).unwrap();
        let fz = extract_factors(&pd, &lib);
        assert_eq!(fz.factors.len(), 2);
        assert!(fz.cofactor.is_constant());

        let f = parse_poly("d2*(p^2+D)", &vars).unwrap();
        let fz = extract_factors(&f, &lib);
        let strs: Vec<String> = fz.factors.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(strs, vec!["d2", "p^2 + D"]);
    }

    #[test]
    fn extract_three_linear_atoms() {
        let vars = VarTable::new(vec!["t2", "t3"]);
        let lib = AtomLibrary::new(vec![
            parse_poly("t3-1", &vars).unwrap(),
            parse_poly("t3-t2", &vars).unwrap(),
            parse_poly("t2+1", &vars).unwrap(),
        ]);
        let f = parse_poly("(t3-1)*(t3-t2)*(t2+1)", &vars).unwrap();
        let fz = extract_factors(&f, &lib);
        assert_eq!(fz.factors.len(), 3);
        assert!(fz.cofactor.is_constant());
        assert_eq!(fz.reconstruct(&vars), f);
    }

    #[test]
    fn cyclotomic_examples() {
        let vars = VarTable::new(vec!["x"]);
        let f = parse_poly("x^2+x+1", &vars).unwrap();
        assert_eq!(cyclotomic_candidates(&f, 0, 240).unwrap(), vec![3]);

        let f = parse_poly("x^2+1", &vars).unwrap();
        assert_eq!(cyclotomic_candidates(&f, 0, 240).unwrap(), vec![4]);

        let f = parse_poly("x^2+2*x+1", &vars).unwrap();
        assert_eq!(cyclotomic_candidates(&f, 0, 240).unwrap(), vec![2]);

        let f = parse_poly("x^2-x-1", &vars).unwrap();
        assert!(cyclotomic_candidates(&f, 0, 240).unwrap().is_empty());
    }

    #[test]
    fn cyclotomic_poly_values() {
        let vars = VarTable::new(vec!["x"]);
        assert_eq!(
            cyclotomic_poly(1, 0, &vars),
            parse_poly("x-1", &vars).unwrap()
        );
        assert_eq!(
            cyclotomic_poly(6, 0, &vars),
            parse_poly("x^2-x+1", &vars).unwrap()
        );
        assert_eq!(
            cyclotomic_poly(8, 0, &vars),
            parse_poly("x^4+1", &vars).unwrap()
        );
    }

    #[test]
    fn gcd_multivariate() {
        let vars = VarTable::new(vec!["x", "y"]);
        let f = parse_poly("(x+y)*(x-y)", &vars).unwrap();
        let g = parse_poly("(x+y)*x", &vars).unwrap();
        assert_eq!(gcd_multi(&f, &g), parse_poly("x+y", &vars).unwrap());
    }
}
