//! Numeric admissibility verification of solved modular data, the
//! known-category library, and tensor products.
//!
//! Library data is held exactly in cyclotomic fields Q(zeta_m); the
//! admissibility checks run in arbitrary-precision complex arithmetic.

use crate::exactpoly::{MultiPoly, Rat};
use crate::symmetry::Permutation;
use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cell::RefCell;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("embedding rejected: {0}")]
    EmbeddingRejected(String),
    #[error("root selection failed for `{0}`")]
    RootSelection(String),
    #[error("degenerate eigenvalue-column matching: {0}")]
    DegenerateMatching(String),
    #[error("bad solution file: {0}")]
    BadSolution(String),
}

// ---------------------------------------------------------------------------
// Arbitrary-precision complex scalars
// ---------------------------------------------------------------------------

/// Numeric context: precision in bits plus the shared constants cache.
pub struct NumCtx {
    pub bits: usize,
    rm: RoundingMode,
    consts: RefCell<Consts>,
}

impl NumCtx {
    pub fn new(bits: usize) -> Self {
        NumCtx {
            bits,
            rm: RoundingMode::ToEven,
            consts: RefCell::new(Consts::new().expect("constants cache")),
        }
    }

    /// Roughly 50 decimal digits.
    pub fn default_50_digits() -> Self {
        Self::new(256)
    }

    fn pi(&self) -> BigFloat {
        self.consts.borrow_mut().pi(self.bits, self.rm)
    }

    pub fn real_from_i64(&self, v: i64) -> BigFloat {
        BigFloat::parse(
            &v.to_string(),
            astro_float::Radix::Dec,
            self.bits,
            self.rm,
            &mut self.consts.borrow_mut(),
        )
    }

    pub fn real_from_bigint(&self, v: &BigInt) -> BigFloat {
        BigFloat::parse(
            &v.to_string(),
            astro_float::Radix::Dec,
            self.bits,
            self.rm,
            &mut self.consts.borrow_mut(),
        )
    }

    pub fn real_from_rat(&self, v: &Rat) -> BigFloat {
        let n = self.real_from_bigint(v.numer());
        let d = self.real_from_bigint(v.denom());
        n.div(&d, self.bits, self.rm)
    }

    pub fn to_f64(&self, v: &BigFloat) -> f64 {
        // format via decimal string; adequate for display and coarse checks
        let s = v
            .format(astro_float::Radix::Dec, self.rm, &mut self.consts.borrow_mut())
            .unwrap_or_else(|_| "nan".into());
        s.parse().unwrap_or(f64::NAN)
    }
}

/// Complex number over BigFloat.
#[derive(Debug, Clone)]
pub struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Cx {
    pub fn zero(ctx: &NumCtx) -> Self {
        Cx {
            re: ctx.real_from_i64(0),
            im: ctx.real_from_i64(0),
        }
    }

    pub fn one(ctx: &NumCtx) -> Self {
        Cx {
            re: ctx.real_from_i64(1),
            im: ctx.real_from_i64(0),
        }
    }

    pub fn real(ctx: &NumCtx, v: BigFloat) -> Self {
        Cx {
            re: v,
            im: ctx.real_from_i64(0),
        }
    }

    pub fn add(&self, o: &Cx, ctx: &NumCtx) -> Cx {
        Cx {
            re: self.re.add(&o.re, ctx.bits, ctx.rm),
            im: self.im.add(&o.im, ctx.bits, ctx.rm),
        }
    }

    pub fn sub(&self, o: &Cx, ctx: &NumCtx) -> Cx {
        Cx {
            re: self.re.sub(&o.re, ctx.bits, ctx.rm),
            im: self.im.sub(&o.im, ctx.bits, ctx.rm),
        }
    }

    pub fn mul(&self, o: &Cx, ctx: &NumCtx) -> Cx {
        let ac = self.re.mul(&o.re, ctx.bits, ctx.rm);
        let bd = self.im.mul(&o.im, ctx.bits, ctx.rm);
        let ad = self.re.mul(&o.im, ctx.bits, ctx.rm);
        let bc = self.im.mul(&o.re, ctx.bits, ctx.rm);
        Cx {
            re: ac.sub(&bd, ctx.bits, ctx.rm),
            im: ad.add(&bc, ctx.bits, ctx.rm),
        }
    }

    pub fn div(&self, o: &Cx, ctx: &NumCtx) -> Cx {
        let d = o.abs2(ctx);
        let num = self.mul(&o.conj(), ctx);
        Cx {
            re: num.re.div(&d, ctx.bits, ctx.rm),
            im: num.im.div(&d, ctx.bits, ctx.rm),
        }
    }

    pub fn conj(&self) -> Cx {
        let mut im = self.im.clone();
        im.inv_sign();
        Cx {
            re: self.re.clone(),
            im,
        }
    }

    pub fn abs2(&self, ctx: &NumCtx) -> BigFloat {
        let rr = self.re.mul(&self.re, ctx.bits, ctx.rm);
        let ii = self.im.mul(&self.im, ctx.bits, ctx.rm);
        rr.add(&ii, ctx.bits, ctx.rm)
    }

    pub fn abs(&self, ctx: &NumCtx) -> BigFloat {
        self.abs2(ctx).sqrt(ctx.bits, ctx.rm)
    }

    pub fn powi(&self, n: usize, ctx: &NumCtx) -> Cx {
        let mut acc = Cx::one(ctx);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            base = base.mul(&base, ctx);
            n >>= 1;
        }
        acc
    }

    /// e^(2 pi i k / m)
    pub fn root_of_unity(k: i64, m: u32, ctx: &NumCtx) -> Cx {
        let two = ctx.real_from_i64(2);
        let kk = ctx.real_from_i64(k.rem_euclid(m as i64));
        let mm = ctx.real_from_i64(m as i64);
        let theta = two
            .mul(&ctx.pi(), ctx.bits, ctx.rm)
            .mul(&kk, ctx.bits, ctx.rm)
            .div(&mm, ctx.bits, ctx.rm);
        let re = theta.cos(ctx.bits, ctx.rm, &mut ctx.consts.borrow_mut());
        let im = theta.sin(ctx.bits, ctx.rm, &mut ctx.consts.borrow_mut());
        Cx { re, im }
    }
}

fn bf_lt(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(c) if c < 0)
}

/// max(a, b) over BigFloat values
fn bf_max(a: BigFloat, b: BigFloat) -> BigFloat {
    if bf_lt(&a, &b) {
        b
    } else {
        a
    }
}

// ---------------------------------------------------------------------------
// Exact cyclotomic arithmetic
// ---------------------------------------------------------------------------

/// Coefficients of the m-th cyclotomic polynomial (monic, ascending).
pub fn cyclo_coeffs(m: u32) -> Vec<i64> {
    // x^m - 1 divided by the product of lower cyclotomics
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let phi = cyclo_coeffs(d);
            num = poly_div_exact_i64(&num, &phi);
        }
    }
    num
}

fn poly_div_exact_i64(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem: Vec<i64> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    assert_eq!(lead.abs(), 1);
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd] / lead;
        quot[k] = c;
        if c != 0 {
            for (i, dc) in den.iter().enumerate() {
                rem[k + i] -= c * dc;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Element of Q(zeta_m), reduced modulo the m-th cyclotomic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyc {
    pub m: u32,
    /// coefficients of zeta^0 .. zeta^(phi(m)-1)
    pub c: Vec<Rat>,
}

impl Cyc {
    pub fn zero(m: u32) -> Self {
        let phi = crate::factorlab::euler_phi(m) as usize;
        Cyc {
            m,
            c: vec![Rat::zero(); phi],
        }
    }

    pub fn from_int(m: u32, v: i64) -> Self {
        let mut z = Self::zero(m);
        z.c[0] = Rat::from_integer(BigInt::from(v));
        z
    }

    pub fn from_rat(m: u32, v: Rat) -> Self {
        let mut z = Self::zero(m);
        z.c[0] = v;
        z
    }

    /// zeta_m^k
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let kk = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![Rat::zero(); kk + 1];
        raw[kk] = Rat::one();
        Self::reduce(m, raw)
    }

    fn reduce(m: u32, mut raw: Vec<Rat>) -> Self {
        let phi = cyclo_coeffs(m);
        let deg = phi.len() - 1;
        // first reduce powers >= m via zeta^m = 1
        let mut folded = vec![Rat::zero(); (m as usize).max(deg)];
        for (k, v) in raw.drain(..).enumerate() {
            let idx = k % m as usize;
            folded[idx] += v;
        }
        // then reduce modulo the cyclotomic polynomial
        for k in (deg..folded.len()).rev() {
            let c = folded[k].clone();
            if c.is_zero() {
                continue;
            }
            folded[k] = Rat::zero();
            for (i, pc) in phi.iter().enumerate().take(deg) {
                folded[k - deg + i] -= &c * Rat::from_integer(BigInt::from(*pc));
            }
        }
        folded.truncate(deg);
        Cyc { m, c: folded }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, o: &Cyc) -> Cyc {
        assert_eq!(self.m, o.m);
        Cyc {
            m: self.m,
            c: self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Cyc) -> Cyc {
        assert_eq!(self.m, o.m);
        Cyc {
            m: self.m,
            c: self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            m: self.m,
            c: self.c.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn mul(&self, o: &Cyc) -> Cyc {
        assert_eq!(self.m, o.m);
        let mut raw = vec![Rat::zero(); self.c.len() + o.c.len()];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        Self::reduce(self.m, raw)
    }

    /// Galois map zeta -> zeta^u (u must be coprime to m).
    pub fn galois(&self, u: u32) -> Cyc {
        let mut acc = Cyc::zero(self.m);
        for (k, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let term = Cyc::zeta_pow(self.m, (k as i64) * (u as i64));
            let mut scaled = term;
            for c in &mut scaled.c {
                *c *= v;
            }
            acc = acc.add(&scaled);
        }
        acc
    }

    /// Complex conjugation: zeta -> zeta^(m-1).
    pub fn conj(&self) -> Cyc {
        self.galois(self.m - 1)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial.
    pub fn inv(&self) -> Option<Cyc> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<Rat> = cyclo_coeffs(self.m)
            .into_iter()
            .map(|c| Rat::from_integer(BigInt::from(c)))
            .collect();
        let a: Vec<Rat> = self.c.clone();
        let (g, u, _) = ext_gcd_poly(&a, &phi);
        // g must be a nonzero constant
        let gd = poly_deg(&g)?;
        if gd != 0 {
            return None;
        }
        let ginv = g[0].recip();
        let coeffs: Vec<Rat> = u.iter().map(|c| c * &ginv).collect();
        Some(Cyc::reduce(self.m, coeffs))
    }

    pub fn div(&self, o: &Cyc) -> Option<Cyc> {
        Some(self.mul(&o.inv()?))
    }

    /// Re-embeds into Q(zeta_M) for m | M.
    pub fn lift(&self, big_m: u32) -> Cyc {
        assert_eq!(big_m % self.m, 0);
        let step = (big_m / self.m) as i64;
        let mut acc = Cyc::zero(big_m);
        for (k, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mut term = Cyc::zeta_pow(big_m, k as i64 * step);
            for c in &mut term.c {
                *c *= v;
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Numeric embedding at zeta_m = e^(2 pi i / m).
    pub fn embed(&self, ctx: &NumCtx) -> Cx {
        let mut acc = Cx::zero(ctx);
        for (k, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let z = Cx::root_of_unity(k as i64, self.m, ctx);
            let s = Cx::real(ctx, ctx.real_from_rat(v));
            acc = acc.add(&z.mul(&s, ctx), ctx);
        }
        acc
    }
}

fn poly_deg(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Extended gcd over Q[x]: returns (g, u, v) with u*a + v*b = g.
fn ext_gcd_poly(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut s0 = vec![Rat::one()];
    let mut s1 = vec![Rat::zero()];
    let mut t0 = vec![Rat::zero()];
    let mut t1 = vec![Rat::one()];
    while poly_deg(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    let da = match poly_deg(&rem) {
        Some(d) => d,
        None => return (vec![Rat::zero()], vec![Rat::zero()]),
    };
    if da < db {
        return (vec![Rat::zero()], poly_trim(rem));
    }
    let mut quot = vec![Rat::zero(); da - db + 1];
    for k in (0..quot.len()).rev() {
        let idx = k + db;
        if idx >= rem.len() {
            continue;
        }
        let c = &rem[idx] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            rem[k + i] -= &c * bc;
        }
    }
    (poly_trim(quot), poly_trim(rem))
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

// ---------------------------------------------------------------------------
// Exact modular data and the known library
// ---------------------------------------------------------------------------

/// Modular data held exactly in a cyclotomic field.
#[derive(Debug, Clone)]
pub struct ModularDataExact {
    pub name: String,
    pub m: u32,
    pub s: Vec<Vec<Cyc>>,
    pub t: Vec<Cyc>,
}

impl ModularDataExact {
    pub fn rank(&self) -> usize {
        self.t.len()
    }

    pub fn to_numeric(&self, ctx: &NumCtx) -> ModularDataNumeric {
        ModularDataNumeric {
            name: self.name.clone(),
            s: self
                .s
                .iter()
                .map(|row| row.iter().map(|e| e.embed(ctx)).collect())
                .collect(),
            t: self.t.iter().map(|e| e.embed(ctx)).collect(),
        }
    }

    /// Kronecker product with row-major label pairing.
    pub fn tensor(&self, other: &ModularDataExact) -> ModularDataExact {
        let m = lcm_u32(self.m, other.m);
        let r1 = self.rank();
        let r2 = other.rank();
        let mut s = vec![vec![Cyc::zero(m); r1 * r2]; r1 * r2];
        for i1 in 0..r1 {
            for j1 in 0..r1 {
                for i2 in 0..r2 {
                    for j2 in 0..r2 {
                        s[i1 * r2 + i2][j1 * r2 + j2] = self.s[i1][j1]
                            .lift(m)
                            .mul(&other.s[i2][j2].lift(m));
                    }
                }
            }
        }
        let mut t = vec![Cyc::zero(m); r1 * r2];
        for i1 in 0..r1 {
            for i2 in 0..r2 {
                t[i1 * r2 + i2] = self.t[i1].lift(m).mul(&other.t[i2].lift(m));
            }
        }
        ModularDataExact {
            name: format!("{}x{}", self.name, other.name),
            m,
            s,
            t,
        }
    }

    /// The Galois group acting on the columns of the eigenvalue matrix,
    /// recovered by matching Galois conjugates of the columns.
    pub fn galois_group(&self) -> Result<Vec<Permutation>, VerifyError> {
        let r = self.rank();
        // eigenvalue matrix s_ij = S_ij / S_0j
        let mut ev = vec![vec![Cyc::zero(self.m); r]; r];
        for j in 0..r {
            let d = self.s[0][j]
                .inv()
                .ok_or_else(|| VerifyError::DegenerateMatching("zero dimension".into()))?;
            for i in 0..r {
                ev[i][j] = self.s[i][j].mul(&d);
            }
        }
        let mut perms: Vec<Permutation> = Vec::new();
        for u in 1..self.m {
            if gcd_u32(u, self.m) != 1 {
                continue;
            }
            // sigma_u column j must match a unique column pi(j)
            let mut images = vec![usize::MAX; r];
            let mut ok = true;
            for j in 0..r {
                let conj_col: Vec<Cyc> = (0..r).map(|i| ev[i][j].galois(u)).collect();
                let mut matches = Vec::new();
                for j2 in 0..r {
                    if (0..r).all(|i| conj_col[i] == ev[i][j2]) {
                        matches.push(j2);
                    }
                }
                match matches.len() {
                    1 => images[j] = matches[0],
                    0 => {
                        ok = false;
                        break;
                    }
                    _ => {
                        return Err(VerifyError::DegenerateMatching(format!(
                            "column {j} has several Galois partners"
                        )))
                    }
                }
            }
            if !ok {
                continue;
            }
            let p = Permutation::from_images(images)
                .map_err(|e| VerifyError::DegenerateMatching(e.to_string()))?;
            if !perms.contains(&p) {
                perms.push(p);
            }
        }
        perms.sort();
        Ok(perms)
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

/// The named modular data library.
pub fn known_library() -> Vec<ModularDataExact> {
    let one = |m: u32| Cyc::from_int(m, 1);
    let int = Cyc::from_int;

    // Trivial
    let trivial = ModularDataExact {
        name: "Trivial".into(),
        m: 1,
        s: vec![vec![one(1)]],
        t: vec![one(1)],
    };

    // Semion: S = [[1,1],[1,-1]], theta = i
    let semion = ModularDataExact {
        name: "Semion".into(),
        m: 4,
        s: vec![
            vec![int(4, 1), int(4, 1)],
            vec![int(4, 1), int(4, -1)],
        ],
        t: vec![one(4), Cyc::zeta_pow(4, 1)],
    };

    // Fibonacci: phi = 1 + z5 + z5^4; theta = z5^2
    let phi5 = int(5, 1)
        .add(&Cyc::zeta_pow(5, 1))
        .add(&Cyc::zeta_pow(5, 4));
    let fibonacci = ModularDataExact {
        name: "Fibonacci".into(),
        m: 5,
        s: vec![
            vec![int(5, 1), phi5.clone()],
            vec![phi5.clone(), int(5, -1)],
        ],
        t: vec![one(5), Cyc::zeta_pow(5, 2)],
    };

    // Ising: sqrt2 = z16^2 + z16^(-2); theta_sigma = z16
    let sqrt2 = Cyc::zeta_pow(16, 2).add(&Cyc::zeta_pow(16, 14));
    let ising = ModularDataExact {
        name: "Ising".into(),
        m: 16,
        s: vec![
            vec![int(16, 1), sqrt2.clone(), int(16, 1)],
            vec![sqrt2.clone(), Cyc::zero(16), sqrt2.neg()],
            vec![int(16, 1), sqrt2.neg(), int(16, 1)],
        ],
        t: vec![one(16), Cyc::zeta_pow(16, 1), int(16, -1)],
    };

    // (A1,2): same S-matrix, theta_sigma = z16^3
    let a1_2 = ModularDataExact {
        name: "(A1,2)".into(),
        m: 16,
        s: ising.s.clone(),
        t: vec![one(16), Cyc::zeta_pow(16, 3), int(16, -1)],
    };

    // (A1,5)_1/2: quantum-integer entries in Q(zeta7);
    // [k] = sin(k pi/7)/sin(pi/7) with e^(i pi/7) = -zeta7^4
    let qint = |k: i64| -> Cyc {
        // (q^k - q^-k)/(q - q^-1), q = -zeta7^4
        let m = 7u32;
        let q_pow = |e: i64| -> Cyc {
            let z = Cyc::zeta_pow(m, 4 * e);
            if e.rem_euclid(2) == 1 {
                z.neg()
            } else {
                z
            }
        };
        let num = q_pow(k).sub(&q_pow(-k));
        let den = q_pow(1).sub(&q_pow(-1));
        num.div(&den).expect("nonzero denominator")
    };
    let a1_5_half = ModularDataExact {
        name: "(A1,5)1/2".into(),
        m: 7,
        s: vec![
            vec![qint(1), qint(3), qint(5)],
            vec![qint(3), qint(9), qint(15)],
            vec![qint(5), qint(15), qint(25)],
        ],
        t: vec![one(7), Cyc::zeta_pow(7, 2), Cyc::zeta_pow(7, 6)],
    };

    // Z3: S entries are third roots of unity; theta = z3 for both anyons
    let z3 = ModularDataExact {
        name: "Z3".into(),
        m: 3,
        s: vec![
            vec![int(3, 1), int(3, 1), int(3, 1)],
            vec![int(3, 1), Cyc::zeta_pow(3, 1), Cyc::zeta_pow(3, 2)],
            vec![int(3, 1), Cyc::zeta_pow(3, 2), Cyc::zeta_pow(3, 1)],
        ],
        t: vec![one(3), Cyc::zeta_pow(3, 1), Cyc::zeta_pow(3, 1)],
    };

    vec![trivial, semion, fibonacci, ising, a1_2, a1_5_half, z3]
}

pub fn library_entry(name: &str) -> Option<ModularDataExact> {
    known_library().into_iter().find(|e| e.name == name)
}

// ---------------------------------------------------------------------------
// Numeric modular data and admissibility
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ModularDataNumeric {
    pub name: String,
    pub s: Vec<Vec<Cx>>,
    pub t: Vec<Cx>,
}

impl ModularDataNumeric {
    pub fn rank(&self) -> usize {
        self.t.len()
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
    pub note: String,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct AdmissibilityReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
    pub detected_order: Option<u32>,
}

impl AdmissibilityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!("admissibility report for {}\n", self.name);
        if let Some(n) = self.detected_order {
            out.push_str(&format!("detected T order: {n}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "{:4} {:40} max residual {:.3e}  {}\n",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.max_residual,
                c.note
            ));
        }
        out
    }
}

fn residual_to_f64(ctx: &NumCtx, v: &BigFloat) -> f64 {
    let f = ctx.to_f64(v);
    if f.is_nan() {
        0.0
    } else {
        f
    }
}

/// Runs the admissibility checks at the given tolerance: symmetry and
/// orthogonality of S, finite T order, the twist equation, Verlinde
/// integrality and non-negativity, balancing, and the second Frobenius-Schur
/// indicators. The prime-divisor coincidence check runs only when the total
/// squared dimension is recognizably a rational integer.
pub fn verify_admissibility(
    md: &ModularDataNumeric,
    ctx: &NumCtx,
    tol: f64,
) -> AdmissibilityReport {
    let r = md.rank();
    let tolbf = ctx.real_from_rat(&f64_to_rat(tol));
    let mut checks = Vec::new();

    // derived quantities
    let mut d2 = Cx::zero(ctx);
    for i in 0..r {
        d2 = d2.add(&md.s[0][i].mul(&md.s[0][i], ctx), ctx);
    }
    let mut p_plus = Cx::zero(ctx);
    let mut p_minus = Cx::zero(ctx);
    for i in 0..r {
        let di2 = md.s[0][i].mul(&md.s[0][i], ctx);
        p_plus = p_plus.add(&di2.mul(&md.t[i], ctx), ctx);
        p_minus = p_minus.add(&di2.div(&md.t[i], ctx), ctx);
    }

    // duality from conj(S) row matching: star(i) = j with conj(S_i.) = S_j.
    let mut star = vec![usize::MAX; r];
    for i in 0..r {
        'cand: for j in 0..r {
            for k in 0..r {
                let diff = md.s[i][k].conj().sub(&md.s[j][k], ctx);
                if bf_lt(&tolbf, &diff.abs(ctx)) {
                    continue 'cand;
                }
            }
            star[i] = j;
            break;
        }
    }
    let star_ok = star.iter().all(|&j| j != usize::MAX);

    // (i) d_i real, S symmetric, S conj(S) = D^2 Id, T diagonal finite order
    let mut res_i = ctx.real_from_i64(0);
    for i in 0..r {
        res_i = bf_max(res_i, md.s[0][i].im.abs());
        for j in 0..r {
            let sym = md.s[i][j].sub(&md.s[j][i], ctx).abs(ctx);
            res_i = bf_max(res_i, sym);
            let mut acc = Cx::zero(ctx);
            for k in 0..r {
                acc = acc.add(&md.s[i][k].mul(&md.s[j][k].conj(), ctx), ctx);
            }
            if i == j {
                acc = acc.sub(&d2, ctx);
            }
            res_i = bf_max(res_i, acc.abs(ctx));
        }
    }
    let detected_order = detect_t_order(md, ctx, tol);
    checks.push(CheckResult {
        name: "S symmetric, S conj(S) = D^2 Id, finite T order".into(),
        passed: !bf_lt(&tolbf, &res_i) && detected_order.is_some(),
        max_residual: residual_to_f64(ctx, &res_i),
        note: match detected_order {
            Some(n) => format!("T order {n}"),
            None => "no T order <= 10000 found".into(),
        },
    });

    // (ii) (ST)^3 = p+ S^2, p+ p- = D^2, p+/p- a root of unity
    let mut res_ii = ctx.real_from_i64(0);
    // (ST)^3 entry: sum over a,b: S_ia T_a S_ab T_b S_bj T_j
    for i in 0..r {
        for j in 0..r {
            let mut acc = Cx::zero(ctx);
            for a in 0..r {
                for b in 0..r {
                    let term = md.s[i][a]
                        .mul(&md.t[a], ctx)
                        .mul(&md.s[a][b], ctx)
                        .mul(&md.t[b], ctx)
                        .mul(&md.s[b][j], ctx)
                        .mul(&md.t[j], ctx);
                    acc = acc.add(&term, ctx);
                }
            }
            let mut s2 = Cx::zero(ctx);
            for a in 0..r {
                s2 = s2.add(&md.s[i][a].mul(&md.s[a][j], ctx), ctx);
            }
            let diff = acc.sub(&p_plus.mul(&s2, ctx), ctx);
            res_ii = bf_max(res_ii, diff.abs(ctx));
        }
    }
    let pp = p_plus.mul(&p_minus, ctx).sub(&d2, ctx).abs(ctx);
    res_ii = bf_max(res_ii, pp);
    let ratio_mod = p_plus
        .div(&p_minus, ctx)
        .abs(ctx)
        .sub(&ctx.real_from_i64(1), ctx.bits, RoundingMode::ToEven)
        .abs();
    res_ii = bf_max(res_ii, ratio_mod);
    checks.push(CheckResult {
        name: "(ST)^3 = p+ S^2, p+ p- = D^2, |p+/p-| = 1".into(),
        passed: !bf_lt(&tolbf, &res_ii),
        max_residual: residual_to_f64(ctx, &res_ii),
        note: String::new(),
    });

    // (iii) Verlinde numbers are non-negative integers
    let fusion = fusion_tensor(md, ctx, &d2);
    let mut res_iii = ctx.real_from_i64(0);
    let mut fusion_ints: Vec<Vec<Vec<i64>>> =
        vec![vec![vec![0; r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let v = &fusion[i][j][k];
                res_iii = bf_max(res_iii, v.im.abs());
                let near = nearest_i64(ctx, &v.re);
                let diff = v
                    .re
                    .sub(&ctx.real_from_i64(near), ctx.bits, RoundingMode::ToEven)
                    .abs();
                res_iii = bf_max(res_iii, diff);
                if near < 0 {
                    res_iii = bf_max(res_iii, ctx.real_from_i64(-near));
                }
                fusion_ints[i][j][k] = near;
            }
        }
    }
    checks.push(CheckResult {
        name: "Verlinde numbers in N".into(),
        passed: !bf_lt(&tolbf, &res_iii),
        max_residual: residual_to_f64(ctx, &res_iii),
        note: String::new(),
    });

    // (iv) balancing: theta_i theta_j S_ij = sum_k N_(i* j)^k d_k theta_k
    let mut res_iv = ctx.real_from_i64(0);
    if star_ok {
        for i in 0..r {
            for j in 0..r {
                let lhs = md.t[i].mul(&md.t[j], ctx).mul(&md.s[i][j], ctx);
                let mut rhs = Cx::zero(ctx);
                for k in 0..r {
                    let n = ctx.real_from_i64(fusion_ints[star[i]][j][k]);
                    let term = Cx::real(ctx, n)
                        .mul(&md.s[0][k], ctx)
                        .mul(&md.t[k], ctx);
                    rhs = rhs.add(&term, ctx);
                }
                res_iv = bf_max(res_iv, lhs.sub(&rhs, ctx).abs(ctx));
            }
        }
    }
    checks.push(CheckResult {
        name: "balancing equation".into(),
        passed: star_ok && !bf_lt(&tolbf, &res_iv),
        max_residual: residual_to_f64(ctx, &res_iv),
        note: if star_ok {
            String::new()
        } else {
            "duality involution not detected".into()
        },
    });

    // (v) second Frobenius-Schur indicators
    let mut res_v = ctx.real_from_i64(0);
    if star_ok {
        for k in 0..r {
            let mut nu = Cx::zero(ctx);
            for i in 0..r {
                for j in 0..r {
                    let n = ctx.real_from_i64(fusion_ints[i][j][k]);
                    let ratio = md.t[i].div(&md.t[j], ctx).powi(2, ctx);
                    let term = Cx::real(ctx, n)
                        .mul(&md.s[0][i], ctx)
                        .mul(&md.s[0][j], ctx)
                        .mul(&ratio, ctx);
                    nu = nu.add(&term, ctx);
                }
            }
            nu = nu.div(&d2, ctx);
            if star[k] != k {
                res_v = bf_max(res_v, nu.abs(ctx));
            } else {
                let near = nearest_i64(ctx, &nu.re);
                let ok = near == 1 || near == -1 || (k == 0 && near == 1);
                if !ok {
                    res_v = bf_max(res_v, ctx.real_from_i64(1));
                }
                let diff = nu
                    .re
                    .sub(&ctx.real_from_i64(near), ctx.bits, RoundingMode::ToEven)
                    .abs();
                res_v = bf_max(res_v, diff);
                res_v = bf_max(res_v, nu.im.abs());
                if k == 0 && near != 1 {
                    res_v = bf_max(res_v, ctx.real_from_i64(1));
                }
            }
        }
    }
    checks.push(CheckResult {
        name: "second indicators in {0, +1, -1}".into(),
        passed: star_ok && !bf_lt(&tolbf, &res_v),
        max_residual: residual_to_f64(ctx, &res_v),
        note: String::new(),
    });

    // (vii) prime divisors of D^2 and N coincide, when D^2 is integral
    let d2_near = nearest_i64(ctx, &d2.re);
    let d2_int = {
        let diff = d2
            .re
            .sub(&ctx.real_from_i64(d2_near), ctx.bits, RoundingMode::ToEven)
            .abs();
        !bf_lt(&tolbf, &diff) && !bf_lt(&tolbf, &d2.im.abs())
    };
    if d2_int && detected_order.is_some() {
        let n = detected_order.unwrap() as i64;
        let pd = prime_set(d2_near.unsigned_abs());
        let pn = prime_set(n.unsigned_abs());
        let passed = pd == pn;
        checks.push(CheckResult {
            name: "prime divisors of D^2 and N coincide".into(),
            passed,
            max_residual: 0.0,
            note: format!("D^2 = {d2_near}, N = {n}"),
        });
    } else {
        checks.push(CheckResult {
            name: "prime divisors of D^2 and N coincide".into(),
            passed: true,
            max_residual: 0.0,
            note: "skipped: D^2 not recognizably a rational integer".into(),
        });
    }

    AdmissibilityReport {
        name: md.name.clone(),
        checks,
        detected_order,
    }
}

fn fusion_tensor(md: &ModularDataNumeric, ctx: &NumCtx, d2: &Cx) -> Vec<Vec<Vec<Cx>>> {
    let r = md.rank();
    let mut out = vec![vec![vec![Cx::zero(ctx); r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let mut acc = Cx::zero(ctx);
                for a in 0..r {
                    let term = md.s[i][a]
                        .mul(&md.s[j][a], ctx)
                        .mul(&md.s[k][a].conj(), ctx)
                        .div(&md.s[0][a], ctx);
                    acc = acc.add(&term, ctx);
                }
                out[i][j][k] = acc.div(d2, ctx);
            }
        }
    }
    out
}

fn nearest_i64(ctx: &NumCtx, v: &BigFloat) -> i64 {
    let f = ctx.to_f64(v);
    if f.is_finite() {
        f.round() as i64
    } else {
        0
    }
}

fn detect_t_order(md: &ModularDataNumeric, ctx: &NumCtx, tol: f64) -> Option<u32> {
    let tolbf = ctx.real_from_rat(&f64_to_rat(tol));
    let mut order = 1u64;
    for t in &md.t {
        // order of a root of unity: find the least m <= 10^4 with t^m = 1
        let mut m = 1u32;
        let mut cur = t.clone();
        let one = Cx::one(ctx);
        loop {
            let diff = cur.sub(&one, ctx).abs(ctx);
            if !bf_lt(&tolbf, &diff) {
                break;
            }
            m += 1;
            if m > 10_000 {
                return None;
            }
            cur = cur.mul(t, ctx);
        }
        order = num_integer::lcm(order, m as u64);
        if order > 10_000 {
            return None;
        }
    }
    Some(order as u32)
}

fn prime_set(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn f64_to_rat(v: f64) -> Rat {
    // tolerances are small powers of ten
    let mut num = v;
    let mut den = BigInt::one();
    while num.fract() != 0.0 && den < BigInt::from(10u64).pow(40) {
        num *= 10.0;
        den *= 10;
    }
    Rat::new(BigInt::from(num as i128), den)
}

// ---------------------------------------------------------------------------
// Embedding solved cases
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootSelector {
    /// Real root isolated in [lo, hi] (given as decimal strings).
    Interval { lo: String, hi: String },
    /// Exactly e^(2 pi i power / order).
    RootOfUnity { order: u32, power: i64 },
}

/// Per-symbol minimal polynomial plus a root-selection rule.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AlgebraicSpec {
    pub symbol: String,
    /// Integer-coefficient univariate polynomial in `x`; may be omitted for
    /// root-of-unity selectors.
    #[serde(default)]
    pub min_poly: Option<String>,
    pub root: RootSelector,
}

/// Resolves symbol values numerically and evaluates the case template;
/// rejects the embedding when any case relation has residual above `tol`.
pub fn embed(
    case: &crate::engine::CandidateCase,
    specs: &[AlgebraicSpec],
    extra_relations: &[MultiPoly],
    ctx: &NumCtx,
    tol: f64,
) -> Result<ModularDataNumeric, VerifyError> {
    let vars = &case.vars;
    let mut values: Vec<Option<Cx>> = vec![None; vars.len()];
    let spec_vars = crate::exactpoly::VarTable::new(vec!["x"]);
    for spec in specs {
        let idx = vars
            .index_of(&spec.symbol)
            .ok_or_else(|| VerifyError::BadSolution(format!("unknown symbol {}", spec.symbol)))?;
        let value = match &spec.root {
            RootSelector::RootOfUnity { order, power } => Cx::root_of_unity(*power, *order, ctx),
            RootSelector::Interval { lo, hi } => {
                let poly_text = spec.min_poly.as_ref().ok_or_else(|| {
                    VerifyError::BadSolution(format!(
                        "symbol {} needs a minimal polynomial",
                        spec.symbol
                    ))
                })?;
                let poly = crate::exactpoly::parse_poly(poly_text, &spec_vars)
                    .map_err(|e| VerifyError::BadSolution(e.to_string()))?;
                let root = bisect_root(&poly, lo, hi, ctx)
                    .ok_or_else(|| VerifyError::RootSelection(spec.symbol.clone()))?;
                Cx::real(ctx, root)
            }
        };
        values[idx] = Some(value);
    }
    // symbols not covered must not occur in the template or relations
    let mut used: Vec<usize> = Vec::new();
    for (_, p) in &case.relations {
        used.extend(p.support());
    }
    for row in &case.template.entries {
        for e in row {
            used.extend(e.support());
        }
    }
    used.sort();
    used.dedup();
    for v in &used {
        if values[*v].is_none() {
            return Err(VerifyError::BadSolution(format!(
                "symbol {} not covered by the algebraic spec",
                vars.name(*v)
            )));
        }
    }

    // residuals of every case relation
    let tolbf = ctx.real_from_rat(&f64_to_rat(tol));
    for (name, p) in case.relations.iter() {
        let v = eval_poly_cx(p, &values, ctx);
        if bf_lt(&tolbf, &v.abs(ctx)) {
            return Err(VerifyError::EmbeddingRejected(format!(
                "relation {name} has residual above tolerance"
            )));
        }
    }
    for p in extra_relations {
        let v = eval_poly_cx(p, &values, ctx);
        if bf_lt(&tolbf, &v.abs(ctx)) {
            return Err(VerifyError::EmbeddingRejected(
                "declared relation has residual above tolerance".into(),
            ));
        }
    }
    // positivity facts
    for (i, _) in vars.names().iter().enumerate() {
        if let Some(b) = case.facts.lower_bound(i) {
            if let Some(v) = &values[i] {
                let bound = ctx.real_from_i64(b);
                let slack = v.re.sub(&bound, ctx.bits, RoundingMode::ToEven);
                let neg_tol = tolbf.neg();
                if bf_lt(&slack, &neg_tol) {
                    return Err(VerifyError::EmbeddingRejected(format!(
                        "symbol {} violates its lower bound",
                        vars.name(i)
                    )));
                }
            }
        }
    }

    let r = case.template.rank;
    let mut s = vec![vec![Cx::zero(ctx); r]; r];
    for i in 0..r {
        for j in 0..r {
            let e = crate::template::reindex(case.template.entry(i, j), vars);
            s[i][j] = eval_poly_cx(&e, &values, ctx);
        }
    }
    let mut t = Vec::new();
    for i in 0..r {
        let e = crate::template::reindex(&case.template.t_diag[i], vars);
        t.push(eval_poly_cx(&e, &values, ctx));
    }
    Ok(ModularDataNumeric {
        name: case.name.clone(),
        s,
        t,
    })
}

fn eval_poly_cx(p: &MultiPoly, values: &[Option<Cx>], ctx: &NumCtx) -> Cx {
    let mut acc = Cx::zero(ctx);
    for (m, c) in p.terms() {
        let mut term = Cx::real(ctx, ctx.real_from_rat(c));
        for v in m.support() {
            let val = values[v].as_ref().expect("covered symbol");
            term = term.mul(&val.powi(m.exp(v) as usize, ctx), ctx);
        }
        acc = acc.add(&term, ctx);
    }
    acc
}

fn bisect_root(
    poly: &MultiPoly,
    lo: &str,
    hi: &str,
    ctx: &NumCtx,
) -> Option<BigFloat> {
    let parse = |s: &str| -> BigFloat {
        BigFloat::parse(
            s,
            astro_float::Radix::Dec,
            ctx.bits,
            RoundingMode::ToEven,
            &mut ctx.consts.borrow_mut(),
        )
    };
    let eval = |x: &BigFloat| -> BigFloat {
        let mut acc = ctx.real_from_i64(0);
        for (m, c) in poly.terms() {
            let e = m.exps().first().copied().unwrap_or(0) as usize;
            let term = ctx
                .real_from_rat(c)
                .mul(&x.powi(e, ctx.bits, RoundingMode::ToEven), ctx.bits, RoundingMode::ToEven);
            acc = acc.add(&term, ctx.bits, RoundingMode::ToEven);
        }
        acc
    };
    let mut a = parse(lo);
    let mut b = parse(hi);
    let fa = eval(&a);
    let fb = eval(&b);
    if fa.is_zero() {
        return Some(a);
    }
    if fb.is_zero() {
        return Some(b);
    }
    if fa.is_negative() == fb.is_negative() {
        return None;
    }
    let two = ctx.real_from_i64(2);
    for _ in 0..(ctx.bits * 2) {
        let mid = a.add(&b, ctx.bits, RoundingMode::ToEven).div(
            &two,
            ctx.bits,
            RoundingMode::ToEven,
        );
        let fm = eval(&mid);
        if fm.is_zero() {
            return Some(mid);
        }
        if fm.is_negative() == fa.is_negative() {
            a = mid;
        } else {
            b = mid;
        }
    }
    Some(a)
}

/// Searches for a relabeling and Galois conjugation matching two numeric
/// modular data sets entrywise within tolerance. Conjugations are supplied
/// as alternative embeddings of the right-hand side.
pub fn matches_up_to_relabeling(
    lhs: &ModularDataNumeric,
    rhs_variants: &[ModularDataNumeric],
    ctx: &NumCtx,
    tol: f64,
) -> Option<(usize, Permutation)> {
    let r = lhs.rank();
    let tolbf = ctx.real_from_rat(&f64_to_rat(tol));
    for (vi, rhs) in rhs_variants.iter().enumerate() {
        if rhs.rank() != r {
            continue;
        }
        let mut found: Option<Permutation> = None;
        crate::symmetry::for_each_permutation(r, &mut |pi: &Permutation| {
            if found.is_some() || pi.apply(0) != 0 {
                return;
            }
            for i in 0..r {
                for j in 0..r {
                    let diff = lhs.s[i][j]
                        .sub(&rhs.s[pi.apply(i)][pi.apply(j)], ctx)
                        .abs(ctx);
                    if bf_lt(&tolbf, &diff) {
                        return;
                    }
                }
                let tdiff = lhs.t[i].sub(&rhs.t[pi.apply(i)], ctx).abs(ctx);
                if bf_lt(&tolbf, &tdiff) {
                    return;
                }
            }
            found = Some(pi.clone());
        });
        if let Some(p) = found {
            return Some((vi, p));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_arithmetic() {
        // zeta3^2 + zeta3 + 1 = 0
        let z = Cyc::zeta_pow(3, 1);
        let sum = z.mul(&z).add(&z).add(&Cyc::from_int(3, 1));
        assert!(sum.is_zero());
        // conj(zeta5) = zeta5^4
        assert_eq!(Cyc::zeta_pow(5, 1).conj(), Cyc::zeta_pow(5, 4));
        // inverse
        let phi = Cyc::from_int(5, 1)
            .add(&Cyc::zeta_pow(5, 1))
            .add(&Cyc::zeta_pow(5, 4));
        let inv = phi.inv().unwrap();
        assert_eq!(phi.mul(&inv), Cyc::from_int(5, 1));
    }

    #[test]
    fn lift_consistency() {
        let z3 = Cyc::zeta_pow(3, 1);
        let lifted = z3.lift(15);
        assert_eq!(lifted, Cyc::zeta_pow(15, 5));
    }

    #[test]
    fn golden_ratio_embeds() {
        let ctx = NumCtx::default_50_digits();
        let phi = Cyc::from_int(5, 1)
            .add(&Cyc::zeta_pow(5, 1))
            .add(&Cyc::zeta_pow(5, 4));
        let v = phi.embed(&ctx);
        let f = ctx.to_f64(&v.re);
        assert!((f - 1.618033988749895).abs() < 1e-12);
        assert!(ctx.to_f64(&v.im).abs() < 1e-30);
    }

    #[test]
    fn trivial_passes() {
        let ctx = NumCtx::default_50_digits();
        let lib = known_library();
        let trivial = lib.iter().find(|e| e.name == "Trivial").unwrap();
        let md = trivial.to_numeric(&ctx);
        let report = verify_admissibility(&md, &ctx, 1e-9);
        assert!(report.all_passed(), "{}", report.render());
        assert_eq!(report.detected_order, Some(1));
    }
}
