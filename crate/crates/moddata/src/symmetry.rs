//! Permutations of labels, duality involutions, orbit machinery, and
//! enumeration of candidate abelian Galois groups up to relabeling.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("unsupported rank {0} (supported: 1..=6)")]
    UnsupportedRank(usize),
    #[error("labels above 9 are not representable in cycle notation")]
    LabelTooLarge,
    #[error("invalid cycle notation `{text}`: {msg}")]
    BadCycles { text: String, msg: String },
    #[error("not a bijection")]
    NotBijection,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("duality must be an involution fixing label 0")]
    BadDuality,
    #[error("rank mismatch")]
    RankMismatch,
}

/// Permutation of labels `0..r`, stored as the image vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(r: usize) -> Self {
        Permutation {
            images: (0..r).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, SymmetryError> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &i in &images {
            if i >= r || seen[i] {
                return Err(SymmetryError::NotBijection);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut n = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            n += 1;
        }
        n
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Conjugate by a relabeling: `pi self pi^-1`.
    pub fn relabel(&self, pi: &Permutation) -> Permutation {
        pi.compose(self).compose(&pi.inverse())
    }

    pub fn is_transposition(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i != j)
            .count()
            == 2
    }

    pub fn sign(&self) -> i8 {
        let mut seen = vec![false; self.images.len()];
        let mut sgn = 1i8;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
                len += 1;
            }
            if len % 2 == 0 {
                sgn = -sgn;
            }
        }
        sgn
    }

    /// Parses cycle notation such as `(01)(2435)`; `()` is the identity.
    pub fn parse_cycles(text: &str, r: usize) -> Result<Self, SymmetryError> {
        if r > 10 {
            return Err(SymmetryError::LabelTooLarge);
        }
        let bad = |msg: &str| SymmetryError::BadCycles {
            text: text.to_string(),
            msg: msg.to_string(),
        };
        let mut images: Vec<usize> = (0..r).collect();
        let bytes: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        if bytes.is_empty() {
            return Err(bad("empty string"));
        }
        while pos < bytes.len() {
            if bytes[pos] != '(' {
                return Err(bad("expected `(`"));
            }
            pos += 1;
            let mut cycle: Vec<usize> = Vec::new();
            while pos < bytes.len() && bytes[pos] != ')' {
                let c = bytes[pos];
                let d = c.to_digit(10).ok_or_else(|| bad("expected digit"))? as usize;
                if d >= r {
                    return Err(bad("label out of range"));
                }
                if cycle.contains(&d) {
                    return Err(bad("repeated label in cycle"));
                }
                cycle.push(d);
                pos += 1;
            }
            if pos == bytes.len() {
                return Err(bad("unterminated cycle"));
            }
            pos += 1; // consume ')'
            if cycle.len() == 1 {
                return Err(bad("singleton cycle"));
            }
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if images[from] != from {
                    return Err(bad("label in two cycles"));
                }
                images[from] = to;
            }
        }
        Permutation::from_images(images)
    }

    /// Canonical cycle notation: cycles sorted by least element, each cycle
    /// starting at its least element; identity prints as `()`.
    pub fn to_cycles(&self) -> String {
        let mut seen = vec![false; self.images.len()];
        let mut out = String::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                out.push(char::from_digit(cur as u32, 10).unwrap());
                cur = self.images[cur];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycles())
    }
}

/// Label duality: an involution with `star(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualityInvolution {
    star: Permutation,
}

impl DualityInvolution {
    pub fn identity(r: usize) -> Self {
        DualityInvolution {
            star: Permutation::identity(r),
        }
    }

    pub fn new(star: Permutation) -> Result<Self, SymmetryError> {
        if !star.is_involution() || star.apply(0) != 0 {
            return Err(SymmetryError::BadDuality);
        }
        Ok(DualityInvolution { star })
    }

    pub fn from_cycles(text: &str, r: usize) -> Result<Self, SymmetryError> {
        if text.trim() == "()" {
            return Ok(Self::identity(r));
        }
        Self::new(Permutation::parse_cycles(text, r)?)
    }

    pub fn star(&self, i: usize) -> usize {
        self.star.apply(i)
    }

    pub fn rank(&self) -> usize {
        self.star.rank()
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.star
    }

    pub fn is_trivial(&self) -> bool {
        self.star.is_identity()
    }

    pub fn self_dual(&self, i: usize) -> bool {
        self.star.apply(i) == i
    }

    pub fn nsd_labels(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| !self.self_dual(i)).collect()
    }
}

/// A candidate Galois group: closed abelian permutation set plus duality.
#[derive(Debug, Clone)]
pub struct GroupCandidate {
    pub generators: Vec<Permutation>,
    pub elements: Vec<Permutation>,
    pub duality: DualityInvolution,
    pub orbits: Vec<Vec<usize>>,
}

impl GroupCandidate {
    pub fn new(
        generators: Vec<Permutation>,
        duality: DualityInvolution,
    ) -> Result<Self, SymmetryError> {
        let r = duality.rank();
        for g in &generators {
            if g.rank() != r {
                return Err(SymmetryError::RankMismatch);
            }
        }
        let elements = close_group(&generators, r);
        for a in &elements {
            for b in &elements {
                if !a.commutes_with(b) {
                    return Err(SymmetryError::NotAbelian);
                }
            }
        }
        let orbits = orbit_partition(&elements, r);
        Ok(GroupCandidate {
            generators,
            elements,
            duality,
            orbits,
        })
    }

    pub fn rank(&self) -> usize {
        self.duality.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn moves_zero(&self) -> bool {
        self.elements.iter().any(|g| g.apply(0) != 0)
    }

    pub fn orbit_of(&self, label: usize) -> &[usize] {
        self.orbits
            .iter()
            .find(|o| o.contains(&label))
            .map(|o| o.as_slice())
            .unwrap()
    }

    pub fn duality_compatible(&self) -> bool {
        let star = self.duality.as_permutation();
        self.elements.iter().all(|g| g.commutes_with(star))
    }

    /// Generator string list in canonical cycle notation.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_cycles()).collect()
    }

    fn element_key(&self) -> Vec<Vec<usize>> {
        let mut key: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|e| e.images().to_vec())
            .collect();
        key.sort();
        key
    }
}

fn close_group(generators: &[Permutation], r: usize) -> Vec<Permutation> {
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    set.insert(Permutation::identity(r).images().to_vec());
    let mut frontier: Vec<Permutation> = vec![Permutation::identity(r)];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = g.compose(&p);
            if set.insert(q.images().to_vec()) {
                frontier.push(q);
            }
        }
    }
    set.into_iter()
        .map(|im| Permutation::from_images(im).unwrap())
        .collect()
}

fn orbit_partition(elements: &[Permutation], r: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; r];
    let mut orbits = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            for g in elements {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    frontier.push(y);
                }
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    orbits
}

/// Orbit partition of the labels under the group action.
pub fn orbits(group: &GroupCandidate) -> Vec<Vec<usize>> {
    group.orbits.clone()
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupConstraints {
    /// Label 0 must be moved (non-integral data).
    pub non_integral: bool,
    /// Number of non-self-dual label pairs: 0, 1, or 2.
    pub nsd_pairs: u8,
}

/// Duality for the given constraint shape: pairs occupy the top labels,
/// `(r-2)* = r-1` for one pair and additionally `(r-4)* = r-3` for two.
pub fn duality_for(r: usize, nsd_pairs: u8) -> Result<DualityInvolution, SymmetryError> {
    let mut images: Vec<usize> = (0..r).collect();
    if nsd_pairs >= 1 {
        if r < 3 {
            return Err(SymmetryError::UnsupportedRank(r));
        }
        images.swap(r - 2, r - 1);
    }
    if nsd_pairs >= 2 {
        if r < 5 {
            return Err(SymmetryError::UnsupportedRank(r));
        }
        images.swap(r - 4, r - 3);
    }
    if nsd_pairs > 2 {
        return Err(SymmetryError::UnsupportedRank(r));
    }
    DualityInvolution::new(Permutation::from_images(images)?)
}

/// All relabelings admissible for canonicalization: fix label 0 and commute
/// with the duality.
pub fn admissible_relabelings(duality: &DualityInvolution) -> Vec<Permutation> {
    let r = duality.rank();
    let star = duality.as_permutation();
    let mut out = Vec::new();
    permute_all(r, &mut |p: &Permutation| {
        if p.apply(0) == 0 && p.commutes_with(star) {
            out.push(p.clone());
        }
    });
    out.sort();
    out
}

/// Visits every permutation of `0..r`.
pub fn for_each_permutation(r: usize, f: &mut impl FnMut(&Permutation)) {
    permute_all(r, f)
}

fn permute_all(r: usize, f: &mut impl FnMut(&Permutation)) {
    let mut images: Vec<usize> = (0..r).collect();
    heap_permute(&mut images, r, f);
}

fn heap_permute(arr: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&Permutation)) {
    if k <= 1 {
        f(&Permutation::from_images(arr.clone()).unwrap());
        return;
    }
    for i in 0..k {
        heap_permute(arr, k - 1, f);
        if k % 2 == 0 {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
}

/// Enumerates the abelian subgroups of `Sym_r` compatible with the duality
/// constraints, canonicalized modulo relabelings that fix label 0, preserve
/// the duality pairing, and map the group to itself.
///
/// Constraint set:
///  - the group is abelian and commutes with the duality;
///  - `non_integral` forces label 0 to be moved;
///  - every orbit is entirely self-dual or entirely non-self-dual;
///  - for `nsd_pairs > 0` the conjugation permutation (the product of the
///    duality transpositions) lies in the group;
///  - for self-dual data at even rank, a transposition fixing label 0 admits
///    no sign function (the product of its signs over all labels comes out
///    +1 against an odd permutation), so such groups are excluded.
pub fn enumerate_groups(
    r: usize,
    constraints: GroupConstraints,
) -> Result<Vec<GroupCandidate>, SymmetryError> {
    if r == 0 || r > 6 {
        return Err(SymmetryError::UnsupportedRank(r));
    }
    let duality = duality_for(r, constraints.nsd_pairs)?;
    let star = duality.as_permutation().clone();
    let conjugation = star.clone();

    let mut elements: Vec<Permutation> = Vec::new();
    permute_all(r, &mut |p| elements.push(p.clone()));
    elements.sort();

    // BFS over abelian subgroups (element sets as canonical keys)
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut queue: Vec<Vec<Permutation>> = Vec::new();
    let trivial = vec![Permutation::identity(r)];
    seen.insert(vec![trivial[0].images().to_vec()]);
    queue.push(trivial);
    let mut all_groups: Vec<Vec<Permutation>> = Vec::new();

    while let Some(group) = queue.pop() {
        all_groups.push(group.clone());
        for g in &elements {
            if group.contains(g) {
                continue;
            }
            if !group.iter().all(|h| h.commutes_with(g)) {
                continue;
            }
            let mut gens: Vec<Permutation> = group.clone();
            gens.push(g.clone());
            let closed = close_group(&gens, r);
            if !closed
                .iter()
                .all(|a| closed.iter().all(|b| a.commutes_with(b)))
            {
                continue;
            }
            let mut key: Vec<Vec<usize>> =
                closed.iter().map(|e| e.images().to_vec()).collect();
            key.sort();
            if seen.insert(key) {
                queue.push(closed);
            }
        }
    }

    let relabelings = admissible_relabelings(&duality);
    let mut survivors: Vec<Vec<Permutation>> = Vec::new();
    'next: for group in all_groups {
        if constraints.non_integral && !group.iter().any(|g| g.apply(0) != 0) {
            continue;
        }
        if !group.iter().all(|g| g.commutes_with(&star)) {
            continue;
        }
        if constraints.nsd_pairs > 0 && !group.contains(&conjugation) {
            continue;
        }
        let orbits = orbit_partition(&group, r);
        for orbit in &orbits {
            let sd = orbit.iter().filter(|&&i| duality.self_dual(i)).count();
            if sd != 0 && sd != orbit.len() {
                continue 'next;
            }
        }
        if constraints.nsd_pairs == 0
            && r % 2 == 0
            && group
                .iter()
                .any(|g| g.is_transposition() && g.apply(0) == 0)
        {
            continue;
        }
        survivors.push(group);
    }

    // canonical representative: least sorted element list over the class
    let mut reps: Vec<(Vec<Vec<usize>>, Vec<Permutation>)> = Vec::new();
    'groups: for group in survivors {
        let mut best_key: Option<Vec<Vec<usize>>> = None;
        let mut best_group: Option<Vec<Permutation>> = None;
        for pi in &relabelings {
            let conj: Vec<Permutation> = group.iter().map(|g| g.relabel(pi)).collect();
            let mut key: Vec<Vec<usize>> = conj.iter().map(|e| e.images().to_vec()).collect();
            key.sort();
            if best_key.as_ref().map_or(true, |bk| key < *bk) {
                best_key = Some(key);
                best_group = Some(conj);
            }
        }
        let key = best_key.unwrap();
        for (k, _) in &reps {
            if *k == key {
                continue 'groups;
            }
        }
        reps.push((key, best_group.unwrap()));
    }
    reps.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut out = Vec::new();
    for (_, group) in reps {
        let gens = minimal_generators(&group, r);
        out.push(GroupCandidate::new(gens, duality.clone())?);
    }
    Ok(out)
}

/// Greedy deterministic minimal generating sequence.
fn minimal_generators(elements: &[Permutation], r: usize) -> Vec<Permutation> {
    let mut sorted: Vec<Permutation> = elements.to_vec();
    sorted.sort_by(|a, b| {
        b.order()
            .cmp(&a.order())
            .then_with(|| a.images().cmp(b.images()))
    });
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span = close_group(&gens, r);
    for cand in sorted {
        if span.len() == elements.len() {
            break;
        }
        if span.contains(&cand) {
            continue;
        }
        gens.push(cand);
        span = close_group(&gens, r);
    }
    gens
}

/// Searches for a relabeling fixing 0 that intertwines dualities and maps one
/// group onto the other.
pub fn relabel_equivalent(c1: &GroupCandidate, c2: &GroupCandidate) -> Option<Permutation> {
    if c1.rank() != c2.rank() || c1.order() != c2.order() {
        return None;
    }
    let k2 = c2.element_key();
    let star1 = c1.duality.as_permutation();
    let star2 = c2.duality.as_permutation();
    let mut found = None;
    permute_all(c1.rank(), &mut |pi| {
        if found.is_some() || pi.apply(0) != 0 {
            return;
        }
        if &star1.relabel(pi) != star2 {
            return;
        }
        let conj: Vec<Permutation> = c1.elements.iter().map(|g| g.relabel(pi)).collect();
        let mut key: Vec<Vec<usize>> = conj.iter().map(|e| e.images().to_vec()).collect();
        key.sort();
        if key == k2 {
            found = Some(pi.clone());
        }
    });
    found
}

// ---------------------------------------------------------------------------
// Unit-group compatibility
// ---------------------------------------------------------------------------

/// Conjugate partition of the p-part of an abelian group given by element
/// orders: entry k-1 counts the invariant factors divisible by p^k, read off
/// the solution counts of x^(p^k) = e.
fn p_part_conjugate_partition(orders: &[usize], p: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut prev_count = orders.iter().filter(|&&o| o == 1).count().max(1);
    let mut pk = p;
    loop {
        let count = orders.iter().filter(|&&o| pk % o == 0).count();
        if count == prev_count {
            break;
        }
        let ratio = count / prev_count;
        let mut log = 0u32;
        let mut t = 1usize;
        while t < ratio {
            t *= p;
            log += 1;
        }
        out.push(log);
        prev_count = count;
        pk = pk.saturating_mul(p);
    }
    out
}

fn small_primes_of(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut n = n;
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

/// True iff `(Z/NZ)^x` contains a subgroup isomorphic to the abstract group
/// of the candidate, decided per prime via conjugate-partition domination.
pub fn group_order_compat(n: u64, group: &GroupCandidate) -> bool {
    let unit_orders: Vec<usize> = unit_group_orders(n);
    let group_orders: Vec<usize> = group.elements.iter().map(|g| g.order()).collect();
    let primes = small_primes_of(group.order());
    for p in primes {
        let need = p_part_conjugate_partition(&group_orders, p);
        let have = p_part_conjugate_partition(&unit_orders, p);
        for (k, nk) in need.iter().enumerate() {
            let hk = have.get(k).copied().unwrap_or(0);
            if *nk > hk {
                return false;
            }
        }
    }
    true
}

/// Orders of all elements of `(Z/NZ)^x`.
pub fn unit_group_orders(n: u64) -> Vec<usize> {
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![1];
    }
    let mut out = Vec::new();
    for a in 1..n {
        if gcd_u64(a, n) != 1 {
            continue;
        }
        let mut x = a % n;
        let mut ord = 1usize;
        while x != 1 % n {
            x = (x * a) % n;
            ord += 1;
        }
        out.push(ord);
    }
    out
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, r: usize) -> Permutation {
        Permutation::parse_cycles(s, r).unwrap()
    }

    #[test]
    fn cycle_roundtrip() {
        for s in ["(01)(23)(45)", "(012345)", "(01)(2435)"] {
            let p = perm(s, 6);
            assert_eq!(p.to_cycles(), s.to_string());
        }
        assert_eq!(Permutation::identity(6).to_cycles(), "()");
        assert!(Permutation::parse_cycles("(07)", 6).is_err());
        assert!(Permutation::parse_cycles("(00)", 6).is_err());
    }

    #[test]
    fn orbit_examples() {
        let g =
            GroupCandidate::new(vec![perm("(012)", 6)], DualityInvolution::identity(6)).unwrap();
        assert_eq!(g.orbits, vec![vec![0, 1, 2], vec![3], vec![4], vec![5]]);

        let g = GroupCandidate::new(
            vec![perm("(01)(23)", 6), perm("(23)(45)", 6)],
            DualityInvolution::identity(6),
        )
        .unwrap();
        assert_eq!(g.orbits, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);

        let g = GroupCandidate::new(vec![], DualityInvolution::identity(6)).unwrap();
        assert_eq!(g.orbits.len(), 6);
    }

    #[test]
    fn enumerate_counts_match() {
        let two_pair = enumerate_groups(
            6,
            GroupConstraints {
                non_integral: true,
                nsd_pairs: 2,
            },
        )
        .unwrap();
        assert_eq!(two_pair.len(), 7, "two-pair NSD group count");

        let one_pair = enumerate_groups(
            6,
            GroupConstraints {
                non_integral: true,
                nsd_pairs: 1,
            },
        )
        .unwrap();
        assert_eq!(one_pair.len(), 6, "one-pair NSD group count");

        let sd = enumerate_groups(
            6,
            GroupConstraints {
                non_integral: true,
                nsd_pairs: 0,
            },
        )
        .unwrap();
        assert_eq!(sd.len(), 19, "self-dual group count");
    }

    #[test]
    fn enumerated_groups_are_valid() {
        let groups = enumerate_groups(
            6,
            GroupConstraints {
                non_integral: true,
                nsd_pairs: 2,
            },
        )
        .unwrap();
        for g in &groups {
            assert!(g.duality_compatible());
            assert!(g.moves_zero());
            for a in &g.elements {
                for b in &g.elements {
                    assert!(a.commutes_with(b));
                }
            }
        }
    }

    #[test]
    fn relabel_examples() {
        let d = DualityInvolution::identity(6);
        let c1 = GroupCandidate::new(vec![perm("(01)(23)", 6)], d.clone()).unwrap();
        let c2 = GroupCandidate::new(vec![perm("(01)(45)", 6)], d.clone()).unwrap();
        let w = relabel_equivalent(&c1, &c2).unwrap();
        // witness maps the first group onto the second
        for e in &c1.elements {
            assert!(c2.contains(&e.relabel(&w)));
        }

        let c3 = GroupCandidate::new(vec![perm("(012)", 6)], d.clone()).unwrap();
        let c4 = GroupCandidate::new(vec![perm("(0123)", 6)], d).unwrap();
        assert!(relabel_equivalent(&c3, &c4).is_none());
    }

    #[test]
    fn rank2_single_group() {
        let groups = enumerate_groups(
            2,
            GroupConstraints {
                non_integral: true,
                nsd_pairs: 0,
            },
        )
        .unwrap();
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].generator_strings(), vec!["(01)"]);
    }

    #[test]
    fn group_order_compat_examples() {
        let d = DualityInvolution::identity(6);
        let z4 = GroupCandidate::new(vec![perm("(0123)", 6)], d.clone()).unwrap();
        assert!(!group_order_compat(3, &z4));
        assert!(group_order_compat(5, &z4));

        let v4 = GroupCandidate::new(vec![perm("(01)", 6), perm("(23)", 6)], d).unwrap();
        assert!(!group_order_compat(5, &v4));
        assert!(group_order_compat(8, &v4));
    }

    #[test]
    fn transposition_sign() {
        assert_eq!(perm("(01)", 6).sign(), -1);
        assert_eq!(perm("(01)(23)", 6).sign(), 1);
        assert_eq!(perm("(0123)", 6).sign(), -1);
        assert_eq!(perm("(012)", 6).sign(), 1);
    }
}
