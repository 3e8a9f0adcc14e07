//! Partial direct product difference sets over Z_n x Z_m.
//!
//! A subset R of G = Z_n x Z_m with |R| = k is an
//! ell-(n, m, k, lambda1, lambda2, lambda3, mu1, mu2) partial direct product
//! difference set (PDPDS) when the k(k-1) differences r1 - r2 over distinct
//! pairs of R hit five bucket families with constant multiplicity:
//!
//!   (d, 0), d not in {0, ell, n-ell}   -> lambda1
//!   (0, p), p != 0                     -> lambda2
//!   (d, 0), d in {ell, n-ell}          -> lambda3
//!   (d, p), d generic, p != 0          -> mu1
//!   (d, p), d in {ell, n-ell}, p != 0  -> mu2
//!
//! When 2*ell = 0 mod n the pair {ell, n-ell} collapses to a single element
//! and buckets three and five have one h-value; the verifier and the derived
//! parameter formulas here handle that case explicitly.
//!
//! The group is written additively; the groups H and P of the abstract
//! definition are Z_n and Z_m with h and g the generators 1.
//!
//! A sequence with nonzero entries zeta^{b_i} maps to the set
//! R_a = { (i, b_i) : a_i != 0 }, and a two-zero-symbol sequence is a nearly
//! perfect sequence of type (gamma1, gamma2) exactly when R_a is an
//! ell-PDPDS with the parameters produced by [`nps_params`]; that duality is
//! what most of this module's callers exercise.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_prime, isqrt};
use crate::sequence::{AlmostSequence, SequenceError, Symbol};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiffsetError {
    #[error("group orders must be at least 1, got ({n}, {m})")]
    BadGroupOrder { n: u32, m: u32 },
    #[error("element ({h}, {p}) out of range for Z_{n} x Z_{m}")]
    OutOfRange { h: u32, p: u32, n: u32, m: u32 },
    #[error("duplicate element ({h}, {p})")]
    Duplicate { h: u32, p: u32 },
    #[error("ell = {0} is 0 mod n; the shift must be a nonidentity element")]
    InvalidEll(u32),
    #[error("bucket {bucket} is not constant: count {count1} at {witness1} vs count {count2} at {witness2}")]
    NonConstantBucket {
        bucket: Bucket,
        witness1: GroupElem,
        count1: u64,
        witness2: GroupElem,
        count2: u64,
    },
    #[error("two elements share the h-coordinate {h}; not a sequence support")]
    DuplicateColumn { h: u32 },
    #[error("parameters are negative or non-integral: {0}")]
    BadParams(String),
    #[error("nonexistence bound not applicable: {0}")]
    BoundNotApplicable(String),
    #[error("text format error: {0}")]
    Format(String),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// Element of Z_n x Z_m, additive encoding.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct GroupElem {
    pub h: u32,
    pub p: u32,
}

impl GroupElem {
    pub fn new(h: u32, p: u32) -> Self {
        GroupElem { h, p }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h, self.p)
    }
}

/// The five bucket families of the PDPDS definition.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bucket {
    /// (d, 0) with d outside {0, ell, n-ell}.
    HGeneric,
    /// (0, p) with p != 0.
    PNonIdentity,
    /// (ell, 0) and (n-ell, 0).
    HEll,
    /// (d, p) with d generic and p != 0.
    MixedGeneric,
    /// (ell or n-ell, p) with p != 0.
    MixedEll,
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Bucket::HGeneric => "h-generic",
            Bucket::PNonIdentity => "p-nonidentity",
            Bucket::HEll => "h-ell",
            Bucket::MixedGeneric => "mixed-generic",
            Bucket::MixedEll => "mixed-ell",
        };
        write!(f, "{s}")
    }
}

/// Verified parameter tuple ell-(n, m, k, lambda1, lambda2, lambda3, mu1, mu2).
/// `ell` is stored normalized to min(ell, n-ell).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct PdpdsParams {
    pub ell: u32,
    pub n: u32,
    pub m: u32,
    pub k: u64,
    pub lambda1: i64,
    pub lambda2: i64,
    pub lambda3: i64,
    pub mu1: i64,
    pub mu2: i64,
}

impl PdpdsParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        ell: u32,
        n: u32,
        m: u32,
        k: u64,
        lambda1: i64,
        lambda2: i64,
        lambda3: i64,
        mu1: i64,
        mu2: i64,
    ) -> Result<Self, DiffsetError> {
        if n == 0 || ell % n == 0 {
            return Err(DiffsetError::InvalidEll(ell));
        }
        for (name, v) in [
            ("lambda1", lambda1),
            ("lambda2", lambda2),
            ("lambda3", lambda3),
            ("mu1", mu1),
            ("mu2", mu2),
        ] {
            if v < 0 {
                return Err(DiffsetError::BadParams(format!("{name} = {v} < 0")));
            }
        }
        let ell = ell % n;
        Ok(PdpdsParams {
            ell: ell.min(n - ell),
            n,
            m,
            k,
            lambda1,
            lambda2,
            lambda3,
            mu1,
            mu2,
        })
    }

    /// Number of h-values in {ell, n-ell}: 1 in the degenerate 2*ell = 0
    /// case, 2 otherwise.
    pub fn ell_set_size(&self) -> u32 {
        if (2 * self.ell) % self.n == 0 {
            1
        } else {
            2
        }
    }

    /// Size of the generic h-bucket.
    pub fn generic_h_size(&self) -> u32 {
        self.n - 1 - self.ell_set_size()
    }

    /// Whole-table mass check: the five buckets must account for exactly
    /// k(k-1) ordered differences.
    pub fn mass_consistent(&self) -> bool {
        let g = self.generic_h_size() as i64;
        let e = self.ell_set_size() as i64;
        let m1 = self.m as i64 - 1;
        let total = self.lambda1 * g
            + self.lambda2 * m1
            + self.lambda3 * e
            + self.mu1 * g * m1
            + self.mu2 * e * m1;
        total == (self.k * (self.k - 1)) as i64
    }

    /// Remark-style degenerations, most specific first: a difference set in
    /// the full group (all five constants equal), a relative difference set
    /// (lambda2 = 0, the rest equal), a direct product difference set
    /// (lambda3 = lambda1 and mu2 = mu1), otherwise a proper ell-PDPDS.
    pub fn special_case(&self) -> SpecialCase {
        let uniform_h = self.lambda3 == self.lambda1 && self.mu2 == self.mu1;
        if uniform_h
            && self.lambda1 == self.lambda2
            && self.lambda1 == self.mu1
        {
            SpecialCase::DifferenceSet
        } else if uniform_h && self.lambda2 == 0 && self.lambda1 == self.mu1 {
            SpecialCase::RelativeDifferenceSet
        } else if uniform_h {
            SpecialCase::Dpds
        } else {
            SpecialCase::Proper
        }
    }
}

impl fmt::Display for PdpdsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-({},{},{},{},{},{},{},{})",
            self.ell,
            self.n,
            self.m,
            self.k,
            self.lambda1,
            self.lambda2,
            self.lambda3,
            self.mu1,
            self.mu2
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialCase {
    /// (nm, k, lambda) difference set in the full group.
    DifferenceSet,
    /// (n, m, k, lambda) relative difference set.
    RelativeDifferenceSet,
    /// (n, m, k, lambda1, lambda2, mu) direct product difference set.
    Dpds,
    /// None of the degenerations apply.
    Proper,
}

impl fmt::Display for SpecialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpecialCase::DifferenceSet => "DS",
            SpecialCase::RelativeDifferenceSet => "RDS",
            SpecialCase::Dpds => "DPDS",
            SpecialCase::Proper => "proper ell-PDPDS",
        };
        write!(f, "{s}")
    }
}

/// Column sums s_i = |{ (r1, r2) in R : r2 = i }|.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColumnSums(pub Vec<u64>);

/// A subset of Z_n x Z_m, kept sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffSet {
    n: u32,
    m: u32,
    elems: Vec<GroupElem>,
}

impl DiffSet {
    pub fn new(
        n: u32,
        m: u32,
        elems: impl IntoIterator<Item = GroupElem>,
    ) -> Result<Self, DiffsetError> {
        if n == 0 || m == 0 {
            return Err(DiffsetError::BadGroupOrder { n, m });
        }
        let mut elems: Vec<GroupElem> = elems.into_iter().collect();
        elems.sort_unstable();
        for w in elems.windows(2) {
            if w[0] == w[1] {
                return Err(DiffsetError::Duplicate { h: w[0].h, p: w[0].p });
            }
        }
        for &e in &elems {
            if e.h >= n || e.p >= m {
                return Err(DiffsetError::OutOfRange { h: e.h, p: e.p, n, m });
            }
        }
        Ok(DiffSet { n, m, elems })
    }

    /// R_a of a sequence: { (i, b_i) : a_i != 0 } in Z_period x Z_m.
    pub fn from_sequence(seq: &AlmostSequence) -> Self {
        let elems = seq
            .symbols()
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s {
                Symbol::Zero => None,
                Symbol::Exp(b) => Some(GroupElem::new(i as u32, *b)),
            })
            .collect();
        DiffSet {
            n: seq.period() as u32,
            m: seq.order(),
            elems,
        }
    }

    /// Inverse of [`DiffSet::from_sequence`]: fails if two elements share an
    /// h-coordinate.
    pub fn to_sequence(&self) -> Result<AlmostSequence, DiffsetError> {
        let mut exps: Vec<Option<u32>> = vec![None; self.n as usize];
        for &e in &self.elems {
            if exps[e.h as usize].is_some() {
                return Err(DiffsetError::DuplicateColumn { h: e.h });
            }
            exps[e.h as usize] = Some(e.p);
        }
        Ok(AlmostSequence::from_exponents(self.m, &exps)?)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[GroupElem] {
        &self.elems
    }

    pub fn contains(&self, e: GroupElem) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    /// R + g.
    pub fn translate(&self, g: GroupElem) -> Self {
        let elems: Vec<GroupElem> = self
            .elems
            .iter()
            .map(|&e| GroupElem::new((e.h + g.h) % self.n, (e.p + g.p) % self.m))
            .collect();
        DiffSet::new(self.n, self.m, elems).expect("translate preserves validity")
    }

    /// R^{(t)} = { t*r : r in R }, componentwise multiplication.
    pub fn dilate(&self, t: u64) -> Self {
        let elems: Vec<GroupElem> = self
            .elems
            .iter()
            .map(|&e| {
                GroupElem::new(
                    ((e.h as u64 * t) % self.n as u64) as u32,
                    ((e.p as u64 * t) % self.m as u64) as u32,
                )
            })
            .collect();
        let mut elems = elems;
        elems.sort_unstable();
        elems.dedup();
        DiffSet { n: self.n, m: self.m, elems }
    }

    /// Lexicographically least among the nm translates of R.
    pub fn canonical_translate(&self) -> Self {
        let mut best: Option<Vec<GroupElem>> = None;
        for h in 0..self.n {
            for p in 0..self.m {
                let cand = self.translate(GroupElem::new(h, p)).elems;
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        DiffSet {
            n: self.n,
            m: self.m,
            elems: best.expect("at least the identity translate exists"),
        }
    }

    /// Dense difference counts indexed h * m + p; the identity cell stays 0
    /// because r1 = r2 pairs are excluded.
    pub(crate) fn diff_counts_dense(&self) -> Vec<u64> {
        let (n, m) = (self.n as usize, self.m as usize);
        let mut counts = vec![0u64; n * m];
        for (i, &r1) in self.elems.iter().enumerate() {
            for (j, &r2) in self.elems.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = (r1.h + self.n - r2.h) % self.n;
                let p = (r1.p + self.m - r2.p) % self.m;
                counts[d as usize * m + p as usize] += 1;
            }
        }
        counts
    }

    /// Multiset of the k(k-1) differences r1 - r2 over distinct pairs.
    pub fn difference_table(&self) -> BTreeMap<GroupElem, u64> {
        let m = self.m as usize;
        self.diff_counts_dense()
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(idx, c)| (GroupElem::new((idx / m) as u32, (idx % m) as u32), c))
            .collect()
    }

    /// Check the five-bucket definition at shift `ell` and extract the
    /// parameter tuple. On failure the error carries the first non-constant
    /// bucket together with two witness elements and their counts.
    pub fn verify_lpdpds(&self, ell: u32) -> Result<PdpdsParams, DiffsetError> {
        let n = self.n;
        let ell_red = ell % n;
        if ell_red == 0 {
            return Err(DiffsetError::InvalidEll(ell));
        }
        let counts = self.diff_counts_dense();
        let m = self.m as usize;
        let in_ell_set = |d: u32| d == ell_red || d == n - ell_red;

        // scan a bucket, demanding a constant count
        let mut constants: BTreeMap<Bucket, Option<(GroupElem, u64)>> = BTreeMap::new();
        for bucket in [
            Bucket::HGeneric,
            Bucket::PNonIdentity,
            Bucket::HEll,
            Bucket::MixedGeneric,
            Bucket::MixedEll,
        ] {
            constants.insert(bucket, None);
        }
        for d in 0..n {
            for p in 0..self.m {
                if d == 0 && p == 0 {
                    continue;
                }
                let bucket = if p == 0 {
                    if d == 0 {
                        unreachable!()
                    } else if in_ell_set(d) {
                        Bucket::HEll
                    } else {
                        Bucket::HGeneric
                    }
                } else if d == 0 {
                    Bucket::PNonIdentity
                } else if in_ell_set(d) {
                    Bucket::MixedEll
                } else {
                    Bucket::MixedGeneric
                };
                let elem = GroupElem::new(d, p);
                let count = counts[d as usize * m + p as usize];
                match constants.get_mut(&bucket).unwrap() {
                    slot @ None => *slot = Some((elem, count)),
                    Some((w, c)) => {
                        if *c != count {
                            return Err(DiffsetError::NonConstantBucket {
                                bucket,
                                witness1: *w,
                                count1: *c,
                                witness2: elem,
                                count2: count,
                            });
                        }
                    }
                }
            }
        }
        let value = |b: Bucket| constants[&b].map_or(0, |(_, c)| c) as i64;
        PdpdsParams::new(
            ell_red,
            n,
            self.m,
            self.k() as u64,
            value(Bucket::HGeneric),
            value(Bucket::PNonIdentity),
            value(Bucket::HEll),
            value(Bucket::MixedGeneric),
            value(Bucket::MixedEll),
        )
    }

    /// Check the group-ring identity: R R^{(-1)} (including the k identity
    /// terms) must equal
    ///
    ///   (k - l1 - l2 + m1)e + (l1 - m1)H + (l2 - m1)P + m1 G
    ///     + (l3 - l1){h^ell, h^{n-ell}}
    ///     + (m2 - m1)({h^ell, h^{n-ell}} x (P \ e))
    ///
    /// coefficientwise in Z[G].
    pub fn group_ring_identity_holds(&self, params: &PdpdsParams) -> bool {
        if params.n != self.n || params.m != self.m || params.k != self.k() as u64 {
            return false;
        }
        let counts = self.diff_counts_dense();
        let m = self.m as usize;
        let ell = params.ell % self.n;
        let in_ell_set = |d: u32| d == ell || d == self.n - ell;
        for d in 0..self.n {
            for p in 0..self.m {
                let mut lhs = counts[d as usize * m + p as usize] as i64;
                if d == 0 && p == 0 {
                    lhs += self.k() as i64; // the identity terms r * r^{-1}
                }
                let mut rhs = params.mu1; // mu1 * G
                if p == 0 {
                    rhs += params.lambda1 - params.mu1; // (l1 - m1) * H
                }
                if d == 0 {
                    rhs += params.lambda2 - params.mu1; // (l2 - m1) * P
                }
                if d == 0 && p == 0 {
                    rhs += params.k as i64 - params.lambda1 - params.lambda2 + params.mu1;
                }
                if in_ell_set(d) && p == 0 {
                    rhs += params.lambda3 - params.lambda1;
                }
                if in_ell_set(d) && p != 0 {
                    rhs += params.mu2 - params.mu1;
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// s_i = number of elements with p-coordinate i.
    pub fn column_sums(&self) -> ColumnSums {
        let mut s = vec![0u64; self.m as usize];
        for &e in &self.elems {
            s[e.p as usize] += 1;
        }
        ColumnSums(s)
    }

    /// The three column-sum identities of a verified parameter tuple:
    ///
    ///   (i)   sum s_j^2        = g*lambda1 + e*lambda3 + k
    ///   (ii)  sum s_j s_{j-i}  = g*mu1 + lambda2 + e*mu2   for each i
    ///   (iii) (m-1) * (ii) + (i) = k^2
    ///
    /// where g and e are the generic-bucket and ell-set sizes (n-3 and 2 in
    /// the non-degenerate case; n-2 and 1 when 2*ell = 0 mod n, where the
    /// same counting argument forces the collapsed sizes).
    pub fn verify_si_identities(&self, params: &PdpdsParams) -> bool {
        let ColumnSums(s) = self.column_sums();
        let m = self.m as usize;
        let g = params.generic_h_size() as i64;
        let e = params.ell_set_size() as i64;
        let k = self.k() as i64;
        let sum_sq: i64 = s.iter().map(|&v| (v * v) as i64).sum();
        if sum_sq != g * params.lambda1 + e * params.lambda3 + k {
            return false;
        }
        let expected_cross = g * params.mu1 + params.lambda2 + e * params.mu2;
        for i in 1..=(m - 1).div_ceil(2) {
            let cross: i64 = (0..m)
                .map(|j| (s[j] * s[(j + m - i) % m]) as i64)
                .sum();
            if cross != expected_cross {
                return false;
            }
            if (self.m as i64 - 1) * cross + sum_sq != k * k {
                return false;
            }
        }
        true
    }

    /// Text format: `n=`, `m=` headers then one `h,p` line per element.
    pub fn parse_text(text: &str) -> Result<Self, DiffsetError> {
        let mut n: Option<u32> = None;
        let mut m: Option<u32> = None;
        let mut elems = Vec::new();
        for line in text.split(|c| c == '\n' || c == ';') {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n=") {
                n = Some(rest.trim().parse().map_err(|_| {
                    DiffsetError::Format(format!("bad n header: `{line}`"))
                })?);
            } else if let Some(rest) = line.strip_prefix("m=") {
                m = Some(rest.trim().parse().map_err(|_| {
                    DiffsetError::Format(format!("bad m header: `{line}`"))
                })?);
            } else {
                let (h, p) = line.split_once(',').ok_or_else(|| {
                    DiffsetError::Format(format!("expected `h,p`, got `{line}`"))
                })?;
                let h = h.trim().parse().map_err(|_| {
                    DiffsetError::Format(format!("bad h in `{line}`"))
                })?;
                let p = p.trim().parse().map_err(|_| {
                    DiffsetError::Format(format!("bad p in `{line}`"))
                })?;
                elems.push(GroupElem::new(h, p));
            }
        }
        let n = n.ok_or_else(|| DiffsetError::Format("missing n= header".into()))?;
        let m = m.ok_or_else(|| DiffsetError::Format("missing m= header".into()))?;
        DiffSet::new(n, m, elems)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\nm={}\n", self.n, self.m);
        for e in &self.elems {
            out.push_str(&format!("{},{}\n", e.h, e.p));
        }
        out
    }
}

/// The two-block construction: R = ({a} x (Z_n \ {b})) u ((Z_n \ {b}) x {b})
/// inside Z_n x Z_n. Returns the set together with the parameter tuple it
/// verifies to: ell-(n, n, 2n-2, n-2, n, n-2, 2, 1) for ell = (a - b) mod n
/// nonzero, and the DPDS tuple (n, n, 2n-2, n-2, n-2, 2) (reported at the
/// nominal shift 1) when a = b.
///
/// Degenerate corner: when n is even and ell = n/2 the two mixed blocks miss
/// the same h-column, so mu2 is 0 rather than 1; the returned expected
/// parameters account for that.
pub fn construct_prop5(n: u32, a: u32, b: u32) -> Result<(DiffSet, PdpdsParams), DiffsetError> {
    if n < 3 {
        return Err(DiffsetError::BadGroupOrder { n, m: n });
    }
    let (a, b) = (a % n, b % n);
    let mut elems = Vec::with_capacity(2 * n as usize - 2);
    for p in 0..n {
        if p != b {
            elems.push(GroupElem::new(a, p));
        }
    }
    for h in 0..n {
        if h != b {
            elems.push(GroupElem::new(h, b));
        }
    }
    let set = DiffSet::new(n, n, elems)?;
    let ell = (a + n - b) % n;
    let k = 2 * n as u64 - 2;
    let expected = if ell == 0 {
        PdpdsParams::new(1, n, n, k, n as i64 - 2, n as i64 - 2, n as i64 - 2, 2, 2)?
    } else {
        let mu2 = if (2 * ell) % n == 0 { 0 } else { 1 };
        PdpdsParams::new(ell, n, n, k, n as i64 - 2, n as i64, n as i64 - 2, 2, mu2)?
    };
    Ok((set, expected))
}

/// Why a parameter tuple cannot come from a nearly perfect sequence.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("{reason}")]
pub struct Infeasibility {
    pub reason: String,
}

/// The parameter tuple forced on R_a by a two-zero-symbol sequence with
/// nonzero count `n_nonzero`, period `period = n_nonzero + 2`, zeros at
/// 0 and ell, and out-of-phase values gamma1 (at shifts ell, period-ell)
/// and gamma2 (elsewhere):
///
///   mu1 = (n - gamma2 - 2)/m      lambda1 = mu1 + gamma2     lambda2 = 0
///   mu2 = (n - gamma1 - 1)/m      lambda3 = mu2 + gamma1
///
/// In the degenerate case 2*ell = 0 mod period the ell-column loses one
/// zero-overlap, so mu2 = (n - gamma1)/m instead. Divisibility failures and
/// negative counts are reported as infeasibility, which callers treat as a
/// value, not an error.
pub fn nps_params(
    n_nonzero: u32,
    m: u32,
    gamma1: i64,
    gamma2: i64,
    ell: u32,
    period: u32,
) -> Result<PdpdsParams, Infeasibility> {
    assert_eq!(period, n_nonzero + 2, "two-zero sequence: period = n + 2");
    assert!(ell % period != 0, "ell must be nonzero mod period");
    let n = n_nonzero as i64;
    let mi = m as i64;
    let degenerate = (2 * ell) % period == 0;
    let num1 = n - gamma2 - 2;
    let num2 = if degenerate { n - gamma1 } else { n - gamma1 - 1 };
    if num1.rem_euclid(mi) != 0 {
        return Err(Infeasibility {
            reason: format!("{m} does not divide n - gamma2 - 2 = {num1}"),
        });
    }
    if num2.rem_euclid(mi) != 0 {
        return Err(Infeasibility {
            reason: format!("{m} does not divide {num2} (mu2 numerator)"),
        });
    }
    let mu1 = num1 / mi;
    let mu2 = num2 / mi;
    let lambda1 = mu1 + gamma2;
    let lambda3 = mu2 + gamma1;
    PdpdsParams::new(ell, period, m, n_nonzero as u64, lambda1, 0, lambda3, mu1, mu2).map_err(
        |e| Infeasibility {
            reason: format!("parameter tuple invalid: {e}"),
        },
    )
}

/// The quadratic nonexistence threshold
/// floor((-m k1 - 4 + sqrt(m^2 k1^2 - 4 m k1 + 8 m k2)) / 2), computed with
/// an exact integer square root.
pub fn nonexistence_threshold(m: u32, k1: i64, k2: i64) -> Result<i64, DiffsetError> {
    let mi = m as i64;
    let radicand = mi * mi * k1 * k1 - 4 * mi * k1 + 8 * mi * k2;
    if radicand < 0 {
        return Err(DiffsetError::BoundNotApplicable(format!(
            "negative radicand {radicand}"
        )));
    }
    // floor((a + sqrt(r)) / 2) = floor((a + isqrt(r)) / 2) since the
    // fractional part of sqrt(r) is below 1/2 away from changing the floor.
    let a = -mi * k1 - 4;
    Ok((a + isqrt(radicand as u64) as i64).div_euclid(2))
}

/// Feasibility verdict for an m-ary type (gamma1, gamma2) at nonzero count n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityCheck {
    pub feasible: bool,
    pub threshold: Option<i64>,
    pub reason: String,
}

/// Apply the nonexistence bound: with m an odd prime and
/// n - gamma2 - 2 = k1 m, n - gamma1 - 1 = k2 m (k1, k2 >= 0), no sequence
/// of that type exists once gamma2 is at or below the threshold. Outside
/// those preconditions the bound is silent and the check reports feasible.
pub fn nps_feasible(n_nonzero: u32, m: u32, gamma1: i64, gamma2: i64) -> FeasibilityCheck {
    let n = n_nonzero as i64;
    let mi = m as i64;
    if m % 2 == 0 || !is_prime(m as u64) {
        return FeasibilityCheck {
            feasible: true,
            threshold: None,
            reason: "bound not applicable: m is not an odd prime".into(),
        };
    }
    let num1 = n - gamma2 - 2;
    let num2 = n - gamma1 - 1;
    if num1 < 0 || num2 < 0 || num1 % mi != 0 || num2 % mi != 0 {
        return FeasibilityCheck {
            feasible: true,
            threshold: None,
            reason: "bound not applicable: k1, k2 are not non-negative integers".into(),
        };
    }
    match nonexistence_threshold(m, num1 / mi, num2 / mi) {
        Err(e) => FeasibilityCheck {
            feasible: true,
            threshold: None,
            reason: format!("{e}"),
        },
        Ok(threshold) => {
            if gamma2 <= threshold {
                FeasibilityCheck {
                    feasible: false,
                    threshold: Some(threshold),
                    reason: format!("gamma2 = {gamma2} <= threshold {threshold}"),
                }
            } else {
                FeasibilityCheck {
                    feasible: true,
                    threshold: Some(threshold),
                    reason: format!("gamma2 = {gamma2} > threshold {threshold}"),
                }
            }
        }
    }
}

/// JSON verification report for the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: u32,
    pub m: u32,
    pub ell: u32,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<PdpdsParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_case: Option<SpecialCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<VerifyFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyFailure {
    pub bucket: Bucket,
    pub witnesses: Vec<(GroupElem, u64)>,
}

impl VerifyReport {
    pub fn build(set: &DiffSet, ell: u32) -> Result<Self, DiffsetError> {
        match set.verify_lpdpds(ell) {
            Ok(params) => Ok(VerifyReport {
                n: set.n(),
                m: set.m(),
                ell: params.ell,
                k: set.k(),
                special_case: Some(params.special_case()),
                params: Some(params),
                failure: None,
            }),
            Err(DiffsetError::NonConstantBucket {
                bucket,
                witness1,
                count1,
                witness2,
                count2,
            }) => Ok(VerifyReport {
                n: set.n(),
                m: set.m(),
                ell: ell % set.n(),
                k: set.k(),
                params: None,
                special_case: None,
                failure: Some(VerifyFailure {
                    bucket,
                    witnesses: vec![(witness1, count1), (witness2, count2)],
                }),
            }),
            Err(e) => Err(e),
        }
    }
}
