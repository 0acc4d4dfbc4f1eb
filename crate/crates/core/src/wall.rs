//! Wall invariant systems: a symmetric integer trilinear form, a linear
//! form of first Pontryagin numbers, and half the third Betti number.
//!
//! Indices are 0-based in code; serialization and rendered reports use
//! 1-based generator indices.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::forms::FormsError;

/// Largest rank accepted by the brute-force isomorphism search.
pub const MAX_ISO_RANK: usize = 3;

#[derive(Debug, Error)]
pub enum WallError {
    #[error("dimension mismatch: form has rank {rank}, vector has length {len}")]
    DimensionMismatch { rank: usize, len: usize },

    #[error("integer overflow during exact evaluation")]
    Overflow,

    #[error("p1 has length {len}, expected rank {rank}")]
    P1Length { rank: usize, len: usize },

    #[error("triple ({0}, {1}, {2}) out of range for rank {3} (1-based, sorted)")]
    TripleOutOfRange(usize, usize, usize, usize),

    #[error("system is not admissible: {0}")]
    Inadmissible(AdmissibilityViolation),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank {n} too large for isomorphism search (max {max})")]
    RankTooLarge { n: usize, max: usize },
}

impl From<FormsError> for WallError {
    fn from(e: FormsError) -> Self {
        match e {
            FormsError::DimensionMismatch { rank, len } => WallError::DimensionMismatch { rank, len },
            _ => WallError::Overflow,
        }
    }
}

/// Symmetric trilinear form on `Z^n`, stored on sorted index triples.
///
/// Symmetry is structural: every lookup sorts its indices first. All sorted
/// triples are materialized, so two forms are equal iff their entry maps are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrilinearForm {
    rank: usize,
    entries: BTreeMap<[usize; 3], i64>,
}

impl TrilinearForm {
    /// The zero form of the given rank (every entry 0).
    pub fn zeros(rank: usize) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..rank {
            for j in i..rank {
                for k in j..rank {
                    entries.insert([i, j, k], 0);
                }
            }
        }
        TrilinearForm { rank, entries }
    }

    pub fn from_entries(
        rank: usize,
        entries: &[([usize; 3], i64)],
    ) -> Result<Self, WallError> {
        let mut form = TrilinearForm::zeros(rank);
        for &(triple, value) in entries {
            form.set(triple[0], triple[1], triple[2], value)?;
        }
        Ok(form)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn sorted(i: usize, j: usize, k: usize) -> [usize; 3] {
        let mut t = [i, j, k];
        t.sort_unstable();
        t
    }

    /// `mu(x_i, x_j, x_k)` for basis indices in any order.
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        *self
            .entries
            .get(&Self::sorted(i, j, k))
            .unwrap_or_else(|| panic!("triple ({i}, {j}, {k}) out of range for rank {}", self.rank))
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: i64) -> Result<(), WallError> {
        let key = Self::sorted(i, j, k);
        let rank = self.rank;
        match self.entries.get_mut(&key) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(WallError::TripleOutOfRange(i + 1, j + 1, k + 1, rank)),
        }
    }

    pub fn sorted_triples(&self) -> impl Iterator<Item = ([usize; 3], i64)> + '_ {
        self.entries.iter().map(|(&t, &v)| (t, v))
    }

    /// Full trilinear extension: the sum of `u_i v_j w_k mu(x_i, x_j, x_k)`
    /// over all ordered index triples. Exact; overflow is an error.
    pub fn evaluate(&self, u: &[i64], v: &[i64], w: &[i64]) -> Result<i64, WallError> {
        for x in [u, v, w] {
            if x.len() != self.rank {
                return Err(WallError::DimensionMismatch { rank: self.rank, len: x.len() });
            }
        }
        let mut acc: i128 = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                let uv = i128::from(u[i]) * i128::from(v[j]);
                for k in 0..self.rank {
                    let term = uv
                        .checked_mul(i128::from(w[k]))
                        .and_then(|t| t.checked_mul(i128::from(self.get(i, j, k))))
                        .ok_or(WallError::Overflow)?;
                    acc = acc.checked_add(term).ok_or(WallError::Overflow)?;
                }
            }
        }
        i64::try_from(acc).map_err(|_| WallError::Overflow)
    }
}

/// The classification data of a simply-connected spin 6-manifold with
/// torsion-free homology: rank-`n` trilinear cup form, Pontryagin numbers
/// `p1[i] = p1(x_i)`, and `r = b3 / 2`.
///
/// `r` is carried as metadata only: the construction targets the core
/// (`r = 0`) and records "append r copies of S3 x S3" as an annotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSystem {
    pub mu: TrilinearForm,
    pub p1: Vec<i64>,
    pub r: u64,
}

impl WallSystem {
    pub fn new(mu: TrilinearForm, p1: Vec<i64>, r: u64) -> Result<Self, WallError> {
        if p1.len() != mu.rank() {
            return Err(WallError::P1Length { rank: mu.rank(), len: p1.len() });
        }
        Ok(WallSystem { mu, p1, r })
    }

    pub fn rank(&self) -> usize {
        self.mu.rank()
    }
}

/// One failed admissibility congruence, at basis resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibilityViolation {
    /// `mu(i,i,j) + mu(i,j,j)` is odd (indices stored 0-based).
    MuParity { i: usize, j: usize, sum: i64 },
    /// `p1[i] - 4 mu(i,i,i)` is not divisible by 24.
    P1Congruence { i: usize, residue: i64 },
}

impl fmt::Display for AdmissibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibilityViolation::MuParity { i, j, sum } => write!(
                f,
                "parity congruence fails at pair ({}, {}): mu(i,i,j) + mu(i,j,j) = {} is odd",
                i + 1,
                j + 1,
                sum
            ),
            AdmissibilityViolation::P1Congruence { i, residue } => write!(
                f,
                "Pontryagin congruence fails at {}: p1 - 4 mu(i,i,i) = {} (mod 24), expected 0",
                i + 1,
                residue
            ),
        }
    }
}

/// Outcome of the two admissibility congruences, listing every violated
/// basis pair / index. The congruences are necessary conditions only; no
/// realizability claim beyond them is made.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub violations: Vec<AdmissibilityViolation>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_admissible() {
            write!(f, "admissible (necessary congruences hold)")
        } else {
            writeln!(f, "not admissible:")?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

/// Checks both admissibility congruences on basis vectors.
///
/// Basis pairs suffice for the parity congruence: with
/// `f(x,y) = mu(x,x,y) + mu(x,y,y)`, trilinearity gives
/// `f(x+x',y) = f(x,y) + f(x',y) + 2 mu(x,x',y)` and symmetrically in `y`,
/// so `f` is additive mod 2 in each slot and vanishes for all pairs iff it
/// vanishes on basis pairs. Given that, `g(x) = p1(x) - 4 mu(x,x,x)`
/// satisfies `g(x+y) - g(x) - g(y) = -12 (mu(x,x,y) + mu(x,y,y)) == 0
/// (mod 24)` and `g(-x) = -g(x)`, so `g` is additive mod 24 and vanishes
/// everywhere iff it vanishes on the basis. Both reductions are validated
/// against the exhaustive oracle.
pub fn check_admissible(sys: &WallSystem) -> AdmissibilityReport {
    let n = sys.rank();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let sum = sys.mu.get(i, i, j) + sys.mu.get(i, j, j);
            if sum.rem_euclid(2) != 0 {
                violations.push(AdmissibilityViolation::MuParity { i, j, sum });
            }
        }
    }
    for i in 0..n {
        let residue = (sys.p1[i] - 4 * sys.mu.get(i, i, i)).rem_euclid(24);
        if residue != 0 {
            violations.push(AdmissibilityViolation::P1Congruence { i, residue });
        }
    }
    AdmissibilityReport { violations }
}

/// Extracts `k[i] = (p1[i] - 4 mu(i,i,i)) / 24`; exact by admissibility.
pub fn k_vector(sys: &WallSystem) -> Result<Vec<i64>, WallError> {
    let report = check_admissible(sys);
    if let Some(first) = report.violations.into_iter().next() {
        return Err(WallError::Inadmissible(first));
    }
    Ok((0..sys.rank())
        .map(|i| (sys.p1[i] - 4 * sys.mu.get(i, i, i)) / 24)
        .collect())
}

/// Entrywise equality in the fixed basis.
pub fn systems_equal(s1: &WallSystem, s2: &WallSystem) -> bool {
    s1 == s2
}

/// An integer basis-change matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    n: usize,
    entries: Vec<i64>,
}

impl BasisChange {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        BasisChange { n, entries }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let entries = rows.iter().flat_map(|r| r.iter().copied()).collect();
        BasisChange { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    /// Column `c`: the image of the `c`-th target basis vector expressed in
    /// source coordinates.
    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.n).map(|r| self.get(r, c)).collect()
    }

    pub fn det(&self) -> i128 {
        let e = |r: usize, c: usize| i128::from(self.get(r, c));
        match self.n {
            1 => e(0, 0),
            2 => e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0),
            3 => {
                e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                    - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                    + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
            }
            n => panic!("determinant only implemented for n <= 3, got {n}"),
        }
    }
}

impl fmt::Display for BasisChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            write!(f, "[")?;
            for c in 0..self.n {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of the bounded isomorphism search.
///
/// A found matrix is a certificate. `NoneFound` is not a proof of
/// non-isomorphism: the search only covers matrices within the entry bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoSearchOutcome {
    Found(BasisChange),
    NoneFound,
}

impl IsoSearchOutcome {
    pub fn certificate(&self) -> Option<&BasisChange> {
        match self {
            IsoSearchOutcome::Found(t) => Some(t),
            IsoSearchOutcome::NoneFound => None,
        }
    }
}

impl fmt::Display for IsoSearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoSearchOutcome::Found(t) => write!(f, "isomorphic via basis change:\n{t}"),
            IsoSearchOutcome::NoneFound => write!(
                f,
                "no certificate within entry bound; NOT a proof of non-isomorphism"
            ),
        }
    }
}

/// Whether `t` transports `(mu, p1, r)` of `s1` onto `s2`, column `c` being
/// the source-coordinate image of the target basis vector `x_c`.
fn transports(s1: &WallSystem, s2: &WallSystem, t: &BasisChange) -> Result<bool, WallError> {
    if s1.r != s2.r {
        return Ok(false);
    }
    let n = s1.rank();
    let cols: Vec<Vec<i64>> = (0..n).map(|c| t.column(c)).collect();
    for (triple, expected) in s2.mu.sorted_triples() {
        let value = s1
            .mu
            .evaluate(&cols[triple[0]], &cols[triple[1]], &cols[triple[2]])?;
        if value != expected {
            return Ok(false);
        }
    }
    for c in 0..n {
        let mut acc: i128 = 0;
        for p in 0..n {
            let term = i128::from(t.get(p, c)) * i128::from(s1.p1[p]);
            acc = acc.checked_add(term).ok_or(WallError::Overflow)?;
        }
        if acc != i128::from(s2.p1[c]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Brute-force search for a basis change carrying `s1` onto `s2`.
///
/// Enumerates integer matrices row-major with entries ascending in
/// `[-entry_bound, entry_bound]` and returns the lexicographically first
/// determinant-`+-1` matrix that transports the system, so the certificate
/// is deterministic. Guarded to rank <= [`MAX_ISO_RANK`].
pub fn bounded_isomorphic(
    s1: &WallSystem,
    s2: &WallSystem,
    entry_bound: i64,
) -> Result<IsoSearchOutcome, WallError> {
    let n = s1.rank();
    if n != s2.rank() {
        return Err(WallError::RankMismatch { left: n, right: s2.rank() });
    }
    if n > MAX_ISO_RANK {
        return Err(WallError::RankTooLarge { n, max: MAX_ISO_RANK });
    }
    let bound = entry_bound.max(0);
    let mut entries = vec![-bound; n * n];
    loop {
        let t = BasisChange { n, entries: entries.clone() };
        if t.det().abs() == 1 && transports(s1, s2, &t)? {
            return Ok(IsoSearchOutcome::Found(t));
        }
        // odometer: advance the last coordinate first so the enumeration is
        // lexicographic over row-major entries
        let mut pos = entries.len();
        loop {
            if pos == 0 {
                return Ok(IsoSearchOutcome::NoneFound);
            }
            pos -= 1;
            entries[pos] += 1;
            if entries[pos] <= bound {
                break;
            }
            entries[pos] = -bound;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WallSystemWire {
    n: usize,
    #[serde(default)]
    mu: Vec<([usize; 3], i64)>,
    p1: Vec<i64>,
    #[serde(default)]
    r: u64,
}

impl Serialize for WallSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mu = self
            .mu
            .sorted_triples()
            .filter(|&(_, v)| v != 0)
            .map(|(t, v)| ([t[0] + 1, t[1] + 1, t[2] + 1], v))
            .collect();
        WallSystemWire { n: self.rank(), mu, p1: self.p1.clone(), r: self.r }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WallSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WallSystemWire::deserialize(deserializer)?;
        if wire.n < 1 {
            return Err(D::Error::custom("n must be at least 1"));
        }
        if wire.p1.len() != wire.n {
            return Err(D::Error::custom(format!(
                "p1 has length {}, expected n = {}",
                wire.p1.len(),
                wire.n
            )));
        }
        let mut mu = TrilinearForm::zeros(wire.n);
        let mut seen = std::collections::BTreeSet::new();
        for ([i, j, k], value) in wire.mu {
            if !(1 <= i && i <= j && j <= k && k <= wire.n) {
                return Err(D::Error::custom(format!(
                    "mu triple [{i}, {j}, {k}] must be 1-based, sorted, and within n = {}",
                    wire.n
                )));
            }
            if !seen.insert([i, j, k]) {
                return Err(D::Error::custom(format!("duplicate mu triple [{i}, {j}, {k}]")));
            }
            mu.set(i - 1, j - 1, k - 1, value).map_err(D::Error::custom)?;
        }
        Ok(WallSystem { mu, p1: wire.p1, r: wire.r })
    }
}
