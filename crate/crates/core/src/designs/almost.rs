use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::PrimeField;

/// An `(n, k, lambda, mu)` almost difference set in the cyclic group `Z_n`.
///
/// `mu` counts the nonzero shifts `x` with `diff_D(x) = lambda`; the other
/// `n - 1 - mu` shifts have `diff_D(x) = lambda + 1`. A perfect difference set
/// is reported with `mu = n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostDifferenceSet {
    n: usize,
    lambda: usize,
    mu: usize,
    set: Vec<usize>,
}

impl AlmostDifferenceSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.set.len()
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn set(&self) -> &[usize] {
        &self.set
    }

    pub fn params(&self) -> (usize, usize, usize, usize) {
        (self.n, self.k(), self.lambda, self.mu)
    }

    /// `diff_D(x)` for this set.
    pub fn diff(&self, x: usize) -> usize {
        diff_unchecked(&self.set, self.n, x)
    }
}

impl fmt::Display for AlmostDifferenceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k(), self.lambda, self.mu)
    }
}

fn membership(set: &[usize], n: usize) -> Vec<bool> {
    let mut m = vec![false; n];
    for &d in set {
        m[d] = true;
    }
    m
}

fn diff_unchecked(set: &[usize], n: usize, x: usize) -> usize {
    let member = membership(set, n);
    set.iter().filter(|&&d| member[(d + x) % n]).count()
}

fn check_subset(set: &[usize], n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::Domain("group order must be positive".into()));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if let Some(&bad) = sorted.iter().find(|&&d| d >= n) {
        return Err(Error::Domain(format!("{bad} is not an element of Z_{n}")));
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Domain("subset has repeated elements".into()));
    }
    Ok(sorted)
}

/// `diff_D(x) = |D ∩ (D + x)|` in `Z_n`.
pub fn diff_function(set: &[usize], n: usize, x: usize) -> Result<usize> {
    let set = check_subset(set, n)?;
    if x >= n {
        return Err(Error::Domain(format!("{x} is not an element of Z_{n}")));
    }
    Ok(diff_unchecked(&set, n, x))
}

/// Result of [`classify_ads`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Ads(AlmostDifferenceSet),
    /// Histogram `diff value -> number of nonzero shifts` for a set whose
    /// difference function takes values outside any `{lambda, lambda + 1}`.
    NotAds(BTreeMap<usize, usize>),
}

impl Classification {
    pub fn into_ads(self) -> Option<AlmostDifferenceSet> {
        match self {
            Classification::Ads(a) => Some(a),
            Classification::NotAds(_) => None,
        }
    }
}

/// Difference histogram over all nonzero shifts.
pub fn diff_histogram(set: &[usize], n: usize) -> BTreeMap<usize, usize> {
    let member = membership(set, n);
    let mut hist = BTreeMap::new();
    for x in 1..n {
        let c = set.iter().filter(|&&d| member[(d + x) % n]).count();
        *hist.entry(c).or_insert(0) += 1;
    }
    hist
}

/// Classifies `D ⊆ Z_n` as an almost difference set if its difference
/// function takes at most two consecutive values on nonzero shifts.
pub fn classify_ads(set: &[usize], n: usize) -> Result<Classification> {
    let set = check_subset(set, n)?;
    if set.is_empty() {
        return Err(Error::Domain("subset must be nonempty".into()));
    }
    if n < 2 {
        return Err(Error::Domain("group order must be at least 2".into()));
    }
    let hist = diff_histogram(&set, n);
    let values: Vec<(usize, usize)> = hist.iter().map(|(&v, &c)| (v, c)).collect();
    let (lambda, mu) = match values.as_slice() {
        [(v, _)] => (*v, n - 1),
        [(lo, c), (hi, _)] if hi == &(lo + 1) => (*lo, *c),
        _ => return Ok(Classification::NotAds(hist)),
    };
    Ok(Classification::Ads(AlmostDifferenceSet {
        n,
        lambda,
        mu,
        set,
    }))
}

fn expect_ads(set: &[usize], n: usize, what: &str) -> Result<AlmostDifferenceSet> {
    match classify_ads(set, n)? {
        Classification::Ads(a) => Ok(a),
        Classification::NotAds(hist) => Err(Error::Internal(format!(
            "{what} is not an almost difference set: {hist:?}"
        ))),
    }
}

/// Ruzsa's modular Golomb ruler, a `(p^2 - p, p - 1, 0, 2p - 3)` almost
/// difference set in `Z_{p(p-1)}`.
///
/// `D = { x : x ≡ i (mod p-1), x ≡ g^i (mod p), 0 <= i < p-1 }` for the
/// smallest primitive root `g` of `p`.
pub fn ruzsa_ads(p: u64) -> Result<AlmostDifferenceSet> {
    if p < 3 {
        return Err(Error::Unsupported(format!("Ruzsa construction needs p >= 3, got {p}")));
    }
    let field = PrimeField::new(p)?;
    let g = field.smallest_primitive_root();
    let n = p * (p - 1);
    let set: Vec<usize> = (0..p - 1)
        .map(|i| {
            let residue = field.pow(g, i);
            (0..p)
                .map(|j| i + (p - 1) * j)
                .find(|x| x % p == residue)
                .expect("CRT solution exists for coprime moduli") as usize
        })
        .collect();
    let ads = expect_ads(&set, n as usize, "Ruzsa set")?;
    let expected = (
        n as usize,
        (p - 1) as usize,
        0,
        (2 * p - 3) as usize,
    );
    if ads.params() != expected {
        return Err(Error::Internal(format!(
            "Ruzsa set for p = {p} classified as {ads}, expected {expected:?}"
        )));
    }
    Ok(ads)
}

/// The complement `Z_n \ D`, an `(n, n-k, n-2k+lambda, mu)` almost difference set.
pub fn complement_ads(a: &AlmostDifferenceSet) -> Result<AlmostDifferenceSet> {
    let member = membership(&a.set, a.n);
    let rest: Vec<usize> = (0..a.n).filter(|&x| !member[x]).collect();
    let c = expect_ads(&rest, a.n, "complement")?;
    let k = a.k();
    let expected = (a.n, a.n - k, (a.n + a.lambda).wrapping_sub(2 * k), a.mu);
    if c.params() != expected {
        return Err(Error::Internal(format!(
            "complement of {a} classified as {c}, expected {expected:?}"
        )));
    }
    Ok(c)
}

/// The `n` translates `D + r` of an almost difference set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Development {
    source: AlmostDifferenceSet,
    blocks: Vec<Vec<usize>>,
}

impl Development {
    pub fn source(&self) -> &AlmostDifferenceSet {
        &self.source
    }

    /// Block `r` is `D + r`, sorted ascending.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Translate indices of the blocks containing every point of `points`.
    pub fn blocks_containing(&self, points: &[usize]) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| points.iter().all(|p| b.binary_search(p).is_ok()))
            .map(|(i, _)| i)
            .collect()
    }

    /// Map `multiplicity -> number of unordered point pairs` covered that
    /// many times by the blocks.
    pub fn pair_census(&self) -> BTreeMap<usize, usize> {
        let n = self.source.n;
        let mut counts = vec![0usize; n * n];
        for b in &self.blocks {
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    counts[x * n + y] += 1;
                }
            }
        }
        let mut census = BTreeMap::new();
        for x in 0..n {
            for y in x + 1..n {
                *census.entry(counts[x * n + y]).or_insert(0) += 1;
            }
        }
        census
    }
}

/// Develops an almost difference set into its translate blocks.
///
/// Requires `lambda < k - 1` (distinct translates) and `1 <= mu <= n - 2`
/// (the development is a 1-design but not a 2-design).
pub fn develop(a: &AlmostDifferenceSet) -> Result<Development> {
    let (n, k, lambda, mu) = a.params();
    if lambda + 1 >= k {
        return Err(Error::Unsupported(format!(
            "{a}: need lambda < k - 1 for distinct translates"
        )));
    }
    if mu == 0 || mu + 1 >= n {
        return Err(Error::Unsupported(format!(
            "{a}: mu must lie in [1, n-2]; the development would be a 2-design"
        )));
    }
    let blocks: Vec<Vec<usize>> = (0..n)
        .map(|r| {
            let mut b: Vec<usize> = a.set.iter().map(|d| (d + r) % n).collect();
            b.sort_unstable();
            b
        })
        .collect();
    let dev = Development {
        source: a.clone(),
        blocks,
    };

    let mut sorted = dev.blocks.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Internal(format!("{a}: translates coincide")));
    }
    let mut replication = vec![0usize; n];
    for b in &dev.blocks {
        for &p in b {
            replication[p] += 1;
        }
    }
    if replication.iter().any(|&c| c != k) {
        return Err(Error::Internal(format!("{a}: development is not a 1-design")));
    }
    let census = dev.pair_census();
    let mut expected = BTreeMap::new();
    expected.insert(lambda, n * mu / 2);
    *expected.entry(lambda + 1).or_insert(0) += n * (n - 1 - mu) / 2;
    if census != expected {
        return Err(Error::Internal(format!(
            "{a}: pair census {census:?} differs from {expected:?}"
        )));
    }
    Ok(dev)
}
