use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::PrimeField;

/// Parameters `(v, t, lambda)` of a symmetric design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub v: usize,
    pub t: usize,
    pub lambda: usize,
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.v, self.t, self.lambda)
    }
}

/// A verified `(v, t, lambda)` symmetric design on points `0..v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricDesign {
    params: DesignParams,
    blocks: Vec<Vec<usize>>,
}

impl SymmetricDesign {
    /// Canonicalizes the block list and runs the full verifier.
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let blocks = canonical_blocks(blocks);
        match verify_symmetric_design(v, &blocks) {
            Ok(params) => Ok(Self { params, blocks }),
            Err(violation) => Err(Error::Verification(violation.to_string())),
        }
    }

    pub fn params(&self) -> DesignParams {
        self.params
    }

    pub fn v(&self) -> usize {
        self.params.v
    }

    pub fn t(&self) -> usize {
        self.params.t
    }

    pub fn lambda(&self) -> usize {
        self.params.lambda
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Indices of the blocks containing every point of `points`, ascending.
    pub fn blocks_containing(&self, points: &[usize]) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| points.iter().all(|p| b.binary_search(p).is_ok()))
            .map(|(i, _)| i)
            .collect()
    }
}

fn canonical_blocks(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

/// Which symmetric-design property a candidate broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    PointRange,
    BlockCount,
    BlockSize,
    PairMultiplicity,
    Replication,
    BlockIntersection,
    ParameterIdentity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Block(usize),
    Point { point: usize, found: usize, expected: usize },
    Pair { a: usize, b: usize, found: usize, expected: usize },
    BlockPair { i: usize, j: usize, found: usize, expected: usize },
    Counts { found: usize, expected: usize },
}

/// First violated invariant and a witness for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub invariant: Invariant,
    pub witness: Witness,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.invariant, &self.witness) {
            (Invariant::PointRange, Witness::Block(i)) => {
                write!(f, "block {i} has a point outside the point set or a repeated point")
            }
            (Invariant::BlockCount, Witness::Counts { found, expected }) => {
                write!(f, "block count {found} \u{2260} v = {expected}")
            }
            (Invariant::BlockSize, Witness::Block(i)) => {
                write!(f, "block {i} differs in size from block 0")
            }
            (Invariant::PairMultiplicity, Witness::Pair { a, b, found, expected }) => write!(
                f,
                "pair {{{a},{b}}} lies in {found} blocks, expected {expected}"
            ),
            (Invariant::Replication, Witness::Point { point, found, expected }) => {
                write!(f, "point {point} lies in {found} blocks, expected {expected}")
            }
            (Invariant::BlockIntersection, Witness::BlockPair { i, j, found, expected }) => {
                write!(f, "blocks {i} and {j} meet in {found} points, expected {expected}")
            }
            (Invariant::ParameterIdentity, Witness::Counts { found, expected }) => write!(
                f,
                "lambda(v-1) = {found} but t(t-1) = {expected}"
            ),
            (inv, w) => write!(f, "{inv:?}: {w:?}"),
        }
    }
}

/// Brute-force symmetric design check.
///
/// Checks, in order: points in range, `|blocks| = v`, uniform block size,
/// constant pair multiplicity, replication number `t`, constant block
/// intersection `lambda`, and `lambda(v-1) = t(t-1)`.
pub fn verify_symmetric_design(
    v: usize,
    blocks: &[Vec<usize>],
) -> std::result::Result<DesignParams, Violation> {
    for (i, b) in blocks.iter().enumerate() {
        let mut seen = vec![false; v];
        for &p in b {
            if p >= v || seen[p] {
                return Err(Violation {
                    invariant: Invariant::PointRange,
                    witness: Witness::Block(i),
                });
            }
            seen[p] = true;
        }
    }
    if blocks.len() != v || v < 2 {
        return Err(Violation {
            invariant: Invariant::BlockCount,
            witness: Witness::Counts {
                found: blocks.len(),
                expected: v,
            },
        });
    }
    let t = blocks[0].len();
    if let Some(i) = blocks.iter().position(|b| b.len() != t) {
        return Err(Violation {
            invariant: Invariant::BlockSize,
            witness: Witness::Block(i),
        });
    }

    let mut pairs = vec![0usize; v * v];
    for b in blocks {
        for (x, &a) in b.iter().enumerate() {
            for &c in &b[x + 1..] {
                let (lo, hi) = (a.min(c), a.max(c));
                pairs[lo * v + hi] += 1;
            }
        }
    }
    let lambda = pairs[1];
    for a in 0..v {
        for b in a + 1..v {
            let found = pairs[a * v + b];
            if found != lambda {
                return Err(Violation {
                    invariant: Invariant::PairMultiplicity,
                    witness: Witness::Pair {
                        a,
                        b,
                        found,
                        expected: lambda,
                    },
                });
            }
        }
    }

    let mut replication = vec![0usize; v];
    for b in blocks {
        for &p in b {
            replication[p] += 1;
        }
    }
    if let Some((point, &found)) = replication.iter().enumerate().find(|(_, &c)| c != t) {
        return Err(Violation {
            invariant: Invariant::Replication,
            witness: Witness::Point {
                point,
                found,
                expected: t,
            },
        });
    }

    let incidence: Vec<Vec<bool>> = blocks
        .iter()
        .map(|b| {
            let mut row = vec![false; v];
            for &p in b {
                row[p] = true;
            }
            row
        })
        .collect();
    for i in 0..v {
        for j in i + 1..v {
            let found = blocks[j].iter().filter(|&&p| incidence[i][p]).count();
            if found != lambda {
                return Err(Violation {
                    invariant: Invariant::BlockIntersection,
                    witness: Witness::BlockPair {
                        i,
                        j,
                        found,
                        expected: lambda,
                    },
                });
            }
        }
    }

    if lambda * (v - 1) != t * (t.saturating_sub(1)) {
        return Err(Violation {
            invariant: Invariant::ParameterIdentity,
            witness: Witness::Counts {
                found: lambda * (v - 1),
                expected: t * (t.saturating_sub(1)),
            },
        });
    }
    Ok(DesignParams { v, t, lambda })
}

/// Normalized nonzero vectors of GF(b)^3 (first nonzero coordinate 1) in
/// lexicographic order.
fn projective_points(b: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for x in 0..b {
        for y in 0..b {
            for z in 0..b {
                let v = [x, y, z];
                if v.iter().find(|&&c| c != 0) == Some(&1) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// The Desarguesian projective plane PG(2, b) for prime `b`, a
/// `(b^2+b+1, b+1, 1)` symmetric design.
///
/// Points are the 1-dimensional subspaces of GF(b)^3; each block is the set
/// of points orthogonal to a normal vector, i.e. a 2-dimensional subspace.
pub fn projective_plane(b: u64) -> Result<SymmetricDesign> {
    let field = PrimeField::new(b)
        .map_err(|_| Error::Unsupported(format!("projective plane of order {b}: order must be prime")))?;
    let points = projective_points(b);
    let blocks = points
        .iter()
        .map(|normal| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| {
                    let dot = (0..3).fold(0, |acc, i| field.add(acc, field.mul(p[i], normal[i])));
                    dot == 0
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let design = SymmetricDesign::new(points.len(), blocks)?;
    let expected = DesignParams {
        v: (b * b + b + 1) as usize,
        t: (b + 1) as usize,
        lambda: 1,
    };
    if design.params() != expected {
        return Err(Error::Internal(format!(
            "plane of order {b} came out as {}",
            design.params()
        )));
    }
    Ok(design)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A Fano plane in its usual 1-based listing, shifted to 0-based.
    fn fano_blocks() -> Vec<Vec<usize>> {
        [[1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 7], [1, 5, 6], [2, 6, 7], [1, 3, 7]]
            .iter()
            .map(|b| b.iter().map(|p| p - 1).collect())
            .collect()
    }

    #[test]
    fn fano_verifies() {
        let params = verify_symmetric_design(7, &fano_blocks()).unwrap();
        assert_eq!(params, DesignParams { v: 7, t: 3, lambda: 1 });
    }

    #[test]
    fn perturbed_fano_reports_pair() {
        let mut blocks = fano_blocks();
        blocks[0] = vec![0, 1, 2];
        let violation = verify_symmetric_design(7, &blocks).unwrap_err();
        assert_eq!(violation.invariant, Invariant::PairMultiplicity);
        assert!(matches!(violation.witness, Witness::Pair { .. }));
    }

    #[test]
    fn short_block_list_reports_count() {
        let mut blocks = fano_blocks();
        blocks.pop();
        let violation = verify_symmetric_design(7, &blocks).unwrap_err();
        assert_eq!(violation.invariant, Invariant::BlockCount);
        assert!(violation.to_string().contains("block count 6"));
    }

    #[test]
    fn out_of_range_point() {
        let mut blocks = fano_blocks();
        blocks[3][0] = 9;
        let violation = verify_symmetric_design(7, &blocks).unwrap_err();
        assert_eq!(violation.invariant, Invariant::PointRange);
    }

    #[test]
    fn planes_of_small_prime_order() {
        let fano = projective_plane(2).unwrap();
        assert_eq!(fano.params(), DesignParams { v: 7, t: 3, lambda: 1 });
        assert_eq!(fano.blocks().len(), 7);
        let p3 = projective_plane(3).unwrap();
        assert_eq!(p3.params(), DesignParams { v: 13, t: 4, lambda: 1 });
        assert_eq!(verify_symmetric_design(13, p3.blocks()).unwrap(), p3.params());
        assert!(matches!(projective_plane(4), Err(Error::Unsupported(_))));
        assert!(matches!(projective_plane(1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn blocks_sorted_lexicographically() {
        let d = projective_plane(3).unwrap();
        assert!(d.blocks().windows(2).all(|w| w[0] < w[1]));
        assert!(d.blocks().iter().all(|b| b.windows(2).all(|w| w[0] < w[1])));
    }

    #[test]
    fn blocks_containing_pairs() {
        let d = SymmetricDesign::new(7, fano_blocks()).unwrap();
        for a in 0..7 {
            assert_eq!(d.blocks_containing(&[a]).len(), 3);
            for b in a + 1..7 {
                assert_eq!(d.blocks_containing(&[a, b]).len(), 1);
            }
        }
    }
}
