//! CDC instances: placement, reduce assignment and intermediate values.
//!
//! Nodes, files and functions share the index space of the underlying design
//! (`0..v` or `0..n`). A node is identified with its block; it stores the
//! files named by the block. In SD schemes it reduces the functions outside
//! its block, in ADS schemes the functions inside it.

use std::collections::BTreeMap;

use num_integer::Integer;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::Bits;
use crate::designs::{Development, SymmetricDesign};
use crate::error::{Error, Result};
use crate::gf::MAX_DEGREE;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SchemeKind {
    Sd {
        v: usize,
        t: usize,
        lambda: usize,
    },
    Ads {
        n: usize,
        k: usize,
        lambda: usize,
        mu: usize,
        #[serde(rename = "D")]
        set: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    kind: SchemeKind,
    placement: Vec<Vec<usize>>,
    assignment: Vec<Vec<usize>>,
}

/// JSON dump of a scheme for golden comparisons.
#[derive(Serialize)]
struct SchemeDump<'a> {
    kind: &'static str,
    params: &'a SchemeKind,
    placement: &'a [Vec<usize>],
    assignment: &'a [Vec<usize>],
}

/// Symmetric-design scheme: one node per block, reducing the complement.
pub fn build_scheme_sd(design: &SymmetricDesign) -> Result<Scheme> {
    let (v, t, lambda) = (design.v(), design.t(), design.lambda());
    if t <= lambda + 1 {
        return Err(Error::Unsupported(format!(
            "({v},{t},{lambda}) design: need t > lambda + 1"
        )));
    }
    let placement = design.blocks().to_vec();
    let assignment = placement
        .iter()
        .map(|b| (0..v).filter(|p| b.binary_search(p).is_err()).collect())
        .collect();
    Ok(Scheme {
        kind: SchemeKind::Sd { v, t, lambda },
        placement,
        assignment,
    })
}

/// Almost-difference-set scheme: one node per translate, reducing the block itself.
pub fn build_scheme_ads(dev: &Development) -> Result<Scheme> {
    let a = dev.source();
    let placement = dev.blocks().to_vec();
    Ok(Scheme {
        kind: SchemeKind::Ads {
            n: a.n(),
            k: a.k(),
            lambda: a.lambda(),
            mu: a.mu(),
            set: a.set().to_vec(),
        },
        assignment: placement.clone(),
        placement,
    })
}

impl Scheme {
    pub fn kind(&self) -> &SchemeKind {
        &self.kind
    }

    /// Number of nodes, which is also the number of files and of functions.
    pub fn nodes(&self) -> usize {
        self.placement.len()
    }

    pub fn files(&self) -> usize {
        self.nodes()
    }

    pub fn functions(&self) -> usize {
        self.nodes()
    }

    pub fn placement(&self, node: usize) -> &[usize] {
        &self.placement[node]
    }

    pub fn assignment(&self, node: usize) -> &[usize] {
        &self.assignment[node]
    }

    pub fn stores(&self, node: usize, file: usize) -> bool {
        self.placement[node].binary_search(&file).is_ok()
    }

    pub fn reduces(&self, node: usize, function: usize) -> bool {
        self.assignment[node].binary_search(&function).is_ok()
    }

    /// Nodes storing every file in `files`, ascending by node index.
    pub fn nodes_storing(&self, files: &[usize]) -> Vec<usize> {
        (0..self.nodes())
            .filter(|&k| files.iter().all(|&f| self.stores(k, f)))
            .collect()
    }

    /// Computation load `r`: average number of nodes storing a file.
    pub fn computation_load(&self) -> usize {
        let total: usize = self.placement.iter().map(Vec::len).sum();
        total / self.files()
    }

    /// Number of nodes reducing each function (`s`).
    pub fn reducers_per_function(&self) -> usize {
        match &self.kind {
            SchemeKind::Sd { v, t, .. } => v - t,
            SchemeKind::Ads { k, .. } => *k,
        }
    }

    pub fn to_json(&self) -> String {
        let dump = SchemeDump {
            kind: match self.kind {
                SchemeKind::Sd { .. } => "sd",
                SchemeKind::Ads { .. } => "ads",
            },
            params: &self.kind,
            placement: &self.placement,
            assignment: &self.assignment,
        };
        let mut s = serde_json::to_string(&dump).expect("scheme serializes");
        s.push('\n');
        s
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.nodes() {
            return Err(Error::Domain(format!(
                "node {node} out of range 0..{}",
                self.nodes()
            )));
        }
        Ok(())
    }
}

/// Smallest IV length `T` (times `scale`) the shuffle of `scheme` can use.
///
/// SD: a multiple of `lcm(t, lambda)` with `2^(T/t) >= t` and
/// `2^(T/lambda) >= t - 1`. ADS with `lambda >= 1`: a multiple of
/// `lcm(lambda, lambda + 1)`. ADS with `lambda = 0`: a multiple of `k`.
pub fn choose_t(scheme: &Scheme, scale: usize) -> usize {
    let base = match scheme.kind {
        SchemeKind::Sd { t, lambda, .. } => {
            let step = t.lcm(&lambda);
            (1..)
                .map(|i| i * step)
                .find(|&bits| fits(bits / t, t) && fits(bits / lambda, t - 1))
                .expect("some multiple satisfies the field-size bounds")
        }
        SchemeKind::Ads { lambda: 0, k, .. } => k,
        SchemeKind::Ads { lambda, .. } => lambda.lcm(&(lambda + 1)),
    };
    base * scale.max(1)
}

/// `2^degree >= count`.
fn fits(degree: usize, count: usize) -> bool {
    degree >= usize::BITS as usize || (1usize << degree) >= count
}

/// Checks the divisibility and field-size rules `choose_t` guarantees.
pub fn check_t(scheme: &Scheme, bits: usize) -> Result<()> {
    let bad = |why: String| Err(Error::Contract(format!("T = {bits}: {why}")));
    if bits == 0 {
        return bad("must be positive".into());
    }
    match scheme.kind {
        SchemeKind::Sd { t, lambda, .. } => {
            if !bits.is_multiple_of(t) || !bits.is_multiple_of(lambda) {
                return bad(format!("must be divisible by t = {t} and lambda = {lambda}"));
            }
            if !fits(bits / t, t) || !fits(bits / lambda, t - 1) {
                return bad("segment fields too small for distinct evaluation points".into());
            }
            let max = MAX_DEGREE as usize;
            if bits / t > max || bits / lambda > max {
                return Err(Error::Unsupported(format!(
                    "T = {bits}: coded segments exceed GF(2^{max})"
                )));
            }
        }
        SchemeKind::Ads { lambda: 0, k, .. } => {
            if !bits.is_multiple_of(k) {
                return bad(format!("must be divisible by k = {k}"));
            }
        }
        SchemeKind::Ads { lambda, .. } => {
            if !bits.is_multiple_of(lambda) || !bits.is_multiple_of(lambda + 1) {
                return bad(format!("must be divisible by {lambda} and {}", lambda + 1));
            }
        }
    }
    Ok(())
}

/// Every intermediate value `v_{q,n}` as a `T`-bit string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IvTable {
    bits: usize,
    files: usize,
    values: Vec<Bits>,
}

/// Keyed pseudorandom `T`-bit value for `(seed, q, n)`.
fn prf(seed: u64, q: usize, n: usize, bits: usize) -> Bits {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((q as u64) << 32) | n as u64);
    let mut bytes = vec![0u8; bits.div_ceil(8)];
    rng.fill_bytes(&mut bytes);
    let mut out = Bits::from_vec(bytes);
    out.truncate(bits);
    out
}

/// Map phase stand-in: `v_{q,n}` is a seeded PRF output.
pub fn generate_ivs(scheme: &Scheme, seed: u64, bits: usize) -> Result<IvTable> {
    check_t(scheme, bits)?;
    let (q_count, n_count) = (scheme.functions(), scheme.files());
    let values = (0..q_count)
        .flat_map(|q| (0..n_count).map(move |n| (q, n)))
        .map(|(q, n)| prf(seed, q, n, bits))
        .collect();
    Ok(IvTable {
        bits,
        files: n_count,
        values,
    })
}

impl IvTable {
    /// IV length `T`.
    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, q: usize, n: usize) -> &Bits {
        &self.values[q * self.files + n]
    }

    /// What node `node` can compute from its stored files.
    pub fn local_view(&self, scheme: &Scheme, node: usize) -> LocalIvs<'_> {
        LocalIvs {
            table: self,
            node,
            files: scheme.placement(node).to_vec(),
        }
    }

    /// Centralized reduce output `u_q = XOR_n v_{q,n}`.
    pub fn reduce_oracle(&self, q: usize) -> Bits {
        let mut acc = Bits::repeat(false, self.bits);
        for n in 0..self.files {
            acc ^= self.get(q, n).as_bitslice();
        }
        acc
    }
}

/// The IVs a single node can compute; access to any other IV is an error.
#[derive(Clone, Debug)]
pub struct LocalIvs<'a> {
    table: &'a IvTable,
    node: usize,
    files: Vec<usize>,
}

impl LocalIvs<'_> {
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn bits(&self) -> usize {
        self.table.bits
    }

    pub fn get(&self, q: usize, n: usize) -> Result<&Bits> {
        if self.files.binary_search(&n).is_err() {
            return Err(Error::Internal(format!(
                "node {} asked for non-local IV ({q}, {n})",
                self.node
            )));
        }
        Ok(self.table.get(q, n))
    }
}

/// Local and missing intermediate values of one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeView {
    pub node: usize,
    pub local: Vec<(usize, usize)>,
    pub needed: Vec<(usize, usize)>,
}

pub fn node_view(scheme: &Scheme, node: usize) -> Result<NodeView> {
    scheme.check_node(node)?;
    let local = (0..scheme.functions())
        .flat_map(|q| scheme.placement(node).iter().map(move |&n| (q, n)))
        .collect();
    let needed = scheme
        .assignment(node)
        .iter()
        .flat_map(|&q| {
            (0..scheme.files())
                .filter(move |&n| !scheme.stores(node, n))
                .map(move |n| (q, n))
        })
        .collect();
    Ok(NodeView {
        node,
        local,
        needed,
    })
}

/// IVs a node obtained during the shuffle, keyed by `(q, n)`.
pub type Recovered = BTreeMap<(usize, usize), Bits>;

/// Reduce phase: every node XORs all `N` IVs of each assigned function.
pub fn reduce_outputs(
    scheme: &Scheme,
    ivs: &IvTable,
    recovered: &[Recovered],
) -> Result<Vec<BTreeMap<usize, Bits>>> {
    if recovered.len() != scheme.nodes() {
        return Err(Error::Contract(format!(
            "{} recovered maps for {} nodes",
            recovered.len(),
            scheme.nodes()
        )));
    }
    (0..scheme.nodes())
        .map(|node| {
            let local = ivs.local_view(scheme, node);
            scheme
                .assignment(node)
                .iter()
                .map(|&q| {
                    let mut acc = Bits::repeat(false, ivs.bits());
                    for n in 0..scheme.files() {
                        let value = if scheme.stores(node, n) {
                            local.get(q, n)?
                        } else {
                            recovered[node]
                                .get(&(q, n))
                                .ok_or(Error::Incomplete { node, q, n })?
                        };
                        acc ^= value.as_bitslice();
                    }
                    Ok((q, acc))
                })
                .collect()
        })
        .collect()
}
