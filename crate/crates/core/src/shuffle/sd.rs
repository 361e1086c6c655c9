//! Shuffle over a symmetric design.
//!
//! Diagonal IVs `v_{x,x}` are cut into `t` segments, one per block holding
//! `x`; every node sends `t - lambda` Vandermonde power rows over the
//! segments it owns. Off-diagonal IVs `v_{x,y}` are cut into `lambda`
//! segments, one per block holding both `x` and `y`; for each stored file
//! `a`, a node sends `t - lambda - 1` power rows over `v^{B}_{a,f}`, `f != a`.

use std::collections::HashMap;

use super::{Message, Meta, Tag, Transcript};
use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::gf::{BinaryField, VandermondeSystem};
use crate::scheme::{check_t, IvTable, LocalIvs, Recovered, Scheme, SchemeKind};

/// Vandermonde code over `width`-bit segments with evaluation points `0..count`.
struct SegmentCode {
    width: usize,
    system: VandermondeSystem,
}

impl SegmentCode {
    fn new(width: usize, count: usize) -> Result<Self> {
        let field = BinaryField::new(width as u32)?;
        Ok(Self {
            width,
            system: VandermondeSystem::first_points(field, count)?,
        })
    }

    fn encode(&self, values: &[u64], rows: usize) -> Result<Vec<u64>> {
        self.system.encode_powers(values, rows)
    }

    /// Solves for the entries at `unknown` given the power rows and the
    /// remaining entries of `values` (entries at `unknown` are ignored).
    fn solve(&self, rows: &[u64], values: &[u64], unknown: &[usize]) -> Result<Vec<u64>> {
        if unknown.len() != rows.len() {
            return Err(Error::Singular(format!(
                "{} unknowns against {} equations",
                unknown.len(),
                rows.len()
            )));
        }
        let mut known = values.to_vec();
        for &i in unknown {
            known[i] = 0;
        }
        let known_part = self.encode(&known, rows.len())?;
        let rhs: Vec<u64> = rows.iter().zip(&known_part).map(|(a, b)| a ^ b).collect();
        let alphas = unknown.iter().map(|&i| self.system.alphas()[i]).collect();
        VandermondeSystem::new(*self.system.field(), alphas)?.solve_transposed(&rhs)
    }
}

struct Layout {
    t: usize,
    lambda: usize,
    /// Nodes holding point `x`, ascending.
    holders: Vec<Vec<usize>>,
    /// Nodes holding both points of an unordered pair, ascending.
    pair_holders: HashMap<(usize, usize), Vec<usize>>,
}

impl Layout {
    fn new(scheme: &Scheme) -> Result<Self> {
        let SchemeKind::Sd { v, t, lambda } = *scheme.kind() else {
            return Err(Error::WrongVariant("symmetric-design shuffle needs an SD scheme".into()));
        };
        let holders = (0..v).map(|x| scheme.nodes_storing(&[x])).collect();
        let mut pair_holders: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for k in 0..scheme.nodes() {
            let b = scheme.placement(k);
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    pair_holders.entry((x, y)).or_default().push(k);
                }
            }
        }
        Ok(Self {
            t,
            lambda,
            holders,
            pair_holders,
        })
    }

    fn pair(&self, x: usize, y: usize) -> &[usize] {
        &self.pair_holders[&(x.min(y), x.max(y))]
    }

    /// Segment index of `v_{x,x}` owned by `node`.
    fn diagonal_slot(&self, x: usize, node: usize) -> usize {
        self.holders[x].iter().position(|&k| k == node).expect("node holds x")
    }

    /// Segment index of `v_{x,y}` owned by `node`.
    fn offdiagonal_slot(&self, x: usize, y: usize, node: usize) -> usize {
        self.pair(x, y).iter().position(|&k| k == node).expect("node holds x and y")
    }
}

fn segment_value(iv: &Bits, count: usize, slot: usize) -> u64 {
    bits::to_u64(&bits::segment(iv, count, slot))
}

pub fn shuffle_sd(scheme: &Scheme, ivs: &IvTable) -> Result<Transcript> {
    let layout = Layout::new(scheme)?;
    let total = ivs.bits();
    check_t(scheme, total)?;
    let (t, lambda) = (layout.t, layout.lambda);
    let diagonal = SegmentCode::new(total / t, t)?;
    let offdiagonal = SegmentCode::new(total / lambda, t - 1)?;

    let mut messages = Vec::new();
    for node in 0..scheme.nodes() {
        let local = ivs.local_view(scheme, node);
        let block = scheme.placement(node);

        let values = block
            .iter()
            .map(|&z| Ok(segment_value(local.get(z, z)?, t, layout.diagonal_slot(z, node))))
            .collect::<Result<Vec<_>>>()?;
        for (power, row) in diagonal.encode(&values, t - lambda)?.into_iter().enumerate() {
            messages.push(Message {
                sender: node,
                tag: Tag::SdDiagonal,
                meta: Meta::SdDiagonal {
                    power,
                    points: block.to_vec(),
                },
                payload: bits::from_u64(row, diagonal.width),
            });
        }

        for &a in block {
            let files: Vec<usize> = block.iter().copied().filter(|&f| f != a).collect();
            let values = files
                .iter()
                .map(|&f| {
                    Ok(segment_value(
                        local.get(a, f)?,
                        lambda,
                        layout.offdiagonal_slot(a, f, node),
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            let rows = offdiagonal.encode(&values, t - lambda - 1)?;
            for (power, row) in rows.into_iter().enumerate() {
                messages.push(Message {
                    sender: node,
                    tag: Tag::SdOffdiagonal,
                    meta: Meta::SdOffdiagonal {
                        function: a,
                        power,
                        files: files.clone(),
                    },
                    payload: bits::from_u64(row, offdiagonal.width),
                });
            }
        }
    }
    Ok(Transcript::new(messages))
}

/// Recovers every IV the node needs from the transcript and its local IVs.
pub fn decode_sd(scheme: &Scheme, transcript: &Transcript, local: &LocalIvs<'_>) -> Result<Recovered> {
    let layout = Layout::new(scheme)?;
    let total = local.bits();
    check_t(scheme, total)?;
    let (t, lambda) = (layout.t, layout.lambda);
    let diagonal = SegmentCode::new(total / t, t)?;
    let offdiagonal = SegmentCode::new(total / lambda, t - 1)?;
    let index = transcript.index();
    let me = local.node();

    let mut diag_segments: HashMap<(usize, usize), Bits> = HashMap::new();
    let mut off_segments: HashMap<(usize, usize, usize), Bits> = HashMap::new();

    for sender in (0..scheme.nodes()).filter(|&k| k != me) {
        let block = scheme.placement(sender);

        let rows = (0..t - lambda)
            .map(|power| {
                let meta = Meta::SdDiagonal {
                    power,
                    points: block.to_vec(),
                };
                index.get(sender, &meta).map(|p| bits::to_u64(p))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut values = vec![0u64; t];
        let mut unknown = Vec::new();
        for (i, &z) in block.iter().enumerate() {
            if scheme.stores(me, z) {
                values[i] = segment_value(local.get(z, z)?, t, layout.diagonal_slot(z, sender));
            } else {
                unknown.push(i);
            }
        }
        let solved = diagonal.solve(&rows, &values, &unknown)?;
        for (&i, &value) in unknown.iter().zip(&solved) {
            diag_segments.insert((block[i], sender), bits::from_u64(value, diagonal.width));
        }

        for &a in block.iter().filter(|&&a| !scheme.stores(me, a)) {
            let files: Vec<usize> = block.iter().copied().filter(|&f| f != a).collect();
            let rows = (0..t - lambda - 1)
                .map(|power| {
                    let meta = Meta::SdOffdiagonal {
                        function: a,
                        power,
                        files: files.clone(),
                    };
                    index.get(sender, &meta).map(|p| bits::to_u64(p))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut values = vec![0u64; files.len()];
            let mut unknown = Vec::new();
            for (i, &f) in files.iter().enumerate() {
                if scheme.stores(me, f) {
                    values[i] =
                        segment_value(local.get(a, f)?, lambda, layout.offdiagonal_slot(a, f, sender));
                } else {
                    unknown.push(i);
                }
            }
            let solved = offdiagonal.solve(&rows, &values, &unknown)?;
            for (&i, &value) in unknown.iter().zip(&solved) {
                off_segments.insert((a, files[i], sender), bits::from_u64(value, offdiagonal.width));
            }
        }
    }

    let mut recovered = Recovered::new();
    for &q in scheme.assignment(me) {
        for n in (0..scheme.files()).filter(|&n| !scheme.stores(me, n)) {
            let parts: Vec<&Bits> = if q == n {
                layout.holders[q]
                    .iter()
                    .map(|&u| diag_segments.get(&(q, u)))
                    .collect::<Option<_>>()
            } else {
                layout
                    .pair(q, n)
                    .iter()
                    .map(|&u| off_segments.get(&(q, n, u)))
                    .collect::<Option<_>>()
            }
            .ok_or(Error::Incomplete { node: me, q, n })?;
            recovered.insert((q, n), bits::concat(parts));
        }
    }
    Ok(recovered)
}
