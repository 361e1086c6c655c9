//! Shuffle phase: coded multicast encoders, per-node decoders and the
//! transcript that carries the measured communication load.

mod ads;
mod sd;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::scheme::{LocalIvs, Recovered, Scheme, SchemeKind};

pub use ads::{decode_ads, shuffle_ads_golomb, shuffle_ads_pos};
pub use sd::{decode_sd, shuffle_sd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    SdDiagonal,
    SdOffdiagonal,
    AdsPairsum,
    AdsSegment,
}

/// Which IV segments a payload encodes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum Meta {
    /// Power row `power` of the Vandermonde code over the sender's diagonal
    /// segments `v^{B}_{z,z}`, `z` in `points` (the sender's block).
    SdDiagonal { power: usize, points: Vec<usize> },
    /// Power row `power` over `v^{B}_{function,f}` for `f` in `files`.
    SdOffdiagonal {
        function: usize,
        power: usize,
        files: Vec<usize>,
    },
    /// `v^{(segment)}_{x,y} + v^{(segment)}_{y,x}` with both IVs cut into
    /// `segments` pieces; `x < y`.
    PairSum {
        x: usize,
        y: usize,
        segment: usize,
        segments: usize,
    },
    /// Plain segment `segment` of `v_{function,file}`.
    Segment {
        function: usize,
        file: usize,
        segment: usize,
        segments: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    pub sender: usize,
    pub tag: Tag,
    pub meta: Meta,
    pub payload: Bits,
}

#[derive(Serialize)]
struct MessageLine<'a> {
    sender: usize,
    tag: Tag,
    meta: &'a Meta,
    bits: usize,
    payload: String,
}

/// Multicast messages in canonical `(sender, tag, meta)` order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    messages: Vec<Message>,
    total_bits: usize,
}

impl Transcript {
    pub fn new(mut messages: Vec<Message>) -> Self {
        messages.sort_by(|a, b| (a.sender, a.tag, &a.meta).cmp(&(b.sender, b.tag, &b.meta)));
        let total_bits = messages.iter().map(|m| m.payload.len()).sum();
        Self {
            messages,
            total_bits,
        }
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    /// Sum of payload lengths; each multicast counts once.
    pub fn total_bits(&self) -> usize {
        self.total_bits
    }

    pub fn sent_by(&self, node: usize) -> impl Iterator<Item = &Message> {
        self.messages.iter().filter(move |m| m.sender == node)
    }

    /// One JSON object per line: `{sender, tag, meta, bits, payload}` with the
    /// payload in hex.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for m in &self.messages {
            let line = MessageLine {
                sender: m.sender,
                tag: m.tag,
                meta: &m.meta,
                bits: m.payload.len(),
                payload: bits::to_hex(&m.payload),
            };
            out.push_str(&serde_json::to_string(&line).expect("message serializes"));
            out.push('\n');
        }
        out
    }

    /// Lookup table used by the decoders.
    pub(crate) fn index(&self) -> MessageIndex<'_> {
        MessageIndex {
            by_key: self
                .messages
                .iter()
                .map(|m| ((m.sender, &m.meta), &m.payload))
                .collect(),
        }
    }
}

pub(crate) struct MessageIndex<'a> {
    by_key: HashMap<(usize, &'a Meta), &'a Bits>,
}

impl MessageIndex<'_> {
    pub(crate) fn get(&self, sender: usize, meta: &Meta) -> Result<&Bits> {
        self.by_key
            .get(&(sender, meta))
            .copied()
            .ok_or_else(|| Error::MissingMessage(format!("node {sender}: {meta:?}")))
    }
}

/// Communication load `total_bits / (Q N T)`, exact.
pub fn measure_load(transcript: &Transcript, scheme: &Scheme, bits: usize) -> BigRational {
    let denom = scheme.functions() * scheme.files() * bits;
    BigRational::new(BigInt::from(transcript.total_bits()), BigInt::from(denom))
}

/// Runs whichever encoder matches the scheme.
pub fn shuffle(scheme: &Scheme, ivs: &crate::scheme::IvTable) -> Result<Transcript> {
    match scheme.kind() {
        SchemeKind::Sd { .. } => shuffle_sd(scheme, ivs),
        SchemeKind::Ads { lambda: 0, .. } => shuffle_ads_golomb(scheme, ivs),
        SchemeKind::Ads { .. } => shuffle_ads_pos(scheme, ivs),
    }
}

/// Runs whichever decoder matches the scheme.
pub fn decode(scheme: &Scheme, transcript: &Transcript, local: &LocalIvs<'_>) -> Result<Recovered> {
    match scheme.kind() {
        SchemeKind::Sd { .. } => decode_sd(scheme, transcript, local),
        SchemeKind::Ads { .. } => decode_ads(scheme, transcript, local),
    }
}
