//! Shuffle over the development of an almost difference set.
//!
//! Node `r` holds the translate `D + r`. A pair of files `{x, y}` stored
//! together by `c >= 1` nodes is served by pair sums: the `j`-th common node
//! sends segment `j` of `v_{x,y} + v_{y,x}`. With `lambda = 0` some pairs are
//! never stored together; `v_{u,w}` for such a pair is cut into `k` pieces and
//! piece `i` is sent by node `w - d_i`, `d_i` the `i`-th smallest element of `D`.

use super::{Message, Meta, Tag, Transcript};
use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::scheme::{check_t, IvTable, LocalIvs, Recovered, Scheme, SchemeKind};

fn ads_params(scheme: &Scheme) -> Result<(usize, usize, usize, &[usize])> {
    match scheme.kind() {
        SchemeKind::Ads {
            n, k, lambda, set, ..
        } => Ok((*n, *k, *lambda, set)),
        SchemeKind::Sd { .. } => Err(Error::WrongVariant(
            "almost-difference-set shuffle needs an ADS scheme".into(),
        )),
    }
}

fn pair_sum_messages(scheme: &Scheme, ivs: &IvTable, messages: &mut Vec<Message>) -> Result<()> {
    let n = scheme.files();
    for x in 0..n {
        for y in x + 1..n {
            let common = scheme.nodes_storing(&[x, y]);
            let segments = common.len();
            for (segment, &node) in common.iter().enumerate() {
                let local = ivs.local_view(scheme, node);
                let sum = bits::xor(local.get(x, y)?, local.get(y, x)?);
                messages.push(Message {
                    sender: node,
                    tag: Tag::AdsPairsum,
                    meta: Meta::PairSum {
                        x,
                        y,
                        segment,
                        segments,
                    },
                    payload: bits::segment(&sum, segments, segment),
                });
            }
        }
    }
    Ok(())
}

/// Shuffle for developments with `1 <= lambda < k - 1`: pair sums only.
pub fn shuffle_ads_pos(scheme: &Scheme, ivs: &IvTable) -> Result<Transcript> {
    let (_, k, lambda, _) = ads_params(scheme)?;
    if lambda == 0 {
        return Err(Error::WrongVariant("lambda = 0 needs the segment shuffle".into()));
    }
    if lambda + 1 >= k {
        return Err(Error::Unsupported(format!("need lambda < k - 1, got lambda = {lambda}, k = {k}")));
    }
    check_t(scheme, ivs.bits())?;
    let mut messages = Vec::new();
    pair_sum_messages(scheme, ivs, &mut messages)?;
    Ok(Transcript::new(messages))
}

/// Shuffle for `lambda = 0`: pair sums for covered pairs, plain segments for
/// the rest.
pub fn shuffle_ads_golomb(scheme: &Scheme, ivs: &IvTable) -> Result<Transcript> {
    let (n, k, lambda, set) = ads_params(scheme)?;
    if lambda != 0 {
        return Err(Error::WrongVariant(format!("segment shuffle needs lambda = 0, got {lambda}")));
    }
    check_t(scheme, ivs.bits())?;
    let mut messages = Vec::new();
    pair_sum_messages(scheme, ivs, &mut messages)?;
    for u in 0..n {
        for w in (0..n).filter(|&w| w != u) {
            if !scheme.nodes_storing(&[u, w]).is_empty() {
                continue;
            }
            for (segment, &d) in set.iter().enumerate() {
                let node = (w + n - d) % n;
                let local = ivs.local_view(scheme, node);
                messages.push(Message {
                    sender: node,
                    tag: Tag::AdsSegment,
                    meta: Meta::Segment {
                        function: u,
                        file: w,
                        segment,
                        segments: k,
                    },
                    payload: bits::segment(local.get(u, w)?, k, segment),
                });
            }
        }
    }
    Ok(Transcript::new(messages))
}

/// Recovers every IV the node needs from the transcript and its local IVs.
pub fn decode_ads(scheme: &Scheme, transcript: &Transcript, local: &LocalIvs<'_>) -> Result<Recovered> {
    let (n, k, _, set) = ads_params(scheme)?;
    check_t(scheme, local.bits())?;
    let index = transcript.index();
    let me = local.node();
    let mut recovered = Recovered::new();
    for &q in scheme.assignment(me) {
        for file in (0..n).filter(|&f| !scheme.stores(me, f)) {
            let common = scheme.nodes_storing(&[q, file]);
            let parts: Vec<Bits> = if common.is_empty() {
                set.iter()
                    .enumerate()
                    .map(|(segment, &d)| {
                        let meta = Meta::Segment {
                            function: q,
                            file,
                            segment,
                            segments: k,
                        };
                        index.get((file + n - d) % n, &meta).cloned()
                    })
                    .collect::<Result<_>>()?
            } else {
                let segments = common.len();
                let known = local.get(file, q)?;
                common
                    .iter()
                    .enumerate()
                    .map(|(segment, &sender)| {
                        let meta = Meta::PairSum {
                            x: q.min(file),
                            y: q.max(file),
                            segment,
                            segments,
                        };
                        let sum = index.get(sender, &meta)?;
                        Ok(bits::xor(sum, &bits::segment(known, segments, segment)))
                    })
                    .collect::<Result<_>>()?
            };
            recovered.insert((q, file), bits::concat(&parts));
        }
    }
    Ok(recovered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{classify_ads, develop, AlmostDifferenceSet};
    use crate::scheme::{build_scheme_ads, build_scheme_sd, choose_t, generate_ivs, node_view};
    use crate::shuffle::measure_load;
    use num_rational::BigRational;

    fn ads(set: &[usize], n: usize) -> AlmostDifferenceSet {
        classify_ads(set, n).unwrap().into_ads().unwrap()
    }

    fn scheme(set: &[usize], n: usize) -> Scheme {
        build_scheme_ads(&develop(&ads(set, n)).unwrap()).unwrap()
    }

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn assert_decodes(s: &Scheme, ivs: &IvTable, transcript: &Transcript) {
        for node in 0..s.nodes() {
            let rec = decode_ads(s, transcript, &ivs.local_view(s, node)).unwrap();
            let needed = node_view(s, node).unwrap().needed;
            assert_eq!(rec.keys().copied().collect::<Vec<_>>(), needed);
            for (&(q, f), value) in &rec {
                assert_eq!(value, ivs.get(q, f), "node {node} iv ({q},{f})");
            }
        }
    }

    #[test]
    fn six_three_one_four() {
        let s = scheme(&[0, 1, 3], 6);
        let total = choose_t(&s, 1);
        assert_eq!(total, 2);
        let ivs = generate_ivs(&s, 3, total).unwrap();
        let transcript = shuffle_ads_pos(&s, &ivs).unwrap();
        assert_eq!(measure_load(&transcript, &s, total), ratio(5, 12));
        assert!(transcript.messages().iter().all(|m| m.tag == Tag::AdsPairsum));
        // Node 0 holds {0,1,3}; it serves each of its three pairs.
        let pairs: Vec<(usize, usize)> = transcript
            .sent_by(0)
            .map(|m| match m.meta {
                Meta::PairSum { x, y, .. } => (x, y),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(pairs, vec![(0, 1), (0, 3), (1, 3)]);
        assert_decodes(&s, &ivs, &transcript);
    }

    #[test]
    fn six_two_zero_three() {
        let s = scheme(&[0, 1], 6);
        let total = choose_t(&s, 1);
        let ivs = generate_ivs(&s, 9, total).unwrap();
        let transcript = shuffle_ads_golomb(&s, &ivs).unwrap();
        assert_eq!(measure_load(&transcript, &s, total), ratio(2, 3));
        let segments: Vec<(usize, usize, usize)> = transcript
            .sent_by(0)
            .filter_map(|m| match m.meta {
                Meta::Segment {
                    function,
                    file,
                    segment,
                    ..
                } => Some((file, function, segment)),
                _ => None,
            })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(
            segments,
            vec![(0, 2, 0), (0, 3, 0), (0, 4, 0), (1, 3, 1), (1, 4, 1), (1, 5, 1)]
        );
        assert_decodes(&s, &ivs, &transcript);
    }

    #[test]
    fn scaled_lengths_decode() {
        for (set, n) in [(&[0usize, 1, 3][..], 6), (&[0, 1][..], 6)] {
            let s = scheme(set, n);
            let ivs = generate_ivs(&s, 1, choose_t(&s, 7)).unwrap();
            let transcript = super::super::shuffle(&s, &ivs).unwrap();
            assert_decodes(&s, &ivs, &transcript);
        }
    }

    #[test]
    fn variant_mismatch() {
        let pos = scheme(&[0, 1, 3], 6);
        let golomb = scheme(&[0, 1], 6);
        let ivs_pos = generate_ivs(&pos, 0, 2).unwrap();
        let ivs_golomb = generate_ivs(&golomb, 0, 2).unwrap();
        assert!(matches!(shuffle_ads_golomb(&pos, &ivs_pos), Err(Error::WrongVariant(_))));
        assert!(matches!(shuffle_ads_pos(&golomb, &ivs_golomb), Err(Error::WrongVariant(_))));
        let sd = build_scheme_sd(&crate::designs::projective_plane(2).unwrap()).unwrap();
        let ivs_sd = generate_ivs(&sd, 0, 6).unwrap();
        assert!(matches!(shuffle_ads_pos(&sd, &ivs_sd), Err(Error::WrongVariant(_))));
    }
}
