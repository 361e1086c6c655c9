//! Full map/shuffle/reduce run on the Fano plane, printed node by node.
//!
//! ```bash
//! cargo run --example fano_end_to_end
//! ```

use cascade_cdc::designs::projective_plane;
use cascade_cdc::scheme::{build_scheme_sd, choose_t, generate_ivs, node_view, reduce_outputs};
use cascade_cdc::shuffle::{decode, measure_load, shuffle};

fn main() -> cascade_cdc::Result<()> {
    let design = projective_plane(2)?;
    let scheme = build_scheme_sd(&design)?;
    let bits = choose_t(&scheme, 1);
    let ivs = generate_ivs(&scheme, 0, bits)?;
    println!("design {} with T = {bits} bits per IV", design.params());

    for node in 0..scheme.nodes() {
        let view = node_view(&scheme, node)?;
        println!(
            "node {node}: stores {:?}, reduces {:?}, needs {} IVs",
            scheme.placement(node),
            scheme.assignment(node),
            view.needed.len()
        );
    }

    let transcript = shuffle(&scheme, &ivs)?;
    for line in transcript.to_jsonl().lines().take(5) {
        println!("  {line}");
    }
    println!("  ... {} messages, {} bits", transcript.messages().len(), transcript.total_bits());

    let recovered = (0..scheme.nodes())
        .map(|node| decode(&scheme, &transcript, &ivs.local_view(&scheme, node)))
        .collect::<cascade_cdc::Result<Vec<_>>>()?;
    let outputs = reduce_outputs(&scheme, &ivs, &recovered)?;
    let all_match = outputs
        .iter()
        .all(|out| out.iter().all(|(&q, value)| *value == ivs.reduce_oracle(q)));
    println!("reduce outputs match the centralized XOR: {all_match}");
    println!("communication load {}", measure_load(&transcript, &scheme, bits));
    Ok(())
}
