//! Exact loads of the design-based schemes against the optimal cascaded load
//! and the earlier symmetric-design baseline.
//!
//! ```bash
//! cargo run --example load_comparison
//! ```

use cascade_cdc::analysis::{compare_ours_vs_jiang, sweep, to_decimal, SdFamily, SweepFamily};

fn main() -> cascade_cdc::Result<()> {
    print!("{}", sweep(SweepFamily::Plane, 2, 13, true, 2)?);
    println!();
    print!("{}", sweep(SweepFamily::Ruzsa, 5, 31, true, 2)?);
    println!();

    for family in SdFamily::ALL {
        for b in 2..=5 {
            let Some((v, t, lambda)) = family.params(b) else { continue };
            let cmp = compare_ours_vs_jiang(v, t)?;
            println!(
                "{family:?} b={b} ({v},{t},{lambda}): ours {} < baseline {} by {}",
                cmp.ours,
                cmp.jiang,
                to_decimal(&cmp.gap, 4)
            );
        }
    }
    Ok(())
}
