//! Schemes from almost difference sets: a lambda >= 1 set, a modular Golomb
//! ruler, and Ruzsa rulers with their complements.
//!
//! ```bash
//! cargo run --example ads_schemes
//! ```

use cascade_cdc::analysis::ads_load;
use cascade_cdc::designs::{classify_ads, complement_ads, develop, ruzsa_ads, AlmostDifferenceSet};
use cascade_cdc::scheme::build_scheme_ads;
use cascade_cdc::simulate;

fn run(a: &AlmostDifferenceSet) -> cascade_cdc::Result<()> {
    let dev = develop(a)?;
    let scheme = build_scheme_ads(&dev)?;
    let sim = simulate(&scheme, 0, 1)?;
    let (n, k, lambda, _) = a.params();
    println!(
        "{a:<16} pairs by multiplicity {:?}  T={:<3} L={:<8} formula {:<8} decode_ok={}",
        dev.pair_census(),
        sim.report.bits,
        sim.report.l_measured,
        ads_load(n as u64, k as u64, lambda as u64)?,
        sim.report.decode_ok
    );
    Ok(())
}

fn main() -> cascade_cdc::Result<()> {
    for (set, n) in [(&[0, 1, 3][..], 6), (&[0, 1][..], 6), (&[0, 1, 2, 5][..], 8)] {
        let a = classify_ads(set, n)?
            .into_ads()
            .expect("listed sets are almost difference sets");
        run(&a)?;
    }
    for p in [3, 5, 7] {
        let ruler = ruzsa_ads(p)?;
        run(&ruler)?;
        run(&complement_ads(&ruler)?)?;
    }
    Ok(())
}
