//! The binomial inequalities behind the optimal-load sandwich, in exact
//! integers.
//!
//! ```bash
//! cargo run --example appendix_check
//! ```

use cascade_cdc::analysis::{appendix_step_checks, lemma31_check, li_sandwich, to_decimal};

fn main() -> cascade_cdc::Result<()> {
    let lemma = lemma31_check(5)?;
    println!("p=5: lhs {} > rhs {}: {}", lemma.lhs, lemma.rhs, lemma.holds);
    for p in [5, 7, 11, 13, 17, 23, 31] {
        let steps = appendix_step_checks(p)?;
        let s = li_sandwich(p)?;
        println!(
            "p={p:<3} steps hold {}  last ratio {:<12} {} < L_li {} < {}",
            steps.holds(),
            steps.last_ratio.to_string(),
            to_decimal(&s.lower, 6),
            to_decimal(&s.li, 6),
            to_decimal(&s.upper, 6)
        );
    }
    Ok(())
}
