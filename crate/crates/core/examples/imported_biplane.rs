//! A design supplied as JSON: the (16,6,2) biplane from the difference set
//! {(0,1),(0,2),(0,3),(1,0),(2,0),(3,0)} in Z_4 x Z_4, run through the
//! symmetric-design scheme with lambda = 2.
//!
//! ```bash
//! cargo run --example imported_biplane
//! ```

use cascade_cdc::designs::SymmetricDesign;
use cascade_cdc::scheme::build_scheme_sd;
use cascade_cdc::simulate;

fn biplane_json() -> String {
    let base = [(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0)];
    let blocks: Vec<Vec<usize>> = (0..16)
        .map(|g| {
            let (gx, gy) = (g / 4, g % 4);
            base.iter().map(|&(x, y)| ((x + gx) % 4) * 4 + (y + gy) % 4).collect()
        })
        .collect();
    serde_json::json!({ "v": 16, "blocks": blocks }).to_string()
}

fn main() -> cascade_cdc::Result<()> {
    let design = SymmetricDesign::from_json(&biplane_json())?;
    println!("imported {}", design.params());
    let scheme = build_scheme_sd(&design)?;
    let sim = simulate(&scheme, 3, 1)?;
    print!("{}", sim.report.to_json());
    Ok(())
}
