//! Building, verifying, exporting and rejecting designs.
//!
//! ```bash
//! cargo run --example design_verification
//! ```

use cascade_cdc::designs::{
    classify_ads, projective_plane, ruzsa_ads, verify_symmetric_design, Classification,
    SymmetricDesign,
};

fn main() -> cascade_cdc::Result<()> {
    for b in [2, 3, 5, 7] {
        let plane = projective_plane(b)?;
        println!("PG(2,{b}): {}", plane.params());
    }

    let fano = projective_plane(2)?;
    let json = fano.to_json();
    print!("exported: {json}");
    assert_eq!(SymmetricDesign::from_json(&json)?, fano);

    let mut blocks = fano.blocks().to_vec();
    blocks[0] = vec![0, 1, 4];
    match verify_symmetric_design(7, &blocks) {
        Ok(p) => println!("unexpectedly valid: {p}"),
        Err(violation) => println!("perturbed Fano rejected: {violation}"),
    }

    for p in [3, 5, 7, 11] {
        let a = ruzsa_ads(p)?;
        println!("Ruzsa set for p={p}: {a}, D = {:?}", a.set());
    }

    match classify_ads(&[0, 1, 2], 8)? {
        Classification::Ads(a) => println!("{a}"),
        Classification::NotAds(hist) => println!("{{0,1,2}} in Z_8 is not an ADS: {hist:?}"),
    }
    Ok(())
}
