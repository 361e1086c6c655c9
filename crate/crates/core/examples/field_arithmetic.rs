//! GF(2^m) arithmetic and the Vandermonde systems the shuffle decoders solve.
//!
//! ```bash
//! cargo run --example field_arithmetic
//! ```

use cascade_cdc::gf::{irreducible_modulus, BinaryField, VandermondeSystem};

fn main() -> cascade_cdc::Result<()> {
    for m in [2, 3, 8, 18, 32] {
        println!("degree {m:>2}: modulus {:#x}", irreducible_modulus(m)?);
    }

    let f = BinaryField::new(3)?;
    println!("in GF(8): 4 * 2 = {}, 2^-1 = {}", f.mul(4, 2)?, f.inv(2)?);

    // Three unknown segments, three power rows: the shape of one diagonal
    // decode on a (13,4,1) plane.
    let f = BinaryField::new(8)?;
    let system = VandermondeSystem::first_points(f, 3)?;
    let secret = [0x3a, 0x07, 0xc1];
    let rows = system.encode_transposed(&secret)?;
    let back = system.solve_transposed(&rows)?;
    println!("rows {rows:x?} decode back to {back:x?}");
    assert_eq!(back, secret);
    Ok(())
}
