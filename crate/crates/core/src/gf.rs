//! Finite-field arithmetic used by the shuffle encoders.
//!
//! [`BinaryField`] is GF(2^m) for `1 <= m <= 64` with elements stored as the
//! low `m` bits of a `u64` (bit `i` is the coefficient of `x^i`). Segments of
//! intermediate values are reinterpreted as elements of these fields when they
//! are Vandermonde-coded. [`PrimeField`] is the plain integers mod `p` used to
//! build projective planes and Ruzsa sets.

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 64;

/// Lexicographically smallest irreducible polynomial of each degree 1..=16.
const IRREDUCIBLE: [u128; 16] = [
    0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b,
];

fn degree(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u128, b: u128) -> u128 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Carry-less product of two polynomials of degree < 64.
fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let mut shifted = a as u128;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= shifted;
        }
        shifted <<= 1;
        b >>= 1;
    }
    acc
}

fn mulmod(a: u128, b: u128, modulus: u128) -> u128 {
    poly_rem(clmul(a as u64, b as u64), modulus)
}

/// Irreducibility by trial division over every polynomial of degree in `1..=m/2`.
pub fn is_irreducible_trial(f: u128) -> bool {
    let m = degree(f);
    if m < 1 {
        return false;
    }
    let limit = 1u128 << (m / 2 + 1);
    (2..limit).all(|g| degree(g) > m / 2 || poly_rem(f, g) != 0)
}

/// Ben-Or test: `f` of degree `m` is irreducible iff `gcd(f, x^(2^i) - x) = 1`
/// for every `1 <= i <= m/2`.
fn is_irreducible_ben_or(f: u128) -> bool {
    let m = degree(f);
    if m < 1 {
        return false;
    }
    let x = poly_rem(0b10, f);
    let mut power = x;
    for _ in 0..m / 2 {
        power = mulmod(power, power, f);
        if poly_gcd(f, power ^ x) != 1 {
            return false;
        }
    }
    true
}

/// Smallest irreducible polynomial of degree `m` (as an integer with bit `m` set).
pub fn irreducible_modulus(m: u32) -> Result<u128> {
    if m == 0 || m > MAX_DEGREE {
        return Err(Error::Domain(format!(
            "extension degree {m} outside 1..={MAX_DEGREE}"
        )));
    }
    if m <= 16 {
        return Ok(IRREDUCIBLE[m as usize - 1]);
    }
    let top = 1u128 << m;
    (top..top << 1)
        .find(|&f| is_irreducible_ben_or(f))
        .ok_or_else(|| Error::Internal(format!("no irreducible polynomial of degree {m}")))
}

/// GF(2^m) with a fixed irreducible modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryField {
    m: u32,
    modulus: u128,
}

impl BinaryField {
    /// Field of degree `m` using the canonical modulus.
    pub fn new(m: u32) -> Result<Self> {
        let modulus = irreducible_modulus(m)?;
        Ok(Self { m, modulus })
    }

    /// Field with a caller-chosen modulus; rejected unless irreducible.
    pub fn with_modulus(modulus: u128) -> Result<Self> {
        let m = degree(modulus);
        if m < 1 || m as u32 > MAX_DEGREE {
            return Err(Error::Domain(format!("modulus {modulus:#x} has unsupported degree")));
        }
        let irreducible = if m <= 16 {
            is_irreducible_trial(modulus)
        } else {
            is_irreducible_ben_or(modulus)
        };
        if !irreducible {
            return Err(Error::Domain(format!("modulus {modulus:#x} is reducible")));
        }
        Ok(Self {
            m: m as u32,
            modulus,
        })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// Number of elements, `2^m`.
    pub fn order(&self) -> u128 {
        1u128 << self.m
    }

    fn check(&self, a: u64) -> Result<()> {
        if self.m < 64 && a >> self.m != 0 {
            return Err(Error::Domain(format!(
                "{a:#x} is not an element of GF(2^{})",
                self.m
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: u64, b: u64) -> Result<u64> {
        self.check(a)?;
        self.check(b)?;
        Ok(a ^ b)
    }

    pub fn mul(&self, a: u64, b: u64) -> Result<u64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: u64, b: u64) -> u64 {
        mulmod(a as u128, b as u128, self.modulus) as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> Result<u64> {
        self.check(a)?;
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_unchecked(acc, base);
            }
            base = self.mul_unchecked(base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative inverse via `a^(2^m - 2)`.
    pub fn inv(&self, a: u64) -> Result<u64> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        // 2^m - 2 as u64 for m = 64 wraps correctly: u64::MAX - 1.
        let e = if self.m == 64 {
            u64::MAX - 1
        } else {
            (1u64 << self.m) - 2
        };
        self.pow(a, e)
    }
}

/// Integers modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `n = p^k` for a prime `p` and `k >= 1`.
pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap_or(n);
    let mut rest = n;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    rest == 1
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> u64 {
        let mut x = a % self.p;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Smallest positive primitive root, found by exhaustive order check.
    pub fn smallest_primitive_root(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        (2..self.p)
            .find(|&g| self.order(g) == self.p - 1)
            .expect("every prime field has a primitive root")
    }
}

/// Square Vandermonde system over GF(2^m) with distinct evaluation points.
///
/// Row `i`, column `j` of the matrix is `alphas[i]^j` (with `0^0 = 1`).
#[derive(Clone, Debug)]
pub struct VandermondeSystem {
    field: BinaryField,
    alphas: Vec<u64>,
}

impl VandermondeSystem {
    pub fn new(field: BinaryField, alphas: Vec<u64>) -> Result<Self> {
        for &a in &alphas {
            field.check(a)?;
        }
        let mut sorted = alphas.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Singular("evaluation points are not distinct".into()));
        }
        Ok(Self { field, alphas })
    }

    /// The first `count` field elements in integer order: `0, 1, 2, ...`.
    pub fn first_points(field: BinaryField, count: usize) -> Result<Self> {
        if (count as u128) > field.order() {
            return Err(Error::Contract(format!(
                "GF(2^{}) has fewer than {count} elements",
                field.degree()
            )));
        }
        Self::new(field, (0..count as u64).collect())
    }

    pub fn field(&self) -> &BinaryField {
        &self.field
    }

    pub fn alphas(&self) -> &[u64] {
        &self.alphas
    }

    pub fn rows(&self) -> usize {
        self.alphas.len()
    }

    /// `powers[i][j] = alphas[i]^j` for `j < cols`.
    fn powers(&self, cols: usize) -> Vec<Vec<u64>> {
        self.alphas
            .iter()
            .map(|&a| {
                let mut row = Vec::with_capacity(cols);
                let mut acc = 1u64;
                for _ in 0..cols {
                    row.push(acc);
                    acc = self.field.mul_unchecked(acc, a);
                }
                row
            })
            .collect()
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.rows() {
            return Err(Error::Contract(format!(
                "expected {} values, got {got}",
                self.rows()
            )));
        }
        Ok(())
    }

    /// `rhs[i] = sum_j alphas[i]^j * u[j]`.
    pub fn encode(&self, u: &[u64]) -> Result<Vec<u64>> {
        self.check_len(u.len())?;
        let n = self.rows();
        Ok(self
            .powers(n)
            .iter()
            .map(|row| {
                row.iter()
                    .zip(u)
                    .fold(0, |acc, (&c, &x)| acc ^ self.field.mul_unchecked(c, x))
            })
            .collect())
    }

    /// Inverse of [`encode`](Self::encode).
    pub fn solve(&self, rhs: &[u64]) -> Result<Vec<u64>> {
        self.check_len(rhs.len())?;
        let n = self.rows();
        solve_dense(&self.field, self.powers(n), rhs.to_vec())
    }

    /// `rhs[j] = sum_i alphas[i]^j * x[i]`, the power-row form used by the
    /// shuffle signals.
    pub fn encode_transposed(&self, x: &[u64]) -> Result<Vec<u64>> {
        self.check_len(x.len())?;
        let n = self.rows();
        let powers = self.powers(n);
        Ok((0..n)
            .map(|j| {
                powers
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (row, &v)| acc ^ self.field.mul_unchecked(row[j], v))
            })
            .collect())
    }

    /// The first `count` power rows `sum_i alphas[i]^j * x[i]`, `j < count`.
    pub fn encode_powers(&self, x: &[u64], count: usize) -> Result<Vec<u64>> {
        self.check_len(x.len())?;
        for &v in x {
            self.field.check(v)?;
        }
        let powers = self.powers(count);
        Ok((0..count)
            .map(|j| {
                powers
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (row, &v)| acc ^ self.field.mul_unchecked(row[j], v))
            })
            .collect())
    }

    /// Inverse of [`encode_transposed`](Self::encode_transposed).
    pub fn solve_transposed(&self, rhs: &[u64]) -> Result<Vec<u64>> {
        self.check_len(rhs.len())?;
        let n = self.rows();
        let powers = self.powers(n);
        let matrix = (0..n)
            .map(|j| powers.iter().map(|row| row[j]).collect())
            .collect();
        solve_dense(&self.field, matrix, rhs.to_vec())
    }
}

/// Gauss-Jordan elimination over GF(2^m).
fn solve_dense(field: &BinaryField, mut a: Vec<Vec<u64>>, mut b: Vec<u64>) -> Result<Vec<u64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != 0)
            .ok_or_else(|| Error::Singular(format!("no pivot in column {col}")))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = field.inv(a[col][col])?;
        for v in a[col].iter_mut() {
            *v = field.mul_unchecked(*v, inv);
        }
        b[col] = field.mul_unchecked(b[col], inv);
        for r in 0..n {
            if r == col || a[r][col] == 0 {
                continue;
            }
            let factor = a[r][col];
            for c in 0..n {
                let delta = field.mul_unchecked(factor, a[col][c]);
                a[r][c] ^= delta;
            }
            b[r] ^= field.mul_unchecked(factor, b[col]);
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf8() -> BinaryField {
        BinaryField::new(3).unwrap()
    }

    #[test]
    fn table_matches_trial_division_search() {
        for m in 1..=16u32 {
            let f = IRREDUCIBLE[m as usize - 1];
            assert_eq!(degree(f), m as i32);
            assert!(is_irreducible_trial(f), "degree {m}");
            let smallest = ((1u128 << m)..f).find(|&g| is_irreducible_trial(g));
            assert_eq!(smallest, None, "degree {m} table entry is not the smallest");
        }
    }

    #[test]
    fn ben_or_agrees_with_trial_division() {
        for f in 2u128..(1 << 11) {
            assert_eq!(is_irreducible_ben_or(f), is_irreducible_trial(f), "{f:#x}");
        }
    }

    #[test]
    fn large_degrees_have_moduli() {
        for m in [17, 18, 24, 48, 56, 64] {
            let field = BinaryField::new(m).unwrap();
            assert_eq!(field.degree(), m);
            let a = 0x1234_5678_9abc_def1u64 & (u64::MAX >> (64 - m));
            let inv = field.inv(a).unwrap();
            assert_eq!(field.mul(a, inv).unwrap(), 1);
        }
        assert!(BinaryField::new(0).is_err());
        assert!(BinaryField::new(65).is_err());
    }

    #[test]
    fn add_examples() {
        let f = gf8();
        assert_eq!(f.add(0b101, 0b101).unwrap(), 0);
        assert_eq!(f.add(0b011, 0b110).unwrap(), 0b101);
        for x in 0..8 {
            assert_eq!(f.add(x, 0).unwrap(), x);
        }
        assert!(matches!(f.add(8, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn mul_examples() {
        let f = gf8();
        assert_eq!(f.modulus(), 0b1011);
        assert_eq!(f.mul(0b010, 0b010).unwrap(), 0b100);
        assert_eq!(f.mul(0b100, 0b010).unwrap(), 0b011);
        for x in 0..8 {
            assert_eq!(f.mul(x, 1).unwrap(), x);
            assert_eq!(f.mul(x, 0).unwrap(), 0);
        }
        assert!(f.mul(1, 9).is_err());
    }

    #[test]
    fn inv_examples() {
        let f = gf8();
        assert_eq!(f.inv(1).unwrap(), 1);
        assert_eq!(f.inv(0b010).unwrap(), 0b101);
        assert!(matches!(f.inv(0), Err(Error::DivisionByZero)));
        let g = BinaryField::new(4).unwrap();
        for a in 1..16 {
            assert_eq!(g.mul(a, g.inv(a).unwrap()).unwrap(), 1);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_degrees() {
        for m in 1..=8u32 {
            let f = BinaryField::new(m).unwrap();
            let q = 1u64 << m;
            // Sample b, c on a stride for the larger fields to keep this quick.
            let stride = if m > 5 { 7 } else { 1 };
            for a in 0..q {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()).unwrap(), 1);
                }
                for b in (0..q).step_by(stride) {
                    assert_eq!(f.mul(a, b).unwrap(), f.mul(b, a).unwrap());
                    for c in (0..q).step_by(stride * 3) {
                        let ab_c = f.mul(f.mul(a, b).unwrap(), c).unwrap();
                        let a_bc = f.mul(a, f.mul(b, c).unwrap()).unwrap();
                        assert_eq!(ab_c, a_bc);
                        let lhs = f.mul(a, b ^ c).unwrap();
                        let rhs = f.mul(a, b).unwrap() ^ f.mul(a, c).unwrap();
                        assert_eq!(lhs, rhs);
                        assert_eq!((a ^ b) ^ c, a ^ (b ^ c));
                    }
                }
            }
        }
    }

    #[test]
    fn add_is_self_inverse() {
        for m in 1..=6u32 {
            let f = BinaryField::new(m).unwrap();
            for a in 0..1u64 << m {
                for b in 0..1u64 << m {
                    assert_eq!(f.add(f.add(a, b).unwrap(), b).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn vandermonde_examples() {
        let f1 = BinaryField::new(4).unwrap();
        let sys = VandermondeSystem::new(f1, vec![1]).unwrap();
        assert_eq!(sys.solve(&[7]).unwrap(), vec![7]);

        let f2 = BinaryField::new(2).unwrap();
        let sys = VandermondeSystem::new(f2, vec![1, 0b10]).unwrap();
        let rhs = sys.encode(&[0b01, 0b11]).unwrap();
        // row 1: 1 + x(x+1) = 1 + x^2 + x = 0 mod x^2+x+1
        assert_eq!(rhs, vec![0b10, 0b00]);
        assert_eq!(sys.solve(&rhs).unwrap(), vec![0b01, 0b11]);

        let f4 = BinaryField::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sys = VandermondeSystem::new(f4, vec![3, 9, 14]).unwrap();
        let u: Vec<u64> = (0..3).map(|_| rng.next_u64() & 0xf).collect();
        assert_eq!(sys.solve(&sys.encode(&u).unwrap()).unwrap(), u);
    }

    #[test]
    fn vandermonde_errors() {
        let f = BinaryField::new(4).unwrap();
        assert!(matches!(
            VandermondeSystem::new(f, vec![2, 5, 2]),
            Err(Error::Singular(_))
        ));
        let sys = VandermondeSystem::new(f, vec![0, 1]).unwrap();
        assert!(matches!(sys.solve(&[1]), Err(Error::Contract(_))));
        assert!(VandermondeSystem::first_points(BinaryField::new(1).unwrap(), 3).is_err());
    }

    #[test]
    fn vandermonde_round_trip_up_to_eight_over_gf256() {
        let f = BinaryField::new(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xcdc);
        for size in 1..=8 {
            for _ in 0..20 {
                let mut alphas: Vec<u64> = Vec::new();
                while alphas.len() < size {
                    let a = rng.next_u64() & 0xff;
                    if !alphas.contains(&a) {
                        alphas.push(a);
                    }
                }
                let sys = VandermondeSystem::new(f, alphas).unwrap();
                let u: Vec<u64> = (0..size).map(|_| rng.next_u64() & 0xff).collect();
                assert_eq!(sys.solve(&sys.encode(&u).unwrap()).unwrap(), u);
                assert_eq!(
                    sys.solve_transposed(&sys.encode_transposed(&u).unwrap()).unwrap(),
                    u
                );
            }
        }
    }

    #[test]
    fn prime_field_basics() {
        assert!(PrimeField::new(4).is_err());
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.smallest_primitive_root(), 3);
        assert_eq!(f.mul(f.inv(3).unwrap(), 3), 1);
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(PrimeField::new(5).unwrap().smallest_primitive_root(), 2);
        assert_eq!(PrimeField::new(3).unwrap().smallest_primitive_root(), 2);
        assert!(is_prime_power(8) && is_prime_power(9) && !is_prime_power(12) && !is_prime_power(1));
    }
}
