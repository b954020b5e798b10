//! The fixed numeration of pairs and triples: bit interleaving.
//!
//! `c₂(x, y)` puts the bits of `x` at even positions and those of `y` at odd
//! positions; `c₃(x, y, z) = c₂(x, c₂(y, z))`.

use num_bigint::BigUint;

use crate::natcore::Nat;

fn spread32(v: u64) -> u64 {
    let mut x = v & 0xffff_ffff;
    x = (x | x << 16) & 0x0000_ffff_0000_ffff;
    x = (x | x << 8) & 0x00ff_00ff_00ff_00ff;
    x = (x | x << 4) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | x << 2) & 0x3333_3333_3333_3333;
    (x | x << 1) & 0x5555_5555_5555_5555
}

fn compact32(v: u64) -> u64 {
    let mut x = v & 0x5555_5555_5555_5555;
    x = (x | x >> 1) & 0x3333_3333_3333_3333;
    x = (x | x >> 2) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | x >> 4) & 0x00ff_00ff_00ff_00ff;
    x = (x | x >> 8) & 0x0000_ffff_0000_ffff;
    (x | x >> 16) & 0x0000_0000_ffff_ffff
}

fn from_u64_digits(digits: &[u64]) -> Nat {
    let words: Vec<u32> = digits.iter().flat_map(|&d| [d as u32, (d >> 32) as u32]).collect();
    Nat::from(BigUint::new(words))
}

fn spread(x: &Nat) -> Vec<u64> {
    x.as_biguint().iter_u64_digits().flat_map(|d| [spread32(d), spread32(d >> 32)]).collect()
}

/// `c₂(x, y)`.
pub fn c2(x: &Nat, y: &Nat) -> Nat {
    let (a, b) = (spread(x), spread(y));
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, d) in a.iter().enumerate() {
        out[i] |= d;
    }
    for (i, d) in b.iter().enumerate() {
        out[i] |= d << 1;
    }
    from_u64_digits(&out)
}

/// `(c₂,₁(n), c₂,₂(n))`.
pub fn split2(n: &Nat) -> (Nat, Nat) {
    let digits: Vec<u64> = n.as_biguint().iter_u64_digits().collect();
    let half = |shift: u32| {
        let packed: Vec<u64> = digits
            .chunks(2)
            .map(|c| {
                let lo = compact32(c[0] >> shift);
                let hi = c.get(1).map_or(0, |&d| compact32(d >> shift));
                lo | hi << 32
            })
            .collect();
        from_u64_digits(&packed)
    };
    (half(0), half(1))
}

/// `c₂,₁(n)`.
pub fn c21(n: &Nat) -> Nat {
    split2(n).0
}

/// `c₂,₂(n)`.
pub fn c22(n: &Nat) -> Nat {
    split2(n).1
}

/// `c₃(x, y, z) = c₂(x, c₂(y, z))`.
pub fn c3(x: &Nat, y: &Nat, z: &Nat) -> Nat {
    c2(x, &c2(y, z))
}

/// `(c₃,₁(n), c₃,₂(n), c₃,₃(n))`.
pub fn split3(n: &Nat) -> (Nat, Nat, Nat) {
    let (x, rest) = split2(n);
    let (y, z) = split2(&rest);
    (x, y, z)
}

/// `c₃` on machine integers.
pub fn c3u(x: u64, y: u64, z: u64) -> Nat {
    c3(&Nat::from(x), &Nat::from(y), &Nat::from(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slow_c2(x: u64, y: u64) -> u128 {
        (0..64).map(|i| ((x >> i & 1) as u128) << (2 * i) | ((y >> i & 1) as u128) << (2 * i + 1)).sum()
    }

    #[test]
    fn interleaving_matches_bitwise_definition() {
        for (x, y) in [(0, 0), (1, 0), (0, 1), (5, 9), (u64::MAX, 3), (123456789, u64::MAX)] {
            let n = c2(&Nat::from(x), &Nat::from(y));
            assert_eq!(n, Nat::from(slow_c2(x, y)));
            assert_eq!(split2(&n), (Nat::from(x), Nat::from(y)));
        }
    }

    #[test]
    fn every_number_is_a_pair() {
        for n in 0..4096u64 {
            let (x, y) = split2(&Nat::from(n));
            assert_eq!(c2(&x, &y), Nat::from(n));
            let (a, b, c) = split3(&Nat::from(n));
            assert_eq!(c3(&a, &b, &c), Nat::from(n));
        }
    }
}
