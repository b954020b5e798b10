//! Self-delimiting word encodings of number tuples and their arithmetic
//! counterparts.

use crate::blockvec;
use crate::error::{Error, Result};
use crate::natcore::{self as nc, check_bits, Nat};

/// `CODE(x₁,…,xₙ) = 01 s₁ 01 s₂ … 01 sₙ 01`, where `sᵢ` is the binary notation
/// of `xᵢ` with every digit doubled (empty for zero).
pub fn code(xs: &[Nat]) -> Vec<bool> {
    let mut out = vec![false, true];
    for x in xs {
        for i in (0..x.bits()).rev() {
            let b = x.bit(i);
            out.extend([b, b]);
        }
        out.extend([false, true]);
    }
    out
}

/// Pads `alpha` on the right with zeros up to length `n`.
pub fn ext(alpha: &[bool], n: u64) -> Vec<bool> {
    let mut out = alpha.to_vec();
    if (out.len() as u64) < n {
        out.resize(n as usize, false);
    }
    out
}

fn code_power(xs: &[Nat], k: u32) -> Result<(Vec<bool>, u64)> {
    if k == 0 {
        return Err(Error::domain("k ≥ 1"));
    }
    let c = code(xs);
    let len = (c.len() as u64)
        .checked_pow(k)
        .ok_or_else(|| Error::domain("|CODE|^k overflows"))?;
    check_bits(2 * len)?;
    Ok((c, len))
}

/// `CODE^var_k = ext(CODE, 2|CODE|^k)`.
pub fn code_var(xs: &[Nat], k: u32) -> Result<Vec<bool>> {
    let (c, len) = code_power(xs, k)?;
    Ok(ext(&c, 2 * len))
}

/// `CODE^alt_k(x̃; y) = α₁β₁α₂β₂…`, with `α = ext(CODE, |CODE|^k)` and `βᵢ`
/// the digit of weight `2^{i−1}` of `y`.
pub fn code_alt(xs: &[Nat], k: u32, y: &Nat) -> Result<Vec<bool>> {
    let (c, len) = code_power(xs, k)?;
    if y.bits() > len {
        return Err(Error::domain(format!("y must be below 2^{len}")));
    }
    let alpha = ext(&c, len);
    let mut out = Vec::with_capacity(2 * len as usize);
    for (i, &a) in alpha.iter().enumerate() {
        out.push(a);
        out.push(y.bit(i as u64));
    }
    Ok(out)
}

/// `c(X)`: the number whose binary notation, most significant digit first, is `X`.
pub fn word_value(word: &[bool]) -> Nat {
    let bits: Vec<bool> = word.iter().rev().copied().collect();
    Nat::from_bits_le(&bits)
}

/// `lcode_{n,k}(x̃) = 2^{k+1}(Σ len(xᵢ) + n + 1)^k`, the length of `CODE^var_k`.
pub fn lcode(xs: &[Nat], k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::domain("k ≥ 1"));
    }
    let s: u64 = xs.iter().map(|x| x.bits()).sum::<u64>() + xs.len() as u64 + 1;
    let v = s
        .checked_pow(k)
        .and_then(|p| p.checked_mul(1u64 << (k + 1)))
        .ok_or_else(|| Error::domain("lcode overflows"))?;
    check_bits(v)?;
    Ok(v)
}

/// Doubles every binary digit: `3·incr(x, ⌊log₂x⌋+1, 2)`.
pub fn double_digits(x: &Nat) -> Result<Nat> {
    let q = nc::log2_floor(x).small()? + 1;
    Ok(blockvec::incr(x, q, 2)? * 3u64)
}

/// `code_{n,k}(x̃)`: the number with binary notation `CODE^var_k(x̃)`, built
/// arithmetically.
///
/// Frame `i` contributes `2^{l∸(2i+l₁+…+l_{i−1})}` and digits
/// `2^{l∸(2i+l₁+…+lᵢ)}·f(xᵢ)`; the closing frame sits at
/// `2^{l∸(2(n+1)+l₁+…+lₙ)}`, which is 1 only when the padding is empty.
pub fn code_num(xs: &[Nat], k: u32) -> Result<Nat> {
    let l = lcode(xs, k)?;
    let mut acc = Nat::zero();
    let mut used = 0u64;
    for (i, x) in xs.iter().enumerate() {
        let i = i as u64 + 1;
        acc += &nc::pow2_u(l.saturating_sub(2 * i + used))?;
        used += 2 * x.bits();
        acc += &(nc::pow2_u(l.saturating_sub(2 * i + used))? * double_digits(x)?);
    }
    let closing = 2 * (xs.len() as u64 + 1) + used;
    acc += &nc::pow2_u(l.saturating_sub(closing))?;
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fomlogic::show_word;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn code_examples() {
        assert_eq!(show_word(&code(&[n(0)])), "0101");
        assert_eq!(show_word(&code(&[n(2)])), "01110001");
        assert_eq!(show_word(&ext(&[true], 3)), "100");
        assert_eq!(show_word(&code_var(&[n(0)], 1).unwrap()), "01010000");
        assert_eq!(show_word(&code_alt(&[n(0)], 1, &n(0b1001)).unwrap()), "01100011");
        assert!(code_alt(&[n(0)], 1, &n(16)).is_err());
    }

    #[test]
    fn arithmetic_code_matches_words() {
        for a in 0..12u64 {
            for b in 0..5u64 {
                for k in 1..=2 {
                    let xs = [n(a), n(b)];
                    let w = code_var(&xs, k).unwrap();
                    assert_eq!(lcode(&xs, k).unwrap(), w.len() as u64);
                    assert_eq!(code_num(&xs, k).unwrap(), word_value(&w), "{a} {b} {k}");
                }
            }
        }
    }
}
