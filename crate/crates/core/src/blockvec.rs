//! Block codes `⟨x₀,…,x_{n−1}; l⟩ = Σ xᵢ·2^{il}` and the closed-form
//! combinators over them.
//!
//! Every combinator exists twice. The top-level functions evaluate the
//! closed formulas using only [`natcore`](crate::natcore) operations; they are
//! total and give unspecified values outside their preconditions. The
//! [`oracle`] module computes the same results by decoding, transforming and
//! re-encoding. The [`checked`] module validates preconditions first.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::natcore::{band, div_floor, monus, pow2_u, rm, Nat};

/// A decoded block code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockVec {
    pub blocks: Vec<Nat>,
    pub width: u64,
}

impl BlockVec {
    /// Encodes as `Σ blocksᵢ·2^{i·width}`.
    pub fn encode(&self) -> Nat {
        encode(&self.blocks, self.width)
    }

    /// Slices `n` blocks of `width` bits out of `x`.
    pub fn decode(x: &Nat, n: u64, width: u64) -> BlockVec {
        BlockVec { blocks: decode(x, n, width), width }
    }
}

/// `⟨x₀,…,x_{n−1}; l⟩`.
pub fn encode(blocks: &[Nat], l: u64) -> Nat {
    blocks
        .iter()
        .enumerate()
        .fold(Nat::zero(), |acc, (i, b)| acc + (b << (i as u64 * l)))
}

/// The `n` blocks of width `l` of `x`, lowest first.
pub fn decode(x: &Nat, n: u64, l: u64) -> Vec<Nat> {
    (0..n).map(|i| x.slice(i * l, l)).collect()
}

fn p2(e: u64) -> Result<Nat> {
    pow2_u(e)
}

fn n(v: u64) -> Nat {
    Nat::from(v)
}

/// `⌊(2^{nl} ∸ 1)/(2^l ∸ 1)⌋`, the word with ones at multiples of `l`.
fn geo(count: u64, l: u64) -> Result<Nat> {
    Ok(div_floor(&monus(&p2(count * l)?, &Nat::one()), &monus(&p2(l)?, &Nat::one())))
}

/// `rep(x,n,l) = x·⌊(2^{nl}∸1)/(2^l∸1)⌋ = ⟨x,…,x; l⟩`.
pub fn rep(x: &Nat, count: u64, l: u64) -> Result<Nat> {
    crate::natcore::check_bits(x.bits() + count * l)?;
    Ok(x * geo(count, l)?)
}

/// `incrx(x,n,l₁,l₂) = rep(x,n,l₂∸l₁) ∧ rep(2^{l₁}∸1,n,l₂)`: widens blocks from `l₁` to `l₂`.
pub fn incrx(x: &Nat, count: u64, l1: u64, l2: u64) -> Result<Nat> {
    let a = rep(x, count, l2.saturating_sub(l1))?;
    let b = rep(&monus(&p2(l1)?, &Nat::one()), count, l2)?;
    Ok(band(&a, &b))
}

/// Auxiliary sizes of `swap_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapAux {
    pub p: u64,
    pub a: u64,
    /// Number of unit blocks widened by `incrx`.
    pub blocks: u64,
}

/// Computes `p`, `a` and the widened block count for `swap_n`.
///
/// `p = q^{2n} + q(Σm+1)` and `a = q·p·(Σk+1)`. The source word has set
/// bits up to position `(q−1)Σk`, so `incrx` must widen `(q−1)Σk+1` unit
/// blocks, which can exceed `qⁿ`; `p` is raised when needed so that
/// `incrx`'s width condition still holds.
pub fn swap_aux(q: u64, k: &[u64], m: &[u64]) -> Result<SwapAux> {
    let nn = k.len() as u32;
    let sk: u64 = k.iter().sum();
    let sm: u64 = m.iter().sum();
    let overflow = || Error::Budget { needed: u64::MAX, budget: crate::natcore::bit_budget() };
    let q2n = q.checked_pow(2 * nn).ok_or_else(overflow)?;
    let base_p = q2n.checked_add(q.checked_mul(sm + 1).ok_or_else(overflow)?).ok_or_else(overflow)?;
    let blocks = (q.saturating_sub(1)).checked_mul(sk).ok_or_else(overflow)? + 1;
    let p = base_p.max(blocks + 1);
    let a = q
        .checked_mul(p)
        .and_then(|v| v.checked_mul(sk + 1))
        .ok_or_else(overflow)?;
    Ok(SwapAux { p, a, blocks })
}

/// `swap_n(x,q,k,m)`: moves the bit at `k·ī` to `m·ī` for every `ī ∈ [0,q)ⁿ`.
pub fn swap_n(x: &Nat, q: u64, k: &[u64], m: &[u64]) -> Result<Nat> {
    if k.len() != m.len() || k.is_empty() {
        return Err(Error::domain("swap_n needs equally long nonempty k and m"));
    }
    let SwapAux { p, a, blocks } = swap_aux(q, k, m)?;
    let nn = k.len() as u64;
    crate::natcore::check_bits(nn * a + blocks * p)?;
    let mut acc = incrx(x, blocks, 1, p)?;
    for (&kr, &mr) in k.iter().zip(m) {
        let kp = kr * p;
        let inner = monus(&n(kp), &n(mr)) * q;
        let hi = a + kp;
        let lo = monus(&n(hi), &inner).small()?;
        let num = monus(&p2(hi)?, &p2(lo)?);
        let den = monus(&p2(kp)?, &p2(mr)?);
        acc = acc * div_floor(&num, &den);
    }
    Ok(rm(&(acc >> (nn * a)), &p2(p)?))
}

/// `incr(x,q,l) = swap₁(x,q,1,l)`: widens a `q`-bit vector to blocks of width `l`.
pub fn incr(x: &Nat, q: u64, l: u64) -> Result<Nat> {
    swap_n(x, q, &[1], &[l])
}

/// `decr(x,q,l) = swap₁(x,q,l,1)`: narrows `q` blocks of width `l` holding bits.
pub fn decr(x: &Nat, q: u64, l: u64) -> Result<Nat> {
    swap_n(x, q, &[l], &[1])
}

/// Blockwise negation of an `n`-bit vector: `(2ⁿ∸1)∸x`.
pub fn not(x: &Nat, width: u64) -> Result<Nat> {
    Ok(monus(&monus(&p2(width)?, &Nat::one()), x))
}

/// `or(x,y,n) = not(not(x,n) ∧ not(y,n), n)`.
pub fn or(x: &Nat, y: &Nat, width: u64) -> Result<Nat> {
    not(&band(&not(x, width)?, &not(y, width)?), width)
}

/// `xor(x,y,n) = or(x,y,n) ∧ not(x∧y, n)`.
pub fn xor(x: &Nat, y: &Nat, width: u64) -> Result<Nat> {
    Ok(band(&or(x, y, width)?, &not(&band(x, y), width)?))
}

/// Bitwise operation selector for [`bitlogic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitOp {
    Not,
    Or,
    Xor,
}

/// Dispatches to [`not`], [`or`] or [`xor`]; `y` is ignored for `Not`.
pub fn bitlogic(x: &Nat, y: &Nat, width: u64, op: BitOp) -> Result<Nat> {
    match op {
        BitOp::Not => not(x, width),
        BitOp::Or => or(x, y, width),
        BitOp::Xor => xor(x, y, width),
    }
}

/// `cmp(x,y,n,l)`: bit `i` is `[xᵢ ≥ yᵢ]` for blocks of width `l`.
pub fn cmp(x: &Nat, y: &Nat, count: u64, l: u64) -> Result<Nat> {
    let hb = p2((2 * l).saturating_sub(1))?;
    let mask = rep(&hb, count, 2 * l)?;
    let xs = incr(x, count * l, 2)?;
    let ys = incr(y, count * l, 2)?;
    let d = band(&monus(&(&mask + &xs), &ys), &mask);
    decr(&div_floor(&d, &hb), count, 2 * l)
}

/// `cmpeq(x,y,n,l) = cmp(x,y,n,l) ∧ cmp(y,x,n,l)`.
pub fn cmpeq(x: &Nat, y: &Nat, count: u64, l: u64) -> Result<Nat> {
    Ok(band(&cmp(x, y, count, l)?, &cmp(y, x, count, l)?))
}

/// `sum(x,n,l,k)`: sums each group of `k` unit blocks of width `l` into a block
/// of width `kl`.
///
/// The selecting mask sits at the top block of every group, offset
/// `(k∸1)l` from `rep(rep(1,l,1),n,kl)`.
pub fn sum_blocks(x: &Nat, count: u64, l: u64, k: u64) -> Result<Nat> {
    let spread = x * geo(k, l)?;
    let shift = p2(k.saturating_sub(1) * l)?;
    let mask = rep(&rep(&Nat::one(), l, 1)?, count, k * l)? * &shift;
    Ok(div_floor(&band(&spread, &mask), &shift))
}

/// Reverses the low `n` bits of `x`.
///
/// For `n = 1` the formula's inner width `n∸1` vanishes; the result is then
/// `x` itself, selected by `sg(n∸1)`.
pub fn reverse_bits(x: &Nat, width: u64) -> Result<Nat> {
    if width <= 1 {
        return Ok(x.clone());
    }
    let w1 = width - 1;
    let sel = div_floor(
        &monus(&p2(width * width - 1)?, &p2(w1)?),
        &monus(&p2(w1)?, &Nat::one()),
    );
    let picked = div_floor(&band(&rep(x, width, width)?, &sel), &p2(w1)?);
    decr(&picked, width, w1)
}

/// `ssqrt(y)`, which maps `2^{2x}` to `2^x`.
///
/// The final shift uses `⌊2BC/⌊4f/y³⌋⌋` in place of `⌊BC/⌊2f/y³⌋⌋`; both
/// agree for `x ≥ 2`, and only the former is defined at `x = 1`.
pub fn ssqrt(y: &Nat) -> Result<Nat> {
    let one = Nat::one();
    let f = crate::natcore::exp_logsq(y)?;
    crate::natcore::check_bits(4 * f.bits())?;
    let f4 = f.pow(4);
    let y2 = y * y;
    let a = div_floor(&monus(&f4, &one), &monus(&y2, &one));
    let c = band(&a, &monus(&f, &one));
    let b = div_floor(
        &monus(&div_floor(&f4, &n(2)), &one),
        &monus(&div_floor(&y2, &n(2)), &one),
    );
    let y3 = &y2 * y;
    let d = band(&div_floor(&(c * b * 2u64), &div_floor(&(&f * 4u64), &y3)), &monus(y, &one));
    Ok(monus(y, &d))
}

/// Decode, transform and re-encode implementations of every combinator.
pub mod oracle {
    use super::{decode, encode};
    use crate::natcore::Nat;

    /// `⟨x,…,x; l⟩` by direct packing.
    pub fn rep(x: &Nat, count: u64, l: u64) -> Nat {
        encode(&vec![x.clone(); count as usize], l)
    }

    /// Re-packs `n` blocks from width `l₁` to `l₂`.
    pub fn incrx(x: &Nat, count: u64, l1: u64, l2: u64) -> Nat {
        encode(&decode(x, count, l1), l2)
    }

    /// Enumerates `ī ∈ [0,q)ⁿ` and moves each bit from `k·ī` to `m·ī`.
    pub fn swap_n(x: &Nat, q: u64, k: &[u64], m: &[u64]) -> Nat {
        let n = k.len();
        let mut idx = vec![0u64; n];
        let mut out = Nat::zero();
        loop {
            let src: u64 = idx.iter().zip(k).map(|(i, k)| i * k).sum();
            if x.bit(src) {
                let dst: u64 = idx.iter().zip(m).map(|(i, m)| i * m).sum();
                out.set_bit(dst, true);
            }
            let mut r = 0;
            loop {
                if r == n {
                    return out;
                }
                idx[r] += 1;
                if idx[r] < q {
                    break;
                }
                idx[r] = 0;
                r += 1;
            }
        }
    }

    /// Spreads `q` bits to blocks of width `l`.
    pub fn incr(x: &Nat, q: u64, l: u64) -> Nat {
        let bits: Vec<Nat> = (0..q).map(|i| Nat::from(x.bit(i))).collect();
        encode(&bits, l)
    }

    /// Collects the low bit of `q` blocks of width `l`.
    pub fn decr(x: &Nat, q: u64, l: u64) -> Nat {
        let bits: Vec<bool> = (0..q).map(|i| x.bit(i * l)).collect();
        Nat::from_bits_le(&bits)
    }

    /// Bitwise complement within `n` bits.
    pub fn not(x: &Nat, width: u64) -> Nat {
        let bits: Vec<bool> = (0..width).map(|i| !x.bit(i)).collect();
        Nat::from_bits_le(&bits)
    }

    /// Bitwise disjunction within `n` bits.
    pub fn or(x: &Nat, y: &Nat, width: u64) -> Nat {
        let bits: Vec<bool> = (0..width).map(|i| x.bit(i) || y.bit(i)).collect();
        Nat::from_bits_le(&bits)
    }

    /// Bitwise exclusive or within `n` bits.
    pub fn xor(x: &Nat, y: &Nat, width: u64) -> Nat {
        let bits: Vec<bool> = (0..width).map(|i| x.bit(i) != y.bit(i)).collect();
        Nat::from_bits_le(&bits)
    }

    /// Blockwise `[xᵢ ≥ yᵢ]`.
    pub fn cmp(x: &Nat, y: &Nat, count: u64, l: u64) -> Nat {
        let xs = decode(x, count, l);
        let ys = decode(y, count, l);
        let bits: Vec<bool> = xs.iter().zip(&ys).map(|(a, b)| a >= b).collect();
        Nat::from_bits_le(&bits)
    }

    /// Blockwise `[xᵢ = yᵢ]`.
    pub fn cmpeq(x: &Nat, y: &Nat, count: u64, l: u64) -> Nat {
        let xs = decode(x, count, l);
        let ys = decode(y, count, l);
        let bits: Vec<bool> = xs.iter().zip(&ys).map(|(a, b)| a == b).collect();
        Nat::from_bits_le(&bits)
    }

    /// Group sums of `k` consecutive unit blocks of width `l`.
    pub fn sum_blocks(x: &Nat, count: u64, l: u64, k: u64) -> Nat {
        let cells = decode(x, count * k, l);
        let sums: Vec<Nat> = cells.chunks(k as usize).map(|c| c.iter().cloned().sum()).collect();
        encode(&sums, l * k)
    }

    /// Reverses the low `n` bits.
    pub fn reverse_bits(x: &Nat, width: u64) -> Nat {
        let bits: Vec<bool> = (0..width).rev().map(|i| x.bit(i)).collect();
        Nat::from_bits_le(&bits)
    }
}

/// Precondition-validating wrappers around the closed formulas.
pub mod checked {
    use super::*;

    fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
        if cond {
            Ok(())
        } else {
            Err(Error::Domain(msg()))
        }
    }

    fn below(x: &Nat, bits: u64, what: &str) -> Result<()> {
        need(x.bits() <= bits, || format!("{what} must be below 2^{bits}"))
    }

    /// Checked [`super::rep`].
    pub fn rep(x: &Nat, count: u64, l: u64) -> Result<Nat> {
        need(count >= 1 && l >= 1, || "rep needs n, l ≥ 1".into())?;
        super::rep(x, count, l)
    }

    /// Checked [`super::incrx`].
    pub fn incrx(x: &Nat, count: u64, l1: u64, l2: u64) -> Result<Nat> {
        need(count >= 1 && l1 >= 1, || "incrx needs n, l1 ≥ 1".into())?;
        need(l2 >= (count + 1) * l1, || "incrx needs l2 ≥ (n+1)·l1".into())?;
        below(x, count * l1, "x")?;
        super::incrx(x, count, l1, l2)
    }

    /// Fails unless all weighted sums `k·ī` over `[0,q)ⁿ` are distinct and
    /// `x` has no bits outside them.
    pub fn swap_precondition(x: &Nat, q: u64, k: &[u64], m: &[u64]) -> Result<()> {
        need(!k.is_empty() && k.len() == m.len(), || "swap needs |k| = |m| ≥ 1".into())?;
        need(q >= 1 && k.iter().all(|&v| v >= 1), || "swap needs q, kᵢ ≥ 1".into())?;
        let total = (q as u128).pow(k.len() as u32);
        need(total <= 1 << 22, || "swap index space too large to validate".into())?;
        let mut seen = HashSet::new();
        let n = k.len();
        let mut idx = vec![0u64; n];
        loop {
            let s: u64 = idx.iter().zip(k).map(|(i, k)| i * k).sum();
            need(seen.insert(s), || format!("weighted sums collide at {s}"))?;
            let mut r = 0;
            while r < n {
                idx[r] += 1;
                if idx[r] < q {
                    break;
                }
                idx[r] = 0;
                r += 1;
            }
            if r == n {
                break;
            }
        }
        let top = x.bits();
        for b in 0..top {
            if x.bit(b) && !seen.contains(&b) {
                return Err(Error::Domain(format!("bit {b} of x is not a weighted sum")));
            }
        }
        Ok(())
    }

    /// Checked [`super::swap_n`].
    pub fn swap_n(x: &Nat, q: u64, k: &[u64], m: &[u64]) -> Result<Nat> {
        swap_precondition(x, q, k, m)?;
        super::swap_n(x, q, k, m)
    }

    /// Checked [`super::incr`].
    pub fn incr(x: &Nat, q: u64, l: u64) -> Result<Nat> {
        need(q >= 1 && l >= 1, || "incr needs q, l ≥ 1".into())?;
        below(x, q, "x")?;
        super::incr(x, q, l)
    }

    /// Checked [`super::decr`].
    pub fn decr(x: &Nat, q: u64, l: u64) -> Result<Nat> {
        need(q >= 1 && l >= 1, || "decr needs q, l ≥ 1".into())?;
        swap_precondition(x, q, &[l], &[1])?;
        super::decr(x, q, l)
    }

    /// Checked [`super::bitlogic`].
    pub fn bitlogic(x: &Nat, y: &Nat, width: u64, op: BitOp) -> Result<Nat> {
        need(width >= 1, || "bit vectors need n ≥ 1".into())?;
        below(x, width, "x")?;
        below(y, width, "y")?;
        super::bitlogic(x, y, width, op)
    }

    /// Checked [`super::cmp`].
    pub fn cmp(x: &Nat, y: &Nat, count: u64, l: u64) -> Result<Nat> {
        need(count >= 1 && l >= 1, || "cmp needs n, l ≥ 1".into())?;
        below(x, count * l, "x")?;
        below(y, count * l, "y")?;
        super::cmp(x, y, count, l)
    }

    /// Checked [`super::cmpeq`].
    pub fn cmpeq(x: &Nat, y: &Nat, count: u64, l: u64) -> Result<Nat> {
        need(count >= 1 && l >= 1, || "cmpeq needs n, l ≥ 1".into())?;
        below(x, count * l, "x")?;
        below(y, count * l, "y")?;
        super::cmpeq(x, y, count, l)
    }

    /// Checked [`super::sum_blocks`].
    pub fn sum_blocks(x: &Nat, count: u64, l: u64, k: u64) -> Result<Nat> {
        need(count >= 1 && l >= 1 && k >= 1, || "sum needs n, l, k ≥ 1".into())?;
        need(l >= 64 || k < (1u64 << l), || "sum needs k < 2^l".into())?;
        below(x, count * k * l, "x")?;
        for b in 0..x.bits() {
            need(!x.bit(b) || b % l == 0, || format!("bit {b} of x is not a unit block"))?;
        }
        super::sum_blocks(x, count, l, k)
    }

    /// Checked [`super::reverse_bits`].
    pub fn reverse_bits(x: &Nat, width: u64) -> Result<Nat> {
        need(width >= 1, || "reverse needs n ≥ 1".into())?;
        below(x, width, "x")?;
        super::reverse_bits(x, width)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn worked_examples() {
        assert_eq!(encode(&[n(1), n(2), n(3)], 4), 801);
        assert_eq!(rep(&n(5), 3, 4).unwrap(), 1365);
        assert_eq!(incrx(&n(5), 3, 1, 4).unwrap(), 257);
        assert_eq!(swap_n(&n(3), 2, &[1], &[3]).unwrap(), 9);
        assert_eq!(incr(&n(3), 2, 3).unwrap(), 9);
        assert_eq!(decr(&n(9), 2, 3).unwrap(), 3);
        assert_eq!(cmp(&n(7), &n(10), 2, 2).unwrap(), 1);
        assert_eq!(sum_blocks(&n(5), 1, 2, 2).unwrap(), 2);
        assert_eq!(sum_blocks(&n(65), 2, 2, 2).unwrap(), 17);
        assert_eq!(reverse_bits(&n(4), 3).unwrap(), 1);
        assert_eq!(ssqrt(&n(16)).unwrap(), 4);
        assert_eq!(ssqrt(&n(1)).unwrap(), 1);
        assert_eq!(ssqrt(&n(4)).unwrap(), 2);
    }
}
