//! Exact non-negative integers and the catalog of basis functions.
//!
//! Every operation is total: division and remainder by zero yield 0, and
//! `log2_floor(0) = len(0) = 0`. Functions that can produce huge values
//! check the global bit budget first.

use std::fmt;
use std::ops::{Add, AddAssign, BitAnd, BitOr, BitXor, Div, Mul, Rem, Shl, Shr};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default bit budget for a single value.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 24;

/// Default iteration budget for bounded summation and minimization.
pub const DEFAULT_ITER_BUDGET: u64 = 1 << 24;

static BIT_BUDGET: AtomicU64 = AtomicU64::new(0);

/// Current bit budget. Reads `RECFUN_BIT_BUDGET` on first use.
pub fn bit_budget() -> u64 {
    let b = BIT_BUDGET.load(Ordering::Relaxed);
    if b != 0 {
        return b;
    }
    let init = std::env::var("RECFUN_BIT_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_BIT_BUDGET);
    let _ = BIT_BUDGET.compare_exchange(0, init, Ordering::Relaxed, Ordering::Relaxed);
    BIT_BUDGET.load(Ordering::Relaxed)
}

/// Overrides the bit budget for the whole process.
pub fn set_bit_budget(bits: u64) {
    BIT_BUDGET.store(bits.max(1), Ordering::Relaxed);
}

/// Fails with [`Error::Budget`] when `bits` exceeds the budget.
pub fn check_bits(bits: u64) -> Result<()> {
    let budget = bit_budget();
    if bits > budget {
        Err(Error::Budget { needed: bits, budget })
    } else {
        Ok(())
    }
}

/// Exact non-negative integer of unbounded size.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nat(BigUint);

impl Nat {
    /// Zero.
    pub fn zero() -> Self {
        Nat(BigUint::zero())
    }

    /// One.
    pub fn one() -> Self {
        Nat(BigUint::one())
    }

    /// Wraps a `BigUint`.
    pub fn from_biguint(v: BigUint) -> Self {
        Nat(v)
    }

    /// The underlying `BigUint`.
    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Number of significant bits (0 for zero).
    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    /// Bit `i` as a boolean.
    pub fn bit(&self, i: u64) -> bool {
        self.0.bit(i)
    }

    /// Sets or clears bit `i`.
    pub fn set_bit(&mut self, i: u64, value: bool) {
        self.0.set_bit(i, value)
    }

    /// Value as `u64` when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Value as `u64`, failing with a domain error when it does not fit.
    pub fn small(&self) -> Result<u64> {
        self.to_u64()
            .ok_or_else(|| Error::domain(format!("value of {} bits does not fit a machine word", self.bits())))
    }

    /// Value as `usize`, failing with a domain error when it does not fit.
    pub fn small_usize(&self) -> Result<usize> {
        usize::try_from(self.small()?).map_err(|_| Error::domain("value does not fit usize"))
    }

    /// `2^e` without a budget check; callers bound `e` themselves.
    pub fn pow2(e: u64) -> Self {
        let mut v = BigUint::zero();
        v.set_bit(e, true);
        Nat(v)
    }

    /// `2^e − 1`, the all-ones word of width `e`.
    pub fn ones(e: u64) -> Self {
        if e == 0 {
            return Nat::zero();
        }
        Nat((BigUint::one() << e) - 1u32)
    }

    /// `self^e` without a budget check.
    pub fn pow(&self, e: u32) -> Self {
        Nat(num_traits::pow::Pow::pow(&self.0, e))
    }

    /// Builds a value from little-endian bits.
    pub fn from_bits_le(bits: &[bool]) -> Self {
        let mut v = BigUint::zero();
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set_bit(i as u64, true);
            }
        }
        Nat(v)
    }

    /// Little-endian bits padded or truncated to `width`.
    pub fn to_bits_le(&self, width: u64) -> Vec<bool> {
        (0..width).map(|i| self.bit(i)).collect()
    }

    /// Bits `[lo, lo+width)` as a value.
    pub fn slice(&self, lo: u64, width: u64) -> Nat {
        if width == 0 {
            return Nat::zero();
        }
        Nat((&self.0 >> lo) & (Nat::ones(width).0))
    }

    /// `x − y`, assuming `x ≥ y`; clamps to zero otherwise.
    pub fn sub_clamped(&self, other: &Nat) -> Nat {
        monus(self, other)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Nat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse { pos: 0, msg: format!("not a decimal natural: `{s}`") });
        }
        t.parse::<BigUint>()
            .map(Nat)
            .map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Nat {
            fn from(v: $t) -> Self { Nat(BigUint::from(v)) }
        }
    )*};
}
from_prim!(u8, u16, u32, u64, u128, usize);

impl From<bool> for Nat {
    fn from(v: bool) -> Self {
        Nat::from(v as u8)
    }
}

impl From<BigUint> for Nat {
    fn from(v: BigUint) -> Self {
        Nat(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Nat> for &Nat {
            type Output = Nat;
            fn $m(self, rhs: &Nat) -> Nat {
                let f: fn(&Nat, &Nat) -> Nat = $body;
                f(self, rhs)
            }
        }
        impl $tr<Nat> for Nat {
            type Output = Nat;
            fn $m(self, rhs: Nat) -> Nat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Nat> for Nat {
            type Output = Nat;
            fn $m(self, rhs: &Nat) -> Nat {
                (&self).$m(rhs)
            }
        }
        impl $tr<Nat> for &Nat {
            type Output = Nat;
            fn $m(self, rhs: Nat) -> Nat {
                self.$m(&rhs)
            }
        }
        impl $tr<u64> for &Nat {
            type Output = Nat;
            fn $m(self, rhs: u64) -> Nat {
                self.$m(&Nat::from(rhs))
            }
        }
        impl $tr<u64> for Nat {
            type Output = Nat;
            fn $m(self, rhs: u64) -> Nat {
                (&self).$m(&Nat::from(rhs))
            }
        }
    };
}

binop!(Add, add, |a, b| Nat(&a.0 + &b.0));
binop!(Mul, mul, |a, b| Nat(&a.0 * &b.0));
binop!(Div, div, div_floor);
binop!(Rem, rem, rm);
binop!(BitAnd, bitand, band);
binop!(BitOr, bitor, |a, b| Nat(&a.0 | &b.0));
binop!(BitXor, bitxor, |a, b| Nat(&a.0 ^ &b.0));

impl AddAssign<&Nat> for Nat {
    fn add_assign(&mut self, rhs: &Nat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<u64> for Nat {
    fn add_assign(&mut self, rhs: u64) {
        self.0 += rhs;
    }
}

impl Shl<u64> for &Nat {
    type Output = Nat;
    fn shl(self, rhs: u64) -> Nat {
        Nat(&self.0 << rhs)
    }
}

impl Shl<u64> for Nat {
    type Output = Nat;
    fn shl(self, rhs: u64) -> Nat {
        Nat(self.0 << rhs)
    }
}

impl Shr<u64> for &Nat {
    type Output = Nat;
    fn shr(self, rhs: u64) -> Nat {
        Nat(&self.0 >> rhs)
    }
}

impl Shr<u64> for Nat {
    type Output = Nat;
    fn shr(self, rhs: u64) -> Nat {
        Nat(self.0 >> rhs)
    }
}

impl std::iter::Sum for Nat {
    fn sum<I: Iterator<Item = Nat>>(iter: I) -> Nat {
        iter.fold(Nat::zero(), |acc, x| acc + x)
    }
}

impl PartialEq<u64> for Nat {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl PartialOrd<u64> for Nat {
    fn partial_cmp(&self, other: &u64) -> Option<std::cmp::Ordering> {
        self.0.partial_cmp(&BigUint::from(*other))
    }
}

/// `x ∸ y = max(x − y, 0)`.
pub fn monus(x: &Nat, y: &Nat) -> Nat {
    if x.0 > y.0 {
        Nat(&x.0 - &y.0)
    } else {
        Nat::zero()
    }
}

/// Remainder of `x` by `y`, and 0 when `y = 0`.
pub fn rm(x: &Nat, y: &Nat) -> Nat {
    if y.is_zero() {
        Nat::zero()
    } else {
        Nat(x.0.mod_floor(&y.0))
    }
}

/// `⌊x/y⌋`, and 0 when `y = 0`.
pub fn div_floor(x: &Nat, y: &Nat) -> Nat {
    if y.is_zero() {
        Nat::zero()
    } else {
        Nat(&x.0 / &y.0)
    }
}

/// Binary digit `y` of `x` (0 or 1).
pub fn bit_get(x: &Nat, y: &Nat) -> Nat {
    match y.to_u64() {
        Some(i) => Nat::from(x.bit(i)),
        None => Nat::zero(),
    }
}

/// Length of the binary notation of `x`; `len(0) = 0`.
pub fn len(x: &Nat) -> Nat {
    Nat::from(x.bits())
}

/// `⌊log₂ x⌋`, and 0 when `x = 0`.
pub fn log2_floor(x: &Nat) -> Nat {
    Nat::from(x.bits().saturating_sub(1))
}

/// Bitwise conjunction.
pub fn band(x: &Nat, y: &Nat) -> Nat {
    Nat(&x.0 & &y.0)
}

/// Successor.
pub fn succ(x: &Nat) -> Nat {
    x + 1
}

/// `sg(x)`: 1 for positive `x`, else 0.
pub fn sg(x: &Nat) -> Nat {
    Nat::from(!x.is_zero())
}

/// `s̄g(x) = 1 ∸ sg(x)`.
pub fn sgbar(x: &Nat) -> Nat {
    Nat::from(x.is_zero())
}

/// Cyclic right shift of the binary notation of `x` by `y` places.
///
/// The rotation width is `len(x)`, so the leading one of `x` takes part in
/// the rotation and `rot_r(0, y) = 0`, `rot_r(1, y) = 1`.
pub fn rot_r(x: &Nat, y: &Nat) -> Nat {
    let n = x.bits();
    if n <= 1 {
        return x.clone();
    }
    let s = rm(y, &Nat::from(n)).to_u64().unwrap_or(0);
    if s == 0 {
        return x.clone();
    }
    let low = x.slice(0, s);
    (x >> s) | (low << (n - s))
}

/// `min(x, 2^y)`, deciding by length before materializing `2^y`.
pub fn min_pow2(x: &Nat, y: &Nat) -> Nat {
    match y.to_u64() {
        Some(e) if x.bits() <= e => x.clone(),
        Some(e) => Nat::pow2(e),
        None => x.clone(),
    }
}

/// `2^e` under the bit budget, with a natural exponent.
pub fn pow2(e: &Nat) -> Result<Nat> {
    let budget = bit_budget();
    match e.to_u64() {
        Some(v) if v < budget => Ok(Nat::pow2(v)),
        Some(v) => Err(Error::Budget { needed: v.saturating_add(1), budget }),
        None => Err(Error::Budget { needed: u64::MAX, budget }),
    }
}

/// `2^e` under the bit budget.
pub fn pow2_u(e: u64) -> Result<Nat> {
    check_bits(e.saturating_add(1))?;
    Ok(Nat::pow2(e))
}

/// `x^y` under the bit budget; `0^0 = 1`.
pub fn powvar(x: &Nat, y: &Nat) -> Result<Nat> {
    if y.is_zero() || x == &Nat::one() {
        return Ok(Nat::one());
    }
    if x.is_zero() {
        return Ok(Nat::zero());
    }
    let budget = bit_budget();
    let e = y.to_u64().ok_or(Error::Budget { needed: u64::MAX, budget })?;
    let needed = (x.bits() - 1).saturating_mul(e).saturating_add(1);
    check_bits(needed)?;
    let e32 = u32::try_from(e).map_err(|_| Error::Budget { needed, budget })?;
    Ok(x.pow(e32))
}

/// `2^{⌊log₂x⌋²}`; `exp_logsq(0) = 1`.
pub fn exp_logsq(x: &Nat) -> Result<Nat> {
    let l = log2_floor(x);
    pow2(&(&l * &l))
}

/// `x^{⌊log₂y⌋}`; exponent 0 gives 1.
pub fn pow_log(x: &Nat, y: &Nat) -> Result<Nat> {
    powvar(x, &log2_floor(y))
}

/// `Σ_{y<x} g(y, args)`; the empty sum is 0.
pub fn bounded_sum<G>(g: G, x: &Nat, args: &[Nat]) -> Result<Nat>
where
    G: Fn(&Nat, &[Nat]) -> Result<Nat>,
{
    let n = iter_bound(x)?;
    let mut acc = Nat::zero();
    for y in 0..n {
        acc += &g(&Nat::from(y), args)?;
    }
    Ok(acc)
}

/// Least `y < x` with `pred(y, args)`, or 0 when there is none.
pub fn bounded_mu<P>(pred: P, x: &Nat, args: &[Nat]) -> Result<Nat>
where
    P: Fn(&Nat, &[Nat]) -> Result<bool>,
{
    let n = iter_bound(x)?;
    for y in 0..n {
        let y = Nat::from(y);
        if pred(&y, args)? {
            return Ok(y);
        }
    }
    Ok(Nat::zero())
}

fn iter_bound(x: &Nat) -> Result<u64> {
    match x.to_u64() {
        Some(n) if n <= DEFAULT_ITER_BUDGET => Ok(n),
        _ => Err(Error::StepBudget(DEFAULT_ITER_BUDGET)),
    }
}
