//! Coefficient rings.
//!
//! The working field is `K = Q[π]/(π^e − u·p)`: the totally ramified part of a
//! p-adic number ring with uniformizer π. Residue reductions land in the prime
//! field `F_p`; for computations that only need an answer modulo π there is
//! also the truncation `Z_(p)[π]/(π^e − u·p, π^n)` with explicit precision.

mod field;
mod prime;
mod residue;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use field::{KElement, KField};
pub use prime::PrimeField;
pub use residue::{ResidueElem, ResidueRing};

/// Arithmetic context `(p, e, f, u)`; `q = p^f` and `d = e·f` are derived on demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingParams {
    p: u64,
    e: u32,
    f: u32,
    u: i64,
}

/// Largest residue characteristic accepted; keeps residue products inside `u128`.
pub const MAX_PRIME: u64 = 1 << 20;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates `(p, e, f, u)` and builds the ring context.
pub fn make_ring(p: i64, e: i64, f: i64, u: i64) -> Result<RingParams> {
    if p < 2 || !is_prime(p as u64) {
        return Err(Error::InvalidRing(format!("{p} is not prime")));
    }
    if p as u64 > MAX_PRIME {
        return Err(Error::InvalidRing(format!("p = {p} exceeds the supported bound {MAX_PRIME}")));
    }
    if e < 1 {
        return Err(Error::InvalidRing(format!("ramification degree e = {e} must be at least 1")));
    }
    if f < 1 {
        return Err(Error::InvalidRing(format!("residue degree f = {f} must be at least 1")));
    }
    if u.rem_euclid(p) == 0 {
        return Err(Error::InvalidRing(format!("u = {u} is not a unit at p = {p}")));
    }
    let (p, e, f) = (p as u64, e as u32, f as u32);
    if p.checked_pow(f).is_none_or(|q| q > u32::MAX as u64) {
        return Err(Error::InvalidRing(format!("q = {p}^{f} is too large")));
    }
    Ok(RingParams { p, e, f, u })
}

impl RingParams {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    pub fn u(&self) -> i64 {
        self.u
    }
    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }
    pub fn d(&self) -> u32 {
        self.e * self.f
    }

    /// `q^k`, panicking on overflow (callers stay far below `u64` range).
    pub fn q_pow(&self, k: u32) -> u64 {
        self.q()
            .checked_pow(k)
            .unwrap_or_else(|| panic!("q^{k} overflows u64 for q = {}", self.q()))
    }

    /// Internal degree `2(q^i − 1)` of the generators `v_i`, `V_i`, `t_i`.
    pub fn gen_degree(&self, i: u32) -> u64 {
        2 * (self.q_pow(i) - 1)
    }

    /// `u·p` as an integer, the value of `π^e`.
    pub fn up(&self) -> BigInt {
        BigInt::from(self.u) * BigInt::from(self.p)
    }
}

impl fmt::Display for RingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, e={}, f={}, u={})", self.p, self.e, self.f, self.u)
    }
}

/// π-adic valuation: an integer, or `Infinite` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

/// A commutative coefficient ring for [`crate::gpoly::Poly`].
///
/// Rings are small context values; elements carry no back-reference, so every
/// operation goes through the ring.
pub trait CoeffRing: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn params(&self) -> RingParams;
    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem);
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `π^n`.
    fn pi_pow(&self, n: u64) -> Self::Elem;

    /// Coefficient form used inside polynomial products, where sums of many term products
    /// are accumulated before a single normalization per output term.
    type Wide: Clone + Send + Sync;
    /// Splits the coefficients of one factor as `elems[i] = scale · wide[i]`.
    fn prepare(&self, elems: &[&Self::Elem]) -> (Self::Elem, Vec<Self::Wide>);
    fn wide_zero(&self) -> Self::Wide;
    /// `acc += a·b` for prepared `a`, `b`.
    fn wide_mul_add(&self, acc: &mut Self::Wide, a: &Self::Wide, b: &Self::Wide);
    fn wide_add_assign(&self, acc: &mut Self::Wide, b: &Self::Wide);
    /// `scale · acc` as an element.
    fn finish(&self, acc: Self::Wide, scale: &Self::Elem) -> Self::Elem;

    /// Common ring for combining elements of `self` and `other`.
    fn meet(&self, other: &Self) -> Result<Self> {
        if self == other {
            Ok(self.clone())
        } else {
            Err(Error::RingMismatch(format!("{self:?} vs {other:?}")))
        }
    }
    /// Maps an element of a ring that meets to `self` into `self`.
    fn coerce(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }

    fn render(&self, a: &Self::Elem) -> String;
    fn to_json(&self, a: &Self::Elem) -> serde_json::Value;
    fn from_json(&self, v: &serde_json::Value) -> Result<Self::Elem>;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut r = a.clone();
        self.add_assign(&mut r, b);
        r
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Rings in which division by π is meaningful (exactly, or with precision loss).
pub trait PiAdic: CoeffRing {
    /// Ring receiving quotients by `π^k`.
    fn quotient_ring(&self, k: u32) -> Result<Self>;
    /// `a / π^k` as an element of [`PiAdic::quotient_ring`]; errors if `π^k ∤ a`.
    fn div_pi_pow(&self, a: &Self::Elem, k: u32) -> Result<Self::Elem>;
    /// Inverse of the unit `1 − π^r` (`r ≥ 1`).
    fn unit_inverse(&self, r: u64) -> Self::Elem;
    /// Image in the residue field `F_p`; errors on negative valuation.
    fn residue(&self, a: &Self::Elem) -> Result<u64>;
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn k(p: i64, e: i64, f: i64) -> KField {
        KField::new(make_ring(p, e, f, 1).unwrap())
    }

    #[test]
    fn make_ring_derives_q_and_d() {
        let r = make_ring(3, 1, 1, 1).unwrap();
        assert_eq!((r.q(), r.d()), (3, 1));
        let r = make_ring(3, 2, 2, 1).unwrap();
        assert_eq!((r.q(), r.d()), (9, 4));
        assert!(make_ring(4, 1, 1, 1).is_err());
        assert!(make_ring(3, 0, 1, 1).is_err());
        assert!(make_ring(3, 1, 0, 1).is_err());
        assert!(make_ring(3, 1, 1, 6).is_err());
        assert!(make_ring(3, 1, 1, -2).is_ok());
    }

    #[test]
    fn uniformizer_relations() {
        let k1 = k(3, 1, 1);
        assert_eq!(k1.pi(), k1.from_i64(3));
        let k2 = k(3, 2, 1);
        assert_eq!(k2.mul(&k2.pi(), &k2.pi()), k2.from_i64(3));
        let third = BigRational::new(1.into(), 3.into());
        let expected = k2.element(vec![BigRational::from_integer(0.into()), third]).unwrap();
        assert_eq!(k2.inv(&k2.pi()).unwrap(), expected);
        assert_eq!(k1.pi_a(1), k1.from_i64(-24));
    }

    #[test]
    fn valuations() {
        for (p, e) in [(3, 1), (3, 2), (5, 3)] {
            let kf = k(p, e, 1);
            assert_eq!(kf.valuation(&kf.from_i64(p)), Valuation::Finite(e));
            assert_eq!(kf.valuation(&kf.pi()), Valuation::Finite(1));
            assert_eq!(kf.valuation(&kf.zero()), Valuation::Infinite);
            for h in 1..3 {
                assert_eq!(kf.valuation(&kf.pi_a(h)), Valuation::Finite(1));
            }
        }
    }

    #[test]
    fn residue_reduction() {
        let kf = k(3, 2, 1);
        assert_eq!(kf.reduce_mod_pi(&kf.pi()).unwrap(), 0);
        assert_eq!(kf.reduce_mod_pi(&kf.add(&kf.one(), &kf.pi())).unwrap(), 1);
        assert!(matches!(kf.reduce_mod_pi(&kf.inv(&kf.pi()).unwrap()), Err(Error::NegativeValuation(-1))));
        assert_eq!(kf.reduce_mod_pi(&kf.from_ratio(1, 2)).unwrap(), 2);
    }

    #[test]
    fn serialization_round_trip() {
        let kf = k(3, 2, 1);
        let a = kf.add(&kf.from_ratio(-4, 6), &kf.mul(&kf.pi(), &kf.from_ratio(5, 1)));
        assert_eq!(kf.to_strings(&a), vec!["-2/3".to_string(), "5/1".to_string()]);
        assert_eq!(kf.from_json(&kf.to_json(&a)).unwrap(), a);
    }

    #[test]
    fn residue_ring_tracks_precision() {
        let params = make_ring(3, 2, 1, 1).unwrap();
        let r = ResidueRing::new(params, 5).unwrap();
        let kf = KField::new(params);
        // 3·π = π^3 is divisible by π exactly three times at precision 5.
        let x = r.from_k(&kf.mul(&kf.from_i64(3), &kf.pi())).unwrap();
        let y = r.div_pi_pow(&x, 3).unwrap();
        let r2 = r.quotient_ring(3).unwrap();
        assert_eq!(r2.precision(), 2);
        assert_eq!(y, r2.one());
        assert!(matches!(r.div_pi_pow(&r.one(), 1), Err(Error::NotDivisible(_))));
        assert!(matches!(r.div_pi_pow(&r.zero(), 5), Err(Error::PrecisionExhausted)));
        // (1 − π)(1 − π)^{-1} = 1.
        let u = r.sub(&r.one(), &r.pi_pow(1));
        assert_eq!(r.mul(&u, &r.unit_inverse(1)), r.one());
    }
}
